//! The necklace Lie bialgebra on cyclic words of P_{Q̄}, and its lifts.

use std::collections::BTreeMap;

use ncw_core::{
    accumulate, canonical_rotation, koszul_reorder_sign, ArrowId, CyclicWord, Grade, NcPolyOver, Path, Quiver, Scalar, Stratum,
};
use ncw_wheel::WheelElementOver;

use crate::bracket::{star_base_pairs, wheeled_bracket, PairScope};

/// Grading shift applied to necklaces in the target of the cobracket. In the
/// odd regime the natural grading is used; in the even regime every necklace
/// counts as odd, so products of necklaces form an exterior algebra.
pub fn target_shift(q: &Quiver) -> Grade {
    if q.star_parity() == 1 {
        Grade::EVEN
    } else {
        Grade::STAR
    }
}

/// Grading shift of the bracket: `{a, b} = -ε(a, b){b, a}` with
/// `ε(a, b) = (-1)^{<a+β, b+β>}`.
pub fn bracket_shift(q: &Quiver) -> Grade {
    Grade(q.star_parity())
}

/// Polynomials in necklaces, graded by (natural grade + shift).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NecklaceSym<S: Scalar> {
    pub shift: Grade,
    terms: BTreeMap<Vec<CyclicWord>, S>,
}

impl<S: Scalar> NecklaceSym<S> {
    pub fn zero(shift: Grade) -> Self {
        NecklaceSym { shift, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<CyclicWord>, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn shifted(&self, q: &Quiver, c: &CyclicWord) -> Grade {
        c.grade(q) + self.shift
    }

    /// Adds `coeff · c_1 c_2 ... c_n`, sorting the factors with Koszul signs.
    pub fn add_product(&mut self, q: &Quiver, coeff: S, factors: &[CyclicWord]) {
        let mut idx: Vec<usize> = (0..factors.len()).collect();
        idx.sort_by(|&a, &b| factors[a].cmp(&factors[b]));
        let grades: Vec<Grade> = idx.iter().map(|&i| self.shifted(q, &factors[i])).collect();
        for w in idx.windows(2) {
            if factors[w[0]] == factors[w[1]] && self.shifted(q, &factors[w[0]]).is_odd() {
                return;
            }
        }
        let neg = koszul_reorder_sign(&idx, &grades);
        let key: Vec<CyclicWord> = idx.iter().map(|&i| factors[i].clone()).collect();
        accumulate(&mut self.terms, key, if neg { -coeff } else { coeff });
    }

    pub fn add_scaled(&mut self, c: &S, other: &Self) {
        debug_assert_eq!(self.shift, other.shift);
        for (k, a) in &other.terms {
            accumulate(&mut self.terms, k.clone(), a.clone() * c.clone());
        }
    }

    pub fn single(q: &Quiver, shift: Grade, c: &CyclicWord) -> Self {
        let mut out = Self::zero(shift);
        out.add_product(q, S::one(), std::slice::from_ref(c));
        out
    }

    /// Reads an F_0 element as a necklace polynomial (only meaningful when
    /// the shift is zero, so signs agree).
    pub fn from_wheel(shift: Grade, u: &WheelElementOver<S>) -> Self {
        let mut out = Self::zero(shift);
        for (t, c) in u.terms() {
            assert_eq!(t.degree(), 0, "necklace polynomials live in F_0");
            accumulate(&mut out.terms, t.loops.clone(), c.clone());
        }
        out
    }

    pub fn to_wheel(&self, q: &Quiver) -> WheelElementOver<S> {
        let mut out = WheelElementOver::zero();
        for (k, c) in &self.terms {
            let mut term = WheelElementOver::scalar(c.clone());
            for w in k {
                term = ncw_wheel::wheel_product(q, &term, &WheelElementOver::from_cyclic_word(w.clone()));
            }
            out.add_assign(&term);
        }
        out
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let sep = if self.shift == Grade::EVEN { " * " } else { " ^ " };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let body: Vec<String> = k.iter().map(|w| w.render(q)).collect();
                format!("{} * {}", c, body.join(sep))
            })
            .collect();
        parts.join(" + ")
    }
}

/// Necklace bracket of two cyclic words, as an F_0 element.
pub fn necklace_bracket<S: Scalar>(q: &Quiver, a: &CyclicWord, b: &CyclicWord) -> WheelElementOver<S> {
    wheeled_bracket(q, &WheelElementOver::from_cyclic_word(a.clone()), &WheelElementOver::from_cyclic_word(b.clone()))
}

/// Bilinear necklace bracket on F_0 elements.
pub fn necklace_bracket_elems<S: Scalar>(q: &Quiver, a: &WheelElementOver<S>, b: &WheelElementOver<S>) -> WheelElementOver<S> {
    wheeled_bracket(q, a, b)
}

/// Canonical class of an arc; the flag is the rotation sign.
fn canonical_arc(q: &Quiver, arcs: &[ArrowId], vertex: u32) -> Option<(bool, CyclicWord)> {
    let (k, neg) = canonical_rotation(arcs, &|a| q.grade(a))?;
    let n = arcs.len();
    let rot: Vec<ArrowId> = (0..n).map(|i| arcs[(k + i) % n]).collect();
    let v = rot.first().map_or(vertex, |&a| q.tail(a));
    Some((neg, CyclicWord { arrows: rot, vertex: v }))
}

/// The necklace cobracket: every internal pair (e*, e) of a necklace splits
/// it into the arc following the star and the arc following the base.
pub fn necklace_cobracket<S: Scalar>(q: &Quiver, c: &CyclicWord) -> NecklaceSym<S> {
    let mut out = NecklaceSym::zero(target_shift(q));
    let w = &c.arrows;
    let n = w.len();
    for i in 0..n {
        if q.stratum(w[i]) != Stratum::Star {
            continue;
        }
        let e = q.base_of(w[i]);
        let gs = q.grade(w[i]);
        let before: Grade = w[..i].iter().map(|&a| q.grade(a)).sum();
        let neg = gs.clashes(before);
        for j in (0..n).filter(|&j| w[j] == e) {
            let arc_a: Vec<usize> = (1..n).map(|k| (i + k) % n).take_while(|&p| p != j).collect();
            let arc_b: Vec<usize> = (1..n).map(|k| (j + k) % n).take_while(|&p| p != i).collect();
            let order: Vec<usize> = arc_a.iter().chain(arc_b.iter()).copied().collect();
            let grades: Vec<Grade> = order.iter().map(|&p| q.grade(w[p])).collect();
            let mut sign = neg ^ koszul_reorder_sign(&order, &grades);
            let aw: Vec<ArrowId> = arc_a.iter().map(|&p| w[p]).collect();
            let bw: Vec<ArrowId> = arc_b.iter().map(|&p| w[p]).collect();
            // empty arcs are idempotent loops at the junction vertex
            let (Some((ra, ca)), Some((rb, cb))) = (canonical_arc(q, &aw, q.head(w[i])), canonical_arc(q, &bw, q.head(w[j]))) else {
                continue;
            };
            sign ^= ra ^ rb;
            out.add_product(q, S::sign(sign), &[ca, cb]);
        }
    }
    out
}

/// Extends the cobracket to necklace polynomials as a coderivation.
pub fn cobracket_extended<S: Scalar>(q: &Quiver, u: &NecklaceSym<S>) -> NecklaceSym<S> {
    let mut out = NecklaceSym::zero(u.shift);
    for (k, c) in u.terms() {
        let mut passed = Grade::EVEN;
        for (pos, w) in k.iter().enumerate() {
            let neg = Grade::STAR.clashes(passed);
            let d: NecklaceSym<S> = necklace_cobracket(q, w);
            for (img, a) in d.terms() {
                let mut factors: Vec<CyclicWord> = k[..pos].to_vec();
                factors.extend(img.iter().cloned());
                factors.extend_from_slice(&k[pos + 1..]);
                let coeff = c.clone() * a.clone();
                out.add_product(q, if neg { -coeff } else { coeff }, &factors);
            }
            passed = passed + w.grade(q) + u.shift;
        }
    }
    out
}

/// `c1 c2 ↦ (-1)^{|c1|+1} {c1, c2}` on quadratic necklace polynomials.
pub fn bracket_contraction<S: Scalar>(q: &Quiver, u: &NecklaceSym<S>) -> WheelElementOver<S> {
    let mut out = WheelElementOver::zero();
    for (k, c) in u.terms() {
        assert_eq!(k.len(), 2, "bracket contraction needs quadratic input");
        let b: WheelElementOver<S> = necklace_bracket(q, &k[0], &k[1]);
        let neg = k[0].grade(q).star_bit() == 0;
        out.add_scaled(&if neg { -c.clone() } else { c.clone() }, &b);
    }
    out
}

/// The lifted bracket A ⊗ A_cyc -> A.
pub fn lifted_bracket<S: Scalar>(q: &Quiver, a: &NcPolyOver<S>, c: &CyclicWord) -> NcPolyOver<S> {
    let w = wheeled_bracket(q, &WheelElementOver::from_ncpoly(a), &WheelElementOver::from_cyclic_word(c.clone()));
    let mut out = NcPolyOver::zero();
    for (t, k) in w.terms() {
        debug_assert!(t.degree() == 1 && t.loops.is_empty());
        out.add_term(k.clone(), t.strands[0].clone());
    }
    out
}

/// The lifted cobracket A -> A ⊗ A_cyc, as F_1 terms carrying one loop.
pub fn lifted_cobracket<S: Scalar>(q: &Quiver, a: &NcPolyOver<S>) -> WheelElementOver<S> {
    star_base_pairs(q, &WheelElementOver::from_ncpoly(a), PairScope::Internal)
}

/// Projection of a path to its cyclic class (zero for open paths).
pub fn pr<S: Scalar>(q: &Quiver, a: &NcPolyOver<S>) -> WheelElementOver<S> {
    let mut out = WheelElementOver::zero();
    for (p, c) in a.terms() {
        if p.is_closed() {
            out.add_scaled(c, &WheelElementOver::from_cycle(q, p).expect("closed"));
        }
    }
    out
}

/// Convenience: the cyclic word of a closed path, with its sign.
pub fn cyclic_of<S: Scalar>(q: &Quiver, p: &Path) -> Option<(S, CyclicWord)> {
    let (c, s) = ncw_core::cyclic_normalize(q, p).ok()?;
    if s == 0 {
        None
    } else {
        Some((S::from_int(s as i64), c))
    }
}
