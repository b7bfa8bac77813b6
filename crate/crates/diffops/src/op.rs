use std::ops::{Add, Neg, Sub};

use ncw_core::{NcPolyOver, Permutation, Quiver, Scalar, Stratum};
use ncw_wheel::{wheel_act, Diagram, Occ, WheelElementOver, WheelTerm};

use crate::error::DiffOpError;

/// A wheeled differential operator in normal-ordered form.
///
/// The symbol is a wheel element over the doubled quiver: base arrows are
/// multipliers, star arrows `e*` are annihilators `∂_e`. A term of wheel
/// degree `i` maps `F_n` to `F_{i+n}`, its slots coming first. Annihilators
/// need the even regime; with odd stars only multipliers are accepted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheeledDiffOpOver<S: Scalar> {
    symbol: WheelElementOver<S>,
}

impl<S: Scalar> Default for WheeledDiffOpOver<S> {
    fn default() -> Self {
        WheeledDiffOpOver { symbol: WheelElementOver::zero() }
    }
}

fn star_count(q: &Quiver, t: &WheelTerm) -> usize {
    t.strands
        .iter()
        .flat_map(|p| p.arrows.iter())
        .chain(t.loops.iter().flat_map(|c| c.arrows.iter()))
        .filter(|&&a| q.stratum(a) == Stratum::Star)
        .count()
}

impl<S: Scalar> WheeledDiffOpOver<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        WheeledDiffOpOver { symbol: WheelElementOver::one() }
    }

    /// Reads a normal-ordered symbol. Diff arrows are rejected, and so are
    /// annihilators when star arrows are odd.
    pub fn from_symbol(q: &Quiver, u: WheelElementOver<S>) -> Result<Self, DiffOpError> {
        for (t, _) in u.terms() {
            if q.star_parity() == 1 && star_count(q, t) > 0 {
                return Err(DiffOpError::OddAnnihilator(t.render(q)));
            }
            let arrows = t.strands.iter().flat_map(|p| p.arrows.iter()).chain(t.loops.iter().flat_map(|c| c.arrows.iter()));
            if let Some(&a) = arrows.into_iter().find(|&&a| q.stratum(a) == Stratum::Diff) {
                return Err(DiffOpError::DiffArrow(q.arrow(a).name.clone()));
            }
        }
        Ok(WheeledDiffOpOver { symbol: u })
    }

    /// Multiplication `λ_v` by an element over the base quiver.
    pub fn multiplier(q: &Quiver, v: WheelElementOver<S>) -> Result<Self, DiffOpError> {
        if let Some((t, _)) = v.terms().find(|(t, _)| star_count(q, t) > 0) {
            return Err(DiffOpError::NotAMultiplier(t.render(q)));
        }
        Self::from_symbol(q, v)
    }

    /// `θ_ξ` for a double derivation `ξ = Σ a e* b`, of wheel degree one.
    pub fn theta(q: &Quiver, xi: &NcPolyOver<S>) -> Result<Self, DiffOpError> {
        for (w, _) in xi.terms() {
            if w.arrows.iter().filter(|&&a| q.stratum(a) == Stratum::Star).count() != 1 {
                return Err(DiffOpError::NotADerivation(w.render(q)));
            }
        }
        Self::from_symbol(q, WheelElementOver::from_ncpoly(xi))
    }

    pub fn symbol(&self) -> &WheelElementOver<S> {
        &self.symbol
    }

    pub fn is_zero(&self) -> bool {
        self.symbol.is_zero()
    }

    /// The largest number of annihilators in a term; 0 for the zero operator.
    pub fn order(&self, q: &Quiver) -> usize {
        self.symbol.terms().map(|(t, _)| star_count(q, t)).max().unwrap_or(0)
    }

    /// The part with exactly `n` annihilators.
    pub fn order_part(&self, q: &Quiver, n: usize) -> Self {
        WheeledDiffOpOver { symbol: self.symbol.filter(|t| star_count(q, t) == n) }
    }

    /// The common wheel degree shift of all terms.
    pub fn degree(&self) -> Result<usize, DiffOpError> {
        match self.symbol.degrees().as_slice() {
            [] => Ok(0),
            [d] => Ok(*d),
            ds => Err(DiffOpError::MixedDegree(ds.to_vec())),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        WheeledDiffOpOver { symbol: self.symbol.scale(c) }
    }

    pub fn render(&self, q: &Quiver) -> String {
        self.symbol.render(q)
    }
}

impl<S: Scalar> Add for &WheeledDiffOpOver<S> {
    type Output = WheeledDiffOpOver<S>;
    fn add(self, rhs: Self) -> WheeledDiffOpOver<S> {
        WheeledDiffOpOver { symbol: &self.symbol + &rhs.symbol }
    }
}

impl<S: Scalar> Sub for &WheeledDiffOpOver<S> {
    type Output = WheeledDiffOpOver<S>;
    fn sub(self, rhs: Self) -> WheeledDiffOpOver<S> {
        WheeledDiffOpOver { symbol: &self.symbol - &rhs.symbol }
    }
}

impl<S: Scalar> Neg for &WheeledDiffOpOver<S> {
    type Output = WheeledDiffOpOver<S>;
    fn neg(self) -> WheeledDiffOpOver<S> {
        WheeledDiffOpOver { symbol: -&self.symbol }
    }
}

/// Juxtaposes `u` in front of `v` and contracts stars of `u` with equally
/// labelled base arrows of `v`, each star at most once and each base arrow
/// at most once. With `total`, every star of `u` must be used. Stars are
/// even here, so no signs arise.
fn wick<S: Scalar>(q: &Quiver, u: &WheelElementOver<S>, v: &WheelElementOver<S>, total: bool) -> WheelElementOver<S> {
    let mut out = WheelElementOver::zero();
    for (tu, cu) in u.terms() {
        let (du, next) = Diagram::from_term(tu, 0);
        let stars: Vec<Occ> = du.occurrences().into_iter().map(|(o, _)| o).filter(|o| q.stratum(o.arrow) == Stratum::Star).collect();
        for (tv, cv) in v.terms() {
            let (dv, _) = Diagram::from_term(tv, next);
            let bases: Vec<Occ> = dv.occurrences().into_iter().map(|(o, _)| o).filter(|o| q.stratum(o.arrow) == Stratum::Base).collect();
            let d = du.clone().juxtapose(dv);
            let c = cu.clone() * cv.clone();
            let mut chosen = Vec::new();
            matchings(q, &stars, &bases, total, &mut chosen, &mut |pairs| {
                if let Some(r) = d.rewire(q, pairs, &[]) {
                    out.add_diagram(q, &c, false, &r);
                }
            });
        }
    }
    out
}

fn matchings<F: FnMut(&[(u32, u32)])>(q: &Quiver, stars: &[Occ], bases: &[Occ], total: bool, chosen: &mut Vec<(u32, u32)>, emit: &mut F) {
    let Some((s, rest)) = stars.split_first() else {
        emit(chosen);
        return;
    };
    if !total {
        matchings(q, rest, bases, total, chosen, emit);
    }
    let e = q.base_of(s.arrow);
    for b in bases.iter().filter(|b| b.arrow == e) {
        if chosen.iter().any(|&(_, r)| r == b.rank) {
            continue;
        }
        chosen.push((s.rank, b.rank));
        matchings(q, rest, bases, total, chosen, emit);
        chosen.pop();
    }
}

/// Applies `D` to an element of F(A): every annihilator is contracted with
/// an arrow of `u`, in all ways, and the multipliers stay in front.
pub fn apply_op<S: Scalar>(q: &Quiver, d: &WheeledDiffOpOver<S>, u: &WheelElementOver<S>) -> WheelElementOver<S> {
    wick(q, &d.symbol, u, true)
}

/// The normal-ordered composite `D1 ∘ D2`.
pub fn compose_ops<S: Scalar>(q: &Quiver, d1: &WheeledDiffOpOver<S>, d2: &WheeledDiffOpOver<S>) -> WheeledDiffOpOver<S> {
    WheeledDiffOpOver { symbol: wick(q, &d1.symbol, &d2.symbol, false) }
}

/// Moves the first `a` slots behind the next `b` slots, termwise.
pub fn swap_front<S: Scalar>(q: &Quiver, u: &WheelElementOver<S>, a: usize, b: usize) -> WheelElementOver<S> {
    let mut out = WheelElementOver::zero();
    for (t, c) in u.terms() {
        let m = t.degree();
        let p = Permutation::from_images(vec![1, 0, 2]).expect("permutation").blocks(&[a, b, m - a - b]).expect("block sizes");
        out.add_scaled(c, &wheel_act(q, &p, &p, &WheelElementOver::term(S::one(), t.clone())).expect("degrees agree"));
    }
    out
}

/// `[D1, D2] = D1 ∘ D2 − ε (D2 ∘ D1)` with the slots of `D2 ∘ D1` brought
/// back to the order of `D1 ∘ D2`; ε is the Koszul sign of the two symbols.
pub fn commutator<S: Scalar>(q: &Quiver, d1: &WheeledDiffOpOver<S>, d2: &WheeledDiffOpOver<S>) -> WheeledDiffOpOver<S> {
    let mut out = WheelElementOver::zero();
    for (t1, c1) in d1.symbol.terms() {
        let u1 = WheelElementOver::term(c1.clone(), t1.clone());
        for (t2, c2) in d2.symbol.terms() {
            let u2 = WheelElementOver::term(c2.clone(), t2.clone());
            out.add_assign(&wick(q, &u1, &u2, false));
            let back = swap_front(q, &wick(q, &u2, &u1, false), t2.degree(), t1.degree());
            out.add_scaled(&-S::sign(t1.grade(q).clashes(t2.grade(q))), &back);
        }
    }
    WheeledDiffOpOver { symbol: out }
}
