use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use ncw_core::{accumulate, normalize_word, CyclicWord, Grade, NcPolyOver, Path, Permutation, Quiver, Scalar};
use serde_json::{json, Value};

use crate::diagram::Diagram;
use crate::error::WheelError;
use crate::term::WheelTerm;

/// A finite sum of canonical wheel terms.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct WheelElementOver<S: Scalar> {
    terms: BTreeMap<WheelTerm, S>,
}

impl<S: Scalar> Default for WheelElementOver<S> {
    fn default() -> Self {
        WheelElementOver { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> WheelElementOver<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit of the product: the empty term in F_0.
    pub fn one() -> Self {
        Self::term(S::one(), WheelTerm::unit())
    }

    pub fn term(c: S, t: WheelTerm) -> Self {
        let mut out = Self::zero();
        accumulate(&mut out.terms, t, c);
        out
    }

    pub fn scalar(c: S) -> Self {
        Self::term(c, WheelTerm::unit())
    }

    /// A path as an element of F_1.
    pub fn from_path(p: Path) -> Self {
        Self::term(S::one(), WheelTerm { perm: Permutation::identity(1), strands: vec![p], loops: Vec::new() })
    }

    pub fn from_ncpoly(f: &NcPolyOver<S>) -> Self {
        let mut out = Self::zero();
        for (p, c) in f.terms() {
            out.add_term(c.clone(), WheelTerm { perm: Permutation::identity(1), strands: vec![p.clone()], loops: Vec::new() });
        }
        out
    }

    /// The cyclic class of a closed path as an element of F_0.
    pub fn from_cycle(q: &Quiver, p: &Path) -> Result<Self, WheelError> {
        if !p.is_closed() {
            return Err(WheelError::Core(ncw_core::CoreError::NotClosed));
        }
        Ok(match normalize_word(q, &p.arrows, p.tail) {
            None => Self::zero(),
            Some((c, neg)) => Self::term(S::sign(neg), WheelTerm { perm: Permutation::identity(0), strands: Vec::new(), loops: vec![c] }),
        })
    }

    pub fn from_cyclic_word(c: CyclicWord) -> Self {
        Self::term(S::one(), WheelTerm { perm: Permutation::identity(0), strands: Vec::new(), loops: vec![c] })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WheelTerm, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &WheelTerm) -> S {
        self.terms.get(t).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, c: S, t: WheelTerm) {
        accumulate(&mut self.terms, t, c);
    }

    /// Canonicalizes `d` and adds `±c` times the result.
    pub fn add_diagram(&mut self, q: &Quiver, c: &S, neg: bool, d: &Diagram) {
        if let Some((n2, t)) = d.finish(q) {
            let c = if neg ^ n2 { -c.clone() } else { c.clone() };
            accumulate(&mut self.terms, t, c);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (t, c) in &other.terms {
            accumulate(&mut self.terms, t.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, c: &S, other: &Self) {
        for (t, a) in &other.terms {
            accumulate(&mut self.terms, t.clone(), a.clone() * c.clone());
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        out.add_scaled(c, self);
        out
    }

    /// Wheel degrees present, sorted.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|t| t.degree()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The common grade if every term has the same one.
    pub fn grade(&self, q: &Quiver) -> Option<Grade> {
        let mut it = self.terms.keys().map(|t| t.grade(q));
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    /// Applies a linear map defined on basis terms.
    pub fn map_terms<F: FnMut(&WheelTerm) -> Self>(&self, mut f: F) -> Self {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            out.add_scaled(c, &f(t));
        }
        out
    }

    pub fn filter<F: FnMut(&WheelTerm) -> bool>(&self, mut keep: F) -> Self {
        WheelElementOver { terms: self.terms.iter().filter(|(t, _)| keep(t)).map(|(t, c)| (t.clone(), c.clone())).collect() }
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body = t.render(q);
            if body.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&format!("{mag} * {body}"));
            }
        }
        out
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(t, c)| {
                json!({
                    "coeff": c.to_string(),
                    "degree": t.degree(),
                    "sigma_left": t.perm.to_string(),
                    "word": t.strands.iter().map(|p| p.render(q)).collect::<Vec<_>>(),
                    "cyc": t.loops.iter().map(|c| c.render(q)).collect::<Vec<_>>(),
                })
            })
            .collect();
        Value::Array(terms)
    }
}

impl<S: Scalar> Add for &WheelElementOver<S> {
    type Output = WheelElementOver<S>;
    fn add(self, o: &WheelElementOver<S>) -> WheelElementOver<S> {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }
}

impl<S: Scalar> Sub for &WheelElementOver<S> {
    type Output = WheelElementOver<S>;
    fn sub(self, o: &WheelElementOver<S>) -> WheelElementOver<S> {
        let mut out = self.clone();
        out.add_scaled(&-S::one(), o);
        out
    }
}

impl<S: Scalar> Neg for &WheelElementOver<S> {
    type Output = WheelElementOver<S>;
    fn neg(self) -> WheelElementOver<S> {
        self.scale(&-S::one())
    }
}

/// Builds a canonical element from an arbitrary Ind presentation
/// `(σ_L, σ_R) ⊗ (word) ⊗ Π cyc`; the `cyc` entries are closed paths.
pub fn wheel_normalize<S: Scalar>(
    q: &Quiver,
    coeff: S,
    left: &Permutation,
    right: &Permutation,
    word: &[Path],
    cyc: &[Path],
) -> Result<WheelElementOver<S>, WheelError> {
    let m = word.len();
    if left.degree() != m || right.degree() != m {
        return Err(WheelError::DegreeMismatch { expected: m, got: if left.degree() != m { left.degree() } else { right.degree() } });
    }
    for c in cyc {
        if !c.is_closed() {
            return Err(WheelError::Core(ncw_core::CoreError::NotClosed));
        }
    }
    let mut next = 0;
    let mut d = Diagram::default();
    for (k, p) in word.iter().enumerate() {
        let occs = p
            .arrows
            .iter()
            .map(|&arrow| {
                next += 1;
                crate::diagram::Occ { arrow, rank: next - 1 }
            })
            .collect();
        d.strands.push(crate::diagram::Strand { input: k as u32, output: k as u32, occs, tail: p.tail, head: p.head });
    }
    for c in cyc {
        let occs = c
            .arrows
            .iter()
            .map(|&arrow| {
                next += 1;
                crate::diagram::Occ { arrow, rank: next - 1 }
            })
            .collect();
        d.loops.push(crate::diagram::Loop { occs, vertex: c.tail });
    }
    d.relabel(left, right);
    let mut out = WheelElementOver::zero();
    out.add_diagram(q, &coeff, false, &d);
    Ok(out)
}

/// The S_m × S_m action: `left` permutes inputs, `right` permutes outputs.
pub fn wheel_act<S: Scalar>(
    q: &Quiver,
    left: &Permutation,
    right: &Permutation,
    u: &WheelElementOver<S>,
) -> Result<WheelElementOver<S>, WheelError> {
    let mut out = WheelElementOver::zero();
    for (t, c) in u.terms() {
        if t.degree() != left.degree() || t.degree() != right.degree() {
            return Err(WheelError::DegreeMismatch { expected: t.degree(), got: left.degree().max(right.degree()) });
        }
        let (mut d, _) = Diagram::from_term(t, 0);
        d.relabel(left, right);
        out.add_diagram(q, c, false, &d);
    }
    Ok(out)
}

/// Wheel product F_m ⊗ F_n -> F_{m+n}.
pub fn wheel_product<S: Scalar>(q: &Quiver, u: &WheelElementOver<S>, v: &WheelElementOver<S>) -> WheelElementOver<S> {
    let mut out = WheelElementOver::zero();
    for (a, ca) in u.terms() {
        let (da, next) = Diagram::from_term(a, 0);
        for (b, cb) in v.terms() {
            let (db, _) = Diagram::from_term(b, next);
            let d = da.clone().juxtapose(db);
            out.add_diagram(q, &(ca.clone() * cb.clone()), false, &d);
        }
    }
    out
}

/// μ_{i,j} (0-based): plugs output `i` into input `j`.
pub fn contract<S: Scalar>(q: &Quiver, u: &WheelElementOver<S>, i: usize, j: usize) -> Result<WheelElementOver<S>, WheelError> {
    let mut out = WheelElementOver::zero();
    for (t, c) in u.terms() {
        let m = t.degree();
        if i >= m || j >= m {
            return Err(WheelError::IndexOutOfRange { i: i + 1, j: j + 1, degree: m });
        }
        let (d, _) = Diagram::from_term(t, 0);
        if let Some(r) = d.rewire(q, &[], &[(i as u32, j as u32)]) {
            out.add_diagram(q, c, false, &r);
        }
    }
    Ok(out)
}

pub fn wheel_equal<S: Scalar>(u: &WheelElementOver<S>, v: &WheelElementOver<S>) -> bool {
    u == v
}
