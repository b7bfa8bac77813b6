use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use ncw_core::{accumulate, path_compose, Grade, NcPolyOver, Path, Quiver, Scalar};
use ncw_wheel::WheelElementOver;

/// Sums of tensor words `p_1 ⊗ ... ⊗ p_n` of paths.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct TensorOver<S: Scalar> {
    terms: BTreeMap<Vec<Path>, S>,
}

impl<S: Scalar> Default for TensorOver<S> {
    fn default() -> Self {
        TensorOver { terms: BTreeMap::new() }
    }
}

fn grade_of(q: &Quiver, p: &Path) -> Grade {
    p.grade(q)
}

impl<S: Scalar> TensorOver<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(c: S, factors: Vec<Path>) -> Self {
        let mut t = Self::zero();
        t.add_term(c, factors);
        t
    }

    pub fn add_term(&mut self, c: S, factors: Vec<Path>) {
        accumulate(&mut self.terms, factors, c);
    }

    pub fn add_scaled(&mut self, c: &S, other: &Self) {
        for (k, a) in &other.terms {
            accumulate(&mut self.terms, k.clone(), a.clone() * c.clone());
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Path>, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Reads identity-wired terms of an F_n element (no loops) as tensors.
    /// Returns `None` if some term has a nontrivial wiring or a loop.
    pub fn from_wheel(u: &WheelElementOver<S>) -> Option<Self> {
        let mut out = Self::zero();
        for (t, c) in u.terms() {
            if !t.perm.is_identity() || !t.loops.is_empty() {
                return None;
            }
            out.add_term(c.clone(), t.strands.clone());
        }
        Some(out)
    }

    /// Multiplies factor `k` on the left by `f`, with no sign.
    pub fn mul_factor_left(&self, k: usize, f: &NcPolyOver<S>) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            for (p, a) in f.terms() {
                if let Some(np) = path_compose(p, &key[k]) {
                    let mut nk = key.clone();
                    nk[k] = np;
                    out.add_term(c.clone() * a.clone(), nk);
                }
            }
        }
        out
    }

    /// Multiplies factor `k` on the right by `f`, with no sign.
    pub fn mul_factor_right(&self, k: usize, f: &NcPolyOver<S>) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            for (p, a) in f.terms() {
                if let Some(np) = path_compose(&key[k], p) {
                    let mut nk = key.clone();
                    nk[k] = np;
                    out.add_term(c.clone() * a.clone(), nk);
                }
            }
        }
        out
    }

    /// Multiplies factor `k` on the left by the path `p` of grade `g`,
    /// Koszul-signed for moving `p` past factors `0..k`.
    pub fn signed_left(&self, q: &Quiver, k: usize, p: &Path) -> Self {
        let g = grade_of(q, p);
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            if let Some(np) = path_compose(p, &key[k]) {
                let passed: Grade = key[..k].iter().map(|f| grade_of(q, f)).sum();
                let mut nk = key.clone();
                nk[k] = np;
                out.add_term(if g.clashes(passed) { -c.clone() } else { c.clone() }, nk);
            }
        }
        out
    }

    /// Multiplies factor `k` on the right by `p`, Koszul-signed for moving `p`
    /// leftwards past the factors after `k`.
    pub fn signed_right(&self, q: &Quiver, k: usize, p: &Path) -> Self {
        let g = grade_of(q, p);
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            if let Some(np) = path_compose(&key[k], p) {
                let passed: Grade = key[k + 1..].iter().map(|f| grade_of(q, f)).sum();
                let mut nk = key.clone();
                nk[k] = np;
                out.add_term(if g.clashes(passed) { -c.clone() } else { c.clone() }, nk);
            }
        }
        out
    }

    /// Koszul-signed permutation of factors: factor `i` moves to position `sigma[i]`.
    pub fn permute(&self, q: &Quiver, sigma: &[usize]) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            let grades: Vec<Grade> = key.iter().map(|p| grade_of(q, p)).collect();
            let mut neg = false;
            for i in 0..key.len() {
                for j in i + 1..key.len() {
                    if sigma[i] > sigma[j] && grades[i].clashes(grades[j]) {
                        neg = !neg;
                    }
                }
            }
            let mut nk = key.clone();
            for (i, p) in key.iter().enumerate() {
                nk[sigma[i]] = p.clone();
            }
            out.add_term(if neg { -c.clone() } else { c.clone() }, nk);
        }
        out
    }

    /// Applies a map to the factor at `k`, splicing the resulting tensor in place.
    pub fn expand_factor<F: FnMut(&Path) -> TensorOver<S>>(&self, k: usize, mut f: F) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            for (img, a) in f(&key[k]).terms {
                let mut nk: Vec<Path> = key[..k].to_vec();
                nk.extend(img);
                nk.extend_from_slice(&key[k + 1..]);
                out.add_term(c.clone() * a, nk);
            }
        }
        out
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (key, c) in &self.terms {
            let body: Vec<String> = key.iter().map(|p| p.render(q)).collect();
            parts.push(format!("{} * ({})", c, body.join(" # ")));
        }
        parts.join(" + ")
    }
}

impl<S: Scalar> Add for &TensorOver<S> {
    type Output = TensorOver<S>;
    fn add(self, o: &TensorOver<S>) -> TensorOver<S> {
        let mut out = self.clone();
        out.add_scaled(&S::one(), o);
        out
    }
}

impl<S: Scalar> Sub for &TensorOver<S> {
    type Output = TensorOver<S>;
    fn sub(self, o: &TensorOver<S>) -> TensorOver<S> {
        let mut out = self.clone();
        out.add_scaled(&-S::one(), o);
        out
    }
}

impl<S: Scalar> Neg for &TensorOver<S> {
    type Output = TensorOver<S>;
    fn neg(self) -> TensorOver<S> {
        self.scale(&-S::one())
    }
}
