use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::path::{path_compose, Path};
use crate::quiver::Quiver;
use crate::scalar::{accumulate, Scalar};

/// Finite linear combination of paths. Paths carry their endpoints, so the
/// product needs no quiver: incomposable pairs simply drop out.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct NcPolyOver<S: Scalar> {
    terms: BTreeMap<Path, S>,
}

impl<S: Scalar> Default for NcPolyOver<S> {
    fn default() -> Self {
        NcPolyOver { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> NcPolyOver<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_path(p: Path) -> Self {
        Self::term(S::one(), p)
    }

    pub fn term(c: S, p: Path) -> Self {
        let mut out = Self::zero();
        accumulate(&mut out.terms, p, c);
        out
    }

    /// The unit: sum of all vertex idempotents.
    pub fn one(q: &Quiver) -> Self {
        let mut out = Self::zero();
        for v in q.vertices() {
            accumulate(&mut out.terms, Path::trivial(v), S::one());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Path) -> S {
        self.terms.get(p).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, c: S, p: Path) {
        accumulate(&mut self.terms, p, c);
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (p, a) in &self.terms {
            accumulate(&mut out.terms, p.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = path_compose(p, q) {
                    accumulate(&mut out.terms, pq, a.clone() * b.clone());
                }
            }
        }
        out
    }

    pub fn map_paths<F: FnMut(&Path) -> Self>(&self, mut f: F) -> Self {
        let mut out = Self::zero();
        for (p, a) in &self.terms {
            for (r, b) in f(p).terms {
                accumulate(&mut out.terms, r, a.clone() * b);
            }
        }
        out
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag} * "));
            }
            let body = p.render(q);
            if p.len() > 1 {
                out.push('(');
                out.push_str(&body);
                out.push(')');
            } else {
                out.push_str(&body);
            }
        }
        out
    }
}

/// Bilinear extension of path composition.
pub fn ncpoly_mul<S: Scalar>(f: &NcPolyOver<S>, g: &NcPolyOver<S>) -> NcPolyOver<S> {
    f.mul(g)
}

impl<S: Scalar> Add for &NcPolyOver<S> {
    type Output = NcPolyOver<S>;
    fn add(self, o: &NcPolyOver<S>) -> NcPolyOver<S> {
        let mut out = self.clone();
        for (p, c) in &o.terms {
            accumulate(&mut out.terms, p.clone(), c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &NcPolyOver<S> {
    type Output = NcPolyOver<S>;
    fn sub(self, o: &NcPolyOver<S>) -> NcPolyOver<S> {
        let mut out = self.clone();
        for (p, c) in &o.terms {
            accumulate(&mut out.terms, p.clone(), -c.clone());
        }
        out
    }
}

impl<S: Scalar> Neg for &NcPolyOver<S> {
    type Output = NcPolyOver<S>;
    fn neg(self) -> NcPolyOver<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Mul for &NcPolyOver<S> {
    type Output = NcPolyOver<S>;
    fn mul(self, o: &NcPolyOver<S>) -> NcPolyOver<S> {
        NcPolyOver::mul(self, o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = NcPolyOver<BigRational>;

    fn path(q: &Quiver, s: &str) -> P {
        P::from_path(Path::parse(q, s).unwrap())
    }

    #[test]
    fn bilinear_and_unital() {
        let q = Quiver::loops(&["x", "y"], 1);
        let x = path(&q, "x");
        let y = path(&q, "y");
        let lhs = &(&x + &y) * &x;
        let rhs = &path(&q, "x x") + &path(&q, "y x");
        assert_eq!(lhs, rhs);
        assert_eq!(&lhs * &P::one(&q), lhs);
        assert_eq!(&P::one(&q) * &lhs, lhs);
    }

    #[test]
    fn scalars_cancel() {
        let q = Quiver::loops(&["x", "y"], 1);
        let a = path(&q, "x").scale(&BigRational::from_frac(2, 3));
        let b = path(&q, "y").scale(&BigRational::from_frac(3, 2));
        assert_eq!(ncpoly_mul(&a, &b), path(&q, "x y"));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn incomposable_product_vanishes() {
        let q = Quiver::new(&["v", "w"], &[("a", "v", "w"), ("b", "v", "w")], 1).unwrap();
        assert!((&path(&q, "a") * &path(&q, "b")).is_zero());
        assert_eq!(P::one(&q).len(), 2);
    }

    #[test]
    fn renders_signs() {
        let q = Quiver::loops(&["x"], 1);
        let f = &path(&q, "x x").scale(&BigRational::from_frac(-1, 2)) + &path(&q, "x");
        assert_eq!(f.render(&q), "x - 1/2 * (x x)");
    }
}
