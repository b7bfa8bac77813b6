use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use ncw_core::{accumulate, ArrowId, Quiver, Scalar};

/// Matrix coordinate `(X_a)_{ij}`, 0-based. Odd coordinates anticommute.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var {
    pub arrow: ArrowId,
    pub i: usize,
    pub j: usize,
    pub odd: bool,
}

impl Var {
    pub fn render(&self, q: &Quiver) -> String {
        format!("{}_{}{}", q.arrow(self.arrow).name, self.i + 1, self.j + 1)
    }
}

/// Even part as sorted `(var, exponent)` pairs, odd part as a strictly
/// increasing list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial {
    pub even: Vec<(Var, u32)>,
    pub odd: Vec<Var>,
}

impl Monomial {
    pub fn var(v: Var) -> Monomial {
        if v.odd {
            Monomial { even: Vec::new(), odd: vec![v] }
        } else {
            Monomial { even: vec![(v, 1)], odd: Vec::new() }
        }
    }

    pub fn is_one(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    /// Product with the Koszul sign of sorting the odd factors; `None` if an
    /// odd factor repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        let mut even: BTreeMap<Var, u32> = self.even.iter().copied().collect();
        for &(v, e) in &other.even {
            *even.entry(v).or_insert(0) += e;
        }
        let mut odd = self.odd.clone();
        let mut neg = false;
        for &v in &other.odd {
            let pos = match odd.binary_search(&v) {
                Ok(_) => return None,
                Err(p) => p,
            };
            neg ^= (odd.len() - pos) % 2 == 1;
            odd.insert(pos, v);
        }
        Some((neg, Monomial { even: even.into_iter().collect(), odd }))
    }

    fn render(&self, q: &Quiver) -> String {
        let mut parts: Vec<String> =
            self.even.iter().map(|&(v, e)| if e == 1 { v.render(q) } else { format!("{}^{}", v.render(q), e) }).collect();
        parts.extend(self.odd.iter().map(|v| v.render(q)));
        parts.join("*")
    }
}

/// Polynomial in commuting even and anticommuting odd matrix coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperPolyOver<S: Scalar> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Default for SuperPolyOver<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> SuperPolyOver<S> {
    pub fn zero() -> Self {
        SuperPolyOver { terms: BTreeMap::new() }
    }

    pub fn constant(c: S) -> Self {
        let mut p = Self::zero();
        accumulate(&mut p.terms, Monomial::default(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn var(v: Var) -> Self {
        let mut p = Self::zero();
        p.terms.insert(Monomial::var(v), S::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, c: S, m: Monomial) {
        accumulate(&mut self.terms, m, c);
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(x.clone() * c.clone(), m.clone());
        }
        out
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => self.terms.get(&Monomial::default()).cloned(),
            _ => None,
        }
    }

    pub fn has_odd(&self) -> bool {
        self.terms.keys().any(|m| !m.odd.is_empty())
    }

    /// Every variable that occurs.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.even.iter().map(|&(v, _)| v).chain(m.odd.iter().copied())).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// `∂/∂v`, acting from the left on odd variables.
    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if v.odd {
                if let Ok(pos) = m.odd.binary_search(&v) {
                    let mut odd = m.odd.clone();
                    odd.remove(pos);
                    out.add_term(S::sign(pos % 2 == 1) * c.clone(), Monomial { even: m.even.clone(), odd });
                }
            } else if let Some(k) = m.even.iter().position(|&(w, _)| w == v) {
                let e = m.even[k].1;
                let mut even = m.even.clone();
                if e == 1 {
                    even.remove(k);
                } else {
                    even[k].1 -= 1;
                }
                out.add_term(S::from_int(e as i64) * c.clone(), Monomial { even, odd: m.odd.clone() });
            }
        }
        out
    }

    /// Substitutes values for even variables; `None` if an odd variable occurs.
    pub fn evaluate<F: Fn(Var) -> S>(&self, value: F) -> Option<S> {
        let mut total = S::zero();
        for (m, c) in &self.terms {
            if !m.odd.is_empty() {
                return None;
            }
            let mut x = c.clone();
            for &(v, e) in &m.even {
                let base = value(v);
                for _ in 0..e {
                    x = x * base.clone();
                }
            }
            total = total + x;
        }
        Some(total)
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&m.render(q));
            } else {
                out.push_str(&format!("{}*{}", a, m.render(q)));
            }
        }
        out
    }
}

impl<S: Scalar> Add for &SuperPolyOver<S> {
    type Output = SuperPolyOver<S>;
    fn add(self, o: &SuperPolyOver<S>) -> SuperPolyOver<S> {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }
}

impl<S: Scalar> Neg for &SuperPolyOver<S> {
    type Output = SuperPolyOver<S>;
    fn neg(self) -> SuperPolyOver<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Sub for &SuperPolyOver<S> {
    type Output = SuperPolyOver<S>;
    fn sub(self, o: &SuperPolyOver<S>) -> SuperPolyOver<S> {
        self + &(-o)
    }
}

impl<S: Scalar> Mul for &SuperPolyOver<S> {
    type Output = SuperPolyOver<S>;
    fn mul(self, o: &SuperPolyOver<S>) -> SuperPolyOver<S> {
        let mut out = SuperPolyOver::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                if let Some((neg, m)) = a.mul(b) {
                    out.add_term(S::sign(neg) * x.clone() * y.clone(), m);
                }
            }
        }
        out
    }
}
