use std::collections::BTreeMap;
use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Num, Signed};

/// Exact coefficient field. Only exact types implement this; floating point
/// would break the equality-by-lookup that every container relies on.
pub trait Scalar: Num + Neg<Output = Self> + Signed + Clone + Debug + Display + FromStr + Send + Sync + 'static {
    fn from_int(n: i64) -> Self;

    fn from_frac(n: i64, d: i64) -> Self {
        Self::from_int(n) / Self::from_int(d)
    }

    /// +1 or -1 from a boolean "negative" flag.
    fn sign(neg: bool) -> Self {
        if neg {
            -Self::one()
        } else {
            Self::one()
        }
    }
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Scalar for Rational64 {
    fn from_int(n: i64) -> Self {
        Rational64::from_integer(n)
    }
}

/// Parses "p/q", "p" or "-p/q".
pub fn parse_scalar<S: Scalar>(text: &str) -> Option<S> {
    text.trim().parse::<S>().ok()
}

/// Adds `c` to the coefficient of `key`, dropping the entry if it cancels.
pub fn accumulate<K: Ord, S: Scalar>(map: &mut BTreeMap<K, S>, key: K, c: S) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = o.get().clone() + c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}
