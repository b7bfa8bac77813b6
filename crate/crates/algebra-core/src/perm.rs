use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::quiver::Grade;

/// A bijection of {0..m}, stored as images. Displayed 1-based in cycle notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(m: usize) -> Permutation {
        Permutation((0..m as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Permutation, CoreError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen.get_mut(i as usize).ok_or_else(|| CoreError::NotAPermutation(format!("{images:?}")))?;
            if *slot {
                return Err(CoreError::NotAPermutation(format!("{images:?}")));
            }
            *slot = true;
        }
        Ok(Permutation(images))
    }

    /// From 1-based cycles, e.g. `[[1,2,3]]` on `m` points.
    pub fn from_cycles(m: usize, cycles: &[Vec<usize>]) -> Result<Permutation, CoreError> {
        let mut images: Vec<u32> = (0..m as u32).collect();
        let mut touched = vec![false; m];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                let b = c[(k + 1) % c.len()];
                if a == 0 || a > m || b == 0 || b > m || touched[a - 1] {
                    return Err(CoreError::NotAPermutation(format!("{cycles:?} on {m} points")));
                }
                touched[a - 1] = true;
                images[a - 1] = (b - 1) as u32;
            }
        }
        Permutation::from_images(images)
    }

    /// The transposition (i j), 0-based.
    pub fn transposition(m: usize, i: usize, j: usize) -> Permutation {
        let mut p = Permutation::identity(m);
        p.0.swap(i, j);
        p
    }

    /// The cycle 0 -> 1 -> ... -> k-1 -> 0 on m points.
    pub fn cycle_prefix(m: usize, k: usize) -> Permutation {
        let mut p = Permutation::identity(m);
        if k > 1 {
            for i in 0..k {
                p.0[i] = ((i + 1) % k) as u32;
            }
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Permutation(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation(inv)
    }

    /// σ × τ acting on the disjoint union, σ on the first block.
    pub fn juxtapose(&self, other: &Permutation) -> Permutation {
        let m = self.0.len() as u32;
        let mut out = self.0.clone();
        out.extend(other.0.iter().map(|&i| i + m));
        Permutation(out)
    }

    /// Block embedding S_l -> S_{n_1+...+n_l}: block `b` (of size `sizes[b]`)
    /// is moved as a whole to block position `self(b)`, keeping its internal order.
    pub fn blocks(&self, sizes: &[usize]) -> Result<Permutation, CoreError> {
        if sizes.len() != self.degree() {
            return Err(CoreError::LengthMismatch { expected: self.degree(), got: sizes.len() });
        }
        let inv = self.inverse();
        let mut target_start = vec![0usize; sizes.len()];
        let mut acc = 0;
        for t in 0..sizes.len() {
            target_start[t] = acc;
            acc += sizes[inv.apply(t)];
        }
        let mut images = Vec::with_capacity(acc);
        for (b, &n) in sizes.iter().enumerate() {
            let s = target_start[self.apply(b)];
            images.extend((0..n).map(|j| (s + j) as u32));
        }
        Ok(Permutation(images))
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut c = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                c.push(i + 1);
                i = self.0[i] as usize;
            }
            out.push(c);
        }
        out
    }

    /// Parses cycle notation such as `(1,2)(3,4)` or `()` on `m` points.
    pub fn parse_cycles(m: usize, text: &str) -> Result<Permutation, CoreError> {
        let bad = || CoreError::NotAPermutation(text.to_string());
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = inner.find(')').ok_or_else(bad)?;
            let body = inner[..close].trim();
            if !body.is_empty() {
                let c = body
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?;
                cycles.push(c);
            }
            rest = inner[close + 1..].trim_start();
        }
        Permutation::from_cycles(m, &cycles)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// Sign of moving factor `i` to position `σ(i)` when factors have the given
/// parities: one -1 for every inverted pair of odd factors.
pub fn koszul_sign(sigma: &Permutation, parities: &[u8]) -> Result<i8, CoreError> {
    if sigma.degree() != parities.len() {
        return Err(CoreError::LengthMismatch { expected: sigma.degree(), got: parities.len() });
    }
    let mut neg = false;
    for i in 0..parities.len() {
        for j in i + 1..parities.len() {
            if sigma.apply(i) > sigma.apply(j) && parities[i] & parities[j] & 1 == 1 {
                neg = !neg;
            }
        }
    }
    Ok(if neg { -1 } else { 1 })
}

/// Bigraded version of [`koszul_sign`]; true means -1.
pub fn koszul_sign_graded(sigma: &Permutation, grades: &[Grade]) -> bool {
    debug_assert_eq!(sigma.degree(), grades.len());
    let mut neg = false;
    for i in 0..grades.len() {
        for j in i + 1..grades.len() {
            if sigma.apply(i) > sigma.apply(j) && grades[i].clashes(grades[j]) {
                neg = !neg;
            }
        }
    }
    neg
}

/// Sign of reading items in the order given by `order` (a sequence of
/// distinct keys, compared by `Ord`) when their original order is ascending.
/// `grades[k]` belongs to `order[k]`. True means -1.
pub fn koszul_reorder_sign<K: Ord>(order: &[K], grades: &[Grade]) -> bool {
    let mut neg = false;
    for i in 0..order.len() {
        if grades[i] == Grade::EVEN {
            continue;
        }
        for j in i + 1..order.len() {
            if order[i] > order[j] && grades[i].clashes(grades[j]) {
                neg = !neg;
            }
        }
    }
    neg
}

/// Parities rearranged by σ: the factor at `i` lands at `σ(i)`.
pub fn permute_parities(sigma: &Permutation, parities: &[u8]) -> Vec<u8> {
    let mut out = vec![0; parities.len()];
    for (i, &p) in parities.iter().enumerate() {
        out[sigma.apply(i)] = p;
    }
    out
}
