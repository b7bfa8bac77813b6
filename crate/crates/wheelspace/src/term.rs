use serde::{Deserialize, Serialize};

use ncw_core::{CyclicWord, Grade, Path, Permutation, Quiver};

/// Canonical basis element of F_m: `perm · (p_1 ⊗ ... ⊗ p_m) ⊗ Π loops`
/// with the right permutation normalized to the identity.
///
/// Strand `k` carries `strands[k]` from input slot `perm(k)` to output slot `k`.
/// Loops are sorted; an odd loop appears at most once.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct WheelTerm {
    pub perm: Permutation,
    pub strands: Vec<Path>,
    pub loops: Vec<CyclicWord>,
}

impl WheelTerm {
    pub fn unit() -> WheelTerm {
        WheelTerm { perm: Permutation::identity(0), strands: Vec::new(), loops: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.strands.len()
    }

    pub fn grade(&self, q: &Quiver) -> Grade {
        self.strands.iter().map(|p| p.grade(q)).chain(self.loops.iter().map(|c| c.grade(q))).sum()
    }

    pub fn bidegree(&self, q: &Quiver) -> (i32, i32) {
        let mut b = (0, 0);
        for arrows in self.strands.iter().map(|p| &p.arrows).chain(self.loops.iter().map(|c| &c.arrows)) {
            let (s, d) = q.bidegree(arrows);
            b.0 += s;
            b.1 += d;
        }
        b
    }

    pub fn arrow_count(&self) -> usize {
        self.strands.iter().map(|p| p.len()).sum::<usize>() + self.loops.iter().map(|c| c.len()).sum::<usize>()
    }

    pub fn render(&self, q: &Quiver) -> String {
        let mut parts = Vec::new();
        if !self.strands.is_empty() {
            let inner: Vec<String> = self.strands.iter().map(|p| p.render(q)).collect();
            parts.push(format!("{}⟨{}⟩", self.perm, inner.join(", ")));
        }
        parts.extend(self.loops.iter().map(|c| c.render(q)));
        parts.join(" * ")
    }
}
