use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::path::Path;
use crate::quiver::{ArrowId, Grade, Quiver, VertexId};

/// Canonical representative of a closed path up to rotation. The empty word
/// is the class of the idempotent at `vertex`; for nonempty words `vertex`
/// is the base point of the representative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct CyclicWord {
    pub arrows: Vec<ArrowId>,
    pub vertex: VertexId,
}

/// Sign picked up by rotating `w` left by `k`: the prefix `w[..k]` moves past the suffix.
pub fn rotation_sign<G: Fn(ArrowId) -> Grade>(w: &[ArrowId], k: usize, grade: &G) -> bool {
    let pre: Grade = w[..k].iter().map(|&a| grade(a)).sum();
    let post: Grade = w[k..].iter().map(|&a| grade(a)).sum();
    pre.clashes(post)
}

/// Finds the canonical rotation of a cyclic word: the lexicographically least
/// rotation by arrow id, first index on ties. Returns the rotation offset and
/// the sign `[w] = sign * [rotated]`, or `None` when the class vanishes
/// because a period rotation acts by -1.
pub fn canonical_rotation<G: Fn(ArrowId) -> Grade>(w: &[ArrowId], grade: &G) -> Option<(usize, bool)> {
    let n = w.len();
    if n == 0 {
        return Some((0, false));
    }
    let mut best = 0;
    for k in 1..n {
        if (0..n).map(|i| w[(k + i) % n]).lt((0..n).map(|i| w[(best + i) % n])) {
            best = k;
        }
    }
    let rotated: Vec<ArrowId> = (0..n).map(|i| w[(best + i) % n]).collect();
    let period = (1..=n).find(|&p| n.is_multiple_of(p) && (0..n).all(|i| rotated[i] == rotated[(i + p) % n])).unwrap();
    if period < n && rotation_sign(&rotated, period, grade) {
        return None;
    }
    Some((best, rotation_sign(w, best, grade)))
}

impl CyclicWord {
    pub fn trivial(v: VertexId) -> CyclicWord {
        CyclicWord { arrows: Vec::new(), vertex: v }
    }

    pub fn grade(&self, q: &Quiver) -> Grade {
        q.word_grade(&self.arrows)
    }

    pub fn is_odd(&self, q: &Quiver) -> bool {
        self.grade(q).is_odd()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// The representative as a closed path.
    pub fn to_path(&self) -> Path {
        Path { arrows: self.arrows.clone(), tail: self.vertex, head: self.vertex }
    }

    pub fn render(&self, q: &Quiver) -> String {
        format!("[{}]", self.to_path().render(q))
    }
}

/// Canonical class of a closed word given as raw arrows. The vertex is only
/// consulted for the empty word.
pub fn normalize_word(q: &Quiver, arrows: &[ArrowId], vertex: VertexId) -> Option<(CyclicWord, bool)> {
    let (k, neg) = canonical_rotation(arrows, &|a| q.grade(a))?;
    if arrows.is_empty() {
        return Some((CyclicWord::trivial(vertex), false));
    }
    let n = arrows.len();
    let rot: Vec<ArrowId> = (0..n).map(|i| arrows[(k + i) % n]).collect();
    let v = q.tail(rot[0]);
    Some((CyclicWord { arrows: rot, vertex: v }, neg))
}

/// Projection of a closed path to its cyclic class. The sign is +1/-1, or 0
/// when the class is zero.
pub fn cyclic_normalize(q: &Quiver, p: &Path) -> Result<(CyclicWord, i8), CoreError> {
    if !p.is_closed() {
        return Err(CoreError::NotClosed);
    }
    match normalize_word(q, &p.arrows, p.tail) {
        Some((c, neg)) => Ok((c, if neg { -1 } else { 1 })),
        None => Ok((CyclicWord { arrows: p.arrows.clone(), vertex: p.tail }, 0)),
    }
}
