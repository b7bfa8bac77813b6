use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::quiver::{ArrowId, Grade, Quiver, VertexId};

/// A path read left to right: `a1 a2 ... an` with head(a_i) = tail(a_{i+1}).
/// The empty arrow list is the idempotent `e_v` at `tail == head`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Path {
    pub arrows: Vec<ArrowId>,
    pub tail: VertexId,
    pub head: VertexId,
}

impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path { arrows: Vec::new(), tail: v, head: v }
    }

    pub fn arrow(q: &Quiver, a: ArrowId) -> Path {
        Path { arrows: vec![a], tail: q.tail(a), head: q.head(a) }
    }

    pub fn new(q: &Quiver, arrows: Vec<ArrowId>) -> Result<Path, CoreError> {
        let first = *arrows.first().ok_or_else(|| CoreError::BadSpec("empty path needs a vertex".into()))?;
        for w in arrows.windows(2) {
            if q.head(w[0]) != q.tail(w[1]) {
                return Err(CoreError::NotComposable(q.arrow(w[0]).name.clone(), q.arrow(w[1]).name.clone()));
            }
        }
        let head = q.head(*arrows.last().unwrap());
        Ok(Path { tail: q.tail(first), head, arrows })
    }

    /// Parses space separated arrow names, or `e_v`.
    pub fn parse(q: &Quiver, text: &str) -> Result<Path, CoreError> {
        let words: Vec<&str> = text.split_whitespace().collect();
        if let [single] = words.as_slice() {
            if let Some(v) = single.strip_prefix("e_") {
                if q.arrow_id(single).is_none() {
                    let id = q.vertex(v).ok_or_else(|| CoreError::UnknownVertex(v.to_string()))?;
                    return Ok(Path::trivial(id));
                }
            }
        }
        let ids =
            words.iter().map(|w| q.arrow_id(w).ok_or_else(|| CoreError::UnknownArrow(w.to_string()))).collect::<Result<Vec<_>, _>>()?;
        Path::new(q, ids)
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.tail == self.head
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn grade(&self, q: &Quiver) -> Grade {
        q.word_grade(&self.arrows)
    }

    pub fn bidegree(&self, q: &Quiver) -> (i32, i32) {
        q.bidegree(&self.arrows)
    }

    /// The subpath `arrows[lo..hi]`; an empty range gives the idempotent at that position.
    pub fn slice(&self, q: &Quiver, lo: usize, hi: usize) -> Path {
        if lo == hi {
            let v = if lo == 0 { self.tail } else { q.head(self.arrows[lo - 1]) };
            return Path::trivial(v);
        }
        Path { arrows: self.arrows[lo..hi].to_vec(), tail: q.tail(self.arrows[lo]), head: q.head(self.arrows[hi - 1]) }
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e_{}", q.vertex_name(self.tail));
        }
        let mut out = String::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{}", q.arrow(*a).name);
        }
        out
    }
}

/// Concatenation, or `None` when `head(p) != tail(q)`.
pub fn path_compose(p: &Path, q: &Path) -> Option<Path> {
    if p.head != q.tail {
        return None;
    }
    let mut arrows = Vec::with_capacity(p.arrows.len() + q.arrows.len());
    arrows.extend_from_slice(&p.arrows);
    arrows.extend_from_slice(&q.arrows);
    Some(Path { arrows, tail: p.tail, head: q.head })
}
