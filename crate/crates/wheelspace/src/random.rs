//! Seeded generators for randomized identity checks.

use rand::seq::SliceRandom;
use rand::Rng;

use ncw_core::{ArrowId, Path, Permutation, Quiver, Scalar, Stratum, VertexId};

use crate::element::{wheel_normalize, WheelElementOver};

/// Arrows of the given strata.
pub fn alphabet(q: &Quiver, strata: &[Stratum]) -> Vec<ArrowId> {
    (0..q.arrow_count() as ArrowId).filter(|&a| strata.contains(&q.stratum(a))).collect()
}

/// A random walk of exactly `len` arrows; `None` if it gets stuck.
pub fn random_path<R: Rng>(q: &Quiver, rng: &mut R, arrows: &[ArrowId], len: usize, start: Option<VertexId>) -> Option<Path> {
    let mut v = start.unwrap_or_else(|| rng.gen_range(0..q.vertex_count() as VertexId));
    if len == 0 {
        return Some(Path::trivial(v));
    }
    let mut word = Vec::with_capacity(len);
    for _ in 0..len {
        let out: Vec<ArrowId> = arrows.iter().copied().filter(|&a| q.tail(a) == v).collect();
        let &a = out.choose(rng)?;
        word.push(a);
        v = q.head(a);
    }
    Path::new(q, word).ok()
}

/// A random closed walk of exactly `len` arrows, by rejection.
pub fn random_closed_path<R: Rng>(q: &Quiver, rng: &mut R, arrows: &[ArrowId], len: usize) -> Option<Path> {
    for _ in 0..400 {
        if let Some(p) = random_path(q, rng, arrows, len, None) {
            if p.is_closed() {
                return Some(p);
            }
        }
    }
    None
}

pub fn random_permutation<R: Rng>(rng: &mut R, m: usize) -> Permutation {
    let mut images: Vec<u32> = (0..m as u32).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

/// Shape parameters for random wheel terms.
#[derive(Clone, Copy, Debug)]
pub struct TermShape {
    pub degree: usize,
    pub max_len: usize,
    pub max_loops: usize,
}

/// One random term of exact wheel degree, with a small nonzero coefficient.
/// May come out zero after canonicalization.
pub fn random_term<S: Scalar, R: Rng>(q: &Quiver, rng: &mut R, arrows: &[ArrowId], shape: TermShape) -> WheelElementOver<S> {
    let mut word = Vec::with_capacity(shape.degree);
    while word.len() < shape.degree {
        let len = rng.gen_range(0..=shape.max_len);
        if let Some(p) = random_path(q, rng, arrows, len, None) {
            word.push(p);
        }
    }
    let mut cyc = Vec::new();
    for _ in 0..rng.gen_range(0..=shape.max_loops) {
        let len = rng.gen_range(1..=shape.max_len.max(1));
        if let Some(p) = random_closed_path(q, rng, arrows, len) {
            cyc.push(p);
        }
    }
    let mut c = rng.gen_range(-3i64..=3);
    if c == 0 {
        c = 1;
    }
    let left = random_permutation(rng, shape.degree);
    wheel_normalize(q, S::from_int(c), &left, &Permutation::identity(shape.degree), &word, &cyc).expect("consistent arity")
}

/// A sum of up to `terms` random terms of the same shape.
pub fn random_element<S: Scalar, R: Rng>(
    q: &Quiver,
    rng: &mut R,
    arrows: &[ArrowId],
    shape: TermShape,
    terms: usize,
) -> WheelElementOver<S> {
    let mut out = WheelElementOver::zero();
    for _ in 0..rng.gen_range(1..=terms.max(1)) {
        out.add_assign(&random_term(q, rng, arrows, shape));
    }
    out
}
