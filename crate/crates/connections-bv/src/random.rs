//! Random connections and probe elements for property tests.

use ncw_core::{ArrowId, NcPolyOver, Path, Quiver, Scalar, Stratum};
use ncw_wheel::random::{alphabet, random_term, TermShape};
use ncw_wheel::WheelElementOver;
use rand::Rng;

use crate::connection::{ConnectionOver, Side};

/// A random connection: each generator gets up to `max_terms` words of length
/// `2..=max_len` on each side, with small integer coefficients.
pub fn random_connection<S: Scalar, R: Rng>(
    q: &Quiver,
    rng: &mut R,
    max_len: usize,
    max_terms: usize,
    sides: &[Side],
) -> ConnectionOver<S> {
    random_connection_where(q, rng, max_len, max_terms, sides, |_, _| true)
}

/// Like [`random_connection`], keeping only words `w` stored for `∂_e` with
/// `keep(e, w)`.
pub fn random_connection_where<S: Scalar, R: Rng, F: Fn(ArrowId, &Path) -> bool>(
    q: &Quiver,
    rng: &mut R,
    max_len: usize,
    max_terms: usize,
    sides: &[Side],
    keep: F,
) -> ConnectionOver<S> {
    let mut conn = ConnectionOver::trivial();
    let base: Vec<ArrowId> = q.base_arrows().collect();
    for &e in &base {
        let star = q.star_of(e).expect("doubled quiver");
        for &side in sides {
            let n = rng.gen_range(0..=max_terms);
            for _ in 0..n {
                let Some(w) = random_value_word(q, rng, star, side, max_len.max(2), &base) else { continue };
                if !keep(e, &w) {
                    continue;
                }
                let c = S::from_int(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
                conn.add(q, side, e, &NcPolyOver::term(c, w)).expect("generated word is valid");
            }
        }
    }
    conn
}

/// A torsion-free connection with zero divergence: left words of `∂_α`
/// whose star is over neither `α` nor the diff's arrow, plus their
/// torsion compensators. Adding it to a torsion-free connection leaves the
/// divergence unchanged. Zero on quivers too small to have such words.
pub fn divergence_free_piece<S: Scalar, R: Rng>(q: &Quiver, rng: &mut R, max_len: usize, max_terms: usize) -> ConnectionOver<S> {
    let keep = |alpha: ArrowId, w: &Path| {
        let base_of = |k: Stratum| w.arrows.iter().find(|&&a| q.stratum(a) == k).map(|&a| q.base_of(a)).unwrap();
        let (g, beta) = (base_of(Stratum::Star), base_of(Stratum::Diff));
        g != alpha && g != beta
    };
    random_connection_where(q, rng, max_len, max_terms, &[Side::Left], keep).torsion_free_completion(q)
}

fn random_value_word<R: Rng>(q: &Quiver, rng: &mut R, star: ArrowId, side: Side, max_len: usize, base: &[ArrowId]) -> Option<Path> {
    for _ in 0..200 {
        let len = rng.gen_range(2..=max_len);
        let mut slots: Vec<usize> = (0..len).collect();
        let i = rng.gen_range(0..len);
        slots.remove(i);
        let j = slots[rng.gen_range(0..slots.len())];
        let (d, s) = match side {
            Side::Left => (i.min(j), i.max(j)),
            Side::Right => (i.max(j), i.min(j)),
        };
        let mut word = vec![0; len];
        for (k, slot) in word.iter_mut().enumerate() {
            let e = base[rng.gen_range(0..base.len())];
            *slot = if k == d {
                q.diff_of(e).expect("Ω")
            } else if k == s {
                q.star_of(e).expect("doubled")
            } else {
                e
            };
        }
        if let Ok(p) = Path::new(q, word) {
            if p.tail == q.tail(star) && p.head == q.head(star) {
                return Some(p);
            }
        }
    }
    None
}

/// Number of star arrows in each term, maximized over terms.
pub fn star_count<S: Scalar>(q: &Quiver, u: &WheelElementOver<S>) -> usize {
    u.terms().map(|(t, _)| t.bidegree(q).0 as usize).max().unwrap_or(0)
}

/// A nonzero single-term element of wheel degree at most `max_degree` with at
/// most `max_stars` star arrows, over base and star arrows only.
pub fn random_probe<S: Scalar, R: Rng>(
    q: &Quiver,
    rng: &mut R,
    max_degree: usize,
    max_stars: usize,
    max_len: usize,
) -> WheelElementOver<S> {
    let arrows = alphabet(q, &[Stratum::Base, Stratum::Star]);
    loop {
        let degree = rng.gen_range(0..=max_degree);
        let u = random_term(q, rng, &arrows, TermShape { degree, max_len, max_loops: 2 });
        if !u.is_zero() && star_count(q, &u) <= max_stars {
            return u;
        }
    }
}
