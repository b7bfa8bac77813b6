use std::collections::BTreeMap;

use ncw_calculus::TensorOver;
use ncw_core::{rotation_sign, ArrowId, NcPolyOver, Path, Quiver, Scalar, Stratum};
use ncw_wheel::{Diagram, Loop, Occ, WheelElementOver};

use crate::connection::{ConnectionOver, Side};
use crate::error::BvError;
use crate::nabla::{contract_iota, contract_pairs, nabla_extend};

/// `ι = Σ_e [e* de]`.
pub fn iota<S: Scalar>(q: &Quiver) -> WheelElementOver<S> {
    let mut out = WheelElementOver::zero();
    for e in q.base_arrows() {
        let (s, d) = (q.star_of(e).expect("doubled quiver"), q.diff_of(e).expect("Ω-extended quiver"));
        let p = Path::new(q, vec![s, d]).expect("e* de is closed");
        out.add_assign(&WheelElementOver::from_cycle(q, &p).expect("closed"));
    }
    out
}

/// `i_ι(ι) = Σ_e [e_t][e_h]`, the rank of Der as an element of F_0.
pub fn rank_element<S: Scalar>(q: &Quiver) -> WheelElementOver<S> {
    contract_iota(q, &iota(q))
}

/// `τ(∇) = ∇(ι)`.
pub fn torsion<S: Scalar>(q: &Quiver, conn: &ConnectionOver<S>) -> WheelElementOver<S> {
    nabla_extend(q, conn, &iota(q))
}

/// Evaluates a torsion element on `(∂_α, ∂_β)`: a loop `[e* u dα v dβ w]`
/// read from its star gives `(w e* u) ⊗ v`.
pub fn torsion_eval<S: Scalar>(q: &Quiver, tau: &WheelElementOver<S>, alpha: ArrowId, beta: ArrowId) -> Result<TensorOver<S>, BvError> {
    let mut out = TensorOver::zero();
    for (t, c) in tau.terms() {
        let [lp] = t.loops.as_slice() else {
            return Err(BvError::Shape(format!("torsion term {} is not a single loop", t.render(q))));
        };
        if t.degree() != 0 {
            return Err(BvError::Shape(format!("torsion term {} has open strands", t.render(q))));
        }
        let w = &lp.arrows;
        let stars: Vec<usize> = (0..w.len()).filter(|&i| q.stratum(w[i]) == Stratum::Star).collect();
        let diffs = w.iter().filter(|&&a| q.stratum(a) == Stratum::Diff).count();
        let [k] = stars.as_slice() else {
            return Err(BvError::Shape(format!("torsion term {} needs one star", t.render(q))));
        };
        if diffs != 2 {
            return Err(BvError::Shape(format!("torsion term {} needs two diffs", t.render(q))));
        }
        let neg = rotation_sign(w, *k, &|a| q.grade(a));
        let r: Vec<ArrowId> = w[*k..].iter().chain(&w[..*k]).copied().collect();
        let d: Vec<usize> = (0..r.len()).filter(|&i| q.stratum(r[i]) == Stratum::Diff).collect();
        if q.base_of(r[d[0]]) != alpha || q.base_of(r[d[1]]) != beta {
            continue;
        }
        let der: Vec<ArrowId> = r[d[1] + 1..].iter().chain(&r[..d[0]]).copied().collect();
        let fun = r[d[0] + 1..d[1]].to_vec();
        let c = if neg { -c.clone() } else { c.clone() };
        out.add_term(c, vec![Path::new(q, der)?, path_or_idempotent(q, fun, q.head(r[d[0]]))?]);
    }
    Ok(out)
}

fn path_or_idempotent(q: &Quiver, arrows: Vec<ArrowId>, v: u32) -> Result<Path, BvError> {
    if arrows.is_empty() {
        Ok(Path::trivial(v))
    } else {
        Ok(Path::new(q, arrows)?)
    }
}

/// Splits a stored word at its unique diff into the parts before and after.
fn split_at_diff(q: &Quiver, w: &Path) -> (Path, ArrowId, Path) {
    let i = (0..w.len()).find(|&i| q.stratum(w.arrows[i]) == Stratum::Diff).expect("validated word");
    (w.slice(q, 0, i), q.base_of(w.arrows[i]), w.slice(q, i + 1, w.len()))
}

/// The torsion on generators straight from the stored values:
/// `τ(∂_α, ∂_β) = (∇_r)_{∂_α}(∂_β) - τ_{(21)}(∇_ℓ)_{∂_β}(∂_α)`; the double
/// bracket of two generators vanishes.
pub fn torsion_formula<S: Scalar>(q: &Quiver, conn: &ConnectionOver<S>, alpha: ArrowId, beta: ArrowId) -> TensorOver<S> {
    let mut out = TensorOver::zero();
    for (w, c) in conn.get(Side::Right, beta).terms() {
        let (pre, e, post) = split_at_diff(q, w);
        if e == alpha {
            out.add_term(c.clone(), vec![pre, post]);
        }
    }
    for (w, c) in conn.get(Side::Left, alpha).terms() {
        let (pre, e, post) = split_at_diff(q, w);
        if e == beta {
            out.add_term(-c.clone(), vec![post, pre]);
        }
    }
    out
}

/// All generator pairs on which the two torsion evaluations disagree.
pub fn torsion_mismatches<S: Scalar>(q: &Quiver, conn: &ConnectionOver<S>) -> Result<Vec<(ArrowId, ArrowId)>, BvError> {
    let tau = torsion(q, conn);
    let mut bad = Vec::new();
    for a in q.base_arrows() {
        for b in q.base_arrows() {
            if torsion_eval(q, &tau, a, b)? != torsion_formula(q, conn, a, b) {
                bad.push((a, b));
            }
        }
    }
    Ok(bad)
}

/// `∇²(∂_e)` as an F_1 element.
pub fn curvature<S: Scalar>(q: &Quiver, conn: &ConnectionOver<S>, e: ArrowId) -> WheelElementOver<S> {
    let star = WheelElementOver::from_path(Path::arrow(q, q.star_of(e).expect("doubled quiver")));
    nabla_extend(q, conn, &nabla_extend(q, conn, &star))
}

fn strand_poly<S: Scalar>(q: &Quiver, u: &WheelElementOver<S>) -> Result<NcPolyOver<S>, BvError> {
    let mut out = NcPolyOver::zero();
    for (t, c) in u.terms() {
        match (t.strands.as_slice(), t.loops.is_empty()) {
            ([p], true) => out.add_term(c.clone(), p.clone()),
            _ => return Err(BvError::Shape(format!("{} is not a single strand", t.render(q)))),
        }
    }
    Ok(out)
}

/// Checks `∇²(a ∂_e b) = a ∇²(∂_e) b` for every pair of base paths `a`, `b`
/// of length at most `max_len` around each generator.
pub fn check_curvature_linear<S: Scalar>(q: &Quiver, conn: &ConnectionOver<S>, max_len: usize) -> Result<(), BvError> {
    let paths = base_paths(q, max_len);
    for e in q.base_arrows() {
        let s = q.star_of(e).expect("doubled quiver");
        let k = strand_poly(q, &curvature(q, conn, e))?;
        for a in paths.iter().filter(|a| a.head == q.tail(s)) {
            for b in paths.iter().filter(|b| b.tail == q.head(s)) {
                let mut arrows = a.arrows.clone();
                arrows.push(s);
                arrows.extend_from_slice(&b.arrows);
                let probe = WheelElementOver::from_path(Path::new(q, arrows)?);
                let lhs = strand_poly(q, &nabla_extend(q, conn, &nabla_extend(q, conn, &probe)))?;
                let rhs = NcPolyOver::from_path(a.clone()).mul(&k).mul(&NcPolyOver::from_path(b.clone()));
                if lhs != rhs {
                    let mut shown = a.arrows.clone();
                    shown.push(s);
                    shown.extend_from_slice(&b.arrows);
                    return Err(BvError::NotLinear(Path::new(q, shown)?.render(q)));
                }
            }
        }
    }
    Ok(())
}

/// Base paths of length `0..=max_len`, idempotents included.
fn base_paths(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = q.vertices().map(Path::trivial).collect();
    let mut layer: Vec<Path> = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &layer {
            for e in q.base_arrows().filter(|&e| q.tail(e) == p.head) {
                let mut arrows = p.arrows.clone();
                arrows.push(e);
                next.push(Path::new(q, arrows).expect("composable"));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `tr(∇²)`: each word of `∇²(∂_e)` is closed up by `de` and its star is
/// contracted against that `de`. Fails if `∇²` is not A^e-linear on short probes.
pub fn curvature_trace<S: Scalar>(q: &Quiver, conn: &ConnectionOver<S>) -> Result<WheelElementOver<S>, BvError> {
    check_curvature_linear(q, conn, 1)?;
    let mut out = WheelElementOver::zero();
    for e in q.base_arrows() {
        let de = q.diff_of(e).expect("Ω-extended quiver");
        for (w, c) in strand_poly(q, &curvature(q, conn, e))?.terms() {
            let mut occs: Vec<Occ> = w.arrows.iter().enumerate().map(|(i, &arrow)| Occ { arrow, rank: i as u32 }).collect();
            let close = occs.len() as u32;
            occs.push(Occ { arrow: de, rank: close });
            let d = Diagram { strands: Vec::new(), loops: vec![Loop { occs, vertex: w.tail }] };
            for (i, &a) in w.arrows.iter().enumerate() {
                if q.stratum(a) != Stratum::Star || q.base_of(a) != e {
                    continue;
                }
                if let Some((neg, r)) = contract_pairs(q, &d, &[(i as u32, close)]) {
                    out.add_diagram(q, c, neg, &r);
                }
            }
        }
    }
    Ok(out)
}

/// `div ∇ = i_ι ∘ ∇` on each generator `∂_e`.
pub fn divergence<S: Scalar>(q: &Quiver, conn: &ConnectionOver<S>) -> BTreeMap<ArrowId, WheelElementOver<S>> {
    q.base_arrows().map(|e| (e, contract_iota(q, &WheelElementOver::from_ncpoly(&conn.value(e))))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ncw_core::Q;

    #[test]
    fn rank_is_a_pair_of_idempotent_loops() {
        let q = Quiver::new(&["v", "w"], &[("a", "v", "w")], 1).unwrap();
        assert_eq!(rank_element::<Q>(&q).render(&q), "[e_v] * [e_w]");
    }

    #[test]
    fn trivial_connection_is_flat_and_torsion_free() {
        let q = Quiver::loops(&["x", "y"], 1);
        let triv = ConnectionOver::<Q>::trivial();
        assert!(torsion(&q, &triv).is_zero());
        assert!(curvature_trace(&q, &triv).unwrap().is_zero());
        assert!(divergence(&q, &triv).values().all(|d| d.is_zero()));
    }

    #[test]
    fn base_paths_count() {
        let q = Quiver::loops(&["x", "y"], 1);
        assert_eq!(base_paths(&q, 2).len(), 1 + 2 + 4);
    }
}
