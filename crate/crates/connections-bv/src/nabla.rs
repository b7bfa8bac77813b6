use ncw_core::{Grade, Quiver, Scalar, Stratum};
use ncw_wheel::{Diagram, Occ, WheelElementOver};

use crate::connection::ConnectionOver;

fn grade_sum(q: &Quiver, occs: &[Occ]) -> Grade {
    occs.iter().map(|o| q.grade(o.arrow)).sum()
}

/// Extends `∇` to wheel elements over the Ω-extended doubled quiver as a
/// derivation of diff degree one: `e ↦ de`, `e* ↦ ∇(∂_e)`, `de ↦ 0`.
pub fn nabla_extend<S: Scalar>(q: &Quiver, conn: &ConnectionOver<S>, u: &WheelElementOver<S>) -> WheelElementOver<S> {
    let mut out = WheelElementOver::zero();
    for (t, c) in u.terms() {
        let (d, _) = Diagram::from_term(t, 0);
        let mut diffs_before = 0usize;
        for (o, _) in d.occurrences() {
            let neg = diffs_before % 2 == 1;
            match q.stratum(o.arrow) {
                Stratum::Base => {
                    let de = q.diff_of(o.arrow).expect("nabla needs the Ω-extended quiver");
                    out.add_diagram(q, c, neg, &d.splice(o.rank, &[de]));
                }
                Stratum::Star => {
                    for (w, wc) in conn.value(q.base_of(o.arrow)).terms() {
                        out.add_diagram(q, &(c.clone() * wc.clone()), neg, &d.splice(o.rank, &w.arrows));
                    }
                }
                Stratum::Diff => diffs_before += 1,
            }
        }
    }
    out
}

/// Contracts the listed (star, diff) pairs of `d`, given by rank, one after
/// the other: each star is moved to the front, then its diff right behind
/// it, and both are deleted. Returns the accumulated sign and the rewired
/// diagram.
pub fn contract_pairs(q: &Quiver, d: &Diagram, pairs: &[(u32, u32)]) -> Option<(bool, Diagram)> {
    let mut rest: Vec<Occ> = d.occurrences().into_iter().map(|(o, _)| o).collect();
    let mut neg = false;
    for &(s, t) in pairs {
        let i = rest.iter().position(|o| o.rank == s)?;
        let gs = q.grade(rest[i].arrow);
        neg ^= gs.clashes(grade_sum(q, &rest[..i]));
        rest.remove(i);
        let j = rest.iter().position(|o| o.rank == t)?;
        let gt = q.grade(rest[j].arrow);
        neg ^= gt.clashes(grade_sum(q, &rest[..j]));
        rest.remove(j);
    }
    d.rewire(q, pairs, &[]).map(|r| (neg, r))
}

/// The total contraction `i_ι`: sum over every pair of a star `e*` and a
/// diff `de` of the same arrow, wherever they sit.
pub fn contract_iota<S: Scalar>(q: &Quiver, u: &WheelElementOver<S>) -> WheelElementOver<S> {
    let mut out = WheelElementOver::zero();
    for (t, c) in u.terms() {
        let (d, _) = Diagram::from_term(t, 0);
        let occ: Vec<Occ> = d.occurrences().into_iter().map(|(o, _)| o).collect();
        for s in occ.iter().filter(|o| q.stratum(o.arrow) == Stratum::Star) {
            let e = q.base_of(s.arrow);
            for dd in occ.iter().filter(|o| q.stratum(o.arrow) == Stratum::Diff && q.base_of(o.arrow) == e) {
                if let Some((neg, r)) = contract_pairs(q, &d, &[(s.rank, dd.rank)]) {
                    out.add_diagram(q, c, neg, &r);
                }
            }
        }
    }
    out
}

/// `D_∇ = i_ι ∘ ∇`.
pub fn bv_operator<S: Scalar>(q: &Quiver, conn: &ConnectionOver<S>, u: &WheelElementOver<S>) -> WheelElementOver<S> {
    contract_iota(q, &nabla_extend(q, conn, u))
}

/// Contraction by a form: every diff of `f` is paired with a distinct star
/// of `u` over the same arrow, in all possible ways. `f` is placed in front
/// of `u`; terms of `f` with more diffs than `u` can absorb contribute zero.
pub fn i_form<S: Scalar>(q: &Quiver, f: &WheelElementOver<S>, u: &WheelElementOver<S>) -> WheelElementOver<S> {
    let mut out = WheelElementOver::zero();
    for (ft, fc) in f.terms() {
        let (df, next) = Diagram::from_term(ft, 0);
        let diffs: Vec<Occ> = df.occurrences().into_iter().map(|(o, _)| o).filter(|o| q.stratum(o.arrow) == Stratum::Diff).collect();
        for (ut, uc) in u.terms() {
            let (du, _) = Diagram::from_term(ut, next);
            let stars: Vec<Occ> = du.occurrences().into_iter().map(|(o, _)| o).filter(|o| q.stratum(o.arrow) == Stratum::Star).collect();
            let d = df.clone().juxtapose(du);
            let c = fc.clone() * uc.clone();
            let mut chosen = Vec::with_capacity(diffs.len());
            assign(q, &diffs, &stars, &mut chosen, &mut |pairs| {
                if let Some((neg, r)) = contract_pairs(q, &d, pairs) {
                    out.add_diagram(q, &c, neg, &r);
                }
            });
        }
    }
    out
}

/// Enumerates injective matchings of `diffs` into `stars` over equal arrows,
/// reporting each as (star, diff) rank pairs in the order of `diffs`.
fn assign<F: FnMut(&[(u32, u32)])>(q: &Quiver, diffs: &[Occ], stars: &[Occ], chosen: &mut Vec<(u32, u32)>, emit: &mut F) {
    let Some(d) = diffs.get(chosen.len()) else {
        emit(chosen);
        return;
    };
    for s in stars {
        if q.base_of(s.arrow) != q.base_of(d.arrow) || chosen.iter().any(|&(r, _)| r == s.rank) {
            continue;
        }
        chosen.push((s.rank, d.rank));
        assign(q, diffs, stars, chosen, emit);
        chosen.pop();
    }
}
