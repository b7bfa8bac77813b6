use ncw_core::{path_compose, Grade, NcPolyOver, Path, Permutation, Quiver, Scalar, Stratum};
use ncw_wheel::{Diagram, Site, WheelElementOver};

use crate::error::CalcError;
use crate::tensor::TensorOver;

/// Applies `Σ c·(a e* b)` to a path: every occurrence `p = p1 e p2` gives
/// `c·(p1 b) ⊗ (a p2)`.
pub fn apply_double_derivation<S: Scalar>(q: &Quiver, xi: &NcPolyOver<S>, p: &Path) -> Result<TensorOver<S>, CalcError> {
    let mut out = TensorOver::zero();
    for (w, c) in xi.terms() {
        let stars: Vec<usize> = (0..w.len()).filter(|&i| q.stratum(w.arrows[i]) == Stratum::Star).collect();
        let [k] = stars.as_slice() else {
            return Err(CalcError::NotADerivation(w.render(q)));
        };
        let e = q.base_of(w.arrows[*k]);
        let a = w.slice(q, 0, *k);
        let b = w.slice(q, k + 1, w.len());
        for (i, &f) in p.arrows.iter().enumerate() {
            if f != e {
                continue;
            }
            let (p1, p2) = (p.slice(q, 0, i), p.slice(q, i + 1, p.len()));
            if let (Some(l), Some(r)) = (path_compose(&p1, &b), path_compose(&a, &p2)) {
                out.add_term(c.clone(), vec![l, r]);
            }
        }
    }
    Ok(out)
}

fn grade_sum<I: Iterator<Item = Grade>>(it: I) -> Grade {
    it.sum()
}

/// The wheeled Schouten bracket (odd regime) or wheeled Poisson bracket
/// (even regime): glues every star `e*` of one argument to every `e` of the
/// other.
pub fn wheeled_bracket<S: Scalar>(q: &Quiver, u: &WheelElementOver<S>, v: &WheelElementOver<S>) -> WheelElementOver<S> {
    let mut out = WheelElementOver::zero();
    for (tu, cu) in u.terms() {
        let (du, next) = Diagram::from_term(tu, 0);
        let ou = du.occurrences();
        for (tv, cv) in v.terms() {
            let (dv, _) = Diagram::from_term(tv, next);
            let ov = dv.occurrences();
            let d = du.clone().juxtapose(dv);
            let c = cu.clone() * cv.clone();
            for (si, (s, _)) in ou.iter().enumerate() {
                if q.stratum(s.arrow) != Stratum::Star {
                    continue;
                }
                let e = q.base_of(s.arrow);
                let after = grade_sum(ou[si + 1..].iter().map(|(o, _)| q.grade(o.arrow)));
                let neg = q.grade(s.arrow).clashes(after);
                for (b, _) in ov.iter().filter(|(o, _)| o.arrow == e) {
                    if let Some(r) = d.rewire(q, &[(s.rank, b.rank)], &[]) {
                        out.add_diagram(q, &c, neg, &r);
                    }
                }
            }
            for (si, (s, _)) in ov.iter().enumerate() {
                if q.stratum(s.arrow) != Stratum::Star {
                    continue;
                }
                let e = q.base_of(s.arrow);
                let before = grade_sum(ov[..si].iter().map(|(o, _)| q.grade(o.arrow)));
                let neg = !q.grade(s.arrow).clashes(before);
                for (b, _) in ou.iter().filter(|(o, _)| o.arrow == e) {
                    if let Some(r) = d.rewire(q, &[(s.rank, b.rank)], &[]) {
                        out.add_diagram(q, &c, neg, &r);
                    }
                }
            }
        }
    }
    out
}

/// The double bracket on P_{Q̄}: `{{f, g}} = (12)·{f, g}` read as an element of A ⊗ A.
pub fn double_bracket<S: Scalar>(q: &Quiver, f: &NcPolyOver<S>, g: &NcPolyOver<S>) -> TensorOver<S> {
    let w = wheeled_bracket(q, &WheelElementOver::from_ncpoly(f), &WheelElementOver::from_ncpoly(g));
    let swap = Permutation::transposition(2, 0, 1);
    let id = Permutation::identity(2);
    let relabeled = ncw_wheel::wheel_act(q, &swap, &id, &w).expect("bracket of F_1 elements lies in F_2");
    TensorOver::from_wheel(&relabeled).expect("double bracket is identity-wired after relabeling")
}

/// Which star/base pairs an internal contraction sums over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairScope {
    All,
    /// Both arrows in the same strand or loop.
    Internal,
    /// Arrows in different strands or loops.
    Across,
}

fn component(site: Site, m: usize) -> usize {
    match site {
        Site::Strand(k, _) => k,
        Site::Loop(l, _) => m + l,
    }
}

/// Sum over pairs (star `e*`, base `e`) inside a single element, each pair
/// deleted and reconnected; the star is first moved to the front. With
/// `PairScope::All` this is the BV operator of the trivial connection.
pub fn star_base_pairs<S: Scalar>(q: &Quiver, u: &WheelElementOver<S>, scope: PairScope) -> WheelElementOver<S> {
    let mut out = WheelElementOver::zero();
    for (t, c) in u.terms() {
        let (d, _) = Diagram::from_term(t, 0);
        let occ = d.occurrences();
        let m = d.degree();
        for (si, (s, ss)) in occ.iter().enumerate() {
            if q.stratum(s.arrow) != Stratum::Star {
                continue;
            }
            let e = q.base_of(s.arrow);
            let before = grade_sum(occ[..si].iter().map(|(o, _)| q.grade(o.arrow)));
            let neg = q.grade(s.arrow).clashes(before);
            for (b, bs) in occ.iter().filter(|(o, _)| o.arrow == e) {
                let same = component(*ss, m) == component(*bs, m);
                let keep = match scope {
                    PairScope::All => true,
                    PairScope::Internal => same,
                    PairScope::Across => !same,
                };
                if !keep {
                    continue;
                }
                if let Some(r) = d.rewire(q, &[(s.rank, b.rank)], &[]) {
                    out.add_diagram(q, c, neg, &r);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ncw_core::Q;

    fn poly(q: &Quiver, s: &str) -> NcPolyOver<Q> {
        NcPolyOver::from_path(Path::parse(q, s).unwrap())
    }

    #[test]
    fn sweedler_expansion() {
        let q = Quiver::loops(&["x", "y"], 1);
        let dx = poly(&q, "x*");
        let t = apply_double_derivation(&q, &dx, &Path::parse(&q, "x").unwrap()).unwrap();
        assert_eq!(t.render(&q), "1 * (e_v # e_v)");
        let t = apply_double_derivation(&q, &dx, &Path::parse(&q, "x x").unwrap()).unwrap();
        assert_eq!(t.render(&q), "1 * (e_v # x) + 1 * (x # e_v)");
        let t = apply_double_derivation(&q, &dx, &Path::parse(&q, "y x y").unwrap()).unwrap();
        assert_eq!(t.render(&q), "1 * (y # y)");
        assert!(apply_double_derivation(&q, &dx, &Path::parse(&q, "y").unwrap()).unwrap().is_zero());
        assert!(apply_double_derivation(&q, &poly(&q, "x"), &Path::parse(&q, "x").unwrap()).is_err());
        let t = apply_double_derivation(&q, &poly(&q, "y x* x"), &Path::parse(&q, "x y").unwrap()).unwrap();
        assert_eq!(t.render(&q), "1 * (x # y y)");
    }

    #[test]
    fn generator_brackets() {
        for parity in [0, 1] {
            let q = Quiver::loops(&["x", "y"], parity);
            assert!(double_bracket(&q, &poly(&q, "x"), &poly(&q, "y")).is_zero());
            assert_eq!(double_bracket(&q, &poly(&q, "x*"), &poly(&q, "x")).render(&q), "1 * (e_v # e_v)");
            assert!(double_bracket(&q, &poly(&q, "x*"), &poly(&q, "x*")).is_zero());
            let w = wheeled_bracket(
                &q,
                &WheelElementOver::from_path(Path::parse(&q, "x*").unwrap()),
                &WheelElementOver::<Q>::from_path(Path::parse(&q, "x").unwrap()),
            );
            assert_eq!(w.render(&q), "(1,2)⟨e_v, e_v⟩");
        }
    }

    #[test]
    fn bracket_agrees_with_sweedler_on_base_words() {
        let q = Quiver::loops(&["x", "y"], 1);
        let xi = poly(&q, "y x* x");
        let p = Path::parse(&q, "x y x").unwrap();
        let direct = apply_double_derivation(&q, &xi, &p).unwrap();
        assert_eq!(double_bracket(&q, &xi, &NcPolyOver::from_path(p)), direct);
    }
}
