use std::collections::BTreeMap;

use ncw_core::{cyclic_normalize, Path, Quiver};
use ncw_diffops::*;
use ncw_wheel::WheelElement;

fn weil(q: &Quiver, s: &str) -> WheeledDiffOp {
    let (c, sign) = cyclic_normalize(q, &Path::parse(q, s).unwrap()).unwrap();
    weil_element(q, &c).unwrap().scale(&Q::from_integer(sign.into()))
}

/// Quadratic polynomials in `x` and `p = ∂_x`, keyed by (deg x, deg p).
type Quad = BTreeMap<(u8, u8), Q>;

fn quad(terms: &[((u8, u8), i64)]) -> Quad {
    terms.iter().map(|&(k, c)| (k, Q::from_integer(c.into()))).collect()
}

/// `{f, g} = ∂_p f ∂_x g − ∂_x f ∂_p g` on quadratics, for `[∂_x, x] = 1`.
fn poisson(f: &Quad, g: &Quad) -> Quad {
    let mut out = Quad::new();
    for (&(a, b), cf) in f {
        for (&(c, d), cg) in g {
            let mut add = |k: (u8, u8), n: i64| {
                *out.entry(k).or_insert_with(|| Q::from_integer(0.into())) += cf * cg * Q::from_integer(n.into());
            };
            if b > 0 && c > 0 {
                add((a + c - 1, b + d - 1), (b * c) as i64);
            }
            if a > 0 && d > 0 {
                add((a + c - 1, b + d - 1), -((a * d) as i64));
            }
        }
    }
    out.retain(|_, c| *c != Q::from_integer(0.into()));
    out
}

#[test]
fn weil_images_of_pure_words() {
    let q = Quiver::loops(&["x"], 0);
    let e = weil(&q, "x x");
    assert_eq!(e.order(&q), 0);
    assert_eq!(e.render(&q), "[x x]");
    let f = weil(&q, "x* x*");
    assert_eq!(f.order(&q), 2);
    assert_eq!(f.render(&q), "[x* x*]");
    let h = weil(&q, "x x*");
    assert_eq!(h.order(&q), 1);
    assert_eq!(h.render(&q), "1/2 * [e_v] * [e_v] + [x x*]");
}

#[test]
fn non_quadratic_words_are_rejected() {
    let q = Quiver::loops(&["x"], 0);
    let (c, _) = cyclic_normalize(&q, &Path::parse(&q, "x x x*").unwrap()).unwrap();
    assert!(matches!(weil_element::<Q>(&q, &c), Err(DiffOpError::NotQuadratic(_))));
}

/// The commutators of the images follow the Poisson brackets of the
/// corresponding quadratics in `x` and `p`, which span sp(2).
#[test]
fn one_loop_weil_elements_satisfy_sp2() {
    let q = Quiver::loops(&["x"], 0);
    let basis: Vec<(Quad, WheeledDiffOp)> =
        vec![(quad(&[((2, 0), 1)]), weil(&q, "x x")), (quad(&[((1, 1), 1)]), weil(&q, "x x*")), (quad(&[((0, 2), 1)]), weil(&q, "x* x*"))];
    let image = |f: &Quad| -> WheeledDiffOp {
        let mut out = WheeledDiffOp::zero();
        for (k, c) in f {
            let (_, w) = basis.iter().find(|(b, _)| b.contains_key(k)).expect("quadratic");
            out = &out + &w.scale(c);
        }
        out
    };
    for (f, wf) in &basis {
        for (g, wg) in &basis {
            let lhs = commutator(&q, wf, wg);
            assert_eq!(lhs, image(&poisson(f, g)), "[{}, {}]", wf.render(&q), wg.render(&q));
        }
    }
    let (e, h, f) = (&basis[0].1, &basis[1].1, &basis[2].1);
    assert_eq!(commutator(&q, h, e), e.scale(&Q::from_integer(2.into())));
    assert_eq!(commutator(&q, h, f), f.scale(&Q::from_integer((-2).into())));
    assert_eq!(commutator(&q, f, e), h.scale(&Q::from_integer(4.into())));
    let one: WheelElement = WheelElement::one();
    assert_eq!(apply_op(&q, h, &one).render(&q), "1/2 * [e_v] * [e_v]");
}
