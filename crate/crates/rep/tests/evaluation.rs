use std::collections::BTreeMap;

use ncw_bv::rank_element;
use ncw_core::{Path, Quiver, Scalar, Stratum};
use ncw_rep::*;
use ncw_wheel::random::{alphabet, random_element, TermShape};
use ncw_wheel::{contract, wheel_product, WheelElement};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(n: i64) -> Q {
    Q::from_int(n)
}

fn cycle(quiver: &Quiver, text: &str) -> WheelElement {
    WheelElement::from_cycle(quiver, &Path::parse(quiver, text).unwrap()).unwrap()
}

fn numeric(quiver: &Quiver, mats: &[(&str, Vec<Vec<i64>>)]) -> Result<RepPoint, RepError> {
    let mats: BTreeMap<_, _> = mats
        .iter()
        .map(|(name, rows)| (quiver.arrow_id(name).unwrap(), rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()))
        .collect();
    RepPoint::numeric(quiver, mats)
}

fn quivers() -> Vec<(Quiver, Vec<usize>)> {
    vec![
        (Quiver::loops(&["x"], 1), vec![1]),
        (Quiver::loops(&["x"], 1), vec![2]),
        (Quiver::loops(&["x", "y"], 0), vec![3]),
        (Quiver::loops(&["x", "y"], 1), vec![2]),
        (Quiver::new(&["v", "w"], &[("a", "v", "w"), ("b", "w", "v")], 1).unwrap(), vec![2, 3]),
    ]
}

#[test]
fn paths_multiply_in_reading_order() {
    let quiver = Quiver::loops(&["x", "y"], 0);
    let point = numeric(&quiver, &[("x", vec![vec![1, 1], vec![0, 1]]), ("y", vec![vec![0, 1], vec![1, 0]])]).unwrap();
    let m = ev_path(&quiver, &point, &Path::parse(&quiver, "x x").unwrap()).unwrap();
    assert_eq!(m.to_scalars().unwrap(), vec![vec![q(1), q(2)], vec![q(0), q(1)]]);
    let xy = ev_path(&quiver, &point, &Path::parse(&quiver, "x y").unwrap()).unwrap();
    assert_eq!(xy.to_scalars().unwrap(), vec![vec![q(1), q(1)], vec![q(1), q(0)]]);
    let e = ev_path(&quiver, &point, &Path::trivial(0)).unwrap();
    assert_eq!(e, Matrix::identity(2));
    assert!(numeric(&quiver, &[("x", vec![vec![1, 0], vec![0, 1]]), ("y", vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])]).is_err());
}

#[test]
fn generic_matrices_have_quiver_shapes() {
    let quiver = Quiver::new(&["v", "w"], &[("a", "v", "w")], 0).unwrap();
    let point = RepPoint::generic(DimVector::parse(&quiver, "v=2,w=3").unwrap());
    let a = ev_path(&quiver, &point, &Path::parse(&quiver, "a").unwrap()).unwrap();
    assert_eq!((a.rows, a.cols), (2, 3));
    let aa = ev_path(&quiver, &point, &Path::parse(&quiver, "a a*").unwrap()).unwrap();
    assert_eq!((aa.rows, aa.cols), (2, 2));
    assert_eq!(aa.get(0, 0).render(&quiver), "-a_11*a*_11 - a_12*a*_21 - a_13*a*_31");
    let bad = Quiver::new(&["v"], &[("x", "v", "v")], 1).unwrap();
    let p = RepPoint::generic(DimVector::uniform(&bad, 2).unwrap());
    assert!(matches!(ev_path(&bad, &p, &Path::parse(&bad, "dx").unwrap()), Err(RepError::DiffArrow(_))));
}

#[test]
fn loops_become_traces() {
    let quiver = Quiver::loops(&["x"], 0);
    let nil = numeric(&quiver, &[("x", vec![vec![0, 1], vec![0, 0]])]).unwrap();
    let v = ev_wheel(&quiver, &nil, &cycle(&quiver, "x")).unwrap();
    assert!(v.as_poly().unwrap().is_zero());
    let three = RepPoint::generic(DimVector::uniform(&quiver, 3).unwrap());
    let e = cycle(&quiver, "e_v");
    let v = ev_wheel(&quiver, &three, &wheel_product(&quiver, &e, &e)).unwrap();
    assert_eq!(v.as_poly().unwrap().as_constant(), Some(q(9)));
    let strand = WheelElement::from_path(Path::parse(&quiver, "x x").unwrap());
    let m = ev_wheel(&quiver, &nil, &strand).unwrap().as_matrix().unwrap();
    assert!(m.to_scalars().unwrap().iter().flatten().all(|c| *c == q(0)));
}

#[test]
fn rank_element_counts_coordinates() {
    for (quiver, dims) in quivers() {
        let dims = DimVector::new(&quiver, dims).unwrap();
        let point = RepPoint::generic(dims.clone());
        let v = ev_wheel(&quiver, &point, &rank_element(&quiver)).unwrap();
        let expected = dims.rep_dimension(&quiver);
        assert_eq!(v.as_poly().unwrap().as_constant(), Some(Q::from_int(expected as i64)));
    }
    let two = Quiver::loops(&["x", "y"], 1);
    let point = RepPoint::generic(DimVector::uniform(&two, 2).unwrap());
    assert_eq!(ev_wheel(&two, &point, &rank_element(&two)).unwrap().as_poly().unwrap().as_constant(), Some(q(8)));
}

#[test]
fn mixed_degrees_are_rejected() {
    let quiver = Quiver::loops(&["x"], 0);
    let point = RepPoint::generic(DimVector::uniform(&quiver, 2).unwrap());
    let u = &cycle(&quiver, "x") + &WheelElement::from_path(Path::parse(&quiver, "x").unwrap());
    assert!(matches!(ev_wheel(&quiver, &point, &u), Err(RepError::MixedDegree(_))));
}

/// Equality, treating all zeros alike: the zero element has no degree of its own.
fn same(a: &WheelValue, b: &WheelValue) -> bool {
    a == b || (a.is_zero() && b.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evaluation_is_multiplicative(seed in any::<u64>(), qi in 0usize..5, du in 0usize..2, dv in 0usize..2) {
        let (quiver, dims) = &quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let arrows = alphabet(quiver, &[Stratum::Base, Stratum::Star]);
        let point = RepPoint::generic(DimVector::new(quiver, dims.clone()).unwrap());
        let u: WheelElement = random_element(quiver, &mut rng, &arrows, TermShape { degree: du, max_len: 2, max_loops: 1 }, 2);
        let v: WheelElement = random_element(quiver, &mut rng, &arrows, TermShape { degree: dv, max_len: 2, max_loops: 1 }, 2);
        prop_assume!(!u.is_zero() && !v.is_zero());
        let lhs = ev_wheel(quiver, &point, &wheel_product(quiver, &u, &v)).unwrap();
        let rhs = ev_wheel(quiver, &point, &u).unwrap().tensor(&ev_wheel(quiver, &point, &v).unwrap()).unwrap();
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn contraction_is_a_partial_trace(seed in any::<u64>(), qi in 0usize..5, i in 0usize..2, j in 0usize..2) {
        let (quiver, dims) = &quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let arrows = alphabet(quiver, &[Stratum::Base, Stratum::Star]);
        let point = RepPoint::generic(DimVector::new(quiver, dims.clone()).unwrap());
        let u: WheelElement = random_element(quiver, &mut rng, &arrows, TermShape { degree: 2, max_len: 2, max_loops: 1 }, 1);
        prop_assume!(!u.is_zero());
        let value = ev_wheel(quiver, &point, &u).unwrap();
        let lhs = ev_wheel(quiver, &point, &contract(quiver, &u, i, j).unwrap()).unwrap();
        prop_assert!(same(&lhs, &value.contract(i, j).unwrap()), "u = {}", u.render(quiver));
    }
}
