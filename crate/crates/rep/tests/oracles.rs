use ncw_bv::{bv_operator, Connection};
use ncw_calculus::wheeled_bracket;
use ncw_core::{Path, Quiver, Scalar, Stratum};
use ncw_rep::*;
use ncw_wheel::random::{alphabet, random_element, TermShape};
use ncw_wheel::{wheel_product, WheelElement};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cycle(q: &Quiver, text: &str) -> WheelElement {
    WheelElement::from_cycle(q, &Path::parse(q, text).unwrap()).unwrap()
}

fn poly(q: &Quiver, point: &RepPoint, u: &WheelElement) -> SuperPoly {
    ev_wheel(q, point, u).unwrap().as_poly().unwrap()
}

fn even_quivers() -> Vec<(Quiver, Vec<usize>)> {
    vec![
        (Quiver::loops(&["x"], 0), vec![2]),
        (Quiver::loops(&["x"], 0), vec![3]),
        (Quiver::loops(&["x", "y"], 0), vec![2]),
        (Quiver::new(&["v", "w"], &[("a", "v", "w"), ("b", "w", "v")], 0).unwrap(), vec![1, 2]),
    ]
}

fn odd_quivers() -> Vec<(Quiver, Vec<usize>)> {
    vec![
        (Quiver::loops(&["x"], 1), vec![2]),
        (Quiver::loops(&["x"], 1), vec![3]),
        (Quiver::loops(&["x", "y"], 1), vec![2]),
        (Quiver::loops(&["x", "y"], 1), vec![3]),
        (Quiver::new(&["v", "w"], &[("a", "v", "w"), ("b", "w", "v")], 1).unwrap(), vec![2, 1]),
    ]
}

fn random_f0(q: &Quiver, rng: &mut ChaCha8Rng, max_len: usize) -> WheelElement {
    let arrows = alphabet(q, &[Stratum::Base, Stratum::Star]);
    random_element(q, rng, &arrows, TermShape { degree: 0, max_len, max_loops: 2 }, 2)
}

/// A sum of single closed words.
fn random_words(q: &Quiver, rng: &mut ChaCha8Rng, max_len: usize) -> WheelElement {
    let arrows = alphabet(q, &[Stratum::Base, Stratum::Star]);
    let mut out = WheelElement::zero();
    while out.is_zero() {
        out = random_element(q, rng, &arrows, TermShape { degree: 0, max_len, max_loops: 1 }, 2).filter(|t| t.loops.len() == 1);
    }
    out
}

#[test]
fn trace_bracket_example() {
    let q = Quiver::loops(&["x"], 0);
    let point = RepPoint::generic(DimVector::uniform(&q, 2).unwrap());
    let (a, b) = (cycle(&q, "x x x*"), cycle(&q, "x x* x*"));
    // Stars evaluate to −X*, so these are −tr(X²X*) and tr(X(X*)²).
    let (f, g) = (-&poly(&q, &point, &a), poly(&q, &point, &b));
    let lhs = matrix_poisson(&q, &f, &g).unwrap();
    let words = &cycle(&q, "x x x* x*") + &cycle(&q, "x x* x x*").scale(&Q::from_int(2));
    assert_eq!(lhs, poly(&q, &point, &words));
    assert_eq!(poly(&q, &point, &wheeled_bracket(&q, &a, &b)), -&lhs);
}

#[test]
fn laplacian_example() {
    for d in [2, 3] {
        let q = Quiver::loops(&["x"], 1);
        let point = RepPoint::generic(DimVector::uniform(&q, d).unwrap());
        let f = poly(&q, &point, &cycle(&q, "x x*"));
        let expected = Q::from_int(d as i64 * d as i64);
        assert_eq!(odd_laplacian(&q, &f).as_constant(), Some(-expected.clone()));
        assert_eq!(poly(&q, &point, &bv_operator(&q, &Connection::trivial(), &cycle(&q, "x x*"))).as_constant(), Some(expected));
    }
}

#[test]
fn bracket_rejects_odd_coordinates() {
    let q = Quiver::loops(&["x"], 1);
    let point = RepPoint::generic(DimVector::uniform(&q, 2).unwrap());
    let f = poly(&q, &point, &cycle(&q, "x x*"));
    assert!(matches!(matrix_poisson(&q, &f, &f), Err(RepError::OddVariable(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trace_bracket_is_the_necklace_bracket(seed in any::<u64>(), qi in 0usize..4) {
        let (q, dims) = &even_quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let point = RepPoint::generic(DimVector::new(q, dims.clone()).unwrap());
        let (a, b) = (random_f0(q, &mut rng, 3), random_f0(q, &mut rng, 3));
        let lhs = matrix_poisson(q, &poly(q, &point, &a), &poly(q, &point, &b)).unwrap();
        prop_assert_eq!(lhs, poly(q, &point, &wheeled_bracket(q, &a, &b)), "a = {} b = {}", a.render(q), b.render(q));
    }

    #[test]
    fn trace_bracket_on_long_words(seed in any::<u64>(), qi in 0usize..4) {
        let (q, dims) = &even_quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let point = RepPoint::generic(DimVector::new(q, dims.clone()).unwrap());
        let (a, b) = (random_words(q, &mut rng, 5), random_words(q, &mut rng, 5));
        let lhs = matrix_poisson(q, &poly(q, &point, &a), &poly(q, &point, &b)).unwrap();
        prop_assert_eq!(lhs, poly(q, &point, &wheeled_bracket(q, &a, &b)), "a = {} b = {}", a.render(q), b.render(q));
    }

    #[test]
    fn trace_bracket_satisfies_jacobi(seed in any::<u64>(), qi in 0usize..4) {
        let (q, dims) = &even_quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let point = RepPoint::generic(DimVector::new(q, dims.clone()).unwrap());
        let [f, g, h] = [0, 1, 2].map(|_| poly(q, &point, &random_f0(q, &mut rng, 2)));
        let br = |a: &SuperPoly, b: &SuperPoly| matrix_poisson(q, a, b).unwrap();
        let total = &(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g));
        prop_assert!(total.is_zero());
        prop_assert_eq!(br(&f, &g), -&br(&g, &f));
    }

    /// One global sign relates the two operators: `ev ∘ D = −Δ ∘ ev`.
    #[test]
    fn bv_operator_is_the_odd_laplacian(seed in any::<u64>(), qi in 0usize..5) {
        let (q, dims) = &odd_quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let point = RepPoint::generic(DimVector::new(q, dims.clone()).unwrap());
        let u = &random_f0(q, &mut rng, 3) + &random_words(q, &mut rng, 5);
        let lhs = poly(q, &point, &bv_operator(q, &Connection::trivial(), &u));
        let rhs = odd_laplacian(q, &poly(q, &point, &u));
        prop_assert_eq!(lhs, -&rhs, "u = {}", u.render(q));
    }

    #[test]
    fn laplacian_squares_to_zero(seed in any::<u64>(), qi in 0usize..5) {
        let (q, dims) = &odd_quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let point = RepPoint::generic(DimVector::new(q, dims.clone()).unwrap());
        let u = wheel_product(q, &random_f0(q, &mut rng, 3), &random_f0(q, &mut rng, 2));
        let f = poly(q, &point, &u);
        prop_assert!(odd_laplacian(q, &odd_laplacian(q, &f)).is_zero());
    }
}
