use ncw_calculus::*;
use ncw_core::{NcPoly, Path, Quiver, Stratum, Q};
use ncw_wheel::random::{alphabet, random_term, TermShape};
use ncw_wheel::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn quivers() -> Vec<Quiver> {
    vec![
        Quiver::loops(&["x", "y"], 1),
        Quiver::new(&["v", "w"], &[("a", "v", "w"), ("b", "w", "v")], 1).unwrap(),
        Quiver::loops(&["x", "y"], 0),
        Quiver::new(&["v", "w"], &[("a", "v", "w"), ("b", "w", "v")], 0).unwrap(),
    ]
}

/// A nonzero homogeneous term of degree at most `max_deg`.
fn sample(q: &Quiver, rng: &mut ChaCha8Rng, max_deg: usize) -> WheelElement {
    let arrows = alphabet(q, &[Stratum::Base, Stratum::Star]);
    loop {
        let degree = rng.gen_range(0..=max_deg);
        let u = random_term(q, rng, &arrows, TermShape { degree, max_len: 3, max_loops: 1 });
        if !u.is_zero() {
            return u;
        }
    }
}

fn path(q: &Quiver, s: &str) -> Path {
    Path::parse(q, s).unwrap()
}

fn cyc(q: &Quiver, s: &str) -> WheelElement {
    WheelElement::from_cycle(q, &path(q, s)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twisted_skew_symmetry(seed in any::<u64>(), qi in 0usize..4) {
        let q = &quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v) = (sample(q, &mut rng, 3), sample(q, &mut rng, 3));
        prop_assert_eq!(checks::twskewsym(q, &u, &v), Ok(()));
    }

    #[test]
    fn twisted_leibniz(seed in any::<u64>(), qi in 0usize..4) {
        let q = &quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v, w) = (sample(q, &mut rng, 2), sample(q, &mut rng, 2), sample(q, &mut rng, 1));
        prop_assert_eq!(checks::twleib(q, &u, &v, &w), Ok(()));
    }

    #[test]
    fn twisted_jacobi(seed in any::<u64>(), qi in 0usize..4) {
        let q = &quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v, w) = (sample(q, &mut rng, 2), sample(q, &mut rng, 2), sample(q, &mut rng, 2));
        prop_assert_eq!(checks::twjac(q, &u, &v, &w), Ok(()));
    }

    #[test]
    fn bracket_commutes_with_contraction(seed in any::<u64>(), qi in 0usize..4, i in 0usize..3, j in 0usize..3) {
        let q = &quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v) = (sample(q, &mut rng, 3), sample(q, &mut rng, 3));
        prop_assert_eq!(checks::poiscontr(q, &u, &v, i, j), Ok(()));
    }

    #[test]
    fn projection_intertwines_lifted_bracket(seed in any::<u64>(), qi in 0usize..4) {
        let q = &quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let arrows = alphabet(q, &[Stratum::Base, Stratum::Star]);
        let a = loop {
            let len = rng.gen_range(1..=4);
            if let Some(p) = ncw_wheel::random::random_closed_path(q, &mut rng, &arrows, len) {
                break p;
            }
        };
        let b = loop {
            let len = rng.gen_range(1..=4);
            if let Some(p) = ncw_wheel::random::random_closed_path(q, &mut rng, &arrows, len) {
                if let Some((_, c)) = cyclic_of::<Q>(q, &p) {
                    break c;
                }
            }
        };
        let lifted = lifted_bracket(q, &NcPoly::from_path(a.clone()), &b);
        let direct = wheeled_bracket(q, &WheelElement::from_cycle(q, &a).unwrap(), &WheelElement::from_cyclic_word(b));
        prop_assert_eq!(pr(q, &lifted), direct);
    }
}

#[test]
fn derivation_against_generator() {
    let q = Quiver::loops(&["x"], 1);
    let u = WheelElement::from_path(path(&q, "x*"));
    let v = WheelElement::from_path(path(&q, "x"));
    assert_eq!(wheeled_bracket(&q, &u, &v).render(&q), "(1,2)⟨e_v, e_v⟩");
}

#[test]
fn necklace_of_euler_field_acts_as_identity_on_x() {
    for parity in [0, 1] {
        let q = Quiver::loops(&["x"], parity);
        let b = wheeled_bracket(&q, &cyc(&q, "x x*"), &WheelElement::from_path(path(&q, "x")));
        assert_eq!(b.render(&q), "()⟨x⟩");
        let lifted = lifted_bracket(&q, &NcPoly::from_path(path(&q, "x x*")), &ncw_core::CyclicWord { arrows: vec![0], vertex: 0 });
        assert_eq!(lifted.render(&q), "x");
    }
}

#[test]
fn necklace_bracket_examples() {
    let q = Quiver::loops(&["x"], 0);
    let c = |s: &str| cyclic_of::<Q>(&q, &path(&q, s)).unwrap().1;
    let b: WheelElement = necklace_bracket(&q, &c("x x x*"), &c("x x* x*"));
    // {x*, x} = +1 here, so this is minus the value for the opposite normalization
    let want = &cyc(&q, "x x x* x*") + &cyc(&q, "x x* x x*").scale(&Q::from_integer(2.into()));
    assert_eq!(b, -&want);
    assert!(necklace_bracket::<Q>(&q, &c("x x*"), &c("x x*")).is_zero());
    assert!(necklace_bracket::<Q>(&q, &c("x"), &c("x")).is_zero());
}

#[test]
fn cobracket_examples() {
    for parity in [0, 1] {
        let q = Quiver::loops(&["x"], parity);
        let c = |s: &str| cyclic_of::<Q>(&q, &path(&q, s)).unwrap().1;
        assert!(necklace_cobracket::<Q>(&q, &c("x")).is_zero());
    }
    let q = Quiver::loops(&["x"], 0);
    let c = |s: &str| cyclic_of::<Q>(&q, &path(&q, s)).unwrap().1;
    assert!(necklace_cobracket::<Q>(&q, &c("x x*")).is_zero());
}

#[test]
fn double_derivation_squares_vanish_on_free_algebra() {
    let q = Quiver::loops(&["x", "y"], 1);
    let dx = NcPoly::from_path(path(&q, "x*"));
    assert!(double_bracket(&q, &dx, &dx).is_zero());
}
