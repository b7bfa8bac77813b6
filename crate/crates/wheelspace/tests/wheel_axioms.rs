use ncw_core::{koszul_sign_graded, Grade, Path, Permutation, Quiver, Scalar, Stratum, Q};
use ncw_wheel::random::{alphabet, random_element, random_permutation, random_term, TermShape};
use ncw_wheel::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quivers() -> Vec<Quiver> {
    vec![Quiver::loops(&["x", "y"], 1), Quiver::new(&["v", "w"], &[("a", "v", "w"), ("b", "w", "v")], 1).unwrap(), Quiver::loops(&["x"], 0)]
}

fn sample(q: &Quiver, seed: u64, degree: usize) -> WheelElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let arrows = alphabet(q, &[Stratum::Base, Stratum::Star, Stratum::Diff]);
    random_element(q, &mut rng, &arrows, TermShape { degree, max_len: 3, max_loops: 2 }, 3)
}

/// Removes slot `k` from a permutation's domain and renumbers, as an injection.
fn drop_index(n: usize, k: usize) -> impl Fn(usize) -> usize {
    move |s| {
        assert!(s != k && s < n);
        if s > k {
            s - 1
        } else {
            s
        }
    }
}

fn induced(p: &Permutation, removed: usize) -> Permutation {
    let n = p.degree();
    let src = drop_index(n, removed);
    let dst = drop_index(n, p.apply(removed));
    let mut images = vec![0u32; n - 1];
    for s in (0..n).filter(|&s| s != removed) {
        images[src(s)] = dst(p.apply(s)) as u32;
    }
    Permutation::from_images(images).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gperm_reduces_to_first_slots(seed in any::<u64>(), qi in 0usize..3, m in 1usize..5, i in 0usize..4, j in 0usize..4) {
        let q = &quivers()[qi];
        let (i, j) = (i % m, j % m);
        let u = sample(q, seed, m);
        let lhs = contract(q, &u, i, j).unwrap();
        let moved = wheel_act(q, &Permutation::cycle_prefix(m, j + 1), &Permutation::cycle_prefix(m, i + 1), &u).unwrap();
        prop_assert_eq!(lhs, contract(q, &moved, 0, 0).unwrap());
    }

    #[test]
    fn contractions_associate(seed in any::<u64>(), qi in 0usize..3, m in 2usize..5, idx in prop::array::uniform4(0usize..4)) {
        let q = &quivers()[qi];
        let (i, k) = (idx[0] % m, idx[1] % m);
        let (j, l) = (idx[2] % m, idx[3] % m);
        prop_assume!(i != k && j != l);
        let u = sample(q, seed, m);
        let shift = |a: usize, b: usize| if a > b { a - 1 } else { a };
        let first = contract(q, &contract(q, &u, k, l).unwrap(), shift(i, k), shift(j, l)).unwrap();
        let second = contract(q, &contract(q, &u, i, j).unwrap(), shift(k, i), shift(l, j)).unwrap();
        prop_assert_eq!(first, second);
    }

    #[test]
    fn contraction_is_equivariant(seed in any::<u64>(), qi in 0usize..3, m in 2usize..5, i in 0usize..4, j in 0usize..4) {
        let q = &quivers()[qi];
        let (i, j) = (i % m, j % m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5a5a);
        let alpha = random_permutation(&mut rng, m);
        let beta = random_permutation(&mut rng, m);
        let u = sample(q, seed, m);
        let lhs = contract(q, &wheel_act(q, &alpha, &beta, &u).unwrap(), beta.apply(i), alpha.apply(j)).unwrap();
        let rhs = wheel_act(q, &induced(&alpha, j), &induced(&beta, i), &contract(q, &u, i, j).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_composes(seed in any::<u64>(), qi in 0usize..3, m in 1usize..5) {
        let q = &quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s1, s2, t1, t2) = (random_permutation(&mut rng, m), random_permutation(&mut rng, m), random_permutation(&mut rng, m), random_permutation(&mut rng, m));
        let u = sample(q, seed, m);
        let twice = wheel_act(q, &s1, &t1, &wheel_act(q, &s2, &t2, &u).unwrap()).unwrap();
        prop_assert_eq!(twice, wheel_act(q, &s1.compose(&s2), &t1.compose(&t2), &u).unwrap());
        prop_assert_eq!(wheel_act(q, &Permutation::identity(m), &Permutation::identity(m), &u).unwrap(), u);
    }

    #[test]
    fn product_is_associative_and_twisted_commutative(seed in any::<u64>(), qi in 0usize..3, m in 0usize..3, n in 0usize..3) {
        let q = &quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let arrows = alphabet(q, &[Stratum::Base, Stratum::Star, Stratum::Diff]);
        let shape = |d| TermShape { degree: d, max_len: 3, max_loops: 1 };
        let u: WheelElement = random_term(q, &mut rng, &arrows, shape(m));
        let v: WheelElement = random_term(q, &mut rng, &arrows, shape(n));
        let w: WheelElement = random_term(q, &mut rng, &arrows, shape(1));
        prop_assert_eq!(
            wheel_product(q, &wheel_product(q, &u, &v), &w),
            wheel_product(q, &u, &wheel_product(q, &v, &w))
        );
        prop_assert_eq!(wheel_product(q, &u, &WheelElement::one()), u.clone());
        if let (Some(gu), Some(gv)) = (u.grade(q), v.grade(q)) {
            let swap = Permutation::transposition(2, 0, 1).blocks(&[m, n]).unwrap();
            let lhs = wheel_act(q, &swap, &swap, &wheel_product(q, &u, &v)).unwrap();
            let vu = wheel_product(q, &v, &u);
            let rhs = if gu.clashes(gv) { -&vu } else { vu };
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn contraction_commutes_with_product(seed in any::<u64>(), qi in 0usize..3, m in 1usize..3, n in 0usize..3, i in 0usize..2, j in 0usize..2) {
        let q = &quivers()[qi];
        let (i, j) = (i % m, j % m);
        let u = sample(q, seed, m);
        let v = sample(q, seed.wrapping_add(1), n);
        prop_assert_eq!(
            contract(q, &wheel_product(q, &u, &v), i, j).unwrap(),
            wheel_product(q, &contract(q, &u, i, j).unwrap(), &v)
        );
    }

    /// Oracle: the Ind relation solved by hand, (σ_L, σ_R) ⊗ X = (σ_L σ_R^{-1}, id) ⊗ σ_R·X.
    #[test]
    fn normalize_matches_coset_formula(seed in any::<u64>(), m in 1usize..5) {
        let q = Quiver::loops(&["x", "y"], 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let arrows = alphabet(&q, &[Stratum::Base, Stratum::Star]);
        let word: Vec<Path> = (0..m)
            .map(|_| ncw_wheel::random::random_path(&q, &mut rng, &arrows, 1 + (seed as usize % 2), None).unwrap())
            .collect();
        let left = random_permutation(&mut rng, m);
        let right = random_permutation(&mut rng, m);
        let got: WheelElement = wheel_normalize(&q, Q::from_int(1), &left, &right, &word, &[]).unwrap();

        let grades: Vec<Grade> = word.iter().map(|p| p.grade(&q)).collect();
        let neg = koszul_sign_graded(&right, &grades);
        let mut moved = word.clone();
        for (k, p) in word.iter().enumerate() {
            moved[right.apply(k)] = p.clone();
        }
        let term = WheelTerm { perm: left.compose(&right.inverse()), strands: moved, loops: vec![] };
        let want = WheelElement::term(Q::sign(neg), term);
        prop_assert_eq!(got, want);
    }
}
