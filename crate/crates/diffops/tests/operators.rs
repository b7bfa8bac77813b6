use ncw_calculus::wheeled_bracket;
use ncw_core::{NcPolyOver, Path, Quiver, Stratum};
use ncw_diffops::*;
use ncw_wheel::random::{alphabet, random_element, random_path, TermShape};
use ncw_wheel::{contract, WheelElement};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn quivers() -> Vec<Quiver> {
    vec![Quiver::loops(&["x"], 0), Quiver::loops(&["x", "y"], 0), Quiver::new(&["v", "w"], &[("a", "v", "w"), ("b", "w", "v")], 0).unwrap()]
}

fn random_op(q: &Quiver, rng: &mut ChaCha8Rng, degree: usize) -> WheeledDiffOp {
    let arrows = alphabet(q, &[Stratum::Base, Stratum::Star]);
    let u = random_element(q, rng, &arrows, TermShape { degree, max_len: 2, max_loops: 1 }, 2);
    WheeledDiffOp::from_symbol(q, u).unwrap()
}

fn random_base(q: &Quiver, rng: &mut ChaCha8Rng, degree: usize, max_len: usize) -> WheelElement {
    let arrows = alphabet(q, &[Stratum::Base]);
    random_element(q, rng, &arrows, TermShape { degree, max_len, max_loops: 1 }, 2)
}

/// A double derivation: a path with exactly one star arrow.
fn random_derivation(q: &Quiver, rng: &mut ChaCha8Rng) -> NcPolyOver<Q> {
    let arrows = alphabet(q, &[Stratum::Base, Stratum::Star]);
    loop {
        let len = rng.gen_range(1..=3);
        if let Some(p) = random_path(q, rng, &arrows, len, None) {
            if p.arrows.iter().filter(|&&a| q.stratum(a) == Stratum::Star).count() == 1 {
                return NcPolyOver::term(Q::from_integer(rng.gen_range(1..=3).into()), p);
            }
        }
    }
}

fn strand(q: &Quiver, s: &str) -> WheelElement {
    WheelElement::from_path(Path::parse(q, s).unwrap())
}

fn cyc(q: &Quiver, s: &str) -> WheelElement {
    WheelElement::from_cycle(q, &Path::parse(q, s).unwrap()).unwrap()
}

fn op(q: &Quiver, u: WheelElement) -> WheeledDiffOp {
    WheeledDiffOp::from_symbol(q, u).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn apply_is_a_homomorphism(seed in any::<u64>(), qi in 0usize..3) {
        let q = &quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (i, j, m) = (rng.gen_range(0..=1), rng.gen_range(0..=1), rng.gen_range(0..=1));
        let (d1, d2) = (random_op(q, &mut rng, i), random_op(q, &mut rng, j));
        let u = random_base(q, &mut rng, m, 3);
        let lhs = apply_op(q, &compose_ops(q, &d1, &d2), &u);
        prop_assert_eq!(lhs, apply_op(q, &d1, &apply_op(q, &d2, &u)));
    }

    #[test]
    fn order_filtration(seed in any::<u64>(), qi in 0usize..3) {
        let q = &quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (i, j) = (rng.gen_range(0..=1), rng.gen_range(0..=1));
        let (d1, d2) = (random_op(q, &mut rng, i), random_op(q, &mut rng, j));
        let total = d1.order(q) + d2.order(q);
        prop_assert!(compose_ops(q, &d1, &d2).order(q) <= total);
        let c = commutator(q, &d1, &d2);
        prop_assert!(c.is_zero() || c.order(q) < total, "{} has order {}", c.render(q), c.order(q));
    }

    #[test]
    fn commutator_of_derivations_has_order_one(seed in any::<u64>(), qi in 0usize..3) {
        let q = &quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xi = WheeledDiffOp::theta(q, &random_derivation(q, &mut rng)).unwrap();
        let eta = WheeledDiffOp::theta(q, &random_derivation(q, &mut rng)).unwrap();
        prop_assert!(commutator(q, &xi, &eta).order(q) <= 1);
    }

    #[test]
    fn operators_commute_with_contractions(seed in any::<u64>(), qi in 0usize..3) {
        let q = &quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = rng.gen_range(0..=1);
        let d = random_op(q, &mut rng, i);
        let u = random_base(q, &mut rng, 2, 3);
        let (j, k) = (rng.gen_range(0..2), rng.gen_range(0..2));
        let lhs = apply_op(q, &d, &contract(q, &u, j, k).unwrap());
        prop_assert_eq!(lhs, contract(q, &apply_op(q, &d, &u), i + j, i + k).unwrap());
    }

    /// `[λ_v, λ_w] = 0`, `[θ_ξ, λ_v] = λ_{θ_ξ(v)}`, `[θ_ξ, θ_η] = θ_{{ξ,η}}`.
    #[test]
    fn twisted_shadow_relations(seed in any::<u64>(), qi in 0usize..3) {
        let q = &quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (i, j) = (rng.gen_range(0..=1), rng.gen_range(0..=1));
        let (v, w) = (random_base(q, &mut rng, i, 3), random_base(q, &mut rng, j, 3));
        let (lv, lw) = (WheeledDiffOp::multiplier(q, v.clone()).unwrap(), WheeledDiffOp::multiplier(q, w).unwrap());
        prop_assert!(commutator(q, &lv, &lw).is_zero());
        let (f, g) = (random_derivation(q, &mut rng), random_derivation(q, &mut rng));
        let (xi, eta) = (WheeledDiffOp::theta(q, &f).unwrap(), WheeledDiffOp::theta(q, &g).unwrap());
        let expected = WheeledDiffOp::multiplier(q, apply_op(q, &xi, &v)).unwrap();
        prop_assert_eq!(commutator(q, &xi, &lv), expected);
        let bracket = wheeled_bracket(q, xi.symbol(), eta.symbol());
        prop_assert_eq!(commutator(q, &xi, &eta), op(q, bracket));
    }

    #[test]
    fn principal_symbol_matches_closed_formula(seed in any::<u64>(), qi in 0usize..3, n in 1usize..=3) {
        let q = &quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = rng.gen_range(0..=1);
        let d = random_op(q, &mut rng, i);
        let args: Vec<WheelElement> = (0..n).map(|_| { let k = rng.gen_range(0..=1); random_base(q, &mut rng, k, 2) }).collect();
        let f = |u: &WheelElement| apply_op(q, &d, u);
        let opf = OpFn { shift: i, grade: Default::default(), f: &f };
        let gamma = principal_symbol(q, &d, &args).unwrap();
        prop_assert_eq!(&gamma, &principal_symbol_closed(q, &opf, &args).unwrap());
        if d.order(q) < n {
            prop_assert!(gamma.is_zero());
            prop_assert!(symbol_data(q, &d, n).is_zero());
        }
    }

    /// Order-one and order-two symbols are iterated wheeled brackets with
    /// the arguments.
    #[test]
    fn symbols_are_bracket_data(seed in any::<u64>(), qi in 0usize..3) {
        let q = &quivers()[qi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = rng.gen_range(0..=1);
        let d = random_op(q, &mut rng, i);
        let (a, b) = (random_base(q, &mut rng, 1, 2), random_base(q, &mut rng, 1, 2));
        let top = op(q, symbol_data(q, &d, 2));
        let expected = wheeled_bracket(q, &wheeled_bracket(q, top.symbol(), &a), &b);
        prop_assert_eq!(principal_symbol(q, &top, &[a.clone(), b]).unwrap(), expected);
        let one = op(q, symbol_data(q, &d, 1));
        prop_assert_eq!(principal_symbol(q, &one, std::slice::from_ref(&a)).unwrap(), wheeled_bracket(q, one.symbol(), &a));
    }

    /// `D_1 ∘ D_2 = (D_1 ⊗ D_2) + (D_2 ⊗ D_1) + (D_1 D_2 on letters)`.
    #[test]
    fn composites_split_into_ordered_products(seed in any::<u64>(), len in 0usize..6) {
        let q = Quiver::loops(&["x", "y"], 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = alphabet(&q, &[Stratum::Base]);
        let random_poly = |rng: &mut ChaCha8Rng| {
            let mut f = NcPolyOver::zero();
            for _ in 0..2 {
                let l = rng.gen_range(0..=2);
                f.add_term(Q::from_integer(rng.gen_range(-2..=2).into()), random_path(&q, rng, &base, l, None).unwrap());
            }
            f
        };
        let derivation = |rng: &mut ChaCha8Rng| base.iter().fold(Derivation::new(), |d, &x| d.with(x, random_poly(rng)));
        let (d1, d2) = (derivation(&mut rng), derivation(&mut rng));
        let w = random_path(&q, &mut rng, &base, len, None).unwrap();
        let lift = |d: &Derivation, f: &NcPolyOver<Q>| {
            f.terms().fold(NcPolyOver::zero(), |acc, (p, c)| &acc + &d.apply(&q, p).unwrap().scale(c))
        };
        let lhs = lift(&d1, &d2.apply(&q, &w).unwrap());
        let mut letters = Derivation::new();
        for &x in &base {
            letters = letters.with(x, lift(&d1, &d2.on(x)));
        }
        let mut rhs = groth2_apply(&q, &[d1.clone(), d2.clone()], &w).unwrap();
        rhs = &rhs + &groth2_apply(&q, &[d2, d1], &w).unwrap();
        rhs = &rhs + &letters.apply(&q, &w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn apply_examples() {
    let q = Quiver::loops(&["x"], 0);
    let u = &cyc(&q, "x x") + &strand(&q, "x");
    assert_eq!(apply_op(&q, &WheeledDiffOp::identity(), &u), u);
    let theta = WheeledDiffOp::theta(&q, &NcPolyOver::from_path(Path::parse(&q, "x*").unwrap())).unwrap();
    assert_eq!(apply_op(&q, &theta, &cyc(&q, "x x")).render(&q), "2 * ()⟨x⟩");
    let lx = WheeledDiffOp::multiplier(&q, strand(&q, "x")).unwrap();
    assert_eq!(apply_op(&q, &lx, &cyc(&q, "x x")).render(&q), "()⟨x⟩ * [x x]");
}

#[test]
fn commutator_examples() {
    let q = Quiver::loops(&["x", "y"], 0);
    let theta = WheeledDiffOp::theta(&q, &NcPolyOver::from_path(Path::parse(&q, "x*").unwrap())).unwrap();
    let lx = WheeledDiffOp::multiplier(&q, strand(&q, "x")).unwrap();
    let ly = WheeledDiffOp::multiplier(&q, strand(&q, "y")).unwrap();
    assert_eq!(commutator(&q, &theta, &lx).render(&q), "(1,2)⟨e_v, e_v⟩");
    assert!(commutator(&q, &lx, &ly).is_zero());
    assert!(commutator(&q, &theta, &ly).is_zero());
}

#[test]
fn principal_symbol_examples() {
    let q = Quiver::loops(&["x", "y"], 0);
    let xi = NcPolyOver::from_path(Path::parse(&q, "y x*").unwrap());
    let theta = WheeledDiffOp::theta(&q, &xi).unwrap();
    let a = strand(&q, "x y x");
    assert_eq!(principal_symbol(&q, &theta, std::slice::from_ref(&a)).unwrap(), apply_op(&q, &theta, &a));
    assert_eq!(symbol_data(&q, &theta, 1), *theta.symbol());
    let lx = WheeledDiffOp::multiplier(&q, strand(&q, "x")).unwrap();
    assert!(principal_symbol(&q, &lx, &[a]).unwrap().is_zero());
    assert!(symbol_data(&q, &lx, 1).is_zero());
}

#[test]
fn ordered_derivation_products() {
    let q = Quiver::loops(&["x", "y"], 0);
    let (x, y) = (q.arrow_id("x").unwrap(), q.arrow_id("y").unwrap());
    let d = Derivation::new().with(x, NcPolyOver::from_path(Path::arrow(&q, y)));
    let xx = Path::parse(&q, "x x").unwrap();
    assert_eq!(d.apply(&q, &xx).unwrap().render(&q), "(x y) + (y x)");
    assert_eq!(groth2_apply(&q, &[d.clone(), d.clone()], &xx).unwrap().render(&q), "(y y)");
    assert!(groth2_apply(&q, &[d.clone(), d], &Path::parse(&q, "x").unwrap()).unwrap().is_zero());
    let two = Quiver::new(&["v", "w"], &[("a", "v", "w")], 0).unwrap();
    assert!(groth2_apply::<Q>(&two, &[], &Path::parse(&two, "a").unwrap()).is_err());
}

#[test]
fn odd_annihilators_are_rejected() {
    let q = Quiver::loops(&["x"], 1);
    assert!(matches!(WheeledDiffOp::from_symbol(&q, strand(&q, "x*")), Err(DiffOpError::OddAnnihilator(_))));
    assert!(WheeledDiffOp::multiplier(&q, strand(&q, "x")).is_ok());
    let even = Quiver::loops(&["x"], 0);
    assert!(matches!(WheeledDiffOp::multiplier(&even, strand(&even, "x*")), Err(DiffOpError::NotAMultiplier(_))));
    assert!(matches!(WheeledDiffOp::from_symbol(&even, strand(&even, "dx")), Err(DiffOpError::DiffArrow(_))));
}
