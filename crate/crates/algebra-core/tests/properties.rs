use ncw_core::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn quiver() -> Quiver {
    Quiver::new(&["v", "w"], &[("x", "v", "v"), ("a", "v", "w"), ("b", "w", "v")], 1).unwrap()
}

/// Random walk of the given length from `start`, choosing among arrows by `picks`.
fn walk(q: &Quiver, start: VertexId, picks: &[usize]) -> Path {
    let mut v = start;
    let mut arrows = Vec::new();
    for &k in picks {
        let out: Vec<ArrowId> = (0..q.arrow_count() as ArrowId).filter(|&a| q.tail(a) == v).collect();
        let a = out[k % out.len()];
        arrows.push(a);
        v = q.head(a);
    }
    if arrows.is_empty() {
        Path::trivial(start)
    } else {
        Path::new(q, arrows).unwrap()
    }
}

fn poly(q: &Quiver, spec: &[(i64, u32, Vec<usize>)]) -> NcPoly {
    let mut f = NcPoly::zero();
    for (c, v, picks) in spec {
        f.add_term(Q::from_int(*c), walk(q, v % 2, picks));
    }
    f
}

fn poly_strategy() -> impl Strategy<Value = Vec<(i64, u32, Vec<usize>)>> {
    prop::collection::vec((-3i64..4, 0u32..2, prop::collection::vec(0usize..6, 0..4)), 0..4)
}

/// Rotation sign by adjacent transpositions: move the first letter to the back, k times.
fn brute_rotation_sign(q: &Quiver, w: &[ArrowId], k: usize) -> i8 {
    let mut cur = w.to_vec();
    let mut sign = 1;
    for _ in 0..k {
        let first = cur.remove(0);
        for &b in &cur {
            if q.grade(first).clashes(q.grade(b)) {
                sign = -sign;
            }
        }
        cur.push(first);
    }
    sign
}

proptest! {
    #[test]
    fn ncpoly_associative_and_unital(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        let q = quiver();
        let (f, g, h) = (poly(&q, &a), poly(&q, &b), poly(&q, &c));
        prop_assert_eq!(ncpoly_mul(&ncpoly_mul(&f, &g), &h), ncpoly_mul(&f, &ncpoly_mul(&g, &h)));
        let one = NcPoly::one(&q);
        prop_assert_eq!(ncpoly_mul(&f, &one), f.clone());
        prop_assert_eq!(ncpoly_mul(&one, &f), f);
    }

    #[test]
    fn koszul_sign_is_multiplicative(
        seed_s in prop::collection::vec(any::<u32>(), 6),
        seed_t in prop::collection::vec(any::<u32>(), 6),
        parities in prop::collection::vec(0u8..2, 6),
    ) {
        let perm = |seed: &[u32]| {
            let mut idx: Vec<u32> = (0..6).collect();
            idx.sort_by_key(|&i| (seed[i as usize], i));
            Permutation::from_images(idx).unwrap()
        };
        let s = perm(&seed_s);
        let t = perm(&seed_t);
        let lhs = koszul_sign(&s.compose(&t), &parities).unwrap();
        let rhs = koszul_sign(&s, &permute_parities(&t, &parities)).unwrap() * koszul_sign(&t, &parities).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cyclic_normalize_idempotent_and_rotation_covariant(picks in prop::collection::vec(0usize..6, 1..7), k in 0usize..7) {
        let q = quiver();
        let mut p = walk(&q, 0, &picks);
        // close the walk at v
        if p.head == 1 {
            p = path_compose(&p, &Path::parse(&q, "b").unwrap()).unwrap();
        }
        let (c, s) = cyclic_normalize(&q, &p).unwrap();
        if s == 0 {
            return Ok(());
        }
        let (c2, s2) = cyclic_normalize(&q, &c.to_path()).unwrap();
        prop_assert_eq!(&c2, &c);
        prop_assert_eq!(s2, 1);

        let n = p.len();
        let k = k % n;
        let mut rot = p.arrows[k..].to_vec();
        rot.extend_from_slice(&p.arrows[..k]);
        let rp = Path::new(&q, rot).unwrap();
        let (c3, s3) = cyclic_normalize(&q, &rp).unwrap();
        prop_assert_eq!(&c3, &c);
        // [p] = s [c] and [p] = r [rot(p)] = r s3 [c]
        prop_assert_eq!(s, brute_rotation_sign(&q, &p.arrows, k) * s3);
    }
}

#[test]
fn rational64_instantiation_agrees() {
    let q = Quiver::loops(&["x", "y"], 1);
    let x = Path::parse(&q, "x").unwrap();
    let y = Path::parse(&q, "y").unwrap();
    let mut f = NcPolyOver::<num_rational::Rational64>::zero();
    f.add_term(num_rational::Rational64::new(2, 3), x.clone());
    f.add_term(num_rational::Rational64::one(), y);
    let sq = ncpoly_mul(&f, &f);
    assert_eq!(sq.coeff(&Path::parse(&q, "x x").unwrap()), num_rational::Rational64::new(4, 9));
    assert!(ncpoly_mul(&f, &NcPolyOver::zero()).is_zero());
    assert!(!f.coeff(&x).is_zero());
}
