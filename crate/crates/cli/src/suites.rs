//! Seeded identity-check suites. Every check draws its cases from a ChaCha
//! stream keyed by (seed, check name, case index), so reports are
//! reproducible byte for byte.

use std::collections::BTreeMap;

use ncw_bv::random::{divergence_free_piece, random_connection, random_probe};
use ncw_bv::{bv_operator, curvature_trace, divergence, i_form, rank_element, torsion, torsion_mismatches, Connection, Side};
use ncw_calculus::{checks, wheeled_bracket};
use ncw_core::{cyclic_normalize, CyclicWord, NcPoly, Path, Permutation, Quiver, Scalar, Stratum, Q};
use ncw_diffops::{apply_op, commutator, compose_ops, principal_symbol_closed, principal_symbol_fn, weil_element, OpFn, WheeledDiffOp};
use ncw_rep::{ev_wheel, matrix_poisson, odd_laplacian, DimVector, RepPoint, SuperPoly};
use ncw_wheel::random::{alphabet, random_closed_path, random_element, random_path, random_permutation, TermShape};
use ncw_wheel::{contract, wheel_act, wheel_product, WheelElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Size bounds shared by all suites.
#[derive(Clone, Debug)]
pub struct Params {
    pub seed: u64,
    pub max_len: usize,
    pub max_deg: usize,
    pub cases: usize,
    pub dims: Vec<usize>,
}

impl Default for Params {
    fn default() -> Self {
        Params { seed: 0, max_len: 4, max_deg: 3, cases: 24, dims: vec![2, 3] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub suite: &'static str,
    pub check: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "check": self.check,
            "cases": self.cases,
            "failures": self.failures,
            "passed": self.passed(),
            "counterexample": self.counterexample,
        })
    }
}

type Case = fn(&mut ChaCha8Rng, usize, &Params) -> Result<(), String>;

pub struct Check {
    pub name: &'static str,
    /// Deterministic checks run once regardless of the case count.
    pub once: bool,
    run: Case,
}

const fn check(name: &'static str, run: Case) -> Check {
    Check { name, once: false, run }
}

pub const SUITE_NAMES: [&str; 8] = ["wheel", "doublepoisson", "bialgebra", "bv", "curvature", "diffops", "oracle", "weil"];

pub fn suite(name: &str) -> Option<Vec<Check>> {
    Some(match name {
        "wheel" => vec![
            check("gperm", wheel_gperm),
            check("contraction-associativity", wheel_associativity),
            check("contraction-equivariance", wheel_equivariance),
        ],
        "doublepoisson" => vec![check("dleib", dp_leib), check("dskew", dp_skew), check("dpoiss", dp_poiss), check("djac", dp_jac)],
        "bialgebra" => vec![
            check("necklace-jacobi", bi_jacobi),
            check("co-jacobi", bi_cojacobi),
            check("involutivity", bi_involutive),
            check("ncbvid2", bi_compat),
        ],
        "bv" => vec![check("d-squared", bv_square), check("bv-identity", bv_identity), check("torsion", bv_torsion)],
        "curvature" => vec![check("curvature-law", curv_law), check("divergence", curv_divergence)],
        "diffops" => vec![check("order-filtration", op_filtration), check("shadow-relations", op_shadow), check("bv-symbol", op_bv_symbol)],
        "oracle" => vec![
            check("poisson", oracle_poisson),
            check("laplacian", oracle_laplacian),
            Check { name: "rank", once: true, run: oracle_rank },
        ],
        "weil" => vec![Check { name: "sp2", once: true, run: weil_sp2 }],
        _ => return None,
    })
}

fn case_seed(seed: u64, name: &str, i: usize) -> u64 {
    let mut h = seed ^ 0xcbf2_9ce4_8422_2325;
    for b in name.bytes().chain((i as u64).to_le_bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

pub fn run_check(suite: &'static str, c: &Check, params: &Params) -> CheckReport {
    let cases = if c.once { 1 } else { params.cases };
    let mut report = CheckReport { suite, check: c.name, cases, failures: 0, counterexample: None };
    for i in 0..cases {
        let mut rng = ChaCha8Rng::seed_from_u64(case_seed(params.seed, c.name, i));
        if let Err(e) = (c.run)(&mut rng, i, params) {
            report.failures += 1;
            report.counterexample.get_or_insert(format!("case {i}: {e}"));
        }
    }
    report
}

/// Runs a suite, or every suite for `all`.
pub fn run_suite(name: &str, params: &Params) -> Option<Vec<CheckReport>> {
    if name == "all" {
        return Some(SUITE_NAMES.iter().flat_map(|s| run_suite(s, params).unwrap()).collect());
    }
    let key = SUITE_NAMES.iter().find(|s| **s == name)?;
    Some(suite(key)?.iter().map(|c| run_check(key, c, params)).collect())
}

fn two_vertex(parity: u8) -> Quiver {
    Quiver::new(&["v", "w"], &[("a", "v", "w"), ("b", "w", "v")], parity).expect("valid quiver")
}

fn odd_quivers() -> [Quiver; 3] {
    [Quiver::loops(&["x"], 1), Quiver::loops(&["x", "y"], 1), two_vertex(1)]
}

fn even_quivers() -> [Quiver; 3] {
    [Quiver::loops(&["x"], 0), Quiver::loops(&["x", "y"], 0), two_vertex(0)]
}

fn both_regimes(i: usize) -> Quiver {
    let qs = [odd_quivers(), even_quivers()].concat();
    qs[i % qs.len()].clone()
}

fn expect_eq(what: &str, q: &Quiver, lhs: &WheelElement, rhs: &WheelElement) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{what}: {} != {}", lhs.render(q), rhs.render(q)))
    }
}

// wheel

fn wheel_sample(q: &Quiver, rng: &mut ChaCha8Rng, degree: usize, p: &Params) -> WheelElement {
    let arrows = alphabet(q, &[Stratum::Base, Stratum::Star, Stratum::Diff]);
    random_element(q, rng, &arrows, TermShape { degree, max_len: p.max_len, max_loops: 2 }, 3)
}

fn wheel_quiver(i: usize) -> Quiver {
    [Quiver::loops(&["x", "y"], 1), two_vertex(1), Quiver::loops(&["x"], 0)][i % 3].clone()
}

fn wheel_gperm(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = wheel_quiver(i);
    let m = rng.gen_range(1..=p.max_deg.max(1));
    let (a, b) = (rng.gen_range(0..m), rng.gen_range(0..m));
    let u = wheel_sample(&q, rng, m, p);
    let lhs = contract(&q, &u, a, b).map_err(|e| e.to_string())?;
    let moved = wheel_act(&q, &Permutation::cycle_prefix(m, b + 1), &Permutation::cycle_prefix(m, a + 1), &u).map_err(|e| e.to_string())?;
    let rhs = contract(&q, &moved, 0, 0).map_err(|e| e.to_string())?;
    expect_eq(&format!("μ_{{{a},{b}}} on {}", u.render(&q)), &q, &lhs, &rhs)
}

fn wheel_associativity(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = wheel_quiver(i);
    let m = rng.gen_range(2..=p.max_deg.max(2));
    let (a, c) = loop {
        let (a, c) = (rng.gen_range(0..m), rng.gen_range(0..m));
        if a != c {
            break (a, c);
        }
    };
    let (b, d) = loop {
        let (b, d) = (rng.gen_range(0..m), rng.gen_range(0..m));
        if b != d {
            break (b, d);
        }
    };
    let u = wheel_sample(&q, rng, m, p);
    let shift = |x: usize, y: usize| if x > y { x - 1 } else { x };
    let first = contract(&q, &contract(&q, &u, c, d).unwrap(), shift(a, c), shift(b, d)).unwrap();
    let second = contract(&q, &contract(&q, &u, a, b).unwrap(), shift(c, a), shift(d, b)).unwrap();
    expect_eq(&format!("μ_{{{a},{b}}}, μ_{{{c},{d}}} on {}", u.render(&q)), &q, &first, &second)
}

fn induced(p: &Permutation, removed: usize) -> Permutation {
    let n = p.degree();
    let drop = |k: usize| move |s: usize| if s > k { s - 1 } else { s };
    let (src, dst) = (drop(removed), drop(p.apply(removed)));
    let mut images = vec![0u32; n - 1];
    for s in (0..n).filter(|&s| s != removed) {
        images[src(s)] = dst(p.apply(s)) as u32;
    }
    Permutation::from_images(images).expect("induced permutation")
}

fn wheel_equivariance(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = wheel_quiver(i);
    let m = rng.gen_range(2..=p.max_deg.max(2));
    let (a, b) = (rng.gen_range(0..m), rng.gen_range(0..m));
    let (alpha, beta) = (random_permutation(rng, m), random_permutation(rng, m));
    let u = wheel_sample(&q, rng, m, p);
    let acted = wheel_act(&q, &alpha, &beta, &u).unwrap();
    let lhs = contract(&q, &acted, beta.apply(a), alpha.apply(b)).unwrap();
    let rhs = wheel_act(&q, &induced(&alpha, b), &induced(&beta, a), &contract(&q, &u, a, b).unwrap()).unwrap();
    expect_eq(&format!("σ=({alpha}, {beta}), μ_{{{a},{b}}} on {}", u.render(&q)), &q, &lhs, &rhs)
}

// double Poisson and bialgebra

fn word(q: &Quiver, rng: &mut ChaCha8Rng, max_len: usize, start: Option<u32>) -> Path {
    let arrows = alphabet(q, &[Stratum::Base, Stratum::Star]);
    loop {
        let len = rng.gen_range(1..=max_len.max(1));
        if let Some(p) = random_path(q, rng, &arrows, len, start) {
            return p;
        }
    }
}

fn necklace(q: &Quiver, rng: &mut ChaCha8Rng, max_len: usize) -> CyclicWord {
    let arrows = alphabet(q, &[Stratum::Base, Stratum::Star]);
    loop {
        let len = rng.gen_range(1..=max_len.max(1));
        let Some(p) = random_closed_path(q, rng, &arrows, len) else { continue };
        let (c, s) = cyclic_normalize(q, &p).expect("closed");
        if s != 0 {
            return c;
        }
    }
}

fn words(q: &Quiver, ps: &[&Path]) -> String {
    ps.iter().map(|p| p.render(q)).collect::<Vec<_>>().join(", ")
}

fn dp_leib(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = both_regimes(i);
    let (a, b) = (word(&q, rng, p.max_len, None), word(&q, rng, p.max_len, None));
    let c = word(&q, rng, p.max_len, Some(b.head));
    checks::dleib::<Q>(&q, &a, &b, &c).map_err(|e| format!("{}: {e}", words(&q, &[&a, &b, &c])))
}

fn dp_skew(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = both_regimes(i);
    let (a, b) = (word(&q, rng, p.max_len, None), word(&q, rng, p.max_len, None));
    checks::dskew::<Q>(&q, &a, &b).map_err(|e| format!("{}: {e}", words(&q, &[&a, &b])))
}

fn dp_poiss(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = both_regimes(i);
    let a = word(&q, rng, p.max_len, None);
    let b = word(&q, rng, p.max_len, Some(a.head));
    let c = word(&q, rng, p.max_len, None);
    checks::dpoiss::<Q>(&q, &a, &b, &c).map_err(|e| format!("{}: {e}", words(&q, &[&a, &b, &c])))
}

fn dp_jac(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = both_regimes(i);
    let [a, b, c] = [0, 1, 2].map(|_| word(&q, rng, p.max_len, None));
    checks::djac::<Q>(&q, &a, &b, &c).map_err(|e| format!("{}: {e}", words(&q, &[&a, &b, &c])))
}

fn bi_jacobi(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = both_regimes(i);
    let [a, b, c] = [0, 1, 2].map(|_| necklace(&q, rng, p.max_len));
    let show = || format!("{}, {}, {}", a.render(&q), b.render(&q), c.render(&q));
    checks::necklace_antisymmetry::<Q>(&q, &a, &b).map_err(|e| format!("{}: {e}", show()))?;
    checks::necklace_jacobi::<Q>(&q, &a, &b, &c).map_err(|e| format!("{}: {e}", show()))
}

fn bi_cojacobi(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = both_regimes(i);
    let c = necklace(&q, rng, p.max_len);
    checks::co_jacobi::<Q>(&q, &c).map_err(|e| format!("{}: {e}", c.render(&q)))
}

fn bi_involutive(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = both_regimes(i);
    let c = necklace(&q, rng, p.max_len);
    checks::involutivity::<Q>(&q, &c).map_err(|e| format!("{}: {e}", c.render(&q)))
}

/// Stated for the odd regime only.
fn bi_compat(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = odd_quiver(i);
    let a = word(&q, rng, p.max_len, None);
    let b = word(&q, rng, p.max_len, Some(a.head));
    checks::ncbvid2::<Q>(&q, &a, &b).map_err(|e| format!("{}: {e}", words(&q, &[&a, &b])))
}

// BV and connections

fn odd_quiver(i: usize) -> Quiver {
    odd_quivers()[i % 3].clone()
}

fn star_odd(q: &Quiver, u: &WheelElement) -> bool {
    u.grade(q).is_some_and(|g| g.star_bit() == 1)
}

/// `D(ξη) − D(ξ)η − (−1)^{|ξ|} ξ D(η) − (−1)^{|ξ|+1} {ξ, η}`.
fn bv_defect(q: &Quiver, conn: &Connection, xi: &WheelElement, eta: &WheelElement) -> WheelElement {
    let odd = star_odd(q, xi);
    let mut out = bv_operator(q, conn, &wheel_product(q, xi, eta));
    out.add_scaled(&Q::sign(true), &wheel_product(q, &bv_operator(q, conn, xi), eta));
    out.add_scaled(&Q::sign(!odd), &wheel_product(q, xi, &bv_operator(q, conn, eta)));
    out.add_scaled(&Q::sign(odd), &wheeled_bracket(q, xi, eta));
    out
}

fn bv_square(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = odd_quiver(i);
    let u = random_probe(&q, rng, p.max_deg, 3, p.max_len);
    let triv = Connection::trivial();
    let dd = bv_operator(&q, &triv, &bv_operator(&q, &triv, &u));
    expect_eq(&format!("D² on {}", u.render(&q)), &q, &dd, &WheelElement::zero())
}

fn bv_identity(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = odd_quiver(i);
    let (xi, eta) = (random_probe(&q, rng, p.max_deg, 3, p.max_len), random_probe(&q, rng, p.max_deg, 3, p.max_len));
    let defect = bv_defect(&q, &Connection::trivial(), &xi, &eta);
    expect_eq(&format!("ξ = {}, η = {}", xi.render(&q), eta.render(&q)), &q, &defect, &WheelElement::zero())
}

fn bv_torsion(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = odd_quiver(i);
    let conn: Connection = random_connection(&q, rng, p.max_len, 2, &[Side::Left, Side::Right]);
    let show = || conn.to_json(&q).to_string();
    let bad = torsion_mismatches(&q, &conn).map_err(|e| e.to_string())?;
    if !bad.is_empty() {
        return Err(format!("{} disagrees on {} generator pairs", show(), bad.len()));
    }
    let completed = conn.torsion_free_completion(&q);
    let tau = torsion(&q, &completed);
    expect_eq(&format!("torsion of the completion of {}", show()), &q, &tau, &WheelElement::zero())
}

fn torsion_free(q: &Quiver, rng: &mut ChaCha8Rng, max_len: usize) -> Connection {
    random_connection::<Q, _>(q, rng, max_len.min(3), 1, &[Side::Left, Side::Right]).torsion_free_completion(q)
}

/// Probes span wheel degree ≤ 2 and star count ≤ 2.
fn probes(q: &Quiver, rng: &mut ChaCha8Rng, n: usize) -> Vec<WheelElement> {
    (0..n).map(|_| random_probe(q, rng, 2, 2, 3)).collect()
}

fn curv_law(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = odd_quiver(i);
    let conn = torsion_free(&q, rng, p.max_len);
    let tr = curvature_trace(&q, &conn).map_err(|e| e.to_string())?;
    for u in probes(&q, rng, 4) {
        let square = bv_operator(&q, &conn, &bv_operator(&q, &conn, &u));
        let what = format!("∇ = {}, u = {}", conn.to_json(&q), u.render(&q));
        expect_eq(&what, &q, &square, &-&i_form(&q, &tr, &u))?;
        if tr.is_zero() {
            expect_eq(&what, &q, &square, &WheelElement::zero())?;
        }
    }
    Ok(())
}

fn curv_divergence(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = odd_quiver(i);
    let conn = torsion_free(&q, rng, p.max_len);
    let piece: Connection = divergence_free_piece(&q, rng, 5, 2);
    let mut other = conn.clone();
    for e in q.base_arrows() {
        for side in [Side::Left, Side::Right] {
            other.add(&q, side, e, &piece.get(side, e)).map_err(|e| e.to_string())?;
        }
    }
    let what = format!("∇ = {}, ∇' = {}", conn.to_json(&q), other.to_json(&q));
    if !torsion(&q, &other).is_zero() || divergence(&q, &conn) != divergence(&q, &other) {
        return Err(format!("{what}: constructed pair is not admissible"));
    }
    for u in probes(&q, rng, 3) {
        expect_eq(&format!("{what}, u = {}", u.render(&q)), &q, &bv_operator(&q, &conn, &u), &bv_operator(&q, &other, &u))?;
    }
    Ok(())
}

// differential operators

fn even_quiver(i: usize) -> Quiver {
    even_quivers()[i % 3].clone()
}

/// A random operator of order at most two.
fn random_op(q: &Quiver, rng: &mut ChaCha8Rng, degree: usize) -> WheeledDiffOp {
    let arrows = alphabet(q, &[Stratum::Base, Stratum::Star]);
    let u = random_element(q, rng, &arrows, TermShape { degree, max_len: 2, max_loops: 1 }, 2);
    let d = WheeledDiffOp::from_symbol(q, u).expect("even regime symbol");
    (0..=2).fold(WheeledDiffOp::zero(), |acc, n| &acc + &d.order_part(q, n))
}

fn random_base(q: &Quiver, rng: &mut ChaCha8Rng, degree: usize) -> WheelElement {
    let arrows = alphabet(q, &[Stratum::Base]);
    random_element(q, rng, &arrows, TermShape { degree, max_len: 3, max_loops: 1 }, 2)
}

fn random_derivation(q: &Quiver, rng: &mut ChaCha8Rng) -> NcPoly {
    let arrows = alphabet(q, &[Stratum::Base, Stratum::Star]);
    loop {
        let len = rng.gen_range(1..=3);
        if let Some(p) = random_path(q, rng, &arrows, len, None) {
            if p.arrows.iter().filter(|&&a| q.stratum(a) == Stratum::Star).count() == 1 {
                return NcPoly::term(Q::from_int(rng.gen_range(1..=3)), p);
            }
        }
    }
}

fn op_filtration(rng: &mut ChaCha8Rng, i: usize, _: &Params) -> Result<(), String> {
    let q = even_quiver(i);
    let (a, b) = (rng.gen_range(0..=1), rng.gen_range(0..=1));
    let (d1, d2) = (random_op(&q, rng, a), random_op(&q, rng, b));
    let total = d1.order(&q) + d2.order(&q);
    let what = || format!("D1 = {}, D2 = {}", d1.render(&q), d2.render(&q));
    if compose_ops(&q, &d1, &d2).order(&q) > total {
        return Err(format!("{}: composite order exceeds {total}", what()));
    }
    let c = commutator(&q, &d1, &d2);
    if !c.is_zero() && c.order(&q) >= total {
        return Err(format!("{}: commutator {} has order {}", what(), c.render(&q), c.order(&q)));
    }
    Ok(())
}

fn op_shadow(rng: &mut ChaCha8Rng, i: usize, _: &Params) -> Result<(), String> {
    let q = even_quiver(i);
    let (a, b) = (rng.gen_range(0..=1), rng.gen_range(0..=1));
    let (v, w) = (random_base(&q, rng, a), random_base(&q, rng, b));
    let lv = WheeledDiffOp::multiplier(&q, v.clone()).map_err(|e| e.to_string())?;
    let lw = WheeledDiffOp::multiplier(&q, w).map_err(|e| e.to_string())?;
    let (f, g) = (random_derivation(&q, rng), random_derivation(&q, rng));
    let xi = WheeledDiffOp::theta(&q, &f).map_err(|e| e.to_string())?;
    let eta = WheeledDiffOp::theta(&q, &g).map_err(|e| e.to_string())?;
    let what = format!("v = {}, ξ = {}, η = {}", v.render(&q), f.render(&q), g.render(&q));
    if !commutator(&q, &lv, &lw).is_zero() {
        return Err(format!("[λ, λ] with {what}"));
    }
    let expected = WheeledDiffOp::multiplier(&q, apply_op(&q, &xi, &v)).map_err(|e| e.to_string())?;
    if commutator(&q, &xi, &lv) != expected {
        return Err(format!("[θ, λ] with {what}"));
    }
    let bracket = WheeledDiffOp::from_symbol(&q, wheeled_bracket(&q, xi.symbol(), eta.symbol())).map_err(|e| e.to_string())?;
    if commutator(&q, &xi, &eta) != bracket {
        return Err(format!("[θ, θ] with {what}"));
    }
    Ok(())
}

fn generators(q: &Quiver) -> Vec<WheelElement> {
    q.base_arrows().flat_map(|e| [e, q.star_of(e).expect("doubled quiver")]).map(|a| WheelElement::from_path(Path::arrow(q, a))).collect()
}

/// `Γ_2(D_∇)(ξ, η) = (−1)^{|ξ|+1}{ξ, η}` on generator pairs.
fn op_bv_symbol(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = odd_quiver(i);
    let conn = torsion_free(&q, rng, p.max_len);
    let f = |u: &WheelElement| bv_operator(&q, &conn, u);
    let d = OpFn { shift: 0, grade: ncw_core::Grade::STAR, f: &f };
    for xi in generators(&q) {
        for eta in generators(&q) {
            let args = [xi.clone(), eta.clone()];
            let gamma = principal_symbol_fn(&q, &d, &args).map_err(|e| e.to_string())?;
            let closed = principal_symbol_closed(&q, &d, &args).map_err(|e| e.to_string())?;
            let what = format!("∇ = {}, ξ = {}, η = {}", conn.to_json(&q), xi.render(&q), eta.render(&q));
            expect_eq(&what, &q, &gamma, &closed)?;
            let expected = wheeled_bracket(&q, &xi, &eta).scale(&Q::sign(!star_odd(&q, &xi)));
            expect_eq(&what, &q, &gamma, &expected)?;
        }
    }
    Ok(())
}

// representation oracle

fn generic(q: &Quiver, d: usize) -> RepPoint {
    RepPoint::generic(DimVector::uniform(q, d).expect("positive dimension"))
}

fn trace_poly(q: &Quiver, point: &RepPoint, u: &WheelElement) -> Result<SuperPoly, String> {
    let v = ev_wheel(q, point, u).map_err(|e| e.to_string())?;
    v.as_poly().ok_or_else(|| format!("{} is not of degree 0", u.render(q)))
}

fn pick_dim(p: &Params, i: usize) -> usize {
    p.dims[(i / 3) % p.dims.len().max(1)]
}

fn oracle_poisson(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = even_quiver(i);
    let point = generic(&q, pick_dim(p, i));
    let (a, b) = (necklace(&q, rng, p.max_len), necklace(&q, rng, p.max_len));
    let (ua, ub) = (WheelElement::from_cyclic_word(a.clone()), WheelElement::from_cyclic_word(b.clone()));
    let lhs = matrix_poisson(&q, &trace_poly(&q, &point, &ua)?, &trace_poly(&q, &point, &ub)?).map_err(|e| e.to_string())?;
    let rhs = trace_poly(&q, &point, &wheeled_bracket(&q, &ua, &ub))?;
    if lhs != rhs {
        return Err(format!("a = {}, b = {} at d = {}", a.render(&q), b.render(&q), pick_dim(p, i)));
    }
    Ok(())
}

/// `ev ∘ D_trivial = −Δ ∘ ev`; the sign is fixed by `[x x*] ↦ d²`.
fn oracle_laplacian(rng: &mut ChaCha8Rng, i: usize, p: &Params) -> Result<(), String> {
    let q = odd_quiver(i);
    let point = generic(&q, pick_dim(p, i));
    let arrows = alphabet(&q, &[Stratum::Base, Stratum::Star]);
    let mut u = WheelElement::from_cyclic_word(necklace(&q, rng, p.max_len));
    if rng.gen_bool(0.5) {
        let extra = random_element(&q, rng, &arrows, TermShape { degree: 0, max_len: 2, max_loops: 2 }, 1);
        u = wheel_product(&q, &u, &extra);
    }
    let lhs = trace_poly(&q, &point, &bv_operator(&q, &Connection::trivial(), &u))?;
    let rhs = odd_laplacian(&q, &trace_poly(&q, &point, &u)?);
    if lhs != -&rhs {
        return Err(format!("u = {} at d = {}", u.render(&q), pick_dim(p, i)));
    }
    Ok(())
}

fn oracle_rank(_: &mut ChaCha8Rng, _: usize, _: &Params) -> Result<(), String> {
    let cases: [(Quiver, Vec<usize>); 3] = [
        (Quiver::loops(&["x", "y"], 1), vec![2]),
        (two_vertex(1), vec![2, 3]),
        (Quiver::new(&["u", "v", "w"], &[("a", "u", "v"), ("b", "v", "w"), ("c", "w", "w")], 1).expect("valid quiver"), vec![1, 2, 3]),
    ];
    for (q, dims) in cases {
        let dims = DimVector::new(&q, dims).map_err(|e| e.to_string())?;
        let expected: usize = q.base_arrows().map(|e| dims.at(q.head(e)) * dims.at(q.tail(e))).sum();
        let value = trace_poly(&q, &RepPoint::generic(dims.clone()), &rank_element(&q))?;
        if value.as_constant() != Some(Q::from_int(expected as i64)) {
            return Err(format!("ev(rk) = {} but Σ d_h d_t = {expected}", value.render(&q)));
        }
    }
    Ok(())
}

// Weil

/// Quadratics in `x` and `p = ∂_x` keyed by (deg x, deg p).
type Quad = BTreeMap<(u8, u8), i64>;

/// `{f, g} = ∂_p f ∂_x g − ∂_x f ∂_p g`.
fn quad_bracket(f: &Quad, g: &Quad) -> Quad {
    let mut out = Quad::new();
    for (&(a, b), cf) in f {
        for (&(c, d), cg) in g {
            let k = (a + c).wrapping_sub(1);
            let l = (b + d).wrapping_sub(1);
            let n = (b * c) as i64 - (a * d) as i64;
            if n != 0 {
                *out.entry((k, l)).or_insert(0) += cf * cg * n;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn weil_sp2(_: &mut ChaCha8Rng, _: usize, _: &Params) -> Result<(), String> {
    let q = Quiver::loops(&["x"], 0);
    let weil = |s: &str| -> Result<WheeledDiffOp, String> {
        let (c, sign) = cyclic_normalize(&q, &Path::parse(&q, s).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        Ok(weil_element(&q, &c).map_err(|e| e.to_string())?.scale(&Q::from_int(sign.into())))
    };
    let basis = [((2, 0), weil("x x")?), ((1, 1), weil("x x*")?), ((0, 2), weil("x* x*")?)];
    let image = |f: &Quad| {
        f.iter().fold(WheeledDiffOp::zero(), |acc, (k, c)| {
            let (_, w) = basis.iter().find(|(b, _)| b == k).expect("quadratic");
            &acc + &w.scale(&Q::from_int(*c))
        })
    };
    for (kf, wf) in &basis {
        for (kg, wg) in &basis {
            let expected = image(&quad_bracket(&Quad::from([(*kf, 1)]), &Quad::from([(*kg, 1)])));
            let got = commutator(&q, wf, wg);
            if got != expected {
                return Err(format!("[{}, {}] = {}, expected {}", wf.render(&q), wg.render(&q), got.render(&q), expected.render(&q)));
            }
        }
    }
    Ok(())
}
