//! Identity checks on concrete inputs. Each returns `Err` with a readable
//! counterexample when the identity fails.

use ncw_core::{path_compose, CyclicWord, Grade, NcPolyOver, Path, Permutation, Quiver, Scalar};
use ncw_wheel::{contract, wheel_act, wheel_product, WheelElementOver};

use crate::bracket::{double_bracket, wheeled_bracket};
use crate::necklace::{
    bracket_contraction, bracket_shift, cobracket_extended, lifted_cobracket, necklace_bracket, necklace_cobracket, NecklaceSym,
};
use crate::tensor::TensorOver;

fn poly<S: Scalar>(p: &Path) -> NcPolyOver<S> {
    NcPolyOver::from_path(p.clone())
}

fn product<S: Scalar>(a: &Path, b: &Path) -> NcPolyOver<S> {
    path_compose(a, b).map(NcPolyOver::from_path).unwrap_or_default()
}

fn shifted(q: &Quiver, p: &Path) -> Grade {
    p.grade(q) + bracket_shift(q)
}

fn tensor_mismatch<S: Scalar>(q: &Quiver, what: &str, lhs: &TensorOver<S>, rhs: &TensorOver<S>) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{what}: lhs = {}, rhs = {}", lhs.render(q), rhs.render(q)))
    }
}

fn wheel_mismatch<S: Scalar>(q: &Quiver, what: &str, lhs: &WheelElementOver<S>, rhs: &WheelElementOver<S>) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{what}: lhs = {}, rhs = {}", lhs.render(q), rhs.render(q)))
    }
}

/// `{{a, bc}} = {{a, b}} c + (-1)^{<a+β, b>} b {{a, c}}`.
pub fn dleib<S: Scalar>(q: &Quiver, a: &Path, b: &Path, c: &Path) -> Result<(), String> {
    let lhs = double_bracket::<S>(q, &poly(a), &product(b, c));
    let mut rhs = double_bracket::<S>(q, &poly(a), &poly(b)).mul_factor_right(1, &poly(c));
    let second = double_bracket::<S>(q, &poly(a), &poly(c)).mul_factor_left(0, &poly(b));
    rhs.add_scaled(&S::sign(shifted(q, a).clashes(b.grade(q))), &second);
    tensor_mismatch(q, &format!("dleib a={} b={} c={}", a.render(q), b.render(q), c.render(q)), &lhs, &rhs)
}

/// `{{a, b}} = -ε(a, b) τ{{b, a}}`.
pub fn dskew<S: Scalar>(q: &Quiver, a: &Path, b: &Path) -> Result<(), String> {
    let lhs = double_bracket::<S>(q, &poly(a), &poly(b));
    let flip = double_bracket::<S>(q, &poly(b), &poly(a)).permute(q, &[1, 0]);
    let rhs = flip.scale(&S::sign(!shifted(q, a).clashes(shifted(q, b))));
    tensor_mismatch(q, &format!("dskew a={} b={}", a.render(q), b.render(q)), &lhs, &rhs)
}

/// `{{ab, c}} = a * {{b, c}} + (-1)^{<b, c+β>} {{a, c}} * b` with inner actions.
pub fn dpoiss<S: Scalar>(q: &Quiver, a: &Path, b: &Path, c: &Path) -> Result<(), String> {
    let lhs = double_bracket::<S>(q, &product(a, b), &poly(c));
    let mut rhs = double_bracket::<S>(q, &poly(b), &poly(c)).signed_left(q, 1, a);
    let second = double_bracket::<S>(q, &poly(a), &poly(c)).signed_right(q, 0, b);
    rhs.add_scaled(&S::sign(b.grade(q).clashes(shifted(q, c))), &second);
    tensor_mismatch(q, &format!("dpoiss a={} b={} c={}", a.render(q), b.render(q), c.render(q)), &lhs, &rhs)
}

fn bracket_left<S: Scalar>(q: &Quiver, a: &Path, t: &TensorOver<S>) -> TensorOver<S> {
    t.expand_factor(0, |p| double_bracket::<S>(q, &poly(a), &poly(p)))
}

/// Graded double Jacobi identity, cyclically permuting with `τ_s(x⊗y⊗z) = z⊗x⊗y`.
pub fn djac<S: Scalar>(q: &Quiver, a: &Path, b: &Path, c: &Path) -> Result<(), String> {
    let (ga, gb, gc) = (shifted(q, a), shifted(q, b), shifted(q, c));
    let t1 = bracket_left(q, a, &double_bracket::<S>(q, &poly(b), &poly(c)));
    let t2 = bracket_left(q, b, &double_bracket::<S>(q, &poly(c), &poly(a))).permute(q, &[1, 2, 0]);
    let t3 = bracket_left(q, c, &double_bracket::<S>(q, &poly(a), &poly(b))).permute(q, &[2, 0, 1]);
    let mut sum = t1;
    sum.add_scaled(&S::sign(ga.clashes(gb + gc)), &t2);
    sum.add_scaled(&S::sign(gc.clashes(ga + gb)), &t3);
    tensor_mismatch(q, &format!("djac a={} b={} c={}", a.render(q), b.render(q), c.render(q)), &sum, &TensorOver::zero())
}

fn eps(q: &Quiver, a: &CyclicWord, b: &CyclicWord) -> bool {
    let beta = bracket_shift(q);
    (a.grade(q) + beta).clashes(b.grade(q) + beta)
}

fn single<S: Scalar>(c: &CyclicWord) -> WheelElementOver<S> {
    WheelElementOver::from_cyclic_word(c.clone())
}

/// `{a, b} = -ε(a, b){b, a}` on necklaces.
pub fn necklace_antisymmetry<S: Scalar>(q: &Quiver, a: &CyclicWord, b: &CyclicWord) -> Result<(), String> {
    let lhs: WheelElementOver<S> = necklace_bracket(q, a, b);
    let rhs = necklace_bracket::<S>(q, b, a).scale(&S::sign(!eps(q, a, b)));
    wheel_mismatch(q, &format!("antisymmetry a={} b={}", a.render(q), b.render(q)), &lhs, &rhs)
}

/// `{a, {b, c}} = {{a, b}, c} + ε(a, b){b, {a, c}}`.
pub fn necklace_jacobi<S: Scalar>(q: &Quiver, a: &CyclicWord, b: &CyclicWord, c: &CyclicWord) -> Result<(), String> {
    let lhs = wheeled_bracket(q, &single(a), &necklace_bracket::<S>(q, b, c));
    let mut rhs = wheeled_bracket(q, &necklace_bracket::<S>(q, a, b), &single(c));
    rhs.add_scaled(&S::sign(eps(q, a, b)), &wheeled_bracket(q, &single(b), &necklace_bracket::<S>(q, a, c)));
    wheel_mismatch(q, &format!("jacobi a={} b={} c={}", a.render(q), b.render(q), c.render(q)), &lhs, &rhs)
}

/// The cobracket lands in antisymmetric tensors and squares to zero as a coderivation.
pub fn co_jacobi<S: Scalar>(q: &Quiver, c: &CyclicWord) -> Result<(), String> {
    let d: NecklaceSym<S> = necklace_cobracket(q, c);
    let dd = cobracket_extended(q, &d);
    if dd.is_zero() {
        Ok(())
    } else {
        Err(format!("co-jacobi c={}: δδ(c) = {}", c.render(q), dd.render(q)))
    }
}

/// Bracket after cobracket vanishes.
pub fn involutivity<S: Scalar>(q: &Quiver, c: &CyclicWord) -> Result<(), String> {
    let d: NecklaceSym<S> = necklace_cobracket(q, c);
    let r = bracket_contraction(q, &d);
    wheel_mismatch(q, &format!("involutivity c={}", c.render(q)), &r, &WheelElementOver::zero())
}

/// `δ(ab) = δ(a) b + (-1)^{|a|} a δ(b) + (-1)^{|a|+1} μ_{1,2}{a, b}` for the
/// lifted cobracket on open words (odd regime).
pub fn ncbvid2<S: Scalar>(q: &Quiver, a: &Path, b: &Path) -> Result<(), String> {
    let ab = product::<S>(a, b);
    let lhs = lifted_cobracket(q, &ab);
    let (wa, wb) = (WheelElementOver::<S>::from_path(a.clone()), WheelElementOver::<S>::from_path(b.clone()));
    let glue = |u: &WheelElementOver<S>| contract(q, u, 0, 1).expect("degree two");
    let odd_a = a.grade(q).star_bit() == 1;
    let mut rhs = glue(&wheel_product(q, &lifted_cobracket(q, &poly(a)), &wb));
    rhs.add_scaled(&S::sign(odd_a), &glue(&wheel_product(q, &wa, &lifted_cobracket(q, &poly(b)))));
    rhs.add_scaled(&S::sign(!odd_a), &glue(&wheeled_bracket(q, &wa, &wb)));
    wheel_mismatch(q, &format!("ncbvid2 a={} b={}", a.render(q), b.render(q)), &lhs, &rhs)
}

fn wgrade<S: Scalar>(q: &Quiver, u: &WheelElementOver<S>) -> Result<Grade, String> {
    u.grade(q).ok_or_else(|| format!("inhomogeneous or zero element {}", u.render(q)))
}

fn deg<S: Scalar>(q: &Quiver, u: &WheelElementOver<S>) -> Result<usize, String> {
    match u.degrees().as_slice() {
        [d] => Ok(*d),
        _ => Err(format!("element without a single wheel degree: {}", u.render(q))),
    }
}

/// Moves the first two blocks of sizes `sizes[0], sizes[1]` past each other,
/// relabelling inputs and outputs together.
fn swap_blocks<S: Scalar>(q: &Quiver, sizes: &[usize], u: &WheelElementOver<S>) -> WheelElementOver<S> {
    let mut images = vec![1u32, 0];
    images.extend(2..sizes.len() as u32);
    let p = Permutation::from_images(images).expect("permutation").blocks(sizes).expect("block sizes");
    wheel_act(q, &p, &p, u).expect("degrees agree")
}

/// `{u, v} = -ε(u, v) (12)^{n,m}{v, u}`.
pub fn twskewsym<S: Scalar>(q: &Quiver, u: &WheelElementOver<S>, v: &WheelElementOver<S>) -> Result<(), String> {
    let (gu, gv) = (wgrade(q, u)?, wgrade(q, v)?);
    let beta = bracket_shift(q);
    let lhs = wheeled_bracket(q, u, v);
    let flipped = swap_blocks(q, &[deg(q, v)?, deg(q, u)?], &wheeled_bracket(q, v, u));
    let rhs = flipped.scale(&S::sign(!(gu + beta).clashes(gv + beta)));
    wheel_mismatch(q, &format!("twskewsym u={} v={}", u.render(q), v.render(q)), &lhs, &rhs)
}

/// `{u, v w} = {u, v} w + (-1)^{<u+β, v>} (12)^{n,m}(v {u, w})`.
pub fn twleib<S: Scalar>(q: &Quiver, u: &WheelElementOver<S>, v: &WheelElementOver<S>, w: &WheelElementOver<S>) -> Result<(), String> {
    let (gu, gv) = (wgrade(q, u)?, wgrade(q, v)?);
    let (m, n, k) = (deg(q, u)?, deg(q, v)?, deg(q, w)?);
    let lhs = wheeled_bracket(q, u, &wheel_product(q, v, w));
    let mut rhs = wheel_product(q, &wheeled_bracket(q, u, v), w);
    let moved = swap_blocks(q, &[n, m, k], &wheel_product(q, v, &wheeled_bracket(q, u, w)));
    rhs.add_scaled(&S::sign((gu + bracket_shift(q)).clashes(gv)), &moved);
    wheel_mismatch(q, &format!("twleib u={} v={} w={}", u.render(q), v.render(q), w.render(q)), &lhs, &rhs)
}

/// `{u, {v, w}} = {{u, v}, w} + ε(u, v) (12)^{n,m}{v, {u, w}}`.
pub fn twjac<S: Scalar>(q: &Quiver, u: &WheelElementOver<S>, v: &WheelElementOver<S>, w: &WheelElementOver<S>) -> Result<(), String> {
    let (gu, gv) = (wgrade(q, u)?, wgrade(q, v)?);
    let beta = bracket_shift(q);
    let (m, n, k) = (deg(q, u)?, deg(q, v)?, deg(q, w)?);
    let lhs = wheeled_bracket(q, u, &wheeled_bracket(q, v, w));
    let mut rhs = wheeled_bracket(q, &wheeled_bracket(q, u, v), w);
    let moved = swap_blocks(q, &[n, m, k], &wheeled_bracket(q, v, &wheeled_bracket(q, u, w)));
    rhs.add_scaled(&S::sign((gu + beta).clashes(gv + beta)), &moved);
    wheel_mismatch(q, &format!("twjac u={} v={} w={}", u.render(q), v.render(q), w.render(q)), &lhs, &rhs)
}

/// `{μ_{i,j} u, v} = μ_{i,j}{u, v}` and `{u, μ_{i,j} v} = μ_{m+i,m+j}{u, v}`
/// (0-based slots; `m` is the degree of `u`).
pub fn poiscontr<S: Scalar>(q: &Quiver, u: &WheelElementOver<S>, v: &WheelElementOver<S>, i: usize, j: usize) -> Result<(), String> {
    let (m, n) = (deg(q, u)?, deg(q, v)?);
    let uv = wheeled_bracket(q, u, v);
    let what = format!("poiscontr u={} v={} i={i} j={j}", u.render(q), v.render(q));
    if i < m && j < m {
        let lhs = wheeled_bracket(q, &contract(q, u, i, j).map_err(|e| e.to_string())?, v);
        wheel_mismatch(q, &what, &lhs, &contract(q, &uv, i, j).map_err(|e| e.to_string())?)?;
    }
    if i < n && j < n {
        let lhs = wheeled_bracket(q, u, &contract(q, v, i, j).map_err(|e| e.to_string())?);
        wheel_mismatch(q, &what, &lhs, &contract(q, &uv, m + i, m + j).map_err(|e| e.to_string())?)?;
    }
    Ok(())
}
