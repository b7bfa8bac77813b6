use ncw_core::{Grade, Permutation, Quiver, Scalar};
use ncw_wheel::{wheel_act, wheel_product, WheelElementOver};

use crate::error::DiffOpError;
use crate::op::{apply_op, swap_front, WheeledDiffOpOver};

/// An operator given as a function, with the wheel degree it adds and its
/// parity. Used for principal symbols of operators that are not stored in
/// normal form, such as the BV operator of a connection.
pub struct OpFn<'a, S: Scalar> {
    pub shift: usize,
    pub grade: Grade,
    pub f: &'a dyn Fn(&WheelElementOver<S>) -> WheelElementOver<S>,
}

fn homogeneous<S: Scalar>(q: &Quiver, a: &WheelElementOver<S>) -> Result<(usize, Grade), DiffOpError> {
    if a.is_zero() {
        return Ok((0, Grade::EVEN));
    }
    let shape = |why: &str| DiffOpError::Shape(format!("{why}: {}", a.render(q)));
    let d = match a.degrees().as_slice() {
        [d] => *d,
        _ => return Err(shape("argument needs a single wheel degree")),
    };
    let g = a.grade(q).ok_or_else(|| shape("argument needs a single grade"))?;
    Ok((d, g))
}

/// `[⋯[[D, λ_{a_1}], λ_{a_2}], ⋯, λ_{a_k}](u)`. Each commutator is
/// `X ∘ λ_a − (−1)^{|X||a|} λ_a ∘ X`, the second composite relabelled so that
/// the slots of `X` come before those of `a`.
pub fn iterated_commutator<S: Scalar>(
    q: &Quiver,
    op: &OpFn<S>,
    args: &[WheelElementOver<S>],
    u: &WheelElementOver<S>,
) -> Result<WheelElementOver<S>, DiffOpError> {
    let shapes = args.iter().map(|a| homogeneous(q, a)).collect::<Result<Vec<_>, _>>()?;
    Ok(nested(q, op, args, &shapes, u))
}

fn nested<S: Scalar>(
    q: &Quiver,
    op: &OpFn<S>,
    args: &[WheelElementOver<S>],
    shapes: &[(usize, Grade)],
    u: &WheelElementOver<S>,
) -> WheelElementOver<S> {
    let Some((a, rest)) = args.split_last() else {
        return (op.f)(u);
    };
    let inner = &shapes[..rest.len()];
    let (da, ga) = shapes[rest.len()];
    let shift = op.shift + inner.iter().map(|s| s.0).sum::<usize>();
    let grade = inner.iter().fold(op.grade, |g, s| g + s.1);
    let first = nested(q, op, rest, inner, &wheel_product(q, a, u));
    let second = swap_front(q, &wheel_product(q, a, &nested(q, op, rest, inner, u)), da, shift);
    &first - &second.scale(&S::sign(grade.clashes(ga)))
}

/// `Γ_n(D)(a_1, …, a_n)`, the iterated commutator evaluated at 1.
pub fn principal_symbol_fn<S: Scalar>(q: &Quiver, op: &OpFn<S>, args: &[WheelElementOver<S>]) -> Result<WheelElementOver<S>, DiffOpError> {
    iterated_commutator(q, op, args, &WheelElementOver::one())
}

/// `Γ_n(D)(a_1, …, a_n)` for a normal-ordered operator acting on F(A).
pub fn principal_symbol<S: Scalar>(
    q: &Quiver,
    d: &WheeledDiffOpOver<S>,
    args: &[WheelElementOver<S>],
) -> Result<WheelElementOver<S>, DiffOpError> {
    let f = |u: &WheelElementOver<S>| apply_op(q, d, u);
    let op = OpFn { shift: d.degree()?, grade: Grade::default(), f: &f };
    principal_symbol_fn(q, &op, args)
}

/// The stored form of `Γ_n(D)`: the terms of `D` with exactly `n`
/// annihilators. It vanishes exactly when `D` has order below `n`.
pub fn symbol_data<S: Scalar>(q: &Quiver, d: &WheeledDiffOpOver<S>, n: usize) -> WheelElementOver<S> {
    d.order_part(q, n).symbol().clone()
}

/// The expanded form `Σ_I (−1)^{n−|I|} ± a_{I^c} D(a_I)`, relabelled to the
/// slot order `D, a_1, …, a_n`. The factors outside `D` stand in decreasing
/// order, and `a_k` carries the Koszul sign of passing `D, a_1, …, a_{k−1}`.
pub fn principal_symbol_closed<S: Scalar>(
    q: &Quiver,
    op: &OpFn<S>,
    args: &[WheelElementOver<S>],
) -> Result<WheelElementOver<S>, DiffOpError> {
    let shapes = args.iter().map(|a| homogeneous(q, a)).collect::<Result<Vec<_>, _>>()?;
    let n = args.len();
    let mut out = WheelElementOver::zero();
    for mask in 0u32..(1 << n) {
        let inside: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
        let outside: Vec<usize> = (0..n).rev().filter(|k| mask >> k & 1 == 0).collect();
        let prod = |ks: &[usize]| ks.iter().fold(WheelElementOver::one(), |acc, &k| wheel_product(q, &acc, &args[k]));
        let value = wheel_product(q, &prod(&outside), &(op.f)(&prod(&inside)));
        let mut images: Vec<u32> = outside.iter().map(|&k| k as u32 + 1).collect();
        images.push(0);
        images.extend(inside.iter().map(|&k| k as u32 + 1));
        let mut sizes: Vec<usize> = outside.iter().map(|&k| shapes[k].0).collect();
        sizes.push(op.shift);
        sizes.extend(inside.iter().map(|&k| shapes[k].0));
        let p = Permutation::from_images(images).expect("permutation").blocks(&sizes).expect("block sizes");
        let mut neg = outside.len() % 2 == 1;
        for &k in &outside {
            let passed = shapes[..k].iter().fold(op.grade, |g, s| g + s.1);
            neg ^= shapes[k].1.clashes(passed);
        }
        let moved = wheel_act(q, &p, &p, &value).map_err(|e| DiffOpError::Shape(e.to_string()))?;
        out.add_scaled(&S::sign(neg), &moved);
    }
    Ok(out)
}
