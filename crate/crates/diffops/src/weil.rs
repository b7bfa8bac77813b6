use ncw_core::{CyclicWord, Path, Quiver, Scalar, Stratum};
use ncw_wheel::{contract, WheelElementOver};

use crate::error::DiffOpError;
use crate::op::{compose_ops, WheeledDiffOpOver};

fn letter<S: Scalar>(q: &Quiver, a: ncw_core::ArrowId) -> WheeledDiffOpOver<S> {
    WheeledDiffOpOver::from_symbol(q, WheelElementOver::from_path(Path::arrow(q, a))).expect("letters are base or star arrows")
}

/// `[a ∘ b]_cyc`: the composite of two letters, its two strands joined and
/// closed into a loop.
fn closed_composite<S: Scalar>(q: &Quiver, a: ncw_core::ArrowId, b: ncw_core::ArrowId) -> WheelElementOver<S> {
    let ab = compose_ops(q, &letter(q, a), &letter(q, b));
    let joined = contract(q, ab.symbol(), 0, 1).expect("composite of letters has degree 2");
    contract(q, &joined, 0, 0).expect("degree 1")
}

/// The image of a quadratic necklace: `[e f]` and `[e* f*]` map to their
/// own normal-ordered loops, and a mixed word is symmetrized,
/// `[e f*] ↦ ½([e ∘ ∂_f]_cyc + [∂_f ∘ e]_cyc)`.
pub fn weil_element<S: Scalar>(q: &Quiver, c: &CyclicWord) -> Result<WheeledDiffOpOver<S>, DiffOpError> {
    let [a, b] = c.arrows.as_slice() else {
        return Err(DiffOpError::NotQuadratic(c.render(q)));
    };
    let (a, b) = (*a, *b);
    if let Some(&d) = [a, b].iter().find(|&&x| q.stratum(x) == Stratum::Diff) {
        return Err(DiffOpError::DiffArrow(q.arrow(d).name.clone()));
    }
    if q.stratum(a) == q.stratum(b) {
        return WheeledDiffOpOver::from_symbol(q, WheelElementOver::from_cyclic_word(c.clone()));
    }
    let sum = &closed_composite::<S>(q, a, b) + &closed_composite(q, b, a);
    let half = S::from_frac(1, 2);
    WheeledDiffOpOver::from_symbol(q, sum.scale(&half))
}
