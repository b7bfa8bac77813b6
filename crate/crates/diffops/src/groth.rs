use std::collections::BTreeMap;

use ncw_core::{ArrowId, NcPolyOver, Path, Quiver, Scalar};

use crate::error::DiffOpError;

/// An ordinary derivation of the tensor algebra on the loops of a
/// one-vertex quiver, given by its values on generators (zero elsewhere).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DerivationOver<S: Scalar> {
    values: BTreeMap<ArrowId, NcPolyOver<S>>,
}

impl<S: Scalar> DerivationOver<S> {
    pub fn new() -> Self {
        DerivationOver { values: BTreeMap::new() }
    }

    pub fn with(mut self, x: ArrowId, value: NcPolyOver<S>) -> Self {
        self.values.insert(x, value);
        self
    }

    pub fn on(&self, x: ArrowId) -> NcPolyOver<S> {
        self.values.get(&x).cloned().unwrap_or_default()
    }

    /// The usual Leibniz action on a word.
    pub fn apply(&self, q: &Quiver, w: &Path) -> Result<NcPolyOver<S>, DiffOpError> {
        groth2_apply(q, std::slice::from_ref(self), w)
    }
}

/// `(D_1 ⊗ ⋯ ⊗ D_m)(x_1 ⋯ x_p) = Σ_{i_1<⋯<i_m} x_1 ⋯ D_1(x_{i_1}) ⋯ D_m(x_{i_m}) ⋯ x_p`.
pub fn groth2_apply<S: Scalar>(q: &Quiver, ds: &[DerivationOver<S>], w: &Path) -> Result<NcPolyOver<S>, DiffOpError> {
    if q.vertex_count() != 1 {
        return Err(DiffOpError::Shape("ordered derivation products need a one-vertex quiver".into()));
    }
    let letter = |a: ArrowId| NcPolyOver::from_path(Path::arrow(q, a));
    let mut out = NcPolyOver::zero();
    let mut picks = Vec::with_capacity(ds.len());
    choose(w.len(), ds.len(), 0, &mut picks, &mut |picks: &[usize]| {
        let mut acc = NcPolyOver::from_path(Path::trivial(w.tail));
        let mut next = 0;
        for (i, &a) in w.arrows.iter().enumerate() {
            let f = if next < picks.len() && picks[next] == i {
                next += 1;
                ds[next - 1].on(a)
            } else {
                letter(a)
            };
            acc = acc.mul(&f);
        }
        out = &out + &acc;
    });
    Ok(out)
}

fn choose<F: FnMut(&[usize])>(p: usize, m: usize, from: usize, picks: &mut Vec<usize>, emit: &mut F) {
    if picks.len() == m {
        emit(picks);
        return;
    }
    for i in from..p {
        picks.push(i);
        choose(p, m, i + 1, picks, emit);
        picks.pop();
    }
}
