use std::collections::BTreeMap;

use ncw_core::{ArrowId, Path, Quiver, Scalar, Stratum};
use ncw_wheel::{WheelElementOver, WheelTerm};

use crate::dim::DimVector;
use crate::error::RepError;
use crate::matrix::MatrixOver;
use crate::poly::{SuperPolyOver, Var};

/// Where arrow matrices come from: generic coordinates or fixed numbers.
///
/// Matrices are `d_tail × d_head`, so a path evaluates to the product of its
/// arrow matrices in reading order.
#[derive(Clone, Debug)]
pub enum RepPointOver<S: Scalar> {
    Generic(DimVector),
    Numeric { dims: DimVector, mats: BTreeMap<ArrowId, MatrixOver<S>> },
}

impl<S: Scalar> RepPointOver<S> {
    pub fn generic(dims: DimVector) -> Self {
        RepPointOver::Generic(dims)
    }

    /// A numeric point; dimensions are read off the matrices and must agree
    /// at every vertex.
    pub fn numeric(q: &Quiver, mats: BTreeMap<ArrowId, Vec<Vec<S>>>) -> Result<Self, RepError> {
        let mut dims = vec![None; q.vertex_count()];
        let mut fix = |v: u32, d: usize, name: &str| -> Result<(), RepError> {
            match dims[v as usize] {
                Some(old) if old != d => {
                    Err(RepError::Shape(format!("arrow {name} needs dimension {d} at {}, already {old}", q.vertex_name(v))))
                }
                _ => {
                    dims[v as usize] = Some(d);
                    Ok(())
                }
            }
        };
        let mut out = BTreeMap::new();
        for (a, rows) in mats {
            if q.stratum(a) == Stratum::Diff {
                return Err(RepError::DiffArrow(q.arrow(a).name.clone()));
            }
            let m = MatrixOver::from_rows(&rows)?;
            let name = &q.arrow(a).name;
            fix(q.tail(a), m.rows, name)?;
            fix(q.head(a), m.cols, name)?;
            out.insert(a, m);
        }
        let dims = dims.into_iter().map(|d| d.unwrap_or(1)).collect();
        Ok(RepPointOver::Numeric { dims: DimVector::new(q, dims)?, mats: out })
    }

    pub fn dims(&self) -> &DimVector {
        match self {
            RepPointOver::Generic(d) => d,
            RepPointOver::Numeric { dims, .. } => dims,
        }
    }

    /// The matrix of one arrow. Star arrows carry a minus sign, so that the
    /// trace bracket matches the necklace bracket.
    pub fn arrow_matrix(&self, q: &Quiver, a: ArrowId) -> Result<MatrixOver<S>, RepError> {
        let stratum = q.stratum(a);
        if stratum == Stratum::Diff {
            return Err(RepError::DiffArrow(q.arrow(a).name.clone()));
        }
        match self {
            RepPointOver::Generic(dims) => {
                let odd = q.grade(a).is_odd();
                let m = MatrixOver::from_fn(dims.at(q.tail(a)), dims.at(q.head(a)), |i, j| SuperPolyOver::var(Var { arrow: a, i, j, odd }));
                Ok(if stratum == Stratum::Star { m.scale(&-S::one()) } else { m })
            }
            RepPointOver::Numeric { dims, mats } => match mats.get(&a) {
                Some(m) => Ok(m.clone()),
                None => Ok(MatrixOver::from_fn(dims.at(q.tail(a)), dims.at(q.head(a)), |_, _| SuperPolyOver::zero())),
            },
        }
    }
}

/// Ordered product of arrow matrices; the trivial path gives the identity.
pub fn ev_path<S: Scalar>(q: &Quiver, point: &RepPointOver<S>, p: &Path) -> Result<MatrixOver<S>, RepError> {
    let mut m = MatrixOver::identity(point.dims().at(p.tail));
    for &a in &p.arrows {
        m = m.mul(&point.arrow_matrix(q, a)?)?;
    }
    Ok(m)
}

/// Value of a degree-m wheel element: a tensor in `End(V)^{⊗m}` with
/// `V = ⊕_v V_v` and polynomial entries. Indices are global, vertex blocks
/// in vertex order. Entries are keyed by (input indices, output indices).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WheelValueOver<S: Scalar> {
    pub degree: usize,
    /// `dim V`.
    pub size: usize,
    entries: BTreeMap<(Vec<usize>, Vec<usize>), SuperPolyOver<S>>,
}

impl<S: Scalar> WheelValueOver<S> {
    pub fn zero(degree: usize, size: usize) -> Self {
        WheelValueOver { degree, size, entries: BTreeMap::new() }
    }

    pub fn scalar(size: usize, p: SuperPolyOver<S>) -> Self {
        let mut out = Self::zero(0, size);
        out.add_entry((Vec::new(), Vec::new()), p);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, inputs: &[usize], outputs: &[usize]) -> SuperPolyOver<S> {
        self.entries.get(&(inputs.to_vec(), outputs.to_vec())).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Vec<usize>, Vec<usize>), &SuperPolyOver<S>)> {
        self.entries.iter()
    }

    /// The polynomial of a degree-0 value.
    pub fn as_poly(&self) -> Option<SuperPolyOver<S>> {
        (self.degree == 0).then(|| self.entry(&[], &[]))
    }

    /// The matrix of a degree-1 value, rows indexed by the input slot.
    pub fn as_matrix(&self) -> Option<MatrixOver<S>> {
        (self.degree == 1).then(|| MatrixOver::from_fn(self.size, self.size, |i, j| self.entry(&[i], &[j])))
    }

    fn add_entry(&mut self, key: (Vec<usize>, Vec<usize>), p: SuperPolyOver<S>) {
        let sum = &self.entries.remove(&key).unwrap_or_default() + &p;
        if !sum.is_zero() {
            self.entries.insert(key, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RepError> {
        if (self.degree, self.size) != (other.degree, other.size) {
            return Err(RepError::Shape("adding values of different shapes".into()));
        }
        let mut out = self.clone();
        for (k, p) in &other.entries {
            out.add_entry(k.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.degree, self.size);
        for (k, p) in &self.entries {
            out.add_entry(k.clone(), p.scale(c));
        }
        out
    }

    /// Tensor product, slots of `self` first.
    pub fn tensor(&self, other: &Self) -> Result<Self, RepError> {
        if self.size != other.size {
            return Err(RepError::Shape("tensoring values over different spaces".into()));
        }
        let mut out = Self::zero(self.degree + other.degree, self.size);
        for ((a, b), p) in &self.entries {
            for ((c, d), r) in &other.entries {
                out.add_entry(([a.clone(), c.clone()].concat(), [b.clone(), d.clone()].concat()), p * r);
            }
        }
        Ok(out)
    }

    /// Trace over output `i` joined to input `j`.
    pub fn contract(&self, i: usize, j: usize) -> Result<Self, RepError> {
        if i >= self.degree || j >= self.degree {
            return Err(RepError::Shape(format!("slots ({i}, {j}) out of range for degree {}", self.degree)));
        }
        let mut out = Self::zero(self.degree - 1, self.size);
        for ((a, b), p) in &self.entries {
            if a[j] == b[i] {
                let (mut a, mut b) = (a.clone(), b.clone());
                a.remove(j);
                b.remove(i);
                out.add_entry((a, b), p.clone());
            }
        }
        Ok(out)
    }
}

fn ev_term<S: Scalar>(
    q: &Quiver,
    point: &RepPointOver<S>,
    t: &WheelTerm,
    offsets: &[usize],
    size: usize,
) -> Result<WheelValueOver<S>, RepError> {
    let m = t.degree();
    let mut partial: Vec<(Vec<usize>, Vec<usize>, SuperPolyOver<S>)> = vec![(vec![0; m], vec![0; m], SuperPolyOver::one())];
    for (k, p) in t.strands.iter().enumerate() {
        let slot = t.perm.apply(k);
        let mat = ev_path(q, point, p)?;
        let (r0, c0) = (offsets[p.tail as usize], offsets[p.head as usize]);
        let mut next = Vec::new();
        for (a, b, f) in &partial {
            for r in 0..mat.rows {
                for c in 0..mat.cols {
                    let e = mat.get(r, c);
                    if e.is_zero() {
                        continue;
                    }
                    let prod = f * e;
                    if prod.is_zero() {
                        continue;
                    }
                    let (mut a, mut b) = (a.clone(), b.clone());
                    a[slot] = r0 + r;
                    b[k] = c0 + c;
                    next.push((a, b, prod));
                }
            }
        }
        partial = next;
    }
    let mut loops = SuperPolyOver::one();
    for c in &t.loops {
        let p = Path { arrows: c.arrows.clone(), tail: c.vertex, head: c.vertex };
        loops = &loops * &ev_path(q, point, &p)?.trace()?;
    }
    let mut out = WheelValueOver::zero(m, size);
    for (a, b, f) in partial {
        out.add_entry((a, b), &f * &loops);
    }
    Ok(out)
}

/// Evaluates a homogeneous wheel element: strands become matrices wired by
/// the slot permutation, loops become traces. Zero evaluates to a degree-0 zero.
pub fn ev_wheel<S: Scalar>(q: &Quiver, point: &RepPointOver<S>, u: &WheelElementOver<S>) -> Result<WheelValueOver<S>, RepError> {
    let degrees = u.degrees();
    if degrees.len() > 1 {
        return Err(RepError::MixedDegree(degrees));
    }
    let dims = point.dims();
    let offsets: Vec<usize> = q
        .vertices()
        .scan(0, |acc, v| {
            let o = *acc;
            *acc += dims.at(v);
            Some(o)
        })
        .collect();
    let size = q.vertices().map(|v| dims.at(v)).sum();
    let mut total = WheelValueOver::zero(degrees.first().copied().unwrap_or(0), size);
    for (t, c) in u.terms() {
        total = total.add(&ev_term(q, point, t, &offsets, size)?.scale(c))?;
    }
    Ok(total)
}
