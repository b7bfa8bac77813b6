use ncw_core::{Quiver, Scalar};

use crate::error::RepError;
use crate::poly::SuperPolyOver;

/// Dense matrix with polynomial entries, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixOver<S: Scalar> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<SuperPolyOver<S>>,
}

impl<S: Scalar> MatrixOver<S> {
    pub fn from_fn<F: FnMut(usize, usize) -> SuperPolyOver<S>>(rows: usize, cols: usize, mut f: F) -> Self {
        let data = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        MatrixOver { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { SuperPolyOver::one() } else { SuperPolyOver::zero() })
    }

    /// Constant matrix from rows of scalars.
    pub fn from_rows(rows: &[Vec<S>]) -> Result<Self, RepError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(RepError::Shape("ragged rows".into()));
        }
        Ok(Self::from_fn(rows.len(), cols, |i, j| SuperPolyOver::constant(rows[i][j].clone())))
    }

    pub fn get(&self, i: usize, j: usize) -> &SuperPolyOver<S> {
        &self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RepError> {
        if self.cols != other.rows {
            return Err(RepError::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = SuperPolyOver::zero();
            for k in 0..self.cols {
                acc = &acc + &(self.get(i, k) * other.get(k, j));
            }
            acc
        }))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).scale(c))
    }

    pub fn trace(&self) -> Result<SuperPolyOver<S>, RepError> {
        if self.rows != self.cols {
            return Err(RepError::Shape(format!("trace of a {}x{} matrix", self.rows, self.cols)));
        }
        let mut acc = SuperPolyOver::zero();
        for i in 0..self.rows {
            acc = &acc + self.get(i, i);
        }
        Ok(acc)
    }

    /// Scalar entries, if every entry is constant.
    pub fn to_scalars(&self) -> Option<Vec<Vec<S>>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).as_constant()).collect()).collect()
    }

    pub fn render(&self, q: &Quiver) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = (0..self.cols).map(|j| self.get(i, j).render(q)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}
