use ncw_core::{Quiver, VertexId};

use crate::error::RepError;

/// A dimension `d_v ≥ 1` for every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimVector {
    dims: Vec<usize>,
}

impl DimVector {
    pub fn new(q: &Quiver, dims: Vec<usize>) -> Result<Self, RepError> {
        if dims.len() != q.vertex_count() {
            return Err(RepError::BadDim(format!("{} entries for {} vertices", dims.len(), q.vertex_count())));
        }
        if dims.contains(&0) {
            return Err(RepError::BadDim("dimensions must be positive".into()));
        }
        Ok(DimVector { dims })
    }

    /// The same dimension at every vertex.
    pub fn uniform(q: &Quiver, d: usize) -> Result<Self, RepError> {
        Self::new(q, vec![d; q.vertex_count()])
    }

    /// Parses `v=2,w=3`; a bare number applies to every vertex.
    pub fn parse(q: &Quiver, text: &str) -> Result<Self, RepError> {
        let text = text.trim();
        if let Ok(d) = text.parse::<usize>() {
            return Self::uniform(q, d);
        }
        let mut dims = vec![None; q.vertex_count()];
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = item.split_once('=').ok_or_else(|| RepError::BadDim(format!("expected name=dim, got {item:?}")))?;
            let v = q.vertex(name.trim()).ok_or_else(|| RepError::BadDim(format!("unknown vertex {:?}", name.trim())))?;
            let d = value.trim().parse::<usize>().map_err(|_| RepError::BadDim(format!("bad dimension {:?}", value.trim())))?;
            dims[v as usize] = Some(d);
        }
        let dims = dims
            .into_iter()
            .enumerate()
            .map(|(v, d)| d.ok_or_else(|| RepError::BadDim(format!("no dimension for vertex {}", q.vertex_name(v as VertexId)))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(q, dims)
    }

    pub fn at(&self, v: VertexId) -> usize {
        self.dims[v as usize]
    }

    /// `Σ_e d_{head(e)} d_{tail(e)}` over base arrows.
    pub fn rep_dimension(&self, q: &Quiver) -> usize {
        q.base_arrows().map(|e| self.at(q.head(e)) * self.at(q.tail(e))).sum()
    }
}
