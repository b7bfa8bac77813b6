use std::collections::HashMap;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;

pub type VertexId = u32;
pub type ArrowId = u32;

/// Bigrading reduced mod 2: bit 0 is the star degree, bit 1 the diff degree.
/// Swapping two homogeneous objects costs (-1)^{ac+bd}.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Grade(pub u8);

impl Grade {
    pub const EVEN: Grade = Grade(0);
    pub const STAR: Grade = Grade(1);
    pub const DIFF: Grade = Grade(2);

    /// True when swapping `self` past `other` produces a minus sign.
    pub fn clashes(self, other: Grade) -> bool {
        (self.0 & other.0).count_ones() % 2 == 1
    }

    /// Odd objects square to zero in a supersymmetric algebra.
    pub fn is_odd(self) -> bool {
        self.clashes(self)
    }

    pub fn star_bit(self) -> u8 {
        self.0 & 1
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Grade {
    type Output = Grade;
    fn add(self, o: Grade) -> Grade {
        Grade(self.0 ^ o.0)
    }
}

impl std::iter::Sum for Grade {
    fn sum<I: Iterator<Item = Grade>>(iter: I) -> Grade {
        iter.fold(Grade::EVEN, |a, b| a + b)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stratum {
    Base,
    Star,
    Diff,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arrow {
    pub name: String,
    pub tail: VertexId,
    pub head: VertexId,
    pub stratum: Stratum,
    /// The base arrow this arrow was derived from (itself for base arrows).
    pub base: ArrowId,
    pub grade: Grade,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub tail: String,
    pub head: String,
}

fn yes() -> bool {
    true
}

fn one() -> u8 {
    1
}

/// JSON quiver description.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default = "yes")]
    pub double: bool,
    #[serde(default = "one")]
    pub star_parity: u8,
    #[serde(default = "yes")]
    pub omega: bool,
}

/// A quiver with its (optional) doubling and Omega-extension. Arrow ids are
/// ordered base arrows first, then stars, then diffs; this is also the total
/// order used for canonical cyclic rotations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    star_parity: u8,
    doubled: bool,
    omega: bool,
    n_base: usize,
    by_name: HashMap<String, ArrowId>,
    vertex_by_name: HashMap<String, VertexId>,
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Quiver {
    pub fn from_spec(spec: &QuiverSpec) -> Result<Quiver, CoreError> {
        let arrows: Vec<(&str, &str, &str)> = spec.arrows.iter().map(|a| (a.name.as_str(), a.tail.as_str(), a.head.as_str())).collect();
        let verts: Vec<&str> = spec.vertices.iter().map(|s| s.as_str()).collect();
        Quiver::build(&verts, &arrows, spec.double, spec.star_parity, spec.omega)
    }

    pub fn from_json(text: &str) -> Result<Quiver, CoreError> {
        let spec: QuiverSpec = serde_json::from_str(text).map_err(|e| CoreError::BadSpec(e.to_string()))?;
        Quiver::from_spec(&spec)
    }

    /// Doubled and Omega-extended quiver with the given star parity.
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)], star_parity: u8) -> Result<Quiver, CoreError> {
        Quiver::build(vertices, arrows, true, star_parity, true)
    }

    pub fn build(
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        double: bool,
        star_parity: u8,
        omega: bool,
    ) -> Result<Quiver, CoreError> {
        if star_parity > 1 {
            return Err(CoreError::BadSpec(format!("star_parity must be 0 or 1, got {star_parity}")));
        }
        if vertices.is_empty() {
            return Err(CoreError::BadSpec("quiver has no vertices".into()));
        }
        let mut vertex_by_name = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if !valid_ident(v) {
                return Err(CoreError::BadSpec(format!("bad vertex name {v:?}")));
            }
            if vertex_by_name.insert(v.to_string(), i as VertexId).is_some() {
                return Err(CoreError::BadSpec(format!("duplicate vertex {v:?}")));
            }
        }
        let vid = |name: &str| vertex_by_name.get(name).copied().ok_or_else(|| CoreError::UnknownVertex(name.to_string()));
        let mut q = Quiver {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: Vec::new(),
            star_parity,
            doubled: double,
            omega,
            n_base: arrows.len(),
            by_name: HashMap::new(),
            vertex_by_name: vertex_by_name.clone(),
        };
        for (i, (name, t, h)) in arrows.iter().enumerate() {
            if !valid_ident(name) {
                return Err(CoreError::BadSpec(format!("bad arrow name {name:?}")));
            }
            if name.starts_with('d') && name.len() > 1 && arrows.iter().any(|a| a.0 == &name[1..]) {
                return Err(CoreError::BadSpec(format!("arrow name {name:?} collides with a diff arrow")));
            }
            q.arrows.push(Arrow {
                name: name.to_string(),
                tail: vid(t)?,
                head: vid(h)?,
                stratum: Stratum::Base,
                base: i as ArrowId,
                grade: Grade::EVEN,
            });
        }
        let n = arrows.len();
        if double {
            for i in 0..n {
                let a = q.arrows[i].clone();
                q.arrows.push(Arrow {
                    name: format!("{}*", a.name),
                    tail: a.head,
                    head: a.tail,
                    stratum: Stratum::Star,
                    base: i as ArrowId,
                    grade: if star_parity == 1 { Grade::STAR } else { Grade::EVEN },
                });
            }
        }
        if omega {
            for i in 0..n {
                let a = q.arrows[i].clone();
                q.arrows.push(Arrow {
                    name: format!("d{}", a.name),
                    tail: a.tail,
                    head: a.head,
                    stratum: Stratum::Diff,
                    base: i as ArrowId,
                    grade: Grade::DIFF,
                });
            }
        }
        for (i, a) in q.arrows.iter().enumerate() {
            if q.by_name.insert(a.name.clone(), i as ArrowId).is_some() {
                return Err(CoreError::BadSpec(format!("duplicate arrow {:?}", a.name)));
            }
        }
        Ok(q)
    }

    /// One vertex `v` with loops named as given.
    pub fn loops(names: &[&str], star_parity: u8) -> Quiver {
        let arrows: Vec<(&str, &str, &str)> = names.iter().map(|n| (*n, "v", "v")).collect();
        Quiver::new(&["v"], &arrows, star_parity).expect("valid loop quiver")
    }

    pub fn star_parity(&self) -> u8 {
        self.star_parity
    }

    pub fn is_doubled(&self) -> bool {
        self.doubled
    }

    pub fn has_omega(&self) -> bool {
        self.omega
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v as usize]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_by_name.get(name).copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.vertices.len() as VertexId
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a as usize]
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.by_name.get(name).copied()
    }

    pub fn grade(&self, a: ArrowId) -> Grade {
        self.arrows[a as usize].grade
    }

    pub fn base_arrows(&self) -> impl Iterator<Item = ArrowId> {
        0..self.n_base as ArrowId
    }

    pub fn base_count(&self) -> usize {
        self.n_base
    }

    pub fn stratum(&self, a: ArrowId) -> Stratum {
        self.arrows[a as usize].stratum
    }

    pub fn is_base(&self, a: ArrowId) -> bool {
        (a as usize) < self.n_base
    }

    pub fn star_of(&self, e: ArrowId) -> Option<ArrowId> {
        if self.doubled && self.is_base(e) {
            Some(e + self.n_base as ArrowId)
        } else {
            None
        }
    }

    pub fn diff_of(&self, e: ArrowId) -> Option<ArrowId> {
        if !self.omega || !self.is_base(e) {
            return None;
        }
        let offset = if self.doubled { 2 } else { 1 };
        Some(e + (offset * self.n_base) as ArrowId)
    }

    pub fn base_of(&self, a: ArrowId) -> ArrowId {
        self.arrows[a as usize].base
    }

    pub fn tail(&self, a: ArrowId) -> VertexId {
        self.arrows[a as usize].tail
    }

    pub fn head(&self, a: ArrowId) -> VertexId {
        self.arrows[a as usize].head
    }

    /// (number of star arrows, -number of diff arrows) of a word.
    pub fn bidegree(&self, arrows: &[ArrowId]) -> (i32, i32) {
        let mut b = (0, 0);
        for &a in arrows {
            match self.stratum(a) {
                Stratum::Star => b.0 += 1,
                Stratum::Diff => b.1 -= 1,
                Stratum::Base => {}
            }
        }
        b
    }

    pub fn word_grade(&self, arrows: &[ArrowId]) -> Grade {
        arrows.iter().map(|&a| self.grade(a)).sum()
    }

    pub fn spec(&self) -> QuiverSpec {
        QuiverSpec {
            vertices: self.vertices.clone(),
            arrows: self
                .base_arrows()
                .map(|a| ArrowSpec {
                    name: self.arrow(a).name.clone(),
                    tail: self.vertex_name(self.tail(a)).to_string(),
                    head: self.vertex_name(self.head(a)).to_string(),
                })
                .collect(),
            double: self.doubled,
            star_parity: self.star_parity,
            omega: self.omega,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_reverses_and_extension_parallels() {
        let q = Quiver::new(&["v", "w"], &[("a", "v", "w")], 1).unwrap();
        let a = q.arrow_id("a").unwrap();
        let s = q.arrow_id("a*").unwrap();
        let d = q.arrow_id("da").unwrap();
        assert_eq!(q.star_of(a), Some(s));
        assert_eq!(q.diff_of(a), Some(d));
        assert_eq!((q.tail(s), q.head(s)), (q.head(a), q.tail(a)));
        assert_eq!((q.tail(d), q.head(d)), (q.tail(a), q.head(a)));
        assert_eq!(q.grade(s), Grade::STAR);
        assert_eq!(q.grade(d), Grade::DIFF);
        assert_eq!(q.bidegree(&[a, s, d]), (1, -1));
    }

    #[test]
    fn even_regime_stars_are_even() {
        let q = Quiver::loops(&["x"], 0);
        assert_eq!(q.grade(q.arrow_id("x*").unwrap()), Grade::EVEN);
    }

    #[test]
    fn sign_rule_is_bilinear() {
        assert!(Grade::STAR.clashes(Grade::STAR));
        assert!(!Grade::STAR.clashes(Grade::DIFF));
        assert!(!Grade(3).is_odd());
        assert!(Grade::DIFF.is_odd());
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(Quiver::new(&["v"], &[("x", "v", "w")], 1).is_err());
        assert!(Quiver::new(&["v"], &[("x", "v", "v"), ("x", "v", "v")], 1).is_err());
        assert!(Quiver::new(&["v"], &[("x", "v", "v"), ("dx", "v", "v")], 1).is_err());
        assert!(Quiver::new(&["v"], &[("x", "v", "v")], 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"vertices":["v","w"],"arrows":[{"name":"a","tail":"v","head":"w"}],"double":true,"star_parity":0,"omega":false}"#;
        let q = Quiver::from_json(text).unwrap();
        assert!(q.arrow_id("a*").is_some());
        assert!(q.arrow_id("da").is_none());
        let again = Quiver::from_spec(&q.spec()).unwrap();
        assert_eq!(q, again);
    }
}
