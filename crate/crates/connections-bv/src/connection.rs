use std::collections::BTreeMap;

use ncw_core::{parse_scalar, ArrowId, NcPolyOver, Path, Quiver, Scalar, Stratum};
use serde_json::{json, Value};

use crate::error::BvError;

/// A bimodule connection on Der(P_Q), stored by its values on the free
/// generators `∂_e = e*`. Left values are words `a de' b f* c` (diff before
/// star), right values `a f* b de' c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionOver<S: Scalar> {
    left: BTreeMap<ArrowId, NcPolyOver<S>>,
    right: BTreeMap<ArrowId, NcPolyOver<S>>,
}

impl<S: Scalar> Default for ConnectionOver<S> {
    fn default() -> Self {
        ConnectionOver { left: BTreeMap::new(), right: BTreeMap::new() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn arrow_name(q: &Quiver, e: ArrowId) -> String {
    q.arrow(e).name.clone()
}

/// Checks one stored word: one star, one diff, the endpoints of `e*`, and
/// diff/star order matching `side`.
fn check_word(q: &Quiver, e: ArrowId, side: Side, w: &Path) -> Result<(), BvError> {
    let bad = |reason: String| BvError::BadValue { arrow: arrow_name(q, e), reason };
    let star = q.star_of(e).ok_or_else(|| bad("quiver is not doubled".into()))?;
    let stars: Vec<usize> = (0..w.len()).filter(|&i| q.stratum(w.arrows[i]) == Stratum::Star).collect();
    let diffs: Vec<usize> = (0..w.len()).filter(|&i| q.stratum(w.arrows[i]) == Stratum::Diff).collect();
    let ([s], [d]) = (stars.as_slice(), diffs.as_slice()) else {
        return Err(bad(format!("{} needs exactly one star and one diff arrow", w.render(q))));
    };
    if w.tail != q.tail(star) || w.head != q.head(star) {
        return Err(bad(format!("{} does not have the endpoints of {}", w.render(q), arrow_name(q, star))));
    }
    let ok = match side {
        Side::Left => d < s,
        Side::Right => s < d,
    };
    if !ok {
        return Err(bad(format!("{} has the diff on the wrong side of the star", w.render(q))));
    }
    Ok(())
}

/// Parses `[coeff [*]] word`, e.g. `dx x*`, `-1/2 * x* dx`, `-dx x*`.
pub fn parse_value_term<S: Scalar>(q: &Quiver, text: &str) -> Result<NcPolyOver<S>, BvError> {
    let mut t = text.trim();
    let mut coeff = S::one();
    if let Some(rest) = t.strip_prefix('-') {
        coeff = -coeff;
        t = rest.trim_start();
    }
    let mut words = t.split_whitespace().peekable();
    if let Some(first) = words.peek().copied() {
        if let Some(c) = parse_scalar::<S>(first) {
            coeff = coeff * c;
            words.next();
            if words.peek() == Some(&"*") {
                words.next();
            }
        }
    }
    let rest: Vec<&str> = words.collect();
    let path = Path::parse(q, &rest.join(" "))?;
    Ok(NcPolyOver::term(coeff, path))
}

impl<S: Scalar> ConnectionOver<S> {
    /// The trivial connection, `∇(e*) = 0`.
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.left.values().chain(self.right.values()).all(|v| v.is_zero())
    }

    pub fn get(&self, side: Side, e: ArrowId) -> NcPolyOver<S> {
        let map = match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        };
        map.get(&e).cloned().unwrap_or_default()
    }

    /// `∇(∂_e) = ∇_ℓ(∂_e) + ∇_r(∂_e)`.
    pub fn value(&self, e: ArrowId) -> NcPolyOver<S> {
        &self.get(Side::Left, e) + &self.get(Side::Right, e)
    }

    /// Adds to a stored value after validating every word.
    pub fn add(&mut self, q: &Quiver, side: Side, e: ArrowId, value: &NcPolyOver<S>) -> Result<(), BvError> {
        if !q.is_base(e) {
            return Err(BvError::BadConnection(format!("{} is not a base arrow", arrow_name(q, e))));
        }
        for (w, _) in value.terms() {
            check_word(q, e, side, w)?;
        }
        let map = match side {
            Side::Left => &mut self.left,
            Side::Right => &mut self.right,
        };
        let slot = map.entry(e).or_default();
        *slot = &*slot + value;
        Ok(())
    }

    pub fn from_json(q: &Quiver, text: &str) -> Result<Self, BvError> {
        Self::from_json_with(q, text, |s| parse_value_term(q, s))
    }

    /// Reads `{"arrow": "x", "left": [...], "right": [...]}` or a list of such
    /// objects; each string is parsed by `parse`.
    pub fn from_json_with<F>(q: &Quiver, text: &str, mut parse: F) -> Result<Self, BvError>
    where
        F: FnMut(&str) -> Result<NcPolyOver<S>, BvError>,
    {
        let v: Value = serde_json::from_str(text).map_err(|e| BvError::BadConnection(e.to_string()))?;
        let entries = match v {
            Value::Array(items) => items,
            obj @ Value::Object(_) => vec![obj],
            _ => return Err(BvError::BadConnection("expected an object or a list of objects".into())),
        };
        let mut conn = Self::trivial();
        for entry in entries {
            let name =
                entry.get("arrow").and_then(Value::as_str).ok_or_else(|| BvError::BadConnection("entry without \"arrow\"".into()))?;
            let e = q.arrow_id(name).ok_or_else(|| BvError::BadConnection(format!("unknown arrow {name:?}")))?;
            if !q.is_base(e) {
                return Err(BvError::BadConnection(format!("{name} is not a base arrow")));
            }
            for (key, side) in [("left", Side::Left), ("right", Side::Right)] {
                let Some(items) = entry.get(key) else { continue };
                let items = items.as_array().ok_or_else(|| BvError::BadConnection(format!("\"{key}\" must be a list")))?;
                for item in items {
                    let s = item.as_str().ok_or_else(|| BvError::BadConnection(format!("\"{key}\" entries must be strings")))?;
                    conn.add(q, side, e, &parse(s)?)?;
                }
            }
        }
        Ok(conn)
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        let render = |p: &NcPolyOver<S>| -> Vec<String> { p.terms().map(|(w, c)| format!("{} * {}", c, w.render(q))).collect() };
        let arrows: Vec<ArrowId> = q.base_arrows().collect();
        Value::Array(
            arrows
                .into_iter()
                .filter(|e| !self.value(*e).is_zero())
                .map(|e| json!({"arrow": arrow_name(q, e), "left": render(&self.get(Side::Left, e)), "right": render(&self.get(Side::Right, e))}))
                .collect(),
        )
    }

    /// Adds values cancelling the torsion: a left word `x dβ y g* z` of `∂_α`
    /// is matched by the right word `y g* z dα x` of `∂_β`, and a right word
    /// `x h* y dβ z` of `∂_α` by the left word `z dα x h* y` of `∂_β`.
    pub fn torsion_free_completion(&self, q: &Quiver) -> Self {
        let mut out = self.clone();
        for (side, map) in [(Side::Left, &self.left), (Side::Right, &self.right)] {
            for (&alpha, value) in map {
                for (w, c) in value.terms() {
                    let d = (0..w.len()).find(|&i| q.stratum(w.arrows[i]) == Stratum::Diff).expect("validated");
                    let beta = q.base_of(w.arrows[d]);
                    let mut word = w.arrows[d + 1..].to_vec();
                    word.push(q.diff_of(alpha).expect("validated words need Ω"));
                    word.extend_from_slice(&w.arrows[..d]);
                    let other = match side {
                        Side::Left => Side::Right,
                        Side::Right => Side::Left,
                    };
                    let p = Path::new(q, word).expect("compensator is composable");
                    out.add(q, other, beta, &NcPolyOver::term(c.clone(), p)).expect("compensator is valid");
                }
            }
        }
        out
    }
}
