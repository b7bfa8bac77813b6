//! Expression language for wheel elements and wheeled operators.
//!
//! The grammar is documented in `docs/grammar.md`. Canonical prints of the
//! kernel types parse back to the same value.

use std::fmt;

use ncw_core::{parse_scalar, NcPoly, Path, Permutation, Quiver, Scalar, Q};
use ncw_diffops::{compose_ops, WheeledDiffOp};
use ncw_wheel::{wheel_act, wheel_normalize, wheel_product, WheelElement};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("column {col}: unknown name {name:?}")]
    Unknown { col: usize, name: String },
    #[error("{0}")]
    Type(String),
    #[error("{0}")]
    Kernel(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Plus,
    Minus,
    Star,
    Hash,
    LParen,
    RParen,
    LBrack,
    RBrack,
    LAngle,
    RAngle,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Num(s) => write!(f, "{s:?}"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Hash => write!(f, "'#'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::LBrack => write!(f, "'['"),
            Tok::RBrack => write!(f, "']'"),
            Tok::LAngle => write!(f, "'⟨'"),
            Tok::RAngle => write!(f, "'⟩'"),
            Tok::Comma => write!(f, "','"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

/// Columns are 1-based character positions.
fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            // A star glued to a name is part of it: `x*` is the starred arrow.
            if i < chars.len() && chars[i] == '*' {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            out.push((Tok::Num(chars[start..i].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '#' | '⊗' => Tok::Hash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            '⟨' | '<' => Tok::LAngle,
            '⟩' | '>' => Tok::RAngle,
            ',' => Tok::Comma,
            _ => return Err(ExprError::Syntax { col, msg: format!("unexpected character {c:?}") }),
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

/// A name with the column it was read at. Equality ignores the column.
#[derive(Clone, Debug, Eq)]
pub struct Name {
    pub text: String,
    pub col: usize,
}

impl PartialEq for Name {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(String),
    /// Juxtaposed arrow names: one open strand.
    Path(Vec<Name>),
    /// `[...]`: a cyclic word.
    Cyclic(Vec<Name>),
    /// `(cycles)⟨p, ...⟩`: strands with an output permutation in cycle notation.
    Strands {
        perm: String,
        paths: Vec<Vec<Name>>,
    },
    /// `perm(i, ...) A`: the left action with the given 1-based images.
    Perm {
        images: Vec<usize>,
        arg: Box<Expr>,
    },
    Call {
        func: Func,
        arg: Box<Expr>,
    },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    /// Double derivation `θ_ξ` from a sum of paths with one star each.
    Dd,
    /// Multiplication operator.
    Mul,
    /// Operator with the given normal-ordered symbol.
    Op,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Dd => "dd",
            Func::Mul => "mul",
            Func::Op => "op",
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, msg: String) -> Result<T, ExprError> {
        Err(ExprError::Syntax { col: self.col(), msg })
    }

    fn expect(&mut self, want: Tok, opened: Option<(&str, usize)>) -> Result<(), ExprError> {
        if *self.peek() == want {
            self.bump();
            return Ok(());
        }
        match (opened, self.peek()) {
            (Some((what, col)), Tok::End) => Err(ExprError::Syntax { col, msg: format!("unclosed {what}") }),
            _ => self.fail(format!("expected {want}, found {}", self.peek())),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = match self.peek() {
            Tok::Minus => {
                self.bump();
                Expr::Neg(Box::new(self.term()?))
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Hash => {
                    self.bump();
                    lhs = Expr::Tensor(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn names(&mut self) -> Vec<Name> {
        let mut out = Vec::new();
        while let Tok::Ident(s) = self.peek().clone() {
            if matches!(self.peek_at(1), Tok::LParen) {
                break;
            }
            let col = self.col();
            self.bump();
            out.push(Name { text: s, col });
        }
        out
    }

    /// Cycle-notation prefix of a strand list, if the tokens at the cursor form one.
    fn perm_prefix(&self) -> Option<usize> {
        let mut k = 0;
        loop {
            match self.peek_at(k) {
                Tok::LParen => k += 1,
                Tok::LAngle if k > 0 => return Some(k),
                _ => return None,
            }
            loop {
                match self.peek_at(k) {
                    Tok::Num(s) if !s.contains('/') => k += 1,
                    Tok::Comma => k += 1,
                    Tok::RParen => {
                        k += 1;
                        break;
                    }
                    _ => return None,
                }
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let col = self.col();
        match self.peek().clone() {
            Tok::Num(s) => {
                self.bump();
                Ok(Expr::Num(s))
            }
            Tok::LParen => {
                if let Some(k) = self.perm_prefix() {
                    let mut perm = String::new();
                    for _ in 0..k {
                        let (t, _) = self.bump();
                        perm.push_str(&match t {
                            Tok::Num(s) => s,
                            Tok::LParen => "(".into(),
                            Tok::RParen => ")".into(),
                            _ => ",".into(),
                        });
                    }
                    return self.strands(perm);
                }
                self.bump();
                if *self.peek() == Tok::End {
                    return Err(ExprError::Syntax { col, msg: "unclosed '('".into() });
                }
                let inner = self.expr()?;
                self.expect(Tok::RParen, Some(("'('", col)))?;
                Ok(inner)
            }
            Tok::LAngle => self.strands("()".into()),
            Tok::LBrack => {
                self.bump();
                let names = self.names();
                if names.is_empty() {
                    return self.fail(format!("expected a closed path, found {}", self.peek()));
                }
                self.expect(Tok::RBrack, Some(("'['", col)))?;
                Ok(Expr::Cyclic(names))
            }
            Tok::Ident(s) if matches!(self.peek_at(1), Tok::LParen) => {
                self.bump();
                let open = self.col();
                self.bump();
                if s == "perm" {
                    let mut images = Vec::new();
                    loop {
                        match self.bump() {
                            (Tok::Num(n), c) => {
                                images.push(n.parse().map_err(|_| ExprError::Syntax { col: c, msg: format!("bad index {n}") })?)
                            }
                            (t, c) => return Err(ExprError::Syntax { col: c, msg: format!("expected an index, found {t}") }),
                        }
                        match self.peek() {
                            Tok::Comma => {
                                self.bump();
                            }
                            _ => break,
                        }
                    }
                    self.expect(Tok::RParen, Some(("'('", open)))?;
                    let arg = self.factor()?;
                    return Ok(Expr::Perm { images, arg: Box::new(arg) });
                }
                let func = match s.as_str() {
                    "dd" => Func::Dd,
                    "mul" => Func::Mul,
                    "op" => Func::Op,
                    _ => return Err(ExprError::Syntax { col, msg: format!("unknown function {s:?}") }),
                };
                let arg = self.expr()?;
                self.expect(Tok::RParen, Some(("'('", open)))?;
                Ok(Expr::Call { func, arg: Box::new(arg) })
            }
            Tok::Ident(_) => Ok(Expr::Path(self.names())),
            t => self.fail(format!("unexpected {t}")),
        }
    }

    fn strands(&mut self, perm: String) -> Result<Expr, ExprError> {
        let open = self.col();
        self.expect(Tok::LAngle, None)?;
        let mut paths = Vec::new();
        loop {
            let names = self.names();
            if names.is_empty() {
                return self.fail(format!("expected a path, found {}", self.peek()));
            }
            paths.push(names);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                _ => break,
            }
        }
        self.expect(Tok::RAngle, Some(("'⟨'", open)))?;
        Ok(Expr::Strands { perm, paths })
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(format!("unexpected {}", p.peek()));
    }
    Ok(e)
}

fn join(names: &[Name]) -> String {
    names.iter().map(|n| n.text.as_str()).collect::<Vec<_>>().join(" ")
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Neg(_) => 1,
            Expr::Mul(..) | Expr::Tensor(..) => 2,
            _ => 3,
        }
    }

    fn wrap(&self, min: u8) -> String {
        if self.prec() < min {
            format!("({self})")
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(s) => write!(f, "{s}"),
            Expr::Path(ns) => write!(f, "{}", join(ns)),
            Expr::Cyclic(ns) => write!(f, "[{}]", join(ns)),
            Expr::Strands { perm, paths } => {
                let inner: Vec<String> = paths.iter().map(|p| join(p)).collect();
                write!(f, "{perm}⟨{}⟩", inner.join(", "))
            }
            Expr::Perm { images, arg } => {
                let im: Vec<String> = images.iter().map(usize::to_string).collect();
                write!(f, "perm({}) {}", im.join(", "), arg.wrap(3))
            }
            Expr::Call { func, arg } => write!(f, "{}({arg})", func.name()),
            Expr::Neg(a) => write!(f, "-{}", a.wrap(2)),
            Expr::Add(a, b) => write!(f, "{a} + {}", b.wrap(1)),
            Expr::Sub(a, b) => write!(f, "{a} - {}", b.wrap(1)),
            Expr::Mul(a, b) => write!(f, "{} * {}", a.wrap(2), b.wrap(3)),
            Expr::Tensor(a, b) => write!(f, "{} # {}", a.wrap(2), b.wrap(3)),
        }
    }
}

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Q),
    Wheel(WheelElement),
    Op(WheeledDiffOp),
}

impl Value {
    pub fn render(&self, q: &Quiver) -> String {
        match self {
            Value::Scalar(c) => c.to_string(),
            Value::Wheel(u) => u.render(q),
            Value::Op(d) => d.render(q),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Wheel(_) => "wheel element",
            Value::Op(_) => "operator",
        }
    }

    /// Scalars are promoted to multiples of the unit.
    pub fn into_wheel(self) -> Result<WheelElement, ExprError> {
        match self {
            Value::Scalar(c) => Ok(WheelElement::scalar(c)),
            Value::Wheel(u) => Ok(u),
            Value::Op(_) => Err(ExprError::Type("expected a wheel element, found an operator".into())),
        }
    }

    pub fn into_op(self, q: &Quiver) -> Result<WheeledDiffOp, ExprError> {
        match self {
            Value::Op(d) => Ok(d),
            other => WheeledDiffOp::multiplier(q, other.into_wheel()?).map_err(kernel),
        }
    }
}

fn kernel<E: fmt::Display>(e: E) -> ExprError {
    ExprError::Kernel(e.to_string())
}

fn path_of(q: &Quiver, names: &[Name]) -> Result<Path, ExprError> {
    if let [single] = names {
        if let Some(v) = single.text.strip_prefix("e_") {
            if q.arrow_id(&single.text).is_none() {
                let id = q.vertex(v).ok_or_else(|| ExprError::Unknown { col: single.col, name: single.text.clone() })?;
                return Ok(Path::trivial(id));
            }
        }
    }
    let ids = names
        .iter()
        .map(|n| q.arrow_id(&n.text).ok_or_else(|| ExprError::Unknown { col: n.col, name: n.text.clone() }))
        .collect::<Result<Vec<_>, _>>()?;
    Path::new(q, ids).map_err(kernel)
}

/// The open strands of a degree-1 element without loops, as a path polynomial.
pub fn as_ncpoly(u: &WheelElement) -> Result<NcPoly, ExprError> {
    let mut f = NcPoly::zero();
    for (t, c) in u.terms() {
        if t.degree() != 1 || !t.loops.is_empty() {
            return Err(ExprError::Type("expected a sum of single open paths".into()));
        }
        f.add_term(c.clone(), t.strands[0].clone());
    }
    Ok(f)
}

pub fn eval_expr(q: &Quiver, e: &Expr) -> Result<Value, ExprError> {
    Ok(match e {
        Expr::Num(s) => Value::Scalar(parse_scalar::<Q>(s).ok_or_else(|| ExprError::Type(format!("bad number {s}")))?),
        Expr::Path(ns) => Value::Wheel(WheelElement::from_path(path_of(q, ns)?)),
        Expr::Cyclic(ns) => Value::Wheel(WheelElement::from_cycle(q, &path_of(q, ns)?).map_err(kernel)?),
        Expr::Strands { perm, paths } => {
            let word = paths.iter().map(|p| path_of(q, p)).collect::<Result<Vec<_>, _>>()?;
            let m = word.len();
            let sigma = Permutation::parse_cycles(m, perm).map_err(kernel)?;
            Value::Wheel(wheel_normalize(q, Q::from_int(1), &sigma, &Permutation::identity(m), &word, &[]).map_err(kernel)?)
        }
        Expr::Perm { images, arg } => {
            let u = eval_expr(q, arg)?.into_wheel()?;
            let sigma = Permutation::from_images(images.iter().map(|&i| i.wrapping_sub(1) as u32).collect()).map_err(kernel)?;
            let id = Permutation::identity(sigma.degree());
            Value::Wheel(wheel_act(q, &sigma, &id, &u).map_err(kernel)?)
        }
        Expr::Call { func, arg } => {
            let u = eval_expr(q, arg)?.into_wheel()?;
            Value::Op(match func {
                Func::Dd => WheeledDiffOp::theta(q, &as_ncpoly(&u)?).map_err(kernel)?,
                Func::Mul => WheeledDiffOp::multiplier(q, u).map_err(kernel)?,
                Func::Op => WheeledDiffOp::from_symbol(q, u).map_err(kernel)?,
            })
        }
        Expr::Neg(a) => match eval_expr(q, a)? {
            Value::Scalar(c) => Value::Scalar(-c),
            Value::Wheel(u) => Value::Wheel(-&u),
            Value::Op(d) => Value::Op(-&d),
        },
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let neg = matches!(e, Expr::Sub(..));
            match (eval_expr(q, a)?, eval_expr(q, b)?) {
                (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(if neg { x - y } else { x + y }),
                (x @ Value::Op(_), y) | (x, y @ Value::Op(_)) => {
                    let (x, y) = (x.into_op(q)?, y.into_op(q)?);
                    Value::Op(if neg { &x - &y } else { &x + &y })
                }
                (x, y) => {
                    let (x, y) = (x.into_wheel()?, y.into_wheel()?);
                    Value::Wheel(if neg { &x - &y } else { &x + &y })
                }
            }
        }
        Expr::Mul(a, b) | Expr::Tensor(a, b) => {
            let tensor = matches!(e, Expr::Tensor(..));
            match (eval_expr(q, a)?, eval_expr(q, b)?) {
                (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * y),
                (Value::Scalar(c), Value::Wheel(u)) | (Value::Wheel(u), Value::Scalar(c)) => Value::Wheel(u.scale(&c)),
                (Value::Scalar(c), Value::Op(d)) | (Value::Op(d), Value::Scalar(c)) => Value::Op(d.scale(&c)),
                (Value::Wheel(u), Value::Wheel(v)) => Value::Wheel(wheel_product(q, &u, &v)),
                (Value::Op(d1), Value::Op(d2)) if !tensor => Value::Op(compose_ops(q, &d1, &d2)),
                (x, y) => return Err(ExprError::Type(format!("cannot multiply {} by {}", x.kind(), y.kind()))),
            }
        }
    })
}

/// Parses and evaluates in one step.
pub fn eval_str(q: &Quiver, text: &str) -> Result<Value, ExprError> {
    eval_expr(q, &parse_expr(text)?)
}
