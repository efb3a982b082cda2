//! Arithmetic expressions over decimal literals.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-'? (number | '(' expr ')' | 'sqrt' '(' expr ')')
//! ```
//!
//! Numbers use the literal syntax of [`PeriodicDecimal`], e.g. `1.41(6)`.
//! Whitespace between tokens is ignored.

use std::fmt;

use crate::decimal::Decimal;
use crate::error::{Error, ParseError, Result};
use crate::limits::{hybrid_limit, Budget};
use crate::literal::parse_unsigned;
use crate::order::RealClass;
use crate::periodic::{detect_period, PeriodDetection, PeriodicDecimal};
use crate::real_arith::{
    add_via_limits, add_with, mul_via_limits, mul_with, neg, reciprocal_with,
};
use crate::sqrt::{sqrt_class, sqrt_sequence};
use crate::terminating::TerminatingDecimal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// A nonnegative literal; signs are [`Expr::Neg`].
    Number(PeriodicDecimal),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Sqrt(Box<Expr>),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_space(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_space();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8, name: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::new(self.pos, &[name]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let right = Box::new(self.term()?);
            left = if op == b'+' {
                Expr::Add(Box::new(left), right)
            } else {
                Expr::Sub(Box::new(left), right)
            };
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut left = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let right = Box::new(self.factor()?);
            left = if op == b'*' {
                Expr::Mul(Box::new(left), right)
            } else {
                Expr::Div(Box::new(left), right)
            };
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.atom()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')', "')'")?;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let (value, end) = parse_unsigned(self.src, self.pos)?;
                self.pos = end;
                Ok(Expr::Number(value))
            }
            _ if self.src[self.pos..].starts_with("sqrt") => {
                self.pos += 4;
                self.expect(b'(', "'('")?;
                let inner = self.expr()?;
                self.expect(b')', "')'")?;
                Ok(Expr::Sqrt(Box::new(inner)))
            }
            _ => Err(ParseError::new(self.pos, &["number", "'('", "'sqrt'"])),
        }
    }
}

/// Parses an expression.
///
/// ```
/// use decreal::expr::parse;
/// assert_eq!(parse("1.41(6").unwrap_err().offset, 6);
/// assert_eq!(parse("1.(2) * 0.(81)").unwrap().to_string(), "1.(2)*0.(81)");
/// ```
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut parser = Parser { src, pos: 0 };
    let e = parser.expr()?;
    if parser.peek().is_some() {
        return Err(ParseError::new(parser.pos, &["operator", "end of input"]));
    }
    Ok(e)
}

impl Expr {
    fn write_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(x) if x.sign() != crate::Sign::Negative => write!(f, "{x}"),
            Expr::Sqrt(_) => write!(f, "{self}"),
            _ => write!(f, "({self})"),
        }
    }

    fn write_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Neg(inner) => {
                f.write_str("-")?;
                inner.write_atom(f)
            }
            _ => self.write_atom(f),
        }
    }

    fn write_term(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Mul(..) | Expr::Div(..) => write!(f, "{self}"),
            _ => self.write_factor(f),
        }
    }
}

/// Renders with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write!(f, "{a}")?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write_term(f)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.write_term(f)?;
                f.write_str(if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                b.write_factor(f)
            }
            Expr::Sqrt(inner) => write!(f, "sqrt({inner})"),
            Expr::Number(_) | Expr::Neg(_) => self.write_factor(f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Periodic arithmetic wherever the operands are finitely represented.
    #[default]
    Exact,
    /// Every operation as a limit of truncation sequences.
    Lazy,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Exactness {
    Exact,
    /// The value lies within `10^-radius_exp` of the rendered prefix.
    Enclosed { radius_exp: u32 },
    /// The value lies within `10^-radius_exp` of `near`, and whether it falls
    /// on either side of that grid point could not be settled.
    UndecidedJump { near: TerminatingDecimal, radius_exp: u32 },
}

#[derive(Debug, Clone)]
pub struct EvalResult {
    /// `None` when the leading digits already sit on an undecided jump.
    pub class: Option<RealClass>,
    pub exactness: Exactness,
    pub rendered: String,
}

/// `value`, or `value ± 1e-K` for enclosures.
impl fmt::Display for EvalResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exactness {
            Exactness::Exact => f.write_str(&self.rendered),
            Exactness::Enclosed { radius_exp } => write!(f, "{} ± 1e-{radius_exp}", self.rendered),
            Exactness::UndecidedJump { radius_exp, .. } => {
                write!(f, "{} ± 1e-{radius_exp} (jump undecided)", self.rendered)
            }
        }
    }
}

fn class_of(e: &Expr, backend: Backend, budget: Budget) -> Result<RealClass> {
    let bin = |a: &Expr, b: &Expr| -> Result<(RealClass, RealClass)> {
        Ok((class_of(a, backend, budget)?, class_of(b, backend, budget)?))
    };
    match (e, backend) {
        (Expr::Number(x), _) => Ok(RealClass::from(x.clone())),
        (Expr::Neg(a), _) => Ok(neg(&class_of(a, backend, budget)?)),
        (Expr::Sub(a, b), _) => {
            let (x, y) = bin(a, b)?;
            match backend {
                Backend::Exact => add_with(&x, &neg(&y), budget),
                Backend::Lazy => add_via_limits(&x, &neg(&y), budget),
            }
        }
        (Expr::Add(a, b), Backend::Exact) => bin(a, b).and_then(|(x, y)| add_with(&x, &y, budget)),
        (Expr::Add(a, b), Backend::Lazy) => bin(a, b).and_then(|(x, y)| add_via_limits(&x, &y, budget)),
        (Expr::Mul(a, b), Backend::Exact) => bin(a, b).and_then(|(x, y)| mul_with(&x, &y, budget)),
        (Expr::Mul(a, b), Backend::Lazy) => bin(a, b).and_then(|(x, y)| mul_via_limits(&x, &y, budget)),
        (Expr::Div(a, b), _) => {
            let (x, y) = bin(a, b)?;
            let inv = match (backend, y.as_exact()) {
                (Backend::Exact, Some(q)) => RealClass::from(crate::periodic::inv_p(q)?),
                _ => reciprocal_with(&y, budget)?,
            };
            match backend {
                Backend::Exact => mul_with(&x, &inv, budget),
                Backend::Lazy => mul_via_limits(&x, &inv, budget),
            }
        }
        (Expr::Sqrt(a), Backend::Exact) => sqrt_class(&class_of(a, backend, budget)?, budget),
        (Expr::Sqrt(a), Backend::Lazy) => {
            let inner = class_of(a, backend, budget)?;
            hybrid_limit(&sqrt_sequence(&inner.representative()), budget)
        }
    }
}

/// Exact results with a longer repetend are shown as a digit prefix.
pub const MAX_RENDERED_PERIOD: u64 = 1000;

/// `t` with exactly `digits` places after the point.
fn fixed(t: &TerminatingDecimal, digits: u32) -> String {
    let s = t.to_string();
    let have = s.split_once('.').map_or(0, |(_, frac)| frac.len());
    let mut out = s;
    if digits > 0 && have == 0 {
        out.push('.');
    }
    out.extend(std::iter::repeat_n('0', digits as usize - have.min(digits as usize)));
    out
}

fn undecided(near: TerminatingDecimal, radius_exp: u32, class: Option<RealClass>) -> EvalResult {
    EvalResult {
        class,
        rendered: near.to_string(),
        exactness: Exactness::UndecidedJump { near, radius_exp },
    }
}

/// Evaluates `e`, rendering lazy results to `digits` places.
///
/// ```
/// use decreal::expr::{evaluate, parse, Backend, Exactness};
/// let r = evaluate(&parse("1.(2)*0.(81)").unwrap(), 10, Backend::Lazy).unwrap();
/// assert_eq!(r.rendered, "{0.(9), 1}");
/// let s = evaluate(&parse("sqrt(2)").unwrap(), 5, Backend::Exact).unwrap();
/// assert_eq!(s.to_string(), "1.41421… ± 1e-5");
/// assert_eq!(s.exactness, Exactness::Enclosed { radius_exp: 5 });
/// ```
pub fn evaluate(e: &Expr, digits: u32, backend: Backend) -> Result<EvalResult> {
    let budget = Budget::default();
    let class = match class_of(e, backend, budget) {
        Ok(c) => c,
        Err(Error::JumpUnresolved { near, radius_exp }) => return Ok(undecided(near, radius_exp, None)),
        Err(err) => return Err(err),
    };
    if let Some(x) = class.as_exact() {
        let rendered = match x.period_len_at_most(MAX_RENDERED_PERIOD) {
            Some(_) => class.to_string(),
            None => format!(
                "{}… (repetend longer than {MAX_RENDERED_PERIOD} digits)",
                fixed(&x.truncate(digits as i64), digits)
            ),
        };
        return Ok(EvalResult {
            rendered,
            class: Some(class),
            exactness: Exactness::Exact,
        });
    }
    match class.representative().try_truncate(digits as i64) {
        Ok(t) => Ok(EvalResult {
            rendered: format!("{}…", fixed(&t, digits)),
            class: Some(class),
            exactness: Exactness::Enclosed { radius_exp: digits },
        }),
        Err(Error::JumpUnresolved { near, radius_exp }) => Ok(undecided(near, radius_exp, Some(class))),
        Err(err) => Err(err),
    }
}

/// Looks for an ultimate period among the first `digits` digits of the value
/// of `e`. A bare literal is scanned as written, so `0.(9)` keeps its nines.
///
/// ```
/// use decreal::expr::{parse, scan};
/// use decreal::PeriodDetection;
/// let PeriodDetection::Found(x) = scan(&parse("1/7").unwrap(), 100, 10).unwrap() else { panic!() };
/// assert_eq!(x.repetend(), &[1, 4, 2, 8, 5, 7]);
/// ```
pub fn scan(e: &Expr, digits: usize, max_period: usize) -> Result<PeriodDetection> {
    let d = match e {
        Expr::Number(x) => Decimal::from(x.clone()),
        Expr::Neg(inner) => match inner.as_ref() {
            Expr::Number(x) => Decimal::from(x.negate()),
            _ => real_class_of(e)?.representative(),
        },
        _ => real_class_of(e)?.representative(),
    };
    detect_period(&d, digits, max_period)
}

fn real_class_of(e: &Expr) -> Result<RealClass> {
    class_of(e, Backend::Exact, Budget::default())
}
