//! Signed infinite digit strings.
//!
//! A [`Decimal`] is either finitely represented (a [`PeriodicDecimal`], which
//! covers terminating decimals and 𝕋₉ members) or a lazily generated stream
//! whose digits are produced on demand, most significant first, and memoized.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::periodic::PeriodicDecimal;
use crate::terminating::TerminatingDecimal;

/// A decimal digit, `0..=9`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digit(u8);

impl Digit {
    pub const ZERO: Digit = Digit(0);
    pub const NINE: Digit = Digit(9);

    pub fn new(value: u8) -> Option<Digit> {
        (value <= 9).then_some(Digit(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// Which of 𝕋₀ / 𝕋₉ a decimal belongs to, if either.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TailClass {
    TailZeros,
    TailNines,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailStatus {
    Known(TailClass),
    Undetermined,
}

/// How a decimal's digits are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Terminating,
    Periodic,
    Lazy,
}

/// Sign and leading digit position, as far as they can be established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Leading {
    Zero,
    Nonzero { sign: Sign, msd: i64 },
    Undetermined,
}

/// Produces the digits of a lazily defined decimal.
///
/// Digits are requested in order starting at index [`top`](Self::top) and
/// moving toward less significant positions. Once a nonzero digit has been
/// produced, [`sign`](Self::sign) must report the sign of the decimal.
pub trait DigitGenerator: Send {
    /// Index of the first digit produced; every digit above it is 0.
    fn top(&self) -> i64;

    fn next_digit(&mut self) -> Result<Digit>;

    fn sign(&self) -> Sign;

    /// If every digit after the ones produced so far is known to be the
    /// same (all 0s or all 9s), the corresponding tail class.
    fn known_tail(&self) -> Option<TailClass> {
        None
    }

    /// A terminating value that the square of every truncation stays
    /// strictly below, when the generator knows one.
    fn squares_below(&self) -> Option<TerminatingDecimal> {
        None
    }
}

struct LazyState {
    generator: Box<dyn DigitGenerator>,
    digits: Vec<u8>,
    sign: Sign,
    tail: Option<TailClass>,
    failure: Option<Error>,
}

/// Memoized digit stream. Queries from several threads are serialized on the
/// internal lock, so every index always reads back the same digit.
pub struct LazyStream {
    top: i64,
    state: Mutex<LazyState>,
}

impl LazyStream {
    fn new(generator: Box<dyn DigitGenerator>) -> Self {
        let top = generator.top();
        let tail = generator.known_tail();
        LazyStream {
            top,
            state: Mutex::new(LazyState {
                generator,
                digits: Vec::new(),
                sign: Sign::Zero,
                tail,
                failure: None,
            }),
        }
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, LazyState> {
        self.state.lock().unwrap_or_else(|e| e.into_inner())
    }

    fn digit(&self, i: i64) -> Result<Digit> {
        if i > self.top {
            return Ok(Digit::ZERO);
        }
        let pos = (self.top - i) as usize;
        let mut st = self.lock();
        st.fill(pos + 1)?;
        Ok(st.digit(pos))
    }

    /// Sign, if a nonzero digit turns up among the first `budget` positions.
    fn sign_within(&self, budget: u32) -> Result<Option<(Sign, i64)>> {
        let mut st = self.lock();
        for pos in 0..budget as usize {
            st.fill(pos + 1)?;
            if st.digit(pos).value() != 0 {
                return Ok(Some((st.sign, self.top - pos as i64)));
            }
            if st.tail == Some(TailClass::TailZeros) && pos >= st.digits.len() {
                return Ok(None);
            }
        }
        Ok(None)
    }

    fn known_zero_after(&self, budget: u32) -> Result<bool> {
        let mut st = self.lock();
        st.fill(budget as usize)?;
        Ok(st.tail == Some(TailClass::TailZeros) && st.digits.iter().all(|&d| d == 0))
    }

    fn tail_within(&self, budget: u32) -> Result<Option<TailClass>> {
        let mut st = self.lock();
        st.fill(budget as usize)?;
        Ok(st.tail)
    }
}

impl LazyState {
    fn fill(&mut self, len: usize) -> Result<()> {
        if let Some(err) = &self.failure {
            if self.digits.len() < len && self.tail.is_none() {
                return Err(err.clone());
            }
        }
        while self.digits.len() < len && self.tail.is_none() {
            match self.generator.next_digit() {
                Ok(d) => {
                    self.digits.push(d.value());
                    if d.value() != 0 && self.sign == Sign::Zero {
                        self.sign = self.generator.sign();
                    }
                    self.tail = self.generator.known_tail();
                }
                Err(err) => {
                    self.failure = Some(err.clone());
                    return Err(err);
                }
            }
        }
        Ok(())
    }

    fn digit(&self, pos: usize) -> Digit {
        match self.digits.get(pos) {
            Some(&d) => Digit(d),
            None => match self.tail {
                Some(TailClass::TailNines) => Digit::NINE,
                _ => Digit::ZERO,
            },
        }
    }
}

#[derive(Clone)]
enum Repr {
    Exact(PeriodicDecimal),
    Lazy {
        stream: Arc<LazyStream>,
        shift: i64,
        negated: bool,
    },
}

/// A signed infinite decimal.
#[derive(Clone)]
pub struct Decimal(Repr);

/// Number of positions scanned when a lazy decimal is displayed.
const DISPLAY_DIGITS: i64 = 20;

impl Decimal {
    pub fn zero() -> Self {
        Decimal(Repr::Exact(PeriodicDecimal::zero()))
    }

    pub fn from_generator(generator: impl DigitGenerator + 'static) -> Self {
        Decimal(Repr::Lazy {
            stream: Arc::new(LazyStream::new(Box::new(generator))),
            shift: 0,
            negated: false,
        })
    }

    pub fn representation(&self) -> Representation {
        match &self.0 {
            Repr::Exact(p) if p.is_terminating_t0() => Representation::Terminating,
            Repr::Exact(_) => Representation::Periodic,
            Repr::Lazy { .. } => Representation::Lazy,
        }
    }

    pub fn is_finitely_represented(&self) -> bool {
        matches!(self.0, Repr::Exact(_))
    }

    pub fn as_periodic(&self) -> Option<&PeriodicDecimal> {
        match &self.0 {
            Repr::Exact(p) => Some(p),
            Repr::Lazy { .. } => None,
        }
    }

    /// The decimal as a member of 𝕋₀, if it is one.
    pub fn as_terminating(&self) -> Option<TerminatingDecimal> {
        self.as_periodic()
            .filter(|p| p.is_terminating_t0())
            .map(|p| p.terminating_value())
    }

    pub(crate) fn require_periodic(&self) -> Result<&PeriodicDecimal> {
        self.as_periodic().ok_or(Error::NotFinitelyRepresented)
    }

    /// The i-th digit. Total for finitely represented decimals.
    ///
    /// # Panics
    ///
    /// Panics if a lazy generator fails; use [`try_digit_at`](Self::try_digit_at)
    /// for streams produced by budgeted limit engines.
    pub fn digit_at(&self, i: i64) -> Digit {
        match self.try_digit_at(i) {
            Ok(d) => d,
            Err(err) => panic!("digit {i} unavailable: {err}"),
        }
    }

    pub fn try_digit_at(&self, i: i64) -> Result<Digit> {
        match &self.0 {
            Repr::Exact(p) => Ok(p.digit_at(i)),
            Repr::Lazy { stream, shift, .. } => stream.digit(i - shift),
        }
    }

    /// Index above which every digit is known to be 0.
    pub fn top_index(&self) -> i64 {
        match &self.0 {
            Repr::Exact(p) => p.msd_index().unwrap_or(0),
            Repr::Lazy { stream, shift, .. } => stream.top + shift,
        }
    }

    /// Sign and most significant digit, scanning at most `budget` positions of a
    /// lazy stream.
    pub fn leading(&self, budget: u32) -> Result<Leading> {
        match &self.0 {
            Repr::Exact(p) => Ok(match p.msd_index() {
                None => Leading::Zero,
                Some(msd) => Leading::Nonzero {
                    sign: p.sign(),
                    msd,
                },
            }),
            Repr::Lazy {
                stream,
                shift,
                negated,
            } => match stream.sign_within(budget)? {
                Some((sign, msd)) => Ok(Leading::Nonzero {
                    sign: if *negated { sign.flip() } else { sign },
                    msd: msd + shift,
                }),
                None if stream.known_zero_after(budget)? => Ok(Leading::Zero),
                None => Ok(Leading::Undetermined),
            },
        }
    }

    /// Sign if established within `budget` digit positions.
    pub fn sign_within(&self, budget: u32) -> Result<Option<Sign>> {
        Ok(match self.leading(budget)? {
            Leading::Zero => Some(Sign::Zero),
            Leading::Nonzero { sign, .. } => Some(sign),
            Leading::Undetermined => None,
        })
    }

    /// The sign of a finitely represented decimal.
    pub fn exact_sign(&self) -> Option<Sign> {
        self.as_periodic().map(|p| p.sign())
    }

    /// The n-truncation `d|n`.
    ///
    /// # Panics
    ///
    /// As [`digit_at`](Self::digit_at).
    pub fn truncate(&self, n: i64) -> TerminatingDecimal {
        match self.try_truncate(n) {
            Ok(t) => t,
            Err(err) => panic!("truncation {n} unavailable: {err}"),
        }
    }

    pub fn try_truncate(&self, n: i64) -> Result<TerminatingDecimal> {
        match &self.0 {
            Repr::Exact(p) => Ok(p.truncate(n)),
            Repr::Lazy {
                stream,
                shift,
                negated,
            } => {
                let top = stream.top + shift;
                if top < -n {
                    return Ok(TerminatingDecimal::zero());
                }
                let mut magnitude = String::with_capacity((top + n + 1) as usize);
                let mut nonzero = false;
                for i in (-n..=top).rev() {
                    let d = stream.digit(i - shift)?.value();
                    nonzero |= d != 0;
                    magnitude.push((b'0' + d) as char);
                }
                if !nonzero {
                    return Ok(TerminatingDecimal::zero());
                }
                let mut value: BigInt = magnitude.parse().unwrap_or_default();
                let sign = stream.lock().sign;
                let negative = (sign == Sign::Negative) != *negated;
                if negative {
                    value = -value;
                }
                Ok(TerminatingDecimal::new(value, n))
            }
        }
    }

    /// `10^k · d`: digit `i` of the result is digit `i - k` of `d`.
    pub fn shift(&self, k: i64) -> Self {
        match &self.0 {
            Repr::Exact(p) => Decimal(Repr::Exact(p.shift(k))),
            Repr::Lazy {
                stream,
                shift,
                negated,
            } => Decimal(Repr::Lazy {
                stream: Arc::clone(stream),
                shift: shift + k,
                negated: *negated,
            }),
        }
    }

    pub fn negate(&self) -> Self {
        match &self.0 {
            Repr::Exact(p) => Decimal(Repr::Exact(p.negate())),
            Repr::Lazy {
                stream,
                shift,
                negated,
            } => Decimal(Repr::Lazy {
                stream: Arc::clone(stream),
                shift: *shift,
                negated: !negated,
            }),
        }
    }

    /// Tail classification. Exact for finitely represented decimals; a lazy
    /// stream is inspected for at most `budget` digits.
    pub fn classify_tail(&self, budget: u32) -> Result<TailStatus> {
        match &self.0 {
            Repr::Exact(p) => Ok(TailStatus::Known(p.tail_class())),
            Repr::Lazy { stream, .. } => Ok(match stream.tail_within(budget)? {
                Some(class) => TailStatus::Known(class),
                None => TailStatus::Undetermined,
            }),
        }
    }

    /// Strict upper bound on the squares of all truncations, when the
    /// underlying generator supplies one.
    pub fn squares_below(&self) -> Option<TerminatingDecimal> {
        match &self.0 {
            Repr::Exact(_) => None,
            Repr::Lazy { stream, shift, .. } => {
                let bound = stream.lock().generator.squares_below()?;
                Some(bound.shift(2 * shift))
            }
        }
    }

    /// Digits `top..=top-count+1` as a string, for display and scanning.
    pub fn digit_string(&self, from: i64, count: usize) -> Result<String> {
        let mut out = String::with_capacity(count);
        for j in 0..count as i64 {
            out.push((b'0' + self.try_digit_at(from - j)?.value()) as char);
        }
        Ok(out)
    }
}

impl From<PeriodicDecimal> for Decimal {
    fn from(p: PeriodicDecimal) -> Self {
        Decimal(Repr::Exact(p))
    }
}

impl From<TerminatingDecimal> for Decimal {
    fn from(t: TerminatingDecimal) -> Self {
        Decimal(Repr::Exact(PeriodicDecimal::from(t)))
    }
}

impl From<i64> for Decimal {
    fn from(v: i64) -> Self {
        Decimal::from(TerminatingDecimal::from(v))
    }
}

impl std::str::FromStr for Decimal {
    type Err = crate::error::ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.parse::<PeriodicDecimal>().map(Decimal::from)
    }
}

impl PartialEq for Decimal {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Exact(a), Repr::Exact(b)) => a == b,
            (
                Repr::Lazy {
                    stream: a,
                    shift: sa,
                    negated: na,
                },
                Repr::Lazy {
                    stream: b,
                    shift: sb,
                    negated: nb,
                },
            ) => Arc::ptr_eq(a, b) && sa == sb && na == nb,
            _ => false,
        }
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Exact(p) => write!(f, "{p}"),
            Repr::Lazy { .. } => {
                let n = (DISPLAY_DIGITS - self.top_index().max(0)).max(1);
                match self.try_truncate(n) {
                    Ok(t) => write!(f, "{t}…"),
                    Err(_) => f.write_str("…"),
                }
            }
        }
    }
}

impl fmt::Debug for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Exact(p) => write!(f, "Decimal({p})"),
            Repr::Lazy { .. } => write!(f, "Decimal(lazy {self})"),
        }
    }
}
