//! Sequences of terminating decimals and their limits.
//!
//! A sequence carries a modulus `k ↦ N(k)` certifying its contract: for a
//! Cauchy sequence `|t(m) - t(n)| < 10^-k` whenever `m, n > N(k)`, for a null
//! sequence `|t(n)| < 10^-k` whenever `n > N(k)`.
//!
//! Three limits are provided. The hybrid limit is a real number (a class);
//! its digits are read off enclosures `t(N(k)+1) ± 10^-k`. The formal limit
//! is a decimal, the digitwise limit of the terms; it is produced for
//! monotone sequences and for sequences squeezed between brackets.

use std::fmt;
use std::sync::Arc;

use crate::decimal::{Decimal, Digit, DigitGenerator, Sign};
use crate::error::{Error, Result};
use crate::order::RealClass;
use crate::periodic::{add_p, mul_p, PeriodicDecimal};
use crate::terminating::TerminatingDecimal;

pub type TermFn = Arc<dyn Fn(u64) -> Result<TerminatingDecimal> + Send + Sync>;
pub type ModulusFn = Arc<dyn Fn(u32) -> u64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contract {
    Cauchy,
    ToZero,
}

/// A sequence of terminating decimals with a convergence modulus.
#[derive(Clone)]
pub struct ApproxSequence {
    term: TermFn,
    modulus: ModulusFn,
    contract: Contract,
    candidate: Option<PeriodicDecimal>,
}

/// Depth limits for limit engines: how many refinement steps are tried per
/// digit before giving up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub depth: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { depth: 64 }
    }
}

fn pow10(k: i64) -> TerminatingDecimal {
    TerminatingDecimal::pow10(k)
}

impl ApproxSequence {
    pub fn new(
        term: impl Fn(u64) -> Result<TerminatingDecimal> + Send + Sync + 'static,
        modulus: impl Fn(u32) -> u64 + Send + Sync + 'static,
        contract: Contract,
    ) -> Self {
        ApproxSequence {
            term: Arc::new(term),
            modulus: Arc::new(modulus),
            contract,
            candidate: None,
        }
    }

    /// A Cauchy sequence given by an infallible term function.
    pub fn cauchy(
        term: impl Fn(u64) -> TerminatingDecimal + Send + Sync + 'static,
        modulus: impl Fn(u32) -> u64 + Send + Sync + 'static,
    ) -> Self {
        ApproxSequence::new(move |n| Ok(term(n)), modulus, Contract::Cauchy)
    }

    /// A null sequence given by an infallible term function.
    pub fn to_zero(
        term: impl Fn(u64) -> TerminatingDecimal + Send + Sync + 'static,
        modulus: impl Fn(u32) -> u64 + Send + Sync + 'static,
    ) -> Self {
        ApproxSequence::new(move |n| Ok(term(n)), modulus, Contract::ToZero)
    }

    /// The truncations `d|n`, with modulus `N(k) = k`.
    pub fn truncations(d: &Decimal) -> Self {
        let source = d.clone();
        let mut s = ApproxSequence::new(
            move |n| source.try_truncate(n as i64),
            |k| k as u64,
            Contract::Cauchy,
        );
        s.candidate = d.as_periodic().cloned();
        s
    }

    /// Declares the exact limit, letting [`hybrid_limit`] verify it against
    /// the terms instead of reading digits off enclosures.
    pub fn with_candidate(mut self, limit: PeriodicDecimal) -> Self {
        self.candidate = Some(limit);
        self
    }

    pub fn candidate(&self) -> Option<&PeriodicDecimal> {
        self.candidate.as_ref()
    }

    pub fn contract(&self) -> Contract {
        self.contract
    }

    pub fn term(&self, n: u64) -> Result<TerminatingDecimal> {
        (self.term)(n)
    }

    pub fn modulus(&self, k: u32) -> u64 {
        (self.modulus)(k)
    }

    /// Pointwise sum.
    pub fn add(&self, other: &ApproxSequence) -> Self {
        let (a, b) = (self.clone(), other.clone());
        let (ma, mb) = (self.modulus.clone(), other.modulus.clone());
        ApproxSequence {
            term: Arc::new(move |n| Ok(a.term(n)? + b.term(n)?)),
            modulus: Arc::new(move |k| ma(k + 1).max(mb(k + 1))),
            contract: self.contract,
            candidate: match (&self.candidate, &other.candidate) {
                (Some(x), Some(y)) => Some(add_p(x, y)),
                _ => None,
            },
        }
    }

    pub fn neg(&self) -> Self {
        let a = self.clone();
        ApproxSequence {
            term: Arc::new(move |n| Ok(-a.term(n)?)),
            modulus: self.modulus.clone(),
            contract: self.contract,
            candidate: self.candidate.as_ref().map(PeriodicDecimal::negate),
        }
    }

    pub fn sub(&self, other: &ApproxSequence) -> Self {
        self.add(&other.neg())
    }

    /// Pointwise product of two Cauchy sequences. The modulus is shifted by
    /// `j` places, where `10^j` is at least twice a bound on both sequences.
    pub fn mul(&self, other: &ApproxSequence) -> Result<Self> {
        let bound = |s: &ApproxSequence| -> Result<TerminatingDecimal> {
            Ok(s.term(s.modulus(1) + 1)?.abs() + TerminatingDecimal::one())
        };
        let b = bound(self)?.max(bound(other)?);
        let twice = &b + &b;
        let mut j = 0u32;
        while pow10(j as i64) < twice {
            j += 1;
        }
        let (x, y) = (self.clone(), other.clone());
        let (mx, my) = (self.modulus.clone(), other.modulus.clone());
        Ok(ApproxSequence {
            term: Arc::new(move |n| Ok(x.term(n)? * y.term(n)?)),
            modulus: Arc::new(move |k| mx(k + j).max(my(k + j)).max(mx(1)).max(my(1))),
            contract: Contract::Cauchy,
            candidate: match (&self.candidate, &other.candidate) {
                (Some(p), Some(q)) => Some(mul_p(p, q)),
                _ => None,
            },
        })
    }

    /// The enclosure `t(N(k)+1) ± 10^-k` of the limit, as `(lower, upper)`.
    pub fn enclosure(&self, k: u32) -> Result<(TerminatingDecimal, TerminatingDecimal)> {
        let t = self.term(self.modulus(k) + 1)?;
        let r = pow10(-(k as i64));
        Ok((&t - &r, &t + &r))
    }
}

impl fmt::Debug for ApproxSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ApproxSequence")
            .field("contract", &self.contract)
            .field("candidate", &self.candidate)
            .finish_non_exhaustive()
    }
}

const SAMPLES: u64 = 10;

/// Spot-checks the null-sequence contract for every `k <= k_max` at
/// `n = N(k)+1, …, N(k)+10`.
pub fn tends_to_zero(s: &ApproxSequence, k_max: u32) -> Result<()> {
    for k in 1..=k_max {
        let start = s.modulus(k) + 1;
        for n in start..start + SAMPLES {
            if s.term(n)?.abs() >= pow10(-(k as i64)) {
                return Err(Error::ContractViolation { k, m: n, n });
            }
        }
    }
    Ok(())
}

/// Spot-checks the Cauchy contract for every `k <= k_max` on pairs drawn
/// from `N(k)+1, …, N(k)+10` and a few far indices.
pub fn cauchy_check(s: &ApproxSequence, k_max: u32) -> Result<()> {
    for k in 1..=k_max {
        let start = s.modulus(k) + 1;
        let mut indices: Vec<u64> = (start..start + SAMPLES).collect();
        indices.extend([2 * start + 7, 10 * start + 101]);
        let terms: Vec<TerminatingDecimal> =
            indices.iter().map(|&n| s.term(n)).collect::<Result<_>>()?;
        let eps = pow10(-(k as i64));
        for (a, (m, tm)) in indices.iter().zip(&terms).enumerate() {
            for (n, tn) in indices.iter().zip(&terms).skip(a + 1) {
                if (tm - tn).abs() >= eps {
                    return Err(Error::ContractViolation { k, m: *m, n: *n });
                }
            }
        }
    }
    Ok(())
}

/// Truncation toward zero at index `i`: the cell of `x` at that index.
fn cell(x: &TerminatingDecimal, i: i64) -> TerminatingDecimal {
    x.truncate(-i)
}

struct HybridGenerator {
    seq: ApproxSequence,
    depth: u32,
    top: i64,
    next: i64,
    sign: Sign,
}

impl DigitGenerator for HybridGenerator {
    fn top(&self) -> i64 {
        self.top
    }

    fn next_digit(&mut self) -> Result<Digit> {
        let i = self.next;
        let first = (1 - i).max(1) as u32;
        let mut last = None;
        for k in first..first + self.depth {
            let (lo, hi) = self.seq.enclosure(k)?;
            let (cl, ch) = (cell(&lo, i), cell(&hi, i));
            if cl == ch {
                self.next -= 1;
                if self.sign == Sign::Zero && !cl.is_zero() {
                    self.sign = cl.sign();
                }
                return Ok(cl.digit_at(i));
            }
            // The grid point of index i straddled by the enclosure.
            let near = if hi.is_positive() { ch } else { cl };
            last = Some((near, k));
        }
        let (near, radius_exp) = last.expect("depth is positive");
        Err(Error::JumpUnresolved { near, radius_exp })
    }

    fn sign(&self) -> Sign {
        self.sign
    }
}

/// The hybrid limit `hlim t(n)` of a Cauchy sequence.
///
/// With a declared candidate the candidate is checked against the terms and
/// its class returned. Otherwise the digits of a representative are produced
/// lazily from enclosures; the leading digits are resolved at once so that a
/// limit sitting on a jump is reported here as [`Error::JumpUnresolved`].
///
/// ```
/// use decreal::limits::{hybrid_limit, ApproxSequence, Budget};
/// use decreal::{PeriodicDecimal, TerminatingDecimal};
///
/// let s = ApproxSequence::cauchy(|n| TerminatingDecimal::one() - TerminatingDecimal::pow10(-(n as i64)), |k| k as u64)
///     .with_candidate(PeriodicDecimal::one());
/// assert_eq!(hybrid_limit(&s, Budget::default()).unwrap().to_string(), "{0.(9), 1}");
/// ```
pub fn hybrid_limit(s: &ApproxSequence, budget: Budget) -> Result<RealClass> {
    if let Some(limit) = &s.candidate {
        for k in 1..=budget.depth {
            let start = s.modulus(k) + 1;
            for n in start..start + 3 {
                let gap = (s.term(n)? - limit.truncate(n as i64)).abs();
                if gap > pow10(-(k as i64)) + pow10(-(n as i64)) {
                    return Err(Error::CandidateRejected { k, n });
                }
            }
        }
        return Ok(RealClass::from(limit.clone()));
    }
    let t1 = s.term(s.modulus(1) + 1)?;
    let top = (t1.abs() + TerminatingDecimal::one()).msd_index().unwrap_or(0);
    let generator = HybridGenerator {
        seq: s.clone(),
        depth: budget.depth.max(1),
        top,
        next: top,
        sign: Sign::Zero,
    };
    let d = Decimal::from_generator(generator);
    d.leading(budget.depth)?;
    Ok(crate::order::real_class(&d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Nondecreasing,
    Nonincreasing,
}

/// A bound on a monotone sequence, on the side it moves toward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonotoneBound {
    /// Terms never pass the bound.
    Inclusive(TerminatingDecimal),
    /// Terms never reach the bound.
    Exclusive(TerminatingDecimal),
}

impl MonotoneBound {
    fn value(&self) -> &TerminatingDecimal {
        match self {
            MonotoneBound::Inclusive(b) | MonotoneBound::Exclusive(b) => b,
        }
    }

    fn negate(&self) -> Self {
        match self {
            MonotoneBound::Inclusive(b) => MonotoneBound::Inclusive(-b),
            MonotoneBound::Exclusive(b) => MonotoneBound::Exclusive(-b),
        }
    }
}

struct MonotoneGenerator {
    // Normalized to nondecreasing.
    seq: ApproxSequence,
    bound: MonotoneBound,
    depth: u32,
    top: i64,
    next: i64,
    sign: Sign,
    last: Option<(u64, TerminatingDecimal)>,
}

impl MonotoneGenerator {
    fn sample(&mut self, n: u64) -> Result<TerminatingDecimal> {
        let t = self.seq.term(n)?;
        let crossed = match &self.bound {
            MonotoneBound::Inclusive(b) => &t > b,
            MonotoneBound::Exclusive(b) => &t >= b,
        };
        if crossed {
            return Err(Error::BoundViolation { n });
        }
        if let Some((m, prev)) = &self.last {
            let out_of_order = (*m < n && prev > &t) || (*m > n && prev < &t);
            if out_of_order {
                return Err(Error::MonotonicityViolation { m: *m, n });
            }
        }
        if self.last.as_ref().is_none_or(|(m, _)| *m < n) {
            self.last = Some((n, t.clone()));
        }
        Ok(t)
    }

    /// Whether every value in `[low, upper]` (or `[low, upper)`) has the same
    /// truncation at index `i` as `low`.
    fn certified(low: &TerminatingDecimal, upper: &TerminatingDecimal, inclusive: bool, i: i64) -> bool {
        let c = cell(low, i);
        let h = pow10(i);
        let (edge, edge_closed) = if c.is_negative() {
            (c.clone(), true)
        } else {
            (&c + &h, false)
        };
        if inclusive && !edge_closed {
            upper < &edge
        } else {
            upper <= &edge
        }
    }
}

impl DigitGenerator for MonotoneGenerator {
    fn top(&self) -> i64 {
        self.top
    }

    fn next_digit(&mut self) -> Result<Digit> {
        let i = self.next;
        let first = (-i).max(1) as u32;
        for k in first..first + self.depth {
            let n = self.seq.modulus(k) + 1;
            let low = self.sample(n)?;
            self.sample(n + 1)?;
            let step = &low + &pow10(-(k as i64));
            let (upper, inclusive) = match &self.bound {
                MonotoneBound::Inclusive(b) if b < &step => (b.clone(), true),
                MonotoneBound::Exclusive(b) if b <= &step => (b.clone(), false),
                _ => (step, false),
            };
            if Self::certified(&low, &upper, inclusive, i) {
                let c = cell(&low, i);
                self.next -= 1;
                if self.sign == Sign::Zero && !c.is_zero() {
                    self.sign = c.sign();
                }
                return Ok(c.digit_at(i));
            }
        }
        Err(Error::BudgetExhausted {
            budget: self.depth,
            during: "formal limit of a monotone sequence",
        })
    }

    fn sign(&self) -> Sign {
        self.sign
    }
}

/// The formal limit of a monotone bounded Cauchy sequence.
///
/// The digit at index `i` is emitted once every later term is known to share
/// the same truncation at `i`: later terms lie in
/// `[t(N(k)+1), min(t(N(k)+1) + 10^-k, bound)]`. A limit that is never
/// attained must be declared with an exclusive bound for its digits to be
/// certified.
pub fn formal_limit_monotone(
    s: &ApproxSequence,
    direction: Direction,
    bound: MonotoneBound,
    budget: Budget,
) -> Result<Decimal> {
    let (seq, bound, flip) = match direction {
        Direction::Nondecreasing => (s.clone(), bound, false),
        Direction::Nonincreasing => (s.neg(), bound.negate(), true),
    };
    let t1 = seq.term(seq.modulus(1) + 1)?;
    let reach = t1.abs().max(bound.value().abs());
    let top = (reach + TerminatingDecimal::one()).msd_index().unwrap_or(0);
    let generator = MonotoneGenerator {
        seq,
        bound,
        depth: budget.depth.max(1),
        top,
        next: top,
        sign: Sign::Zero,
        last: None,
    };
    let d = Decimal::from_generator(generator);
    d.leading(budget.depth)?;
    Ok(if flip { d.negate() } else { d })
}

/// A pair `lower < upper` of terminating decimals `10^-k` apart, strictly
/// enclosing every term with index above `valid_from`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketPair {
    pub lower: TerminatingDecimal,
    pub upper: TerminatingDecimal,
    pub valid_from: u64,
}

pub type BracketFn = Arc<dyn Fn(u32) -> Result<BracketPair> + Send + Sync>;

struct BracketedGenerator {
    seq: ApproxSequence,
    brackets: BracketFn,
    top: i64,
    next: i64,
    sign: Sign,
    current: Option<(u32, TerminatingDecimal)>,
}

impl BracketedGenerator {
    fn checked_bracket(&self, k: u32) -> Result<BracketPair> {
        let b = (self.brackets)(k)?;
        if &b.upper - &b.lower != pow10(-(k as i64)) {
            return Err(Error::MalformedBracket {
                k,
                reason: "width is not 10^-k",
            });
        }
        if b.lower.truncate(k as i64) != b.lower {
            return Err(Error::MalformedBracket {
                k,
                reason: "digits below index -k",
            });
        }
        for n in b.valid_from + 1..=b.valid_from + 3 {
            let t = self.seq.term(n)?;
            if !(b.lower < t && t < b.upper) {
                return Err(Error::BracketViolation { k, n });
            }
        }
        Ok(b)
    }
}

impl DigitGenerator for BracketedGenerator {
    fn top(&self) -> i64 {
        self.top
    }

    fn next_digit(&mut self) -> Result<Digit> {
        let i = self.next;
        let k = (-i).max(1) as u32;
        if self.current.as_ref().is_none_or(|(have, _)| *have != k) {
            let b = self.checked_bracket(k)?;
            // Terms share their digits down to -k with the endpoint nearer 0.
            let near = if b.lower.is_negative() { b.upper } else { b.lower };
            self.current = Some((k, near));
        }
        let near = &self.current.as_ref().expect("bracket loaded").1;
        let d = near.digit_at(i);
        if self.sign == Sign::Zero && d.value() != 0 {
            self.sign = near.sign();
        }
        self.next -= 1;
        Ok(d)
    }

    fn sign(&self) -> Sign {
        self.sign
    }
}

/// The formal limit of a sequence squeezed between brackets
/// `lower(k) < t(n) < upper(k)` for `n > valid_from(k)`.
///
/// The brackets must be strict: with `≤` the terms may sit on a jump and
/// have no formal limit.
pub fn formal_limit_bracketed(
    s: &ApproxSequence,
    brackets: impl Fn(u32) -> Result<BracketPair> + Send + Sync + 'static,
) -> Result<Decimal> {
    let brackets: BracketFn = Arc::new(brackets);
    let first = brackets(1)?;
    let reach = first.lower.abs().max(first.upper.abs());
    let top = reach.msd_index().unwrap_or(0).max(0);
    let generator = BracketedGenerator {
        seq: s.clone(),
        brackets,
        top,
        next: top,
        sign: Sign::Zero,
        current: None,
    };
    let d = Decimal::from_generator(generator);
    d.try_digit_at(-1)?;
    Ok(d)
}
