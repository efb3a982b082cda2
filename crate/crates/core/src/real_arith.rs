//! Field operations on real numbers, sums and products of decimals, and the
//! long-division reciprocal.
//!
//! The sum and product of classes are hybrid limits of truncation sums and
//! products. Exact classes are combined by periodic arithmetic; any lazy
//! operand sends the computation through [`hybrid_limit`].

use crate::decimal::{Decimal, Leading, Sign};
use crate::error::{Error, Result};
use crate::limits::{
    formal_limit_bracketed, formal_limit_monotone, hybrid_limit, ApproxSequence, BracketPair,
    Budget, Direction, MonotoneBound,
};
use crate::order::{real_class, RealClass};
use crate::periodic::{add_p, inv_p, mul_p, PeriodicDecimal};
use crate::terminating::{pow10_int, TerminatingDecimal};

fn pow10(k: i64) -> TerminatingDecimal {
    TerminatingDecimal::pow10(k)
}

/// `c|n + d|n` for representatives of the two classes.
pub fn sum_sequence(a: &RealClass, b: &RealClass) -> ApproxSequence {
    ApproxSequence::truncations(&a.representative())
        .add(&ApproxSequence::truncations(&b.representative()))
}

/// `c|n · d|n` for representatives of the two classes.
pub fn product_sequence(a: &RealClass, b: &RealClass) -> Result<ApproxSequence> {
    ApproxSequence::truncations(&a.representative())
        .mul(&ApproxSequence::truncations(&b.representative()))
}

/// `α + β` as a hybrid limit, even when both classes are exact.
pub fn add_via_limits(a: &RealClass, b: &RealClass, budget: Budget) -> Result<RealClass> {
    hybrid_limit(&sum_sequence(a, b), budget)
}

/// `α · β` as a hybrid limit, even when both classes are exact.
pub fn mul_via_limits(a: &RealClass, b: &RealClass, budget: Budget) -> Result<RealClass> {
    hybrid_limit(&product_sequence(a, b)?, budget)
}

pub fn add_with(a: &RealClass, b: &RealClass, budget: Budget) -> Result<RealClass> {
    match (a.as_exact(), b.as_exact()) {
        (Some(x), Some(y)) => Ok(RealClass::from(add_p(x, y))),
        _ => add_via_limits(a, b, budget),
    }
}

pub fn mul_with(a: &RealClass, b: &RealClass, budget: Budget) -> Result<RealClass> {
    match (a.as_exact(), b.as_exact()) {
        (Some(x), Some(y)) => Ok(RealClass::from(mul_p(x, y))),
        _ => mul_via_limits(a, b, budget),
    }
}

/// `α + β`.
///
/// ```
/// use decreal::{real_arith::add, real_class};
/// let a = real_class(&"0.2".parse().unwrap());
/// let b = real_class(&"-0.5".parse().unwrap());
/// assert_eq!(add(&a, &b).unwrap().to_string(), "{-0.3, -0.2(9)}");
/// ```
pub fn add(a: &RealClass, b: &RealClass) -> Result<RealClass> {
    add_with(a, b, Budget::default())
}

pub fn mul(a: &RealClass, b: &RealClass) -> Result<RealClass> {
    mul_with(a, b, Budget::default())
}

/// `-α = [-c]`.
pub fn neg(a: &RealClass) -> RealClass {
    match a.as_exact() {
        Some(x) => RealClass::from(x.negate()),
        None => real_class(&a.representative().negate()),
    }
}

/// `α - β`, defined as `α + (-β)`.
pub fn sub(a: &RealClass, b: &RealClass) -> Result<RealClass> {
    add(a, &neg(b))
}

pub fn sub_with(a: &RealClass, b: &RealClass, budget: Budget) -> Result<RealClass> {
    add_with(a, &neg(b), budget)
}

/// One step of the long division `1 / c`: `1 = c|n · d(n) + e(n)` with
/// `0 <= e(n) < 10^-n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongDivisionState {
    pub n: u64,
    pub quotient: TerminatingDecimal,
    pub remainder: TerminatingDecimal,
    pub divisor_truncation: TerminatingDecimal,
}

impl LongDivisionState {
    /// Divides `10^N` by the integer `10^n · c|n`, where `N` is the least
    /// exponent with `10^(N-n) > 10^n · c|n`. Requires `c|n ≠ 0`.
    pub fn step(c: &Decimal, n: u64) -> Result<Self> {
        let truncation = c.try_truncate(n as i64)?;
        if truncation.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let scaled = truncation.abs().to_scaled(n as i64)?.value;
        let digits = scaled.to_string().len() as u64;
        // 10^(N-n) > scaled holds first at N - n = number of digits of scaled.
        let big_n = n + digits;
        let (q, r) = num_integer::Integer::div_rem(&pow10_int(big_n), &scaled);
        let mut quotient = TerminatingDecimal::new(q, big_n as i64 - n as i64);
        if truncation.is_negative() {
            quotient = -quotient;
        }
        Ok(LongDivisionState {
            n,
            quotient,
            remainder: TerminatingDecimal::new(r, big_n as i64),
            divisor_truncation: truncation,
        })
    }

    pub fn invariant_holds(&self) -> bool {
        &self.divisor_truncation * &self.quotient + &self.remainder == TerminatingDecimal::one()
            && !self.remainder.is_negative()
            && self.remainder < pow10(-(self.n as i64))
    }
}

/// The sequence `d(n)` of long-division quotients of `1 / c`.
///
/// With `10^k <= |c|n|` for `n >= n0`, `|d(m) - d(n)| < 2·10^(-n-k) + 10^(-n-2k)`
/// for `m > n`, which gives the modulus.
pub fn reciprocal_sequence(c: &Decimal, budget: Budget) -> Result<ApproxSequence> {
    let msd = match c.leading(budget.depth)? {
        Leading::Zero => return Err(Error::DivisionByZero),
        Leading::Undetermined => {
            return Err(Error::BudgetExhausted {
                budget: budget.depth,
                during: "locating the leading digit of a divisor",
            })
        }
        Leading::Nonzero { msd, .. } => msd,
    };
    let n0 = (-msd).max(1) as u64;
    let slack = (-msd).max(-2 * msd) + 1;
    let source = c.clone();
    let mut s = ApproxSequence::new(
        move |n| Ok(LongDivisionState::step(&source, n.max(n0))?.quotient),
        move |k| (k as i64 + slack).max(n0 as i64) as u64,
        crate::limits::Contract::Cauchy,
    );
    if let Some(x) = c.as_periodic() {
        s = s.with_candidate(inv_p(x)?);
    }
    Ok(s)
}

pub fn reciprocal_with(a: &RealClass, budget: Budget) -> Result<RealClass> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    hybrid_limit(&reciprocal_sequence(&a.representative(), budget)?, budget)
}

/// `1 / α` by the long-division algorithm.
pub fn reciprocal(a: &RealClass) -> Result<RealClass> {
    reciprocal_with(a, Budget::default())
}

fn lazy_sign(d: &Decimal, budget: Budget) -> Result<Sign> {
    d.sign_within(budget.depth)?.ok_or(Error::BudgetExhausted {
        budget: budget.depth,
        during: "determining a sign",
    })
}

/// Which member of the class of a terminating value `r` the formal limit
/// lands on: `T0` when the terms reach `|r|` from above or sit on it.
fn member_for(r: PeriodicDecimal, zeros: bool) -> Decimal {
    if zeros || r.is_zero() {
        Decimal::from(r)
    } else {
        Decimal::from(r.t9_member().expect("nonzero terminating value"))
    }
}

fn exact_formal_add(x: &PeriodicDecimal, y: &PeriodicDecimal) -> Decimal {
    let r = add_p(x, y);
    if !r.has_terminating_value() || x.is_zero() || y.is_zero() {
        return Decimal::from(if x.is_zero() { y.clone() } else if y.is_zero() { x.clone() } else { r });
    }
    if x.sign() == y.sign() {
        return member_for(r, x.is_terminating_t0() && y.is_terminating_t0());
    }
    // Past the last nonzero digit of r the tails of x and -y agree unless a
    // jump member is involved, and the side on which the terms sit is fixed.
    let value = r.terminating_value();
    let n0 = value.lsd_index().map_or(1, |l| (-l).max(1));
    let s = x.truncate(n0) + y.truncate(n0);
    member_for(r, s.cmp_abs(&value) != std::cmp::Ordering::Less)
}

fn exact_formal_mul(x: &PeriodicDecimal, y: &PeriodicDecimal) -> Decimal {
    let r = mul_p(x, y);
    if !r.has_terminating_value() {
        return Decimal::from(r);
    }
    member_for(r, x.is_terminating_t0() && y.is_terminating_t0())
}

/// `flim (c|n + d|n)`, the sum of two decimals.
///
/// Not associative: `(-0.(9) + 1) + 0.(9) = 0.(9)` while
/// `-0.(9) + (1 + 0.(9)) = 1`.
pub fn formal_add(c: &Decimal, d: &Decimal, budget: Budget) -> Result<Decimal> {
    if let (Some(x), Some(y)) = (c.as_periodic(), d.as_periodic()) {
        return Ok(exact_formal_add(x, y));
    }
    let (sc, sd) = (lazy_sign(c, budget)?, lazy_sign(d, budget)?);
    if sc == Sign::Zero {
        return Ok(d.clone());
    }
    if sd == Sign::Zero {
        return Ok(c.clone());
    }
    if sc == sd {
        let (p, q) = if sc == Sign::Negative {
            (c.negate(), d.negate())
        } else {
            (c.clone(), d.clone())
        };
        let seq = ApproxSequence::truncations(&p).add(&ApproxSequence::truncations(&q));
        let bound = p.try_truncate(1)? + q.try_truncate(1)? + pow10(-1) + pow10(-1);
        let sum = formal_limit_monotone(
            &seq,
            Direction::Nondecreasing,
            MonotoneBound::Exclusive(bound),
            budget,
        )?;
        return Ok(if sc == Sign::Negative { sum.negate() } else { sum });
    }
    let (p, q) = if sc == Sign::Positive {
        (c.clone(), d.negate())
    } else {
        (d.clone(), c.negate())
    };
    let seq = ApproxSequence::truncations(&p).sub(&ApproxSequence::truncations(&q));
    let depth = budget.depth as i64;
    formal_limit_bracketed(&seq, move |k| {
        let k_i = k as i64;
        let base = p.try_truncate(k_i)? - q.try_truncate(k_i)?;
        let step = pow10(-k_i);
        for l in k_i + 1..=k_i + depth {
            let (a, b) = (p.try_digit_at(-l)?, q.try_digit_at(-l)?);
            if a != b {
                let (lower, upper) = if a > b {
                    (base.clone(), &base + &step)
                } else {
                    (&base - &step, base.clone())
                };
                return Ok(BracketPair {
                    lower,
                    upper,
                    valid_from: l as u64,
                });
            }
        }
        Err(Error::BudgetExhausted {
            budget: depth as u32,
            during: "separating the digits of a difference",
        })
    })
}

/// `flim (c|n · d|n)`, the product of two decimals.
///
/// ```
/// use decreal::real_arith::formal_mul;
/// use decreal::{limits::Budget, Decimal};
/// let nine: Decimal = "9".parse().unwrap();
/// let ninth: Decimal = "0.(1)".parse().unwrap();
/// assert_eq!(formal_mul(&nine, &ninth, Budget::default()).unwrap().to_string(), "0.(9)");
/// ```
pub fn formal_mul(c: &Decimal, d: &Decimal, budget: Budget) -> Result<Decimal> {
    if let (Some(x), Some(y)) = (c.as_periodic(), d.as_periodic()) {
        return Ok(exact_formal_mul(x, y));
    }
    let (sc, sd) = (lazy_sign(c, budget)?, lazy_sign(d, budget)?);
    if sc == Sign::Zero || sd == Sign::Zero {
        return Ok(Decimal::zero());
    }
    let p = if sc == Sign::Negative { c.negate() } else { c.clone() };
    let q = if sd == Sign::Negative { d.negate() } else { d.clone() };
    let seq = ApproxSequence::truncations(&p).mul(&ApproxSequence::truncations(&q))?;
    let bound = match p.squares_below() {
        Some(b) if p == q => b,
        _ => (p.try_truncate(1)? + pow10(-1)) * (q.try_truncate(1)? + pow10(-1)),
    };
    let product = formal_limit_monotone(
        &seq,
        Direction::Nondecreasing,
        MonotoneBound::Exclusive(bound),
        budget,
    )?;
    Ok(if sc != sd { product.negate() } else { product })
}
