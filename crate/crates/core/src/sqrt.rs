//! Square roots as digit streams, and the decimal irrationality checks.
//!
//! The root of `c >= 0` is the supremum of the terminating decimals whose
//! square does not exceed `c`. Its digits are chosen greedily: each is the
//! largest digit keeping the square of the prefix at or below `c`, decided by
//! exact integer comparison.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::decimal::{Decimal, Digit, DigitGenerator, Sign, TailClass};
use crate::error::{Error, Result};
use crate::limits::{formal_limit_monotone, hybrid_limit, ApproxSequence, Budget, Direction, MonotoneBound};
use crate::order::{real_class, RealClass};
use crate::periodic::{mul_p, PeriodicDecimal};
use crate::real_arith::formal_mul;
use crate::terminating::{pow10, TerminatingDecimal};

/// Greedy root extraction for a nonnegative target `c = num / den`.
///
/// After each step the prefix `p` satisfies `p² <= c < (p + 10^i)²`, where `i`
/// is the index of the last emitted digit.
#[derive(Debug, Clone)]
pub struct SqrtState {
    target: PeriodicDecimal,
    num: BigUint,
    den: BigUint,
    // prefix = digits · 10^next+1
    digits: BigUint,
    next: i64,
    exact: bool,
}

impl SqrtState {
    pub fn new(target: &PeriodicDecimal) -> Result<Self> {
        if target.sign() == Sign::Negative {
            return Err(Error::NegativeInput);
        }
        let num = target.numerator().into_parts().1;
        let den = target.denominator().clone();
        let whole = (&num / &den).sqrt();
        let top = if whole.is_zero() {
            -1
        } else {
            whole.to_string().len() as i64 - 1
        };
        Ok(SqrtState {
            target: target.clone(),
            exact: num.is_zero(),
            num,
            den,
            digits: BigUint::zero(),
            next: top,
        })
    }

    pub fn target(&self) -> &PeriodicDecimal {
        &self.target
    }

    /// Index of the next digit to be chosen.
    pub fn next_index(&self) -> i64 {
        self.next
    }

    /// The digits chosen so far, as a terminating decimal.
    pub fn prefix(&self) -> TerminatingDecimal {
        TerminatingDecimal::new(BigInt::from(self.digits.clone()), -(self.next + 1))
    }

    /// Compares `(m · 10^i)²` with the target: `m² · den · 10^(2i)` against `num`.
    fn square_fits(&self, m: &BigUint, i: i64) -> bool {
        let sq = m * m * &self.den;
        if i >= 0 {
            sq * pow10(2 * i as u64) <= self.num
        } else {
            sq <= &self.num * pow10((-2 * i) as u64)
        }
    }

    fn square_equals(&self, m: &BigUint, i: i64) -> bool {
        let sq = m * m * &self.den;
        if i >= 0 {
            sq * pow10(2 * i as u64) == self.num
        } else {
            sq == &self.num * pow10((-2 * i) as u64)
        }
    }

    /// Chooses the digit at [`next_index`](Self::next_index).
    pub fn step(&mut self) -> Digit {
        let i = self.next;
        let base = &self.digits * 10u32;
        let (mut lo, mut hi) = (0u32, 9u32);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if self.square_fits(&(&base + mid), i) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        self.digits = base + lo;
        self.next -= 1;
        if !self.exact && self.square_equals(&self.digits, i) {
            self.exact = true;
        }
        Digit::new(lo as u8).expect("binary search stays within 0..=9")
    }

    /// Whether `p² <= c < (p + 10^i)²` holds for the current prefix `p`.
    pub fn bracket_holds(&self) -> bool {
        let i = self.next + 1;
        let p = self.prefix();
        let up = &p + &TerminatingDecimal::pow10(i);
        let c = &self.target;
        let sq = |t: &TerminatingDecimal| PeriodicDecimal::from(t * t);
        sq(&p).cmp_value(c).is_le() && c.cmp_value(&sq(&up)).is_lt()
    }

    /// True once the prefix squares exactly to the target.
    pub fn is_exact(&self) -> bool {
        self.exact
    }
}

struct SqrtGenerator {
    state: SqrtState,
    top: i64,
}

impl DigitGenerator for SqrtGenerator {
    fn top(&self) -> i64 {
        self.top
    }

    fn next_digit(&mut self) -> Result<Digit> {
        Ok(self.state.step())
    }

    fn sign(&self) -> Sign {
        Sign::Positive
    }

    fn known_tail(&self) -> Option<TailClass> {
        self.state.is_exact().then_some(TailClass::TailZeros)
    }

    fn squares_below(&self) -> Option<TerminatingDecimal> {
        if self.state.is_exact() {
            return None;
        }
        let target = self.state.target();
        if exact_sqrt(target).is_some() {
            return None;
        }
        target.value_as_terminating()
    }
}

/// The nonnegative square root of `c` as a lazy decimal.
///
/// ```
/// use decreal::sqrt::sqrt_stream;
/// let root = sqrt_stream(&"2".parse().unwrap()).unwrap();
/// assert_eq!(root.truncate(10).to_string(), "1.4142135623");
/// ```
pub fn sqrt_stream(c: &PeriodicDecimal) -> Result<Decimal> {
    let state = SqrtState::new(c)?;
    if c.is_zero() {
        return Ok(Decimal::zero());
    }
    let top = state.next_index();
    Ok(Decimal::from_generator(SqrtGenerator { state, top }))
}

/// The square root within the periodic decimals, if there is one.
pub fn exact_sqrt(c: &PeriodicDecimal) -> Option<PeriodicDecimal> {
    if c.sign() == Sign::Negative {
        return None;
    }
    let num = c.numerator().into_parts().1;
    let den = c.denominator();
    let (rn, rd) = (num.sqrt(), den.sqrt());
    (&rn * &rn == num && &rd * &rd == *den)
        .then(|| PeriodicDecimal::from_signed_ratio(BigInt::from(rn), rd))
}

/// `⌊√(c|2n)⌋` to `n` places, a Cauchy sequence converging to `√c` for any
/// `c >= 0`: each term is within `2·10^-n` of the root.
pub fn sqrt_sequence(c: &Decimal) -> ApproxSequence {
    let source = c.clone();
    let s = ApproxSequence::new(
        move |n| {
            let t = source.try_truncate(2 * n as i64)?;
            if t.is_negative() {
                return Err(Error::NegativeInput);
            }
            let (v, scale) = t.parts();
            let shift = 2 * n as i64 - scale;
            let v = v.magnitude().clone();
            let radicand = if shift >= 0 {
                v * pow10(shift as u64)
            } else {
                v / pow10((-shift) as u64)
            };
            Ok(TerminatingDecimal::new(BigInt::from(radicand.sqrt()), n as i64))
        },
        |k| k as u64 + 1,
        crate::limits::Contract::Cauchy,
    );
    match c.as_periodic().and_then(exact_sqrt) {
        Some(root) => s.with_candidate(root),
        None => s,
    }
}

/// `√α`: exact when the root is periodic, a digit stream for exact
/// non-squares, and a hybrid limit for lazy classes.
pub fn sqrt_class(a: &RealClass, budget: Budget) -> Result<RealClass> {
    match a.as_exact() {
        Some(x) => match exact_sqrt(x) {
            Some(root) => Ok(RealClass::from(root)),
            None => Ok(real_class(&sqrt_stream(x)?)),
        },
        None => hybrid_limit(&sqrt_sequence(&a.representative()), budget),
    }
}

/// `flim (d|n)²` for `d >= 0`.
///
/// For a root of a terminating non-square `c` the squares stay strictly below
/// `c`, and the limit is the 𝕋₉ member of `c`: the square of the root of 2
/// is `1.999…`, not 2.
pub fn square_of_truncations(d: &Decimal, budget: Budget) -> Result<Decimal> {
    if d.sign_within(budget.depth)? == Some(Sign::Negative) {
        return Err(Error::NegativeInput);
    }
    if d.is_finitely_represented() || d.squares_below().is_some() {
        return formal_mul(d, d, budget);
    }
    let top = d.try_truncate(1)? + TerminatingDecimal::one();
    let seq = ApproxSequence::truncations(d).mul(&ApproxSequence::truncations(d))?;
    formal_limit_monotone(&seq, Direction::Nondecreasing, MonotoneBound::Exclusive(&top * &top), budget)
}

/// Whether the last nonzero digit of `c > 0` is 2, 3, 7 or 8. Such a `c` is
/// not the square of any ultimately periodic decimal.
pub fn residue_obstruction(c: &TerminatingDecimal) -> Result<bool> {
    if !c.is_positive() {
        return Err(Error::NonpositiveInput);
    }
    Ok(matches!(c.last_nonzero_digit()?.value(), 2 | 3 | 7 | 8))
}

/// Shape limits for [`exhaustive_square_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_int_digits: usize,
    pub max_preperiod: usize,
    pub max_period: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquareSearch {
    /// Every nonnegative decimal within the bounds whose square lies in the
    /// target class, in increasing order.
    Witness(Vec<PeriodicDecimal>),
    NoSolution,
}

const SEARCH_LIMIT: u128 = 10_000_000;

fn for_each_word(len: usize, f: &mut impl FnMut(&[u8])) {
    let mut word = vec![0u8; len];
    loop {
        f(&word);
        let mut j = len;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            if word[j] < 9 {
                word[j] += 1;
                word[j + 1..].iter_mut().for_each(|d| *d = 0);
                break;
            }
        }
    }
}

fn is_primitive(word: &[u8]) -> bool {
    let n = word.len();
    (1..n).filter(|p| n.is_multiple_of(*p)).all(|p| word.chunks(p).any(|c| c != &word[..p]))
}

/// Enumerates the canonical nonnegative periodic decimals within `bounds`
/// (primitive repetend, minimal preperiod, no leading zeros; both members of
/// every jump) and squares each one exactly.
pub fn exhaustive_square_search(target: &RealClass, bounds: SearchBounds) -> Result<SquareSearch> {
    let goal = target.as_exact().ok_or(Error::NotFinitelyRepresented)?;
    let mut size: u128 = 0;
    for i in 0..=bounds.max_int_digits {
        for f in 0..=bounds.max_preperiod {
            for p in 1..=bounds.max_period {
                let positions = (i + f + p) as u32;
                size = size.saturating_add(10u128.saturating_pow(positions));
            }
        }
    }
    if size > SEARCH_LIMIT {
        return Err(Error::BoundsTooLarge { size });
    }
    let mut found = Vec::new();
    for p in 1..=bounds.max_period {
        for_each_word(p, &mut |rep| {
            if !is_primitive(rep) {
                return;
            }
            for f in 0..=bounds.max_preperiod {
                for_each_word(f, &mut |pre| {
                    if pre.last() == rep.last() {
                        return;
                    }
                    for i in 0..=bounds.max_int_digits {
                        for_each_word(i, &mut |int| {
                            if int.first() == Some(&0) {
                                return;
                            }
                            let x = PeriodicDecimal::from_parts(false, int, pre, rep)
                                .expect("enumerated digits are valid");
                            if mul_p(&x, &x).value_eq(goal) {
                                found.push(x);
                            }
                        });
                    }
                });
            }
        });
    }
    found.sort();
    found.dedup();
    Ok(if found.is_empty() {
        SquareSearch::NoSolution
    } else {
        SquareSearch::Witness(found)
    })
}
