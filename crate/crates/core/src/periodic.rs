//! Ultimately periodic decimals and their exact field arithmetic.
//!
//! Every ultimately periodic decimal is a quotient of an integer by some
//! `9^(a)0^(b) = 10^b (10^a - 1)`. Values are kept internally as a reduced
//! ratio of integers; the digit form (integer digits, preperiod, repetend) is
//! derived on demand by long division. Terminating values remember which jump
//! member they are, so `1` and `0.(9)` stay distinct decimals.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::decimal::{Decimal, Digit, Sign, TailClass};
use crate::error::{Error, Result};
use crate::numtheory::{order_of_ten, order_of_ten_at_most, split_tens};
use crate::terminating::{pow10, ScaledInteger, TerminatingDecimal};

/// Integer digits, preperiod and repetend of a periodic decimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitForm {
    pub integer: Vec<u8>,
    pub preperiod: Vec<u8>,
    pub repetend: Vec<u8>,
}

/// How repetends are written out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RepetendStyle {
    /// `0.1(6)`
    #[default]
    Parens,
    /// `0.1666...`
    Ellipsis,
}

/// An ultimately periodic decimal.
#[derive(Clone)]
pub struct PeriodicDecimal {
    negative: bool,
    num: BigUint,
    den: BigUint,
    // Set for the 𝕋₉ member of a terminating value.
    nines: bool,
    form: OnceLock<DigitForm>,
}

fn digits_of(n: &BigUint) -> Vec<u8> {
    if n.is_zero() {
        return Vec::new();
    }
    n.to_str_radix(10).bytes().map(|b| b - b'0').collect()
}

fn from_digits(digits: &[u8]) -> BigUint {
    digits
        .iter()
        .fold(BigUint::zero(), |acc, &d| acc * 10u32 + d as u32)
}

fn is_power_of_ten_denominator(den: &BigUint) -> bool {
    split_tens(den).2.is_one()
}

impl PeriodicDecimal {
    fn from_ratio(negative: bool, num: BigUint, den: BigUint, nines: bool) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return PeriodicDecimal::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = (num / &g, den / &g);
        let nines = nines && is_power_of_ten_denominator(&den);
        PeriodicDecimal {
            negative,
            num,
            den,
            nines,
            form: OnceLock::new(),
        }
    }

    pub(crate) fn from_signed_ratio(num: BigInt, den: BigUint) -> Self {
        let negative = num.is_negative();
        PeriodicDecimal::from_ratio(negative, num.into_parts().1, den, false)
    }

    pub fn zero() -> Self {
        PeriodicDecimal {
            negative: false,
            num: BigUint::zero(),
            den: BigUint::one(),
            nines: false,
            form: OnceLock::new(),
        }
    }

    pub fn one() -> Self {
        PeriodicDecimal::from(TerminatingDecimal::one())
    }

    /// Builds `±integer.preperiod(repetend)` from its digits.
    pub fn from_parts(
        negative: bool,
        integer: &[u8],
        preperiod: &[u8],
        repetend: &[u8],
    ) -> Result<Self> {
        if let Some(&bad) = integer
            .iter()
            .chain(preperiod)
            .chain(repetend)
            .find(|&&d| d > 9)
        {
            return Err(Error::InvalidDigit(bad));
        }
        if repetend.is_empty() {
            return Err(Error::EmptyRepetend);
        }
        let f = preperiod.len() as u64;
        let p = repetend.len() as u64;
        let head = from_digits(integer) * pow10(f) + from_digits(preperiod);
        let nines_p = pow10(p) - 1u32;
        let num = head * &nines_p + from_digits(repetend);
        let den = pow10(f) * nines_p;
        let all_nines = repetend.iter().all(|&d| d == 9);
        Ok(PeriodicDecimal::from_ratio(negative, num, den, all_nines))
    }

    pub fn sign(&self) -> Sign {
        if self.num.is_zero() {
            Sign::Zero
        } else if self.negative {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the value has a terminating expansion (either jump member).
    pub fn has_terminating_value(&self) -> bool {
        is_power_of_ten_denominator(&self.den)
    }

    /// Member of 𝕋₀.
    pub fn is_terminating_t0(&self) -> bool {
        !self.nines && self.has_terminating_value()
    }

    /// Member of 𝕋₉.
    pub fn is_nines(&self) -> bool {
        self.nines
    }

    pub fn tail_class(&self) -> TailClass {
        if self.nines {
            TailClass::TailNines
        } else if self.has_terminating_value() {
            TailClass::TailZeros
        } else {
            TailClass::Other
        }
    }

    /// The terminating decimal with the same value, if there is one.
    pub fn value_as_terminating(&self) -> Option<TerminatingDecimal> {
        if !self.has_terminating_value() {
            return None;
        }
        let (twos, fives, _) = split_tens(&self.den);
        let k = twos.max(fives);
        let scaled = &self.num * pow10(k) / &self.den;
        let value = BigInt::from_biguint(self.big_sign(), scaled);
        Some(TerminatingDecimal::new(value, k as i64))
    }

    pub(crate) fn terminating_value(&self) -> TerminatingDecimal {
        self.value_as_terminating()
            .expect("terminating value of a non-terminating decimal")
    }

    /// The 𝕋₀ member with the same value (itself unless this is in 𝕋₉).
    pub fn t0_member(&self) -> Self {
        if !self.nines {
            return self.clone();
        }
        PeriodicDecimal::from_ratio(self.negative, self.num.clone(), self.den.clone(), false)
    }

    /// The 𝕋₉ member with the same value, for nonzero terminating values.
    pub fn t9_member(&self) -> Option<Self> {
        if self.is_zero() || !self.has_terminating_value() {
            return None;
        }
        Some(PeriodicDecimal::from_ratio(
            self.negative,
            self.num.clone(),
            self.den.clone(),
            true,
        ))
    }

    fn big_sign(&self) -> BigSign {
        match self.sign() {
            Sign::Negative => BigSign::Minus,
            Sign::Zero => BigSign::NoSign,
            Sign::Positive => BigSign::Plus,
        }
    }

    /// Numerator of the value in lowest terms, carrying the sign. Both jump
    /// members share one fraction.
    pub fn numerator(&self) -> BigInt {
        BigInt::from_biguint(self.big_sign(), self.num.clone())
    }

    /// Denominator of the value in lowest terms.
    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    /// Value comparison, ignoring which jump member each side is.
    pub(crate) fn cmp_value(&self, other: &Self) -> Ordering {
        let a = self.numerator() * BigInt::from(other.den.clone());
        let b = other.numerator() * BigInt::from(self.den.clone());
        a.cmp(&b)
    }

    pub(crate) fn value_eq(&self, other: &Self) -> bool {
        self.negative == other.negative && self.num == other.num && self.den == other.den
    }

    /// Index of the leading nonzero digit.
    pub fn msd_index(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        if self.nines {
            let v = self.terminating_value().abs();
            let lsd = v.lsd_index().unwrap_or(0);
            return (v - TerminatingDecimal::pow10(lsd - 1)).msd_index();
        }
        let q = &self.num / &self.den;
        if !q.is_zero() {
            return Some(digits_of(&q).len() as i64 - 1);
        }
        let mut j = 1i64;
        let mut scaled = &self.num * 10u32;
        while scaled < self.den {
            scaled *= 10u32;
            j += 1;
        }
        Some(-j)
    }

    pub fn digit_at(&self, i: i64) -> Digit {
        if self.is_zero() {
            return Digit::ZERO;
        }
        if let Some(form) = self.form.get() {
            return form_digit(form, i);
        }
        if self.nines {
            let v = self.terminating_value().abs();
            let lsd = v.lsd_index().unwrap_or(0);
            return match i.cmp(&lsd) {
                Ordering::Greater => v.digit_at(i),
                Ordering::Equal => Digit::new(v.digit_at(i).value() - 1).unwrap_or(Digit::ZERO),
                Ordering::Less => Digit::NINE,
            };
        }
        let q = if i >= 0 {
            &self.num / (&self.den * pow10(i as u64))
        } else {
            &self.num * pow10((-i) as u64) / &self.den
        };
        let d = (q % 10u32).to_u8().unwrap_or(0);
        Digit::new(d).unwrap_or(Digit::ZERO)
    }

    /// The n-truncation `self|n`.
    pub fn truncate(&self, n: i64) -> TerminatingDecimal {
        if self.is_zero() {
            return TerminatingDecimal::zero();
        }
        if self.nines {
            let v = self.terminating_value().abs();
            let lsd = v.lsd_index().unwrap_or(0);
            let m = n.max(-lsd) + 1;
            let below = (v - TerminatingDecimal::pow10(-m)).truncate(n);
            return if self.negative { -below } else { below };
        }
        let scaled = if n >= 0 {
            &self.num * pow10(n as u64) / &self.den
        } else {
            &self.num / (&self.den * pow10((-n) as u64))
        };
        TerminatingDecimal::new(BigInt::from_biguint(self.big_sign(), scaled), n)
    }

    /// `10^k · self`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let (num, den) = if k >= 0 {
            (&self.num * pow10(k as u64), self.den.clone())
        } else {
            (self.num.clone(), &self.den * pow10((-k) as u64))
        };
        PeriodicDecimal::from_ratio(self.negative, num, den, self.nines)
    }

    pub fn negate(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = self.clone();
        out.negative = !out.negative;
        out
    }

    pub fn abs(&self) -> Self {
        if self.negative {
            self.negate()
        } else {
            self.clone()
        }
    }

    /// Length of the (minimal) preperiod after the decimal point.
    pub fn preperiod_len(&self) -> u64 {
        let (twos, fives, _) = split_tens(&self.den);
        twos.max(fives)
    }

    /// Length of the primitive repetend.
    pub fn period_len(&self) -> u64 {
        order_of_ten(&split_tens(&self.den).2)
    }

    /// The period length if it does not exceed `limit`. The period can be
    /// close to the denominator, so this is the cheap check to make before
    /// rendering.
    pub fn period_len_at_most(&self, limit: u64) -> Option<u64> {
        order_of_ten_at_most(&split_tens(&self.den).2, limit)
    }

    /// Integer digits, preperiod and repetend of the canonical form.
    pub fn digit_form(&self) -> &DigitForm {
        self.form.get_or_init(|| self.compute_form())
    }

    pub fn integer_digits(&self) -> &[u8] {
        &self.digit_form().integer
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.digit_form().preperiod
    }

    pub fn repetend(&self) -> &[u8] {
        &self.digit_form().repetend
    }

    fn compute_form(&self) -> DigitForm {
        if self.nines {
            let v = self.terminating_value().abs();
            let lsd = v.lsd_index().unwrap_or(0);
            let w = &v - &TerminatingDecimal::pow10(lsd);
            let frac_len = (-lsd).max(0);
            let whole = if lsd >= 0 { &v - &TerminatingDecimal::one() } else { w.truncate(0) };
            let integer = digits_of(whole.to_scaled(0).map(|s| s.value).unwrap_or_default().magnitude());
            let preperiod = (1..=frac_len).map(|j| w.digit_at(-j).value()).collect();
            return DigitForm {
                integer,
                preperiod,
                repetend: vec![9],
            };
        }
        let f = self.preperiod_len();
        let p = if self.has_terminating_value() {
            1
        } else {
            self.period_len()
        };
        let (q, mut r) = self.num.div_rem(&self.den);
        let mut frac = Vec::with_capacity((f + p) as usize);
        for _ in 0..f + p {
            r *= 10u32;
            let (d, rest) = r.div_rem(&self.den);
            frac.push(d.to_u8().unwrap_or(0));
            r = rest;
        }
        let repetend = frac.split_off(f as usize);
        DigitForm {
            integer: digits_of(&q),
            preperiod: frac,
            repetend,
        }
    }

    /// Renders the decimal with the chosen repetend notation. The repetend is
    /// written out in full; see [`period_len_at_most`](Self::period_len_at_most).
    pub fn render(&self, style: RepetendStyle) -> String {
        if self.is_terminating_t0() {
            return self.terminating_value().to_string();
        }
        let form = self.digit_form();
        let mut out = String::new();
        if self.negative {
            out.push('-');
        }
        if form.integer.is_empty() {
            out.push('0');
        }
        out.extend(form.integer.iter().map(|&d| (b'0' + d) as char));
        out.push('.');
        out.extend(form.preperiod.iter().map(|&d| (b'0' + d) as char));
        let rep: String = form.repetend.iter().map(|&d| (b'0' + d) as char).collect();
        match style {
            RepetendStyle::Parens => {
                out.push('(');
                out.push_str(&rep);
                out.push(')');
            }
            RepetendStyle::Ellipsis => {
                for _ in 0..3 {
                    out.push_str(&rep);
                }
                out.push_str("...");
            }
        }
        out
    }
}

fn form_digit(form: &DigitForm, i: i64) -> Digit {
    let d = if i >= 0 {
        let len = form.integer.len() as i64;
        if i >= len {
            0
        } else {
            form.integer[(len - 1 - i) as usize]
        }
    } else {
        let j = (-i - 1) as usize;
        if j < form.preperiod.len() {
            form.preperiod[j]
        } else {
            let k = (j - form.preperiod.len()) % form.repetend.len();
            form.repetend[k]
        }
    };
    Digit::new(d).unwrap_or(Digit::ZERO)
}

impl From<TerminatingDecimal> for PeriodicDecimal {
    fn from(t: TerminatingDecimal) -> Self {
        let (num, den) = t.to_ratio();
        PeriodicDecimal::from_signed_ratio(num, den)
    }
}

impl From<i64> for PeriodicDecimal {
    fn from(v: i64) -> Self {
        PeriodicDecimal::from(TerminatingDecimal::from(v))
    }
}

impl PartialEq for PeriodicDecimal {
    fn eq(&self, other: &Self) -> bool {
        self.value_eq(other) && self.nines == other.nines
    }
}

impl Eq for PeriodicDecimal {}

impl Hash for PeriodicDecimal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.negative.hash(state);
        self.num.hash(state);
        self.den.hash(state);
        self.nines.hash(state);
    }
}

/// The lexicographic order of decimals, adjusted for signs: values first,
/// then for equal values the 𝕋₉ member precedes the 𝕋₀ member when positive
/// and follows it when negative.
impl Ord for PeriodicDecimal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other).then_with(|| {
            let by_tail = other.nines.cmp(&self.nines);
            if self.negative {
                by_tail.reverse()
            } else {
                by_tail
            }
        })
    }
}

impl PartialOrd for PeriodicDecimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PeriodicDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RepetendStyle::Parens))
    }
}

impl fmt::Debug for PeriodicDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({self})")
    }
}

/// `9^(a)0^(b)`: a nines followed by b zeros.
pub fn nines_zeros(a: u64, b: u64) -> Result<TerminatingDecimal> {
    if a == 0 {
        return Err(Error::ZeroExponent);
    }
    Ok(TerminatingDecimal::new(
        BigInt::from(pow10(a) - 1u32),
        -(b as i64),
    ))
}

fn nines_zeros_int(a: u64) -> BigUint {
    pow10(a) * (pow10(a) - 1u32)
}

/// Least `a >= 1` with `r | 9^(a)0^(a)`.
///
/// `r` is split into a part `s` built from the primes 2 and 5 and a part `t`
/// coprime to 10. `s` divides `10^a` once `a` reaches its largest exponent,
/// and `t` divides `10^a - 1` exactly when the order of 10 modulo `t`
/// divides `a`.
///
/// ```
/// use decreal::{divisibility_exponent, ScaledInteger};
/// assert_eq!(divisibility_exponent(&ScaledInteger::integer(7)).unwrap(), 6);
/// assert_eq!(divisibility_exponent(&ScaledInteger::integer(10)).unwrap(), 1);
/// ```
pub fn divisibility_exponent(r: &ScaledInteger) -> Result<u64> {
    let t = r.to_terminating();
    if t.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !t.is_integer() {
        return Err(Error::InsufficientScale { scale: r.scale });
    }
    let (num, _) = t.to_ratio();
    let (twos, fives, rest) = split_tens(num.magnitude());
    let need = twos.max(fives).max(1);
    let order = order_of_ten(&rest);
    Ok(need.div_ceil(order) * order)
}

/// `(a, v)` with `9^(a)0^(a) · x = v` an integer; `a` is the least multiple of
/// the period exceeding the preperiod length.
pub fn scale_to_integer(x: &PeriodicDecimal) -> (u64, ScaledInteger) {
    let p = x.period_len();
    let f = x.preperiod_len();
    let a = (f / p + 1) * p;
    let scaled = nines_zeros_int(a) * &x.num;
    let (v, rem) = scaled.div_rem(&x.den);
    debug_assert!(rem.is_zero());
    (a, ScaledInteger::integer(BigInt::from_biguint(x.big_sign(), v)))
}

fn combine(num: BigInt, den: BigUint) -> PeriodicDecimal {
    PeriodicDecimal::from_signed_ratio(num, den)
}

/// Exact sum. Terminating results are returned as the 𝕋₀ member.
pub fn add_p(x: &PeriodicDecimal, y: &PeriodicDecimal) -> PeriodicDecimal {
    let xd = BigInt::from(x.den.clone());
    let yd = BigInt::from(y.den.clone());
    combine(
        x.numerator() * &yd + y.numerator() * &xd,
        &x.den * &y.den,
    )
}

pub fn sub_p(x: &PeriodicDecimal, y: &PeriodicDecimal) -> PeriodicDecimal {
    add_p(x, &y.negate())
}

pub fn mul_p(x: &PeriodicDecimal, y: &PeriodicDecimal) -> PeriodicDecimal {
    combine(
        x.numerator() * y.numerator(),
        &x.den * &y.den,
    )
}

pub fn inv_p(x: &PeriodicDecimal) -> Result<PeriodicDecimal> {
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let num = BigInt::from_biguint(x.big_sign(), x.den.clone());
    Ok(combine(num, x.num.clone()))
}

pub fn div_p(x: &PeriodicDecimal, y: &PeriodicDecimal) -> Result<PeriodicDecimal> {
    Ok(mul_p(x, &inv_p(y)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureOp {
    Add,
    Sub,
    Mul,
    Inv,
}

/// An integer `value` together with the scaling `multiplier` (a product of
/// `9^(a)0^(a)` factors) such that the result equals `value / multiplier`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureCertificate {
    pub multiplier: ScaledInteger,
    pub value: ScaledInteger,
}

impl ClosureCertificate {
    /// `value / multiplier` expanded by long division.
    pub fn quotient(&self) -> PeriodicDecimal {
        let den = self.multiplier.value.magnitude().clone();
        let (q, mut r) = self.value.value.magnitude().div_rem(&den);
        let (twos, fives, rest) = split_tens(&(&den / r.gcd(&den)));
        let f = twos.max(fives);
        let p = order_of_ten(&rest);
        let mut digits = Vec::with_capacity((f + p) as usize);
        for _ in 0..f + p {
            r *= 10u32;
            let (d, rest) = r.div_rem(&den);
            digits.push(d.to_u8().unwrap_or(0));
            r = rest;
        }
        let repetend = digits.split_off(f as usize);
        let negative = self.value.value.is_negative() != self.multiplier.value.is_negative();
        PeriodicDecimal::from_parts(negative, &digits_of(&q), &digits, &repetend)
            .map(|x| x.t0_member())
            .expect("long division digits are valid")
    }
}

/// Carries out the scaling argument for closure of ℙ under `op`: both
/// operands are multiplied into integers by `9^(c)0^(c)` factors, combined as
/// integers, and the certificate records the integer and the multiplier.
/// `y` is ignored for [`ClosureOp::Inv`].
pub fn closure_certificate(
    x: &PeriodicDecimal,
    y: &PeriodicDecimal,
    op: ClosureOp,
) -> Result<ClosureCertificate> {
    let too_large = Error::CertificateTooLarge { limit: MAX_CERTIFICATE_EXPONENT };
    let period = |z: &PeriodicDecimal| z.period_len_at_most(MAX_CERTIFICATE_EXPONENT).ok_or(too_large.clone());
    // Least multiple of the period exceeding the preperiod length.
    let exponent = |p: u64, f: u64| -> Result<u64> {
        let c = (f / p + 1) * p;
        if c > MAX_CERTIFICATE_EXPONENT {
            return Err(too_large.clone());
        }
        Ok(c)
    };
    let exact = |c: u64, z: &PeriodicDecimal| -> BigInt {
        let (v, rem) = (nines_zeros_int(c) * &z.num).div_rem(&z.den);
        debug_assert!(rem.is_zero());
        BigInt::from_biguint(z.big_sign(), v)
    };
    match op {
        ClosureOp::Add | ClosureOp::Sub => {
            let p = period(x)?.lcm(&period(y)?);
            let c = exponent(p, x.preperiod_len().max(y.preperiod_len()))?;
            let (a, b) = (exact(c, x), exact(c, y));
            let value = if op == ClosureOp::Add { a + b } else { a - b };
            Ok(ClosureCertificate {
                multiplier: ScaledInteger::integer(BigInt::from(nines_zeros_int(c))),
                value: ScaledInteger::integer(value),
            })
        }
        ClosureOp::Mul => {
            let a = exponent(period(x)?, x.preperiod_len())?;
            let b = exponent(period(y)?, y.preperiod_len())?;
            Ok(ClosureCertificate {
                multiplier: ScaledInteger::integer(BigInt::from(
                    nines_zeros_int(a) * nines_zeros_int(b),
                )),
                value: ScaledInteger::integer(exact(a, x) * exact(b, y)),
            })
        }
        ClosureOp::Inv => {
            if x.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let a = exponent(period(x)?, x.preperiod_len())?;
            let va = exact(a, x);
            let na = BigInt::from(nines_zeros_int(a));
            // The inverse is na / va; d is chosen so that 9^(d)0^(d) is a
            // multiple of the reduced denominator.
            let g = na.gcd(&va);
            let (top, den) = (&na / &g, &va / &g);
            let (twos, fives, rest) = split_tens(den.magnitude());
            let order = order_of_ten_at_most(&rest, MAX_CERTIFICATE_EXPONENT).ok_or(too_large.clone())?;
            let d = exponent(order, twos.max(fives).max(1) - 1)?;
            let nd = BigInt::from(nines_zeros_int(d));
            let cofactor = &nd / &den;
            Ok(ClosureCertificate {
                multiplier: ScaledInteger::integer(nd),
                value: ScaledInteger::integer(top * cofactor),
            })
        }
    }
}

/// Largest `a` for which [`closure_certificate`] builds a `9^(a)0^(a)` factor.
pub const MAX_CERTIFICATE_EXPONENT: u64 = 20_000;

/// Outcome of a bounded period scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeriodDetection {
    Found(PeriodicDecimal),
    /// No period within the bounds. This is not a proof of aperiodicity.
    NotFoundWithinBounds,
}

/// Looks for an ultimate period of at most `max_period` among the first
/// `max_digits` digits of `d`, starting at the integer part.
///
/// A period `p` is accepted when the scanned tail is `p`-periodic over at
/// least three repetitions and at least half of the window; the smallest
/// such `p`, and then the earliest start, is reported.
pub fn detect_period(d: &Decimal, max_digits: usize, max_period: usize) -> Result<PeriodDetection> {
    let top = d.top_index().max(0);
    let digits: Vec<u8> = (0..max_digits as i64)
        .map(|j| d.try_digit_at(top - j).map(Digit::value))
        .collect::<Result<_>>()?;
    let len = digits.len();
    let negative = d.sign_within(max_digits as u32)? == Some(Sign::Negative);
    for p in 1..=max_period.min(len) {
        let mut start = len - p;
        while start > 0 && digits[start - 1] == digits[start - 1 + p] {
            start -= 1;
        }
        let needed = (3 * p).max(len.div_ceil(2));
        // The repetend must sit after the decimal point.
        let int_end = top as usize + 1;
        let start = start.max(int_end);
        if len < start + needed {
            continue;
        }
        let found = PeriodicDecimal::from_parts(
            negative,
            &digits[..int_end],
            &digits[int_end..start],
            &digits[start..start + p],
        )?;
        return Ok(PeriodDetection::Found(found));
    }
    Ok(PeriodDetection::NotFoundWithinBounds)
}
