//! Terminating decimals (𝕋₀) and their ordered-ring arithmetic.
//!
//! A terminating decimal is stored as an integer together with a decimal
//! scale, `value · 10^-scale`. The integer is kept free of trailing zeros so
//! that equal decimals have equal representations; addition and
//! multiplication go through the integer image of `10^k · c`, exactly as the
//! decadic-notation correspondence between ℤ₀ and ℤ prescribes.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::decimal::{Digit, Sign};
use crate::error::{Error, ParseError, Result};

/// The integer image of a terminating decimal under `c ↦ 10^scale · c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScaledInteger {
    pub value: BigInt,
    pub scale: i64,
}

impl ScaledInteger {
    pub fn new(value: impl Into<BigInt>, scale: i64) -> Self {
        ScaledInteger {
            value: value.into(),
            scale,
        }
    }

    /// An integer (scale 0).
    pub fn integer(value: impl Into<BigInt>) -> Self {
        ScaledInteger::new(value, 0)
    }

    pub fn to_terminating(&self) -> TerminatingDecimal {
        TerminatingDecimal::new(self.value.clone(), self.scale)
    }
}

/// A decimal whose digits are eventually all zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TerminatingDecimal {
    // value * 10^-scale; value has no trailing zeros unless it is zero.
    value: BigInt,
    scale: i64,
}

pub(crate) fn pow10(exp: u64) -> BigUint {
    num_traits::pow(BigUint::from(10u32), exp as usize)
}

pub(crate) fn pow10_int(exp: u64) -> BigInt {
    BigInt::from(pow10(exp))
}

impl TerminatingDecimal {
    pub fn new(value: BigInt, scale: i64) -> Self {
        let mut value = value;
        let mut scale = scale;
        if value.is_zero() {
            return TerminatingDecimal::zero();
        }
        let ten = BigInt::from(10);
        loop {
            let (q, r) = value.div_rem(&ten);
            if !r.is_zero() {
                break;
            }
            value = q;
            scale -= 1;
        }
        TerminatingDecimal { value, scale }
    }

    pub fn zero() -> Self {
        TerminatingDecimal {
            value: BigInt::zero(),
            scale: 0,
        }
    }

    pub fn one() -> Self {
        TerminatingDecimal::from(1)
    }

    /// `10^k`: the positive decimal whose only nonzero digit is a 1 at index `k`.
    pub fn pow10(k: i64) -> Self {
        TerminatingDecimal {
            value: BigInt::one(),
            scale: -k,
        }
    }

    pub fn from_scaled(scaled: &ScaledInteger) -> Self {
        scaled.to_terminating()
    }

    pub fn sign(&self) -> Sign {
        match self.value.sign() {
            BigSign::Minus => Sign::Negative,
            BigSign::NoSign => Sign::Zero,
            BigSign::Plus => Sign::Positive,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.value.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative()
    }

    /// Index of the most significant nonzero digit.
    pub fn msd_index(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let len = self.value.magnitude().to_string().len() as i64;
        Some(len - 1 - self.scale)
    }

    /// Index of the least significant nonzero digit.
    pub fn lsd_index(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(-self.scale)
        }
    }

    /// Number of digits after the decimal point.
    pub fn fractional_len(&self) -> u64 {
        self.scale.max(0) as u64
    }

    pub fn digit_at(&self, i: i64) -> Digit {
        if self.is_zero() {
            return Digit::ZERO;
        }
        let pos = i + self.scale;
        if pos < 0 {
            return Digit::ZERO;
        }
        let shifted = self.value.magnitude() / pow10(pos as u64);
        let d = (shifted % 10u32).to_u8().unwrap_or(0);
        Digit::new(d).unwrap_or(Digit::ZERO)
    }

    /// The n-truncation: digits at indices `>= -n` kept, the rest zeroed.
    pub fn truncate(&self, n: i64) -> Self {
        if self.scale <= n {
            return self.clone();
        }
        let drop = (self.scale - n) as u64;
        // BigInt division truncates toward zero, which is digitwise truncation.
        TerminatingDecimal::new(&self.value / pow10_int(drop), n)
    }

    /// `10^k · self`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        TerminatingDecimal {
            value: self.value.clone(),
            scale: self.scale - k,
        }
    }

    pub fn abs(&self) -> Self {
        TerminatingDecimal {
            value: self.value.abs(),
            scale: self.scale,
        }
    }

    /// The integer `10^k · self`, provided it has no digits below index 0.
    pub fn to_scaled(&self, k: i64) -> Result<ScaledInteger> {
        if self.is_zero() {
            return Ok(ScaledInteger::new(0, k));
        }
        if k < self.scale {
            return Err(Error::InsufficientScale { scale: k });
        }
        let value = &self.value * pow10_int((k - self.scale) as u64);
        Ok(ScaledInteger { value, scale: k })
    }

    /// `10^-k (10^k c + 10^k d)`.
    pub fn add_at_scale(&self, other: &Self, k: i64) -> Result<Self> {
        let a = self.to_scaled(k)?;
        let b = other.to_scaled(k)?;
        Ok(TerminatingDecimal::new(a.value + b.value, k))
    }

    /// `10^-2k (10^k c · 10^k d)`.
    pub fn mul_at_scale(&self, other: &Self, k: i64) -> Result<Self> {
        let a = self.to_scaled(k)?;
        let b = other.to_scaled(k)?;
        Ok(TerminatingDecimal::new(a.value * b.value, 2 * k))
    }

    /// The digit at the least index carrying a nonzero digit.
    pub fn last_nonzero_digit(&self) -> Result<Digit> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let d = (self.value.magnitude() % 10u32).to_u8().unwrap_or(0);
        Ok(Digit::new(d).unwrap_or(Digit::ZERO))
    }

    /// The raw integer and scale, `self = value · 10^-scale`.
    pub fn parts(&self) -> (&BigInt, i64) {
        (&self.value, self.scale)
    }

    /// Returns both operands rescaled to a common scale.
    fn aligned(&self, other: &Self) -> (BigInt, BigInt, i64) {
        let scale = self.scale.max(other.scale);
        let a = &self.value * pow10_int((scale - self.scale) as u64);
        let b = &other.value * pow10_int((scale - other.scale) as u64);
        (a, b, scale)
    }

    pub(crate) fn is_integer(&self) -> bool {
        self.scale <= 0
    }

    /// `(numerator, denominator)` with the denominator a power of ten.
    pub(crate) fn to_ratio(&self) -> (BigInt, BigUint) {
        if self.scale >= 0 {
            (self.value.clone(), pow10(self.scale as u64))
        } else {
            (
                &self.value * pow10_int((-self.scale) as u64),
                BigUint::one(),
            )
        }
    }

    pub(crate) fn cmp_abs(&self, other: &Self) -> Ordering {
        self.abs().cmp(&other.abs())
    }
}

impl From<i64> for TerminatingDecimal {
    fn from(v: i64) -> Self {
        TerminatingDecimal::new(BigInt::from(v), 0)
    }
}

impl From<BigInt> for TerminatingDecimal {
    fn from(v: BigInt) -> Self {
        TerminatingDecimal::new(v, 0)
    }
}

impl Ord for TerminatingDecimal {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for TerminatingDecimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &TerminatingDecimal {
    type Output = TerminatingDecimal;
    fn add(self, rhs: &TerminatingDecimal) -> TerminatingDecimal {
        let (a, b, scale) = self.aligned(rhs);
        TerminatingDecimal::new(a + b, scale)
    }
}

impl Sub for &TerminatingDecimal {
    type Output = TerminatingDecimal;
    fn sub(self, rhs: &TerminatingDecimal) -> TerminatingDecimal {
        let (a, b, scale) = self.aligned(rhs);
        TerminatingDecimal::new(a - b, scale)
    }
}

impl Mul for &TerminatingDecimal {
    type Output = TerminatingDecimal;
    fn mul(self, rhs: &TerminatingDecimal) -> TerminatingDecimal {
        TerminatingDecimal::new(&self.value * &rhs.value, self.scale + rhs.scale)
    }
}

impl Neg for &TerminatingDecimal {
    type Output = TerminatingDecimal;
    fn neg(self) -> TerminatingDecimal {
        TerminatingDecimal {
            value: -&self.value,
            scale: self.scale,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for TerminatingDecimal {
            type Output = TerminatingDecimal;
            fn $m(self, rhs: TerminatingDecimal) -> TerminatingDecimal {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&TerminatingDecimal> for TerminatingDecimal {
            type Output = TerminatingDecimal;
            fn $m(self, rhs: &TerminatingDecimal) -> TerminatingDecimal {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for TerminatingDecimal {
    type Output = TerminatingDecimal;
    fn neg(self) -> TerminatingDecimal {
        -&self
    }
}

impl fmt::Display for TerminatingDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_negative() {
            f.write_str("-")?;
        }
        let digits = self.value.magnitude().to_string();
        if self.scale <= 0 {
            f.write_str(&digits)?;
            if !self.value.is_zero() {
                for _ in 0..(-self.scale) {
                    f.write_str("0")?;
                }
            }
            return Ok(());
        }
        let scale = self.scale as usize;
        if digits.len() > scale {
            let (int, frac) = digits.split_at(digits.len() - scale);
            write!(f, "{int}.{frac}")
        } else {
            write!(f, "0.{}{}", "0".repeat(scale - digits.len()), digits)
        }
    }
}

impl fmt::Debug for TerminatingDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({self})")
    }
}

impl FromStr for TerminatingDecimal {
    type Err = ParseError;

    /// Plain decimal syntax: optional sign, digits, optional fraction.
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let negative = match bytes.first() {
            Some(b'-') => {
                pos += 1;
                true
            }
            Some(b'+') => {
                pos += 1;
                false
            }
            _ => false,
        };
        let mut digits = String::new();
        let mut scale = 0i64;
        let mut seen_point = false;
        let start = pos;
        while pos < bytes.len() {
            match bytes[pos] {
                b'0'..=b'9' => {
                    digits.push(bytes[pos] as char);
                    if seen_point {
                        scale += 1;
                    }
                }
                b'.' if !seen_point => seen_point = true,
                _ => return Err(ParseError::new(pos, &["digit"])),
            }
            pos += 1;
        }
        if digits.is_empty() {
            return Err(ParseError::new(start, &["digit"]));
        }
        let mut value: BigInt = digits.parse().map_err(|_| ParseError::new(start, &["digit"]))?;
        if negative {
            value = -value;
        }
        Ok(TerminatingDecimal::new(value, scale))
    }
}
