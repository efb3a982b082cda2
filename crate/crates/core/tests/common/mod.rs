//! Test-side oracles: a literal model that knows its own digits, rational
//! values computed from those digits, lexicographic comparison, and a long
//! division renderer. None of these call into the library under test.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::HashMap;

use decreal::{Digit, DigitGenerator, PeriodicDecimal, Sign};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// An infinite decimal written as sign, integer digits, preperiod, repetend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lit {
    pub negative: bool,
    pub int: Vec<u8>,
    pub pre: Vec<u8>,
    pub rep: Vec<u8>,
}

fn digits_str(d: &[u8]) -> String {
    d.iter().map(|x| char::from(b'0' + x)).collect()
}

impl Lit {
    pub fn is_zero(&self) -> bool {
        self.int.iter().chain(&self.pre).chain(&self.rep).all(|&d| d == 0)
    }

    /// Digit at index `i` (index 0 is the units place).
    pub fn digit(&self, i: i64) -> u8 {
        let n = self.int.len() as i64;
        if i >= 0 {
            if i >= n {
                0
            } else {
                self.int[(n - 1 - i) as usize]
            }
        } else {
            let j = (-i - 1) as usize;
            if j < self.pre.len() {
                self.pre[j]
            } else {
                self.rep[(j - self.pre.len()) % self.rep.len()]
            }
        }
    }

    pub fn text(&self) -> String {
        let int = if self.int.is_empty() { "0".to_string() } else { digits_str(&self.int) };
        let sign = if self.negative { "-" } else { "" };
        format!("{sign}{int}.{}({})", digits_str(&self.pre), digits_str(&self.rep))
    }

    pub fn periodic(&self) -> PeriodicDecimal {
        self.text().parse().expect("generated literal parses")
    }

    pub fn ratio(&self) -> BigRational {
        let ten = BigInt::from(10);
        let int = self.int.iter().fold(BigInt::zero(), |a, &d| a * &ten + d);
        let pre = self.pre.iter().fold(BigInt::zero(), |a, &d| a * &ten + d);
        let rep = self.rep.iter().fold(BigInt::zero(), |a, &d| a * &ten + d);
        let f = num_traits::pow(ten.clone(), self.pre.len());
        let p = num_traits::pow(ten, self.rep.len()) - 1;
        let v = BigRational::from_integer(int)
            + BigRational::new(pre, f.clone())
            + BigRational::new(rep, f * p);
        if self.negative {
            -v
        } else {
            v
        }
    }

    /// The literal read back from a library value's own digit form.
    pub fn of(x: &PeriodicDecimal) -> Lit {
        Lit {
            negative: x.sign() == decreal::Sign::Negative,
            int: x.integer_digits().to_vec(),
            pre: x.preperiod().to_vec(),
            rep: x.repetend().to_vec(),
        }
    }
}

/// The library value's fraction, read without expanding its digits.
pub fn frac(x: &PeriodicDecimal) -> BigRational {
    BigRational::new(x.numerator(), BigInt::from(x.denominator().clone()))
}

/// Whether rendering `r` stays cheap: the period of `r` is below the
/// denominator, so this bounds the text length.
pub fn renderable(r: &BigRational) -> bool {
    r.denom().bits() <= 20
}

/// Lexicographic order of infinite digit strings (signed), as in the
/// definition of `<` on decimals. Digits are compared past both preperiods
/// for a common multiple of the two periods.
pub fn lex_cmp(a: &Lit, b: &Lit) -> Ordering {
    let rank = |x: &Lit| if x.is_zero() { 0 } else if x.negative { -1 } else { 1 };
    let (ra, rb) = (rank(a), rank(b));
    if ra != rb || ra == 0 {
        return ra.cmp(&rb);
    }
    let top = a.int.len().max(b.int.len()) as i64;
    let depth = (a.pre.len().max(b.pre.len()) + a.rep.len() * b.rep.len() + 2) as i64;
    for i in (-depth..top).rev() {
        let o = a.digit(i).cmp(&b.digit(i));
        if o != Ordering::Equal {
            return if ra < 0 { o.reverse() } else { o };
        }
    }
    Ordering::Equal
}

/// Canonical text of a rational by long division: the repetend starts at the
/// first repeated remainder, terminating values end without a repetend.
pub fn long_division_text(r: &BigRational) -> String {
    let negative = r.is_negative();
    let r = r.abs();
    let (num, den) = (r.numer().clone(), r.denom().clone());
    let int = &num / &den;
    let mut rem = num % &den;
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut frac = Vec::new();
    let mut cycle = None;
    while !rem.is_zero() {
        if let Some(&at) = seen.get(&rem) {
            cycle = Some(at);
            break;
        }
        seen.insert(rem.clone(), frac.len());
        rem *= 10;
        frac.push(u8::try_from(&rem / &den).unwrap());
        rem %= &den;
    }
    let body = match cycle {
        None if frac.is_empty() => int.to_string(),
        None => format!("{int}.{}", digits_str(&frac)),
        Some(at) => format!("{int}.{}({})", digits_str(&frac[..at]), digits_str(&frac[at..])),
    };
    if negative && !r.is_zero() {
        format!("-{body}")
    } else {
        body
    }
}

/// Digits of `rem / den` for `rem < den`, by schoolbook long division.
pub struct LongDivision {
    pub rem: BigUint,
    pub den: BigUint,
    pub top: i64,
}

impl DigitGenerator for LongDivision {
    fn top(&self) -> i64 {
        self.top
    }

    fn next_digit(&mut self) -> decreal::Result<Digit> {
        self.rem *= 10u32;
        let d = &self.rem / &self.den;
        self.rem %= &self.den;
        Ok(Digit::new(u8::try_from(&d).unwrap()).unwrap())
    }

    fn sign(&self) -> Sign {
        Sign::Positive
    }
}

pub fn isqrt(n: &BigUint) -> BigUint {
    // Newton iteration from above.
    if n.is_zero() {
        return BigUint::zero();
    }
    let mut x = BigUint::one() << (n.bits() / 2 + 1);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

fn digit_vec(max: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(0u8..10, 0..=max)
}

/// Random literals: integer part up to `int` digits, preperiod up to `pre`,
/// repetend of length 1..=`per`.
pub fn lit(int: usize, pre: usize, per: usize) -> impl Strategy<Value = Lit> {
    (any::<bool>(), digit_vec(int), digit_vec(pre), proptest::collection::vec(0u8..10, 1..=per))
        .prop_map(|(negative, int, pre, rep)| Lit { negative, int, pre, rep })
}

/// Random literals biased toward terminating values and nines tails.
pub fn lit_with_jumps(int: usize, pre: usize, per: usize) -> impl Strategy<Value = Lit> {
    (lit(int, pre, per), 0u8..4).prop_map(|(mut l, pick)| {
        match pick {
            0 => l.rep = vec![0],
            1 => l.rep = vec![9],
            _ => {}
        }
        l
    })
}

/// Random literal with the given shape limits, a fifth of them forced onto
/// each jump member.
pub fn random_lit(rng: &mut impl Rng, int: usize, pre: usize, per: usize) -> Lit {
    let mut digits = |max_len: usize| -> Vec<u8> {
        let len = rng.random_range(0..=max_len);
        (0..len).map(|_| rng.random_range(0..10)).collect()
    };
    let (int, pre) = (digits(int), digits(pre));
    let len = rng.random_range(1..=per);
    let mut rep: Vec<u8> = (0..len).map(|_| rng.random_range(0..10)).collect();
    match rng.random_range(0..5) {
        0 => rep = vec![0],
        1 => rep = vec![9],
        _ => {}
    }
    Lit { negative: rng.random_bool(0.5), int, pre, rep }
}

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
