//! The order of decimals, jumps, and real numbers as jump classes.

use std::cmp::Ordering;
use std::fmt;

use crate::decimal::{Decimal, Leading, Sign};
use crate::error::{Error, Result};
use crate::periodic::{add_p, mul_p, PeriodicDecimal, RepetendStyle};
use crate::terminating::TerminatingDecimal;

fn sign_rank(s: Sign) -> i8 {
    match s {
        Sign::Negative => -1,
        Sign::Zero => 0,
        Sign::Positive => 1,
    }
}

/// Lexicographic comparison adjusted for signs.
///
/// Exact for finitely represented decimals. When a lazy decimal is involved at
/// most `budget` digit positions are inspected, and `None` is returned if they
/// do not separate the two (including when a digit cannot be produced).
///
/// ```
/// use std::cmp::Ordering;
/// use decreal::{compare, Decimal};
/// let c: Decimal = "0.(9)".parse().unwrap();
/// let d: Decimal = "1".parse().unwrap();
/// assert_eq!(compare(&c, &d, 0), Some(Ordering::Less));
/// ```
pub fn compare(c: &Decimal, d: &Decimal, budget: u32) -> Option<Ordering> {
    if let (Some(x), Some(y)) = (c.as_periodic(), d.as_periodic()) {
        return Some(x.cmp(y));
    }
    let (lc, ld) = (c.leading(budget).ok()?, d.leading(budget).ok()?);
    let sign = |l: Leading| match l {
        Leading::Zero => Some(Sign::Zero),
        Leading::Nonzero { sign, .. } => Some(sign),
        Leading::Undetermined => None,
    };
    let (sc, sd) = (sign(lc)?, sign(ld)?);
    if sc != sd || sc == Sign::Zero {
        return Some(sign_rank(sc).cmp(&sign_rank(sd)));
    }
    let top = c.top_index().max(d.top_index());
    for i in (0..budget as i64).map(|j| top - j) {
        let (a, b) = (c.try_digit_at(i).ok()?, d.try_digit_at(i).ok()?);
        if a != b {
            let by_digit = a.cmp(&b);
            return Some(if sc == Sign::Negative {
                by_digit.reverse()
            } else {
                by_digit
            });
        }
    }
    None
}

fn periodic_pair<'a>(c: &'a Decimal, d: &'a Decimal) -> Result<(&'a PeriodicDecimal, &'a PeriodicDecimal)> {
    Ok((c.require_periodic()?, d.require_periodic()?))
}

/// Whether `c < d` is a jump: adjacent decimals with nothing strictly between.
/// Jumps are exactly the pairs formed by the 𝕋₉ and 𝕋₀ expansions of a
/// nonzero terminating value.
pub fn is_jump(c: &Decimal, d: &Decimal) -> Result<bool> {
    let (x, y) = periodic_pair(c, d)?;
    Ok(x.value_eq(y) && x < y)
}

/// The other member of the jump containing `d`, if `d` lies in one.
pub fn jump_partner(d: &Decimal) -> Result<Option<Decimal>> {
    let x = d.require_periodic()?;
    Ok(if x.is_nines() {
        Some(Decimal::from(x.t0_member()))
    } else {
        x.t9_member().map(Decimal::from)
    })
}

/// `c ~ d`: equal, or the two members of a jump.
pub fn equivalent(c: &Decimal, d: &Decimal) -> Result<bool> {
    let (x, y) = periodic_pair(c, d)?;
    Ok(x.value_eq(y))
}

/// A decimal `e` with `c < e < d`, when one exists.
///
/// Returns `None` when `c >= d` or when `c < d` is a jump.
pub fn between(c: &Decimal, d: &Decimal) -> Result<Option<Decimal>> {
    let (x, y) = periodic_pair(c, d)?;
    if x >= y || x.value_eq(y) {
        return Ok(None);
    }
    let half = PeriodicDecimal::from(TerminatingDecimal::new(5.into(), 1));
    Ok(Some(Decimal::from(mul_p(&add_p(x, y), &half))))
}

/// Least upper bound of a finite set, built digit by digit: at each index the
/// largest digit among the remaining candidates is kept (smallest, for a set of
/// negative decimals), and candidates carrying other digits are dropped.
pub fn supremum_finite(set: &[Decimal]) -> Result<Decimal> {
    let mut candidates: Vec<&PeriodicDecimal> =
        set.iter().map(Decimal::require_periodic).collect::<Result<_>>()?;
    let best_sign = candidates
        .iter()
        .map(|x| x.sign())
        .max_by_key(|&s| sign_rank(s))
        .ok_or(Error::EmptySet)?;
    candidates.retain(|x| x.sign() == best_sign);
    let mut i = candidates
        .iter()
        .filter_map(|x| x.msd_index())
        .max()
        .unwrap_or(0);
    while candidates.iter().any(|x| *x != candidates[0]) {
        let digits = candidates.iter().map(|x| x.digit_at(i));
        let chosen = if best_sign == Sign::Negative {
            digits.min()
        } else {
            digits.max()
        };
        candidates.retain(|x| Some(x.digit_at(i)) == chosen);
        i -= 1;
    }
    Ok(Decimal::from(candidates[0].clone()))
}

#[derive(Clone)]
enum ClassRepr {
    // The 𝕋₀ member when the class is a jump.
    Exact(PeriodicDecimal),
    Unresolved(Decimal),
}

/// A real number: the class of a decimal under `~`.
#[derive(Clone)]
pub struct RealClass(ClassRepr);

/// `[d]`.
pub fn real_class(d: &Decimal) -> RealClass {
    match d.as_periodic() {
        Some(x) => RealClass::from(x.clone()),
        None => RealClass(ClassRepr::Unresolved(d.clone())),
    }
}

impl RealClass {
    pub fn zero() -> Self {
        RealClass::from(PeriodicDecimal::zero())
    }

    pub fn one() -> Self {
        RealClass::from(PeriodicDecimal::one())
    }

    /// The representative used for display and arithmetic: the 𝕋₀ member of a
    /// jump, or the only member.
    pub fn representative(&self) -> Decimal {
        match &self.0 {
            ClassRepr::Exact(x) => Decimal::from(x.clone()),
            ClassRepr::Unresolved(d) => d.clone(),
        }
    }

    pub fn as_exact(&self) -> Option<&PeriodicDecimal> {
        match &self.0 {
            ClassRepr::Exact(x) => Some(x),
            ClassRepr::Unresolved(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.as_exact().is_some()
    }

    pub(crate) fn require_exact(&self) -> Result<&PeriodicDecimal> {
        self.as_exact().ok_or(Error::NotFinitelyRepresented)
    }

    /// Members in increasing order: one, or the two members of a jump.
    pub fn members(&self) -> Vec<Decimal> {
        match &self.0 {
            ClassRepr::Exact(x) => {
                let mut out = vec![x.clone()];
                out.extend(x.t9_member());
                out.sort();
                out.into_iter().map(Decimal::from).collect()
            }
            ClassRepr::Unresolved(d) => vec![d.clone()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_exact().is_some_and(PeriodicDecimal::is_zero)
    }

    pub fn contains(&self, d: &Decimal) -> bool {
        match (&self.0, d.as_periodic()) {
            (ClassRepr::Exact(x), Some(y)) => x.value_eq(y),
            (ClassRepr::Unresolved(e), _) => e == d,
            _ => false,
        }
    }

    /// Renders a singleton as its member and a jump as `{smaller, larger}`.
    pub fn render(&self, style: RepetendStyle) -> String {
        let members = self.members();
        let show = |d: &Decimal| match d.as_periodic() {
            Some(x) => x.render(style),
            None => d.to_string(),
        };
        match members.as_slice() {
            [only] => show(only),
            [a, b] => format!("{{{}, {}}}", show(a), show(b)),
            _ => unreachable!("classes have one or two members"),
        }
    }
}

impl From<PeriodicDecimal> for RealClass {
    fn from(x: PeriodicDecimal) -> Self {
        RealClass(ClassRepr::Exact(x.t0_member()))
    }
}

impl PartialEq for RealClass {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (ClassRepr::Exact(x), ClassRepr::Exact(y)) => x == y,
            (ClassRepr::Unresolved(c), ClassRepr::Unresolved(d)) => c == d,
            _ => false,
        }
    }
}

impl fmt::Display for RealClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RepetendStyle::Parens))
    }
}

impl fmt::Debug for RealClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealClass({self})")
    }
}

/// Order of real numbers; both classes must be finitely represented.
pub fn compare_class(a: &RealClass, b: &RealClass) -> Result<Ordering> {
    Ok(a.require_exact()?.cmp_value(b.require_exact()?))
}

/// Order of real numbers, separating lazy classes through truncations
/// `a|n`, `b|n` for `n` up to `budget`. `None` if they stay within `2·10^-n`.
pub fn compare_class_within(a: &RealClass, b: &RealClass, budget: u32) -> Option<Ordering> {
    if let (Some(x), Some(y)) = (a.as_exact(), b.as_exact()) {
        return Some(x.cmp_value(y));
    }
    let (c, d) = (a.representative(), b.representative());
    for n in 1..=budget as i64 {
        let diff = c.try_truncate(n).ok()? - d.try_truncate(n).ok()?;
        let slack = TerminatingDecimal::pow10(-n) + TerminatingDecimal::pow10(-n);
        if diff > slack {
            return Some(Ordering::Greater);
        }
        if -diff > slack {
            return Some(Ordering::Less);
        }
    }
    None
}
