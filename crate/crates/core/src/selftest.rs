//! Quick end-to-end checks, run by `decreal selftest`.

use crate::decimal::Decimal;
use crate::error::Result;
use crate::expr::{evaluate, parse, scan, Backend};
use crate::limits::Budget;
use crate::order::real_class;
use crate::periodic::{divisibility_exponent, nines_zeros, PeriodDetection, PeriodicDecimal};
use crate::real_arith::{formal_add, formal_mul};
use crate::sqrt::{
    exhaustive_square_search, residue_obstruction, sqrt_stream, square_of_truncations,
    SearchBounds, SquareSearch,
};
use crate::terminating::ScaledInteger;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, run: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match run() {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(err) => Check {
            name,
            passed: false,
            detail: format!("error: {err}"),
        },
    }
}

fn d(s: &str) -> Decimal {
    s.parse().expect("selftest literal")
}

fn rendered(src: &str, backend: Backend) -> Result<String> {
    Ok(evaluate(&parse(src)?, 20, backend)?.rendered)
}

pub fn run() -> Vec<Check> {
    let b = Budget::default();
    vec![
        check("product of 1.(2) and 0.(81) is {0.(9), 1}", || {
            let exact = rendered("1.(2)*0.(81)", Backend::Exact)?;
            let lazy = rendered("1.(2)*0.(81)", Backend::Lazy)?;
            Ok((exact == "{0.(9), 1}" && lazy == exact, format!("{exact} / {lazy}")))
        }),
        check("0.2 + (-0.5) is {-0.3, -0.2(9)}", || {
            let r = rendered("0.2 + (-0.5)", Backend::Lazy)?;
            Ok((r == "{-0.3, -0.2(9)}", r))
        }),
        check("formal sums are not associative", || {
            let left = formal_add(&formal_add(&d("-0.(9)"), &d("1"), b)?, &d("0.(9)"), b)?;
            let right = formal_add(&d("-0.(9)"), &formal_add(&d("1"), &d("0.(9)"), b)?, b)?;
            Ok((left == d("0.(9)") && right == d("1"), format!("{left} vs {right}")))
        }),
        check("formal products do not distribute", || {
            let left = formal_mul(&formal_add(&d("10"), &d("-1"), b)?, &d("0.(1)"), b)?;
            let ten = formal_mul(&d("10"), &d("0.(1)"), b)?;
            let one = formal_mul(&d("1"), &d("0.(1)"), b)?;
            let right = formal_add(&ten, &one.negate(), b)?;
            Ok((left == d("0.(9)") && right == d("1"), format!("{left} vs {right}")))
        }),
        check("digits of the root of 2", || {
            let root = sqrt_stream(&"2".parse()?)?;
            let t = root.try_truncate(33)?.to_string();
            Ok((t == "1.414213562373095048801688724209698", t))
        }),
        check("square of the root of 2 is 1.(9)", || {
            let sq = square_of_truncations(&sqrt_stream(&"2".parse()?)?, b)?;
            let t = sq.try_truncate(40)?.to_string();
            Ok((t == format!("1.{}", "9".repeat(40)), t))
        }),
        check("r divides 9^(a)0^(a) for r up to 300", || {
            for r in 1..=300u32 {
                let a = divisibility_exponent(&ScaledInteger::new(r, 0))?;
                let m = nines_zeros(a, a)?.to_scaled(0)?.value;
                if m % r != 0.into() {
                    return Ok((false, format!("r = {r}, a = {a}")));
                }
            }
            Ok((true, "300 divisors".into()))
        }),
        check("2 is not a square of a periodic decimal", || {
            let bounds = SearchBounds {
                max_int_digits: 1,
                max_preperiod: 2,
                max_period: 2,
            };
            let two = real_class(&d("2"));
            let obstruction = residue_obstruction(&"2".parse()?)?;
            let search = exhaustive_square_search(&two, bounds)?;
            Ok((obstruction && search == SquareSearch::NoSolution, format!("{search:?}")))
        }),
        check("period of 1/7 and none for the root of 2", || {
            let sevenths = scan(&parse("1/7")?, 100, 10)?;
            let root = scan(&parse("sqrt(2)")?, 500, 30)?;
            let ok = matches!(&sevenths, PeriodDetection::Found(x) if x.repetend() == [1, 4, 2, 8, 5, 7])
                && root == PeriodDetection::NotFoundWithinBounds;
            Ok((ok, format!("{sevenths:?}, {root:?}")))
        }),
        check("reciprocal of 3 is 0.(3)", || {
            let r = rendered("1/3", Backend::Lazy)?;
            let expected = PeriodicDecimal::from_parts(false, &[], &[], &[3])?.to_string();
            Ok((r == expected, r))
        }),
    ]
}
