pub mod decimal;
pub mod error;
mod literal;
mod numtheory;
pub mod periodic;
pub mod terminating;

pub use decimal::{Decimal, Digit, DigitGenerator, Leading, Representation, Sign, TailClass, TailStatus};
pub use error::{Error, ParseError, Result};
pub use periodic::*;
pub use terminating::{ScaledInteger, TerminatingDecimal};
pub mod order;
pub use order::{between, compare, compare_class, compare_class_within, equivalent, is_jump, jump_partner, real_class, supremum_finite, RealClass};
pub mod limits;
pub mod real_arith;
pub mod sqrt;
pub mod expr;
pub mod selftest;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/decimals.md")]
    mod decimals {}
    #[doc = include_str!("../../../book/src/periodic.md")]
    mod periodic {}
    #[doc = include_str!("../../../book/src/limits.md")]
    mod limits {}
    #[doc = include_str!("../../../book/src/roots.md")]
    mod roots {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
