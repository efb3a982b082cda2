mod common;

use std::cmp::Ordering;
use std::sync::Arc;

use common::{frac, isqrt, lex_cmp, lit, lit_with_jumps, long_division_text, renderable, Lit, LongDivision};
use decreal::expr::{evaluate, parse, Backend, Exactness, Expr};
use decreal::limits::{
    formal_limit_monotone, hybrid_limit, ApproxSequence, Budget, Direction, MonotoneBound,
};
use decreal::real_arith::{
    add, formal_add, formal_mul, mul, mul_via_limits, add_via_limits, neg, reciprocal, sub,
};
use decreal::sqrt::{
    exhaustive_square_search, residue_obstruction, sqrt_stream, square_of_truncations, SearchBounds,
    SquareSearch, SqrtState,
};
use decreal::*;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn dec(l: &Lit) -> Decimal {
    Decimal::from(l.periodic())
}

fn class(l: &Lit) -> RealClass {
    RealClass::from(l.periodic())
}

fn term(x: &PeriodicDecimal) -> Option<TerminatingDecimal> {
    x.value_as_terminating()
}

fn cheap() -> ProptestConfig {
    ProptestConfig::with_cases(128)
}

// Digit streams.
proptest! {
    #![proptest_config(cheap())]

    #[test]
    fn truncations_nest(l in lit_with_jumps(3, 4, 4), n in 0i64..30) {
        let d = dec(&l);
        let (short, long) = (d.truncate(n), d.truncate(n + 1));
        prop_assert_eq!(long.truncate(n), short.clone());
        for i in -n..4 {
            prop_assert_eq!(long.digit_at(i), short.digit_at(i));
            prop_assert_eq!(short.digit_at(i).value(), l.digit(i));
        }
    }

    #[test]
    fn shift_is_a_bijection(l in lit_with_jumps(3, 4, 4), k in -12i64..12) {
        let d = dec(&l);
        prop_assert_eq!(d.shift(k).shift(-k), d.clone());
        for i in -10..10 {
            prop_assert_eq!(d.shift(k).digit_at(i + k), d.digit_at(i));
        }
    }

    #[test]
    fn leading_digit_is_nonzero(l in lit_with_jumps(3, 4, 4), k in -6i64..6) {
        for d in [dec(&l), dec(&l).shift(k), dec(&l).negate()] {
            match d.leading(64).unwrap() {
                Leading::Zero => prop_assert!(l.is_zero()),
                Leading::Nonzero { msd, .. } => {
                    prop_assert_ne!(d.digit_at(msd).value(), 0);
                    for i in msd + 1..msd + 5 {
                        prop_assert_eq!(d.digit_at(i).value(), 0);
                    }
                }
                Leading::Undetermined => prop_assert!(false, "exact decimals have a leading digit"),
            }
        }
    }

    #[test]
    fn digits_agree_with_the_literal(l in lit_with_jumps(3, 4, 4)) {
        let d = dec(&l);
        for i in -40..5 {
            prop_assert_eq!(d.digit_at(i).value(), l.digit(i), "index {}", i);
        }
    }
}

#[test]
fn lazy_digits_are_pure_across_threads() {
    let root = sqrt_stream(&"7".parse().unwrap()).unwrap();
    let handles: Vec<_> = (0..4)
        .map(|t| {
            let r = root.clone();
            // Each thread walks the indices in a different order.
            std::thread::spawn(move || {
                let mut order: Vec<i64> = (0..300).collect();
                if t % 2 == 1 {
                    order.reverse();
                }
                let mut out = vec![0u8; 300];
                for j in order {
                    out[j as usize] = r.digit_at(-j).value();
                }
                out
            })
        })
        .collect();
    let first: Vec<u8> = (0..300).map(|j| root.digit_at(-j).value()).collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), first);
    }
    let again: Vec<u8> = (0..300).map(|j| root.digit_at(-j).value()).collect();
    assert_eq!(again, first);
}

// Order, jumps and classes.
proptest! {
    #![proptest_config(cheap())]

    #[test]
    fn compare_matches_lexicographic_order(a in lit_with_jumps(2, 3, 3), b in lit_with_jumps(2, 3, 3)) {
        prop_assert_eq!(compare(&dec(&a), &dec(&b), 0), Some(lex_cmp(&a, &b)));
    }

    #[test]
    fn compare_is_a_total_order(a in lit_with_jumps(2, 2, 2), b in lit_with_jumps(2, 2, 2), c in lit_with_jumps(2, 2, 2)) {
        let cmp = |x: &Lit, y: &Lit| compare(&dec(x), &dec(y), 0).unwrap();
        prop_assert_eq!(cmp(&a, &b), cmp(&b, &a).reverse());
        if cmp(&a, &b) != Ordering::Greater && cmp(&b, &c) != Ordering::Greater {
            prop_assert_ne!(cmp(&a, &c), Ordering::Greater);
        }
        if cmp(&a, &b) == Ordering::Equal {
            prop_assert_eq!(dec(&a), dec(&b));
        }
    }

    #[test]
    fn jumps_are_the_gaps(a in lit_with_jumps(2, 2, 2), b in lit_with_jumps(2, 2, 2)) {
        let (c, d) = (dec(&a), dec(&b));
        if lex_cmp(&a, &b) != Ordering::Less {
            return Ok(());
        }
        let jump = is_jump(&c, &d).unwrap();
        prop_assert_eq!(jump, a.ratio() == b.ratio());
        match between(&c, &d).unwrap() {
            Some(e) => {
                prop_assert!(!jump);
                let e = Lit::of(e.as_periodic().unwrap());
                prop_assert_eq!(lex_cmp(&a, &e), Ordering::Less);
                prop_assert_eq!(lex_cmp(&e, &b), Ordering::Less);
            }
            None => prop_assert!(jump),
        }
    }

    #[test]
    fn equivalence_and_partners(a in lit_with_jumps(2, 2, 2), b in lit_with_jumps(2, 2, 2)) {
        let (c, d) = (dec(&a), dec(&b));
        prop_assert!(equivalent(&c, &c).unwrap());
        prop_assert_eq!(equivalent(&c, &d).unwrap(), equivalent(&d, &c).unwrap());
        prop_assert_eq!(equivalent(&c, &d).unwrap(), a.ratio() == b.ratio());
        let x = c.as_periodic().unwrap();
        match jump_partner(&c).unwrap() {
            Some(p) => {
                prop_assert!(x.has_terminating_value() && !x.is_zero());
                prop_assert!(equivalent(&c, &p).unwrap());
                prop_assert_ne!(&p, &c);
                prop_assert_eq!(jump_partner(&p).unwrap(), Some(c.clone()));
            }
            None => prop_assert!(!x.has_terminating_value() || x.is_zero()),
        }
    }

    #[test]
    fn equivalence_is_truncation_closeness(a in lit_with_jumps(2, 2, 2), b in lit_with_jumps(2, 2, 2)) {
        let (c, d) = (dec(&a), dec(&b));
        let close = (1..=60).all(|n| (c.truncate(n) - d.truncate(n)).abs() <= TerminatingDecimal::pow10(-n));
        prop_assert_eq!(close, equivalent(&c, &d).unwrap());
    }

    #[test]
    fn real_line_is_dense(a in lit_with_jumps(2, 2, 2), b in lit_with_jumps(2, 2, 2)) {
        let (x, y) = (class(&a), class(&b));
        if compare_class(&x, &y).unwrap() == Ordering::Less {
            let half = RealClass::from("0.5".parse::<PeriodicDecimal>().unwrap());
            let mid = mul(&add(&x, &y).unwrap(), &half).unwrap();
            prop_assert_eq!(compare_class(&x, &mid).unwrap(), Ordering::Less);
            prop_assert_eq!(compare_class(&mid, &y).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn classes_have_at_most_two_members(a in lit_with_jumps(2, 2, 2)) {
        let c = class(&a);
        let members = c.members();
        prop_assert!(members.len() <= 2);
        for m in &members {
            prop_assert!(c.contains(m));
            prop_assert_eq!(Lit::of(m.as_periodic().unwrap()).ratio(), a.ratio());
        }
    }
}

// Terminating decimals.
fn terminating(l: &Lit) -> TerminatingDecimal {
    let mut l = l.clone();
    l.rep = vec![0];
    term(&l.periodic()).unwrap()
}

fn t_ratio(t: &TerminatingDecimal) -> BigRational {
    let (v, scale) = t.parts();
    let ten = BigInt::from(10);
    if scale >= 0 {
        BigRational::new(v.clone(), num_traits::pow(ten, scale as usize))
    } else {
        BigRational::from_integer(v * num_traits::pow(ten, (-scale) as usize))
    }
}

proptest! {
    #![proptest_config(cheap())]

    #[test]
    fn terminating_ring_axioms(a in lit(3, 4, 1), b in lit(3, 4, 1), c in lit(3, 4, 1)) {
        let (x, y, z) = (terminating(&a), terminating(&b), terminating(&c));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &TerminatingDecimal::zero(), x.clone());
        prop_assert_eq!(&x * &TerminatingDecimal::one(), x.clone());
        prop_assert!((&x + &(-&x)).is_zero());
        prop_assert_eq!(t_ratio(&(&x * &y)), t_ratio(&x) * t_ratio(&y));
        prop_assert_eq!(t_ratio(&(&x + &y)), t_ratio(&x) + t_ratio(&y));
        if x < y {
            prop_assert!(&x + &z < &y + &z);
            prop_assert!((&y - &x).is_positive());
            if z.is_positive() {
                prop_assert!(&x * &z < &y * &z);
            }
        }
    }

    #[test]
    fn scale_does_not_matter(a in lit(3, 4, 1), b in lit(3, 4, 1), extra in 0i64..4) {
        let (x, y) = (terminating(&a), terminating(&b));
        let k = x.fractional_len().max(y.fractional_len()) as i64 + extra;
        prop_assert_eq!(x.add_at_scale(&y, k).unwrap(), x.add_at_scale(&y, k + 3).unwrap());
        prop_assert_eq!(x.mul_at_scale(&y, k).unwrap(), x.mul_at_scale(&y, k + 3).unwrap());
        prop_assert_eq!(x.add_at_scale(&y, k).unwrap(), &x + &y);
    }

    #[test]
    fn squares_end_in_square_digits(a in lit(3, 4, 1)) {
        let x = terminating(&a);
        if !x.is_zero() {
            let last = (&x * &x).last_nonzero_digit().unwrap().value();
            prop_assert!([1, 4, 5, 6, 9].contains(&last), "{}", last);
        }
    }
}

// Limits.
fn truncations(l: &Lit) -> ApproxSequence {
    ApproxSequence::truncations(&dec(l))
}

/// Truncation terms with no declared limit.
fn blind_truncations(l: &Lit) -> ApproxSequence {
    let d = dec(l);
    ApproxSequence::cauchy(move |n| d.truncate(n as i64), |k| k as u64)
}

/// The enclosure-read digits of a candidate-free hybrid limit agree with the
/// exact class `expected`, or the limit sits on the jump at `expected`.
fn blind_limit_matches(s: &ApproxSequence, expected: &PeriodicDecimal) -> Result<(), TestCaseError> {
    let value = Lit::of(expected).ratio();
    match hybrid_limit(s, Budget::default()) {
        Ok(c) => {
            let d = c.representative();
            for n in [5i64, 20, 40] {
                match d.try_truncate(n) {
                    Ok(t) => {
                        let gap = (t_ratio(&t) - &value).abs();
                        prop_assert!(gap <= t_ratio(&TerminatingDecimal::pow10(-n)));
                    }
                    Err(Error::JumpUnresolved { near, .. }) => {
                        prop_assert_eq!(t_ratio(&near), value.clone());
                        return Ok(());
                    }
                    Err(e) => prop_assert!(false, "{}", e),
                }
            }
        }
        Err(Error::JumpUnresolved { near, .. }) => prop_assert_eq!(t_ratio(&near), value),
        Err(e) => prop_assert!(false, "{}", e),
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn limits_commute_with_field_operations(a in lit_with_jumps(2, 3, 3), b in lit_with_jumps(2, 3, 3)) {
        let (x, y) = (class(&a), class(&b));
        let budget = Budget::default();
        let hx = hybrid_limit(&truncations(&a), budget).unwrap();
        let hy = hybrid_limit(&truncations(&b), budget).unwrap();
        prop_assert_eq!(&hx, &x);
        prop_assert_eq!(add_via_limits(&x, &y, budget).unwrap(), add(&hx, &hy).unwrap());
        prop_assert_eq!(mul_via_limits(&x, &y, budget).unwrap(), mul(&hx, &hy).unwrap());
        let sum = add(&x, &y).unwrap();
        blind_limit_matches(&blind_truncations(&a).add(&blind_truncations(&b)), sum.as_exact().unwrap())?;
        let product = mul(&x, &y).unwrap();
        blind_limit_matches(&blind_truncations(&a).mul(&blind_truncations(&b)).unwrap(), product.as_exact().unwrap())?;
    }

    #[test]
    fn hybrid_limits_are_unique_as_classes(a in lit_with_jumps(2, 3, 3)) {
        let x = a.periodic();
        let d = dec(&a);
        let above = ApproxSequence::cauchy(move |n| d.truncate(n as i64) + TerminatingDecimal::pow10(-(n as i64)), |k| k as u64 + 1);
        let from_above = hybrid_limit(&above.clone().with_candidate(x.clone()), Budget::default()).unwrap();
        let plain = hybrid_limit(&truncations(&a), Budget::default()).unwrap();
        prop_assert_eq!(&from_above, &plain);
        if let Some(partner) = x.t9_member() {
            let other = hybrid_limit(&above.with_candidate(partner), Budget::default()).unwrap();
            prop_assert_eq!(other, plain);
        }
    }

    #[test]
    fn wrong_candidates_are_rejected(a in lit(2, 3, 3), bump in 1i64..30) {
        let x = a.periodic();
        let off = add_p(&x, &PeriodicDecimal::from(TerminatingDecimal::pow10(-bump)));
        let s = truncations(&a).with_candidate(off);
        let rejected = matches!(hybrid_limit(&s, Budget::default()), Err(Error::CandidateRejected { .. }));
        prop_assert!(rejected);
    }

    #[test]
    fn hybrid_limits_are_monotone(a in lit_with_jumps(2, 3, 3), b in lit_with_jumps(2, 3, 3)) {
        if lex_cmp(&a, &b) == Ordering::Greater {
            return Ok(());
        }
        let budget = Budget::default();
        let ha = hybrid_limit(&truncations(&a), budget).unwrap();
        let hb = hybrid_limit(&truncations(&b), budget).unwrap();
        prop_assert_ne!(compare_class(&ha, &hb).unwrap(), Ordering::Greater);
    }

    #[test]
    fn formal_limit_of_truncations_is_the_decimal(a in lit_with_jumps(2, 3, 3)) {
        let x = a.periodic();
        let d = dec(&a);
        let magnitude = x.abs();
        let bound = match magnitude.value_as_terminating() {
            Some(v) if magnitude.is_nines() => MonotoneBound::Exclusive(v),
            _ => MonotoneBound::Inclusive(magnitude.truncate(0) + TerminatingDecimal::one()),
        };
        let (seq, direction) = if x.sign() == Sign::Negative {
            (ApproxSequence::truncations(&d), Direction::Nonincreasing)
        } else {
            (ApproxSequence::truncations(&d), Direction::Nondecreasing)
        };
        let bound = match (bound, direction) {
            (MonotoneBound::Exclusive(v), Direction::Nonincreasing) => MonotoneBound::Exclusive(-v),
            (MonotoneBound::Inclusive(v), Direction::Nonincreasing) => MonotoneBound::Inclusive(-v),
            (b, _) => b,
        };
        let limit = formal_limit_monotone(&seq, direction, bound, Budget::default()).unwrap();
        for n in 0..30 {
            prop_assert_eq!(limit.digit_at(-n), d.digit_at(-n));
        }
        prop_assert!(real_class(&d) == RealClass::from(x));
    }
}

// Field operations on classes.
proptest! {
    #![proptest_config(cheap())]

    #[test]
    fn class_field_axioms(a in lit_with_jumps(2, 3, 3), b in lit_with_jumps(2, 3, 3), c in lit_with_jumps(2, 3, 3)) {
        let (x, y, z) = (class(&a), class(&b), class(&c));
        prop_assert_eq!(add(&add(&x, &y).unwrap(), &z).unwrap(), add(&x, &add(&y, &z).unwrap()).unwrap());
        prop_assert_eq!(mul(&mul(&x, &y).unwrap(), &z).unwrap(), mul(&x, &mul(&y, &z).unwrap()).unwrap());
        prop_assert_eq!(add(&x, &y).unwrap(), add(&y, &x).unwrap());
        prop_assert_eq!(mul(&x, &y).unwrap(), mul(&y, &x).unwrap());
        prop_assert_eq!(
            mul(&x, &add(&y, &z).unwrap()).unwrap(),
            add(&mul(&x, &y).unwrap(), &mul(&x, &z).unwrap()).unwrap()
        );
        prop_assert!(add(&x, &neg(&x)).unwrap().is_zero());
        prop_assert!(sub(&x, &x).unwrap().is_zero());
        if !x.is_zero() {
            prop_assert_eq!(mul(&x, &reciprocal(&x).unwrap()).unwrap(), RealClass::one());
        }
        if compare_class(&x, &y).unwrap() == Ordering::Less {
            prop_assert_eq!(compare_class(&add(&x, &z).unwrap(), &add(&y, &z).unwrap()).unwrap(), Ordering::Less);
            if compare_class(&z, &RealClass::zero()).unwrap() == Ordering::Greater {
                prop_assert_eq!(compare_class(&mul(&x, &z).unwrap(), &mul(&y, &z).unwrap()).unwrap(), Ordering::Less);
            }
        }
        if !x.is_zero() && !y.is_zero() {
            prop_assert!(!mul(&x, &y).unwrap().is_zero());
        }
    }

    #[test]
    fn formal_operations_respect_classes(a in lit_with_jumps(2, 3, 3), b in lit_with_jumps(2, 3, 3)) {
        let (c, d) = (dec(&a), dec(&b));
        let budget = Budget::default();
        prop_assert_eq!(real_class(&formal_add(&c, &d, budget).unwrap()), add(&class(&a), &class(&b)).unwrap());
        prop_assert_eq!(real_class(&formal_mul(&c, &d, budget).unwrap()), mul(&class(&a), &class(&b)).unwrap());
    }

    #[test]
    fn formal_sums_associate_up_to_equivalence(a in lit_with_jumps(1, 2, 2), b in lit_with_jumps(1, 2, 2), c in lit_with_jumps(1, 2, 2)) {
        let budget = Budget::default();
        let (x, y, z) = (dec(&a), dec(&b), dec(&c));
        let left = formal_add(&formal_add(&x, &y, budget).unwrap(), &z, budget).unwrap();
        let right = formal_add(&x, &formal_add(&y, &z, budget).unwrap(), budget).unwrap();
        prop_assert!(equivalent(&left, &right).unwrap());
    }

    #[test]
    fn formal_products_associate(a in lit_with_jumps(1, 2, 2), b in lit_with_jumps(1, 2, 2), c in lit_with_jumps(1, 2, 2)) {
        let budget = Budget::default();
        let (x, y, z) = (dec(&a), dec(&b), dec(&c));
        let left = formal_mul(&formal_mul(&x, &y, budget).unwrap(), &z, budget).unwrap();
        let right = formal_mul(&x, &formal_mul(&y, &z, budget).unwrap(), budget).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn long_division_invariant(a in lit(2, 3, 3), n in 1u64..40) {
        let d = dec(&a);
        match decreal::real_arith::LongDivisionState::step(&d, n) {
            Ok(state) => prop_assert!(state.invariant_holds()),
            Err(e) => {
                prop_assert_eq!(e, Error::DivisionByZero);
                prop_assert!(d.truncate(n as i64).is_zero());
            }
        }
    }
}

#[test]
fn formal_addition_counterexample() {
    let b = Budget::default();
    let d = |s: &str| s.parse::<Decimal>().unwrap();
    let left = formal_add(&formal_add(&d("-0.(9)"), &d("1"), b).unwrap(), &d("0.(9)"), b).unwrap();
    let right = formal_add(&d("-0.(9)"), &formal_add(&d("1"), &d("0.(9)"), b).unwrap(), b).unwrap();
    assert_eq!(left, d("0.(9)"));
    assert_eq!(right, d("1"));
    assert_ne!(left, right);
    assert!(equivalent(&left, &right).unwrap());
}

#[test]
fn reciprocal_of_a_lazy_value() {
    let root = real_class(&sqrt_stream(&"2".parse().unwrap()).unwrap());
    let inv = reciprocal(&root).unwrap();
    match mul(&root, &inv) {
        Err(Error::JumpUnresolved { near, radius_exp }) => {
            assert_eq!(near, TerminatingDecimal::one());
            assert!(radius_exp >= 50);
        }
        Ok(product) => {
            let t = product.representative().try_truncate(50);
            match t {
                Ok(t) => assert!((t - TerminatingDecimal::one()).abs() <= TerminatingDecimal::pow10(-50)),
                Err(Error::JumpUnresolved { near, radius_exp }) => {
                    assert_eq!(near, TerminatingDecimal::one());
                    assert!(radius_exp >= 50);
                }
                Err(e) => panic!("{e}"),
            }
        }
        Err(e) => panic!("{e}"),
    }
}

// Periodic decimals.
proptest! {
    #![proptest_config(cheap())]

    #[test]
    fn arithmetic_matches_rational_oracle(a in lit_with_jumps(3, 4, 4), b in lit_with_jumps(3, 4, 4)) {
        let (x, y) = (a.periodic(), b.periodic());
        let (p, q) = (a.ratio(), b.ratio());
        let mut results = vec![(add_p(&x, &y), &p + &q), (sub_p(&x, &y), &p - &q), (mul_p(&x, &y), &p * &q)];
        if q.is_zero() {
            prop_assert_eq!(inv_p(&y).unwrap_err(), Error::DivisionByZero);
        } else {
            results.push((inv_p(&y).unwrap(), q.recip()));
            results.push((div_p(&x, &y).unwrap(), &p / &q));
        }
        for (got, want) in results {
            prop_assert_eq!(frac(&got), want.clone());
            if renderable(&want) {
                prop_assert_eq!(got.to_string(), long_division_text(&want));
            }
        }
    }

    #[test]
    fn closure_certificates_reproduce_results(a in lit_with_jumps(2, 3, 3), b in lit_with_jumps(2, 3, 3)) {
        let (x, y) = (a.periodic(), b.periodic());
        let cases = [
            (ClosureOp::Add, Some(add_p(&x, &y))),
            (ClosureOp::Sub, Some(sub_p(&x, &y))),
            (ClosureOp::Mul, Some(mul_p(&x, &y))),
            (ClosureOp::Inv, inv_p(&x).ok()),
        ];
        for (op, expected) in cases {
            match (closure_certificate(&x, &y, op), expected) {
                (Ok(cert), Some(r)) => {
                    let m = frac(&PeriodicDecimal::from(cert.multiplier.to_terminating()));
                    prop_assert_eq!(m * frac(&r), frac(&PeriodicDecimal::from(cert.value.to_terminating())));
                    if renderable(&frac(&r)) {
                        prop_assert_eq!(cert.quotient(), r);
                    }
                }
                (Err(e), None) => prop_assert_eq!(e, Error::DivisionByZero),
                (Err(Error::CertificateTooLarge { limit }), Some(r)) => {
                    // Only operands or results with very long periods need such factors.
                    let long = |z: &PeriodicDecimal| z.period_len_at_most(limit).is_none();
                    prop_assert!(long(&x) || long(&y) || long(&r), "{:?} {:?}", op, r);
                }
                (got, want) => prop_assert!(false, "{:?} vs {:?}", got, want),
            }
        }
    }

    #[test]
    fn scaling_to_an_integer(a in lit_with_jumps(3, 4, 4)) {
        let x = a.periodic();
        let (exp, v) = scale_to_integer(&x);
        let m = nines_zeros(exp, exp).unwrap();
        let product = Lit::of(&PeriodicDecimal::from(m)).ratio() * a.ratio();
        prop_assert!(product.is_integer());
        prop_assert_eq!(product, Lit::of(&PeriodicDecimal::from(v.to_terminating())).ratio());
    }

    #[test]
    fn integral_scalings_are_detected_periodic(numer in 1u64..1_000_000_000_000, a in 1u64..7) {
        // c = numer / 9^(a)0^(a) has an integral scaling by construction.
        let ten = BigUint::from(10u8);
        let den = (num_traits::pow(ten.clone(), a as usize) - 1u8) * num_traits::pow(ten, a as usize);
        let rem = BigUint::from(numer) % &den;
        let stream = Decimal::from_generator(LongDivision { rem: rem.clone(), den: den.clone(), top: -1 });
        match detect_period(&stream, 200, 12).unwrap() {
            PeriodDetection::Found(x) => {
                prop_assert_eq!(a % x.period_len(), 0);
                let expected = BigRational::new(BigInt::from(rem), BigInt::from(den));
                prop_assert_eq!(Lit::of(&x).ratio(), expected);
            }
            PeriodDetection::NotFoundWithinBounds => prop_assert!(false, "period not found"),
        }
    }

    #[test]
    fn canonical_forms_are_stable(a in lit_with_jumps(3, 4, 4)) {
        let x = a.periodic();
        prop_assert_eq!(x.to_string().parse::<PeriodicDecimal>().unwrap(), x.clone());
        let t0 = x.t0_member();
        prop_assert_eq!(t0.to_string(), long_division_text(&a.ratio()));
        prop_assert_eq!(t0.t0_member(), t0.clone());
    }
}

#[test]
fn nines_zeros_divisibility_up_to_5000() {
    for r in 1..=5000u64 {
        let a = divisibility_exponent(&ScaledInteger::integer(r)).unwrap();
        let m = Lit::of(&PeriodicDecimal::from(nines_zeros(a, a).unwrap())).ratio().to_integer();
        assert!((m % r).is_zero(), "r = {r}");
    }
}

// Square roots.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn root_digits_bracket_the_target(a in lit_with_jumps(3, 2, 2)) {
        let mut a = a;
        a.negative = false;
        let c = a.periodic();
        let target = a.ratio();
        let mut state = SqrtState::new(&c).unwrap();
        for _ in 0..30 {
            state.step();
            let i = state.next_index() + 1;
            let p = t_ratio(&state.prefix());
            let up = &p + t_ratio(&TerminatingDecimal::pow10(i));
            prop_assert!(&p * &p <= target);
            prop_assert!(target < &up * &up);
        }
    }

    #[test]
    fn residue_obstruction_means_no_square(v in 1u64..100_000, scale in 0i64..3) {
        let c = TerminatingDecimal::new(BigInt::from(v), scale);
        if residue_obstruction(&c).unwrap() {
            let bounds = SearchBounds { max_int_digits: 1, max_preperiod: 1, max_period: 1 };
            let target = RealClass::from(PeriodicDecimal::from(c));
            prop_assert_eq!(exhaustive_square_search(&target, bounds).unwrap(), SquareSearch::NoSolution);
        }
    }
}

#[test]
fn root_of_two_matches_integer_square_root() {
    let root = sqrt_stream(&"2".parse().unwrap()).unwrap();
    for n in [1usize, 10, 50, 200] {
        let oracle = isqrt(&(BigUint::from(2u8) * num_traits::pow(BigUint::from(10u8), 2 * n)));
        let digits = root.digit_string(0, n + 1).unwrap();
        assert_eq!(digits, oracle.to_string(), "n = {n}");
    }
}

#[test]
fn square_of_root_stays_below_two() {
    let root = sqrt_stream(&"2".parse().unwrap()).unwrap();
    let sq = square_of_truncations(&root, Budget::default()).unwrap();
    assert_eq!(sq.digit_at(0).value(), 1);
    for depth in [5, 30, 60] {
        assert!(sq.truncate(depth) < TerminatingDecimal::from(2));
        assert!((1..=depth).all(|j| sq.digit_at(-j).value() == 9));
    }
}

// Expressions.
fn expr_tree() -> impl Strategy<Value = Expr> {
    let leaf = lit(2, 2, 2).prop_map(|mut l| {
        l.negative = false;
        Expr::Number(l.periodic())
    });
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            inner.prop_map(|e| Expr::Sqrt(Box::new(e))),
        ]
    })
}

fn neg_under_neg(e: &Expr) -> bool {
    match e {
        Expr::Neg(inner) => matches!(inner.as_ref(), Expr::Neg(_)) || neg_under_neg(inner),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => neg_under_neg(a) || neg_under_neg(b),
        Expr::Sqrt(a) => neg_under_neg(a),
        Expr::Number(_) => false,
    }
}

proptest! {
    #![proptest_config(cheap())]

    #[test]
    fn rendering_round_trips(e in expr_tree()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text).unwrap(), e.clone(), "{}", text);
        prop_assert!(!neg_under_neg(&e) || text.contains("-("));
    }

    #[test]
    fn literals_round_trip(a in lit_with_jumps(3, 4, 4)) {
        let x = a.periodic();
        prop_assert_eq!(x.to_string().parse::<PeriodicDecimal>().unwrap(), x.clone());
        let style = x.render(RepetendStyle::Ellipsis);
        if x.has_terminating_value() && !x.is_nines() {
            prop_assert_eq!(style.parse::<PeriodicDecimal>().unwrap(), x);
        }
    }
}

/// Rational value of an expression by the test oracle; `None` for division by
/// zero or a root outside the rationals.
fn oracle_value(e: &Expr) -> Option<Option<BigRational>> {
    Some(match e {
        Expr::Number(x) => Some(Lit::of(x).ratio()),
        Expr::Neg(a) => oracle_value(a)?.map(|v| -v),
        Expr::Add(a, b) => oracle_value(a)?.zip(oracle_value(b)?).map(|(x, y)| x + y),
        Expr::Sub(a, b) => oracle_value(a)?.zip(oracle_value(b)?).map(|(x, y)| x - y),
        Expr::Mul(a, b) => oracle_value(a)?.zip(oracle_value(b)?).map(|(x, y)| x * y),
        Expr::Div(a, b) => {
            let (x, y) = (oracle_value(a)?, oracle_value(b)?);
            match (x, y) {
                (Some(_), Some(y)) if y.is_zero() => return None,
                (Some(x), Some(y)) => Some(x / y),
                _ => None,
            }
        }
        Expr::Sqrt(a) => match oracle_value(a)? {
            Some(v) if v.is_negative() => return None,
            Some(v) => {
                let (n, d) = (isqrt(v.numer().magnitude()), isqrt(v.denom().magnitude()));
                let root = BigRational::new(BigInt::from(n), BigInt::from(d));
                (&root * &root == v).then_some(root)
            }
            None => None,
        },
    })
}

fn enclosure_contains(result: &decreal::expr::EvalResult, value: &BigRational, digits: u32) -> bool {
    match &result.exactness {
        Exactness::Exact => result.class.as_ref().and_then(|c| c.as_exact()).is_some_and(|x| &frac(x) == value),
        Exactness::Enclosed { radius_exp } => {
            let t: TerminatingDecimal = result.rendered.trim_end_matches('…').parse().unwrap();
            (t_ratio(&t) - value).abs() <= t_ratio(&TerminatingDecimal::pow10(-(*radius_exp as i64))) && *radius_exp == digits
        }
        Exactness::UndecidedJump { near, .. } => &t_ratio(near) == value,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn backends_agree(e in expr_tree()) {
        let digits = 12;
        let exact = evaluate(&e, digits, Backend::Exact);
        let lazy = evaluate(&e, digits, Backend::Lazy);
        match (oracle_value(&e), exact, lazy) {
            (None, Err(x), Err(y)) => {
                let math = |e: &Error| matches!(e, Error::DivisionByZero | Error::NegativeInput | Error::BudgetExhausted { .. });
                prop_assert!(math(&x), "{}", x);
                prop_assert!(math(&y), "{}", y);
            }
            (Some(Some(v)), Ok(x), Ok(y)) => {
                prop_assert!(enclosure_contains(&x, &v, digits), "{} exact {}", e, x);
                prop_assert!(enclosure_contains(&y, &v, digits), "{} lazy {}", e, y);
            }
            (Some(None), Ok(x), Ok(y)) => {
                let (Some(cx), Some(cy)) = (x.class.as_ref(), y.class.as_ref()) else { return Ok(()) };
                if let (Ok(tx), Ok(ty)) = (cx.representative().try_truncate(10), cy.representative().try_truncate(10)) {
                    prop_assert!((tx - ty).abs() <= TerminatingDecimal::pow10(-10) * TerminatingDecimal::from(2), "{}", e);
                }
            }
            (Some(None), _, _) => {}
            (o, x, y) => prop_assert!(false, "{}: oracle {:?}, exact {:?}, lazy {:?}", e, o, x.map(|r| r.to_string()), y.map(|r| r.to_string())),
        }
    }
}

#[test]
fn refining_never_contradicts_printed_digits() {
    for src in ["sqrt(2)", "1/7 + sqrt(3)", "sqrt(5)*3 - 1", "1.(2)*0.(81)"] {
        let e = parse(src).unwrap();
        let coarse = evaluate(&e, 20, Backend::Exact).unwrap();
        let fine = evaluate(&e, 30, Backend::Exact).unwrap();
        if coarse.exactness == Exactness::Exact {
            assert_eq!(coarse.rendered, fine.rendered);
        } else {
            let prefix = coarse.rendered.trim_end_matches('…');
            assert!(fine.rendered.starts_with(prefix), "{src}: {} then {}", coarse.rendered, fine.rendered);
        }
    }
}

#[test]
fn shared_streams_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>(_: &T) {}
    let root = Arc::new(sqrt_stream(&"3".parse().unwrap()).unwrap());
    assert_send_sync(&root);
}
