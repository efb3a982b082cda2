//! Integer helpers for periods of decimal expansions.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Splits `n` as `2^a · 5^b · t` with `t` coprime to 10; returns `(a, b, t)`.
pub(crate) fn split_tens(n: &BigUint) -> (u64, u64, BigUint) {
    let mut t = n.clone();
    let mut twos = 0;
    let mut fives = 0;
    if t.is_zero() {
        return (0, 0, t);
    }
    let two = BigUint::from(2u32);
    let five = BigUint::from(5u32);
    loop {
        let (q, r) = t.div_rem(&two);
        if !r.is_zero() {
            break;
        }
        t = q;
        twos += 1;
    }
    loop {
        let (q, r) = t.div_rem(&five);
        if !r.is_zero() {
            break;
        }
        t = q;
        fives += 1;
    }
    (twos, fives, t)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub(crate) fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        let mut m = m;
        for p in [2u64, 3, 5, 7, 11, 13] {
            while m % p == 0 {
                primes.push(p);
                m /= p;
            }
        }
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            primes.push(m);
        } else {
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Carmichael's λ(n): every unit mod n has order dividing it.
fn carmichael(n: u64) -> u64 {
    factorize(n).into_iter().fold(1u64, |acc, (p, e)| {
        let pe1 = p.pow(e - 1);
        let lambda = if p == 2 && e >= 3 {
            pe1 / 2
        } else {
            pe1 * (p - 1)
        };
        acc.lcm(&lambda)
    })
}

/// Order of 10 modulo `t`, for `t` coprime to 10. The order modulo 1 is 1.
pub(crate) fn order_of_ten(t: &BigUint) -> u64 {
    if t.is_one() {
        return 1;
    }
    match t.to_u64() {
        Some(m) => order_of_ten_u64(m),
        None => order_by_iteration(t),
    }
}

/// `ord_t(10)` if it is at most `limit`; never iterates past `limit` steps.
pub(crate) fn order_of_ten_at_most(t: &BigUint, limit: u64) -> Option<u64> {
    if t.is_one() {
        return Some(1);
    }
    if let Some(m) = t.to_u64() {
        return Some(order_of_ten_u64(m)).filter(|&k| k <= limit);
    }
    let ten = BigUint::from(10u32);
    let mut r = &ten % t;
    for k in 1..=limit {
        if r.is_one() {
            return Some(k);
        }
        r = (&r * &ten) % t;
    }
    None
}

fn order_of_ten_u64(m: u64) -> u64 {
    let mut order = carmichael(m);
    for (p, _) in factorize(order) {
        while order.is_multiple_of(p) && pow_mod(10, order / p, m) == 1 {
            order /= p;
        }
    }
    order
}

fn order_by_iteration(t: &BigUint) -> u64 {
    let ten = BigUint::from(10u32);
    let start = &ten % t;
    let mut r = start.clone();
    let mut k = 1u64;
    while !r.is_one() {
        r = (&r * &ten) % t;
        k += 1;
    }
    k
}
