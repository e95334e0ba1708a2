//! Integer factorization sized for the scans in this crate: trial division
//! (complete below 10^12), Brent's variant of Pollard rho above, and a
//! big-integer fallback for the rare inputs past 2^64. Certainty of any
//! factorization is `Proved` unless a prime factor's primality itself rests
//! on a probable-prime verdict.

use num_bigint::BigUint;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use super::primality::{check_prime, is_prime_u64, Certainty, PrimeVerdict};

/// Trial division alone is complete for n < TRIAL_COMPLETE_BOUND
/// (divisors up to 10^6 are tested).
const TRIAL_COMPLETE_BOUND: u64 = 1_000_000_000_000;
const TRIAL_DIVISOR_BOUND: u64 = 1_000_000;

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Brent's cycle-finding Pollard rho; returns a nontrivial factor of an odd
/// composite n that is not a prime power of a tiny prime. Retries with new
/// polynomial offsets until a split is found.
fn pollard_brent_u64(n: u64) -> u64 {
    debug_assert!(n > 3 && n % 2 != 0 && !is_prime_u64(n));
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut saved = (x, y);
        'outer: while d == 1 {
            // Batch gcd: accumulate |x - y| products, check every 64 steps.
            let mut prod = 1u64;
            saved = (x, y);
            for _ in 0..64 {
                x = f(x);
                y = f(f(y));
                let diff = x.abs_diff(y);
                if diff == 0 {
                    // Cycle closed without a factor; restart with new c.
                    d = n;
                    break 'outer;
                }
                prod = mulmod(prod, diff, n);
            }
            d = prod.gcd(&n);
        }
        if d == n {
            // Backtrack step by step from the last checkpoint.
            let (mut bx, mut by) = saved;
            d = 1;
            while d == 1 {
                bx = f(bx);
                by = f(f(by));
                let diff = bx.abs_diff(by);
                if diff == 0 {
                    d = n;
                    break;
                }
                d = diff.gcd(&n);
            }
        }
        if d != n && d != 1 {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of a u64, as sorted (prime, multiplicity) pairs.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n < 2 {
        return out;
    }
    let push = |p: u64, out: &mut Vec<(u64, u32)>, n: &mut u64| {
        let mut e = 0u32;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut out, &mut n);
    push(3, &mut out, &mut n);
    push(5, &mut out, &mut n);
    // Wheel mod 30 over candidates coprime to 2, 3, 5.
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut d = 7u64;
    let mut w = 0usize;
    let bound = if n < TRIAL_COMPLETE_BOUND { u64::MAX } else { TRIAL_DIVISOR_BOUND };
    while d <= bound && d.checked_mul(d).map_or(false, |dd| dd <= n) {
        push(d, &mut out, &mut n);
        d += WHEEL[w];
        w = (w + 1) % 8;
    }
    if n > 1 {
        if is_prime_u64(n) {
            out.push((n, 1));
        } else {
            // Composite cofactor with no divisor below 10^6: rho splits it.
            let mut stack = vec![n];
            let mut found: Vec<u64> = Vec::new();
            while let Some(m) = stack.pop() {
                if is_prime_u64(m) {
                    found.push(m);
                    continue;
                }
                let f = pollard_brent_u64(m);
                stack.push(f);
                stack.push(m / f);
            }
            found.sort_unstable();
            let mut i = 0;
            while i < found.len() {
                let p = found[i];
                let e = found[i..].iter().take_while(|&&x| x == p).count();
                out.push((p, e as u32));
                i += e;
            }
        }
    }
    out.sort_unstable();
    out
}

/// Smallest odd prime factor of n together with the certainty of the
/// primality reasoning behind it; None when n is a power of two.
pub fn least_odd_prime_factor(n: &BigUint) -> Option<(BigUint, Certainty)> {
    if n.is_zero() {
        return None;
    }
    let tz = n.trailing_zeros().unwrap_or(0);
    let odd: BigUint = n >> tz;
    if odd.is_one() {
        return None;
    }
    if let Some(small) = odd.to_u64() {
        let (p, _) = factorize_u64(small)[0];
        return Some((BigUint::from(p), Certainty::Proved));
    }
    // Beyond u64: trial division by small odd primes first.
    let mut d = 3u64;
    while d < TRIAL_DIVISOR_BOUND {
        if is_prime_u64(d) && (&odd % d).is_zero() {
            return Some((BigUint::from(d), Certainty::Proved));
        }
        d += 2;
    }
    match check_prime(&odd) {
        PrimeVerdict::Prime(c) => Some((odd, c)),
        PrimeVerdict::Composite => {
            // Fully split the cofactor and take the least declared-prime
            // piece. Any Baillie-PSW verdict in the chain demotes certainty.
            let (factors, certainty) = factorize_big(&odd);
            let least = factors.into_iter().map(|(p, _)| p).min().expect("composite > 1");
            Some((least, certainty))
        }
    }
}

/// Factorization of an arbitrary BigUint; sorted (prime, multiplicity)
/// pairs plus the weakest primality certainty used. Perfect powers are
/// peeled by root extraction; beyond that, practical only when every
/// composite past the trial bound splits under Pollard rho.
pub fn factorize_big(n: &BigUint) -> (Vec<(BigUint, u32)>, Certainty) {
    if let Some(small) = n.to_u64() {
        let fs = factorize_u64(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
        return (fs, Certainty::Proved);
    }
    let mut n = n.clone();
    let mut primes: Vec<BigUint> = Vec::new();
    let mut certainty = Certainty::Proved;
    for d in [2u64, 3, 5] {
        while (&n % d).is_zero() {
            n /= d;
            primes.push(BigUint::from(d));
        }
    }
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut d = 7u64;
    let mut w = 0usize;
    while d < TRIAL_DIVISOR_BOUND && !n.is_one() {
        while (&n % d).is_zero() {
            n /= d;
            primes.push(BigUint::from(d));
        }
        d += WHEEL[w];
        w = (w + 1) % 8;
    }
    if !n.is_one() {
        let mut stack = vec![n];
        while let Some(m) = stack.pop() {
            if let Some(small) = m.to_u64() {
                for (p, e) in factorize_u64(small) {
                    for _ in 0..e {
                        primes.push(BigUint::from(p));
                    }
                }
                continue;
            }
            match check_prime(&m) {
                PrimeVerdict::Prime(c) => {
                    certainty = certainty.combine(c);
                    primes.push(m);
                }
                PrimeVerdict::Composite => {
                    // Rho expects O(sqrt(p)) iterations on p^e, so peel
                    // perfect powers by root extraction before trying it.
                    if let Some((root, e)) = perfect_power(&m) {
                        for _ in 0..e {
                            stack.push(root.clone());
                        }
                    } else {
                        let f = pollard_brent_big(&m);
                        stack.push(&m / &f);
                        stack.push(f);
                    }
                }
            }
        }
    }
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    (out, certainty)
}

/// The smallest root r with m = r^e, e >= 2, if one exists. Prime
/// exponents suffice: a composite exponent reduces through repeated
/// extraction of its prime parts.
fn perfect_power(m: &BigUint) -> Option<(BigUint, u32)> {
    let bits = m.bits() as u32;
    for e in 2..=bits.max(2) {
        if !is_prime_u64(e as u64) {
            continue;
        }
        let root = m.nth_root(e);
        if num_traits::pow(root.clone(), e as usize) == *m {
            return Some((root, e));
        }
    }
    None
}

fn pollard_brent_big(n: &BigUint) -> BigUint {
    let mut c = 1u64;
    loop {
        let f = |x: &BigUint| (x * x + c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        loop {
            x = f(&x);
            y = f(&f(&y));
            if x == y {
                break; // cycle closed, retry with a new offset
            }
            let diff = if x > y { &x - &y } else { &y - &x };
            let d = diff.gcd(n);
            if !d.is_one() {
                if &d == n {
                    break;
                }
                return d;
            }
        }
        c += 1;
    }
}

/// All odd divisors of the even number 2n, ascending. These index the
/// summands of the odd-divisor form of C_n(q).
pub fn odd_divisors(two_n: u64) -> Vec<u64> {
    assert!(two_n >= 2 && two_n % 2 == 0, "input must be even and >= 2");
    let odd_part = two_n >> two_n.trailing_zeros();
    let mut divs: Vec<u64> = vec![1];
    for (p, e) in factorize_u64(odd_part) {
        let snapshot_len = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..snapshot_len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}
