//! Primality testing. Below 2^64 the verdict is deterministic (Miller-Rabin
//! with a witness set known to cover that range). At or above 2^64 the
//! verdict combines a strong base-2 Miller-Rabin test with a strong Lucas
//! test (Baillie-PSW); no counterexample is known, but the result is
//! reported as `Probable` and every consumer carries that flag through to
//! its output rows.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// How a primality (or primality-dependent) result was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Certainty {
    /// Deterministic: exhaustive witness set or complete trial division.
    Proved,
    /// Strong probable prime (Baillie-PSW); no known counterexample.
    Probable,
}

impl Certainty {
    /// A chain of results is only as certain as its weakest link.
    pub fn combine(self, other: Certainty) -> Certainty {
        self.max(other)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Certainty::Proved => "proved",
            Certainty::Probable => "probable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeVerdict {
    /// Not prime (includes 0 and 1). Composite verdicts are always certain.
    Composite,
    Prime(Certainty),
}

impl PrimeVerdict {
    pub fn is_prime(self) -> bool {
        matches!(self, PrimeVerdict::Prime(_))
    }
}

/// Deterministic for every u64: Miller-Rabin with the first twelve prime
/// bases, which admit no composite below 3.3 * 10^24 > 2^64.
const MR_BASES_U64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1u64 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, n);
        }
        base = mulmod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// True when `a` proves `n` composite (n odd, n > 2, n - 1 = d * 2^s).
fn mr_witness(n: u64, d: u64, s: u32, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return false;
    }
    let mut x = powmod(a, d, n);
    if x == 1 || x == n - 1 {
        return false;
    }
    for _ in 1..s {
        x = mulmod(x, x, n);
        if x == n - 1 {
            return false;
        }
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    !MR_BASES_U64.iter().any(|&a| mr_witness(n, d, s, a))
}

/// Primality with explicit certainty: deterministic below 2^64,
/// Baillie-PSW above.
pub fn check_prime(n: &BigUint) -> PrimeVerdict {
    if let Some(small) = n.to_u64() {
        return if is_prime_u64(small) {
            PrimeVerdict::Prime(Certainty::Proved)
        } else {
            PrimeVerdict::Composite
        };
    }
    // n >= 2^64 from here on.
    for p in MR_BASES_U64 {
        if (n % p).is_zero() {
            return PrimeVerdict::Composite;
        }
    }
    let n_int = BigInt::from(n.clone());
    if !mr_strong_base2(&n_int) {
        return PrimeVerdict::Composite;
    }
    if is_perfect_square(n) {
        // A square passes no Lucas test with jacobi(D) = -1; classify now.
        return PrimeVerdict::Composite;
    }
    if !lucas_strong(&n_int) {
        return PrimeVerdict::Composite;
    }
    PrimeVerdict::Prime(Certainty::Probable)
}

pub fn is_prime(n: &BigUint) -> bool {
    check_prime(n).is_prime()
}

fn is_perfect_square(n: &BigUint) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

/// Strong Miller-Rabin test to base 2 for odd n >= 3.
fn mr_strong_base2(n: &BigInt) -> bool {
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n odd => n-1 > 0");
    let d: BigInt = &n_minus_1 >> s;
    let mut x = BigInt::from(2).modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&BigInt::from(2), n);
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    debug_assert!(n.is_positive() && n.is_odd());
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1i32;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u8().unwrap();
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u8().unwrap() == 3 && (&n % 4u32).to_u8().unwrap() == 3 {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// x/2 mod odd n, assuming 0 <= x < n.
fn halve_mod(x: BigInt, n: &BigInt) -> BigInt {
    if x.is_even() {
        x >> 1
    } else {
        (x + n) >> 1
    }
}

/// Strong Lucas probable-prime test with Selfridge parameters: the first
/// D in 5, -7, 9, -11, ... with jacobi(D/n) = -1, then P = 1,
/// Q = (1 - D)/4. Assumes n odd, n > 37, no tiny factors, not a square.
fn lucas_strong(n: &BigInt) -> bool {
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, n) {
            -1 => break,
            0 => {
                // Shared factor with D; |D| << n here, so it is proper.
                return false;
            }
            _ => {
                d = if d.is_positive() { -(&d + 2i32) } else { -(&d - 2i32) };
            }
        }
    }
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4;

    // n + 1 = d0 * 2^s with d0 odd.
    let n_plus_1: BigInt = n + 1;
    let s = n_plus_1.trailing_zeros().expect("n odd => n+1 > 0");
    let d0: BigInt = &n_plus_1 >> s;

    // Binary ladder for (U_m, V_m, Q^m), starting at m = 1, scanning the
    // bits of d0 from the second-highest downward. Doubling:
    // U_2m = U_m V_m, V_2m = V_m^2 - 2 Q^m. Increment:
    // U_{m+1} = (P U_m + V_m)/2, V_{m+1} = (D U_m + P V_m)/2.
    let mut u = BigInt::one();
    let mut v = p.clone();
    let mut qk = q.mod_floor(n);
    let bits = d0.bits();
    for i in (0..bits - 1).rev() {
        u = (&u * &v).mod_floor(n);
        v = (&v * &v - 2i32 * &qk).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if d0.bit(i) {
            let u_next = halve_mod((&p * &u + &v).mod_floor(n), n);
            let v_next = halve_mod((&d * &u + &p * &v).mod_floor(n), n);
            u = u_next;
            v = v_next;
            qk = (&qk * &q).mod_floor(n);
        }
    }

    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - 2i32 * &qk).mod_floor(n);
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk).mod_floor(n);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    fn two_pow(e: u32) -> BigUint {
        BigUint::one() << e
    }

    #[test]
    fn small_values_and_edge_cases() {
        assert!(!is_prime_u64(0));
        assert!(!is_prime_u64(1));
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(!is_prime_u64(4));
        assert!(is_prime_u64(31));
        assert!(is_prime_u64(17));
        assert!(!is_prime_u64(125));
        let primes_to_100: Vec<u64> = (2..=100).filter(|&m| is_prime_u64(m)).collect();
        assert_eq!(
            primes_to_100,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
        );
    }

    #[test]
    fn strong_pseudoprimes_to_small_bases_are_rejected() {
        // 2047 = 23 * 89 passes base 2 alone; 3215031751 = 151 * 751 * 28351
        // passes bases 2, 3, 5, 7. Both must fail the full witness set.
        assert!(!is_prime_u64(2047));
        assert!(!is_prime_u64(3215031751));
        assert!(!is_prime_u64(25326001));
    }

    #[test]
    fn u64_boundary_values() {
        assert!(is_prime_u64(u64::MAX - 58)); // 2^64 - 59, the largest u64 prime
        assert!(!is_prime_u64(u64::MAX));
        assert!(is_prime_u64((1 << 61) - 1)); // Mersenne
    }

    #[test]
    fn verdict_certainty_tracks_the_64_bit_boundary() {
        assert_eq!(
            check_prime(&big("2305843009213693951")), // 2^61 - 1
            PrimeVerdict::Prime(Certainty::Proved)
        );
        assert_eq!(
            check_prime(&(two_pow(64) + 13u32)),
            PrimeVerdict::Prime(Certainty::Probable)
        );
        assert_eq!(check_prime(&two_pow(64)), PrimeVerdict::Composite);
        assert_eq!(check_prime(&BigUint::zero()), PrimeVerdict::Composite);
        assert_eq!(check_prime(&BigUint::one()), PrimeVerdict::Composite);
    }

    #[test]
    fn mersenne_numbers_above_64_bits() {
        for e in [89u32, 107, 127] {
            assert_eq!(
                check_prime(&(two_pow(e) - 1u32)),
                PrimeVerdict::Prime(Certainty::Probable),
                "2^{e} - 1"
            );
        }
        for e in [67u32, 97, 101] {
            assert_eq!(check_prime(&(two_pow(e) - 1u32)), PrimeVerdict::Composite, "2^{e} - 1");
        }
    }

    #[test]
    fn mixed_large_values() {
        assert!(is_prime(&(two_pow(81) + 17u32)));
        assert!(!is_prime(&(two_pow(89) + 7u32)));
        assert!(!is_prime(&(two_pow(32) + 1u32))); // F_5 = 641 * 6700417
        assert!(!is_prime(&(two_pow(128)))); // even
        // Squares of large primes must not slip through the Lucas stage.
        let p = two_pow(89) - 1u32;
        assert!(!is_prime(&(&p * &p)));
    }

    #[test]
    fn jacobi_matches_legendre_for_small_primes() {
        // For odd prime n, jacobi(a/n) = a^((n-1)/2) mod n mapped to {-1,0,1}.
        for n in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            for a in 0..30i64 {
                let j = jacobi(&BigInt::from(a), &BigInt::from(n));
                let e = powmod(a.rem_euclid(n as i64) as u64, (n - 1) / 2, n);
                let legendre = if e == 0 {
                    0
                } else if e == 1 {
                    1
                } else {
                    assert_eq!(e, n - 1);
                    -1
                };
                assert_eq!(j, legendre, "a={a} n={n}");
            }
        }
    }
}
