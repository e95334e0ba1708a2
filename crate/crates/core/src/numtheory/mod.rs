//! Number theory for the scan machinery: primality with explicit certainty,
//! factorization, odd divisors, the arithmetic functions psi and beta, the
//! decomposition of n = 2^(h-1) p (p odd prime) behind the index set Phi,
//! and enumeration of the families E_k = {n : n = p(p+k)/2, p = 2^h - k
//! prime}.

mod factor;
mod primality;

pub use factor::{factorize_big, factorize_u64, least_odd_prime_factor, odd_divisors};
pub use primality::{check_prime, is_prime, is_prime_u64, Certainty, PrimeVerdict};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::exact::Rational;

/// The unique way to read a member of Phi: n = 2^(h-1) p with p an odd
/// prime, so that 2n = 2^h p, and k = 2^h - p is the (always odd) offset
/// making p + k a power of two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiDecomposition {
    pub n: BigUint,
    pub h: u32,
    pub p: BigUint,
    pub k: BigInt,
    /// Certainty of the primality of p.
    pub certainty: Certainty,
}

impl PhiDecomposition {
    pub fn sign_of_k(&self) -> i32 {
        use num_traits::Signed;
        if self.k.is_negative() {
            -1
        } else {
            1
        }
    }
}

/// The pair psi(n), beta(n):
/// for n = 2^a * (odd > 1) with least odd prime factor p1,
///   psi(n) = min(2^(a+1), p1) and beta(n) = (2n/psi - psi - 1)/2;
/// for n a power of two, psi(n) = 0 and beta(n) = -n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiBeta {
    pub n: BigUint,
    pub psi: BigUint,
    pub beta: Rational,
    /// Certainty of the least-odd-prime-factor computation.
    pub certainty: Certainty,
}

pub fn psi_beta(n: &BigUint) -> PsiBeta {
    assert!(!n.is_zero(), "psi/beta need n >= 1");
    match least_odd_prime_factor(n) {
        None => PsiBeta {
            n: n.clone(),
            psi: BigUint::zero(),
            beta: -Rational::from(BigInt::from(n.clone())),
            certainty: Certainty::Proved,
        },
        Some((p1, certainty)) => {
            let a = n.trailing_zeros().unwrap_or(0);
            let two_pow = BigUint::one() << (a + 1);
            let psi = p1.min(two_pow);
            // psi divides 2n in both branches, so this is exact.
            let two_n_over_psi = BigInt::from((n * 2u32) / &psi);
            let numerator = two_n_over_psi - BigInt::from(psi.clone()) - 1;
            PsiBeta {
                n: n.clone(),
                psi,
                beta: Rational::new(numerator, BigInt::from(2)),
                certainty,
            }
        }
    }
}

/// Some(decomposition) iff n = 2^a * p with p an odd prime (a >= 0), i.e.
/// iff n belongs to Phi; None otherwise (in particular for powers of two).
pub fn phi_decompose(n: &BigUint) -> Option<PhiDecomposition> {
    if n.is_zero() {
        return None;
    }
    let a = n.trailing_zeros().unwrap_or(0);
    let odd: BigUint = n >> a;
    if odd.is_one() {
        return None;
    }
    let certainty = match check_prime(&odd) {
        PrimeVerdict::Composite => return None,
        PrimeVerdict::Prime(c) => c,
    };
    let h = u32::try_from(a).expect("power of two within u32 range") + 1;
    let k = (BigInt::one() << h) - BigInt::from(odd.clone());
    Some(PhiDecomposition {
        n: n.clone(),
        h,
        p: odd,
        k,
        certainty,
    })
}

/// All members of E_k with 1 <= h <= max_h, ascending in h: for each h with
/// p = 2^h - k an odd prime >= 3, the member n = p * 2^(h-1) = p(p+k)/2.
/// Even k always yields the empty sequence (p odd and 2^h even force k odd).
pub fn ek_members(k: &BigInt, max_h: u32) -> Vec<PhiDecomposition> {
    use num_integer::Integer as _;
    let mut out = Vec::new();
    if k.is_even() {
        return out;
    }
    for h in 1..=max_h {
        let p_signed = (BigInt::one() << h) - k;
        if p_signed < BigInt::from(3) {
            continue;
        }
        let p = p_signed.to_biguint().expect("positive by the bound above");
        let certainty = match check_prime(&p) {
            PrimeVerdict::Composite => continue,
            PrimeVerdict::Prime(c) => c,
        };
        let n = &p << (h - 1);
        out.push(PhiDecomposition {
            n,
            h,
            p,
            k: k.clone(),
            certainty,
        });
    }
    out
}
