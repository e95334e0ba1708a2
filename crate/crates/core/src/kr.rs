//! The ideal-counting polynomial C_n(q) of F_q[x, y, x^-1, y^-1], by three
//! independent algorithms, plus exact evaluation and the deviation
//! D_n(q) = C_n(q)/q^n - (1 - 1/q) q^n whose values over n in Phi are the
//! object of the scans in `limits`.
//!
//! Route 1 (coefficient expansion):
//!   C_n(q) = c_{n,0} q^n + sum_{i>=1} c_{n,i} (q^{n+i} + q^{n-i}),
//! where c_{n,0} = 2(-1)^r when n = r(r+1)/2 is triangular (else 0) and
//! c_{n,i} accumulates (-1)^r over representations n = r(r+2i+1)/2 and
//! (-1)^{r-1} over n = r(r+2i-1)/2 with r, i >= 1. Only r with
//! r(r+1)/2 <= n can contribute, so the expansion costs O(sqrt n).
//!
//! Route 2 (odd divisors):
//!   q^{-n} C_n(q) = (1 - 1/q) * sum_r (q^{e(r)} - 1) / q^{(e(r)-1)/2},
//! summed over the odd divisors r of 2n, where e(r) = 2n/r - r is always
//! odd; each summand is the two-term Laurent polynomial
//! q^{(e+1)/2} - q^{-(e-1)/2}, valid for negative e as well.
//!
//! Route 3 (generating function):
//!   sum_{n>=0} q^{-n} C_n(q) t^n
//!     = prod_{m>=1} (1 - t^m)^2 / ((1 - q t^m)(1 - q^{-1} t^m)),
//! expanded exactly modulo t^{N+1}.

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{rat_pow, Integer, LaurentPoly, Rational, SeriesFactor, TruncatedSeries};
use crate::numtheory::odd_divisors;

/// Hard cap on the generating-function expansion order: the route exists to
/// cross-validate the other two, not to evaluate at large n.
pub const GF_ORDER_CAP: u64 = 500;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KrError {
    #[error("n must be at least 1")]
    InvalidOrder,
    #[error("generating-function route supports orders up to {cap}, got {requested}")]
    GfOrderTooLarge { requested: u64, cap: u64 },
    #[error(transparent)]
    Eval(#[from] crate::exact::EvalError),
}

/// Which of the three algorithms computes the polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CnRoute {
    Coefficients,
    /// Cheapest route: needs only the odd divisors of 2n.
    #[default]
    Divisors,
    GeneratingFunction,
}

/// The banded coefficients of C_n(q): center c_0 and offsets c_1..c_n with
/// C_n(q) = c_0 q^n + sum_i c_i (q^{n+i} + q^{n-i}). Each entry is a sum of
/// at most two unit contributions, so c_0 is in {-2, 0, 2} and |c_i| <= 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrCoefficients {
    pub n: u64,
    pub c: Vec<Integer>,
}

pub fn kr_coefficients(n: u64) -> Result<KrCoefficients, KrError> {
    if n == 0 {
        return Err(KrError::InvalidOrder);
    }
    assert!(n <= u64::MAX / 4, "order out of supported range");
    let mut c = vec![Integer::zero(); (n + 1) as usize];
    let mut r: u64 = 1;
    while r * (r + 1) / 2 <= n {
        let sign = if r % 2 == 0 { 1 } else { -1 };
        if r * (r + 1) / 2 == n {
            c[0] += 2 * sign;
        }
        if (2 * n) % r == 0 {
            let m = 2 * n / r;
            // n = r(r+2i+1)/2 means 2i = m - r - 1; contributes (-1)^r.
            let d = m as i64 - r as i64 - 1;
            if d >= 2 && d % 2 == 0 {
                c[(d / 2) as usize] += sign;
            }
            // n = r(r+2i-1)/2 means 2i = m - r + 1; contributes (-1)^(r-1).
            let d = m as i64 - r as i64 + 1;
            if d >= 2 && d % 2 == 0 {
                c[(d / 2) as usize] -= sign;
            }
        }
        r += 1;
    }
    Ok(KrCoefficients { n, c })
}

/// C_n(q) via the coefficient expansion; exponents span 0..2n.
pub fn cn_via_coefficients(n: u64) -> Result<LaurentPoly, KrError> {
    let kc = kr_coefficients(n)?;
    let n = n as i64;
    let mut poly = LaurentPoly::monomial(n, kc.c[0].clone());
    for (i, coeff) in kc.c.iter().enumerate().skip(1) {
        poly.add_term(n + i as i64, coeff);
        poly.add_term(n - i as i64, coeff);
    }
    Ok(poly)
}

/// q^{-n} C_n(q) via the odd-divisor sum; exponents span -n..n.
pub fn cn_via_divisors(n: u64) -> Result<LaurentPoly, KrError> {
    if n == 0 {
        return Err(KrError::InvalidOrder);
    }
    assert!(n <= u64::MAX / 4, "order out of supported range");
    let mut sum = LaurentPoly::zero();
    for r in odd_divisors(2 * n) {
        let e = (2 * n / r) as i64 - r as i64;
        assert!(e % 2 != 0, "2n/r and r have opposite parity for odd r | 2n");
        sum.add_term((e + 1) / 2, &Integer::from(1));
        sum.add_term(-(e - 1) / 2, &Integer::from(-1));
    }
    // Multiply by (1 - q^-1).
    Ok(&sum - &sum.shift(-1))
}

/// q^{-n} C_n(q) for n = 1..=max_n from the generating function, expanded
/// modulo t^(max_n+1); entry [i] is the polynomial for n = i + 1.
pub fn cn_via_gf(max_n: u64) -> Result<Vec<LaurentPoly>, KrError> {
    if max_n > GF_ORDER_CAP {
        return Err(KrError::GfOrderTooLarge {
            requested: max_n,
            cap: GF_ORDER_CAP,
        });
    }
    let order = max_n as usize;
    let mut series = TruncatedSeries::one(order);
    for m in 1..=order {
        series.apply_factor(SeriesFactor::OneMinusTmSquared, m);
        series.apply_factor(SeriesFactor::InvOneMinusQTm, m);
        series.apply_factor(SeriesFactor::InvOneMinusQInvTm, m);
    }
    assert_eq!(series.coeff(0), &LaurentPoly::one(), "constant term of the product");
    Ok((1..=order).map(|i| series.coeff(i).clone()).collect())
}

/// C_n(q) (exponents 0..2n) by the requested route.
pub fn cn_polynomial(n: u64, route: CnRoute) -> Result<LaurentPoly, KrError> {
    if n == 0 {
        return Err(KrError::InvalidOrder);
    }
    match route {
        CnRoute::Coefficients => cn_via_coefficients(n),
        CnRoute::Divisors => Ok(cn_via_divisors(n)?.shift(n as i64)),
        CnRoute::GeneratingFunction => {
            let all = cn_via_gf(n)?;
            Ok(all[(n - 1) as usize].shift(n as i64))
        }
    }
}

/// Exact C_n(q0).
pub fn cn_eval(n: u64, q0: &Rational, route: CnRoute) -> Result<Rational, KrError> {
    Ok(cn_polynomial(n, route)?.eval(q0)?)
}

/// Exact deviation D_n(q0) = C_n(q0)/q0^n - (1 - 1/q0) q0^n, computed from
/// the odd-divisor form of q^{-n} C_n(q).
pub fn deviation(n: u64, q0: &Rational) -> Result<Rational, KrError> {
    if q0.is_zero() {
        return Err(KrError::Eval(crate::exact::EvalError::PoleAtZero {
            exponent: -(n as i64),
        }));
    }
    let normalized = cn_via_divisors(n)?.eval(q0)?;
    let one = Rational::from(Integer::from(1));
    let growth = (&one - &q0.recip()) * rat_pow(q0, n as i64).expect("q0 != 0");
    Ok(normalized - growth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn poly(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(pairs.iter().map(|&(e, c)| (e, int(c))))
    }

    /// C_n for n = 1..6, ascending coefficients on exponents 0..2n.
    const SMALL_CN: [&[i64]; 6] = [
        &[1, -2, 1],
        &[1, -1, 0, -1, 1],
        &[1, -1, -1, 2, -1, -1, 1],
        &[1, -1, 0, 0, 0, 0, 0, -1, 1],
        &[1, -1, 0, -1, 1, 0, 1, -1, 0, -1, 1],
        &[1, -1, 0, 0, 0, 1, -2, 1, 0, 0, 0, -1, 1],
    ];

    fn frozen(n: usize) -> LaurentPoly {
        LaurentPoly::from_terms(
            SMALL_CN[n - 1]
                .iter()
                .enumerate()
                .map(|(e, &c)| (e as i64, int(c))),
        )
    }

    #[test]
    fn coefficient_route_matches_frozen_small_cases() {
        for n in 1..=6 {
            assert_eq!(cn_via_coefficients(n as u64).unwrap(), frozen(n), "C_{n}");
        }
    }

    #[test]
    fn divisor_route_matches_frozen_small_cases() {
        for n in 1..=6 {
            let got = cn_via_divisors(n as u64).unwrap().shift(n as i64);
            assert_eq!(got, frozen(n), "C_{n}");
        }
    }

    #[test]
    fn gf_route_matches_frozen_small_cases() {
        let all = cn_via_gf(6).unwrap();
        assert_eq!(all.len(), 6);
        for n in 1..=6 {
            assert_eq!(all[n - 1].shift(n as i64), frozen(n), "C_{n}");
        }
        assert_eq!(cn_via_gf(0).unwrap(), vec![]);
    }

    #[test]
    fn the_three_routes_agree_well_past_the_frozen_range() {
        let gf = cn_via_gf(60).unwrap();
        for n in 1..=60u64 {
            let a = cn_via_coefficients(n).unwrap();
            let b = cn_via_divisors(n).unwrap().shift(n as i64);
            let c = gf[(n - 1) as usize].shift(n as i64);
            assert_eq!(a, b, "coefficients vs divisors at n = {n}");
            assert_eq!(a, c, "coefficients vs generating function at n = {n}");
        }
    }

    #[test]
    fn closed_form_factorizations_of_tiny_cases() {
        // C_1 = (q-1)^2, C_2 = (q-1)(q^3-1), C_3 = (q-1)(q^2-1)(q^3+1).
        let q1 = poly(&[(1, 1), (0, -1)]);
        assert_eq!(cn_via_coefficients(1).unwrap(), &q1 * &q1);
        assert_eq!(
            cn_via_coefficients(2).unwrap(),
            &q1 * &poly(&[(3, 1), (0, -1)])
        );
        assert_eq!(
            cn_via_coefficients(3).unwrap(),
            &(&q1 * &poly(&[(2, 1), (0, -1)])) * &poly(&[(3, 1), (0, 1)])
        );
    }

    #[test]
    fn frozen_evaluations() {
        let ev = |n: u64, q: i64| cn_eval(n, &rat(q, 1), CnRoute::Divisors).unwrap();
        assert_eq!(ev(1, 2), rat(1, 1));
        assert_eq!(ev(1, 3), rat(4, 1));
        assert_eq!(ev(2, 2), rat(7, 1));
        assert_eq!(ev(2, 3), rat(52, 1));
        assert_eq!(ev(3, 2), rat(27, 1));
        assert_eq!(ev(3, 3), rat(448, 1));
        assert_eq!(ev(6, 2), rat(2079, 1));
        assert_eq!(ev(2, 5), rat(496, 1));
        assert_eq!(ev(3, 5), rat(12096, 1));
        // All routes evaluate identically.
        for route in [CnRoute::Coefficients, CnRoute::Divisors, CnRoute::GeneratingFunction] {
            assert_eq!(cn_eval(6, &rat(2, 1), route).unwrap(), rat(2079, 1));
        }
        // The normalized polynomial at q = 2 gives C_3(2)/2^3.
        assert_eq!(cn_via_divisors(3).unwrap().eval(&rat(2, 1)).unwrap(), rat(27, 8));
    }

    #[test]
    fn structural_invariants_up_to_120() {
        for n in 1..=120u64 {
            let cn = cn_via_coefficients(n).unwrap();
            let deg = 2 * n as i64;
            assert_eq!(cn.min_exp(), Some(0), "lowest exponent at n = {n}");
            assert_eq!(cn.max_exp(), Some(deg), "degree at n = {n}");
            assert_eq!(cn.coeff(deg), int(1), "monic at n = {n}");
            // Palindromy: C_n(q) = q^(2n) C_n(1/q).
            assert_eq!(cn, cn.substitute_inverse().shift(deg), "palindrome at n = {n}");
            // (q - 1)^2 divides C_n.
            let once = cn.div_q_minus_one().expect("q = 1 is a root");
            assert!(once.div_q_minus_one().is_some(), "double root at n = {n}");
            // Positivity at small prime q.
            for q in [2i64, 3, 5] {
                assert!(cn.eval(&rat(q, 1)).unwrap() > rat(0, 1), "C_{n}({q}) > 0");
            }
        }
    }

    #[test]
    fn banded_coefficients_stay_within_unit_sums() {
        for n in 1..=300u64 {
            let kc = kr_coefficients(n).unwrap();
            assert!(
                kc.c[0] == int(0) || kc.c[0] == int(2) || kc.c[0] == int(-2),
                "center coefficient at n = {n}"
            );
            for (i, c) in kc.c.iter().enumerate().skip(1) {
                assert!(int(-2) <= *c && *c <= int(2), "c_{{{n},{i}}} = {c}");
            }
        }
    }

    #[test]
    fn gf_symmetry_under_exponent_negation() {
        // Each t^n coefficient of the product is fixed by q -> 1/q.
        for p in cn_via_gf(25).unwrap() {
            assert_eq!(p.substitute_inverse(), p);
        }
    }

    #[test]
    fn frozen_deviations_at_two() {
        assert_eq!(deviation(6, &rat(2, 1)).unwrap(), rat(31, 64));
        assert_eq!(deviation(3, &rat(2, 1)).unwrap(), rat(-5, 8));
        assert_eq!(deviation(10, &rat(2, 1)).unwrap(), rat(-513, 1024));
    }

    #[test]
    fn error_cases() {
        assert_eq!(cn_via_coefficients(0), Err(KrError::InvalidOrder));
        assert_eq!(cn_via_divisors(0), Err(KrError::InvalidOrder));
        assert_eq!(cn_polynomial(0, CnRoute::Divisors), Err(KrError::InvalidOrder));
        assert!(matches!(
            cn_via_gf(GF_ORDER_CAP + 1),
            Err(KrError::GfOrderTooLarge { .. })
        ));
        assert!(matches!(deviation(3, &rat(0, 1)), Err(KrError::Eval(_))));
        // C_n itself has no negative exponents, so q = 0 is fine there.
        assert_eq!(cn_eval(5, &rat(0, 1), CnRoute::Coefficients).unwrap(), rat(1, 1));
    }
}
