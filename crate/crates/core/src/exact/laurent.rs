//! Sparse Laurent polynomials in one variable q with integer coefficients,
//! stored as an exponent -> coefficient map. Exponents may be negative;
//! zero coefficients are never stored, so the zero polynomial is the empty
//! map and equality is structural.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{rat_pow, Integer, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    /// q0 = 0 is only a valid evaluation point when no negative exponent
    /// is present.
    #[error("cannot evaluate at q = 0: term with exponent {exponent} is a pole")]
    PoleAtZero { exponent: i64 },
}

/// Laurent polynomial sum c_e q^e over a finite set of integer exponents e.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Integer>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Integer::from(1))
    }

    /// coeff * q^exp; collapses to zero when `coeff == 0`.
    pub fn monomial(exp: i64, coeff: Integer) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// Accumulates (exponent, coefficient) pairs; repeated exponents add up.
    pub fn from_terms<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, Integer)>,
    {
        let mut poly = Self::zero();
        for (exp, coeff) in pairs {
            poly.add_term(exp, &coeff);
        }
        poly
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of q^exp (zero when absent).
    pub fn coeff(&self, exp: i64) -> Integer {
        self.terms.get(&exp).cloned().unwrap_or_else(Integer::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Integer)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, coeff: &Integer) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Integer::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplication by the monomial coeff * q^exp.
    pub fn mul_monomial(&self, exp: i64, coeff: &Integer) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + exp, c * coeff))
                .collect(),
        }
    }

    /// Multiplication by q^delta.
    pub fn shift(&self, delta: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + delta, c.clone())).collect(),
        }
    }

    /// The substitution q -> 1/q, i.e. exponent negation. A polynomial p of
    /// degree d supported on [0, d] is palindromic iff p.substitute_inverse()
    /// equals p.shift(-d).
    pub fn substitute_inverse(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Exact evaluation at a rational point. Powers of q0 are built
    /// incrementally from neighbouring exponents, so evaluation costs one
    /// big power per gap rather than one per term.
    pub fn eval(&self, q0: &Rational) -> Result<Rational, EvalError> {
        let mut acc = Rational::zero();
        if q0.is_zero() {
            if let Some(exp) = self.min_exp() {
                if exp < 0 {
                    return Err(EvalError::PoleAtZero { exponent: exp });
                }
            }
            return Ok(Rational::from(self.coeff(0)));
        }
        // Non-negative exponents, ascending: q0^e via incremental products.
        let mut power = Rational::one();
        let mut power_exp: i64 = 0;
        for (&e, c) in self.terms.range(0..) {
            power *= rat_pow(q0, e - power_exp).expect("nonzero base");
            power_exp = e;
            acc += &power * &Rational::from(c.clone());
        }
        // Negative exponents, by decreasing exponent so |e| grows: powers of
        // the reciprocal, again incremental.
        let inv = q0.recip();
        power = Rational::one();
        power_exp = 0;
        for (&e, c) in self.terms.range(..0).rev() {
            power *= rat_pow(&inv, power_exp - e).expect("nonzero base");
            power_exp = e;
            acc += &power * &Rational::from(c.clone());
        }
        Ok(acc)
    }

    /// Exact quotient by (q - 1), or None when (q - 1) does not divide self
    /// (equivalently, when self(1) != 0).
    pub fn div_q_minus_one(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        // If self = (q-1) * Q then coeff_e(self) = Q_{e-1} - Q_e, so from the
        // top down Q_{e-1} = coeff_e + Q_e, and exactness forces Q_{lo-1} = 0.
        let mut quotient = Self::zero();
        let mut carry = Integer::zero();
        for e in (lo..=hi).rev() {
            carry += self.coeff(e);
            if e - 1 >= lo {
                quotient.add_term(e - 1, &carry.clone());
            } else if !carry.is_zero() {
                return None;
            }
        }
        Some(quotient)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, &(-c));
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut acc: BTreeMap<i64, Integer> = BTreeMap::new();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                let entry = acc.entry(e1 + e2).or_insert_with(Integer::zero);
                *entry += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: acc }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.terms.iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag == Integer::from(1);
            match (e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{int, rat};
    use super::*;

    fn poly(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(pairs.iter().map(|&(e, c)| (e, int(c))))
    }

    #[test]
    fn zero_is_empty_and_structural_equality_holds() {
        assert!(LaurentPoly::zero().is_zero());
        assert_eq!(poly(&[(3, 5), (3, -5)]), LaurentPoly::zero());
        assert_eq!(poly(&[(0, 1), (2, 1)]), poly(&[(2, 1), (0, 1)]));
        assert_eq!(LaurentPoly::monomial(7, int(0)), LaurentPoly::zero());
    }

    #[test]
    fn arithmetic_matches_hand_expansion() {
        // (q - 1)^2 = q^2 - 2q + 1
        let qm1 = poly(&[(1, 1), (0, -1)]);
        assert_eq!(&qm1 * &qm1, poly(&[(2, 1), (1, -2), (0, 1)]));
        // (q - q^-1)(q + q^-1) = q^2 - q^-2
        let a = poly(&[(1, 1), (-1, -1)]);
        let b = poly(&[(1, 1), (-1, 1)]);
        assert_eq!(&a * &b, poly(&[(2, 1), (-2, -1)]));
        assert_eq!(&a + &b, poly(&[(1, 2)]));
        assert_eq!(&a - &b, poly(&[(-1, -2)]));
        assert_eq!(-&a, poly(&[(1, -1), (-1, 1)]));
    }

    #[test]
    fn shift_and_inverse_substitution() {
        let p = poly(&[(2, 1), (0, -1)]);
        assert_eq!(p.shift(-2), poly(&[(0, 1), (-2, -1)]));
        assert_eq!(p.substitute_inverse(), poly(&[(-2, 1), (0, -1)]));
        assert_eq!(p.mul_monomial(1, &int(3)), poly(&[(3, 3), (1, -3)]));
    }

    #[test]
    fn eval_handles_negative_exponents_and_zero_base() {
        // q^2 - q - q^-1 + q^-2 at q = 2: 4 - 2 - 1/2 + 1/4 = 7/4
        let p = poly(&[(2, 1), (1, -1), (-1, -1), (-2, 1)]);
        assert_eq!(p.eval(&rat(2, 1)).unwrap(), rat(7, 4));
        assert_eq!(p.eval(&rat(1, 1)).unwrap(), rat(0, 1));
        assert_eq!(
            p.eval(&rat(0, 1)),
            Err(EvalError::PoleAtZero { exponent: -2 })
        );
        let plain = poly(&[(3, 4), (0, -5)]);
        assert_eq!(plain.eval(&rat(0, 1)).unwrap(), rat(-5, 1));
        assert_eq!(plain.eval(&rat(-1, 2)).unwrap(), rat(-11, 2));
    }

    #[test]
    fn eval_power_cache_handles_sparse_gaps() {
        let p = poly(&[(100, 1), (3, 2), (-97, 5)]);
        let q = rat(2, 1);
        let expect = rat_pow(&q, 100).unwrap()
            + rat(2, 1) * rat_pow(&q, 3).unwrap()
            + rat(5, 1) * rat_pow(&q, -97).unwrap();
        assert_eq!(p.eval(&q).unwrap(), expect);
    }

    #[test]
    fn division_by_q_minus_one() {
        // q^3 + 1 = (q - 1)(q^2 + q + 1) + 2: not divisible
        assert_eq!(poly(&[(3, 1), (0, 1)]).div_q_minus_one(), None);
        // q^3 - 1 = (q - 1)(q^2 + q + 1)
        assert_eq!(
            poly(&[(3, 1), (0, -1)]).div_q_minus_one(),
            Some(poly(&[(2, 1), (1, 1), (0, 1)]))
        );
        // Laurent case: q - q^-1 = (q - 1)(1 + q^-1)
        assert_eq!(
            poly(&[(1, 1), (-1, -1)]).div_q_minus_one(),
            Some(poly(&[(0, 1), (-1, 1)]))
        );
        assert_eq!(LaurentPoly::zero().div_q_minus_one(), Some(LaurentPoly::zero()));
    }

    #[test]
    fn display_is_descending_with_signs() {
        assert_eq!(poly(&[(2, 1), (1, -2), (0, 1)]).to_string(), "q^2 - 2*q + 1");
        assert_eq!(poly(&[(1, 1), (-1, -1)]).to_string(), "q - q^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(poly(&[(0, -3)]).to_string(), "-3");
    }
}
