//! Exact scalar and polynomial types shared by every algorithm in this
//! crate: arbitrary-precision integers and rationals, sparse Laurent
//! polynomials in q, and power series in t truncated at a fixed order
//! whose coefficients are Laurent polynomials.

mod laurent;
mod series;

pub use laurent::{EvalError, LaurentPoly};
pub use series::{SeriesFactor, TruncatedSeries};

/// Arbitrary-precision signed integer used for all coefficients.
pub type Integer = num_bigint::BigInt;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for small integer constants.
pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

/// Shorthand for small rational constants. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(int(num), int(den))
}

/// q0^e for a signed exponent; `None` when q0 = 0 and e < 0.
pub fn rat_pow(q0: &Rational, e: i64) -> Option<Rational> {
    use num_traits::{One, Pow, Zero};
    if e == 0 {
        return Some(Rational::one());
    }
    let mag = e.unsigned_abs();
    if e > 0 {
        let num = Pow::pow(q0.numer(), mag);
        let den = Pow::pow(q0.denom(), mag);
        return Some(Rational::new(num, den));
    }
    if q0.is_zero() {
        return None;
    }
    let num = Pow::pow(q0.denom(), mag);
    let den = Pow::pow(q0.numer(), mag);
    Some(Rational::new(num, den))
}
