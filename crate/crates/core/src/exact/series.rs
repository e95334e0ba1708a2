//! Power series in t, truncated at a fixed order, with Laurent-polynomial
//! coefficients in q. Only the factor shapes that occur in the product
//!     prod_{m>=1} (1 - t^m)^2 / ((1 - q t^m)(1 - q^-1 t^m))
//! are supported; each is applied in place in O(order) coefficient
//! operations. Factors with m beyond the truncation order act as the
//! identity, so the infinite product stabilizes after `order` factors.

use super::laurent::LaurentPoly;
use super::Integer;

/// One factor of the ideal-counting generating function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesFactor {
    /// (1 - t^m)^2
    OneMinusTmSquared,
    /// 1 / (1 - q t^m)
    InvOneMinusQTm,
    /// 1 / (1 - q^-1 t^m)
    InvOneMinusQInvTm,
}

/// Series sum_{i=0}^{order} a_i(q) t^i; coefficients beyond `order` are
/// discarded by every operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<LaurentPoly>,
}

impl TruncatedSeries {
    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![LaurentPoly::zero(); order + 1];
        coeffs[0] = LaurentPoly::one();
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of t^n. Panics if n exceeds the truncation order.
    pub fn coeff(&self, n: usize) -> &LaurentPoly {
        &self.coeffs[n]
    }

    /// Multiplies in place by the given factor with step m >= 1.
    ///
    /// The inverse factors use the geometric recurrence: if r = c / (1 - u t^m)
    /// then r_i = c_i + u r_{i-m}, which is a single ascending pass. The
    /// squared factor is the direct convolution c_i - 2 c_{i-m} + c_{i-2m},
    /// applied descending so the right-hand side still reads old values.
    pub fn apply_factor(&mut self, factor: SeriesFactor, m: usize) {
        assert!(m >= 1, "factor step must be positive");
        let order = self.order();
        if m > order {
            return;
        }
        match factor {
            SeriesFactor::OneMinusTmSquared => {
                let minus_two = Integer::from(-2);
                for i in (m..=order).rev() {
                    let mut updated = &self.coeffs[i] + &self.coeffs[i - m].mul_monomial(0, &minus_two);
                    if i >= 2 * m {
                        updated = &updated + &self.coeffs[i - 2 * m];
                    }
                    self.coeffs[i] = updated;
                }
            }
            SeriesFactor::InvOneMinusQTm => {
                for i in m..=order {
                    self.coeffs[i] = &self.coeffs[i] + &self.coeffs[i - m].shift(1);
                }
            }
            SeriesFactor::InvOneMinusQInvTm => {
                for i in m..=order {
                    self.coeffs[i] = &self.coeffs[i] + &self.coeffs[i - m].shift(-1);
                }
            }
        }
    }
}
