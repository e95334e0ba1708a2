//! Exact arithmetic for the ideal-counting polynomials C_n(q) of the ring
//! F_q[x, y, x^-1, y^-1] (equivalently, of F_q[Z^2]), together with the
//! number-theoretic machinery needed to study where the normalized values
//! C_n(q)/q^n accumulate as n grows.
//!
//! C_n(q) counts the ideals of codimension n. It is a monic integer
//! polynomial of degree 2n, divisible by (q-1)^2, and palindromic:
//! C_n(q) = q^(2n) C_n(1/q). Three independent routes compute it:
//!
//! * a closed-form coefficient expansion indexed by triangular numbers,
//! * a sum of q-powers over the odd divisors of 2n,
//! * the product generating function
//!   sum_n q^(-n) C_n(q) t^n = prod_m (1-t^m)^2 / ((1-q t^m)(1-q^(-1) t^m)).
//!
//! For n = 2^(h-1) p with p an odd prime (and more generally for every n
//! that is not a power of two), the deviation
//! D_n(q) = C_n(q)/q^n - (1-1/q) q^n collapses to an explicit rational
//! determined by k = 2^h - p alone, up to a residual that vanishes as
//! q^(-n). Scanning those deviations recovers the primes of the form
//! 2^h - k, and at q = 2 separates |k| = 1 (Mersenne/Fermat-adjacent n,
//! perfect numbers among them) from |k| >= 3 by a fixed gap.

pub mod exact;
pub mod kr;
pub mod limits;
pub mod numtheory;
pub mod oracle;

pub use exact::{EvalError, Integer, LaurentPoly, Rational, SeriesFactor, TruncatedSeries};
pub use kr::{CnRoute, KrError, GF_ORDER_CAP};
pub use limits::{
    ClusterGroup, ClusterReport, CriterionRow, DeviationRecord, ExpandedDeviation, LimitsError,
};
pub use numtheory::{Certainty, PhiDecomposition, PrimeVerdict, PsiBeta};
pub use oracle::{OracleError, DEFAULT_ENUMERATION_BUDGET};
