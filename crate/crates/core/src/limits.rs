//! Where the normalized ideal counts accumulate: for n = 2^(h-1) p in Phi
//! with offset k = 2^h - p, the deviation D_n(q) = C_n(q)/q^n - (1-1/q) q^n
//! satisfies, exactly,
//!
//!   D_n(q) = L_q(k) - (1 - 1/q)/q^(n-1),
//!   L_q(k) = sign(k) (q-1)(q^|k| - 1) / q^((|k|+1)/2),
//!
//! so the deviations cluster around the candidate values L_q(k), one per
//! odd k realized by a prime p = 2^h - k, with residual exactly
//! -(q-1)/q^n. Scanning n <= N groups Phi by k (the cluster report);
//! scanning at q = 2 with threshold 1/2 + 2^(-n) flags exactly the members
//! with |k| = 1, i.e. the indices built from Mersenne and Fermat primes —
//! the next candidate |k| = 3 already sits at |L_2(3)| = 7/4.
//!
//! A "limit point" claim would need E_k to be infinite, which is open for
//! every k; everything here reports finite evidence (members, candidate
//! value, residual bound) and never asserts more.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exact::{rat_pow, Rational};
use crate::kr::{self, KrError};
use crate::numtheory::{ek_members, phi_decompose, Certainty, PhiDecomposition};

/// Largest |k| for which L_q(k) is expanded into an explicit rational
/// (the value needs q^|k|). Larger k still scan and group fine; only the
/// expansion is refused.
pub const LIMIT_EXPANSION_CAP: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LimitsError {
    #[error("k = {k} is even: p = 2^h - k can never be an odd prime, so no deviation clusters at an even offset")]
    EvenK { k: BigInt },
    #[error("|k| = {k} needs q^|k| expanded; that exceeds the cap of {cap} bits at q = 2")]
    LimitTooLarge { k: BigUint, cap: u64 },
    #[error("n = {n} is too large to expand q^n into an explicit rational here")]
    ExpansionTooLarge { n: BigUint },
    #[error("closed form and direct evaluation disagree at n = {n}: {closed} vs {direct}")]
    Inconsistency { n: u64, closed: Rational, direct: Rational },
    #[error(transparent)]
    Kr(#[from] KrError),
}

/// L_q(k) = sign(k) (q-1)(q^|k| - 1)/q^((|k|+1)/2), the value the
/// deviations D_n(q) approach along E_k.
pub fn limit_candidate(k: &BigInt, q0: &Rational) -> Result<Rational, LimitsError> {
    use num_integer::Integer as _;
    if k.is_even() {
        return Err(LimitsError::EvenK { k: k.clone() });
    }
    assert!(!q0.is_zero(), "limit candidates need q != 0");
    let k_abs = k.abs().to_biguint().expect("abs is nonnegative");
    let k_small = k_abs.to_u64().filter(|&v| v <= LIMIT_EXPANSION_CAP);
    let Some(k_abs) = k_small else {
        return Err(LimitsError::LimitTooLarge { k: k_abs, cap: LIMIT_EXPANSION_CAP });
    };
    let one = Rational::one();
    let q_pow_k = rat_pow(q0, k_abs as i64).expect("q != 0");
    let scale = rat_pow(q0, ((k_abs + 1) / 2) as i64).expect("q != 0");
    let value = (q0 - &one) * (q_pow_k - one) / scale;
    Ok(if k.is_negative() { -value } else { value })
}

/// One member of E_k with its limit candidate. The deviation itself is
/// D_n(q) = limit - (q-1)/q^n: the residual's q-exponent is just -n, so the
/// record stays exact at any magnitude of n and is only expanded on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviationRecord {
    pub member: PhiDecomposition,
    pub limit: Rational,
}

/// Fully expanded deviation data, available when q^n is affordable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedDeviation {
    /// D_n(q) via the closed form.
    pub deviation: Rational,
    /// deviation - limit = -(q-1)/q^n.
    pub residual: Rational,
}

impl DeviationRecord {
    /// The exponent e with residual = -(q-1) * q^e; at q = 2 the residual
    /// is exactly -2^e.
    pub fn residual_exponent(&self) -> BigInt {
        -BigInt::from(self.member.n.clone())
    }

    /// Expands deviation and residual at q0, refusing when n is beyond
    /// `max_expand_n` (q0^n would be needed explicitly).
    pub fn expand(&self, q0: &Rational, max_expand_n: u64) -> Result<ExpandedDeviation, LimitsError> {
        let Some(n) = self.member.n.to_u64().filter(|&n| n <= max_expand_n) else {
            return Err(LimitsError::ExpansionTooLarge { n: self.member.n.clone() });
        };
        let residual = residual_at(n, q0);
        Ok(ExpandedDeviation {
            deviation: &self.limit + &residual,
            residual,
        })
    }

    /// Recomputes D_n(q0) by direct polynomial evaluation and checks it
    /// against the closed form, exactly.
    pub fn crosscheck(&self, q0: &Rational, max_expand_n: u64) -> Result<ExpandedDeviation, LimitsError> {
        let expanded = self.expand(q0, max_expand_n)?;
        let n = self.member.n.to_u64().expect("expand succeeded");
        let direct = kr::deviation(n, q0)?;
        if direct != expanded.deviation {
            return Err(LimitsError::Inconsistency {
                n,
                closed: expanded.deviation,
                direct,
            });
        }
        Ok(expanded)
    }
}

/// -(q-1)/q^n, the exact gap between D_n(q) and L_q(k).
fn residual_at(n: u64, q0: &Rational) -> Rational {
    let one = Rational::one();
    -(q0 - &one) * rat_pow(q0, -(n as i64)).expect("q != 0")
}

/// All deviations of members of Phi up to a bound, grouped by the offset k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterReport {
    pub max_n: u64,
    pub q: Rational,
    pub crosscheck_bound: u64,
    /// Sorted by |k| ascending, positive k before negative at equal |k|.
    pub groups: Vec<ClusterGroup>,
    pub proved: u64,
    pub probable: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterGroup {
    pub k: BigInt,
    /// Members ascending in n.
    pub members: Vec<u64>,
}

impl ClusterGroup {
    pub fn min_n(&self) -> u64 {
        self.members[0]
    }

    /// Exponent bound for the group's residuals: every member's deviation
    /// sits within (q-1) * q^e of the candidate value, e = -min n.
    pub fn max_residual_exponent(&self) -> i64 {
        -(self.min_n() as i64)
    }

    pub fn limit(&self, q0: &Rational) -> Result<Rational, LimitsError> {
        limit_candidate(&self.k, q0)
    }
}

impl ClusterReport {
    pub fn member_count(&self) -> u64 {
        self.groups.iter().map(|g| g.members.len() as u64).sum()
    }

    pub fn largest_k(&self) -> Option<&BigInt> {
        self.groups.iter().map(|g| &g.k).max()
    }

    pub fn smallest_k(&self) -> Option<&BigInt> {
        self.groups.iter().map(|g| &g.k).min()
    }

    pub fn group(&self, k: i64) -> Option<&ClusterGroup> {
        let k = BigInt::from(k);
        self.groups.iter().find(|g| g.k == k)
    }
}

/// Scans n = 3..=max_n, decomposes each member of Phi, groups by k, and —
/// up to `crosscheck_bound` — verifies the closed form for D_n(q) against
/// direct polynomial evaluation, exactly. A crosscheck failure is the
/// library's primary alarm and aborts the scan.
pub fn scan_phi(max_n: u64, q0: &Rational, crosscheck_bound: u64) -> Result<ClusterReport, LimitsError> {
    assert!(!q0.is_zero(), "scan needs q != 0");
    let crosscheck_bound = crosscheck_bound.min(max_n);
    let lo = 3u64;
    let decomposed: Vec<Option<PhiDecomposition>> = (lo..=max_n.max(lo - 1))
        .into_par_iter()
        .map(|n| phi_decompose(&BigUint::from(n)))
        .collect();

    let mut proved = 0u64;
    let mut probable = 0u64;
    let mut by_k: std::collections::BTreeMap<BigInt, Vec<u64>> = Default::default();
    for member in decomposed.into_iter().flatten() {
        let n = member.n.to_u64().expect("scan range is u64");
        match member.certainty {
            Certainty::Proved => proved += 1,
            Certainty::Probable => probable += 1,
        }
        if n <= crosscheck_bound {
            let limit = limit_candidate(&member.k, q0)?;
            DeviationRecord { member: member.clone(), limit }.crosscheck(q0, crosscheck_bound)?;
        }
        by_k.entry(member.k).or_default().push(n);
    }

    let mut groups: Vec<ClusterGroup> = by_k
        .into_iter()
        .map(|(k, mut members)| {
            members.sort_unstable();
            ClusterGroup { k, members }
        })
        .collect();
    groups.sort_by_key(|g| (g.k.abs().to_biguint().unwrap(), g.k.is_negative()));

    Ok(ClusterReport {
        max_n,
        q: q0.clone(),
        crosscheck_bound,
        groups,
        proved,
        probable,
    })
}

/// One row of the Mersenne/Fermat criterion scan at q = 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionRow {
    pub member: PhiDecomposition,
    /// |D_n(2)|, exact.
    pub abs_deviation: Rational,
    /// The threshold the row was compared against.
    pub threshold: Rational,
    pub flagged: bool,
}

/// Flags every n in Phi, n <= max_n, with |D_n(2)| <= 1/2 + 2^epsilon
/// (epsilon = -n by default, which provably isolates |k| = 1: those rows
/// have |D| = 1/2 -+ 2^(-n), while |k| >= 3 forces |D| >= 7/4 - 2^(-n)).
pub fn criterion_scan(max_n: u64, epsilon_exponent: Option<i64>) -> Result<Vec<CriterionRow>, LimitsError> {
    let two = Rational::from(BigInt::from(2));
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let lo = 3u64;
    let rows: Vec<Result<CriterionRow, LimitsError>> = (lo..=max_n.max(lo - 1))
        .into_par_iter()
        .filter_map(|n| phi_decompose(&BigUint::from(n)))
        .map(|member| {
            let n = member.n.to_u64().expect("scan range is u64");
            let limit = limit_candidate(&member.k, &two)?;
            let deviation = limit + residual_at(n, &two);
            let epsilon = epsilon_exponent.unwrap_or_else(|| -(n as i64));
            let threshold = &half + rat_pow(&two, epsilon).expect("2 != 0");
            let abs_deviation = deviation.abs();
            let flagged = abs_deviation <= threshold;
            Ok(CriterionRow { member, abs_deviation, threshold, flagged })
        })
        .collect();
    rows.into_iter().collect()
}

/// The members of E_k up to 2^max_h with their shared limit candidate;
/// empty for even k (no primes p = 2^h - k exist).
pub fn ek_search_report(k: &BigInt, max_h: u32, q0: &Rational) -> Result<Vec<DeviationRecord>, LimitsError> {
    use num_integer::Integer as _;
    if k.is_even() {
        return Ok(Vec::new());
    }
    let limit = limit_candidate(k, q0)?;
    Ok(ek_members(k, max_h)
        .into_iter()
        .map(|member| DeviationRecord { member, limit: limit.clone() })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn limit_candidates_at_small_k() {
        let two = rat(2, 1);
        assert_eq!(limit_candidate(&BigInt::from(1), &two).unwrap(), rat(1, 2));
        assert_eq!(limit_candidate(&BigInt::from(-1), &two).unwrap(), rat(-1, 2));
        assert_eq!(limit_candidate(&BigInt::from(3), &two).unwrap(), rat(7, 4));
        assert_eq!(limit_candidate(&BigInt::from(-3), &two).unwrap(), rat(-7, 4));
        assert_eq!(limit_candidate(&BigInt::from(5), &two).unwrap(), rat(31, 8));
        assert_eq!(limit_candidate(&BigInt::from(3), &rat(3, 1)).unwrap(), rat(52, 9));
        assert_eq!(limit_candidate(&BigInt::from(1), &rat(4, 1)).unwrap(), rat(9, 4));
        assert!(matches!(
            limit_candidate(&BigInt::from(2), &two),
            Err(LimitsError::EvenK { .. })
        ));
        assert!(matches!(
            limit_candidate(&BigInt::from(1i64 << 40), &two),
            Err(LimitsError::EvenK { .. })
        ));
        assert!(matches!(
            limit_candidate(&BigInt::from((1i64 << 40) + 1), &two),
            Err(LimitsError::LimitTooLarge { .. })
        ));
    }

    #[test]
    fn candidate_magnitudes_separate_and_mirror() {
        let two = rat(2, 1);
        let at = |k: i64| limit_candidate(&BigInt::from(k), &two).unwrap();
        // Mirror symmetry and strict growth in |k|.
        let mut prev = rat(0, 1);
        for k in [1i64, 3, 5, 7, 9, 11] {
            let v = at(k);
            assert_eq!(at(-k), -v.clone());
            assert!(v > prev, "L_2({k}) grows");
            prev = v;
        }
    }

    #[test]
    fn deviation_records_expand_and_crosscheck() {
        let two = rat(2, 1);
        let records = ek_search_report(&BigInt::from(1), 8, &two).unwrap();
        let ns: Vec<u64> = records.iter().map(|r| r.member.n.to_u64().unwrap()).collect();
        assert_eq!(ns, vec![6, 28, 496, 8128]);
        for r in &records {
            let expanded = r.crosscheck(&two, 10_000).unwrap();
            // Residual is exactly -2^(-n) at q = 2.
            let n = r.member.n.to_u64().unwrap();
            assert_eq!(expanded.residual, -rat_pow(&two, -(n as i64)).unwrap());
            assert_eq!(r.residual_exponent(), BigInt::from(-(n as i64)));
            assert_eq!(expanded.deviation, &r.limit + &expanded.residual);
        }
        // The frozen n = 6 row: D = 1/2 - 1/64 = 31/64.
        let first = records[0].expand(&two, 100).unwrap();
        assert_eq!(first.deviation, rat(31, 64));
    }

    #[test]
    fn expansion_respects_the_bound() {
        let two = rat(2, 1);
        let records = ek_search_report(&BigInt::from(1), 8, &two).unwrap();
        let big = records.last().unwrap(); // n = 8128
        assert!(matches!(
            big.expand(&two, 1000),
            Err(LimitsError::ExpansionTooLarge { .. })
        ));
        assert!(big.expand(&two, 8128).is_ok());
    }

    #[test]
    fn ek_report_even_k_is_empty() {
        assert_eq!(ek_search_report(&BigInt::from(4), 20, &rat(2, 1)).unwrap(), vec![]);
        assert_eq!(ek_search_report(&BigInt::zero(), 20, &rat(2, 1)).unwrap(), vec![]);
    }

    #[test]
    fn scan_matches_the_ek_tables() {
        let report = scan_phi(500, &rat(2, 1), 500).unwrap();
        assert_eq!(report.group(1).unwrap().members, vec![6, 28, 496]);
        assert_eq!(report.group(-1).unwrap().members, vec![3, 10, 136]);
        // Every scanned member is a proved prime at this size.
        assert_eq!(report.probable, 0);
        assert!(report.proved > 0);
        assert_eq!(report.member_count(), report.proved);
    }

    #[test]
    fn scan_group_ordering_and_extremes() {
        let report = scan_phi(500, &rat(2, 1), 100).unwrap();
        let keys: Vec<i64> = report.groups.iter().map(|g| g.k.to_i64().unwrap()).collect();
        // |k| ascending, positive before negative at the same magnitude.
        for w in keys.windows(2) {
            let (a, b) = (w[0], w[1]);
            assert!(
                a.abs() < b.abs() || (a.abs() == b.abs() && a > b),
                "ordering violated: {a} before {b}"
            );
        }
        assert_eq!(keys[0], 1);
        assert_eq!(keys[1], -1);
        assert_eq!(report.largest_k().unwrap(), &BigInt::from(*keys.iter().max().unwrap()));
        assert_eq!(report.smallest_k().unwrap(), &BigInt::from(*keys.iter().min().unwrap()));
        // Group residual bound: k = 1 group starts at n = 6.
        assert_eq!(report.group(1).unwrap().max_residual_exponent(), -6);
        assert_eq!(report.group(1).unwrap().limit(&rat(2, 1)).unwrap(), rat(1, 2));
    }

    #[test]
    fn scan_boundary_below_first_member() {
        let report = scan_phi(2, &rat(2, 1), 2).unwrap();
        assert!(report.groups.is_empty());
        assert_eq!(report.member_count(), 0);
    }

    #[test]
    fn every_phi_member_lands_in_exactly_one_group() {
        let max_n = 800u64;
        let report = scan_phi(max_n, &rat(2, 1), 0).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for g in &report.groups {
            for &n in &g.members {
                assert!(seen.insert(n), "n = {n} appears twice");
                let d = phi_decompose(&BigUint::from(n)).expect("grouped n is in Phi");
                assert_eq!(d.k, g.k, "group key mismatch at n = {n}");
            }
        }
        for n in 3..=max_n {
            if phi_decompose(&BigUint::from(n)).is_some() {
                assert!(seen.contains(&n), "n = {n} missing from the report");
            }
        }
    }

    #[test]
    fn nearest_candidate_assignment_agrees_with_decomposition() {
        // Assigning each deviation to the closest L_q(k') over odd |k'|
        // must recover the k from the decomposition: the residual
        // (q-1)/q^n is far smaller than half the gap between candidates.
        let two = rat(2, 1);
        for n in 3u64..=200 {
            let Some(d) = phi_decompose(&BigUint::from(n)) else { continue };
            let deviation = kr::deviation(n, &two).unwrap();
            let mut best: Option<(Rational, BigInt)> = None;
            let bound = 2 * n as i64 + 3;
            let mut k_cand = -bound;
            while k_cand <= bound {
                let v = limit_candidate(&BigInt::from(k_cand), &two).unwrap();
                let dist = (&deviation - &v).abs();
                if best.as_ref().map_or(true, |(b, _)| dist < *b) {
                    best = Some((dist, BigInt::from(k_cand)));
                }
                k_cand += 2;
            }
            assert_eq!(best.unwrap().1, d.k, "nearest candidate at n = {n}");
        }
    }

    #[test]
    fn criterion_flags_exactly_the_unit_offsets() {
        use num_integer::Integer as _;
        let rows = criterion_scan(600, None).unwrap();
        let flagged: Vec<u64> = rows
            .iter()
            .filter(|r| r.flagged)
            .map(|r| r.member.n.to_u64().unwrap())
            .collect();
        assert_eq!(flagged, vec![3, 6, 10, 28, 136, 496]);
        for row in &rows {
            // Independent characterization: flagged iff |k| = 1.
            assert_eq!(
                row.flagged,
                row.member.k.abs().is_one(),
                "flag vs |k| at n = {}",
                row.member.n
            );
            // The gap: everything not flagged sits at |D| >= 7/4 - 2^(-n) > 3/2.
            if !row.flagged {
                assert!(row.abs_deviation > rat(3, 2));
            } else {
                assert!(row.abs_deviation <= row.threshold);
            }
            assert!(row.member.k.is_odd());
        }
    }

    #[test]
    fn criterion_fixed_epsilon_override() {
        // A threshold of 1/2 + 2^200 dwarfs every |D| reachable at n <= 100
        // (|k| <= 2n, so |D| < 2^100) and flags every row.
        let all = criterion_scan(100, Some(200)).unwrap();
        assert!(!all.is_empty());
        assert!(all.iter().all(|r| r.flagged));
        // With 2^(-200) the threshold drops below the k = -1 rows'
        // |D| = 1/2 + 2^(-n), leaving exactly the k = 1 rows flagged.
        let tight = criterion_scan(100, Some(-200)).unwrap();
        for r in &tight {
            assert_eq!(r.flagged, r.member.k.is_one(), "n = {}", r.member.n);
        }
    }

    #[test]
    fn frozen_criterion_deviation_values() {
        let rows = criterion_scan(10, None).unwrap();
        let by_n = |n: u64| rows.iter().find(|r| r.member.n.to_u64().unwrap() == n).unwrap();
        assert_eq!(by_n(6).abs_deviation, rat(31, 64));
        assert_eq!(by_n(3).abs_deviation, rat(5, 8));
        assert_eq!(by_n(10).abs_deviation, rat(513, 1024));
    }
}
