//! Slope bookkeeping for Frobenius-descent scenarios.
//!
//! A scenario records finite evidence about a rank-r bundle on an arithmetic
//! family of curves: a uniform bound b on the maximal fiber slopes, the
//! constant fiber degree, and a list of closed-fiber characteristics at
//! which the bundle is a Frobenius pullback. Under strong semistability the
//! maximal slope scales by p along Frobenius, so mu_max >= p/r at a descent
//! prime; a descent prime exceeding r*b therefore contradicts the bound,
//! and the reductio concludes that the generic fiber must be semistable
//! after all. The audit replays exactly this chain on the given evidence,
//! flags degree-divisibility violations, and stays agnostic whenever the
//! hypotheses that drive the argument are absent.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::bundles::{
    extension_split_test, hn_filtration_rank2, HNReport, SplitReport, SplitVerdict,
};
use crate::error::{Error, Result};
use crate::linalg::{parse_rational, rat, rational_str};
use crate::ring::FermatCurve;

/// Geometric situations that grant strong semistability on every fiber
/// (nonpositive cotangent slope in each case).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorollaryCase {
    AbelianVariety,
    HomogeneousSpace,
    NonpositiveCotangentSlope,
}

impl CorollaryCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            CorollaryCase::AbelianVariety => "abelian-variety",
            CorollaryCase::HomogeneousSpace => "homogeneous-space",
            CorollaryCase::NonpositiveCotangentSlope => "nonpositive-cotangent-slope",
        }
    }
}

/// The finite evidence set an audit runs on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentScenario {
    /// Rank r of the bundle; at least 1.
    pub rank: u32,
    /// Uniform bound b with mu_max of every closed fiber at most b.
    #[serde(with = "rational_string")]
    pub slope_bound: BigRational,
    /// Fiber degree, constant across the family.
    #[serde(rename = "deg_E")]
    pub deg_e: i64,
    /// Closed-point characteristics at which the fiber is a Frobenius
    /// pullback; distinct primes.
    pub descent_primes: Vec<u64>,
    /// Semistable fiber bundles are assumed strongly semistable.
    pub strong_ss_assumed: bool,
    /// The hypothesis under reductio: the generic fiber is not semistable.
    pub generic_not_semistable_hypothesis: bool,
    /// Optional geometric tag that forces strong semistability.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corollary_case: Option<CorollaryCase>,
}

mod rational_string {
    use super::*;
    use serde::de::Error as DeError;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_str(r))
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(i64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigRational, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(rat(n, 1)),
            Raw::Str(s) => parse_rational(&s).map_err(|e| D::Error::custom(e.to_string())),
        }
    }
}

impl DescentScenario {
    /// Parses a scenario from its JSON document form.
    pub fn from_json(src: &str) -> Result<Self> {
        let scenario: DescentScenario =
            serde_json::from_str(src).map_err(|e| Error::Scenario(e.to_string()))?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank == 0 {
            return Err(Error::Scenario("rank must be at least 1".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &p in &self.descent_primes {
            if !arith::is_prime(p) {
                return Err(Error::Scenario(format!("{p} is not prime")));
            }
            if !seen.insert(p) {
                return Err(Error::Scenario(format!("duplicate descent prime {p}")));
            }
        }
        Ok(())
    }

    /// Strong semistability holds either by assumption or because a
    /// corollary-case tag grants it.
    pub fn strong_ss_effective(&self) -> bool {
        self.strong_ss_assumed || self.corollary_case.is_some()
    }
}

/// mu_max of the Frobenius pullback under strong semistability: the maximal
/// slope scales by the characteristic.
pub fn mu_max_scaling(mu_max_f: &BigRational, p: u64) -> BigRational {
    BigRational::from_integer(p.into()) * mu_max_f
}

/// Necessary degree condition for descent at p: the fiber degree of a
/// Frobenius pullback is divisible by p.
pub fn descent_degree_check(deg_e: i64, p: u64) -> bool {
    let p = i64::try_from(p).expect("prime fits i64");
    deg_e % p == 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditConclusion {
    GenericallySemistable,
    InconsistentScenario,
    Inconclusive,
}

impl AuditConclusion {
    pub fn as_str(&self) -> &'static str {
        match self {
            AuditConclusion::GenericallySemistable => "generically-semistable",
            AuditConclusion::InconsistentScenario => "inconsistent-scenario",
            AuditConclusion::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AuditVerdict {
    /// All degree checks passed and at least two distinct descent primes
    /// exceed |deg_E|, so the degree can only be zero.
    pub degree_forced_zero: bool,
    /// Least descent prime strictly exceeding r*b, when the reductio fires.
    pub contradiction_prime: Option<u64>,
    pub conclusion: AuditConclusion,
    /// Inference log, one line per applied step.
    pub trace: Vec<String>,
}

/// Replays the slope-bookkeeping argument on a scenario's evidence.
pub fn audit(s: &DescentScenario) -> Result<AuditVerdict> {
    s.validate()?;
    if s.descent_primes.is_empty() {
        return Err(Error::EmptyPrimes);
    }
    let mut primes = s.descent_primes.clone();
    primes.sort_unstable();
    let mut trace = Vec::new();

    for &p in &primes {
        if !descent_degree_check(s.deg_e, p) {
            trace.push(format!(
                "descent at {p} forces {p} | deg_E, but deg_E = {} is not divisible",
                s.deg_e
            ));
            return Ok(AuditVerdict {
                degree_forced_zero: false,
                contradiction_prime: None,
                conclusion: AuditConclusion::InconsistentScenario,
                trace,
            });
        }
    }
    trace.push(format!(
        "every descent prime divides deg_E = {}",
        s.deg_e
    ));
    let large_primes = primes
        .iter()
        .filter(|&&p| p > s.deg_e.unsigned_abs())
        .count();
    let degree_forced_zero = large_primes >= 2;
    if degree_forced_zero {
        trace.push(format!(
            "{large_primes} distinct descent primes exceed |deg_E|: the degree is forced to zero"
        ));
    }

    if !s.strong_ss_effective() {
        trace.push(
            "strong semistability is not assumed, so mu_max need not scale by p \
             under Frobenius; no contradiction can be extracted"
                .into(),
        );
        return Ok(AuditVerdict {
            degree_forced_zero,
            contradiction_prime: None,
            conclusion: AuditConclusion::Inconclusive,
            trace,
        });
    }
    if let Some(case) = s.corollary_case {
        trace.push(format!(
            "strong semistability granted by the {} case",
            case.as_str()
        ));
    }
    if !s.generic_not_semistable_hypothesis {
        trace.push(
            "no non-semistability hypothesis on the generic fiber; nothing to refute".into(),
        );
        return Ok(AuditVerdict {
            degree_forced_zero,
            contradiction_prime: None,
            conclusion: AuditConclusion::Inconclusive,
            trace,
        });
    }

    // were the generic fiber not semistable, each descent fiber would have
    // mu_max >= 1/r before pullback, hence mu_max >= p/r after; a prime
    // p > r*b then violates the uniform bound b
    let threshold = BigRational::from_integer(i64::from(s.rank).into()) * &s.slope_bound;
    let hit = primes.iter().find(|&&p| {
        BigRational::from_integer(p.into()) > threshold
    });
    match hit {
        Some(&p) => {
            trace.push(format!(
                "descent prime {p} exceeds r*b = {}: mu_max(E) >= {p}/{} > b, \
                 contradicting the slope bound",
                rational_str(&threshold),
                s.rank
            ));
            trace.push("the non-semistability hypothesis is refuted on this evidence".into());
            Ok(AuditVerdict {
                degree_forced_zero,
                contradiction_prime: Some(p),
                conclusion: AuditConclusion::GenericallySemistable,
                trace,
            })
        }
        None => {
            trace.push(format!(
                "no descent prime exceeds r*b = {}; the evidence set is too small",
                rational_str(&threshold)
            ));
            Ok(AuditVerdict {
                degree_forced_zero,
                contradiction_prime: None,
                conclusion: AuditConclusion::Inconclusive,
                trace,
            })
        }
    }
}

/// First `count` primes congruent to `a` modulo `m`, ascending. When the
/// residue class shares a factor with the modulus it contains at most one
/// prime; running past it reports exhaustion with whatever was found.
pub fn primes_in_progression(a: u64, m: u64, count: usize) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::NotApplicable("the modulus must be positive".into()));
    }
    let r = a % m;
    let g = arith::gcd(r, m);
    if g > 1 {
        // every member of the class is divisible by g
        let mut found = Vec::new();
        if arith::is_prime(g) && g % m == r {
            found.push(g);
        }
        if found.len() >= count {
            found.truncate(count);
            return Ok(found);
        }
        return Err(Error::ProgressionExhausted { found });
    }
    let mut found = Vec::with_capacity(count);
    let mut n = if r == 0 { m } else { r };
    while found.len() < count {
        if n >= 2 && arith::is_prime(n) {
            found.push(n);
        }
        n = match n.checked_add(m) {
            Some(next) => next,
            None => return Err(Error::ProgressionExhausted { found }),
        };
    }
    Ok(found)
}

/// Everything the replay gathers about one descent prime.
#[derive(Debug, Clone)]
pub struct ReplayPrime {
    pub p: u64,
    pub hn: HNReport,
    pub split: SplitReport,
}

/// The assembled dossier: an explicit rank-2 family whose fibers descend
/// along Frobenius at every listed prime while the characteristic-zero
/// fiber is destabilized, showing why the audit's conclusion needs its
/// strong-semistability hypothesis.
#[derive(Debug, Clone)]
pub struct ReplayReport {
    pub d: u32,
    pub ell: u32,
    /// Slope of the rank-2 characteristic-zero fiber (an extension of
    /// O(1-ell) by O(ell-1)): zero.
    pub char_zero_slope: BigRational,
    /// Slope d(ell-1) of the destabilizing subbundle O(ell-1).
    pub subbundle_slope: BigRational,
    pub char_zero_semistable: bool,
    pub per_prime: Vec<ReplayPrime>,
    /// Always false here: the scenario built from this family does not
    /// satisfy the strong-semistability hypothesis.
    pub strong_ss_assumed: bool,
    pub inapplicability_reason: String,
}

/// Assembles the counterexample dossier for the degree-d Fermat family at
/// the given primes (each must be congruent to the half-degree mod d).
/// Per-prime reports are computed concurrently and merged in ascending
/// prime order.
pub fn counterexample_replay(d: u32, primes: &[u64]) -> Result<ReplayReport> {
    if primes.is_empty() {
        return Err(Error::EmptyPrimes);
    }
    let probe = FermatCurve::new(d, 0)?;
    let ell = probe.half_degree().ok_or_else(|| {
        Error::NotApplicable("the curve degree must be odd, d = 2*ell + 1".into())
    })?;
    if ell < 2 {
        return Err(Error::NotApplicable(
            "the replay needs half-degree >= 2 (curve degree >= 5)".into(),
        ));
    }
    let mut sorted: Vec<u64> = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let per_prime: Result<Vec<ReplayPrime>> = sorted
        .par_iter()
        .map(|&p| {
            let curve = FermatCurve::new(d, p)?;
            let hn = hn_filtration_rank2(&curve)?;
            let split = extension_split_test(&curve)?;
            Ok(ReplayPrime { p, hn, split })
        })
        .collect();
    let per_prime = per_prime?;
    let alpha = i64::from(d) * (i64::from(ell) - 1);
    let subbundle_slope = rat(alpha, 1);
    let char_zero_slope = rat(0, 1);
    let char_zero_semistable = subbundle_slope <= char_zero_slope;
    let nonsplit_count = per_prime
        .iter()
        .filter(|r| r.split.verdict == SplitVerdict::NonSplit)
        .count();
    Ok(ReplayReport {
        d,
        ell,
        char_zero_slope,
        subbundle_slope,
        char_zero_semistable,
        strong_ss_assumed: false,
        inapplicability_reason: format!(
            "the audit needs strong semistability, which fails here: the \
             characteristic-zero fiber contains O({}) of slope {alpha} > 0, and \
             {nonsplit_count} of {} fiber extensions are non-split",
            i64::from(ell) - 1,
            per_prime.len()
        ),
        per_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FillResult;
    use proptest::prelude::*;

    fn scenario(
        rank: u32,
        slope_bound: BigRational,
        deg_e: i64,
        primes: &[u64],
        strong_ss: bool,
        hypothesis: bool,
    ) -> DescentScenario {
        DescentScenario {
            rank,
            slope_bound,
            deg_e,
            descent_primes: primes.to_vec(),
            strong_ss_assumed: strong_ss,
            generic_not_semistable_hypothesis: hypothesis,
            corollary_case: None,
        }
    }

    #[test]
    fn audit_reductio_fires_at_first_large_prime() {
        let s = scenario(2, rat(10, 1), 0, &[7, 17, 37, 47, 67], true, true);
        let v = audit(&s).unwrap();
        assert_eq!(v.conclusion, AuditConclusion::GenericallySemistable);
        assert_eq!(v.contradiction_prime, Some(37));
        assert!(v.degree_forced_zero);
    }

    #[test]
    fn audit_flags_degree_violation() {
        let s = scenario(2, rat(10, 1), -10, &[7], true, true);
        let v = audit(&s).unwrap();
        assert_eq!(v.conclusion, AuditConclusion::InconsistentScenario);
        assert_eq!(v.contradiction_prime, None);
        assert!(!v.degree_forced_zero);
        assert!(v.trace.iter().any(|line| line.contains("deg_E")));
    }

    #[test]
    fn audit_is_inconclusive_below_threshold() {
        let s = scenario(2, rat(10, 1), 0, &[3, 5], true, true);
        let v = audit(&s).unwrap();
        assert_eq!(v.conclusion, AuditConclusion::Inconclusive);
        assert_eq!(v.contradiction_prime, None);
    }

    #[test]
    fn audit_threshold_is_strict() {
        // r*b = 13 exactly: a prime equal to the threshold is consistent
        let s = scenario(2, rat(13, 2), 0, &[7, 13], true, true);
        let v = audit(&s).unwrap();
        assert_eq!(v.conclusion, AuditConclusion::Inconclusive);
        let s2 = scenario(2, rat(13, 2), 0, &[13], true, true);
        assert_eq!(
            audit(&s2).unwrap().conclusion,
            AuditConclusion::Inconclusive
        );
        let s3 = scenario(2, rat(25, 4), 0, &[13], true, true);
        let v3 = audit(&s3).unwrap();
        assert_eq!(v3.conclusion, AuditConclusion::GenericallySemistable);
        assert_eq!(v3.contradiction_prime, Some(13));
    }

    #[test]
    fn audit_without_strong_ss_is_inconclusive() {
        let s = scenario(2, rat(10, 1), 0, &[7, 37], false, true);
        let v = audit(&s).unwrap();
        assert_eq!(v.conclusion, AuditConclusion::Inconclusive);
        assert!(v.trace.iter().any(|l| l.contains("strong semistability")));
    }

    #[test]
    fn audit_without_hypothesis_is_inconclusive() {
        let s = scenario(2, rat(10, 1), 0, &[7, 37], true, false);
        let v = audit(&s).unwrap();
        assert_eq!(v.conclusion, AuditConclusion::Inconclusive);
    }

    #[test]
    fn corollary_case_grants_strong_ss() {
        let mut s = scenario(2, rat(10, 1), 0, &[7, 17, 37], false, true);
        s.corollary_case = Some(CorollaryCase::AbelianVariety);
        let v = audit(&s).unwrap();
        assert_eq!(v.conclusion, AuditConclusion::GenericallySemistable);
        assert_eq!(v.contradiction_prime, Some(37));
        assert!(v.trace.iter().any(|l| l.contains("abelian-variety")));
    }

    #[test]
    fn audit_rejects_bad_scenarios() {
        let s = scenario(2, rat(10, 1), 0, &[], true, true);
        assert!(matches!(audit(&s), Err(Error::EmptyPrimes)));
        let s = scenario(0, rat(10, 1), 0, &[7], true, true);
        assert!(matches!(audit(&s), Err(Error::Scenario(_))));
        let s = scenario(2, rat(10, 1), 0, &[7, 7], true, true);
        assert!(matches!(audit(&s), Err(Error::Scenario(_))));
        let s = scenario(2, rat(10, 1), 0, &[6], true, true);
        assert!(matches!(audit(&s), Err(Error::Scenario(_))));
    }

    #[test]
    fn scenario_json_round_trip() {
        let src = r#"{
            "rank": 2,
            "slope_bound": "21/2",
            "deg_E": 0,
            "descent_primes": [7, 17, 37],
            "strong_ss_assumed": true,
            "generic_not_semistable_hypothesis": true
        }"#;
        let s = DescentScenario::from_json(src).unwrap();
        assert_eq!(s.slope_bound, rat(21, 2));
        assert_eq!(s.deg_e, 0);
        let encoded = serde_json::to_string(&s).unwrap();
        assert!(encoded.contains("\"21/2\""));
        assert!(encoded.contains("\"deg_E\":0"));
        let back = DescentScenario::from_json(&encoded).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn scenario_json_accepts_integer_bound_and_corollary_tag() {
        let src = r#"{
            "rank": 3,
            "slope_bound": 4,
            "deg_E": -6,
            "descent_primes": [2, 3],
            "strong_ss_assumed": false,
            "generic_not_semistable_hypothesis": true,
            "corollary_case": "abelian-variety"
        }"#;
        let s = DescentScenario::from_json(src).unwrap();
        assert_eq!(s.slope_bound, rat(4, 1));
        assert_eq!(s.corollary_case, Some(CorollaryCase::AbelianVariety));
        assert!(s.strong_ss_effective());
    }

    #[test]
    fn scenario_json_rejects_malformed_documents() {
        for src in [
            r#"{"rank": 0, "slope_bound": "1", "deg_E": 0, "descent_primes": [7],
                "strong_ss_assumed": true, "generic_not_semistable_hypothesis": true}"#,
            r#"{"rank": 2, "slope_bound": "1/0", "deg_E": 0, "descent_primes": [7],
                "strong_ss_assumed": true, "generic_not_semistable_hypothesis": true}"#,
            r#"{"rank": 2, "slope_bound": "x", "deg_E": 0, "descent_primes": [7],
                "strong_ss_assumed": true, "generic_not_semistable_hypothesis": true}"#,
            r#"{"rank": 2, "slope_bound": "1"}"#,
        ] {
            assert!(DescentScenario::from_json(src).is_err(), "{src}");
        }
    }

    #[test]
    fn scaling_and_degree_check_formulas() {
        assert_eq!(mu_max_scaling(&rat(1, 2), 7), rat(7, 2));
        assert_eq!(mu_max_scaling(&rat(0, 1), 97), rat(0, 1));
        assert_eq!(mu_max_scaling(&rat(1, 3), 11), rat(11, 3));
        assert!(descent_degree_check(0, 7));
        assert!(!descent_degree_check(-10, 7));
        assert!(descent_degree_check(-10, 2));
    }

    #[test]
    fn progression_instances() {
        assert_eq!(
            primes_in_progression(2, 5, 5).unwrap(),
            vec![2, 7, 17, 37, 47]
        );
        assert_eq!(
            primes_in_progression(1, 3, 5).unwrap(),
            vec![7, 13, 19, 31, 37]
        );
        assert!(matches!(
            primes_in_progression(0, 4, 1),
            Err(Error::ProgressionExhausted { found }) if found.is_empty()
        ));
        assert_eq!(primes_in_progression(2, 4, 1).unwrap(), vec![2]);
        assert!(matches!(
            primes_in_progression(2, 4, 2),
            Err(Error::ProgressionExhausted { found }) if found == vec![2]
        ));
        assert_eq!(primes_in_progression(0, 7, 1).unwrap(), vec![7]);
        assert_eq!(primes_in_progression(3, 1, 4).unwrap(), vec![2, 3, 5, 7]);
        assert!(primes_in_progression(1, 0, 1).is_err());
        assert_eq!(primes_in_progression(1, 4, 0).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn progression_matches_sieve_oracle() {
        // test-only sieve of Eratosthenes, sharing no code with is_prime
        let limit = 10_000usize;
        let mut composite = vec![false; limit];
        for i in 2..limit {
            if !composite[i] {
                let mut j = i * i;
                while j < limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        let sieve_primes: Vec<u64> = (2..limit).filter(|&i| !composite[i]).map(|i| i as u64).collect();
        for (a, m) in [(1u64, 4u64), (3, 4), (2, 5), (1, 3), (5, 6), (9, 5)] {
            let expected: Vec<u64> = sieve_primes
                .iter()
                .copied()
                .filter(|p| p % m == a % m)
                .take(8)
                .collect();
            assert_eq!(
                primes_in_progression(a, m, 8).unwrap(),
                expected,
                "a={a}, m={m}"
            );
        }
    }

    #[test]
    fn replay_compiles_the_dossier() {
        let report = counterexample_replay(5, &[2, 7, 17]).unwrap();
        assert_eq!(report.ell, 2);
        assert_eq!(report.subbundle_slope, rat(5, 1));
        assert_eq!(report.char_zero_slope, rat(0, 1));
        assert!(!report.char_zero_semistable);
        assert!(!report.strong_ss_assumed);
        assert_eq!(report.per_prime.len(), 3);
        let ps: Vec<u64> = report.per_prime.iter().map(|r| r.p).collect();
        assert_eq!(ps, vec![2, 7, 17]);
        for rp in &report.per_prime {
            assert_eq!(rp.hn.alpha, 5);
            assert_eq!(rp.split.verdict, SplitVerdict::NonSplit);
            assert!(rp.split.divisibility_certificate);
            assert!(matches!(rp.hn.zero_free, FillResult::FillsAt(_)));
        }
    }

    #[test]
    fn replay_single_prime_d7() {
        let report = counterexample_replay(7, &[3]).unwrap();
        assert_eq!(report.per_prime[0].hn.alpha, 14);
        assert_eq!(report.subbundle_slope, rat(14, 1));
    }

    #[test]
    fn replay_preconditions() {
        assert!(matches!(
            counterexample_replay(3, &[7]),
            Err(Error::NotApplicable(_))
        ));
        assert!(matches!(
            counterexample_replay(5, &[]),
            Err(Error::EmptyPrimes)
        ));
        // wrong congruence class propagates from the engine
        assert!(counterexample_replay(5, &[3]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn audit_is_permutation_invariant(
            order in Just(vec![3u64, 7, 17, 37, 47]).prop_shuffle(),
            rank in 1u32..4,
            bound_num in 0i64..30,
        ) {
            let b = rat(bound_num, 2);
            let sorted = scenario(rank, b.clone(), 0, &[3, 7, 17, 37, 47], true, true);
            let shuffled = scenario(rank, b, 0, &order, true, true);
            let v1 = audit(&sorted).unwrap();
            let v2 = audit(&shuffled).unwrap();
            prop_assert_eq!(v1.conclusion, v2.conclusion);
            prop_assert_eq!(v1.contradiction_prime, v2.contradiction_prime);
            prop_assert_eq!(v1.degree_forced_zero, v2.degree_forced_zero);
        }

        #[test]
        fn audit_contradiction_prime_is_least_above_threshold(
            rank in 1u32..5,
            bound_num in 0i64..60,
            deg_mult in -3i64..4,
        ) {
            let primes = vec![2u64, 5, 11, 23, 41];
            // degree divisible by every listed prime keeps the scenario consistent
            let product: i64 = 2 * 5 * 11 * 23 * 41;
            let s = scenario(rank, rat(bound_num, 3), product * deg_mult, &primes, true, true);
            let v = audit(&s).unwrap();
            prop_assert_ne!(v.conclusion, AuditConclusion::InconsistentScenario);
            let threshold = rat(i64::from(rank) * bound_num, 3);
            let expected = primes
                .iter()
                .copied()
                .filter(|&p| rat(i64::try_from(p).unwrap(), 1) > threshold)
                .min();
            prop_assert_eq!(v.contradiction_prime, expected);
            match expected {
                Some(_) => prop_assert_eq!(v.conclusion, AuditConclusion::GenericallySemistable),
                None => prop_assert_eq!(v.conclusion, AuditConclusion::Inconclusive),
            }
        }

        #[test]
        fn audit_is_monotone_in_the_bound(
            bound_num in 0i64..40,
            increment in 0i64..40,
        ) {
            let primes = vec![7u64, 17, 37];
            let small = scenario(2, rat(bound_num, 2), 0, &primes, true, true);
            let large = scenario(2, rat(bound_num + increment, 2), 0, &primes, true, true);
            let vs = audit(&small).unwrap();
            let vl = audit(&large).unwrap();
            // raising b can only lose the contradiction, never gain one
            prop_assert_ne!(vs.conclusion, AuditConclusion::InconsistentScenario);
            prop_assert_ne!(vl.conclusion, AuditConclusion::InconsistentScenario);
            if vl.conclusion == AuditConclusion::GenericallySemistable {
                prop_assert_eq!(vs.conclusion, AuditConclusion::GenericallySemistable);
                prop_assert!(vs.contradiction_prime.unwrap() <= vl.contradiction_prime.unwrap());
            }
        }
    }
}
