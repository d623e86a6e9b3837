//! Verdict assembly: the Hasse–Weil comparison, the orbit-count expectation,
//! the prime-size advisory, and the recorded assumptions.
//!
//! The bound test is decided with integers only. `L` exceeds
//! `λ + 1 + 2g√λ` iff `L > λ + 1` and `(L − λ − 1)² > 4g²λ`, which is the same
//! as `L > λ + 1 + isqrt(4g²λ)`.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frobcount::ScanResult;
use crate::numfield::format_rational;
use crate::permcomb::{GenusMode, GenusReport};

/// Default orbit count under the non-transitive alternative.
pub const DEFAULT_ORBIT_COUNT: u32 = 2;
/// Default required ratio λ / (4g²/(d−1)²).
pub const DEFAULT_MARGIN: f64 = 2.0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("genus {0} is negative; the Hasse-Weil bound needs g >= 0")]
    NegativeGenus(BigInt),
    #[error("orbit count d must be at least 2 for the prime-size threshold, got {0}")]
    OrbitCount(u32),
    #[error("scan covers {scanned} of {lambda} fibers and did not exit early")]
    IncompleteScan { scanned: u64, lambda: u64 },
    #[error("genus report is for k = {genus_k}, scan for k = {scan_k}")]
    KMismatch { genus_k: usize, scan_k: usize },
}

/// `B = λ + 1 + isqrt(4g²λ)`.
pub fn hasse_weil_upper(lambda: u64, g: &BigInt) -> Result<BigUint, CertifyError> {
    let g = g
        .to_biguint()
        .ok_or_else(|| CertifyError::NegativeGenus(g.clone()))?;
    let radicand = BigUint::from(4u32) * &g * &g * BigUint::from(lambda);
    Ok(BigUint::from(lambda) + 1u32 + radicand.sqrt())
}

/// Squared-form test of `count > λ + 1 + 2g√λ`.
pub fn exceeds_hasse_weil(lambda: u64, g: &BigInt, count: &BigUint) -> Result<bool, CertifyError> {
    if g.is_negative() {
        return Err(CertifyError::NegativeGenus(g.clone()));
    }
    let base = BigUint::from(lambda) + 1u32;
    if *count <= base {
        return Ok(false);
    }
    let excess = count - base;
    let g = g.magnitude();
    Ok(&excess * &excess > BigUint::from(4u32) * g * g * BigUint::from(lambda))
}

/// `d·λ`, the expected fiber sum when the group has `d` orbits on k-subsets.
pub fn expected_sum(d: u32, lambda: u64) -> BigUint {
    BigUint::from(d) * BigUint::from(lambda)
}

/// `4g²/(d−1)²`: primes at or below this cannot separate d orbits from one.
pub fn prime_size_threshold(g: &BigInt, d: u32) -> Result<BigRational, CertifyError> {
    if d < 2 {
        return Err(CertifyError::OrbitCount(d));
    }
    let dm1 = BigInt::from(d - 1);
    Ok(BigRational::new(BigInt::from(4) * g * g, &dm1 * &dm1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// The fiber count exceeds the Hasse–Weil bound.
    NotKTransitive,
    /// The count did not beat the bound; nothing is proven.
    Inconclusive,
    /// The k-subset curve would have negative genus.
    NegativeGenusContradiction,
}

impl Verdict {
    /// True for both contradiction verdicts.
    pub fn disproves_k_transitivity(&self) -> bool {
        !matches!(self, Verdict::Inconclusive)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::NotKTransitive => "NotKTransitive",
            Verdict::Inconclusive => "Inconclusive",
            Verdict::NegativeGenusContradiction => "NegativeGenusContradiction",
        };
        f.write_str(s)
    }
}

/// Serde adapters writing big integers as bare JSON numbers.
mod decimal {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::de::Error as _;
    use serde::ser::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        let n: serde_json::Number = v.to_string().parse().map_err(S::Error::custom)?;
        n.serialize(s)
    }

    pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        n.to_string()
            .parse()
            .map_err(|_| D::Error::custom(format!("bad integer {n}")))
    }

    pub mod opt {
        use super::*;

        pub fn serialize<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => super::serialize(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Option<T>, D::Error> {
            let n = Option::<serde_json::Number>::deserialize(d)?;
            n.map(|n| {
                n.to_string()
                    .parse()
                    .map_err(|_| D::Error::custom(format!("bad integer {n}")))
            })
            .transpose()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeSection {
    pub ell: u64,
    pub r: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemSection {
    pub cover_hash: Option<String>,
    pub lambda: u64,
    pub prime: Option<PrimeSection>,
    pub k: usize,
    pub n: usize,
    pub ramification: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchSection {
    pub cycle_type: String,
    #[serde(with = "decimal")]
    pub order: u128,
    #[serde(with = "decimal")]
    pub pi_k: BigUint,
    /// Exact index, or the upper bound as `a/b` in bound mode.
    pub index: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenusSection {
    pub mode: String,
    #[serde(with = "decimal")]
    pub cover_degree: BigUint,
    pub branches: Vec<BranchSection>,
    /// Genus or its upper estimate, as an integer or `a/b`.
    pub g: String,
    /// Integer genus fed to the bound (ceiling of `g`, clamped if overridden).
    #[serde(with = "decimal")]
    pub g_used: BigInt,
    pub contradiction: bool,
    pub nonnegative_override: bool,
}

impl GenusSection {
    pub fn from_report(r: &GenusReport) -> Self {
        Self {
            mode: r.mode.as_str().to_string(),
            cover_degree: r.cover_degree.clone(),
            branches: r
                .branches
                .iter()
                .map(|b| BranchSection {
                    cycle_type: b.cycle_type.to_string(),
                    order: b.order,
                    pi_k: b.pi_k.clone(),
                    index: format_rational(&b.index),
                })
                .collect(),
            g: format_rational(&r.genus),
            g_used: r.genus_for_bound(),
            contradiction: r.contradiction,
            nonnegative_override: r.nonnegative_override,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdvisorySection {
    pub orbit_count_d: u32,
    /// `4g²/(d−1)²` as an integer or `a/b`.
    pub prime_size_threshold: String,
    /// λ divided by the threshold; absent when the threshold is zero.
    pub lambda_over_threshold: Option<f64>,
    pub margin: f64,
    pub prime_large_enough: bool,
    /// d·λ
    #[serde(with = "decimal")]
    pub expected_sum_if_not_transitive: BigUint,
    pub ramified_points_observed: usize,
    pub branch_points_declared: Option<usize>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkippedSection {
    pub ramified: Vec<u64>,
    pub degree_drop: Vec<u64>,
    pub infinity_not_scanned: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanSection {
    pub scanned_ranges: Vec<[u64; 2]>,
    pub fibers_counted: u64,
    pub early_exit_triggered: bool,
}

/// The full verdict document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub problem: ProblemSection,
    pub genus: GenusSection,
    #[serde(with = "decimal::opt")]
    pub hw_bound: Option<BigUint>,
    #[serde(with = "decimal::opt")]
    pub count_lower: Option<BigUint>,
    pub verdict: Verdict,
    pub assumptions: Vec<String>,
    pub advisory: AdvisorySection,
    pub skipped_fibers: SkippedSection,
    pub scan: Option<ScanSection>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Structural validity: assumptions present, verdict consistent with
    /// the recorded numbers.
    pub fn is_consistent(&self) -> bool {
        if self.assumptions.is_empty() {
            return false;
        }
        let violated = match (&self.hw_bound, &self.count_lower) {
            (Some(b), Some(l)) => l > b,
            _ => false,
        };
        match self.verdict {
            Verdict::NegativeGenusContradiction => self.genus.contradiction,
            Verdict::NotKTransitive => violated && !self.genus.contradiction,
            Verdict::Inconclusive => !violated && !self.genus.contradiction,
        }
    }
}

/// Inputs that describe the problem but do not affect the arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateMeta {
    pub cover_hash: Option<String>,
    pub prime: Option<(u64, u64)>,
    pub ramification: Option<Vec<String>>,
    pub orbit_count_d: u32,
    pub margin: f64,
    pub extra_assumptions: Vec<String>,
}

impl Default for CertificateMeta {
    fn default() -> Self {
        Self {
            cover_hash: None,
            prime: None,
            ramification: None,
            orbit_count_d: DEFAULT_ORBIT_COUNT,
            margin: DEFAULT_MARGIN,
            extra_assumptions: Vec::new(),
        }
    }
}

fn ratio_f64(num: &BigRational) -> Option<f64> {
    let n = num.numer().to_f64()?;
    let d = num.denom().to_f64()?;
    // six decimals keep the JSON round trip exact
    Some((n / d * 1e6).round() / 1e6)
}

/// Assembles the certificate. `scan` may be omitted only when the genus
/// already yields a contradiction.
pub fn build_certificate(
    genus: &GenusReport,
    scan: Option<&ScanResult>,
    lambda: u64,
    meta: &CertificateMeta,
) -> Result<Certificate, CertifyError> {
    let k = genus.k;
    if let Some(s) = scan {
        if s.k != k {
            return Err(CertifyError::KMismatch {
                genus_k: k,
                scan_k: s.k,
            });
        }
        if !s.covers(&(0..lambda)) && !s.early_exit_triggered {
            return Err(CertifyError::IncompleteScan {
                scanned: s.scanned(),
                lambda,
            });
        }
    } else if !genus.contradiction {
        return Err(CertifyError::IncompleteScan { scanned: 0, lambda });
    }

    let g_used = genus.genus_for_bound();
    let hw_bound = if g_used.sign() == Sign::Minus {
        None
    } else {
        Some(hasse_weil_upper(lambda, &g_used)?)
    };
    let count_lower = scan.map(|s| s.total.clone());

    let verdict = if genus.contradiction {
        Verdict::NegativeGenusContradiction
    } else {
        match (&hw_bound, &count_lower) {
            (Some(_), Some(l)) if exceeds_hasse_weil(lambda, &g_used, l)? => Verdict::NotKTransitive,
            _ => Verdict::Inconclusive,
        }
    };
    if let (Some(b), Some(l), false) = (&hw_bound, &count_lower, genus.contradiction) {
        debug_assert_eq!(l > b, verdict == Verdict::NotKTransitive);
    }

    let mut assumptions = vec![
        format!("hypothesis under test: the geometric monodromy group acts {k}-transitively"),
        "the prime has good reduction for the cover, so the monodromy group over the residue field equals the one in characteristic zero (not verified here)".to_string(),
        format!("arithmetic and geometric monodromy groups over F_{lambda} coincide, so C_{k} is geometrically irreducible with full constant field"),
        "the declared ramification type is the ramification type of the cover".to_string(),
        "the minimal polynomial of the number field is irreducible and p, q are coprime over it".to_string(),
    ];
    if genus.mode == GenusMode::Bound {
        assumptions.push(
            "genus taken from per-branch index upper bounds; its ceiling is used in the bound".into(),
        );
    }
    if genus.nonnegative_override {
        assumptions.push(format!(
            "negative genus {} replaced by 0 to exercise the point count; C_{k} is then not an irreducible curve and the count comparison is illustrative only",
            format_rational(&genus.genus)
        ));
    }
    assumptions.extend(meta.extra_assumptions.iter().cloned());

    let mut notes = Vec::new();
    let d = meta.orbit_count_d.max(2);
    let threshold = prime_size_threshold(&g_used.abs(), d)?;
    let ratio = if threshold.is_zero() {
        None
    } else {
        ratio_f64(&(BigRational::from_integer(BigInt::from(lambda)) / &threshold))
    };
    let prime_large_enough = ratio.map_or(true, |r| r >= meta.margin);
    match ratio {
        Some(r) if r <= 1.0 => notes.push(format!(
            "lambda is at or below the prime-size threshold (ratio {r:.4}); a count near d*lambda cannot beat the bound"
        )),
        Some(r) if r < meta.margin => notes.push(format!(
            "lambda exceeds the prime-size threshold only by a factor {r:.4}, below the margin {}",
            meta.margin
        )),
        _ => {}
    }
    if verdict == Verdict::Inconclusive {
        notes.push(if prime_large_enough {
            "count did not exceed the bound although lambda is comfortably above the threshold; consistent with k-transitivity".to_string()
        } else {
            "count did not exceed the bound; lambda may be too small to discriminate".to_string()
        });
    }
    if scan.is_some_and(|s| s.early_exit_triggered) {
        notes.push("scan stopped early once the running total passed the bound".into());
    }

    let ramified = scan.map(|s| s.ramified.clone()).unwrap_or_default();
    let degree_drop = scan.map(|s| s.degree_drop_skipped.clone()).unwrap_or_default();
    let branch_points_declared = meta.ramification.as_ref().map(Vec::len);
    if let Some(m) = branch_points_declared {
        if ramified.len() > m {
            notes.push(format!(
                "{} ramified fibers observed but only {m} branch points declared; the ramification type is likely wrong for this cover",
                ramified.len()
            ));
        }
    }
    if !degree_drop.is_empty() {
        notes.push(format!(
            "{} fibers with a degree drop of 2 or more were skipped; the count is a weaker lower bound",
            degree_drop.len()
        ));
    }

    Ok(Certificate {
        problem: ProblemSection {
            cover_hash: meta.cover_hash.clone(),
            lambda,
            prime: meta.prime.map(|(ell, r)| PrimeSection { ell, r }),
            k,
            n: genus.n,
            ramification: meta.ramification.clone(),
        },
        genus: GenusSection::from_report(genus),
        hw_bound,
        count_lower,
        verdict,
        assumptions,
        advisory: AdvisorySection {
            orbit_count_d: d,
            prime_size_threshold: format_rational(&threshold),
            lambda_over_threshold: ratio,
            margin: meta.margin,
            prime_large_enough,
            expected_sum_if_not_transitive: expected_sum(d, lambda),
            ramified_points_observed: ramified.len(),
            branch_points_declared,
            notes,
        },
        skipped_fibers: SkippedSection {
            ramified,
            degree_drop,
            infinity_not_scanned: true,
        },
        scan: scan.map(|s| ScanSection {
            scanned_ranges: s.ranges.iter().map(|r| [r.start, r.end]).collect(),
            fibers_counted: s.counted_fibers(),
            early_exit_triggered: s.early_exit_triggered,
        }),
    })
}
