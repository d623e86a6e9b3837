//! The fiber scanner.
//!
//! For each unramified `t₀ ∈ 𝔽_λ` the specialization `f = p_𝔭 − t₀·q_𝔭` is
//! split into distinct-degree counts `d₁..d_k`, which determine the number
//! of Frobenius-invariant k-subsets `π_k(Frob(t₀)) = [x^k] ∏ (1 + x^i)^{d_i}`.
//! Summing over fibers gives a lower bound on `#C_k(𝔽_λ)`.
//!
//! Fibers are classified as:
//! - `Ramified` when `gcd(f, f′) ≠ 1`; these are excluded from the sum.
//! - `DegreeDropSkipped` when the leading terms cancel by two or more
//!   degrees; the contribution is dropped, which only weakens the bound.
//! - `Counted` otherwise. A single-degree drop means one fiber point sits at
//!   infinity of the x-line, which is rational, so `d₁` gains one.
//!
//! `t₀ = ∞` is never scanned.

mod checkpoint;
mod scan;

pub use checkpoint::{
    problem_hash, read_checkpoint, write_histogram, CheckpointHeader, CheckpointWriter,
};
pub use scan::{scan_range, ScanOptions, ScanProblem, Scanner, DEFAULT_CHUNK_SIZE};

use std::collections::BTreeMap;
use std::ops::Range;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::modarith::{distinct_degree_counts, ArithError, FPoly};
use crate::permcomb::subset_count_from_parts;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("specialization at t0 = {0} is the zero polynomial; p and q are not coprime")]
    ZeroSpecialization(u64),
    #[error("k = {k} outside 1..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error("range {start}..{end} is not inside [0, {lambda})")]
    RangeOutOfField { start: u64, end: u64, lambda: u64 },
    #[error("cannot merge: ranges {a:?} and {b:?} overlap")]
    Overlap { a: Range<u64>, b: Range<u64> },
    #[error("cannot merge scan results for different k ({0} vs {1})")]
    KMismatch(usize, usize),
    #[error("checkpoint does not match this problem: {0}")]
    CheckpointMismatch(String),
    #[error("malformed checkpoint line {line}: {msg}")]
    CheckpointFormat { line: usize, msg: String },
    #[error("checkpoint I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiberStatus {
    Counted,
    Ramified,
    DegreeDropSkipped,
}

/// Outcome for a single fiber over `t₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPattern {
    pub t0: u64,
    pub status: FiberStatus,
    /// `(d₁, …, d_k)` for counted fibers, including the +1 for a point at
    /// infinity.
    pub counts: Option<Vec<u32>>,
    pub pi_k: Option<BigUint>,
}

/// `f = p − t₀·q` together with `n − deg f`.
pub fn specialize(p: &FPoly, q: &FPoly, t0: u64) -> Result<(FPoly, usize), ScanError> {
    let field = p.field();
    let t0 = field.reduce(t0);
    let n = p.degree().unwrap_or(0).max(q.degree().unwrap_or(0));
    let len = n + 1;
    let coeffs = (0..len)
        .map(|i| field.sub(p.coeff(i), field.mul(t0, q.coeff(i))))
        .collect();
    let f = FPoly::new(field, coeffs);
    let deg = f.degree().ok_or(ScanError::ZeroSpecialization(t0))?;
    Ok((f, n - deg))
}

/// π_k for distinct-degree counts: `[x^k] ∏_i (1 + x^i)^{d_i}`.
pub fn pi_from_counts(counts: &[u32], k: usize) -> BigUint {
    subset_count_from_parts(
        counts
            .iter()
            .enumerate()
            .map(|(i, &d)| (i + 1, d as usize)),
        k,
    )
}

/// Classifies the fiber and, when counted, extracts `d₁..d_k` and π_k.
pub fn fiber_pi_k(t0: u64, f: &FPoly, degree_drop: usize, k: usize) -> Result<FiberPattern, ScanError> {
    let (status, counts) = classify_fiber(t0, f, degree_drop, k)?;
    let pi_k = counts.as_ref().map(|c| pi_from_counts(c, k));
    Ok(FiberPattern {
        t0,
        status,
        counts,
        pi_k,
    })
}

/// [`fiber_pi_k`] without the π_k evaluation, for the scan loop.
pub(crate) fn classify_fiber(
    t0: u64,
    f: &FPoly,
    degree_drop: usize,
    k: usize,
) -> Result<(FiberStatus, Option<Vec<u32>>), ScanError> {
    if k == 0 {
        return Err(ScanError::KOutOfRange { k, max: 0 });
    }
    if degree_drop >= 2 {
        return Ok((FiberStatus::DegreeDropSkipped, None));
    }
    let mut counts = match f.degree() {
        None => return Err(ScanError::ZeroSpecialization(t0)),
        // only reachable with degree_drop = 1 on a degree-1 cover
        Some(0) => vec![0; k],
        Some(_) => {
            if !f.is_squarefree() {
                return Ok((FiberStatus::Ramified, None));
            }
            distinct_degree_counts(f, k)?
        }
    };
    if degree_drop == 1 {
        counts[0] += 1;
    }
    Ok((FiberStatus::Counted, Some(counts)))
}

/// Aggregated scan over a set of `t₀` ranges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanResult {
    pub k: usize,
    /// Sorted, disjoint, coalesced ranges of scanned `t₀`.
    pub ranges: Vec<Range<u64>>,
    /// Σ π_k over counted fibers.
    pub total: BigUint,
    /// `(d₁..d_k)` → number of counted fibers with that pattern.
    pub histogram: BTreeMap<Vec<u32>, u64>,
    /// Sorted `t₀` with `gcd(f, f′) ≠ 1`.
    pub ramified: Vec<u64>,
    /// Sorted `t₀` whose specialization lost two or more degrees.
    pub degree_drop_skipped: Vec<u64>,
    pub early_exit_triggered: bool,
}

impl ScanResult {
    /// The merge identity.
    pub fn empty(k: usize) -> Self {
        Self {
            k,
            ranges: Vec::new(),
            total: BigUint::zero(),
            histogram: BTreeMap::new(),
            ramified: Vec::new(),
            degree_drop_skipped: Vec::new(),
            early_exit_triggered: false,
        }
    }

    /// Starts a result for a single range; fibers are added with [`Self::record`].
    pub fn for_range(k: usize, range: Range<u64>) -> Self {
        let mut r = Self::empty(k);
        if !range.is_empty() {
            r.ranges.push(range);
        }
        r
    }

    pub fn record(&mut self, fiber: FiberPattern) {
        match fiber.status {
            FiberStatus::Counted => {
                let counts = fiber.counts.expect("counted fiber has counts");
                self.total += fiber.pi_k.expect("counted fiber has pi_k");
                *self.histogram.entry(counts).or_default() += 1;
            }
            FiberStatus::Ramified => self.ramified.push(fiber.t0),
            FiberStatus::DegreeDropSkipped => self.degree_drop_skipped.push(fiber.t0),
        }
    }

    /// Number of `t₀` covered.
    pub fn scanned(&self) -> u64 {
        self.ranges.iter().map(|r| r.end - r.start).sum()
    }

    pub fn counted_fibers(&self) -> u64 {
        self.histogram.values().sum()
    }

    /// Whether `range` is fully covered.
    pub fn covers(&self, range: &Range<u64>) -> bool {
        if range.is_empty() {
            return true;
        }
        self.ranges
            .iter()
            .any(|r| r.start <= range.start && range.end <= r.end)
    }

    /// Σ count·π_k(pattern) over the histogram; equals `total` for any
    /// well-formed result.
    pub fn histogram_total(&self) -> BigUint {
        self.histogram
            .iter()
            .map(|(counts, &c)| pi_from_counts(counts, self.k) * BigUint::from(c))
            .sum()
    }

    /// Combines results over disjoint ranges. Associative and commutative.
    pub fn merge(mut self, other: ScanResult) -> Result<ScanResult, ScanError> {
        if self.k != other.k {
            return Err(ScanError::KMismatch(self.k, other.k));
        }
        for a in &self.ranges {
            for b in &other.ranges {
                if a.start < b.end && b.start < a.end {
                    return Err(ScanError::Overlap {
                        a: a.clone(),
                        b: b.clone(),
                    });
                }
            }
        }
        self.ranges.extend(other.ranges);
        self.ranges.sort_by_key(|r| r.start);
        let mut coalesced: Vec<Range<u64>> = Vec::with_capacity(self.ranges.len());
        for r in self.ranges.drain(..) {
            match coalesced.last_mut() {
                Some(last) if last.end == r.start => last.end = r.end,
                _ => coalesced.push(r),
            }
        }
        self.ranges = coalesced;
        self.total += other.total;
        for (pattern, c) in other.histogram {
            *self.histogram.entry(pattern).or_default() += c;
        }
        self.ramified.extend(other.ramified);
        self.ramified.sort_unstable();
        self.degree_drop_skipped.extend(other.degree_drop_skipped);
        self.degree_drop_skipped.sort_unstable();
        self.early_exit_triggered |= other.early_exit_triggered;
        Ok(self)
    }
}

/// Free-function form of [`ScanResult::merge`].
pub fn merge(a: ScanResult, b: ScanResult) -> Result<ScanResult, ScanError> {
    a.merge(b)
}
