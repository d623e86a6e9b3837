//! Chunked, parallel scan driver with early exit and checkpointing.

use std::ops::Range;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::checkpoint::{problem_hash, CheckpointWriter};
use super::{classify_fiber, specialize, FiberStatus, ScanError, ScanResult};
use crate::modarith::FPoly;

/// Default number of fibers per chunk, which is also the default interval
/// between early-exit checks.
pub const DEFAULT_CHUNK_SIZE: u64 = 1 << 16;

/// The reduced cover and the subset size being counted.
#[derive(Clone, Debug)]
pub struct ScanProblem {
    p: FPoly,
    q: FPoly,
    k: usize,
    n: usize,
    hash: String,
}

impl ScanProblem {
    pub fn new(p: FPoly, q: FPoly, k: usize) -> Result<Self, ScanError> {
        assert_eq!(p.field(), q.field(), "p and q over different fields");
        let n = p.degree().unwrap_or(0).max(q.degree().unwrap_or(0));
        if k == 0 || k >= n {
            return Err(ScanError::KOutOfRange {
                k,
                max: n.saturating_sub(1),
            });
        }
        let hash = problem_hash(&p, &q);
        Ok(Self { p, q, k, n, hash })
    }

    pub fn p(&self) -> &FPoly {
        &self.p
    }

    pub fn q(&self) -> &FPoly {
        &self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> u64 {
        self.p.field().modulus()
    }

    /// Hex SHA-256 identifying `(λ, p_𝔭, q_𝔭)`.
    pub fn hash(&self) -> &str {
        &self.hash
    }

    /// Every finite `t₀`.
    pub fn full_range(&self) -> Range<u64> {
        0..self.lambda()
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub chunk_size: u64,
    /// Worker threads; 0 means the hardware parallelism.
    pub threads: usize,
    /// Stop once the global running total exceeds this value.
    pub early_exit_above: Option<BigUint>,
    /// Fibers between early-exit checks inside a chunk.
    pub check_interval: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            chunk_size: DEFAULT_CHUNK_SIZE,
            threads: 0,
            early_exit_above: None,
            check_interval: DEFAULT_CHUNK_SIZE,
        }
    }
}

/// Single-call scan of `range` without checkpointing.
pub fn scan_range(
    p: &FPoly,
    q: &FPoly,
    k: usize,
    range: Range<u64>,
    opts: &ScanOptions,
) -> Result<ScanResult, ScanError> {
    let problem = ScanProblem::new(p.clone(), q.clone(), k)?;
    Scanner::new(&problem, opts.clone()).run(range, None, None)
}

pub struct Scanner<'a> {
    problem: &'a ScanProblem,
    opts: ScanOptions,
}

/// Shared early-exit state: a saturating running total of committed chunk
/// totals and a stop flag.
struct ExitGate {
    threshold: Option<u64>,
    committed: AtomicU64,
    stop: AtomicBool,
}

impl ExitGate {
    fn add(&self, v: &BigUint) {
        if self.threshold.is_none() {
            return;
        }
        let v = v.to_u64().unwrap_or(u64::MAX);
        let _ = self
            .committed
            .fetch_update(Ordering::Relaxed, Ordering::Relaxed, |c| Some(c.saturating_add(v)));
        self.check(0);
    }

    /// Raises the stop flag when committed plus `pending` exceeds the threshold.
    fn check(&self, pending: u64) -> bool {
        let Some(t) = self.threshold else { return false };
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        if self.committed.load(Ordering::Relaxed).saturating_add(pending) > t {
            self.stop.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }
}

impl<'a> Scanner<'a> {
    pub fn new(problem: &'a ScanProblem, opts: ScanOptions) -> Self {
        Self { problem, opts }
    }

    /// Scans every `t₀` in `range` not already covered by `resume`, merging
    /// into it. Completed chunks are appended to `checkpoint` as they finish.
    ///
    /// Without early exit the result is independent of chunk size, thread
    /// count and resume point.
    pub fn run(
        &self,
        range: Range<u64>,
        resume: Option<ScanResult>,
        checkpoint: Option<&CheckpointWriter>,
    ) -> Result<ScanResult, ScanError> {
        let lambda = self.problem.lambda();
        if range.end > lambda || range.start > range.end {
            return Err(ScanError::RangeOutOfField {
                start: range.start,
                end: range.end,
                lambda,
            });
        }
        let k = self.problem.k;
        let base = resume.unwrap_or_else(|| ScanResult::empty(k));
        if base.k != k {
            return Err(ScanError::KMismatch(base.k, k));
        }
        let chunks = plan_chunks(&range, &base.ranges, self.opts.chunk_size.max(1));

        let threshold = self
            .opts
            .early_exit_above
            .as_ref()
            .and_then(|t| t.to_u64());
        let gate = ExitGate {
            threshold,
            committed: AtomicU64::new(0),
            stop: AtomicBool::new(false),
        };
        gate.add(&base.total);
        // a threshold too large for u64 can never be crossed by the gate; it
        // is simply not armed

        let work = |chunk: &Range<u64>| -> Result<Option<ScanResult>, ScanError> {
            if gate.stopped() {
                return Ok(None);
            }
            let res = self.scan_chunk(chunk.clone(), &gate)?;
            if res.ranges.is_empty() {
                return Ok(None);
            }
            gate.add(&res.total);
            if let Some(w) = checkpoint {
                w.record(&res)?;
            }
            Ok(Some(res))
        };

        let threads = if self.opts.threads == 0 {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        } else {
            self.opts.threads
        };
        let parts: Vec<Option<ScanResult>> = if threads == 1 {
            chunks.iter().map(work).collect::<Result<_, _>>()?
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| ScanError::Pool(e.to_string()))?;
            pool.install(|| chunks.par_iter().map(work).collect::<Result<_, _>>())?
        };

        let mut out = base;
        for part in parts.into_iter().flatten() {
            out = out.merge(part)?;
        }
        if gate.stopped() {
            out.early_exit_triggered = true;
        }
        Ok(out)
    }

    /// Scans one chunk. Under early exit the chunk may end early; the result
    /// then covers only the fibers actually processed.
    fn scan_chunk(&self, range: Range<u64>, gate: &ExitGate) -> Result<ScanResult, ScanError> {
        let k = self.problem.k;
        let interval = self.opts.check_interval.max(1);
        let mut res = ScanResult::for_range(k, range.clone());
        let mut since_check = 0u64;
        let mut end = range.end;
        for t0 in range.clone() {
            if gate.threshold.is_some() {
                since_check += 1;
                if since_check == interval {
                    since_check = 0;
                    let pending = res.histogram_total().to_u64().unwrap_or(u64::MAX);
                    if gate.check(pending) {
                        end = t0;
                        break;
                    }
                }
            }
            let (f, drop) = specialize(&self.problem.p, &self.problem.q, t0)?;
            match classify_fiber(t0, &f, drop, k)? {
                (FiberStatus::Counted, Some(counts)) => {
                    *res.histogram.entry(counts).or_default() += 1;
                }
                (FiberStatus::Ramified, _) => res.ramified.push(t0),
                (FiberStatus::DegreeDropSkipped, _) => res.degree_drop_skipped.push(t0),
                (FiberStatus::Counted, None) => unreachable!("counted fiber without counts"),
            }
        }
        res.ranges = if end > range.start {
            vec![range.start..end]
        } else {
            Vec::new()
        };
        res.total = res.histogram_total();
        Ok(res)
    }
}

/// Splits `range` minus `done` into pieces of at most `chunk_size`.
fn plan_chunks(range: &Range<u64>, done: &[Range<u64>], chunk_size: u64) -> Vec<Range<u64>> {
    let mut gaps = Vec::new();
    let mut cursor = range.start;
    let mut done: Vec<&Range<u64>> = done.iter().collect();
    done.sort_by_key(|r| r.start);
    for d in done {
        if d.end <= cursor || d.start >= range.end {
            continue;
        }
        if d.start > cursor {
            gaps.push(cursor..d.start);
        }
        cursor = cursor.max(d.end);
    }
    if cursor < range.end {
        gaps.push(cursor..range.end);
    }
    let mut chunks = Vec::new();
    for g in gaps {
        let mut s = g.start;
        while s < g.end {
            let e = g.end.min(s.saturating_add(chunk_size));
            chunks.push(s..e);
            s = e;
        }
    }
    chunks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modarith::PrimeField;

    #[test]
    fn chunk_planning() {
        assert_eq!(plan_chunks(&(0..10), &[], 4), vec![0..4, 4..8, 8..10]);
        assert_eq!(
            plan_chunks(&(0..10), &[2..5, 7..8], 4),
            vec![0..2, 5..7, 8..10]
        );
        assert!(plan_chunks(&(0..10), &[0..10], 3).is_empty());
        assert!(plan_chunks(&(5..5), &[], 3).is_empty());
    }

    fn cubic_problem() -> ScanProblem {
        let f = PrimeField::new(1009).unwrap();
        let p = FPoly::from_i64(f, &[0, -3, 0, 1]);
        ScanProblem::new(p, FPoly::one(f), 2).unwrap()
    }

    #[test]
    fn chunking_does_not_change_result() {
        let problem = cubic_problem();
        let one = Scanner::new(
            &problem,
            ScanOptions {
                chunk_size: 1 << 20,
                threads: 1,
                ..Default::default()
            },
        )
        .run(problem.full_range(), None, None)
        .unwrap();
        let many = Scanner::new(
            &problem,
            ScanOptions {
                chunk_size: 37,
                threads: 3,
                ..Default::default()
            },
        )
        .run(problem.full_range(), None, None)
        .unwrap();
        assert_eq!(one, many);
        assert_eq!(one.total, one.histogram_total());
        assert_eq!(one.scanned(), 1009);
        assert!(!one.early_exit_triggered);
        // X^3 - 3X - t has branch points t = ±2
        assert_eq!(one.ramified, vec![2, 1007]);
    }

    #[test]
    fn early_exit_stops_and_flags() {
        let problem = cubic_problem();
        let res = Scanner::new(
            &problem,
            ScanOptions {
                chunk_size: 64,
                threads: 1,
                early_exit_above: Some(BigUint::from(100u32)),
                check_interval: 16,
            },
        )
        .run(problem.full_range(), None, None)
        .unwrap();
        assert!(res.early_exit_triggered);
        assert!(res.total > BigUint::from(100u32));
        assert!(res.scanned() < 1009);
        assert_eq!(res.total, res.histogram_total());
    }

    #[test]
    fn out_of_field_range_rejected() {
        let problem = cubic_problem();
        let s = Scanner::new(&problem, ScanOptions::default());
        assert!(matches!(
            s.run(0..2000, None, None),
            Err(ScanError::RangeOutOfField { .. })
        ));
    }

    #[test]
    fn k_must_be_proper() {
        let f = PrimeField::new(101).unwrap();
        let p = FPoly::from_i64(f, &[0, 0, 0, 1]);
        assert!(ScanProblem::new(p.clone(), FPoly::one(f), 3).is_err());
        assert!(ScanProblem::new(p, FPoly::one(f), 0).is_err());
    }
}
