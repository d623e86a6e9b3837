//! Checkpoint and histogram files.
//!
//! A checkpoint is line oriented. The first line binds it to a problem:
//!
//! ```text
//! transbound-checkpoint v1 lambda <λ> k <k> hash <sha256 of λ, p, q>
//! ```
//!
//! Each further line records one completed chunk, in decimal:
//!
//! ```text
//! <start> <end> <total> <ramified t0 ...> ; <degree-drop t0 ...> | <d1,...,dk=count ...>
//! ```
//!
//! Only newline-terminated lines are read back, so a record torn by a kill
//! is ignored and its chunk is rescanned.

use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Read, Write};
use std::path::Path;
use std::sync::Mutex;

use num_bigint::BigUint;
use sha2::{Digest, Sha256};

use super::scan::ScanProblem;
use super::{ScanError, ScanResult};
use crate::modarith::FPoly;

const MAGIC: &str = "transbound-checkpoint v1";

/// Hex SHA-256 over λ and the coefficients of `p` and `q`.
pub fn problem_hash(p: &FPoly, q: &FPoly) -> String {
    let mut h = Sha256::new();
    h.update(format!("lambda {}\n", p.field().modulus()));
    for (name, poly) in [("p", p), ("q", q)] {
        h.update(name);
        for c in poly.coeffs() {
            h.update(format!(" {c}"));
        }
        h.update("\n");
    }
    hex::encode(h.finalize())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckpointHeader {
    pub lambda: u64,
    pub k: usize,
    pub hash: String,
}

impl CheckpointHeader {
    pub fn for_problem(problem: &ScanProblem) -> Self {
        Self {
            lambda: problem.lambda(),
            k: problem.k(),
            hash: problem.hash().to_string(),
        }
    }

    fn to_line(&self) -> String {
        format!("{MAGIC} lambda {} k {} hash {}", self.lambda, self.k, self.hash)
    }

    fn parse(line: &str) -> Result<Self, ScanError> {
        let bad = |msg: &str| ScanError::CheckpointFormat {
            line: 1,
            msg: msg.to_string(),
        };
        let rest = line.strip_prefix(MAGIC).ok_or_else(|| bad("missing header"))?;
        let toks: Vec<&str> = rest.split_whitespace().collect();
        match toks.as_slice() {
            ["lambda", l, "k", k, "hash", h] => Ok(Self {
                lambda: l.parse().map_err(|_| bad("bad lambda"))?,
                k: k.parse().map_err(|_| bad("bad k"))?,
                hash: h.to_string(),
            }),
            _ => Err(bad("expected 'lambda <l> k <k> hash <h>'")),
        }
    }

    /// Refuses a checkpoint written for a different problem.
    pub fn check(&self, expected: &CheckpointHeader) -> Result<(), ScanError> {
        if self != expected {
            return Err(ScanError::CheckpointMismatch(format!(
                "file has lambda {} k {} hash {}, problem has lambda {} k {} hash {}",
                self.lambda, self.k, self.hash, expected.lambda, expected.k, expected.hash
            )));
        }
        Ok(())
    }
}

fn format_record(res: &ScanResult) -> String {
    let range = &res.ranges[0];
    let mut line = format!("{} {} {}", range.start, range.end, res.total);
    for t in &res.ramified {
        line.push_str(&format!(" {t}"));
    }
    line.push_str(" ;");
    for t in &res.degree_drop_skipped {
        line.push_str(&format!(" {t}"));
    }
    line.push_str(" |");
    for (pattern, count) in &res.histogram {
        let digits: Vec<String> = pattern.iter().map(u32::to_string).collect();
        line.push_str(&format!(" {}={count}", digits.join(",")));
    }
    line
}

fn parse_record(line: &str, lineno: usize, k: usize) -> Result<ScanResult, ScanError> {
    let bad = |msg: String| ScanError::CheckpointFormat { line: lineno, msg };
    let num = |s: &str| s.parse::<u64>().map_err(|_| bad(format!("bad integer {s:?}")));
    let (head, rest) = line
        .split_once(';')
        .ok_or_else(|| bad("missing ';'".into()))?;
    let (skips, hist) = rest
        .split_once('|')
        .ok_or_else(|| bad("missing '|'".into()))?;
    let mut head = head.split_whitespace();
    let start = num(head.next().ok_or_else(|| bad("missing start".into()))?)?;
    let end = num(head.next().ok_or_else(|| bad("missing end".into()))?)?;
    let total: BigUint = head
        .next()
        .ok_or_else(|| bad("missing total".into()))?
        .parse()
        .map_err(|_| bad("bad total".into()))?;
    if start >= end {
        return Err(bad(format!("empty range {start}..{end}")));
    }
    let mut res = ScanResult::for_range(k, start..end);
    res.total = total;
    res.ramified = head.map(num).collect::<Result<_, _>>()?;
    res.degree_drop_skipped = skips.split_whitespace().map(num).collect::<Result<_, _>>()?;
    for entry in hist.split_whitespace() {
        let (pat, count) = entry
            .split_once('=')
            .ok_or_else(|| bad(format!("bad histogram entry {entry:?}")))?;
        let pattern = pat
            .split(',')
            .map(|d| d.parse::<u32>().map_err(|_| bad(format!("bad pattern {pat:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if pattern.len() != k {
            return Err(bad(format!("pattern {pat:?} has length {}, expected {k}", pattern.len())));
        }
        res.histogram.insert(pattern, num(count)?);
    }
    if res.histogram_total() != res.total {
        return Err(bad("total does not match histogram".into()));
    }
    Ok(res)
}

/// Reads a checkpoint, verifies it belongs to `expected`, and merges its
/// records. A missing file yields `None`.
pub fn read_checkpoint(
    path: &Path,
    expected: &CheckpointHeader,
) -> Result<Option<ScanResult>, ScanError> {
    let mut text = String::new();
    match File::open(path) {
        Ok(mut f) => f.read_to_string(&mut text)?,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    // drop a torn final record
    let complete = match text.rfind('\n') {
        Some(i) => &text[..=i],
        None => "",
    };
    let mut lines = complete.lines();
    let Some(header) = lines.next() else {
        return Ok(None);
    };
    CheckpointHeader::parse(header)?.check(expected)?;
    let mut acc = ScanResult::empty(expected.k);
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec = parse_record(line, i + 2, expected.k)?;
        acc = acc.merge(rec)?;
    }
    Ok(Some(acc))
}

/// Appends chunk records; safe to share between workers.
pub struct CheckpointWriter {
    out: Mutex<BufWriter<File>>,
}

impl CheckpointWriter {
    /// Creates (truncating) a checkpoint and writes the header.
    pub fn create(path: &Path, header: &CheckpointHeader) -> Result<Self, ScanError> {
        let mut out = BufWriter::new(File::create(path)?);
        writeln!(out, "{}", header.to_line())?;
        out.flush()?;
        Ok(Self {
            out: Mutex::new(out),
        })
    }

    /// Opens an existing checkpoint for appending after checking its
    /// header; creates it when absent or empty. A torn trailing record is
    /// cut off first.
    pub fn append(path: &Path, header: &CheckpointHeader) -> Result<Self, ScanError> {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
            Err(e) => return Err(e.into()),
        };
        let keep = text.rfind('\n').map_or(0, |i| i + 1);
        if keep == 0 {
            return Self::create(path, header);
        }
        let first = text.lines().next().unwrap_or_default();
        CheckpointHeader::parse(first)?.check(header)?;
        let file = OpenOptions::new().write(true).open(path)?;
        file.set_len(keep as u64)?;
        let mut out = BufWriter::new(file);
        use std::io::Seek;
        out.seek(std::io::SeekFrom::End(0))?;
        Ok(Self {
            out: Mutex::new(out),
        })
    }

    /// Writes one completed chunk and flushes.
    pub fn record(&self, res: &ScanResult) -> Result<(), ScanError> {
        debug_assert_eq!(res.ranges.len(), 1);
        let line = format_record(res);
        let mut out = self.out.lock().expect("checkpoint writer poisoned");
        writeln!(out, "{line}")?;
        out.flush()?;
        Ok(())
    }
}

/// Writes the pattern histogram as lines `d1 d2 … dk count`.
pub fn write_histogram<W: Write>(res: &ScanResult, mut out: W) -> std::io::Result<()> {
    for (pattern, count) in &res.histogram {
        for d in pattern {
            write!(out, "{d} ")?;
        }
        writeln!(out, "{count}")?;
    }
    Ok(())
}
