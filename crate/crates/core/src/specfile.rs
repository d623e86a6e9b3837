//! Cover-spec files.
//!
//! A TOML document with optional sections:
//!
//! ```toml
//! [field]
//! min_poly = [8, -10, 9, 1, 1]        # ascending, monic; default is X (the rationals)
//!
//! [cover]
//! n = 5                               # optional cross-check
//! p = [0, -5, 0, 0, 0, 1]             # ascending in X
//! q = [1]                             # default 1
//!
//! [prime]
//! ell = 1000003
//! r = 0                               # or alpha_plus_c = ...; optional over a degree-1 field
//!
//! [ramification]
//! branch = ["2.1^3", "2.1^3", "2.1^3", "2.1^3", "5"]
//!
//! [task]
//! k = 2
//! ```
//!
//! A coefficient is a scalar (an integer or a string `"a"`/`"a/b"`) or a
//! vector of such coordinates over the power basis `1, α, α², …`. Integers
//! beyond 64 bits must be written as strings.

use std::fmt;
use std::ops::Range;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

use crate::modarith::FPoly;
use crate::numfield::{
    parse_rational, reduce_cover, residue_from_alpha_plus_c, validate_prime, CoverSpec,
    NFElement, NumFieldError, NumberFieldSpec, PrimeIdealSpec,
};
use crate::permcomb::{CombError, CycleType, RamificationType};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("{0}")]
    Toml(String),
    #[error("line {line}, column {column}: {msg}")]
    At {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("{0}")]
    Missing(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Str(String),
}

impl Scalar {
    fn rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Int(v) => Some(BigRational::from_integer(BigInt::from(*v))),
            Scalar::Str(s) => parse_rational(s),
        }
    }

    fn text(&self) -> String {
        match self {
            Scalar::Int(v) => v.to_string(),
            Scalar::Str(s) => format!("{s:?}"),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Coeff {
    Scalar(Scalar),
    Vector(Vec<Scalar>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    min_poly: Spanned<Vec<Scalar>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCover {
    n: Option<Spanned<usize>>,
    p: Spanned<Vec<Coeff>>,
    q: Option<Spanned<Vec<Coeff>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPrime {
    ell: Spanned<u64>,
    r: Option<Spanned<Scalar>>,
    alpha_plus_c: Option<Spanned<Scalar>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRamification {
    n: Option<Spanned<usize>>,
    branch: Spanned<Vec<Spanned<String>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTask {
    k: Option<Spanned<usize>>,
    lambda: Option<Spanned<u64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    field: Option<RawField>,
    cover: Option<RawCover>,
    prime: Option<RawPrime>,
    ramification: Option<RawRamification>,
    task: Option<RawTask>,
}

/// A declared prime (ℓ, α − r), not yet checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeDecl {
    pub ell: u64,
    pub r: u64,
}

/// A parsed spec file. Structural errors are rejected while parsing; the
/// arithmetic checks are left to [`SpecFile::diagnostics`] and the
/// accessors so that all findings can be reported together.
#[derive(Clone, Debug)]
pub struct SpecFile {
    pub field: NumberFieldSpec,
    pub cover: Option<CoverSpec>,
    pub prime: Option<PrimeDecl>,
    pub ramification: Option<RamificationType>,
    /// Branch strings as written.
    pub branch_texts: Option<Vec<String>>,
    pub k: Option<usize>,
    /// Residue field size for bound-only use when no prime is declared.
    pub lambda: Option<u64>,
    /// Hex SHA-256 of the file contents.
    pub source_hash: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Severity {
    Info,
    Warning,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Info => "ok",
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{tag}: {}", self.message)
    }
}

/// 1-based line and column of a byte offset.
fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, column)
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn err(&self, span: Range<usize>, msg: impl Into<String>) -> SpecError {
        let (line, column) = position(self.text, span.start);
        SpecError::At {
            line,
            column,
            msg: msg.into(),
        }
    }

    fn element(&self, c: &Coeff, span: Range<usize>, what: &str, i: usize) -> Result<NFElement, SpecError> {
        let coords: Vec<&Scalar> = match c {
            Coeff::Scalar(s) => vec![s],
            Coeff::Vector(v) => v.iter().collect(),
        };
        let coords = coords
            .into_iter()
            .map(|s| {
                s.rational().ok_or_else(|| {
                    self.err(
                        span.clone(),
                        format!("{what}[{i}]: {} is not an integer or a/b rational", s.text()),
                    )
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(NFElement::new(coords))
    }

    fn poly(&self, raw: &Spanned<Vec<Coeff>>, what: &str) -> Result<Vec<NFElement>, SpecError> {
        raw.get_ref()
            .iter()
            .enumerate()
            .map(|(i, c)| self.element(c, raw.span(), what, i))
            .collect()
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(bytes))
}

/// Parses a spec document.
pub fn parse_spec(text: &str) -> Result<SpecFile, SpecError> {
    let raw: RawSpec = toml::from_str(text).map_err(|e| SpecError::Toml(e.to_string()))?;
    let cx = Ctx { text };

    let field = match &raw.field {
        None => NumberFieldSpec::rationals(),
        Some(f) => {
            let coeffs = f
                .min_poly
                .get_ref()
                .iter()
                .map(|s| {
                    s.rational()
                        .filter(|r| r.is_integer())
                        .map(|r| r.to_integer())
                        .ok_or_else(|| {
                            cx.err(
                                f.min_poly.span(),
                                format!("min_poly entry {} is not an integer", s.text()),
                            )
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            NumberFieldSpec::new(coeffs).map_err(|e| cx.err(f.min_poly.span(), e.to_string()))?
        }
    };

    let (ramification, branch_texts) = match &raw.ramification {
        None => (None, None),
        Some(r) => {
            let texts: Vec<String> = r.branch.get_ref().iter().map(|s| s.get_ref().clone()).collect();
            let mut parsed = Vec::new();
            for s in r.branch.get_ref() {
                let ct: CycleType = s
                    .get_ref()
                    .parse()
                    .map_err(|e: CombError| cx.err(s.span(), e.to_string()))?;
                parsed.push(ct);
            }
            let n = match (&r.n, raw.cover.as_ref().and_then(|c| c.n.as_ref()), parsed.first()) {
                (Some(n), _, _) => *n.get_ref(),
                (None, Some(n), _) => *n.get_ref(),
                (None, None, Some(first)) => first.degree(),
                (None, None, None) => {
                    return Err(cx.err(r.branch.span(), "ramification needs at least two branches"))
                }
            };
            for (i, (ct, s)) in parsed.iter().zip(r.branch.get_ref()).enumerate() {
                if ct.degree() != n {
                    return Err(cx.err(
                        s.span(),
                        format!(
                            "branch {} ({:?}) has cycle lengths summing to {}, expected n = {n}",
                            i + 1,
                            s.get_ref(),
                            ct.degree()
                        ),
                    ));
                }
            }
            let ram = RamificationType::new(n, parsed)
                .map_err(|e| cx.err(r.branch.span(), e.to_string()))?;
            (Some(ram), Some(texts))
        }
    };

    let cover = match &raw.cover {
        None => None,
        Some(c) => {
            let p = cx.poly(&c.p, "p")?;
            let q = match &c.q {
                Some(q) => cx.poly(q, "q")?,
                None => vec![NFElement::from_integer(1)],
            };
            let cover = CoverSpec::new(field.clone(), p, q, None)
                .map_err(|e| cx.err(c.p.span(), e.to_string()))?;
            if let Some(n) = &c.n {
                if *n.get_ref() != cover.degree() {
                    return Err(cx.err(
                        n.span(),
                        format!("n = {} but max(deg p, deg q) = {}", n.get_ref(), cover.degree()),
                    ));
                }
            }
            let cover = match &ramification {
                Some(ram) => {
                    let at = raw.ramification.as_ref().expect("parsed above").branch.span();
                    cover
                        .with_ramification(ram.clone())
                        .map_err(|e| cx.err(at, e.to_string()))?
                }
                None => cover,
            };
            Some(cover)
        }
    };

    let prime = match &raw.prime {
        None => None,
        Some(pr) => {
            let ell = *pr.ell.get_ref();
            let residue = |s: &Spanned<Scalar>, name: &str| -> Result<BigInt, SpecError> {
                s.get_ref()
                    .rational()
                    .filter(|r| r.is_integer())
                    .map(|r| r.to_integer())
                    .ok_or_else(|| cx.err(s.span(), format!("{name} must be an integer")))
            };
            if ell == 0 {
                return Err(cx.err(pr.ell.span(), "ell must be positive"));
            }
            let r = match (&pr.r, &pr.alpha_plus_c) {
                (Some(_), Some(c)) => {
                    return Err(cx.err(c.span(), "give either r or alpha_plus_c, not both"))
                }
                (Some(r), None) => residue(r, "r")?
                    .mod_floor(&BigInt::from(ell))
                    .to_u64()
                    .expect("below ell"),
                (None, Some(c)) => residue_from_alpha_plus_c(ell, &residue(c, "alpha_plus_c")?),
                (None, None) if field.degree() == 1 => {
                    residue_from_alpha_plus_c(ell, &field.min_poly()[0])
                }
                (None, None) => {
                    return Err(cx.err(
                        pr.ell.span(),
                        "a prime over a field of degree > 1 needs r or alpha_plus_c",
                    ))
                }
            };
            Some(PrimeDecl { ell, r })
        }
    };

    let k = raw.task.as_ref().and_then(|t| t.k.as_ref()).map(|k| *k.get_ref());
    let lambda = match raw.task.as_ref().and_then(|t| t.lambda.as_ref()) {
        None => None,
        Some(l) => {
            if let Some(p) = &raw.prime {
                if p.ell.get_ref() != l.get_ref() {
                    return Err(cx.err(l.span(), "task.lambda disagrees with prime.ell"));
                }
            }
            Some(*l.get_ref())
        }
    };

    Ok(SpecFile {
        field,
        cover,
        prime,
        ramification,
        branch_texts,
        k,
        lambda,
        source_hash: sha256_hex(text.as_bytes()),
    })
}

/// Reads and parses a spec file.
pub fn load_spec(path: &Path) -> Result<SpecFile, SpecError> {
    let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_spec(&text)
}

impl SpecFile {
    pub fn prime_ideal(&self) -> Result<PrimeIdealSpec, SpecError> {
        let decl = self
            .prime
            .ok_or_else(|| SpecError::Missing("the spec has no [prime] section".into()))?;
        validate_prime(&self.field, decl.ell, decl.r).map_err(|e| SpecError::Missing(e.to_string()))
    }

    /// λ from the prime if declared, else from `task.lambda`.
    pub fn lambda(&self) -> Option<u64> {
        self.prime.map(|p| p.ell).or(self.lambda)
    }

    pub fn ramification(&self) -> Result<&RamificationType, SpecError> {
        self.ramification
            .as_ref()
            .ok_or_else(|| SpecError::Missing("the spec has no [ramification] section".into()))
    }

    /// `(p_𝔭, q_𝔭)` over the residue field.
    pub fn reduced_cover(&self) -> Result<(FPoly, FPoly), SpecError> {
        let cover = self
            .cover
            .as_ref()
            .ok_or_else(|| SpecError::Missing("the spec has no [cover] section".into()))?;
        let prime = self.prime_ideal()?;
        reduce_cover(cover, &prime).map_err(|e: NumFieldError| SpecError::Missing(e.to_string()))
    }

    /// Every check that applies to the sections present.
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let mut push = |severity, message: String| out.push(Diagnostic { severity, message });
        push(
            Severity::Info,
            format!("number field of degree {}", self.field.degree()),
        );
        let prime = match self.prime {
            None => None,
            Some(decl) => match validate_prime(&self.field, decl.ell, decl.r) {
                Ok(p) => {
                    push(
                        Severity::Info,
                        format!("prime ideal valid, residue field F_{}", p.ell()),
                    );
                    Some(p)
                }
                Err(e) => {
                    push(Severity::Error, format!("prime ({}, alpha - {}): {e}", decl.ell, decl.r));
                    None
                }
            },
        };
        if let Some(ram) = &self.ramification {
            push(
                Severity::Info,
                format!(
                    "ramification type of degree {} with {} branch points",
                    ram.degree(),
                    ram.branches().len()
                ),
            );
            if let Some(w) = ram.consistency_warning() {
                push(Severity::Warning, w);
            }
        }
        if let Some(cover) = &self.cover {
            push(Severity::Info, format!("cover of degree {}", cover.degree()));
            if let Some(p) = &prime {
                match reduce_cover(cover, p) {
                    Ok(_) => push(
                        Severity::Info,
                        "cover reduces with degree preserved and p, q coprime".into(),
                    ),
                    Err(e) => push(Severity::Error, format!("reduction: {e}")),
                }
            }
        }
        if let (Some(k), Some(ram)) = (self.k, &self.ramification) {
            if k == 0 || k >= ram.degree() {
                push(
                    Severity::Error,
                    format!("k = {k} outside 1..={}", ram.degree() - 1),
                );
            }
        }
        out
    }
}
