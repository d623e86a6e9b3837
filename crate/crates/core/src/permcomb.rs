//! Cycle-type combinatorics for the action of a permutation on k-subsets.
//!
//! Everything here works from cycle types alone. The number of invariant
//! k-subsets of `s` is the coefficient of `x^k` in `∏_c (1 + x^len(c))`, and
//! the number of cycles of the induced permutation on k-subsets is the
//! number of `⟨s⟩`-orbits, obtained from Burnside's lemma over the powers of
//! `s`. Powers `s^j` with the same `gcd(j, ord s)` share a cycle type, so the
//! Burnside sum runs over divisors of the order weighted by Euler's φ.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombError {
    #[error("cycle type {text:?}: syntax error at byte {pos}: {msg}")]
    Syntax {
        text: String,
        pos: usize,
        msg: &'static str,
    },
    #[error("cycle type {text:?} has degree {got}, expected {expected}")]
    DegreeMismatch {
        text: String,
        expected: usize,
        got: usize,
    },
    #[error("cycle length {0} appears more than once")]
    RepeatedLength(usize),
    #[error("cycle lengths and multiplicities must be positive")]
    ZeroPart,
    #[error("k = {k} outside the allowed range {lo}..={hi}")]
    KOutOfRange { k: usize, lo: usize, hi: usize },
    #[error("permutation order overflows 128 bits")]
    OrderOverflow,
    #[error("a ramification type needs at least two branch cycle types, got {0}")]
    TooFewBranches(usize),
    #[error("branch {index} ({text}) has degree {got}, expected {expected}")]
    BranchDegree {
        index: usize,
        text: String,
        expected: usize,
        got: usize,
    },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Cycle type of a permutation of `n` points: distinct cycle lengths with
/// positive multiplicities.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycleType {
    /// length → multiplicity
    parts: BTreeMap<usize, usize>,
    n: usize,
}

impl CycleType {
    /// Builds a cycle type from `(length, multiplicity)` pairs.
    pub fn new(parts: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, CombError> {
        let mut map = BTreeMap::new();
        let mut n = 0usize;
        for (len, mult) in parts {
            if len == 0 || mult == 0 {
                return Err(CombError::ZeroPart);
            }
            if map.insert(len, mult).is_some() {
                return Err(CombError::RepeatedLength(len));
            }
            n += len * mult;
        }
        Ok(Self { parts: map, n })
    }

    pub fn identity(n: usize) -> Self {
        let parts = if n == 0 { BTreeMap::new() } else { BTreeMap::from([(1, n)]) };
        Self { parts, n }
    }

    /// Parses the notation `4^4.2^2.1^3` and checks the degree against `n`.
    pub fn parse(text: &str, n: usize) -> Result<Self, CombError> {
        let ct: Self = text.parse()?;
        if ct.n != n {
            return Err(CombError::DegreeMismatch {
                text: text.to_string(),
                expected: n,
                got: ct.n,
            });
        }
        Ok(ct)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// `(length, multiplicity)` pairs in increasing length.
    pub fn parts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().map(|(&l, &m)| (l, m))
    }

    pub fn num_cycles(&self) -> usize {
        self.parts.values().sum()
    }

    pub fn multiplicity(&self, len: usize) -> usize {
        self.parts.get(&len).copied().unwrap_or(0)
    }

    /// Order of the permutation: lcm of the cycle lengths.
    pub fn order(&self) -> Result<u128, CombError> {
        self.parts.keys().try_fold(1u128, |acc, &l| {
            let l = l as u128;
            (acc / acc.gcd(&l)).checked_mul(l).ok_or(CombError::OrderOverflow)
        })
    }

    /// Cycle type of `s^j`: a c-cycle splits into `gcd(c, j)` cycles of
    /// length `c / gcd(c, j)`.
    pub fn power(&self, j: u128) -> Self {
        let mut out: BTreeMap<usize, usize> = BTreeMap::new();
        for (&c, &m) in &self.parts {
            let g = if j == 0 { c } else { (c as u128).gcd(&j) as usize };
            *out.entry(c / g).or_default() += g * m;
        }
        Self { parts: out, n: self.n }
    }
}

impl FromStr for CycleType {
    type Err = CombError;

    /// Grammar: `part ("." part)*`, `part = length ["^" multiplicity]`; the
    /// multiplicity may be wrapped in braces as in `2^{132}`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let syntax = |pos: usize, msg: &'static str| CombError::Syntax {
            text: text.to_string(),
            pos,
            msg,
        };
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let number = |pos: &mut usize| -> Option<usize> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            text[start..*pos].parse().ok()
        };
        let mut parts = Vec::new();
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(syntax(pos, "empty cycle type"));
        }
        loop {
            skip_ws(&mut pos);
            let len = number(&mut pos).ok_or_else(|| syntax(pos, "expected cycle length"))?;
            skip_ws(&mut pos);
            let mut mult = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                skip_ws(&mut pos);
                let braced = pos < bytes.len() && bytes[pos] == b'{';
                if braced {
                    pos += 1;
                }
                mult = number(&mut pos).ok_or_else(|| syntax(pos, "expected multiplicity"))?;
                if braced {
                    if pos < bytes.len() && bytes[pos] == b'}' {
                        pos += 1;
                    } else {
                        return Err(syntax(pos, "expected '}'"));
                    }
                }
                skip_ws(&mut pos);
            }
            parts.push((len, mult));
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'.' {
                return Err(syntax(pos, "expected '.' or end of input"));
            }
            pos += 1;
        }
        Self::new(parts)
    }
}

impl fmt::Display for CycleType {
    /// Writes lengths in decreasing order, omitting `^1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (&l, &m)) in self.parts.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            if m == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}^{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleType({self})")
    }
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Coefficient of `x^k` in `∏ (1 + x^len)^mult` over the given parts.
pub fn subset_count_from_parts(
    parts: impl IntoIterator<Item = (usize, usize)>,
    k: usize,
) -> BigUint {
    let mut poly = vec![BigUint::zero(); k + 1];
    poly[0] = BigUint::one();
    for (len, mult) in parts {
        if len == 0 || mult == 0 || len > k {
            continue;
        }
        let mut next = vec![BigUint::zero(); k + 1];
        for (deg, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut binom = BigUint::one();
            let mut j = 0;
            while j <= mult && deg + j * len <= k {
                next[deg + j * len] += c * &binom;
                binom = binom * BigUint::from(mult - j) / BigUint::from(j + 1);
                j += 1;
            }
        }
        poly = next;
    }
    poly.swap_remove(k)
}

/// π_k(s): number of k-subsets invariant under a permutation of type `ct`.
pub fn pi_k(ct: &CycleType, k: usize) -> Result<BigUint, CombError> {
    if k > ct.n {
        return Err(CombError::KOutOfRange { k, lo: 0, hi: ct.n });
    }
    Ok(subset_count_from_parts(ct.parts(), k))
}

fn check_proper_k(ct: &CycleType, k: usize) -> Result<(), CombError> {
    if k == 0 || k >= ct.n {
        return Err(CombError::KOutOfRange {
            k,
            lo: 1,
            hi: ct.n.saturating_sub(1),
        });
    }
    Ok(())
}

/// Prime factorization of the order as `(prime, exponent)` pairs.
fn order_factorization(ct: &CycleType) -> Vec<(u128, u32)> {
    let mut exps: BTreeMap<u128, u32> = BTreeMap::new();
    for &len in ct.parts.keys() {
        let mut m = len as u128;
        let mut p = 2u128;
        while p * p <= m {
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                let slot = exps.entry(p).or_default();
                *slot = (*slot).max(e);
            }
            p += 1;
        }
        if m > 1 {
            let slot = exps.entry(m).or_default();
            *slot = (*slot).max(1);
        }
    }
    exps.into_iter().collect()
}

/// Number of cycles of the permutation induced on k-subsets.
///
/// Counts `⟨s⟩`-orbits as `(1/ord) Σ_j π_k(s^j)`, grouping the exponents `j`
/// by `e = gcd(j, ord)`: there are `φ(ord/e)` of them and all give the
/// cycle type of `s^e`.
pub fn induced_cycle_count(ct: &CycleType, k: usize) -> Result<BigUint, CombError> {
    check_proper_k(ct, k)?;
    let order = ct.order()?;
    let factors = order_factorization(ct);
    let mut total = BigUint::zero();
    let mut exps = vec![0u32; factors.len()];
    loop {
        // divisor e = ∏ p^a, cofactor ord/e = ∏ p^(A-a)
        let mut e = 1u128;
        let mut phi = 1u128;
        for (&(p, big_a), &a) in factors.iter().zip(&exps) {
            e *= p.pow(a);
            let b = big_a - a;
            if b > 0 {
                phi *= p.pow(b - 1) * (p - 1);
            }
        }
        total += pi_k(&ct.power(e), k)? * BigUint::from(phi);

        let mut idx = 0;
        loop {
            if idx == factors.len() {
                let (q, r) = total.div_rem(&BigUint::from(order));
                if !r.is_zero() {
                    return Err(CombError::Internal(format!(
                        "Burnside sum for {ct} at k = {k} is not divisible by the order {order}"
                    )));
                }
                return Ok(q);
            }
            if exps[idx] < factors[idx].1 {
                exps[idx] += 1;
                break;
            }
            exps[idx] = 0;
            idx += 1;
        }
    }
}

/// ind(σ) = C(n,k) − (number of cycles of σ on k-subsets).
pub fn induced_index(ct: &CycleType, k: usize) -> Result<BigUint, CombError> {
    let cycles = induced_cycle_count(ct, k)?;
    Ok(binomial(ct.n, k) - cycles)
}

/// The upper bound `(C(n,k) − π_k(s))·(1 − 1/ord(s))` on ind(σ), exact when
/// the order of `s` is prime.
pub fn index_upper_bound(ct: &CycleType, k: usize) -> Result<BigRational, CombError> {
    check_proper_k(ct, k)?;
    let order = BigInt::from(ct.order()?);
    let moved = BigInt::from(binomial(ct.n, k) - pi_k(ct, k)?);
    Ok(BigRational::new(moved * (&order - 1), order))
}

/// Branch cycle types `(s_1, …, s_m)` of a degree-n cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationType {
    n: usize,
    branches: Vec<CycleType>,
}

impl RamificationType {
    pub fn new(n: usize, branches: Vec<CycleType>) -> Result<Self, CombError> {
        if branches.len() < 2 {
            return Err(CombError::TooFewBranches(branches.len()));
        }
        for (index, b) in branches.iter().enumerate() {
            if b.n != n {
                return Err(CombError::BranchDegree {
                    index,
                    text: b.to_string(),
                    expected: n,
                    got: b.n,
                });
            }
        }
        Ok(Self { n, branches })
    }

    /// Parses each branch with [`CycleType::parse`]; errors name the branch.
    pub fn parse<S: AsRef<str>>(n: usize, texts: &[S]) -> Result<Self, CombError> {
        let branches = texts
            .iter()
            .enumerate()
            .map(|(index, t)| {
                let ct: CycleType = t.as_ref().parse()?;
                if ct.n != n {
                    return Err(CombError::BranchDegree {
                        index,
                        text: t.as_ref().to_string(),
                        expected: n,
                        got: ct.n,
                    });
                }
                Ok(ct)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, branches)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn branches(&self) -> &[CycleType] {
        &self.branches
    }

    /// Genus of the cover itself, `1 − n + ½ Σ (n − #cycles(s_i))`, as a
    /// rational (it is a nonnegative integer for a consistent type).
    pub fn base_genus(&self) -> BigRational {
        let ind: usize = self.branches.iter().map(|b| self.n - b.num_cycles()).sum();
        BigRational::new(
            BigInt::from(2) - BigInt::from(2 * self.n) + BigInt::from(ind),
            BigInt::from(2),
        )
    }

    /// Warning text when the Riemann–Hurwitz genus of the cover itself is
    /// negative or non-integral.
    pub fn consistency_warning(&self) -> Option<String> {
        let g = self.base_genus();
        if !g.is_integer() || g.is_negative() {
            Some(format!(
                "ramification type gives genus {} for the cover itself; expected a nonnegative integer",
                crate::numfield::format_rational(&g)
            ))
        } else {
            None
        }
    }
}

impl fmt::Display for RamificationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.branches.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenusMode {
    /// Exact induced indices via orbit counting.
    Exact,
    /// The per-branch upper bound on the index; yields an upper estimate of g.
    Bound,
}

impl GenusMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            GenusMode::Exact => "exact",
            GenusMode::Bound => "bound",
        }
    }
}

impl FromStr for GenusMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(GenusMode::Exact),
            "bound" => Ok(GenusMode::Bound),
            other => Err(format!("unknown genus mode {other:?} (expected exact or bound)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchIndex {
    pub cycle_type: CycleType,
    pub order: u128,
    pub pi_k: BigUint,
    /// Exact index, or its upper bound in [`GenusMode::Bound`].
    pub index: BigRational,
}

/// Riemann–Hurwitz genus of the k-subset cover C_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusReport {
    pub mode: GenusMode,
    pub n: usize,
    pub k: usize,
    /// deg(C_k → ℙ¹) = C(n, k)
    pub cover_degree: BigUint,
    pub branches: Vec<BranchIndex>,
    /// Exact genus, or an upper estimate in bound mode.
    pub genus: BigRational,
    /// The genus estimate is negative, which refutes k-transitivity outright.
    pub contradiction: bool,
    /// The genus used downstream was clamped to be nonnegative.
    pub nonnegative_override: bool,
}

impl GenusReport {
    /// Integer genus fed into the Hasse–Weil bound: the ceiling of the
    /// estimate, since rounding down would understate the bound. Clamped at
    /// zero when [`Self::nonnegative_override`] is set.
    pub fn genus_for_bound(&self) -> BigInt {
        let g = self.genus.ceil().to_integer();
        if self.nonnegative_override && g.is_negative() {
            BigInt::zero()
        } else {
            g
        }
    }

    /// Replaces a negative genus by zero and clears the contradiction flag.
    /// Only meaningful for exercising the point-count path on covers whose
    /// k-subset curve is reducible.
    pub fn with_nonnegative_override(mut self) -> Self {
        self.nonnegative_override = true;
        self.contradiction = false;
        self
    }
}

/// g(C_k) = 1 − C(n,k) + ½ Σ ind(σ_i).
pub fn genus_ck(ram: &RamificationType, k: usize, mode: GenusMode) -> Result<GenusReport, CombError> {
    let n = ram.n;
    if k == 0 || k >= n {
        return Err(CombError::KOutOfRange {
            k,
            lo: 1,
            hi: n.saturating_sub(1),
        });
    }
    let cover_degree = binomial(n, k);
    let mut branches = Vec::with_capacity(ram.branches.len());
    let mut sum = BigRational::zero();
    for ct in &ram.branches {
        let index = match mode {
            GenusMode::Exact => BigRational::from_integer(BigInt::from(induced_index(ct, k)?)),
            GenusMode::Bound => index_upper_bound(ct, k)?,
        };
        sum += &index;
        branches.push(BranchIndex {
            cycle_type: ct.clone(),
            order: ct.order()?,
            pi_k: pi_k(ct, k)?,
            index,
        });
    }
    if mode == GenusMode::Exact && !(sum.to_integer().is_even() && sum.is_integer()) {
        return Err(CombError::Internal(format!(
            "sum of induced indices {sum} is odd"
        )));
    }
    let genus = BigRational::one() - BigRational::from_integer(BigInt::from(cover_degree.clone()))
        + sum / BigRational::from_integer(BigInt::from(2));
    let contradiction = genus.is_negative();
    Ok(GenusReport {
        mode,
        n,
        k,
        cover_degree,
        branches,
        genus,
        contradiction,
        nonnegative_override: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn parse_examples() {
        let a = CycleType::parse("3^92", 276).unwrap();
        assert_eq!(a.parts().collect::<Vec<_>>(), vec![(3, 92)]);
        assert_eq!(CycleType::parse("23^1", 23).unwrap().multiplicity(23), 1);
        assert!(matches!(
            CycleType::parse("2^6.1^15", 28),
            Err(CombError::DegreeMismatch { got: 27, .. })
        ));
        assert!(matches!("2^3.2".parse::<CycleType>(), Err(CombError::RepeatedLength(2))));
        assert!(matches!("2^".parse::<CycleType>(), Err(CombError::Syntax { .. })));
        assert!(matches!("".parse::<CycleType>(), Err(CombError::Syntax { .. })));
        assert!(matches!("2^3,1".parse::<CycleType>(), Err(CombError::Syntax { .. })));
        assert!(matches!("0^3".parse::<CycleType>(), Err(CombError::ZeroPart)));
        assert_eq!(ct("2^{132}.1^{12}"), ct("2^132.1^12"));
        assert_eq!(ct("1^3.4^4.2^2").to_string(), "4^4.2^2.1^3");
        assert_eq!(ct("7").to_string(), "7");
    }

    #[test]
    fn pi_k_examples() {
        for k in 0..=9 {
            assert_eq!(pi_k(&CycleType::identity(9), k).unwrap(), binomial(9, k));
        }
        let cyc = ct("11");
        for k in 1..11 {
            assert_eq!(pi_k(&cyc, k).unwrap(), big(0));
        }
        assert_eq!(pi_k(&ct("2^2.1^3"), 3).unwrap(), big(7));
        assert_eq!(pi_k(&ct("2^132.1^12"), 3).unwrap(), big(1804));
        assert!(pi_k(&cyc, 12).is_err());
    }

    #[test]
    fn power_examples() {
        assert_eq!(ct("4^4.2^2.1^3").power(2), ct("2^8.1^7"));
        assert_eq!(ct("4^4.2^2.1^3").power(0), CycleType::identity(23));
        for j in 1..23 {
            assert_eq!(ct("23").power(j), ct("23"));
        }
        assert_eq!(ct("6.3").power(3), ct("2^3.1^3"));
    }

    #[test]
    fn induced_cycle_examples() {
        assert_eq!(induced_cycle_count(&ct("23"), 5).unwrap(), big(1463));
        assert_eq!(induced_cycle_count(&CycleType::identity(10), 4).unwrap(), binomial(10, 4));
        assert_eq!(induced_cycle_count(&ct("4^7.2.1^6"), 3).unwrap(), big(1840));
        assert!(induced_cycle_count(&ct("23"), 0).is_err());
        assert!(induced_cycle_count(&ct("23"), 23).is_err());
    }

    #[test]
    fn index_examples() {
        assert_eq!(induced_index(&ct("23"), 5).unwrap(), big(32_186));
        assert_eq!(induced_index(&ct("2^8.1^7"), 5).unwrap(), big(16_576));
        assert_eq!(induced_index(&CycleType::identity(8), 3).unwrap(), big(0));
        assert_eq!(induced_index(&ct("4^4.2^2.1^3"), 5).unwrap(), big(25_104));
    }

    #[test]
    fn index_bound_examples() {
        let r = |v: i64| BigRational::from_integer(v.into());
        assert_eq!(index_upper_bound(&ct("7^4"), 3).unwrap(), r(2808));
        assert_eq!(induced_index(&ct("7^4"), 3).unwrap(), big(2808));
        assert_eq!(index_upper_bound(&ct("4^4.2^2.1^3"), 5).unwrap(), r(25_224));
        assert_eq!(index_upper_bound(&CycleType::identity(6), 2).unwrap(), r(0));
    }

    fn ram(n: usize, branches: &[&str]) -> RamificationType {
        RamificationType::parse(n, branches).unwrap()
    }

    #[test]
    fn genus_m23() {
        let r = ram(23, &["4^4.2^2.1^3", "2^8.1^7", "23^1"]);
        let rep = genus_ck(&r, 5, GenusMode::Exact).unwrap();
        assert_eq!(rep.genus, BigRational::from_integer(3285.into()));
        assert!(!rep.contradiction);
        assert!(r.consistency_warning().is_none());
    }

    #[test]
    fn genus_cyclic_negative() {
        let r = ram(5, &["5", "5"]);
        let rep = genus_ck(&r, 2, GenusMode::Exact).unwrap();
        assert_eq!(rep.genus, BigRational::from_integer((-1).into()));
        assert!(rep.contradiction);
        assert_eq!(rep.genus_for_bound(), BigInt::from(-1));
        let forced = rep.with_nonnegative_override();
        assert!(!forced.contradiction);
        assert_eq!(forced.genus_for_bound(), BigInt::zero());
    }

    #[test]
    fn genus_bound_ceiling() {
        // deg-36 branch 4^7.2.1^6 has a fractional index bound
        let r = ram(36, &["3^12", "2^12.1^12", "2^12.1^12", "4^7.2.1^6"]);
        let exact = genus_ck(&r, 3, GenusMode::Exact).unwrap();
        let bound = genus_ck(&r, 3, GenusMode::Bound).unwrap();
        assert_eq!(exact.genus_for_bound(), BigInt::from(1275));
        assert!(bound.genus > exact.genus);
        assert!(!bound.genus.is_integer());
        assert_eq!(bound.genus_for_bound(), bound.genus.ceil().to_integer());
    }

    #[test]
    fn ramification_validation() {
        assert!(matches!(
            RamificationType::parse(5, &["5"]),
            Err(CombError::TooFewBranches(1))
        ));
        assert!(matches!(
            RamificationType::parse(5, &["5", "2^2"]),
            Err(CombError::BranchDegree { index: 1, .. })
        ));
        let bad = ram(4, &["2.1^2", "2.1^2"]);
        assert!(bad.consistency_warning().is_some());
        assert!(genus_ck(&bad, 4, GenusMode::Exact).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(23, 5), big(33_649));
        assert_eq!(binomial(276, 3), big(3_466_100));
        assert_eq!(binomial(3, 5), big(0));
    }
}
