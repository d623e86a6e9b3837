//! Number fields K = ℚ(α), elements in the power basis, degree-1 prime
//! ideals (ℓ, α − r), and reduction of a cover p/q into 𝔽_ℓ[X].
//!
//! Irreducibility of the minimal polynomial and coprimality of p, q over K
//! are trusted inputs. After reduction the degrees of p and q and their
//! coprimality are rechecked; any failure means the prime is unsuitable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::modarith::{ArithError, FPoly, PrimeField};
use crate::permcomb::RamificationType;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumFieldError {
    #[error("minimal polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("prime check failed: {0}")]
    Primality(#[from] ArithError),
    #[error("m(r) is not divisible by {ell} for r = {r}; (ell, alpha - r) is not a prime ideal")]
    NotAPrimeIdeal { ell: u64, r: u64 },
    #[error("residue {r} must lie in [0, {ell})")]
    ResidueOutOfRange { ell: u64, r: u64 },
    #[error("element has {got} coordinates but the field has degree {degree}")]
    TooManyCoordinates { got: usize, degree: usize },
    #[error("bad reduction: {0}")]
    BadReduction(String),
    #[error("cover degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("declared degree {declared} differs from max(deg p, deg q) = {actual}")]
    DegreeMismatch { declared: usize, actual: usize },
}

/// K = ℚ(α) given by the monic integer minimal polynomial of α.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberFieldSpec {
    /// Ascending coefficients; the last one is 1.
    min_poly: Vec<BigInt>,
}

impl NumberFieldSpec {
    pub fn new(min_poly: Vec<BigInt>) -> Result<Self, NumFieldError> {
        if min_poly.len() < 2 || !min_poly.last().is_some_and(|c| c.is_one()) {
            return Err(NumFieldError::NotMonic);
        }
        Ok(Self { min_poly })
    }

    pub fn from_i64(min_poly: &[i64]) -> Result<Self, NumFieldError> {
        Self::new(min_poly.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// K = ℚ presented with the formal generator α = 0, i.e. m(α) = α.
    pub fn rationals() -> Self {
        Self {
            min_poly: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    /// m(r) mod ℓ.
    fn eval_mod(&self, r: u64, field: PrimeField) -> u64 {
        self.min_poly
            .iter()
            .rev()
            .fold(0, |acc, c| field.add(field.mul(acc, r), reduce_int(c, field)))
    }
}

fn reduce_int(c: &BigInt, field: PrimeField) -> u64 {
    c.mod_floor(&BigInt::from(field.modulus()))
        .to_u64()
        .expect("residue fits in u64")
}

/// An element of K in coordinates over the power basis 1, α, …, α^(d−1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NFElement {
    coords: Vec<BigRational>,
}

impl NFElement {
    /// Trailing zero coordinates are dropped; `BigRational` keeps each entry
    /// in lowest terms with a positive denominator.
    pub fn new(mut coords: Vec<BigRational>) -> Self {
        while coords.last().is_some_and(|c| c.is_zero()) {
            coords.pop();
        }
        Self { coords }
    }

    pub fn zero() -> Self {
        Self { coords: Vec::new() }
    }

    pub fn from_integer(v: i64) -> Self {
        Self::new(vec![BigRational::from_integer(v.into())])
    }

    pub fn from_rational(num: i64, den: i64) -> Self {
        Self::new(vec![BigRational::new(num.into(), den.into())])
    }

    /// The generator α.
    pub fn alpha() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coords.len().max(other.coords.len());
        let zero = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    self.coords.get(i).unwrap_or(&zero) + other.coords.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    /// Product in K, reduced by the minimal polynomial.
    pub fn mul(&self, other: &Self, field: &NumberFieldSpec) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut prod = vec![BigRational::zero(); self.coords.len() + other.coords.len() - 1];
        for (i, a) in self.coords.iter().enumerate() {
            for (j, b) in other.coords.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        let d = field.degree();
        // α^d = -(m_0 + ... + m_{d-1} α^{d-1})
        for top in (d..prod.len()).rev() {
            let c = std::mem::replace(&mut prod[top], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for (j, m) in field.min_poly[..d].iter().enumerate() {
                prod[top - d + j] -= &c * BigRational::from_integer(m.clone());
            }
        }
        prod.truncate(d);
        Self::new(prod)
    }

    fn check_degree(&self, field: &NumberFieldSpec) -> Result<(), NumFieldError> {
        if self.coords.len() > field.degree() {
            return Err(NumFieldError::TooManyCoordinates {
                got: self.coords.len(),
                degree: field.degree(),
            });
        }
        Ok(())
    }
}

/// A degree-1 prime ideal 𝔭 = (ℓ, α − r) with residue field 𝔽_ℓ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeIdealSpec {
    ell: u64,
    r: u64,
    field: PrimeField,
}

impl PrimeIdealSpec {
    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    /// The residue field 𝒪_K/𝔭 ≅ 𝔽_ℓ.
    pub fn residue_field(&self) -> PrimeField {
        self.field
    }
}

/// Checks that ℓ is prime and m(r) ≡ 0 (mod ℓ).
pub fn validate_prime(
    field: &NumberFieldSpec,
    ell: u64,
    r: u64,
) -> Result<PrimeIdealSpec, NumFieldError> {
    let residue = PrimeField::new(ell)?;
    if r >= ell {
        return Err(NumFieldError::ResidueOutOfRange { ell, r });
    }
    if field.eval_mod(r, residue) != 0 {
        return Err(NumFieldError::NotAPrimeIdeal { ell, r });
    }
    Ok(PrimeIdealSpec {
        ell,
        r,
        field: residue,
    })
}

/// Converts the generator form (ℓ, α + c) into the residue r = −c mod ℓ.
pub fn residue_from_alpha_plus_c(ell: u64, c: &BigInt) -> u64 {
    (-c).mod_floor(&BigInt::from(ell))
        .to_u64()
        .expect("residue below ell")
}

/// Σ coordᵢ·rⁱ mod ℓ, inverting denominators modulo ℓ.
pub fn reduce_element(e: &NFElement, spec: &PrimeIdealSpec) -> Result<u64, NumFieldError> {
    let f = spec.field;
    let mut acc = 0;
    let mut power = 1;
    for c in &e.coords {
        let num = reduce_int(c.numer(), f);
        let den = reduce_int(c.denom(), f);
        let den_inv = f.inv(den).map_err(|_| {
            NumFieldError::BadReduction(format!(
                "denominator {} is divisible by {}",
                c.denom(),
                spec.ell
            ))
        })?;
        acc = f.add(acc, f.mul(f.mul(num, den_inv), power));
        power = f.mul(power, spec.r);
    }
    Ok(acc)
}

/// A degree-n cover x ↦ p(x)/q(x) with coefficients in K.
#[derive(Clone, Debug)]
pub struct CoverSpec {
    field: NumberFieldSpec,
    p: Vec<NFElement>,
    q: Vec<NFElement>,
    n: usize,
    ramification: Option<RamificationType>,
}

impl CoverSpec {
    /// `p` and `q` are ascending in X. Their degrees must be well defined
    /// (nonzero leading coefficient) and `n = max(deg p, deg q) ≥ 2`.
    pub fn new(
        field: NumberFieldSpec,
        mut p: Vec<NFElement>,
        mut q: Vec<NFElement>,
        ramification: Option<RamificationType>,
    ) -> Result<Self, NumFieldError> {
        for e in p.iter().chain(q.iter()) {
            e.check_degree(&field)?;
        }
        while p.last().is_some_and(NFElement::is_zero) {
            p.pop();
        }
        while q.last().is_some_and(NFElement::is_zero) {
            q.pop();
        }
        if p.is_empty() || q.is_empty() {
            return Err(NumFieldError::BadReduction(
                "p and q must both be nonzero".into(),
            ));
        }
        let n = (p.len() - 1).max(q.len() - 1);
        if n < 2 {
            return Err(NumFieldError::DegreeTooSmall(n));
        }
        if let Some(ram) = &ramification {
            if ram.degree() != n {
                return Err(NumFieldError::DegreeMismatch {
                    declared: ram.degree(),
                    actual: n,
                });
            }
        }
        Ok(Self {
            field,
            p,
            q,
            n,
            ramification,
        })
    }

    /// Polynomial cover over ℚ with integer coefficients (ascending).
    pub fn over_rationals(p: &[i64], q: &[i64]) -> Result<Self, NumFieldError> {
        let conv = |v: &[i64]| v.iter().map(|&c| NFElement::from_integer(c)).collect();
        Self::new(NumberFieldSpec::rationals(), conv(p), conv(q), None)
    }

    pub fn with_ramification(mut self, ram: RamificationType) -> Result<Self, NumFieldError> {
        if ram.degree() != self.n {
            return Err(NumFieldError::DegreeMismatch {
                declared: ram.degree(),
                actual: self.n,
            });
        }
        self.ramification = Some(ram);
        Ok(self)
    }

    pub fn field(&self) -> &NumberFieldSpec {
        &self.field
    }

    pub fn p(&self) -> &[NFElement] {
        &self.p
    }

    pub fn q(&self) -> &[NFElement] {
        &self.q
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn ramification(&self) -> Option<&RamificationType> {
        self.ramification.as_ref()
    }
}

/// Reduces p and q modulo 𝔭, rejecting primes where a leading coefficient
/// vanishes or p_𝔭 and q_𝔭 acquire a common factor.
pub fn reduce_cover(
    cover: &CoverSpec,
    spec: &PrimeIdealSpec,
) -> Result<(FPoly, FPoly), NumFieldError> {
    let reduce_poly = |coeffs: &[NFElement], name: &str| -> Result<FPoly, NumFieldError> {
        let reduced = coeffs
            .iter()
            .map(|e| reduce_element(e, spec))
            .collect::<Result<Vec<_>, _>>()?;
        let poly = FPoly::new(spec.field, reduced);
        let expected = coeffs.len() - 1;
        if poly.degree() != Some(expected) {
            return Err(NumFieldError::BadReduction(format!(
                "leading coefficient of {name} vanishes modulo the prime (degree {expected} drops to {})",
                poly.degree().map_or("-inf".to_string(), |d| d.to_string())
            )));
        }
        Ok(poly)
    };
    let p = reduce_poly(&cover.p, "p")?;
    let q = reduce_poly(&cover.q, "q")?;
    let g = p.gcd(&q).expect("p nonzero");
    if !g.is_one() {
        return Err(NumFieldError::BadReduction(format!(
            "p and q share the factor {g} modulo the prime"
        )));
    }
    Ok((p, q))
}

/// Renders a rational coordinate as `a` or `a/b`.
pub fn format_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses `a` or `a/b` with integer a, b (b ≠ 0).
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((a, b)) => {
            let a = a.trim().parse::<BigInt>().ok()?;
            let b = b.trim().parse::<BigInt>().ok()?;
            if b.is_zero() {
                return None;
            }
            let r = BigRational::new(a, b);
            debug_assert!(r.denom().is_positive());
            Some(r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2_field() -> NumberFieldSpec {
        NumberFieldSpec::from_i64(&[-2, 0, 1]).unwrap()
    }

    #[test]
    fn rationals_prime() {
        let spec = validate_prime(&NumberFieldSpec::rationals(), 13, 0).unwrap();
        assert_eq!(spec.residue_field().modulus(), 13);
    }

    #[test]
    fn m23_prime_ideal() {
        let k = NumberFieldSpec::from_i64(&[8, -10, 9, 1, 1]).unwrap();
        let ell = 47_000_081;
        let r = residue_from_alpha_plus_c(ell, &BigInt::from(25_037_440));
        assert_eq!(r, ell - 25_037_440);
        validate_prime(&k, ell, r).unwrap();
        assert!(matches!(
            validate_prime(&k, ell, r + 1),
            Err(NumFieldError::NotAPrimeIdeal { .. })
        ));
    }

    #[test]
    fn co3_prime_ideal() {
        let k = NumberFieldSpec::from_i64(&[
            6, -24, 42, -46, 55, -86, 101, -73, 38, -20, 9, -2, 1,
        ])
        .unwrap();
        let ell = 7_000_000_001;
        let r = ell - 2_738_443_742;
        let spec = validate_prime(&k, ell, r).unwrap();
        assert_eq!(reduce_element(&NFElement::alpha(), &spec).unwrap(), r);
    }

    #[test]
    fn composite_ell_rejected() {
        assert!(matches!(
            validate_prime(&NumberFieldSpec::rationals(), 15, 0),
            Err(NumFieldError::Primality(ArithError::NotPrime(15)))
        ));
        assert!(matches!(
            validate_prime(&NumberFieldSpec::rationals(), 13, 13),
            Err(NumFieldError::ResidueOutOfRange { .. })
        ));
    }

    #[test]
    fn not_monic_rejected() {
        assert!(NumberFieldSpec::from_i64(&[1, 2]).is_err());
        assert!(NumberFieldSpec::from_i64(&[1]).is_err());
    }

    #[test]
    fn reduce_element_examples() {
        let k = sqrt2_field();
        let spec = validate_prime(&k, 7, 3).unwrap();
        assert_eq!(reduce_element(&NFElement::from_integer(1), &spec).unwrap(), 1);
        assert_eq!(reduce_element(&NFElement::alpha(), &spec).unwrap(), 3);

        let q13 = validate_prime(&NumberFieldSpec::rationals(), 13, 0).unwrap();
        assert_eq!(reduce_element(&NFElement::from_rational(1, 2), &q13).unwrap(), 7);
        assert!(matches!(
            reduce_element(&NFElement::from_rational(1, 26), &q13),
            Err(NumFieldError::BadReduction(_))
        ));
    }

    #[test]
    fn reduce_cover_examples() {
        let q13 = validate_prime(&NumberFieldSpec::rationals(), 13, 0).unwrap();
        let cover = CoverSpec::over_rationals(&[0, 0, 0, 1], &[1]).unwrap();
        let (p, q) = reduce_cover(&cover, &q13).unwrap();
        assert_eq!(p.coeffs(), &[0, 0, 0, 1]);
        assert_eq!(q.coeffs(), &[1]);

        let k = sqrt2_field();
        let spec = validate_prime(&k, 7, 3).unwrap();
        let half_alpha = NFElement::new(vec![BigRational::zero(), BigRational::new(1.into(), 2.into())]);
        let cover = CoverSpec::new(
            k.clone(),
            vec![NFElement::zero(), half_alpha, NFElement::from_integer(1)],
            vec![NFElement::from_integer(1)],
            None,
        )
        .unwrap();
        let (p, _) = reduce_cover(&cover, &spec).unwrap();
        assert_eq!(p.coeffs(), &[0, 5, 1]);

        // leading coefficient α - 3 vanishes at r = 3
        let collapse = NFElement::new(vec![BigRational::from_integer((-3).into()), BigRational::one()]);
        let cover = CoverSpec::new(
            k,
            vec![NFElement::from_integer(1), NFElement::zero(), collapse],
            vec![NFElement::from_integer(1)],
            None,
        )
        .unwrap();
        assert!(matches!(
            reduce_cover(&cover, &spec),
            Err(NumFieldError::BadReduction(_))
        ));
    }

    #[test]
    fn common_factor_after_reduction() {
        // p = X^2 - 8 and q = X - 1 are coprime over Q but share X - 1 mod 7
        let spec = validate_prime(&NumberFieldSpec::rationals(), 7, 0).unwrap();
        let cover = CoverSpec::over_rationals(&[-8, 0, 1], &[-1, 1]).unwrap();
        assert!(matches!(
            reduce_cover(&cover, &spec),
            Err(NumFieldError::BadReduction(_))
        ));
    }

    #[test]
    fn field_multiplication() {
        let k = sqrt2_field();
        let a = NFElement::alpha();
        assert_eq!(a.mul(&a, &k), NFElement::from_integer(2));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational(" -7 ").unwrap(), BigRational::from_integer((-7).into()));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
        assert_eq!(format_rational(&parse_rational("4/-6").unwrap()), "-2/3");
    }
}
