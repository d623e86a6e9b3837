//! Dense univariate polynomials over a [`PrimeField`].

use std::fmt;

use super::field::PrimeField;
use super::ArithError;

/// Number of `u128` product terms that can be summed on top of a reduced
/// residue without overflow when every operand is below 2⁶².
pub(crate) const LAZY_TERMS: usize = 15;

/// Dense polynomial with ascending coefficients in canonical form: the last
/// stored coefficient is nonzero, and the zero polynomial stores nothing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FPoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl FPoly {
    /// Builds a polynomial from ascending coefficients, reducing each one and
    /// stripping trailing zeros.
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c = field.reduce(*c);
        }
        Self::from_reduced(field, coeffs)
    }

    pub(crate) fn from_reduced(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn from_i64(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::from_reduced(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `c·Xᵉ`.
    pub fn monomial(field: PrimeField, c: u64, e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c;
        Self::new(field, coeffs)
    }

    pub fn x(field: PrimeField) -> Self {
        Self::monomial(field, 1, 1)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(field: PrimeField, roots: &[u64]) -> Self {
        roots.iter().fold(Self::one(field), |acc, &r| {
            acc.mul(&Self::new(field, vec![field.neg(field.reduce(r)), 1]))
        })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Coefficient of `Xⁱ`, zero past the degree.
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        let x = f.reduce(x);
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_field(other);
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Self::from_reduced(f, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_field(other);
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Self::from_reduced(f, coeffs)
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        let c = f.reduce(c);
        Self::from_reduced(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_field(other);
        Self::from_reduced(self.field, convolve(self.field, &self.coeffs, &other.coeffs))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.reduce(i as u64)))
            .collect();
        Self::from_reduced(f, coeffs)
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(self.field.inv(lc).expect("nonzero leading coefficient")),
        }
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), ArithError> {
        self.check_field(divisor);
        let f = self.field;
        let dd = divisor.degree().ok_or(ArithError::DivisionByZero)?;
        let lc_inv = f.inv(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = f.mul(c, lc_inv);
            quot[i - dd] = q;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.sub(rem[idx], f.mul(q, dc));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_reduced(f, quot), Self::from_reduced(f, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, ArithError> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Exact quotient; errors if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, ArithError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(ArithError::NotDivisible)
        }
    }

    /// `a·b mod f`, requiring `deg f ≥ 1`.
    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Result<Self, ArithError> {
        match modulus.degree() {
            Some(d) if d >= 1 => {}
            _ => return Err(ArithError::ConstantModulus),
        }
        self.mul(other).rem(modulus)
    }

    /// Monic greatest common divisor. `gcd(0, 0)` is an error.
    pub fn gcd(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_field(other);
        if self.is_zero() && other.is_zero() {
            return Err(ArithError::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// True when `gcd(f, f′) = 1`.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self
                .gcd(&self.derivative())
                .map(|g| g.is_one())
                .unwrap_or(false),
        }
    }
}

/// Schoolbook product of two reduced coefficient slices with lazy reduction.
pub(crate) fn convolve(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p = f.modulus() as u128;
    let n = a.len() + b.len() - 1;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let lo = i.saturating_sub(b.len() - 1);
        let hi = i.min(a.len() - 1);
        let mut acc: u128 = 0;
        let mut pending = 0;
        for j in lo..=hi {
            acc += a[j] as u128 * b[i - j] as u128;
            pending += 1;
            if pending == LAZY_TERMS {
                acc %= p;
                pending = 0;
            }
        }
        out.push((acc % p) as u64);
    }
    out
}

/// Squares a reduced coefficient slice, summing each cross term once.
pub(crate) fn square(f: PrimeField, a: &[u64]) -> Vec<u64> {
    if a.is_empty() {
        return Vec::new();
    }
    let p = f.modulus() as u128;
    let n = 2 * a.len() - 1;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let lo = i.saturating_sub(a.len() - 1);
        let hi = i.min(a.len() - 1);
        let mut cross: u128 = 0;
        let mut pending = 0;
        let mut j = lo;
        while j < i - j {
            cross += a[j] as u128 * a[i - j] as u128;
            pending += 1;
            if pending == LAZY_TERMS {
                cross %= p;
                pending = 0;
            }
            j += 1;
        }
        let cross = (cross % p) as u64;
        let mut v = f.add(cross, cross);
        if i % 2 == 0 && i / 2 <= hi {
            let m = a[i / 2];
            v = f.add(v, f.mul(m, m));
        }
        out.push(v);
    }
    out
}

impl fmt::Debug for FPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field)
    }
}

impl fmt::Display for FPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, c) => write!(f, "{c}*X")?,
                (i, 1) => write!(f, "X^{i}")?,
                (i, c) => write!(f, "{c}*X^{i}")?,
            }
        }
        Ok(())
    }
}
