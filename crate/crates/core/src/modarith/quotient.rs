//! Arithmetic in 𝔽_λ[X]/(f) with a precomputed reduction table.

use super::field::PrimeField;
use super::poly::{convolve, square, FPoly, LAZY_TERMS};
use super::ArithError;

/// The quotient ring 𝔽_λ[X]/(f) for a monic `f` of degree `d ≥ 1`.
///
/// Reduction of a product of two residues (degree ≤ 2d−2) uses the table
/// `Xᵈ⁺ʲ mod f` for `j < d−1`, so each reduction is a single lazy
/// matrix-vector accumulation rather than a long division.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    field: PrimeField,
    modulus: FPoly,
    degree: usize,
    /// `table[j]` holds the `d` coefficients of `X^(d+j) mod f`.
    table: Vec<Vec<u64>>,
}

impl QuotientRing {
    /// Builds the ring for `f`, normalized to be monic.
    pub fn new(f: &FPoly) -> Result<Self, ArithError> {
        let d = match f.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(ArithError::ConstantModulus),
        };
        let field = f.field();
        let modulus = f.monic();
        let m = modulus.coeffs();
        // X^d ≡ -(m_0 + m_1 X + ... + m_{d-1} X^{d-1})
        let mut row: Vec<u64> = m[..d].iter().map(|&c| field.neg(c)).collect();
        let mut table = Vec::with_capacity(d.saturating_sub(1));
        for _ in 0..d.saturating_sub(1) {
            let next = shift_reduce(field, &row, m);
            table.push(std::mem::replace(&mut row, next));
        }
        Ok(Self {
            field,
            modulus,
            degree: d,
            table,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// The monic modulus.
    pub fn modulus(&self) -> &FPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Brings an arbitrary polynomial into the ring.
    pub fn reduce(&self, a: &FPoly) -> FPoly {
        if a.degree().map_or(true, |da| da < self.degree) {
            return a.clone();
        }
        a.rem(&self.modulus).expect("nonzero modulus")
    }

    /// The class of `X`.
    pub fn x(&self) -> FPoly {
        self.reduce(&FPoly::x(self.field))
    }

    pub fn mul(&self, a: &FPoly, b: &FPoly) -> FPoly {
        debug_assert!(self.is_reduced(a) && self.is_reduced(b));
        self.fold(convolve(self.field, a.coeffs(), b.coeffs()))
    }

    pub fn square(&self, a: &FPoly) -> FPoly {
        debug_assert!(self.is_reduced(a));
        self.fold(square(self.field, a.coeffs()))
    }

    /// Multiplication by `X`: one shift and at most one table-free step.
    pub fn mul_x(&self, a: &FPoly) -> FPoly {
        debug_assert!(self.is_reduced(a));
        if a.is_zero() {
            return a.clone();
        }
        let mut c = Vec::with_capacity(self.degree);
        if a.coeffs().len() < self.degree {
            c.push(0);
            c.extend_from_slice(a.coeffs());
            return FPoly::from_reduced(self.field, c);
        }
        FPoly::from_reduced(
            self.field,
            shift_reduce(self.field, a.coeffs(), self.modulus.coeffs()),
        )
    }

    /// `aᵉ` by left-to-right square-and-multiply.
    pub fn pow(&self, a: &FPoly, exp: u64) -> FPoly {
        let a = self.reduce(a);
        let mut acc = self.reduce(&FPoly::one(self.field));
        if exp == 0 {
            return acc;
        }
        let is_x = a.coeffs() == [0, 1];
        for bit in (0..64 - exp.leading_zeros()).rev() {
            acc = self.square(&acc);
            if (exp >> bit) & 1 == 1 {
                acc = if is_x { self.mul_x(&acc) } else { self.mul(&acc, &a) };
            }
        }
        acc
    }

    /// The Frobenius map `a ↦ a^λ`.
    pub fn frobenius(&self, a: &FPoly) -> FPoly {
        self.pow(a, self.field.modulus())
    }

    fn is_reduced(&self, a: &FPoly) -> bool {
        a.field() == self.field && a.degree().map_or(true, |da| da < self.degree)
    }

    /// Reduces a coefficient vector of length ≤ 2d−1.
    fn fold(&self, mut prod: Vec<u64>) -> FPoly {
        let d = self.degree;
        if prod.len() <= d {
            return FPoly::from_reduced(self.field, prod);
        }
        let p = self.field.modulus() as u128;
        let mut acc: Vec<u128> = prod[..d].iter().map(|&c| c as u128).collect();
        let mut pending = 0;
        for (j, &hi) in prod[d..].iter().enumerate() {
            if hi == 0 {
                continue;
            }
            let hi = hi as u128;
            for (slot, &t) in acc.iter_mut().zip(&self.table[j]) {
                *slot += hi * t as u128;
            }
            pending += 1;
            if pending == LAZY_TERMS {
                for slot in acc.iter_mut() {
                    *slot %= p;
                }
                pending = 0;
            }
        }
        prod.truncate(d);
        for (out, slot) in prod.iter_mut().zip(acc) {
            *out = (slot % p) as u64;
        }
        FPoly::from_reduced(self.field, prod)
    }
}

/// `X·r mod m` for a residue `r` given as exactly `d` coefficients (padded)
/// and monic `m` of degree `d`.
fn shift_reduce(field: PrimeField, r: &[u64], m: &[u64]) -> Vec<u64> {
    let d = m.len() - 1;
    let top = if r.len() == d { r[d - 1] } else { 0 };
    let mut out = Vec::with_capacity(d);
    out.push(field.neg(field.mul(top, m[0])));
    for i in 1..d {
        let prev = r.get(i - 1).copied().unwrap_or(0);
        out.push(field.sub(prev, field.mul(top, m[i])));
    }
    out
}
