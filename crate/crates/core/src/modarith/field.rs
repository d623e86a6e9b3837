//! Prime fields 𝔽_λ with λ < 2⁶².
//!
//! Elements are plain `u64` residues in `[0, λ)`. Products go through a
//! `u128` intermediate, which is exact for any pair of reduced operands.

use std::fmt;

use super::ArithError;

/// Exclusive upper bound on supported moduli.
pub const MODULUS_LIMIT: u64 = 1 << 62;

/// Witness set that makes Miller–Rabin deterministic for every `n < 2⁶⁴`.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// The prime field 𝔽_λ.
///
/// Construction runs a deterministic primality check, so holding a
/// `PrimeField` is proof that the modulus is an odd prime below 2⁶².
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    modulus: u64,
}

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self, ArithError> {
        if modulus <= 2 || modulus >= MODULUS_LIMIT {
            return Err(ArithError::ModulusOutOfRange(modulus));
        }
        if !is_prime_u64(modulus) {
            return Err(ArithError::NotPrime(modulus));
        }
        Ok(Self { modulus })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Reduces an arbitrary unsigned integer into the field.
    #[inline]
    pub fn reduce(&self, v: u64) -> u64 {
        v % self.modulus
    }

    #[inline]
    pub fn reduce_u128(&self, v: u128) -> u64 {
        (v % self.modulus as u128) as u64
    }

    /// Reduces a signed integer into `[0, λ)`.
    #[inline]
    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.modulus as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        // a + b < 2⁶³, no overflow
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod_u64(a, b, self.modulus)
    }

    pub fn pow(&self, base: u64, exp: u64) -> u64 {
        pow_mod_u64(base, exp, self.modulus)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self, a: u64) -> Result<u64, ArithError> {
        let a = a % self.modulus;
        if a == 0 {
            return Err(ArithError::ZeroInverse);
        }
        let (mut r0, mut r1) = (self.modulus as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(t0.rem_euclid(self.modulus as i128) as u64)
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.modulus)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_inverse() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.inv(3).unwrap(), 5);
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = PrimeField::new(101).unwrap();
        assert!(matches!(f.inv(0), Err(ArithError::ZeroInverse)));
    }

    #[test]
    fn wide_product() {
        let l = 7_000_000_001;
        let f = PrimeField::new(l).unwrap();
        assert_eq!(f.mul(7_000_000_000, 7_000_000_000), 1);
        let top = MODULUS_LIMIT - 57; // largest prime below 2^62
        let g = PrimeField::new(top).unwrap();
        assert_eq!(g.mul(top - 1, top - 1), 1);
    }

    #[test]
    fn fermat() {
        let f = PrimeField::new(101).unwrap();
        assert_eq!(f.pow(2, 100), 1);
    }

    #[test]
    fn composite_rejected() {
        assert!(matches!(PrimeField::new(91), Err(ArithError::NotPrime(91))));
        // strong pseudoprime to bases 2..=37 except the full set
        assert!(PrimeField::new(3_825_123_056_546_413_051).is_err());
        assert!(matches!(
            PrimeField::new(2),
            Err(ArithError::ModulusOutOfRange(2))
        ));
        assert!(PrimeField::new(MODULUS_LIMIT + 1).is_err());
    }

    #[test]
    fn primality_matches_trial_division() {
        fn naive(n: u64) -> bool {
            n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
        }
        for n in 0..20_000u64 {
            assert_eq!(is_prime_u64(n), naive(n), "n = {n}");
        }
        // Carmichael numbers
        for n in [561u64, 1105, 1729, 2465, 2821, 6601, 8911, 41041, 825265] {
            assert!(!is_prime_u64(n));
        }
    }

    #[test]
    fn signed_reduction() {
        let f = PrimeField::new(13).unwrap();
        assert_eq!(f.from_i64(-1), 12);
        assert_eq!(f.from_i64(-27), 12);
        assert_eq!(f.sub(2, 5), 10);
        assert_eq!(f.neg(0), 0);
    }
}
