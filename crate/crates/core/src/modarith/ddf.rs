//! Frobenius powers and distinct-degree factor counts.

use super::poly::FPoly;
use super::quotient::QuotientRing;
use super::ArithError;

/// `X^(λ^i) mod f`, computed as `i` successive λ-th powers inside the
/// quotient ring.
pub fn frobenius_power(f: &FPoly, i: u32) -> Result<FPoly, ArithError> {
    if i == 0 {
        return Err(ArithError::ZeroFrobeniusPower);
    }
    let ring = QuotientRing::new(f)?;
    let mut h = ring.x();
    for _ in 0..i {
        h = ring.frobenius(&h);
    }
    Ok(h)
}

/// Counts `d_i`, the number of irreducible factors of degree exactly `i`, for
/// `i = 1..=k`, of a squarefree `f`.
///
/// Runs the cascade `p_i = gcd(X^(λ^i) − X, f/(p_1⋯p_{i−1}))`, shrinking the
/// modulus to the remaining cofactor before each Frobenius step. Once the
/// cofactor has degree below `2i` it must be irreducible (or trivial), which
/// ends the cascade without further powering.
pub fn distinct_degree_counts(f: &FPoly, k: usize) -> Result<Vec<u32>, ArithError> {
    let field = f.field();
    match f.degree() {
        Some(d) if d >= 1 => {}
        _ => return Err(ArithError::ConstantModulus),
    }
    if k == 0 {
        return Err(ArithError::ZeroFrobeniusPower);
    }
    let mut counts = vec![0u32; k];
    let mut rest = f.monic();
    let x = FPoly::x(field);
    // h ≡ X^(λ^(i-1)) modulo the current cofactor
    let mut h = x.clone();

    for i in 1..=k {
        let Some(deg) = rest.degree() else { break };
        if deg < i {
            break;
        }
        if deg < 2 * i {
            // every factor has degree ≥ i, so a cofactor this small is irreducible
            if deg <= k {
                counts[deg - 1] += 1;
            }
            break;
        }
        let ring = QuotientRing::new(&rest)?;
        h = ring.frobenius(&ring.reduce(&h));
        let p_i = h.sub(&ring.reduce(&x)).gcd(&rest)?;
        let dp = p_i.degree().expect("gcd with nonzero cofactor");
        if dp % i != 0 {
            return Err(ArithError::Inconsistent { degree: i, found: dp });
        }
        counts[i - 1] = (dp / i) as u32;
        if dp > 0 {
            rest = rest.div_exact(&p_i)?;
        }
    }
    Ok(counts)
}
