//! Reference implementations shared by the oracle suites. Everything here is
//! written directly on `Vec<u64>` coefficient lists and does not call into
//! the library's polynomial code.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// Polynomials are ascending coefficient lists with no trailing zeros.
pub type Poly = Vec<u64>;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    assert!(a % p != 0);
    powmod(a, p - 2, p)
}

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn deg(a: &Poly) -> Option<usize> {
    a.len().checked_sub(1)
}

fn sub(a: &Poly, b: &Poly, p: u64) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    trim(out)
}

fn mul(a: &Poly, b: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn rem(a: &Poly, m: &Poly, p: u64) -> Poly {
    let mut r = a.clone();
    let dm = m.len() - 1;
    let li = inv(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = mulmod(r[top], li, p);
        for j in 0..=dm {
            let idx = top - dm + j;
            r[idx] = (r[idx] + p - mulmod(c, m[j], p)) % p;
        }
        r = trim(r);
    }
    r
}

fn div(a: &Poly, m: &Poly, p: u64) -> Poly {
    let mut r = a.clone();
    let dm = m.len() - 1;
    let li = inv(m[dm], p);
    if r.len() <= dm {
        return Vec::new();
    }
    let mut q = vec![0u64; r.len() - dm];
    while r.len() > dm {
        let top = r.len() - 1;
        let c = mulmod(r[top], li, p);
        q[top - dm] = c;
        for j in 0..=dm {
            let idx = top - dm + j;
            r[idx] = (r[idx] + p - mulmod(c, m[j], p)) % p;
        }
        r = trim(r);
    }
    assert!(r.is_empty(), "inexact division");
    trim(q)
}

fn monic(a: &Poly, p: u64) -> Poly {
    let li = inv(*a.last().unwrap(), p);
    a.iter().map(|&c| mulmod(c, li, p)).collect()
}

pub fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic(&a, p)
    }
}

pub fn derivative(a: &Poly, p: u64) -> Poly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % p, p))
            .collect(),
    )
}

pub fn is_squarefree(a: &Poly, p: u64) -> bool {
    deg(&gcd(a, &derivative(a, p), p)) == Some(0)
}

pub fn eval(a: &Poly, x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
}

/// Number of roots in 𝔽_p by evaluating at every point.
pub fn count_roots(a: &Poly, p: u64) -> u32 {
    (0..p).filter(|&x| eval(a, x, p) == 0).count() as u32
}

/// `base^e mod m`.
fn powmod_poly(base: &Poly, mut e: u64, m: &Poly, p: u64) -> Poly {
    let mut r = rem(&vec![1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = rem(&mul(&r, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    r
}

/// Basis of `{v : v^p ≡ v mod f}` (the Berlekamp subalgebra), as polynomials.
fn berlekamp_kernel(f: &Poly, p: u64) -> Vec<Poly> {
    let n = f.len() - 1;
    let xp = powmod_poly(&vec![0, 1], p, f, p);
    // rows[i] = X^{ip} mod f, as a dense row of length n, minus e_i
    let mut rows = Vec::with_capacity(n);
    let mut cur: Poly = vec![1];
    for i in 0..n {
        let mut row = vec![0u64; n];
        for (j, &c) in cur.iter().enumerate() {
            row[j] = c;
        }
        row[i] = (row[i] + p - 1) % p;
        rows.push(row);
        cur = rem(&mul(&cur, &xp, p), f, p);
    }
    // solve v · M = 0: transpose and row-reduce
    let mut m: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| rows[i][j]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..n).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let iv = inv(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mulmod(*x, iv, p);
        }
        for i in 0..n {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..n {
                    m[i][j] = (m[i][j] + p - mulmod(f, m[r][j], p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[row][fc]) % p;
            }
            trim(v)
        })
        .collect()
}

/// Degrees of the irreducible factors of a squarefree `f`, sorted.
/// Berlekamp's algorithm with splitting by `gcd(g, v − s)` over every
/// `s ∈ 𝔽_p`.
pub fn factor_degrees(f: &Poly, p: u64) -> Vec<usize> {
    let f = monic(&trim(f.clone()), p);
    if f.len() <= 1 {
        return Vec::new();
    }
    assert!(is_squarefree(&f, p), "oracle needs a squarefree input");
    let basis = berlekamp_kernel(&f, p);
    let r = basis.len();
    let mut factors = vec![f.clone()];
    for v in basis.iter().filter(|v| v.len() > 1) {
        if factors.len() == r {
            break;
        }
        let mut next = Vec::new();
        let total = factors.len();
        for (idx, g) in factors.into_iter().enumerate() {
            let untouched = total - idx - 1;
            if g.len() <= 2 || next.len() + 1 + untouched == r {
                next.push(g);
                continue;
            }
            let mut rest = g;
            for s in 0..p {
                if rest.len() <= 1 {
                    break;
                }
                // every remaining factor is already accounted for
                if next.len() + 1 + untouched == r {
                    break;
                }
                let shifted = sub(v, &vec![s], p);
                let h = gcd(&rest, &shifted, p);
                if h.len() > 1 {
                    rest = div(&rest, &h, p);
                    next.push(h);
                }
            }
            if rest.len() > 1 {
                next.push(rest);
            }
        }
        factors = next;
    }
    assert_eq!(factors.len(), r, "factor count disagrees with kernel dimension");
    let mut d: Vec<usize> = factors.iter().map(|g| g.len() - 1).collect();
    d.sort_unstable();
    d
}

/// `(d_1, …, d_k)` from a list of factor degrees.
pub fn counts_up_to(degrees: &[usize], k: usize) -> Vec<u32> {
    let mut c = vec![0u32; k];
    for &d in degrees {
        if d >= 1 && d <= k {
            c[d - 1] += 1;
        }
    }
    c
}

/// Number of k-subsets of the roots fixed by Frobenius, for a factor-degree
/// multiset: subsets that are unions of whole factors, counted by direct
/// enumeration over factor subsets.
pub fn invariant_subsets(degrees: &[usize], k: usize) -> u64 {
    let mut ways: BTreeMap<usize, u64> = BTreeMap::new();
    ways.insert(0, 1);
    for &d in degrees {
        let mut next = ways.clone();
        for (&s, &w) in &ways {
            if s + d <= k {
                *next.entry(s + d).or_default() += w;
            }
        }
        ways = next;
    }
    ways.get(&k).copied().unwrap_or(0)
}

/// `p − t₀q`, reduced.
pub fn specialize(pp: &Poly, q: &Poly, t0: u64, p: u64) -> Poly {
    let tq: Poly = q.iter().map(|&c| mulmod(c, t0, p)).collect();
    sub(pp, &trim(tq), p)
}

/// `Σ_{t₀} π_k` over unramified fibers with no degree drop, plus the
/// contributions of degree-drop-1 fibers (the point at infinity counts as a
/// rational root), computed factor by factor.
pub struct NaiveScan {
    pub total: u64,
    pub ramified: Vec<u64>,
    pub degree_drop_skipped: Vec<u64>,
}

pub fn naive_scan(pp: &Poly, q: &Poly, k: usize, p: u64) -> NaiveScan {
    let n = (pp.len().max(q.len())) - 1;
    let mut out = NaiveScan {
        total: 0,
        ramified: Vec::new(),
        degree_drop_skipped: Vec::new(),
    };
    for t0 in 0..p {
        let f = specialize(pp, q, t0, p);
        let d = f.len() - 1;
        if n - d >= 2 {
            out.degree_drop_skipped.push(t0);
            continue;
        }
        if !is_squarefree(&f, p) {
            out.ramified.push(t0);
            continue;
        }
        let mut degs = factor_degrees(&f, p);
        if d < n {
            degs.push(1);
        }
        out.total += invariant_subsets(&degs, k);
    }
    out
}

/// `Σ_{t₀} π₂` for a cover, by brute force: `C(d₁, 2)` from the rational
/// roots of every fiber found by walking `x` over 𝔽_p, plus `d₂` from every
/// monic irreducible quadratic `g` with `p ≡ t₀q (mod g)`. Fibers that are
/// ramified or drop degree by 2 or more are left out; a degree drop of 1
/// adds a rational root.
pub fn brute_force_pi2_total(pp: &Poly, q: &Poly, p: u64) -> u64 {
    let n = pp.len().max(q.len()) - 1;
    let mut skip = vec![false; p as usize];
    let mut d1 = vec![0u64; p as usize];
    for t0 in 0..p {
        let f = specialize(pp, q, t0, p);
        let d = f.len() - 1;
        if n - d >= 2 || !is_squarefree(&f, p) {
            skip[t0 as usize] = true;
        } else if d < n {
            d1[t0 as usize] += 1;
        }
    }
    for x in 0..p {
        let qx = eval(q, x, p);
        if qx == 0 {
            continue;
        }
        let t0 = mulmod(eval(pp, x, p), inv(qx, p), p);
        d1[t0 as usize] += 1;
    }
    let mut square = vec![false; p as usize];
    for x in 0..p {
        square[mulmod(x, x, p) as usize] = true;
    }
    let mut d2 = vec![0u64; p as usize];
    for b in 0..p {
        for c in 0..p {
            // X² + bX + c is irreducible iff b² − 4c is a non-square
            let disc = (mulmod(b, b, p) + p - mulmod(4 % p, c, p)) % p;
            if square[disc as usize] {
                continue;
            }
            let (a1, a0) = reduce_mod_quadratic(pp, b, c, p);
            let (b1, b0) = reduce_mod_quadratic(q, b, c, p);
            // p ≡ t₀q: (a1, a0) = t₀(b1, b0)
            if (mulmod(a1, b0, p) + p - mulmod(a0, b1, p)) % p != 0 {
                continue;
            }
            let t0 = if b1 != 0 {
                mulmod(a1, inv(b1, p), p)
            } else if b0 != 0 {
                mulmod(a0, inv(b0, p), p)
            } else {
                continue;
            };
            d2[t0 as usize] += 1;
        }
    }
    (0..p as usize)
        .filter(|&t| !skip[t])
        .map(|t| d1[t] * d1[t].saturating_sub(1) / 2 + d2[t])
        .sum()
}

/// `a mod (X² + bX + c)` as `(coefficient of X, constant)`.
fn reduce_mod_quadratic(a: &Poly, b: u64, c: u64, p: u64) -> (u64, u64) {
    // Horner in the quotient ring: acc = acc·X + coef, with X² = −bX − c
    let (mut h1, mut h0) = (0u64, 0u64);
    for &coef in a.iter().rev() {
        // (h1 X + h0)·X = h1 X² + h0 X = (h0 − b h1) X − c h1
        let n1 = (h0 + p - mulmod(b, h1, p)) % p;
        let n0 = (p - mulmod(c, h1, p)) % p;
        h1 = n1;
        h0 = (n0 + coef) % p;
    }
    (h1, h0)
}

// ---- permutations ----

/// Partitions of n as (length, multiplicity) lists.
pub fn partitions(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            go(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    go(n, n, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|p| {
            let mut m: BTreeMap<usize, usize> = BTreeMap::new();
            for l in p {
                *m.entry(l).or_default() += 1;
            }
            m.into_iter().collect()
        })
        .collect()
}

/// An explicit permutation of 0..n with the given cycle type.
pub fn permutation(parts: &[(usize, usize)]) -> Vec<usize> {
    let mut perm = Vec::new();
    let mut start = 0;
    for &(len, mult) in parts {
        for _ in 0..mult {
            for i in 0..len {
                perm.push(start + (i + 1) % len);
            }
            start += len;
        }
    }
    perm
}

/// (fixed k-subsets, cycles on k-subsets) of the induced action.
pub fn brute_force_subset_action(perm: &[usize], k: usize) -> (u64, u64) {
    let n = perm.len();
    let image = |mask: u32| -> u32 {
        (0..n).filter(|&i| mask >> i & 1 == 1).fold(0, |acc, i| acc | 1 << perm[i])
    };
    let subsets: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect();
    let mut seen = vec![false; 1 << n];
    let (mut fixed, mut cycles) = (0, 0);
    for &s in &subsets {
        if image(s) == s {
            fixed += 1;
        }
        if seen[s as usize] {
            continue;
        }
        cycles += 1;
        let mut t = s;
        while !seen[t as usize] {
            seen[t as usize] = true;
            t = image(t);
        }
    }
    (fixed, cycles)
}
