//! Crate-internal modular arithmetic and dense polynomials over GF(p).
//!
//! Residues are `u64` values reduced modulo `m`; products go through `u128`
//! so any modulus below 2⁶⁴ is safe. Polynomials over GF(p) are dense
//! coefficient vectors in ascending degree order with no trailing zeros.

/// Addition mod `m`.
pub fn addm(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

/// Subtraction mod `m`.
pub fn subm(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + m as u128 - b as u128) % m as u128) as u64
}

/// Multiplication mod `m`.
pub fn mulm(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Exponentiation mod `m` by repeated squaring.
pub fn powm(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulm(acc, base, m);
        }
        base = mulm(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse mod `m` via the extended Euclidean algorithm,
/// or `None` when `gcd(a, m) ≠ 1`.
pub fn invm(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller–Rabin primality test, exact for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // These witnesses decide primality for every n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factors of `n` in ascending order, without multiplicity.
pub fn prime_factors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// True iff no square of a prime divides `n` (and `n ≥ 1`).
pub fn is_squarefree_u64(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % (d * d) == 0 {
            return false;
        }
        while n % d == 0 {
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    true
}

// --- dense polynomials over GF(p), ascending coefficients, trimmed ---

/// Remove trailing zero coefficients in place.
pub fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree, or `None` for the zero polynomial.
pub fn poly_deg(v: &[u64]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

/// Sum over GF(p).
pub fn poly_add(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = addm(x, y, p);
    }
    poly_trim(&mut out);
    out
}

/// Difference over GF(p).
pub fn poly_sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = subm(x, y, p);
    }
    poly_trim(&mut out);
    out
}

/// Product over GF(p).
pub fn poly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addm(out[i + j], mulm(x, y, p), p);
        }
    }
    poly_trim(&mut out);
    out
}

/// Euclidean division over GF(p); `None` when the divisor is zero.
pub fn poly_divrem(p: u64, a: &[u64], b: &[u64]) -> Option<(Vec<u64>, Vec<u64>)> {
    let db = poly_deg(b)?;
    let lead_inv = invm(b[db], p).expect("leading coefficient invertible mod prime p");
    let mut rem: Vec<u64> = a.to_vec();
    poly_trim(&mut rem);
    let mut quot = vec![0u64; rem.len().saturating_sub(db)];
    while let Some(dr) = poly_deg(&rem) {
        if dr < db {
            break;
        }
        let c = mulm(rem[dr], lead_inv, p);
        let shift = dr - db;
        quot[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            rem[shift + i] = subm(rem[shift + i], mulm(c, bc, p), p);
        }
        poly_trim(&mut rem);
    }
    poly_trim(&mut quot);
    Some((quot, rem))
}

/// Product of `a` and `b` reduced modulo `modulus` over GF(p).
pub fn poly_mulmod(p: u64, a: &[u64], b: &[u64], modulus: &[u64]) -> Vec<u64> {
    let prod = poly_mul(p, a, b);
    poly_divrem(p, &prod, modulus).expect("nonzero modulus").1
}

/// Inverse of `a` modulo `modulus` over GF(p), or `None` when `a` and the
/// modulus share a factor (never for an irreducible modulus and `a ≠ 0`).
pub fn poly_invmod(p: u64, a: &[u64], modulus: &[u64]) -> Option<Vec<u64>> {
    // Extended Euclid on (modulus, a).
    let mut r0 = modulus.to_vec();
    let mut r1 = a.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut t0: Vec<u64> = Vec::new();
    let mut t1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(p, &r0, &r1).expect("nonzero divisor");
        let t = poly_sub(p, &t0, &poly_mul(p, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if poly_deg(&r0) != Some(0) {
        return None;
    }
    let scale = invm(r0[0], p)?;
    let mut out: Vec<u64> = t0.iter().map(|&c| mulm(c, scale, p)).collect();
    poly_trim(&mut out);
    Some(poly_divrem(p, &out, modulus).expect("nonzero modulus").1)
}

/// Exhaustive irreducibility test for a monic polynomial over GF(p): search
/// all monic divisor candidates of degree 1 through deg/2.
pub fn poly_is_irreducible(p: u64, f: &[u64]) -> bool {
    let Some(k) = poly_deg(f) else {
        return false;
    };
    if k == 0 {
        return false;
    }
    for d in 1..=k / 2 {
        let count = (p as u128).pow(d as u32);
        let mut idx = 0u128;
        while idx < count {
            // Candidate = x^d + (digits of idx in base p as lower coefficients).
            let mut g = vec![0u64; d + 1];
            g[d] = 1;
            let mut rest = idx;
            for slot in g.iter_mut().take(d) {
                *slot = (rest % p as u128) as u64;
                rest /= p as u128;
            }
            let (_, rem) = poly_divrem(p, f, &g).expect("nonzero divisor");
            if rem.is_empty() {
                return false;
            }
            idx += 1;
        }
    }
    true
}
