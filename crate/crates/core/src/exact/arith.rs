//! Integer arithmetic helpers: gcds, roots, valuations and small-scale
//! factorization.

use num_bigint::{BigInt, Sign};
use num_integer::{Integer as _, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial division limit used before switching to Pollard rho.
const TRIAL_LIMIT: u64 = 1_000_000;

/// Extended gcd: returns `(g, x, y)` with `a·x + b·y = g` and `g >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Gcd of a list (0 for the empty list or all zeros).
pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(xs: I) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Bezout coefficients for a list: returns `(g, c)` with `Σ cᵢxᵢ = g = gcd(x)`.
pub fn bezout(xs: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut coeffs = vec![BigInt::zero(); xs.len()];
    let mut g = BigInt::zero();
    for (i, x) in xs.iter().enumerate() {
        let (ng, a, b) = ext_gcd(&g, x);
        for c in coeffs.iter_mut().take(i) {
            *c *= &a;
        }
        coeffs[i] = b;
        g = ng;
    }
    (g, coeffs)
}

/// Inverse of `a` modulo `m` (m > 1), if it exists, in `[0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (g, x, _) = ext_gcd(&a.mod_floor(m), m);
    g.is_one().then(|| x.mod_floor(m))
}

/// Exact `k`-th root of a non-negative integer, if one exists.
pub fn exact_root(x: &BigInt, k: u32) -> Option<BigInt> {
    if x.is_negative() {
        if k % 2 == 1 {
            return exact_root(&-x, k).map(|r| -r);
        }
        return None;
    }
    let r = x.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *x).then_some(r)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(x: &BigInt, p: u64) -> u32 {
    assert!(!x.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Pollard rho with Floyd cycle detection; `n` must be an odd composite.
fn pollard_rho(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn factor_u64_rec(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let r = n.sqrt();
    if r * r == n {
        factor_u64_rec(r, out);
        factor_u64_rec(r, out);
        return;
    }
    let d = pollard_rho(n);
    factor_u64_rec(d, out);
    factor_u64_rec(n / d, out);
}

/// Prime factorization of `|n|` as sorted `(p, e)` pairs.
///
/// Trial division removes primes below 10⁶; a remaining cofactor must fit in
/// 64 bits and is split with Pollard rho, otherwise [`Error::Unfactored`].
pub fn factorize(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput("factorize"));
    }
    let mut m = n.abs();
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut p = 2u64;
    while p < TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        return Ok(out);
    }
    let rest = m.to_u64().ok_or_else(|| Error::Unfactored(m.to_string()))?;
    let mut primes = Vec::new();
    factor_u64_rec(rest, &mut primes);
    primes.sort_unstable();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Distinct prime divisors of `|n|`.
pub fn prime_divisors(n: &BigInt) -> Result<Vec<u64>> {
    Ok(factorize(n)?.into_iter().map(|(p, _)| p).collect())
}

/// True iff no prime square divides `|n|`.
pub fn is_squarefree(n: &BigInt) -> Result<bool> {
    if n.is_zero() {
        return Err(Error::ZeroInput("is_squarefree"));
    }
    Ok(factorize(n)?.iter().all(|&(_, e)| e == 1))
}

/// Fundamental discriminant test: `d ≡ 1 (mod 4)` squarefree, or `d = 4m`
/// with `m ≡ 2, 3 (mod 4)` squarefree.
pub fn is_fundamental_discriminant(d: &BigInt) -> Result<bool> {
    if d.is_zero() {
        return Err(Error::ZeroInput("is_fundamental_discriminant"));
    }
    let four = BigInt::from(4);
    let r = d.mod_floor(&four);
    if r.is_one() {
        return is_squarefree(d);
    }
    if r.is_zero() {
        let m = d / &four;
        let mr = m.mod_floor(&four);
        if mr == BigInt::from(2) || mr == BigInt::from(3) {
            return is_squarefree(&m);
        }
    }
    Ok(false)
}

/// Whether `(ℤ/nℤ)^×` is cyclic: n ∈ {1, 2, 4, pᵏ, 2pᵏ} with p an odd prime.
pub fn unit_group_is_cyclic(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    if matches!(n, 1 | 2 | 4) {
        return true;
    }
    let m = if n.is_multiple_of(2) { n / 2 } else { n };
    if m % 2 == 0 {
        return false;
    }
    let f = factorize(&BigInt::from(m)).expect("small input");
    f.len() == 1
}

/// Sign of a big integer as -1, 0, or 1.
pub fn signum(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
