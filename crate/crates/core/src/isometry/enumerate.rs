//! Fincke-Pohst enumeration of short lattice vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::lll::lll_gram;
use crate::error::{Error, Result};
use crate::exact::IntMatrix;

pub(crate) fn check_pd(g: &IntMatrix) -> Result<()> {
    if !g.is_square() {
        return Err(Error::NotSquare(g.rows(), g.cols()));
    }
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !g.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(())
}

fn gso_cols(g: &IntMatrix) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = g.rows();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut b = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..=i {
            let mut v = BigRational::from_integer(g[(i, j)].clone());
            for l in 0..j {
                v -= &mu[j][l] * &mu[i][l] * &b[l];
            }
            if i == j {
                b[i] = v;
            } else {
                mu[i][j] = v / &b[j];
            }
        }
    }
    (mu, b)
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::MAX)
}

/// All nonzero `x` with `xᵀ·g·x ≤ bound`, both signs, for positive-definite `g`.
pub(crate) fn enumerate_all(g: &IntMatrix, bound: &BigInt) -> Vec<Vec<BigInt>> {
    let n = g.rows();
    let (mu, b) = gso_cols(g);
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    let r = BigRational::from_integer(bound.clone());
    if r.is_negative() || n == 0 {
        return out;
    }
    walk(n, &mu, &b, &mut x, r, &mut out);
    out
}

fn walk(
    level: usize,
    mu: &[Vec<BigRational>],
    b: &[BigRational],
    x: &mut Vec<BigInt>,
    rem: BigRational,
    out: &mut Vec<Vec<BigInt>>,
) {
    if level == 0 {
        if x.iter().any(|v| !v.is_zero()) {
            out.push(x.clone());
        }
        return;
    }
    let i = level - 1;
    let n = x.len();
    let mut c = BigRational::zero();
    for j in i + 1..n {
        c -= &mu[j][i] * BigRational::from_integer(x[j].clone());
    }
    let cf = to_f64(&c);
    let rad = (to_f64(&rem) / to_f64(&b[i])).max(0.0).sqrt();
    let lo = (cf - rad).floor() as i64 - 1;
    let hi = (cf + rad).ceil() as i64 + 1;
    for v in lo..=hi {
        let d = BigRational::from_integer(BigInt::from(v)) - &c;
        let used = &b[i] * &d * &d;
        if used > rem {
            continue;
        }
        x[i] = BigInt::from(v);
        walk(i, mu, b, x, &rem - &used, out);
    }
    x[i] = BigInt::zero();
}

pub(crate) fn norm(g: &IntMatrix, v: &[BigInt]) -> BigInt {
    g.bilinear(v, v)
}

fn sign_canonical(v: &[BigInt]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive())
}

/// Nonzero vectors with `vᵀ·G·v ≤ bound`, one per `±` pair (first nonzero
/// coordinate positive), sorted by norm and then lexicographically.
pub fn short_vectors(g: &IntMatrix, bound: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    check_pd(g)?;
    let (h, t) = lll_gram(g);
    let mut vs: Vec<(BigInt, Vec<BigInt>)> = enumerate_all(&h, bound)
        .into_iter()
        .map(|y| t.mul_vec(&y))
        .filter(|v| sign_canonical(v))
        .map(|v| (norm(g, &v), v))
        .collect();
    vs.sort();
    Ok(vs.into_iter().map(|(_, v)| v).collect())
}
