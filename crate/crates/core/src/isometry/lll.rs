//! LLL reduction of a positive-definite Gram matrix, exact over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::IntMatrix;

fn gso(g: &IntMatrix) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
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

fn round(x: &BigRational) -> BigInt {
    // nearest integer, halves toward +∞
    let two = BigInt::from(2);
    (x.numer() * &two + x.denom()).div_floor(&(x.denom() * two))
}

// column k -= q · column j, applied to both g and t
fn sub_col(g: &mut IntMatrix, t: &mut IntMatrix, k: usize, j: usize, q: &BigInt) {
    let n = g.rows();
    for r in 0..n {
        let v = &g[(r, k)] - q * &g[(r, j)];
        g[(r, k)] = v;
    }
    for c in 0..n {
        let v = &g[(k, c)] - q * &g[(j, c)];
        g[(k, c)] = v;
    }
    for r in 0..t.rows() {
        let v = &t[(r, k)] - q * &t[(r, j)];
        t[(r, k)] = v;
    }
}

fn swap(g: &mut IntMatrix, t: &mut IntMatrix, a: usize, b: usize) {
    g.swap_rows(a, b);
    g.swap_cols(a, b);
    t.swap_cols(a, b);
}

/// Returns `(H, T)` with `H = Tᵀ·G·T` LLL-reduced (δ = 3/4) and `T` unimodular.
pub fn lll_gram(g: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let n = g.rows();
    let mut g = g.clone();
    let mut t = IntMatrix::identity(n);
    if n <= 1 {
        return (g, t);
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gso(&g);
            let q = round(&mu[k][j]);
            if !q.is_zero() {
                sub_col(&mut g, &mut t, k, j, &q);
            }
        }
        let (mu, b) = gso(&g);
        let lhs = b[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &b[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            swap(&mut g, &mut t, k, k - 1);
            k = (k - 1).max(1);
        }
    }
    // first nonzero entry of each column of T positive
    for j in 0..n {
        let first = (0..n).map(|i| &t[(i, j)]).find(|x| !x.is_zero()).cloned();
        if first.is_some_and(|x| x.is_negative()) {
            let minus = -BigInt::one();
            for r in 0..n {
                t[(r, j)] = -&t[(r, j)];
            }
            for c in 0..n {
                g[(j, c)] = &g[(j, c)] * &minus;
            }
            for r in 0..n {
                g[(r, j)] = &g[(r, j)] * &minus;
            }
        }
    }
    (g, t)
}
