//! Smith normal form with transformation matrices, and unimodular completion
//! of primitive vectors.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::arith::{ext_gcd, gcd_all};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `U · M · V = D` with `D` diagonal, `d₁ | d₂ | …`, `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The diagonal entries `d₁, …, d_min(r,c)`.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }
}

fn row_axpy(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    // row_target -= q * row_src
    for j in 0..m.cols() {
        let v = &m[(target, j)] - q * &m[(src, j)];
        m[(target, j)] = v;
    }
}

fn col_axpy(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    for i in 0..m.rows() {
        let v = &m[(i, target)] - q * &m[(i, src)];
        m[(i, target)] = v;
    }
}

/// Smith normal form. The pivot is the smallest nonzero entry by absolute
/// value in the active block, ties broken by row-major position.
pub fn smith_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut t = 0;
    while t < r.min(c) {
        // select pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = &a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let mut dirty = false;
        for i in t + 1..r {
            let q = a[(i, t)].div_floor(&a[(t, t)]);
            if !q.is_zero() {
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
            }
            dirty |= !a[(i, t)].is_zero();
        }
        for j in t + 1..c {
            let q = a[(t, j)].div_floor(&a[(t, t)]);
            if !q.is_zero() {
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
            }
            dirty |= !a[(t, j)].is_zero();
        }
        if dirty {
            continue;
        }
        // divisibility of the remaining block
        let p = a[(t, t)].clone();
        let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&p)));
        if let Some(i) = bad {
            let minus_one = -BigInt::one();
            row_axpy(&mut a, t, i, &minus_one);
            row_axpy(&mut u, t, i, &minus_one);
            continue;
        }
        if p.is_negative() {
            for j in 0..c {
                a[(t, j)] = -&a[(t, j)];
            }
            for j in 0..r {
                u[(t, j)] = -&u[(t, j)];
            }
        }
        t += 1;
    }
    SmithForm { d: a, u, v }
}

/// A unimodular matrix (determinant +1 when `n ≥ 2`) whose column `col` is
/// the primitive vector `w`, built from a cascade of 2×2 extended-gcd steps.
pub fn complete_unimodular(w: &[BigInt], col: usize) -> Result<IntMatrix> {
    let n = w.len();
    if n == 0 || col >= n {
        return Err(Error::DimensionMismatch("empty vector or column out of range".into()));
    }
    if !gcd_all(w).is_one() {
        return Err(Error::NotPrimitive);
    }
    let mut cur = w.to_vec();
    let mut m = IntMatrix::identity(n);
    for i in (1..n).rev() {
        let (a, b) = (cur[i - 1].clone(), cur[i].clone());
        if b.is_zero() {
            continue;
        }
        let (g, x, y) = ext_gcd(&a, &b);
        let (ag, bg) = (&a / &g, &b / &g);
        // the step [[x, y], [-b/g, a/g]] sends (a, b) to (g, 0); m absorbs its inverse
        // [[a/g, -y], [b/g, x]] on the right
        for row in 0..n {
            let p = m[(row, i - 1)].clone();
            let q = m[(row, i)].clone();
            m[(row, i - 1)] = &p * &ag + &q * &bg;
            m[(row, i)] = &q * &x - &p * &y;
        }
        cur[i - 1] = g;
        cur[i] = BigInt::zero();
    }
    if cur[0].is_negative() {
        for row in 0..n {
            m[(row, 0)] = -&m[(row, 0)];
        }
    }
    // move column 0 to position `col`
    for j in 0..col {
        m.swap_cols(j, j + 1);
    }
    if n >= 2 && m.det_exact()?.is_negative() {
        let other = if col == 0 { 1 } else { 0 };
        for row in 0..n {
            m[(row, other)] = -&m[(row, other)];
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let inv = s.invariants();
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        for w in inv.windows(2) {
            assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
            assert!(!w[0].is_negative());
        }
        s
    }

    #[test]
    fn smith_examples() {
        let b = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(check(&IntMatrix::from_i64(&[&[4, 0], &[0, 2]])).invariants(), b(&[2, 4]));
        assert_eq!(check(&IntMatrix::identity(3)).invariants(), b(&[1, 1, 1]));
        assert_eq!(check(&IntMatrix::from_i64(&[&[2, 4], &[6, 8]])).invariants(), b(&[2, 4]));
        assert_eq!(check(&IntMatrix::from_i64(&[&[6, 0], &[0, 4]])).invariants(), b(&[2, 12]));
        check(&IntMatrix::from_i64(&[&[0, 0, 0], &[0, 5, 10]]));
        check(&IntMatrix::zeros(2, 2));
    }

    #[test]
    fn unimodular_completion() {
        let w: Vec<BigInt> = [6i64, 10, 15].iter().map(|&x| BigInt::from(x)).collect();
        for col in 0..3 {
            let m = complete_unimodular(&w, col).unwrap();
            assert_eq!(m.det_exact().unwrap(), BigInt::one());
            assert_eq!(m.col(col), w);
        }
        let e: Vec<BigInt> = [0i64, 0, -1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(complete_unimodular(&e, 2).unwrap().col(2), e);
        let bad: Vec<BigInt> = [2i64, 4].iter().map(|&x| BigInt::from(x)).collect();
        assert!(matches!(complete_unimodular(&bad, 0), Err(Error::NotPrimitive)));
    }
}
