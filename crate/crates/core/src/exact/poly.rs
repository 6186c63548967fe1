//! Dense univariate polynomials over ℚ, constant term first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_integers(c: &[BigInt]) -> Self {
        Poly::new(c.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); r.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = &r[r.len() - 1] / &lead;
            for (i, c) in d.coeffs.iter().enumerate() {
                let v = &r[k + i] - &f * c;
                r[k + i] = v;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        match a.leading().cloned() {
            Some(l) => Poly::new(a.coeffs.iter().map(|c| c / &l).collect()),
            None => a,
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Canonical Sturm chain `p₀ = f, p₁ = f′, pᵢ₊₁ = −rem(pᵢ₋₁, pᵢ)`.
    pub fn sturm_chain(&self) -> Vec<Poly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(Poly::new(r.coeffs.iter().map(|c| -c).collect()));
        }
        chain
    }

    /// Number of distinct real roots (Sturm's theorem on (−∞, ∞)).
    pub fn count_real_roots(&self) -> usize {
        let chain = self.sturm_chain();
        let at_pos: Vec<i32> = chain.iter().map(|p| sign_at_infinity(p, true)).collect();
        let at_neg: Vec<i32> = chain.iter().map(|p| sign_at_infinity(p, false)).collect();
        sign_changes(&at_neg).saturating_sub(sign_changes(&at_pos))
    }

    /// Sturm count of distinct roots in the half-open interval (a, b].
    pub fn count_roots_in(&self, chain: &[Poly], a: &BigRational, b: &BigRational) -> usize {
        let va: Vec<i32> = chain.iter().map(|p| sign(&p.eval(a))).collect();
        let vb: Vec<i32> = chain.iter().map(|p| sign(&p.eval(b))).collect();
        sign_changes(&va).saturating_sub(sign_changes(&vb))
    }

    /// Cauchy bound: every real root lies in `(−B, B)`.
    pub fn root_bound(&self) -> BigRational {
        let lead = self.leading().expect("nonzero polynomial").abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        m + BigRational::one()
    }
}

fn sign(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_at_infinity(p: &Poly, positive: bool) -> i32 {
    let Some(d) = p.degree() else { return 0 };
    let s = sign(&p.coeffs[d]);
    if positive || d % 2 == 0 {
        s
    } else {
        -s
    }
}

fn sign_changes(signs: &[i32]) -> usize {
    let nz: Vec<i32> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}
