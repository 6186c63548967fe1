//! Binary cubic forms, pairs of ternary quadratic forms and the formulas
//! attached to them: resolvents, the `GL₂(ℤ) × SL₃(ℤ)` action, Delone–Faddeev
//! cubic rings and the covariant Gram matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::IntMatrix;

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// `f = a x³ + b x²y + c xy² + d y³`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryCubicForm {
    #[serde(serialize_with = "crate::serde_util::ints", deserialize_with = "crate::serde_util::de_ints")]
    pub coeffs: Vec<BigInt>,
}

impl BinaryCubicForm {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        BinaryCubicForm { coeffs: vec![a, b, c, d] }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(big(a), big(b), big(c), big(d))
    }

    pub fn a(&self) -> &BigInt {
        &self.coeffs[0]
    }
    pub fn b(&self) -> &BigInt {
        &self.coeffs[1]
    }
    pub fn c(&self) -> &BigInt {
        &self.coeffs[2]
    }
    pub fn d(&self) -> &BigInt {
        &self.coeffs[3]
    }

    fn check(&self) -> Result<()> {
        if self.coeffs.len() != 4 {
            return Err(Error::DimensionMismatch(format!("binary cubic needs 4 coefficients, got {}", self.coeffs.len())));
        }
        Ok(())
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.a() * x * x * x + self.b() * x * x * y + self.c() * x * y * y + self.d() * y * y * y
    }

    /// `(f·g)(x, y) = f(rx + ty, sx + uy)`, the twisted substitution by
    /// `g = [[r, s], [t, u]]`.
    pub fn substitute(&self, g: &IntMatrix) -> BinaryCubicForm {
        let (r, s, t, u) = (&g[(0, 0)], &g[(0, 1)], &g[(1, 0)], &g[(1, 1)]);
        let val = |x: i64, y: i64| self.eval(&(r * x + t * y), &(s * x + u * y));
        interpolate(val)
    }
}

// Recover a binary cubic from its values at (1,0), (0,1), (1,1), (1,−1).
fn interpolate(f: impl Fn(i64, i64) -> BigInt) -> BinaryCubicForm {
    let a = f(1, 0);
    let d = f(0, 1);
    let p = f(1, 1) - &a - &d; // b + c
    let m = f(1, -1) - &a + &d; // c − b
    let two = big(2);
    let c = (&p + &m) / &two;
    let b = (&p - &m) / &two;
    BinaryCubicForm::new(a, b, c, d)
}

pub fn cubic_disc(f: &BinaryCubicForm) -> BigInt {
    let (a, b, c, d) = (f.a(), f.b(), f.c(), f.d());
    b * b * c * c - big(27) * a * a * d * d + big(18) * a * b * c * d - big(4) * a * c * c * c - big(4) * b * b * b * d
}

/// A pair `(A, B)` of integral ternary quadratic forms, stored by the
/// coefficients `[x11, x12, x13, x22, x23, x33]` of `2A` and `2B` (diagonal
/// halved).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TernaryPair {
    #[serde(serialize_with = "crate::serde_util::ints", deserialize_with = "crate::serde_util::de_ints")]
    pub a: Vec<BigInt>,
    #[serde(serialize_with = "crate::serde_util::ints", deserialize_with = "crate::serde_util::de_ints")]
    pub b: Vec<BigInt>,
}

const IDX: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

fn doubled(c: &[BigInt]) -> IntMatrix {
    let mut m = IntMatrix::zeros(3, 3);
    for (&(i, j), v) in IDX.iter().zip(c) {
        if i == j {
            m[(i, i)] = v * 2;
        } else {
            m[(i, j)] = v.clone();
            m[(j, i)] = v.clone();
        }
    }
    m
}

fn undoubled(m: &IntMatrix) -> Result<Vec<BigInt>> {
    if m.rows() != 3 || m.cols() != 3 || !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    IDX.iter()
        .map(|&(i, j)| {
            if i == j {
                let v = &m[(i, i)];
                if v.is_odd() {
                    return Err(Error::Precondition("diagonal of 2A and 2B must be even".into()));
                }
                Ok(v / 2)
            } else {
                Ok(m[(i, j)].clone())
            }
        })
        .collect()
}

impl TernaryPair {
    pub fn from_i64(a: [i64; 6], b: [i64; 6]) -> Self {
        TernaryPair { a: a.iter().map(|&x| big(x)).collect(), b: b.iter().map(|&x| big(x)).collect() }
    }

    /// From the integer matrices `2A`, `2B`.
    pub fn from_doubled(two_a: &IntMatrix, two_b: &IntMatrix) -> Result<Self> {
        Ok(TernaryPair { a: undoubled(two_a)?, b: undoubled(two_b)? })
    }

    pub fn validate(&self) -> Result<()> {
        if self.a.len() != 6 || self.b.len() != 6 {
            return Err(Error::DimensionMismatch("ternary forms need 6 coefficients each".into()));
        }
        Ok(())
    }

    pub fn two_a(&self) -> IntMatrix {
        doubled(&self.a)
    }

    pub fn two_b(&self) -> IntMatrix {
        doubled(&self.b)
    }

    /// Coefficients of `det(2Ax − 2By)`.
    pub fn doubled_resolvent(&self) -> BinaryCubicForm {
        let (a2, b2) = (self.two_a(), self.two_b());
        interpolate(|x, y| {
            let m = &a2.scale(&big(x)) - &b2.scale(&big(y));
            m.det_exact().expect("3x3 determinant")
        })
    }
}

/// `4·det(Ax − By) = ½·det(2Ax − 2By)`.
pub fn resolvent_form(p: &TernaryPair) -> Result<BinaryCubicForm> {
    p.validate()?;
    let f = p.doubled_resolvent();
    let half: Vec<BigInt> = f.coeffs.iter().map(|c| c / 2).collect();
    debug_assert!(f.coeffs.iter().all(|c| c.is_even()));
    Ok(BinaryCubicForm { coeffs: half })
}

/// `(g₂, g₃) ∈ GL₂(ℤ) × SL₃(ℤ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupElement {
    pub g2: IntMatrix,
    pub g3: IntMatrix,
}

impl GroupElement {
    pub fn new(g2: IntMatrix, g3: IntMatrix) -> Result<Self> {
        if (g2.rows(), g2.cols()) != (2, 2) || (g3.rows(), g3.cols()) != (3, 3) {
            return Err(Error::DimensionMismatch("group element needs a 2x2 and a 3x3 matrix".into()));
        }
        if g2.det_exact()?.abs() != BigInt::one() {
            return Err(Error::NotUnimodular("g2 must have determinant ±1".into()));
        }
        if g3.det_exact()? != BigInt::one() {
            return Err(Error::NotUnimodular("g3 must have determinant 1".into()));
        }
        Ok(GroupElement { g2, g3 })
    }

    pub fn identity() -> Self {
        GroupElement { g2: IntMatrix::identity(2), g3: IntMatrix::identity(3) }
    }
}

/// `(r·g₃Ag₃ᵗ + s·g₃Bg₃ᵗ, t·g₃Ag₃ᵗ + u·g₃Bg₃ᵗ)`.
pub fn gz_act(g: &GroupElement, p: &TernaryPair) -> Result<TernaryPair> {
    p.validate()?;
    let g3t = g.g3.transpose();
    let ca = &(&g.g3 * &p.two_a()) * &g3t;
    let cb = &(&g.g3 * &p.two_b()) * &g3t;
    let (r, s, t, u) = (&g.g2[(0, 0)], &g.g2[(0, 1)], &g.g2[(1, 0)], &g.g2[(1, 1)]);
    let na = &ca.scale(r) + &cb.scale(s);
    let nb = &ca.scale(t) + &cb.scale(u);
    TernaryPair::from_doubled(&na, &nb)
}

/// Multiplication table of the cubic ring with basis `⟨1, ω, θ⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubicRingData {
    pub form: BinaryCubicForm,
    /// Coordinates of `ωθ`, `ω²`, `θ²` in `⟨1, ω, θ⟩`.
    #[serde(serialize_with = "crate::serde_util::ints")]
    pub omega_theta: Vec<BigInt>,
    #[serde(serialize_with = "crate::serde_util::ints")]
    pub omega_sq: Vec<BigInt>,
    #[serde(serialize_with = "crate::serde_util::ints")]
    pub theta_sq: Vec<BigInt>,
}

impl CubicRingData {
    /// Product of two elements in `⟨1, ω, θ⟩` coordinates.
    pub fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); 3];
        for i in 0..3 {
            for j in 0..3 {
                let c = &x[i] * &y[j];
                if c.is_zero() {
                    continue;
                }
                match (i, j) {
                    (0, k) | (k, 0) => out[k] += &c,
                    (1, 1) => add_scaled(&mut out, &self.omega_sq, &c),
                    (2, 2) => add_scaled(&mut out, &self.theta_sq, &c),
                    _ => add_scaled(&mut out, &self.omega_theta, &c),
                }
            }
        }
        out
    }

    /// Trace of the regular representation.
    pub fn trace(&self, x: &[BigInt]) -> BigInt {
        (0..3)
            .map(|j| {
                let mut e = vec![BigInt::zero(); 3];
                e[j] = BigInt::one();
                self.mul(x, &e)[j].clone()
            })
            .sum()
    }

    pub fn trace_gram(&self) -> IntMatrix {
        let e = |i: usize| {
            let mut v = vec![BigInt::zero(); 3];
            v[i] = BigInt::one();
            v
        };
        IntMatrix::from_fn(3, 3, |i, j| self.trace(&self.mul(&e(i), &e(j))))
    }

    /// `(xy)z = x(yz)` on all basis triples.
    pub fn is_associative(&self) -> bool {
        let e = |i: usize| {
            let mut v = vec![BigInt::zero(); 3];
            v[i] = BigInt::one();
            v
        };
        (0..3).all(|i| {
            (0..3).all(|j| {
                (0..3).all(|k| self.mul(&self.mul(&e(i), &e(j)), &e(k)) == self.mul(&e(i), &self.mul(&e(j), &e(k))))
            })
        })
    }
}

fn add_scaled(out: &mut [BigInt], v: &[BigInt], c: &BigInt) {
    for (o, x) in out.iter_mut().zip(v) {
        *o += x * c;
    }
}

/// `ωθ = −ad`, `ω² = −ac + bω − aθ`, `θ² = −bd + dω − cθ`.
pub fn df_cubic_ring(f: &BinaryCubicForm) -> Result<CubicRingData> {
    f.check()?;
    let (a, b, c, d) = (f.a(), f.b(), f.c(), f.d());
    let z = BigInt::zero();
    let ring = CubicRingData {
        form: f.clone(),
        omega_theta: vec![-(a * d), z.clone(), z],
        omega_sq: vec![-(a * c), b.clone(), -a],
        theta_sq: vec![-(b * d), d.clone(), -c],
    };
    let tr_w = ring.trace(&[BigInt::zero(), BigInt::one(), BigInt::zero()]);
    let tr_t = ring.trace(&[BigInt::zero(), BigInt::zero(), BigInt::one()]);
    if !ring.is_associative() || &tr_w != b || tr_t != -c {
        return Err(Error::Precondition("Delone-Faddeev table failed its identities".into()));
    }
    Ok(ring)
}

/// `C = Adj(Adj(2A) + Adj(2B)) − det(2A)·2A − det(2B)·2B`.
pub fn structure_constants_c(p: &TernaryPair) -> Result<IntMatrix> {
    p.validate()?;
    let (a2, b2) = (p.two_a(), p.two_b());
    let inner = &a2.adjugate()? + &b2.adjugate()?;
    let c = &(&inner.adjugate()? - &a2.scale(&a2.det_exact()?)) - &b2.scale(&b2.det_exact()?);
    Ok(c)
}

/// `3C + b·2B − c·2A`, with `(a, b, c, d)` the coefficients of `det(2Ax − 2By)`.
pub fn covariant_gram(p: &TernaryPair) -> Result<IntMatrix> {
    let c = structure_constants_c(p)?;
    let f = p.doubled_resolvent();
    Ok(&(&c.scale(&big(3)) + &p.two_b().scale(f.b())) - &p.two_a().scale(f.c()))
}

/// Checks that the formal products `αᵢαⱼ/δ = cᵢⱼ + b*ᵢⱼ ω + a*ᵢⱼ θ` give the
/// same value to `(αᵢαⱼ)(αₖαₗ)` under all three pairings of `{i, j, k, l}`.
pub fn associativity_check(p: &TernaryPair) -> Result<bool> {
    let c = structure_constants_c(p)?;
    associativity_with(p, &c)
}

/// As [`associativity_check`] with a caller-supplied `C`.
pub fn associativity_with(p: &TernaryPair, c: &IntMatrix) -> Result<bool> {
    p.validate()?;
    let f = p.doubled_resolvent();
    if cubic_disc(&f).is_zero() {
        return Err(Error::Degenerate);
    }
    let ring = df_cubic_ring(&f)?;
    let (a2, b2) = (p.two_a(), p.two_b());
    let prod = |i: usize, j: usize| vec![c[(i, j)].clone(), b2[(i, j)].clone(), a2[(i, j)].clone()];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let x = ring.mul(&prod(i, j), &prod(k, l));
                    if x != ring.mul(&prod(i, k), &prod(j, l)) || x != ring.mul(&prod(i, l), &prod(j, k)) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
