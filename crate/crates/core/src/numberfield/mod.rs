//! Orders in number fields given by a monic polynomial and an integral basis.

mod ramification;

pub use ramification::{
    check_trace_surjectivity, is_tame, maurer_vp, PrimeRamification, RamificationData,
    TraceSurjectivityReport,
};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{complete_unimodular, gcd_all, to_integer_vec, IntMatrix, Poly, RatMatrix};

/// An element of `K`, in coordinates with respect to the integral basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FieldElement {
    #[serde(serialize_with = "crate::serde_util::rationals")]
    pub coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn new(coords: Vec<BigRational>) -> Self {
        FieldElement { coords }
    }

    pub fn from_integers(c: &[BigInt]) -> Self {
        FieldElement { coords: c.iter().cloned().map(BigRational::from_integer).collect() }
    }

    pub fn zero(n: usize) -> Self {
        FieldElement { coords: vec![BigRational::zero(); n] }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut e = Self::zero(n);
        e.coords[i] = BigRational::one();
        e
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn integer_coords(&self) -> Option<Vec<BigInt>> {
        to_integer_vec(&self.coords)
    }

    pub fn add(&self, o: &Self) -> Self {
        FieldElement { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        FieldElement { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        FieldElement { coords: self.coords.iter().map(|a| a * s).collect() }
    }
}

#[derive(Clone, Debug)]
pub struct NumberField {
    label: String,
    poly: Vec<BigInt>,
    basis: RatMatrix,
    basis_inv: RatMatrix,
    // table[i][j] = coordinates of bᵢbⱼ
    table: Vec<Vec<Vec<BigInt>>>,
    traces: Vec<BigInt>,
    gram: IntMatrix,
    disc: BigInt,
}

impl NumberField {
    /// Builds the order spanned by the rows of `basis` (power-basis
    /// coordinates) inside `ℚ[x]/(poly)`.
    pub fn from_spec(poly: &[BigInt], basis: &RatMatrix, label: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidField(format!("{label}: {m}"));
        let n = poly.len().checked_sub(1).ok_or_else(|| bad("empty polynomial"))?;
        if n < 2 {
            return Err(bad("degree must be at least 2"));
        }
        if !poly[n].is_one() {
            return Err(bad("polynomial is not monic"));
        }
        let f = Poly::from_integers(poly);
        if !f.is_squarefree() {
            return Err(bad("polynomial is not squarefree"));
        }
        if basis.rows() != n || basis.cols() != n {
            return Err(bad("basis must be n x n"));
        }
        let inv = basis.inverse().map_err(|_| bad("basis is singular"))?;
        let basis = normalize_unit(basis, &inv).ok_or_else(|| bad("1 is not a basis element"))?;
        let basis_inv = basis.inverse()?;

        let rows: Vec<Poly> = (0..n).map(|i| Poly::new(basis.row(i).to_vec())).collect();
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let prod = rows[i].mul(&rows[j]).rem(&f);
                let mut pw = prod.coeffs().to_vec();
                pw.resize(n, BigRational::zero());
                let c = RatMatrix::from_fn(1, n, |_, k| pw[k].clone()).try_mul(&basis_inv)?;
                let c = to_integer_vec(c.row(0))
                    .ok_or_else(|| bad("basis is not closed under multiplication"))?;
                table[i][j] = c.clone();
                table[j][i] = c;
            }
        }
        let traces: Vec<BigInt> =
            (0..n).map(|i| (0..n).map(|j| table[i][j][j].clone()).sum()).collect();
        let gram = IntMatrix::from_fn(n, n, |i, j| {
            table[i][j].iter().zip(&traces).map(|(c, t)| c * t).sum()
        });
        let disc = gram.det_exact()?;
        let m4 = disc.mod_floor(&BigInt::from(4));
        if !(m4.is_zero() || m4.is_one()) {
            return Err(bad("discriminant is not 0 or 1 mod 4"));
        }
        Ok(NumberField {
            label: label.to_string(),
            poly: poly.to_vec(),
            basis,
            basis_inv,
            table,
            traces,
            gram,
            disc,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn poly(&self) -> &[BigInt] {
        &self.poly
    }

    /// Rows are the basis elements in the power basis `1, θ, …, θⁿ⁻¹`.
    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn table(&self) -> &[Vec<Vec<BigInt>>] {
        &self.table
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    /// Traces of the basis elements.
    pub fn basis_traces(&self) -> &[BigInt] {
        &self.traces
    }

    pub fn gram_trace(&self) -> IntMatrix {
        self.gram.clone()
    }

    fn check_len(&self, x: &FieldElement) -> Result<()> {
        if x.len() != self.degree() {
            return Err(Error::DimensionMismatch(format!(
                "element of length {} in degree {} field",
                x.len(),
                self.degree()
            )));
        }
        Ok(())
    }

    pub fn trace(&self, x: &FieldElement) -> Result<BigRational> {
        self.check_len(x)?;
        Ok(x.coords
            .iter()
            .zip(&self.traces)
            .map(|(c, t)| c * BigRational::from_integer(t.clone()))
            .sum())
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check_len(x)?;
        self.check_len(y)?;
        let n = self.degree();
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in x.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &ab * BigRational::from_integer(t.clone());
                    }
                }
            }
        }
        Ok(FieldElement::new(out))
    }

    /// `tr(xy)`.
    pub fn trace_pairing(&self, x: &FieldElement, y: &FieldElement) -> Result<BigRational> {
        self.trace(&self.mul(x, y)?)
    }

    /// Coordinates in the power basis.
    pub fn to_power_basis(&self, x: &FieldElement) -> Vec<BigRational> {
        let m = RatMatrix::from_fn(1, x.len(), |_, k| x.coords[k].clone());
        (&m * &self.basis).row(0).to_vec()
    }

    pub fn from_power_basis(&self, v: &[BigRational]) -> FieldElement {
        let m = RatMatrix::from_fn(1, v.len(), |_, k| v[k].clone());
        FieldElement::new((&m * &self.basis_inv).row(0).to_vec())
    }

    /// `k` with `tr(O) = kℤ`.
    pub fn trace_image(&self) -> BigInt {
        gcd_all(&self.traces)
    }

    /// Sturm count of real roots equals the degree.
    pub fn is_totally_real(&self) -> bool {
        Poly::from_integers(&self.poly).count_real_roots() == self.degree()
    }
}

// Rewrites the basis so that its first row is exactly 1, if 1 lies in the
// lattice as a primitive vector.
fn normalize_unit(basis: &RatMatrix, inv: &RatMatrix) -> Option<RatMatrix> {
    let c = to_integer_vec(inv.row(0))?;
    if c.iter().all(Zero::is_zero) {
        return None;
    }
    let first_is_one = basis.row(0)[0].is_one() && basis.row(0)[1..].iter().all(Zero::is_zero);
    if first_is_one {
        return Some(basis.clone());
    }
    let m = complete_unimodular(&c, 0).ok()?;
    // new rows b'_j = Σ_i m_ij b_i
    let mt = m.transpose().to_rational();
    let out = &mt * basis;
    debug_assert!(out.row(0)[0].is_one());
    Some(out)
}

pub fn is_fundamental_discriminant(d: &BigInt) -> Result<bool> {
    crate::exact::is_fundamental_discriminant(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn zsqrt2() -> NumberField {
        NumberField::from_spec(&ints(&[-2, 0, 1]), &RatMatrix::identity(2), "zsqrt2").unwrap()
    }

    #[test]
    fn quadratic_basics() {
        let k = zsqrt2();
        assert_eq!(k.disc(), &BigInt::from(8));
        assert_eq!(k.gram_trace(), IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(k.trace_image(), BigInt::from(2));
        assert!(k.is_totally_real());
        let x = FieldElement::from_integers(&ints(&[3, 1]));
        assert_eq!(k.trace(&x).unwrap(), rat(6, 1));
        assert_eq!(k.trace(&FieldElement::one(2)).unwrap(), rat(2, 1));
        assert!(k.trace(&FieldElement::one(3)).is_err());
    }

    #[test]
    fn rejects_bad_input() {
        let third = RatMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => rat(1, 1),
            (1, 1) => rat(1, 3),
            _ => rat(0, 1),
        });
        assert!(NumberField::from_spec(&ints(&[-2, 0, 1]), &third, "x").is_err());
        assert!(NumberField::from_spec(&ints(&[-2, 0, 2]), &RatMatrix::identity(2), "x").is_err());
        assert!(NumberField::from_spec(&ints(&[1, 2, 1]), &RatMatrix::identity(2), "x").is_err());
        let no_one = RatMatrix::from_i64(&[&[2, 0], &[0, 1]]);
        assert!(NumberField::from_spec(&ints(&[-2, 0, 1]), &no_one, "x").is_err());
        let gaussian = NumberField::from_spec(&ints(&[1, 0, 1]), &RatMatrix::identity(2), "i");
        assert!(!gaussian.unwrap().is_totally_real());
    }

    #[test]
    fn normalizes_basis_to_contain_one() {
        // {1 + √2, √2} spans ℤ[√2]
        let b = RatMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let k = NumberField::from_spec(&ints(&[-2, 0, 1]), &b, "shifted").unwrap();
        assert_eq!(k.basis().row(0), &[rat(1, 1), rat(0, 1)]);
        assert_eq!(k.disc(), &BigInt::from(8));
    }

    #[test]
    fn cubic_example() {
        let b = RatMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[-5, 2, 1]]);
        let k = NumberField::from_spec(&ints(&[3, -8, 1, 1]), &b, "cubic").unwrap();
        assert_eq!(k.disc(), &BigInt::from(1425));
        assert_eq!(k.trace_image(), BigInt::one());
        assert!(k.is_totally_real());
    }
}
