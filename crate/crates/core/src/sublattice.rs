//! The trace-zero lattice `O⁰`, the perp lattice `O⊥ = {nα − tr α}` and the
//! adapted bases used to write them down.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    bezout, complete_unimodular, factorize, smith_form, IntMatrix, RatMatrix,
};
use crate::numberfield::{FieldElement, NumberField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Full,
    Zero,
    Perp,
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatticeKind::Full => "full",
            LatticeKind::Zero => "zero",
            LatticeKind::Perp => "perp",
        })
    }
}

impl FromStr for LatticeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(LatticeKind::Full),
            "zero" => Ok(LatticeKind::Zero),
            "perp" => Ok(LatticeKind::Perp),
            _ => Err(Error::Precondition(format!("lattice kind must be full, zero or perp, got {s}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadraticLattice {
    pub kind: LatticeKind,
    pub gram: IntMatrix,
    /// Basis elements as integer coordinates in the field's integral basis.
    pub basis: IntMatrix,
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub scale_note: BigRational,
}

impl QuadraticLattice {
    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn basis_elems(&self) -> Vec<FieldElement> {
        (0..self.basis.rows()).map(|i| FieldElement::from_integers(self.basis.row(i))).collect()
    }

    fn from_basis(k: &NumberField, kind: LatticeKind, basis: IntMatrix) -> QuadraticLattice {
        let gram = &(&basis * &k.gram_trace()) * &basis.transpose();
        QuadraticLattice { kind, gram, basis, scale_note: BigRational::one() }
    }
}

/// `{1, α₁, …, αₙ₋₁}` with `(t₁, …, tₙ₋₁) ≡ (0, …, 0, k) mod n`.
#[derive(Clone, Debug, Serialize)]
pub struct AdaptedBasis {
    /// Row `i` holds the coordinates of the `i`-th element (`1` first) in the
    /// field's integral basis.
    pub change: IntMatrix,
    #[serde(serialize_with = "crate::serde_util::ints")]
    pub traces: Vec<BigInt>,
}

impl AdaptedBasis {
    pub fn alpha(&self, i: usize) -> &[BigInt] {
        self.change.row(i + 1)
    }
}

fn kernel_basis(s: &[BigInt]) -> IntMatrix {
    let m = s.len();
    if s.iter().all(Zero::is_zero) {
        return IntMatrix::identity(m);
    }
    let row = IntMatrix::from_fn(1, m, |_, j| s[j].clone());
    let sf = smith_form(&row);
    IntMatrix::from_fn(m, m - 1, |i, j| sf.v[(i, j + 1)].clone())
}

fn crt(residues: &[(BigInt, BigInt)]) -> BigInt {
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, p) in residues {
        // x + modulus·t ≡ r (mod p)
        let inv = crate::exact::mod_inverse(&modulus, p).expect("coprime moduli");
        let t = ((r - &x) * inv).mod_floor(p);
        x += &modulus * t;
        modulus *= p;
    }
    x
}

/// Integers `c` with `Σ cᵢsᵢ = 0` and `gcd(u − c) = 1`.
pub fn elemt_a(u: &[BigInt], s: &[BigInt]) -> Result<Vec<BigInt>> {
    let m = u.len();
    if m < 2 || s.len() != m {
        return Err(Error::Precondition("need two equal-length lists of length at least 2".into()));
    }
    let n: BigInt = u.iter().zip(s).map(|(a, b)| a * b).sum();
    if n.is_zero() {
        let g = s[0].gcd(&s[1]);
        let mut d = vec![BigInt::zero(); m];
        if g.is_zero() {
            d[0] = BigInt::one();
        } else {
            d[0] = &s[1] / &g;
            d[1] = -(&s[0] / &g);
        }
        return Ok(u.iter().zip(&d).map(|(a, b)| a - b).collect());
    }
    let kb = kernel_basis(s);
    let mut residues = Vec::new();
    for (p, _) in factorize(&n)? {
        let pb = BigInt::from(p);
        let u_zero = u.iter().all(|x| x.is_multiple_of(&pb));
        // v_p = e₀ when u ≡ 0 (first kernel column is primitive), else 0
        residues.push((if u_zero { BigInt::one() } else { BigInt::zero() }, pb));
    }
    let x = crt(&residues);
    Ok((0..m).map(|i| &kb[(i, 0)] * &x).collect())
}

/// Integers `h` with `gcd(r·h + s) = 1`, given `gcd(r, s) = 1`.
pub fn elemt_b(r: &BigInt, s: &[BigInt]) -> Result<Vec<BigInt>> {
    let m = s.len();
    if m < 2 {
        return Err(Error::Precondition("need at least two integers".into()));
    }
    let (g, coeffs) = bezout(s);
    if !g.gcd(r).is_one() {
        return Err(Error::Precondition("gcd(r, s) must be 1".into()));
    }
    if g.is_one() {
        return Ok(vec![BigInt::zero(); m]);
    }
    let (_, a, b) = crate::exact::ext_gcd(r, &g);
    let u: Vec<BigInt> = coeffs.iter().map(|c| c * &b).collect();
    let c = elemt_a(&u, s)?;
    let v: Vec<BigInt> = u.iter().zip(&c).map(|(x, y)| x - y).collect();
    let (gv, e) = bezout(&v);
    debug_assert!(gv.is_one());
    Ok(e.into_iter().map(|x| x * &a).collect())
}

pub fn adapted_basis(k: &NumberField) -> Result<AdaptedBasis> {
    let n = k.degree();
    let ki = k.trace_image();
    let nb = BigInt::from(n);
    let s: Vec<BigInt> = k.basis_traces()[1..].to_vec();
    let change = if n == 2 {
        IntMatrix::identity(2)
    } else {
        let r = &nb / &ki;
        let sk: Vec<BigInt> = s.iter().map(|x| x / &ki).collect();
        let h = elemt_b(&r, &sk)?;
        let w: Vec<BigInt> = h.iter().zip(&sk).map(|(hi, si)| &r * hi + si).collect();
        let a = complete_unimodular(&w, n - 2)?;
        let ainv = a.unimodular_inverse()?;
        IntMatrix::from_fn(n, n, |i, j| match (i, j) {
            (0, 0) => BigInt::one(),
            (0, _) | (_, 0) => BigInt::zero(),
            _ => ainv[(i - 1, j - 1)].clone(),
        })
    };
    let traces: Vec<BigInt> = (1..n)
        .map(|i| change.row(i).iter().zip(k.basis_traces()).map(|(c, t)| c * t).sum())
        .collect();
    for (i, t) in traces.iter().enumerate() {
        let want = if i == n - 2 { ki.clone() } else { BigInt::zero() };
        if !(t - want).is_multiple_of(&nb) {
            return Err(Error::InvalidField(format!("{}: adapted traces {traces:?}", k.label())));
        }
    }
    Ok(AdaptedBasis { change, traces })
}

pub fn full_lattice(k: &NumberField) -> QuadraticLattice {
    QuadraticLattice::from_basis(k, LatticeKind::Full, IntMatrix::identity(k.degree()))
}

/// `{αᵢ − tᵢ/n (i < n−1), (n/k)αₙ₋₁ − tₙ₋₁/k}` on an adapted basis.
pub fn zero_lattice(k: &NumberField) -> Result<QuadraticLattice> {
    let n = k.degree();
    let ab = adapted_basis(k)?;
    let nb = BigInt::from(n);
    let ki = k.trace_image();
    let mut basis = IntMatrix::zeros(n - 1, n);
    for i in 0..n - 1 {
        let (mult, shift) = if i == n - 2 {
            (&nb / &ki, &ab.traces[i] / &ki)
        } else {
            (BigInt::one(), &ab.traces[i] / &nb)
        };
        for j in 0..n {
            basis[(i, j)] = &mult * &ab.alpha(i)[j];
        }
        basis[(i, 0)] -= shift;
    }
    Ok(QuadraticLattice::from_basis(k, LatticeKind::Zero, basis))
}

/// `{n·bᵢ − tr(bᵢ)}` over the non-unit integral basis elements.
pub fn perp_lattice(k: &NumberField) -> QuadraticLattice {
    let n = k.degree();
    let nb = BigInt::from(n);
    let mut basis = IntMatrix::zeros(n - 1, n);
    for i in 0..n - 1 {
        basis[(i, i + 1)] = nb.clone();
        basis[(i, 0)] = -k.basis_traces()[i + 1].clone();
    }
    QuadraticLattice::from_basis(k, LatticeKind::Perp, basis)
}

pub fn lattice(k: &NumberField, kind: LatticeKind) -> Result<QuadraticLattice> {
    match kind {
        LatticeKind::Full => Ok(full_lattice(k)),
        LatticeKind::Zero => zero_lattice(k),
        LatticeKind::Perp => Ok(perp_lattice(k)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscRelations {
    pub n: usize,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub k: BigInt,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub disc: BigInt,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub zero_det: BigInt,
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub zero_expected: BigRational,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub perp_det: BigInt,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub perp_expected: BigInt,
    /// `[O⁰ : O⊥]` from the Smith form of the perp basis in zero coordinates.
    #[serde(serialize_with = "crate::serde_util::int")]
    pub index: BigInt,
    pub zero_ok: bool,
    pub perp_ok: bool,
    pub index_ok: bool,
    /// Every zero and perp basis element has trace 0.
    pub traces_vanish: bool,
}

impl DiscRelations {
    pub fn holds(&self) -> bool {
        self.zero_ok && self.perp_ok && self.index_ok && self.traces_vanish
    }
}

pub fn disc_relations_check(k: &NumberField) -> Result<DiscRelations> {
    let n = k.degree();
    let ki = k.trace_image();
    let disc = k.disc().clone();
    let zero = zero_lattice(k)?;
    let perp = perp_lattice(k);
    let zero_det = zero.gram.det_exact()?;
    let perp_det = perp.gram.det_exact()?;
    let zero_expected = BigRational::new(BigInt::from(n) * &disc, &ki * &ki);
    let perp_expected = BigInt::from(n).pow(2 * n as u32 - 3) * &disc;
    let traces_vanish = [&zero, &perp].iter().all(|l| {
        (0..l.basis.rows())
            .all(|i| l.basis.row(i).iter().zip(k.basis_traces()).map(|(c, t)| c * t).sum::<BigInt>().is_zero())
    });
    // perp rows in zero coordinates: P = M·Z, solved on the columns 1..n
    let z = RatMatrix::from_fn(n - 1, n - 1, |i, j| BigRational::from_integer(zero.basis[(i, j + 1)].clone()));
    let p = RatMatrix::from_fn(n - 1, n - 1, |i, j| BigRational::from_integer(perp.basis[(i, j + 1)].clone()));
    let m = &p * &z.inverse()?;
    let index = match crate::exact::to_integer_matrix(&m) {
        Some(mi) => smith_form(&mi).invariants().iter().product::<BigInt>().abs(),
        None => BigInt::zero(),
    };
    Ok(DiscRelations {
        n,
        index_ok: !index.is_zero() && &index * &index * &zero_det == perp_det,
        zero_ok: BigRational::from_integer(zero_det.clone()) == zero_expected,
        perp_ok: perp_det == perp_expected,
        k: ki,
        disc,
        zero_det,
        zero_expected,
        perp_det,
        perp_expected,
        index,
        traces_vanish,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::gcd_all;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn zsqrt2() -> NumberField {
        NumberField::from_spec(&ints(&[-2, 0, 1]), &RatMatrix::identity(2), "zsqrt2").unwrap()
    }

    fn cubic() -> NumberField {
        let b = RatMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[-5, 2, 1]]);
        NumberField::from_spec(&ints(&[3, -8, 1, 1]), &b, "cubic").unwrap()
    }

    #[test]
    fn elemt_examples() {
        let c = elemt_a(&ints(&[0, 0]), &ints(&[1, 1])).unwrap();
        assert_eq!(&c[0] + &c[1], BigInt::zero());
        assert!(gcd_all(&c).is_one());
        let c = elemt_a(&ints(&[1, 1]), &ints(&[0, 0])).unwrap();
        let diff: Vec<BigInt> = ints(&[1, 1]).iter().zip(&c).map(|(a, b)| a - b).collect();
        assert!(gcd_all(&diff).is_one());
        assert_eq!(elemt_b(&BigInt::from(3), &ints(&[1, 2])).unwrap(), ints(&[0, 0]));
        let h = elemt_b(&BigInt::from(2), &ints(&[2, 3])).unwrap();
        assert!(gcd_all(&[&h[0] * 2 + 2, &h[1] * 2 + 3]).is_one());
        assert!(elemt_b(&BigInt::from(2), &ints(&[2, 4])).is_err());
        assert!(elemt_a(&ints(&[1]), &ints(&[1])).is_err());
    }

    #[test]
    fn quadratic_lattices() {
        let k = zsqrt2();
        let ab = adapted_basis(&k).unwrap();
        assert_eq!(ab.traces, ints(&[0]));
        assert_eq!(zero_lattice(&k).unwrap().gram, IntMatrix::from_i64(&[&[4]]));
        assert_eq!(perp_lattice(&k).gram, IntMatrix::from_i64(&[&[16]]));
        let rel = disc_relations_check(&k).unwrap();
        assert!(rel.holds());
        assert_eq!((rel.zero_det, rel.perp_det), (BigInt::from(4), BigInt::from(16)));
    }

    #[test]
    fn cubic_lattices() {
        let k = cubic();
        let ab = adapted_basis(&k).unwrap();
        assert!(ab.change.is_unimodular());
        assert!(ab.traces[0].is_multiple_of(&BigInt::from(3)));
        assert_eq!(ab.traces[1].mod_floor(&BigInt::from(3)), BigInt::one());
        let rel = disc_relations_check(&k).unwrap();
        assert!(rel.holds());
        assert_eq!(rel.zero_det, BigInt::from(4275));
        assert_eq!(rel.perp_det, BigInt::from(27 * 1425));
    }
}
