//! Extending isometries of `O⊥` or `O⁰` to the full trace lattices, and the
//! harnesses built on top of that.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{bezout, is_fundamental_discriminant, mod_inverse, unit_group_is_cyclic, RatMatrix};
use crate::fixtures::{Fixture, FixtureStore};
use crate::isometry::{automorphisms, find_isometry, shape_compare, IsometryMap, SearchMode};
use crate::numberfield::NumberField;
use crate::sublattice::{lattice, LatticeKind, QuadraticLattice};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SignPair {
    pub plus: bool,
    pub minus: bool,
}

impl SignPair {
    fn any(&self) -> bool {
        self.plus || self.minus
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    pub kind: LatticeKind,
    pub lifted: bool,
    /// `+1` is preferred when both extensions work.
    pub sign: Option<i8>,
    /// Columns are images of `K`'s integral basis in `L`'s integral basis.
    pub full_isometry: Option<RatMatrix>,
    /// `v` with `v² ≡ 1 (mod n)`, `v ≢ ±1`, when the congruence argument
    /// produces one.
    #[serde(serialize_with = "crate::serde_util::opt_int")]
    pub obstruction: Option<BigInt>,
    pub direct: SignPair,
    pub congruence: SignPair,
    pub agree: bool,
    pub path: &'static str,
    /// Hypotheses on `K` under which every such isometry must extend hold.
    pub theorem_guarantee: bool,
    pub theorem_violation: bool,
}

fn unit_row(n: usize, sign: i64) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); n];
    v[0] = BigRational::from_integer(BigInt::from(sign));
    v
}

fn stack(first: Vec<BigRational>, rest: &RatMatrix) -> RatMatrix {
    let n = first.len();
    RatMatrix::from_fn(rest.rows() + 1, n, |i, j| if i == 0 { first[j].clone() } else { rest[(i - 1, j)].clone() })
}

fn rat_row(v: &[BigInt]) -> RatMatrix {
    RatMatrix::from_fn(1, v.len(), |_, j| BigRational::from_integer(v[j].clone()))
}

struct Setup {
    n: usize,
    nb: BigInt,
    // images of K's sublattice basis, rows in L's integral coordinates
    images: RatMatrix,
    x_inv: RatMatrix,
}

fn setup(k: &NumberField, l: &NumberField, kind: LatticeKind, phi: &IsometryMap) -> Result<Setup> {
    if k.degree() != l.degree() {
        return Err(Error::DegreeMismatch(k.degree(), l.degree()));
    }
    let n = k.degree();
    let lk = lattice(k, kind)?;
    let ll = lattice(l, kind)?;
    if !phi.verify(&ll.gram, &lk.gram) {
        return Err(Error::NotAnIsometry(format!("{kind} lattices of {} and {}", k.label(), l.label())));
    }
    let images = (&phi.u.transpose() * &ll.basis).to_rational();
    let x = stack(unit_row(n, 1), &lk.basis.to_rational());
    Ok(Setup { n, nb: BigInt::from(n), images, x_inv: x.inverse()? })
}

fn extension(s: &Setup, sign: i64) -> RatMatrix {
    let y = stack(unit_row(s.n, sign), &s.images);
    (&s.x_inv * &y).transpose()
}

fn check_full(k: &NumberField, l: &NumberField, f: &RatMatrix) -> Result<bool> {
    let Some(fi) = crate::exact::to_integer_matrix(f) else { return Ok(false) };
    if !fi.is_unimodular() {
        return Err(Error::NotAnIsometry("integral extension is not unimodular".into()));
    }
    if fi.congruence(&l.gram_trace())? != k.gram_trace() {
        return Err(Error::NotAnIsometry("integral extension does not preserve the trace form".into()));
    }
    Ok(true)
}

fn square_one_witness(v: &BigInt, n: &BigInt) -> Option<BigInt> {
    let v = v.mod_floor(n);
    let one = BigInt::one();
    let ok = (&v * &v).mod_floor(n) == one.mod_floor(n) && v != one && v != n - &one;
    (ok && n > &BigInt::from(2)).then_some(v)
}

fn finish(
    k: &NumberField,
    l: &NumberField,
    s: &Setup,
    kind: LatticeKind,
    congruence: SignPair,
    obstruction: Option<BigInt>,
    guarantee: bool,
) -> Result<LiftReport> {
    let fp = extension(s, 1);
    let fm = extension(s, -1);
    let direct = SignPair { plus: check_full(k, l, &fp)?, minus: check_full(k, l, &fm)? };
    let (sign, full) = if direct.plus {
        (Some(1), Some(fp))
    } else if direct.minus {
        (Some(-1), Some(fm))
    } else {
        (None, None)
    };
    let lifted = direct.any();
    Ok(LiftReport {
        kind,
        lifted,
        sign,
        full_isometry: full,
        obstruction: if lifted { None } else { obstruction },
        direct,
        congruence,
        agree: direct == congruence,
        path: "direct integrality, cross-checked by the mod-n criterion",
        theorem_guarantee: guarantee,
        theorem_violation: guarantee && !lifted,
    })
}

/// `φ` certifies `φᵀ·G_L⊥·φ = G_K⊥` (as returned by `find_isometry(G_L⊥, G_K⊥)`).
pub fn lift_perp(k: &NumberField, l: &NumberField, phi: &IsometryMap) -> Result<LiftReport> {
    let s = setup(k, l, LatticeKind::Perp, phi)?;
    let n = &s.nb;
    let t: Vec<BigInt> = k.basis_traces()[1..].to_vec();
    // φ(n bᵢ − tᵢ) = n βᵢ − sᵢ
    let sv: Vec<BigInt> = (0..s.n - 1).map(|i| (-s.images[(i, 0)].to_integer()).mod_floor(n)).collect();
    let congr = |sign: i64| t.iter().zip(&sv).all(|(ti, si)| (ti - si * sign).is_multiple_of(n));
    let congruence = SignPair { plus: congr(1), minus: congr(-1) };

    let ki = k.trace_image();
    let mut obstruction = None;
    if ki.is_one() {
        let mut ext = t.clone();
        ext.push(n.clone());
        let (_, coeffs) = bezout(&ext);
        let u: BigInt = coeffs[..t.len()].iter().zip(&sv).map(|(a, b)| a * b).sum();
        if let Some(v) = mod_inverse(&u, n) {
            obstruction = square_one_witness(&v, n);
        }
    }
    let guarantee = ki.is_one() && unit_group_is_cyclic(s.n as u64);
    finish(k, l, &s, LatticeKind::Perp, congruence, obstruction, guarantee)
}

/// `φ` certifies `φᵀ·G_L⁰·φ = G_K⁰`.
pub fn lift_zero(k: &NumberField, l: &NumberField, phi: &IsometryMap) -> Result<LiftReport> {
    let (kk, kl) = (k.trace_image(), l.trace_image());
    if kk != kl {
        return Err(Error::TraceImageMismatch(kk.to_string(), kl.to_string()));
    }
    let s = setup(k, l, LatticeKind::Zero, phi)?;
    let n = &s.nb;
    let nk = n / &kk;
    let (_, c) = bezout(k.basis_traces());
    // γ₀ = 1 − (n/k)·γ_K with tr γ_K = k
    let mut g0: Vec<BigInt> = c.iter().map(|x| -(x * &nk)).collect();
    g0[0] += 1;
    let coords = &rat_row(&g0) * &s.x_inv;
    debug_assert!(coords[(0, 0)].is_zero());
    let sub = RatMatrix::from_fn(1, s.n - 1, |_, j| coords[(0, j + 1)].clone());
    let img = &sub * &s.images;
    let congr = |sign: i64| {
        (0..s.n).all(|j| {
            let mut x = img[(0, j)].clone();
            if j == 0 {
                x -= BigRational::from_integer(BigInt::from(sign));
            }
            x.is_integer() && x.to_integer().is_multiple_of(&nk)
        })
    };
    let congruence = SignPair { plus: congr(1), minus: congr(-1) };

    let mut obstruction = None;
    if kk.is_one() {
        let (_, cl) = bezout(l.basis_traces());
        let mut target: Vec<BigInt> = cl.iter().map(|x| -(x * n)).collect();
        target[0] += 1;
        let theta = stack(unit_row(s.n, 1), &s.images).inverse()?;
        let lc = &rat_row(&target) * &theta;
        let last = &lc[(0, s.n - 1)];
        if last.is_integer() {
            obstruction = square_one_witness(&last.to_integer(), n);
        }
    }
    let guarantee = kk.is_one()
        && unit_group_is_cyclic(s.n as u64)
        && k.disc().gcd(n).is_one();
    finish(k, l, &s, LatticeKind::Zero, congruence, obstruction, guarantee)
}

pub fn lift(k: &NumberField, l: &NumberField, kind: LatticeKind, phi: &IsometryMap) -> Result<LiftReport> {
    match kind {
        LatticeKind::Perp => lift_perp(k, l, phi),
        LatticeKind::Zero => lift_zero(k, l, phi),
        LatticeKind::Full => Err(Error::Precondition("lifting applies to zero and perp lattices".into())),
    }
}

/// Every isometry `K → L` of the given sublattice kind, oriented for `lift`.
pub fn sublattice_isometries(
    k: &NumberField,
    l: &NumberField,
    kind: LatticeKind,
    mode: SearchMode,
    budget: u64,
) -> Result<Vec<IsometryMap>> {
    let gk = lattice(k, kind)?.gram;
    let gl = lattice(l, kind)?.gram;
    find_isometry(&gl, &gk, mode, budget)
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftSummary {
    pub kind: LatticeKind,
    pub total: usize,
    pub lifted: usize,
    pub agree: usize,
    pub violations: usize,
}

pub fn lift_all(k: &NumberField, l: &NumberField, kind: LatticeKind, budget: u64) -> Result<(LiftSummary, Vec<LiftReport>)> {
    let maps = sublattice_isometries(k, l, kind, SearchMode::All, budget)?;
    let reports = maps.iter().map(|m| lift(k, l, kind, m)).collect::<Result<Vec<_>>>()?;
    let summary = LiftSummary {
        kind,
        total: reports.len(),
        lifted: reports.iter().filter(|r| r.lifted).count(),
        agree: reports.iter().filter(|r| r.agree).count(),
        violations: reports.iter().filter(|r| r.theorem_violation).count(),
    };
    Ok((summary, reports))
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionReport {
    pub n: usize,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub k: BigInt,
    pub aut_full: usize,
    pub aut_perp: usize,
    pub aut_zero: usize,
    /// `n/k ∤ 2`, so restriction is expected to be injective.
    pub injectivity_expected: bool,
    /// Every full automorphism sends `1` to `±1` and preserves both sublattices.
    pub restricts: bool,
    pub injective_perp: bool,
    pub injective_zero: bool,
    pub consistent: bool,
}

fn restrict(full: &RatMatrix, sub: &QuadraticLattice) -> Result<Option<RatMatrix>> {
    let n = full.rows();
    let x = stack(unit_row(n, 1), &sub.basis.to_rational());
    // images of the sublattice basis, as rows
    let img = &sub.basis.to_rational() * &full.transpose();
    let c = &img * &x.inverse()?;
    let ok = (0..c.rows()).all(|i| c[(i, 0)].is_zero()) && c.is_integral();
    Ok(ok.then(|| RatMatrix::from_fn(n - 1, n - 1, |i, j| c[(j, i + 1)].clone())))
}

pub fn restriction_injectivity_check(k: &NumberField, budget: u64) -> Result<RestrictionReport> {
    if !k.is_totally_real() {
        return Err(Error::NotTotallyReal(k.label().to_string()));
    }
    let n = k.degree();
    let ki = k.trace_image();
    let full = automorphisms(&k.gram_trace(), budget)?;
    let perp = lattice(k, LatticeKind::Perp)?;
    let zero = lattice(k, LatticeKind::Zero)?;
    let aut_perp = automorphisms(&perp.gram, budget)?.len();
    let aut_zero = automorphisms(&zero.gram, budget)?.len();
    let mut restricts = true;
    let mut rp = std::collections::HashSet::new();
    let mut rz = std::collections::HashSet::new();
    for a in &full {
        let f = a.u.to_rational();
        let one = f.col(0);
        let pm1 = one.iter().skip(1).all(Zero::is_zero) && one[0].abs().is_one();
        match (pm1, restrict(&f, &perp)?, restrict(&f, &zero)?) {
            (true, Some(p), Some(z)) => {
                rp.insert(p);
                rz.insert(z);
            }
            _ => restricts = false,
        }
    }
    let injectivity_expected = !BigInt::from(2).is_multiple_of(&(BigInt::from(n) / &ki));
    let injective_perp = restricts && rp.len() == full.len();
    let injective_zero = restricts && rz.len() == full.len();
    let consistent = restricts
        && (!injectivity_expected
            || (injective_perp && injective_zero && full.len() <= aut_perp && full.len() <= aut_zero));
    Ok(RestrictionReport {
        n,
        k: ki,
        aut_full: full.len(),
        aut_perp,
        aut_zero,
        injectivity_expected,
        restricts,
        injective_perp,
        injective_zero,
        consistent,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Hypotheses {
    pub k_fundamental: bool,
    pub k_totally_real: bool,
    pub degree_at_least_3: bool,
    pub units_cyclic: bool,
    pub n_coprime_to_disc: bool,
}

impl Hypotheses {
    pub fn main(&self) -> bool {
        self.k_fundamental && self.k_totally_real && self.degree_at_least_3 && self.units_cyclic
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub k: String,
    pub l: String,
    pub hypotheses: Hypotheses,
    /// From fixture metadata; `None` when either side lacks it.
    pub isomorphic: Option<bool>,
    pub perp_isometric: bool,
    pub zero_isometric: bool,
    pub trace_isometric: bool,
    pub shape_equal: bool,
    /// Equal shape, and `L` totally real with fundamental discriminant.
    pub shape_condition: bool,
    pub asserted: bool,
    pub cyclic_prime_check: Option<bool>,
    pub violations: Vec<String>,
}

fn definite(f: &NumberField) -> bool {
    f.is_totally_real()
}

fn iso_exists(k: &NumberField, l: &NumberField, kind: LatticeKind, budget: u64) -> Result<bool> {
    if k.degree() != l.degree() || !definite(k) || !definite(l) {
        // a positive-definite form is never isometric to one that is not
        return Ok(false);
    }
    Ok(!sublattice_isometries(k, l, kind, SearchMode::First, budget)?.is_empty())
}

pub fn theorem_report(kf: &Fixture, lf: &Fixture, budget: u64) -> Result<TheoremReport> {
    let (k, l) = (&kf.field, &lf.field);
    let n = k.degree();
    let hypotheses = Hypotheses {
        k_fundamental: is_fundamental_discriminant(k.disc())?,
        k_totally_real: k.is_totally_real(),
        degree_at_least_3: n >= 3,
        units_cyclic: unit_group_is_cyclic(n as u64),
        n_coprime_to_disc: k.disc().gcd(&BigInt::from(n)).is_one(),
    };
    let isomorphic = match (&kf.iso_class, &lf.iso_class) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let perp_isometric = iso_exists(k, l, LatticeKind::Perp, budget)?;
    let zero_isometric = iso_exists(k, l, LatticeKind::Zero, budget)?;
    let trace_isometric = iso_exists(k, l, LatticeKind::Full, budget)?;
    let shape_equal = k.degree() == l.degree()
        && definite(k)
        && definite(l)
        && shape_compare(k, l, budget)?.equal;
    let shape_condition = shape_equal && l.is_totally_real() && is_fundamental_discriminant(l.disc())?;

    let mut violations = Vec::new();
    // without metadata the isomorphism verdict is unknown and nothing is asserted
    let asserted = hypotheses.main() && isomorphic.is_some();
    if let (true, Some(i)) = (asserted, isomorphic) {
        let mut named = vec![
            ("perp isometry", perp_isometric),
            ("shape condition", shape_condition),
            ("trace-form isometry", trace_isometric),
            ("field isomorphism", i),
        ];
        if hypotheses.n_coprime_to_disc {
            named.push(("zero isometry", zero_isometric));
        }
        let first = named[0].1;
        for (name, v) in &named[1..] {
            if *v != first {
                violations.push(format!("{name} = {v} but perp isometry = {first}"));
            }
        }
    }
    let mut cyclic_prime_check = None;
    if kf.cyclic_prime_degree().is_some() && definite(k) && definite(l) && k.degree() == l.degree() {
        let mut ok = true;
        for kind in [LatticeKind::Perp, LatticeKind::Zero] {
            if kind == LatticeKind::Zero && k.trace_image() != l.trace_image() {
                continue;
            }
            let (_, reports) = lift_all(k, l, kind, budget)?;
            if reports.iter().any(|r| !r.lifted) {
                ok = false;
                violations.push(format!("a {kind} isometry of a cyclic prime-degree field does not lift"));
            }
        }
        cyclic_prime_check = Some(ok);
    }
    Ok(TheoremReport {
        k: k.label().to_string(),
        l: l.label().to_string(),
        hypotheses,
        isomorphic,
        perp_isometric,
        zero_isometric,
        trace_isometric,
        shape_equal,
        shape_condition,
        asserted,
        cyclic_prime_check,
        violations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyFinding {
    pub k: String,
    pub l: String,
    pub degree: usize,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub disc: BigInt,
    pub disc_even: bool,
    pub zero_isometries: usize,
    pub non_liftable: usize,
    pub trace_isometric: bool,
}

/// Equal-degree, equal-discriminant pairs of totally real fixtures with a
/// zero-lattice isometry that does not extend to the full trace lattices.
pub fn survey_pairs(store: &FixtureStore, budget: u64) -> Result<Vec<SurveyFinding>> {
    let fs: Vec<&Fixture> = store.iter().filter(|f| f.field.is_totally_real()).collect();
    let mut out = Vec::new();
    for (i, a) in fs.iter().enumerate() {
        for b in &fs[i + 1..] {
            let (k, l) = (&a.field, &b.field);
            if k.degree() != l.degree() || k.disc() != l.disc() || k.trace_image() != l.trace_image() {
                continue;
            }
            let (summary, _) = lift_all(k, l, LatticeKind::Zero, budget)?;
            if summary.total > summary.lifted {
                out.push(SurveyFinding {
                    k: k.label().to_string(),
                    l: l.label().to_string(),
                    degree: k.degree(),
                    disc: k.disc().clone(),
                    disc_even: k.disc().is_even(),
                    zero_isometries: summary.total,
                    non_liftable: summary.total - summary.lifted,
                    trace_isometric: iso_exists(k, l, LatticeKind::Full, budget)?,
                });
            }
        }
    }
    out.sort_by(|x, y| (x.degree, x.disc.abs(), &x.k, &x.l).cmp(&(y.degree, y.disc.abs(), &y.k, &y.l)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IntMatrix;
    use crate::isometry::DEFAULT_BUDGET;

    fn cubic() -> NumberField {
        let b = RatMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[-5, 2, 1]]);
        let p: Vec<BigInt> = [3, -8, 1, 1].iter().map(|&x| BigInt::from(x)).collect();
        NumberField::from_spec(&p, &b, "cubic").unwrap()
    }

    #[test]
    fn identity_lifts_with_plus_sign() {
        let k = cubic();
        let id = IsometryMap { u: IntMatrix::identity(2) };
        for kind in [LatticeKind::Perp, LatticeKind::Zero] {
            let r = lift(&k, &k, kind, &id).unwrap();
            assert!(r.lifted && r.agree);
            assert_eq!(r.sign, Some(1));
            assert!(r.full_isometry.unwrap().is_identity());
        }
    }

    #[test]
    fn cubic_zero_automorphisms_half_lift() {
        let k = cubic();
        let (s, reports) = lift_all(&k, &k, LatticeKind::Zero, DEFAULT_BUDGET).unwrap();
        assert_eq!((s.total, s.lifted, s.agree), (4, 2, 4));
        assert!(reports.iter().all(|r| !r.theorem_guarantee));
    }

    #[test]
    fn rejects_non_isometries() {
        let k = cubic();
        let bad = IsometryMap { u: IntMatrix::from_i64(&[&[1, 1], &[0, 1]]) };
        assert!(matches!(lift_perp(&k, &k, &bad), Err(Error::NotAnIsometry(_))));
    }

    #[test]
    fn square_roots_of_one() {
        let w = |v: i64, n: i64| square_one_witness(&BigInt::from(v), &BigInt::from(n));
        assert_eq!(w(3, 8), Some(BigInt::from(3)));
        assert_eq!(w(7, 8), None);
        assert_eq!(w(1, 5), None);
    }
}
