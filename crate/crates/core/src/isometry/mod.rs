//! Isometries and automorphism groups of positive-definite integral lattices.

mod enumerate;
pub mod lll;
mod search;

pub use enumerate::short_vectors;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{exact_root, IntMatrix};
use crate::numberfield::NumberField;
use crate::sublattice::perp_lattice;
use enumerate::check_pd;
use lll::lll_gram;

/// Node limit for one backtracking search.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// `U` with `Uᵀ·G₁·U = G₂`. Column `j` is the image of the `j`-th basis
/// vector of the second lattice, written in the first lattice's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IsometryMap {
    pub u: IntMatrix,
}

impl IsometryMap {
    pub fn verify(&self, g1: &IntMatrix, g2: &IntMatrix) -> bool {
        self.u.is_square()
            && self.u.rows() == g1.rows()
            && self.u.congruence(g1).is_ok_and(|h| &h == g2)
            && self.u.is_unimodular()
    }

    /// The reverse certificate, `U⁻¹` with `U⁻ᵀ·G₂·U⁻¹ = G₁`.
    pub fn inverse(&self) -> Result<IsometryMap> {
        Ok(IsometryMap { u: self.u.unimodular_inverse()? })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    First,
    All,
}

/// Isometries from `g1` to `g2`: at most one for `First`, every one
/// (sorted by entries) for `All`.
pub fn find_isometry(g1: &IntMatrix, g2: &IntMatrix, mode: SearchMode, budget: u64) -> Result<Vec<IsometryMap>> {
    check_pd(g1)?;
    check_pd(g2)?;
    if g1.rows() != g2.rows() {
        return Err(Error::RankMismatch(g1.rows(), g2.rows()));
    }
    if g1.det_exact()? != g2.det_exact()? {
        return Ok(Vec::new());
    }
    if mode == SearchMode::First && g1 == g2 {
        return Ok(vec![IsometryMap { u: IntMatrix::identity(g1.rows()) }]);
    }
    let (h1, t1) = lll_gram(g1);
    let (h2, t2) = lll_gram(g2);
    let t2inv = t2.unimodular_inverse()?;
    let n = g1.rows();
    let found = search::backtrack(&h1, &h2, budget, mode == SearchMode::All)?;
    let mut maps = Vec::with_capacity(found.len());
    for cols in found {
        let v = IntMatrix::from_fn(n, n, |i, j| BigInt::from(cols[j][i]));
        let u = &(&t1 * &v) * &t2inv;
        let m = IsometryMap { u };
        if !m.verify(g1, g2) {
            return Err(Error::NotAnIsometry("search produced an invalid certificate".into()));
        }
        maps.push(m);
    }
    if mode == SearchMode::All {
        maps.sort_by(|a, b| a.u.entries().cmp(b.u.entries()));
    }
    Ok(maps)
}

pub fn first_isometry(g1: &IntMatrix, g2: &IntMatrix, budget: u64) -> Result<Option<IsometryMap>> {
    Ok(find_isometry(g1, g2, SearchMode::First, budget)?.into_iter().next())
}

pub fn automorphisms(g: &IntMatrix, budget: u64) -> Result<Vec<IsometryMap>> {
    find_isometry(g, g, SearchMode::All, budget)
}

#[derive(Clone, Debug, Serialize)]
pub struct AutGroupResult {
    #[serde(serialize_with = "crate::serde_util::int")]
    pub order: BigInt,
    pub generators: Vec<IsometryMap>,
}

fn closure(gens: &[IntMatrix], n: usize) -> HashSet<IntMatrix> {
    let mut seen: HashSet<IntMatrix> = HashSet::new();
    let id = IntMatrix::identity(n);
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// Order of `{U : UᵀGU = G}` and a generating set chosen greedily in the
/// sorted element order.
pub fn automorphism_group(g: &IntMatrix, budget: u64) -> Result<AutGroupResult> {
    let all = automorphisms(g, budget)?;
    let n = g.rows();
    let mut gens: Vec<IntMatrix> = Vec::new();
    let mut sub = closure(&gens, n);
    for a in &all {
        if !sub.contains(&a.u) {
            gens.push(a.u.clone());
            sub = closure(&gens, n);
        }
    }
    debug_assert_eq!(sub.len(), all.len());
    Ok(AutGroupResult {
        order: BigInt::from(all.len()),
        generators: gens.into_iter().map(|u| IsometryMap { u }).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapeVerdict {
    pub equal: bool,
    /// `λ = r/s` with `λⁿ⁻¹ = Disc(O_K⊥)/Disc(O_L⊥)`, when rational.
    #[serde(serialize_with = "crate::serde_util::opt_rational")]
    pub lambda: Option<BigRational>,
    /// Certificate for `s·G_K⊥ ≅ r·G_L⊥`.
    pub witness: Option<IsometryMap>,
}

pub fn shape_compare(k: &NumberField, l: &NumberField, budget: u64) -> Result<ShapeVerdict> {
    if k.degree() != l.degree() {
        return Err(Error::DegreeMismatch(k.degree(), l.degree()));
    }
    for f in [k, l] {
        if !f.is_totally_real() {
            return Err(Error::NotTotallyReal(f.label().to_string()));
        }
    }
    let gk = perp_lattice(k).gram;
    let gl = perp_lattice(l).gram;
    let ratio = BigRational::new(gk.det_exact()?, gl.det_exact()?);
    let e = k.degree() as u32 - 1;
    let root = |x: &BigInt| if x.is_positive() { exact_root(x, e) } else { None };
    let (Some(r), Some(s)) = (root(ratio.numer()), root(ratio.denom())) else {
        return Ok(ShapeVerdict { equal: false, lambda: None, witness: None });
    };
    debug_assert!(r.gcd(&s).is_one());
    let witness = first_isometry(&gk.scale(&s), &gl.scale(&r), budget)?;
    Ok(ShapeVerdict { equal: witness.is_some(), lambda: Some(BigRational::new(r, s)), witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups() {
        let i2 = IntMatrix::identity(2);
        assert_eq!(automorphism_group(&i2, DEFAULT_BUDGET).unwrap().order, BigInt::from(8));
        let a2 = IntMatrix::from_i64(&[&[2, -1], &[-1, 2]]);
        assert_eq!(automorphism_group(&a2, DEFAULT_BUDGET).unwrap().order, BigInt::from(12));
        let g = IntMatrix::from_i64(&[&[2, 0], &[0, 4]]);
        let h = IntMatrix::from_i64(&[&[4, 0], &[0, 2]]);
        let m = first_isometry(&g, &h, DEFAULT_BUDGET).unwrap().unwrap();
        assert!(m.verify(&g, &h));
        assert_eq!(m.u.entries().filter(|x| x.is_one() || (-*x).is_one()).count(), 2);
        assert!(first_isometry(&g, &i2, DEFAULT_BUDGET).unwrap().is_none());
        assert!(first_isometry(&g, &g, DEFAULT_BUDGET).unwrap().unwrap().u.is_identity());
    }

    #[test]
    fn budget_is_enforced() {
        let i4 = IntMatrix::identity(4);
        assert!(matches!(automorphism_group(&i4, 10), Err(Error::BudgetExceeded(10))));
    }
}
