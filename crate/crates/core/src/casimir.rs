//! Real embeddings by Sturm isolation, and the Casimir matrix
//! `c_ij = Σₖ σᵢ(αₖ*)·τⱼ(φ(αₖ))` of a linear map between trace forms.
//!
//! All arithmetic is on rational intervals; the reported matrix is the
//! interval midpoints and `error_bound` is the largest half-width.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Poly, RatMatrix};
use crate::numberfield::NumberField;

pub const DEFAULT_PRECISION: u32 = 64;
pub const TOLERANCE: f64 = 1e-8;
const MAX_BISECTIONS: usize = 100_000;

/// A closed interval `[lo, hi]·2^-bits` with integer endpoints; products
/// round outward, so the true value always stays inside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub bits: u32,
}

impl Interval {
    pub fn from_rationals(lo: &BigRational, hi: &BigRational, bits: u32) -> Self {
        let s = BigRational::from_integer(BigInt::one() << bits);
        Interval { lo: (lo * &s).floor().to_integer(), hi: (hi * &s).ceil().to_integer(), bits }
    }

    pub fn point(x: &BigRational, bits: u32) -> Self {
        Self::from_rationals(x, x, bits)
    }

    fn unscale(&self, x: BigInt) -> BigRational {
        BigRational::new(x, BigInt::one() << self.bits)
    }

    pub fn mid(&self) -> BigRational {
        self.unscale(&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn radius(&self) -> BigRational {
        self.unscale(&self.hi - &self.lo) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, bits: self.bits }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().unwrap();
        let hi = p.iter().max().unwrap();
        let d = BigInt::one() << self.bits;
        Interval { lo: lo.div_floor(&d), hi: hi.div_ceil(&d), bits: self.bits }
    }
}

/// Isolating intervals `(lo, hi]` for the real roots of the defining
/// polynomial, in increasing order.
#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingSet {
    pub degree: usize,
    pub precision: u32,
    /// Each root lies in `(lo, hi]`.
    #[serde(skip)]
    pub roots: Vec<(BigRational, BigRational)>,
    pub approx: Vec<f64>,
    pub totally_real: bool,
}

impl EmbeddingSet {
    /// `σᵢ(x)` for `x` in power-basis coordinates.
    pub fn eval(&self, i: usize, coords: &[BigRational]) -> Interval {
        let bits = self.bits();
        let r = Interval::from_rationals(&self.roots[i].0, &self.roots[i].1, bits);
        let mut acc = Interval::point(&BigRational::zero(), bits);
        for c in coords.iter().rev() {
            acc = acc.mul(&r).add(&Interval::point(c, bits));
        }
        acc
    }

    /// Fixed-point width: the requested digits plus guard bits.
    pub fn bits(&self) -> u32 {
        bits_for(self.precision)
    }
}

fn ten_pow_neg(p: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(p))
}

type Bracket = (BigRational, BigRational);

fn isolate(f: &Poly, chain: &[Poly], lo: BigRational, hi: BigRational, out: &mut Vec<Bracket>, steps: &mut usize) -> Result<()> {
    let c = f.count_roots_in(chain, &lo, &hi);
    if c == 0 {
        return Ok(());
    }
    if c == 1 {
        out.push((lo, hi));
        return Ok(());
    }
    *steps += 1;
    if *steps > MAX_BISECTIONS {
        return Err(Error::RefinementBudget(MAX_BISECTIONS));
    }
    let m = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
    isolate(f, chain, lo, m.clone(), out, steps)?;
    isolate(f, chain, m, hi, out, steps)
}

fn bits_for(precision: u32) -> u32 {
    (precision as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64
}

/// Sign of `f(m / 2^bits)`, from the homogenized integer value.
fn sign_scaled(f: &[BigInt], m: &BigInt, bits: u32) -> i32 {
    let n = f.len() - 1;
    let mut acc = f[n].clone();
    for i in (0..n).rev() {
        acc = acc * m + (&f[i] << (bits as usize * (n - i)));
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

fn compute_embeddings(poly: &[BigInt], precision: u32) -> Result<EmbeddingSet> {
    let f = Poly::from_integers(poly);
    let chain = f.sturm_chain();
    let b = f.root_bound();
    let mut roots = Vec::new();
    let mut steps = 0;
    isolate(&f, &chain, -b.clone(), b, &mut roots, &mut steps)?;
    let bits = bits_for(precision);
    let scale = BigRational::from_integer(BigInt::one() << bits);
    let width = ((BigInt::one() << bits) * BigInt::one()) / BigInt::from(10).pow(precision);
    for r in roots.iter_mut() {
        let mut lo = (&r.0 * &scale).floor().to_integer();
        let mut hi = (&r.1 * &scale).ceil().to_integer();
        let (lq, hq) = (BigRational::new(lo.clone(), BigInt::one() << bits), BigRational::new(hi.clone(), BigInt::one() << bits));
        if f.count_roots_in(&chain, &lq, &hq) != 1 {
            // the rounded bracket caught a neighbour; keep the exact one
            continue;
        }
        let s_hi = sign_scaled(poly, &hi, bits);
        let mut n = 0;
        while &hi - &lo > width && s_hi != 0 {
            n += 1;
            if n > MAX_BISECTIONS {
                return Err(Error::RefinementBudget(MAX_BISECTIONS));
            }
            let m: BigInt = (&lo + &hi) >> 1;
            let sm = sign_scaled(poly, &m, bits);
            if sm == 0 {
                lo = m.clone();
                hi = m;
            } else if sm == s_hi {
                hi = m;
            } else {
                lo = m;
            }
        }
        if s_hi == 0 {
            lo = hi.clone();
        }
        *r = (BigRational::new(lo, BigInt::one() << bits), BigRational::new(hi, BigInt::one() << bits));
    }
    for r in roots.iter_mut() {
        // brackets skipped above are refined exactly
        let mut n = 0;
        while &r.1 - &r.0 > ten_pow_neg(precision) {
            n += 1;
            if n > MAX_BISECTIONS {
                return Err(Error::RefinementBudget(MAX_BISECTIONS));
            }
            let m = (&r.0 + &r.1) / BigRational::from_integer(BigInt::from(2));
            if f.count_roots_in(&chain, &r.0, &m) == 1 {
                r.1 = m;
            } else {
                r.0 = m;
            }
        }
    }
    let degree = poly.len() - 1;
    Ok(EmbeddingSet {
        degree,
        precision,
        approx: roots.iter().map(|r| ((&r.0 + &r.1) / BigRational::from_integer(BigInt::from(2))).to_f64().unwrap_or(f64::NAN)).collect(),
        totally_real: roots.len() == degree,
        roots,
    })
}

type Cache = Mutex<HashMap<(Vec<BigInt>, u32), Arc<EmbeddingSet>>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Real embeddings of `K`, each root pinned to width `10^-precision`.
/// Fields with complex places give the partial set of real ones.
pub fn real_embeddings(k: &NumberField, precision: u32) -> Result<Arc<EmbeddingSet>> {
    let key = (k.poly().to_vec(), precision);
    if let Some(e) = cache().lock().unwrap().get(&key) {
        return Ok(e.clone());
    }
    let e = Arc::new(compute_embeddings(k.poly(), precision)?);
    cache().lock().unwrap().insert(key, e.clone());
    Ok(e)
}

#[derive(Clone, Debug, Serialize)]
pub struct CasimirMatrix {
    pub entries: Vec<Vec<f64>>,
    pub precision: u32,
    pub error_bound: f64,
    /// `‖UᵀU − I‖∞`.
    pub defect: f64,
    pub tolerance: f64,
    pub orthogonal: bool,
    pub escalated: bool,
}

impl CasimirMatrix {
    /// Distance from the entries to the nearest signed permutation matrix,
    /// when every row has a unique largest entry.
    pub fn permutation_distance(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for row in &self.entries {
            let (jmax, _) = row
                .iter()
                .enumerate()
                .fold((0, 0.0f64), |(bj, bv), (j, v)| if v.abs() > bv { (j, v.abs()) } else { (bj, bv) });
            for (j, v) in row.iter().enumerate() {
                let d = if j == jmax { (v.abs() - 1.0).abs() } else { v.abs() };
                worst = worst.max(d);
            }
        }
        worst
    }
}

fn matrix_at(k: &NumberField, l: &NumberField, phi: &RatMatrix, precision: u32) -> Result<(Vec<Vec<Interval>>, f64)> {
    let n = k.degree();
    let ek = real_embeddings(k, precision)?;
    let el = real_embeddings(l, precision)?;
    let ginv = k.gram_trace().to_rational().inverse()?;
    let dual = &ginv * k.basis();
    let images = &phi.transpose() * l.basis();
    let a: Vec<Vec<Interval>> = (0..n).map(|i| (0..n).map(|kk| ek.eval(i, dual.row(kk))).collect()).collect();
    let b: Vec<Vec<Interval>> = (0..n).map(|kk| (0..n).map(|j| el.eval(j, images.row(kk))).collect()).collect();
    let zero = Interval::point(&BigRational::zero(), ek.bits());
    let mut u = vec![vec![zero.clone(); n]; n];
    let mut bound = BigRational::zero();
    for i in 0..n {
        for j in 0..n {
            let mut acc = zero.clone();
            for kk in 0..n {
                acc = acc.add(&a[i][kk].mul(&b[kk][j]));
            }
            let r = acc.radius();
            if r > bound {
                bound = r;
            }
            u[i][j] = acc;
        }
    }
    Ok((u, bound.to_f64().unwrap_or(f64::INFINITY)))
}

/// `φ` maps `K → L`; column `j` holds the image of `K`'s `j`-th integral
/// basis element in `L`'s integral basis.
pub fn casimir_matrix(k: &NumberField, l: &NumberField, phi: &RatMatrix, precision: u32) -> Result<CasimirMatrix> {
    for f in [k, l] {
        if !f.is_totally_real() {
            return Err(Error::NotTotallyReal(f.label().to_string()));
        }
    }
    let n = k.degree();
    if n != l.degree() {
        return Err(Error::DegreeMismatch(n, l.degree()));
    }
    if phi.rows() != n || phi.cols() != n {
        return Err(Error::DimensionMismatch(format!("map must be {n}x{n}")));
    }
    let limit = TOLERANCE / 10.0;
    let (mut u, mut bound) = matrix_at(k, l, phi, precision)?;
    let mut used = precision;
    let escalated = bound > limit;
    if escalated {
        used = precision * 2;
        (u, bound) = matrix_at(k, l, phi, used)?;
        if bound > limit {
            return Err(Error::PrecisionFailure { bound, limit });
        }
    }
    let mids: Vec<Vec<BigRational>> = u.iter().map(|r| r.iter().map(Interval::mid).collect()).collect();
    let mut defect = BigRational::zero();
    for i in 0..n {
        for j in 0..n {
            let mut s: BigRational = (0..n).map(|kk| &mids[kk][i] * &mids[kk][j]).sum();
            if i == j {
                s -= BigRational::one();
            }
            if s.abs() > defect {
                defect = s.abs();
            }
        }
    }
    let defect = defect.to_f64().unwrap_or(f64::INFINITY);
    Ok(CasimirMatrix {
        entries: mids.iter().map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect(),
        precision: used,
        error_bound: bound,
        defect,
        tolerance: TOLERANCE,
        orthogonal: defect < TOLERANCE,
        escalated,
    })
}
