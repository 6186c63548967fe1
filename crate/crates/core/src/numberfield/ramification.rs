use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::NumberField;
use crate::error::{Error, Result};
use crate::exact::{is_fundamental_discriminant, prime_divisors, valuation};

/// Splitting data of one rational prime: `(e, f)` for each prime above it,
/// and the valuation of the different at that prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRamification {
    pub p: u64,
    pub shape: Vec<(u32, u32)>,
    pub v_different: Vec<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationData {
    pub primes: Vec<PrimeRamification>,
}

impl RamificationData {
    pub fn get(&self, p: u64) -> Option<&PrimeRamification> {
        self.primes.iter().find(|r| r.p == p)
    }

    /// Checks `Σ eᵢfᵢ = n` and positivity at every listed prime.
    pub fn validate(&self, n: usize) -> Result<()> {
        for r in &self.primes {
            let bad = |m: &str| Error::InvalidField(format!("ramification at {}: {m}", r.p));
            if r.shape.len() != r.v_different.len() || r.shape.is_empty() {
                return Err(bad("shape and v_different lengths differ"));
            }
            if r.shape.iter().any(|&(e, f)| e == 0 || f == 0) {
                return Err(bad("e and f must be positive"));
            }
            let total: u64 = r.shape.iter().map(|&(e, f)| e as u64 * f as u64).sum();
            if total != n as u64 {
                return Err(bad("sum of e*f differs from the degree"));
            }
        }
        Ok(())
    }
}

/// `min over 𝔭 | p of ⌊v_𝔭(𝒟) / e(𝔭|p)⌋`, which equals `v_p(k)`.
pub fn maurer_vp(ram: &RamificationData, p: u64) -> Result<u32> {
    let r = ram.get(p).ok_or(Error::PrimeNotListed(p))?;
    Ok(r.shape.iter().zip(&r.v_different).map(|(&(e, _), &v)| v / e).min().unwrap_or(0))
}

/// No listed prime divides one of its ramification indices.
pub fn is_tame(ram: &RamificationData) -> bool {
    ram.primes.iter().all(|r| r.shape.iter().all(|&(e, _)| !(e as u64).is_multiple_of(r.p)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceSurjectivityReport {
    pub n: usize,
    #[serde(serialize_with = "crate::serde_util::int")]
    pub k: BigInt,
    /// Every prime `p | n` has `pⁿ ∤ Disc`.
    pub cond_i: bool,
    /// Tame at every `p | n`; `None` without ramification data for all of them.
    pub cond_ii: Option<bool>,
    /// Fundamental discriminant with `n > 2`; `None` when `n ≤ 2`.
    pub cond_iii: Option<bool>,
    pub k_is_one: bool,
    /// `v_p(k)` against the min-floor formula at each listed `p | n`.
    pub maurer: Vec<(u64, u32, u32)>,
    pub violations: Vec<String>,
    pub consistent: bool,
}

pub fn check_trace_surjectivity(
    k: &NumberField,
    ram: Option<&RamificationData>,
) -> Result<TraceSurjectivityReport> {
    let n = k.degree();
    let nb = BigInt::from(n);
    let ps = prime_divisors(&nb)?;
    let ki = k.trace_image();
    let disc = k.disc();
    let cond_i = ps.iter().all(|&p| (valuation(disc, p) as usize) < n);
    let cond_ii = ram.and_then(|r| {
        ps.iter()
            .map(|&p| r.get(p).map(|pr| pr.shape.iter().all(|&(e, _)| !(e as u64).is_multiple_of(p))))
            .collect::<Option<Vec<bool>>>()
            .map(|v| v.into_iter().all(|b| b))
    });
    let cond_iii = if n > 2 { Some(is_fundamental_discriminant(disc)?) } else { None };
    let k_is_one = ki.is_one();

    let mut violations = Vec::new();
    if cond_i && !k_is_one {
        violations.push("condition (i) holds but k != 1".to_string());
    }
    if cond_ii == Some(true) && !k_is_one {
        violations.push("condition (ii) holds but k != 1".to_string());
    }
    if cond_iii == Some(true) && !k_is_one {
        violations.push("condition (iii) holds but k != 1".to_string());
    }
    if n == 4 && k_is_one && !cond_i {
        violations.push("n = 4 and k = 1 but condition (i) fails".to_string());
    }
    let n_prime = ps.len() == 1 && ps[0] == n as u64;
    if n_prime && k_is_one && !cond_i {
        violations.push("n prime and k = 1 but condition (i) fails".to_string());
    }
    if n_prime && k_is_one && cond_ii == Some(false) {
        violations.push("n prime and k = 1 but condition (ii) fails".to_string());
    }
    let mut maurer = Vec::new();
    if let Some(r) = ram {
        for &p in &ps {
            if r.get(p).is_some() {
                let m = maurer_vp(r, p)?;
                let v = valuation(&ki, p);
                if m != v {
                    violations.push(format!("v_{p}(k) = {v} but the different gives {m}"));
                }
                maurer.push((p, v, m));
            }
        }
    }
    Ok(TraceSurjectivityReport {
        n,
        k: ki,
        cond_i,
        cond_ii,
        cond_iii,
        k_is_one,
        maurer,
        consistent: violations.is_empty(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(p: u64, e: u32, v: u32) -> RamificationData {
        RamificationData { primes: vec![PrimeRamification { p, shape: vec![(e, 1)], v_different: vec![v] }] }
    }

    #[test]
    fn floor_formula() {
        assert_eq!(maurer_vp(&single(3, 3, 2), 3).unwrap(), 0);
        assert_eq!(maurer_vp(&single(2, 2, 3), 2).unwrap(), 1);
        assert_eq!(maurer_vp(&single(2, 4, 11), 2).unwrap(), 2);
        assert!(matches!(maurer_vp(&single(2, 2, 3), 5), Err(Error::PrimeNotListed(5))));
    }

    #[test]
    fn validation() {
        assert!(single(2, 2, 3).validate(2).is_ok());
        assert!(single(2, 2, 3).validate(3).is_err());
        assert!(is_tame(&single(3, 2, 1)));
        assert!(!is_tame(&single(2, 2, 3)));
    }
}
