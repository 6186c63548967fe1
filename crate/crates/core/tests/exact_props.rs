mod common;

use common::oracles::cofactor_det;
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use tracelattice::exact::{is_fundamental_discriminant, is_squarefree, smith_form, IntMatrix};

fn matrix(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(lo..=hi, n), n)
}

fn int(m: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_fn(m.len(), m.len(), |i, j| BigInt::from(m[i][j]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn det_matches_cofactor_expansion(m in (1usize..=4).prop_flat_map(|n| matrix(n, -3, 3))) {
        prop_assert_eq!(int(&m).det_exact().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn adjugate_identity(m in (1usize..=5).prop_flat_map(|n| matrix(n, -9, 9))) {
        let a = int(&m);
        let d = a.det_exact().unwrap();
        prop_assert_eq!(&a * &a.adjugate().unwrap(), IntMatrix::identity(m.len()).scale(&d));
    }

    #[test]
    fn smith_form_invariants(m in (1usize..=4).prop_flat_map(|n| matrix(n, -9, 9))) {
        let a = int(&m);
        let s = smith_form(&a);
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.d.clone());
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let inv = s.invariants();
        for w in inv.windows(2) {
            prop_assert!(w[1].is_zero_or_multiple(&w[0]));
        }
        let det = a.det_exact().unwrap();
        if det != BigInt::from(0) {
            let prod: BigInt = inv.iter().product();
            prop_assert_eq!(prod, det.abs());
        }
    }

    #[test]
    fn rectangular_smith(rows in 1usize..=4, cols in 1usize..=4, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-6..=6)));
        let s = smith_form(&a);
        prop_assert_eq!(&(&s.u * &a) * &s.v, s.d);
    }
}

trait ZeroOrMultiple {
    fn is_zero_or_multiple(&self, d: &BigInt) -> bool;
}

impl ZeroOrMultiple for BigInt {
    fn is_zero_or_multiple(&self, d: &BigInt) -> bool {
        use num_integer::Integer;
        use num_traits::Zero;
        self.is_zero() || (!d.is_zero() && self.is_multiple_of(d))
    }
}

#[test]
fn fundamental_discriminants_match_definition() {
    for d in -10_000i64..=10_000 {
        if d == 0 {
            continue;
        }
        let got = is_fundamental_discriminant(&BigInt::from(d)).unwrap();
        assert_eq!(got, common::oracles::fundamental_by_definition(d), "d = {d}");
        assert_eq!(is_squarefree(&BigInt::from(d)).unwrap(), common::oracles::squarefree_by_trial(d));
    }
}

#[test]
fn squarefree_examples() {
    assert!(!is_squarefree(&BigInt::from(1425)).unwrap());
    assert!(is_squarefree(&BigInt::from(15)).unwrap());
    assert!(!is_squarefree(&BigInt::from(453789)).unwrap());
    assert!(is_squarefree(&BigInt::from(0)).is_err());
    // a product of two primes near 2³²
    let n = BigInt::from(4294967291u64) * BigInt::from(4294967279u64);
    assert!(is_squarefree(&n).unwrap());
    assert!(!is_squarefree(&(BigInt::from(4294967291u64) * BigInt::from(4294967291u64))).unwrap());
}
