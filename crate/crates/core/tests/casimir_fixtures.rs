mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use tracelattice::casimir::{casimir_matrix, real_embeddings, DEFAULT_PRECISION};
use tracelattice::exact::RatMatrix;
use tracelattice::isometry::{automorphisms, find_isometry, SearchMode, DEFAULT_BUDGET};
use tracelattice::numberfield::{FieldElement, NumberField};

fn is_ring_map(k: &NumberField, f: &RatMatrix) -> bool {
    let n = k.degree();
    let img = |x: &FieldElement| {
        let v = f.mul_vec(&x.coords);
        FieldElement::new(v)
    };
    (0..n).all(|i| {
        (0..n).all(|j| {
            let (bi, bj) = (FieldElement::basis(n, i), FieldElement::basis(n, j));
            img(&k.mul(&bi, &bj).unwrap()) == k.mul(&img(&bi), &img(&bj)).unwrap()
        })
    })
}

#[test]
fn every_fixture_isometry_is_orthogonal() {
    let s = common::store();
    let real: Vec<_> = s.iter().filter(|f| f.field.is_totally_real()).collect();
    let mut count = 0;
    for a in &real {
        for b in &real {
            let (k, l) = (&a.field, &b.field);
            if k.degree() != l.degree() || k.disc() != l.disc() {
                continue;
            }
            let maps = find_isometry(&l.gram_trace(), &k.gram_trace(), SearchMode::All, DEFAULT_BUDGET).unwrap();
            for m in &maps {
                let u = casimir_matrix(k, l, &m.u.to_rational(), DEFAULT_PRECISION).unwrap();
                assert!(u.defect < 1e-8 && u.orthogonal, "{} -> {}", a.label(), b.label());
                count += 1;
            }
        }
    }
    assert!(count > 100);
}

#[test]
fn sextic_ring_automorphisms_permute_embeddings() {
    let s = common::store();
    let k = &s.get("sextic-453789").unwrap().field;
    let ring: Vec<_> = automorphisms(&k.gram_trace(), DEFAULT_BUDGET)
        .unwrap()
        .into_iter()
        .map(|m| m.u.to_rational())
        .filter(|f| is_ring_map(k, f))
        .collect();
    assert_eq!(ring.len(), 6);
    for f in &ring {
        let u = casimir_matrix(k, k, f, DEFAULT_PRECISION).unwrap();
        assert!(u.permutation_distance() < 1e-10);
    }
}

#[test]
fn random_non_isometries_have_large_defect() {
    let s = common::store();
    let k = &s.get("cubic-1425").unwrap().field;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let mut n = 0;
    while n < 100 {
        let f = RatMatrix::from_fn(3, 3, |_, _| BigRational::new(BigInt::from(rng.gen_range(-4..=4)), BigInt::from(rng.gen_range(1..=3))));
        let g = k.gram_trace().to_rational();
        if &(&f.transpose() * &g) * &f == g {
            continue;
        }
        let u = casimir_matrix(k, k, &f, DEFAULT_PRECISION).unwrap();
        assert!(u.defect > 0.1, "{f:?}");
        n += 1;
    }
}

#[test]
fn error_bound_shrinks_with_precision() {
    let s = common::store();
    for f in s.iter().filter(|f| f.field.is_totally_real()) {
        let k = &f.field;
        let id = RatMatrix::identity(k.degree());
        let a = casimir_matrix(k, k, &id, 24).unwrap();
        let b = casimir_matrix(k, k, &id, 48).unwrap();
        assert!(b.error_bound * 10.0 <= a.error_bound, "{}", f.label());
        assert_eq!(real_embeddings(k, 24).unwrap().roots.len(), k.degree());
    }
}
