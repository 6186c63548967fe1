mod common;

use num_bigint::BigInt;
use tracelattice::isometry::{automorphism_group, first_isometry, shape_compare, DEFAULT_BUDGET};
use tracelattice::sublattice::{lattice, LatticeKind};

fn order(label: &str, kind: LatticeKind) -> BigInt {
    let s = common::store();
    let l = lattice(&s.get(label).unwrap().field, kind).unwrap();
    automorphism_group(&l.gram, DEFAULT_BUDGET).unwrap().order
}

#[test]
fn cubic_automorphism_orders() {
    assert_eq!(order("cubic-1425", LatticeKind::Full), BigInt::from(2));
    assert_eq!(order("cubic-1425", LatticeKind::Perp), BigInt::from(2));
    assert_eq!(order("cubic-1425", LatticeKind::Zero), BigInt::from(4));
}

// values from PARI qfauto on the same Gram matrices
#[test]
fn quartic_automorphism_orders() {
    assert_eq!(order("quartic-1600", LatticeKind::Full), BigInt::from(16));
    assert_eq!(order("quartic-1600", LatticeKind::Perp), BigInt::from(8));
    assert_eq!(order("quartic-1600", LatticeKind::Zero), BigInt::from(8));
    assert_eq!(order("quartic-2624", LatticeKind::Full), BigInt::from(8));
    assert_eq!(order("quartic-2624", LatticeKind::Perp), BigInt::from(4));
}

#[test]
fn sextic_automorphism_orders() {
    assert_eq!(order("sextic-453789", LatticeKind::Full), BigInt::from(96));
    assert_eq!(order("sextic-453789", LatticeKind::Perp), BigInt::from(96));
    assert_eq!(order("sextic-453789", LatticeKind::Zero), BigInt::from(1440));
}

#[test]
fn quartic_pair_isometry_pattern() {
    let s = common::store();
    let k = &s.get("q-2688656").unwrap().field;
    let l = &s.get("q-disc-eq").unwrap().field;
    let iso = |kind| {
        let a = lattice(k, kind).unwrap().gram;
        let b = lattice(l, kind).unwrap().gram;
        first_isometry(&a, &b, DEFAULT_BUDGET).unwrap()
    };
    // PARI qfisom agrees: all three pairs of lattices are isometric
    assert!(iso(LatticeKind::Zero).is_some());
    assert!(iso(LatticeKind::Full).is_some());
    assert!(iso(LatticeKind::Perp).is_some());
    let v = shape_compare(k, l, DEFAULT_BUDGET).unwrap();
    assert!(v.equal);
    assert_eq!(v.lambda, Some(num_rational::BigRational::from_integer(1.into())));
}

#[test]
fn shape_of_a_field_with_itself() {
    let s = common::store();
    let k = &s.get("cubic-1425").unwrap().field;
    let v = shape_compare(k, k, DEFAULT_BUDGET).unwrap();
    assert!(v.equal);
    assert_eq!(v.lambda, Some(num_rational::BigRational::from_integer(1.into())));
    let other = &s.get("tr3-fund-1304").unwrap().field;
    let v = shape_compare(k, other, DEFAULT_BUDGET).unwrap();
    assert!(!v.equal && v.lambda.is_none());
}
