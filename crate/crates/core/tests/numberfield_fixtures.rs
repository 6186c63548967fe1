mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use tracelattice::exact::{is_fundamental_discriminant, is_squarefree, valuation};
use tracelattice::numberfield::{check_trace_surjectivity, is_tame, maurer_vp};

#[test]
fn every_fixture_gram_determinant_is_the_declared_disc() {
    let s = common::store();
    assert!(s.len() >= 20);
    for f in s.iter() {
        assert_eq!(f.field.gram_trace().det_exact().unwrap(), f.declared_disc, "{}", f.label());
        let m4 = f.field.disc().mod_floor(&BigInt::from(4));
        assert!(m4.is_zero() || m4.is_one(), "{}", f.label());
    }
}

#[test]
fn trace_image_divides_degree_and_matches_the_different() {
    for f in common::store().iter() {
        let n = BigInt::from(f.field.degree());
        let k = f.field.trace_image();
        assert!(n.is_multiple_of(&k), "{}", f.label());
        let ram = f.ramification.as_ref().expect("shipped fixtures carry ramification");
        for r in &ram.primes {
            if n.is_multiple_of(&BigInt::from(r.p)) {
                assert_eq!(valuation(&k, r.p), maurer_vp(ram, r.p).unwrap(), "{} at {}", f.label(), r.p);
            }
        }
        let rep = check_trace_surjectivity(&f.field, Some(ram)).unwrap();
        assert!(rep.consistent, "{}: {:?}", f.label(), rep.violations);
    }
}

#[test]
fn tame_fundamental_discriminants_are_squarefree() {
    let mut seen = 0;
    for f in common::store().iter() {
        let ram = f.ramification.as_ref().unwrap();
        if is_tame(ram) && is_fundamental_discriminant(f.field.disc()).unwrap() {
            assert!(is_squarefree(f.field.disc()).unwrap(), "{}", f.label());
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn worked_examples() {
    let s = common::store();
    let cubic = s.get("cubic-1425").unwrap();
    assert_eq!(cubic.field.disc(), &BigInt::from(1425));
    assert!(cubic.field.trace_image().is_one());
    let rep = check_trace_surjectivity(&cubic.field, cubic.ramification.as_ref()).unwrap();
    assert!(rep.cond_i && rep.k_is_one && rep.consistent);

    let q = s.get("quartic-1600").unwrap();
    assert_eq!(q.field.disc(), &BigInt::from(1600));
    assert_eq!(q.field.trace_image(), BigInt::from(2));
    let rep = check_trace_surjectivity(&q.field, q.ramification.as_ref()).unwrap();
    assert!(!rep.cond_i && rep.consistent);

    let z = s.get("zsqrt2").unwrap();
    let rep = check_trace_surjectivity(&z.field, z.ramification.as_ref()).unwrap();
    assert_eq!(rep.cond_iii, None);
    assert_eq!(rep.k, BigInt::from(2));
    assert!(rep.consistent);

    let sextic = s.get("sextic-453789").unwrap();
    assert_eq!(sextic.field.disc(), &BigInt::from(453789));
    assert!(sextic.field.is_totally_real());
    assert!(!s.get("gaussian").unwrap().field.is_totally_real());
    assert!(!s.get("pure-cubic-2").unwrap().field.is_totally_real());
    assert_eq!(cubic.cyclic_prime_degree(), None);
    assert_eq!(s.get("cubic-c3-49").unwrap().cyclic_prime_degree(), Some(3));
}

#[test]
fn malformed_fixture_reports_file_and_line() {
    let err = tracelattice::fixtures::Fixture::from_json("{\n \"label\": 3\n}", "bad.json").unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("bad.json") && msg.contains("line 2"), "{msg}");
}
