use std::ffi::{CStr, CString};
use std::ptr;

use associahedra_ffi::*;

fn build(c: AssocConstruction, n: usize) -> *mut AssocPolytope {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { assoc_build_default(c, n, &mut p) }, AssocStatus::Ok);
    assert!(!p.is_null());
    p
}

fn last_error() -> String {
    let e = assoc_last_error();
    assert!(!e.is_null());
    unsafe { CStr::from_ptr(e) }.to_string_lossy().into_owned()
}

#[test]
fn counts_and_pairs() {
    let p = build(AssocConstruction::Minkowski, 3);
    unsafe {
        assert_eq!(assoc_polytope_n(p), 3);
        assert_eq!(assoc_polytope_vertex_count(p), 14);
        let mut facets = 0;
        assert_eq!(assoc_polytope_facet_count(p, &mut facets), AssocStatus::Ok);
        assert_eq!(facets, 9);

        let mut count = 0;
        assert_eq!(assoc_parallel_pairs(p, ptr::null_mut(), 0, &mut count), AssocStatus::BufferTooSmall);
        assert_eq!(count, 3);
        let mut buf = vec![0usize; 4 * count];
        assert_eq!(assoc_parallel_pairs(p, buf.as_mut_ptr(), buf.len(), &mut count), AssocStatus::Ok);
        assert_eq!(buf, [0, 2, 1, 5, 0, 3, 2, 5, 0, 4, 3, 5]);
        assoc_polytope_free(p);
    }
}

#[test]
fn secondary_has_no_pairs() {
    let p = build(AssocConstruction::Secondary, 3);
    let mut count = 99;
    unsafe {
        assert_eq!(assoc_parallel_pairs(p, ptr::null_mut(), 0, &mut count), AssocStatus::Ok);
        assoc_polytope_free(p);
    }
    assert_eq!(count, 0);
}

#[test]
fn json_round_trip() {
    let p = build(AssocConstruction::Cluster, 2);
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(assoc_polytope_to_json(p, &mut s), AssocStatus::Ok);
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        let mut q = ptr::null_mut();
        assert_eq!(assoc_polytope_from_json(s, &mut q), AssocStatus::Ok);
        assoc_string_free(s);

        let mut s2 = ptr::null_mut();
        assert_eq!(assoc_polytope_to_json(q, &mut s2), AssocStatus::Ok);
        assert_eq!(CStr::from_ptr(s2).to_str().unwrap(), text);
        assoc_string_free(s2);

        let mut report = ptr::null_mut();
        assert_eq!(assoc_analyze_json(q, &mut report), AssocStatus::Ok);
        assert!(CStr::from_ptr(report).to_str().unwrap().contains("\"parallel_pairs\""));
        assoc_string_free(report);
        assoc_polytope_free(p);
        assoc_polytope_free(q);
    }
}

#[test]
fn params_and_errors() {
    let good = CString::new(r#"{"coords": [["0","0"],["1","0"],["1","1"],["0","1"]]}"#).unwrap();
    let bad = CString::new(r#"{"n": 1, "a": {"1,1": "-1", "1,2": "1", "2,2": "1"}}"#).unwrap();
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(assoc_build_with_params(AssocConstruction::Secondary, good.as_ptr(), &mut p), AssocStatus::Ok);
        assert_eq!(assoc_polytope_vertex_count(p), 2);
        assoc_polytope_free(p);

        let mut q = ptr::null_mut();
        assert_eq!(
            assoc_build_with_params(AssocConstruction::Minkowski, bad.as_ptr(), &mut q),
            AssocStatus::InvalidArgument
        );
        assert!(q.is_null());
        assert!(last_error().contains("weights"));

        assert_eq!(assoc_build_default(AssocConstruction::Cluster, 9, &mut q), AssocStatus::OutOfRange);
        assert_eq!(assoc_build_default(AssocConstruction::Cluster, 2, ptr::null_mut()), AssocStatus::NullPointer);
        let junk = CString::new("{").unwrap();
        assert_eq!(assoc_polytope_from_json(junk.as_ptr(), &mut q), AssocStatus::Parse);
        assert_eq!(assoc_polytope_n(ptr::null()), 0);
        assoc_polytope_free(ptr::null_mut());
        assoc_string_free(ptr::null_mut());
    }
}

#[test]
fn compare_verdicts() {
    let a = build(AssocConstruction::Cluster, 3);
    let b = build(AssocConstruction::Minkowski, 3);
    let c = build(AssocConstruction::Minkowski, 2);
    unsafe {
        let mut v = AssocVerdict::Inconclusive;
        let mut report = ptr::null_mut();
        assert_eq!(assoc_compare(a, b, &mut v, &mut report), AssocStatus::Ok);
        assert_eq!(v, AssocVerdict::NonEquivalent);
        assert!(CStr::from_ptr(report).to_str().unwrap().contains("special-profile"));
        assoc_string_free(report);

        assert_eq!(assoc_compare(b, b, &mut v, ptr::null_mut()), AssocStatus::Ok);
        assert_eq!(v, AssocVerdict::Equivalent);

        assert_eq!(assoc_compare(a, c, &mut v, ptr::null_mut()), AssocStatus::InvalidArgument);
        for p in [a, b, c] {
            assoc_polytope_free(p);
        }
    }
}
