use std::ffi::CStr;
use std::ptr;

use prm_ffi::*;

fn field(p: u32, e: u32) -> *mut PrmField {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { prm_field_new(p, e, &mut f) }, PrmStatus::Ok);
    f
}

fn last_error() -> String {
    let p = prm_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn field_arithmetic() {
    let f = field(2, 2);
    unsafe {
        assert_eq!(prm_field_order(f), 4);
        let mut out = 0;
        assert_eq!(prm_field_add(f, 1, 1, &mut out), PrmStatus::Ok);
        assert_eq!(out, 0);
        let mut inv = 0;
        assert_eq!(prm_field_inv(f, 2, &mut inv), PrmStatus::Ok);
        assert_eq!(prm_field_mul(f, 2, inv, &mut out), PrmStatus::Ok);
        assert_eq!(out, 1);
        assert_eq!(prm_field_inv(f, 0, &mut out), PrmStatus::DivisionByZero);
        assert!(!last_error().is_empty());
        assert_eq!(prm_field_add(f, 4, 0, &mut out), PrmStatus::OutOfRange);
        assert_eq!(prm_field_add(f, 1, 1, ptr::null_mut()), PrmStatus::NullPointer);
        prm_field_free(f);
    }
}

#[test]
fn bad_fields() {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { prm_field_new(6, 1, &mut f) }, PrmStatus::InvalidArgument);
    assert!(f.is_null());
    assert!(last_error().contains('6'));
    assert_eq!(unsafe { prm_field_new(3, 1, ptr::null_mut()) }, PrmStatus::NullPointer);
}

#[test]
fn formulas() {
    let mut v = 0u64;
    unsafe {
        assert_eq!(prm_omega_size(2, 2, &mut v), PrmStatus::Ok);
        assert_eq!(v, 6);
        let fr: Vec<u64> = (1..=6)
            .map(|r| {
                let mut x = 0;
                assert_eq!(prm_f(2, 2, 3, r, &mut x), PrmStatus::Ok);
                x
            })
            .collect();
        assert_eq!(fr, [7, 5, 4, 2, 1, 0]);
        assert_eq!(prm_h_prime(2, 2, 2, &mut v), PrmStatus::Ok);
        assert_eq!(v, 3);
        assert_eq!(prm_h(2, 2, 3, 1, &mut v), PrmStatus::Ok);
        assert_eq!(v, 6);
        assert_eq!(prm_f(2, 2, 2, 1, &mut v), PrmStatus::InvalidArgument);
        assert_eq!(prm_h(2, 2, 3, 7, &mut v), PrmStatus::OutOfRange);
    }
}

#[test]
fn construction_handle() {
    let f = field(5, 1);
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(prm_construct(f, 2, 2, 4, &mut c), PrmStatus::Ok);
        assert_eq!(prm_construction_verified_dim(c), 4);
        assert_eq!(prm_construction_verified_count(c), 2);
        let js = prm_construction_to_json(c);
        let text = CStr::from_ptr(js).to_str().unwrap().to_owned();
        prm_string_free(js);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["verified_count"], 2);
        prm_construction_free(c);
        assert_eq!(prm_construction_verified_count(ptr::null()), 0);
        assert!(prm_construction_to_json(ptr::null()).is_null());
        prm_field_free(f);
    }
}

#[test]
fn search_handles() {
    let f = field(3, 1);
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(prm_search_exhaustive(f, PrmObjective::ER as u32, 2, 2, 2, 2, 0, &mut s), PrmStatus::Ok);
        assert_eq!(prm_search_best_value(s), 5);
        let js = prm_search_to_json(s);
        assert!(CStr::from_ptr(js).to_str().unwrap().contains("\"best_value\":5"));
        prm_string_free(js);
        prm_search_free(s);

        assert_eq!(prm_search_exhaustive(f, PrmObjective::UrRational as u32, 2, 2, 3, 1, 0, &mut s), PrmStatus::Ok);
        assert_eq!(prm_search_best_value(s), 3);
        prm_search_free(s);

        assert_eq!(prm_search_exhaustive(f, 9, 2, 2, 3, 1, 0, &mut s), PrmStatus::InvalidArgument);
        assert_eq!(prm_search_exhaustive(f, 0, 2, 2, 3, 1, 10, &mut s), PrmStatus::BudgetExceeded);

        let run = || {
            let mut s = ptr::null_mut();
            assert_eq!(prm_search_randomized(f, 0, 2, 2, 3, 7, 100, 2, 1, &mut s), PrmStatus::Ok);
            let js = prm_search_to_json(s);
            let text = CStr::from_ptr(js).to_str().unwrap().to_owned();
            prm_string_free(js);
            prm_search_free(s);
            text
        };
        assert_eq!(run(), run());
        prm_field_free(f);
    }
}

#[test]
fn ghw_values() {
    let f = field(3, 1);
    let d: Vec<u64> = (1..=3)
        .map(|r| {
            let mut x = 0;
            assert_eq!(unsafe { prm_ghw(f, 1, 2, r, 1, &mut x) }, PrmStatus::Ok);
            x
        })
        .collect();
    assert_eq!(d, [9, 12, 13]);
    let mut x = 0;
    assert_eq!(unsafe { prm_ghw(f, 1, 2, 4, 1, &mut x) }, PrmStatus::OutOfRange);
    unsafe { prm_field_free(f) };
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(prm_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
