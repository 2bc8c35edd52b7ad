//! C interface to `prm-core`.
//!
//! Every fallible function returns a [`PrmStatus`] and writes results through
//! out-pointers. On failure the message is available from
//! [`prm_last_error_message`] on the same thread. Handles are opaque and must
//! be released with their `_free` function; strings returned as `char *` are
//! released with [`prm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use prm_core::combinatorics::{f, h, h_prime, omega_size};
use prm_core::constructions::{build_lower_bound_subspace, default_roots, ConstructionReport};
use prm_core::search::{exhaustive_search, ghw_table, randomized_search, Objective, SearchOptions, SearchReport};
use prm_core::{Error, FieldElement, FieldSpec};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    Overflow = 4,
    DivisionByZero = 5,
    VerificationFailed = 6,
    BudgetExceeded = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrmObjective {
    ER = 0,
    UrRational = 1,
}

/// A finite field `GF(p^e)`.
pub struct PrmField(FieldSpec);

/// Result of a lower-bound construction.
pub struct PrmConstruction(ConstructionReport);

/// Result of a subspace search.
pub struct PrmSearch(SearchReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PrmStatus {
    match e {
        Error::RankOutOfRange { .. } | Error::ForeignElement { .. } | Error::OrderTooLarge { .. } => {
            PrmStatus::OutOfRange
        }
        Error::Overflow(_) => PrmStatus::Overflow,
        Error::DivisionByZero(_) => PrmStatus::DivisionByZero,
        Error::RouteMismatch { .. } | Error::ConstructionFailed(_) | Error::DimensionMismatch(_) => {
            PrmStatus::VerificationFailed
        }
        Error::BudgetExceeded { .. } => PrmStatus::BudgetExceeded,
        Error::Infeasible | Error::AttemptsExhausted(_) => PrmStatus::Internal,
        _ => PrmStatus::InvalidArgument,
    }
}

/// Runs `body`, converting errors and panics into a status.
fn guard<F: FnOnce() -> Result<(), (PrmStatus, String)>>(body: F) -> PrmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            PrmStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PrmStatus::Internal
        }
    }
}

fn lib<T>(r: prm_core::Result<T>) -> Result<T, (PrmStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (PrmStatus, String) {
    (PrmStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (PrmStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), (PrmStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = v;
    Ok(())
}

fn to_u64(v: u128) -> Result<u64, (PrmStatus, String)> {
    u64::try_from(v).map_err(|_| (PrmStatus::Overflow, format!("{v} does not fit in 64 bits")))
}

fn json_string<T: serde::Serialize>(v: &T) -> *mut c_char {
    match serde_json::to_string(v) {
        Ok(s) => CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut()),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn prm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn prm_version() -> *const c_char {
    static V: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(c) => c,
        Err(_) => panic!("version string"),
    };
    V.as_ptr()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn prm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---- fields ----

/// Creates `GF(p^e)` with the default modulus.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prm_field_new(p: u32, e: u32, out: *mut *mut PrmField) -> PrmStatus {
    guard(|| {
        let f = lib(FieldSpec::new(p, e, None))?;
        write(out, Box::into_raw(Box::new(PrmField(f))))
    })
}

/// # Safety
/// `field` must be null or a handle from [`prm_field_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn prm_field_free(field: *mut PrmField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Field order `q`, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn prm_field_order(field: *const PrmField) -> u32 {
    field.as_ref().map_or(0, |f| f.0.order())
}

unsafe fn binary(
    field: *const PrmField,
    a: u32,
    b: u32,
    out: *mut u32,
    op: fn(&FieldSpec, FieldElement, FieldElement) -> prm_core::Result<FieldElement>,
) -> PrmStatus {
    guard(|| {
        let f = &deref(field, "field")?.0;
        let (x, y) = (lib(f.element(a))?, lib(f.element(b))?);
        let z = lib(op(f, x, y))?;
        write(out, z.index() as u32)
    })
}

/// # Safety
/// `field` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prm_field_add(field: *const PrmField, a: u32, b: u32, out: *mut u32) -> PrmStatus {
    binary(field, a, b, out, |f, x, y| Ok(f.add(x, y)))
}

/// # Safety
/// `field` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prm_field_sub(field: *const PrmField, a: u32, b: u32, out: *mut u32) -> PrmStatus {
    binary(field, a, b, out, |f, x, y| Ok(f.sub(x, y)))
}

/// # Safety
/// `field` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prm_field_mul(field: *const PrmField, a: u32, b: u32, out: *mut u32) -> PrmStatus {
    binary(field, a, b, out, |f, x, y| Ok(f.mul(x, y)))
}

/// # Safety
/// `field` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prm_field_div(field: *const PrmField, a: u32, b: u32, out: *mut u32) -> PrmStatus {
    binary(field, a, b, out, |f, x, y| f.div(x, y))
}

/// # Safety
/// `field` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prm_field_inv(field: *const PrmField, a: u32, out: *mut u32) -> PrmStatus {
    binary(field, a, 0, out, |f, x, _| f.inv(x))
}

// ---- formulas ----

/// `|Ω(d, m)| = C(m+d, d)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prm_omega_size(d: u32, m: u32, out: *mut u64) -> PrmStatus {
    guard(|| write(out, to_u64(omega_size(d, m))?))
}

/// `H_r(d, m; q)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prm_h(d: u32, m: u32, q: u64, r: u64, out: *mut u64) -> PrmStatus {
    guard(|| write(out, to_u64(lib(h(d, m, q as u128, r as u128))?)?))
}

/// `H'_{r'}(d, m)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prm_h_prime(d: u32, m: u32, r_prime: u64, out: *mut u64) -> PrmStatus {
    guard(|| write(out, to_u64(lib(h_prime(d, m, r_prime as u128))?)?))
}

/// `f_r(d, m; q)` for `q >= d + 1`; both evaluation routes must agree.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prm_f(d: u32, m: u32, q: u64, r: u64, out: *mut u64) -> PrmStatus {
    guard(|| write(out, to_u64(lib(f(d, m, q as u128, r as u128))?)?))
}

// ---- constructions ----

/// Builds and verifies the lower-bound subspace with the default roots.
///
/// # Safety
/// `field` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prm_construct(
    field: *const PrmField,
    d: u32,
    m: u32,
    r: u64,
    out: *mut *mut PrmConstruction,
) -> PrmStatus {
    guard(|| {
        let f = &deref(field, "field")?.0;
        let roots = lib(default_roots(d, f))?;
        let rep = lib(build_lower_bound_subspace(d, m, r as u128, f, &roots))?;
        write(out, Box::into_raw(Box::new(PrmConstruction(rep))))
    })
}

/// # Safety
/// `c` must be null or a live construction handle.
#[no_mangle]
pub unsafe extern "C" fn prm_construction_free(c: *mut PrmConstruction) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Measured `|V(W)(F_q)|`, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live construction handle.
#[no_mangle]
pub unsafe extern "C" fn prm_construction_verified_count(c: *const PrmConstruction) -> u64 {
    c.as_ref().map_or(0, |c| c.0.verified_count as u64)
}

/// Measured `dim W`, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live construction handle.
#[no_mangle]
pub unsafe extern "C" fn prm_construction_verified_dim(c: *const PrmConstruction) -> u64 {
    c.as_ref().map_or(0, |c| c.0.verified_dim as u64)
}

/// Full report as JSON; free with [`prm_string_free`]. Null on a null handle.
///
/// # Safety
/// `c` must be null or a live construction handle.
#[no_mangle]
pub unsafe extern "C" fn prm_construction_to_json(c: *const PrmConstruction) -> *mut c_char {
    c.as_ref().map_or(ptr::null_mut(), |c| json_string(&c.0))
}

// ---- searches ----

/// Maps a [`PrmObjective`] value; taken as an integer so foreign callers cannot pass an invalid enum.
fn objective(o: u32) -> Result<Objective, (PrmStatus, String)> {
    match o {
        x if x == PrmObjective::ER as u32 => Ok(Objective::ER),
        x if x == PrmObjective::UrRational as u32 => Ok(Objective::UrRational),
        _ => Err((PrmStatus::InvalidArgument, format!("unknown objective {o}"))),
    }
}

/// Exhaustive search over all `r`-dimensional subspaces of `S_d(m, F_q)`.
/// `workers = 0` means one; `budget = 0` means the library default.
///
/// # Safety
/// `field` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prm_search_exhaustive(
    field: *const PrmField,
    obj: u32,
    d: u32,
    m: u32,
    r: u32,
    workers: u32,
    budget: u64,
    out: *mut *mut PrmSearch,
) -> PrmStatus {
    guard(|| {
        let f = &deref(field, "field")?.0;
        let mut opts = SearchOptions { workers: workers.max(1) as usize, ..SearchOptions::default() };
        if budget > 0 {
            opts.budget = budget as u128;
        }
        let rep = lib(exhaustive_search(objective(obj)?, d, m, f, r as usize, opts))?;
        write(out, Box::into_raw(Box::new(PrmSearch(rep))))
    })
}

/// Seeded randomized search; deterministic for fixed arguments.
///
/// # Safety
/// `field` must be a live handle and `out` a valid pointer.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn prm_search_randomized(
    field: *const PrmField,
    obj: u32,
    d: u32,
    m: u32,
    r: u32,
    seed: u64,
    iterations: u64,
    chains: u32,
    workers: u32,
    out: *mut *mut PrmSearch,
) -> PrmStatus {
    guard(|| {
        let f = &deref(field, "field")?.0;
        let rep = lib(randomized_search(
            objective(obj)?,
            d,
            m,
            f,
            r as usize,
            seed,
            iterations,
            chains as usize,
            workers.max(1) as usize,
        ))?;
        write(out, Box::into_raw(Box::new(PrmSearch(rep))))
    })
}

/// # Safety
/// `s` must be null or a live search handle.
#[no_mangle]
pub unsafe extern "C" fn prm_search_free(s: *mut PrmSearch) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Best objective value found, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live search handle.
#[no_mangle]
pub unsafe extern "C" fn prm_search_best_value(s: *const PrmSearch) -> u64 {
    s.as_ref().map_or(0, |s| s.0.best_value)
}

/// Full report as JSON; free with [`prm_string_free`]. Null on a null handle.
///
/// # Safety
/// `s` must be null or a live search handle.
#[no_mangle]
pub unsafe extern "C" fn prm_search_to_json(s: *const PrmSearch) -> *mut c_char {
    s.as_ref().map_or(ptr::null_mut(), |s| json_string(&s.0))
}

// ---- codes ----

/// `d_r(PRM_q(d, m))` by subcode support enumeration, cross-checked against
/// the zero-count search; a disagreement is `VerificationFailed`.
///
/// # Safety
/// `field` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prm_ghw(
    field: *const PrmField,
    d: u32,
    m: u32,
    r: u32,
    workers: u32,
    out: *mut u64,
) -> PrmStatus {
    guard(|| {
        let f = &deref(field, "field")?.0;
        let opts = SearchOptions { workers: workers.max(1) as usize, ..SearchOptions::default() };
        let rows = lib(ghw_table(d, m, f, &[r as usize], opts))?;
        let row = &rows[0];
        if !row.agree {
            return Err((
                PrmStatus::VerificationFailed,
                format!("support enumeration {} vs zero count {}", row.d_r, row.d_r_from_e_r),
            ));
        }
        write(out, row.d_r as u64)
    })
}
