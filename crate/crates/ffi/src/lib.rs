//! C ABI over the dyntwist engine.
//!
//! Objects cross the boundary as opaque handles released by their `_free`
//! function. Every fallible call returns a [`DtStatus`]; on failure the
//! message is available from [`dt_last_error`] until the next call on the
//! same thread. Strings handed out by the library are released with
//! [`dt_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dyntwist::cli::formats::{self, Loaded, TwistFile};
use dyntwist::comod::ComoduleAlgebraData;
use dyntwist::datum::{extract_twist_element, DynamicalDatum};
use dyntwist::hopf::HopfAlgebraData;
use dyntwist::report::Report;
use dyntwist::twist::{verify_twist, TwistElement};
use dyntwist::Error;

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DtStatus {
    Ok = 0,
    NullArgument = 1,
    Parse = 2,
    InvalidInput = 3,
    Hypothesis = 4,
    Consistency = 5,
    SizeCap = 6,
    Internal = 7,
}

impl From<&Error> for DtStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => DtStatus::Parse,
            Error::Hypothesis(_) => DtStatus::Hypothesis,
            Error::Consistency(_) => DtStatus::Consistency,
            Error::SizeCap(_) => DtStatus::SizeCap,
            _ => DtStatus::InvalidInput,
        }
    }
}

/// A Hopf algebra.
pub struct DtHopf {
    inner: Loaded<HopfAlgebraData>,
}

/// A left comodule algebra over a [`DtHopf`].
pub struct DtComodule {
    inner: Loaded<ComoduleAlgebraData>,
}

/// A dynamical datum (K, T) of the monomial family.
pub struct DtDatum {
    inner: DynamicalDatum,
}

/// A dynamical twist J ∈ H⊗H⊗S.
pub struct DtTwist {
    inner: TwistElement,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, recording failures and converting panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), (DtStatus, String)>) -> DtStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DtStatus::Ok,
        Ok(Err((s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            DtStatus::Internal
        }
    }
}

fn lift(e: Error) -> (DtStatus, String) {
    ((&e).into(), e.to_string())
}

fn null(what: &str) -> (DtStatus, String) {
    (DtStatus::NullArgument, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (DtStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (DtStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (DtStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), (DtStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (DtStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s)
        .map_err(|_| (DtStatus::Internal, "string contains NUL".into()))?
        .into_raw();
    Ok(())
}

fn report_json(r: &Report) -> String {
    serde_json::to_string(r).expect("reports serialize")
}

/// Message of the last failed call on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn dt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a Hopf algebra file.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dt_hopf_from_json(json: *const c_char, out: *mut *mut DtHopf) -> DtStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let inner = formats::load_hopf(text).map_err(lift)?;
        put(out, DtHopf { inner })
    })
}

/// Canonical JSON of a Hopf algebra.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dt_hopf_to_json(h: *const DtHopf, out: *mut *mut c_char) -> DtStatus {
    guard(|| {
        let h = deref(h, "hopf")?;
        put_string(out, formats::hopf_text(&h.inner.value))
    })
}

/// Dimension of H, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dt_hopf_dim(h: *const DtHopf) -> usize {
    h.as_ref().map_or(0, |h| h.inner.value.dim())
}

/// Runs the Hopf axiom checks; `all_pass` receives 1 or 0 and `report` the JSON report.
///
/// # Safety
/// `h` must be a live handle; the output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn dt_hopf_verify(
    h: *const DtHopf,
    all_pass: *mut i32,
    report: *mut *mut c_char,
) -> DtStatus {
    guard(|| {
        let r = deref(h, "hopf")?.inner.value.verify();
        write_verdict(&r, all_pass, report)
    })
}

unsafe fn write_verdict(
    r: &Report,
    all_pass: *mut i32,
    report: *mut *mut c_char,
) -> Result<(), (DtStatus, String)> {
    if all_pass.is_null() {
        return Err(null("all_pass"));
    }
    *all_pass = i32::from(r.all_pass());
    if !report.is_null() {
        put_string(report, report_json(r))?;
    }
    Ok(())
}

/// # Safety
/// `h` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn dt_hopf_free(h: *mut DtHopf) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Parses a comodule algebra file; its `hopf` reference must match `h`.
///
/// # Safety
/// `h` must be a live handle, `json` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dt_comodule_from_json(
    h: *const DtHopf,
    json: *const c_char,
    out: *mut *mut DtComodule,
) -> DtStatus {
    guard(|| {
        let h = deref(h, "hopf")?;
        let text = read_str(json, "json")?;
        let inner = formats::load_comodule(text, &h.inner).map_err(lift)?;
        put(out, DtComodule { inner })
    })
}

/// # Safety
/// `k` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn dt_comodule_free(k: *mut DtComodule) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// Built-in datum by name: "E0" or "E1".
///
/// # Safety
/// `name` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dt_datum_example(name: *const c_char, out: *mut *mut DtDatum) -> DtStatus {
    guard(|| {
        let inner = match read_str(name, "name")? {
            "E0" => DynamicalDatum::e0(),
            "E1" => DynamicalDatum::e1(),
            other => return Err((DtStatus::InvalidInput, format!("unknown example {other:?}"))),
        }
        .map_err(lift)?;
        put(out, DtDatum { inner })
    })
}

/// Parses and validates a datum file.
///
/// # Safety
/// `json` must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dt_datum_from_json(
    json: *const c_char,
    out: *mut *mut DtDatum,
) -> DtStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let inner = formats::load_datum(text)
            .and_then(|f| f.to_datum())
            .map_err(lift)?;
        put(out, DtDatum { inner })
    })
}

/// The ambient Hopf algebra of a datum as a new handle.
///
/// # Safety
/// `d` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dt_datum_hopf(d: *const DtDatum, out: *mut *mut DtHopf) -> DtStatus {
    guard(|| {
        let h = deref(d, "datum")?.inner.h.clone();
        let reference = formats::sha256_ref(formats::hopf_text(&h).as_bytes());
        put(
            out,
            DtHopf {
                inner: Loaded {
                    value: h,
                    reference,
                },
            },
        )
    })
}

/// # Safety
/// `d` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn dt_datum_free(d: *mut DtDatum) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Runs the twist pipeline on a datum.
///
/// # Safety
/// `d` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dt_compute_twist(d: *const DtDatum, out: *mut *mut DtTwist) -> DtStatus {
    guard(|| {
        let d = deref(d, "datum")?;
        let ex = extract_twist_element(&d.inner).map_err(lift)?;
        if !ex.report.all_pass() {
            return Err((
                DtStatus::Consistency,
                format!("pipeline checks failed:\n{}", ex.report),
            ));
        }
        put(out, DtTwist { inner: ex.twist })
    })
}

/// Parses a twist file over the given H and S.
///
/// # Safety
/// Handles must be live, `json` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dt_twist_from_json(
    h: *const DtHopf,
    s: *const DtComodule,
    json: *const c_char,
    out: *mut *mut DtTwist,
) -> DtStatus {
    guard(|| {
        let (h, s) = (deref(h, "hopf")?, deref(s, "comodule")?);
        let text = read_str(json, "json")?;
        let inner = formats::load_twist(text, &h.inner, &s.inner).map_err(lift)?;
        put(out, DtTwist { inner })
    })
}

/// Canonical JSON of a twist, with references to its H and S.
///
/// # Safety
/// `j` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dt_twist_to_json(j: *const DtTwist, out: *mut *mut c_char) -> DtStatus {
    guard(|| {
        let j = &deref(j, "twist")?.inner;
        let href = formats::sha256_ref(formats::hopf_text(j.hopf()).as_bytes());
        let sref = formats::sha256_ref(formats::comodule_text(j.base(), &href).as_bytes());
        put_string(
            out,
            formats::to_canonical(&TwistFile::from_twist(j, &href, &sref)),
        )
    })
}

/// Number of coefficients of J (dim H · dim H · dim S), or 0 for null.
///
/// # Safety
/// `j` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dt_twist_len(j: *const DtTwist) -> usize {
    j.as_ref().map_or(0, |j| j.inner.coeffs().len())
}

/// Runs the twist verifier.
///
/// # Safety
/// `j` must be a live handle; `all_pass` writable; `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn dt_twist_verify(
    j: *const DtTwist,
    all_pass: *mut i32,
    report: *mut *mut c_char,
) -> DtStatus {
    guard(|| {
        let r = verify_twist(&deref(j, "twist")?.inner);
        write_verdict(&r, all_pass, report)
    })
}

/// # Safety
/// `j` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn dt_twist_free(j: *mut DtTwist) {
    if !j.is_null() {
        drop(Box::from_raw(j));
    }
}
