//! C ABI over `pic2cone`.
//!
//! Scenarios and group profiles are opaque handles owned by the caller and
//! released with their `_free` functions. Every fallible call returns a
//! [`P2cStatus`]; on failure [`p2c_last_error`] describes what went wrong.
//! Strings handed out by the library must be released with
//! [`p2c_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pic2cone::commands::{self, CommandError, Options};
use pic2cone::fundom;
use pic2cone::groupclass::{self, Action, ActionScenario, GroupKind, GroupProfile};
use pic2cone::scenario;
use pic2cone::Ray;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum P2cStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidScenario = 4,
    Classify = 5,
    Domain = 6,
    /// A matrix entry does not fit in `int64_t`.
    Overflow = 7,
    Io = 8,
    /// The requested field is absent, e.g. alpha of a finite group.
    NotPresent = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum P2cAction {
    Aut = 0,
    Bir = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum P2cGroupKind {
    Trivial = 0,
    OrderTwo = 1,
    InfiniteCyclic = 2,
    InfiniteDihedral = 3,
}

/// Opaque parsed scenario.
pub struct P2cScenario {
    inner: ActionScenario,
}

/// Opaque classification result for one action.
pub struct P2cProfile {
    inner: GroupProfile,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: P2cStatus, msg: impl AsRef<str>) -> P2cStatus {
    set_error(msg.as_ref());
    status
}

fn command_status(e: &CommandError) -> P2cStatus {
    match e {
        CommandError::Scenario(_) => P2cStatus::Parse,
        CommandError::Invalid(_) => P2cStatus::InvalidScenario,
        CommandError::Classify(_) => P2cStatus::Classify,
        CommandError::Domain(_) => P2cStatus::Domain,
        CommandError::Usage(_) => P2cStatus::Parse,
        CommandError::Io(_) => P2cStatus::Io,
    }
}

fn guard(f: impl FnOnce() -> P2cStatus) -> P2cStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(P2cStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, P2cStatus> {
    if p.is_null() {
        return Err(fail(P2cStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(P2cStatus::InvalidUtf8, "argument is not UTF-8"))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nuls removed").into_raw()
}

fn action(a: P2cAction) -> Action {
    match a {
        P2cAction::Aut => Action::Aut,
        P2cAction::Bir => Action::Bir,
    }
}

/// Message for the most recent failure on this thread. Valid until the next
/// failing call; never null.
#[no_mangle]
pub extern "C" fn p2c_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parse scenario text. On success `*out` owns a new handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn p2c_scenario_parse(text: *const c_char, out: *mut *mut P2cScenario) -> P2cStatus {
    guard(|| {
        if out.is_null() {
            return fail(P2cStatus::NullArgument, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match scenario::parse_scenario(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(P2cScenario { inner }));
                P2cStatus::Ok
            }
            Err(e) => fail(P2cStatus::Parse, e.to_string()),
        }
    })
}

/// Read and parse a scenario file.
///
/// # Safety
/// `path` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn p2c_scenario_load(path: *const c_char, out: *mut *mut P2cScenario) -> P2cStatus {
    guard(|| {
        let path = match read_str(path) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match std::fs::read_to_string(path) {
            Ok(text) => {
                let c = CString::new(text.replace('\0', " ")).expect("interior nuls removed");
                p2c_scenario_parse(c.as_ptr(), out)
            }
            Err(e) => fail(P2cStatus::Io, format!("{path}: {e}")),
        }
    })
}

/// # Safety
/// `s` must be null or a handle from `p2c_scenario_parse`/`p2c_scenario_load`
/// that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn p2c_scenario_free(s: *mut P2cScenario) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Classify the group acting on the nef (`Aut`) or movable (`Bir`) cone.
///
/// # Safety
/// `s` must be a live scenario handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn p2c_classify(s: *const P2cScenario, act: P2cAction, out: *mut *mut P2cProfile) -> P2cStatus {
    guard(|| {
        if s.is_null() || out.is_null() {
            return fail(P2cStatus::NullArgument, "null argument");
        }
        let s = &(*s).inner;
        let v = s.invariant_violations();
        if !v.is_empty() {
            return fail(P2cStatus::InvalidScenario, v.join("; "));
        }
        let a = action(act);
        match groupclass::classify(&s.generators_for(a), s.cone(a)) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(P2cProfile { inner }));
                P2cStatus::Ok
            }
            Err(e) => fail(P2cStatus::Classify, e.to_string()),
        }
    })
}

/// # Safety
/// `p` must be null or a live handle from `p2c_classify`.
#[no_mangle]
pub unsafe extern "C" fn p2c_profile_free(p: *mut P2cProfile) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live profile handle.
#[no_mangle]
pub unsafe extern "C" fn p2c_profile_kind(p: *const P2cProfile) -> P2cGroupKind {
    match (*p).inner.kind {
        GroupKind::Trivial => P2cGroupKind::Trivial,
        GroupKind::OrderTwo => P2cGroupKind::OrderTwo,
        GroupKind::InfiniteCyclic => P2cGroupKind::InfiniteCyclic,
        GroupKind::InfiniteDihedral => P2cGroupKind::InfiniteDihedral,
    }
}

/// Expansion factor of the plus generator in the canonical text encoding.
///
/// # Safety
/// `p` must be a live profile handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn p2c_profile_alpha(p: *const P2cProfile, out: *mut *mut c_char) -> P2cStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return fail(P2cStatus::NullArgument, "null argument");
        }
        match &(*p).inner.alpha {
            Some(a) => {
                *out = to_c_string(a.to_string());
                P2cStatus::Ok
            }
            None => fail(P2cStatus::NotPresent, "finite group has no expansion factor"),
        }
    })
}

unsafe fn write_matrix(m: Option<&pic2cone::LatMat>, out: *mut i64, what: &str) -> P2cStatus {
    if out.is_null() {
        return fail(P2cStatus::NullArgument, "null output buffer");
    }
    let Some(m) = m else { return fail(P2cStatus::NotPresent, format!("profile has no {what}")) };
    let e = m.entries();
    let flat = [&e[0][0], &e[0][1], &e[1][0], &e[1][1]];
    let mut vals = [0i64; 4];
    for (v, x) in vals.iter_mut().zip(flat) {
        match i64::try_from(x) {
            Ok(n) => *v = n,
            Err(_) => return fail(P2cStatus::Overflow, format!("{what} entry {x} exceeds int64_t")),
        }
    }
    ptr::copy_nonoverlapping(vals.as_ptr(), out, 4);
    P2cStatus::Ok
}

/// Row-major entries of the plus generator into `out[0..4]`.
///
/// # Safety
/// `p` must be a live profile handle; `out` must have room for 4 values.
#[no_mangle]
pub unsafe extern "C" fn p2c_profile_plus_generator(p: *const P2cProfile, out: *mut i64) -> P2cStatus {
    guard(|| {
        if p.is_null() {
            return fail(P2cStatus::NullArgument, "null profile");
        }
        write_matrix((*p).inner.plus_generator.as_ref(), out, "plus generator")
    })
}

/// Row-major entries of the `det = -1` representative into `out[0..4]`.
///
/// # Safety
/// As for `p2c_profile_plus_generator`.
#[no_mangle]
pub unsafe extern "C" fn p2c_profile_minus_rep(p: *const P2cProfile, out: *mut i64) -> P2cStatus {
    guard(|| {
        if p.is_null() {
            return fail(P2cStatus::NullArgument, "null profile");
        }
        write_matrix((*p).inner.minus_rep.as_ref(), out, "minus representative")
    })
}

/// Run the structural validator. `*report` receives the findings text and
/// `*has_errors` whether any finding is an error.
///
/// # Safety
/// All pointers must be valid; `s` a live scenario handle.
#[no_mangle]
pub unsafe extern "C" fn p2c_validate(
    s: *const P2cScenario,
    report: *mut *mut c_char,
    has_errors: *mut bool,
) -> P2cStatus {
    guard(|| {
        if s.is_null() || report.is_null() || has_errors.is_null() {
            return fail(P2cStatus::NullArgument, "null argument");
        }
        let r = commands::validate(&(*s).inner);
        *has_errors = !r.ok;
        *report = to_c_string(r.text);
        P2cStatus::Ok
    })
}

/// Build the fundamental domain from the default seed and verify its
/// translates up to `depth`.
///
/// # Safety
/// All pointers must be valid; `s` a live scenario handle.
#[no_mangle]
pub unsafe extern "C" fn p2c_tile_report(
    s: *const P2cScenario,
    act: P2cAction,
    depth: u32,
    report: *mut *mut c_char,
    passed: *mut bool,
) -> P2cStatus {
    guard(|| {
        if s.is_null() || report.is_null() || passed.is_null() {
            return fail(P2cStatus::NullArgument, "null argument");
        }
        let opts = Options { action: Some(action(act)), depth: Some(depth), ..Options::default() };
        match commands::tile(&(*s).inner, &opts) {
            Ok(r) => {
                *passed = r.ok;
                *report = to_c_string(r.text);
                P2cStatus::Ok
            }
            Err(e) => fail(command_status(&e), e.to_string()),
        }
    })
}

/// Locate the tile containing `point` (e.g. `"(1, 1)"`): the word
/// `f^k` or `f^k tau` is returned through `k` and `flip`.
///
/// # Safety
/// All pointers must be valid; `s` a live scenario handle.
#[no_mangle]
pub unsafe extern "C" fn p2c_locate(
    s: *const P2cScenario,
    act: P2cAction,
    point: *const c_char,
    k: *mut i64,
    flip: *mut bool,
) -> P2cStatus {
    guard(|| {
        if s.is_null() || k.is_null() || flip.is_null() {
            return fail(P2cStatus::NullArgument, "null argument");
        }
        let text = match read_str(point) {
            Ok(t) => t,
            Err(st) => return st,
        };
        let s = &(*s).inner;
        let p = match Ray::parse(text, s.d) {
            Ok(p) => p,
            Err(e) => return fail(P2cStatus::Parse, e.to_string()),
        };
        let a = action(act);
        let v = s.invariant_violations();
        if !v.is_empty() {
            return fail(P2cStatus::InvalidScenario, v.join("; "));
        }
        let cone = s.cone(a);
        let w = groupclass::classify(&s.generators_for(a), cone)
            .map_err(|e| fail(P2cStatus::Classify, e.to_string()))
            .and_then(|prof| {
                let err = |e: fundom::DomainError| fail(P2cStatus::Domain, e.to_string());
                let seed = fundom::default_seed(cone).map_err(err)?;
                let dr = fundom::build_domain(&prof, cone, &seed).map_err(err)?;
                fundom::locate(&dr, &prof, &p).map_err(err)
            });
        match w {
            Ok(w) => {
                *k = w.k;
                *flip = w.flip;
                P2cStatus::Ok
            }
            Err(st) => st,
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn p2c_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
