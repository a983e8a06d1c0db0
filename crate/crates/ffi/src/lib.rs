//! C ABI for the `qdeform` engine.
//!
//! Words and sums are opaque heap handles released with their `_free`
//! functions. Every fallible call returns a [`QdStatus`]; on failure the message
//! is available from [`qd_last_error`] until the next failing call on the same
//! thread. Strings returned by the library are released with [`qd_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qdeform::correlator::{
    finite_lambda_correlator, limit_correlator, take_limit, Dispersion, StateSpec,
};
use qdeform::diagrams::count_non_crossing;
use qdeform::masterfield::{free_correlator, master_word, theorem2_check};
use qdeform::oracle::quadrature::{oscillation_quadrature, TestFunction};
use qdeform::oracle::{doubled_normal_order, qdef_normal_order};
use qdeform::symcore::render::render_sum;
use qdeform::symcore::{NameTable, OperatorWord, ScalarSum};
use qdeform::Error;

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum QdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Structural = 5,
    Numeric = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum QdStateKind {
    Fock = 0,
    Gaussian = 1,
    Temperature = 2,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum QdDispersion {
    Linear = 0,
    Quadratic = 1,
}

/// Field state. `beta` and `dispersion` are read only for `Temperature`.
#[repr(C)]
#[derive(Copy, Clone, Debug)]
pub struct QdState {
    pub kind: QdStateKind,
    pub beta: f64,
    pub dispersion: QdDispersion,
}

/// Parsed operator word.
pub struct QdWord {
    word: OperatorWord,
    names: NameTable,
}

/// Canonical scalar sum with the label names used for rendering.
pub struct QdSum {
    sum: ScalarSum,
    names: NameTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QdStatus {
    match e {
        Error::Parse { .. } | Error::DuplicateLabel { .. } => QdStatus::Parse,
        Error::InvalidArgument(_) | Error::InvalidEdge { .. } | Error::InvalidReorder { .. } => {
            QdStatus::InvalidArgument
        }
        Error::Structural(_) => QdStatus::Structural,
        Error::Unassigned(_) | Error::LimitObject(_) | Error::QuadratureNotConverged { .. } => {
            QdStatus::Numeric
        }
    }
}

/// Runs `f`, turning errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), (QdStatus, String)>) -> QdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QdStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QdStatus::Panic
        }
    }
}

fn fail(e: Error) -> (QdStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (QdStatus, String) {
    (QdStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (QdStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

fn state_of(s: &QdState) -> Result<StateSpec, (QdStatus, String)> {
    Ok(match s.kind {
        QdStateKind::Fock => StateSpec::Fock,
        QdStateKind::Gaussian => StateSpec::Gaussian,
        QdStateKind::Temperature => {
            if !(s.beta > 0.0) {
                return Err(fail(Error::InvalidArgument(format!(
                    "beta must be positive, got {}",
                    s.beta
                ))));
            }
            StateSpec::Temperature {
                beta: s.beta,
                dispersion: match s.dispersion {
                    QdDispersion::Linear => Dispersion::Linear,
                    QdDispersion::Quadratic => Dispersion::Quadratic,
                },
            }
        }
    })
}

fn emit_sum(out: *mut *mut QdSum, sum: ScalarSum, names: NameTable) {
    let handle = Box::new(QdSum { sum, names });
    unsafe { *out = Box::into_raw(handle) };
}

fn emit_string(out: *mut *mut c_char, s: String) -> Result<(), (QdStatus, String)> {
    let c = CString::new(s).map_err(|_| (QdStatus::InvalidUtf8, "interior nul".to_string()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. Owned by the
/// library.
#[no_mangle]
pub extern "C" fn qd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn qd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qd_word_parse(text: *const c_char, out: *mut *mut QdWord) -> QdStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (QdStatus::InvalidUtf8, "pattern is not UTF-8".to_string()))?;
        let (word, names) = OperatorWord::parse(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(QdWord { word, names }));
        Ok(())
    })
}

/// # Safety
/// `word` must be NULL or a handle from [`qd_word_parse`].
#[no_mangle]
pub unsafe extern "C" fn qd_word_len(word: *const QdWord) -> usize {
    word.as_ref().map_or(0, |w| w.word.len())
}

/// # Safety
/// `word` must be NULL or a handle from [`qd_word_parse`], not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qd_word_free(word: *mut QdWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum QdRoute {
    /// Diagram sum at finite λ.
    Finite = 0,
    /// Non-crossing diagrams in the λ → 0 limit.
    Limit = 1,
    /// Free master-field algebra.
    Free = 2,
    /// q-deformed rewriting, Fock state only.
    OracleFock = 3,
    /// Bogoliubov-doubled normal ordering, non-Fock states.
    OracleDouble = 4,
}

/// Computes the correlator of `word` in `state` along `route`.
///
/// # Safety
/// `word` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qd_correlator(
    word: *const QdWord,
    state: QdState,
    route: QdRoute,
    out: *mut *mut QdSum,
) -> QdStatus {
    guard(|| {
        let w = deref(word, "word")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let state = state_of(&state)?;
        let sum = match route {
            QdRoute::Finite => finite_lambda_correlator(&w.word, &state),
            QdRoute::Limit => limit_correlator(&w.word, &state),
            QdRoute::Free => free_correlator(&master_word(&w.word), &state),
            QdRoute::OracleFock => {
                if !state.is_fock() {
                    return Err(fail(Error::InvalidArgument(
                        "oracle-fock requires the Fock state".into(),
                    )));
                }
                qdef_normal_order(&w.word)
            }
            QdRoute::OracleDouble => {
                if state.is_fock() {
                    return Err(fail(Error::InvalidArgument(
                        "oracle-double requires a non-Fock state".into(),
                    )));
                }
                doubled_normal_order(&w.word, &state)
            }
        };
        emit_sum(out, sum, w.names.clone());
        Ok(())
    })
}

/// Term-by-term λ → 0 limit of a finite-λ sum.
///
/// # Safety
/// `sum` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qd_take_limit(sum: *const QdSum, out: *mut *mut QdSum) -> QdStatus {
    guard(|| {
        let s = deref(sum, "sum")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let limit = take_limit(&s.sum).map_err(fail)?;
        emit_sum(out, limit, s.names.clone());
        Ok(())
    })
}

/// # Safety
/// `sum` must be NULL or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn qd_sum_len(sum: *const QdSum) -> usize {
    sum.as_ref().map_or(0, |s| s.sum.len())
}

/// 1 if the sums are structurally equal, 0 if not, -1 if either is NULL.
///
/// # Safety
/// Both arguments must be NULL or valid handles.
#[no_mangle]
pub unsafe extern "C" fn qd_sum_equal(a: *const QdSum, b: *const QdSum) -> c_int {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => c_int::from(a.sum == b.sum),
        _ => -1,
    }
}

/// Canonical text rendering; release with [`qd_string_free`].
///
/// # Safety
/// `sum` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qd_sum_render(sum: *const QdSum, out: *mut *mut c_char) -> QdStatus {
    guard(|| {
        let s = deref(sum, "sum")?;
        if out.is_null() {
            return Err(null("out"));
        }
        emit_string(out, render_sum(&s.sum, &s.names))
    })
}

/// JSON serialization; release with [`qd_string_free`].
///
/// # Safety
/// `sum` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qd_sum_to_json(sum: *const QdSum, out: *mut *mut c_char) -> QdStatus {
    guard(|| {
        let s = deref(sum, "sum")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let json = serde_json::to_string(&s.sum).expect("sum is serializable");
        emit_string(out, json)
    })
}

/// # Safety
/// `sum` must be NULL or a valid handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qd_sum_free(sum: *mut QdSum) {
    if !sum.is_null() {
        drop(Box::from_raw(sum));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes 1 to `equal` if the diagrammatic limit and the free algebra agree.
///
/// # Safety
/// `word` must be a valid handle and `equal` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qd_theorem2_check(
    word: *const QdWord,
    state: QdState,
    equal: *mut c_int,
) -> QdStatus {
    guard(|| {
        let w = deref(word, "word")?;
        if equal.is_null() {
            return Err(null("equal"));
        }
        let state = state_of(&state)?;
        *equal = c_int::from(theorem2_check(&w.word, &state).equal);
        Ok(())
    })
}

/// Number of non-crossing pair partitions of the word's pattern.
///
/// # Safety
/// `word` must be NULL or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn qd_count_non_crossing(word: *const QdWord) -> usize {
    word.as_ref()
        .map_or(0, |w| count_non_crossing(&w.word.pattern()))
}

/// `∬ e^{-(t²+x²)/2} λ⁻² e^{-itx/λ²} dt dx`.
///
/// # Safety
/// `re` and `im` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qd_oscillation_quadrature(
    lambda: f64,
    re: *mut f64,
    im: *mut f64,
) -> QdStatus {
    guard(|| {
        if re.is_null() || im.is_null() {
            return Err(null("re/im"));
        }
        let v = oscillation_quadrature(&TestFunction::Gaussian, lambda).map_err(fail)?;
        *re = v.re;
        *im = v.im;
        Ok(())
    })
}
