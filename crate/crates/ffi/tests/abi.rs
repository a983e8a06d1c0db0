use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use qdeform_ffi::*;

const FOCK: QdState = QdState {
    kind: QdStateKind::Fock,
    beta: 0.0,
    dispersion: QdDispersion::Linear,
};
const GAUSSIAN: QdState = QdState {
    kind: QdStateKind::Gaussian,
    beta: 0.0,
    dispersion: QdDispersion::Linear,
};

fn parse(text: &str) -> *mut QdWord {
    let c = CString::new(text).unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { qd_word_parse(c.as_ptr(), &mut w) }, QdStatus::Ok);
    w
}

fn correlator(w: *const QdWord, state: QdState, route: QdRoute) -> *mut QdSum {
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { qd_correlator(w, state, route, &mut s) },
        QdStatus::Ok
    );
    s
}

fn render(s: *const QdSum) -> String {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qd_sum_render(s, &mut out) }, QdStatus::Ok);
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    unsafe { qd_string_free(out) };
    text
}

#[test]
fn oracle_and_diagram_sum_agree() {
    let w = parse("a a a+ a+");
    assert_eq!(unsafe { qd_word_len(w) }, 4);
    let finite = correlator(w, FOCK, QdRoute::Finite);
    let oracle = correlator(w, FOCK, QdRoute::OracleFock);
    assert_eq!(unsafe { qd_sum_equal(finite, oracle) }, 1);
    assert_eq!(unsafe { qd_sum_len(finite) }, 2);
    assert_eq!(render(finite), render(oracle));
    unsafe {
        qd_sum_free(finite);
        qd_sum_free(oracle);
        qd_word_free(w);
    }
}

#[test]
fn limit_routes_agree() {
    let w = parse("a a+ a a+");
    let finite = correlator(w, GAUSSIAN, QdRoute::Finite);
    let mut limit = ptr::null_mut();
    assert_eq!(unsafe { qd_take_limit(finite, &mut limit) }, QdStatus::Ok);
    let direct = correlator(w, GAUSSIAN, QdRoute::Limit);
    let free = correlator(w, GAUSSIAN, QdRoute::Free);
    unsafe {
        assert_eq!(qd_sum_equal(limit, direct), 1);
        assert_eq!(qd_sum_equal(direct, free), 1);
        let mut equal = 0;
        assert_eq!(qd_theorem2_check(w, GAUSSIAN, &mut equal), QdStatus::Ok);
        assert_eq!(equal, 1);
        assert_eq!(qd_count_non_crossing(w), 2);
        for s in [finite, limit, direct, free] {
            qd_sum_free(s);
        }
        qd_word_free(w);
    }
}

#[test]
fn errors_set_status_and_message() {
    let bad = CString::new("a a+ q").unwrap();
    let mut w = ptr::null_mut();
    assert_eq!(
        unsafe { qd_word_parse(bad.as_ptr(), &mut w) },
        QdStatus::Parse
    );
    assert!(w.is_null());
    let msg = unsafe { CStr::from_ptr(qd_last_error()) }.to_str().unwrap();
    assert!(msg.contains("token 3"), "{msg}");

    assert_eq!(
        unsafe { qd_word_parse(ptr::null(), &mut w) },
        QdStatus::NullPointer
    );

    let w = parse("a a+");
    let mut s = ptr::null_mut();
    let status = unsafe { qd_correlator(w, GAUSSIAN, QdRoute::OracleFock, &mut s) };
    assert_eq!(status, QdStatus::InvalidArgument);
    let hot = QdState {
        kind: QdStateKind::Temperature,
        beta: -1.0,
        dispersion: QdDispersion::Linear,
    };
    assert_eq!(
        unsafe { qd_correlator(w, hot, QdRoute::Finite, &mut s) },
        QdStatus::InvalidArgument
    );
    unsafe { qd_word_free(w) };
    assert_eq!(unsafe { qd_sum_equal(ptr::null(), ptr::null()) }, -1);
}

#[test]
fn json_export() {
    let w = parse("a a+");
    let s = correlator(w, FOCK, QdRoute::Finite);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qd_sum_to_json(s, &mut out) }, QdStatus::Ok);
    let json = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    assert!(json.starts_with("{\"terms\":["));
    unsafe {
        qd_string_free(out);
        qd_sum_free(s);
        qd_word_free(w);
    }
}

#[test]
fn quadrature_through_abi() {
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(
        unsafe { qd_oscillation_quadrature(0.1, &mut re, &mut im) },
        QdStatus::Ok
    );
    let exact = 2.0 * std::f64::consts::PI / (1.0f64 + 1e-4).sqrt();
    assert!((re - exact).abs() < 1e-8);
    assert_eq!(
        unsafe { qd_oscillation_quadrature(-1.0, &mut re, &mut im) },
        QdStatus::InvalidArgument
    );
}

fn header() -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/qdeform.h");
    std::fs::read_to_string(path).expect("header generated by the build script")
}

#[test]
fn header_declares_every_export() {
    let h = header();
    for name in [
        "qd_last_error",
        "qd_version",
        "qd_word_parse",
        "qd_word_len",
        "qd_word_free",
        "qd_correlator",
        "qd_take_limit",
        "qd_sum_len",
        "qd_sum_equal",
        "qd_sum_render",
        "qd_sum_to_json",
        "qd_sum_free",
        "qd_string_free",
        "qd_theorem2_check",
        "qd_count_non_crossing",
        "qd_oscillation_quadrature",
    ] {
        assert!(h.contains(&format!("{name}(")), "{name} missing");
    }
    assert!(h.contains("typedef struct QdWord QdWord;"));
    assert!(h.contains("QD_STATUS_OK = 0"));
}

/// Compiles and runs a C client against the header and the static library.
#[test]
fn c_client_links_and_runs() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libqdeform_ffi.a");
    assert!(
        lib.exists(),
        "static library not found at {}",
        lib.display()
    );

    let dir = scratch_dir();
    let src = dir.join("client.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "qdeform.h"

int main(void) {
    QdWord *w = NULL;
    if (qd_word_parse("a a a+ a+", &w) != QD_STATUS_OK) return 10;
    QdState fock = { QD_STATE_KIND_FOCK, 0.0, QD_DISPERSION_LINEAR };
    QdSum *finite = NULL, *oracle = NULL, *limit = NULL;
    if (qd_correlator(w, fock, QD_ROUTE_FINITE, &finite) != QD_STATUS_OK) return 11;
    if (qd_correlator(w, fock, QD_ROUTE_ORACLE_FOCK, &oracle) != QD_STATUS_OK) return 12;
    if (qd_sum_equal(finite, oracle) != 1) return 13;
    if (qd_take_limit(finite, &limit) != QD_STATUS_OK) return 14;
    if (qd_sum_len(limit) != 1) return 15;
    char *text = NULL;
    if (qd_sum_render(limit, &text) != QD_STATUS_OK) return 16;
    printf("%s\n", text);
    qd_string_free(text);
    qd_word_free(w);
    if (qd_word_parse("a x", &w) != QD_STATUS_PARSE) return 17;
    if (qd_last_error() == NULL) return 18;
    qd_sum_free(finite);
    qd_sum_free(oracle);
    qd_sum_free(limit);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("client");
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("C compiler `cc` available");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let printed = String::from_utf8(out.stdout).unwrap();
    assert!(printed.starts_with("(2pi)^2 * "), "{printed}");
}

fn scratch_dir() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("c_client");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
