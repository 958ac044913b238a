use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use spheremcg_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn context(n: u32) -> *mut SmcgContext {
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { smcg_context_new(n, &mut ctx) }, SmcgStatus::Ok);
    assert!(!ctx.is_null());
    ctx
}

fn last_error() -> String {
    let p = smcg_last_error_message();
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { smcg_string_free(p) };
    s
}

#[test]
fn context_lifecycle() {
    let ctx = context(6);
    assert_eq!(unsafe { smcg_context_n(ctx) }, 6);
    unsafe { smcg_context_free(ctx) };
    unsafe { smcg_context_free(ptr::null_mut()) };
    assert_eq!(unsafe { smcg_context_n(ptr::null()) }, 0);

    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { smcg_context_new(2, &mut ctx) }, SmcgStatus::InvalidArgument);
    assert!(ctx.is_null());
    assert!(last_error().contains('2'));
    assert_eq!(unsafe { smcg_context_new(6, ptr::null_mut()) }, SmcgStatus::NullPointer);
}

#[test]
fn equality_and_parse_errors() {
    let ctx = context(6);
    let mut eq = false;
    let (u, v) = (cstr("t a0 t"), cstr("a0"));
    assert_eq!(unsafe { smcg_equal(ctx, u.as_ptr(), v.as_ptr(), &mut eq) }, SmcgStatus::Ok);
    assert!(eq);
    let (u, v) = (cstr("s1"), cstr("s2"));
    assert_eq!(unsafe { smcg_equal(ctx, u.as_ptr(), v.as_ptr(), &mut eq) }, SmcgStatus::Ok);
    assert!(!eq);
    let bad = cstr("s1 q7");
    assert_eq!(unsafe { smcg_equal(ctx, bad.as_ptr(), v.as_ptr(), &mut eq) }, SmcgStatus::ParseError);
    assert!(last_error().contains("q7"));
    assert_eq!(unsafe { smcg_equal(ctx, ptr::null(), v.as_ptr(), &mut eq) }, SmcgStatus::NullPointer);
    assert_eq!(unsafe { smcg_equal(ptr::null(), v.as_ptr(), v.as_ptr(), &mut eq) }, SmcgStatus::NullPointer);
    unsafe { smcg_context_free(ctx) };
}

#[test]
fn orders() {
    let ctx = context(5);
    let mut k = 0;
    let w = cstr("t a0");
    assert_eq!(unsafe { smcg_order(ctx, w.as_ptr(), 0, &mut k) }, SmcgStatus::Ok);
    assert_eq!(k, 10);
    let s1 = cstr("s1");
    assert_eq!(unsafe { smcg_order(ctx, s1.as_ptr(), 0, &mut k) }, SmcgStatus::Ok);
    assert_eq!(k, 0);
    unsafe { smcg_context_free(ctx) };
}

#[test]
fn enumeration_and_overflow() {
    let ctx = context(6);
    let gens = [cstr("a"), cstr("b")];
    let ptrs: Vec<*const c_char> = gens.iter().map(|g| g.as_ptr()).collect();
    let mut index = 0;
    let s = unsafe { smcg_enumerate(ctx, SmcgFlavor::Extended, ptrs.as_ptr(), 2, 0, 0.0, &mut index) };
    assert_eq!((s, index), (SmcgStatus::Ok, 1));
    let s = unsafe { smcg_enumerate(ctx, SmcgFlavor::Extended, ptr::null(), 0, 500, 0.0, &mut index) };
    assert_eq!(s, SmcgStatus::Overflow);
    assert!(last_error().starts_with("OVERFLOW"));
    unsafe { smcg_context_free(ctx) };

    let ctx = context(3);
    let s = unsafe { smcg_enumerate(ctx, SmcgFlavor::Oriented, ptr::null(), 0, 0, 0.0, &mut index) };
    assert_eq!((s, index), (SmcgStatus::Ok, 6));
    unsafe { smcg_context_free(ctx) };
}

#[test]
fn verify_report() {
    let ns = [5u32];
    let (mut code, mut json) = (-1, ptr::null_mut());
    assert_eq!(unsafe { smcg_verify_json(ns.as_ptr(), 1, &mut code, &mut json) }, SmcgStatus::Ok);
    assert_eq!(code, 0);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_string();
    unsafe { smcg_string_free(json) };
    assert!(text.contains("\"n5.odd.gen\""));
    let bad = [2u32];
    assert_eq!(unsafe { smcg_verify_json(bad.as_ptr(), 1, &mut code, &mut json) }, SmcgStatus::InvalidArgument);
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(smcg_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_matches_exports_and_links_from_c() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(root.join("include/spheremcg.h")).unwrap();
    for f in [
        "smcg_context_new",
        "smcg_context_free",
        "smcg_equal",
        "smcg_order",
        "smcg_enumerate",
        "smcg_verify_json",
        "smcg_last_error_message",
        "smcg_string_free",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct SmcgContext SmcgContext;"));

    // the test binary sits in target/<profile>/deps; the static library one level up
    let exe = std::env::current_exe().unwrap();
    let lib = exe.parent().and_then(|d| d.parent()).map(|d| d.join("libspheremcg_ffi.a"));
    let Some(lib) = lib.filter(|l| l.exists()) else {
        eprintln!("static library not found, skipping C link check");
        return;
    };
    let out = std::env::temp_dir().join(format!("smcg_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(root.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status();
    let Ok(status) = status else {
        eprintln!("no C compiler, skipping C link check");
        return;
    };
    assert!(status.success(), "C smoke program failed to build");
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "C smoke program exited with {:?}", run.status.code());
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
