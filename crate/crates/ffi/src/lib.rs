//! C ABI over `spheremcg`.
//!
//! Contexts are opaque handles bound to one puncture count. Every function
//! returns an [`SmcgStatus`]; on failure the message is available from
//! [`smcg_last_error_message`]. Strings handed out by this library are
//! released with [`smcg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use spheremcg::action::ActionModel;
use spheremcg::harness::{full_report, HarnessConfig};
use spheremcg::presentation::{parse_expression, Flavor, Presentation};
use spheremcg::todd_coxeter::{enumerate, Enumeration, Limits};
use spheremcg::words::Word;
use spheremcg::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmcgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    GuardExceeded = 4,
    Overflow = 5,
    Internal = 6,
}

/// Enumeration flavor selector.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmcgFlavor {
    Oriented = 0,
    Extended = 1,
}

/// Opaque context for one puncture count.
pub struct SmcgContext {
    model: ActionModel,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: SmcgStatus, msg: impl Into<String>) -> SmcgStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> SmcgStatus {
    match e {
        Error::Parse { .. } | Error::InvalidLetter { .. } | Error::InvalidName { .. } => SmcgStatus::ParseError,
        Error::ImageTooLong { .. } => SmcgStatus::GuardExceeded,
        Error::InvalidN(_) | Error::WrongN { .. } | Error::AlphabetMismatch { .. } => SmcgStatus::InvalidArgument,
        _ => SmcgStatus::Internal,
    }
}

fn from_error(e: Error) -> SmcgStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f`, turning panics into `Internal`.
fn guard<F: FnOnce() -> SmcgStatus>(f: F) -> SmcgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(SmcgStatus::Internal, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, SmcgStatus> {
    if p.is_null() {
        return Err(fail(SmcgStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(SmcgStatus::ParseError, "string is not valid UTF-8"))
}

unsafe fn read_word(ctx: &SmcgContext, p: *const c_char) -> Result<Word, SmcgStatus> {
    let text = read_str(p)?;
    parse_expression(text, ctx.model.n()).map_err(from_error)
}

macro_rules! ok_or_return {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn smcg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copy of the calling thread's last error message, or NULL if none.
/// Release with `smcg_string_free`.
#[no_mangle]
pub extern "C" fn smcg_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn smcg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a context for the extended group on `n` punctures (`n >= 3`).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn smcg_context_new(n: u32, out: *mut *mut SmcgContext) -> SmcgStatus {
    guard(|| {
        if out.is_null() {
            return fail(SmcgStatus::NullPointer, "null output pointer");
        }
        let model = ok_or_return!(ActionModel::new(n).map_err(from_error));
        *out = Box::into_raw(Box::new(SmcgContext { model }));
        SmcgStatus::Ok
    })
}

/// Releases a context. NULL is ignored.
///
/// # Safety
/// `ctx` must come from `smcg_context_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn smcg_context_free(ctx: *mut SmcgContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Puncture count of a context, or 0 for NULL.
///
/// # Safety
/// `ctx` must be NULL or a live context.
#[no_mangle]
pub unsafe extern "C" fn smcg_context_n(ctx: *const SmcgContext) -> u32 {
    ctx.as_ref().map_or(0, |c| c.model.n())
}

/// Decides whether two word expressions are equal in the group.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn smcg_equal(
    ctx: *const SmcgContext,
    u: *const c_char,
    v: *const c_char,
    out_equal: *mut bool,
) -> SmcgStatus {
    guard(|| {
        let Some(ctx) = ctx.as_ref() else { return fail(SmcgStatus::NullPointer, "null context") };
        if out_equal.is_null() {
            return fail(SmcgStatus::NullPointer, "null output pointer");
        }
        let u = ok_or_return!(read_word(ctx, u));
        let v = ok_or_return!(read_word(ctx, v));
        *out_equal = ok_or_return!(ctx.model.equal_in_group(&u, &v).map_err(from_error));
        SmcgStatus::Ok
    })
}

/// Order of a word expression. Writes 0 to `out_order` when the order
/// exceeds `cap` (pass 0 for the default `4n`).
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn smcg_order(
    ctx: *const SmcgContext,
    u: *const c_char,
    cap: u32,
    out_order: *mut u32,
) -> SmcgStatus {
    guard(|| {
        let Some(ctx) = ctx.as_ref() else { return fail(SmcgStatus::NullPointer, "null context") };
        if out_order.is_null() {
            return fail(SmcgStatus::NullPointer, "null output pointer");
        }
        let u = ok_or_return!(read_word(ctx, u));
        let cap = if cap == 0 { 4 * ctx.model.n() } else { cap };
        let order = ok_or_return!(ctx.model.order_of(&u, cap).map_err(from_error));
        *out_order = order.unwrap_or(0);
        SmcgStatus::Ok
    })
}

/// Index of the subgroup generated by `count` word expressions. Returns
/// `Overflow` when a limit is hit first. Zero limits select the defaults.
///
/// # Safety
/// `subgens` must point to `count` valid strings (it may be NULL when
/// `count` is 0); other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn smcg_enumerate(
    ctx: *const SmcgContext,
    flavor: SmcgFlavor,
    subgens: *const *const c_char,
    count: usize,
    max_cosets: usize,
    max_time_secs: f64,
    out_index: *mut usize,
) -> SmcgStatus {
    guard(|| {
        let Some(ctx) = ctx.as_ref() else { return fail(SmcgStatus::NullPointer, "null context") };
        if out_index.is_null() || (subgens.is_null() && count > 0) {
            return fail(SmcgStatus::NullPointer, "null pointer argument");
        }
        let mut words = Vec::with_capacity(count);
        for i in 0..count {
            words.push(ok_or_return!(read_word(ctx, *subgens.add(i))));
        }
        let mut limits = Limits::default();
        if max_cosets > 0 {
            limits.max_cosets = max_cosets;
        }
        if max_time_secs.is_nan() || max_time_secs < 0.0 {
            return fail(SmcgStatus::InvalidArgument, "time limit must be positive");
        }
        if max_time_secs > 0.0 {
            limits.max_time = Duration::from_secs_f64(max_time_secs);
        }
        let flavor = match flavor {
            SmcgFlavor::Oriented => Flavor::Oriented,
            SmcgFlavor::Extended => Flavor::Extended,
        };
        let p = ok_or_return!(Presentation::build(ctx.model.n(), flavor).map_err(from_error));
        match ok_or_return!(enumerate(&p, &words, &limits).map_err(from_error)) {
            Enumeration::Finished { index, .. } => {
                *out_index = index;
                SmcgStatus::Ok
            }
            Enumeration::Overflow { stats, .. } => fail(SmcgStatus::Overflow, format!("OVERFLOW {stats}")),
        }
    })
}

/// Runs every applicable verification suite for the `count` puncture counts
/// in `ns` and writes the JSON report. `out_exit_code` receives 0 (all pass),
/// 1 (a failure) or 2 (only tolerated overflows).
///
/// # Safety
/// `ns` must point to `count` values (or be NULL when `count` is 0); output
/// pointers must be valid. Release `*out_json` with `smcg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn smcg_verify_json(
    ns: *const u32,
    count: usize,
    out_exit_code: *mut i32,
    out_json: *mut *mut c_char,
) -> SmcgStatus {
    guard(|| {
        if out_exit_code.is_null() || out_json.is_null() || (ns.is_null() && count > 0) {
            return fail(SmcgStatus::NullPointer, "null pointer argument");
        }
        let list = if count == 0 { &[][..] } else { std::slice::from_raw_parts(ns, count) };
        if let Some(&n) = list.iter().find(|&&n| n < 3) {
            return fail(SmcgStatus::InvalidArgument, format!("n must be at least 3, got {n}"));
        }
        let report = ok_or_return!(full_report(list, &HarnessConfig::default()).map_err(from_error));
        let json = ok_or_return!(CString::new(report.to_json()).map_err(|_| fail(SmcgStatus::Internal, "NUL in report")));
        *out_exit_code = report.overall().exit_code();
        *out_json = json.into_raw();
        SmcgStatus::Ok
    })
}
