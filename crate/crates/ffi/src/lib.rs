//! C interface to `sigsyntax`.
//!
//! Signatures and terms cross the boundary as opaque handles owned by the
//! caller and released with the matching `*_free` function. Every fallible
//! call returns an [`SsStatus`]; on failure [`ss_last_error`] describes the
//! problem until the next call on the same thread. Strings returned by the
//! library are released with [`ss_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sigsyntax::arity_core::Signature;
use sigsyntax::examples::{eval_named, NamedEvalError};
use sigsyntax::initiality::Bounds;
use sigsyntax::law_suite::run_all;
use sigsyntax::term_engine::{bind, check_term, enumerate_terms, parse_term, Substitution, Term, TermError};

/// Result of a call. The nonzero codes mirror the command-line exit codes
/// where they overlap.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SsStatus {
    Ok = 0,
    LawFailure = 1,
    ParseError = 2,
    CapExceeded = 3,
    UnknownRep = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    IllFormed = 7,
    Panic = 8,
}

/// A validated signature.
pub struct SsSignature {
    sig: Signature,
}

/// A term together with the size of the context it lives in.
pub struct SsTerm {
    term: Term,
    ctx: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SsStatus, String);

impl From<TermError> for Failure {
    fn from(e: TermError) -> Failure {
        let status = match e {
            TermError::CapExceeded { .. } => SsStatus::CapExceeded,
            _ => SsStatus::IllFormed,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SsStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SsStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(SsStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(SsStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(SsStatus::NullPointer, format!("null {what}")))
}

fn out_ptr<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(SsStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library on this thread.
#[no_mangle]
pub extern "C" fn ss_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses and validates a signature file.
///
/// # Safety
/// `source` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ss_signature_parse(source: *const c_char, out: *mut *mut SsSignature) -> SsStatus {
    guard(|| {
        out_ptr(out)?;
        let sig = Signature::parse(text(source)?)
            .and_then(Signature::checked)
            .map_err(|e| Failure(SsStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(SsSignature { sig }));
        Ok(())
    })
}

/// # Safety
/// `sig` must be null or a handle from [`ss_signature_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ss_signature_free(sig: *mut SsSignature) {
    if !sig.is_null() {
        drop(Box::from_raw(sig));
    }
}

/// Number of operations, or 0 for a null handle.
///
/// # Safety
/// `sig` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ss_signature_op_count(sig: *const SsSignature) -> usize {
    sig.as_ref().map_or(0, |s| s.sig.len())
}

/// Parses an s-expression term and checks it in a context of `ctx` variables.
///
/// # Safety
/// `sig` must be a live handle, `source` a NUL-terminated string and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ss_term_parse(
    sig: *const SsSignature,
    source: *const c_char,
    ctx: usize,
    out: *mut *mut SsTerm,
) -> SsStatus {
    guard(|| {
        out_ptr(out)?;
        let sig = handle(sig, "signature")?;
        let term = parse_term(text(source)?).map_err(|e| Failure(SsStatus::ParseError, e.to_string()))?;
        check_term(&term, &sig.sig, ctx)?;
        *out = Box::into_raw(Box::new(SsTerm { term, ctx }));
        Ok(())
    })
}

/// # Safety
/// `term` must be null or a live term handle.
#[no_mangle]
pub unsafe extern "C" fn ss_term_free(term: *mut SsTerm) {
    if !term.is_null() {
        drop(Box::from_raw(term));
    }
}

/// Context size of a term, or 0 for a null handle.
///
/// # Safety
/// `term` must be null or a live term handle.
#[no_mangle]
pub unsafe extern "C" fn ss_term_context(term: *const SsTerm) -> usize {
    term.as_ref().map_or(0, |t| t.ctx)
}

/// The s-expression form of a term, or null for a null handle.
///
/// # Safety
/// `term` must be null or a live term handle.
#[no_mangle]
pub unsafe extern "C" fn ss_term_to_string(term: *const SsTerm) -> *mut c_char {
    term.as_ref().map_or(ptr::null_mut(), |t| owned_string(t.term.to_string()))
}

/// Substitutes `images[i]` for variable `i` of `term`. All images must live
/// in the same context, which becomes the context of the result.
///
/// # Safety
/// `term` must be a live handle, `images` must point to `count` live
/// handles (or be null when `count` is 0), and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ss_term_bind(
    term: *const SsTerm,
    images: *const *const SsTerm,
    count: usize,
    out: *mut *mut SsTerm,
) -> SsStatus {
    guard(|| {
        out_ptr(out)?;
        let t = handle(term, "term")?;
        let slice: &[*const SsTerm] = if count == 0 {
            &[]
        } else {
            if images.is_null() {
                return Err(Failure(SsStatus::NullPointer, "null image array".into()));
            }
            std::slice::from_raw_parts(images, count)
        };
        let imgs = slice.iter().map(|&p| handle(p, "image")).collect::<Result<Vec<_>, _>>()?;
        let dst = imgs.first().map_or(0, |i| i.ctx);
        if let Some(bad) = imgs.iter().find(|i| i.ctx != dst) {
            return Err(Failure(SsStatus::IllFormed, format!("images live in contexts {dst} and {}", bad.ctx)));
        }
        if count != t.ctx {
            return Err(TermError::ContextMismatch { expected: count, found: t.ctx }.into());
        }
        let s = Substitution::new(dst, imgs.iter().map(|i| i.term.clone()).collect());
        let term = bind(&t.term, &s)?;
        *out = Box::into_raw(Box::new(SsTerm { term, ctx: dst }));
        Ok(())
    })
}

/// Evaluates a term into a built-in representation (`self`, `lambda-ref`,
/// `lambda-join-ref`) and returns the printed value.
///
/// # Safety
/// Handles must be live, `rep` NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ss_eval(
    sig: *const SsSignature,
    term: *const SsTerm,
    rep: *const c_char,
    out: *mut *mut c_char,
) -> SsStatus {
    guard(|| {
        out_ptr(out)?;
        let sig = handle(sig, "signature")?;
        let t = handle(term, "term")?;
        let shown = eval_named(text(rep)?, &t.term, &sig.sig, t.ctx).map_err(|e| match e {
            NamedEvalError::UnknownRep(_) => Failure(SsStatus::UnknownRep, e.to_string()),
            NamedEvalError::Eval(e) => Failure(SsStatus::IllFormed, e.to_string()),
        })?;
        *out = owned_string(shown);
        Ok(())
    })
}

/// Number of terms in context `ctx` up to `depth`, failing with
/// `CapExceeded` beyond `cap`.
///
/// # Safety
/// `sig` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ss_enum_count(
    sig: *const SsSignature,
    ctx: usize,
    depth: usize,
    cap: usize,
    out: *mut usize,
) -> SsStatus {
    guard(|| {
        out_ptr(out)?;
        let sig = handle(sig, "signature")?;
        *out = enumerate_terms(&sig.sig, ctx, depth, cap)?.len();
        Ok(())
    })
}

/// Runs the full law suite with default bounds and `samples` samples per
/// law. Writes the number of failing laws to `failed_laws` and returns
/// `LawFailure` when it is nonzero.
///
/// # Safety
/// `sig` must be a live handle and `failed_laws` valid.
#[no_mangle]
pub unsafe extern "C" fn ss_check(
    sig: *const SsSignature,
    samples: usize,
    seed: u64,
    failed_laws: *mut usize,
) -> SsStatus {
    guard(|| {
        out_ptr(failed_laws)?;
        let sig = handle(sig, "signature")?;
        let bounds = Bounds { samples, ..Bounds::default() };
        let reports = run_all(&sig.sig, &bounds, seed);
        let failing: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| r.summary()).collect();
        *failed_laws = failing.len();
        if failing.is_empty() {
            Ok(())
        } else {
            Err(Failure(SsStatus::LawFailure, failing.join("; ")))
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
