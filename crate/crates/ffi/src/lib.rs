//! C interface to the swapmatch engines.
//!
//! Handles are opaque. Every handle returned through an out-pointer is owned
//! by the caller and must be released with the matching `*_free` function.
//! Functions report failures through [`SmStatus`]; a panic inside the library
//! is caught at the boundary and reported as `SM_STATUS_PANIC`.
//!
//! Text and pattern pointers may be null only when their length is zero.

use std::ffi::{c_char, c_void};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;
use std::sync::Arc;

use swapmatch::{derive_even_odd, greedy_one_factorization, one_collection, Engine, EngineKind, Pattern, Scanner};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmStatus {
    Ok = 0,
    NullPointer = 1,
    EmptyPattern = 2,
    InvalidEngine = 3,
    /// The output buffer was too small; the total is still reported.
    BufferTooSmall = 4,
    Panic = 5,
}

/// Engine selector, passed as a plain `uint32_t`.
#[repr(u32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmEngine {
    OracleDp = 0,
    Nfa = 1,
    PlainSwap = 2,
    EncodedSwap = 3,
    ShiftAnd = 4,
    EncodedPrefix = 5,
}

impl SmEngine {
    fn from_raw(v: u32) -> Option<EngineKind> {
        Some(match v {
            0 => EngineKind::OracleDp,
            1 => EngineKind::Nfa,
            2 => EngineKind::PlainSwap,
            3 => EngineKind::EncodedSwap,
            4 => EngineKind::ShiftAnd,
            5 => EngineKind::EncodedPrefix,
            _ => return None,
        })
    }
}

/// A compiled pattern. Immutable; may be shared between threads.
pub struct SmMatcher {
    engine: Arc<Engine>,
}

/// Incremental search state over a stream of chunks.
pub struct SmScanner {
    inner: Scanner<Arc<Engine>>,
}

/// Callback receiving the 0-based end position of each match.
pub type SmMatchCallback = Option<extern "C" fn(position: u64, user: *mut c_void)>;

fn guard(f: impl FnOnce() -> SmStatus) -> SmStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(SmStatus::Panic)
}

/// # Safety
/// `ptr` must be valid for `len` bytes unless `len` is 0.
unsafe fn bytes<'a>(ptr: *const u8, len: usize) -> Option<&'a [u8]> {
    if len == 0 {
        Some(&[])
    } else if ptr.is_null() {
        None
    } else {
        Some(slice::from_raw_parts(ptr, len))
    }
}

/// Compiles `pattern[0..len]` for the engine `engine` (an `SmEngine` value).
///
/// # Safety
/// `pattern` must be valid for `len` bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sm_matcher_new(
    pattern: *const u8,
    len: usize,
    engine: u32,
    out: *mut *mut SmMatcher,
) -> SmStatus {
    guard(|| {
        if out.is_null() {
            return SmStatus::NullPointer;
        }
        *out = std::ptr::null_mut();
        let Some(p) = bytes(pattern, len) else {
            return SmStatus::NullPointer;
        };
        let Some(kind) = SmEngine::from_raw(engine) else {
            return SmStatus::InvalidEngine;
        };
        let Ok(p) = Pattern::new(p.to_vec()) else {
            return SmStatus::EmptyPattern;
        };
        let m = Box::new(SmMatcher {
            engine: Arc::new(Engine::new(kind, &p)),
        });
        *out = Box::into_raw(m);
        SmStatus::Ok
    })
}

/// Releases a matcher. Null is ignored. Scanners created from it stay valid.
///
/// # Safety
/// `m` must come from [`sm_matcher_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sm_matcher_free(m: *mut SmMatcher) {
    if !m.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(m))));
    }
}

/// # Safety
/// `m` must be a live matcher and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sm_matcher_pattern_len(m: *const SmMatcher, out: *mut usize) -> SmStatus {
    guard(|| {
        let (Some(m), false) = (m.as_ref(), out.is_null()) else {
            return SmStatus::NullPointer;
        };
        *out = m.engine.pattern_len();
        SmStatus::Ok
    })
}

/// Finds every match in `text`. Up to `capacity` end positions are written
/// to `positions`, in increasing order; `*found` receives the total. Returns
/// `SM_STATUS_BUFFER_TOO_SMALL` when the total exceeds `capacity`.
///
/// # Safety
/// `text` must be valid for `len` bytes, `positions` for `capacity` writes,
/// and `found` writable.
#[no_mangle]
pub unsafe extern "C" fn sm_matcher_search(
    m: *const SmMatcher,
    text: *const u8,
    len: usize,
    positions: *mut u64,
    capacity: usize,
    found: *mut usize,
) -> SmStatus {
    guard(|| {
        let (Some(m), false) = (m.as_ref(), found.is_null()) else {
            return SmStatus::NullPointer;
        };
        if positions.is_null() && capacity > 0 {
            return SmStatus::NullPointer;
        }
        let Some(t) = bytes(text, len) else {
            return SmStatus::NullPointer;
        };
        let mut n = 0usize;
        m.engine.scanner().feed(t, |j| {
            if n < capacity {
                *positions.add(n) = j;
            }
            n += 1;
        });
        *found = n;
        if n > capacity {
            SmStatus::BufferTooSmall
        } else {
            SmStatus::Ok
        }
    })
}

/// Counts matches in `text`.
///
/// # Safety
/// `text` must be valid for `len` bytes and `count` writable.
#[no_mangle]
pub unsafe extern "C" fn sm_matcher_count(
    m: *const SmMatcher,
    text: *const u8,
    len: usize,
    count: *mut u64,
) -> SmStatus {
    guard(|| {
        let (Some(m), false) = (m.as_ref(), count.is_null()) else {
            return SmStatus::NullPointer;
        };
        let Some(t) = bytes(text, len) else {
            return SmStatus::NullPointer;
        };
        *count = m.engine.count(t) as u64;
        SmStatus::Ok
    })
}

/// Starts a stream over `m`. The scanner keeps its own reference to the
/// compiled pattern.
///
/// # Safety
/// `m` must be a live matcher and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sm_scanner_new(m: *const SmMatcher, out: *mut *mut SmScanner) -> SmStatus {
    guard(|| {
        let (Some(m), false) = (m.as_ref(), out.is_null()) else {
            return SmStatus::NullPointer;
        };
        let s = Box::new(SmScanner {
            inner: Scanner::new(Arc::clone(&m.engine)),
        });
        *out = Box::into_raw(s);
        SmStatus::Ok
    })
}

/// Feeds the next chunk. `callback` gets absolute end positions, counted
/// from the first byte ever fed; it may be null to only advance the state.
///
/// # Safety
/// `s` must be a live scanner and `chunk` valid for `len` bytes. The callback
/// must not unwind.
#[no_mangle]
pub unsafe extern "C" fn sm_scanner_feed(
    s: *mut SmScanner,
    chunk: *const u8,
    len: usize,
    callback: SmMatchCallback,
    user: *mut c_void,
) -> SmStatus {
    guard(|| {
        let Some(s) = s.as_mut() else {
            return SmStatus::NullPointer;
        };
        let Some(c) = bytes(chunk, len) else {
            return SmStatus::NullPointer;
        };
        s.inner.feed(c, |j| {
            if let Some(cb) = callback {
                cb(j, user);
            }
        });
        SmStatus::Ok
    })
}

/// Bytes fed since creation or the last reset.
///
/// # Safety
/// `s` must be a live scanner and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sm_scanner_consumed(s: *const SmScanner, out: *mut u64) -> SmStatus {
    guard(|| {
        let (Some(s), false) = (s.as_ref(), out.is_null()) else {
            return SmStatus::NullPointer;
        };
        *out = s.inner.consumed();
        SmStatus::Ok
    })
}

/// # Safety
/// `s` must be a live scanner.
#[no_mangle]
pub unsafe extern "C" fn sm_scanner_reset(s: *mut SmScanner) -> SmStatus {
    guard(|| {
        let Some(s) = s.as_mut() else {
            return SmStatus::NullPointer;
        };
        s.inner.reset();
        SmStatus::Ok
    })
}

/// Releases a scanner. Null is ignored.
///
/// # Safety
/// `s` must come from [`sm_scanner_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sm_scanner_free(s: *mut SmScanner) {
    if !s.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(s))));
    }
}

/// Factor counts of a pattern: `k` for the shared factorization of `P`,
/// `P_e`, `P_o` and `k_prime` for the greedy factorization of `P` alone.
///
/// # Safety
/// `pattern` must be valid for `len` bytes; `k` and `k_prime` writable.
#[no_mangle]
pub unsafe extern "C" fn sm_factor_counts(
    pattern: *const u8,
    len: usize,
    k: *mut usize,
    k_prime: *mut usize,
) -> SmStatus {
    guard(|| {
        if k.is_null() || k_prime.is_null() {
            return SmStatus::NullPointer;
        }
        let Some(p) = bytes(pattern, len) else {
            return SmStatus::NullPointer;
        };
        let Ok(p) = Pattern::new(p.to_vec()) else {
            return SmStatus::EmptyPattern;
        };
        *k = one_collection(&derive_even_odd(&p)).k();
        *k_prime = greedy_one_factorization(p.as_bytes()).k();
        SmStatus::Ok
    })
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn sm_status_message(status: i32) -> *const c_char {
    let s: &'static [u8] = match status {
        0 => b"ok\0",
        1 => b"null pointer\0",
        2 => b"empty pattern\0",
        3 => b"invalid engine\0",
        4 => b"buffer too small\0",
        5 => b"internal panic\0",
        _ => b"unknown status\0",
    };
    s.as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;
    use std::ptr;

    fn matcher(p: &[u8], engine: SmEngine) -> *mut SmMatcher {
        let mut m = ptr::null_mut();
        let st = unsafe { sm_matcher_new(p.as_ptr(), p.len(), engine as u32, &mut m) };
        assert_eq!(st, SmStatus::Ok);
        m
    }

    #[test]
    fn search_into_exact_and_short_buffers() {
        let m = matcher(b"cagca", SmEngine::EncodedSwap);
        let t = b"cagcacagac";
        let mut buf = [0u64; 4];
        let mut found = 0;
        let st = unsafe { sm_matcher_search(m, t.as_ptr(), t.len(), buf.as_mut_ptr(), 4, &mut found) };
        assert_eq!((st, found, &buf[..2]), (SmStatus::Ok, 2, &[4u64, 9][..]));
        let st = unsafe { sm_matcher_search(m, t.as_ptr(), t.len(), buf.as_mut_ptr(), 1, &mut found) };
        assert_eq!((st, found, buf[0]), (SmStatus::BufferTooSmall, 2, 4));
        let st = unsafe { sm_matcher_search(m, t.as_ptr(), t.len(), ptr::null_mut(), 0, &mut found) };
        assert_eq!((st, found), (SmStatus::BufferTooSmall, 2));
        unsafe { sm_matcher_free(m) };
    }

    #[test]
    fn rejects_bad_arguments() {
        let mut m = ptr::null_mut();
        unsafe {
            assert_eq!(sm_matcher_new(b"".as_ptr(), 0, 0, &mut m), SmStatus::EmptyPattern);
            assert_eq!(sm_matcher_new(b"ab".as_ptr(), 2, 99, &mut m), SmStatus::InvalidEngine);
            assert_eq!(sm_matcher_new(ptr::null(), 2, 0, &mut m), SmStatus::NullPointer);
            assert_eq!(sm_matcher_new(b"ab".as_ptr(), 2, 0, ptr::null_mut()), SmStatus::NullPointer);
            assert!(m.is_null());
            let mut n = 0;
            assert_eq!(sm_matcher_count(ptr::null(), b"x".as_ptr(), 1, &mut n), SmStatus::NullPointer);
            sm_matcher_free(ptr::null_mut());
            sm_scanner_free(ptr::null_mut());
        }
    }

    extern "C" fn push(pos: u64, user: *mut c_void) {
        unsafe { (*user.cast::<Vec<u64>>()).push(pos) };
    }

    #[test]
    fn scanner_outlives_matcher_and_reports_absolute_positions() {
        let m = matcher(b"cagca", SmEngine::PlainSwap);
        let mut s = ptr::null_mut();
        unsafe {
            assert_eq!(sm_scanner_new(m, &mut s), SmStatus::Ok);
            sm_matcher_free(m);
            let mut got: Vec<u64> = Vec::new();
            let user = (&mut got as *mut Vec<u64>).cast();
            for part in b"cagcacagac".chunks(3) {
                assert_eq!(sm_scanner_feed(s, part.as_ptr(), part.len(), Some(push), user), SmStatus::Ok);
            }
            assert_eq!(got, vec![4, 9]);
            let mut consumed = 0;
            assert_eq!(sm_scanner_consumed(s, &mut consumed), SmStatus::Ok);
            assert_eq!(consumed, 10);
            assert_eq!(sm_scanner_reset(s), SmStatus::Ok);
            assert_eq!(sm_scanner_feed(s, b"ag".as_ptr(), 2, None, ptr::null_mut()), SmStatus::Ok);
            sm_scanner_consumed(s, &mut consumed);
            assert_eq!(consumed, 2);
            sm_scanner_free(s);
        }
    }

    #[test]
    fn factor_counts_of_cagca() {
        let (mut k, mut kp) = (0, 0);
        let st = unsafe { sm_factor_counts(b"cagca".as_ptr(), 5, &mut k, &mut kp) };
        assert_eq!((st, k, kp), (SmStatus::Ok, 3, 2));
    }

    #[test]
    fn messages_are_distinct() {
        let msgs: Vec<_> = (0..=6)
            .map(|s| unsafe { CStr::from_ptr(sm_status_message(s)) }.to_str().unwrap())
            .collect();
        assert_eq!(msgs[4], "buffer too small");
        let mut uniq = msgs.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), msgs.len());
    }
}
