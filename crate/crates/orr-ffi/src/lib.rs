//! C interface to the ORR constructor and verifier.
//!
//! Groups are held behind the opaque `OrrGroup` handle. Every fallible
//! function returns an `OrrStatus` and writes its result through an out
//! pointer. Strings returned through out pointers are heap-allocated
//! and must be released with `orr_string_free`; group handles must be
//! released with `orr_group_free`. The C header is generated into
//! `include/orr.h` when this crate is built.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use orr_core::aut::{verify_orr, DEFAULT_NODE_BUDGET};
use orr_core::cayley::ConnectionSet;
use orr_core::construct::ConstructOptions;
use orr_core::group::parse_group_json;
use orr_core::report::analyze;
use orr_core::{Elem, GroupTable, OrrError};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrrStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input could not be parsed.
    ParseError = 3,
    /// The table or permutations do not describe a group.
    NotAGroup = 4,
    /// The candidate set is invalid (identity, duplicate, or out of
    /// range).
    BadSet = 5,
    /// A search budget ran out before an answer was reached.
    BudgetExhausted = 6,
    /// An internal invariant failed; this is a bug, not bad input.
    InternalError = 7,
}

/// Opaque handle to a loaded group.
pub struct OrrGroup {
    name: String,
    table: GroupTable,
}

/// Result of verifying one candidate connection set.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct OrrVerifyResult {
    /// S ∩ S⁻¹ = ∅.
    pub oriented: bool,
    /// S generates the group.
    pub generates: bool,
    /// The Cayley digraph is an ORR of the group.
    pub is_orr: bool,
    /// Order of the stabilizer of the identity vertex, saturated to
    /// the maximum when it exceeds 64 bits.
    pub stabilizer_order: u64,
}

fn status_of(e: &OrrError) -> OrrStatus {
    match e {
        OrrError::Parse(_) | OrrError::Io(_) => OrrStatus::ParseError,
        OrrError::NotAGroup(_) | OrrError::ClosureTooLarge { .. } | OrrError::OrderMismatch(_) => {
            OrrStatus::NotAGroup
        }
        OrrError::IdentityInSet | OrrError::BadSet(_) | OrrError::NotGenerating
        | OrrError::WrongRank { .. } => OrrStatus::BadSet,
        OrrError::BudgetExhausted { .. } => OrrStatus::BudgetExhausted,
        OrrError::VerificationFailed(_) | OrrError::ChainTooShort { .. } => {
            OrrStatus::InternalError
        }
    }
}

/// Runs `f`, converting panics into `InternalError` so they never
/// unwind across the C boundary.
fn guarded<F: FnOnce() -> OrrStatus>(f: F) -> OrrStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(OrrStatus::InternalError)
}

/// Parses a group from its JSON description (kind "table" or "perm")
/// and writes a new handle to `out`.
///
/// # Safety
///
/// `json` must point to a NUL-terminated string and `out` to writable
/// space for one pointer. On success the handle must be released with
/// `orr_group_free`.
#[no_mangle]
pub unsafe extern "C" fn orr_group_from_json(
    json: *const c_char,
    out: *mut *mut OrrGroup,
) -> OrrStatus {
    if json.is_null() || out.is_null() {
        return OrrStatus::NullArgument;
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => return OrrStatus::InvalidUtf8,
    };
    guarded(|| match parse_group_json(text) {
        Ok((name, table)) => {
            *out = Box::into_raw(Box::new(OrrGroup { name, table }));
            OrrStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Builds a group from a row-major multiplication table over element
/// indices 0..order (index 0 is the identity) and writes a new handle
/// to `out`. `name` may be null.
///
/// # Safety
///
/// `entries` must point to `order * order` values, `name` (when not
/// null) to a NUL-terminated string, and `out` to writable space for
/// one pointer. On success the handle must be released with
/// `orr_group_free`.
#[no_mangle]
pub unsafe extern "C" fn orr_group_from_table(
    order: u32,
    entries: *const u16,
    name: *const c_char,
    out: *mut *mut OrrGroup,
) -> OrrStatus {
    if entries.is_null() || out.is_null() {
        return OrrStatus::NullArgument;
    }
    let n = order as usize;
    let flat = std::slice::from_raw_parts(entries, n * n);
    let label = if name.is_null() {
        Ok("table".to_string())
    } else {
        CStr::from_ptr(name)
            .to_str()
            .map(str::to_string)
            .map_err(|_| OrrStatus::InvalidUtf8)
    };
    let label = match label {
        Ok(l) => l,
        Err(s) => return s,
    };
    guarded(|| {
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|i| flat[i * n..(i + 1) * n].iter().map(|&x| x as usize).collect())
            .collect();
        match GroupTable::from_rows(&rows) {
            Ok(table) => {
                *out = Box::into_raw(Box::new(OrrGroup { name: label, table }));
                OrrStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Order of the group, or 0 for a null handle.
///
/// # Safety
///
/// `group` must be null or a live handle from a constructor.
#[no_mangle]
pub unsafe extern "C" fn orr_group_order(group: *const OrrGroup) -> u32 {
    if group.is_null() {
        return 0;
    }
    (*group).table.order() as u32
}

/// Releases a group handle. Null is ignored.
///
/// # Safety
///
/// `group` must be null or a handle from a constructor, released at
/// most once.
#[no_mangle]
pub unsafe extern "C" fn orr_group_free(group: *mut OrrGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Analyzes the group and writes the verdict as a JSON string to
/// `out_json`. `seed` drives sampled searches, `candidate_budget`
/// bounds brute-force fallbacks (pass 0 for the default), and
/// `full_aut` forces the full stabilizer search.
///
/// # Safety
///
/// `group` must be a live handle and `out_json` writable space for one
/// pointer. On success the string must be released with
/// `orr_string_free`.
#[no_mangle]
pub unsafe extern "C" fn orr_analyze(
    group: *const OrrGroup,
    seed: u64,
    candidate_budget: u64,
    full_aut: bool,
    out_json: *mut *mut c_char,
) -> OrrStatus {
    if group.is_null() || out_json.is_null() {
        return OrrStatus::NullArgument;
    }
    let g = &*group;
    guarded(|| {
        let defaults = ConstructOptions::default();
        let opts = ConstructOptions {
            allow_fast_path: !full_aut,
            seed,
            candidate_budget: if candidate_budget == 0 {
                defaults.candidate_budget
            } else {
                candidate_budget
            },
            ..defaults
        };
        let verdict = match analyze(&g.name, &g.table, &opts) {
            Ok(v) => v,
            Err(e) => return status_of(&e),
        };
        let json = match serde_json_string(&verdict) {
            Some(j) => j,
            None => return OrrStatus::InternalError,
        };
        match CString::new(json) {
            Ok(c) => {
                *out_json = c.into_raw();
                OrrStatus::Ok
            }
            Err(_) => OrrStatus::InternalError,
        }
    })
}

fn serde_json_string<T: serde::Serialize>(value: &T) -> Option<String> {
    serde_json::to_string(value).ok()
}

/// Verifies one candidate connection set given as element indices and
/// fills `out`.
///
/// # Safety
///
/// `group` must be a live handle, `set` must point to `set_len`
/// indices, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn orr_verify(
    group: *const OrrGroup,
    set: *const u16,
    set_len: usize,
    full_aut: bool,
    out: *mut OrrVerifyResult,
) -> OrrStatus {
    if group.is_null() || out.is_null() || (set.is_null() && set_len > 0) {
        return OrrStatus::NullArgument;
    }
    let g = &*group;
    let elems: Vec<Elem> = if set_len == 0 {
        Vec::new()
    } else {
        std::slice::from_raw_parts(set, set_len).to_vec()
    };
    guarded(|| {
        let cs = match ConnectionSet::new(&g.table, &elems) {
            Ok(cs) => cs,
            Err(e) => return status_of(&e),
        };
        match verify_orr(&g.table, &cs, !full_aut, DEFAULT_NODE_BUDGET) {
            Ok(report) => {
                *out = OrrVerifyResult {
                    oriented: report.oriented,
                    generates: report.generates,
                    is_orr: report.is_orr,
                    stabilizer_order: report.stabilizer_order.min(u64::MAX as u128) as u64,
                };
                OrrStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
///
/// `s` must be null or a string from this library, released at most
/// once.
#[no_mangle]
pub unsafe extern "C" fn orr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static name for a status code, for error messages.
#[no_mangle]
pub extern "C" fn orr_status_name(status: OrrStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        OrrStatus::Ok => b"ok\0",
        OrrStatus::NullArgument => b"null argument\0",
        OrrStatus::InvalidUtf8 => b"invalid utf-8\0",
        OrrStatus::ParseError => b"parse error\0",
        OrrStatus::NotAGroup => b"not a group\0",
        OrrStatus::BadSet => b"bad connection set\0",
        OrrStatus::BudgetExhausted => b"budget exhausted\0",
        OrrStatus::InternalError => b"internal error\0",
    };
    name.as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    const C6: &str = include_str!("../../../fixtures/order_le16/c6.json");
    const Q8: &str = include_str!("../../../fixtures/order_le16/q8.json");

    fn load(json: &str) -> *mut OrrGroup {
        let c = CString::new(json).unwrap();
        let mut handle: *mut OrrGroup = ptr::null_mut();
        let status = unsafe { orr_group_from_json(c.as_ptr(), &mut handle) };
        assert_eq!(status, OrrStatus::Ok);
        assert!(!handle.is_null());
        handle
    }

    #[test]
    fn group_round_trip() {
        let g = load(C6);
        assert_eq!(unsafe { orr_group_order(g) }, 6);
        unsafe { orr_group_free(g) };
        assert_eq!(unsafe { orr_group_order(ptr::null()) }, 0);
    }

    #[test]
    fn analyze_returns_json() {
        let g = load(C6);
        let mut out: *mut c_char = ptr::null_mut();
        let status = unsafe { orr_analyze(g, 0, 0, false, &mut out) };
        assert_eq!(status, OrrStatus::Ok);
        let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
        unsafe { orr_string_free(out) };
        unsafe { orr_group_free(g) };
        assert!(text.contains("\"answer\":\"ORR\""), "{text}");
        assert!(text.contains("\"aut_order\":6"), "{text}");
    }

    #[test]
    fn analyze_reports_refusals() {
        let g = load(Q8);
        let mut out: *mut c_char = ptr::null_mut();
        let status = unsafe { orr_analyze(g, 0, 0, false, &mut out) };
        assert_eq!(status, OrrStatus::Ok);
        let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
        unsafe { orr_string_free(out) };
        unsafe { orr_group_free(g) };
        assert!(text.contains("\"answer\":\"NO_ORR\""), "{text}");
        assert!(text.contains("exception:q8"), "{text}");
    }

    #[test]
    fn verify_candidate_sets() {
        let g = load(Q8);
        let set: [u16; 3] = [1, 2, 3];
        let mut out = OrrVerifyResult {
            oriented: false,
            generates: false,
            is_orr: false,
            stabilizer_order: 0,
        };
        let status = unsafe { orr_verify(g, set.as_ptr(), set.len(), false, &mut out) };
        assert_eq!(status, OrrStatus::Ok);
        assert!(out.oriented);
        assert!(out.generates);
        assert!(!out.is_orr);
        assert_eq!(out.stabilizer_order, 3);
        let bad: [u16; 1] = [0];
        let status = unsafe { orr_verify(g, bad.as_ptr(), 1, false, &mut out) };
        assert_eq!(status, OrrStatus::BadSet);
        unsafe { orr_group_free(g) };
    }

    #[test]
    fn table_constructor_and_errors() {
        // C3 as a bare table.
        let flat: [u16; 9] = [0, 1, 2, 1, 2, 0, 2, 0, 1];
        let name = CString::new("C3").unwrap();
        let mut handle: *mut OrrGroup = ptr::null_mut();
        let status =
            unsafe { orr_group_from_table(3, flat.as_ptr(), name.as_ptr(), &mut handle) };
        assert_eq!(status, OrrStatus::Ok);
        assert_eq!(unsafe { orr_group_order(handle) }, 3);
        unsafe { orr_group_free(handle) };

        // Broken table: row 1 is not a permutation.
        let broken: [u16; 4] = [0, 1, 1, 1];
        let status =
            unsafe { orr_group_from_table(2, broken.as_ptr(), ptr::null(), &mut handle) };
        assert_eq!(status, OrrStatus::NotAGroup);

        let status = unsafe { orr_group_from_json(ptr::null(), &mut handle) };
        assert_eq!(status, OrrStatus::NullArgument);
        let garbage = CString::new("{!").unwrap();
        let status = unsafe { orr_group_from_json(garbage.as_ptr(), &mut handle) };
        assert_eq!(status, OrrStatus::ParseError);
    }
}
