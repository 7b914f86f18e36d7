//! C ABI for the workbench. The surface is handle-based: a `SglWorkbench`
//! owns one enumerated Coxeter system plus its lazily built Kazhdan-Lusztig
//! table, every entry point returns an `SglStatus`, and all structured
//! results come back as heap-allocated strings (JSON or CSV) released with
//! `sgl_string_free`. Errors never unwind across the boundary: panics are
//! caught and reported as `SGL_STATUS_INTERNAL`, and the message of the most
//! recent failure on the calling thread is available from
//! `sgl_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::{Arc, OnceLock};

use soergel::categorify;
use soergel::coxeter::{build_named, parse_word, CoxeterMatrix, CoxeterSystem};
use soergel::hecke::{KLRoute, KLTable, SignConvention};

/// Result code of every FFI entry point.
#[repr(C)]
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum SglStatus {
    /// The call succeeded.
    SglStatusOk = 0,
    /// A pointer argument was null or a string was not valid UTF-8.
    SglStatusBadArgument = 1,
    /// The input parsed but was rejected (unknown type, bad word, ...).
    SglStatusInvalidInput = 2,
    /// Group enumeration exceeded the element cap.
    SglStatusTooLarge = 3,
    /// A verification subroutine ran and reported violations.
    SglStatusCheckFailed = 4,
    /// An internal invariant failed (a panic was caught at the boundary).
    SglStatusInternal = 5,
}

use SglStatus::*;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// One enumerated group with its lazily built KL table.
pub struct SglWorkbench {
    sys: Arc<CoxeterSystem>,
    table: OnceLock<KLTable>,
}

impl SglWorkbench {
    fn table(&self) -> &KLTable {
        self.table.get_or_init(|| KLTable::build(self.sys.clone(), KLRoute::MuRecursion))
    }
}

/// Runs a fallible body with panic containment, storing any error message.
fn guarded(body: impl FnOnce() -> Result<(), (SglStatus, String)>) -> SglStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SglStatusOk,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_error(&msg);
            SglStatusInternal
        }
    }
}

/// # Safety
/// `ptr` must be null or valid for reads of a NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, (SglStatus, String)> {
    if ptr.is_null() {
        return Err((SglStatusBadArgument, "null string argument".into()));
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| (SglStatusBadArgument, "string argument is not valid UTF-8".into()))
}

fn out_string(text: String, out: *mut *mut c_char) -> Result<(), (SglStatus, String)> {
    if out.is_null() {
        return Err((SglStatusBadArgument, "null output pointer".into()));
    }
    let c = CString::new(text)
        .map_err(|_| (SglStatusInternal, "output contained an interior NUL".into()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

unsafe fn workbench<'a>(ptr: *const SglWorkbench) -> Result<&'a SglWorkbench, (SglStatus, String)> {
    if ptr.is_null() {
        return Err((SglStatusBadArgument, "null workbench handle".into()));
    }
    Ok(unsafe { &*ptr })
}

fn build_status(e: &soergel::CoxeterError) -> SglStatus {
    match e {
        soergel::CoxeterError::GroupTooLarge { .. } => SglStatusTooLarge,
        _ => SglStatusInvalidInput,
    }
}

fn word_elt(
    sys: &CoxeterSystem,
    word: &str,
) -> Result<soergel::EltId, (SglStatus, String)> {
    let letters = parse_word(word).map_err(|e| (SglStatusInvalidInput, e.to_string()))?;
    sys.element_of_word(&letters).map_err(|e| (SglStatusInvalidInput, e.to_string()))
}

/// Builds a workbench from a named type such as "A3", "B3", "H4", or
/// "I2(7)". `max_elements` caps the enumeration (0 means the default cap).
/// On success writes a handle that must be released with
/// `sgl_workbench_free`.
///
/// # Safety
/// `name` must point to a NUL-terminated string and `out` to writable space
/// for one pointer.
#[no_mangle]
pub unsafe extern "C" fn sgl_workbench_new_named(
    name: *const c_char,
    max_elements: usize,
    out: *mut *mut SglWorkbench,
) -> SglStatus {
    guarded(|| {
        let name = unsafe { read_str(name) }?;
        if out.is_null() {
            return Err((SglStatusBadArgument, "null output pointer".into()));
        }
        let cap = if max_elements == 0 { soergel::DEFAULT_MAX_ELEMENTS } else { max_elements };
        let sys = build_named(name, cap).map_err(|e| (build_status(&e), e.to_string()))?;
        let handle = Box::new(SglWorkbench { sys, table: OnceLock::new() });
        unsafe { *out = Box::into_raw(handle) };
        Ok(())
    })
}

/// Builds a workbench from a Coxeter matrix in JSON form
/// (`{"rank":2,"m":[[1,5],[5,1]]}`, with 0 standing for an infinite bond).
///
/// # Safety
/// `json` must point to a NUL-terminated string and `out` to writable space
/// for one pointer.
#[no_mangle]
pub unsafe extern "C" fn sgl_workbench_new_json(
    json: *const c_char,
    max_elements: usize,
    out: *mut *mut SglWorkbench,
) -> SglStatus {
    guarded(|| {
        let text = unsafe { read_str(json) }?;
        if out.is_null() {
            return Err((SglStatusBadArgument, "null output pointer".into()));
        }
        let matrix =
            CoxeterMatrix::from_json(text).map_err(|e| (SglStatusInvalidInput, e.to_string()))?;
        let cap = if max_elements == 0 { soergel::DEFAULT_MAX_ELEMENTS } else { max_elements };
        let sys = CoxeterSystem::build(matrix, cap)
            .map(Arc::new)
            .map_err(|e| (build_status(&e), e.to_string()))?;
        let handle = Box::new(SglWorkbench { sys, table: OnceLock::new() });
        unsafe { *out = Box::into_raw(handle) };
        Ok(())
    })
}

/// Releases a workbench handle. Null is ignored.
///
/// # Safety
/// `ptr` must be null or a handle produced by a constructor, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sgl_workbench_free(ptr: *mut SglWorkbench) {
    if !ptr.is_null() {
        drop(unsafe { Box::from_raw(ptr) });
    }
}

/// Number of group elements.
///
/// # Safety
/// `wb` must be a live workbench handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sgl_group_size(wb: *const SglWorkbench, out: *mut u64) -> SglStatus {
    guarded(|| {
        let wb = unsafe { workbench(wb) }?;
        if out.is_null() {
            return Err((SglStatusBadArgument, "null output pointer".into()));
        }
        unsafe { *out = wb.sys.size() as u64 };
        Ok(())
    })
}

/// Number of simple generators.
///
/// # Safety
/// `wb` must be a live workbench handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sgl_group_rank(wb: *const SglWorkbench, out: *mut u64) -> SglStatus {
    guarded(|| {
        let wb = unsafe { workbench(wb) }?;
        if out.is_null() {
            return Err((SglStatusBadArgument, "null output pointer".into()));
        }
        unsafe { *out = wb.sys.rank() as u64 };
        Ok(())
    })
}

/// Length of the longest element.
///
/// # Safety
/// `wb` must be a live workbench handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sgl_longest_length(wb: *const SglWorkbench, out: *mut u64) -> SglStatus {
    guarded(|| {
        let wb = unsafe { workbench(wb) }?;
        if out.is_null() {
            return Err((SglStatusBadArgument, "null output pointer".into()));
        }
        unsafe { *out = wb.sys.length(wb.sys.longest_element()) as u64 };
        Ok(())
    })
}

/// The KL coefficient polynomial of a pair of words, as a JSON object
/// `{"y":...,"x":...,"poly":{"coeffs":{...}},"mu":...}`. Words are
/// comma-separated 1-based generator indices ("2,1,3,2"); "" or "e" is the
/// identity. The string must be released with `sgl_string_free`.
///
/// # Safety
/// `wb` must be a live workbench handle; `y_word` and `x_word` must be
/// NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sgl_kl_poly_json(
    wb: *const SglWorkbench,
    y_word: *const c_char,
    x_word: *const c_char,
    out: *mut *mut c_char,
) -> SglStatus {
    guarded(|| {
        let wb = unsafe { workbench(wb) }?;
        let y = word_elt(&wb.sys, unsafe { read_str(y_word) }?)?;
        let x = word_elt(&wb.sys, unsafe { read_str(x_word) }?)?;
        let table = wb.table();
        let value = serde_json::json!({
            "y": wb.sys.word_string(y),
            "x": wb.sys.word_string(x),
            "poly": serde_json::to_value(table.poly(y, x)).expect("infallible"),
            "mu": table.mu(y, x).to_string(),
        });
        out_string(value.to_string(), out)
    })
}

/// The full KL table as CSV with header `y_word,x_word,poly_json,mu`,
/// released with `sgl_string_free`.
///
/// # Safety
/// `wb` must be a live workbench handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sgl_kl_table_csv(
    wb: *const SglWorkbench,
    out: *mut *mut c_char,
) -> SglStatus {
    guarded(|| {
        let wb = unsafe { workbench(wb) }?;
        let mut buf = Vec::new();
        wb.table().export_csv(&mut buf).map_err(|e| (SglStatusInternal, e.to_string()))?;
        let text =
            String::from_utf8(buf).map_err(|e| (SglStatusInternal, e.to_string()))?;
        out_string(text, out)
    })
}

/// Decomposition of the Bott-Samelson class of a word into shifted
/// indecomposables, as JSON `{"word":[...],"summands":[...]}`; released with
/// `sgl_string_free`.
///
/// # Safety
/// `wb` must be a live workbench handle; `word` must be a NUL-terminated
/// string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sgl_bs_decompose_json(
    wb: *const SglWorkbench,
    word: *const c_char,
    out: *mut *mut c_char,
) -> SglStatus {
    guarded(|| {
        let wb = unsafe { workbench(wb) }?;
        let letters = parse_word(unsafe { read_str(word) }?)
            .map_err(|e| (SglStatusInvalidInput, e.to_string()))?;
        let class = categorify::bs_class(wb.table(), &letters)
            .map_err(|e| (SglStatusInvalidInput, e.to_string()))?;
        out_string(class.to_json(Some(&letters)).to_string(), out)
    })
}

/// Verifies the KL inversion identity over all pairs under the named sign
/// convention ("paper" or "corrected"). Returns `SGL_STATUS_OK` when the
/// defect vanishes identically and `SGL_STATUS_CHECK_FAILED` when it does
/// not; the verdict JSON is written either way.
///
/// # Safety
/// `wb` must be a live workbench handle; `convention` must be a
/// NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sgl_inversion_verify_json(
    wb: *const SglWorkbench,
    convention: *const c_char,
    out: *mut *mut c_char,
) -> SglStatus {
    let mut passed = true;
    let status = guarded(|| {
        let wb = unsafe { workbench(wb) }?;
        let conv: SignConvention = unsafe { read_str(convention) }?
            .parse()
            .map_err(|e: String| (SglStatusInvalidInput, e))?;
        let scan = wb.table().inversion_scan(conv);
        passed = scan.passed();
        let verdict = serde_json::json!({
            "check": "inversion",
            "convention": conv.to_string(),
            "pairs_checked": scan.pairs_checked,
            "violations": scan.violations,
            "passed": scan.passed(),
        });
        out_string(verdict.to_string(), out)
    });
    if status == SglStatusOk && !passed {
        set_error("inversion identity violated");
        return SglStatusCheckFailed;
    }
    status
}

/// Releases a string produced by this library. Null is ignored.
///
/// # Safety
/// `ptr` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sgl_string_free(ptr: *mut c_char) {
    if !ptr.is_null() {
        drop(unsafe { CString::from_raw(ptr) });
    }
}

/// Message of the most recent failure on the calling thread, or null when
/// the last call succeeded. The pointer is valid until the next FFI call on
/// the same thread; do not free it.
#[no_mangle]
pub extern "C" fn sgl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr())
    })
}
