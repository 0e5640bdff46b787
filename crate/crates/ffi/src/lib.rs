//! C ABI over the pipehopf engine.
//!
//! Every function returns a `PdStatus`; on failure `pd_last_error` describes the problem.
//! Handles are opaque and must be released with the matching `*_free` function.
//! Strings returned through `char **` are owned by the caller and released with `pd_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use pipehopf::harmonics::{ChainLimits, ChainTables};
use pipehopf::linear::FormalSum;
use pipehopf::paths::{count_walks, DyckPath};
use pipehopf::permutation::Permutation;
use pipehopf::pipedream::PipeDream;
use pipehopf::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    ResourceBound = 5,
    OutOfRange = 6,
    Overflow = 7,
    Panic = 8,
}

/// A permutation in one-line notation.
pub struct PdPermutation(Permutation);

/// A reduced pipe dream.
pub struct PdPipeDream(PipeDream);

/// An ordered list of pipe dreams.
pub struct PdPipeDreamList(Vec<PipeDream>);

/// A linear combination of pipe dreams with integer coefficients, sorted by basis element.
pub struct PdPipeDreamSum(Vec<(PipeDream, i64)>);

/// Tamari, Hopf and labeled Hopf chain counts for one size and length.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PdChainCounts {
    pub r: u64,
    pub tamari: u64,
    pub hopf: u64,
    pub labeled: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).expect("interior nuls removed"));
}

fn status_of(error: &Error) -> PdStatus {
    match error {
        Error::Parse { .. } => PdStatus::Parse,
        Error::ResourceBound(_) => PdStatus::ResourceBound,
        Error::Overflow(_) => PdStatus::Overflow,
        _ => PdStatus::Invalid,
    }
}

fn fail(status: PdStatus, message: impl Into<String>) -> PdStatus {
    set_error(message);
    status
}

fn guard(body: impl FnOnce() -> Result<(), PdStatus>) -> PdStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            PdStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(PdStatus::Panic, "internal panic"),
    }
}

fn engine<T>(result: pipehopf::Result<T>) -> Result<T, PdStatus> {
    result.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn input_str<'a>(text: *const c_char) -> Result<&'a str, PdStatus> {
    if text.is_null() {
        return Err(fail(PdStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(PdStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn input<'a, T>(handle: *const T) -> Result<&'a T, PdStatus> {
    handle.as_ref().ok_or_else(|| fail(PdStatus::NullPointer, "null handle"))
}

unsafe fn output<T>(slot: *mut T, value: T) -> Result<(), PdStatus> {
    if slot.is_null() {
        return Err(fail(PdStatus::NullPointer, "null output pointer"));
    }
    slot.write(value);
    Ok(())
}

unsafe fn output_string(slot: *mut *mut c_char, text: String) -> Result<(), PdStatus> {
    let owned = CString::new(text).map_err(|_| fail(PdStatus::Invalid, "string contains a nul byte"))?;
    output(slot, owned.into_raw())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message describing the most recent failure on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn pd_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// # Safety
/// `text` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn pd_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Parses a permutation such as "2431" or the comma form "2,4,3,1".
///
/// # Safety
/// `word` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_permutation_parse(word: *const c_char, out: *mut *mut PdPermutation) -> PdStatus {
    guard(|| {
        let permutation = engine(input_str(word)?.parse::<Permutation>())?;
        output(out, boxed(PdPermutation(permutation)))
    })
}

/// # Safety
/// `permutation` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn pd_permutation_free(permutation: *mut PdPermutation) {
    if !permutation.is_null() {
        drop(Box::from_raw(permutation));
    }
}

/// # Safety
/// `permutation` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_permutation_size(permutation: *const PdPermutation, out: *mut usize) -> PdStatus {
    guard(|| output(out, input(permutation)?.0.size()))
}

/// # Safety
/// `permutation` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_permutation_to_string(permutation: *const PdPermutation, out: *mut *mut c_char) -> PdStatus {
    guard(|| output_string(out, input(permutation)?.0.to_string()))
}

/// All reduced pipe dreams with the given exit permutation, in reading-word order.
///
/// # Safety
/// `permutation` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dreams_enumerate(
    permutation: *const PdPermutation,
    out: *mut *mut PdPipeDreamList,
) -> PdStatus {
    guard(|| {
        let omega = &input(permutation)?.0;
        if omega.size() > 10 {
            return Err(fail(PdStatus::ResourceBound, "pipe dream enumeration is limited to size 10"));
        }
        output(out, boxed(PdPipeDreamList(PipeDream::enumerate(omega))))
    })
}

/// # Safety
/// `list` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dream_list_len(list: *const PdPipeDreamList, out: *mut usize) -> PdStatus {
    guard(|| output(out, input(list)?.0.len()))
}

/// Copies entry `index` into a new handle.
///
/// # Safety
/// `list` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dream_list_get(
    list: *const PdPipeDreamList,
    index: usize,
    out: *mut *mut PdPipeDream,
) -> PdStatus {
    guard(|| {
        let items = &input(list)?.0;
        let item = items
            .get(index)
            .ok_or_else(|| fail(PdStatus::OutOfRange, format!("index {index} out of range for {} items", items.len())))?;
        output(out, boxed(PdPipeDream(item.clone())))
    })
}

/// # Safety
/// `list` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dream_list_free(list: *mut PdPipeDreamList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Parses rows of '+' (cross) and '.' (elbow) separated by '/' or newlines.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dream_parse(text: *const c_char, out: *mut *mut PdPipeDream) -> PdStatus {
    guard(|| {
        let dream = engine(input_str(text)?.parse::<PipeDream>())?;
        output(out, boxed(PdPipeDream(dream)))
    })
}

/// # Safety
/// `dream` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dream_free(dream: *mut PdPipeDream) {
    if !dream.is_null() {
        drop(Box::from_raw(dream));
    }
}

/// Rows of '+' and '.', top row first, separated by newlines.
///
/// # Safety
/// `dream` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dream_to_string(dream: *const PdPipeDream, out: *mut *mut c_char) -> PdStatus {
    guard(|| output_string(out, input(dream)?.0.to_ascii()))
}

/// # Safety
/// `dream` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dream_exit_permutation(dream: *const PdPipeDream, out: *mut *mut PdPermutation) -> PdStatus {
    guard(|| output(out, boxed(PdPermutation(input(dream)?.0.exit_permutation()))))
}

fn to_sum(sum: FormalSum<PipeDream>) -> Result<PdPipeDreamSum, PdStatus> {
    sum.iter()
        .map(|(p, c)| {
            c.to_i64()
                .map(|c| (p.clone(), c))
                .ok_or_else(|| fail(PdStatus::Overflow, "coefficient exceeds 64 bits"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(PdPipeDreamSum)
}

/// # Safety
/// `left` and `right` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dream_product(
    left: *const PdPipeDream,
    right: *const PdPipeDream,
    out: *mut *mut PdPipeDreamSum,
) -> PdStatus {
    guard(|| {
        let (p, q) = (&input(left)?.0, &input(right)?.0);
        if p.size() + q.size() > 12 {
            return Err(fail(PdStatus::ResourceBound, "products are limited to total size 12"));
        }
        output(out, boxed(to_sum(p.product(q))?))
    })
}

/// # Safety
/// `sum` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dream_sum_len(sum: *const PdPipeDreamSum, out: *mut usize) -> PdStatus {
    guard(|| output(out, input(sum)?.0.len()))
}

/// Copies term `index` into a new handle and its coefficient.
///
/// # Safety
/// `sum` must be a live handle; `dream` and `coefficient` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dream_sum_get(
    sum: *const PdPipeDreamSum,
    index: usize,
    dream: *mut *mut PdPipeDream,
    coefficient: *mut i64,
) -> PdStatus {
    guard(|| {
        let terms = &input(sum)?.0;
        let (p, c) = terms
            .get(index)
            .ok_or_else(|| fail(PdStatus::OutOfRange, format!("index {index} out of range for {} terms", terms.len())))?;
        output(coefficient, *c)?;
        output(dream, boxed(PdPipeDream(p.clone())))
    })
}

/// # Safety
/// `sum` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn pd_pipe_dream_sum_free(sum: *mut PdPipeDreamSum) {
    if !sum.is_null() {
        drop(Box::from_raw(sum));
    }
}

/// Applies the zeta map, or its inverse when `inverse` is nonzero, to an N/E word.
///
/// # Safety
/// `word` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_zeta(word: *const c_char, inverse: i32, out: *mut *mut c_char) -> PdStatus {
    guard(|| {
        let path = engine(input_str(word)?.parse::<DyckPath>())?;
        let image = if inverse != 0 { path.zeta_inverse() } else { path.zeta() };
        output_string(out, image.to_string())
    })
}

/// Number of quarter-plane walks of length 2n.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_walk_count(n: usize, out: *mut u64) -> PdStatus {
    guard(|| {
        if n > 30 {
            return Err(fail(PdStatus::ResourceBound, "walk counts are limited to n = 30"));
        }
        let count = count_walks(n)
            .to_u64()
            .ok_or_else(|| fail(PdStatus::Overflow, "count exceeds 64 bits"))?;
        output(out, count)
    })
}

/// Chain counts of size `n` (at most 5) and length `r`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pd_chain_counts(n: usize, r: usize, out: *mut PdChainCounts) -> PdStatus {
    guard(|| {
        if r == 0 {
            return Err(fail(PdStatus::Invalid, "chain length must be positive"));
        }
        let tables = engine(ChainTables::new(n, &ChainLimits::default()))?;
        let counts = tables.counts(r);
        let narrow = |v: &pipehopf::linear::Integer| v.to_u64().ok_or_else(|| fail(PdStatus::Overflow, "count exceeds 64 bits"));
        output(
            out,
            PdChainCounts {
                r: r as u64,
                tamari: narrow(&counts.tamari)?,
                hopf: narrow(&counts.hopf)?,
                labeled: narrow(&counts.labeled)?,
            },
        )
    })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn pd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
