//! C ABI over the equal-quartics engine.
//!
//! Every entry point returns an [`Eq4Status`]. On failure a message is kept
//! per thread and can be read with [`eq4_last_error`]. Search results come
//! back as an opaque [`Eq4SolutionList`] that the caller frees with
//! [`eq4_list_free`]; strings handed out are freed with [`eq4_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use num_bigint::BigInt;

use equal_quartics::brute::{brute_search, BruteBounds};
use equal_quartics::elliptic::{build_curve, parse_rational, solutions_from_point, CurvePoint};
use equal_quartics::families::{generate, FamilyId, Generation};
use equal_quartics::meet::meet_search;
use equal_quartics::pipeline::{search_h, verify_file, Overrides, SearchConfig};
use equal_quartics::{verify, Error, Solution};

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eq4Status {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    OutOfRange = 5,
    Io = 6,
    Overflow = 7,
    Panic = 8,
}

/// Field selector for [`eq4_list_field`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eq4Field {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
    Weight = 4,
    Method = 5,
}

/// Normalized solutions owned by the library.
pub struct Eq4SolutionList {
    items: Vec<Solution>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(Eq4Status, String);

fn set_last_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(e: &Error) -> Eq4Status {
    match e {
        Error::Io { .. } => Eq4Status::Io,
        Error::ParseRational(_) | Error::UnknownFamily(_) | Error::Config(_) => Eq4Status::Parse,
        Error::CoordinateOverflow { .. } => Eq4Status::Overflow,
        _ => Eq4Status::InvalidArgument,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> Eq4Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            Eq4Status::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            Eq4Status::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(Eq4Status::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(Eq4Status::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn integer(p: *const c_char, what: &str) -> Result<BigInt, Failure> {
    let s = text(p, what)?;
    s.trim()
        .parse()
        .map_err(|_| Failure(Eq4Status::Parse, format!("{what}: {s:?} is not an integer")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(Eq4Status::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn hand_out(out: *mut *mut Eq4SolutionList, items: Vec<Solution>) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(Eq4Status::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(Eq4SolutionList { items }));
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn eq4_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Checks A⁴ + h·B⁴ = C⁴ + h·D⁴ exactly for signed decimal strings.
///
/// # Safety
/// The string arguments must be null or NUL-terminated; `out_holds` must be
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn eq4_verify(
    h: u64,
    a: *const c_char,
    b: *const c_char,
    c: *const c_char,
    d: *const c_char,
    out_holds: *mut bool,
) -> Eq4Status {
    guard(|| {
        let [a, b, c, d] = [
            integer(a, "a")?,
            integer(b, "b")?,
            integer(c, "c")?,
            integer(d, "d")?,
        ];
        write_out(out_holds, verify(h, &a, &b, &c, &d))
    })
}

/// Exhaustive search over C ≤ c_max, a_min ≤ A ≤ a_max, B, D ≤ b_max.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn eq4_brute_search(
    h: u64,
    a_min: u64,
    a_max: u64,
    b_max: u64,
    c_max: u64,
    out: *mut *mut Eq4SolutionList,
) -> Eq4Status {
    guard(|| {
        let bounds = BruteBounds::new(a_min, a_max, b_max, c_max)?;
        let mut items = Vec::new();
        brute_search(h, &bounds, &mut |s| items.push(s))?;
        hand_out(out, items)
    })
}

/// Sorted-sum collision search with distinct bucket primes p, q ≡ 3 (mod 4).
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn eq4_meet_search(
    h: u64,
    p: u64,
    q: u64,
    a_max: u64,
    b_max: u64,
    out: *mut *mut Eq4SolutionList,
) -> Eq4Status {
    guard(|| {
        let mut items = Vec::new();
        meet_search(h, p, q, a_max, b_max, &mut |s| items.push(s))?;
        hand_out(out, items)
    })
}

/// Evaluates a named family. An inadmissible parameter choice yields an
/// empty list, not an error.
///
/// # Safety
/// `name` must be NUL-terminated; `params` must point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn eq4_family(
    name: *const c_char,
    params: *const i64,
    len: usize,
    out: *mut *mut Eq4SolutionList,
) -> Eq4Status {
    guard(|| {
        let id: FamilyId = text(name, "name")?.parse()?;
        if params.is_null() && len > 0 {
            return Err(Failure(Eq4Status::NullPointer, "params is null".into()));
        }
        let params = if len == 0 { &[][..] } else { std::slice::from_raw_parts(params, len) };
        let items = match generate(id, params)? {
            Generation::Admissible(g) => vec![g.solution],
            Generation::Inadmissible(_) => Vec::new(),
        };
        hand_out(out, items)
    })
}

/// Walks the multiples of the point (x, y) on the curve for (h, a, b).
/// Coordinates are decimal "num/den" strings.
///
/// # Safety
/// `x` and `y` must be NUL-terminated; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn eq4_elliptic(
    h: u64,
    a: u64,
    b: u64,
    x: *const c_char,
    y: *const c_char,
    max_multiple: u64,
    out: *mut *mut Eq4SolutionList,
) -> Eq4Status {
    guard(|| {
        let curve = build_curve(a, b, h)?;
        let point = CurvePoint::affine(parse_rational(text(x, "x")?)?, parse_rational(text(y, "y")?)?);
        let mut items = Vec::new();
        solutions_from_point(&curve, &point, max_multiple, &mut |s| items.push(s))?;
        hand_out(out, items)
    })
}

/// Runs the strategy ladder for one h. `config_toml` uses the same keys as
/// the CLI config file and may be null for defaults. The list is ordered
/// with the smallest solution first and is empty when h stays unsolved.
///
/// # Safety
/// `config_toml` must be null or NUL-terminated; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn eq4_search_h(
    h: u64,
    config_toml: *const c_char,
    out: *mut *mut Eq4SolutionList,
) -> Eq4Status {
    guard(|| {
        let mut cfg = SearchConfig::default();
        if !config_toml.is_null() {
            Overrides::from_toml(text(config_toml, "config")?)?.apply(&mut cfg)?;
        }
        hand_out(out, search_h(h, &cfg).solutions)
    })
}

/// Re-verifies a record file, reporting how many lines were checked and how
/// many failed.
///
/// # Safety
/// `path` must be NUL-terminated; the outputs must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn eq4_verify_file(
    path: *const c_char,
    out_checked: *mut usize,
    out_failed: *mut usize,
) -> Eq4Status {
    guard(|| {
        let report = verify_file(Path::new(text(path, "path")?))?;
        write_out(out_checked, report.checked)?;
        write_out(out_failed, report.failures.len())
    })
}

/// Number of solutions in the list; 0 for null.
///
/// # Safety
/// `list` must be null or a live list from this library.
#[no_mangle]
pub unsafe extern "C" fn eq4_list_len(list: *const Eq4SolutionList) -> usize {
    list.as_ref().map_or(0, |l| l.items.len())
}

unsafe fn entry<'a>(list: *const Eq4SolutionList, index: usize) -> Result<&'a Solution, Failure> {
    let list = list
        .as_ref()
        .ok_or(Failure(Eq4Status::NullPointer, "list is null".to_string()))?;
    list.items.get(index).ok_or(Failure(
        Eq4Status::OutOfRange,
        format!("index {index} out of range for {} solutions", list.items.len()),
    ))
}

/// Writes the h of entry `index` to `out_h`.
///
/// # Safety
/// `list` must be null or live; `out_h` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn eq4_list_h(
    list: *const Eq4SolutionList,
    index: usize,
    out_h: *mut u64,
) -> Eq4Status {
    guard(|| write_out(out_h, entry(list, index)?.h))
}

/// Returns a field of entry `index` as a newly allocated decimal string
/// (or method name), or null on error. Free it with [`eq4_string_free`].
///
/// # Safety
/// `list` must be null or a live list from this library.
#[no_mangle]
pub unsafe extern "C" fn eq4_list_field(
    list: *const Eq4SolutionList,
    index: usize,
    field: Eq4Field,
) -> *mut c_char {
    let mut result = ptr::null_mut();
    guard(|| {
        let s = entry(list, index)?;
        let value = match field {
            Eq4Field::A => s.a.to_string(),
            Eq4Field::B => s.b.to_string(),
            Eq4Field::C => s.c.to_string(),
            Eq4Field::D => s.d.to_string(),
            Eq4Field::Weight => s.weight().0.to_string(),
            Eq4Field::Method => s.method.to_string(),
        };
        result = CString::new(value).expect("no interior NUL").into_raw();
        Ok(())
    });
    result
}

/// # Safety
/// `list` must be null or a list from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eq4_list_free(list: *mut Eq4SolutionList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// # Safety
/// `s` must be null or a string from [`eq4_list_field`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eq4_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
