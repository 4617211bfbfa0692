//! C ABI for the octad engine.
//!
//! Point configurations live behind the opaque `OctadConfig` handle. Every
//! fallible function returns an [`OctadStatus`]; on failure a message is
//! kept per thread and can be fetched with [`octad_last_error`]. Strings
//! returned to the caller are owned by it and released with
//! [`octad_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use octad_core::cli;
use octad_core::diagrams::{class_label, DiagramError, Parity, ThetaDiagram};
use octad_core::geometry::{
    complete_octad, config, count_ovals, hessian, net_through, octad_signs, verify_octad,
    GeometryError, OctadClass, ProjPoint,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OctadStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    BadInput = 3,
    Parse = 4,
    DegenerateInput = 5,
    NotZeroDimensional = 6,
    MultiplePoint = 7,
    NotOnBase = 8,
    Degenerate = 9,
    NotSkew = 10,
    NotSimple = 11,
    NotRegular = 12,
    Inconsistent = 13,
    OddDiagram = 14,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OctadClassification {
    RegularCandidate = 0,
    FourCollisionWall = 1,
    Invalid = 2,
}

/// Opaque list of projective points.
pub struct OctadConfig {
    points: Vec<ProjPoint>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn geometry_status(e: &GeometryError) -> OctadStatus {
    match e {
        GeometryError::DegenerateInput(_) => OctadStatus::DegenerateInput,
        GeometryError::NotZeroDimensional => OctadStatus::NotZeroDimensional,
        GeometryError::MultiplePoint => OctadStatus::MultiplePoint,
        GeometryError::NotOnBase => OctadStatus::NotOnBase,
        GeometryError::Degenerate(_) => OctadStatus::Degenerate,
        GeometryError::NotSkew => OctadStatus::NotSkew,
        GeometryError::NotSimple => OctadStatus::NotSimple,
        GeometryError::NotRegular(_) => OctadStatus::NotRegular,
        GeometryError::Inconsistent(_) => OctadStatus::Inconsistent,
        GeometryError::BadInput(_) => OctadStatus::BadInput,
        GeometryError::Parse { .. } => OctadStatus::Parse,
    }
}

struct Fail(OctadStatus, String);

impl From<GeometryError> for Fail {
    fn from(e: GeometryError) -> Self {
        Fail(geometry_status(&e), e.to_string())
    }
}

impl From<DiagramError> for Fail {
    fn from(e: DiagramError) -> Self {
        let status = match e {
            DiagramError::OddDiagram(_) => OctadStatus::OddDiagram,
            _ => OctadStatus::BadInput,
        };
        Fail(status, e.to_string())
    }
}

/// Runs `f`, records any failure and converts panics into a status.
fn guarded<F: FnOnce() -> Result<(), Fail>>(f: F) -> OctadStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OctadStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            OctadStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(OctadStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(OctadStatus::InvalidUtf8, "string is not valid UTF-8".into()))
}

unsafe fn config_ref<'a>(c: *const OctadConfig) -> Result<&'a OctadConfig, Fail> {
    c.as_ref()
        .ok_or_else(|| Fail(OctadStatus::NullPointer, "null configuration handle".into()))
}

fn check_out<T>(p: *mut T) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(OctadStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// The message of the last failed call on this thread, or null. The caller
/// releases it with `octad_string_free`.
#[no_mangle]
pub extern "C" fn octad_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(c) => c.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn octad_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses configuration text (one point per line, `#` comments).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn octad_config_parse(
    text: *const c_char,
    out: *mut *mut OctadConfig,
) -> OctadStatus {
    guarded(|| {
        check_out(out)?;
        let points = config::parse(read_str(text)?)?;
        *out = Box::into_raw(Box::new(OctadConfig { points }));
        Ok(())
    })
}

/// # Safety
/// `cfg` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn octad_config_free(cfg: *mut OctadConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Number of points, 0 for a null handle.
///
/// # Safety
/// `cfg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn octad_config_len(cfg: *const OctadConfig) -> usize {
    cfg.as_ref().map_or(0, |c| c.points.len())
}

/// The configuration in text form; released with `octad_string_free`.
///
/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn octad_config_to_string(cfg: *const OctadConfig) -> *mut c_char {
    match cfg.as_ref() {
        Some(c) => to_c_string(config::write(&c.points, None)),
        None => ptr::null_mut(),
    }
}

/// Classifies an 8-point configuration.
///
/// # Safety
/// `cfg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn octad_config_verify(
    cfg: *const OctadConfig,
    out: *mut OctadClassification,
) -> OctadStatus {
    guarded(|| {
        check_out(out)?;
        let report = verify_octad(&config_ref(cfg)?.points)?;
        *out = match report.classification {
            OctadClass::RegularCandidate => OctadClassification::RegularCandidate,
            OctadClass::FourCollisionWall => OctadClassification::FourCollisionWall,
            OctadClass::Invalid => OctadClassification::Invalid,
        };
        Ok(())
    })
}

/// Common sign of a regular octad, `+1` or `-1`.
///
/// # Safety
/// `cfg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn octad_config_chirality(
    cfg: *const OctadConfig,
    out: *mut i8,
) -> OctadStatus {
    guarded(|| {
        check_out(out)?;
        *out = octad_signs(&config_ref(cfg)?.points)?.sign;
        Ok(())
    })
}

/// Completes 7 points to the octad of their net; `out` receives a new
/// handle with 8 points.
///
/// # Safety
/// `cfg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn octad_config_complete(
    cfg: *const OctadConfig,
    out: *mut *mut OctadConfig,
) -> OctadStatus {
    guarded(|| {
        check_out(out)?;
        let pts = &config_ref(cfg)?.points;
        let eighth = complete_octad(pts)?;
        let mut points = pts.clone();
        points.push(eighth);
        *out = Box::into_raw(Box::new(OctadConfig { points }));
        Ok(())
    })
}

/// Oval count of the Hessian of the net through the first 7 points.
///
/// # Safety
/// `cfg` must be a live handle; `count` and `stabilized` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn octad_config_ovals(
    cfg: *const OctadConfig,
    depth: u32,
    count: *mut usize,
    stabilized: *mut bool,
) -> OctadStatus {
    guarded(|| {
        check_out(count)?;
        check_out(stabilized)?;
        let pts = &config_ref(cfg)?.points;
        if pts.len() < 7 {
            return Err(Fail(OctadStatus::BadInput, "need at least 7 points".into()));
        }
        let c = count_ovals(&hessian(&net_through(&pts[..7])?), depth);
        *count = c.count;
        *stabilized = c.stabilized;
        Ok(())
    })
}

/// Class `(alpha, beta)` and parity of a diagram given as 6 bits.
///
/// # Safety
/// `bits` must be a NUL-terminated string; outputs valid pointers.
#[no_mangle]
pub unsafe extern "C" fn octad_diagram_class(
    bits: *const c_char,
    alpha: *mut u8,
    beta: *mut u8,
    even: *mut bool,
) -> OctadStatus {
    guarded(|| {
        check_out(alpha)?;
        check_out(beta)?;
        check_out(even)?;
        let d = ThetaDiagram::parse_bits(read_str(bits)?)?;
        let l = class_label(&d);
        *alpha = l.alpha;
        *beta = l.beta;
        *even = l.parity == Parity::Even;
        Ok(())
    })
}

/// Runs a command line such as `"tables"` or `"octad verify x.cfg"` and
/// returns its JSON report; `exit_code` receives the process exit status.
///
/// # Safety
/// `args` must be a NUL-terminated string and `exit_code` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn octad_run_json(args: *const c_char, exit_code: *mut i32) -> *mut c_char {
    let mut result = ptr::null_mut();
    let status = guarded(|| {
        check_out(exit_code)?;
        let line = read_str(args)?;
        let argv = std::iter::once("octad")
            .chain(line.split_whitespace())
            .chain(["--format", "json"]);
        let out = cli::run(argv);
        *exit_code = out.code;
        let text = if out.stdout.is_empty() { out.stderr } else { out.stdout };
        result = to_c_string(text);
        Ok(())
    });
    if status != OctadStatus::Ok {
        return ptr::null_mut();
    }
    result
}
