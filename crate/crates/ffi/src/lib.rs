//! C interface to `critnorm`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns a
//! [`CnStatus`]; on failure [`cn_last_error`] describes the cause until the
//! next failing call on the same thread. Panics are caught at the boundary
//! and reported as [`CnStatus::Panic`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use critnorm::cli::{self, RunConfig, RunState};
use critnorm::lab::{self, LabConfig};
use critnorm::lp::{FieldNorms, NormSpec};
use critnorm::solver::{Integrator, SolverConfig};
use critnorm::solver::config::taylor_green;
use critnorm::spectral::{Grid, SpectralField, Snapshot, VelocityState};
use critnorm::Error;

/// Result of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CnStatus {
    Ok = 0,
    NullPointer = 1,
    /// Bad parameter, shape mismatch or non-UTF-8 string.
    InvalidArgument = 2,
    Config = 3,
    Io = 4,
    /// Malformed snapshot or JSON.
    Format = 5,
    BlowUpSuspected = 6,
    Internal = 7,
    Panic = 8,
}

/// A scalar spectral field.
pub struct CnField(SpectralField);

/// A velocity state with its time.
pub struct CnState(VelocityState);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CnStatus {
    match e {
        Error::Shape(_) | Error::Parameter(_) | Error::Validation(_) => CnStatus::InvalidArgument,
        Error::Config(_) => CnStatus::Config,
        Error::Format(_) | Error::Json(_) => CnStatus::Format,
        Error::BlowUpSuspected { .. } => CnStatus::BlowUpSuspected,
        Error::Invariant(_) => CnStatus::Internal,
        Error::Io(_) => CnStatus::Io,
    }
}

enum Fail {
    Null(&'static str),
    Arg(String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `body` behind a panic guard and converts its outcome to a status.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> CnStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => CnStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("{what} is null"));
            CnStatus::NullPointer
        }
        Ok(Err(Fail::Arg(msg))) => {
            set_error(msg);
            CnStatus::InvalidArgument
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            CnStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn borrow_mut<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn string<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Arg(format!("{what} is not valid UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    out.write(value);
    Ok(())
}

fn parse_spec(text: &str) -> Result<NormSpec, Fail> {
    text.parse::<NormSpec>()
        .map_err(|e| Fail::Arg(format!("bad norm spec `{text}`: {e}")))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or null. Valid until the next
/// failing call on this thread.
#[no_mangle]
pub extern "C" fn cn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Builds a field from `count = n[0] n[1] n[2]` physical samples in C order
/// on a box with side lengths `len`.
///
/// Pointers: `n` and `len` point to three values, `values` to `count` values.
#[no_mangle]
pub unsafe extern "C" fn cn_field_from_values(
    n: *const usize,
    len: *const f64,
    values: *const f64,
    count: usize,
    out: *mut *mut CnField,
) -> CnStatus {
    guard(|| {
        if n.is_null() || len.is_null() || values.is_null() {
            return Err(Fail::Null("n, len or values"));
        }
        let n = [*n, *n.add(1), *n.add(2)];
        let len = [*len, *len.add(1), *len.add(2)];
        let grid = Grid::new(n, len)?;
        if count != grid.size() {
            return Err(Fail::Arg(format!("expected {} values, got {count}", grid.size())));
        }
        let field = SpectralField::transform(std::slice::from_raw_parts(values, count), grid)?;
        write_out(out, Box::into_raw(Box::new(CnField(field))), "out")
    })
}

/// Evaluates a norm spec such as `htheta:theta=0.125` on a field.
///
/// Pointers: `field` is a live handle; `spec` is NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn cn_field_norm(field: *const CnField, spec: *const c_char, out: *mut f64) -> CnStatus {
    guard(|| {
        let f = borrow(field, "field")?;
        let spec = parse_spec(string(spec, "spec")?)?;
        let v = FieldNorms::new(&f.0).norm(&spec)?;
        write_out(out, v, "out")
    })
}

/// Pointers: `field` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cn_field_free(field: *mut CnField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Taylor-Green velocity on the `n^3` grid of side `2 pi`.
///
/// Pointers: `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cn_state_taylor_green(n: usize, amplitude: f64, out: *mut *mut CnState) -> CnStatus {
    guard(|| {
        let v = taylor_green(Grid::cubic(n)?, amplitude)?;
        write_out(out, Box::into_raw(Box::new(CnState(v))), "out")
    })
}

/// Reads a three-component snapshot file.
///
/// Pointers: `path` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cn_state_read(path: *const c_char, out: *mut *mut CnState) -> CnStatus {
    guard(|| {
        let path = PathBuf::from(string(path, "path")?);
        let v = Snapshot::read(&path)?.to_velocity()?;
        write_out(out, Box::into_raw(Box::new(CnState(v))), "out")
    })
}

/// Pointers: `state` is a live handle; `path` is NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn cn_state_write(state: *const CnState, path: *const c_char) -> CnStatus {
    guard(|| {
        let s = borrow(state, "state")?;
        let path = PathBuf::from(string(path, "path")?);
        Snapshot::from_velocity(&s.0).write(&path)?;
        Ok(())
    })
}

/// Advances `steps` steps of size `dt` at viscosity `nu`. On suspected
/// blow-up the state keeps its last finite value.
///
/// Pointers: `state` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn cn_state_advance(state: *mut CnState, nu: f64, dt: f64, steps: usize) -> CnStatus {
    guard(|| {
        let s = borrow_mut(state, "state")?;
        let mut cfg = SolverConfig::new(dt, dt * steps as f64);
        cfg.nu = nu;
        let integrator = Integrator::new(*s.0.grid(), &cfg)?;
        let t0 = s.0.time;
        for k in 1..=steps {
            let next = integrator.step(&s.0)?.state;
            s.0 = next.with_time(t0 + k as f64 * dt);
        }
        Ok(())
    })
}

/// Pointers: `state` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cn_state_time(state: *const CnState, out: *mut f64) -> CnStatus {
    guard(|| write_out(out, borrow(state, "state")?.0.time, "out"))
}

/// Kinetic energy `||v||^2 / 2`.
///
/// Pointers: `state` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cn_state_energy(state: *const CnState, out: *mut f64) -> CnStatus {
    guard(|| write_out(out, 0.5 * borrow(state, "state")?.0.l2_sq(), "out"))
}

/// Norm of the velocity with the conventions of `critnorm norms`.
///
/// Pointers: `state` is a live handle; `spec` is NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn cn_state_norm(state: *const CnState, spec: *const c_char, out: *mut f64) -> CnStatus {
    guard(|| {
        let s = borrow(state, "state")?;
        let spec = parse_spec(string(spec, "spec")?)?;
        let v = cli::snapshot_norm(&Snapshot::from_velocity(&s.0), &spec)?;
        write_out(out, v, "out")
    })
}

/// Copies velocity component `i` into a new field handle.
///
/// Pointers: `state` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn cn_state_component(state: *const CnState, i: usize, out: *mut *mut CnField) -> CnStatus {
    guard(|| {
        let s = borrow(state, "state")?;
        if i >= 3 {
            return Err(Fail::Arg(format!("component index {i} out of range")));
        }
        write_out(out, Box::into_raw(Box::new(CnField(s.0.component(i).clone()))), "out")
    })
}

/// Pointers: `state` is null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cn_state_free(state: *mut CnState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Runs `critnorm simulate` on a config file. `out_dir` may be null to keep
/// the configured directory. `*blow_up` is set to 1 when the run stopped on
/// non-finite values.
///
/// Pointers: Strings are NUL-terminated; `blow_up` is writable.
#[no_mangle]
pub unsafe extern "C" fn cn_simulate(config_path: *const c_char, out_dir: *const c_char, blow_up: *mut c_int) -> CnStatus {
    guard(|| {
        let mut cfg = RunConfig::load(&PathBuf::from(string(config_path, "config_path")?))?;
        if !out_dir.is_null() {
            cfg.output.dir = PathBuf::from(string(out_dir, "out_dir")?);
        }
        let manifest = cli::simulate(cfg.prepare()?)?;
        let flag = matches!(manifest.state, RunState::BlowUpSuspected { .. }) as c_int;
        write_out(blow_up, flag, "blow_up")
    })
}

/// Runs one inequality suite, or all of them for `"all"`, and sets
/// `*passed` to 1 when every report passed. Reports are not written.
///
/// Pointers: `suite` is NUL-terminated; `passed` is writable.
#[no_mangle]
pub unsafe extern "C" fn cn_verify(
    suite: *const c_char,
    seed: u64,
    count: usize,
    n: usize,
    refine_count: usize,
    refine_n: usize,
    passed: *mut c_int,
) -> CnStatus {
    guard(|| {
        let id = string(suite, "suite")?;
        let cfg = LabConfig {
            seed,
            count,
            n,
            refine_count,
            refine_n,
        };
        let reports = if id == "all" { lab::run_all(&cfg)? } else { vec![lab::run(id, &cfg)?] };
        write_out(passed, reports.iter().all(|r| r.passed) as c_int, "passed")
    })
}
