use std::ffi::{CStr, CString};
use std::path::Path;
use std::ptr;

use critnorm_ffi::*;

fn last_error() -> String {
    let p = cn_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(cn_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn field_norm_of_single_mode() {
    // a = 2 cos(2x + 4z): |k_h| = 2, |k3| = 4, ||a||_2^2 = 2 (2 pi)^3
    let n = [16usize; 3];
    let len = [std::f64::consts::TAU; 3];
    let h = len[0] / 16.0;
    let mut values = Vec::with_capacity(16 * 16 * 16);
    for i in 0..16 {
        for _ in 0..16 {
            for k in 0..16 {
                values.push(2.0 * (2.0 * i as f64 * h + 4.0 * k as f64 * h).cos());
            }
        }
    }
    let mut field = ptr::null_mut();
    let st = unsafe { cn_field_from_values(n.as_ptr(), len.as_ptr(), values.as_ptr(), values.len(), &mut field) };
    assert_eq!(st, CnStatus::Ok);
    let spec = CString::new("htheta:theta=0.125").unwrap();
    let mut out = 0.0;
    assert_eq!(unsafe { cn_field_norm(field, spec.as_ptr(), &mut out) }, CnStatus::Ok);
    let mass = (2.0 * std::f64::consts::TAU.powi(3)).sqrt();
    let expect = 2f64.powf(-0.375) * 4f64.powf(-0.125) * mass;
    assert!((out - expect).abs() < 1e-12 * expect, "{out} vs {expect}");
    unsafe { cn_field_free(field) };
}

#[test]
fn errors_set_status_and_message() {
    let mut out = 0.0;
    let spec = CString::new("leb:p=2").unwrap();
    assert_eq!(unsafe { cn_field_norm(ptr::null(), spec.as_ptr(), &mut out) }, CnStatus::NullPointer);
    assert!(last_error().contains("field"));

    let mut state = ptr::null_mut();
    assert_eq!(unsafe { cn_state_taylor_green(8, 1.0, &mut state) }, CnStatus::Ok);
    let bad = CString::new("warp:x=1").unwrap();
    assert_eq!(unsafe { cn_state_norm(state, bad.as_ptr(), &mut out) }, CnStatus::InvalidArgument);
    assert!(last_error().contains("warp:x=1"));
    let mut comp = ptr::null_mut();
    assert_eq!(unsafe { cn_state_component(state, 3, &mut comp) }, CnStatus::InvalidArgument);
    assert_eq!(unsafe { cn_state_advance(state, 1.0, -1.0, 1) }, CnStatus::Config);

    let n = [8usize; 3];
    let len = [1.0; 3];
    let values = [0.0; 10];
    let mut f = ptr::null_mut();
    let st = unsafe { cn_field_from_values(n.as_ptr(), len.as_ptr(), values.as_ptr(), values.len(), &mut f) };
    assert_eq!(st, CnStatus::InvalidArgument);
    assert!(f.is_null());
    unsafe { cn_state_free(state) };
    unsafe { cn_state_free(ptr::null_mut()) };
}

#[test]
fn state_energy_decays_and_round_trips() {
    let mut state = ptr::null_mut();
    assert_eq!(unsafe { cn_state_taylor_green(16, 1.0, &mut state) }, CnStatus::Ok);
    let (mut e0, mut e1, mut t) = (0.0, 0.0, 0.0);
    assert_eq!(unsafe { cn_state_energy(state, &mut e0) }, CnStatus::Ok);
    // (2 pi)^3 / 8 for unit amplitude
    assert!((e0 - std::f64::consts::TAU.powi(3) / 8.0).abs() < 1e-12 * e0);
    assert_eq!(unsafe { cn_state_advance(state, 1.0, 0.01, 10) }, CnStatus::Ok);
    assert_eq!(unsafe { cn_state_energy(state, &mut e1) }, CnStatus::Ok);
    assert_eq!(unsafe { cn_state_time(state, &mut t) }, CnStatus::Ok);
    assert!((t - 0.1).abs() < 1e-15);
    // the Taylor-Green energy decays like exp(-6 nu t) while the flow stays near its initial shape
    assert!(e1 < e0 && (e1 / e0 - (-0.6f64).exp()).abs() < 1e-2);

    let dir = tempfile::tempdir().unwrap();
    let path = CString::new(dir.path().join("s.cnf").to_str().unwrap()).unwrap();
    assert_eq!(unsafe { cn_state_write(state, path.as_ptr()) }, CnStatus::Ok);
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { cn_state_read(path.as_ptr(), &mut back) }, CnStatus::Ok);
    let mut e2 = 0.0;
    assert_eq!(unsafe { cn_state_energy(back, &mut e2) }, CnStatus::Ok);
    assert_eq!(e1, e2);
    unsafe {
        cn_state_free(state);
        cn_state_free(back);
    }
}

#[test]
fn simulate_and_verify_entry_points() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "[grid]\nn = 8\n[initial]\nkind = \"zero\"\n[solver]\ndt = 0.1\nt_end = 0.2\n[output]\ndir = \"unused\"\n",
    )
    .unwrap();
    let cfg_c = CString::new(cfg.to_str().unwrap()).unwrap();
    let out = CString::new(dir.path().join("run").to_str().unwrap()).unwrap();
    let mut blow_up = -1;
    assert_eq!(unsafe { cn_simulate(cfg_c.as_ptr(), out.as_ptr(), &mut blow_up) }, CnStatus::Ok);
    assert_eq!(blow_up, 0);
    assert!(dir.path().join("run").join("manifest.json").exists());

    let missing = CString::new("/nonexistent/run.toml").unwrap();
    assert_eq!(unsafe { cn_simulate(missing.as_ptr(), ptr::null(), &mut blow_up) }, CnStatus::Config);

    let mut passed = -1;
    let id = CString::new("eq-isoanisoinclud").unwrap();
    assert_eq!(unsafe { cn_verify(id.as_ptr(), 1, 4, 16, 0, 32, &mut passed) }, CnStatus::Ok);
    assert_eq!(passed, 1);
    let unknown = CString::new("no-such-suite").unwrap();
    assert_eq!(unsafe { cn_verify(unknown.as_ptr(), 1, 4, 16, 0, 32, &mut passed) }, CnStatus::Config);
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/critnorm.h")).unwrap();
    for name in [
        "cn_version",
        "cn_last_error",
        "cn_field_from_values",
        "cn_field_norm",
        "cn_field_free",
        "cn_state_taylor_green",
        "cn_state_read",
        "cn_state_write",
        "cn_state_advance",
        "cn_state_time",
        "cn_state_energy",
        "cn_state_norm",
        "cn_state_component",
        "cn_state_free",
        "cn_simulate",
        "cn_verify",
        "CN_STATUS_OK = 0",
        "CN_STATUS_PANIC = 8",
        "typedef struct CnState CnState",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"critnorm.h\"\nint main(void) { CnState *s = 0; return cn_state_taylor_green(8, 1.0, &s) == CN_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = std::process::Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if std::process::Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc);
        }
    }
    Err(())
}
