use std::ffi::{c_char, CStr, CString};
use std::ptr;

use casorati_ffi::*;

struct Handle(*mut CasoratiPoly);

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { casorati_poly_free(self.0) }
    }
}

fn poly(text: &str) -> Handle {
    let t = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { casorati_poly_parse(t.as_ptr(), &mut out) }, CasoratiStatus::Ok);
    Handle(out)
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { casorati_string_free(p) };
    s
}

fn coeffs(h: &Handle) -> String {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { casorati_poly_coefficients(h.0, &mut out) }, CasoratiStatus::Ok);
    take_string(out)
}

fn last_error() -> String {
    let p = casorati_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

type Det = unsafe extern "C" fn(*const *const CasoratiPoly, usize, *mut *mut CasoratiPoly) -> CasoratiStatus;

fn apply(f: Det, fs: &[&Handle]) -> Handle {
    let ptrs: Vec<*const CasoratiPoly> = fs.iter().map(|h| h.0 as *const _).collect();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { f(ptrs.as_ptr(), ptrs.len(), &mut out) }, CasoratiStatus::Ok);
    Handle(out)
}

#[test]
fn parse_round_trip_and_degree() {
    let p = poly("1, -1/2, 0, 3+2i");
    assert_eq!(coeffs(&p), "1,-1/2,0,3+2i");
    let mut d = 0;
    assert_eq!(unsafe { casorati_poly_degree(p.0, &mut d) }, CasoratiStatus::Ok);
    assert_eq!(d, 3);
    let z = poly("");
    assert_eq!(unsafe { casorati_poly_degree(z.0, &mut d) }, CasoratiStatus::Ok);
    assert_eq!(d, -1);
}

#[test]
fn determinants_match_hand_values() {
    let one = poly("1");
    let x = poly("0,1");
    let x2 = poly("0,0,1");
    // W(1, x, x^2) = 2, W(x, x^2) = x^2.
    assert_eq!(coeffs(&apply(casorati_wronskian, &[&one, &x, &x2])), "2");
    assert_eq!(coeffs(&apply(casorati_wronskian, &[&x, &x2])), "0,0,1");
    // det[[x, x^2], [x+1, (x+1)^2]] = x^2 + x.
    assert_eq!(coeffs(&apply(casorati_casoratian_real, &[&x, &x2])), "0,1,1");
    // i * ((x - i/4) - (x + i/4)) = 1/2.
    let g = CString::new("1/2").unwrap();
    let fs = [one.0 as *const _, x.0 as *const _];
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { casorati_casoratian_imag(fs.as_ptr(), 2, g.as_ptr(), &mut out) }, CasoratiStatus::Ok);
    assert_eq!(coeffs(&Handle(out)), "1/2");
}

#[test]
fn errors_set_status_and_message() {
    let bad = CString::new("1, x").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { casorati_poly_parse(bad.as_ptr(), &mut out) }, CasoratiStatus::Parse);
    assert!(out.is_null());
    assert!(last_error().contains("parse"));

    assert_eq!(unsafe { casorati_poly_parse(ptr::null(), &mut out) }, CasoratiStatus::NullPointer);

    let x = poly("0,1");
    let fs = [x.0 as *const _];
    let zero = CString::new("0").unwrap();
    assert_eq!(unsafe { casorati_casoratian_imag(fs.as_ptr(), 1, zero.as_ptr(), &mut out) }, CasoratiStatus::ZeroGamma);

    let holes = [x.0 as *const _, ptr::null()];
    assert_eq!(unsafe { casorati_wronskian(holes.as_ptr(), 2, &mut out) }, CasoratiStatus::NullPointer);
    assert!(last_error().contains("function 1"));

    // A successful call clears the slot.
    let _ = poly("1");
    assert!(casorati_last_error().is_null());
}

#[test]
fn run_returns_report_and_exit_code() {
    let cfg = CString::new("subcommand = identities\ntrials = 2\nidentities = eq1, eq2\n").unwrap();
    let mut json = ptr::null_mut();
    let mut code = -1;
    assert_eq!(unsafe { casorati_run(cfg.as_ptr(), &mut json, &mut code) }, CasoratiStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["total"], 4);
    assert_eq!(v["summary"]["pass"], 4);

    let missing = CString::new("trials = 2").unwrap();
    assert_eq!(unsafe { casorati_run(missing.as_ptr(), &mut json, &mut code) }, CasoratiStatus::Config);
    let unknown = CString::new("subcommand = oqm\ncolour = red").unwrap();
    assert_eq!(unsafe { casorati_run(unknown.as_ptr(), &mut json, &mut code) }, CasoratiStatus::Config);
}

#[test]
fn faulty_run_replays_through_the_abi() {
    let cfg = CString::new("subcommand = identities\ntrials = 3\nidentities = eq3\nfault = eq3-shift\n").unwrap();
    let mut json = ptr::null_mut();
    let mut code = -1;
    assert_eq!(unsafe { casorati_run(cfg.as_ptr(), &mut json, &mut code) }, CasoratiStatus::Ok);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    let failing = v["identities"].as_array().unwrap().iter().find(|r| r["status"] == "fail").unwrap().clone();
    let w = CString::new(failing.to_string()).unwrap();
    assert_eq!(unsafe { casorati_replay(w.as_ptr(), &mut json, &mut code) }, CasoratiStatus::Ok);
    assert_eq!(code, 1);
    let back: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(back["status"], "fail");
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(casorati_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
