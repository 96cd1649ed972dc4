use std::ffi::{CStr, CString};
use std::ptr;

use knotgauss_ffi::*;

fn parse(code: &str) -> (KgStatus, *mut KgDiagram) {
    let c = CString::new(code).unwrap();
    let mut out = ptr::null_mut();
    let s = unsafe { kg_diagram_from_code(c.as_ptr(), &mut out) };
    (s, out)
}

#[test]
fn trefoil_roundtrip() {
    let (s, d) = parse("O1+U2+O3+U1+O2+U3+");
    assert_eq!(s, KgStatus::Ok);
    unsafe {
        assert_eq!(kg_diagram_crossings(d), 3);
        let mut inv = KgInvariants::default();
        assert_eq!(kg_diagram_invariants(d, &mut inv), KgStatus::Ok);
        assert_eq!((inv.v2, inv.v3, inv.lk, inv.genus), (1, 4, 3, 1));
        let mut o = KgOracle::default();
        assert_eq!(kg_diagram_oracle(d, &mut o), KgStatus::Ok);
        assert_eq!((o.v2, o.v3, o.det_signed, o.sigma_paper), (1, 4, -3, 2));
        let code = kg_diagram_code(d);
        assert_eq!(CStr::from_ptr(code).to_str().unwrap(), "O1+U2+O3+U1+O2+U3+");
        kg_string_free(code);
        let mut w = ptr::null_mut();
        assert_eq!(kg_whitehead_double(d, -1, &mut w), KgStatus::Ok);
        assert_eq!(kg_diagram_crossings(w), 20);
        kg_diagram_free(w);
        assert_eq!(kg_whitehead_double(d, 0, &mut w), KgStatus::InvalidArgument);
        assert!(w.is_null());
        kg_diagram_free(d);
    }
}

#[test]
fn error_codes() {
    let (s, d) = parse("O1+U2+");
    assert_eq!(s, KgStatus::Parse);
    assert!(d.is_null());
    let msg = unsafe { CStr::from_ptr(kg_last_error_message()) };
    assert!(msg.to_str().unwrap().contains("label"));
    assert_eq!(parse("O1O2U1U2").0, KgStatus::NotRealizable);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { kg_diagram_from_code(ptr::null(), &mut out) }, KgStatus::NullPointer);
    let mut inv = KgInvariants::default();
    assert_eq!(unsafe { kg_diagram_invariants(ptr::null(), &mut inv) }, KgStatus::NullPointer);
    assert_eq!(unsafe { kg_diagram_crossings(ptr::null()) }, 0);
}

#[test]
fn header_lists_the_interface() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/knotgauss.h")).unwrap();
    for name in [
        "kg_diagram_from_code",
        "kg_diagram_free",
        "kg_diagram_invariants",
        "kg_diagram_oracle",
        "kg_whitehead_double",
        "kg_last_error_message",
        "KG_STATUS_OK",
        "typedef struct KgDiagram KgDiagram",
    ] {
        assert!(h.contains(name), "{name}");
    }
}
