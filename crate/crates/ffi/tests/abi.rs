use std::ffi::{CStr, CString};
use std::ptr;

use dyntwist_ffi::*;

fn last_error() -> String {
    let p = dt_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    dt_string_free(s);
    out
}

#[test]
fn e1_pipeline_through_the_abi() {
    unsafe {
        let name = CString::new("E1").unwrap();
        let mut d = ptr::null_mut();
        assert_eq!(dt_datum_example(name.as_ptr(), &mut d), DtStatus::Ok);
        let mut j = ptr::null_mut();
        assert_eq!(dt_compute_twist(d, &mut j), DtStatus::Ok);
        assert_eq!(dt_twist_len(j), 128);
        let (mut pass, mut report) = (0, ptr::null_mut());
        assert_eq!(dt_twist_verify(j, &mut pass, &mut report), DtStatus::Ok);
        assert_eq!(pass, 1);
        assert!(take(report).contains("dynt1"));
        let mut json = ptr::null_mut();
        assert_eq!(dt_twist_to_json(j, &mut json), DtStatus::Ok);
        let text = take(json);
        assert!(text.starts_with("{\n  \"H\": \"sha256:"));

        // the twist file re-parses over H and the base it references
        let mut h = ptr::null_mut();
        assert_eq!(dt_datum_hopf(d, &mut h), DtStatus::Ok);
        assert_eq!(dt_hopf_dim(h), 8);
        let mut hjson = ptr::null_mut();
        assert_eq!(dt_hopf_to_json(h, &mut hjson), DtStatus::Ok);
        let hjson = take(hjson);
        let mut h2 = ptr::null_mut();
        let c = CString::new(hjson).unwrap();
        assert_eq!(dt_hopf_from_json(c.as_ptr(), &mut h2), DtStatus::Ok);
        assert_eq!(dt_hopf_verify(h2, &mut pass, ptr::null_mut()), DtStatus::Ok);
        assert_eq!(pass, 1);

        dt_hopf_free(h2);
        dt_hopf_free(h);
        dt_twist_free(j);
        dt_datum_free(d);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut h = ptr::null_mut();
        let bad = CString::new("{\"order\": 2").unwrap();
        assert_eq!(dt_hopf_from_json(bad.as_ptr(), &mut h), DtStatus::Parse);
        assert!(h.is_null());
        assert!(last_error().contains("hopf"));

        assert_eq!(
            dt_hopf_from_json(ptr::null(), &mut h),
            DtStatus::NullArgument
        );
        let mut d = ptr::null_mut();
        let name = CString::new("E7").unwrap();
        assert_eq!(
            dt_datum_example(name.as_ptr(), &mut d),
            DtStatus::InvalidInput
        );
        assert!(last_error().contains("E7"));

        let overlap = CString::new(
            r#"{"group":[[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]],"chi":["1","1","-1","-1"],"g":2,"n":2,"F":[0,1,2,3],"B":[0,2],"mu":"1"}"#,
        )
        .unwrap();
        assert_eq!(
            dt_datum_from_json(overlap.as_ptr(), &mut d),
            DtStatus::InvalidInput
        );
        assert!(last_error().contains("B ∩ ⟨g⟩"));

        // a success clears the message
        let name = CString::new("E0").unwrap();
        assert_eq!(dt_datum_example(name.as_ptr(), &mut d), DtStatus::Ok);
        assert!(dt_last_error().is_null());
        dt_datum_free(d);
        dt_datum_free(ptr::null_mut());
        dt_string_free(ptr::null_mut());
    }
}
