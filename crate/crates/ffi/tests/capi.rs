//! Drives the C ABI the way a foreign caller would: through raw pointers
//! and status codes.

use std::ffi::{CStr, CString};
use std::ptr;

use palword_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    palword_string_free(p);
    s
}

unsafe fn last_error() -> String {
    take_string(palword_last_error_message())
}

#[test]
fn version_is_nonempty() {
    unsafe {
        let v = CStr::from_ptr(palword_version()).to_str().unwrap();
        assert!(!v.is_empty());
    }
}

#[test]
fn word_lifecycle() {
    unsafe {
        let mut word = ptr::null_mut();
        let status = palword_word_parse(cstr("aababbab").as_ptr(), &mut word);
        assert_eq!(status, PalwordStatus::Ok);
        assert_eq!(palword_word_len(word), 8);
        assert!(!palword_word_is_palindrome(word));
        assert!(palword_word_is_rich(word));
        let mut d = u64::MAX;
        assert_eq!(palword_word_defect(word, &mut d), PalwordStatus::Ok);
        assert_eq!(d, 0);
        assert_eq!(take_string(palword_word_to_string(word)), "aababbab");

        let mut json = ptr::null_mut();
        assert_eq!(
            palword_word_analyze_json(word, &mut json),
            PalwordStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["pal_count"], 9);
        palword_word_free(word);
    }
}

#[test]
fn null_and_parse_errors() {
    unsafe {
        let mut word = ptr::null_mut();
        assert_eq!(
            palword_word_parse(ptr::null(), &mut word),
            PalwordStatus::NullArgument
        );
        assert!(!last_error().is_empty());

        let mut morphism = ptr::null_mut();
        let status = palword_morphism_parse(cstr("0->01;1->").as_ptr(), &mut morphism);
        assert_eq!(status, PalwordStatus::ParseError);
        assert!(last_error().contains("parse error"));

        // defect with a NULL out-pointer
        let mut w = ptr::null_mut();
        palword_word_parse(cstr("aba").as_ptr(), &mut w);
        assert_eq!(
            palword_word_defect(w, ptr::null_mut()),
            PalwordStatus::NullArgument
        );
        palword_word_free(w);
    }
}

#[test]
fn morphism_classify_and_apply() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(
            palword_morphism_parse(cstr("0->001;1->0010").as_ptr(), &mut m),
            PalwordStatus::Ok
        );
        assert_eq!(take_string(palword_morphism_to_string(m)), "0->001;1->0010");

        let mut primitive = false;
        assert_eq!(
            palword_morphism_is_primitive(m, &mut primitive),
            PalwordStatus::Ok
        );
        assert!(primitive);

        let mut json = ptr::null_mut();
        assert_eq!(
            palword_morphism_classify_json(m, 0, &mut json),
            PalwordStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["in_p_ret"], true);
        assert_eq!(v["p_ret_marker"], "00100");
        assert_eq!(v["in_p_prime"], "yes");

        let mut word = ptr::null_mut();
        palword_word_parse(cstr("01").as_ptr(), &mut word);
        let mut image = ptr::null_mut();
        assert_eq!(
            palword_morphism_apply(m, word, &mut image),
            PalwordStatus::Ok
        );
        assert_eq!(take_string(palword_word_to_string(image)), "0010010");
        palword_word_free(image);
        palword_word_free(word);

        // fixed points need prolongability
        let mut fp = ptr::null_mut();
        let status = palword_morphism_fixed_point_prefix(m, cstr("1").as_ptr(), 16, &mut fp);
        assert_eq!(status, PalwordStatus::DomainError);
        assert!(last_error().contains("not prolongable"));
        assert_eq!(
            palword_morphism_fixed_point_prefix(m, cstr("0").as_ptr(), 16, &mut fp),
            PalwordStatus::Ok
        );
        assert_eq!(palword_word_len(fp), 16);
        palword_word_free(fp);
        palword_morphism_free(m);
    }
}

#[test]
fn spec_pipeline() {
    unsafe {
        let mut spec = ptr::null_mut();
        assert_eq!(
            palword_spec_example(cstr("labbe").as_ptr(), &mut spec),
            PalwordStatus::Ok
        );

        let mut prefix = ptr::null_mut();
        assert_eq!(
            palword_spec_generate(spec, 26, &mut prefix),
            PalwordStatus::Ok
        );
        assert_eq!(
            take_string(palword_word_to_string(prefix)),
            "acabacacabacabacabacacabac"
        );
        palword_word_free(prefix);

        let mut json = ptr::null_mut();
        assert_eq!(
            palword_spec_analyze_json(spec, 2048, &mut json),
            PalwordStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["defect"], 0);
        assert_eq!(v["rich_up_to_length"], true);

        assert_eq!(
            palword_spec_derive_json(spec, cstr("a").as_ptr(), 64, &mut json),
            PalwordStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["returns"], serde_json::json!(["ac", "ab"]));

        assert_eq!(
            palword_spec_decompose_json(spec, 12, 2048, false, 64, 4096, &mut json),
            PalwordStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["status"], "complete");
        assert_eq!(v["verify"]["all_passed"], true);
        palword_spec_free(spec);
    }
}

#[test]
fn spec_domain_errors() {
    unsafe {
        // not primitive
        let mut spec = ptr::null_mut();
        let status = palword_spec_new(
            cstr("0->00;1->1").as_ptr(),
            cstr("0").as_ptr(),
            ptr::null(),
            &mut spec,
        );
        assert_eq!(status, PalwordStatus::DomainError);
        assert!(last_error().contains("not primitive"));

        // decompose refuses non-rich input
        let mut tm = ptr::null_mut();
        assert_eq!(
            palword_spec_example(cstr("thue-morse").as_ptr(), &mut tm),
            PalwordStatus::Ok
        );
        let mut json = ptr::null_mut();
        let status = palword_spec_decompose_json(tm, 8, 512, false, 64, 0, &mut json);
        assert_eq!(status, PalwordStatus::DomainError);
        assert!(last_error().contains("failed"));
        palword_spec_free(tm);
    }
}

#[test]
fn spec_with_outer_morphism() {
    unsafe {
        let mut spec = ptr::null_mut();
        assert_eq!(
            palword_spec_new(
                cstr("0->01;1->001").as_ptr(),
                cstr("0").as_ptr(),
                cstr("0->001;1->0010").as_ptr(),
                &mut spec,
            ),
            PalwordStatus::Ok
        );
        let mut json = ptr::null_mut();
        assert_eq!(
            palword_spec_decompose_json(spec, 12, 2048, true, 64, 2048, &mut json),
            PalwordStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["status"], "complete");
        assert_eq!(v["verify"]["all_passed"], true);
        palword_spec_free(spec);
    }
}
