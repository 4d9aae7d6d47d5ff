use std::ffi::{CStr, CString};
use std::ptr;

use lmrttg_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { lmrttg_string_free(p) };
    s
}

fn last_error() -> String {
    let p = lmrttg_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn build_g_and_query() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { lmrttg_build_g(4, 5, &mut g) }, LmrttgStatus::Ok);
    let (mut n, mut m) = (0, 0);
    assert_eq!(unsafe { lmrttg_graph_size(g, &mut n, &mut m) }, LmrttgStatus::Ok);
    assert_eq!((n, m), (4, 5));

    let mut buf = [0u64; 8];
    let mut written = 0;
    assert_eq!(unsafe { lmrttg_n_vector(g, buf.as_mut_ptr(), buf.len(), &mut written) }, LmrttgStatus::Ok);
    assert_eq!(&buf[..written], &[1, 6, 10, 5, 1]);

    let mut small = [0u64; 2];
    assert_eq!(
        unsafe { lmrttg_n_vector(g, small.as_mut_ptr(), small.len(), &mut written) },
        LmrttgStatus::BufferTooSmall
    );
    assert_eq!(written, 5);

    let p = CString::new("1/2").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { lmrttg_reliability(g, p.as_ptr(), &mut out) }, LmrttgStatus::Ok);
    assert_eq!(take_string(out), "23/32");

    let (mut s, mut t) = (9, 9);
    assert_eq!(unsafe { lmrttg_graph_terminals(g, &mut s, &mut t) }, LmrttgStatus::Ok);
    assert_eq!((s, t), (0, 1));

    let mut edges = [0u32; 10];
    assert_eq!(unsafe { lmrttg_graph_edges(g, edges.as_mut_ptr(), 5, &mut written) }, LmrttgStatus::Ok);
    assert_eq!(&edges[..2], &[0, 1]);
    unsafe { lmrttg_graph_free(g) };
}

#[test]
fn families_and_invariants() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { lmrttg_build_family(6, 8, LmrttgFamily::S1, &mut g) }, LmrttgStatus::Ok);
    let mut inv = LmrttgInvariants::default();
    assert_eq!(unsafe { lmrttg_invariants(g, &mut inv) }, LmrttgStatus::Ok);
    assert_eq!(inv.h, 61);
    let (mut s, mut t) = (0, 0);
    assert_eq!(unsafe { lmrttg_graph_terminals(g, &mut s, &mut t) }, LmrttgStatus::Domain);
    unsafe { lmrttg_graph_free(g) };

    let mut h = ptr::null_mut();
    assert_eq!(unsafe { lmrttg_build_h(6, 7, &mut h) }, LmrttgStatus::Ok);
    let mut key = ptr::null_mut();
    assert_eq!(unsafe { lmrttg_graph_canonical_key(h, &mut key) }, LmrttgStatus::Ok);
    assert!(take_string(key).starts_with("6:"));
    unsafe { lmrttg_graph_free(h) };

    let mut missing = ptr::null_mut();
    assert_eq!(
        unsafe { lmrttg_build_family(6, 5, LmrttgFamily::C3, &mut missing) },
        LmrttgStatus::DoesNotExist
    );
    assert!(missing.is_null());
    assert!(last_error().contains("C3"));
}

#[test]
fn json_round_trip() {
    let text = CString::new(r#"{"n":3,"terminals":[0,2],"edges":[[0,1],[1,2]]}"#).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { lmrttg_graph_from_json(text.as_ptr(), &mut g) }, LmrttgStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { lmrttg_graph_to_json(g, &mut out) }, LmrttgStatus::Ok);
    assert_eq!(take_string(out), r#"{"n":3,"terminals":[0,2],"edges":[[0,1],[1,2]]}"#);
    assert_eq!(unsafe { lmrttg_graph_to_dot(g, &mut out) }, LmrttgStatus::Ok);
    assert!(take_string(out).contains("doublecircle"));
    unsafe { lmrttg_graph_free(g) };

    let bad = CString::new("{nope").unwrap();
    assert_eq!(unsafe { lmrttg_graph_from_json(bad.as_ptr(), &mut g) }, LmrttgStatus::Parse);
    let loops = CString::new(r#"{"n":2,"edges":[[1,1]]}"#).unwrap();
    assert_eq!(unsafe { lmrttg_graph_from_json(loops.as_ptr(), &mut g) }, LmrttgStatus::Domain);
}

#[test]
fn classification() {
    let mut c = std::mem::MaybeUninit::<LmrttgClass>::uninit();
    assert_eq!(unsafe { lmrttg_classify(7, 9, c.as_mut_ptr()) }, LmrttgStatus::Ok);
    let c = unsafe { c.assume_init() };
    assert_eq!(c.sign, LmrttgSign::Star);
    assert_eq!(c.m1_s1, c.m1_c1);
    let mut d = std::mem::MaybeUninit::<LmrttgClass>::uninit();
    assert_eq!(unsafe { lmrttg_classify(4, 3, d.as_mut_ptr()) }, LmrttgStatus::Ok);
    assert_eq!(unsafe { d.assume_init() }.sign, LmrttgSign::None);
    assert_eq!(unsafe { lmrttg_classify(4, 7, d.as_mut_ptr()) }, LmrttgStatus::Domain);
}

#[test]
fn null_pointers() {
    assert_eq!(unsafe { lmrttg_build_g(4, 5, ptr::null_mut()) }, LmrttgStatus::NullPointer);
    let mut inv = LmrttgInvariants::default();
    assert_eq!(unsafe { lmrttg_invariants(ptr::null(), &mut inv) }, LmrttgStatus::NullPointer);
    assert_eq!(unsafe { lmrttg_graph_from_json(ptr::null(), ptr::null_mut()) }, LmrttgStatus::NullPointer);
    unsafe {
        lmrttg_graph_free(ptr::null_mut());
        lmrttg_string_free(ptr::null_mut());
    }
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { lmrttg_build_g(4, 5, &mut g) }, LmrttgStatus::Ok);
    assert!(lmrttg_last_error().is_null());
    unsafe { lmrttg_graph_free(g) };
}
