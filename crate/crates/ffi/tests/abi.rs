use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use equal_quartics_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn field(list: *const Eq4SolutionList, i: usize, f: Eq4Field) -> String {
    let p = eq4_list_field(list, i, f);
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    eq4_string_free(p);
    s
}

unsafe fn quad(list: *const Eq4SolutionList, i: usize) -> [String; 4] {
    [Eq4Field::A, Eq4Field::B, Eq4Field::C, Eq4Field::D].map(|f| field(list, i, f))
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(eq4_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn verify_accepts_and_rejects() {
    let mut holds = false;
    let st = unsafe { eq4_verify(2, c("139").as_ptr(), c("-34").as_ptr(), c("61").as_ptr(), c("116").as_ptr(), &mut holds) };
    assert_eq!(st, Eq4Status::Ok);
    assert!(holds);
    let st = unsafe { eq4_verify(2, c("139").as_ptr(), c("34").as_ptr(), c("61").as_ptr(), c("117").as_ptr(), &mut holds) };
    assert_eq!(st, Eq4Status::Ok);
    assert!(!holds);
}

#[test]
fn verify_reports_bad_input() {
    let mut holds = false;
    let st = unsafe { eq4_verify(2, c("13x").as_ptr(), c("1").as_ptr(), c("1").as_ptr(), c("1").as_ptr(), &mut holds) };
    assert_eq!(st, Eq4Status::Parse);
    assert!(last_error().contains("13x"));
    let st = unsafe { eq4_verify(2, ptr::null(), c("1").as_ptr(), c("1").as_ptr(), c("1").as_ptr(), &mut holds) };
    assert_eq!(st, Eq4Status::NullPointer);
    let st = unsafe { eq4_verify(2, c("1").as_ptr(), c("1").as_ptr(), c("1").as_ptr(), c("1").as_ptr(), ptr::null_mut()) };
    assert_eq!(st, Eq4Status::NullPointer);
}

#[test]
fn brute_list_round_trip() {
    let mut list = ptr::null_mut();
    let st = unsafe { eq4_brute_search(5, 1, 420, 120, 300, &mut list) };
    assert_eq!(st, Eq4Status::Ok, "{}", last_error());
    unsafe {
        let n = eq4_list_len(list);
        let found: Vec<[String; 4]> = (0..n).map(|i| quad(list, i)).collect();
        assert!(found.contains(&["417", "117", "19", "281"].map(String::from)));
        assert!(found.contains(&["3", "0", "1", "2"].map(String::from)));
        let mut h = 0;
        assert_eq!(eq4_list_h(list, 0, &mut h), Eq4Status::Ok);
        assert_eq!(h, 5);
        assert_eq!(field(list, 0, Eq4Field::Method), "brute");
        assert_eq!(eq4_list_h(list, n, &mut h), Eq4Status::OutOfRange);
        assert!(eq4_list_field(list, n, Eq4Field::A).is_null());
        eq4_list_free(list);
    }
}

#[test]
fn brute_rejects_fourth_power_h() {
    let mut list = ptr::null_mut();
    let st = unsafe { eq4_brute_search(16, 1, 10, 10, 10, &mut list) };
    assert_eq!(st, Eq4Status::InvalidArgument);
    assert!(list.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn meet_finds_h5_identity() {
    let mut list = ptr::null_mut();
    let st = unsafe { eq4_meet_search(5, 3, 7, 420, 300, &mut list) };
    assert_eq!(st, Eq4Status::Ok, "{}", last_error());
    unsafe {
        let found: Vec<[String; 4]> = (0..eq4_list_len(list)).map(|i| quad(list, i)).collect();
        assert!(found.contains(&["417", "117", "19", "281"].map(String::from)));
        eq4_list_free(list);
    }
    let st = unsafe { eq4_meet_search(5, 5, 7, 10, 10, &mut list) };
    assert_eq!(st, Eq4Status::InvalidArgument);
}

#[test]
fn family_generation() {
    let mut list = ptr::null_mut();
    let params = [2i64];
    let st = unsafe { eq4_family(c("Gerardin").as_ptr(), params.as_ptr(), 1, &mut list) };
    assert_eq!(st, Eq4Status::Ok);
    unsafe {
        assert_eq!(eq4_list_len(list), 1);
        assert_eq!(quad(list, 0), ["8", "1", "4", "3"].map(String::from));
        assert_eq!(field(list, 0, Eq4Field::Weight), "4144");
        assert_eq!(field(list, 0, Eq4Field::Method), "family:Gerardin");
        eq4_list_free(list);
    }
    let st = unsafe { eq4_family(c("Gerardin").as_ptr(), params.as_ptr(), 0, &mut list) };
    assert_eq!(st, Eq4Status::InvalidArgument);
    let st = unsafe { eq4_family(c("Nope").as_ptr(), params.as_ptr(), 1, &mut list) };
    assert_eq!(st, Eq4Status::Parse);
}

#[test]
fn elliptic_seed() {
    let mut list = ptr::null_mut();
    let st = unsafe {
        eq4_elliptic(
            9069,
            3,
            1,
            c("11633949063/14161").as_ptr(),
            c("1164093129464040/1685159").as_ptr(),
            1,
            &mut list,
        )
    };
    assert_eq!(st, Eq4Status::Ok, "{}", last_error());
    unsafe {
        let found: Vec<[String; 4]> = (0..eq4_list_len(list)).map(|i| quad(list, i)).collect();
        assert!(found.contains(&["11390652421", "504256282", "6436474351", "1147136408"].map(String::from)));
        eq4_list_free(list);
    }
    let st = unsafe { eq4_elliptic(9069, 3, 1, c("1/1").as_ptr(), c("1/1").as_ptr(), 1, &mut list) };
    assert_eq!(st, Eq4Status::InvalidArgument);
}

#[test]
fn search_h_with_config() {
    let mut list = ptr::null_mut();
    let cfg = c("methods = \"brute\"\nbrute_a_max = 20\nbrute_b_max = 20\nbrute_c_max = 20\n");
    let st = unsafe { eq4_search_h(48, cfg.as_ptr(), &mut list) };
    assert_eq!(st, Eq4Status::Ok, "{}", last_error());
    unsafe {
        assert!(eq4_list_len(list) >= 1);
        assert_eq!(quad(list, 0), ["8", "1", "4", "3"].map(String::from));
        eq4_list_free(list);
    }
    let st = unsafe { eq4_search_h(48, c("bogus = 1").as_ptr(), &mut list) };
    assert_eq!(st, Eq4Status::Parse);
}

#[test]
fn verify_file_counts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.jsonl");
    std::fs::write(
        &path,
        "{\"h\":\"48\",\"a\":\"8\",\"b\":\"1\",\"c\":\"4\",\"d\":\"3\",\"method\":\"imported\",\"weight\":\"4144\",\"ts\":\"0\"}\n\
         {\"h\":\"48\",\"a\":\"8\",\"b\":\"1\",\"c\":\"4\",\"d\":\"2\",\"method\":\"imported\",\"weight\":\"4144\",\"ts\":\"0\"}\n",
    )
    .unwrap();
    let (mut checked, mut failed) = (0usize, 0usize);
    let p = c(path.to_str().unwrap());
    let st = unsafe { eq4_verify_file(p.as_ptr(), &mut checked, &mut failed) };
    assert_eq!(st, Eq4Status::Ok);
    assert_eq!((checked, failed), (2, 1));
    let missing = c(dir.path().join("none").to_str().unwrap());
    let st = unsafe { eq4_verify_file(missing.as_ptr(), &mut checked, &mut failed) };
    assert_eq!(st, Eq4Status::Io);
}

#[test]
fn null_list_is_harmless() {
    unsafe {
        assert_eq!(eq4_list_len(ptr::null()), 0);
        eq4_list_free(ptr::null_mut());
        eq4_string_free(ptr::null_mut());
        let mut h = 0;
        assert_eq!(eq4_list_h(ptr::null(), 0, &mut h), Eq4Status::NullPointer);
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "equal_quartics.h"

int main(void) {
    bool holds = false;
    if (eq4_verify(4117, "10497", "2303", "2263", "2361", &holds) != EQ4_STATUS_OK || !holds) return 1;
    Eq4SolutionList *list = NULL;
    int64_t params[1] = {2};
    if (eq4_family("Gerardin", params, 1, &list) != EQ4_STATUS_OK) return 2;
    if (eq4_list_len(list) != 1) return 3;
    char *w = eq4_list_field(list, 0, EQ4_FIELD_WEIGHT);
    int ok = w && strcmp(w, "4144") == 0;
    eq4_string_free(w);
    eq4_list_free(list);
    if (!ok) return 4;
    if (eq4_family("Gerardin", params, 0, &list) != EQ4_STATUS_INVALID_ARGUMENT) return 5;
    if (strlen(eq4_last_error()) == 0) return 6;
    puts("c ok");
    return 0;
}
"#;

/// Compiles a small C program against the generated header and the cdylib.
#[test]
fn header_compiles_and_links_from_c() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler on PATH; skipping");
        return;
    }
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = crate_dir.join("include");
    assert!(include.join("equal_quartics.h").exists());
    // tests run from target/<profile>/deps; the cdylib sits one level up
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap().to_path_buf();
    if !lib_dir.join("libequal_quartics_ffi.so").exists() {
        eprintln!("cdylib not found in {}; skipping", lib_dir.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let bin = dir.path().join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg("-L")
        .arg(&lib_dir)
        .arg("-lequal_quartics_ffi")
        .arg("-o")
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin)
        .env("LD_LIBRARY_PATH", &lib_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "c ok");
}
