//! Compiles and runs a C program against the generated header and the
//! static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "torsep.h"

int main(void) {
    const int64_t w[3] = {1, 5, -6};
    TorsepRep *rep = NULL;
    if (torsep_rep_new(w, 1, 3, &rep) != TORSEP_STATUS_OK) return 10;
    TorsepSemigroup *hb = NULL;
    if (torsep_hilbert_basis(rep, &hb) != TORSEP_STATUS_OK) return 11;
    size_t len = torsep_semigroup_len(hb), n = torsep_semigroup_dim(hb);
    uint64_t buf[64];
    if (len * n > 64 || torsep_semigroup_copy(hb, buf, 64) != TORSEP_STATUS_OK) return 12;
    bool sep = false;
    if (torsep_check_separating(rep, hb, 0, &sep) != TORSEP_STATUS_OK || !sep) return 13;
    if (torsep_rep_new(NULL, 1, 3, &rep) != TORSEP_STATUS_NULL_POINTER) return 14;
    if (strlen(torsep_last_error()) == 0) return 15;
    printf("%zu %llu\n", len, (unsigned long long)buf[3]);
    torsep_semigroup_free(hb);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    // the test build of the library lands next to the test binary
    let lib = exe.parent().unwrap().join("libtorsep_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let bin = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "3 6");
}
