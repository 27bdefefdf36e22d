use std::path::Path;
use std::process::Command;

#[test]
fn header_is_present_and_guarded() {
    let h = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/crossfam.h")).unwrap();
    assert!(h.contains("#ifndef CROSSFAM_H"));
    for sym in ["cf_binom", "cf_family_new", "cf_family_free", "cf_verify", "cf_string_free", "CF_STATUS_OK"] {
        assert!(h.contains(sym), "{sym} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let Ok(out) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .output()
    else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
