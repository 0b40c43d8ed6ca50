//! Compiles and runs the C example against the generated header and the
//! cdylib produced by this crate.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_example_compiles_and_runs() {
    // target/debug, derived from the test executable location
    let exe = std::env::current_exe().unwrap();
    let debug_dir = exe
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = debug_dir.join("liblagwave_ffi.so");
    assert!(lib.exists(), "cdylib not found at {}", lib.display());

    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let source = manifest.join("examples/c/demo.c");
    let out_dir = debug_dir.join("c-smoke");
    std::fs::create_dir_all(&out_dir).unwrap();
    let binary = out_dir.join("lagwave_demo");

    let compile = Command::new("cc")
        .arg(&source)
        .arg("-o")
        .arg(&binary)
        .arg(format!("-I{}", include.display()))
        .arg(format!("-L{}", debug_dir.display()))
        .arg("-llagwave_ffi")
        .arg("-lm")
        .arg(format!("-Wl,-rpath,{}", debug_dir.display()))
        .output()
        .expect("cc runs");
    assert!(
        compile.status.success(),
        "cc failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&binary).output().expect("demo runs");
    assert_eq!(
        run.status.code(),
        Some(0),
        "demo exited {:?}: {}{}",
        run.status.code(),
        String::from_utf8_lossy(&run.stdout),
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(String::from_utf8_lossy(&run.stdout).contains("ok"));
}
