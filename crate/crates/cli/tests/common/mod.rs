#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// `(golden file, input fixture, arguments)` for every worked example.
pub const CASES: &[(&str, &str, &[&str])] = &[
    ("five_events_equiv.txt", "five_events.json", &["equiv", "F", "adecc", "accde", "--format", "text"]),
    ("five_events_equiv.json", "five_events.json", &["equiv", "F", "adecc", "accde"]),
    ("five_events_normalize.json", "five_events.json", &["normalize", "F", "adecc", "accde", "eca"]),
    ("product_fpcm.json", "product.json", &["monoid", "product", "E1", "E2", "--category", "fpcm"]),
    ("product_fpcm_par.json", "product.json", &["monoid", "product", "E1", "E2", "--category", "fpcm-par"]),
    ("coproduct.json", "product.json", &["monoid", "coproduct", "E1", "E2"]),
    ("coequalize_fpcm.json", "coequalizer.json", &["monoid", "coequalize", "f", "g", "--category", "fpcm"]),
    ("coequalize_fpcm_par.json", "coequalizer.json", &["monoid", "coequalize", "f", "g", "--category", "fpcm-par"]),
    ("coequalize_fpcm_par.txt", "coequalizer.json", &["monoid", "coequalize", "f", "g", "--format", "text"]),
    ("hom_check.json", "coequalizer.json", &["hom-check", "f", "--category", "fpcm-par"]),
    ("radjoint_z2.json", "cyclic.json", &["radjoint", "Z2"]),
    ("radjoint_z3.json", "cyclic.json", &["radjoint", "Z3"]),
    ("witness_morphism.json", "systems.json", &["asys", "morphism-check", "w"]),
    ("witness_polygonal.json", "systems.json", &["asys", "polygonal-check", "w"]),
    ("identity_polygonal.txt", "systems.json", &["asys", "polygonal-check", "idT", "--format", "text"]),
    ("asys_product.json", "systems.json", &["asys", "product", "P", "Q"]),
    ("asys_product.txt", "systems.json", &["asys", "product", "P", "Q", "--format", "text"]),
    ("asys_classify.txt", "systems.json", &["asys", "classify", "T", "--format", "text"]),
    ("asys_validate.json", "systems.json", &["asys", "validate", "D"]),
    ("asys_unfold.txt", "systems.json", &["asys", "unfold", "D", "--depth", "2", "--format", "text"]),
    ("asys_reach.json", "systems.json", &["asys", "reach", "D"]),
    ("asys_coproduct.json", "systems.json", &["asys", "colimit", "PQ", "--bound", "2"]),
    ("free_extension.json", "free_extension.json", &["space", "colimit", "D", "--bound", "3", "--category", "fpcm"]),
    ("free_extension.txt", "free_extension.json", &["space", "colimit", "D", "--bound", "3", "--category", "fpcm", "--format", "text"]),
    ("quotient.json", "quotient.json", &["space", "colimit", "Q"]),
    ("space_equalize.json", "quotient.json", &["space", "equalize", "rot", "one"]),
];

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn tracecat(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_tracecat"))
        .args(args)
        .output()
        .expect("binary runs");
    Output {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn run_case(input: &str, args: &[&str]) -> Output {
    let path = fixtures().join(input);
    let mut full = vec!["--input", path.to_str().unwrap()];
    full.extend_from_slice(args);
    tracecat(&full)
}
