//! A pipeline given as data: quantum 2×2 matrices over A3 written out in
//! JSON, then checked step by step.

use bruhatspec::spectra::{run_pipeline, PipelineSpec};

const SPEC: &str = r#"{
  "name": "quantum-matrices",
  "coxeter": "A3",
  "steps": [
    {"gen": 2, "var": "a"},
    {"gen": 1, "var": "b"},
    {"gen": 3, "var": "c"},
    {"gen": 2, "var": "d", "delta": {"a": [["b", "c"]]}, "rewrite": {"a": "Dq"}}
  ],
  "expect": {"size": 14}
}"#;

fn main() -> bruhatspec::Result<()> {
    let run = run_pipeline(&PipelineSpec::from_json(SPEC)?)?;
    println!("{}", run.report_json());
    println!("primes: {}", run.poset().labels().join(" "));
    Ok(())
}
