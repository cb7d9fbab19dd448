//! Quantum 2×2 matrices and the two one-variable extensions of them, over
//! A3 and over affine A2.

use bruhatspec::spectra::{builtin, run_pipeline};

fn main() -> bruhatspec::Result<()> {
    for name in ["qmatrix2", "m2-ext-A3", "m2-ext-affineA2"] {
        let run = run_pipeline(&builtin(name)?)?;
        println!("{name}: [1, {}] has {} elements, ranks {:?}", run.word, run.poset().len(), run.poset().rank_profile().unwrap_or_default());
        let last = run.steps.last().expect("pipelines are nonempty");
        println!(
            "  last step {}: P1 {}, P2 {}, P3 {}",
            last.var, last.sizes.p1, last.sizes.p2, last.sizes.p3
        );
    }
    Ok(())
}
