//! The quantized Weyl algebra on six generators: its spectrum is the
//! interval below s3s2s1s2s3, and the rank-one prime matched with s3 is
//! generated by Ω3.

use bruhatspec::coxeter::Word;
use bruhatspec::spectra::{builtin, height, run_pipeline};

fn main() -> bruhatspec::Result<()> {
    let run = run_pipeline(&builtin("weyl3")?)?;
    println!("w = {}, {} primes, height {}", run.word, run.poset().len(), height(run.poset())?);
    for (i, w) in run.interval.elements().iter().enumerate() {
        println!("  {:>10} ↦ {}", w.to_string(), run.model.primes()[run.nabla.apply(i)]);
    }
    println!("s3 ↦ {}", run.prime_of(&Word(vec![3])).expect("s3 lies in the interval"));
    Ok(())
}
