//! Horton's algebra K_n against the type D_{n+1} interval below
//! s_n⋯s_2s_1s_0s_2⋯s_n. Figure index s0 is generator 1 here.

use bruhatspec::spectra::{horton, run_pipeline};

fn main() -> bruhatspec::Result<()> {
    for n in 2..=3 {
        let run = run_pipeline(&horton(n)?)?;
        println!("K{n}: w = {}, {} primes, ranks {:?}", run.word, run.poset().len(), run.poset().rank_profile().unwrap_or_default());
    }
    Ok(())
}
