//! Quantum affine space: every step doubles the spectrum, giving the
//! Boolean lattice, which is also the interval below a Coxeter element.

use bruhatspec::bruhat::interval;
use bruhatspec::coxeter::{CoxeterGroup, Word};
use bruhatspec::poset::{is_isomorphic, LabeledPoset};
use bruhatspec::spectra::{qaffine, run_pipeline};

fn main() -> bruhatspec::Result<()> {
    for n in 1..=5 {
        let run = run_pipeline(&qaffine(n)?)?;
        let g = CoxeterGroup::from_name(&format!("A{n}"))?;
        let coxeter = interval(&g, &Word((1..=n).collect()))?;
        println!(
            "n = {n}: {} primes, Boolean: {}, ≅ [1, {}]: {}",
            run.poset().len(),
            is_isomorphic(run.poset(), &LabeledPoset::boolean_lattice(n)),
            coxeter.base(),
            is_isomorphic(run.poset(), coxeter.poset())
        );
    }
    Ok(())
}
