//! Runs every shipped pipeline and prints one line per step.

use bruhatspec::spectra::{builtin, height, run_pipeline};

fn main() -> bruhatspec::Result<()> {
    let names = [
        "qaffine3", "qmatrix2", "m2-ext-A3", "m2-ext-affineA2", "weyl1", "weyl2", "weyl3", "horton2", "horton3",
    ];
    for name in names {
        let run = run_pipeline(&builtin(name)?)?;
        let profile = run.poset().rank_profile().unwrap_or_default();
        println!(
            "{name}: w = {}, {} primes, ranks {:?}, height {}",
            run.word,
            run.poset().len(),
            profile,
            height(run.poset())?
        );
        for s in &run.steps {
            println!(
                "  step {} {:<3} gen {:<4} |P| {:>2}  P1 {:>2}  P2 {:>2}  P3 {:>2}  -> {:>2}{}",
                s.step,
                s.var,
                s.gen.map_or("-".to_string(), |g| g.to_string()),
                s.sizes.p,
                s.sizes.p1,
                s.sizes.p2,
                s.sizes.p3,
                s.sizes.new,
                if s.realigned { "  (realigned)" } else { "" }
            );
        }
    }
    Ok(())
}
