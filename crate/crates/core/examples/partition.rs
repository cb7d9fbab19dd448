//! The four blocks of [1, w̄a] and the maps between them.

use bruhatspec::bruhat::{partition, Block};
use bruhatspec::coxeter::{CoxeterGroup, Word};

fn main() -> bruhatspec::Result<()> {
    let g = CoxeterGroup::from_name("A3")?;
    let part = partition(&g, &Word(vec![2, 1, 3, 2]), 1)?;
    println!("w̄ = {}, a = s{}", part.wbar(), part.generator());
    for b in [Block::W1, Block::W2, Block::W3, Block::W4] {
        println!("{b}: {}", part.block_labels(b).join(" "));
    }

    // Φ fixes words without descent a and sends the others to wa.
    let phi = part.phi();
    let outer = part.outer();
    for (w, &image) in phi.iter().enumerate() {
        if image != w {
            println!("Φ({}) = {}", outer.element(w), outer.element(image));
        }
    }
    println!("law violations: {}", part.law_violations().len());
    Ok(())
}
