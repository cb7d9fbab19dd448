//! Size, rank profile and Hasse diagram of a Bruhat interval.
//!
//! cargo run --example interval -- A3 3,2,1,2,3

use bruhatspec::bruhat::interval;
use bruhatspec::coxeter::{CoxeterGroup, Word};

fn main() -> bruhatspec::Result<()> {
    let mut args = std::env::args().skip(1);
    let group = args.next().unwrap_or_else(|| "A3".into());
    let word: Word = args.next().unwrap_or_else(|| "3,2,1,2,3".into()).parse()?;

    let g = CoxeterGroup::from_name(&group)?;
    let iv = interval(&g, &word)?;
    println!("[1, {}] in {group}: {} elements, ranks {:?}", iv.base(), iv.len(), iv.rank_profile());
    for (lo, hi) in iv.poset().hasse() {
        println!("  {} < {}", iv.element(*lo), iv.element(*hi));
    }
    Ok(())
}
