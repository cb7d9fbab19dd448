//! Builds the pushout square for every (w̄, a) with l(w̄) ≤ 3 in D4.

use bruhatspec::coxeter::CoxeterGroup;
use bruhatspec::pushout::pushout_square;

fn main() -> bruhatspec::Result<()> {
    let g = CoxeterGroup::from_name("D4")?;
    let mut passed = 0;
    for w in g.elements_up_to_length(3) {
        for a in 1..=g.rank() {
            if w.right_descent(a)? {
                continue;
            }
            let report = pushout_square(&g, w.canonical_word(), a)?;
            println!("{:>8} s{a}: {:>2} -> {:>2}  {}", w.to_string(), report.size_inner, report.size_outer, if report.passed() { "ok" } else { "FAILED" });
            passed += report.passed() as usize;
        }
    }
    println!("{passed} squares verified");
    Ok(())
}
