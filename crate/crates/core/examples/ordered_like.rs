//! Exhaustive ordered-like checks on finite truncations of semigroups.

use crossprod::semigroup::{check_ordered_like, FiniteSemigroupSample};

const CYCLIC: &str = "
# Z/3 under addition
0 1 2
0: 0 1 2
1: 1 2 0
2: 2 0 1
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for spec in ["nat-plus:6", "natk-plus:2:2", "nat-max:5"] {
        let sample = FiniteSemigroupSample::builtin(spec)?;
        let r = check_ordered_like(&sample, 4, true);
        print!("{spec:<14} strict: {:<5} ({} pairs)", r.verdict.to_string(), r.pairs_checked);
        if let Some((s1, s2)) = r.counterexample {
            print!("  S1 = {{{}}}, S2 = {{{}}}", s1.join(", "), s2.join(", "));
        }
        println!();
    }
    let r = check_ordered_like(&FiniteSemigroupSample::from_table_text(CYCLIC)?, 3, true);
    println!("Z/3            strict: {} invertible {:?}", r.verdict, r.invertible);
    Ok(())
}
