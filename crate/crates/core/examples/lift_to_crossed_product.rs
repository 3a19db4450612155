//! Lifting `K = aA₁ ∩ bA₁` from `A₁ = ℚ[x][∂]` into larger crossed
//! products and certifying the lift.

use std::time::Instant;

use crossprod::stably_free::{certify_noncyclic, lift_ideal, IdealSpec, NoncyclicOutcome};
use crossprod::Algebra;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = Algebra::load("weyl")?;
    for (a, b) in [("x", "d"), ("x^2", "d + 1")] {
        let k = IdealSpec::intersection(w.parse_element(a)?, w.parse_element(b)?)?;
        for target in ["weyl-ext-abelian", "heisenberg-ext"] {
            let big = Algebra::load(target)?;
            let lifted = lift_ideal(&k, &w, &big)?;
            let start = Instant::now();
            let line = match certify_noncyclic(&big, &lifted, 10, 6)? {
                NoncyclicOutcome::Certified(c) => format!(
                    "certified at degree {} (dim {} vs {})",
                    c.d_witness, c.dims_k[c.d_witness as usize], c.dims_b[c.d_witness as usize]
                ),
                NoncyclicOutcome::Inconclusive { reason, .. } => format!("inconclusive: {reason}"),
            };
            println!("({a}, {b}) in {target:<17} {line}  [{:.2?}]", start.elapsed());
        }
    }
    Ok(())
}
