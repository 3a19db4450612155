//! Non-principality certificates for intersections `aA₁ ∩ bA₁` in the
//! Weyl algebra, from exact slice dimensions.

use crossprod::stably_free::{certify_noncyclic, IdealSpec, NoncyclicOutcome};
use crossprod::Algebra;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = Algebra::load("weyl")?;
    for (a, b) in [("x", "d"), ("x^2", "d + 1"), ("x^2", "1 + x*d")] {
        let k = IdealSpec::intersection(w.parse_element(a)?, w.parse_element(b)?)?;
        match certify_noncyclic(&w, &k, 10, 6)? {
            NoncyclicOutcome::Certified(c) => {
                println!("({a}, {b}): not principal, d0 = {}, witness degree {}", c.d0, c.d_witness);
                println!("  dim K_<=d   {:?}", c.dims_k);
                println!("  dim B_<=d-d0 {:?}", c.dims_b);
            }
            NoncyclicOutcome::Inconclusive { reason, dims_k } => {
                println!("({a}, {b}): inconclusive, {reason}");
                println!("  dim K_<=d   {dims_k:?}");
            }
        }
    }

    let q = Algebra::load("poly:x")?;
    let k = IdealSpec::intersection(q.parse_element("x")?, q.parse_element("x + 1")?)?;
    let out = certify_noncyclic(&q, &k, 12, 6)?;
    println!("\nQ[x], (x, x+1): certified = {}", out.certificate().is_some());
    Ok(())
}
