//! Generators of `aB ∩ bB` from syzygies, and completion of a unimodular
//! row to an invertible matrix (which proves the intersection principal).

use crossprod::stably_free::{complete_row, find_cofactors, intersection_ideal, CofactorSearch};
use crossprod::Algebra;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = Algebra::load("poly:x")?;
    let k = intersection_ideal(&q, &q.parse_element("x")?, &q.parse_element("x + 1")?, 3)?.expect("syzygy");
    println!("Q[x]: x ∩ (x+1) generated by {}", q.format(&k.generators[0]));

    let w = Algebra::load("weyl")?;
    for (a, b) in [("x^2", "1 + x*d"), ("x", "d"), ("x^2", "d + 1")] {
        let (ea, eb) = (w.parse_element(a)?, w.parse_element(b)?);
        let k = intersection_ideal(&w, &ea, &eb, 3)?.expect("syzygy");
        let gens: Vec<String> = k.generators.iter().map(|g| w.format(g)).collect();
        println!("\nweyl ({a}, {b}): generators up to syzygy degree 3: {}", gens.join(", "));
        let CofactorSearch::Found(row) = find_cofactors(&w, &ea, &eb, 3)? else { continue };
        match complete_row(&w, &row, 3)? {
            Some(c) => println!("  completes to an invertible matrix; principal, generated by {}", w.format(&c.intersection_generator(&w))),
            None => println!("  no completion with entries of degree <= 3"),
        }
    }
    Ok(())
}
