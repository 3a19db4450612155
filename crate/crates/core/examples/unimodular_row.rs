//! Cofactors for the Weyl row `(x², 1 + x∂)` and the splitting that makes
//! its kernel stably free.

use crossprod::certificate::Certificate;
use crossprod::stably_free::{certify_stably_free, find_cofactors, CofactorSearch};
use crossprod::Algebra;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = Algebra::load("weyl")?;
    let a = w.parse_element("x^2")?;
    let b = w.parse_element("1 + x*d")?;

    for bound in 0..=2 {
        match find_cofactors(&w, &a, &b, bound)? {
            CofactorSearch::Inconclusive { .. } => println!("bound {bound}: nothing"),
            CofactorSearch::Found(row) => {
                println!("bound {bound}: u = {}, v = {}", w.format(&row.u), w.format(&row.v));
                let witness = certify_stably_free(&w, &row)?;
                println!("E = I - (u, v)^T (a, b):");
                for line in &witness.idempotent {
                    let cells: Vec<String> = line.iter().map(|e| w.format(e)).collect();
                    println!("  [{}]", cells.join(", "));
                }
                print!("\n{}", Certificate::unimodular_row(&w, &row)?.to_text());
                break;
            }
        }
    }
    Ok(())
}
