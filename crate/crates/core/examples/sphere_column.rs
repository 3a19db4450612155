//! The unimodular column `(x₁, …, xₙ)` over `ℚ[x₁..xₙ]/(Σxᵢ² − 1)` and the
//! idempotent presenting its stably free cokernel.

use crossprod::stably_free::{cokernel_presentation, sphere_column};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 3..=5 {
        let inst = sphere_column(n)?;
        let alg = &inst.algebra;
        let e = cokernel_presentation(&inst)?;
        let trace = e.trace.as_ref().map(|t| alg.format(t)).unwrap_or_default();
        println!("n = {n}: E^2 = E verified, trace E = {trace}");
        if n == 3 {
            for line in &e.idempotent {
                let cells: Vec<String> = line.iter().map(|x| alg.format(x)).collect();
                println!("  [{}]", cells.join(", "));
            }
        }
    }
    Ok(())
}
