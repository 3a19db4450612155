//! Sizes of the PBW basis of `B_{≤d}` and the freeness of `B` over
//! `A[g₁]`, slice by slice.

use crossprod::Algebra;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["weyl", "heisenberg", "weyl-ext-abelian", "sphere:3"] {
        let alg = Algebra::load(name)?;
        let dims: Vec<usize> = (0..=6).map(|d| alg.pbw_basis(d).len()).collect();
        println!("{name:<18} dim B_<=d, d = 0..6: {dims:?}");
    }

    for name in ["weyl-ext-abelian", "heisenberg"] {
        let alg = Algebra::load(name)?;
        let report = alg.check_a1_freeness(6)?;
        println!("\n{name}: B free over A[g1] up to degree 6: {}", report.verdict);
        for row in report.rows {
            println!("  d={} dim={} rank={}", row.degree, row.dim_b, row.rank);
        }
    }
    Ok(())
}
