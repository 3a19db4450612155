//! Seeded checks of completely prime and strongly completely prime
//! subalgebras, the graded lemma chain and the `(g₂..gₙ)` filtration.

use crossprod::properties::{
    check_completely_prime, check_filtration_multiplicative, check_graded_lemma_chain, check_scp, Grading,
    SubalgebraSpec,
};
use crossprod::Algebra;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["weyl-ext-abelian", "heisenberg-ext"] {
        let b = Algebra::load(name)?;
        let r = check_scp(&b, &SubalgebraSpec::OreA1, 2000, 7, 4)?;
        println!("{name}: A[g1] s.c.p. {} ({} informative trials)", r.verdict, r.informative);
        let f = check_filtration_multiplicative(&b, 2000, 7, 4)?;
        println!("{name}: filtration {}", f.verdict);
    }

    let q = Algebra::load("poly:x")?;
    let span = SubalgebraSpec::Generated { generators: vec![q.parse_element("x^2")?], expansion_bound: 8 };
    let r = check_completely_prime(&q, &span, 2000, 7, 4)?;
    let v = &r.violations[0];
    println!("span{{1, x^2}} completely prime: {} e.g. ({}) * ({}) = {}", r.verdict, v.a, v.b, v.product);

    let ideal = SubalgebraSpec::Ideal { generators: vec![q.variable(0)], cofactor_bound: 6 };
    let r = check_scp(&q, &ideal, 2000, 7, 4)?;
    let v = &r.violations[0];
    println!("ideal (x) s.c.p.: {} e.g. ({}) * ({}) = {}", r.verdict, v.a, v.b, v.product);

    let p = Algebra::load("poly:x,y")?;
    let chain = check_graded_lemma_chain(&p, Grading::Total, 2000, 7, 4)?;
    println!("Q[x,y] graded by total degree, lemma chain: {}", chain.verdict);
    Ok(())
}
