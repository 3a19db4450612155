//! Consistency of presentations: Jacobi, derivations compatible with the
//! base relation, and associativity on letter triples and random words.

use crossprod::pbw::consistency_check;
use crossprod::{Algebra, AlgebraPresentation};

const BROKEN: &str = r#"
[base]
variables = ["x"]

[lie]
generators = ["g1", "g2"]

[action]
delta.g1.x = "1"
delta.g2.x = "x"
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["weyl", "heisenberg-ext", "sphere:4"] {
        let r = consistency_check(&Algebra::load(name)?, 500, 1);
        println!("{name:<16} {} after {} checks", r.verdict, r.checks);
    }

    // Commuting generators acting by derivations that do not commute.
    let alg = Algebra::new(AlgebraPresentation::parse_text(BROKEN)?);
    let r = consistency_check(&alg, 500, 1);
    println!(
        "broken           {}: {} at {}",
        r.verdict,
        r.reason.unwrap_or_default(),
        r.witness.unwrap_or_default()
    );
    Ok(())
}
