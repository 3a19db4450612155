//! Loading a presentation from text: an so(3)-style Lie algebra acting on
//! ℚ[x, y, z] by rotations.

use crossprod::pbw::consistency_check;
use crossprod::{Algebra, AlgebraPresentation};

const ROTATIONS: &str = r#"
[base]
variables = ["x", "y", "z"]

[lie]
generators = ["l1", "l2", "l3"]
bracket.1.2 = [[3, 1]]
bracket.2.3 = [[1, 1]]
bracket.1.3 = [[2, -1]]

[action]
delta.l1.y = "z"
delta.l1.z = "-y"
delta.l2.z = "x"
delta.l2.x = "-z"
delta.l3.x = "y"
delta.l3.y = "-x"
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pres = AlgebraPresentation::parse_text(ROTATIONS)?;
    println!("hash {}", pres.content_hash());
    let alg = Algebra::new(pres);
    let report = consistency_check(&alg, 300, 3);
    println!("consistency: {} ({})", report.verdict, report.reason.unwrap_or_else(|| "all checks agree".into()));
    for src in ["l2*l1", "l1*(x^2 + y^2 + z^2)", "l3*x*y"] {
        println!("{src:<22} = {}", alg.format(&alg.parse_element(src)?));
    }
    Ok(())
}
