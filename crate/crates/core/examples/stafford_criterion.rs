//! Whether a derivation maps an ideal of the base ring into itself.

use crossprod::coefficients::{BaseRing, CommPoly, DerivationSpec};
use crossprod::stably_free::derivation_stability;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let qx = BaseRing::polynomial(vec!["x".into()]);
    let m = vec![qx.parse("x")?];
    for (label, image) in [("d/dx", "1"), ("x*d/dx", "x")] {
        let d = DerivationSpec::new(vec![qx.parse(image)?])?;
        let r = derivation_stability(&qx, &m, &d, 4)?;
        println!("(x) under {label:<7} {} {}", r.verdict, r.witness.map(|w| format!("witness {w}")).unwrap_or_default());
    }

    let qxy = BaseRing::polynomial(vec!["x".into(), "y".into()]);
    let m: Vec<CommPoly> = vec![qxy.parse("x")?, qxy.parse("y")?];
    let swap = DerivationSpec::new(vec![qxy.parse("y")?, qxy.parse("x")?])?;
    println!("(x, y) under x->y, y->x: {}", derivation_stability(&qxy, &m, &swap, 4)?.verdict);
    Ok(())
}
