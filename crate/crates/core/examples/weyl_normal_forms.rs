//! Normal forms in the first Weyl algebra, by multiplication and by word
//! rewriting, plus types under both order rules.

use crossprod::pbw::Strategy;
use crossprod::{Algebra, OrderRule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = Algebra::load("weyl")?;
    for src in ["d*x", "d^2*x", "(x*d)^2", "d^3*x^3", "(d + x)^2"] {
        let by_mul = w.parse_element(src)?;
        let by_rewrite = w.normal_form(src)?;
        let rightmost = w.rewrite(&w.parse_words(src)?, Strategy::Rightmost);
        assert_eq!(by_mul, by_rewrite);
        assert_eq!(by_rewrite, rightmost);
        println!("{src:>10}  =  {}", w.format(&by_mul));
    }

    let h = Algebra::load("heisenberg-ext")?;
    let e = h.parse_element("g3*g2*g1 + x^2*g2")?;
    println!("\nheisenberg-ext: {}", h.format(&e));
    for rule in [OrderRule::DegLex, OrderRule::TrimmedLengthLex] {
        println!("  type under {:<7} {:?}", rule.name(), e.type_of(rule)?.entries());
    }
    println!("  filtration index {:?}", e.filtration_index()?.entries());
    Ok(())
}
