//! Emitting a certificate, verifying it, and watching a one-digit change
//! get rejected.

use crossprod::certificate::{verify, Certificate};
use crossprod::stably_free::{certify_noncyclic, IdealSpec};
use crossprod::Algebra;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = Algebra::load("weyl")?;
    let k = IdealSpec::intersection(w.parse_element("x^2")?, w.parse_element("d + 1")?)?;
    let out = certify_noncyclic(&w, &k, 10, 6)?;
    let text = Certificate::noncyclicity(&w, &k, out.certificate().expect("certified"))?.to_text();
    print!("{text}");

    println!("\nverify: {}", verify(&text).map(|c| c.claim.kind()).unwrap_or("rejected"));
    let tampered = text.replace("d_witness = 5", "d_witness = 4");
    match verify(&tampered) {
        Ok(_) => println!("tampered: accepted"),
        Err(e) => println!("tampered: {e}"),
    }
    Ok(())
}
