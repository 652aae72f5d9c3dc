//! Writes a certificate, reads it back, verifies it, then shows the
//! verifier rejecting a mutated graph and a tampered claim.
//!
//! cargo run --release --example verify_certificate

use homog::oracle::{generate, verify_outcome, GeneratorSpec};
use homog::pipeline::{parse_certificate, run, write_certificate, Certificate, RunConfig};
use homog::rational::ratio;
use homog::FamilySpec;

fn main() -> homog::Result<()> {
    let eps = ratio(1, 10);
    let g = generate(&GeneratorSpec::cograph(300, 21))?;
    let outcome = run(&g, &eps, &FamilySpec::p4(), &RunConfig::default())?;
    let text = write_certificate(&outcome);
    let parsed = parse_certificate(&text)?;
    assert_eq!(parsed, outcome);
    println!(
        "{} ({} lines of certificate)",
        outcome.summary(),
        text.lines().count()
    );
    println!("{}\n", verify_outcome(&g, &parsed, &eps));

    let mutated = g.with_toggled(0, 1);
    let report = verify_outcome(&mutated, &parsed, &eps);
    println!("after toggling edge 0-1: {}", report.failures().join("; "));

    let mut tampered = parsed.clone();
    if let Certificate::Homogeneous(c) = &mut tampered.certificate {
        c.density.edges = c.density.pairs - c.density.edges;
    }
    println!(
        "with the density claim flipped: {}",
        verify_outcome(&g, &tampered, &eps).failures().join("; ")
    );
    Ok(())
}
