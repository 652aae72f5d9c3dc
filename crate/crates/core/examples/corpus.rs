//! Runs the pipeline over every instance of a corpus manifest and
//! re-verifies each certificate.
//!
//! cargo run --release --example corpus -- data/corpus/acceptance.corpus

use std::time::Instant;

use homog::oracle::{generate, read_manifest, verify_outcome};
use homog::pipeline::{run, RunConfig};
use homog::rational::ratio;
use homog::FamilySpec;

fn main() -> homog::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "data/corpus/acceptance.corpus".to_string());
    let eps = ratio(1, 10);
    let fam = FamilySpec::p4();
    let specs = read_manifest(&path)?;
    let start = Instant::now();
    let mut failures = 0;
    for spec in &specs {
        let t = Instant::now();
        let g = generate(spec)?;
        match run(&g, &eps, &fam, &RunConfig::with_seed(spec.seed)) {
            Ok(out) => {
                let ok = verify_outcome(&g, &out, &eps).passed();
                failures += usize::from(!ok);
                println!(
                    "{spec:<60} {:<58} {} {:>6.0?}",
                    out.summary(),
                    if ok { "ok" } else { "FAIL" },
                    t.elapsed()
                );
            }
            Err(e) => {
                failures += 1;
                println!("{spec:<60} error: {e}");
            }
        }
    }
    println!(
        "{} instances, {failures} failures, {:.1?}",
        specs.len(),
        start.elapsed()
    );
    Ok(())
}
