//! Runs the full search on a graph file, or on a generated cograph when no
//! file is given, and prints the summary and certificate.
//!
//! cargo run --release --example find_homogeneous -- [graph.txt] [eps]

use homog::graph::read_graph;
use homog::oracle::{generate, GeneratorSpec};
use homog::pipeline::{run, write_certificate, RunConfig};
use homog::rational::parse_rational;
use homog::FamilySpec;

fn main() -> homog::Result<()> {
    let mut args = std::env::args().skip(1);
    let g = match args.next() {
        Some(path) => read_graph(path)?,
        None => generate(&GeneratorSpec::cograph(400, 7))?,
    };
    let eps = parse_rational(&args.next().unwrap_or_else(|| "1/10".into()))?;
    let outcome = run(&g, &eps, &FamilySpec::p4(), &RunConfig::with_seed(1))?;
    println!("{}", outcome.summary());
    let t = &outcome.trace;
    println!(
        "gamma = {}, k0 = {} (used {}), k = {}, |A| = {:?}, |B| = {:?}",
        outcome.parameters.gamma, outcome.parameters.k0, t.k0, t.k, t.a_size, t.b_size
    );
    let cert = write_certificate(&outcome);
    for line in cert
        .lines()
        .filter(|l| !l.starts_with("x ") && !l.starts_with("part "))
        .take(40)
    {
        println!("  {line}");
    }
    Ok(())
}
