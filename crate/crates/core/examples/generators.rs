//! Generates one graph of each kind. Every generator checks its defining
//! property before returning, so reaching the output means the check passed.
//!
//! cargo run --release --example generators

use homog::cotree::{recognize, Recognition};
use homog::oracle::{generate, GeneratorSpec};
use homog::rational::ratio;

fn main() -> homog::Result<()> {
    let specs = [
        GeneratorSpec::cograph(500, 1),
        GeneratorSpec::split(300, ratio(1, 5), 2),
        GeneratorSpec::gnp(300, ratio(1, 20), 3),
        GeneratorSpec::planted(400, ratio(1, 2), 80, ratio(0, 1), 4),
        GeneratorSpec::two_cliques(200, 5),
    ];
    for spec in &specs {
        let g = generate(spec)?;
        let cograph = matches!(recognize(&g), Recognition::Cograph(_));
        println!("{spec}\n  {} edges, cograph: {cograph}", g.edge_count());
    }
    Ok(())
}
