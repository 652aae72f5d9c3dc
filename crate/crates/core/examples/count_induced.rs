//! Exact, brute-force and sampled induced-copy counts side by side.
//!
//! cargo run --release --example count_induced

use homog::induced::{count_induced_exact, estimate_induced};
use homog::oracle::{brute_count_induced, generate, GeneratorSpec};
use homog::rational::ratio;
use homog::Graph;

fn main() -> homog::Result<()> {
    let patterns = [
        ("P4", Graph::path(4)),
        ("C4", Graph::cycle(4)),
        ("K3", Graph::complete(3)),
        ("K1,3", Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)])?),
    ];
    let small = generate(&GeneratorSpec::gnp(10, ratio(1, 2), 3))?;
    println!("G(10, 1/2), {} edges", small.edge_count());
    for (name, f) in &patterns {
        let est = estimate_induced(&small, f, 5000, 1)?;
        println!(
            "  {name:5} exact {:4}  brute {:4}  estimate {:7.1} [{:.1}, {:.1}]",
            count_induced_exact(&small, f)?,
            brute_count_induced(&small, f),
            est.estimate,
            est.lower,
            est.upper
        );
    }

    let large = generate(&GeneratorSpec::gnp(300, ratio(1, 2), 3))?;
    let p4 = Graph::path(4);
    match count_induced_exact(&large, &p4) {
        Ok(c) => println!("G(300, 1/2): exact P4 count {c}"),
        Err(e) => {
            let est = estimate_induced(&large, &p4, 20_000, 2)?;
            println!("G(300, 1/2): {e}");
            println!(
                "  estimated {:.3e} in [{:.3e}, {:.3e}]; expected (3/16) C(300, 4) = {:.3e}",
                est.estimate,
                est.lower,
                est.upper,
                3.0 / 16.0 * est.subsets
            );
        }
    }
    Ok(())
}
