//! Recognises cographs through their cotree, or returns an induced P4.
//!
//! cargo run --release --example cograph_recognition

use homog::cotree::{recognize, Recognition};
use homog::oracle::{generate, GeneratorSpec};
use homog::rational::ratio;
use homog::Graph;

fn describe(name: &str, g: &Graph) {
    match recognize(g) {
        Recognition::Cograph(tree) => println!(
            "{name}: cograph, cotree of {} nodes, omega = {}, alpha = {}",
            tree.nodes().len(),
            tree.clique_number(),
            tree.independence_number()
        ),
        Recognition::InducedP4(p) => println!("{name}: induced P4 on {:?}", p.vertex_map),
    }
}

fn main() -> homog::Result<()> {
    describe("C5", &Graph::cycle(5));
    describe(
        "K_(3,3)",
        &Graph::from_edges(
            6,
            &[
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
        )?,
    );
    describe(
        "random cograph n=1000",
        &generate(&GeneratorSpec::cograph(1000, 3))?,
    );
    describe(
        "G(1000, 1/2)",
        &generate(&GeneratorSpec::gnp(1000, ratio(1, 2), 3))?,
    );
    Ok(())
}
