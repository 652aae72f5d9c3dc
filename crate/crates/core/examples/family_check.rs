//! Validates forbidden families and reports neighbourhood VC dimensions.
//!
//! cargo run --release --example family_check -- [family.fam]

use homog::family::{
    neighborhood_vc_dimension, parse_family, read_family, validate_family, DEFAULT_VC_CAP,
};
use homog::FamilySpec;

const TRIO: &str = "\
family trio
c 1/10
const 1/1
graph C4
n 4
0 1
1 2
2 3
0 3
end
graph 2K2
n 4
0 1
2 3
end
graph K3
n 3
0 1
1 2
0 2
end
";

fn report(fam: &FamilySpec) -> homog::Result<()> {
    println!(
        "family {} (f = {}, c = {}, c_const = {})",
        fam.name,
        fam.f(),
        fam.c,
        fam.c_const
    );
    for m in &fam.members {
        println!(
            "  {:4} n={} e={} |Aut|={:3} VC dim {}",
            m.name,
            m.graph.n(),
            m.graph.edge_count(),
            m.automorphisms,
            neighborhood_vc_dimension(&m.graph, DEFAULT_VC_CAP)?
        );
    }
    println!("  {}", validate_family(fam));
    Ok(())
}

fn main() -> homog::Result<()> {
    match std::env::args().nth(1) {
        Some(path) => report(&read_family(path)?)?,
        None => {
            report(&FamilySpec::p4())?;
            report(&parse_family(TRIO)?)?;
            let lonely =
                parse_family("family k3\nc 1/2\nconst 1/1\ngraph K3\nn 3\n0 1\n1 2\n0 2\nend\n")?;
            report(&lonely)?;
        }
    }
    Ok(())
}
