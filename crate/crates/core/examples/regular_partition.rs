//! Builds a partition with few BAD pairs on a noisy two-community graph and
//! prints the refinement trajectory and the pair labels.
//!
//! cargo run --release --example regular_partition

use homog::oracle::{generate, GeneratorSpec};
use homog::rational::ratio;
use homog::regularity::{afn_partition, write_partition, PartitionConfig, PartitionOutcome};
use homog::FamilySpec;

fn main() -> homog::Result<()> {
    let g = generate(&GeneratorSpec::two_cliques(64, 5))?;
    let config = PartitionConfig {
        gamma: ratio(1, 10),
        k0: 4,
        k_max: 64,
        seed: 3,
        evidence_target: 100,
    };
    let run = afn_partition(&g, &FamilySpec::p4(), &config)?;
    for r in &run.rounds {
        println!(
            "k = {:3}: {:4} of {:4} pairs BAD",
            r.k, r.bad_count, r.pairs
        );
    }
    match run.outcome {
        PartitionOutcome::Partition(p) => {
            println!(
                "contract met at k = {} with {} BAD pairs",
                p.k(),
                p.bad_count()
            );
            print!("{}", write_partition(&p));
        }
        PartitionOutcome::Evidence(e) => println!(
            "stopped with {} copies of {}",
            e.copies.len(),
            e.pattern_name
        ),
    }

    let noisy = generate(&GeneratorSpec::gnp(200, ratio(1, 2), 5))?;
    let run = afn_partition(
        &noisy,
        &FamilySpec::p4(),
        &PartitionConfig {
            k_max: 200,
            ..config
        },
    )?;
    match run.outcome {
        PartitionOutcome::Partition(p) => println!("G(200, 1/2): partition with k = {}", p.k()),
        PartitionOutcome::Evidence(e) => println!(
            "G(200, 1/2): {} distinct induced {} copies found while probing BAD pairs",
            e.copies.len(),
            e.pattern_name
        ),
    }
    Ok(())
}
