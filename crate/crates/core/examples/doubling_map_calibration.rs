//! The classical baker orbit of a generic point has one bit of chaos degree
//! per step, whatever the partition.

use quantum_baker::chaos::{sup_over_partitions, LogBase};
use quantum_baker::classical::{classical_q_orbit, ClassicalOrbitMode};
use quantum_baker::numeric::{random_bitstring, RandomBitSource};

fn main() -> quantum_baker::Result<()> {
    let xi = random_bitstring(100, &mut RandomBitSource::new(3))?;
    let window = 100_000;
    let mode = ClassicalOrbitMode::Extended(RandomBitSource::with_stream(3, 1));
    let orbit = classical_q_orbit(&xi, window + 1, &mode);

    let sweep = sup_over_partitions(
        &orbit,
        0,
        window,
        &[2, 3, 4, 8, 10, 16, 64, 100],
        LogBase::Two,
    )?;
    for (k, d) in &sweep.per_partition {
        println!("K = {k:>3}: D = {d:.4} bits");
    }
    println!(
        "sup over the family: K = {}, D = {:.4}",
        sweep.best_bins, sweep.best_degree
    );

    let truncated = classical_q_orbit(&xi, 1000, &ClassicalOrbitMode::Truncated);
    let tail = sup_over_partitions(&truncated, 200, 500, &[2, 100], LogBase::Two)?;
    println!(
        "truncated orbit after it reaches 0: D = {}",
        tail.best_degree
    );
    Ok(())
}
