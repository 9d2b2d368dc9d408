//! Quantum mean position against the classical orbit of the same point.
//!
//! For `n ≤ N` the two agree exactly; afterwards the classical orbit of the
//! dyadic point dies at 0 while the quantum one hovers around 1/2.

use quantum_baker::classical::{classical_q_orbit, ClassicalOrbitMode};
use quantum_baker::closedform::quantum_orbit;
use quantum_baker::numeric::{random_bitstring, RandomBitSource};

fn main() -> quantum_baker::Result<()> {
    let n = 500;
    let xi = random_bitstring(n, &mut RandomBitSource::new(1))?;
    let quantum = quantum_orbit(&xi, 1000).into_orbit();
    let classical = classical_q_orbit(&xi, 1000, &ClassicalOrbitMode::Truncated);
    let extended = classical_q_orbit(
        &xi,
        1000,
        &ClassicalOrbitMode::Extended(RandomBitSource::with_stream(1, 1)),
    );

    let first = quantum
        .values()
        .iter()
        .zip(classical.values())
        .position(|(a, b)| a != b);
    println!(
        "N = {n}: orbits agree exactly up to n = {}",
        first.map_or(1000, |f| f - 1)
    );

    println!(
        "{:>5} {:>12} {:>12} {:>12}",
        "n", "quantum", "truncated", "extended"
    );
    for step in [0, 1, 2, 250, 499, 500, 501, 502, 750, 999, 1000] {
        println!(
            "{step:>5} {:>12.8} {:>12.8} {:>12.8}",
            quantum.values()[step].to_f64(),
            classical.values()[step].to_f64(),
            extended.values()[step].to_f64(),
        );
    }
    Ok(())
}
