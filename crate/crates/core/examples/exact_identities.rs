//! Exact dyadic identities of the mean position at large qubit counts.

use quantum_baker::closedform::{mean_position, RegimeDecomposition};
use quantum_baker::numeric::{random_bitstring, DyadicRational, RandomBitSource};

fn main() -> quantum_baker::Result<()> {
    let n = 700;
    let xi = random_bitstring(n, &mut RandomBitSource::new(9))?;
    let big_n = n as u64;

    println!(
        "r_0  = 0.ξ1 exactly: {}",
        mean_position(&xi, 0) == xi.initial_value()
    );
    for m in 1..=4u64 {
        let r = mean_position(&xi, m * big_n);
        println!(
            "r_{m}N = {:.12} (= 1/2: {})",
            r.to_f64(),
            r == DyadicRational::half()
        );
    }
    let periodic =
        (0..4 * big_n).all(|k| mean_position(&xi, k) == mean_position(&xi, k + 4 * big_n));
    println!("period 4N holds for every n < 4N: {periodic}");

    let sum = &mean_position(&xi, 0) + &mean_position(&xi, 2 * big_n);
    println!("r_0 + r_2N = {sum}");

    for step in [123u64, 823, 1523, 2223] {
        let RegimeDecomposition { m, p } = RegimeDecomposition::new(step, n);
        let r = mean_position(&xi, step);
        println!(
            "n = {step:>4} (m = {m}, p = {p:>3}): r_n = {:.15}, exponent {}",
            r.to_f64(),
            r.exponent()
        );
    }
    Ok(())
}
