//! Fourier transforms, partial transforms and the Weyl commutation relation.

use std::f64::consts::PI;

use num_complex::Complex64;
use quantum_baker::oracle::{momentum_operator, partial_fourier, position_values, qft, weyl_pair};

fn main() -> quantum_baker::Result<()> {
    for n in 1..=6 {
        let f = qft(n)?;
        let (u, v) = weyl_pair(n)?;
        let eps = Complex64::from_polar(1.0, 2.0 * PI / (1u64 << n) as f64);
        let weyl = u.dot(&v).max_abs_diff(&v.dot(&u).scale(eps));
        let partial: f64 = (0..=n)
            .map(|m| partial_fourier(m, n).map(|g| g.unitarity_residual()))
            .collect::<quantum_baker::Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!(
            "N = {n}: ‖F*F − I‖ = {:.1e}, max over m ‖G_m*G_m − I‖ = {partial:.1e}, ‖UV − εVU‖ = {weyl:.1e}",
            f.unitarity_residual()
        );
    }

    let p = momentum_operator(2)?;
    println!("\nmomentum on 2 qubits (real parts):");
    for r in 0..4 {
        let row: Vec<String> = (0..4)
            .map(|c| format!("{:+.4}", p.entry(r, c).re))
            .collect();
        println!("  {}", row.join(" "));
    }
    println!("position grid: {:?}", position_values(2));
    Ok(())
}
