//! The dense baker unitary on three qubits, its matrix elements, and the mean
//! position computed by brute force next to the closed form.

use quantum_baker::closedform::{baker_element, mean_position};
use quantum_baker::numeric::BitString;
use quantum_baker::oracle::{baker_unitary, oracle_orbit, STRUCTURAL_TOL};

fn main() -> quantum_baker::Result<()> {
    let n = 3;
    let t = baker_unitary(n)?;
    println!("‖T*T − I‖ = {:.2e}", t.unitarity_residual());

    let mut worst = 0.0f64;
    for r in 0..t.dim() {
        let xi = BitString::from_index(r, n)?;
        let row: Vec<String> = (0..t.dim())
            .map(|c| {
                let z = t.entry(r, c);
                let eta = BitString::from_index(c, n).expect("N ≥ 1");
                worst = worst.max((z - baker_element(&xi, &eta).expect("same length")).norm());
                format!("{:+.2}{:+.2}i", z.re, z.im)
            })
            .collect();
        println!("⟨{xi}| {}", row.join(" "));
    }
    println!("max deviation from the element formula: {worst:.2e} (tolerance {STRUCTURAL_TOL:e})");

    let xi: BitString = "110".parse()?;
    let oracle = oracle_orbit(&xi, 14)?;
    println!("\n n  oracle         closed form");
    for (step, r) in oracle.iter().enumerate() {
        let exact = mean_position(&xi, step as u64);
        println!("{step:>2}  {r:.12}  {exact}");
    }
    Ok(())
}
