//! Coherent states on a few qubits and their mean position under the quantum
//! baker map.

use quantum_baker::oracle::{coherent_state, oracle_coherent_mean, vacuum_state};

fn main() -> quantum_baker::Result<()> {
    let n = 6;
    let vacuum = vacuum_state(n)?;
    println!("vacuum ⟨q⟩ = {:.6}", vacuum.mean_position());

    for (x, v) in [(0, 0), (8, 0), (-8, 3), (20, 1)] {
        let alpha = coherent_state(x, v, n)?;
        let means: Vec<String> = (0..=2 * n as u64)
            .map(|step| oracle_coherent_mean(x, v, step, n).map(|m| format!("{m:.3}")))
            .collect::<quantum_baker::Result<_>>()?;
        println!(
            "α = {x:+} {v:+}i  norm {:.12}  ⟨q⟩_n: {}",
            alpha.state.norm(),
            means.join(" ")
        );
    }
    Ok(())
}
