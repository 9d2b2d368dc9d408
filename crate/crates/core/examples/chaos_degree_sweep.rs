//! Chaos degree of the quantum and classical orbits for several qubit counts,
//! and the difference on the final window at n* = 1000.

use quantum_baker::experiments::{compare_chaos, ExperimentConfig};

fn main() -> quantum_baker::Result<()> {
    let config = ExperimentConfig {
        steps: 1000,
        window: 100,
        bins: 100,
        seed: 5,
        ..Default::default()
    };
    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>14}",
        "N", "D_q", "D_c", "|diff|", "first differs"
    );
    for n in [100, 200, 300, 500, 700, 900, 1100] {
        let cmp = compare_chaos(&config, n)?;
        let summary = cmp.summary();
        let fw = &cmp.final_window;
        println!(
            "{n:>6} {:>10.4} {:>10.4} {:>10.4} {:>14}",
            fw.d_quantum,
            fw.d_classical,
            fw.abs_difference,
            summary
                .first_difference
                .map_or("never".to_string(), |f| f.to_string()),
        );
    }

    let cmp = compare_chaos(&config, 300)?;
    println!("\nN = 300, D_q(n) and D_c(n) every 100 steps:");
    for (q, c) in cmp
        .quantum
        .points
        .iter()
        .zip(&cmp.classical.points)
        .step_by(100)
    {
        println!("n = {:>4}: {:.4} {:.4}", q.n, q.d, c.d);
    }
    Ok(())
}
