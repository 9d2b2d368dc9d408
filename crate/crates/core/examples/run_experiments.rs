//! The orbit and chaos pipelines and the verification suite, driven from code
//! instead of the command line. Files go to a temporary directory.

use quantum_baker::experiments::{
    run_chaos, run_orbits, run_verify, ExperimentConfig, VerifyOptions,
};

fn main() -> quantum_baker::Result<()> {
    let out_dir = std::env::temp_dir().join("quantum-baker-example");
    let config = ExperimentConfig {
        n_qubits: 64,
        steps: 300,
        window: 40,
        bins: 50,
        n_sweep: vec![32, 64, 400],
        out_dir: out_dir.clone(),
        gnuplot: true,
        ..Default::default()
    };

    let orbits = run_orbits(&config)?;
    let chaos = run_chaos(&config)?;
    for report in [&orbits, &chaos] {
        println!(
            "{}: {} files in {:.3}s",
            report.command,
            report.files.len(),
            report.wall_time_s.unwrap_or(0.0)
        );
        for f in &report.files {
            println!("  {}", f.display());
        }
    }
    println!("{}", serde_json::to_string_pretty(&chaos.summary)?);

    let verify = run_verify(&VerifyOptions::new(4))?;
    print!("{}", verify.table());
    println!("all checks pass: {}", verify.passed());
    Ok(())
}
