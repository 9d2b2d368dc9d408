use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use super::config::{ExperimentConfig, OutputFormat};
use crate::chaos::{chaos_degree_at, chaos_degree_series, ChaosSeries, LogBase, Partition};
use crate::classical::classical_q_orbit;
use crate::closedform::quantum_orbit;
use crate::error::{Error, Result};
use crate::orbit::OrbitSeries;

/// What a run wrote and what it found.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub config: ExperimentConfig,
    pub files: Vec<PathBuf>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Summary {
    Orbits(OrbitSummary),
    Chaos(Vec<ChaosSummary>),
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitSummary {
    pub n_qubits: usize,
    pub initial_string: String,
    pub rows: usize,
    /// First step at which the quantum and classical values differ.
    pub first_difference: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChaosSummary {
    pub n_qubits: usize,
    /// Number of windows `[n, n+W]` with `n + W ≤ N`.
    pub windows_inside: usize,
    /// Whether `D_q = D_c` exactly on all of those windows.
    pub inside_windows_agree: bool,
    /// First window start with `D_q ≠ D_c`.
    pub first_difference: Option<usize>,
    pub max_abs_difference: f64,
    pub final_window: DifferenceRow,
}

/// `|D_q − D_c|` on the last window `[n* − W, n*]` for one qubit count.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DifferenceRow {
    pub n_qubits: usize,
    pub n_star: u64,
    pub window_start: usize,
    pub d_quantum: f64,
    pub d_classical: f64,
    pub abs_difference: f64,
}

#[derive(Serialize)]
struct JsonTable<'a, T> {
    header: &'a [String],
    rows: &'a [T],
}

/// Writes `rows` as CSV (after `# ` header lines) or as a JSON object.
pub fn write_table<T: Serialize>(
    path: &Path,
    format: OutputFormat,
    header: &[String],
    rows: &[T],
) -> Result<()> {
    let file = fs::File::create(path)?;
    let mut out = std::io::BufWriter::new(file);
    match format {
        OutputFormat::Csv => {
            use std::io::Write;
            for line in header {
                writeln!(out, "# {line}")?;
            }
            let mut writer = csv::Writer::from_writer(out);
            for row in rows {
                writer.serialize(row)?;
            }
            writer.flush()?;
        }
        OutputFormat::Json => {
            use std::io::Write;
            serde_json::to_writer_pretty(&mut out, &JsonTable { header, rows })?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn prepare_out_dir(config: &ExperimentConfig) -> Result<()> {
    if config.gnuplot && config.format != OutputFormat::Csv {
        return Err(Error::Config("gnuplot scripts need csv output".into()));
    }
    fs::create_dir_all(&config.out_dir)?;
    Ok(())
}

fn file_name(config: &ExperimentConfig, stem: &str) -> PathBuf {
    config
        .out_dir
        .join(format!("{stem}.{}", config.format.extension()))
}

fn write_orbit(
    config: &ExperimentConfig,
    stem: &str,
    header: &[String],
    orbit: &OrbitSeries,
) -> Result<PathBuf> {
    let path = file_name(config, stem);
    let rows: Vec<_> = orbit.rows().collect();
    write_table(&path, config.format, header, &rows)?;
    Ok(path)
}

fn write_report(config: &ExperimentConfig, report: &RunReport) -> Result<PathBuf> {
    let path = config
        .out_dir
        .join(format!("summary_{}.json", report.command));
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    fs::write(&path, text)?;
    Ok(path)
}

/// Quantum and classical `q` orbits of the seeded initial string on
/// `n_qubits`, `n = 0..=steps`.
pub fn run_orbits(config: &ExperimentConfig) -> Result<RunReport> {
    config.validate()?;
    let started = Instant::now();
    prepare_out_dir(config)?;
    let n = config.n_qubits;
    let xi = config.initial_string(n)?;
    let mut header = config.header_lines();
    header.push(format!("initial_string = {xi}"));

    let quantum = quantum_orbit(&xi, config.steps).into_orbit();
    let classical = classical_q_orbit(&xi, config.steps as usize, &config.classical_orbit_mode());
    let mut files = vec![
        write_orbit(config, &format!("orbit_quantum_N{n}"), &header, &quantum)?,
        write_orbit(
            config,
            &format!("orbit_classical_{}_N{n}", config.classical_mode.as_str()),
            &header,
            &classical,
        )?,
    ];
    if config.gnuplot {
        files.push(write_orbit_gnuplot(config, &files)?);
    }
    let first_difference = quantum
        .values()
        .iter()
        .zip(classical.values())
        .position(|(a, b)| a != b);
    let mut report = RunReport {
        command: "orbits".into(),
        config: config.clone(),
        files,
        summary: Summary::Orbits(OrbitSummary {
            n_qubits: n,
            initial_string: xi.to_string(),
            rows: quantum.len(),
            first_difference,
        }),
        wall_time_s: None,
    };
    let summary_path = write_report(config, &report)?;
    report.files.push(summary_path);
    report.wall_time_s = Some(started.elapsed().as_secs_f64());
    Ok(report)
}

/// Chaos-degree series of both orbits for one qubit count.
pub struct ChaosComparison {
    pub n_qubits: usize,
    pub quantum: ChaosSeries,
    pub classical: ChaosSeries,
    pub final_window: DifferenceRow,
}

impl ChaosComparison {
    pub fn summary(&self) -> ChaosSummary {
        let n = self.n_qubits;
        let w = self.quantum.window;
        let pairs: Vec<(f64, f64)> = self
            .quantum
            .points
            .iter()
            .zip(&self.classical.points)
            .map(|(q, c)| (q.d, c.d))
            .collect();
        let windows_inside = (n + 1).saturating_sub(w).min(pairs.len());
        ChaosSummary {
            n_qubits: n,
            windows_inside,
            inside_windows_agree: pairs[..windows_inside].iter().all(|(q, c)| q == c),
            first_difference: pairs.iter().position(|(q, c)| q != c),
            max_abs_difference: pairs.iter().map(|(q, c)| (q - c).abs()).fold(0.0, f64::max),
            final_window: self.final_window.clone(),
        }
    }
}

/// `D_q(n)` and `D_c(n)` for one qubit count, plus the value on the final
/// window `[steps − W, steps]`.
pub fn compare_chaos(config: &ExperimentConfig, n: usize) -> Result<ChaosComparison> {
    let xi = config.initial_string(n)?;
    let quantum = quantum_orbit(&xi, config.steps).into_orbit();
    let classical = classical_q_orbit(&xi, config.steps as usize, &config.classical_orbit_mode());
    let partition = Partition::new(config.bins)?;
    let base = config.log_base;
    let start = config.steps as usize - config.window;
    let d_quantum = chaos_degree_at(&quantum, start, config.window, partition, base)?;
    let d_classical = chaos_degree_at(&classical, start, config.window, partition, base)?;
    Ok(ChaosComparison {
        n_qubits: n,
        quantum: chaos_degree_series(&quantum, config.window, partition, base)?,
        classical: chaos_degree_series(&classical, config.window, partition, base)?,
        final_window: DifferenceRow {
            n_qubits: n,
            n_star: config.steps,
            window_start: start,
            d_quantum,
            d_classical,
            abs_difference: (d_quantum - d_classical).abs(),
        },
    })
}

/// For every `N` in `n_sweep`: chaos-degree series of the quantum and
/// classical orbits, and a table of `|D_q − D_c|` at `n* = steps` against `N`.
pub fn run_chaos(config: &ExperimentConfig) -> Result<RunReport> {
    config.validate_chaos()?;
    let started = Instant::now();
    prepare_out_dir(config)?;
    let header = config.header_lines();
    let mut files = Vec::new();
    let mut summaries = Vec::new();
    let mut table = Vec::new();
    for &n in &config.n_sweep {
        let cmp = compare_chaos(config, n)?;
        let mut h = header.clone();
        h.push(format!("N = {n}"));
        h.push(format!("initial_string = {}", config.initial_string(n)?));
        let rows: Vec<_> = cmp.quantum.rows().chain(cmp.classical.rows()).collect();
        let path = file_name(config, &format!("chaos_N{n}"));
        write_table(&path, config.format, &h, &rows)?;
        files.push(path);
        summaries.push(cmp.summary());
        table.push(cmp.final_window);
    }
    let path = file_name(config, "chaos_difference_vs_N");
    write_table(&path, config.format, &header, &table)?;
    files.push(path);
    if config.gnuplot {
        files.push(write_chaos_gnuplot(config)?);
    }
    let mut report = RunReport {
        command: "chaos".into(),
        config: config.clone(),
        files,
        summary: Summary::Chaos(summaries),
        wall_time_s: None,
    };
    let summary_path = write_report(config, &report)?;
    report.files.push(summary_path);
    report.wall_time_s = Some(started.elapsed().as_secs_f64());
    Ok(report)
}

fn plain_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn write_orbit_gnuplot(config: &ExperimentConfig, data: &[PathBuf]) -> Result<PathBuf> {
    let path = config.out_dir.join("orbits.gp");
    let mut script = String::from(
        "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'n'\nset ylabel 'q'\n",
    );
    let plots: Vec<String> = data
        .iter()
        .map(|p| format!("'{}' using 1:3 with points pt 7 ps 0.3", plain_name(p)))
        .collect();
    script.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
    fs::write(&path, script)?;
    Ok(path)
}

fn write_chaos_gnuplot(config: &ExperimentConfig) -> Result<PathBuf> {
    let path = config.out_dir.join("chaos.gp");
    let unit = match config.log_base {
        LogBase::Two => "bits",
        LogBase::E => "nats",
    };
    let mut script =
        format!("set datafile separator ','\nset xlabel 'n'\nset ylabel 'D ({unit})'\n");
    let plots: Vec<String> = config
        .n_sweep
        .iter()
        .flat_map(|n| {
            let file = format!("chaos_N{n}.csv");
            [
                format!("'{file}' using 1:(strcol(6) eq 'quantum-closedform' ? $2 : 1/0) with lines title 'D_q N={n}'"),
                format!("'{file}' using 1:(strcol(6) eq 'quantum-closedform' ? 1/0 : $2) with lines dt 2 title 'D_c N={n}'"),
            ]
        })
        .collect();
    script.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
    fs::write(&path, script)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::config::ClassicalModeKind;

    fn config(dir: &Path) -> ExperimentConfig {
        ExperimentConfig {
            n_qubits: 12,
            steps: 60,
            window: 8,
            bins: 10,
            n_sweep: vec![6, 80],
            out_dir: dir.to_path_buf(),
            ..Default::default()
        }
    }

    #[test]
    fn orbit_files_and_summary() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = config(dir.path());
        let report = run_orbits(&cfg).unwrap();
        let Summary::Orbits(s) = &report.summary else {
            panic!()
        };
        assert_eq!(s.rows, 61);
        assert_eq!(s.first_difference, Some(13));
        let text = fs::read_to_string(dir.path().join("orbit_quantum_N12.csv")).unwrap();
        assert!(text.starts_with("# n_qubits = 12\n"));
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 62);
    }

    #[test]
    fn single_step_orbit() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = ExperimentConfig {
            steps: 0,
            ..config(dir.path())
        };
        run_orbits(&cfg).unwrap();
        let text =
            fs::read_to_string(dir.path().join("orbit_classical_truncated_N12.csv")).unwrap();
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 2);
    }

    #[test]
    fn chaos_run_writes_series_and_table() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = ExperimentConfig {
            gnuplot: true,
            ..config(dir.path())
        };
        let report = run_chaos(&cfg).unwrap();
        let Summary::Chaos(s) = &report.summary else {
            panic!()
        };
        assert!(s[0].inside_windows_agree);
        assert!(s[1].inside_windows_agree);
        // N = 80 exceeds the observation time: every window agrees.
        assert_eq!(s[1].first_difference, None);
        assert_eq!(s[1].final_window.abs_difference, 0.0);
        assert!(dir.path().join("chaos.gp").exists());
        let table = fs::read_to_string(dir.path().join("chaos_difference_vs_N.csv")).unwrap();
        assert!(table.contains("n_qubits,n_star,window_start,d_quantum,d_classical,abs_difference"));
    }

    #[test]
    fn json_output() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = ExperimentConfig {
            format: OutputFormat::Json,
            classical_mode: ClassicalModeKind::Extended,
            ..config(dir.path())
        };
        run_orbits(&cfg).unwrap();
        let text =
            fs::read_to_string(dir.path().join("orbit_classical_extended_N12.json")).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 61);
        assert_eq!(v["rows"][0]["provenance"], "classical-extended");
    }

    #[test]
    fn gnuplot_requires_csv() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = ExperimentConfig {
            format: OutputFormat::Json,
            gnuplot: true,
            ..config(dir.path())
        };
        assert!(matches!(run_orbits(&cfg), Err(Error::Config(_))));
    }
}
