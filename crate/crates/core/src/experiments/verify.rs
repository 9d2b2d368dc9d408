use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::classical::{classical_q_orbit, ClassicalOrbitMode};
use crate::closedform::{a_power_abs_sq, baker_element, mean_position, t_power_element};
use crate::error::{Error, Result};
use crate::numeric::{random_bitstring, BitString, DyadicRational, RandomBitSource};
use crate::oracle::{
    baker_unitary, oracle_orbit_with, qft, weyl_pair, DenseOperator, CROSS_MODULE_TOL,
    MAX_ORACLE_QUBITS, MAX_ORACLE_STEPS, STRUCTURAL_TOL,
};

/// Signature of the exact mean-position function under test.
pub type MeanPositionFn = fn(&BitString, u64) -> DyadicRational;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_n: usize,
    pub seed: u64,
    pub strings_per_n: usize,
    /// Qubit counts beyond the dense range on which the exact identities are
    /// also checked.
    pub large_n: Vec<usize>,
    pub mean_position: MeanPositionFn,
}

impl VerifyOptions {
    pub fn new(max_n: usize) -> Self {
        Self {
            max_n,
            seed: 0,
            strings_per_n: 20,
            large_n: vec![100, 300],
            mean_position,
        }
    }
}

/// Outcome of one suite: how many cases ran, the largest deviation seen, and
/// the first failing case.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub failure: Option<String>,
}

impl CheckOutcome {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            cases: 0,
            max_error: 0.0,
            tolerance,
            failure: None,
        }
    }

    fn record(&mut self, error: f64, describe: impl FnOnce() -> String) {
        self.cases += 1;
        self.max_error = self.max_error.max(error);
        if self.failure.is_none() && (error.is_nan() || error > self.tolerance) {
            self.failure = Some(describe());
        }
    }

    fn exact(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.record(if ok { 0.0 } else { 1.0 }, describe);
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub max_n: usize,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Fixed-width pass/fail table.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<44} {:>7} {:>11} {:>9}  result",
            "check", "cases", "max error", "tol"
        );
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<44} {:>7} {:>11.3e} {:>9.0e}  {}",
                c.name,
                c.cases,
                c.max_error,
                c.tolerance,
                if c.passed() { "PASS" } else { "FAIL" }
            );
            if let Some(f) = &c.failure {
                let _ = writeln!(out, "    counterexample: {f}");
            }
        }
        out
    }
}

fn labels(qubits: usize) -> impl Iterator<Item = (usize, BitString)> {
    (0..1usize << qubits).map(move |j| (j, BitString::from_index(j, qubits).expect("N ≥ 1")))
}

fn oracle_equivalence(opts: &VerifyOptions) -> Result<CheckOutcome> {
    let mut check = CheckOutcome::new("closed-form r_n vs dense oracle", CROSS_MODULE_TOL);
    let mut source = RandomBitSource::new(opts.seed);
    for qubits in 1..=opts.max_n {
        let t = baker_unitary(qubits)?;
        let n_max = (4 * qubits as u64 + 2).min(MAX_ORACLE_STEPS);
        for _ in 0..opts.strings_per_n {
            let xi = random_bitstring(qubits, &mut source)?;
            let oracle = oracle_orbit_with(&t, &xi, n_max)?;
            for (n, r) in oracle.iter().enumerate() {
                let exact = (opts.mean_position)(&xi, n as u64).to_f64();
                check.record((exact - r).abs(), || {
                    format!("N={qubits} xi={xi} n={n}: closed form {exact}, oracle {r}")
                });
            }
        }
    }
    Ok(check)
}

fn single_step_elements(opts: &VerifyOptions, t_ops: &[DenseOperator]) -> Result<CheckOutcome> {
    let mut check = CheckOutcome::new("T entries vs single-step formula", STRUCTURAL_TOL);
    for t in t_ops.iter().take(opts.max_n.min(8)) {
        let qubits = t.qubits();
        for (r, xi) in labels(qubits) {
            for (c, eta) in labels(qubits) {
                let z = baker_element(&xi, &eta)?;
                check.record((t.entry(r, c) - z).norm(), || {
                    format!("N={qubits} <{xi}|T|{eta}>")
                });
            }
        }
    }
    Ok(check)
}

fn power_elements(opts: &VerifyOptions, t_ops: &[DenseOperator]) -> Result<CheckOutcome> {
    let mut check = CheckOutcome::new("T^n entries vs power formula", CROSS_MODULE_TOL);
    for t in t_ops.iter().take(opts.max_n.min(6)) {
        let qubits = t.qubits();
        let mut power = DenseOperator::identity(qubits);
        for n in 0..=3 * qubits as u64 {
            for (r, xi) in labels(qubits) {
                for (c, zeta) in labels(qubits) {
                    let z = t_power_element(&xi, &zeta, n)?;
                    check.record((power.entry(r, c) - z).norm(), || {
                        format!("N={qubits} n={n} <{xi}|T^n|{zeta}>")
                    });
                }
            }
            power = power.dot(t);
        }
    }
    Ok(check)
}

fn a_power_table() -> CheckOutcome {
    let mut check = CheckOutcome::new("|(A^n)_kj|^2 table vs powered A (n<=40)", 0.0);
    let a = DenseOperator::from_matrix(
        1,
        ndarray::arr2(&[
            [
                num_complex::Complex64::new(1.0, 0.0),
                num_complex::Complex64::new(0.0, 1.0),
            ],
            [
                num_complex::Complex64::new(0.0, 1.0),
                num_complex::Complex64::new(1.0, 0.0),
            ],
        ]),
    );
    let mut power = DenseOperator::identity(1);
    for n in 0..=40u64 {
        for (same, (r, c)) in [(true, (0, 0)), (false, (0, 1))] {
            let numeric = power.entry(r, c).norm_sqr().round() as u64;
            let table = a_power_abs_sq(n, same).to_u64().expect("2^40 fits");
            check.exact(numeric == table, || {
                format!("n={n} same={same}: {numeric} vs {table}")
            });
        }
        power = power.dot(&a);
    }
    check
}

fn unitarity(opts: &VerifyOptions, t_ops: &[DenseOperator]) -> Result<CheckOutcome> {
    let mut check = CheckOutcome::new("unitarity of T and F_N", STRUCTURAL_TOL);
    for t in t_ops.iter().take(opts.max_n.min(8)) {
        let qubits = t.qubits();
        check.record(t.unitarity_residual(), || format!("T on N={qubits}"));
        let f = qft(qubits)?;
        check.record(f.unitarity_residual(), || format!("F_N on N={qubits}"));
    }
    Ok(check)
}

fn weyl(opts: &VerifyOptions) -> Result<CheckOutcome> {
    let mut check = CheckOutcome::new("Weyl relation UV = eps VU", STRUCTURAL_TOL);
    for qubits in 1..=opts.max_n.min(6) {
        let (u, v) = weyl_pair(qubits)?;
        let eps = num_complex::Complex64::from_polar(
            1.0,
            2.0 * std::f64::consts::PI / (1u64 << qubits) as f64,
        );
        let residual = u.dot(&v).max_abs_diff(&v.dot(&u).scale(eps));
        check.record(residual, || format!("N={qubits}"));
    }
    Ok(check)
}

fn qubit_counts(opts: &VerifyOptions) -> Vec<usize> {
    (1..=opts.max_n)
        .chain(opts.large_n.iter().copied())
        .collect()
}

fn exact_identities(opts: &VerifyOptions) -> Result<CheckOutcome> {
    let mut check = CheckOutcome::new("exact identities (r_0, r_mN, period 4N)", 0.0);
    let f = opts.mean_position;
    let half = DyadicRational::half();
    for qubits in qubit_counts(opts) {
        let xi = random_bitstring(qubits, &mut RandomBitSource::new(opts.seed))?;
        let big_n = qubits as u64;
        check.exact(f(&xi, 0) == xi.initial_value(), || {
            format!("N={qubits} xi={xi} n=0")
        });
        for m in [1u64, 3, 5] {
            check.exact(f(&xi, m * big_n) == half, || {
                format!("N={qubits} xi={xi} n={}", m * big_n)
            });
        }
        let step = (big_n / 16).max(1);
        for n in (0..=4 * big_n).step_by(step as usize) {
            let ok = f(&xi, n) == f(&xi, n + 4 * big_n);
            check.exact(ok, || format!("N={qubits} xi={xi} n={n} vs n+4N"));
        }
    }
    Ok(check)
}

fn classical_correspondence(opts: &VerifyOptions) -> Result<CheckOutcome> {
    let mut check = CheckOutcome::new("r_n = classical q_n for n <= N", 0.0);
    let f = opts.mean_position;
    for qubits in qubit_counts(opts) {
        let xi = random_bitstring(qubits, &mut RandomBitSource::new(opts.seed))?;
        let classical = classical_q_orbit(&xi, qubits, &ClassicalOrbitMode::Truncated);
        for (n, q) in classical.values().iter().enumerate() {
            check.exact(&f(&xi, n as u64) == q, || {
                format!("N={qubits} xi={xi} n={n}")
            });
        }
    }
    Ok(check)
}

/// Runs every oracle and identity suite up to `max_n` qubits.
pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.max_n == 0 || opts.max_n > MAX_ORACLE_QUBITS {
        return Err(Error::Config(format!(
            "max-n must be in 1..={MAX_ORACLE_QUBITS}, got {}",
            opts.max_n
        )));
    }
    let t_ops = (1..=opts.max_n.min(8))
        .map(baker_unitary)
        .collect::<Result<Vec<_>>>()?;
    let checks = vec![
        oracle_equivalence(opts)?,
        single_step_elements(opts, &t_ops)?,
        power_elements(opts, &t_ops)?,
        a_power_table(),
        unitarity(opts, &t_ops)?,
        weyl(opts)?,
        exact_identities(opts)?,
        classical_correspondence(opts)?,
    ];
    Ok(VerifyReport {
        max_n: opts.max_n,
        checks,
    })
}
