//! Entropic chaos degree of a scalar orbit.
//!
//! An orbit is coarse-grained by a uniform partition of `[0, 1]` into `K` bins.
//! Over a window of `W` steps starting at `n`, the empirical marginal `p_i` and
//! the one-step joint `p_ij` define a channel `Λ* = (p_ij / p_i)`, and
//!
//! ```text
//! D = Σ_i p_i S(Λ* δ_i) = Σ_ij p_ij log(p_i / p_ij)
//! ```
//!
//! is the conditional entropy of the next bin given the current one. `D = 0`
//! exactly when the observed bin transition is deterministic.
//!
//! Window convention: the marginal counts `k ∈ [n, n+W−1]` and the joint counts
//! the pairs `(k, k+1)` for the same `k`. Row sums of the joint are then the
//! marginal exactly, column sums are the marginal of the window shifted by one,
//! and `Λ* p⁽ⁿ⁾ = p⁽ⁿ⁺¹⁾` holds without boundary terms.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::DyadicRational;
use crate::orbit::{OrbitSeries, Provenance};

/// `K` bins `[k/K, (k+1)/K)`, the last one closed at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    bins: usize,
}

impl Partition {
    pub fn new(bins: usize) -> Result<Self> {
        if bins == 0 {
            return Err(Error::EmptyPartition);
        }
        Ok(Self { bins })
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    pub fn bin_of(&self, x: &DyadicRational) -> Result<usize> {
        bin_index(x, self.bins)
    }

    /// Bin of every orbit value.
    pub fn assign(&self, orbit: &OrbitSeries) -> Result<Vec<usize>> {
        orbit.values().iter().map(|x| self.bin_of(x)).collect()
    }
}

/// `min(⌊Kx⌋, K−1)` computed on the exact value.
pub fn bin_index(x: &DyadicRational, bins: usize) -> Result<usize> {
    if bins == 0 {
        return Err(Error::EmptyPartition);
    }
    if !x.is_in_unit_interval() {
        return Err(Error::OutOfUnitInterval(x.to_string()));
    }
    let k = x
        .floor_scaled(&BigUint::from(bins))
        .to_usize()
        .expect("floor(Kx) ≤ K");
    Ok(k.min(bins - 1))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "e")]
    E,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LogBase::Two => "2",
            LogBase::E => "e",
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2" => Ok(LogBase::Two),
            "e" => Ok(LogBase::E),
            other => Err(Error::Config(format!(
                "log base must be 2 or e, got {other:?}"
            ))),
        }
    }
}

/// The window covers `[start, start+W−1]`, plus one more step for pairs.
fn check_window(start: usize, window: usize, pairs: bool, len: usize) -> Result<()> {
    if window == 0 {
        return Err(Error::EmptyWindow);
    }
    let last = start + window - usize::from(!pairs);
    if last >= len {
        return Err(Error::WindowExceedsOrbit {
            start,
            end: last,
            len,
        });
    }
    Ok(())
}

/// `p_i = #{k ∈ [n, n+W−1] : x_k ∈ B_i} / W`, stored as counts over `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinnedDistribution {
    start: usize,
    window: usize,
    counts: Vec<u64>,
}

impl BinnedDistribution {
    /// Counts over a precomputed bin sequence.
    pub fn from_bins(bins: &[usize], start: usize, window: usize, k: usize) -> Result<Self> {
        check_window(start, window, false, bins.len())?;
        let mut counts = vec![0u64; k];
        for &b in &bins[start..start + window] {
            counts[b] += 1;
        }
        Ok(Self {
            start,
            window,
            counts,
        })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `(count, W)`.
    pub fn probability(&self, i: usize) -> (u64, u64) {
        (self.counts[i], self.window as u64)
    }

    pub fn probabilities(&self) -> Vec<f64> {
        let w = self.window as f64;
        self.counts.iter().map(|&c| c as f64 / w).collect()
    }
}

pub fn empirical_marginal(
    orbit: &OrbitSeries,
    start: usize,
    window: usize,
    partition: Partition,
) -> Result<BinnedDistribution> {
    check_window(start, window, false, orbit.len())?;
    let bins = partition.assign(orbit)?;
    BinnedDistribution::from_bins(&bins, start, window, partition.bins())
}

/// `p_ij = #{k ∈ [n, n+W−1] : x_k ∈ B_i, x_{k+1} ∈ B_j} / W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointDistribution {
    start: usize,
    window: usize,
    bins: usize,
    counts: BTreeMap<(usize, usize), u64>,
}

impl JointDistribution {
    pub fn from_bins(bins: &[usize], start: usize, window: usize, k: usize) -> Result<Self> {
        check_window(start, window, true, bins.len())?;
        let mut counts = BTreeMap::new();
        for pair in bins[start..=start + window].windows(2) {
            *counts.entry((pair[0], pair[1])).or_insert(0) += 1;
        }
        Ok(Self {
            start,
            window,
            bins: k,
            counts,
        })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    /// Nonzero counts keyed by `(i, j)`.
    pub fn counts(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.counts
    }

    pub fn count(&self, i: usize, j: usize) -> u64 {
        self.counts.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `Σ_j` counts, indexed by `i`.
    pub fn row_counts(&self) -> Vec<u64> {
        let mut out = vec![0; self.bins];
        for (&(i, _), &c) in &self.counts {
            out[i] += c;
        }
        out
    }

    /// `Σ_i` counts, indexed by `j`.
    pub fn column_counts(&self) -> Vec<u64> {
        let mut out = vec![0; self.bins];
        for (&(_, j), &c) in &self.counts {
            out[j] += c;
        }
        out
    }
}

pub fn empirical_joint(
    orbit: &OrbitSeries,
    start: usize,
    window: usize,
    partition: Partition,
) -> Result<JointDistribution> {
    check_window(start, window, true, orbit.len())?;
    let bins = partition.assign(orbit)?;
    JointDistribution::from_bins(&bins, start, window, partition.bins())
}

fn check_pair(joint: &JointDistribution, marginal: &BinnedDistribution) -> Result<()> {
    if joint.start != marginal.start || joint.window != marginal.window {
        return Err(Error::InconsistentDistributions(format!(
            "joint window ({}, {}) vs marginal window ({}, {})",
            joint.start, joint.window, marginal.start, marginal.window
        )));
    }
    if joint.bins != marginal.bins() || joint.row_counts() != marginal.counts {
        return Err(Error::InconsistentDistributions(
            "row sums of the joint differ from the marginal".into(),
        ));
    }
    Ok(())
}

/// `Λ* = (p_ij / p_i)`: column `i` is the distribution of the next bin given
/// the current bin `i`. Columns with `p_i = 0` are absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelMatrix {
    bins: usize,
    start: usize,
    window: usize,
    columns: BTreeMap<usize, (u64, BTreeMap<usize, u64>)>,
}

impl ChannelMatrix {
    pub fn bins(&self) -> usize {
        self.bins
    }

    /// Bins `i` with `p_i > 0`.
    pub fn defined_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.columns.keys().copied()
    }

    /// `(c_ij, c_i)` so that the entry is `c_ij / c_i`; `None` if `p_i = 0`.
    pub fn entry_ratio(&self, j: usize, i: usize) -> Option<(u64, u64)> {
        let (total, col) = self.columns.get(&i)?;
        Some((col.get(&j).copied().unwrap_or(0), *total))
    }

    pub fn entry(&self, j: usize, i: usize) -> Option<f64> {
        self.entry_ratio(j, i).map(|(a, b)| a as f64 / b as f64)
    }

    /// `Λ* δ_i` as floats, or `None` if column `i` is undefined.
    pub fn column(&self, i: usize) -> Option<Vec<f64>> {
        let (total, col) = self.columns.get(&i)?;
        let mut out = vec![0.0; self.bins];
        for (&j, &c) in col {
            out[j] = c as f64 / *total as f64;
        }
        Some(out)
    }

    /// `Λ* p` for the marginal the channel was built from, exactly: the
    /// marginal of the window shifted by one step.
    pub fn push_forward(&self) -> BinnedDistribution {
        let mut counts = vec![0u64; self.bins];
        for (_, col) in self.columns.values() {
            for (&j, &c) in col {
                counts[j] += c;
            }
        }
        BinnedDistribution {
            start: self.start + 1,
            window: self.window,
            counts,
        }
    }

    /// `Λ* p` for an arbitrary probability vector supported on defined columns.
    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.bins];
        for (&i, (total, col)) in &self.columns {
            for (&j, &c) in col {
                out[j] += p[i] * c as f64 / *total as f64;
            }
        }
        out
    }
}

pub fn channel(joint: &JointDistribution, marginal: &BinnedDistribution) -> Result<ChannelMatrix> {
    check_pair(joint, marginal)?;
    let mut columns: BTreeMap<usize, (u64, BTreeMap<usize, u64>)> = BTreeMap::new();
    for (&(i, j), &c) in &joint.counts {
        let entry = columns
            .entry(i)
            .or_insert_with(|| (marginal.counts[i], BTreeMap::new()));
        entry.1.insert(j, c);
    }
    Ok(ChannelMatrix {
        bins: joint.bins,
        start: joint.start,
        window: joint.window,
        columns,
    })
}

/// `D = Σ_{p_ij > 0} p_ij log(p_i / p_ij)`.
pub fn chaos_degree(
    joint: &JointDistribution,
    marginal: &BinnedDistribution,
    base: LogBase,
) -> Result<f64> {
    check_pair(joint, marginal)?;
    let w = joint.window as f64;
    let d = joint
        .counts
        .iter()
        .map(|(&(i, _), &c)| c as f64 / w * base.log(marginal.counts[i] as f64 / c as f64))
        .sum();
    Ok(d)
}

/// `S(p) = −Σ p_k log p_k`.
pub fn entropy(p: &[f64], base: LogBase) -> f64 {
    p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * base.log(x))
        .sum()
}

/// `D = Σ_i p_i S(Λ* δ_i)`, evaluated through the channel.
pub fn chaos_degree_from_channel(
    channel: &ChannelMatrix,
    marginal: &BinnedDistribution,
    base: LogBase,
) -> f64 {
    let p = marginal.probabilities();
    channel
        .defined_columns()
        .map(|i| p[i] * entropy(&channel.column(i).expect("defined column"), base))
        .sum()
}

/// `D` on the window `[start, start+W]` of an orbit.
pub fn chaos_degree_at(
    orbit: &OrbitSeries,
    start: usize,
    window: usize,
    partition: Partition,
    base: LogBase,
) -> Result<f64> {
    check_window(start, window, true, orbit.len())?;
    let bins = partition.assign(orbit)?;
    degree_on_bins(&bins, start, window, partition.bins(), base)
}

fn degree_on_bins(
    bins: &[usize],
    start: usize,
    window: usize,
    k: usize,
    base: LogBase,
) -> Result<f64> {
    let marginal = BinnedDistribution::from_bins(bins, start, window, k)?;
    let joint = JointDistribution::from_bins(bins, start, window, k)?;
    chaos_degree(&joint, &marginal, base)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChaosPoint {
    pub n: usize,
    pub d: f64,
}

/// Sliding-window chaos degree of one orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct ChaosSeries {
    pub window: usize,
    pub bins: usize,
    pub base: LogBase,
    pub provenance: Provenance,
    pub points: Vec<ChaosPoint>,
}

/// One row of the schema `n,D,W,K,base,orbit_provenance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChaosRow {
    pub n: usize,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "W")]
    pub window: usize,
    #[serde(rename = "K")]
    pub bins: usize,
    pub base: LogBase,
    pub orbit_provenance: Provenance,
}

impl ChaosSeries {
    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.d).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = ChaosRow> + '_ {
        self.points.iter().map(|p| ChaosRow {
            n: p.n,
            d: p.d,
            window: self.window,
            bins: self.bins,
            base: self.base,
            orbit_provenance: self.provenance,
        })
    }

    /// `n,D,W,K,base,orbit_provenance`, after `# `-prefixed header lines.
    pub fn write_csv<W: Write>(&self, mut out: W, header: &[String]) -> Result<()> {
        for line in header {
            writeln!(out, "# {line}")?;
        }
        let mut writer = csv::Writer::from_writer(out);
        for row in self.rows() {
            writer.serialize(row)?;
        }
        writer.flush()?;
        Ok(())
    }
}

/// `D` at every start `n ∈ [0, len−W−1]`.
pub fn chaos_degree_series(
    orbit: &OrbitSeries,
    window: usize,
    partition: Partition,
    base: LogBase,
) -> Result<ChaosSeries> {
    check_window(0, window, true, orbit.len())?;
    let bins = partition.assign(orbit)?;
    let points = (0..orbit.len() - window)
        .map(|n| {
            Ok(ChaosPoint {
                n,
                d: degree_on_bins(&bins, n, window, partition.bins(), base)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ChaosSeries {
        window,
        bins: partition.bins(),
        base,
        provenance: orbit.provenance(),
        points,
    })
}

/// `D` for each partition of a finite family and the maximizing one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionSweep {
    pub per_partition: Vec<(usize, f64)>,
    pub best_bins: usize,
    pub best_degree: f64,
}

pub fn sup_over_partitions(
    orbit: &OrbitSeries,
    start: usize,
    window: usize,
    bin_counts: &[usize],
    base: LogBase,
) -> Result<PartitionSweep> {
    if bin_counts.is_empty() {
        return Err(Error::EmptyPartitionList);
    }
    let per_partition = bin_counts
        .iter()
        .map(|&k| {
            Ok((
                k,
                chaos_degree_at(orbit, start, window, Partition::new(k)?, base)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let (best_bins, best_degree) =
        per_partition
            .iter()
            .copied()
            .fold((0, f64::NEG_INFINITY), |best, cur| {
                if cur.1 > best.1 {
                    cur
                } else {
                    best
                }
            });
    Ok(PartitionSweep {
        per_partition,
        best_bins,
        best_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{classical_q_orbit, ClassicalOrbitMode};
    use crate::closedform::quantum_orbit;
    use crate::numeric::{random_bitstring, BitString, RandomBitSource};
    use proptest::prelude::*;

    fn d(n: u64, e: u64) -> DyadicRational {
        DyadicRational::from_u64(n, e)
    }

    fn series(values: Vec<DyadicRational>) -> OrbitSeries {
        OrbitSeries::new(Provenance::Oracle, values)
    }

    fn k(n: usize) -> Partition {
        Partition::new(n).unwrap()
    }

    #[test]
    fn bin_index_examples() {
        assert_eq!(bin_index(&DyadicRational::zero(), 100).unwrap(), 0);
        assert_eq!(bin_index(&DyadicRational::one(), 100).unwrap(), 99);
        assert_eq!(bin_index(&DyadicRational::half(), 100).unwrap(), 50);
        assert!(bin_index(&d(3, 1), 100).is_err());
        assert!(bin_index(&DyadicRational::half(), 0).is_err());
    }

    #[test]
    fn marginal_examples() {
        let constant = series(vec![d(3, 3); 10]);
        let p = empirical_marginal(&constant, 2, 5, k(4)).unwrap();
        assert_eq!(p.counts(), &[0, 5, 0, 0]);
        assert_eq!(p.probability(1), (5, 5));

        // 5/16 ∈ B_3 and 11/16 ∈ B_6 for K = 10.
        let two = series(vec![d(5, 4), d(11, 4), d(0, 0)]);
        let p = empirical_marginal(&two, 0, 2, k(10)).unwrap();
        assert_eq!(p.probability(3), (1, 2));
        assert_eq!(p.probability(6), (1, 2));
        assert!(empirical_marginal(&two, 2, 2, k(10)).is_err());
        assert!(empirical_marginal(&two, 0, 0, k(10)).is_err());
    }

    #[test]
    fn joint_examples() {
        let constant = series(vec![d(1, 2); 6]);
        let j = empirical_joint(&constant, 0, 5, k(4)).unwrap();
        assert_eq!(j.counts().len(), 1);
        assert_eq!(j.count(1, 1), 5);
        assert!(empirical_joint(&constant, 1, 5, k(4)).is_err());
    }

    #[test]
    fn quantum_and_truncated_marginals_agree_below_n() {
        let xi = random_bitstring(500, &mut RandomBitSource::new(1)).unwrap();
        let q = quantum_orbit(&xi, 1000).into_orbit();
        let c = classical_q_orbit(&xi, 1000, &ClassicalOrbitMode::Truncated);
        let pq = empirical_marginal(&q, 0, 100, k(100)).unwrap();
        let pc = empirical_marginal(&c, 0, 100, k(100)).unwrap();
        assert_eq!(pq, pc);
    }

    #[test]
    fn doubling_pair_frequencies() {
        let xi: BitString = "0110100111".parse().unwrap();
        let mode = ClassicalOrbitMode::Extended(RandomBitSource::with_stream(8, 1));
        let orbit = classical_q_orbit(&xi, 40_001, &mode);
        let j = empirical_joint(&orbit, 0, 40_000, k(2)).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                let f = j.count(a, b) as f64 / 40_000.0;
                assert!((f - 0.25).abs() < 0.02, "({a},{b}) {f}");
            }
        }
        let m = empirical_marginal(&orbit, 0, 40_000, k(2)).unwrap();
        let deg = chaos_degree(&j, &m, LogBase::Two).unwrap();
        assert!((deg - 1.0).abs() < 0.01, "{deg}");
    }

    #[test]
    fn channel_examples() {
        // Deterministic map on bins 0 → 2 → 1 → 0.
        let bins = [0, 2, 1, 0, 2, 1, 0, 2, 1, 0];
        let m = BinnedDistribution::from_bins(&bins, 0, 9, 3).unwrap();
        let j = JointDistribution::from_bins(&bins, 0, 9, 3).unwrap();
        let ch = channel(&j, &m).unwrap();
        assert_eq!(ch.entry_ratio(2, 0), Some((3, 3)));
        assert_eq!(ch.entry(0, 1), Some(1.0));
        assert_eq!(chaos_degree(&j, &m, LogBase::Two).unwrap(), 0.0);

        // Every ordered pair of 2 bins once: 0 0 1 1 0 uses 00, 01, 11, 10.
        let bins = [0, 0, 1, 1, 0];
        let m = BinnedDistribution::from_bins(&bins, 0, 4, 2).unwrap();
        let j = JointDistribution::from_bins(&bins, 0, 4, 2).unwrap();
        let ch = channel(&j, &m).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(ch.entry(b, a), Some(0.5));
            }
        }
        assert!((chaos_degree(&j, &m, LogBase::Two).unwrap() - 1.0).abs() < 1e-15);
        assert!((chaos_degree(&j, &m, LogBase::E).unwrap() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn undefined_columns_are_absent() {
        let bins = [1, 1, 1, 3];
        let m = BinnedDistribution::from_bins(&bins, 0, 3, 4).unwrap();
        let j = JointDistribution::from_bins(&bins, 0, 3, 4).unwrap();
        let ch = channel(&j, &m).unwrap();
        assert_eq!(ch.defined_columns().collect::<Vec<_>>(), vec![1]);
        assert_eq!(ch.entry(0, 0), None);
        assert_eq!(ch.entry_ratio(3, 1), Some((1, 3)));
    }

    #[test]
    fn mismatched_pair_rejected() {
        let bins = [0, 1, 0, 1, 1, 0];
        let m = BinnedDistribution::from_bins(&bins, 1, 4, 2).unwrap();
        let j = JointDistribution::from_bins(&bins, 0, 4, 2).unwrap();
        assert!(matches!(
            channel(&j, &m),
            Err(Error::InconsistentDistributions(_))
        ));
        assert!(chaos_degree(&j, &m, LogBase::Two).is_err());
    }

    #[test]
    fn series_examples() {
        let constant = series(vec![d(1, 3); 30]);
        let s = chaos_degree_series(&constant, 10, k(10), LogBase::Two).unwrap();
        assert_eq!(s.points.len(), 20);
        assert!(s.values().iter().all(|&x| x == 0.0));
        assert!(chaos_degree_series(&constant, 30, k(10), LogBase::Two).is_err());
    }

    #[test]
    fn quantum_and_truncated_series_agree_below_n() {
        let xi = random_bitstring(100, &mut RandomBitSource::new(3)).unwrap();
        let q = quantum_orbit(&xi, 100).into_orbit();
        let c = classical_q_orbit(&xi, 100, &ClassicalOrbitMode::Truncated);
        let sq = chaos_degree_series(&q, 30, k(100), LogBase::Two).unwrap();
        let sc = chaos_degree_series(&c, 30, k(100), LogBase::Two).unwrap();
        // Windows [n, n+W] with n+W < N see identical values.
        for n in 0..100 - 30 {
            assert_eq!(sq.points[n], sc.points[n]);
        }
    }

    #[test]
    fn sweep_examples() {
        let xi: BitString = "1011001110".parse().unwrap();
        let mode = ClassicalOrbitMode::Extended(RandomBitSource::with_stream(4, 1));
        let orbit = classical_q_orbit(&xi, 20_001, &mode);
        let single = sup_over_partitions(&orbit, 0, 20_000, &[8], LogBase::Two).unwrap();
        assert_eq!(single.best_bins, 8);
        let direct = chaos_degree_at(&orbit, 0, 20_000, k(8), LogBase::Two).unwrap();
        assert_eq!(single.best_degree, direct);
        let sweep = sup_over_partitions(&orbit, 0, 20_000, &[2, 4, 8, 16], LogBase::Two).unwrap();
        assert_eq!(sweep.per_partition.len(), 4);
        let max = sweep
            .per_partition
            .iter()
            .map(|p| p.1)
            .fold(f64::MIN, f64::max);
        assert_eq!(sweep.best_degree, max);
        assert!(sweep.per_partition.iter().all(|p| (p.1 - 1.0).abs() < 0.05));
        assert!(sup_over_partitions(&orbit, 0, 10, &[], LogBase::Two).is_err());
    }

    #[test]
    fn csv_schema() {
        let constant = series(vec![d(1, 3); 5]);
        let s = chaos_degree_series(&constant, 2, k(4), LogBase::Two).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf, &["seed: 1".into()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "# seed: 1");
        assert_eq!(lines[1], "n,D,W,K,base,orbit_provenance");
        assert_eq!(lines[2], "0,0.0,2,4,2,oracle");
        assert_eq!(lines.len(), 5);
    }

    fn bin_sequence() -> impl Strategy<Value = (usize, Vec<usize>)> {
        (1usize..12).prop_flat_map(|k| (Just(k), proptest::collection::vec(0..k, 2..200)))
    }

    proptest! {
        #[test]
        fn boundary_points_bin_exactly(kk in 1u64..1000, num in 0u64..1000) {
            prop_assume!(num <= kk);
            // Build k/K ± 2^-60 exactly as dyadics by bracketing the rational.
            let e = 60u64;
            let scale = BigUint::from(1u8) << e as usize;
            let floor_num = (&scale * num) / kk;
            let exact = &floor_num * kk == &scale * num;
            let below = DyadicRational::new(floor_num.clone(), e);
            let above = DyadicRational::new(floor_num + 1u32, e);
            let idx = num as usize;
            let kk_us = kk as usize;
            if exact {
                // k/K is dyadic: it belongs to bin k (or K−1 at the right edge).
                prop_assert_eq!(bin_index(&below, kk_us).unwrap(), idx.min(kk_us - 1));
            } else if num > 0 {
                prop_assert_eq!(bin_index(&below, kk_us).unwrap(), idx - 1);
            }
            if num < kk {
                prop_assert_eq!(bin_index(&above, kk_us).unwrap(), idx);
            }
        }

        #[test]
        fn joint_rows_reproduce_marginal_and_columns_shift((kk, bins) in bin_sequence(), start_frac in 0.0f64..1.0) {
            let len = bins.len();
            let window = 1 + ((len - 2) as f64 * (1.0 - start_frac)) as usize;
            let start = ((len - 1 - window) as f64 * start_frac) as usize;
            let m = BinnedDistribution::from_bins(&bins, start, window, kk).unwrap();
            let j = JointDistribution::from_bins(&bins, start, window, kk).unwrap();
            prop_assert_eq!(&j.row_counts(), m.counts());
            let next = BinnedDistribution::from_bins(&bins, start + 1, window, kk).unwrap();
            prop_assert_eq!(&j.column_counts(), next.counts());
            let ch = channel(&j, &m).unwrap();
            prop_assert_eq!(ch.push_forward(), next.clone());
            for i in ch.defined_columns() {
                let total: u64 = (0..kk).map(|t| ch.entry_ratio(t, i).unwrap().0).sum();
                prop_assert_eq!(total, ch.entry_ratio(0, i).unwrap().1);
            }
            let pushed = ch.apply(&m.probabilities());
            for (a, b) in pushed.iter().zip(next.probabilities()) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }

        #[test]
        fn entropy_form_equals_joint_form((kk, bins) in bin_sequence()) {
            let window = bins.len() - 1;
            let m = BinnedDistribution::from_bins(&bins, 0, window, kk).unwrap();
            let j = JointDistribution::from_bins(&bins, 0, window, kk).unwrap();
            let ch = channel(&j, &m).unwrap();
            for base in [LogBase::Two, LogBase::E] {
                let d1 = chaos_degree(&j, &m, base).unwrap();
                let d2 = chaos_degree_from_channel(&ch, &m, base);
                prop_assert!((d1 - d2).abs() < 1e-12);
                prop_assert!(d1 >= -1e-12);
                prop_assert!(d1 <= base.log(kk as f64) + 1e-12);
            }
        }

        #[test]
        fn degree_zero_iff_deterministic((kk, bins) in bin_sequence()) {
            let window = bins.len() - 1;
            let m = BinnedDistribution::from_bins(&bins, 0, window, kk).unwrap();
            let j = JointDistribution::from_bins(&bins, 0, window, kk).unwrap();
            let deterministic = j.counts().keys().map(|&(i, _)| i).collect::<std::collections::BTreeSet<_>>().len()
                == j.counts().len();
            let deg = chaos_degree(&j, &m, LogBase::Two).unwrap();
            prop_assert_eq!(deterministic, deg == 0.0);
        }
    }
}
