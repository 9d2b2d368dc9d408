use std::f64::consts::PI;
use std::io::Write;

use ndarray::{linalg::kron, Array1, Array2};
use num_complex::Complex64;

use super::{check_qubits, MAX_DENSE_QUBITS};
use crate::error::{Error, Result};

/// A `D × D` complex matrix on `N` qubits, qubit 1 being the most significant
/// bit of the row/column index.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    qubits: usize,
    matrix: Array2<Complex64>,
}

impl DenseOperator {
    pub fn from_matrix(qubits: usize, matrix: Array2<Complex64>) -> Self {
        let dim = 1usize << qubits;
        assert_eq!(matrix.dim(), (dim, dim), "matrix shape does not match 2^N");
        Self { qubits, matrix }
    }

    pub fn identity(qubits: usize) -> Self {
        Self::from_matrix(qubits, Array2::eye(1 << qubits))
    }

    pub fn from_diagonal(qubits: usize, diagonal: &Array1<Complex64>) -> Self {
        Self::from_matrix(qubits, Array2::from_diag(diagonal))
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[[row, col]]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_matrix(self.qubits, self.matrix.t().mapv(|z| z.conj()))
    }

    pub fn dot(&self, other: &DenseOperator) -> Self {
        Self::from_matrix(self.qubits, self.matrix.dot(&other.matrix))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_matrix(self.qubits, self.matrix.mapv(|z| z * c))
    }

    /// `selfⁿ` by repeated squaring.
    pub fn power(&self, mut n: u64) -> Self {
        let mut result = Self::identity(self.qubits);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.dot(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.dot(&base);
            }
        }
        result
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖U*U − I‖_max`.
    pub fn unitarity_residual(&self) -> f64 {
        self.adjoint()
            .dot(self)
            .max_abs_diff(&Self::identity(self.qubits))
    }

    /// `‖A − A*‖_max`.
    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Largest modulus of an off-diagonal entry.
    pub fn off_diagonal_max(&self) -> f64 {
        self.matrix
            .indexed_iter()
            .filter(|((r, c), _)| r != c)
            .map(|(_, z)| z.norm())
            .fold(0.0, f64::max)
    }

    /// Writes `row,col,re,im`, one line per entry.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(["row", "col", "re", "im"])?;
        for ((r, c), z) in self.matrix.indexed_iter() {
            writer.write_record([
                r.to_string(),
                c.to_string(),
                z.re.to_string(),
                z.im.to_string(),
            ])?;
        }
        writer.flush()?;
        Ok(())
    }

    /// Permutes rows: row `i` of the result is row `perm[i]` of `self`.
    fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut out = Array2::zeros(self.matrix.dim());
        for (i, &src) in perm.iter().enumerate() {
            out.row_mut(i).assign(&self.matrix.row(src));
        }
        Self::from_matrix(self.qubits, out)
    }
}

/// Phase grid of a discrete Fourier transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FourierConvention {
    /// `F_{ξj} = e^{2πiξj/D}/√D`.
    Standard,
    /// `F_{ξj} = e^{−2πi(ξ+½)(j+½)/D}/√D`, the antiperiodic transform that
    /// diagonalizes the half-shifted grid `q_j = (j+½)/D`.
    HalfShifted,
}

fn fourier_matrix(qubits: usize, convention: FourierConvention) -> Array2<Complex64> {
    let dim = 1usize << qubits;
    let d = dim as f64;
    let norm = d.sqrt().recip();
    Array2::from_shape_fn((dim, dim), |(x, y)| {
        let angle = match convention {
            FourierConvention::Standard => 2.0 * PI * ((x * y) % dim) as f64 / d,
            FourierConvention::HalfShifted => {
                // (x+½)(y+½) = (4xy + 2x + 2y + 1)/4, reduced mod 4D before scaling.
                let num = (4 * x * y + 2 * x + 2 * y + 1) % (4 * dim);
                -2.0 * PI * num as f64 / (4.0 * d)
            }
        };
        Complex64::from_polar(norm, angle)
    })
}

pub fn qft(qubits: usize) -> Result<DenseOperator> {
    qft_with(qubits, FourierConvention::Standard)
}

pub fn qft_with(qubits: usize, convention: FourierConvention) -> Result<DenseOperator> {
    check_qubits("qft", qubits, MAX_DENSE_QUBITS)?;
    Ok(DenseOperator::from_matrix(
        qubits,
        fourier_matrix(qubits, convention),
    ))
}

/// `G_m = I_{2^m} ⊗ F_{N−m}`: identity on qubits `1..m`, Fourier on the rest.
/// `G_0` is the full transform and `G_N` the identity.
pub fn partial_fourier(m: usize, qubits: usize) -> Result<DenseOperator> {
    partial_fourier_with(m, qubits, FourierConvention::Standard)
}

pub fn partial_fourier_with(
    m: usize,
    qubits: usize,
    convention: FourierConvention,
) -> Result<DenseOperator> {
    check_qubits("partial Fourier transform", qubits, MAX_DENSE_QUBITS)?;
    if m > qubits {
        return Err(Error::PartialFourierRange { m, n: qubits });
    }
    if m == qubits {
        return Ok(DenseOperator::identity(qubits));
    }
    let left: Array2<Complex64> = Array2::eye(1 << m);
    let matrix = kron(&left, &fourier_matrix(qubits - m, convention));
    Ok(DenseOperator::from_matrix(qubits, matrix))
}

/// Index of `|ξ₂…ξ_N ξ₁⟩` given the index of `|ξ₁…ξ_N⟩`.
fn rotate_left(index: usize, qubits: usize) -> usize {
    let top = index >> (qubits - 1);
    ((index << 1) & ((1 << qubits) - 1)) | top
}

/// The quantized baker's map `T` on `N` qubits.
///
/// Built as `T = −i (G_{N−1} Π G_N⁻¹)*` with the half-shifted partial Fourier
/// transforms, `G_N = I` and `Π|ξ₁…ξ_N⟩ = |ξ₂…ξ_N ξ₁⟩`. The result has
/// `⟨ξ|T|η⟩ = (1−i)/2 · A_{ξ₁η_N} · Π_{k≥2} δ(ξ_k − η_{k−1})`, with
/// `A = [[1, i], [i, 1]]`.
pub fn baker_unitary(qubits: usize) -> Result<DenseOperator> {
    check_qubits("baker unitary", qubits, MAX_DENSE_QUBITS)?;
    let g = partial_fourier_with(qubits - 1, qubits, FourierConvention::HalfShifted)?;
    // (G Π)* = Π* G*, and row i of Π* G* is row rotate_left(i) of G*.
    let perm: Vec<usize> = (0..1 << qubits).map(|i| rotate_left(i, qubits)).collect();
    Ok(g.adjoint()
        .permute_rows(&perm)
        .scale(Complex64::new(0.0, -1.0)))
}

/// `q_j = (j + ½)/2^N` for `j = 0..2^N`.
pub fn position_values(qubits: usize) -> Vec<f64> {
    let d = (1u64 << qubits) as f64;
    (0..1u64 << qubits).map(|j| (j as f64 + 0.5) / d).collect()
}

/// `q̂ = Σ_j q_j |j⟩⟨j|`.
pub fn position_operator(qubits: usize) -> Result<DenseOperator> {
    check_qubits("position operator", qubits, MAX_DENSE_QUBITS)?;
    let diag = Array1::from_iter(position_values(qubits).into_iter().map(Complex64::from));
    Ok(DenseOperator::from_diagonal(qubits, &diag))
}

/// `p̂ = F* q̂ F` with the standard transform `F`.
pub fn momentum_operator(qubits: usize) -> Result<DenseOperator> {
    let f = qft(qubits)?;
    Ok(f.adjoint().dot(&position_operator(qubits)?).dot(&f))
}

/// `Û^u V̂^v = e^{2πiu q̂} e^{2πiv p̂}`, each factor through its eigenbasis.
pub fn weyl_power(qubits: usize, u: f64, v: f64) -> Result<DenseOperator> {
    check_qubits("Weyl operators", qubits, MAX_DENSE_QUBITS)?;
    let phases = |t: f64| {
        Array1::from_iter(
            position_values(qubits)
                .into_iter()
                .map(|q| Complex64::from_polar(1.0, 2.0 * PI * q * t)),
        )
    };
    let u_op = DenseOperator::from_diagonal(qubits, &phases(u));
    if v == 0.0 {
        return Ok(u_op);
    }
    let f = qft(qubits)?;
    let v_op = f
        .adjoint()
        .dot(&DenseOperator::from_diagonal(qubits, &phases(v)))
        .dot(&f);
    if u == 0.0 {
        return Ok(v_op);
    }
    Ok(u_op.dot(&v_op))
}

/// `(Û, V̂) = (e^{2πiq̂}, e^{2πip̂})`, satisfying `ÛV̂ = εV̂Û`, `ε = e^{2πi/D}`.
pub fn weyl_pair(qubits: usize) -> Result<(DenseOperator, DenseOperator)> {
    Ok((weyl_power(qubits, 1.0, 0.0)?, weyl_power(qubits, 0.0, 1.0)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::{a_power_abs_sq, baker_element, t_power_element};
    use crate::numeric::BitString;
    use crate::oracle::{CROSS_MODULE_TOL, STRUCTURAL_TOL};
    use num_traits::ToPrimitive;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn one_qubit_qft_is_hadamard() {
        let f = qft(1).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = ndarray::arr2(&[[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]]);
        assert!(f.max_abs_diff(&DenseOperator::from_matrix(1, expected)) < STRUCTURAL_TOL);
    }

    #[test]
    fn qft_of_zero_state_is_uniform() {
        let f = qft(5).unwrap();
        let amp = (32f64).sqrt().recip();
        assert!(f
            .matrix()
            .column(0)
            .iter()
            .all(|z| (z - c(amp, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn fourier_transforms_are_unitary() {
        for n in 1..=8 {
            assert!(qft(n).unwrap().unitarity_residual() < STRUCTURAL_TOL);
            let f = qft_with(n, FourierConvention::HalfShifted).unwrap();
            assert!(f.unitarity_residual() < STRUCTURAL_TOL);
        }
        for n in 1..=6 {
            for m in 0..=n {
                assert!(partial_fourier(m, n).unwrap().unitarity_residual() < STRUCTURAL_TOL);
            }
        }
    }

    #[test]
    fn partial_fourier_edges() {
        assert_eq!(partial_fourier(0, 4).unwrap(), qft(4).unwrap());
        assert_eq!(partial_fourier(4, 4).unwrap(), DenseOperator::identity(4));
        assert!(matches!(
            partial_fourier(5, 4),
            Err(Error::PartialFourierRange { m: 5, n: 4 })
        ));
        assert!(qft(0).is_err());
        assert!(qft(13).is_err());
    }

    #[test]
    fn baker_two_qubit_entries() {
        let t = baker_unitary(2).unwrap();
        assert!((t.entry(0, 0) - c(0.5, -0.5)).norm() < STRUCTURAL_TOL);
        assert!(t.entry(0b01, 0b00).norm() < STRUCTURAL_TOL);
    }

    #[test]
    fn baker_is_unitary_and_matches_element_formula() {
        for n in 1..=8 {
            let t = baker_unitary(n).unwrap();
            assert!(t.unitarity_residual() < STRUCTURAL_TOL, "N={n}");
            for r in 0..t.dim() {
                let xi = BitString::from_index(r, n).unwrap();
                for col in 0..t.dim() {
                    let eta = BitString::from_index(col, n).unwrap();
                    let z = baker_element(&xi, &eta).unwrap();
                    assert!(
                        (t.entry(r, col) - z).norm() < STRUCTURAL_TOL,
                        "N={n} {xi} {eta}"
                    );
                }
            }
        }
    }

    #[test]
    fn powers_match_element_formula() {
        for n in 1..=6usize {
            let t = baker_unitary(n).unwrap();
            let mut tp = DenseOperator::identity(n);
            for step in 0..=3 * n as u64 {
                for r in 0..tp.dim() {
                    let xi = BitString::from_index(r, n).unwrap();
                    for col in 0..tp.dim() {
                        let zeta = BitString::from_index(col, n).unwrap();
                        let z = t_power_element(&xi, &zeta, step).unwrap();
                        assert!(
                            (tp.entry(r, col) - z).norm() < CROSS_MODULE_TOL,
                            "N={n} n={step} {xi} {zeta}"
                        );
                    }
                }
                tp = tp.dot(&t);
            }
        }
        let t = baker_unitary(3).unwrap();
        assert!(t.power(5).max_abs_diff(&t.dot(&t).dot(&t).dot(&t).dot(&t)) < 1e-12);
    }

    #[test]
    fn a_powers_by_dense_multiplication() {
        let a = ndarray::arr2(&[[c(1.0, 0.0), c(0.0, 1.0)], [c(0.0, 1.0), c(1.0, 0.0)]]);
        let mut acc: Array2<Complex64> = Array2::eye(2);
        for n in 0..=40u64 {
            let diag = acc[[0, 0]].norm_sqr().round() as u64;
            let off = acc[[0, 1]].norm_sqr().round() as u64;
            assert_eq!(diag, a_power_abs_sq(n, true).to_u64().unwrap(), "n={n}");
            assert_eq!(off, a_power_abs_sq(n, false).to_u64().unwrap(), "n={n}");
            acc = acc.dot(&a);
        }
    }

    #[test]
    fn position_operator_examples() {
        let q = position_operator(1).unwrap();
        assert_eq!(q.entry(0, 0), c(0.25, 0.0));
        assert_eq!(q.entry(1, 1), c(0.75, 0.0));
        let q = position_operator(6).unwrap();
        let trace: f64 = q.matrix().diag().iter().map(|z| z.re).sum();
        assert_eq!(trace, 32.0);
        assert!(position_values(6).iter().all(|&v| v > 0.0 && v < 1.0));
    }

    #[test]
    fn momentum_is_hermitian_with_position_spectrum() {
        let p1 = momentum_operator(1).unwrap();
        let expected = ndarray::arr2(&[[c(0.5, 0.0), c(-0.25, 0.0)], [c(-0.25, 0.0), c(0.5, 0.0)]]);
        assert!(p1.max_abs_diff(&DenseOperator::from_matrix(1, expected)) < STRUCTURAL_TOL);
        for n in 1..=6 {
            let p = momentum_operator(n).unwrap();
            assert!(p.hermiticity_residual() < STRUCTURAL_TOL);
            let f = qft(n).unwrap();
            let back = f.dot(&p).dot(&f.adjoint());
            assert!(back.off_diagonal_max() < STRUCTURAL_TOL);
            for (z, q) in back.matrix().diag().iter().zip(position_values(n)) {
                assert!((z - c(q, 0.0)).norm() < STRUCTURAL_TOL);
            }
        }
    }

    #[test]
    fn weyl_commutation() {
        for n in 1..=6 {
            let (u, v) = weyl_pair(n).unwrap();
            assert!(u.unitarity_residual() < STRUCTURAL_TOL);
            assert!(v.unitarity_residual() < STRUCTURAL_TOL);
            let eps = Complex64::from_polar(1.0, 2.0 * PI / (1u64 << n) as f64);
            let lhs = u.dot(&v);
            let rhs = v.dot(&u).scale(eps);
            assert!(lhs.max_abs_diff(&rhs) < STRUCTURAL_TOL, "N={n}");
            for (j, z) in u.matrix().diag().iter().enumerate() {
                let q = (j as f64 + 0.5) / (1u64 << n) as f64;
                assert!((z - Complex64::from_polar(1.0, 2.0 * PI * q)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn v_shifts_basis_up_by_one() {
        let n = 3;
        let (_, v) = weyl_pair(n).unwrap();
        let phase = Complex64::from_polar(1.0, PI / 8.0);
        for j in 0..8 {
            assert!((v.entry((j + 1) % 8, j) - phase).norm() < STRUCTURAL_TOL);
        }
    }

    #[test]
    fn csv_dump_has_one_row_per_entry() {
        let mut buf = Vec::new();
        qft(2).unwrap().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next(), Some("row,col,re,im"));
        assert_eq!(text.lines().count(), 17);
    }
}
