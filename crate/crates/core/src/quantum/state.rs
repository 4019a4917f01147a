use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::{Error, Result, INVARIANT_TOL};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Relative eigenvalue magnitude treated as exact zero by spectral functions.
const SPECTRAL_NOISE: f64 = 64.0 * f64::EPSILON;

/// Square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    /// Builds a `dim`×`dim` matrix from row-major entries.
    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::BadShape {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Self(DMatrix::from_row_slice(dim, dim, entries)))
    }

    pub fn from_real_rows(dim: usize, entries: &[f64]) -> Result<Self> {
        let entries: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_rows(dim, &entries)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d = DVector::from_iterator(diag.len(), diag.iter().map(|&x| Complex64::new(x, 0.0)));
        Self(DMatrix::from_diagonal(&d))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn inner(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(self.0.map(|z| z * factor))
    }

    /// Largest entrywise modulus of `A − A†`.
    pub fn hermitian_deviation(&self) -> f64 {
        let diff = &self.0 - self.0.adjoint();
        diff.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `(A + A†)/2`, used to scrub rounding asymmetry before an eigensolve.
    pub fn hermitian_part(&self) -> Self {
        Self((&self.0 + self.0.adjoint()).map(|z| z * 0.5))
    }

    /// Eigenvalues (ascending) and matching column eigenvectors of the
    /// Hermitian part of the matrix.
    pub fn hermitian_eigen(&self) -> (Vec<f64>, ComplexMatrix) {
        let eig = SymmetricEigen::new(self.hermitian_part().0);
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let dim = self.dim();
        let vectors = DMatrix::from_fn(dim, dim, |r, c| eig.eigenvectors[(r, order[c])]);
        (values, Self(vectors))
    }

    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        self.hermitian_eigen().0
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self.0.clone().singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }

    /// Square root of a positive semidefinite Hermitian matrix.
    ///
    /// Eigenvalues in `[-INVARIANT_TOL, 0)` are floored to zero; anything more
    /// negative is rejected. Eigenvalues within solver noise of zero are
    /// zeroed too, since `√` would magnify 1e-17 into 3e-9.
    pub fn psd_sqrt(&self) -> Result<Self> {
        self.map_psd_spectrum(f64::sqrt)
    }

    /// Applies `f` to the spectrum of a PSD Hermitian matrix.
    pub(crate) fn map_psd_spectrum(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let (values, vectors) = self.hermitian_eigen();
        if let Some(&min) = values.first() {
            if min < -INVARIANT_TOL {
                return Err(Error::NotPositive(min));
            }
        }
        let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let noise = SPECTRAL_NOISE * scale;
        let mapped = DVector::from_iterator(
            values.len(),
            values
                .iter()
                .map(|&v| Complex64::new(f(if v <= noise { 0.0 } else { v }), 0.0)),
        );
        let v = &vectors.0;
        Ok(Self(v * DMatrix::from_diagonal(&mapped) * v.adjoint()))
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dev = matrix.hermitian_deviation();
        if dev > INVARIANT_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > INVARIANT_TOL || tr.im.abs() > INVARIANT_TOL {
            return Err(Error::InvalidTrace(tr.re));
        }
        let min = matrix
            .hermitian_eigenvalues()
            .first()
            .copied()
            .unwrap_or(0.0);
        if min < -INVARIANT_TOL {
            return Err(Error::NotPositive(min));
        }
        Ok(Self(matrix.hermitian_part()))
    }

    /// Diagonal (classical) state with the given probabilities.
    pub fn diagonal(probabilities: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diagonal(probabilities))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim).scale(1.0 / dim as f64))
    }

    /// Qubit state `(I + xX + yY + zZ)/2` for a Bloch vector of length ≤ 1.
    pub fn from_bloch(x: f64, y: f64, z: f64) -> Result<Self> {
        let half = 0.5;
        let entries = [
            Complex64::new(half * (1.0 + z), 0.0),
            Complex64::new(half * x, -half * y),
            Complex64::new(half * x, half * y),
            Complex64::new(half * (1.0 - z), 0.0),
        ];
        Self::new(ComplexMatrix::from_rows(2, &entries)?)
    }

    pub fn from_pure(state: &PureState) -> Self {
        let v = DVector::from_column_slice(state.amplitudes());
        Self(ComplexMatrix(&v * v.adjoint()))
    }

    /// Convex combination `Σ wᵢ ρᵢ`.
    pub fn mixture(weights: &[f64], states: &[&DensityMatrix]) -> Result<Self> {
        let first = states
            .first()
            .ok_or_else(|| Error::InvalidEnsemble("empty mixture".into()))?;
        let mut acc = ComplexMatrix::zeros(first.dim());
        for (&w, s) in weights.iter().zip(states) {
            if s.dim() != first.dim() {
                return Err(Error::DimensionMismatch(first.dim(), s.dim()));
            }
            acc = &acc + &s.0.scale(w);
        }
        Self::new(acc)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.0.hermitian_eigenvalues()
    }

    pub fn purity(&self) -> f64 {
        (&self.0 * &self.0).trace().re
    }

    /// Re-validates the result of a trace-preserving map, absorbing rounding.
    pub(crate) fn from_map_output(matrix: ComplexMatrix) -> Result<Self> {
        Self::new(matrix.hermitian_part())
    }
}

/// Normalised state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState(Vec<Complex64>);

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if amplitudes.is_empty() || (norm - 1.0).abs() > INVARIANT_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self(amplitudes))
    }

    pub fn zero() -> Self {
        Self(vec![ONE, ZERO])
    }

    pub fn one() -> Self {
        Self(vec![ZERO, ONE])
    }

    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self(vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0)])
    }

    /// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
    pub fn from_bloch_angles(theta: f64, phi: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Self(vec![Complex64::new(c, 0.0), Complex64::from_polar(s, phi)])
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `⟨ψ|A|ψ⟩`.
    pub fn expectation(&self, op: &ComplexMatrix) -> Result<Complex64> {
        if op.dim() != self.dim() {
            return Err(Error::DimensionMismatch(op.dim(), self.dim()));
        }
        let v = DVector::from_column_slice(&self.0);
        Ok((v.adjoint() * op.inner() * &v)[(0, 0)])
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }
}

/// Normalised real-amplitude qubit `α|0⟩ + β|1⟩`.
pub fn make_state(alpha: f64, beta: f64) -> Result<PureState> {
    let norm = alpha.hypot(beta);
    if !norm.is_finite() || norm == 0.0 {
        return Err(Error::InvalidParameter {
            name: "alpha/beta",
            value: norm,
        });
    }
    Ok(PureState(vec![
        Complex64::new(alpha / norm, 0.0),
        Complex64::new(beta / norm, 0.0),
    ]))
}

/// Unitary operator.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryOp(ComplexMatrix);

impl UnitaryOp {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dim = matrix.dim();
        let prod = matrix.inner() * matrix.inner().adjoint();
        let dev = (prod - DMatrix::<Complex64>::identity(dim, dim))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if dev > INVARIANT_TOL {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self(matrix))
    }

    pub fn identity(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim))
    }

    pub fn pauli_x() -> Self {
        Self(ComplexMatrix(DMatrix::from_row_slice(
            2,
            2,
            &[ZERO, ONE, ONE, ZERO],
        )))
    }

    pub fn pauli_y() -> Self {
        Self(ComplexMatrix(DMatrix::from_row_slice(
            2,
            2,
            &[ZERO, -I, I, ZERO],
        )))
    }

    /// Pauli phase operator `Z = diag(1, −1)`.
    pub fn pauli_z() -> Self {
        Self(ComplexMatrix::from_real_diagonal(&[1.0, -1.0]))
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self(ComplexMatrix(DMatrix::from_row_slice(2, 2, &[h, h, h, -h])))
    }

    /// `e^{iγ} Rz(a) Ry(b) Rz(c)`; covers every single-qubit unitary.
    pub fn qubit_euler(global_phase: f64, a: f64, b: f64, c: f64) -> Self {
        let rz = |t: f64| {
            DMatrix::from_row_slice(
                2,
                2,
                &[
                    Complex64::from_polar(1.0, -t / 2.0),
                    ZERO,
                    ZERO,
                    Complex64::from_polar(1.0, t / 2.0),
                ],
            )
        };
        let (s, co) = (b / 2.0).sin_cos();
        let ry = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(co, 0.0),
                Complex64::new(-s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(co, 0.0),
            ],
        );
        let m = (rz(a) * ry * rz(c)).map(|z| z * Complex64::from_polar(1.0, global_phase));
        Self(ComplexMatrix(m))
    }

    /// Tensor product `self ⊗ other`.
    pub fn kron(&self, other: &UnitaryOp) -> Self {
        Self(ComplexMatrix(self.0.inner().kronecker(other.0.inner())))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    /// `U ρ U†`.
    pub fn conjugate(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.0.dim() {
            return Err(Error::DimensionMismatch(self.0.dim(), rho.dim()));
        }
        let out = &(&self.0 * rho.matrix()) * &self.0.adjoint();
        DensityMatrix::from_map_output(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_matrix_rejects_bad_trace_and_negative_spectrum() {
        assert!(matches!(
            DensityMatrix::diagonal(&[0.7, 0.2]),
            Err(Error::InvalidTrace(_))
        ));
        assert!(matches!(
            DensityMatrix::diagonal(&[1.2, -0.2]),
            Err(Error::NotPositive(_))
        ));
        let non_herm = ComplexMatrix::from_rows(
            2,
            &[
                Complex64::new(0.5, 0.0),
                Complex64::new(0.1, 0.0),
                Complex64::new(0.2, 0.0),
                Complex64::new(0.5, 0.0),
            ],
        )
        .unwrap();
        assert!(matches!(
            DensityMatrix::new(non_herm),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn bad_shape_is_rejected() {
        assert!(ComplexMatrix::from_real_rows(2, &[1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn make_state_normalises() {
        let s = make_state(0.4, 0.4).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amplitudes()[0].re - h).abs() < 1e-12);
        assert!((s.amplitudes()[1].re - h).abs() < 1e-12);

        let s = make_state(1.0, 0.0).unwrap();
        assert_eq!(s, PureState::zero());

        let s = make_state(0.4, 0.5).unwrap();
        assert!((s.amplitudes()[0].re - 0.4 / 0.41f64.sqrt()).abs() < 1e-12);
        assert!((s.amplitudes()[0].re - 0.6247).abs() < 1e-4);
        assert!((s.amplitudes()[1].re - 0.7809).abs() < 1e-4);

        assert!(make_state(0.0, 0.0).is_err());
    }

    #[test]
    fn unitary_check() {
        for u in [
            UnitaryOp::pauli_x(),
            UnitaryOp::pauli_y(),
            UnitaryOp::pauli_z(),
            UnitaryOp::hadamard(),
        ] {
            assert!(UnitaryOp::new(u.matrix().clone()).is_ok());
        }
        assert!(
            UnitaryOp::new(ComplexMatrix::from_real_rows(2, &[1.0, 1.0, 0.0, 1.0]).unwrap())
                .is_err()
        );
        let u = UnitaryOp::qubit_euler(0.3, 1.1, -0.7, 2.5);
        assert!(UnitaryOp::new(u.matrix().clone()).is_ok());
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let rho = DensityMatrix::from_bloch(0.3, -0.2, 0.5).unwrap();
        let r = rho.matrix().psd_sqrt().unwrap();
        let back = &r * &r;
        let diff = &back - rho.matrix();
        assert!(diff.inner().iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn psd_sqrt_rejects_negative_spectrum() {
        let m = ComplexMatrix::from_real_diagonal(&[1.0, -1e-6]);
        assert!(matches!(m.psd_sqrt(), Err(Error::NotPositive(_))));
        let m = ComplexMatrix::from_real_diagonal(&[1.0, -1e-12]);
        assert!(m.psd_sqrt().is_ok());
    }

    #[test]
    fn pure_density_is_rank_one() {
        let rho = PureState::plus().to_density();
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        let ev = rho.eigenvalues();
        assert!(ev[0].abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }
}
