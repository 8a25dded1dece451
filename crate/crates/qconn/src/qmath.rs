//! Dense complex linear algebra for small quantum systems.
//!
//! Everything here targets the matrix sizes that appear in qubit channel
//! analysis (2×2 and 4×4 operators) and small network Laplacians (up to a few
//! dozen nodes), so the implementations favor numerical transparency over
//! asymptotic cleverness: storage is dense row-major, and the eigensolver is
//! a cyclic Jacobi iteration with complex rotations, which is simple,
//! unconditionally stable on Hermitian input, and accurate to near machine
//! precision at these dimensions.

use crate::error::{Error, Result};
use num_complex::Complex;

pub type Complex64 = Complex<f64>;

/// Entrywise tolerance used when checking Hermitian symmetry.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on `|trace - 1|` for density matrices.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues of a density matrix may undershoot zero by at most this much.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;
/// Off-diagonal Frobenius norm at which the Jacobi iteration stops.
const JACOBI_OFF_TOL: f64 = 1e-12;
/// Hard cap on Jacobi sweeps; convergence is quadratic so this is generous.
const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix from explicit rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::validation("matrix needs at least one row"));
        }
        let cols = rows[0].len();
        if cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(Error::validation("matrix rows must be non-empty and equal length"));
        }
        Ok(ComplexMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        })
    }

    /// Builds an `n × n` real diagonal matrix.
    pub fn diagonal(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, Complex64::new(v, 0.0));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    /// Matrix product; errors when the inner dimensions disagree.
    pub fn mul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::validation(format!(
                "matrix product dimension mismatch: {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::validation("matrix sum dimension mismatch"));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += *b;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= factor;
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise deviation from Hermitian symmetry.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0_f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                let d = (self.get(r, c) - self.get(c, r).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// Largest entrywise absolute difference between two matrices.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `(M + M†)/2`; matrix products of Hermitian factors pick up round-off
    /// asymmetry on the order of machine epsilon, and this removes it.
    pub fn hermitized(&self) -> ComplexMatrix {
        let adj = self.adjoint();
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(adj.data.iter()) {
            *a = (*a + *b) * 0.5;
        }
        out
    }
}

/// Kronecker (tensor) product: `(a ⊗ b)[i·p+k, j·q+l] = a[i,j]·b[k,l]`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac) = (a.rows(), a.cols());
    let (br, bc) = (b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a.get(i, j);
            if aij.norm_sqr() == 0.0 {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out.set(i * br + k, j * bc + l, aij * b.get(k, l));
                }
            }
        }
    }
    out
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and a unitary matrix whose columns
/// are the matching eigenvectors, so `M = V · diag(λ) · V†`. The iteration
/// sweeps all off-diagonal pivots until the off-diagonal Frobenius norm drops
/// below `1e-12`, which for the matrix sizes used here happens within a
/// handful of sweeps.
///
/// Errors: `Validation` when the input is not square or not Hermitian (within
/// `1e-10`), `Numerical` when the sweep cap is exceeded.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !m.is_square() {
        return Err(Error::validation("eigendecomposition requires a square matrix"));
    }
    if !m.is_hermitian(1e-10) {
        return Err(Error::validation(format!(
            "eigendecomposition requires a Hermitian matrix (defect {:.3e})",
            m.hermitian_defect()
        )));
    }
    let n = m.rows();
    let mut a = m.hermitized();
    let mut v = ComplexMatrix::identity(n);

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    s += a.get(r, c).norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&a) < JACOBI_OFF_TOL;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let b = a.get(p, q);
                let babs = b.norm();
                if babs < 1e-300 {
                    continue;
                }
                let phase = b / babs; // e^{iφ} with b = |b|·e^{iφ}
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (aqq - app) / (2.0 * babs);
                // Smaller-magnitude root of t² − 2τt − 1 = 0, for stability.
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (tau * tau + 1.0).sqrt())
                } else {
                    1.0 / (-tau + (tau * tau + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // Column-p mixing coefficient: s·e^{-iφ}.
                let s_pc = phase.conj() * s;

                let new_pp = app * c * c + 2.0 * babs * c * s + aqq * s * s;
                let new_qq = app * s * s - 2.0 * babs * c * s + aqq * c * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    let np = akp * c + akq * s_pc;
                    let nq = akp * (-s_pc.conj()) + akq * c;
                    a.set(k, p, np);
                    a.set(p, k, np.conj());
                    a.set(k, q, nq);
                    a.set(q, k, nq.conj());
                }
                a.set(p, p, Complex64::new(new_pp, 0.0));
                a.set(q, q, Complex64::new(new_qq, 0.0));
                a.set(p, q, Complex64::new(0.0, 0.0));
                a.set(q, p, Complex64::new(0.0, 0.0));

                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * c + vkq * s_pc);
                    v.set(k, q, vkp * (-s_pc.conj()) + vkq * c);
                }
            }
        }
        converged = off_norm(&a) < JACOBI_OFF_TOL;
    }
    if !converged {
        return Err(Error::numerical(
            format!("Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps"),
            None,
        ));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.partial_cmp(&a.get(j, j).re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, new_col, v.get(r, old_col));
        }
    }
    Ok((eigenvalues, vectors))
}

/// Shannon entropy in bits of a spectrum, with the small-negative clamp used
/// for density-matrix eigenvalues: values in `[floor, 0)` count as zero,
/// anything below `floor` is rejected.
fn entropy_from_spectrum(eigs: &[f64], floor: f64) -> Result<f64> {
    let mut s = 0.0;
    for &lambda in eigs {
        if lambda < floor {
            return Err(Error::validation(format!(
                "spectrum has eigenvalue {lambda} below the tolerance floor {floor}"
            )));
        }
        if lambda > 0.0 {
            s -= lambda * lambda.log2();
        }
    }
    Ok(s.max(0.0))
}

/// Quantum state as a density matrix: Hermitian, unit trace, positive
/// semidefinite (all enforced at construction within tight tolerances).
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates and wraps a candidate density matrix.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::validation("density matrix must be square"));
        }
        if !mat.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::validation(format!(
                "density matrix must be Hermitian (defect {:.3e})",
                mat.hermitian_defect()
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::validation(format!("density matrix trace must be 1, got {tr}")));
        }
        let (eigs, _) = hermitian_eigen(&mat)?;
        if let Some(&low) = eigs.first() {
            if low < EIGENVALUE_FLOOR {
                return Err(Error::validation(format!(
                    "density matrix must be positive semidefinite, lowest eigenvalue {low:.3e}"
                )));
            }
        }
        Ok(DensityMatrix { mat })
    }

    /// Crate-internal constructor for operator outputs that are valid by
    /// construction (channel applications of valid states, normalized ket
    /// projectors). Skips the eigensolve that `new` performs; debug builds
    /// still check the cheap invariants.
    pub(crate) fn new_unchecked(mat: ComplexMatrix) -> Self {
        debug_assert!(mat.is_square());
        debug_assert!(mat.is_hermitian(1e-9), "defect {:.3e}", mat.hermitian_defect());
        debug_assert!((mat.trace().re - 1.0).abs() < 1e-9);
        DensityMatrix { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// Pure state `|ψ⟩⟨ψ|` from amplitudes; the ket is normalized first.
    pub fn from_ket(amplitudes: &[Complex64]) -> Result<Self> {
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr <= 0.0 {
            return Err(Error::validation("ket must be non-zero"));
        }
        let norm = norm_sqr.sqrt();
        let n = amplitudes.len();
        let mut mat = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                mat.set(i, j, amplitudes[i] / norm * (amplitudes[j] / norm).conj());
            }
        }
        DensityMatrix::new(mat)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let mat = ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0));
        DensityMatrix { mat }
    }

    /// Diagonal (classical) state from a probability vector.
    pub fn from_diagonal(probs: &[f64]) -> Result<Self> {
        DensityMatrix::new(ComplexMatrix::diagonal(probs))
    }

    /// Qubit state from Bloch-sphere coordinates: radius `r ∈ [0,1]`, polar
    /// angle `theta ∈ [0,π]`, azimuth `phi`.
    pub fn from_bloch(r: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::validation(format!("Bloch radius must be in [0,1], got {r}")));
        }
        let x = r * theta.sin() * phi.cos();
        let y = r * theta.sin() * phi.sin();
        let z = r * theta.cos();
        let mut mat = ComplexMatrix::zeros(2, 2);
        mat.set(0, 0, Complex64::new((1.0 + z) / 2.0, 0.0));
        mat.set(1, 1, Complex64::new((1.0 - z) / 2.0, 0.0));
        mat.set(0, 1, Complex64::new(x / 2.0, -y / 2.0));
        mat.set(1, 0, Complex64::new(x / 2.0, y / 2.0));
        DensityMatrix::new(mat)
    }

    /// Eigenvalues of the state, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eigen(&self.mat)?.0)
    }
}

/// Von Neumann entropy in bits: `S(ρ) = −Σ λ·log2 λ` over the spectrum of ρ,
/// with `0·log 0 = 0`. Always non-negative.
pub fn vn_entropy(rho: &DensityMatrix) -> Result<f64> {
    let eigs = rho.eigenvalues()?;
    entropy_from_spectrum(&eigs, EIGENVALUE_FLOOR)
}

/// Entropy of an operator that is Hermitian but may sit slightly outside the
/// density-matrix validity envelope (as happens for finite-difference probes
/// inside optimizers). Negative eigenvalues down to `-tol` are clamped to 0.
pub(crate) fn entropy_lenient(mat: &ComplexMatrix, tol: f64) -> Result<f64> {
    let (eigs, _) = hermitian_eigen(&mat.hermitized())?;
    entropy_from_spectrum(&eigs, -tol)
}

/// Which half of a two-qubit system `partial_trace` keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Reduced state of one qubit of a two-qubit system (dimension 4 → 2).
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::validation(format!(
            "partial trace expects a two-qubit (4-dimensional) state, got dim {}",
            rho.dim()
        )));
    }
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                s += match keep {
                    Subsystem::First => m.get(2 * i + k, 2 * j + k),
                    Subsystem::Second => m.get(2 * k + i, 2 * k + j),
                };
            }
            out.set(i, j, s);
        }
    }
    DensityMatrix::new(out.hermitized())
}

/// Canonical purification of a qubit state: with spectral decomposition
/// `ρ = Σ λ_k |v_k⟩⟨v_k|`, returns the pure two-qubit state
/// `|Φ⟩ = Σ √λ_k |v_k⟩ ⊗ |v_k⟩` (system first, reference second), whose
/// partial trace over either side reproduces a state with ρ's spectrum — and
/// over the reference side reproduces ρ itself.
pub fn purify(rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != 2 {
        return Err(Error::validation(format!(
            "purification expects a qubit state, got dim {}",
            rho.dim()
        )));
    }
    let (eigs, vecs) = hermitian_eigen(rho.matrix())?;
    let clamped: Vec<f64> = eigs.iter().map(|&l| l.max(0.0)).collect();
    let total: f64 = clamped.iter().sum();
    let mut phi = vec![Complex64::new(0.0, 0.0); 4];
    for (k, &lambda) in clamped.iter().enumerate() {
        if lambda == 0.0 {
            continue;
        }
        let amp = (lambda / total).sqrt();
        for i in 0..2 {
            for j in 0..2 {
                phi[2 * i + j] += vecs.get(i, k) * vecs.get(j, k) * amp;
            }
        }
    }
    let norm = phi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let mut mat = ComplexMatrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            mat.set(i, j, phi[i] / norm * (phi[j] / norm).conj());
        }
    }
    Ok(DensityMatrix::new_unchecked(mat))
}
