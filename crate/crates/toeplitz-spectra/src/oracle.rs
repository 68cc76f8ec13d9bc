//! Exact, non-asymptotic ground truth: dense Toeplitz construction, Hermitian
//! eigensolves, log-polar complex determinants, the exact Φ̂_n(0) ratio, and
//! the closed-form tridiagonal spectrum that anchors everything else.

use crate::error::{Result, SpectraError};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::BTreeMap;

pub const MAX_EIGEN_N: usize = 8192;
pub const MAX_DET_N: usize = 2048;

/// T_n(f) = (f_{j−k})_{j,k=0}^{n−1}, stored as the coefficient window
/// f_k, k ∈ [−(n−1), n−1]. Entry (j,k) reads f_{j−k}.
#[derive(Clone, Debug)]
pub struct ToeplitzMatrix {
    n: usize,
    /// coeffs[k + n − 1] = f_k
    coeffs: Vec<Complex64>,
}

impl ToeplitzMatrix {
    /// Build from a coefficient function covering |k| ≤ n−1.
    pub fn from_fn(n: usize, mut f: impl FnMut(i64) -> Complex64) -> Result<Self> {
        if n == 0 {
            return Err(SpectraError::Validation("matrix size must be >= 1".into()));
        }
        let m = n as i64 - 1;
        let coeffs: Vec<Complex64> = (-m..=m).map(&mut f).collect();
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(SpectraError::Domain("non-finite Toeplitz coefficient".into()));
        }
        Ok(ToeplitzMatrix { n, coeffs })
    }

    /// Build from an explicit coefficient map; any missing k in [−(n−1), n−1]
    /// is a precondition error.
    pub fn from_map(n: usize, map: &BTreeMap<i64, Complex64>) -> Result<Self> {
        let m = n as i64 - 1;
        for k in -m..=m {
            if !map.contains_key(&k) {
                return Err(SpectraError::Validation(format!(
                    "coefficient f_{k} missing for matrix of size {n}"
                )));
            }
        }
        Self::from_fn(n, |k| map[&k])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        let idx = k + self.n as i64 - 1;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[idx as usize]
        }
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        self.coeff(j as i64 - k as i64)
    }

    /// Same symbol with f_0 replaced by f_0 − λ, i.e. T_n(f − λ) = T_n(f) − λI.
    pub fn shifted(&self, lam: f64) -> ToeplitzMatrix {
        let mut out = self.clone();
        out.coeffs[self.n - 1] -= lam;
        out
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let m = self.n as i64 - 1;
        (0..=m).all(|k| (self.coeff(k) - self.coeff(-k).conj()).norm() <= tol)
    }

    fn is_real_symmetric(&self, tol: f64) -> bool {
        let m = self.n as i64 - 1;
        (-m..=m).all(|k| self.coeff(k).im.abs() <= tol)
            && (0..=m).all(|k| (self.coeff(k).re - self.coeff(-k).re).abs() <= tol)
    }

    /// Dense complex matrix (column-major nalgebra storage).
    pub fn dense(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |j, k| self.entry(j, k))
    }
}

/// Sorted exact spectrum of one matrix size.
#[derive(Clone, Debug)]
pub struct ExactSpectrum {
    pub n: usize,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
}

impl ExactSpectrum {
    /// Strict containment in the open interval (lo, hi) — the spectrum of a
    /// non-constant real symbol never touches its essential bounds.
    pub fn inside_open_interval(&self, lo: f64, hi: f64) -> bool {
        self.eigenvalues.iter().all(|&e| e > lo && e < hi)
    }
}

/// Eigenvalues (ascending) of the symmetric matrix `a`, via tridiagonalization.
fn sym_eigs(a: DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = a.symmetric_eigenvalues().iter().cloned().collect();
    v.sort_by(|x, y| x.partial_cmp(y).unwrap());
    v
}

/// All eigenvalues of a Hermitian Toeplitz matrix, ascending.
///
/// Real symmetric input is split into its even and odd reflection classes
/// (two half-size solves — the classical persymmetry reduction), which is
/// what makes the n = 4096 runs cheap on one core. Genuinely complex
/// Hermitian input falls back to the 2n×2n real embedding
/// [[Re, −Im], [Im, Re]], whose spectrum is that of H doubled.
pub fn hermitian_eigenvalues(t: &ToeplitzMatrix) -> Result<ExactSpectrum> {
    let n = t.n();
    if n > MAX_EIGEN_N {
        return Err(SpectraError::Validation(format!(
            "eigensolver capped at n = {MAX_EIGEN_N}, got {n}"
        )));
    }
    let scale: f64 = (0..n as i64).map(|k| t.coeff(k).norm()).sum::<f64>().max(1e-300);
    if !t.is_hermitian(1e-12 * scale) {
        return Err(SpectraError::Domain("hermitian_eigenvalues: matrix is not Hermitian".into()));
    }
    let eigenvalues = if t.is_real_symmetric(1e-12 * scale) {
        let c: Vec<f64> = (0..n as i64).map(|k| t.coeff(k).re).collect();
        let mut ev = symmetric_toeplitz_eigenvalues_split(&c);
        ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
        ev
    } else {
        // 2n-dimensional real embedding; every eigenvalue shows up twice.
        let m = DMatrix::from_fn(2 * n, 2 * n, |r, c| {
            let (j, k) = (r % n, c % n);
            let h = t.entry(j, k);
            match (r >= n, c >= n) {
                (false, false) | (true, true) => h.re,
                (false, true) => -h.im,
                (true, false) => h.im,
            }
        });
        let all = sym_eigs(m);
        all.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
    };
    Ok(ExactSpectrum { n, eigenvalues })
}

/// Even/odd reflection splitting for a real symmetric Toeplitz matrix given
/// by its first column t_0..t_{n−1}: the spectrum is the union of the spectra
/// of S (symmetric class) and A (antisymmetric class), each about half size.
fn symmetric_toeplitz_eigenvalues_split(t: &[f64]) -> Vec<f64> {
    let n = t.len();
    if n == 1 {
        return vec![t[0]];
    }
    let h = n / 2;
    let ti = |k: usize| t[k];
    // Antisymmetric class: A_{ij} = t_{|i−j|} − t_{n−1−i−j}, size h.
    let a = DMatrix::from_fn(h, h, |i, j| ti(i.abs_diff(j)) - ti(n - 1 - i - j));
    let mut ev = sym_eigs(a);
    if n % 2 == 0 {
        // Symmetric class: S_{ij} = t_{|i−j|} + t_{n−1−i−j}, size h.
        let s = DMatrix::from_fn(h, h, |i, j| ti(i.abs_diff(j)) + ti(n - 1 - i - j));
        ev.extend(sym_eigs(s));
    } else {
        // Odd n: the symmetric class picks up the middle row/column, with a
        // √2 scaling that keeps the reduced matrix symmetric.
        let s = DMatrix::from_fn(h + 1, h + 1, |i, j| match (i == h, j == h) {
            (false, false) => ti(i.abs_diff(j)) + ti(n - 1 - i - j),
            (true, false) => std::f64::consts::SQRT_2 * ti(h - j),
            (false, true) => std::f64::consts::SQRT_2 * ti(h - i),
            (true, true) => ti(0),
        });
        ev.extend(sym_eigs(s));
    }
    ev
}

/// Closed-form spectrum of the symmetric tridiagonal Toeplitz matrix:
/// diag + 2·offdiag·cos(jπ/(n+1)), j = 1..n, sorted ascending.
pub fn tridiag_closed_form(n: usize, diag: f64, offdiag: f64) -> ExactSpectrum {
    let mut eigenvalues: Vec<f64> = (1..=n)
        .map(|j| diag + 2.0 * offdiag * (j as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos())
        .collect();
    eigenvalues.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ExactSpectrum { n, eigenvalues }
}

/// A complex determinant in log-polar form: det = exp(log_abs) · e^{i·phase}.
/// Exponential over/underflow in D_n never bites this representation.
#[derive(Clone, Copy, Debug)]
pub struct LogDet {
    pub log_abs: f64,
    /// Phase reduced to (−π, π]. Only defined mod 2π — asymptotic formulas
    /// with unbounded imaginary parts must be compared mod 2π against this.
    pub phase: f64,
}

impl LogDet {
    pub fn is_singular(&self) -> bool {
        self.log_abs == f64::NEG_INFINITY
    }

    /// The determinant as a complex number (may overflow for large log_abs).
    pub fn value(&self) -> Complex64 {
        Complex64::from_polar(self.log_abs.exp(), self.phase)
    }

    /// Sign of a real determinant given that the matrix was real.
    pub fn real_sign(&self) -> f64 {
        if self.phase.abs() > std::f64::consts::FRAC_PI_2 {
            -1.0
        } else {
            1.0
        }
    }
}

fn reduce_phase(p: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut r = p.rem_euclid(two_pi);
    if r > std::f64::consts::PI {
        r -= two_pi;
    }
    r
}

/// det T_n(f) by dense complex LU with partial pivoting, in log-polar form.
///
/// LU (not Levinson) on purpose: Levinson-style recursions need nonsingular
/// leading minors, and shifted symbols f − λ are probed exactly where minors
/// cross zero. An exactly vanishing pivot reports as log_abs = −∞.
pub fn toeplitz_determinant(t: &ToeplitzMatrix) -> Result<LogDet> {
    let n = t.n();
    if n > MAX_DET_N {
        return Err(SpectraError::Validation(format!(
            "determinant capped at n = {MAX_DET_N}, got {n}"
        )));
    }
    // Row-major working copy.
    let mut a: Vec<Complex64> = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            a.push(t.entry(j, k));
        }
    }
    let mut log_abs = 0.0f64;
    let mut phase = 0.0f64;
    for col in 0..n {
        // Partial pivot: largest magnitude in this column at or below the diagonal.
        let mut piv = col;
        let mut best = a[col * n + col].norm_sqr();
        for r in (col + 1)..n {
            let m = a[r * n + col].norm_sqr();
            if m > best {
                best = m;
                piv = r;
            }
        }
        if best == 0.0 {
            return Ok(LogDet { log_abs: f64::NEG_INFINITY, phase: 0.0 });
        }
        if piv != col {
            for k in col..n {
                a.swap(col * n + k, piv * n + k);
            }
            phase += std::f64::consts::PI; // row swap flips the sign
        }
        let d = a[col * n + col];
        log_abs += d.norm().ln();
        phase += d.arg();
        let dinv = 1.0 / d;
        for r in (col + 1)..n {
            let factor = a[r * n + col] * dinv;
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            for k in (col + 1)..n {
                let v = a[col * n + k];
                a[r * n + k] -= factor * v;
            }
        }
    }
    Ok(LogDet { log_abs, phase: reduce_phase(phase) })
}

/// Brute-force determinant by cofactor expansion — the independent cross-check
/// for the LU path. Factorial cost; callers keep n ≤ 6.
pub fn det_cofactor(t: &ToeplitzMatrix) -> Result<Complex64> {
    let n = t.n();
    if n > 6 {
        return Err(SpectraError::Validation("cofactor oracle capped at n = 6".into()));
    }
    let m: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|k| t.entry(j, k)).collect())
        .collect();
    fn rec(m: &[Vec<Complex64>], cols: &mut Vec<usize>, row: usize) -> Complex64 {
        if cols.is_empty() {
            return Complex64::new(1.0, 0.0);
        }
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..cols.len() {
            let c = cols.remove(i);
            let sub = rec(m, cols, row + 1);
            cols.insert(i, c);
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            s += sign * m[row][c] * sub;
        }
        s
    }
    let mut cols: Vec<usize> = (0..n).collect();
    Ok(rec(&m, &mut cols, 0))
}

/// Exact Φ̂_n(0) from the determinant identity D_n(F⁻) = z_{j0}^n Φ̂_n(0) D_n(F):
/// two dense determinants and a unit-modulus rotation. `theta_j0` is the angle
/// of z_{j0} (passed separately so z^n never loses precision to arg()).
pub fn phi_hat_zero_exact(
    f: &ToeplitzMatrix,
    f_minus: &ToeplitzMatrix,
    theta_j0: f64,
    n: usize,
) -> Result<Complex64> {
    if f.n() != n || f_minus.n() != n {
        return Err(SpectraError::Validation("phi_hat_zero_exact: size mismatch".into()));
    }
    let df = toeplitz_determinant(f)?;
    if df.is_singular() {
        return Err(SpectraError::Domain("phi_hat_zero_exact: D_n(F) = 0".into()));
    }
    let dm = toeplitz_determinant(f_minus)?;
    let mag = (dm.log_abs - df.log_abs).exp();
    let ang = dm.phase - df.phase - n as f64 * theta_j0;
    Ok(Complex64::from_polar(mag, reduce_phase(ang)))
}

/// Max gap between consecutive values after pooling several spectra — the
/// quantity that must shrink as ⋃_n σ(T_n(f)) fills out [min f, max f].
pub fn pooled_max_gap(spectra: &[&ExactSpectrum]) -> f64 {
    let mut all: Vec<f64> = spectra.iter().flat_map(|s| s.eigenvalues.iter().cloned()).collect();
    all.sort_by(|x, y| x.partial_cmp(y).unwrap());
    all.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
}
