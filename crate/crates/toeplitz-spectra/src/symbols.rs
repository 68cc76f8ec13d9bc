//! Symbol families for the spectral problems solved by this crate, and the
//! shift `f ↦ f − λ` that turns an eigenvalue question into a determinant
//! question.
//!
//! Two families are supported:
//!
//! * [`SmoothUnimodalSymbol`] — `f = e^V` with `V` a real trigonometric
//!   polynomial, strictly increasing on `(0, θ̃)` and strictly decreasing on
//!   `(θ̃, 2π)`, so the range is the single band `[L, M]` traversed twice.
//! * [`TwoLevelSymbol`] — a step function taking the value `1` outside the
//!   arc `[θ1, θ2)` and `e^{2πγ}` on it, so the spectrum clusters at the two
//!   levels and a sparse set of eigenvalues fills the gap `(1, e^{2πγ})`.
//!
//! For `λ` strictly inside the band (resp. the gap), `f − λ` changes sign at
//! two circle points `z_1 = e^{iθ1}`, `z_2 = e^{iθ2}` and is described by an
//! [`FHDescriptor`]: a smooth logarithm `V(·; λ)` plus power/jump exponents
//! `(α_j, β_j)` at the sign-change points. That descriptor is the sole input
//! consumed by the determinant and eigenvalue asymptotics downstream.
//!
//! The jump exponents of a given symbol are not unique — shifting any `β_j`
//! by an integer (compensated by a winding factor) describes the same
//! function. The descriptors built here fix the normalization that the
//! determinant formulas in this crate consume: both jump β's equal `1/2` in
//! the smooth case, and `1/2 ± iγ^{(λ)}` in the two-level case. The variant
//! with `β_2 = −1/2` seen in textbook treatments of the smooth case is the
//! same symbol in a different normalization.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Result, SpectraError};
use crate::fourier::{wiener_hopf_eval, CircleGrid, FourierCoeffs};
use crate::oracle::ToeplitzMatrix;

/// Default truncation order K for the stored series of `V = ln f`.
pub const DEFAULT_TRUNCATION: usize = 64;

/// Truncation order of the smooth part of a shifted-symbol descriptor.
pub const SHIFT_TRUNCATION: usize = 512;

/// Certification/sampling grid for smooth symbols (power of two).
const CERT_GRID: usize = 8192;

/// Grid used for the Fourier analysis of `ln R` inside [`SmoothUnimodalSymbol::shift`].
const SHIFT_GRID: usize = 2048;

/// Angular radius around a root of `f − λ` inside which the direct formula
/// for `R` is replaced by its removable-singularity limit.
const ROOT_PATCH_RADIUS: f64 = 1e-5;

/// Residual target for the root solver: `|f(e^{iθ}) − λ| ≤` this.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-12;

/// Declared coefficient mass allowed beyond K/2 (truncation safety margin).
const TAIL_MASS_LIMIT: f64 = 1e-12;

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Reduce an angle difference to `(−π, π]`.
fn wrap_to_pi(x: f64) -> f64 {
    let y = x.rem_euclid(TAU);
    if y > std::f64::consts::PI {
        y - TAU
    } else {
        y
    }
}

/// Distance between two angles on the circle.
fn circle_dist(a: f64, b: f64) -> f64 {
    wrap_to_pi(a - b).abs()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

// ---------------------------------------------------------------------------
// FourierSymbol
// ---------------------------------------------------------------------------

/// Truncated Fourier data `f_k = (1/2π)∫ f(e^{iθ}) e^{−ikθ} dθ` of a symbol —
/// exactly the entries of the Toeplitz matrices built from it.
#[derive(Debug, Clone)]
pub struct FourierSymbol {
    coeffs: FourierCoeffs,
}

impl FourierSymbol {
    /// Coefficients of a smooth symbol, computed spectrally from its sample
    /// cache. `k_max` may not exceed a quarter of the sampling grid.
    pub fn from_smooth(sym: &SmoothUnimodalSymbol, k_max: usize) -> Result<Self> {
        let samples: Vec<Complex64> = sym
            .f_samples
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        let grid = CircleGrid::from_samples(samples)?;
        Ok(FourierSymbol { coeffs: grid.fourier_coeffs(k_max)? })
    }

    /// Coefficients of a two-level symbol from the closed form of the
    /// indicator integral (exact for every `k`).
    pub fn from_two_level(sym: &TwoLevelSymbol, k_max: usize) -> Self {
        FourierSymbol { coeffs: FourierCoeffs::from_closed_form(k_max, |k| sym.fourier_coeff(k)) }
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coeffs.get(k)
    }

    pub fn k_max(&self) -> usize {
        self.coeffs.k_max()
    }

    /// Whether the stored coefficients satisfy `f_{−k} = conj(f_k)`,
    /// i.e. whether the underlying function is real-valued.
    pub fn is_real_valued(&self, tol: f64) -> bool {
        (0..=self.k_max() as i64)
            .all(|k| (self.coeffs.get(-k) - self.coeffs.get(k).conj()).norm() <= tol)
    }

    /// The n×n Toeplitz matrix with entries `f_{j−k}`. Requires every band
    /// to be covered: `k_max ≥ n − 1`.
    pub fn toeplitz(&self, n: usize) -> Result<ToeplitzMatrix> {
        if n == 0 || n > self.k_max() + 1 {
            return Err(SpectraError::Validation(format!(
                "an {n}×{n} Toeplitz matrix needs coefficients up to |k| = {}, have {}",
                n.max(1) - 1,
                self.k_max()
            )));
        }
        ToeplitzMatrix::from_fn(n, |k| self.coeffs.get(k))
    }
}

// ---------------------------------------------------------------------------
// FHDescriptor
// ---------------------------------------------------------------------------

/// One singular point of a descriptor: `z = e^{iθ}` with a power exponent
/// `α` (|z−z_j|^{2α}-type factor) and a jump exponent `β`.
#[derive(Debug, Clone, Copy)]
pub struct Singularity {
    theta: f64,
    alpha: Complex64,
    beta: Complex64,
}

impl Singularity {
    pub fn new(theta: f64, alpha: Complex64, beta: Complex64) -> Self {
        Singularity { theta, alpha, beta }
    }

    /// A placeholder at angle θ carrying no actual singularity.
    pub fn trivial(theta: f64) -> Self {
        Singularity { theta, alpha: Complex64::ZERO, beta: Complex64::ZERO }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn z(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn is_trivial(&self) -> bool {
        self.alpha == Complex64::ZERO && self.beta == Complex64::ZERO
    }
}

/// A symbol in singularity-normal form: `f(z) = e^{V(z)} · Π_j (power and
/// jump factors at z_j)`, with the point `z_0 = 1` always carried explicitly
/// (as a trivial entry when `f` is smooth at 1).
#[derive(Debug, Clone)]
pub struct FHDescriptor {
    v: FourierCoeffs,
    singularities: Vec<Singularity>,
}

impl FHDescriptor {
    /// Validates ordering (`0 = θ_0 < θ_1 < … < 2π`), the exponent bound
    /// `Re α_j > −1/2`, and finiteness of all data.
    pub fn new(v: FourierCoeffs, singularities: Vec<Singularity>) -> Result<Self> {
        if singularities.is_empty() || singularities[0].theta != 0.0 {
            return Err(SpectraError::Validation(
                "descriptor must carry the point z = 1 (θ = 0) as its first entry".into(),
            ));
        }
        for pair in singularities.windows(2) {
            if !(pair[0].theta < pair[1].theta) {
                return Err(SpectraError::Validation(
                    "singular angles must be strictly increasing".into(),
                ));
            }
        }
        for s in &singularities {
            if !(0.0..TAU).contains(&s.theta) {
                return Err(SpectraError::Validation(format!(
                    "singular angle {} outside [0, 2π)",
                    s.theta
                )));
            }
            if !(s.alpha.re > -0.5) {
                return Err(SpectraError::Validation(format!(
                    "power exponent α = {} violates Re α > −1/2",
                    s.alpha
                )));
            }
            if !s.beta.re.is_finite() || !s.beta.im.is_finite() {
                return Err(SpectraError::Validation("non-finite jump exponent".into()));
            }
        }
        Ok(FHDescriptor { v, singularities })
    }

    pub fn v_coeffs(&self) -> &FourierCoeffs {
        &self.v
    }

    pub fn singularities(&self) -> &[Singularity] {
        &self.singularities
    }

    /// The two genuinely singular points, in increasing angle. Errors if the
    /// descriptor does not have exactly two (the only shape produced by the
    /// shifts in this crate).
    pub fn jump_pair(&self) -> Result<(Singularity, Singularity)> {
        let nontrivial: Vec<&Singularity> =
            self.singularities.iter().filter(|s| !s.is_trivial()).collect();
        if nontrivial.len() != 2 {
            return Err(SpectraError::Validation(format!(
                "expected exactly two singular points, found {}",
                nontrivial.len()
            )));
        }
        Ok((*nontrivial[0], *nontrivial[1]))
    }

    /// `e^{V(z)}` evaluated from the stored coefficients (analytic part of
    /// the descriptor, smooth across the singular points).
    pub fn smooth_factor(&self, z: Complex64) -> Complex64 {
        let (bp, bm) = wiener_hopf_eval(&self.v, z);
        self.v.get(0).exp() * bp * bm
    }

    /// `max_{j,k} |Re β_j − Re β_k|`, the seminorm steering which determinant
    /// asymptotics apply. Index 0 is omitted when z = 1 carries no actual
    /// singularity (α_0 = β_0 = 0); with fewer than two indices left the
    /// value is 0.
    pub fn beta_seminorm(&self) -> f64 {
        let re: Vec<f64> = self
            .singularities
            .iter()
            .enumerate()
            .filter(|(j, s)| !(*j == 0 && s.is_trivial()))
            .map(|(_, s)| s.beta.re)
            .collect();
        let mut best: f64 = 0.0;
        for (i, a) in re.iter().enumerate() {
            for b in &re[i + 1..] {
                best = best.max((a - b).abs());
            }
        }
        best
    }
}

// ---------------------------------------------------------------------------
// SmoothUnimodalSymbol
// ---------------------------------------------------------------------------

/// `f = e^V` with real trig-polynomial `V`, minimum `L = f(1)` at θ = 0 and
/// maximum `M = f(e^{iθ̃})` at a single interior angle θ̃ — so every level
/// `λ ∈ (L, M)` is crossed exactly twice.
///
/// Construction certifies the shape numerically on an 8192-point grid:
/// exactly one rise→fall transition of the first differences, and
/// second-difference quotients bounded away from zero at both extrema
/// (nondegenerate quadratic minimum and maximum).
#[derive(Debug, Clone)]
pub struct SmoothUnimodalSymbol {
    v: FourierCoeffs,
    truncation: usize,
    theta_tilde: f64,
    l: f64,
    m: f64,
    f_samples: Vec<f64>,
}

impl SmoothUnimodalSymbol {
    /// Builds the symbol from coefficients of `V` given for k ≥ 0 (negative
    /// indices follow from realness, `V_{−k} = conj V_k`; explicitly provided
    /// negative entries are checked against that rule).
    pub fn new(v_coeffs: &BTreeMap<i64, Complex64>, truncation: Option<usize>) -> Result<Self> {
        let truncation = truncation.unwrap_or(DEFAULT_TRUNCATION);
        if truncation == 0 {
            return Err(SpectraError::Validation("truncation order must be positive".into()));
        }
        let mut full: BTreeMap<i64, Complex64> = BTreeMap::new();
        for (&k, &c) in v_coeffs {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(SpectraError::Validation(format!("non-finite coefficient V_{k}")));
            }
            if k.unsigned_abs() as usize > truncation {
                return Err(SpectraError::Validation(format!(
                    "coefficient index {k} exceeds truncation order {truncation}"
                )));
            }
            full.insert(k, c);
            match v_coeffs.get(&-k) {
                Some(&other) => {
                    if (other - c.conj()).norm() > 1e-14 * (1.0 + c.norm()) {
                        return Err(SpectraError::Validation(format!(
                            "V_{} and V_{} are not conjugate — V must be real-valued",
                            -k, k
                        )));
                    }
                }
                None => {
                    full.insert(-k, c.conj());
                }
            }
        }
        let v0 = full.get(&0).copied().unwrap_or(Complex64::ZERO);
        if v0.im.abs() > 1e-14 * (1.0 + v0.re.abs()) {
            return Err(SpectraError::Validation(
                "V_0 must be real — V must be real-valued on the circle".into(),
            ));
        }
        let tail: f64 = full
            .iter()
            .filter(|(k, _)| k.unsigned_abs() as usize > truncation / 2)
            .map(|(_, c)| c.norm())
            .sum();
        if tail >= TAIL_MASS_LIMIT {
            return Err(SpectraError::Validation(format!(
                "coefficient mass {tail:.3e} beyond k = {} leaves no truncation margin \
                 (must stay below {TAIL_MASS_LIMIT:.0e}); raise the truncation order",
                truncation / 2
            )));
        }

        let v = FourierCoeffs::from_closed_form(truncation, |k| {
            full.get(&k).copied().unwrap_or(Complex64::ZERO)
        });
        Self::certify(v, truncation)
    }

    /// Shape certification on the fixed grid; fills the cached samples,
    /// extrema and θ̃.
    fn certify(v: FourierCoeffs, truncation: usize) -> Result<Self> {
        let mut sym = SmoothUnimodalSymbol {
            v,
            truncation,
            theta_tilde: 0.0,
            l: 0.0,
            m: 0.0,
            f_samples: Vec::new(),
        };
        let n = CERT_GRID;
        let mut samples = Vec::with_capacity(n);
        for j in 0..n {
            samples.push(sym.f_at(TAU * j as f64 / n as f64));
        }

        let rising: Vec<bool> = samples.windows(2).map(|w| w[1] > w[0]).collect();
        let changes = rising.windows(2).filter(|w| w[0] != w[1]).count();
        if changes != 1 || !rising[0] || *rising.last().unwrap() {
            return Err(SpectraError::Validation(
                "symbol is not unimodal with its minimum at θ = 0: need a single rise \
                 on (0, θ̃) followed by a single fall on (θ̃, 2π)"
                    .into(),
            ));
        }

        let imax = samples
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap();
        let step = TAU / n as f64;
        let (mut a, mut b) = ((imax - 1) as f64 * step, (imax + 1) as f64 * step);
        if !(sym.v_prime_at(a) > 0.0 && sym.v_prime_at(b) < 0.0) {
            return Err(SpectraError::Validation(
                "failed to bracket the interior maximum of the symbol".into(),
            ));
        }
        for _ in 0..200 {
            if b - a <= 1e-15 {
                break;
            }
            let mid = 0.5 * (a + b);
            if sym.v_prime_at(mid) > 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        sym.theta_tilde = 0.5 * (a + b);
        sym.l = samples[0];
        sym.m = sym.f_at(sym.theta_tilde);
        sym.f_samples = samples;

        let quot = |t: f64, f0: f64| {
            (sym.f_at(t + step) - 2.0 * f0 + sym.f_at(t - step)) / (step * step)
        };
        let floor = 1e-6 * sym.m.max(1.0);
        if quot(0.0, sym.l).abs() < floor || quot(sym.theta_tilde, sym.m).abs() < floor {
            return Err(SpectraError::Validation(
                "degenerate extremum: the symbol's second derivative vanishes at its \
                 minimum or maximum"
                    .into(),
            ));
        }
        Ok(sym)
    }

    /// The banded anchor symbol `f(e^{iθ}) = 3 − 2 cos θ` (tridiagonal
    /// matrices, fully solvable in closed form). Its logarithm has
    /// coefficients `V_0 = −ln r`, `V_k = −r^{|k|}/|k|` with `r = (3−√5)/2`.
    pub fn tridiag3() -> Self {
        let r = (3.0 - 5.0_f64.sqrt()) / 2.0;
        let mut v = BTreeMap::new();
        v.insert(0, Complex64::new(-r.ln(), 0.0));
        for k in 1..=DEFAULT_TRUNCATION as i64 {
            v.insert(k, Complex64::new(-r.powi(k as i32) / k as f64, 0.0));
        }
        Self::new(&v, None).expect("closed-form banded symbol must certify")
    }

    /// The generic smooth test symbol `f(e^{iθ}) = e^{−cos θ}` (range
    /// `[1/e, e]`, maximum at θ̃ = π). Its matrix entries are Bessel values,
    /// `f_k = (−1)^k I_k(1)`.
    pub fn expcos() -> Self {
        let mut v = BTreeMap::new();
        v.insert(1, Complex64::new(-0.5, 0.0));
        Self::new(&v, None).expect("e^{−cos θ} must certify")
    }

    pub fn v_coeffs(&self) -> &FourierCoeffs {
        &self.v
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Angle of the interior maximum.
    pub fn theta_tilde(&self) -> f64 {
        self.theta_tilde
    }

    /// Minimum value `L = f(1)`.
    pub fn min_value(&self) -> f64 {
        self.l
    }

    /// Maximum value `M = f(e^{iθ̃})`.
    pub fn max_value(&self) -> f64 {
        self.m
    }

    /// `V(θ) = V_0 + 2 Re Σ_{k≥1} V_k e^{ikθ}` (real by construction).
    pub fn v_at(&self, theta: f64) -> f64 {
        let z = Complex64::from_polar(1.0, theta);
        let mut s = Complex64::ZERO;
        for k in (1..=self.truncation as i64).rev() {
            s = (s + self.v.get(k)) * z;
        }
        self.v.get(0).re + 2.0 * s.re
    }

    /// `V'(θ)`, used to locate θ̃ and to certify branch monotonicity.
    fn v_prime_at(&self, theta: f64) -> f64 {
        let z = Complex64::from_polar(1.0, theta);
        let mut s = Complex64::ZERO;
        for k in (1..=self.truncation as i64).rev() {
            s = (s + self.v.get(k) * k as f64) * z;
        }
        -2.0 * s.im
    }

    /// `f(e^{iθ}) = e^{V(θ)}`.
    pub fn f_at(&self, theta: f64) -> f64 {
        self.v_at(theta).exp()
    }

    /// The two angles `0 < θ1 < θ̃ < θ2 < 2π` where `f = λ`, each found by
    /// bisection on its strictly monotone branch and verified to residual
    /// `|f − λ| ≤ 1e-12`.
    pub fn root_angles(&self, lam: f64) -> Result<(f64, f64)> {
        if !(self.l < lam && lam < self.m) {
            return Err(SpectraError::Domain(format!(
                "λ = {lam} lies outside the open range ({}, {}) of the symbol",
                self.l, self.m
            )));
        }
        let bisect = |mut a: f64, mut b: f64, rising: bool| -> f64 {
            for _ in 0..200 {
                if b - a <= 1e-15 {
                    break;
                }
                let mid = 0.5 * (a + b);
                if (self.f_at(mid) > lam) == rising {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            0.5 * (a + b)
        };
        let t1 = bisect(0.0, self.theta_tilde, true);
        let t2 = bisect(self.theta_tilde, TAU, false);
        for t in [t1, t2] {
            if (self.f_at(t) - lam).abs() > ROOT_RESIDUAL_TOL {
                return Err(SpectraError::Internal(format!(
                    "root solver residual {:.3e} exceeds {ROOT_RESIDUAL_TOL:.0e} at θ = {t}",
                    (self.f_at(t) - lam).abs()
                )));
            }
        }
        if !(0.0 < t1 && t1 < self.theta_tilde && self.theta_tilde < t2 && t2 < TAU) {
            return Err(SpectraError::Internal(
                "root angles failed the ordering 0 < θ1 < θ̃ < θ2 < 2π".into(),
            ));
        }
        Ok((t1, t2))
    }

    /// Descriptor of `f − λ`: power-and-jump factors with `α = β = 1/2` at
    /// both roots, and smooth part `V(·; λ) = ln R + i(θ1 − θ2)/2 + iπ`,
    /// where `R = (λ − f)/(4 sin((θ−θ1)/2) sin((θ−θ2)/2)) > 0` extends
    /// continuously across the roots.
    ///
    /// Keep `λ` away from the extrema by a few orders more than the patch
    /// radius (1e-5) — the removable-singularity handling needs the two
    /// roots separated.
    pub fn shift(&self, lam: f64) -> Result<FHDescriptor> {
        self.shift_with(lam, SHIFT_GRID, SHIFT_TRUNCATION)
    }

    /// [`shift`](Self::shift) with an explicit analysis grid (must divide
    /// the 8192-point cache) and truncation order for the smooth part —
    /// the knob hot loops use to trade accuracy for speed.
    pub fn shift_with(&self, lam: f64, grid: usize, k_max: usize) -> Result<FHDescriptor> {
        if grid < 4 || !grid.is_power_of_two() || grid > CERT_GRID {
            return Err(SpectraError::Validation(format!(
                "analysis grid must be a power of two in [4, {CERT_GRID}], got {grid}"
            )));
        }
        if k_max == 0 || 4 * k_max > grid {
            return Err(SpectraError::Validation(format!(
                "truncation {k_max} too large for a {grid}-point grid (need grid ≥ 4·k_max)"
            )));
        }
        let (t1, t2) = self.root_angles(lam)?;
        let direct_ln_r = |theta: f64, f_val: f64| -> Result<f64> {
            let den = 4.0 * (0.5 * (theta - t1)).sin() * (0.5 * (theta - t2)).sin();
            let r = (lam - f_val) / den;
            if !(r > 0.0) || !r.is_finite() {
                return Err(SpectraError::Internal(format!(
                    "regularized ratio R = {r:.3e} not positive at θ = {theta} (λ = {lam})"
                )));
            }
            Ok(r.ln())
        };

        let stride = CERT_GRID / grid;
        let mut lnr = Vec::with_capacity(grid);
        for j in 0..grid {
            let theta = TAU * j as f64 / grid as f64;
            let (d1, d2) = (circle_dist(theta, t1), circle_dist(theta, t2));
            let val = if d1.min(d2) >= ROOT_PATCH_RADIUS {
                direct_ln_r(theta, self.f_samples[j * stride])?
            } else {
                // Removable singularity: recover ln R at the root from its
                // two one-sided limits, then correct linearly to θ.
                let root = if d1 <= d2 { t1 } else { t2 };
                let h = ROOT_PATCH_RADIUS;
                let lp = direct_ln_r(root + h, self.f_at(root + h))?;
                let lm = direct_ln_r(root - h, self.f_at(root - h))?;
                0.5 * (lp + lm) + wrap_to_pi(theta - root) * (lp - lm) / (2.0 * h)
            };
            lnr.push(Complex64::new(val, 0.0));
        }
        let coeffs = CircleGrid::from_samples(lnr)?.fourier_coeffs(k_max)?;
        let v0_shift = Complex64::new(0.0, 0.5 * (t1 - t2) + std::f64::consts::PI);
        let v = FourierCoeffs::from_closed_form(k_max, |k| {
            if k == 0 {
                coeffs.get(0) + v0_shift
            } else {
                coeffs.get(k)
            }
        });
        let half = Complex64::new(0.5, 0.0);
        FHDescriptor::new(
            v,
            vec![
                Singularity::trivial(0.0),
                Singularity::new(t1, half, half),
                Singularity::new(t2, half, half),
            ],
        )
    }
}

// ---------------------------------------------------------------------------
// TwoLevelSymbol
// ---------------------------------------------------------------------------

/// The step symbol equal to `e^{2πγ}` on the arc `[θ1, θ2)` and `1` on the
/// complementary arc, with `0 < θ1 < θ2 < 2π` and `γ > 0`.
///
/// A jump at θ = 0 is not supported: the first jump must sit strictly after
/// angle 0 so that z = 1 is a smooth point of the symbol.
#[derive(Debug, Clone)]
pub struct TwoLevelSymbol {
    theta1: f64,
    theta2: f64,
    gamma: f64,
    rational_arc: Option<(u64, u64)>,
}

impl TwoLevelSymbol {
    pub fn new(theta1: f64, theta2: f64, gamma: f64) -> Result<Self> {
        if !(theta1 > 0.0 && theta1 < theta2 && theta2 < TAU)
            || !theta1.is_finite()
            || !theta2.is_finite()
        {
            return Err(SpectraError::Validation(format!(
                "jump angles must satisfy 0 < θ1 < θ2 < 2π, got θ1 = {theta1}, θ2 = {theta2}"
            )));
        }
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(SpectraError::Validation(format!(
                "level parameter γ must be positive, got {gamma}"
            )));
        }
        Ok(TwoLevelSymbol { theta1, theta2, gamma, rational_arc: None })
    }

    /// Arc length `2π p/q` (coprime, 0 < p < q), centered at θ = π so both
    /// jumps stay away from z = 1. Symbols built this way know their
    /// near-period q.
    pub fn from_rational_arc(p: u64, q: u64, gamma: f64) -> Result<Self> {
        if p == 0 || p >= q {
            return Err(SpectraError::Validation(format!(
                "rational arc needs 0 < p < q, got p = {p}, q = {q}"
            )));
        }
        if gcd(p, q) != 1 {
            return Err(SpectraError::Validation(format!(
                "rational arc fraction {p}/{q} is not in lowest terms"
            )));
        }
        let half_arc = std::f64::consts::PI * p as f64 / q as f64;
        let mut sym =
            Self::new(std::f64::consts::PI - half_arc, std::f64::consts::PI + half_arc, gamma)?;
        sym.rational_arc = Some((p, q));
        Ok(sym)
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn rational_arc(&self) -> Option<(u64, u64)> {
        self.rational_arc
    }

    /// The high level `e^{2πγ}`.
    pub fn upper_level(&self) -> f64 {
        (TAU * self.gamma).exp()
    }

    /// Pointwise value (1 outside the arc, `e^{2πγ}` on `[θ1, θ2)`).
    pub fn value_at(&self, theta: f64) -> f64 {
        let t = theta.rem_euclid(TAU);
        if t >= self.theta1 && t < self.theta2 {
            self.upper_level()
        } else {
            1.0
        }
    }

    /// Exact Fourier coefficients of the step function:
    /// `f_0 = 1 + (e^{2πγ} − 1)(θ2 − θ1)/2π` and
    /// `f_k = (e^{2πγ} − 1)(e^{−ikθ1} − e^{−ikθ2})/(2πik)` for k ≠ 0.
    pub fn fourier_coeff(&self, k: i64) -> Complex64 {
        let jump = self.upper_level() - 1.0;
        if k == 0 {
            Complex64::new(1.0 + jump * (self.theta2 - self.theta1) / TAU, 0.0)
        } else {
            let e1 = Complex64::from_polar(1.0, -(k as f64) * self.theta1);
            let e2 = Complex64::from_polar(1.0, -(k as f64) * self.theta2);
            (e1 - e2) * jump / Complex64::new(0.0, TAU * k as f64)
        }
    }

    /// The gap coordinate `γ^{(λ)}` of a level `λ` strictly inside
    /// `(1, e^{2πγ})`: `e^{2πγ^{(λ)}} = (e^{2πγ} − λ)/(λ − 1)`. It decreases
    /// from +∞ to −∞ as λ crosses the gap and vanishes at the midpoint.
    pub fn gap_coordinate(&self, lam: f64) -> Result<f64> {
        let upper = self.upper_level();
        if !(lam > 1.0 && lam < upper) {
            return Err(SpectraError::Domain(format!(
                "λ = {lam} lies outside the open spectral gap (1, {upper})"
            )));
        }
        Ok(((upper - lam) / (lam - 1.0)).ln() / TAU)
    }

    /// Descriptor of `f − λ` for λ inside the gap: pure jumps (α = 0) with
    /// `β_1 = 1/2 + iγ^{(λ)}`, `β_2 = 1/2 − iγ^{(λ)}`, and constant smooth
    /// part `e^{V_0} = e^{iπ} (λ − 1) (z_1/z_2)^{β_1}` (exponent of the
    /// ratio taken literally as `e^{iβ_1(θ1−θ2)}`).
    pub fn shift(&self, lam: f64) -> Result<FHDescriptor> {
        let g = self.gap_coordinate(lam)?;
        let beta1 = Complex64::new(0.5, g);
        let beta2 = beta1.conj();
        let v0 = Complex64::new((lam - 1.0).ln(), std::f64::consts::PI)
            + Complex64::i() * beta1 * (self.theta1 - self.theta2);
        let v = FourierCoeffs::from_closed_form(0, |_| v0);
        FHDescriptor::new(
            v,
            vec![
                Singularity::trivial(0.0),
                Singularity::new(self.theta1, Complex64::ZERO, beta1),
                Singularity::new(self.theta2, Complex64::ZERO, beta2),
            ],
        )
    }

    /// The eigenvalue near-period q of a rational-arc symbol: spectra of
    /// sizes n and n+q inside the gap pair up to within o(1/(n ln n)).
    pub fn near_period(&self) -> Result<u64> {
        self.rational_arc.map(|(_, q)| q).ok_or_else(|| {
            SpectraError::Validation(
                "near-period analysis needs a symbol built from a rational arc p/q".into(),
            )
        })
    }
}

/// Near-period of a two-level symbol whose arc is written as `π(m ± ℓ)/m`
/// with coprime ℓ, m (the split-interval parametrization): `ω = 2` when
/// ℓ = 0, `ω = m` when ℓ and m are both odd, `ω = 2m` otherwise. Reducing
/// the arc to `2π p/q` and taking q gives the same number.
pub fn omega(l: i64, m: i64) -> Result<u64> {
    if m == 0 {
        return Err(SpectraError::Validation("ω(ℓ, m) needs m ≠ 0".into()));
    }
    if l == 0 {
        return Ok(2);
    }
    let (la, ma) = (l.unsigned_abs(), m.unsigned_abs());
    if gcd(la, ma) != 1 {
        return Err(SpectraError::Validation(format!("ω(ℓ, m) needs coprime arguments, got ({l}, {m})")));
    }
    if la % 2 == 1 && ma % 2 == 1 {
        Ok(ma)
    } else {
        Ok(2 * ma)
    }
}

// ---------------------------------------------------------------------------
// Plain-text configuration
// ---------------------------------------------------------------------------

/// A symbol of either supported family, as produced by the configuration
/// parser or the named builtins.
#[derive(Debug, Clone)]
pub enum Symbol {
    Smooth(SmoothUnimodalSymbol),
    TwoLevel(TwoLevelSymbol),
}

impl Symbol {
    /// Fourier data up to `k_max` for building Toeplitz matrices.
    pub fn fourier(&self, k_max: usize) -> Result<FourierSymbol> {
        match self {
            Symbol::Smooth(s) => FourierSymbol::from_smooth(s, k_max),
            Symbol::TwoLevel(s) => Ok(FourierSymbol::from_two_level(s, k_max)),
        }
    }
}

/// Parses the plain-text symbol schema: one `key = value` per line, `#`
/// comments.
///
/// ```text
/// kind = smooth        # or: two-level
/// K    = 64            # optional truncation order (smooth only)
/// v0   = 0.0           # V_0 (real)
/// v1   = -0.5 -0.075   # V_1 as "re im" (im defaults to 0); k ≥ 1 only,
///                      # V_{−k} follows by conjugation
///
/// kind   = two-level
/// gamma  = 0.25
/// theta1 = 1.0         # explicit jump angles …
/// theta2 = 2.5
/// # … or a rational arc 2π·p/q centered at π instead of the angles:
/// # p = 1
/// # q = 4
/// ```
pub fn parse_symbol_config(text: &str) -> Result<Symbol> {
    let mut map: BTreeMap<String, String> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            SpectraError::Config(format!("line {}: expected `key = value`, got `{raw}`", idx + 1))
        })?;
        let key = key.trim().to_string();
        if map.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(SpectraError::Config(format!("line {}: duplicate key `{key}`", idx + 1)));
        }
    }
    let mut take = |k: &str| map.remove(k);
    let kind = take("kind")
        .ok_or_else(|| SpectraError::Config("missing required key `kind`".into()))?;

    let parse_f64 = |key: &str, s: &str| -> Result<f64> {
        s.parse::<f64>()
            .map_err(|_| SpectraError::Config(format!("key `{key}`: `{s}` is not a number")))
    };

    match kind.as_str() {
        "smooth" => {
            let truncation = match take("K") {
                Some(s) => Some(s.parse::<usize>().map_err(|_| {
                    SpectraError::Config(format!("key `K`: `{s}` is not a positive integer"))
                })?),
                None => None,
            };
            let mut coeffs = BTreeMap::new();
            let keys: Vec<String> = map.keys().cloned().collect();
            for key in keys {
                let Some(idx) = key.strip_prefix('v') else {
                    return Err(SpectraError::Config(format!("unknown key `{key}`")));
                };
                let k: i64 = idx.parse().map_err(|_| {
                    SpectraError::Config(format!("unknown key `{key}`"))
                })?;
                if k < 0 {
                    return Err(SpectraError::Config(format!(
                        "key `{key}`: list coefficients for k ≥ 0 only \
                         (negative indices follow by conjugation)"
                    )));
                }
                let value = map.remove(&key).unwrap();
                let parts: Vec<&str> = value.split_whitespace().collect();
                let (re, im) = match parts.as_slice() {
                    [re] => (parse_f64(&key, re)?, 0.0),
                    [re, im] => (parse_f64(&key, re)?, parse_f64(&key, im)?),
                    _ => {
                        return Err(SpectraError::Config(format!(
                            "key `{key}`: expected `re` or `re im`, got `{value}`"
                        )))
                    }
                };
                coeffs.insert(k, Complex64::new(re, im));
            }
            Ok(Symbol::Smooth(SmoothUnimodalSymbol::new(&coeffs, truncation)?))
        }
        "two-level" => {
            let gamma = parse_f64(
                "gamma",
                &take("gamma")
                    .ok_or_else(|| SpectraError::Config("missing required key `gamma`".into()))?,
            )?;
            let angles = (take("theta1"), take("theta2"));
            let arc = (take("p"), take("q"));
            if let Some(extra) = map.keys().next() {
                return Err(SpectraError::Config(format!("unknown key `{extra}`")));
            }
            match (angles, arc) {
                ((Some(t1), Some(t2)), (None, None)) => Ok(Symbol::TwoLevel(
                    TwoLevelSymbol::new(parse_f64("theta1", &t1)?, parse_f64("theta2", &t2)?, gamma)?,
                )),
                ((None, None), (Some(p), Some(q))) => {
                    let parse_u64 = |key: &str, s: &str| -> Result<u64> {
                        s.parse::<u64>().map_err(|_| {
                            SpectraError::Config(format!(
                                "key `{key}`: `{s}` is not a positive integer"
                            ))
                        })
                    };
                    Ok(Symbol::TwoLevel(TwoLevelSymbol::from_rational_arc(
                        parse_u64("p", &p)?,
                        parse_u64("q", &q)?,
                        gamma,
                    )?))
                }
                _ => Err(SpectraError::Config(
                    "two-level symbol needs either both theta1/theta2 or both p/q \
                     (and not a mixture)"
                        .into(),
                )),
            }
        }
        other => Err(SpectraError::Config(format!(
            "unknown symbol kind `{other}` (expected `smooth` or `two-level`)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::bessel_i;
    use proptest::prelude::*;
    use std::f64::consts::PI;
    use std::sync::OnceLock;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn expcos_shared() -> &'static SmoothUnimodalSymbol {
        static SYM: OnceLock<SmoothUnimodalSymbol> = OnceLock::new();
        SYM.get_or_init(SmoothUnimodalSymbol::expcos)
    }

    /// Asymmetric member of the test corpus:
    /// V = −cos θ + 0.15 (sin θ − sin 2θ / 2), still unimodal with min at 0.
    fn asym_symbol() -> SmoothUnimodalSymbol {
        let mut v = BTreeMap::new();
        v.insert(1, c(-0.5, -0.075));
        v.insert(2, c(0.0, 0.0375));
        SmoothUnimodalSymbol::new(&v, None).unwrap()
    }

    #[test]
    fn corpus_symbols_certify_with_expected_extrema() {
        let t = SmoothUnimodalSymbol::tridiag3();
        assert!((t.min_value() - 1.0).abs() < 1e-10, "L = {}", t.min_value());
        assert!((t.max_value() - 5.0).abs() < 1e-10, "M = {}", t.max_value());
        assert!((t.theta_tilde() - PI).abs() < 1e-9);
        let r = (3.0 - 5.0_f64.sqrt()) / 2.0;
        assert!((t.v_coeffs().get(1) - c(-r, 0.0)).norm() < 1e-15);
        assert!((t.v_coeffs().get(0) - c(-r.ln(), 0.0)).norm() < 1e-15);
        // pointwise agreement with 3 − 2cos θ
        for theta in [0.3, 1.1, 2.0, 4.4, 6.0] {
            assert!((t.f_at(theta) - (3.0 - 2.0 * theta.cos())).abs() < 1e-12);
        }

        let e = expcos_shared();
        assert!((e.min_value() - (-1.0_f64).exp()).abs() < 1e-13);
        assert!((e.max_value() - 1.0_f64.exp()).abs() < 1e-13);
        assert!((e.theta_tilde() - PI).abs() < 1e-9);

        let a = asym_symbol();
        assert!((a.min_value() - (-1.0_f64).exp()).abs() < 1e-13);
        assert!((a.theta_tilde() - 2.866243).abs() < 1e-3);
    }

    #[test]
    fn non_unimodal_or_degenerate_symbols_are_rejected() {
        // max at θ = 0 instead of min
        let mut v = BTreeMap::new();
        v.insert(1, c(0.5, 0.0));
        assert!(SmoothUnimodalSymbol::new(&v, None).is_err());
        // two maxima (period π)
        let mut v = BTreeMap::new();
        v.insert(2, c(0.25, 0.0));
        assert!(SmoothUnimodalSymbol::new(&v, None).is_err());
        // complex V_0
        let mut v = BTreeMap::new();
        v.insert(0, c(0.0, 0.3));
        v.insert(1, c(-0.5, 0.0));
        assert!(SmoothUnimodalSymbol::new(&v, None).is_err());
        // coefficient beyond the declared truncation order
        let mut v = BTreeMap::new();
        v.insert(1, c(-0.5, 0.0));
        v.insert(9, c(1e-3, 0.0));
        assert!(SmoothUnimodalSymbol::new(&v, Some(8)).is_err());
        // no truncation margin: visible mass beyond K/2
        let mut v = BTreeMap::new();
        v.insert(1, c(-0.5, 0.0));
        v.insert(40, c(1e-6, 0.0));
        assert!(SmoothUnimodalSymbol::new(&v, None).is_err());
        // mismatched explicit conjugate pair
        let mut v = BTreeMap::new();
        v.insert(1, c(-0.5, 0.1));
        v.insert(-1, c(-0.5, 0.1));
        assert!(SmoothUnimodalSymbol::new(&v, None).is_err());
    }

    #[test]
    fn root_angles_closed_form_and_residuals() {
        let t = SmoothUnimodalSymbol::tridiag3();
        // 3 − 2cos θ = 3 ⟺ cos θ = 0
        let (t1, t2) = t.root_angles(3.0).unwrap();
        assert!((t1 - PI / 2.0).abs() < 1e-12, "θ1 = {t1}");
        assert!((t2 - 3.0 * PI / 2.0).abs() < 1e-12, "θ2 = {t2}");
        // 3 − 2cos θ = 2 ⟺ cos θ = 1/2
        let (t1, t2) = t.root_angles(2.0).unwrap();
        assert!((t1 - PI / 3.0).abs() < 1e-12);
        assert!((t2 - 5.0 * PI / 3.0).abs() < 1e-12);

        // e^{−cos θ} = 1 ⟺ cos θ = 0
        let e = expcos_shared();
        let (t1, t2) = e.root_angles(1.0).unwrap();
        assert!((t1 - PI / 2.0).abs() < 1e-12);
        assert!((t2 - 3.0 * PI / 2.0).abs() < 1e-12);
        for lam in [0.5, 1.0, 1.7, 2.5] {
            let (t1, t2) = e.root_angles(lam).unwrap();
            assert!((e.f_at(t1) - lam).abs() <= ROOT_RESIDUAL_TOL);
            assert!((e.f_at(t2) - lam).abs() <= ROOT_RESIDUAL_TOL);
            assert!(0.0 < t1 && t1 < PI && PI < t2 && t2 < TAU);
        }
    }

    #[test]
    fn root_angles_rejects_levels_outside_the_band() {
        // The band endpoints are stored to double precision, so probe with a
        // clear margin rather than at the rounding-ambiguous values 1 and 5.
        let t = SmoothUnimodalSymbol::tridiag3();
        for lam in [1.0 - 1e-9, 5.0 + 1e-9, 0.2, 5.3] {
            match t.root_angles(lam) {
                Err(SpectraError::Domain(_)) => {}
                other => panic!("λ = {lam}: expected domain error, got {other:?}"),
            }
        }
    }

    #[test]
    fn root_angles_move_monotonically_with_the_level() {
        let e = expcos_shared();
        let (l, m) = (e.min_value(), e.max_value());
        let mut last = (0.0, TAU);
        for i in 0..30 {
            let lam = l + (m - l) * (0.01 + 0.98 * i as f64 / 29.0);
            let (t1, t2) = e.root_angles(lam).unwrap();
            if i > 0 {
                assert!(t1 > last.0, "θ1 must increase with λ");
                assert!(t2 < last.1, "θ2 must decrease with λ");
            }
            last = (t1, t2);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn prop_root_angles_bracket_and_residual(lam in 0.38f64..2.70) {
            let e = expcos_shared();
            let (t1, t2) = e.root_angles(lam).unwrap();
            prop_assert!(0.0 < t1 && t1 < e.theta_tilde() && e.theta_tilde() < t2 && t2 < TAU);
            prop_assert!((e.f_at(t1) - lam).abs() <= ROOT_RESIDUAL_TOL);
            prop_assert!((e.f_at(t2) - lam).abs() <= ROOT_RESIDUAL_TOL);
        }
    }

    #[test]
    fn banded_anchor_shift_has_flat_regularized_ratio() {
        // For 3 − 2cos θ the ratio R ≡ 1: the smooth part reduces to the
        // constant V_0 = i(θ1 − θ2)/2 + iπ.
        let t = SmoothUnimodalSymbol::tridiag3();
        for lam in [1.5, 3.0, 4.2] {
            let d = t.shift(lam).unwrap();
            let (t1, t2) = t.root_angles(lam).unwrap();
            let v0 = d.v_coeffs().get(0);
            assert!(v0.re.abs() < 1e-10, "Re V_0 = {}", v0.re);
            assert!((v0.im - (0.5 * (t1 - t2) + PI)).abs() < 1e-10);
            for k in 1..=d.v_coeffs().k_max() as i64 {
                assert!(d.v_coeffs().get(k).norm() < 1e-10, "V_{k} = {}", d.v_coeffs().get(k));
            }
            let (s1, s2) = d.jump_pair().unwrap();
            assert_eq!((s1.alpha(), s1.beta()), (c(0.5, 0.0), c(0.5, 0.0)));
            assert_eq!((s2.alpha(), s2.beta()), (c(0.5, 0.0), c(0.5, 0.0)));
            assert_eq!(d.beta_seminorm(), 0.0);
        }
    }

    #[test]
    fn shift_reconstructs_the_shifted_symbol_pointwise() {
        // e^{V(θ;λ)} · 4 sin((θ−θ1)/2) sin((θ−θ2)/2) · e^{−i(θ1−θ2)/2} = f(θ) − λ
        let cases: Vec<(SmoothUnimodalSymbol, f64)> = vec![
            (SmoothUnimodalSymbol::tridiag3(), 2.4),
            (SmoothUnimodalSymbol::expcos(), 1.3),
            (SmoothUnimodalSymbol::expcos(), 0.6),
            (asym_symbol(), 1.1),
        ];
        for (sym, lam) in cases {
            let d = sym.shift(lam).unwrap();
            let (t1, t2) = sym.root_angles(lam).unwrap();
            let rot = Complex64::from_polar(1.0, -0.5 * (t1 - t2));
            for j in 0..64 {
                let theta = TAU * (j as f64 + 0.5) / 64.0;
                if circle_dist(theta, t1).min(circle_dist(theta, t2)) < 0.05 {
                    continue;
                }
                let z = Complex64::from_polar(1.0, theta);
                let sines = 4.0 * (0.5 * (theta - t1)).sin() * (0.5 * (theta - t2)).sin();
                let rebuilt = d.smooth_factor(z) * sines * rot;
                let target = c(sym.f_at(theta) - lam, 0.0);
                assert!(
                    (rebuilt - target).norm() < 1e-10,
                    "λ = {lam}, θ = {theta}: {rebuilt} vs {target}"
                );
            }
        }
    }

    #[test]
    fn shift_smooth_part_is_grid_converged() {
        // The default 2048-point analysis grid must already agree with the
        // full 8192-point one at the stored truncation.
        let e = expcos_shared();
        for lam in [0.6, 1.3, 2.2] {
            let coarse = e.shift(lam).unwrap();
            let fine = e.shift_with(lam, CERT_GRID, SHIFT_TRUNCATION).unwrap();
            for k in -(SHIFT_TRUNCATION as i64)..=SHIFT_TRUNCATION as i64 {
                let d = (coarse.v_coeffs().get(k) - fine.v_coeffs().get(k)).norm();
                assert!(d < 1e-12, "V_{k} differs by {d:.3e} between grids");
            }
        }
    }

    #[test]
    fn shift_succeeds_across_the_whole_band() {
        let e = expcos_shared();
        let (l, m) = (e.min_value(), e.max_value());
        for i in 0..15 {
            let lam = l + (m - l) * (0.002 + 0.996 * i as f64 / 14.0);
            // positivity of R over the grid is asserted internally
            e.shift(lam).unwrap();
        }
    }

    #[test]
    fn smooth_fourier_data_matches_known_coefficients() {
        let t = FourierSymbol::from_smooth(&SmoothUnimodalSymbol::tridiag3(), 8).unwrap();
        assert!((t.coeff(0) - c(3.0, 0.0)).norm() < 1e-12);
        assert!((t.coeff(1) - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((t.coeff(-1) - c(-1.0, 0.0)).norm() < 1e-12);
        assert!(t.coeff(2).norm() < 1e-12);

        // e^{−cos θ}: f_k = (−1)^k I_k(1)
        let e = FourierSymbol::from_smooth(expcos_shared(), 8).unwrap();
        assert!((e.coeff(0) - c(1.266_065_877_752_008_4, 0.0)).norm() < 1e-12);
        assert!((e.coeff(1) - c(-0.565_159_103_992_485_1, 0.0)).norm() < 1e-12);
        assert!((e.coeff(2) - c(0.135_747_669_767_038_28, 0.0)).norm() < 1e-12);
        for k in 0..=6i64 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((e.coeff(k) - c(sign * bessel_i(k as u32, 1.0), 0.0)).norm() < 1e-12);
        }
        assert!(e.is_real_valued(1e-14));
    }

    #[test]
    fn toeplitz_from_symbol_is_hermitian_and_size_checked() {
        let s = TwoLevelSymbol::new(1.0, 2.5, 0.2).unwrap();
        let f = FourierSymbol::from_two_level(&s, 23);
        assert!(f.is_real_valued(1e-14));
        let t = f.toeplitz(24).unwrap();
        assert!(t.is_hermitian(1e-12));
        assert!(f.toeplitz(25).is_err(), "band k = 24 is not covered");

        let sm = FourierSymbol::from_smooth(expcos_shared(), 31).unwrap();
        assert!(sm.toeplitz(32).unwrap().is_hermitian(1e-12));
    }

    #[test]
    fn two_level_coefficients_match_quadrature() {
        let s = TwoLevelSymbol::new(1.0, 2.5, 0.11).unwrap();
        let n = 2_000_000usize;
        for k in [1i64, 5] {
            let mut acc = Complex64::ZERO;
            for j in 0..n {
                let theta = TAU * (j as f64 + 0.5) / n as f64;
                acc += s.value_at(theta) * Complex64::from_polar(1.0, -(k as f64) * theta);
            }
            acc /= n as f64;
            assert!(
                (acc - s.fourier_coeff(k)).norm() < 1e-5,
                "k = {k}: {acc} vs {}",
                s.fourier_coeff(k)
            );
        }
        // worked value: θ1 = π/2, θ2 = π, e^{2πγ} = 2 gives f_0 = 5/4
        let s = TwoLevelSymbol::new(PI / 2.0, PI, 2.0_f64.ln() / TAU).unwrap();
        assert!((s.fourier_coeff(0) - c(1.25, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn two_level_values_and_construction_guards() {
        let s = TwoLevelSymbol::new(0.75 * PI, 1.25 * PI, 2.0_f64.ln() / TAU).unwrap();
        assert!((s.upper_level() - 2.0).abs() < 1e-14);
        assert_eq!(s.value_at(PI), 2.0);
        assert_eq!(s.value_at(0.1), 1.0);
        assert_eq!(s.value_at(s.theta1()), 2.0, "arc is closed on the left");
        assert_eq!(s.value_at(s.theta2()), 1.0, "arc is open on the right");
        assert_eq!(s.value_at(PI + TAU), 2.0, "periodic in θ");
        assert_eq!(s.value_at(0.1 - TAU), 1.0);

        assert!(TwoLevelSymbol::new(0.0, 2.0, 0.5).is_err(), "jump at θ = 0 unsupported");
        assert!(TwoLevelSymbol::new(-0.1, 2.0, 0.5).is_err());
        assert!(TwoLevelSymbol::new(2.0, 2.0, 0.5).is_err());
        assert!(TwoLevelSymbol::new(1.0, TAU, 0.5).is_err());
        assert!(TwoLevelSymbol::new(1.0, 2.0, 0.0).is_err());
        assert!(TwoLevelSymbol::new(1.0, 2.0, -0.2).is_err());
    }

    #[test]
    fn gap_shift_examples() {
        let gamma = 2.0_f64.ln() / TAU; // upper level exactly 2
        let s = TwoLevelSymbol::new(0.75 * PI, 1.25 * PI, gamma).unwrap();

        // midpoint of the gap: the coordinate vanishes, both β = 1/2
        assert!(s.gap_coordinate(1.5).unwrap().abs() < 1e-15);
        let d = s.shift(1.5).unwrap();
        let (s1, s2) = d.jump_pair().unwrap();
        assert!((s1.beta() - c(0.5, 0.0)).norm() < 1e-15);
        assert!((s2.beta() - c(0.5, 0.0)).norm() < 1e-15);
        assert_eq!(s1.alpha(), Complex64::ZERO);
        assert_eq!(d.beta_seminorm(), 0.0);

        // (2 − 4/3)/(4/3 − 1) = 2 reproduces the defining level ratio
        let g = s.gap_coordinate(4.0 / 3.0).unwrap();
        assert!((g - gamma).abs() < 1e-14, "γ^{{(λ)}} = {g}");
        let d = s.shift(4.0 / 3.0).unwrap();
        let (s1, s2) = d.jump_pair().unwrap();
        assert!((s1.beta() - c(0.5, gamma)).norm() < 1e-14);
        assert!((s2.beta() - s1.beta().conj()).norm() < 1e-15);
        // frozen: V_0 = −ln 3 + (ln 2)/4 + i·3π/4
        let v0 = d.v_coeffs().get(0);
        assert!((v0 - c(-0.925_325_493_528_123_5, 2.356_194_490_192_345)).norm() < 1e-12);

        for lam in [1.0, 2.0, 0.5, 2.5] {
            match s.shift(lam) {
                Err(SpectraError::Domain(_)) => {}
                other => panic!("λ = {lam}: expected domain error, got {other:?}"),
            }
        }
    }

    #[test]
    fn near_period_matches_split_parametrization() {
        let gamma = 0.25;
        // arc π ↔ p/q = 1/2 ↔ ω(0, m) = 2
        let s = TwoLevelSymbol::from_rational_arc(1, 2, gamma).unwrap();
        assert_eq!(s.near_period().unwrap(), 2);
        assert_eq!(omega(0, 1).unwrap(), 2);
        assert_eq!(omega(0, 7).unwrap(), 2);

        // arc π(m+ℓ)/m reduced to 2π p/q must reproduce ω(ℓ, m)
        fn reduce(a: u64, b: u64) -> (u64, u64) {
            let g = gcd(a, b);
            (a / g, b / g)
        }
        for (l, m) in [(1i64, 3i64), (1, 5), (3, 5), (2, 5), (1, 2), (3, 4), (5, 2)] {
            let w = omega(l, m).unwrap();
            let expected = if l % 2 == 1 && m % 2 == 1 { m as u64 } else { 2 * m as u64 };
            assert_eq!(w, expected, "ω({l}, {m})");
            // the arcs π(m±ℓ)/m lie in (0, 2π) only for ℓ < m
            if l < m {
                let (p, q) = reduce((m + l) as u64, 2 * m as u64); // arc = π(m+ℓ)/m
                let sym = TwoLevelSymbol::from_rational_arc(p, q, gamma).unwrap();
                assert_eq!(sym.near_period().unwrap(), w, "arc π({m}+{l})/{m}");
                let (p, q) = reduce((m - l) as u64, 2 * m as u64); // arc = π(m−ℓ)/m
                let sym = TwoLevelSymbol::from_rational_arc(p, q, gamma).unwrap();
                assert_eq!(sym.near_period().unwrap(), w, "arc π({m}−{l})/{m}");
            }
        }

        // complementary arcs share the near-period
        let a = TwoLevelSymbol::from_rational_arc(1, 4, gamma).unwrap();
        let b = TwoLevelSymbol::from_rational_arc(3, 4, gamma).unwrap();
        assert_eq!(a.near_period().unwrap(), b.near_period().unwrap());

        // guards
        assert!(TwoLevelSymbol::new(1.0, 2.0, gamma).unwrap().near_period().is_err());
        assert!(TwoLevelSymbol::from_rational_arc(2, 4, gamma).is_err(), "not coprime");
        assert!(TwoLevelSymbol::from_rational_arc(0, 4, gamma).is_err());
        assert!(TwoLevelSymbol::from_rational_arc(4, 4, gamma).is_err());
        assert!(omega(2, 4).is_err());
        assert!(omega(1, 0).is_err());
    }

    #[test]
    fn beta_seminorm_cases() {
        let v = FourierCoeffs::from_closed_form(0, |_| Complex64::ZERO);
        // a single actual jump (trivial z = 1 omitted): no pair to compare
        let d = FHDescriptor::new(
            v.clone(),
            vec![Singularity::trivial(0.0), Singularity::new(1.0, Complex64::ZERO, c(0.5, 0.0))],
        )
        .unwrap();
        assert_eq!(d.beta_seminorm(), 0.0);

        // conjugate pair: equal real parts
        let d = FHDescriptor::new(
            v.clone(),
            vec![
                Singularity::trivial(0.0),
                Singularity::new(1.0, Complex64::ZERO, c(0.5, 0.3)),
                Singularity::new(2.0, Complex64::ZERO, c(0.5, -0.3)),
            ],
        )
        .unwrap();
        assert_eq!(d.beta_seminorm(), 0.0);

        // genuinely different real parts, including a singular z = 1
        let d = FHDescriptor::new(
            v.clone(),
            vec![
                Singularity::new(0.0, Complex64::ZERO, c(-0.25, 0.0)),
                Singularity::new(1.0, Complex64::ZERO, c(0.5, 0.0)),
                Singularity::new(2.0, Complex64::ZERO, c(0.125, 0.0)),
            ],
        )
        .unwrap();
        assert!((d.beta_seminorm() - 0.75).abs() < 1e-15);

        // no singular points at all
        let d = FHDescriptor::new(v.clone(), vec![Singularity::trivial(0.0)]).unwrap();
        assert_eq!(d.beta_seminorm(), 0.0);

        // validation: ordering, the z = 1 anchor, and the Re α bound
        assert!(FHDescriptor::new(v.clone(), vec![]).is_err());
        assert!(FHDescriptor::new(v.clone(), vec![Singularity::trivial(1.0)]).is_err());
        assert!(FHDescriptor::new(
            v.clone(),
            vec![
                Singularity::trivial(0.0),
                Singularity::new(2.0, Complex64::ZERO, c(0.5, 0.0)),
                Singularity::new(1.0, Complex64::ZERO, c(0.5, 0.0)),
            ],
        )
        .is_err());
        assert!(FHDescriptor::new(
            v,
            vec![Singularity::trivial(0.0), Singularity::new(1.0, c(-0.6, 0.0), c(0.5, 0.0))],
        )
        .is_err());
    }

    #[test]
    fn config_parser_round_trips_both_kinds() {
        let text = "# asymmetric smooth example\n\
                    kind = smooth\n\
                    K = 16\n\
                    v0 = 0.0\n\
                    v1 = -0.5 -0.075\n\
                    v2 = 0.0 0.0375\n";
        let Symbol::Smooth(sym) = parse_symbol_config(text).unwrap() else {
            panic!("expected a smooth symbol");
        };
        assert_eq!(sym.truncation(), 16);
        let reference = asym_symbol();
        for theta in [0.7, 1.9, 3.3, 5.1] {
            assert!((sym.f_at(theta) - reference.f_at(theta)).abs() < 1e-13);
        }

        let text = "kind = two-level\ntheta1 = 1.0\ntheta2 = 2.5\ngamma = 0.25\n";
        let Symbol::TwoLevel(s) = parse_symbol_config(text).unwrap() else {
            panic!("expected a two-level symbol");
        };
        assert_eq!((s.theta1(), s.theta2(), s.gamma()), (1.0, 2.5, 0.25));
        assert!(s.rational_arc().is_none());

        let text = "kind = two-level\np = 1\nq = 4\ngamma = 0.25\n";
        let Symbol::TwoLevel(s) = parse_symbol_config(text).unwrap() else {
            panic!("expected a two-level symbol");
        };
        assert_eq!(s.near_period().unwrap(), 4);
        assert!((s.theta1() - 0.75 * PI).abs() < 1e-15);
        assert!((s.theta2() - 1.25 * PI).abs() < 1e-15);
    }

    #[test]
    fn config_parser_rejects_malformed_input() {
        for bad in [
            "kind = sawtooth\n",
            "v1 = -0.5\n",                                       // missing kind
            "kind = smooth\nv1 = abc\n",                          // not a number
            "kind = smooth\nv-1 = 0.5\n",                         // negative index
            "kind = smooth\nw1 = 0.5\n",                          // unknown key
            "kind = smooth\nv1 = 1 2 3\n",                        // too many parts
            "kind = smooth\nv1 = -0.5\nv1 = -0.4\n",              // duplicate
            "kind = two-level\ngamma = 0.2\n",                    // no angles, no arc
            "kind = two-level\ngamma = 0.2\ntheta1 = 1.0\n",      // half a pair
            "kind = two-level\ntheta1 = 1.0\ntheta2 = 2.0\n",     // missing gamma
            "kind = two-level\ngamma = 0.2\ntheta1 = 1\ntheta2 = 2\np = 1\nq = 4\n",
            "kind = two-level\ngamma = 0.2\np = 1\nq = 4\nfoo = 1\n",
            "just some text\n",
        ] {
            assert!(parse_symbol_config(bad).is_err(), "should reject: {bad:?}");
        }
    }
}
