//! FFT-based Fourier analysis of functions on the unit circle, plus pointwise
//! evaluation of the Wiener–Hopf factors b_± built from those coefficients.
//!
//! Conventions: V_k = (1/2π) ∫ V(e^{iθ}) e^{−ikθ} dθ, approximated on an
//! N-point uniform grid by (1/N) Σ_ℓ V(θ_ℓ) e^{−ikθ_ℓ}, θ_ℓ = 2πℓ/N. For the
//! analytic symbols this library works with, the aliasing error decays
//! geometrically in N − |k|, which is why grids carry a 4× anti-aliasing
//! margin over the largest requested k.

use crate::error::{Result, SpectraError};
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::cell::RefCell;

pub const DEFAULT_GRID_SIZE: usize = 8192;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Uniform power-of-two sampling of a (possibly complex-valued) function on
/// the circle, θ_ℓ = 2πℓ/size.
pub struct CircleGrid {
    samples: Vec<Complex64>,
}

impl CircleGrid {
    pub fn from_fn(size: usize, mut f: impl FnMut(f64) -> Complex64) -> Result<Self> {
        if size < 4 || !size.is_power_of_two() {
            return Err(SpectraError::Validation(format!(
                "grid size must be a power of two >= 4, got {size}"
            )));
        }
        let step = 2.0 * std::f64::consts::PI / size as f64;
        let samples: Vec<Complex64> = (0..size).map(|l| f(l as f64 * step)).collect();
        if samples.iter().any(|s| !s.re.is_finite() || !s.im.is_finite()) {
            return Err(SpectraError::Domain("non-finite sample on circle grid".into()));
        }
        Ok(CircleGrid { samples })
    }

    pub fn from_real_fn(size: usize, mut f: impl FnMut(f64) -> f64) -> Result<Self> {
        Self::from_fn(size, |t| Complex64::new(f(t), 0.0))
    }

    /// Wraps samples already laid out on the uniform grid θ_l = 2πl/size.
    pub fn from_samples(samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() < 4 || !samples.len().is_power_of_two() {
            return Err(SpectraError::Validation(format!(
                "grid size must be a power of two >= 4, got {}",
                samples.len()
            )));
        }
        if samples.iter().any(|s| !s.re.is_finite() || !s.im.is_finite()) {
            return Err(SpectraError::Domain("non-finite sample on circle grid".into()));
        }
        Ok(CircleGrid { samples })
    }

    pub fn size(&self) -> usize {
        self.samples.len()
    }

    /// Mean of |V|² over the grid — the right-hand side of Parseval.
    pub fn mean_abs2(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() / self.samples.len() as f64
    }

    /// Discrete Fourier coefficients for k ∈ [−k_max, k_max].
    ///
    /// Requires size ≥ 4·k_max so that the coefficients near ±k_max keep an
    /// anti-aliasing margin; band-limited inputs of bandwidth ≤ k_max come
    /// back exact to rounding.
    pub fn fourier_coeffs(&self, k_max: usize) -> Result<FourierCoeffs> {
        let n = self.samples.len();
        if n < 4 * k_max.max(1) {
            return Err(SpectraError::Validation(format!(
                "grid of size {n} too small for k_max {k_max} (need >= {})",
                4 * k_max
            )));
        }
        let mut buf = self.samples.clone();
        PLANNER.with(|p| {
            let fft = p.borrow_mut().plan_fft_forward(n);
            fft.process(&mut buf);
        });
        let scale = 1.0 / n as f64;
        let c = (-(k_max as i64)..=k_max as i64)
            .map(|k| buf[k.rem_euclid(n as i64) as usize] * scale)
            .collect();
        Ok(FourierCoeffs { k_max, c })
    }
}

/// Fourier coefficients V_k on the symmetric window k ∈ [−k_max, k_max].
#[derive(Clone, Debug)]
pub struct FourierCoeffs {
    k_max: usize,
    /// c[i] holds V_{i − k_max}.
    c: Vec<Complex64>,
}

impl FourierCoeffs {
    /// Build from a closed-form coefficient function (used by symbols whose
    /// Fourier data is known analytically).
    pub fn from_closed_form(k_max: usize, mut f: impl FnMut(i64) -> Complex64) -> Self {
        let c = (-(k_max as i64)..=k_max as i64).map(&mut f).collect();
        FourierCoeffs { k_max, c }
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// V_k, with k outside the stored window reading as 0.
    pub fn get(&self, k: i64) -> Complex64 {
        let idx = k + self.k_max as i64;
        if idx < 0 || idx >= self.c.len() as i64 {
            Complex64::new(0.0, 0.0)
        } else {
            self.c[idx as usize]
        }
    }

    /// Σ_{k=1..K} k V_k V_{−k} together with a crude tail estimate for the
    /// truncated part, derived from the geometric decay of the last terms.
    pub fn weighted_pair_sum(&self) -> (Complex64, f64) {
        let k = self.k_max as i64;
        let mut s = Complex64::new(0.0, 0.0);
        for j in 1..=k {
            s += j as f64 * self.get(j) * self.get(-j);
        }
        (s, self.tail_estimate(|j| (j as f64 * self.get(j) * self.get(-j)).norm()))
    }

    /// Σ_{k=1..K} k |V_k|² with the same style of tail estimate.
    pub fn weighted_abs2_sum(&self) -> (f64, f64) {
        let k = self.k_max as i64;
        let mut s = 0.0;
        for j in 1..=k {
            s += j as f64 * self.get(j).norm_sqr();
        }
        (s, self.tail_estimate(|j| j as f64 * self.get(j).norm_sqr()))
    }

    /// Plain Parseval sum Σ_{|k| ≤ K} |V_k|².
    pub fn abs2_sum(&self) -> f64 {
        self.c.iter().map(|v| v.norm_sqr()).sum()
    }

    /// Estimate Σ_{j > K} t_j from the last stored terms, assuming geometric
    /// decay; falls back to a pessimistic K·t_K if the terms are not decaying.
    fn tail_estimate(&self, term: impl Fn(i64) -> f64) -> f64 {
        let k = self.k_max as i64;
        if k < 8 {
            return f64::INFINITY;
        }
        let last = term(k);
        let prev = term(k - 4);
        if last == 0.0 {
            return 0.0;
        }
        let ratio = (last / prev).powf(0.25);
        if ratio.is_finite() && ratio < 0.95 {
            last * ratio / (1.0 - ratio)
        } else {
            last * k as f64
        }
    }
}

/// Logarithms of the Wiener–Hopf factors at a point z on the unit circle:
/// the pair (Σ_{k≥1} V_k z^k, Σ_{k≤−1} V_k z^k) = (ln b_+(z), ln b_−(z)).
/// Returning the sums themselves lets callers combine them linearly in log
/// space without any exp/ln round trip and its branch ambiguity.
pub fn wiener_hopf_log_parts(v: &FourierCoeffs, z: Complex64) -> (Complex64, Complex64) {
    let k = v.k_max() as i64;
    let mut sp = Complex64::new(0.0, 0.0);
    let mut sm = Complex64::new(0.0, 0.0);
    // Horner-style accumulation from the high end keeps the powers stable.
    let zinv = 1.0 / z;
    for j in (1..=k).rev() {
        sp = (sp + v.get(j)) * z;
        sm = (sm + v.get(-j)) * zinv;
    }
    (sp, sm)
}

/// Evaluate the Wiener–Hopf factors at a point z on the unit circle:
/// b_+(z) = exp(Σ_{k≥1} V_k z^k), b_−(z) = exp(Σ_{k≤−1} V_k z^k), so that
/// b_+(z) e^{V_0} b_−(z) = e^{V(z)} up to the truncation tail.
pub fn wiener_hopf_eval(v: &FourierCoeffs, z: Complex64) -> (Complex64, Complex64) {
    let (sp, sm) = wiener_hopf_log_parts(v, z);
    (sp.exp(), sm.exp())
}
