//! The distinguished model-space element g generating the extra line of a
//! Type II invariant subspace,
//!
//!   g(z) = σ · (conj(φ(e^{iθ})) φ(z) − 1) / (z − e^{iθ}).
//!
//! Coefficients follow from the defining identity
//! g(z)(z − e^{iθ}) = σ(c̄ φ(z) − 1), c = φ(e^{iθ}), which gives the
//! recurrence g₀ = −e^{−iθ} σ(c̄ φ₀ − 1), gₙ = e^{−iθ}(gₙ₋₁ − σ c̄ φₙ).
//! The numerator vanishes on the circle at e^{iθ}, so the quotient is
//! analytic past the closed disk and its tail decays geometrically at the
//! rate of the largest zero modulus.

use num_complex::Complex64;

use crate::blaschke::BlaschkeProduct;
use crate::error::{Error, Result};
use crate::hardy::HardyVec1;
use crate::model_space::model_space_basis;
use crate::trunc::Truncation;

#[derive(Debug, Clone)]
pub struct GFunction {
    series: HardyVec1,
    norm: f64,
    sigma: f64,
    theta: f64,
    boundary_value: Complex64,
}

impl GFunction {
    pub fn series(&self) -> &HardyVec1 {
        &self.series
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// φ(e^{iθ}), the boundary value entering the definition.
    pub fn boundary_value(&self) -> Complex64 {
        self.boundary_value
    }
}

/// Truncated Taylor series of g to degree `n`.
pub fn g_function(
    phi: &BlaschkeProduct,
    sigma: f64,
    theta: f64,
    n: usize,
) -> Result<GFunction> {
    if !(sigma > 0.0) {
        return Err(Error::Validation(format!(
            "covariance parameter must be positive, got {sigma}"
        )));
    }
    let c = phi.eval_boundary(theta);
    let phase_back = Complex64::from_polar(1.0, -theta);
    let phi_coeffs = phi.taylor_coeffs(n);
    let cbar = c.conj();
    let mut series = HardyVec1::zeros(n);
    let mut prev = -phase_back * sigma * (cbar * phi_coeffs.coeff(0) - Complex64::new(1.0, 0.0));
    series.set(0, prev);
    for k in 1..=n {
        let cur = phase_back * (prev - sigma * cbar * phi_coeffs.coeff(k));
        series.set(k, cur);
        prev = cur;
    }

    // The tail must decay; a growing tail signals an invalid boundary
    // value or loss of cancellation.
    if n >= 8 {
        let head_max = (0..=n / 2)
            .map(|k| series.coeff(k).norm())
            .fold(0.0, f64::max);
        let tail_start = n - n / 4;
        let tail_max = (tail_start..=n)
            .map(|k| series.coeff(k).norm())
            .fold(0.0, f64::max);
        let scale = sigma.max(head_max);
        if tail_max > head_max + 1e-9 * scale && tail_max > 1e-9 * scale {
            return Err(Error::Instability(format!(
                "g-series tail grows (head max {head_max:.3e}, tail max {tail_max:.3e})"
            )));
        }
    }

    let norm = series.norm();
    Ok(GFunction {
        series,
        norm,
        sigma,
        theta,
        boundary_value: c,
    })
}

/// Numerical certificate that g ⊥ φH²(𝔻) and g ∈ K_φ at the truncation.
#[derive(Debug, Clone)]
pub struct GCheckReport {
    /// max |⟨g, φ·zᵏ⟩| over every safe shift k.
    pub max_shift_inner: f64,
    /// ‖g − P_{K_φ} g‖ with P the projection onto the model-space basis.
    pub model_residual: f64,
    /// Largest shift exponent exercised.
    pub safe_k_max: usize,
    /// Tolerance both residuals are compared against.
    pub tol: f64,
    pub pass: bool,
}

/// Check a computed g-function against the model space of φ.
pub fn check_g(g: &GFunction, phi: &BlaschkeProduct, trunc: &Truncation) -> Result<GCheckReport> {
    let deg_z = trunc.deg_z();
    let series = g.series().resized(deg_z, trunc.tol())?;
    let n_eff = phi.effective_degree(0.1 * trunc.tol())?;
    if n_eff > deg_z {
        return Err(Error::Conditioning(format!(
            "degree bound {deg_z} too small for φ (effective degree {n_eff})"
        )));
    }
    let phi_coeffs = phi.taylor_coeffs(deg_z);
    let safe_k_max = deg_z - n_eff;
    let mut max_shift_inner = 0.0f64;
    for k in 0..=safe_k_max {
        let mut shifted = HardyVec1::zeros(deg_z);
        for n in 0..=(deg_z - k) {
            shifted.set(n + k, phi_coeffs.coeff(n));
        }
        max_shift_inner = max_shift_inner.max(series.inner(&shifted)?.norm());
    }
    let model_residual = if phi.degree() == 0 {
        series.norm()
    } else {
        model_space_basis(phi, trunc)?.residual(&series)
    };
    let tol = trunc.tol();
    Ok(GCheckReport {
        max_shift_inner,
        model_residual,
        safe_k_max,
        tol,
        pass: max_shift_inner < tol && model_residual < tol,
    })
}
