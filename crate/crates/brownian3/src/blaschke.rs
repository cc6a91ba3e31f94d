//! Finite Blaschke products: the implemented family of inner functions.
//!
//! A product is a unimodular phase times factors (z − a)/(1 − āz) with
//! every zero a strictly inside the disk. The Taylor expansion of each
//! factor is geometric, so coefficients of the product are computed by
//! truncated convolution; since inner functions carry unit coefficient
//! mass, the exact ℓ² tail beyond any degree is 1 minus the partial mass.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hardy::HardyVec1;

/// Zeros must stay inside the disk by this margin so that boundary values
/// and series tails remain well conditioned.
pub const BOUNDARY_MARGIN: f64 = 1e-3;

const PHASE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    phase: Complex64,
    zeros: Vec<Complex64>,
}

impl BlaschkeProduct {
    /// Build from a unimodular phase and a zero list (with multiplicity).
    pub fn new(phase: Complex64, zeros: Vec<Complex64>) -> Result<Self> {
        if (phase.norm() - 1.0).abs() > PHASE_TOL {
            return Err(Error::Validation(format!(
                "phase must be unimodular, got |phase| = {}",
                phase.norm()
            )));
        }
        for (j, a) in zeros.iter().enumerate() {
            if a.norm() > 1.0 - BOUNDARY_MARGIN {
                return Err(Error::Validation(format!(
                    "zero #{j} = {a} violates the boundary margin |a| <= {}",
                    1.0 - BOUNDARY_MARGIN
                )));
            }
        }
        // normalize the phase exactly onto the circle
        let phase = phase / phase.norm();
        Ok(Self { phase, zeros })
    }

    /// Phase 1, given zeros.
    pub fn from_zeros(zeros: Vec<Complex64>) -> Result<Self> {
        Self::new(Complex64::new(1.0, 0.0), zeros)
    }

    /// φ(z) = zˢ.
    pub fn monomial(s: usize) -> Self {
        Self {
            phase: Complex64::new(1.0, 0.0),
            zeros: vec![Complex64::default(); s],
        }
    }

    /// Degree-0 product φ ≡ 1.
    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn phase(&self) -> Complex64 {
        self.phase
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    /// Blaschke degree = number of zeros with multiplicity.
    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn max_zero_modulus(&self) -> f64 {
        self.zeros.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Taylor coefficients up to degree `n`. Each factor expands as
    /// (z−a)·Σ (āz)ᵏ, i.e. coefficients −a, then āᵏ⁻¹(1−|a|²) for k ≥ 1.
    pub fn taylor_coeffs(&self, n: usize) -> HardyVec1 {
        let mut acc = vec![Complex64::default(); n + 1];
        acc[0] = self.phase;
        let mut scratch = vec![Complex64::default(); n + 1];
        for a in &self.zeros {
            let mut factor = vec![Complex64::default(); n + 1];
            factor[0] = -a;
            let abar = a.conj();
            let unit = Complex64::new(1.0 - a.norm_sqr(), 0.0);
            let mut pw = Complex64::new(1.0, 0.0);
            for k in 1..=n {
                factor[k] = pw * unit;
                pw *= abar;
            }
            for s in scratch.iter_mut() {
                *s = Complex64::default();
            }
            for (i, &ai) in acc.iter().enumerate() {
                if ai.norm_sqr() == 0.0 {
                    continue;
                }
                for (j, &fj) in factor.iter().take(n + 1 - i).enumerate() {
                    scratch[i + j] += ai * fj;
                }
            }
            std::mem::swap(&mut acc, &mut scratch);
        }
        HardyVec1::from_coeffs(acc)
    }

    /// Evaluate at a point strictly inside the disk.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut out = self.phase;
        for a in &self.zeros {
            out *= (z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z);
        }
        out
    }

    /// Boundary value φ(e^{iθ}); finite products extend continuously to
    /// the circle and the result is unimodular.
    pub fn eval_boundary(&self, theta: f64) -> Complex64 {
        self.eval(Complex64::from_polar(1.0, theta))
    }

    /// Exact ℓ² mass of the coefficient tail beyond degree `n`:
    /// 1 − Σ_{k≤n} |φₖ|² (inner functions have unit mass).
    pub fn tail_mass(&self, n: usize) -> f64 {
        let partial = self.taylor_coeffs(n).norm_sq();
        (1.0 - partial).max(0.0)
    }

    /// Smallest degree N with tail norm √(1 − partial mass) ≤ eps.
    /// For a monomial-zero product this is exactly the Blaschke degree.
    pub fn effective_degree(&self, eps: f64) -> Result<usize> {
        let d = self.degree();
        let r = self.max_zero_modulus();
        if r == 0.0 {
            return Ok(d);
        }
        // geometric decay bounds the search; leave generous headroom
        let mut hi = d + 8;
        loop {
            let coeffs = self.taylor_coeffs(hi);
            let mut mass = 0.0;
            for (n, c) in coeffs.coeffs().iter().enumerate() {
                mass += c.norm_sqr();
                if n >= d && (1.0 - mass).max(0.0).sqrt() <= eps {
                    return Ok(n);
                }
            }
            if hi > 100_000 {
                return Err(Error::Conditioning(format!(
                    "tail of the Blaschke product (max |zero| = {r}) does not reach {eps:.3e}"
                )));
            }
            hi *= 2;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::c64;
    use proptest::prelude::*;

    #[test]
    fn taylor_of_plain_shift() {
        let phi = BlaschkeProduct::monomial(1);
        let c = phi.taylor_coeffs(4);
        assert_eq!(c.coeff(0), c64(0.0, 0.0));
        assert_eq!(c.coeff(1), c64(1.0, 0.0));
        assert_eq!(c.coeff(2), c64(0.0, 0.0));
    }

    #[test]
    fn taylor_of_single_zero_half() {
        // geometric-series oracle (z − 1/2)·Σ (z/2)^n
        let phi = BlaschkeProduct::from_zeros(vec![c64(0.5, 0.0)]).unwrap();
        let c = phi.taylor_coeffs(3);
        let expected = [-0.5, 0.75, 0.375, 0.1875];
        for (k, &e) in expected.iter().enumerate() {
            assert!((c.coeff(k) - c64(e, 0.0)).norm() < 1e-15, "k = {k}");
        }
    }

    #[test]
    fn taylor_of_z_squared() {
        let phi = BlaschkeProduct::monomial(2);
        let c = phi.taylor_coeffs(4);
        for k in 0..=4 {
            let want = if k == 2 { 1.0 } else { 0.0 };
            assert_eq!(c.coeff(k), c64(want, 0.0));
        }
    }

    #[test]
    fn coefficient_mass_is_contractive() {
        let phi = BlaschkeProduct::from_zeros(vec![
            c64(0.5, 0.0),
            c64(-0.3, 0.4),
            c64(0.0, 0.7),
        ])
        .unwrap();
        let c = phi.taylor_coeffs(200);
        let mut mass = 0.0;
        for k in 0..=200 {
            mass += c.coeff(k).norm_sqr();
            assert!(mass <= 1.0 + 1e-12, "partial mass exceeded 1 at degree {k}");
        }
        assert!(mass > 1.0 - 1e-12, "mass should approach 1 for a deep expansion");
    }

    #[test]
    fn boundary_values_examples() {
        let phi = BlaschkeProduct::monomial(1);
        assert!((phi.eval_boundary(0.0) - c64(1.0, 0.0)).norm() < 1e-15);

        let phi2 = BlaschkeProduct::monomial(2);
        assert!((phi2.eval_boundary(std::f64::consts::PI) - c64(1.0, 0.0)).norm() < 1e-14);

        let half = BlaschkeProduct::from_zeros(vec![c64(0.5, 0.0)]).unwrap();
        assert!((half.eval_boundary(0.0) - c64(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn zeros_on_the_margin_are_rejected() {
        assert!(BlaschkeProduct::from_zeros(vec![c64(0.9995, 0.0)]).is_err());
        assert!(BlaschkeProduct::from_zeros(vec![c64(1.2, 0.0)]).is_err());
        assert!(BlaschkeProduct::new(c64(0.5, 0.0), vec![]).is_err());
    }

    #[test]
    fn effective_degree_of_polynomial_is_its_degree() {
        assert_eq!(BlaschkeProduct::monomial(3).effective_degree(1e-12).unwrap(), 3);
        assert_eq!(BlaschkeProduct::one().effective_degree(1e-12).unwrap(), 0);
    }

    #[test]
    fn effective_degree_tracks_tail_decay() {
        let phi = BlaschkeProduct::from_zeros(vec![c64(0.5, 0.0)]).unwrap();
        let n = phi.effective_degree(1e-10).unwrap();
        assert!(phi.tail_mass(n).sqrt() <= 1e-10);
        assert!(n > 1 && n < 60);
    }

    proptest! {
        #[test]
        fn boundary_values_are_unimodular(
            theta in 0.0..(2.0 * std::f64::consts::PI),
            re in -0.6f64..0.6, im in -0.6f64..0.6,
        ) {
            let phi = BlaschkeProduct::from_zeros(vec![c64(re, im), c64(-0.25, 0.1)]).unwrap();
            let v = phi.eval_boundary(theta);
            prop_assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }
}
