//! Modified Gram–Schmidt with reorthogonalization, shared by every module
//! that builds or probes orthonormal families.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hardy::{HardyVec1, HardyVec2, StateVec};

/// Minimal inner-product-space interface. Implementations assume shape
/// compatibility has been checked by the caller.
pub trait InnerSpace: Clone {
    /// ⟨self, other⟩, linear in the first argument.
    fn dot(&self, other: &Self) -> Complex64;
    fn scale_mut(&mut self, s: Complex64);
    /// self ← self + a·x.
    fn axpy_mut(&mut self, a: Complex64, x: &Self);

    fn norm_sq(&self) -> f64 {
        self.dot(self).re
    }

    fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }
}

impl InnerSpace for HardyVec1 {
    fn dot(&self, other: &Self) -> Complex64 {
        self.inner(other).expect("shape-checked by caller")
    }
    fn scale_mut(&mut self, s: Complex64) {
        HardyVec1::scale_mut(self, s)
    }
    fn axpy_mut(&mut self, a: Complex64, x: &Self) {
        HardyVec1::axpy_mut(self, a, x)
    }
}

impl InnerSpace for HardyVec2 {
    fn dot(&self, other: &Self) -> Complex64 {
        self.inner(other).expect("shape-checked by caller")
    }
    fn scale_mut(&mut self, s: Complex64) {
        HardyVec2::scale_mut(self, s)
    }
    fn axpy_mut(&mut self, a: Complex64, x: &Self) {
        HardyVec2::axpy_mut(self, a, x)
    }
}

impl InnerSpace for StateVec {
    fn dot(&self, other: &Self) -> Complex64 {
        self.inner(other).expect("shape-checked by caller")
    }
    fn scale_mut(&mut self, s: Complex64) {
        StateVec::scale_mut(self, s)
    }
    fn axpy_mut(&mut self, a: Complex64, x: &Self) {
        StateVec::axpy_mut(self, a, x)
    }
}

/// Subtract from `v` its projections onto the orthonormal family `basis`.
/// A second pass runs whenever any projection coefficient exceeds half the
/// incoming norm, which guards against rounding on nearly dependent input.
pub fn project_out<V: InnerSpace>(v: &mut V, basis: &[V]) {
    let before = v.norm();
    let mut reorthogonalize = false;
    for b in basis {
        let c = v.dot(b);
        if c.norm() > 0.5 * before {
            reorthogonalize = true;
        }
        v.axpy_mut(-c, b);
    }
    if reorthogonalize {
        for b in basis {
            let c = v.dot(b);
            v.axpy_mut(-c, b);
        }
    }
}

/// Coefficients ⟨v, basisᵢ⟩ of the projection onto an orthonormal family.
pub fn projection_coefficients<V: InnerSpace>(v: &V, basis: &[V]) -> Vec<Complex64> {
    basis.iter().map(|b| v.dot(b)).collect()
}

/// Norm of v − P v with P the projection onto the orthonormal `basis`.
pub fn residual_norm<V: InnerSpace>(v: &V, basis: &[V]) -> f64 {
    let mut r = v.clone();
    project_out(&mut r, basis);
    r.norm()
}

/// Orthonormalize `vs` in place by modified Gram–Schmidt, expecting full
/// rank. Errors when a vector collapses below `cutoff` of its incoming
/// norm budget.
pub fn orthonormalize<V: InnerSpace>(vs: &mut [V], cutoff: f64) -> Result<()> {
    for i in 0..vs.len() {
        let (done, rest) = vs.split_at_mut(i);
        let v = &mut rest[0];
        project_out(v, done);
        let n = v.norm();
        if n <= cutoff {
            return Err(Error::Conditioning(format!(
                "vector {i} of {} lost full rank during orthonormalization (residual {n:.3e})",
                done.len() + rest.len()
            )));
        }
        v.scale_mut(Complex64::new(1.0 / n, 0.0));
    }
    Ok(())
}

/// Rank-revealing accumulation: feed candidates through MGS against the
/// vectors already kept, keeping those whose residual norm clears `cutoff`.
/// Returns the orthonormal family; its length is the numerical rank.
pub fn accumulate_rank<V: InnerSpace>(candidates: &[V], cutoff: f64) -> Vec<V> {
    let mut kept: Vec<V> = Vec::new();
    for cand in candidates {
        let mut v = cand.clone();
        project_out(&mut v, &kept);
        let n = v.norm();
        if n > cutoff {
            v.scale_mut(Complex64::new(1.0 / n, 0.0));
            kept.push(v);
        }
    }
    kept
}

/// Largest |⟨vᵢ, vⱼ⟩ − δᵢⱼ| over a family, for Gram-identity checks.
pub fn gram_defect<V: InnerSpace>(vs: &[V]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..vs.len() {
        for j in i..vs.len() {
            let g = vs[i].dot(&vs[j]);
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g - Complex64::new(target, 0.0)).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::c64;

    fn v(coeffs: &[(f64, f64)]) -> HardyVec1 {
        HardyVec1::from_coeffs(coeffs.iter().map(|&(re, im)| c64(re, im)).collect())
    }

    #[test]
    fn orthonormalize_small_family() {
        let mut vs = vec![
            v(&[(1.0, 0.0), (1.0, 0.0), (0.0, 0.0)]),
            v(&[(1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]),
            v(&[(0.0, 0.0), (1.0, 1.0), (1.0, 0.0)]),
        ];
        orthonormalize(&mut vs, 1e-12).unwrap();
        assert!(gram_defect(&vs) < 1e-14);
    }

    #[test]
    fn rank_deficiency_is_detected() {
        let mut vs = vec![
            v(&[(1.0, 0.0), (2.0, 0.0)]),
            v(&[(2.0, 0.0), (4.0, 0.0)]),
        ];
        assert!(orthonormalize(&mut vs, 1e-10).is_err());
    }

    #[test]
    fn accumulate_rank_counts_independent_directions() {
        let cands = vec![
            v(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]),
            v(&[(1.0, 0.0), (1e-14, 0.0), (0.0, 0.0)]),
            v(&[(0.0, 0.0), (0.0, 1.0), (0.0, 0.0)]),
        ];
        let kept = accumulate_rank(&cands, 1e-8);
        assert_eq!(kept.len(), 2);
        assert!(gram_defect(&kept) < 1e-14);
    }

    #[test]
    fn residual_norm_of_projected_vector_vanishes() {
        let mut basis = vec![
            v(&[(1.0, 0.0), (1.0, 0.0)]),
            v(&[(1.0, 0.0), (-1.0, 0.0)]),
        ];
        orthonormalize(&mut basis, 1e-12).unwrap();
        let target = v(&[(0.3, 0.7), (-2.0, 0.1)]);
        assert!(residual_norm(&target, &basis) < 1e-14);
    }
}
