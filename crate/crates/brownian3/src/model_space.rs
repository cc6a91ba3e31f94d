//! Numerical model spaces K_φ = H²(𝔻) ⊖ φH²(𝔻) at a working truncation.
//!
//! The basis is obtained as the orthogonal complement of the truncated
//! family {φ·zᵏ} by rank-revealing orthogonalization, so repeated zeros
//! need no special casing. Kernel formulas serve only as test oracles.

use num_complex::Complex64;

use crate::blaschke::BlaschkeProduct;
use crate::error::{Error, Result};
use crate::gram::{self, InnerSpace};
use crate::hardy::HardyVec1;
use crate::trunc::Truncation;

/// Residual cutoff separating accepted complement directions from noise.
pub const RANK_CUTOFF: f64 = 1e-6;

/// Orthonormal basis of K_φ inside the truncated H²(𝔻).
#[derive(Debug, Clone)]
pub struct ModelSpaceBasis {
    columns: Vec<HardyVec1>,
    phi_degree: usize,
}

impl ModelSpaceBasis {
    pub fn columns(&self) -> &[HardyVec1] {
        &self.columns
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn phi_degree(&self) -> usize {
        self.phi_degree
    }

    /// Orthogonal projection onto the span of the basis.
    pub fn project(&self, f: &HardyVec1) -> HardyVec1 {
        let mut out = HardyVec1::zeros(f.deg());
        for col in &self.columns {
            let c = f.dot(col);
            out.axpy_mut(c, col);
        }
        out
    }

    /// ‖f − P f‖ with P the projection onto the basis span.
    pub fn residual(&self, f: &HardyVec1) -> f64 {
        gram::residual_norm(f, &self.columns)
    }
}

/// Orthonormal spanning family of the truncated φH²(𝔻): φ·zᵏ for all k
/// keeping the product inside the degree bound at tolerance `tail_eps`.
pub(crate) fn shifted_phi_family(
    phi: &BlaschkeProduct,
    deg_z: usize,
    tail_eps: f64,
) -> Result<Vec<HardyVec1>> {
    let n_eff = phi.effective_degree(tail_eps)?;
    if n_eff > deg_z {
        return Err(Error::Conditioning(format!(
            "degree bound {deg_z} cannot hold the product (effective degree {n_eff} at {tail_eps:.1e}; zeros {:?})",
            phi.zeros()
        )));
    }
    let coeffs = phi.taylor_coeffs(deg_z);
    let mut family = Vec::with_capacity(deg_z - n_eff + 1);
    for k in 0..=(deg_z - n_eff) {
        let mut v = HardyVec1::zeros(deg_z);
        for n in 0..=(deg_z - k) {
            v.set(n + k, coeffs.coeff(n));
        }
        family.push(v);
    }
    Ok(family)
}

/// Orthonormal basis of the complement of span{φ·zᵏ} in truncated H²(𝔻).
/// The dimension equals the Blaschke degree of φ.
pub fn model_space_basis(phi: &BlaschkeProduct, trunc: &Truncation) -> Result<ModelSpaceBasis> {
    let d = phi.degree();
    let deg_z = trunc.deg_z();
    if d == 0 {
        return Ok(ModelSpaceBasis {
            columns: Vec::new(),
            phi_degree: 0,
        });
    }
    let mut spanners = shifted_phi_family(phi, deg_z, 0.1 * trunc.tol())?;
    gram::orthonormalize(&mut spanners, RANK_CUTOFF).map_err(|_| {
        Error::Conditioning(format!(
            "shifted products of φ with zeros {:?} are numerically dependent",
            phi.zeros()
        ))
    })?;

    let mut columns: Vec<HardyVec1> = Vec::with_capacity(d);
    for j in 0..=deg_z {
        let mut cand = HardyVec1::monomial(j, deg_z)?;
        gram::project_out(&mut cand, &spanners);
        gram::project_out(&mut cand, &columns);
        let n = cand.norm();
        if n > RANK_CUTOFF {
            cand.scale_mut(Complex64::new(1.0 / n, 0.0));
            columns.push(cand);
        } else if n > trunc.tol().sqrt() * 1e-2 && n <= RANK_CUTOFF {
            return Err(Error::Conditioning(format!(
                "ambiguous complement direction (residual {n:.3e}) for zeros {:?}",
                phi.zeros()
            )));
        }
    }
    if columns.len() != d {
        return Err(Error::Conditioning(format!(
            "numerical dimension {} of the model space differs from the Blaschke degree {d} (zeros {:?})",
            columns.len(),
            phi.zeros()
        )));
    }
    Ok(ModelSpaceBasis {
        columns,
        phi_degree: d,
    })
}
