//! Rectangular truncation of the ambient space H²(𝔻²) ⊕ H²(𝔻) ⊕ ℂ.
//!
//! A [`Truncation`] fixes the maximal monomial degrees kept in each summand
//! together with the tolerance used for orthogonality and residual
//! assertions. Every truncation is fixed for the lifetime of an experiment;
//! operations that could raise degrees past the bound report overflow
//! instead of silently dropping mass.

use crate::error::{Error, Result};

/// Default tolerance for orthogonality and residual assertions.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    deg_z1: usize,
    deg_z2: usize,
    deg_z: usize,
    tol: f64,
}

impl Truncation {
    pub fn new(deg_z1: usize, deg_z2: usize, deg_z: usize, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::Validation(format!(
                "truncation tolerance must be positive, got {tol}"
            )));
        }
        Ok(Self {
            deg_z1,
            deg_z2,
            deg_z,
            tol,
        })
    }

    /// Cube truncation `deg × deg × deg` at the default tolerance.
    pub fn cube(deg: usize) -> Self {
        Self {
            deg_z1: deg,
            deg_z2: deg,
            deg_z: deg,
            tol: DEFAULT_TOL,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::Validation(format!(
                "truncation tolerance must be positive, got {tol}"
            )));
        }
        self.tol = tol;
        Ok(self)
    }

    pub fn deg_z1(&self) -> usize {
        self.deg_z1
    }

    pub fn deg_z2(&self) -> usize {
        self.deg_z2
    }

    pub fn deg_z(&self) -> usize {
        self.deg_z
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Number of retained bidisk monomials.
    pub fn dim_bidisk(&self) -> usize {
        (self.deg_z1 + 1) * (self.deg_z2 + 1)
    }

    /// Number of retained one-variable monomials.
    pub fn dim_disk(&self) -> usize {
        self.deg_z + 1
    }

    /// Dimension of the truncated ambient space (bidisk + disk + scalar).
    pub fn total_dim(&self) -> usize {
        self.dim_bidisk() + self.dim_disk() + 1
    }

    /// Canonical flat index of the bidisk monomial z₁ᵐ z₂ᵏ.
    ///
    /// Basis enumeration is fixed crate-wide: bidisk monomials ordered by
    /// (m, then k) ascending, then disk monomials by degree, then the
    /// scalar slot.
    pub fn index_bidisk(&self, m: usize, k: usize) -> usize {
        debug_assert!(m <= self.deg_z1 && k <= self.deg_z2);
        m * (self.deg_z2 + 1) + k
    }

    /// Canonical flat index of the disk monomial zᵏ.
    pub fn index_disk(&self, k: usize) -> usize {
        debug_assert!(k <= self.deg_z);
        self.dim_bidisk() + k
    }

    /// Canonical flat index of the scalar slot.
    pub fn index_scalar(&self) -> usize {
        self.dim_bidisk() + self.dim_disk()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_contiguous() {
        let t = Truncation::new(2, 3, 4, 1e-10).unwrap();
        let mut seen = vec![false; t.total_dim()];
        for m in 0..=2 {
            for k in 0..=3 {
                seen[t.index_bidisk(m, k)] = true;
            }
        }
        for k in 0..=4 {
            seen[t.index_disk(k)] = true;
        }
        seen[t.index_scalar()] = true;
        assert!(seen.iter().all(|&s| s));
        assert_eq!(t.total_dim(), 12 + 5 + 1);
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        assert!(Truncation::new(1, 1, 1, 0.0).is_err());
        assert!(Truncation::new(1, 1, 1, -1e-3).is_err());
    }
}
