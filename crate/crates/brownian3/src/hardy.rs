//! Truncated Hardy-space vectors and the elementary maps between them.
//!
//! `HardyVec1` holds the Taylor coefficients a₀..a_N of an element of
//! H²(𝔻), `HardyVec2` the bidegree-indexed coefficients of an element of
//! H²(𝔻²), and `StateVec` an element (F, f, α) of the orthogonal direct
//! sum H²(𝔻²) ⊕ H²(𝔻) ⊕ ℂ. All values are immutable after construction;
//! norms are the ℓ² norms of the stored coefficients.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::trunc::Truncation;

pub(crate) fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Element of truncated H²(𝔻): coefficients a₀..a_N.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyVec1 {
    coeffs: Vec<Complex64>,
}

impl HardyVec1 {
    pub fn zeros(deg: usize) -> Self {
        Self {
            coeffs: vec![Complex64::default(); deg + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a HardyVec1 holds at least a₀");
        Self { coeffs }
    }

    pub fn from_reals(re: &[f64]) -> Self {
        Self::from_coeffs(re.iter().map(|&x| c64(x, 0.0)).collect())
    }

    /// The monomial zᵏ at truncation degree `deg`.
    pub fn monomial(k: usize, deg: usize) -> Result<Self> {
        if k > deg {
            return Err(Error::Truncation {
                context: format!("monomial z^{k} at degree bound {deg}"),
                lost_mass: 1.0,
            });
        }
        let mut v = Self::zeros(deg);
        v.coeffs[k] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn set(&mut self, k: usize, v: Complex64) {
        self.coeffs[k] = v;
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// ⟨self, other⟩ = Σ aₖ conj(bₖ); errors when lengths differ.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::Dimension(format!(
                "HardyVec1 lengths {} vs {}",
                self.coeffs.len(),
                other.coeffs.len()
            )));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn scale_mut(&mut self, s: Complex64) {
        for c in &mut self.coeffs {
            *c *= s;
        }
    }

    /// self ← self + a·x.
    pub fn axpy_mut(&mut self, a: Complex64, x: &Self) {
        debug_assert_eq!(self.coeffs.len(), x.coeffs.len());
        for (c, xc) in self.coeffs.iter_mut().zip(&x.coeffs) {
            *c += a * xc;
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::Dimension("HardyVec1 subtraction".into()));
        }
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Multiplication by z (the unilateral shift). The truncated top slot
    /// must hold mass at most `tol`, otherwise the lost mass is reported.
    pub fn mul_z(&self, tol: f64) -> Result<Self> {
        let lost = self.coeffs[self.deg()].norm();
        if lost > tol {
            return Err(Error::Truncation {
                context: "mul_z".into(),
                lost_mass: lost,
            });
        }
        Ok(self.mul_z_lossy().0)
    }

    /// Shift up by one slot unconditionally, returning the dropped mass.
    pub fn mul_z_lossy(&self) -> (Self, f64) {
        let n = self.coeffs.len();
        let mut out = vec![Complex64::default(); n];
        out[1..n].copy_from_slice(&self.coeffs[..n - 1]);
        (Self { coeffs: out }, self.coeffs[n - 1].norm())
    }

    /// The backward shift S*: drops a₀ and moves everything down. Exact.
    pub fn backshift(&self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Complex64::default(); n];
        out[..n - 1].copy_from_slice(&self.coeffs[1..]);
        Self { coeffs: out }
    }

    /// Re-truncate to a new degree bound. Growing pads with zeros;
    /// shrinking requires the dropped tail to stay below `tol`.
    pub fn resized(&self, new_deg: usize, tol: f64) -> Result<Self> {
        if new_deg >= self.deg() {
            let mut out = self.coeffs.clone();
            out.resize(new_deg + 1, Complex64::default());
            return Ok(Self { coeffs: out });
        }
        let lost: f64 = self.coeffs[new_deg + 1..]
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt();
        if lost > tol {
            return Err(Error::Truncation {
                context: format!("resize to degree {new_deg}"),
                lost_mass: lost,
            });
        }
        Ok(Self {
            coeffs: self.coeffs[..=new_deg].to_vec(),
        })
    }

    /// Largest index carrying a coefficient above `tol`, if any.
    pub fn max_degree(&self, tol: f64) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.norm() > tol)
    }
}

/// Element of truncated H²(𝔻²): coefficients a_{m,k}, 0 ≤ m ≤ deg_z1,
/// 0 ≤ k ≤ deg_z2, stored row-major in m.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyVec2 {
    deg_z1: usize,
    deg_z2: usize,
    coeffs: Vec<Complex64>,
}

impl HardyVec2 {
    pub fn zeros(deg_z1: usize, deg_z2: usize) -> Self {
        Self {
            deg_z1,
            deg_z2,
            coeffs: vec![Complex64::default(); (deg_z1 + 1) * (deg_z2 + 1)],
        }
    }

    pub fn zeros_for(trunc: &Truncation) -> Self {
        Self::zeros(trunc.deg_z1(), trunc.deg_z2())
    }

    /// The monomial z₁ᵐ z₂ᵏ.
    pub fn monomial(m: usize, k: usize, trunc: &Truncation) -> Result<Self> {
        if m > trunc.deg_z1() || k > trunc.deg_z2() {
            return Err(Error::Truncation {
                context: format!("monomial z1^{m} z2^{k}"),
                lost_mass: 1.0,
            });
        }
        let mut v = Self::zeros_for(trunc);
        let idx = v.flat(m, k);
        v.coeffs[idx] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    fn flat(&self, m: usize, k: usize) -> usize {
        debug_assert!(m <= self.deg_z1 && k <= self.deg_z2);
        m * (self.deg_z2 + 1) + k
    }

    pub fn deg_z1(&self) -> usize {
        self.deg_z1
    }

    pub fn deg_z2(&self) -> usize {
        self.deg_z2
    }

    pub fn coeff(&self, m: usize, k: usize) -> Complex64 {
        if m > self.deg_z1 || k > self.deg_z2 {
            return Complex64::default();
        }
        self.coeffs[self.flat(m, k)]
    }

    pub fn set(&mut self, m: usize, k: usize, v: Complex64) {
        let idx = self.flat(m, k);
        self.coeffs[idx] = v;
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.deg_z1 == other.deg_z1 && self.deg_z2 == other.deg_z2
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if !self.same_shape(other) {
            return Err(Error::Dimension(format!(
                "HardyVec2 shapes {}x{} vs {}x{}",
                self.deg_z1, self.deg_z2, other.deg_z1, other.deg_z2
            )));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    pub fn scale_mut(&mut self, s: Complex64) {
        for c in &mut self.coeffs {
            *c *= s;
        }
    }

    pub fn axpy_mut(&mut self, a: Complex64, x: &Self) {
        debug_assert!(self.same_shape(x));
        for (c, xc) in self.coeffs.iter_mut().zip(&x.coeffs) {
            *c += a * xc;
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if !self.same_shape(other) {
            return Err(Error::Dimension("HardyVec2 subtraction".into()));
        }
        Ok(Self {
            deg_z1: self.deg_z1,
            deg_z2: self.deg_z2,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Multiplication by z₁. The top z₁-row must hold mass at most `tol`.
    pub fn mul_z1(&self, tol: f64) -> Result<Self> {
        let (out, lost) = self.mul_z1_lossy();
        if lost > tol {
            return Err(Error::Truncation {
                context: "mul_z1".into(),
                lost_mass: lost,
            });
        }
        Ok(out)
    }

    pub fn mul_z1_lossy(&self) -> (Self, f64) {
        let w = self.deg_z2 + 1;
        let mut out = vec![Complex64::default(); self.coeffs.len()];
        out[w..].copy_from_slice(&self.coeffs[..self.coeffs.len() - w]);
        let lost: f64 = self.coeffs[self.coeffs.len() - w..]
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt();
        (
            Self {
                deg_z1: self.deg_z1,
                deg_z2: self.deg_z2,
                coeffs: out,
            },
            lost,
        )
    }

    /// Multiplication by z₂. The top z₂-column must hold mass at most `tol`.
    pub fn mul_z2(&self, tol: f64) -> Result<Self> {
        let mut out = Self::zeros(self.deg_z1, self.deg_z2);
        let mut lost_sq = 0.0;
        for m in 0..=self.deg_z1 {
            lost_sq += self.coeff(m, self.deg_z2).norm_sqr();
            for k in 0..self.deg_z2 {
                out.set(m, k + 1, self.coeff(m, k));
            }
        }
        let lost = lost_sq.sqrt();
        if lost > tol {
            return Err(Error::Truncation {
                context: "mul_z2".into(),
                lost_mass: lost,
            });
        }
        Ok(out)
    }

    /// The backward shift in z₁ (adjoint of mul_z1 on the truncated space).
    pub fn backshift_z1(&self) -> Self {
        let w = self.deg_z2 + 1;
        let mut out = vec![Complex64::default(); self.coeffs.len()];
        out[..self.coeffs.len() - w].copy_from_slice(&self.coeffs[w..]);
        Self {
            deg_z1: self.deg_z1,
            deg_z2: self.deg_z2,
            coeffs: out,
        }
    }

    /// Exchange the two variables; requires a square truncation.
    pub fn swap_vars(&self) -> Result<Self> {
        if self.deg_z1 != self.deg_z2 {
            return Err(Error::Dimension(format!(
                "swap_vars needs a square truncation, got {}x{}",
                self.deg_z1, self.deg_z2
            )));
        }
        let mut out = Self::zeros(self.deg_z1, self.deg_z2);
        for m in 0..=self.deg_z1 {
            for k in 0..=self.deg_z2 {
                out.set(k, m, self.coeff(m, k));
            }
        }
        Ok(out)
    }

    /// Largest (z₁-degree, z₂-degree) carrying coefficients above `tol`.
    pub fn max_degrees(&self, tol: f64) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for m in 0..=self.deg_z1 {
            for k in 0..=self.deg_z2 {
                if self.coeff(m, k).norm() > tol {
                    let (bm, bk) = best.unwrap_or((0, 0));
                    best = Some((bm.max(m), bk.max(k)));
                }
            }
        }
        best
    }
}

/// f(z) ↦ f(z₂): the canonical isometric embedding of H²(𝔻) into H²(𝔻²).
pub fn embed_z2(f: &HardyVec1, trunc: &Truncation) -> Result<HardyVec2> {
    let (out, lost) = embed_z2_lossy(f, trunc);
    if lost > trunc.tol() {
        return Err(Error::Truncation {
            context: "embed_z2".into(),
            lost_mass: lost,
        });
    }
    Ok(out)
}

pub fn embed_z2_lossy(f: &HardyVec1, trunc: &Truncation) -> (HardyVec2, f64) {
    let mut out = HardyVec2::zeros_for(trunc);
    let mut lost_sq = 0.0;
    for (k, &a) in f.coeffs().iter().enumerate() {
        if k <= trunc.deg_z2() {
            out.set(0, k, a);
        } else {
            lost_sq += a.norm_sqr();
        }
    }
    (out, lost_sq.sqrt())
}

/// f(z) ↦ f(z₁): the embedding along the first variable.
pub fn embed_z1(f: &HardyVec1, trunc: &Truncation) -> Result<HardyVec2> {
    let mut out = HardyVec2::zeros_for(trunc);
    let mut lost_sq = 0.0;
    for (m, &a) in f.coeffs().iter().enumerate() {
        if m <= trunc.deg_z1() {
            out.set(m, 0, a);
        } else {
            lost_sq += a.norm_sqr();
        }
    }
    let lost = lost_sq.sqrt();
    if lost > trunc.tol() {
        return Err(Error::Truncation {
            context: "embed_z1".into(),
            lost_mass: lost,
        });
    }
    Ok(out)
}

/// Adjoint of [`embed_z2`] on the truncated spaces: extracts the z₁-degree-0
/// slice. Exact — never raises degree or loses mass that the forward
/// embedding could have produced.
pub fn project_z2(big: &HardyVec2, deg_z: usize) -> HardyVec1 {
    let mut out = HardyVec1::zeros(deg_z);
    for k in 0..=deg_z.min(big.deg_z2()) {
        out.set(k, big.coeff(0, k));
    }
    out
}

/// Complete homogeneous sum h_m(z₁,z₂) = Σ_{a+b=m} z₁ᵃ z₂ᵇ, with h_m ≡ 0
/// for m < 0. ‖h_m‖² = m + 1.
pub fn complete_homogeneous(m: i64, trunc: &Truncation) -> Result<HardyVec2> {
    let mut out = HardyVec2::zeros_for(trunc);
    if m < 0 {
        return Ok(out);
    }
    let m = m as usize;
    if m > trunc.deg_z1().min(trunc.deg_z2()) {
        return Err(Error::Truncation {
            context: format!("complete_homogeneous degree {m}"),
            lost_mass: ((m + 1) as f64).sqrt(),
        });
    }
    for a in 0..=m {
        out.set(a, m - a, Complex64::new(1.0, 0.0));
    }
    Ok(out)
}

/// ‖F − F∘swap‖ where swap exchanges the variables; zero iff F is
/// symmetric in z₁, z₂.
pub fn swap_symmetry_residual(big: &HardyVec2) -> Result<f64> {
    let swapped = big.swap_vars()?;
    Ok(big.sub(&swapped)?.norm())
}

/// Element (F, f, α) of truncated H²(𝔻²) ⊕ H²(𝔻) ⊕ ℂ.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVec {
    pub big: HardyVec2,
    pub small: HardyVec1,
    pub alpha: Complex64,
}

impl StateVec {
    pub fn new(big: HardyVec2, small: HardyVec1, alpha: Complex64) -> Self {
        Self { big, small, alpha }
    }

    pub fn zero(trunc: &Truncation) -> Self {
        Self {
            big: HardyVec2::zeros_for(trunc),
            small: HardyVec1::zeros(trunc.deg_z()),
            alpha: Complex64::default(),
        }
    }

    /// The distinguished unit vector (0, 0, 1).
    pub fn e3(trunc: &Truncation) -> Self {
        let mut v = Self::zero(trunc);
        v.alpha = Complex64::new(1.0, 0.0);
        v
    }

    pub fn from_big(big: HardyVec2, trunc: &Truncation) -> Self {
        Self {
            big,
            small: HardyVec1::zeros(trunc.deg_z()),
            alpha: Complex64::default(),
        }
    }

    pub fn from_small(small: HardyVec1, trunc: &Truncation) -> Self {
        Self {
            big: HardyVec2::zeros_for(trunc),
            small,
            alpha: Complex64::default(),
        }
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.big.same_shape(&other.big) && self.small.deg() == other.small.deg()
    }

    pub fn norm_sq(&self) -> f64 {
        self.big.norm_sq() + self.small.norm_sq() + self.alpha.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Direct-sum inner product ⟨F_x,F_y⟩ + ⟨f_x,f_y⟩ + α_x·conj(α_y).
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        Ok(self.big.inner(&other.big)?
            + self.small.inner(&other.small)?
            + self.alpha * other.alpha.conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        out.scale_mut(s);
        out
    }

    pub fn scale_mut(&mut self, s: Complex64) {
        self.big.scale_mut(s);
        self.small.scale_mut(s);
        self.alpha *= s;
    }

    pub fn axpy_mut(&mut self, a: Complex64, x: &Self) {
        self.big.axpy_mut(a, &x.big);
        self.small.axpy_mut(a, &x.small);
        self.alpha += a * x.alpha;
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            big: self.big.sub(&other.big)?,
            small: self.small.sub(&other.small)?,
            alpha: self.alpha - other.alpha,
        })
    }

    /// Flatten into the canonical basis enumeration of `trunc`.
    pub fn to_flat(&self, trunc: &Truncation) -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); trunc.total_dim()];
        for m in 0..=trunc.deg_z1() {
            for k in 0..=trunc.deg_z2() {
                out[trunc.index_bidisk(m, k)] = self.big.coeff(m, k);
            }
        }
        for k in 0..=trunc.deg_z() {
            out[trunc.index_disk(k)] = self.small.coeff(k);
        }
        out[trunc.index_scalar()] = self.alpha;
        out
    }

    /// Maximal (z₁, z₂, z) degrees carrying mass above `tol`.
    pub fn max_degrees(&self, tol: f64) -> (usize, usize, usize) {
        let (m, k) = self.big.max_degrees(tol).unwrap_or((0, 0));
        let d = self.small.max_degree(tol).unwrap_or(0);
        (m, k, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t666() -> Truncation {
        Truncation::cube(6)
    }

    #[test]
    fn inner_state_examples() {
        let t = t666();
        // unit third coordinate
        let e3 = StateVec::e3(&t);
        assert_eq!(e3.inner(&e3).unwrap(), c64(1.0, 0.0));

        // distinct bidisk monomials are orthogonal
        let x = StateVec::from_big(HardyVec2::monomial(1, 0, &t).unwrap(), &t);
        let y = StateVec::from_big(HardyVec2::monomial(0, 1, &t).unwrap(), &t);
        assert_eq!(x.inner(&y).unwrap(), c64(0.0, 0.0));

        // ⟨z1+z2, z1+z2⟩ = 2 (sum of squared coefficients)
        let mut f = HardyVec2::zeros_for(&t);
        f.set(1, 0, c64(1.0, 0.0));
        f.set(0, 1, c64(1.0, 0.0));
        let v = StateVec::from_big(f, &t);
        assert_eq!(v.inner(&v).unwrap(), c64(2.0, 0.0));
    }

    #[test]
    fn inner_state_is_conjugate_symmetric() {
        let t = t666();
        let mut x = StateVec::zero(&t);
        x.big.set(2, 1, c64(1.0, -2.0));
        x.small.set(0, c64(0.5, 0.25));
        x.alpha = c64(-1.0, 3.0);
        let mut y = StateVec::zero(&t);
        y.big.set(2, 1, c64(-0.5, 1.0));
        y.small.set(3, c64(2.0, 0.0));
        y.alpha = c64(0.0, 1.0);
        let a = x.inner(&y).unwrap();
        let b = y.inner(&x).unwrap();
        assert!((a - b.conj()).norm() < 1e-15);
    }

    #[test]
    fn inner_state_rejects_mismatched_truncations() {
        let a = StateVec::zero(&Truncation::cube(4));
        let b = StateVec::zero(&Truncation::cube(5));
        assert!(a.inner(&b).is_err());
    }

    #[test]
    fn embed_z2_examples() {
        let t = t666();
        // constant
        let one = HardyVec1::from_reals(&[1.0]);
        let lifted = embed_z2(&one.resized(6, 1e-12).unwrap(), &t).unwrap();
        assert_eq!(lifted.coeff(0, 0), c64(1.0, 0.0));
        assert_eq!(lifted.norm_sq(), 1.0);

        // z^3 goes to z2^3
        let z3 = HardyVec1::monomial(3, 6).unwrap();
        let lifted = embed_z2(&z3, &t).unwrap();
        assert_eq!(lifted.coeff(0, 3), c64(1.0, 0.0));
        assert_eq!(lifted.norm_sq(), 1.0);

        // 2 + 3z: coefficient copy, ‖F‖² = 13
        let f = HardyVec1::from_reals(&[2.0, 3.0]).resized(6, 1e-12).unwrap();
        let lifted = embed_z2(&f, &t).unwrap();
        assert_eq!(lifted.coeff(0, 0), c64(2.0, 0.0));
        assert_eq!(lifted.coeff(0, 1), c64(3.0, 0.0));
        assert!((lifted.norm_sq() - 13.0).abs() < 1e-14);
    }

    #[test]
    fn embed_z2_overflow_is_reported() {
        let t = Truncation::new(6, 2, 6, 1e-10).unwrap();
        let f = HardyVec1::monomial(5, 6).unwrap();
        match embed_z2(&f, &t) {
            Err(Error::Truncation { lost_mass, .. }) => assert!((lost_mass - 1.0).abs() < 1e-15),
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn project_z2_examples() {
        let t = t666();
        // z1 z2 has no z1-degree-0 part
        let f = HardyVec2::monomial(1, 1, &t).unwrap();
        assert_eq!(project_z2(&f, 6).norm_sq(), 0.0);

        // z2^3 comes back as z^3
        let f = HardyVec2::monomial(0, 3, &t).unwrap();
        let back = project_z2(&f, 6);
        assert_eq!(back.coeff(3), c64(1.0, 0.0));
        assert_eq!(back.norm_sq(), 1.0);

        // constants pass through
        let mut f = HardyVec2::zeros_for(&t);
        f.set(0, 0, c64(5.0, 0.0));
        assert_eq!(project_z2(&f, 6).coeff(0), c64(5.0, 0.0));
    }

    #[test]
    fn embed_z1_examples() {
        let t = t666();
        let f = HardyVec1::monomial(2, 6).unwrap();
        let lifted = embed_z1(&f, &t).unwrap();
        assert_eq!(lifted.coeff(2, 0), c64(1.0, 0.0));
        assert_eq!(lifted.norm_sq(), 1.0);

        let g = HardyVec1::from_reals(&[1.0, 1.0]).resized(6, 1e-12).unwrap();
        let lifted = embed_z1(&g, &t).unwrap();
        assert!((lifted.norm() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn complete_homogeneous_examples() {
        let t = t666();
        assert_eq!(complete_homogeneous(-3, &t).unwrap().norm_sq(), 0.0);
        let h0 = complete_homogeneous(0, &t).unwrap();
        assert_eq!(h0.coeff(0, 0), c64(1.0, 0.0));
        assert_eq!(h0.norm_sq(), 1.0);
        let h2 = complete_homogeneous(2, &t).unwrap();
        for (m, k) in [(2, 0), (1, 1), (0, 2)] {
            assert_eq!(h2.coeff(m, k), c64(1.0, 0.0));
        }
        assert!((h2.norm_sq() - 3.0).abs() < 1e-15);
        assert!(complete_homogeneous(7, &t).is_err());
    }

    #[test]
    fn homogeneous_recurrence_holds() {
        // h_{m+1} = z1·h_m + z2^{m+1}
        let t = t666();
        for m in 0..6i64 {
            let lhs = complete_homogeneous(m + 1, &t).unwrap();
            let mut rhs = complete_homogeneous(m, &t).unwrap().mul_z1(1e-12).unwrap();
            let z2pow = HardyVec2::monomial(0, (m + 1) as usize, &t).unwrap();
            rhs.axpy_mut(c64(1.0, 0.0), &z2pow);
            assert!(lhs.sub(&rhs).unwrap().norm() < 1e-15, "m = {m}");
        }
    }

    #[test]
    fn swap_symmetry_examples() {
        let t = t666();
        let h2 = complete_homogeneous(2, &t).unwrap();
        assert_eq!(swap_symmetry_residual(&h2).unwrap(), 0.0);

        // z1 - z2 is antisymmetric: ‖(z1−z2) − (z2−z1)‖ = 2√2
        let mut f = HardyVec2::zeros_for(&t);
        f.set(1, 0, c64(1.0, 0.0));
        f.set(0, 1, c64(-1.0, 0.0));
        assert!((swap_symmetry_residual(&f).unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-15);

        // plain z1: residual √2
        let z1 = HardyVec2::monomial(1, 0, &t).unwrap();
        assert!((swap_symmetry_residual(&z1).unwrap() - 2f64.sqrt()).abs() < 1e-15);

        // rectangular truncations are rejected
        let rect = HardyVec2::zeros(3, 4);
        assert!(swap_symmetry_residual(&rect).is_err());
    }

    #[test]
    fn shift_examples() {
        let one = HardyVec1::from_reals(&[1.0]).resized(4, 1e-12).unwrap();
        let shifted = one.mul_z(1e-10).unwrap();
        assert_eq!(shifted.coeff(1), c64(1.0, 0.0));

        let t = t666();
        let z2 = HardyVec2::monomial(0, 1, &t).unwrap();
        let shifted = z2.mul_z1(1e-10).unwrap();
        assert_eq!(shifted.coeff(1, 1), c64(1.0, 0.0));

        // shifting a full top slot overflows
        let top = HardyVec1::monomial(4, 4).unwrap();
        assert!(matches!(
            top.mul_z(1e-10),
            Err(Error::Truncation { .. })
        ));
    }

    #[test]
    fn backshift_is_adjoint_of_shift() {
        let mut f = HardyVec1::zeros(5);
        f.set(0, c64(1.0, 2.0));
        f.set(3, c64(-0.5, 0.25));
        let mut g = HardyVec1::zeros(5);
        g.set(1, c64(0.5, -1.0));
        g.set(4, c64(2.0, 0.0));
        let lhs = f.mul_z(1e-10).unwrap().inner(&g).unwrap();
        let rhs = f.inner(&g.backshift()).unwrap();
        assert!((lhs - rhs).norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn embed_z2_is_isometric(coeffs in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..7)) {
            let t = t666();
            let f = HardyVec1::from_coeffs(coeffs.iter().map(|&(re, im)| c64(re, im)).collect())
                .resized(6, 1e-12).unwrap();
            let lifted = embed_z2(&f, &t).unwrap();
            prop_assert!((lifted.norm() - f.norm()).abs() < 1e-12);
            // round trip through the adjoint
            let back = project_z2(&lifted, 6);
            prop_assert!(back.sub(&f).unwrap().norm() < 1e-14);
        }

        #[test]
        fn shifted_bidisk_is_orthogonal_to_z2_functions(
            fc in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..7),
            m in 0usize..5, k in 0usize..6,
        ) {
            // ⟨z1·F, Jg⟩ = 0: z1 H²(𝔻²) ⊥ functions of z2 alone
            let t = t666();
            let g = HardyVec1::from_coeffs(fc.iter().map(|&(re, im)| c64(re, im)).collect())
                .resized(6, 1e-12).unwrap();
            let lifted_g = embed_z2(&g, &t).unwrap();
            let f = HardyVec2::monomial(m, k, &t).unwrap();
            let shifted = f.mul_z1(1e-10).unwrap();
            prop_assert!(shifted.inner(&lifted_g).unwrap().norm() < 1e-14);
        }
    }
}
