//! The Brownian shift B_{σ,θ} on H²(𝔻) ⊕ ℂ and the 3-Brownian shift
//! T_{σ,θ} on H²(𝔻²) ⊕ H²(𝔻) ⊕ ℂ,
//!
//!   T_{σ,θ}(F, f, α) = (z₁F + σ·f(z₂), zf + σα, e^{iθ}α),
//!
//! together with adjoints, powers, the closed-form orbit of (0,0,1), the
//! isometry-plus-perturbation decomposition, and restricted operator
//! norms via power iteration.
//!
//! Forward applications raise degrees and demand a truncation reserve;
//! the adjoint never raises degree and is exact on the truncated space.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gram;
use crate::hardy::{
    complete_homogeneous, embed_z2, embed_z2_lossy, project_z2, HardyVec1, HardyVec2, StateVec,
};
use crate::linalg::CMatrix;
use crate::subspace::{SubspaceBasis, SummandTag};
use crate::trunc::Truncation;

/// Covariance parameter σ > 0 and rotation angle θ ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrownianParams {
    sigma: f64,
    theta: f64,
}

impl BrownianParams {
    pub fn new(sigma: f64, theta: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::Validation(format!(
                "covariance parameter must be positive and finite, got {sigma}"
            )));
        }
        if !theta.is_finite() {
            return Err(Error::Validation(format!("angle must be finite, got {theta}")));
        }
        Ok(Self {
            sigma,
            theta: theta.rem_euclid(std::f64::consts::TAU),
        })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// e^{iθ}.
    pub fn rotation(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }

    /// ‖T_{σ,θ}‖ = √(1 + σ²), also the normalization constant.
    pub fn norm_bound(&self) -> f64 {
        (1.0 + self.sigma * self.sigma).sqrt()
    }
}

/// One step of the Brownian shift: (f, α) ↦ (zf + σα, e^{iθ}α).
pub fn apply_b(
    p: &BrownianParams,
    f: &HardyVec1,
    alpha: Complex64,
    trunc: &Truncation,
) -> Result<(HardyVec1, Complex64)> {
    let mut shifted = f.mul_z(trunc.tol())?;
    shifted.set(0, shifted.coeff(0) + p.sigma * alpha);
    Ok((shifted, p.rotation() * alpha))
}

/// One step of the 3-Brownian shift. Errors when a degree raise would
/// push mass past the truncation.
pub fn apply_t(p: &BrownianParams, x: &StateVec, trunc: &Truncation) -> Result<StateVec> {
    let mut big = x.big.mul_z1(trunc.tol())?;
    let lifted = embed_z2(&x.small, trunc)?;
    big.axpy_mut(Complex64::new(p.sigma, 0.0), &lifted);
    let mut small = x.small.mul_z(trunc.tol())?;
    small.set(0, small.coeff(0) + p.sigma * x.alpha);
    Ok(StateVec::new(big, small, p.rotation() * x.alpha))
}

/// One step of the 3-Brownian shift, dropping whatever falls past the
/// truncation and returning the euclidean norm of the dropped part.
/// Residual computations fold this loss into their certificates.
pub fn apply_t_lossy(p: &BrownianParams, x: &StateVec, trunc: &Truncation) -> (StateVec, f64) {
    let (mut big, lost_z1) = x.big.mul_z1_lossy();
    let (lifted, lost_embed) = embed_z2_lossy(&x.small, trunc);
    big.axpy_mut(Complex64::new(p.sigma, 0.0), &lifted);
    let (mut small, lost_z) = x.small.mul_z_lossy();
    small.set(0, small.coeff(0) + p.sigma * x.alpha);
    let lost = (lost_z1 * lost_z1
        + p.sigma * p.sigma * lost_embed * lost_embed
        + lost_z * lost_z)
        .sqrt();
    (
        StateVec::new(big, small, p.rotation() * x.alpha),
        lost,
    )
}

/// The adjoint T*(F, f, α) = (M*_{z₁}F, σ·J*F + S*f, σ⟨f,1⟩ + e^{−iθ}α).
/// Exact at any truncation.
pub fn apply_t_adjoint(p: &BrownianParams, x: &StateVec, trunc: &Truncation) -> StateVec {
    let big = x.big.backshift_z1();
    let mut small = project_z2(&x.big, trunc.deg_z());
    small.scale_mut(Complex64::new(p.sigma, 0.0));
    small.axpy_mut(Complex64::new(1.0, 0.0), &x.small.backshift());
    let alpha = p.sigma * x.small.coeff(0) + p.rotation().conj() * x.alpha;
    StateVec::new(big, small, alpha)
}

/// n-fold forward application; an overflow error names the failing step.
pub fn apply_t_power(
    p: &BrownianParams,
    x: &StateVec,
    n: usize,
    trunc: &Truncation,
) -> Result<StateVec> {
    let mut cur = x.clone();
    for step in 0..n {
        cur = apply_t(p, &cur, trunc).map_err(|e| match e {
            Error::Truncation { context, lost_mass } => Error::Truncation {
                context: format!("{context} at power step {}", step + 1),
                lost_mass,
            },
            other => other,
        })?;
    }
    Ok(cur)
}

/// n-fold adjoint application; exact for every n.
pub fn apply_t_adjoint_power(
    p: &BrownianParams,
    x: &StateVec,
    n: usize,
    trunc: &Truncation,
) -> StateVec {
    let mut cur = x.clone();
    for _ in 0..n {
        cur = apply_t_adjoint(p, &cur, trunc);
    }
    cur
}

/// (1 + σ²)^{−n/2} Tⁿ x: powers of the normalized shift.
pub fn normalized_power(
    p: &BrownianParams,
    x: &StateVec,
    n: usize,
    trunc: &Truncation,
) -> Result<StateVec> {
    let mut out = apply_t_power(p, x, n, trunc)?;
    out.scale_mut(Complex64::new(p.norm_bound().powi(-(n as i32)), 0.0));
    Ok(out)
}

/// (1 + σ²)^{−n/2} T*ⁿ x.
pub fn normalized_adjoint_power(
    p: &BrownianParams,
    x: &StateVec,
    n: usize,
    trunc: &Truncation,
) -> StateVec {
    let mut out = apply_t_adjoint_power(p, x, n, trunc);
    out.scale_mut(Complex64::new(p.norm_bound().powi(-(n as i32)), 0.0));
    out
}

/// Closed form of Tⁿ(0,0,1):
///   (σ² Σ_{k=0}^{n−2} e^{ikθ} h_{n−2−k},  σ Σ_{k=0}^{n−1} e^{ikθ} z^{n−1−k},  e^{inθ}).
pub fn orbit_e3(p: &BrownianParams, n: usize, trunc: &Truncation) -> Result<StateVec> {
    let mut big = HardyVec2::zeros_for(trunc);
    let sigma_sq = Complex64::new(p.sigma * p.sigma, 0.0);
    if n >= 2 {
        for k in 0..=(n - 2) {
            let h = complete_homogeneous((n - 2 - k) as i64, trunc)?;
            big.axpy_mut(sigma_sq * Complex64::from_polar(1.0, k as f64 * p.theta), &h);
        }
    }
    let mut small = HardyVec1::zeros(trunc.deg_z());
    if n >= 1 {
        for k in 0..=(n - 1) {
            let mono = HardyVec1::monomial(n - 1 - k, trunc.deg_z())?;
            small.axpy_mut(
                Complex64::new(p.sigma, 0.0) * Complex64::from_polar(1.0, k as f64 * p.theta),
                &mono,
            );
        }
    }
    Ok(StateVec::new(
        big,
        small,
        Complex64::from_polar(1.0, n as f64 * p.theta),
    ))
}

/// Exact squared orbit norm ‖Tⁿ(0,0,1)‖² = 1 + nσ² + σ⁴n(n−1)/2, from
/// orthogonality of the homogeneous components and of the monomials.
pub fn orbit_e3_norm_sq(p: &BrownianParams, n: usize) -> f64 {
    let s2 = p.sigma * p.sigma;
    let nf = n as f64;
    1.0 + nf * s2 + s2 * s2 * nf * (nf - 1.0) / 2.0
}

/// Sparse coordinate-list matrix over the canonical basis enumeration.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    label: String,
    nrows: usize,
    ncols: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl OperatorMatrix {
    pub fn new(label: impl Into<String>, nrows: usize, ncols: usize) -> Self {
        Self {
            label: label.into(),
            nrows,
            ncols,
            entries: Vec::new(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    pub fn push(&mut self, row: usize, col: usize, value: Complex64) {
        debug_assert!(row < self.nrows && col < self.ncols);
        if value.norm_sqr() > 0.0 {
            self.entries.push((row, col, value));
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(x.len(), self.ncols);
        let mut out = vec![Complex64::default(); self.nrows];
        for &(r, c, v) in &self.entries {
            out[r] += v * x[c];
        }
        out
    }

    /// Coordinate-list text: one `row col re im` line per entry, sorted.
    pub fn to_coordinate_text(&self) -> String {
        let mut sorted = self.entries.clone();
        sorted.sort_by_key(|&(r, c, _)| (r, c));
        let mut out = String::with_capacity(sorted.len() * 32);
        for (r, c, v) in sorted {
            out.push_str(&format!("{} {} {:.17e} {:.17e}\n", r, c, v.re, v.im));
        }
        out
    }

    /// Numerical column rank at a relative cutoff.
    pub fn numeric_rank(&self, rel_cutoff: f64) -> usize {
        let mut cols: Vec<usize> = self.entries.iter().map(|&(_, c, _)| c).collect();
        cols.sort_unstable();
        cols.dedup();
        let mut dense: Vec<HardyVec1> = Vec::with_capacity(cols.len());
        let mut max_norm = 0.0f64;
        for &c in &cols {
            let mut v = vec![Complex64::default(); self.nrows];
            for &(r, cc, val) in &self.entries {
                if cc == c {
                    v[r] += val;
                }
            }
            let hv = HardyVec1::from_coeffs(v);
            max_norm = max_norm.max(hv.norm());
            dense.push(hv);
        }
        if dense.is_empty() {
            return 0;
        }
        gram::accumulate_rank(&dense, rel_cutoff * max_norm).len()
    }

    /// max |a_{ij} − b_{ij}| over the union of entry positions.
    pub fn entrywise_max_diff(a: &Self, b: &Self) -> f64 {
        use std::collections::HashMap;
        let mut map: HashMap<(usize, usize), Complex64> = HashMap::new();
        for &(r, c, v) in &a.entries {
            *map.entry((r, c)).or_default() += v;
        }
        for &(r, c, v) in &b.entries {
            *map.entry((r, c)).or_default() -= v;
        }
        map.values().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Split T = T_s + R: the block-diagonal isometry (M_{z₁}, S, 1) plus the
/// perturbation carrying σJ, σ(1⊗1) and e^{iθ} − 1.
pub fn decompose_t(p: &BrownianParams, trunc: &Truncation) -> (OperatorMatrix, OperatorMatrix) {
    let dim = trunc.total_dim();
    let one = Complex64::new(1.0, 0.0);
    let mut ts = OperatorMatrix::new("T_s", dim, dim);
    for m in 0..trunc.deg_z1() {
        for k in 0..=trunc.deg_z2() {
            ts.push(trunc.index_bidisk(m + 1, k), trunc.index_bidisk(m, k), one);
        }
    }
    for k in 0..trunc.deg_z() {
        ts.push(trunc.index_disk(k + 1), trunc.index_disk(k), one);
    }
    ts.push(trunc.index_scalar(), trunc.index_scalar(), one);

    let mut r = OperatorMatrix::new("R", dim, dim);
    let sigma = Complex64::new(p.sigma, 0.0);
    for k in 0..=trunc.deg_z().min(trunc.deg_z2()) {
        r.push(trunc.index_bidisk(0, k), trunc.index_disk(k), sigma);
    }
    r.push(trunc.index_disk(0), trunc.index_scalar(), sigma);
    r.push(
        trunc.index_scalar(),
        trunc.index_scalar(),
        p.rotation() - one,
    );
    (ts, r)
}

/// The full truncated matrix of T, assembled column by column with lossy
/// applications (columns past the safe degree drop their overflow).
pub fn t_matrix(p: &BrownianParams, trunc: &Truncation) -> OperatorMatrix {
    let dim = trunc.total_dim();
    let mut out = OperatorMatrix::new("T", dim, dim);
    let mut column = |col: usize, x: &StateVec| {
        let (img, _) = apply_t_lossy(p, x, trunc);
        for (row, v) in img.to_flat(trunc).into_iter().enumerate() {
            out.push(row, col, v);
        }
    };
    for m in 0..=trunc.deg_z1() {
        for k in 0..=trunc.deg_z2() {
            let x = StateVec::from_big(HardyVec2::monomial(m, k, trunc).unwrap(), trunc);
            column(trunc.index_bidisk(m, k), &x);
        }
    }
    for k in 0..=trunc.deg_z() {
        let x = StateVec::from_small(HardyVec1::monomial(k, trunc.deg_z()).unwrap(), trunc);
        column(trunc.index_disk(k), &x);
    }
    column(trunc.index_scalar(), &StateVec::e3(trunc));
    out
}

/// Largest singular value of T restricted to the probe-safe sub-block of
/// an invariant-subspace basis, by power iteration on the Gram-composed
/// operator. The seed aligns with the first second/third-coordinate
/// basis vector, where the supremum is attained.
pub fn restricted_norm(
    p: &BrownianParams,
    basis: &SubspaceBasis,
    max_iter: usize,
    tol: f64,
) -> Result<f64> {
    let trunc = basis.trunc();
    let probes = basis.probe_indices();
    if probes.is_empty() {
        return Err(Error::Validation(
            "basis has no probe-safe vectors for a restricted norm".into(),
        ));
    }
    let vectors = basis.vectors();
    let r = vectors.len();
    let mut a = CMatrix::zeros(r, probes.len());
    for (j, &pi) in probes.iter().enumerate() {
        let (img, _) = apply_t_lossy(p, &vectors[pi], &trunc);
        for (i, b) in vectors.iter().enumerate() {
            a.set(i, j, img.inner(b)?);
        }
    }

    let mut seed = vec![Complex64::new(1.0, 0.0); probes.len()];
    if let Some(pos) = probes.iter().position(|&pi| {
        matches!(
            basis.tag(pi),
            SummandTag::M1Phi { k: 0 } | SummandTag::M1Line
        )
    }) {
        seed = vec![Complex64::default(); probes.len()];
        seed[pos] = Complex64::new(1.0, 0.0);
    }

    let ah = a.adjoint();
    let norm = |v: &[Complex64]| v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let n0 = norm(&seed);
    for v in &mut seed {
        *v /= n0;
    }
    let mut last = 0.0f64;
    for it in 0..max_iter {
        let img = a.matvec(&seed);
        let est = norm(&img);
        let mut back = ah.matvec(&img);
        let nb = norm(&back);
        if nb == 0.0 {
            return Ok(0.0);
        }
        for v in &mut back {
            *v /= nb;
        }
        seed = back;
        if it > 0 && (est - last).abs() <= tol * (1.0 + est) {
            return Ok(est);
        }
        last = est;
    }
    Err(Error::Iteration {
        iterations: max_iter,
        last_estimate: last,
    })
}
