//! Lifted Type I/II invariant subspaces of the 3-Brownian shift.
//!
//! A Type I subspace of the Brownian shift is φH²(𝔻) ⊕ {0}; a Type II
//! subspace adds the line through (g, 1). Their lifts to the full space
//! decompose the first coordinate as
//!
//!   Type I :  φ_{z₂} H²(𝔻²) ⊕ Ψ H²(𝔻; ℰ)
//!   Type II:  φ_{z₂} H²(𝔻²) ⊕ g_{z₂} H²_{z₁}(𝔻) ⊕ Ψ H²(𝔻; ℰ)
//!
//! with Ψ an inner multiplier into K_φ. The implemented multiplier family
//! is Ψ(z) = b(z)·V for a scalar finite Blaschke factor b and a constant
//! isometry V; it exercises every hypothesis of the equivalence theory
//! (any rank, the constraint Ψ(0)ℰ ⊂ g^⊥ satisfiable or violable, b(0)
//! zero or not).
//!
//! Bases are materialized at a truncation with explicit per-block extent
//! bounds. Every listed vector survives one application of T exactly;
//! the probe set additionally guarantees that the image stays inside the
//! listed span, so invariance residuals measure the construction and not
//! the truncation.

use num_complex::Complex64;

use crate::blaschke::BlaschkeProduct;
use crate::error::{Error, Result};
use crate::gfunction::{g_function, GFunction};
use crate::gram::{self, InnerSpace};
use crate::hardy::{HardyVec1, HardyVec2, StateVec};
use crate::model_space::{model_space_basis, RANK_CUTOFF};
use crate::operators::{apply_t_lossy, BrownianParams};
use crate::trunc::Truncation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceKind {
    TypeI,
    TypeII,
}

/// The inner multiplier Ψ(z) = b(z)·V with V a constant isometry into K_φ.
#[derive(Debug, Clone)]
pub struct InnerMultiplier {
    factor: BlaschkeProduct,
    columns: Vec<HardyVec1>,
}

impl InnerMultiplier {
    /// Rank-0 multiplier (no Ψ-summand).
    pub fn trivial() -> Self {
        Self {
            factor: BlaschkeProduct::one(),
            columns: Vec::new(),
        }
    }

    /// Validates that the columns are orthonormal and lie in K_φ at the
    /// working truncation.
    pub fn new(
        factor: BlaschkeProduct,
        columns: Vec<HardyVec1>,
        phi: &BlaschkeProduct,
        trunc: &Truncation,
    ) -> Result<Self> {
        if columns.is_empty() {
            return Ok(Self {
                factor,
                columns,
            });
        }
        if columns.len() > phi.degree() {
            return Err(Error::Validation(format!(
                "multiplier rank {} exceeds dim K_φ = {}",
                columns.len(),
                phi.degree()
            )));
        }
        for col in &columns {
            if col.deg() != trunc.deg_z() {
                return Err(Error::Dimension(format!(
                    "multiplier column degree {} does not match the truncation degree {}",
                    col.deg(),
                    trunc.deg_z()
                )));
            }
        }
        let defect = gram::gram_defect(&columns);
        if defect > trunc.tol() {
            return Err(Error::Validation(format!(
                "multiplier columns are not orthonormal (Gram defect {defect:.3e})"
            )));
        }
        let model = model_space_basis(phi, trunc)?;
        for (j, col) in columns.iter().enumerate() {
            let residual = model.residual(col);
            if residual > trunc.tol() {
                return Err(Error::Validation(format!(
                    "multiplier column {j} leaves K_φ (residual {residual:.3e})"
                )));
            }
        }
        Ok(Self { factor, columns })
    }

    pub fn factor(&self) -> &BlaschkeProduct {
        &self.factor
    }

    pub fn columns(&self) -> &[HardyVec1] {
        &self.columns
    }

    /// dim ℰ.
    pub fn rank(&self) -> usize {
        self.columns.len()
    }
}

/// Data determining a lifted Type I/II invariant subspace.
#[derive(Debug, Clone)]
pub struct LiftedSubspaceSpec {
    kind: SubspaceKind,
    phi: BlaschkeProduct,
    psi: InnerMultiplier,
    params: BrownianParams,
    g: Option<GFunction>,
}

impl LiftedSubspaceSpec {
    pub fn type_i(
        phi: BlaschkeProduct,
        psi: InnerMultiplier,
        params: BrownianParams,
    ) -> Self {
        Self {
            kind: SubspaceKind::TypeI,
            phi,
            psi,
            params,
            g: None,
        }
    }

    /// Builds the g-function at the working truncation and enforces the
    /// orthogonality constraint Ψ(0)ℰ ⊂ g^⊥ ⊂ K_φ.
    pub fn type_ii(
        phi: BlaschkeProduct,
        psi: InnerMultiplier,
        params: BrownianParams,
        trunc: &Truncation,
    ) -> Result<Self> {
        let g = g_function(&phi, params.sigma(), params.theta(), trunc.deg_z())?;
        let b0 = psi.factor().taylor_coeffs(0).coeff(0);
        if psi.rank() > 0 && b0.norm() > trunc.tol() {
            let gn = g.norm();
            for (j, col) in psi.columns().iter().enumerate() {
                let overlap = col.inner(g.series())?.norm() / gn;
                if overlap > trunc.tol() {
                    return Err(Error::Validation(format!(
                        "constraint Ψ(0)ℰ ⊂ g^⊥ ⊂ K_φ violated: column {j} has overlap {overlap:.3e} with g while b(0) = {b0}"
                    )));
                }
            }
        }
        Ok(Self {
            kind: SubspaceKind::TypeII,
            phi,
            psi,
            params,
            g: Some(g),
        })
    }

    pub fn kind(&self) -> SubspaceKind {
        self.kind
    }

    pub fn phi(&self) -> &BlaschkeProduct {
        &self.phi
    }

    pub fn psi(&self) -> &InnerMultiplier {
        &self.psi
    }

    pub fn params(&self) -> &BrownianParams {
        &self.params
    }

    pub fn g(&self) -> Option<&GFunction> {
        self.g.as_ref()
    }
}

/// Summand membership of a basis vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummandTag {
    /// φ_{z₂}·z₁ᵐ z₂ᵏ — the φ_{z₂}H²(𝔻²) block.
    PhiBlock { m: usize, k: usize },
    /// z₁ᵏ·g_{z₂}/‖g‖ — the g_{z₂}H²_{z₁}(𝔻) block.
    GBlock { k: usize },
    /// b(z₁)z₁ⁱ ⊗ V eⱼ — the Ψ H²(𝔻; ℰ) block.
    PsiBlock { i: usize, j: usize },
    /// (0, φ·zᵏ, 0) — the φH²(𝔻) part of the lower component.
    M1Phi { k: usize },
    /// (0, g, 1)/√(1+‖g‖²) — the extra Type II line.
    M1Line,
    /// Manually appended vector (perturbation experiments).
    Adhoc,
}

impl SummandTag {
    pub fn summand_name(&self) -> &'static str {
        match self {
            SummandTag::PhiBlock { .. } => "phi-block",
            SummandTag::GBlock { .. } => "g-block",
            SummandTag::PsiBlock { .. } => "psi-block",
            SummandTag::M1Phi { .. } => "M1-phi-block",
            SummandTag::M1Line => "M1-line",
            SummandTag::Adhoc => "adhoc",
        }
    }

    /// Whether the vector lives in the first coordinate (the M₀ part).
    pub fn is_m0(&self) -> bool {
        matches!(
            self,
            SummandTag::PhiBlock { .. } | SummandTag::GBlock { .. } | SummandTag::PsiBlock { .. }
        )
    }
}

/// Inclusive per-block extent bounds of a materialized basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisExtents {
    /// (max z₁-power, max z₂-shift) of the φ_{z₂}-block.
    pub phi_block: Option<(usize, usize)>,
    /// max z₁-power of the g-block.
    pub g_block: Option<usize>,
    /// max z₁-shift of the Ψ-block (column count is the multiplier rank).
    pub psi_block: Option<usize>,
    /// max shift of the lower φH²(𝔻) family.
    pub m1_phi: Option<usize>,
    pub m1_line: bool,
}

impl BasisExtents {
    /// Largest extents representable for `spec` at `trunc`: one z₁ raise
    /// must stay exact, and z₂/z profiles must fit with their tails under
    /// a tenth of the truncation tolerance.
    pub fn natural(spec: &LiftedSubspaceSpec, trunc: &Truncation) -> Result<Self> {
        let tail_eps = 0.1 * trunc.tol();
        let n_phi = spec.phi().effective_degree(tail_eps)?;
        if trunc.deg_z1() == 0 {
            return Err(Error::Conditioning(
                "z1-degree bound 0 leaves no room for a lifted basis".into(),
            ));
        }
        if n_phi > trunc.deg_z2() || n_phi > trunc.deg_z() {
            return Err(Error::Conditioning(format!(
                "truncation too small for φ (effective degree {n_phi} at {tail_eps:.1e})"
            )));
        }
        let phi_block = Some((trunc.deg_z1() - 1, trunc.deg_z2() - n_phi));
        let m1_phi = Some(trunc.deg_z() - n_phi);
        let psi_block = if spec.psi().rank() > 0 {
            let n_b = spec.psi().factor().effective_degree(tail_eps)?;
            if n_b + 1 > trunc.deg_z1() {
                return Err(Error::Conditioning(format!(
                    "truncation too small for the multiplier factor (effective degree {n_b})"
                )));
            }
            Some(trunc.deg_z1() - 1 - n_b)
        } else {
            None
        };
        let (g_block, m1_line) = match spec.kind() {
            SubspaceKind::TypeI => (None, false),
            SubspaceKind::TypeII => (Some(trunc.deg_z1() - 1), true),
        };
        Ok(Self {
            phi_block,
            g_block,
            psi_block,
            m1_phi,
            m1_line,
        })
    }

    /// Componentwise minimum; used to build structurally matching bases
    /// for a pair of specs. Errors when the block structures differ.
    pub fn common(a: &Self, b: &Self) -> Result<Self> {
        fn meet<T: Ord + Copy>(x: Option<T>, y: Option<T>, what: &str) -> Result<Option<T>> {
            match (x, y) {
                (Some(u), Some(v)) => Ok(Some(u.min(v))),
                (None, None) => Ok(None),
                _ => Err(Error::Structure(format!(
                    "bases disagree on the presence of the {what}"
                ))),
            }
        }
        let phi_block = match (a.phi_block, b.phi_block) {
            (Some((m1, k1)), Some((m2, k2))) => Some((m1.min(m2), k1.min(k2))),
            (None, None) => None,
            _ => {
                return Err(Error::Structure(
                    "bases disagree on the presence of the phi-block".into(),
                ))
            }
        };
        if a.m1_line != b.m1_line {
            return Err(Error::Structure(
                "bases disagree on the presence of the M1-line".into(),
            ));
        }
        Ok(Self {
            phi_block,
            g_block: meet(a.g_block, b.g_block, "g-block")?,
            psi_block: meet(a.psi_block, b.psi_block, "psi-block")?,
            m1_phi: meet(a.m1_phi, b.m1_phi, "M1 phi family")?,
            m1_line: a.m1_line,
        })
    }

    fn fits_in(&self, outer: &Self) -> bool {
        fn le(x: Option<usize>, y: Option<usize>) -> bool {
            match (x, y) {
                (None, _) => true,
                (Some(u), Some(v)) => u <= v,
                (Some(_), None) => false,
            }
        }
        let phi_ok = match (self.phi_block, outer.phi_block) {
            (None, _) => true,
            (Some((m, k)), Some((mo, ko))) => m <= mo && k <= ko,
            (Some(_), None) => false,
        };
        phi_ok
            && le(self.g_block, outer.g_block)
            && le(self.psi_block, outer.psi_block)
            && le(self.m1_phi, outer.m1_phi)
            && (!self.m1_line || outer.m1_line)
    }
}

/// Orthonormal family spanning (the truncated part of) an invariant
/// subspace, with per-vector summand tags.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    kind: SubspaceKind,
    trunc: Truncation,
    vectors: Vec<StateVec>,
    tags: Vec<SummandTag>,
    extents: BasisExtents,
    safe_degree: usize,
}

impl SubspaceBasis {
    pub fn kind(&self) -> SubspaceKind {
        self.kind
    }

    pub fn trunc(&self) -> Truncation {
        self.trunc
    }

    pub fn vectors(&self) -> &[StateVec] {
        &self.vectors
    }

    pub fn tags(&self) -> &[SummandTag] {
        &self.tags
    }

    pub fn tag(&self, i: usize) -> &SummandTag {
        &self.tags[i]
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn extents(&self) -> &BasisExtents {
        &self.extents
    }

    /// Largest degree such that every listed vector survives one
    /// application of T exactly.
    pub fn safe_degree(&self) -> usize {
        self.safe_degree
    }

    pub fn find(&self, tag: &SummandTag) -> Option<usize> {
        self.tags.iter().position(|t| t == tag)
    }

    /// Indices whose T-image provably stays inside the listed span, so
    /// that invariance and norm probes measure the construction rather
    /// than the truncation edge.
    pub fn probe_indices(&self) -> Vec<usize> {
        let e = &self.extents;
        self.tags
            .iter()
            .enumerate()
            .filter(|(idx, tag)| match tag {
                SummandTag::PhiBlock { m, .. } => e
                    .phi_block
                    .map(|(m_max, _)| m + 1 <= m_max)
                    .unwrap_or(false),
                SummandTag::GBlock { k } => e.g_block.map(|k_max| k + 1 <= k_max).unwrap_or(false),
                SummandTag::PsiBlock { i, .. } => {
                    e.psi_block.map(|i_max| i + 1 <= i_max).unwrap_or(false)
                }
                SummandTag::M1Phi { k } => {
                    let shift_ok = e.m1_phi.map(|k_max| k + 1 <= k_max).unwrap_or(false);
                    let lift_ok = e
                        .phi_block
                        .map(|(_, k2_max)| *k <= k2_max)
                        .unwrap_or(false);
                    shift_ok && lift_ok
                }
                SummandTag::M1Line => {
                    e.g_block.is_some() && e.m1_phi.is_some() && e.phi_block.is_some()
                }
                SummandTag::Adhoc => {
                    let v = &self.vectors[*idx];
                    let (m, _, d) = v.max_degrees(self.trunc.tol());
                    m + 1 <= self.trunc.deg_z1() && d + 1 <= self.trunc.deg_z()
                }
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// Coordinates ⟨v, basisᵢ⟩ of the projection onto the basis span.
    pub fn project_coords(&self, v: &StateVec) -> Vec<Complex64> {
        gram::projection_coefficients(v, &self.vectors)
    }

    /// Reassemble an ambient vector from basis coordinates.
    pub fn ambient_from_coords(&self, coords: &[Complex64]) -> StateVec {
        debug_assert_eq!(coords.len(), self.len());
        let mut out = StateVec::zero(&self.trunc);
        for (c, v) in coords.iter().zip(&self.vectors) {
            out.axpy_mut(*c, v);
        }
        out
    }

    /// Append a vector outside the constructed summands, orthonormalized
    /// against the family. Intended for perturbation experiments.
    pub fn push_adhoc(&mut self, v: StateVec) -> Result<()> {
        let mut v = v;
        gram::project_out(&mut v, &self.vectors);
        let n = v.norm();
        if n < RANK_CUTOFF {
            return Err(Error::Validation(
                "adhoc vector already lies in the basis span".into(),
            ));
        }
        v.scale_mut(Complex64::new(1.0 / n, 0.0));
        self.vectors.push(v);
        self.tags.push(SummandTag::Adhoc);
        Ok(())
    }
}

fn normalized(mut v: StateVec) -> StateVec {
    let n = v.norm();
    v.scale_mut(Complex64::new(1.0 / n, 0.0));
    v
}

/// The Type I invariant subspace of the Brownian shift: {(0, φ·zᵏ, 0)}.
pub fn build_type_i_m1(phi: &BlaschkeProduct, trunc: &Truncation) -> Result<SubspaceBasis> {
    let tail_eps = 0.1 * trunc.tol();
    let n_phi = phi.effective_degree(tail_eps)?;
    if n_phi > trunc.deg_z() {
        return Err(Error::Conditioning(format!(
            "degree bound {} cannot hold φ (effective degree {n_phi})",
            trunc.deg_z()
        )));
    }
    let k_max = trunc.deg_z() - n_phi;
    let coeffs = phi.taylor_coeffs(trunc.deg_z());
    let mut vectors = Vec::with_capacity(k_max + 1);
    let mut tags = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let mut small = HardyVec1::zeros(trunc.deg_z());
        for n in 0..=(trunc.deg_z() - k) {
            small.set(n + k, coeffs.coeff(n));
        }
        vectors.push(normalized(StateVec::from_small(small, trunc)));
        tags.push(SummandTag::M1Phi { k });
    }
    let defect = gram::gram_defect(&vectors);
    if defect > trunc.tol() {
        return Err(Error::Conditioning(format!(
            "Gram matrix of the shifted-φ family deviates from identity by {defect:.3e}"
        )));
    }
    Ok(SubspaceBasis {
        kind: SubspaceKind::TypeI,
        trunc: *trunc,
        vectors,
        tags,
        extents: BasisExtents {
            phi_block: None,
            g_block: None,
            psi_block: None,
            m1_phi: Some(k_max),
            m1_line: false,
        },
        safe_degree: trunc.deg_z().saturating_sub(1),
    })
}

/// The Type II invariant subspace of the Brownian shift: the Type I
/// family plus the unit vector (0, g, 1)/√(1+‖g‖²).
pub fn build_type_ii_m1(
    phi: &BlaschkeProduct,
    params: &BrownianParams,
    trunc: &Truncation,
) -> Result<SubspaceBasis> {
    let mut basis = build_type_i_m1(phi, trunc)?;
    let g = g_function(phi, params.sigma(), params.theta(), trunc.deg_z())?;
    let line = normalized(StateVec::new(
        HardyVec2::zeros_for(trunc),
        g.series().clone(),
        Complex64::new(1.0, 0.0),
    ));
    for (v, t) in basis.vectors.iter().zip(&basis.tags) {
        let cross = line.inner(v)?.norm();
        if cross > trunc.tol() {
            return Err(Error::Conditioning(format!(
                "M1-line is not orthogonal to {} (inner product {cross:.3e})",
                t.summand_name()
            )));
        }
    }
    basis.kind = SubspaceKind::TypeII;
    basis.vectors.push(line);
    basis.tags.push(SummandTag::M1Line);
    basis.extents.m1_line = true;
    Ok(basis)
}

fn build_lifted(
    spec: &LiftedSubspaceSpec,
    trunc: &Truncation,
    extents: BasisExtents,
) -> Result<SubspaceBasis> {
    let natural = BasisExtents::natural(spec, trunc)?;
    if !extents.fits_in(&natural) {
        return Err(Error::Structure(format!(
            "requested extents {extents:?} exceed the representable {natural:?}"
        )));
    }
    let tol = trunc.tol();
    let mut vectors: Vec<StateVec> = Vec::new();
    let mut tags: Vec<SummandTag> = Vec::new();

    if let Some((m_max, k_max)) = extents.phi_block {
        let profile = spec.phi().taylor_coeffs(trunc.deg_z2());
        for m in 0..=m_max {
            for k in 0..=k_max {
                let mut big = HardyVec2::zeros_for(trunc);
                for n in 0..=(trunc.deg_z2() - k) {
                    big.set(m, k + n, profile.coeff(n));
                }
                vectors.push(normalized(StateVec::from_big(big, trunc)));
                tags.push(SummandTag::PhiBlock { m, k });
            }
        }
    }

    if let Some(k_max) = extents.g_block {
        let g = spec
            .g()
            .ok_or_else(|| Error::Validation("g-block requested without a g-function".into()))?;
        let profile = g.series().resized(trunc.deg_z2(), tol)?;
        for k in 0..=k_max {
            let mut big = HardyVec2::zeros_for(trunc);
            for n in 0..=trunc.deg_z2() {
                big.set(k, n, profile.coeff(n));
            }
            vectors.push(normalized(StateVec::from_big(big, trunc)));
            tags.push(SummandTag::GBlock { k });
        }
    }

    if let Some(i_max) = extents.psi_block {
        let factor = spec.psi().factor().taylor_coeffs(trunc.deg_z1());
        for i in 0..=i_max {
            for (j, col) in spec.psi().columns().iter().enumerate() {
                let col2 = col.resized(trunc.deg_z2(), tol)?;
                let mut big = HardyVec2::zeros_for(trunc);
                for m in 0..=(trunc.deg_z1() - i) {
                    let bm = factor.coeff(m);
                    if bm.norm_sqr() == 0.0 {
                        continue;
                    }
                    for k2 in 0..=trunc.deg_z2() {
                        let v = bm * col2.coeff(k2);
                        if v.norm_sqr() != 0.0 {
                            big.set(m + i, k2, v);
                        }
                    }
                }
                vectors.push(normalized(StateVec::from_big(big, trunc)));
                tags.push(SummandTag::PsiBlock { i, j });
            }
        }
    }

    if let Some(k_max) = extents.m1_phi {
        let profile = spec.phi().taylor_coeffs(trunc.deg_z());
        for k in 0..=k_max {
            let mut small = HardyVec1::zeros(trunc.deg_z());
            for n in 0..=(trunc.deg_z() - k) {
                small.set(n + k, profile.coeff(n));
            }
            vectors.push(normalized(StateVec::from_small(small, trunc)));
            tags.push(SummandTag::M1Phi { k });
        }
    }

    if extents.m1_line {
        let g = spec
            .g()
            .ok_or_else(|| Error::Validation("M1-line requested without a g-function".into()))?;
        vectors.push(normalized(StateVec::new(
            HardyVec2::zeros_for(trunc),
            g.series().resized(trunc.deg_z(), tol)?,
            Complex64::new(1.0, 0.0),
        )));
        tags.push(SummandTag::M1Line);
    }

    // The summands are orthogonal by construction; a Gram defect above
    // tolerance means the configuration itself is invalid (for Type II,
    // typically a Ψ coefficient leaving g^⊥).
    let mut worst = 0.0f64;
    let mut worst_pair = (0usize, 0usize);
    for i in 0..vectors.len() {
        for j in i..vectors.len() {
            let target = if i == j { 1.0 } else { 0.0 };
            let d = (vectors[i].inner(&vectors[j])? - Complex64::new(target, 0.0)).norm();
            if d > worst {
                worst = d;
                worst_pair = (i, j);
            }
        }
    }
    if worst > tol {
        return Err(Error::Validation(format!(
            "summands are not orthogonal: |⟨{}, {}⟩ − δ| = {worst:.3e} (tags {:?}, {:?})",
            tags[worst_pair.0].summand_name(),
            tags[worst_pair.1].summand_name(),
            tags[worst_pair.0],
            tags[worst_pair.1],
        )));
    }

    gram::orthonormalize(&mut vectors, 0.5)?;

    Ok(SubspaceBasis {
        kind: spec.kind(),
        trunc: *trunc,
        vectors,
        tags,
        extents,
        safe_degree: trunc
            .deg_z1()
            .min(trunc.deg_z2())
            .min(trunc.deg_z())
            .saturating_sub(1),
    })
}

/// Lifted Type I basis at the natural extents.
pub fn build_lifted_type_i(
    spec: &LiftedSubspaceSpec,
    trunc: &Truncation,
) -> Result<SubspaceBasis> {
    if spec.kind() != SubspaceKind::TypeI {
        return Err(Error::Validation("spec is not of Type I".into()));
    }
    let extents = BasisExtents::natural(spec, trunc)?;
    build_lifted(spec, trunc, extents)
}

/// Lifted Type I basis at explicit extents (for structurally matched pairs).
pub fn build_lifted_type_i_with_extents(
    spec: &LiftedSubspaceSpec,
    trunc: &Truncation,
    extents: BasisExtents,
) -> Result<SubspaceBasis> {
    if spec.kind() != SubspaceKind::TypeI {
        return Err(Error::Validation("spec is not of Type I".into()));
    }
    build_lifted(spec, trunc, extents)
}

/// Lifted Type II basis at the natural extents.
pub fn build_lifted_type_ii(
    spec: &LiftedSubspaceSpec,
    trunc: &Truncation,
) -> Result<SubspaceBasis> {
    if spec.kind() != SubspaceKind::TypeII {
        return Err(Error::Validation("spec is not of Type II".into()));
    }
    let extents = BasisExtents::natural(spec, trunc)?;
    build_lifted(spec, trunc, extents)
}

/// Lifted Type II basis at explicit extents.
pub fn build_lifted_type_ii_with_extents(
    spec: &LiftedSubspaceSpec,
    trunc: &Truncation,
    extents: BasisExtents,
) -> Result<SubspaceBasis> {
    if spec.kind() != SubspaceKind::TypeII {
        return Err(Error::Validation("spec is not of Type II".into()));
    }
    build_lifted(spec, trunc, extents)
}

/// Build either kind at the extents shared by a pair of specs.
pub fn build_pair_with_common_extents(
    a: &LiftedSubspaceSpec,
    b: &LiftedSubspaceSpec,
    trunc: &Truncation,
) -> Result<(SubspaceBasis, SubspaceBasis)> {
    let ea = BasisExtents::natural(a, trunc)?;
    let eb = BasisExtents::natural(b, trunc)?;
    let common = BasisExtents::common(&ea, &eb)?;
    Ok((
        build_lifted(a, trunc, common)?,
        build_lifted(b, trunc, common)?,
    ))
}

/// max over probe-safe basis vectors v of ‖(I − P_M)·T v‖, where dropped
/// truncation mass is folded into the residual. Near zero certifies
/// invariance at the truncation.
pub fn invariance_residual(p: &BrownianParams, basis: &SubspaceBasis) -> f64 {
    let trunc = basis.trunc();
    let mut worst = 0.0f64;
    for idx in basis.probe_indices() {
        let (img, lost) = apply_t_lossy(p, &basis.vectors[idx], &trunc);
        let mut r = img;
        gram::project_out(&mut r, &basis.vectors);
        let val = (r.norm_sq() + lost * lost).sqrt();
        worst = worst.max(val);
    }
    worst
}

/// Which z₁-invariant component to take the wandering quotient of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WanderingBlock {
    Psi,
    G,
    PsiAndG,
}

/// dim(block ⊖ z₁·block): the numerical rank of the block's projection
/// onto the orthogonal complement of its z₁-shift.
pub fn wandering_dimension(
    basis: &SubspaceBasis,
    block: WanderingBlock,
    trunc: &Truncation,
) -> Result<usize> {
    let keep = |tag: &SummandTag| match block {
        WanderingBlock::Psi => matches!(tag, SummandTag::PsiBlock { .. }),
        WanderingBlock::G => matches!(tag, SummandTag::GBlock { .. }),
        WanderingBlock::PsiAndG => {
            matches!(tag, SummandTag::PsiBlock { .. } | SummandTag::GBlock { .. })
        }
    };
    let members: Vec<&StateVec> = basis
        .vectors
        .iter()
        .zip(&basis.tags)
        .filter(|(_, t)| keep(t))
        .map(|(v, _)| v)
        .collect();
    if members.is_empty() {
        return Ok(0);
    }
    let mut shifted = Vec::with_capacity(members.len());
    for v in &members {
        let big = v.big.mul_z1(trunc.tol())?;
        shifted.push(StateVec::new(big, v.small.clone(), v.alpha));
    }
    let shifted_basis = gram::accumulate_rank(&shifted, RANK_CUTOFF);
    let mut residuals = Vec::with_capacity(members.len());
    for v in members {
        let mut r = (*v).clone();
        gram::project_out(&mut r, &shifted_basis);
        let n = r.norm();
        if n > RANK_CUTOFF && n < 1e-2 {
            return Err(Error::Conditioning(format!(
                "wandering projection residual {n:.3e} sits inside the ambiguity band"
            )));
        }
        residuals.push(r);
    }
    Ok(gram::accumulate_rank(&residuals, 1e-2).len())
}
