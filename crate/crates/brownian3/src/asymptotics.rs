//! Operator-power asymptotics: failure of power-boundedness, C₀₀ decay of
//! the normalized shift, and the non-cyclicity experiment for (0,0,1).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gram;
use crate::hardy::{swap_symmetry_residual, HardyVec1, HardyVec2, StateVec};
use crate::operators::{
    apply_b, apply_t, apply_t_adjoint, orbit_e3_norm_sq, BrownianParams,
};
use crate::trunc::Truncation;

/// One row of the power-unboundedness certificate.
#[derive(Debug, Clone, Copy)]
pub struct PowerRow {
    pub n: usize,
    pub norm_sq: f64,
    /// 1 + nσ².
    pub lower_bound: f64,
}

#[derive(Debug, Clone)]
pub struct PowerTable {
    pub rows: Vec<PowerRow>,
    /// Every row meets its bound and the sequence increases strictly.
    pub pass: bool,
}

/// Tabulate ‖Tⁿ(0,0,1)‖² against the lower bound 1 + nσ² by direct
/// application. A strictly increasing table certifies that the shift is
/// not power bounded at desk scale.
pub fn power_unbounded_certificate(
    p: &BrownianParams,
    n_max: usize,
    trunc: &Truncation,
) -> Result<PowerTable> {
    let s2 = p.sigma() * p.sigma();
    let mut rows = Vec::with_capacity(n_max + 1);
    let mut cur = StateVec::e3(trunc);
    let mut pass = true;
    let mut prev = f64::NEG_INFINITY;
    for n in 0..=n_max {
        if n > 0 {
            cur = apply_t(p, &cur, trunc)?;
        }
        let norm_sq = cur.norm_sq();
        let lower_bound = 1.0 + n as f64 * s2;
        if norm_sq < lower_bound * (1.0 - 1e-12) || norm_sq <= prev {
            pass = false;
        }
        prev = norm_sq;
        rows.push(PowerRow {
            n,
            norm_sq,
            lower_bound,
        });
    }
    Ok(PowerTable { rows, pass })
}

/// Decay curve of normalized powers against an analytic envelope.
#[derive(Debug, Clone)]
pub struct DecayCurve {
    pub label: String,
    pub n_values: Vec<usize>,
    pub norms: Vec<f64>,
    pub envelope: Vec<f64>,
    /// Measured constant entering the envelope.
    pub c_constant: f64,
    /// Forward curves stop where the truncation would bite.
    pub capped_at: Option<usize>,
    /// norms ≤ envelope pointwise (up to rounding).
    pub envelope_ok: bool,
}

fn adjoint_case_label(x: &StateVec, tol: f64) -> &'static str {
    let has_big = x.big.norm() > tol;
    let has_small = x.small.norm() > tol;
    if has_big {
        "adjoint-case3"
    } else if has_small {
        "adjoint-case2"
    } else {
        "adjoint-case1"
    }
}

fn check_envelope(norms: &[f64], envelope: &[f64]) -> bool {
    norms
        .iter()
        .zip(envelope)
        .all(|(n, e)| *n <= e * (1.0 + 1e-12) + 1e-300)
}

/// ‖T̃*ⁿ x‖ for n ≤ n_max with envelope C_x (1+σ²)^{−n/2}, C_x the
/// measured maximum of the un-normalized adjoint orbit norms (the orbit
/// enters the scalar slot after finitely many steps and stays bounded).
pub fn c00_adjoint_decay(
    p: &BrownianParams,
    x: &StateVec,
    n_max: usize,
    trunc: &Truncation,
) -> DecayCurve {
    let decay = p.norm_bound();
    let mut raw_norms = Vec::with_capacity(n_max + 1);
    let mut cur = x.clone();
    for n in 0..=n_max {
        if n > 0 {
            cur = apply_t_adjoint(p, &cur, trunc);
        }
        raw_norms.push(cur.norm());
    }
    let c_constant = raw_norms.iter().copied().fold(0.0, f64::max);
    let n_values: Vec<usize> = (0..=n_max).collect();
    let norms: Vec<f64> = raw_norms
        .iter()
        .enumerate()
        .map(|(n, r)| r * decay.powi(-(n as i32)))
        .collect();
    let envelope: Vec<f64> = n_values
        .iter()
        .map(|&n| c_constant * decay.powi(-(n as i32)))
        .collect();
    let envelope_ok = check_envelope(&norms, &envelope);
    DecayCurve {
        label: adjoint_case_label(x, trunc.tol()).to_string(),
        n_values,
        norms,
        envelope,
        c_constant,
        capped_at: None,
        envelope_ok,
    }
}

/// ‖T̃ⁿ x‖ for n ≤ n_max with the triangle-inequality envelope
/// (‖F‖ + √(1+σ²n)·‖f‖ + ‖Tⁿe₃‖·|α|) / (1+σ²)^{n/2}, the exact orbit
/// norm standing in for the unspecified scalar-column constant. The
/// curve caps where a further power would overflow the truncation.
pub fn c00_forward_decay(
    p: &BrownianParams,
    x: &StateVec,
    n_max: usize,
    trunc: &Truncation,
) -> Result<DecayCurve> {
    let decay = p.norm_bound();
    let s2 = p.sigma() * p.sigma();
    let f_norm = x.small.norm();
    let big_norm = x.big.norm();
    let alpha_abs = x.alpha.norm();

    let mut n_values = Vec::new();
    let mut norms = Vec::new();
    let mut envelope = Vec::new();
    let mut capped_at = None;
    let mut cur = x.clone();
    for n in 0..=n_max {
        if n > 0 {
            match apply_t(p, &cur, trunc) {
                Ok(next) => cur = next,
                Err(Error::Truncation { .. }) => {
                    capped_at = Some(n - 1);
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        let scale = decay.powi(-(n as i32));
        n_values.push(n);
        norms.push(cur.norm() * scale);
        envelope.push(
            (big_norm
                + (1.0 + s2 * n as f64).sqrt() * f_norm
                + orbit_e3_norm_sq(p, n).sqrt() * alpha_abs)
                * scale,
        );
    }
    let envelope_ok = check_envelope(&norms, &envelope);
    Ok(DecayCurve {
        label: "forward".to_string(),
        n_values,
        norms,
        envelope,
        c_constant: big_norm + f_norm + alpha_abs,
        capped_at,
        envelope_ok,
    })
}

/// Non-cyclicity certificate for (0,0,1).
#[derive(Debug, Clone)]
pub struct NoncyclicReport {
    pub n_max: usize,
    /// max over n of ‖Fₙ − Fₙ∘swap‖ for the orbit first coordinates.
    pub max_symmetry_residual: f64,
    /// max over n of |⟨Tⁿe₃, (z₁−z₂,0,0)⟩|.
    pub max_witness_inner: f64,
    /// Distance of the unit antisymmetric witness from the Krylov span.
    pub witness_distance: f64,
    /// Krylov ranks of the Brownian shift orbit of (0,1), per step.
    pub b_krylov_ranks: Vec<usize>,
    pub pass: bool,
}

/// Build the orbit {Tⁿe₃}, certify that every first coordinate is
/// symmetric in z₁, z₂, and that the antisymmetric unit witness
/// (z₁−z₂,0,0)/√2 stays at distance one from the Krylov span. The
/// parallel Brownian-shift experiment shows (0,1) generating full-rank
/// Krylov spaces.
pub fn krylov_noncyclicity(
    p: &BrownianParams,
    n_max: usize,
    trunc: &Truncation,
) -> Result<NoncyclicReport> {
    if trunc.deg_z1() != trunc.deg_z2() {
        return Err(Error::Dimension(
            "the symmetry certificate needs a square bidisk truncation".into(),
        ));
    }
    let mut witness = StateVec::zero(trunc);
    witness.big.set(1, 0, Complex64::new(1.0, 0.0));
    witness.big.set(0, 1, Complex64::new(-1.0, 0.0));
    let unit_witness = witness.scale(Complex64::new(0.5f64.sqrt(), 0.0));

    let mut orbit = Vec::with_capacity(n_max + 1);
    let mut cur = StateVec::e3(trunc);
    for n in 0..=n_max {
        if n > 0 {
            cur = apply_t(p, &cur, trunc)?;
        }
        orbit.push(cur.clone());
    }

    let mut max_symmetry_residual = 0.0f64;
    let mut max_witness_inner = 0.0f64;
    for v in &orbit {
        max_symmetry_residual = max_symmetry_residual.max(swap_symmetry_residual(&v.big)?);
        max_witness_inner = max_witness_inner.max(v.inner(&witness)?.norm());
    }

    let krylov = gram::accumulate_rank(&orbit, 1e-8);
    let witness_distance = gram::residual_norm(&unit_witness, &krylov);

    // Brownian-shift counterpart: the scalar direction is cyclic there.
    let mut b_krylov_ranks = Vec::with_capacity(n_max + 1);
    let mut kept: Vec<StateVec> = Vec::new();
    let mut f = HardyVec1::zeros(trunc.deg_z());
    let mut alpha = Complex64::new(1.0, 0.0);
    for n in 0..=n_max {
        if n > 0 {
            let (nf, na) = apply_b(p, &f, alpha, trunc)?;
            f = nf;
            alpha = na;
        }
        let cand = StateVec::new(HardyVec2::zeros_for(trunc), f.clone(), alpha);
        let mut r = cand;
        gram::project_out(&mut r, &kept);
        let n_res = r.norm();
        if n_res > 1e-8 {
            r.scale_mut(Complex64::new(1.0 / n_res, 0.0));
            kept.push(r);
        }
        b_krylov_ranks.push(kept.len());
    }

    let ranks_full = b_krylov_ranks
        .iter()
        .enumerate()
        .all(|(n, &r)| r == (n + 1).min(trunc.deg_z() + 2));
    let pass = max_symmetry_residual <= 1e-13
        && max_witness_inner <= 1e-12
        && (witness_distance - 1.0).abs() <= 1e-10
        && ranks_full;

    Ok(NoncyclicReport {
        n_max,
        max_symmetry_residual,
        max_witness_inner,
        witness_distance,
        b_krylov_ranks,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::c64;
    use crate::operators::apply_t_power;

    fn params(sigma: f64, theta: f64) -> BrownianParams {
        BrownianParams::new(sigma, theta).unwrap()
    }

    #[test]
    fn power_table_matches_the_closed_norm() {
        let t = Truncation::cube(22);
        for &sigma in &[0.5, 1.0, 2.0] {
            let p = params(sigma, 0.9);
            let table = power_unbounded_certificate(&p, 20, &t).unwrap();
            assert!(table.pass);
            for row in &table.rows {
                let closed = orbit_e3_norm_sq(&p, row.n);
                assert!((row.norm_sq - closed).abs() < 1e-10 * closed);
                assert!(row.norm_sq >= row.lower_bound * (1.0 - 1e-12));
            }
        }
        // spot values for sigma = 1: 1 + n + n(n−1)/2
        let p = params(1.0, 0.0);
        let table = power_unbounded_certificate(&p, 4, &t).unwrap();
        assert!((table.rows[1].norm_sq - 2.0).abs() < 1e-12);
        assert!((table.rows[4].norm_sq - 11.0).abs() < 1e-12);
    }

    #[test]
    fn adjoint_orbit_of_scalar_direction() {
        let t = Truncation::cube(6);
        let p = params(1.0, 1.3);
        let curve = c00_adjoint_decay(&p, &StateVec::e3(&t), 50, &t);
        assert_eq!(curve.label, "adjoint-case1");
        assert!((curve.c_constant - 1.0).abs() < 1e-12);
        assert!(curve.envelope_ok);
        for (n, v) in curve.n_values.iter().zip(&curve.norms) {
            assert!((v - 2f64.powf(-(*n as f64) / 2.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn adjoint_orbit_of_disk_monomial_plateaus() {
        let t = Truncation::cube(8);
        let p = params(1.0, 0.0);
        let x = StateVec::from_small(HardyVec1::monomial(3, 8).unwrap(), &t);
        let curve = c00_adjoint_decay(&p, &x, 30, &t);
        assert_eq!(curve.label, "adjoint-case2");
        // un-normalized norms stay at max{1, σ} = 1 after k+1 = 4 steps
        assert!((curve.c_constant - 1.0).abs() < 1e-12);
        let raw: Vec<f64> = curve
            .n_values
            .iter()
            .zip(&curve.norms)
            .map(|(n, v)| v * 2f64.powf(*n as f64 / 2.0))
            .collect();
        for r in raw.iter().skip(4) {
            assert!((r - 1.0).abs() < 1e-12);
        }
        assert!(curve.norms[30] < 1e-3);
    }

    #[test]
    fn adjoint_orbit_of_bidisk_monomial_enters_scalar_slot() {
        let t = Truncation::cube(8);
        let p = params(1.0, 0.4);
        let x = StateVec::from_big(HardyVec2::monomial(2, 1, &t).unwrap(), &t);
        let curve = c00_adjoint_decay(&p, &x, 40, &t);
        assert_eq!(curve.label, "adjoint-case3");
        assert!(curve.envelope_ok);
        // after the transient the un-normalized orbit has constant modulus
        let raw_tail: Vec<f64> = curve
            .n_values
            .iter()
            .zip(&curve.norms)
            .skip(6)
            .map(|(n, v)| v * 2f64.powf(*n as f64 / 2.0))
            .collect();
        for w in raw_tail.windows(2) {
            assert!((w[0] - w[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn adjoint_orbits_are_truncation_exact() {
        let small = Truncation::cube(8);
        let large = Truncation::cube(16);
        let p = params(1.3, 2.2);
        for (m, k) in [(0, 0), (2, 1), (4, 4)] {
            let xs = StateVec::from_big(HardyVec2::monomial(m, k, &small).unwrap(), &small);
            let xl = StateVec::from_big(HardyVec2::monomial(m, k, &large).unwrap(), &large);
            let cs = c00_adjoint_decay(&p, &xs, 30, &small);
            let cl = c00_adjoint_decay(&p, &xl, 30, &large);
            for (a, b) in cs.norms.iter().zip(&cl.norms) {
                assert!((a - b).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn forward_decay_of_scalar_direction_matches_formula() {
        let t = Truncation::cube(42);
        let p = params(1.0, 0.0);
        let curve = c00_forward_decay(&p, &StateVec::e3(&t), 40, &t).unwrap();
        assert_eq!(curve.capped_at, None);
        assert!(curve.envelope_ok);
        for (n, v) in curve.n_values.iter().zip(&curve.norms) {
            let expect = orbit_e3_norm_sq(&p, *n).sqrt() / 2f64.powf(*n as f64 / 2.0);
            assert!((v - expect).abs() < 1e-10, "n = {n}");
        }
        // spot value at n = 40: √821 / 2^20
        let v40 = curve.norms[40];
        assert!((v40 - 821f64.sqrt() / 2f64.powi(20)).abs() < 1e-12);
    }

    #[test]
    fn forward_decay_caps_at_the_truncation() {
        let t = Truncation::cube(10);
        let p = params(1.0, 0.0);
        let curve = c00_forward_decay(&p, &StateVec::e3(&t), 40, &t).unwrap();
        let cap = curve.capped_at.expect("must cap");
        assert!(cap >= 10 && cap <= 12);
        assert_eq!(curve.norms.len(), cap + 1);
    }

    #[test]
    fn forward_decay_of_disk_vector_respects_growth_bound() {
        let t = Truncation::cube(24);
        let p = params(1.0, 0.7);
        let f = HardyVec1::from_reals(&[0.5, 0.5, 0.5, 0.5]).resized(24, 1e-12).unwrap();
        let unit = f.scale(c64(1.0 / f.norm(), 0.0));
        let x = StateVec::from_small(unit, &t);
        let curve = c00_forward_decay(&p, &x, 20, &t).unwrap();
        for (n, v) in curve.n_values.iter().zip(&curve.norms) {
            let bound = (1.0 + *n as f64).sqrt() / 2f64.powf(*n as f64 / 2.0);
            assert!(*v <= bound * (1.0 + 1e-12));
        }
    }

    #[test]
    fn forward_decay_of_bidisk_vector_is_exact_geometric() {
        let t = Truncation::cube(30);
        let p = params(1.0, 0.0);
        let x = StateVec::from_big(HardyVec2::monomial(1, 2, &t).unwrap(), &t);
        let curve = c00_forward_decay(&p, &x, 25, &t).unwrap();
        for (n, v) in curve.n_values.iter().zip(&curve.norms) {
            assert!((v - 2f64.powf(-(*n as f64) / 2.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn normalized_orbit_tail_is_strictly_decreasing() {
        let t = Truncation::cube(42);
        let p = params(1.0, 0.0);
        let curve = c00_forward_decay(&p, &StateVec::e3(&t), 40, &t).unwrap();
        for n in 5..curve.norms.len() - 1 {
            assert!(curve.norms[n + 1] < curve.norms[n], "n = {n}");
        }
    }

    #[test]
    fn noncyclicity_certificate() {
        let t = Truncation::cube(22);
        for theta in [0.0, std::f64::consts::FRAC_PI_3] {
            let p = params(1.0, theta);
            let report = krylov_noncyclicity(&p, 20, &t).unwrap();
            assert!(report.pass, "theta = {theta}: {report:?}");
            assert_eq!(report.max_symmetry_residual, 0.0);
            assert!((report.witness_distance - 1.0).abs() < 1e-10);
            for (n, &r) in report.b_krylov_ranks.iter().enumerate() {
                assert_eq!(r, n + 1);
            }
        }
    }

    #[test]
    fn orbit_norm_defect_matches_quadratic_term() {
        let t = Truncation::cube(22);
        let p = params(1.4, 1.0);
        let e3 = StateVec::e3(&t);
        let s4 = p.sigma().powi(4);
        for n in 0..=20 {
            let direct = apply_t_power(&p, &e3, n, &t).unwrap().norm_sq();
            let defect = direct - (1.0 + n as f64 * p.sigma() * p.sigma());
            let expect = s4 * (n * n.saturating_sub(1)) as f64 / 2.0;
            assert!((defect - expect).abs() < 1e-10 * (1.0 + expect));
        }
    }
}
