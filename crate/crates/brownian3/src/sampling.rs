//! Seeded random vectors with a safety margin, used by randomized checks.

use num_complex::Complex64;
use rand::Rng;

use crate::hardy::{HardyVec1, HardyVec2, StateVec};
use crate::trunc::Truncation;

fn random_c64<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Random disk vector supported on degrees ≤ deg_z − margin.
pub fn random_hardy1<R: Rng>(rng: &mut R, trunc: &Truncation, margin: usize) -> HardyVec1 {
    let mut v = HardyVec1::zeros(trunc.deg_z());
    for k in 0..=trunc.deg_z().saturating_sub(margin) {
        v.set(k, random_c64(rng));
    }
    v
}

/// Random bidisk vector supported on bidegrees ≤ bounds − margin.
pub fn random_hardy2<R: Rng>(rng: &mut R, trunc: &Truncation, margin: usize) -> HardyVec2 {
    let mut v = HardyVec2::zeros_for(trunc);
    for m in 0..=trunc.deg_z1().saturating_sub(margin) {
        for k in 0..=trunc.deg_z2().saturating_sub(margin) {
            v.set(m, k, random_c64(rng));
        }
    }
    v
}

/// Random state vector that survives `margin` degree raises exactly.
pub fn random_safe_state<R: Rng>(rng: &mut R, trunc: &Truncation, margin: usize) -> StateVec {
    StateVec::new(
        random_hardy2(rng, trunc, margin),
        random_hardy1(rng, trunc, margin),
        random_c64(rng),
    )
}
