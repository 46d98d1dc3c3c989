//! Random valid parameters for sweeps.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::gl_ring::{SelfDualKind, SupercuspidalLabel};
use crate::so_params::{DiscreteLParameter, Summand};
use crate::symbolics::{HalfInt, UnitSign};

/// Bounds for `random_parameter`.
#[derive(Clone, Copy, Debug)]
pub struct SampleBounds {
    /// Maximum number of summands on each of the two unramified lines.
    pub max_d: usize,
    /// Maximum number of ramified lines.
    pub max_ramified_lines: usize,
    /// Maximum number of summands per ramified line.
    pub max_ramified_d: usize,
    /// κ's are drawn below `max_d + spread`.
    pub spread: i64,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds { max_d: 5, max_ramified_lines: 2, max_ramified_d: 3, spread: 3 }
    }
}

/// `count` distinct κ's of the given parity, ascending.
fn kappas<R: Rng>(rng: &mut R, count: usize, integral: bool, pool: i64) -> Vec<HalfInt> {
    let mut all: Vec<HalfInt> = (0..pool)
        .map(|k| if integral { HalfInt::int(k) } else { HalfInt::from_twice(2 * k + 1) })
        .collect();
    all.shuffle(rng);
    let mut out: Vec<HalfInt> = all.into_iter().take(count).collect();
    out.sort();
    out
}

fn random_ramified<R: Rng>(rng: &mut R, idx: usize) -> SupercuspidalLabel {
    let base = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        SupercuspidalLabel::ramified(&format!("rho{idx}"), 2 * rng.gen_range(1..=2), SelfDualKind::Symplectic, base)
    } else {
        SupercuspidalLabel::ramified(&format!("rho{idx}"), rng.gen_range(1..=3), SelfDualKind::Orthogonal, base)
    }
}

/// A valid discrete parameter with at most `max_d` summands on each unramified line and
/// some ramified content carrying random ε-signs.
pub fn random_parameter<R: Rng>(rng: &mut R, b: &SampleBounds) -> DiscreteLParameter {
    let mut summands = Vec::new();
    for label in [SupercuspidalLabel::chi(), SupercuspidalLabel::chi_prime()] {
        let d = rng.gen_range(0..=b.max_d);
        for k in kappas(rng, d, false, b.max_d as i64 + b.spread) {
            summands.push(Summand::new(label.clone(), k));
        }
    }
    let lines = rng.gen_range(0..=b.max_ramified_lines);
    for idx in 0..lines {
        let label = random_ramified(rng, idx);
        let integral = label.selfdual_kind == SelfDualKind::Symplectic;
        let d = rng.gen_range(1..=b.max_ramified_d.max(1));
        for k in kappas(rng, d, integral, b.max_ramified_d as i64 + b.spread) {
            let eps = if rng.gen_bool(0.5) { UnitSign::Plus } else { UnitSign::Minus };
            summands.push(Summand { label: label.clone(), kappa: k, epsilon: Some(eps) });
        }
    }
    DiscreteLParameter::from_summands(summands)
}
