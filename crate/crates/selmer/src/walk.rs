//! Rank walks: reach a prescribed Selmer dimension by appending one place at a
//! time and switching its condition to the other Q-isotropic line.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::field::Gf2k;
use crate::linalg::{FVec, Subspace};
use crate::quad::QuadSpace;
use crate::random::{random_element, random_vector};
use crate::system::{Flavor, GlobalAxiom, Place, SelmerSystem, StepMode, StepOutcome, Want};
use crate::SelmerError;

const SAMPLE_TRIES: usize = 64;

/// `selmer_dim + extra` hyperbolic planes with condition `⟨e1⟩`; `G` meets the
/// conditions in the first `selmer_dim` planes and misses them in the rest.
pub fn standard_seed(field: Gf2k, selmer_dim: usize, extra: usize) -> SelmerSystem {
    let count = selmer_dim + extra;
    let mut places = Vec::with_capacity(count);
    let mut global = Subspace::zero(field, 2 * count);
    for i in 0..count {
        let space = QuadSpace::hyperbolic(field, 1);
        places.push(Place::new(format!("s{}", i + 1), space, Subspace::span(field, 2, [FVec::unit(0)])));
        global.insert(FVec::unit(2 * i + usize::from(i >= selmer_dim)));
    }
    SelmerSystem::new(field, places, global, GlobalAxiom::Quadratic).expect("seed system is valid")
}

#[derive(Clone, Debug, Serialize)]
pub struct WalkTrace {
    pub seed_dim: usize,
    pub target: usize,
    pub rng_seed: u64,
    pub steps: Vec<StepOutcome>,
    pub final_dim: usize,
    #[serde(skip)]
    pub system: SelmerSystem,
}

/// Extension vector for the next place: `B(Sel, u) = 0` to raise, `≠ 0` to lower.
fn extension_vector(sys: &SelmerSystem, want: Want, rng: &mut ChaCha8Rng) -> FVec {
    let space = sys.ambient();
    let f = sys.field;
    let sel = sys.selmer_group();
    match want {
        Want::Raise => {
            let perp = space.perp(&sel);
            (0..SAMPLE_TRIES)
                .map(|_| random_element(&perp, rng))
                .find(|u| space.q(u) == 0)
                .unwrap_or(FVec::ZERO)
        }
        Want::Lower => {
            let s = loop {
                let s = random_element(&sel, rng);
                if !s.is_zero() {
                    break s;
                }
            };
            let ms = space.gram_apply(&s);
            let y = (0..SAMPLE_TRIES)
                .map(|_| random_vector(&f, sys.total_dim(), rng))
                .find(|y| space.b(&s, y) != 0)
                .unwrap_or_else(|| FVec::unit(ms.first_nonzero().expect("nondegenerate form")));
            let y = y.scale(f.inv(space.b(&s, &y)).unwrap(), &f);
            // Q(y + c·s) = Q(y) + c since B(s, y) = 1 and Q(s) = 0
            y.axpy(space.q(&y), &s, &f)
        }
    }
}

/// Walks from `seed` to Selmer dimension `target`, one ±1 step per new place.
///
/// Every step appends a hyperbolic plane with its unramified line `⟨e1⟩`,
/// extends `G` so that the Selmer residue there is zero (to raise) or nonzero
/// (to lower), then switches to the toric line `⟨e2⟩` through the quadratic
/// step. The trace depends only on `(seed, target, rng_seed)`.
pub fn rank_walk(seed: &SelmerSystem, target: usize, rng_seed: u64) -> Result<WalkTrace, SelmerError> {
    if seed.axiom != GlobalAxiom::Quadratic || seed.places().iter().any(|p| p.flavor != Flavor::QIsotropicLagrangian) {
        return Err(SelmerError::Precondition("rank walk needs Q-isotropic conditions and Q-isotropic G".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut sys = seed.clone();
    let seed_dim = sys.selmer_dim();
    let mut steps = Vec::new();
    let toric = Subspace::span(sys.field, 2, [FVec::unit(1)]);
    while sys.selmer_dim() != target {
        let want = if sys.selmer_dim() > target { Want::Lower } else { Want::Raise };
        let u = extension_vector(&sys, want, &mut rng);
        let label = format!("w{}", steps.len() + 1);
        let extended = sys.extend_hyperbolic(label.clone(), &u)?;
        let w = extended.places().len() - 1;
        let residue_zero = extended.residue(w).dim() == 0;
        if residue_zero != (want == Want::Raise) {
            return Err(SelmerError::ConclusionViolated(format!("{label}: residue does not match the requested step")));
        }
        let place = &extended.places()[w];
        debug_assert!(place.dim() == 2 && place.space.is_q_isotropic(&toric));
        let (next, outcome) = extended.apply_step(w, &toric, StepMode::Quadratic)?;
        if outcome.delta().abs() != 1 {
            return Err(SelmerError::ConclusionViolated(format!("{label}: step of size {}", outcome.delta())));
        }
        steps.push(outcome);
        sys = next;
    }
    Ok(WalkTrace { seed_dim, target, rng_seed, final_dim: sys.selmer_dim(), steps, system: sys })
}
