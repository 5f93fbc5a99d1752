//! Random systems: start from a standard Lagrangian and apply a random word
//! of transvections preserving the relevant form.

use rand::{Rng, RngCore};

use crate::field::Gf2k;
use crate::linalg::{FVec, Subspace};
use crate::quad::QuadSpace;
use crate::system::{GlobalAxiom, Place, SelmerSystem};
use crate::SelmerError;

pub const DEFAULT_WORD_LENGTH: usize = 64;

pub fn random_vector(field: &Gf2k, n: usize, rng: &mut impl RngCore) -> FVec {
    let mask = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut v = FVec::ZERO;
    for j in 0..field.degree as usize {
        v.planes[j] = rng.next_u64() & mask;
    }
    v
}

/// Random element of a subspace.
pub fn random_element(w: &Subspace, rng: &mut impl RngCore) -> FVec {
    let f = w.field;
    w.basis().iter().fold(FVec::ZERO, |acc, b| acc.axpy((rng.next_u32() as u8) & f.mask(), b, &f))
}

/// `x ↦ x + (B(x,a)/Q(a))·a`, an isometry of Q when `Q(a) ≠ 0`.
pub fn orthogonal_transvection(space: &QuadSpace, a: &FVec, x: &FVec) -> FVec {
    let f = space.field;
    let c = f.div(space.b(x, a), space.q(a)).expect("Q(a) must be nonzero");
    x.axpy(c, a, &f)
}

/// `x ↦ x + c·B(x,a)·a`, an isometry of B.
pub fn symplectic_transvection(space: &QuadSpace, a: &FVec, c: u8, x: &FVec) -> FVec {
    let f = space.field;
    x.axpy(f.mul(c, space.b(x, a)), a, &f)
}

/// A random Q-Lagrangian, or `None` when the Arf invariant is 1.
pub fn random_q_lagrangian(space: &QuadSpace, word: usize, rng: &mut impl RngCore) -> Option<Subspace> {
    let mut w = space.standard_lagrangian()?;
    if space.dim() == 0 {
        return Some(w);
    }
    for _ in 0..word {
        let a = loop {
            let a = random_vector(&space.field, space.dim(), rng);
            if space.q(&a) != 0 {
                break a;
            }
        };
        w = w.map(space.dim(), |x| orthogonal_transvection(space, &a, x));
    }
    Some(w)
}

/// A random B-Lagrangian (not necessarily Q-isotropic).
pub fn random_self_dual(space: &QuadSpace, word: usize, rng: &mut impl RngCore) -> Subspace {
    let f = space.field;
    let mut w = Subspace::span(f, space.dim(), space.symplectic_basis().into_iter().map(|(e, _)| e));
    if space.dim() == 0 {
        return w;
    }
    for _ in 0..word {
        let a = random_vector(&f, space.dim(), rng);
        let c = 1 + (rng.next_u32() as u8 % f.mask().max(1));
        w = w.map(space.dim(), |x| symplectic_transvection(space, &a, c, x));
    }
    w
}

/// Hyperbolic places of the given dimensions with random Q-isotropic
/// conditions and a random global image.
pub fn random_system(field: Gf2k, place_dims: &[usize], word: usize, rng: &mut impl RngCore) -> Result<SelmerSystem, SelmerError> {
    let mut places = Vec::with_capacity(place_dims.len());
    let mut ambient = QuadSpace::hyperbolic(field, 0);
    for (i, &d) in place_dims.iter().enumerate() {
        if d % 2 != 0 {
            return Err(SelmerError::Malformed(format!("place dimension {d} is odd")));
        }
        let space = QuadSpace::hyperbolic(field, d / 2);
        let cond = random_q_lagrangian(&space, word.min(16), rng).expect("hyperbolic spaces have Arf 0");
        ambient = ambient.orthogonal_sum(&space);
        places.push(Place::new(format!("v{}", i + 1), space, cond));
    }
    let global = random_q_lagrangian(&ambient, word, rng).expect("hyperbolic spaces have Arf 0");
    SelmerSystem::new(field, places, global, GlobalAxiom::Quadratic)
}

/// Random place dimensions in {0, 2, 4} summing to at most `max_total`.
pub fn random_place_dims(max_total: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut dims = Vec::new();
    let mut total = 0;
    while total + 2 <= max_total && (dims.is_empty() || rng.random_bool(0.8)) {
        let d = if total + 4 <= max_total && rng.random_bool(0.25) { 4 } else { 2 };
        dims.push(d);
        total += d;
    }
    dims
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn transvections_preserve_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in [1, 2, 3] {
            let f = Gf2k::new(d).unwrap();
            let s = QuadSpace::hyperbolic(f, 3);
            for _ in 0..50 {
                let l = random_q_lagrangian(&s, 8, &mut rng).unwrap();
                assert!(s.is_q_lagrangian(&l));
                let b = random_self_dual(&s, 8, &mut rng);
                assert!(s.is_self_dual(&b));
            }
        }
    }
}
