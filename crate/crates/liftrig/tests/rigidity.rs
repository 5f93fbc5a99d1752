use std::collections::BTreeSet;
use std::time::Instant;

use lrlab_liftrig::{det_trick_check, enumerate_tame_lifts, enumerate_with_sigma, verify_rigidity, GaloisRing, LiftError, Sigma};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Naive oracle: elements as integer pairs, ω² = −1 − ω, powers by repeated product.
mod naive {
    pub type E = (i64, i64);
    pub type M = [[E; 2]; 2];

    pub fn mul(m: i64, x: E, y: E) -> E {
        let (a, b) = x;
        let (c, d) = y;
        ((a * c - b * d).rem_euclid(m), (a * d + b * c - b * d).rem_euclid(m))
    }

    pub fn add(m: i64, x: E, y: E) -> E {
        ((x.0 + y.0).rem_euclid(m), (x.1 + y.1).rem_euclid(m))
    }

    pub fn mat_mul(m: i64, x: &M, y: &M) -> M {
        let mut out = [[(0, 0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = add(m, mul(m, x[i][0], y[0][j]), mul(m, x[i][1], y[1][j]));
            }
        }
        out
    }

    /// Constrained solutions for r(σ) = diag(ω, β), β = ω²·q⁻¹, by brute force.
    pub fn solutions(q: u64, k: u32, constrained: bool) -> Vec<M> {
        let m = 1i64 << k;
        let qinv = (1..m).find(|x| (x * q as i64) % m == 1).unwrap();
        let w: E = (0, 1);
        let w2 = mul(m, w, w);
        let beta = mul(m, w2, (qinv, 0));
        // σ⁻¹ = diag(ω², β⁻¹) with β⁻¹ = ω·q
        let sigma = [[w, (0, 0)], [(0, 0), beta]];
        let sigma_inv = [[w2, (0, 0)], [(0, 0), mul(m, w, (q as i64 % m, 0))]];
        let evens: Vec<E> = (0..m / 2).flat_map(|a| (0..m / 2).map(move |b| (2 * a, 2 * b))).collect();
        let mut out = Vec::new();
        for &a in &evens {
            for &b in &evens {
                for &c in &evens {
                    for &d in &evens {
                        let tau = [[add(m, (1, 0), a), b], [c, add(m, (1, 0), d)]];
                        if constrained {
                            let det = add(m, mul(m, tau[0][0], tau[1][1]), mul(m, (m - 1, 0), mul(m, tau[0][1], tau[1][0])));
                            if det != (1, 0) {
                                continue;
                            }
                        }
                        let lhs = mat_mul(m, &mat_mul(m, &sigma, &tau), &sigma_inv);
                        let mut rhs = tau;
                        for _ in 1..q {
                            rhs = mat_mul(m, &rhs, &tau);
                        }
                        if lhs == rhs {
                            out.push(tau);
                        }
                    }
                }
            }
        }
        out
    }
}

fn as_pairs(ms: &[lrlab_liftrig::Mat2]) -> BTreeSet<Vec<(i64, i64)>> {
    ms.iter().map(|m| m.0.iter().flatten().map(|e| (e.a as i64, e.b as i64)).collect()).collect()
}

#[test]
fn raw_enumeration_matches_naive_oracle() {
    for (q, k) in [(3, 2), (3, 3), (7, 2), (7, 3), (11, 3)] {
        for constrained in [true, false] {
            let ring = GaloisRing::new(k);
            let ours = enumerate_with_sigma(q, k, constrained, &Sigma::standard(&ring, q)).unwrap();
            let oracle: BTreeSet<Vec<(i64, i64)>> =
                naive::solutions(q, k, constrained).iter().map(|m| m.iter().flatten().copied().collect()).collect();
            assert_eq!(as_pairs(&ours), oracle, "q={q} k={k} constrained={constrained}");
        }
    }
}

#[test]
fn raw_constrained_set_is_scalar_square_roots_of_one() {
    // x ≡ 1 mod 2 with x² = 1 in GR(8, 2), counted by brute force
    let ring = GaloisRing::new(3);
    let roots = (0..8)
        .flat_map(|a| (0..8).map(move |b| (a, b)))
        .filter(|&(a, b)| {
            let x = ring.elem(a, b);
            ring.residue(x) == (1, 0) && ring.mul(x, x) == ring.one()
        })
        .count();
    let sols = enumerate_tame_lifts(3, 3, true).unwrap();
    assert_eq!(sols.len(), roots);
    assert!(sols.iter().all(|s| s.r_tau.is_scalar()));
}

#[test]
fn rigidity_examples() {
    let start = Instant::now();
    for (q, k) in [(3, 3), (7, 3), (3, 4)] {
        let r = verify_rigidity(q, k).unwrap();
        assert_eq!(r.solution_count, 2, "q={q} k={k}");
        assert!(r.all_in_mu2 && r.off_diagonal_vanish && r.key_units);
        let ring = GaloisRing::new(k);
        assert_eq!(r.solutions, vec![ring.mat_fmt(&ring.identity()), ring.mat_fmt(&lrlab_liftrig::Mat2::scalar(ring.int(-1)))]);
    }
    assert!(start.elapsed().as_secs() < 120);
    assert_eq!(verify_rigidity(5, 3), Err(LiftError::NotThreeModFour(5)));
    assert!(matches!(verify_rigidity(3, 5), Err(LiftError::CapExceeded { .. })));
}

#[test]
fn unconstrained_solutions_are_diagonal_of_order_two() {
    let ring = GaloisRing::new(3);
    for s in enumerate_tame_lifts(3, 3, false).unwrap() {
        assert!(s.r_tau.is_diagonal());
        for i in 0..2 {
            let x = s.r_tau.0[i][i];
            assert_eq!(ring.mul(x, x), ring.one());
        }
    }
}

#[test]
fn det_trick_examples() {
    for (q, k) in [(3, 3), (3, 4), (7, 3)] {
        let r = det_trick_check(q, k).unwrap();
        assert!(r.dets_order_le_2 && r.all_diagonal);
        assert_eq!(r.stable_dets, vec!["1".to_string(), "-1".to_string()]);
        // stable unconstrained solutions are diag(±1, ±1)
        assert_eq!(r.stable_solution_count, 4);
    }
    let ring = GaloisRing::new(3);
    assert_eq!(ring.det(&ring.identity()), ring.one());
}

#[test]
fn solution_sets_do_not_depend_on_the_sigma_lift() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (q, k) in [(3u64, 3u32), (7, 3)] {
        let ring = GaloisRing::new(k);
        for constrained in [true, false] {
            let base = enumerate_with_sigma(q, k, constrained, &Sigma::standard(&ring, q)).unwrap();
            for _ in 0..10 {
                let sigma = Sigma::random(&ring, q, &mut rng);
                assert!(sigma.key_units(&ring, q));
                assert_eq!(enumerate_with_sigma(q, k, constrained, &sigma).unwrap(), base);
            }
        }
    }
}

mod ring_props {
    use super::naive;
    use lrlab_liftrig::GaloisRing;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn multiplication_matches_naive(k in 1u32..8, a in 0i64..256, b in 0i64..256, c in 0i64..256, d in 0i64..256) {
            let ring = GaloisRing::new(k);
            let m = 1i64 << k;
            let got = ring.mul(ring.elem(a, b), ring.elem(c, d));
            let want = naive::mul(m, (a % m, b % m), (c % m, d % m));
            prop_assert_eq!(got, ring.elem(want.0, want.1));
        }

        #[test]
        fn units_invert_and_norm_is_multiplicative(k in 1u32..8, a in 0i64..256, b in 0i64..256, c in 0i64..256, d in 0i64..256) {
            let ring = GaloisRing::new(k);
            let (x, y) = (ring.elem(a, b), ring.elem(c, d));
            prop_assert_eq!(ring.inv(x).is_some(), ring.is_unit(x));
            if let Some(xi) = ring.inv(x) {
                prop_assert_eq!(ring.mul(x, xi), ring.one());
            }
            let m = 1u64 << k;
            prop_assert_eq!(ring.norm(ring.mul(x, y)) as u64, (ring.norm(x) as u64 * ring.norm(y) as u64) % m);
        }
    }
}
