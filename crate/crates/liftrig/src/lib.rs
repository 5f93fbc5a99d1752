//! Rigidity of tame lifts at an auxiliary prime `q ≡ 3 mod 4`.
//!
//! Inertia at `q` acts through the tame quotient, topologically generated by
//! `σ` (a Frobenius lift) and `τ` with `στσ⁻¹ = τ^q`. With `r(σ)` diagonal,
//! reducing to the distinct eigenvalues `ω, ω²` of F_4, and `r(τ) ≡ 1 mod 2`,
//! the relation forces `r(τ)` to be diagonal with entries of order at most 2;
//! with `det r(τ) = 1` as well, `r(τ) = ±1`.
//!
//! Solutions are enumerated exhaustively over GR(2^k, 2). Modulo `2^k` the
//! relation also admits spurious scalars `x ≡ ±1 mod 2^(k-1)` with
//! `x² ≡ 1`, which do not lift to higher precision; the *stable* solutions are
//! the reductions of solutions found at precision `2k`.

pub mod ring;

use rayon::prelude::*;
use rand::RngCore;
use serde::Serialize;

pub use ring::{GaloisRing, Gr, Mat2};

/// Exhaustive enumeration has 4^(4(k−1)) candidates.
pub const MAX_ENUMERATION_PRECISION: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiftError {
    #[error("q = {0} is not ≡ 3 mod 4; auxiliary primes are required to be 3 mod 4")]
    NotThreeModFour(u64),
    #[error("q = {0} is not an odd prime power")]
    NotPrimePower(u64),
    #[error("precision {requested} exceeds the enumeration cap {max}")]
    CapExceeded { requested: u32, max: u32 },
    #[error("r(σ) is not admissible: {0}")]
    BadSigma(String),
    #[error("counterexample: {what}; witness r(τ) = {witness}")]
    Counterexample { what: String, witness: String },
}

fn is_odd_prime_power(q: u64) -> bool {
    if q < 3 || q % 2 == 0 {
        return false;
    }
    let p = (3..).step_by(2).find(|p| q % p == 0 || p * p > q).map(|p| if q % p == 0 { p } else { q }).unwrap();
    let mut m = q;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

fn check_q(q: u64) -> Result<(), LiftError> {
    if !is_odd_prime_power(q) {
        return Err(LiftError::NotPrimePower(q));
    }
    if q % 4 != 3 {
        return Err(LiftError::NotThreeModFour(q));
    }
    Ok(())
}

/// A diagonal `r(σ)` with residues `ω, ω²` and determinant `q⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sigma {
    pub alpha: Gr,
    pub beta: Gr,
}

impl Sigma {
    /// `α = ω`, `β = q⁻¹ω⁻¹`.
    pub fn standard(ring: &GaloisRing, q: u64) -> Sigma {
        Sigma::with_alpha(ring, q, ring.omega()).expect("ω is admissible")
    }

    pub fn with_alpha(ring: &GaloisRing, q: u64, alpha: Gr) -> Result<Sigma, LiftError> {
        if ring.residue(alpha) != (0, 1) {
            return Err(LiftError::BadSigma(format!("α = {} does not reduce to ω", ring.fmt(alpha))));
        }
        let qinv = ring.inv(ring.int(q as i64)).ok_or_else(|| LiftError::BadSigma("q is not invertible".into()))?;
        let beta = ring.mul(qinv, ring.inv(alpha).unwrap());
        Ok(Sigma { alpha, beta })
    }

    /// `α = ω + 2x` for random `x`.
    pub fn random(ring: &GaloisRing, q: u64, rng: &mut impl RngCore) -> Sigma {
        let x = ring.elem(rng.next_u32() as i64, rng.next_u32() as i64);
        let alpha = ring.add(ring.omega(), ring.add(x, x));
        Sigma::with_alpha(ring, q, alpha).expect("residue is ω")
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::diag(self.alpha, self.beta)
    }

    pub fn reduce(&self, ring: &GaloisRing) -> Sigma {
        Sigma { alpha: ring.reduce(self.alpha), beta: ring.reduce(self.beta) }
    }

    /// Residues of `αβ⁻¹ − q` and `α⁻¹β − q` are `ω² − 1` and `ω − 1`, both nonzero.
    pub fn key_units(&self, ring: &GaloisRing, q: u64) -> bool {
        let q = ring.int(q as i64);
        let (a, b) = (self.alpha, self.beta);
        let x = ring.sub(ring.mul(a, ring.inv(b).unwrap()), q);
        let y = ring.sub(ring.mul(ring.inv(a).unwrap(), b), q);
        ring.is_unit(x) && ring.is_unit(y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TameLiftInstance {
    pub q: u64,
    pub precision: u32,
    pub r_sigma: Mat2,
    pub r_tau: Mat2,
}

fn satisfies(ring: &GaloisRing, q: u64, sigma: &Mat2, sigma_inv: &Mat2, tau: &Mat2, constrained: bool) -> bool {
    if constrained && ring.det(tau) != ring.one() {
        return false;
    }
    let lhs = ring.mat_mul(&ring.mat_mul(sigma, tau), sigma_inv);
    lhs == ring.mat_pow(tau, q)
}

/// All `r(τ) = 1 + M`, `M ≡ 0 mod 2`, with `r(σ)r(τ)r(σ)⁻¹ = r(τ)^q`
/// (and `det r(τ) = 1` when constrained), sorted.
pub fn enumerate_with_sigma(q: u64, k: u32, constrained: bool, sigma: &Sigma) -> Result<Vec<Mat2>, LiftError> {
    check_q(q)?;
    if k > MAX_ENUMERATION_PRECISION {
        return Err(LiftError::CapExceeded { requested: k, max: MAX_ENUMERATION_PRECISION });
    }
    let ring = GaloisRing::new(k);
    let sigma = sigma.reduce(&ring);
    let s = sigma.matrix();
    let s_inv = ring.mat_inv(&s).ok_or_else(|| LiftError::BadSigma("r(σ) is not invertible".into()))?;
    let ideal = ring.maximal_ideal();
    let one = ring.one();
    let mut out: Vec<Mat2> = ideal
        .par_iter()
        .flat_map_iter(|&m00| {
            let ideal = &ideal;
            let ring = &ring;
            let (s, s_inv) = (&s, &s_inv);
            ideal.iter().flat_map(move |&m01| {
                ideal.iter().flat_map(move |&m10| {
                    ideal.iter().filter_map(move |&m11| {
                        let tau = Mat2([[ring.add(one, m00), m01], [m10, ring.add(one, m11)]]);
                        satisfies(ring, q, s, s_inv, &tau, constrained).then_some(tau)
                    })
                })
            })
        })
        .collect();
    out.sort();
    Ok(out)
}

pub fn enumerate_tame_lifts(q: u64, k: u32, constrained: bool) -> Result<Vec<TameLiftInstance>, LiftError> {
    let ring = GaloisRing::new(k.clamp(1, MAX_ENUMERATION_PRECISION));
    let sigma = Sigma::standard(&ring, q);
    Ok(enumerate_with_sigma(q, k, constrained, &sigma)?
        .into_iter()
        .map(|r_tau| TameLiftInstance { q, precision: k, r_sigma: sigma.matrix(), r_tau })
        .collect())
}

/// Solutions modulo `2^k` that are reductions of solutions modulo `2^target`,
/// found by lifting one binary digit at a time from `r(τ) ≡ 1 mod 2`.
pub fn stable_solutions(q: u64, k: u32, target: u32, constrained: bool, sigma: &Sigma) -> Result<Vec<Mat2>, LiftError> {
    check_q(q)?;
    if target < k || target > ring::MAX_PRECISION {
        return Err(LiftError::CapExceeded { requested: target, max: ring::MAX_PRECISION });
    }
    let top = GaloisRing::new(target);
    let mut level = vec![top.identity()];
    let digits: Vec<Gr> = (0..4).map(|d| Gr { a: d & 1, b: d >> 1 }).collect();
    for j in 1..target {
        let ring = GaloisRing::new(j + 1);
        let sig = sigma.reduce(&ring);
        let s = sig.matrix();
        let s_inv = ring.mat_inv(&s).ok_or_else(|| LiftError::BadSigma("r(σ) is not invertible".into()))?;
        let step = ring.elem(1 << j, 0);
        let mut next = Vec::new();
        for base in &level {
            for choice in 0..256u32 {
                let mut tau = *base;
                for (idx, entry) in tau.0.iter_mut().flatten().enumerate() {
                    let d = digits[((choice >> (2 * idx)) & 3) as usize];
                    *entry = ring.add(*entry, ring.mul(step, d));
                }
                if satisfies(&ring, q, &s, &s_inv, &tau, constrained) {
                    next.push(tau);
                }
            }
        }
        level = next;
    }
    let low = GaloisRing::new(k);
    let mut out: Vec<Mat2> = level.iter().map(|m| low.mat_reduce(m)).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub q: u64,
    pub k: u32,
    pub constrained: bool,
    /// Stable solutions, i.e. those that lift to precision `2k`.
    pub solution_count: usize,
    pub raw_solution_count: usize,
    pub stable_precision: u32,
    pub all_in_mu2: bool,
    pub raw_all_scalar_square_one: bool,
    pub off_diagonal_vanish: bool,
    pub key_units: bool,
    pub solutions: Vec<String>,
}

/// Constrained solutions: the stable ones are exactly `{1, −1}`; every raw
/// solution is a scalar squaring to 1 with vanishing off-diagonal entries.
pub fn verify_rigidity(q: u64, k: u32) -> Result<RigidityReport, LiftError> {
    let ring = GaloisRing::new(k.clamp(1, MAX_ENUMERATION_PRECISION));
    let sigma = Sigma::standard(&GaloisRing::new(2 * k), q);
    let raw = enumerate_with_sigma(q, k, true, &sigma)?;
    let stable = stable_solutions(q, k, 2 * k, true, &sigma)?;
    let pm1 = [ring.identity(), Mat2::scalar(ring.neg(ring.one()))];
    let fail = |what: &str, m: &Mat2| LiftError::Counterexample { what: what.into(), witness: ring.mat_fmt(m) };
    if let Some(m) = raw.iter().find(|m| !m.is_diagonal()) {
        return Err(fail("off-diagonal entries survive", m));
    }
    if let Some(m) = raw.iter().find(|m| !m.is_scalar() || ring.mul(m.0[0][0], m.0[0][0]) != ring.one()) {
        return Err(fail("raw solution is not a scalar square root of 1", m));
    }
    if let Some(m) = stable.iter().find(|m| !pm1.contains(m)) {
        return Err(fail("stable solution outside {1, −1}", m));
    }
    if let Some(m) = stable.iter().find(|m| !raw.contains(m)) {
        return Err(fail("stable solution missing from the raw enumeration", m));
    }
    let key_units = sigma.reduce(&ring).key_units(&ring, q);
    Ok(RigidityReport {
        q,
        k,
        constrained: true,
        solution_count: stable.len(),
        raw_solution_count: raw.len(),
        stable_precision: 2 * k,
        all_in_mu2: true,
        raw_all_scalar_square_one: true,
        off_diagonal_vanish: true,
        key_units,
        solutions: stable.iter().map(|m| ring.mat_fmt(m)).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetTrickReport {
    pub q: u64,
    pub k: u32,
    pub raw_solution_count: usize,
    pub stable_solution_count: usize,
    /// `det r(τ)² = 1` for every raw unconstrained solution.
    pub dets_order_le_2: bool,
    /// Determinants of stable solutions, all in `{1, −1}`.
    pub stable_dets: Vec<String>,
    pub all_diagonal: bool,
}

/// Unconstrained solutions: the inertial determinant has order at most 2.
pub fn det_trick_check(q: u64, k: u32) -> Result<DetTrickReport, LiftError> {
    let ring = GaloisRing::new(k.clamp(1, MAX_ENUMERATION_PRECISION));
    let sigma = Sigma::standard(&GaloisRing::new(2 * k), q);
    let raw = enumerate_with_sigma(q, k, false, &sigma)?;
    let stable = stable_solutions(q, k, 2 * k, false, &sigma)?;
    let fail = |what: &str, m: &Mat2| LiftError::Counterexample { what: what.into(), witness: ring.mat_fmt(m) };
    for m in &raw {
        let d = ring.det(m);
        if ring.mul(d, d) != ring.one() {
            return Err(fail("det r(τ) has order > 2", m));
        }
        if !m.is_diagonal() {
            return Err(fail("unconstrained solution is not diagonal", m));
        }
    }
    let pm1 = [ring.one(), ring.neg(ring.one())];
    let mut dets: Vec<Gr> = stable.iter().map(|m| ring.det(m)).collect();
    dets.sort();
    dets.dedup();
    if let Some(m) = stable.iter().find(|m| !pm1.contains(&ring.det(m))) {
        return Err(fail("stable determinant outside {1, −1}", m));
    }
    Ok(DetTrickReport {
        q,
        k,
        raw_solution_count: raw.len(),
        stable_solution_count: stable.len(),
        dets_order_le_2: true,
        stable_dets: dets.iter().map(|d| ring.fmt(*d)).collect(),
        all_diagonal: true,
    })
}
