//! Searches for level-raising primes and auxiliary primes, and empirical
//! Frobenius-order densities.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::curves::{CurveError, WeierstrassCurve};
use crate::mod2rep::{self, Mod2Error, TwoDivisionCubic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("{0} is not a level-raising prime (need q not dividing 2N with a_q even)")]
    NotLevelRaising(u64),
    #[error("p1 = {0} must divide N to an odd power")]
    BadP1(u64),
    #[error("level-raising primes must be distinct")]
    Repeated,
    #[error("a_{q} parity ({ap}) disagrees with the Frobenius order {order} on E[2]")]
    ParityMismatch { q: u64, ap: i64, order: u8 },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Mod2(#[from] Mod2Error),
}

/// Primes `q <= bound`, `q` not dividing `2N`, with `a_q` even. Each is
/// confirmed by the Frobenius order read off the 2-division cubic.
pub fn level_raising_primes(e: &WeierstrassCurve, bound: u64) -> Result<Vec<u64>, ScanError> {
    let cubic = TwoDivisionCubic::of(e);
    let disc = e.discriminant();
    let candidates: Vec<u64> =
        arith::primes_up_to(bound).into_iter().filter(|&q| q > 2 && disc % q as i128 != 0).collect();
    let flags: Result<Vec<bool>, ScanError> = candidates
        .par_iter()
        .map(|&q| {
            let ap = e.ap(q)?;
            let order = mod2rep::frob_order_of(&cubic, q)?;
            if (ap % 2 == 0) != (order <= 2) {
                return Err(ScanError::ParityMismatch { q, ap, order });
            }
            Ok(ap % 2 == 0)
        })
        .collect();
    let flags = flags?;
    // primes dividing the discriminant but not N (non-minimal models) still need a_q
    let conductor = e.conductor()?;
    let mut out: Vec<u64> = candidates.iter().zip(flags).filter(|(_, f)| *f).map(|(&q, _)| q).collect();
    for q in arith::primes_up_to(bound) {
        if q > 2 && disc % q as i128 == 0 && conductor.exponent(q) == 0 && e.hecke_eigenvalue(q)? % 2 == 0 {
            out.push(q);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Inputs of an auxiliary-prime search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuxiliarySpec {
    pub curve: WeierstrassCurve,
    /// Level-raising primes `q_1, ..., q_m`.
    pub sigma: Vec<u64>,
    /// A prime dividing `N` to an odd power, exempt from the Legendre condition.
    pub p1: u64,
    pub bound: u64,
    /// Smallest auxiliary prime to report (some arguments want `q0 > 7`).
    pub min: u64,
    /// When set (useful for positive discriminant), also require `(p1/q0) = +1`.
    pub strict: bool,
}

impl AuxiliarySpec {
    pub fn new(curve: WeierstrassCurve, sigma: Vec<u64>, p1: u64, bound: u64) -> Self {
        AuxiliarySpec { curve, sigma, p1, bound, min: 2, strict: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidatedSpec {
    pub cubic: TwoDivisionCubic,
    /// Primes dividing `N q_1 ... q_m` that carry a Legendre condition.
    pub conditioned: Vec<u64>,
    pub excluded: Vec<u64>,
}

/// Checks the spec and returns the derived prime sets.
pub fn validate(spec: &AuxiliarySpec) -> Result<ValidatedSpec, ScanError> {
    let e = &spec.curve;
    let conductor = e.conductor()?;
    let mut sorted = spec.sigma.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != spec.sigma.len() {
        return Err(ScanError::Repeated);
    }
    for &q in &spec.sigma {
        if q == 2 || conductor.exponent(q) > 0 || !arith::is_prime(q) || e.ap(q)? % 2 != 0 {
            return Err(ScanError::NotLevelRaising(q));
        }
    }
    if conductor.exponent(spec.p1) % 2 == 0 {
        return Err(ScanError::BadP1(spec.p1));
    }
    let mut primes: Vec<u64> = conductor.primes().chain(spec.sigma.iter().copied()).collect();
    primes.sort_unstable();
    let conditioned = primes.iter().copied().filter(|&p| spec.strict || p != spec.p1).collect();
    let mut excluded = primes;
    excluded.push(2);
    excluded.sort_unstable();
    excluded.dedup();
    Ok(ValidatedSpec { cubic: TwoDivisionCubic::of(e), conditioned, excluded })
}

/// Item-by-item verdict for one candidate `q0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuxiliaryCheck {
    pub q0: u64,
    pub coprime: bool,
    pub three_mod_four: bool,
    pub order_three: bool,
    /// `(p, (p/q0))` for every conditioned prime.
    pub legendre: Vec<(u64, i8)>,
}

impl AuxiliaryCheck {
    pub fn passes(&self) -> bool {
        self.coprime && self.three_mod_four && self.order_three && self.legendre.iter().all(|&(_, s)| s == 1)
    }
}

pub fn check_auxiliary(v: &ValidatedSpec, q0: u64) -> AuxiliaryCheck {
    let coprime = q0 > 2 && arith::is_prime(q0) && !v.excluded.contains(&q0) && v.cubic.disc % q0 as i128 != 0;
    let three_mod_four = q0 % 4 == 3;
    let order_three = coprime && mod2rep::frob_order_of(&v.cubic, q0) == Ok(3);
    let legendre = if coprime {
        v.conditioned.iter().map(|&p| (p, arith::legendre(p as i128, q0).unwrap_or(0))).collect()
    } else {
        Vec::new()
    };
    AuxiliaryCheck { q0, coprime, three_mod_four, order_three, legendre }
}

/// All auxiliary primes `q0 <= bound`: `q0 = 3 mod 4`, Frobenius of order 3
/// on `E[2]`, and `(p/q0) = +1` for every prime `p | N q_1 ... q_m` other
/// than `p1`.
pub fn auxiliary_primes(spec: &AuxiliarySpec) -> Result<Vec<u64>, ScanError> {
    let v = validate(spec)?;
    let out: Vec<u64> = arith::primes_up_to(spec.bound)
        .into_par_iter()
        .filter(|&q| q >= spec.min && check_auxiliary(&v, q).passes())
        .collect();
    if out.is_empty() {
        log::warn!(
            "no auxiliary primes up to {}; they have positive density, so raise the bound",
            spec.bound
        );
    }
    Ok(out)
}

/// Chebotarev density of auxiliary primes: 1/3 for the Frobenius order
/// times 1/2 for each independent quadratic condition (the `q0 = 3 mod 4`
/// condition counts as one).
pub fn auxiliary_prediction(v: &ValidatedSpec) -> f64 {
    (1.0 / 3.0) * 0.5f64.powi(v.conditioned.len() as i32 + 1)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub curve: WeierstrassCurve,
    pub anchor: &'static str,
    pub bound: u64,
    pub counts: Counts,
    pub frequencies: Frequencies,
    pub predictions: Frequencies,
    /// Maximum deviation allowed at this sample size.
    pub tolerance: f64,
    pub small_sample: bool,
    pub within_tolerance: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub primes: u64,
    pub order1: u64,
    pub order2: u64,
    pub order3: u64,
    pub level_raising: u64,
    pub auxiliary: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Frequencies {
    pub order1: f64,
    pub order2: f64,
    pub order3: f64,
    pub level_raising: f64,
    pub auxiliary: Option<f64>,
}

/// Empirical frequencies of Frobenius orders, level-raising primes and
/// (optionally) auxiliary primes among primes `3 <= q <= bound` with
/// `q` not dividing the discriminant.
pub fn density_report(
    e: &WeierstrassCurve,
    bound: u64,
    aux: Option<&AuxiliarySpec>,
) -> Result<DensityReport, ScanError> {
    let cubic = TwoDivisionCubic::of(e);
    let primes: Vec<u64> =
        arith::primes_up_to(bound).into_iter().filter(|&q| q > 2 && cubic.disc % q as i128 != 0).collect();
    let orders: Vec<u8> = primes
        .par_iter()
        .map(|&q| mod2rep::frob_order_of(&cubic, q))
        .collect::<Result<_, _>>()?;
    let n = primes.len() as u64;
    let count = |k: u8| orders.iter().filter(|&&o| o == k).count() as u64;
    let (o1, o2, o3) = (count(1), count(2), count(3));
    let validated = aux.map(validate).transpose()?;
    let aux_count = validated
        .as_ref()
        .map(|v| primes.par_iter().filter(|&&q| check_auxiliary(v, q).passes()).count() as u64);
    let f = |c: u64| if n == 0 { 0.0 } else { c as f64 / n as f64 };
    let tolerance = if n >= 1000 { 0.03 } else { 0.15 };
    let frequencies = Frequencies {
        order1: f(o1),
        order2: f(o2),
        order3: f(o3),
        level_raising: f(o1 + o2),
        auxiliary: aux_count.map(f),
    };
    let predictions = Frequencies {
        order1: 1.0 / 6.0,
        order2: 0.5,
        order3: 1.0 / 3.0,
        level_raising: 2.0 / 3.0,
        auxiliary: validated.as_ref().map(auxiliary_prediction),
    };
    let within = (frequencies.order1 - predictions.order1).abs() <= tolerance
        && (frequencies.order2 - predictions.order2).abs() <= tolerance
        && (frequencies.order3 - predictions.order3).abs() <= tolerance;
    Ok(DensityReport {
        curve: e.clone(),
        anchor: "chebotarev-density",
        bound,
        counts: Counts { primes: n, order1: o1, order2: o2, order3: o3, level_raising: o1 + o2, auxiliary: aux_count },
        frequencies,
        predictions,
        tolerance,
        small_sample: n < 1000,
        within_tolerance: within,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e11() -> WeierstrassCurve {
        WeierstrassCurve::new([0, -1, 1, -10, -20]).unwrap()
    }

    #[test]
    fn level_raising_11a1() {
        assert_eq!(level_raising_primes(&e11(), 20).unwrap(), vec![7, 13, 17, 19]);
        assert_eq!(level_raising_primes(&e11(), 6).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn auxiliary_11a1() {
        let spec = AuxiliarySpec::new(e11(), vec![7], 11, 10);
        let found = auxiliary_primes(&spec).unwrap();
        assert!(found.contains(&3));
        assert!(found.iter().all(|q| q % 4 == 3));
        let v = validate(&spec).unwrap();
        assert_eq!(v.conditioned, vec![7]);
        assert!((auxiliary_prediction(&v) - 1.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn auxiliary_spec_validation() {
        let bad = AuxiliarySpec::new(e11(), vec![5], 11, 100);
        assert_eq!(validate(&bad), Err(ScanError::NotLevelRaising(5)));
        let bad = AuxiliarySpec::new(e11(), vec![7], 7, 100);
        assert_eq!(validate(&bad), Err(ScanError::BadP1(7)));
        let bad = AuxiliarySpec::new(e11(), vec![7, 7], 11, 100);
        assert_eq!(validate(&bad), Err(ScanError::Repeated));
    }

    #[test]
    fn small_sample_flag() {
        let r = density_report(&e11(), 100, None).unwrap();
        assert!(r.small_sample);
        assert_eq!(r.counts.order1 + r.counts.order2 + r.counts.order3, r.counts.primes);
    }
}
