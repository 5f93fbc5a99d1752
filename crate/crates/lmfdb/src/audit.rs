//! Mod-2 congruence certificates between a curve and a newform, and sign
//! extraction at Steinberg primes.

use crate::gf2poly::{self, Gf2Poly};
use crate::record::NewformRecord;
use crate::LmfdbError;
use lrlab_core::{arith, WeierstrassCurve};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateStatus {
    /// One prime above 2 works for every checked p.
    Certified,
    /// Eigenvalue data is not 2-integral in its power basis; only the norm
    /// condition was checked.
    NecessaryOnly,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaCandidate {
    /// Irreducible factor of the defining polynomial mod 2.
    pub factor: String,
    pub residue_degree: u32,
    pub multiplicity: u32,
    /// First checked prime where the reduction disagrees, if any.
    pub first_failure: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeCheck {
    pub p: u64,
    pub a_p: i64,
    /// Norm of a_p - b_p for the necessary condition.
    pub norm: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceCertificate {
    pub anchor: &'static str,
    pub curve: String,
    pub conductor: u64,
    pub newform: String,
    pub level: u64,
    pub dim: usize,
    pub bound: u64,
    pub primes_checked: Vec<u64>,
    pub lambda_choice: Option<LambdaCandidate>,
    pub candidates: Vec<LambdaCandidate>,
    pub necessary: Vec<PrimeCheck>,
    pub status: CertificateStatus,
    pub first_offending_prime: Option<u64>,
}

impl CongruenceCertificate {
    pub fn congruent(&self) -> bool {
        self.status != CertificateStatus::Failed
    }
}

/// A curve with its conductor and a_p cached for audit use.
#[derive(Clone, Debug)]
pub struct AuditCurve {
    pub label: String,
    pub curve: WeierstrassCurve,
    pub conductor: u64,
}

impl AuditCurve {
    pub fn new(curve: WeierstrassCurve) -> Result<Self, LmfdbError> {
        let conductor = curve.conductor()?.value as u64;
        let label = curve.label.clone().unwrap_or_else(|| format!("{:?}", curve.ainvs()));
        Ok(AuditCurve { label, curve, conductor })
    }

    pub fn ap(&self, p: u64) -> Result<i64, LmfdbError> {
        Ok(self.curve.hecke_eigenvalue(p)?)
    }
}

/// Primes p <= bound with p not dividing 2 * level * conductor, restricted
/// to those with eigenvalue data.
fn audit_primes(e: &AuditCurve, g: &NewformRecord, bound: u64, available: usize) -> Vec<u64> {
    arith::primes_up_to(bound)
        .into_iter()
        .filter(|&p| p != 2 && g.level % p != 0 && e.conductor % p != 0 && (p as usize) <= available)
        .collect()
}

fn parity(x: &BigInt) -> bool {
    (x % 2u32) != BigInt::zero()
}

/// Reduces power-basis coordinates with odd denominators to F_2[x].
fn reduce_mod_two(coords: &[BigRational]) -> Option<Gf2Poly> {
    Gf2Poly::from_coeffs(coords.iter().map(|c| parity(c.numer())))
}

/// Norm from Q[x]/(f) to Q of the element with the given coordinates, as the
/// determinant of its multiplication matrix.
pub fn norm(field_poly: &[BigInt], coords: &[BigRational]) -> BigRational {
    let d = field_poly.len() - 1;
    // column j holds x^j * a reduced mod f
    let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(d);
    let mut cur: Vec<BigRational> = coords.to_vec();
    for _ in 0..d {
        cols.push(cur.clone());
        // multiply by x: shift up and reduce x^d = -sum f_i x^i
        let top = cur[d - 1].clone();
        for i in (1..d).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = BigRational::zero();
        if !top.is_zero() {
            for (i, c) in cur.iter_mut().enumerate() {
                *c -= &top * BigRational::from_integer(field_poly[i].clone());
            }
        }
    }
    let mut m: Vec<Vec<BigRational>> = (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect();
    determinant(&mut m)
}

fn determinant(m: &mut [Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if piv != c {
            m.swap(piv, c);
            det = -det;
        }
        let inv = m[c][c].recip();
        det *= &m[c][c];
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let factor = &m[r][c] * &inv;
            for k in c..n {
                let t = &factor * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    det
}

/// Checks b_p = a_p(E) modulo a prime of the Hecke field above 2 for every
/// prime p <= bound away from 2, the level and the conductor.
pub fn congruence_audit(e: &AuditCurve, g: &NewformRecord, bound: u64) -> Result<CongruenceCertificate, LmfdbError> {
    let data = g
        .eigenvalues
        .as_ref()
        .ok_or_else(|| LmfdbError::MissingEigenvalues { label: g.label.clone(), n: 1 })?;
    let primes = audit_primes(e, g, bound, data.len());
    if primes.is_empty() {
        return Err(LmfdbError::MissingEigenvalues { label: g.label.clone(), n: 3 });
    }
    let aps: Vec<i64> = primes.iter().map(|&p| e.ap(p)).collect::<Result<_, _>>()?;
    let mut cert = CongruenceCertificate {
        anchor: "mod-2-congruence",
        curve: e.label.clone(),
        conductor: e.conductor,
        newform: g.label.clone(),
        level: g.level,
        dim: g.dim,
        bound,
        primes_checked: primes.clone(),
        lambda_choice: None,
        candidates: Vec::new(),
        necessary: Vec::new(),
        status: CertificateStatus::Failed,
        first_offending_prime: None,
    };
    if data.two_integral() {
        let f = Gf2Poly::from_coeffs(g.field_poly.iter().map(parity)).ok_or(LmfdbError::DegreeTooLarge(g.dim))?;
        for (factor, mult) in gf2poly::factor(f) {
            let mut cand = LambdaCandidate {
                factor: factor.to_string(),
                residue_degree: factor.degree().unwrap_or(0),
                multiplicity: mult,
                first_failure: None,
            };
            for (&p, &ap) in primes.iter().zip(&aps) {
                let b = reduce_mod_two(data.get(p as usize).expect("checked length")).ok_or(LmfdbError::DegreeTooLarge(g.dim))?;
                let a = if ap.rem_euclid(2) == 1 { Gf2Poly::ONE } else { Gf2Poly::ZERO };
                if b.rem(factor) != a {
                    cand.first_failure = Some(p);
                    break;
                }
            }
            if cand.first_failure.is_none() && cert.lambda_choice.is_none() {
                cert.lambda_choice = Some(cand.clone());
            }
            cert.candidates.push(cand);
        }
        if cert.lambda_choice.is_some() {
            cert.status = CertificateStatus::Certified;
        } else {
            cert.first_offending_prime = cert.candidates.iter().filter_map(|c| c.first_failure).max();
        }
        return Ok(cert);
    }
    // norm of (a_p - b_p) lies in lambda ∩ Z = 2Z whenever b_p ≡ a_p mod lambda
    for (&p, &ap) in primes.iter().zip(&aps) {
        let b = data.get(p as usize).expect("checked length");
        let mut diff: Vec<BigRational> = b.iter().map(|c| -c).collect();
        diff[0] += BigRational::from_integer(ap.into());
        let n = norm(&g.field_poly, &diff);
        let passed = n.is_integer() && !parity(n.numer());
        cert.necessary.push(PrimeCheck { p, a_p: ap, norm: n.to_string(), passed });
        if !passed && cert.first_offending_prime.is_none() {
            cert.first_offending_prime = Some(p);
        }
    }
    cert.status = if cert.first_offending_prime.is_none() { CertificateStatus::NecessaryOnly } else { CertificateStatus::Failed };
    Ok(cert)
}

fn steinberg_check(g: &NewformRecord, p: u64) -> Result<(), LmfdbError> {
    if !arith::is_prime(p) || g.level % p != 0 || g.level % (p * p) == 0 {
        return Err(LmfdbError::NotSteinberg { label: g.label.clone(), p });
    }
    Ok(())
}

/// U_p eigenvalue at p exactly dividing the level, read from the trace of
/// b_p, which is +dim or -dim.
pub fn sign_extract(g: &NewformRecord, p: u64) -> Result<i8, LmfdbError> {
    steinberg_check(g, p)?;
    let trace = g.trace(p as usize).ok_or_else(|| LmfdbError::MissingEigenvalues { label: g.label.clone(), n: p as usize })?;
    let d = g.dim as i64;
    match trace {
        t if t == d => Ok(1),
        t if t == -d => Ok(-1),
        _ => Err(LmfdbError::NotSteinbergRational { label: g.label.clone(), p, trace, dim: g.dim }),
    }
}

/// Same sign from the eigenvalue vector of b_p, which must be the rational ±1.
pub fn sign_from_eigenvalue(g: &NewformRecord, p: u64) -> Result<i8, LmfdbError> {
    steinberg_check(g, p)?;
    let b = g
        .eigenvalues
        .as_ref()
        .and_then(|e| e.get(p as usize))
        .ok_or_else(|| LmfdbError::MissingEigenvalues { label: g.label.clone(), n: p as usize })?;
    let rational = b[1..].iter().all(Zero::is_zero);
    let trace = g.trace(p as usize).unwrap_or(0);
    match (&b[0], rational) {
        (c, true) if c.is_one() => Ok(1),
        (c, true) if (-c).is_one() => Ok(-1),
        _ => Err(LmfdbError::NotSteinbergRational { label: g.label.clone(), p, trace, dim: g.dim }),
    }
}

/// Sign as minus the Atkin-Lehner eigenvalue.
pub fn sign_from_atkin_lehner(g: &NewformRecord, p: u64) -> Result<i8, LmfdbError> {
    steinberg_check(g, p)?;
    match g.atkin_lehner(p) {
        Some(1) => Ok(-1),
        Some(-1) => Ok(1),
        _ => Err(LmfdbError::MissingEigenvalues { label: g.label.clone(), n: p as usize }),
    }
}

pub fn sign_char(s: i8) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}
