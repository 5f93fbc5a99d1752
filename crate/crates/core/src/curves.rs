//! Integral Weierstrass models over Q: invariants, point counts and Tate's
//! algorithm.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, ArithError, FactorConfig, Factorization};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("singular model: discriminant is zero")]
    Singular,
    #[error("cannot parse curve {0:?}: expected five comma-separated integers a1,a2,a3,a4,a6")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("bad reduction at {0}: use reduction_type for the local data")]
    BadPrime(u64),
    #[error("prime {p} exceeds the point-counting bound {bound}")]
    CountingBound { p: u64, bound: u64 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Default bound on primes for O(p) point counting.
pub const COUNTING_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeierstrassCurve {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub b2: i128,
    pub b4: i128,
    pub b6: i128,
    pub b8: i128,
    pub c4: i128,
    pub c6: i128,
    pub discriminant: i128,
    /// j-invariant as a reduced fraction `(numerator, denominator)`, denominator positive.
    pub j: (i128, i128),
}

impl WeierstrassCurve {
    pub fn new(a: [i64; 5]) -> Result<Self, CurveError> {
        let e = WeierstrassCurve { a1: a[0], a2: a[1], a3: a[2], a4: a[3], a6: a[4], label: None };
        e.invariants()?;
        Ok(e)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn ainvs(&self) -> [i64; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6]
    }

    fn ainvs128(&self) -> [i128; 5] {
        self.ainvs().map(|a| a as i128)
    }

    pub fn invariants(&self) -> Result<Invariants, CurveError> {
        let [a1, a2, a3, a4, a6] = self.ainvs128();
        let (b2, b4, b6, b8) = b_invariants(a1, a2, a3, a4, a6);
        let c4 = b2 * b2 - 24 * b4;
        let c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
        let disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
        if disc == 0 {
            return Err(CurveError::Singular);
        }
        let c4_cubed = c4
            .checked_mul(c4)
            .and_then(|x| x.checked_mul(c4))
            .ok_or(CurveError::Overflow("c4^3"))?;
        debug_assert_eq!(4 * b8, b2 * b6 - b4 * b4);
        debug_assert_eq!(Some(c4_cubed - c6 * c6), disc.checked_mul(1728));
        let g = arith::gcd_u128(c4_cubed.unsigned_abs(), disc.unsigned_abs()) as i128;
        let (mut jn, mut jd) = (c4_cubed / g, disc / g);
        if jd < 0 {
            jn = -jn;
            jd = -jd;
        }
        Ok(Invariants { b2, b4, b6, b8, c4, c6, discriminant: disc, j: (jn, jd) })
    }

    pub fn discriminant(&self) -> i128 {
        self.invariants().expect("WeierstrassCurve is nonsingular by construction").discriminant
    }

    fn check_good(&self, p: u64) -> Result<(), CurveError> {
        if !arith::is_prime(p) {
            return Err(CurveError::NotPrime(p));
        }
        if self.discriminant() % p as i128 == 0 {
            return Err(CurveError::BadPrime(p));
        }
        Ok(())
    }

    /// `#E(F_p)` for a prime of good reduction.
    ///
    /// `p = 2, 3` enumerate the full equation; larger primes sweep `x` and
    /// read `1 + (f(x)/p)` solutions in `y` from a table of squares, where
    /// `f = 4x^3 + b2 x^2 + 2 b4 x + b6`.
    pub fn count_points(&self, p: u64) -> Result<u64, CurveError> {
        self.check_good(p)?;
        if p > COUNTING_BOUND {
            return Err(CurveError::CountingBound { p, bound: COUNTING_BOUND });
        }
        if p <= 3 {
            return Ok(self.count_points_enumerate(p));
        }
        let inv = self.invariants()?;
        let f = |x: i128| arith::reduce(4 * x * x * x + inv.b2 * x * x + 2 * inv.b4 * x + inv.b6, p);
        let mut is_square = vec![false; p as usize];
        let mut sq = 0u64;
        for y in 0..=(p - 1) / 2 {
            is_square[sq as usize] = true;
            sq = (sq + 2 * y + 1) % p;
        }
        // forward differences of the cubic
        let (f0, f1, f2) = (f(0) as i128, f(1) as i128, f(2) as i128);
        let mut v = f0 as u64;
        let mut d1 = arith::reduce(f1 - f0, p);
        let mut d2 = arith::reduce(f2 - 2 * f1 + f0, p);
        let d3 = arith::reduce(24, p);
        let mut sum: i64 = 0;
        for _ in 0..p {
            if v != 0 {
                sum += if is_square[v as usize] { 1 } else { -1 };
            }
            v = addm(v, d1, p);
            d1 = addm(d1, d2, p);
            d2 = addm(d2, d3, p);
        }
        Ok((p as i64 + 1 + sum) as u64)
    }

    /// Same sweep as [`count_points`](Self::count_points) but with the
    /// Legendre symbol computed by reciprocity for each `x`.
    pub fn count_points_legendre(&self, p: u64) -> Result<u64, CurveError> {
        self.check_good(p)?;
        if p <= 3 {
            return Ok(self.count_points_enumerate(p));
        }
        let inv = self.invariants()?;
        let mut sum: i64 = 0;
        for x in 0..p as i128 {
            let rhs = 4 * x * x * x + inv.b2 * x * x + 2 * inv.b4 * x + inv.b6;
            sum += arith::legendre(rhs, p)? as i64;
        }
        Ok((p as i64 + 1 + sum) as u64)
    }

    /// `#E(F_p)` by testing every affine pair `(x, y)`. Valid at any prime
    /// of good reduction; O(p^2).
    pub fn count_points_enumerate(&self, p: u64) -> u64 {
        let [a1, a2, a3, a4, a6] = self.ainvs128().map(|a| arith::reduce(a, p));
        let mut n = 1u64;
        for x in 0..p {
            let rhs = (arith::mul_mod((arith::mul_mod((x + a2) % p, x, p) + a4) % p, x, p) + a6) % p;
            let lin = (arith::mul_mod(a1, x, p) + a3) % p;
            // walk y with q(y) = y^2 + lin*y updated by q(y+1) - q(y) = 2y + 1 + lin
            let (mut q, mut step) = (0u64, (1 + lin) % p);
            for _ in 0..p {
                if q == rhs {
                    n += 1;
                }
                q = addm(q, step, p);
                step = addm(step, 2 % p, p);
            }
        }
        n
    }

    /// `a_p = p + 1 - #E(F_p)` at a prime of good reduction.
    pub fn ap(&self, p: u64) -> Result<i64, CurveError> {
        Ok(p as i64 + 1 - self.count_points(p)? as i64)
    }

    /// Hecke eigenvalue of the associated newform at `p`: `a_p` at good
    /// primes, `+1`/`-1` at split/nonsplit multiplicative primes, 0 at
    /// additive primes.
    pub fn hecke_eigenvalue(&self, p: u64) -> Result<i64, CurveError> {
        if !arith::is_prime(p) {
            return Err(CurveError::NotPrime(p));
        }
        let (data, model) = tate(self.ainvs128(), p);
        match data.kind {
            ReductionKind::Good if self.discriminant() % p as i128 == 0 => {
                // non-minimal at p: count on the p-minimal model
                let a = model.map(|x| i64::try_from(x).expect("minimal model fits in i64"));
                WeierstrassCurve::new(a)?.ap(p)
            }
            ReductionKind::Good => self.ap(p),
            ReductionKind::MultiplicativeSplit => Ok(1),
            ReductionKind::MultiplicativeNonsplit => Ok(-1),
            ReductionKind::Additive => Ok(0),
        }
    }

    /// Local reduction data at `p` by Tate's algorithm.
    pub fn reduction_type(&self, p: u64) -> Result<ReductionData, CurveError> {
        if !arith::is_prime(p) {
            return Err(CurveError::NotPrime(p));
        }
        Ok(tate(self.ainvs128(), p).0)
    }

    /// Factorization of the discriminant, optionally seeded with known primes.
    pub fn discriminant_factorization(&self, hint: &[u64]) -> Result<Factorization, CurveError> {
        Ok(arith::factor_with(self.discriminant(), hint, &FactorConfig::default())?)
    }

    /// Conductor and local data at every bad prime.
    pub fn conductor(&self) -> Result<Conductor, CurveError> {
        self.conductor_with_hint(&[])
    }

    pub fn conductor_with_hint(&self, hint: &[u64]) -> Result<Conductor, CurveError> {
        let fac = self.discriminant_factorization(hint)?;
        let mut local = Vec::new();
        let mut value: u128 = 1;
        for p in fac.primes() {
            let rd = self.reduction_type(p)?;
            if rd.kind != ReductionKind::Good {
                value *= (p as u128).pow(rd.conductor_exponent);
                local.push(rd);
            }
        }
        Ok(Conductor { value, local })
    }
}

#[inline]
fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn b_invariants(a1: i128, a2: i128, a3: i128, a4: i128, a6: i128) -> (i128, i128, i128, i128) {
    let b2 = a1 * a1 + 4 * a2;
    let b4 = a1 * a3 + 2 * a4;
    let b6 = a3 * a3 + 4 * a6;
    let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    (b2, b4, b6, b8)
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = self.ainvs();
        match &self.label {
            Some(l) => write!(f, "{l} [{a1},{a2},{a3},{a4},{a6}]"),
            None => write!(f, "[{a1},{a2},{a3},{a4},{a6}]"),
        }
    }
}

impl FromStr for WeierstrassCurve {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(CurveError::Parse(s.to_string()));
        }
        let mut a = [0i64; 5];
        for (slot, part) in a.iter_mut().zip(&parts) {
            *slot = part.parse().map_err(|_| CurveError::Parse(s.to_string()))?;
        }
        WeierstrassCurve::new(a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionKind {
    Good,
    MultiplicativeSplit,
    MultiplicativeNonsplit,
    Additive,
}

impl ReductionKind {
    pub fn is_multiplicative(self) -> bool {
        matches!(self, ReductionKind::MultiplicativeSplit | ReductionKind::MultiplicativeNonsplit)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kodaira {
    I0,
    In(u32),
    II,
    III,
    IV,
    I0Star,
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    /// Order of the geometric component group of the Neron model.
    pub fn component_group_order(self) -> u32 {
        match self {
            Kodaira::I0 | Kodaira::II | Kodaira::IIStar => 1,
            Kodaira::In(n) => n,
            Kodaira::III | Kodaira::IIIStar => 2,
            Kodaira::IV | Kodaira::IVStar => 3,
            Kodaira::I0Star | Kodaira::InStar(_) => 4,
        }
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => write!(f, "I0"),
            Kodaira::In(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::I0Star => write!(f, "I0*"),
            Kodaira::InStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionData {
    pub prime: u64,
    pub kind: ReductionKind,
    pub kodaira: Kodaira,
    pub conductor_exponent: u32,
    /// Geometric component group order.
    pub component_group_order: u32,
    pub tamagawa: u32,
    /// Valuation of the minimal discriminant.
    pub min_disc_valuation: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conductor {
    pub value: u128,
    pub local: Vec<ReductionData>,
}

impl Conductor {
    pub fn exponent(&self, p: u64) -> u32 {
        self.local.iter().find(|r| r.prime == p).map_or(0, |r| r.conductor_exponent)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.local.iter().map(|r| r.prime)
    }

    pub fn at(&self, p: u64) -> Option<&ReductionData> {
        self.local.iter().find(|r| r.prime == p)
    }
}

// ---------------------------------------------------------------------------
// Tate's algorithm

/// p-adic valuation with `v(0) = u32::MAX`.
fn val(x: i128, p: i128) -> u32 {
    if x == 0 {
        return u32::MAX;
    }
    let mut x = x;
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn pdiv(x: i128, p: i128) -> bool {
    x % p == 0
}

fn md(x: i128, p: i128) -> i128 {
    x.rem_euclid(p)
}

fn pinv(x: i128, p: i128) -> i128 {
    arith::inv_mod(md(x, p) as u64, p as u64).expect("inverting a p-adic unit") as i128
}

/// Does `a x^2 + b x + c` have a root mod p?
fn quad_has_root(a: i128, b: i128, c: i128, p: i128) -> bool {
    let (a, b, c) = (md(a, p), md(b, p), md(c, p));
    if a == 0 {
        return b != 0 || c == 0;
    }
    if p == 2 {
        return (0..2).any(|x| (a * x * x + b * x + c) % 2 == 0);
    }
    md(b * b - 4 * a * c, p) == 0 || arith::legendre(b * b - 4 * a * c, p as u64) == Ok(1)
}

/// Number of distinct roots mod p of `x^3 + b x^2 + c x + d`.
fn cubic_root_count(b: i128, c: i128, d: i128, p: i128) -> u32 {
    if p < 1 << 16 {
        return (0..p).filter(|&x| md(((x + b) * x + c) % p * x + d, p) == 0).count() as u32;
    }
    let f = arith::PrimePoly::new(p as u64, &[d, c, b, 1]).expect("odd prime");
    let x = arith::PrimePoly::x(p as u64);
    f.gcd(&x.pow_mod(p as u64, &f).sub(&x)).degree().unwrap_or(0) as u32
}

/// `x = x' + r, y = y' + s x' + t`.
fn rst(a: [i128; 5], r: i128, s: i128, t: i128) -> [i128; 5] {
    let [a1, a2, a3, a4, a6] = a;
    [
        a1 + 2 * s,
        a2 - s * a1 + 3 * r - s * s,
        a3 + r * a1 + 2 * t,
        a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
        a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1,
    ]
}

/// Returns the local data and a model that is minimal at `p`.
fn tate(mut a: [i128; 5], prime: u64) -> (ReductionData, [i128; 5]) {
    let p = prime as i128;
    let data = |kodaira: Kodaira, kind: ReductionKind, fp: u32, cp: u32, vd: u32| ReductionData {
        prime,
        kind,
        kodaira,
        conductor_exponent: fp,
        component_group_order: kodaira.component_group_order(),
        tamagawa: cp,
        min_disc_valuation: vd,
    };
    loop {
        let model = a;
        let done = |kodaira, kind, fp, cp, vd| (data(kodaira, kind, fp, cp, vd), model);
        let [a1, a2, a3, a4, a6] = a;
        let (b2, b4, b6, b8) = b_invariants(a1, a2, a3, a4, a6);
        let c4 = b2 * b2 - 24 * b4;
        let c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
        let disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
        let vd = val(disc, p);
        if vd == 0 {
            return done(Kodaira::I0, ReductionKind::Good, 0, 1, 0);
        }

        // move the singular point to (0, 0)
        let (r, t) = if p == 2 {
            if pdiv(b2, p) {
                let r = md(a4, p);
                let t = md(((r + a2) * r + a4) * r + a6, p);
                (r, t)
            } else {
                let inv = pinv(a1, p);
                let r = md(inv * a3, p);
                (r, md(inv * (a4 + r * r), p))
            }
        } else if p == 3 {
            let r = if pdiv(b2, p) { md(-b6, p) } else { md(-pinv(b2, p) * b4, p) };
            (r, md(a1 * r + a3, p))
        } else {
            let r = if pdiv(c4, p) {
                md(-pinv(12, p) * b2, p)
            } else {
                md(-pinv(12 * md(c4, p), p) * md(md(c6, p) + md(b2, p) * md(c4, p), p), p)
            };
            let half = pinv(2, p);
            (r, md(-half * md(a1 * r + a3, p), p))
        };
        a = rst(a, r, 0, t);
        let [a1, a2, a3, a4, a6] = a;
        let (_, _, b6, b8) = b_invariants(a1, a2, a3, a4, a6);

        if !pdiv(c4, p) {
            let split = quad_has_root(1, a1, -a2, p);
            let (kind, cp) = if split {
                (ReductionKind::MultiplicativeSplit, vd)
            } else if vd % 2 == 0 {
                (ReductionKind::MultiplicativeNonsplit, 2)
            } else {
                (ReductionKind::MultiplicativeNonsplit, 1)
            };
            return done(Kodaira::In(vd), kind, 1, cp, vd);
        }
        if val(a6, p) < 2 {
            return done(Kodaira::II, ReductionKind::Additive, vd, 1, vd);
        }
        if val(b8, p) < 3 {
            return done(Kodaira::III, ReductionKind::Additive, vd - 1, 2, vd);
        }
        if val(b6, p) < 3 {
            let cp = if quad_has_root(1, a3 / p, -a6 / (p * p), p) { 3 } else { 1 };
            return done(Kodaira::IV, ReductionKind::Additive, vd - 2, cp, vd);
        }

        // now p | a1, a2; p^2 | a3, a4; p^3 | a6
        let (s, t) = if p == 2 {
            (md(a2, p), p * md(a6 / (p * p), p))
        } else if p == 3 {
            (a1, a3)
        } else {
            let half = pinv(2, p);
            (md(-a1 * half, p), md(-a3 * half, p))
        };
        a = rst(a, 0, s, t);
        let [_, a2, _, a4, a6] = a;

        let b = a2 / p;
        let c = a4 / (p * p);
        let d = a6 / (p * p * p);
        let w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c;
        let x = 3 * c - b * b;
        let sw = if pdiv(w, p) {
            if pdiv(x, p) {
                3
            } else {
                2
            }
        } else {
            1
        };

        if sw == 1 {
            let cp = 1 + cubic_root_count(b, c, d, p);
            return done(Kodaira::I0Star, ReductionKind::Additive, vd - 4, cp, vd);
        }
        if sw == 2 {
            // double root of the cubic moved to T = 0
            let r = if p == 2 {
                md(c, p)
            } else if p == 3 {
                md(c * pinv(b, p), p)
            } else {
                md(md(b * c - 9 * d, p) * pinv(2 * x, p), p)
            };
            a = rst(a, p * r, 0, 0);
            let (mut ix, mut iy) = (3u32, 3u32);
            let (mut mx, mut my) = (p * p, p * p);
            let cp;
            loop {
                let [_, _, a3, _, a6] = a;
                let a3t = a3 / my;
                let a6t = a6 / (mx * my);
                if pdiv(a3t * a3t + 4 * a6t, p) {
                    let t = if p == 2 { my * md(a6t, p) } else { my * md(-a3t * pinv(2, p), p) };
                    a = rst(a, 0, 0, t);
                    my *= p;
                    iy += 1;
                    let [_, a2, a3, a4, a6] = a;
                    let a2t = a2 / p;
                    let _a3t = a3 / my;
                    let a4t = a4 / (p * mx);
                    let a6t = a6 / (mx * my);
                    if pdiv(a4t * a4t - 4 * a6t * a2t, p) {
                        let r = if p == 2 {
                            mx * md(a6t * pinv(a2t, p), p)
                        } else {
                            mx * md(-a4t * pinv(2 * a2t, p), p)
                        };
                        a = rst(a, r, 0, 0);
                        mx *= p;
                        ix += 1;
                    } else {
                        cp = if quad_has_root(a2t, a4t, a6t, p) { 4 } else { 2 };
                        break;
                    }
                } else {
                    cp = if quad_has_root(1, a3t, -a6t, p) { 4 } else { 2 };
                    break;
                }
            }
            let n = ix + iy - 5;
            return done(Kodaira::InStar(n), ReductionKind::Additive, vd - ix - iy + 1, cp, vd);
        }

        // triple root moved to T = 0
        let r = if p == 2 {
            md(b, p)
        } else if p == 3 {
            md(-d, p)
        } else {
            md(-b * pinv(3, p), p)
        };
        a = rst(a, p * r, 0, 0);
        let [_, _, a3, _, a6] = a;
        let a3t = a3 / (p * p);
        let a6t = a6 / (p * p * p * p);
        if !pdiv(a3t * a3t + 4 * a6t, p) {
            let cp = if quad_has_root(1, a3t, -a6t, p) { 3 } else { 1 };
            return done(Kodaira::IVStar, ReductionKind::Additive, vd - 6, cp, vd);
        }
        let t = if p == 2 { -p * p * md(a6t, p) } else { p * p * md(-a3t * pinv(2, p), p) };
        a = rst(a, 0, 0, t);
        let [a1, a2, a3, a4, a6] = a;
        if val(a4, p) < 4 {
            return done(Kodaira::IIIStar, ReductionKind::Additive, vd - 7, 2, vd);
        }
        if val(a6, p) < 6 {
            return done(Kodaira::IIStar, ReductionKind::Additive, vd - 8, 1, vd);
        }
        // non-minimal: scale by p and restart
        a = [a1 / p, a2 / (p * p), a3 / (p * p * p), a4 / (p * p * p * p), a6 / (p * p * p * p * p * p)];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e11a1() -> WeierstrassCurve {
        WeierstrassCurve::new([0, -1, 1, -10, -20]).unwrap()
    }

    #[test]
    fn invariants_11a1() {
        let inv = e11a1().invariants().unwrap();
        assert_eq!((inv.b2, inv.b4, inv.b6), (-4, -20, -79));
        assert_eq!((inv.c4, inv.c6, inv.discriminant), (496, 20008, -161051));
        assert_eq!(1728 * inv.discriminant, inv.c4.pow(3) - inv.c6.pow(2));
        assert_eq!(4 * inv.b8, inv.b2 * inv.b6 - inv.b4 * inv.b4);
        assert_eq!(inv.j, (-122023936, 161051));
    }

    #[test]
    fn invariants_x3_plus_1() {
        let inv = WeierstrassCurve::new([0, 0, 0, 0, 1]).unwrap().invariants().unwrap();
        assert_eq!((inv.b2, inv.b6, inv.discriminant), (0, 4, -432));
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(WeierstrassCurve::new([0, 0, 0, 0, 0]), Err(CurveError::Singular));
        assert_eq!(WeierstrassCurve::new([0, 0, 0, -3, 2]), Err(CurveError::Singular));
    }

    #[test]
    fn parse_forms() {
        let e: WeierstrassCurve = "0,-1,1,-10,-20".parse().unwrap();
        assert_eq!(e, e11a1());
        let e: WeierstrassCurve = "[0, -1, 1, -10, -20]".parse().unwrap();
        assert_eq!(e, e11a1());
        assert!("0,1,2".parse::<WeierstrassCurve>().is_err());
        assert!("a,b,c,d,e".parse::<WeierstrassCurve>().is_err());
    }

    #[test]
    fn ap_11a1_small_primes() {
        let e = e11a1();
        assert_eq!(e.ap(2), Ok(-2));
        assert_eq!(e.ap(3), Ok(-1));
        assert_eq!(e.ap(5), Ok(1));
        assert_eq!(e.ap(7), Ok(-2));
        assert_eq!(e.ap(13), Ok(4));
        assert_eq!(e.ap(11), Err(CurveError::BadPrime(11)));
        assert_eq!(e.ap(9), Err(CurveError::NotPrime(9)));
        assert_eq!(e.hecke_eigenvalue(11), Ok(1));
    }

    #[test]
    fn three_counting_paths_agree() {
        let e = WeierstrassCurve::new([1, 1, 1, -17, 30]).unwrap();
        let d = e.discriminant();
        for p in arith::primes_up_to(400) {
            if d % p as i128 == 0 {
                continue;
            }
            let a = e.count_points(p).unwrap();
            assert_eq!(a, e.count_points_legendre(p).unwrap(), "p={p}");
            assert_eq!(a, e.count_points_enumerate(p), "p={p}");
        }
    }

    #[test]
    fn tate_11a1() {
        let e = e11a1();
        let r = e.reduction_type(11).unwrap();
        assert_eq!(r.kind, ReductionKind::MultiplicativeSplit);
        assert_eq!(r.component_group_order, 5);
        assert_eq!(r.conductor_exponent, 1);
        assert_eq!(e.reduction_type(3).unwrap().kind, ReductionKind::Good);
        assert_eq!(e.conductor().unwrap().value, 11);
    }

    #[test]
    fn tate_additive_examples() {
        // y^2 = x^3 + 1: conductor 36, types IV at 2 and III at 3 (Cremona 36a1)
        let e = WeierstrassCurve::new([0, 0, 0, 0, 1]).unwrap();
        let c = e.conductor().unwrap();
        assert_eq!(c.value, 36);
        assert_eq!(c.at(2).unwrap().kodaira, Kodaira::IV);
        assert_eq!(c.at(3).unwrap().kodaira, Kodaira::III);

        // y^2 = x^3 - x: conductor 32, type III at 2
        let e = WeierstrassCurve::new([0, 0, 0, -1, 0]).unwrap();
        let c = e.conductor().unwrap();
        assert_eq!(c.value, 32);
        assert_eq!(c.at(2).unwrap().kodaira, Kodaira::III);

        // y^2 = x^3 + 5^6 (non-minimal model of y^2 = x^3 + 1 twisted away at 5)
        let e = WeierstrassCurve::new([0, 0, 0, 0, 15625]).unwrap();
        let r = e.reduction_type(5).unwrap();
        assert_eq!(r.kind, ReductionKind::Good);

        // y^2 = x^3 - 25x (twist of 32a by 5): I0* at 5
        let e = WeierstrassCurve::new([0, 0, 0, -25, 0]).unwrap();
        let r = e.reduction_type(5).unwrap();
        assert_eq!(r.kodaira, Kodaira::I0Star);
        assert_eq!(r.conductor_exponent, 2);
    }
}
