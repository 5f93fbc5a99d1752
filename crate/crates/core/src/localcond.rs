//! Local Galois cohomology of `V = E[2]`: dimensions, the classification of
//! local conditions, and the norm test deciding isotropy of the toric line
//! for the local quadratic form.
//!
//! Unit norms. Let `K/Q_w` be a ramified quadratic extension, `w` odd. A unit
//! `u` of `Q_w` is a norm from `K` iff `u` is a square mod `w`: norms of units
//! of `K` reduce to squares of the common residue field, and conversely every
//! square unit is the norm of its square root. This does not depend on which
//! ramified extension is used, so the test is a Legendre symbol.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{self, inv_mod, mul_mod, RootProfile};
use crate::curves::WeierstrassCurve;
use crate::mod2rep::{self, Mod2Error, TwoDivisionCubic, DEFAULT_PRECISION};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("place {0} is excluded: need an odd prime not dividing N or the discriminant")]
    Excluded(Place),
    #[error("not covered by the local-condition classification: {0}")]
    NotClassified(String),
    #[error("Frobenius at {w} has order {order}; the toric line needs order 2 (cubic with exactly one root)")]
    WrongProfile { w: u64, order: u8 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Mod2(#[from] Mod2Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Place {
    Finite(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConditionKind {
    UnramifiedSelfDual,
    ToricLine,
    FlatAt2,
    MultAt2Line,
    ArchimedeanZero,
}

/// Role of a place for the abelian variety under study.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaceContext {
    /// An ordinary place `v`, not one of the level-raising primes.
    Good,
    /// A level-raising prime where the raised form has the given sign.
    LevelRaised { sign: i8 },
    At2,
    Archimedean,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalConditionClass {
    pub place: Place,
    pub kind: ConditionKind,
    pub h1_dim: u32,
    pub condition_dim: u32,
    /// For the toric line: it differs from the unramified line.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinct_from_unramified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<IsotropyCertificate>,
}

/// `dim H^1(Q_v, V)` for `v` not dividing `2 N disc`: 0, 2, 4 for Frobenius
/// order 3, 2, 1.
pub fn local_h1_dim(e: &WeierstrassCurve, v: u64) -> Result<u32, LocalError> {
    match mod2rep::frob_order(e, v) {
        Ok(order) => Ok(match order {
            1 => 4,
            2 => 2,
            _ => 0,
        }),
        Err(Mod2Error::ExcludedPrime(_)) => Err(LocalError::Excluded(Place::Finite(v))),
        Err(other) => Err(other.into()),
    }
}

pub fn classify_local_condition(
    e: &WeierstrassCurve,
    place: Place,
    context: PlaceContext,
) -> Result<LocalConditionClass, LocalError> {
    let class = |kind, h1_dim: u32| LocalConditionClass {
        place,
        kind,
        h1_dim,
        condition_dim: h1_dim / 2,
        distinct_from_unramified: None,
        certificate: None,
    };
    match (place, context) {
        (Place::Infinity, PlaceContext::Archimedean) => {
            if e.discriminant() < 0 {
                Ok(class(ConditionKind::ArchimedeanZero, 0))
            } else {
                Err(LocalError::NotClassified(
                    "positive discriminant: complex conjugation acts trivially on E[2]".into(),
                ))
            }
        }
        (Place::Finite(2), PlaceContext::At2) => {
            let conductor = e.conductor().map_err(Mod2Error::from)?;
            let g = TwoDivisionCubic::of(e);
            let roots = mod2rep::roots_in_z2(g.b, g.c, g.d, DEFAULT_PRECISION)?;
            let fixed_dim = match roots {
                0 => 0,
                1 => 1,
                _ => return Err(LocalError::NotClassified("E[2] is trivial over Q_2".into())),
            };
            // local Euler characteristic with self-dual V: 2 + 2 dim V^G
            let h1 = 2 + 2 * fixed_dim;
            match conductor.exponent(2) {
                0 => Ok(class(ConditionKind::FlatAt2, h1)),
                1 => Ok(class(ConditionKind::MultAt2Line, h1)),
                _ => Err(LocalError::NotClassified("additive reduction at 2".into())),
            }
        }
        (Place::Finite(v), PlaceContext::Good) if v != 2 => {
            let conductor = e.conductor().map_err(Mod2Error::from)?;
            let h1 = match conductor.exponent(v) {
                0 if e.discriminant() % v as i128 != 0 => local_h1_dim(e, v)?,
                0 => return Err(LocalError::Excluded(place)),
                // ramified with a one-dimensional inertia invariant line
                1 => 2,
                _ => 0,
            };
            Ok(class(ConditionKind::UnramifiedSelfDual, h1))
        }
        (Place::Finite(v), PlaceContext::LevelRaised { sign }) if v != 2 => {
            let order = mod2rep::frob_order(e, v).map_err(|err| match err {
                Mod2Error::ExcludedPrime(_) => LocalError::Excluded(place),
                other => other.into(),
            })?;
            if order != 2 || sign != 1 {
                return Err(LocalError::NotClassified(format!(
                    "level-raised place {v} with Frobenius order {order} and sign {sign:+}; only order 2 with sign +1 is classified"
                )));
            }
            let mut c = class(ConditionKind::ToricLine, 2);
            c.distinct_from_unramified = Some(true);
            Ok(c)
        }
        (p, ctx) => Err(LocalError::NotClassified(format!("place {p} with context {ctx:?}"))),
    }
}

/// The involution `x -> (a1 x + (a2 a3 - a1 a2 - a1 a3)) / (x - a1)` of the
/// projective line over `F_w`, built from the rational root `a1` of the
/// cubic and its cofactor `x^2 + s x + t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InvolutionMap {
    pub modulus: u64,
    pub alpha1: u64,
    /// Cofactor `x^2 + s x + t`.
    pub s: u64,
    pub t: u64,
    pub matrix: [[u64; 2]; 2],
}

impl InvolutionMap {
    pub fn from_root(modulus: u64, alpha1: u64, s: u64, t: u64) -> Result<Self, LocalError> {
        let w = modulus;
        let a = alpha1 % w;
        let b = (t + mul_mod(s, a, w)) % w;
        let m = InvolutionMap { modulus: w, alpha1: a, s: s % w, t: t % w, matrix: [[a, b], [1, (w - a) % w]] };
        let sq = m.square();
        if m.trace() != 0 || sq[0][1] != 0 || sq[1][0] != 0 || sq[0][0] != sq[1][1] || sq[0][0] == 0 {
            return Err(LocalError::Internal(format!("involution matrix {:?} has square {sq:?}", m.matrix)));
        }
        Ok(m)
    }

    pub fn trace(&self) -> u64 {
        (self.matrix[0][0] + self.matrix[1][1]) % self.modulus
    }

    pub fn det(&self) -> u64 {
        let w = self.modulus;
        let [[a, b], [c, d]] = self.matrix;
        (mul_mod(a, d, w) + w - mul_mod(b, c, w)) % w
    }

    pub fn square(&self) -> [[u64; 2]; 2] {
        let w = self.modulus;
        let m = self.matrix;
        let mut out = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = (mul_mod(m[i][0], m[0][j], w) + mul_mod(m[i][1], m[1][j], w)) % w;
            }
        }
        out
    }

    /// Applies the fractional linear map to a point of `F_{w^2}`, with
    /// `None` standing for the point at infinity.
    pub fn act(&self, x: Option<Fw2>) -> Option<Fw2> {
        let [[a, b], [c, d]] = self.matrix;
        let f = Fw2::field(self.modulus, self.s, self.t);
        match x {
            None => {
                if c == 0 {
                    None
                } else {
                    Some(f.constant(mul_mod(a, inv_mod(c, self.modulus)?, self.modulus)))
                }
            }
            Some(x) => {
                let num = x.scale(a).add(&f.constant(b));
                let den = x.scale(c).add(&f.constant(d));
                den.inverse().map(|inv| num.mul(&inv))
            }
        }
    }
}

/// Element `a + b*theta` of `F_w[theta] / (theta^2 + s theta + t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fw2 {
    pub w: u64,
    pub s: u64,
    pub t: u64,
    pub a: u64,
    pub b: u64,
}

impl Fw2 {
    pub fn field(w: u64, s: u64, t: u64) -> Self {
        Fw2 { w, s, t, a: 0, b: 0 }
    }

    pub fn constant(&self, a: u64) -> Self {
        Fw2 { a: a % self.w, b: 0, ..*self }
    }

    pub fn theta(&self) -> Self {
        Fw2 { a: 0, b: 1, ..*self }
    }

    /// The other root of the defining quadratic, `-s - theta`.
    pub fn conjugate_theta(&self) -> Self {
        Fw2 { a: (self.w - self.s) % self.w, b: self.w - 1, ..*self }
    }

    pub fn add(&self, o: &Self) -> Self {
        Fw2 { a: (self.a + o.a) % self.w, b: (self.b + o.b) % self.w, ..*self }
    }

    pub fn scale(&self, c: u64) -> Self {
        Fw2 { a: mul_mod(self.a, c, self.w), b: mul_mod(self.b, c, self.w), ..*self }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let w = self.w;
        // theta^2 = -s theta - t
        let bb = mul_mod(self.b, o.b, w);
        let a = (mul_mod(self.a, o.a, w) + w - mul_mod(bb, self.t, w)) % w;
        let b = (mul_mod(self.a, o.b, w) + mul_mod(self.b, o.a, w) + w - mul_mod(bb, self.s, w)) % w;
        Fw2 { a, b, ..*self }
    }

    pub fn inverse(&self) -> Option<Self> {
        let w = self.w;
        // conj(a + b theta) = (a - b s) - b theta; norm = a^2 - a b s + b^2 t
        let ca = (self.a + w - mul_mod(self.b, self.s, w)) % w;
        let cb = (w - self.b) % w;
        let norm = (mul_mod(self.a, self.a, w) + w - mul_mod(mul_mod(self.a, self.b, w), self.s, w)
            + mul_mod(mul_mod(self.b, self.b, w), self.t, w))
            % w;
        let ni = inv_mod(norm, w)?;
        Some(Fw2 { a: mul_mod(ca, ni, w), b: mul_mod(cb, ni, w), ..*self })
    }
}

fn one_root_data(cubic: &TwoDivisionCubic, w: u64) -> Result<(u64, u64, u64), LocalError> {
    let f = cubic.reduce(w).map_err(Mod2Error::from)?;
    match arith::root_profile(&f).map_err(Mod2Error::from)? {
        RootProfile::OneRoot { root, cofactor } => Ok((root, cofactor.coeff(1), cofactor.coeff(0))),
        RootProfile::ThreeRoots => Err(LocalError::WrongProfile { w, order: 1 }),
        RootProfile::Irreducible => Err(LocalError::WrongProfile { w, order: 3 }),
    }
}

pub fn involution_map(cubic: &TwoDivisionCubic, w: u64) -> Result<InvolutionMap, LocalError> {
    if w < 3 || !arith::is_prime(w) || cubic.disc % w as i128 == 0 {
        return Err(LocalError::Excluded(Place::Finite(w)));
    }
    let (a1, s, t) = one_root_data(cubic, w)?;
    InvolutionMap::from_root(w, a1, s, t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Isotropy {
    /// `F'(a1)` is a norm from the ramified quadratic extension, so the
    /// toric line is isotropic for the local quadratic form.
    CertifiedIsotropic,
    /// `F'(a1)` is not a unit norm; no conclusion about anisotropy is drawn.
    NotNorm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropyCertificate {
    pub anchor: &'static str,
    pub w: u64,
    pub alpha1: u64,
    pub cofactor: [u64; 2],
    /// `F'(a1)` as the cofactor evaluated at `a1`.
    pub derivative_via_cofactor: u64,
    /// `F'(a1)` from the formal derivative `3x^2 + 2bx + c`.
    pub derivative_via_formal: u64,
    pub legendre: i8,
    pub involution: InvolutionMap,
    pub result: Isotropy,
}

pub fn qform_isotropy(e: &WeierstrassCurve, w: u64) -> Result<IsotropyCertificate, LocalError> {
    let cubic = TwoDivisionCubic::of(e);
    let conductor = e.conductor().map_err(Mod2Error::from)?;
    if conductor.exponent(w) > 0 {
        return Err(LocalError::Excluded(Place::Finite(w)));
    }
    let involution = involution_map(&cubic, w)?;
    let (a1, s, t) = (involution.alpha1, involution.s, involution.t);
    let via_cofactor = (mul_mod(a1, a1, w) + mul_mod(s, a1, w) + t) % w;
    let b = arith::reduce(cubic.b, w);
    let c = arith::reduce(cubic.c, w);
    let via_formal = (mul_mod(3, mul_mod(a1, a1, w), w) + mul_mod(mul_mod(2, b, w), a1, w) + c) % w;
    if via_cofactor != via_formal {
        return Err(LocalError::Internal(format!(
            "F'(a1) paths disagree mod {w}: cofactor {via_cofactor}, derivative {via_formal}"
        )));
    }
    if via_cofactor == 0 {
        return Err(LocalError::Internal(format!("F'(a1) vanishes mod {w}")));
    }
    let legendre = arith::legendre(via_cofactor as i128, w).map_err(Mod2Error::from)?;
    Ok(IsotropyCertificate {
        anchor: "toric-line-isotropy",
        w,
        alpha1: a1,
        cofactor: [s, t],
        derivative_via_cofactor: via_cofactor,
        derivative_via_formal: via_formal,
        legendre,
        involution,
        result: if legendre == 1 { Isotropy::CertifiedIsotropic } else { Isotropy::NotNorm },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e11() -> WeierstrassCurve {
        WeierstrassCurve::new([0, -1, 1, -10, -20]).unwrap()
    }

    #[test]
    fn h1_dims() {
        assert_eq!(local_h1_dim(&e11(), 7), Ok(2));
        assert_eq!(local_h1_dim(&e11(), 3), Ok(0));
        assert_eq!(local_h1_dim(&e11(), 11), Err(LocalError::Excluded(Place::Finite(11))));
    }

    #[test]
    fn classification_examples() {
        let e = e11();
        let inf = classify_local_condition(&e, Place::Infinity, PlaceContext::Archimedean).unwrap();
        assert_eq!((inf.kind, inf.h1_dim), (ConditionKind::ArchimedeanZero, 0));
        let t = classify_local_condition(&e, Place::Finite(7), PlaceContext::LevelRaised { sign: 1 }).unwrap();
        assert_eq!(t.kind, ConditionKind::ToricLine);
        assert_eq!((t.h1_dim, t.condition_dim), (2, 1));
        assert_eq!(t.distinct_from_unramified, Some(true));
        let g = classify_local_condition(&e, Place::Finite(5), PlaceContext::Good).unwrap();
        assert_eq!(g.kind, ConditionKind::UnramifiedSelfDual);
        let two = classify_local_condition(&e, Place::Finite(2), PlaceContext::At2).unwrap();
        assert_eq!((two.kind, two.h1_dim, two.condition_dim), (ConditionKind::FlatAt2, 2, 1));
        let bad = classify_local_condition(&e, Place::Finite(7), PlaceContext::LevelRaised { sign: -1 });
        assert!(matches!(bad, Err(LocalError::NotClassified(_))));
    }

    #[test]
    fn involution_symmetric_case() {
        let m = InvolutionMap::from_root(7, 0, 0, 6).unwrap();
        assert_eq!(m.matrix, [[0, 6], [1, 0]]);
        assert_eq!(m.square(), [[6, 0], [0, 6]]);
    }

    #[test]
    fn involution_11a1_at_7() {
        let m = involution_map(&TwoDivisionCubic::of(&e11()), 7).unwrap();
        assert_eq!(m.matrix, [[4, 1], [1, 3]]);
        assert_eq!(m.square(), [[3, 0], [0, 3]]);
        let f = Fw2::field(7, m.s, m.t);
        assert_eq!(m.act(Some(f.theta())), Some(f.conjugate_theta()));
        assert_eq!(m.act(Some(f.conjugate_theta())), Some(f.theta()));
        assert_eq!(m.act(Some(f.constant(4))), None);
        assert_eq!(m.act(None), Some(f.constant(4)));
    }

    #[test]
    fn qform_11a1_at_7() {
        let c = qform_isotropy(&e11(), 7).unwrap();
        assert_eq!(c.derivative_via_cofactor, 3);
        assert_eq!(c.legendre, -1);
        assert_eq!(c.result, Isotropy::NotNorm);
    }
}
