//! The mod-2 representation `E[2]`: its 2-division cubic, Frobenius orders,
//! image, 2-adic behavior and the standing hypotheses on `E`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, ArithError, PrimePoly, RootProfile};
use crate::curves::{Conductor, CurveError, ReductionKind, WeierstrassCurve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Mod2Error {
    #[error("prime {0} is excluded: need an odd prime not dividing the discriminant")]
    ExcludedPrime(u64),
    #[error("2-adic factorization inconclusive at precision 2^{precision}; raise k")]
    Inconclusive { precision: u32 },
    #[error("precision {0} out of range 8..=120")]
    Precision(u32),
    #[error("additive reduction at 2 (4 divides N); the 2-adic profile is undefined")]
    AdditiveAtTwo,
    #[error("integer overflow while locating rational roots of the 2-division cubic")]
    Overflow,
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Monic cubic `g(x) = x^3 + b2 x^2 + 8 b4 x + 16 b6` whose roots are
/// `4 x(P)` for the nonzero 2-torsion points `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoDivisionCubic {
    /// Coefficients of `x^2`, `x`, `1`.
    pub b: i128,
    pub c: i128,
    pub d: i128,
    /// `disc(g) = 2^8 * disc(E)`.
    pub disc: i128,
}

impl TwoDivisionCubic {
    pub fn of(e: &WeierstrassCurve) -> Self {
        let inv = e.invariants().expect("nonsingular");
        TwoDivisionCubic { b: inv.b2, c: 8 * inv.b4, d: 16 * inv.b6, disc: 256 * inv.discriminant }
    }

    /// Discriminant from the coefficient formula
    /// `b^2c^2 - 4c^3 - 4b^3d - 27d^2 + 18bcd`.
    pub fn discriminant_by_formula(&self) -> Option<i128> {
        let (b, c, d) = (self.b, self.c, self.d);
        let m = |x: i128, y: i128| x.checked_mul(y);
        let t1 = m(m(b, b)?, m(c, c)?)?;
        let t2 = m(4, m(m(c, c)?, c)?)?;
        let t3 = m(4, m(m(m(b, b)?, b)?, d)?)?;
        let t4 = m(27, m(d, d)?)?;
        let t5 = m(18, m(m(b, c)?, d)?)?;
        t1.checked_sub(t2)?.checked_sub(t3)?.checked_sub(t4)?.checked_add(t5)
    }

    pub fn eval(&self, x: i128) -> Option<i128> {
        x.checked_add(self.b)?.checked_mul(x)?.checked_add(self.c)?.checked_mul(x)?.checked_add(self.d)
    }

    pub fn reduce(&self, q: u64) -> Result<PrimePoly, ArithError> {
        PrimePoly::new(q, &[self.d, self.c, self.b, 1])
    }

    /// Integer (equivalently rational) roots, ascending.
    pub fn rational_roots(&self) -> Result<Vec<i128>, Mod2Error> {
        integer_roots(self)
    }
}

impl fmt::Display for TwoDivisionCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^3")?;
        for (coef, mon) in [(self.b, "x^2"), (self.c, "x"), (self.d, "")] {
            if coef == 0 {
                continue;
            }
            let sign = if coef < 0 { '-' } else { '+' };
            let a = coef.unsigned_abs();
            match (a, mon) {
                (1, m) if !m.is_empty() => write!(f, " {sign} {m}")?,
                (_, "") => write!(f, " {sign} {a}")?,
                (_, m) => write!(f, " {sign} {a}{m}")?,
            }
        }
        Ok(())
    }
}

fn integer_roots(g: &TwoDivisionCubic) -> Result<Vec<i128>, Mod2Error> {
    let eval = |x: i128| g.eval(x).ok_or(Mod2Error::Overflow);
    let (b, c, d) = (g.b as f64, g.c as f64, g.d as f64);
    // Fujiwara bound on |root|
    let bound = 2.0 * b.abs().max(c.abs().sqrt()).max((d.abs() / 2.0).cbrt()) + 2.0;
    if bound > 1e12 {
        return Err(Mod2Error::Overflow);
    }
    let h = bound.ceil() as i128;
    let mut crit = Vec::new();
    let disc = b * b - 3.0 * c;
    if disc > 0.0 {
        let s = disc.sqrt();
        crit = vec![((-b - s) / 3.0).floor() as i128, ((-b + s) / 3.0).floor() as i128];
    }
    let mut roots = Vec::new();
    // integers near the critical points are tested directly; between them g is monotone
    for &k in &crit {
        for x in k - 3..=k + 3 {
            if eval(x)? == 0 {
                roots.push(x);
            }
        }
    }
    let mut edges = vec![-h];
    for &k in &crit {
        edges.push(k - 4);
        edges.push(k + 4);
    }
    edges.push(h);
    for w in edges.chunks(2) {
        let (lo, hi) = (w[0], w[1]);
        if lo > hi {
            continue;
        }
        let (flo, fhi) = (eval(lo)?.signum(), eval(hi)?.signum());
        if flo == 0 {
            roots.push(lo);
        }
        if fhi == 0 {
            roots.push(hi);
        }
        if flo * fhi < 0 {
            let (mut l, mut r) = (lo, hi);
            while r - l > 1 {
                let m = l + (r - l) / 2;
                let fm = eval(m)?.signum();
                if fm == 0 {
                    roots.push(m);
                    break;
                }
                if fm == flo {
                    l = m;
                } else {
                    r = m;
                }
            }
        }
    }
    roots.sort_unstable();
    roots.dedup();
    Ok(roots)
}

/// Order of `Frob_q` acting on `E[2]`, read from the factorization of the
/// 2-division cubic mod `q`: three roots give 1, one root 2, none 3.
pub fn frob_order(e: &WeierstrassCurve, q: u64) -> Result<u8, Mod2Error> {
    frob_order_of(&TwoDivisionCubic::of(e), q)
}

pub fn frob_order_of(g: &TwoDivisionCubic, q: u64) -> Result<u8, Mod2Error> {
    if q < 3 || !arith::is_prime(q) || g.disc % q as i128 == 0 {
        return Err(Mod2Error::ExcludedPrime(q));
    }
    Ok(match arith::root_profile(&g.reduce(q)?)? {
        RootProfile::ThreeRoots => 1,
        RootProfile::OneRoot { .. } => 2,
        RootProfile::Irreducible => 3,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mod2Image {
    S3,
    C3,
    C2,
    Trivial,
}

pub fn image(g: &TwoDivisionCubic, delta_squareclass: i128) -> Result<Mod2Image, Mod2Error> {
    Ok(match g.rational_roots()?.len() {
        3 => Mod2Image::Trivial,
        1 => Mod2Image::C2,
        0 if delta_squareclass == 1 => Mod2Image::C3,
        0 => Mod2Image::S3,
        n => unreachable!("separable cubic with {n} rational roots"),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwoAdicReduction {
    Ordinary,
    Supersingular,
    Multiplicative,
}

/// Behavior of `Q_2(sqrt(disc))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadraticAt2 {
    Split,
    Unramified,
    Ramified,
}

impl QuadraticAt2 {
    /// Classifies `Q_2(sqrt(d))` for squarefree `d`.
    pub fn of_squarefree(d: i128) -> Self {
        match d.rem_euclid(8) {
            1 => QuadraticAt2::Split,
            5 => QuadraticAt2::Unramified,
            _ => QuadraticAt2::Ramified,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoAdicProfile {
    pub reduction: TwoAdicReduction,
    /// Number of roots of the 2-division cubic in `Q_2`, if the factorization ran.
    pub roots_in_q2: Option<u8>,
    pub quadratic: QuadraticAt2,
    pub trivial_at_2: bool,
    pub ramified_at_2: bool,
    pub precision: u32,
}

pub const DEFAULT_PRECISION: u32 = 64;

/// Roots of a monic integral cubic in `Z_2`, counted without multiplicity.
///
/// Works with coefficients mod `2^precision`. Each node of the search holds
/// `h(x) = f(r + 2^j x) / 2^c` with the content removed; a simple root of
/// `h` mod 2 lifts to exactly one root by Hensel, a multiple root is refined
/// by substituting `x -> x0 + 2x`. Every division by 2 costs one bit of
/// precision, and running out of bits makes the answer inconclusive.
pub fn roots_in_z2(b: i128, c: i128, d: i128, precision: u32) -> Result<u8, Mod2Error> {
    if !(8..=120).contains(&precision) {
        return Err(Mod2Error::Precision(precision));
    }
    let h = [d as u128, c as u128, b as u128, 1u128];
    let n = z2_roots_rec(h, precision, precision)?;
    debug_assert!(n <= 3);
    Ok(n as u8)
}

fn z2_roots_rec(h: [u128; 4], prec: u32, budget_prec: u32) -> Result<u32, Mod2Error> {
    let inconclusive = Err(Mod2Error::Inconclusive { precision: budget_prec });
    let mask = |x: u128, bits: u32| if bits >= 128 { x } else { x & ((1u128 << bits) - 1) };
    // content: smallest valuation among coefficients known to be nonzero
    let content = h.iter().map(|&x| mask(x, prec)).filter(|&x| x != 0).map(u128::trailing_zeros).min();
    let Some(content) = content else {
        return inconclusive;
    };
    if content >= prec.saturating_sub(1) {
        return inconclusive;
    }
    let h = h.map(|x| x >> content);
    let prec = prec - content;
    let mut total = 0;
    for r in 0..2u128 {
        let value = h[0].wrapping_add(r & (h[1] ^ h[2] ^ h[3]));
        // only parities matter here: r is 0 or 1
        if value & 1 != 0 {
            continue;
        }
        let slope = h[1].wrapping_add(r & h[3]);
        if slope & 1 == 1 {
            total += 1;
            continue;
        }
        total += z2_roots_rec(substitute(h, r), prec, budget_prec)?;
    }
    Ok(total)
}

/// Coefficients of `h(r + 2x)` for a cubic `h`.
fn substitute(h: [u128; 4], r: u128) -> [u128; 4] {
    let [h0, h1, h2, h3] = h;
    let w = |x: u128, y: u128| x.wrapping_mul(y);
    let r2 = w(r, r);
    let k0 = h0.wrapping_add(w(h1, r)).wrapping_add(w(h2, r2)).wrapping_add(w(h3, w(r2, r)));
    let k1 = h1.wrapping_add(w(2 * r, h2)).wrapping_add(w(3, w(h3, r2)));
    let k2 = h2.wrapping_add(w(3, w(h3, r)));
    [k0, w(2, k1), w(4, k2), w(8, h3)]
}

/// Reduction type at 2 and the local behavior of `E[2]` over `Q_2`.
pub fn two_adic_profile(e: &WeierstrassCurve, precision: u32) -> Result<TwoAdicProfile, Mod2Error> {
    let red = e.reduction_type(2)?;
    let reduction = match red.kind {
        ReductionKind::Good => {
            if e.ap(2)? % 2 != 0 {
                TwoAdicReduction::Ordinary
            } else {
                TwoAdicReduction::Supersingular
            }
        }
        ReductionKind::MultiplicativeSplit | ReductionKind::MultiplicativeNonsplit => TwoAdicReduction::Multiplicative,
        ReductionKind::Additive => return Err(Mod2Error::AdditiveAtTwo),
    };
    let disc = e.discriminant();
    let quadratic = QuadraticAt2::of_squarefree(arith::squarefree_part(disc)?);
    let g = TwoDivisionCubic::of(e);
    if arith::valuation(disc, 2) % 2 == 1 {
        // odd valuation: Q_2(sqrt(disc)) is already ramified
        return Ok(TwoAdicProfile {
            reduction,
            roots_in_q2: None,
            quadratic,
            trivial_at_2: false,
            ramified_at_2: true,
            precision,
        });
    }
    let roots = roots_in_z2(g.b, g.c, g.d, precision)?;
    let ramified = match roots {
        3 => false,
        1 => quadratic == QuadraticAt2::Ramified,
        // irreducible over Q_2: cyclic cubic is unramified, S3 is ramified
        0 => quadratic != QuadraticAt2::Split,
        n => unreachable!("separable cubic with {n} roots in Q_2"),
    };
    Ok(TwoAdicProfile {
        reduction,
        roots_in_q2: Some(roots),
        quadratic,
        trivial_at_2: roots == 3,
        ramified_at_2: ramified,
        precision,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mod2Profile {
    pub cubic: TwoDivisionCubic,
    pub image: Mod2Image,
    pub delta_squareclass: i128,
    pub induced_from_qi: bool,
    pub two_adic: Result<TwoAdicProfile, String>,
    /// Odd component groups at every bad prime (the criterion used for the
    /// Serre conductor; no direct conductor computation is attempted).
    pub serre_conductor_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum ItemStatus {
    Pass,
    Fail(String),
    Inconclusive(String),
}

impl ItemStatus {
    pub fn is_pass(&self) -> bool {
        matches!(self, ItemStatus::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssumptionItem {
    pub item: u8,
    pub requirement: &'static str,
    #[serde(flatten)]
    pub status: ItemStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssumptionReport {
    pub curve: WeierstrassCurve,
    pub anchor: &'static str,
    pub conductor: u128,
    pub conductor_local: Conductor,
    pub profile: Mod2Profile,
    pub items: Vec<AssumptionItem>,
}

impl AssumptionReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.status.is_pass())
    }

    pub fn item(&self, n: u8) -> &ItemStatus {
        &self.items[n as usize - 1].status
    }
}

/// Runs the five standing hypotheses: (1) 4 does not divide N; (2) image
/// S3 and not induced from Q(i); (3) odd component groups at bad primes, and
/// ramified at 2 when 2 | N; (4) nontrivial at 2 when 2 does not divide N;
/// (5) negative discriminant.
pub fn assumption_check(e: &WeierstrassCurve, conductor_hint: &[u64]) -> Result<AssumptionReport, Mod2Error> {
    let conductor = e.conductor_with_hint(conductor_hint)?;
    let disc = e.discriminant();
    let cubic = TwoDivisionCubic::of(e);
    let sq = arith::squarefree_part_with(disc, conductor_hint, &Default::default())?;
    let img = image(&cubic, sq)?;
    let four_divides = conductor.exponent(2) >= 2;
    let two_adic = if four_divides {
        Err(Mod2Error::AdditiveAtTwo.to_string())
    } else {
        two_adic_profile(e, DEFAULT_PRECISION).map_err(|err| err.to_string())
    };
    let even_groups: Vec<u64> = conductor
        .local
        .iter()
        .filter(|r| r.component_group_order % 2 == 0)
        .map(|r| r.prime)
        .collect();
    let profile = Mod2Profile {
        cubic,
        image: img,
        delta_squareclass: sq,
        induced_from_qi: sq == -1,
        two_adic: two_adic.clone(),
        serre_conductor_ok: even_groups.is_empty(),
    };

    let mut items = Vec::with_capacity(5);
    items.push(AssumptionItem {
        item: 1,
        requirement: "good or multiplicative reduction at 2",
        status: if four_divides {
            ItemStatus::Fail(format!("2^{} divides N", conductor.exponent(2)))
        } else {
            ItemStatus::Pass
        },
    });
    items.push(AssumptionItem {
        item: 2,
        requirement: "mod-2 image is all of GL2(F2) and not induced from Q(i)",
        status: match (img, sq) {
            (Mod2Image::S3, -1) => ItemStatus::Fail("square class of the discriminant is -1".into()),
            (Mod2Image::S3, _) => ItemStatus::Pass,
            (other, _) => ItemStatus::Fail(format!("image is {other:?}")),
        },
    });
    let item3 = if !even_groups.is_empty() {
        ItemStatus::Fail(format!("even component group at {even_groups:?}"))
    } else if conductor.exponent(2) == 1 {
        match &two_adic {
            Ok(t) if t.ramified_at_2 => ItemStatus::Pass,
            Ok(_) => ItemStatus::Fail("2 | N but the mod-2 representation is unramified at 2".into()),
            Err(msg) => ItemStatus::Inconclusive(msg.clone()),
        }
    } else {
        ItemStatus::Pass
    };
    items.push(AssumptionItem {
        item: 3,
        requirement: "Serre conductor equals the odd part of N",
        status: item3,
    });
    let item4 = if conductor.exponent(2) == 0 {
        match &two_adic {
            Ok(t) => {
                let criterion = t.reduction == TwoAdicReduction::Ordinary && t.quadratic == QuadraticAt2::Split;
                if criterion != t.trivial_at_2 {
                    ItemStatus::Inconclusive(format!(
                        "2-adic factorization (trivial={}) disagrees with the ordinary/split criterion ({criterion})",
                        t.trivial_at_2
                    ))
                } else if t.trivial_at_2 {
                    ItemStatus::Fail("restriction to the decomposition group at 2 is trivial".into())
                } else {
                    ItemStatus::Pass
                }
            }
            Err(msg) => ItemStatus::Inconclusive(msg.clone()),
        }
    } else {
        ItemStatus::Pass
    };
    items.push(AssumptionItem {
        item: 4,
        requirement: "if 2 does not divide N, the restriction to G_Q2 is nontrivial",
        status: item4,
    });
    items.push(AssumptionItem {
        item: 5,
        requirement: "negative discriminant",
        status: if disc < 0 {
            ItemStatus::Pass
        } else {
            ItemStatus::Fail(format!("discriminant {disc} > 0"))
        },
    });
    Ok(AssumptionReport {
        curve: e.clone(),
        anchor: "standing-hypotheses",
        conductor: conductor.value,
        conductor_local: conductor,
        profile,
        items,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: [i64; 5]) -> WeierstrassCurve {
        WeierstrassCurve::new(a).unwrap()
    }

    #[test]
    fn cubic_11a1() {
        let g = TwoDivisionCubic::of(&e([0, -1, 1, -10, -20]));
        assert_eq!((g.b, g.c, g.d), (-4, -160, -1264));
        assert_eq!(g.discriminant_by_formula(), Some(g.disc));
        assert_eq!(g.disc, 256 * -161051);
        assert_eq!(g.to_string(), "x^3 - 4x^2 - 160x - 1264");
        assert!(g.rational_roots().unwrap().is_empty());
    }

    #[test]
    fn cubic_full_two_torsion() {
        // y^2 = x^3 - x: roots of g are 4 * {0, 1, -1}
        let g = TwoDivisionCubic::of(&e([0, 0, 0, -1, 0]));
        assert_eq!(g.rational_roots().unwrap(), vec![-4, 0, 4]);
        assert_eq!(image(&g, arith::squarefree_part(64).unwrap()).unwrap(), Mod2Image::Trivial);
    }

    #[test]
    fn frob_order_11a1() {
        let c = e([0, -1, 1, -10, -20]);
        assert_eq!(frob_order(&c, 7), Ok(2));
        assert_eq!(frob_order(&c, 3), Ok(3));
        assert_eq!(frob_order(&c, 13), Ok(2));
        assert_eq!(frob_order(&c, 11), Err(Mod2Error::ExcludedPrime(11)));
        assert_eq!(frob_order(&c, 2), Err(Mod2Error::ExcludedPrime(2)));
    }

    #[test]
    fn z2_roots_simple() {
        // (x-1)(x-3)(x-5): three roots, pairwise differences are 2 and 4
        assert_eq!(roots_in_z2(-9, 23, -15, 64), Ok(3));
        // x^3 - 2: Eisenstein, no roots
        assert_eq!(roots_in_z2(0, 0, -2, 64), Ok(0));
        // (x - 7)(x^2 + 1): one root
        assert_eq!(roots_in_z2(-7, 1, -7, 64), Ok(1));
        // (x-1)(x-1-2^20)(x+3): close roots need more precision than 8
        let r = 1i128 << 20;
        let (b, c, d) = (-(1 + (1 + r)) + 3, (1 + r) - 3 - 3 * (1 + r), 3 * (1 + r));
        assert_eq!(roots_in_z2(b, c, d, 64), Ok(3));
        assert_eq!(roots_in_z2(b, c, d, 16), Err(Mod2Error::Inconclusive { precision: 16 }));
    }

    #[test]
    fn two_adic_11a1() {
        let t = two_adic_profile(&e([0, -1, 1, -10, -20]), 64).unwrap();
        assert_eq!(t.reduction, TwoAdicReduction::Supersingular);
        assert!(t.ramified_at_2);
        assert!(!t.trivial_at_2);
    }

    #[test]
    fn two_adic_2351a1() {
        let t = two_adic_profile(&e([1, 0, 1, -5, -5]), 64).unwrap();
        assert_eq!(t.reduction, TwoAdicReduction::Ordinary);
        assert!(t.trivial_at_2);
        assert_eq!(t.quadratic, QuadraticAt2::Split);
    }
}
