//! Polynomials over F_2 packed into a machine word, with factorization by
//! squarefree, distinct-degree and equal-degree splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Largest supported degree. Products are formed in 128 bits.
pub const MAX_DEGREE: u32 = 63;

/// Bit i is the coefficient of x^i.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf2Poly(u64);

impl Gf2Poly {
    pub const ZERO: Gf2Poly = Gf2Poly(0);
    pub const ONE: Gf2Poly = Gf2Poly(1);
    pub const X: Gf2Poly = Gf2Poly(2);

    pub fn from_bits(bits: u64) -> Self {
        Gf2Poly(bits)
    }

    /// Reduces integer coefficients (low degree first) mod 2.
    pub fn from_coeffs<I: IntoIterator<Item = bool>>(coeffs: I) -> Option<Self> {
        let mut bits = 0u64;
        for (i, c) in coeffs.into_iter().enumerate() {
            if c {
                if i as u32 > MAX_DEGREE {
                    return None;
                }
                bits |= 1 << i;
            }
        }
        Some(Gf2Poly(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn degree(self) -> Option<u32> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros())
    }

    pub fn coeff(self, i: u32) -> bool {
        i < 64 && (self.0 >> i) & 1 == 1
    }

    pub fn add(self, other: Self) -> Self {
        Gf2Poly(self.0 ^ other.0)
    }

    fn clmul(a: u64, b: u64) -> u128 {
        let mut out = 0u128;
        let mut b = b;
        let mut shift = 0;
        while b != 0 {
            if b & 1 == 1 {
                out ^= (a as u128) << shift;
            }
            b >>= 1;
            shift += 1;
        }
        out
    }

    fn rem_wide(mut a: u128, m: Self) -> Self {
        let dm = m.degree().expect("division by zero polynomial");
        let m = m.0 as u128;
        while a != 0 {
            let da = 127 - a.leading_zeros();
            if da < dm {
                break;
            }
            a ^= m << (da - dm);
        }
        Gf2Poly(a as u64)
    }

    /// Full product; `None` when the degree would exceed [`MAX_DEGREE`].
    pub fn mul(self, other: Self) -> Option<Self> {
        let p = Self::clmul(self.0, other.0);
        (p >> 64 == 0).then_some(Gf2Poly(p as u64))
    }

    pub fn mul_mod(self, other: Self, m: Self) -> Self {
        Self::rem_wide(Self::clmul(self.0, other.0), m)
    }

    pub fn rem(self, m: Self) -> Self {
        Self::rem_wide(self.0 as u128, m)
    }

    pub fn div_rem(self, m: Self) -> (Self, Self) {
        let dm = m.degree().expect("division by zero polynomial");
        let (mut q, mut r) = (0u64, self.0);
        while let Some(dr) = Gf2Poly(r).degree() {
            if dr < dm {
                break;
            }
            q |= 1 << (dr - dm);
            r ^= m.0 << (dr - dm);
        }
        (Gf2Poly(q), Gf2Poly(r))
    }

    pub fn gcd(self, other: Self) -> Self {
        let (mut a, mut b) = (self, other);
        while !b.is_zero() {
            let r = a.rem(b);
            a = b;
            b = r;
        }
        a
    }

    pub fn derivative(self) -> Self {
        // odd powers survive, shifted down one
        Gf2Poly((self.0 >> 1) & 0x5555_5555_5555_5555)
    }

    /// Square root of a polynomial in x^2 (every odd coefficient zero).
    fn sqrt(self) -> Self {
        debug_assert!(self.derivative().is_zero());
        let mut out = 0u64;
        for i in 0..32 {
            if self.coeff(2 * i) {
                out |= 1 << i;
            }
        }
        Gf2Poly(out)
    }

    pub fn pow_mod(self, mut e: u64, m: Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Gf2Poly::ONE.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(base, m);
            }
            base = base.mul_mod(base, m);
            e >>= 1;
        }
        acc
    }

    /// Whether the polynomial is irreducible over F_2.
    pub fn is_irreducible(self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(d) => {
                let f = factor(self);
                f.len() == 1 && f[0].1 == 1 && f[0].0.degree() == Some(d)
            }
        }
    }

    /// Evaluates a polynomial at `a` in F_2[x]/(m).
    pub fn compose_mod(self, a: Self, m: Self) -> Self {
        let mut acc = Gf2Poly::ZERO;
        for i in (0..64).rev() {
            acc = acc.mul_mod(a, m);
            if self.coeff(i) {
                acc = acc.add(Gf2Poly::ONE).rem(m);
            }
        }
        acc
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return write!(f, "0");
        };
        let mut first = true;
        for i in (0..=d).rev() {
            if !self.coeff(i) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "1")?,
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Squarefree decomposition: pairs (g, e) with f = prod g^e, each g squarefree
/// and pairwise coprime.
pub fn squarefree_decomposition(f: Gf2Poly) -> Vec<(Gf2Poly, u32)> {
    let mut out = Vec::new();
    sfd(f, 1, &mut out);
    out.sort();
    out
}

fn sfd(f: Gf2Poly, mult: u32, out: &mut Vec<(Gf2Poly, u32)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let d = f.derivative();
    if d.is_zero() {
        sfd(f.sqrt(), 2 * mult, out);
        return;
    }
    let mut c = f.gcd(d);
    let mut w = f.div_rem(c).0;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(c);
        let z = w.div_rem(y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i * mult));
        }
        i += 1;
        w = y;
        c = c.div_rem(y).0;
    }
    if c.degree().unwrap_or(0) > 0 {
        // what remains is a perfect square
        sfd(c.sqrt(), 2 * mult, out);
    }
}

/// Distinct-degree factorization of a squarefree polynomial: (product of all
/// irreducible factors of degree d, d).
pub fn distinct_degree(f: Gf2Poly) -> Vec<(Gf2Poly, u32)> {
    let mut out = Vec::new();
    let mut f = f;
    let mut h = Gf2Poly::X.rem(f);
    let mut d = 0;
    while let Some(df) = f.degree() {
        d += 1;
        if 2 * d > df {
            if df > 0 {
                out.push((f, df));
            }
            break;
        }
        h = h.mul_mod(h, f);
        let g = f.gcd(h.add(Gf2Poly::X));
        if g.degree().unwrap_or(0) > 0 {
            out.push((g, d));
            f = f.div_rem(g).0;
            h = h.rem(f);
        }
    }
    out
}

/// Splits a product of distinct irreducibles of common degree d using the
/// absolute trace map.
pub fn equal_degree(f: Gf2Poly, d: u32, rng: &mut impl Rng) -> Vec<Gf2Poly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f];
    }
    loop {
        let a = Gf2Poly(rng.random::<u64>() & ((1u64 << n) - 1));
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut t = a;
        let mut s = a;
        for _ in 1..d {
            s = s.mul_mod(s, f);
            t = t.add(s);
        }
        let g = f.gcd(t);
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < n {
                let mut out = equal_degree(g, d, rng);
                out.extend(equal_degree(f.div_rem(g).0, d, rng));
                return out;
            }
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicity, sorted.
pub fn factor(f: Gf2Poly) -> Vec<(Gf2Poly, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(f.0);
    let mut out = Vec::new();
    for (g, e) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree(g) {
            for p in equal_degree(h, d, &mut rng) {
                out.push((p, e));
            }
        }
    }
    out.sort();
    out
}
