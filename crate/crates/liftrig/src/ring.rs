//! The Galois ring GR(2^k, 2) = (Z/2^k)[ω]/(ω² + ω + 1) and 2×2 matrices over it.

use std::fmt;

use serde::{Deserialize, Serialize};

pub const MAX_PRECISION: u32 = 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaloisRing {
    pub precision: u32,
}

/// `a + bω`, coordinates reduced mod 2^k.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gr {
    pub a: u32,
    pub b: u32,
}

impl GaloisRing {
    pub fn new(precision: u32) -> GaloisRing {
        assert!((1..=MAX_PRECISION).contains(&precision), "precision {precision} out of range");
        GaloisRing { precision }
    }

    pub fn modulus(&self) -> u64 {
        1 << self.precision
    }

    fn mask(&self) -> u32 {
        ((1u64 << self.precision) - 1) as u32
    }

    pub fn size(&self) -> u64 {
        1 << (2 * self.precision)
    }

    pub fn elem(&self, a: i64, b: i64) -> Gr {
        let m = self.modulus() as i64;
        Gr { a: a.rem_euclid(m) as u32, b: b.rem_euclid(m) as u32 }
    }

    pub fn int(&self, a: i64) -> Gr {
        self.elem(a, 0)
    }

    pub fn zero(&self) -> Gr {
        Gr::default()
    }

    pub fn one(&self) -> Gr {
        Gr { a: 1, b: 0 }
    }

    pub fn omega(&self) -> Gr {
        Gr { a: 0, b: 1 }
    }

    pub fn reduce(&self, x: Gr) -> Gr {
        Gr { a: x.a & self.mask(), b: x.b & self.mask() }
    }

    pub fn add(&self, x: Gr, y: Gr) -> Gr {
        let m = self.mask();
        Gr { a: x.a.wrapping_add(y.a) & m, b: x.b.wrapping_add(y.b) & m }
    }

    pub fn neg(&self, x: Gr) -> Gr {
        let m = self.mask();
        Gr { a: x.a.wrapping_neg() & m, b: x.b.wrapping_neg() & m }
    }

    pub fn sub(&self, x: Gr, y: Gr) -> Gr {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Gr, y: Gr) -> Gr {
        // (a + bω)(c + dω) = (ac − bd) + (ad + bc − bd)ω, using ω² = −1 − ω
        let (a, b, c, d) = (x.a as u64, x.b as u64, y.a as u64, y.b as u64);
        let bd = b.wrapping_mul(d);
        let re = a.wrapping_mul(c).wrapping_sub(bd);
        let im = a.wrapping_mul(d).wrapping_add(b.wrapping_mul(c)).wrapping_sub(bd);
        let m = self.mask() as u64;
        Gr { a: (re & m) as u32, b: (im & m) as u32 }
    }

    pub fn pow(&self, x: Gr, mut e: u64) -> Gr {
        let (mut base, mut acc) = (x, self.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image in F_4 = F_2[ω]: the pair of low bits.
    pub fn residue(&self, x: Gr) -> (u32, u32) {
        (x.a & 1, x.b & 1)
    }

    pub fn is_unit(&self, x: Gr) -> bool {
        self.residue(x) != (0, 0)
    }

    pub fn conj(&self, x: Gr) -> Gr {
        // ω ↦ ω² = −1 − ω
        self.elem(x.a as i64 - x.b as i64, -(x.b as i64))
    }

    /// `N(x) = x·x̄ = a² − ab + b²` in Z/2^k.
    pub fn norm(&self, x: Gr) -> u32 {
        self.mul(x, self.conj(x)).a
    }

    pub fn inv(&self, x: Gr) -> Option<Gr> {
        if !self.is_unit(x) {
            return None;
        }
        let n = self.norm(x) as u64;
        // Newton iteration for 1/n mod 2^k, n odd
        let mut y: u64 = 1;
        for _ in 0..6 {
            y = y.wrapping_mul(2u64.wrapping_sub(n.wrapping_mul(y)));
        }
        let ninv = self.int((y & self.mask() as u64) as i64);
        Some(self.mul(self.conj(x), ninv))
    }

    /// All elements `2·x`, i.e. the maximal ideal.
    pub fn maximal_ideal(&self) -> Vec<Gr> {
        let half = 1u32 << (self.precision - 1);
        let mut out = Vec::with_capacity((half * half) as usize);
        for a in 0..half {
            for b in 0..half {
                out.push(Gr { a: 2 * a, b: 2 * b });
            }
        }
        out
    }

    pub fn fmt(&self, x: Gr) -> String {
        let m = self.modulus() as i64;
        let signed = |v: u32| if (v as i64) > m / 2 { v as i64 - m } else { v as i64 };
        match (signed(x.a), signed(x.b)) {
            (a, 0) => format!("{a}"),
            (0, b) => format!("{b}w"),
            (a, b) if b < 0 => format!("{a}{b}w"),
            (a, b) => format!("{a}+{b}w"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2(pub [[Gr; 2]; 2]);

impl Mat2 {
    pub fn diag(x: Gr, y: Gr) -> Mat2 {
        Mat2([[x, Gr::default()], [Gr::default(), y]])
    }

    pub fn scalar(x: Gr) -> Mat2 {
        Mat2::diag(x, x)
    }

    pub fn is_diagonal(&self) -> bool {
        self.0[0][1] == Gr::default() && self.0[1][0] == Gr::default()
    }

    pub fn is_scalar(&self) -> bool {
        self.is_diagonal() && self.0[0][0] == self.0[1][1]
    }
}

impl GaloisRing {
    pub fn identity(&self) -> Mat2 {
        Mat2::scalar(self.one())
    }

    pub fn mat_mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        let mut out = Mat2::default();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.add(self.mul(x.0[i][0], y.0[0][j]), self.mul(x.0[i][1], y.0[1][j]));
            }
        }
        out
    }

    pub fn mat_pow(&self, x: &Mat2, mut e: u64) -> Mat2 {
        let (mut base, mut acc) = (*x, self.identity());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mat_mul(&acc, &base);
            }
            base = self.mat_mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn det(&self, x: &Mat2) -> Gr {
        self.sub(self.mul(x.0[0][0], x.0[1][1]), self.mul(x.0[0][1], x.0[1][0]))
    }

    pub fn mat_inv(&self, x: &Mat2) -> Option<Mat2> {
        let d = self.inv(self.det(x))?;
        let m = &x.0;
        Some(Mat2([
            [self.mul(m[1][1], d), self.neg(self.mul(m[0][1], d))],
            [self.neg(self.mul(m[1][0], d)), self.mul(m[0][0], d)],
        ]))
    }

    pub fn mat_reduce(&self, x: &Mat2) -> Mat2 {
        let mut out = *x;
        for row in out.0.iter_mut() {
            for e in row.iter_mut() {
                *e = self.reduce(*e);
            }
        }
        out
    }

    pub fn mat_fmt(&self, x: &Mat2) -> String {
        let m = &x.0;
        format!("[[{}, {}], [{}, {}]]", self.fmt(m[0][0]), self.fmt(m[0][1]), self.fmt(m[1][0]), self.fmt(m[1][1]))
    }
}

impl fmt::Display for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR(2^{}, 2)", self.precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_is_a_cube_root_of_unity() {
        let r = GaloisRing::new(5);
        let w = r.omega();
        assert_eq!(r.pow(w, 3), r.one());
        assert_eq!(r.add(r.add(r.mul(w, w), w), r.one()), r.zero());
    }

    #[test]
    fn units_are_exactly_nonzero_residues() {
        let r = GaloisRing::new(3);
        let mut units = 0;
        for a in 0..8 {
            for b in 0..8 {
                let x = r.elem(a, b);
                match r.inv(x) {
                    Some(y) => {
                        units += 1;
                        assert_eq!(r.mul(x, y), r.one());
                    }
                    None => assert_eq!(r.residue(x), (0, 0)),
                }
            }
        }
        // 4^k − 4^(k−1)
        assert_eq!(units, 64 - 16);
    }

    #[test]
    fn matrix_inverse() {
        let r = GaloisRing::new(4);
        let m = Mat2([[r.elem(3, 1), r.elem(2, 0)], [r.elem(0, 4), r.elem(1, 1)]]);
        let inv = r.mat_inv(&m).unwrap();
        assert_eq!(r.mat_mul(&m, &inv), r.identity());
    }
}
