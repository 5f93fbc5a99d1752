//! The finite field F_{2^d}, d ≤ 8, as polynomials over F_2 modulo a fixed
//! irreducible polynomial. Elements are bytes holding the coefficient bits.

use serde::{Deserialize, Serialize};

use crate::SelmerError;

pub const MAX_DEGREE: u32 = 8;

/// Conway-style defaults; any irreducible polynomial of the right degree works.
const DEFAULT_MODULI: [u16; 9] = [0, 0b11, 0b111, 0b1011, 0b1_0011, 0b10_0101, 0b100_0011, 0b1000_0011, 0x11b];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gf2k {
    pub degree: u32,
    pub modulus: u16,
}

impl Default for Gf2k {
    fn default() -> Self {
        Gf2k::F2
    }
}

impl Gf2k {
    pub const F2: Gf2k = Gf2k { degree: 1, modulus: 0b11 };

    pub fn new(degree: u32) -> Result<Self, SelmerError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(SelmerError::Field(format!("degree {degree} outside 1..={MAX_DEGREE}")));
        }
        Ok(Gf2k { degree, modulus: DEFAULT_MODULI[degree as usize] })
    }

    pub fn with_modulus(degree: u32, modulus: u16) -> Result<Self, SelmerError> {
        let f = Gf2k { degree, modulus };
        if degree == 0 || degree > MAX_DEGREE || modulus >> degree != 1 || !f.modulus_irreducible() {
            return Err(SelmerError::Field(format!("{modulus:#b} is not an irreducible polynomial of degree {degree}")));
        }
        Ok(f)
    }

    fn modulus_irreducible(&self) -> bool {
        // no factor of degree ≤ d/2
        let deg = |p: u32| 31 - p.leading_zeros();
        let rem = |mut a: u32, b: u32| {
            while a != 0 && deg(a) >= deg(b) {
                a ^= b << (deg(a) - deg(b));
            }
            a
        };
        let m = self.modulus as u32;
        (2u32..(1 << (self.degree / 2 + 1))).all(|p| rem(m, p) != 0)
    }

    pub fn order(&self) -> usize {
        1 << self.degree
    }

    pub fn mask(&self) -> u8 {
        ((1u16 << self.degree) - 1) as u8
    }

    pub fn contains(&self, a: u8) -> bool {
        (a as u16) >> self.degree == 0
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        a ^ b
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        let mut prod: u16 = 0;
        for i in 0..self.degree {
            if (b >> i) & 1 == 1 {
                prod ^= (a as u16) << i;
            }
        }
        for i in (self.degree..2 * self.degree).rev() {
            if (prod >> i) & 1 == 1 {
                prod ^= self.modulus << (i - self.degree);
            }
        }
        prod as u8
    }

    pub fn pow(&self, a: u8, mut e: u32) -> u8 {
        let (mut base, mut acc) = (a, 1u8);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.pow(a, (1u32 << self.degree) - 2))
    }

    pub fn div(&self, a: u8, b: u8) -> Option<u8> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// Absolute trace to F_2.
    pub fn trace(&self, a: u8) -> u8 {
        let mut t = a;
        let mut x = a;
        for _ in 1..self.degree {
            x = self.mul(x, x);
            t ^= x;
        }
        t
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..=self.mask()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli_are_irreducible() {
        for d in 1..=MAX_DEGREE {
            let f = Gf2k::new(d).unwrap();
            assert!(f.modulus_irreducible(), "degree {d}");
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn trace_is_onto_f2() {
        for d in 1..=MAX_DEGREE {
            let f = Gf2k::new(d).unwrap();
            let ones = f.elements().filter(|&a| f.trace(a) == 1).count();
            assert_eq!(ones, f.order() / 2);
            assert!(f.elements().all(|a| f.trace(a) <= 1));
        }
    }

    #[test]
    fn rejects_reducible() {
        assert!(Gf2k::with_modulus(2, 0b101).is_err());
        assert!(Gf2k::with_modulus(4, 0b11111).is_ok());
    }
}
