//! Vectors and subspaces of F_{2^d}^n for n ≤ 64.
//!
//! A vector is stored as d bitplanes: bit i of `planes[j]` is bit j of the
//! i-th coordinate, so addition is a word-wise XOR and scaling mixes planes.
//! Subspaces are kept in reduced row echelon form, which makes equality of
//! subspaces equality of representations.

use crate::field::Gf2k;

pub const MAX_DIM: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FVec {
    pub planes: [u64; 8],
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl FVec {
    pub const ZERO: FVec = FVec { planes: [0; 8] };

    pub fn unit(i: usize) -> FVec {
        let mut v = FVec::ZERO;
        v.planes[0] = 1 << i;
        v
    }

    /// Vector over F_2 from a bitmask.
    pub fn from_bits(bits: u64) -> FVec {
        let mut v = FVec::ZERO;
        v.planes[0] = bits;
        v
    }

    pub fn from_coords(coords: &[u8]) -> FVec {
        let mut v = FVec::ZERO;
        for (i, &c) in coords.iter().enumerate() {
            v.set(i, c);
        }
        v
    }

    pub fn coords(&self, n: usize) -> Vec<u8> {
        (0..n).map(|i| self.get(i)).collect()
    }

    pub fn get(&self, i: usize) -> u8 {
        let mut c = 0u8;
        for (j, p) in self.planes.iter().enumerate() {
            c |= (((p >> i) & 1) as u8) << j;
        }
        c
    }

    pub fn set(&mut self, i: usize, c: u8) {
        for j in 0..8 {
            self.planes[j] = (self.planes[j] & !(1 << i)) | ((((c >> j) & 1) as u64) << i);
        }
    }

    pub fn support(&self) -> u64 {
        self.planes.iter().fold(0, |a, p| a | p)
    }

    pub fn is_zero(&self) -> bool {
        self.support() == 0
    }

    pub fn add(&self, other: &FVec) -> FVec {
        let mut out = *self;
        for j in 0..8 {
            out.planes[j] ^= other.planes[j];
        }
        out
    }

    pub fn scale(&self, c: u8, f: &Gf2k) -> FVec {
        match c {
            0 => FVec::ZERO,
            1 => *self,
            _ => {
                let mut out = FVec::ZERO;
                let mut basis = c; // c·t^j
                for j in 0..f.degree as usize {
                    for k in 0..f.degree as usize {
                        if (basis >> k) & 1 == 1 {
                            out.planes[k] ^= self.planes[j];
                        }
                    }
                    basis = f.mul(basis, 2);
                }
                out
            }
        }
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: u8, other: &FVec, f: &Gf2k) -> FVec {
        self.add(&other.scale(c, f))
    }

    pub fn shift(&self, offset: usize) -> FVec {
        let mut out = FVec::ZERO;
        for j in 0..8 {
            out.planes[j] = self.planes[j] << offset;
        }
        out
    }

    /// Coordinates `offset..offset + len`, moved to the front.
    pub fn slice(&self, offset: usize, len: usize) -> FVec {
        let mut out = FVec::ZERO;
        for j in 0..8 {
            out.planes[j] = (self.planes[j] >> offset) & low_mask(len);
        }
        out
    }

    pub fn dot(&self, other: &FVec, f: &Gf2k) -> u8 {
        if f.degree == 1 {
            return ((self.planes[0] & other.planes[0]).count_ones() & 1) as u8;
        }
        let mut acc = 0;
        let mut both = self.support() & other.support();
        while both != 0 {
            let i = both.trailing_zeros() as usize;
            acc ^= f.mul(self.get(i), other.get(i));
            both &= both - 1;
        }
        acc
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        let s = self.support();
        (s != 0).then(|| s.trailing_zeros() as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub field: Gf2k,
    pub ambient: usize,
    rows: Vec<FVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Gf2k, ambient: usize) -> Subspace {
        assert!(ambient <= MAX_DIM, "ambient dimension {ambient} exceeds {MAX_DIM}");
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Gf2k, ambient: usize) -> Subspace {
        Subspace::span(field, ambient, (0..ambient).map(FVec::unit))
    }

    pub fn span(field: Gf2k, ambient: usize, vectors: impl IntoIterator<Item = FVec>) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[FVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce(&self, mut v: FVec) -> FVec {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v.get(p);
            if c != 0 {
                v = v.axpy(c, row, &self.field);
            }
        }
        v
    }

    pub fn contains(&self, v: &FVec) -> bool {
        self.reduce(*v).is_zero()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: FVec) -> bool {
        debug_assert!(v.support() >> self.ambient == 0 || self.ambient == 64);
        let r = self.reduce(v);
        let Some(p) = r.first_nonzero() else { return false };
        let f = self.field;
        let r = r.scale(f.inv(r.get(p)).unwrap(), &f);
        for row in self.rows.iter_mut() {
            let c = row.get(p);
            if c != 0 {
                *row = row.axpy(c, &r, &f);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(*v);
        }
        s
    }

    /// Annihilator under the standard dot product.
    pub fn perp_std(&self) -> Subspace {
        let f = self.field;
        let mut out = Subspace::zero(f, self.ambient);
        let pivot_mask = self.pivots.iter().fold(0u64, |m, &p| m | 1 << p);
        for free in (0..self.ambient).filter(|i| pivot_mask >> i & 1 == 0) {
            let mut x = FVec::unit(free);
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                x.set(p, row.get(free));
            }
            out.rows.push(x);
            out.pivots.push(free);
        }
        // already reduced: each kernel vector has a single free coordinate
        out
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.perp_std().sum(&other.perp_std()).perp_std()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|v| other.contains(v))
    }

    /// Image under `v ↦ v.shift(offset)` inside an ambient space of size `ambient`.
    pub fn embed(&self, offset: usize, ambient: usize) -> Subspace {
        Subspace::span(self.field, ambient, self.rows.iter().map(|v| v.shift(offset)))
    }

    /// Projection onto coordinates `offset..offset + len`.
    pub fn project(&self, offset: usize, len: usize) -> Subspace {
        Subspace::span(self.field, len, self.rows.iter().map(|v| v.slice(offset, len)))
    }

    /// Image under a linear map given on basis vectors.
    pub fn map(&self, ambient: usize, f: impl Fn(&FVec) -> FVec) -> Subspace {
        Subspace::span(self.field, ambient, self.rows.iter().map(f))
    }

    /// All elements; only sensible for small spaces.
    pub fn elements(&self) -> Vec<FVec> {
        let mut out = vec![FVec::ZERO];
        for row in &self.rows {
            let mut next = Vec::with_capacity(out.len() * self.field.order());
            for c in self.field.elements() {
                let scaled = row.scale(c, &self.field);
                next.extend(out.iter().map(|v| v.add(&scaled)));
            }
            out = next;
        }
        out
    }
}
