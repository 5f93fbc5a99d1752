//! Nondegenerate quadratic spaces over F_{2^d}.

use crate::field::Gf2k;
use crate::linalg::{FVec, Subspace};
use crate::SelmerError;

/// `Q(x) = xᵀUx` with `U` upper triangular; `B(x, y) = Q(x+y) + Q(x) + Q(y)`
/// has Gram matrix `U + Uᵀ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSpace {
    pub field: Gf2k,
    dim: usize,
    upper: Vec<FVec>,
    gram: Vec<FVec>,
}

impl QuadSpace {
    pub fn new(field: Gf2k, upper: &[Vec<u8>]) -> Result<QuadSpace, SelmerError> {
        let n = upper.len();
        if n % 2 != 0 {
            return Err(SelmerError::Malformed(format!("quadratic space of odd dimension {n}")));
        }
        if n > crate::linalg::MAX_DIM {
            return Err(SelmerError::Malformed(format!("dimension {n} too large")));
        }
        for (i, row) in upper.iter().enumerate() {
            if row.len() != n {
                return Err(SelmerError::Malformed(format!("row {i} has length {}", row.len())));
            }
            if row.iter().any(|&c| !field.contains(c)) {
                return Err(SelmerError::Malformed(format!("row {i} has entries outside F_2^{}", field.degree)));
            }
            if row[..i].iter().any(|&c| c != 0) {
                return Err(SelmerError::Malformed(format!("row {i} is not upper triangular")));
            }
        }
        let rows: Vec<FVec> = upper.iter().map(|r| FVec::from_coords(r)).collect();
        QuadSpace::from_rows(field, rows)
    }

    fn from_rows(field: Gf2k, upper: Vec<FVec>) -> Result<QuadSpace, SelmerError> {
        let n = upper.len();
        let gram: Vec<FVec> = (0..n)
            .map(|i| {
                let mut r = upper[i];
                r.set(i, 0);
                for (j, row) in upper.iter().enumerate().take(i) {
                    r.set(j, row.get(i));
                }
                r
            })
            .collect();
        let space = QuadSpace { field, dim: n, upper, gram };
        if Subspace::span(field, n, space.gram.iter().copied()).dim() != n {
            return Err(SelmerError::Malformed("bilinear form is degenerate".into()));
        }
        Ok(space)
    }

    /// Orthogonal sum of `planes` copies of `(k², xy)`.
    pub fn hyperbolic(field: Gf2k, planes: usize) -> QuadSpace {
        let n = 2 * planes;
        let upper = (0..n)
            .map(|i| if i % 2 == 0 { FVec::unit(i + 1) } else { FVec::ZERO })
            .collect();
        QuadSpace::from_rows(field, upper).expect("hyperbolic space is nondegenerate")
    }

    /// The plane `x² + xy + a·y²` with `Tr(a) = 1`, which has no isotropic line.
    pub fn anisotropic_plane(field: Gf2k) -> QuadSpace {
        let a = field.elements().find(|&a| field.trace(a) == 1).expect("trace is onto F_2");
        let mut r0 = FVec::ZERO;
        r0.set(0, 1);
        r0.set(1, 1);
        let mut r1 = FVec::ZERO;
        r1.set(1, a);
        QuadSpace::from_rows(field, vec![r0, r1]).expect("anisotropic plane is nondegenerate")
    }

    pub fn orthogonal_sum(&self, other: &QuadSpace) -> QuadSpace {
        assert_eq!(self.field, other.field);
        let mut upper = self.upper.clone();
        upper.extend(other.upper.iter().map(|r| r.shift(self.dim)));
        QuadSpace::from_rows(self.field, upper).expect("sum of nondegenerate spaces")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn upper_matrix(&self) -> Vec<Vec<u8>> {
        self.upper.iter().map(|r| r.coords(self.dim)).collect()
    }

    pub fn upper_rows(&self) -> &[FVec] {
        &self.upper
    }

    fn form(&self, rows: &[FVec], x: &FVec, y: &FVec) -> u8 {
        let f = &self.field;
        if f.degree == 1 {
            let mut acc = 0u32;
            let mut s = x.planes[0];
            while s != 0 {
                let i = s.trailing_zeros() as usize;
                acc ^= (rows[i].planes[0] & y.planes[0]).count_ones();
                s &= s - 1;
            }
            return (acc & 1) as u8;
        }
        let mut acc = 0;
        let mut s = x.support();
        while s != 0 {
            let i = s.trailing_zeros() as usize;
            acc ^= f.mul(x.get(i), rows[i].dot(y, f));
            s &= s - 1;
        }
        acc
    }

    pub fn q(&self, x: &FVec) -> u8 {
        self.form(&self.upper, x, x)
    }

    pub fn b(&self, x: &FVec, y: &FVec) -> u8 {
        self.form(&self.gram, x, y)
    }

    /// `M x` for the Gram matrix `M`, so that `B(x, y) = (Mx)·y`.
    pub fn gram_apply(&self, x: &FVec) -> FVec {
        let mut out = FVec::ZERO;
        for (i, row) in self.gram.iter().enumerate() {
            out.set(i, row.dot(x, &self.field));
        }
        out
    }

    pub fn perp(&self, w: &Subspace) -> Subspace {
        w.map(self.dim, |v| self.gram_apply(v)).perp_std()
    }

    pub fn is_b_isotropic(&self, w: &Subspace) -> bool {
        let b = w.basis();
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| self.b(&b[i], &b[j]) == 0))
    }

    pub fn is_q_isotropic(&self, w: &Subspace) -> bool {
        self.is_b_isotropic(w) && w.basis().iter().all(|v| self.q(v) == 0)
    }

    /// `W = W^⊥` for `B`.
    pub fn is_self_dual(&self, w: &Subspace) -> bool {
        2 * w.dim() == self.dim && self.is_b_isotropic(w)
    }

    pub fn is_q_lagrangian(&self, w: &Subspace) -> bool {
        2 * w.dim() == self.dim && self.is_q_isotropic(w)
    }

    /// All one-dimensional subspaces; intended for small spaces.
    pub fn lines(&self) -> Vec<Subspace> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for v in Subspace::full(self.field, self.dim).elements() {
            if v.is_zero() {
                continue;
            }
            let l = Subspace::span(self.field, self.dim, [v]);
            if seen.insert(l.clone()) {
                out.push(l);
            }
        }
        out
    }

    pub fn q_isotropic_lines(&self) -> Vec<Subspace> {
        self.lines().into_iter().filter(|l| self.is_q_isotropic(l)).collect()
    }

    /// A basis `e_1, f_1, …` with `B(e_i, f_j) = δ_ij` and all other pairings zero.
    pub fn symplectic_basis(&self) -> Vec<(FVec, FVec)> {
        let f = self.field;
        let mut pool: Vec<FVec> = (0..self.dim).map(FVec::unit).collect();
        let mut out = Vec::new();
        while let Some(e) = pool.pop() {
            let Some(k) = pool.iter().position(|v| self.b(&e, v) != 0) else {
                unreachable!("nondegenerate form has a partner for every vector")
            };
            let g = pool.swap_remove(k);
            let g = g.scale(f.inv(self.b(&e, &g)).unwrap(), &f);
            pool = pool
                .into_iter()
                .map(|v| {
                    let v = v.axpy(self.b(&v, &g), &e, &f);
                    v.axpy(self.b(&v, &e), &g, &f)
                })
                .filter(|v| !v.is_zero())
                .collect();
            out.push((e, g));
        }
        out
    }

    /// Arf invariant, in F_2 via the absolute trace.
    pub fn arf(&self) -> u8 {
        let f = self.field;
        let s = self.symplectic_basis().iter().fold(0u8, |acc, (e, g)| acc ^ f.mul(self.q(e), self.q(g)));
        f.trace(s)
    }

    /// A Q-Lagrangian, when the Arf invariant vanishes.
    ///
    /// Splits the space into symplectic planes. Each hyperbolic plane gives an
    /// isotropic vector; anisotropic planes are paired, and an isometry
    /// `σ: P → P'` gives the Lagrangian `{p + σp}` of `P ⊕ P'`.
    pub fn standard_lagrangian(&self) -> Option<Subspace> {
        let f = self.field;
        let mut w = Subspace::zero(f, self.dim);
        let mut anisotropic = Vec::new();
        for (e, g) in self.symplectic_basis() {
            match self.plane_vectors(&e, &g).find(|v| self.q(v) == 0) {
                Some(v) => {
                    w.insert(v);
                }
                None => anisotropic.push((e, g)),
            }
        }
        if anisotropic.len() % 2 == 1 {
            return None;
        }
        for pair in anisotropic.chunks(2) {
            let ((e1, f1), (e2, f2)) = (pair[0], pair[1]);
            let (alpha, beta) = (self.q(&e1), self.q(&f1));
            let u = self.plane_vectors(&e2, &f2).find(|v| self.q(v) == alpha)?;
            let partner = if self.b(&u, &e2) != 0 { e2 } else { f2 };
            let v0 = partner.scale(f.inv(self.b(&u, &partner)).unwrap(), &f);
            let c = f.elements().find(|&c| self.q(&v0.axpy(c, &u, &f)) == beta)?;
            w.insert(e1.add(&u));
            w.insert(f1.add(&v0.axpy(c, &u, &f)));
        }
        debug_assert!(self.is_q_lagrangian(&w));
        Some(w)
    }

    fn plane_vectors<'a>(&'a self, e: &'a FVec, g: &'a FVec) -> impl Iterator<Item = FVec> + 'a {
        let f = self.field;
        f.elements()
            .flat_map(move |a| f.elements().map(move |b| e.scale(a, &f).axpy(b, g, &f)))
            .filter(|v| !v.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_plane_lines() {
        let h = QuadSpace::hyperbolic(Gf2k::F2, 1);
        assert_eq!(h.lines().len(), 3);
        assert!(h.lines().iter().all(|l| h.is_b_isotropic(l)));
        assert_eq!(h.q_isotropic_lines().len(), 2);
        assert_eq!(h.arf(), 0);
    }

    #[test]
    fn anisotropic_plane_has_no_isotropic_line() {
        for d in 1..=4 {
            let f = Gf2k::new(d).unwrap();
            let a = QuadSpace::anisotropic_plane(f);
            assert!(a.q_isotropic_lines().is_empty());
            assert_eq!(a.arf(), 1);
            assert_eq!(a.orthogonal_sum(&a).arf(), 0);
        }
    }

    #[test]
    fn q_polarizes_to_b() {
        let f = Gf2k::new(2).unwrap();
        let s = QuadSpace::hyperbolic(f, 1).orthogonal_sum(&QuadSpace::anisotropic_plane(f));
        let all = Subspace::full(f, 4).elements();
        for x in all.iter().step_by(7) {
            for y in all.iter().step_by(5) {
                assert_eq!(s.b(x, y), s.q(&x.add(y)) ^ s.q(x) ^ s.q(y));
            }
        }
    }

    #[test]
    fn standard_lagrangian_exists_iff_arf_zero() {
        let f = Gf2k::F2;
        let a = QuadSpace::anisotropic_plane(f);
        let h = QuadSpace::hyperbolic(f, 2);
        assert!(h.standard_lagrangian().is_some_and(|l| h.is_q_lagrangian(&l)));
        assert!(a.orthogonal_sum(&h).standard_lagrangian().is_none());
        let aa = a.orthogonal_sum(&a);
        assert!(aa.standard_lagrangian().is_some_and(|l| aa.is_q_lagrangian(&l)));
    }
}
