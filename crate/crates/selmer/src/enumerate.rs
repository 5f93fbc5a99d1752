//! Exhaustive check of the local-condition dimension statements over F_2.
//!
//! For every total dimension up to the bound, every split into places, every
//! choice of nondegenerate form per place (hyperbolic or Arf 1), every global
//! image that is a Lagrangian for the bilinear form, and every tuple of
//! self-dual conditions, each place `w` and each alternative condition `L'_w`
//! is tested against:
//!
//! - `dim(G∩R) − dim(G∩S) = ½ dim H_w`;
//! - `|dim Sel' − dim Sel| ≤ ½ dim H_w`;
//! - for `dim H_w = 2` with nonzero residue, `dim Sel' = dim Sel − 1`;
//! - when `G`, every `L_v` (`v ≠ w`) and both lines at `w` are Q-isotropic,
//!   the quadratic dichotomy: drop by one iff the residue is nonzero, else rise by one.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::field::Gf2k;
use crate::linalg::{FVec, Subspace};
use crate::quad::QuadSpace;
use crate::SelmerError;

pub const MAX_ENUMERATION_DIM: usize = 8;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DimSummary {
    pub total_dim: usize,
    pub configurations: u64,
    pub systems: u64,
    /// Lagrangians of the hyperbolic space of this dimension.
    pub b_lagrangians: usize,
    pub q_lagrangians: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationReport {
    pub max_total_dim: usize,
    pub configurations: u64,
    pub systems: u64,
    pub gw_checks: u64,
    pub bound_checks: u64,
    pub lowering_checks: u64,
    pub lowering_inapplicable: u64,
    pub dichotomy_checks: u64,
    pub dichotomy_raises: u64,
    pub dichotomy_drops: u64,
    pub counterexamples: Vec<String>,
    pub per_dim: Vec<DimSummary>,
}

impl EnumerationReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    fn merge(mut self, o: EnumerationReport) -> EnumerationReport {
        self.configurations += o.configurations;
        self.systems += o.systems;
        self.gw_checks += o.gw_checks;
        self.bound_checks += o.bound_checks;
        self.lowering_checks += o.lowering_checks;
        self.lowering_inapplicable += o.lowering_inapplicable;
        self.dichotomy_checks += o.dichotomy_checks;
        self.dichotomy_raises += o.dichotomy_raises;
        self.dichotomy_drops += o.dichotomy_drops;
        self.counterexamples.extend(o.counterexamples);
        self
    }
}

/// All totally isotropic subspaces of half dimension, for `B` or for `Q`.
pub fn lagrangians(space: &QuadSpace, quadratic: bool) -> Vec<Subspace> {
    let f = space.field;
    let n = space.dim();
    let mut level: HashSet<Subspace> = HashSet::from([Subspace::zero(f, n)]);
    for _ in 0..n / 2 {
        let mut next = HashSet::new();
        for w in &level {
            for v in space.perp(w).elements() {
                if w.contains(&v) || (quadratic && space.q(&v) != 0) {
                    continue;
                }
                let mut w2 = w.clone();
                w2.insert(v);
                next.insert(w2);
            }
        }
        level = next;
    }
    let mut out: Vec<Subspace> = level.into_iter().collect();
    out.sort_by_key(|s| s.basis().to_vec());
    out
}

fn place_space(dim: usize, arf: u8) -> QuadSpace {
    let f = Gf2k::F2;
    if arf == 0 {
        QuadSpace::hyperbolic(f, dim / 2)
    } else {
        QuadSpace::hyperbolic(f, dim / 2 - 1).orthogonal_sum(&QuadSpace::anisotropic_plane(f))
    }
}

/// Partitions of `n` into positive even parts, largest first.
fn even_partitions(n: usize, max_part: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut part = max_part.min(n);
    while part >= 2 {
        for mut rest in even_partitions(n - part, part) {
            rest.insert(0, part);
            out.push(rest);
        }
        part -= 2;
    }
    out
}

struct LocalData {
    dim: usize,
    offset: usize,
    conditions: Vec<(Subspace, bool)>,
    full: Subspace,
    zero: Subspace,
}

struct Configuration {
    label: String,
    places: Vec<LocalData>,
    ambient: QuadSpace,
}

fn configuration(dims: &[usize], arfs: &[u8]) -> Configuration {
    let f = Gf2k::F2;
    let mut ambient = QuadSpace::hyperbolic(f, 0);
    let mut places = Vec::new();
    for (&d, &a) in dims.iter().zip(arfs) {
        let space = place_space(d, a);
        let conditions = lagrangians(&space, false).into_iter().map(|l| {
            let q = space.is_q_isotropic(&l);
            (l, q)
        });
        places.push(LocalData {
            dim: d,
            offset: ambient.dim(),
            conditions: conditions.collect(),
            full: Subspace::full(f, d),
            zero: Subspace::zero(f, d),
        });
        ambient = ambient.orthogonal_sum(&space);
    }
    let label = dims.iter().zip(arfs).map(|(d, a)| format!("{d}{}", if *a == 0 { "h" } else { "a" })).collect::<Vec<_>>().join("+");
    Configuration { label, places, ambient }
}

fn direct_sum(cfg: &Configuration, locals: &[&Subspace]) -> Subspace {
    let mut out = Subspace::zero(Gf2k::F2, cfg.ambient.dim());
    for (p, l) in cfg.places.iter().zip(locals) {
        for v in l.basis() {
            out.insert(v.shift(p.offset));
        }
    }
    out
}

fn check_global(cfg: &Configuration, g: &Subspace) -> EnumerationReport {
    let mut rep = EnumerationReport::default();
    let g_quadratic = cfg.ambient.is_q_isotropic(g);
    let k = cfg.places.len();
    let mut choice = vec![0usize; k];
    loop {
        rep.systems += 1;
        let locals: Vec<&Subspace> = cfg.places.iter().zip(&choice).map(|(p, &c)| &p.conditions[c].0).collect();
        let sel = g.intersect(&direct_sum(cfg, &locals));
        let dim = sel.dim();
        let fail = |rep: &mut EnumerationReport, what: &str, w: usize| {
            let tuple: Vec<String> = locals.iter().map(|l| format!("{:?}", l.basis().iter().map(|v| v.planes[0]).collect::<Vec<_>>())).collect();
            let gb: Vec<u64> = g.basis().iter().map(|v| v.planes[0]).collect();
            rep.counterexamples.push(format!("{} G={gb:?} L={} w={w}: {what}", cfg.label, tuple.join(",")));
        };
        for (w, p) in cfg.places.iter().enumerate() {
            let mut alt = locals.clone();
            alt[w] = &p.full;
            let relaxed = g.intersect(&direct_sum(cfg, &alt)).dim();
            alt[w] = &p.zero;
            let strict = g.intersect(&direct_sum(cfg, &alt)).dim();
            rep.gw_checks += 1;
            if relaxed - strict != p.dim / 2 {
                fail(&mut rep, &format!("relaxed - strict = {} ≠ {}", relaxed - strict, p.dim / 2), w);
            }
            let residue_zero = sel.project(p.offset, p.dim).dim() == 0;
            let others_quadratic = cfg.places.iter().zip(&choice).enumerate().all(|(v, (q, &c))| v == w || q.conditions[c].1);
            let (current, current_q) = &p.conditions[choice[w]];
            for (l2, l2_q) in &p.conditions {
                if l2 == current {
                    continue;
                }
                alt[w] = l2;
                let dim2 = g.intersect(&direct_sum(cfg, &alt)).dim();
                rep.bound_checks += 1;
                if dim.abs_diff(dim2) > p.dim / 2 {
                    fail(&mut rep, &format!("dim {dim} -> {dim2} exceeds half of {}", p.dim), w);
                }
                if p.dim != 2 {
                    continue;
                }
                if residue_zero {
                    rep.lowering_inapplicable += 1;
                } else {
                    rep.lowering_checks += 1;
                    if dim2 + 1 != dim {
                        fail(&mut rep, &format!("nonzero residue but dim {dim} -> {dim2}"), w);
                    }
                }
                if g_quadratic && others_quadratic && *current_q && *l2_q {
                    rep.dichotomy_checks += 1;
                    let expect = if residue_zero { dim + 1 } else { dim - 1 };
                    if dim2 != expect {
                        fail(&mut rep, &format!("quadratic dichotomy: residue zero = {residue_zero}, dim {dim} -> {dim2}"), w);
                    } else if residue_zero {
                        rep.dichotomy_raises += 1;
                    } else {
                        rep.dichotomy_drops += 1;
                    }
                }
            }
        }
        // next tuple
        let mut i = 0;
        while i < k {
            choice[i] += 1;
            if choice[i] < cfg.places[i].conditions.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    rep
}

/// Runs every check on every system of total dimension at most `max_total_dim`.
pub fn enumerate_verify(max_total_dim: usize) -> Result<EnumerationReport, SelmerError> {
    if max_total_dim > MAX_ENUMERATION_DIM {
        return Err(SelmerError::BoundExceeded { requested: max_total_dim, max: MAX_ENUMERATION_DIM });
    }
    let mut report = EnumerationReport { max_total_dim, ..Default::default() };
    for n in (0..=max_total_dim).step_by(2) {
        let mut summary = DimSummary { total_dim: n, ..Default::default() };
        let hyperbolic = QuadSpace::hyperbolic(Gf2k::F2, n / 2);
        summary.b_lagrangians = lagrangians(&hyperbolic, false).len();
        summary.q_lagrangians = lagrangians(&hyperbolic, true).len();
        for dims in even_partitions(n, n) {
            for mask in 0u32..(1 << dims.len()) {
                let arfs: Vec<u8> = (0..dims.len()).map(|i| ((mask >> i) & 1) as u8).collect();
                let cfg = configuration(&dims, &arfs);
                let globals = lagrangians(&cfg.ambient, false);
                let part = globals
                    .par_iter()
                    .map(|g| check_global(&cfg, g))
                    .reduce(EnumerationReport::default, EnumerationReport::merge);
                summary.configurations += 1;
                summary.systems += part.systems;
                report = report.merge(EnumerationReport { configurations: 1, ..part });
            }
        }
        report.per_dim.push(summary);
    }
    report.counterexamples.sort();
    Ok(report)
}

/// Vector over F_2 as a bitmask; handy for tests and reports.
pub fn bits(v: &FVec) -> u64 {
    v.planes[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lagrangian_counts() {
        let b: Vec<usize> = (1..=3).map(|m| lagrangians(&QuadSpace::hyperbolic(Gf2k::F2, m), false).len()).collect();
        let q: Vec<usize> = (1..=3).map(|m| lagrangians(&QuadSpace::hyperbolic(Gf2k::F2, m), true).len()).collect();
        // ∏(2^i + 1) and ∏(2^(i-1) + 1)
        assert_eq!(b, vec![3, 15, 135]);
        assert_eq!(q, vec![2, 6, 30]);
    }

    #[test]
    fn partitions() {
        assert_eq!(even_partitions(6, 6), vec![vec![6], vec![4, 2], vec![2, 2, 2]]);
        assert_eq!(even_partitions(0, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn small_enumeration_is_clean() {
        let r = enumerate_verify(4).unwrap();
        assert!(r.passed(), "{:?}", r.counterexamples);
        assert!(r.dichotomy_raises > 0 && r.dichotomy_drops > 0);
        assert!(enumerate_verify(10).is_err());
    }
}
