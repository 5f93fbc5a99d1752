//! Curve data checked against tables produced independently by PARI/GP
//! (`tools/gen_curve_oracle.py`).

use lrlab_core::arith;
use lrlab_core::curves::{Kodaira, ReductionKind, WeierstrassCurve};
use serde::Deserialize;

#[derive(Deserialize)]
struct Local {
    p: u64,
    f: u32,
    kodaira: String,
    tamagawa: u32,
    kind: String,
}

#[derive(Deserialize)]
struct Entry {
    label: String,
    ainvs: [i64; 5],
    conductor: u128,
    discriminant: String,
    local: Vec<Local>,
    ap: std::collections::BTreeMap<String, i64>,
}

fn load() -> Vec<(WeierstrassCurve, Entry)> {
    let raw = include_str!("data/curves.json");
    let entries: Vec<Entry> = serde_json::from_str(raw).unwrap();
    entries
        .into_iter()
        .map(|e| (WeierstrassCurve::new(e.ainvs).unwrap().with_label(e.label.clone()), e))
        .collect()
}

#[test]
fn discriminants_match() {
    for (e, entry) in load() {
        assert_eq!(e.discriminant().to_string(), entry.discriminant, "{}", entry.label);
    }
}

#[test]
fn conductors_match() {
    for (e, entry) in load() {
        let c = e.conductor().unwrap();
        assert_eq!(c.value, entry.conductor, "{}", entry.label);
        let product: u128 = c.local.iter().map(|r| (r.prime as u128).pow(r.conductor_exponent)).product();
        assert_eq!(product, entry.conductor);
    }
}

#[test]
fn local_data_matches() {
    for (e, entry) in load() {
        for l in &entry.local {
            let r = e.reduction_type(l.p).unwrap();
            assert_eq!(r.conductor_exponent, l.f, "{} at {}", entry.label, l.p);
            assert_eq!(r.kodaira.to_string(), l.kodaira, "{} at {}", entry.label, l.p);
            assert_eq!(r.tamagawa, l.tamagawa, "{} at {}", entry.label, l.p);
            let kind_ok = match l.kind.as_str() {
                "Good" => r.kind == ReductionKind::Good,
                "Multiplicative" => r.kind.is_multiplicative(),
                _ => r.kind == ReductionKind::Additive,
            };
            assert!(kind_ok, "{} at {}: {:?}", entry.label, l.p, r.kind);
            if r.kind.is_multiplicative() {
                assert_eq!(r.component_group_order, r.min_disc_valuation);
            }
        }
    }
}

#[test]
fn split_multiplicative_iff_minus_c6_square() {
    for (e, entry) in load() {
        let inv = e.invariants().unwrap();
        for l in entry.local.iter().filter(|l| l.p > 2 && l.f == 1) {
            let r = e.reduction_type(l.p).unwrap();
            let split = arith::legendre(-inv.c6, l.p).unwrap() == 1;
            assert_eq!(split, r.kind == ReductionKind::MultiplicativeSplit, "{} at {}", entry.label, l.p);
            // the sign of a_p at a multiplicative prime records the split type
            if let Some(&ap) = entry.ap.get(&l.p.to_string()) {
                assert_eq!(ap, if split { 1 } else { -1 });
            }
        }
    }
}

#[test]
fn ap_matches_reference() {
    for (e, entry) in load() {
        for (p, &ap) in &entry.ap {
            let p: u64 = p.parse().unwrap();
            assert_eq!(e.hecke_eigenvalue(p).unwrap(), ap, "{} at {p}", entry.label);
        }
    }
}

#[test]
fn counting_paths_agree_below_1000() {
    let curves = load();
    assert!(curves.len() >= 20);
    for (e, entry) in curves.iter().take(20) {
        let d = e.discriminant();
        for p in arith::primes_up_to(1000) {
            if d % p as i128 == 0 {
                continue;
            }
            let n = e.count_points_enumerate(p);
            assert_eq!(n, e.count_points_legendre(p).unwrap(), "{} at {p}", entry.label);
            assert_eq!(n, e.count_points(p).unwrap(), "{} at {p}", entry.label);
            let ap = p as i64 + 1 - n as i64;
            assert!((ap * ap) as u64 <= 4 * p, "Hasse bound fails for {} at {p}", entry.label);
        }
    }
}

#[test]
fn component_group_table() {
    assert_eq!(Kodaira::In(5).component_group_order(), 5);
    assert_eq!(Kodaira::I0Star.component_group_order(), 4);
    assert_eq!(Kodaira::InStar(3).component_group_order(), 4);
    assert_eq!(Kodaira::IVStar.component_group_order(), 3);
    assert_eq!(Kodaira::IIIStar.component_group_order(), 2);
    assert_eq!(Kodaira::IIStar.component_group_order(), 1);
}

#[test]
fn hasse_bound_large_primes() {
    let e = WeierstrassCurve::new([0, -1, 1, -10, -20]).unwrap();
    for p in arith::primes_up_to(200_000).into_iter().rev().take(50) {
        let ap = e.ap(p).unwrap();
        assert!(((ap * ap) as u64) <= 4 * p);
    }
}
