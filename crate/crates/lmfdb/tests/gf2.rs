use lrlab_lmfdb::audit::norm;
use lrlab_lmfdb::gf2poly::{factor, Gf2Poly};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// Irreducibility by trial division over all polynomials of half the degree.
fn irreducible_oracle(f: u64) -> bool {
    let d = 63 - f.leading_zeros();
    if d == 0 {
        return false;
    }
    for g in 2u64..(1 << (d / 2 + 1)) {
        let dg = 63 - g.leading_zeros();
        if dg == 0 || dg > d / 2 {
            continue;
        }
        if Gf2Poly::from_bits(f).rem(Gf2Poly::from_bits(g)).is_zero() {
            return false;
        }
    }
    true
}

#[test]
fn irreducible_counts_by_degree() {
    // number of monic irreducibles of degree 1..=10 over F_2
    let expected = [2, 1, 2, 3, 6, 9, 18, 30, 56, 99];
    for (d, &n) in (1..=10).zip(&expected) {
        let count = ((1u64 << d)..(1u64 << (d + 1))).filter(|&f| Gf2Poly::from_bits(f).is_irreducible()).count();
        assert_eq!(count, n, "degree {d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn factorization_reconstructs(f in 2u64..(1 << 20)) {
        let f = Gf2Poly::from_bits(f);
        let parts = factor(f);
        let mut prod = Gf2Poly::ONE;
        for (g, e) in &parts {
            prop_assert!(irreducible_oracle(g.bits()), "{g} is not irreducible");
            for _ in 0..*e {
                prod = prod.mul(*g).unwrap();
            }
        }
        prop_assert_eq!(prod, f);
        let distinct: std::collections::BTreeSet<_> = parts.iter().map(|p| p.0).collect();
        prop_assert_eq!(distinct.len(), parts.len());
    }

    #[test]
    fn irreducibility_matches_trial_division(f in 2u64..(1 << 14)) {
        prop_assert_eq!(Gf2Poly::from_bits(f).is_irreducible(), irreducible_oracle(f));
    }

    #[test]
    fn quadratic_norm_formula(a in -50i64..50, b in -50i64..50, c in -20i64..20, d in -20i64..20) {
        // Q[x]/(x^2 + c x + d): N(a + b x) = a^2 - a b c + b^2 d
        let poly = [BigInt::from(d), BigInt::from(c), BigInt::from(1)];
        let coords = [BigRational::from_integer(a.into()), BigRational::from_integer(b.into())];
        let expected = a * a - a * b * c + b * b * d;
        prop_assert_eq!(norm(&poly, &coords), BigRational::from_integer(expected.into()));
    }
}

#[test]
fn cubic_norm_is_multiplicative() {
    // x^3 - x - 1; compare N(u) N(v) against N(uv) computed by hand-reduction
    let poly = [BigInt::from(-1), BigInt::from(-1), BigInt::from(0), BigInt::from(1)];
    let r = |v: [i64; 3]| v.map(|x| BigRational::from_integer(x.into()));
    let u = [2, -1, 3];
    let v = [1, 4, -2];
    // product in Q[x]/(x^3 - x - 1), x^3 = x + 1, x^4 = x^2 + x
    let mut raw = [0i64; 5];
    for i in 0..3 {
        for j in 0..3 {
            raw[i + j] += u[i] * v[j];
        }
    }
    let uv = [raw[0] + raw[3], raw[1] + raw[3] + raw[4], raw[2] + raw[4]];
    assert_eq!(norm(&poly, &r(u)) * norm(&poly, &r(v)), norm(&poly, &r(uv)));
}
