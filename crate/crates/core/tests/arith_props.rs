use lrlab_core::arith::{self, PrimePoly, RootProfile};
use proptest::prelude::*;

fn small_primes() -> Vec<u64> {
    arith::primes_up_to(97).into_iter().filter(|&p| p > 2).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn legendre_is_multiplicative(a in -1_000_000i128..1_000_000, b in -1_000_000i128..1_000_000, pi in 0usize..24) {
        let p = small_primes()[pi];
        let shift = |x: i128| if x % p as i128 == 0 { x + 1 } else { x };
        let (a, b) = (shift(a), shift(b));
        let lhs = arith::legendre(a, p).unwrap() * arith::legendre(b, p).unwrap();
        prop_assert_eq!(lhs, arith::legendre(a * b, p).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn root_profile_matches_brute_force(c0 in 0u64..97, c1 in 0u64..97, c2 in 0u64..97, pi in 0usize..24) {
        let p = small_primes()[pi];
        let f = PrimePoly::new(p, &[c0 as i128, c1 as i128, c2 as i128, 1]).unwrap();
        let roots: Vec<u64> = (0..p).filter(|&x| f.eval(x) == 0).collect();
        match arith::root_profile(&f) {
            Err(arith::ArithError::Inseparable(_)) => {
                prop_assert!(f.gcd(&f.derivative()).degree() > Some(0));
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
            Ok(RootProfile::ThreeRoots) => prop_assert_eq!(roots.len(), 3),
            Ok(RootProfile::Irreducible) => prop_assert_eq!(roots.len(), 0),
            Ok(RootProfile::OneRoot { root, cofactor }) => {
                prop_assert_eq!(roots, vec![root]);
                let lin = PrimePoly::new(p, &[-(root as i128), 1]).unwrap();
                prop_assert_eq!(lin.mul(&cofactor), f.clone());
                prop_assert_eq!(cofactor.coeff(2), 1);
            }
        }
        if let (Ok(a), Ok(b)) = (arith::root_profile_by_gcd(&f), arith::root_profile_by_evaluation(&f)) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn factorization_reconstructs(n in 1i128..(1i128 << 62)) {
        let f = arith::factor(n).unwrap();
        prop_assert_eq!(f.value(), n);
        for (p, _) in f.factors {
            prop_assert!(arith::is_prime(p));
        }
    }
}

#[test]
fn squarefree_part_exhaustive_to_a_million() {
    const N: usize = 1_000_000;
    // sieve oracle: strip p^2 factors from every n
    let mut sf: Vec<i128> = (0..=N as i128).collect();
    for p in arith::primes_up_to(1000) {
        let p2 = (p * p) as usize;
        for m in (p2..=N).step_by(p2) {
            while sf[m] % p2 as i128 == 0 {
                sf[m] /= p2 as i128;
            }
        }
    }
    for n in 1..=N {
        let m = n as i128;
        assert_eq!(arith::squarefree_part(m).unwrap(), sf[n], "{m}");
        assert_eq!(arith::squarefree_part(-m).unwrap(), -sf[n], "{}", -m);
        let sq = m / sf[n];
        let r = (sq as f64).sqrt().round() as i128;
        assert_eq!(r * r, sq);
    }
}
