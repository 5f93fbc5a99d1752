//! Modular arithmetic, quadratic symbols, integer factorization and
//! polynomials over prime fields.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("modulus {0} is not an odd prime >= 3")]
    BadModulus(u64),
    #[error("cannot take the squarefree part of zero")]
    Zero,
    #[error("could not factor cofactor {cofactor} within the configured bound; supply a hint factorization")]
    FactorizationBound { cofactor: u128 },
    #[error("polynomial is inseparable mod {0} (ramified prime, excluded by q not dividing 2N*disc)")]
    Inseparable(u64),
    #[error("expected a polynomial of degree {expected}, got degree {got:?}")]
    Degree { expected: usize, got: Option<usize> },
}

/// `a^e mod m` for `m < 2^64`.
pub fn pow_mod(a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut base = (a % m) as u128;
    let mut acc: u128 = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Reduces a signed integer into `[0, m)`.
#[inline]
pub fn reduce(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Deterministic Miller-Rabin for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `<= n` by a sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Legendre symbol `(a/p)`.
///
/// Computed by quadratic reciprocity; primality of `p` is the caller's
/// responsibility and is only checked in debug builds.
pub fn legendre(a: i128, p: u64) -> Result<i8, ArithError> {
    if p < 3 || p % 2 == 0 {
        return Err(ArithError::BadModulus(p));
    }
    debug_assert!(is_prime(p), "legendre called with composite modulus {p}");
    Ok(jacobi(reduce(a, p), p))
}

/// Jacobi symbol `(a/n)` for odd `n`, `0 <= a < n`.
pub fn jacobi(mut a: u64, mut n: u64) -> i8 {
    let mut t = 1i8;
    while a != 0 {
        let z = a.trailing_zeros();
        a >>= z;
        if z % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            t = -t;
        }
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        (a, n) = (n % a, a);
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(n: i128, p: u64) -> u32 {
    assert!(n != 0, "valuation of zero");
    assert!(p >= 2);
    let p = p as i128;
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorConfig {
    /// Trial division runs over all primes up to this bound.
    pub trial_bound: u64,
    /// Maximum Pollard-rho iterations per split attempt.
    pub rho_iterations: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig { trial_bound: 1_000_000, rho_iterations: 1 << 22 }
    }
}

/// A factorization `sign * prod p^e` with primes in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    pub negative: bool,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.factors.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    pub fn value(&self) -> i128 {
        let mut v: i128 = 1;
        for &(p, e) in &self.factors {
            v *= (p as i128).pow(e);
        }
        if self.negative {
            -v
        } else {
            v
        }
    }

    fn push(&mut self, p: u64, e: u32) {
        if e == 0 {
            return;
        }
        match self.factors.iter_mut().find(|(q, _)| *q == p) {
            Some(slot) => slot.1 += e,
            None => self.factors.push((p, e)),
        }
    }
}

/// Factors a nonzero integer with the default configuration.
pub fn factor(n: i128) -> Result<Factorization, ArithError> {
    factor_with(n, &[], &FactorConfig::default())
}

/// Factors `n`, first dividing out any `hint` primes (for example the primes
/// of a known conductor), then trial division, then Pollard rho on the 64-bit
/// cofactor.
pub fn factor_with(n: i128, hint: &[u64], cfg: &FactorConfig) -> Result<Factorization, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let mut out = Factorization { negative: n < 0, factors: Vec::new() };
    let mut m = n.unsigned_abs();
    for &p in hint {
        if p < 2 {
            continue;
        }
        let mut e = 0;
        while m % p as u128 == 0 {
            m /= p as u128;
            e += 1;
        }
        out.push(p, e);
    }
    let mut d = 2u64;
    while (d as u128) * (d as u128) <= m && d <= cfg.trial_bound {
        if m % d as u128 == 0 {
            let mut e = 0;
            while m % d as u128 == 0 {
                m /= d as u128;
                e += 1;
            }
            out.push(d, e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        if (d as u128) * (d as u128) > m {
            // every prime below d has been removed, so m is prime
            out.push(u64::try_from(m).map_err(|_| ArithError::FactorizationBound { cofactor: m })?, 1);
        } else {
            let m64 = u64::try_from(m).map_err(|_| ArithError::FactorizationBound { cofactor: m })?;
            let mut stack = vec![m64];
            while let Some(x) = stack.pop() {
                if x == 1 {
                    continue;
                }
                if is_prime(x) {
                    out.push(x, 1);
                    continue;
                }
                let f = pollard_brent(x, cfg.rho_iterations)
                    .ok_or(ArithError::FactorizationBound { cofactor: x as u128 })?;
                stack.push(f);
                stack.push(x / f);
            }
        }
    }
    out.factors.sort_unstable();
    Ok(out)
}

/// Brent's variant of Pollard rho; returns a nontrivial factor of composite `n`.
fn pollard_brent(n: u64, max_iter: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        let mut spent = 0u64;
        while g == 1 && spent < max_iter {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let lim = 128.min(r - k);
                for _ in 0..lim {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u128(q as u128, n as u128) as u64;
                k += lim;
            }
            spent += r;
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u128(x.abs_diff(ys) as u128, n as u128) as u64;
                if g > 1 {
                    break;
                }
            }
        }
        if g > 1 && g < n {
            return Some(g);
        }
    }
    None
}

/// The unique squarefree `d` with `n / d` a positive square.
pub fn squarefree_part(n: i128) -> Result<i128, ArithError> {
    squarefree_part_with(n, &[], &FactorConfig::default())
}

pub fn squarefree_part_with(n: i128, hint: &[u64], cfg: &FactorConfig) -> Result<i128, ArithError> {
    let f = factor_with(n, hint, cfg)?;
    Ok(squarefree_of(&f))
}

pub fn squarefree_of(f: &Factorization) -> i128 {
    let mut d: i128 = 1;
    for &(p, e) in &f.factors {
        if e % 2 == 1 {
            d *= p as i128;
        }
    }
    if f.negative {
        -d
    } else {
        d
    }
}

/// Polynomial over `F_p`, coefficients stored low degree first.
///
/// The zero polynomial is the empty coefficient vector; it appears only as an
/// intermediate value (remainders, gcd inputs).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimePoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl fmt::Debug for PrimePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimePoly({} mod {})", self, self.modulus)
    }
}

impl fmt::Display for PrimePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl PrimePoly {
    /// Builds a polynomial from signed coefficients (low degree first),
    /// reducing them mod `p`.
    pub fn new(p: u64, coeffs: &[i128]) -> Result<Self, ArithError> {
        if p < 3 || p % 2 == 0 {
            return Err(ArithError::BadModulus(p));
        }
        Ok(Self::from_residues(p, coeffs.iter().map(|&c| reduce(c, p)).collect()))
    }

    fn from_residues(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PrimePoly { modulus: p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        PrimePoly { modulus: p, coeffs: Vec::new() }
    }

    pub fn x(p: u64) -> Self {
        PrimePoly { modulus: p, coeffs: vec![0, 1] }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.modulus;
        let x = x % p;
        self.coeffs.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| (self.coeff(i) + other.coeff(i)) % p).collect();
        Self::from_residues(p, v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| (self.coeff(i) + p - other.coeff(i)) % p).collect();
        Self::from_residues(p, v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.modulus;
        if self.is_zero() || other.is_zero() {
            return Self::zero(p);
        }
        let mut v = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = (v[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::from_residues(p, v)
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.modulus;
        Self::from_residues(p, self.coeffs.iter().map(|&a| mul_mod(a, c, p)).collect())
    }

    /// Division with remainder. Panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let p = self.modulus;
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = inv_mod(d.coeffs[dd], p).expect("prime modulus");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mul_mod(r[i + dd], lead_inv, p);
            q[i] = c;
            if c != 0 {
                for (j, &dj) in d.coeffs.iter().enumerate() {
                    r[i + j] = (r[i + j] + p - mul_mod(c, dj, p)) % p;
                }
            }
        }
        r.truncate(dd);
        (Self::from_residues(p, q), Self::from_residues(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&l) => self.scale(inv_mod(l, self.modulus).expect("prime modulus")),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.modulus;
        let v = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % p, p)).collect();
        Self::from_residues(p, v)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let p = self.modulus;
        let mut base = self.rem(m);
        let mut acc = Self::from_residues(p, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
}

/// Factorization pattern of a separable cubic over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootProfile {
    ThreeRoots,
    /// The unique root and the monic irreducible quadratic cofactor.
    OneRoot { root: u64, cofactor: PrimePoly },
    Irreducible,
}

impl RootProfile {
    pub fn root_count(&self) -> usize {
        match self {
            RootProfile::ThreeRoots => 3,
            RootProfile::OneRoot { .. } => 1,
            RootProfile::Irreducible => 0,
        }
    }
}

/// Below this modulus roots are found by evaluating at every residue.
pub const EVALUATION_CUTOFF: u64 = 1 << 16;

/// Classifies a separable cubic over `F_p` by its number of roots.
pub fn root_profile(f: &PrimePoly) -> Result<RootProfile, ArithError> {
    if f.modulus() < EVALUATION_CUTOFF {
        root_profile_by_evaluation(f)
    } else {
        root_profile_by_gcd(f)
    }
}

fn check_cubic(f: &PrimePoly) -> Result<PrimePoly, ArithError> {
    if f.degree() != Some(3) {
        return Err(ArithError::Degree { expected: 3, got: f.degree() });
    }
    let g = f.monic();
    if g.gcd(&g.derivative()).degree() != Some(0) {
        return Err(ArithError::Inseparable(f.modulus()));
    }
    Ok(g)
}

fn one_root(f: &PrimePoly, root: u64) -> RootProfile {
    let p = f.modulus();
    let linear = PrimePoly::from_residues(p, vec![(p - root) % p, 1]);
    let (q, r) = f.div_rem(&linear);
    debug_assert!(r.is_zero());
    RootProfile::OneRoot { root, cofactor: q }
}

/// Root profile by evaluating `f` at every element of `F_p`.
pub fn root_profile_by_evaluation(f: &PrimePoly) -> Result<RootProfile, ArithError> {
    let g = check_cubic(f)?;
    let p = g.modulus();
    let (c0, c1, c2) = (g.coeff(0), g.coeff(1), g.coeff(2));
    let mut roots = [0u64; 3];
    let mut n = 0;
    for x in 0..p {
        let v = (mul_mod((mul_mod((x + c2) % p, x, p) + c1) % p, x, p) + c0) % p;
        if v == 0 {
            roots[n] = x;
            n += 1;
            if n == 3 {
                break;
            }
        }
    }
    Ok(match n {
        3 => RootProfile::ThreeRoots,
        1 => one_root(&g, roots[0]),
        0 => RootProfile::Irreducible,
        _ => unreachable!("separable cubic with exactly two roots"),
    })
}

/// Root profile via `gcd(x^p - x, f)`.
pub fn root_profile_by_gcd(f: &PrimePoly) -> Result<RootProfile, ArithError> {
    let g = check_cubic(f)?;
    let p = g.modulus();
    let x = PrimePoly::x(p);
    let xp = x.pow_mod(p, &g);
    let h = xp.sub(&x).gcd(&g);
    Ok(match h.degree() {
        Some(3) => RootProfile::ThreeRoots,
        Some(1) => one_root(&g, (p - h.coeff(0)) % p),
        Some(0) => RootProfile::Irreducible,
        d => unreachable!("separable cubic with {d:?} roots"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_legendre(a: i128, p: u64) -> i8 {
        let a = reduce(a, p);
        if a == 0 {
            return 0;
        }
        if (1..p).any(|y| mul_mod(y, y, p) == a) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(1, 7), Ok(1));
        assert_eq!(legendre(5, 7), Ok(-1));
        assert_eq!(legendre(7, 3), Ok(1));
        assert_eq!(legendre(14, 7), Ok(0));
        assert_eq!(legendre(-161051, 7), Ok(-1));
        assert_eq!(legendre(3, 2), Err(ArithError::BadModulus(2)));
        assert_eq!(legendre(3, 1), Err(ArithError::BadModulus(1)));
    }

    #[test]
    fn legendre_matches_enumerated_squares() {
        for p in primes_up_to(200).into_iter().skip(1) {
            for a in -250i128..250 {
                assert_eq!(legendre(a, p).unwrap(), brute_legendre(a, p), "({a}/{p})");
            }
        }
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(4), Ok(1));
        assert_eq!(squarefree_part(12), Ok(3));
        assert_eq!(squarefree_part(-161051), Ok(-11));
        assert_eq!(squarefree_part(-1), Ok(-1));
        assert_eq!(squarefree_part(0), Err(ArithError::Zero));
    }

    #[test]
    fn factor_large_semiprime() {
        // two primes above the trial-division bound
        let (p, q) = (1_000_003u64, 998_244_353u64);
        let n = p as i128 * q as i128 * 4;
        let f = factor(n).unwrap();
        assert_eq!(f.factors, vec![(2, 2), (q.min(p), 1), (q.max(p), 1)]);
        assert_eq!(f.value(), n);
    }

    #[test]
    fn factor_reports_bound() {
        let cfg = FactorConfig { trial_bound: 10, rho_iterations: 1 };
        let n = 1_000_003i128 * 998_244_353;
        assert!(matches!(factor_with(n, &[], &cfg), Err(ArithError::FactorizationBound { .. })));
        let f = factor_with(n, &[1_000_003], &cfg).unwrap();
        assert_eq!(f.factors, vec![(1_000_003, 1), (998_244_353, 1)]);
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let sieve = primes_up_to(100_000);
        let mut it = sieve.iter().peekable();
        for n in 0..=100_000u64 {
            let expect = it.peek() == Some(&&n);
            if expect {
                it.next();
            }
            assert_eq!(is_prime(n), expect, "{n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn root_profile_examples() {
        let f = PrimePoly::new(5, &[0, -1, 0, 1]).unwrap();
        assert_eq!(root_profile(&f), Ok(RootProfile::ThreeRoots));

        // scaled 2-division cubic of 11a1 reduced mod 7
        let f = PrimePoly::new(7, &[3, 1, 3, 1]).unwrap();
        let cof = PrimePoly::new(7, &[1, 0, 1]).unwrap();
        assert_eq!(root_profile(&f), Ok(RootProfile::OneRoot { root: 4, cofactor: cof.clone() }));
        let lin = PrimePoly::new(7, &[-4, 1]).unwrap();
        assert_eq!(lin.mul(&cof), f);

        // x^3 + x + 1 mod 5: values at 0..4 are 1,3,1,1,4
        let f = PrimePoly::new(5, &[1, 1, 0, 1]).unwrap();
        let brute = (0..5).filter(|&x| f.eval(x) == 0).count();
        assert_eq!(brute, 0);
        assert_eq!(root_profile(&f), Ok(RootProfile::Irreducible));
    }

    #[test]
    fn root_profile_rejects_inseparable_and_wrong_degree() {
        let f = PrimePoly::new(7, &[0, 0, 0, 1]).unwrap();
        assert_eq!(root_profile(&f), Err(ArithError::Inseparable(7)));
        let f = PrimePoly::new(7, &[1, 1]).unwrap();
        assert!(matches!(root_profile(&f), Err(ArithError::Degree { .. })));
    }

    #[test]
    fn evaluation_and_gcd_paths_agree_for_large_moduli() {
        let p = 1_000_003u64;
        for c in 0..200i128 {
            let f = PrimePoly::new(p, &[c * c + 7, 3 * c - 1, c, 1]).unwrap();
            match (root_profile_by_gcd(&f), root_profile_by_evaluation(&f)) {
                (Ok(a), Ok(b)) => assert_eq!(a, b),
                (Err(a), Err(b)) => assert_eq!(a, b),
                other => panic!("paths disagree: {other:?}"),
            }
        }
    }

    #[test]
    fn poly_division_identity() {
        let a = PrimePoly::new(11, &[3, 0, 5, 7, 1, 9]).unwrap();
        let b = PrimePoly::new(11, &[2, 1, 4]).unwrap();
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }
}
