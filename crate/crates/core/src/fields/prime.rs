use std::fmt;

use rand::Rng;

use super::fp_poly::FpPoly;
use super::{CoeffDisplay, CubeRoot, Field, FieldError, ReduceModP};

/// The prime field F_p together with a designated primitive cube root of
/// unity. Elements are `u64` values reduced into `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    omega: u64,
}

/// F_p for a prime p > 3, without a designated cube root of unity.
/// Calling [`Field::omega`] on it panics.
pub fn prime_field(p: u64) -> Result<PrimeField, FieldError> {
    if !is_prime(p) || p <= 3 {
        return Err(FieldError::NotPrime(p));
    }
    Ok(PrimeField::unchecked(p))
}

/// F_p with the smaller of its two primitive cube roots of unity.
pub fn fp_with_omega(p: u64) -> Result<PrimeField, FieldError> {
    fp_with_omega_choice(p, false)
}

/// F_p with the chosen primitive cube root of unity (`larger` picks the
/// numerically larger of the two).
pub fn fp_with_omega_choice(p: u64, larger: bool) -> Result<PrimeField, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if p % 3 != 1 {
        return Err(FieldError::NoCubeRootOfUnity(p));
    }
    let base = PrimeField::unchecked(p);
    let e = (p - 1) / 3;
    let w = (2..p)
        .map(|g| base.pow(&g, e))
        .find(|&w| w != 1)
        .expect("F_p^* has elements of order 3 when 3 | p - 1");
    let w2 = base.mul(&w, &w);
    let omega = if larger { w.max(w2) } else { w.min(w2) };
    Ok(PrimeField { p, omega })
}

impl PrimeField {
    /// Modular arithmetic without a cube root of unity; `omega()` is 0.
    pub(crate) fn unchecked(p: u64) -> Self {
        PrimeField { p, omega: 0 }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.p)
    }

    pub fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(1..self.p)
    }

    pub fn is_square(&self, a: u64) -> bool {
        a == 0 || self.p == 2 || self.pow(&a, (self.p - 1) / 2) == 1
    }

    /// Distinct roots in F_p of `T^k - a`.
    pub fn kth_roots(&self, a: u64, k: usize) -> Vec<u64> {
        let mut coeffs = vec![0; k + 1];
        coeffs[0] = self.neg(&a);
        coeffs[k] = 1;
        FpPoly::new(*self, coeffs).roots()
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Result<u64, FieldError> {
        if *a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Ok(s0.rem_euclid(self.p as i128) as u64)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.elem(n)
    }
    fn has_omega(&self) -> bool {
        self.omega != 0
    }
    fn omega(&self) -> u64 {
        assert!(self.omega != 0, "F_{} has no designated cube root of unity", self.p);
        self.omega
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn fmt_elem(&self, a: &u64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{a}")
    }

    fn cube_root(&self, a: &u64) -> CubeRoot<u64> {
        if *a == 0 {
            return CubeRoot::Root(0);
        }
        match self.kth_roots(*a, 3).into_iter().min() {
            Some(r) => CubeRoot::Root(r),
            None => CubeRoot::NotCube,
        }
    }

    fn univariate_roots(&self, coeffs: &[u64]) -> Option<Vec<u64>> {
        Some(FpPoly::new(*self, coeffs.to_vec()).roots())
    }

    fn coeff_display(&self, a: &u64) -> CoeffDisplay {
        CoeffDisplay {
            negative: false,
            magnitude: a.to_string(),
            atomic: true,
        }
    }
}

impl ReduceModP for PrimeField {
    fn reduce(&self, a: &u64, fp: &PrimeField) -> Option<u64> {
        (self.p == fp.p).then_some(*a)
    }
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for q in SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let f = PrimeField::unchecked(n);
    'witness: for a in SMALL {
        let mut x = f.pow(&a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(&x, &x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_omegas(p: u64) -> Vec<u64> {
        let f = PrimeField::unchecked(p);
        (2..p).filter(|&x| f.pow(&x, 3) == 1).collect()
    }

    #[test]
    fn omega_for_small_primes() {
        assert_eq!(brute_force_omegas(7), vec![2, 4]);
        assert_eq!(brute_force_omegas(13), vec![3, 9]);
        assert_eq!(fp_with_omega(7).unwrap().omega(), 2);
        assert_eq!(fp_with_omega_choice(7, true).unwrap().omega(), 4);
        assert_eq!(fp_with_omega(13).unwrap().omega(), 3);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(fp_with_omega(5), Err(FieldError::NoCubeRootOfUnity(5)));
        assert_eq!(fp_with_omega(3), Err(FieldError::NoCubeRootOfUnity(3)));
        assert_eq!(fp_with_omega(91), Err(FieldError::NotPrime(91)));
    }

    #[test]
    fn primality_agrees_with_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001));
    }

    #[test]
    fn omega_minimal_polynomial() {
        for p in [7, 13, 19, 10007, 999_983] {
            if let Ok(f) = fp_with_omega(p) {
                let w = f.omega();
                assert_eq!(f.add(&f.add(&f.mul(&w, &w), &w), &1), 0);
            }
        }
    }

    #[test]
    fn cube_roots_mod_p() {
        let f = fp_with_omega(31).unwrap();
        for a in 1..31 {
            let brute: Vec<u64> = (0..31).filter(|x| f.pow(x, 3) == a).collect();
            match f.cube_root(&a) {
                CubeRoot::Root(r) => assert_eq!(Some(&r), brute.iter().min()),
                CubeRoot::NotCube => assert!(brute.is_empty()),
                CubeRoot::Unknown => unreachable!(),
            }
        }
    }
}
