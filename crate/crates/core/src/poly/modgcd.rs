//! Modular gcd over Q(omega): images over several F_p (both embeddings of
//! omega), Chinese remaindering, rational reconstruction and a trial
//! division check. Remainder sequences over Q suffer coefficient growth that
//! this avoids.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Poly, PolyRing};
use crate::fields::{fp_with_omega_choice, is_prime, CycloField, CycloRat, Field, PrimeField};

const MAX_PRIMES: usize = 64;

/// Pairs of F_p with the two choices of omega, for primes just below 2^61.
fn prime_pairs() -> &'static [(PrimeField, PrimeField)] {
    static PAIRS: OnceLock<Vec<(PrimeField, PrimeField)>> = OnceLock::new();
    PAIRS.get_or_init(|| {
        let mut out = Vec::with_capacity(MAX_PRIMES);
        let mut p = (1u64 << 61) - 1;
        p -= (p + 2) % 3; // p = 1 mod 3
        while out.len() < MAX_PRIMES {
            if is_prime(p) {
                out.push((fp_with_omega_choice(p, false).unwrap(), fp_with_omega_choice(p, true).unwrap()));
            }
            p -= 6;
        }
        out
    })
}

fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

fn reduce(ring: &PolyRing<CycloField>, target: &PolyRing<PrimeField>, a: &Poly<CycloField>, fp: &PrimeField) -> Option<Poly<PrimeField>> {
    let r = ring.map_coeffs(a, target, |c| c.reduce_mod(fp))?;
    // the leading coefficient must survive or the image gcd can be wrong
    (r.leading().map(|t| t.0) == a.leading().map(|t| t.0)).then_some(r)
}

/// Residues of the rational and omega parts of one coefficient.
#[derive(Clone, Default)]
struct Residues {
    re: BigInt,
    om: BigInt,
}

fn crt_step(x: &mut BigInt, m: &BigInt, r: u64, fp: &PrimeField) {
    let p = BigInt::from(fp.p());
    let xm = x.mod_floor(&p);
    let xm = u64::try_from(xm).unwrap();
    let mm = u64::try_from(m.mod_floor(&p)).unwrap();
    let t = fp.mul(&fp.sub(&r, &xm), &fp.inv(&mm).expect("distinct primes"));
    *x += m * BigInt::from(t);
}

pub(crate) fn cyclo_gcd(ring: &PolyRing<CycloField>, a: &Poly<CycloField>, b: &Poly<CycloField>) -> Option<Poly<CycloField>> {
    let rational = a.terms().chain(b.terms()).all(|(_, c)| c.is_rational());
    let mut acc: BTreeMap<Monomial, Residues> = BTreeMap::new();
    let mut modulus = BigInt::one();
    let mut degree: Option<u32> = None;
    let mut last: Option<Poly<CycloField>> = None;
    for (f1, f2) in prime_pairs() {
        let image = |fp: &PrimeField| -> Option<Poly<PrimeField>> {
            let t = PolyRing::new(fp.clone(), ring.names());
            let (ra, rb) = (reduce(ring, &t, a, fp)?, reduce(ring, &t, b, fp)?);
            Some(t.gcd(&ra, &rb))
        };
        let Some(g1) = image(f1) else { continue };
        let g2 = if rational {
            g1.clone()
        } else {
            match image(f2) {
                Some(g) if g.leading().map(|t| t.0) == g1.leading().map(|t| t.0) => g,
                _ => continue,
            }
        };
        let d = g1.degree().unwrap_or(0);
        if d == 0 {
            return Some(ring.one());
        }
        match degree {
            Some(old) if d > old => continue,
            Some(old) if d < old => {
                // every earlier prime was unlucky
                acc.clear();
                modulus = BigInt::one();
                last = None;
            }
            _ => {}
        }
        degree = Some(d);
        // c1 = A + B w1 and c2 = A + B w2 determine A and B
        let (w1, w2) = (f1.omega(), f2.omega());
        let dw = f1.inv(&f1.sub(&w1, &w2)).expect("distinct cube roots");
        let monos: Vec<Monomial> = g1.terms().chain(g2.terms()).map(|(m, _)| m.clone()).collect();
        for m in monos {
            acc.entry(m).or_default();
        }
        for (m, res) in acc.iter_mut() {
            let c1 = g1.coeff(m).copied().unwrap_or(0);
            let c2 = g2.coeff(m).copied().unwrap_or(0);
            let (re, om) = if rational {
                (c1, 0)
            } else {
                let om = f1.mul(&f1.sub(&c1, &c2), &dw);
                (f1.sub(&c1, &f1.mul(&om, &w1)), om)
            };
            crt_step(&mut res.re, &modulus, re, f1);
            crt_step(&mut res.om, &modulus, om, f1);
        }
        modulus *= BigInt::from(f1.p());
        let candidate: Option<Vec<(Monomial, CycloRat)>> = acc
            .iter()
            .map(|(m, r)| {
                Some((m.clone(), CycloRat::new(rational_reconstruct(&r.re, &modulus)?, rational_reconstruct(&r.om, &modulus)?)))
            })
            .collect();
        let Some(candidate) = candidate else { continue };
        let g = ring.from_terms(candidate.into_iter().map(|(m, c)| (m.exps().to_vec(), c)));
        // a common divisor as large as the image gcd is the gcd
        if last.as_ref() != Some(&g) && ring.divides(&g, a) && ring.divides(&g, b) {
            return Some(g);
        }
        last = Some(g);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructs_rationals() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(999_983u64);
        // -3/7 mod m is recovered through any reduction
        let u = (BigInt::from(-3) * BigInt::from(7).modinv(&m).unwrap()).mod_floor(&m);
        assert_eq!(rational_reconstruct(&u, &m), Some(BigRational::new((-3).into(), 7.into())));
    }

    #[test]
    fn common_factor_with_omega() {
        let r = PolyRing::new(CycloField, &["s", "t"]);
        let (s, t) = (r.var(0), r.var(1));
        let w = r.constant(CycloRat::omega());
        let half = r.constant(CycloRat::rational(BigRational::new(1.into(), 2.into())));
        // c = s + omega t + 1/2, raised to a power large enough to use the modular path
        let c = r.add(&r.add(&s, &r.mul(&w, &t)), &half);
        let a = r.mul(&r.pow(&c, 3), &r.pow(&r.sub(&s, &t), 4));
        let b = r.mul(&r.pow(&c, 2), &r.pow(&r.add(&s, &r.from_i64(3)), 5));
        let g = cyclo_gcd(&r, &a, &b).unwrap();
        assert_eq!(g, r.monic(&r.pow(&c, 2)));
        assert_eq!(r.gcd(&a, &b), g);
        let one = cyclo_gcd(&r, &r.pow(&r.sub(&s, &t), 4), &r.pow(&r.add(&s, &r.from_i64(3)), 5)).unwrap();
        assert!(r.is_one(&one));
    }
}
