use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::rational_cube_root;
use crate::poly::{Poly, PolyRing};
use super::{CoeffDisplay, CubeRoot, Field, FieldError, PrimeField, ReduceModP};

/// An element `a + b*omega` of Q(omega), with `omega^2 = -omega - 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycloRat {
    a: BigRational,
    b: BigRational,
}

impl CycloRat {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        CycloRat { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        CycloRat {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn omega() -> Self {
        CycloRat {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }

    /// `eta = -omega`, a primitive sixth root of unity.
    pub fn eta() -> Self {
        -Self::omega()
    }

    pub fn re(&self) -> &BigRational {
        &self.a
    }

    pub fn om(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// `a^2 - ab + b^2`, the norm down to Q.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Image under `omega -> omega^2`.
    pub fn conj(&self) -> Self {
        CycloRat {
            a: &self.a - &self.b,
            b: -&self.b,
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Self::rational(self.a.recip()));
        }
        let n = self.norm();
        let c = self.conj();
        Ok(CycloRat {
            a: c.a / &n,
            b: c.b / n,
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycloRat::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn reduce_mod(&self, fp: &PrimeField) -> Option<u64> {
        let a = reduce_rational(&self.a, fp.p())?;
        if self.b.is_zero() {
            return Some(a);
        }
        let b = reduce_rational(&self.b, fp.p())?;
        Some(fp.add(&a, &fp.mul(&b, &fp.omega())))
    }
}

fn reduce_rational(r: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = r.numer().mod_floor(&pb).to_u64()?;
    let d = r.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    let fp = PrimeField::unchecked(p);
    fp.inv(&d).ok().map(|di| fp.mul(&n, &di))
}

// num-rational reduces every result with a gcd, which costs a full binary
// gcd even against a unit denominator; integers skip it
fn radd(x: &BigRational, y: &BigRational) -> BigRational {
    if x.is_integer() && y.is_integer() {
        return BigRational::from_integer(x.numer() + y.numer());
    }
    x + y
}

fn rsub(x: &BigRational, y: &BigRational) -> BigRational {
    if x.is_integer() && y.is_integer() {
        return BigRational::from_integer(x.numer() - y.numer());
    }
    x - y
}

fn rmul(x: &BigRational, y: &BigRational) -> BigRational {
    if x.is_integer() && y.is_integer() {
        return BigRational::from_integer(x.numer() * y.numer());
    }
    x * y
}

impl Add for &CycloRat {
    type Output = CycloRat;
    fn add(self, o: &CycloRat) -> CycloRat {
        CycloRat {
            a: radd(&self.a, &o.a),
            b: radd(&self.b, &o.b),
        }
    }
}

impl Sub for &CycloRat {
    type Output = CycloRat;
    fn sub(self, o: &CycloRat) -> CycloRat {
        CycloRat {
            a: rsub(&self.a, &o.a),
            b: rsub(&self.b, &o.b),
        }
    }
}

impl Neg for CycloRat {
    type Output = CycloRat;
    fn neg(self) -> CycloRat {
        CycloRat {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Neg for &CycloRat {
    type Output = CycloRat;
    fn neg(self) -> CycloRat {
        CycloRat {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Mul for &CycloRat {
    type Output = CycloRat;
    fn mul(self, o: &CycloRat) -> CycloRat {
        if self.b.is_zero() && o.b.is_zero() {
            return CycloRat::rational(rmul(&self.a, &o.a));
        }
        if self.b.is_zero() {
            return CycloRat {
                a: rmul(&self.a, &o.a),
                b: rmul(&self.a, &o.b),
            };
        }
        if o.b.is_zero() {
            return CycloRat {
                a: rmul(&self.a, &o.a),
                b: rmul(&self.b, &o.a),
            };
        }
        // (a + b w)(c + d w) = (ac - bd) + (ad + bc - bd) w
        let bd = rmul(&self.b, &o.b);
        CycloRat {
            a: rsub(&rmul(&self.a, &o.a), &bd),
            b: rsub(&radd(&rmul(&self.a, &o.b), &rmul(&self.b, &o.a)), &bd),
        }
    }
}

impl fmt::Display for CycloRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) => write_omega_part(f, &self.b, false),
            (false, false) => {
                write!(f, "{}", self.a)?;
                write_omega_part(f, &self.b, true)
            }
        }
    }
}

fn write_omega_part(f: &mut fmt::Formatter<'_>, b: &BigRational, infix: bool) -> fmt::Result {
    let mag = b.abs();
    let sign = if b.is_negative() {
        if infix {
            " - "
        } else {
            "-"
        }
    } else if infix {
        " + "
    } else {
        ""
    };
    if mag.is_one() {
        write!(f, "{sign}omega")
    } else {
        write!(f, "{sign}{mag}*omega")
    }
}

/// The field Q(omega).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CycloField;

impl Field for CycloField {
    type Elem = CycloRat;

    fn special_gcd(ring: &PolyRing<Self>, a: &Poly<Self>, b: &Poly<Self>) -> Option<Poly<Self>> {
        crate::poly::modgcd::cyclo_gcd(ring, a, b)
    }

    fn zero(&self) -> CycloRat {
        CycloRat::zero()
    }
    fn one(&self) -> CycloRat {
        CycloRat::one()
    }
    fn is_zero(&self, a: &CycloRat) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &CycloRat) -> bool {
        a.b.is_zero() && a.a.is_one()
    }
    fn add(&self, a: &CycloRat, b: &CycloRat) -> CycloRat {
        a + b
    }
    fn sub(&self, a: &CycloRat, b: &CycloRat) -> CycloRat {
        a - b
    }
    fn neg(&self, a: &CycloRat) -> CycloRat {
        -a
    }
    fn mul(&self, a: &CycloRat, b: &CycloRat) -> CycloRat {
        a * b
    }
    fn inv(&self, a: &CycloRat) -> Result<CycloRat, FieldError> {
        a.inv()
    }
    fn from_i64(&self, n: i64) -> CycloRat {
        CycloRat::from_int(n)
    }
    fn omega(&self) -> CycloRat {
        CycloRat::omega()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn fmt_elem(&self, a: &CycloRat, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{a}")
    }

    /// Decided for rational values only; a rational is a cube in Q(omega)
    /// iff it is a cube in Q, since Q(omega) has degree 2.
    fn cube_root(&self, a: &CycloRat) -> CubeRoot<CycloRat> {
        if !a.is_rational() {
            return CubeRoot::Unknown;
        }
        match rational_cube_root(&a.a) {
            Some(r) => CubeRoot::Root(CycloRat::rational(r)),
            None => CubeRoot::NotCube,
        }
    }

    fn coeff_display(&self, a: &CycloRat) -> CoeffDisplay {
        if a.is_rational() {
            CoeffDisplay {
                negative: a.a.is_negative(),
                magnitude: a.a.abs().to_string(),
                atomic: a.a.is_integer(),
            }
        } else if a.a.is_zero() {
            let mag = a.b.abs();
            CoeffDisplay {
                negative: a.b.is_negative(),
                magnitude: if mag.is_one() {
                    "omega".into()
                } else {
                    format!("{mag}*omega")
                },
                atomic: mag.is_integer(),
            }
        } else {
            CoeffDisplay {
                negative: false,
                magnitude: a.to_string(),
                atomic: false,
            }
        }
    }
}

impl ReduceModP for CycloField {
    fn reduce(&self, a: &CycloRat, fp: &PrimeField) -> Option<u64> {
        a.reduce_mod(fp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::rational::rat;
    use crate::fields::fp_with_omega;

    #[test]
    fn omega_relations() {
        let w = CycloRat::omega();
        assert_eq!(&(&w * &w) * &w, CycloRat::one());
        let s = &(&CycloRat::one() + &w) + &(&w * &w);
        assert!(s.is_zero());
    }

    #[test]
    fn eta_is_sixth_root() {
        let eta = CycloRat::eta();
        assert_eq!(eta.pow(6), CycloRat::one());
        assert_eq!(eta.pow(3), CycloRat::from_int(-1));
        assert_ne!(eta.pow(2), CycloRat::one());
    }

    #[test]
    fn inverse_and_zero() {
        let x = CycloRat::new(rat(3, 2), rat(-5, 7));
        assert_eq!(&x * &x.inv().unwrap(), CycloRat::one());
        assert_eq!(CycloRat::zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn cube_tests_on_constants() {
        let k = CycloField;
        assert_eq!(k.is_cube(&CycloRat::rational(rat(27, 8))), Ok(crate::fields::CubeTest::Cube));
        assert_eq!(k.is_cube(&k.from_i64(2)), Ok(crate::fields::CubeTest::NotCube));
        assert_eq!(k.is_cube(&k.omega()), Ok(crate::fields::CubeTest::Unknown));
    }

    #[test]
    fn reduction_respects_omega() {
        let fp = fp_with_omega(7).unwrap();
        let w = CycloRat::omega();
        assert_eq!(w.reduce_mod(&fp), Some(fp.omega()));
        assert_eq!(CycloRat::rational(rat(1, 7)).reduce_mod(&fp), None);
        assert_eq!(CycloRat::rational(rat(1, 2)).reduce_mod(&fp), Some(4));
    }

    #[test]
    fn display_forms() {
        assert_eq!(CycloRat::new(rat(1, 2), rat(-1, 1)).to_string(), "1/2 - omega");
        assert_eq!(CycloRat::new(rat(0, 1), rat(3, 1)).to_string(), "3*omega");
    }
}
