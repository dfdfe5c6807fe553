//! Coefficient fields.
//!
//! Every algorithm in the crate is generic over [`Field`], a context object
//! that owns whatever data the arithmetic needs (a modulus, a variable list,
//! the radicands of an extension) and operates on plain element values.
//! Elements are always kept in a canonical form, so `==` on elements is
//! equality in the field.

mod cyclo;
mod fp_poly;
mod prime;
mod rational;

use std::fmt;

use crate::poly::{Poly, PolyRing};

pub use cyclo::{CycloField, CycloRat};
pub use fp_poly::FpPoly;
pub use prime::{fp_with_omega, fp_with_omega_choice, is_prime, prime_field, PrimeField};
pub use rational::{integer_cube_root, rational_cube_root, rational_is_cube};

/// Errors from field operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime greater than 3")]
    NotPrime(u64),
    #[error("F_{0} has no primitive cube root of unity")]
    NoCubeRootOfUnity(u64),
    #[error("cube test is undefined on zero")]
    ZeroCubeTest,
    #[error("element is a zero divisor: the extension is not a field")]
    ZeroDivisor,
    #[error("value does not reduce modulo {0}")]
    BadReduction(u64),
}

/// Three-valued answer of a cube test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CubeTest {
    Cube,
    NotCube,
    Unknown,
}

impl CubeTest {
    pub fn is_cube(self) -> bool {
        self == CubeTest::Cube
    }
}

/// Result of extracting a cube root.
#[derive(Debug, Clone, PartialEq)]
pub enum CubeRoot<E> {
    Root(E),
    NotCube,
    Unknown,
}

impl<E> CubeRoot<E> {
    pub fn test(&self) -> CubeTest {
        match self {
            CubeRoot::Root(_) => CubeTest::Cube,
            CubeRoot::NotCube => CubeTest::NotCube,
            CubeRoot::Unknown => CubeTest::Unknown,
        }
    }
}

/// Parts of a coefficient as it should appear inside a printed polynomial.
pub struct CoeffDisplay {
    pub negative: bool,
    pub magnitude: String,
    /// True when `magnitude` can be multiplied by a monomial without
    /// parentheses.
    pub atomic: bool,
}

/// Uniform field interface.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// The designated primitive cube root of unity.
    fn omega(&self) -> Self::Elem;
    /// False when the field carries no designated cube root of unity.
    fn has_omega(&self) -> bool {
        true
    }
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    fn fmt_elem(&self, a: &Self::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// A cube root of `a` when one exists and can be found.
    fn cube_root(&self, _a: &Self::Elem) -> CubeRoot<Self::Elem> {
        CubeRoot::Unknown
    }

    fn is_cube(&self, a: &Self::Elem) -> Result<CubeTest, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::ZeroCubeTest);
        }
        Ok(self.cube_root(a).test())
    }

    /// All roots in the field of the univariate polynomial with the given
    /// coefficients (constant term first), or `None` when the field cannot
    /// enumerate roots.
    fn univariate_roots(&self, _coeffs: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        None
    }

    /// A gcd tuned to this coefficient field, tried before the generic
    /// remainder sequence; `None` defers to the generic one.
    fn special_gcd(_ring: &PolyRing<Self>, _a: &Poly<Self>, _b: &Poly<Self>) -> Option<Poly<Self>>
    where
        Self: Sized,
    {
        None
    }

    fn coeff_display(&self, a: &Self::Elem) -> CoeffDisplay {
        CoeffDisplay {
            negative: false,
            magnitude: self.display(a).to_string(),
            atomic: false,
        }
    }

    fn display<'a>(&'a self, a: &'a Self::Elem) -> Displayed<'a, Self> {
        Displayed { field: self, elem: a }
    }
}

/// Fields whose elements can be mapped into a prime field.
pub trait ReduceModP: Field {
    /// The image of `a` under the specialization to `fp` (with `omega`
    /// going to `fp.omega()`), or `None` if a denominator vanishes.
    fn reduce(&self, a: &Self::Elem, fp: &PrimeField) -> Option<u64>;
}

pub struct Displayed<'a, F: Field + ?Sized> {
    field: &'a F,
    elem: &'a F::Elem,
}

impl<F: Field + ?Sized> fmt::Display for Displayed<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.field.fmt_elem(self.elem, f)
    }
}
