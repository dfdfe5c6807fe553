use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::FieldError;

/// Exact integer cube root, or `None` when `n` is not a perfect cube.
pub fn integer_cube_root(n: &BigInt) -> Option<BigInt> {
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    let mag = n.abs();
    let root = mag.cbrt();
    if &root * &root * &root == mag {
        Some(if n.sign() == Sign::Minus { -root } else { root })
    } else {
        None
    }
}

/// The rational cube root of `c`, if any.
pub fn rational_cube_root(c: &BigRational) -> Option<BigRational> {
    let n = integer_cube_root(c.numer())?;
    let d = integer_cube_root(c.denom())?;
    Some(BigRational::new(n, d))
}

/// True iff `c = d^3` for a rational `d`. Zero is a domain error.
pub fn rational_is_cube(c: &BigRational) -> Result<bool, FieldError> {
    if c.is_zero() {
        return Err(FieldError::ZeroCubeTest);
    }
    Ok(rational_cube_root(c).is_some())
}

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cubes() {
        assert!(rational_is_cube(&rat(27, 8)).unwrap());
        assert!(rational_is_cube(&rat(-8, 1)).unwrap());
        assert!(!rational_is_cube(&rat(2, 1)).unwrap());
        assert!(!rational_is_cube(&rat(8, 9)).unwrap());
        assert_eq!(rational_is_cube(&rat(0, 1)), Err(FieldError::ZeroCubeTest));
    }

    #[test]
    fn cube_root_values() {
        assert_eq!(rational_cube_root(&rat(-27, 64)), Some(rat(-3, 4)));
        let big = BigInt::from(10).pow(40u32) + BigInt::from(7);
        let cube = &big * &big * &big;
        assert_eq!(integer_cube_root(&cube), Some(big.clone()));
        assert_eq!(integer_cube_root(&(cube + 1)), None);
    }
}
