//! Rational functions in lowest terms with monic denominators.

use std::fmt;

use super::{Poly, PolyRing, SparsePoly};
use crate::fields::{CoeffDisplay, CubeRoot, Field, FieldError, PrimeField, ReduceModP};

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<E> {
    num: SparsePoly<E>,
    den: SparsePoly<E>,
}

impl<E> RatFunc<E> {
    pub fn num(&self) -> &SparsePoly<E> {
        &self.num
    }

    pub fn den(&self) -> &SparsePoly<E> {
        &self.den
    }
}

/// The field of fractions of a [`PolyRing`].
#[derive(Clone, Debug, PartialEq)]
pub struct RatFuncField<F: Field> {
    ring: PolyRing<F>,
}

impl<F: Field> RatFuncField<F> {
    pub fn new(ring: PolyRing<F>) -> Self {
        RatFuncField { ring }
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn var(&self, i: usize) -> RatFunc<F::Elem> {
        self.from_poly(self.ring.var(i))
    }

    pub fn from_poly(&self, p: Poly<F>) -> RatFunc<F::Elem> {
        RatFunc {
            num: p,
            den: self.ring.one(),
        }
    }

    pub fn constant(&self, c: F::Elem) -> RatFunc<F::Elem> {
        self.from_poly(self.ring.constant(c))
    }

    /// Normalizes `num / den`.
    pub fn fraction(&self, num: Poly<F>, den: Poly<F>) -> Result<RatFunc<F::Elem>, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(self.zero());
        }
        let g = self.ring.gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                self.ring.div_exact(&num, &g).expect("gcd divides"),
                self.ring.div_exact(&den, &g).expect("gcd divides"),
            )
        };
        Ok(self.scaled(num, den))
    }

    /// Makes the denominator monic; the inputs must already be coprime.
    fn scaled(&self, num: Poly<F>, den: Poly<F>) -> RatFunc<F::Elem> {
        let lc = self.ring.leading_coeff(&den);
        let f = self.ring.field();
        if f.is_one(&lc) {
            return RatFunc { num, den };
        }
        let inv = f.inv(&lc).expect("nonzero leading coefficient");
        RatFunc {
            num: self.ring.scale(&num, &inv),
            den: self.ring.scale(&den, &inv),
        }
    }

    pub fn is_polynomial(&self, a: &RatFunc<F::Elem>) -> bool {
        self.ring.is_one(&a.den)
    }

    /// Value at a point; fails when the denominator vanishes there.
    pub fn eval(&self, a: &RatFunc<F::Elem>, pt: &[F::Elem]) -> Result<F::Elem, FieldError> {
        let f = self.ring.field();
        let n = self.ring.eval(&a.num, pt).map_err(|_| FieldError::DivisionByZero)?;
        let d = self.ring.eval(&a.den, pt).map_err(|_| FieldError::DivisionByZero)?;
        f.div(&n, &d)
    }

    /// Value at an `F_p` point after reducing coefficients; `None` when the
    /// denominator vanishes or a coefficient does not reduce.
    pub fn eval_mod_p(&self, a: &RatFunc<F::Elem>, fp: &PrimeField, pt: &[u64]) -> Option<u64>
    where
        F: ReduceModP,
    {
        let n = self.ring.eval_mod_p(&a.num, fp, pt)?;
        if self.ring.is_one(&a.den) {
            return Some(n);
        }
        let d = self.ring.eval_mod_p(&a.den, fp, pt)?;
        fp.div(&n, &d).ok()
    }

    /// Cube root via squarefree decompositions of numerator and denominator.
    fn cube_root_impl(&self, a: &RatFunc<F::Elem>) -> CubeRoot<RatFunc<F::Elem>> {
        let r = &self.ring;
        let sn = r.squarefree(&a.num).expect("nonzero numerator");
        let sd = r.squarefree(&a.den).expect("nonzero denominator");
        if sn.factors.iter().chain(&sd.factors).any(|(_, m)| m % 3 != 0) {
            return CubeRoot::NotCube;
        }
        // den is monic, so its content is 1 and the constant is lc(num)
        let c = match r.field().cube_root(&sn.content) {
            CubeRoot::Root(c) => c,
            CubeRoot::NotCube => return CubeRoot::NotCube,
            CubeRoot::Unknown => return CubeRoot::Unknown,
        };
        let root = |fs: &[(Poly<F>, u32)]| {
            fs.iter()
                .fold(r.one(), |acc, (f, m)| r.mul(&acc, &r.pow(f, m / 3)))
        };
        let num = r.scale(&root(&sn.factors), &c);
        let den = root(&sd.factors);
        CubeRoot::Root(self.scaled(num, den))
    }
}

impl<F: Field> Field for RatFuncField<F> {
    type Elem = RatFunc<F::Elem>;

    fn zero(&self) -> Self::Elem {
        self.from_poly(self.ring.zero())
    }

    fn one(&self) -> Self::Elem {
        self.from_poly(self.ring.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.ring.is_one(&a.num) && self.ring.is_one(&a.den)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let r = &self.ring;
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            let num = r.add(&a.num, &b.num);
            if r.is_one(&a.den) {
                return self.from_poly(num);
            }
            return self.fraction(num, a.den.clone()).expect("nonzero denominator");
        }
        if r.is_one(&a.den) {
            return RatFunc {
                num: r.add(&r.mul(&a.num, &b.den), &b.num),
                den: b.den.clone(),
            };
        }
        if r.is_one(&b.den) {
            return RatFunc {
                num: r.add(&a.num, &r.mul(&b.num, &a.den)),
                den: a.den.clone(),
            };
        }
        let g = r.gcd(&a.den, &b.den);
        if g.is_constant() {
            // coprime denominators leave nothing to cancel
            return RatFunc {
                num: r.add(&r.mul(&a.num, &b.den), &r.mul(&b.num, &a.den)),
                den: r.mul(&a.den, &b.den),
            };
        }
        let ad = r.div_exact(&a.den, &g).expect("gcd divides");
        let bd = r.div_exact(&b.den, &g).expect("gcd divides");
        let t = r.add(&r.mul(&a.num, &bd), &r.mul(&b.num, &ad));
        if t.is_zero() {
            return self.zero();
        }
        let g2 = r.gcd(&t, &g);
        let (num, gd) = if g2.is_constant() {
            (t, g)
        } else {
            (
                r.div_exact(&t, &g2).expect("gcd divides"),
                r.div_exact(&g, &g2).expect("gcd divides"),
            )
        };
        let den = r.mul(&r.mul(&ad, &bd), &gd);
        self.scaled(num, den)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFunc {
            num: self.ring.neg(&a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let r = &self.ring;
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        let cross = |n: &Poly<F>, d: &Poly<F>| -> (Poly<F>, Poly<F>) {
            if r.is_one(d) || n.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = r.gcd(n, d);
            if g.is_constant() {
                (n.clone(), d.clone())
            } else {
                (
                    r.div_exact(n, &g).expect("gcd divides"),
                    r.div_exact(d, &g).expect("gcd divides"),
                )
            }
        };
        let (an, bd) = cross(&a.num, &b.den);
        let (bn, ad) = cross(&b.num, &a.den);
        let num = r.mul(&an, &bn);
        let den = r.mul(&ad, &bd);
        self.scaled(num, den)
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError> {
        if a.num.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.scaled(a.den.clone(), a.num.clone()))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_poly(self.ring.from_i64(n))
    }

    fn has_omega(&self) -> bool {
        self.ring.field().has_omega()
    }

    fn omega(&self) -> Self::Elem {
        self.constant(self.ring.field().omega())
    }

    fn characteristic(&self) -> u64 {
        self.ring.field().characteristic()
    }

    fn fmt_elem(&self, a: &Self::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.ring;
        if r.is_one(&a.den) {
            write!(f, "{}", r.display(&a.num))
        } else {
            let wrap = |p: &Poly<F>| {
                let s = r.display(p).to_string();
                if p.len() > 1 || s.starts_with('-') {
                    format!("({s})")
                } else {
                    s
                }
            };
            write!(f, "{}/{}", wrap(&a.num), wrap(&a.den))
        }
    }

    fn cube_root(&self, a: &Self::Elem) -> CubeRoot<Self::Elem> {
        if a.num.is_zero() {
            return CubeRoot::Root(self.zero());
        }
        self.cube_root_impl(a)
    }

    fn coeff_display(&self, a: &Self::Elem) -> CoeffDisplay {
        let r = &self.ring;
        if r.is_one(&a.den) && a.num.is_constant() {
            return r.field().coeff_display(&r.leading_coeff(&a.num));
        }
        CoeffDisplay {
            negative: false,
            magnitude: self.display(a).to_string(),
            atomic: false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{CubeTest, CycloField};
    use crate::poly::PolyRing;

    fn field() -> RatFuncField<CycloField> {
        RatFuncField::new(PolyRing::new(CycloField, &["s3", "s4"]))
    }

    #[test]
    fn normal_form_cancels() {
        let k = field();
        let r = k.ring().clone();
        let (s3, s4) = (r.var(0), r.var(1));
        let num = r.mul(&r.sub(&s3, &s4), &s3);
        let den = r.scale(&r.mul(&r.sub(&s3, &s4), &s4), &CycloField.from_i64(2));
        let f = k.fraction(num, den).unwrap();
        assert_eq!(f.num(), &r.scale(&s3, &CycloField.inv(&CycloField.from_i64(2)).unwrap()));
        assert_eq!(f.den(), &s4);
        assert_eq!(k.mul(&f, &k.inv(&f).unwrap()), k.one());
    }

    #[test]
    fn sums_reduce() {
        let k = field();
        let (s3, s4) = (k.var(0), k.var(1));
        let x = k.inv(&k.sub(&s3, &s4)).unwrap();
        let y = k.inv(&k.add(&s3, &s4)).unwrap();
        let sum = k.add(&x, &y);
        let expect = k
            .div(&k.mul(&k.from_i64(2), &s3), &k.sub(&k.mul(&s3, &s3), &k.mul(&s4, &s4)))
            .unwrap();
        assert_eq!(sum, expect);
        assert!(k.is_zero(&k.sub(&sum, &expect)));
    }

    #[test]
    fn cube_tests() {
        let k = field();
        let r = k.ring().clone();
        let (s3, s4) = (r.var(0), r.var(1));
        let num = r.pow(&r.sub(&s3, &r.one()), 3);
        let den = r.pow(&s4, 6);
        let f = k.fraction(num, den).unwrap();
        assert_eq!(k.is_cube(&f), Ok(CubeTest::Cube));
        assert_eq!(k.is_cube(&k.one()), Ok(CubeTest::Cube));
        assert_eq!(k.is_cube(&k.var(0)), Ok(CubeTest::NotCube));
        assert_eq!(k.is_cube(&k.from_i64(2)), Ok(CubeTest::NotCube));
        assert_eq!(k.is_cube(&k.zero()), Err(FieldError::ZeroCubeTest));
        match k.cube_root(&f) {
            CubeRoot::Root(g) => assert_eq!(k.pow(&g, 3), f),
            other => panic!("expected a root, got {other:?}"),
        }
    }
}
