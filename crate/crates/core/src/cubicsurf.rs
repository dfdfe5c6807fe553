//! Diagonal cubic surfaces `a_1 x_1^3 + a_2 x_2^3 + a_3 x_3^3 + a_4 x_4^3 = 0`.
//!
//! Coordinates are 0-based. Cube roots that do not exist in the
//! coefficient field stay symbolic: "the `branch`-th cube root of `r`",
//! meaning `omega^branch` times one fixed root. Questions about rationality
//! over the coefficient field reduce to cube tests.

mod incidence;
mod records;

use serde::Serialize;

use crate::ext::BinomialExt;
use crate::fields::{CubeRoot, CubeTest, Field, FieldError};
use crate::linalg::determinant;
use crate::poly::{PolyRing, RatFuncField};

pub use records::{eckardt_records, line_records, rationality_records, unit_point_record};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("the surface is singular (a coefficient vanishes)")]
    Singular,
    #[error("the point is not on the surface")]
    NotOnSurface,
    #[error("the point is zero")]
    ZeroPoint,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalCubic<F: Field> {
    field: F,
    a: [F::Elem; 4],
}

impl<F: Field> DiagonalCubic<F> {
    pub fn new(field: F, a: [F::Elem; 4]) -> Self {
        DiagonalCubic { field, a }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem; 4] {
        &self.a
    }

    pub fn coeff(&self, i: usize) -> &F::Elem {
        &self.a[i]
    }

    pub fn is_smooth(&self) -> bool {
        self.a.iter().all(|c| !self.field.is_zero(c))
    }

    pub fn eval(&self, x: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        self.a
            .iter()
            .zip(x)
            .fold(f.zero(), |acc, (a, x)| f.add(&acc, &f.mul(a, &f.pow(x, 3))))
    }

    pub fn contains(&self, x: &[F::Elem]) -> bool {
        self.field.is_zero(&self.eval(x))
    }

    /// Gradient `(3 a_i x_i^2)`.
    pub fn gradient(&self, x: &[F::Elem]) -> [F::Elem; 4] {
        let f = &self.field;
        std::array::from_fn(|i| f.mul(&f.from_i64(3), &f.mul(&self.a[i], &f.pow(&x[i], 2))))
    }

    /// The defining form in a polynomial ring with the given names.
    pub fn equation<S: AsRef<str>>(&self, names: &[S]) -> (PolyRing<F>, crate::poly::Poly<F>) {
        let r = PolyRing::new(self.field.clone(), names);
        let p = (0..4).fold(r.zero(), |acc, i| {
            r.add(&acc, &r.scale(&r.pow(&r.var(i), 3), &self.a[i]))
        });
        (r, p)
    }

    fn require_smooth(&self) -> Result<(), SurfaceError> {
        if self.is_smooth() {
            Ok(())
        } else {
            Err(SurfaceError::Singular)
        }
    }

    /// The same surface with its coefficients scaled by `c`.
    pub fn scaled(&self, c: &F::Elem) -> Self {
        DiagonalCubic::new(self.field.clone(), std::array::from_fn(|i| self.field.mul(&self.a[i], c)))
    }

    /// The surface with coordinates permuted: coefficient `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        let mut a = self.a.clone();
        for i in 0..4 {
            a[perm[i]] = self.a[i].clone();
        }
        DiagonalCubic::new(self.field.clone(), a)
    }
}

/// A splitting of the coordinates into two pairs `{i, j}, {h, k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

pub const PARTITIONS: [Partition; 3] = [
    Partition { first: (0, 1), second: (2, 3) },
    Partition { first: (0, 2), second: (1, 3) },
    Partition { first: (0, 3), second: (1, 2) },
];

impl Partition {
    pub fn label(&self) -> String {
        format!(
            "{{{},{}}}{{{},{}}}",
            self.first.0 + 1,
            self.first.1 + 1,
            self.second.0 + 1,
            self.second.1 + 1
        )
    }
}

/// One of the three cube roots of `radicand`.
#[derive(Clone, Debug, PartialEq)]
pub enum CubeRootOf<E> {
    Explicit(E),
    Symbolic { radicand: E, branch: u8 },
}

impl<E: PartialEq> CubeRootOf<E> {
    pub fn explicit(&self) -> Option<&E> {
        match self {
            CubeRootOf::Explicit(e) => Some(e),
            CubeRootOf::Symbolic { .. } => None,
        }
    }
}

/// The three cube roots of `r`, with the outcome of the cube test.
pub fn cube_roots<F: Field>(f: &F, r: &F::Elem) -> (CubeTest, [CubeRootOf<F::Elem>; 3]) {
    match f.cube_root(r) {
        CubeRoot::Root(c) => {
            let w = f.omega();
            let roots = [c.clone(), f.mul(&c, &w), f.mul(&c, &f.mul(&w, &w))];
            (CubeTest::Cube, roots.map(CubeRootOf::Explicit))
        }
        other => {
            let t = other.test();
            (
                t,
                [0, 1, 2].map(|branch| CubeRootOf::Symbolic {
                    radicand: r.clone(),
                    branch,
                }),
            )
        }
    }
}

/// The line `x_i = lambda x_j, x_h = mu x_k` of a partition.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceLine<E> {
    pub partition: Partition,
    pub lambda: CubeRootOf<E>,
    pub mu: CubeRootOf<E>,
}

impl<E: Clone + PartialEq> SurfaceLine<E> {
    pub fn is_explicit(&self) -> bool {
        self.lambda.explicit().is_some() && self.mu.explicit().is_some()
    }

    /// Two points spanning the line, when it is explicit.
    pub fn points<F: Field<Elem = E>>(&self, f: &F) -> Option<[[E; 4]; 2]> {
        let (l, m) = (self.lambda.explicit()?, self.mu.explicit()?);
        let Partition { first: (i, j), second: (h, k) } = self.partition;
        let mut p = std::array::from_fn(|_| f.zero());
        let mut q = p.clone();
        p[i] = l.clone();
        p[j] = f.one();
        q[h] = m.clone();
        q[k] = f.one();
        Some([p, q])
    }

    /// The two linear forms cutting out the line, as coefficient rows.
    pub fn forms<F: Field<Elem = E>>(&self, f: &F) -> Option<[[E; 4]; 2]> {
        let (l, m) = (self.lambda.explicit()?, self.mu.explicit()?);
        let Partition { first: (i, j), second: (h, k) } = self.partition;
        let mut r1: [E; 4] = std::array::from_fn(|_| f.zero());
        let mut r2 = r1.clone();
        r1[i] = f.one();
        r1[j] = f.neg(l);
        r2[h] = f.one();
        r2[k] = f.neg(m);
        Some([r1, r2])
    }
}

/// The nine lines of one partition with the cube tests behind them.
#[derive(Clone, Debug, PartialEq)]
pub struct LineFamily<E> {
    pub partition: Partition,
    /// `-a_j / a_i` and `-a_k / a_h`.
    pub radicands: [E; 2],
    pub tests: [CubeTest; 2],
    pub lines: Vec<SurfaceLine<E>>,
}

impl<F: Field> DiagonalCubic<F> {
    pub fn line_families(&self) -> Result<Vec<LineFamily<F::Elem>>, SurfaceError> {
        self.require_smooth()?;
        let f = &self.field;
        let mut out = Vec::new();
        for part in PARTITIONS {
            let Partition { first: (i, j), second: (h, k) } = part;
            let r1 = f.neg(&f.div(&self.a[j], &self.a[i])?);
            let r2 = f.neg(&f.div(&self.a[k], &self.a[h])?);
            let (t1, ls) = cube_roots(f, &r1);
            let (t2, ms) = cube_roots(f, &r2);
            let mut lines = Vec::with_capacity(9);
            for l in &ls {
                for m in &ms {
                    lines.push(SurfaceLine {
                        partition: part,
                        lambda: l.clone(),
                        mu: m.clone(),
                    });
                }
            }
            out.push(LineFamily {
                partition: part,
                radicands: [r1, r2],
                tests: [t1, t2],
                lines,
            });
        }
        Ok(out)
    }

    /// All 27 lines, nine per partition.
    pub fn lines27(&self) -> Result<Vec<SurfaceLine<F::Elem>>, SurfaceError> {
        Ok(self.line_families()?.into_iter().flat_map(|f| f.lines).collect())
    }

    /// Substitutes the parametrization `(x_i, x_j, x_h, x_k) = (lambda s, s,
    /// mu t, t)` into the equation, over the extension by whatever cube
    /// roots stay symbolic, and checks that the result is zero.
    pub fn line_on_surface(&self, line: &SurfaceLine<F::Elem>) -> bool {
        let f = &self.field;
        let mut radicands = Vec::new();
        let mut names = Vec::new();
        for (c, name) in [(&line.lambda, "l"), (&line.mu, "m")] {
            if let CubeRootOf::Symbolic { radicand, .. } = c {
                radicands.push(radicand.clone());
                names.push(name);
            }
        }
        let ext = BinomialExt::new(f.clone(), 3, radicands, &names);
        let mut gen = 0;
        let mut scalar = |c: &CubeRootOf<F::Elem>| match c {
            CubeRootOf::Explicit(v) => ext.embed(v.clone()),
            CubeRootOf::Symbolic { branch, .. } => {
                let g = ext.gen(gen);
                gen += 1;
                ext.mul(&ext.pow(&ext.omega(), *branch as u64), &g)
            }
        };
        let l = scalar(&line.lambda);
        let m = scalar(&line.mu);
        let ring = PolyRing::new(ext.clone(), &["s", "t"]);
        let (s, t) = (ring.var(0), ring.var(1));
        let Partition { first: (i, j), second: (h, k) } = line.partition;
        let mut x = vec![ring.zero(); 4];
        x[i] = ring.scale(&s, &l);
        x[j] = s;
        x[h] = ring.scale(&t, &m);
        x[k] = t;
        let value = (0..4).fold(ring.zero(), |acc, q| {
            ring.add(&acc, &ring.scale(&ring.pow(&x[q], 3), &ext.embed(self.a[q].clone())))
        });
        value.is_zero()
    }

    /// Whether two lines are skew. `None` when the answer depends on how
    /// independent symbolic cube roots are chosen.
    pub fn lines_disjoint(&self, a: &SurfaceLine<F::Elem>, b: &SurfaceLine<F::Elem>) -> Option<bool> {
        if a.partition == b.partition {
            // x_i = l x_j and x_i = l' x_j force x_i = x_j = 0 unless l = l'
            return Some(a.lambda != b.lambda && a.mu != b.mu);
        }
        let (fa, fb) = (a.forms(&self.field)?, b.forms(&self.field)?);
        let m: Vec<Vec<F::Elem>> = [&fa[0], &fa[1], &fb[0], &fb[1]].iter().map(|r| r.to_vec()).collect();
        Some(!self.field.is_zero(&determinant(&self.field, &m)))
    }
}

/// How the Galois group of the field of definition permutes the nine
/// lines of a partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitStructure {
    /// Every line is rational.
    Singletons,
    /// Three orbits of three lines sharing one coordinate ratio; lines in
    /// an orbit meet.
    IncidentTriples,
    /// Three orbits of three pairwise skew lines.
    DisjointTriples,
    /// One orbit of nine.
    Single,
    /// Some cube test was undecided.
    Unknown,
}

impl OrbitStructure {
    pub fn sizes(self) -> Option<Vec<usize>> {
        match self {
            OrbitStructure::Singletons => Some(vec![1; 9]),
            OrbitStructure::IncidentTriples | OrbitStructure::DisjointTriples => Some(vec![3; 3]),
            OrbitStructure::Single => Some(vec![9]),
            OrbitStructure::Unknown => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyRationality<E> {
    pub partition: Partition,
    pub tests: [CubeTest; 2],
    /// Cube tests of `r_1 r_2` and `r_1 / r_2`.
    pub mixed_tests: [CubeTest; 2],
    pub rational_lines: Vec<SurfaceLine<E>>,
    pub orbits: OrbitStructure,
}

impl<F: Field> DiagonalCubic<F> {
    pub fn k_rational_lines(&self) -> Result<Vec<FamilyRationality<F::Elem>>, SurfaceError> {
        let f = &self.field;
        let mut out = Vec::new();
        for fam in self.line_families()? {
            let [r1, r2] = &fam.radicands;
            let prod = f.is_cube(&f.mul(r1, r2))?;
            let quot = f.is_cube(&f.div(r1, r2)?)?;
            let [t1, t2] = fam.tests;
            use CubeTest::*;
            let orbits = match (t1, t2) {
                (Cube, Cube) => OrbitStructure::Singletons,
                (Cube, NotCube) | (NotCube, Cube) => OrbitStructure::IncidentTriples,
                (NotCube, NotCube) => match (prod, quot) {
                    (Cube, _) | (_, Cube) => OrbitStructure::DisjointTriples,
                    (NotCube, NotCube) => OrbitStructure::Single,
                    _ => OrbitStructure::Unknown,
                },
                _ => OrbitStructure::Unknown,
            };
            let rational_lines = fam.lines.iter().filter(|l| l.is_explicit()).cloned().collect();
            out.push(FamilyRationality {
                partition: fam.partition,
                tests: fam.tests,
                mixed_tests: [prod, quot],
                rational_lines,
                orbits,
            });
        }
        Ok(out)
    }
}

/// A point with two vanishing coordinates where the tangent section is
/// three concurrent lines.
#[derive(Clone, Debug, PartialEq)]
pub struct EckardtPoint<E> {
    /// The coordinates that vanish.
    pub zero_pair: (usize, usize),
    /// `(h, k)` with `x_h = ratio * x_k`.
    pub other_pair: (usize, usize),
    pub ratio: CubeRootOf<E>,
    pub rational: CubeTest,
    /// The tangent section reduced to `a_i x_i^3 + a_j x_j^3`.
    pub verified: bool,
}

impl<E: Clone + PartialEq> EckardtPoint<E> {
    pub fn coordinates<F: Field<Elem = E>>(&self, f: &F) -> Option<[E; 4]> {
        let r = self.ratio.explicit()?;
        let mut p: [E; 4] = std::array::from_fn(|_| f.zero());
        p[self.other_pair.0] = r.clone();
        p[self.other_pair.1] = f.one();
        Some(p)
    }
}

impl<F: Field> DiagonalCubic<F> {
    pub fn eckardt_points(&self) -> Result<Vec<EckardtPoint<F::Elem>>, SurfaceError> {
        self.require_smooth()?;
        let f = &self.field;
        let mut out = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                let rest: Vec<usize> = (0..4).filter(|&q| q != i && q != j).collect();
                let (h, k) = (rest[0], rest[1]);
                let r = f.neg(&f.div(&self.a[k], &self.a[h])?);
                let (test, roots) = cube_roots(f, &r);
                for ratio in roots {
                    let verified = self.verify_eckardt(i, j, h, k, &ratio);
                    out.push(EckardtPoint {
                        zero_pair: (i, j),
                        other_pair: (h, k),
                        ratio,
                        rational: test,
                        verified,
                    });
                }
            }
        }
        Ok(out)
    }

    /// At `P` with `x_i = x_j = 0, x_h = nu x_k` the tangent plane is
    /// `a_h nu^2 x_h + a_k x_k = 0`. Eliminating `x_k` must leave exactly
    /// `a_i x_i^3 + a_j x_j^3`, a product of three lines through `P`.
    fn verify_eckardt(&self, i: usize, j: usize, h: usize, k: usize, nu: &CubeRootOf<F::Elem>) -> bool {
        let f = &self.field;
        let (ext, nu) = match nu {
            CubeRootOf::Explicit(v) => {
                let e = BinomialExt::new(f.clone(), 3, vec![], &[] as &[&str]);
                let v = e.embed(v.clone());
                (e, v)
            }
            CubeRootOf::Symbolic { radicand, branch } => {
                let e = BinomialExt::new(f.clone(), 3, vec![radicand.clone()], &["nu"]);
                let v = e.mul(&e.pow(&e.omega(), *branch as u64), &e.gen(0));
                (e, v)
            }
        };
        let ring = PolyRing::new(ext.clone(), &["xi", "xj", "xh"]);
        let c = |q: usize| ext.embed(self.a[q].clone());
        let Ok(slope) = ext.div(&ext.mul(&c(h), &ext.mul(&nu, &nu)), &c(k)) else {
            return false;
        };
        let xk = ring.scale(&ring.var(2), &ext.neg(&slope));
        let cube = |p: &crate::poly::Poly<BinomialExt<F>>, q: usize| ring.scale(&ring.pow(p, 3), &c(q));
        let restricted = [
            cube(&ring.var(0), i),
            cube(&ring.var(1), j),
            cube(&ring.var(2), h),
            cube(&xk, k),
        ]
        .iter()
        .fold(ring.zero(), |acc, p| ring.add(&acc, p));
        let expected = ring.add(&cube(&ring.var(0), i), &cube(&ring.var(1), j));
        restricted == expected
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rationality {
    Rational,
    NotRational,
    Inconclusive,
}

/// `a_i a_j / (a_h a_k)` for one partition.
#[derive(Clone, Debug, PartialEq)]
pub struct Pairing<E> {
    pub partition: Partition,
    pub value: E,
    pub test: CubeTest,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalityResult<E> {
    pub verdict: Rationality,
    pub pairings: Vec<Pairing<E>>,
    /// The rational point used, if any.
    pub point: Option<[E; 4]>,
    pub certificate: String,
}

impl<F: Field> DiagonalCubic<F> {
    /// Decides rationality over the coefficient field from the pairing
    /// cube tests and a known rational point. Without a supplied point,
    /// `(1, 1, 1, 1)` is used when the coefficients sum to zero.
    pub fn rationality_test(&self, point: Option<&[F::Elem; 4]>) -> Result<RationalityResult<F::Elem>, SurfaceError> {
        self.require_smooth()?;
        let f = &self.field;
        let point = match point {
            Some(p) => {
                if p.iter().all(|c| f.is_zero(c)) {
                    return Err(SurfaceError::ZeroPoint);
                }
                if !self.contains(p) {
                    return Err(SurfaceError::NotOnSurface);
                }
                Some(p.clone())
            }
            None => {
                let ones: [F::Elem; 4] = std::array::from_fn(|_| f.one());
                self.contains(&ones).then_some(ones)
            }
        };
        let mut pairings = Vec::new();
        for part in PARTITIONS {
            let Partition { first: (i, j), second: (h, k) } = part;
            let value = f.div(&f.mul(&self.a[i], &self.a[j]), &f.mul(&self.a[h], &self.a[k]))?;
            let test = f.is_cube(&value)?;
            pairings.push(Pairing { partition: part, value, test });
        }
        let cube = pairings.iter().find(|p| p.test == CubeTest::Cube);
        let (verdict, certificate) = if let Some(c) = cube {
            let pattern = self.sigma_pattern(&c.partition)?;
            if point.is_some() {
                (
                    Rationality::Rational,
                    format!("pairing {} is a cube; {pattern}; rational point known", c.partition.label()),
                )
            } else {
                (
                    Rationality::Inconclusive,
                    format!("pairing {} is a cube but no rational point is known", c.partition.label()),
                )
            }
        } else if pairings.iter().all(|p| p.test == CubeTest::NotCube) {
            (
                Rationality::NotRational,
                "no pairing a_i a_j / (a_h a_k) is a cube".to_string(),
            )
        } else {
            (Rationality::Inconclusive, "a pairing cube test is undecided".to_string())
        };
        Ok(RationalityResult {
            verdict,
            pairings,
            point,
            certificate,
        })
    }

    /// Which configuration of skew lines a cube pairing provides: the
    /// pairing of `{i,j}{h,k}` is the inverse of `r_1 r_2` or `r_1 / r_2`
    /// for the other two partitions.
    fn sigma_pattern(&self, pairing: &Partition) -> Result<String, SurfaceError> {
        for fam in self.k_rational_lines()? {
            if fam.partition == *pairing {
                continue;
            }
            match fam.orbits {
                OrbitStructure::Singletons => {
                    return Ok(format!("three pairwise skew rational lines in {}", fam.partition.label()))
                }
                OrbitStructure::DisjointTriples => {
                    return Ok(format!("a Galois orbit of three skew lines in {}", fam.partition.label()))
                }
                _ => {}
            }
        }
        Ok("pattern undetermined".to_string())
    }
}

/// The points `(z_1, z_2, z_3, 1)` with every `z_i` a cube root of unity.
pub fn unit_points<F: Field>(f: &F) -> Vec<[F::Elem; 4]> {
    let w = f.omega();
    let roots = [f.one(), w.clone(), f.mul(&w, &w)];
    let mut out = Vec::with_capacity(27);
    for a in &roots {
        for b in &roots {
            for c in &roots {
                out.push([a.clone(), b.clone(), c.clone(), f.one()]);
            }
        }
    }
    out
}

/// The coefficients `(a, b, c, -(a + b + c))` of the fibre surface at
/// `(s3, s4)`, with `a = (s3 - s4) s3 s4`, `b = -(s3 - 1) s3`, `c = (s4 - 1) s4`.
pub fn fibre_coefficients<F: Field>(f: &F, s3: &F::Elem, s4: &F::Elem) -> [F::Elem; 4] {
    let one = f.one();
    let a = f.mul(&f.mul(&f.sub(s3, s4), s3), s4);
    let b = f.neg(&f.mul(&f.sub(s3, &one), s3));
    let c = f.mul(&f.sub(s4, &one), s4);
    let sum = f.add(&f.add(&a, &b), &c);
    [a, b, c, f.neg(&sum)]
}

/// The fibre surface over `K = k(s3, s4)`.
pub fn paper_surface<F: Field>(base: F) -> DiagonalCubic<RatFuncField<F>> {
    let k = RatFuncField::new(PolyRing::new(base, &["s3", "s4"]));
    let a = fibre_coefficients(&k, &k.var(0), &k.var(1));
    DiagonalCubic::new(k, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{fp_with_omega, CycloField};

    fn fermat() -> DiagonalCubic<CycloField> {
        let q = CycloField;
        DiagonalCubic::new(q.clone(), [q.one(), q.one(), q.one(), q.one()])
    }

    #[test]
    fn smoothness() {
        let q = CycloField;
        assert!(fermat().is_smooth());
        assert!(!DiagonalCubic::new(q.clone(), [q.one(), q.one(), q.one(), q.zero()]).is_smooth());
        assert!(paper_surface(CycloField).is_smooth());
    }

    #[test]
    fn fermat_lines_are_rational() {
        let s = fermat();
        let lines = s.lines27().unwrap();
        assert_eq!(lines.len(), 27);
        assert!(lines.iter().all(|l| l.is_explicit() && s.line_on_surface(l)));
        let q = CycloField;
        let minus = [q.from_i64(-1), q.neg(&q.omega()), q.neg(&q.mul(&q.omega(), &q.omega()))];
        for l in &lines {
            assert!(minus.contains(l.lambda.explicit().unwrap()));
        }
        let fams = s.k_rational_lines().unwrap();
        assert!(fams.iter().all(|f| f.rational_lines.len() == 9 && f.orbits == OrbitStructure::Singletons));
    }

    #[test]
    fn paper_surface_has_no_rational_line() {
        let s = paper_surface(CycloField);
        let fams = s.k_rational_lines().unwrap();
        assert!(fams.iter().all(|f| f.rational_lines.is_empty()));
        for l in s.lines27().unwrap() {
            assert!(s.line_on_surface(&l));
        }
    }

    #[test]
    fn explicit_cubes() {
        let q = CycloField;
        let s = DiagonalCubic::new(q.clone(), [1, 8, 1, 8].map(|c| q.from_i64(c)));
        let fams = s.k_rational_lines().unwrap();
        assert_eq!(fams[0].rational_lines.len(), 9);
    }

    #[test]
    fn disjointness_in_one_partition() {
        let s = fermat();
        let lines = s.lines27().unwrap();
        let (a, b) = (&lines[0], &lines[4]);
        assert_ne!(a.lambda, b.lambda);
        assert_ne!(a.mu, b.mu);
        assert_eq!(s.lines_disjoint(a, b), Some(true));
        assert_eq!(s.lines_disjoint(a, a), Some(false));
        assert_eq!(s.lines_disjoint(&lines[0], &lines[1]), Some(false));
    }

    #[test]
    fn each_line_meets_ten_over_fp() {
        let fp = fp_with_omega(61).unwrap();
        // cubes: 1, 8, 27, 64 = 3
        let s = DiagonalCubic::new(fp, [1, 8, 27, 3]);
        let lines = s.lines27().unwrap();
        for a in &lines {
            assert!(s.line_on_surface(a));
            let meets = lines
                .iter()
                .filter(|b| *b != a && s.lines_disjoint(a, b) == Some(false))
                .count();
            assert_eq!(meets, 10);
        }
    }

    #[test]
    fn eckardt_points_fermat() {
        let s = fermat();
        let pts = s.eckardt_points().unwrap();
        assert_eq!(pts.len(), 18);
        assert!(pts.iter().all(|p| p.verified));
        let q = CycloField;
        let target = [q.zero(), q.zero(), q.one(), q.from_i64(-1)];
        let found = pts.iter().any(|p| {
            p.coordinates(&q).is_some_and(|c| {
                // projectively equal to (0, 0, 1, -1)
                q.mul(&c[2], &target[3]) == q.mul(&c[3], &target[2]) && q.is_zero(&c[0]) && q.is_zero(&c[1])
            })
        });
        assert!(found);
    }

    #[test]
    fn symbolic_eckardt_points_verify() {
        let s = paper_surface(CycloField);
        let pts = s.eckardt_points().unwrap();
        assert_eq!(pts.len(), 18);
        assert!(pts.iter().all(|p| p.verified && p.rational == CubeTest::NotCube));
        // unit points have no zero coordinate
        assert!(unit_points(s.field()).iter().all(|u| u.iter().all(|c| !s.field().is_zero(c))));
    }

    #[test]
    fn rationality_examples() {
        let q = CycloField;
        let s = fermat();
        let pt = [q.one(), q.from_i64(-1), q.zero(), q.zero()];
        let r = s.rationality_test(Some(&pt)).unwrap();
        assert_eq!(r.verdict, Rationality::Rational);

        let s = paper_surface(CycloField);
        let r = s.rationality_test(None).unwrap();
        assert_eq!(r.verdict, Rationality::NotRational);
        assert!(r.pairings.iter().all(|p| p.test == CubeTest::NotCube));
        assert!(r.point.is_some());
        for u in unit_points(s.field()) {
            assert!(s.contains(&u));
        }

        let k = RatFuncField::new(PolyRing::new(CycloField, &["t"]));
        let s = DiagonalCubic::new(k.clone(), [k.one(), k.one(), k.one(), k.var(0)]);
        let pt = [k.one(), k.from_i64(-1), k.zero(), k.zero()];
        let r = s.rationality_test(Some(&pt)).unwrap();
        assert_eq!(r.verdict, Rationality::NotRational);
    }

    #[test]
    fn fourth_coefficient_is_minus_the_sum() {
        let s = paper_surface(CycloField);
        let k = s.field();
        let sum = k.add(&k.add(s.coeff(0), s.coeff(1)), s.coeff(2));
        assert_eq!(s.coeff(3), &k.neg(&sum));
    }
}
