//! Incidences among the 27 lines when some cube roots stay symbolic.
//!
//! Symbolic roots of different radicands are independent, so whether two
//! lines from different families meet is not determined by the lines
//! alone. Fixing `c_m` with `c_m^3 = a_m / a_4` (and `c_4 = 1`) fixes every
//! root at once: the root of `-a_j / a_i` is `-c_j / c_i` up to a power of
//! omega. Each `c_m` is written over a basis of independent cube classes,
//! where equality of monomials is decidable.

use super::{CubeRootOf, DiagonalCubic, Partition, SurfaceLine};
use crate::fields::{CubeRoot, Field};

/// `scalar * prod_b g_b^{exps_b}` with `g_b^3 = basis_b` and exponents below 3.
#[derive(Clone, Debug, PartialEq)]
struct Monomial<E> {
    scalar: E,
    exps: Vec<u8>,
}

struct Classes<'a, F: Field> {
    f: &'a F,
    basis: Vec<F::Elem>,
}

impl<F: Field> Classes<'_, F> {
    fn constant(&self, c: F::Elem) -> Monomial<F::Elem> {
        Monomial { scalar: c, exps: vec![0; self.basis.len()] }
    }

    fn mul(&self, a: &Monomial<F::Elem>, b: &Monomial<F::Elem>) -> Monomial<F::Elem> {
        let f = self.f;
        let mut scalar = f.mul(&a.scalar, &b.scalar);
        let exps = (0..self.basis.len())
            .map(|k| {
                let e = a.exps[k] + b.exps[k];
                if e >= 3 {
                    scalar = f.mul(&scalar, &self.basis[k]);
                }
                e % 3
            })
            .collect();
        Monomial { scalar, exps }
    }

    fn inv(&self, a: &Monomial<F::Elem>) -> Option<Monomial<F::Elem>> {
        let f = self.f;
        // g^-e = g^(3-e) / basis
        let mut scalar = f.inv(&a.scalar).ok()?;
        let exps = (0..self.basis.len())
            .map(|k| {
                if a.exps[k] == 0 {
                    0
                } else {
                    scalar = f.div(&scalar, &self.basis[k]).expect("basis elements are nonzero");
                    3 - a.exps[k]
                }
            })
            .collect();
        Some(Monomial { scalar, exps })
    }

    fn pad(&self, a: &mut Monomial<F::Elem>) {
        a.exps.resize(self.basis.len(), 0);
    }
}

fn exponent_vectors(n: usize) -> Vec<Vec<u8>> {
    (0..3usize.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let d = (code % 3) as u8;
                    code /= 3;
                    d
                })
                .collect()
        })
        .collect()
}

impl<F: Field> DiagonalCubic<F> {
    /// For each line, how many of the others it meets. `None` when a cube
    /// test needed to relate the roots is undecided.
    pub fn meeting_counts(&self, lines: &[SurfaceLine<F::Elem>]) -> Option<Vec<usize>> {
        let f = &self.field;
        let mut cl = Classes { f, basis: Vec::new() };
        let mut c: Vec<Monomial<F::Elem>> = Vec::with_capacity(4);
        for m in 0..3 {
            let r = f.div(&self.a[m], &self.a[3]).ok()?;
            let mut found = None;
            for exps in exponent_vectors(cl.basis.len()) {
                let g = Monomial { scalar: f.one(), exps: exps.clone() };
                let span = (0..cl.basis.len()).fold(f.one(), |acc, k| f.mul(&acc, &f.pow(&cl.basis[k], exps[k] as u64)));
                match f.cube_root(&f.div(&r, &span).ok()?) {
                    CubeRoot::Root(rho) => {
                        found = Some(cl.mul(&cl.constant(rho), &g));
                        break;
                    }
                    CubeRoot::NotCube => {}
                    CubeRoot::Unknown => return None,
                }
            }
            let root = match found {
                Some(x) => x,
                None => {
                    cl.basis.push(r);
                    for x in &mut c {
                        cl.pad(x);
                    }
                    let mut g = cl.constant(f.one());
                    *g.exps.last_mut().unwrap() = 1;
                    g
                }
            };
            c.push(root);
        }
        c.push(cl.constant(f.one()));
        for x in &mut c {
            cl.pad(x);
        }

        let coeff = |root: &CubeRootOf<F::Elem>, i: usize, j: usize| -> Option<Monomial<F::Elem>> {
            match root {
                CubeRootOf::Explicit(e) => Some(cl.constant(e.clone())),
                CubeRootOf::Symbolic { branch, .. } => {
                    let w = f.neg(&f.pow(&f.omega(), *branch as u64));
                    Some(cl.mul(&cl.constant(w), &cl.mul(&c[j], &cl.inv(&c[i])?)))
                }
            }
        };
        let mut slopes = Vec::with_capacity(lines.len());
        for l in lines {
            let Partition { first: (i, j), second: (h, k) } = l.partition;
            slopes.push((coeff(&l.lambda, i, j)?, coeff(&l.mu, h, k)?));
        }
        let one = cl.constant(f.one());
        let meets = |a: usize, b: usize| -> bool {
            let (la, lb) = (&lines[a], &lines[b]);
            if la.partition == lb.partition {
                return (slopes[a].0 == slopes[b].0) != (slopes[a].1 == slopes[b].1);
            }
            // line a as (lambda s, s, mu t, t) on its own pairs
            let Partition { first: (i, j), second: (h, k) } = la.partition;
            let mut at: [(usize, &Monomial<F::Elem>); 4] = [(0, &one); 4];
            at[i] = (0, &slopes[a].0);
            at[j] = (0, &one);
            at[h] = (1, &slopes[a].1);
            at[k] = (1, &one);
            // each equation of line b straddles the two pairs of a
            let Partition { first: (p, q), second: (u, v) } = lb.partition;
            let row = |x: usize, y: usize, slope: &Monomial<F::Elem>| {
                let mut r = [None, None];
                r[at[x].0] = Some(at[x].1.clone());
                let mut m = cl.mul(slope, at[y].1);
                m.scalar = f.neg(&m.scalar);
                r[at[y].0] = Some(m);
                r.map(|e| e.expect("straddling equation"))
            };
            let r1 = row(p, q, &slopes[b].0);
            let r2 = row(u, v, &slopes[b].1);
            cl.mul(&r1[0], &r2[1]) == cl.mul(&r1[1], &r2[0])
        };
        Some(
            (0..lines.len())
                .map(|a| (0..lines.len()).filter(|&b| b != a && meets(a, b)).count())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{fp_with_omega, CycloField};

    #[test]
    fn agrees_with_explicit_lines_over_fp() {
        let fp = fp_with_omega(103).unwrap();
        // cube coefficients split every family
        for a in [[1, 8, 27, 64], [1, 1, 1, 1], [3, 5, 7, 11]] {
            let s = DiagonalCubic::new(fp, a.map(|c| fp.elem(c)));
            let lines = s.lines27().unwrap();
            let direct: Option<Vec<usize>> = lines
                .iter()
                .map(|x| {
                    lines
                        .iter()
                        .filter(|y| *y != x)
                        .map(|y| s.lines_disjoint(x, y).map(|d| usize::from(!d)))
                        .sum::<Option<usize>>()
                })
                .collect();
            let counts = s.meeting_counts(&lines).unwrap();
            if let Some(d) = direct {
                assert_eq!(counts, d);
            }
            assert!(counts.iter().all(|&m| m == 10), "{a:?}: {counts:?}");
        }
    }

    #[test]
    fn dependent_cube_classes() {
        let q = CycloField;
        // a_m / a_4 = 1/8, 1/4, 1/2 share one class
        for a in [[1, 2, 4, 8], [2, 3, 5, 7], [1, 1, 2, 4]] {
            let s = DiagonalCubic::new(q.clone(), a.map(|c| q.from_i64(c)));
            let counts = s.meeting_counts(&s.lines27().unwrap()).unwrap();
            assert!(counts.iter().all(|&m| m == 10), "{a:?}: {counts:?}");
        }
    }
}
