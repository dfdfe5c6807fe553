//! Small dense linear algebra over a field.

use crate::fields::Field;

/// Reduces `rows` in place to row echelon form; returns the pivot count
/// and the determinant sign-and-pivot product (meaningful for square input).
fn eliminate<F: Field>(f: &F, m: &mut [Vec<F::Elem>]) -> (usize, F::Elem) {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut det = f.one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !f.is_zero(&m[i][c])) else {
            det = f.zero();
            continue;
        };
        if p != r {
            m.swap(p, r);
            det = f.neg(&det);
        }
        det = f.mul(&det, &m[r][c]);
        let inv = f.inv(&m[r][c]).expect("pivot is nonzero");
        for i in r + 1..nrows {
            if f.is_zero(&m[i][c]) {
                continue;
            }
            let q = f.mul(&m[i][c], &inv);
            for j in c..ncols {
                let t = f.mul(&q, &m[r][j]);
                m[i][j] = f.sub(&m[i][j], &t);
            }
        }
        r += 1;
    }
    if r < nrows {
        det = f.zero();
    }
    (r, det)
}

pub fn rank<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m = rows.to_vec();
    eliminate(f, &mut m).0
}

pub fn determinant<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> F::Elem {
    assert!(rows.iter().all(|r| r.len() == rows.len()), "square matrix expected");
    let mut m = rows.to_vec();
    eliminate(f, &mut m).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::prime_field;

    #[test]
    fn rank_and_det() {
        let f = prime_field(7).unwrap();
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&f, &m), 2);
        assert_eq!(determinant(&f, &m), 0);
        let m = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(determinant(&f, &m), 6);
        assert_eq!(rank(&f, &[vec![0, 0, 1]]), 1);
        assert_eq!(rank(&f, &[vec![0, 0, 0]]), 0);
    }
}
