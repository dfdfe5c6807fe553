//! Inputs shared by the benchmarks.

use cubicfold::fields::{CycloField, CycloRat, Field};
use cubicfold::poly::{Poly, PolyRing};
use cubicfold::tower::{Tower, TowerElem};

/// `2 + y1^5 y2 + x1 y1^2 y2^4`, inverted through the tower.
pub fn tower_element(t: &Tower<CycloField>) -> TowerElem<CycloRat> {
    let k = t.field();
    let q = t.coeffs();
    let a = k.add(&k.from_i64(2), &k.mul(&k.pow(&t.y(1), 5), &t.y(2)));
    let b = k.mul(&k.mul(&k.pow(&t.y(1), 2), &k.pow(&t.y(2), 4)), &t.coeff(q.var(0)));
    k.add(&a, &b)
}

/// Two products sharing `(s + omega t + 1/2)^2` in `Q(omega)[s, t]`.
pub fn gcd_pair() -> (PolyRing<CycloField>, Poly<CycloField>, Poly<CycloField>) {
    let r = PolyRing::new(CycloField, &["s", "t"]);
    let (s, t) = (r.var(0), r.var(1));
    let w = r.constant(CycloRat::omega());
    let half = r.constant(CycloRat::from_int(2).inv().expect("2 is invertible"));
    let c = r.add(&r.add(&s, &r.mul(&w, &t)), &half);
    let a = r.mul(&r.pow(&c, 3), &r.pow(&r.sub(&s, &t), 4));
    let b = r.mul(&r.pow(&c, 2), &r.pow(&r.add(&s, &r.from_i64(3)), 5));
    (r, a, b)
}
