use proptest::prelude::*;

use cubicfold::chain::{verify_modular, ChainCheck, SampleOptions};
use cubicfold::cubicsurf::DiagonalCubic;
use cubicfold::expr::parse_expr;
use cubicfold::fields::{fp_with_omega, CubeTest, CycloField, CycloRat, Field, PrimeField};
use cubicfold::poly::{Poly, PolyRing, RatFuncField};
use cubicfold::report::{CheckRecord, Mode, Report, RunConfig, Status};
use cubicfold::sampling::{rng_for, DEFAULT_PRIME_RANGE};
use cubicfold::selftest::{axioms_hold, gcd_squarefree_holds, random_expr, round_trips, CORPUS_VARS};
use cubicfold::tower::Tower;

const P: u64 = 10_009;

fn fp() -> PrimeField {
    fp_with_omega(P).unwrap()
}

fn cyclo() -> impl Strategy<Value = CycloRat> {
    (-20i64..=20, -20i64..=20, 1i64..=9).prop_map(|(a, b, d)| {
        let q = CycloField;
        let x = q.add(&q.from_i64(a), &q.mul(&q.from_i64(b), &q.omega()));
        q.div(&x, &q.from_i64(d)).unwrap()
    })
}

type Terms = Vec<(Vec<u32>, i64)>;

fn terms(nvars: usize, max_terms: usize, max_deg: u32) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), -9i64..=9), 1..=max_terms)
}

fn build<F: Field>(r: &PolyRing<F>, t: &Terms) -> Poly<F> {
    let f = r.field().clone();
    r.from_terms(t.iter().map(|(e, c)| (e.clone(), f.from_i64(*c))))
}

fn nonconstant<F: Field>(r: &PolyRing<F>, t: &Terms) -> Poly<F> {
    let p = build(r, t);
    if p.is_constant() {
        r.add(&p, &r.var(0))
    } else {
        p
    }
}

fn nonzero_coeffs() -> impl Strategy<Value = [i64; 4]> {
    prop::array::uniform4(prop_oneof![-30i64..=-1, 1i64..=30])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn cyclotomic_field_axioms(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(axioms_hold(&CycloField, &a, &b, &c), Ok(()));
    }

    #[test]
    fn prime_field_axioms(a in 0..P, b in 0..P, c in 0..P) {
        prop_assert_eq!(axioms_hold(&fp(), &a, &b, &c), Ok(()));
    }

    #[test]
    fn reduction_is_a_homomorphism(a in cyclo(), b in cyclo()) {
        let (q, f) = (CycloField, fp());
        let r = |x: &CycloRat| x.reduce_mod(&f).unwrap();
        prop_assert_eq!(r(&q.add(&a, &b)), f.add(&r(&a), &r(&b)));
        prop_assert_eq!(r(&q.mul(&a, &b)), f.mul(&r(&a), &r(&b)));
        prop_assert_eq!(r(&q.omega()), f.omega());
    }

    #[test]
    fn gcd_and_squarefree_over_fp(a in terms(2, 3, 2), b in terms(2, 3, 2), c in terms(2, 2, 2)) {
        let r = PolyRing::new(fp(), &["s", "t"]);
        let (a, b, c) = (nonconstant(&r, &a), nonconstant(&r, &b), nonconstant(&r, &c));
        prop_assert_eq!(gcd_squarefree_holds(&r, &a, &b, &c), Ok(()));
    }

    #[test]
    fn gcd_and_squarefree_over_q_omega(a in terms(2, 2, 2), b in terms(2, 2, 2), c in terms(2, 2, 1)) {
        let r = PolyRing::new(CycloField, &["s", "t"]);
        let c = r.add(&nonconstant(&r, &c), &r.scale(&r.var(1), &CycloRat::omega()));
        let (a, b) = (nonconstant(&r, &a), nonconstant(&r, &b));
        prop_assert_eq!(gcd_squarefree_holds(&r, &a, &b, &c), Ok(()));
    }

    /// `g^3` is a cube and `g^3 s` is not, and both answers survive
    /// specialization to F_p.
    #[test]
    fn cube_oracle_agrees_with_specialization(g in terms(2, 3, 2), s3 in 1..P, s4 in 1..P) {
        let k = RatFuncField::new(PolyRing::new(CycloField, &["s", "t"]));
        let g = nonconstant(k.ring(), &g);
        let cube = k.from_poly(k.ring().pow(&g, 3));
        let f = fp();
        prop_assert_eq!(k.is_cube(&cube), Ok(CubeTest::Cube));
        let twisted = k.mul(&cube, &k.var(0));
        prop_assert_eq!(k.is_cube(&twisted), Ok(CubeTest::NotCube));
        if let Some(v) = k.eval_mod_p(&cube, &f, &[s3, s4]) {
            prop_assume!(v != 0);
            prop_assert_eq!(f.is_cube(&v), Ok(CubeTest::Cube));
        }
    }

    /// `J(g o f) = (J g o f) J f` for maps `A^2 -> A^2` over F_p.
    #[test]
    fn jacobian_chain_rule(f1 in terms(2, 3, 2), f2 in terms(2, 3, 2), g1 in terms(2, 3, 2), g2 in terms(2, 3, 2)) {
        let r = PolyRing::new(fp(), &["x", "y"]);
        let fs = [build(&r, &f1), build(&r, &f2)];
        let gs = [build(&r, &g1), build(&r, &g2)];
        let comp: Vec<Poly<PrimeField>> = gs.iter().map(|g| r.compose(g, &r, &fs).unwrap()).collect();
        let lhs = r.jacobian_det(&comp).unwrap();
        let jg = r.compose(&r.jacobian_det(&gs).unwrap(), &r, &fs).unwrap();
        let rhs = r.mul(&jg, &r.jacobian_det(&fs).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parse_print_round_trip(seed in any::<u64>()) {
        let e = random_expr(&mut rng_for(seed, "prop/expr"), 5);
        prop_assert!(round_trips(&e), "{}", e);
        let again = parse_expr(&e.to_string(), &CORPUS_VARS).unwrap();
        prop_assert_eq!(again.to_string(), e.to_string());
    }

    /// The verdict depends only on the surface, not on how it is written.
    #[test]
    fn rationality_invariant_under_scaling_and_permutation(a in nonzero_coeffs(), c in 1i64..=9, perm in Just([0usize, 1, 2, 3]).prop_shuffle()) {
        let q = CycloField;
        let s = DiagonalCubic::new(q.clone(), a.map(|x| q.from_i64(x)));
        let base = s.rationality_test(None).unwrap().verdict;
        let scaled = s.scaled(&q.from_i64(c)).rationality_test(None).unwrap().verdict;
        let permuted = s.permuted(perm).rationality_test(None).unwrap().verdict;
        prop_assert_eq!(base, scaled);
        prop_assert_eq!(base, permuted);
    }

    #[test]
    fn eighteen_eckardt_points(a in nonzero_coeffs()) {
        let f = fp();
        let s = DiagonalCubic::new(f, a.map(|x| f.elem(x)));
        let pts = s.eckardt_points().unwrap();
        prop_assert_eq!(pts.len(), 18);
        prop_assert!(pts.iter().all(|p| p.verified));
    }

    #[test]
    fn every_line_meets_ten_others(a in nonzero_coeffs()) {
        let q = CycloField;
        let s = DiagonalCubic::new(q.clone(), a.map(|x| q.from_i64(x)));
        let lines = s.lines27().unwrap();
        prop_assert!(lines.iter().all(|l| s.line_on_surface(l)));
        let counts = s.meeting_counts(&lines).unwrap();
        prop_assert!(counts.iter().all(|&m| m == 10), "{:?}", counts);
    }

    /// Report bytes do not depend on the order checks finish in.
    #[test]
    fn report_bytes_ignore_record_order(perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let recs: Vec<CheckRecord> = (0..6)
            .map(|k| CheckRecord::new(format!("check/{k}"), "x", Mode::Modular, if k == 3 { Status::Inconclusive } else { Status::Verified }))
            .collect();
        let shuffled: Vec<CheckRecord> = perm.iter().map(|&k| recs[k].clone()).collect();
        let a = Report::new("t", RunConfig::default(), recs);
        let b = Report::new("t", RunConfig::default(), shuffled);
        prop_assert_eq!(a.to_json(), b.to_json());
        prop_assert_eq!(a.exit_code(), 3);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn small_tower_inverses(c0 in 1i64..=9, c1 in -9i64..=9, e1 in 0u64..6, e2 in 0u64..6, x in any::<bool>()) {
        let t = Tower::new(CycloField, 2);
        let k = t.field();
        let mut m = k.mul(&k.pow(&t.y(1), e1), &k.pow(&t.y(2), e2));
        if x {
            m = k.mul(&m, &t.x(2));
        }
        let a = k.add(&k.from_i64(c0), &k.mul(&k.from_i64(c1), &m));
        prop_assume!(!k.is_zero(&a));
        let b = k.inv(&a).unwrap();
        prop_assert!(k.is_one(&k.mul(&a, &b)));
    }

    /// The lemma relations hold at every seeded specialization.
    #[test]
    fn lemmas_vanish_for_any_seed(seed in any::<u64>()) {
        let opts = SampleOptions { n: 4, samples: 2, prime_range: DEFAULT_PRIME_RANGE, seed };
        let recs = verify_modular(&opts, &ChainCheck::FOUR_CURVES);
        prop_assert!(recs.iter().all(|r| r.status == Status::Verified));
    }
}
