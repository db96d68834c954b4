use lauricella::coeffs::SpecialPoint;
use lauricella::fdeval::{EvalOptions, Method, QuadConfig};
use lauricella::rational::ratio;
use lauricella::relations::json::RelationDoc;
use lauricella::relations::*;
use lauricella::special::beta;
use lauricella::{Error, ExactRational, FdParams, FdParamsF64, FdParamsQ};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> ExactRational {
    ratio(n, d).unwrap()
}

fn pf(a: f64, c: f64, b: &[f64], x: &[f64]) -> FdParamsF64 {
    FdParams::new(a, c, b.to_vec(), x.to_vec()).unwrap()
}

fn series(rel: &RelationF64Like) -> ResidualReport {
    residual(rel, Method::Series, &EvalOptions::default(), 1e-9).unwrap()
}

type RelationF64Like = Relation<f64>;

fn assert_pass(rep: &ResidualReport) {
    assert!(rep.pass, "{rep:#?}");
}

#[test]
fn family_a_without_variables_is_a_beta_recurrence() {
    let p = pf(0.7, 2.3, &[], &[]);
    let rel = relation_a(0, &p).unwrap();
    let terms = rel.materialize();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0].coeff, 0.7);
    assert_eq!(terms[1].coeff, -2.3);
    assert_eq!(terms[0].beta, Some((0.7, 2.3 - 0.7)));
    assert_eq!(terms[1].beta, Some((1.7, 2.3 - 0.7)));
    let rep = residual(&rel, Method::Series, &EvalOptions::default(), 1e-12).unwrap();
    assert_pass(&rep);
}

#[test]
fn family_a_examples() {
    assert_pass(&series(&relation_a(0, &pf(0.9, 2.1, &[0.7], &[0.4])).unwrap()));
    let pq: FdParamsQ = FdParams::new(q(3, 4), q(5, 2), vec![q(1, 3), q(-6, 5)], vec![q(1, 2), q(-2, 7)]).unwrap();
    let rel = relation_a(2, &pq).unwrap();
    assert_eq!(rel.terms.len(), 4);
    assert_pass(&residual(&rel, Method::Series, &EvalOptions::default(), 1e-9).unwrap());
}

#[test]
fn family_a_rejects_bad_input() {
    assert!(matches!(relation_a(-1, &pf(1.0, 2.0, &[1.0], &[0.5])), Err(Error::Domain(_))));
    assert!(relation_a(0, &pf(2.0, 1.0, &[1.0], &[0.5])).is_err());
    assert!(relation_a(0, &pf(1.0, 2.0, &[1.0], &[1.0])).is_err());
}

#[test]
fn family_b_examples() {
    let p = pf(1.4, 3.0, &[0.8], &[1.0 / 3.0]);
    let rel = relation_b(-1, &0.5, &p).unwrap();
    assert_eq!(rel.terms.len(), 4);
    for (k, t) in rel.materialize().iter().enumerate() {
        assert_eq!(t.params.n_vars(), 2);
        assert_eq!(t.params.x[1], 0.5);
        assert_eq!(t.params.b[1], (1 - k as i64 + 1) as f64);
        assert!(t.beta.is_none());
    }
    assert_pass(&series(&rel));
    assert_pass(&series(&relation_b(-2, &-0.7, &pf(0.6, 2.2, &[1.5, -0.4], &[0.3, -0.6])).unwrap()));
}

#[test]
fn family_b_guards_point_to_other_families() {
    let p = pf(1.4, 3.0, &[0.8, 0.2], &[0.25, 0.5]);
    let msg = relation_b(-1, &0.5, &p).unwrap_err().to_string();
    assert!(msg.contains("family D"), "{msg}");
    let msg = relation_b(-1, &1.0, &p).unwrap_err().to_string();
    assert!(msg.contains("family C"), "{msg}");
    assert!(relation_b(-1, &0.0, &p).is_err());
    assert!(relation_b(-1, &1.5, &p).is_err());
    assert!(relation_b(0, &0.3, &p).is_err());
}

#[test]
fn family_b_extended_marks_nonnegative_n() {
    let p = pf(1.4, 3.0, &[0.8], &[0.25]);
    let rel = relation_b_extended(1, &0.5, &p).unwrap();
    assert!(rel.extended);
    assert!(!relation_b_extended(-1, &0.5, &p).unwrap().extended);
    // the integral identity behind it has no sign restriction
    let rep = series(&rel);
    assert!(rep.relative_residual.unwrap() < 1e-9, "{rep:#?}");
}

#[test]
fn family_b_drops_zero_coordinates() {
    let p = pf(1.4, 3.0, &[0.8, 2.0], &[0.25, 0.0]);
    let rel = relation_b(-1, &0.5, &p).unwrap();
    assert_eq!(rel.params.n_vars(), 1);
    assert_eq!(rel.terms.len(), 4);
    assert_pass(&series(&rel));
}

#[test]
fn family_c_examples() {
    assert_pass(&series(&relation_c(0, &pf(0.8, 1.9, &[1.3], &[-0.45])).unwrap()));
    assert_pass(&series(&relation_c(-1, &pf(0.8, 2.4, &[1.3, 0.4], &[-0.45, 0.6])).unwrap()));
    assert!(relation_c(-1, &pf(0.8, 1.5, &[1.3], &[-0.45])).is_err());
}

#[test]
fn family_c_without_variables_is_exact_in_beta() {
    // -n B(a, c+n-a) + ... reduces to the recurrence c B(a, c-a+1) = (c-a) B(a, c-a)
    let pq: FdParamsQ = FdParams::new(q(3, 5), q(12, 5), vec![], vec![]).unwrap();
    let rel = relation_c(0, &pq).unwrap();
    let terms = rel.materialize();
    assert_eq!(terms.len(), 2);
    let (a, c) = (0.6f64, 2.4f64);
    let lhs = terms[0].coeff_f64() * beta(a, c - a).unwrap() + terms[1].coeff_f64() * beta(a, c + 1.0 - a).unwrap();
    assert!(lhs.abs() < 1e-13 * beta(a, c - a).unwrap());
    assert_pass(&residual(&rel, Method::Series, &EvalOptions::default(), 1e-12).unwrap());
}

trait CoeffF64 {
    fn coeff_f64(&self) -> f64;
}

impl CoeffF64 for ConcreteTerm<ExactRational> {
    fn coeff_f64(&self) -> f64 {
        use lauricella::Scalar;
        self.coeff.as_f64()
    }
}

#[test]
fn family_d_examples() {
    let rel = relation_d(0, 1, &pf(1.1, 2.7, &[0.6], &[0.5])).unwrap();
    for (k, t) in rel.materialize().iter().enumerate() {
        assert_eq!(t.params.b[0], 0.6 - k as f64);
    }
    assert_pass(&series(&rel));
    let pq: FdParamsQ = FdParams::new(q(7, 10), q(13, 5), vec![q(1, 2), q(9, 4)], vec![q(-1, 3), q(3, 5)]).unwrap();
    assert_pass(&residual(&relation_d(1, 2, &pq).unwrap(), Method::Series, &EvalOptions::default(), 1e-9).unwrap());
    assert_pass(&series(&relation_d(2, 2, &pf(0.7, 2.6, &[-1.0, -1.0, -1.0], &[0.2, -0.5, 0.7])).unwrap()));
}

#[test]
fn family_d_index_after_zero_drop() {
    let p = pf(1.1, 2.7, &[0.6, 5.0, 1.2], &[0.5, 0.0, -0.3]);
    let rel = relation_d(1, 3, &p).unwrap();
    assert_eq!(rel.i, Some(2));
    assert_eq!(rel.p, Some(-0.3));
    assert_pass(&series(&rel));
    assert!(relation_d(0, 2, &p).is_err());
    assert!(relation_d(0, 4, &p).is_err());
    assert!(relation_d(0, 0, &p).is_err());
}

#[test]
fn integral_identities_by_quadrature() {
    let cfg = QuadConfig::default();
    let p1 = pf(0.9, 2.1, &[0.7], &[0.4]);
    let rep = verify_integral_identity(&IntegralIdentity::Calbp { n: 0 }, &p1, &cfg, 1e-8).unwrap();
    assert_pass(&rep);
    let rep = verify_integral_identity(&IntegralIdentity::Calpol { n: -1, p: 0.4 }, &pf(1.3, 2.9, &[0.7], &[-0.6]), &cfg, 1e-8).unwrap();
    assert_pass(&rep);
    let p2 = pf(1.2, 3.1, &[0.4, -0.9], &[0.35, -0.5]);
    let rep = verify_integral_identity(&IntegralIdentity::Calpol0 { n: 1, point: SpecialPoint::X(0) }, &p2, &cfg, 1e-8).unwrap();
    assert_pass(&rep);
    let rep = verify_integral_identity(&IntegralIdentity::Calpol0 { n: 2, point: SpecialPoint::One }, &p2, &cfg, 1e-8).unwrap();
    assert_pass(&rep);
}

#[test]
fn pfaff_examples() {
    let opts = EvalOptions::default();
    let rep = pfaff_first(&pf(1.0, 2.0, &[1.0], &[0.5]), Method::Auto, &opts, 1e-9).unwrap();
    assert_pass(&rep);
    let rep = pfaff_first(&pf(0.8, 2.5, &[0.3, 1.7], &[0.0, 0.0]), Method::Series, &opts, 1e-15).unwrap();
    assert_eq!(rep.residual, 0.0);
    let rep = pfaff_first(&pf(0.8, 2.5, &[0.3, 1.7], &[0.2, 0.45]), Method::Series, &opts, 1e-9).unwrap();
    assert_pass(&rep);
    let rep = pfaff_second(&pf(0.8, 2.5, &[0.3, 1.7], &[0.3, 0.5]), 1, Method::Series, &opts, 1e-9).unwrap();
    assert_pass(&rep);
    let rep = pfaff_second(&pf(0.8, 2.5, &[0.3], &[0.4]), 1, Method::Series, &opts, 1e-9).unwrap();
    assert_pass(&rep);
    let rep = pfaff_second(&pf(0.8, 2.5, &[0.3, 1.1], &[0.0, 0.4]), 1, Method::Series, &opts, 1e-15).unwrap();
    assert!(rep.residual.abs() <= 1e-15 * rep.scale, "{rep:#?}");
}

#[test]
fn pfaff_second_transformed_parameters() {
    let pq: FdParamsQ = FdParams::new(q(1, 2), q(3, 1), vec![q(1, 3), q(2, 3), q(1, 1)], vec![q(1, 2), q(1, 4), q(-1, 1)]).unwrap();
    let t = pfaff_second_transform(&pq, 2).unwrap();
    assert_eq!(t.params.b, vec![q(3, 1) - q(2, 1), q(1, 3), q(1, 1)]);
    // y_i = -x_i/(1-x_i), z_j = (x_j - x_i)/(1 - x_i)
    assert_eq!(t.params.x, vec![q(-1, 3), q(1, 3), q(-5, 3)]);
    assert_eq!(t.prefactor, vec![(q(3, 4), -q(1, 2))]);
}

#[test]
fn contiguous_examples() {
    let opts = EvalOptions::default();
    let empty = pf(0.6, 1.7, &[], &[]);
    assert_pass(&contiguous_residual(Contiguous::First, &empty, Method::Series, &opts, 1e-12).unwrap());
    let one = pf(0.6, 1.7, &[1.2], &[0.55]);
    assert_pass(&contiguous_residual(Contiguous::First, &one, Method::Series, &opts, 1e-9).unwrap());
    assert_pass(&contiguous_residual(Contiguous::Second(1), &one, Method::Series, &opts, 1e-9).unwrap());
    assert_pass(&contiguous_residual(Contiguous::Third(-0.3), &one, Method::Series, &opts, 1e-9).unwrap());
    assert!(contiguous(Contiguous::Third(0.55), &one).is_err());
    assert!(contiguous(Contiguous::Third(1.0), &one).is_err());
    assert!(contiguous(Contiguous::<f64>::Second(2), &one).is_err());
}

#[test]
fn differential_relation_examples() {
    let collapsed = diff_relation(&pf(1.5, 3.2, &[0.0, 0.0], &[0.4, -0.2])).unwrap();
    let rep = residual(&collapsed, Method::Series, &EvalOptions::default(), 1e-15).unwrap();
    assert_eq!(rep.residual, 0.0);
    assert_pass(&series(&diff_relation(&pf(1.5, 3.2, &[0.9], &[0.4])).unwrap()));
    assert_pass(&series(&diff_relation(&pf(1.8, 3.6, &[0.9, -1.4, 2.2], &[0.4, -0.7, 0.15])).unwrap()));
    assert!(diff_relation(&pf(0.9, 3.2, &[0.9], &[0.4])).is_err());
}

#[test]
fn residual_degenerate_and_negative_control() {
    let mut rel = relation_a(1, &pf(0.9, 2.1, &[0.7], &[0.4])).unwrap();
    let perturbed = rel.perturbed(1, &1e-3);
    let rep = residual(&perturbed, Method::Series, &EvalOptions::default(), 1e-7).unwrap();
    assert!(!rep.pass);
    for t in &mut rel.terms {
        t.coeff = 0.0;
    }
    let rep = residual(&rel, Method::Series, &EvalOptions::default(), 1e-7).unwrap();
    assert!(rep.degenerate && !rep.pass && rep.relative_residual.is_none());
    assert_eq!(rep.scale, 0.0);
}

#[test]
fn term_errors_name_the_term() {
    // c - a shifted negative: the Euler integral does not exist for term 0
    let terms = vec![ConcreteTerm { coeff: 1.0, params: pf(2.0, 1.0, &[1.0], &[0.5]), beta: None }];
    match residual_of_terms(&terms, Method::Integral, &EvalOptions::default(), 1e-7) {
        Err(Error::Term { index: 0, .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn drop_zero_examples() {
    let p = pf(1.0, 2.0, &[1.0, 2.0, 3.0], &[0.3, 0.0, 0.5]);
    let r = drop_zero_coordinates(&p);
    assert_eq!((r.b, r.x), (vec![1.0, 3.0], vec![0.3, 0.5]));
    assert_eq!(drop_zero_coordinates(&pf(1.0, 2.0, &[1.0], &[0.0])).n_vars(), 0);
    let p = pf(1.0, 2.0, &[1.0], &[0.2]);
    assert_eq!(drop_zero_coordinates(&p), p);
}

#[test]
fn json_round_trip_matches_in_process_residual() {
    let pq: FdParamsQ = FdParams::new(q(3, 4), q(5, 2), vec![q(1, 3), q(-6, 5)], vec![q(1, 2), q(-2, 7)]).unwrap();
    let opts = EvalOptions::default();
    for rel in [relation_a(1, &pq).unwrap(), relation_b(-2, &q(2, 5), &pq).unwrap(), relation_d(1, 1, &pq).unwrap()] {
        let doc = RelationDoc::from_relation(&rel);
        let back = RelationDoc::from_json(&doc.to_json_pretty()).unwrap();
        assert_eq!(back, doc);
        let via_file = residual_of_terms(&back.concrete_terms().unwrap(), Method::Series, &opts, 1e-9).unwrap();
        let direct = residual(&rel, Method::Series, &opts, 1e-9).unwrap();
        assert_eq!(via_file, direct);
    }
    let rel = relation_c(-1, &pq.to_f64()).unwrap();
    let doc = RelationDoc::from_relation(&rel);
    let back = RelationDoc::from_json(&doc.to_json_pretty()).unwrap();
    let via_file = residual_of_terms(&back.concrete_terms().unwrap(), Method::Series, &opts, 1e-9).unwrap();
    assert_eq!(via_file, residual(&rel, Method::Series, &opts, 1e-9).unwrap());
}

#[test]
fn relation_document_shape() {
    let p = pf(0.5, 1.5, &[], &[]);
    let doc = RelationDoc::from_relation(&relation_a(0, &p).unwrap());
    let v: serde_json::Value = serde_json::from_str(&doc.to_json_pretty()).unwrap();
    assert_eq!(v["family"], "A");
    assert_eq!(v["n"], 0);
    assert!(v["p"].is_null() && v["i"].is_null());
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    assert_eq!(v["terms"][0]["beta"]["u"], 0.5);
    assert!(v.get("extended").is_none());
    let pq: FdParamsQ = FdParams::new(q(1, 2), q(3, 2), vec![], vec![]).unwrap();
    let doc = RelationDoc::from_relation(&relation_a(0, &pq).unwrap());
    let v: serde_json::Value = serde_json::from_str(&doc.to_json_pretty()).unwrap();
    assert_eq!(v["terms"][1]["coeff"], serde_json::json!({"num": "-3", "den": "2"}));
}

fn rational(lo: i64, hi: i64) -> impl Strategy<Value = ExactRational> {
    (lo..=hi).prop_map(|k| q(k, 1000))
}

fn point(n_vars: usize) -> impl Strategy<Value = FdParamsQ> {
    (
        rational(300, 3000),
        rational(100, 2500),
        prop::collection::vec(rational(-2000, 3000), n_vars),
        prop::collection::vec(rational(-800, 800).prop_filter("nonzero", |x| *x != q(0, 1)), n_vars),
    )
        .prop_map(|(a, gap, b, x)| FdParams::new(a.clone(), a + gap, b, x).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn gauss_case_of_family_a(p in point(1), n in 0i64..=3) {
        let rep = residual(&relation_a(n, &p).unwrap(), Method::Series, &EvalOptions::default(), 1e-9).unwrap();
        prop_assert!(rep.pass, "{:?}", rep);
    }

    #[test]
    fn families_hold_at_random_points((p, nv) in (1usize..=3).prop_flat_map(|nv| (point(nv), Just(nv))), seed in any::<u64>()) {
        let opts = EvalOptions::default();
        let n = (seed % 4) as i64;
        let rels = [
            relation_a(n, &p).unwrap(),
            relation_b(-1 - (seed % 3) as i64, &q(-37, 100), &p).unwrap(),
            relation_d(n - 1, 1 + (seed as usize) % nv, &p).unwrap(),
        ];
        for rel in &rels {
            let rep = residual(rel, Method::Series, &opts, 1e-9).unwrap();
            prop_assert!(rep.pass, "{:?} {:?}", rel.family, rep);
        }
        if p.c.clone() - q(1, 1) > p.a {
            let rep = residual(&relation_c(-1, &p).unwrap(), Method::Series, &opts, 1e-9).unwrap();
            prop_assert!(rep.pass, "C {:?}", rep);
        }
    }

    #[test]
    fn evaluators_agree_on_residuals(p in point(2), n in 0i64..=2) {
        let opts = EvalOptions::default();
        let rel = relation_a(n, &p).unwrap();
        let s = residual(&rel, Method::Series, &opts, 1e-7).unwrap();
        let i = residual(&rel, Method::Integral, &opts, 1e-7).unwrap();
        prop_assert_eq!(s.pass, i.pass);
        prop_assert!((s.relative_residual.unwrap() - i.relative_residual.unwrap()).abs() < 1e-6);
    }

    #[test]
    fn bridge_and_raw_quadrature_agree(p in point(2), n in 0i64..=2) {
        let rep = verify_integral_identity(&IntegralIdentity::Calbp { n }, &p, &QuadConfig::default(), 1e-7).unwrap();
        prop_assert!(rep.pass, "{:?}", rep);
        let rep = residual(&relation_a(n, &p).unwrap(), Method::Series, &EvalOptions::default(), 1e-7).unwrap();
        prop_assert!(rep.pass, "{:?}", rep);
    }

    #[test]
    fn pfaff_first_is_an_involution(p in point(3)) {
        let once = pfaff_first_transform(&p).unwrap();
        let twice = pfaff_first_transform(&once.params).unwrap();
        prop_assert_eq!(twice.params, p);
    }
}
