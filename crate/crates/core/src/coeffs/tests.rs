use super::*;
use crate::rational::{ratio, ExactRational};
use crate::symmpoly::elem_sym;
use proptest::prelude::*;

type Q = ExactRational;

fn q(n: i64, d: i64) -> Q {
    ratio(n, d).unwrap()
}

fn qs(v: &[(i64, i64)]) -> Vec<Q> {
    v.iter().map(|&(n, d)| q(n, d)).collect()
}

fn params(a: Q, c: Q, b: Vec<Q>, x: Vec<Q>) -> FdParams<Q> {
    FdParams::new(a, c, b, x).unwrap()
}

fn horner(coeffs: &[Q], t: &Q) -> Q {
    coeffs.iter().rev().fold(q(0, 1), |acc, c| acc * t + c)
}

fn p_direct(x: &[Q], t: &Q) -> Q {
    x.iter().fold(t * (q(1, 1) - t), |acc, xj| acc * (q(1, 1) - xj * t))
}

#[test]
fn d_small_cases() {
    assert_eq!(coeff_d::<Q>(&[]), qs(&[(0, 1), (1, 1), (-1, 1)]));
    let qq = q(3, 7);
    assert_eq!(coeff_d(std::slice::from_ref(&qq)), vec![q(0, 1), q(1, 1), -(q(1, 1) + &qq), qq]);
    // t (1-t)^3
    assert_eq!(coeff_d(&qs(&[(1, 1), (1, 1)])), qs(&[(0, 1), (1, 1), (-3, 1), (3, 1), (-1, 1)]));
}

#[test]
fn e_without_variables() {
    let p = params(q(3, 5), q(11, 4), vec![], vec![]);
    assert_eq!(coeff_e(&p), vec![q(3, 5), -q(11, 4)]);
}

#[test]
fn e_with_unit_b_drops_the_sum() {
    // W = (a - c t) Π (1 - x_j t)
    let x = qs(&[(1, 3), (-2, 5), (7, 4)]);
    let p = params(q(5, 4), q(9, 2), vec![q(1, 1); 3], x.clone());
    let mut want = vec![p.a.clone(), -p.c.clone()];
    for xj in &x {
        let mut next = vec![q(0, 1); want.len() + 1];
        for (i, c) in want.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c * xj;
        }
        want = next;
    }
    assert_eq!(coeff_e(&p), want);
}

#[test]
fn u_expansion_without_variables() {
    // t - t^2 with t = 2(1 - u)
    let p = params(q(1, 2), q(2, 1), vec![], vec![]);
    assert_eq!(coeff_d_p(&q(1, 2), &p.x).unwrap(), qs(&[(-2, 1), (6, 1), (-4, 1)]));
    assert_eq!(expand_oracle_u(&q(1, 2), &p).unwrap().d, qs(&[(-2, 1), (6, 1), (-4, 1)]));
}

#[test]
fn zero_arguments_rejected() {
    let p = params(q(1, 2), q(2, 1), qs(&[(1, 1), (1, 2)]), qs(&[(1, 3), (0, 1)]));
    assert!(coeff_d_p(&q(1, 2), &p.x).is_err());
    assert!(coeff_e_p(&q(1, 2), &p).is_err());
    assert!(coeff_p_special(SpecialPoint::One, &p).is_err());
    assert!(coeff_p_special(SpecialPoint::X(0), &p).is_err());
    assert!(expand_oracle_u(&q(1, 2), &p).is_err());
    let ok = params(q(1, 2), q(2, 1), qs(&[(1, 1)]), qs(&[(1, 3)]));
    assert!(coeff_d_p(&q(0, 1), &ok.x).is_err());
    assert!(expand_oracle_u(&q(0, 1), &ok).is_err());
    assert!(coeff_p_special(SpecialPoint::X(1), &ok).is_err());
}

#[test]
fn special_points_match_generic_examples() {
    let p1 = params(q(2, 3), q(5, 2), qs(&[(3, 4)]), qs(&[(1, 2)]));
    assert_eq!(coeff_p_special(SpecialPoint::One, &p1).unwrap(), coeffs_u(&q(1, 1), &p1).unwrap());
    let p2 = params(q(2, 3), q(5, 2), qs(&[(3, 4), (-5, 3)]), qs(&[(1, 3), (2, 3)]));
    assert_eq!(coeff_p_special(SpecialPoint::X(0), &p2).unwrap(), coeffs_u(&q(1, 3), &p2).unwrap());
    let p3 = params(q(2, 3), q(5, 2), qs(&[(-1, 1), (-1, 1)]), qs(&[(1, 3), (2, 3)]));
    let special = coeff_p_special(SpecialPoint::X(1), &p3).unwrap();
    assert_eq!(special, expand_oracle_u(&q(2, 3), &p3).unwrap());
}

#[test]
fn repeated_arguments_at_x_i() {
    // p = x_1 = x_2 makes a second root vanish as well
    let p = params(q(7, 5), q(3, 1), qs(&[(1, 2), (2, 3), (-3, 2)]), qs(&[(2, 5), (2, 5), (-1, 3)]));
    let oracle = expand_oracle_u(&q(2, 5), &p).unwrap();
    assert_eq!(coeff_p_special(SpecialPoint::X(0), &p).unwrap(), oracle);
    assert_eq!(coeff_p_special(SpecialPoint::X(1), &p).unwrap(), oracle);
    assert_eq!(oracle.d[0], q(0, 1));
}

#[test]
fn weighting_the_z_term_by_x_l_breaks_the_u_expansion() {
    // e_k(p) with the sum term multiplied by an extra x_l does not
    // reproduce W(t) in u; the unweighted form does.
    let p = params(q(3, 7) + q(1, 1), q(21, 4) + q(3, 7), qs(&[(3, 2), (-2, 3)]), qs(&[(1, 2), (-2, 5)]));
    let pp = q(1, 3);
    let n = 2i64;
    let r = shifted_roots(&pp, &p.x);
    let pref = product(&p.x) / pow(&pp, 3);
    let weighted: Vec<Q> = (0..=n + 1)
        .map(|k| {
            let v = elem_sym(n + 1 - k, &prepend(&[&pp - q(1, 1)], &r));
            let w = elem_sym(n + 1 - k, &prepend(&[q(-1, 1)], &r));
            let mut inner = p.a.clone() * v + (p.c.clone() - p.a.clone()) * w;
            for l in 0..2 {
                let z = elem_sym(n + 1 - k, &prepend(&[q(-1, 1), &pp - q(1, 1)], &without(&r, &[l])));
                inner += (q(1, 1) - &p.b[l]) * &p.x[l] * z;
            }
            &pref * inner
        })
        .collect();
    let oracle = expand_oracle_u(&pp, &p).unwrap();
    assert_ne!(weighted, oracle.e);
    assert_eq!(coeff_e_p(&pp, &p).unwrap(), oracle.e);
}

#[test]
fn oracle_degrees() {
    let p = params(q(1, 3), q(7, 3), qs(&[(1, 2), (5, 4)]), qs(&[(2, 7), (-3, 5)]));
    let t = expand_oracle_t(&p);
    assert_eq!(t.d.len(), 5);
    assert_eq!(t.e.len(), 4);
    assert_ne!(t.d[4], q(0, 1));
    assert_ne!(t.e[3], q(0, 1));
}

#[test]
fn derivative_identity_pointwise() {
    // d/dt [t^n P K] / K = n t^{n-1} P + t^n (P' + P K'/K) against
    // n t^{n-1} P + t^n W, evaluated at rational t.
    let p = params(q(4, 3), q(17, 5), qs(&[(2, 3), (-7, 4), (1, 5)]), qs(&[(1, 2), (-3, 2), (2, 7)]));
    let coeffs = expand_oracle_t(&p);
    for (tn, td) in [(1, 3), (2, 5), (5, 7), (1, 11)] {
        let t = q(tn, td);
        let one = q(1, 1);
        let pt = p_direct(&p.x, &t);
        // P' by the product rule
        let mut dp = (&one - &t) - &t;
        let mut base = &t * (&one - &t);
        for xj in &p.x {
            dp = dp * (&one - xj * &t) - &base * xj;
            base *= &one - xj * &t;
        }
        let mut log_dk = p.beta1() / &t - p.beta2() / (&one - &t);
        for (xj, al) in p.x.iter().zip(p.alpha()) {
            log_dk -= al * xj / (&one - xj * &t);
        }
        for n in 0..3i32 {
            let tn1 = if n == 0 { q(0, 1) } else { num_traits::pow(t.clone(), (n - 1) as usize) };
            let lhs = Q::from_int(n as i64) * &tn1 * &pt + num_traits::pow(t.clone(), n as usize) * (&dp + &pt * &log_dk);
            let rhs = Q::from_int(n as i64) * &tn1 * horner(&coeffs.d, &t)
                + num_traits::pow(t.clone(), n as usize) * horner(&coeffs.e, &t);
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn binomial_transform_at_p_minus_one() {
    // u = 1 + t, so d_j = Σ_k d_k(-1) C(k, j)
    let p = params(q(1, 2), q(5, 2), qs(&[(3, 2), (1, 3)]), qs(&[(1, 4), (-2, 3)]));
    let du = coeff_d_p(&q(-1, 1), &p.x).unwrap();
    let dt = coeff_d(&p.x);
    for j in 0..dt.len() {
        let mut acc = q(0, 1);
        for (k, c) in du.iter().enumerate().skip(j) {
            let binom = (0..j).fold(q(1, 1), |b, i| b * q((k - i) as i64, (i + 1) as i64));
            acc += c * binom;
        }
        assert_eq!(acc, dt[j]);
    }
}

fn arb_nonzero() -> impl Strategy<Value = Q> {
    (1i64..=60, 1i64..=20, any::<bool>()).prop_filter_map("range", |(n, d, neg)| {
        let v = q(if neg { -n } else { n }, d);
        (v <= q(3, 1) && v >= q(-3, 1)).then_some(v)
    })
}

fn arb_param() -> impl Strategy<Value = Q> {
    (-80i64..=80, 1i64..=16).prop_map(|(n, d)| q(n, d))
}

fn arb_params(n: usize) -> impl Strategy<Value = FdParams<Q>> {
    (
        arb_param(),
        arb_param(),
        prop::collection::vec(arb_param(), n),
        prop::collection::vec(arb_nonzero(), n),
    )
        .prop_map(|(a, c, b, x)| FdParams::new(a, c, b, x).unwrap())
}

fn arb_case() -> impl Strategy<Value = (FdParams<Q>, Q)> {
    (1usize..=5).prop_flat_map(|n| (arb_params(n), arb_nonzero()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn t_closed_forms_match_oracle((p, _) in arb_case()) {
        let oracle = expand_oracle_t(&p);
        prop_assert_eq!(coeffs_t(&p), oracle);
    }

    #[test]
    fn u_closed_forms_match_oracle((p, pp) in arb_case()) {
        let oracle = expand_oracle_u(&pp, &p).unwrap();
        prop_assert_eq!(coeffs_u(&pp, &p).unwrap(), oracle);
        prop_assert_eq!(coeff_e_p_with(&pp, &p, SigmaForm::Peeled).unwrap(), coeff_e_p(&pp, &p).unwrap());
    }

    #[test]
    fn special_points_match_oracle((p, _) in arb_case()) {
        let one = coeff_p_special(SpecialPoint::One, &p).unwrap();
        prop_assert_eq!(&one, &expand_oracle_u(&q(1, 1), &p).unwrap());
        prop_assert_eq!(&one, &coeffs_u(&q(1, 1), &p).unwrap());
        prop_assert_eq!(one.d[0].clone(), q(0, 1));
        for i in 0..p.n_vars() {
            let xi = coeff_p_special(SpecialPoint::X(i), &p).unwrap();
            prop_assert_eq!(&xi, &expand_oracle_u(&p.x[i], &p).unwrap());
            prop_assert_eq!(&xi, &coeffs_u(&p.x[i], &p).unwrap());
            prop_assert_eq!(xi.d[0].clone(), q(0, 1));
        }
    }

    #[test]
    fn p_has_the_expected_roots((p, pp) in arb_case()) {
        let d = coeff_d(&p.x);
        prop_assert_eq!(d[0].clone(), q(0, 1));
        prop_assert_eq!(horner(&d, &q(0, 1)), q(0, 1));
        prop_assert_eq!(horner(&d, &q(1, 1)), q(0, 1));
        for xi in &p.x {
            prop_assert_eq!(horner(&d, &(q(1, 1) / xi)), q(0, 1));
        }
        // the u-expansion composes back to P(t)
        let du = coeff_d_p(&pp, &p.x).unwrap();
        for (tn, td) in [(1, 3), (-2, 5), (7, 4)] {
            let t = q(tn, td);
            prop_assert_eq!(horner(&du, &(q(1, 1) - &pp * &t)), p_direct(&p.x, &t));
        }
    }

    #[test]
    fn float_path_tracks_exact_path((p, pp) in arb_case()) {
        let exact = coeffs_u(&pp, &p).unwrap();
        let float = coeffs_u(&pp.as_f64(), &p.to_f64()).unwrap();
        for (e, f) in exact.d.iter().chain(&exact.e).zip(float.d.iter().chain(&float.e)) {
            let e = e.as_f64();
            prop_assert!((e - f).abs() <= 1e-9 * (1.0 + e.abs()));
        }
    }
}
