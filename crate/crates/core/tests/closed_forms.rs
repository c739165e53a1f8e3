use weylosc::asymptotics::eval_asymptotic;
use weylosc::derivatives::derivative;
use weylosc::oracle::{trace_pair, RadialSymbol};
use weylosc::projections::{projection_symbol, residue_limit, spectral_sum};
use weylosc::symbol::coeff_ck;
use weylosc::{c, cr, eval, eval_with, Error, Method, MethodChoice, ProblemPoint, ProjectionIndex};

fn f20(rho: f64) -> f64 {
    -(-rho).exp_m1() / rho
}

#[test]
fn two_dimensional_closed_form_all_routes() {
    let p = ProblemPoint::new(2, cr(0.0), 1.0).unwrap();
    for m in [Method::Quadrature, Method::Series, Method::Confluent, Method::BesselInverse, Method::ElementaryEven] {
        let r = eval_with(&p, m).unwrap();
        assert!((r.value - f20(1.0)).norm() < 1e-10, "{m}: {}", r.value);
    }
}

#[test]
fn values_at_origin() {
    let at0 = |d| eval(&ProblemPoint::new(d, cr(0.0), 0.0).unwrap(), MethodChoice::Auto).unwrap().value;
    assert!((at0(2) - 1.0).norm() < 1e-14);
    assert!((at0(1) - std::f64::consts::FRAC_PI_2).norm() < 1e-14);
    assert!((at0(3) - std::f64::consts::FRAC_PI_4).norm() < 1e-14);
}

#[test]
fn series_coefficients() {
    assert!((coeff_ck(2, cr(0.0), 0).unwrap() - 1.0).norm() < 1e-15);
    assert!((coeff_ck(2, cr(0.0), 1).unwrap() + 0.5).norm() < 1e-15);
    assert!((coeff_ck(1, cr(0.0), 2).unwrap() - std::f64::consts::FRAC_PI_4).norm() < 1e-14);
}

#[test]
fn four_dimensional_elementary() {
    let r = eval_with(&ProblemPoint::new(4, cr(0.0), 1.0).unwrap(), Method::ElementaryEven).unwrap();
    assert!((r.value.re - 0.4715178).abs() < 1e-6);
}

#[test]
fn large_rho_leading_term() {
    let p = ProblemPoint::new(1, cr(0.5), 100.0).unwrap();
    let r = eval(&p, MethodChoice::Auto).unwrap();
    assert!((r.value.re * 100.0 - 1.0).abs() < 0.02);
    let a = eval_asymptotic(&ProblemPoint::new(2, cr(0.0), 50.0).unwrap(), 2).unwrap();
    assert!((a.value - 0.02).norm() < 1e-15);
}

#[test]
fn first_derivative_of_closed_form() {
    let r = derivative(&ProblemPoint::new(2, cr(0.0), 1.0).unwrap(), 1).unwrap();
    assert!((r.value.re - (2.0 * (-1f64).exp() - 1.0)).abs() < 1e-10);
}

#[test]
fn projections_and_residues() {
    let p10 = ProjectionIndex::new(1, 0).unwrap();
    assert_eq!(projection_symbol(p10, 0.0), 2.0);
    let r = residue_limit(p10, 1.0, 1e-3).unwrap();
    assert!((r.value.re - 2.0 * (-1f64).exp()).abs() < 1e-6);
    let p21 = ProjectionIndex::new(2, 1).unwrap();
    assert!((projection_symbol(p21, 0.5) + 4.0 * (-0.5f64).exp()).abs() < 1e-12);
    let s = spectral_sum(1, cr(-1.0), 1.0, 200).unwrap();
    let f = eval(&ProblemPoint::new(1, cr(-1.0), 1.0).unwrap(), MethodChoice::Auto).unwrap();
    assert!((s.averaged - f.value).norm() < 1e-6);
}

#[test]
fn trace_pairings() {
    let f10 = RadialSymbol::resolvent(1, cr(0.0), MethodChoice::Auto).unwrap();
    let p0 = trace_pair(&f10, ProjectionIndex::new(1, 0).unwrap()).unwrap();
    assert!((p0.value - 1.0).norm() < 1e-9);
    let p3 = trace_pair(&f10, ProjectionIndex::new(1, 3).unwrap()).unwrap();
    assert!((p3.value - 1.0 / 7.0).norm() < 1e-8);
    let f20 = RadialSymbol::resolvent(2, cr(0.0), MethodChoice::Auto).unwrap();
    let q0 = trace_pair(&f20, ProjectionIndex::new(2, 0).unwrap()).unwrap();
    assert!((q0.value - 0.5).norm() < 1e-9);
}

#[test]
fn spectrum_is_rejected() {
    assert!(matches!(ProblemPoint::new(3, cr(5.0), 1.0), Err(Error::Pole { .. })));
    assert!(ProblemPoint::new(3, c(5.0, 1e-3), 1.0).is_ok());
    assert!(matches!(ProblemPoint::new(0, cr(0.0), 1.0), Err(Error::Domain(_))));
}
