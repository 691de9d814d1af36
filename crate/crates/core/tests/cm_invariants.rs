use nkit_core::algebraic::AlgebraicNumber;
use nkit_core::cm::{
    class_polynomial, cm_profile, cm_profile_row, fundamental_discriminants, reduced_forms,
    weighted_exponent_probe,
};
use nkit_core::heights::weil_height;
use std::f64::consts::PI;

#[test]
fn form_count_is_class_polynomial_degree() {
    for d in fundamental_discriminants(400) {
        let h = class_polynomial(d).unwrap();
        assert_eq!(h.deg(), reduced_forms(d).unwrap().len(), "D = {d}");
        assert!(h.lc() == 1.into());
    }
}

#[test]
fn heights_agree_across_roots_and_code_paths() {
    for d in [-23i64, -31, -39, -47, -71] {
        let h = class_polynomial(d).unwrap();
        let roots = AlgebraicNumber::roots_of(&h).unwrap();
        let hs: Vec<_> = roots.iter().map(|r| weil_height(r, 96).unwrap()).collect();
        for x in &hs[1..] {
            assert!(x.overlaps(&hs[0]));
            assert!((x.mid_f64() - hs[0].mid_f64()).abs() < 1e-20);
        }
        let row = cm_profile_row(d, 96).unwrap();
        assert!(row.height.overlaps(&hs[0]), "D = {d}");
    }
}

#[test]
fn house_ratio_coverage() {
    let discs: Vec<i64> = fundamental_discriminants(20_000).into_iter().filter(|d| *d < -4).collect();
    let rows = cm_profile(&discs, 64).unwrap();
    for r in &rows {
        let x = r.ratio_house.mid_f64();
        assert!(x > 0.0 && x <= PI * 1.25, "D = {}: {x}", r.disc);
    }
    let mut top: Vec<f64> = rows.iter().filter(|r| r.disc <= -2000).map(|r| r.ratio_house.mid_f64()).collect();
    top.sort_by(f64::total_cmp);
    assert!(top[top.len() / 2] > 0.8 * PI);
    let probe0 = weighted_exponent_probe(&rows, 0.0).unwrap();
    assert!(probe0.trend_slope > 0.0);
    let mid: Vec<_> = rows.iter().filter(|r| (1000..=10_000).contains(&r.disc.abs())).cloned().collect();
    let probe2 = weighted_exponent_probe(&mid, -2.0).unwrap();
    assert!(probe2.trend_slope < 0.0);
    assert!(weighted_exponent_probe(&rows[..1], 0.0).is_err());
}
