use qlzero::hecke::{hecke_suite, r_apply};
use qlzero::report::Status;
use qlzero::ring::{qm, LaurentPoly};
use qlzero::tensor::TensorPoly;
use qlzero::window::Window;

#[test]
fn suite_three_slots_all_pass() {
    let rep = hecke_suite(3, Window::new(-3, 0).unwrap()).unwrap();
    assert_eq!(rep.len(), 7);
    for r in &rep.records {
        assert_eq!(r.status, Status::Pass, "{r:?}");
    }
}

#[test]
fn r_on_equal_signs_has_expected_factors() {
    let x = TensorPoly::vector("++");
    let (num, den) = r_apply(&x, 1, 2).unwrap();
    let z1 = LaurentPoly::var(2, 1);
    let z2 = LaurentPoly::var(2, 2);
    // numerator ∝ (z - q^2) and denominator ∝ (1 - q^2 z), z = z2/z1
    let n = num.component(&qlzero::tensor::SignString::parse("++").unwrap());
    assert_eq!(n, (&z2 - &z1.scale(&qm(1, 2))).scale(&qm(-1, -1)));
    assert_eq!(den, (&z1 - &z2.scale(&qm(1, 2))).scale(&qm(-1, -1)));
}

#[test]
fn r_at_unit_ratio_is_identity_on_singlet() {
    let s = TensorPoly::singlet();
    let (num, den) = r_apply(&s, 1, 2).unwrap();
    let at_one = |p: &LaurentPoly| p.specialize(2, 1, &qm(1, 0)).unwrap();
    let n1 = num.map_coeffs(|f| Ok(at_one(f))).unwrap();
    let d1 = at_one(&den);
    let sv = s.map_coeffs(|f| Ok(at_one(f))).unwrap();
    assert!(n1.sub(&sv.mul_poly(&d1)).is_zero());
}
