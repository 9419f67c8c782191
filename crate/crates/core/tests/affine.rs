use qlzero::affine::{affine_hecke_on, affine_hecke_suite, lemma_suite, y_poly, z_poly};
use qlzero::report::Status;
use qlzero::ring::{qm, LaurentPoly};
use qlzero::window::Window;

fn all_pass(rep: &qlzero::report::CheckReport) {
    for r in &rep.records {
        assert_eq!(r.status, Status::Pass, "{r:?}");
    }
}

#[test]
fn three_slots_generic_p() {
    for k in [3, 4, 5] {
        all_pass(&affine_hecke_suite(3, &qm(1, k), Window::new(-3, 0).unwrap()).unwrap());
    }
}

#[test]
fn two_slots_g_y_g() {
    all_pass(&affine_hecke_suite(2, &qm(1, 4), Window::new(-3, 0).unwrap()).unwrap());
}

#[test]
fn four_slots_sampled() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let modes: Vec<Vec<i32>> = (0..50).map(|_| (0..4).map(|_| rng.gen_range(-4..=0)).collect()).collect();
    all_pass(&affine_hecke_on(4, &qm(1, 4), &modes).unwrap());
}

#[test]
fn single_variable_y_is_scaling() {
    let f = LaurentPoly::mode_monomial(&[2]);
    let p = qm(1, 4);
    assert_eq!(y_poly(&f, 1, &p, 1).unwrap(), z_poly(&f, &p).unwrap());
    assert_eq!(z_poly(&LaurentPoly::one(3), &p).unwrap(), LaurentPoly::one(3));
}

#[test]
fn lemmas_hold() {
    let rep = lemma_suite().unwrap();
    assert_eq!(rep.len(), 4);
    all_pass(&rep);
}
