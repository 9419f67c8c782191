use qlzero::level0::{chevalley_check, e0_apply, f0_apply, exchange_check, shifts_weight, t0_apply, window_symbols};
use qlzero::report::Status;
use qlzero::ring::{qm, LaurentPoly};
use qlzero::symbol::Hats;
use qlzero::tensor::TensorPoly;
use qlzero::window::Window;

fn all_pass(rep: &qlzero::report::CheckReport) {
    for r in &rep.records {
        assert_ne!(r.status, Status::Fail, "{r:?}");
    }
}

#[test]
fn single_slot_generators() {
    let hats = Hats::new(qm(1, 4));
    let plus = TensorPoly::vector("+");
    let minus = TensorPoly::vector("-");
    assert!(e0_apply(&hats, &plus).unwrap().sub(&minus).is_zero());
    assert!(e0_apply(&hats, &minus.mul_poly(&LaurentPoly::var(1, 1))).unwrap().is_zero());
    assert!(f0_apply(&hats, &minus).unwrap().sub(&plus).is_zero());
    assert!(f0_apply(&hats, &plus).unwrap().is_zero());
}

#[test]
fn t0_is_diagonal() {
    let pp = TensorPoly::vector("++");
    assert!(t0_apply(&pp, 1).sub(&pp.scale(&qm(1, -2))).is_zero());
    let pm = TensorPoly::vector("+-");
    assert!(t0_apply(&pm, 1).sub(&pm).is_zero());
}

#[test]
fn weights_shift_by_two() {
    let hats = Hats::new(qm(1, 4));
    for x in window_symbols(2, Window::new(-2, 0).unwrap()) {
        assert!(shifts_weight(&hats, &x).unwrap());
    }
}

#[test]
fn exchange_identity_two_slots() {
    all_pass(&exchange_check(2, &qm(1, 4), Window::new(-3, 0).unwrap()).unwrap());
}

#[test]
fn exchange_identity_three_slots_generic_p() {
    all_pass(&exchange_check(3, &qm(1, 3), Window::new(-2, 0).unwrap()).unwrap());
}

#[test]
fn chevalley_two_slots() {
    all_pass(&chevalley_check(2, &qm(1, 4), Window::new(-3, 0).unwrap(), true).unwrap());
}
