use proptest::prelude::*;
use qlzero::kernel::character::{char_cell, graded_character};
use qlzero::kernel::families::{fuse, hec_relation, specialize_adjacent};
use qlzero::kernel::rewrite::{is_admissible, Rewriter};
use qlzero::kernel::{add_scaled, kernel_build, Family, KernelBasis, Sym, SymVec};
use qlzero::ring::{qm, LaurentPoly, RatFuncQ};
use qlzero::symbol::Hats;
use qlzero::tensor::{SignString, TensorPoly};
use qlzero::window::Window;
use std::sync::OnceLock;

const ALL: [Family; 3] = [Family::Hec, Family::Fus, Family::Hwt];

fn sym(s: &str) -> Sym {
    s.parse().unwrap()
}

fn single(s: &str) -> SymVec {
    [(sym(s), RatFuncQ::one())].into_iter().collect()
}

fn full_two_slot() -> &'static KernelBasis {
    static KB: OnceLock<KernelBasis> = OnceLock::new();
    KB.get_or_init(|| kernel_build(2, Window::new(-3, 0).unwrap(), &ALL, true).unwrap())
}

#[test]
fn one_slot_kernel_is_empty() {
    for fams in [&[Family::Hec][..], &[Family::Fus], &ALL] {
        let kb = kernel_build(1, Window::new(-3, 0).unwrap(), fams, false).unwrap();
        assert_eq!(kb.rank(), 0);
        assert_eq!(kb.generators(), 0);
    }
}

#[test]
fn exchange_generator_is_member() {
    let kb = kernel_build(2, Window::new(-2, 0).unwrap(), &[Family::Hec], true).unwrap();
    let hats = Hats::new(qm(1, 4));
    let g = hec_relation(&hats, &sym("++:0,0"), 1).unwrap();
    assert!(kb.member(&g).unwrap().member);
    let g = hec_relation(&hats, &sym("+-:1,0"), 1).unwrap();
    assert!(!g.is_empty());
    let m = kb.member(&g).unwrap();
    assert!(m.member);
    assert!(m.certificate.is_some_and(|c| !c.is_empty()));
}

#[test]
fn full_families_leave_a_quotient() {
    let kb = full_two_slot();
    assert!(kb.rank() < kb.ambient.dim());
    assert!(kb.provenance.contains(&Family::Fus));
}

#[test]
fn degree_zero_membership() {
    let kb = full_two_slot();
    // the weight-2 ground symbol has no admissible partner and dies
    assert!(kb.member(&single("++:0,0")).unwrap().member);
    let m = kb.member(&single("-+:0,0")).unwrap();
    assert!(!m.member);
    assert!(!m.residual.is_empty());
    // both orders of the singlet pair fuse to the vacuum
    let mut x = single("+-:0,0");
    add_scaled(&mut x, &qm(1, 1), &single("-+:0,0"));
    assert!(kb.member(&x).unwrap().member);
}

#[test]
fn rows_are_members() {
    let kb = full_two_slot();
    for r in kb.echelon.rows() {
        assert!(kb.member(&kb.ambient.vector(r)).unwrap().member);
    }
}

#[test]
fn outside_window_is_an_error() {
    let kb = full_two_slot();
    assert!(kb.member(&single("+-:9,0")).is_err());
}

#[test]
fn persistence_round_trip() {
    let kb = full_two_slot();
    let dir = tempfile::tempdir().unwrap();
    kb.save(dir.path()).unwrap();
    let back = KernelBasis::load(dir.path()).unwrap();
    assert_eq!(back.rank(), kb.rank());
    assert_eq!(back.ambient.syms(), kb.ambient.syms());
    assert_eq!(back.provenance, kb.provenance);
    assert_eq!(back.echelon.rows(), kb.echelon.rows());
}

fn vacuum_unit() -> TensorPoly {
    TensorPoly::basis(SignString::new(vec![]), LaurentPoly::one(1))
}

#[test]
fn fusion_channel_weights() {
    let pm = fuse(&TensorPoly::vector("+-"), 1).unwrap();
    assert!(pm.sub(&vacuum_unit().scale(&qm(-1, 1))).is_zero());
    let mp = fuse(&TensorPoly::vector("-+"), 1).unwrap();
    assert!(mp.sub(&vacuum_unit()).is_zero());
    let s = fuse(&TensorPoly::singlet(), 1).unwrap();
    let want = vacuum_unit().scale(&(&qm(-1, 1) + &qm(-1, -1)));
    assert!(s.sub(&want).is_zero());
    assert!(fuse(&TensorPoly::vector("++"), 1).unwrap().is_zero());
}

#[test]
fn specialization_reindexes_spectators() {
    // z_1^2 z_3^-1 does not involve z_2, so only the indices move
    let f = LaurentPoly::monomial(3, vec![2, 0, -1], RatFuncQ::one());
    let x = TensorPoly::basis(SignString::parse("+-+").unwrap(), f);
    let y = specialize_adjacent(&x, 1).unwrap();
    let want = TensorPoly::basis(SignString::parse("+-+").unwrap(), LaurentPoly::monomial(2, vec![2, -1], RatFuncQ::one()));
    assert!(y.sub(&want).is_zero());
    // z_2 becomes q^-2 z_1
    let g = LaurentPoly::monomial(2, vec![0, 1], RatFuncQ::one());
    let y = specialize_adjacent(&TensorPoly::basis(SignString::parse("++").unwrap(), g), 1).unwrap();
    let want = TensorPoly::basis(SignString::parse("++").unwrap(), LaurentPoly::monomial(1, vec![1], qm(1, -2)));
    assert!(y.sub(&want).is_zero());
}

#[test]
fn character_low_degrees() {
    let cells = graded_character(2, None, true).unwrap();
    assert!(cells.iter().all(|c| c.matches() && !c.truncated), "{cells:?}");
    let d0: usize = cells.iter().filter(|c| c.degree == 0).map(|c| c.count).sum();
    // vacuum, and the doublet v_+ , v_- of the other module
    assert_eq!(d0, 3);
    let d1: usize = cells.iter().filter(|c| c.degree == 1 && c.module == 0).map(|c| c.count).sum();
    assert_eq!(d1, 3);
}

#[test]
fn exact_and_modular_counts_agree() {
    let rw = Rewriter::new();
    for (m, r, w) in [(0, 3, 0), (0, 3, 2), (1, 3, 1), (1, 2, -1)] {
        let a = char_cell(&rw, m, r, w, 4 + m, true, 1).unwrap();
        let b = char_cell(&rw, m, r, w, 4 + m, false, 1).unwrap();
        assert_eq!(a.count, b.count);
        assert!(a.matches());
    }
}

#[test]
fn low_sector_cap_is_flagged() {
    let cells = graded_character(2, Some(1), false).unwrap();
    assert!(cells.iter().any(|c| c.truncated));
}

fn arb_sym(n: usize, dmax: u32) -> impl Strategy<Value = Sym> {
    (prop::collection::vec(prop::bool::ANY, n), prop::collection::vec(0..=dmax as i32, n)).prop_filter_map("degree", move |(e, b)| {
        (b.iter().sum::<i32>() <= dmax as i32).then(|| Sym::new(SignString::new(e.iter().map(|&p| if p { 1 } else { -1 }).collect()), b))
    })
}

fn arb_combo(n: usize, dmax: u32) -> impl Strategy<Value = SymVec> {
    prop::collection::vec((arb_sym(n, dmax), -3i64..=3, -2i64..=2), 1..4).prop_map(|ts| {
        let mut v = SymVec::new();
        for (s, c, e) in ts {
            add_scaled(&mut v, &qm(c, e), &[(s, RatFuncQ::one())].into_iter().collect());
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_admissible_and_idempotent(x in arb_combo(3, 3)) {
        let rw = Rewriter::new();
        let nf = rw.normal_form(&x).unwrap().0;
        prop_assert!(nf.keys().all(is_admissible));
        prop_assert_eq!(rw.normal_form(&nf).unwrap().0, nf);
    }

    #[test]
    fn normal_form_is_constant_on_cosets(x in arb_combo(2, 3), s in arb_sym(2, 3), c in -3i64..=3) {
        let rw = Rewriter::new();
        let hats = Hats::new(qm(1, 4));
        let mut y = x.clone();
        add_scaled(&mut y, &qm(c, 1), &hec_relation(&hats, &s, 1).unwrap());
        prop_assert_eq!(rw.normal_form(&x).unwrap().0, rw.normal_form(&y).unwrap().0);
    }

    #[test]
    fn membership_is_linear(i in 0usize..64, k in 0usize..64, a in -3i64..=3, b in -3i64..=3) {
        let kb = full_two_slot();
        let rows = kb.echelon.rows();
        let mut v = kb.ambient.vector(&rows[i % rows.len()]).into_iter().map(|(s, c)| (s, &c * &qm(a, 1))).collect::<SymVec>();
        add_scaled(&mut v, &qm(b, -2), &kb.ambient.vector(&rows[k % rows.len()]));
        prop_assert!(kb.member(&v).unwrap().member);
    }

    #[test]
    fn reduction_is_idempotent(x in arb_combo(2, 3)) {
        let kb = full_two_slot();
        let r = kb.member(&x).unwrap().residual;
        prop_assert_eq!(kb.member(&r).unwrap().residual, r.clone());
        prop_assert_eq!(kb.member(&x).unwrap().member, r.is_empty());
    }
}

#[test]
fn stability_of_the_exchange_span() {
    use qlzero::kernel::checks::stability_check;
    use qlzero::report::Status;
    for (n, lo) in [(2, -3), (3, -2)] {
        let rep = stability_check(n, &qm(1, 4), Window::new(lo, 0).unwrap()).unwrap();
        for r in &rep.records {
            assert_ne!(r.status, Status::Fail, "{} ({})", r.id, r.detail);
        }
        let global = ["e0", "f0", "y-sum", "y-product"];
        for op in global {
            assert!(rep.records.iter().any(|r| r.id.ends_with(op) && r.status == Status::Pass), "{op} at {n} slots");
        }
        let adjacent = rep.records.iter().find(|r| r.id.ends_with("adjacent"));
        assert_eq!(adjacent.map(|r| r.status), (n > 2).then_some(Status::Skipped));
    }
}

#[test]
fn span_equality_on_small_windows() {
    use qlzero::kernel::checks::commutation_check;
    use qlzero::report::Status;
    let one = commutation_check(1, Window::new(0, 0).unwrap()).unwrap();
    assert_eq!(one.records[0].status, Status::Pass);
    assert!(one.records[0].detail.split(' ').skip(3).all(|c| c.ends_with(":0")), "{}", one.records[0].detail);
    // the lone symbol of top weight is already an exchange relation
    let two = commutation_check(2, Window::new(0, 0).unwrap()).unwrap();
    assert_eq!(two.records[0].status, Status::Pass);
    assert!(two.records[0].detail.contains("0/2:1"), "{}", two.records[0].detail);
}
