use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use qlzero::ring::{eta_expand, qm, LaurentPoly, QPoly, RatFuncQ};

const QORD: usize = 48;

fn poly_series(p: &QPoly) -> Vec<i64> {
    let mut v = vec![0i64; QORD];
    for (i, c) in p.coeffs().iter().enumerate().take(QORD) {
        v[i] = c.to_i64().unwrap();
    }
    v
}

/// Power series of a rational function whose denominator has a unit constant term.
fn rf_series(r: &RatFuncQ) -> Vec<i64> {
    let n = poly_series(r.numer());
    let d = poly_series(r.denom());
    assert_eq!(d[0].abs(), 1);
    let mut out = vec![0i64; QORD];
    for i in 0..QORD {
        let mut acc = n[i];
        for j in 1..=i {
            acc -= d[j] * out[i - j];
        }
        out[i] = acc * d[0];
    }
    out
}

type Series2 = Vec<Vec<i64>>;

fn mul_factor(s: &mut Series2, qpow: usize, sign: i64, zdeg: usize) {
    // multiply by (1 + sign*q^qpow z)
    for k in (1..=zdeg).rev() {
        for i in (qpow..QORD).rev() {
            let add = sign * s[k - 1][i - qpow];
            s[k][i] += add;
        }
    }
}

fn mul_inverse_factor(s: &mut Series2, qpow: usize, zdeg: usize) {
    // multiply by 1/(1 - q^qpow z) = Σ q^{qpow k} z^k
    for k in 1..=zdeg {
        for i in qpow..QORD {
            let add = s[k - 1][i - qpow];
            s[k][i] += add;
        }
    }
}

/// η(z) coefficients as truncated power series in q, from the product directly.
fn eta_product_oracle(zdeg: usize, inverse: bool) -> Series2 {
    let mut s = vec![vec![0i64; QORD]; zdeg + 1];
    s[0][0] = 1;
    let mut n = 0;
    while 4 * n + 4 < QORD {
        if inverse {
            mul_factor(&mut s, 4 * n + 4, -1, zdeg);
            mul_inverse_factor(&mut s, 4 * n + 6, zdeg);
        } else {
            mul_factor(&mut s, 4 * n + 6, -1, zdeg);
            mul_inverse_factor(&mut s, 4 * n + 4, zdeg);
        }
        n += 1;
    }
    s
}

#[test]
fn eta_order_zero_is_one() {
    assert_eq!(eta_expand(0, false).coeffs, vec![RatFuncQ::one()]);
    assert_eq!(eta_expand(0, true).coeffs, vec![RatFuncQ::one()]);
}

#[test]
fn eta_linear_coefficient_closed_form() {
    // -Σ q^{4n+6} + Σ q^{4n+4} = (q^4 - q^6)/(1 - q^4)
    let geo = &(&qm(1, 4) - &qm(1, 6)) / &(&RatFuncQ::one() - &qm(1, 4));
    let expect = &(&qm(1, 4) * &(&RatFuncQ::one() - &qm(1, 2))) / &(&RatFuncQ::one() - &qm(1, 4));
    let e = eta_expand(3, false);
    assert_eq!(e.coeff(1), geo);
    assert_eq!(e.coeff(1), expect);
}

#[test]
fn eta_matches_product_expansion() {
    for inverse in [false, true] {
        let e = eta_expand(5, inverse);
        let oracle = eta_product_oracle(5, inverse);
        for k in 0..=5 {
            assert_eq!(rf_series(&e.coeff(k)), oracle[k], "z^{k} inverse={inverse}");
        }
    }
}

#[test]
fn eta_times_inverse_is_one() {
    for d in 0..=12 {
        let prod = eta_expand(d, false).mul_truncated(&eta_expand(d, true));
        for (k, c) in prod.iter().enumerate() {
            let want = if k == 0 { RatFuncQ::one() } else { RatFuncQ::zero() };
            assert_eq!(*c, want, "order {d}, z^{k}");
        }
    }
}

fn arb_rf() -> impl Strategy<Value = RatFuncQ> {
    (-3i64..=3, -3i64..=3, -2i64..=2).prop_map(|(a, b, k)| &qm(a, k) + &qm(b, k + 1))
}

fn arb_lp(n: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-3i32..=3, n), arb_rf()), 0..5)
        .prop_map(move |ts| LaurentPoly::from_terms(n, ts))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in arb_lp(3), b in arb_lp(3), c in arb_lp(3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn swap_is_involution(f in arb_lp(3)) {
        prop_assert_eq!(f.swap(1, 3).unwrap().swap(1, 3).unwrap(), f);
    }

    #[test]
    fn scale_then_unscale(f in arb_lp(2), k in -5i64..=5) {
        let g = f.scale_var(2, &qm(1, k)).unwrap().scale_var(2, &qm(1, -k)).unwrap();
        prop_assert_eq!(g, f);
    }

    #[test]
    fn text_round_trip(f in arb_lp(2)) {
        prop_assert_eq!(LaurentPoly::parse_text(2, &f.to_text()).unwrap(), f);
    }

    #[test]
    fn rational_normalize_is_scale_invariant(a in prop::collection::vec(-4i64..=4, 1..4),
                                             b in prop::collection::vec(-4i64..=4, 1..4),
                                             c in prop::collection::vec(-4i64..=4, 1..4)) {
        let (a, b, c) = (QPoly::from_i64s(&a), QPoly::from_i64s(&b), QPoly::from_i64s(&c));
        prop_assume!(!b.is_zero() && !c.is_zero());
        let lhs = RatFuncQ::normalize(&a * &c, &b * &c).unwrap();
        prop_assert_eq!(lhs.clone(), RatFuncQ::normalize(a, b).unwrap());
        prop_assert!(lhs.denom().leading().unwrap() > &BigInt::zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn divided_difference_identity(f in arb_lp(3), j in 1usize..=3, k in 1usize..=3) {
        prop_assume!(j != k);
        let g = f.divided_difference(j, k).unwrap();
        let lin = &LaurentPoly::var(3, j) - &LaurentPoly::var(3, k);
        prop_assert_eq!(&(&lin * &g) + &f, f.swap(j, k).unwrap());
    }
}
