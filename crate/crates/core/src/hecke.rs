//! The constant Hecke operator `S`, the R-matrix, and the polynomial
//! representation `G_{j,k}` with its building blocks `B K`, `C`, `C̄`.

use crate::error::{Error, Result};
use crate::locality;
use crate::report::{Check, CheckReport};
use crate::ring::frac::RatLaurent;
use crate::ring::{qm, LaurentPoly, RatFuncQ};
use crate::tensor::{sgn, sidx, uq_apply, Op1, Op2, SignString, TensorPoly, UqGen};
use crate::window::Window;

/// `q - q^{-1}`.
pub fn qdiff() -> RatFuncQ {
    &qm(1, 1) - &qm(1, -1)
}

/// Applies a two-slot operator on arbitrary slots `j < k`.
pub fn apply_pair(x: &TensorPoly, j: usize, k: usize, a: &Op2) -> Result<TensorPoly> {
    let n = x.arity();
    if j == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: j.max(k), arity: n });
    }
    if j >= k {
        return Err(Error::IndexClash(j, k));
    }
    if k == j + 1 {
        return x.apply2(j, a);
    }
    let mut out = TensorPoly::zero_with_vars(n, x.vars());
    for (e, f) in x.components() {
        let col = 2 * sidx(e.at(j)) + sidx(e.at(k));
        for (row, r) in a.0.iter().enumerate() {
            let c = &r[col];
            if !c.is_zero() {
                out.add_component(e.with(j, sgn(row / 2)).with(k, sgn(row % 2)), &f.scale(c));
            }
        }
    }
    Ok(out)
}

pub fn s_apply(x: &TensorPoly, j: usize) -> Result<TensorPoly> {
    x.apply2(j, &Op2::hecke())
}

pub fn s_inv_apply(x: &TensorPoly, j: usize) -> Result<TensorPoly> {
    x.apply2(j, &Op2::hecke_inv())
}

/// `G_{j,k}^{±1} f = (q^{-1} z_j - q z_k) ∂_{j,k} f + q^{±1} f`.
pub fn g_poly(f: &LaurentPoly, j: usize, k: usize, exponent: i8) -> Result<LaurentPoly> {
    if j == k {
        return Err(Error::IndexClash(j, k));
    }
    let n = f.arity();
    let dd = f.divided_difference(j, k).map_err(|_| Error::DividedDifferenceRemainder)?;
    let lin = &LaurentPoly::var(n, j).scale(&qm(1, -1)) - &LaurentPoly::var(n, k).scale(&qm(1, 1));
    let out = &(&lin * &dd) + &f.scale(&qm(1, exponent as i64));
    locality::record_poly("G", 0, f, &out);
    Ok(out)
}

pub fn g_apply(x: &TensorPoly, j: usize, k: usize, exponent: i8) -> Result<TensorPoly> {
    x.map_coeffs(|f| g_poly(f, j, k, exponent))
}

/// Cleared R-matrix on adjacent slots `j, j+1` with spectral ratio `z_b / z_a`:
/// returns `(z_b S - z_a S^{-1}) x` and `q z_b - q^{-1} z_a`.
pub fn r_apply_ratio(x: &TensorPoly, j: usize, a: usize, b: usize) -> Result<(TensorPoly, LaurentPoly)> {
    let m = x.vars();
    let num = s_apply(x, j)?.mul_poly(&LaurentPoly::var(m, b)).sub(&s_inv_apply(x, j)?.mul_poly(&LaurentPoly::var(m, a)));
    let den = &LaurentPoly::var(m, b).scale(&qm(1, 1)) - &LaurentPoly::var(m, a).scale(&qm(1, -1));
    Ok((num, den))
}

/// `R̃_{j,k}(z_k/z_j) x = N / D` with `(N, D)` returned.
pub fn r_apply(x: &TensorPoly, j: usize, k: usize) -> Result<(TensorPoly, LaurentPoly)> {
    let m = x.vars();
    if k > m {
        return Err(Error::IndexOutOfRange { index: k, arity: m });
    }
    let num = apply_pair(x, j, k, &Op2::hecke())?
        .mul_poly(&LaurentPoly::var(m, k))
        .sub(&apply_pair(x, j, k, &Op2::hecke_inv())?.mul_poly(&LaurentPoly::var(m, j)));
    let den = &LaurentPoly::var(m, k).scale(&qm(1, 1)) - &LaurentPoly::var(m, j).scale(&qm(1, -1));
    Ok((num, den))
}

/// Rational operators on functions with binomial denominators.
pub mod rational {
    use super::*;

    pub fn k(f: &RatLaurent, j: usize, k: usize) -> Result<RatLaurent> {
        f.swap(j, k)
    }

    /// `B_{j,k} K_{j,k}` with `B = (q^{-1} z_j - q z_k)/(z_j - z_k)`.
    pub fn bk(f: &RatLaurent, j: usize, k: usize) -> Result<RatLaurent> {
        let n = f.arity();
        let lin = &LaurentPoly::var(n, j).scale(&qm(1, -1)) - &LaurentPoly::var(n, k).scale(&qm(1, 1));
        f.swap(j, k)?.mul_poly(&lin).div_binomial(j, k, &RatFuncQ::one())
    }

    /// `C_{j,k} = (q - q^{-1}) z_j / (z_j - z_k)`.
    pub fn c(f: &RatLaurent, j: usize, k: usize) -> Result<RatLaurent> {
        let n = f.arity();
        f.mul_poly(&LaurentPoly::var(n, j).scale(&qdiff())).div_binomial(j, k, &RatFuncQ::one())
    }

    /// `C̄_{j,k} = (q - q^{-1}) z_k / (z_j - z_k)`.
    pub fn cbar(f: &RatLaurent, j: usize, k: usize) -> Result<RatLaurent> {
        let n = f.arity();
        f.mul_poly(&LaurentPoly::var(n, k).scale(&qdiff())).div_binomial(j, k, &RatFuncQ::one())
    }

    /// `G = B K + C`, `G^{-1} = B K + C̄`.
    pub fn g(f: &RatLaurent, j: usize, k: usize, exponent: i8) -> Result<RatLaurent> {
        let tail = if exponent > 0 { c(f, j, k)? } else { cbar(f, j, k)? };
        Ok(bk(f, j, k)?.add(&tail))
    }
}

fn basis_vectors(n: usize) -> Vec<TensorPoly> {
    SignString::all(n).into_iter().map(|e| TensorPoly::basis(e, LaurentPoly::one(n))).collect()
}

fn mismatch(what: &str, a: &TensorPoly, b: &TensorPoly) -> Option<String> {
    if a.sub(b).is_zero() {
        None
    } else {
        Some(format!("{what}: {a:?} != {b:?}"))
    }
}

/// Quadratic, far-commutation and braid relations for a family `A_j`, `A_j^{-1}`.
fn hecke_family(chk: &mut Check, n: usize, xs: &[TensorPoly], fwd: &(dyn Fn(&TensorPoly, usize) -> Result<TensorPoly> + Sync), inv: &(dyn Fn(&TensorPoly, usize) -> Result<TensorPoly> + Sync)) {
    let qd = qdiff();
    chk.cases(xs, |x| {
        for j in 1..n {
            let lhs = fwd(x, j)?.sub(&inv(x, j)?);
            if let Some(m) = mismatch(&format!("quadratic j={j}"), &lhs, &x.scale(&qd)) {
                return Ok(Some(m));
            }
            for k in j + 2..n {
                let a = fwd(&fwd(x, k)?, j)?;
                let b = fwd(&fwd(x, j)?, k)?;
                if let Some(m) = mismatch(&format!("commute {j},{k}"), &a, &b) {
                    return Ok(Some(m));
                }
            }
            if j + 1 < n {
                let a = fwd(&fwd(&fwd(x, j)?, j + 1)?, j)?;
                let b = fwd(&fwd(&fwd(x, j + 1)?, j)?, j + 1)?;
                if let Some(m) = mismatch(&format!("braid j={j}"), &a, &b) {
                    return Ok(Some(m));
                }
            }
        }
        Ok(None)
    });
}

/// `G_{j,k}` on `z^{-m}` keeps `m_j + m_k` and does not raise `max(m_j, m_k)`.
pub fn g_locality_holds(m: &[i32], j: usize, k: usize) -> Result<bool> {
    let f = LaurentPoly::mode_monomial(m);
    for e in [1i8, -1] {
        let g = g_poly(&f, j, k, e)?;
        for (ex, _) in g.terms() {
            let mp: Vec<i32> = ex.iter().map(|x| -x).collect();
            let same_rest = (1..=m.len()).filter(|&i| i != j && i != k).all(|i| mp[i - 1] == m[i - 1]);
            let sum_ok = mp[j - 1] + mp[k - 1] == m[j - 1] + m[k - 1];
            let max_ok = mp[j - 1].max(mp[k - 1]) <= m[j - 1].max(m[k - 1]);
            if !(same_rest && sum_ok && max_ok) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The R-matrix entries as a table, cleared by `z_a`, with denominator `z_a - q^2 z_b`.
fn r_table(x: &TensorPoly) -> TensorPoly {
    let za = LaurentPoly::var(2, 1);
    let zb = LaurentPoly::var(2, 2);
    let q2 = qm(1, 2);
    let mut out = TensorPoly::zero_with_vars(2, 2);
    for (e, f) in x.components() {
        let (a, b) = (e.at(1), e.at(2));
        if a == b {
            out.add_component(e.clone(), &(f * &(&zb - &za.scale(&q2))));
        } else {
            let diag = if a > 0 { zb.scale(&(&RatFuncQ::one() - &q2)) } else { za.scale(&(&RatFuncQ::one() - &q2)) };
            let off = (&zb - &za).scale(&qm(1, 1));
            out.add_component(e.clone(), &(f * &diag));
            out.add_component(e.flipped(), &(f * &off));
        }
    }
    out
}

/// The seven relation families of the constant and polynomial Hecke operators.
pub fn hecke_suite(n: usize, window: Window) -> Result<CheckReport> {
    if n < 2 {
        return Err(Error::Arity { arity: n, need: 2 });
    }
    let mut rep = CheckReport::new();
    let vs = basis_vectors(n);

    let mut chk = Check::new("hecke", "s-relations", "S - S^-1 = q - q^-1; S_j S_k = S_k S_j (|j-k|>1); braid");
    hecke_family(&mut chk, n, &vs, &|x, j| s_apply(x, j), &|x, j| s_inv_apply(x, j));
    rep.push(chk.finish());

    let mut chk = Check::new("hecke", "g-relations", "G - G^-1 = q - q^-1; far commutation; braid; G-locality");
    let monos: Vec<TensorPoly> = window.modes(n).iter().map(|m| TensorPoly::basis(SignString::all(n)[0].clone(), LaurentPoly::mode_monomial(m))).collect();
    hecke_family(&mut chk, n, &monos, &|x, j| g_apply(x, j, j + 1, 1), &|x, j| g_apply(x, j, j + 1, -1));
    let modes = window.modes(n);
    chk.cases(&modes, |m| {
        for j in 1..n {
            for k in j + 1..=n {
                if !g_locality_holds(m, j, k)? {
                    return Ok(Some(format!("G_{j},{k} not local on modes {m:?}")));
                }
            }
        }
        Ok(None)
    });
    rep.push(chk.finish());

    let mut chk = Check::new("hecke", "rs-decomposition", "R(z) = (S z - S^-1)/(q z - q^-1) against the entry table");
    let v2 = basis_vectors(2);
    chk.cases(&v2, |x| {
        let (num, den) = r_apply_ratio(x, 1, 1, 2)?;
        let tab_den = &LaurentPoly::var(2, 1) - &LaurentPoly::var(2, 2).scale(&qm(1, 2));
        Ok(mismatch("R table", &num.mul_poly(&tab_den), &r_table(x).mul_poly(&den)))
    });
    rep.push(chk.finish());

    let mut chk = Check::new("hecke", "yang-baxter", "R12(z2/z1) R23(z3/z1) R12(z3/z2) = R23(z3/z2) R12(z3/z1) R23(z2/z1), cleared");
    if n >= 3 {
        let ks: Vec<(usize, TensorPoly)> = (1..=n - 2)
            .flat_map(|k| SignString::all(n).into_iter().map(move |e| (k, TensorPoly::basis(e, LaurentPoly::one(3)))))
            .collect();
        chk.cases(&ks, |(k, x)| {
            let r = |y: &TensorPoly, slot: usize, a: usize, b: usize| r_apply_ratio(y, slot, a, b).map(|p| p.0);
            let lhs = r(&r(&r(x, *k, 2, 3)?, k + 1, 1, 3)?, *k, 1, 2)?;
            let rhs = r(&r(&r(x, k + 1, 1, 2)?, *k, 1, 3)?, k + 1, 2, 3)?;
            Ok(mismatch(&format!("k={k}"), &lhs, &rhs))
        });
    } else {
        chk.note("needs three slots");
    }
    rep.push(chk.finish());

    let mut chk = Check::new("hecke", "s-eigenvalues", "S = -q^-1 on triplets, q on the singlet; spectral projectors idempotent");
    let qs = &qm(1, 1) + &qm(1, -1);
    let p_sing = Op2::hecke().add(&Op2::identity().scale(&qm(1, -1))).scale(&qs.inv()?);
    let p_trip = Op2::identity().add(&p_sing.scale(&RatFuncQ::from_int(-1)));
    let sing = TensorPoly::singlet();
    let trips = [TensorPoly::vector("++"), TensorPoly::vector("+-").add(&TensorPoly::vector("-+").scale(&qm(1, 1))), TensorPoly::vector("--")];
    chk.case(mismatch("singlet", &s_apply(&sing, 1)?, &sing.scale(&qm(1, 1))).is_none(), || "singlet eigenvalue".into());
    for t in &trips {
        chk.case(mismatch("triplet", &s_apply(t, 1)?, &t.scale(&qm(-1, -1))).is_none(), || format!("triplet eigenvalue on {t:?}"));
    }
    chk.case(p_sing.mul(&p_sing) == p_sing, || "singlet projector not idempotent".into());
    chk.case(p_trip.mul(&p_trip) == p_trip, || "triplet projector not idempotent".into());
    chk.case(p_sing.mul(&p_trip).0.iter().flatten().all(RatFuncQ::is_zero), || "projectors not orthogonal".into());
    rep.push(chk.finish());

    let mut chk = Check::new("hecke", "s-commutes-with-coproduct", "[S_j, Δop(x)] = 0 for x in e1, f1, t1");
    chk.cases(&vs, |x| {
        for g in [UqGen::E1, UqGen::F1, UqGen::T1] {
            for j in 1..n {
                let a = s_apply(&uq_apply(g, x)?, j)?;
                let b = uq_apply(g, &s_apply(x, j)?)?;
                if let Some(m) = mismatch(&format!("{g:?} j={j}"), &a, &b) {
                    return Ok(Some(m));
                }
            }
        }
        Ok(None)
    });
    rep.push(chk.finish());

    let mut chk = Check::new("hecke", "s-intertwines", "S (f ⊗ t^-1) = (1 ⊗ f) S and S (t ⊗ e) = (e ⊗ 1) S");
    chk.cases(&v2, |x| {
        let id = Op1::identity();
        let a = s_apply(&x.apply_product(&[Op1::f(), Op1::t_inv()])?, 1)?;
        let b = s_apply(x, 1)?.apply_product(&[id.clone(), Op1::f()])?;
        let c = s_apply(&x.apply_product(&[Op1::t(), Op1::e()])?, 1)?;
        let d = s_apply(x, 1)?.apply_product(&[Op1::e(), id])?;
        Ok(mismatch("f-side", &a, &b).or_else(|| mismatch("e-side", &c, &d)))
    });
    rep.push(chk.finish());

    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_table_entries() {
        let pp = TensorPoly::vector("++");
        assert!(s_apply(&pp, 1).unwrap().sub(&pp.scale(&qm(-1, -1))).is_zero());
        let mp = TensorPoly::vector("-+");
        assert!(s_apply(&mp, 1).unwrap().add(&TensorPoly::vector("+-")).is_zero());
    }

    #[test]
    fn g_on_linear_monomial() {
        let z2 = LaurentPoly::var(2, 2);
        let z1 = LaurentPoly::var(2, 1);
        assert_eq!(g_poly(&z2, 1, 2, 1).unwrap(), z1.scale(&qm(1, -1)));
        let want = &z1.scale(&qm(1, -1)) + &z2.scale(&(&qm(1, -1) - &qm(1, 1)));
        assert_eq!(g_poly(&z2, 1, 2, -1).unwrap(), want);
        assert_eq!(g_poly(&LaurentPoly::one(2), 1, 2, 1).unwrap(), LaurentPoly::constant(2, qm(1, 1)));
    }

    #[test]
    fn rational_g_matches_polynomial_g() {
        let f = &LaurentPoly::monomial(3, vec![2, -1, 0], qm(3, 1)) + &LaurentPoly::var(3, 3);
        for e in [1i8, -1] {
            let a = rational::g(&RatLaurent::from_poly(f.clone()), 1, 3, e).unwrap();
            assert!(a.equals(&RatLaurent::from_poly(g_poly(&f, 1, 3, e).unwrap())));
        }
    }
}
