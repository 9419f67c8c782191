//! Level-0 generators on the symbol space with operator-valued evaluation
//! parameters `a_j = q^{N-1} Ŷ_j^{-1}`.

use crate::error::Result;
use crate::hecke::{qdiff, s_apply};
use crate::report::{Check, CheckReport, Status};
use crate::ring::{qm, LaurentPoly, RatFuncQ};
use crate::symbol::{truncate_hw, FnOp, Hats, Slice};
use crate::tensor::{uq_apply, Op1, SignString, TensorPoly, UqGen};
use crate::window::Window;

/// `f^{(k)} = 1 ⊗ .. ⊗ f ⊗ t^{-1} ⊗ .. ⊗ t^{-1}` with `f` in slot `k`.
pub fn f_slot(n: usize, k: usize) -> Vec<Op1> {
    (1..=n)
        .map(|i| match i.cmp(&k) {
            std::cmp::Ordering::Less => Op1::identity(),
            std::cmp::Ordering::Equal => Op1::f(),
            std::cmp::Ordering::Greater => Op1::t_inv(),
        })
        .collect()
}

/// `e^{(k)} = t ⊗ .. ⊗ t ⊗ e ⊗ 1 ⊗ .. ⊗ 1` with `e` in slot `k`.
pub fn e_slot(n: usize, k: usize) -> Vec<Op1> {
    (1..=n)
        .map(|i| match i.cmp(&k) {
            std::cmp::Ordering::Less => Op1::t(),
            std::cmp::Ordering::Equal => Op1::e(),
            std::cmp::Ordering::Greater => Op1::identity(),
        })
        .collect()
}

/// `t_0 = t^{-1} ⊗ .. ⊗ t^{-1}`, i.e. `q^{-Σε}` on `v_ε`.
pub fn t0_apply(x: &TensorPoly, exponent: i8) -> TensorPoly {
    let mut out = TensorPoly::zero_with_vars(x.arity(), x.vars());
    for (e, f) in x.components() {
        out.add_component(e.clone(), &f.scale(&qm(1, -(exponent as i64) * e.weight() as i64)));
    }
    out
}

/// The single summand `q^{N-1} Ŷ_k^{-1} f^{(k)}` of `e_0`.
pub fn e0_term(hats: &Hats, x: &TensorPoly, k: usize) -> Result<TensorPoly> {
    let n = x.arity();
    let y = x.apply_product(&f_slot(n, k))?;
    Ok(hats.apply(FnOp::Y(k, -1), &y)?.scale(&qm(1, n as i64 - 1)))
}

/// The single summand `q^{-(N-1)} Ŷ_k e^{(k)}` of `f_0`.
pub fn f0_term(hats: &Hats, x: &TensorPoly, k: usize) -> Result<TensorPoly> {
    let n = x.arity();
    let y = x.apply_product(&e_slot(n, k))?;
    Ok(hats.apply(FnOp::Y(k, 1), &y)?.scale(&qm(1, 1 - n as i64)))
}

pub fn e0_apply(hats: &Hats, x: &TensorPoly) -> Result<TensorPoly> {
    let mut out = TensorPoly::zero_with_vars(x.arity(), x.vars());
    for k in 1..=x.arity() {
        out.add_assign_ref(&e0_term(hats, x, k)?);
    }
    Ok(out)
}

pub fn f0_apply(hats: &Hats, x: &TensorPoly) -> Result<TensorPoly> {
    let mut out = TensorPoly::zero_with_vars(x.arity(), x.vars());
    for k in 1..=x.arity() {
        out.add_assign_ref(&f0_term(hats, x, k)?);
    }
    Ok(out)
}

/// The expanded series form
/// `Σ_k q^{N-1} f^{(N)} S_{N-1,N} .. S_{k,k+1} G^{-1}_{k-1,k} .. G^{-1}_{1,2} F(z_2, .., z_N, p^{-1} z_1)`
/// transported to symbols. It agrees with [`e0_apply`] modulo the exchange relations.
pub fn e0_expanded(hats: &Hats, x: &TensorPoly) -> Result<TensorPoly> {
    let n = x.arity();
    let mut out = TensorPoly::zero_with_vars(n, x.vars());
    for k in 1..=n {
        let mut y = x.clone();
        for j in k..n {
            y = s_apply(&y, j)?;
        }
        y = y.apply_product(&f_slot(n, n))?;
        for j in (1..k).rev() {
            y = hats.apply(FnOp::G(j, -1), &y)?;
        }
        y = hats.apply(FnOp::Z(-1), &y)?;
        out.add_assign_ref(&y.scale(&qm(1, n as i64 - 1)));
    }
    Ok(out)
}

/// The mirrored expanded form for `f_0`:
/// `Σ_k q^{-(N-1)} e^{(1)} S_{1,2} .. S_{k-1,k} G^{-1}_{k,k+1} .. G^{-1}_{N-1,N} Z F`
/// transported to symbols.
pub fn f0_expanded(hats: &Hats, x: &TensorPoly) -> Result<TensorPoly> {
    let n = x.arity();
    let mut out = TensorPoly::zero_with_vars(n, x.vars());
    for k in 1..=n {
        let mut y = x.clone();
        for j in (1..k).rev() {
            y = s_apply(&y, j)?;
        }
        y = y.apply_product(&e_slot(n, 1))?;
        for j in k..n {
            y = hats.apply(FnOp::G(j, -1), &y)?;
        }
        y = hats.apply(FnOp::Z(1), &y)?;
        out.add_assign_ref(&y.scale(&qm(1, 1 - n as i64)));
    }
    Ok(out)
}

/// All symbols `F_{ε,m}` with `m` in the non-positive part of the window.
pub fn window_symbols(n: usize, window: Window) -> Vec<TensorPoly> {
    let mut out = Vec::new();
    let dmax = window.complete_degree().unwrap_or(0);
    for d in 0..=dmax {
        for b in Slice::new(n, d).monomials() {
            if !window.contains(&b.iter().map(|x| -x).collect::<Vec<_>>()) {
                continue;
            }
            for e in SignString::all(n) {
                out.push(TensorPoly::basis(e, LaurentPoly::monomial(n, b.clone(), RatFuncQ::one())));
            }
        }
    }
    out
}

fn same(a: &TensorPoly, b: &TensorPoly) -> bool {
    a.sub(b).is_zero()
}

/// `T_S - Ĝ_j` on symbols.
fn s_minus_g(hats: &Hats, x: &TensorPoly, j: usize) -> Result<TensorPoly> {
    Ok(s_apply(x, j)?.sub(&hats.apply(FnOp::G(j, 1), x)?))
}

/// The exchange identity for `e_0` and `f_0` summands, and commutation of the
/// remaining summands with `S_j` and `Ĝ_j`.
pub fn exchange_check(n: usize, p: &RatFuncQ, window: Window) -> Result<CheckReport> {
    let hats = Hats::new(p.clone());
    let xs: Vec<TensorPoly> = window_symbols(n, window);
    let mut rep = CheckReport::new();
    let tag = p.to_text();

    for (gen, name) in [(0u8, "e0"), (1u8, "f0")] {
        let term = |x: &TensorPoly, k: usize| if gen == 0 { e0_term(&hats, x, k) } else { f0_term(&hats, x, k) };
        // The swapped pair: slot operator of one neighbour with the parameter of the other.
        let cross = |x: &TensorPoly, a: usize, b: usize| -> Result<TensorPoly> {
            let nn = x.arity();
            if gen == 0 {
                let y = x.apply_product(&f_slot(nn, b))?;
                Ok(hats.apply(FnOp::Y(a, -1), &y)?.scale(&qm(1, nn as i64 - 1)))
            } else {
                let y = x.apply_product(&e_slot(nn, b))?;
                Ok(hats.apply(FnOp::Y(a, 1), &y)?.scale(&qm(1, 1 - nn as i64)))
            }
        };
        let mut chk = Check::new("exchange", &format!("{name}-exchange"), &format!("({name}^(j) + {name}^(j+1)) (S_j - G_j) = (S_j - G_j) (a_j x^(j+1) + a_(j+1) x^(j)), p = {tag}"));
        chk.cases(&xs, |x| {
            for j in 1..n {
                let sg = s_minus_g(&hats, x, j)?;
                let lhs = term(&sg, j)?.add(&term(&sg, j + 1)?);
                let inner = cross(x, j, j + 1)?.add(&cross(x, j + 1, j)?);
                let rhs = s_minus_g(&hats, &inner, j)?;
                if !same(&lhs, &rhs) {
                    return Ok(Some(format!("j={j} on {x:?}")));
                }
            }
            Ok(None)
        });
        rep.push(chk.finish());

        let mut chk = Check::new("exchange", &format!("{name}-far-commute"), &format!("{name}^(k) commutes with S_j and G_j for k not in (j, j+1), p = {tag}"));
        chk.cases(&xs, |x| {
            for j in 1..n {
                for k in (1..=n).filter(|&k| k != j && k != j + 1) {
                    let a = term(&s_apply(x, j)?, k)?;
                    let b = s_apply(&term(x, k)?, j)?;
                    let c = term(&hats.apply(FnOp::G(j, 1), x)?, k)?;
                    let d = hats.apply(FnOp::G(j, 1), &term(x, k)?)?;
                    if !same(&a, &b) || !same(&c, &d) {
                        return Ok(Some(format!("j={j}, k={k} on {x:?}")));
                    }
                }
            }
            Ok(None)
        });
        rep.push(chk.finish());
    }
    Ok(rep)
}

fn q_int(k: i64) -> RatFuncQ {
    &(&qm(1, k) - &qm(1, -k)) / &qdiff()
}

/// Chevalley relations of the level-0 action on the symbol space. Every
/// relation holds identically on the free model, so the residual is zero
/// and the kernel membership certificate is trivial.
pub fn chevalley_check(n: usize, p: &RatFuncQ, window: Window, serre: bool) -> Result<CheckReport> {
    let hats = Hats::new(p.clone());
    let xs = window_symbols(n, window);
    let mut rep = CheckReport::new();
    let e0 = |x: &TensorPoly| e0_apply(&hats, x);
    let f0 = |x: &TensorPoly| f0_apply(&hats, x);
    let e1 = |x: &TensorPoly| uq_apply(UqGen::E1, x);
    let f1 = |x: &TensorPoly| uq_apply(UqGen::F1, x);

    let mut chk = Check::new("chevalley", "t0-conjugation", "t0 e0 t0^-1 = q^2 e0, t0 f0 t0^-1 = q^-2 f0, t0 t1 = 1");
    chk.cases(&xs, |x| {
        let a = t0_apply(&e0(&t0_apply(x, -1))?, 1);
        let b = t0_apply(&f0(&t0_apply(x, -1))?, 1);
        let c = t0_apply(&uq_apply(UqGen::T1, x)?, 1);
        let ok = same(&a, &e0(x)?.scale(&qm(1, 2))) && same(&b, &f0(x)?.scale(&qm(1, -2))) && same(&c, x);
        Ok((!ok).then(|| format!("{x:?}")))
    });
    rep.push(chk.finish());

    let mut chk = Check::new("chevalley", "e0-f0-bracket", "[e0, f0] = (t0 - t0^-1)/(q - q^-1)");
    chk.cases(&xs, |x| {
        let lhs = e0(&f0(x)?)?.sub(&f0(&e0(x)?)?);
        let rhs = t0_apply(x, 1).sub(&t0_apply(x, -1)).scale(&qdiff().inv()?);
        Ok((!same(&lhs, &rhs)).then(|| format!("{x:?}")))
    });
    rep.push(chk.finish());

    let mut chk = Check::new("chevalley", "mixed-brackets", "[e0, f1] = 0, [e1, f0] = 0");
    chk.cases(&xs, |x| {
        let a = e0(&f1(x)?)?.sub(&f1(&e0(x)?)?);
        let b = e1(&f0(x)?)?.sub(&f0(&e1(x)?)?);
        Ok((!(a.is_zero() && b.is_zero())).then(|| format!("{x:?}")))
    });
    rep.push(chk.finish());

    let mut chk = Check::new("chevalley", "serre", "q-Serre relations between e0, e1 and between f0, f1");
    if serre {
        let c3 = q_int(3);
        chk.cases(&xs, |x| {
            let serre = |a: &dyn Fn(&TensorPoly) -> Result<TensorPoly>, b: &dyn Fn(&TensorPoly) -> Result<TensorPoly>| -> Result<TensorPoly> {
                let t0 = a(&a(&a(&b(x)?)?)?)?;
                let t1 = a(&a(&b(&a(x)?)?)?)?.scale(&c3);
                let t2 = a(&b(&a(&a(x)?)?)?)?.scale(&c3);
                let t3 = b(&a(&a(&a(x)?)?)?)?;
                Ok(t0.sub(&t1).add(&t2).sub(&t3))
            };
            let r = [serre(&e0, &e1)?, serre(&e1, &e0)?, serre(&f0, &f1)?, serre(&f1, &f0)?];
            Ok((!r.iter().all(TensorPoly::is_zero)).then(|| format!("{x:?}")))
        });
        chk.note(format!("spot check on {n} slots"));
        rep.push(chk.finish());
    } else {
        chk.note("only spot checked on at most two slots");
        rep.push(chk.finish_with(Status::Skipped));
    }
    Ok(rep)
}

/// Weight and degree bookkeeping of `e_0`, `f_0` on one symbol.
pub fn shifts_weight(hats: &Hats, x: &TensorPoly) -> Result<bool> {
    let w = |t: &TensorPoly| t.components().map(|(e, _)| e.weight()).collect::<std::collections::BTreeSet<_>>();
    let e = truncate_hw(&e0_apply(hats, x)?);
    let f = truncate_hw(&f0_apply(hats, x)?);
    let wx: Vec<i32> = w(x).into_iter().collect();
    Ok(w(&e).iter().all(|v| wx.iter().any(|u| *v == u - 2)) && w(&f).iter().all(|v| wx.iter().any(|u| *v == u + 2)))
}
