//! Theorem-level checks on kernel windows.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hecke::s_apply;
use crate::level0::{e0_apply, f0_apply};
use crate::linalg::{self, SVec};
use crate::report::{Check, CheckReport, Status};
use crate::ring::{qm, LaurentPoly, RatFuncQ};
use crate::symbol::{compositions, FnOp, Hats};
use crate::tensor::{SignString, TensorPoly};
use crate::window::Window;

use super::families::{fbar_coeff, fbar_support, fcom_generators, fus_relation, fusion_weight, hec_generators, hec_relation};
use super::rewrite::{admissible, violation, Rewriter};
use super::{add_scaled, from_tensor, kernel_build, sub_vec, to_tensor, Ambient, Family, KernelBasis, Sym, SymVec};

fn degree_of(w: Window) -> Result<u32> {
    w.complete_degree().ok_or(Error::WindowUnderflow { need: 0, have: w.hi as i64 })
}

fn unit(n: usize, k: usize) -> Vec<i32> {
    let mut e = vec![0; n];
    e[k] = 1;
    e
}

fn vsub(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn swapped(g: &[i32], k: usize) -> Vec<i32> {
    let mut s = g.to_vec();
    s.swap(k - 1, k);
    s
}

fn certificate_note(kb: &KernelBasis, x: &SymVec) -> Result<Option<usize>> {
    let m = kb.member(x)?;
    Ok(m.member.then(|| m.certificate.map(|c| c.len()).unwrap_or(0)))
}

/// Both normal ordering rules for the dressed series
/// `F̄_ε(ζ) = ∏ζ_j^{(1+ε_j)/2} / (∏z_j^{N-j} ∏_{j<k}(1-q^2 z_k/z_j)) F_{-ε}(z)`
/// lie in the span of the exchange relations, coefficient by coefficient,
/// while single unsymmetrized terms and a rule (B) with the wrong power of q
/// are not in it.
pub fn normal_order_check(n: usize, window: Window, spread: i32) -> Result<CheckReport> {
    let dmax = degree_of(window)?;
    let kb = kernel_build(n, window, &[Family::Hec, Family::Hwt], true)?;
    let mut rep = CheckReport::new();

    let mut rule_a: Vec<SymVec> = Vec::new();
    let mut control: Vec<SymVec> = Vec::new();
    let mut rule_b: Vec<SymVec> = Vec::new();
    let mut control_b: Vec<SymVec> = Vec::new();
    for k in 1..n {
        for eps in SignString::all(n) {
            let (a, b) = (eps.at(k), eps.at(k + 1));
            if a == b {
                for d in 0..=dmax {
                    for g in fbar_support(&eps, d, spread) {
                        let sg = swapped(&g, k);
                        let c = fbar_coeff(&eps, &sg);
                        let v = sub_vec(&c, &fbar_coeff(&eps, &g));
                        if !v.is_empty() {
                            rule_a.push(v);
                        }
                        if !c.is_empty() && sg != g {
                            control.push(c);
                        }
                    }
                }
            } else if a > 0 {
                let other = eps.with(k, -1).with(k + 1, 1);
                let p = |h: &[i32]| {
                    let mut v = fbar_coeff(&eps, h);
                    add_scaled(&mut v, &RatFuncQ::one(), &fbar_coeff(&other, h));
                    v
                };
                let (ek, ek1) = (unit(n, k - 1), unit(n, k));
                let mut gs = BTreeSet::new();
                for d in 0..=dmax {
                    for h in fbar_support(&eps, d, spread).into_iter().chain(fbar_support(&other, d, spread)) {
                        gs.insert(h.iter().zip(&ek).map(|(x, y)| x + y).collect::<Vec<i32>>());
                        gs.insert(h.iter().zip(&ek1).map(|(x, y)| x + y).collect::<Vec<i32>>());
                    }
                }
                for g in gs {
                    let mut v = p(&swapped(&vsub(&g, &ek1), k));
                    add_scaled(&mut v, &qm(1, 1), &p(&swapped(&vsub(&g, &ek), k)));
                    add_scaled(&mut v, &qm(-1, 0), &p(&vsub(&g, &ek)));
                    add_scaled(&mut v, &qm(-1, 1), &p(&vsub(&g, &ek1)));
                    if !v.is_empty() && kb.ambient.contains(&v) {
                        rule_b.push(v);
                    }
                    let mut u = p(&swapped(&vsub(&g, &ek1), k));
                    add_scaled(&mut u, &qm(1, -1), &p(&swapped(&vsub(&g, &ek), k)));
                    add_scaled(&mut u, &qm(-1, 0), &p(&vsub(&g, &ek)));
                    add_scaled(&mut u, &qm(-1, -1), &p(&vsub(&g, &ek1)));
                    if !u.is_empty() && kb.ambient.contains(&u) {
                        control_b.push(u);
                    }
                }
            }
        }
    }
    rule_a.retain(|v| kb.ambient.contains(v));
    control.retain(|v| kb.ambient.contains(v));

    for (name, rel, items) in [
        ("rule-a", "F̄_{..εε..}(ζ swapped) - F̄_{..εε..}(ζ) ∼ 0", &rule_a),
        ("rule-b", "(ζ_{k+1} + qζ_k) P(ζ swapped) - (ζ_k + qζ_{k+1}) P(ζ) ∼ 0, P = F̄_{..+-..} + F̄_{..-+..}", &rule_b),
    ] {
        let mut chk = Check::new("normal-order", name, &format!("{rel}; {n} slots, window {window}"));
        let certs: Vec<Option<usize>> = items.par_iter().map(|v| certificate_note(&kb, v)).collect::<Result<_>>()?;
        let total: usize = certs.iter().flatten().sum();
        for (v, c) in items.iter().zip(&certs) {
            chk.case(c.is_some(), || format!("{} terms", v.len()));
        }
        chk.note(format!("certificates use {total} generator terms"));
        rep.push(chk.finish());
    }

    for (name, rel, items) in [
        ("control-unsymmetrized", "some single term F̄(ζ swapped) is not ∼ 0", &control),
        ("control-rule-b-q-inverse", "rule (B) with q replaced by q^-1 is not always ∼ 0", &control_b),
    ] {
        let mut chk = Check::new("normal-order", name, &format!("{rel}; {n} slots, window {window}"));
        let verdicts: Vec<bool> = items.par_iter().map(|v| kb.member(v).map(|m| m.member)).collect::<Result<_>>()?;
        let outside = verdicts.iter().filter(|m| !**m).count();
        chk.add_tested(items.len());
        chk.add_residual(usize::from(outside == 0));
        chk.note(format!("{outside} of {} outside the kernel", items.len()));
        rep.push(chk.finish());
    }
    Ok(rep)
}

/// The commutation relations and the exchange relations span the same space
/// on every slice of the window.
pub fn commutation_check(n: usize, window: Window) -> Result<CheckReport> {
    let dmax = degree_of(window)?;
    let hats = Hats::new(qm(1, 4));
    let mut chk = Check::new("commutation", "span-equality", &format!("span(F(..z_(j+1),z_j..) - R̃ F) = span((S - G) F); {n} slots, window {window}"));
    let slices: Vec<(u32, i32)> = (0..=dmax).flat_map(|d| (-(n as i32)..=n as i32).step_by(2).map(move |w| (d, w))).collect();
    let res: Vec<(u32, i32, usize, usize, usize)> = slices
        .par_iter()
        .map(|&(d, w)| {
            let amb = Ambient::from_syms(Ambient::slice_syms(n, d, Some(w)));
            let a: Vec<SVec<RatFuncQ>> = fcom_generators(n, d, w)?.iter().map(|g| amb.coords(g)).collect::<Result<_>>()?;
            let b: Vec<SVec<RatFuncQ>> = hec_generators(&hats, n, d, w)?.iter().map(|g| amb.coords(g)).collect::<Result<_>>()?;
            let ra = linalg::rank(&a);
            let rb = linalg::rank(&b);
            let both: Vec<_> = a.into_iter().chain(b).collect();
            Ok((d, w, ra, rb, linalg::rank(&both)))
        })
        .collect::<Result<_>>()?;
    let mut dims = Vec::new();
    for (d, w, ra, rb, rab) in res {
        chk.case(ra == rab && rb == rab, || format!("d={d} w={w}: ranks {ra}, {rb}, joint {rab}"));
        dims.push(format!("{d}/{w}:{rab}"));
    }
    chk.note(format!("rank per degree/weight {}", dims.join(" ")));
    let mut rep = CheckReport::new();
    rep.push(chk.finish());
    Ok(rep)
}

/// `e_0` and `f_0` applied sector by sector to a relation of the mixed ambient.
fn level0_on_mixed(hats: &Hats, v: &SymVec, gen: u8) -> Result<SymVec> {
    let sectors: BTreeSet<usize> = v.keys().map(Sym::n).collect();
    let mut out = SymVec::new();
    for k in sectors {
        let x = to_tensor(v, k);
        let y = if gen == 0 { e0_apply(hats, &x)? } else { f0_apply(hats, &x)? };
        add_scaled(&mut out, &RatFuncQ::one(), &from_tensor(&y));
    }
    Ok(out)
}

/// Fusion compatibility without the parameter guard; used for the control.
pub fn fusion_compat(n: usize, p: &RatFuncQ, window: Window) -> Result<CheckReport> {
    let dmax = degree_of(window)?;
    let kb = kernel_build(n, window, &[Family::Hec, Family::Fus, Family::Hwt], false)?;
    let hats = Hats::new(p.clone());
    let tag = p.to_text();
    let mut singlet = Vec::new();
    let mut triplet = Vec::new();
    for d in 0..=dmax {
        for w in (-(n as i32)..=n as i32).step_by(2) {
            for eps in SignString::with_weight(n, w) {
                for j in 1..n {
                    for bm in compositions(n - 1, d) {
                        let g = fus_relation(&eps, j, &bm)?;
                        if fusion_weight(n, j, &eps).is_none() {
                            triplet.push(g);
                        } else {
                            singlet.push(g);
                        }
                    }
                }
            }
        }
    }
    let mut rep = CheckReport::new();
    for (gen, name) in [(0u8, "e0"), (1u8, "f0")] {
        for (chan, items) in [("singlet", &singlet), ("triplet", &triplet)] {
            let mut chk = Check::new(
                "fusion",
                &format!("{name}-{chan}"),
                &format!("{name} maps the {chan}-channel fusion relations into the kernel; {n} slots, p = {tag}, window {window}"),
            );
            let verdicts: Vec<Option<String>> = items
                .par_iter()
                .map(|g| {
                    let img = level0_on_mixed(&hats, g, gen)?;
                    let m = kb.member(&img)?;
                    Ok((!m.member).then(|| format!("residual of {} terms", m.residual.len())))
                })
                .collect::<Result<_>>()?;
            for v in verdicts {
                let ok = v.is_none();
                chk.case(ok, || v.unwrap_or_default());
            }
            rep.push(chk.finish());
        }
    }
    let mut chk = Check::new("fusion", "without-hwt", "fusion compatibility in an ambient without the highest weight family");
    chk.note("positive modes are never materialized, so this variant has no finite model");
    rep.push(chk.finish_with(Status::Skipped));
    Ok(rep)
}

/// Fusion compatibility of the level-0 action; requires `p = q^4`.
pub fn fusion_check(n: usize, p: &RatFuncQ, window: Window) -> Result<CheckReport> {
    if *p != qm(1, 4) {
        return Err(Error::FusionRequiresQ4);
    }
    fusion_compat(n, p, window)
}

/// The same compatibility at `p = q^3` on two slots; it must fail.
pub fn fusion_control(window: Window) -> Result<CheckReport> {
    let rep = fusion_compat(2, &qm(1, 3), window)?;
    let failing = rep.records.iter().filter(|r| r.status == Status::Fail).count();
    let mut chk = Check::new("fusion", "control-p-q3", "with p = q^3 the two-slot fusion compatibility fails");
    chk.case(failing > 0, || "every record passed".to_string());
    chk.note(format!("{failing} failing records"));
    let mut out = CheckReport::new();
    out.push(chk.finish());
    Ok(out)
}

/// The exchange kernel is stable under `e_0`, `f_0` and symmetric functions of
/// the `Ŷ_j`. `S_k` and `Ĝ_k` preserve the generators of index `j` with
/// `|j - k| ≠ 1`; the adjacent case is reported without a verdict.
pub fn stability_check(n: usize, p: &RatFuncQ, window: Window) -> Result<CheckReport> {
    let dmax = degree_of(window)?;
    let kb = kernel_build(n, window, &[Family::Hec, Family::Hwt], false)?;
    let hats = Hats::new(p.clone());
    let mut gens: Vec<(usize, SymVec)> = Vec::new();
    for d in 0..=dmax {
        for s in Ambient::slice_syms(n, d, None) {
            for j in 1..n {
                let g = hec_relation(&hats, &s, j)?;
                if !g.is_empty() {
                    gens.push((j, g));
                }
            }
        }
    }
    let all: Vec<&SymVec> = gens.iter().map(|(_, g)| g).collect();
    let leaves = |op: &dyn Fn(&TensorPoly) -> Result<TensorPoly>, g: &SymVec| -> Result<bool> {
        let y = from_tensor(&op(&to_tensor(g, n))?);
        Ok(!kb.member(&y)?.member)
    };
    let mut rep = CheckReport::new();

    type Op<'a> = Box<dyn Fn(&TensorPoly) -> Result<TensorPoly> + Sync + 'a>;
    let h = &hats;
    let global: Vec<(&str, Op)> = vec![
        ("e0", Box::new(move |x: &TensorPoly| e0_apply(h, x))),
        ("f0", Box::new(move |x: &TensorPoly| f0_apply(h, x))),
        (
            "y-sum",
            Box::new(move |x: &TensorPoly| {
                let mut acc = TensorPoly::zero(n);
                for j in 1..=n {
                    acc.add_assign_ref(&h.apply(FnOp::Y(j, 1), x)?);
                }
                Ok(acc)
            }),
        ),
        (
            "y-product",
            Box::new(move |x: &TensorPoly| {
                let mut acc = x.clone();
                for j in 1..=n {
                    acc = h.apply(FnOp::Y(j, 1), &acc)?;
                }
                Ok(acc)
            }),
        ),
    ];
    for (name, op) in &global {
        let mut chk = Check::new("stability", name, &format!("{name} maps exchange generators into the kernel; {n} slots, window {window}"));
        chk.cases(&all, |g| Ok(leaves(op, g)?.then(|| format!("{} terms", g.len()))));
        rep.push(chk.finish());
    }

    let mut adjacent = Check::new("stability", "adjacent", &format!("S_k, G_k on exchange generators of index j = k ± 1; {n} slots, window {window}"));
    for k in 1..n {
        let s_op = move |x: &TensorPoly| s_apply(x, k);
        let g_op = move |x: &TensorPoly| h.apply(FnOp::G(k, 1), x);
        for (name, op) in [("s", &s_op as &(dyn Fn(&TensorPoly) -> Result<TensorPoly> + Sync)), ("g", &g_op)] {
            let covered: Vec<&SymVec> = gens.iter().filter(|(j, _)| j.abs_diff(k) != 1).map(|(_, g)| g).collect();
            let adjacent_gens: Vec<&SymVec> = gens.iter().filter(|(j, _)| j.abs_diff(k) == 1).map(|(_, g)| g).collect();
            let mut chk = Check::new("stability", &format!("{name}{k}"), &format!("{name}{k} maps exchange generators of index j, |j - {k}| ≠ 1, into the kernel; {n} slots, window {window}"));
            chk.cases(&covered, |g| Ok(leaves(op, g)?.then(|| format!("{} terms", g.len()))));
            rep.push(chk.finish());
            let out: Vec<bool> = adjacent_gens.par_iter().map(|g| leaves(op, g).unwrap_or(true)).collect();
            adjacent.add_tested(out.len());
            adjacent.note(format!("{name}{k}: {} of {} leave the kernel", out.iter().filter(|&&b| b).count(), out.len()));
        }
    }
    if n > 2 {
        rep.push(adjacent.finish_with(Status::Skipped));
    }
    Ok(rep)
}

/// Rewriter soundness, completeness and empirical confluence on a window.
pub fn rewriter_check(n: usize, window: Window) -> Result<CheckReport> {
    let dmax = degree_of(window)?;
    let kb = kernel_build(n, window, &[Family::Hec, Family::Hwt], true)?;
    let rw = Rewriter::new();
    let slices: Vec<(u32, i32)> = (0..=dmax).flat_map(|d| (-(n as i32)..=n as i32).step_by(2).map(move |w| (d, w))).collect();
    let mut rep = CheckReport::new();

    let mut chk = Check::new("rewriter", "soundness", &format!("every rewrite step is a certified kernel member; {n} slots, window {window}"));
    let mut steps = Vec::new();
    for &(d, w) in &slices {
        steps.extend(rw.slice_steps(n, d, w)?);
    }
    chk.cases(&steps, |st| {
        let m = kb.member(&st.relation)?;
        Ok((!(m.member && m.certificate.is_some_and(|c| !c.is_empty()))).then(|| format!("step on {}", st.target)))
    });
    rep.push(chk.finish());

    let mut chk = Check::new("rewriter", "completeness", &format!("admissible symbols = dim(ambient/kernel) per slice; {n} slots, window {window}"));
    let amb_by_slice = |d: u32, w: i32| Ambient::slice_syms(n, d, Some(w));
    let mut total_adm = 0;
    for &(d, w) in &slices {
        let syms = amb_by_slice(d, w);
        let rank = kb.echelon.rows().iter().filter(|r| r.keys().next().is_some_and(|&c| syms.contains(&kb.ambient.syms()[c]))).count();
        let adm = admissible(n, d, w).len();
        total_adm += adm;
        chk.case(adm + rank == syms.len(), || format!("d={d} w={w}: {adm} admissible, quotient {}", syms.len() - rank));
    }
    chk.note(format!("{total_adm} admissible symbols"));
    rep.push(chk.finish());

    let mut chk = Check::new("rewriter", "confluence", &format!("rewriting at any violated position gives the same normal form; {n} slots, window {window}"));
    let mut syms = Vec::new();
    for &(d, w) in &slices {
        syms.extend(amb_by_slice(d, w).into_iter().filter(|s| violation(s).is_some()));
    }
    let hats = Hats::new(qm(1, 4));
    chk.cases(&syms, |s| {
        let sf = rw.slice_forms(n, s.degree(), s.weight())?;
        let want = &sf.forms[s];
        for j in 1..n {
            let (x, y) = (s.b[j - 1], s.b[j]);
            let ascending = x < y;
            if !(ascending || x == y) {
                continue;
            }
            let e = TensorPoly::basis(s.eps.clone(), LaurentPoly::monomial(n, s.b.clone(), RatFuncQ::one()));
            let y = if ascending { crate::hecke::s_inv_apply(&e, j)? } else { e };
            let r = from_tensor(&s_apply(&y, j)?.sub(&hats.apply(FnOp::G(j, 1), &y)?));
            let Some(c) = r.get(s).cloned() else { continue };
            let mut alt = SymVec::new();
            for (t, v) in r.iter().filter(|(t, _)| *t != s) {
                add_scaled(&mut alt, &-(v / &c), &sf.forms[t]);
            }
            // alternative rewrites may cycle back to `s` itself, in which case `r` is the zero relation
            if r.len() > 1 && alt != *want {
                return Ok(Some(format!("{s} at {j}")));
            }
        }
        Ok(None)
    });
    rep.push(chk.finish());
    Ok(rep)
}
