//! Generator families of the kernel and the series maps behind them.

use crate::error::{Error, Result};
use crate::hecke::{s_apply, s_inv_apply};
use crate::ring::{qm, Exponent, LaurentPoly, RatFuncQ};
use crate::symbol::{compositions, FnOp, Hats};
use crate::tensor::{SignString, TensorPoly};

use super::{add_scaled, add_sym, from_tensor, Ambient, Sym, SymVec};

/// `(S_{j,j+1} - Ĝ_{j,j+1}) F` for one symbol.
pub fn hec_relation(hats: &Hats, s: &Sym, j: usize) -> Result<SymVec> {
    let x = TensorPoly::basis(s.eps.clone(), LaurentPoly::monomial(s.n(), s.b.clone(), RatFuncQ::one()));
    let r = s_apply(&x, j)?.sub(&hats.apply(FnOp::G(j, 1), &x)?);
    Ok(from_tensor(&r))
}

/// All HEC generators of sector `n`, degree `d`, weight `w`.
pub fn hec_generators(hats: &Hats, n: usize, d: u32, w: i32) -> Result<Vec<SymVec>> {
    let mut out = Vec::new();
    for s in Ambient::slice_syms(n, d, Some(w)) {
        for j in 1..n {
            let g = hec_relation(hats, &s, j)?;
            if !g.is_empty() {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// Channel weight `(-q)^{N-j+(ε_j-1)/2}` of the singlet channel; `None` on the triplet channel.
pub fn fusion_weight(n: usize, j: usize, eps: &SignString) -> Option<RatFuncQ> {
    let (a, b) = (eps.at(j), eps.at(j + 1));
    if a + b != 0 {
        return None;
    }
    let e = n as i64 - j as i64 + (a as i64 - 1) / 2;
    Some(qm(if e % 2 == 0 { 1 } else { -1 }, e))
}

/// `∏_{i<j}(z_i - q^2 z_j) ∏_{i≥j+2}(q^{-2} z_j - q^2 z_i)` in the `N-1`
/// variables left after removing `z_{j+1}`.
pub fn fusion_prefactor(n: usize, j: usize) -> LaurentPoly {
    let m = n - 1;
    let mut p = LaurentPoly::one(m);
    for i in 1..j {
        let f = &LaurentPoly::var(m, i) - &LaurentPoly::var(m, j).scale(&qm(1, 2));
        p = &p * &f;
    }
    for i in j + 2..=n {
        let f = &LaurentPoly::var(m, j).scale(&qm(1, -2)) - &LaurentPoly::var(m, i - 1).scale(&qm(1, 2));
        p = &p * &f;
    }
    p
}

/// Substitutes `z_{j+1} = q^{-2} z_j` in every coefficient.
pub fn specialize_adjacent(x: &TensorPoly, j: usize) -> Result<TensorPoly> {
    let n = x.vars();
    if j == 0 || j >= n {
        return Err(Error::IndexOutOfRange { index: j, arity: n });
    }
    let mut out = TensorPoly::zero_with_vars(x.arity(), n - 1);
    for (e, f) in x.components() {
        out.add_component(e.clone(), &f.specialize(j + 1, j, &qm(1, -2))?);
    }
    Ok(out)
}

/// Contracts slots `j, j+1` against the singlet with the fusion channel
/// weights and attaches the fusion prefactor; the variable `z_{j+1}` is
/// specialized away and `z_j` stays as a spectator.
pub fn fuse(x: &TensorPoly, j: usize) -> Result<TensorPoly> {
    let n = x.arity();
    if n < 2 {
        return Err(Error::Arity { arity: n, need: 2 });
    }
    if j == 0 || j >= n {
        return Err(Error::IndexOutOfRange { index: j, arity: n });
    }
    let spec = specialize_adjacent(x, j)?;
    let pre = fusion_prefactor(n, j);
    let mut out = TensorPoly::zero_with_vars(n - 2, n - 1);
    for (e, f) in spec.components() {
        if let Some(w) = fusion_weight(n, j, e) {
            out.add_component(e.without_pair(j), &(&pre * f).scale(&w));
        }
    }
    Ok(out)
}

/// Inserts `(u, v)` at 0-based position `at` in place of one merged entry.
fn split_at(bm: &[i32], at: usize, u: i32, v: i32) -> Exponent {
    let mut b = bm.to_vec();
    b[at] = u;
    b.insert(at + 1, v);
    b
}

/// The Laurent coefficient at `z^B` of
/// `F_ε|_{z_{j+1}=q^{-2}z_j} - weight · prefactor · F_{ε'}`, as a relation
/// between sector `n` and sector `n - 2`.
pub fn fus_relation(eps: &SignString, j: usize, bm: &[i32]) -> Result<SymVec> {
    let n = eps.len();
    let mut out = SymVec::new();
    let at = j - 1;
    for t in 0..=bm[at] {
        let b = split_at(bm, at, bm[at] - t, t);
        let spec = LaurentPoly::monomial(n, b.clone(), RatFuncQ::one()).specialize(j + 1, j, &qm(1, -2))?;
        add_sym(&mut out, Sym::new(eps.clone(), b), &spec.coeff(bm));
    }
    if let Some(w) = fusion_weight(n, j, eps) {
        let eps2 = eps.without_pair(j);
        for (mu, c) in fusion_prefactor(n, j).terms() {
            if mu[at] != bm[at] {
                continue;
            }
            let mut b2: Exponent = bm.iter().zip(mu).map(|(x, y)| x - y).collect();
            b2.remove(at);
            if b2.iter().all(|&v| v >= 0) {
                add_sym(&mut out, Sym::new(eps2.clone(), b2), &-(&w * c));
            }
        }
    }
    Ok(out)
}

/// All fusion generators of sector `n` at degree `d`, weight `w`.
pub fn fus_generators(n: usize, d: u32, w: i32) -> Result<Vec<SymVec>> {
    let mut out = Vec::new();
    for eps in SignString::with_weight(n, w) {
        for j in 1..n {
            for bm in compositions(n - 1, d) {
                let g = fus_relation(&eps, j, &bm)?;
                if !g.is_empty() {
                    out.push(g);
                }
            }
        }
    }
    Ok(out)
}

/// Slot coefficient of `(z_{j+1}/z_j)^t` in `R̃(z_{j+1}/z_j)` expanded in
/// powers of `z_{j+1}/z_j`, applied to `x`.
fn r_coeff_apply(x: &TensorPoly, j: usize, t: i32) -> Result<TensorPoly> {
    let si = s_inv_apply(x, j)?;
    if t == 0 {
        return Ok(si.scale(&qm(1, 1)));
    }
    let s = s_apply(x, j)?;
    Ok(si.scale(&qm(1, 2 * t as i64 + 1)).sub(&s.scale(&qm(1, 2 * t as i64 - 1))))
}

/// The Laurent coefficient at `z^b` of
/// `F(.., z_{j+1}, z_j, ..) - R̃_{j,j+1}(z_{j+1}/z_j) F(z)`; `b_j` may be `-1`,
/// which stands for every negative value up to a power of `q`.
pub fn fcom_relation(eps: &SignString, j: usize, b: &[i32]) -> Result<SymVec> {
    let n = eps.len();
    let (a, c) = (j - 1, j);
    let mut out = SymVec::new();
    if b[a] >= 0 && b[c] >= 0 {
        let mut sb = b.to_vec();
        sb.swap(a, c);
        add_sym(&mut out, Sym::new(eps.clone(), sb), &RatFuncQ::one());
    }
    for t in (-b[a]).max(0)..=b[c] {
        let mut bt = b.to_vec();
        bt[a] += t;
        bt[c] -= t;
        let x = TensorPoly::basis(eps.clone(), LaurentPoly::monomial(n, bt, RatFuncQ::one()));
        add_scaled(&mut out, &qm(-1, 0), &from_tensor(&r_coeff_apply(&x, j, t)?));
    }
    Ok(out)
}

/// All commutation generators of sector `n`, degree `d`, weight `w`.
pub fn fcom_generators(n: usize, d: u32, w: i32) -> Result<Vec<SymVec>> {
    let mut out = Vec::new();
    for eps in SignString::with_weight(n, w) {
        for j in 1..n {
            for bm in compositions(n - 1, d) {
                let s = bm[j - 1];
                for u in -1..=s {
                    let b = split_at(&bm, j - 1, u, s - u);
                    let g = fcom_relation(&eps, j, &b)?;
                    if !g.is_empty() {
                        out.push(g);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `ζ`-exponent of `∏ζ_j^{(1+ε_j)/2} / ∏ z_j^{N-j}`.
pub fn fbar_shift(eps: &SignString) -> Vec<i32> {
    let n = eps.len() as i32;
    eps.signs().iter().enumerate().map(|(i, &e)| (1 + e as i32) / 2 - 2 * (n - 1 - i as i32)).collect()
}

/// Coefficient of `ζ^g` in
/// `∏ζ_j^{(1+ε_j)/2} / (∏ z_j^{N-j} ∏_{j<k}(1 - q^2 z_k/z_j)) F_{-ε}(z)`, `z = ζ^2`,
/// with the denominators expanded in powers of `z_k/z_j`.
pub fn fbar_coeff(eps: &SignString, g: &[i32]) -> SymVec {
    let n = eps.len();
    let base: Vec<i32> = g.iter().zip(fbar_shift(eps)).map(|(x, y)| x - y).collect();
    let mut out = SymVec::new();
    let tot: i32 = base.iter().sum();
    if tot < 0 || tot % 2 != 0 {
        return out;
    }
    let d = tot / 2;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (j + 1..n).map(move |k| (j, k))).collect();
    let neg = eps.flipped();
    // shift[k] accumulates 2 n_{jk} for j < k and -2 n_{kl} for l > k
    fn rec(pairs: &[(usize, usize)], i: usize, shift: &mut Vec<i32>, pw: i64, base: &[i32], d: i32, neg: &SignString, out: &mut SymVec) {
        if i == pairs.len() {
            let b: Option<Exponent> = base
                .iter()
                .zip(shift.iter())
                .map(|(x, s)| {
                    let r = x - s;
                    (r >= 0 && r % 2 == 0).then_some(r / 2)
                })
                .collect();
            if let Some(b) = b {
                add_sym(out, Sym::new(neg.clone(), b), &qm(1, pw));
            }
            return;
        }
        let (j, k) = pairs[i];
        let mut t = 0;
        loop {
            // b_j = (base_j - shift_j)/2 grows with t and must stay ≤ d
            if (base[j] - shift[j]) > 2 * d {
                break;
            }
            rec(pairs, i + 1, shift, pw + 2 * t as i64, base, d, neg, out);
            shift[j] -= 2;
            shift[k] += 2;
            t += 1;
        }
        shift[j] += 2 * t;
        shift[k] -= 2 * t;
    }
    let mut shift = vec![0; n];
    rec(&pairs, 0, &mut shift, 0, &base, d, &neg, &mut out);
    out
}

/// Symbol degree of the `ζ^g` coefficient of `F̄_ε`, if integral.
pub fn fbar_degree(eps: &SignString, g: &[i32]) -> Option<u32> {
    let tot: i32 = g.iter().zip(fbar_shift(eps)).map(|(x, y)| x - y).sum();
    (tot >= 0 && tot % 2 == 0).then_some((tot / 2) as u32)
}

/// `ζ` exponents whose `F̄_ε` coefficient has degree `d`, reached with at
/// most `spread` units of denominator expansion per pair.
pub fn fbar_support(eps: &SignString, d: u32, spread: i32) -> Vec<Vec<i32>> {
    let n = eps.len();
    let sh = fbar_shift(eps);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (j + 1..n).map(move |k| (j, k))).collect();
    let mut shifts = vec![vec![0i32; n]];
    for &(j, k) in &pairs {
        shifts = shifts
            .into_iter()
            .flat_map(|s| {
                (0..=spread).map(move |t| {
                    let mut s = s.clone();
                    s[j] -= 2 * t;
                    s[k] += 2 * t;
                    s
                })
            })
            .collect();
    }
    let mut out = std::collections::BTreeSet::new();
    for b in compositions(n, d) {
        for s in &shifts {
            out.insert((0..n).map(|i| 2 * b[i] + sh[i] + s[i]).collect::<Vec<i32>>());
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fusion_weights_match_channels() {
        let pm = SignString::parse("+-").unwrap();
        let mp = SignString::parse("-+").unwrap();
        assert_eq!(fusion_weight(2, 1, &pm), Some(qm(-1, 1)));
        assert_eq!(fusion_weight(2, 1, &mp), Some(qm(1, 0)));
        assert_eq!(fusion_weight(2, 1, &SignString::parse("++").unwrap()), None);
    }

    #[test]
    fn prefactor_vanishes_on_the_shifted_diagonal() {
        // j = 2 of four: (z_1 - q^2 z_2)(q^-2 z_2 - q^2 z_3)
        let p = fusion_prefactor(4, 2);
        assert_eq!(p.len(), 4);
        let s = p.specialize(1, 2, &qm(1, 2)).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn fbar_single_slot_is_a_shift() {
        let e = SignString::parse("+").unwrap();
        let c = fbar_coeff(&e, &[5]);
        let want: SymVec = [(Sym::new(SignString::parse("-").unwrap(), vec![2]), RatFuncQ::one())].into_iter().collect();
        assert_eq!(c, want);
        assert!(fbar_coeff(&e, &[4]).is_empty());
    }
}
