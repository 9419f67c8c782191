//! The cyclic operator `Z`, the commuting family `Y_j`, and the operator
//! identities behind the fusion compatibility proof.

use crate::error::Result;
use crate::hecke::{apply_pair, g_poly, rational, s_apply};
use crate::locality;
use crate::report::{Check, CheckReport};
use crate::ring::frac::RatLaurent;
use crate::ring::{qm, LaurentPoly, RatFuncQ};
use crate::tensor::{Op2, TensorPoly};
use crate::window::Window;

/// `Z = K_{1,2} K_{1,3} .. K_{1,N} p^{ϑ_1}`.
pub fn z_poly(f: &LaurentPoly, p: &RatFuncQ) -> Result<LaurentPoly> {
    let n = f.arity();
    let mut g = f.scale_var(1, p)?;
    for k in (2..=n).rev() {
        g = g.swap(1, k)?;
    }
    locality::record_poly("Z", 0, f, &g);
    Ok(g)
}

pub fn z_inv_poly(f: &LaurentPoly, p: &RatFuncQ) -> Result<LaurentPoly> {
    let n = f.arity();
    let mut g = f.clone();
    for k in 2..=n {
        g = g.swap(1, k)?;
    }
    let g = g.scale_var(1, &p.inv()?)?;
    locality::record_poly("Z", 0, f, &g);
    Ok(g)
}

/// `Y_j = G^{-1}_{j,j+1} .. G^{-1}_{N-1,N} Z G_{1,2} .. G_{j-1,j}`, rightmost first.
pub fn y_poly(f: &LaurentPoly, j: usize, p: &RatFuncQ, exponent: i8) -> Result<LaurentPoly> {
    let n = f.arity();
    let mut g = f.clone();
    if exponent > 0 {
        for i in (1..j).rev() {
            g = g_poly(&g, i, i + 1, 1)?;
        }
        g = z_poly(&g, p)?;
        for i in (j..n).rev() {
            g = g_poly(&g, i, i + 1, -1)?;
        }
    } else {
        for i in j..n {
            g = g_poly(&g, i, i + 1, 1)?;
        }
        g = z_inv_poly(&g, p)?;
        for i in 1..j {
            g = g_poly(&g, i, i + 1, -1)?;
        }
    }
    locality::record_poly("Y", 0, f, &g);
    Ok(g)
}

pub fn y_apply(x: &TensorPoly, j: usize, p: &RatFuncQ, exponent: i8) -> Result<TensorPoly> {
    x.map_coeffs(|f| y_poly(f, j, p, exponent))
}

fn differ(what: String, a: &LaurentPoly, b: &LaurentPoly) -> Option<String> {
    if a == b {
        None
    } else {
        Some(what)
    }
}

/// Affine Hecke relations among `G_{j,j+1}` and `Y_j` on every monomial of the window.
pub fn affine_hecke_suite(n: usize, p: &RatFuncQ, window: Window) -> Result<CheckReport> {
    let modes = window.modes(n);
    affine_hecke_on(n, p, &modes)
}

/// As [`affine_hecke_suite`] on an explicit list of mode vectors.
pub fn affine_hecke_on(n: usize, p: &RatFuncQ, modes: &[Vec<i32>]) -> Result<CheckReport> {
    let mut rep = CheckReport::new();
    let tag = p.to_text();
    let monos: Vec<LaurentPoly> = modes.iter().map(|m| LaurentPoly::mode_monomial(m)).collect();

    let mut chk = Check::new("affine-hecke", "y-commute", &format!("Y_j Y_k = Y_k Y_j, p = {tag}"));
    chk.cases(&monos, |f| {
        for j in 1..=n {
            for k in j + 1..=n {
                let a = y_poly(&y_poly(f, k, p, 1)?, j, p, 1)?;
                let b = y_poly(&y_poly(f, j, p, 1)?, k, p, 1)?;
                if let Some(m) = differ(format!("Y{j} Y{k} on {f}"), &a, &b) {
                    return Ok(Some(m));
                }
            }
        }
        Ok(None)
    });
    rep.push(chk.finish());

    let mut chk = Check::new("affine-hecke", "g-y-g", &format!("G_j Y_j G_j = Y_(j+1), p = {tag}"));
    chk.cases(&monos, |f| {
        for j in 1..n {
            let a = g_poly(&y_poly(&g_poly(f, j, j + 1, 1)?, j, p, 1)?, j, j + 1, 1)?;
            let b = y_poly(f, j + 1, p, 1)?;
            if let Some(m) = differ(format!("j={j} on {f}"), &a, &b) {
                return Ok(Some(m));
            }
        }
        Ok(None)
    });
    rep.push(chk.finish());

    let mut chk = Check::new("affine-hecke", "g-y-commute", &format!("[G_j, Y_k] = 0 for k not in (j, j+1), p = {tag}"));
    chk.cases(&monos, |f| {
        for j in 1..n {
            for k in (1..=n).filter(|&k| k != j && k != j + 1) {
                let a = g_poly(&y_poly(f, k, p, 1)?, j, j + 1, 1)?;
                let b = y_poly(&g_poly(f, j, j + 1, 1)?, k, p, 1)?;
                if let Some(m) = differ(format!("G{j} Y{k} on {f}"), &a, &b) {
                    return Ok(Some(m));
                }
            }
        }
        Ok(None)
    });
    rep.push(chk.finish());

    let mut chk = Check::new("affine-hecke", "y-inverse-and-cone", "Y_j Y_j^-1 = 1; Y_j preserves degree and the non-positive mode cone");
    chk.cases(&monos, |f| {
        let deg = f.total_degrees();
        let in_cone = f.terms().all(|(e, _)| e.iter().all(|&x| x >= 0));
        for j in 1..=n {
            let y = y_poly(f, j, p, 1)?;
            if y_poly(&y, j, p, -1)? != *f {
                return Ok(Some(format!("Y{j}^-1 Y{j} on {f}")));
            }
            if y.total_degrees() != deg {
                return Ok(Some(format!("Y{j} changes degree of {f}")));
            }
            if in_cone && !y.terms().all(|(e, _)| e.iter().all(|&x| x >= 0)) {
                return Ok(Some(format!("Y{j} leaves the cone on {f}")));
            }
        }
        Ok(None)
    });
    rep.push(chk.finish());
    Ok(rep)
}

/// A fixed pseudo-random Laurent polynomial in `n` variables.
fn probe(n: usize, seed: u64) -> LaurentPoly {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut f = LaurentPoly::zero(n);
    for _ in 0..4 {
        let e: Vec<i32> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        f.add_term(e, &qm(rng.gen_range(1..=5), rng.gen_range(-2..=2)));
    }
    f
}

/// Exact operator identities used in the fusion compatibility argument.
pub fn lemma_suite() -> Result<CheckReport> {
    let mut rep = CheckReport::new();
    let singlet = TensorPoly::singlet();

    let mut chk = Check::new("lemmas", "singlet-transport", "S_23 S_12 (v_e ⊗ v1) = q^-1 v1 ⊗ v_e");
    for e in ["+", "-"] {
        let ve = TensorPoly::vector(e);
        let x = tensor_concat(&ve, &singlet);
        let lhs = s_apply(&s_apply(&x, 1)?, 2)?;
        let rhs = tensor_concat(&singlet, &ve).scale(&qm(1, -1));
        chk.case(lhs.sub(&rhs).is_zero(), || format!("eps = {e}"));
    }
    rep.push(chk.finish());

    let mut chk = Check::new("lemmas", "triplet-transport", "S_23 S_12 (V ⊗ V3) has no singlet component in slots 1, 2");
    let p_sing = Op2::hecke().add(&Op2::identity().scale(&qm(1, -1))).scale(&(&qm(1, 1) + &qm(1, -1)).inv()?);
    let trips = [TensorPoly::vector("++"), TensorPoly::vector("+-").add(&TensorPoly::vector("-+").scale(&qm(1, 1))), TensorPoly::vector("--")];
    for e in ["+", "-"] {
        for t in &trips {
            let x = tensor_concat(&TensorPoly::vector(e), t);
            let y = s_apply(&s_apply(&x, 1)?, 2)?;
            chk.case(apply_pair(&y, 1, 2, &p_sing)?.is_zero(), || format!("eps = {e}, triplet {t:?}"));
        }
    }
    rep.push(chk.finish());

    let mut chk = Check::new("lemmas", "cbar-g-exchange", "Cbar_23 G^-1_12 = (G^-1_12 + C_23) Cbar_13, cleared by z_j - z_k factors");
    for seed in 0..6 {
        let f = RatLaurent::from_poly(probe(3, seed));
        let lhs = rational::cbar(&rational::g(&f, 1, 2, -1)?, 2, 3)?;
        let cb = rational::cbar(&f, 1, 3)?;
        let rhs = rational::g(&cb, 1, 2, -1)?.add(&rational::c(&cb, 2, 3)?);
        chk.case(lhs.equals(&rhs), || format!("seed {seed}"));
    }
    rep.push(chk.finish());

    let mut chk = Check::new("lemmas", "c-g-cancellation", "(G^-1_(j,j+1) + C_(j+1,4)) C_(j,4) = C_(j+1,4) G_(j,j+1), four variables");
    for seed in 0..6 {
        let f = RatLaurent::from_poly(probe(4, 100 + seed));
        for j in 1..=2 {
            let cj = rational::c(&f, j, 4)?;
            let lhs = rational::g(&cj, j, j + 1, -1)?.add(&rational::c(&cj, j + 1, 4)?);
            let rhs = rational::c(&rational::g(&f, j, j + 1, 1)?, j + 1, 4)?;
            chk.case(lhs.equals(&rhs), || format!("seed {seed}, j = {j}"));
        }
    }
    rep.push(chk.finish());
    Ok(rep)
}

/// `a ⊗ b` for elements with constant coefficients.
fn tensor_concat(a: &TensorPoly, b: &TensorPoly) -> TensorPoly {
    let n = a.arity() + b.arity();
    let mut out = TensorPoly::zero_with_vars(n, n);
    for (ea, fa) in a.components() {
        for (eb, fb) in b.components() {
            let c = fa.coeff(&vec![0; fa.arity()]) * fb.coeff(&vec![0; fb.arity()]);
            out.add_component(ea.concat(eb), &LaurentPoly::constant(n, c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_squared_scales_all_variables() {
        let p = qm(1, 4);
        let f = probe(2, 7);
        let zz = z_poly(&z_poly(&f, &p).unwrap(), &p).unwrap();
        let want = f.scale_var(1, &p).unwrap().scale_var(2, &p).unwrap();
        assert_eq!(zz, want);
    }

    #[test]
    fn z_single_variable() {
        let f = LaurentPoly::mode_monomial(&[3]);
        assert_eq!(z_poly(&f, &qm(1, 4)).unwrap(), f.scale(&qm(1, -12)));
    }

    #[test]
    fn y_on_constants() {
        let one = LaurentPoly::one(2);
        let p = qm(1, 4);
        assert_eq!(y_poly(&one, 1, &p, 1).unwrap(), one.scale(&qm(1, -1)));
        assert_eq!(y_poly(&one, 2, &p, 1).unwrap(), one.scale(&qm(1, 1)));
    }
}
