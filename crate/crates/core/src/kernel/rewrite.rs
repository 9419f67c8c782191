//! Normal ordering of symbols modulo the exchange relations.
//!
//! A symbol `F_{ε,-b}` is admissible when `b` is weakly decreasing, no value
//! repeats more than twice, and a repeated pair carries signs `(-, +)`.
//! Every other symbol is rewritten with one exchange relation whose remaining
//! terms are strictly larger in [`order_key`], so rewriting terminates.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::hecke::{s_apply, s_inv_apply};
use crate::ring::{qm, LaurentPoly, RatFuncQ};
use crate::symbol::{FnOp, Hats};
use crate::tensor::{SignString, TensorPoly};

use super::{add_scaled, from_tensor, Ambient, Sym, SymVec};

/// First position `j` (1-based) where the symbol is not normal ordered, and
/// whether the modes there are strictly ascending.
pub fn violation(s: &Sym) -> Option<(usize, bool)> {
    for i in 0..s.n().saturating_sub(1) {
        let (x, y) = (s.b[i], s.b[i + 1]);
        if x < y {
            return Some((i + 1, true));
        }
        if x == y && !(s.eps.signs()[i] < 0 && s.eps.signs()[i + 1] > 0) {
            return Some((i + 1, false));
        }
    }
    None
}

pub fn is_admissible(s: &Sym) -> bool {
    violation(s).is_none()
}

/// Admissible symbols of one slice.
pub fn admissible(n: usize, d: u32, w: i32) -> Vec<Sym> {
    Ambient::slice_syms(n, d, Some(w)).into_iter().filter(is_admissible).collect()
}

/// Well-founded order: rewriting only ever produces larger keys.
pub type OrderKey = (Vec<i32>, i64, i64, Vec<i32>, SignString);

pub fn order_key(s: &Sym) -> OrderKey {
    let mut part = s.b.clone();
    part.sort_unstable_by(|a, b| b.cmp(a));
    let n = s.n();
    let mut inv_b = 0i64;
    let mut inv_e = 0i64;
    for i in 0..n {
        for k in i + 1..n {
            if s.b[i] < s.b[k] {
                inv_b += 1;
            }
            if s.b[i] == s.b[k] && s.eps.signs()[i] > s.eps.signs()[k] {
                inv_e += 1;
            }
        }
    }
    (part, -inv_b, -inv_e, s.b.clone(), s.eps.clone())
}

/// One rewrite: `relation` lies in the span of the exchange generators, has
/// coefficient one on `target`, and all its other symbols have larger keys.
#[derive(Clone, Debug)]
pub struct Step {
    pub target: Sym,
    pub relation: SymVec,
}

/// A normal form: a combination of admissible symbols.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm(pub SymVec);

/// Normal forms of every symbol in one `(N, d, w)` slice.
#[derive(Debug)]
pub struct SliceForms {
    pub admissible: Vec<Sym>,
    pub forms: HashMap<Sym, SymVec>,
}

pub struct Rewriter {
    hats: Hats,
    slices: Mutex<HashMap<(usize, u32, i32), Arc<SliceForms>>>,
}

impl Default for Rewriter {
    fn default() -> Self {
        Self::new()
    }
}

impl Rewriter {
    pub fn new() -> Self {
        Rewriter { hats: Hats::new(qm(1, 4)), slices: Mutex::new(HashMap::new()) }
    }

    /// The rewrite applied to `s`, or `None` if `s` is admissible.
    pub fn step(&self, s: &Sym) -> Result<Option<Step>> {
        let Some((j, ascending)) = violation(s) else { return Ok(None) };
        let x = TensorPoly::basis(s.eps.clone(), LaurentPoly::monomial(s.n(), s.b.clone(), RatFuncQ::one()));
        let y = if ascending { s_inv_apply(&x, j)? } else { x };
        let r = s_apply(&y, j)?.sub(&self.hats.apply(FnOp::G(j, 1), &y)?);
        let r = from_tensor(&r);
        let c = r.get(s).cloned().unwrap_or_else(RatFuncQ::zero);
        if c.is_zero() {
            return Err(Error::Invariant(format!("exchange relation at {j} does not involve {s}")));
        }
        let k = order_key(s);
        if let Some(t) = r.keys().find(|t| *t != s && order_key(t) <= k) {
            return Err(Error::RewriteBudget { steps: 0, trace: format!("rewriting {s} at {j} produces {t}, not larger") });
        }
        let mut relation = SymVec::new();
        add_scaled(&mut relation, &c.inv()?, &r);
        Ok(Some(Step { target: s.clone(), relation }))
    }

    /// Normal forms of the whole slice, computed from the largest key down.
    pub fn slice_forms(&self, n: usize, d: u32, w: i32) -> Result<Arc<SliceForms>> {
        if let Some(f) = self.slices.lock().unwrap_or_else(|e| e.into_inner()).get(&(n, d, w)) {
            return Ok(f.clone());
        }
        let mut syms = Ambient::slice_syms(n, d, Some(w));
        syms.sort_by_cached_key(order_key);
        let mut forms: HashMap<Sym, SymVec> = HashMap::with_capacity(syms.len());
        let mut adm = Vec::new();
        for (steps, s) in syms.iter().rev().enumerate() {
            let nf = match self.step(s)? {
                None => {
                    adm.push(s.clone());
                    [(s.clone(), RatFuncQ::one())].into_iter().collect()
                }
                Some(st) => {
                    let mut acc = SymVec::new();
                    for (t, c) in st.relation.iter().filter(|(t, _)| *t != s) {
                        let f = forms.get(t).ok_or_else(|| Error::RewriteBudget {
                            steps,
                            trace: format!("{s} depends on unresolved {t}"),
                        })?;
                        add_scaled(&mut acc, &-c, f);
                    }
                    acc
                }
            };
            forms.insert(s.clone(), nf);
        }
        adm.sort();
        let out = Arc::new(SliceForms { admissible: adm, forms });
        self.slices.lock().unwrap_or_else(|e| e.into_inner()).insert((n, d, w), out.clone());
        Ok(out)
    }

    /// Normal form of any finite combination of symbols.
    pub fn normal_form(&self, x: &SymVec) -> Result<NormalForm> {
        let mut out = SymVec::new();
        for (s, c) in x {
            let sf = self.slice_forms(s.n(), s.degree(), s.weight())?;
            add_scaled(&mut out, c, &sf.forms[s]);
        }
        Ok(NormalForm(out))
    }

    /// Every rewrite step of a slice, for soundness checks.
    pub fn slice_steps(&self, n: usize, d: u32, w: i32) -> Result<Vec<Step>> {
        Ambient::slice_syms(n, d, Some(w)).iter().filter_map(|s| self.step(s).transpose()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(e: &str, b: &[i32]) -> Sym {
        Sym::new(SignString::parse(e).unwrap(), b.to_vec())
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible(&sym("++", &[2, 1])));
        assert!(is_admissible(&sym("-+", &[1, 1])));
        assert!(!is_admissible(&sym("+-", &[1, 1])));
        assert!(!is_admissible(&sym("+-", &[0, 1])));
        assert!(!is_admissible(&sym("-+-", &[1, 1, 1])));
        assert!(is_admissible(&sym("", &[])));
    }

    #[test]
    fn two_slot_counts() {
        let want = [1, 4, 5, 8, 9];
        for (d, &w) in want.iter().enumerate() {
            let c: usize = [-2, 0, 2].iter().map(|&wt| admissible(2, d as u32, wt).len()).sum();
            assert_eq!(c, w, "degree {d}");
        }
    }

    #[test]
    fn admissible_symbol_is_fixed() {
        let r = Rewriter::new();
        let s = sym("+-", &[3, 1]);
        let x: SymVec = [(s.clone(), RatFuncQ::one())].into_iter().collect();
        assert_eq!(r.normal_form(&x).unwrap().0, x);
    }
}
