//! Symbol space: coefficients of generating series.
//!
//! A `TensorPoly` whose coefficient monomial `z^b` (all `b_j ≥ 0`) stands for
//! the symbol `F_{ε,-b}`. Symbols with a positive mode index are dropped
//! (highest weight truncation). A function operator `X` on `C[z]` acts on
//! symbols through its transpose `X̂ F_n = Σ_m [z^{-n}](X z^{-m}) F_m`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::affine::{y_poly, z_inv_poly, z_poly};
use crate::error::{Error, Result};
use crate::hecke::g_poly;
use crate::locality;
use crate::ring::{Exponent, LaurentPoly, RatFuncQ};
use crate::tensor::TensorPoly;

/// Exponent vectors `b ≥ 0` with `Σb = d`, in a fixed order.
#[derive(Debug)]
pub struct Slice {
    pub n: usize,
    pub d: u32,
    monos: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

/// Compositions of `d` into `n` non-negative parts, lexicographically decreasing.
pub fn compositions(n: usize, d: u32) -> Vec<Exponent> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in compositions(n - 1, d - first) {
            rest.insert(0, first as i32);
            out.push(rest);
        }
    }
    out
}

impl Slice {
    pub fn new(n: usize, d: u32) -> Self {
        let monos = compositions(n, d);
        let index = monos.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
        Slice { n, d, monos, index }
    }

    pub fn dim(&self) -> usize {
        self.monos.len()
    }

    pub fn monomials(&self) -> &[Exponent] {
        &self.monos
    }

    pub fn index_of(&self, b: &[i32]) -> Option<usize> {
        self.index.get(b).copied()
    }
}

/// A function operator tabulated on one degree slice.
pub struct FnTable {
    slice: Arc<Slice>,
    cols: Vec<LaurentPoly>,
    rows: HashMap<Exponent, Vec<(usize, RatFuncQ)>>,
}

impl FnTable {
    pub fn build(slice: Arc<Slice>, op: &(dyn Fn(&LaurentPoly) -> Result<LaurentPoly> + Sync)) -> Result<Self> {
        let n = slice.n;
        let cols = slice
            .monos
            .par_iter()
            .map(|b| {
                let out = op(&LaurentPoly::monomial(n, b.clone(), RatFuncQ::one()))?;
                if out.terms().any(|(e, _)| e.iter().any(|&x| x < 0) || e.iter().sum::<i32>() != slice.d as i32) {
                    return Err(Error::Invariant(format!("operator leaves the degree-{} cone on {b:?}", slice.d)));
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut rows: HashMap<Exponent, Vec<(usize, RatFuncQ)>> = HashMap::new();
        for (i, col) in cols.iter().enumerate() {
            for (e, m) in col.terms() {
                rows.entry(e.clone()).or_default().push((i, m.clone()));
            }
        }
        Ok(FnTable { slice, cols, rows })
    }

    /// `X̂` on a symbol polynomial supported on this slice.
    pub fn hat(&self, c: &LaurentPoly) -> LaurentPoly {
        let mut acc: HashMap<usize, RatFuncQ> = HashMap::new();
        for (e, cn) in c.terms() {
            for (i, m) in self.rows.get(e).into_iter().flatten() {
                *acc.entry(*i).or_insert_with(RatFuncQ::zero) += &(cn * m);
            }
        }
        LaurentPoly::from_terms(self.slice.n, acc.into_iter().map(|(i, v)| (self.slice.monos[i].clone(), v)))
    }

    pub fn column(&self, i: usize) -> &LaurentPoly {
        &self.cols[i]
    }

    pub fn slice(&self) -> &Slice {
        &self.slice
    }
}

/// Function operators that can be hatted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FnOp {
    /// `G_{j,j+1}^{±1}`.
    G(usize, i8),
    /// `Y_j^{±1}`.
    Y(usize, i8),
    /// `Z^{±1}`.
    Z(i8),
}

impl FnOp {
    pub fn apply(&self, f: &LaurentPoly, p: &RatFuncQ) -> Result<LaurentPoly> {
        match *self {
            FnOp::G(j, e) => g_poly(f, j, j + 1, e),
            FnOp::Y(j, e) => y_poly(f, j, p, e),
            FnOp::Z(e) => {
                if e > 0 {
                    z_poly(f, p)
                } else {
                    z_inv_poly(f, p)
                }
            }
        }
    }
}

/// Cache of hatted function operators for one value of `p`.
pub struct Hats {
    p: RatFuncQ,
    slices: Mutex<HashMap<(usize, u32), Arc<Slice>>>,
    tables: Mutex<HashMap<(FnOp, usize, u32), Arc<FnTable>>>,
}

impl Hats {
    pub fn new(p: RatFuncQ) -> Self {
        Hats { p, slices: Mutex::new(HashMap::new()), tables: Mutex::new(HashMap::new()) }
    }

    pub fn p(&self) -> &RatFuncQ {
        &self.p
    }

    pub fn slice(&self, n: usize, d: u32) -> Arc<Slice> {
        let mut s = self.slices.lock().unwrap_or_else(|e| e.into_inner());
        s.entry((n, d)).or_insert_with(|| Arc::new(Slice::new(n, d))).clone()
    }

    pub fn table(&self, op: FnOp, n: usize, d: u32) -> Result<Arc<FnTable>> {
        if let Some(t) = self.tables.lock().unwrap_or_else(|e| e.into_inner()).get(&(op, n, d)) {
            return Ok(t.clone());
        }
        let p = self.p.clone();
        let t = Arc::new(FnTable::build(self.slice(n, d), &|f| op.apply(f, &p))?);
        self.tables.lock().unwrap_or_else(|e| e.into_inner()).insert((op, n, d), t.clone());
        Ok(t)
    }

    /// `X̂` applied componentwise to a symbol element. A transpose moves
    /// modes away from the boundary rather than towards it, so its ledger
    /// margin is measured from the cone `m ≤ 0` instead of from the input.
    pub fn apply(&self, op: FnOp, x: &TensorPoly) -> Result<TensorPoly> {
        let n = x.vars();
        let mut out = TensorPoly::zero_with_vars(x.arity(), n);
        for (eps, c) in x.components() {
            for (d, part) in split_degrees(c)? {
                let t = self.table(op, n, d)?;
                let h = t.hat(&part);
                locality::record("hat", 0, Some(0), locality::max_mode_poly(&h));
                out.add_component(eps.clone(), &h);
            }
        }
        Ok(out)
    }
}

/// Splits a symbol polynomial by degree; fails on symbols with positive modes.
pub fn split_degrees(c: &LaurentPoly) -> Result<Vec<(u32, LaurentPoly)>> {
    let mut parts: std::collections::BTreeMap<u32, LaurentPoly> = Default::default();
    for (e, v) in c.terms() {
        if e.iter().any(|&x| x < 0) {
            return Err(Error::OutsideWindow(format!("symbol with positive mode {e:?}")));
        }
        let d = e.iter().sum::<i32>() as u32;
        parts.entry(d).or_insert_with(|| LaurentPoly::zero(c.arity())).add_term(e.clone(), v);
    }
    Ok(parts.into_iter().collect())
}

/// Drops symbols with a positive mode index.
pub fn truncate_hw(x: &TensorPoly) -> TensorPoly {
    x.map_coeffs(|f| Ok(LaurentPoly::from_terms(f.arity(), f.terms().filter(|(e, _)| e.iter().all(|&v| v >= 0)).map(|(e, c)| (e.clone(), c.clone())))))
        .expect("infallible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::qm;

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(3, 2).len(), 6);
        assert_eq!(compositions(1, 4), vec![vec![4]]);
        assert_eq!(compositions(0, 0).len(), 1);
    }

    #[test]
    fn hat_reverses_composition() {
        let hats = Hats::new(qm(1, 4));
        let x = TensorPoly::basis(crate::tensor::SignString::parse("+-").unwrap(), LaurentPoly::monomial(2, vec![2, 1], RatFuncQ::one()));
        // (X Y)^ = Ŷ X̂ with X = G, Y = Z
        let lhs = hats.apply(FnOp::Z(1), &hats.apply(FnOp::G(1, 1), &x).unwrap()).unwrap();
        let p = qm(1, 4);
        let slice = hats.slice(2, 3);
        let comp = FnTable::build(slice, &|f| g_poly(&z_poly(f, &p)?, 1, 2, 1)).unwrap();
        let rhs = x.map_coeffs(|c| Ok(comp.hat(c))).unwrap();
        assert!(lhs.sub(&rhs).is_zero());
    }
}
