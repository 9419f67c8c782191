//! The free model: `V^{⊗N}`-valued Laurent polynomials and the slot-wise
//! action of `U_q(sl_2^)` through the opposite coproduct.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{eta_expand, qm, LaurentPoly, RatFuncQ};

/// A string of signs `ε_1 .. ε_N`, stored as `+1` / `-1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignString(Vec<i8>);

impl SignString {
    pub fn new(signs: Vec<i8>) -> Self {
        assert!(signs.iter().all(|&s| s == 1 || s == -1), "signs must be ±1");
        SignString(signs)
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(Error::Parse(format!("bad sign `{c}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignString)
    }

    pub fn all(n: usize) -> Vec<SignString> {
        (0..1u32 << n)
            .map(|bits| SignString((0..n).map(|i| if bits >> (n - 1 - i) & 1 == 1 { -1 } else { 1 }).collect()))
            .collect()
    }

    pub fn with_weight(n: usize, w: i32) -> Vec<SignString> {
        Self::all(n).into_iter().filter(|s| s.weight() == w).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    /// Sign at 1-based slot `j`.
    pub fn at(&self, j: usize) -> i8 {
        self.0[j - 1]
    }

    pub fn weight(&self) -> i32 {
        self.0.iter().map(|&s| s as i32).sum()
    }

    pub fn flipped(&self) -> Self {
        SignString(self.0.iter().map(|s| -s).collect())
    }

    pub fn with(&self, j: usize, s: i8) -> Self {
        let mut v = self.0.clone();
        v[j - 1] = s;
        SignString(v)
    }

    /// Drops slots `j` and `j+1`.
    pub fn without_pair(&self, j: usize) -> Self {
        let mut v = self.0.clone();
        v.drain(j - 1..j + 1);
        SignString(v)
    }

    pub fn concat(&self, other: &SignString) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SignString(v)
    }
}

impl fmt::Display for SignString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            write!(f, "{}", if s > 0 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn sidx(s: i8) -> usize {
    if s > 0 {
        0
    } else {
        1
    }
}

pub(crate) fn sgn(i: usize) -> i8 {
    if i == 0 {
        1
    } else {
        -1
    }
}

/// A linear operator on one copy of `V`, as `m[ε'][ε]` with index 0 for `+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Op1(pub [[RatFuncQ; 2]; 2]);

/// A linear operator on `V ⊗ V`, indexed by `2*i + j` for `v_i ⊗ v_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Op2(pub Vec<Vec<RatFuncQ>>);

fn z() -> RatFuncQ {
    RatFuncQ::zero()
}

impl Op1 {
    pub fn identity() -> Self {
        Op1([[RatFuncQ::one(), z()], [z(), RatFuncQ::one()]])
    }
    pub fn e() -> Self {
        Op1([[z(), RatFuncQ::one()], [z(), z()]])
    }
    pub fn f() -> Self {
        Op1([[z(), z()], [RatFuncQ::one(), z()]])
    }
    pub fn t() -> Self {
        Op1([[qm(1, 1), z()], [z(), qm(1, -1)]])
    }
    pub fn t_inv() -> Self {
        Op1([[qm(1, -1), z()], [z(), qm(1, 1)]])
    }

    pub fn mul(&self, o: &Op1) -> Op1 {
        let mut m: [[RatFuncQ; 2]; 2] = Default::default();
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                for k in 0..2 {
                    *cell += &(&self.0[i][k] * &o.0[k][j]);
                }
            }
        }
        Op1(m)
    }

    pub fn kron(&self, o: &Op1) -> Op2 {
        let mut m = vec![vec![z(); 4]; 4];
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        m[2 * a + b][2 * c + d] = &self.0[a][c] * &o.0[b][d];
                    }
                }
            }
        }
        Op2(m)
    }
}

impl Op2 {
    pub fn identity() -> Self {
        let mut m = vec![vec![z(); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = RatFuncQ::one();
        }
        Op2(m)
    }

    /// The constant Hecke operator.
    pub fn hecke() -> Self {
        let mut m = vec![vec![z(); 4]; 4];
        let qi = qm(-1, -1);
        m[0][0] = qi.clone();
        m[3][3] = qi;
        // S v+v- = (q - q^{-1}) v+v- - v-v+ ; S v-v+ = -v+v-
        m[1][1] = &qm(1, 1) - &qm(1, -1);
        m[2][1] = RatFuncQ::from_int(-1);
        m[1][2] = RatFuncQ::from_int(-1);
        Op2(m)
    }

    pub fn hecke_inv() -> Self {
        // S^{-1} = S - (q - q^{-1})
        let c = &qm(1, 1) - &qm(1, -1);
        Op2::hecke().add(&Op2::identity().scale(&-&c))
    }

    pub fn scale(&self, c: &RatFuncQ) -> Op2 {
        Op2(self.0.iter().map(|r| r.iter().map(|x| x * c).collect()).collect())
    }

    pub fn add(&self, o: &Op2) -> Op2 {
        Op2(self.0.iter().zip(&o.0).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect()).collect())
    }

    pub fn mul(&self, o: &Op2) -> Op2 {
        let mut m = vec![vec![z(); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                for k in 0..4 {
                    if !self.0[i][k].is_zero() && !o.0[k][j].is_zero() {
                        *cell += &(&self.0[i][k] * &o.0[k][j]);
                    }
                }
            }
        }
        Op2(m)
    }
}

/// Element of `V^{⊗N} ⊗ ℚ(q)[z_1^±, .., z_N^±]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorPoly {
    arity: usize,
    vars: usize,
    terms: BTreeMap<SignString, LaurentPoly>,
}

/// Weight and degree of one occupied component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradedSlot {
    pub weight: i32,
    pub degree: i32,
}

/// Generators of `U_q(sl_2^)` acting on the free model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UqGen {
    E1,
    F1,
    T1,
    T1Inv,
    E0Aff,
    F0Aff,
    Qd,
}

impl std::str::FromStr for UqGen {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "e1" => UqGen::E1,
            "f1" => UqGen::F1,
            "t1" => UqGen::T1,
            "t1inv" => UqGen::T1Inv,
            "e0" => UqGen::E0Aff,
            "f0" => UqGen::F0Aff,
            "qd" => UqGen::Qd,
            _ => return Err(Error::UnknownGenerator(s.to_string())),
        })
    }
}

impl TensorPoly {
    /// Zero element with `arity` tensor slots and as many variables.
    pub fn zero(arity: usize) -> Self {
        Self::zero_with_vars(arity, arity)
    }

    pub fn zero_with_vars(arity: usize, vars: usize) -> Self {
        TensorPoly { arity, vars, terms: BTreeMap::new() }
    }

    pub fn basis(eps: SignString, f: LaurentPoly) -> Self {
        let mut t = Self::zero_with_vars(eps.len(), f.arity());
        t.add_component(eps, &f);
        t
    }

    /// `v_ε ⊗ 1`.
    pub fn vector(eps: &str) -> Self {
        let e = SignString::parse(eps).expect("sign string");
        let n = e.len();
        Self::basis(e, LaurentPoly::one(n))
    }

    /// `v_ε ⊗ z^{-m}`, standing for the symbol with mode vector `m`.
    pub fn symbol(eps: &SignString, m: &[i32]) -> Self {
        Self::basis(eps.clone(), LaurentPoly::mode_monomial(m))
    }

    /// `v^{(1)} = v_+ ⊗ v_- - q^{-1} v_- ⊗ v_+`.
    pub fn singlet() -> Self {
        let mut t = Self::vector("+-");
        t.add_assign_ref(&Self::vector("-+").scale(&qm(-1, -1)));
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&SignString, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn component(&self, eps: &SignString) -> LaurentPoly {
        self.terms.get(eps).cloned().unwrap_or_else(|| LaurentPoly::zero(self.vars))
    }

    pub fn add_component(&mut self, eps: SignString, f: &LaurentPoly) {
        assert_eq!(eps.len(), self.arity, "sign string length");
        assert_eq!(f.arity(), self.vars, "variable count");
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&eps) {
            Some(g) => {
                g.add_assign_ref(f);
                if g.is_zero() {
                    self.terms.remove(&eps);
                }
            }
            None => {
                self.terms.insert(eps, f.clone());
            }
        }
    }

    pub fn add_assign_ref(&mut self, o: &TensorPoly) {
        for (e, f) in &o.terms {
            self.add_component(e.clone(), f);
        }
    }

    pub fn add(&self, o: &TensorPoly) -> TensorPoly {
        let mut r = self.clone();
        r.add_assign_ref(o);
        r
    }

    pub fn sub(&self, o: &TensorPoly) -> TensorPoly {
        self.add(&o.scale(&RatFuncQ::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFuncQ) -> TensorPoly {
        self.map_coeffs(|f| Ok(f.scale(c))).expect("infallible")
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> TensorPoly {
        self.map_coeffs(|f| Ok(f * p)).expect("infallible")
    }

    /// Applies a coefficient-wise map; the variable count may change.
    pub fn map_coeffs(&self, mut m: impl FnMut(&LaurentPoly) -> Result<LaurentPoly>) -> Result<TensorPoly> {
        let mut out: Option<TensorPoly> = None;
        for (e, f) in &self.terms {
            let g = m(f)?;
            let o = out.get_or_insert_with(|| TensorPoly::zero_with_vars(self.arity, g.arity()));
            o.add_component(e.clone(), &g);
        }
        Ok(out.unwrap_or_else(|| {
            // The image of zero under a variable-changing map still needs a variable count.
            let probe = m(&LaurentPoly::zero(self.vars)).map(|p| p.arity()).unwrap_or(self.vars);
            TensorPoly::zero_with_vars(self.arity, probe)
        }))
    }

    /// Applies `A` on the 1-based slot `j`.
    pub fn apply1(&self, j: usize, a: &Op1) -> Result<TensorPoly> {
        if j == 0 || j > self.arity {
            return Err(Error::IndexOutOfRange { index: j, arity: self.arity });
        }
        let mut out = TensorPoly::zero_with_vars(self.arity, self.vars);
        for (e, f) in &self.terms {
            let col = sidx(e.at(j));
            for (row, r) in a.0.iter().enumerate() {
                let c = &r[col];
                if !c.is_zero() {
                    out.add_component(e.with(j, sgn(row)), &f.scale(c));
                }
            }
        }
        Ok(out)
    }

    /// Applies `A` on slots `j, j+1`.
    pub fn apply2(&self, j: usize, a: &Op2) -> Result<TensorPoly> {
        if j == 0 || j + 1 > self.arity {
            return Err(Error::IndexOutOfRange { index: j, arity: self.arity });
        }
        let mut out = TensorPoly::zero_with_vars(self.arity, self.vars);
        for (e, f) in &self.terms {
            let col = 2 * sidx(e.at(j)) + sidx(e.at(j + 1));
            for (row, r) in a.0.iter().enumerate() {
                let c = &r[col];
                if !c.is_zero() {
                    let ne = e.with(j, sgn(row / 2)).with(j + 1, sgn(row % 2));
                    out.add_component(ne, &f.scale(c));
                }
            }
        }
        Ok(out)
    }

    /// Applies a product of single-slot operators, one per slot.
    pub fn apply_product(&self, ops: &[Op1]) -> Result<TensorPoly> {
        assert_eq!(ops.len(), self.arity);
        let mut x = self.clone();
        for (j, a) in ops.iter().enumerate() {
            if *a != Op1::identity() {
                x = x.apply1(j + 1, a)?;
            }
        }
        Ok(x)
    }

    fn check_slot_vars(&self) -> Result<()> {
        if self.vars != self.arity {
            return Err(Error::Arity { arity: self.vars, need: self.arity });
        }
        Ok(())
    }

    pub fn weight_degree(&self) -> BTreeSet<GradedSlot> {
        let mut s = BTreeSet::new();
        for (e, f) in &self.terms {
            for d in f.total_degrees() {
                s.insert(GradedSlot { weight: e.weight(), degree: -d });
            }
        }
        s
    }

    /// Pairs slots `j, j+1` against the dual singlet: keeps the `(+,-)` and
    /// `(-,+)` channels with unit weights and drops both slots.
    pub fn singlet_contract(&self, j: usize) -> Result<TensorPoly> {
        if self.arity < 2 {
            return Err(Error::Arity { arity: self.arity, need: 2 });
        }
        if j == 0 || j + 1 > self.arity {
            return Err(Error::IndexOutOfRange { index: j, arity: self.arity });
        }
        let mut out = TensorPoly::zero_with_vars(self.arity - 2, self.vars);
        for (e, f) in &self.terms {
            if e.at(j) + e.at(j + 1) == 0 {
                out.add_component(e.without_pair(j), f);
            }
        }
        Ok(out)
    }

    /// Replaces every coefficient by its text form, for stable display.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (e, f) in &self.terms {
            s.push_str(&format!("[{e}]\n{}", f.to_text()));
        }
        s
    }
}

impl fmt::Debug for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, p)| format!("v{e}*({p})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Iterated opposite coproduct of `x` on `n` slots, as a list of slot-product terms.
pub fn delta_op(gen: UqGen, n: usize) -> Vec<Vec<Op1>> {
    let id = Op1::identity();
    match gen {
        UqGen::T1 => vec![vec![Op1::t(); n]],
        UqGen::T1Inv => vec![vec![Op1::t_inv(); n]],
        // Δ^op(e) = 1 ⊗ e + e ⊗ t
        UqGen::E1 | UqGen::E0Aff => (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| match i.cmp(&j) {
                        std::cmp::Ordering::Less => id.clone(),
                        std::cmp::Ordering::Equal => {
                            if gen == UqGen::E1 {
                                Op1::e()
                            } else {
                                Op1::f()
                            }
                        }
                        std::cmp::Ordering::Greater => {
                            if gen == UqGen::E1 {
                                Op1::t()
                            } else {
                                Op1::t_inv()
                            }
                        }
                    })
                    .collect()
            })
            .collect(),
        // Δ^op(f) = t^{-1} ⊗ f + f ⊗ 1
        UqGen::F1 | UqGen::F0Aff => (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| match i.cmp(&j) {
                        std::cmp::Ordering::Less => {
                            if gen == UqGen::F1 {
                                Op1::t_inv()
                            } else {
                                Op1::t()
                            }
                        }
                        std::cmp::Ordering::Equal => {
                            if gen == UqGen::F1 {
                                Op1::f()
                            } else {
                                Op1::e()
                            }
                        }
                        std::cmp::Ordering::Greater => id.clone(),
                    })
                    .collect()
            })
            .collect(),
        UqGen::Qd => vec![vec![id; n]],
    }
}

/// Action of a generator on the free model.
pub fn uq_apply(gen: UqGen, x: &TensorPoly) -> Result<TensorPoly> {
    let n = x.arity();
    let mut out = TensorPoly::zero_with_vars(n, x.vars());
    match gen {
        UqGen::Qd => {
            let mut y = x.clone();
            for j in 1..=x.vars() {
                y = y.map_coeffs(|f| f.scale_var(j, &qm(1, -1)))?;
            }
            return Ok(y);
        }
        UqGen::E0Aff | UqGen::F0Aff => x.check_slot_vars()?,
        _ => {}
    }
    for (j, ops) in delta_op(gen, n).into_iter().enumerate() {
        let mut y = x.apply_product(&ops)?;
        match gen {
            UqGen::E0Aff => y = y.mul_poly(&LaurentPoly::var(n, j + 1)),
            UqGen::F0Aff => {
                let mut e = vec![0; n];
                e[j] = -1;
                y = y.mul_poly(&LaurentPoly::monomial(n, e, RatFuncQ::one()));
            }
            _ => {}
        }
        out.add_assign_ref(&y);
    }
    Ok(out)
}

/// Offsets `κ_j = (N - j - p_j + p_N)/2` of the generating series.
pub fn kappa(n: usize) -> Vec<i32> {
    let p = |j: usize| -> i32 {
        if (j % 2) == (n % 2) {
            0
        } else {
            1
        }
    };
    (1..=n)
        .map(|j| {
            let twice = n as i32 - j as i32 - p(j) + p(n);
            debug_assert!(twice % 2 == 0);
            twice / 2
        })
        .collect()
}

/// Direction of the triangular change between symbols and monomial tensors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisDirection {
    /// Symbol `F_{ε,m}` in terms of `v_{ε,n}`.
    Forward,
    /// `v_{ε,n}` in terms of symbols `F_{ε,m}`.
    Backward,
}

/// Lattice vectors `Σ n_k (e_{k+1} - e_k)` with `Σ n_k ≤ depth`, grouped by
/// their decomposition into pair exponents `t_{jk}` of `(z_k/z_j)^{t_{jk}}`.
fn pair_exponent_vectors(n: usize, depth: usize) -> Vec<(Vec<(usize, usize, usize)>, usize)> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (j + 1..n).map(move |k| (j, k))).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        pairs: &[(usize, usize)],
        i: usize,
        left: usize,
        cur: &mut Vec<(usize, usize, usize)>,
        out: &mut Vec<(Vec<(usize, usize, usize)>, usize)>,
        used: usize,
    ) {
        if i == pairs.len() {
            out.push((cur.clone(), used));
            return;
        }
        let (j, k) = pairs[i];
        let cost = k - j;
        let mut t = 0;
        while t * cost <= left {
            if t > 0 {
                cur.push((j, k, t));
            }
            rec(pairs, i + 1, left - t * cost, cur, out, used + t * cost);
            if t > 0 {
                cur.pop();
            }
            t += 1;
        }
    }
    rec(&pairs, 0, depth, &mut cur, &mut out, 0);
    out
}

/// Expresses a symbol through monomial tensors (forward) or a monomial tensor
/// through symbols (backward), carried to lattice depth `depth`. The result
/// uses `z^{-n}` to stand for the mode vector `n`.
pub fn basis_change_f_monomial(dir: BasisDirection, eps: &SignString, m: &[i32], depth: usize) -> TensorPoly {
    let n = eps.len();
    assert_eq!(m.len(), n);
    let kap = kappa(n);
    let series = eta_expand(depth, dir == BasisDirection::Forward);
    let mut out = TensorPoly::zero(n);
    for (ts, _) in pair_exponent_vectors(n, depth) {
        let mut coeff = RatFuncQ::one();
        let mut idx: Vec<i32> = match dir {
            BasisDirection::Forward => m.iter().zip(&kap).map(|(a, b)| a + b).collect(),
            BasisDirection::Backward => m.iter().zip(&kap).map(|(a, b)| a - b).collect(),
        };
        for &(j, k, t) in &ts {
            coeff = &coeff * &series.coeff(t);
            // (z_k/z_j)^t shifts the mode index by t at k and -t at j.
            idx[k] += t as i32;
            idx[j] -= t as i32;
        }
        out.add_component(eps.clone(), &LaurentPoly::mode_monomial(&idx).scale(&coeff));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_strings() {
        let s = SignString::parse("+-+").unwrap();
        assert_eq!(s.weight(), 1);
        assert_eq!(s.to_string(), "+-+");
        assert_eq!(SignString::all(3).len(), 8);
        assert_eq!(SignString::with_weight(4, 0).len(), 6);
        assert!(SignString::parse("+x").is_err());
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(1), vec![0]);
        assert_eq!(kappa(2), vec![0, 0]);
        assert_eq!(kappa(3), vec![1, 0, 0]);
        assert_eq!(kappa(4), vec![1, 1, 0, 0]);
        assert_eq!(kappa(5), vec![2, 1, 1, 0, 0]);
    }

    #[test]
    fn hecke_inverse_is_inverse() {
        assert_eq!(Op2::hecke().mul(&Op2::hecke_inv()), Op2::identity());
    }
}
