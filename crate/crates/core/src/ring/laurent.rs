//! Sparse multivariate Laurent polynomials in `z_1..z_N` over ℚ(q).
//!
//! Slot indices in the public API are 1-based, matching the usual
//! `z_1, ..., z_N` labelling; internally exponent vectors are 0-based.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ratfunc::RatFuncQ;
use crate::error::{Error, Result};

pub type Exponent = Vec<i32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    arity: usize,
    terms: BTreeMap<Exponent, RatFuncQ>,
}

impl LaurentPoly {
    pub fn zero(arity: usize) -> Self {
        LaurentPoly { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, RatFuncQ::one())
    }

    pub fn constant(arity: usize, c: RatFuncQ) -> Self {
        Self::monomial(arity, vec![0; arity], c)
    }

    pub fn monomial(arity: usize, exp: Exponent, c: RatFuncQ) -> Self {
        assert_eq!(exp.len(), arity, "exponent length must equal arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { arity, terms }
    }

    /// The variable `z_j` (1-based).
    pub fn var(arity: usize, j: usize) -> Self {
        let mut e = vec![0; arity];
        e[j - 1] = 1;
        Self::monomial(arity, e, RatFuncQ::one())
    }

    /// Monomial `z^{-m}` for a mode vector `m`.
    pub fn mode_monomial(m: &[i32]) -> Self {
        Self::monomial(m.len(), m.iter().map(|x| -x).collect(), RatFuncQ::one())
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Exponent, RatFuncQ)>) -> Self {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &RatFuncQ)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Exponent, RatFuncQ)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, e: &[i32]) -> RatFuncQ {
        self.terms.get(e).cloned().unwrap_or_else(RatFuncQ::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: &RatFuncQ) {
        debug_assert_eq!(e.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &LaurentPoly) {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c);
        }
    }

    pub fn scale(&self, c: &RatFuncQ) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        if c.is_one() {
            return self.clone();
        }
        LaurentPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `z^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        LaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    fn check_index(&self, j: usize) -> Result<usize> {
        if j == 0 || j > self.arity {
            return Err(Error::IndexOutOfRange { index: j, arity: self.arity });
        }
        Ok(j - 1)
    }

    fn check_pair(&self, j: usize, k: usize) -> Result<(usize, usize)> {
        let a = self.check_index(j)?;
        let b = self.check_index(k)?;
        if a == b {
            return Err(Error::IndexClash(j, k));
        }
        Ok((a, b))
    }

    /// Exchanges `z_j` and `z_k`.
    pub fn swap(&self, j: usize, k: usize) -> Result<Self> {
        let (a, b) = self.check_pair(j, k)?;
        Ok(LaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(a, b);
                    (e, c.clone())
                })
                .collect(),
        })
    }

    /// Reorders variables: the result's `z_i` is the input's `z_{perm[i]}`
    /// (1-based), i.e. `g(z_1..z_N) = f(...)` with `z_{perm[i]}` replaced by
    /// `z_i`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.arity);
        LaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut out = vec![0; self.arity];
                    for (i, &src) in perm.iter().enumerate() {
                        out[i] = e[src - 1];
                    }
                    (out, c.clone())
                })
                .collect(),
        }
    }

    /// Exact quotient by `z_j - c z_k`; fails if the division leaves a
    /// remainder.
    pub fn div_binomial(&self, j: usize, k: usize, c: &RatFuncQ) -> Result<Self> {
        let (a, b) = self.check_pair(j, k)?;
        // Group by everything except the (z_j, z_k) split of a fixed degree.
        let mut groups: BTreeMap<Exponent, BTreeMap<i32, RatFuncQ>> = BTreeMap::new();
        for (e, coef) in &self.terms {
            let mut key = e.clone();
            let s = e[a] + e[b];
            key[a] = s;
            key[b] = 0;
            groups.entry(key).or_default().insert(e[a], coef.clone());
        }
        let mut out = LaurentPoly::zero(self.arity);
        for (key, row) in groups {
            let s = key[a];
            // Polynomial in t = z_j/z_k, shifted so the lowest power is t^lo.
            let lo = *row.keys().next().unwrap();
            let hi = *row.keys().next_back().unwrap();
            let mut cur: Vec<RatFuncQ> =
                (lo..=hi).map(|i| row.get(&i).cloned().unwrap_or_default()).collect();
            // Synthetic division by (t - c), highest degree first.
            let n = cur.len();
            let mut quot = vec![RatFuncQ::zero(); n.saturating_sub(1)];
            for i in (1..n).rev() {
                let t = cur[i].clone();
                quot[i - 1] = t.clone();
                cur[i - 1] = &cur[i - 1] + &(&t * c);
            }
            if !cur[0].is_zero() {
                return Err(Error::DividedDifferenceRemainder);
            }
            for (i, qc) in quot.into_iter().enumerate() {
                if qc.is_zero() {
                    continue;
                }
                let ej = lo + i as i32;
                let mut e = key.clone();
                e[a] = ej;
                e[b] = s - 1 - ej;
                out.add_term(e, &qc);
            }
        }
        Ok(out)
    }

    /// `g` with `(z_j - z_k) g = K_{j,k} f - f`.
    pub fn divided_difference(&self, j: usize, k: usize) -> Result<Self> {
        let diff = &self.swap(j, k)? - self;
        diff.div_binomial(j, k, &RatFuncQ::one())
    }

    /// `f(z_1, .., s z_j, .., z_N)` for `s` a signed power of q.
    pub fn scale_var(&self, j: usize, s: &RatFuncQ) -> Result<Self> {
        let a = self.check_index(j)?;
        if !s.is_q_monomial() {
            return Err(Error::NotQMonomial(s.to_string()));
        }
        let mut cache: BTreeMap<i32, RatFuncQ> = BTreeMap::new();
        let mut out = LaurentPoly::zero(self.arity);
        for (e, c) in &self.terms {
            let f = cache.entry(e[a]).or_insert_with(|| s.pow(e[a] as i64).expect("nonzero"));
            out.terms.insert(e.clone(), c * f);
        }
        Ok(out)
    }

    /// Substitutes `z_j := c z_k` and drops `z_j`, re-indexing the others.
    pub fn specialize(&self, j: usize, k: usize, c: &RatFuncQ) -> Result<Self> {
        let (a, b) = self.check_pair(j, k)?;
        let mut out = LaurentPoly::zero(self.arity - 1);
        for (e, coef) in &self.terms {
            let mut ne = e.clone();
            ne[b] += e[a];
            ne.remove(a);
            let f = c.pow(e[a] as i64)?;
            out.add_term(ne, &(coef * &f));
        }
        Ok(out)
    }

    /// Inserts a fresh variable at 0-based position `pos` with exponent 0.
    pub fn insert_var(&self, pos: usize) -> Self {
        LaurentPoly {
            arity: self.arity + 1,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.insert(pos, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Total degrees of all terms.
    pub fn total_degrees(&self) -> std::collections::BTreeSet<i32> {
        self.terms.keys().map(|e| e.iter().sum()).collect()
    }

    /// Exponent range per variable, `None` for the zero polynomial.
    pub fn exponent_bounds(&self) -> Option<Vec<(i32, i32)>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut b: Vec<(i32, i32)> = first.iter().map(|&x| (x, x)).collect();
        for e in it {
            for (bb, &x) in b.iter_mut().zip(e) {
                bb.0 = bb.0.min(x);
                bb.1 = bb.1.max(x);
            }
        }
        Some(b)
    }

    /// Embeds a z-polynomial into ζ-mode (`z_j = ζ_j^2`) by doubling exponents.
    pub fn to_zeta(&self) -> Self {
        LaurentPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| 2 * x).collect(), c.clone()))
                .collect(),
        }
    }

    /// One term per line: `e1 e2 ... eN : num/den`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (e, c) in &self.terms {
            let ex: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            s.push_str(&ex.join(" "));
            s.push_str(" : ");
            s.push_str(&c.to_text());
            s.push('\n');
        }
        s
    }

    pub fn parse_text(arity: usize, text: &str) -> Result<Self> {
        let mut p = LaurentPoly::zero(arity);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (ex, c) = line
                .split_once(" : ")
                .ok_or_else(|| Error::Parse(format!("missing ` : ` in `{line}`")))?;
            let e: Exponent = ex
                .split_whitespace()
                .map(|t| t.parse::<i32>().map_err(|_| Error::Parse(format!("bad exponent `{t}`"))))
                .collect::<Result<_>>()?;
            if e.len() != arity {
                return Err(Error::Parse(format!("expected {arity} exponents in `{line}`")));
            }
            p.add_term(e, &RatFuncQ::parse_text(c)?);
        }
        Ok(p)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => write!(f, "*z{}", i + 1)?,
                    _ => write!(f, "*z{}^{}", i + 1, x)?,
                }
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = LaurentPoly::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&RatFuncQ::from_int(-1))
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ratfunc::qm;

    fn z(n: usize, e: &[i32]) -> LaurentPoly {
        LaurentPoly::monomial(n, e.to_vec(), RatFuncQ::one())
    }

    #[test]
    fn swap_exchanges_exponents() {
        let f = z(2, &[2, -1]);
        assert_eq!(f.swap(1, 2).unwrap(), z(2, &[-1, 2]));
        assert_eq!(LaurentPoly::one(3).swap(1, 3).unwrap(), LaurentPoly::one(3));
        assert!(f.swap(1, 3).is_err());
        assert_eq!(f.swap(2, 2).unwrap_err(), Error::IndexClash(2, 2));
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(z(2, &[1, 0]).divided_difference(1, 2).unwrap(), z(2, &[0, 0]).scale(&(-1).into()));
        assert!(LaurentPoly::one(2).divided_difference(1, 2).unwrap().is_zero());
        let expect = &(&z(2, &[1, 0]) + &z(2, &[0, 1])).scale(&(-1).into()) + &LaurentPoly::zero(2);
        assert_eq!(z(2, &[2, 0]).divided_difference(1, 2).unwrap(), expect);
    }

    #[test]
    fn divided_difference_of_negative_powers() {
        let f = &z(3, &[-2, 1, 0]) + &z(3, &[0, -3, 4]).scale(&qm(2, 1));
        let g = f.divided_difference(1, 2).unwrap();
        let lhs = &(&(&z(3, &[1, 0, 0]) - &z(3, &[0, 1, 0])) * &g) + &f;
        assert_eq!(lhs, f.swap(1, 2).unwrap());
    }

    #[test]
    fn div_binomial_detects_remainder() {
        let f = z(2, &[1, 0]);
        assert_eq!(
            f.div_binomial(1, 2, &RatFuncQ::one()).unwrap_err(),
            Error::DividedDifferenceRemainder
        );
    }

    #[test]
    fn scale_var_examples() {
        let p = qm(1, 4);
        let f = LaurentPoly::mode_monomial(&[3]);
        assert_eq!(f.scale_var(1, &p).unwrap(), f.scale(&qm(1, -12)));
        assert_eq!(LaurentPoly::one(1).scale_var(1, &p).unwrap(), LaurentPoly::one(1));
        assert!(f.scale_var(1, &(&qm(1, 1) + &qm(1, 0))).is_err());
    }

    #[test]
    fn specialize_examples() {
        let f = z(2, &[1, 1]);
        assert_eq!(f.specialize(2, 1, &qm(1, -2)).unwrap(), z(1, &[2]).scale(&qm(1, -2)));
        let g = &z(2, &[1, 0]) - &z(2, &[0, 1]).scale(&qm(1, 2));
        assert!(g.specialize(2, 1, &qm(1, -2)).unwrap().is_zero());
        let h = z(3, &[4, 0, -1]);
        assert_eq!(h.specialize(2, 1, &qm(1, 5)).unwrap(), z(2, &[4, -1]));
    }

    #[test]
    fn text_round_trip() {
        let f = &z(2, &[1, -2]).scale(&qm(3, -1)) + &z(2, &[0, 0]);
        assert_eq!(LaurentPoly::parse_text(2, &f.to_text()).unwrap(), f);
    }
}
