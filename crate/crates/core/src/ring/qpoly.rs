//! Dense univariate polynomials in `q` with integer coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial `c0 + c1 q + ... + cn q^n` over ℤ. The coefficient vector never
/// has a trailing zero, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(BigInt::from(c))
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    /// Builds from small integer coefficients, lowest degree first.
    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest index with a nonzero coefficient (q-adic valuation).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True if the polynomial is `c * q^k` for some nonzero c.
    pub fn is_monomial(&self) -> bool {
        match self.valuation() {
            Some(v) => v + 1 == self.coeffs.len(),
            None => false,
        }
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Divides by `q^k`; caller guarantees `k <= valuation`.
    pub fn shift_down(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        QPoly { coeffs: self.coeffs[k..].to_vec() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        QPoly { coeffs: self.coeffs.iter().map(|a| a / c).collect() }
    }

    /// Gcd of the coefficients, sign taken from the leading coefficient.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.leading().is_some_and(|l| l.is_negative()) {
            -g
        } else {
            g
        }
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        self.div_scalar(&c)
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) * a mod d`.
    fn pseudo_rem(&self, d: &QPoly) -> QPoly {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let t = r[top].clone();
            if t.is_zero() {
                r.pop();
                continue;
            }
            for c in r.iter_mut() {
                *c *= &lc;
            }
            let off = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[off + i] -= &t * dc;
            }
            r.pop();
        }
        QPoly::from_coeffs(r)
    }

    /// Exact division over ℤ; returns `None` when `d` does not divide `self`
    /// in ℤ[q].
    pub fn exact_div(&self, d: &QPoly) -> Option<QPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(QPoly::zero());
        }
        if self.coeffs.len() < d.coeffs.len() {
            return None;
        }
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); r.len() - dd];
        for k in (0..quot.len()).rev() {
            let t = &r[k + dd];
            if t.is_zero() {
                continue;
            }
            let (qk, rem) = t.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &qk * dc;
            }
            quot[k] = qk;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(QPoly::from_coeffs(quot))
    }

    /// Greatest common divisor in ℤ[q], normalized to a positive leading
    /// coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        let cg = self.content().abs().gcd(&other.content().abs());
        if self.is_monomial() || other.is_monomial() {
            let v = self.valuation().unwrap().min(other.valuation().unwrap());
            return QPoly::monomial(cg, v);
        }
        // Common power of q first; it is the most frequent shared factor.
        let v = self.valuation().unwrap().min(other.valuation().unwrap());
        let mut a = self.shift_down(v).primitive_part();
        let mut b = other.shift_down(v).primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                a = QPoly::one();
                break;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().normalize_sign().scale(&cg).shift_up(v)
    }

    fn normalize_sign(&self) -> QPoly {
        if self.leading().is_some_and(|l| l.is_negative()) {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, mut e: u32) -> QPoly {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Value modulo the prime `p` at `q = x`.
    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let pb = BigInt::from(p);
        let mut acc: u128 = 0;
        for c in self.coeffs.iter().rev() {
            let cm = c.mod_floor(&pb);
            let cm: u64 = cm.try_into().expect("residue fits u64");
            acc = (acc * x as u128 + cm as u128) % p as u128;
        }
        acc as u64
    }

    /// Value at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Substitutes `q -> q^k`.
    pub fn inflate(&self, k: usize) -> QPoly {
        if k == 1 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        QPoly { coeffs }
    }

    /// Sparse textual form, e.g. `1*q^0 -1*q^2`; zero prints as `0`.
    pub fn to_sparse_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{c}*q^{k}"))
            .collect();
        parts.join(" ")
    }

    pub fn parse_sparse(s: &str) -> Result<QPoly, String> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(QPoly::zero());
        }
        let mut out = QPoly::zero();
        for tok in s.split_whitespace() {
            let (c, k) = tok
                .split_once("*q^")
                .ok_or_else(|| format!("malformed term `{tok}`"))?;
            let c: BigInt = c.parse().map_err(|_| format!("bad coefficient `{c}`"))?;
            let k: usize = k.parse().map_err(|_| format!("bad exponent `{k}`"))?;
            out = &out + &QPoly::monomial(c, k);
        }
        Ok(out)
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{a}q^{k}")?,
            }
        }
        Ok(())
    }
}

impl PartialOrd for QPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            *c += s;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        for (c, s) in coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *c -= s;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(self, rhs: QPoly) -> QPoly {
        &self + &rhs
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(self, rhs: QPoly) -> QPoly {
        &self - &rhs
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> QPoly {
        QPoly::from_i64s(cs)
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (q^2-1) and (q-1)^2 share q-1.
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, -2, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[0, 0, 2]).gcd(&p(&[0, 4])), p(&[0, 2]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(a.exact_div(&p(&[-1, 1])), Some(p(&[1, 1])));
        assert_eq!(a.exact_div(&p(&[0, 1])), None);
        assert_eq!(p(&[2, 2]).exact_div(&p(&[2])), Some(p(&[1, 1])));
    }

    #[test]
    fn sparse_text_round_trip() {
        let a = p(&[3, 0, -7, 0, 1]);
        assert_eq!(a.to_sparse_string(), "3*q^0 -7*q^2 1*q^4");
        assert_eq!(QPoly::parse_sparse(&a.to_sparse_string()).unwrap(), a);
        assert_eq!(QPoly::parse_sparse("0").unwrap(), QPoly::zero());
    }

    #[test]
    fn eval_mod_matches_integer_eval() {
        let a = p(&[5, -3, 0, 2]);
        let v = a.eval_int(&BigInt::from(7));
        let p0 = 1_000_000_007u64;
        let expect: u64 = v.mod_floor(&BigInt::from(p0)).try_into().unwrap();
        assert_eq!(a.eval_mod(7, p0), expect);
    }
}
