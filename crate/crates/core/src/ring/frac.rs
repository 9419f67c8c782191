//! Laurent polynomials divided by products of binomials `z_a - c z_b`.
//!
//! Only the denominators produced by divided-difference style operators are
//! supported; common factors are cancelled by exact binomial division.

use std::fmt;

use super::laurent::LaurentPoly;
use super::ratfunc::RatFuncQ;
use crate::error::Result;

/// `(a, b, c)` with `a < b` (1-based) stands for `z_a - c z_b`.
pub type Binomial = (usize, usize, RatFuncQ);

#[derive(Clone)]
pub struct RatLaurent {
    num: LaurentPoly,
    den: Vec<Binomial>,
}

fn binomial_poly(n: usize, b: &Binomial) -> LaurentPoly {
    &LaurentPoly::var(n, b.0) - &LaurentPoly::var(n, b.1).scale(&b.2)
}

/// Rewrites `z_a - c z_b` with `a < b`, returning the scalar pulled out.
fn orient(a: usize, b: usize, c: RatFuncQ) -> (RatFuncQ, Binomial) {
    if a < b {
        (RatFuncQ::one(), (a, b, c))
    } else {
        // z_a - c z_b = -c (z_b - c^{-1} z_a)
        let ci = c.inv().expect("nonzero binomial coefficient");
        (-&c, (b, a, ci))
    }
}

impl RatLaurent {
    pub fn from_poly(p: LaurentPoly) -> Self {
        RatLaurent { num: p, den: Vec::new() }
    }

    pub fn arity(&self) -> usize {
        self.num.arity()
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom_factors(&self) -> &[Binomial] {
        &self.den
    }

    pub fn denom(&self) -> LaurentPoly {
        let n = self.arity();
        self.den.iter().fold(LaurentPoly::one(n), |acc, b| &acc * &binomial_poly(n, b))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Divides by `z_a - c z_b`, cancelling against the numerator when possible.
    pub fn div_binomial(&self, a: usize, b: usize, c: &RatFuncQ) -> Result<Self> {
        let (s, f) = orient(a, b, c.clone());
        let num = self.num.scale(&s.inv()?);
        match num.div_binomial(f.0, f.1, &f.2) {
            Ok(q) => Ok(RatLaurent { num: q, den: self.den.clone() }),
            Err(_) => {
                let mut den = self.den.clone();
                den.push(f);
                den.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)).then_with(|| x.2.to_text().cmp(&y.2.to_text())));
                Ok(RatLaurent { num, den })
            }
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let mut r = RatLaurent { num: &self.num * p, den: self.den.clone() };
        r.cancel();
        r
    }

    pub fn scale(&self, c: &RatFuncQ) -> Self {
        RatLaurent { num: self.num.scale(c), den: self.den.clone() }
    }

    fn cancel(&mut self) {
        let mut keep = Vec::new();
        for f in std::mem::take(&mut self.den) {
            match self.num.div_binomial(f.0, f.1, &f.2) {
                Ok(q) => self.num = q,
                Err(_) => keep.push(f),
            }
        }
        self.den = keep;
    }

    pub fn swap(&self, j: usize, k: usize) -> Result<Self> {
        let mut num = self.num.swap(j, k)?;
        let mut den = Vec::new();
        let perm = |i: usize| if i == j { k } else if i == k { j } else { i };
        for (a, b, c) in &self.den {
            let (s, f) = orient(perm(*a), perm(*b), c.clone());
            num = num.scale(&s.inv()?);
            den.push(f);
        }
        let mut r = RatLaurent { num, den };
        r.den.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)).then_with(|| x.2.to_text().cmp(&y.2.to_text())));
        r.cancel();
        Ok(r)
    }

    pub fn add(&self, o: &RatLaurent) -> Self {
        // Common denominator from the multiset union of factors.
        let mut rest_o: Vec<Binomial> = o.den.clone();
        let mut only_self = Vec::new();
        for f in &self.den {
            if let Some(pos) = rest_o.iter().position(|g| g == f) {
                rest_o.remove(pos);
            } else {
                only_self.push(f.clone());
            }
        }
        let n = self.arity();
        let lift = |p: &LaurentPoly, extra: &[Binomial]| extra.iter().fold(p.clone(), |acc, b| &acc * &binomial_poly(n, b));
        let num = &lift(&self.num, &rest_o) + &lift(&o.num, &only_self);
        let mut den = self.den.clone();
        den.extend(rest_o);
        let mut r = RatLaurent { num, den };
        r.cancel();
        r
    }

    pub fn sub(&self, o: &RatLaurent) -> Self {
        self.add(&o.scale(&RatFuncQ::from_int(-1)))
    }

    /// Substitutes `z_j := c z_k` and drops `z_j`; fails if a denominator
    /// factor vanishes under the substitution.
    pub fn specialize(&self, j: usize, k: usize, c: &RatFuncQ) -> Result<Self> {
        let n = self.arity();
        let num = self.num.specialize(j, k, c)?;
        if self.denom().specialize(j, k, c)?.is_zero() {
            return Err(crate::error::Error::DivisionByZero);
        }
        // Re-factor the specialized denominator factor by factor.
        let mut out = RatLaurent::from_poly(num);
        let idx = |i: usize| if i > j { i - 1 } else { i };
        for (a, b, cc) in &self.den {
            let (a2, b2) = (if *a == j { k } else { *a }, if *b == j { k } else { *b });
            let (ca, cb) = (if *a == j { c.clone() } else { RatFuncQ::one() }, if *b == j { c * cc } else { cc.clone() });
            if a2 == b2 {
                // (ca - cb) z_{a2}
                let s = &ca - &cb;
                let mut e = vec![0; n - 1];
                e[idx(a2) - 1] = -1;
                out = out.mul_poly(&LaurentPoly::monomial(n - 1, e, s.inv()?));
            } else {
                let ratio = &cb / &ca;
                out = out.scale(&ca.inv()?).div_binomial(idx(a2), idx(b2), &ratio)?;
            }
        }
        Ok(out)
    }

    /// Exact equality via cross multiplication.
    pub fn equals(&self, o: &RatLaurent) -> bool {
        self.sub(o).is_zero()
    }
}

impl fmt::Debug for RatLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / {:?}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ratfunc::qm;

    #[test]
    fn binomial_cancels() {
        let n = 2;
        let p = &LaurentPoly::var(n, 1) - &LaurentPoly::var(n, 2).scale(&qm(1, 2));
        let r = RatLaurent::from_poly(p).div_binomial(1, 2, &qm(1, 2)).unwrap();
        assert!(r.denom_factors().is_empty());
        assert_eq!(r.numer(), &LaurentPoly::one(2));
    }

    #[test]
    fn sums_over_common_denominator() {
        let n = 2;
        let a = RatLaurent::from_poly(LaurentPoly::var(n, 1)).div_binomial(1, 2, &RatFuncQ::one()).unwrap();
        let b = RatLaurent::from_poly(LaurentPoly::var(n, 2)).div_binomial(1, 2, &RatFuncQ::one()).unwrap();
        let s = a.sub(&b);
        assert!(s.denom_factors().is_empty());
        assert_eq!(s.numer(), &LaurentPoly::one(2));
    }

    #[test]
    fn swap_reorients_factor() {
        let n = 2;
        let a = RatLaurent::from_poly(LaurentPoly::one(n)).div_binomial(1, 2, &RatFuncQ::one()).unwrap();
        let s = a.swap(1, 2).unwrap();
        assert!(s.add(&a).is_zero());
    }
}
