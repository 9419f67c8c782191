//! The coefficient field ℚ(q).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::qpoly::QPoly;
use crate::error::{Error, Result};

/// Exact rational function in `q`, kept in canonical form: numerator and
/// denominator in ℤ[q] are coprime (including integer content) and the
/// denominator has a positive leading coefficient. Equality of canonical
/// forms is equality in ℚ(q).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFuncQ {
    num: QPoly,
    den: QPoly,
}

impl RatFuncQ {
    pub fn zero() -> Self {
        RatFuncQ { num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn one() -> Self {
        RatFuncQ { num: QPoly::one(), den: QPoly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        RatFuncQ { num: QPoly::from_i64(c), den: QPoly::one() }
    }

    pub fn from_ratio(a: i64, b: i64) -> Result<Self> {
        Self::normalize(QPoly::from_i64(a), QPoly::from_i64(b))
    }

    /// `q^k` for any integer k.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(1, k)
    }

    /// `c q^k`.
    pub fn monomial(c: i64, k: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        if k >= 0 {
            RatFuncQ { num: QPoly::monomial(BigInt::from(c), k as usize), den: QPoly::one() }
        } else {
            RatFuncQ {
                num: QPoly::from_i64(c),
                den: QPoly::monomial(BigInt::one(), (-k) as usize),
            }
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFuncQ { num: p, den: QPoly::one() }
    }

    /// Builds `num/den` in canonical form.
    pub fn normalize(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_unchecked(num, den))
    }

    fn normalize_unchecked(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = if den.is_monomial() {
            // Only a power of q and an integer can be shared.
            let v = num.valuation().unwrap().min(den.valuation().unwrap());
            let c = num.content().abs().gcd(den.leading().unwrap());
            QPoly::monomial(c, v)
        } else if num.is_monomial() {
            let v = num.valuation().unwrap().min(den.valuation().unwrap());
            let c = den.content().abs().gcd(num.leading().unwrap());
            QPoly::monomial(c, v)
        } else {
            num.gcd(&den)
        };
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        if d.leading().unwrap().is_negative() {
            n = -n;
            d = -d;
        }
        RatFuncQ { num: n, den: d }
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True for `c q^k` with c a nonzero integer.
    pub fn is_q_monomial(&self) -> bool {
        self.num.is_monomial() && self.den.is_monomial() && self.den.leading().unwrap().is_one()
    }

    /// For `±q^k` returns `(±1, k)`.
    pub fn as_signed_q_power(&self) -> Option<(i64, i64)> {
        if !self.is_q_monomial() {
            return None;
        }
        let c = self.num.leading().unwrap();
        let sign = if c.is_one() {
            1
        } else if (-c).is_one() {
            -1
        } else {
            return None;
        };
        let k = self.num.valuation().unwrap() as i64 - self.den.valuation().unwrap() as i64;
        Some((sign, k))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::normalize(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(RatFuncQ { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// Substitutes `q -> q^k` for `k >= 1`.
    pub fn inflate(&self, k: usize) -> Self {
        Self::normalize_unchecked(self.num.inflate(k), self.den.inflate(k))
    }

    /// Value at `q = x` modulo the prime `p`; `None` at a pole.
    pub fn eval_mod(&self, x: u64, p: u64) -> Option<u64> {
        let d = self.den.eval_mod(x, p);
        if d == 0 {
            return None;
        }
        let n = self.num.eval_mod(x, p);
        Some(mul_mod(n, inv_mod(d, p), p))
    }

    /// Serialized form `num/den`, each side a sparse `coeff*q^k` list.
    pub fn to_text(&self) -> String {
        format!("{}/{}", self.num.to_sparse_string(), self.den.to_sparse_string())
    }

    pub fn parse_text(s: &str) -> Result<Self> {
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("missing `/` in `{s}`")))?;
        let n = QPoly::parse_sparse(n).map_err(Error::Parse)?;
        let d = QPoly::parse_sparse(d).map_err(Error::Parse)?;
        Self::normalize(n, d)
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

impl Default for RatFuncQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl From<i64> for RatFuncQ {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl Add for &RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFuncQ::normalize_unchecked(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFuncQ::normalize_unchecked(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, rhs: &RatFuncQ) -> RatFuncQ {
        self + &(-rhs.clone())
    }
}

impl Mul for &RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() || rhs.is_zero() {
            return RatFuncQ::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFuncQ { num: &self.num * &rhs.num, den: QPoly::one() };
        }
        // Cross-cancel before multiplying to keep sizes down.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.exact_div(&g1).unwrap(), rhs.den.exact_div(&g1).unwrap())
        };
        let (c, b) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.exact_div(&g2).unwrap(), self.den.exact_div(&g2).unwrap())
        };
        let mut num = &a * &c;
        let mut den = &b * &d;
        if den.leading().unwrap().is_negative() {
            num = -num;
            den = -den;
        }
        RatFuncQ { num, den }
    }
}

impl Div for &RatFuncQ {
    type Output = RatFuncQ;
    /// Panics on division by zero; use [`RatFuncQ::inv`] for a fallible form.
    fn div(self, rhs: &RatFuncQ) -> RatFuncQ {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl Neg for RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        RatFuncQ { num: -self.num, den: self.den }
    }
}

impl Neg for &RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        -self.clone()
    }
}

impl Add for RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, rhs: RatFuncQ) -> RatFuncQ {
        &self + &rhs
    }
}

impl Sub for RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, rhs: RatFuncQ) -> RatFuncQ {
        &self - &rhs
    }
}

impl Mul for RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, rhs: RatFuncQ) -> RatFuncQ {
        &self * &rhs
    }
}

impl Div for RatFuncQ {
    type Output = RatFuncQ;
    fn div(self, rhs: RatFuncQ) -> RatFuncQ {
        &self / &rhs
    }
}

impl AddAssign<&RatFuncQ> for RatFuncQ {
    fn add_assign(&mut self, rhs: &RatFuncQ) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RatFuncQ> for RatFuncQ {
    fn sub_assign(&mut self, rhs: &RatFuncQ) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&RatFuncQ> for RatFuncQ {
    fn mul_assign(&mut self, rhs: &RatFuncQ) {
        *self = &*self * rhs;
    }
}

impl Zero for RatFuncQ {
    fn zero() -> Self {
        RatFuncQ::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFuncQ {
    fn one() -> Self {
        RatFuncQ::one()
    }
}

/// Shorthand for `c q^k`.
pub fn qm(c: i64, k: i64) -> RatFuncQ {
    RatFuncQ::monomial(c, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> QPoly {
        QPoly::from_i64s(cs)
    }

    #[test]
    fn cancels_common_factor() {
        let r = RatFuncQ::normalize(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(r, RatFuncQ::from_poly(p(&[1, 1])));
    }

    #[test]
    fn zero_numerator_is_canonical_zero() {
        let r = RatFuncQ::normalize(QPoly::zero(), p(&[0, 0, 0, 1])).unwrap();
        assert_eq!(r.numer(), &QPoly::zero());
        assert_eq!(r.denom(), &QPoly::one());
    }

    #[test]
    fn already_reduced_stays() {
        let r = RatFuncQ::normalize(p(&[-1, 0, 1]), p(&[0, 1])).unwrap();
        assert_eq!(r.numer(), &p(&[-1, 0, 1]));
        assert_eq!(r.denom(), &p(&[0, 1]));
        assert_eq!(r, &qm(1, 1) - &qm(1, -1));
    }

    #[test]
    fn zero_denominator_is_an_error() {
        let e = RatFuncQ::normalize(p(&[1]), QPoly::zero()).unwrap_err();
        assert_eq!(e.to_string(), "division by zero polynomial");
    }

    #[test]
    fn negative_denominator_flips_sign() {
        let r = RatFuncQ::normalize(p(&[1]), p(&[1, -1])).unwrap();
        assert_eq!(r.numer(), &p(&[-1]));
        assert_eq!(r.denom(), &p(&[-1, 1]));
    }

    #[test]
    fn q_power_arithmetic() {
        assert_eq!(&qm(1, 3) * &qm(1, -5), qm(1, -2));
        assert_eq!(qm(1, -2).as_signed_q_power(), Some((1, -2)));
        assert_eq!(qm(-1, 4).as_signed_q_power(), Some((-1, 4)));
        assert_eq!((&qm(1, 1) + &qm(1, 1)).as_signed_q_power(), None);
    }

    #[test]
    fn text_round_trip() {
        let r = RatFuncQ::normalize(p(&[3, 0, -1]), p(&[1, 1, 1])).unwrap();
        assert_eq!(RatFuncQ::parse_text(&r.to_text()).unwrap(), r);
    }
}
