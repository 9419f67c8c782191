//! z-expansion of `η(z) = (q^6 z; q^4)_∞ / (q^4 z; q^4)_∞` and its reciprocal.
//!
//! Each coefficient is a closed rational function of q, obtained from the
//! q-binomial theorem `(a w; p)_∞ / (w; p)_∞ = Σ (a; p)_n / (p; p)_n w^n`.

use super::ratfunc::{qm, RatFuncQ};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaSeries {
    pub order: usize,
    pub inverse: bool,
    pub coeffs: Vec<RatFuncQ>,
}

impl EtaSeries {
    pub fn coeff(&self, n: usize) -> RatFuncQ {
        self.coeffs.get(n).cloned().unwrap_or_else(RatFuncQ::zero)
    }

    /// Truncated product of two series.
    pub fn mul_truncated(&self, other: &EtaSeries) -> Vec<RatFuncQ> {
        let d = self.order.min(other.order);
        let mut out = vec![RatFuncQ::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                out[i + j] += &(a * b);
            }
        }
        out
    }
}

/// Coefficients of `z^0..z^D` of `η(z)` (or `η(z)^{-1}` when `inverse`).
pub fn eta_expand(order: usize, inverse: bool) -> EtaSeries {
    // η(z) = (q^2 w; q^4)_∞/(w; q^4)_∞ with w = q^4 z;
    // η(z)^{-1} = (q^{-2} w; q^4)_∞/(w; q^4)_∞ with w = q^6 z.
    let (a_exp, w_exp) = if inverse { (-2, 6) } else { (2, 4) };
    let one = RatFuncQ::one();
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = one.clone();
    coeffs.push(c.clone());
    for n in 1..=order as i64 {
        let k = n - 1;
        let num = &one - &qm(1, a_exp + 4 * k);
        let den = &one - &qm(1, 4 * n);
        c = &(&c * &num) / &den;
        coeffs.push(&c * &qm(1, w_exp * n));
    }
    EtaSeries { order, inverse, coeffs }
}
