//! Sparse incremental row reduction over an exact field.

use std::collections::{BTreeMap, HashMap};

use crate::ring::RatFuncQ;

/// Field operations needed by [`Echelon`].
pub trait Field: Clone + Send + Sync + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Inverse of a nonzero element.
    fn inv(&self) -> Self;
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

impl Field for RatFuncQ {
    fn zero() -> Self {
        RatFuncQ::zero()
    }
    fn one() -> Self {
        RatFuncQ::one()
    }
    fn is_zero(&self) -> bool {
        RatFuncQ::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        RatFuncQ::inv(self).expect("pivot is nonzero")
    }
}

/// The Mersenne prime `2^61 - 1`.
pub const PRIME: u64 = (1 << 61) - 1;

/// Residue modulo [`PRIME`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp(pub u64);

impl Fp {
    fn pow(self, mut e: u64) -> Fp {
        let mut acc = Fp(1);
        let mut b = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp((self.0 + o.0) % PRIME)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp((self.0 + PRIME - o.0) % PRIME)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % PRIME as u128) as u64)
    }
    fn inv(&self) -> Self {
        self.pow(PRIME - 2)
    }
}

/// Sparse vector keyed by column.
pub type SVec<K> = BTreeMap<usize, K>;

pub fn axpy<K: Field>(y: &mut SVec<K>, a: &K, x: &SVec<K>) {
    for (c, v) in x {
        let t = a.mul(v);
        match y.get_mut(c) {
            Some(e) => {
                *e = e.add(&t);
                if e.is_zero() {
                    y.remove(c);
                }
            }
            None => {
                if !t.is_zero() {
                    y.insert(*c, t);
                }
            }
        }
    }
}

/// Evaluates a rational vector at `q = x` modulo [`PRIME`]; `None` at a pole.
pub fn eval_vec(v: &SVec<RatFuncQ>, x: u64) -> Option<SVec<Fp>> {
    let mut out = SVec::new();
    for (c, e) in v {
        let r = e.eval_mod(x, PRIME)?;
        if r != 0 {
            out.insert(*c, Fp(r));
        }
    }
    Some(out)
}

/// Rows in semi-echelon form: each row has a distinct leading column whose
/// entry is one. Optionally each row remembers its expression in the
/// inserted generators.
#[derive(Clone, Debug)]
pub struct Echelon<K: Field> {
    rows: Vec<SVec<K>>,
    lead: HashMap<usize, usize>,
    combos: Option<Vec<SVec<K>>>,
    inserted: usize,
}

/// Outcome of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduction<K: Field> {
    /// What is left after subtracting row multiples; zero iff a member.
    pub residual: SVec<K>,
    /// `v - residual = Σ coeff · generator`, present when certificates are tracked.
    pub certificate: Option<SVec<K>>,
}

impl<K: Field> Reduction<K> {
    pub fn is_member(&self) -> bool {
        self.residual.is_empty()
    }
}

impl<K: Field> Default for Echelon<K> {
    fn default() -> Self {
        Self::new(false)
    }
}

impl<K: Field> Echelon<K> {
    pub fn new(certificates: bool) -> Self {
        Echelon { rows: Vec::new(), lead: HashMap::new(), combos: certificates.then(Vec::new), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors offered through [`Echelon::insert`].
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn rows(&self) -> &[SVec<K>] {
        &self.rows
    }

    pub fn tracks_certificates(&self) -> bool {
        self.combos.is_some()
    }

    pub fn reduce(&self, v: &SVec<K>) -> Reduction<K> {
        let mut r = v.clone();
        let mut cert: Option<SVec<K>> = self.combos.as_ref().map(|_| SVec::new());
        let mut from = 0usize;
        while let Some((&c, x)) = r.range(from..).next() {
            match self.lead.get(&c) {
                Some(&i) => {
                    let a = x.neg();
                    axpy(&mut r, &a, &self.rows[i]);
                    if let (Some(cert), Some(combos)) = (cert.as_mut(), self.combos.as_ref()) {
                        axpy(cert, &a.neg(), &combos[i]);
                    }
                }
                None => from = c + 1,
            }
        }
        Reduction { residual: r, certificate: cert }
    }

    /// Adds a generator; returns whether the rank grew.
    pub fn insert(&mut self, v: &SVec<K>) -> bool {
        let g = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        let mut r = red.residual;
        let Some((&c, lv)) = r.iter().next() else { return false };
        let s = lv.inv();
        for x in r.values_mut() {
            *x = x.mul(&s);
        }
        if let Some(combos) = self.combos.as_mut() {
            let mut combo = SVec::new();
            combo.insert(g, K::one());
            axpy(&mut combo, &K::one().neg(), &red.certificate.unwrap_or_default());
            for x in combo.values_mut() {
                *x = x.mul(&s);
            }
            combos.push(combo);
        }
        self.lead.insert(c, self.rows.len());
        self.rows.push(std::mem::take(&mut r));
        true
    }

    /// Appends an echelon over disjoint columns whose generators are numbered
    /// after this one's.
    pub fn absorb(&mut self, other: Echelon<K>) {
        let off = self.inserted;
        let base = self.rows.len();
        for (c, i) in other.lead {
            let prev = self.lead.insert(c, base + i);
            assert!(prev.is_none(), "absorbed echelon overlaps on column {c}");
        }
        self.rows.extend(other.rows);
        if let Some(combos) = self.combos.as_mut() {
            let theirs = other.combos.expect("both echelons track certificates");
            combos.extend(theirs.into_iter().map(|c| c.into_iter().map(|(g, v)| (g + off, v)).collect()));
        }
        self.inserted += other.inserted;
    }

    /// Rebuilds the lookup table from rows, as after deserialization.
    pub fn from_rows(rows: Vec<SVec<K>>) -> Option<Self> {
        let mut lead = HashMap::new();
        for (i, r) in rows.iter().enumerate() {
            let (&c, _) = r.iter().next()?;
            if lead.insert(c, i).is_some() {
                return None;
            }
        }
        let inserted = rows.len();
        Some(Echelon { rows, lead, combos: None, inserted })
    }
}

/// Rank of a family of vectors.
pub fn rank<K: Field>(vs: &[SVec<K>]) -> usize {
    let mut e = Echelon::new(false);
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

/// Rank after evaluating at `q = x` modulo [`PRIME`]; a lower bound for the
/// rank over `ℚ(q)`. `None` if some entry has a pole at `x`.
pub fn rank_mod(vs: &[SVec<RatFuncQ>], x: u64) -> Option<usize> {
    let ev: Option<Vec<_>> = vs.iter().map(|v| eval_vec(v, x)).collect();
    Some(rank(&ev?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::qm;

    fn v(entries: &[(usize, RatFuncQ)]) -> SVec<RatFuncQ> {
        entries.iter().cloned().filter(|(_, x)| !x.is_zero()).collect()
    }

    #[test]
    fn dependent_rows_do_not_raise_rank() {
        let a = v(&[(0, qm(1, 1)), (2, qm(1, 0))]);
        let b = v(&[(1, qm(2, 0)), (2, qm(1, -1))]);
        let mut c = a.clone();
        axpy(&mut c, &qm(3, 2), &b);
        let mut e = Echelon::new(true);
        assert!(e.insert(&a));
        assert!(e.insert(&b));
        assert!(!e.insert(&c));
        assert_eq!(e.rank(), 2);
        let red = e.reduce(&c);
        assert!(red.is_member());
        let cert = red.certificate.unwrap();
        assert_eq!(cert.get(&0), Some(&qm(1, 0)));
        assert_eq!(cert.get(&1), Some(&qm(3, 2)));
    }

    #[test]
    fn residual_of_non_member() {
        let mut e = Echelon::new(false);
        e.insert(&v(&[(0, qm(1, 0)), (1, qm(1, 1))]));
        let red = e.reduce(&v(&[(1, qm(1, 0))]));
        assert!(!red.is_member());
    }

    #[test]
    fn modular_rank_matches() {
        let rows = vec![v(&[(0, qm(1, 1)), (1, qm(1, 0))]), v(&[(0, qm(1, 2)), (1, qm(1, 1))])];
        assert_eq!(rank(&rows), 1);
        assert_eq!(rank_mod(&rows, 12345), Some(1));
        assert_eq!(Fp(3).mul(&Fp(3).inv()), Fp(1));
    }
}
