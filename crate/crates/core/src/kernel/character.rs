//! Graded dimensions of the quotient by normal-form counting, and the
//! level-one character they must reproduce.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{self, SVec};
use crate::ring::RatFuncQ;

use super::families::fus_generators;
use super::rewrite::{admissible, Rewriter};
use super::{fusion_drop, Ambient, Sym};

/// Number of partitions of `0..=n`.
pub fn partition_counts(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for k in part..=n {
            p[k] += p[k - part];
        }
    }
    p
}

/// Dimension of the degree-`r`, weight-`w` subspace of the level-one module
/// `V(Λ_i)`, read off `Σ_n u^{2n+i} q^{n^2+in} / ∏_k (1 - q^k)`.
pub fn level_one_dim(i: usize, r: u32, w: i32) -> u64 {
    if (w - i as i32).rem_euclid(2) != 0 {
        return 0;
    }
    let n = (w - i as i32) / 2;
    let shift = n * n + i as i32 * n;
    if shift > r as i32 {
        return 0;
    }
    partition_counts(r as usize)[(r as i32 - shift) as usize]
}

/// `Σ_j κ_j`: the degree of the lowest admissible symbol with `n` slots.
pub fn ground_degree(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        ((n - 1) * (n - 1) / 4) as u32
    }
}

/// Largest spinon number of the given parity whose lowest state has degree `≤ dmax`.
pub fn sectors_needed(module: usize, dmax: u32) -> usize {
    let mut n = module;
    while ((n + 2) * (n + 2) - module * module) / 4 <= dmax as usize {
        n += 2;
    }
    n
}

/// Counts for one `(degree, weight)` cell of one module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharCell {
    /// 0 for `V(Λ_0)` (even spinon numbers), 1 for `V(Λ_1)`.
    pub module: usize,
    pub degree: u32,
    pub weight: i32,
    /// Admissible symbols per spinon number.
    pub admissible: BTreeMap<usize, usize>,
    /// Rank of the fusion relations after normal ordering.
    pub fusion_rank: usize,
    pub count: usize,
    /// Whether the rank was computed over `ℚ(q)` rather than at a point mod p.
    pub exact: bool,
    /// A sector above `nmax` reaches this degree, so the count may be short.
    pub truncated: bool,
    pub oracle: u64,
}

impl CharCell {
    pub fn matches(&self) -> bool {
        self.count as u64 == self.oracle
    }
}

fn sectors(module: usize, nmax: usize) -> Vec<usize> {
    (module..=nmax).step_by(2).collect()
}

/// Dimension of one cell of `V̂/N` for spinon numbers up to `nmax`.
///
/// With `exact` the fusion rank is computed over `ℚ(q)`; otherwise at a
/// random point modulo a prime, which can only overestimate the count.
pub fn char_cell(rw: &Rewriter, module: usize, r: u32, w: i32, nmax: usize, exact: bool, seed: u64) -> Result<CharCell> {
    let secs = sectors(module, nmax);
    let mut cols: Vec<Sym> = Vec::new();
    let mut adm_counts = BTreeMap::new();
    for &n in &secs {
        let d = r + ground_degree(n);
        let a = if n == 0 {
            if d == 0 && w == 0 {
                vec![Sym::vacuum()]
            } else {
                vec![]
            }
        } else {
            admissible(n, d, w)
        };
        adm_counts.insert(n, a.len());
        cols.extend(a);
    }
    let amb = Ambient::from_syms(cols);
    let mut rows: Vec<SVec<RatFuncQ>> = Vec::new();
    for &n in secs.iter().filter(|&&n| n >= 2) {
        let d = r + ground_degree(n);
        debug_assert_eq!(d - fusion_drop(n), r + ground_degree(n - 2));
        let gens = fus_generators(n, d, w)?;
        let part: Vec<SVec<RatFuncQ>> = gens
            .par_iter()
            .map(|g| {
                let nf = rw.normal_form(g)?;
                amb.coords(&nf.0)
            })
            .collect::<Result<_>>()?;
        rows.extend(part.into_iter().filter(|r| !r.is_empty()));
    }
    let fusion_rank = if exact {
        linalg::rank(&rows)
    } else {
        let mut x = 0x9e37_79b9_7f4a_7c15u64 ^ seed;
        loop {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let pt = (x >> 3) % linalg::PRIME;
            if let Some(k) = linalg::rank_mod(&rows, pt) {
                break k;
            }
        }
    };
    let total: usize = adm_counts.values().sum();
    Ok(CharCell {
        module,
        degree: r,
        weight: w,
        admissible: adm_counts,
        fusion_rank,
        count: total - fusion_rank,
        exact,
        truncated: sectors_needed(module, r) > nmax,
        oracle: level_one_dim(module, r, w),
    })
}

/// All cells with degree `≤ dmax` for both modules, using every sector that
/// can reach degree `dmax` unless `nmax` caps it.
pub fn graded_character(dmax: u32, nmax: Option<usize>, exact: bool) -> Result<Vec<CharCell>> {
    let rw = Rewriter::new();
    let mut jobs = Vec::new();
    for module in 0..2usize {
        let top = nmax.map_or(sectors_needed(module, dmax), |m| m - (m + module) % 2);
        for r in 0..=dmax {
            let span = top as i32;
            for w in (-span..=span).filter(|w| (w - module as i32).rem_euclid(2) == 0) {
                jobs.push((module, r, w, top));
            }
        }
    }
    // heaviest cells first
    jobs.sort_by_key(|&(m, r, w, top)| std::cmp::Reverse((top, r, m, -w.abs())));
    let mut cells: Vec<CharCell> = jobs
        .par_iter()
        .map(|&(m, r, w, top)| char_cell(&rw, m, r, w, top, exact, (r as u64) << 8 ^ (w + 64) as u64))
        .collect::<Result<_>>()?;
    cells.retain(|c| c.count > 0 || c.oracle > 0);
    cells.sort_by_key(|c| (c.module, c.degree, c.weight));
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_low_degrees() {
        assert_eq!(partition_counts(6), vec![1, 1, 2, 3, 5, 7, 11]);
        assert_eq!(level_one_dim(0, 0, 0), 1);
        assert_eq!(level_one_dim(1, 0, 1) + level_one_dim(1, 0, -1), 2);
        let d1: u64 = [-2, 0, 2].iter().map(|&w| level_one_dim(0, 1, w)).sum();
        assert_eq!(d1, 3);
        assert_eq!(level_one_dim(0, 4, 4), 1);
        assert_eq!(level_one_dim(1, 2, 3), 1);
        assert_eq!(sectors_needed(0, 6), 4);
        assert_eq!(sectors_needed(1, 6), 5);
        assert_eq!(sectors_needed(1, 5), 3);
    }
}
