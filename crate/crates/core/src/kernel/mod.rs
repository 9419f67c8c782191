//! Finite models of the kernel ideal: symbols, ambient spaces, exact kernel
//! bases and the membership oracle.

pub mod character;
pub mod checks;
pub mod families;
pub mod rewrite;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Fp, SVec};
use crate::ring::{qm, Exponent, LaurentPoly, RatFuncQ};
use crate::symbol::{compositions, Hats};
use crate::tensor::{SignString, TensorPoly};
use crate::window::Window;

/// The symbol `F_{ε,-b}`, `b ≥ 0`; the empty sign string is the vacuum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym {
    pub eps: SignString,
    pub b: Exponent,
}

impl Sym {
    pub fn new(eps: SignString, b: Exponent) -> Self {
        debug_assert_eq!(eps.len(), b.len());
        Sym { eps, b }
    }

    pub fn vacuum() -> Self {
        Sym { eps: SignString::new(vec![]), b: vec![] }
    }

    pub fn n(&self) -> usize {
        self.eps.len()
    }

    pub fn degree(&self) -> u32 {
        self.b.iter().sum::<i32>() as u32
    }

    pub fn weight(&self) -> i32 {
        self.eps.weight()
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.b.iter().map(|x| x.to_string()).collect();
        write!(f, "{}:{}", self.eps, b.join(","))
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Sym {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (e, b) = s.split_once(':').ok_or_else(|| Error::Parse(format!("symbol `{s}`")))?;
        let eps = SignString::parse(e)?;
        let b: Exponent = if b.is_empty() {
            vec![]
        } else {
            b.split(',').map(|x| x.parse::<i32>().map_err(|e| Error::Parse(e.to_string()))).collect::<Result<_>>()?
        };
        if b.len() != eps.len() {
            return Err(Error::Parse(format!("symbol `{s}`: length mismatch")));
        }
        Ok(Sym { eps, b })
    }
}

/// Finite linear combination of symbols.
pub type SymVec = BTreeMap<Sym, RatFuncQ>;

pub fn add_sym(v: &mut SymVec, s: Sym, c: &RatFuncQ) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&s) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                v.remove(&s);
            }
        }
        None => {
            v.insert(s, c.clone());
        }
    }
}

pub fn add_scaled(v: &mut SymVec, c: &RatFuncQ, w: &SymVec) {
    for (s, x) in w {
        add_sym(v, s.clone(), &(c * x));
    }
}

pub fn sub_vec(a: &SymVec, b: &SymVec) -> SymVec {
    let mut out = a.clone();
    add_scaled(&mut out, &qm(-1, 0), b);
    out
}

/// Symbols of a symbol-space element; symbols with a positive mode are dropped.
pub fn from_tensor(x: &TensorPoly) -> SymVec {
    let mut out = SymVec::new();
    for (eps, f) in x.components() {
        for (b, c) in f.terms() {
            if b.iter().all(|&v| v >= 0) {
                add_sym(&mut out, Sym::new(eps.clone(), b.clone()), c);
            }
        }
    }
    out
}

/// The part of `v` in sector `n`, as a symbol-space element.
pub fn to_tensor(v: &SymVec, n: usize) -> TensorPoly {
    let mut out = TensorPoly::zero(n);
    for (s, c) in v.iter().filter(|(s, _)| s.n() == n) {
        out.add_component(s.eps.clone(), &LaurentPoly::monomial(n, s.b.clone(), c.clone()));
    }
    out
}

/// Degree lost when fusion maps sector `n` to sector `n - 2`.
pub fn fusion_drop(n: usize) -> u32 {
    n.saturating_sub(2) as u32
}

/// A finite coordinate space of symbols.
#[derive(Clone, Debug, Default)]
pub struct Ambient {
    syms: Vec<Sym>,
    index: HashMap<Sym, usize>,
}

impl Ambient {
    pub fn from_syms(syms: Vec<Sym>) -> Self {
        let index = syms.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ambient { syms, index }
    }

    /// All symbols of sector `n`, degree `d`, and weight `w` if given.
    pub fn slice_syms(n: usize, d: u32, w: Option<i32>) -> Vec<Sym> {
        let signs: Vec<SignString> = match w {
            Some(w) => SignString::with_weight(n, w),
            None => SignString::all(n),
        };
        let mut out = Vec::new();
        for b in compositions(n, d) {
            for e in &signs {
                out.push(Sym::new(e.clone(), b.clone()));
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.syms.len()
    }

    pub fn syms(&self) -> &[Sym] {
        &self.syms
    }

    pub fn index_of(&self, s: &Sym) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, v: &SymVec) -> bool {
        v.keys().all(|s| self.index.contains_key(s))
    }

    pub fn coords(&self, v: &SymVec) -> Result<SVec<RatFuncQ>> {
        v.iter()
            .map(|(s, c)| self.index_of(s).map(|i| (i, c.clone())).ok_or_else(|| Error::OutsideWindow(format!("symbol {s}"))))
            .collect()
    }

    pub fn vector(&self, v: &SVec<RatFuncQ>) -> SymVec {
        v.iter().map(|(i, c)| (self.syms[*i].clone(), c.clone())).collect()
    }

    fn append(&mut self, syms: impl IntoIterator<Item = Sym>) {
        for s in syms {
            if !self.index.contains_key(&s) {
                self.index.insert(s.clone(), self.syms.len());
                self.syms.push(s);
            }
        }
    }
}

/// Generator families of the kernel ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `(S_{j,j+1} - G_{j,j+1}) F`.
    Hec,
    /// Specialization minus fusion.
    Fus,
    /// Symbols with a positive mode; realised by leaving them out of the ambient.
    Hwt,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hec" => Ok(Family::Hec),
            "fus" => Ok(Family::Fus),
            "hwt" => Ok(Family::Hwt),
            _ => Err(Error::Config(format!("unknown family `{s}`"))),
        }
    }
}

static PRESCREEN: AtomicBool = AtomicBool::new(false);

/// Turns the modular prescreen of [`KernelBasis::member`] on or off for the process.
pub fn set_prescreen(on: bool) {
    PRESCREEN.store(on, Ordering::Relaxed);
}

pub fn prescreen_enabled() -> bool {
    PRESCREEN.load(Ordering::Relaxed)
}

/// Exact basis of the kernel slice in a window.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub n: usize,
    pub window: Window,
    pub families: Vec<Family>,
    pub ambient: Ambient,
    /// Family of each generator, in insertion order.
    pub provenance: Vec<Family>,
    pub echelon: Echelon<RatFuncQ>,
    modular: OnceLock<Option<(u64, Echelon<Fp>)>>,
}

/// Verdict of a membership query.
#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    /// Generator index and coefficient, when the basis tracks certificates.
    pub certificate: Option<Vec<(usize, RatFuncQ)>>,
    pub residual: SymVec,
}

/// Sectors `(n', d')` linked to sector `n` at degree `d` by repeated fusion.
pub fn sector_chain(n: usize, d: u32, fus: bool) -> Vec<(usize, u32)> {
    let mut out = vec![(n, d)];
    if !fus {
        return out;
    }
    let (mut k, mut e) = (n, d as i64);
    while k >= 2 {
        e -= fusion_drop(k) as i64;
        k -= 2;
        if e < 0 {
            break;
        }
        out.push((k, e as u32));
    }
    out
}

/// One homogeneous block of generators: sector chain at top degree `d`, weight `w`.
pub fn block_generators(hats: &Hats, n: usize, d: u32, w: i32, families: &[Family]) -> Result<(Vec<Sym>, Vec<(Family, SymVec)>)> {
    let fus = families.contains(&Family::Fus);
    let chain = sector_chain(n, d, fus);
    let mut syms = Vec::new();
    let mut gens = Vec::new();
    for &(k, e) in &chain {
        syms.extend(Ambient::slice_syms(k, e, Some(w)));
        if families.contains(&Family::Hec) {
            gens.extend(families::hec_generators(hats, k, e, w)?.into_iter().map(|g| (Family::Hec, g)));
        }
        if fus && k >= 2 {
            gens.extend(families::fus_generators(k, e, w)?.into_iter().map(|g| (Family::Fus, g)));
        }
    }
    Ok((syms, gens))
}

/// Builds the kernel basis of sector `n` (and, with fusion, the sectors it
/// fuses into) on every degree the window holds completely.
pub fn kernel_build(n: usize, window: Window, families: &[Family], certificates: bool) -> Result<KernelBasis> {
    let dmax = window.complete_degree().ok_or(Error::WindowUnderflow { need: 0, have: window.hi as i64 })?;
    if window.hi > 0 {
        return Err(Error::Config(format!("window {window} holds positive modes; the highest weight family truncates at 0")));
    }
    let mut fams: Vec<Family> = families.to_vec();
    fams.sort();
    fams.dedup();
    let hats = Hats::new(qm(1, 4));
    let blocks: Vec<(u32, i32)> = (0..=dmax).flat_map(|d| (-(n as i32)..=n as i32).step_by(2).map(move |w| (d, w))).collect();
    let built: Vec<(Vec<Sym>, Vec<Family>, Vec<SymVec>)> = blocks
        .par_iter()
        .map(|&(d, w)| {
            let (syms, gens) = block_generators(&hats, n, d, w, &fams)?;
            let (prov, gens): (Vec<_>, Vec<_>) = gens.into_iter().unzip();
            Ok((syms, prov, gens))
        })
        .collect::<Result<_>>()?;
    let mut ambient = Ambient::default();
    for (syms, _, _) in &built {
        ambient.append(syms.iter().cloned());
    }
    let parts: Vec<(Vec<Family>, Echelon<RatFuncQ>)> = built
        .into_par_iter()
        .map(|(_, prov, gens)| {
            let mut e = Echelon::new(certificates);
            for g in &gens {
                e.insert(&ambient.coords(g)?);
            }
            Ok((prov, e))
        })
        .collect::<Result<_>>()?;
    let mut echelon = Echelon::new(certificates);
    let mut provenance = Vec::new();
    for (prov, e) in parts {
        provenance.extend(prov);
        echelon.absorb(e);
    }
    Ok(KernelBasis { n, window, families: fams, ambient, provenance, echelon, modular: OnceLock::new() })
}

impl KernelBasis {
    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn generators(&self) -> usize {
        self.provenance.len()
    }

    /// The rows evaluated at a point of `F_p` where none has a pole.
    fn modular(&self) -> Option<&(u64, Echelon<Fp>)> {
        self.modular
            .get_or_init(|| {
                (1..16u64).find_map(|k| {
                    let pt = k.wrapping_mul(0x9e37_79b9_7f4a_7c15) % linalg::PRIME;
                    let rows: Option<Vec<SVec<Fp>>> = self.echelon.rows().iter().map(|r| linalg::eval_vec(r, pt)).collect();
                    Some((pt, Echelon::from_rows(rows?)?))
                })
            })
            .as_ref()
    }

    /// Membership with a certificate or the exact residual.
    ///
    /// With the prescreen on, the query is first reduced at a point mod p.
    /// Rows have unit pivots, so a nonzero residual there proves
    /// non-membership; the exact residual is then not computed and comes
    /// back empty. Members are always confirmed over `ℚ(q)`.
    pub fn member(&self, x: &SymVec) -> Result<Membership> {
        let v = self.ambient.coords(x)?;
        if prescreen_enabled() && !self.echelon.tracks_certificates() {
            if let Some((pt, e)) = self.modular() {
                if let Some(vp) = linalg::eval_vec(&v, *pt) {
                    if !e.reduce(&vp).is_member() {
                        return Ok(Membership { member: false, certificate: None, residual: SymVec::new() });
                    }
                }
            }
        }
        let red = self.echelon.reduce(&v);
        Ok(Membership {
            member: red.is_member(),
            certificate: red.certificate.map(|c| c.into_iter().collect()),
            residual: self.ambient.vector(&red.residual),
        })
    }

    /// Writes `manifest.json` and `rows.txt` into `dir`.
    pub fn save(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let manifest = Manifest {
            n: self.n,
            window: self.window.to_string(),
            families: self.families.clone(),
            ambient: self.ambient.syms.iter().map(|s| s.to_string()).collect(),
            provenance: self.provenance.clone(),
            rank: self.rank(),
        };
        let text = serde_json::to_string_pretty(&manifest).map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(dir.join("manifest.json"), text)?;
        let mut rows = String::new();
        for (i, r) in self.echelon.rows().iter().enumerate() {
            for (c, v) in r {
                rows.push_str(&format!("{i} {c} {}\n", v.to_text()));
            }
        }
        std::fs::write(dir.join("rows.txt"), rows)?;
        Ok(())
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(dir.join("manifest.json"))?;
        let m: Manifest = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        let syms = m.ambient.iter().map(|s| s.parse()).collect::<Result<Vec<Sym>>>()?;
        let mut rows: Vec<SVec<RatFuncQ>> = vec![SVec::new(); m.rank];
        for line in std::fs::read_to_string(dir.join("rows.txt"))?.lines() {
            let mut it = line.splitn(3, ' ');
            let (Some(i), Some(c), Some(v)) = (it.next(), it.next(), it.next()) else {
                return Err(Error::Parse(format!("row line `{line}`")));
            };
            let i: usize = i.parse().map_err(|_| Error::Parse(format!("row index `{i}`")))?;
            let c: usize = c.parse().map_err(|_| Error::Parse(format!("column index `{c}`")))?;
            let row = rows.get_mut(i).ok_or_else(|| Error::Parse(format!("row {i} beyond rank")))?;
            row.insert(c, RatFuncQ::parse_text(v)?);
        }
        let echelon = Echelon::from_rows(rows).ok_or_else(|| Error::Parse("rows are not in echelon form".into()))?;
        Ok(KernelBasis {
            n: m.n,
            window: m.window.parse()?,
            families: m.families,
            ambient: Ambient::from_syms(syms),
            provenance: m.provenance,
            echelon,
            modular: OnceLock::new(),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct Manifest {
    n: usize,
    window: String,
    families: Vec<Family>,
    ambient: Vec<String>,
    provenance: Vec<Family>,
    rank: usize,
}

/// Loads a cached basis from `cache/kernel-n{n}-{window}-{families}` or builds and stores it.
pub fn kernel_cached(cache: Option<&Path>, n: usize, window: Window, families: &[Family]) -> Result<KernelBasis> {
    let Some(cache) = cache else {
        return kernel_build(n, window, families, false);
    };
    let mut fams = families.to_vec();
    fams.sort();
    fams.dedup();
    let tag: Vec<String> = fams.iter().map(|f| format!("{f:?}").to_lowercase()).collect();
    let dir = cache.join(format!("kernel-n{n}-{}-{}", window, tag.join("+")));
    if dir.join("manifest.json").exists() {
        if let Ok(kb) = KernelBasis::load(&dir) {
            if kb.n == n && kb.window == window && kb.families == fams {
                return Ok(kb);
            }
        }
    }
    let kb = kernel_build(n, window, &fams, false)?;
    kb.save(&dir)?;
    Ok(kb)
}
