//! Suite selection, validation and orchestration of a whole run.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::character::{graded_character, CharCell};
use crate::kernel::checks::{commutation_check, fusion_check, normal_order_check, rewriter_check, stability_check};
use crate::report::{Check, CheckRecord, CheckReport, Status};
use crate::ring::{qm, RatFuncQ};
use crate::window::Window;
use crate::{affine, hecke, kernel, level0, locality};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Hecke,
    AffineHecke,
    Lemmas,
    Exchange,
    Chevalley,
    NormalOrder,
    Commutation,
    Fusion,
    Stability,
    Rewriter,
    Characters,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Hecke,
        Suite::AffineHecke,
        Suite::Lemmas,
        Suite::Exchange,
        Suite::Chevalley,
        Suite::NormalOrder,
        Suite::Commutation,
        Suite::Fusion,
        Suite::Stability,
        Suite::Rewriter,
        Suite::Characters,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hecke => "hecke",
            Suite::AffineHecke => "affine-hecke",
            Suite::Lemmas => "lemmas",
            Suite::Exchange => "exchange",
            Suite::Chevalley => "chevalley",
            Suite::NormalOrder => "normal-order",
            Suite::Commutation => "commutation",
            Suite::Fusion => "fusion",
            Suite::Stability => "stability",
            Suite::Rewriter => "rewriter",
            Suite::Characters => "characters",
        }
    }

    fn default_n(self) -> usize {
        match self {
            Suite::Hecke | Suite::AffineHecke | Suite::Exchange => 3,
            _ => 2,
        }
    }

    fn default_window(self) -> Window {
        let lo = match self {
            Suite::Exchange | Suite::Chevalley | Suite::Fusion | Suite::Stability => -3,
            _ => -4,
        };
        Window { lo, hi: 0 }
    }

    fn uses_p(self) -> bool {
        matches!(self, Suite::AffineHecke | Suite::Exchange | Suite::Chevalley | Suite::Fusion | Suite::Stability)
    }

    /// Slot numbers the suite accepts.
    fn n_range(self) -> (usize, usize) {
        match self {
            Suite::NormalOrder | Suite::Commutation => (2, 3),
            Suite::Fusion => (2, 4),
            Suite::Stability | Suite::Rewriter => (2, 3),
            Suite::Chevalley | Suite::Exchange => (1, 4),
            Suite::Hecke => (1, 6),
            Suite::AffineHecke => (1, 5),
            Suite::Lemmas | Suite::Characters => (0, usize::MAX),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            Error::Config(format!("unknown suite `{s}`; expected one of {}", names.join(", ")))
        })
    }
}

/// Choice of the scale `p` of the cyclic operator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PChoice {
    Q3,
    #[default]
    Q4,
    Q5,
    /// `q^3`, `q^4` and `q^5` in turn.
    GenericSample,
}

impl PChoice {
    pub fn values(self) -> Vec<(String, RatFuncQ)> {
        let one = |k: i64| (format!("q{k}"), qm(1, k));
        match self {
            PChoice::Q3 => vec![one(3)],
            PChoice::Q4 => vec![one(4)],
            PChoice::Q5 => vec![one(5)],
            PChoice::GenericSample => vec![one(3), one(4), one(5)],
        }
    }
}

impl FromStr for PChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q3" => Ok(PChoice::Q3),
            "q4" => Ok(PChoice::Q4),
            "q5" => Ok(PChoice::Q5),
            "generic-sample" => Ok(PChoice::GenericSample),
            _ => Err(Error::Config(format!("unknown p `{s}`; expected q3, q4, q5 or generic-sample"))),
        }
    }
}

/// One suite with its parameters; unset fields take the suite defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub suite: Suite,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub window: Option<Window>,
    /// Top degree of the character table.
    #[serde(default)]
    pub degree: Option<u32>,
    /// Ranks over `ℚ(q)` instead of at a point mod p (characters only).
    #[serde(default)]
    pub exact: bool,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig { suite, n: None, window: None, degree: None, exact: false }
    }

    pub fn n(&self) -> usize {
        self.n.unwrap_or(self.suite.default_n())
    }

    pub fn window(&self) -> Window {
        self.window.unwrap_or(self.suite.default_window())
    }

    pub fn degree(&self) -> u32 {
        self.degree.unwrap_or(6)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub suites: Vec<SuiteConfig>,
    #[serde(default)]
    pub p: PChoice,
    #[serde(default)]
    pub cache: Option<PathBuf>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub fast_prescreen: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        for s in &self.suites {
            let n = s.n();
            let (lo, hi) = s.suite.n_range();
            if s.suite != Suite::Characters && s.suite != Suite::Lemmas && !(lo..=hi).contains(&n) {
                return Err(Error::Config(format!("suite {} takes {lo}..={hi} slots, got {n}", s.suite)));
            }
            if s.suite == Suite::Fusion && self.p != PChoice::Q4 {
                return Err(Error::FusionRequiresQ4);
            }
            let w = s.window();
            let kernel_side = matches!(s.suite, Suite::NormalOrder | Suite::Commutation | Suite::Fusion | Suite::Stability | Suite::Rewriter);
            if kernel_side && w.hi > 0 {
                return Err(Error::Config(format!("suite {} needs a window with hi ≤ 0, got {w}", s.suite)));
            }
            if kernel_side && w.complete_degree().is_none() {
                return Err(Error::Config(format!("window {w} holds no complete degree")));
            }
            if s.suite == Suite::Characters {
                if s.degree() > 8 {
                    return Err(Error::Config(format!("character degree {} is beyond the supported 8", s.degree())));
                }
                if s.n.is_some_and(|n| n == 0) {
                    return Err(Error::Config("characters need at least one spinon sector".into()));
                }
            }
        }
        Ok(())
    }
}

/// Process exit status of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Pass = 0,
    CheckFailure = 1,
    ConfigError = 2,
    InvariantViolation = 3,
}

impl Exit {
    pub fn of_error(e: &Error) -> Exit {
        match e {
            Error::Config(_) | Error::FusionRequiresQ4 | Error::Parse(_) | Error::WindowUnderflow { .. } => Exit::ConfigError,
            _ => Exit::InvariantViolation,
        }
    }
}

pub struct RunOutcome {
    pub report: CheckReport,
    pub exit: Exit,
}

fn tagged(mut rep: CheckReport, tag: &str) -> CheckReport {
    if !tag.is_empty() {
        for r in &mut rep.records {
            r.id = format!("{}@{tag}", r.id);
        }
    }
    rep
}

/// Character table, read from or written to the cache when one is given.
pub fn character_table(cache: Option<&Path>, degree: u32, nmax: Option<usize>, exact: bool) -> Result<Vec<CharCell>> {
    let file = cache.map(|c| {
        let caps = nmax.map_or("auto".to_string(), |m| m.to_string());
        c.join(format!("characters-d{degree}-n{caps}-{}.json", if exact { "exact" } else { "modp" }))
    });
    if let Some(f) = file.as_ref().filter(|f| f.exists()) {
        let text = std::fs::read_to_string(f)?;
        return serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()));
    }
    let cells = graded_character(degree, nmax, exact)?;
    if let Some(f) = file {
        if let Some(dir) = f.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(&f, serde_json::to_string_pretty(&cells).map_err(|e| Error::Io(e.to_string()))?)?;
    }
    Ok(cells)
}

/// One record per module: every cell equals the level-one oracle and no
/// sector cap truncates it.
pub fn character_records(cells: &[CharCell], degree: u32) -> CheckReport {
    let mut rep = CheckReport::new();
    for module in 0..2 {
        let mut chk = Check::new("characters", &format!("module-{module}"), &format!("graded dimensions of the quotient equal the level-one character, module {module}, degree ≤ {degree}"));
        let mine: Vec<&CharCell> = cells.iter().filter(|c| c.module == module).collect();
        for c in &mine {
            chk.case(c.matches() && !c.truncated, || {
                format!("degree {} weight {}: count {} oracle {}{}", c.degree, c.weight, c.count, c.oracle, if c.truncated { " (truncated)" } else { "" })
            });
        }
        let per_degree: Vec<String> = (0..=degree).map(|d| mine.iter().filter(|c| c.degree == d).map(|c| c.count).sum::<usize>().to_string()).collect();
        chk.note(format!("dimensions by degree {}", per_degree.join(",")));
        if mine.iter().any(|c| !c.exact) {
            chk.note("ranks at a point mod p: the count is an upper bound, equal to the oracle lower bound");
        }
        rep.push(chk.finish());
    }
    rep
}

fn run_suite(s: &SuiteConfig, cfg: &RunConfig) -> Result<CheckReport> {
    let (n, w) = (s.n(), s.window());
    let ps = if s.suite.uses_p() { cfg.p.values() } else { vec![(String::new(), qm(1, 4))] };
    let multi = ps.len() > 1;
    let mut out = CheckReport::new();
    for (tag, p) in ps {
        let rep = match s.suite {
            Suite::Hecke => hecke::hecke_suite(n, w)?,
            Suite::AffineHecke => affine::affine_hecke_suite(n, &p, w)?,
            Suite::Lemmas => affine::lemma_suite()?,
            Suite::Exchange => level0::exchange_check(n, &p, w)?,
            Suite::Chevalley => level0::chevalley_check(n, &p, w, n == 2)?,
            Suite::NormalOrder => normal_order_check(n, w, 2)?,
            Suite::Commutation => commutation_check(n, w)?,
            Suite::Fusion => fusion_check(n, &p, w)?,
            Suite::Stability => stability_check(n, &p, w)?,
            Suite::Rewriter => rewriter_check(n, w)?,
            Suite::Characters => {
                let cells = character_table(cfg.cache.as_deref(), s.degree(), s.n, s.exact)?;
                character_records(&cells, s.degree())
            }
        };
        out.records.extend(tagged(rep, if multi { &tag } else { "" }).records);
    }
    Ok(out)
}

/// Runs every configured suite, in parallel, and assembles the records in
/// configuration order, followed by the locality ledger verdict.
pub fn run(cfg: &RunConfig) -> RunOutcome {
    if let Err(e) = cfg.validate() {
        let mut rep = CheckReport::new();
        rep.push(CheckRecord {
            id: "config/validate".into(),
            relation: "the run configuration is well formed".into(),
            status: Status::Fail,
            residual: 1,
            tested: 1,
            detail: e.to_string(),
            wall_ms: 0,
        });
        return RunOutcome { report: rep, exit: Exit::ConfigError };
    }
    kernel::set_prescreen(cfg.fast_prescreen);
    let before = locality::total_violations();
    let results: Vec<(Suite, Result<CheckReport>)> = cfg.suites.par_iter().map(|s| (s.suite, run_suite(s, cfg))).collect();
    let mut report = CheckReport::new();
    let mut exit = Exit::Pass;
    for (suite, r) in results {
        match r {
            Ok(rep) => {
                if rep.records.iter().any(|x| x.status == Status::Fail) && exit == Exit::Pass {
                    exit = Exit::CheckFailure;
                }
                report.records.extend(rep.records);
            }
            Err(e) => {
                let code = Exit::of_error(&e);
                if code as i32 > exit as i32 {
                    exit = code;
                }
                report.push(CheckRecord {
                    id: format!("{suite}/error"),
                    relation: "the suite runs to completion".into(),
                    status: Status::Fail,
                    residual: 1,
                    tested: 0,
                    detail: e.to_string(),
                    wall_ms: 0,
                });
            }
        }
    }
    if !cfg.suites.is_empty() {
        let violations = locality::total_violations() - before;
        let mut chk = Check::new("locality", "margins", "no operator application grows the largest mode beyond its declared margin");
        let ledger = locality::snapshot();
        chk.add_tested(ledger.values().map(|e| e.applications as usize).sum());
        chk.add_residual(violations as usize);
        for (op, e) in ledger.iter().filter(|(_, e)| e.violations > 0) {
            chk.note(format!("{op}: worst growth {} over margin {}", e.worst_growth, e.margin));
        }
        report.push(chk.finish());
        if violations > 0 {
            exit = Exit::InvariantViolation;
        }
    }
    RunOutcome { report, exit }
}

/// Nonzero entries `(input, output, coefficient)` of an operator on the
/// symbols of a window. Operators: `s<j>`, `g<j>`, `y<j>`, `e0`, `f0`, `t0`.
pub fn operator_matrix(op: &str, n: usize, window: Window, p: &RatFuncQ) -> Result<Vec<(kernel::Sym, kernel::Sym, RatFuncQ)>> {
    let dmax = window.complete_degree().ok_or_else(|| Error::Config(format!("window {window} holds no complete degree")))?;
    let hats = crate::symbol::Hats::new(p.clone());
    let index = |rest: &str| -> Result<usize> {
        let j: usize = rest.parse().map_err(|_| Error::Config(format!("operator `{op}` needs a slot index")))?;
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange { index: j, arity: n });
        }
        Ok(j)
    };
    let apply = |x: &crate::tensor::TensorPoly| -> Result<crate::tensor::TensorPoly> {
        match op {
            "e0" => level0::e0_apply(&hats, x),
            "f0" => level0::f0_apply(&hats, x),
            "t0" => Ok(level0::t0_apply(x, 1)),
            _ => match op.split_at(1) {
                ("s", r) => hecke::s_apply(x, index(r)?),
                ("g", r) => hats.apply(crate::symbol::FnOp::G(index(r)?, 1), x),
                ("y", r) => hats.apply(crate::symbol::FnOp::Y(index(r)?, 1), x),
                _ => Err(Error::UnknownGenerator(op.to_string())),
            },
        }
    };
    let mut out = Vec::new();
    for d in 0..=dmax {
        for s in kernel::Ambient::slice_syms(n, d, None) {
            let x: kernel::SymVec = [(s.clone(), RatFuncQ::one())].into_iter().collect();
            let y = kernel::from_tensor(&apply(&kernel::to_tensor(&x, n))?);
            out.extend(y.into_iter().map(|(t, c)| (s.clone(), t, c)));
        }
    }
    Ok(out)
}

/// Writes one JSON object per record.
pub fn write_jsonl(report: &CheckReport, out: &mut dyn Write) -> Result<()> {
    for r in &report.records {
        let line = serde_json::to_string(r).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(out, "{line}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fusion_rejects_other_p() {
        let cfg = RunConfig { suites: vec![SuiteConfig::new(Suite::Fusion)], p: PChoice::Q3, ..Default::default() };
        assert_eq!(cfg.validate(), Err(Error::FusionRequiresQ4));
        assert_eq!(run(&cfg).exit, Exit::ConfigError);
    }

    #[test]
    fn empty_run_passes() {
        let out = run(&RunConfig::default());
        assert!(out.report.records.is_empty());
        assert_eq!(out.exit, Exit::Pass);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
