//! Corpus runner and report rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num::complex::Complex64;
use rayon::prelude::*;
use rigcalc::gm::{null_homotopy, SuspElem, DEFAULT_GRID};
use rigcalc::model::{model_difference, random_models_with, signature};
use rigcalc::rig::{self, CONTINUITY_TOL};
use rigcalc::stable::{Pairing, StableMat};
use rigcalc::{decide_equal, TypedMor, Verdict as DecideVerdict};
use serde::Serialize;

use crate::dsl::{self, Construct, DiagramSpec, Item, Mode, ModelParams};

pub const DEFAULT_MODELS: usize = 5;
pub const DEFAULT_MAXDIM: usize = 4;
pub const DEFAULT_SEED: u64 = 0;
/// Allowed gap between stages of the suspension chain where an endpoint
/// falls between grid points.
pub const INTERPOLATION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

impl Verdict {
    fn join(self, o: Verdict) -> Verdict {
        use Verdict::*;
        match (self, o) {
            (Fail, _) | (_, Fail) => Fail,
            (Indeterminate, _) | (_, Indeterminate) => Indeterminate,
            _ => Pass,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeOverride {
    Exact,
    Model,
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub mode: Option<ModeOverride>,
    pub seed: Option<u64>,
    pub models: Option<usize>,
    pub maxdim: Option<usize>,
    pub tol: Option<f64>,
    pub trunc: usize,
    pub steps: usize,
    pub pairing: Pairing,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            mode: None,
            seed: None,
            models: None,
            maxdim: None,
            tol: None,
            trunc: rig::DEFAULT_TRUNCATION,
            steps: rig::DEFAULT_STEPS,
            pairing: Pairing::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub seed: u64,
    pub dims: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckResult {
    pub label: String,
    pub mode: String,
    pub verdict: Verdict,
    pub max_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub models: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub continuity_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub endpoint_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rig: Option<rig::Report>,
}

impl CheckResult {
    fn new(label: String, mode: &str, verdict: Verdict, max_error: Option<f64>) -> Self {
        CheckResult {
            label,
            mode: mode.into(),
            verdict,
            max_error,
            detail: None,
            models: None,
            seed: None,
            counterexample: None,
            continuity_bound: None,
            endpoint_error: None,
            rig: None,
        }
    }

    fn failed(label: String, mode: &str, why: String) -> Self {
        CheckResult { detail: Some(why), ..CheckResult::new(label, mode, Verdict::Fail, None) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DiagramResult {
    pub name: String,
    pub file: String,
    pub mode: String,
    pub verdict: Verdict,
    pub max_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub diagrams: Vec<DiagramResult>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.verdict == Verdict::Pass
    }

    /// The same report with every timing field removed.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for d in &mut r.diagrams {
            d.ms = None;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn to_text(&self) -> String {
        let w = self.diagrams.iter().map(|d| d.name.len()).max().unwrap_or(4).max(4);
        let mut s = String::new();
        let _ = writeln!(s, "{:<w$}  {:<9} {:<13} {:>10} {:>8}", "name", "mode", "verdict", "maxError", "ms");
        for d in &self.diagrams {
            let err = d.max_error.map_or("-".into(), |e| format!("{e:.3e}"));
            let ms = d.ms.map_or("-".into(), |m| m.to_string());
            let _ = writeln!(s, "{:<w$}  {:<9} {:<13} {:>10} {:>8}", d.name, d.mode, d.verdict.as_str(), err, ms);
            if let Some(e) = &d.error {
                let _ = writeln!(s, "    {e}");
            }
            for c in d.checks.iter().filter(|c| c.verdict != Verdict::Pass) {
                let _ = writeln!(s, "    {} [{}]: {}", c.label, c.verdict.as_str(), c.detail.as_deref().unwrap_or(""));
            }
        }
        let m = &self.summary;
        let _ = writeln!(
            s,
            "{} diagrams: {} pass, {} fail, {} indeterminate",
            m.total, m.pass, m.fail, m.indeterminate
        );
        s
    }
}

/// Runs every diagram found in the `.diag` files of `dir`.
pub fn run_corpus(dir: &Path, opts: &RunOptions) -> std::io::Result<Report> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "diag"))
        .collect();
    files.sort();
    let mut sources = Vec::new();
    for f in &files {
        let name = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        sources.push((name, std::fs::read_to_string(f)?));
    }
    Ok(run_sources(&sources, opts))
}

/// Runs diagrams given as (file name, contents) pairs.
pub fn run_sources(sources: &[(String, String)], opts: &RunOptions) -> Report {
    let mut warnings = Vec::new();
    if sources.is_empty() {
        warnings.push("no .diag files found".to_string());
    }
    let mut jobs: Vec<(String, Result<DiagramSpec, String>)> = Vec::new();
    for (file, text) in sources {
        match dsl::parse(text) {
            Ok(ds) => {
                if ds.is_empty() {
                    warnings.push(format!("{file} contains no diagrams"));
                }
                jobs.extend(ds.into_iter().map(|d| (file.clone(), Ok(d))));
            }
            Err(e) => jobs.push((file.clone(), Err(e.to_string()))),
        }
    }
    let mut diagrams: Vec<DiagramResult> = jobs
        .into_par_iter()
        .map(|(file, spec)| match spec {
            Ok(d) => run_diagram(&file, &d, opts),
            Err(e) => DiagramResult {
                name: file.trim_end_matches(".diag").to_string(),
                file,
                mode: "-".into(),
                verdict: Verdict::Fail,
                max_error: None,
                ms: Some(0),
                error: Some(e),
                checks: Vec::new(),
            },
        })
        .collect();
    diagrams.sort_by(|a, b| (&a.name, &a.file).cmp(&(&b.name, &b.file)));
    for pair in diagrams.windows(2) {
        if pair[0].name == pair[1].name {
            warnings.push(format!("diagram name `{}` is used more than once", pair[0].name));
        }
    }
    let count = |v: Verdict| diagrams.iter().filter(|d| d.verdict == v).count();
    let summary = Summary {
        total: diagrams.len(),
        pass: count(Verdict::Pass),
        fail: count(Verdict::Fail),
        indeterminate: count(Verdict::Indeterminate),
        verdict: diagrams.iter().fold(Verdict::Pass, |acc, d| acc.join(d.verdict)),
    };
    Report { diagrams, summary, warnings }
}

pub fn run_diagram(file: &str, d: &DiagramSpec, opts: &RunOptions) -> DiagramResult {
    let start = Instant::now();
    let checks: Vec<CheckResult> = d.items.iter().map(|it| run_item(it, opts)).collect();
    let modes: Vec<&str> = checks.iter().map(|c| c.mode.as_str()).collect();
    let mode = if modes.windows(2).all(|w| w[0] == w[1]) { modes[0] } else { "mixed" };
    let max_error = checks.iter().try_fold(0.0f64, |acc, c| c.max_error.map(|e| acc.max(e)));
    DiagramResult {
        name: d.name.clone(),
        file: file.into(),
        mode: mode.into(),
        verdict: checks.iter().fold(Verdict::Pass, |acc, c| acc.join(c.verdict)),
        max_error,
        ms: Some(start.elapsed().as_millis()),
        error: None,
        checks,
    }
}

fn effective_mode(declared: Mode, opts: &RunOptions) -> Mode {
    match (declared, opts.mode) {
        // homotopy checks name a construction and keep it
        (Mode::Homotopy(_), _) | (_, None) => declared,
        (_, Some(ModeOverride::Exact)) => Mode::Exact,
        (Mode::Model(p), Some(ModeOverride::Model)) => Mode::Model(p),
        (_, Some(ModeOverride::Model)) => Mode::Model(ModelParams::default()),
    }
}

fn run_item(item: &Item, opts: &RunOptions) -> CheckResult {
    match item {
        Item::Assert { text, left, right, mode, .. } => match effective_mode(*mode, opts) {
            Mode::Exact => check_exact(text, left, right),
            Mode::Model(p) => check_model(text, left, right, &p, opts),
            Mode::Homotopy(_) => {
                CheckResult::failed(text.clone(), "homotopy", "homotopy mode applies to check statements only".into())
            }
        },
        Item::Check { name, mode, .. } => match mode {
            Mode::Homotopy(Construct::Rotation) => check_rig(name, opts),
            Mode::Homotopy(Construct::SuspensionNull) => check_suspension(name, opts),
            _ => CheckResult::failed(name.clone(), mode.name(), "check statements need a homotopy construction".into()),
        },
    }
}

fn check_exact(text: &str, l: &TypedMor, r: &TypedMor) -> CheckResult {
    match decide_equal(l, r) {
        Ok(DecideVerdict::Equal) => CheckResult::new(text.into(), "exact", Verdict::Pass, Some(0.0)),
        Ok(DecideVerdict::Unequal) => CheckResult {
            detail: Some("leaf maps differ".into()),
            ..CheckResult::new(text.into(), "exact", Verdict::Fail, None)
        },
        Ok(DecideVerdict::Indeterminate) => CheckResult::new(text.into(), "exact", Verdict::Indeterminate, None),
        Err(e) => CheckResult::failed(text.into(), "exact", e.to_string()),
    }
}

fn check_model(text: &str, l: &TypedMor, r: &TypedMor, p: &ModelParams, opts: &RunOptions) -> CheckResult {
    let count = opts.models.or(p.count).unwrap_or(DEFAULT_MODELS);
    let maxdim = opts.maxdim.or(p.maxdim).unwrap_or(DEFAULT_MAXDIM);
    let seed = opts.seed.or(p.seed).unwrap_or(DEFAULT_SEED);
    let tol = opts.tol.or(p.tol).unwrap_or(0.0);
    let (gens, named) = signature(&[l, r]);
    let mut worst = 0.0f64;
    let mut refuting = None;
    for m in random_models_with(&gens, &named, count, maxdim.max(1), seed) {
        match model_difference(l, r, &m) {
            Ok(None) => {}
            Ok(Some(d)) => {
                worst = worst.max(d);
                if d > tol && refuting.is_none() {
                    refuting = Some(Counterexample { seed: m.seed, dims: m.gen_dims.clone() });
                }
            }
            Err(e) => return CheckResult::failed(text.into(), "model", e.to_string()),
        }
    }
    let verdict = if refuting.is_some() { Verdict::Fail } else { Verdict::Pass };
    CheckResult {
        models: Some(count),
        seed: Some(seed),
        counterexample: refuting,
        ..CheckResult::new(text.into(), "model", verdict, Some(worst))
    }
}

fn check_rig(name: &str, opts: &RunOptions) -> CheckResult {
    match rig::verify_rig_diagram_with(name, opts.trunc, &opts.pairing, opts.steps) {
        Ok(rep) => {
            let ws: Vec<_> = rep.checks.iter().filter_map(|c| c.witness).collect();
            let cont = ws.iter().map(|w| w.continuity_bound).fold(0.0, f64::max);
            let end = ws.iter().map(|w| w.endpoint_error).fold(0.0, f64::max);
            let verdict = if rep.pass { Verdict::Pass } else { Verdict::Fail };
            CheckResult {
                continuity_bound: Some(cont),
                endpoint_error: Some(end),
                rig: Some(rep.clone()),
                ..CheckResult::new(name.into(), "homotopy", verdict, Some(rep.max_error))
            }
        }
        Err(e) => CheckResult::failed(name.into(), "homotopy", e.to_string()),
    }
}

/// A fixed element of the suspension with both a diagonal and an
/// off-diagonal coefficient, vanishing at the ends of the interval.
pub fn probe_element(m: usize) -> SuspElem {
    SuspElem::from_fn(m, 1, |t| {
        let a = StableMat::unit(1, 0, 0).scale(Complex64::new((std::f64::consts::PI * t).sin(), 0.0));
        let b = StableMat::unit(1, 1, 0).scale(Complex64::new(t * (1.0 - t), 0.5 * t * (1.0 - t)));
        a.add(&b).expect("same coefficient size")
    })
    .expect("samples vanish at the ends")
}

fn check_suspension(name: &str, opts: &RunOptions) -> CheckResult {
    let f = probe_element(DEFAULT_GRID);
    if f.inv().inv() != f {
        return CheckResult::failed(name.into(), "homotopy", "inversion is not an involution".into());
    }
    match null_homotopy(&f, opts.steps) {
        Ok(c) => {
            let gap = c.stage_gaps.iter().copied().fold(0.0, f64::max);
            let ok = c.start_error == 0.0 && gap <= INTERPOLATION_TOL && c.terminal == 0.0 && c.continuity_bound <= CONTINUITY_TOL;
            CheckResult {
                continuity_bound: Some(c.continuity_bound),
                endpoint_error: Some(c.start_error.max(c.terminal)),
                detail: (!ok).then(|| format!("stage gaps {:?}, terminal {}", c.stage_gaps, c.terminal)),
                ..CheckResult::new(
                    name.into(),
                    "homotopy",
                    if ok { Verdict::Pass } else { Verdict::Fail },
                    Some(c.start_error.max(gap).max(c.terminal)),
                )
            }
        }
        Err(e) => CheckResult::failed(name.into(), "homotopy", e.to_string()),
    }
}
