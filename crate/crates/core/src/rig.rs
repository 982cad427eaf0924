//! The stabilization rig (𝕂, θ̂, ι̂₀₀, μ̂, 0) on a truncation window.
//!
//! Every map here is spatial: it sends the matrix unit ε_ij to ε_{σ(i),σ(j)}
//! for an injective partial map σ of basis indices. Legs are written as
//! morphism terms over the objects K, M2, 1 and 0 with the named generators
//! `theta`, `theta2`, `iota00`, `iota`, `d`, `mu` and `zero`, and evaluated
//! to index maps on the window.

use std::collections::HashMap;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::homotopy::{relabeling_path, HomPath, HomotopyError, PathSummary};
use crate::mor::{s, Dir, Kind, MorTerm, TypedMor};
use crate::obj::{oplus, tensor, Generator, ObjTerm};
use crate::stable::{IxMat, Pairing};

pub const DEFAULT_TRUNCATION: usize = 8;
pub const DEFAULT_STEPS: usize = 100;
pub const ENDPOINT_TOL: f64 = 1e-9;
pub const CONTINUITY_TOL: f64 = 0.1;
pub const STAR_TOL: f64 = 1e-9;

pub const CATALOGUE: [&str; 8] = [
    "assoc-mu",
    "assoc-theta",
    "comm-mu",
    "left-distrib",
    "right-distrib",
    "symmetry-kk",
    "unit-iota00",
    "zero-laws",
];

#[derive(Debug, Error, PartialEq)]
pub enum RigError {
    #[error("unknown diagram `{0}`")]
    UnknownDiagram(String),
    #[error("no witness for homotopy sub-diagram `{0}`: {1}")]
    WitnessMissing(String, String),
    #[error("cannot evaluate `{0}` spatially: {1}")]
    Unsupported(String, String),
    #[error("legs are not parallel: {0} vs {1}")]
    NotParallel(String, String),
}

/// Basis index of a spatial object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ix {
    Unit,
    N(usize),
    P(Box<Ix>, Box<Ix>),
    L(Box<Ix>),
    R(Box<Ix>),
}

fn pair(a: Ix, b: Ix) -> Ix {
    Ix::P(Box::new(a), Box::new(b))
}

fn left(a: Ix) -> Ix {
    Ix::L(Box::new(a))
}

fn right(a: Ix) -> Ix {
    Ix::R(Box::new(a))
}

pub fn k() -> ObjTerm {
    ObjTerm::Gen(Generator::compacts())
}

pub fn m2() -> ObjTerm {
    ObjTerm::Gen(Generator::matrices(2))
}

pub mod gens {
    use super::*;

    pub fn theta() -> TypedMor {
        TypedMor::named("theta", tensor(k(), k()), k())
    }

    pub fn theta2() -> TypedMor {
        TypedMor::named("theta2", tensor(m2(), k()), k())
    }

    pub fn iota00() -> TypedMor {
        TypedMor::named("iota00", ObjTerm::One, k())
    }

    pub fn iota() -> TypedMor {
        TypedMor::named("iota", oplus(ObjTerm::One, ObjTerm::One), m2())
    }

    /// d̂_X : X ⊕ X → M2 ⊗ X.
    pub fn d(x: ObjTerm) -> TypedMor {
        TypedMor::named("d", oplus(x.clone(), x.clone()), tensor(m2(), x))
    }

    pub fn mu() -> TypedMor {
        TypedMor::named("mu", oplus(k(), k()), k())
    }

    pub fn zero(x: ObjTerm) -> TypedMor {
        TypedMor::named("zero", ObjTerm::Zero, x)
    }
}

/// Window basis of an object: `trunc` indices for K, n for M_n.
pub fn basis(x: &ObjTerm, trunc: usize) -> Result<Vec<Ix>, RigError> {
    Ok(match x {
        ObjTerm::One => vec![Ix::Unit],
        ObjTerm::Zero => vec![],
        ObjTerm::Gen(g) => {
            let n = if &*g.id == "K" {
                trunc
            } else if let Some(n) = g.id.strip_prefix('M').and_then(|s| s.parse().ok()) {
                n
            } else {
                return Err(RigError::Unsupported(g.id.to_string(), "not a spatial algebra".into()));
            };
            (0..n).map(Ix::N).collect()
        }
        ObjTerm::Tensor(a, b) => {
            let (ba, bb) = (basis(a, trunc)?, basis(b, trunc)?);
            ba.iter().flat_map(|i| bb.iter().map(move |j| pair(i.clone(), j.clone()))).collect()
        }
        ObjTerm::Oplus(a, b) => {
            let mut out: Vec<Ix> = basis(a, trunc)?.into_iter().map(left).collect();
            out.extend(basis(b, trunc)?.into_iter().map(right));
            out
        }
    })
}

fn bad(t: &MorTerm, why: &str) -> RigError {
    RigError::Unsupported(t.to_string(), why.into())
}

fn num(i: &Ix) -> Option<usize> {
    match i {
        Ix::N(n) => Some(*n),
        _ => None,
    }
}

fn split(i: &Ix) -> Option<(&Ix, &Ix)> {
    match i {
        Ix::P(a, b) => Some((a, b)),
        _ => None,
    }
}

fn structural(kind: Kind, dir: Dir, x: &Ix) -> Option<Ix> {
    use Ix::*;
    let fwd = dir == Dir::Fwd;
    match (kind, x) {
        (Kind::AlphaT, P(ab, c)) if fwd => {
            let (a, b) = split(ab)?;
            Some(pair(a.clone(), pair(b.clone(), (**c).clone())))
        }
        (Kind::AlphaT, P(a, bc)) => {
            let (b, c) = split(bc)?;
            Some(pair(pair((**a).clone(), b.clone()), c.clone()))
        }
        (Kind::LambdaT, P(_, a)) if fwd => Some((**a).clone()),
        (Kind::LambdaT, a) => Some(pair(Unit, a.clone())),
        (Kind::RhoT, P(a, _)) if fwd => Some((**a).clone()),
        (Kind::RhoT, a) => Some(pair(a.clone(), Unit)),
        (Kind::XiT, P(a, b)) => Some(pair((**b).clone(), (**a).clone())),
        (Kind::AlphaP, L(ab)) if fwd => match &**ab {
            L(a) => Some(left((**a).clone())),
            R(b) => Some(right(left((**b).clone()))),
            _ => None,
        },
        (Kind::AlphaP, R(c)) if fwd => Some(right(right((**c).clone()))),
        (Kind::AlphaP, L(a)) => Some(left(left((**a).clone()))),
        (Kind::AlphaP, R(bc)) => match &**bc {
            L(b) => Some(left(right((**b).clone()))),
            R(c) => Some(right((**c).clone())),
            _ => None,
        },
        (Kind::LambdaP, R(a)) if fwd => Some((**a).clone()),
        (Kind::LambdaP, a) if !fwd => Some(right(a.clone())),
        (Kind::RhoP, L(a)) if fwd => Some((**a).clone()),
        (Kind::RhoP, a) if !fwd => Some(left(a.clone())),
        (Kind::XiP, L(a)) => Some(right((**a).clone())),
        (Kind::XiP, R(a)) => Some(left((**a).clone())),
        (Kind::DeltaL, P(a, bc)) if fwd => match &**bc {
            L(b) => Some(left(pair((**a).clone(), (**b).clone()))),
            R(c) => Some(right(pair((**a).clone(), (**c).clone()))),
            _ => None,
        },
        (Kind::DeltaL, L(ab)) => {
            let (a, b) = split(ab)?;
            Some(pair(a.clone(), left(b.clone())))
        }
        (Kind::DeltaL, R(ac)) => {
            let (a, c) = split(ac)?;
            Some(pair(a.clone(), right(c.clone())))
        }
        (Kind::DeltaR, P(ab, c)) if fwd => match &**ab {
            L(a) => Some(left(pair((**a).clone(), (**c).clone()))),
            R(b) => Some(right(pair((**b).clone(), (**c).clone()))),
            _ => None,
        },
        (Kind::DeltaR, L(ac)) => {
            let (a, c) = split(ac)?;
            Some(pair(left(a.clone()), c.clone()))
        }
        (Kind::DeltaR, R(bc)) => {
            let (b, c) = split(bc)?;
            Some(pair(right(b.clone()), c.clone()))
        }
        // 𝟘 has no basis, and ! kills everything.
        _ => None,
    }
}

fn named(id: &str, t: &MorTerm, src: &ObjTerm, tgt: &ObjTerm, x: &Ix, p: &Pairing) -> Result<Option<Ix>, RigError> {
    let sig = |s: ObjTerm, u: ObjTerm| {
        if *src == s && *tgt == u {
            Ok(())
        } else {
            Err(bad(t, &format!("`{id}` must have type {s} -> {u}")))
        }
    };
    Ok(match id {
        "theta" => {
            sig(tensor(k(), k()), k())?;
            split(x).and_then(|(a, b)| Some(Ix::N(p.pnn(num(a)?, num(b)?))))
        }
        "theta2" => {
            sig(tensor(m2(), k()), k())?;
            split(x).and_then(|(a, b)| Some(Ix::N(p.p2(num(a)?, num(b)?))))
        }
        "iota00" => {
            sig(ObjTerm::One, k())?;
            Some(Ix::N(0))
        }
        "iota" => {
            sig(oplus(ObjTerm::One, ObjTerm::One), m2())?;
            match x {
                Ix::L(_) => Some(Ix::N(0)),
                Ix::R(_) => Some(Ix::N(1)),
                _ => None,
            }
        }
        "d" => {
            let ObjTerm::Oplus(a, _) = src else {
                return Err(bad(t, "`d` needs a source X + X"));
            };
            sig(oplus((**a).clone(), (**a).clone()), tensor(m2(), (**a).clone()))?;
            match x {
                Ix::L(y) => Some(pair(Ix::N(0), (**y).clone())),
                Ix::R(y) => Some(pair(Ix::N(1), (**y).clone())),
                _ => None,
            }
        }
        "mu" => {
            sig(oplus(k(), k()), k())?;
            match x {
                Ix::L(y) => num(y).map(|n| Ix::N(p.p2(0, n))),
                Ix::R(y) => num(y).map(|n| Ix::N(p.p2(1, n))),
                _ => None,
            }
        }
        "zero" => {
            if *src != ObjTerm::Zero {
                return Err(bad(t, "`zero` starts at 0"));
            }
            None
        }
        _ => return Err(bad(t, "unknown spatial generator")),
    })
}

fn eval_index(t: &MorTerm, x: &Ix, p: &Pairing) -> Result<Option<Ix>, RigError> {
    Ok(match t {
        MorTerm::Id(_) => Some(x.clone()),
        MorTerm::Struct { kind: Kind::Diag, .. } => return Err(bad(t, "the diagonal is not spatial")),
        MorTerm::Struct { kind: Kind::Bang, dir: Dir::Fwd, .. } => None,
        MorTerm::Struct { kind, dir, .. } => structural(*kind, *dir, x),
        MorTerm::Named { id, src, tgt } => named(id, t, src, tgt, x, p)?,
        MorTerm::VComp(g, f) => match eval_index(f, x, p)? {
            Some(y) => eval_index(g, &y, p)?,
            None => None,
        },
        MorTerm::TensorM(f, g) => match x {
            Ix::P(a, b) => match (eval_index(f, a, p)?, eval_index(g, b, p)?) {
                (Some(c), Some(d)) => Some(pair(c, d)),
                _ => None,
            },
            _ => None,
        },
        MorTerm::OplusM(f, g) => match x {
            Ix::L(a) => eval_index(f, a, p)?.map(left),
            Ix::R(b) => eval_index(g, b, p)?.map(right),
            _ => None,
        },
    })
}

/// σ on the window basis of the source.
pub fn index_map(f: &TypedMor, trunc: usize, p: &Pairing) -> Result<Vec<(Ix, Option<Ix>)>, RigError> {
    basis(&f.src, trunc)?.into_iter().map(|i| Ok((i.clone(), eval_index(&f.term, &i, p)?))).collect()
}

fn check_parallel(l: &TypedMor, r: &TypedMor) -> Result<(), RigError> {
    if l.parallel_to(r) {
        Ok(())
    } else {
        Err(RigError::NotParallel(format!("{} -> {}", l.src, l.tgt), format!("{} -> {}", r.src, r.tgt)))
    }
}

/// Entrywise comparison on all window units ε_ij; spatial images differ by
/// a full unit whenever σ differs, so the result is 0 or 1.
pub fn compare_exact(l: &TypedMor, r: &TypedMor, trunc: usize, p: &Pairing) -> Result<f64, RigError> {
    check_parallel(l, r)?;
    let (a, b) = (index_map(l, trunc, p)?, index_map(r, trunc, p)?);
    Ok(if a.iter().zip(&b).all(|(x, y)| x.1 == y.1) { 0.0 } else { 1.0 })
}

fn unit_image(d: &[Option<usize>], i: usize, j: usize) -> IxMat<usize> {
    match (d[i], d[j]) {
        (Some(a), Some(b)) => IxMat::unit(1, a, b),
        _ => IxMat::zero(1),
    }
}

/// Relabeling witness from leg `l` to leg `r`. The generating set is
/// {ε_{0,i}, ε_{i,0}} over the window; snapshots are checked for the
/// *-homomorphism property on a grid of at most 4 spread-out units.
/// Target indices are numbered in order of first appearance.
pub fn relabeling_witness(
    l: &TypedMor,
    r: &TypedMor,
    trunc: usize,
    p: &Pairing,
    steps: usize,
) -> Result<HomPath<usize>, RigError> {
    check_parallel(l, r)?;
    let (a, b) = (index_map(l, trunc, p)?, index_map(r, trunc, p)?);
    let not_related = |why: String| RigError::WitnessMissing(format!("{} vs {}", l.term, r.term), why);
    let mut ids: HashMap<Ix, usize> = HashMap::new();
    let mut intern = |x: &Option<Ix>| {
        x.as_ref().map(|x| {
            let n = ids.len();
            *ids.entry(x.clone()).or_insert(n)
        })
    };
    let a: Vec<Option<usize>> = a.iter().map(|(_, x)| intern(x)).collect();
    let b: Vec<Option<usize>> = b.iter().map(|(_, x)| intern(x)).collect();
    let mut pairs = Vec::new();
    for (x, y) in a.iter().zip(&b) {
        match (x, y) {
            (Some(x), Some(y)) => pairs.push((*x, *y)),
            (None, None) => {}
            _ => return Err(not_related("one leg vanishes where the other does not".into())),
        }
    }
    let n = a.len();
    let mut gens_a = Vec::new();
    let mut gens_b = Vec::new();
    for i in 0..n {
        gens_a.push(unit_image(&a, 0, i));
        gens_b.push(unit_image(&b, 0, i));
        if i > 0 {
            gens_a.push(unit_image(&a, i, 0));
            gens_b.push(unit_image(&b, i, 0));
        }
    }
    let sample: Vec<usize> = if n <= 4 { (0..n).collect() } else { (0..4).map(|k| k * (n - 1) / 3).collect() };
    let grid: Vec<Vec<IxMat<usize>>> =
        sample.iter().map(|&i| sample.iter().map(|&j| unit_image(&a, i, j)).collect()).collect();
    relabeling_path(&pairs, &gens_a, &gens_b, &grid, steps).map_err(|e| match e {
        HomotopyError::LegsNotRotationRelated(why) => not_related(why),
        other => not_related(other.to_string()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Exact,
    Homotopy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SubReport {
    pub name: String,
    pub mode: CheckMode,
    pub max_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<PathSummary>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub diagram: String,
    pub mode: String,
    pub truncation: usize,
    pub max_error: f64,
    pub pass: bool,
    pub checks: Vec<SubReport>,
    #[serde(skip)]
    pub ms: u128,
}

struct Sub {
    name: &'static str,
    mode: CheckMode,
    left: TypedMor,
    right: TypedMor,
}

fn ch(steps: &[TypedMor]) -> TypedMor {
    TypedMor::chain(steps).expect("catalogue legs are composable")
}

fn exact(name: &'static str, left: TypedMor, right: TypedMor) -> Sub {
    Sub { name, mode: CheckMode::Exact, left, right }
}

fn homotopy(name: &'static str, left: TypedMor, right: TypedMor) -> Sub {
    Sub { name, mode: CheckMode::Homotopy, left, right }
}

fn catalogue(name: &str) -> Result<Vec<Sub>, RigError> {
    use gens::*;
    let (kk, one) = (k(), ObjTerm::One);
    let id = |x: &ObjTerm| TypedMor::id(x.clone());
    let k2 = tensor(kk.clone(), kk.clone());
    Ok(match name {
        "assoc-theta" => vec![homotopy(
            "theta-associativity",
            ch(&[theta().tensor(&id(&kk)), theta()]),
            ch(&[s::alpha_t(kk.clone(), kk.clone(), kk.clone()), id(&kk).tensor(&theta()), theta()]),
        )],
        "unit-iota00" => vec![
            homotopy("left-unit", ch(&[iota00().tensor(&id(&kk)), theta()]), s::lambda_t(kk.clone())),
            homotopy("right-unit", ch(&[id(&kk).tensor(&iota00()), theta()]), s::rho_t(kk.clone())),
        ],
        "comm-mu" => vec![homotopy("mu-commutativity", mu(), ch(&[s::xi_p(kk.clone(), kk.clone()), mu()]))],
        "symmetry-kk" => vec![homotopy("xi-kk-vs-identity", s::xi_t(kk.clone(), kk.clone()), id(&k2))],
        "assoc-mu" => vec![homotopy(
            "mu-associativity",
            ch(&[mu().oplus(&id(&kk)), mu()]),
            ch(&[s::alpha_p(kk.clone(), kk.clone(), kk.clone()), id(&kk).oplus(&mu()), mu()]),
        )],
        "zero-laws" => vec![
            exact(
                "left-absorption",
                ch(&[s::lambda_z(kk.clone()), zero(kk.clone())]),
                ch(&[zero(kk.clone()).tensor(&id(&kk)), theta()]),
            ),
            exact(
                "right-absorption",
                ch(&[s::rho_z(kk.clone()), zero(kk.clone())]),
                ch(&[id(&kk).tensor(&zero(kk.clone())), theta()]),
            ),
            homotopy("additive-left-unit", ch(&[zero(kk.clone()).oplus(&id(&kk)), mu()]), s::lambda_p(kk.clone())),
            homotopy("additive-right-unit", ch(&[id(&kk).oplus(&zero(kk.clone())), mu()]), s::rho_p(kk.clone())),
        ],
        "left-distrib" => {
            let c = ch(&[
                s::inv(s::alpha_t(kk.clone(), m2(), kk.clone())),
                s::xi_t(kk.clone(), m2()).tensor(&id(&kk)),
                s::alpha_t(m2(), kk.clone(), kk.clone()),
            ]);
            let d_fact = ch(&[
                s::inv(s::lambda_t(kk.clone())).oplus(&s::inv(s::lambda_t(kk.clone()))),
                s::inv(s::delta_r(one.clone(), one.clone(), kk.clone())),
                iota().tensor(&id(&kk)),
            ]);
            vec![
                exact("d-factorization", d(kk.clone()), d_fact.clone()),
                exact("mu-definition", mu(), ch(&[d_fact, theta2()])),
                exact("upper-triangle", id(&kk).tensor(&mu()), id(&kk).tensor(&ch(&[d(kk.clone()), theta2()]))),
                exact("lower-triangle", mu(), ch(&[d(kk.clone()), theta2()])),
                exact(
                    "left-square",
                    ch(&[s::delta_l(kk.clone(), kk.clone(), kk.clone()), d(k2.clone())]),
                    ch(&[id(&kk).tensor(&d(kk.clone())), c.clone()]),
                ),
                exact(
                    "bottom-left-square",
                    ch(&[theta().oplus(&theta()), d(kk.clone())]),
                    ch(&[d(k2.clone()), id(&m2()).tensor(&theta())]),
                ),
                homotopy(
                    "right-square",
                    ch(&[id(&kk).tensor(&theta2()), theta()]),
                    ch(&[c, id(&m2()).tensor(&theta()), theta2()]),
                ),
                homotopy(
                    "whole-diagram",
                    ch(&[s::delta_l(kk.clone(), kk.clone(), kk.clone()), theta().oplus(&theta()), mu()]),
                    ch(&[id(&kk).tensor(&mu()), theta()]),
                ),
            ]
        }
        "right-distrib" => {
            let a = s::alpha_t(m2(), kk.clone(), kk.clone());
            vec![
                exact("upper-triangle", mu().tensor(&id(&kk)), ch(&[d(kk.clone()), theta2()]).tensor(&id(&kk))),
                exact("lower-triangle", mu(), ch(&[d(kk.clone()), theta2()])),
                exact(
                    "left-square",
                    ch(&[s::delta_r(kk.clone(), kk.clone(), kk.clone()), d(k2.clone())]),
                    ch(&[d(kk.clone()).tensor(&id(&kk)), a.clone()]),
                ),
                exact(
                    "bottom-left-square",
                    ch(&[theta().oplus(&theta()), d(kk.clone())]),
                    ch(&[d(k2.clone()), id(&m2()).tensor(&theta())]),
                ),
                homotopy(
                    "right-square",
                    ch(&[theta2().tensor(&id(&kk)), theta()]),
                    ch(&[a, id(&m2()).tensor(&theta()), theta2()]),
                ),
                homotopy(
                    "whole-diagram",
                    ch(&[s::delta_r(kk.clone(), kk.clone(), kk.clone()), theta().oplus(&theta()), mu()]),
                    ch(&[mu().tensor(&id(&kk)), theta()]),
                ),
            ]
        }
        _ => return Err(RigError::UnknownDiagram(name.to_string())),
    })
}

/// Runs one catalogue diagram with the default 100-step witnesses.
pub fn verify_rig_diagram(name: &str, truncation: usize, p: &Pairing) -> Result<Report, RigError> {
    verify_rig_diagram_with(name, truncation, p, DEFAULT_STEPS)
}

pub fn verify_rig_diagram_with(name: &str, truncation: usize, p: &Pairing, steps: usize) -> Result<Report, RigError> {
    let start = Instant::now();
    let subs = catalogue(name)?;
    let mut checks = Vec::new();
    for sub in subs {
        checks.push(match sub.mode {
            CheckMode::Exact => {
                let e = compare_exact(&sub.left, &sub.right, truncation, p)?;
                SubReport { name: sub.name.into(), mode: sub.mode, max_error: e, witness: None, pass: e == 0.0 }
            }
            CheckMode::Homotopy => {
                let h = relabeling_witness(&sub.left, &sub.right, truncation, p, steps)?;
                SubReport {
                    name: sub.name.into(),
                    mode: sub.mode,
                    max_error: h.endpoint_error,
                    witness: Some(h.summary()),
                    pass: h.validates(ENDPOINT_TOL, CONTINUITY_TOL, STAR_TOL),
                }
            }
        });
    }
    let modes: Vec<CheckMode> = checks.iter().map(|c| c.mode).collect();
    let mode = if modes.iter().all(|m| *m == CheckMode::Exact) {
        "exact"
    } else if modes.iter().all(|m| *m == CheckMode::Homotopy) {
        "homotopy"
    } else {
        "mixed"
    };
    Ok(Report {
        diagram: name.to_string(),
        mode: mode.into(),
        truncation,
        max_error: checks.iter().map(|c| c.max_error).fold(0.0, f64::max),
        pass: checks.iter().all(|c| c.pass),
        checks,
        ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::gens::*;
    use super::*;

    #[test]
    fn d_interleaves_blocks() {
        let m = index_map(&d(k()), 2, &Pairing::default()).unwrap();
        assert_eq!(m[0], (left(Ix::N(0)), Some(pair(Ix::N(0), Ix::N(0)))));
        assert_eq!(m[3].1, Some(pair(Ix::N(1), Ix::N(1))));
    }

    #[test]
    fn xi_is_not_the_identity_on_the_window() {
        let p = Pairing::default();
        let kk = tensor(k(), k());
        assert_eq!(compare_exact(&s::xi_t(k(), k()), &TypedMor::id(kk), 8, &p).unwrap(), 1.0);
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(matches!(verify_rig_diagram("nope", 8, &Pairing::default()), Err(RigError::UnknownDiagram(_))));
        let f = TypedMor::named("phi", k(), k());
        assert!(matches!(index_map(&f, 2, &Pairing::default()), Err(RigError::Unsupported(..))));
    }
}
