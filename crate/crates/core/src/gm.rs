//! Representatives of generalized morphisms A → F𝐊B for finite matrix
//! algebras A = M_n, B = M_b and finite tensor-type F.
//!
//! F𝐊B is modeled as 𝕂 with coefficients in F𝟙 ⊗ B, flattened as
//! (φ, β) ↦ φ·b + β. A representative stores the images of A's matrix units.

use std::collections::{BTreeMap, BTreeSet};

use num::complex::Complex64;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::endo::{BrEndo, EndoMor, TTEndo};
use crate::homotopy::{relabeling_path, HomPath, HomotopyError};
use crate::model::{dim_of, eval_mor, star_hom_defect, CMat, ModelAssign, ModelError, StarElem};
use crate::stable::{coeff_kron, Pairing, StableError, StableMat};

pub const STAR_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum GmError {
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("unit images are not a *-homomorphism (defect {0})")]
    NotStarHom(f64),
    #[error("functor {0} has no finite value at 1")]
    NotFinite(String),
    #[error("no inversion available for {0}")]
    NoInversionAvailable(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Stable(#[from] StableError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
}

fn assign_for(f: &BrEndo, dims: &BTreeMap<String, usize>) -> Result<ModelAssign, GmError> {
    let mut a = ModelAssign { gen_dims: dims.clone(), ..Default::default() };
    for t in f.items() {
        match t {
            TTEndo::Mn(n) => {
                a.gen_dims.insert(format!("M{n}"), *n);
            }
            TTEndo::K | TTEndo::CX(_) => return Err(GmError::NotFinite(f.to_string())),
            TTEndo::Id | TTEndo::DA(_) => {}
        }
    }
    Ok(a)
}

/// Dimension of F𝟙 in the model given by `dims`.
pub fn functor_dim(f: &BrEndo, dims: &BTreeMap<String, usize>) -> Result<usize, GmError> {
    Ok(dim_of(&f.ev_obj(), &assign_for(f, dims)?)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenMor {
    pub src_dim: usize,
    pub functor: BrEndo,
    /// Dimensions of the generators appearing in `functor`.
    pub dims: BTreeMap<String, usize>,
    pub tgt_dim: usize,
    f_dim: usize,
    rep: Vec<Vec<StableMat>>,
}

impl GenMor {
    pub fn new(
        src_dim: usize,
        functor: BrEndo,
        dims: BTreeMap<String, usize>,
        tgt_dim: usize,
        rep: Vec<Vec<StableMat>>,
    ) -> Result<Self, GmError> {
        let f_dim = functor_dim(&functor, &dims)?;
        let g = GenMor { src_dim, functor, dims, tgt_dim, f_dim, rep };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), GmError> {
        let n = self.src_dim;
        if self.rep.len() != n || self.rep.iter().any(|r| r.len() != n) {
            return Err(GmError::SignatureMismatch(format!("expected {n}x{n} unit images")));
        }
        let d = self.coeff_dim();
        if let Some(x) = self.rep.iter().flatten().find(|x| x.coeff_dim() != d) {
            return Err(GmError::Stable(StableError::CoefficientMismatch(x.coeff_dim(), d)));
        }
        let defect = star_hom_defect(&self.rep)?;
        if defect > STAR_TOL {
            return Err(GmError::NotStarHom(defect));
        }
        Ok(())
    }

    pub fn f_dim(&self) -> usize {
        self.f_dim
    }

    pub fn coeff_dim(&self) -> usize {
        self.f_dim * self.tgt_dim
    }

    /// φ(ε_ij).
    pub fn image(&self, i: usize, j: usize) -> &StableMat {
        &self.rep[i][j]
    }

    pub fn images(&self) -> &[Vec<StableMat>] {
        &self.rep
    }

    pub fn zero(src_dim: usize, functor: BrEndo, dims: BTreeMap<String, usize>, tgt_dim: usize) -> Result<Self, GmError> {
        let d = functor_dim(&functor, &dims)? * tgt_dim;
        let rep = vec![vec![StableMat::zero(d); src_dim]; src_dim];
        Self::new(src_dim, functor, dims, tgt_dim, rep)
    }

    /// ι₀₀ : M_b → 𝐊M_b, a ↦ ε₀₀ ⊗ a, over the identity functor.
    pub fn corner(b: usize) -> Self {
        let rep = (0..b)
            .map(|i| (0..b).map(|j| StableMat::from_entries(b, [((0, 0), CMat::unit(b, i, j))]).expect("size b")).collect())
            .collect();
        Self::new(b, BrEndo::single(TTEndo::Id), BTreeMap::new(), b, rep).expect("corner embedding is a *-homomorphism")
    }

    /// Spatial representative: each copy sends basis vector i of A to the
    /// triple (stable index, F𝟙 index, B index) given by `copies[r][i]`.
    pub fn spatial(
        src_dim: usize,
        functor: BrEndo,
        dims: BTreeMap<String, usize>,
        tgt_dim: usize,
        copies: &[Vec<(usize, usize, usize)>],
    ) -> Result<Self, GmError> {
        let f_dim = functor_dim(&functor, &dims)?;
        let d = f_dim * tgt_dim;
        let mut rep = vec![vec![StableMat::zero(d); src_dim]; src_dim];
        for copy in copies {
            if copy.len() != src_dim || copy.iter().any(|&(_, f, b)| f >= f_dim || b >= tgt_dim) {
                return Err(GmError::SignatureMismatch("placement out of range".into()));
            }
            for (i, &(ki, fi, bi)) in copy.iter().enumerate() {
                for (j, &(kj, fj, bj)) in copy.iter().enumerate() {
                    let e = StableMat::from_entries(d, [((ki, kj), CMat::unit(d, fi * tgt_dim + bi, fj * tgt_dim + bj))])?;
                    rep[i][j] = rep[i][j].add(&e)?;
                }
            }
        }
        Self::new(src_dim, functor, dims, tgt_dim, rep)
    }

    fn same_signature(&self, o: &Self) -> Result<(), GmError> {
        if self.src_dim != o.src_dim || self.tgt_dim != o.tgt_dim || self.functor != o.functor || self.dims != o.dims {
            return Err(GmError::SignatureMismatch(format!(
                "[M{}, {}K, M{}] vs [M{}, {}K, M{}]",
                self.src_dim, self.functor, self.tgt_dim, o.src_dim, o.functor, o.tgt_dim
            )));
        }
        Ok(())
    }

    /// Stable indices used by the representative.
    pub fn k_support(&self) -> BTreeSet<usize> {
        self.rep.iter().flatten().flat_map(|x| x.entries().flat_map(|((i, j), _)| [*i, *j])).collect()
    }

    pub fn to_json(&self) -> GenMorJson {
        let mut unit_images = Vec::new();
        for (i, row) in self.rep.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let entries = x
                    .entries()
                    .map(|((r, c), m)| SparseEntry {
                        row: *r,
                        col: *c,
                        coeff: m
                            .data
                            .iter()
                            .enumerate()
                            .filter(|(_, z)| z.norm() != 0.0)
                            .map(|(k, z)| (k / m.m, k % m.m, z.re, z.im))
                            .collect(),
                    })
                    .collect();
                unit_images.push(UnitImage { i, j, entries });
            }
        }
        GenMorJson {
            src_alg: format!("M{}", self.src_dim),
            functor_tag: self.functor.to_string(),
            tgt_alg: format!("M{}", self.tgt_dim),
            unit_images,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GenMorJson {
    pub src_alg: String,
    pub functor_tag: String,
    pub tgt_alg: String,
    pub unit_images: Vec<UnitImage>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UnitImage {
    pub i: usize,
    pub j: usize,
    pub entries: Vec<SparseEntry>,
}

/// Stable position and coefficient entries (row, col, re, im).
#[derive(Debug, Clone, Serialize)]
pub struct SparseEntry {
    pub row: usize,
    pub col: usize,
    pub coeff: Vec<(usize, usize, f64, f64)>,
}

/// φ ⊕̇ ψ: φ on the first and ψ on the second block of μ̂.
pub fn add_gm(phi: &GenMor, psi: &GenMor, p: &Pairing) -> Result<GenMor, GmError> {
    phi.same_signature(psi)?;
    let mut rep = Vec::new();
    for i in 0..phi.src_dim {
        let mut row = Vec::new();
        for j in 0..phi.src_dim {
            let a = phi.rep[i][j].relabel(|n| p.p2(0, *n));
            let b = psi.rep[i][j].relabel(|n| p.p2(1, *n));
            row.push(a.add(&b)?);
        }
        rep.push(row);
    }
    GenMor::new(phi.src_dim, phi.functor.clone(), phi.dims.clone(), phi.tgt_dim, rep)
}

/// ψ • φ over (A, F·G, C): apply ψ inside the coefficient of φ, move the
/// inner 𝕂 past G and merge the two 𝕂 factors with θ̂.
pub fn compose_gm(psi: &GenMor, phi: &GenMor, p: &Pairing) -> Result<GenMor, GmError> {
    if phi.tgt_dim != psi.src_dim {
        return Err(GmError::SignatureMismatch(format!("M{} does not match M{}", phi.tgt_dim, psi.src_dim)));
    }
    let (b, f) = (phi.tgt_dim, phi.f_dim);
    let d = f * psi.coeff_dim();
    let mut dims = phi.dims.clone();
    for (k, v) in &psi.dims {
        if let Some(old) = dims.insert(k.clone(), *v) {
            if old != *v {
                return Err(GmError::SignatureMismatch(format!("generator {k} has two dimensions")));
            }
        }
    }
    let mut rep = Vec::new();
    for i in 0..phi.src_dim {
        let mut row = Vec::new();
        for j in 0..phi.src_dim {
            let mut out = StableMat::zero(d);
            for ((n, m), c) in phi.rep[i][j].entries() {
                for r in 0..f * b {
                    for s in 0..f * b {
                        let z = c.at(r, s);
                        if z.norm() == 0.0 {
                            continue;
                        }
                        let (f1, b1, f2, b2) = (r / b, r % b, s / b, s % b);
                        let fe = CMat::unit(f, f1, f2);
                        let mut piece = StableMat::zero(d);
                        for ((n2, m2), g) in psi.rep[b1][b2].entries() {
                            let e = StableMat::from_entries(d, [((p.pnn(*n, *n2), p.pnn(*m, *m2)), coeff_kron(&fe, g))])?;
                            piece = piece.add(&e)?;
                        }
                        out = out.add(&piece.scale(z))?;
                    }
                }
            }
            row.push(out);
        }
        rep.push(row);
    }
    GenMor::new(phi.src_dim, phi.functor.compose(&psi.functor), dims, psi.tgt_dim, rep)
}

/// ⟨α⟩φ: post-compose with α𝐊 at B, evaluated in the model of `φ.dims`.
pub fn pushforward(alpha: &EndoMor, phi: &GenMor) -> Result<GenMor, GmError> {
    if alpha.src != phi.functor {
        return Err(GmError::SignatureMismatch(format!("{} is not {}", alpha.src, phi.functor)));
    }
    let a = assign_for(&alpha.src, &phi.dims)?;
    let mut a2 = assign_for(&alpha.tgt, &phi.dims)?;
    a2.gen_dims.extend(a.gen_dims);
    let w = eval_mor(&alpha.body, &a2)?.as_float();
    let (fr, fc) = (w.rows, w.cols);
    let wd = w.to_dense();
    let b = phi.tgt_dim;
    let mut big = CMat::zeros(fr * b, fc * b);
    for r in 0..fr {
        for c in 0..fc {
            for k in 0..b {
                big.data[(r * b + k) * (fc * b) + c * b + k] = wd[r * fc + c];
            }
        }
    }
    let big_t = big.adjoint();
    let rep = phi
        .rep
        .iter()
        .map(|row| row.iter().map(|x| x.map_coeff(fr * b, |c| big.mul(c).mul(&big_t))).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    GenMor::new(phi.src_dim, alpha.tgt.clone(), phi.dims.clone(), b, rep)
}

/// Relabeling homotopy from `a` to `b` along the stable-index map `sigma`.
pub fn relabeling_witness(
    a: &GenMor,
    b: &GenMor,
    sigma: impl Fn(usize) -> usize,
    steps: usize,
) -> Result<HomPath<usize>, GmError> {
    if a.src_dim != b.src_dim || a.tgt_dim != b.tgt_dim || a.coeff_dim() != b.coeff_dim() {
        return Err(GmError::SignatureMismatch("witness legs live in different algebras".into()));
    }
    let pairs: Vec<(usize, usize)> = a.k_support().into_iter().map(|k| (k, sigma(k))).collect();
    let ga: Vec<StableMat> = a.rep.iter().flatten().cloned().collect();
    let gb: Vec<StableMat> = b.rep.iter().flatten().cloned().collect();
    Ok(relabeling_path(&pairs, &ga, &gb, &a.rep, steps)?)
}

/// φ ⊕̇ 0 ≃ φ.
pub fn neutral_witness(phi: &GenMor, p: &Pairing, steps: usize) -> Result<HomPath<usize>, GmError> {
    let z = GenMor::zero(phi.src_dim, phi.functor.clone(), phi.dims.clone(), phi.tgt_dim)?;
    let lhs = add_gm(phi, &z, p)?;
    relabeling_witness(&lhs, phi, |k| p.unp2(k).1, steps)
}

/// φ ⊕̇ ψ ≃ ψ ⊕̇ φ.
pub fn commutativity_witness(phi: &GenMor, psi: &GenMor, p: &Pairing, steps: usize) -> Result<HomPath<usize>, GmError> {
    let (l, r) = (add_gm(phi, psi, p)?, add_gm(psi, phi, p)?);
    relabeling_witness(
        &l,
        &r,
        |k| {
            let (i, n) = p.unp2(k);
            p.p2(1 - i, n)
        },
        steps,
    )
}

/// (φ ⊕̇ ψ) ⊕̇ χ ≃ φ ⊕̇ (ψ ⊕̇ χ).
pub fn associativity_witness(
    phi: &GenMor,
    psi: &GenMor,
    chi: &GenMor,
    p: &Pairing,
    steps: usize,
) -> Result<HomPath<usize>, GmError> {
    let l = add_gm(&add_gm(phi, psi, p)?, chi, p)?;
    let r = add_gm(phi, &add_gm(psi, chi, p)?, p)?;
    relabeling_witness(
        &l,
        &r,
        |k| match p.unp2(k) {
            (0, n) => match p.unp2(n) {
                (0, m) => p.p2(0, m),
                (_, m) => p.p2(1, p.p2(0, m)),
            },
            (_, n) => p.p2(1, p.p2(1, n)),
        },
        steps,
    )
}

/// ι₀₀ • φ ≃ φ and ψ • ι₀₀ ≃ ψ.
pub fn corner_neutral_witnesses(
    phi: &GenMor,
    p: &Pairing,
    steps: usize,
) -> Result<(HomPath<usize>, HomPath<usize>), GmError> {
    let after = compose_gm(&GenMor::corner(phi.tgt_dim), phi, p)?;
    let before = compose_gm(phi, &GenMor::corner(phi.src_dim), p)?;
    Ok((
        relabeling_witness(&after, phi, |k| p.unpnn(k).0, steps)?,
        relabeling_witness(&before, phi, |k| p.unpnn(k).1, steps)?,
    ))
}

/// A small random spatial representative.
pub fn random_gm<R: Rng>(
    rng: &mut R,
    src_dim: usize,
    functor: &BrEndo,
    dims: &BTreeMap<String, usize>,
    tgt_dim: usize,
    window: usize,
) -> Result<GenMor, GmError> {
    let f = functor_dim(functor, dims)?;
    let copies_n = rng.gen_range(0..=2);
    let mut used = BTreeSet::new();
    let mut copies = Vec::new();
    for _ in 0..copies_n {
        let mut copy = Vec::new();
        for _ in 0..src_dim {
            let t = loop {
                let t = (rng.gen_range(0..window), rng.gen_range(0..f), rng.gen_range(0..tgt_dim));
                if used.insert(t) {
                    break t;
                }
            };
            copy.push(t);
        }
        copies.push(copy);
    }
    GenMor::spatial(src_dim, functor.clone(), dims.clone(), tgt_dim, &copies)
}

pub const DEFAULT_GRID: usize = 96;

/// A 𝐊B-valued function on [0, 1] vanishing at both ends, sampled at k/M.
#[derive(Debug, Clone, PartialEq)]
pub struct SuspElem {
    samples: Vec<StableMat>,
}

impl SuspElem {
    pub fn new(samples: Vec<StableMat>) -> Result<Self, GmError> {
        if samples.len() < 3 {
            return Err(GmError::SignatureMismatch("a grid needs M >= 2".into()));
        }
        if !samples[0].is_zero() || !samples[samples.len() - 1].is_zero() {
            return Err(GmError::SignatureMismatch("samples must vanish at 0 and 1".into()));
        }
        let d = samples[0].coeff_dim();
        if samples.iter().any(|s| s.coeff_dim() != d) {
            return Err(GmError::SignatureMismatch("samples in different algebras".into()));
        }
        Ok(SuspElem { samples })
    }

    /// Samples `f` at k/M; the end values are forced to 0.
    pub fn from_fn(m: usize, d: usize, f: impl Fn(f64) -> StableMat) -> Result<Self, GmError> {
        let samples =
            (0..=m).map(|k| if k == 0 || k == m { StableMat::zero(d) } else { f(k as f64 / m as f64) }).collect();
        Self::new(samples)
    }

    pub fn grid(&self) -> usize {
        self.samples.len() - 1
    }

    pub fn coeff_dim(&self) -> usize {
        self.samples[0].coeff_dim()
    }

    pub fn samples(&self) -> &[StableMat] {
        &self.samples
    }

    pub fn zero_like(&self) -> Self {
        SuspElem { samples: vec![StableMat::zero(self.coeff_dim()); self.samples.len()] }
    }

    /// inv_S: t ↦ f(1 − t).
    pub fn inv(&self) -> Self {
        SuspElem { samples: self.samples.iter().rev().cloned().collect() }
    }

    /// Value at x ∈ [0, 1] and whether x hit a grid point.
    pub fn eval(&self, x: f64) -> (StableMat, bool) {
        let m = self.grid() as f64;
        let pos = (x.clamp(0.0, 1.0)) * m;
        let r = pos.round();
        if (pos - r).abs() < 1e-9 {
            return (self.samples[r as usize].clone(), true);
        }
        let lo = pos.floor() as usize;
        let w = pos - lo as f64;
        let v = self.samples[lo]
            .scale(Complex64::new(1.0 - w, 0.0))
            .add(&self.samples[lo + 1].scale(Complex64::new(w, 0.0)))
            .expect("same algebra");
        (v, false)
    }

    fn tabulate(&self, g: impl Fn(f64) -> Option<f64>, interpolated: &mut usize) -> SuspElem {
        let m = self.grid();
        let samples = (0..=m)
            .map(|k| match g(k as f64 / m as f64) {
                Some(x) => {
                    let (v, exact) = self.eval(x);
                    if !exact {
                        *interpolated += 1;
                    }
                    v
                }
                None => StableMat::zero(self.coeff_dim()),
            })
            .collect();
        SuspElem { samples }
    }

    /// f∘r₊ : f compressed onto [0, 1/3], zero after.
    pub fn compress_plus(&self) -> SuspElem {
        self.tabulate(|t| (t <= 1.0 / 3.0 + 1e-12).then_some(3.0 * t), &mut 0)
    }

    /// f∘r₋ : f compressed onto [2/3, 1], zero before.
    pub fn compress_minus(&self) -> SuspElem {
        self.tabulate(|t| (t >= 2.0 / 3.0 - 1e-12).then(|| 3.0 * t - 2.0), &mut 0)
    }

    /// Concatenation f * g.
    pub fn concat(&self, g: &SuspElem) -> SuspElem {
        let m = self.grid();
        let samples = (0..=m)
            .map(|k| {
                let t = k as f64 / m as f64;
                if t <= 0.5 {
                    self.eval(2.0 * t).0
                } else {
                    g.eval(2.0 * t - 1.0).0
                }
            })
            .collect();
        SuspElem { samples }
    }

    pub fn add(&self, o: &SuspElem) -> SuspElem {
        let samples = self.samples.iter().zip(&o.samples).map(|(a, b)| a.add(b).expect("same algebra")).collect();
        SuspElem { samples }
    }

    fn scale_by(&self, w: impl Fn(f64) -> f64) -> SuspElem {
        let m = self.grid();
        let samples = self
            .samples
            .iter()
            .enumerate()
            .map(|(k, x)| x.scale(Complex64::new(w(k as f64 / m as f64), 0.0)))
            .collect();
        SuspElem { samples }
    }
}

impl StarElem for SuspElem {
    fn same_space(&self, o: &Self) -> bool {
        self.samples.len() == o.samples.len() && self.coeff_dim() == o.coeff_dim()
    }

    fn mul(&self, o: &Self) -> Self {
        SuspElem { samples: self.samples.iter().zip(&o.samples).map(|(a, b)| a.mul(b)).collect() }
    }

    fn adjoint(&self) -> Self {
        SuspElem { samples: self.samples.iter().map(|a| a.adjoint()).collect() }
    }

    fn max_diff(&self, o: &Self) -> f64 {
        self.samples.iter().zip(&o.samples).map(|(a, b)| a.max_diff(b)).fold(0.0, f64::max)
    }

    fn max_abs(&self) -> f64 {
        self.samples.iter().map(|a| a.max_abs()).fold(0.0, f64::max)
    }
}

/// A 2×2 matrix over the suspension.
pub type M2Susp = [[SuspElem; 2]; 2];

fn m2_dist(a: &M2Susp, b: &M2Susp) -> f64 {
    (0..4).map(|k| a[k / 2][k % 2].max_diff(&b[k / 2][k % 2])).fold(0.0, f64::max)
}

fn diag(a: SuspElem, b: SuspElem) -> M2Susp {
    let z = a.zero_like();
    [[a, z.clone()], [z, b]]
}

/// The three-stage null-homotopy of f ↦ diag(f, f̄).
#[derive(Debug, Clone)]
pub struct NullChain {
    /// Snapshots of each stage at s = k/(steps − 1).
    pub stages: [Vec<M2Susp>; 3],
    /// Distance of the first snapshot from diag(f, f̄).
    pub start_error: f64,
    /// Mismatch between the end of stage i and the independently built start of stage i + 1.
    pub stage_gaps: [f64; 2],
    pub terminal: f64,
    /// Largest jump between consecutive snapshots in any stage.
    pub continuity_bound: f64,
    /// Samples at stage boundaries that needed interpolation.
    pub boundary_interpolations: usize,
    /// Samples anywhere in the chain that needed interpolation.
    pub interpolations: usize,
}

fn rot(q: f64) -> (f64, f64) {
    if q <= 0.0 {
        (1.0, 0.0)
    } else if q >= 1.0 {
        (0.0, 1.0)
    } else {
        let th = q * std::f64::consts::FRAC_PI_2;
        (th.cos(), th.sin())
    }
}

fn tri3(t: f64) -> f64 {
    (3.0 * t).min(1.0).min(3.0 - 3.0 * t)
}

fn tri6(t: f64) -> f64 {
    (6.0 * t).min(1.0).min(6.0 - 6.0 * t)
}

/// Stage 1: squeeze f onto [0, 1/3] and f̄ onto [2/3, 1].
fn stage_compress(f: &SuspElem, fbar: &SuspElem, s: f64, n: &mut usize) -> M2Susp {
    let a = 1.0 - 2.0 * s / 3.0;
    let top = f.tabulate(|t| (t <= a + 1e-12).then_some(t / a), n);
    let bot = fbar.tabulate(|t| (t >= 1.0 - a - 1e-12).then(|| (t - (1.0 - a)) / a), n);
    diag(top, bot)
}

/// Stage 2: rotate the lower block into the upper one where χ = 1, then
/// reparametrize the sum into the concatenation.
fn stage_rotate(f: &SuspElem, u: &SuspElem, v: &SuspElem, s: f64, n: &mut usize) -> M2Susp {
    if s <= 0.5 {
        let q = 2.0 * s;
        let chi = |t: f64| (3.0 * t - 1.0).clamp(0.0, 1.0);
        let c2 = |t: f64| rot(q * chi(t)).0.powi(2);
        let s2 = |t: f64| rot(q * chi(t)).1.powi(2);
        let cs = |t: f64| {
            let (c, s) = rot(q * chi(t));
            c * s
        };
        let e00 = u.scale_by(c2).add(&v.scale_by(s2));
        let e11 = u.scale_by(s2).add(&v.scale_by(c2));
        let off = u.scale_by(cs).add(&v.scale_by(|t| -cs(t)));
        [[e00, off.clone()], [off, e11]]
    } else {
        let r = 2.0 * s - 1.0;
        let top = f.tabulate(|t| Some((1.0 - r) * tri3(t) + r * tri6(t)), n);
        let z = top.zero_like();
        [[top, z.clone()], [z.clone(), z]]
    }
}

/// Stage 3: shrink the loop f * f̄ to the constant 0.
fn stage_shrink(f: &SuspElem, s: f64, n: &mut usize) -> M2Susp {
    let top = f.tabulate(|t| Some((1.0 - s) * tri6(t)), n);
    let z = top.zero_like();
    [[top, z.clone()], [z.clone(), z]]
}

pub fn null_homotopy(f: &SuspElem, steps: usize) -> Result<NullChain, GmError> {
    if steps < 2 {
        return Err(GmError::Homotopy(HomotopyError::TooFewSteps(steps)));
    }
    let fbar = f.inv();
    let u = f.compress_plus();
    let v = fbar.compress_minus();
    let mut interpolations = 0;
    let ss: Vec<f64> = (0..steps).map(|k| k as f64 / (steps - 1) as f64).collect();
    let s1: Vec<M2Susp> = ss.iter().map(|&s| stage_compress(f, &fbar, s, &mut interpolations)).collect();
    let s2: Vec<M2Susp> = ss.iter().map(|&s| stage_rotate(f, &u, &v, s, &mut interpolations)).collect();
    let s3: Vec<M2Susp> = ss.iter().map(|&s| stage_shrink(f, s, &mut interpolations)).collect();

    let mut boundary = 0;
    stage_compress(f, &fbar, 0.0, &mut boundary);
    stage_compress(f, &fbar, 1.0, &mut boundary);
    stage_rotate(f, &u, &v, 1.0, &mut boundary);
    stage_shrink(f, 1.0, &mut boundary);

    let start_error = m2_dist(&s1[0], &diag(f.clone(), fbar.clone()));
    let gap1 = m2_dist(&s1[steps - 1], &diag(u.clone(), v.clone()));
    let concat = u.concat(&v);
    let gap2 = m2_dist(&s2[steps - 1], &diag(concat, f.zero_like())).max(m2_dist(&s3[0], &s2[steps - 1]));
    let terminal = (0..4).map(|k| s3[steps - 1][k / 2][k % 2].max_abs()).fold(0.0, f64::max);
    let continuity_bound = [&s1, &s2, &s3]
        .iter()
        .flat_map(|st| st.windows(2).map(|w| m2_dist(&w[0], &w[1])))
        .fold(0.0, f64::max);
    Ok(NullChain {
        stages: [s1, s2, s3],
        start_error,
        stage_gaps: [gap1, gap2],
        terminal,
        continuity_bound,
        boundary_interpolations: boundary,
        interpolations,
    })
}

/// −f = inv_S(f) for an element over `functor`; only the suspension
/// ℭ_(0,1) has a shipped inversion.
pub fn negate_gm(functor: &BrEndo, f: &SuspElem) -> Result<SuspElem, GmError> {
    match functor.items() {
        [TTEndo::CX(x)] if x == SUSPENSION_SPACE => Ok(f.inv()),
        _ => Err(GmError::NoInversionAvailable(functor.to_string())),
    }
}

pub const SUSPENSION_SPACE: &str = "(0,1)";

pub fn suspension() -> BrEndo {
    BrEndo::single(TTEndo::CX(SUSPENSION_SPACE.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corner_plus_corner() {
        let p = Pairing::default();
        let c = GenMor::corner(1);
        let s = add_gm(&c, &c, &p).unwrap();
        let want = StableMat::unit(1, 0, 0).add(&StableMat::unit(1, 1, 1)).unwrap();
        assert_eq!(s.image(0, 0), &want);
    }

    #[test]
    fn corner_after_corner() {
        let p = Pairing::default();
        let c = GenMor::corner(1);
        let s = compose_gm(&c, &c, &p).unwrap();
        let k = p.pnn(0, 0);
        assert_eq!(s.image(0, 0), &StableMat::unit(1, k, k));
    }

    #[test]
    fn bad_images_are_rejected() {
        let rep = vec![vec![StableMat::unit(1, 0, 0).scale(Complex64::new(2.0, 0.0))]];
        assert!(matches!(
            GenMor::new(1, BrEndo::single(TTEndo::Id), BTreeMap::new(), 1, rep),
            Err(GmError::NotStarHom(_))
        ));
        assert!(matches!(functor_dim(&BrEndo::single(TTEndo::K), &BTreeMap::new()), Err(GmError::NotFinite(_))));
    }
}
