//! Finitely supported model of the stabilization 𝕂B and the maps ι̂₀₀, d̂,
//! θ̂, θ̂₂ and μ̂.
//!
//! An element is a finite map from index pairs to coefficients in a full
//! matrix algebra M_d. Zero coefficients are never stored, so structural
//! equality is equality up to zero-padding.

use std::collections::BTreeMap;

use num::complex::Complex64;
use num::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{CMat, StarElem};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StableError {
    #[error("coefficient algebras differ: M_{0} vs M_{1}")]
    CoefficientMismatch(usize, usize),
    #[error("coefficient has shape {0}x{1}, expected {2}x{2}")]
    BadCoefficient(usize, usize, usize),
}

/// Bijection {0,1}×ℕ → ℕ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pair2 {
    /// (i, n) ↦ 2n + i
    #[default]
    Interleave,
    /// (i, n) ↦ 2n + 1 − i
    Swapped,
}

/// Bijection ℕ×ℕ → ℕ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairNN {
    #[default]
    Cantor,
    /// Cantor pairing with the arguments exchanged.
    CantorSwapped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Pairing {
    pub pair2: Pair2,
    pub nn: PairNN,
}

fn cantor(m: usize, n: usize) -> usize {
    (m + n) * (m + n + 1) / 2 + n
}

fn uncantor(k: usize) -> (usize, usize) {
    let mut w = (((8.0 * k as f64 + 1.0).sqrt() - 1.0) / 2.0) as usize;
    while w * (w + 1) / 2 > k {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= k {
        w += 1;
    }
    let n = k - w * (w + 1) / 2;
    (w - n, n)
}

impl Pairing {
    pub fn swapped() -> Self {
        Pairing { pair2: Pair2::Swapped, nn: PairNN::CantorSwapped }
    }

    pub fn p2(&self, i: usize, n: usize) -> usize {
        debug_assert!(i < 2);
        match self.pair2 {
            Pair2::Interleave => 2 * n + i,
            Pair2::Swapped => 2 * n + 1 - i,
        }
    }

    pub fn unp2(&self, k: usize) -> (usize, usize) {
        match self.pair2 {
            Pair2::Interleave => (k % 2, k / 2),
            Pair2::Swapped => (1 - k % 2, k / 2),
        }
    }

    pub fn pnn(&self, m: usize, n: usize) -> usize {
        match self.nn {
            PairNN::Cantor => cantor(m, n),
            PairNN::CantorSwapped => cantor(n, m),
        }
    }

    pub fn unpnn(&self, k: usize) -> (usize, usize) {
        let (m, n) = uncantor(k);
        match self.nn {
            PairNN::Cantor => (m, n),
            PairNN::CantorSwapped => (n, m),
        }
    }
}

fn coeff_is_zero(c: &CMat) -> bool {
    c.data.iter().all(|z| z.is_zero())
}

fn coeff_add(a: &mut CMat, b: &CMat) {
    for (x, y) in a.data.iter_mut().zip(&b.data) {
        *x += y;
    }
}

fn coeff_scale(c: &CMat, s: Complex64) -> CMat {
    CMat { n: c.n, m: c.m, data: c.data.iter().map(|z| z * s).collect() }
}

/// Kronecker product of square coefficients.
pub fn coeff_kron(a: &CMat, b: &CMat) -> CMat {
    let (n, m) = (a.n * b.n, a.m * b.m);
    let mut out = CMat::zeros(n, m);
    for i in 0..a.n {
        for j in 0..a.m {
            let x = a.at(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..b.n {
                for l in 0..b.m {
                    out.data[(i * b.n + k) * m + j * b.m + l] = x * b.at(k, l);
                }
            }
        }
    }
    out
}

fn coeff_identity(d: usize) -> CMat {
    let mut c = CMat::zeros(d, d);
    for i in 0..d {
        c.data[i * d + i] = Complex64::new(1.0, 0.0);
    }
    c
}

/// Finitely supported matrix over an index set `I` with coefficients in M_d.
#[derive(Debug, Clone, PartialEq)]
pub struct IxMat<I: Ord> {
    d: usize,
    support: BTreeMap<(I, I), CMat>,
}

pub type StableMat = IxMat<usize>;
/// Element of 𝕄₂ ⊗ 𝕂 (or 𝕂 ⊗ 𝕂): the first index component labels the factor.
pub type PairMat = IxMat<(usize, usize)>;

impl<I: Ord + Clone> IxMat<I> {
    pub fn zero(d: usize) -> Self {
        IxMat { d, support: BTreeMap::new() }
    }

    /// ε_ij ⊗ 1.
    pub fn unit(d: usize, i: I, j: I) -> Self {
        let mut m = Self::zero(d);
        m.support.insert((i, j), coeff_identity(d));
        m
    }

    pub fn from_entries(d: usize, entries: impl IntoIterator<Item = ((I, I), CMat)>) -> Result<Self, StableError> {
        let mut m = Self::zero(d);
        for (k, c) in entries {
            m.add_entry(k, &c)?;
        }
        Ok(m)
    }

    fn add_entry(&mut self, k: (I, I), c: &CMat) -> Result<(), StableError> {
        if c.n != self.d || c.m != self.d {
            return Err(StableError::BadCoefficient(c.n, c.m, self.d));
        }
        match self.support.get_mut(&k) {
            Some(e) => {
                coeff_add(e, c);
                if coeff_is_zero(e) {
                    self.support.remove(&k);
                }
            }
            None if !coeff_is_zero(c) => {
                self.support.insert(k, c.clone());
            }
            None => {}
        }
        Ok(())
    }

    pub(crate) fn add_scaled(&mut self, k: (I, I), c: &CMat, s: Complex64) {
        self.add_entry(k, &coeff_scale(c, s)).expect("same coefficient size");
    }

    pub fn coeff_dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: &I, j: &I) -> Option<&CMat> {
        self.support.get(&(i.clone(), j.clone()))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(I, I), &CMat)> {
        self.support.iter()
    }

    pub fn nnz(&self) -> usize {
        self.support.len()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn add(&self, o: &Self) -> Result<Self, StableError> {
        if self.d != o.d {
            return Err(StableError::CoefficientMismatch(self.d, o.d));
        }
        let mut out = self.clone();
        for (k, c) in &o.support {
            out.add_entry(k.clone(), c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self::zero(self.d);
        for (k, c) in &self.support {
            out.add_entry(k.clone(), &coeff_scale(c, s)).expect("same coefficient size");
        }
        out
    }

    /// Moves the entry at (i, j) to (f(i), f(j)); collisions are summed.
    pub fn relabel<J: Ord + Clone>(&self, f: impl Fn(&I) -> J) -> IxMat<J> {
        let mut out = IxMat::zero(self.d);
        for ((i, j), c) in &self.support {
            out.add_entry((f(i), f(j)), c).expect("same coefficient size");
        }
        out
    }

    /// Applies `f` to every coefficient; `f` must land in M_d'.
    pub fn map_coeff(&self, d: usize, f: impl Fn(&CMat) -> CMat) -> Result<Self, StableError> {
        let mut out = Self::zero(d);
        for (k, c) in &self.support {
            out.add_entry(k.clone(), &f(c))?;
        }
        Ok(out)
    }

    /// Elementary tensor x ⊗ y with coefficient in M_{d_x} ⊗ M_{d_y}.
    pub fn tensor<J: Ord + Clone>(&self, o: &IxMat<J>) -> IxMat<(I, J)> {
        let mut out = IxMat::zero(self.d * o.d);
        for ((i, j), a) in &self.support {
            for ((k, l), b) in &o.support {
                out.add_entry(((i.clone(), k.clone()), (j.clone(), l.clone())), &coeff_kron(a, b))
                    .expect("kron has the product size");
            }
        }
        out
    }

    /// Dense block matrix on the window `idx`, in the order given.
    pub fn window(&self, idx: &[I]) -> CMat {
        let (w, d) = (idx.len(), self.d);
        let mut out = CMat::zeros(w * d, w * d);
        for (a, i) in idx.iter().enumerate() {
            for (b, j) in idx.iter().enumerate() {
                if let Some(c) = self.get(i, j) {
                    for r in 0..d {
                        for s in 0..d {
                            out.data[(a * d + r) * (w * d) + b * d + s] = c.at(r, s);
                        }
                    }
                }
            }
        }
        out
    }
}

impl<I: Ord + Clone> StarElem for IxMat<I> {
    fn same_space(&self, o: &Self) -> bool {
        self.d == o.d
    }

    fn mul(&self, o: &Self) -> Self {
        let mut by_row: BTreeMap<&I, Vec<(&I, &CMat)>> = BTreeMap::new();
        for ((k, j), c) in &o.support {
            by_row.entry(k).or_default().push((j, c));
        }
        let mut out = Self::zero(self.d);
        for ((i, k), a) in &self.support {
            if let Some(row) = by_row.get(k) {
                for (j, b) in row {
                    out.add_entry((i.clone(), (*j).clone()), &a.mul(b)).expect("same coefficient size");
                }
            }
        }
        out
    }

    fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.d);
        for ((i, j), c) in &self.support {
            out.support.insert((j.clone(), i.clone()), c.adjoint());
        }
        out
    }

    fn max_diff(&self, o: &Self) -> f64 {
        let mut worst = 0.0f64;
        for (k, c) in &self.support {
            worst = worst.max(match o.support.get(k) {
                Some(e) => c.max_diff(e),
                None => c.max_abs(),
            });
        }
        for (k, e) in &o.support {
            if !self.support.contains_key(k) {
                worst = worst.max(e.max_abs());
            }
        }
        worst
    }

    fn max_abs(&self) -> f64 {
        self.support.values().map(|c| c.max_abs()).fold(0.0, f64::max)
    }
}

/// Corner embedding b ↦ ε₀₀ ⊗ b.
pub fn iota00(b: &CMat) -> Result<StableMat, StableError> {
    StableMat::from_entries(b.n, [((0, 0), b.clone())])
}

/// d̂(k₁, k₂) = ε₁₁ ⊗ k₁ + ε₂₂ ⊗ k₂; the first index component is the block.
pub fn d_map(k1: &StableMat, k2: &StableMat) -> Result<PairMat, StableError> {
    if k1.d != k2.d {
        return Err(StableError::CoefficientMismatch(k1.d, k2.d));
    }
    k1.relabel(|n| (0, *n)).add(&k2.relabel(|n| (1, *n)))
}

pub fn theta2(p: &Pairing, x: &PairMat) -> StableMat {
    x.relabel(|(i, n)| p.p2(*i, *n))
}

pub fn theta_map(p: &Pairing, x: &PairMat) -> StableMat {
    x.relabel(|(m, n)| p.pnn(*m, *n))
}

/// μ̂ = θ̂₂ ∘ d̂.
pub fn mu_map(p: &Pairing, k1: &StableMat, k2: &StableMat) -> Result<StableMat, StableError> {
    Ok(theta2(p, &d_map(k1, k2)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize, j: usize) -> StableMat {
        StableMat::unit(1, i, j)
    }

    #[test]
    fn pairings_invert_on_a_window() {
        for p in [Pairing::default(), Pairing::swapped()] {
            let mut seen = std::collections::BTreeSet::new();
            for m in 0..40 {
                for n in 0..40 {
                    let k = p.pnn(m, n);
                    assert_eq!(p.unpnn(k), (m, n));
                    assert!(seen.insert(k));
                }
            }
            for k in 0..200 {
                let (i, n) = p.unp2(k);
                assert_eq!(p.p2(i, n), k);
            }
        }
        assert_eq!(Pairing::default().pnn(0, 0), 0);
    }

    #[test]
    fn corner_and_blocks() {
        assert_eq!(iota00(&CMat::unit(1, 0, 0)).unwrap(), e(0, 0));
        assert!(iota00(&CMat::zeros(1, 1)).unwrap().is_zero());
        let p = Pairing::default();
        let d = d_map(&e(0, 0), &e(0, 0)).unwrap();
        assert_eq!(d.nnz(), 2);
        assert_eq!(theta2(&p, &d_map(&e(0, 0), &StableMat::zero(1)).unwrap()), e(0, 0));
        assert_eq!(theta2(&p, &d_map(&StableMat::zero(1), &e(0, 0)).unwrap()), e(1, 1));
        assert_eq!(mu_map(&p, &e(0, 0), &e(0, 0)).unwrap(), e(0, 0).add(&e(1, 1)).unwrap());
        assert_eq!(mu_map(&p, &e(3, 1), &StableMat::zero(1)).unwrap(), e(6, 2));
        assert!(matches!(d_map(&e(0, 0), &StableMat::unit(2, 0, 0)), Err(StableError::CoefficientMismatch(1, 2))));
    }

    #[test]
    fn zero_entries_do_not_count() {
        let z = StableMat::from_entries(1, [((5, 5), CMat::zeros(1, 1))]).unwrap();
        assert_eq!(z, StableMat::zero(1));
        let x = e(1, 2).add(&e(1, 2).scale(Complex64::new(-1.0, 0.0))).unwrap();
        assert!(x.is_zero());
    }
}
