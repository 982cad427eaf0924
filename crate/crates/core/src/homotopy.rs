//! Sampled homotopies between spatial *-homomorphisms.
//!
//! Two legs that differ by a relabeling of basis indices are joined by
//! t ↦ Ad(P^t) ∘ leg_a, where P is a permutation extending the relabeling
//! and P^t is its principal fractional power. P^t acts on each cycle of P
//! separately and is the identity off the finite set the legs touch.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::f64::consts::PI;

use num::complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::model::{star_hom_defect, StarElem};
use crate::stable::IxMat;

#[derive(Debug, Error, PartialEq)]
pub enum HomotopyError {
    #[error("legs are not related by an index relabeling: {0}")]
    LegsNotRotationRelated(String),
    #[error("a path needs at least 2 steps, got {0}")]
    TooFewSteps(usize),
}

/// A permutation of a finite index set, stored as cycles.
#[derive(Debug, Clone)]
pub struct Relabeling<I: Ord> {
    cycles: Vec<Vec<I>>,
    pos: BTreeMap<I, (usize, usize)>,
}

impl<I: Ord + Clone> Relabeling<I> {
    /// Extends the partial injection `a ↦ b` to a permutation of its domain
    /// and range by closing every open chain into a cycle.
    pub fn from_pairs(pairs: &[(I, I)]) -> Result<Self, HomotopyError> {
        let mut fwd: BTreeMap<I, I> = BTreeMap::new();
        let mut back: BTreeMap<I, I> = BTreeMap::new();
        for (a, b) in pairs {
            if let Some(old) = fwd.insert(a.clone(), b.clone()) {
                if old != *b {
                    return Err(HomotopyError::LegsNotRotationRelated("one index sent to two places".into()));
                }
            }
            if let Some(old) = back.insert(b.clone(), a.clone()) {
                if old != *a {
                    return Err(HomotopyError::LegsNotRotationRelated("relabeling is not injective".into()));
                }
            }
        }
        let starts: Vec<I> = back.keys().chain(fwd.keys()).filter(|x| !back.contains_key(*x)).cloned().collect();
        let starts: BTreeSet<I> = starts.into_iter().collect();
        for s in starts {
            let mut x = s.clone();
            while let Some(y) = fwd.get(&x) {
                x = y.clone();
            }
            fwd.insert(x, s);
        }
        let mut pos = BTreeMap::new();
        let mut cycles = Vec::new();
        for start in fwd.keys() {
            if pos.contains_key(start) {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start.clone();
            while !pos.contains_key(&x) {
                pos.insert(x.clone(), (cycles.len(), cyc.len()));
                cyc.push(x.clone());
                x = fwd[&x].clone();
            }
            cycles.push(cyc);
        }
        Ok(Relabeling { cycles, pos })
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    pub fn image(&self, x: &I) -> I {
        match self.pos.get(x) {
            Some(&(c, k)) => {
                let cyc = &self.cycles[c];
                cyc[(k + 1) % cyc.len()].clone()
            }
            None => x.clone(),
        }
    }

    /// Exact action of P by conjugation.
    pub fn apply(&self, x: &IxMat<I>) -> IxMat<I> {
        x.relabel(|i| self.image(i))
    }

    fn column(&self, a: &I, profiles: &Profiles) -> Vec<(I, Complex64)> {
        match self.pos.get(a) {
            None => vec![(a.clone(), Complex64::new(1.0, 0.0))],
            Some(&(c, k)) => {
                let cyc = &self.cycles[c];
                let l = cyc.len();
                let f = &profiles[&l];
                (0..l).map(|j| (cyc[j].clone(), f[(j + l - k) % l])).collect()
            }
        }
    }

    fn profiles(&self, t: f64) -> Profiles {
        let mut out = HashMap::new();
        for l in self.cycle_lengths() {
            out.entry(l).or_insert_with(|| cycle_profile(l, t));
        }
        out
    }

    /// Ad(P^t)(x).
    pub fn conjugate(&self, t: f64, x: &IxMat<I>) -> IxMat<I> {
        self.conjugate_with(&self.profiles(t), x)
    }

    fn conjugate_with(&self, profiles: &Profiles, x: &IxMat<I>) -> IxMat<I> {
        let mut out = IxMat::zero(x.coeff_dim());
        for ((a, b), c) in x.entries() {
            let ua = self.column(a, profiles);
            let ub = self.column(b, profiles);
            for (p, u) in &ua {
                for (q, v) in &ub {
                    let s = u * v.conj();
                    if s.norm() == 0.0 {
                        continue;
                    }
                    out.add_scaled((p.clone(), q.clone()), c, s);
                }
            }
        }
        out
    }
}

type Profiles = HashMap<usize, Vec<Complex64>>;

/// Entries of S^t for the cyclic shift S e_k = e_{k+1} on L points:
/// (S^t)_{j,k} = f[(j − k) mod L].
fn cycle_profile(l: usize, t: f64) -> Vec<Complex64> {
    let phases: Vec<f64> = (0..l)
        .map(|m| {
            let th = 2.0 * PI * m as f64 / l as f64;
            if th > PI {
                th - 2.0 * PI
            } else {
                th
            }
        })
        .collect();
    (0..l)
        .map(|d| {
            let mut s = Complex64::new(0.0, 0.0);
            for (m, th) in phases.iter().enumerate() {
                let ang = th * t - 2.0 * PI * (m * d % l) as f64 / l as f64;
                s += Complex64::from_polar(1.0, ang);
            }
            s / l as f64
        })
        .collect()
}

/// Sampled path of *-homomorphisms t ↦ Ad(P^t) ∘ leg_a at t = k/(N−1).
#[derive(Debug, Clone)]
pub struct HomPath<I: Ord> {
    pub step_count: usize,
    pub times: Vec<f64>,
    /// Images of the sampled unit grid at each step.
    pub snapshots: Vec<Vec<Vec<IxMat<I>>>>,
    /// Largest entrywise jump of a generator image between consecutive steps.
    pub continuity_bound: f64,
    /// Distance of the endpoints from leg_a and leg_b on the generators.
    pub endpoint_error: f64,
    pub star_hom_defect: f64,
    pub cycle_lengths: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PathSummary {
    pub steps: usize,
    pub continuity_bound: f64,
    pub endpoint_error: f64,
    pub star_hom_defect: f64,
}

impl<I: Ord + Clone> HomPath<I> {
    pub fn summary(&self) -> PathSummary {
        PathSummary {
            steps: self.step_count,
            continuity_bound: self.continuity_bound,
            endpoint_error: self.endpoint_error,
            star_hom_defect: self.star_hom_defect,
        }
    }

    pub fn validates(&self, endpoint_tol: f64, continuity_tol: f64, star_tol: f64) -> bool {
        self.endpoint_error <= endpoint_tol && self.continuity_bound <= continuity_tol && self.star_hom_defect <= star_tol
    }
}

/// Builds the relabeling homotopy from leg_a to leg_b.
///
/// `gens_a`/`gens_b` are the images of a generating set under the two legs;
/// `grid_a` is leg_a on a sampled square grid of matrix units, used for the
/// per-snapshot *-homomorphism check. `pairs` is the index relabeling that
/// should carry leg_a to leg_b; it is checked exactly before sampling.
pub fn relabeling_path<I: Ord + Clone>(
    pairs: &[(I, I)],
    gens_a: &[IxMat<I>],
    gens_b: &[IxMat<I>],
    grid_a: &[Vec<IxMat<I>>],
    steps: usize,
) -> Result<HomPath<I>, HomotopyError> {
    if steps < 2 {
        return Err(HomotopyError::TooFewSteps(steps));
    }
    if gens_a.len() != gens_b.len() {
        return Err(HomotopyError::LegsNotRotationRelated("generator lists differ in length".into()));
    }
    let p = Relabeling::from_pairs(pairs)?;
    for (a, b) in gens_a.iter().zip(gens_b) {
        if p.apply(a) != *b {
            return Err(HomotopyError::LegsNotRotationRelated("relabeled leg does not match the other leg".into()));
        }
    }
    let times: Vec<f64> = (0..steps).map(|k| k as f64 / (steps - 1) as f64).collect();
    let mut snapshots = Vec::with_capacity(steps);
    let mut prev: Option<Vec<IxMat<I>>> = None;
    let (mut cont, mut endpoint, mut star) = (0.0f64, 0.0f64, 0.0f64);
    for (k, &t) in times.iter().enumerate() {
        let prof = p.profiles(t);
        let imgs: Vec<IxMat<I>> = gens_a.iter().map(|g| p.conjugate_with(&prof, g)).collect();
        if k == 0 {
            endpoint = endpoint.max(max_dist(&imgs, gens_a));
        }
        if k + 1 == steps {
            endpoint = endpoint.max(max_dist(&imgs, gens_b));
        }
        if let Some(pr) = &prev {
            cont = cont.max(max_dist(&imgs, pr));
        }
        prev = Some(imgs);
        let grid: Vec<Vec<IxMat<I>>> =
            grid_a.iter().map(|row| row.iter().map(|x| p.conjugate_with(&prof, x)).collect()).collect();
        star = star.max(star_hom_defect(&grid).map_err(|e| HomotopyError::LegsNotRotationRelated(e.to_string()))?);
        snapshots.push(grid);
    }
    Ok(HomPath {
        step_count: steps,
        times,
        snapshots,
        continuity_bound: cont,
        endpoint_error: endpoint,
        star_hom_defect: star,
        cycle_lengths: p.cycle_lengths(),
    })
}

fn max_dist<I: Ord + Clone>(a: &[IxMat<I>], b: &[IxMat<I>]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.max_diff(y)).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize, j: usize) -> IxMat<usize> {
        IxMat::unit(1, i, j)
    }

    #[test]
    fn profile_endpoints() {
        for l in 1..7 {
            let f0 = cycle_profile(l, 0.0);
            let f1 = cycle_profile(l, 1.0);
            for d in 0..l {
                let want0 = if d == 0 { 1.0 } else { 0.0 };
                let want1 = if d == 1 % l { 1.0 } else { 0.0 };
                assert!((f0[d] - want0).norm() < 1e-12);
                assert!((f1[d] - want1).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn chains_close_into_cycles() {
        let r = Relabeling::from_pairs(&[(0, 2), (2, 4)]).unwrap();
        assert_eq!(r.image(&4), 0);
        assert_eq!(r.cycle_lengths(), vec![3]);
        assert!(Relabeling::from_pairs(&[(0, 1), (2, 1)]).is_err());
    }

    #[test]
    fn swap_path_is_continuous() {
        let gens_a = vec![e(0, 0), e(0, 1), e(1, 0)];
        let gens_b = vec![e(1, 1), e(1, 0), e(0, 1)];
        let grid = vec![vec![e(0, 0), e(0, 1)], vec![e(1, 0), e(1, 1)]];
        let h = relabeling_path(&[(0, 1), (1, 0)], &gens_a, &gens_b, &grid, 100).unwrap();
        assert!(h.endpoint_error < 1e-12);
        assert!(h.continuity_bound < 0.1);
        assert!(h.star_hom_defect < 1e-12);
    }

    #[test]
    fn constant_path() {
        let g = vec![e(0, 3)];
        let h = relabeling_path(&[], &g, &g, &[vec![e(0, 0)]], 2).unwrap();
        assert_eq!(h.continuity_bound, 0.0);
        assert!(matches!(relabeling_path(&[], &g, &[e(1, 3)], &[], 5), Err(HomotopyError::LegsNotRotationRelated(_))));
    }
}
