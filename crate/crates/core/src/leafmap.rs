//! Normal-form semantics of structural morphisms.
//!
//! A structural morphism X → Y is recorded by, for every monomial of the
//! normal form of Y, the source monomial it comes from and where each of its
//! leaves sits inside that source monomial.

use crate::mor::{Dir, Kind, MorError, MorTerm, TypedMor};
use crate::obj::{ObjTerm, Poly};

#[derive(Debug, Clone)]
pub struct LeafMap {
    pub src_poly: Poly,
    pub tgt_poly: Poly,
    /// target monomial → source monomial
    pub mono_map: Vec<usize>,
    /// `leaf_pos[j][k]` is the position in source monomial `mono_map[j]` of the
    /// k-th leaf of target monomial j.
    pub leaf_pos: Vec<Vec<usize>>,
}

impl PartialEq for LeafMap {
    fn eq(&self, other: &Self) -> bool {
        self.mono_map == other.mono_map
            && self.leaf_pos == other.leaf_pos
            && self.src_poly.shape() == other.src_poly.shape()
            && self.tgt_poly.shape() == other.tgt_poly.shape()
    }
}

impl LeafMap {
    pub fn identity(p: Poly) -> Self {
        let mono_map = (0..p.monomials.len()).collect();
        let leaf_pos = p.monomials.iter().map(|m| (0..m.len()).collect()).collect();
        LeafMap { src_poly: p.clone(), tgt_poly: p, mono_map, leaf_pos }
    }

    fn from_mono_map(src: Poly, tgt: Poly, mono_map: Vec<usize>) -> Self {
        let leaf_pos = tgt.monomials.iter().map(|m| (0..m.len()).collect()).collect();
        LeafMap { src_poly: src, tgt_poly: tgt, mono_map, leaf_pos }
    }

    /// Pairs (target occurrence, source occurrence) for every surviving target leaf.
    pub fn leaf_perm(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (j, m) in self.tgt_poly.monomials.iter().enumerate() {
            let sm = &self.src_poly.monomials[self.mono_map[j]];
            for (k, leaf) in m.iter().enumerate() {
                out.push((leaf.occ, sm[self.leaf_pos[j][k]].occ));
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.mono_map.iter().enumerate().all(|(j, &i)| i == j)
            && self.leaf_pos.iter().all(|p| p.iter().enumerate().all(|(k, &q)| k == q))
            && self.src_poly.monomials.len() == self.tgt_poly.monomials.len()
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &LeafMap) -> LeafMap {
        let mono_map = self.mono_map.iter().map(|&i| f.mono_map[i]).collect();
        let leaf_pos = self
            .leaf_pos
            .iter()
            .zip(&self.mono_map)
            .map(|(pos, &i)| pos.iter().map(|&p| f.leaf_pos[i][p]).collect())
            .collect();
        LeafMap { src_poly: f.src_poly.clone(), tgt_poly: self.tgt_poly.clone(), mono_map, leaf_pos }
    }

    pub fn tensor(&self, g: &LeafMap) -> LeafMap {
        let ns = g.src_poly.monomials.len();
        let mut mono_map = Vec::new();
        let mut leaf_pos = Vec::new();
        for (j, fp) in self.leaf_pos.iter().enumerate() {
            let fi = self.mono_map[j];
            let off = self.src_poly.monomials[fi].len();
            for (jj, gp) in g.leaf_pos.iter().enumerate() {
                mono_map.push(fi * ns + g.mono_map[jj]);
                let mut pos = fp.clone();
                pos.extend(gp.iter().map(|p| p + off));
                leaf_pos.push(pos);
            }
        }
        LeafMap {
            src_poly: self.src_poly.times(&g.src_poly),
            tgt_poly: self.tgt_poly.times(&g.tgt_poly),
            mono_map,
            leaf_pos,
        }
    }

    pub fn oplus(&self, g: &LeafMap) -> LeafMap {
        let off = self.src_poly.monomials.len();
        let mut mono_map = self.mono_map.clone();
        mono_map.extend(g.mono_map.iter().map(|i| i + off));
        let mut leaf_pos = self.leaf_pos.clone();
        leaf_pos.extend(g.leaf_pos.iter().cloned());
        let mut src = self.src_poly.clone();
        src.monomials.extend(g.src_poly.monomials.iter().cloned());
        let mut tgt = self.tgt_poly.clone();
        tgt.monomials.extend(g.tgt_poly.monomials.iter().cloned());
        LeafMap { src_poly: src, tgt_poly: tgt, mono_map, leaf_pos }
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<LeafMap> {
        let n = self.src_poly.monomials.len();
        if self.mono_map.len() != n {
            return None;
        }
        let mut mono_map = vec![usize::MAX; n];
        let mut leaf_pos = vec![Vec::new(); n];
        for (j, &i) in self.mono_map.iter().enumerate() {
            if mono_map[i] != usize::MAX {
                return None;
            }
            mono_map[i] = j;
            let mut inv = vec![0; self.leaf_pos[j].len()];
            for (k, &p) in self.leaf_pos[j].iter().enumerate() {
                inv[p] = k;
            }
            leaf_pos[i] = inv;
        }
        Some(LeafMap { src_poly: self.tgt_poly.clone(), tgt_poly: self.src_poly.clone(), mono_map, leaf_pos })
    }
}

fn structural_forward(kind: Kind, params: &[ObjTerm], src: Poly, tgt: Poly) -> LeafMap {
    let n = |i: usize| params[i].normalize().monomials.len();
    match kind {
        Kind::AlphaT | Kind::LambdaT | Kind::RhoT | Kind::AlphaP | Kind::LambdaP | Kind::RhoP | Kind::DeltaR => {
            LeafMap::from_mono_map(src, tgt, vec![]).with_identity_monos()
        }
        Kind::LambdaZ | Kind::RhoZ | Kind::Bang => LeafMap::from_mono_map(src, tgt, vec![]),
        Kind::Diag => {
            let nx = n(0);
            LeafMap::from_mono_map(src, tgt, (0..2 * nx).map(|j| j % nx).collect())
        }
        Kind::XiP => {
            let (nx, ny) = (n(0), n(1));
            LeafMap::from_mono_map(src, tgt, (0..nx + ny).map(|j| if j < ny { nx + j } else { j - ny }).collect())
        }
        Kind::DeltaL => {
            let (na, nb, nc) = (n(0), n(1), n(2));
            let mono_map = (0..na * (nb + nc))
                .map(|j| {
                    if j < na * nb {
                        (j / nb) * (nb + nc) + j % nb
                    } else {
                        let j = j - na * nb;
                        (j / nc) * (nb + nc) + nb + j % nc
                    }
                })
                .collect();
            LeafMap::from_mono_map(src, tgt, mono_map)
        }
        Kind::XiT => {
            let px = params[0].normalize();
            let py = params[1].normalize();
            let (nx, ny) = (px.monomials.len(), py.monomials.len());
            let mut mono_map = Vec::new();
            let mut leaf_pos = Vec::new();
            for iy in 0..ny {
                for ix in 0..nx {
                    mono_map.push(ix * ny + iy);
                    let lx = px.monomials[ix].len();
                    let ly = py.monomials[iy].len();
                    let mut pos: Vec<usize> = (0..ly).map(|k| lx + k).collect();
                    pos.extend(0..lx);
                    leaf_pos.push(pos);
                }
            }
            LeafMap { src_poly: src, tgt_poly: tgt, mono_map, leaf_pos }
        }
    }
}

impl LeafMap {
    fn with_identity_monos(mut self) -> Self {
        let n = self.tgt_poly.monomials.len();
        self.mono_map = (0..n).collect();
        self.leaf_pos = self.tgt_poly.monomials.iter().map(|m| (0..m.len()).collect()).collect();
        self
    }
}

fn leaf_map_term(t: &MorTerm) -> Result<LeafMap, MorError> {
    match t {
        MorTerm::Id(x) => Ok(LeafMap::identity(x.normalize())),
        MorTerm::Struct { kind, params, dir } => {
            let (s, tg) = t.type_of()?;
            match dir {
                Dir::Fwd => Ok(structural_forward(*kind, params, s.normalize(), tg.normalize())),
                Dir::Inv => {
                    let fwd = structural_forward(*kind, params, tg.normalize(), s.normalize());
                    Ok(fwd.inverse().expect("invertible structural kinds have bijective leaf maps"))
                }
            }
        }
        MorTerm::Named { id, .. } => Err(MorError::NamedGeneratorPresent(id.to_string())),
        MorTerm::VComp(g, f) => {
            t.type_of()?;
            Ok(leaf_map_term(g)?.after(&leaf_map_term(f)?))
        }
        MorTerm::TensorM(f, g) => Ok(leaf_map_term(f)?.tensor(&leaf_map_term(g)?)),
        MorTerm::OplusM(f, g) => Ok(leaf_map_term(f)?.oplus(&leaf_map_term(g)?)),
    }
}

pub fn leaf_map(f: &TypedMor) -> Result<LeafMap, MorError> {
    let mut m = leaf_map_term(&f.term)?;
    // Occurrence labels are those of the declared endpoints.
    m.src_poly = f.src.normalize();
    m.tgt_poly = f.tgt.normalize();
    Ok(m)
}
