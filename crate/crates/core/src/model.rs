//! Finite-dimensional matrix models: objects become dimensions, morphisms
//! become explicit matrices computed by index arithmetic on the term tree.
//!
//! Flattening is row-major: the basis vector (i, j) of X ⊗ Y has index
//! `i * dim(Y) + j`, and X ⊕ Y lists the basis of X before that of Y.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::mor::{Dir, Kind, MorTerm, TypedMor};
use crate::obj::{Generator, ObjTerm};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("generator {0} has no assignment in this model")]
    UnassignedGenerator(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("morphisms are not parallel")]
    NotParallel,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub trait Scalar: num::Num + Clone + Debug {
    fn to_complex(&self) -> Complex64;
}

impl Scalar for BigRational {
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

impl Scalar for Complex64 {
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// Row-compressed sparse matrix without stored zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> SparseMat<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMat { rows: n, cols: n, data: (0..n).map(|i| vec![(i, T::one())]).collect() }
    }

    /// 0/1 matrix with a one at (r, map[r]) wherever `map[r]` is set.
    pub fn from_row_map(cols: usize, map: &[Option<usize>]) -> Self {
        let data = map.iter().map(|c| c.map(|c| vec![(c, T::one())]).unwrap_or_default()).collect();
        SparseMat { rows: map.len(), cols, data }
    }

    pub fn from_dense(rows: usize, cols: usize, entries: &[T]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let mut m = Self::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = &entries[r * cols + c];
                if !v.is_zero() {
                    m.data[r].push((c, v.clone()));
                }
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r].iter().find(|(cc, _)| *cc == c).map(|(_, v)| v.clone()).unwrap_or_else(T::zero)
    }

    pub fn row(&self, r: usize) -> &[(usize, T)] {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Self::zero(self.rows, o.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &o.data[*k] {
                    let e = acc.entry(*c).or_insert_with(T::zero);
                    *e = e.clone() + a.clone() * b.clone();
                }
            }
            out.data[r] = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        }
        out
    }

    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.rows * o.rows, self.cols * o.cols);
        for (r1, row1) in self.data.iter().enumerate() {
            for (r2, row2) in o.data.iter().enumerate() {
                let row = &mut out.data[r1 * o.rows + r2];
                for (c1, a) in row1 {
                    for (c2, b) in row2 {
                        row.push((c1 * o.cols + c2, a.clone() * b.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.rows + o.rows, self.cols + o.cols);
        for (r, row) in self.data.iter().enumerate() {
            out.data[r] = row.clone();
        }
        for (r, row) in o.data.iter().enumerate() {
            out.data[self.rows + r] = row.iter().map(|(c, v)| (c + self.cols, v.clone())).collect();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out.data[*c].push((r, v.clone()));
            }
        }
        out
    }

    pub fn to_complex(&self) -> SparseMat<Complex64> {
        SparseMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|row| row.iter().map(|(c, v)| (*c, v.to_complex())).collect()).collect(),
        }
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        let a = self.to_complex();
        let b = o.to_complex();
        let mut worst = 0.0f64;
        for r in 0..self.rows {
            let mut m: BTreeMap<usize, Complex64> = BTreeMap::new();
            for (c, v) in &a.data[r] {
                *m.entry(*c).or_default() += v;
            }
            for (c, v) in &b.data[r] {
                *m.entry(*c).or_default() -= v;
            }
            for v in m.values() {
                worst = worst.max(v.norm());
            }
        }
        worst
    }

    /// Every row and column has at most one nonzero entry, equal to 1.
    pub fn is_partial_permutation(&self) -> bool {
        let mut col_seen = vec![false; self.cols];
        for row in &self.data {
            if row.len() > 1 {
                return false;
            }
            for (c, v) in row {
                if !v.is_one() || col_seen[*c] {
                    return false;
                }
                col_seen[*c] = true;
            }
        }
        true
    }

    pub fn to_dense(&self) -> Vec<T> {
        let mut out = vec![T::zero(); self.rows * self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out[r * self.cols + c] = v.clone();
            }
        }
        out
    }
}

/// Matrix value with its arithmetic mode.
#[derive(Debug, Clone, PartialEq)]
pub enum MatVal {
    Exact(SparseMat<BigRational>),
    Float(SparseMat<Complex64>),
}

impl MatVal {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            MatVal::Exact(m) => (m.rows, m.cols),
            MatVal::Float(m) => (m.rows, m.cols),
        }
    }

    pub fn as_float(&self) -> SparseMat<Complex64> {
        match self {
            MatVal::Exact(m) => m.to_complex(),
            MatVal::Float(m) => m.clone(),
        }
    }

    fn binary(
        &self,
        o: &MatVal,
        fe: impl Fn(&SparseMat<BigRational>, &SparseMat<BigRational>) -> SparseMat<BigRational>,
        ff: impl Fn(&SparseMat<Complex64>, &SparseMat<Complex64>) -> SparseMat<Complex64>,
    ) -> MatVal {
        match (self, o) {
            (MatVal::Exact(a), MatVal::Exact(b)) => MatVal::Exact(fe(a, b)),
            _ => MatVal::Float(ff(&self.as_float(), &o.as_float())),
        }
    }

    pub fn mul(&self, o: &MatVal) -> MatVal {
        self.binary(o, |a, b| a.mul(b), |a, b| a.mul(b))
    }

    pub fn kron(&self, o: &MatVal) -> MatVal {
        self.binary(o, |a, b| a.kron(b), |a, b| a.kron(b))
    }

    pub fn block_diag(&self, o: &MatVal) -> MatVal {
        self.binary(o, |a, b| a.block_diag(b), |a, b| a.block_diag(b))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, MatVal::Exact(_))
    }
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ModelAssign {
    pub gen_dims: BTreeMap<String, usize>,
    pub gen_mors: BTreeMap<String, MatVal>,
    pub seed: u64,
}

impl ModelAssign {
    pub fn with_dims(dims: &[(&str, usize)]) -> Self {
        ModelAssign {
            gen_dims: dims.iter().map(|(g, d)| (g.to_string(), *d)).collect(),
            ..Default::default()
        }
    }

    pub fn dim(&self, g: &Generator) -> Result<usize, ModelError> {
        self.gen_dims.get(&*g.id).copied().ok_or_else(|| ModelError::UnassignedGenerator(g.id.to_string()))
    }
}

pub fn dim_of(t: &ObjTerm, a: &ModelAssign) -> Result<usize, ModelError> {
    Ok(match t {
        ObjTerm::Gen(g) => a.dim(g)?,
        ObjTerm::One => 1,
        ObjTerm::Zero => 0,
        ObjTerm::Tensor(x, y) => dim_of(x, a)? * dim_of(y, a)?,
        ObjTerm::Oplus(x, y) => dim_of(x, a)? + dim_of(y, a)?,
    })
}

fn structural_matrix(kind: Kind, params: &[ObjTerm], a: &ModelAssign) -> Result<SparseMat<BigRational>, ModelError> {
    let d: Vec<usize> = params.iter().map(|p| dim_of(p, a)).collect::<Result<_, _>>()?;
    Ok(match kind {
        Kind::AlphaT => SparseMat::identity(d[0] * d[1] * d[2]),
        Kind::LambdaT | Kind::RhoT | Kind::LambdaP | Kind::RhoP => SparseMat::identity(d[0]),
        Kind::AlphaP => SparseMat::identity(d[0] + d[1] + d[2]),
        Kind::DeltaR => SparseMat::identity((d[0] + d[1]) * d[2]),
        Kind::XiT => {
            let (dx, dy) = (d[0], d[1]);
            // row (j, i) of Y ⊗ X reads column (i, j) of X ⊗ Y
            let map: Vec<Option<usize>> = (0..dx * dy).map(|r| Some((r % dx) * dy + r / dx)).collect();
            SparseMat::from_row_map(dx * dy, &map)
        }
        Kind::XiP => {
            let (dx, dy) = (d[0], d[1]);
            let map: Vec<Option<usize>> =
                (0..dx + dy).map(|r| Some(if r < dy { dx + r } else { r - dy })).collect();
            SparseMat::from_row_map(dx + dy, &map)
        }
        Kind::DeltaL => {
            let (da, db, dc) = (d[0], d[1], d[2]);
            let map: Vec<Option<usize>> = (0..da * (db + dc))
                .map(|r| {
                    Some(if r < da * db {
                        (r / db) * (db + dc) + r % db
                    } else {
                        let r = r - da * db;
                        (r / dc) * (db + dc) + db + r % dc
                    })
                })
                .collect();
            SparseMat::from_row_map(da * (db + dc), &map)
        }
        Kind::LambdaZ | Kind::RhoZ => SparseMat::zero(0, 0),
        Kind::Diag => {
            let map: Vec<Option<usize>> = (0..2 * d[0]).map(|r| Some(r % d[0])).collect();
            SparseMat::from_row_map(d[0], &map)
        }
        Kind::Bang => SparseMat::zero(0, d[0]),
    })
}

fn eval_term(t: &MorTerm, a: &ModelAssign) -> Result<MatVal, ModelError> {
    Ok(match t {
        MorTerm::Id(x) => MatVal::Exact(SparseMat::identity(dim_of(x, a)?)),
        MorTerm::Struct { kind, params, dir } => {
            let m = structural_matrix(*kind, params, a)?;
            MatVal::Exact(match dir {
                Dir::Fwd => m,
                Dir::Inv => m.transpose(),
            })
        }
        MorTerm::Named { id, src, tgt } => {
            let m = a.gen_mors.get(&**id).ok_or_else(|| ModelError::UnassignedGenerator(id.to_string()))?;
            let want = (dim_of(tgt, a)?, dim_of(src, a)?);
            if m.shape() != want {
                return Err(ModelError::TypeMismatch(format!(
                    "{id} is {:?} but its type needs {:?}",
                    m.shape(),
                    want
                )));
            }
            m.clone()
        }
        MorTerm::VComp(g, f) => {
            let (mf, mg) = (eval_term(f, a)?, eval_term(g, a)?);
            if mg.shape().1 != mf.shape().0 {
                return Err(ModelError::TypeMismatch(format!("cannot compose {g} after {f}")));
            }
            mg.mul(&mf)
        }
        MorTerm::TensorM(f, g) => eval_term(f, a)?.kron(&eval_term(g, a)?),
        MorTerm::OplusM(f, g) => eval_term(f, a)?.block_diag(&eval_term(g, a)?),
    })
}

pub fn eval_mor(f: &TypedMor, a: &ModelAssign) -> Result<MatVal, ModelError> {
    f.term.type_of().map_err(|e| ModelError::TypeMismatch(e.to_string()))?;
    eval_term(&f.term, a)
}

/// Exact comparison when both sides are exact and `tol == 0`, entrywise
/// tolerance otherwise.
pub fn equal_in_model(f: &TypedMor, g: &TypedMor, a: &ModelAssign, tol: f64) -> Result<bool, ModelError> {
    Ok(model_difference(f, g, a)?.map(|d| d <= tol).unwrap_or(true))
}

/// `None` when exactly equal, otherwise the entrywise sup of the difference
/// (infinite when shapes already differ).
pub fn model_difference(f: &TypedMor, g: &TypedMor, a: &ModelAssign) -> Result<Option<f64>, ModelError> {
    if !f.parallel_to(g) {
        return Err(ModelError::NotParallel);
    }
    let (mf, mg) = (eval_mor(f, a)?, eval_mor(g, a)?);
    if mf.shape() != mg.shape() {
        return Ok(Some(f64::INFINITY));
    }
    if let (MatVal::Exact(x), MatVal::Exact(y)) = (&mf, &mg) {
        if x == y {
            return Ok(None);
        }
    }
    let d = mf.as_float().max_abs_diff(&mg.as_float());
    Ok(if d == 0.0 && !(mf.is_exact() && mg.is_exact()) { None } else { Some(d) })
}

/// Named generator signature used to draw random matrices.
#[derive(Debug, Clone)]
pub struct NamedSig {
    pub id: String,
    pub src: ObjTerm,
    pub tgt: ObjTerm,
}

pub fn random_models(gens: &[Generator], count: usize, max_dim: usize, seed: u64) -> Vec<ModelAssign> {
    random_models_with(gens, &[], count, max_dim, seed)
}

/// Dimensions uniform in `[1, max_dim]`; named generators get integer
/// matrices with entries in [-3, 3].
pub fn random_models_with(
    gens: &[Generator],
    named: &[NamedSig],
    count: usize,
    max_dim: usize,
    seed: u64,
) -> Vec<ModelAssign> {
    assert!(max_dim >= 1, "maxDim must be positive");
    let mut ids: Vec<String> = gens.iter().map(|g| g.id.to_string()).collect();
    ids.sort();
    ids.dedup();
    let mut named: Vec<&NamedSig> = named.iter().collect();
    named.sort_by(|a, b| a.id.cmp(&b.id));
    (0..count)
        .map(|k| {
            let model_seed = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(model_seed);
            let mut a = ModelAssign { seed: model_seed, ..Default::default() };
            for id in &ids {
                a.gen_dims.insert(id.clone(), rng.gen_range(1..=max_dim));
            }
            for sig in &named {
                let (Ok(r), Ok(c)) = (dim_of(&sig.tgt, &a), dim_of(&sig.src, &a)) else {
                    continue;
                };
                let entries: Vec<BigRational> = (0..r * c).map(|_| rational(rng.gen_range(-3..=3))).collect();
                a.gen_mors.insert(sig.id.clone(), MatVal::Exact(SparseMat::from_dense(r, c, &entries)));
            }
            a
        })
        .collect()
}

/// Object generators and named morphisms occurring in `ms`, deduplicated.
pub fn signature(ms: &[&TypedMor]) -> (Vec<Generator>, Vec<NamedSig>) {
    fn walk(t: &MorTerm, gens: &mut Vec<Generator>, named: &mut BTreeMap<String, NamedSig>) {
        match t {
            MorTerm::Id(x) => gens.extend(x.generators()),
            MorTerm::Struct { params, .. } => params.iter().for_each(|p| gens.extend(p.generators())),
            MorTerm::Named { id, src, tgt } => {
                gens.extend(src.generators());
                gens.extend(tgt.generators());
                named.entry(id.to_string()).or_insert(NamedSig { id: id.to_string(), src: src.clone(), tgt: tgt.clone() });
            }
            MorTerm::VComp(a, b) | MorTerm::TensorM(a, b) | MorTerm::OplusM(a, b) => {
                walk(a, gens, named);
                walk(b, gens, named);
            }
        }
    }
    let mut gens = Vec::new();
    let mut named = BTreeMap::new();
    for m in ms {
        gens.extend(m.src.generators());
        gens.extend(m.tgt.generators());
        walk(&m.term, &mut gens, &mut named);
    }
    gens.sort();
    gens.dedup();
    (gens, named.into_values().collect())
}

/// Elements of a *-algebra that the homomorphism check can multiply.
pub trait StarElem: Clone {
    fn same_space(&self, o: &Self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn adjoint(&self) -> Self;
    fn max_diff(&self, o: &Self) -> f64;
    fn max_abs(&self) -> f64;
}

/// Dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    pub n: usize,
    pub m: usize,
    pub data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(n: usize, m: usize) -> Self {
        CMat { n, m, data: vec![Complex64::zero(); n * m] }
    }

    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut e = Self::zeros(n, n);
        e.data[i * n + j] = Complex64::one();
        e
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.m + j]
    }

    pub fn from_real(n: usize, m: usize, v: &[f64]) -> Self {
        CMat { n, m, data: v.iter().map(|x| Complex64::new(*x, 0.0)).collect() }
    }
}

impl StarElem for CMat {
    fn same_space(&self, o: &Self) -> bool {
        self.n == o.n && self.m == o.m
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = CMat::zeros(self.n, o.m);
        for i in 0..self.n {
            for k in 0..self.m {
                let a = self.data[i * self.m + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.m {
                    out.data[i * o.m + j] += a * o.data[k * o.m + j];
                }
            }
        }
        out
    }

    fn adjoint(&self) -> Self {
        let mut out = CMat::zeros(self.m, self.n);
        for i in 0..self.n {
            for j in 0..self.m {
                out.data[j * self.n + i] = self.data[i * self.m + j].conj();
            }
        }
        out
    }

    fn max_diff(&self, o: &Self) -> f64 {
        self.data.iter().zip(&o.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }
}

/// Largest violation of h(ε_ij)h(ε_kl) = δ_jk h(ε_il) and h(ε_ij)* = h(ε_ji)
/// over all unit pairs. `images[i][j]` is h(ε_ij).
pub fn star_hom_defect<M: StarElem>(images: &[Vec<M>]) -> Result<f64, ModelError> {
    let n = images.len();
    if images.iter().any(|row| row.len() != n) {
        return Err(ModelError::DimensionMismatch("unit images must form a square grid".into()));
    }
    if n == 0 {
        return Ok(0.0);
    }
    let base = &images[0][0];
    if images.iter().flatten().any(|m| !m.same_space(base)) {
        return Err(ModelError::DimensionMismatch("unit images live in different algebras".into()));
    }
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max(images[i][j].adjoint().max_diff(&images[j][i]));
            for k in 0..n {
                for l in 0..n {
                    let p = images[i][j].mul(&images[k][l]);
                    let d = if j == k { p.max_diff(&images[i][l]) } else { p.max_abs() };
                    worst = worst.max(d);
                }
            }
        }
    }
    Ok(worst)
}

pub fn check_star_hom<M: StarElem>(images: &[Vec<M>], tol: f64) -> Result<bool, ModelError> {
    Ok(star_hom_defect(images)? <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mor::s::*;
    use crate::obj::{gen, oplus, tensor};

    #[test]
    fn dims() {
        let a = ModelAssign::with_dims(&[("a", 2), ("b", 3), ("c", 4)]);
        assert_eq!(dim_of(&tensor(gen("a"), oplus(gen("b"), gen("c"))), &a).unwrap(), 14);
        assert_eq!(dim_of(&tensor(ObjTerm::One, gen("a")), &a).unwrap(), 2);
        assert_eq!(dim_of(&oplus(ObjTerm::Zero, gen("a")), &a).unwrap(), 2);
        assert!(matches!(dim_of(&gen("q"), &a), Err(ModelError::UnassignedGenerator(_))));
    }

    #[test]
    fn xi_commutation_matrix() {
        let a = ModelAssign::with_dims(&[("a", 2), ("b", 3)]);
        let MatVal::Exact(p) = eval_mor(&xi_t(gen("a"), gen("b")), &a).unwrap() else { panic!() };
        // P e_{3i+j} = e_{2j+i}: column 3i+j has its one in row 2j+i
        for i in 0..2 {
            for j in 0..3 {
                assert!(p.get(2 * j + i, 3 * i + j).is_one());
            }
        }
        assert_eq!(p.nnz(), 6);
    }

    #[test]
    fn delta_left_block_layout() {
        let a = ModelAssign::with_dims(&[("a", 2), ("b", 3), ("c", 4)]);
        let MatVal::Exact(p) = eval_mor(&delta_l(gen("a"), gen("b"), gen("c")), &a).unwrap() else { panic!() };
        assert!(p.is_partial_permutation());
        for i in 0..2 {
            for m in 0..7 {
                let col = i * 7 + m;
                let row = if m < 3 { i * 3 + m } else { 6 + i * 4 + (m - 3) };
                assert!(p.get(row, col).is_one());
            }
        }
    }

    #[test]
    fn xi_aa_is_not_identity() {
        let a = ModelAssign::with_dims(&[("a", 2)]);
        let x = xi_t(gen("a"), gen("a"));
        assert!(!equal_in_model(&x, &TypedMor::id(x.src.clone()), &a, 0.0).unwrap());
        let xx = xi_t(gen("a"), gen("a")).after(&x).unwrap();
        assert!(equal_in_model(&xx, &TypedMor::id(x.src.clone()), &a, 0.0).unwrap());
    }

    #[test]
    fn random_models_are_reproducible() {
        let gens = vec![Generator::new("a"), Generator::new("b")];
        assert_eq!(random_models(&gens, 3, 4, 7), random_models(&gens, 3, 4, 7));
        assert_eq!(random_models(&[], 3, 4, 7).len(), 3);
        for m in random_models(&gens, 20, 4, 1) {
            assert!(m.gen_dims.values().all(|d| (1..=4).contains(d)));
        }
    }

    #[test]
    fn star_hom_examples() {
        // corner embedding of ℂ into M_3
        let corner = vec![vec![CMat::unit(3, 0, 0)]];
        assert!(check_star_hom(&corner, 0.0).unwrap());
        // ℂ onto the ε_11 corner of M_2 is a *-homomorphism ...
        assert!(check_star_hom(&[vec![CMat::unit(2, 1, 1)]], 0.0).unwrap());
        // ... but compressing M_2 to that corner is not multiplicative on ε_10 ε_01
        let comp: Vec<Vec<CMat>> = (0..2)
            .map(|i| (0..2).map(|j| CMat::from_real(1, 1, &[if i == 1 && j == 1 { 1.0 } else { 0.0 }])).collect())
            .collect();
        assert!(!check_star_hom(&comp, 0.0).unwrap());
        // identity on M_2 conjugated by a non-unitary similarity
        let s = CMat::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let sinv = CMat::from_real(2, 2, &[1.0, -1.0, 0.0, 1.0]);
        let sim: Vec<Vec<CMat>> =
            (0..2).map(|i| (0..2).map(|j| s.mul(&CMat::unit(2, i, j)).mul(&sinv)).collect()).collect();
        assert!(!check_star_hom(&sim, 1e-12).unwrap());
    }
}
