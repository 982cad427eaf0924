//! Strong unitary bimonoidal functors between free bimonoidal categories and
//! their strictification on bracketed objects.

use std::collections::BTreeMap;
use std::hash::{DefaultHasher, Hash, Hasher};

use rand::Rng;
use thiserror::Error;

use crate::mor::{s, BrMor, Dir, MorError, MorTerm, TypedMor};
use crate::obj::{gen, oplus, tensor, BrObj, ObjTerm, Word};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum StrictifyError {
    #[error("functor {0} is not unitary: F0 sends the unit to {1}")]
    NonUnitaryFunctor(String, String),
    #[error(transparent)]
    Mor(#[from] MorError),
}

/// How a functor realizes F(X □ Y) from FX □ FY.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Wrap {
    Plain,
    UnitRight,
    UnitLeft,
}

/// A strong bimonoidal functor of the free category: generators go to
/// arbitrary terms and binary products are padded with units, so F²
/// components are unitors.
#[derive(Debug, Clone)]
pub struct BimonFunctorDescr {
    pub name: String,
    pub object_map: BTreeMap<String, ObjTerm>,
    /// Decides which padding each product receives.
    pub seed: u64,
    /// F𝟙 and F𝟘; unitarity requires these to be 𝟙 and 𝟘 with identity F⁰.
    pub unit_image: ObjTerm,
    pub zero_image: ObjTerm,
}

const SLOTS: [&str; 3] = ["#0", "#1", "#2"];

impl BimonFunctorDescr {
    pub fn new(name: &str, object_map: BTreeMap<String, ObjTerm>, seed: u64) -> Self {
        BimonFunctorDescr {
            name: name.to_string(),
            object_map,
            seed,
            unit_image: ObjTerm::One,
            zero_image: ObjTerm::Zero,
        }
    }

    pub fn is_unitary(&self) -> bool {
        self.unit_image == ObjTerm::One && self.zero_image == ObjTerm::Zero
    }

    fn wrap(&self, x: &ObjTerm) -> Wrap {
        let mut h = DefaultHasher::new();
        self.seed.hash(&mut h);
        x.hash(&mut h);
        match h.finish() % 3 {
            0 => Wrap::Plain,
            1 => Wrap::UnitRight,
            _ => Wrap::UnitLeft,
        }
    }

    pub fn obj(&self, x: &ObjTerm) -> ObjTerm {
        match x {
            ObjTerm::Gen(g) => self.object_map.get(&*g.id).cloned().unwrap_or_else(|| x.clone()),
            ObjTerm::One => self.unit_image.clone(),
            ObjTerm::Zero => self.zero_image.clone(),
            ObjTerm::Tensor(a, b) => {
                let p = tensor(self.obj(a), self.obj(b));
                match self.wrap(x) {
                    Wrap::Plain => p,
                    Wrap::UnitRight => tensor(p, ObjTerm::One),
                    Wrap::UnitLeft => tensor(ObjTerm::One, p),
                }
            }
            ObjTerm::Oplus(a, b) => {
                let p = oplus(self.obj(a), self.obj(b));
                match self.wrap(x) {
                    Wrap::Plain => p,
                    Wrap::UnitRight => oplus(p, ObjTerm::Zero),
                    Wrap::UnitLeft => oplus(ObjTerm::Zero, p),
                }
            }
        }
    }

    /// F²⊗ or F²⊕ at `x = a □ b`: Fa □ Fb → F(a □ b).
    pub fn f2(&self, x: &ObjTerm) -> TypedMor {
        let (ObjTerm::Tensor(a, b) | ObjTerm::Oplus(a, b)) = x else {
            return TypedMor::id(self.obj(x));
        };
        let is_t = matches!(x, ObjTerm::Tensor(..));
        let p = if is_t { tensor(self.obj(a), self.obj(b)) } else { oplus(self.obj(a), self.obj(b)) };
        match (self.wrap(x), is_t) {
            (Wrap::Plain, _) => TypedMor::id(p),
            (Wrap::UnitRight, true) => s::inv(s::rho_t(p)),
            (Wrap::UnitLeft, true) => s::inv(s::lambda_t(p)),
            (Wrap::UnitRight, false) => s::inv(s::rho_p(p)),
            (Wrap::UnitLeft, false) => s::inv(s::lambda_p(p)),
        }
    }

    /// The F² composite `pattern(F params) → F(pattern(params))`, where the
    /// pattern's slot generators `#i` stand for `params[i]`.
    fn coherence(&self, pattern: &ObjTerm, params: &[ObjTerm]) -> TypedMor {
        match pattern {
            ObjTerm::Gen(g) => match SLOTS.iter().position(|s| **s == *g.id) {
                Some(i) => TypedMor::id(self.obj(&params[i])),
                None => TypedMor::id(self.obj(pattern)),
            },
            ObjTerm::One | ObjTerm::Zero => TypedMor::id(self.obj(pattern)),
            ObjTerm::Tensor(a, b) | ObjTerm::Oplus(a, b) => {
                let (ca, cb) = (self.coherence(a, params), self.coherence(b, params));
                let inner = if matches!(pattern, ObjTerm::Tensor(..)) { ca.tensor(&cb) } else { ca.oplus(&cb) };
                self.f2(&substitute(pattern, params)).after(&inner).expect("F² composite is typed")
            }
        }
    }

    /// F on morphisms.
    pub fn mor(&self, m: &TypedMor) -> Result<TypedMor, MorError> {
        self.mor_term(&m.term)
    }

    fn mor_term(&self, t: &MorTerm) -> Result<TypedMor, MorError> {
        Ok(match t {
            MorTerm::Id(x) => TypedMor::id(self.obj(x)),
            MorTerm::Named { id, src, tgt } => {
                TypedMor::named(&format!("{}({id})", self.name), self.obj(src), self.obj(tgt))
            }
            MorTerm::Struct { kind, params, dir } => {
                let slots: Vec<ObjTerm> = SLOTS[..params.len()].iter().map(|s| gen(s)).collect();
                let pat = TypedMor::structural(*kind, slots)?;
                let fparams: Vec<ObjTerm> = params.iter().map(|p| self.obj(p)).collect();
                let at_f = TypedMor::structural(*kind, fparams)?;
                let cp = self.coherence(&pat.src, params);
                let cq = self.coherence(&pat.tgt, params);
                let fwd = TypedMor::chain(&[cp.inverse()?, at_f, cq])?;
                match dir {
                    Dir::Fwd => fwd,
                    Dir::Inv => fwd.inverse()?,
                }
            }
            MorTerm::VComp(g, f) => self.mor_term(g)?.after(&self.mor_term(f)?)?,
            MorTerm::TensorM(f, g) | MorTerm::OplusM(f, g) => {
                let (ff, fg) = (self.mor_term(f)?, self.mor_term(g)?);
                let (fs, ft) = f.type_of()?;
                let (gs, gt) = g.type_of()?;
                let is_t = matches!(t, MorTerm::TensorM(..));
                let (src, tgt, mid) = if is_t {
                    (tensor(fs, gs), tensor(ft, gt), ff.tensor(&fg))
                } else {
                    (oplus(fs, gs), oplus(ft, gt), ff.oplus(&fg))
                };
                TypedMor::chain(&[self.f2(&src).inverse()?, mid, self.f2(&tgt)])?
            }
        })
    }

    /// Item-wise image of a bracketed object.
    pub fn br_obj(&self, b: &BrObj) -> BrObj {
        BrObj::new(b.items().iter().map(|x| self.obj(x)).collect(), b.shape().clone()).expect("same shape")
    }

    /// Ω_F at (S, w): w(F S₁, …, F Sₙ) → F(w(S₁, …, Sₙ)).
    pub fn omega(&self, b: &BrObj) -> TypedMor {
        self.word_coherence(b.shape(), b.items(), &mut 0)
    }

    fn word_coherence(&self, w: &Word, items: &[ObjTerm], next: &mut usize) -> TypedMor {
        match w {
            Word::Hole => {
                let x = &items[*next];
                *next += 1;
                TypedMor::id(self.obj(x))
            }
            Word::TensorW(a, b) | Word::OplusW(a, b) => {
                let start = *next;
                let ca = self.word_coherence(a, items, next);
                let cb = self.word_coherence(b, items, next);
                let is_t = matches!(w, Word::TensorW(..));
                let inner = if is_t { ca.tensor(&cb) } else { ca.oplus(&cb) };
                let sub = BrObj::new(items[start..*next].to_vec(), w.clone()).expect("sub-word").underlying();
                self.f2(&sub).after(&inner).expect("typed")
            }
        }
    }
}

fn substitute(pattern: &ObjTerm, params: &[ObjTerm]) -> ObjTerm {
    match pattern {
        ObjTerm::Gen(g) => match SLOTS.iter().position(|s| **s == *g.id) {
            Some(i) => params[i].clone(),
            None => pattern.clone(),
        },
        ObjTerm::One | ObjTerm::Zero => pattern.clone(),
        ObjTerm::Tensor(a, b) => tensor(substitute(a, params), substitute(b, params)),
        ObjTerm::Oplus(a, b) => oplus(substitute(a, params), substitute(b, params)),
    }
}

/// F̄φ = Ω_F⁻¹ ∘ Fφ ∘ Ω_F on bracketed objects.
pub fn strictify(f: &BimonFunctorDescr, phi: &BrMor) -> Result<BrMor, StrictifyError> {
    if !f.is_unitary() {
        let bad = if f.unit_image != ObjTerm::One { &f.unit_image } else { &f.zero_image };
        return Err(StrictifyError::NonUnitaryFunctor(f.name.clone(), bad.to_string()));
    }
    let src = f.br_obj(&phi.src);
    let tgt = f.br_obj(&phi.tgt);
    let body = TypedMor::chain(&[f.omega(&phi.src), f.mor(&phi.body)?, f.omega(&phi.tgt).inverse()?])?;
    Ok(BrMor::new(src, tgt, body)?)
}

/// A random unitary descriptor over the generators `a`..`e`.
pub fn random_descriptor<R: Rng>(rng: &mut R, name: &str) -> BimonFunctorDescr {
    let mut map = BTreeMap::new();
    for g in ["a", "b", "c", "d", "e"] {
        if rng.gen_bool(0.7) {
            map.insert(g.to_string(), crate::random::bimonoidal_obj(rng, 2, 3));
        }
    }
    BimonFunctorDescr::new(name, map, rng.gen())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::decide_equal;
    use crate::Verdict;

    fn descr(seed: u64) -> BimonFunctorDescr {
        let mut map = BTreeMap::new();
        map.insert("a".to_string(), tensor(gen("b"), oplus(gen("c"), ObjTerm::One)));
        BimonFunctorDescr::new("F", map, seed)
    }

    #[test]
    fn alpha_strictifies_to_alpha() {
        let (a, b, c) = (gen("a"), gen("b"), gen("c"));
        let items = vec![a.clone(), b.clone(), c.clone()];
        let src = BrObj::new(items.clone(), Word::tensor(Word::tensor(Word::Hole, Word::Hole), Word::Hole)).unwrap();
        let tgt = BrObj::new(items, Word::tensor(Word::Hole, Word::tensor(Word::Hole, Word::Hole))).unwrap();
        let phi = BrMor::new(src, tgt, s::alpha_t(a, b, c)).unwrap();
        for seed in 0..10 {
            let f = descr(seed);
            let out = strictify(&f, &phi).unwrap();
            let [x, y, z] = [0, 1, 2].map(|i| out.src.items()[i].clone());
            assert_eq!(decide_equal(&out.body, &s::alpha_t(x, y, z)).unwrap(), Verdict::Equal);
        }
    }

    #[test]
    fn identity_goes_to_identity() {
        let x = BrObj::single(tensor(gen("a"), gen("b")));
        let phi = BrMor::new(x.clone(), x.clone(), TypedMor::id(x.underlying())).unwrap();
        let out = strictify(&descr(3), &phi).unwrap();
        assert_eq!(decide_equal(&out.body, &TypedMor::id(out.src.underlying())).unwrap(), Verdict::Equal);
    }

    #[test]
    fn non_unitary_rejected() {
        let mut f = descr(0);
        f.unit_image = tensor(ObjTerm::One, ObjTerm::One);
        let x = BrObj::single(gen("a"));
        let phi = BrMor::new(x.clone(), x, TypedMor::id(gen("a"))).unwrap();
        assert!(matches!(strictify(&f, &phi), Err(StrictifyError::NonUnitaryFunctor(..))));
    }
}
