//! Tensor-type endofunctors and the natural transformations between them.
//!
//! A bracketed endofunctor is evaluated at 𝟙 item by item. Morphisms between
//! bracketed endofunctors are represented by their images under that
//! evaluation, so every construction here produces a [`TypedMor`] between
//! evaluated objects together with the endofunctor source and target it
//! stands for.

use std::fmt;

use thiserror::Error;

use crate::mor::{s, MorError, TypedMor};
use crate::obj::{oplus, tensor, BrObj, Generator, ObjTerm, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TTEndo {
    Id,
    /// Left tensoring by an object.
    DA(ObjTerm),
    K,
    Mn(usize),
    /// C₀ of a named finite grid.
    CX(String),
}

impl TTEndo {
    /// The value at 𝟙.
    pub fn ev_obj(&self) -> ObjTerm {
        match self {
            TTEndo::Id => ObjTerm::One,
            TTEndo::DA(a) => tensor(a.clone(), ObjTerm::One),
            TTEndo::K => ObjTerm::Gen(Generator::compacts()),
            TTEndo::Mn(n) => ObjTerm::Gen(Generator::matrices(*n)),
            TTEndo::CX(x) => ObjTerm::Gen(Generator::c0(x)),
        }
    }
}

impl fmt::Display for TTEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TTEndo::Id => f.write_str("Id"),
            TTEndo::DA(a) => write!(f, "DA({a})"),
            TTEndo::K => f.write_str("K"),
            TTEndo::Mn(n) => write!(f, "M{n}"),
            TTEndo::CX(x) => write!(f, "C0({x})"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EndoError {
    #[error(transparent)]
    Mor(#[from] MorError),
    #[error("endofunctor mismatch: expected {expected}, found {found}")]
    Mismatch { expected: String, found: String },
    #[error("{0} is not parallel to the evaluated endofunctors {1} => {2}")]
    NotParallel(String, String, String),
}

/// A bracketed word of tensor-type endofunctors; `·` is composition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BrEndo {
    items: Vec<TTEndo>,
    shape: Word,
}

/// One level of a [`BrEndo`].
pub enum Split {
    Single(TTEndo),
    Comp(BrEndo, BrEndo),
    Sum(BrEndo, BrEndo),
}

impl BrEndo {
    pub fn single(t: TTEndo) -> Self {
        BrEndo { items: vec![t], shape: Word::Hole }
    }

    pub fn new(items: Vec<TTEndo>, shape: Word) -> Result<Self, EndoError> {
        if items.is_empty() || items.len() != shape.length() {
            return Err(EndoError::Mismatch {
                expected: format!("{} items", shape.length()),
                found: format!("{} items", items.len()),
            });
        }
        Ok(BrEndo { items, shape })
    }

    pub fn compose(&self, o: &BrEndo) -> BrEndo {
        let mut items = self.items.clone();
        items.extend(o.items.iter().cloned());
        BrEndo { items, shape: Word::tensor(self.shape.clone(), o.shape.clone()) }
    }

    pub fn plus(&self, o: &BrEndo) -> BrEndo {
        let mut items = self.items.clone();
        items.extend(o.items.iter().cloned());
        BrEndo { items, shape: Word::oplus(self.shape.clone(), o.shape.clone()) }
    }

    pub fn items(&self) -> &[TTEndo] {
        &self.items
    }

    pub fn shape(&self) -> &Word {
        &self.shape
    }

    pub fn split(&self) -> Split {
        let cut = |a: &Word, b: &Word| {
            let n = a.length();
            (
                BrEndo { items: self.items[..n].to_vec(), shape: a.clone() },
                BrEndo { items: self.items[n..].to_vec(), shape: b.clone() },
            )
        };
        match &self.shape {
            Word::Hole => Split::Single(self.items[0].clone()),
            Word::TensorW(a, b) => {
                let (l, r) = cut(a, b);
                Split::Comp(l, r)
            }
            Word::OplusW(a, b) => {
                let (l, r) = cut(a, b);
                Split::Sum(l, r)
            }
        }
    }

    /// Item-wise evaluation at 𝟙, keeping the bracketing.
    pub fn ev(&self) -> BrObj {
        BrObj::new(self.items.iter().map(TTEndo::ev_obj).collect(), self.shape.clone()).expect("shape checked")
    }

    /// uEV: the evaluated underlying object.
    pub fn ev_obj(&self) -> ObjTerm {
        self.ev().underlying()
    }
}

impl fmt::Display for BrEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.items.iter().map(|t| t.to_string()).collect();
        let s = self.shape.fill(&names, &|a, b| format!("({a} . {b})"), &|a, b| format!("({a} + {b})"));
        f.write_str(&s)
    }
}

/// A natural transformation between bracketed endofunctors, held as its
/// evaluated body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoMor {
    pub src: BrEndo,
    pub tgt: BrEndo,
    pub body: TypedMor,
}

impl EndoMor {
    pub fn new(src: BrEndo, tgt: BrEndo, body: TypedMor) -> Result<Self, EndoError> {
        let (es, et) = (src.ev_obj(), tgt.ev_obj());
        if body.src != es || body.tgt != et {
            return Err(EndoError::NotParallel(body.to_string(), es.to_string(), et.to_string()));
        }
        Ok(EndoMor { src, tgt, body })
    }

    pub fn id(t: &BrEndo) -> Self {
        EndoMor { src: t.clone(), tgt: t.clone(), body: TypedMor::id(t.ev_obj()) }
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &EndoMor) -> Result<EndoMor, EndoError> {
        if f.tgt != self.src {
            return Err(EndoError::Mismatch { expected: self.src.to_string(), found: f.tgt.to_string() });
        }
        Ok(EndoMor { src: f.src.clone(), tgt: self.tgt.clone(), body: self.body.after(&f.body)? })
    }

    /// Horizontal composite `self · g`.
    pub fn hcomp(&self, g: &EndoMor) -> EndoMor {
        EndoMor { src: self.src.compose(&g.src), tgt: self.tgt.compose(&g.tgt), body: self.body.tensor(&g.body) }
    }

    pub fn plus(&self, g: &EndoMor) -> EndoMor {
        EndoMor { src: self.src.plus(&g.src), tgt: self.tgt.plus(&g.tgt), body: self.body.oplus(&g.body) }
    }

    pub fn inverse(&self) -> Result<EndoMor, EndoError> {
        Ok(EndoMor { src: self.tgt.clone(), tgt: self.src.clone(), body: self.body.inverse()? })
    }

    /// Compose a list given in application order.
    pub fn chain(steps: &[EndoMor]) -> Result<EndoMor, EndoError> {
        let mut it = steps.iter();
        let mut acc = it.next().expect("non-empty chain").clone();
        for s in it {
            acc = s.after(&acc)?;
        }
        Ok(acc)
    }
}

fn da(x: ObjTerm) -> BrEndo {
    BrEndo::single(TTEndo::DA(x))
}

/// ω_T : T ⇒ 𝔇_{T𝟙}.
pub fn omega(t: &TTEndo) -> EndoMor {
    let body = match t {
        TTEndo::Id => s::inv(s::lambda_t(ObjTerm::One)),
        TTEndo::DA(a) => s::inv(s::rho_t(a.clone())).tensor(&TypedMor::id(ObjTerm::One)),
        _ => s::inv(s::rho_t(t.ev_obj())),
    };
    EndoMor::new(BrEndo::single(t.clone()), da(t.ev_obj()), body).expect("ω is typed by construction")
}

/// 𝔇² : 𝔇_X·𝔇_Y ⇒ 𝔇_{X⊗Y}.
pub fn d2(x: &ObjTerm, y: &ObjTerm) -> EndoMor {
    let one = ObjTerm::One;
    let body = s::inv(s::alpha_t(x.clone(), y.clone(), one.clone()))
        .after(&s::rho_t(x.clone()).tensor(&TypedMor::id(tensor(y.clone(), one))))
        .expect("typed");
    EndoMor::new(da(x.clone()).compose(&da(y.clone())), da(tensor(x.clone(), y.clone())), body).expect("typed")
}

/// 𝔇²⊕ : 𝔇_X ⊕ 𝔇_Y ⇒ 𝔇_{X⊕Y}.
pub fn d2_plus(x: &ObjTerm, y: &ObjTerm) -> EndoMor {
    let body = s::inv(s::delta_r(x.clone(), y.clone(), ObjTerm::One));
    EndoMor::new(da(x.clone()).plus(&da(y.clone())), da(oplus(x.clone(), y.clone())), body).expect("typed")
}

/// 𝔇_φ : 𝔇_X ⇒ 𝔇_Y for φ : X → Y.
pub fn d_phi(phi: &TypedMor) -> EndoMor {
    EndoMor {
        src: da(phi.src.clone()),
        tgt: da(phi.tgt.clone()),
        body: phi.tensor(&TypedMor::id(ObjTerm::One)),
    }
}

/// Λ_T : T ⇒ 𝔇_{uEV(T)}.
pub fn lambda_of(t: &BrEndo) -> EndoMor {
    match t.split() {
        Split::Single(x) => omega(&x),
        Split::Comp(a, b) => {
            let la = lambda_of(&a);
            let lb = lambda_of(&b);
            d2(&a.ev_obj(), &b.ev_obj()).after(&la.hcomp(&lb)).expect("typed")
        }
        Split::Sum(a, b) => {
            let la = lambda_of(&a);
            let lb = lambda_of(&b);
            d2_plus(&a.ev_obj(), &b.ev_obj()).after(&la.plus(&lb)).expect("typed")
        }
    }
}

/// ω_{TS} as a composite of the single labels.
pub fn compose_label(t: &TTEndo, u: &TTEndo) -> EndoMor {
    lambda_of(&BrEndo::single(t.clone()).compose(&BrEndo::single(u.clone())))
}

/// ω_{T⊕S}.
pub fn oplus_label(t: &TTEndo, u: &TTEndo) -> EndoMor {
    lambda_of(&BrEndo::single(t.clone()).plus(&BrEndo::single(u.clone())))
}

/// The endofunctor morphism S ⇐ T whose evaluation is φ.
pub fn ev_preimage(phi: &TypedMor, t: &BrEndo, u: &BrEndo) -> Result<EndoMor, EndoError> {
    let (x, y) = (t.ev_obj(), u.ev_obj());
    if phi.src != x || phi.tgt != y {
        return Err(EndoError::NotParallel(phi.to_string(), x.to_string(), y.to_string()));
    }
    let body = TypedMor::chain(&[lambda_of(t).body, d_phi(phi).body, lambda_of(u).inverse()?.body])?;
    Ok(EndoMor { src: t.clone(), tgt: u.clone(), body })
}

/// (T·S)·R ⇒ T·(S·R).
pub fn assoc(t: &BrEndo, u: &BrEndo, r: &BrEndo) -> EndoMor {
    EndoMor {
        src: t.compose(u).compose(r),
        tgt: t.compose(&u.compose(r)),
        body: s::alpha_t(t.ev_obj(), u.ev_obj(), r.ev_obj()),
    }
}

/// lc : T·(F⊕G) ⇒ T·F ⊕ T·G.
pub fn lc(t: &BrEndo, f: &BrEndo, g: &BrEndo) -> EndoMor {
    EndoMor {
        src: t.compose(&f.plus(g)),
        tgt: t.compose(f).plus(&t.compose(g)),
        body: s::delta_l(t.ev_obj(), f.ev_obj(), g.ev_obj()),
    }
}

/// rc : (F⊕G)·T ⇒ F·T ⊕ G·T.
pub fn rc(f: &BrEndo, g: &BrEndo, t: &BrEndo) -> EndoMor {
    EndoMor {
        src: f.plus(g).compose(t),
        tgt: f.compose(t).plus(&g.compose(t)),
        body: s::delta_r(f.ev_obj(), g.ev_obj(), t.ev_obj()),
    }
}

/// ξ_{T,S} : T·S ⇒ S·T, the preimage of the symmetry conjugated by ω.
pub fn xi_tt(t: &TTEndo, u: &TTEndo) -> EndoMor {
    let (x, y) = (t.ev_obj(), u.ev_obj());
    let ww = omega(t).hcomp(&omega(u));
    let steps = [
        ww.clone(),
        d2(&x, &y),
        d_phi(&s::xi_t(x.clone(), y.clone())),
        d2(&y, &x).inverse().expect("iso"),
        omega(u).hcomp(&omega(t)).inverse().expect("iso"),
    ];
    EndoMor::chain(&steps).expect("typed")
}

/// κ^{𝔇_X, F} : 𝔇_X·F ⇒ F·𝔇_X.
fn kappa_d(x: &ObjTerm, f: &BrEndo) -> EndoMor {
    let d = da(x.clone());
    match f.split() {
        Split::Single(TTEndo::DA(y)) => kappa_dd(x, &y, f),
        Split::Single(t) => {
            let w = omega(&t);
            let dy = &w.tgt;
            let inner = kappa_dd(x, &t.ev_obj(), dy);
            EndoMor::chain(&[EndoMor::id(&d).hcomp(&w), inner, w.inverse().expect("iso").hcomp(&EndoMor::id(&d))])
                .expect("typed")
        }
        Split::Comp(f1, f2) => {
            let k1 = kappa_d(x, &f1);
            let k2 = kappa_d(x, &f2);
            EndoMor::chain(&[
                assoc(&d, &f1, &f2).inverse().expect("iso"),
                k1.hcomp(&EndoMor::id(&f2)),
                assoc(&f1, &d, &f2),
                EndoMor::id(&f1).hcomp(&k2),
                assoc(&f1, &f2, &d).inverse().expect("iso"),
            ])
            .expect("typed")
        }
        Split::Sum(f1, f2) => {
            let k = kappa_d(x, &f1).plus(&kappa_d(x, &f2));
            EndoMor::chain(&[lc(&d, &f1, &f2), k, rc(&f1, &f2, &d).inverse().expect("iso")]).expect("typed")
        }
    }
}

/// κ^{𝔇_X, 𝔇_Y} where `dy` is the single-item endofunctor 𝔇_Y.
fn kappa_dd(x: &ObjTerm, y: &ObjTerm, dy: &BrEndo) -> EndoMor {
    let core = EndoMor::chain(&[
        d2(x, y),
        d_phi(&s::xi_t(x.clone(), y.clone())),
        d2(y, x).inverse().expect("iso"),
    ])
    .expect("typed");
    debug_assert_eq!(&core.src, &da(x.clone()).compose(dy));
    core
}

/// κ^{T,F} : T·F ⇒ F·T for a bracketed T, through its label Λ_T.
pub fn kappa_br(t: &BrEndo, f: &BrEndo) -> EndoMor {
    let lt = lambda_of(t);
    let idf = EndoMor::id(f);
    EndoMor::chain(&[lt.hcomp(&idf), kappa_d(&t.ev_obj(), f), idf.hcomp(&lt.inverse().expect("iso"))])
        .expect("typed")
}

pub fn kappa(t: &TTEndo, f: &BrEndo) -> EndoMor {
    kappa_br(&BrEndo::single(t.clone()), f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::decide_equal;
    use crate::leafmap::leaf_map;
    use crate::obj::gen;
    use crate::Verdict;

    fn eq(f: &TypedMor, g: &TypedMor) -> bool {
        decide_equal(f, g).unwrap() == Verdict::Equal
    }

    #[test]
    fn ev_examples() {
        let t = BrEndo::single(TTEndo::K).compose(&BrEndo::single(TTEndo::DA(gen("a"))));
        assert_eq!(t.ev_obj().to_string(), "(K * (a * 1))");
        assert_eq!(BrEndo::single(TTEndo::Id).ev_obj(), ObjTerm::One);
        let m = BrEndo::single(TTEndo::Mn(2)).compose(&BrEndo::single(TTEndo::K));
        assert_eq!(m.ev().items().len(), 2);
        assert_eq!(m.ev_obj().to_string(), "(M2 * K)");
    }

    #[test]
    fn lambda_base_cases() {
        let l = lambda_of(&BrEndo::single(TTEndo::Id));
        assert!(eq(&l.body, &s::inv(s::lambda_t(ObjTerm::One))));
        let a = gen("a");
        let l = lambda_of(&BrEndo::single(TTEndo::DA(a.clone())));
        assert!(eq(&l.body, &s::inv(s::rho_t(a)).tensor(&TypedMor::id(ObjTerm::One))));
        let kk = BrEndo::single(TTEndo::K).compose(&BrEndo::single(TTEndo::K));
        let l = lambda_of(&kk);
        assert_eq!(l.tgt, da(kk.ev_obj()));
        assert!(eq(&l.body, &s::inv(s::rho_t(kk.ev_obj()))));
    }

    #[test]
    fn labels_satisfy_unit_condition() {
        let ts = [TTEndo::Id, TTEndo::K, TTEndo::DA(gen("a")), TTEndo::Mn(2)];
        for t in &ts {
            for u in &ts {
                for w in [compose_label(t, u), oplus_label(t, u)] {
                    let x = w.src.ev_obj();
                    assert!(eq(&w.body, &s::inv(s::rho_t(x))));
                }
            }
        }
    }

    #[test]
    fn xi_tt_examples() {
        let id = xi_tt(&TTEndo::Id, &TTEndo::K);
        assert!(leaf_map(&id.body).unwrap().is_identity());
        let x = xi_tt(&TTEndo::DA(gen("a")), &TTEndo::DA(gen("b")));
        assert!(eq(&x.body, &s::xi_t(x.src.items()[0].ev_obj(), x.src.items()[1].ev_obj())));
        let kk = xi_tt(&TTEndo::K, &TTEndo::K);
        assert_eq!(leaf_map(&kk.body).unwrap().leaf_perm(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn kappa_evaluates_to_symmetry() {
        let a = TTEndo::DA(gen("a"));
        let f = BrEndo::single(TTEndo::K)
            .compose(&BrEndo::single(TTEndo::Mn(2)).plus(&BrEndo::single(TTEndo::DA(gen("b")))));
        for t in [TTEndo::K, a, TTEndo::Id] {
            let k = kappa(&t, &f);
            assert!(eq(&k.body, &s::xi_t(t.ev_obj(), f.ev_obj())), "κ^{{{t},F}}");
        }
        let k = kappa(&TTEndo::Id, &f);
        assert!(leaf_map(&k.body).unwrap().is_identity());
    }

    #[test]
    fn ev_preimage_examples() {
        let a = gen("a");
        let t = BrEndo::single(TTEndo::K).compose(&BrEndo::single(TTEndo::DA(a.clone())));
        let u = BrEndo::single(TTEndo::DA(a.clone())).compose(&BrEndo::single(TTEndo::K));
        let phi = s::xi_t(TTEndo::K.ev_obj(), TTEndo::DA(a.clone()).ev_obj());
        let m = ev_preimage(&phi, &t, &u).unwrap();
        assert!(eq(&m.body, &phi));
        let idm = ev_preimage(&TypedMor::id(t.ev_obj()), &t, &t).unwrap();
        assert!(eq(&idm.body, &TypedMor::id(t.ev_obj())));
        let iota = TypedMor::named("iota00", ObjTerm::One, TTEndo::K.ev_obj());
        let m = ev_preimage(&iota, &BrEndo::single(TTEndo::Id), &BrEndo::single(TTEndo::K)).unwrap();
        assert_eq!(m.body.src, ObjTerm::One);
        assert_eq!(m.body.tgt, TTEndo::K.ev_obj());
        assert!(matches!(ev_preimage(&phi, &u, &t), Err(EndoError::NotParallel(..))));
    }
}
