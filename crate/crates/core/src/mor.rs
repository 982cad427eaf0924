//! Formal morphisms of the free tight symmetric bimonoidal category.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::obj::{oplus, tensor, BrObj, ObjTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    AlphaT,
    LambdaT,
    RhoT,
    XiT,
    AlphaP,
    LambdaP,
    RhoP,
    XiP,
    DeltaL,
    DeltaR,
    /// λ• : 𝟘⊗A → 𝟘
    LambdaZ,
    /// ρ• : A⊗𝟘 → 𝟘
    RhoZ,
    /// Δ : A → A⊕A
    Diag,
    /// ! : A → 𝟘
    Bang,
}

impl Kind {
    pub const ALL: [Kind; 14] = [
        Kind::AlphaT,
        Kind::LambdaT,
        Kind::RhoT,
        Kind::XiT,
        Kind::AlphaP,
        Kind::LambdaP,
        Kind::RhoP,
        Kind::XiP,
        Kind::DeltaL,
        Kind::DeltaR,
        Kind::LambdaZ,
        Kind::RhoZ,
        Kind::Diag,
        Kind::Bang,
    ];

    pub fn arity(self) -> usize {
        match self {
            Kind::AlphaT | Kind::AlphaP | Kind::DeltaL | Kind::DeltaR => 3,
            Kind::XiT | Kind::XiP => 2,
            _ => 1,
        }
    }

    pub fn invertible(self) -> bool {
        !matches!(self, Kind::Diag | Kind::Bang)
    }

    /// DSL spelling.
    pub fn name(self) -> &'static str {
        match self {
            Kind::AlphaT => "alphaT",
            Kind::LambdaT => "lambdaT",
            Kind::RhoT => "rhoT",
            Kind::XiT => "xiT",
            Kind::AlphaP => "alphaP",
            Kind::LambdaP => "lambdaP",
            Kind::RhoP => "rhoP",
            Kind::XiP => "xiP",
            Kind::DeltaL => "deltaL",
            Kind::DeltaR => "deltaR",
            Kind::LambdaZ => "lambdaZ",
            Kind::RhoZ => "rhoZ",
            Kind::Diag => "delta",
            Kind::Bang => "bang",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Source and target of the forward direction.
    fn forward_type(self, p: &[ObjTerm]) -> (ObjTerm, ObjTerm) {
        let c = |i: usize| p[i].clone();
        match self {
            Kind::AlphaT => (tensor(tensor(c(0), c(1)), c(2)), tensor(c(0), tensor(c(1), c(2)))),
            Kind::LambdaT => (tensor(ObjTerm::One, c(0)), c(0)),
            Kind::RhoT => (tensor(c(0), ObjTerm::One), c(0)),
            Kind::XiT => (tensor(c(0), c(1)), tensor(c(1), c(0))),
            Kind::AlphaP => (oplus(oplus(c(0), c(1)), c(2)), oplus(c(0), oplus(c(1), c(2)))),
            Kind::LambdaP => (oplus(ObjTerm::Zero, c(0)), c(0)),
            Kind::RhoP => (oplus(c(0), ObjTerm::Zero), c(0)),
            Kind::XiP => (oplus(c(0), c(1)), oplus(c(1), c(0))),
            Kind::DeltaL => (
                tensor(c(0), oplus(c(1), c(2))),
                oplus(tensor(c(0), c(1)), tensor(c(0), c(2))),
            ),
            Kind::DeltaR => (
                tensor(oplus(c(0), c(1)), c(2)),
                oplus(tensor(c(0), c(2)), tensor(c(1), c(2))),
            ),
            Kind::LambdaZ => (tensor(ObjTerm::Zero, c(0)), ObjTerm::Zero),
            Kind::RhoZ => (tensor(c(0), ObjTerm::Zero), ObjTerm::Zero),
            Kind::Diag => (c(0), oplus(c(0), c(0))),
            Kind::Bang => (c(0), ObjTerm::Zero),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Fwd,
    Inv,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MorTerm {
    Id(ObjTerm),
    Struct { kind: Kind, params: Vec<ObjTerm>, dir: Dir },
    Named { id: Arc<str>, src: ObjTerm, tgt: ObjTerm },
    /// `VComp(g, f)` is g ∘ f.
    VComp(Box<MorTerm>, Box<MorTerm>),
    TensorM(Box<MorTerm>, Box<MorTerm>),
    OplusM(Box<MorTerm>, Box<MorTerm>),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MorError {
    #[error("type mismatch: cannot compose {g} after {f}: {found} is not {expected}")]
    TypeMismatch { f: String, g: String, expected: String, found: String },
    #[error("bad parameters for {kind}: expected {expected}, got {got}")]
    BadParams { kind: &'static str, expected: usize, got: usize },
    #[error("{0} has no inverse")]
    NotInvertible(String),
    #[error("named generator {0} present in a structural computation")]
    NamedGeneratorPresent(String),
    #[error("morphisms are not parallel: {0} vs {1}")]
    NotParallel(String, String),
    #[error("unsupported generator {0} for this operation")]
    UnsupportedGenerator(String),
}

impl MorTerm {
    pub fn type_of(&self) -> Result<(ObjTerm, ObjTerm), MorError> {
        match self {
            MorTerm::Id(x) => Ok((x.clone(), x.clone())),
            MorTerm::Struct { kind, params, dir } => {
                if params.len() != kind.arity() {
                    return Err(MorError::BadParams {
                        kind: kind.name(),
                        expected: kind.arity(),
                        got: params.len(),
                    });
                }
                if *dir == Dir::Inv && !kind.invertible() {
                    return Err(MorError::NotInvertible(kind.name().to_string()));
                }
                let (s, t) = kind.forward_type(params);
                Ok(match dir {
                    Dir::Fwd => (s, t),
                    Dir::Inv => (t, s),
                })
            }
            MorTerm::Named { src, tgt, .. } => Ok((src.clone(), tgt.clone())),
            MorTerm::VComp(g, f) => {
                let (fs, ft) = f.type_of()?;
                let (gs, gt) = g.type_of()?;
                if ft != gs {
                    return Err(MorError::TypeMismatch {
                        f: f.to_string(),
                        g: g.to_string(),
                        expected: gs.to_string(),
                        found: ft.to_string(),
                    });
                }
                Ok((fs, gt))
            }
            MorTerm::TensorM(f, g) => {
                let (fs, ft) = f.type_of()?;
                let (gs, gt) = g.type_of()?;
                Ok((tensor(fs, gs), tensor(ft, gt)))
            }
            MorTerm::OplusM(f, g) => {
                let (fs, ft) = f.type_of()?;
                let (gs, gt) = g.type_of()?;
                Ok((oplus(fs, gs), oplus(ft, gt)))
            }
        }
    }

    pub fn is_structural(&self) -> bool {
        match self {
            MorTerm::Id(_) | MorTerm::Struct { .. } => true,
            MorTerm::Named { .. } => false,
            MorTerm::VComp(a, b) | MorTerm::TensorM(a, b) | MorTerm::OplusM(a, b) => {
                a.is_structural() && b.is_structural()
            }
        }
    }

    pub fn first_named(&self) -> Option<&str> {
        match self {
            MorTerm::Id(_) | MorTerm::Struct { .. } => None,
            MorTerm::Named { id, .. } => Some(id),
            MorTerm::VComp(a, b) | MorTerm::TensorM(a, b) | MorTerm::OplusM(a, b) => {
                a.first_named().or_else(|| b.first_named())
            }
        }
    }

    pub fn inverse(&self) -> Result<MorTerm, MorError> {
        Ok(match self {
            MorTerm::Id(x) => MorTerm::Id(x.clone()),
            MorTerm::Struct { kind, params, dir } => {
                if !kind.invertible() {
                    return Err(MorError::NotInvertible(kind.name().to_string()));
                }
                let dir = match dir {
                    Dir::Fwd => Dir::Inv,
                    Dir::Inv => Dir::Fwd,
                };
                MorTerm::Struct { kind: *kind, params: params.clone(), dir }
            }
            MorTerm::Named { id, .. } => return Err(MorError::NotInvertible(id.to_string())),
            MorTerm::VComp(g, f) => MorTerm::VComp(Box::new(f.inverse()?), Box::new(g.inverse()?)),
            MorTerm::TensorM(f, g) => MorTerm::TensorM(Box::new(f.inverse()?), Box::new(g.inverse()?)),
            MorTerm::OplusM(f, g) => MorTerm::OplusM(Box::new(f.inverse()?), Box::new(g.inverse()?)),
        })
    }

    /// Composition chain in application order (first applied first).
    pub fn chain(&self) -> Vec<&MorTerm> {
        match self {
            MorTerm::VComp(g, f) => {
                let mut v = f.chain();
                v.extend(g.chain());
                v
            }
            other => vec![other],
        }
    }

    pub fn size(&self) -> usize {
        match self {
            MorTerm::Id(_) | MorTerm::Struct { .. } | MorTerm::Named { .. } => 1,
            MorTerm::VComp(a, b) | MorTerm::TensorM(a, b) | MorTerm::OplusM(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl fmt::Display for MorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorTerm::Id(x) => write!(f, "id[{x}]"),
            MorTerm::Struct { kind, params, dir } => {
                if *dir == Dir::Inv {
                    f.write_str("inv(")?;
                }
                write!(f, "{}[", kind.name())?;
                for (i, p) in params.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str("]")?;
                if *dir == Dir::Inv {
                    f.write_str(")")?;
                }
                Ok(())
            }
            MorTerm::Named { id, .. } => f.write_str(id),
            MorTerm::VComp(g, h) => write!(f, "comp({g},{h})"),
            MorTerm::TensorM(a, b) => write!(f, "ten({a},{b})"),
            MorTerm::OplusM(a, b) => write!(f, "plus({a},{b})"),
        }
    }
}

/// A morphism term with its checked source and target.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypedMor {
    pub term: MorTerm,
    pub src: ObjTerm,
    pub tgt: ObjTerm,
}

impl TypedMor {
    pub fn new(term: MorTerm) -> Result<Self, MorError> {
        let (src, tgt) = term.type_of()?;
        Ok(TypedMor { term, src, tgt })
    }

    pub fn id(x: ObjTerm) -> Self {
        TypedMor { term: MorTerm::Id(x.clone()), src: x.clone(), tgt: x }
    }

    pub fn structural(kind: Kind, params: Vec<ObjTerm>) -> Result<Self, MorError> {
        Self::new(MorTerm::Struct { kind, params, dir: Dir::Fwd })
    }

    pub fn named(id: &str, src: ObjTerm, tgt: ObjTerm) -> Self {
        TypedMor { term: MorTerm::Named { id: Arc::from(id), src: src.clone(), tgt: tgt.clone() }, src, tgt }
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &TypedMor) -> Result<TypedMor, MorError> {
        if f.tgt != self.src {
            return Err(MorError::TypeMismatch {
                f: f.term.to_string(),
                g: self.term.to_string(),
                expected: self.src.to_string(),
                found: f.tgt.to_string(),
            });
        }
        Ok(TypedMor {
            term: MorTerm::VComp(Box::new(self.term.clone()), Box::new(f.term.clone())),
            src: f.src.clone(),
            tgt: self.tgt.clone(),
        })
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &TypedMor) -> Result<TypedMor, MorError> {
        g.after(self)
    }

    pub fn tensor(&self, g: &TypedMor) -> TypedMor {
        TypedMor {
            term: MorTerm::TensorM(Box::new(self.term.clone()), Box::new(g.term.clone())),
            src: tensor(self.src.clone(), g.src.clone()),
            tgt: tensor(self.tgt.clone(), g.tgt.clone()),
        }
    }

    pub fn oplus(&self, g: &TypedMor) -> TypedMor {
        TypedMor {
            term: MorTerm::OplusM(Box::new(self.term.clone()), Box::new(g.term.clone())),
            src: oplus(self.src.clone(), g.src.clone()),
            tgt: oplus(self.tgt.clone(), g.tgt.clone()),
        }
    }

    pub fn inverse(&self) -> Result<TypedMor, MorError> {
        Ok(TypedMor { term: self.term.inverse()?, src: self.tgt.clone(), tgt: self.src.clone() })
    }

    pub fn is_structural(&self) -> bool {
        self.term.is_structural()
    }

    pub fn parallel_to(&self, other: &TypedMor) -> bool {
        self.src == other.src && self.tgt == other.tgt
    }

    /// Compose a non-empty list given in application order.
    pub fn chain(steps: &[TypedMor]) -> Result<TypedMor, MorError> {
        let mut it = steps.iter();
        let mut acc = it.next().expect("chain needs at least one morphism").clone();
        for s in it {
            acc = s.after(&acc)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for TypedMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} -> {}", self.term, self.src, self.tgt)
    }
}

/// A morphism of bracketed objects, carried by a morphism of the
/// underlying objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrMor {
    pub src: BrObj,
    pub tgt: BrObj,
    pub body: TypedMor,
}

impl BrMor {
    pub fn new(src: BrObj, tgt: BrObj, body: TypedMor) -> Result<Self, MorError> {
        let (us, ut) = (src.underlying(), tgt.underlying());
        if body.src != us || body.tgt != ut {
            return Err(MorError::NotParallel(
                format!("{} -> {}", body.src, body.tgt),
                format!("{us} -> {ut}"),
            ));
        }
        Ok(BrMor { src, tgt, body })
    }
}

macro_rules! ctor {
    ($name:ident, $kind:ident, $($p:ident),+) => {
        pub fn $name($($p: ObjTerm),+) -> TypedMor {
            TypedMor::structural(Kind::$kind, vec![$($p),+]).expect("arity fixed by constructor")
        }
    };
}

/// Constructors for the forward structural generators.
pub mod s {
    use super::*;
    ctor!(alpha_t, AlphaT, x, y, z);
    ctor!(lambda_t, LambdaT, x);
    ctor!(rho_t, RhoT, x);
    ctor!(xi_t, XiT, x, y);
    ctor!(alpha_p, AlphaP, x, y, z);
    ctor!(lambda_p, LambdaP, x);
    ctor!(rho_p, RhoP, x);
    ctor!(xi_p, XiP, x, y);
    ctor!(delta_l, DeltaL, a, b, c);
    ctor!(delta_r, DeltaR, a, b, c);
    ctor!(lambda_z, LambdaZ, a);
    ctor!(rho_z, RhoZ, a);
    ctor!(diag, Diag, a);
    ctor!(bang, Bang, a);

    pub fn inv(m: TypedMor) -> TypedMor {
        m.inverse().expect("inverse of a non-invertible constructor")
    }
}

#[cfg(test)]
mod tests {
    use super::s::*;
    use super::*;
    use crate::obj::gen;

    #[test]
    fn xi_types() {
        let (a, b) = (gen("a"), gen("b"));
        let x = xi_t(a.clone(), b.clone());
        assert_eq!((x.src.clone(), x.tgt.clone()), (tensor(a.clone(), b.clone()), tensor(b.clone(), a.clone())));
        let back = xi_t(b.clone(), a.clone()).after(&x).unwrap();
        assert_eq!(back.src, tensor(a.clone(), b.clone()));
        assert_eq!(back.tgt, tensor(a.clone(), b.clone()));
        assert!(matches!(x.after(&x), Err(MorError::TypeMismatch { .. })));
        let raw = MorTerm::VComp(Box::new(x.term.clone()), Box::new(x.term.clone()));
        assert!(matches!(raw.type_of(), Err(MorError::TypeMismatch { .. })));
    }

    #[test]
    fn bad_params_and_inverses() {
        let t = MorTerm::Struct { kind: Kind::AlphaT, params: vec![gen("a")], dir: Dir::Fwd };
        assert!(matches!(t.type_of(), Err(MorError::BadParams { .. })));
        assert!(diag(gen("a")).inverse().is_err());
        let d = delta_l(gen("a"), gen("b"), gen("c"));
        let di = d.inverse().unwrap();
        assert_eq!(di.src, d.tgt);
    }
}
