//! Object terms of the free {⊕,⊗}-algebra, bracketed objects and
//! sum-of-products normal forms.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenKind {
    Abstract,
    /// Bound to a concrete C*-algebra (𝕂, 𝕄ₙ, C₀(X)); still needs a dimension in a model.
    ModelBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub id: Arc<str>,
    pub kind: GenKind,
}

impl Generator {
    pub fn new(id: &str) -> Self {
        Generator { id: Arc::from(id), kind: GenKind::Abstract }
    }

    pub fn bound(id: &str) -> Self {
        Generator { id: Arc::from(id), kind: GenKind::ModelBound }
    }

    /// The stabilization algebra 𝕂.
    pub fn compacts() -> Self {
        Self::bound("K")
    }

    pub fn matrices(n: usize) -> Self {
        Self::bound(&format!("M{n}"))
    }

    pub fn c0(space: &str) -> Self {
        Self::bound(&format!("C0_{space}"))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ObjTerm {
    Gen(Generator),
    One,
    Zero,
    Tensor(Box<ObjTerm>, Box<ObjTerm>),
    Oplus(Box<ObjTerm>, Box<ObjTerm>),
}

pub fn gen(id: &str) -> ObjTerm {
    ObjTerm::Gen(Generator::new(id))
}

pub fn tensor(a: ObjTerm, b: ObjTerm) -> ObjTerm {
    ObjTerm::Tensor(Box::new(a), Box::new(b))
}

pub fn oplus(a: ObjTerm, b: ObjTerm) -> ObjTerm {
    ObjTerm::Oplus(Box::new(a), Box::new(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    L,
    R,
}

pub type Path = Vec<Side>;

impl ObjTerm {
    /// Number of atomic leaves; 𝟙 and 𝟘 count as one.
    pub fn length(&self) -> usize {
        match self {
            ObjTerm::Gen(_) | ObjTerm::One | ObjTerm::Zero => 1,
            ObjTerm::Tensor(a, b) | ObjTerm::Oplus(a, b) => a.length() + b.length(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ObjTerm::Gen(_) | ObjTerm::One | ObjTerm::Zero => 0,
            ObjTerm::Tensor(a, b) | ObjTerm::Oplus(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Left-to-right positions of generator leaves.
    pub fn leaf_addresses(&self) -> Vec<Path> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.collect_addresses(&mut cur, &mut out);
        out
    }

    fn collect_addresses(&self, cur: &mut Path, out: &mut Vec<Path>) {
        match self {
            ObjTerm::Gen(_) => out.push(cur.clone()),
            ObjTerm::One | ObjTerm::Zero => {}
            ObjTerm::Tensor(a, b) | ObjTerm::Oplus(a, b) => {
                cur.push(Side::L);
                a.collect_addresses(cur, out);
                cur.pop();
                cur.push(Side::R);
                b.collect_addresses(cur, out);
                cur.pop();
            }
        }
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        self.collect_gens(&mut out);
        out
    }

    fn collect_gens(&self, out: &mut Vec<Generator>) {
        match self {
            ObjTerm::Gen(g) => {
                if !out.contains(g) {
                    out.push(g.clone())
                }
            }
            ObjTerm::One | ObjTerm::Zero => {}
            ObjTerm::Tensor(a, b) | ObjTerm::Oplus(a, b) => {
                a.collect_gens(out);
                b.collect_gens(out);
            }
        }
    }

    pub fn subterm(&self, path: &[Side]) -> Option<&ObjTerm> {
        let Some((first, rest)) = path.split_first() else {
            return Some(self);
        };
        match (self, first) {
            (ObjTerm::Tensor(a, _) | ObjTerm::Oplus(a, _), Side::L) => a.subterm(rest),
            (ObjTerm::Tensor(_, b) | ObjTerm::Oplus(_, b), Side::R) => b.subterm(rest),
            _ => None,
        }
    }

    pub fn normalize(&self) -> Poly {
        let mut next = 0;
        self.normalize_from(&mut next)
    }

    fn normalize_from(&self, next: &mut usize) -> Poly {
        match self {
            ObjTerm::Gen(g) => {
                let leaf = Leaf { gen: g.clone(), occ: *next };
                *next += 1;
                Poly { monomials: vec![vec![leaf]] }
            }
            ObjTerm::One => Poly::one(),
            ObjTerm::Zero => Poly::zero(),
            ObjTerm::Oplus(a, b) => {
                let mut p = a.normalize_from(next);
                p.monomials.extend(b.normalize_from(next).monomials);
                p
            }
            ObjTerm::Tensor(a, b) => {
                let pa = a.normalize_from(next);
                let pb = b.normalize_from(next);
                pa.times(&pb)
            }
        }
    }
}

impl fmt::Display for ObjTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjTerm::Gen(g) => write!(f, "{g}"),
            ObjTerm::One => f.write_str("1"),
            ObjTerm::Zero => f.write_str("0"),
            ObjTerm::Tensor(a, b) => write!(f, "({a} * {b})"),
            ObjTerm::Oplus(a, b) => write!(f, "({a} + {b})"),
        }
    }
}

/// Placeholder words `_`, `w ⊗ w`, `w ⊕ w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Word {
    Hole,
    TensorW(Box<Word>, Box<Word>),
    OplusW(Box<Word>, Box<Word>),
}

impl Word {
    pub fn tensor(a: Word, b: Word) -> Word {
        Word::TensorW(Box::new(a), Box::new(b))
    }

    pub fn oplus(a: Word, b: Word) -> Word {
        Word::OplusW(Box::new(a), Box::new(b))
    }

    pub fn length(&self) -> usize {
        match self {
            Word::Hole => 1,
            Word::TensorW(a, b) | Word::OplusW(a, b) => a.length() + b.length(),
        }
    }

    /// Substitute `items` into the holes left to right.
    pub fn fill<T: Clone>(&self, items: &[T], tensor: &dyn Fn(T, T) -> T, plus: &dyn Fn(T, T) -> T) -> T {
        let mut i = 0;
        self.fill_inner(items, &mut i, tensor, plus)
    }

    fn fill_inner<T: Clone>(
        &self,
        items: &[T],
        i: &mut usize,
        tensor: &dyn Fn(T, T) -> T,
        plus: &dyn Fn(T, T) -> T,
    ) -> T {
        match self {
            Word::Hole => {
                let t = items[*i].clone();
                *i += 1;
                t
            }
            Word::TensorW(a, b) => {
                let x = a.fill_inner(items, i, tensor, plus);
                let y = b.fill_inner(items, i, tensor, plus);
                tensor(x, y)
            }
            Word::OplusW(a, b) => {
                let x = a.fill_inner(items, i, tensor, plus);
                let y = b.fill_inner(items, i, tensor, plus);
                plus(x, y)
            }
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Hole => f.write_str("_"),
            Word::TensorW(a, b) => write!(f, "({a} * {b})"),
            Word::OplusW(a, b) => write!(f, "({a} + {b})"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ObjError {
    #[error("bracketed object has {items} items but its word has {holes} holes")]
    LengthMismatch { items: usize, holes: usize },
    #[error("bracketed object needs at least one item")]
    Empty,
}

/// A sequence of objects together with a bracketing word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BrObj {
    items: Vec<ObjTerm>,
    shape: Word,
}

impl BrObj {
    pub fn new(items: Vec<ObjTerm>, shape: Word) -> Result<Self, ObjError> {
        if items.is_empty() {
            return Err(ObjError::Empty);
        }
        if items.len() != shape.length() {
            return Err(ObjError::LengthMismatch { items: items.len(), holes: shape.length() });
        }
        Ok(BrObj { items, shape })
    }

    pub fn single(item: ObjTerm) -> Self {
        BrObj { items: vec![item], shape: Word::Hole }
    }

    pub fn items(&self) -> &[ObjTerm] {
        &self.items
    }

    pub fn shape(&self) -> &Word {
        &self.shape
    }

    pub fn underlying(&self) -> ObjTerm {
        self.shape.fill(&self.items, &tensor, &oplus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Leaf {
    pub gen: Generator,
    pub occ: usize,
}

pub type Monomial = Vec<Leaf>;

/// Fully distributed sum of products. `[]` is 𝟘 and `[[]]` is 𝟙.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    pub monomials: Vec<Monomial>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { monomials: vec![] }
    }

    pub fn one() -> Self {
        Poly { monomials: vec![vec![]] }
    }

    /// Outer loop over the left factor: δʳ first, then δˡ.
    pub fn times(&self, other: &Poly) -> Poly {
        let mut monomials = Vec::with_capacity(self.monomials.len() * other.monomials.len());
        for m in &self.monomials {
            for n in &other.monomials {
                let mut mn = m.clone();
                mn.extend(n.iter().cloned());
                monomials.push(mn);
            }
        }
        Poly { monomials }
    }

    /// Generator ids only, forgetting occurrence provenance.
    pub fn shape(&self) -> Vec<Vec<Arc<str>>> {
        self.monomials.iter().map(|m| m.iter().map(|l| l.gen.id.clone()).collect()).collect()
    }

    /// Right-nested sum of right-nested products.
    pub fn render(&self) -> ObjTerm {
        fn product(m: &[Leaf]) -> ObjTerm {
            match m {
                [] => ObjTerm::One,
                [l] => ObjTerm::Gen(l.gen.clone()),
                [l, rest @ ..] => tensor(ObjTerm::Gen(l.gen.clone()), product(rest)),
            }
        }
        fn sum(ms: &[Monomial]) -> ObjTerm {
            match ms {
                [] => ObjTerm::Zero,
                [m] => product(m),
                [m, rest @ ..] => oplus(product(m), sum(rest)),
            }
        }
        sum(&self.monomials)
    }

    pub fn occurrences(&self) -> std::collections::BTreeSet<usize> {
        self.monomials.iter().flatten().map(|l| l.occ).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, m) in self.monomials.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, l) in m.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", l.gen)?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> (ObjTerm, ObjTerm, ObjTerm) {
        (gen("a"), gen("b"), gen("c"))
    }

    #[test]
    fn lengths() {
        let (a, b, c) = abc();
        assert_eq!(a.length(), 1);
        assert_eq!(oplus(tensor(a, b), c).length(), 3);
        let w = Word::tensor(Word::oplus(Word::Hole, Word::Hole), Word::oplus(Word::Hole, Word::Hole));
        assert_eq!(w.length(), 4);
    }

    #[test]
    fn underlying_substitutes_in_order() {
        let names = ["A", "B", "C", "D"].map(gen).to_vec();
        let w = Word::tensor(Word::oplus(Word::Hole, Word::Hole), Word::oplus(Word::Hole, Word::Hole));
        let b = BrObj::new(names, w).unwrap();
        assert_eq!(b.underlying(), tensor(oplus(gen("A"), gen("B")), oplus(gen("C"), gen("D"))));
        assert_eq!(BrObj::single(gen("A")).underlying(), gen("A"));
        assert!(matches!(
            BrObj::new(vec![gen("A")], Word::tensor(Word::Hole, Word::Hole)),
            Err(ObjError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn normal_forms() {
        let (a, b, c) = abc();
        let p = tensor(a.clone(), oplus(b.clone(), c.clone())).normalize();
        assert_eq!(p.to_string(), "[[a,b],[a,c]]");
        assert_eq!(tensor(ObjTerm::Zero, a.clone()).normalize(), Poly::zero());
        let d = gen("d");
        let p = tensor(oplus(a.clone(), b.clone()), oplus(c, d)).normalize();
        assert_eq!(p.to_string(), "[[a,c],[a,d],[b,c],[b,d]]");
        assert_eq!(tensor(ObjTerm::One, a).normalize().to_string(), "[[a]]");
    }

    #[test]
    fn addresses() {
        let (a, b, c) = abc();
        use Side::*;
        assert_eq!(tensor(a.clone(), b.clone()).leaf_addresses(), vec![vec![L], vec![R]]);
        assert_eq!(
            tensor(oplus(a, b), c).leaf_addresses(),
            vec![vec![L, L], vec![L, R], vec![R]]
        );
        assert!(ObjTerm::One.leaf_addresses().is_empty());
    }
}
