//! Equality of formal morphisms: leaf-map comparison for structural
//! morphisms, layered comparison around named generators, canonical
//! rebracketing for the monoidal fragment and bounded congruence closure.

use std::collections::{HashSet, VecDeque};

use crate::leafmap::{leaf_map, LeafMap};
use crate::mor::{s, Dir, Kind, MorError, MorTerm, TypedMor};
use crate::obj::{oplus, tensor, ObjTerm, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Verdict {
    Equal,
    Unequal,
    Indeterminate,
}

fn check_parallel(f: &TypedMor, g: &TypedMor) -> Result<(), MorError> {
    if f.parallel_to(g) {
        Ok(())
    } else {
        Err(MorError::NotParallel(
            format!("{} -> {}", f.src, f.tgt),
            format!("{} -> {}", g.src, g.tgt),
        ))
    }
}

pub fn decide_equal(f: &TypedMor, g: &TypedMor) -> Result<Verdict, MorError> {
    check_parallel(f, g)?;
    if f.term == g.term {
        return Ok(Verdict::Equal);
    }
    if f.is_structural() && g.is_structural() {
        let same = leaf_map(f)? == leaf_map(g)?;
        return Ok(if same { Verdict::Equal } else { Verdict::Unequal });
    }
    // 𝟘 is a zero object in every model category in scope: all arrows out of
    // or into an object with empty normal form coincide.
    if f.src.normalize().monomials.is_empty() || f.tgt.normalize().monomials.is_empty() {
        return Ok(Verdict::Equal);
    }
    let lf = layered(&f.term)?;
    let lg = layered(&g.term)?;
    Ok(compare_layers(&lf, &lg)?)
}

#[derive(Debug, Clone)]
enum Layer {
    Struct(TypedMor),
    Gen(TypedMor),
}

impl Layer {
    fn mor(&self) -> &TypedMor {
        match self {
            Layer::Struct(m) | Layer::Gen(m) => m,
        }
    }
}

fn raw_layers(t: &MorTerm) -> Result<Vec<Layer>, MorError> {
    Ok(match t {
        MorTerm::Id(_) | MorTerm::Struct { .. } => vec![Layer::Struct(TypedMor::new(t.clone())?)],
        MorTerm::Named { .. } => vec![Layer::Gen(TypedMor::new(t.clone())?)],
        MorTerm::VComp(g, f) => {
            let mut v = raw_layers(f)?;
            v.extend(raw_layers(g)?);
            v
        }
        MorTerm::TensorM(f, g) | MorTerm::OplusM(f, g) => {
            let is_t = matches!(t, MorTerm::TensorM(..));
            let (gs, _) = g.type_of()?;
            let (_, ft) = f.type_of()?;
            let combine = |a: &TypedMor, b: &TypedMor| if is_t { a.tensor(b) } else { a.oplus(b) };
            let mut v = Vec::new();
            for l in raw_layers(f)? {
                let m = combine(l.mor(), &TypedMor::id(gs.clone()));
                v.push(match l {
                    Layer::Struct(_) => Layer::Struct(m),
                    Layer::Gen(_) => Layer::Gen(m),
                });
            }
            for l in raw_layers(g)? {
                let m = combine(&TypedMor::id(ft.clone()), l.mor());
                v.push(match l {
                    Layer::Struct(_) => Layer::Struct(m),
                    Layer::Gen(_) => Layer::Gen(m),
                });
            }
            v
        }
    })
}

/// Alternating structural / generator layers, starting and ending structural.
fn layered(t: &MorTerm) -> Result<Vec<Layer>, MorError> {
    let mut out: Vec<Layer> = Vec::new();
    for l in raw_layers(t)? {
        match (out.last_mut(), l) {
            (Some(Layer::Struct(prev)), Layer::Struct(m)) => *prev = m.after(prev)?,
            (Some(Layer::Gen(prev)), Layer::Gen(m)) => {
                let id = TypedMor::id(prev.tgt.clone());
                out.push(Layer::Struct(id));
                out.push(Layer::Gen(m));
            }
            (None, Layer::Gen(m)) => {
                out.push(Layer::Struct(TypedMor::id(m.src.clone())));
                out.push(Layer::Gen(m));
            }
            (_, l) => out.push(l),
        }
    }
    if let Some(Layer::Gen(m)) = out.last() {
        let id = TypedMor::id(m.tgt.clone());
        out.push(Layer::Struct(id));
    }
    Ok(out)
}

/// Where the single named generator of a whiskered layer sits.
enum Ctx {
    Hole,
    TL(Box<Ctx>, ObjTerm),
    TR(ObjTerm, Box<Ctx>),
    PL(Box<Ctx>, ObjTerm),
    PR(ObjTerm, Box<Ctx>),
}

fn split_gen(t: &MorTerm) -> Option<(TypedMor, Ctx)> {
    match t {
        MorTerm::Named { .. } => Some((TypedMor::new(t.clone()).ok()?, Ctx::Hole)),
        MorTerm::TensorM(a, b) | MorTerm::OplusM(a, b) => {
            let is_t = matches!(t, MorTerm::TensorM(..));
            match (&**a, &**b) {
                (MorTerm::Id(x), other) => {
                    let (f, c) = split_gen(other)?;
                    Some((f, if is_t { Ctx::TR(x.clone(), Box::new(c)) } else { Ctx::PR(x.clone(), Box::new(c)) }))
                }
                (other, MorTerm::Id(y)) => {
                    let (f, c) = split_gen(other)?;
                    Some((f, if is_t { Ctx::TL(Box::new(c), y.clone()) } else { Ctx::PL(Box::new(c), y.clone()) }))
                }
                _ => None,
            }
        }
        _ => None,
    }
}

/// Structural iso C[X] → (X⊗Z)⊕W, with Z and W.
fn expose(c: &Ctx, x: &ObjTerm) -> (TypedMor, ObjTerm, ObjTerm) {
    let id = |o: &ObjTerm| TypedMor::id(o.clone());
    let chain = |v: &[TypedMor]| TypedMor::chain(v).expect("exposing isomorphism is typed");
    match c {
        Ctx::Hole => {
            let m = chain(&[s::inv(s::rho_t(x.clone())), s::inv(s::rho_p(tensor(x.clone(), ObjTerm::One)))]);
            (m, ObjTerm::One, ObjTerm::Zero)
        }
        Ctx::TL(c, r) => {
            let (m, z, w) = expose(c, x);
            let xz = tensor(x.clone(), z.clone());
            let wr = tensor(w.clone(), r.clone());
            let m = chain(&[
                m.tensor(&id(r)),
                s::delta_r(xz, w, r.clone()),
                s::alpha_t(x.clone(), z.clone(), r.clone()).oplus(&id(&wr)),
            ]);
            (m, tensor(z, r.clone()), wr)
        }
        Ctx::TR(l, c) => {
            let (m, z, w) = expose(c, x);
            let xz = tensor(x.clone(), z.clone());
            let lw = tensor(l.clone(), w.clone());
            let swap = chain(&[
                s::inv(s::alpha_t(l.clone(), x.clone(), z.clone())),
                s::xi_t(l.clone(), x.clone()).tensor(&id(&z)),
                s::alpha_t(x.clone(), l.clone(), z.clone()),
            ]);
            let m = chain(&[id(l).tensor(&m), s::delta_l(l.clone(), xz, w), swap.oplus(&id(&lw))]);
            (m, tensor(l.clone(), z), lw)
        }
        Ctx::PL(c, r) => {
            let (m, z, w) = expose(c, x);
            let xz = tensor(x.clone(), z.clone());
            let m = chain(&[m.oplus(&id(r)), s::alpha_p(xz, w.clone(), r.clone())]);
            (m, z, oplus(w, r.clone()))
        }
        Ctx::PR(l, c) => {
            let (m, z, w) = expose(c, x);
            let xz = tensor(x.clone(), z.clone());
            let m = chain(&[
                id(l).oplus(&m),
                s::inv(s::alpha_p(l.clone(), xz.clone(), w.clone())),
                s::xi_p(l.clone(), xz.clone()).oplus(&id(&w)),
                s::alpha_p(xz, l.clone(), w.clone()),
            ]);
            (m, z, oplus(l.clone(), w))
        }
    }
}

struct GenSlot {
    f: TypedMor,
    z: ObjTerm,
    w: ObjTerm,
}

/// Structural segments with each generator moved to the front of its
/// layer: s_k ∘ ((f_k⊗Z_k)⊕W_k) ∘ … ∘ ((f_1⊗Z_1)⊕W_1) ∘ s_0.
fn canonical(layers: &[Layer]) -> Option<(Vec<TypedMor>, Vec<GenSlot>)> {
    let mut structs = Vec::new();
    let mut slots = Vec::new();
    let mut pending: Option<TypedMor> = None;
    for l in layers {
        match l {
            Layer::Struct(m) => {
                let m = match pending.take() {
                    Some(back) => m.after(&back).ok()?,
                    None => m.clone(),
                };
                structs.push(m);
            }
            Layer::Gen(m) => {
                let (f, c) = split_gen(&m.term)?;
                let (sx, z, w) = expose(&c, &f.src);
                let (sy, _, _) = expose(&c, &f.tgt);
                let last = structs.pop()?;
                structs.push(sx.after(&last).ok()?);
                pending = Some(sy.inverse().ok()?);
                slots.push(GenSlot { f, z, w });
            }
        }
    }
    if pending.is_some() {
        return None;
    }
    Some((structs, slots))
}

/// Split D on (X⊗Z)⊕W as (id_X⊗τ)⊕ω, returning the same shape on Y.
fn slide(d: &LeafMap, px: &Poly, pz: &Poly, pw: &Poly, py: &Poly) -> Option<LeafMap> {
    let (nx, nz, nw) = (px.monomials.len(), pz.monomials.len(), pw.monomials.len());
    if nx == 0 || d.mono_map.len() != nx * nz + nw {
        return None;
    }
    let lx0 = px.monomials[0].len();
    let mut tau = LeafMap::identity(pz.clone());
    for j in 0..nz {
        let src = d.mono_map[j];
        if src >= nz {
            return None;
        }
        tau.mono_map[j] = src;
        tau.leaf_pos[j] = d.leaf_pos[j].get(lx0..)?.iter().map(|p| p.checked_sub(lx0)).collect::<Option<_>>()?;
    }
    let mut omega = LeafMap::identity(pw.clone());
    for j in 0..nw {
        let t = nx * nz + j;
        omega.mono_map[j] = d.mono_map[t].checked_sub(nx * nz)?;
        omega.leaf_pos[j] = d.leaf_pos[t].clone();
    }
    let candidate = LeafMap::identity(px.clone()).tensor(&tau).oplus(&omega);
    if candidate.mono_map != d.mono_map || candidate.leaf_pos != d.leaf_pos {
        return None;
    }
    Some(LeafMap::identity(py.clone()).tensor(&tau).oplus(&omega))
}

fn compare_layers(a: &[Layer], b: &[Layer]) -> Result<Verdict, MorError> {
    if a.len() != b.len() {
        return Ok(Verdict::Indeterminate);
    }
    let (Some((sa, ga)), Some((sb, gb))) = (canonical(a), canonical(b)) else {
        return Ok(Verdict::Indeterminate);
    };
    for (x, y) in ga.iter().zip(&gb) {
        if x.f.term != y.f.term || x.z.normalize().shape() != y.z.normalize().shape() || x.w.normalize().shape() != y.w.normalize().shape() {
            return Ok(Verdict::Indeterminate);
        }
    }
    // b's structural segment, corrected by what was slid through the previous generator
    let mut carry: Option<LeafMap> = None;
    for (i, (ma, mb)) in sa.iter().zip(&sb).enumerate() {
        let la = leaf_map(ma)?;
        let mut lb = leaf_map(mb)?;
        if let Some(c) = carry.take() {
            lb = lb.after(&c);
        }
        if i == ga.len() {
            return Ok(if la == lb { Verdict::Equal } else { Verdict::Indeterminate });
        }
        if la == lb {
            continue;
        }
        let Some(inv) = la.inverse() else { return Ok(Verdict::Indeterminate) };
        let d = lb.after(&inv);
        let g = &ga[i];
        let (px, pz, pw, py) = (g.f.src.normalize(), g.z.normalize(), g.w.normalize(), g.f.tgt.normalize());
        match slide(&d, &px, &pz, &pw, &py) {
            Some(dy) => carry = Some(dy),
            None => return Ok(Verdict::Indeterminate),
        }
    }
    Ok(Verdict::Equal)
}

fn is_monoidal(t: &MorTerm) -> Result<(), MorError> {
    match t {
        MorTerm::Id(_) => Ok(()),
        MorTerm::Struct { kind: Kind::AlphaT | Kind::LambdaT | Kind::RhoT, .. } => Ok(()),
        MorTerm::Struct { kind, .. } => Err(MorError::UnsupportedGenerator(kind.name().to_string())),
        MorTerm::Named { id, .. } => Err(MorError::UnsupportedGenerator(id.to_string())),
        MorTerm::VComp(a, b) | MorTerm::TensorM(a, b) => {
            is_monoidal(a)?;
            is_monoidal(b)
        }
        MorTerm::OplusM(..) => Err(MorError::UnsupportedGenerator("plus".to_string())),
    }
}

/// Canonical α/λ/ρ composite from `x` to its right-nested, 𝟙-free form.
/// Sums are normalized summand-wise.
pub fn to_monoidal_normal(x: &ObjTerm) -> TypedMor {
    match x {
        ObjTerm::Gen(_) | ObjTerm::One | ObjTerm::Zero => TypedMor::id(x.clone()),
        ObjTerm::Oplus(a, b) => to_monoidal_normal(a).oplus(&to_monoidal_normal(b)),
        ObjTerm::Tensor(a, b) => {
            let na = to_monoidal_normal(a);
            let nb = to_monoidal_normal(b);
            let step = na.tensor(&nb);
            let merge = merge_normal(&na.tgt, &nb.tgt);
            merge.after(&step).expect("merge starts at the product of normal forms")
        }
    }
}

/// `a ⊗ b → normal` for `a`, `b` already in right-nested 𝟙-free form.
fn merge_normal(a: &ObjTerm, b: &ObjTerm) -> TypedMor {
    match (a, b) {
        (ObjTerm::One, _) => s::lambda_t(b.clone()),
        (_, ObjTerm::One) => s::rho_t(a.clone()),
        (ObjTerm::Tensor(g, rest), _) => {
            let assoc = s::alpha_t((**g).clone(), (**rest).clone(), b.clone());
            let inner = TypedMor::id((**g).clone()).tensor(&merge_normal(rest, b));
            inner.after(&assoc).expect("association lands on g ⊗ (rest ⊗ b)")
        }
        _ => TypedMor::id(tensor(a.clone(), b.clone())),
    }
}

/// Remove identities, collapse ⊗/⊕ of identities and cancel adjacent
/// inverse pairs.
pub fn simplify(m: &TypedMor) -> TypedMor {
    fn go(t: &MorTerm) -> MorTerm {
        match t {
            MorTerm::TensorM(a, b) | MorTerm::OplusM(a, b) => {
                let (a, b) = (go(a), go(b));
                let is_t = matches!(t, MorTerm::TensorM(..));
                match (&a, &b) {
                    (MorTerm::Id(x), MorTerm::Id(y)) => {
                        MorTerm::Id(if is_t { tensor(x.clone(), y.clone()) } else { oplus(x.clone(), y.clone()) })
                    }
                    _ if is_t => MorTerm::TensorM(Box::new(a), Box::new(b)),
                    _ => MorTerm::OplusM(Box::new(a), Box::new(b)),
                }
            }
            MorTerm::VComp(..) => {
                let mut stack: Vec<MorTerm> = Vec::new();
                for step in t.chain() {
                    let step = go(step);
                    if let MorTerm::Id(_) = step {
                        continue;
                    }
                    if let Some(top) = stack.last() {
                        if top.inverse().ok().as_ref() == Some(&step) {
                            stack.pop();
                            continue;
                        }
                    }
                    stack.push(step);
                }
                let mut it = stack.into_iter();
                match it.next() {
                    None => MorTerm::Id(t.type_of().expect("typed input").0),
                    Some(first) => it.fold(first, |acc, s| MorTerm::VComp(Box::new(s), Box::new(acc))),
                }
            }
            other => other.clone(),
        }
    }
    TypedMor { term: go(&m.term), src: m.src.clone(), tgt: m.tgt.clone() }
}

pub fn normalize_monoidal(f: &TypedMor) -> Result<TypedMor, MorError> {
    is_monoidal(&f.term)?;
    let ns = to_monoidal_normal(&f.src);
    let nt = to_monoidal_normal(&f.tgt);
    let back = nt.inverse()?;
    let total = back.after(&ns).map_err(|_| {
        MorError::NotParallel(ns.tgt.to_string(), nt.tgt.to_string())
    })?;
    Ok(simplify(&total))
}

#[derive(Debug, Clone, Default)]
pub struct Congruence {
    pub relations: Vec<(TypedMor, TypedMor)>,
}

impl Congruence {
    pub fn new(relations: Vec<(TypedMor, TypedMor)>) -> Result<Self, MorError> {
        for (a, b) in &relations {
            check_parallel(a, b)?;
        }
        Ok(Congruence { relations })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientVerdict {
    Equal,
    Unknown,
}

fn rewrites(t: &MorTerm, rules: &[(MorTerm, MorTerm)], out: &mut Vec<MorTerm>) {
    for (l, r) in rules {
        if t == l {
            out.push(r.clone());
        }
    }
    let rebuild = |a: &MorTerm, b: &MorTerm, which: u8| -> Vec<MorTerm> {
        let mut sub = Vec::new();
        if which == 0 {
            rewrites(a, rules, &mut sub);
        } else {
            rewrites(b, rules, &mut sub);
        }
        sub.into_iter()
            .map(|s| {
                let (x, y) = if which == 0 { (s, b.clone()) } else { (a.clone(), s) };
                match t {
                    MorTerm::VComp(..) => MorTerm::VComp(Box::new(x), Box::new(y)),
                    MorTerm::TensorM(..) => MorTerm::TensorM(Box::new(x), Box::new(y)),
                    _ => MorTerm::OplusM(Box::new(x), Box::new(y)),
                }
            })
            .collect()
    };
    if let MorTerm::VComp(a, b) | MorTerm::TensorM(a, b) | MorTerm::OplusM(a, b) = t {
        out.extend(rebuild(a, b, 0));
        out.extend(rebuild(a, b, 1));
    }
}

const QUOTIENT_FRONTIER_CAP: usize = 4096;

/// Sound, bounded search for a rewrite path between `f` and `g`.
pub fn quotient_equal(f: &TypedMor, g: &TypedMor, rel: &Congruence, depth: usize) -> Result<QuotientVerdict, MorError> {
    check_parallel(f, g)?;
    let mut rules = Vec::new();
    for (a, b) in &rel.relations {
        rules.push((a.term.clone(), b.term.clone()));
        rules.push((b.term.clone(), a.term.clone()));
    }
    let target = |t: &MorTerm| -> bool {
        if t == &g.term {
            return true;
        }
        let m = TypedMor { term: t.clone(), src: f.src.clone(), tgt: f.tgt.clone() };
        matches!(decide_equal(&m, g), Ok(Verdict::Equal))
    };
    let mut seen: HashSet<MorTerm> = HashSet::new();
    let mut queue: VecDeque<(MorTerm, usize)> = VecDeque::new();
    seen.insert(f.term.clone());
    queue.push_back((f.term.clone(), 0));
    while let Some((t, d)) = queue.pop_front() {
        if target(&t) {
            return Ok(QuotientVerdict::Equal);
        }
        if d == depth {
            continue;
        }
        let mut next = Vec::new();
        rewrites(&t, &rules, &mut next);
        for n in next {
            if seen.len() >= QUOTIENT_FRONTIER_CAP {
                break;
            }
            if seen.insert(n.clone()) {
                queue.push_back((n, d + 1));
            }
        }
    }
    Ok(QuotientVerdict::Unknown)
}

/// Whisker a morphism into position `path` of `context`, identity elsewhere.
pub fn whisker_at(context: &ObjTerm, path: &[crate::obj::Side], m: &TypedMor) -> TypedMor {
    use crate::obj::Side;
    let Some((first, rest)) = path.split_first() else {
        return m.clone();
    };
    match (context, first) {
        (ObjTerm::Tensor(a, b), Side::L) => whisker_at(a, rest, m).tensor(&TypedMor::id((**b).clone())),
        (ObjTerm::Tensor(a, b), Side::R) => TypedMor::id((**a).clone()).tensor(&whisker_at(b, rest, m)),
        (ObjTerm::Oplus(a, b), Side::L) => whisker_at(a, rest, m).oplus(&TypedMor::id((**b).clone())),
        (ObjTerm::Oplus(a, b), Side::R) => TypedMor::id((**a).clone()).oplus(&whisker_at(b, rest, m)),
        _ => panic!("whisker path leaves the term"),
    }
}

/// Direction-flipped structural generator, for callers building inverse legs.
pub fn structural_inverse(kind: Kind, params: Vec<ObjTerm>) -> Result<TypedMor, MorError> {
    TypedMor::new(MorTerm::Struct { kind, params, dir: Dir::Inv })
}
