//! Seeded generators for terms, structural morphisms and parallel pairs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::decide::{to_monoidal_normal, whisker_at};
use crate::mor::{s, Dir, Kind, MorTerm, TypedMor};
use crate::obj::{gen, oplus, tensor, ObjTerm, Path, Side};

const NAMES: [&str; 5] = ["a", "b", "c", "d", "e"];

/// Random ⊗-term over a few generators and 𝟙, of depth at most `depth`
/// and with at most `max_gens` generator leaves.
pub fn monoidal_obj<R: Rng>(rng: &mut R, depth: usize, max_gens: usize) -> ObjTerm {
    let mut budget = max_gens;
    obj_inner(rng, depth, &mut budget, false)
}

/// Random {⊕,⊗,𝟙,𝟘}-term.
pub fn bimonoidal_obj<R: Rng>(rng: &mut R, depth: usize, max_gens: usize) -> ObjTerm {
    let mut budget = max_gens;
    obj_inner(rng, depth, &mut budget, true)
}

fn obj_inner<R: Rng>(rng: &mut R, depth: usize, budget: &mut usize, sums: bool) -> ObjTerm {
    let leaf = |rng: &mut R, budget: &mut usize| {
        let roll = rng.gen_range(0..10);
        if *budget == 0 || roll == 0 {
            ObjTerm::One
        } else if sums && roll == 1 {
            ObjTerm::Zero
        } else {
            *budget -= 1;
            gen(NAMES[rng.gen_range(0..NAMES.len())])
        }
    };
    if depth == 0 || *budget == 0 || rng.gen_bool(0.3) {
        return leaf(rng, budget);
    }
    let a = obj_inner(rng, depth - 1, budget, sums);
    let b = obj_inner(rng, depth - 1, budget, sums);
    if sums && rng.gen_bool(0.4) {
        oplus(a, b)
    } else {
        tensor(a, b)
    }
}

fn paths(x: &ObjTerm) -> Vec<Path> {
    fn go(x: &ObjTerm, cur: &mut Path, out: &mut Vec<Path>) {
        out.push(cur.clone());
        if let ObjTerm::Tensor(a, b) | ObjTerm::Oplus(a, b) = x {
            cur.push(Side::L);
            go(a, cur, out);
            cur.pop();
            cur.push(Side::R);
            go(b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(x, &mut Vec::new(), &mut out);
    out
}

fn inv(kind: Kind, params: Vec<ObjTerm>) -> TypedMor {
    TypedMor::new(MorTerm::Struct { kind, params, dir: Dir::Inv }).expect("typed inverse")
}

/// Steps applicable at the root of `x`.
fn local_steps(x: &ObjTerm, full: bool) -> Vec<TypedMor> {
    use ObjTerm::*;
    let mut out = Vec::new();
    if let Tensor(l, r) = x {
        let (l, r) = (&**l, &**r);
        if let Tensor(a, b) = l {
            out.push(s::alpha_t((**a).clone(), (**b).clone(), r.clone()));
        }
        if let Tensor(b, c) = r {
            out.push(inv(Kind::AlphaT, vec![l.clone(), (**b).clone(), (**c).clone()]));
        }
        if *l == One {
            out.push(s::lambda_t(r.clone()));
        }
        if *r == One {
            out.push(s::rho_t(l.clone()));
        }
        if full {
            out.push(s::xi_t(l.clone(), r.clone()));
            if let Oplus(b, c) = r {
                out.push(s::delta_l(l.clone(), (**b).clone(), (**c).clone()));
            }
            if let Oplus(a, b) = l {
                out.push(s::delta_r((**a).clone(), (**b).clone(), r.clone()));
            }
            if *l == Zero {
                out.push(s::lambda_z(r.clone()));
            }
            if *r == Zero {
                out.push(s::rho_z(l.clone()));
            }
        }
    }
    if full {
        if let Oplus(l, r) = x {
            let (l, r) = (&**l, &**r);
            out.push(s::xi_p(l.clone(), r.clone()));
            if let Oplus(a, b) = l {
                out.push(s::alpha_p((**a).clone(), (**b).clone(), r.clone()));
            }
            if let Oplus(b, c) = r {
                out.push(inv(Kind::AlphaP, vec![l.clone(), (**b).clone(), (**c).clone()]));
            }
            if *l == Zero {
                out.push(s::lambda_p(r.clone()));
            }
            if *r == Zero {
                out.push(s::rho_p(l.clone()));
            }
            if let (Tensor(a1, b), Tensor(a2, c)) = (l, r) {
                if a1 == a2 {
                    out.push(inv(Kind::DeltaL, vec![(**a1).clone(), (**b).clone(), (**c).clone()]));
                }
            }
            if let (Tensor(a, c1), Tensor(b, c2)) = (l, r) {
                if c1 == c2 {
                    out.push(inv(Kind::DeltaR, vec![(**a).clone(), (**b).clone(), (**c1).clone()]));
                }
            }
        }
    }
    out
}

/// Unit insertions, which grow the term.
fn growing_steps(x: &ObjTerm, full: bool) -> Vec<TypedMor> {
    let mut out = vec![inv(Kind::LambdaT, vec![x.clone()]), inv(Kind::RhoT, vec![x.clone()])];
    if full {
        out.push(inv(Kind::LambdaP, vec![x.clone()]));
        out.push(s::diag(x.clone()));
    }
    out
}

/// One random structural step out of `x`, whiskered to a random position,
/// keeping the result within `max_depth`.
pub fn random_step<R: Rng>(rng: &mut R, x: &ObjTerm, full: bool, max_depth: usize) -> Option<TypedMor> {
    let mut candidates = Vec::new();
    for p in paths(x) {
        let sub = x.subterm(&p).expect("enumerated path");
        for st in local_steps(sub, full) {
            candidates.push((p.clone(), st));
        }
        if rng.gen_bool(0.15) {
            for st in growing_steps(sub, full) {
                candidates.push((p.clone(), st));
            }
        }
    }
    candidates.shuffle(rng);
    for (p, st) in candidates {
        let m = whisker_at(x, &p, &st);
        if m.tgt.depth() <= max_depth && m.tgt.normalize().monomials.len() <= 16 {
            return Some(m);
        }
    }
    None
}

/// A random walk of structural steps starting at `x`.
pub fn random_walk<R: Rng>(rng: &mut R, x: &ObjTerm, steps: usize, full: bool, max_depth: usize) -> TypedMor {
    let mut acc = TypedMor::id(x.clone());
    for _ in 0..steps {
        match random_step(rng, &acc.tgt, full, max_depth) {
            Some(st) => acc = st.after(&acc).expect("step starts at current target"),
            None => break,
        }
    }
    acc
}

/// Two independently generated α/λ/ρ paths with common source and target.
pub fn monoidal_parallel_pair<R: Rng>(rng: &mut R, max_depth: usize, max_gens: usize) -> (TypedMor, TypedMor) {
    let x = monoidal_obj(rng, max_depth.saturating_sub(2).max(1), max_gens);
    let leg = |rng: &mut R| {
        let n = rng.gen_range(0..6);
        let w = random_walk(rng, &x, n, false, max_depth);
        to_monoidal_normal(&w.tgt).after(&w).expect("normalizer starts at walk target")
    };
    let f = leg(rng);
    let g = leg(rng);
    debug_assert_eq!(f.tgt, g.tgt);
    let n = rng.gen_range(0..3);
    let tail = random_walk(rng, &f.tgt, n, false, max_depth);
    (tail.after(&f).expect("tail typed"), tail.after(&g).expect("tail typed"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pairs_are_parallel_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let (f, g) = monoidal_parallel_pair(&mut rng, 6, 6);
            assert!(f.parallel_to(&g));
            assert!(f.src.depth() <= 6 && f.tgt.depth() <= 6);
        }
    }

    #[test]
    fn full_walks_typecheck() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let x = bimonoidal_obj(&mut rng, 3, 4);
            let w = random_walk(&mut rng, &x, 5, true, 6);
            assert_eq!(w.term.type_of().unwrap(), (w.src.clone(), w.tgt.clone()));
        }
    }
}
