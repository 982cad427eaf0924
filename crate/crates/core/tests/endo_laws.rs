use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rigcalc::endo::*;
use rigcalc::model::{equal_in_model, random_models};
use rigcalc::obj::gen;
use rigcalc::{decide_equal, TypedMor, Verdict};

fn tt<R: Rng>(r: &mut R) -> TTEndo {
    match r.gen_range(0..5) {
        0 => TTEndo::Id,
        1 => TTEndo::K,
        2 => TTEndo::Mn(r.gen_range(2..4)),
        3 => TTEndo::DA(gen(["a", "b"][r.gen_range(0..2)])),
        _ => TTEndo::CX("I".into()),
    }
}

fn br<R: Rng>(r: &mut R, depth: usize) -> BrEndo {
    if depth == 0 || r.gen_bool(0.4) {
        return BrEndo::single(tt(r));
    }
    let a = br(r, depth - 1);
    let b = br(r, depth - 1);
    if r.gen_bool(0.5) {
        a.compose(&b)
    } else {
        a.plus(&b)
    }
}

fn equal(f: &TypedMor, g: &TypedMor) -> bool {
    assert!(f.parallel_to(g), "{f}\n{g}");
    decide_equal(f, g).unwrap() == Verdict::Equal
}

/// Both the symbolic check and three matrix models.
fn equal_everywhere(f: &TypedMor, g: &TypedMor, seed: u64) -> bool {
    let mut gens = f.src.generators();
    gens.extend(f.tgt.generators());
    equal(f, g) && random_models(&gens, 3, 3, seed).iter().all(|m| equal_in_model(f, g, m, 0.0).unwrap())
}

#[test]
fn kappa_left_diagram() {
    let mut r = ChaCha8Rng::seed_from_u64(11);
    for seed in 0..40 {
        let t = BrEndo::single(tt(&mut r));
        let u = BrEndo::single(tt(&mut r));
        let f = br(&mut r, 2);
        let lhs = kappa_br(&t.compose(&u), &f);
        let rhs = EndoMor::chain(&[
            assoc(&t, &u, &f),
            EndoMor::id(&t).hcomp(&kappa_br(&u, &f)),
            assoc(&t, &f, &u).inverse().unwrap(),
            kappa_br(&t, &f).hcomp(&EndoMor::id(&u)),
            assoc(&f, &t, &u),
        ])
        .unwrap();
        assert_eq!((lhs.src.clone(), lhs.tgt.clone()), (rhs.src.clone(), rhs.tgt.clone()));
        assert!(equal_everywhere(&lhs.body, &rhs.body, seed));
    }
}

#[test]
fn kappa_right_diagram() {
    let mut r = ChaCha8Rng::seed_from_u64(12);
    for seed in 0..40 {
        let t = BrEndo::single(tt(&mut r));
        let u = BrEndo::single(tt(&mut r));
        let f = br(&mut r, 2);
        let lhs = lc(&f, &t, &u).after(&kappa_br(&t.plus(&u), &f)).unwrap();
        let rhs = kappa_br(&t, &f).plus(&kappa_br(&u, &f)).after(&rc(&t, &u, &f)).unwrap();
        assert!(equal_everywhere(&lhs.body, &rhs.body, seed));
    }
}

#[test]
fn kappa_is_the_symmetry_after_evaluation() {
    let mut r = ChaCha8Rng::seed_from_u64(13);
    for seed in 0..40 {
        let t = tt(&mut r);
        let f = br(&mut r, 3);
        let k = kappa(&t, &f);
        let xi = rigcalc::mor::s::xi_t(t.ev_obj(), f.ev_obj());
        assert!(equal_everywhere(&k.body, &xi, seed));
        if t == TTEndo::Id {
            assert!(rigcalc::leafmap::leaf_map(&k.body).unwrap().is_identity());
        }
    }
}

#[test]
fn omega_against_left_distributivity() {
    let mut r = ChaCha8Rng::seed_from_u64(14);
    for seed in 0..40 {
        let t = tt(&mut r);
        let tb = BrEndo::single(t.clone());
        let (f, g) = (br(&mut r, 2), br(&mut r, 2));
        let w = omega(&t);
        let d = w.tgt.clone();
        let one = EndoMor::chain(&[w.hcomp(&EndoMor::id(&f.plus(&g))), lc(&d, &f, &g)]).unwrap();
        let two = EndoMor::chain(&[
            lc(&tb, &f, &g),
            w.hcomp(&EndoMor::id(&f)).plus(&w.hcomp(&EndoMor::id(&g))),
        ])
        .unwrap();
        assert!(equal_everywhere(&one.body, &two.body, seed));
    }
}

#[test]
fn lambda_is_natural_in_structural_maps() {
    let mut r = ChaCha8Rng::seed_from_u64(15);
    for seed in 0..40 {
        let (t, u, v) = (br(&mut r, 1), br(&mut r, 1), br(&mut r, 1));
        for phi in [assoc(&t, &u, &v), lc(&t, &u, &v), rc(&t, &u, &v)] {
            let one = lambda_of(&phi.tgt).after(&phi).unwrap();
            let two = d_phi(&phi.body).after(&lambda_of(&phi.src)).unwrap();
            assert!(equal_everywhere(&one.body, &two.body, seed));
        }
    }
}

#[test]
fn evaluation_is_strict() {
    let mut r = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..40 {
        let (t, u) = (br(&mut r, 2), br(&mut r, 2));
        assert_eq!(t.compose(&u).ev_obj(), rigcalc::obj::tensor(t.ev_obj(), u.ev_obj()));
        assert_eq!(t.plus(&u).ev_obj(), rigcalc::obj::oplus(t.ev_obj(), u.ev_obj()));
        let a = assoc(&t, &u, &t);
        assert_eq!(a.body, rigcalc::mor::s::alpha_t(t.ev_obj(), u.ev_obj(), t.ev_obj()));
    }
}

#[test]
fn preimage_of_a_named_map_round_trips() {
    let t = BrEndo::single(TTEndo::Id);
    let k = BrEndo::single(TTEndo::K);
    let iota = TypedMor::named("iota00", t.ev_obj(), k.ev_obj());
    let pre = ev_preimage(&iota, &t, &k).unwrap();
    assert_eq!(decide_equal(&pre.body, &iota).unwrap(), Verdict::Equal);
}
