//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigcalc::endo::{xi_tt, BrEndo, EndoMor, TTEndo};
use rigcalc::formal::{build_phi, build_psi, mistyped_variants, well_typed, FormalError};
use rigcalc::gm::{
    add_gm, associativity_witness, commutativity_witness, corner_neutral_witnesses, neutral_witness, null_homotopy,
    pushforward, random_gm, DEFAULT_GRID,
};
use rigcalc::model::{equal_in_model, random_models};
use rigcalc::mor::{s, BrMor, TypedMor};
use rigcalc::obj::{gen, BrObj, ObjTerm, Word};
use rigcalc::random::{bimonoidal_obj, monoidal_parallel_pair};
use rigcalc::rig::{self, CheckMode, CATALOGUE, CONTINUITY_TOL, ENDPOINT_TOL};
use rigcalc::stable::Pairing;
use rigcalc::strictify::{random_descriptor, strictify};
use rigcalc::{decide_equal, Verdict as D};
use rigcheck::run::{probe_element, run_corpus, run_sources, ModeOverride, RunOptions, INTERPOLATION_TOL};
use rigcheck::Verdict;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus"))
}

fn coherence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 0..1000 {
        let (f, g) = monoidal_parallel_pair(&mut rng, 6, 6);
        ensure(f.src.depth() <= 6 && f.tgt.depth() <= 6, || format!("pair {k} exceeds depth 6"))?;
        let v = decide_equal(&f, &g).map_err(|e| e.to_string())?;
        ensure(v == D::Equal, || format!("pair {k}: {v:?} for {f} vs {g}"))?;
        let mut gens = f.src.generators();
        gens.extend(f.tgt.generators());
        for m in random_models(&gens, 5, 4, k) {
            let same = equal_in_model(&f, &g, &m, 0.0).map_err(|e| e.to_string())?;
            ensure(same, || format!("pair {k}: model with seed {} refutes {f} vs {g}", m.seed))?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!("1000 pairs Equal, 5000 model checks agree, {secs:.1} s"))
}

const MUTANTS: &str = "
diagram mutant-self-swap { obj a; assert xiT[a, a] == id[(a * a)] mode exact; }
diagram mutant-self-swap-plus { obj a; assert xiP[a, a] == id[(a + a)] mode exact; }
diagram mutant-kappa { assert ev(kappa[K, K]) == id[(ev(K) * ev(K))] mode exact; }
diagram mutant-distrib { obj a; assert comp(xiP[(a * a), (a * a)], deltaL[a, a, a]) == deltaL[a, a, a] mode exact; }
";

fn axiom_corpus() -> Outcome {
    let mut total = 0;
    for mode in [ModeOverride::Exact, ModeOverride::Model] {
        let opts = RunOptions { mode: Some(mode), seed: Some(7), ..RunOptions::default() };
        let r = run_corpus(corpus(), &opts).map_err(|e| e.to_string())?;
        ensure(r.diagrams.len() >= 20, || format!("only {} corpus diagrams", r.diagrams.len()))?;
        for d in &r.diagrams {
            ensure(d.verdict == Verdict::Pass, || format!("{} is {} under {mode:?}", d.name, d.verdict.as_str()))?;
        }
        total = r.diagrams.len();
        let r = run_sources(&[("mutants.diag".into(), MUTANTS.into())], &opts);
        ensure(r.diagrams.len() == 4, || "mutants did not parse".into())?;
        for d in &r.diagrams {
            ensure(d.verdict == Verdict::Fail, || format!("mutation {} is {} under {mode:?}", d.name, d.verdict.as_str()))?;
        }
    }
    Ok(format!("{total} diagrams pass in exact and model mode, 4 mutations fail in both"))
}

fn hole2(t: bool) -> Word {
    if t {
        Word::tensor(Word::Hole, Word::Hole)
    } else {
        Word::oplus(Word::Hole, Word::Hole)
    }
}

/// (bracketed arrow, the structural kind at image objects).
fn arrows(x: &ObjTerm, y: &ObjTerm, z: &ObjTerm) -> Vec<(BrMor, fn(&[ObjTerm]) -> TypedMor)> {
    let h = Word::Hole;
    let br = |items: Vec<ObjTerm>, w: Word| BrObj::new(items, w).expect("shape matches");
    let mk = |src: BrObj, tgt: BrObj, body: TypedMor| BrMor::new(src, tgt, body).expect("typed arrow");
    vec![
        (
            mk(
                br(vec![x.clone(), y.clone(), z.clone()], Word::tensor(hole2(true), h.clone())),
                br(vec![x.clone(), y.clone(), z.clone()], Word::tensor(h.clone(), hole2(true))),
                s::alpha_t(x.clone(), y.clone(), z.clone()),
            ),
            |p| s::alpha_t(p[0].clone(), p[1].clone(), p[2].clone()),
        ),
        (
            mk(br(vec![ObjTerm::One, x.clone()], hole2(true)), BrObj::single(x.clone()), s::lambda_t(x.clone())),
            |p| s::lambda_t(p[1].clone()),
        ),
        (
            mk(br(vec![x.clone(), ObjTerm::One], hole2(true)), BrObj::single(x.clone()), s::rho_t(x.clone())),
            |p| s::rho_t(p[0].clone()),
        ),
        (
            mk(br(vec![x.clone(), y.clone()], hole2(true)), br(vec![y.clone(), x.clone()], hole2(true)), s::xi_t(x.clone(), y.clone())),
            |p| s::xi_t(p[0].clone(), p[1].clone()),
        ),
        (
            mk(
                br(vec![x.clone(), y.clone(), z.clone()], Word::tensor(h.clone(), hole2(false))),
                br(vec![x.clone(), y.clone(), x.clone(), z.clone()], Word::oplus(hole2(true), hole2(true))),
                s::delta_l(x.clone(), y.clone(), z.clone()),
            ),
            |p| s::delta_l(p[0].clone(), p[1].clone(), p[2].clone()),
        ),
        (
            mk(
                br(vec![x.clone(), y.clone(), z.clone()], Word::tensor(hole2(false), h)),
                br(vec![x.clone(), z.clone(), y.clone(), z.clone()], Word::oplus(hole2(true), hole2(true))),
                s::delta_r(x.clone(), y.clone(), z.clone()),
            ),
            |p| s::delta_r(p[0].clone(), p[1].clone(), p[2].clone()),
        ),
    ]
}

fn strictification() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checks = 0;
    for k in 0..200u64 {
        let f = random_descriptor(&mut rng, &format!("F{k}"));
        let [x, y, z] = [0, 1, 2].map(|_| bimonoidal_obj(&mut rng, 2, 2));
        for (phi, at_image) in arrows(&x, &y, &z) {
            let out = strictify(&f, &phi).map_err(|e| e.to_string())?;
            let g = at_image(out.src.items());
            ensure(g.parallel_to(&out.body), || format!("descriptor {k}: {g} not parallel to strictified arrow"))?;
            let v = decide_equal(&out.body, &g).map_err(|e| e.to_string())?;
            ensure(v == D::Equal, || format!("descriptor {k}: strictified {} is {v:?} to {g}", phi.body))?;
            let lhs = f.mor(&phi.body).and_then(|m| m.after(&f.omega(&phi.src))).map_err(|e| e.to_string())?;
            let rhs = f.omega(&phi.tgt).after(&g).map_err(|e| e.to_string())?;
            let mut gens = lhs.src.generators();
            gens.extend(lhs.tgt.generators());
            for m in random_models(&gens, 3, 3, k) {
                let same = equal_in_model(&lhs, &rhs, &m, 0.0).map_err(|e| e.to_string())?;
                ensure(same, || format!("descriptor {k}: Omega square fails for {} in model {}", phi.body, m.seed))?;
            }
            checks += 1;
        }
    }
    Ok(format!("200 descriptors, {checks} arrows Equal, Omega squares hold in 3 models each"))
}

fn stable_rig() -> Outcome {
    let start = Instant::now();
    let p = Pairing::default();
    let (mut exact, mut witnesses, mut worst_cont, mut worst_end) = (0, 0, 0.0f64, 0.0f64);
    for name in CATALOGUE {
        let r = rig::verify_rig_diagram_with(name, 8, &p, 100).map_err(|e| format!("{name}: {e}"))?;
        for c in &r.checks {
            match c.mode {
                CheckMode::Exact => {
                    ensure(c.max_error == 0.0, || format!("{name}/{}: error {}", c.name, c.max_error))?;
                    exact += 1;
                }
                CheckMode::Homotopy => {
                    let w = c.witness.ok_or_else(|| format!("{name}/{}: no witness", c.name))?;
                    ensure(w.steps == 100, || format!("{name}/{}: {} steps", c.name, w.steps))?;
                    ensure(w.endpoint_error <= ENDPOINT_TOL && w.continuity_bound <= CONTINUITY_TOL, || {
                        format!("{name}/{}: endpoint {} continuity {}", c.name, w.endpoint_error, w.continuity_bound)
                    })?;
                    worst_cont = worst_cont.max(w.continuity_bound);
                    worst_end = worst_end.max(w.endpoint_error);
                    witnesses += 1;
                }
            }
            ensure(c.pass, || format!("{name}/{} failed", c.name))?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.1} s"))?;
    Ok(format!(
        "{exact} exact legs at tol 0, {witnesses} witnesses (endpoint <= {worst_end:.1e}, continuity <= {worst_cont:.3}), {secs:.1} s"
    ))
}

fn gm_laws() -> Outcome {
    let p = Pairing::default();
    let dims: BTreeMap<String, usize> = [("a".to_string(), 2), ("b".to_string(), 3)].into_iter().collect();
    let da = |x: &str| BrEndo::single(TTEndo::DA(gen(x)));
    let functors = [BrEndo::single(TTEndo::Id), da("a"), BrEndo::single(TTEndo::Mn(2)), da("a").compose(&da("b"))];
    let (ta, tb) = (TTEndo::DA(gen("a")), TTEndo::DA(gen("b")));
    let ab = da("a").compose(&da("b"));
    let (alpha, beta) = (xi_tt(&ta, &tb), xi_tt(&tb, &ta));
    let beta_alpha = beta.after(&alpha).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let e = |x: rigcalc::gm::GmError| x.to_string();
    for k in 0..50 {
        let n = rng.gen_range(1..=3);
        let b = rng.gen_range(1..=2);
        let f = &functors[k % functors.len()];
        let mut g = || random_gm(&mut rng, n, f, &dims, b, 8);
        let (x, y, z) = (g().map_err(e)?, g().map_err(e)?, g().map_err(e)?);
        let hs = [
            neutral_witness(&x, &p, 100).map_err(e)?,
            commutativity_witness(&x, &y, &p, 100).map_err(e)?,
            associativity_witness(&x, &y, &z, &p, 100).map_err(e)?,
        ];
        let (l, r) = corner_neutral_witnesses(&x, &p, 100).map_err(e)?;
        for h in hs.iter().chain([&l, &r]) {
            ensure(h.endpoint_error <= ENDPOINT_TOL && h.star_hom_defect <= 1e-9, || {
                format!("case {k}: endpoint {} star {}", h.endpoint_error, h.star_hom_defect)
            })?;
        }
        let u = random_gm(&mut rng, n, &ab, &dims, b, 8).map_err(e)?;
        let v = random_gm(&mut rng, n, &ab, &dims, b, 8).map_err(e)?;
        let sum = pushforward(&alpha, &add_gm(&u, &v, &p).map_err(e)?).map_err(e)?;
        let parts = add_gm(&pushforward(&alpha, &u).map_err(e)?, &pushforward(&alpha, &v).map_err(e)?, &p).map_err(e)?;
        ensure(sum == parts, || format!("case {k}: pushforward is not additive"))?;
        let two = pushforward(&beta, &pushforward(&alpha, &u).map_err(e)?).map_err(e)?;
        ensure(pushforward(&beta_alpha, &u).map_err(e)? == two, || format!("case {k}: pushforward is not functorial"))?;
        ensure(pushforward(&EndoMor::id(&ab), &u).map_err(e)? == u, || format!("case {k}: identity pushforward moves"))?;
    }
    Ok("50 cases: monoid and corner witnesses validate, pushforward additive and functorial exactly".into())
}

fn suspension() -> Outcome {
    let f = probe_element(DEFAULT_GRID);
    ensure(f.grid() == 96, || format!("grid {}", f.grid()))?;
    let inv = f.inv();
    let reversed: Vec<_> = f.samples().iter().rev().cloned().collect();
    ensure(inv.samples() == reversed.as_slice(), || "inv is not sample reversal".into())?;
    ensure(inv.inv() == f, || "inv is not an involution".into())?;
    let c = null_homotopy(&f, 100).map_err(|e| e.to_string())?;
    ensure(c.start_error == 0.0, || format!("chain starts {} away from f + inv f", c.start_error))?;
    let gap = c.stage_gaps.iter().copied().fold(0.0, f64::max);
    ensure(gap <= INTERPOLATION_TOL, || format!("stage gap {gap}"))?;
    if c.boundary_interpolations == 0 {
        ensure(gap == 0.0, || format!("stage boundaries hit grid points but gap is {gap}"))?;
    }
    ensure(c.terminal == 0.0, || format!("terminal snapshot {}", c.terminal))?;
    Ok(format!(
        "M = 96, inv reverses samples, stage gaps {:?}, terminal 0, continuity {:.3}",
        c.stage_gaps, c.continuity_bound
    ))
}

fn formal_types() -> Outcome {
    for n in 0..4 {
        let w = well_typed(n);
        build_phi(&w.phi, &w.eta).map_err(|e| format!("n = {n}: {e}"))?;
        build_psi(&w.psi, &w.eps, &w.kappa, &w.theta).map_err(|e| format!("n = {n}: {e}"))?;
    }
    let vs = mistyped_variants(2);
    ensure(vs.len() == 12, || format!("{} variants", vs.len()))?;
    for v in &vs {
        match (v.run)() {
            Err(FormalError::TypeMismatch { stage, .. }) => {
                ensure(stage == v.expected_stage, || format!("{} rejected at stage {stage}", v.name))?
            }
            Ok(p) => return Err(format!("{} accepted: {p}", v.name)),
        }
    }
    Ok("well-typed inputs accepted for n = 0..3, 12 mistyped variants rejected at their stage".into())
}

fn determinism() -> Outcome {
    for mode in [None, Some(ModeOverride::Model)] {
        let opts = RunOptions { mode, seed: Some(2024), ..RunOptions::default() };
        let a = run_corpus(corpus(), &opts).map_err(|e| e.to_string())?.without_timing().to_json();
        let b = run_corpus(corpus(), &opts).map_err(|e| e.to_string())?.without_timing().to_json();
        ensure(a == b, || format!("reports differ under {mode:?}"))?;
    }
    Ok("two runs per mode give byte-identical JSON without timing fields".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 coherence suite", coherence),
        ("2 axiom corpus", axiom_corpus),
        ("3 strictification", strictification),
        ("4 stabilization rig", stable_rig),
        ("5 generalized morphisms", gm_laws),
        ("6 suspension inversion", suspension),
        ("7 type-level composites", formal_types),
        ("8 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        match run() {
            Ok(msg) => println!("PASS  criterion {name}: {msg} [{:.2} s]", t.elapsed().as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg} [{:.2} s]", t.elapsed().as_secs_f64());
            }
        }
    }
    println!("acceptance: {}/8 criteria pass", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
