use std::time::Instant;

use proptest::prelude::*;
use rigcalc::model::{check_star_hom, CMat, StarElem};
use rigcalc::rig::{self, gens, verify_rig_diagram, CATALOGUE, DEFAULT_TRUNCATION};
use rigcalc::stable::{d_map, iota00, mu_map, theta2, Pairing, StableMat};
use rigcalc::{mor::s, TypedMor};

fn sm(entries: &[(usize, usize, f64)]) -> StableMat {
    StableMat::from_entries(1, entries.iter().map(|&(i, j, v)| ((i, j), CMat::from_real(1, 1, &[v])))).unwrap()
}

#[test]
fn whole_catalogue_passes_with_default_pairing() {
    let t = Instant::now();
    for name in CATALOGUE {
        let r = verify_rig_diagram(name, DEFAULT_TRUNCATION, &Pairing::default()).unwrap();
        for c in &r.checks {
            assert!(c.pass, "{name}/{}: {c:?}", c.name);
        }
    }
    eprintln!("catalogue took {:?}", t.elapsed());
}

#[test]
fn swapped_pairing_also_passes() {
    for name in CATALOGUE {
        assert!(verify_rig_diagram(name, 6, &Pairing::swapped()).unwrap().pass, "{name}");
    }
}

#[test]
fn unit_law_is_not_exact_but_is_a_relabeling() {
    let p = Pairing::default();
    let l = TypedMor::chain(&[gens::iota00().tensor(&TypedMor::id(rig::k())), gens::theta()]).unwrap();
    let r = s::lambda_t(rig::k());
    assert_eq!(rig::compare_exact(&l, &r, 8, &p).unwrap(), 1.0);
    let h = rig::relabeling_witness(&l, &r, 8, &p, 100).unwrap();
    assert!(h.endpoint_error <= 1e-9 && h.continuity_bound <= 0.1);
}

#[test]
fn comm_mu_witness_on_plain_matrices() {
    // μ(k1,k2) vs μ(k2,k1) as a path of homomorphisms K⊕K → K, checked on units.
    let h = rig::relabeling_witness(
        &gens::mu(),
        &TypedMor::chain(&[s::xi_p(rig::k(), rig::k()), gens::mu()]).unwrap(),
        8,
        &Pairing::default(),
        100,
    )
    .unwrap();
    assert!(h.star_hom_defect <= 1e-9);
    assert!(h.cycle_lengths.iter().all(|&l| l == 2));
    for snap in &h.snapshots {
        assert!(check_star_hom(snap, 1e-9).unwrap());
    }
}

#[test]
fn mu_examples() {
    let p = Pairing::default();
    let e00 = sm(&[(0, 0, 1.0)]);
    assert_eq!(mu_map(&p, &e00, &e00).unwrap(), sm(&[(0, 0, 1.0), (1, 1, 1.0)]));
    assert!(mu_map(&p, &StableMat::zero(1), &StableMat::zero(1)).unwrap().is_zero());
    assert_eq!(theta2(&p, &d_map(&e00, &StableMat::zero(1)).unwrap()), e00);
    assert_eq!(iota00(&CMat::unit(2, 1, 0)).unwrap().coeff_dim(), 2);
}

fn arb_stable() -> impl Strategy<Value = StableMat> {
    prop::collection::vec((0usize..6, 0usize..6, -3i32..4), 0..6)
        .prop_map(|v| sm(&v.into_iter().map(|(i, j, x)| (i, j, x as f64)).collect::<Vec<_>>()))
}

proptest! {
    #[test]
    fn padding_does_not_change_results(a in arb_stable(), b in arb_stable(), pad in 0usize..20) {
        let p = Pairing::default();
        let padded = |x: &StableMat| StableMat::from_entries(1,
            x.entries().map(|(k, c)| (*k, c.clone())).chain([((pad + 6, pad), CMat::zeros(1, 1))])).unwrap();
        prop_assert_eq!(mu_map(&p, &padded(&a), &padded(&b)).unwrap(), mu_map(&p, &a, &b).unwrap());
        let win: Vec<usize> = (0..14 + 2 * pad).collect();
        let small: Vec<usize> = (0..14).collect();
        let m = mu_map(&p, &a, &b).unwrap();
        let big = m.window(&win);
        let sm = m.window(&small);
        for i in 0..14 { for j in 0..14 {
            prop_assert_eq!(big.at(i, j), sm.at(i, j));
        }}
    }

    #[test]
    fn mu_is_multiplicative(a in arb_stable(), b in arb_stable(), c in arb_stable(), d in arb_stable()) {
        let p = Pairing::default();
        let lhs = mu_map(&p, &a, &b).unwrap().mul(&mu_map(&p, &c, &d).unwrap());
        let rhs = mu_map(&p, &a.mul(&c), &b.mul(&d)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_keeps_disjoint_supports_apart(a in arb_stable(), b in arb_stable()) {
        let x = d_map(&a, &b).unwrap();
        prop_assert_eq!(x.nnz(), a.nnz() + b.nnz());
    }
}
