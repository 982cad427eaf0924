use proptest::prelude::*;
use rigcalc::formal::*;

#[test]
fn every_variant_rejected_at_its_stage() {
    for n in 0..4 {
        let vs = mistyped_variants(n);
        assert_eq!(vs.len(), 12);
        for v in vs {
            match (v.run)() {
                Err(FormalError::TypeMismatch { stage, .. }) => assert_eq!(stage, v.expected_stage, "{} at n={n}", v.name),
                Ok(p) => panic!("{} accepted: {p}", v.name),
            }
        }
    }
}

#[test]
fn stage_labels_follow_the_composite() {
    let w = well_typed(1);
    let psi = build_psi(&w.psi, &w.eps, &w.kappa, &w.theta).unwrap();
    let labels: Vec<_> = psi.stages.iter().map(|s| s.label.as_str()).collect();
    assert_eq!(labels, ["S psi", "eps A^n K B", "A kappa K B", "A^(n+1) theta B"]);
    for pair in psi.stages.windows(2) {
        assert_eq!(pair[0].tgt, pair[1].src);
    }
}

proptest! {
    #[test]
    fn well_typed_composites_have_expected_ends(n in 0usize..8) {
        let w = well_typed(n);
        let phi = build_phi(&w.phi, &w.eta).unwrap();
        prop_assert_eq!(phi.stages[0].src.clone(), FObj::new("", "A"));
        prop_assert_eq!(phi.stages[1].tgt.clone(), FObj::new(&format!("N{}K", "A".repeat(n)), "B"));
        let psi = build_psi(&w.psi, &w.eps, &w.kappa, &w.theta).unwrap();
        prop_assert_eq!(psi.stages[0].src.clone(), FObj::new("S", "A"));
        prop_assert_eq!(psi.stages[3].tgt.clone(), FObj::new(&format!("{}K", "A".repeat(n + 1)), "B"));
    }
}
