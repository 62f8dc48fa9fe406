use qdouble::cocycles::TwoCocycle;
use qdouble::condensation::boundary_character;
use qdouble::groups::*;
use qdouble::lattice::*;
use qdouble::Error;

fn failures(rows: &[RelationCheck]) -> Vec<&RelationCheck> {
    rows.iter().filter(|r| !r.passed).collect()
}

#[test]
fn z2_boundary_characters_match_algebra() {
    let g = cyclic(2);
    for k in [Subgroup::trivial(&g), Subgroup::whole(&g)] {
        let phi = TwoCocycle::trivial(&k);
        let p = build_patch(&g, 2, 1, Some((k.clone(), phi.clone()))).unwrap();
        let lat = lattice_boundary_character(&p, &p.default_ribbon(), 11).unwrap();
        let alg = boundary_character(&g, &k, &phi).unwrap();
        assert!(lat.max_diff(&alg) < 1e-6, "|K| = {}", k.order());
    }
}

#[test]
fn s3_rotation_boundary() {
    let g = symmetric(3);
    let tau = g.conjugacy().reps[2];
    let k = Subgroup::generated_by(&g, &[tau]);
    let phi = TwoCocycle::trivial(&k);
    let p = build_patch(&g, 2, 1, Some((k.clone(), phi.clone()))).unwrap();
    let rows = relation_suite(&p, &p.default_ribbon(), SuiteOptions { states: 2, samples: 4, ..Default::default() }).unwrap();
    assert!(failures(&rows).is_empty(), "{:#?}", failures(&rows));
    let lat = lattice_boundary_character(&p, &p.default_ribbon(), 5).unwrap();
    assert!(lat.max_diff(&boundary_character(&g, &k, &phi).unwrap()) < 1e-6);
}

#[test]
fn ground_state_is_stable_under_terms() {
    let g = cyclic(2);
    let p = build_patch(&g, 2, 1, None).unwrap();
    let psi = ground_state(&p, 1).unwrap();
    assert!((psi.norm() - 1.0).abs() < 1e-12);
    for (name, op) in p.hamiltonian_terms().unwrap() {
        assert!(op.apply(&psi).distance(&psi) < 1e-9, "{name}");
    }
    let other = ground_state(&p, 2).unwrap();
    // unique ground state up to phase
    assert!((psi.inner(&other).norm() - 1.0).abs() < 1e-9);
}

#[test]
fn bad_amplitude_vector() {
    let p = build_patch(&cyclic(2), 2, 1, None).unwrap();
    assert!(p.state(vec![Default::default(); 3]).is_err());
    assert!(matches!(build_patch(&symmetric(3), 3, 2, None), Err(Error::DimensionCap(_))));
}
