use qdouble::cocycles::*;
use qdouble::condensation::*;
use qdouble::groups::*;
use qdouble::io::parse_group;
use qdouble::modular::{compose, transposition};
use qdouble::quantum_double::*;
use qdouble::{Complex64, Error};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

fn trivial_on(k: &Subgroup) -> TwoCocycle {
    TwoCocycle::trivial(k)
}

/// The condensation character written out from raw cocycle values, without `phase()`.
fn brute_character(g: &Group, k: &Subgroup, phi: &TwoCocycle) -> Vec<Complex64> {
    let n = g.order();
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for a in 0..n {
        for b in 0..n {
            if g.mul(a, b) != g.mul(b, a) {
                continue;
            }
            for x in 0..n {
                let xa = g.mul(g.mul(x, a), g.inv(x));
                let xb = g.mul(g.mul(x, b), g.inv(x));
                if k.contains(xa) && k.contains(xb) {
                    let back = g.mul(g.mul(xa, xb), g.inv(xa));
                    out[a * n + b] += phi.get(xa, xb).unwrap() / phi.get(back, xa).unwrap();
                }
            }
            out[a * n + b] /= k.order() as f64;
        }
    }
    out
}

#[test]
fn toric_code_boundaries() {
    let g = cyclic(2);
    let qd = QuantumDouble::new(&g).unwrap();
    let whole = Subgroup::whole(&g);
    let r = condense(&qd, &whole, &trivial_on(&whole)).unwrap();
    assert_eq!(r.multiplicities, vec![1, 0, 1, 0]);
    let triv = Subgroup::trivial(&g);
    let r = condense(&qd, &triv, &trivial_on(&triv)).unwrap();
    assert_eq!(r.multiplicities, vec![1, 1, 0, 0]);
}

#[test]
fn s3_rotation_subgroup() {
    let g = symmetric(3);
    let qd = QuantumDouble::new(&g).unwrap();
    let tau = g.conjugacy().reps[2];
    let k = Subgroup::generated_by(&g, &[tau]);
    let phi = trivial_on(&k);
    let r = condense(&qd, &k, &phi).unwrap();
    let brute = brute_character(&g, &k, &phi);
    assert!(r.character.values.iter().zip(&brute).all(|(a, b)| (a - b).norm() < 1e-12));
    // frozen from the brute-force character: A + B + 2F
    assert_eq!(r.multiplicities, vec![1, 1, 0, 0, 0, 2, 0, 0]);
    assert_eq!(r.total_dimension(&qd), 6);
    let sigma = g.conjugacy().reps[1];
    let k2 = Subgroup::generated_by(&g, &[sigma]);
    let r2 = condense(&qd, &k2, &trivial_on(&k2)).unwrap();
    assert_eq!(r2.total_dimension(&qd), 6);
}

#[test]
fn specializations_whole_and_trivial() {
    for uri in ["builtin:Z2", "builtin:S3", "builtin:A4", "builtin:Z4", "product:Z2×S3"] {
        let g = parse_group(uri).unwrap();
        let qd = QuantumDouble::new(&g).unwrap();
        let whole = Subgroup::whole(&g);
        let r = condense(&qd, &whole, &trivial_on(&whole)).unwrap();
        for x in 0..qd.len() {
            let fluxion = qd.anyons[x].pi == 0;
            assert_eq!(r.multiplicities[x], fluxion as i64, "{uri} K=G {x}");
        }
        assert_eq!(r.total_dimension(&qd), g.order() as i64);
        let triv = Subgroup::trivial(&g);
        let r = condense(&qd, &triv, &trivial_on(&triv)).unwrap();
        for x in 0..qd.len() {
            let want = if qd.anyons[x].class == 0 { qd.anyons[x].dim as i64 } else { 0 };
            assert_eq!(r.multiplicities[x], want, "{uri} K=e {x}");
        }
        assert_eq!(r.total_dimension(&qd), g.order() as i64);
    }
}

#[test]
fn dimension_identity_over_cyclic_subgroups() {
    for uri in ["builtin:S4", "builtin:A4", "affine:q=5", "product:S3×S3"] {
        let g = parse_group(uri).unwrap();
        let qd = QuantumDouble::new(&g).unwrap();
        for &a in &g.conjugacy().reps {
            let k = Subgroup::generated_by(&g, &[a]);
            let r = condense(&qd, &k, &trivial_on(&k)).unwrap();
            assert_eq!(r.total_dimension(&qd), g.order() as i64, "{uri}");
            assert_eq!(r.multiplicities[0], 1, "{uri}");
        }
    }
}

#[test]
fn klein_bilinear_condenses_four() {
    let g = direct_product(&cyclic(2), &cyclic(2));
    let k = Subgroup::whole(&g);
    let phi = bicharacter_cocycle(&k, |a, b| if (a % 2) * (b / 2) == 1 { -ONE } else { ONE }).unwrap();
    let qd = QuantumDouble::new(&g).unwrap();
    let r = condense(&qd, &k, &phi).unwrap();
    let brute = brute_character(&g, &k, &phi);
    assert!(r.character.values.iter().zip(&brute).all(|(a, b)| (a - b).norm() < 1e-12));
    assert_eq!(r.condensed.len(), 4);
    assert!(r.condensed.iter().all(|&x| r.multiplicities[x] == 1));
    assert_eq!(r.total_dimension(&qd), 4);

    // folded: the wall exchanges e and m
    let z2 = cyclic(2);
    let fold = Fold::new(&z2, &z2).unwrap();
    let wall = WallSpec::new(k.clone(), phi).unwrap();
    let v = equivalence_check(&fold, &wall).unwrap();
    assert!(v.conditions_hold);
    assert_eq!(v.equivalence.unwrap(), vec![0, 2, 1, 3]);
}

#[test]
fn product_characters() {
    let (g, h) = (symmetric(3), cyclic(2));
    let fold = Fold::new(&g, &h).unwrap();
    let m = h.order();
    let nn = g.order() * m;
    for x in 0..fold.left.len() {
        let cx = fold.left.character(x);
        for y in 0..fold.right.len() {
            let cy = fold.right.character(y);
            let built = fold.product_character(x, y);
            for a in 0..nn {
                for b in 0..nn {
                    let want = cx.at(a / m, b / m) * cy.at(a % m, b % m);
                    assert!((built.at(a, b) - want).norm() < 1e-12);
                }
            }
            assert!(built.max_diff(&fold.product.character(fold.pair(x, y))) < 1e-9);
        }
    }
    let mut seen = fold.pairs.clone();
    seen.sort_unstable();
    assert_eq!(seen, (0..fold.product.len()).collect::<Vec<_>>());
}

#[test]
fn mismatched_inputs() {
    let g = symmetric(3);
    let k = Subgroup::whole(&g);
    let other = Subgroup::trivial(&g);
    assert!(matches!(boundary_character(&g, &k, &trivial_on(&other)), Err(Error::SubgroupMismatch)));
    assert!(matches!(WallSpec::new(k, trivial_on(&other)), Err(Error::SubgroupMismatch)));
}

#[test]
fn diagonal_wall_is_op() {
    for uri in ["builtin:Z2", "builtin:Z3", "builtin:Z4", "builtin:S3", "builtin:Z6", "product:Z2×Z2", "builtin:A4"] {
        let g = parse_group(uri).unwrap();
        let fold = Fold::new(&g, &g).unwrap();
        let wall = WallSpec::diagonal(&g);
        let v = equivalence_check(&fold, &wall).unwrap();
        assert!(v.conditions_hold, "{uri}");
        assert_eq!(v.equivalence.unwrap(), (0..fold.left.len()).collect::<Vec<_>>(), "{uri}");
        let chi = boundary_character(&fold.product.group, &wall.u, &wall.phi).unwrap();
        let refs = reference_characters(&fold, 0, 0);
        assert!(chi.max_diff(&refs.phi) < 1e-9, "{uri}");
        assert!(chi.max_diff(&phi_closed_form(&g)) < 1e-9, "{uri}");
    }
}

#[test]
fn non_equivalence_wall() {
    // Δ(e) × G: the left projection is not onto
    let g = cyclic(2);
    let fold = Fold::new(&g, &g).unwrap();
    let gg = direct_product(&g, &g);
    let u = Subgroup::new(&gg, &[0, 1]).unwrap();
    let wall = WallSpec::new(u.clone(), trivial_on(&u)).unwrap();
    let v = equivalence_check(&fold, &wall).unwrap();
    assert!(!v.left_projection_onto && v.right_projection_onto);
    assert!(v.equivalence.is_none());
}

#[test]
fn wall_character_two_ways() {
    for q in [2, 3, 4, 5] {
        let ag = affine_group(&near_field(q, NearFieldKind::Field).unwrap()).unwrap();
        let fold = Fold::new(&ag.group, &ag.group).unwrap();
        let (c, f) = qdouble::modular::chargeon_fluxion_pair(&fold.left, &ag).unwrap();
        let wall = WallSpec::wall(&ag).unwrap();
        let chi = boundary_character(&fold.product.group, &wall.u, &wall.phi).unwrap();
        let refs = reference_characters(&fold, c, f);
        assert!(chi.max_diff(&refs.psi.sub(&refs.gamma).unwrap()) < 1e-8, "q = {q}");
        assert!(chi.max_diff(&wall_closed_form(&ag)) < 1e-8, "q = {q}");
        let v = equivalence_check(&fold, &wall).unwrap();
        let pj = compose(&transposition(fold.left.len(), c, f), &fold.left.dual_permutation());
        assert_eq!(v.equivalence.unwrap(), pj, "q = {q}");
    }
}

#[test]
fn vacuum_in_square_of_condensate() {
    for uri in ["builtin:S3", "builtin:A4", "product:Z2×S3"] {
        let g = parse_group(uri).unwrap();
        let qd = QuantumDouble::new(&g).unwrap();
        for &a in &g.conjugacy().reps {
            let k = Subgroup::generated_by(&g, &[a]);
            let r = condense(&qd, &k, &trivial_on(&k)).unwrap();
            let square = tensor_character(&r.character, &r.character).unwrap();
            let m = qd.decompose(&square).unwrap();
            let want: i64 = (0..qd.len()).map(|x| r.multiplicities[x] * r.multiplicities[qd.dual(x)]).sum();
            assert_eq!(m[0], want, "{uri}");
        }
    }
}

#[test]
fn cf_reports() {
    for q in [2, 3, 4, 5] {
        let r = verify_cf_symmetry(&near_field(q, NearFieldKind::Field).unwrap()).unwrap();
        assert!(r.passed, "{r:?}");
    }
    let r = verify_cf_symmetry(&near_field(3, NearFieldKind::Field).unwrap()).unwrap();
    assert_eq!(r.equivalence.unwrap(), transposition(8, r.c, r.f));
    let d = verify_cf_symmetry(&near_field(9, NearFieldKind::Dickson9).unwrap()).unwrap();
    assert!(d.equivalence.is_none() && d.modular.is_some() && d.passed);
}
