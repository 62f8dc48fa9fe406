use std::sync::OnceLock;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use qdouble::cocycles::{wall_cocycle, TwoCocycle};
use qdouble::groups::*;
use qdouble::io::{parse_group, CATALOG};
use qdouble::quantum_double::*;
use qdouble::Complex64;

struct Entry {
    uri: &'static str,
    qd: QuantumDouble,
    s: nalgebra::DMatrix<Complex64>,
    t: Vec<Complex64>,
}

fn catalog() -> &'static [Entry] {
    static CELL: OnceLock<Vec<Entry>> = OnceLock::new();
    CELL.get_or_init(|| {
        CATALOG
            .iter()
            .map(|&uri| {
                let g = parse_group(uri).unwrap();
                assert!(g.order() <= 72, "{uri}");
                let qd = QuantumDouble::new(&g).unwrap();
                let s = qd.s_matrix();
                let t = qd.t_vector();
                Entry { uri, qd, s, t }
            })
            .collect()
    })
}

#[test]
fn s_is_unitary_and_symmetric() {
    for e in catalog() {
        assert!(unitarity_residual(&e.s) < 1e-9, "{}", e.uri);
        assert!((&e.s - e.s.transpose()).iter().all(|v| v.norm() < 1e-9), "{}", e.uri);
    }
}

#[test]
fn s_squared_is_charge_conjugation() {
    for e in catalog() {
        let perm = e.qd.dual_permutation();
        let s2 = &e.s * &e.s;
        for x in 0..e.qd.len() {
            for y in 0..e.qd.len() {
                let want = if perm[x] == y { 1.0 } else { 0.0 };
                assert!((s2[(x, y)] - Complex64::new(want, 0.0)).norm() < 1e-9, "{}", e.uri);
            }
        }
        assert!(perm.iter().enumerate().all(|(x, &y)| perm[y] == x));
    }
}

#[test]
fn verlinde_is_integral() {
    for e in catalog() {
        let n = fusion_verlinde(&e.s).unwrap_or_else(|err| panic!("{}: {err}", e.uri));
        for x in 0..e.qd.len() {
            assert_eq!(n.product(0, x), vec![(x, 1)], "{}", e.uri);
            assert_eq!(n.get(x, e.qd.dual(x), 0), 1, "{}", e.uri);
        }
    }
}

#[test]
fn twist_orders() {
    for e in catalog() {
        let cd = e.qd.group.conjugacy();
        for (x, a) in e.qd.anyons.iter().enumerate() {
            let ord = cd.element_orders[a.class_rep] as i32;
            assert!((e.t[x].powi(ord) - Complex64::new(1.0, 0.0)).norm() < 1e-9, "{}", e.uri);
        }
    }
}

fn entry_and_anyon() -> impl Strategy<Value = (usize, usize)> {
    (0..CATALOG.len()).prop_flat_map(|i| (Just(i), 0..catalog()[i].qd.len()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn transversal_independence((i, x) in entry_and_anyon(), seed in any::<u64>()) {
        let qd = &catalog()[i].qd;
        let g = &qd.group;
        let cd = g.conjugacy();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let transversal: Vec<usize> = (0..g.order())
            .map(|b| {
                let a = cd.reps[cd.class_of[b]];
                let ks: Vec<usize> = (0..g.order()).filter(|&k| g.conj(k, a) == b).collect();
                ks[rng.gen_range(0..ks.len())]
            })
            .collect();
        prop_assert!(qd.character_with_transversal(x, &transversal).max_diff(&qd.character(x)) < 1e-9);
    }

    #[test]
    fn decompose_reassemble(i in 0..CATALOG.len(), coeffs in prop::collection::vec(0i64..4, 1..6), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..6)) {
        let qd = &catalog()[i].qd;
        let mut want = vec![0i64; qd.len()];
        let mut chi = DGClassFunction::zeros(&qd.group);
        for (c, p) in coeffs.iter().zip(&picks) {
            let x = p.index(qd.len());
            want[x] += c;
            chi = chi.add(&qd.character(x).scale(Complex64::new(*c as f64, 0.0))).unwrap();
        }
        prop_assert_eq!(qd.decompose(&chi).unwrap(), want);
    }

    #[test]
    fn cocycle_gauge_and_normalization(i in 0..CATALOG.len(), gen in any::<prop::sample::Index>(), phases in prop::collection::vec((0.2f64..3.0, 0.0f64..6.3), 72)) {
        let g = &catalog()[i].qd.group;
        let a = gen.index(g.order());
        let k = Subgroup::generated_by(g, &[a]);
        let alpha: Vec<Complex64> = phases.iter().take(k.order()).map(|&(r, t)| Complex64::from_polar(r, t)).collect();
        let phi = TwoCocycle::trivial(&k).gauge(&alpha);
        prop_assert!(phi.first_violation().is_none());
        prop_assert!(phi.phase().max_diff(&TwoCocycle::trivial(&k).phase()) < 1e-9);
        let (n1, _) = phi.normalize();
        prop_assert!(n1.is_normalized());
        let (n2, _) = n1.normalize();
        prop_assert!(n1.table.iter().zip(&n2.table).all(|(x, y)| (x - y).norm() < 1e-9));
    }

    #[test]
    fn wall_cocycle_gauge_invariance(q in prop::sample::select(vec![2usize, 3, 4]), phases in prop::collection::vec(0.0f64..6.3, 48)) {
        let ag = affine_group(&near_field(q, NearFieldKind::Field).unwrap()).unwrap();
        let phi = wall_cocycle(&ag).unwrap();
        let m = phi.subgroup.order();
        let alpha: Vec<Complex64> = phases.iter().cycle().take(m).map(|&t| Complex64::from_polar(1.0, t)).collect();
        let gauged = phi.gauge(&alpha);
        prop_assert!(gauged.phase().max_diff(&phi.phase()) < 1e-9);
        let (n, _) = gauged.normalize();
        prop_assert!(n.phase().max_diff(&phi.phase()) < 1e-9);
        let (n2, _) = n.normalize();
        prop_assert!(n.table.iter().zip(&n2.table).all(|(x, y)| (x - y).norm() < 1e-9));
    }
}
