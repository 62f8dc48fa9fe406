mod common;

use qdouble::characters::*;
use qdouble::groups::*;
use qdouble::io::{parse_group, CATALOG};
use qdouble::{Complex64, Error};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-8
}

#[test]
fn z2_and_s3_tables() {
    let t = character_table(&cyclic(2)).unwrap();
    assert!(close(t.rows[0].values[0], c(1.0)) && close(t.rows[0].values[1], c(1.0)));
    assert!(close(t.rows[1].values[0], c(1.0)) && close(t.rows[1].values[1], c(-1.0)));

    let s3 = symmetric(3);
    let t = character_table(&s3).unwrap();
    assert_eq!(t.dims, vec![1, 1, 2]);
    // classes e, σ̄, τ̄
    let pi = &t.rows[2];
    assert!(close(pi.values[0], c(2.0)) && close(pi.values[1], c(0.0)) && close(pi.values[2], c(-1.0)));
}

#[test]
fn a6_centralizer_table_matches_print() {
    let case = common::a6_case();
    let t = case.table();
    assert_eq!(t.dims, vec![1, 1, 1, 1, 2]);
    let rows = case.printed_to_rows().expect("every printed row appears once");
    let mu = &t.rows[rows[4]];
    assert!(close(mu.at(case.za.index_of(case.a).unwrap()), c(-2.0)));
}

#[test]
fn inner_products() {
    let s3 = symmetric(3);
    let t = character_table(&s3).unwrap();
    for r in &t.rows {
        assert!(close(inner_product(r, r).unwrap(), c(1.0)));
        let reg = ClassFunction::regular(&s3);
        assert!(close(inner_product(&reg, r).unwrap(), c(r.degree())));
    }
    let (sign, pi) = (&t.rows[1], &t.rows[2]);
    let direct: Complex64 = (0..6).map(|g| pi.at(g).conj() * sign.at(g)).sum::<Complex64>() / 6.0;
    assert!(close(direct, c(0.0)));
    assert!(close(inner_product(pi, sign).unwrap(), c(0.0)));
    assert!(matches!(inner_product(pi, &ClassFunction::trivial(&cyclic(2))), Err(Error::GroupMismatch)));
}

#[test]
fn induction_from_translations() {
    for q in [3, 4, 5, 7] {
        let ag = affine_group(&near_field(q, NearFieldKind::Field).unwrap()).unwrap();
        let g = &ag.group;
        let k = ag.translations();
        let tk = character_table(&k.as_group).unwrap();
        let ind = induced_character(g, &k, &tk.rows[1]).unwrap();
        for x in 0..g.order() {
            let want = if x == 0 {
                (q - 1) as f64
            } else if k.contains(x) {
                -1.0
            } else {
                0.0
            };
            assert!(close(ind.at(x), c(want)), "q = {q}, x = {x}");
        }
        assert!(close(inner_product(&ind, &ind).unwrap(), c(1.0)));
    }
    let s3 = symmetric(3);
    let w = Subgroup::whole(&s3);
    let triv = ClassFunction::trivial(&w.as_group);
    assert!(induced_character(&s3, &w, &triv).unwrap().approx_eq(&ClassFunction::trivial(&s3), 1e-9));
}

#[test]
fn conjugation() {
    let s3 = symmetric(3);
    let t = character_table(&s3).unwrap();
    for r in &t.rows {
        assert!(conjugate_character(r).approx_eq(r, 1e-12));
    }
    let ztau = Subgroup::centralizer(&s3, s3.conjugacy().reps[2]);
    let tz = character_table(&ztau.as_group).unwrap();
    assert_eq!(tz.len(), 3);
    let omega = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
    // rows: 𝟙, [ω], [ω*]; element 1 of Z(τ) is τ
    assert!(close(tz.rows[1].at(1), omega));
    assert!(conjugate_character(&tz.rows[1]).approx_eq(&tz.rows[2], 1e-9));
    assert!(conjugate_character(&conjugate_character(&tz.rows[1])).approx_eq(&tz.rows[1], 1e-15));
}

#[test]
fn catalog_tables_are_orthonormal_and_snap() {
    for uri in CATALOG {
        let g = parse_group(uri).unwrap();
        let t = character_table(&g).unwrap();
        let cd = g.conjugacy();
        let n = g.order();
        assert_eq!(t.len(), cd.num_classes(), "{uri}");
        assert_eq!(t.dims.iter().map(|d| d * d).sum::<usize>(), n, "{uri}");
        for i in 0..t.len() {
            for j in 0..t.len() {
                let ip = inner_product(&t.rows[i], &t.rows[j]).unwrap();
                assert!(close(ip, c(if i == j { 1.0 } else { 0.0 })), "{uri}");
            }
        }
        for a in 0..cd.num_classes() {
            for b in 0..cd.num_classes() {
                let s: Complex64 = t.rows.iter().map(|r| r.values[a] * r.values[b].conj()).sum();
                let want = if a == b { cd.centralizers[a].len() as f64 } else { 0.0 };
                assert!(close(s, c(want)), "{uri}");
            }
        }
        for i in 0..t.len() {
            for cl in 0..cd.num_classes() {
                let rs = t.snap(i, cl).unwrap_or_else(|| panic!("{uri}: ({i},{cl}) does not snap"));
                assert!((rs.value() - t.rows[i].values[cl]).norm() < 1e-6);
            }
        }
    }
}

#[test]
fn product_tables_agree_with_generic_path() {
    for uri in ["product:Z2×S3", "product:S3×S3", "product:Z3×A4"] {
        let g = parse_group(uri).unwrap();
        let fast = character_table(&g).unwrap();
        let plain = from_cayley(&g.rows(), "plain").unwrap();
        let slow = burnside_table(&plain).unwrap();
        assert_eq!(fast.dims, slow.dims);
        for (a, b) in fast.rows.iter().zip(&slow.rows) {
            assert!(a.values.iter().zip(&b.values).all(|(x, y)| (x - y).norm() < 1e-8), "{uri}");
        }
    }
}

#[test]
fn frobenius_reciprocity() {
    for uri in ["builtin:S3", "builtin:A4", "builtin:S4", "affine:q=5", "product:Z2×S3"] {
        let g = parse_group(uri).unwrap();
        let tg = character_table(&g).unwrap();
        let cd = g.conjugacy();
        let mut subgroups: Vec<Subgroup> = cd.reps.iter().map(|&a| Subgroup::centralizer(&g, a)).collect();
        subgroups.extend(cd.reps.iter().map(|&a| Subgroup::generated_by(&g, &[a])));
        for k in &subgroups {
            let tk = character_table(&k.as_group).unwrap();
            for chi in &tk.rows {
                let ind = induced_character(&g, k, chi).unwrap();
                for psi in &tg.rows {
                    let lhs = inner_product(&ind, psi).unwrap();
                    let rhs = inner_product(chi, &psi.restrict(k).unwrap()).unwrap();
                    assert!(close(lhs, rhs), "{uri}");
                }
            }
        }
    }
}
