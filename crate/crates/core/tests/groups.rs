use qdouble::groups::*;
use qdouble::io::{parse_group, CATALOG};
use qdouble::Error;

/// Latin square of order `n` with row and column 0 the identity, found by
/// backtracking, that fails associativity.
fn non_associative_loop(n: usize) -> Vec<Vec<usize>> {
    fn fill(t: &mut Vec<Vec<usize>>, cell: usize, n: usize) -> bool {
        if cell == (n - 1) * (n - 1) {
            let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])));
            let inverses = (0..n).all(|x| (0..n).any(|y| t[x][y] == 0 && t[y][x] == 0));
            return inverses && !assoc;
        }
        let (i, j) = (1 + cell / (n - 1), 1 + cell % (n - 1));
        for v in 0..n {
            if (0..j).any(|k| t[i][k] == v) || (0..i).any(|k| t[k][j] == v) {
                continue;
            }
            t[i][j] = v;
            if fill(t, cell + 1, n) {
                return true;
            }
        }
        t[i][j] = usize::MAX;
        false
    }
    let mut t = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        t[0][i] = i;
        t[i][0] = i;
    }
    assert!(fill(&mut t, 0, n));
    t
}

#[test]
fn cayley_tables() {
    assert_eq!(from_cayley(&[vec![0]], "1").unwrap().order(), 1);
    let z2 = from_cayley(&[vec![0, 1], vec![1, 0]], "Z2").unwrap();
    assert_eq!(z2.order(), 2);
    assert_eq!(z2.mul(1, 1), 0);
    let loop5 = non_associative_loop(5);
    assert!(matches!(from_cayley(&loop5, "L5"), Err(Error::NotAssociative(..))));
}

#[test]
fn builtin_bounds() {
    assert!(matches!(builtin(Builtin::Symmetric(7)), Err(Error::SizeExceeded(_))));
    assert!(matches!(builtin(Builtin::Alternating(7)), Err(Error::SizeExceeded(_))));
    assert!(matches!(builtin(Builtin::Cyclic(1001)), Err(Error::SizeExceeded(_))));
}

#[test]
fn s3_classes() {
    let s3 = symmetric(3);
    assert_eq!(s3.order(), 6);
    let cd = s3.conjugacy();
    assert_eq!(cd.class_sizes(), vec![1, 3, 2]);
    let zs: Vec<usize> = cd.centralizers.iter().map(Vec::len).collect();
    assert_eq!(zs, vec![6, 2, 3]);
}

#[test]
fn a6_double_transposition() {
    let g = alternating(6);
    assert_eq!(g.order(), 360);
    let elems = alternating_elements(6);
    let idx = |cycles: &[&[u8]]| permutation_index(&elems, &from_cycles(6, cycles)).unwrap();
    let a = idx(&[&[1, 2], &[3, 4]]);
    let cd = g.conjugacy();
    assert_eq!(cd.classes[cd.class_of[a]].len(), 45);
    let za = Subgroup::centralizer(&g, a);
    assert_eq!(za.order(), 8);
    let listed = [
        idx(&[]),
        a,
        idx(&[&[1, 2], &[5, 6]]),
        idx(&[&[3, 4], &[5, 6]]),
        idx(&[&[1, 3], &[2, 4]]),
        idx(&[&[1, 4], &[2, 3]]),
        idx(&[&[1, 3, 2, 4], &[5, 6]]),
        idx(&[&[1, 4, 2, 3], &[5, 6]]),
    ];
    for x in listed {
        assert!(za.contains(x));
    }
}

#[test]
fn klein_four_is_abelian() {
    let v = direct_product(&cyclic(2), &cyclic(2));
    assert_eq!(v.order(), 4);
    assert_eq!(v.conjugacy().class_sizes(), vec![1; 4]);
    let cd = v.conjugacy();
    assert!(cd.centralizers.iter().all(|z| z.len() == 4));
}

fn brute_left(h: &NearFieldSpec) -> bool {
    let q = h.q;
    (0..q).all(|x| (0..q).all(|y| (0..q).all(|z| h.mul(x, h.add(y, z)) == h.add(h.mul(x, y), h.mul(x, z)))))
}

fn brute_right_violation(h: &NearFieldSpec) -> Option<(usize, usize, usize)> {
    let q = h.q;
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                if h.mul(h.add(x, y), z) != h.add(h.mul(x, z), h.mul(y, z)) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

#[test]
fn near_fields() {
    let f2 = near_field(2, NearFieldKind::Field).unwrap();
    assert_eq!(f2.add, vec![0, 1, 1, 0]);
    assert_eq!(f2.mul, vec![0, 0, 0, 1]);

    let f9 = near_field(9, NearFieldKind::Field).unwrap();
    assert!(brute_left(&f9) && brute_right_violation(&f9).is_none());
    assert!(f9.is_left_distributive() && f9.is_right_distributive());

    let d9 = near_field(9, NearFieldKind::Dickson9).unwrap();
    assert!(brute_left(&d9));
    assert!(brute_right_violation(&d9).is_some());
    assert!(d9.is_left_distributive() && !d9.is_right_distributive());

    assert!(matches!(near_field(6, NearFieldKind::Field), Err(Error::NotPrimePower(6))));
    for q in [2, 3, 4, 5, 7, 8, 9] {
        near_field(q, NearFieldKind::Field).unwrap().check_axioms().unwrap();
    }
}

/// Explicit isomorphism by search over bijections fixing the identity.
fn isomorphic(g: &Group, h: &Group) -> bool {
    let n = g.order();
    if n != h.order() {
        return false;
    }
    fn go(g: &Group, h: &Group, map: &mut Vec<usize>, used: &mut Vec<bool>, i: usize) -> bool {
        let n = g.order();
        if i == n {
            return (0..n).all(|a| (0..n).all(|b| map[g.mul(a, b)] == h.mul(map[a], map[b])));
        }
        for v in 1..n {
            if !used[v] && g.element_order(i) == h.element_order(v) {
                used[v] = true;
                map[i] = v;
                if go(g, h, map, used, i + 1) {
                    return true;
                }
                used[v] = false;
            }
        }
        false
    }
    let mut map = vec![0; n];
    let mut used = vec![false; n];
    used[0] = true;
    go(g, h, &mut map, &mut used, 1)
}

#[test]
fn small_affine_groups() {
    let a2 = affine_group(&near_field(2, NearFieldKind::Field).unwrap()).unwrap();
    assert!(isomorphic(&a2.group, &cyclic(2)));
    let a3 = affine_group(&near_field(3, NearFieldKind::Field).unwrap()).unwrap();
    assert!(isomorphic(&a3.group, &symmetric(3)));
}

#[test]
fn dickson9_affine_group() {
    let ag = affine_group(&near_field(9, NearFieldKind::Dickson9).unwrap()).unwrap();
    let g = &ag.group;
    assert_eq!(g.order(), 72);
    let a = ag.unit_translation();
    let mut conjugates: Vec<usize> = (0..72).map(|k| g.mul(g.mul(k, a), g.inv(k))).collect();
    conjugates.sort_unstable();
    conjugates.dedup();
    assert_eq!(conjugates.len(), 8);
    let z: Vec<usize> = (0..72).filter(|&k| g.mul(k, a) == g.mul(a, k)).collect();
    assert_eq!(z, ag.translations().members);
    assert!(z.iter().all(|&x| z.iter().all(|&y| g.mul(x, y) == g.mul(y, x))));
    assert!(z.iter().skip(1).all(|&x| g.element_order(x) == 3));
}

#[test]
fn affine_class_pattern() {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let ag = affine_group(&near_field(q, NearFieldKind::Field).unwrap()).unwrap();
        let cd = ag.group.conjugacy();
        let mut expected = vec![1, q - 1];
        expected.extend(std::iter::repeat(q).take(q - 2));
        let mut sizes = cd.class_sizes();
        sizes.sort_unstable();
        expected.sort_unstable();
        assert_eq!(sizes, expected, "q = {q}");
        for c in &cd.classes {
            let alphas: Vec<usize> = c.iter().map(|&x| ag.pair(x).1).collect();
            if c.len() == q {
                assert!(alphas.iter().all(|&al| al == alphas[0] && al != ag.field.one));
            }
        }
    }
}

#[test]
fn cosets_of_s3() {
    let s3 = symmetric(3);
    let w = Subgroup::whole(&s3);
    assert_eq!(cosets(&s3, &w).unwrap(), vec![0]);
    assert_eq!(cosets(&s3, &Subgroup::trivial(&s3)).unwrap(), (0..6).collect::<Vec<_>>());
    let tau = s3.conjugacy().reps[2];
    let k = Subgroup::generated_by(&s3, &[tau]);
    assert_eq!(k.order(), 3);
    let reps = cosets(&s3, &k).unwrap();
    let mut brute: Vec<Vec<usize>> = (0..6)
        .map(|g| {
            let mut c: Vec<usize> = k.members.iter().map(|&x| s3.mul(g, x)).collect();
            c.sort_unstable();
            c
        })
        .collect();
    brute.sort();
    brute.dedup();
    assert_eq!(brute.len(), 2);
    let firsts: Vec<usize> = brute.iter().map(|c| c[0]).collect();
    assert_eq!(reps, firsts);
    let sigma = s3.conjugacy().reps[1];
    assert_eq!(reps, vec![0, sigma]);
    let other = direct_product(&cyclic(2), &cyclic(3));
    assert!(matches!(cosets(&other, &k), Err(Error::NotSubgroup(_))));
}

#[test]
fn catalog_class_invariants() {
    for uri in CATALOG {
        let g = parse_group(uri).unwrap();
        let n = g.order();
        let cd = g.conjugacy();
        assert_eq!(cd.class_sizes().iter().sum::<usize>(), n);
        for (c, class) in cd.classes.iter().enumerate() {
            assert_eq!(n % class.len(), 0);
            assert_eq!(cd.reps[c], class[0]);
            assert_eq!(class.len() * cd.centralizers[c].len(), n);
        }
        for b in 0..n {
            let a = cd.reps[cd.class_of[b]];
            let k = cd.transversal[b];
            assert_eq!(g.mul(g.mul(k, a), g.inv(k)), b, "{uri}");
        }
    }
}
