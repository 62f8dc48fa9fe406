#![allow(dead_code)]

use qdouble::characters::{character_table, CharacterTable};
use qdouble::groups::{alternating, alternating_elements, from_cycles, permutation_index, Group, Subgroup};
use qdouble::quantum_double::{FusionTensor, QuantumDouble};
use qdouble::Complex64;

/// `6·S` for `D(S₃)` in the order A..H.
pub const S3_S_TIMES_6: [[i32; 8]; 8] = [
    [1, 1, 2, 3, 3, 2, 2, 2],
    [1, 1, 2, -3, -3, 2, 2, 2],
    [2, 2, 4, 0, 0, -2, -2, -2],
    [3, -3, 0, 3, -3, 0, 0, 0],
    [3, -3, 0, -3, 3, 0, 0, 0],
    [2, 2, -2, 0, 0, 4, -2, -2],
    [2, 2, -2, 0, 0, -2, 4, -2],
    [2, 2, -2, 0, 0, -2, -2, 4],
];

/// Fusion table of `D(S₃)`, row `X`, column `Y`.
pub const S3_FUSION: [[&str; 8]; 8] = [
    ["A", "B", "C", "D", "E", "F", "G", "H"],
    ["B", "A", "C", "E", "D", "F", "G", "H"],
    ["C", "C", "ABC", "DE", "DE", "GH", "FH", "FG"],
    ["D", "E", "DE", "ACFGH", "BCFGH", "DE", "DE", "DE"],
    ["E", "D", "DE", "BCFGH", "ACFGH", "DE", "DE", "DE"],
    ["F", "F", "GH", "DE", "DE", "ABF", "HC", "GC"],
    ["G", "G", "FH", "DE", "DE", "HC", "ABG", "FC"],
    ["H", "H", "FG", "DE", "DE", "GC", "FC", "ABH"],
];

/// `N[x][y][z]` read off the printed fusion table.
pub fn s3_fusion_expected() -> Vec<Vec<Vec<u32>>> {
    let mut n = vec![vec![vec![0u32; 8]; 8]; 8];
    for x in 0..8 {
        for y in 0..8 {
            for c in S3_FUSION[x][y].bytes() {
                n[x][y][(c - b'A') as usize] += 1;
            }
        }
    }
    n
}

pub fn fusion_mismatches(t: &FusionTensor, expected: &[Vec<Vec<u32>>]) -> usize {
    let m = expected.len();
    let mut bad = 0;
    for x in 0..m {
        for y in 0..m {
            if (0..m).any(|z| t.get(x, y, z) != expected[x][y][z]) {
                bad += 1;
            }
        }
    }
    bad
}

/// Printed table of `Z(a)`, `a = (1,2)(3,4)` in `A₆`: rows ρ₁..ρ₄, μ; columns
/// `e`, `a`, `{b₁,b₂}`, `{b₃,b₄}`, `{c₁,c₂}`.
pub const A6_ZA_TABLE: [[i32; 5]; 5] = [
    [1, 1, 1, 1, 1],
    [1, 1, -1, -1, 1],
    [1, 1, 1, -1, -1],
    [1, 1, -1, 1, -1],
    [2, -2, 0, 0, 0],
];

pub struct A6Case {
    pub group: Group,
    pub a: usize,
    pub za: Subgroup,
    /// One parent element per printed column.
    pub columns: [usize; 5],
}

pub fn a6_case() -> A6Case {
    let group = alternating(6);
    let elems = alternating_elements(6);
    let idx = |cycles: &[&[u8]]| permutation_index(&elems, &from_cycles(6, cycles)).unwrap();
    let a = idx(&[&[1, 2], &[3, 4]]);
    let za = Subgroup::centralizer(&group, a);
    let columns = [idx(&[]), a, idx(&[&[1, 2], &[5, 6]]), idx(&[&[1, 3], &[2, 4]]), idx(&[&[1, 3, 2, 4], &[5, 6]])];
    A6Case { group, a, za, columns }
}

impl A6Case {
    pub fn table(&self) -> std::sync::Arc<CharacterTable> {
        character_table(&self.za.as_group).unwrap()
    }

    /// Row of the computed table matching each printed row, if every printed row
    /// is matched by a distinct computed row.
    pub fn printed_to_rows(&self) -> Option<[usize; 5]> {
        let t = self.table();
        let mut out = [usize::MAX; 5];
        for (p, printed) in A6_ZA_TABLE.iter().enumerate() {
            let hit = (0..t.len()).find(|&r| {
                self.columns.iter().zip(printed).all(|(&x, &v)| {
                    let i = self.za.index_of(x).unwrap();
                    (t.rows[r].at(i) - Complex64::new(v as f64, 0.0)).norm() < 1e-9
                })
            })?;
            if out.contains(&hit) {
                return None;
            }
            out[p] = hit;
        }
        (t.len() == 5).then_some(out)
    }

    /// Anyon indices of `X_i = (ā, ρ_i)`, `i = 1..4`.
    pub fn x_anyons(&self, qd: &QuantumDouble) -> Option<[usize; 4]> {
        let rows = self.printed_to_rows()?;
        let cd = self.group.conjugacy();
        let class = cd.class_of[self.a];
        let sector = &qd.sectors[class];
        // The sector's centralizer is Z(rep); transport rows through the transversal.
        let k = cd.transversal[self.a];
        let t = self.table();
        let mut out = [0; 4];
        for i in 0..4 {
            let row = &t.rows[rows[i]];
            let pi = (0..sector.table.len()).find(|&p| {
                sector.centralizer.members.iter().enumerate().all(|(j, &z)| {
                    let w = self.group.conj(k, z);
                    let iw = self.za.index_of(w).unwrap();
                    (sector.table.rows[p].at(j) - row.at(iw)).norm() < 1e-9
                })
            })?;
            out[i] = qd.index(class, pi);
        }
        Some(out)
    }
}
