//! Irreducible character tables via Burnside's class-sum method.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::groups::{Group, Subgroup};
use crate::{tol, Error, Result};

/// A function constant on conjugacy classes, stored per class.
#[derive(Debug, Clone)]
pub struct ClassFunction {
    pub group: Group,
    pub values: Vec<Complex64>,
}

impl ClassFunction {
    pub fn new(group: &Group, values: Vec<Complex64>) -> Self {
        ClassFunction { group: group.clone(), values }
    }

    /// Build from a function on elements, sampled at class representatives.
    pub fn from_fn(group: &Group, f: impl Fn(usize) -> Complex64) -> Self {
        let cd = group.conjugacy();
        ClassFunction::new(group, cd.reps.iter().map(|&r| f(r)).collect())
    }

    pub fn trivial(group: &Group) -> Self {
        let k = group.conjugacy().num_classes();
        ClassFunction::new(group, vec![Complex64::new(1.0, 0.0); k])
    }

    pub fn regular(group: &Group) -> Self {
        ClassFunction::from_fn(group, |g| {
            Complex64::new(if g == 0 { group.order() as f64 } else { 0.0 }, 0.0)
        })
    }

    /// Value at a group element.
    #[inline]
    pub fn at(&self, g: usize) -> Complex64 {
        self.values[self.group.conjugacy().class_of[g]]
    }

    pub fn degree(&self) -> f64 {
        self.values[0].re
    }

    /// Values on every element, in element order.
    pub fn dense(&self) -> Vec<Complex64> {
        let cd = self.group.conjugacy();
        cd.class_of.iter().map(|&c| self.values[c]).collect()
    }

    pub fn restrict(&self, k: &Subgroup) -> Result<ClassFunction> {
        same_group(&self.group, &k.parent)?;
        Ok(ClassFunction::from_fn(&k.as_group, |x| self.at(k.members[x])))
    }

    pub fn scale(&self, c: Complex64) -> ClassFunction {
        ClassFunction::new(&self.group, self.values.iter().map(|v| v * c).collect())
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        same_group(&self.group, &other.group)?;
        Ok(ClassFunction::new(&self.group, self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect()))
    }

    pub fn approx_eq(&self, other: &ClassFunction, eps: f64) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| (a - b).norm() < eps)
    }
}

pub(crate) fn same_group(a: &Group, b: &Group) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// `(1/|G|) Σ_g χ₁(g)* χ₂(g)`.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<Complex64> {
    same_group(&a.group, &b.group)?;
    let cd = a.group.conjugacy();
    let s: Complex64 = cd
        .classes
        .iter()
        .zip(a.values.iter().zip(&b.values))
        .map(|(c, (x, y))| x.conj() * y * c.len() as f64)
        .sum();
    Ok(s / a.group.order() as f64)
}

pub fn conjugate_character(chi: &ClassFunction) -> ClassFunction {
    ClassFunction::new(&chi.group, chi.values.iter().map(|v| v.conj()).collect())
}

/// `Ind_K^G χ` for a class function `χ` on `K.as_group`.
pub fn induced_character(g: &Group, k: &Subgroup, chi: &ClassFunction) -> Result<ClassFunction> {
    same_group(g, &k.parent).map_err(|_| Error::NotSubgroup("subgroup of a different group".into()))?;
    same_group(&chi.group, &k.as_group)?;
    let scale = 1.0 / k.order() as f64;
    Ok(ClassFunction::from_fn(g, |x| {
        let mut s = Complex64::new(0.0, 0.0);
        for y in 0..g.order() {
            if let Some(i) = k.index_of(g.conj(y, x)) {
                s += chi.at(i);
            }
        }
        s * scale
    }))
}

/// An element `Σ_j mult[j] ζ^j` of the cyclotomic field, `ζ = e^{2πi/order}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSum {
    pub order: usize,
    pub mult: Vec<i64>,
}

impl RootSum {
    pub fn value(&self) -> Complex64 {
        self.mult
            .iter()
            .enumerate()
            .map(|(j, &m)| Complex64::from_polar(m as f64, 2.0 * PI * j as f64 / self.order as f64))
            .sum()
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub group: Group,
    pub rows: Vec<ClassFunction>,
    pub dims: Vec<usize>,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Index of the row equal to `chi` within `eps`.
    pub fn find(&self, chi: &ClassFunction, eps: f64) -> Option<usize> {
        self.rows.iter().position(|r| r.approx_eq(chi, eps))
    }

    /// Row index of the complex-conjugate character.
    pub fn conjugate_index(&self, i: usize) -> usize {
        self.find(&conjugate_character(&self.rows[i]), 1e-6).expect("conjugate of an irreducible row is a row")
    }

    /// Multiplicities of each irreducible in `chi`.
    pub fn decompose(&self, chi: &ClassFunction) -> Result<Vec<i64>> {
        let mut out = Vec::with_capacity(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            let m = inner_product(r, chi)?;
            let n = m.re.round();
            if (m - Complex64::new(n, 0.0)).norm() > tol::MULT {
                return Err(Error::NonIntegerMultiplicity { index: i, value: m.re });
            }
            out.push(n as i64);
        }
        Ok(out)
    }

    /// Write the value in row `row`, class `class` as a sum of roots of unity of
    /// the representative's order, when its eigenvalue multiplicities are integral.
    pub fn snap(&self, row: usize, class: usize) -> Option<RootSum> {
        let g = &self.group;
        let cd = g.conjugacy();
        let rep = cd.reps[class];
        let o = cd.element_orders[rep];
        let chi = &self.rows[row];
        let powers: Vec<Complex64> = (0..o).map(|t| chi.at(g.pow(rep, t))).collect();
        let mut mult = Vec::with_capacity(o);
        for j in 0..o {
            let m: Complex64 = powers
                .iter()
                .enumerate()
                .map(|(t, v)| v * Complex64::from_polar(1.0, -2.0 * PI * (j * t % o) as f64 / o as f64))
                .sum::<Complex64>()
                / o as f64;
            let r = m.re.round();
            if (m - Complex64::new(r, 0.0)).norm() > tol::SNAP || r < 0.0 {
                return None;
            }
            mult.push(r as i64);
        }
        let rs = RootSum { order: o, mult };
        ((rs.value() - chi.values[class]).norm() < tol::SNAP).then_some(rs)
    }

    /// Table values with snapped entries replaced by their exact evaluation.
    pub fn snapped_values(&self) -> Vec<Vec<Complex64>> {
        (0..self.rows.len())
            .map(|i| {
                (0..self.rows[i].values.len())
                    .map(|c| match self.snap(i, c) {
                        Some(rs) => clean(rs.value()),
                        None => self.rows[i].values[c],
                    })
                    .collect()
            })
            .collect()
    }
}

/// Zero out parts below 1e-12 so exported values print cleanly.
pub fn clean(z: Complex64) -> Complex64 {
    let f = |x: f64| {
        let r = x.round();
        if (x - r).abs() < 1e-12 {
            r + 0.0
        } else {
            x
        }
    };
    Complex64::new(f(z.re), f(z.im))
}

/// Degree ascending, then values lexicographically descending on `(re, im)`.
fn row_order(a: &ClassFunction, b: &ClassFunction) -> Ordering {
    let key = |x: f64| (x / 1e-6).round() as i64;
    let da = key(a.degree());
    let db = key(b.degree());
    da.cmp(&db).then_with(|| {
        for (x, y) in a.values.iter().zip(&b.values) {
            let o = key(y.re).cmp(&key(x.re)).then(key(y.im).cmp(&key(x.im)));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

/// Memoized character table of `g`.
pub fn character_table(g: &Group) -> Result<Arc<CharacterTable>> {
    if let Some(t) = g.chars.get() {
        return Ok(t.clone());
    }
    let t = Arc::new(match g.factors() {
        Some((a, b)) => product_table(g, &*character_table(a)?, &*character_table(b)?),
        None => burnside_table(g)?,
    });
    Ok(g.chars.get_or_init(|| t).clone())
}

/// Tensor product of the factor tables of a direct product.
fn product_table(g: &Group, ta: &CharacterTable, tb: &CharacterTable) -> CharacterTable {
    let m = tb.group.order();
    let mut rows = Vec::with_capacity(ta.len() * tb.len());
    for ra in &ta.rows {
        for rb in &tb.rows {
            rows.push(ClassFunction::from_fn(g, |x| ra.at(x / m) * rb.at(x % m)));
        }
    }
    finish(g, rows)
}

fn finish(g: &Group, mut rows: Vec<ClassFunction>) -> CharacterTable {
    rows.sort_by(row_order);
    let dims = rows.iter().map(|r| r.degree().round() as usize).collect();
    CharacterTable { group: g.clone(), rows, dims }
}

/// Generic numerical path, used directly and as an oracle for product tables.
pub fn burnside_table(g: &Group) -> Result<CharacterTable> {
    let cd = g.conjugacy();
    let r = cd.num_classes();
    let sizes: Vec<f64> = cd.class_sizes().iter().map(|&s| s as f64).collect();
    // c[i][j][k] = #{x ∈ C_i : x⁻¹ g_k ∈ C_j}
    let mut bs = Vec::with_capacity(r);
    for i in 0..r {
        let mut b = DMatrix::<Complex64>::zeros(r, r);
        for &x in &cd.classes[i] {
            let xi = g.inv(x);
            for k in 0..r {
                let j = cd.class_of[g.mul(xi, cd.reps[k])];
                b[(j, k)] += Complex64::new(1.0, 0.0);
            }
        }
        for j in 0..r {
            for k in 0..r {
                b[(j, k)] *= (sizes[k] / sizes[j]).sqrt();
            }
        }
        bs.push(b);
    }
    let n = g.order() as f64;
    for attempt in 0..8u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + attempt);
        let mut h = DMatrix::<Complex64>::zeros(r, r);
        for (i, b) in bs.iter().enumerate() {
            let a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) / sizes[i];
            h += b * a + b.adjoint() * a.conj();
        }
        let eig = h.symmetric_eigen();
        let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let scale = ev.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        if ev.windows(2).any(|w| w[1] - w[0] < 1e-7 * scale) {
            continue;
        }
        let mut rows = Vec::with_capacity(r);
        let mut ok = true;
        for c in 0..r {
            let mut u = eig.eigenvectors.column(c).into_owned();
            let norm = u.norm();
            u /= Complex64::new(norm, 0.0);
            let phase = u[0] / u[0].norm();
            u /= phase;
            for b in &bs {
                let bu = b * &u;
                let lambda = u.dotc(&bu);
                if (bu - &u * lambda).norm() > 1e-8 * (1.0 + lambda.norm()) {
                    ok = false;
                }
            }
            let values: Vec<Complex64> = (0..r).map(|j| u[j] * (n / sizes[j]).sqrt()).collect();
            rows.push(ClassFunction::new(g, values));
        }
        if !ok {
            continue;
        }
        return Ok(finish(g, rows));
    }
    Err(Error::NumericalDegeneracy(8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, symmetric};

    #[test]
    fn z2_rows() {
        let t = character_table(&cyclic(2)).unwrap();
        assert!((t.rows[0].values[1] - 1.0).norm() < 1e-9);
        assert!((t.rows[1].values[1] + 1.0).norm() < 1e-9);
    }

    #[test]
    fn s3_degrees_and_order() {
        let t = character_table(&symmetric(3)).unwrap();
        assert_eq!(t.dims, vec![1, 1, 2]);
        assert!((t.rows[1].values[1] + 1.0).norm() < 1e-9);
        assert!((t.rows[2].values[2] + 1.0).norm() < 1e-9);
    }

    #[test]
    fn z3_omega_before_conjugate() {
        let t = character_table(&cyclic(3)).unwrap();
        assert!(t.rows[1].values[1].im > 0.0);
        assert_eq!(t.conjugate_index(1), 2);
    }

    #[test]
    fn snapping_recovers_roots() {
        let t = character_table(&cyclic(5)).unwrap();
        for i in 0..5 {
            for c in 0..5 {
                assert!(t.snap(i, c).is_some());
            }
        }
    }
}
