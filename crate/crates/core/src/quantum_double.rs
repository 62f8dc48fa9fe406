//! Anyons of the quantum double D(G): characters, modular data and fusion.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::characters::{character_table, same_group, CharacterTable, ClassFunction};
use crate::groups::{Group, Subgroup};
use crate::{tol, Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// A simple object `(ā, π)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Anyon {
    /// Index of the conjugacy class.
    pub class: usize,
    /// Representative `a` of the class (lowest index).
    pub class_rep: usize,
    /// Row of the character table of `Z(a)`.
    pub pi: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnyonKind {
    Vacuum,
    Chargeon,
    Fluxion,
    Mixed,
}

impl AnyonKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AnyonKind::Vacuum => "vacuum",
            AnyonKind::Chargeon => "chargeon",
            AnyonKind::Fluxion => "fluxion",
            AnyonKind::Mixed => "mixed",
        }
    }
}

/// Centralizer data for one conjugacy class.
#[derive(Debug, Clone)]
pub struct Sector {
    pub rep: usize,
    pub centralizer: Subgroup,
    pub table: Arc<CharacterTable>,
    /// `traces[π][x]` is `tr_π(x)` for `x ∈ Z(a)` (parent index) and 0 elsewhere.
    pub traces: Vec<Vec<Complex64>>,
    pub first_anyon: usize,
}

/// A function on pairs `(g, h)`, read as `χ(g h*)`, stored densely at `g·n + h`.
#[derive(Debug, Clone)]
pub struct DGClassFunction {
    pub group: Group,
    pub values: Vec<Complex64>,
}

impl DGClassFunction {
    pub fn zeros(group: &Group) -> Self {
        let n = group.order();
        DGClassFunction { group: group.clone(), values: vec![ZERO; n * n] }
    }

    pub fn from_fn(group: &Group, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let n = group.order();
        let mut values = vec![ZERO; n * n];
        for g in 0..n {
            for h in 0..n {
                if group.commute(g, h) {
                    values[g * n + h] = f(g, h);
                }
            }
        }
        DGClassFunction { group: group.clone(), values }
    }

    /// Character of the regular representation, `|G| δ_{g,e}`.
    pub fn regular(group: &Group) -> Self {
        let n = group.order();
        let mut c = DGClassFunction::zeros(group);
        for h in 0..n {
            c.values[h] = Complex64::new(n as f64, 0.0);
        }
        c
    }

    #[inline]
    pub fn at(&self, g: usize, h: usize) -> Complex64 {
        self.values[g * self.group.order() + h]
    }

    pub fn add(&self, other: &DGClassFunction) -> Result<DGClassFunction> {
        same_group(&self.group, &other.group)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(DGClassFunction { group: self.group.clone(), values })
    }

    pub fn sub(&self, other: &DGClassFunction) -> Result<DGClassFunction> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> DGClassFunction {
        DGClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn max_diff(&self, other: &DGClassFunction) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// `(1/|G|) Σ_{g,h} χ₁(gh*)* χ₂(gh*)`.
pub fn dg_inner_product(a: &DGClassFunction, b: &DGClassFunction) -> Result<Complex64> {
    same_group(&a.group, &b.group)?;
    let s: Complex64 = a.values.iter().zip(&b.values).map(|(x, y)| x.conj() * y).sum();
    Ok(s / a.group.order() as f64)
}

/// `χ(gh*) = Σ_{h₁h₂=h} χ_X(gh₁*) χ_Y(gh₂*)`.
pub fn tensor_character(x: &DGClassFunction, y: &DGClassFunction) -> Result<DGClassFunction> {
    same_group(&x.group, &y.group)?;
    let g = &x.group;
    let n = g.order();
    let mut out = DGClassFunction::zeros(g);
    for a in 0..n {
        for h1 in 0..n {
            let u = x.at(a, h1);
            if u == ZERO {
                continue;
            }
            let h1i = g.inv(h1);
            for h in 0..n {
                let v = y.at(a, g.mul(h1i, h));
                if v != ZERO {
                    out.values[a * n + h] += u * v;
                }
            }
        }
    }
    Ok(out)
}

/// The anyons of `D(G)` with their centralizer data.
#[derive(Debug, Clone)]
pub struct QuantumDouble {
    pub group: Group,
    pub anyons: Vec<Anyon>,
    pub sectors: Vec<Sector>,
}

impl QuantumDouble {
    pub fn new(group: &Group) -> Result<Self> {
        let cd = group.conjugacy();
        let n = group.order();
        let mut anyons = Vec::new();
        let mut sectors = Vec::with_capacity(cd.num_classes());
        for (c, &a) in cd.reps.iter().enumerate() {
            let centralizer = match group.factors() {
                Some((g1, g2)) => {
                    let m = g2.order();
                    let s = Subgroup::centralizer(g1, a / m);
                    let t = Subgroup::centralizer(g2, a % m);
                    Subgroup::product(group, &s, &t)
                }
                None => Subgroup::new(group, &cd.centralizers[c])?,
            };
            let table = character_table(&centralizer.as_group)?;
            let mut traces = Vec::with_capacity(table.len());
            for row in &table.rows {
                let mut t = vec![ZERO; n];
                for (i, &x) in centralizer.members.iter().enumerate() {
                    t[x] = row.at(i);
                }
                traces.push(t);
            }
            let first_anyon = anyons.len();
            for (pi, &d) in table.dims.iter().enumerate() {
                anyons.push(Anyon { class: c, class_rep: a, pi, dim: cd.classes[c].len() * d });
            }
            sectors.push(Sector { rep: a, centralizer, table, traces, first_anyon });
        }
        Ok(QuantumDouble { group: group.clone(), anyons, sectors })
    }

    pub fn len(&self) -> usize {
        self.anyons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.anyons.is_empty()
    }

    pub fn index(&self, class: usize, pi: usize) -> usize {
        self.sectors[class].first_anyon + pi
    }

    /// Letters `A, B, …` when there are at most 26 anyons, `(class,irrep)` otherwise.
    pub fn label(&self, x: usize) -> String {
        if self.anyons.len() <= 26 {
            ((b'A' + x as u8) as char).to_string()
        } else {
            let a = self.anyons[x];
            format!("({},{})", a.class, a.pi)
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|x| self.label(x)).collect()
    }

    pub fn find_label(&self, s: &str) -> Option<usize> {
        (0..self.len()).find(|&x| self.label(x) == s).or_else(|| s.parse().ok().filter(|&x| x < self.len()))
    }

    pub fn kind(&self, x: usize) -> AnyonKind {
        let a = self.anyons[x];
        match (a.class == 0, a.pi == 0) {
            (true, true) => AnyonKind::Vacuum,
            (true, false) => AnyonKind::Chargeon,
            (false, true) => AnyonKind::Fluxion,
            (false, false) => AnyonKind::Mixed,
        }
    }

    /// `tr_π` of anyon `x` evaluated at a parent element of `Z(a)`.
    #[inline]
    pub fn trace(&self, x: usize, z: usize) -> Complex64 {
        let a = self.anyons[x];
        self.sectors[a.class].traces[a.pi][z]
    }

    /// Centralizer character of anyon `x` as a class function on `Z(a)`.
    pub fn irrep(&self, x: usize) -> &ClassFunction {
        let a = self.anyons[x];
        &self.sectors[a.class].table.rows[a.pi]
    }

    /// `χ(gh*) = δ_{h∈ā} δ_{gh,hg} tr_π(k_h⁻¹ g k_h)`.
    pub fn character(&self, x: usize) -> DGClassFunction {
        self.character_with_transversal(x, &self.group.conjugacy().transversal)
    }

    /// Same as [`character`](Self::character) with a caller-supplied transversal.
    pub fn character_with_transversal(&self, x: usize, transversal: &[usize]) -> DGClassFunction {
        let g = &self.group;
        let n = g.order();
        let a = self.anyons[x];
        let cd = g.conjugacy();
        let mut out = DGClassFunction::zeros(g);
        for &h in &cd.classes[a.class] {
            let k = transversal[h];
            let ki = g.inv(k);
            for &z in &self.sectors[a.class].centralizer.members {
                let gg = g.mul(g.mul(k, z), ki);
                debug_assert_eq!(g.mul(ki, g.mul(gg, k)), z);
                out.values[gg * n + h] = self.trace(x, z);
            }
        }
        out
    }

    /// `⟨χ_X, χ⟩`, summed only over the support of `χ_X`.
    pub fn multiplicity(&self, x: usize, chi: &DGClassFunction) -> Complex64 {
        let g = &self.group;
        let n = g.order();
        let a = self.anyons[x];
        let cd = g.conjugacy();
        let mut s = ZERO;
        for &h in &cd.classes[a.class] {
            let k = cd.transversal[h];
            let ki = g.inv(k);
            for &z in &self.sectors[a.class].centralizer.members {
                let gg = g.mul(g.mul(k, z), ki);
                s += self.trace(x, z).conj() * chi.values[gg * n + h];
            }
        }
        s / n as f64
    }

    /// Integer multiplicity of every anyon in `chi`.
    pub fn decompose(&self, chi: &DGClassFunction) -> Result<Vec<i64>> {
        same_group(&self.group, &chi.group)?;
        let mut mult = Vec::with_capacity(self.len());
        for x in 0..self.len() {
            let m = self.multiplicity(x, chi);
            let r = m.re.round();
            if (m - Complex64::new(r, 0.0)).norm() > tol::MULT {
                return Err(Error::NonIntegerMultiplicity { index: x, value: m.re });
            }
            mult.push(r as i64);
        }
        // reassemble and compare
        let mut rest = chi.clone();
        for (x, &m) in mult.iter().enumerate() {
            if m != 0 {
                let c = self.character(x);
                for (r, v) in rest.values.iter_mut().zip(&c.values) {
                    *r -= v * m as f64;
                }
            }
        }
        let worst = rest.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if worst > tol::MULT {
            return Err(Error::NonIntegerMultiplicity { index: usize::MAX, value: worst });
        }
        Ok(mult)
    }

    /// `(ā, π) ↦ (ā⁻¹, π*)` resolved to the canonical representative.
    pub fn dual(&self, x: usize) -> usize {
        let g = &self.group;
        let cd = g.conjugacy();
        let a = self.anyons[x];
        let ainv = g.inv(a.class_rep);
        let c2 = cd.class_of[ainv];
        let sec2 = &self.sectors[c2];
        let k = cd.transversal[ainv];
        // ρ(z) = π*(k z k⁻¹) for z ∈ Z(a′)
        let rho = ClassFunction::from_fn(&sec2.centralizer.as_group, |i| {
            self.trace(x, g.conj(k, sec2.centralizer.members[i])).conj()
        });
        let pi = sec2.table.find(&rho, 1e-6).expect("dual of an irreducible is irreducible");
        self.index(c2, pi)
    }

    /// `(x̄, π) ↦ (x̄, π*)`.
    pub fn op(&self, x: usize) -> usize {
        let a = self.anyons[x];
        self.index(a.class, self.sectors[a.class].table.conjugate_index(a.pi))
    }

    pub fn dims(&self) -> Vec<usize> {
        self.anyons.iter().map(|a| a.dim).collect()
    }

    /// `S_{(ā,π)(ā′,π′)} = 1/(|Z(a)||Z(a′)|) Σ_{h: ha′h⁻¹∈Z(a)} tr_π(ha′⁻¹h⁻¹) tr_π′(h⁻¹a⁻¹h)`.
    pub fn s_matrix(&self) -> DMatrix<Complex64> {
        let g = &self.group;
        let m = self.len();
        let mut s = DMatrix::<Complex64>::zeros(m, m);
        for s1 in &self.sectors {
            let a = s1.rep;
            let ainv = g.inv(a);
            for s2 in &self.sectors {
                let b = s2.rep;
                let binv = g.inv(b);
                let norm = 1.0 / (s1.centralizer.order() * s2.centralizer.order()) as f64;
                for h in 0..g.order() {
                    if !s1.centralizer.contains(g.conj(h, b)) {
                        continue;
                    }
                    let y1 = g.conj(h, binv);
                    let y2 = g.conj(g.inv(h), ainv);
                    for (p1, t1) in s1.traces.iter().enumerate() {
                        for (p2, t2) in s2.traces.iter().enumerate() {
                            s[(s1.first_anyon + p1, s2.first_anyon + p2)] += t1[y1] * t2[y2] * norm;
                        }
                    }
                }
            }
        }
        s
    }

    /// `T_{(ā,π)} = tr_π(a) / tr_π(e)`.
    pub fn t_vector(&self) -> Vec<Complex64> {
        (0..self.len()).map(|x| self.trace(x, self.anyons[x].class_rep) / self.trace(x, 0)).collect()
    }

    pub fn dual_permutation(&self) -> Vec<usize> {
        (0..self.len()).map(|x| self.dual(x)).collect()
    }
}

/// Fusion multiplicities `N_{XY}^Z` stored at `(x·m + y)·m + z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionTensor {
    pub size: usize,
    pub data: Vec<u32>,
}

impl FusionTensor {
    pub fn get(&self, x: usize, y: usize, z: usize) -> u32 {
        self.data[(x * self.size + y) * self.size + z]
    }

    /// Anyons in `X ⊗ Y`, repeated by multiplicity.
    pub fn product(&self, x: usize, y: usize) -> Vec<(usize, u32)> {
        (0..self.size).filter_map(|z| Some((z, self.get(x, y, z))).filter(|p| p.1 > 0)).collect()
    }
}

/// `N_{XY}^Z = Σ_U S_{XU} S_{YU} S_{ZU}* / S_{𝟘U}`.
pub fn fusion_verlinde(s: &DMatrix<Complex64>) -> Result<FusionTensor> {
    let m = s.nrows();
    let mut data = vec![0u32; m * m * m];
    let mut xy = vec![ZERO; m];
    for x in 0..m {
        for y in 0..m {
            for u in 0..m {
                xy[u] = s[(x, u)] * s[(y, u)] / s[(0, u)];
            }
            for z in 0..m {
                let v: Complex64 = (0..m).map(|u| xy[u] * s[(z, u)].conj()).sum();
                let r = v.re.round();
                if (v - Complex64::new(r, 0.0)).norm() > tol::FUSION || r < 0.0 {
                    return Err(Error::NegativeOrNonInteger(x, y, z, v.re));
                }
                data[(x * m + y) * m + z] = r as u32;
            }
        }
    }
    Ok(FusionTensor { size: m, data })
}

/// Fusion computed as the decomposition of tensor-product characters.
pub fn fusion_by_characters(qd: &QuantumDouble) -> Result<FusionTensor> {
    let m = qd.len();
    let chars: Vec<DGClassFunction> = (0..m).map(|x| qd.character(x)).collect();
    let mut data = vec![0u32; m * m * m];
    for x in 0..m {
        for y in 0..m {
            let t = tensor_character(&chars[x], &chars[y])?;
            for (z, n) in qd.decompose(&t)?.into_iter().enumerate() {
                if n < 0 {
                    return Err(Error::NegativeOrNonInteger(x, y, z, n as f64));
                }
                data[(x * m + y) * m + z] = n as u32;
            }
        }
    }
    Ok(FusionTensor { size: m, data })
}

/// Measured relation `(ST)³ = λ S²`: returns `λ` and the residual `‖(ST)³ − λS²‖∞`.
pub fn modular_relation(s: &DMatrix<Complex64>, t: &[Complex64]) -> (Complex64, f64) {
    let tm = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(t));
    let st = s * &tm;
    let lhs = &st * &st * &st;
    let s2 = s * s;
    let (mut num, mut den) = (ZERO, 0.0);
    for (a, b) in lhs.iter().zip(s2.iter()) {
        num += b.conj() * a;
        den += b.norm_sqr();
    }
    let lambda = num / den;
    let resid = (lhs - s2 * lambda).iter().map(|v| v.norm()).fold(0.0, f64::max);
    (lambda, resid)
}

/// `max |(M M†)_{ij} − δ_ij|`.
pub fn unitarity_residual(s: &DMatrix<Complex64>) -> f64 {
    let p = s * s.adjoint();
    let mut worst: f64 = 0.0;
    for i in 0..p.nrows() {
        for j in 0..p.ncols() {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((p[(i, j)] - want).norm());
        }
    }
    worst
}
