//! Modular invariants, transposition searches and the near-field classification checks.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::characters::{character_table, induced_character};
use crate::groups::{affine_group, AffineGroup, NearFieldSpec};
use crate::quantum_double::{AnyonKind, QuantumDouble};
use crate::{tol, Error, Result};

#[derive(Debug, Clone)]
pub struct ModularData {
    pub s: DMatrix<Complex64>,
    pub t: Vec<Complex64>,
}

impl ModularData {
    pub fn new(qd: &QuantumDouble) -> Self {
        ModularData { s: qd.s_matrix(), t: qd.t_vector() }
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantVerdict {
    pub invariant: bool,
    pub s_residual: f64,
    pub t_residual: f64,
    pub non_negative: bool,
    pub integral: bool,
    pub vacuum: bool,
}

/// Check `MS = SM`, `MT = TM`, non-negative integer entries and `M₀₀ = 1`.
pub fn is_modular_invariant(m: &DMatrix<f64>, data: &ModularData) -> Result<InvariantVerdict> {
    let n = data.len();
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::SizeMismatch { expected: n, got: m.nrows().max(m.ncols()) });
    }
    let mc = m.map(|v| Complex64::new(v, 0.0));
    let s_residual = (&mc * &data.s - &data.s * &mc).iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut t_residual: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            t_residual = t_residual.max((mc[(i, j)] * (data.t[j] - data.t[i])).norm());
        }
    }
    let non_negative = m.iter().all(|&v| v >= 0.0);
    let integral = m.iter().all(|&v| (v - v.round()).abs() < tol::EQ);
    let vacuum = (m[(0, 0)] - 1.0).abs() < tol::EQ;
    let invariant = s_residual < tol::EQ && t_residual < tol::EQ && non_negative && integral && vacuum;
    Ok(InvariantVerdict { invariant, s_residual, t_residual, non_negative, integral, vacuum })
}

/// Matrix with `M e_x = e_{perm[x]}`.
pub fn permutation_matrix(perm: &[usize]) -> DMatrix<f64> {
    let n = perm.len();
    let mut m = DMatrix::zeros(n, n);
    for (x, &y) in perm.iter().enumerate() {
        m[(y, x)] = 1.0;
    }
    m
}

pub fn transposition(n: usize, x: usize, y: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(x, y);
    p
}

/// `x ↦ outer[inner[x]]`.
pub fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&i| outer[i]).collect()
}

/// Permutation matrix of `X ↦ X^∨`.
pub fn charge_conjugation_matrix(qd: &QuantumDouble) -> DMatrix<f64> {
    permutation_matrix(&qd.dual_permutation())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TranspositionHit {
    pub x: usize,
    pub y: usize,
    pub kinds: (AnyonKind, AnyonKind),
    pub s_residual: f64,
}

/// Largest `|S_{σi,σj} − S_{ij}|` for the transposition `σ = (x y)`.
pub fn transposition_residual(s: &DMatrix<Complex64>, x: usize, y: usize) -> f64 {
    let n = s.nrows();
    let sigma = |i: usize| if i == x { y } else if i == y { x } else { i };
    let mut worst: f64 = 0.0;
    for &i in &[x, y] {
        for j in 0..n {
            worst = worst.max((s[(sigma(i), sigma(j))] - s[(i, j)]).norm());
            worst = worst.max((s[(sigma(j), sigma(i))] - s[(j, i)]).norm());
        }
    }
    worst
}

/// All unordered pairs whose transposition is a modular invariant.
pub fn search_transposition_invariants(qd: &QuantumDouble, data: &ModularData) -> Vec<TranspositionHit> {
    let n = data.len();
    let mut hits = Vec::new();
    for x in 1..n {
        for y in x + 1..n {
            if (data.t[x] - data.t[y]).norm() > tol::EQ || (data.s[(0, x)] - data.s[(0, y)]).norm() > tol::EQ {
                continue;
            }
            let r = transposition_residual(&data.s, x, y);
            if r < tol::EQ {
                hits.push(TranspositionHit { x, y, kinds: (qd.kind(x), qd.kind(y)), s_residual: r });
            }
        }
    }
    hits
}

/// The chargeon `C = (e, Ind χ)` with `χ` the first nontrivial character of the
/// translations, and the fluxion `F = ((1,1)‾, 𝟙)`.
pub fn chargeon_fluxion_pair(qd: &QuantumDouble, ag: &AffineGroup) -> Result<(usize, usize)> {
    let g = &ag.group;
    let k = ag.translations();
    let tk = character_table(&k.as_group)?;
    let chi = tk.rows.get(1).ok_or_else(|| Error::AxiomFailure("translations are trivial".into()))?;
    let pi = induced_character(g, &k, chi)?;
    let tg = character_table(g)?;
    let row = tg.find(&pi, 1e-6).ok_or_else(|| Error::AxiomFailure("induced character is reducible".into()))?;
    let a = ag.unit_translation();
    let cd = g.conjugacy();
    Ok((qd.index(0, row), qd.index(cd.class_of[a], 0)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepCheck {
    pub step: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct B1Report {
    pub field: String,
    pub order: usize,
    pub c: usize,
    pub f: usize,
    pub steps: Vec<StepCheck>,
    pub invariant: InvariantVerdict,
    pub invariant_with_j: InvariantVerdict,
    pub passed: bool,
}

impl B1Report {
    pub fn failed_steps(&self) -> Vec<&'static str> {
        self.steps.iter().filter(|s| !s.passed).map(|s| s.step).collect()
    }
}

/// Build `C`, `F` for `H⁺ ⋊ H^×` and re-check the classification proof's facts.
pub fn verify_theorem_b1(h: &NearFieldSpec) -> Result<B1Report> {
    let ag = affine_group(h)?;
    let g = &ag.group;
    let n = g.order();
    let cd = g.conjugacy();
    let qd = QuantumDouble::new(g)?;
    let data = ModularData::new(&qd);
    let (c, f) = chargeon_fluxion_pair(&qd, &ag)?;
    let pi_row = qd.anyons[c].pi;
    let tg = character_table(g)?;
    let pi = &tg.rows[pi_row];
    let a = ag.unit_translation();
    let ainv = g.inv(a);
    let abar = &cd.classes[cd.class_of[a]];
    let za = &cd.centralizers[cd.class_of[a]];
    let mut ea: Vec<usize> = std::iter::once(0).chain(abar.iter().copied()).collect();
    ea.sort_unstable();
    let close = |x: Complex64, y: f64| (x - Complex64::new(y, 0.0)).norm() < 1e-8;

    let mut steps = Vec::new();
    let mut push = |step: &'static str, passed: bool, detail: String| steps.push(StepCheck { step, passed, detail });

    push("a", c != 0 && f != 0 && pi_row != 0 && a != 0, format!("C = {c}, F = {f}"));
    push("b", tg.dims[pi_row] == abar.len(), format!("dim pi = {}, |class(a)| = {}", tg.dims[pi_row], abar.len()));
    let closed = ea.iter().all(|&x| ea.iter().all(|&y| ea.binary_search(&g.mul(x, y)).is_ok()));
    push("c", closed, "{e} u class(a) closed under multiplication".into());
    let d_ok = tg
        .rows
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pi_row)
        .all(|(i, mu)| close(mu.at(a), tg.dims[i] as f64) && close(mu.at(ainv), tg.dims[i] as f64));
    push("d", d_ok, "tr_mu(a) = dim mu for mu != pi".into());
    let off = (0..n).filter(|x| ea.binary_search(x).is_err()).all(|x| close(pi.at(x), 0.0));
    push("e", off && close(pi.at(a), -1.0) && close(pi.at(ainv), -1.0), format!("tr_pi(a) = {:.6}", pi.at(a).re));
    push("f", za.len() == abar.len() + 1, format!("|Z(a)| = {}", za.len()));
    push("g", *za == ea, "Z(a) = {e} u class(a)".into());
    let orders: Vec<usize> = za.iter().skip(1).map(|&x| cd.element_orders[x]).collect();
    let p = orders.first().copied().unwrap_or(1);
    let elementary = orders.iter().all(|&o| o == p)
        && za.iter().all(|&x| za.iter().all(|&y| g.commute(x, y)))
        && is_power_of(za.len(), p)
        && n == za.len() * (za.len() - 1);
    push("h", elementary, format!("Z(a) elementary abelian of order {}", za.len()));
    let units: Vec<usize> = (1..h.q).collect();
    let center = units.iter().filter(|&&z| z != h.one && units.iter().all(|&b| h.mul(z, b) == h.mul(b, z))).count();
    push("center", h.q <= 2 || center > 0, format!("{center} non-identity central units"));

    let m = qd.len();
    let p_mat = permutation_matrix(&transposition(m, c, f));
    let invariant = is_modular_invariant(&p_mat, &data)?;
    let pj = permutation_matrix(&compose(&transposition(m, c, f), &qd.dual_permutation()));
    let invariant_with_j = is_modular_invariant(&pj, &data)?;
    let passed = steps.iter().all(|s| s.passed) && invariant.invariant && invariant_with_j.invariant;
    Ok(B1Report { field: h.label(), order: n, c, f, steps, invariant, invariant_with_j, passed })
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    if p < 2 {
        return n == 1;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}
