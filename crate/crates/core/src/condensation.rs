//! Boundary condensation, folding and domain-wall tunneling.

use num_complex::Complex64;

use crate::characters::same_group;
use crate::cocycles::{wall_cocycle, TwoCocycle};
use crate::groups::{affine_group, direct_product, AffineGroup, Group, NearFieldKind, NearFieldSpec, Subgroup};
use crate::modular::{chargeon_fluxion_pair, compose, transposition, verify_theorem_b1, B1Report};
use crate::quantum_double::{DGClassFunction, QuantumDouble};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// `χ(gh*) = (1/|K|) δ_{gh,hg} Σ_x δ_{xgx⁻¹∈K} δ_{xhx⁻¹∈K} φ(xgx⁻¹|xhx⁻¹)`.
pub fn boundary_character(g: &Group, k: &Subgroup, phi: &TwoCocycle) -> Result<DGClassFunction> {
    if k.members != phi.subgroup.members || same_group(&k.parent, &phi.subgroup.parent).is_err() {
        return Err(Error::SubgroupMismatch);
    }
    same_group(g, &k.parent).map_err(|_| Error::SubgroupMismatch)?;
    let phase = phi.phase();
    let n = g.order();
    let scale = 1.0 / k.order() as f64;
    let mut out = DGClassFunction::zeros(g);
    for a in 0..n {
        for b in 0..n {
            if !g.commute(a, b) {
                continue;
            }
            let mut s = ZERO;
            for x in 0..n {
                let (Some(i), Some(j)) = (k.index_of(g.conj(x, a)), k.index_of(g.conj(x, b))) else {
                    continue;
                };
                s += phase.local(i, j).expect("conjugates of commuting elements commute");
            }
            out.values[a * n + b] = s * scale;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct CondensationReport {
    pub character: DGClassFunction,
    pub multiplicities: Vec<i64>,
    pub condensed: Vec<usize>,
}

impl CondensationReport {
    /// `Σ m_X dim X`.
    pub fn total_dimension(&self, qd: &QuantumDouble) -> i64 {
        self.multiplicities.iter().zip(qd.dims()).map(|(m, d)| m * d as i64).sum()
    }
}

pub fn condense(qd: &QuantumDouble, k: &Subgroup, phi: &TwoCocycle) -> Result<CondensationReport> {
    let character = boundary_character(&qd.group, k, phi)?;
    let multiplicities = qd.decompose(&character)?;
    let condensed = (0..qd.len()).filter(|&x| multiplicities[x] > 0).collect();
    Ok(CondensationReport { character, multiplicities, condensed })
}

/// `Z(G) ⊠ Z(G′)` realized as `Z(G × G′)`.
#[derive(Debug, Clone)]
pub struct Fold {
    pub left: QuantumDouble,
    pub right: QuantumDouble,
    pub product: QuantumDouble,
    /// `pairs[x·|right| + y]` is the product anyon `X ⊠ Y`.
    pub pairs: Vec<usize>,
}

impl Fold {
    pub fn new(g: &Group, h: &Group) -> Result<Fold> {
        let left = QuantumDouble::new(g)?;
        let right = QuantumDouble::new(h)?;
        let gh = direct_product(g, h);
        let product = QuantumDouble::new(&gh)?;
        let cd = gh.conjugacy();
        let m = h.order();
        let mut pairs = Vec::with_capacity(left.len() * right.len());
        for x in 0..left.len() {
            for y in 0..right.len() {
                let (ax, ay) = (left.anyons[x], right.anyons[y]);
                let c = cd.class_of[ax.class_rep * m + ay.class_rep];
                let sec = &product.sectors[c];
                let target = crate::characters::ClassFunction::from_fn(&sec.centralizer.as_group, |i| {
                    let z = sec.centralizer.members[i];
                    left.trace(x, z / m) * right.trace(y, z % m)
                });
                let pi = sec.table.find(&target, 1e-6).expect("product of irreducibles is irreducible");
                pairs.push(product.index(c, pi));
            }
        }
        Ok(Fold { left, right, product, pairs })
    }

    pub fn pair(&self, x: usize, y: usize) -> usize {
        self.pairs[x * self.right.len() + y]
    }

    /// `χ_{X⊠Y}((g₁,g₂)(h₁,h₂)*) = χ_X(g₁h₁*) χ_Y(g₂h₂*)`, built from the factors.
    pub fn product_character(&self, x: usize, y: usize) -> DGClassFunction {
        let mut out = DGClassFunction::zeros(&self.product.group);
        self.accumulate(&mut out, x, y, Complex64::new(1.0, 0.0));
        out
    }

    fn accumulate(&self, out: &mut DGClassFunction, x: usize, y: usize, c: Complex64) {
        let m = self.right.group.order();
        let nn = self.product.group.order();
        let sx = support(&self.left, x);
        let sy = support(&self.right, y);
        for &(g1, h1, v1) in &sx {
            for &(g2, h2, v2) in &sy {
                out.values[(g1 * m + g2) * nn + h1 * m + h2] += v1 * v2 * c;
            }
        }
    }
}

/// Nonzero entries `(g, h, χ_X(gh*))` of an anyon character.
pub fn support(qd: &QuantumDouble, x: usize) -> Vec<(usize, usize, Complex64)> {
    let g = &qd.group;
    let cd = g.conjugacy();
    let a = qd.anyons[x];
    let mut out = Vec::new();
    for &h in &cd.classes[a.class] {
        let k = cd.transversal[h];
        let ki = g.inv(k);
        for &z in &qd.sectors[a.class].centralizer.members {
            let v = qd.trace(x, z);
            if v != ZERO {
                out.push((g.mul(g.mul(k, z), ki), h, v));
            }
        }
    }
    out
}

/// A domain wall: a subgroup of `G × G′` with a cocycle on it.
#[derive(Debug, Clone)]
pub struct WallSpec {
    pub u: Subgroup,
    pub phi: TwoCocycle,
}

impl WallSpec {
    pub fn new(u: Subgroup, phi: TwoCocycle) -> Result<Self> {
        if u.members != phi.subgroup.members {
            return Err(Error::SubgroupMismatch);
        }
        Ok(WallSpec { u, phi })
    }

    /// `Δ(G)` with the trivial cocycle.
    pub fn diagonal(g: &Group) -> Self {
        let gg = direct_product(g, g);
        let n = g.order();
        let members: Vec<usize> = (0..n).map(|x| x * n + x).collect();
        let u = Subgroup::new(&gg, &members).expect("diagonal subgroup");
        let phi = TwoCocycle::trivial(&u);
        WallSpec { u, phi }
    }

    pub fn wall(ag: &AffineGroup) -> Result<Self> {
        let phi = wall_cocycle(ag)?;
        Ok(WallSpec { u: phi.subgroup.clone(), phi })
    }
}

/// `n[x][y]` = multiplicity of `X ⊠ Y` in the wall algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TunnelingMatrix {
    pub n: Vec<Vec<i64>>,
}

impl TunnelingMatrix {
    /// `Y` for each `X` when every row and column has a single 1.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let rows = self.n.len();
        let cols = self.n.first().map_or(0, Vec::len);
        if rows != cols {
            return None;
        }
        let mut perm = Vec::with_capacity(rows);
        let mut seen = vec![false; cols];
        for r in &self.n {
            let ones: Vec<usize> = (0..cols).filter(|&y| r[y] != 0).collect();
            if ones.len() != 1 || r[ones[0]] != 1 || seen[ones[0]] {
                return None;
            }
            seen[ones[0]] = true;
            perm.push(ones[0]);
        }
        Some(perm)
    }
}

pub fn tunnel(fold: &Fold, wall: &WallSpec) -> Result<(TunnelingMatrix, CondensationReport)> {
    let report = condense(&fold.product, &wall.u, &wall.phi)?;
    let (l, r) = (fold.left.len(), fold.right.len());
    let n = (0..l).map(|x| (0..r).map(|y| report.multiplicities[fold.pair(x, y)]).collect()).collect();
    Ok((TunnelingMatrix { n }, report))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceVerdict {
    pub left_projection_onto: bool,
    pub right_projection_onto: bool,
    pub pairing_nondegenerate: bool,
    pub conditions_hold: bool,
    /// `X ↦ Y^op` when the tunneling matrix is a permutation.
    pub equivalence: Option<Vec<usize>>,
    pub matrix: TunnelingMatrix,
}

/// Runs both the subgroup/cocycle conditions and the tunneling route, and
/// fails if they disagree.
pub fn equivalence_check(fold: &Fold, wall: &WallSpec) -> Result<EquivalenceVerdict> {
    let gl = &fold.left.group;
    let gr = &fold.right.group;
    let m = gr.order();
    let u = &wall.u;
    let mut hit_l = vec![false; gl.order()];
    let mut hit_r = vec![false; m];
    for &x in &u.members {
        hit_l[x / m] = true;
        hit_r[x % m] = true;
    }
    let left_projection_onto = hit_l.iter().all(|&b| b);
    let right_projection_onto = hit_r.iter().all(|&b| b);
    let phase = wall.phi.phase();
    let ls: Vec<usize> = u.members.iter().copied().filter(|x| x % m == 0).collect();
    let rs: Vec<usize> = u.members.iter().copied().filter(|x| x / m == 0).collect();
    let row = |l: usize| -> Vec<Complex64> { rs.iter().map(|&r| phase.get(l, r).expect("commuting")).collect() };
    let col = |r: usize| -> Vec<Complex64> { ls.iter().map(|&l| phase.get(l, r).expect("commuting")).collect() };
    let distinct = |vs: Vec<Vec<Complex64>>| {
        (0..vs.len()).all(|i| {
            (0..i).all(|j| vs[i].iter().zip(&vs[j]).any(|(a, b)| (a - b).norm() > 1e-8))
        })
    };
    let pairing_nondegenerate =
        distinct(ls.iter().map(|&l| row(l)).collect()) && distinct(rs.iter().map(|&r| col(r)).collect());
    let conditions_hold = left_projection_onto && right_projection_onto && pairing_nondegenerate;

    let (matrix, _) = tunnel(fold, wall)?;
    let equivalence = matrix
        .as_permutation()
        .map(|p| p.iter().map(|&y| fold.right.op(y)).collect::<Vec<_>>());
    if conditions_hold != equivalence.is_some() {
        return Err(Error::ConditionMismatch(format!(
            "conditions {} but tunneling matrix {} a permutation",
            if conditions_hold { "hold" } else { "fail" },
            if equivalence.is_some() { "is" } else { "is not" }
        )));
    }
    Ok(EquivalenceVerdict {
        left_projection_onto,
        right_projection_onto,
        pairing_nondegenerate,
        conditions_hold,
        equivalence,
        matrix,
    })
}

/// `Φ`, `Ψ`, `Γ` on `G × G`.
#[derive(Debug, Clone)]
pub struct ReferenceCharacters {
    pub phi: DGClassFunction,
    pub psi: DGClassFunction,
    pub gamma: DGClassFunction,
}

/// `Φ = Σ χ_{X⊠X^op}`, `Ψ = Σ χ_{(x̄,ρ)⊠(x̄⁻¹,ρ)}`, `Γ = χ_{C⊠C} + χ_{F⊠F} − χ_{C⊠F} − χ_{F⊠C}`.
pub fn reference_characters(fold: &Fold, c: usize, f: usize) -> ReferenceCharacters {
    let q = &fold.left;
    let one = Complex64::new(1.0, 0.0);
    let mut phi = DGClassFunction::zeros(&fold.product.group);
    let mut psi = phi.clone();
    let mut gamma = phi.clone();
    for x in 0..q.len() {
        fold.accumulate(&mut phi, x, q.op(x), one);
        fold.accumulate(&mut psi, x, q.dual(q.op(x)), one);
    }
    fold.accumulate(&mut gamma, c, c, one);
    fold.accumulate(&mut gamma, f, f, one);
    fold.accumulate(&mut gamma, c, f, -one);
    fold.accumulate(&mut gamma, f, c, -one);
    ReferenceCharacters { phi, psi, gamma }
}

/// `δ_{gh,hg} δ_{(g₁,h₁) ~ (g₂,h₂)} |Z(g₁) ∩ Z(h₁)|` evaluated directly.
pub fn phi_closed_form(g: &Group) -> DGClassFunction {
    let gg = direct_product(g, g);
    let n = g.order();
    DGClassFunction::from_fn(&gg, |a, b| {
        let (g1, g2, h1, h2) = (a / n, a % n, b / n, b % n);
        let conj = (0..n).any(|x| g.conj(x, g1) == g2 && g.conj(x, h1) == h2);
        if !conj {
            return ZERO;
        }
        let both = (0..n).filter(|&x| g.commute(x, g1) && g.commute(x, h1)).count();
        Complex64::new(both as f64, 0.0)
    })
}

/// The case split for the wall character: 0 off `U`, `q−1` if `α ≠ 1` or `β ≠ 1`,
/// otherwise `q−1` when `a₁b₂ = a₂b₁` and `−1` when not.
pub fn wall_closed_form(ag: &AffineGroup) -> DGClassFunction {
    let g = &ag.group;
    let h = &ag.field;
    let gg = direct_product(g, g);
    let n = g.order();
    let q1 = (h.q - 1) as f64;
    DGClassFunction::from_fn(&gg, |x, y| {
        let ((a1, al), (a2, al2)) = (ag.pair(x / n), ag.pair(x % n));
        let ((b1, be), (b2, be2)) = (ag.pair(y / n), ag.pair(y % n));
        if h.mul(al, al2) != h.one || h.mul(be, be2) != h.one {
            return ZERO;
        }
        let v = if al != h.one || be != h.one || h.mul(a1, b2) == h.mul(a2, b1) { q1 } else { -1.0 };
        Complex64::new(v, 0.0)
    })
}

#[derive(Debug, Clone)]
pub struct CfReport {
    pub field: String,
    pub c: usize,
    pub f: usize,
    /// Present for fields: the equivalence found by tunneling and the expected `PJ`.
    pub equivalence: Option<Vec<usize>>,
    pub expected: Option<Vec<usize>>,
    pub psi_gamma_residual: Option<f64>,
    pub closed_form_residual: Option<f64>,
    /// Present for proper near-fields.
    pub modular: Option<B1Report>,
    pub passed: bool,
}

pub fn verify_cf_symmetry(h: &NearFieldSpec) -> Result<CfReport> {
    if h.kind != NearFieldKind::Field || !h.is_field() {
        let r = verify_theorem_b1(h)?;
        return Ok(CfReport {
            field: h.label(),
            c: r.c,
            f: r.f,
            equivalence: None,
            expected: None,
            psi_gamma_residual: None,
            closed_form_residual: None,
            passed: r.passed,
            modular: Some(r),
        });
    }
    let ag = affine_group(h)?;
    let fold = Fold::new(&ag.group, &ag.group)?;
    let (c, f) = chargeon_fluxion_pair(&fold.left, &ag)?;
    let wall = WallSpec::wall(&ag)?;
    let verdict = equivalence_check(&fold, &wall)?;
    let expected = compose(&transposition(fold.left.len(), c, f), &fold.left.dual_permutation());
    let chi = boundary_character(&fold.product.group, &wall.u, &wall.phi)?;
    let refs = reference_characters(&fold, c, f);
    let psi_gamma_residual = chi.max_diff(&refs.psi.sub(&refs.gamma)?);
    let closed_form_residual = chi.max_diff(&wall_closed_form(&ag));
    let passed = verdict.equivalence.as_ref() == Some(&expected) && psi_gamma_residual < 1e-8 && closed_form_residual < 1e-8;
    Ok(CfReport {
        field: h.label(),
        c,
        f,
        equivalence: verdict.equivalence,
        expected: Some(expected),
        psi_gamma_residual: Some(psi_gamma_residual),
        closed_form_residual: Some(closed_form_residual),
        modular: None,
        passed,
    })
}
