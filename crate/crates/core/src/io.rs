//! Group URIs, file schemas and report serialization.

use std::path::Path;

use indexmap::IndexMap;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::characters::{clean, CharacterTable, RootSum};
use crate::cocycles::TwoCocycle;
use crate::condensation::{CfReport, CondensationReport, EquivalenceVerdict, Fold, TunnelingMatrix};
use crate::groups::{
    affine_group, builtin, direct_product, from_cayley, near_field, AffineGroup, Builtin, Group, NearFieldKind,
    NearFieldSpec, Subgroup,
};
use crate::modular::{B1Report, InvariantVerdict, StepCheck, TranspositionHit};
use crate::quantum_double::{DGClassFunction, FusionTensor, QuantumDouble};
use crate::{Error, Result};

/// Named groups of order at most 72, as URIs.
pub const CATALOG: &[&str] = &[
    "builtin:Z1",
    "builtin:Z2",
    "builtin:Z3",
    "builtin:Z4",
    "builtin:Z5",
    "builtin:Z6",
    "builtin:Z7",
    "builtin:Z8",
    "builtin:S3",
    "builtin:A4",
    "builtin:S4",
    "builtin:A5",
    "product:Z2×Z2",
    "product:Z2×Z4",
    "product:Z3×Z3",
    "product:Z2×S3",
    "product:S3×S3",
    "product:Z3×A4",
    "affine:q=2",
    "affine:q=3",
    "affine:q=4",
    "affine:q=5",
    "affine:q=7",
    "affine:q=8",
    "affine:q=9",
    "affine:dickson9",
];

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| parse_err(format!("bad {what} '{s}'")))
}

fn parse_builtin_name(name: &str) -> Result<Group> {
    let name = name.trim();
    let mut chars = name.chars();
    let head = chars.next().ok_or_else(|| parse_err("empty group name"))?;
    let n = parse_usize(chars.as_str(), "group degree")?;
    match head {
        'Z' | 'C' => builtin(Builtin::Cyclic(n)),
        'S' => builtin(Builtin::Symmetric(n)),
        'A' => builtin(Builtin::Alternating(n)),
        _ => Err(parse_err(format!("unknown builtin '{name}'"))),
    }
}

/// `affine:q=N` or `affine:dickson9`.
pub fn parse_near_field(spec: &str) -> Result<NearFieldSpec> {
    let body = spec.strip_prefix("affine:").unwrap_or(spec).trim();
    if body == "dickson9" {
        return near_field(9, NearFieldKind::Dickson9);
    }
    let q = body.strip_prefix("q=").unwrap_or(body);
    near_field(parse_usize(q, "near-field order")?, NearFieldKind::Field)
}

pub fn parse_affine(spec: &str) -> Result<AffineGroup> {
    affine_group(&parse_near_field(spec)?)
}

fn parse_factor(spec: &str) -> Result<Group> {
    let spec = spec.trim();
    if let Some(body) = spec.strip_prefix("builtin:") {
        parse_builtin_name(body)
    } else if spec.starts_with("affine:") {
        Ok(parse_affine(spec)?.group)
    } else {
        parse_builtin_name(spec)
    }
}

/// Resolve `builtin:S3`, `affine:q=4`, `affine:dickson9`, `product:A×B` (also
/// with `x`), or a path to a group JSON file.
pub fn parse_group(spec: &str) -> Result<Group> {
    let spec = spec.trim();
    if let Some(body) = spec.strip_prefix("product:") {
        let parts: Vec<&str> = body.split(['×', 'x']).collect();
        if parts.len() < 2 {
            return Err(parse_err(format!("product needs two factors: '{spec}'")));
        }
        let mut g = parse_factor(parts[0])?;
        for p in &parts[1..] {
            g = direct_product(&g, &parse_factor(p)?);
        }
        return Ok(g);
    }
    if spec.starts_with("builtin:") || spec.starts_with("affine:") {
        return parse_factor(spec);
    }
    GroupFile::read(spec)?.into_group()
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| parse_err(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| parse_err(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_json(value)).map_err(|e| parse_err(format!("{}: {e}", path.display())))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    #[serde(default = "default_label")]
    pub label: String,
}

fn default_label() -> String {
    "G".into()
}

impl GroupFile {
    pub fn from_group(g: &Group) -> Self {
        GroupFile { order: g.order(), mul: g.rows(), label: g.label().to_string() }
    }

    pub fn into_group(self) -> Result<Group> {
        if self.mul.len() != self.order {
            return Err(Error::SizeMismatch { expected: self.order, got: self.mul.len() });
        }
        from_cayley(&self.mul, &self.label)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        read_json(path)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupFile {
    pub members: Vec<usize>,
}

impl SubgroupFile {
    pub fn from_subgroup(k: &Subgroup) -> Self {
        SubgroupFile { members: k.members.clone() }
    }

    pub fn into_subgroup(self, parent: &Group) -> Result<Subgroup> {
        Subgroup::new(parent, &self.members)
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(|t| parse_usize(t, "element")).collect()
}

/// `whole`, `trivial`, `gen:i,j,…`, `members:i,j,…`, `centralizer:a`, or a
/// path to a subgroup JSON file.
pub fn parse_subgroup(parent: &Group, spec: &str) -> Result<Subgroup> {
    let spec = spec.trim();
    match spec {
        "whole" | "all" => return Ok(Subgroup::whole(parent)),
        "trivial" => return Ok(Subgroup::trivial(parent)),
        _ => {}
    }
    let check = |xs: &[usize]| match xs.iter().find(|&&x| x >= parent.order()) {
        Some(&x) => Err(parse_err(format!("element {x} out of range"))),
        None => Ok(()),
    };
    if let Some(body) = spec.strip_prefix("gen:") {
        let gens = parse_list(body)?;
        check(&gens)?;
        return Ok(Subgroup::generated_by(parent, &gens));
    }
    if let Some(body) = spec.strip_prefix("members:") {
        let xs = parse_list(body)?;
        check(&xs)?;
        return Subgroup::new(parent, &xs);
    }
    if let Some(body) = spec.strip_prefix("centralizer:") {
        let a = parse_usize(body, "element")?;
        check(&[a])?;
        return Ok(Subgroup::centralizer(parent, a));
    }
    read_json::<SubgroupFile>(spec)?.into_subgroup(parent)
}

/// `φ` as integer exponents of `e^{2πi/omega_order}`; `exponents[i][j]` is
/// indexed by the positions of `subgroup`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleFile {
    pub subgroup: Vec<usize>,
    pub omega_order: usize,
    pub exponents: Vec<Vec<u32>>,
}

impl CocycleFile {
    /// Smallest root order that represents every entry, up to 1000.
    pub fn from_cocycle(phi: &TwoCocycle) -> Result<Self> {
        for p in 1..=1000 {
            if let Some(exponents) = phi.exponents(p) {
                return Ok(CocycleFile { subgroup: phi.subgroup.members.clone(), omega_order: p, exponents });
            }
        }
        Err(parse_err("cocycle values are not roots of unity of order <= 1000"))
    }

    pub fn into_cocycle(self, parent: &Group) -> Result<TwoCocycle> {
        if self.omega_order == 0 {
            return Err(parse_err("omega_order must be positive"));
        }
        let k = Subgroup::new(parent, &self.subgroup)?;
        if k.members != self.subgroup {
            return Err(parse_err("cocycle subgroup must be listed in ascending order"));
        }
        TwoCocycle::from_exponents(&k, self.omega_order, &self.exponents)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        read_json(path)
    }
}

/// `[re, im]` with sub-1e-12 noise removed.
pub fn pair(z: Complex64) -> [f64; 2] {
    let z = clean(z);
    [z.re, z.im]
}

pub fn unpair(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn frac(num: u64, den: u64) -> (u64, u64) {
    let g = num.gcd(&den).max(1);
    (num / g, den / g)
}

fn magnitude(m: u64, den: u64) -> String {
    let (p, q) = frac(m, den);
    if q == 1 {
        p.to_string()
    } else {
        format!("{p}/{q}")
    }
}

/// `z` written as `(m/den)·e(j/roots)` when it is within `eps` of such a value.
pub fn exact(z: Complex64, den: u64, roots: u64, eps: f64) -> Option<String> {
    if z.norm() < eps {
        return Some("0".into());
    }
    let m = (z.norm() * den as f64).round();
    if m < 1.0 {
        return None;
    }
    let turns = z.arg() / std::f64::consts::TAU * roots as f64;
    let j = (turns.round() as i64).rem_euclid(roots as i64) as u64;
    let snapped = Complex64::from_polar(m / den as f64, std::f64::consts::TAU * j as f64 / roots as f64);
    if (snapped - z).norm() > eps {
        return None;
    }
    let mag = magnitude(m as u64, den);
    let (j, r) = frac(j, roots);
    Some(match (j, r) {
        (0, _) => mag,
        (1, 2) => format!("-{mag}"),
        _ if mag == "1" => format!("e({j}/{r})"),
        _ => format!("{mag}*e({j}/{r})"),
    })
}

/// `Σ m_j e(j/order)` as text, combining like roots.
pub fn render_root_sum(rs: &RootSum) -> String {
    let o = rs.order as u64;
    if let Some(s) = exact(rs.value(), 1, o, 1e-9) {
        return s;
    }
    let mut terms = Vec::new();
    for (j, &m) in rs.mult.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let (jj, r) = frac(j as u64, o);
        let root = if jj == 0 { String::new() } else { format!("e({jj}/{r})") };
        let t = match (m, root.is_empty()) {
            (_, true) => m.to_string(),
            (1, false) => root,
            (-1, false) => format!("-{root}"),
            (_, false) => format!("{m}*{root}"),
        };
        terms.push(t);
    }
    terms.join(" + ").replace("+ -", "- ")
}

/// Least common multiple of the element orders.
pub fn exponent(g: &Group) -> u64 {
    g.conjugacy().element_orders.iter().fold(1u64, |acc, &o| acc.lcm(&(o as u64)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharTableJson {
    pub group: String,
    pub classes: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub rows: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<Vec<Option<String>>>>,
}

impl CharTableJson {
    pub fn new(t: &CharacterTable, snap: bool) -> Self {
        let g = &t.group;
        let cd = g.conjugacy();
        let values = if snap { t.snapped_values() } else { t.rows.iter().map(|r| r.values.clone()).collect() };
        let exact = snap.then(|| {
            (0..t.len()).map(|i| (0..cd.num_classes()).map(|c| t.snap(i, c).map(|rs| render_root_sum(&rs))).collect()).collect()
        });
        CharTableJson {
            group: g.label().to_string(),
            classes: cd.reps.clone(),
            class_sizes: cd.class_sizes(),
            rows: values.iter().map(|r| r.iter().map(|&z| pair(z)).collect()).collect(),
            exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnyonJson {
    pub label: String,
    pub class: usize,
    pub class_rep: usize,
    pub irrep: usize,
    pub dim: usize,
    pub kind: String,
    pub twist: [f64; 2],
}

pub fn anyon_rows(qd: &QuantumDouble) -> Vec<AnyonJson> {
    let t = qd.t_vector();
    (0..qd.len())
        .map(|x| {
            let a = qd.anyons[x];
            AnyonJson {
                label: qd.label(x),
                class: a.class,
                class_rep: a.class_rep,
                irrep: a.pi,
                dim: a.dim,
                kind: qd.kind(x).as_str().to_string(),
                twist: pair(t[x]),
            }
        })
        .collect()
}

/// A complex matrix or vector in anyon order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub labels: Vec<String>,
    pub values: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<Vec<Option<String>>>>,
}

fn snap_entry(z: Complex64, den: u64, roots: u64, snap: bool) -> (Complex64, Option<String>) {
    if !snap {
        return (z, None);
    }
    match exact(z, den, roots, crate::tol::SNAP) {
        Some(s) => {
            let m = (z.norm() * den as f64).round() / den as f64;
            let turns = (z.arg() / std::f64::consts::TAU * roots as f64).round();
            let v = if m == 0.0 { Complex64::new(0.0, 0.0) } else { Complex64::from_polar(m, std::f64::consts::TAU * turns / roots as f64) };
            (v, Some(s))
        }
        None => (z, None),
    }
}

impl MatrixJson {
    /// `S`, snapped to `(m / |Z(a)||Z(b)|)·e(j/exp G)` when requested.
    pub fn s_matrix(qd: &QuantumDouble, s: &DMatrix<Complex64>, snap: bool) -> Self {
        let roots = exponent(&qd.group);
        let z: Vec<u64> = qd.anyons.iter().map(|a| qd.sectors[a.class].centralizer.order() as u64).collect();
        let mut values = Vec::with_capacity(qd.len());
        let mut exacts = Vec::with_capacity(qd.len());
        for i in 0..qd.len() {
            let (row, ex): (Vec<_>, Vec<_>) = (0..qd.len())
                .map(|j| {
                    let (v, e) = snap_entry(s[(i, j)], z[i] * z[j], roots, snap);
                    (pair(v), e)
                })
                .unzip();
            values.push(row);
            exacts.push(ex);
        }
        MatrixJson { labels: qd.labels(), values, exact: snap.then_some(exacts) }
    }

    /// `T` as a single row.
    pub fn t_vector(qd: &QuantumDouble, t: &[Complex64], snap: bool) -> Self {
        let roots = exponent(&qd.group);
        let (row, ex): (Vec<_>, Vec<_>) = t
            .iter()
            .map(|&z| {
                let (v, e) = snap_entry(z, 1, roots, snap);
                (pair(v), e)
            })
            .unzip();
        MatrixJson { labels: qd.labels(), values: vec![row], exact: snap.then(|| vec![ex]) }
    }

    /// CSV with the anyon labels as header; a row label leads each row of a square matrix.
    pub fn to_csv(&self) -> String {
        let square = self.values.len() == self.labels.len() && self.values.len() > 1;
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = Vec::with_capacity(self.labels.len() + 1);
        if square {
            header.push(String::new());
        }
        header.extend(self.labels.iter().cloned());
        w.write_record(&header).expect("in-memory csv");
        for (i, row) in self.values.iter().enumerate() {
            let mut rec = Vec::with_capacity(row.len() + 1);
            if square {
                rec.push(self.labels[i].clone());
            }
            for (j, &v) in row.iter().enumerate() {
                let e = self.exact.as_ref().and_then(|x| x[i][j].clone());
                rec.push(e.unwrap_or_else(|| format_complex(v)));
            }
            w.write_record(&rec).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
    }
}

/// `re`, or `re+imi` when the imaginary part is nonzero.
pub fn format_complex(v: [f64; 2]) -> String {
    match (v[0], v[1]) {
        (re, im) if im == 0.0 => format!("{re}"),
        (re, im) if re == 0.0 => format!("{im}i"),
        (re, im) if im < 0.0 => format!("{re}{im}i"),
        (re, im) => format!("{re}+{im}i"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionEntry {
    pub x: String,
    pub y: String,
    pub z: String,
    pub n: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionJson {
    pub labels: Vec<String>,
    /// `X⊗Y` to `Z₁ + 2Z₂ + …`.
    pub products: IndexMap<String, String>,
    pub entries: Vec<FusionEntry>,
}

impl FusionJson {
    pub fn new(qd: &QuantumDouble, n: &FusionTensor) -> Self {
        let labels = qd.labels();
        let mut products = IndexMap::new();
        let mut entries = Vec::new();
        for x in 0..n.size {
            for y in 0..n.size {
                let terms: Vec<String> = n
                    .product(x, y)
                    .into_iter()
                    .map(|(z, m)| {
                        entries.push(FusionEntry { x: labels[x].clone(), y: labels[y].clone(), z: labels[z].clone(), n: m });
                        if m == 1 {
                            labels[z].clone()
                        } else {
                            format!("{m}{}", labels[z])
                        }
                    })
                    .collect();
                products.insert(format!("{}⊗{}", labels[x], labels[y]), terms.join(" + "));
            }
        }
        FusionJson { labels, products, entries }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["x", "y", "z", "n"]).expect("in-memory csv");
        for e in &self.entries {
            w.write_record([e.x.as_str(), e.y.as_str(), e.z.as_str(), &e.n.to_string()]).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
    }
}

/// A function on `D(G)`: `values[g][h] = χ(g h*)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DGJson {
    pub group: String,
    pub order: usize,
    pub values: Vec<Vec<[f64; 2]>>,
}

impl DGJson {
    pub fn new(f: &DGClassFunction) -> Self {
        let n = f.group.order();
        DGJson {
            group: f.group.label().to_string(),
            order: n,
            values: (0..n).map(|g| (0..n).map(|h| pair(f.at(g, h))).collect()).collect(),
        }
    }

    pub fn into_function(&self, group: &Group) -> Result<DGClassFunction> {
        let n = group.order();
        if self.order != n || self.values.len() != n || self.values.iter().any(|r| r.len() != n) {
            return Err(Error::SizeMismatch { expected: n, got: self.order });
        }
        Ok(DGClassFunction::from_fn(group, |g, h| unpair(self.values[g][h])))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CondenseVerdict {
    /// `Σ m_X dim X = |G|`.
    pub dimension_identity: bool,
    pub vacuum_multiplicity: i64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CondenseJson {
    pub group: String,
    pub subgroup: Vec<usize>,
    pub multiplicities: IndexMap<String, i64>,
    pub condensed: Vec<String>,
    pub verdict: CondenseVerdict,
    pub total_dimension: i64,
    pub character: DGJson,
}

impl CondenseJson {
    pub fn new(qd: &QuantumDouble, k: &Subgroup, r: &CondensationReport) -> Self {
        let total = r.total_dimension(qd);
        let vacuum = r.multiplicities[0];
        let dimension_identity = total == qd.group.order() as i64;
        CondenseJson {
            group: qd.group.label().to_string(),
            subgroup: k.members.clone(),
            multiplicities: (0..qd.len()).map(|x| (qd.label(x), r.multiplicities[x])).collect(),
            condensed: r.condensed.iter().map(|&x| qd.label(x)).collect(),
            verdict: CondenseVerdict {
                dimension_identity,
                vacuum_multiplicity: vacuum,
                passed: dimension_identity && vacuum == 1 && r.multiplicities.iter().all(|&m| m >= 0),
            },
            total_dimension: total,
            character: DGJson::new(&r.character),
        }
    }

    pub fn into_report(&self, qd: &QuantumDouble) -> Result<CondensationReport> {
        let find = |s: &str| qd.find_label(s).ok_or_else(|| parse_err(format!("unknown anyon '{s}'")));
        let mut multiplicities = vec![0; qd.len()];
        for (l, &m) in &self.multiplicities {
            multiplicities[find(l)?] = m;
        }
        let condensed = self.condensed.iter().map(|l| find(l)).collect::<Result<Vec<_>>>()?;
        Ok(CondensationReport { character: self.character.into_function(&qd.group)?, multiplicities, condensed })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TunnelVerdict {
    pub left_projection_onto: bool,
    pub right_projection_onto: bool,
    pub pairing_nondegenerate: bool,
    pub conditions_hold: bool,
    /// `X ↦ Y` with `X ⊠ Y` condensed, when this is a bijection.
    pub permutation: Option<IndexMap<String, String>>,
    /// `X ↦ Y^op`.
    pub equivalence: Option<IndexMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TunnelJson {
    pub left: String,
    pub right: String,
    pub wall: Vec<usize>,
    /// Nonzero `X⊠Y` multiplicities, ordered by `(X, Y)`.
    pub multiplicities: IndexMap<String, i64>,
    pub condensed: Vec<String>,
    pub verdict: TunnelVerdict,
    pub matrix: Vec<Vec<i64>>,
}

impl TunnelJson {
    pub fn new(fold: &Fold, wall: &[usize], v: &EquivalenceVerdict) -> Self {
        let (l, r) = (&fold.left, &fold.right);
        let key = |x: usize, y: usize| format!("{}⊠{}", l.label(x), r.label(y));
        let TunnelingMatrix { n } = &v.matrix;
        let mut multiplicities = IndexMap::new();
        let mut condensed = Vec::new();
        for x in 0..l.len() {
            for y in 0..r.len() {
                if n[x][y] != 0 {
                    multiplicities.insert(key(x, y), n[x][y]);
                }
                if n[x][y] > 0 {
                    condensed.push(key(x, y));
                }
            }
        }
        let map = |p: &Vec<usize>| p.iter().enumerate().map(|(x, &y)| (l.label(x), r.label(y))).collect();
        TunnelJson {
            left: l.group.label().to_string(),
            right: r.group.label().to_string(),
            wall: wall.to_vec(),
            multiplicities,
            condensed,
            verdict: TunnelVerdict {
                left_projection_onto: v.left_projection_onto,
                right_projection_onto: v.right_projection_onto,
                pairing_nondegenerate: v.pairing_nondegenerate,
                conditions_hold: v.conditions_hold,
                permutation: v.matrix.as_permutation().as_ref().map(map),
                equivalence: v.equivalence.as_ref().map(map),
            },
            matrix: n.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HitJson {
    pub x: String,
    pub y: String,
    pub kinds: [String; 2],
    pub s_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModinvSearchJson {
    pub group: String,
    pub anyons: usize,
    pub pairs: Vec<HitJson>,
}

impl ModinvSearchJson {
    pub fn new(qd: &QuantumDouble, hits: &[TranspositionHit]) -> Self {
        ModinvSearchJson {
            group: qd.group.label().to_string(),
            anyons: qd.len(),
            pairs: hits
                .iter()
                .map(|h| HitJson {
                    x: qd.label(h.x),
                    y: qd.label(h.y),
                    kinds: [h.kinds.0.as_str().into(), h.kinds.1.as_str().into()],
                    s_residual: h.s_residual,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantJson {
    pub invariant: bool,
    pub s_residual: f64,
    pub t_residual: f64,
    pub non_negative: bool,
    pub integral: bool,
    pub vacuum: bool,
}

impl From<&InvariantVerdict> for InvariantJson {
    fn from(v: &InvariantVerdict) -> Self {
        InvariantJson {
            invariant: v.invariant,
            s_residual: v.s_residual,
            t_residual: v.t_residual,
            non_negative: v.non_negative,
            integral: v.integral,
            vacuum: v.vacuum,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub step: String,
    pub passed: bool,
    pub detail: String,
}

impl From<&StepCheck> for StepJson {
    fn from(s: &StepCheck) -> Self {
        StepJson { step: s.step.to_string(), passed: s.passed, detail: s.detail.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct B1Json {
    pub field: String,
    pub order: usize,
    pub chargeon: String,
    pub fluxion: String,
    pub steps: Vec<StepJson>,
    pub invariant: InvariantJson,
    pub invariant_with_j: InvariantJson,
    pub passed: bool,
}

impl B1Json {
    pub fn new(r: &B1Report, labels: &[String]) -> Self {
        B1Json {
            field: r.field.clone(),
            order: r.order,
            chargeon: labels[r.c].clone(),
            fluxion: labels[r.f].clone(),
            steps: r.steps.iter().map(StepJson::from).collect(),
            invariant: (&r.invariant).into(),
            invariant_with_j: (&r.invariant_with_j).into(),
            passed: r.passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CfJson {
    pub field: String,
    pub chargeon: String,
    pub fluxion: String,
    pub equivalence: Option<IndexMap<String, String>>,
    pub expected: Option<IndexMap<String, String>>,
    pub psi_gamma_residual: Option<f64>,
    pub closed_form_residual: Option<f64>,
    pub modular: Option<B1Json>,
    pub passed: bool,
}

impl CfJson {
    pub fn new(r: &CfReport, labels: &[String]) -> Self {
        let map = |p: &Vec<usize>| p.iter().enumerate().map(|(x, &y)| (labels[x].clone(), labels[y].clone())).collect();
        CfJson {
            field: r.field.clone(),
            chargeon: labels[r.c].clone(),
            fluxion: labels[r.f].clone(),
            equivalence: r.equivalence.as_ref().map(map),
            expected: r.expected.as_ref().map(map),
            psi_gamma_residual: r.psi_gamma_residual,
            closed_form_residual: r.closed_form_residual,
            modular: r.modular.as_ref().map(|b| B1Json::new(b, labels)),
            passed: r.passed,
        }
    }
}
