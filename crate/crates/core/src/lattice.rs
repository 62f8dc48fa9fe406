//! State-vector simulation of the quantum double Hamiltonian on a small
//! rectangular patch, optionally with a `(K, φ)` wall along the bottom row.
//!
//! Edges point right or up. Amplitudes are indexed in mixed radix with edge 0
//! as the least significant digit; wall edges store the member index in `K`.
//! Face holonomies are read clockwise from the base vertex of the site.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cocycles::TwoCocycle;
use crate::condensation::boundary_character;
use crate::groups::{cosets, Group, GroupTable, Subgroup};
use crate::quantum_double::DGClassFunction;
use crate::{tol, Error, Result};

/// Hard cap on the number of amplitudes.
pub const MAX_AMPLITUDES: u128 = 1 << 22;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Marking {
    Solid,
    Dotted,
}

#[derive(Debug, Clone)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    /// `Some` for wall edges, whose state space is `ℂK`.
    pub marking: Option<Marking>,
}

#[derive(Debug, Clone)]
pub struct Vertex {
    pub x: usize,
    pub y: usize,
    /// Incident edges: left, right, down, up (those that exist).
    pub star: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Face {
    /// Bottom-left, top-left, top-right, bottom-right.
    pub corners: [usize; 4],
    /// Clockwise cycle from the bottom-left corner as `(edge, traversed forward)`.
    pub cycle: [(usize, bool); 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    Bulk { vertex: usize, face: usize },
    /// A wall vertex with its wall edge standing in for the face.
    Wall { vertex: usize, edge: usize },
}

impl Site {
    pub fn vertex(&self) -> usize {
        match *self {
            Site::Bulk { vertex, .. } | Site::Wall { vertex, .. } => vertex,
        }
    }

    pub fn face(&self) -> Option<usize> {
        match *self {
            Site::Bulk { face, .. } => Some(face),
            Site::Wall { .. } => None,
        }
    }
}

/// Wall data with a normalized cocycle.
#[derive(Debug, Clone)]
pub struct Boundary {
    pub subgroup: Subgroup,
    pub cocycle: TwoCocycle,
}

#[derive(Debug)]
struct Codec {
    radix: Vec<usize>,
    stride: Vec<usize>,
    to_parent: Vec<Vec<usize>>,
    to_local: Vec<Vec<usize>>,
    dim: usize,
}

impl Codec {
    fn decode(&self, idx: usize) -> Vec<usize> {
        self.radix.iter().zip(&self.stride).map(|(&r, &s)| (idx / s) % r).collect()
    }

    #[inline]
    fn get(&self, d: &[usize], e: usize) -> usize {
        self.to_parent[e][d[e]]
    }

    /// Replace edge `e` (currently digit `d[e]` in `idx`) by `value`.
    #[inline]
    fn set(&self, idx: usize, d: &[usize], e: usize, value: usize) -> Option<usize> {
        let new = self.to_local[e][value];
        if new == NONE {
            return None;
        }
        Some(idx - d[e] * self.stride[e] + new * self.stride[e])
    }
}

#[derive(Debug, Clone)]
pub struct LatticePatch {
    pub group: Group,
    pub width: usize,
    pub height: usize,
    pub edges: Vec<Edge>,
    pub vertices: Vec<Vertex>,
    pub faces: Vec<Face>,
    pub boundary: Option<Boundary>,
    pub s0: Site,
    pub s1: Site,
    codec: Arc<Codec>,
    phi: Arc<Vec<Complex64>>,
}

/// Build a `width × height` patch. With a boundary the bottom row is the wall,
/// marked solid, dotted, solid, … from the left; `s₀` is the wall site at
/// `(1,0)` and `s₁` the site at `(1,1)` on the first face. Without one, `s₀`
/// and `s₁` are the bottom corners of the first and last face of the bottom row.
pub fn build_patch(group: &Group, width: usize, height: usize, boundary: Option<(Subgroup, TwoCocycle)>) -> Result<LatticePatch> {
    let min_width = if boundary.is_some() { 2 } else { 1 };
    if width < min_width || height < 1 {
        return Err(Error::InvalidRibbon(format!("patch {width}×{height} too small for the distinguished sites")));
    }
    let n = group.order();
    let boundary = match boundary {
        None => None,
        Some((k, phi)) => {
            if k.parent.as_ref() != group.as_ref() || phi.subgroup.members != k.members {
                return Err(Error::SubgroupMismatch);
            }
            let phi = if phi.is_normalized() { phi } else { phi.normalize().0 };
            if !phi.is_normalized() {
                return Err(Error::AxiomFailure("cocycle could not be normalized".into()));
            }
            Some(Boundary { subgroup: k, cocycle: phi })
        }
    };
    let vid = |x: usize, y: usize| y * (width + 1) + x;
    let mut edges = Vec::new();
    for y in 0..=height {
        for x in 0..width {
            let marking = match (&boundary, y) {
                (Some(_), 0) => Some(if x % 2 == 0 { Marking::Solid } else { Marking::Dotted }),
                _ => None,
            };
            edges.push(Edge { tail: vid(x, y), head: vid(x + 1, y), marking });
        }
    }
    let hid = |x: usize, y: usize| y * width + x;
    let vbase = width * (height + 1);
    for y in 0..height {
        for x in 0..=width {
            edges.push(Edge { tail: vid(x, y), head: vid(x, y + 1), marking: None });
        }
    }
    let uid = |x: usize, y: usize| vbase + y * (width + 1) + x;

    let mut vertices = Vec::new();
    for y in 0..=height {
        for x in 0..=width {
            let mut star = Vec::new();
            if x > 0 {
                star.push(hid(x - 1, y));
            }
            if x < width {
                star.push(hid(x, y));
            }
            if y > 0 {
                star.push(uid(x, y - 1));
            }
            if y < height {
                star.push(uid(x, y));
            }
            vertices.push(Vertex { x, y, star });
        }
    }
    let mut faces = Vec::new();
    for y in 0..height {
        for x in 0..width {
            faces.push(Face {
                corners: [vid(x, y), vid(x, y + 1), vid(x + 1, y + 1), vid(x + 1, y)],
                cycle: [(uid(x, y), true), (hid(x, y + 1), true), (uid(x + 1, y), false), (hid(x, y), false)],
            });
        }
    }

    let mut radix = Vec::with_capacity(edges.len());
    let mut to_parent = Vec::with_capacity(edges.len());
    let mut to_local = Vec::with_capacity(edges.len());
    for e in &edges {
        match (&e.marking, &boundary) {
            (Some(_), Some(b)) => {
                radix.push(b.subgroup.order());
                to_parent.push(b.subgroup.members.clone());
                let mut loc = vec![NONE; n];
                for (i, &m) in b.subgroup.members.iter().enumerate() {
                    loc[m] = i;
                }
                to_local.push(loc);
            }
            _ => {
                radix.push(n);
                to_parent.push((0..n).collect());
                to_local.push((0..n).collect());
            }
        }
    }
    let size: u128 = radix.iter().map(|&r| r as u128).product();
    if size > MAX_AMPLITUDES {
        return Err(Error::DimensionCap(size));
    }
    let mut stride = Vec::with_capacity(radix.len());
    let mut acc = 1usize;
    for &r in &radix {
        stride.push(acc);
        acc *= r;
    }
    let codec = Arc::new(Codec { radix, stride, to_parent, to_local, dim: acc });

    let mut phi = vec![ZERO; n * n];
    if let Some(b) = &boundary {
        for (i, &a) in b.subgroup.members.iter().enumerate() {
            for (j, &c) in b.subgroup.members.iter().enumerate() {
                phi[a * n + c] = b.cocycle.local(i, j);
            }
        }
    } else {
        phi.iter_mut().for_each(|v| *v = ONE);
    }

    let (s0, s1) = if boundary.is_some() {
        (Site::Wall { vertex: vid(1, 0), edge: hid(0, 0) }, Site::Bulk { vertex: vid(1, 1), face: 0 })
    } else {
        (Site::Bulk { vertex: vid(0, 0), face: 0 }, Site::Bulk { vertex: vid(width, 0), face: width - 1 })
    };
    Ok(LatticePatch {
        group: group.clone(),
        width,
        height,
        edges,
        vertices,
        faces,
        boundary,
        s0,
        s1,
        codec,
        phi: Arc::new(phi),
    })
}

/// A dense state over the product of the edge spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeState {
    pub amplitudes: Vec<Complex64>,
}

impl LatticeState {
    /// Independent uniform entries in the unit square, not normalized.
    pub fn random(dim: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let amplitudes = (0..dim).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        LatticeState { amplitudes }
    }

    pub fn random_unit(dim: usize, seed: u64) -> Self {
        let s = Self::random(dim, seed);
        let n = s.norm();
        s.scale(Complex64::new(1.0 / n, 0.0))
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &LatticeState) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, c: Complex64) -> LatticeState {
        LatticeState { amplitudes: self.amplitudes.iter().map(|a| a * c).collect() }
    }

    pub fn add_scaled(&mut self, other: &LatticeState, c: Complex64) {
        for (a, b) in self.amplitudes.iter_mut().zip(&other.amplitudes) {
            *a += b * c;
        }
    }

    /// `‖self − other‖`.
    pub fn distance(&self, other: &LatticeState) -> f64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Called with a basis index and its digits.
type Monomial = Arc<dyn Fn(usize, &[usize]) -> Option<(usize, Complex64)> + Send + Sync>;

/// A linear combination of basis maps `|i⟩ ↦ phase·|σ(i)⟩` (or 0).
#[derive(Clone)]
pub struct Operator {
    codec: Arc<Codec>,
    terms: Vec<(Complex64, Monomial)>,
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Operator").field("dim", &self.codec.dim).field("terms", &self.terms.len()).finish()
    }
}

impl Operator {
    fn single(codec: &Arc<Codec>, m: Monomial) -> Self {
        Operator { codec: codec.clone(), terms: vec![(ONE, m)] }
    }

    fn zero(codec: &Arc<Codec>) -> Self {
        Operator { codec: codec.clone(), terms: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.codec.dim
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(mut self, c: Complex64) -> Self {
        self.terms.iter_mut().for_each(|t| t.0 *= c);
        self
    }

    pub fn plus(mut self, other: Operator) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn apply(&self, s: &LatticeState) -> LatticeState {
        assert_eq!(s.dim(), self.codec.dim, "state does not belong to this patch");
        let mut out = vec![ZERO; s.dim()];
        let radix = &self.codec.radix;
        let mut digits = vec![0usize; radix.len()];
        for (i, a) in s.amplitudes.iter().enumerate() {
            if a.re != 0.0 || a.im != 0.0 {
                for (c, m) in &self.terms {
                    if let Some((j, p)) = m(i, &digits) {
                        out[j] += c * p * a;
                    }
                }
            }
            for (d, &r) in digits.iter_mut().zip(radix) {
                *d += 1;
                if *d < r {
                    break;
                }
                *d = 0;
            }
        }
        LatticeState { amplitudes: out }
    }
}

/// Action of `Ã^l` on one wall edge holding `a`, for the edge's marking and
/// whether the vertex is its tail.
fn wall_vertex_action(g: &GroupTable, phi: &[Complex64], mark: Marking, tail: bool, a: usize, l: usize) -> (usize, Complex64) {
    let n = g.order();
    let p = |x: usize, y: usize| phi[x * n + y];
    let li = g.inv(l);
    match (mark, tail) {
        (Marking::Solid, false) => {
            let b = g.mul(a, li);
            (b, p(b, l))
        }
        (Marking::Solid, true) => (g.mul(l, a), p(l, a).conj()),
        (Marking::Dotted, true) => {
            let b = g.mul(l, a);
            (b, p(g.inv(b), l).conj())
        }
        (Marking::Dotted, false) => (g.mul(a, li), p(l, g.inv(a))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Triangle {
    /// Move along `edge`; `forward` when travelling tail to head.
    Direct { edge: usize, forward: bool },
    /// Cross `edge`, which must touch the current vertex.
    Dual { edge: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonSpec {
    pub start: Site,
    pub end: Site,
    pub triangles: Vec<Triangle>,
}

#[derive(Debug, Clone, Copy)]
enum Step {
    Direct { edge: usize, forward: bool },
    Dual { edge: usize, at_tail: bool, wall: bool },
}

impl LatticePatch {
    pub fn dim(&self) -> usize {
        self.codec.dim
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_at(&self, x: usize, y: usize) -> usize {
        y * (self.width + 1) + x
    }

    /// Space of an edge: `"G"` or `"K"`.
    pub fn edge_space(&self, e: usize) -> &'static str {
        if self.edges[e].marking.is_some() {
            "K"
        } else {
            "G"
        }
    }

    pub fn is_wall_vertex(&self, v: usize) -> bool {
        self.boundary.is_some() && self.vertices[v].y == 0
    }

    /// Wall vertices strictly inside the wall (one solid and one dotted edge).
    pub fn interior_wall_vertices(&self) -> Vec<usize> {
        if self.boundary.is_none() {
            return Vec::new();
        }
        (1..self.width).map(|x| self.vertex_at(x, 0)).collect()
    }

    /// Vertices carrying an ordinary `A_v` term.
    pub fn bulk_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| !self.is_wall_vertex(v)).collect()
    }

    pub fn state(&self, amplitudes: Vec<Complex64>) -> Result<LatticeState> {
        if amplitudes.len() != self.dim() {
            return Err(Error::SizeMismatch { expected: self.dim(), got: amplitudes.len() });
        }
        Ok(LatticeState { amplitudes })
    }

    /// Parent-group value of edge `e` in basis state `idx`.
    pub fn edge_value(&self, idx: usize, e: usize) -> usize {
        self.codec.get(&self.codec.decode(idx), e)
    }

    fn phi_at(&self, a: usize, b: usize) -> Complex64 {
        self.phi[a * self.group.order() + b]
    }

    /// `φ(a, b)` of the (normalized) wall cocycle, for parent elements of `K`.
    pub fn phi(&self, a: usize, b: usize) -> Result<Complex64> {
        let k = self.wall_subgroup()?;
        if !k.contains(a) {
            return Err(Error::NotInSubgroup(a));
        }
        if !k.contains(b) {
            return Err(Error::NotInSubgroup(b));
        }
        Ok(self.phi_at(a, b))
    }

    fn wall_subgroup(&self) -> Result<&Subgroup> {
        self.boundary
            .as_ref()
            .map(|b| &b.subgroup)
            .ok_or_else(|| Error::InvalidRibbon("patch has no boundary".into()))
    }

    /// `A_v^g` (or `Ã_v^g` at a wall vertex, where `g` must lie in `K`).
    pub fn vertex_op(&self, v: usize, g: usize) -> Result<Operator> {
        let wall = self.is_wall_vertex(v);
        if wall && !self.wall_subgroup()?.contains(g) {
            return Err(Error::NotInSubgroup(g));
        }
        let star: Vec<(usize, bool, Option<Marking>)> =
            self.vertices[v].star.iter().map(|&e| (e, self.edges[e].tail == v, self.edges[e].marking)).collect();
        let codec = self.codec.clone();
        let grp = self.group.clone();
        let phi = self.phi.clone();
        let ginv = grp.inv(g);
        Ok(Operator::single(
            &self.codec,
            Arc::new(move |idx, d| {
                let mut out = idx;
                let mut ph = ONE;
                for &(e, tail, mark) in &star {
                    let a = codec.get(d, e);
                    let b = match mark {
                        None => {
                            if tail {
                                grp.mul(g, a)
                            } else {
                                grp.mul(a, ginv)
                            }
                        }
                        Some(m) => {
                            let (b, p) = wall_vertex_action(&grp, &phi, m, tail, a, g);
                            ph *= p;
                            b
                        }
                    };
                    out = codec.set(out, d, e, b)?;
                }
                Some((out, ph))
            }),
        ))
    }

    /// `A_v = (1/|G|) Σ_g A_v^g`, or `Ã_v^K` at a wall vertex.
    pub fn vertex_projector(&self, v: usize) -> Result<Operator> {
        let elems: Vec<usize> = if self.is_wall_vertex(v) {
            self.wall_subgroup()?.members.clone()
        } else {
            (0..self.group.order()).collect()
        };
        let c = Complex64::new(1.0 / elems.len() as f64, 0.0);
        let mut op = Operator::zero(&self.codec);
        for g in elems {
            op = op.plus(self.vertex_op(v, g)?.scale(c));
        }
        Ok(op)
    }

    /// Clockwise cycle of `face` starting at corner `vertex`.
    fn face_cycle(&self, vertex: usize, face: usize) -> Result<Vec<(usize, bool)>> {
        let f = &self.faces[face];
        let start = f
            .corners
            .iter()
            .position(|&c| c == vertex)
            .ok_or_else(|| Error::InvalidRibbon(format!("vertex {vertex} is not a corner of face {face}")))?;
        Ok((0..4).map(|i| f.cycle[(start + i) % 4]).collect())
    }

    /// Holonomy of a site in basis state `idx`.
    pub fn holonomy(&self, site: Site, idx: usize) -> Result<usize> {
        let g = &self.group;
        let d = self.codec.decode(idx);
        let d = &d;
        match site {
            Site::Bulk { vertex, face } => {
                let cyc = self.face_cycle(vertex, face)?;
                Ok(cyc.iter().fold(g.identity(), |acc, &(e, fwd)| {
                    let x = self.codec.get(d, e);
                    g.mul(acc, if fwd { x } else { g.inv(x) })
                }))
            }
            Site::Wall { vertex, edge } => {
                let x = self.codec.get(d, edge);
                Ok(if self.edges[edge].head == vertex { x } else { g.inv(x) })
            }
        }
    }

    /// `B_s^h`: projector onto holonomy `h` at site `s`.
    pub fn face_op(&self, site: Site, h: usize) -> Result<Operator> {
        let path: Vec<(usize, bool)> = match site {
            Site::Bulk { vertex, face } => self.face_cycle(vertex, face)?,
            Site::Wall { vertex, edge } => {
                if self.edges[edge].marking.is_none() || !self.edges[edge].touches(vertex) {
                    return Err(Error::InvalidRibbon(format!("edge {edge} is not a wall edge at vertex {vertex}")));
                }
                vec![(edge, self.edges[edge].head == vertex)]
            }
        };
        let codec = self.codec.clone();
        let grp = self.group.clone();
        Ok(Operator::single(
            &self.codec,
            Arc::new(move |idx, d| {
                let hol = path.iter().fold(grp.identity(), |acc, &(e, fwd)| {
                    let x = codec.get(d, e);
                    grp.mul(acc, if fwd { x } else { grp.inv(x) })
                });
                (hol == h).then_some((idx, ONE))
            }),
        ))
    }

    /// `B_s^K = Σ_{k∈K} B_s^k` at a wall site.
    pub fn wall_face_projector(&self, site: Site) -> Result<Operator> {
        let mut op = Operator::zero(&self.codec);
        for &k in &self.wall_subgroup()?.members {
            op = op.plus(self.face_op(site, k)?);
        }
        Ok(op)
    }

    /// Every projector term of the Hamiltonian: `A_v` on non-wall vertices,
    /// `B_f` on every face, `Ã^K` on interior wall vertices. Wall endpoints carry
    /// no vertex term; `B^K` on wall sites is built into the state space.
    pub fn hamiltonian_terms(&self) -> Result<Vec<(String, Operator)>> {
        let mut out = Vec::new();
        for v in self.bulk_vertices() {
            out.push((format!("A_v{v}"), self.vertex_projector(v)?));
        }
        for v in self.interior_wall_vertices() {
            out.push((format!("A~K_v{v}"), self.vertex_projector(v)?));
        }
        for (f, face) in self.faces.iter().enumerate() {
            out.push((format!("B_f{f}"), self.face_op(Site::Bulk { vertex: face.corners[0], face: f }, 0)?));
        }
        Ok(out)
    }

    /// The ribbon along the bottom row (bulk patch) or from the wall site up
    /// through the first vertical edge (boundary patch).
    pub fn default_ribbon(&self) -> RibbonSpec {
        let hid = |x: usize, y: usize| y * self.width + x;
        let uid = |x: usize, y: usize| self.width * (self.height + 1) + y * (self.width + 1) + x;
        let mut triangles = Vec::new();
        if self.boundary.is_some() {
            triangles.push(Triangle::Dual { edge: hid(0, 0) });
            triangles.push(Triangle::Direct { edge: uid(1, 0), forward: true });
        } else {
            for x in 0..self.width {
                if x > 0 {
                    triangles.push(Triangle::Dual { edge: uid(x, 0) });
                }
                triangles.push(Triangle::Direct { edge: hid(x, 0), forward: true });
            }
        }
        RibbonSpec { start: self.s0, end: self.s1, triangles }
    }

    /// A second ribbon with the same endpoints as the bulk default, going up the
    /// left side, along the top of the second row and down the right side.
    pub fn detour_ribbon(&self) -> Option<RibbonSpec> {
        if self.boundary.is_some() || self.height < 2 || self.width < 2 {
            return None;
        }
        let w = self.width;
        let hid = |x: usize, y: usize| y * w + x;
        let uid = |x: usize, y: usize| w * (self.height + 1) + y * (w + 1) + x;
        let mut t = vec![
            Triangle::Direct { edge: uid(0, 0), forward: true },
            Triangle::Dual { edge: hid(0, 1) },
            Triangle::Direct { edge: uid(0, 1), forward: true },
        ];
        for x in 0..w {
            if x > 0 {
                t.push(Triangle::Dual { edge: uid(x, 1) });
            }
            t.push(Triangle::Direct { edge: hid(x, 2), forward: true });
        }
        t.push(Triangle::Direct { edge: uid(w, 1), forward: false });
        t.push(Triangle::Dual { edge: hid(w - 1, 1) });
        t.push(Triangle::Direct { edge: uid(w, 0), forward: false });
        Some(RibbonSpec { start: self.s0, end: self.s1, triangles: t })
    }

    fn ribbon_steps(&self, r: &RibbonSpec) -> Result<Vec<Step>> {
        let bad = |m: String| Error::InvalidRibbon(m);
        let mut seen = vec![false; self.edges.len()];
        let mut cur = r.start.vertex();
        let mut steps = Vec::with_capacity(r.triangles.len());
        for (i, t) in r.triangles.iter().enumerate() {
            let e = match *t {
                Triangle::Direct { edge, .. } | Triangle::Dual { edge } => edge,
            };
            if e >= self.edges.len() {
                return Err(bad(format!("edge {e} out of range")));
            }
            if std::mem::replace(&mut seen[e], true) {
                return Err(bad(format!("edge {e} used twice")));
            }
            let edge = &self.edges[e];
            match *t {
                Triangle::Direct { forward, .. } => {
                    let (from, to) = if forward { (edge.tail, edge.head) } else { (edge.head, edge.tail) };
                    if from != cur {
                        return Err(bad(format!("triangle {i}: edge {e} does not leave vertex {cur}")));
                    }
                    cur = to;
                    steps.push(Step::Direct { edge: e, forward });
                }
                Triangle::Dual { .. } => {
                    if !edge.touches(cur) {
                        return Err(bad(format!("triangle {i}: edge {e} does not touch vertex {cur}")));
                    }
                    let wall = edge.marking.is_some();
                    if wall {
                        let ok = i == 0
                            && edge.marking == Some(Marking::Solid)
                            && edge.head == cur
                            && r.start == Site::Wall { vertex: cur, edge: e };
                        if !ok {
                            return Err(bad("a wall edge may only be crossed first, at the solid edge of s0".into()));
                        }
                    }
                    steps.push(Step::Dual { edge: e, at_tail: edge.tail == cur, wall });
                }
            }
        }
        if cur != r.end.vertex() {
            return Err(bad(format!("ribbon ends at vertex {cur}, expected {}", r.end.vertex())));
        }
        if let Site::Wall { .. } = r.end {
            return Err(bad("ribbons must end at an internal site".into()));
        }
        if let Site::Wall { edge, .. } = r.start {
            if !matches!(steps.first(), Some(Step::Dual { edge: e, wall: true, .. }) if *e == edge) {
                return Err(bad("a ribbon from a wall site must first cross its solid edge".into()));
            }
        }
        Ok(steps)
    }

    fn ribbon_monomial(&self, steps: Arc<Vec<Step>>, h: usize, g: usize) -> Monomial {
        let codec = self.codec.clone();
        let grp = self.group.clone();
        let phi = self.phi.clone();
        let n = grp.order();
        Arc::new(move |idx, d| {
            let mut gs = grp.identity();
            let mut out = idx;
            let mut ph = ONE;
            for st in steps.iter() {
                match *st {
                    Step::Direct { edge, forward } => {
                        let x = codec.get(d, edge);
                        gs = grp.mul(gs, if forward { x } else { grp.inv(x) });
                    }
                    Step::Dual { edge, at_tail, wall } => {
                        let hc = grp.mul(grp.inv(gs), grp.mul(h, gs));
                        let y = codec.get(d, edge);
                        let y2 = if at_tail { grp.mul(hc, y) } else { grp.mul(y, grp.inv(hc)) };
                        if wall {
                            ph *= phi[y2 * n + hc];
                        }
                        out = codec.set(out, d, edge, y2)?;
                    }
                }
            }
            (gs == g).then_some((out, ph))
        })
    }

    /// `F_ξ^{h,g}`; for a ribbon leaving a wall site this is `F̃_ξ^{h,g}` and `h` must lie in `K`.
    pub fn ribbon_op(&self, ribbon: &RibbonSpec, h: usize, g: usize) -> Result<Operator> {
        let steps = self.ribbon_steps(ribbon)?;
        if matches!(ribbon.start, Site::Wall { .. }) && !self.wall_subgroup()?.contains(h) {
            return Err(Error::NotInSubgroup(h));
        }
        Ok(Operator::single(&self.codec, self.ribbon_monomial(Arc::new(steps), h, g)))
    }

    /// `T̃^{k,g} = Σ_{l∈K} φ(l,k) φ(lk,l⁻¹) F̃^{lkl⁻¹, lg⁻¹}`.
    pub fn invariant_op(&self, ribbon: &RibbonSpec, k: usize, g: usize) -> Result<Operator> {
        let kk = self.wall_subgroup()?;
        if !kk.contains(k) {
            return Err(Error::NotInSubgroup(k));
        }
        if !matches!(ribbon.start, Site::Wall { .. }) {
            return Err(Error::InvalidRibbon("T operators need a ribbon starting on the wall".into()));
        }
        let steps = Arc::new(self.ribbon_steps(ribbon)?);
        let grp = &self.group;
        let ginv = grp.inv(g);
        let mut op = Operator::zero(&self.codec);
        for &l in &kk.members {
            let c = self.phi_at(l, k) * self.phi_at(grp.mul(l, k), grp.inv(l));
            let m = self.ribbon_monomial(steps.clone(), grp.conj(l, k), grp.mul(l, ginv));
            op.terms.push((c, m));
        }
        Ok(op)
    }
}

impl Edge {
    pub fn touches(&self, v: usize) -> bool {
        self.tail == v || self.head == v
    }
}

/// Joint +1 eigenvector of every Hamiltonian term, from one pass of the
/// projectors over a seeded random state.
pub fn ground_state(patch: &LatticePatch, seed: u64) -> Result<LatticeState> {
    let terms = patch.hamiltonian_terms()?;
    const ATTEMPTS: usize = 8;
    for attempt in 0..ATTEMPTS as u64 {
        let mut s = LatticeState::random(patch.dim(), seed.wrapping_add(attempt));
        for (_, p) in &terms {
            s = p.apply(&s);
        }
        let n = s.norm();
        if n > 1e-6 {
            return Ok(s.scale(Complex64::new(1.0 / n, 0.0)));
        }
    }
    Err(Error::ZeroProjection(ATTEMPTS))
}

/// Character of the boundary representation read off the lattice:
/// `χ(a b*) = r Σ_{k∈K, i} ⟨ψ̃^{k,gᵢ}| A_{s₁}^a B_{s₁}^b |ψ̃^{k,gᵢ}⟩` with `r = |G|/|K|`.
pub fn lattice_boundary_character(patch: &LatticePatch, ribbon: &RibbonSpec, seed: u64) -> Result<DGClassFunction> {
    let k = patch.wall_subgroup()?.clone();
    let g = &patch.group;
    let n = g.order();
    let psi = ground_state(patch, seed)?;
    let reps = cosets(g, &k)?;
    let r = (n / k.order()) as f64;
    let s1 = ribbon.end;
    let mut values = vec![ZERO; n * n];
    for &m in &k.members {
        for &gi in &reps {
            let v = patch.invariant_op(ribbon, m, gi)?.apply(&psi);
            let mut a_inv = Vec::with_capacity(n);
            for a in 0..n {
                a_inv.push(patch.vertex_op(s1.vertex(), g.inv(a))?.apply(&v));
            }
            for b in 0..n {
                let bv = patch.face_op(s1, b)?.apply(&v);
                if bv.norm() < tol::EQ {
                    continue;
                }
                for a in 0..n {
                    values[a * n + b] += a_inv[a].inner(&bv) * r;
                }
            }
        }
    }
    let mut out = DGClassFunction::zeros(g);
    out.values = values;
    Ok(out)
}

/// One row of the relation suite.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationCheck {
    pub name: String,
    pub checks: usize,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    /// Random states per relation (at least 16 for the acceptance run).
    pub states: usize,
    /// Parameter tuples per relation; all of them when there are fewer.
    pub samples: usize,
    pub seed: u64,
    pub threshold: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { states: 16, samples: 32, seed: 0, threshold: tol::EQ }
    }
}

struct Suite<'a> {
    states: Vec<LatticeState>,
    opts: SuiteOptions,
    rng: ChaCha8Rng,
    out: &'a mut Vec<RelationCheck>,
}

impl Suite<'_> {
    /// Run `f(tuple, ψ, φ)` over sampled tuples and states, recording the worst residual.
    fn family<T: Clone>(&mut self, name: &str, mut tuples: Vec<T>, f: impl Fn(&T, &LatticeState, &LatticeState) -> Result<f64>) -> Result<()> {
        if tuples.is_empty() {
            return Ok(());
        }
        if tuples.len() > self.opts.samples {
            tuples.shuffle(&mut self.rng);
            tuples.truncate(self.opts.samples.max(1));
        }
        let ns = self.states.len();
        let checks = tuples.len().max(ns);
        let mut worst = 0.0f64;
        for t in 0..checks {
            let r = f(&tuples[t % tuples.len()], &self.states[t % ns], &self.states[(t + 1) % ns])?;
            worst = worst.max(r);
        }
        self.record(name, checks, worst);
        Ok(())
    }

    fn record(&mut self, name: &str, checks: usize, residual: f64) {
        let passed = residual.is_finite() && residual < self.opts.threshold;
        self.out.push(RelationCheck { name: name.to_string(), checks, residual, passed });
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))).collect()
}

/// The operator identities of the model on `patch` along `ribbon`, each tested
/// on random states, plus ground-state statements.
pub fn relation_suite(patch: &LatticePatch, ribbon: &RibbonSpec, opts: SuiteOptions) -> Result<Vec<RelationCheck>> {
    patch.ribbon_steps(ribbon)?;
    let dim = patch.dim();
    let states = (0..opts.states.max(1) as u64).map(|i| LatticeState::random_unit(dim, opts.seed.wrapping_add(1000 + i))).collect();
    let mut out = Vec::new();
    let mut suite = Suite { states, opts, rng: ChaCha8Rng::seed_from_u64(opts.seed ^ 0x7e57), out: &mut out };
    local_relations(patch, &mut suite)?;
    if patch.boundary.is_some() {
        boundary_relations(patch, ribbon, &mut suite)?;
    } else {
        bulk_ribbon_relations(patch, ribbon, &mut suite)?;
    }
    Ok(out)
}

fn local_relations(p: &LatticePatch, s: &mut Suite) -> Result<()> {
    let g = &p.group;
    let n = g.order();
    let bulk = p.bulk_vertices();
    let mut tuples = Vec::new();
    for &v in &bulk {
        for (a, b) in pairs(n) {
            tuples.push((v, a, b));
        }
    }
    s.family("A^g A^g' = A^(gg')", tuples.clone(), |&(v, a, b), x, _| {
        let lhs = p.vertex_op(v, a)?.apply(&p.vertex_op(v, b)?.apply(x));
        Ok(lhs.distance(&p.vertex_op(v, g.mul(a, b))?.apply(x)))
    })?;
    let singles: Vec<(usize, usize)> = bulk.iter().flat_map(|&v| (0..n).map(move |a| (v, a))).collect();
    s.family("(A^g)† = A^(g^-1)", singles, |&(v, a), x, y| {
        let l = y.inner(&p.vertex_op(v, a)?.apply(x));
        let r = p.vertex_op(v, g.inv(a))?.apply(y).inner(x);
        Ok((l - r).norm())
    })?;

    let sites: Vec<Site> = p
        .faces
        .iter()
        .enumerate()
        .flat_map(|(f, face)| face.corners.iter().map(move |&c| Site::Bulk { vertex: c, face: f }))
        .collect();
    let site_pairs: Vec<(Site, usize, usize)> = sites.iter().flat_map(|&st| pairs(n).into_iter().map(move |(a, b)| (st, a, b))).collect();
    s.family("B^h B^h' = δ(h,h') B^h", site_pairs.clone(), |&(st, a, b), x, _| {
        let lhs = p.face_op(st, a)?.apply(&p.face_op(st, b)?.apply(x));
        let rhs = if a == b { p.face_op(st, a)?.apply(x) } else { x.scale(ZERO) };
        Ok(lhs.distance(&rhs))
    })?;
    let site_singles: Vec<(Site, usize)> = sites.iter().flat_map(|&st| (0..n).map(move |a| (st, a))).collect();
    s.family("(B^h)† = B^h", site_singles, |&(st, a), x, y| {
        let op = p.face_op(st, a)?;
        Ok((y.inner(&op.apply(x)) - op.apply(y).inner(x)).norm())
    })?;
    let ab_sites: Vec<(Site, usize, usize)> = site_pairs.iter().copied().filter(|(st, _, _)| !p.is_wall_vertex(st.vertex())).collect();
    s.family("A^g B^h = B^(ghg^-1) A^g", ab_sites, |&(st, a, b), x, _| {
        let lhs = p.vertex_op(st.vertex(), a)?.apply(&p.face_op(st, b)?.apply(x));
        let rhs = p.face_op(st, g.conj(a, b))?.apply(&p.vertex_op(st.vertex(), a)?.apply(x));
        Ok(lhs.distance(&rhs))
    })?;
    let mut distinct = Vec::new();
    for &st in &sites {
        for &t in &sites {
            if st.vertex() != t.vertex() && st.face() != t.face() && !p.is_wall_vertex(st.vertex()) && !p.is_wall_vertex(t.vertex()) {
                for (a, b) in pairs(n) {
                    distinct.push((st, t, a, b));
                }
            }
        }
    }
    s.family("distinct sites commute", distinct, |&(st, t, a, b), x, _| {
        let a1 = p.vertex_op(st.vertex(), a)?;
        let b1 = p.face_op(st, a)?;
        let a2 = p.vertex_op(t.vertex(), b)?;
        let b2 = p.face_op(t, b)?;
        let r1 = a1.apply(&a2.apply(x)).distance(&a2.apply(&a1.apply(x)));
        let r2 = a1.apply(&b2.apply(x)).distance(&b2.apply(&a1.apply(x)));
        let r3 = b1.apply(&b2.apply(x)).distance(&b2.apply(&b1.apply(x)));
        Ok(r1.max(r2).max(r3))
    })?;

    if let Some(b) = &p.boundary {
        let members = b.subgroup.members.clone();
        let mut wall = Vec::new();
        for v in p.interior_wall_vertices() {
            for &a in &members {
                for &c in &members {
                    wall.push((v, a, c));
                }
            }
        }
        s.family("Ã^k Ã^l = Ã^(kl)", wall.clone(), |&(v, a, c), x, _| {
            let lhs = p.vertex_op(v, a)?.apply(&p.vertex_op(v, c)?.apply(x));
            Ok(lhs.distance(&p.vertex_op(v, g.mul(a, c))?.apply(x)))
        })?;
        let wall_singles: Vec<(usize, usize)> = wall.iter().map(|&(v, a, _)| (v, a)).collect();
        s.family("(Ã^k)† = Ã^(k^-1)", wall_singles, |&(v, a), x, y| {
            let l = y.inner(&p.vertex_op(v, a)?.apply(x));
            let r = p.vertex_op(v, g.inv(a))?.apply(y).inner(x);
            Ok((l - r).norm())
        })?;
        let s0 = p.s0;
        s.family("B^K at the wall site is the identity", vec![()], |_, x, _| Ok(p.wall_face_projector(s0)?.apply(x).distance(x)))?;
    }

    let terms = p.hamiltonian_terms()?;
    let idx: Vec<usize> = (0..terms.len()).collect();
    s.family("Hamiltonian terms are projectors", idx, |&i, x, y| {
        let op = &terms[i].1;
        let px = op.apply(x);
        let r1 = op.apply(&px).distance(&px);
        let r2 = (y.inner(&px) - op.apply(y).inner(x)).norm();
        Ok(r1.max(r2))
    })?;
    let tp: Vec<(usize, usize)> = pairs(terms.len()).into_iter().filter(|(i, j)| i < j).collect();
    s.family("Hamiltonian terms commute", tp, |&(i, j), x, _| {
        let (a, b) = (&terms[i].1, &terms[j].1);
        Ok(a.apply(&b.apply(x)).distance(&b.apply(&a.apply(x))))
    })?;
    Ok(())
}

/// Operators at sites other than the ribbon ends, which the ribbon must commute with.
fn away_ops(p: &LatticePatch, ribbon: &RibbonSpec) -> Result<Vec<Operator>> {
    let touched: Vec<usize> = ribbon
        .triangles
        .iter()
        .map(|t| match *t {
            Triangle::Direct { edge, .. } | Triangle::Dual { edge } => edge,
        })
        .collect();
    let ends = [ribbon.start.vertex(), ribbon.end.vertex()];
    let end_faces = [ribbon.start.face(), ribbon.end.face()];
    let mut ops = Vec::new();
    for v in 0..p.vertices.len() {
        if ends.contains(&v) {
            continue;
        }
        if p.is_wall_vertex(v) {
            if p.interior_wall_vertices().contains(&v) {
                for &k in &p.wall_subgroup()?.members {
                    ops.push(p.vertex_op(v, k)?);
                }
            }
        } else {
            for k in 0..p.group.order() {
                ops.push(p.vertex_op(v, k)?);
            }
        }
    }
    for (f, face) in p.faces.iter().enumerate() {
        if end_faces.contains(&Some(f)) {
            continue;
        }
        ops.push(p.face_op(Site::Bulk { vertex: face.corners[0], face: f }, 0)?);
        if face.cycle.iter().any(|(e, _)| touched.contains(e)) {
            continue;
        }
        for &c in &face.corners {
            for h in 0..p.group.order() {
                ops.push(p.face_op(Site::Bulk { vertex: c, face: f }, h)?);
            }
        }
    }
    Ok(ops)
}

fn bulk_ribbon_relations(p: &LatticePatch, r: &RibbonSpec, s: &mut Suite) -> Result<()> {
    let g = &p.group;
    let n = g.order();
    let e = g.identity();
    let f = |h: usize, gg: usize| p.ribbon_op(r, h, gg);
    let quads: Vec<(usize, usize, usize, usize)> =
        triples(n).into_iter().flat_map(|(a, b, c)| (0..n).map(move |d| (a, b, c, d))).collect();
    s.family("F^(h,g) F^(h',g') = δ(g,g') F^(hh',g)", quads, |&(h, a, h2, b), x, _| {
        let lhs = f(h, a)?.apply(&f(h2, b)?.apply(x));
        let rhs = if a == b { f(g.mul(h, h2), a)?.apply(x) } else { x.scale(ZERO) };
        Ok(lhs.distance(&rhs))
    })?;
    s.family("(F^(h,g))† = F^(h^-1,g)", pairs(n), |&(h, a), x, y| {
        Ok((y.inner(&f(h, a)?.apply(x)) - f(g.inv(h), a)?.apply(y).inner(x)).norm())
    })?;
    let (v0, v1) = (r.start.vertex(), r.end.vertex());
    s.family("A_s0^k F^(h,g) = F^(khk^-1,kg) A_s0^k", triples(n), |&(k, h, a), x, _| {
        let ak = p.vertex_op(v0, k)?;
        let lhs = ak.apply(&f(h, a)?.apply(x));
        let rhs = f(g.conj(k, h), g.mul(k, a))?.apply(&ak.apply(x));
        Ok(lhs.distance(&rhs))
    })?;
    s.family("B_s0^k F^(h,g) = F^(h,g) B_s0^(kh)", triples(n), |&(k, h, a), x, _| {
        let lhs = p.face_op(r.start, k)?.apply(&f(h, a)?.apply(x));
        let rhs = f(h, a)?.apply(&p.face_op(r.start, g.mul(k, h))?.apply(x));
        Ok(lhs.distance(&rhs))
    })?;
    s.family("A_s1^k F^(h,g) = F^(h,gk^-1) A_s1^k", triples(n), |&(k, h, a), x, _| {
        let ak = p.vertex_op(v1, k)?;
        let lhs = ak.apply(&f(h, a)?.apply(x));
        let rhs = f(h, g.mul(a, g.inv(k)))?.apply(&ak.apply(x));
        Ok(lhs.distance(&rhs))
    })?;
    s.family("B_s1^k F^(h,g) = F^(h,g) B_s1^(g^-1h^-1gk)", triples(n), |&(k, h, a), x, _| {
        let lhs = p.face_op(r.end, k)?.apply(&f(h, a)?.apply(x));
        let m = g.mul(g.mul(g.inv(a), g.inv(h)), g.mul(a, k));
        let rhs = f(h, a)?.apply(&p.face_op(r.end, m)?.apply(x));
        Ok(lhs.distance(&rhs))
    })?;
    let away = away_ops(p, r)?;
    let at: Vec<(usize, usize, usize)> = (0..away.len()).flat_map(|i| pairs(n).into_iter().map(move |(h, a)| (i, h, a))).collect();
    s.family("F commutes with A_t, B_t away from s0, s1", at, |&(i, h, a), x, _| {
        let fo = f(h, a)?;
        Ok(away[i].apply(&fo.apply(x)).distance(&fo.apply(&away[i].apply(x))))
    })?;
    s.family("Σ_g F^(e,g) = I", vec![()], |_, x, _| {
        let mut acc = x.scale(ZERO);
        for a in 0..n {
            acc.add_scaled(&f(e, a)?.apply(x), ONE);
        }
        Ok(acc.distance(x))
    })?;

    // Ground-state statements.
    let psi = ground_state(p, s.opts.seed)?;
    let terms = p.hamiltonian_terms()?;
    let fixed = terms.iter().map(|(_, t)| t.apply(&psi).distance(&psi)).fold(0.0, f64::max);
    s.record("ground state is fixed by every term", terms.len(), fixed);
    let other = ground_state(p, s.opts.seed.wrapping_add(7919))?;
    s.record("ground state is unique up to phase", 1, (other.inner(&psi).norm() - 1.0).abs());
    let inv_g = 1.0 / n as f64;
    let mut worst = 0.0f64;
    for (h, a) in pairs(n) {
        let v = psi.inner(&f(h, a)?.apply(&psi));
        let want = if h == e { inv_g } else { 0.0 };
        worst = worst.max((v - want).norm());
    }
    s.record("<ψ|F^(h,g)|ψ> = δ(h,e)/|G|", n * n, worst);

    // |ψ^{h,g}⟩ = F^{h⁻¹,g}|ψ⟩
    let excited: Vec<LatticeState> = pairs(n).iter().map(|&(h, a)| f(g.inv(h), a).map(|o| o.apply(&psi))).collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    for (i, u) in excited.iter().enumerate() {
        for (j, w) in excited.iter().enumerate() {
            let want = if i == j { inv_g } else { 0.0 };
            worst = worst.max((u.inner(w) - want).norm());
        }
    }
    s.record("<ψ^(h,g)|ψ^(h',g')> = δδ/|G|", n * n * n * n, worst);
    let mut worst = 0.0f64;
    for (k, h, a) in triples(n) {
        let u = &excited[h * n + a];
        let moved = p.vertex_op(v0, k)?.apply(u);
        worst = worst.max(moved.distance(&excited[g.conj(k, h) * n + g.mul(k, a)]));
        let proj = p.face_op(r.start, k)?.apply(u);
        let want = if k == h { u.clone() } else { u.scale(ZERO) };
        worst = worst.max(proj.distance(&want));
    }
    s.record("A_s0, B_s0 act on ψ^(h,g) as the regular representation", n * n * n, worst);

    if let Some(d) = p.detour_ribbon().filter(|_| g.is_abelian()) {
        let mut worst = 0.0f64;
        for (h, a) in pairs(n) {
            let u = f(h, a)?.apply(&psi);
            let w = p.ribbon_op(&d, h, a)?.apply(&psi);
            worst = worst.max(u.distance(&w));
        }
        s.record("path independence on the ground state", n * n, worst);
    }
    Ok(())
}

fn boundary_relations(p: &LatticePatch, r: &RibbonSpec, s: &mut Suite) -> Result<()> {
    let g = &p.group;
    let n = g.order();
    let e = g.identity();
    let b = p.boundary.as_ref().expect("boundary patch");
    let km = b.subgroup.members.clone();
    let nk = km.len();
    let phi = |x: usize, y: usize| p.phi_at(x, y);
    let f = |k: usize, a: usize| p.ribbon_op(r, k, a);
    let t = |k: usize, a: usize| p.invariant_op(r, k, a);
    let (v0, v1) = (r.start.vertex(), r.end.vertex());
    let kg: Vec<(usize, usize)> = km.iter().flat_map(|&k| (0..n).map(move |a| (k, a))).collect();
    let kgkg: Vec<(usize, usize, usize, usize)> =
        kg.iter().flat_map(|&(k, a)| kg.iter().map(move |&(l, c)| (k, a, l, c))).collect();
    let kkg: Vec<(usize, usize, usize)> = km.iter().flat_map(|&l| kg.iter().map(move |&(k, a)| (l, k, a))).collect();
    let gkg: Vec<(usize, usize, usize)> = (0..n).flat_map(|h| kg.iter().map(move |&(k, a)| (h, k, a))).collect();

    s.family("F~^(k,g) F~^(k',g') = δ(g,g') φ(k,k') F~^(kk',g)", kgkg.clone(), |&(k, a, l, c), x, _| {
        let lhs = f(k, a)?.apply(&f(l, c)?.apply(x));
        let rhs = if a == c { f(g.mul(k, l), a)?.apply(x).scale(phi(k, l)) } else { x.scale(ZERO) };
        Ok(lhs.distance(&rhs))
    })?;
    s.family("(F~^(k,g))† = F~^(k^-1,g)", kg.clone(), |&(k, a), x, y| {
        Ok((y.inner(&f(k, a)?.apply(x)) - f(g.inv(k), a)?.apply(y).inner(x)).norm())
    })?;
    s.family("A_s1^h F~^(k,g) = F~^(k,gh^-1) A_s1^h", gkg.clone(), |&(h, k, a), x, _| {
        let ah = p.vertex_op(v1, h)?;
        let lhs = ah.apply(&f(k, a)?.apply(x));
        let rhs = f(k, g.mul(a, g.inv(h)))?.apply(&ah.apply(x));
        Ok(lhs.distance(&rhs))
    })?;
    s.family("B_s1^h F~^(k,g) = F~^(k,g) B_s1^(g^-1k^-1gh)", gkg, |&(h, k, a), x, _| {
        let lhs = p.face_op(r.end, h)?.apply(&f(k, a)?.apply(x));
        let m = g.mul(g.mul(g.inv(a), g.inv(k)), g.mul(a, h));
        let rhs = f(k, a)?.apply(&p.face_op(r.end, m)?.apply(x));
        Ok(lhs.distance(&rhs))
    })?;
    s.family("B_s0^l F~^(k,g) = F~^(k,g) B_s0^(lk)", kkg.clone(), |&(l, k, a), x, _| {
        let lhs = p.face_op(r.start, l)?.apply(&f(k, a)?.apply(x));
        let rhs = f(k, a)?.apply(&p.face_op(r.start, g.mul(l, k))?.apply(x));
        Ok(lhs.distance(&rhs))
    })?;
    s.family("Ã_s0^l F~^(k,g) = φ(lk,l^-1) φ(l,k) F~^(lkl^-1,lg) Ã_s0^l", kkg.clone(), |&(l, k, a), x, _| {
        let al = p.vertex_op(v0, l)?;
        let lhs = al.apply(&f(k, a)?.apply(x));
        let c = phi(g.mul(l, k), g.inv(l)) * phi(l, k);
        let rhs = f(g.conj(l, k), g.mul(l, a))?.apply(&al.apply(x)).scale(c);
        Ok(lhs.distance(&rhs))
    })?;
    let away = away_ops(p, r)?;
    let at: Vec<(usize, usize, usize)> = (0..away.len()).flat_map(|i| kg.iter().map(move |&(k, a)| (i, k, a))).collect();
    s.family("F~ commutes with terms away from s0, s1", at, |&(i, k, a), x, _| {
        let fo = f(k, a)?;
        Ok(away[i].apply(&fo.apply(x)).distance(&fo.apply(&away[i].apply(x))))
    })?;

    let ak = p.vertex_projector(v0)?;
    let bk = p.wall_face_projector(r.start)?;
    s.family("[T~^(k,g), Ã_s0^K] = 0", kg.clone(), |&(k, a), x, _| {
        let to = t(k, a)?;
        Ok(to.apply(&ak.apply(x)).distance(&ak.apply(&to.apply(x))))
    })?;
    s.family("[T~^(k,g), B_s0^K] = 0", kg.clone(), |&(k, a), x, _| {
        let to = t(k, a)?;
        Ok(to.apply(&bk.apply(x)).distance(&bk.apply(&to.apply(x))))
    })?;
    s.family("T~^(k,gm) = φ(m,k) φ(mk,m^-1) T~^(mkm^-1,g)", kkg, |&(m, k, a), x, _| {
        let lhs = t(k, g.mul(a, m))?.apply(x);
        let c = phi(m, k) * phi(g.mul(m, k), g.inv(m));
        let rhs = t(g.conj(m, k), a)?.apply(x).scale(c);
        Ok(lhs.distance(&rhs))
    })?;
    let kk = &b.subgroup;
    let same_coset = |a: usize, c: usize| kk.contains(g.mul(g.inv(a), c));
    let apart: Vec<_> = kgkg.iter().copied().filter(|&(_, a, _, c)| !same_coset(a, c)).collect();
    s.family("T~^(k,g) T~^(k',g') = 0 for gK ≠ g'K", apart, |&(k, a, l, c), x, _| {
        Ok(t(k, a)?.apply(&t(l, c)?.apply(x)).norm())
    })?;
    let same: Vec<(usize, usize, usize)> = kg.iter().flat_map(|&(k, a)| km.iter().map(move |&l| (k, l, a))).collect();
    s.family("T~^(k,g) T~^(k',g) = φ(k,k') T~^(kk',g)", same, |&(k, l, a), x, _| {
        let lhs = t(k, a)?.apply(&t(l, a)?.apply(x));
        let rhs = t(g.mul(k, l), a)?.apply(x).scale(phi(k, l));
        Ok(lhs.distance(&rhs))
    })?;
    s.family("(T~^(k,g))† = T~^(k^-1,g)", kg.clone(), |&(k, a), x, y| {
        Ok((y.inner(&t(k, a)?.apply(x)) - t(g.inv(k), a)?.apply(y).inner(x)).norm())
    })?;

    // Ground-state statements.
    let psi = ground_state(p, s.opts.seed)?;
    let terms = p.hamiltonian_terms()?;
    let fixed = terms.iter().map(|(_, op)| op.apply(&psi).distance(&psi)).fold(0.0, f64::max);
    s.record("ground state is fixed by every term", terms.len(), fixed);
    let inv_g = 1.0 / n as f64;
    let mut worst = 0.0f64;
    for &(k, a) in &kg {
        let v = psi.inner(&f(k, a)?.apply(&psi));
        let want = if k == e { inv_g } else { 0.0 };
        worst = worst.max((v - want).norm());
    }
    s.record("<ψ~|F~^(k,g)|ψ~> = δ(k,e)/|G|", kg.len(), worst);
    let states: Vec<LatticeState> = kg.iter().map(|&(k, a)| t(k, a).map(|o| o.apply(&psi))).collect::<Result<_>>()?;
    let (mut apart_worst, mut same_worst) = (0.0f64, 0.0f64);
    let ratio = nk as f64 / n as f64;
    for (i, &(k, a)) in kg.iter().enumerate() {
        for (j, &(l, c)) in kg.iter().enumerate() {
            let ip = states[i].inner(&states[j]);
            if !same_coset(a, c) {
                apart_worst = apart_worst.max(ip.norm());
            } else if a == c {
                let want = if k == l { ratio } else { 0.0 };
                same_worst = same_worst.max((ip - want).norm());
            }
        }
    }
    s.record("<ψ~^(k,g)|ψ~^(k',g')> = 0 for gK ≠ g'K", kg.len() * kg.len(), apart_worst);
    s.record("<ψ~^(k,g)|ψ~^(k',g)> = |K|/|G| δ(k,k')", kg.len() * nk, same_worst);
    let mut worst = 0.0f64;
    for (i, &(k, a)) in kg.iter().enumerate() {
        for h in 0..n {
            let moved = p.vertex_op(v1, h)?.apply(&states[i]);
            let j = kg.iter().position(|&q| q == (k, g.mul(h, a))).expect("pair present");
            worst = worst.max(moved.distance(&states[j]));
            let proj = p.face_op(r.end, h)?.apply(&states[i]);
            let want = if h == g.conj(a, k) { states[i].clone() } else { states[i].scale(ZERO) };
            worst = worst.max(proj.distance(&want));
        }
    }
    s.record("A_s1, B_s1 act on ψ~^(k,g) as the boundary representation", kg.len() * n, worst);
    let lat = lattice_boundary_character(p, r, s.opts.seed)?;
    let alg = boundary_character(g, &b.subgroup, &b.cocycle)?;
    s.record("lattice character = algebraic boundary character", n * n, lat.max_diff(&alg));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::bicharacter_cocycle;
    use crate::groups::{cyclic, direct_product, symmetric};

    fn assert_suite(rows: &[RelationCheck]) {
        let bad: Vec<_> = rows.iter().filter(|r| !r.passed).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn patch_sizes() {
        let z2 = cyclic(2);
        let p = build_patch(&z2, 3, 2, None).unwrap();
        assert_eq!(p.num_edges(), 17);
        assert_eq!(p.dim(), 1 << 17);
        let s3 = symmetric(3);
        let p = build_patch(&s3, 2, 1, Some((Subgroup::whole(&s3), TwoCocycle::trivial(&Subgroup::whole(&s3))))).unwrap();
        assert_eq!(p.num_edges(), 7);
        assert_eq!(p.dim(), 6usize.pow(7));
        assert!(matches!(build_patch(&s3, 3, 2, None), Err(Error::DimensionCap(_))));
    }

    #[test]
    fn toric_code_bulk_suite() {
        let z2 = cyclic(2);
        let p = build_patch(&z2, 3, 2, None).unwrap();
        let rows = relation_suite(&p, &p.default_ribbon(), SuiteOptions { samples: 8, ..Default::default() }).unwrap();
        assert!(rows.iter().any(|r| r.name.starts_with("path independence")));
        assert_suite(&rows);
    }

    #[test]
    fn z2xz2_bilinear_boundary_suite_and_character() {
        let z2 = cyclic(2);
        let g = direct_product(&z2, &z2);
        let k = Subgroup::whole(&g);
        // element index a₁·2 + a₂
        let phi = bicharacter_cocycle(&k, |a, b| if (a % 2) * (b / 2) == 1 { -ONE } else { ONE }).unwrap();
        let p = build_patch(&g, 2, 1, Some((k.clone(), phi.clone()))).unwrap();
        let rows = relation_suite(&p, &p.default_ribbon(), SuiteOptions { samples: 8, ..Default::default() }).unwrap();
        assert_suite(&rows);
        let lat = lattice_boundary_character(&p, &p.default_ribbon(), 3).unwrap();
        let alg = boundary_character(&g, &k, &phi).unwrap();
        assert!(lat.max_diff(&alg) < 1e-6);
    }

    #[test]
    fn ribbon_validation() {
        let z2 = cyclic(2);
        let p = build_patch(&z2, 2, 1, None).unwrap();
        let mut r = p.default_ribbon();
        r.triangles.swap(0, 1);
        assert!(matches!(p.ribbon_op(&r, 0, 0), Err(Error::InvalidRibbon(_))));
        let k = Subgroup::trivial(&z2);
        let pb = build_patch(&z2, 2, 1, Some((k.clone(), TwoCocycle::trivial(&k)))).unwrap();
        assert!(matches!(pb.ribbon_op(&pb.default_ribbon(), 1, 0), Err(Error::NotInSubgroup(1))));
    }
}
