//! Finite groups as Cayley tables.
//!
//! Elements are dense indices `0..n` and index 0 is always the identity.
//! Permutation groups, direct products and affine groups over near-fields are
//! all materialized into tables, so downstream code only ever sees `mul` and
//! `inv`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::CharacterTable;
use crate::{Error, Result};

pub type Group = Arc<GroupTable>;

/// A validated multiplication table.
#[derive(Debug)]
pub struct GroupTable {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    label: String,
    factors: Option<(Group, Group)>,
    conj: OnceLock<Arc<ConjugacyData>>,
    pub(crate) chars: OnceLock<Arc<CharacterTable>>,
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl GroupTable {
    fn from_flat(order: usize, mul: Vec<usize>, label: String, factors: Option<(Group, Group)>) -> Self {
        let mut inv = vec![0; order];
        for x in 0..order {
            for y in 0..order {
                if mul[x * order + y] == 0 {
                    inv[x] = y;
                    break;
                }
            }
        }
        GroupTable {
            order,
            mul,
            inv,
            label,
            factors,
            conj: OnceLock::new(),
            chars: OnceLock::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// `k a k⁻¹`.
    #[inline]
    pub fn conj(&self, k: usize, a: usize) -> usize {
        self.mul(self.mul(k, a), self.inv[k])
    }

    #[inline]
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// The two factors when this group was built as a direct product.
    /// Element `(i, j)` has index `i * |H| + j`.
    pub fn factors(&self) -> Option<&(Group, Group)> {
        self.factors.as_ref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.commute(a, b)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn conjugacy(&self) -> Arc<ConjugacyData> {
        self.conj.get_or_init(|| Arc::new(ConjugacyData::compute(self))).clone()
    }

    fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// Validate a raw multiplication table.
pub fn from_cayley(rows: &[Vec<usize>], label: &str) -> Result<Group> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::NotLatinSquare("empty table".into()));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotLatinSquare(format!("row {i} has length {} (expected {n})", r.len())));
        }
        let mut seen = vec![false; n];
        for &v in r {
            if v >= n {
                return Err(Error::NotLatinSquare(format!("entry {v} in row {i} is out of range")));
            }
            if seen[v] {
                return Err(Error::NotLatinSquare(format!("element {v} repeats in row {i}")));
            }
            seen[v] = true;
        }
    }
    for j in 0..n {
        let mut seen = vec![false; n];
        for r in rows {
            if seen[r[j]] {
                return Err(Error::NotLatinSquare(format!("element {} repeats in column {j}", r[j])));
            }
            seen[r[j]] = true;
        }
    }
    let is_identity = |e: usize| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x);
    if !is_identity(0) {
        return Err(match (1..n).find(|&e| is_identity(e)) {
            Some(e) => Error::NoIdentity(format!("element 0 must be the identity, found it at {e}")),
            None => Error::NoIdentity("no two-sided identity".into()),
        });
    }
    for x in 0..n {
        if !(0..n).any(|y| rows[x][y] == 0 && rows[y][x] == 0) {
            return Err(Error::NoInverse(x));
        }
    }
    let assoc = |a: usize, b: usize, c: usize| rows[rows[a][b]][c] == rows[a][rows[b][c]];
    if n <= 128 {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !assoc(a, b, c) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..10_000 {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if !assoc(a, b, c) {
                return Err(Error::NotAssociative(a, b, c));
            }
        }
    }
    let flat = rows.iter().flatten().copied().collect();
    Ok(Arc::new(GroupTable::from_flat(n, flat, label.to_string(), None)))
}

#[derive(Debug, Clone)]
pub enum Builtin {
    Cyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    DirectProduct(Group, Group),
}

pub fn builtin(kind: Builtin) -> Result<Group> {
    match kind {
        Builtin::Cyclic(n) => {
            if n == 0 || n > 1000 {
                return Err(Error::SizeExceeded(format!("cyclic order {n} not in 1..=1000")));
            }
            let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
            Ok(Arc::new(GroupTable::from_flat(n, mul, format!("Z{n}"), None)))
        }
        Builtin::Symmetric(n) => {
            if n == 0 || n > 6 {
                return Err(Error::SizeExceeded(format!("symmetric degree {n} not in 1..=6")));
            }
            Ok(Arc::new(permutation_group(symmetric_elements(n)).with_label(format!("S{n}"))))
        }
        Builtin::Alternating(n) => {
            if n == 0 || n > 6 {
                return Err(Error::SizeExceeded(format!("alternating degree {n} not in 1..=6")));
            }
            Ok(Arc::new(permutation_group(alternating_elements(n)).with_label(format!("A{n}"))))
        }
        Builtin::DirectProduct(g, h) => Ok(direct_product(&g, &h)),
    }
}

pub fn cyclic(n: usize) -> Group {
    builtin(Builtin::Cyclic(n)).expect("cyclic order in range")
}

pub fn symmetric(n: usize) -> Group {
    builtin(Builtin::Symmetric(n)).expect("degree in range")
}

pub fn alternating(n: usize) -> Group {
    builtin(Builtin::Alternating(n)).expect("degree in range")
}

pub fn direct_product(g: &Group, h: &Group) -> Group {
    let (n, m) = (g.order(), h.order());
    let size = n * m;
    let mut mul = vec![0; size * size];
    for a in 0..size {
        for b in 0..size {
            mul[a * size + b] = g.mul(a / m, b / m) * m + h.mul(a % m, b % m);
        }
    }
    let label = format!("{}x{}", g.label(), h.label());
    Arc::new(GroupTable::from_flat(size, mul, label, Some((g.clone(), h.clone()))))
}

/// All permutations of `0..n` in lexicographic order (identity first).
pub fn symmetric_elements(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut p: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

pub fn alternating_elements(n: usize) -> Vec<Vec<u8>> {
    symmetric_elements(n).into_iter().filter(|p| is_even(p)).collect()
}

fn is_even(p: &[u8]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// Composition `(p q)(i) = p(q(i))`.
fn permutation_group(elems: Vec<Vec<u8>>) -> GroupTable {
    let n = elems.len();
    let index: HashMap<&[u8], usize> = elems.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut mul = vec![0; n * n];
    let mut buf = vec![0u8; elems[0].len()];
    for (a, p) in elems.iter().enumerate() {
        for (b, q) in elems.iter().enumerate() {
            for (k, slot) in buf.iter_mut().enumerate() {
                *slot = p[q[k] as usize];
            }
            mul[a * n + b] = index[buf.as_slice()];
        }
    }
    GroupTable::from_flat(n, mul, String::new(), None)
}

/// Index of a permutation (0-based images) inside `symmetric(n)` or `alternating(n)`.
pub fn permutation_index(elems: &[Vec<u8>], perm: &[u8]) -> Option<usize> {
    elems.iter().position(|p| p == perm)
}

/// Build a 0-based permutation of `0..n` from 1-based disjoint cycles.
pub fn from_cycles(n: usize, cycles: &[&[u8]]) -> Vec<u8> {
    let mut p: Vec<u8> = (0..n as u8).collect();
    for c in cycles {
        for i in 0..c.len() {
            p[(c[i] - 1) as usize] = c[(i + 1) % c.len()] - 1;
        }
    }
    p
}

/// Classes, representatives, transversal and centralizers.
#[derive(Debug, Clone)]
pub struct ConjugacyData {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// Lowest index in each class.
    pub reps: Vec<usize>,
    /// `transversal[b] = k_b` with `k_b a k_b⁻¹ = b`, `a` the rep of `b`'s class.
    pub transversal: Vec<usize>,
    /// Sorted centralizer of each representative.
    pub centralizers: Vec<Vec<usize>>,
    pub element_orders: Vec<usize>,
}

impl ConjugacyData {
    fn compute(g: &GroupTable) -> Self {
        let n = g.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        let mut reps = Vec::new();
        let mut transversal = vec![usize::MAX; n];
        let mut centralizers = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = Vec::new();
            let mut cent = Vec::new();
            for k in 0..n {
                let b = g.conj(k, a);
                if b == a {
                    cent.push(k);
                }
                if transversal[b] == usize::MAX {
                    transversal[b] = k;
                    class_of[b] = c;
                    members.push(b);
                }
            }
            members.sort_unstable();
            classes.push(members);
            reps.push(a);
            centralizers.push(cent);
        }
        let element_orders = (0..n).map(|a| g.element_order(a)).collect();
        ConjugacyData { classes, class_of, reps, transversal, centralizers, element_orders }
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// A subgroup together with its re-indexed copy.
#[derive(Debug, Clone)]
pub struct Subgroup {
    pub parent: Group,
    /// Sorted parent indices; `members[0] = 0`.
    pub members: Vec<usize>,
    /// Member `i` of the subgroup is element `i` of `as_group`.
    pub as_group: Group,
    index: Vec<usize>,
}

impl Subgroup {
    pub fn new(parent: &Group, members: &[usize]) -> Result<Subgroup> {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        let n = parent.order();
        if m.iter().any(|&x| x >= n) {
            return Err(Error::NotSubgroup("member index out of range".into()));
        }
        if m.first() != Some(&0) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        let mut index = vec![usize::MAX; n];
        for (i, &x) in m.iter().enumerate() {
            index[x] = i;
        }
        let k = m.len();
        let mut mul = vec![0; k * k];
        for (i, &a) in m.iter().enumerate() {
            if index[parent.inv(a)] == usize::MAX {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
            for (j, &b) in m.iter().enumerate() {
                let p = index[parent.mul(a, b)];
                if p == usize::MAX {
                    return Err(Error::NotSubgroup(format!("{a}*{b} not closed")));
                }
                mul[i * k + j] = p;
            }
        }
        let label = format!("{}<{}>", parent.label(), k);
        let as_group = Arc::new(GroupTable::from_flat(k, mul, label, None));
        Ok(Subgroup { parent: parent.clone(), members: m, as_group, index })
    }

    pub fn whole(parent: &Group) -> Subgroup {
        Subgroup::new(parent, &(0..parent.order()).collect::<Vec<_>>()).expect("whole group")
    }

    pub fn trivial(parent: &Group) -> Subgroup {
        Subgroup::new(parent, &[0]).expect("trivial subgroup")
    }

    pub fn generated_by(parent: &Group, gens: &[usize]) -> Subgroup {
        let mut set = vec![false; parent.order()];
        set[0] = true;
        let mut members = vec![0];
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for &g in gens {
                let b = parent.mul(a, g);
                if !set[b] {
                    set[b] = true;
                    members.push(b);
                }
            }
            i += 1;
        }
        Subgroup::new(parent, &members).expect("closure is a subgroup")
    }

    /// `Z(a)` as a subgroup.
    pub fn centralizer(parent: &Group, a: usize) -> Subgroup {
        let members: Vec<usize> = (0..parent.order()).filter(|&k| parent.commute(k, a)).collect();
        Subgroup::new(parent, &members).expect("centralizer is a subgroup")
    }

    /// `S × T` inside the product group, with `as_group` kept as a product so
    /// its character table is the tensor product of the factor tables.
    pub fn product(parent: &Group, s: &Subgroup, t: &Subgroup) -> Subgroup {
        let m = t.parent.order();
        let mut members = Vec::with_capacity(s.order() * t.order());
        for &a in &s.members {
            for &b in &t.members {
                members.push(a * m + b);
            }
        }
        let mut sub = Subgroup::new(parent, &members).expect("product of subgroups");
        let prod = direct_product(&s.as_group, &t.as_group);
        debug_assert!(*prod == *sub.as_group);
        sub.as_group = prod;
        sub
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.index[x] != usize::MAX
    }

    /// Position of parent element `x` in `members`.
    pub fn index_of(&self, x: usize) -> Option<usize> {
        let i = self.index[x];
        (i != usize::MAX).then_some(i)
    }
}

/// Left-coset transversal `g₁ = e, g₂, …` picking the lowest index of each coset.
pub fn cosets(g: &Group, k: &Subgroup) -> Result<Vec<usize>> {
    if k.parent.as_ref() != g.as_ref() {
        return Err(Error::NotSubgroup("subgroup belongs to a different group".into()));
    }
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &m in &k.members {
            covered[g.mul(x, m)] = true;
        }
    }
    Ok(reps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NearFieldKind {
    Field,
    Dickson9,
}

/// Addition and multiplication tables of a finite near-field. Element 0 is
/// zero and element 1 is one.
#[derive(Debug, Clone, PartialEq)]
pub struct NearFieldSpec {
    pub q: usize,
    pub p: usize,
    pub add: Vec<usize>,
    pub mul: Vec<usize>,
    pub zero: usize,
    pub one: usize,
    pub kind: NearFieldKind,
}

impl NearFieldSpec {
    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == self.zero).unwrap()
    }

    pub fn recip(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.mul(a, b) == self.one).unwrap()
    }

    pub fn label(&self) -> String {
        match self.kind {
            NearFieldKind::Field => format!("F{}", self.q),
            NearFieldKind::Dickson9 => "dickson9".into(),
        }
    }

    pub fn is_left_distributive(&self) -> bool {
        self.distributive_violation(true).is_none()
    }

    pub fn is_right_distributive(&self) -> bool {
        self.distributive_violation(false).is_none()
    }

    /// First triple violating left (`x(y+z) = xy+xz`) or right distributivity.
    pub fn distributive_violation(&self, left: bool) -> Option<(usize, usize, usize)> {
        let q = self.q;
        for x in 0..q {
            for y in 0..q {
                for z in 0..q {
                    let ok = if left {
                        self.mul(x, self.add(y, z)) == self.add(self.mul(x, y), self.mul(x, z))
                    } else {
                        self.mul(self.add(y, z), x) == self.add(self.mul(y, x), self.mul(z, x))
                    };
                    if !ok {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_field(&self) -> bool {
        self.is_right_distributive() && (0..self.q).all(|a| (0..self.q).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Exhaustive check of the near-field axioms.
    pub fn check_axioms(&self) -> Result<()> {
        let q = self.q;
        let fail = |s: &str| Err(Error::AxiomFailure(s.into()));
        for a in 0..q {
            if self.add(self.zero, a) != a {
                return fail("0 is not an additive identity");
            }
            if !(0..q).any(|b| self.add(a, b) == self.zero) {
                return fail("missing additive inverse");
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) {
                    return fail("addition is not commutative");
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("addition is not associative");
                    }
                }
            }
        }
        for a in 0..q {
            if self.mul(self.zero, a) != self.zero || self.mul(a, self.zero) != self.zero {
                return fail("0·x = x·0 = 0");
            }
        }
        for a in 1..q {
            if self.mul(self.one, a) != a || self.mul(a, self.one) != a {
                return fail("1 is not a multiplicative identity");
            }
            if !(1..q).any(|b| self.mul(a, b) == self.one && self.mul(b, a) == self.one) {
                return fail("missing multiplicative inverse");
            }
            for b in 1..q {
                if self.mul(a, b) == self.zero {
                    return fail("nonzero elements are not closed under multiplication");
                }
                for c in 1..q {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail("multiplication is not associative");
                    }
                }
            }
        }
        if !self.is_left_distributive() {
            return fail("left distributivity");
        }
        Ok(())
    }
}

fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|p| q % p == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Polynomial arithmetic over F_p with coefficients stored as base-p digits.
struct PolyField {
    p: usize,
    k: usize,
    /// Low coefficients of the monic modulus `t^k + Σ f_i t^i`.
    modulus: Vec<usize>,
}

impl PolyField {
    fn digits(&self, mut x: usize) -> Vec<usize> {
        (0..self.k)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn index(&self, d: &[usize]) -> usize {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<usize> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.index(&s)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a), self.digits(b));
        let (p, k) = (self.p, self.k);
        let mut prod = vec![0; 2 * k];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        for d in (k..2 * k).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                prod[d - k + i] = (prod[d - k + i] + p * p - c * self.modulus[i] % p) % p;
            }
        }
        self.index(&prod[..k])
    }

    fn tables(&self) -> (Vec<usize>, Vec<usize>) {
        let q = self.p.pow(self.k as u32);
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = self.add(a, b);
                mul[a * q + b] = self.mul(a, b);
            }
        }
        (add, mul)
    }
}

pub fn near_field(q: usize, kind: NearFieldKind) -> Result<NearFieldSpec> {
    let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q > 256 {
        return Err(Error::SizeExceeded(format!("near-field of size {q} above 256")));
    }
    let spec = match kind {
        NearFieldKind::Field => {
            let mut found = None;
            for m in 0..q {
                let pf = PolyField { p, k, modulus: PolyField { p, k, modulus: vec![0; k] }.digits(m) };
                let (add, mul) = pf.tables();
                let domain = (1..q).all(|a| (1..q).all(|b| mul[a * q + b] != 0));
                if domain {
                    found = Some((add, mul));
                    break;
                }
            }
            let (add, mul) = found.ok_or_else(|| Error::AxiomFailure("no irreducible modulus".into()))?;
            NearFieldSpec { q, p, add, mul, zero: 0, one: 1, kind }
        }
        NearFieldKind::Dickson9 => {
            if q != 9 {
                return Err(Error::SizeExceeded(format!("the Dickson near-field here has order 9, not {q}")));
            }
            // F9 = F3[t]/(t^2 + 1)
            let pf = PolyField { p: 3, k: 2, modulus: vec![1, 0] };
            let (add, fmul) = pf.tables();
            let f = |a: usize, b: usize| fmul[a * 9 + b];
            let is_square = |x: usize| x != 0 && f(f(x, x), f(x, x)) == 1;
            let mut mul = vec![0; 81];
            for x in 0..9 {
                for y in 0..9 {
                    mul[x * 9 + y] = if x == 0 {
                        0
                    } else if is_square(x) {
                        f(x, y)
                    } else {
                        f(x, f(y, f(y, y)))
                    };
                }
            }
            NearFieldSpec { q, p, add, mul, zero: 0, one: 1, kind }
        }
    };
    spec.check_axioms()?;
    Ok(spec)
}

/// `H⁺ ⋊ H^×` with `(a,α)(a′,α′) = (a + α a′, α α′)`.
#[derive(Debug, Clone)]
pub struct AffineGroup {
    pub group: Group,
    pub field: NearFieldSpec,
    /// Nonzero elements, `one` first.
    units: Vec<usize>,
}

impl AffineGroup {
    pub fn index(&self, a: usize, alpha: usize) -> usize {
        let pos = self.units.iter().position(|&u| u == alpha).expect("alpha is a unit");
        a * (self.field.q - 1) + pos
    }

    pub fn pair(&self, x: usize) -> (usize, usize) {
        let m = self.field.q - 1;
        (x / m, self.units[x % m])
    }

    /// The normal subgroup `{(a, 1)}`.
    pub fn translations(&self) -> Subgroup {
        let members: Vec<usize> = (0..self.field.q).map(|a| self.index(a, self.field.one)).collect();
        Subgroup::new(&self.group, &members).expect("translations form a subgroup")
    }

    /// The element `(1, 1)`.
    pub fn unit_translation(&self) -> usize {
        self.index(self.field.one, self.field.one)
    }
}

pub fn affine_group(h: &NearFieldSpec) -> Result<AffineGroup> {
    h.check_axioms()?;
    let q = h.q;
    let mut units = vec![h.one];
    units.extend((1..q).filter(|&u| u != h.one));
    let m = q - 1;
    let n = q * m;
    let pos: HashMap<usize, usize> = units.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let mut mul = vec![0; n * n];
    for x in 0..n {
        let (a, al) = (x / m, units[x % m]);
        for y in 0..n {
            let (b, be) = (y / m, units[y % m]);
            let c = h.add(a, h.mul(al, b));
            let ga = h.mul(al, be);
            mul[x * n + y] = c * m + pos[&ga];
        }
    }
    let label = format!("affine({})", h.label());
    let group = Arc::new(GroupTable::from_flat(n, mul, label, None));
    Ok(AffineGroup { group, field: h.clone(), units })
}
