//! 2-cocycles on subgroups and the commuting-pair phase `φ(k|l)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::groups::{direct_product, AffineGroup, Subgroup};
use crate::{tol, Error, Result};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// `φ: K × K → ℂ×`, stored by member index of `K`.
#[derive(Debug, Clone)]
pub struct TwoCocycle {
    pub subgroup: Subgroup,
    /// `table[i·|K| + j] = φ(k_i, k_j)`.
    pub table: Vec<Complex64>,
}

impl TwoCocycle {
    pub fn trivial(k: &Subgroup) -> Self {
        TwoCocycle { subgroup: k.clone(), table: vec![ONE; k.order() * k.order()] }
    }

    /// Check the cocycle identity `φ(kl,m)φ(k,l) = φ(k,lm)φ(l,m)` on every triple.
    pub fn validate(k: &Subgroup, table: Vec<Complex64>) -> Result<Self> {
        let n = k.order();
        if table.len() != n * n {
            return Err(Error::SizeMismatch { expected: n * n, got: table.len() });
        }
        let c = TwoCocycle { subgroup: k.clone(), table };
        if let Some(i) = c.table.iter().position(|v| v.norm() < tol::EQ) {
            return Err(Error::CocycleIdentityFailure(k.members[i / n], k.members[i % n], 0));
        }
        if let Some((a, b, m)) = c.first_violation() {
            return Err(Error::CocycleIdentityFailure(k.members[a], k.members[b], k.members[m]));
        }
        Ok(c)
    }

    /// First violating triple, as member indices.
    pub fn first_violation(&self) -> Option<(usize, usize, usize)> {
        let kg = &self.subgroup.as_group;
        let n = kg.order();
        for a in 0..n {
            for b in 0..n {
                let ab = kg.mul(a, b);
                for m in 0..n {
                    let lhs = self.local(ab, m) * self.local(a, b);
                    let rhs = self.local(a, kg.mul(b, m)) * self.local(b, m);
                    if (lhs - rhs).norm() > tol::EQ * (1.0 + lhs.norm()) {
                        return Some((a, b, m));
                    }
                }
            }
        }
        None
    }

    #[inline]
    pub fn local(&self, i: usize, j: usize) -> Complex64 {
        self.table[i * self.subgroup.order() + j]
    }

    /// `φ(k, l)` for parent elements `k, l ∈ K`.
    pub fn get(&self, k: usize, l: usize) -> Result<Complex64> {
        let i = self.subgroup.index_of(k).ok_or(Error::NotInSubgroup(k))?;
        let j = self.subgroup.index_of(l).ok_or(Error::NotInSubgroup(l))?;
        Ok(self.local(i, j))
    }

    /// `α(k)α(l)/α(kl) · φ(k,l)` for `α` indexed by member.
    pub fn gauge(&self, alpha: &[Complex64]) -> TwoCocycle {
        let kg = &self.subgroup.as_group;
        let n = kg.order();
        let mut table = self.table.clone();
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] *= alpha[i] * alpha[j] / alpha[kg.mul(i, j)];
            }
        }
        TwoCocycle { subgroup: self.subgroup.clone(), table }
    }

    /// An equivalent cocycle with `φ(e,k) = φ(k,e) = φ(k,k⁻¹) = 1` and `|φ| = 1`,
    /// together with the gauge `α` that produced it.
    pub fn normalize(&self) -> (TwoCocycle, Vec<Complex64>) {
        let kg = &self.subgroup.as_group;
        let n = kg.order();
        // |φ(k,l)| = β(k)β(l)/β(kl) with β = exp(Σ_m log|φ(k,m)| / n)
        let mut alpha: Vec<Complex64> = (0..n)
            .map(|i| {
                let s: f64 = (0..n).map(|m| self.local(i, m).norm().ln()).sum();
                Complex64::new((-s / n as f64).exp(), 0.0)
            })
            .collect();
        let mut phi = self.gauge(&alpha);
        let c = phi.local(0, 0);
        let flat = vec![ONE / c; n];
        phi = phi.gauge(&flat);
        alpha.iter_mut().for_each(|a| *a /= c);
        let mut step = vec![ONE; n];
        for i in 1..n {
            let j = kg.inv(i);
            if i < j {
                step[j] = ONE / phi.local(i, j);
            } else if i == j {
                step[i] = ONE / phi.local(i, i).sqrt();
            }
        }
        phi = phi.gauge(&step);
        for (a, s) in alpha.iter_mut().zip(&step) {
            *a *= s;
        }
        for v in phi.table.iter_mut() {
            *v /= v.norm();
        }
        (phi, alpha)
    }

    /// Which of the four normalization properties fail, by name.
    pub fn normalization_defects(&self) -> Vec<&'static str> {
        let kg = &self.subgroup.as_group;
        let n = kg.order();
        let close = |a: Complex64, b: Complex64| (a - b).norm() < 1e-8;
        let mut out = Vec::new();
        if !(0..n).all(|k| close(self.local(0, k), ONE) && close(self.local(k, 0), ONE)) {
            out.push("identity");
        }
        if !(0..n).all(|k| close(self.local(k, kg.inv(k)), ONE)) {
            out.push("inverse");
        }
        if !self.table.iter().all(|v| (v.norm() - 1.0).abs() < 1e-8) {
            out.push("modulus");
        }
        let sym = (0..n).all(|k| (0..n).all(|l| close(self.local(kg.inv(k), kg.inv(l)) * self.local(l, k), ONE)));
        if !sym {
            out.push("inverse-swap");
        }
        out
    }

    pub fn is_normalized(&self) -> bool {
        self.normalization_defects().is_empty()
    }

    /// `φ(k|l) = φ(k,l) φ(klk⁻¹,k)⁻¹` on commuting pairs.
    pub fn phase(&self) -> CommutingPairPhase {
        let kg = &self.subgroup.as_group;
        let n = kg.order();
        let mut values = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                if kg.commute(i, j) {
                    let klk = kg.conj(i, j);
                    values[i * n + j] = Some(self.local(i, j) / self.local(klk, i));
                }
            }
        }
        CommutingPairPhase { subgroup: self.subgroup.clone(), values }
    }

    /// The alternative form `φ(k,l) φ(kl,k⁻¹)`, valid for normalized cocycles.
    pub fn phase_alt(&self, i: usize, j: usize) -> Complex64 {
        let kg = &self.subgroup.as_group;
        self.local(i, j) * self.local(kg.mul(i, j), kg.inv(i))
    }

    /// Exponent table when every entry is a power of `e^{2πi/order}`.
    pub fn exponents(&self, order: usize) -> Option<Vec<Vec<u32>>> {
        let n = self.subgroup.order();
        let mut out = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = self.local(i, j);
                let t = v.arg() / (2.0 * PI) * order as f64;
                let r = t.round();
                if (t - r).abs() > 1e-6 || (v.norm() - 1.0).abs() > 1e-8 {
                    return None;
                }
                out[i][j] = r.rem_euclid(order as f64) as u32;
            }
        }
        Some(out)
    }

    pub fn from_exponents(k: &Subgroup, order: usize, exps: &[Vec<u32>]) -> Result<Self> {
        let n = k.order();
        if exps.len() != n || exps.iter().any(|r| r.len() != n) {
            return Err(Error::SizeMismatch { expected: n, got: exps.len() });
        }
        let table = exps.iter().flatten().map(|&e| root(order, e as i64)).collect();
        TwoCocycle::validate(k, table)
    }
}

/// `e^{2πi e/order}`.
pub fn root(order: usize, e: i64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * e.rem_euclid(order as i64) as f64 / order as f64)
}

/// `φ(k|l)` on commuting pairs of `K`, `None` elsewhere.
#[derive(Debug, Clone)]
pub struct CommutingPairPhase {
    pub subgroup: Subgroup,
    pub values: Vec<Option<Complex64>>,
}

impl CommutingPairPhase {
    #[inline]
    pub fn local(&self, i: usize, j: usize) -> Option<Complex64> {
        self.values[i * self.subgroup.order() + j]
    }

    /// `φ(k|l)` for parent elements.
    pub fn get(&self, k: usize, l: usize) -> Option<Complex64> {
        self.local(self.subgroup.index_of(k)?, self.subgroup.index_of(l)?)
    }

    pub fn max_diff(&self, other: &CommutingPairPhase) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| match (a, b) {
                (Some(x), Some(y)) => (x - y).norm(),
                (None, None) => 0.0,
                _ => f64::INFINITY,
            })
            .fold(0.0, f64::max)
    }

    /// For abelian `K`: the cocycle class is trivial iff `φ(·|·) ≡ 1`.
    pub fn is_trivial(&self) -> bool {
        self.values.iter().flatten().all(|v| (v - ONE).norm() < 1e-8)
    }
}

/// Coboundary test for abelian `K`.
pub fn is_coboundary_abelian(phi: &TwoCocycle) -> Result<bool> {
    if !phi.subgroup.as_group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    Ok(phi.phase().is_trivial())
}

/// `φ = B` for a bimultiplicative `B` on an abelian `K`.
pub fn bicharacter_cocycle(k: &Subgroup, b: impl Fn(usize, usize) -> Complex64) -> Result<TwoCocycle> {
    let kg = &k.as_group;
    if !kg.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = kg.order();
    let table: Vec<Complex64> = (0..n * n).map(|i| b(k.members[i / n], k.members[i % n])).collect();
    let at = |i: usize, j: usize| table[i * n + j];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let left = at(kg.mul(x, y), z) - at(x, z) * at(y, z);
                let right = at(x, kg.mul(y, z)) - at(x, y) * at(x, z);
                if left.norm() > tol::EQ || right.norm() > tol::EQ {
                    return Err(Error::NotBimultiplicative(k.members[x], k.members[y], k.members[z]));
                }
            }
        }
    }
    TwoCocycle::validate(k, table)
}

/// Absolute trace `𝐅_q → 𝐅_p`, `x + x^p + … + x^{p^{k-1}}`, returned as an integer mod p.
pub fn absolute_trace(ag: &AffineGroup, x: usize) -> usize {
    let h = &ag.field;
    let mut sum = h.zero;
    let mut pow = x;
    let mut q = 1;
    while q < h.q {
        sum = h.add(sum, pow);
        let mut next = h.one;
        for _ in 0..h.p {
            next = h.mul(next, pow);
        }
        pow = next;
        q *= h.p;
    }
    // the prime subfield {0, 1, 1+1, …} is indexed by its digit
    let mut k = 0;
    let mut acc = h.zero;
    while acc != sum {
        acc = h.add(acc, h.one);
        k += 1;
        assert!(k < h.p, "trace must land in the prime field");
    }
    k
}

/// The wall subgroup `U = {((a₁,α),(a₂,α⁻¹))}` of `G × G`.
pub fn wall_subgroup(ag: &AffineGroup) -> Subgroup {
    let g = &ag.group;
    let gg = direct_product(g, g);
    let h = &ag.field;
    let n = g.order();
    let mut members = Vec::new();
    for a1 in 0..h.q {
        for a2 in 0..h.q {
            for al in 1..h.q {
                let x = ag.index(a1, al);
                let y = ag.index(a2, h.recip(al));
                members.push(x * n + y);
            }
        }
    }
    Subgroup::new(&gg, &members).expect("the wall set is a subgroup")
}

/// `φ(g, h) = ω^{tr_p(α a₂ b₁)}` on the wall subgroup.
pub fn wall_cocycle(ag: &AffineGroup) -> Result<TwoCocycle> {
    if !ag.field.is_field() {
        return Err(Error::NotAField);
    }
    let u = wall_subgroup(ag);
    let n = ag.group.order();
    let h = &ag.field;
    let m = u.order();
    let mut table = Vec::with_capacity(m * m);
    for &g in &u.members {
        let (_, al) = ag.pair(g / n);
        let (a2, _) = ag.pair(g % n);
        for &x in &u.members {
            let (b1, _) = ag.pair(x / n);
            let t = absolute_trace(ag, h.mul(al, h.mul(a2, b1)));
            table.push(root(h.p, t as i64));
        }
    }
    TwoCocycle::validate(&u, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, near_field, affine_group, NearFieldKind, Subgroup};

    fn klein() -> Subgroup {
        let g = direct_product(&cyclic(2), &cyclic(2));
        Subgroup::whole(&g)
    }

    #[test]
    fn bilinear_sign_cocycle() {
        let k = klein();
        let phi = bicharacter_cocycle(&k, |a, b| if (a % 2) * (b / 2) == 1 { -ONE } else { ONE }).unwrap();
        // φ((1,1),(1,1)) = −1, so this is not a normalization fixed point
        assert_eq!(phi.normalization_defects(), vec!["inverse", "inverse-swap"]);
        let (n, _) = phi.normalize();
        assert!(n.is_normalized());
        assert!(n.phase().max_diff(&phi.phase()) < 1e-12);
        assert!(!is_coboundary_abelian(&phi).unwrap());
    }

    #[test]
    fn flipped_sign_fails() {
        let k = klein();
        let mut table = vec![ONE; 16];
        table[1 * 4 + 2] = -ONE;
        assert!(matches!(TwoCocycle::validate(&k, table), Err(Error::CocycleIdentityFailure(..))));
    }

    #[test]
    fn normalize_fixes_gauge() {
        let k = Subgroup::whole(&cyclic(4));
        let alpha: Vec<Complex64> = (0..4).map(|i| Complex64::from_polar(1.0 + i as f64, 0.3 * i as f64)).collect();
        let phi = TwoCocycle::trivial(&k).gauge(&alpha);
        let (n, _) = phi.normalize();
        assert!(n.is_normalized(), "{:?}", n.normalization_defects());
        assert!(n.phase().is_trivial());
    }

    #[test]
    fn wall_cocycle_q3_values() {
        let ag = affine_group(&near_field(3, NearFieldKind::Field).unwrap()).unwrap();
        let phi = wall_cocycle(&ag).unwrap();
        assert_eq!(phi.subgroup.order(), 18);
        assert!(phi.exponents(3).is_some());
        let d = affine_group(&near_field(9, NearFieldKind::Dickson9).unwrap()).unwrap();
        assert!(matches!(wall_cocycle(&d), Err(Error::NotAField)));
    }
}
