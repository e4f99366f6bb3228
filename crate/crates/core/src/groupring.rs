//! The group ring `Q(ζ_{p^m})[N_n]` of the cyclic group `N_n = ⟨σ_n⟩` of
//! order `p^n`, its Hopf structure, the diagonal Galois action and the
//! computation of its fixed ring.
//!
//! The coefficient level `m` and the group level `n` are tracked separately:
//! the connecting maps between levels keep the coefficients and only shrink
//! the group.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Serialize, Serializer};

use crate::cyclotomic::{pow_mod, CycloElt, FieldDescriptor};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::rat::Rat;

/// `Σ_b c_b σ^b` with `c_b ∈ Q(ζ)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElt {
    field: FieldDescriptor,
    level: u32,
    coeffs: Vec<CycloElt>,
}

impl GroupRingElt {
    /// Zero of `Q(ζ)[N_level]` with coefficients in `field`.
    pub fn zero(field: FieldDescriptor, level: u32) -> Self {
        let order = field.p().pow(level) as usize;
        GroupRingElt { field, level, coeffs: vec![CycloElt::zero(field); order] }
    }

    pub fn one(field: FieldDescriptor, level: u32) -> Self {
        Self::sigma_pow(field, level, 0)
    }

    /// `σ^b`, exponent taken modulo the group order.
    pub fn sigma_pow(field: FieldDescriptor, level: u32, b: i64) -> Self {
        let mut x = Self::zero(field, level);
        let idx = b.rem_euclid(x.group_order() as i64) as usize;
        x.coeffs[idx] = CycloElt::one(field);
        x
    }

    /// The group ring `Q(ζ_n)[N_n]` at matching levels.
    pub fn zero_at(field: FieldDescriptor) -> Self {
        Self::zero(field, field.n())
    }

    pub fn from_coeffs(field: FieldDescriptor, level: u32, coeffs: Vec<CycloElt>) -> Result<Self> {
        let order = field.p().pow(level) as usize;
        if coeffs.len() != order {
            return Err(Error::Mismatch(format!("expected {order} coefficients, got {}", coeffs.len())));
        }
        if let Some(c) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::Mismatch(format!("coefficient in level {} instead of {}", c.field().n(), field.n())));
        }
        Ok(GroupRingElt { field, level, coeffs })
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    /// Level of the group: `|N| = p^level`.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn group_order(&self) -> u64 {
        self.field.p().pow(self.level)
    }

    pub fn coeffs(&self) -> &[CycloElt] {
        &self.coeffs
    }

    pub fn coeff(&self, b: i64) -> &CycloElt {
        &self.coeffs[b.rem_euclid(self.group_order() as i64) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycloElt::is_zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field || self.level != other.level {
            return Err(Error::Mismatch(format!(
                "group rings Q(ζ_{})[N_{}] and Q(ζ_{})[N_{}]",
                self.field.n(),
                self.level,
                other.field.n(),
                other.level
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(GroupRingElt {
            field: self.field,
            level: self.level,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    /// Convolution product.
    pub fn gr_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.coeffs.len();
        let mut out = Self::zero(self.field, self.level);
        for (a, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, y) in other.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let c = (a + b) % order;
                out.coeffs[c] = &out.coeffs[c] + &(x * y);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycloElt) -> Self {
        GroupRingElt { field: self.field, level: self.level, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        GroupRingElt { field: self.field, level: self.level, coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect() }
    }

    /// `Δ(σ^b) = σ^b ⊗ σ^b`, extended linearly.
    pub fn gr_comul(&self) -> TensorElt {
        let mut t = TensorElt::new(self.field, self.level, 2);
        for (b, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            t.add_term(vec![b as u64, b as u64], c);
        }
        t
    }

    /// `ε(σ^b) = 1`.
    pub fn gr_counit(&self) -> CycloElt {
        self.coeffs.iter().fold(CycloElt::zero(self.field), |acc, c| &acc + c)
    }

    /// `S(σ^b) = σ^{-b}`.
    pub fn gr_antipode(&self) -> Self {
        let order = self.coeffs.len();
        let mut out = Self::zero(self.field, self.level);
        for (b, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(order - b) % order] = c.clone();
        }
        out
    }

    /// The diagonal action of `δ^e`: `ζ ↦ ζ^{π^e}` on coefficients and
    /// `σ^b ↦ σ^{b π^e}` on the group.
    pub fn diag_action(&self, e: i64) -> Self {
        let order = self.group_order();
        let k = group_multiplier(self.field, self.level, e);
        let mut out = Self::zero(self.field, self.level);
        for (b, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let target = ((b as u64 * k) % order) as usize;
            out.coeffs[target] = &out.coeffs[target] + &c.delta_apply(e);
        }
        out
    }

    /// The automorphism `ζ ↦ ζ^u`, `σ^b ↦ σ^{bu}` for a unit `u`; `δ^e` is
    /// the case `u = π^e`.
    pub fn galois_action(&self, u: u64) -> Result<Self> {
        if u.is_multiple_of(self.field.p()) {
            return Err(Error::NotUnit(format!("{u} is divisible by {}", self.field.p())));
        }
        let order = self.group_order();
        let mut out = Self::zero(self.field, self.level);
        for (b, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let target = ((b as u64 * (u % order)) % order) as usize;
            out.coeffs[target] = &out.coeffs[target] + &c.substitute((u % self.field.order()) as i64);
        }
        Ok(out)
    }

    /// The same element with coefficients pushed into `Q(ζ_{p^n})`, `n ≥` the
    /// current coefficient level.
    pub fn embed_coefficients(&self, n: u32) -> Result<Self> {
        let field = self.field.at_level(n)?;
        let coeffs = self.coeffs.iter().map(|c| c.embed(n)).collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(field, self.level, coeffs)
    }

    /// Coordinates over the Q-basis `ζ^a σ^b`, index `b·φ + a`.
    pub fn to_sparse(&self) -> SparseVec {
        let phi = self.field.phi();
        let mut pairs = Vec::new();
        for (b, c) in self.coeffs.iter().enumerate() {
            for (a, v) in c.coeffs().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                pairs.push((b * phi + a, v.clone()));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn from_sparse(field: FieldDescriptor, level: u32, v: &SparseVec) -> Self {
        let phi = field.phi();
        let mut out = Self::zero(field, level);
        let mut dense: Vec<Vec<Rat>> = vec![vec![Rat::zero(); phi]; out.coeffs.len()];
        for (i, val) in v.entries() {
            dense[i / phi][i % phi] = val.clone();
        }
        for (c, d) in out.coeffs.iter_mut().zip(dense) {
            *c = CycloElt::from_coeffs(field, d).expect("length φ");
        }
        out
    }

    pub fn q_dimension(field: FieldDescriptor, level: u32) -> usize {
        field.phi() * field.p().pow(level) as usize
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("rationals serialize")
    }

    pub fn from_json(field: FieldDescriptor, level: u32, value: &serde_json::Value) -> Result<Self> {
        let arr = value.as_array().ok_or_else(|| Error::Parse("expected a JSON array".into()))?;
        let coeffs = arr.iter().map(|c| CycloElt::from_json(field, c)).collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(field, level, coeffs)
    }
}

impl Serialize for GroupRingElt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl fmt::Debug for GroupRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{c}]σ^{b}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a GroupRingElt> for &'a GroupRingElt {
    type Output = GroupRingElt;
    fn add(self, rhs: &GroupRingElt) -> GroupRingElt {
        self.try_add(rhs).expect("compatible group rings")
    }
}

impl<'a> Sub<&'a GroupRingElt> for &'a GroupRingElt {
    type Output = GroupRingElt;
    fn sub(self, rhs: &GroupRingElt) -> GroupRingElt {
        self.try_add(&rhs.scale_rat(&-Rat::one())).expect("compatible group rings")
    }
}

impl<'a> Mul<&'a GroupRingElt> for &'a GroupRingElt {
    type Output = GroupRingElt;
    fn mul(self, rhs: &GroupRingElt) -> GroupRingElt {
        self.gr_mul(rhs).expect("compatible group rings")
    }
}

/// An element of `Q(ζ)[N]^{⊗k}` expanded over basis tuples `(σ^{b_1}, …, σ^{b_k})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElt {
    field: FieldDescriptor,
    level: u32,
    arity: usize,
    terms: BTreeMap<Vec<u64>, CycloElt>,
}

impl TensorElt {
    pub fn new(field: FieldDescriptor, level: u32, arity: usize) -> Self {
        TensorElt { field, level, arity, terms: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u64>, CycloElt> {
        &self.terms
    }

    pub fn add_term(&mut self, key: Vec<u64>, c: &CycloElt) {
        debug_assert_eq!(key.len(), self.arity);
        let entry = self.terms.entry(key).or_insert_with(|| CycloElt::zero(self.field));
        *entry = &*entry + c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    /// Applies `Δ` to tensor factor `slot`.
    pub fn comul_at(&self, slot: usize) -> TensorElt {
        let mut out = TensorElt::new(self.field, self.level, self.arity + 1);
        for (key, c) in &self.terms {
            let mut k = key.clone();
            k.insert(slot, key[slot]);
            out.add_term(k, c);
        }
        out
    }

    /// Applies `ε` to tensor factor `slot`.
    pub fn counit_at(&self, slot: usize) -> TensorElt {
        let mut out = TensorElt::new(self.field, self.level, self.arity - 1);
        for (key, c) in &self.terms {
            let mut k = key.clone();
            k.remove(slot);
            out.add_term(k, c);
        }
        out
    }

    /// Applies `S` to tensor factor `slot`.
    pub fn antipode_at(&self, slot: usize) -> TensorElt {
        let order = self.field.p().pow(self.level);
        let mut out = TensorElt::new(self.field, self.level, self.arity);
        for (key, c) in &self.terms {
            let mut k = key.clone();
            k[slot] = (order - k[slot]) % order;
            out.add_term(k, c);
        }
        out
    }

    /// Multiplies all factors together.
    pub fn multiply(&self) -> GroupRingElt {
        let order = self.field.p().pow(self.level);
        let mut out = GroupRingElt::zero(self.field, self.level);
        for (key, c) in &self.terms {
            let b = key.iter().sum::<u64>() % order;
            out.coeffs[b as usize] = &out.coeffs[b as usize] + c;
        }
        out
    }

    /// Reads a one-factor tensor back as a group ring element.
    pub fn to_group_ring(&self) -> Option<GroupRingElt> {
        if self.arity != 1 {
            return None;
        }
        Some(self.multiply())
    }
}

/// `π^e mod p^level`, valid whether the group level is above or below the
/// coefficient level.
pub(crate) fn group_multiplier(field: FieldDescriptor, level: u32, e: i64) -> u64 {
    let p = field.p();
    let order = p.pow(level);
    let top = level.max(field.n());
    let period = (p.pow(top - 1) * (p - 1)) as i64;
    pow_mod(field.pi(), e.rem_euclid(period) as u64, order)
}

/// `δ` applied to the basis vector `ζ^a σ^b`, as Q-coordinates (see
/// [`GroupRingElt::to_sparse`]).
pub(crate) fn diag_action_on_basis(field: FieldDescriptor, level: u32, a: usize, b: u64) -> Vec<(usize, Rat)> {
    let order = field.p().pow(level);
    let k = field.pi();
    let target = ((b * group_multiplier(field, level, 1)) % order) as usize;
    let phi = field.phi();
    let mut out = Vec::with_capacity(field.p() as usize);
    field.monomial_terms(a as i64 * k as i64).for_each(|i, positive| {
        out.push((target * phi + i, if positive { Rat::one() } else { -Rat::one() }));
    });
    out
}

/// Orbits of `b ↦ bπ` on `Z/p^level`, each listed as `b_0, b_0π, b_0π², …`.
pub(crate) fn sigma_orbits(field: FieldDescriptor, level: u32) -> Vec<Vec<u64>> {
    let order = field.p().pow(level);
    let k = group_multiplier(field, level, 1);
    let mut seen = vec![false; order as usize];
    let mut orbits = Vec::new();
    for start in 0..order {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut b = start;
        while !seen[b as usize] {
            seen[b as usize] = true;
            orbit.push(b);
            b = b * k % order;
        }
        orbits.push(orbit);
    }
    orbits
}

/// A Q-basis of the fixed ring `Q(ζ_n)[N_n]^{Δ_n}`, computed as the kernel
/// of `δ - 1` on the `φ(p^n)·p^n`-dimensional rational space.
///
/// Columns are numbered orbit by orbit with the later orbit positions
/// first; with that order every equation `δ(c_t) = c_{t+1}` pivots on its
/// `c_{t+1}` entry and the closing equation of each orbit reduces to
/// `(δ^k - 1) c_0 = 0` without fill beyond one automorphism matrix.
pub fn fixed_ring(p: u64, n: u32) -> Result<Vec<GroupRingElt>> {
    let field = FieldDescriptor::new(p, n)?;
    Ok(fixed_ring_in(field, n))
}

pub(crate) fn fixed_ring_in(field: FieldDescriptor, level: u32) -> Vec<GroupRingElt> {
    let phi = field.phi();
    let dim = GroupRingElt::q_dimension(field, level);
    let orbits = sigma_orbits(field, level);

    // column numbering: canonical (b·φ + a) <-> solver column
    let mut to_solver = vec![0usize; dim];
    let mut to_canonical = vec![0usize; dim];
    let mut base = 0;
    for orbit in &orbits {
        let k = orbit.len();
        for (t, &b) in orbit.iter().enumerate() {
            for a in 0..phi {
                let col = base + (k - 1 - t) * phi + a;
                to_solver[b as usize * phi + a] = col;
                to_canonical[col] = b as usize * phi + a;
            }
        }
        base += k * phi;
    }

    let mut echelon = Echelon::new(dim);
    for orbit in &orbits {
        let k = orbit.len();
        let order: Vec<usize> = (1..k).chain(std::iter::once(0)).collect();
        for t_next in order {
            let t_prev = (t_next + k - 1) % k;
            let b_prev = orbit[t_prev];
            let b_next = orbit[t_next];
            // row a: (δ c_{t_prev})_a - (c_{t_next})_a at the σ^{b_next} slot
            let mut rows: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); phi];
            for a_src in 0..phi {
                for (canon, v) in diag_action_on_basis(field, level, a_src, b_prev) {
                    debug_assert_eq!(canon / phi, b_next as usize);
                    rows[canon % phi].push((to_solver[b_prev as usize * phi + a_src], v));
                }
            }
            for (a, mut row) in rows.into_iter().enumerate() {
                row.push((to_solver[b_next as usize * phi + a], -Rat::one()));
                echelon.insert(&SparseVec::from_pairs(row));
            }
        }
    }

    echelon
        .kernel_basis()
        .into_iter()
        .map(|v| GroupRingElt::from_sparse(field, level, &v.permute(|c| to_canonical[c])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, n: u32) -> FieldDescriptor {
        FieldDescriptor::new(p, n).unwrap()
    }

    #[test]
    fn group_law_examples() {
        let k = f(3, 2);
        let s = GroupRingElt::sigma_pow(k, 2, 1);
        let s_inv = GroupRingElt::sigma_pow(k, 2, 8);
        assert_eq!(&s * &s_inv, GroupRingElt::one(k, 2));
        let one = GroupRingElt::one(k, 2);
        let lhs = &(&one + &s) * &(&one - &s);
        let s2 = GroupRingElt::sigma_pow(k, 2, 2);
        assert_eq!(lhs, &one - &s2);
    }

    #[test]
    fn hopf_maps_on_group_likes() {
        let k = f(3, 2);
        let s = GroupRingElt::sigma_pow(k, 2, 1);
        let d = s.gr_comul();
        assert_eq!(d.terms().len(), 1);
        assert!(d.terms().contains_key(&vec![1, 1]));
        assert_eq!(GroupRingElt::one(k, 2).gr_counit(), CycloElt::one(k));
        assert_eq!(GroupRingElt::sigma_pow(k, 2, 2).gr_antipode(), GroupRingElt::sigma_pow(k, 2, 7));
    }

    #[test]
    fn mismatched_levels_are_rejected() {
        let a = GroupRingElt::one(f(3, 1), 1);
        let b = GroupRingElt::one(f(3, 2), 2);
        assert!(a.gr_mul(&b).is_err());
        let c = GroupRingElt::one(f(3, 2), 1);
        assert!(b.gr_mul(&c).is_err());
    }

    #[test]
    fn diagonal_action_example() {
        // δ(ζσ) = ζ²σ² for p = 3, π = 2
        let k = f(3, 1);
        let zs = GroupRingElt::sigma_pow(k, 1, 1).scale(&CycloElt::zeta(k));
        let expect = GroupRingElt::sigma_pow(k, 1, 2).scale(&CycloElt::monomial(k, 2, &Rat::one()));
        assert_eq!(zs.diag_action(1), expect);
        assert_eq!(zs.diag_action(0), zs);
        assert_eq!(zs.galois_action(2).unwrap(), expect);
        assert!(zs.galois_action(3).is_err());
    }

    #[test]
    fn action_with_group_above_coefficients() {
        // Q(ζ_1)[N_2]: σ_2 ↦ σ_2^π with π = 2 read mod 9
        let k = f(3, 1);
        let s = GroupRingElt::sigma_pow(k, 2, 4);
        assert_eq!(s.diag_action(1), GroupRingElt::sigma_pow(k, 2, 8));
        assert_eq!(s.diag_action(6), s);
        assert_ne!(s.diag_action(2), s);
    }

    #[test]
    fn basis_action_matches_general_action() {
        for (p, n) in [(3, 1), (3, 2), (5, 1)] {
            let k = f(p, n);
            for b in 0..k.order() {
                for a in 0..k.phi() {
                    let x =
                        GroupRingElt::sigma_pow(k, n, b as i64).scale(&CycloElt::monomial(k, a as i64, &Rat::one()));
                    let general = x.diag_action(1).to_sparse();
                    let direct = SparseVec::from_pairs(diag_action_on_basis(k, n, a, b));
                    assert_eq!(general, direct);
                }
            }
        }
    }

    #[test]
    fn fixed_ring_dimensions() {
        assert_eq!(fixed_ring(3, 1).unwrap().len(), 3);
        assert_eq!(fixed_ring(3, 2).unwrap().len(), 9);
        for x in fixed_ring(3, 2).unwrap() {
            assert_eq!(x.diag_action(1), x);
        }
    }

    #[test]
    fn tensor_counit_axiom_on_group_likes() {
        let k = f(3, 1);
        let x = &GroupRingElt::sigma_pow(k, 1, 1).scale(&CycloElt::zeta(k))
            + &GroupRingElt::sigma_pow(k, 1, 2).scale_rat(&Rat::new(-2, 3));
        let d = x.gr_comul();
        assert_eq!(d.counit_at(0).to_group_ring().unwrap(), x);
        assert_eq!(d.counit_at(1).to_group_ring().unwrap(), x);
    }
}
