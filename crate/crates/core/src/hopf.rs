//! The Hopf algebra `H_n = Q(ζ_n)[N_n]^{Δ_n}` in its idempotent basis
//! `e_{n,i}`, its action on the radical field `Q(w_n)`, `w_n^{p^n} = a`, and
//! the checks that make `Q(w_n)/Q` an `H_n`-Galois extension.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::cyclotomic::{CycloElt, FieldDescriptor};
use crate::error::{Error, Result};
use crate::groupring::GroupRingElt;
use crate::linalg::{Echelon, SparseVec};
use crate::rat::{is_perfect_power, Rat};
use crate::report::Outcome;

/// Radicand used when none is given.
pub fn default_radicand() -> Rat {
    Rat::from_int(2)
}

/// Rejects radicands for which `x^{p^n} - a` is reducible, i.e. `0` and
/// rational `p`-th powers.
pub fn validate_radicand(p: u64, a: &Rat) -> Result<()> {
    if a.is_zero() {
        return Err(Error::InvalidRadicand { radicand: a.to_string(), reason: "zero".into() });
    }
    if is_perfect_power(a, p as u32) {
        return Err(Error::InvalidRadicand {
            radicand: a.to_string(),
            reason: format!("is a {p}-th power of a rational"),
        });
    }
    Ok(())
}

fn check_index(field: FieldDescriptor, i: u64) -> Result<()> {
    if i >= field.order() {
        return Err(Error::IndexOutOfRange { index: i, bound: field.order() });
    }
    Ok(())
}

/// `e_{n,i} = p^{-n} Σ_j ζ_n^{-ij} σ_n^j` in `Q(ζ_n)[N_n]`.
pub fn e_basis(p: u64, n: u32, i: u64) -> Result<GroupRingElt> {
    let field = FieldDescriptor::new(p, n)?;
    check_index(field, i)?;
    Ok(e_basis_in(field, i))
}

pub(crate) fn e_basis_in(field: FieldDescriptor, i: u64) -> GroupRingElt {
    let pn = field.order() as i64;
    let w = Rat::new(1, pn);
    let coeffs = (0..pn).map(|j| CycloElt::monomial(field, -(i as i64) * j, &w)).collect();
    GroupRingElt::from_coeffs(field, field.n(), coeffs).expect("p^n coefficients")
}

/// `ê_{n,i}(σ^k)`: the coefficient functional of `e_{n,i}` evaluated on
/// `σ^k` through the character sum `p^{-n} Σ_j ζ^{(k-i)j}`.
pub fn dual_pairing(i: u64, k: u64, p: u64, n: u32) -> Result<Rat> {
    let field = FieldDescriptor::new(p, n)?;
    check_index(field, i)?;
    check_index(field, k)?;
    let pn = field.order() as i64;
    let mut acc = CycloElt::zero(field);
    for j in 0..pn {
        acc.add_monomial((k as i64 - i as i64) * j, &Rat::one());
    }
    let value = acc.scale(&Rat::new(1, pn));
    value.as_rational().ok_or_else(|| Error::NotInSpan(format!("character sum {value} is not rational")))
}

/// `Δ(e_i) = Σ_{s+t≡i} e_s ⊗ e_t`, as the list of `(s, t)`.
pub fn h_comul(i: u64, p: u64, n: u32) -> Result<Vec<(u64, u64)>> {
    let field = FieldDescriptor::new(p, n)?;
    check_index(field, i)?;
    let pn = field.order();
    Ok((0..pn).map(|s| (s, (i + pn - s) % pn)).collect())
}

/// `ε(e_i) = δ_{i,0}`.
pub fn h_counit(i: u64) -> Rat {
    if i == 0 {
        Rat::one()
    } else {
        Rat::zero()
    }
}

/// `S(e_i) = e_{-i}`.
pub fn h_antipode(i: u64, p: u64, n: u32) -> Result<u64> {
    let field = FieldDescriptor::new(p, n)?;
    check_index(field, i)?;
    Ok((field.order() - i) % field.order())
}

/// An element `Σ_i c_i e_{n,i}` of `H_n`, `c_i ∈ Q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HElt {
    field: FieldDescriptor,
    coords: Vec<Rat>,
}

impl HElt {
    pub fn zero(field: FieldDescriptor) -> Self {
        HElt { field, coords: vec![Rat::zero(); field.order() as usize] }
    }

    pub fn one(field: FieldDescriptor) -> Self {
        HElt { field, coords: vec![Rat::one(); field.order() as usize] }
    }

    /// The idempotent `e_{n,i}`.
    pub fn basis(field: FieldDescriptor, i: u64) -> Self {
        let mut h = Self::zero(field);
        let idx = (i % field.order()) as usize;
        h.coords[idx] = Rat::one();
        h
    }

    pub fn new(field: FieldDescriptor, coords: Vec<Rat>) -> Result<Self> {
        if coords.len() as u64 != field.order() {
            return Err(Error::Mismatch(format!("expected {} coordinates, got {}", field.order(), coords.len())));
        }
        Ok(HElt { field, coords })
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::Mismatch("H_n elements at different levels".into()));
        }
        Ok(HElt { field: self.field, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        HElt { field: self.field, coords: self.coords.iter().map(|x| x * c).collect() }
    }

    /// Product in `H_n`; the `e_i` are orthogonal idempotents.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::Mismatch("H_n elements at different levels".into()));
        }
        Ok(HElt { field: self.field, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).collect() })
    }

    /// `ε(h) = c_0`.
    pub fn counit(&self) -> Rat {
        self.coords[0].clone()
    }

    pub fn antipode(&self) -> Self {
        let pn = self.coords.len();
        let coords = (0..pn).map(|i| self.coords[(pn - i) % pn].clone()).collect();
        HElt { field: self.field, coords }
    }

    /// Expansion `Σ c_i e_{n,i}` inside `Q(ζ_n)[N_n]`.
    pub fn to_group_ring(&self) -> GroupRingElt {
        let field = self.field;
        let pn = field.order() as i64;
        let mut coeffs = vec![CycloElt::zero(field); pn as usize];
        for (i, c) in self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let w = c * &Rat::new(1, pn);
            for (j, slot) in coeffs.iter_mut().enumerate() {
                slot.add_monomial(-(i as i64) * j as i64, &w);
            }
        }
        GroupRingElt::from_coeffs(field, field.n(), coeffs).expect("p^n coefficients")
    }

    /// Inverse of [`HElt::to_group_ring`]: `c_i = Σ_j x_j ζ^{ij}`, which
    /// must be rational for `x` to lie in `H_n`.
    pub fn from_group_ring(x: &GroupRingElt) -> Result<Self> {
        let field = x.field();
        if x.level() != field.n() {
            return Err(Error::Mismatch("H_n lives in Q(ζ_n)[N_n] with equal levels".into()));
        }
        let pn = field.order() as i64;
        let mut coords = Vec::with_capacity(pn as usize);
        for i in 0..pn {
            let mut c = CycloElt::zero(field);
            for (j, xj) in x.coeffs().iter().enumerate().filter(|(_, xj)| !xj.is_zero()) {
                c = &c + &xj.mul_monomial(i * j as i64);
            }
            let r = c
                .as_rational()
                .ok_or_else(|| Error::NotInSpan(format!("coefficient of e_{i} is {c}, not rational")))?;
            coords.push(r);
        }
        Ok(HElt { field, coords })
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(&self.coords).expect("rationals serialize")
    }

    pub fn from_json(field: FieldDescriptor, value: &Value) -> Result<Self> {
        let coords: Vec<Rat> = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(field, coords)
    }
}

impl Serialize for HElt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

impl fmt::Debug for HElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> =
            self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| format!("{c}·e_{i}")).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// An element `Σ_k c_k w^k` of `Q(w_n)`, `w^{p^n} = a`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RadicalElt {
    p: u64,
    n: u32,
    radicand: Rat,
    coords: Vec<Rat>,
}

impl RadicalElt {
    pub fn zero(p: u64, n: u32, radicand: Rat) -> Result<Self> {
        FieldDescriptor::new(p, n)?;
        validate_radicand(p, &radicand)?;
        let pn = p.pow(n) as usize;
        Ok(RadicalElt { p, n, radicand, coords: vec![Rat::zero(); pn] })
    }

    /// `w^k`, reduced by `w^{p^n} = a`.
    pub fn w_pow(p: u64, n: u32, radicand: Rat, k: u64) -> Result<Self> {
        let mut x = Self::zero(p, n, radicand)?;
        let pn = x.coords.len() as u64;
        x.coords[(k % pn) as usize] = x.radicand.pow((k / pn) as u32);
        Ok(x)
    }

    pub fn new(p: u64, n: u32, radicand: Rat, coords: Vec<Rat>) -> Result<Self> {
        let mut x = Self::zero(p, n, radicand)?;
        if coords.len() != x.coords.len() {
            return Err(Error::Mismatch(format!("expected {} coordinates, got {}", x.coords.len(), coords.len())));
        }
        x.coords = coords;
        Ok(x)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn radicand(&self) -> &Rat {
        &self.radicand
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn degree(&self) -> usize {
        self.coords.len()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.n != other.n || self.radicand != other.radicand {
            return Err(Error::Mismatch("radical elements of different fields".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(&other.coords) {
            *a += b;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = self.clone();
        for a in out.coords.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let pn = self.coords.len();
        let mut out = vec![Rat::zero(); pn];
        for (j, x) in self.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (k, y) in other.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let mut v = x * y;
                if j + k >= pn {
                    v *= &self.radicand;
                }
                out[(j + k) % pn] += &v;
            }
        }
        Ok(RadicalElt { coords: out, ..self.clone() })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }
}

impl Serialize for RadicalElt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RadicalElt", 4)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("radicand", &self.radicand)?;
        s.serialize_field("coords", &self.coords)?;
        s.end()
    }
}

impl fmt::Debug for RadicalElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> =
            self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| format!("{c}·w^{k}")).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `h · x` where `e_i(w^k) = δ_{ik} w^k`.
pub fn act(h: &HElt, x: &RadicalElt) -> Result<RadicalElt> {
    if h.field.p() != x.p || h.field.n() != x.n {
        return Err(Error::Mismatch(format!(
            "H at (p={}, n={}) acting on Q(w) at (p={}, n={})",
            h.field.p(),
            h.field.n(),
            x.p,
            x.n
        )));
    }
    let mut out = x.clone();
    for (c, e) in out.coords.iter_mut().zip(&h.coords) {
        *c *= e;
    }
    Ok(out)
}

/// Exhaustive check of `e_i(xy) = Σ_{(e_i)} e_s(x) e_t(y)` over all basis
/// triples `(e_i, w^j, w^k)`, including products that wrap past `w^{p^n}`.
pub fn measuring_check(p: u64, n: u32, a: &Rat) -> Result<Outcome> {
    let field = FieldDescriptor::new(p, n)?;
    validate_radicand(p, a)?;
    let pn = field.order();
    let ws: Vec<RadicalElt> = (0..pn).map(|k| RadicalElt::w_pow(p, n, a.clone(), k)).collect::<Result<_>>()?;
    let es: Vec<HElt> = (0..pn).map(|i| HElt::basis(field, i)).collect();
    let mut checked = 0u64;
    for i in 0..pn {
        let pairs = h_comul(i, p, n)?;
        for j in 0..pn as usize {
            for k in 0..pn as usize {
                let lhs = act(&es[i as usize], &ws[j].try_mul(&ws[k])?)?;
                let mut rhs = RadicalElt::zero(p, n, a.clone())?;
                for &(s, t) in &pairs {
                    let term = act(&es[s as usize], &ws[j])?.try_mul(&act(&es[t as usize], &ws[k])?)?;
                    rhs = rhs.try_add(&term)?;
                }
                checked += 1;
                if lhs != rhs {
                    return Ok(Outcome::fail(
                        json!({ "i": i, "j": j, "k": k, "lhs": lhs.coords, "rhs": rhs.coords }),
                        json!({ "checked": checked }),
                    ));
                }
            }
        }
    }
    Ok(Outcome::pass(json!({ "checked": checked })))
}

/// Q-basis of `{x ∈ Q(w_n) : e_i(x) = ε(e_i) x for all i}`.
pub fn invariant_subspace(p: u64, n: u32) -> Result<Vec<SparseVec>> {
    let field = FieldDescriptor::new(p, n)?;
    let pn = field.order() as usize;
    // the operator e_i - ε(e_i) is diagonal in the w-basis: row k of its
    // matrix has the single entry δ_{ik} - ε(e_i) at column k
    let mut ech = Echelon::new(pn);
    for i in 0..pn as u64 {
        let h = HElt::basis(field, i);
        let eps = h_counit(i);
        for k in 0..pn {
            let v = &h.coords[k] - &eps;
            ech.insert(&SparseVec::from_pairs(vec![(k, v)]));
        }
    }
    Ok(ech.kernel_basis())
}

/// The fixed field of the `H_n`-action is `Q = span{w^0}`.
pub fn fixed_field_check(p: u64, n: u32, a: &Rat) -> Result<Outcome> {
    validate_radicand(p, a)?;
    let basis = invariant_subspace(p, n)?;
    let dim = basis.len();
    let is_q = dim == 1 && basis[0].entries().len() == 1 && basis[0].entries()[0].0 == 0;
    let listed: Vec<Vec<(usize, String)>> =
        basis.iter().map(|v| v.entries().iter().map(|(i, c)| (*i, c.to_string())).collect()).collect();
    Ok(Outcome::check(is_q, json!({ "dimension": dim }), || json!({ "basis": listed })))
}

/// Coefficients `c_i = ζ_n^{i p^{n-m}}` with `Σ c_i e_{n,i} = σ_n^{p^{n-m}}`,
/// together with the verification of that identity and of `c_i ∈ Q(ζ_m)`.
pub fn base_change_sigma(p: u64, n: u32, m: u32) -> Result<(Vec<CycloElt>, bool)> {
    if m == 0 || m >= n {
        return Err(Error::InvalidLevel(format!("need 1 ≤ m < n, got m={m}, n={n}")));
    }
    let field = FieldDescriptor::new(p, n)?;
    let shift = p.pow(n - m) as i64;
    let coeffs: Vec<CycloElt> =
        (0..field.order() as i64).map(|i| CycloElt::monomial(field, i * shift, &Rat::one())).collect();
    let mut sum = GroupRingElt::zero_at(field);
    for (i, c) in coeffs.iter().enumerate() {
        sum = &sum + &e_basis_in(field, i as u64).scale(c);
    }
    let identity_holds = sum == GroupRingElt::sigma_pow(field, n, shift);
    let descends = coeffs.iter().all(|c| c.descend(m).is_some_and(|d| d.embed(n).as_ref() == Ok(c)));
    Ok((coeffs, identity_holds && descends))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, n: u32) -> FieldDescriptor {
        FieldDescriptor::new(p, n).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn e_basis_examples() {
        let e0 = e_basis(3, 1, 0).unwrap();
        for c in e0.coeffs() {
            assert_eq!(c.as_rational(), Some(Rat::new(1, 3)));
        }
        let e1 = e_basis(3, 1, 1).unwrap();
        let t = Rat::new(1, 3);
        assert_eq!(e1.coeffs()[0].coeffs(), &[t.clone(), Rat::zero()][..]);
        assert_eq!(e1.coeffs()[1].coeffs(), &[-&t, -&t][..]);
        assert_eq!(e1.coeffs()[2].coeffs(), &[Rat::zero(), t][..]);
        assert!(e_basis(3, 1, 3).is_err());
    }

    #[test]
    fn partition_of_unity_and_orthogonality() {
        for (p, n) in [(3, 1), (3, 2), (5, 1)] {
            let k = f(p, n);
            let es: Vec<_> = (0..k.order()).map(|i| e_basis_in(k, i)).collect();
            let sum = es.iter().fold(GroupRingElt::zero_at(k), |acc, e| &acc + e);
            assert_eq!(sum, GroupRingElt::one(k, n));
            for (i, ei) in es.iter().enumerate() {
                for (j, ej) in es.iter().enumerate() {
                    let prod = ei * ej;
                    if i == j {
                        assert_eq!(&prod, ei);
                    } else {
                        assert!(prod.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_is_identity() {
        assert_eq!(dual_pairing(2, 2, 3, 1).unwrap(), Rat::one());
        assert_eq!(dual_pairing(0, 1, 3, 1).unwrap(), Rat::zero());
        for i in 0..9 {
            for k in 0..9 {
                let expect = if i == k { Rat::one() } else { Rat::zero() };
                assert_eq!(dual_pairing(i, k, 3, 2).unwrap(), expect);
            }
        }
    }

    #[test]
    fn structure_maps() {
        let mut pairs = h_comul(0, 3, 1).unwrap();
        pairs.sort();
        assert_eq!(pairs, vec![(0, 0), (1, 2), (2, 1)]);
        assert_eq!(h_counit(0), Rat::one());
        assert_eq!(h_counit(1), Rat::zero());
        assert_eq!(h_antipode(1, 3, 2).unwrap(), 8);
    }

    #[test]
    fn action_examples() {
        let k = f(3, 1);
        let a = Rat::from_int(2);
        let w = RadicalElt::w_pow(3, 1, a.clone(), 1).unwrap();
        let w2 = RadicalElt::w_pow(3, 1, a.clone(), 2).unwrap();
        let e1 = HElt::basis(k, 1);
        assert_eq!(act(&e1, &w).unwrap(), w);
        assert!(act(&e1, &w2).unwrap().is_zero());
        let x = RadicalElt::new(3, 1, a, ints(&[4, -1, 7])).unwrap();
        assert_eq!(act(&HElt::one(k), &x).unwrap(), x);
    }

    #[test]
    fn radicand_validation() {
        assert!(validate_radicand(3, &Rat::from_int(8)).is_err());
        assert!(validate_radicand(3, &Rat::new(-1, 27)).is_err());
        assert!(validate_radicand(3, &Rat::zero()).is_err());
        assert!(validate_radicand(3, &Rat::from_int(4)).is_ok());
        assert!(validate_radicand(5, &Rat::from_int(2)).is_ok());
    }

    #[test]
    fn wrap_around_multiplication() {
        let a = Rat::from_int(2);
        let w2 = RadicalElt::w_pow(3, 1, a.clone(), 2).unwrap();
        let w4 = w2.try_mul(&w2).unwrap();
        assert_eq!(w4, RadicalElt::w_pow(3, 1, a.clone(), 4).unwrap());
        assert_eq!(w4.coords(), &[Rat::zero(), Rat::from_int(2), Rat::zero()][..]);
    }

    #[test]
    fn checks_pass_small() {
        let a = default_radicand();
        assert!(measuring_check(3, 1, &a).unwrap().passed);
        assert!(fixed_field_check(3, 1, &a).unwrap().passed);
        assert!(fixed_field_check(5, 1, &a).unwrap().passed);
    }

    #[test]
    fn group_ring_round_trip() {
        let k = f(3, 2);
        let h = HElt::new(k, (0..9).map(|i| Rat::new(i - 4, 3)).collect()).unwrap();
        let x = h.to_group_ring();
        assert_eq!(HElt::from_group_ring(&x).unwrap(), h);
        let not_h = GroupRingElt::sigma_pow(k, 2, 1).scale(&CycloElt::zeta(k));
        assert!(HElt::from_group_ring(&not_h).is_err());
    }

    #[test]
    fn base_change_examples() {
        let (c, ok) = base_change_sigma(3, 2, 1).unwrap();
        assert!(ok);
        assert_eq!(c[1], CycloElt::monomial(f(3, 2), 3, &Rat::one()));
        assert!(base_change_sigma(3, 3, 2).unwrap().1);
        assert!(base_change_sigma(3, 2, 2).is_err());
    }
}
