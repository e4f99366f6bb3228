//! Arithmetic in the cyclotomic tower `Q(ζ_{p^n})`.
//!
//! Elements are stored over the power basis `1, ζ, …, ζ^{φ-1}` with
//! `φ = p^{n-1}(p-1)`. Every constructor reduces modulo the cyclotomic
//! polynomial `Φ_{p^n}(x) = Σ_{k<p} x^{k p^{n-1}}`, so two elements are equal
//! exactly when their coefficient vectors are.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::Rat;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut b = (base as u128) % m;
    let mut acc = 1u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `g` modulo `m` (`g` a unit).
pub fn multiplicative_order(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 % m {
        x = x * (g % m) % m;
        k += 1;
    }
    k
}

/// The smallest primitive root modulo `p²`, which generates `(Z/p^nZ)^×`
/// for every `n ≥ 1`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let m = p * p;
    let group_order = p * (p - 1);
    let factors = prime_factors(group_order);
    (2..m)
        .find(|&g| g % p != 0 && factors.iter().all(|q| pow_mod(g, group_order / q, m) != 1))
        .ok_or(Error::NotOddPrime(p))
}

/// Parameters of `Q(ζ_{p^n})`: the prime, the level, `p^n`, `φ(p^n)` and
/// the primitive root `π` shared by the whole tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    p: u64,
    n: u32,
    pn: u64,
    phi: usize,
    pi: u64,
}

impl FieldDescriptor {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidLevel("level must be at least 1".into()));
        }
        let pi = primitive_root(p)?;
        let pn = p
            .checked_pow(n)
            .filter(|&v| v <= u32::MAX as u64)
            .ok_or_else(|| Error::InvalidLevel(format!("{p}^{n} is too large")))?;
        let phi = (pn / p * (p - 1)) as usize;
        Ok(FieldDescriptor { p, n, pn, phi, pi })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `p^n`, the order of `ζ`.
    pub fn order(&self) -> u64 {
        self.pn
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn pi(&self) -> u64 {
        self.pi
    }

    /// The same prime at another level.
    pub fn at_level(&self, n: u32) -> Result<Self> {
        FieldDescriptor::new(self.p, n)
    }

    /// `π^e mod p^n`; negative `e` uses the inverse.
    pub fn pi_pow(&self, e: i64) -> u64 {
        let e = e.rem_euclid(self.phi as i64) as u64;
        pow_mod(self.pi, e, self.pn)
    }

    fn same_as(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::Mismatch(format!("Q(ζ_{}^{}) vs Q(ζ_{}^{})", self.p, self.n, other.p, other.n)))
        }
    }

    /// Power-basis expansion of `ζ^e` as `(index, ±1)` pairs.
    pub(crate) fn monomial_terms(&self, e: i64) -> MonomialTerms {
        let e = e.rem_euclid(self.pn as i64) as usize;
        if e < self.phi {
            MonomialTerms::Single(e)
        } else {
            let step = (self.pn / self.p) as usize;
            MonomialTerms::Negated { base: e - self.phi, step, count: self.p as usize - 1 }
        }
    }
}

/// `ζ^e` in the power basis: either a single basis vector or the negated
/// sum `-Σ_{k<p-1} ζ^{base + k·step}` that `Φ_{p^n}` forces.
#[derive(Clone, Copy, Debug)]
pub(crate) enum MonomialTerms {
    Single(usize),
    Negated { base: usize, step: usize, count: usize },
}

impl MonomialTerms {
    pub(crate) fn for_each(self, mut f: impl FnMut(usize, bool)) {
        match self {
            MonomialTerms::Single(i) => f(i, true),
            MonomialTerms::Negated { base, step, count } => {
                for k in 0..count {
                    f(base + k * step, false);
                }
            }
        }
    }
}

/// An element of `Q(ζ_{p^n})` in canonical power-basis form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElt {
    field: FieldDescriptor,
    coeffs: Vec<Rat>,
}

impl CycloElt {
    pub fn zero(field: FieldDescriptor) -> Self {
        CycloElt { field, coeffs: vec![Rat::zero(); field.phi] }
    }

    pub fn one(field: FieldDescriptor) -> Self {
        Self::from_rat(field, Rat::one())
    }

    pub fn from_rat(field: FieldDescriptor, r: Rat) -> Self {
        let mut x = Self::zero(field);
        x.coeffs[0] = r;
        x
    }

    /// `c · ζ^e`.
    pub fn monomial(field: FieldDescriptor, e: i64, c: &Rat) -> Self {
        let mut x = Self::zero(field);
        x.add_monomial(e, c);
        x
    }

    pub fn zeta(field: FieldDescriptor) -> Self {
        Self::monomial(field, 1, &Rat::one())
    }

    /// Builds from an already reduced coefficient vector of length `φ`.
    pub fn from_coeffs(field: FieldDescriptor, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != field.phi {
            return Err(Error::Mismatch(format!("expected {} coefficients, got {}", field.phi, coeffs.len())));
        }
        Ok(CycloElt { field, coeffs })
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(Rat::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// `self += c · ζ^e` with reduction.
    pub(crate) fn add_monomial(&mut self, e: i64, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let neg = -c;
        self.field.monomial_terms(e).for_each(|i, positive| {
            let v = if positive { c } else { &neg };
            self.coeffs[i] += v;
        });
    }

    pub fn scale(&self, c: &Rat) -> Self {
        CycloElt { field: self.field, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.field.same_as(&other.field)?;
        Ok(CycloElt { field: self.field, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.field.same_as(&other.field)?;
        let mut out = Self::zero(self.field);
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out.add_monomial((i + j) as i64, &(a * b));
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse, found by solving `self · x = 1` over the
    /// power basis.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi = self.field.phi;
        // column j of the multiplication-by-self matrix is self·ζ^j
        let mut matrix = vec![vec![Rat::zero(); phi]; phi];
        for j in 0..phi {
            let col = self.mul_monomial(j as i64);
            for (row, v) in matrix.iter_mut().zip(col.coeffs) {
                row[j] = v;
            }
        }
        let mut rhs = vec![Rat::zero(); phi];
        rhs[0] = Rat::one();
        let x = linalg::solve(&matrix, &rhs).ok_or(Error::DivisionByZero)?;
        Ok(CycloElt { field: self.field, coeffs: x })
    }

    /// `self · ζ^e`.
    pub fn mul_monomial(&self, e: i64) -> Self {
        let mut out = Self::zero(self.field);
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            out.add_monomial(i as i64 + e, a);
        }
        out
    }

    /// The Galois automorphism `δ^e : ζ ↦ ζ^{π^e}`.
    pub fn delta_apply(&self, e: i64) -> Self {
        let k = self.field.pi_pow(e) as i64;
        self.substitute(k)
    }

    /// The ring map `ζ ↦ ζ^k` (an automorphism when `p ∤ k`).
    pub fn substitute(&self, k: i64) -> Self {
        let mut out = Self::zero(self.field);
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            out.add_monomial(i as i64 * k, a);
        }
        out
    }

    /// Image under `Q(ζ_{p^m}) → Q(ζ_{p^n})`, `ζ_m ↦ ζ_n^{p^{n-m}}`.
    pub fn embed(&self, n: u32) -> Result<Self> {
        let m = self.field.n;
        if m > n {
            return Err(Error::InvalidLevel(format!("cannot embed level {m} into level {n}")));
        }
        let target = self.field.at_level(n)?;
        let stride = self.field.p.pow(n - m) as i64;
        let mut out = Self::zero(target);
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            out.add_monomial(i as i64 * stride, a);
        }
        Ok(out)
    }

    /// Inverse of [`CycloElt::embed`]: the level-`m` preimage, if any.
    pub fn descend(&self, m: u32) -> Option<Self> {
        let n = self.field.n;
        if m > n || m == 0 {
            return None;
        }
        let stride = self.field.p.pow(n - m) as usize;
        let target = self.field.at_level(m).ok()?;
        // the image of the level-m power basis is {ζ_n^{i·stride} : i < φ_m},
        // all of which are power-basis vectors at level n
        let mut coeffs = vec![Rat::zero(); target.phi];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if i % stride != 0 || i / stride >= target.phi {
                return None;
            }
            coeffs[i / stride] = a.clone();
        }
        Some(CycloElt { field: target, coeffs })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("rationals serialize")
    }

    pub fn from_json(field: FieldDescriptor, value: &serde_json::Value) -> Result<Self> {
        let coeffs: Vec<Rat> = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_coeffs(field, coeffs)
    }
}

/// Reduces a raw coefficient vector indexed by `ζ^0, ζ^1, …` into
/// canonical form.
pub fn reduce(field: FieldDescriptor, raw: &[Rat]) -> CycloElt {
    let mut out = CycloElt::zero(field);
    for (e, c) in raw.iter().enumerate() {
        out.add_monomial(e as i64, c);
    }
    out
}

impl Serialize for CycloElt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl fmt::Debug for CycloElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})ζ")?,
                _ => write!(f, "({c})ζ^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycloElt> for &'a CycloElt {
    type Output = CycloElt;
    fn add(self, rhs: &CycloElt) -> CycloElt {
        self.try_add(rhs).expect("operands in the same field")
    }
}

impl<'a> Sub<&'a CycloElt> for &'a CycloElt {
    type Output = CycloElt;
    fn sub(self, rhs: &CycloElt) -> CycloElt {
        self.try_add(&-rhs).expect("operands in the same field")
    }
}

impl<'a> Mul<&'a CycloElt> for &'a CycloElt {
    type Output = CycloElt;
    fn mul(self, rhs: &CycloElt) -> CycloElt {
        self.try_mul(rhs).expect("operands in the same field")
    }
}

impl Neg for &CycloElt {
    type Output = CycloElt;
    fn neg(self) -> CycloElt {
        self.scale(&-Rat::one())
    }
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

    /// Brute-force order of g in (Z/mZ)^×.
    fn brute_order(g: u64, m: u64) -> u64 {
        (1..=m).find(|&k| pow_mod(g, k, m) == 1).unwrap()
    }

    #[test]
    fn primitive_roots_match_brute_force() {
        assert_eq!(brute_order(2, 9), 6);
        assert_eq!(brute_order(2, 25), 20);
        assert_eq!(brute_order(3, 49), 42);
        assert_eq!(primitive_root(3).unwrap(), 2);
        assert_eq!(primitive_root(5).unwrap(), 2);
        assert_eq!(primitive_root(7).unwrap(), 3);
        // 10 is a primitive root mod 487 but not mod 487², so smallest-mod-p
        // and smallest-mod-p² can differ; check the root generates mod p^3 too
        for p in [3u64, 5, 7, 11, 13] {
            let g = primitive_root(p).unwrap();
            let m = p * p * p;
            assert_eq!(brute_order(g, m), p * p * (p - 1));
        }
    }

    #[test]
    fn primitive_root_rejects_bad_input() {
        assert_eq!(primitive_root(2), Err(Error::NotOddPrime(2)));
        assert_eq!(primitive_root(9), Err(Error::NotOddPrime(9)));
        assert_eq!(primitive_root(1), Err(Error::NotOddPrime(1)));
    }

    #[test]
    fn reduce_examples() {
        let k = f(3, 1);
        assert_eq!(reduce(k, &ints(&[0, 0, 1])).coeffs(), &ints(&[-1, -1])[..]);
        assert_eq!(reduce(k, &ints(&[1, 0, 0])).coeffs(), &ints(&[1, 0])[..]);
        let k9 = f(3, 2);
        let mut raw = ints(&[0; 9]);
        raw[6] = Rat::one();
        assert_eq!(reduce(k9, &raw).coeffs(), &ints(&[-1, 0, 0, -1, 0, 0])[..]);
    }

    #[test]
    fn cyclotomic_polynomial_vanishes() {
        for (p, n) in [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (3, 3)] {
            let k = f(p, n);
            let mut raw = vec![Rat::zero(); k.order() as usize];
            for j in 0..p as usize {
                raw[j * (k.order() / p) as usize] = Rat::one();
            }
            assert!(reduce(k, &raw).is_zero(), "Φ(ζ) != 0 for p={p}, n={n}");
        }
    }

    #[test]
    fn mul_and_inverse_examples() {
        let k = f(3, 1);
        let z = CycloElt::zeta(k);
        assert_eq!((&z * &z).coeffs(), &ints(&[-1, -1])[..]);
        // oracle: solve ζ·(x0 + x1 ζ) = 1 by hand: ζ x0 + x1(-1-ζ) = 1
        // => -x1 = 1, x0 - x1 = 0 => x = -1 - ζ
        assert_eq!(z.inverse().unwrap().coeffs(), &ints(&[-1, -1])[..]);
        assert_eq!(CycloElt::zero(k).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn embed_examples() {
        let k1 = f(3, 1);
        let z1 = CycloElt::zeta(k1);
        let e = z1.embed(2).unwrap();
        assert_eq!(e, CycloElt::monomial(f(3, 2), 3, &Rat::one()));
        let x = &CycloElt::one(k1) + &z1;
        let mut expect = ints(&[0; 6]);
        expect[0] = Rat::one();
        expect[3] = Rat::one();
        assert_eq!(x.embed(2).unwrap().coeffs(), &expect[..]);
        assert_eq!(x.embed(1).unwrap(), x);
        assert!(e.embed(1).is_err());
        assert_eq!(e.descend(1).unwrap(), z1);
        assert!(CycloElt::zeta(f(3, 2)).descend(1).is_none());
    }

    #[test]
    fn delta_examples() {
        let k = f(3, 1);
        let z = CycloElt::zeta(k);
        assert_eq!(z.delta_apply(1).coeffs(), &ints(&[-1, -1])[..]);
        assert_eq!(z.delta_apply(0), z);
        let k9 = f(3, 2);
        assert_eq!(pow_mod(2, 6, 9), 1);
        let z9 = CycloElt::zeta(k9);
        assert_eq!(z9.delta_apply(6), z9);
        let orbit: std::collections::HashSet<_> = (0..k9.phi() as i64).map(|e| z9.delta_apply(e)).collect();
        assert_eq!(orbit.len(), k9.phi());
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = CycloElt::one(f(3, 1));
        let b = CycloElt::one(f(3, 2));
        assert!(a.try_mul(&b).is_err());
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn json_round_trip() {
        let k = f(5, 1);
        let x = CycloElt::from_coeffs(k, vec![Rat::new(1, 2), Rat::zero(), Rat::from_int(-3), Rat::one()]).unwrap();
        let j = x.to_json();
        assert_eq!(j, serde_json::json!(["1/2", "0/1", "-3/1", "1/1"]));
        assert_eq!(CycloElt::from_json(k, &j).unwrap(), x);
        assert!(CycloElt::from_json(f(3, 1), &j).is_err());
    }
}
