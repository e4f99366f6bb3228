//! The Galois closure `K = Q(ζ_n, w_n)` of the radical extension, the groups
//! `Γ_{n,r} = ⟨σ_n, β⟩ = Gal(K/Q(ζ_r))`, the normal complements `N_{n,i}` to
//! `⟨β_n⟩` in `Γ_{n,1}`, their fixed fields `E_{n,i}` and the Hopf algebras
//! `H_{n,i} = K[N_{n,i}]^{Γ_{n,1}} = E_{n,i}[N_{n,i}]^{⟨β_n⟩}`.
//!
//! `σ(w) = ζw`, `σ(ζ) = ζ`; `β(w) = w`, `β(ζ) = ζ^c` with `c = π^{(p-1)p^{r-1}}`
//! (`c = π` when `r = 0`, so that `β = δ` and the base is `Q`). On the
//! monomial `ζ^x w^y` the element `σ^s β^b` acts by `(x, y) ↦ (x c^b + s y, y)`.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::cyclotomic::{pow_mod, CycloElt, FieldDescriptor};
use crate::error::{Error, Result};
use crate::hopf::{act, validate_radicand, HElt, RadicalElt};
use crate::linalg::{rank, Echelon, SparseVec};
use crate::perm::Perm;
use crate::rat::Rat;
use crate::report::Outcome;

/// `Γ_{n,r} = Gal(Q(ζ_n, w_n)/Q(ζ_r))` for `0 ≤ r ≤ n`, `ζ_0 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VariantGroup {
    field: FieldDescriptor,
    r: u32,
    c: u64,
    beta_order: u64,
}

impl VariantGroup {
    pub fn new(p: u64, n: u32, r: u32) -> Result<Self> {
        let field = FieldDescriptor::new(p, n)?;
        if r > n {
            return Err(Error::InvalidLevel(format!("base level r = {r} exceeds n = {n}")));
        }
        let step = if r == 0 { 1 } else { (p - 1) * p.pow(r - 1) };
        let c = pow_mod(field.pi(), step, field.order());
        let beta_order = field.phi() as u64 / step;
        Ok(VariantGroup { field, r, c, beta_order })
    }

    /// `Γ_{n,1}`.
    pub fn gamma_n1(p: u64, n: u32) -> Result<Self> {
        Self::new(p, n, 1)
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn n(&self) -> u32 {
        self.field.n()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `β(ζ) = ζ^c`.
    pub fn beta_multiplier(&self) -> u64 {
        self.c
    }

    pub fn beta_order(&self) -> u64 {
        self.beta_order
    }

    pub fn order(&self) -> u64 {
        self.field.order() * self.beta_order
    }

    /// `[Q(ζ_r) : Q]`.
    pub fn base_degree(&self) -> usize {
        if self.r == 0 {
            1
        } else {
            (self.p().pow(self.r - 1) * (self.p() - 1)) as usize
        }
    }

    pub fn elt(&self, s: i64, b: i64) -> GammaElt {
        GammaElt {
            group: *self,
            s: s.rem_euclid(self.field.order() as i64) as u64,
            b: b.rem_euclid(self.beta_order as i64) as u64,
        }
    }

    pub fn identity(&self) -> GammaElt {
        self.elt(0, 0)
    }

    pub fn sigma(&self) -> GammaElt {
        self.elt(1, 0)
    }

    pub fn beta(&self) -> GammaElt {
        self.elt(0, 1)
    }

    /// Elements in `(s, b)` order.
    pub fn elements(&self) -> Vec<GammaElt> {
        let pn = self.field.order() as i64;
        (0..pn).flat_map(|s| (0..self.beta_order as i64).map(move |b| (s, b))).map(|(s, b)| self.elt(s, b)).collect()
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[GammaElt]) -> Vec<GammaElt> {
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(self.identity());
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.mul(g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Points `(x, y) ∈ Z/p^n × Z/p^n`, indexed `x·p^n + y`, on which `Γ` acts
    /// through the exponents of `ζ^x w^y`.
    pub fn degree(&self) -> usize {
        (self.field.order() * self.field.order()) as usize
    }
}

/// `σ^s β^b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaElt {
    group: VariantGroup,
    s: u64,
    b: u64,
}

impl PartialOrd for VariantGroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VariantGroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.p(), self.n(), self.r).cmp(&(other.p(), other.n(), other.r))
    }
}

impl GammaElt {
    pub fn group(&self) -> VariantGroup {
        self.group
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    fn c_pow(&self, b: u64) -> u64 {
        pow_mod(self.group.c, b, self.group.field.order())
    }

    /// `(σ^s β^b)(σ^t β^d) = σ^{s + c^b t} β^{b + d}`.
    pub fn mul(&self, other: &GammaElt) -> GammaElt {
        let pn = self.group.field.order();
        let s = (self.s + self.c_pow(self.b) * other.s) % pn;
        let b = (self.b + other.b) % self.group.beta_order;
        GammaElt { group: self.group, s, b }
    }

    pub fn inverse(&self) -> GammaElt {
        let pn = self.group.field.order();
        let b = (self.group.beta_order - self.b) % self.group.beta_order;
        // σ^s β^b · σ^t β^{-b} = 1 needs s + c^b t ≡ 0
        let cb_inv = pow_mod(self.group.c, (self.group.beta_order - self.b) % self.group.beta_order, pn);
        let t = (pn - self.s % pn) % pn * cb_inv % pn;
        GammaElt { group: self.group, s: t, b }
    }

    pub fn pow(&self, k: u64) -> GammaElt {
        let mut acc = self.group.identity();
        let mut base = *self;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn order(&self) -> u64 {
        let id = self.group.identity();
        let mut x = *self;
        let mut k = 1;
        while x != id {
            x = x.mul(self);
            k += 1;
        }
        k
    }

    pub fn conjugate_by(&self, g: &GammaElt) -> GammaElt {
        g.mul(self).mul(&g.inverse())
    }

    /// `(x, y) ↦ (x c^b + s y, y)` on exponent pairs.
    pub fn map_point(&self, x: u64, y: u64) -> (u64, u64) {
        let pn = self.group.field.order();
        ((x * self.c_pow(self.b) + self.s * y) % pn, y)
    }

    /// The permutation of the `p^{2n}` points `x·p^n + y`.
    pub fn permutation(&self) -> Perm {
        let pn = self.group.field.order();
        let mut out = vec![0; (pn * pn) as usize];
        for x in 0..pn {
            for y in 0..pn {
                let (x2, y2) = self.map_point(x, y);
                out[(x * pn + y) as usize] = (x2 * pn + y2) as usize;
            }
        }
        Perm::new(out).expect("the action is a bijection")
    }
}

impl fmt::Debug for GammaElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ^{}β^{}", self.s, self.b)
    }
}

impl Serialize for GammaElt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("GammaElt", 2)?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("b", &self.b)?;
        st.end()
    }
}

/// `Σ c_{x,y} ζ^x w^y ∈ Q(ζ_n, w_n)`, stored as one `Q(ζ_n)` coefficient per
/// power of `w`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigFieldElt {
    field: FieldDescriptor,
    radicand: Rat,
    coeffs: Vec<CycloElt>,
}

impl BigFieldElt {
    pub fn zero(field: FieldDescriptor, radicand: Rat) -> Self {
        BigFieldElt { field, radicand, coeffs: vec![CycloElt::zero(field); field.order() as usize] }
    }

    /// `ζ^x w^y` with `w^{p^n} = a` applied to `y ≥ p^n`.
    pub fn monomial(field: FieldDescriptor, radicand: Rat, x: i64, y: u64) -> Self {
        let mut out = Self::zero(field, radicand);
        let pn = field.order();
        let scale = out.radicand.pow((y / pn) as u32);
        out.coeffs[(y % pn) as usize] = CycloElt::monomial(field, x, &scale);
        out
    }

    pub fn from_coeffs(field: FieldDescriptor, radicand: Rat, coeffs: Vec<CycloElt>) -> Result<Self> {
        if coeffs.len() as u64 != field.order() || coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::Mismatch("coefficients must be p^n elements of Q(ζ_n)".into()));
        }
        Ok(BigFieldElt { field, radicand, coeffs })
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn radicand(&self) -> &Rat {
        &self.radicand
    }

    /// Coefficient of `w^y`.
    pub fn coeffs(&self) -> &[CycloElt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycloElt::is_zero)
    }

    pub fn q_dimension(field: FieldDescriptor) -> usize {
        field.phi() * field.order() as usize
    }

    /// Q-coordinates, index `y·φ + x`.
    pub fn to_sparse(&self) -> SparseVec {
        let phi = self.field.phi();
        let mut pairs = Vec::new();
        for (y, c) in self.coeffs.iter().enumerate() {
            for (x, v) in c.coeffs().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                pairs.push((y * phi + x, v.clone()));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn from_sparse(field: FieldDescriptor, radicand: Rat, v: &SparseVec) -> Self {
        let phi = field.phi();
        let mut dense = vec![vec![Rat::zero(); phi]; field.order() as usize];
        for (i, val) in v.entries() {
            dense[i / phi][i % phi] = val.clone();
        }
        let coeffs = dense.into_iter().map(|d| CycloElt::from_coeffs(field, d).expect("length φ")).collect();
        BigFieldElt { field, radicand, coeffs }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field || self.radicand != other.radicand {
            return Err(Error::Mismatch("elements of different fields".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(BigFieldElt { coeffs, ..self.clone() })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        BigFieldElt { coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(), ..self.clone() }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let pn = self.coeffs.len();
        let mut out = Self::zero(self.field, self.radicand.clone());
        for (j, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (k, y) in other.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let mut v = x * y;
                if j + k >= pn {
                    v = v.scale(&self.radicand);
                }
                out.coeffs[(j + k) % pn] = &out.coeffs[(j + k) % pn] + &v;
            }
        }
        Ok(out)
    }

    /// Image under `Q(ζ_{n-1}, w_{n-1}) → Q(ζ_n, w_n)`, `ζ ↦ ζ^p`, `w ↦ w^p`.
    pub fn embed_up(&self) -> Result<Self> {
        let upper = self.field.at_level(self.field.n() + 1)?;
        let p = self.field.p() as usize;
        let mut out = Self::zero(upper, self.radicand.clone());
        for (y, c) in self.coeffs.iter().enumerate() {
            out.coeffs[y * p] = c.embed(upper.n())?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("rationals serialize")
    }
}

impl Serialize for BigFieldElt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        // rows indexed by the ζ-exponent, columns by the w-exponent
        let rows: Vec<Vec<&Rat>> =
            (0..self.field.phi()).map(|x| self.coeffs.iter().map(|c| &c.coeffs()[x]).collect()).collect();
        let mut st = serializer.serialize_struct("BigFieldElt", 4)?;
        st.serialize_field("p", &self.field.p())?;
        st.serialize_field("n", &self.field.n())?;
        st.serialize_field("radicand", &self.radicand)?;
        st.serialize_field("coeffs", &rows)?;
        st.end()
    }
}

impl fmt::Debug for BigFieldElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(y, c)| format!("({c})w^{y}")).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `g(x)`.
pub fn gamma_act(g: &GammaElt, x: &BigFieldElt) -> Result<BigFieldElt> {
    if g.group.field != x.field {
        return Err(Error::Mismatch("group and field at different levels".into()));
    }
    let cb = g.c_pow(g.b) as i64;
    let coeffs =
        x.coeffs.iter().enumerate().map(|(y, c)| c.substitute(cb).mul_monomial(g.s as i64 * y as i64)).collect();
    Ok(BigFieldElt { coeffs, ..x.clone() })
}

/// `g` on the basis vector `ζ^x w^y`, as Q-coordinates.
fn gamma_on_basis(g: &GammaElt, x: usize, y: usize) -> Vec<(usize, Rat)> {
    let field = g.group.field;
    let phi = field.phi();
    let (x2, _) = g.map_point(x as u64, y as u64);
    let mut out = Vec::with_capacity(field.p() as usize);
    field.monomial_terms(x2 as i64).for_each(|i, positive| {
        out.push((y * phi + i, if positive { Rat::one() } else { -Rat::one() }));
    });
    out
}

/// Rows of `g - 1` on `Q(ζ_n, w_n)`; the matrix is block diagonal in `y`.
fn minus_identity_rows(g: &GammaElt) -> Vec<SparseVec> {
    let field = g.group.field;
    let phi = field.phi();
    let dim = BigFieldElt::q_dimension(field);
    let mut rows: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); dim];
    for y in 0..field.order() as usize {
        for x in 0..phi {
            let col = y * phi + x;
            for (target, v) in gamma_on_basis(g, x, y) {
                rows[target].push((col, v));
            }
            rows[col].push((col, -Rat::one()));
        }
    }
    rows.into_iter().map(SparseVec::from_pairs).collect()
}

/// Q-basis of the subfield of `Q(ζ_n, w_n)` fixed by the subgroup generated
/// by `gens`.
pub fn fixed_field(group: &VariantGroup, gens: &[GammaElt], radicand: &Rat) -> Result<Vec<BigFieldElt>> {
    let field = group.field;
    let mut ech = Echelon::new(BigFieldElt::q_dimension(field));
    for g in gens {
        if g.group != *group {
            return Err(Error::NotSubgroup(format!("{g:?} is not in Γ_{{{},{}}}", group.n(), group.r)));
        }
        for row in minus_identity_rows(g) {
            ech.insert(&row);
        }
    }
    Ok(ech.kernel_basis().iter().map(|v| BigFieldElt::from_sparse(field, radicand.clone(), v)).collect())
}

/// Generators of the normal complements to `⟨β⟩` in `Γ_{n,1}`:
/// `N_{n,0} = ⟨σ⟩` and `N_{n,i} = ⟨σ^i β^{p^{n-2}}⟩` for `1 ≤ i < p`.
/// Each is verified to be cyclic of order `p^n`, to meet `⟨β⟩` trivially,
/// to fill `Γ_{n,1}` with it and to be normal; the `p` subgroups are
/// verified pairwise distinct.
pub fn normal_complements(p: u64, n: u32) -> Result<Vec<GammaElt>> {
    if n < 2 {
        return Err(Error::InvalidLevel(format!("normal complements need n ≥ 2, got {n}")));
    }
    let g = VariantGroup::gamma_n1(p, n)?;
    let gens: Vec<GammaElt> = (0..p).map(|i| complement_generator(&g, i)).collect();
    let beta = g.closure(&[g.beta()]);
    let mut subgroups = Vec::new();
    for (i, t) in gens.iter().enumerate() {
        let sub = g.closure(&[*t]);
        let pn = g.field.order();
        let cyclic = t.order() == pn && sub.len() as u64 == pn;
        let trivial_meet = sub.iter().filter(|x| beta.contains(x)).count() == 1;
        let fills = sub.len() as u64 * beta.len() as u64 == g.order() && trivial_meet;
        let normal = [g.sigma(), g.beta()].iter().all(|h| sub.contains(&t.conjugate_by(h)));
        if !(cyclic && trivial_meet && fills && normal) {
            return Err(Error::NotSubgroup(format!(
                "N_{{{n},{i}}} fails: cyclic={cyclic} trivial_meet={trivial_meet} fills={fills} normal={normal}"
            )));
        }
        subgroups.push(sub);
    }
    for a in 0..subgroups.len() {
        for b in a + 1..subgroups.len() {
            if subgroups[a] == subgroups[b] {
                return Err(Error::NotSubgroup(format!("N_{{{n},{a}}} = N_{{{n},{b}}}")));
            }
        }
    }
    Ok(gens)
}

fn complement_generator(g: &VariantGroup, i: u64) -> GammaElt {
    if i == 0 {
        g.sigma()
    } else {
        g.elt(i as i64, g.p().pow(g.n() - 2) as i64)
    }
}

/// `Σ_k c_k τ^k ∈ K[⟨τ⟩]`, `c_k ∈ Q(ζ_n, w_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedElt {
    pub coeffs: Vec<BigFieldElt>,
}

/// The Hopf algebra `K[N]^Γ` for a cyclic normal subgroup `N = ⟨τ⟩` of
/// `Γ = Γ_{n,r}` acting on `K` and on `N` by conjugation.
#[derive(Clone, Debug)]
pub struct VariantHopf {
    group: VariantGroup,
    tau: GammaElt,
    powers: Vec<GammaElt>,
    basis: Vec<TwistedElt>,
    radicand: Rat,
}

impl VariantHopf {
    pub fn group(&self) -> VariantGroup {
        self.group
    }

    pub fn generator(&self) -> GammaElt {
        self.tau
    }

    pub fn basis(&self) -> &[TwistedElt] {
        &self.basis
    }

    pub fn q_dimension(&self) -> usize {
        self.basis.len()
    }

    /// Rank over the base `Q(ζ_r)`.
    pub fn base_rank(&self) -> usize {
        self.basis.len() / self.group.base_degree()
    }

    /// `h(x) = Σ c_k τ^k(x)`.
    pub fn act(&self, h: &TwistedElt, x: &BigFieldElt) -> Result<BigFieldElt> {
        let mut out = BigFieldElt::zero(self.group.field, x.radicand.clone());
        for (c, t) in h.coeffs.iter().zip(&self.powers).filter(|(c, _)| !c.is_zero()) {
            out = out.try_add(&c.try_mul(&gamma_act(t, x)?)?)?;
        }
        Ok(out)
    }

    /// `ε(h) = Σ c_k`.
    pub fn counit(&self, h: &TwistedElt) -> Result<BigFieldElt> {
        let mut out = BigFieldElt::zero(self.group.field, self.radicand.clone());
        for c in &h.coeffs {
            out = out.try_add(c)?;
        }
        Ok(out)
    }
}

/// `K[⟨τ⟩]^Γ` by exact elimination on the `φ(p^n) p^{2n}`-dimensional space.
pub fn twisted_fixed_ring(group: &VariantGroup, tau: GammaElt, radicand: &Rat) -> Result<VariantHopf> {
    let field = group.field;
    let pn = field.order() as usize;
    let phi = field.phi();
    let powers: Vec<GammaElt> = (0..pn as u64).map(|k| tau.pow(k)).collect();
    if tau.order() != pn as u64 {
        return Err(Error::NotSubgroup(format!("{tau:?} does not have order p^n")));
    }
    let block = pn * phi;
    let dim = pn * block;
    let mut ech = Echelon::new(dim);
    for g in [group.sigma(), group.beta()] {
        // conjugation by g sends τ^k to τ^{μk}
        let conj = tau.conjugate_by(&g);
        let mu = powers
            .iter()
            .position(|t| *t == conj)
            .ok_or_else(|| Error::NotSubgroup(format!("⟨{tau:?}⟩ is not normalized by {g:?}")))?;
        let mut rows: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); dim];
        for k in 0..pn {
            let k2 = k * mu % pn;
            for y in 0..pn {
                for x in 0..phi {
                    let col = k * block + y * phi + x;
                    for (target, v) in gamma_on_basis(&g, x, y) {
                        rows[k2 * block + target].push((col, v));
                    }
                    rows[col].push((col, -Rat::one()));
                }
            }
        }
        for row in rows {
            ech.insert(&SparseVec::from_pairs(row));
        }
    }
    let basis = ech
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let mut parts: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); pn];
            for (i, val) in v.entries() {
                parts[i / block].push((i % block, val.clone()));
            }
            TwistedElt {
                coeffs: parts
                    .into_iter()
                    .map(|p| BigFieldElt::from_sparse(field, radicand.clone(), &SparseVec::from_pairs(p)))
                    .collect(),
            }
        })
        .collect();
    Ok(VariantHopf { group: *group, tau, powers, basis, radicand: radicand.clone() })
}

/// `H_{n,i} = E_{n,i}[N_{n,i}]^{⟨β_n⟩}` over `Q(ζ_1)`.
pub fn h_variant(p: u64, n: u32, i: u64, radicand: &Rat) -> Result<VariantHopf> {
    if n < 2 {
        return Err(Error::InvalidLevel(format!("H_{{n,i}} needs n ≥ 2, got {n}")));
    }
    if i >= p {
        return Err(Error::IndexOutOfRange { index: i, bound: p });
    }
    let g = VariantGroup::gamma_n1(p, n)?;
    twisted_fixed_ring(&g, complement_generator(&g, i), radicand)
}

/// Basis of `Q(ζ_r, w_n) ⊆ Q(ζ_n, w_n)`: `ζ^{x p^{n-r}} w^y`, `x < φ(p^r)`.
fn base_subfield_basis(group: &VariantGroup) -> Vec<(usize, usize)> {
    let field = group.field;
    let stride = if group.r == 0 { 0 } else { group.p().pow(group.n() - group.r) as usize };
    (0..field.order() as usize).flat_map(|y| (0..group.base_degree()).map(move |x| (x * stride, y))).collect()
}

fn subfield_coords(v: &BigFieldElt, basis: &[(usize, usize)]) -> Option<Vec<Rat>> {
    let phi = v.field.phi();
    let sparse = v.to_sparse();
    let index: std::collections::HashMap<usize, usize> =
        basis.iter().enumerate().map(|(k, &(x, y))| (y * phi + x, k)).collect();
    let mut out = vec![Rat::zero(); basis.len()];
    for (i, val) in sparse.entries() {
        out[*index.get(i)?] = val.clone();
    }
    Some(out)
}

/// Matrices over `Q` of the operators `x ↦ h(x)` restricted to
/// `Q(ζ_r, w_n)`, one per basis element `h`, with columns indexed by the
/// basis of that subfield.
fn action_matrices(hopf: &VariantHopf, sub: &[(usize, usize)]) -> Result<Vec<Vec<Vec<Rat>>>> {
    let field = hopf.group.field;
    let vecs: Vec<BigFieldElt> =
        sub.iter().map(|&(x, y)| BigFieldElt::monomial(field, hopf.radicand.clone(), x as i64, y as u64)).collect();
    hopf.basis
        .iter()
        .map(|h| {
            vecs.iter()
                .map(|v| {
                    let img = hopf.act(h, v)?;
                    subfield_coords(&img, sub)
                        .ok_or_else(|| Error::NotInSpan("H does not preserve the base field extension".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

/// The Hopf–Galois criterion for `Q(ζ_r, w_n)/Q(ζ_r)` under `K[N]^Γ`: the
/// operators `y·h` span `End_{Q(ζ_r)}` (Q-rank `φ(p^r) p^{2n}`) and the
/// invariants are exactly `Q(ζ_r)`.
pub fn hopf_galois_check(hopf: &VariantHopf) -> Result<Outcome> {
    let group = hopf.group;
    let field = group.field;
    let sub = base_subfield_basis(&group);
    let d = sub.len();
    let mats = action_matrices(hopf, &sub)?;
    let scalars: Vec<BigFieldElt> =
        sub.iter().map(|&(x, y)| BigFieldElt::monomial(field, hopf.radicand.clone(), x as i64, y as u64)).collect();

    // multiplication by each subfield basis element, as a d×d matrix
    let mult: Vec<Vec<Vec<Rat>>> = scalars
        .iter()
        .map(|s| {
            scalars
                .iter()
                .map(|v| subfield_coords(&s.try_mul(v)?, &sub).ok_or_else(|| Error::NotInSpan("product".into())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut ops = Vec::with_capacity(mats.len() * d);
    for m in &mult {
        for h in &mats {
            // column k of (s∘h) is m applied to column k of h
            let mut flat = Vec::new();
            for (k, col) in h.iter().enumerate() {
                for (row, _) in col.iter().enumerate() {
                    let v: Rat = (0..d).map(|t| &m[t][row] * &col[t]).sum();
                    if !v.is_zero() {
                        flat.push((row * d + k, v));
                    }
                }
            }
            ops.push(SparseVec::from_pairs(flat));
        }
    }
    let r = rank(d * d, &ops);
    let expected = group.base_degree() * field.order() as usize * field.order() as usize;

    // Q(ζ_r)-linearity: every h commutes with the base scalars
    let base_scalars: Vec<usize> = (0..group.base_degree()).collect();
    let mut linear = true;
    for h in &mats {
        for &b in &base_scalars {
            let m = &mult[b];
            for k in 0..d {
                for row in 0..d {
                    let hm: Rat = (0..d).map(|t| &h[t][row] * &m[k][t]).sum();
                    let mh: Rat = (0..d).map(|t| &m[t][row] * &h[k][t]).sum();
                    linear &= hm == mh;
                }
            }
        }
    }

    // invariants: h(x) = ε(h) x for all h
    let mut ech = Echelon::new(d);
    for (hm, h) in mats.iter().zip(&hopf.basis) {
        let eps = hopf.counit(h)?;
        let eps_mat: Vec<Vec<Rat>> = scalars
            .iter()
            .map(|v| subfield_coords(&eps.try_mul(v)?, &sub).ok_or_else(|| Error::NotInSpan("counit".into())))
            .collect::<Result<_>>()?;
        for row in 0..d {
            let entries = (0..d).map(|k| (k, &hm[k][row] - &eps_mat[k][row])).collect();
            ech.insert(&SparseVec::from_pairs(entries));
        }
    }
    let invariants = ech.kernel_basis();
    let invariant_dim = invariants.len();
    let invariants_are_base = invariant_dim == group.base_degree()
        && invariants.iter().all(|v| v.entries().iter().all(|(i, _)| sub[*i].1 == 0));

    let data = json!({
        "q_dimension": hopf.q_dimension(),
        "base_rank": hopf.base_rank(),
        "operator_rank": r,
        "expected_rank": expected,
        "base_linear": linear,
        "invariant_dimension": invariant_dim,
    });
    let ok = r == expected && linear && invariants_are_base;
    Ok(Outcome::check(ok, data.clone(), || data))
}

/// Span of the action of `hopf` on `Q(ζ_r, w_n)`, as flattened matrices.
pub fn action_image(hopf: &VariantHopf) -> Result<Vec<SparseVec>> {
    let sub = base_subfield_basis(&hopf.group);
    let d = sub.len();
    let mats = action_matrices(hopf, &sub)?;
    Ok(mats
        .iter()
        .map(|h| {
            SparseVec::from_pairs(
                h.iter()
                    .enumerate()
                    .flat_map(|(k, col)| col.iter().enumerate().map(move |(row, v)| (row * d + k, v.clone())))
                    .collect(),
            )
        })
        .collect())
}

/// `variant_action_check` for `H_{n,i}` acting on `Q(w_n)` over `Q(ζ_1)`.
pub fn variant_action_check(p: u64, n: u32, i: u64, a: &Rat) -> Result<Outcome> {
    validate_radicand(p, a)?;
    let hopf = h_variant(p, n, i, a)?;
    hopf_galois_check(&hopf)
}

/// `K[⟨σ⟩]^{Gal(K/Q)}` acting on `Q(w_n)` spans the same operators as `H_n`.
pub fn h_n_crosscheck(p: u64, n: u32, a: &Rat) -> Result<Outcome> {
    validate_radicand(p, a)?;
    let g = VariantGroup::new(p, n, 0)?;
    let twisted = twisted_fixed_ring(&g, g.sigma(), a)?;
    let image = action_image(&twisted)?;
    let field = g.field;
    let d = field.order() as usize;
    let reference: Vec<SparseVec> = (0..field.order())
        .map(|i| {
            let h = HElt::basis(field, i);
            let mut pairs = Vec::new();
            for k in 0..field.order() {
                let img = act(&h, &RadicalElt::w_pow(p, n, a.clone(), k)?)?;
                for (row, v) in img.coords().iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    pairs.push((row * d + k as usize, v.clone()));
                }
            }
            Ok(SparseVec::from_pairs(pairs))
        })
        .collect::<Result<_>>()?;
    let (ra, rb) = (rank(d * d, &image), rank(d * d, &reference));
    let mut union = image.clone();
    union.extend(reference.iter().cloned());
    let ru = rank(d * d, &union);
    let data = json!({ "q_dimension": twisted.q_dimension(), "rank": ra, "h_n_rank": rb, "union_rank": ru });
    Ok(Outcome::check(ra == d && rb == d && ru == d, data.clone(), || data))
}

/// Containment `E_{n-1,i} ⊆ E_{n,j}` for all `i, j < p`, row-major in `i`.
pub fn containment_matrix(p: u64, n: u32, a: &Rat) -> Result<Vec<Vec<bool>>> {
    (0..p).map(|i| (0..p).map(|j| fixed_field_contained(p, n, i, j, a)).collect()).collect()
}

/// `ν_{n,n-1}` on `N_{n,i}`: `(σ_n^i β_n^{p^{n-2}})^k ↦ (σ_{n-1}^i β_{n-1}^{p^{n-3}})^k`
/// (`σ_n^k ↦ σ_{n-1}^k` for `i = 0`).
pub fn variant_nu(n: u32, i: u64, x: &GammaElt) -> Result<GammaElt> {
    if n < 3 {
        return Err(Error::InvalidLevel(format!("the inverse system starts at n = 3, got {n}")));
    }
    let upper = x.group;
    if upper.n() != n || upper.r != 1 {
        return Err(Error::Mismatch(format!("element of Γ_{{{},{}}}, expected Γ_{{{n},1}}", upper.n(), upper.r)));
    }
    let p = upper.p();
    if i >= p {
        return Err(Error::IndexOutOfRange { index: i, bound: p });
    }
    let lower = VariantGroup::gamma_n1(p, n - 1)?;
    let tau = complement_generator(&upper, i);
    let k = (0..upper.field.order())
        .find(|&k| tau.pow(k) == *x)
        .ok_or_else(|| Error::NotSubgroup(format!("{x:?} is not in N_{{{n},{i}}}")))?;
    Ok(complement_generator(&lower, i).pow(k))
}

/// Checks of the inverse-system maps at level `n ≥ 3`: the displayed
/// generator assignment, that `ν` is a surjective homomorphism
/// `N_{n,i} → N_{n-1,i}` compatible with conjugation by `β`, and
/// functoriality `ν_{n-1} ∘ ν_n` where `n - 1 ≥ 3`.
pub fn variant_nu_check(p: u64, n: u32) -> Result<Outcome> {
    let upper = VariantGroup::gamma_n1(p, n)?;
    let lower = VariantGroup::gamma_n1(p, n - 1)?;
    let mut parts = Vec::new();
    for i in 0..p {
        let tau = complement_generator(&upper, i);
        let img = variant_nu(n, i, &tau)?;
        let expected = if i == 0 { lower.sigma() } else { lower.elt(i as i64, p.pow(n - 3) as i64) };
        let generator_ok = img == expected;
        let elements = upper.closure(&[tau]);
        let mut hom = true;
        for a in elements.iter().step_by(7) {
            for b in elements.iter().step_by(5) {
                hom &= variant_nu(n, i, &a.mul(b))? == variant_nu(n, i, a)?.mul(&variant_nu(n, i, b)?);
            }
        }
        let images: std::collections::BTreeSet<GammaElt> =
            elements.iter().map(|x| variant_nu(n, i, x)).collect::<Result<_>>()?;
        let onto = images.len() as u64 == lower.field.order();
        let equivariant =
            variant_nu(n, i, &tau.conjugate_by(&upper.beta()))? == variant_nu(n, i, &tau)?.conjugate_by(&lower.beta());
        let mut functorial = true;
        if n >= 4 {
            for x in &elements {
                let two_step = variant_nu(n - 1, i, &variant_nu(n, i, x)?)?;
                let tau2 = complement_generator(&VariantGroup::gamma_n1(p, n - 2)?, i);
                let k = (0..upper.field.order()).find(|&k| tau.pow(k) == *x).unwrap_or(0);
                functorial &= two_step == tau2.pow(k);
            }
        }
        let data = json!({
            "i": i,
            "image": img,
            "generator_assignment": generator_ok,
            "homomorphism": hom,
            "surjective": onto,
            "beta_equivariant": equivariant,
            "functorial": functorial,
        });
        let ok = generator_ok && hom && onto && equivariant && functorial;
        parts.push((format!("nu_{i}"), Outcome::check(ok, data.clone(), || data)));
    }
    Ok(Outcome::all(parts))
}

/// Whether `E_{n-1,i} ⊆ E_{n,j}` under `Q(ζ_{n-1}, w_{n-1}) ⊆ Q(ζ_n, w_n)`.
pub fn fixed_field_contained(p: u64, n: u32, i: u64, j: u64, radicand: &Rat) -> Result<bool> {
    if n < 3 {
        return Err(Error::InvalidLevel(format!("need n ≥ 3, got {n}")));
    }
    let lower = VariantGroup::gamma_n1(p, n - 1)?;
    let upper = VariantGroup::gamma_n1(p, n)?;
    let small = fixed_field(&lower, &[complement_generator(&lower, i)], radicand)?;
    let big = fixed_field(&upper, &[complement_generator(&upper, j)], radicand)?;
    let mut ech = Echelon::new(BigFieldElt::q_dimension(upper.field));
    for v in &big {
        ech.insert(&v.to_sparse());
    }
    for v in &small {
        if !ech.contains(&v.embed_up()?.to_sparse()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The checks at `(p, n)` used by the report suite:
/// complements, fixed-field dimensions, `H_{n,i}` ranks, the Hopf–Galois
/// criterion per `i`, and pairwise distinct action images.
pub fn variants_check(p: u64, n: u32, a: &Rat) -> Result<Outcome> {
    validate_radicand(p, a)?;
    let gens = normal_complements(p, n)?;
    let g = VariantGroup::gamma_n1(p, n)?;
    let field = g.field;
    let mut parts: Vec<(String, Outcome)> = vec![(
        "normal_complements".to_string(),
        Outcome::check(
            gens.len() as u64 == p,
            json!({ "count": gens.len(), "generators": gens }),
            || json!({ "count": gens.len() }),
        ),
    )];

    let mut images = Vec::new();
    for i in 0..p {
        let e = fixed_field(&g, &[gens[i as usize]], a)?;
        parts.push((
            format!("fixed_field_dimension_{i}"),
            Outcome::check(
                e.len() == field.phi(),
                json!({ "i": i, "dimension": e.len() }),
                || json!({ "i": i, "dimension": e.len(), "expected": field.phi() }),
            ),
        ));
        let hopf = h_variant(p, n, i, a)?;
        let expected_rank = field.order() as usize;
        parts.push((
            format!("h_rank_{i}"),
            Outcome::check(
                hopf.base_rank() == expected_rank && hopf.q_dimension() % g.base_degree() == 0,
                json!({ "i": i, "q_dimension": hopf.q_dimension(), "rank_over_base": hopf.base_rank() }),
                || json!({ "i": i, "expected_rank": expected_rank }),
            ),
        ));
        parts.push((format!("hopf_galois_{i}"), hopf_galois_check(&hopf)?));
        images.push(action_image(&hopf)?);
    }
    let d2 = {
        let d = g.base_degree() * field.order() as usize;
        d * d
    };
    let mut distinct = true;
    for x in 0..images.len() {
        for y in x + 1..images.len() {
            let rx = rank(d2, &images[x]);
            let mut union = images[x].clone();
            union.extend(images[y].iter().cloned());
            if rank(d2, &union) == rx && rank(d2, &images[y]) == rx {
                distinct = false;
            }
        }
    }
    parts.push(("base_q_recovers_h_n".to_string(), h_n_crosscheck(p, n, a)?));
    parts.push(("distinct_images".to_string(), Outcome::check(distinct, Value::Null, || json!("two images coincide"))));
    Ok(Outcome::all(parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> Rat {
        Rat::from_int(2)
    }

    #[test]
    fn group_laws() {
        let g = VariantGroup::gamma_n1(3, 2).unwrap();
        assert_eq!(g.order(), 27);
        assert_eq!(g.beta_multiplier(), 4);
        for x in g.elements() {
            assert_eq!(x.mul(&x.inverse()), g.identity());
            assert_eq!(x.inverse().mul(&x), g.identity());
        }
        // β σ β^{-1} = σ^c
        assert_eq!(g.sigma().conjugate_by(&g.beta()), g.elt(4, 0));
        let perm_of = |x: &GammaElt| x.permutation();
        let (a, b) = (g.elt(2, 1), g.elt(5, 2));
        let pa = perm_of(&a);
        let pb = perm_of(&b);
        assert_eq!(pa.compose(&pb), perm_of(&a.mul(&b)));
    }

    #[test]
    fn action_examples() {
        let g = VariantGroup::gamma_n1(3, 2).unwrap();
        let field = g.field();
        let w = BigFieldElt::monomial(field, two(), 0, 1);
        let zw = BigFieldElt::monomial(field, two(), 1, 1);
        assert_eq!(gamma_act(&g.sigma(), &w).unwrap(), zw);
        assert_eq!(gamma_act(&g.beta(), &w).unwrap(), w);
        let x = BigFieldElt::monomial(field, two(), 5, 7).try_add(&BigFieldElt::monomial(field, two(), 2, 3)).unwrap();
        assert_eq!(gamma_act(&g.sigma().pow(9), &x).unwrap(), x);
        // ring homomorphism on a product
        let y = BigFieldElt::monomial(field, two(), 1, 8);
        let s = g.elt(2, 1);
        let lhs = gamma_act(&s, &x.try_mul(&y).unwrap()).unwrap();
        let rhs = gamma_act(&s, &x).unwrap().try_mul(&gamma_act(&s, &y).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn complements_at_3_2() {
        let gens = normal_complements(3, 2).unwrap();
        let g = VariantGroup::gamma_n1(3, 2).unwrap();
        assert_eq!(gens, vec![g.sigma(), g.elt(1, 1), g.elt(2, 1)]);
        assert!(normal_complements(3, 1).is_err());
    }

    #[test]
    fn fixed_field_dimensions() {
        let g = VariantGroup::gamma_n1(3, 2).unwrap();
        assert_eq!(fixed_field(&g, &[g.sigma()], &two()).unwrap().len(), 6);
        assert_eq!(fixed_field(&g, &[g.sigma(), g.beta()], &two()).unwrap().len(), 2);
        assert_eq!(fixed_field(&g, &[], &two()).unwrap().len(), 54);
        // E_{2,0} = Q(ζ_2)
        for v in fixed_field(&g, &[g.sigma()], &two()).unwrap() {
            assert!(v.coeffs()[1..].iter().all(CycloElt::is_zero));
        }
    }

    #[test]
    fn variant_hopf_ranks() {
        for i in 0..3 {
            let h = h_variant(3, 2, i, &two()).unwrap();
            assert_eq!(h.q_dimension(), 18);
            assert_eq!(h.base_rank(), 9);
        }
    }

    #[test]
    fn nu_assignment() {
        let g3 = VariantGroup::gamma_n1(3, 3).unwrap();
        let g2 = VariantGroup::gamma_n1(3, 2).unwrap();
        assert_eq!(variant_nu(3, 1, &g3.elt(1, 3)).unwrap(), g2.elt(1, 1));
        assert_eq!(variant_nu(3, 0, &g3.sigma()).unwrap(), g2.sigma());
        assert!(variant_nu(2, 0, &g2.sigma()).is_err());
        assert!(variant_nu(3, 0, &g3.beta()).is_err());
    }

    #[test]
    fn base_q_recovers_h_n() {
        let o = h_n_crosscheck(3, 2, &two()).unwrap();
        assert!(o.passed, "{}", o.data);
        assert!(h_n_crosscheck(5, 1, &two()).unwrap().passed);
    }

    #[test]
    fn restriction_sends_every_complement_to_sigma() {
        // N_{3,j} restricts to ⟨σ_2⟩ = N_{2,0}, so only E_{2,0} lies below E_{3,j}
        let m = containment_matrix(3, 3, &two()).unwrap();
        for (i, row) in m.iter().enumerate() {
            for &c in row {
                assert_eq!(c, i == 0);
            }
        }
    }

    #[test]
    fn inverse_system_maps() {
        assert!(variant_nu_check(3, 3).unwrap().passed);
        assert!(variant_nu_check(3, 4).unwrap().passed);
    }
}
