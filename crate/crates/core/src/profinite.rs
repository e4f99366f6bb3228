//! Finite truncations of the inverse systems `… → Q(ζ)[N_3] → Q(ζ)[N_2] →
//! Q(ζ)[N_1]` and `… → H_3 → H_2 → H_1`, of `N_∞ ≅ Z_p` and of
//! `Δ_∞ ≅ Z_p^×`.
//!
//! Nothing infinite is materialised: a statement about the limit is checked
//! at every level `n ≤ L` together with compatibility under `ν`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::cyclotomic::FieldDescriptor;
use crate::error::{Error, Result};
use crate::groupring::{diag_action_on_basis, fixed_ring_in, GroupRingElt};
use crate::hopf::{e_basis_in, HElt};
use crate::linalg::{Echelon, SparseVec};
use crate::rat::Rat;
use crate::report::Outcome;

/// Largest admissible `p^L · φ(p^L)` for fixed-space computations.
pub const DIMENSION_CAP: u64 = 20_000;

/// Default truncation level.
pub const DEFAULT_LEVEL: u32 = 3;

/// `ν_{j,i}`: `σ_j ↦ σ_i`, coefficients unchanged.
pub fn nu_groupring(j: u32, i: u32, x: &GroupRingElt) -> Result<GroupRingElt> {
    if j < i || i == 0 {
        return Err(Error::InvalidLevel(format!("ν_{{{j},{i}}} needs j ≥ i ≥ 1")));
    }
    if x.level() != j {
        return Err(Error::Mismatch(format!("element has group level {}, expected {j}", x.level())));
    }
    let field = x.field();
    let order = field.p().pow(i) as usize;
    let mut coeffs = vec![crate::cyclotomic::CycloElt::zero(field); order];
    for (b, c) in x.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        coeffs[b % order] = &coeffs[b % order] + c;
    }
    GroupRingElt::from_coeffs(field, i, coeffs)
}

/// `ν_{n,n-1}` on `H_n`: `e_{n,i} ↦ e_{n-1,i/p}` when `p | i`, else 0.
pub fn nu_h(n: u32, h: &HElt) -> Result<HElt> {
    if n < 2 {
        return Err(Error::InvalidLevel(format!("ν on H_n needs n ≥ 2, got {n}")));
    }
    let field = h.field();
    if field.n() != n {
        return Err(Error::Mismatch(format!("element of H_{}, expected H_{n}", field.n())));
    }
    let lower = field.at_level(n - 1)?;
    let p = field.p() as usize;
    let coords = (0..lower.order() as usize).map(|i| h.coords()[i * p].clone()).collect();
    HElt::new(lower, coords)
}

/// `δ ∘ ν_{j,i} = ν_{j,i} ∘ δ` on every basis element `ζ^a σ^b` of
/// `Q(ζ_j)[N_j]`, computed with the sparse Q-linear operators; small levels
/// are also checked through the dense group-ring arithmetic.
pub fn commute_check(p: u64, jn: u32, in_: u32) -> Result<Outcome> {
    if jn < in_ || in_ == 0 {
        return Err(Error::InvalidLevel(format!("need j ≥ i ≥ 1, got j={jn}, i={in_}")));
    }
    let field = FieldDescriptor::new(p, jn)?;
    let phi = field.phi();
    let small = GroupRingElt::q_dimension(field, jn) <= 1000;
    let nu_index = |c: usize| ((c / phi) % p.pow(in_) as usize) * phi + c % phi;
    let mut checked = 0usize;
    for b in 0..field.order() {
        for a in 0..phi {
            let delta_then_nu: SparseVec =
                diag_action_on_basis(field, jn, a, b).into_iter().map(|(c, v)| (nu_index(c), v)).collect();
            let nu_then_delta: SparseVec = diag_action_on_basis(field, in_, a, b % p.pow(in_)).into_iter().collect();
            let mut ok = delta_then_nu == nu_then_delta;
            if small && ok {
                let x = GroupRingElt::sigma_pow(field, jn, b as i64).scale(&crate::cyclotomic::CycloElt::monomial(
                    field,
                    a as i64,
                    &Rat::one(),
                ));
                ok = nu_groupring(jn, in_, &x.diag_action(1))? == nu_groupring(jn, in_, &x)?.diag_action(1);
            }
            checked += 1;
            if !ok {
                return Ok(Outcome::fail(json!({ "a": a, "b": b }), json!({ "checked": checked })));
            }
        }
    }
    Ok(Outcome::pass(json!({ "checked": checked })))
}

/// A compatible sequence `(h_1, …, h_L)`, `h_n ∈ H_n`, `ν(h_n) = h_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentH {
    p: u64,
    levels: Vec<HElt>,
}

impl CoherentH {
    /// Validates compatibility; the error names the first level `n` with
    /// `ν(h_n) ≠ h_{n-1}`.
    pub fn make_coherent(levels: Vec<HElt>) -> Result<Self> {
        let first = levels.first().ok_or_else(|| Error::InvalidLevel("empty sequence".into()))?;
        let p = first.field().p();
        for (idx, h) in levels.iter().enumerate() {
            let n = idx as u32 + 1;
            if h.field().p() != p || h.field().n() != n {
                return Err(Error::Mismatch(format!("entry {idx} is not in H_{n} for p = {p}")));
            }
        }
        for n in 2..=levels.len() as u32 {
            if nu_h(n, &levels[n as usize - 1])? != levels[n as usize - 2] {
                return Err(Error::Incoherent { level: n });
            }
        }
        Ok(CoherentH { p, levels })
    }

    /// The unit of `H_∞` truncated at `L`.
    pub fn one(p: u64, l: u32) -> Result<Self> {
        let levels = (1..=l).map(|n| Ok(HElt::one(FieldDescriptor::new(p, n)?))).collect::<Result<Vec<_>>>()?;
        Self::make_coherent(levels)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Truncation level `L`.
    pub fn depth(&self) -> u32 {
        self.levels.len() as u32
    }

    pub fn levels(&self) -> &[HElt] {
        &self.levels
    }

    /// The canonical projection to `H_n`.
    pub fn project(&self, n: u32) -> Result<&HElt> {
        if n == 0 || n > self.depth() {
            return Err(Error::IndexOutOfRange { index: n as u64, bound: self.depth() as u64 + 1 });
        }
        Ok(&self.levels[n as usize - 1])
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("rationals serialize")
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let p = value["p"].as_u64().ok_or_else(|| Error::Parse("missing p".into()))?;
        let levels = value["levels"].as_array().ok_or_else(|| Error::Parse("missing levels".into()))?;
        let parsed = levels
            .iter()
            .enumerate()
            .map(|(idx, v)| HElt::from_json(FieldDescriptor::new(p, idx as u32 + 1)?, v))
            .collect::<Result<Vec<_>>>()?;
        Self::make_coherent(parsed)
    }
}

impl Serialize for CoherentH {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CoherentH", 3)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("L", &self.depth())?;
        s.serialize_field("levels", &self.levels)?;
        s.end()
    }
}

/// A p-adic integer known modulo `p^n` for `n = 1..=L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicTrunc {
    p: u64,
    exponents: Vec<u64>,
    unit: bool,
}

impl PadicTrunc {
    /// Validates `a_n ≡ a_m (mod p^m)` and, for units, `p ∤ a_n`.
    pub fn new(p: u64, exponents: Vec<u64>, unit: bool) -> Result<Self> {
        FieldDescriptor::new(p, exponents.len().max(1) as u32)?;
        for (idx, &a) in exponents.iter().enumerate() {
            let modulus = p.pow(idx as u32 + 1);
            if a >= modulus {
                return Err(Error::IndexOutOfRange { index: a, bound: modulus });
            }
            if idx > 0 && a % (modulus / p) != exponents[idx - 1] {
                return Err(Error::Incoherent { level: idx as u32 + 1 });
            }
        }
        if unit && exponents.first().is_some_and(|a| a % p == 0) {
            return Err(Error::NotUnit(format!("{:?} is divisible by {p}", exponents)));
        }
        Ok(PadicTrunc { p, exponents, unit })
    }

    /// The image of an integer.
    pub fn from_integer(p: u64, l: u32, x: i64) -> Result<Self> {
        let exps = (1..=l).map(|n| x.rem_euclid(p.pow(n) as i64) as u64).collect();
        Self::new(p, exps, x.rem_euclid(p as i64) != 0)
    }

    /// The unit `(π^e mod p^n)_n`, i.e. the element of `Δ_∞` restricting to
    /// `δ_n^e` at every level.
    pub fn delta_power(p: u64, l: u32, e: i64) -> Result<Self> {
        let exps = (1..=l).map(|n| Ok(FieldDescriptor::new(p, n)?.pi_pow(e))).collect::<Result<Vec<_>>>()?;
        Self::new(p, exps, true)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn depth(&self) -> u32 {
        self.exponents.len() as u32
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_unit(&self) -> bool {
        self.unit
    }

    fn combine(&self, other: &Self, op: impl Fn(u64, u64, u64) -> u64) -> Result<Self> {
        if self.p != other.p || self.depth() != other.depth() {
            return Err(Error::Mismatch("p-adic truncations of different shape".into()));
        }
        let exps = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .enumerate()
            .map(|(idx, (&a, &b))| op(a, b, self.p.pow(idx as u32 + 1)))
            .collect::<Vec<_>>();
        let unit = exps.first().is_some_and(|a| a % self.p != 0);
        Self::new(self.p, exps, unit)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b, m| (a + b) % m)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b, m| a * b % m)
    }

    /// The action of a unit on `N_∞`: levelwise multiplication of the
    /// exponent sequence of `σ_∞`.
    pub fn act_on(&self, x: &PadicTrunc) -> Result<Self> {
        if !self.unit {
            return Err(Error::NotUnit("only units act on N_∞".into()));
        }
        self.mul(x)
    }

    pub fn to_json(&self) -> Value {
        json!({ "p": self.p, "L": self.depth(), "exponents": self.exponents, "unit": self.unit })
    }
}

/// Applies the unit `d` at every level through the group-ring action
/// `ζ_n ↦ ζ_n^{d_n}`, `σ_n ↦ σ_n^{d_n}`.
pub fn delta_inf_action(d: &PadicTrunc, c: &CoherentH) -> Result<CoherentH> {
    if !d.is_unit() {
        return Err(Error::NotUnit(format!("{:?}", d.exponents())));
    }
    if d.p() != c.p() || d.depth() != c.depth() {
        return Err(Error::Mismatch("truncations of different shape".into()));
    }
    let levels = c
        .levels()
        .iter()
        .zip(d.exponents())
        .map(|(h, &u)| HElt::from_group_ring(&h.to_group_ring().galois_action(u)?))
        .collect::<Result<Vec<_>>>()?;
    CoherentH::make_coherent(levels)
}

fn check_cap(p: u64, l: u32) -> Result<FieldDescriptor> {
    let top = FieldDescriptor::new(p, l)?;
    let dim = top.order() * top.phi() as u64;
    if dim > DIMENSION_CAP {
        return Err(Error::CapExceeded { size: dim as usize, cap: DIMENSION_CAP as usize });
    }
    Ok(top)
}

/// At each level `n ≤ L` the `Δ_n`-fixed subspace of `Q(ζ_n)[N_n]` equals
/// `span{e_{n,i}}` (both inclusions by exact rank), and `ν` maps the level-`n`
/// fixed space onto the level-`(n-1)` one.
pub fn fixed_truncation_check(p: u64, l: u32) -> Result<Outcome> {
    if l < 2 {
        return Err(Error::InvalidLevel(format!("truncation level must be at least 2, got {l}")));
    }
    check_cap(p, l)?;
    let mut per_level = Vec::new();
    let mut previous: Option<Vec<GroupRingElt>> = None;
    for n in 1..=l {
        let field = FieldDescriptor::new(p, n)?;
        let pn = field.order() as usize;
        let dim = GroupRingElt::q_dimension(field, n);
        let kernel = fixed_ring_in(field, n);
        let es: Vec<GroupRingElt> = (0..pn as u64).map(|i| e_basis_in(field, i)).collect();

        let mut ech = Echelon::new(dim);
        for v in &kernel {
            ech.insert(&v.to_sparse());
        }
        let kernel_rank = ech.rank();
        let e_inside = es.iter().all(|e| ech.contains(&e.to_sparse()));
        let e_rank = crate::linalg::rank(dim, &es.iter().map(GroupRingElt::to_sparse).collect::<Vec<_>>());

        let mut nu_onto = true;
        if let Some(lower) = &previous {
            // ν_{n,n-1}(fixed_n) against fixed_{n-1}, both with coefficients in Q(ζ_n)
            let target_dim = GroupRingElt::q_dimension(field, n - 1);
            let mut lower_span = Echelon::new(target_dim);
            for v in lower {
                lower_span.insert(&v.embed_coefficients(n)?.to_sparse());
            }
            let mut image = Echelon::new(target_dim);
            for v in &kernel {
                let img = nu_groupring(n, n - 1, v)?.to_sparse();
                image.insert(&img);
                nu_onto &= lower_span.contains(&img);
            }
            nu_onto &= image.rank() == lower_span.rank();
        }

        let ok = kernel.len() == pn && kernel_rank == pn && e_rank == pn && e_inside && nu_onto;
        per_level.push(json!({
            "n": n,
            "kernel_dimension": kernel.len(),
            "e_rank": e_rank,
            "e_in_kernel": e_inside,
            "nu_onto": nu_onto,
            "passed": ok,
        }));
        if !ok {
            return Ok(Outcome::fail(per_level.last().cloned().unwrap_or(Value::Null), json!(per_level)));
        }
        previous = Some(kernel);
    }
    Ok(Outcome::pass(json!(per_level)))
}

/// The levelwise identities behind the inverse limits at truncation `L`:
/// functoriality of `ν`, agreement of `nu_h` with `nu_groupring`,
/// surjectivity, commutation with `δ`, coherence of the distinguished
/// sequences, `Δ_∞`-invariance, p-adic compatibility, and
/// [`fixed_truncation_check`].
pub fn inverse_system_check(p: u64, l: u32) -> Result<Outcome> {
    check_cap(p, l)?;
    let mut parts = Vec::new();

    let mut functorial = true;
    for k in 1..=l {
        let fk = FieldDescriptor::new(p, k)?;
        for b in 0..fk.order() as i64 {
            let x = GroupRingElt::sigma_pow(fk, k, b).scale(&crate::cyclotomic::CycloElt::zeta(fk));
            for j in 1..=k {
                for i in 1..=j {
                    let direct = nu_groupring(k, i, &x)?;
                    let composed = nu_groupring(j, i, &nu_groupring(k, j, &x)?)?;
                    functorial &= direct == composed;
                }
            }
        }
    }
    parts.push(("nu_functorial", Outcome::check(functorial, Value::Null, || json!("composition differs"))));

    let mut agrees = true;
    let mut surjective = true;
    for n in 2..=l {
        let field = FieldDescriptor::new(p, n)?;
        let lower = field.at_level(n - 1)?;
        for i in 0..field.order() {
            let h = HElt::basis(field, i);
            let via_rule = nu_h(n, &h)?;
            let via_ring = nu_groupring(n, n - 1, &h.to_group_ring())?;
            agrees &= via_rule.to_group_ring().embed_coefficients(n)? == via_ring;
        }
        for i in 0..lower.order() {
            surjective &= nu_h(n, &HElt::basis(field, p * i))? == HElt::basis(lower, i);
        }
    }
    parts.push(("nu_h_matches_group_ring", Outcome::check(agrees, Value::Null, || json!("rule differs"))));
    parts.push(("nu_h_surjective", Outcome::check(surjective, Value::Null, || json!("missing preimage"))));

    let mut commute = Vec::new();
    for j in 1..=l {
        for i in 1..=j {
            let o = commute_check(p, j, i)?;
            commute.push((format!("{j}_{i}"), o));
        }
    }
    parts.push(("delta_commutes_with_nu", Outcome::all(commute)));

    let distinguished: Vec<HElt> =
        (1..=l).map(|n| Ok(HElt::basis(FieldDescriptor::new(p, n)?, p.pow(n - 1)))).collect::<Result<_>>()?;
    let coherent = CoherentH::make_coherent(distinguished);
    let one = CoherentH::one(p, l);
    let mut perturbed = one.as_ref().map(|c| c.levels().to_vec()).unwrap_or_default();
    if let Some(first) = perturbed.first_mut() {
        *first = first.scale(&Rat::from_int(2));
    }
    let rejected = matches!(CoherentH::make_coherent(perturbed), Err(Error::Incoherent { level: 2 }));
    parts.push((
        "coherent_sequences",
        Outcome::check(
            coherent.is_ok() && one.is_ok() && rejected,
            Value::Null,
            || json!({ "distinguished": coherent.is_ok(), "unit": one.is_ok(), "perturbation_rejected": rejected }),
        ),
    ));

    let mut fixed = true;
    if let Ok(c) = &coherent {
        for e in 0..4 {
            let d = PadicTrunc::delta_power(p, l, e)?;
            fixed &= delta_inf_action(&d, c)? == *c;
        }
    }
    parts.push(("delta_inf_fixes_h", Outcome::check(fixed, Value::Null, || json!("a coherent H-sequence moved"))));

    let d = PadicTrunc::delta_power(p, l, 1)?;
    let x = PadicTrunc::from_integer(p, l, 1 + p as i64)?;
    let y = PadicTrunc::from_integer(p, l, 2)?;
    let padic_ok = d.mul(&d)?.is_unit()
        && x.add(&y)? == PadicTrunc::from_integer(p, l, 3 + p as i64)?
        && d.act_on(&x)? == d.mul(&x)?;
    parts.push(("padic_truncation", Outcome::check(padic_ok, Value::Null, || json!("levelwise arithmetic"))));

    parts.push(("fixed_truncation", fixed_truncation_check(p, l)?));
    Ok(Outcome::all(parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, n: u32) -> FieldDescriptor {
        FieldDescriptor::new(p, n).unwrap()
    }

    #[test]
    fn nu_examples() {
        let k = f(3, 2);
        let s = GroupRingElt::sigma_pow(k, 2, 1);
        assert_eq!(nu_groupring(2, 1, &s).unwrap(), GroupRingElt::sigma_pow(k, 1, 1));
        assert_eq!(nu_groupring(2, 2, &s).unwrap(), s);
        assert!(nu_groupring(1, 2, &GroupRingElt::sigma_pow(k, 1, 1)).is_err());
    }

    #[test]
    fn nu_h_examples() {
        let k = f(3, 2);
        let lower = f(3, 1);
        assert_eq!(nu_h(2, &HElt::basis(k, 3)).unwrap(), HElt::basis(lower, 1));
        assert!(nu_h(2, &HElt::basis(k, 1)).unwrap().is_zero());
        assert_eq!(nu_h(2, &HElt::one(k)).unwrap(), HElt::one(lower));
        assert!(nu_h(1, &HElt::one(lower)).is_err());
    }

    #[test]
    fn coherence() {
        let seq: Vec<HElt> = (1..=3).map(|n| HElt::basis(f(3, n), 3u64.pow(n - 1))).collect();
        let c = CoherentH::make_coherent(seq).unwrap();
        assert_eq!(c.project(2).unwrap(), &HElt::basis(f(3, 2), 3));
        let mut bad = CoherentH::one(3, 3).unwrap().levels().to_vec();
        bad[0] = HElt::basis(f(3, 1), 0);
        assert_eq!(CoherentH::make_coherent(bad), Err(Error::Incoherent { level: 2 }));
        let json = c.to_json();
        assert_eq!(json["L"], 3);
        assert_eq!(CoherentH::from_json(&json).unwrap(), c);
    }

    #[test]
    fn padic_examples() {
        let x = PadicTrunc::new(3, vec![1, 4], false).unwrap();
        assert_eq!(x.add(&x).unwrap().exponents(), &[2, 8]);
        let a = PadicTrunc::new(3, vec![2, 2], true).unwrap();
        let b = PadicTrunc::new(3, vec![2, 5], true).unwrap();
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.exponents(), &[1, 1]);
        assert!(prod.is_unit());
        assert!(PadicTrunc::new(3, vec![1, 5], false).is_err());
        assert!(PadicTrunc::new(3, vec![0, 3], true).is_err());
    }

    #[test]
    fn delta_inf_identity_and_non_unit() {
        let c = CoherentH::one(3, 2).unwrap();
        let id = PadicTrunc::delta_power(3, 2, 0).unwrap();
        assert_eq!(id.exponents(), &[1, 1]);
        assert_eq!(delta_inf_action(&id, &c).unwrap(), c);
        let zero = PadicTrunc::from_integer(3, 2, 0).unwrap();
        assert!(delta_inf_action(&zero, &c).is_err());
    }

    #[test]
    fn commute_small() {
        assert!(commute_check(3, 2, 1).unwrap().passed);
        assert!(commute_check(3, 2, 2).unwrap().passed);
    }

    #[test]
    fn truncation_small() {
        let o = fixed_truncation_check(3, 2).unwrap();
        assert!(o.passed, "{o:?}");
        assert!(matches!(fixed_truncation_check(7, 3), Err(Error::CapExceeded { .. })));
    }
}
