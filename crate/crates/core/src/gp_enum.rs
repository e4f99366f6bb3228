//! Greither–Pareigis enumeration: the action `λ` of `Γ` on the cosets
//! `S = Γ/Δ`, the regular subgroups `N ≤ Perm(S)` normalized by `λ(Γ)`, and
//! the almost classical ones coming from normal complements of `Δ`.
//!
//! A regular `N ≅ M` is `ψ λ_M(M) ψ^{-1}` for a bijection `ψ: M → S` with
//! `ψ(1) = 0`, unique up to `Aut(M)`. `λ(Γ)` normalizes it exactly when
//! every `ψ^{-1} λ(γ) ψ` lies in `Hol(M) = M ⋊ Aut(M)`, so the search labels
//! `S` by `M` for every abstract `M` of order `|S|` and every choice of
//! holomorph elements with the right cycle types for the generators of `Γ`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::catalog::{groups_of_order, CayleyTable};
use crate::error::{Error, Result};
use crate::perm::{FiniteGroup, Perm};
use crate::report::Outcome;
use crate::variants::VariantGroup;

/// Largest `|S|` searched for arbitrary degrees.
pub const GENERIC_CAP: usize = 15;
/// Largest `|S|` searched when `|S|` is a prime power.
pub const PRIME_POWER_CAP: usize = 27;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub generic_cap: usize,
    pub prime_power_cap: usize,
    pub budget: Option<Duration>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { generic_cap: GENERIC_CAP, prime_power_cap: PRIME_POWER_CAP, budget: None }
    }
}

impl SearchConfig {
    fn cap_for(&self, size: usize) -> usize {
        if is_prime_power(size) {
            self.prime_power_cap.max(self.generic_cap)
        } else {
            self.generic_cap
        }
    }
}

fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).expect("n ≥ 2");
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// `Γ` acting on its left cosets of `Δ`; the coset `Δ` is point `0`.
#[derive(Clone, Debug)]
pub struct CosetAction {
    size: usize,
    coset_of: HashMap<Perm, usize>,
    reps: Vec<Perm>,
    generators: Vec<Perm>,
    image: FiniteGroup,
}

impl CosetAction {
    /// `|S| = [Γ : Δ]`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Coset representatives, `reps()[0]` the identity.
    pub fn reps(&self) -> &[Perm] {
        &self.reps
    }

    /// `λ(g)`, `gxΔ ↦ ...`.
    pub fn lambda(&self, g: &Perm) -> Result<Perm> {
        let images = self
            .reps
            .iter()
            .map(|x| {
                self.coset_of
                    .get(&g.compose(x))
                    .copied()
                    .ok_or_else(|| Error::NotSubgroup(format!("{g:?} is not in Γ")))
            })
            .collect::<Result<Vec<_>>>()?;
        Perm::new(images)
    }

    /// `λ` of the generating set used by the search.
    pub fn lambda_generators(&self) -> Result<Vec<Perm>> {
        self.generators.iter().map(|g| self.lambda(g)).collect()
    }

    /// `λ(Γ) ≤ Perm(S)`.
    pub fn image(&self) -> &FiniteGroup {
        &self.image
    }
}

/// The left coset action of `gamma` on `gamma/delta`.
pub fn coset_action(gamma: &FiniteGroup, delta: &FiniteGroup) -> Result<CosetAction> {
    if !delta.is_subgroup_of(gamma) {
        return Err(Error::NotSubgroup("Δ is not contained in Γ".into()));
    }
    let mut coset_of = HashMap::new();
    let mut reps = Vec::new();
    for g in gamma.elements() {
        if coset_of.contains_key(g) {
            continue;
        }
        let index = reps.len();
        for d in delta.elements() {
            coset_of.insert(g.compose(d), index);
        }
        reps.push(g.clone());
    }
    let size = reps.len();
    let generators = small_generating_set(gamma);
    let mut action = CosetAction { size, coset_of, reps, generators, image: FiniteGroup::generate(size, vec![])? };
    let lambda = action.lambda_generators()?;
    action.image = FiniteGroup::generate(size, lambda)?;
    Ok(action)
}

/// A generating set picked greedily, largest element orders first.
fn small_generating_set(g: &FiniteGroup) -> Vec<Perm> {
    let mut by_order: Vec<&Perm> = g.elements().iter().filter(|x| !x.is_identity()).collect();
    by_order.sort_by_key(|x| std::cmp::Reverse(x.order()));
    let mut gens: Vec<Perm> = Vec::new();
    let mut reached = FiniteGroup::generate(g.degree(), vec![]).expect("trivial group");
    for x in by_order {
        if reached.order() == g.order() {
            break;
        }
        if !reached.contains(x) {
            gens.push(x.clone());
            reached = FiniteGroup::generate(g.degree(), gens.clone()).expect("same degree");
        }
    }
    gens
}

/// Transitive, and only the identity fixes a point.
pub fn is_regular(n: &FiniteGroup, size: usize) -> bool {
    n.degree() == size
        && n.order() == size
        && n.is_transitive()
        && n.elements().iter().all(|g| g.is_identity() || !g.has_fixed_point())
}

fn is_normalized(n: &FiniteGroup, lambda: &[Perm]) -> bool {
    lambda.iter().all(|g| n.is_normalized_by(g))
}

/// One enumerated structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularSubgroup {
    pub group: FiniteGroup,
    pub cyclic: bool,
    pub abelian: bool,
    /// `N^{opp} = Cent(N) ⊆ λ(Γ)`.
    pub almost_classical: bool,
}

impl Serialize for RegularSubgroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        json!({
            "elements": self.group.elements(),
            "order": self.group.order(),
            "regular": true,
            "normalized": true,
            "cyclic": self.cyclic,
            "abelian": self.abelian,
            "almost_classical": self.almost_classical,
        })
        .serialize(serializer)
    }
}

struct Deadline {
    end: Option<Instant>,
    budget: Option<Duration>,
    ticks: u32,
}

impl Deadline {
    fn new(budget: Option<Duration>) -> Self {
        Deadline { end: budget.map(|b| Instant::now() + b), budget, ticks: 0 }
    }

    fn tick(&mut self) -> Result<()> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(1024) {
            if let (Some(end), Some(b)) = (self.end, self.budget) {
                if Instant::now() > end {
                    return Err(Error::BudgetExhausted { millis: b.as_millis() as u64 });
                }
            }
        }
        Ok(())
    }
}

/// All regular `N ≤ Perm(S)` normalized by `λ(Γ)`, sorted by element sets.
pub fn enumerate_regular_normalized(
    gamma: &FiniteGroup,
    delta: &FiniteGroup,
    config: &SearchConfig,
) -> Result<Vec<RegularSubgroup>> {
    let action = coset_action(gamma, delta)?;
    let size = action.size();
    let cap = config.cap_for(size);
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    let lambda = action.lambda_generators()?;
    let mut deadline = Deadline::new(config.budget);
    let mut found: BTreeSet<Vec<Perm>> = BTreeSet::new();
    for m in groups_of_order(size)? {
        search_labelings(&m, &lambda, size, &mut deadline, &mut found)?;
    }
    let image = action.image();
    found
        .into_iter()
        .map(|elements| {
            let group = FiniteGroup::from_elements(size, elements)?;
            if !is_regular(&group, size) || !is_normalized(&group, &lambda) {
                return Err(Error::NotSubgroup("search produced a non-regular or unnormalized group".into()));
            }
            let opp = group.regular_centralizer()?;
            Ok(RegularSubgroup {
                cyclic: group.is_cyclic(),
                abelian: group.is_abelian(),
                almost_classical: opp.elements().iter().all(|g| image.contains(g)),
                group,
            })
        })
        .collect()
}

/// Holomorph element `x ↦ a·α(x)`.
fn holomorph_perm(m: &CayleyTable, a: usize, alpha: &[usize]) -> Perm {
    Perm::new((0..m.order()).map(|x| m.mul(a, alpha[x])).collect()).expect("holomorph elements are bijections")
}

fn search_labelings(
    m: &CayleyTable,
    lambda: &[Perm],
    size: usize,
    deadline: &mut Deadline,
    found: &mut BTreeSet<Vec<Perm>>,
) -> Result<()> {
    let auts = m.automorphisms();
    let cycle_types: Vec<Vec<usize>> = lambda.iter().map(Perm::cycle_type).collect();
    let mut candidates: Vec<Vec<Perm>> = vec![Vec::new(); lambda.len()];
    for a in 0..m.order() {
        for alpha in &auts {
            deadline.tick()?;
            let f = holomorph_perm(m, a, alpha);
            let ct = f.cycle_type();
            for (k, target) in cycle_types.iter().enumerate() {
                if &ct == target {
                    candidates[k].push(f.clone());
                }
            }
        }
    }
    if lambda.is_empty() || candidates.iter().any(Vec::is_empty) {
        return Ok(());
    }
    // ψ ∘ α gives the same N, so the first label is taken up to Aut(M)-conjugacy
    let aut_perms: Vec<Perm> = auts.iter().map(|a| Perm::new(a.clone()).expect("automorphism")).collect();
    let mut covered: HashSet<Perm> = HashSet::new();
    let mut first = Vec::new();
    for f in &candidates[0] {
        if covered.contains(f) {
            continue;
        }
        for alpha in &aut_perms {
            deadline.tick()?;
            covered.insert(f.conjugate_by(alpha));
        }
        first.push(f.clone());
    }
    let regular: Vec<Perm> = (0..m.order()).map(|a| Perm::new(m.left_regular(a)).expect("regular")).collect();
    let mut choice = vec![0usize; lambda.len()];
    let pools: Vec<&[Perm]> =
        std::iter::once(first.as_slice()).chain(candidates[1..].iter().map(Vec::as_slice)).collect();
    'outer: loop {
        deadline.tick()?;
        let labels: Vec<&Perm> = choice.iter().zip(&pools).map(|(&c, pool)| &pool[c]).collect();
        if let Some(psi) = solve_labeling(&labels, lambda, size) {
            let psi_inv = psi.inverse();
            let mut elements: Vec<Perm> = regular.iter().map(|r| psi.compose(r).compose(&psi_inv)).collect();
            elements.sort();
            found.insert(elements);
        }
        for k in (0..choice.len()).rev() {
            choice[k] += 1;
            if choice[k] < pools[k].len() {
                continue 'outer;
            }
            choice[k] = 0;
        }
        return Ok(());
    }
}

/// The bijection `ψ` with `ψ(0) = 0` and `ψ ∘ f_k = λ_k ∘ ψ`, if any.
fn solve_labeling(labels: &[&Perm], lambda: &[Perm], size: usize) -> Option<Perm> {
    let mut psi = vec![usize::MAX; size];
    let mut used = vec![false; size];
    psi[0] = 0;
    used[0] = true;
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        for (f, l) in labels.iter().zip(lambda) {
            let y = f.apply(x);
            let target = l.apply(psi[x]);
            if psi[y] == usize::MAX {
                if std::mem::replace(&mut used[target], true) {
                    return None;
                }
                psi[y] = target;
                stack.push(y);
            } else if psi[y] != target {
                return None;
            }
        }
    }
    if psi.contains(&usize::MAX) {
        return None;
    }
    Perm::new(psi).ok()
}

/// Normal complements `N ⊴ Γ` of `Δ`: `N ∩ Δ = 1` and `NΔ = Γ`. Normal
/// subgroups meeting `Δ` trivially are joins of normal closures of
/// conjugacy classes, so the search grows joins and discards any whose
/// order stops dividing `[Γ : Δ]` or which meet `Δ`.
pub fn almost_classical(gamma: &FiniteGroup, delta: &FiniteGroup) -> Result<Vec<FiniteGroup>> {
    if !delta.is_subgroup_of(gamma) {
        return Err(Error::NotSubgroup("Δ is not contained in Γ".into()));
    }
    let index = gamma.order() / delta.order();
    let admissible = |n: &FiniteGroup| index.is_multiple_of(n.order()) && n.intersection_order(delta) == 1;
    let mut closures: Vec<FiniteGroup> = Vec::new();
    for class in gamma.conjugacy_classes() {
        let n = FiniteGroup::generate(gamma.degree(), class)?;
        if admissible(&n) && !closures.iter().any(|c| c.elements() == n.elements()) {
            closures.push(n);
        }
    }
    let mut seen: BTreeSet<Vec<Perm>> = closures.iter().map(|n| n.elements().to_vec()).collect();
    let mut frontier = closures.clone();
    while let Some(h) = frontier.pop() {
        for c in &closures {
            if c.elements().iter().all(|x| h.contains(x)) {
                continue;
            }
            let mut gens = h.generators().to_vec();
            gens.extend(c.generators().iter().cloned());
            let joined = FiniteGroup::generate(gamma.degree(), gens)?;
            if admissible(&joined) && seen.insert(joined.elements().to_vec()) {
                frontier.push(joined);
            }
        }
    }
    seen.into_iter().filter(|e| e.len() == index).map(|e| FiniteGroup::from_elements(gamma.degree(), e)).collect()
}

/// Regular subgroups found only from fixed-point-free elements: cyclic ones
/// from elements of order `|S|`, elementary abelian ones of order `p²` from
/// commuting pairs of fixed-point-free elements of order `p`. Complete for
/// `|S| ∈ {p, p²}`; used as an independent oracle for small degrees.
pub fn enumerate_fixed_point_free(gamma: &FiniteGroup, delta: &FiniteGroup) -> Result<Vec<FiniteGroup>> {
    let action = coset_action(gamma, delta)?;
    let size = action.size();
    let p = (2..=size).find(|d| size % d == 0).unwrap_or(1);
    if !(size == p || size == p * p) || size > 9 {
        return Err(Error::CapExceeded { size, cap: 9 });
    }
    let lambda = action.lambda_generators()?;
    let mut found: BTreeSet<Vec<Perm>> = BTreeSet::new();
    let keep = |g: FiniteGroup, found: &mut BTreeSet<Vec<Perm>>| {
        if g.order() == size && is_regular(&g, size) && is_normalized(&g, &lambda) {
            found.insert(g.elements().to_vec());
        }
    };
    for c in uniform_cycle_perms(size, size) {
        keep(FiniteGroup::generate(size, vec![c])?, &mut found);
    }
    if size == p * p {
        let small = uniform_cycle_perms(size, p);
        for (k, a) in small.iter().enumerate() {
            for b in &small[k + 1..] {
                if a.compose(b) == b.compose(a) {
                    keep(FiniteGroup::generate(size, vec![a.clone(), b.clone()])?, &mut found);
                }
            }
        }
    }
    found.into_iter().map(|e| FiniteGroup::from_elements(size, e)).collect()
}

/// Every permutation of `0..degree` whose cycles all have length `len`.
fn uniform_cycle_perms(degree: usize, len: usize) -> Vec<Perm> {
    fn extend(images: &mut Vec<usize>, free: &mut Vec<bool>, len: usize, out: &mut Vec<Perm>) {
        let Some(start) = free.iter().position(|&f| f) else {
            out.push(Perm::new(images.clone()).expect("built from disjoint cycles"));
            return;
        };
        free[start] = false;
        let mut cycle = vec![start];
        grow(images, free, len, out, &mut cycle);
        free[start] = true;
    }
    fn grow(images: &mut Vec<usize>, free: &mut Vec<bool>, len: usize, out: &mut Vec<Perm>, cycle: &mut Vec<usize>) {
        if cycle.len() == len {
            for k in 0..len {
                images[cycle[k]] = cycle[(k + 1) % len];
            }
            extend(images, free, len, out);
            return;
        }
        for x in 0..free.len() {
            if free[x] {
                free[x] = false;
                cycle.push(x);
                grow(images, free, len, out, cycle);
                cycle.pop();
                free[x] = true;
            }
        }
    }
    let mut out = Vec::new();
    if len > 0 && degree.is_multiple_of(len) {
        extend(&mut (0..degree).collect(), &mut vec![true; degree], len, &mut out);
    }
    out
}

/// `Γ_{n,r} = Gal(Q(ζ_n, w_n)/Q(ζ_r))` and `Δ = Gal(Q(ζ_n, w_n)/Q(ζ_r, w_n))`
/// as permutations of the `p^n` conjugates `ζ^x w` of `w`, the monomials
/// `ζ^x w^y` with `y = 1`.
pub fn radical_galois_pair(p: u64, n: u32, r: u32) -> Result<(FiniteGroup, FiniteGroup)> {
    let g = VariantGroup::new(p, n, r)?;
    let pn = g.field().order();
    let on_roots = |x: crate::variants::GammaElt| {
        Perm::new((0..pn).map(|a| x.map_point(a, 1).0 as usize).collect()).expect("Γ permutes the conjugates")
    };
    let degree = pn as usize;
    let gamma = FiniteGroup::generate(degree, vec![on_roots(g.sigma()), on_roots(g.beta())])?;
    let delta = FiniteGroup::generate(degree, vec![on_roots(g.beta())])?;
    if gamma.order() as u64 != g.order() {
        return Err(Error::Mismatch("Γ does not act faithfully on the conjugates of w".into()));
    }
    Ok((gamma, delta))
}

/// Structure counts predicted for `Q(ζ_r, a^{1/p^n})/Q(ζ_r)`:
/// `(p^r, p^{min(r, n-r)})` for `r < n` and `(p^{n-1}, 1)` for `r = n`.
pub fn predicted_counts(p: u64, n: u32, r: u32) -> (u64, u64) {
    if r < n {
        (p.pow(r), p.pow(r.min(n - r)))
    } else {
        (p.pow(n - 1), 1)
    }
}

/// The Hopf–Galois structures on `Q(ζ_r, a^{1/p^n})/Q(ζ_r)`.
#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub p: u64,
    pub n: u32,
    pub r: u32,
    pub degree: usize,
    pub gamma_order: usize,
    pub structures: Vec<RegularSubgroup>,
    pub complements: usize,
    pub expected: u64,
    pub expected_almost_classical: u64,
}

impl Census {
    pub fn count(&self) -> usize {
        self.structures.len()
    }

    pub fn almost_classical_count(&self) -> usize {
        self.structures.iter().filter(|s| s.almost_classical).count()
    }

    pub fn to_outcome(&self) -> Outcome {
        let data = json!({
            "degree": self.degree,
            "gamma_order": self.gamma_order,
            "count": self.count(),
            "expected": self.expected,
            "almost_classical": self.almost_classical_count(),
            "complements": self.complements,
            "expected_almost_classical": self.expected_almost_classical,
            "cyclic": self.structures.iter().filter(|s| s.cyclic).count(),
        });
        let ok = self.count() as u64 == self.expected
            && self.almost_classical_count() as u64 == self.expected_almost_classical
            && self.complements as u64 == self.expected_almost_classical;
        Outcome::check(ok, data.clone(), || data.clone())
    }
}

pub fn census(p: u64, n: u32, r: u32, config: &SearchConfig) -> Result<Census> {
    let (gamma, delta) = radical_galois_pair(p, n, r)?;
    let structures = enumerate_regular_normalized(&gamma, &delta, config)?;
    let complements = almost_classical(&gamma, &delta)?.len();
    let (expected, expected_almost_classical) = predicted_counts(p, n, r);
    Ok(Census {
        p,
        n,
        r,
        degree: structures.first().map_or(0, |s| s.group.degree()),
        gamma_order: gamma.order(),
        structures,
        complements,
        expected,
        expected_almost_classical,
    })
}

/// `(Γ, Δ)` read from generator image vectors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupPairInput {
    pub gamma: Vec<Perm>,
    pub delta: Vec<Perm>,
}

impl GroupPairInput {
    pub fn into_groups(self) -> Result<(FiniteGroup, FiniteGroup)> {
        let degree = self.gamma.first().map(Perm::degree).ok_or_else(|| Error::Parse("Γ needs a generator".into()))?;
        let gamma = FiniteGroup::generate(degree, self.gamma)?;
        let delta = gamma.subgroup(self.delta)?;
        Ok((gamma, delta))
    }
}

/// Enumeration summary for an arbitrary pair.
pub fn enumerate_report(gamma: &FiniteGroup, delta: &FiniteGroup, config: &SearchConfig) -> Result<Value> {
    let structures = enumerate_regular_normalized(gamma, delta, config)?;
    let complements = almost_classical(gamma, delta)?;
    let mut by_type: BTreeMap<&str, usize> = BTreeMap::new();
    for s in &structures {
        *by_type
            .entry(if s.cyclic {
                "cyclic"
            } else if s.abelian {
                "abelian"
            } else {
                "nonabelian"
            })
            .or_default() += 1;
    }
    Ok(json!({
        "degree": gamma.order() / delta.order(),
        "count": structures.len(),
        "almost_classical": structures.iter().filter(|s| s.almost_classical).count(),
        "complements": complements.len(),
        "types": by_type,
        "subgroups": structures,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(d: usize, c: &[usize]) -> Perm {
        Perm::from_cycles(d, &[c]).unwrap()
    }

    #[test]
    fn regularity() {
        let c3 = FiniteGroup::generate(3, vec![cycle(3, &[0, 1, 2])]).unwrap();
        assert!(is_regular(&c3, 3));
        let t = FiniteGroup::generate(3, vec![cycle(3, &[0, 1])]).unwrap();
        assert!(!is_regular(&t, 3));
    }

    #[test]
    fn coset_actions() {
        let s3 = FiniteGroup::generate(3, vec![cycle(3, &[0, 1, 2]), cycle(3, &[0, 1])]).unwrap();
        let stab = FiniteGroup::generate(3, vec![cycle(3, &[1, 2])]).unwrap();
        let a = coset_action(&s3, &stab).unwrap();
        assert_eq!(a.size(), 3);
        for x in s3.elements() {
            for y in s3.elements() {
                assert_eq!(a.lambda(&x.compose(y)).unwrap(), a.lambda(x).unwrap().compose(&a.lambda(y).unwrap()));
            }
        }
        let trivial = FiniteGroup::generate(3, vec![]).unwrap();
        let reg = coset_action(&s3, &trivial).unwrap();
        assert_eq!(reg.size(), 6);
        assert!(is_regular(reg.image(), 6));
        let not_sub = FiniteGroup::generate(3, vec![cycle(3, &[0, 2, 1])]).unwrap();
        assert!(coset_action(&stab, &not_sub).is_err());
    }

    #[test]
    fn cubic_radical() {
        let (g, d) = radical_galois_pair(3, 1, 0).unwrap();
        assert_eq!((g.order(), d.order()), (6, 2));
        let found = enumerate_regular_normalized(&g, &d, &SearchConfig::default()).unwrap();
        assert_eq!(found.len(), 1);
        assert!(found[0].cyclic && found[0].almost_classical);
        assert_eq!(almost_classical(&g, &d).unwrap().len(), 1);
    }

    #[test]
    fn galois_case_of_s3() {
        // two structures of type S3 and three cyclic ones; only the classical one is almost classical
        let s3 = FiniteGroup::generate(3, vec![cycle(3, &[0, 1, 2]), cycle(3, &[0, 1])]).unwrap();
        let trivial = FiniteGroup::generate(3, vec![]).unwrap();
        let found = enumerate_regular_normalized(&s3, &trivial, &SearchConfig::default()).unwrap();
        assert_eq!(found.len(), 5);
        assert_eq!(found.iter().filter(|s| s.cyclic).count(), 3);
        assert_eq!(found.iter().filter(|s| s.almost_classical).count(), 1);
        assert_eq!(almost_classical(&s3, &trivial).unwrap().len(), 1);
    }

    #[test]
    fn degenerate_delta() {
        let s3 = FiniteGroup::generate(3, vec![cycle(3, &[0, 1, 2]), cycle(3, &[0, 1])]).unwrap();
        let ac = almost_classical(&s3, &s3).unwrap();
        assert_eq!(ac.len(), 1);
        assert_eq!(ac[0].order(), 1);
    }

    #[test]
    fn caps_are_enforced() {
        let (g, d) = radical_galois_pair(3, 2, 1).unwrap();
        let tight = SearchConfig { generic_cap: 4, prime_power_cap: 8, budget: None };
        assert_eq!(enumerate_regular_normalized(&g, &d, &tight), Err(Error::CapExceeded { size: 9, cap: 8 }));
    }

    #[test]
    fn uniform_cycles_counts() {
        assert_eq!(uniform_cycle_perms(9, 9).len(), 40320);
        assert_eq!(uniform_cycle_perms(9, 3).len(), 2240);
        assert_eq!(uniform_cycle_perms(4, 2).len(), 3);
    }

    #[test]
    fn predicted() {
        assert_eq!(predicted_counts(3, 2, 0), (1, 1));
        assert_eq!(predicted_counts(3, 2, 1), (3, 3));
        assert_eq!(predicted_counts(3, 2, 2), (3, 1));
        assert_eq!(predicted_counts(3, 3, 2), (9, 3));
    }
}
