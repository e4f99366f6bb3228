//! Small abstract groups as Cayley tables, their automorphisms, and the list
//! of all groups of a given solvable order built by cyclic extensions.

use std::collections::{HashMap, VecDeque};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

/// A group on `0..order` with identity `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl CayleyTable {
    /// Checks identity, inverses and associativity.
    pub fn new(order: usize, mul: Vec<usize>) -> Result<Self> {
        if mul.len() != order * order || mul.iter().any(|&x| x >= order) {
            return Err(Error::Parse("table has the wrong shape".into()));
        }
        let at = |a: usize, b: usize| mul[a * order + b];
        if (0..order).any(|a| at(0, a) != a || at(a, 0) != a) {
            return Err(Error::Parse("0 is not the identity".into()));
        }
        let mut inv = vec![usize::MAX; order];
        for (a, slot) in inv.iter_mut().enumerate() {
            *slot = (0..order).find(|&b| at(a, b) == 0).ok_or_else(|| Error::Parse(format!("{a} has no inverse")))?;
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::Parse("not associative".into()));
                    }
                }
            }
        }
        Ok(CayleyTable { order, mul, inv })
    }

    fn from_trusted(order: usize, mul: Vec<usize>) -> Self {
        let inv = (0..order).map(|a| (0..order).find(|&b| mul[a * order + b] == 0).expect("group")).collect();
        CayleyTable { order, mul, inv }
    }

    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_trusted(n, mul)
    }

    pub fn direct_product(&self, other: &CayleyTable) -> Self {
        let (m, n) = (self.order, other.order);
        let mut mul = vec![0; m * n * m * n];
        for a in 0..m * n {
            for b in 0..m * n {
                let x = self.mul(a / n, b / n);
                let y = other.mul(a % n, b % n);
                mul[a * m * n + b] = x * n + y;
            }
        }
        Self::from_trusted(m * n, mul)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elt_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.elt_order(a) == self.order)
    }

    fn center_size(&self) -> usize {
        (0..self.order).filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a))).count()
    }

    fn subgroup_generated(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// A generating set chosen greedily, largest element orders first.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.order).collect();
        by_order.sort_by_key(|&a| std::cmp::Reverse(self.elt_order(a)));
        let mut gens = Vec::new();
        let mut reached = self.subgroup_generated(&gens);
        for a in by_order {
            if !reached[a] {
                gens.push(a);
                reached = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    /// Extends `gens[k] ↦ images[k]` to a homomorphism into `target`, if the
    /// assignment is consistent.
    fn extend_hom(&self, gens: &[usize], images: &[usize], target: &CayleyTable) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = target.mul(map[x], h);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// All isomorphisms `self → target` as image vectors; stops after `limit`.
    fn isomorphisms(&self, target: &CayleyTable, limit: usize) -> Vec<Vec<usize>> {
        if self.order != target.order {
            return Vec::new();
        }
        let gens = self.generators();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| (0..target.order).filter(|&h| target.elt_order(h) == self.elt_order(g)).collect())
            .collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        'outer: loop {
            if candidates.iter().any(Vec::is_empty) {
                break;
            }
            let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cands)| cands[c]).collect();
            if let Some(map) = self.extend_hom(&gens, &images, target) {
                let mut hit = vec![false; self.order];
                if map.iter().all(|&y| !std::mem::replace(&mut hit[y], true)) {
                    out.push(map);
                    if out.len() >= limit {
                        break;
                    }
                }
            }
            for k in (0..choice.len()).rev() {
                choice[k] += 1;
                if choice[k] < candidates[k].len() {
                    continue 'outer;
                }
                choice[k] = 0;
            }
            break;
        }
        out
    }

    pub fn is_isomorphic(&self, other: &CayleyTable) -> bool {
        self.invariants() == other.invariants() && !self.isomorphisms(other, 1).is_empty()
    }

    /// `Aut(G)` as image vectors; the identity comes first.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let mut auts = self.isomorphisms(self, usize::MAX);
        auts.sort();
        auts
    }

    fn invariants(&self) -> (Vec<usize>, usize) {
        let mut orders: Vec<usize> = (0..self.order).map(|a| self.elt_order(a)).collect();
        orders.sort_unstable();
        (orders, self.center_size())
    }

    /// `G = ⟨A, t⟩` with `t^q = a0` and `t a t^{-1} = φ(a)`; the element
    /// `a t^k` has index `k·|A| + a`.
    fn cyclic_extension(&self, q: usize, phi: &[usize], a0: usize) -> CayleyTable {
        let m = self.order;
        let n = m * q;
        let mut phi_pows = vec![(0..m).collect::<Vec<_>>()];
        for k in 1..q {
            let prev = &phi_pows[k - 1];
            phi_pows.push(prev.iter().map(|&x| phi[x]).collect());
        }
        let mut mul = vec![0; n * n];
        for x in 0..n {
            let (a, k) = (x % m, x / m);
            for y in 0..n {
                let (b, l) = (y % m, y / m);
                let mut c = self.mul(a, phi_pows[k][b]);
                if k + l >= q {
                    c = self.mul(c, a0);
                }
                mul[x * n + y] = ((k + l) % q) * m + c;
            }
        }
        Self::from_trusted(n, mul)
    }

    /// The left regular representation, `m ↦ (x ↦ m x)`.
    pub fn left_regular(&self, m: usize) -> Vec<usize> {
        (0..self.order).map(|x| self.mul(m, x)).collect()
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
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

/// Orders whose groups are all solvable.
pub const SOLVABLE_BOUND: usize = 59;

fn cache() -> &'static Mutex<HashMap<usize, Vec<CayleyTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<CayleyTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// One representative of every isomorphism class of groups of order `n`,
/// abelian groups first, for `n ≤ 59`.
pub fn groups_of_order(n: usize) -> Result<Vec<CayleyTable>> {
    if n == 0 || n > SOLVABLE_BOUND {
        return Err(Error::CapExceeded { size: n, cap: SOLVABLE_BOUND });
    }
    if let Some(found) = cache().lock().expect("catalog cache").get(&n) {
        return Ok(found.clone());
    }
    let groups = build_groups(n)?;
    cache().lock().expect("catalog cache").insert(n, groups.clone());
    Ok(groups)
}

fn build_groups(n: usize) -> Result<Vec<CayleyTable>> {
    if n == 1 {
        return Ok(vec![CayleyTable::cyclic(1)]);
    }
    let mut reps: Vec<CayleyTable> = Vec::new();
    let push = |g: CayleyTable, reps: &mut Vec<CayleyTable>| {
        if !reps.iter().any(|r| r.is_isomorphic(&g)) {
            reps.push(g);
        }
    };
    for q in prime_factors(n) {
        for a in groups_of_order(n / q)? {
            let auts = a.automorphisms();
            let inner = |a0: usize| -> Vec<usize> { (0..a.order).map(|x| a.mul(a.mul(a0, x), a.inv(a0))).collect() };
            for phi in &auts {
                let mut phi_q: Vec<usize> = (0..a.order).collect();
                for _ in 0..q {
                    phi_q = phi_q.iter().map(|&x| phi[x]).collect();
                }
                for a0 in (0..a.order).filter(|&a0| phi[a0] == a0) {
                    if phi_q == inner(a0) {
                        push(a.cyclic_extension(q, phi, a0), &mut reps);
                    }
                }
            }
        }
    }
    reps.sort_by_key(|g| (!g.is_abelian(), !g.is_cyclic(), g.invariants()));
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_group_counts() {
        // number of groups of order n, n = 1..16
        let expected = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];
        for (k, &count) in expected.iter().enumerate() {
            assert_eq!(groups_of_order(k + 1).unwrap().len(), count, "order {}", k + 1);
        }
        assert_eq!(groups_of_order(27).unwrap().len(), 5);
        assert_eq!(groups_of_order(25).unwrap().len(), 2);
        assert!(groups_of_order(60).is_err());
    }

    #[test]
    fn tables_are_groups() {
        for n in [6, 8, 9, 12, 27] {
            for g in groups_of_order(n).unwrap() {
                CayleyTable::new(g.order(), g.mul.clone()).unwrap();
            }
        }
    }

    #[test]
    fn automorphism_group_orders() {
        assert_eq!(CayleyTable::cyclic(9).automorphisms().len(), 6);
        let c3 = CayleyTable::cyclic(3);
        assert_eq!(c3.direct_product(&c3).automorphisms().len(), 48);
        let s3 = groups_of_order(6).unwrap().into_iter().find(|g| !g.is_abelian()).unwrap();
        assert_eq!(s3.automorphisms().len(), 6);
        assert!(CayleyTable::cyclic(6).is_isomorphic(&CayleyTable::cyclic(2).direct_product(&c3)));
    }
}
