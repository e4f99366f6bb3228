//! Permutations of `0..d` and the finite groups they generate.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `0..d`, stored as its image vector. Composition is right
/// to left: `(a * b)(x) = a(b(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { images: (0..degree).collect() }
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm { images })
    }

    /// Cycles are written on `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let y = cycle[(k + 1) % cycle.len()];
                if x >= degree || y >= degree {
                    return Err(Error::IndexOutOfRange { index: x.max(y) as u64, bound: degree as u64 });
                }
                images[x] = y;
            }
        }
        Perm::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    /// `g self g^{-1}`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }

    /// Cycle lengths in increasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1u64, |acc, l| num_integer::lcm(acc, l as u64))
    }

    pub fn has_fixed_point(&self) -> bool {
        self.images.iter().enumerate().any(|(i, &x)| i == x)
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Perm::new(images)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Self {
        p.images
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut cycles = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x.to_string());
                x = self.images[x];
            }
            cycles.push(format!("({})", cycle.join(" ")));
        }
        if cycles.is_empty() {
            write!(f, "()")
        } else {
            write!(f, "{}", cycles.concat())
        }
    }
}

/// A permutation group given by its sorted element list and generators.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Perm>,
    generators: Vec<Perm>,
}

impl FiniteGroup {
    /// Closure of `generators` under composition.
    pub fn generate(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::Mismatch(format!("generator of degree {} in a group of degree {degree}", g.degree())));
        }
        let id = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = g.compose(&x);
                if !seen.contains(&y) {
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        Ok(FiniteGroup { degree, elements, generators })
    }

    /// Checks that `elements` is closed and contains the identity.
    pub fn from_elements(degree: usize, elements: Vec<Perm>) -> Result<Self> {
        let set: HashSet<&Perm> = elements.iter().collect();
        if !set.contains(&Perm::identity(degree)) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for a in &elements {
            if a.degree() != degree {
                return Err(Error::Mismatch("mixed degrees".into()));
            }
            if !set.contains(&a.inverse()) {
                return Err(Error::NotSubgroup(format!("inverse of {a:?} missing")));
            }
            for b in &elements {
                if !set.contains(&a.compose(b)) {
                    return Err(Error::NotSubgroup(format!("{a:?}{b:?} missing")));
                }
            }
        }
        let mut elements: Vec<Perm> = set.into_iter().cloned().collect();
        elements.sort();
        let generators = elements.clone();
        Ok(FiniteGroup { degree, elements, generators })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Sorted.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Whether `g N g^{-1} = N`.
    pub fn is_normalized_by(&self, g: &Perm) -> bool {
        self.generators.iter().all(|x| self.contains(&x.conjugate_by(g)))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().all(|a| gens.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order() as u64;
        self.elements.iter().any(|g| g.order() == n)
    }

    /// Orbit of `x` under the group.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut queue = vec![x];
        let mut out = vec![x];
        while let Some(y) = queue.pop() {
            for g in &self.generators {
                let z = g.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    queue.push(z);
                    out.push(z);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// The subgroup generated by `gens`, which must lie in this group.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<FiniteGroup> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(Error::NotSubgroup(format!("{g:?} is not in the group")));
        }
        FiniteGroup::generate(self.degree, gens)
    }

    pub fn intersection_order(&self, other: &FiniteGroup) -> usize {
        self.elements.iter().filter(|g| other.contains(g)).count()
    }

    /// Conjugacy classes, each sorted, in order of their least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Perm>> {
        let mut class_of: HashMap<&Perm, usize> = HashMap::new();
        let mut classes: Vec<Vec<Perm>> = Vec::new();
        for x in &self.elements {
            if class_of.contains_key(x) {
                continue;
            }
            let mut class: HashSet<Perm> = HashSet::from([x.clone()]);
            let mut frontier = vec![x.clone()];
            while let Some(y) = frontier.pop() {
                for g in &self.generators {
                    let z = y.conjugate_by(g);
                    if class.insert(z.clone()) {
                        frontier.push(z);
                    }
                }
            }
            let mut class: Vec<Perm> = class.into_iter().collect();
            class.sort();
            for y in &class {
                let key = &self.elements[self.elements.binary_search(y).expect("class lies in the group")];
                class_of.insert(key, classes.len());
            }
            classes.push(class);
        }
        classes
    }

    /// All normal subgroups, sorted by order then elements.
    pub fn normal_subgroups(&self) -> Vec<FiniteGroup> {
        let closures: Vec<FiniteGroup> = self
            .conjugacy_classes()
            .into_iter()
            .map(|c| FiniteGroup::generate(self.degree, c).expect("same degree"))
            .collect();
        let mut found: Vec<FiniteGroup> = vec![FiniteGroup::generate(self.degree, vec![]).expect("trivial")];
        let mut keys: HashSet<Vec<Perm>> = found.iter().map(|g| g.elements.clone()).collect();
        let mut frontier = found.clone();
        while let Some(h) = frontier.pop() {
            for c in &closures {
                if c.elements.iter().all(|x| h.contains(x)) {
                    continue;
                }
                let mut gens = h.generators.clone();
                gens.extend(c.generators.iter().cloned());
                let joined = FiniteGroup::generate(self.degree, gens).expect("same degree");
                if keys.insert(joined.elements.clone()) {
                    frontier.push(joined.clone());
                    found.push(joined);
                }
            }
        }
        found.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        found
    }

    /// `Cent_{Sym}(N)` for a regular group `N`: the maps `r(0) ↦ r(s)`.
    pub fn regular_centralizer(&self) -> Result<FiniteGroup> {
        let mut by_point: Vec<Option<&Perm>> = vec![None; self.degree];
        for r in &self.elements {
            by_point[r.apply(0)] = Some(r);
        }
        if self.order() != self.degree || by_point.iter().any(Option::is_none) {
            return Err(Error::NotSubgroup("centralizer formula needs a regular group".into()));
        }
        let elements = (0..self.degree)
            .map(|s| Perm::new((0..self.degree).map(|x| by_point[x].expect("regular").apply(s)).collect()))
            .collect::<Result<Vec<_>>>()?;
        let mut elements = elements;
        elements.sort();
        let generators = elements.clone();
        Ok(FiniteGroup { degree: self.degree, elements, generators })
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(degree {}, order {}, gens {:?})", self.degree, self.order(), self.generators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        let r = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let t = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        FiniteGroup::generate(3, vec![r, t]).unwrap()
    }

    #[test]
    fn perm_basics() {
        let a = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        assert_eq!(a.order(), 4);
        assert_eq!(a.compose(&a.inverse()), Perm::identity(4));
        assert_eq!(a.cycle_type(), vec![4]);
        assert_eq!(format!("{a:?}"), "(0 1 2 3)");
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        let b = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        assert_eq!(a.compose(&b).apply(0), 2);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, "[1,2,3,0]");
        assert_eq!(serde_json::from_str::<Perm>(&json).unwrap(), a);
        assert!(serde_json::from_str::<Perm>("[1,1]").is_err());
    }

    #[test]
    fn group_structure() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.conjugacy_classes().iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 3, 2]);
        let normals: Vec<usize> = g.normal_subgroups().iter().map(FiniteGroup::order).collect();
        assert_eq!(normals, vec![1, 3, 6]);
        let c3 = g.subgroup(vec![Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()]).unwrap();
        assert!(c3.is_cyclic() && c3.is_transitive());
        assert_eq!(c3.regular_centralizer().unwrap(), FiniteGroup::from_elements(3, c3.elements().to_vec()).unwrap());
    }

    #[test]
    fn centralizer_of_nonabelian_regular_group() {
        // left regular representation of S3 on itself
        let g = s3();
        let elts = g.elements().to_vec();
        let idx = |p: &Perm| elts.iter().position(|q| q == p).unwrap();
        let left: Vec<Perm> =
            elts.iter().map(|a| Perm::new(elts.iter().map(|x| idx(&a.compose(x))).collect()).unwrap()).collect();
        let left = FiniteGroup::from_elements(6, left).unwrap();
        let right = left.regular_centralizer().unwrap();
        assert_eq!(right.order(), 6);
        assert_ne!(right, left);
        for a in left.elements() {
            for b in right.elements() {
                assert_eq!(a.compose(b), b.compose(a));
            }
        }
    }
}
