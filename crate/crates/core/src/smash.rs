//! The smash product `Q(w_n) # H_n`, its matrix model in `End_Q(Q(w_n))`
//! and the Hom pieces between levels of the radical tower.
//!
//! Matrices act on column vectors over the basis `1, w, …, w^{p^n-1}`:
//! column `k` holds the image of `w^k`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::json;

use crate::error::{Error, Result};
use crate::hopf::validate_radicand;
use crate::linalg::{rank, SparseVec};
use crate::rat::Rat;
use crate::report::Outcome;

/// Seed used by the randomized checks when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 0x5EED_0001;

/// `Σ c_{j,i} w^j # e_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct SmashElt {
    p: u64,
    n: u32,
    radicand: Rat,
    terms: BTreeMap<(u64, u64), Rat>,
}

impl SmashElt {
    pub fn zero(p: u64, n: u32, radicand: Rat) -> Self {
        SmashElt { p, n, radicand, terms: BTreeMap::new() }
    }

    /// `w^j # e_i`, indices reduced mod `p^n`.
    pub fn basis(p: u64, n: u32, radicand: Rat, j: u64, i: u64) -> Self {
        let mut x = Self::zero(p, n, radicand);
        let pn = x.order();
        x.terms.insert((j % pn, i % pn), Rat::one());
        x
    }

    /// `1 # 1 = Σ_i 1 # e_i`.
    pub fn one(p: u64, n: u32, radicand: Rat) -> Self {
        let mut x = Self::zero(p, n, radicand);
        for i in 0..x.order() {
            x.terms.insert((0, i), Rat::one());
        }
        x
    }

    pub fn from_terms(p: u64, n: u32, radicand: Rat, terms: impl IntoIterator<Item = ((u64, u64), Rat)>) -> Self {
        let mut x = Self::zero(p, n, radicand);
        let pn = x.order();
        for ((j, i), c) in terms {
            x.add_term(j % pn, i % pn, &c);
        }
        x
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

    pub fn order(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn terms(&self) -> &BTreeMap<(u64, u64), Rat> {
        &self.terms
    }

    pub fn coeff(&self, j: u64, i: u64) -> Rat {
        self.terms.get(&(j, i)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, j: u64, i: u64, c: &Rat) {
        let e = self.terms.entry((j, i)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(j, i));
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.n != other.n || self.radicand != other.radicand {
            return Err(Error::Mismatch(format!(
                "smash products at (p={}, n={}, a={}) and (p={}, n={}, a={})",
                self.p, self.n, self.radicand, other.p, other.n, other.radicand
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&(j, i), c) in &other.terms {
            out.add_term(j, i, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.p, self.n, self.radicand.clone());
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(k, v)| (*k, v * c)).collect();
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("rationals serialize")
    }
}

impl Serialize for SmashElt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<_> = self.terms.iter().map(|(&(j, i), c)| json!({ "j": j, "i": i, "c": c })).collect();
        let mut s = serializer.serialize_struct("SmashElt", 4)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("a", &self.radicand)?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

impl fmt::Debug for SmashElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.terms.iter().map(|(&(j, i), c)| format!("{c}·w^{j}#e_{i}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `(w^j # e_i)(w^k # e_l) = w^{j+k} # e_l` when `k + l ≡ i`, else 0; the
/// `w`-exponent wraps with a factor `a`.
pub fn smash_mult(x: &SmashElt, y: &SmashElt) -> Result<SmashElt> {
    x.check_compatible(y)?;
    let pn = x.order();
    let mut out = SmashElt::zero(x.p, x.n, x.radicand.clone());
    for (&(j, i), c) in &x.terms {
        for (&(k, l), d) in &y.terms {
            if (k + l) % pn != i {
                continue;
            }
            let mut v = c * d;
            if j + k >= pn {
                v *= &x.radicand;
            }
            out.add_term((j + k) % pn, l, &v);
        }
    }
    Ok(out)
}

/// A square rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: Vec<Vec<Rat>>,
}

impl QMatrix {
    pub fn zero(size: usize) -> Self {
        QMatrix { rows: vec![vec![Rat::zero(); size]; size] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for (i, row) in m.rows.iter_mut().enumerate() {
            row[i] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::Mismatch("matrix is not square".into()));
        }
        Ok(QMatrix { rows })
    }

    /// Integer entries, for literals in tests and examples.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rat::from_int(v)).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.rows[r][c] = v;
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::Mismatch("matrix sizes differ".into()));
        }
        let n = self.size();
        let mut out = Self::zero(n);
        for r in 0..n {
            for k in 0..n {
                let a = &self.rows[r][k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &other.rows[k][c];
                    if !b.is_zero() {
                        out.rows[r][c] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row-major flattening as a sparse vector of length `size²`.
    pub fn flatten(&self) -> SparseVec {
        let n = self.size();
        SparseVec::from_pairs(
            self.rows
                .iter()
                .enumerate()
                .flat_map(|(r, row)| {
                    row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(c, v)| (r * n + c, v.clone()))
                })
                .collect(),
        )
    }

    /// JSON form: rows of `"num/den"` strings with the field parameters.
    pub fn to_json(&self, p: u64, n: u32, a: &Rat) -> serde_json::Value {
        json!({ "p": p, "n": n, "a": a, "rows": self.rows })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let rows = value.get("rows").unwrap_or(value);
        let rows: Vec<Vec<Rat>> = serde_json::from_value(rows.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_rows(rows)
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // integers print bare, fractions as n/d
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|v| if v.is_integer() { v.numer().to_string() } else { v.to_string() }).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", padded.join(" "))?;
        }
        Ok(())
    }
}

/// The endomorphism of `Q(w_n)` given by `x`: `(w^j # e_i)(w^k) = δ_{ik} w^{j+k}`.
pub fn to_end_matrix(x: &SmashElt) -> QMatrix {
    let pn = x.order();
    let mut m = QMatrix::zero(pn as usize);
    for (&(j, i), c) in &x.terms {
        let row = ((j + i) % pn) as usize;
        let v = if j + i >= pn { c * &x.radicand } else { c.clone() };
        m.rows[row][i as usize] += &v;
    }
    m
}

/// Left multiplication by `w`.
pub fn l_w(p: u64, n: u32, a: &Rat) -> QMatrix {
    let pn = p.pow(n);
    let x = SmashElt::from_terms(p, n, a.clone(), (0..pn).map(|i| ((1, i), Rat::one())));
    to_end_matrix(&x)
}

/// The `p^{2n}` basis elements `w^j # e_i`, `j`-major.
pub fn smash_basis(p: u64, n: u32, a: &Rat) -> Vec<SmashElt> {
    let pn = p.pow(n);
    (0..pn).flat_map(|j| (0..pn).map(move |i| (j, i))).map(|(j, i)| SmashElt::basis(p, n, a.clone(), j, i)).collect()
}

fn random_smash(rng: &mut ChaCha8Rng, p: u64, n: u32, a: &Rat) -> SmashElt {
    let pn = p.pow(n);
    let count = rng.gen_range(1..=4);
    let terms: Vec<_> = (0..count)
        .map(|_| {
            let j = rng.gen_range(0..pn);
            let i = rng.gen_range(0..pn);
            let c = Rat::new(rng.gen_range(-9..=9), rng.gen_range(1..=5));
            ((j, i), c)
        })
        .collect();
    SmashElt::from_terms(p, n, a.clone(), terms)
}

/// Bijectivity of `Q(w_n) # H_n → End_Q(Q(w_n))` (rank `p^{2n}`) and its
/// multiplicativity: exhaustively on basis pairs when there are at most
/// `10^4` of them, and on `samples` seeded random pairs.
pub fn iso_check(p: u64, n: u32, a: &Rat, seed: u64, samples: usize) -> Result<Outcome> {
    crate::cyclotomic::FieldDescriptor::new(p, n)?;
    validate_radicand(p, a)?;
    let pn = p.pow(n) as usize;
    let basis = smash_basis(p, n, a);
    let mats: Vec<QMatrix> = basis.iter().map(to_end_matrix).collect();
    let flat: Vec<SparseVec> = mats.iter().map(QMatrix::flatten).collect();
    let r = rank(pn * pn, &flat);
    let expected = pn * pn;
    if r != expected {
        return Ok(Outcome::fail(json!({ "rank": r, "expected": expected }), json!({ "rank": r })));
    }

    let mut pairs_checked = 0usize;
    if basis.len() * basis.len() <= 10_000 {
        for (x, mx) in basis.iter().zip(&mats) {
            for (y, my) in basis.iter().zip(&mats) {
                pairs_checked += 1;
                if to_end_matrix(&smash_mult(x, y)?) != mx.try_mul(my)? {
                    return Ok(Outcome::fail(
                        json!({ "x": x.to_json(), "y": y.to_json() }),
                        json!({ "rank": r, "pairs_checked": pairs_checked }),
                    ));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = random_smash(&mut rng, p, n, a);
        let y = random_smash(&mut rng, p, n, a);
        pairs_checked += 1;
        if to_end_matrix(&smash_mult(&x, &y)?) != to_end_matrix(&x).try_mul(&to_end_matrix(&y))? {
            return Ok(Outcome::fail(
                json!({ "x": x.to_json(), "y": y.to_json(), "seed": seed }),
                json!({ "rank": r, "pairs_checked": pairs_checked }),
            ));
        }
    }
    Ok(Outcome::pass(json!({ "rank": r, "pairs_checked": pairs_checked, "seed": seed })))
}

/// The unique `c_{j,i}` with `Σ c_{j,i} w^j # e_i ↦ m`: entry `(r, k)` is
/// `c_{r-k, k}`, times `a` when `r < k`.
pub fn decompose_endomorphism(m: &QMatrix, p: u64, n: u32, a: &Rat) -> Result<SmashElt> {
    let pn = p.pow(n) as usize;
    if m.size() != pn {
        return Err(Error::Mismatch(format!("matrix of size {} for p^n = {pn}", m.size())));
    }
    let a_inv = a.recip().ok_or(Error::InvalidRadicand {
        radicand: a.to_string(),
        reason: "zero radicand makes the decomposition non-unique".into(),
    })?;
    let mut out = SmashElt::zero(p, n, a.clone());
    for r in 0..pn {
        for k in 0..pn {
            let v = m.get(r, k);
            if v.is_zero() {
                continue;
            }
            let j = (r + pn - k) % pn;
            let c = if r < k { v * &a_inv } else { v.clone() };
            out.add_term(j as u64, k as u64, &c);
        }
    }
    Ok(out)
}

/// Index pairs `(j, i)` spanning the copy of `Hom_Q(Q(w_n), Q(w_m))` inside
/// a smash product, with the level of that smash product.
///
/// For `m ≥ n` the pairs are `w_m^j # e_{m,i}` with `p^{m-n} | i`; for
/// `m < n` they are `w_n^j # e_{n,i}` with `p^{n-m} | j + i`.
pub fn hom_subalgebra_basis(n: u32, m: u32, p: u64) -> Result<(u32, Vec<(u64, u64)>)> {
    crate::cyclotomic::FieldDescriptor::new(p, n.max(m))?;
    if n == 0 || m == 0 {
        return Err(Error::InvalidLevel("levels start at 1".into()));
    }
    if m >= n {
        let pm = p.pow(m);
        let step = p.pow(m - n);
        let pairs = (0..pm).flat_map(|j| (0..pm).step_by(step as usize).map(move |i| (j, i))).collect();
        Ok((m, pairs))
    } else {
        let pn = p.pow(n);
        let q = p.pow(n - m);
        let pairs = (0..pn).flat_map(|j| (0..pn).map(move |i| (j, i))).filter(|(j, i)| (j + i) % q == 0).collect();
        Ok((n, pairs))
    }
}

/// Dimension, matrix-shape and closure checks for [`hom_subalgebra_basis`]:
/// the span has dimension `p^{n+m}`, consists exactly of the matrices with
/// domain `Q(w_n)` (resp. image in `Q(w_m)`), and is closed under
/// products whenever they compose.
pub fn hom_subalgebra_check(n: u32, m: u32, p: u64, a: &Rat) -> Result<Outcome> {
    validate_radicand(p, a)?;
    let (level, pairs) = hom_subalgebra_basis(n, m, p)?;
    let size = p.pow(level) as usize;
    let expected = p.pow(n + m) as usize;
    let elts: Vec<SmashElt> = pairs.iter().map(|&(j, i)| SmashElt::basis(p, level, a.clone(), j, i)).collect();
    let mats: Vec<QMatrix> = elts.iter().map(to_end_matrix).collect();
    let r = rank(size * size, &mats.iter().map(QMatrix::flatten).collect::<Vec<_>>());

    // the target space: columns at multiples of p^{m-n} (m ≥ n), or rows at
    // multiples of p^{n-m} (m < n)
    let allowed = |row: usize, col: usize| {
        if m >= n {
            col.is_multiple_of(p.pow(m - n) as usize)
        } else {
            row.is_multiple_of(p.pow(n - m) as usize)
        }
    };
    let shape_ok = mats.iter().all(|mx| (0..size).all(|r| (0..size).all(|c| mx.get(r, c).is_zero() || allowed(r, c))));
    let target_dim = (0..size).flat_map(|r| (0..size).map(move |c| (r, c))).filter(|&(r, c)| allowed(r, c)).count();

    let in_span = |x: &SmashElt| x.terms.keys().all(|k| pairs.binary_search(k).is_ok());
    let mut closure_ok = true;
    for x in &elts {
        for y in &elts {
            if !in_span(&smash_mult(x, y)?) {
                closure_ok = false;
            }
        }
    }
    let data = json!({
        "level": level,
        "pairs": pairs.len(),
        "rank": r,
        "expected": expected,
        "target_dimension": target_dim,
        "closed": closure_ok,
    });
    let ok = pairs.len() == expected && r == expected && target_dim == expected && shape_ok && closure_ok;
    Ok(Outcome::check(ok, data.clone(), || data))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> Rat {
        Rat::from_int(2)
    }

    #[test]
    fn product_examples() {
        let x = SmashElt::basis(3, 1, two(), 1, 2);
        let y = SmashElt::basis(3, 1, two(), 1, 1);
        assert_eq!(smash_mult(&x, &y).unwrap(), SmashElt::basis(3, 1, two(), 2, 1));
        let z = SmashElt::basis(3, 1, two(), 1, 0);
        assert!(smash_mult(&x, &z).unwrap().is_zero());
        let one = SmashElt::one(3, 1, two());
        let t = SmashElt::from_terms(3, 1, two(), [((2, 1), Rat::new(3, 7)), ((1, 0), Rat::from_int(-1))]);
        assert_eq!(smash_mult(&one, &t).unwrap(), t);
        assert_eq!(smash_mult(&t, &one).unwrap(), t);
    }

    #[test]
    fn displayed_matrices() {
        let a = Rat::from_int(5);
        let lw = l_w(3, 1, &a);
        let expect = QMatrix::from_ints(&[&[0, 0, 5], &[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert_eq!(lw, expect);
        let e1 = to_end_matrix(&SmashElt::basis(3, 1, a.clone(), 0, 1));
        assert_eq!(e1, QMatrix::from_ints(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]]).unwrap());
        let we1 = to_end_matrix(&SmashElt::basis(3, 1, a, 1, 1));
        assert_eq!(we1, QMatrix::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]).unwrap());
    }

    #[test]
    fn decompose_examples() {
        let a = two();
        let id = decompose_endomorphism(&QMatrix::identity(3), 3, 1, &a).unwrap();
        assert_eq!(id, SmashElt::one(3, 1, a.clone()));
        let lw = decompose_endomorphism(&l_w(3, 1, &a), 3, 1, &a).unwrap();
        assert_eq!(lw, SmashElt::from_terms(3, 1, a.clone(), (0..3).map(|i| ((1, i), Rat::one()))));
        assert!(decompose_endomorphism(&QMatrix::identity(3), 3, 1, &Rat::zero()).is_err());
    }

    #[test]
    fn iso_small() {
        let o = iso_check(3, 1, &two(), DEFAULT_SEED, 20).unwrap();
        assert!(o.passed, "{o:?}");
        assert_eq!(o.data["rank"], 9);
    }

    #[test]
    fn hom_counts() {
        let (lvl, pairs) = hom_subalgebra_basis(1, 2, 3).unwrap();
        assert_eq!((lvl, pairs.len()), (2, 27));
        assert!(pairs.iter().all(|(_, i)| i % 3 == 0));
        let (lvl, pairs) = hom_subalgebra_basis(2, 1, 3).unwrap();
        assert_eq!((lvl, pairs.len()), (2, 27));
        assert!(pairs.iter().all(|(j, i)| (j + i) % 3 == 0));
        assert_eq!(hom_subalgebra_basis(2, 2, 3).unwrap().1.len(), 81);
        for (n, m) in [(1, 2), (2, 1), (2, 2)] {
            assert!(hom_subalgebra_check(n, m, 3, &two()).unwrap().passed);
        }
    }
}
