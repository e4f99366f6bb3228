//! Exact linear algebra over Q: sparse row echelon forms, rank, kernels and
//! dense solves.
//!
//! [`Echelon`] keeps every stored row with its pivot at the smallest column
//! index it touches and a pivot coefficient of one. Incoming vectors are
//! reduced left to right, so the cost of an insertion is governed by the
//! fill-in of the rows it touches; callers that know the structure of their
//! system can order the columns so that fill stays small.

use crate::rat::Rat;

/// A sparse vector over Q: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rat)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds from unordered `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, Rat)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Rat)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += &v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Rat]) -> Self {
        SparseVec {
            entries: values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect(),
        }
    }

    pub fn unit(index: usize) -> Self {
        SparseVec { entries: vec![(index, Rat::one())] }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Rat)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> Rat {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Rat)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn scale(&self, c: &Rat) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &SparseVec, c: &Rat) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() || y < b.len() {
            let take_a = y == b.len() || (x < a.len() && a[x].0 < b[y].0);
            let take_b = x == a.len() || (y < b.len() && b[y].0 < a[x].0);
            if take_a {
                out.push(a[x].clone());
                x += 1;
            } else if take_b {
                out.push((b[y].0, &b[y].1 * c));
                y += 1;
            } else {
                let v = &a[x].1 + &(&b[y].1 * c);
                if !v.is_zero() {
                    out.push((a[x].0, v));
                }
                x += 1;
                y += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn dot(&self, dense: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, v) in &self.entries {
            if !dense[*i].is_zero() {
                acc += &(v * &dense[*i]);
            }
        }
        acc
    }

    /// Re-indexes every entry through `map`.
    pub fn permute(&self, map: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|(i, v)| (map(*i), v.clone())).collect())
    }
}

impl FromIterator<(usize, Rat)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Rat)>>(iter: T) -> Self {
        SparseVec::from_pairs(iter.into_iter().collect())
    }
}

/// Incrementally maintained row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.leading().expect("stored rows are nonzero").0)
    }

    /// Reduces `v` against the stored rows; the result has no entry in a
    /// pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        let mut pos = 0;
        while pos < out.entries.len() {
            let (col, coeff) = &out.entries[pos];
            match self.pivot_row[*col] {
                Some(r) => {
                    let c = -coeff;
                    // the stored row only touches columns >= col, so the
                    // prefix before `pos` is unchanged
                    out = out.add_scaled(&self.rows[r], &c);
                }
                None => pos += 1,
            }
        }
        out
    }

    /// Inserts `v`; returns `true` when it was independent of the stored rows.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        match r.leading() {
            None => false,
            Some((col, lead)) => {
                let inv = lead.recip().expect("leading entry is nonzero");
                let row = r.scale(&inv);
                self.pivot_row[col] = Some(self.rows.len());
                self.rows.push(row);
                true
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| self.pivot_row[*c].is_none()).collect()
    }

    /// A basis of `{x : r . x = 0 for every stored row r}`, one vector per
    /// free column `f`, normalised so that `x_f = 1` and every other free
    /// coordinate is zero.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r].entries[0].0));
        let free = self.free_columns();
        let mut out = Vec::with_capacity(free.len());
        let mut x = vec![Rat::zero(); self.ncols];
        for &f in &free {
            let mut touched = vec![f];
            x[f] = Rat::one();
            for &r in &order {
                let row = &self.rows[r];
                let pivot = row.entries[0].0;
                let mut acc = Rat::zero();
                for (c, v) in &row.entries[1..] {
                    if !x[*c].is_zero() {
                        acc -= &(v * &x[*c]);
                    }
                }
                if !acc.is_zero() {
                    x[pivot] = acc;
                    touched.push(pivot);
                }
            }
            touched.sort_unstable();
            out.push(SparseVec { entries: touched.iter().map(|&c| (c, std::mem::take(&mut x[c]))).collect() });
        }
        out
    }
}

/// Rank of a family of vectors of length `ncols`.
pub fn rank(ncols: usize, vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new(ncols);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Kernel of the matrix with the given sparse rows, as a basis of column
/// vectors (see [`Echelon::kernel_basis`]).
pub fn kernel(ncols: usize, rows: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.kernel_basis()
}

/// Dense rank of a row-major matrix.
pub fn dense_rank(rows: &[Vec<Rat>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let sparse: Vec<SparseVec> = rows.iter().map(|r| SparseVec::from_dense(r)).collect();
    rank(ncols, &sparse)
}

/// Solves the square system `a x = b` by Gauss-Jordan elimination; `None`
/// when `a` is singular.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip()?;
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = &*v - &(&f * p);
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn sv(vals: &[i64]) -> SparseVec {
        SparseVec::from_dense(&vals.iter().map(|&v| r(v)).collect::<Vec<_>>())
    }

    #[test]
    fn rank_of_dependent_family() {
        let vs = vec![sv(&[1, 2, 3]), sv(&[2, 4, 6]), sv(&[0, 1, 1])];
        assert_eq!(rank(3, &vs), 2);
    }

    #[test]
    fn kernel_is_annihilated() {
        let rows = vec![sv(&[1, 1, 0, 2]), sv(&[0, 1, -1, 1])];
        let ker = kernel(4, &rows);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            let dense = k.to_dense(4);
            for row in &rows {
                assert!(row.dot(&dense).is_zero());
            }
        }
        assert_eq!(rank(4, &ker), 2);
    }

    #[test]
    fn solve_two_by_two() {
        let a = vec![vec![r(2), r(1)], vec![r(1), r(3)]];
        let x = solve(&a, &[r(3), r(5)]).unwrap();
        assert_eq!(x, vec![Rat::new(4, 5), Rat::new(7, 5)]);
        assert!(solve(&[vec![r(1), r(2)], vec![r(2), r(4)]], &[r(1), r(1)]).is_none());
    }

    #[test]
    fn add_scaled_cancels() {
        let a = sv(&[1, 2, 0]);
        let b = sv(&[1, 0, 5]);
        let c = a.add_scaled(&b, &r(-1));
        assert_eq!(c, sv(&[0, 2, -5]));
    }
}
