//! Exact sparse linear algebra over arbitrary-precision rationals.
//!
//! All elimination is fraction-free: rows are scaled to integer content
//! once, pivoting cross-multiplies and re-normalizes by the gcd of the
//! row, so intermediate entries stay small. Pivot rows are selected
//! Markowitz-style (fewest nonzeros first) but pivot *columns* are always
//! taken left to right, which makes the reduced echelon form — and hence
//! every kernel basis returned here — canonical: the same matrix always
//! yields bit-identical output regardless of entry insertion order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rat::{fmt_rat, parse_rat, zero_vec, Rat, RatVector};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("gram matrix is singular")]
    SingularGram,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("malformed matrix dump: {0}")]
    BadDump(String),
}

/// Sparse matrix over `Rat`. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseRatMatrix {
    nrows: usize,
    ncols: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

impl SparseRatMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<RatVector>, ncols: usize) -> Self {
        let mut m = Self::zero(rows.len(), ncols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), ncols);
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[RatVector], nrows: usize) -> Self {
        let mut m = Self::zero(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.nrows && c < self.ncols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rat) {
        if v.is_zero() {
            return;
        }
        assert!(r < self.nrows && c < self.ncols, "index out of range");
        let cur = self.entries.entry((r, c)).or_insert_with(Rat::zero);
        *cur += v;
        if cur.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.ncols, self.nrows);
        for (&(r, c), v) in &self.entries {
            m.entries.insert((c, r), v.clone());
        }
        m
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero(self.nrows, self.ncols);
        }
        let mut m = self.clone();
        for v in m.entries.values_mut() {
            *v *= s;
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut m = self.clone();
        for (&(r, c), v) in &other.entries {
            m.add_to(r, c, v);
        }
        m
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "matmul dimension mismatch");
        // group rhs by row for the sparse product
        let mut rhs_rows: BTreeMap<usize, Vec<(usize, &Rat)>> = BTreeMap::new();
        for (&(r, c), v) in &other.entries {
            rhs_rows.entry(r).or_default().push((c, v));
        }
        let mut m = Self::zero(self.nrows, other.ncols);
        for (&(r, k), a) in &self.entries {
            if let Some(row) = rhs_rows.get(&k) {
                for &(c, b) in row {
                    m.add_to(r, c, &(a * b));
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rat]) -> RatVector {
        assert_eq!(self.ncols, v.len());
        let mut out = zero_vec(self.nrows);
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] += a * &v[c];
            }
        }
        out
    }

    pub fn row(&self, r: usize) -> RatVector {
        let mut out = zero_vec(self.ncols);
        for (&(_, c), v) in self.entries.range((r, 0)..(r + 1, 0)) {
            out[c] = v.clone();
        }
        out
    }

    pub fn column(&self, c: usize) -> RatVector {
        let mut out = zero_vec(self.nrows);
        for (&(r, cc), v) in &self.entries {
            if cc == c {
                out[r] = v.clone();
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.ncols);
        let mut m = Self::zero(self.nrows + other.nrows, self.ncols);
        for (&(r, c), v) in &self.entries {
            m.entries.insert((r, c), v.clone());
        }
        for (&(r, c), v) in &other.entries {
            m.entries.insert((r + self.nrows, c), v.clone());
        }
        m
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.nrows, other.nrows);
        let mut m = Self::zero(self.nrows, self.ncols + other.ncols);
        for (&(r, c), v) in &self.entries {
            m.entries.insert((r, c), v.clone());
        }
        for (&(r, c), v) in &other.entries {
            m.entries.insert((r, c + self.ncols), v.clone());
        }
        m
    }

    /// Canonical reduced row echelon form together with its pivot columns.
    pub fn rref(&self) -> Rref {
        let rows: Vec<IntRow> = (0..self.nrows)
            .map(|r| IntRow::from_rat_row(&self.row(r)))
            .filter(|row| !row.cols.is_empty())
            .collect();
        rref_of_rows(rows, self.ncols)
    }

    pub fn rank(&self) -> usize {
        self.rref().pivot_cols.len()
    }

    /// Basis of the exact kernel, in canonical reduced-echelon form:
    /// one vector per free column, ordered by free column index.
    pub fn nullspace(&self) -> Vec<RatVector> {
        let rref = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &c in &rref.pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if is_pivot[free] {
                continue;
            }
            let mut v = zero_vec(self.ncols);
            v[free] = Rat::one();
            for (i, &p) in rref.pivot_cols.iter().enumerate() {
                let coeff = rref.rows[i]
                    .iter()
                    .find(|(c, _)| *c == free)
                    .map(|(_, x)| x.clone());
                if let Some(x) = coeff {
                    v[p] = -x;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Canonical basis of the row space: the nonzero rows of the RREF,
    /// as a matrix. Two matrices have the same row space iff these agree.
    pub fn row_space_rref(&self) -> SparseRatMatrix {
        let rref = self.rref();
        let mut m = SparseRatMatrix::zero(rref.rows.len(), self.ncols);
        for (i, row) in rref.rows.iter().enumerate() {
            for (c, v) in row {
                m.set(i, *c, v.clone());
            }
        }
        m
    }

    /// Solves `self * X = rhs` exactly for square invertible `self`.
    pub fn solve_multi(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.nrows != self.ncols {
            return Err(LinalgError::NotSquare(self.nrows, self.ncols));
        }
        if rhs.nrows != self.nrows {
            return Err(LinalgError::DimensionMismatch(format!(
                "rhs has {} rows, expected {}",
                rhs.nrows, self.nrows
            )));
        }
        let aug = self.hstack(rhs);
        let rref = aug.rref();
        // invertible iff the pivots are exactly the first ncols columns
        if rref.pivot_cols.len() != self.ncols
            || rref.pivot_cols.iter().enumerate().any(|(i, &c)| i != c)
        {
            return Err(LinalgError::SingularGram);
        }
        let mut x = Self::zero(self.ncols, rhs.ncols);
        for (i, row) in rref.rows.iter().enumerate() {
            for (c, v) in row {
                if *c >= self.ncols {
                    x.set(i, c - self.ncols, v.clone());
                }
            }
        }
        Ok(x)
    }

    pub fn invert(&self) -> Result<Self, LinalgError> {
        self.solve_multi(&Self::identity(self.nrows))
    }

    /// Leading-principal-minor test: `true` iff the matrix is symmetric
    /// positive definite. The minors are evaluated through no-swap
    /// elimination, whose pivots are the exact ratios of consecutive
    /// leading minors.
    pub fn is_positive_definite(&self) -> Result<bool, LinalgError> {
        if self.nrows != self.ncols {
            return Err(LinalgError::NotSquare(self.nrows, self.ncols));
        }
        for (&(r, c), v) in &self.entries {
            if r < c && self.get(c, r) != *v {
                return Err(LinalgError::NotSymmetric(r, c));
            }
        }
        let n = self.nrows;
        let mut rows: Vec<BTreeMap<usize, Rat>> = vec![BTreeMap::new(); n];
        for (&(r, c), v) in &self.entries {
            rows[r].insert(c, v.clone());
        }
        for k in 0..n {
            let pivot = match rows[k].get(&k) {
                Some(p) if p.is_positive() => p.clone(),
                _ => return Ok(false), // zero or negative leading minor ratio
            };
            let pivot_row: Vec<(usize, Rat)> = rows[k]
                .range(k + 1..)
                .map(|(&c, v)| (c, v.clone()))
                .collect();
            // only rows with a nonzero entry in column k are touched;
            // symmetry means those are exactly the pivot row's columns
            for &(j, ref a_jk) in &pivot_row {
                let factor = a_jk / &pivot;
                for (c, v) in &pivot_row {
                    let delta = -(&factor * v);
                    let cur = rows[j].entry(*c).or_insert_with(Rat::zero);
                    *cur += delta;
                    if cur.is_zero() {
                        rows[j].remove(c);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Positive semidefiniteness certificate by congruent (LDL-style)
    /// diagonalization with diagonal pivoting: the matrix is PSD iff
    /// every pivot is positive and the final un-pivotable block is zero
    /// (a symmetric matrix with zero diagonal and a nonzero entry is
    /// indefinite).
    pub fn is_positive_semidefinite(&self) -> Result<bool, LinalgError> {
        if self.nrows != self.ncols {
            return Err(LinalgError::NotSquare(self.nrows, self.ncols));
        }
        for (&(r, c), v) in &self.entries {
            if r < c && self.get(c, r) != *v {
                return Err(LinalgError::NotSymmetric(r, c));
            }
        }
        let n = self.nrows;
        let mut rows: Vec<BTreeMap<usize, Rat>> = vec![BTreeMap::new(); n];
        for (&(r, c), v) in &self.entries {
            rows[r].insert(c, v.clone());
        }
        let mut active: Vec<usize> = (0..n).collect();
        loop {
            let pivot = active
                .iter()
                .copied()
                .find(|&i| rows[i].get(&i).is_some_and(|v| !v.is_zero()));
            let Some(i) = pivot else {
                // no usable diagonal left: PSD iff the remaining block
                // vanishes
                return Ok(active
                    .iter()
                    .all(|&r| active.iter().all(|c| !rows[r].contains_key(c))));
            };
            let d = rows[i][&i].clone();
            if d.is_negative() {
                return Ok(false);
            }
            active.retain(|&x| x != i);
            let pivot_entries: Vec<(usize, Rat)> = active
                .iter()
                .filter_map(|&c| rows[i].get(&c).map(|v| (c, v.clone())))
                .collect();
            for &(j, ref a_ij) in &pivot_entries {
                let factor = a_ij / &d;
                for (c, v) in &pivot_entries {
                    let delta = -(&factor * v);
                    let cur = rows[j].entry(*c).or_insert_with(Rat::zero);
                    *cur += delta;
                    if cur.is_zero() {
                        rows[j].remove(c);
                    }
                }
            }
        }
    }

    /// Text dump: header `rows cols nnz`, then one `row col value` line
    /// per nonzero with the value as `num` or `num/den`.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.nrows, self.ncols, self.nnz());
        for (&(r, c), v) in &self.entries {
            let _ = writeln!(out, "{} {} {}", r, c, fmt_rat(v));
        }
        out
    }

    pub fn from_dump(s: &str) -> Result<Self, LinalgError> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| LinalgError::BadDump("missing header".into()))?;
        let mut parts = header.split_whitespace();
        let mut next_usize = |what: &str| -> Result<usize, LinalgError> {
            parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| LinalgError::BadDump(format!("bad header field {what}")))
        };
        let nrows = next_usize("rows")?;
        let ncols = next_usize("cols")?;
        let nnz = next_usize("nnz")?;
        let mut m = Self::zero(nrows, ncols);
        let mut seen = 0usize;
        for line in lines {
            let mut it = line.split_whitespace();
            let r: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| LinalgError::BadDump(format!("bad row in {line:?}")))?;
            let c: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| LinalgError::BadDump(format!("bad col in {line:?}")))?;
            let v = it
                .next()
                .and_then(parse_rat)
                .ok_or_else(|| LinalgError::BadDump(format!("bad value in {line:?}")))?;
            if r >= nrows || c >= ncols {
                return Err(LinalgError::BadDump(format!(
                    "entry ({r},{c}) out of range"
                )));
            }
            m.set(r, c, v);
            seen += 1;
        }
        if seen != nnz {
            return Err(LinalgError::BadDump(format!(
                "expected {nnz} entries, found {seen}"
            )));
        }
        Ok(m)
    }
}

/// Adjoint of `a` with respect to inner products given by Gram matrices:
/// the unique `A*` with `<A x, y>_cod = <x, A* y>_dom`, i.e.
/// `A* = G_dom^{-1} A^T G_cod`, computed exactly.
pub fn gram_adjoint(
    a: &SparseRatMatrix,
    gram_dom: &SparseRatMatrix,
    gram_cod: &SparseRatMatrix,
) -> Result<SparseRatMatrix, LinalgError> {
    if gram_dom.nrows() != a.ncols() || gram_cod.nrows() != a.nrows() {
        return Err(LinalgError::DimensionMismatch(
            "gram matrices must match the domain/codomain of a".into(),
        ));
    }
    let rhs = a.transpose().matmul(gram_cod);
    gram_dom.solve_multi(&rhs)
}

/// Reduced row echelon form: `rows[i]` is the sparse row whose leading
/// entry (always 1) sits in column `pivot_cols[i]`.
pub struct Rref {
    pub ncols: usize,
    pub pivot_cols: Vec<usize>,
    pub rows: Vec<Vec<(usize, Rat)>>,
}

/// Integer row with gcd-normalized content; columns sorted ascending.
struct IntRow {
    cols: Vec<(usize, BigInt)>,
}

impl IntRow {
    fn from_rat_row(row: &[Rat]) -> Self {
        let mut lcm = BigInt::one();
        for v in row {
            if !v.is_zero() {
                lcm = lcm.lcm(v.denom());
            }
        }
        let cols: Vec<(usize, BigInt)> = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.numer() * (&lcm / v.denom())))
            .collect();
        let mut r = Self { cols };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        if self.cols.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, v) in &self.cols {
            g = g.gcd(v);
        }
        if !g.is_one() {
            for (_, v) in &mut self.cols {
                *v /= &g;
            }
        }
    }

    fn lead(&self) -> Option<usize> {
        self.cols.first().map(|&(c, _)| c)
    }

    /// `self = a*self - b*other`, merged sparsely, then re-normalized.
    fn cross_eliminate(&mut self, a: &BigInt, b: &BigInt, other: &IntRow) {
        let mut out = Vec::with_capacity(self.cols.len() + other.cols.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.cols.len() || j < other.cols.len() {
            let ci = self.cols.get(i).map(|&(c, _)| c);
            let cj = other.cols.get(j).map(|&(c, _)| c);
            match (ci, cj) {
                (Some(x), Some(y)) if x == y => {
                    let v = a * &self.cols[i].1 - b * &other.cols[j].1;
                    if !v.is_zero() {
                        out.push((x, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push((x, a * &self.cols[i].1));
                    i += 1;
                }
                (Some(_), Some(y)) => {
                    out.push((y, -(b * &other.cols[j].1)));
                    j += 1;
                }
                (Some(x), None) => {
                    out.push((x, a * &self.cols[i].1));
                    i += 1;
                }
                (None, Some(y)) => {
                    out.push((y, -(b * &other.cols[j].1)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        self.cols = out;
        self.normalize();
    }
}

fn rref_of_rows(mut rows: Vec<IntRow>, ncols: usize) -> Rref {
    // forward pass: echelon rows in pivot-column order
    let mut echelon: Vec<(usize, IntRow)> = Vec::new();
    for col in 0..ncols {
        // Markowitz-style pivot: among rows leading in this column, the
        // sparsest wins; ties break on position for determinism.
        let mut pivot_idx: Option<usize> = None;
        for (i, row) in rows.iter().enumerate() {
            if row.lead() == Some(col) {
                match pivot_idx {
                    Some(p) if rows[p].cols.len() <= row.cols.len() => {}
                    _ => pivot_idx = Some(i),
                }
            }
        }
        let Some(p) = pivot_idx else { continue };
        let pivot = rows.swap_remove(p);
        let pivot_lead = pivot.cols[0].1.clone();
        for row in rows.iter_mut() {
            if row.lead() == Some(col) {
                let b = row.cols[0].1.clone();
                row.cross_eliminate(&pivot_lead, &b, &pivot);
            }
        }
        rows.retain(|r| !r.cols.is_empty());
        echelon.push((col, pivot));
    }

    // back substitution over rationals
    let mut rat_rows: Vec<Vec<(usize, Rat)>> = echelon
        .iter()
        .map(|(_, row)| {
            let lead = Rat::from_integer(row.cols[0].1.clone());
            row.cols
                .iter()
                .map(|(c, v)| (*c, Rat::from_integer(v.clone()) / &lead))
                .collect()
        })
        .collect();
    let pivot_cols: Vec<usize> = echelon.iter().map(|&(c, _)| c).collect();
    for i in (0..rat_rows.len()).rev() {
        let pc = pivot_cols[i];
        let lower = rat_rows[i].clone();
        for j in 0..i {
            let coeff = rat_rows[j]
                .iter()
                .find(|(c, _)| *c == pc)
                .map(|(_, v)| v.clone());
            let Some(coeff) = coeff else { continue };
            let mut merged: BTreeMap<usize, Rat> = rat_rows[j].iter().cloned().collect();
            for (c, v) in &lower {
                let cur = merged.entry(*c).or_insert_with(Rat::zero);
                *cur -= &coeff * v;
                if cur.is_zero() {
                    merged.remove(c);
                }
            }
            rat_rows[j] = merged.into_iter().collect();
        }
    }
    Rref {
        ncols,
        pivot_cols,
        rows: rat_rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn m(rows: &[&[i64]]) -> SparseRatMatrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        SparseRatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
            ncols,
        )
    }

    #[test]
    fn nullspace_identity_is_empty() {
        assert!(SparseRatMatrix::identity(3).nullspace().is_empty());
    }

    #[test]
    fn nullspace_of_zero_matrix_is_standard_basis() {
        let z = SparseRatMatrix::zero(2, 3);
        let ns = z.nullspace();
        assert_eq!(ns.len(), 3);
        for (i, v) in ns.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, if i == j { rat_int(1) } else { rat_int(0) });
            }
        }
    }

    #[test]
    fn nullspace_rank_one() {
        let a = m(&[&[1, 2], &[2, 4]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        // canonical form: free column 1 carries the 1
        assert_eq!(ns[0], vec![rat_int(-2), rat_int(1)]);
        assert!(a.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
        assert_eq!(a.rank() + ns.len(), a.ncols());
    }

    #[test]
    fn gram_adjoint_orthonormal_is_transpose() {
        let a = m(&[&[1, 2, 0], &[0, 3, -1]]);
        let adj = gram_adjoint(
            &a,
            &SparseRatMatrix::identity(3),
            &SparseRatMatrix::identity(2),
        )
        .unwrap();
        assert_eq!(adj, a.transpose());
    }

    #[test]
    fn gram_adjoint_zero_is_zero() {
        let a = SparseRatMatrix::zero(2, 3);
        let g3 = SparseRatMatrix::identity(3).scale(&rat_int(2));
        let g2 = SparseRatMatrix::identity(2).scale(&rat_int(5));
        assert!(gram_adjoint(&a, &g3, &g2).unwrap().is_zero());
    }

    #[test]
    fn gram_adjoint_scalar_case() {
        let mut a = SparseRatMatrix::zero(1, 1);
        a.set(0, 0, rat_int(2));
        let mut gd = SparseRatMatrix::zero(1, 1);
        gd.set(0, 0, rat_int(3));
        let mut gc = SparseRatMatrix::zero(1, 1);
        gc.set(0, 0, rat_int(5));
        let adj = gram_adjoint(&a, &gd, &gc).unwrap();
        assert_eq!(adj.get(0, 0), rat(10, 3));
    }

    #[test]
    fn gram_adjoint_defining_identity() {
        let a = m(&[&[1, -2, 3], &[0, 1, 4]]);
        // symmetric positive definite grams
        let gd = m(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]);
        let gc = m(&[&[3, 1], &[1, 2]]);
        let adj = gram_adjoint(&a, &gd, &gc).unwrap();
        // <A e_j, e_i>_cod == <e_j, A* e_i>_dom for all basis pairs
        let lhs = gc.matmul(&a);
        let rhs = adj.transpose().matmul(&gd);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn positive_definite_examples() {
        assert!(SparseRatMatrix::identity(4).is_positive_definite().unwrap());
        assert!(!m(&[&[1, 2], &[2, 1]]).is_positive_definite().unwrap());
        let mut d = SparseRatMatrix::zero(2, 2);
        d.set(0, 0, rat(1, 2));
        d.set(1, 1, rat_int(3));
        assert!(d.is_positive_definite().unwrap());
        assert_eq!(
            m(&[&[1, 2], &[0, 1]]).is_positive_definite(),
            Err(LinalgError::NotSymmetric(0, 1))
        );
        // positive semidefinite but singular
        assert!(!m(&[&[1, 1], &[1, 1]]).is_positive_definite().unwrap());
    }

    #[test]
    fn positive_semidefinite_examples() {
        assert!(SparseRatMatrix::identity(3)
            .is_positive_semidefinite()
            .unwrap());
        assert!(SparseRatMatrix::zero(3, 3)
            .is_positive_semidefinite()
            .unwrap());
        // singular but PSD
        assert!(m(&[&[1, 1], &[1, 1]]).is_positive_semidefinite().unwrap());
        // indefinite with zero diagonal
        assert!(!m(&[&[0, 1], &[1, 0]]).is_positive_semidefinite().unwrap());
        assert!(!m(&[&[1, 2], &[2, 1]]).is_positive_semidefinite().unwrap());
        assert!(!m(&[&[-1]]).is_positive_semidefinite().unwrap());
        // A^T A is always PSD
        let a = m(&[&[1, -2, 3], &[0, 1, 4]]);
        assert!(a.transpose().matmul(&a).is_positive_semidefinite().unwrap());
    }

    #[test]
    fn solve_and_invert() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.invert().unwrap();
        assert_eq!(a.matmul(&inv), SparseRatMatrix::identity(2));
        assert_eq!(
            m(&[&[1, 2], &[2, 4]]).invert(),
            Err(LinalgError::SingularGram)
        );
    }

    #[test]
    fn dump_round_trip() {
        let a = m(&[&[0, 3], &[-1, 0]]);
        let mut b = a.clone();
        b.set(1, 1, rat(1, 2));
        let dumped = b.to_dump();
        assert!(dumped.starts_with("2 2 3"));
        assert_eq!(SparseRatMatrix::from_dump(&dumped).unwrap(), b);
        assert!(SparseRatMatrix::from_dump("nonsense").is_err());
    }

    #[test]
    fn rref_is_insertion_order_independent() {
        let mut a = SparseRatMatrix::zero(3, 4);
        let mut b = SparseRatMatrix::zero(3, 4);
        let entries = [
            (0usize, 1usize, 2i64),
            (1, 0, 1),
            (2, 3, -5),
            (0, 2, 7),
            (1, 2, 3),
        ];
        for &(r, c, v) in entries.iter() {
            a.set(r, c, rat_int(v));
        }
        for &(r, c, v) in entries.iter().rev() {
            b.set(r, c, rat_int(v));
        }
        assert_eq!(a.nullspace(), b.nullspace());
        assert_eq!(a.row_space_rref(), b.row_space_rref());
    }

    #[test]
    fn row_space_detects_equal_spans() {
        let a = m(&[&[1, 1, 0], &[0, 0, 2]]);
        let b = m(&[&[2, 2, 2], &[0, 0, 1], &[2, 2, 4]]);
        assert_eq!(a.row_space_rref(), b.row_space_rref());
        let c = m(&[&[1, 0, 0]]);
        assert_ne!(a.row_space_rref(), c.row_space_rref());
    }
}
