//! Exact rational matrices. Generator matrices in the tableau basis touch at
//! most two basis vectors per column, so storage is sparse column-major;
//! elimination-style routines (kernel, solve, rank growth) work on dense
//! rows.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats a rational as "num/den" ("num" when integral).
pub fn rat_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A sparse column-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigRational)>>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for j in 0..n {
            m.data[j].push((j, BigRational::one()));
        }
        m
    }

    pub fn diagonal(entries: Vec<BigRational>) -> Self {
        let n = entries.len();
        let mut m = Mat::zero(n, n);
        for (j, v) in entries.into_iter().enumerate() {
            if !v.is_zero() {
                m.data[j].push((j, v));
            }
        }
        m
    }

    pub fn scalar(n: usize, v: BigRational) -> Self {
        let mut m = Mat::zero(n, n);
        if !v.is_zero() {
            for j in 0..n {
                m.data[j].push((j, v.clone()));
            }
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    /// Adds v at (r, c); merges with an existing entry.
    pub fn add_entry(&mut self, r: usize, c: usize, v: BigRational) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            return;
        }
        let col = &mut self.data[c];
        match col.binary_search_by_key(&r, |e| e.0) {
            Ok(i) => {
                col[i].1 += v;
                if col[i].1.is_zero() {
                    col.remove(i);
                }
            }
            Err(i) => col.insert(i, (r, v)),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.data[c]
            .binary_search_by_key(&r, |e| e.0)
            .map(|i| self.data[c][i].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    pub fn col(&self, c: usize) -> &[(usize, BigRational)] {
        &self.data[c]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|c| c.len()).sum()
    }

    /// self * other.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Mat::zero(self.rows, other.cols);
        for j in 0..other.cols {
            let mut acc: Vec<BigRational> = Vec::new();
            let mut touched: Vec<usize> = Vec::new();
            let mut dense: Vec<Option<usize>> = vec![None; self.rows];
            for &(k, ref bkj) in &other.data[j] {
                for &(i, ref aik) in &self.data[k] {
                    match dense[i] {
                        Some(t) => acc[t] += aik * bkj,
                        None => {
                            dense[i] = Some(acc.len());
                            touched.push(i);
                            acc.push(aik * bkj);
                        }
                    }
                }
            }
            let mut col: Vec<(usize, BigRational)> = touched
                .into_iter()
                .zip(acc)
                .filter(|(_, v)| !v.is_zero())
                .collect();
            col.sort_by_key(|e| e.0);
            out.data[j] = col;
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.combine(other, true)
    }

    fn combine(&self, other: &Mat, negate: bool) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = Mat::zero(self.rows, self.cols);
        for (j, out_col) in out.data.iter_mut().enumerate() {
            let mut col = self.data[j].clone();
            for &(i, ref v) in &other.data[j] {
                let w = if negate { -v.clone() } else { v.clone() };
                match col.binary_search_by_key(&i, |e| e.0) {
                    Ok(t) => {
                        col[t].1 += w;
                    }
                    Err(t) => col.insert(t, (i, w)),
                }
            }
            col.retain(|e| !e.1.is_zero());
            *out_col = col;
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> Mat {
        let mut out = self.clone();
        for col in &mut out.data {
            if factor.is_zero() {
                col.clear();
            } else {
                for e in col.iter_mut() {
                    e.1 *= factor;
                }
            }
        }
        out
    }

    /// self * v for a dense vector.
    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![BigRational::zero(); self.rows];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for &(i, ref aij) in &self.data[j] {
                out[i] += aij * vj;
            }
        }
        out
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<BigRational>> {
        let mut rows = vec![vec![BigRational::zero(); self.cols]; self.rows];
        for (j, col) in self.data.iter().enumerate() {
            for &(i, ref v) in col {
                rows[i][j] = v.clone();
            }
        }
        rows
    }

    /// Flattened row-major entries, for span computations.
    pub fn flatten(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.rows * self.cols];
        for j in 0..self.cols {
            for &(i, ref v) in &self.data[j] {
                out[i * self.cols + j] = v.clone();
            }
        }
        out
    }

    /// First position where the two matrices differ.
    pub fn first_difference(&self, other: &Mat) -> Option<(usize, usize, BigRational, BigRational)> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for j in 0..self.cols {
            let mut a = self.data[j].iter().peekable();
            let mut b = other.data[j].iter().peekable();
            loop {
                match (a.peek(), b.peek()) {
                    (None, None) => break,
                    (Some(&&(i, ref v)), None) => {
                        return Some((i, j, v.clone(), BigRational::zero()))
                    }
                    (None, Some(&&(i, ref v))) => {
                        return Some((i, j, BigRational::zero(), v.clone()))
                    }
                    (Some(&&(ia, ref va)), Some(&&(ib, ref vb))) => {
                        if ia < ib {
                            return Some((ia, j, va.clone(), BigRational::zero()));
                        } else if ib < ia {
                            return Some((ib, j, BigRational::zero(), vb.clone()));
                        } else if va != vb {
                            return Some((ia, j, va.clone(), vb.clone()));
                        } else {
                            a.next();
                            b.next();
                        }
                    }
                }
            }
        }
        None
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense_rows() {
            let line: Vec<String> = row.iter().map(rat_string).collect();
            writeln!(f, "  {}", line.join(" "))?;
        }
        write!(f, "]")
    }
}

// JSON form: {"rows": r, "cols": c, "triplets": [{"i":..,"j":..,"v":"num/den"},..]}
impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Triplet {
            i: usize,
            j: usize,
            v: String,
        }
        let mut triplets = Vec::with_capacity(self.nnz());
        for j in 0..self.cols {
            for &(i, ref v) in &self.data[j] {
                triplets.push(Triplet {
                    i,
                    j,
                    v: rat_string(v),
                });
            }
        }
        triplets.sort_by_key(|t| (t.i, t.j));
        let mut st = serializer.serialize_struct("Mat", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("triplets", &triplets)?;
        st.end()
    }
}

/// Row-reduces in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<BigRational>]) -> Vec<usize> {
    let n_rows = rows.len();
    if n_rows == 0 {
        return Vec::new();
    }
    let n_cols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        if r == n_rows {
            break;
        }
        let Some(pr) = (r..n_rows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x /= &inv;
        }
        for i in 0..n_rows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    let t = y * &f;
                    *x -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A basis of the null space of the matrix given by dense rows.
pub fn kernel_dense(a: &[Vec<BigRational>], n_cols: usize) -> Vec<Vec<BigRational>> {
    let mut rows: Vec<Vec<BigRational>> = a.to_vec();
    let pivots = rref(&mut rows);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..n_cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); n_cols];
        v[free] = BigRational::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[ri][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves A X = B where A is m-by-k with independent columns and B is
/// m-by-t, both given as column lists. Returns X as columns, or None when
/// some column of B lies outside the column space of A.
pub fn solve_in_span(
    a_cols: &[Vec<BigRational>],
    b_cols: &[Vec<BigRational>],
) -> Option<Vec<Vec<BigRational>>> {
    let k = a_cols.len();
    let t = b_cols.len();
    let m = if k > 0 {
        a_cols[0].len()
    } else if t > 0 {
        b_cols[0].len()
    } else {
        0
    };
    // augmented dense rows [A | B]
    let mut rows = vec![vec![BigRational::zero(); k + t]; m];
    for (j, col) in a_cols.iter().enumerate() {
        for i in 0..m {
            rows[i][j] = col[i].clone();
        }
    }
    for (j, col) in b_cols.iter().enumerate() {
        for i in 0..m {
            rows[i][k + j] = col[i].clone();
        }
    }
    let pivots = rref(&mut rows);
    if pivots.iter().any(|&c| c >= k) {
        return None; // inconsistent
    }
    if pivots.len() != k {
        return None; // dependent columns
    }
    let mut out = vec![vec![BigRational::zero(); k]; t];
    for (ri, &pc) in pivots.iter().enumerate() {
        for j in 0..t {
            out[j][pc] = rows[ri][k + j].clone();
        }
    }
    Some(out)
}

/// Incremental row space with exact pivoting: tracks the span of inserted
/// vectors and reports whether each insertion increased the rank.
pub struct RowSpace {
    dim: usize,
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl RowSpace {
    pub fn new(dim: usize) -> Self {
        RowSpace {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces v against the current rows; inserts the remainder if
    /// nonzero. Returns true when the rank grew.
    pub fn insert(&mut self, mut v: Vec<BigRational>) -> bool {
        assert_eq!(v.len(), self.dim);
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    let t = y * &f;
                    *x -= t;
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].clone();
        for x in v.iter_mut() {
            *x /= &inv;
        }
        self.rows.push((pivot, v));
        true
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    let t = y * &f;
                    *x -= t;
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }
}

/// Gershgorin-style bound on the absolute value of any rational eigenvalue:
/// max over columns of the 1-norm.
pub fn eigenvalue_bound(m: &Mat) -> BigRational {
    let mut best = BigRational::zero();
    for j in 0..m.n_cols() {
        let s: BigRational = m.col(j).iter().map(|(_, v)| v.abs()).sum();
        if s > best {
            best = s;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_identity() {
        let mut m = Mat::zero(2, 2);
        m.add_entry(0, 0, rat(1, 2));
        m.add_entry(1, 0, rat(1, 3));
        m.add_entry(0, 1, rat(-2, 1));
        let id = Mat::identity(2);
        assert_eq!(m.mul(&id), m);
        assert_eq!(id.mul(&m), m);
    }

    #[test]
    fn involution_square() {
        // [[b, 1-b],[1+b, -b]] squares to the identity when b^2 + (1-b)(1+b) = 1
        let b = rat(1, 3);
        let mut m = Mat::zero(2, 2);
        m.add_entry(0, 0, b.clone());
        m.add_entry(1, 0, rat_int(1) + &b);
        m.add_entry(0, 1, rat_int(1) - &b);
        m.add_entry(1, 1, -b);
        assert_eq!(m.mul(&m), Mat::identity(2));
    }

    #[test]
    fn kernel_and_solve() {
        // x + y + z = 0, x - z = 0
        let a = vec![
            vec![rat_int(1), rat_int(1), rat_int(1)],
            vec![rat_int(1), rat_int(0), rat_int(-1)],
        ];
        let ker = kernel_dense(&a, 3);
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        assert!(v[0] == -(v[1].clone() + &v[2]) && v[0] == v[2]);

        let cols = vec![vec![rat_int(1), rat_int(0)], vec![rat_int(1), rat_int(1)]];
        let b = vec![vec![rat_int(3), rat_int(2)]];
        let x = solve_in_span(&cols, &b).unwrap();
        assert_eq!(x[0], vec![rat_int(1), rat_int(2)]);
    }

    #[test]
    fn row_space_rank() {
        let mut rs = RowSpace::new(3);
        assert!(rs.insert(vec![rat_int(1), rat_int(0), rat_int(1)]));
        assert!(rs.insert(vec![rat_int(0), rat_int(1), rat_int(0)]));
        assert!(!rs.insert(vec![rat_int(1), rat_int(1), rat_int(1)]));
        assert_eq!(rs.rank(), 2);
        assert!(rs.contains(&[rat_int(2), rat_int(-1), rat_int(2)]));
        assert!(!rs.contains(&[rat_int(0), rat_int(0), rat_int(1)]));
    }
}
