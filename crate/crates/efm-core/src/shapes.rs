//! Partitions, skew shapes, the minimal shape of an Etingof-Freund-Ma image,
//! gamma moves, and Okada's rectangular product decomposition.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_rational::Rational64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{EfmError, Result};
use crate::half::HalfInt;

/// A partition: weakly decreasing nonnegative integers. Trailing zeros are
/// permitted on construction and ignored for equality and ordering, but the
/// declared parts are kept for display.
#[derive(Clone, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(EfmError::InvalidParameters(format!(
                "partition parts must be weakly decreasing, got {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The declared parts, trailing zeros included.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Parts with trailing zeros stripped.
    pub fn trimmed(&self) -> &[usize] {
        let mut len = self.parts.len();
        while len > 0 && self.parts[len - 1] == 0 {
            len -= 1;
        }
        &self.parts[..len]
    }

    /// The i-th part, 1-based; zero beyond the declared length.
    pub fn part(&self, i: usize) -> usize {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.trimmed().len()
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (1..=other.parts.len().max(self.parts.len())).all(|i| self.part(i) >= other.part(i))
    }

    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &len) in self.parts.iter().enumerate() {
            for j in 1..=len {
                out.push(Cell::new(i + 1, j));
            }
        }
        out
    }

    /// Parses "5,5,2,2,2,1" or "" for the empty partition.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" || s == "()" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|_| {
                    EfmError::InvalidParameters(format!("bad partition component `{t}`"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}
impl Eq for Partition {}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.trimmed().cmp(other.trimmed())
    }
}
impl std::hash::Hash for Partition {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.trimmed().hash(state)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Vec<usize>> for Partition {
    fn from(parts: Vec<usize>) -> Self {
        Partition::new(parts).expect("parts must be weakly decreasing")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(D::Error::custom)
    }
}

/// A cell of the plane, 1-based row and column.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        assert!(row >= 1 && col >= 1, "cells are 1-based");
        Cell { row, col }
    }

    /// The content col - row.
    pub fn content(self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.row, self.col].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [row, col] = <[usize; 2]>::deserialize(deserializer)?;
        if row < 1 || col < 1 {
            return Err(D::Error::custom("cell coordinates are 1-based"));
        }
        Ok(Cell { row, col })
    }
}

/// The content of a cell: column minus row.
pub fn content(cell: Cell) -> i64 {
    cell.content()
}

/// A skew shape outer/inner with inner contained in outer. Rows of the outer
/// partition may coincide with the inner one (empty rows are allowed; they
/// occur in minimal shapes whose inner partition swallows whole rows).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(EfmError::InvalidParameters(format!(
                "inner {inner} is not contained in outer {outer}"
            )));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn n_cells(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    /// Cells in (row, col) order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.n_cells());
        for i in 1..=self.outer.parts().len() {
            for j in self.inner.part(i) + 1..=self.outer.part(i) {
                out.push(Cell::new(i, j));
            }
        }
        out
    }

    pub fn cell_set(&self) -> BTreeSet<Cell> {
        self.cells().into_iter().collect()
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        c.row >= 1 && c.col > self.inner.part(c.row) && c.col <= self.outer.part(c.row)
    }

    /// A corner: a cell with no cell below and no cell to the right.
    pub fn is_corner(&self, c: Cell) -> bool {
        self.contains_cell(c)
            && !self.contains_cell(Cell::new(c.row + 1, c.col))
            && !self.contains_cell(Cell::new(c.row, c.col + 1))
    }

    pub fn corners(&self) -> Vec<Cell> {
        self.cells().into_iter().filter(|&c| self.is_corner(c)).collect()
    }

    /// Rebuilds a skew shape from an arbitrary cell set. Rows must be
    /// contiguous and the implied outer/inner pair must be partitions; empty
    /// rows between occupied ones get the smallest value compatible with
    /// weak decrease.
    pub fn from_cells(cells: &BTreeSet<Cell>) -> Result<Self> {
        if cells.is_empty() {
            return SkewShape::new(Partition::empty(), Partition::empty());
        }
        let max_row = cells.iter().map(|c| c.row).max().unwrap();
        let mut lo = vec![None; max_row + 1];
        let mut hi = vec![None; max_row + 1];
        let mut count = vec![0usize; max_row + 1];
        for c in cells {
            lo[c.row] = Some(lo[c.row].map_or(c.col, |v: usize| v.min(c.col)));
            hi[c.row] = Some(hi[c.row].map_or(c.col, |v: usize| v.max(c.col)));
            count[c.row] += 1;
        }
        for i in 1..=max_row {
            if let (Some(l), Some(h)) = (lo[i], hi[i]) {
                if h - l + 1 != count[i] {
                    return Err(EfmError::InvalidResult(format!(
                        "row {i} is not contiguous"
                    )));
                }
            }
        }
        let mut outer = vec![0usize; max_row];
        let mut inner = vec![0usize; max_row];
        for i in (1..=max_row).rev() {
            match (lo[i], hi[i]) {
                (Some(l), Some(h)) => {
                    outer[i - 1] = h;
                    inner[i - 1] = l - 1;
                }
                _ => {
                    // empty row: tightest value permitted by the row below
                    let below = if i < max_row { outer[i] } else { 0 };
                    outer[i - 1] = below;
                    inner[i - 1] = below;
                }
            }
        }
        let outer = Partition::new(outer)
            .map_err(|_| EfmError::InvalidResult("outer profile not a partition".into()))?;
        let inner = Partition::new(inner)
            .map_err(|_| EfmError::InvalidResult("inner profile not a partition".into()))?;
        let shape = SkewShape::new(outer, inner)
            .map_err(|e| EfmError::InvalidResult(e.to_string()))?;
        if &shape.cell_set() != cells {
            return Err(EfmError::InvalidResult(
                "cell set is not of skew-shape form".into(),
            ));
        }
        Ok(shape)
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)
    }
}

impl fmt::Debug for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'de> Deserialize<'de> for SkewShape {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            outer: Partition,
            inner: Partition,
        }
        let r = Repr::deserialize(deserializer)?;
        SkewShape::new(r.outer, r.inner).map_err(D::Error::custom)
    }
}

/// Parameters of an Etingof-Freund-Ma image F_{n,p,mu}(V^xi) in terms of the
/// two block characters det^a (on gl_p) and det^b (on gl_q).
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EfmParameters {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub a: usize,
    pub b: usize,
    pub xi: Partition,
}

/// Result of deriving (a, b) from a rational mu: non-integral or negative
/// values of a or b force the zero module.
pub enum ParamsFromMu {
    Params(EfmParameters),
    Zero,
}

impl EfmParameters {
    pub fn new(
        n: usize,
        p: usize,
        q: usize,
        a: usize,
        b: usize,
        xi: Partition,
    ) -> Result<Self> {
        if p < 1 {
            return Err(EfmError::InvalidParameters("p must be positive".into()));
        }
        if p > q {
            return Err(EfmError::InvalidRectangles { p, q });
        }
        let cap_n = p + q;
        if xi.length() >= cap_n {
            return Err(EfmError::InvalidParameters(format!(
                "xi = {xi} must have at most N-1 = {} nonzero parts (xi_N = 0)",
                cap_n - 1
            )));
        }
        if xi.size() + n != p * a + q * b {
            return Err(EfmError::InvalidParameters(format!(
                "|xi| + n = {} must equal p*a + q*b = {}",
                xi.size() + n,
                p * a + q * b
            )));
        }
        let params = EfmParameters { n, p, q, a, b, xi };
        params.minimal_shape()?;
        Ok(params)
    }

    /// Derives (a, b) from mu; the module is zero unless both come out as
    /// nonnegative integers.
    pub fn from_mu(n: usize, p: usize, q: usize, mu: Rational64, xi: Partition) -> Result<ParamsFromMu> {
        let cap_n = (p + q) as i64;
        let tot = (xi.size() + n) as i64;
        // a = mu q + (|xi|+n)/N, b = -mu p + (|xi|+n)/N
        let a = mu * Rational64::from_integer(q as i64)
            + Rational64::new(tot, cap_n);
        let b = -mu * Rational64::from_integer(p as i64)
            + Rational64::new(tot, cap_n);
        if !a.is_integer() || !b.is_integer() || *a.numer() < 0 || *b.numer() < 0 {
            return Ok(ParamsFromMu::Zero);
        }
        let a = a.to_integer() as usize;
        let b = b.to_integer() as usize;
        Ok(ParamsFromMu::Params(EfmParameters::new(n, p, q, a, b, xi)?))
    }

    pub fn big_n(&self) -> usize {
        self.p + self.q
    }

    /// mu = (a - b)/N, exactly.
    pub fn mu(&self) -> Rational64 {
        Rational64::new(self.a as i64 - self.b as i64, self.big_n() as i64)
    }

    /// kappa2 = p - q - a + b.
    pub fn kappa2(&self) -> i64 {
        self.p as i64 - self.q as i64 - self.a as i64 + self.b as i64
    }

    /// The shift s = (a + b - N)/2, an exact half-integer.
    pub fn shift(&self) -> HalfInt {
        HalfInt::from_doubled(self.a as i64 + self.b as i64 - self.big_n() as i64)
    }

    /// First q rows of xi.
    pub fn xi_upper(&self) -> Partition {
        let parts: Vec<usize> = (1..=self.q).map(|i| self.xi.part(i)).collect();
        Partition::new(parts).unwrap()
    }

    /// The minimal shape nu / xi^(1) with nu_i = a+b-xi_{N-i+1} for i <= p
    /// and nu_i = b for p < i <= q.
    pub fn minimal_shape(&self) -> Result<SkewShape> {
        let nn = self.big_n();
        let ab = self.a + self.b;
        // the completed outer shape must satisfy nu_p >= max(a,b), i.e. the
        // lower block of xi fits under both rectangles; otherwise the
        // invariant space is zero
        if self.xi.part(self.q + 1) > self.a.min(self.b) {
            return Err(EfmError::InvalidParameters(format!(
                "xi_{} = {} exceeds min(a,b) = {}; the invariant space is zero",
                self.q + 1,
                self.xi.part(self.q + 1),
                self.a.min(self.b)
            )));
        }
        let mut nu = Vec::with_capacity(self.q);
        for i in 1..=self.p {
            let t = self.xi.part(nn - i + 1);
            if t > ab {
                return Err(EfmError::InvalidParameters(format!(
                    "xi_{} = {t} exceeds a+b = {ab}",
                    nn - i + 1
                )));
            }
            nu.push(ab - t);
        }
        for _ in self.p + 1..=self.q {
            nu.push(self.b);
        }
        let nu = Partition::new(nu).map_err(|_| {
            EfmError::InvalidParameters("minimal-shape outer profile is not a partition".into())
        })?;
        let inner = self.xi_upper();
        if !nu.contains(&inner) {
            return Err(EfmError::InvalidParameters(format!(
                "xi^(1) = {inner} is not contained in nu = {nu}"
            )));
        }
        let shape = SkewShape::new(nu, inner)?;
        if shape.n_cells() != self.n {
            return Err(EfmError::InvalidParameters(format!(
                "minimal shape has {} cells, expected n = {}",
                shape.n_cells(),
                self.n
            )));
        }
        Ok(shape)
    }
}

impl fmt::Debug for EfmParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "EfmParameters(n={}, p={}, q={}, a={}, b={}, xi={})",
            self.n, self.p, self.q, self.a, self.b, self.xi
        )
    }
}

impl<'de> Deserialize<'de> for EfmParameters {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            p: usize,
            q: usize,
            a: usize,
            b: usize,
            xi: Partition,
        }
        let r = Repr::deserialize(deserializer)?;
        EfmParameters::new(r.n, r.p, r.q, r.a, r.b, r.xi).map_err(D::Error::custom)
    }
}

/// Applies a gamma move: delete the corner (i, j) with j > max(a, b) and
/// 1 <= i <= p, and add the cell (p+q-i+1, a+b-j+1).
pub fn gamma_move(shape: &SkewShape, corner: Cell, params: &EfmParameters) -> Result<SkewShape> {
    if !shape.is_corner(corner) {
        return Err(EfmError::NotACorner(corner.row, corner.col));
    }
    let maxab = params.a.max(params.b);
    if corner.col <= maxab {
        return Err(EfmError::MoveNotApplicable(format!(
            "corner column {} must exceed max(a,b) = {maxab}",
            corner.col
        )));
    }
    if corner.row > params.p {
        return Err(EfmError::MoveNotApplicable(format!(
            "corner row {} must lie in 1..=p = {}",
            corner.row, params.p
        )));
    }
    let target = Cell::new(
        params.p + params.q - corner.row + 1,
        params.a + params.b - corner.col + 1,
    );
    let mut cells = shape.cell_set();
    cells.remove(&corner);
    if !cells.insert(target) {
        return Err(EfmError::InvalidResult(format!(
            "target cell {target:?} already occupied"
        )));
    }
    SkewShape::from_cells(&cells)
}

/// The closure family D(phi): the minimal shape together with everything
/// reachable by gamma moves. BFS from the minimal shape with corners taken
/// in (row, col) order; the result is sorted by (outer, inner).
pub fn shape_family(params: &EfmParameters) -> Result<Vec<SkewShape>> {
    let start = params.minimal_shape()?;
    let mut seen: BTreeMap<BTreeSet<Cell>, SkewShape> = BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert(start.cell_set(), start.clone());
    queue.push_back(start);
    let maxab = params.a.max(params.b);
    while let Some(shape) = queue.pop_front() {
        for corner in shape.corners() {
            if corner.col > maxab && corner.row <= params.p {
                let next = gamma_move(&shape, corner, params)?;
                let key = next.cell_set();
                if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(key) {
                    e.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    let mut family: Vec<SkewShape> = seen.into_values().collect();
    family.sort();
    Ok(family)
}

/// All partitions nu in the Okada expansion of s_{(a^p)} * s_{(b^q)}:
/// nu_i + nu_{p+q-i+1} = a+b for i = 1..p, nu_p >= max(a,b), and nu_i = b
/// for i = p+1..q. Each occurs with multiplicity one.
pub fn okada_expand(a: usize, p: usize, b: usize, q: usize) -> Result<Vec<Partition>> {
    if p > q {
        return Err(EfmError::InvalidRectangles { p, q });
    }
    let ab = a + b;
    let maxab = a.max(b);
    let nn = p + q;
    let mut out = Vec::new();
    // enumerate weakly decreasing top rows in [max(a,b), a+b]; the rest of
    // nu is forced by the complementarity condition
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(top) = stack.pop() {
        if top.len() == p {
            let mut nu = vec![0usize; nn];
            for (k, &v) in top.iter().enumerate() {
                nu[k] = v;
                nu[nn - k - 1] = ab - v;
            }
            for item in nu.iter_mut().take(q).skip(p) {
                *item = b;
            }
            if nu.windows(2).all(|w| w[0] >= w[1]) {
                out.push(Partition::new(nu).unwrap());
            }
            continue;
        }
        let upper = top.last().copied().unwrap_or(ab);
        for v in maxab..=upper {
            let mut next = top.clone();
            next.push(v);
            stack.push(next);
        }
    }
    out.sort();
    Ok(out)
}

/// Filters the Okada expansion down to outer shapes containing xi.
pub fn admissible_outer_shapes(params: &EfmParameters) -> Result<Vec<Partition>> {
    let all = okada_expand(params.a, params.p, params.b, params.q)?;
    Ok(all.into_iter().filter(|nu| nu.contains(&params.xi)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params_ex59() -> EfmParameters {
        // GL_3, xi = (2,1), n = 3, p = 1, mu = 0, so a = b = 2
        EfmParameters::new(3, 1, 2, 2, 2, Partition::new(vec![2, 1, 0]).unwrap()).unwrap()
    }

    #[test]
    fn content_examples() {
        assert_eq!(content(Cell::new(1, 1)), 0);
        assert_eq!(content(Cell::new(3, 1)), -2);
        assert_eq!(content(Cell::new(2, 5)), 3);
    }

    #[test]
    fn partition_equality_ignores_trailing_zeros() {
        let a = Partition::new(vec![2, 1, 0]).unwrap();
        let b = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(2,1,0)");
        assert_eq!(b.to_string(), "(2,1)");
    }

    #[test]
    fn minimal_shape_examples() {
        let shape = params_ex59().minimal_shape().unwrap();
        assert_eq!(shape.outer(), &Partition::from(vec![4, 2]));
        assert_eq!(shape.inner(), &Partition::from(vec![2, 1]));
        assert_eq!(
            shape.cells(),
            vec![Cell::new(1, 3), Cell::new(1, 4), Cell::new(2, 2)]
        );

        // xi = (3,3,2,0), N = 4, p = 1, a = 2, b = 3
        let p2 = EfmParameters::new(3, 1, 3, 2, 3, Partition::new(vec![3, 3, 2, 0]).unwrap())
            .unwrap();
        let s2 = p2.minimal_shape().unwrap();
        assert_eq!(s2.outer(), &Partition::from(vec![5, 3, 3]));
        assert_eq!(s2.inner(), &Partition::from(vec![3, 3, 2]));
        assert_eq!(s2.n_cells(), 3);

        // empty inner shape
        let p3 = EfmParameters::new(8, 2, 3, 1, 2, Partition::empty()).unwrap();
        let s3 = p3.minimal_shape().unwrap();
        assert_eq!(s3.outer(), &Partition::from(vec![3, 3, 2]));
        assert_eq!(s3.inner(), &Partition::empty());
    }

    #[test]
    fn rejects_p_above_q() {
        let err = EfmParameters::new(3, 2, 1, 2, 2, Partition::empty()).unwrap_err();
        assert!(matches!(err, EfmError::InvalidRectangles { .. }));
    }

    #[test]
    fn gamma_move_chain() {
        let params = params_ex59();
        let shape = params.minimal_shape().unwrap();
        let step1 = gamma_move(&shape, Cell::new(1, 4), &params).unwrap();
        assert_eq!(
            step1.cell_set(),
            [Cell::new(1, 3), Cell::new(2, 2), Cell::new(3, 1)].into()
        );
        let step2 = gamma_move(&step1, Cell::new(1, 3), &params).unwrap();
        assert_eq!(
            step2.cell_set(),
            [Cell::new(2, 2), Cell::new(3, 1), Cell::new(3, 2)].into()
        );
        // no corner with col > max(a,b) remains
        for corner in step2.corners() {
            assert!(gamma_move(&step2, corner, &params).is_err());
        }
        // not a corner at all
        assert!(matches!(
            gamma_move(&shape, Cell::new(1, 3), &params),
            Err(EfmError::NotACorner(1, 3))
        ));
    }

    #[test]
    fn family_example_59() {
        let params = params_ex59();
        let family = shape_family(&params).unwrap();
        assert_eq!(family.len(), 3);
        // sorted by (outer, inner)
        assert_eq!(family[0].outer(), &Partition::from(vec![2, 2, 2]));
        assert_eq!(family[1].outer(), &Partition::from(vec![3, 2, 1]));
        assert_eq!(family[2].outer(), &Partition::from(vec![4, 2]));
        for shape in &family {
            assert_eq!(shape.n_cells(), 3);
        }
    }

    #[test]
    fn family_singleton_when_no_move() {
        // a = b, xi wide enough that no corner clears max(a,b)
        let params = EfmParameters::new(2, 1, 1, 1, 1, Partition::empty()).unwrap();
        // minimal shape (2): corner (1,2) moves; chain to {(1,1),(2,1)}
        let family = shape_family(&params).unwrap();
        assert_eq!(family.len(), 2);
    }

    #[test]
    fn family_row_sum_invariant() {
        // last columns of rows i and N-i+1 sum to a+b when both rows occupied
        for params in [
            params_ex59(),
            EfmParameters::new(8, 2, 3, 1, 2, Partition::empty()).unwrap(),
            EfmParameters::new(3, 1, 3, 2, 3, Partition::new(vec![3, 3, 2]).unwrap()).unwrap(),
        ] {
            let nn = params.big_n();
            for shape in shape_family(&params).unwrap() {
                for i in 1..=params.p.min(params.q) {
                    let top = shape.outer().part(i);
                    let bot_row = nn - i + 1;
                    let bot = shape.outer().part(bot_row);
                    let bot_occupied = bot > shape.inner().part(bot_row);
                    let top_occupied = top > shape.inner().part(i);
                    if top_occupied && bot_occupied {
                        assert_eq!(top + bot, params.a + params.b);
                    }
                }
            }
        }
    }

    #[test]
    fn minimal_shape_fits_two_rectangle_union() {
        for params in [
            params_ex59(),
            EfmParameters::new(8, 2, 3, 1, 2, Partition::empty()).unwrap(),
        ] {
            let shape = params.minimal_shape().unwrap();
            for c in shape.cells() {
                assert!(c.col <= params.a + params.b);
                assert!(c.row <= params.q);
                if c.col > params.b.max(params.a) {
                    assert!(c.row <= params.p);
                }
            }
        }
    }

    #[test]
    fn okada_examples() {
        let nus = okada_expand(2, 1, 2, 2).unwrap();
        assert_eq!(
            nus,
            vec![
                Partition::from(vec![2, 2, 2]),
                Partition::from(vec![3, 2, 1]),
                Partition::from(vec![4, 2, 0]),
            ]
        );
        assert_eq!(okada_expand(0, 2, 0, 3).unwrap(), vec![Partition::empty()]);
        assert_eq!(
            okada_expand(1, 1, 1, 2).unwrap(),
            vec![Partition::from(vec![1, 1, 1]), Partition::from(vec![2, 1, 0])]
        );
        assert!(okada_expand(1, 3, 1, 2).is_err());
    }

    #[test]
    fn admissible_examples() {
        let params = params_ex59();
        let nus = admissible_outer_shapes(&params).unwrap();
        assert_eq!(nus.len(), 3);

        // degenerate n = 0: xi itself must be the only admissible shape
        let p0 = EfmParameters::new(0, 1, 2, 2, 2, Partition::new(vec![4, 2, 0]).unwrap()).unwrap();
        let only = admissible_outer_shapes(&p0).unwrap();
        assert_eq!(only, vec![Partition::from(vec![4, 2])]);

        // xi_1 too wide: nothing can contain it
        let wide = okada_expand(2, 1, 2, 2)
            .unwrap()
            .into_iter()
            .filter(|nu| nu.contains(&Partition::from(vec![5])))
            .count();
        assert_eq!(wide, 0);
    }

    #[test]
    fn family_outers_match_admissible() {
        // completing a family shape with the untouched rows of xi gives
        // exactly the admissible Okada outer shapes
        for params in [
            params_ex59(),
            EfmParameters::new(3, 1, 3, 2, 3, Partition::new(vec![3, 3, 2]).unwrap()).unwrap(),
            EfmParameters::new(8, 2, 3, 1, 2, Partition::empty()).unwrap(),
            // a set with nonzero xi below row q
            EfmParameters::new(7, 3, 4, 4, 3, Partition::new(vec![5, 5, 2, 2, 2, 1]).unwrap())
                .unwrap(),
        ] {
            let nn = params.big_n();
            let spread: BTreeSet<Partition> = shape_family(&params)
                .unwrap()
                .into_iter()
                .map(|s| {
                    let parts: Vec<usize> = (1..=nn)
                        .map(|r| {
                            if s.outer().part(r) > s.inner().part(r) {
                                s.outer().part(r)
                            } else {
                                params.xi.part(r)
                            }
                        })
                        .collect();
                    Partition::new(parts).expect("completed outer is a partition")
                })
                .collect();
            let admissible: BTreeSet<Partition> =
                admissible_outer_shapes(&params).unwrap().into_iter().collect();
            assert_eq!(spread, admissible);
        }
    }

    #[test]
    fn mu_derivation_round_trips() {
        // a = mu q + (|xi|+n)/N and b = -mu p + (|xi|+n)/N recover the
        // block characters from mu
        for params in [
            params_ex59(),
            EfmParameters::new(3, 1, 3, 2, 3, Partition::new(vec![3, 3, 2]).unwrap()).unwrap(),
            EfmParameters::new(7, 3, 4, 4, 3, Partition::new(vec![5, 5, 2, 2, 2, 1]).unwrap())
                .unwrap(),
        ] {
            let derived = EfmParameters::from_mu(
                params.n,
                params.p,
                params.q,
                params.mu(),
                params.xi.clone(),
            )
            .unwrap();
            match derived {
                ParamsFromMu::Params(d) => assert_eq!(d, params),
                ParamsFromMu::Zero => panic!("derivation lost {params:?}"),
            }
        }
        // a fractional mu forces the zero module
        let zero = EfmParameters::from_mu(
            2,
            1,
            2,
            num_rational::Rational64::new(1, 2),
            Partition::empty(),
        )
        .unwrap();
        assert!(matches!(zero, ParamsFromMu::Zero));
    }

    #[test]
    fn values_are_send_and_sync() {
        fn check<T: Send + Sync>() {}
        check::<Partition>();
        check::<SkewShape>();
        check::<EfmParameters>();
    }

    #[test]
    fn shape_json() {
        let params = params_ex59();
        let shape = params.minimal_shape().unwrap();
        let js = serde_json::to_string(&shape).unwrap();
        assert_eq!(js, r#"{"outer":[4,2],"inner":[2,1]}"#);
        let back: SkewShape = serde_json::from_str(&js).unwrap();
        assert_eq!(back, shape);
    }
}
