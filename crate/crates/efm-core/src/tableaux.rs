//! Standard tableaux on skew shapes, the tableau family indexing an
//! Etingof-Freund-Ma image, combinatorial moves, content vectors, the
//! type-C Weyl action on weights, and weight-to-tableau reconstruction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{EfmError, Result};
use crate::half::{HalfInt, Weight};
use crate::shapes::{shape_family, Cell, EfmParameters, SkewShape};

/// A standard tableau: an injective filling 1..n -> cells whose image is a
/// skew shape, increasing along rows and columns. `cells[k-1]` is the cell
/// filled by k.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StandardTableau {
    cells: Vec<Cell>,
}

impl StandardTableau {
    /// Builds a tableau, checking injectivity, skew-shape image, and
    /// standardness.
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        let t = StandardTableau { cells };
        t.validate()?;
        Ok(t)
    }

    pub fn empty() -> Self {
        StandardTableau { cells: Vec::new() }
    }

    fn validate(&self) -> Result<()> {
        let set: BTreeSet<Cell> = self.cells.iter().copied().collect();
        if set.len() != self.cells.len() {
            return Err(EfmError::InvalidParameters(
                "tableau entries must occupy distinct cells".into(),
            ));
        }
        SkewShape::from_cells(&set)
            .map_err(|e| EfmError::InvalidParameters(format!("image is not a skew shape: {e}")))?;
        if !self.is_standard() {
            return Err(EfmError::InvalidParameters(
                "filling is not standard".into(),
            ));
        }
        Ok(())
    }

    fn is_standard(&self) -> bool {
        let index: BTreeMap<Cell, usize> = self
            .cells
            .iter()
            .enumerate()
            .map(|(k, &c)| (c, k))
            .collect();
        for (k, c) in self.cells.iter().enumerate() {
            for nb in [Cell::new(c.row + 1, c.col), Cell::new(c.row, c.col + 1)] {
                if let Some(&other) = index.get(&nb) {
                    if other < k {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn n(&self) -> usize {
        self.cells.len()
    }

    /// The cell filled by k (1-based).
    pub fn cell(&self, k: usize) -> Cell {
        self.cells[k - 1]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn entry_at(&self, c: Cell) -> Option<usize> {
        self.cells.iter().position(|&x| x == c).map(|k| k + 1)
    }

    pub fn image(&self) -> BTreeSet<Cell> {
        self.cells.iter().copied().collect()
    }

    pub fn shape(&self) -> SkewShape {
        SkewShape::from_cells(&self.image()).expect("image validated at construction")
    }

    /// Content of the cell filled by k.
    pub fn content(&self, k: usize) -> i64 {
        self.cell(k).content()
    }

    /// Translates every cell by the same row and column offsets.
    pub fn translate(&self, drow: i64, dcol: i64) -> Result<Self> {
        let cells = self
            .cells
            .iter()
            .map(|c| {
                let r = c.row as i64 + drow;
                let j = c.col as i64 + dcol;
                if r < 1 || j < 1 {
                    return Err(EfmError::InvalidParameters(
                        "translation leaves the positive quadrant".into(),
                    ));
                }
                Ok(Cell::new(r as usize, j as usize))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StandardTableau { cells })
    }

    /// Moves so that the smallest occupied row and column are both 1.
    pub fn normalize_translation(&self) -> Self {
        if self.cells.is_empty() {
            return self.clone();
        }
        let min_row = self.cells.iter().map(|c| c.row).min().unwrap();
        let min_col = self.cells.iter().map(|c| c.col).min().unwrap();
        self.translate(1 - min_row as i64, 1 - min_col as i64)
            .expect("normalization stays positive")
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{:?}", self.cells)
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.cells.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}:({},{})", k + 1, c.row, c.col)?;
        }
        write!(f, "]")
    }
}

impl Serialize for StandardTableau {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("StandardTableau", 1)?;
        st.serialize_field("cells", &self.cells)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for StandardTableau {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            cells: Vec<Cell>,
        }
        let r = Repr::deserialize(deserializer)?;
        StandardTableau::new(r.cells).map_err(D::Error::custom)
    }
}

/// All standard tableaux on a skew shape, in lexicographic order of their
/// entry-cell sequences. Backtracking over linear extensions of the cell
/// poset.
pub fn enumerate_syt(shape: &SkewShape) -> Vec<StandardTableau> {
    let cells = shape.cells();
    let n = cells.len();
    let mut used = vec![false; n];
    let mut current: Vec<Cell> = Vec::with_capacity(n);
    let mut out = Vec::new();

    fn ready(shape: &SkewShape, cells: &[Cell], used: &[bool], i: usize) -> bool {
        let c = cells[i];
        for nb in [
            (c.row as i64 - 1, c.col as i64),
            (c.row as i64, c.col as i64 - 1),
        ] {
            if nb.0 >= 1 && nb.1 >= 1 {
                let nb = Cell::new(nb.0 as usize, nb.1 as usize);
                if shape.contains_cell(nb) {
                    let j = cells.iter().position(|&x| x == nb).unwrap();
                    if !used[j] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn rec(
        shape: &SkewShape,
        cells: &[Cell],
        used: &mut Vec<bool>,
        current: &mut Vec<Cell>,
        out: &mut Vec<StandardTableau>,
    ) {
        if current.len() == cells.len() {
            out.push(StandardTableau {
                cells: current.clone(),
            });
            return;
        }
        for i in 0..cells.len() {
            if !used[i] && ready(shape, cells, used, i) {
                used[i] = true;
                current.push(cells[i]);
                rec(shape, cells, used, current, out);
                current.pop();
                used[i] = false;
            }
        }
    }

    rec(shape, &cells, &mut used, &mut current, &mut out);
    out
}

/// Number of standard tableaux on a skew shape.
pub fn syt_count(shape: &SkewShape) -> usize {
    enumerate_syt(shape).len()
}

/// The tableau family Tab(phi): all standard tableaux whose image lies in
/// the shape family, concatenated over the family in its canonical order.
/// Its length is the module dimension.
pub fn tab_family(params: &EfmParameters) -> Result<Vec<StandardTableau>> {
    let mut out = Vec::new();
    for shape in shape_family(params)? {
        out.extend(enumerate_syt(&shape));
    }
    Ok(out)
}

/// The move m_i: swap the entries i and i+1 if the result is standard.
pub fn move_si(t: &StandardTableau, i: usize) -> Option<StandardTableau> {
    assert!(i >= 1 && i < t.n(), "move index out of range");
    let mut cells = t.cells.clone();
    cells.swap(i - 1, i);
    let swapped = StandardTableau { cells };
    if swapped.is_standard() {
        Some(swapped)
    } else {
        None
    }
}

/// The move m_n: relocate the cell filled by n to (N-i+1, a+b-j+1), blocked
/// when i(n) <= max(p,q) and j(n) <= max(a,b).
pub fn move_gamma(t: &StandardTableau, params: &EfmParameters) -> Option<StandardTableau> {
    let n = t.n();
    assert!(n >= 1, "gamma move needs at least one entry");
    let c = t.cell(n);
    if c.row <= params.p.max(params.q) && c.col <= params.a.max(params.b) {
        return None;
    }
    let nn = params.big_n();
    let target = Cell::new(nn - c.row + 1, params.a + params.b - c.col + 1);
    let mut cells = t.cells.clone();
    cells[n - 1] = target;
    let moved = StandardTableau { cells };
    moved
        .validate()
        .expect("gamma move of a family tableau must stay standard");
    Some(moved)
}

/// The weight of a tableau: zeta_k = s - cont_T(k) with s = (a+b-N)/2.
pub fn weight_of(t: &StandardTableau, params: &EfmParameters) -> Weight {
    let s = params.shift();
    Weight(
        (1..=t.n())
            .map(|k| s - HalfInt::from_int(t.content(k)))
            .collect(),
    )
}

/// A generator of the finite Weyl group of type C_n.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Gen {
    /// The simple transposition s_i, 1 <= i <= n-1.
    S(usize),
    /// The sign flip gamma_n on the last coordinate.
    Gamma,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::S(i) => write!(f, "s{i}"),
            Gen::Gamma => write!(f, "g"),
        }
    }
}

/// Applies a word of generators to a weight, first letter first:
/// s_i swaps coordinates i, i+1 and gamma_n negates coordinate n.
pub fn weyl_act(word: &[Gen], zeta: &Weight) -> Weight {
    let mut v = zeta.0.clone();
    let n = v.len();
    for g in word {
        match *g {
            Gen::S(i) => {
                assert!(i >= 1 && i < n, "s_{i} out of range for n = {n}");
                v.swap(i - 1, i);
            }
            Gen::Gamma => {
                assert!(n >= 1, "gamma needs n >= 1");
                v[n - 1] = -v[n - 1];
            }
        }
    }
    Weight(v)
}

// Incremental placement state: one connected block of already-placed cells.
// Rows are relative until components are stacked; each diagonal holds a
// contiguous run of rows.
struct Component {
    runs: BTreeMap<i64, (i64, i64)>,
}

impl Component {
    fn rows(&self) -> (i64, i64) {
        let lo = self.runs.values().map(|r| r.0).min().unwrap();
        let hi = self.runs.values().map(|r| r.1).max().unwrap();
        (lo, hi)
    }
}

/// Rebuilds the standard tableau T with zeta_k = s - cont_T(k) from a weight.
///
/// Entry k lands on the diagonal determined by -zeta_k; its position along
/// the diagonal is forced by standardness. Connected blocks that never touch
/// are stacked by decreasing diagonal with no empty rows. The translation is
/// normalized so the occupied rows are 1..l(nu) and the smallest column is 1.
/// Returns the tableau and the shift s with zeta_k = s - cont_T(k) for all k.
pub fn reconstruct_tableau(zeta: &Weight, kappa2: i64) -> Result<(StandardTableau, HalfInt)> {
    let n = zeta.len();
    if n == 0 {
        return Ok((StandardTableau::empty(), HalfInt::ZERO));
    }
    if !zeta.parity_matches(kappa2) {
        return Err(EfmError::NotReconstructible(format!(
            "coordinates of {zeta} do not share the parity of kappa2 = {kappa2}"
        )));
    }
    let w = zeta.doubled();
    // relative contents: entry 1 sits on diagonal 0
    let diag: Vec<i64> = w.iter().map(|&x| (w[0] - x) / 2).collect();

    let mut comps: Vec<Component> = Vec::new();
    let mut alive: Vec<bool> = Vec::new();
    let mut comp_of: Vec<usize> = vec![usize::MAX; n];
    let mut row_of: Vec<i64> = vec![0; n];

    let find = |comps: &[Component], alive: &[bool], d: i64| -> Option<usize> {
        comps
            .iter()
            .enumerate()
            .find(|(ci, c)| alive[*ci] && c.runs.contains_key(&d))
            .map(|(ci, _)| ci)
    };

    for k in 0..n {
        let d = diag[k];
        let same = find(&comps, &alive, d);
        let left = find(&comps, &alive, d - 1);
        let above = find(&comps, &alive, d + 1);

        let (ci, row) = match same {
            Some(ci) => {
                let run = comps[ci].runs[&d];
                let r = run.1 + 1;
                let has = |c: &Component, dd: i64, rr: i64| {
                    c.runs.get(&dd).is_some_and(|&(lo, hi)| lo <= rr && rr <= hi)
                };
                if left != Some(ci)
                    || above != Some(ci)
                    || !has(&comps[ci], d - 1, r)
                    || !has(&comps[ci], d + 1, r - 1)
                {
                    return Err(EfmError::NotReconstructible(format!(
                        "entry {} repeats diagonal {} without filled neighbors",
                        k + 1,
                        d
                    )));
                }
                (ci, r)
            }
            None => match (left, above) {
                (None, None) => {
                    comps.push(Component {
                        runs: BTreeMap::new(),
                    });
                    alive.push(true);
                    (comps.len() - 1, 0)
                }
                (Some(cl), None) => {
                    let r = comps[cl].runs[&(d - 1)].0;
                    (cl, r)
                }
                (None, Some(ca)) => {
                    let r = comps[ca].runs[&(d + 1)].1 + 1;
                    (ca, r)
                }
                (Some(cl), Some(ca)) if cl == ca => {
                    let r = comps[ca].runs[&(d + 1)].1 + 1;
                    (ca, r)
                }
                (Some(cl), Some(ca)) => {
                    // glue: align the left run's top with the forced row
                    let r = comps[ca].runs[&(d + 1)].1 + 1;
                    let delta = r - comps[cl].runs[&(d - 1)].0;
                    let moved: Vec<(i64, (i64, i64))> = comps[cl]
                        .runs
                        .iter()
                        .map(|(&dd, &(lo, hi))| (dd, (lo + delta, hi + delta)))
                        .collect();
                    for (dd, run) in moved {
                        if comps[ca].runs.insert(dd, run).is_some() {
                            return Err(EfmError::NotReconstructible(format!(
                                "blocks overlap on diagonal {dd} while placing entry {}",
                                k + 1
                            )));
                        }
                    }
                    alive[cl] = false;
                    for e in 0..k {
                        if comp_of[e] == cl {
                            comp_of[e] = ca;
                            row_of[e] += delta;
                        }
                    }
                    (ca, r)
                }
            },
        };

        comp_of[k] = ci;
        row_of[k] = row;
        let run = comps[ci].runs.entry(d).or_insert((row, row));
        run.0 = run.0.min(row);
        run.1 = run.1.max(row);
    }

    // stack surviving blocks by decreasing diagonal, no empty rows
    let mut order: Vec<usize> = (0..comps.len()).filter(|&ci| alive[ci]).collect();
    order.sort_by_key(|&ci| {
        let max_d = comps[ci].runs.keys().max().copied().unwrap();
        std::cmp::Reverse(max_d)
    });
    let mut shift = vec![0i64; comps.len()];
    let mut next_top = 1i64;
    for &ci in &order {
        let (lo, hi) = comps[ci].rows();
        shift[ci] = next_top - lo;
        next_top += hi - lo + 1;
    }

    let rows: Vec<i64> = (0..n).map(|k| row_of[k] + shift[comp_of[k]]).collect();
    // the stacking shift acts diagonally, so columns follow the shifted rows
    let cols0: Vec<i64> = (0..n).map(|k| rows[k] + diag[k]).collect();
    let min_col = *cols0.iter().min().unwrap();
    let col_shift = 1 - min_col;

    let cells: Vec<Cell> = (0..n)
        .map(|k| Cell::new(rows[k] as usize, (cols0[k] + col_shift) as usize))
        .collect();
    let t = StandardTableau::new(cells)
        .map_err(|e| EfmError::NotReconstructible(e.to_string()))?;

    let s = zeta.coord(1) + HalfInt::from_int(t.content(1));
    for k in 1..=n {
        if zeta.coord(k) != s - HalfInt::from_int(t.content(k)) {
            return Err(EfmError::NotReconstructible(format!(
                "inconsistent shift at entry {k}"
            )));
        }
    }
    Ok((t, s))
}
