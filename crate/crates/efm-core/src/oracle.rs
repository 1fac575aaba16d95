//! Desk-scale tensor-space oracle: builds the invariant subspace of
//! V^xi ⊗ V^{⊗n} directly from gl_N matrix actions and realizes the
//! y/s/gamma operators on it, independently of the tableau model.
//!
//! V^xi is generated inside V^{⊗|xi|} by lowering operators from the
//! column-antisymmetrized highest weight vector, keeping one basis per
//! gl-weight component. The invariant space is cut out of the total-weight
//! (a^p, b^q) slice by the off-diagonal block conditions; all operators
//! preserve that slice, so everything happens in a space of modest
//! dimension.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{EfmError, Result};
use crate::half::{HalfInt, Weight};
use crate::matrix::{eigenvalue_bound, kernel_dense, rat_int, solve_in_span, Mat};
use crate::seminormal::{build_efm_module, verify_relations_on, RelationReport};
use crate::shapes::{EfmParameters, Partition};
use crate::symfunc::schur_poly;

type Word = u64;
type SparseVec = BTreeMap<Word, BigRational>;

/// Size caps for oracle runs; the tensor dimension grows as
/// dim(V^xi) * N^n.
#[derive(Clone, Copy, Debug)]
pub struct OracleBudget {
    pub max_tensor_dim: usize,
    pub max_factors: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_tensor_dim: 5000,
            max_factors: 4,
        }
    }
}

fn letter(code: Word, pos: usize, n_vars: usize) -> usize {
    let mut c = code;
    for _ in 0..pos {
        c /= n_vars as Word;
    }
    (c % n_vars as Word) as usize
}

fn with_letter(code: Word, pos: usize, n_vars: usize, new: usize) -> Word {
    let base = (n_vars as Word).pow(pos as u32);
    let old = letter(code, pos, n_vars);
    code - (old as Word) * base + (new as Word) * base
}

fn word_weight(code: Word, len: usize, n_vars: usize) -> Vec<u32> {
    let mut w = vec![0u32; n_vars];
    for pos in 0..len {
        w[letter(code, pos, n_vars)] += 1;
    }
    w
}

fn add_scaled(dst: &mut SparseVec, src: &SparseVec, factor: &BigRational) {
    if factor.is_zero() {
        return;
    }
    for (k, v) in src {
        let e = dst.entry(*k).or_insert_with(BigRational::zero);
        *e += v * factor;
        if e.is_zero() {
            dst.remove(k);
        }
    }
}

/// E_{s,t} (1-based; e_t -> e_s per factor) applied across all `len`
/// positions of the pure tensor part.
fn matrix_unit_on_words(v: &SparseVec, s: usize, t: usize, len: usize, n_vars: usize) -> SparseVec {
    let mut out = SparseVec::new();
    for (&code, coeff) in v {
        for pos in 0..len {
            if letter(code, pos, n_vars) == t - 1 {
                let new = with_letter(code, pos, n_vars, s - 1);
                let e = out.entry(new).or_insert_with(BigRational::zero);
                *e += coeff;
                if e.is_zero() {
                    out.remove(&new);
                }
            }
        }
    }
    out
}

// One gl-weight component of V^xi: basis vectors plus an echelonized copy
// for coordinate extraction.
struct WeightComponent {
    members: Vec<usize>,
    // (pivot word, reduced vector, expression in the member basis)
    echelon: Vec<(Word, SparseVec, Vec<BigRational>)>,
}

impl WeightComponent {
    fn new() -> Self {
        WeightComponent {
            members: Vec::new(),
            echelon: Vec::new(),
        }
    }

    // Reduces v against the echelon; returns the residual and the
    // coefficients of the eliminated part.
    fn reduce(&self, v: &SparseVec) -> (SparseVec, Vec<BigRational>) {
        let mut v = v.clone();
        let mut coeffs = vec![BigRational::zero(); self.members.len()];
        for (pivot, reduced, expr) in &self.echelon {
            if let Some(c) = v.get(pivot).cloned() {
                let neg = -c.clone();
                add_scaled(&mut v, reduced, &neg);
                for (acc, e) in coeffs.iter_mut().zip(expr) {
                    *acc += e * &c;
                }
            }
        }
        (v, coeffs)
    }

    // Tries to insert vector index `idx` with value v; true if independent.
    fn insert(&mut self, idx: usize, v: &SparseVec) -> bool {
        let (mut residual, mut coeffs) = self.reduce(v);
        let Some((&pivot, pv)) = residual.iter().next() else {
            return false;
        };
        let inv = BigRational::one() / pv.clone();
        let mut reduced = SparseVec::new();
        for (k, val) in &residual {
            reduced.insert(*k, val * &inv);
        }
        residual.clear();
        for c in coeffs.iter_mut() {
            *c = -(c.clone()) * &inv;
        }
        coeffs.push(inv);
        self.members.push(idx);
        self.echelon.push((pivot, reduced, coeffs));
        true
    }

    // Coordinates of v in the member basis; None when v is outside the span.
    fn coordinates(&self, v: &SparseVec) -> Option<Vec<BigRational>> {
        let (residual, coeffs) = self.reduce(v);
        if residual.is_empty() {
            Some(coeffs)
        } else {
            None
        }
    }
}

/// V^xi realized inside V^{⊗|xi|}, with a weight-vector basis generated by
/// lowering operators from the highest weight vector.
pub struct GlModule {
    pub n_vars: usize,
    pub len: usize,
    pub dim: usize,
    basis: Vec<SparseVec>,
    weights: Vec<Vec<u32>>,
    components: BTreeMap<Vec<u32>, WeightComponent>,
    // E_{s,t} on the basis: action[s-1][t-1][j] = sum of (j', coeff)
    action: Vec<Vec<UnitAction>>,
}

// per-basis images of one matrix unit, as coefficient lists
type UnitAction = Vec<Vec<(usize, BigRational)>>;

impl GlModule {
    pub fn new(xi: &Partition, n_vars: usize) -> Result<Self> {
        if xi.length() > n_vars {
            return Err(EfmError::TooManyRows(xi.length(), n_vars));
        }
        let rows: Vec<usize> = xi.trimmed().to_vec();
        let len = xi.size();
        let target_dim = schur_poly(xi, n_vars)?.eval_ones() as usize;

        // trivial module for the empty shape
        if len == 0 {
            let mut components = BTreeMap::new();
            let mut comp = WeightComponent::new();
            let mut one = SparseVec::new();
            one.insert(0, BigRational::one());
            comp.insert(0, &one);
            components.insert(vec![0u32; n_vars], comp);
            let mut module = GlModule {
                n_vars,
                len: 0,
                dim: 1,
                basis: vec![one],
                weights: vec![vec![0; n_vars]],
                components,
                action: Vec::new(),
            };
            module.compute_action();
            return Ok(module);
        }

        // canonical filling: row-major positions, letter = row
        let mut pos_of_cell: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut init_letters: Vec<usize> = Vec::with_capacity(len);
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..r {
                pos_of_cell.insert((i, j), init_letters.len());
                init_letters.push(i);
            }
        }
        // column antisymmetrization of the canonical word gives the
        // highest weight vector
        let n_cols = rows[0];
        let mut col_positions: Vec<Vec<usize>> = Vec::new();
        for j in 0..n_cols {
            let col: Vec<usize> = (0..rows.len())
                .filter(|&i| rows[i] > j)
                .map(|i| pos_of_cell[&(i, j)])
                .collect();
            col_positions.push(col);
        }
        let mut hw = SparseVec::new();
        let mut perms: Vec<(Vec<usize>, i64)> = vec![(Vec::new(), 1)];
        for col in &col_positions {
            let col_perms = signed_permutations(col.len());
            let mut next = Vec::with_capacity(perms.len() * col_perms.len());
            for (base, bsign) in &perms {
                for (perm, psign) in &col_perms {
                    let mut combined = base.clone();
                    combined.extend(perm.iter().map(|&k| col[k]));
                    next.push((combined, bsign * psign));
                }
            }
            perms = next;
        }
        let flat_cols: Vec<usize> = col_positions.iter().flatten().copied().collect();
        for (images, sign) in perms {
            // position flat_cols[k] maps to images[k]
            let mut letters = init_letters.clone();
            for (k, &src) in flat_cols.iter().enumerate() {
                letters[images[k]] = init_letters[src];
            }
            let code: Word = letters
                .iter()
                .enumerate()
                .map(|(pos, &l)| (l as Word) * (n_vars as Word).pow(pos as u32))
                .sum();
            let e = hw.entry(code).or_insert_with(BigRational::zero);
            *e += rat_int(sign);
            if e.is_zero() {
                hw.remove(&code);
            }
        }
        assert!(!hw.is_empty(), "antisymmetrization must not vanish");

        let mut module = GlModule {
            n_vars,
            len,
            dim: 0,
            basis: Vec::new(),
            weights: Vec::new(),
            components: BTreeMap::new(),
            action: Vec::new(),
        };
        module.try_add(hw);
        // lowering closure
        let mut cursor = 0;
        while cursor < module.basis.len() {
            let v = module.basis[cursor].clone();
            for i in 1..n_vars {
                let lowered = matrix_unit_on_words(&v, i + 1, i, len, n_vars);
                if !lowered.is_empty() {
                    module.try_add(lowered);
                }
            }
            cursor += 1;
        }
        if module.dim != target_dim {
            return Err(EfmError::InconsistentParameters(format!(
                "generated dimension {} for xi = {xi}, expected {target_dim}",
                module.dim
            )));
        }
        module.compute_action();
        Ok(module)
    }

    fn try_add(&mut self, v: SparseVec) -> bool {
        let (&code, _) = v.iter().next().expect("nonzero vector");
        let w = word_weight(code, self.len, self.n_vars);
        let idx = self.basis.len();
        let comp = self
            .components
            .entry(w.clone())
            .or_insert_with(WeightComponent::new);
        if comp.insert(idx, &v) {
            self.basis.push(v);
            self.weights.push(w);
            self.dim += 1;
            true
        } else {
            false
        }
    }

    fn compute_action(&mut self) {
        let n_vars = self.n_vars;
        let mut action = Vec::with_capacity(n_vars);
        for s in 1..=n_vars {
            let mut row = Vec::with_capacity(n_vars);
            for t in 1..=n_vars {
                let mut per_basis = Vec::with_capacity(self.dim);
                for j in 0..self.dim {
                    if s == t {
                        // diagonal action by the weight
                        let c = self.weights[j][s - 1];
                        if c == 0 {
                            per_basis.push(Vec::new());
                        } else {
                            per_basis.push(vec![(j, rat_int(c as i64))]);
                        }
                        continue;
                    }
                    let image =
                        matrix_unit_on_words(&self.basis[j], s, t, self.len, n_vars);
                    if image.is_empty() {
                        per_basis.push(Vec::new());
                        continue;
                    }
                    let mut w = self.weights[j].clone();
                    // e_t -> e_s shifts the weight
                    w[t - 1] -= 1;
                    w[s - 1] += 1;
                    let comp = self
                        .components
                        .get(&w)
                        .expect("image weight must be a module weight");
                    let coords = comp
                        .coordinates(&image)
                        .expect("module closed under matrix units");
                    per_basis.push(
                        comp.members
                            .iter()
                            .zip(coords)
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(&m, c)| (m, c))
                            .collect(),
                    );
                }
                row.push(per_basis);
            }
            action.push(row);
        }
        self.action = action;
    }

    /// E_{s,t} applied to basis vector j, in basis coordinates.
    pub fn unit_action(&self, s: usize, t: usize, j: usize) -> &[(usize, BigRational)] {
        &self.action[s - 1][t - 1][j]
    }

    pub fn weight(&self, j: usize) -> &[u32] {
        &self.weights[j]
    }
}

fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, sign: &mut i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if k <= 1 {
            out.push((items.clone(), *sign));
            return;
        }
        for i in 0..k {
            heap(k - 1, items, sign, out);
            if i < k - 1 {
                if k.is_multiple_of(2) {
                    items.swap(i, k - 1);
                } else {
                    items.swap(0, k - 1);
                }
                *sign = -*sign;
            }
        }
    }
    let mut sign = 1i64;
    heap(n, &mut items, &mut sign, &mut out);
    out
}

/// A vector of the pair space V^xi ⊗ V^{⊗n}, keyed by (gl basis index,
/// word code).
pub type PairVec = BTreeMap<(usize, Word), BigRational>;

/// The tensor space with its invariant subspace.
pub struct TensorSpace {
    pub n_vars: usize,
    pub p: usize,
    pub q: usize,
    pub a: usize,
    pub b: usize,
    pub n: usize,
    pub glmod: GlModule,
    /// basis pairs (j, word) of the total-weight slice
    pub pairs: Vec<(usize, Word)>,
    pair_index: BTreeMap<(usize, Word), usize>,
    /// columns spanning the invariant subspace, in slice coordinates
    pub invariant: Vec<Vec<BigRational>>,
}

impl TensorSpace {
    pub fn new(
        xi: &Partition,
        n_vars: usize,
        p: usize,
        n: usize,
        a: usize,
        b: usize,
        budget: &OracleBudget,
    ) -> Result<Self> {
        if p < 1 || p >= n_vars {
            return Err(EfmError::InconsistentParameters(format!(
                "p = {p} must satisfy 1 <= p < N = {n_vars}"
            )));
        }
        let q = n_vars - p;
        if p > q {
            return Err(EfmError::InconsistentParameters(
                "p exceeds q = N - p; swap the blocks".into(),
            ));
        }
        if xi.size() + n != p * a + q * b {
            return Err(EfmError::InconsistentParameters(format!(
                "|xi| + n = {} must equal p*a + q*b = {}",
                xi.size() + n,
                p * a + q * b
            )));
        }
        let gl_dim = schur_poly(xi, n_vars)?.eval_ones() as usize;
        let total = gl_dim * n_vars.pow(n as u32);
        if n > budget.max_factors || total > budget.max_tensor_dim {
            return Err(EfmError::OutOfBudget(format!(
                "dim(V^xi) * N^n = {gl_dim} * {n_vars}^{n} = {total} exceeds the cap {} (or n > {})",
                budget.max_tensor_dim, budget.max_factors
            )));
        }
        let glmod = GlModule::new(xi, n_vars)?;

        let mut target = vec![b as u32; n_vars];
        target[..p].fill(a as u32);

        let mut pairs = Vec::new();
        for code in 0..(n_vars as Word).pow(n as u32) {
            let ww = word_weight(code, n, n_vars);
            let mut need = target.clone();
            let mut ok = true;
            for s in 0..n_vars {
                if need[s] < ww[s] {
                    ok = false;
                    break;
                }
                need[s] -= ww[s];
            }
            if !ok {
                continue;
            }
            for j in 0..glmod.dim {
                if glmod.weight(j) == need.as_slice() {
                    pairs.push((j, code));
                }
            }
        }
        pairs.sort();
        let pair_index: BTreeMap<(usize, Word), usize> =
            pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();

        let mut space = TensorSpace {
            n_vars,
            p,
            q,
            a,
            b,
            n,
            glmod,
            pairs,
            pair_index,
            invariant: Vec::new(),
        };
        space.invariant = space.compute_invariant();
        Ok(space)
    }

    pub fn from_params(params: &EfmParameters, budget: &OracleBudget) -> Result<Self> {
        TensorSpace::new(
            &params.xi,
            params.big_n(),
            params.p,
            params.n,
            params.a,
            params.b,
            budget,
        )
    }

    pub fn slice_dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn dim_invariant(&self) -> usize {
        self.invariant.len()
    }

    pub fn shift(&self) -> HalfInt {
        HalfInt::from_doubled(self.a as i64 + self.b as i64 - self.n_vars as i64)
    }

    pub fn kappa2(&self) -> i64 {
        self.p as i64 - self.q as i64 - self.a as i64 + self.b as i64
    }

    /// E_{s,t} acting on one tensor factor (0 = the gl module, 1..=n the
    /// vector factors) applied to a pair-space vector.
    pub fn matrix_unit_action(&self, v: &PairVec, s: usize, t: usize, factor: usize) -> PairVec {
        let mut out = PairVec::new();
        for (&(j, code), coeff) in v {
            if factor == 0 {
                for &(j2, ref c) in self.glmod.unit_action(s, t, j) {
                    let e = out.entry((j2, code)).or_insert_with(BigRational::zero);
                    *e += c * coeff;
                    if e.is_zero() {
                        out.remove(&(j2, code));
                    }
                }
            } else if letter(code, factor - 1, self.n_vars) == t - 1 {
                let new = with_letter(code, factor - 1, self.n_vars, s - 1);
                let e = out.entry((j, new)).or_insert_with(BigRational::zero);
                *e += coeff;
                if e.is_zero() {
                    out.remove(&(j, new));
                }
            }
        }
        out
    }

    // E_{s,t} comultiplied over factors 0..=up_to.
    fn delta_unit(&self, v: &PairVec, s: usize, t: usize, up_to: usize) -> PairVec {
        let mut out = self.matrix_unit_action(v, s, t, 0);
        for factor in 1..=up_to {
            let part = self.matrix_unit_action(v, s, t, factor);
            for (k, c) in part {
                let e = out.entry(k).or_insert_with(BigRational::zero);
                *e += c;
                if e.is_zero() {
                    out.remove(&k);
                }
            }
        }
        out
    }

    fn pair_unit(&self, i: usize, c: &BigRational) -> PairVec {
        let mut v = PairVec::new();
        v.insert(self.pairs[i], c.clone());
        v
    }

    fn compute_invariant(&self) -> Vec<Vec<BigRational>> {
        // off-diagonal block conditions E_{s,t} v = 0; the diagonal
        // conditions are absorbed by the weight slice
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        let blocks: [Vec<usize>; 2] = [
            (1..=self.p).collect(),
            (self.p + 1..=self.n_vars).collect(),
        ];
        for block in &blocks {
            for &s in block {
                for &t in block {
                    if s == t {
                        continue;
                    }
                    // assemble the condition operator column by column,
                    // grouped by output key
                    let mut by_key: BTreeMap<(usize, Word), Vec<(usize, BigRational)>> =
                        BTreeMap::new();
                    for i in 0..self.pairs.len() {
                        let v = self.pair_unit(i, &BigRational::one());
                        let image = self.delta_unit(&v, s, t, self.n);
                        for (k, c) in image {
                            by_key.entry(k).or_default().push((i, c));
                        }
                    }
                    for (_, entries) in by_key {
                        let mut row = vec![BigRational::zero(); self.pairs.len()];
                        for (i, c) in entries {
                            row[i] = c;
                        }
                        rows.push(row);
                    }
                }
            }
        }
        kernel_dense(&rows, self.pairs.len())
    }

    /// y_k on the weight slice: the double-sum operator plus the shift.
    pub fn operator_y(&self, k: usize) -> Mat {
        assert!(k >= 1 && k <= self.n);
        let dim = self.pairs.len();
        let shift = self.shift().to_rational();
        let mut m = Mat::zero(dim, dim);
        for c in 0..dim {
            let unit = self.pair_unit(c, &BigRational::one());
            let mut acc = PairVec::new();
            for s in 1..=self.n_vars {
                for t in 1..=self.n_vars {
                    // (delta^{(k-1)} E_s^t) ⊗ (E_t^s)_k
                    let step = self.matrix_unit_action(&unit, t, s, k);
                    if step.is_empty() {
                        continue;
                    }
                    let full = self.delta_unit(&step, s, t, k - 1);
                    for (key, val) in full {
                        let e = acc.entry(key).or_insert_with(BigRational::zero);
                        *e -= val;
                        if e.is_zero() {
                            acc.remove(&key);
                        }
                    }
                }
            }
            for (key, val) in acc {
                let r = *self.pair_index.get(&key).expect("y_k preserves the slice");
                m.add_entry(r, c, val);
            }
            m.add_entry(c, c, shift.clone());
        }
        m
    }

    /// y_k computed through the Casimir identity: the coupling term equals
    /// (C_{0..k} - C_{0..k-1} - C_k)/2 with C_k = N on the vector factor.
    pub fn operator_y_casimir(&self, k: usize) -> Mat {
        assert!(k >= 1 && k <= self.n);
        let dim = self.pairs.len();
        let mut m = Mat::zero(dim, dim);
        let shift = self.shift().to_rational();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        for c in 0..dim {
            let unit = self.pair_unit(c, &BigRational::one());
            let big = self.casimir(&unit, k);
            let small = self.casimir(&unit, k - 1);
            let mut acc = PairVec::new();
            for (key, val) in big {
                let e = acc.entry(key).or_insert_with(BigRational::zero);
                *e += val;
            }
            for (key, val) in small {
                let e = acc.entry(key).or_insert_with(BigRational::zero);
                *e -= val;
                if e.is_zero() {
                    acc.remove(&key);
                }
            }
            for (key, val) in acc {
                if val.is_zero() {
                    continue;
                }
                let r = *self.pair_index.get(&key).expect("casimir preserves the slice");
                m.add_entry(r, c, -(val * &half));
            }
            // -(-C_k)/2 = +N/2, folded with the shift
            m.add_entry(c, c, shift.clone() + BigRational::new(
                BigInt::from(self.n_vars as i64),
                BigInt::from(2),
            ));
        }
        m
    }

    // Casimir over factors 0..=up_to applied to v.
    fn casimir(&self, v: &PairVec, up_to: usize) -> PairVec {
        let mut out = PairVec::new();
        for s in 1..=self.n_vars {
            for t in 1..=self.n_vars {
                let inner = self.delta_unit(v, t, s, up_to);
                if inner.is_empty() {
                    continue;
                }
                let outer = self.delta_unit(&inner, s, t, up_to);
                for (k, c) in outer {
                    let e = out.entry(k).or_insert_with(BigRational::zero);
                    *e += c;
                    if e.is_zero() {
                        out.remove(&k);
                    }
                }
            }
        }
        out
    }

    /// s_i on the weight slice: exchange of the i-th and (i+1)-th vector
    /// factors.
    pub fn operator_s(&self, i: usize) -> Mat {
        assert!(i >= 1 && i < self.n);
        let dim = self.pairs.len();
        let mut m = Mat::zero(dim, dim);
        for (c, &(j, code)) in self.pairs.iter().enumerate() {
            let li = letter(code, i - 1, self.n_vars);
            let lj = letter(code, i, self.n_vars);
            let swapped = with_letter(
                with_letter(code, i - 1, self.n_vars, lj),
                i,
                self.n_vars,
                li,
            );
            let r = self.pair_index[&(j, swapped)];
            m.add_entry(r, c, BigRational::one());
        }
        m
    }

    /// gamma_n on the weight slice: J = diag(I_p, -I_q) on the last factor.
    pub fn operator_gamma(&self) -> Mat {
        assert!(self.n >= 1);
        let dim = self.pairs.len();
        let mut m = Mat::zero(dim, dim);
        for (c, &(_, code)) in self.pairs.iter().enumerate() {
            let l = letter(code, self.n - 1, self.n_vars);
            let sign = if l < self.p { 1 } else { -1 };
            m.add_entry(c, c, rat_int(sign));
        }
        m
    }

    /// The first-form y_1: off-block double sum, (kappa2/2) gamma_1, and the
    /// block-diagonal exchange sums. Agrees with `operator_y(1)` after
    /// restriction to the invariant subspace.
    pub fn operator_y1_exchange_form(&self) -> Mat {
        assert!(self.n >= 1);
        let dim = self.pairs.len();
        let mut m = Mat::zero(dim, dim);
        let same_block = |s: usize, t: usize| (s <= self.p) == (t <= self.p);
        for (c, &(j, code)) in self.pairs.iter().enumerate() {
            // -sum over off-block (s,t) of (E_s^t)_0 (E_t^s)_1
            let s1 = letter(code, 0, self.n_vars) + 1;
            for t in 1..=self.n_vars {
                if same_block(s1, t) {
                    continue;
                }
                let moved = with_letter(code, 0, self.n_vars, t - 1);
                for &(j2, ref coeff) in self.glmod.unit_action(s1, t, j) {
                    let r = self.pair_index[&(j2, moved)];
                    m.add_entry(r, c, -coeff.clone());
                }
            }
            // (kappa2/2) gamma_1
            let sign = if s1 <= self.p { 1 } else { -1 };
            m.add_entry(
                c,
                c,
                BigRational::new(BigInt::from(self.kappa2() * sign), BigInt::from(2)),
            );
            // sum over l > 1 and block-diagonal (s,t) of (E_s^t)_1 (E_t^s)_l
            let t1 = letter(code, 0, self.n_vars) + 1;
            for l in 2..=self.n {
                let sl = letter(code, l - 1, self.n_vars) + 1;
                if !same_block(sl, t1) {
                    continue;
                }
                let moved = with_letter(
                    with_letter(code, 0, self.n_vars, sl - 1),
                    l - 1,
                    self.n_vars,
                    t1 - 1,
                );
                let r = self.pair_index[&(j, moved)];
                m.add_entry(r, c, BigRational::one());
            }
        }
        m
    }

    /// Restricts an operator on the slice to the invariant subspace;
    /// errors when the subspace is not preserved.
    pub fn restrict(&self, op: &Mat) -> Result<Mat> {
        let d = self.invariant.len();
        if d == 0 {
            return Ok(Mat::zero(0, 0));
        }
        let images: Vec<Vec<BigRational>> =
            self.invariant.iter().map(|k| op.apply(k)).collect();
        let coords =
            solve_in_span(&self.invariant, &images).ok_or(EfmError::RestrictionLeak)?;
        let mut m = Mat::zero(d, d);
        for (c, col) in coords.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.add_entry(r, c, v.clone());
                }
            }
        }
        Ok(m)
    }
}

/// The y/s/gamma operators restricted to the invariant subspace.
pub struct EfmOperators {
    pub dim: usize,
    pub y: Vec<Mat>,
    pub s: Vec<Mat>,
    pub gamma: Option<Mat>,
}

/// Builds the restricted operator set, asserting the invariant subspace is
/// preserved by every operator.
pub fn efm_operators(space: &TensorSpace) -> Result<EfmOperators> {
    let mut y = Vec::with_capacity(space.n);
    for k in 1..=space.n {
        y.push(space.restrict(&space.operator_y(k))?);
    }
    let mut s = Vec::with_capacity(space.n.saturating_sub(1));
    for i in 1..space.n {
        s.push(space.restrict(&space.operator_s(i))?);
    }
    let gamma = if space.n >= 1 {
        Some(space.restrict(&space.operator_gamma())?)
    } else {
        None
    };
    Ok(EfmOperators {
        dim: space.dim_invariant(),
        y,
        s,
        gamma,
    })
}

/// Candidate half-integer eigenvalues within the Gershgorin bound.
fn half_candidates(m: &Mat) -> Vec<HalfInt> {
    let bound = eigenvalue_bound(m);
    let two = BigRational::from_integer(BigInt::from(2));
    let doubled_bound = (bound * two).ceil().to_integer().to_i64().unwrap_or(0);
    (-doubled_bound..=doubled_bound)
        .map(HalfInt::from_doubled)
        .collect()
}

/// The multiset of eigenvalues of a single exactly-diagonalizable operator
/// with half-integer spectrum.
pub fn half_spectrum(m: &Mat) -> Result<Vec<HalfInt>> {
    let d = m.n_rows();
    let mut out = Vec::new();
    for lambda in half_candidates(m) {
        let shifted = m.sub(&Mat::scalar(d, lambda.to_rational()));
        let ker = kernel_dense(&shifted.to_dense_rows(), d);
        out.extend(std::iter::repeat_n(lambda, ker.len()));
    }
    if out.len() != d {
        return Err(EfmError::MismatchReport(format!(
            "operator is not semisimple over half-integers: {} of {d} eigenvalues found",
            out.len()
        )));
    }
    out.sort();
    Ok(out)
}

/// The joint spectrum of the commuting family y_1..y_n: one weight per
/// basis vector of the common eigenspace decomposition.
pub fn joint_spectrum(ys: &[Mat]) -> Result<Vec<Weight>> {
    let d = ys.first().map_or(0, Mat::n_rows);
    // subspaces as column bases, refined one operator at a time
    let mut spaces: Vec<(Vec<HalfInt>, Vec<Vec<BigRational>>)> = vec![(
        Vec::new(),
        (0..d)
            .map(|i| {
                let mut v = vec![BigRational::zero(); d];
                v[i] = BigRational::one();
                v
            })
            .collect(),
    )];
    for y in ys {
        let candidates = half_candidates(y);
        let mut next = Vec::new();
        for (prefix, basis) in spaces {
            let r = basis.len();
            let images: Vec<Vec<BigRational>> = basis.iter().map(|v| y.apply(v)).collect();
            let restricted =
                solve_in_span(&basis, &images).ok_or(EfmError::RestrictionLeak)?;
            let mut found = 0;
            for &lambda in &candidates {
                // kernel of (restricted - lambda) in subspace coordinates
                let mut rows = vec![vec![BigRational::zero(); r]; r];
                for (c, col) in restricted.iter().enumerate() {
                    for (i, v) in col.iter().enumerate() {
                        rows[i][c] = v.clone();
                    }
                    rows[c][c] -= lambda.to_rational();
                }
                let ker = kernel_dense(&rows, r);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let mut prefix2 = prefix.clone();
                prefix2.push(lambda);
                let lifted: Vec<Vec<BigRational>> = ker
                    .iter()
                    .map(|coeffs| {
                        let mut v = vec![BigRational::zero(); d];
                        for (bi, c) in coeffs.iter().enumerate() {
                            for (x, b) in v.iter_mut().zip(&basis[bi]) {
                                *x += b * c;
                            }
                        }
                        v
                    })
                    .collect();
                next.push((prefix2, lifted));
            }
            if found != r {
                return Err(EfmError::MismatchReport(
                    "joint spectrum is not semisimple over half-integers".into(),
                ));
            }
        }
        spaces = next;
    }
    let mut out = Vec::new();
    for (prefix, basis) in spaces {
        for _ in 0..basis.len() {
            out.push(Weight(prefix.clone()));
        }
    }
    out.sort();
    Ok(out)
}

/// Outcome of the oracle-versus-seminormal comparison.
#[derive(Debug, Serialize)]
pub struct OracleComparison {
    pub oracle_dim: usize,
    pub seminormal_dim: usize,
    pub dims_match: bool,
    pub relations: RelationReport,
    pub per_y_spectra_match: bool,
    pub joint_weights_match: bool,
    pub y1_exchange_form_matches: bool,
    pub casimir_route_matches: bool,
}

impl OracleComparison {
    pub fn pass(&self) -> bool {
        self.dims_match
            && self.relations.all_pass()
            && self.per_y_spectra_match
            && self.joint_weights_match
            && self.y1_exchange_form_matches
            && self.casimir_route_matches
    }
}

/// Builds both realizations and compares dimension, spectra, the joint
/// weight multiset, the two alternative y-routes, and the relation suite.
pub fn compare_with_seminormal(
    params: &EfmParameters,
    budget: &OracleBudget,
) -> Result<OracleComparison> {
    let space = TensorSpace::from_params(params, budget)?;
    let ops = efm_operators(&space)?;
    let module = build_efm_module(params)?;

    let oracle_dim = ops.dim;
    let seminormal_dim = module.dim();
    let dims_match = oracle_dim == seminormal_dim;

    let relations = verify_relations_on(
        space.n,
        &rat_int(1),
        &rat_int(space.kappa2()),
        &ops.s,
        ops.gamma.as_ref(),
        &ops.y,
    );

    let mut per_y = true;
    for k in 1..=space.n {
        let mut oracle_spec = half_spectrum(&ops.y[k - 1])?;
        let mut expect: Vec<HalfInt> = module.weights.iter().map(|z| z.coord(k)).collect();
        oracle_spec.sort();
        expect.sort();
        if oracle_spec != expect {
            per_y = false;
        }
    }

    let joint = joint_spectrum(&ops.y)?;
    let joint_weights_match = joint == module.weight_multiset();

    let y1_alt = space.restrict(&space.operator_y1_exchange_form())?;
    let y1_exchange_form_matches = space.n == 0 || y1_alt == ops.y[0];

    let mut casimir_ok = true;
    for k in 1..=space.n {
        let direct = space.operator_y(k);
        let via_casimir = space.operator_y_casimir(k);
        if direct != via_casimir {
            casimir_ok = false;
        }
    }

    Ok(OracleComparison {
        oracle_dim,
        seminormal_dim,
        dims_match,
        relations,
        per_y_spectra_match: per_y,
        joint_weights_match,
        y1_exchange_form_matches,
        casimir_route_matches: casimir_ok,
    })
}
