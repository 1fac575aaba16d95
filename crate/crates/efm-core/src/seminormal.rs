//! The explicit H_n(1, kappa2)-module in its tableau basis: exact rational
//! generator matrices, the defining-relation verifier, intertwiners, weight
//! decomposition, the weight graph, and irreducibility certificates.
//!
//! In the tableau basis the y_k are diagonal with entries zeta_k, and s_i
//! (resp. gamma_n) acts on w_T through the diagonal coefficient
//! 1/(zeta_i - zeta_{i+1}) (resp. kappa2/(2 zeta_n)) plus an off-diagonal
//! coefficient on the moved tableau when the move is defined. The defining
//! relations, checked exactly, are the arbiter for these coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{EfmError, Result};
use crate::half::Weight;
use crate::matrix::{rat_int, rat_string, Mat, RowSpace};
use crate::shapes::EfmParameters;
use crate::tableaux::{move_gamma, move_si, tab_family, weight_of, StandardTableau};

/// Parameters of the degenerate affine Hecke algebra H_n(kappa1, kappa2) of
/// type C_n. Images of the Etingof-Freund-Ma construction always have
/// kappa1 = 1 and integral kappa2 = p - q - a + b.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct HeckeParams {
    pub n: usize,
    pub kappa2: i64,
}

impl HeckeParams {
    /// kappa1, always 1 for images of this construction.
    pub fn kappa1(&self) -> BigRational {
        rat_int(1)
    }
}

/// The module in its weight basis: tableaux label basis vectors, y's are
/// diagonal, s_i and gamma_n touch at most two basis vectors per column.
#[derive(Clone)]
pub struct SeminormalModule {
    pub params: HeckeParams,
    pub efm: EfmParameters,
    pub basis: Vec<StandardTableau>,
    pub weights: Vec<Weight>,
    pub mat_s: Vec<Mat>,
    pub mat_gamma: Option<Mat>,
    pub mat_y: Vec<Mat>,
}

/// Builds the module attached to the parameters: basis indexed by the
/// tableau family, matrices from the weight data.
pub fn build_efm_module(params: &EfmParameters) -> Result<SeminormalModule> {
    let basis = tab_family(params)?;
    let dim = basis.len();
    let n = params.n;
    let kappa2 = params.kappa2();
    let weights: Vec<Weight> = basis.iter().map(|t| weight_of(t, params)).collect();

    if n >= 1 {
        for z in &weights {
            if z.coord(n).is_zero() {
                // a vanishing last eigenvalue only occurs at kappa2 = 0,
                // where the gamma action is not pinned down
                if kappa2 == 0 {
                    return Err(EfmError::DegenerateWeight);
                }
                unreachable!("zeta_n = 0 with kappa2 = {kappa2} on {z}");
            }
        }
    }

    let index: BTreeMap<&StandardTableau, usize> =
        basis.iter().enumerate().map(|(i, t)| (t, i)).collect();

    let mut mat_y = Vec::with_capacity(n);
    for k in 1..=n {
        let diag: Vec<BigRational> = weights.iter().map(|z| z.coord(k).to_rational()).collect();
        mat_y.push(Mat::diagonal(diag));
    }

    let mut mat_s = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let mut m = Mat::zero(dim, dim);
        for (c, t) in basis.iter().enumerate() {
            let z = &weights[c];
            let delta = z.coord(i) - z.coord(i + 1);
            // never zero on a family weight (adjacent equal coordinates kill
            // the weight space)
            let beta = rat_int(1) / delta.to_rational();
            m.add_entry(c, c, beta.clone());
            if let Some(moved) = move_si(t, i) {
                let r = index[&moved];
                m.add_entry(r, c, rat_int(1) - beta);
            }
        }
        mat_s.push(m);
    }

    let mat_gamma = if n >= 1 {
        let mut m = Mat::zero(dim, dim);
        for (c, t) in basis.iter().enumerate() {
            let zn = weights[c].coord(n);
            let bcoef = rat_int(kappa2) / (rat_int(2) * zn.to_rational());
            m.add_entry(c, c, bcoef.clone());
            if let Some(moved) = move_gamma(t, params) {
                let r = index[&moved];
                m.add_entry(r, c, rat_int(1) - bcoef);
            }
        }
        Some(m)
    } else {
        None
    };

    Ok(SeminormalModule {
        params: HeckeParams { n, kappa2 },
        efm: params.clone(),
        basis,
        weights,
        mat_s,
        mat_gamma,
        mat_y,
    })
}

impl SeminormalModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// s_i as a matrix, 1-based.
    pub fn s(&self, i: usize) -> &Mat {
        &self.mat_s[i - 1]
    }

    /// y_k as a matrix, 1-based.
    pub fn y(&self, k: usize) -> &Mat {
        &self.mat_y[k - 1]
    }

    pub fn gamma(&self) -> &Mat {
        self.mat_gamma.as_ref().expect("gamma needs n >= 1")
    }

    /// The intertwiner phi_i = [s_i, y_i] for i < n, phi_n = [gamma_n, y_n].
    pub fn intertwiner(&self, i: usize) -> Mat {
        assert!(i >= 1 && i <= self.params.n);
        let (g, yk) = if i < self.params.n {
            (self.s(i), self.y(i))
        } else {
            (self.gamma(), self.y(self.params.n))
        };
        g.mul(yk).sub(&yk.mul(g))
    }

    /// The product phi_{i_1} ... phi_{i_m} in word order (an empty word is
    /// the identity).
    pub fn intertwiner_word(&self, word: &[usize]) -> Mat {
        let mut out = Mat::identity(self.dim());
        for &i in word {
            out = out.mul(&self.intertwiner(i));
        }
        out
    }

    /// Groups basis indices by weight. Every class has size one for a
    /// module of this family.
    pub fn weight_decomposition(&self) -> BTreeMap<Weight, Vec<usize>> {
        let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (i, z) in self.weights.iter().enumerate() {
            out.entry(z.clone()).or_default().push(i);
        }
        out
    }

    /// The weight multiset, sorted.
    pub fn weight_multiset(&self) -> Vec<Weight> {
        let mut v = self.weights.clone();
        v.sort();
        v
    }

    /// Weights whose positive coordinates are all fixed (reachable by unit
    /// steps to +-kappa2/2 along later indices).
    pub fn minimal_weights(&self) -> Vec<Weight> {
        self.weights
            .iter()
            .filter(|z| crate::recovery::is_minimal(z, self.params.kappa2))
            .cloned()
            .collect()
    }
}

/// Whether two modules of the family are isomorphic: same Hecke parameters
/// and equal weight multisets. For these multiplicity-free Y-semisimple
/// modules the weight multiset determines the isomorphism class.
pub fn modules_isomorphic(m1: &SeminormalModule, m2: &SeminormalModule) -> Result<bool> {
    if m1.params.n != m2.params.n || m1.params.kappa2.abs() != m2.params.kappa2.abs() {
        return Err(EfmError::ParamMismatch(format!(
            "n/kappa2 = {}/{} vs {}/{}",
            m1.params.n, m1.params.kappa2, m2.params.n, m2.params.kappa2
        )));
    }
    Ok(m1.weight_multiset() == m2.weight_multiset())
}

/// One defining relation, checked as an exact matrix identity.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub pass: bool,
    /// (row, col, lhs entry, rhs entry) at the first difference.
    pub counterexample: Option<(usize, usize, String, String)>,
}

/// Outcome of the full relation suite.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

fn check(name: String, lhs: &Mat, rhs: &Mat) -> RelationCheck {
    match lhs.first_difference(rhs) {
        None => RelationCheck {
            name,
            pass: true,
            counterexample: None,
        },
        Some((r, c, a, b)) => RelationCheck {
            name,
            pass: false,
            counterexample: Some((r, c, rat_string(&a), rat_string(&b))),
        },
    }
}

/// Verifies the ten families of defining relations exactly:
/// involutions, type-A and type-C braid relations, distant commutations,
/// y-commutativity, the two cross relations, and gamma/y commutation.
pub fn verify_relations(m: &SeminormalModule) -> RelationReport {
    verify_relations_on(
        m.params.n,
        &rat_int(1),
        &rat_int(m.params.kappa2),
        &m.mat_s,
        m.mat_gamma.as_ref(),
        &m.mat_y,
    )
}

/// Same relation suite on user-supplied generator matrices: `s_mats[i-1]`
/// represents s_i, `y_mats[k-1]` represents y_k.
pub fn verify_relations_on(
    n: usize,
    kappa1: &BigRational,
    kappa2: &BigRational,
    s_mats: &[Mat],
    gamma: Option<&Mat>,
    y_mats: &[Mat],
) -> RelationReport {
    assert_eq!(s_mats.len(), n.saturating_sub(1));
    assert_eq!(y_mats.len(), n);
    let dim = y_mats.first().map_or(0, Mat::n_rows);
    let id = Mat::identity(dim);
    let s = |i: usize| &s_mats[i - 1];
    let y = |k: usize| &y_mats[k - 1];
    let mut checks = Vec::new();

    for i in 1..n {
        checks.push(check(format!("s{i}^2 = 1"), &s(i).mul(s(i)), &id));
    }
    if let Some(g) = gamma {
        checks.push(check("gamma^2 = 1".into(), &g.mul(g), &id));
    }
    for i in 1..n.saturating_sub(1) {
        let lhs = s(i).mul(s(i + 1)).mul(s(i));
        let rhs = s(i + 1).mul(s(i)).mul(s(i + 1));
        checks.push(check(format!("s{i} s{} s{i} braid", i + 1), &lhs, &rhs));
    }
    if n >= 2 {
        if let Some(g) = gamma {
            let sn = s(n - 1);
            let lhs = sn.mul(g).mul(sn).mul(g);
            let rhs = g.mul(sn).mul(g).mul(sn);
            checks.push(check(format!("s{} gamma braid", n - 1), &lhs, &rhs));
        }
    }
    for i in 1..n {
        for j in i + 2..n {
            checks.push(check(
                format!("s{i} s{j} commute"),
                &s(i).mul(s(j)),
                &s(j).mul(s(i)),
            ));
        }
        if i + 1 < n {
            if let Some(g) = gamma {
                // gamma commutes with s_i except for i = n-1 (braid above)
                checks.push(check(
                    format!("s{i} gamma commute"),
                    &s(i).mul(g),
                    &g.mul(s(i)),
                ));
            }
        }
    }
    for k in 1..=n {
        for l in k + 1..=n {
            checks.push(check(
                format!("y{k} y{l} commute"),
                &y(k).mul(y(l)),
                &y(l).mul(y(k)),
            ));
        }
    }
    for i in 1..n {
        let lhs = s(i).mul(y(i)).sub(&y(i + 1).mul(s(i)));
        checks.push(check(
            format!("s{i} y{i} - y{} s{i} = kappa1", i + 1),
            &lhs,
            &id.scale(kappa1),
        ));
        for j in 1..=n {
            if j != i && j != i + 1 {
                checks.push(check(
                    format!("s{i} y{j} commute"),
                    &s(i).mul(y(j)),
                    &y(j).mul(s(i)),
                ));
            }
        }
    }
    if let Some(g) = gamma {
        if n >= 1 {
            let lhs = g.mul(y(n)).add(&y(n).mul(g));
            checks.push(check(
                format!("gamma y{n} + y{n} gamma = kappa2"),
                &lhs,
                &id.scale(kappa2),
            ));
            for j in 1..n {
                checks.push(check(
                    format!("gamma y{j} commute"),
                    &g.mul(y(j)),
                    &y(j).mul(g),
                ));
            }
        }
    }
    RelationReport { checks }
}

/// Relation outcomes for the content-denominated coefficient variant,
/// recorded against the weight-denominated form the module uses.
///
/// The variant puts 1/(cont(i) - cont(i+1)) on the diagonal of s_i and
/// (1 - cont(i) + cont(i+1))/(cont(i) - cont(i+1)) on the moved tableau
/// (likewise kappa2/(2 cont(n)) for gamma). Diagonal basis rescalings leave
/// every defining relation outcome unchanged, so when the two variants
/// disagree on a relation no gauge can reconcile them; this report records
/// the disagreement rather than resolving it.
#[derive(Clone, Debug, Serialize)]
pub struct CoefficientVariantReport {
    /// Relation suite on the module as built (weight-denominated).
    pub built: RelationReport,
    /// Relation suite on the content-denominated variant; None when some
    /// entry of the variant divides by a vanishing content.
    pub literal: Option<RelationReport>,
    /// Whether a diagonal gauge could map one onto the other.
    pub gauge_equivalent: bool,
}

/// Builds the content-denominated variant of the generator matrices and
/// runs the relation suite on both forms.
pub fn literal_coefficient_report(params: &EfmParameters) -> Result<CoefficientVariantReport> {
    let module = build_efm_module(params)?;
    let n = params.n;
    let dim = module.dim();
    let kappa2 = params.kappa2();
    let index: BTreeMap<&StandardTableau, usize> =
        module.basis.iter().enumerate().map(|(i, t)| (t, i)).collect();

    let mut lit_s = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let mut m = Mat::zero(dim, dim);
        for (c, t) in module.basis.iter().enumerate() {
            let e = rat_int(t.content(i) - t.content(i + 1));
            let diag = rat_int(1) / e.clone();
            m.add_entry(c, c, diag);
            if let Some(moved) = move_si(t, i) {
                let r = index[&moved];
                m.add_entry(r, c, (rat_int(1) - &e) / e);
            }
        }
        lit_s.push(m);
    }
    let mut defined = true;
    let lit_gamma = if n >= 1 {
        let mut m = Mat::zero(dim, dim);
        for (c, t) in module.basis.iter().enumerate() {
            if t.content(n) == 0 {
                defined = false;
                break;
            }
            let two_cont = rat_int(2 * t.content(n));
            let diag = rat_int(kappa2) / two_cont.clone();
            m.add_entry(c, c, diag);
            if let Some(moved) = move_gamma(t, params) {
                let r = index[&moved];
                m.add_entry(r, c, (rat_int(kappa2) - two_cont.clone()) / two_cont);
            }
        }
        Some(m)
    } else {
        None
    };

    let built = verify_relations(&module);
    let literal = if defined {
        Some(verify_relations_on(
            n,
            &rat_int(1),
            &rat_int(kappa2),
            &lit_s,
            lit_gamma.as_ref(),
            &module.mat_y,
        ))
    } else {
        None
    };
    let gauge_equivalent = literal.as_ref().is_some_and(|lit| {
        built
            .checks
            .iter()
            .zip(&lit.checks)
            .all(|(b, l)| b.pass == l.pass)
    });
    Ok(CoefficientVariantReport {
        built,
        literal,
        gauge_equivalent,
    })
}

/// An edge of the weight graph: tableau `from` maps to `to` under the move
/// m_i (i = n is the gamma move).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub label: usize,
}

/// The move graph on the tableau family.
#[derive(Clone, Debug, Serialize)]
pub struct WeightGraph {
    pub nodes: Vec<StandardTableau>,
    pub weights: Vec<Weight>,
    pub edges: Vec<GraphEdge>,
}

/// Builds the weight graph: nodes are the family tableaux, edges all
/// successful moves m_1..m_n.
pub fn weight_graph(params: &EfmParameters) -> Result<WeightGraph> {
    let nodes = tab_family(params)?;
    let weights: Vec<Weight> = nodes.iter().map(|t| weight_of(t, params)).collect();
    let index: BTreeMap<&StandardTableau, usize> =
        nodes.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut edges = Vec::new();
    for (c, t) in nodes.iter().enumerate() {
        for i in 1..params.n {
            if let Some(moved) = move_si(t, i) {
                edges.push(GraphEdge {
                    from: c,
                    to: index[&moved],
                    label: i,
                });
            }
        }
        if params.n >= 1 {
            if let Some(moved) = move_gamma(t, params) {
                edges.push(GraphEdge {
                    from: c,
                    to: index[&moved],
                    label: params.n,
                });
            }
        }
    }
    Ok(WeightGraph {
        nodes,
        weights,
        edges,
    })
}

impl WeightGraph {
    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.from].push(e.to);
            adj[e.to].push(e.from);
        }
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// A spanning tree rooted at node 0: for each non-root node, the parent
    /// node and the move label realizing the edge. None when disconnected.
    pub fn spanning_tree(&self) -> Option<Vec<(usize, usize, usize)>> {
        if self.nodes.is_empty() {
            return Some(Vec::new());
        }
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.nodes.len()];
        let mut seen = vec![false; self.nodes.len()];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.from].push((e.to, e.label));
            adj[e.to].push((e.from, e.label));
        }
        while let Some(v) = queue.pop_front() {
            for &(w, label) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, label));
                    queue.push_back(w);
                }
            }
        }
        if !seen.iter().all(|&s| s) {
            return None;
        }
        Some(
            parent
                .into_iter()
                .enumerate()
                .filter_map(|(w, p)| p.map(|(v, label)| (w, v, label)))
                .collect(),
        )
    }

    /// DOT output with stable node identifiers; node labels are a hash of
    /// the tableau JSON, edge labels m1..mn.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph weight_graph {\n");
        for (i, t) in self.nodes.iter().enumerate() {
            let js = serde_json::to_string(t).expect("tableau serializes");
            let _ = writeln!(out, "  n{i} [label=\"{:016x}\"];", fnv1a(js.as_bytes()));
        }
        for e in &self.edges {
            let _ = writeln!(out, "  n{} -> n{} [label=\"m{}\"];", e.from, e.to, e.label);
        }
        out.push_str("}\n");
        out
    }

    /// Canonical form for isomorphism checks: edges keyed by endpoint
    /// weights and label. Weights are distinct within a module, so equality
    /// of canonical forms is graph isomorphism respecting weights.
    pub fn canonical_edges(&self) -> Vec<(Vec<i64>, usize, Vec<i64>)> {
        let mut out: Vec<(Vec<i64>, usize, Vec<i64>)> = self
            .edges
            .iter()
            .map(|e| {
                (
                    self.weights[e.from].doubled(),
                    e.label,
                    self.weights[e.to].doubled(),
                )
            })
            .collect();
        out.sort();
        out
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Irreducibility verdict with its certificate.
#[derive(Clone, Debug, Serialize)]
pub struct IrreducibilityReport {
    pub irreducible: bool,
    pub graph_connected: bool,
    /// (node, parent, move) triples of a spanning tree when connected.
    pub spanning_tree: Option<Vec<(usize, usize, usize)>>,
    /// Independent matrix-span check, run for small dimensions.
    pub burnside: Option<bool>,
}

/// Decides irreducibility via connectivity of the weight graph; for
/// dimension at most `burnside_cap` also confirms independently that the
/// generator matrices span the full d*d matrix algebra.
pub fn is_irreducible(params: &EfmParameters, burnside_cap: usize) -> Result<IrreducibilityReport> {
    let graph = weight_graph(params)?;
    let connected = graph.is_connected();
    let tree = graph.spanning_tree();
    let burnside = if graph.nodes.len() <= burnside_cap && !graph.nodes.is_empty() {
        let module = build_efm_module(params)?;
        Some(burnside_spans(&module))
    } else {
        None
    };
    Ok(IrreducibilityReport {
        irreducible: connected,
        graph_connected: connected,
        spanning_tree: tree,
        burnside,
    })
}

/// Burnside criterion: the span of all products of generator matrices has
/// dimension d^2 exactly when the module is irreducible (over an
/// algebraically closed field; rational arithmetic is exact here because
/// all eigenvalues are rational).
pub fn burnside_spans(m: &SeminormalModule) -> bool {
    let d = m.dim();
    if d == 0 {
        return true;
    }
    let mut gens: Vec<Mat> = Vec::new();
    gens.extend(m.mat_s.iter().cloned());
    if let Some(g) = &m.mat_gamma {
        gens.push(g.clone());
    }
    gens.extend(m.mat_y.iter().cloned());

    let mut span = RowSpace::new(d * d);
    let id = Mat::identity(d);
    span.insert(id.flatten());
    let mut frontier = vec![id];
    while !frontier.is_empty() && span.rank() < d * d {
        let mut next = Vec::new();
        for mat in &frontier {
            for g in &gens {
                let prod = g.mul(mat);
                if span.insert(prod.flatten()) {
                    next.push(prod);
                }
            }
        }
        frontier = next;
    }
    span.rank() == d * d
}
