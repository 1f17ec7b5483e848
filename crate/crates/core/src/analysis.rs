//! Interpolation analysis of finite node sets.
//!
//! A node set of size equal to the polynomial-space dimension is *correct*
//! when every data assignment has exactly one interpolant; smaller sets are
//! *independent* when evaluation functionals are linearly independent. Both
//! reduce to exact ranks of the evaluation (Vandermonde) matrix in the
//! graded monomial order.
//!
//! "Node `A` uses curve `f`" means the fundamental polynomial of `A` lies in
//! `f * P_{n-k}`, decided by exact column-span membership. A curve of degree
//! `k <= n` is *maximal* when it passes through the largest number of nodes
//! an independent set allows, `dim P_n - dim P_{n-k}`.

use crate::combinatorics::d_count;
use crate::linalg::{RatMatrix, SolveOutcome};
use crate::poly::{
    line_through, monomial_index, monomials, space_dim, Curve, Line, Point, Poly,
};
use crate::rat::Rat;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("duplicate node: indices {first} and {second} coincide")]
    DuplicateNode { first: usize, second: usize },
    #[error("node index {index} out of range for {len} nodes")]
    NodeIndexOutOfRange { index: usize, len: usize },
    #[error("node {node} admits no fundamental polynomial (set not independent at it)")]
    NodeNotIndependent { node: usize },
    #[error("node set is not independent; interpolation is ill-posed")]
    DependentNodeSet,
    #[error("data vector has length {got}, expected {expected}")]
    DataLengthMismatch { expected: usize, got: usize },
    #[error("curve degree {degree} exceeds ambient degree {bound}")]
    DegreeExceedsBound { degree: usize, bound: usize },
    #[error("curve is not certified squarefree; maximality is undefined for it")]
    NotSquarefreeCertified,
    #[error("set is not correct at degree {degree}; the query needs a correct set")]
    NotCorrectSet { degree: usize },
    #[error("certificate invalid at node {node}: {reason}")]
    InvalidCertificate { node: usize, reason: String },
}

/// An ordered list of pairwise-distinct rational points. Order is stable:
/// indices in files, certificates and witnesses refer to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSet {
    nodes: Vec<Point>,
}

impl NodeSet {
    pub fn new(nodes: Vec<Point>) -> Result<Self, AnalysisError> {
        {
            let mut seen: BTreeMap<&Point, usize> = BTreeMap::new();
            for (i, p) in nodes.iter().enumerate() {
                if let Some(&first) = seen.get(p) {
                    return Err(AnalysisError::DuplicateNode { first, second: i });
                }
                seen.insert(p, i);
            }
        }
        Ok(NodeSet { nodes })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &Point {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn position(&self, p: &Point) -> Option<usize> {
        self.nodes.iter().position(|q| q == p)
    }

    /// The subset with the given indices removed, order preserved.
    pub fn without_indices(&self, drop: &BTreeSet<usize>) -> NodeSet {
        NodeSet {
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .filter(|(i, _)| !drop.contains(i))
                .map(|(_, p)| p.clone())
                .collect(),
        }
    }

    /// Replaces one node, revalidating distinctness.
    pub fn with_replaced(&self, index: usize, p: Point) -> Result<NodeSet, AnalysisError> {
        let mut nodes = self.nodes.clone();
        nodes[index] = p;
        NodeSet::new(nodes)
    }
}

/// File form of a node set: the set plus the degree it is meant for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NodeSetFileRepr", into = "NodeSetFileRepr")]
pub struct NodeSetFile {
    pub degree: i64,
    pub nodes: NodeSet,
}

#[derive(Serialize, Deserialize)]
struct NodeSetFileRepr {
    degree: i64,
    nodes: Vec<Point>,
}

impl From<NodeSetFile> for NodeSetFileRepr {
    fn from(f: NodeSetFile) -> Self {
        NodeSetFileRepr { degree: f.degree, nodes: f.nodes.nodes }
    }
}

impl TryFrom<NodeSetFileRepr> for NodeSetFile {
    type Error = String;

    fn try_from(r: NodeSetFileRepr) -> Result<Self, String> {
        if r.degree < 0 {
            return Err(format!("degree must be nonnegative, got {}", r.degree));
        }
        Ok(NodeSetFile {
            degree: r.degree,
            nodes: NodeSet::new(r.nodes).map_err(|e| e.to_string())?,
        })
    }
}

/// Evaluation matrix: one row per node, one column per monomial of degree
/// <= `n` in the graded order.
pub fn vandermonde(x: &NodeSet, n: usize) -> RatMatrix {
    let monos = monomials(n);
    let rows = x
        .nodes()
        .iter()
        .map(|p| {
            let mut xs = Vec::with_capacity(n + 1);
            let mut ys = Vec::with_capacity(n + 1);
            xs.push(Rat::one());
            ys.push(Rat::one());
            for k in 1..=n {
                xs.push(&xs[k - 1] * &p.x);
                ys.push(&ys[k - 1] * &p.y);
            }
            monos.iter().map(|(i, j)| &xs[*i] * &ys[*j]).collect()
        })
        .collect();
    RatMatrix::from_rows(rows)
}

/// Whether the evaluation functionals at the nodes are linearly independent
/// on the degree-`n` space.
pub fn is_independent(x: &NodeSet, n: usize) -> bool {
    vandermonde(x, n).rank() == x.len()
}

/// Independent and of full cardinality: unique interpolation.
pub fn is_correct(x: &NodeSet, n: usize) -> bool {
    x.len() == space_dim(n) && is_independent(x, n)
}

/// A fundamental polynomial: 1 at its node, 0 at the others. On a merely
/// independent set it is a witness, not unique; `unique` records which.
#[derive(Debug, Clone)]
pub struct Fundamental {
    pub poly: Poly,
    pub unique: bool,
}

pub fn fundamental_polynomial(
    x: &NodeSet,
    node: usize,
    n: usize,
) -> Result<Fundamental, AnalysisError> {
    if node >= x.len() {
        return Err(AnalysisError::NodeIndexOutOfRange { index: node, len: x.len() });
    }
    let v = vandermonde(x, n);
    let mut b = vec![Rat::zero(); x.len()];
    b[node] = Rat::one();
    match v.solve(&b) {
        SolveOutcome::Unique(c) => Ok(Fundamental {
            poly: Poly::from_coeffs(n, c).expect("solution length matches space"),
            unique: true,
        }),
        SolveOutcome::Underdetermined { witness, .. } => Ok(Fundamental {
            poly: Poly::from_coeffs(n, witness).expect("solution length matches space"),
            unique: false,
        }),
        SolveOutcome::Inconsistent => Err(AnalysisError::NodeNotIndependent { node }),
    }
}

/// The interpolant of `data` on `x` in the degree-`n` space. Requires an
/// independent set; on a correct set the result is the unique interpolant.
pub fn interpolate(x: &NodeSet, data: &[Rat], n: usize) -> Result<Poly, AnalysisError> {
    if data.len() != x.len() {
        return Err(AnalysisError::DataLengthMismatch { expected: x.len(), got: data.len() });
    }
    if !is_independent(x, n) {
        return Err(AnalysisError::DependentNodeSet);
    }
    let coeffs = vandermonde(x, n)
        .solve(data)
        .solution()
        .expect("independent sets have full row rank")
        .to_vec();
    Ok(Poly::from_coeffs(n, coeffs).expect("solution length matches space"))
}

/// Indices of the nodes lying on the curve, ascending.
pub fn nodes_on_curve(x: &NodeSet, f: &Curve) -> Vec<usize> {
    (0..x.len()).filter(|&i| f.contains(x.node(i))).collect()
}

/// Columns spanning `f * P_{n-k}` inside the degree-`n` coefficient space.
fn curve_span_matrix(f: &Curve, n: usize) -> Result<RatMatrix, AnalysisError> {
    let k = f.total_degree();
    if k > n {
        return Err(AnalysisError::DegreeExceedsBound { degree: k, bound: n });
    }
    let base = f
        .expanded_poly()
        .to_coeff_vec(k)
        .expect("expanded curve fits its degree");
    let base_monos = monomials(k);
    let shifts = monomials(n - k);
    let rows = space_dim(n);
    let mut m = RatMatrix::zero(rows, shifts.len());
    for (col, (si, sj)) in shifts.iter().enumerate() {
        for ((bi, bj), coeff) in base_monos.iter().zip(&base) {
            if !coeff.is_zero() {
                m.set(monomial_index(bi + si, bj + sj), col, coeff.clone());
            }
        }
    }
    Ok(m)
}

/// Whether node `node` uses curve `f`: its fundamental polynomial lies in
/// `f * P_{n-k}`. Nodes on the curve never use it.
pub fn uses_curve(x: &NodeSet, node: usize, f: &Curve, n: usize) -> Result<bool, AnalysisError> {
    if f.total_degree() > n {
        return Err(AnalysisError::DegreeExceedsBound { degree: f.total_degree(), bound: n });
    }
    if node >= x.len() {
        return Err(AnalysisError::NodeIndexOutOfRange { index: node, len: x.len() });
    }
    if f.eval(x.node(node)).is_zero() {
        return Ok(false);
    }
    let fundamental = fundamental_polynomial(x, node, n)?;
    let target = fundamental.poly.to_coeff_vec(n).expect("bound n by construction");
    Ok(curve_span_matrix(f, n)?.in_column_span(&target))
}

/// Whether the squarefree curve `f` passes through the maximum possible
/// number of nodes, `dim P_n - dim P_{n-k}`.
pub fn is_maximal_curve(x: &NodeSet, f: &Curve, n: usize) -> Result<bool, AnalysisError> {
    if !f.squarefree_certified() {
        return Err(AnalysisError::NotSquarefreeCertified);
    }
    let k = f.total_degree();
    if k > n {
        return Err(AnalysisError::DegreeExceedsBound { degree: k, bound: n });
    }
    Ok(nodes_on_curve(x, f).len() as i64 == d_count(n as i64, k as i64))
}

/// All lines through at least two nodes that carry exactly `n+1` nodes,
/// sorted by normalized coefficients.
pub fn maximal_lines(x: &NodeSet, n: usize) -> Vec<Line> {
    let mut candidates: BTreeSet<Line> = BTreeSet::new();
    for i in 0..x.len() {
        for j in (i + 1)..x.len() {
            if let Ok(l) = line_through(x.node(i), x.node(j)) {
                candidates.insert(l);
            }
        }
    }
    candidates
        .into_iter()
        .filter(|l| {
            x.nodes().iter().filter(|p| l.contains(p)).count() == n + 1
        })
        .collect()
}

/// Whether the nodes off `f` form a correct set of degree `n - k`.
pub fn check_complement_correct(
    x: &NodeSet,
    f: &Curve,
    n: usize,
) -> Result<bool, AnalysisError> {
    let k = f.total_degree();
    if k > n {
        return Err(AnalysisError::DegreeExceedsBound { degree: k, bound: n });
    }
    let on: BTreeSet<usize> = nodes_on_curve(x, f).into_iter().collect();
    Ok(is_correct(&x.without_indices(&on), n - k))
}

/// Per-node line factorizations of the fundamental polynomials: node `i`
/// maps to the `n` lines whose product is (a scalar multiple of) its
/// fundamental polynomial. JSON form is an object keyed by node index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, Vec<Line>>", into = "BTreeMap<String, Vec<Line>>")]
pub struct GcCertificate {
    node_lines: Vec<Vec<Line>>,
}

impl GcCertificate {
    pub fn new(node_lines: Vec<Vec<Line>>) -> Self {
        GcCertificate { node_lines }
    }

    pub fn len(&self) -> usize {
        self.node_lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.node_lines.is_empty()
    }

    pub fn lines_for(&self, node: usize) -> &[Line] {
        &self.node_lines[node]
    }
}

impl From<GcCertificate> for BTreeMap<String, Vec<Line>> {
    fn from(c: GcCertificate) -> Self {
        c.node_lines
            .into_iter()
            .enumerate()
            .map(|(i, lines)| (i.to_string(), lines))
            .collect()
    }
}

impl TryFrom<BTreeMap<String, Vec<Line>>> for GcCertificate {
    type Error = String;

    fn try_from(m: BTreeMap<String, Vec<Line>>) -> Result<Self, String> {
        let len = m.len();
        let mut node_lines = vec![None; len];
        for (k, v) in m {
            let idx: usize = k.parse().map_err(|_| format!("bad node index key {k:?}"))?;
            if idx >= len {
                return Err(format!("node index {idx} out of range for {len} entries"));
            }
            node_lines[idx] = Some(v);
        }
        Ok(GcCertificate {
            node_lines: node_lines
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or("duplicate node index keys")?,
        })
    }
}

/// Checks that `cert` proves every fundamental polynomial of `x` splits
/// into `n` lines: per node, exactly `n` lines, none through the node,
/// covering all other nodes.
pub fn verify_certificate(
    x: &NodeSet,
    n: usize,
    cert: &GcCertificate,
) -> Result<(), AnalysisError> {
    if cert.len() != x.len() {
        return Err(AnalysisError::InvalidCertificate {
            node: 0,
            reason: format!("certificate covers {} nodes, set has {}", cert.len(), x.len()),
        });
    }
    for a in 0..x.len() {
        let lines = cert.lines_for(a);
        if lines.len() != n {
            return Err(AnalysisError::InvalidCertificate {
                node: a,
                reason: format!("{} lines listed, expected {n}", lines.len()),
            });
        }
        if let Some(l) = lines.iter().find(|l| l.contains(x.node(a))) {
            return Err(AnalysisError::InvalidCertificate {
                node: a,
                reason: format!("line {l} passes through the node itself"),
            });
        }
        for b in 0..x.len() {
            if b != a && !lines.iter().any(|l| l.contains(x.node(b))) {
                return Err(AnalysisError::InvalidCertificate {
                    node: a,
                    reason: format!("node {b} not covered by any listed line"),
                });
            }
        }
    }
    Ok(())
}

/// Outcome of the geometric-characterization search. The search space is
/// lines through at least two nodes; a certificate or refutation is exact,
/// while `Inconclusive` means the space was exhausted without a decision.
#[derive(Debug, Clone)]
pub enum GcOutcome {
    Certified(GcCertificate),
    /// Some fundamental polynomial provably is not a product of `n` lines:
    /// the factors found leave more uncovered nodes than the remaining
    /// degree could cover even with one node per extra line.
    NotGc { node: usize, uncovered: usize, line_factors_found: usize },
    Inconclusive { node: usize, uncovered: usize, line_factors_found: usize },
}

/// Certifies (or refutes, or gives up on) the property that every
/// fundamental polynomial splits into `n` lines. With a `hint` the
/// certificate is verified directly; otherwise candidate lines through two
/// or more nodes are peeled off each fundamental polynomial by exact
/// division.
pub fn certify_gc(
    x: &NodeSet,
    n: usize,
    hint: Option<&GcCertificate>,
) -> Result<GcOutcome, AnalysisError> {
    if !is_correct(x, n) {
        return Err(AnalysisError::NotCorrectSet { degree: n });
    }
    if let Some(cert) = hint {
        verify_certificate(x, n, cert)?;
        return Ok(GcOutcome::Certified(cert.clone()));
    }
    if n == 0 {
        return Ok(GcOutcome::Certified(GcCertificate::new(vec![Vec::new()])));
    }
    let mut node_lines = Vec::with_capacity(x.len());
    let mut first_inconclusive: Option<GcOutcome> = None;
    for a in 0..x.len() {
        let fundamental = fundamental_polynomial(x, a, n)?.poly;
        let mut candidates: BTreeSet<Line> = BTreeSet::new();
        let others: Vec<usize> = (0..x.len()).filter(|&i| i != a).collect();
        for (pos, &i) in others.iter().enumerate() {
            for &j in &others[pos + 1..] {
                if let Ok(l) = line_through(x.node(i), x.node(j)) {
                    candidates.insert(l);
                }
            }
        }
        // Distinct lines dividing the fundamental polynomial; since the
        // polynomial is squarefree on a correct set, they are exactly its
        // line factors through >= 2 nodes.
        let divisors: Vec<Line> = candidates
            .into_iter()
            .filter(|l| fundamental.div_by_line(l).is_some())
            .collect();
        let t = divisors.len();
        let uncovered = others
            .iter()
            .filter(|&&i| !divisors.iter().any(|l| l.contains(x.node(i))))
            .count();
        if t == n {
            debug_assert_eq!(uncovered, 0);
            node_lines.push(divisors);
        } else if uncovered > n - t {
            return Ok(GcOutcome::NotGc { node: a, uncovered, line_factors_found: t });
        } else {
            first_inconclusive.get_or_insert(GcOutcome::Inconclusive {
                node: a,
                uncovered,
                line_factors_found: t,
            });
            node_lines.push(divisors);
        }
    }
    if let Some(out) = first_inconclusive {
        return Ok(out);
    }
    Ok(GcOutcome::Certified(GcCertificate::new(node_lines)))
}
