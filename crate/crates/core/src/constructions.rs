//! Constructions of correct node sets.
//!
//! Three families: triangular lattices, intersection sets of lines in
//! general position, and two-curve sets built from a complete intersection
//! plus greedily chosen extra points on each curve. The greedy step accepts
//! a sampled point exactly when it raises the evaluation-matrix rank, which
//! by exchange reaches any achievable rank if the sampler is rich enough.

use crate::analysis::{is_correct, vandermonde, AnalysisError, GcCertificate, NodeSet};
use crate::poly::{line_intersection, space_dim, Curve, Line, Point, PolyError};
use crate::rat::{rat, Rat};
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Candidate points tried per greedy slot before giving up.
pub const DEFAULT_SAMPLER_BUDGET: usize = 1024;
/// Resamples allowed per random line before giving up.
pub const LINE_RESAMPLE_BUDGET: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("need at least two lines, got {got}")]
    TooFewLines { got: usize },
    #[error("lines {i} and {j} are parallel")]
    DegenerateLines { i: usize, j: usize },
    #[error("lines {i}, {j} and {k} pass through one point")]
    ConcurrentLines { i: usize, j: usize, k: usize },
    #[error("sampling budget {budget} exhausted: rank reached {reached}, needed {needed}")]
    SamplerBudgetExhausted { needed: usize, reached: usize, budget: usize },
    #[error("curve has a factor that is not a line; cannot sample points on it")]
    CurveNotSamplable,
    #[error("delta must be 0 or 1, got {delta}")]
    BadDelta { delta: usize },
    #[error("the two curves share a component")]
    CurvesShareComponent,
    #[error("factor line {fi} of the first curve is parallel to factor line {gj} of the second")]
    ParallelFactorLines { fi: usize, gj: usize },
    #[error("intersection points span rank {rank}, expected {expected}")]
    IntersectionRankDeficit { rank: usize, expected: usize },
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The triangular lattice of degree `n`: integer points with `x + y <= n`,
/// listed row by row in `y`. Correct at degree `n` (each node is cut out by
/// products of the lattice lines missing it).
pub fn principal_lattice(n: usize) -> NodeSet {
    let mut nodes = Vec::with_capacity(space_dim(n));
    for j in 0..=n {
        for i in 0..=(n - j) {
            nodes.push(Point::from_ints(i as i64, j as i64));
        }
    }
    NodeSet::new(nodes).expect("lattice points are distinct")
}

/// `count` lines with small integer coefficients, pairwise non-parallel and
/// no three through a point. Deterministic in `seed`; fails only if the
/// per-line resample budget runs out.
pub fn random_general_position_lines(
    count: usize,
    seed: u64,
) -> Result<Vec<Line>, ConstructionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines: Vec<Line> = Vec::with_capacity(count);
    let mut meets: Vec<Point> = Vec::new();
    while lines.len() < count {
        let mut accepted = false;
        for _ in 0..LINE_RESAMPLE_BUDGET {
            let a: i64 = rng.gen_range(-9..=9);
            let b: i64 = rng.gen_range(-9..=9);
            let c: i64 = rng.gen_range(-9..=9);
            if a == 0 && b == 0 {
                continue;
            }
            let cand = Line::from_ints(a, b, c).expect("nonzero direction");
            let parallel = |l: &Line| (l.a() * cand.b() - l.b() * cand.a()).is_zero();
            if lines.iter().any(parallel) || meets.iter().any(|p| cand.contains(p)) {
                continue;
            }
            for prev in &lines {
                meets.push(line_intersection(prev, &cand).expect("checked non-parallel"));
            }
            lines.push(cand);
            accepted = true;
            break;
        }
        if !accepted {
            return Err(ConstructionError::SamplerBudgetExhausted {
                needed: count,
                reached: lines.len(),
                budget: LINE_RESAMPLE_BUDGET,
            });
        }
    }
    Ok(lines)
}

/// The pairwise-intersection node set of `n + 2` general-position lines,
/// with the line factorization of each fundamental polynomial: node
/// `(i, j)` is certified by the remaining `n` lines. Nodes are ordered by
/// the lexicographic pair order.
pub fn chung_yao(lines: &[Line]) -> Result<(NodeSet, GcCertificate), ConstructionError> {
    if lines.len() < 2 {
        return Err(ConstructionError::TooFewLines { got: lines.len() });
    }
    let mut nodes = Vec::new();
    let mut pair_of: Vec<(usize, usize)> = Vec::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let p = line_intersection(&lines[i], &lines[j])
                .ok_or(ConstructionError::DegenerateLines { i, j })?;
            if let Some(prev) = nodes.iter().position(|q| *q == p) {
                let (pi, pj) = pair_of[prev];
                // Two coincident intersection points share exactly one line.
                let shared = if pi == i || pi == j { pi } else { pj };
                let (mut a, mut b) = (i, j);
                if a == shared {
                    a = pi + pj - shared;
                }
                if b == shared {
                    b = pi + pj - shared;
                }
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                return Err(ConstructionError::ConcurrentLines { i: lo, j: hi, k: shared });
            }
            nodes.push(p);
            pair_of.push((i, j));
        }
    }
    let cert = GcCertificate::new(
        pair_of
            .iter()
            .map(|&(i, j)| {
                lines
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i && *k != j)
                    .map(|(_, l)| l.clone())
                    .collect()
            })
            .collect(),
    );
    Ok((NodeSet::new(nodes)?, cert))
}

/// Random-line variant of [`chung_yao`] for degree `n`.
pub fn chung_yao_random(
    n: usize,
    seed: u64,
) -> Result<(Vec<Line>, NodeSet, GcCertificate), ConstructionError> {
    let lines = random_general_position_lines(n + 2, seed)?;
    let (nodes, cert) = chung_yao(&lines)?;
    Ok((lines, nodes, cert))
}

/// A pair of axis-parallel line products: `x(x-1)...(x-k+1)` and
/// `y(y-1)...(y-m+1)`. They meet in the `k * m` integer grid.
pub fn grid_curves(k: usize, m: usize) -> (Curve, Curve) {
    let vertical: Vec<Line> = (0..k)
        .map(|i| Line::from_ints(1, 0, -(i as i64)).expect("vertical line"))
        .collect();
    let horizontal: Vec<Line> = (0..m)
        .map(|j| Line::from_ints(0, 1, -(j as i64)).expect("horizontal line"))
        .collect();
    (
        Curve::from_lines(&vertical).expect("nonempty distinct lines"),
        Curve::from_lines(&horizontal).expect("nonempty distinct lines"),
    )
}

/// A source of candidate points for greedy enlargement.
pub trait PointSource {
    fn next_point(&mut self) -> Option<Point>;
}

/// Unconstrained rational points with bounded numerators and denominators.
pub struct RationalPointSampler {
    rng: ChaCha8Rng,
}

impl RationalPointSampler {
    pub fn new(seed: u64) -> Self {
        RationalPointSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn coord(&mut self) -> Rat {
        rat(self.rng.gen_range(-999..=999), self.rng.gen_range(1..=16))
    }
}

impl PointSource for RationalPointSampler {
    fn next_point(&mut self) -> Option<Point> {
        Some(Point { x: self.coord(), y: self.coord() })
    }
}

/// Points on a line-factored curve: cycles through the factor lines,
/// parameterizing each with random bounded rationals.
pub struct LineCurveSampler {
    lines: Vec<Line>,
    rng: ChaCha8Rng,
    next: usize,
}

impl LineCurveSampler {
    /// Fails with `CurveNotSamplable` if some factor is not a line.
    pub fn new(curve: &Curve, seed: u64) -> Result<Self, ConstructionError> {
        let lines = curve.line_factors().ok_or(ConstructionError::CurveNotSamplable)?;
        Ok(LineCurveSampler { lines, rng: ChaCha8Rng::seed_from_u64(seed), next: 0 })
    }
}

impl PointSource for LineCurveSampler {
    fn next_point(&mut self) -> Option<Point> {
        let line = &self.lines[self.next % self.lines.len()];
        self.next += 1;
        let t = rat(self.rng.gen_range(-999..=999), self.rng.gen_range(1..=16));
        Some(line.point_at(&t))
    }
}

/// Greedily extends `base` with sampled points until `extra` of them have
/// each raised the degree-`n` evaluation rank by one. Returns the accepted
/// points in acceptance order.
pub fn enlarge_independent(
    base: &NodeSet,
    extra: usize,
    n: usize,
    source: &mut dyn PointSource,
    budget: usize,
) -> Result<Vec<Point>, ConstructionError> {
    let mut nodes: Vec<Point> = base.nodes().to_vec();
    let mut accepted = Vec::with_capacity(extra);
    let mut rank = vandermonde(base, n).rank();
    let needed = rank + extra;
    let mut spent = 0;
    while accepted.len() < extra {
        if spent >= budget {
            return Err(ConstructionError::SamplerBudgetExhausted { needed, reached: rank, budget });
        }
        spent += 1;
        let p = match source.next_point() {
            Some(p) => p,
            None => {
                return Err(ConstructionError::SamplerBudgetExhausted {
                    needed,
                    reached: rank,
                    budget,
                })
            }
        };
        if nodes.contains(&p) {
            continue;
        }
        nodes.push(p.clone());
        let grown = NodeSet::new(nodes.clone()).expect("distinctness checked");
        let new_rank = vandermonde(&grown, n).rank();
        if new_rank > rank {
            rank = new_rank;
            accepted.push(p);
        } else {
            nodes.pop();
        }
    }
    Ok(accepted)
}

/// [`enlarge_independent`] with candidates drawn from a line-factored curve.
pub fn enlarge_on_curve(
    base: &NodeSet,
    curve: &Curve,
    extra: usize,
    n: usize,
    seed: u64,
    budget: usize,
) -> Result<Vec<Point>, ConstructionError> {
    let mut sampler = LineCurveSampler::new(curve, seed)?;
    enlarge_independent(base, extra, n, &mut sampler, budget)
}

/// A correct set assembled from two coprime line-factored curves: all their
/// pairwise intersections, then enough extra points on each curve. With
/// `delta` in `{0, 1}` the target degree is `deg f + deg g - 2 + delta`.
/// Points on `f` contribute evaluation rank at most `dim P_n - dim P_{n-k}`,
/// so beyond the `k*m` intersections `f` carries `dim P_{n-m}` extras and
/// `g` carries `dim P_{n-k}`, filling the rank exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCurveSpec {
    pub f: Curve,
    pub g: Curve,
    pub delta: usize,
    pub n: usize,
    pub intersections: Vec<Point>,
    pub cf: Vec<Point>,
    pub cg: Vec<Point>,
}

impl TwoCurveSpec {
    /// Intersections first, then the extra points on `f`, then on `g`.
    pub fn node_set(&self) -> NodeSet {
        let mut nodes = self.intersections.clone();
        nodes.extend(self.cf.iter().cloned());
        nodes.extend(self.cg.iter().cloned());
        NodeSet::new(nodes).expect("construction keeps blocks disjoint")
    }
}

pub fn two_curve_correct_set(
    f: &Curve,
    g: &Curve,
    delta: usize,
    seed: u64,
    budget: usize,
) -> Result<TwoCurveSpec, ConstructionError> {
    if delta > 1 {
        return Err(ConstructionError::BadDelta { delta });
    }
    let f_lines = f.line_factors().ok_or(ConstructionError::CurveNotSamplable)?;
    let g_lines = g.line_factors().ok_or(ConstructionError::CurveNotSamplable)?;
    if !crate::poly::gcd_certificate(f, g)?.is_coprime() {
        return Err(ConstructionError::CurvesShareComponent);
    }
    let k = f.total_degree();
    let m = g.total_degree();
    let n = k + m - 2 + delta;

    let mut intersections = Vec::with_capacity(k * m);
    for (fi, a) in f_lines.iter().enumerate() {
        for (gj, b) in g_lines.iter().enumerate() {
            intersections.push(
                line_intersection(a, b)
                    .ok_or(ConstructionError::ParallelFactorLines { fi, gj })?,
            );
        }
    }
    let base = NodeSet::new(intersections.clone())?;
    let base_rank = vandermonde(&base, n).rank();
    if base_rank != k * m {
        return Err(ConstructionError::IntersectionRankDeficit {
            rank: base_rank,
            expected: k * m,
        });
    }

    let cf_count = space_dim_signed(n as i64 - m as i64);
    let cg_count = space_dim_signed(n as i64 - k as i64);
    let cf = enlarge_on_curve(&base, f, cf_count, n, seed, budget)?;
    let with_cf = {
        let mut nodes = intersections.clone();
        nodes.extend(cf.iter().cloned());
        NodeSet::new(nodes)?
    };
    let cg = enlarge_on_curve(&with_cf, g, cg_count, n, seed.wrapping_add(1), budget)?;

    let spec = TwoCurveSpec { f: f.clone(), g: g.clone(), delta, n, intersections, cf, cg };
    debug_assert!(is_correct(&spec.node_set(), n));
    Ok(spec)
}

fn space_dim_signed(n: i64) -> usize {
    if n < 0 {
        0
    } else {
        space_dim(n as usize)
    }
}
