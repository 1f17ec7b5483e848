//! Bivariate polynomials over the rationals, lines, and factored curves.
//!
//! Polynomials are dense coefficient vectors in the graded ordering
//! `1, x, y, x^2, xy, y^2, ...` (within a degree block the power of `x`
//! descends). That ordering is fixed artifact-wide: linear systems, JSON
//! files and rendered output all index monomials this way.
//!
//! Curves are kept as lists of factors and are never expanded unless a
//! caller asks for a coefficient vector; evaluation multiplies factor
//! values, so factored structure (needed for gcd certificates and on-curve
//! sampling) is preserved exactly.

use crate::rat::{format_rat, parse_rat, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("line requires (a,b) != (0,0)")]
    DegenerateLine,
    #[error("cannot form a line through coincident points")]
    CoincidentPoints,
    #[error("coefficient vector has length {got}, expected {expected}")]
    CoefficientLengthMismatch { expected: usize, got: usize },
    #[error("curve must have at least one factor")]
    EmptyCurve,
    #[error("curve factor is constant (effective degree 0) or zero")]
    ConstantFactor,
    #[error("effective degree {degree} exceeds requested bound {bound}")]
    DegreeExceedsBound { degree: usize, bound: usize },
    #[error("factor matching undecidable: unfactored non-line components remain")]
    UnfactoredCurve,
}

/// Number of monomials of total degree <= `n`.
pub fn space_dim(n: usize) -> usize {
    crate::combinatorics::dim_pi(n as i64) as usize
}

/// Monomial exponent pairs `(i, j)` for `x^i y^j`, in the artifact-wide
/// graded order.
pub fn monomials(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(space_dim(n));
    for d in 0..=n {
        for j in 0..=d {
            out.push((d - j, j));
        }
    }
    out
}

/// Position of `x^i y^j` in the graded order.
pub fn monomial_index(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolyRepr", into = "PolyRepr")]
pub struct Poly {
    degree_bound: usize,
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero(degree_bound: usize) -> Self {
        Poly { degree_bound, coeffs: vec![Rat::zero(); space_dim(degree_bound)] }
    }

    pub fn constant(c: Rat) -> Self {
        Poly { degree_bound: 0, coeffs: vec![c] }
    }

    pub fn from_coeffs(degree_bound: usize, coeffs: Vec<Rat>) -> Result<Self, PolyError> {
        let expected = space_dim(degree_bound);
        if coeffs.len() != expected {
            return Err(PolyError::CoefficientLengthMismatch { expected, got: coeffs.len() });
        }
        Ok(Poly { degree_bound, coeffs })
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^i y^j` (zero beyond the bound).
    pub fn coeff(&self, i: usize, j: usize) -> Rat {
        if i + j > self.degree_bound {
            Rat::zero()
        } else {
            self.coeffs[monomial_index(i, j)].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Largest total degree carrying a nonzero coefficient; `None` for the
    /// zero polynomial.
    pub fn effective_degree(&self) -> Option<usize> {
        monomials(self.degree_bound)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|((i, j), _)| i + j)
            .max()
    }

    pub fn eval(&self, p: &Point) -> Rat {
        let n = self.degree_bound;
        let mut xs = Vec::with_capacity(n + 1);
        let mut ys = Vec::with_capacity(n + 1);
        xs.push(Rat::one());
        ys.push(Rat::one());
        for k in 1..=n {
            xs.push(&xs[k - 1] * &p.x);
            ys.push(&ys[k - 1] * &p.y);
        }
        let mut acc = Rat::zero();
        for ((i, j), c) in monomials(n).iter().zip(&self.coeffs) {
            if !c.is_zero() {
                acc += c * &xs[*i] * &ys[*j];
            }
        }
        acc
    }

    /// Re-embeds the coefficient vector into the space of degree <= `n`.
    pub fn to_coeff_vec(&self, n: usize) -> Result<Vec<Rat>, PolyError> {
        let degree = self.effective_degree().unwrap_or(0);
        if degree > n {
            return Err(PolyError::DegreeExceedsBound { degree, bound: n });
        }
        let mut out = vec![Rat::zero(); space_dim(n)];
        for ((i, j), c) in monomials(self.degree_bound).iter().zip(&self.coeffs) {
            if !c.is_zero() {
                out[monomial_index(*i, *j)] = c.clone();
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let bound = self.degree_bound.max(other.degree_bound);
        let mut coeffs = self.to_coeff_vec(bound).expect("bound covers self");
        for ((i, j), c) in monomials(other.degree_bound).iter().zip(&other.coeffs) {
            if !c.is_zero() {
                coeffs[monomial_index(*i, *j)] += c;
            }
        }
        Poly { degree_bound: bound, coeffs }
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        Poly {
            degree_bound: self.degree_bound,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Product with bound equal to the sum of the effective degrees; the
    /// zero polynomial propagates as zero with bound 0.
    pub fn multiply(&self, other: &Poly) -> Poly {
        let (Some(da), Some(db)) = (self.effective_degree(), other.effective_degree()) else {
            return Poly::zero(0);
        };
        let bound = da + db;
        let mut coeffs = vec![Rat::zero(); space_dim(bound)];
        let ma = monomials(self.degree_bound);
        let mb = monomials(other.degree_bound);
        for (pa, ca) in ma.iter().zip(&self.coeffs) {
            if ca.is_zero() {
                continue;
            }
            for (pb, cb) in mb.iter().zip(&other.coeffs) {
                if cb.is_zero() {
                    continue;
                }
                coeffs[monomial_index(pa.0 + pb.0, pa.1 + pb.1)] += ca * cb;
            }
        }
        Poly { degree_bound: bound, coeffs }
    }

    /// Same polynomial regardless of the stored bounds.
    pub fn same_polynomial(&self, other: &Poly) -> bool {
        let bound = self.degree_bound.max(other.degree_bound);
        self.to_coeff_vec(bound).unwrap() == other.to_coeff_vec(bound).unwrap()
    }

    /// Scales to integer coefficients with content 1 and a positive leading
    /// (highest-monomial) coefficient; the canonical representative of the
    /// scalar class. The zero polynomial maps to zero with bound 0.
    pub fn canonical(&self) -> Poly {
        let Some(deg) = self.effective_degree() else {
            return Poly::zero(0);
        };
        let coeffs = self.to_coeff_vec(deg).expect("effective degree fits");
        let denom_lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let content = scaled
            .iter()
            .fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let lead_negative = scaled
            .iter()
            .rev()
            .find(|v| !v.is_zero())
            .map(|v| v.is_negative())
            .unwrap_or(false);
        let divisor = if lead_negative { -content } else { content };
        Poly {
            degree_bound: deg,
            coeffs: scaled
                .into_iter()
                .map(|v| Rat::from_integer(v / &divisor))
                .collect(),
        }
    }

    /// Equal up to a nonzero scalar.
    pub fn proportional(&self, other: &Poly) -> bool {
        self.canonical() == other.canonical()
    }

    /// Exact quotient by a line, or `None` when the line does not divide.
    pub fn div_by_line(&self, line: &Line) -> Option<Poly> {
        let Some(d) = self.effective_degree() else {
            return Some(Poly::zero(0));
        };
        if d == 0 {
            return None; // nonzero constant has no linear factor
        }
        let (a, b, c) = (line.a(), line.b(), line.c());
        // layers[j][i] = coefficient of x^i y^j
        let mut layers = vec![vec![Rat::zero(); d + 1]; d + 1];
        for ((i, j), v) in monomials(self.degree_bound).iter().zip(&self.coeffs) {
            if !v.is_zero() {
                layers[*j][*i] = v.clone();
            }
        }
        let mut quot = vec![vec![Rat::zero(); d + 1]; d];
        if !b.is_zero() {
            // p = q*(b*y + a*x + c) + r(x)
            for j in (1..=d).rev() {
                for i in 0..=d - 1 {
                    if layers[j][i].is_zero() {
                        continue;
                    }
                    let q = &layers[j][i] / &b;
                    layers[j - 1][i] -= &q * &c;
                    layers[j - 1][i + 1] -= &q * &a;
                    quot[j - 1][i] = q;
                }
                debug_assert!(layers[j][d].is_zero());
            }
            if layers[0].iter().any(|v| !v.is_zero()) {
                return None;
            }
        } else {
            // Vertical line: p = q*(a*x + c) + r(y)
            for i in (1..=d).rev() {
                for j in 0..=d - 1 {
                    if layers[j][i].is_zero() {
                        continue;
                    }
                    let q = &layers[j][i] / &a;
                    layers[j][i - 1] -= &q * &c;
                    quot[j][i - 1] = q;
                }
                debug_assert!(layers[d][i].is_zero());
            }
            if (0..=d).any(|j| !layers[j][0].is_zero()) {
                return None;
            }
        }
        let mut coeffs = vec![Rat::zero(); space_dim(d - 1)];
        for (j, layer) in quot.iter().enumerate() {
            for (i, v) in layer.iter().enumerate() {
                if !v.is_zero() {
                    coeffs[monomial_index(i, j)] = v.clone();
                }
            }
        }
        Some(Poly { degree_bound: d - 1, coeffs })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<((usize, usize), &Rat)> = monomials(self.degree_bound)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, ((i, j), c)) in terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -(*c).clone() } else { (*c).clone() };
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut mono = String::new();
            if *i > 0 {
                mono.push('x');
                if *i > 1 {
                    mono.push_str(&format!("^{i}"));
                }
            }
            if *j > 0 {
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push('y');
                if *j > 1 {
                    mono.push_str(&format!("^{j}"));
                }
            }
            if mono.is_empty() {
                write!(f, "{}", format_rat(&abs))?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", format_rat(&abs), mono)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    degree_bound: usize,
    coeffs: Vec<String>,
}

impl From<Poly> for PolyRepr {
    fn from(p: Poly) -> Self {
        PolyRepr {
            degree_bound: p.degree_bound,
            coeffs: p.coeffs.iter().map(format_rat).collect(),
        }
    }
}

impl TryFrom<PolyRepr> for Poly {
    type Error = String;

    fn try_from(r: PolyRepr) -> Result<Self, String> {
        let coeffs: Result<Vec<Rat>, _> = r.coeffs.iter().map(|s| parse_rat(s)).collect();
        Poly::from_coeffs(r.degree_bound, coeffs.map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())
    }
}

/// A point in the rational plane.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[String; 2]", into = "[String; 2]")]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point { x: crate::rat::rat_int(x), y: crate::rat::rat_int(y) }
    }
}

impl From<Point> for [String; 2] {
    fn from(p: Point) -> Self {
        [format_rat(&p.x), format_rat(&p.y)]
    }
}

impl TryFrom<[String; 2]> for Point {
    type Error = String;

    fn try_from(v: [String; 2]) -> Result<Self, String> {
        Ok(Point {
            x: parse_rat(&v[0]).map_err(|e| e.to_string())?,
            y: parse_rat(&v[1]).map_err(|e| e.to_string())?,
        })
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rat(&self.x), format_rat(&self.y))
    }
}

/// The line `a*x + b*y + c = 0`, stored normalized: coefficients are
/// coprime integers and the first nonzero of `(a, b, c)` is positive, so
/// equal lines compare equal as values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[String; 3]", into = "[String; 3]")]
pub struct Line {
    a: Rat,
    b: Rat,
    c: Rat,
}

impl Line {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Result<Self, PolyError> {
        if a.is_zero() && b.is_zero() {
            return Err(PolyError::DegenerateLine);
        }
        let denom_lcm = [&a, &b, &c]
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<BigInt> = [&a, &b, &c]
            .iter()
            .map(|r| r.numer() * (&denom_lcm / r.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let first_negative = ints
            .iter()
            .find(|v| !v.is_zero())
            .map(|v| v.is_negative())
            .unwrap_or(false);
        let divisor = if first_negative { -content } else { content };
        let mut it = ints.into_iter().map(|v| Rat::from_integer(v / &divisor));
        Ok(Line {
            a: it.next().unwrap(),
            b: it.next().unwrap(),
            c: it.next().unwrap(),
        })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self, PolyError> {
        use crate::rat::rat_int;
        Line::new(rat_int(a), rat_int(b), rat_int(c))
    }

    pub fn a(&self) -> Rat {
        self.a.clone()
    }

    pub fn b(&self) -> Rat {
        self.b.clone()
    }

    pub fn c(&self) -> Rat {
        self.c.clone()
    }

    pub fn eval(&self, p: &Point) -> Rat {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.eval(p).is_zero()
    }

    pub fn to_poly(&self) -> Poly {
        Poly {
            degree_bound: 1,
            coeffs: vec![self.c.clone(), self.a.clone(), self.b.clone()],
        }
    }

    /// Recovers a line from a polynomial of effective degree 1.
    pub fn from_poly(p: &Poly) -> Option<Line> {
        if p.effective_degree() != Some(1) {
            return None;
        }
        Line::new(p.coeff(1, 0), p.coeff(0, 1), p.coeff(0, 0)).ok()
    }

    /// A rational point on the line, one per parameter value; used for
    /// deterministic on-line sampling.
    pub fn point_at(&self, t: &Rat) -> Point {
        if !self.b.is_zero() {
            let y = -(&self.a * t + &self.c) / &self.b;
            Point { x: t.clone(), y }
        } else {
            let x = -&self.c / &self.a;
            Point { x, y: t.clone() }
        }
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.to_poly())
    }
}

impl From<Line> for [String; 3] {
    fn from(l: Line) -> Self {
        [format_rat(&l.a), format_rat(&l.b), format_rat(&l.c)]
    }
}

impl TryFrom<[String; 3]> for Line {
    type Error = String;

    fn try_from(v: [String; 3]) -> Result<Self, String> {
        let vals: Result<Vec<Rat>, _> = v.iter().map(|s| parse_rat(s)).collect();
        let vals = vals.map_err(|e| e.to_string())?;
        Line::new(vals[0].clone(), vals[1].clone(), vals[2].clone()).map_err(|e| e.to_string())
    }
}

pub fn line_through(p: &Point, q: &Point) -> Result<Line, PolyError> {
    if p == q {
        return Err(PolyError::CoincidentPoints);
    }
    let a = &q.y - &p.y;
    let b = &p.x - &q.x;
    let c = -(&a * &p.x) - &b * &p.y;
    Line::new(a, b, c)
}

/// Intersection point of two lines; `None` for parallel (or equal) lines.
pub fn line_intersection(l1: &Line, l2: &Line) -> Option<Point> {
    let det = &l1.a * &l2.b - &l2.a * &l1.b;
    if det.is_zero() {
        return None;
    }
    let x = (&l1.b * &l2.c - &l2.b * &l1.c) / &det;
    let y = (&l2.a * &l1.c - &l1.a * &l2.c) / &det;
    Some(Point { x, y })
}

/// A plane algebraic curve kept in factored form. `squarefree_certified`
/// records whether the absence of repeated components has actually been
/// established (structurally, for products of distinct lines) or claimed by
/// the caller; consumers that need squarefreeness must check the flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CurveRepr", into = "CurveRepr")]
pub struct Curve {
    factors: Vec<Poly>,
    total_degree: usize,
    squarefree_certified: bool,
}

impl Curve {
    /// Product of lines; squarefree exactly when the normalized lines are
    /// pairwise distinct.
    pub fn from_lines(lines: &[Line]) -> Result<Self, PolyError> {
        if lines.is_empty() {
            return Err(PolyError::EmptyCurve);
        }
        let distinct = lines
            .iter()
            .enumerate()
            .all(|(i, l)| lines[i + 1..].iter().all(|m| m != l));
        Ok(Curve {
            factors: lines.iter().map(Line::to_poly).collect(),
            total_degree: lines.len(),
            squarefree_certified: distinct,
        })
    }

    pub fn from_factors(factors: Vec<Poly>, squarefree_claimed: bool) -> Result<Self, PolyError> {
        if factors.is_empty() {
            return Err(PolyError::EmptyCurve);
        }
        let mut total = 0;
        for f in &factors {
            match f.effective_degree() {
                Some(d) if d >= 1 => total += d,
                _ => return Err(PolyError::ConstantFactor),
            }
        }
        Ok(Curve { factors, total_degree: total, squarefree_certified: squarefree_claimed })
    }

    pub fn from_poly(p: Poly, squarefree_claimed: bool) -> Result<Self, PolyError> {
        Curve::from_factors(vec![p], squarefree_claimed)
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    pub fn total_degree(&self) -> usize {
        self.total_degree
    }

    pub fn squarefree_certified(&self) -> bool {
        self.squarefree_certified
    }

    /// Product of factor values; never expands.
    pub fn eval(&self, p: &Point) -> Rat {
        let mut acc = Rat::one();
        for f in &self.factors {
            let v = f.eval(p);
            if v.is_zero() {
                return Rat::zero();
            }
            acc *= v;
        }
        acc
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.factors.iter().any(|f| f.eval(p).is_zero())
    }

    pub fn expanded_poly(&self) -> Poly {
        let mut acc = Poly::constant(Rat::one());
        for f in &self.factors {
            acc = acc.multiply(f);
        }
        acc
    }

    /// Expanded coefficients embedded in the degree-`n` space.
    pub fn coefficient_vector(&self, n: usize) -> Result<Vec<Rat>, PolyError> {
        if self.total_degree > n {
            return Err(PolyError::DegreeExceedsBound { degree: self.total_degree, bound: n });
        }
        self.expanded_poly().to_coeff_vec(n)
    }

    /// The factors as lines, when every factor has effective degree 1.
    pub fn line_factors(&self) -> Option<Vec<Line>> {
        self.factors.iter().map(Line::from_poly).collect()
    }

    pub fn is_line_factored(&self) -> bool {
        self.factors.iter().all(|f| f.effective_degree() == Some(1))
    }

    /// The product curve. Squarefreeness is re-certified structurally; it
    /// survives only when both inputs are certified products of lines that
    /// stay pairwise distinct across the union.
    pub fn product(&self, other: &Curve) -> Curve {
        let factors: Vec<Poly> =
            self.factors.iter().chain(&other.factors).cloned().collect();
        let all_lines = factors.iter().all(|f| f.effective_degree() == Some(1));
        let certified = self.squarefree_certified
            && other.squarefree_certified
            && all_lines
            && factors.iter().enumerate().all(|(i, f)| {
                factors[i + 1..].iter().all(|g| !f.proportional(g))
            });
        Curve {
            factors,
            total_degree: self.total_degree + other.total_degree,
            squarefree_certified: certified,
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "({p})")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FactorRepr {
    Line([String; 3]),
    Poly(PolyRepr),
}

#[derive(Serialize, Deserialize)]
struct CurveRepr {
    factors: Vec<FactorRepr>,
    squarefree: bool,
}

impl From<Curve> for CurveRepr {
    fn from(c: Curve) -> Self {
        let factors = c
            .factors
            .into_iter()
            .map(|p| {
                if p.effective_degree() == Some(1) {
                    FactorRepr::Line([
                        format_rat(&p.coeff(1, 0)),
                        format_rat(&p.coeff(0, 1)),
                        format_rat(&p.coeff(0, 0)),
                    ])
                } else {
                    FactorRepr::Poly(p.into())
                }
            })
            .collect();
        CurveRepr { factors, squarefree: c.squarefree_certified }
    }
}

impl TryFrom<CurveRepr> for Curve {
    type Error = String;

    fn try_from(r: CurveRepr) -> Result<Self, String> {
        let factors: Result<Vec<Poly>, String> = r
            .factors
            .into_iter()
            .map(|f| match f {
                FactorRepr::Line(t) => {
                    let a = parse_rat(&t[0]).map_err(|e| e.to_string())?;
                    let b = parse_rat(&t[1]).map_err(|e| e.to_string())?;
                    let c = parse_rat(&t[2]).map_err(|e| e.to_string())?;
                    if a.is_zero() && b.is_zero() {
                        return Err("line factor requires (a,b) != (0,0)".to_string());
                    }
                    Ok(Poly { degree_bound: 1, coeffs: vec![c, a, b] })
                }
                FactorRepr::Poly(p) => Poly::try_from(p),
            })
            .collect();
        Curve::from_factors(factors?, r.squarefree).map_err(|e| e.to_string())
    }
}

/// Factor-matching gcd evidence for two factored curves: matched factors
/// (up to scalar) form the common part; the leftovers are the cofactors.
#[derive(Debug, Clone)]
pub struct CurveGcd {
    pub common: Option<Curve>,
    pub left: Option<Curve>,
    pub right: Option<Curve>,
}

impl CurveGcd {
    pub fn is_coprime(&self) -> bool {
        self.common.is_none()
    }
}

/// Splits two curves into common part and cofactors by multiset matching of
/// canonical factor forms. Errors with [`PolyError::UnfactoredCurve`] when
/// the leftovers contain non-line factors whose coprimality cannot be
/// decided without polynomial factorization (including a leftover line that
/// exactly divides a leftover non-line factor, which would need splitting).
pub fn gcd_certificate(f1: &Curve, f2: &Curve) -> Result<CurveGcd, PolyError> {
    let mut right_left: Vec<Option<&Poly>> = f2.factors.iter().map(Some).collect();
    let mut common = Vec::new();
    let mut left = Vec::new();
    for p in &f1.factors {
        let pc = p.canonical();
        let matched = right_left.iter_mut().find(|slot| {
            slot.map_or(false, |q| q.canonical() == pc)
        });
        match matched {
            Some(slot) => {
                *slot = None;
                common.push(p.clone());
            }
            None => left.push(p.clone()),
        }
    }
    let right: Vec<Poly> = right_left.into_iter().flatten().cloned().collect();

    let is_line = |p: &Poly| p.effective_degree() == Some(1);
    let left_nonlines: Vec<&Poly> = left.iter().filter(|p| !is_line(p)).collect();
    let right_nonlines: Vec<&Poly> = right.iter().filter(|p| !is_line(p)).collect();
    if !left_nonlines.is_empty() && !right_nonlines.is_empty() {
        return Err(PolyError::UnfactoredCurve);
    }
    let crosses = |lines: &[Poly], others: &[&Poly]| -> bool {
        lines.iter().filter(|p| is_line(p)).any(|lp| {
            let line = Line::from_poly(lp).expect("degree-1 factor");
            others.iter().any(|q| q.div_by_line(&line).is_some())
        })
    };
    if crosses(&left, &right_nonlines) || crosses(&right, &left_nonlines) {
        return Err(PolyError::UnfactoredCurve);
    }

    let build = |factors: Vec<Poly>, certified: bool| -> Option<Curve> {
        if factors.is_empty() {
            None
        } else {
            Some(Curve::from_factors(factors, certified).expect("nonconstant factors"))
        }
    };
    Ok(CurveGcd {
        common: build(common, f1.squarefree_certified),
        left: build(left, f1.squarefree_certified),
        right: build(right, f2.squarefree_certified),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn x_line(shift: i64) -> Line {
        Line::from_ints(1, 0, -shift).unwrap()
    }

    fn y_line(shift: i64) -> Line {
        Line::from_ints(0, 1, -shift).unwrap()
    }

    #[test]
    fn monomial_order_is_graded_with_x_first() {
        assert_eq!(
            monomials(2),
            vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
        );
        for (pos, (i, j)) in monomials(6).into_iter().enumerate() {
            assert_eq!(monomial_index(i, j), pos);
        }
    }

    #[test]
    fn line_normalization() {
        let l = Line::from_ints(2, 4, -6).unwrap();
        assert_eq!((l.a(), l.b(), l.c()), (rat_int(1), rat_int(2), rat_int(-3)));
        let l = Line::from_ints(-1, 2, 3).unwrap();
        assert_eq!((l.a(), l.b(), l.c()), (rat_int(1), rat_int(-2), rat_int(-3)));
        let l = Line::from_ints(0, -2, 4).unwrap();
        assert_eq!((l.a(), l.b(), l.c()), (rat_int(0), rat_int(1), rat_int(-2)));
        let l = Line::new(rat(1, 2), rat(1, 3), Rat::zero()).unwrap();
        assert_eq!((l.a(), l.b(), l.c()), (rat_int(3), rat_int(2), rat_int(0)));
        assert!(Line::from_ints(0, 0, 1).is_err());
    }

    #[test]
    fn equal_lines_compare_equal_after_normalization() {
        let l1 = Line::from_ints(1, -1, 0).unwrap();
        let l2 = Line::new(rat(-1, 3), rat(1, 3), Rat::zero()).unwrap();
        assert_eq!(l1, l2);
    }

    #[test]
    fn line_through_two_points() {
        let l = line_through(&Point::from_ints(0, 0), &Point::from_ints(1, 1)).unwrap();
        assert_eq!((l.a(), l.b(), l.c()), (rat_int(1), rat_int(-1), rat_int(0)));
        assert!(l.contains(&Point::from_ints(5, 5)));
        assert!(line_through(&Point::from_ints(2, 3), &Point::from_ints(2, 3)).is_err());
    }

    #[test]
    fn intersection_of_lines() {
        let p = line_intersection(&x_line(1), &y_line(2)).unwrap();
        assert_eq!(p, Point::from_ints(1, 2));
        assert!(line_intersection(&x_line(0), &x_line(1)).is_none());
    }

    #[test]
    fn expanded_product_of_shifted_lines() {
        // x * (x - 1) in the degree-2 space: coefficients (0, -1, 0, 1, 0, 0).
        let c = Curve::from_lines(&[x_line(0), x_line(1)]).unwrap();
        assert!(c.squarefree_certified());
        assert_eq!(
            c.coefficient_vector(2).unwrap(),
            vec![rat_int(0), rat_int(-1), rat_int(0), rat_int(1), rat_int(0), rat_int(0)]
        );
        // Value at (1/2, 7) is -1/4.
        assert_eq!(c.eval(&Point::new(rat(1, 2), rat_int(7))), rat(-1, 4));
        // A monomial basis embedding into a larger space keeps positions.
        let v3 = c.coefficient_vector(3).unwrap();
        assert_eq!(v3[monomial_index(2, 0)], rat_int(1));
        assert_eq!(v3[monomial_index(1, 0)], rat_int(-1));
        // And the bound must accommodate the degree.
        assert!(matches!(
            c.coefficient_vector(1),
            Err(PolyError::DegreeExceedsBound { degree: 2, bound: 1 })
        ));
    }

    #[test]
    fn repeated_line_loses_squarefree_certificate() {
        let c = Curve::from_lines(&[x_line(0), x_line(0)]).unwrap();
        assert!(!c.squarefree_certified());
    }

    #[test]
    fn multiplication_matches_evaluation() {
        let p = x_line(0).to_poly().multiply(&y_line(1).to_poly());
        let q = Point::new(rat(3, 2), rat(-1, 3));
        assert_eq!(p.eval(&q), x_line(0).eval(&q) * y_line(1).eval(&q));
        assert_eq!(p.effective_degree(), Some(2));
    }

    #[test]
    fn division_by_line_factors() {
        let c = Curve::from_lines(&[x_line(0), x_line(1)]).unwrap();
        let p = c.expanded_poly();
        let q = p.div_by_line(&x_line(0)).unwrap();
        assert!(q.same_polynomial(&x_line(1).to_poly()));
        assert!(p.div_by_line(&x_line(2)).is_none());
        // Division by a line with a y component.
        let slanted = Line::from_ints(1, 1, -2).unwrap();
        let prod = slanted.to_poly().multiply(&y_line(0).to_poly());
        let back = prod.div_by_line(&slanted).unwrap();
        assert!(back.same_polynomial(&y_line(0).to_poly()));
        assert!(prod.div_by_line(&y_line(1)).is_none());
    }

    #[test]
    fn canonical_form_and_proportionality() {
        let p = Line::from_ints(2, 2, 0).unwrap().to_poly().scale(&rat(-3, 7));
        let q = Line::from_ints(1, 1, 0).unwrap().to_poly();
        assert!(p.proportional(&q));
        assert_eq!(p.canonical(), q.canonical());
        assert!(!p.proportional(&x_line(0).to_poly()));
        assert_eq!(Poly::zero(4).canonical(), Poly::zero(0));
    }

    #[test]
    fn gcd_by_factor_matching() {
        let f1 = Curve::from_lines(&[x_line(0), x_line(1)]).unwrap();
        let f2 = Curve::from_lines(&[x_line(0), y_line(2)]).unwrap();
        let g = gcd_certificate(&f1, &f2).unwrap();
        assert!(!g.is_coprime());
        assert_eq!(g.common.as_ref().unwrap().total_degree(), 1);
        assert!(g.left.unwrap().factors()[0].same_polynomial(&x_line(1).to_poly()));
        assert!(g.right.unwrap().factors()[0].same_polynomial(&y_line(2).to_poly()));

        let f3 = Curve::from_lines(&[y_line(0), y_line(1)]).unwrap();
        let g = gcd_certificate(&f1, &f3).unwrap();
        assert!(g.is_coprime());
        assert_eq!(g.left.unwrap().total_degree(), 2);
    }

    #[test]
    fn gcd_detects_scalar_multiples_of_factors() {
        let doubled = Line::from_ints(2, 0, 0);
        assert_eq!(doubled.unwrap(), x_line(0)); // normalization already merges
        let f1 = Curve::from_poly(x_line(0).to_poly().scale(&rat(5, 3)), true).unwrap();
        let f2 = Curve::from_lines(&[x_line(0)]).unwrap();
        let g = gcd_certificate(&f1, &f2).unwrap();
        assert!(!g.is_coprime());
        assert!(g.left.is_none());
        assert!(g.right.is_none());
    }

    #[test]
    fn gcd_refuses_hidden_common_components() {
        // x*y kept as one unfactored quadratic against the line x: the line
        // divides the block, so matching cannot produce a certificate.
        let block = x_line(0).to_poly().multiply(&y_line(0).to_poly());
        let f1 = Curve::from_poly(block, true).unwrap();
        let f2 = Curve::from_lines(&[x_line(0)]).unwrap();
        assert!(matches!(gcd_certificate(&f1, &f2), Err(PolyError::UnfactoredCurve)));
        // Two distinct unfactored quadratics: coprimality undecidable here.
        let q1 = Curve::from_poly(
            x_line(0).to_poly().multiply(&y_line(0).to_poly()),
            true,
        )
        .unwrap();
        let q2 = Curve::from_poly(
            x_line(0).to_poly().multiply(&y_line(1).to_poly()),
            true,
        )
        .unwrap();
        assert!(matches!(gcd_certificate(&q1, &q2), Err(PolyError::UnfactoredCurve)));
    }

    #[test]
    fn gcd_allows_decided_line_against_nonline() {
        // y^2 - x (irreducible over the rationals as a conic) against the
        // line y: no division, so the pair is certified coprime.
        let mut coeffs = vec![Rat::zero(); space_dim(2)];
        coeffs[monomial_index(1, 0)] = rat_int(-1);
        coeffs[monomial_index(0, 2)] = rat_int(1);
        let conic = Poly::from_coeffs(2, coeffs).unwrap();
        let f1 = Curve::from_poly(conic, true).unwrap();
        let f2 = Curve::from_lines(&[y_line(0)]).unwrap();
        let g = gcd_certificate(&f1, &f2).unwrap();
        assert!(g.is_coprime());
    }

    #[test]
    fn display_forms() {
        let p = Curve::from_lines(&[x_line(0), x_line(1)]).unwrap().expanded_poly();
        assert_eq!(p.to_string(), "x^2 - x");
        assert_eq!(Poly::zero(3).to_string(), "0");
        assert_eq!(x_line(2).to_string(), "x - 2 = 0");
        let half = Poly::constant(rat(1, 2));
        assert_eq!(half.to_string(), "1/2");
    }

    #[test]
    fn serde_round_trips() {
        let l = Line::from_ints(3, -2, 7).unwrap();
        let js = serde_json::to_string(&l).unwrap();
        assert_eq!(js, r#"["3","-2","7"]"#);
        assert_eq!(serde_json::from_str::<Line>(&js).unwrap(), l);

        let c = Curve::from_lines(&[x_line(0), y_line(1)]).unwrap();
        let js = serde_json::to_string(&c).unwrap();
        let back: Curve = serde_json::from_str(&js).unwrap();
        assert_eq!(back, c);
        assert!(js.contains("\"squarefree\":true"));

        let p = c.expanded_poly();
        let js = serde_json::to_string(&p).unwrap();
        let back: Poly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);

        let pt = Point::new(rat(1, 2), rat_int(-3));
        let js = serde_json::to_string(&pt).unwrap();
        assert_eq!(js, r#"["1/2","-3"]"#);
        assert_eq!(serde_json::from_str::<Point>(&js).unwrap(), pt);

        assert!(serde_json::from_str::<Poly>(r#"{"degree_bound":1,"coeffs":["1"]}"#).is_err());
    }
}
