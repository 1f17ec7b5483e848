//! Dimension and incidence counting for bivariate polynomial spaces.
//!
//! Everything here is integer arithmetic. The single primitive is
//! [`dim_pi`], the dimension of the space of bivariate polynomials of total
//! degree at most `n`, extended by zero to negative `n`; every other count
//! is computed through it so that boundary cases need no special handling.

use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombinatoricsError {
    #[error("degree parameters out of range: n={n}, k=({k1},{k2},{k3}); need 0 <= k_i <= n")]
    DegreeOutOfRange { n: i64, k1: i64, k2: i64, k3: i64 },
    #[error("sigma = {sigma} below -1; the agreement statement does not apply")]
    SigmaOutOfRange { sigma: i64 },
}

/// Dimension of the space of bivariate polynomials of total degree <= `n`:
/// `(n+1)(n+2)/2` for `n >= 0`, and `0` for negative `n`.
pub fn dim_pi(n: i64) -> i64 {
    if n < 0 {
        0
    } else {
        (n + 1) * (n + 2) / 2
    }
}

/// Number of nodes a degree-`k` maximal curve carries in a correct set of
/// degree `n`: `dim_pi(n) - dim_pi(n-k)`.
pub fn d_count(n: i64, k: i64) -> i64 {
    dim_pi(n) - dim_pi(n - k)
}

/// Closed form `k(2n+3-k)/2` for the maximal-curve node count; agrees with
/// [`d_count`] for `k <= n+2` and exceeds it by `dim_pi(k-n-3)` beyond.
pub fn d_tilde(n: i64, k: i64) -> i64 {
    debug_assert!(n >= 0 && k >= 0);
    k * (2 * n + 3 - k) / 2
}

/// The integer points `(i,j)` with `0 <= i < k`, `0 <= j < m`, `i+j <= n`:
/// a rectangle truncated by an antidiagonal. Its cardinality is the
/// brute-force oracle for [`hilbert_count`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectLatticeSlice {
    pub k: i64,
    pub m: i64,
    pub n: i64,
    pub points: BTreeSet<(i64, i64)>,
}

pub fn rect_slice(k: i64, m: i64, n: i64) -> RectLatticeSlice {
    let mut points = BTreeSet::new();
    for i in 0..k.max(0) {
        for j in 0..m.max(0) {
            if i + j <= n {
                points.insert((i, j));
            }
        }
    }
    RectLatticeSlice { k, m, n, points }
}

/// Number of monomials `x^i y^j` with `i < k`, `j < m`, `i+j <= n`, by the
/// four-term alternating formula. Valid for all `k, m, n >= 0`.
pub fn hilbert_count(k: i64, m: i64, n: i64) -> i64 {
    dim_pi(n) - dim_pi(n - k) - dim_pi(n - m) + dim_pi(n - k - m)
}

/// The triangular lattice `{(i+i0, j+j0) : i,j >= 0, i+j <= n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularLattice {
    pub n: i64,
    pub i0: i64,
    pub j0: i64,
    pub points: BTreeSet<(i64, i64)>,
}

pub fn triangular_lattice(n: i64, i0: i64, j0: i64) -> TriangularLattice {
    let mut points = BTreeSet::new();
    for i in 0..=n.max(-1) {
        for j in 0..=(n - i) {
            points.insert((i + i0, j + j0));
        }
    }
    TriangularLattice { n, i0, j0, points }
}

/// The size of the common intersection of three pairwise component-free
/// maximal curves of degrees `k1,k2,k3`, computed along five independent
/// routes that must agree. `sigma = k1+k2+k3-(n+2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSigma {
    pub sigma: i64,
    /// Total minus per-curve counts plus pairwise truncated-rectangle counts.
    pub via_inclusion_exclusion: i64,
    /// Alternating sum of polynomial-space dimensions.
    pub via_dimension_counts: i64,
    /// Per-curve counts taken at reduced degrees `n - k_i`.
    pub via_reduced_degrees: i64,
    /// `sigma(sigma+1)/2` with dimension corrections subtracted.
    pub via_sigma_corrected: i64,
    /// Plain `sigma(sigma+1)/2`; only meaningful when every pair satisfies
    /// `k_i + k_j <= n+2`, otherwise `None`.
    pub via_sigma_binomial: Option<i64>,
    /// Index pairs (0-based into `[k1,k2,k3]`) violating `k_i+k_j <= n+2`.
    pub violating_pairs: Vec<(usize, usize)>,
}

impl TripleSigma {
    /// All computed values, for agreement checks.
    pub fn applicable_values(&self) -> Vec<i64> {
        let mut v = vec![
            self.via_inclusion_exclusion,
            self.via_dimension_counts,
            self.via_reduced_degrees,
            self.via_sigma_corrected,
        ];
        if let Some(b) = self.via_sigma_binomial {
            v.push(b);
        }
        v
    }

    pub fn all_agree(&self) -> bool {
        let v = self.applicable_values();
        v.iter().all(|x| *x == v[0])
    }
}

pub fn triple_sigma_expressions(
    n: i64,
    k1: i64,
    k2: i64,
    k3: i64,
) -> Result<TripleSigma, CombinatoricsError> {
    if n < 0 || [k1, k2, k3].iter().any(|&k| k < 0 || k > n) {
        return Err(CombinatoricsError::DegreeOutOfRange { n, k1, k2, k3 });
    }
    let sigma = k1 + k2 + k3 - (n + 2);
    if sigma < -1 {
        return Err(CombinatoricsError::SigmaOutOfRange { sigma });
    }
    let nn = dim_pi(n);
    let via_inclusion_exclusion = nn - d_count(n, k1) - d_count(n, k2) - d_count(n, k3)
        + hilbert_count(k1, k2, n)
        + hilbert_count(k2, k3, n)
        + hilbert_count(k1, k3, n);
    let via_dimension_counts = nn - dim_pi(n - k1) - dim_pi(n - k2) - dim_pi(n - k3)
        + dim_pi(n - k1 - k2)
        + dim_pi(n - k2 - k3)
        + dim_pi(n - k1 - k3);
    let via_reduced_degrees =
        nn - d_count(n - k1, k2) - d_count(n - k2, k3) - d_count(n - k3, k1);
    let base = sigma * (sigma + 1) / 2;
    let via_sigma_corrected = base
        - dim_pi(k1 + k2 - n - 3)
        - dim_pi(k2 + k3 - n - 3)
        - dim_pi(k3 + k1 - n - 3);
    let ks = [k1, k2, k3];
    let mut violating_pairs = Vec::new();
    for i in 0..3 {
        for j in (i + 1)..3 {
            if ks[i] + ks[j] > n + 2 {
                violating_pairs.push((i, j));
            }
        }
    }
    let via_sigma_binomial = if violating_pairs.is_empty() { Some(base) } else { None };
    Ok(TripleSigma {
        sigma,
        via_inclusion_exclusion,
        via_dimension_counts,
        via_reduced_degrees,
        via_sigma_corrected,
        via_sigma_binomial,
        violating_pairs,
    })
}
