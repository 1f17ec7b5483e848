//! Exact rational linear algebra on dense matrices.
//!
//! Elimination is fraction-free: each row is first scaled by the lcm of its
//! denominators (which changes neither rank, null space, nor solution set of
//! an augmented system), then reduced over `BigInt` with the two-step
//! Bareiss update `(pivot*a[i][j] - a[i][c]*a[r][j]) / prev_pivot`, whose
//! divisions are exact and keep every intermediate entry a minor of the
//! input. Pivots are chosen as the first nonzero entry scanning
//! top-to-bottom in the current column, so results are deterministic.
//! Quotients are recovered over rationals only in back substitution.

use crate::rat::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Outcome of solving `M x = b` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Unique(Vec<Rat>),
    /// A particular solution (free variables pinned to zero) plus the
    /// dimension of the solution space's direction space.
    Underdetermined { witness: Vec<Rat>, null_dim: usize },
    Inconsistent,
}

impl SolveOutcome {
    pub fn solution(&self) -> Option<&[Rat]> {
        match self {
            SolveOutcome::Unique(x) => Some(x),
            SolveOutcome::Underdetermined { witness, .. } => Some(witness),
            SolveOutcome::Inconsistent => None,
        }
    }
}

struct Echelon {
    m: Vec<Vec<BigInt>>,
    /// Pivot column of each of the first `pivots.len()` rows.
    pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    /// Builds from row vectors; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        RatMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Each row scaled to integers by the lcm of its denominators;
    /// `extra[i]` is appended as a final column when given.
    fn integer_rows(&self, extra: Option<&[Rat]>) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let full: Vec<&Rat> = self
                    .row(i)
                    .iter()
                    .chain(extra.map(|e| &e[i]))
                    .collect();
                let scale = full
                    .iter()
                    .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
                full.iter()
                    .map(|r| r.numer() * (&scale / r.denom()))
                    .collect()
            })
            .collect()
    }

    fn echelon(&self, extra: Option<&[Rat]>) -> Echelon {
        let mut m = self.integer_rows(extra);
        let rows = m.len();
        let cols = self.cols + extra.is_some() as usize;
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in (r + 1)..rows {
                for j in (c + 1)..cols {
                    let t = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    debug_assert!((&t % &prev).is_zero(), "inexact Bareiss division");
                    m[i][j] = t / &prev;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        Echelon { m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon(None).pivots.len()
    }

    /// Back-substitutes the echelon form with free variables pinned to zero.
    /// `b_col` marks the augmented column when solving.
    fn back_substitute(ech: &Echelon, var_cols: usize, b_col: Option<usize>) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); var_cols];
        for (row, &pc) in ech.pivots.iter().enumerate().rev() {
            let mut acc = match b_col {
                Some(bc) => Rat::from_integer(ech.m[row][bc].clone()),
                None => Rat::zero(),
            };
            for j in (pc + 1)..var_cols {
                if !ech.m[row][j].is_zero() && !x[j].is_zero() {
                    acc -= Rat::from_integer(ech.m[row][j].clone()) * &x[j];
                }
            }
            x[pc] = acc / Rat::from_integer(ech.m[row][pc].clone());
        }
        x
    }

    pub fn solve(&self, b: &[Rat]) -> SolveOutcome {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let ech = self.echelon(Some(b));
        if ech.pivots.last() == Some(&self.cols) {
            return SolveOutcome::Inconsistent;
        }
        let x = Self::back_substitute(&ech, self.cols, Some(self.cols));
        let rank = ech.pivots.len();
        if rank == self.cols {
            SolveOutcome::Unique(x)
        } else {
            SolveOutcome::Underdetermined { witness: x, null_dim: self.cols - rank }
        }
    }

    /// A basis of `{x : Mx = 0}`, one vector per non-pivot column, each with
    /// a `1` in its free coordinate and zeros in the other free coordinates.
    pub fn null_space(&self) -> Vec<Vec<Rat>> {
        let ech = self.echelon(None);
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &c in &ech.pivots {
                s[c] = true;
            }
            s
        };
        let mut basis = Vec::new();
        for fc in (0..self.cols).filter(|&c| !pivot_set[c]) {
            let mut v = vec![Rat::zero(); self.cols];
            v[fc] = Rat::one();
            for (row, &pc) in ech.pivots.iter().enumerate().rev() {
                let mut acc = Rat::zero();
                for j in (pc + 1)..self.cols {
                    if !ech.m[row][j].is_zero() && !v[j].is_zero() {
                        acc -= Rat::from_integer(ech.m[row][j].clone()) * &v[j];
                    }
                }
                v[pc] = acc / Rat::from_integer(ech.m[row][pc].clone());
            }
            basis.push(v);
        }
        basis
    }

    /// Whether `v` lies in the span of the columns, i.e. `Mx = v` has a
    /// solution.
    pub fn in_column_span(&self, v: &[Rat]) -> bool {
        !matches!(self.solve(v), SolveOutcome::Inconsistent)
    }
}
