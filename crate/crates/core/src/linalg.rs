//! Dense exact linear algebra over `Q` and `Z`.
//!
//! Matrices are row-major `Vec<Vec<_>>`. Sizes here are tiny (a handful of
//! points in a handful of dimensions), so clarity wins over blocking tricks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rat;

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<Rat>>;

/// Reduced row echelon form. Returns the pivot column of each nonzero row.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// A basis of the right kernel `{x : m x = 0}`.
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); cols];
            x[f] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -work[row][f].clone();
            }
            x
        })
        .collect()
}

/// One solution of `m x = b`, with free variables set to zero, or `None` if
/// the system is inconsistent.
pub fn solve(m: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut aug: RatMatrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

pub fn to_rat_matrix(m: &[Vec<i64>]) -> RatMatrix {
    m.iter()
        .map(|row| row.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect())
        .collect()
}

pub fn to_int_matrix(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Smith normal form `p * a * q = d` with `p`, `q` unimodular.
#[derive(Debug, Clone)]
pub struct Smith {
    pub d: IntMatrix,
    pub p: IntMatrix,
    pub q: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// Nonzero invariant factors, in divisibility order.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[i][i].clone()).collect()
    }

    /// Product of the nonzero invariant factors: the index of the lattice
    /// spanned by the columns inside its saturation.
    pub fn torsion_index(&self) -> BigInt {
        self.invariants().into_iter().fold(BigInt::one(), |acc, x| acc * x)
    }
}

pub fn smith(a: &IntMatrix) -> Smith {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d = a.clone();
    let mut p = identity(rows);
    let mut q = identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap(t, bi);
        p.swap(t, bi);
        swap_cols(&mut d, t, bj);
        swap_cols(&mut q, t, bj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let f = d[i][t].div_floor(&d[t][t]);
                row_axpy(&mut d, i, t, &f);
                row_axpy(&mut p, i, t, &f);
                if !d[i][t].is_zero() {
                    d.swap(t, i);
                    p.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let f = d[t][j].div_floor(&d[t][t]);
                col_axpy(&mut d, j, t, &f);
                col_axpy(&mut q, j, t, &f);
                if !d[t][j].is_zero() {
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut q, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[i][j].is_multiple_of(&d[t][t]));
            match offender {
                Some((i, _)) => {
                    let f = -BigInt::one();
                    row_axpy(&mut d, t, i, &f);
                    row_axpy(&mut p, t, i, &f);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in p[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    Smith { d, p, q, rank: t }
}

/// row[target] -= f * row[source]
fn row_axpy(m: &mut IntMatrix, target: usize, source: usize, f: &BigInt) {
    let src = m[source].clone();
    for (x, s) in m[target].iter_mut().zip(src) {
        *x -= f * s;
    }
}

/// col[target] -= f * col[source]
fn col_axpy(m: &mut IntMatrix, target: usize, source: usize, f: &BigInt) {
    for row in m.iter_mut() {
        let delta = f * &row[source];
        row[target] -= delta;
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// An integer solution of `a x = b`, or `None` when `b` is not in the lattice
/// spanned by the columns of `a`.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let s = smith(a);
    let pb: Vec<BigInt> = (0..rows)
        .map(|i| s.p[i].iter().zip(b).map(|(x, y)| x * y).sum())
        .collect();
    let mut y = vec![BigInt::zero(); cols];
    for i in 0..rows {
        if i < s.rank {
            let (quo, rem) = pb[i].div_rem(&s.d[i][i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = quo;
        } else if !pb[i].is_zero() {
            return None;
        }
    }
    Some((0..cols).map(|i| s.q[i].iter().zip(&y).map(|(x, yj)| x * yj).sum()).collect())
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}
