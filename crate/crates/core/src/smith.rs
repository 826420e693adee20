//! Smith normal form over any signed integer type.

use std::fmt::Debug;

use num_integer::Integer;
use num_traits::Signed;

/// Integer types the elimination runs over: `i64`, `i128`, `BigInt`, ...
pub trait SmithScalar: Integer + Signed + Clone + Debug {}

impl<T: Integer + Signed + Clone + Debug> SmithScalar for T {}

/// `U · A · V = D` with `D` diagonal and each diagonal entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries, positive and in divisibility order.
    pub diagonal: Vec<T>,
    /// The column transform `V`, `cols x cols`.
    pub v: Vec<Vec<T>>,
}

impl<T: SmithScalar> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Diagonal entries other than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<T> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Rank of the free part of `Z^cols / rowspace(A)`.
    pub fn free_rank(&self) -> usize {
        self.cols - self.rank()
    }
}

fn swap_cols<T>(m: &mut [Vec<T>], i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// Computes the Smith form of the `rows x cols` matrix `a` (rows given as vectors).
pub fn smith_normal_form<T: SmithScalar>(a: &[Vec<T>], cols: usize) -> SmithForm<T> {
    let rows = a.len();
    let mut m: Vec<Vec<T>> = a.to_vec();
    assert!(m.iter().all(|r| r.len() == cols), "ragged matrix");
    let mut v: Vec<Vec<T>> = (0..cols)
        .map(|i| (0..cols).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        swap_cols(&mut m, t, bj);
        swap_cols(&mut v, t, bj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..cols {
                    let sub = q.clone() * m[t][j].clone();
                    m[i][j] = m[i][j].clone() - sub;
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for i in t..rows {
                    let sub = q.clone() * m[i][t].clone();
                    m[i][j] = m[i][j].clone() - sub;
                }
                for row in v.iter_mut() {
                    let sub = q.clone() * row[t].clone();
                    row[j] = row[j].clone() - sub;
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                // Bring the smallest remainder in row or column t to the pivot.
                let mut pick = (t, t);
                for i in t + 1..rows {
                    if !m[i][t].is_zero() && m[i][t].abs() < m[pick.0][pick.1].abs() {
                        pick = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !m[t][j].is_zero() && m[t][j].abs() < m[pick.0][pick.1].abs() {
                        pick = (t, j);
                    }
                }
                if pick.0 != t {
                    m.swap(t, pick.0);
                } else if pick.1 != t {
                    swap_cols(&mut m, t, pick.1);
                    swap_cols(&mut v, t, pick.1);
                }
                continue;
            }
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&m[t][t])));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let add = m[i][j].clone();
                        m[t][j] = m[t][j].clone() + add;
                    }
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for j in t..cols {
                m[t][j] = -m[t][j].clone();
            }
        }
        t += 1;
    }
    let diagonal = (0..t).map(|i| m[i][i].clone()).collect();
    SmithForm {
        rows,
        cols,
        diagonal,
        v,
    }
}
