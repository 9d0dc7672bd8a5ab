//! Exact Gaussian elimination over `Q` for small dense matrices.

use num_traits::{One, Zero};

use crate::Rational;

/// Column-oriented matrix: `columns[j][i]` is entry `(i, j)`.
pub(crate) struct Matrix {
    rows: usize,
    columns: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn from_columns(rows: usize, columns: Vec<Vec<Rational>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.len() == rows));
        Self { rows, columns }
    }

    /// Reduced row echelon form as rows, together with pivot columns.
    fn rref(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let ncols = self.columns.len();
        let mut m: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| self.columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = Rational::one() / &m[r][c];
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..self.rows {
                if i != r && !m[i][c].is_zero() {
                    let factor = m[i][c].clone();
                    for j in c..ncols {
                        let delta = &factor * &m[r][j];
                        m[i][j] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : Σ x_j · column_j = 0}`; each vector has coefficient
    /// `1` at its free variable.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let ncols = self.columns.len();
        let (m, pivots) = self.rref();
        let free = (0..ncols).filter(|c| !pivots.contains(c));
        free.map(|f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -m[row][f].clone();
            }
            v
        })
        .collect()
    }

    pub fn in_span(&self, v: &[Rational]) -> bool {
        let mut columns = self.columns.clone();
        columns.push(v.to_vec());
        let extended = Matrix::from_columns(self.rows, columns);
        extended.rank() == self.rank()
    }
}
