//! Dense matrices over a [`Ring`] with fraction-free determinants.

use std::fmt;

use num_traits::Zero;

use super::Ring;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<R> {
    nrows: usize,
    ncols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "matrix rows must have equal length"
        );
        Matrix {
            nrows,
            ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j));
            }
        }
        Matrix { nrows, ncols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn diagonal(values: &[R]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                values[i].clone()
            } else {
                R::zero()
            }
        })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.ncols + j]
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.nrows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ncols, self.nrows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.ncols, rhs.nrows, "incompatible matrix dimensions");
        Self::from_fn(self.nrows, rhs.ncols, |i, j| {
            let mut acc = R::zero();
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc = acc + a.clone() * rhs.get(k, j);
                }
            }
            acc
        })
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        Self::from_fn(self.nrows, self.ncols, |i, j| {
            self.get(i, j).clone() - rhs.get(i, j)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Top-left `size x size` block.
    pub fn leading(&self, size: usize) -> Self {
        Self::from_fn(size, size, |i, j| self.get(i, j).clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Determinant by Bareiss fraction-free elimination with row pivoting.
    /// Every division is exact, so the routine stays inside the ring.
    pub fn det(&self) -> R {
        assert_eq!(self.nrows, self.ncols, "determinant of a non-square matrix");
        bareiss(self.to_rows())
    }

    /// Minor with the given (strictly increasing) row and column indices.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> R {
        assert_eq!(rows.len(), cols.len());
        match rows.len() {
            0 => R::one(),
            1 => self.get(rows[0], cols[0]).clone(),
            2 => {
                let (i0, i1, j0, j1) = (rows[0], rows[1], cols[0], cols[1]);
                self.get(i0, j0).clone() * self.get(i1, j1)
                    - self.get(i0, j1).clone() * self.get(i1, j0)
            }
            _ => self.submatrix(rows, cols).det(),
        }
    }
}

pub(crate) fn bareiss<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].clone() * &m[k][k] - m[i][k].clone() * &m[k][j];
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss division must be exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
