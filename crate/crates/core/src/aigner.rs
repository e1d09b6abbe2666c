//! Aigner recursive matrices and Hankel determinants.
//!
//! Given weights `(b_k)_{k>=0}` and `(c_k)_{k>=1}`, the recursive matrix is
//! `r_{0,0} = 1`, `r_{n+1,k} = r_{n,k-1} + b_k r_{n,k} + c_{k+1} r_{n,k+1}`
//! with `r_{n,k} = 0` unless `n >= k >= 0`. Its first column holds the
//! Catalan-like numbers, and the Hankel matrix of those factors as
//! `H = R D R^t` with `D = diag(1, c_1, c_1 c_2, ...)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{Matrix, Ring};
use crate::seqgen::{binom, TriangleMatrix};

/// `prefix` followed by `tail` repeated forever.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EventuallyConstant<R> {
    pub prefix: Vec<R>,
    pub tail: R,
}

impl<R: Ring> EventuallyConstant<R> {
    pub fn constant(value: R) -> Self {
        EventuallyConstant {
            prefix: Vec::new(),
            tail: value,
        }
    }

    pub fn get(&self, i: usize) -> &R {
        self.prefix.get(i).unwrap_or(&self.tail)
    }
}

/// Weight sequences of a recursive matrix. `c_seq` is indexed from 1:
/// `c_seq.get(0)` is `c_1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RecursiveSpec<R> {
    pub b_seq: EventuallyConstant<R>,
    pub c_seq: EventuallyConstant<R>,
}

impl<R: Ring> RecursiveSpec<R> {
    pub fn b(&self, k: usize) -> &R {
        self.b_seq.get(k)
    }

    /// `c_k` for `k >= 1`.
    pub fn c(&self, k: usize) -> &R {
        assert!(k >= 1, "c weights are indexed from 1");
        self.c_seq.get(k - 1)
    }

    /// `b = (b, b, ...)`, `c = (2c, c, c, ...)`: the triangle `[T_{n,k}(b,c)]`.
    pub fn tbc(b: &R, c: &R) -> Self {
        RecursiveSpec {
            b_seq: EventuallyConstant::constant(b.clone()),
            c_seq: EventuallyConstant {
                prefix: vec![R::from_i64(2) * c],
                tail: c.clone(),
            },
        }
    }

    /// `b = (b, b, ...)`, `c = (c, c, ...)`: generalized Motzkin numbers.
    pub fn motzkin(b: &R, c: &R) -> Self {
        RecursiveSpec {
            b_seq: EventuallyConstant::constant(b.clone()),
            c_seq: EventuallyConstant::constant(c.clone()),
        }
    }
}

/// Rows `0..=depth` of the recursive matrix.
pub fn recursive_matrix<R: Ring>(spec: &RecursiveSpec<R>, depth: usize) -> TriangleMatrix<R> {
    let mut rows: Vec<Vec<R>> = vec![vec![R::one()]];
    for n in 0..depth {
        let prev = &rows[n];
        let at = |k: usize| prev.get(k).cloned().unwrap_or_else(R::zero);
        let row: Vec<R> = (0..=n + 1)
            .map(|k| {
                let mut v = spec.b(k).clone() * &at(k) + spec.c(k + 1).clone() * &at(k + 1);
                if k > 0 {
                    v = v + at(k - 1);
                }
                v
            })
            .collect();
        rows.push(row);
    }
    TriangleMatrix::from_rows(rows)
}

/// `r_{n,0}`.
pub fn catalan_like<R: Ring>(spec: &RecursiveSpec<R>, n: usize) -> R {
    recursive_matrix(spec, n).get(n, 0)
}

/// `delta_0 = 1`, `delta_k = c_1 c_2 ... c_k` for `k <= n`.
pub fn delta_weights<R: Ring>(spec: &RecursiveSpec<R>, n: usize) -> Vec<R> {
    let mut out = vec![R::one()];
    for k in 1..=n {
        let next = out[k - 1].clone() * spec.c(k);
        out.push(next);
    }
    out
}

/// Checks `sum_k r_{m,k} r_{n,k} delta_k = r_{m+n,0}` and the matrix form
/// `H = R D R^t` on the leading `(max(m,n)+1)` block.
pub fn verify_fundamental<R: Ring>(spec: &RecursiveSpec<R>, m: usize, n: usize) -> Result<R> {
    let size = m.max(n) + 1;
    let depth = 2 * (size - 1);
    let r = recursive_matrix(spec, depth);
    let delta = delta_weights(spec, depth);
    let lhs = (0..=m.min(n)).fold(R::zero(), |acc, k| {
        acc + r.get(m, k) * &r.get(n, k) * &delta[k]
    });
    let rhs = r.get(m + n, 0);
    if lhs != rhs {
        return Err(Error::violation(
            format!("fundamental theorem at (m, n) = ({m}, {n})"),
            &lhs,
            &rhs,
        ));
    }
    let rm = r.to_matrix(size);
    let d = Matrix::diagonal(&delta[..size]);
    let h = Matrix::from_fn(size, size, |i, j| r.get(i + j, 0));
    let factored = rm.mul(&d).mul(&rm.transpose());
    if factored != h {
        return Err(Error::violation(
            format!("H = R D R^t on the {size}x{size} block"),
            format!("{factored:?}"),
            format!("{h:?}"),
        ));
    }
    Ok(lhs)
}

fn need(seq_len: usize, required: usize) -> Result<()> {
    if seq_len < required {
        return Err(Error::InvalidArgument(format!(
            "sequence has {seq_len} terms, {required} needed"
        )));
    }
    Ok(())
}

/// Outcome of [`verify_fundamental_upto`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FundamentalReport {
    pub max_sum: usize,
    pub pairs_checked: usize,
    /// First `(m, n)`, in order of `m + n` then `m`, where the sum fails.
    pub first_failure: Option<(usize, usize)>,
    /// `H = R D R^t` on the leading `(max_sum / 2 + 1)` block.
    pub matrix_form: bool,
}

impl FundamentalReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none() && self.matrix_form
    }
}

/// Checks `sum_k r_{m,k} r_{n,k} delta_k = r_{m+n,0}` for all
/// `m + n <= max_sum` on a given triangle and weights.
pub fn check_fundamental_on<R: Ring>(
    r: &TriangleMatrix<R>,
    delta: &[R],
    max_sum: usize,
) -> Result<FundamentalReport> {
    need(r.num_rows(), max_sum + 1)?;
    need(delta.len(), max_sum / 2 + 1)?;
    let pairs: Vec<(usize, usize)> = (0..=max_sum)
        .flat_map(|s| (0..=s).map(move |m| (m, s - m)))
        .collect();
    let first_failure = pairs
        .par_iter()
        .find_first(|&&(m, n)| {
            let lhs = (0..=m.min(n)).fold(R::zero(), |acc, k| {
                acc + r.get(m, k) * &r.get(n, k) * &delta[k]
            });
            lhs != r.get(m + n, 0)
        })
        .copied();
    let size = max_sum / 2 + 1;
    let rm = r.to_matrix(size);
    let h = Matrix::from_fn(size, size, |i, j| r.get(i + j, 0));
    let matrix_form = rm.mul(&Matrix::diagonal(&delta[..size])).mul(&rm.transpose()) == h;
    Ok(FundamentalReport {
        max_sum,
        pairs_checked: pairs.len(),
        first_failure,
        matrix_form,
    })
}

/// [`check_fundamental_on`] for the recursive matrix of `spec`.
pub fn verify_fundamental_upto<R: Ring>(
    spec: &RecursiveSpec<R>,
    max_sum: usize,
) -> Result<FundamentalReport> {
    let r = recursive_matrix(spec, max_sum);
    check_fundamental_on(&r, &delta_weights(spec, max_sum), max_sum)
}

/// `det [a_{i+j}]_{0<=i,j<=n}` by fraction-free elimination.
pub fn hankel_det<R: Ring>(seq: &[R], n: usize) -> Result<R> {
    need(seq.len(), 2 * n + 1)?;
    Ok(Matrix::from_fn(n + 1, n + 1, |i, j| seq[i + j].clone()).det())
}

/// `det [a_{i+j+1}]_{0<=i,j<=n}`.
pub fn shifted_hankel_det<R: Ring>(seq: &[R], n: usize) -> Result<R> {
    need(seq.len(), 2 * n + 2)?;
    Ok(Matrix::from_fn(n + 1, n + 1, |i, j| seq[i + j + 1].clone()).det())
}

/// `y_0, ..., y_N` with `y_n = det [a_{i+j}]_{0<=i,j<=n}`; the determinants
/// are independent and computed in parallel.
pub fn hankel_transform<R: Ring>(seq: &[R], big_n: usize) -> Result<Vec<R>> {
    need(seq.len(), 2 * big_n + 1)?;
    (0..=big_n)
        .into_par_iter()
        .map(|n| hankel_det(seq, n))
        .collect()
}

/// `z_n = sum_k C(n, k) a_k` for `n <= N`.
pub fn binomial_transform_seq<R: Ring>(seq: &[R], big_n: usize) -> Result<Vec<R>> {
    need(seq.len(), big_n + 1)?;
    Ok((0..=big_n)
        .map(|n| {
            (0..=n).fold(R::zero(), |acc, k| acc + binom::<R>(n, k) * &seq[k])
        })
        .collect())
}
