//! Dense exact linear algebra over a field: rank, inverse, solving.

use num_traits::Zero;

use super::gaussian::GaussianRational;
use super::rational::Rational;
use super::ring::Ring;
use crate::error::{Error, Result};

pub trait Field: Ring {
    fn try_inv(&self) -> Result<Self>;
}

impl Field for Rational {
    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

impl Field for GaussianRational {
    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }
}

pub type Dense<F> = Vec<Vec<F>>;

/// Row-reduces in place and returns the pivot columns.
fn row_reduce<F: Field>(m: &mut Dense<F>) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].try_inv().expect("pivot is nonzero");
        for j in c..cols {
            m[r][j] = m[r][j].mul_ref(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let t = factor.mul_ref(&m[r][j]);
                    m[i][j] = m[i][j].sub_ref(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Dense<F>) -> usize {
    let mut work = m.clone();
    row_reduce(&mut work).len()
}

pub fn inverse<F: Field>(m: &Dense<F>) -> Result<Dense<F>> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let mut aug: Dense<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return Err(Error::NoSolution("singular matrix".into()));
    }
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solves `m x = b` for square invertible `m`.
pub fn solve<F: Field>(m: &Dense<F>, b: &[F]) -> Result<Vec<F>> {
    let inv = inverse(m)?;
    Ok(mat_vec(&inv, b))
}

pub fn mat_vec<F: Ring>(m: &Dense<F>, v: &[F]) -> Vec<F> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(F::zero(), |acc, (a, x)| acc.add_ref(&a.mul_ref(x))))
        .collect()
}

pub fn mat_mul<F: Ring>(a: &Dense<F>, b: &Dense<F>) -> Dense<F> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().enumerate().fold(F::zero(), |acc, (k, x)| acc.add_ref(&x.mul_ref(&b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn transpose<F: Clone>(m: &Dense<F>) -> Dense<F> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn identity<F: Ring>(n: usize) -> Dense<F> {
    (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn q(rows: &[&[i64]]) -> Dense<Rational> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_and_inverse() {
        let m = q(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&m), 1);
        assert!(inverse(&m).is_err());
        let m = q(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        assert_eq!(solve(&m, &[int(3), int(2)]).unwrap(), vec![int(1), int(1)]);
    }

    #[test]
    fn gaussian_rank() {
        let i = GaussianRational::i();
        let one = GaussianRational::from_int(1);
        // rows (1, i) and (i, -1) are dependent
        let m = vec![vec![one.clone(), i.clone()], vec![i.clone(), -one.clone()]];
        assert_eq!(rank(&m), 1);
    }
}
