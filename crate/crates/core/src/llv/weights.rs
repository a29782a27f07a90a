//! Exact eigendecomposition of a grading operator over ℚ(i).

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::linalg::{rank, Dense};
use crate::exact::{Ring, SparseMat, GQ};

/// Coefficients of `det(x·I − A)`, ascending, by Faddeev–LeVerrier.
pub fn char_poly(a: &SparseMat<GQ>) -> Result<Vec<GQ>> {
    if !a.is_square() {
        return Err(Error::Dimension("characteristic polynomial of a non-square matrix".into()));
    }
    let n = a.rows();
    let mut c = vec![GQ::from_int(0); n + 1];
    c[n] = GQ::from_int(1);
    let mut m = SparseMat::<GQ>::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m)?.add(&SparseMat::identity(n).scale(&c[n + 1 - k]))?;
        let am = a.mul(&m)?;
        let tr = (0..n).fold(GQ::from_int(0), |acc, i| acc + am.get(i, i));
        c[n - k] = -tr.checked_div(&GQ::from_int(k as i64))?;
    }
    Ok(c)
}

fn eval(p: &[GQ], x: &GQ) -> GQ {
    p.iter().rev().fold(GQ::from_int(0), |acc, c| acc * x.clone() + c.clone())
}

/// Divides by `(x − r)`, assuming `r` is a root.
fn deflate(p: &[GQ], r: &GQ) -> Vec<GQ> {
    let n = p.len() - 1;
    let mut q = vec![GQ::from_int(0); n];
    let mut carry = GQ::from_int(0);
    for k in (0..n).rev() {
        carry = p[k + 1].clone() + carry * r.clone();
        q[k] = carry.clone();
    }
    q
}

/// Eigenvalues with eigenspace dimensions, ascending. Errors when the
/// spectrum is not integral or the operator is not diagonalizable.
pub fn weight_decompose(a: &SparseMat<GQ>) -> Result<Vec<(i64, usize)>> {
    let n = a.rows();
    let mut p = char_poly(a)?;
    let bound = (0..n)
        .map(|r| {
            (0..n).fold(num_rational::BigRational::zero(), |acc, c| {
                let v = a.get(r, c);
                acc + v.re.abs() + v.im.abs()
            })
        })
        .max()
        .unwrap_or_else(num_rational::BigRational::zero)
        .ceil()
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::Unsupported("entries too large".into()))?;
    let mut mult: Vec<(i64, usize)> = Vec::new();
    for r in -bound..=bound {
        let x = GQ::from_int(r);
        let mut m = 0;
        while p.len() > 1 && eval(&p, &x).is_zero() {
            p = deflate(&p, &x);
            m += 1;
        }
        if m > 0 {
            mult.push((r, m));
        }
    }
    if p.len() > 1 {
        return Err(Error::Unsupported("spectrum is not integral".into()));
    }
    for &(r, m) in &mult {
        let shifted: Dense<GQ> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = a.get(i, j);
                        if i == j {
                            v.sub_ref(&GQ::from_int(r))
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        if n - rank(&shifted) != m {
            return Err(Error::Unsupported(format!("eigenvalue {r} has a nontrivial Jordan block")));
        }
    }
    Ok(mult)
}
