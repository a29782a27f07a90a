//! Sparse matrices over an exact ring; the carrier for endomorphisms of
//! a based space.

use std::collections::BTreeMap;

use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat<S> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), S>,
}

impl<S: Ring> SparseMat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.add_entry(i, i, &S::one());
        }
        m
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = ((usize, usize), S)>,
    ) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for ((r, c), v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::Dimension(format!("entry ({r}, {c}) outside {rows}x{cols}")));
            }
            m.add_entry(r, c, &v);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(S::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &S)> {
        self.entries.iter()
    }

    /// Adds `v` to entry `(r, c)`, dropping the entry if it cancels.
    pub fn add_entry(&mut self, r: usize, c: usize, v: &S) {
        assert!(r < self.rows && c < self.cols, "entry outside matrix");
        if v.is_zero() {
            return;
        }
        let sum = match self.entries.get(&(r, c)) {
            Some(old) => old.add_ref(v),
            None => v.clone(),
        };
        if sum.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut m = Self::zeros(self.rows, self.cols);
        for ((r, c), v) in &self.entries {
            m.add_entry(*r, *c, &v.mul_ref(s));
        }
        m
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for ((r, c), v) in &self.entries {
            m.add_entry(*c, *r, v);
        }
        m
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> SparseMat<T> {
        let mut m = SparseMat::zeros(self.rows, self.cols);
        for ((r, c), v) in &self.entries {
            m.add_entry(*r, *c, &f(v));
        }
        m
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let mut m = self.clone();
        for ((r, c), v) in &o.entries {
            m.add_entry(*r, *c, v);
        }
        Ok(m)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let mut m = self.clone();
        for ((r, c), v) in &o.entries {
            m.add_entry(*r, *c, &-v.clone());
        }
        Ok(m)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut by_row: Vec<Vec<(usize, &S)>> = vec![Vec::new(); o.rows];
        for ((r, c), v) in &o.entries {
            by_row[*r].push((*c, v));
        }
        let mut m = Self::zeros(self.rows, o.cols);
        for ((i, k), a) in &self.entries {
            for (j, b) in &by_row[*k] {
                m.add_entry(*i, *j, &a.mul_ref(b));
            }
        }
        Ok(m)
    }

    /// `AB − BA`.
    pub fn bracket(&self, o: &Self) -> Result<Self> {
        if !self.is_square() || !o.is_square() || self.rows != o.rows {
            return Err(Error::Dimension(format!(
                "bracket needs equal square matrices, got {}x{} and {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        self.mul(o)?.sub(&o.mul(self)?)
    }

    pub fn apply(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let mut out = vec![S::zero(); self.rows];
        for ((r, c), a) in &self.entries {
            out[*r] = out[*r].add_ref(&a.mul_ref(&v[*c]));
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut out = Self::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::gaussian::GQ;

    fn m(n: usize, e: &[((usize, usize), i64)]) -> SparseMat<GQ> {
        SparseMat::from_entries(n, n, e.iter().map(|(k, v)| (*k, GQ::from_int(*v)))).unwrap()
    }

    #[test]
    fn self_bracket_vanishes() {
        let a = m(3, &[((0, 1), 2), ((2, 0), -1), ((1, 1), 5)]);
        assert!(a.bracket(&a).unwrap().is_zero());
    }

    #[test]
    fn textbook_sl2() {
        let e = m(2, &[((0, 1), 1)]);
        let f = m(2, &[((1, 0), 1)]);
        let h = e.bracket(&f).unwrap();
        assert_eq!(h, m(2, &[((0, 0), 1), ((1, 1), -1)]));
        assert_eq!(h.bracket(&e).unwrap(), e.scale(&GQ::from_int(2)));
    }

    #[test]
    fn dimension_errors() {
        let a = m(2, &[]);
        let b = m(3, &[]);
        assert!(a.bracket(&b).is_err());
        assert!(SparseMat::<GQ>::from_entries(2, 2, [((2, 0), GQ::from_int(1))]).is_err());
        let r: SparseMat<GQ> = SparseMat::zeros(2, 3);
        assert!(r.bracket(&r).is_err());
    }

    #[test]
    fn no_stored_zeros_after_cancellation() {
        let a = m(2, &[((0, 1), 3)]);
        let z = a.sub(&a).unwrap();
        assert_eq!(z.nnz(), 0);
        assert_eq!(z.get(0, 1), GQ::from_int(0));
    }
}
