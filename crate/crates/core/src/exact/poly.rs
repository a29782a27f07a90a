//! Univariate polynomials over an exact ring, in one of the formal
//! parameters `N`, `d`, `b`, `cst`. Nesting `Poly<Poly<_>>` gives the
//! bivariate `N, d` case.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use super::rational::{fmt_rational, Rational};
use super::ring::{GaussianAlgebra, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    N,
    D,
    B,
    Cst,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::N => "N",
            Var::D => "d",
            Var::B => "b",
            Var::Cst => "cst",
        }
    }
}

/// Dense-in-spirit, sparse-in-storage polynomial. No zero coefficient is
/// ever stored. A constant polynomial carries no meaningful variable and
/// combines with polynomials in any variable.
#[derive(Clone, Debug)]
pub struct Poly<C> {
    var: Var,
    coeffs: BTreeMap<u32, C>,
}

pub type QPoly = Poly<Rational>;
pub type CstPoly = Poly<GaussianRational>;

impl<C: Ring> Poly<C> {
    pub fn zero_in(var: Var) -> Self {
        Self { var, coeffs: BTreeMap::new() }
    }

    pub fn constant(var: Var, c: C) -> Self {
        Self::monomial(var, c, 0)
    }

    pub fn monomial(var: Var, c: C, k: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Self { var, coeffs }
    }

    /// The variable itself.
    pub fn x(var: Var) -> Self {
        Self::monomial(var, C::one(), 1)
    }

    /// Builds from `(degree, coefficient)` pairs, summing repeats.
    pub fn from_terms(var: Var, terms: impl IntoIterator<Item = (u32, C)>) -> Self {
        let mut p = Self::zero_in(var);
        for (k, c) in terms {
            p.add_term(k, &c);
        }
        p
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&k| k == 0)
    }

    /// Coefficient of `x^k`, zero when absent.
    pub fn coeff(&self, k: u32) -> C {
        self.coeffs.get(&k).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &C)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn add_term(&mut self, k: u32, c: &C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.coeffs.get(&k) {
            Some(old) => old.add_ref(c),
            None => c.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, sum);
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.var, self.coeffs.iter().map(|(k, a)| (*k, a.mul_ref(c))))
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        let top = match self.degree() {
            Some(d) => d,
            None => return acc,
        };
        for k in (0..=top).rev() {
            acc = acc.mul_ref(x).add_ref(&self.coeff(k));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(self.var, C::one());
        for _ in 0..e {
            out = out.mul_ref(self);
        }
        out
    }

    /// Reinterprets a polynomial in `x` as a polynomial in `outer` whose
    /// coefficients are polynomials in `x`, via `x ↦ outer·x`; i.e. returns
    /// `p(Nd)` as a polynomial in `N` with coefficients in `d`.
    pub fn scale_variable(&self, outer: Var) -> Poly<Poly<C>> {
        Poly::from_terms(
            outer,
            self.coeffs.iter().map(|(k, c)| (*k, Poly::monomial(self.var, c.clone(), *k))),
        )
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.var, self.coeffs.iter().map(|(k, c)| (*k, f(c))))
    }

    fn join_var(&self, o: &Self) -> Var {
        match (self.is_constant(), o.is_constant()) {
            (true, _) => o.var,
            (_, true) => self.var,
            _ => {
                assert_eq!(self.var, o.var, "mixed polynomial variables");
                self.var
            }
        }
    }
}

impl<C: Ring> PartialEq for Poly<C> {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs && (self.is_constant() || self.var == o.var)
    }
}

impl<C: Ring> Zero for Poly<C> {
    fn zero() -> Self {
        Self::zero_in(Var::Cst)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Ring> One for Poly<C> {
    fn one() -> Self {
        Self::constant(Var::Cst, C::one())
    }
}

impl<C: Ring> Add for Poly<C> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl<C: Ring> Sub for Poly<C> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.sub_ref(&o)
    }
}

impl<C: Ring> Mul for Poly<C> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl<C: Ring> Neg for Poly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { var: self.var, coeffs: self.coeffs.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl<C: Ring> Ring for Poly<C> {
    fn add_ref(&self, o: &Self) -> Self {
        let mut out = Self { var: self.join_var(o), coeffs: self.coeffs.clone() };
        for (k, c) in &o.coeffs {
            out.add_term(*k, c);
        }
        out
    }
    fn sub_ref(&self, o: &Self) -> Self {
        let mut out = Self { var: self.join_var(o), coeffs: self.coeffs.clone() };
        for (k, c) in &o.coeffs {
            out.add_term(*k, &-c.clone());
        }
        out
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let mut out = Self::zero_in(self.join_var(o));
        for (i, a) in &self.coeffs {
            for (j, b) in &o.coeffs {
                out.add_term(i + j, &a.mul_ref(b));
            }
        }
        out
    }
}

impl<C: GaussianAlgebra> GaussianAlgebra for Poly<C> {
    fn from_gaussian(g: &GaussianRational) -> Self {
        Self::constant(Var::Cst, C::from_gaussian(g))
    }
}

/// Text form of a coefficient inside a polynomial display.
pub trait CoeffDisplay {
    fn coeff_text(&self) -> String;
    /// True when the text needs parentheses before a variable.
    fn is_compound(&self) -> bool;
}

impl CoeffDisplay for Rational {
    fn coeff_text(&self) -> String {
        fmt_rational(self)
    }
    fn is_compound(&self) -> bool {
        false
    }
}

impl CoeffDisplay for GaussianRational {
    fn coeff_text(&self) -> String {
        self.to_string()
    }
    fn is_compound(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }
}

impl<C: Ring + CoeffDisplay> CoeffDisplay for Poly<C> {
    fn coeff_text(&self) -> String {
        self.to_string()
    }
    fn is_compound(&self) -> bool {
        self.coeffs.len() > 1 || self.coeffs.keys().any(|&k| k > 0)
    }
}

impl<C: Ring + CoeffDisplay> fmt::Display for Poly<C> {
    /// Ascending powers, e.g. `191/224 - 2b - 36b^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            let mut text = c.coeff_text();
            let negative = !c.is_compound() && text.starts_with('-');
            if negative {
                text.remove(0);
            }
            if c.is_compound() && *k > 0 {
                text = format!("({text})");
            }
            let sep = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let var = match k {
                0 => String::new(),
                1 => self.var.name().to_string(),
                _ => format!("{}^{}", self.var.name(), k),
            };
            if *k > 0 && text == "1" {
                write!(f, "{sep}{var}")?;
            } else if *k > 0 {
                write!(f, "{sep}{text}{var}")?;
            } else {
                write!(f, "{sep}{text}")?;
            }
        }
        Ok(())
    }
}
