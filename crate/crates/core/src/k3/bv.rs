//! The Beauville–Voisin subring `{1, s, f, c}` of an elliptic K3 with section.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{fmt_rational, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bv {
    One,
    S,
    F,
    C,
}

impl Bv {
    pub const ALL: [Bv; 4] = [Bv::One, Bv::S, Bv::F, Bv::C];

    pub fn codim(self) -> u32 {
        match self {
            Bv::One => 0,
            Bv::S | Bv::F => 1,
            Bv::C => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Bv::One => "1",
            Bv::S => "s",
            Bv::F => "f",
            Bv::C => "c",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BvClass(BTreeMap<Bv, Rational>);

impl BvClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: Bv) -> Self {
        Self::term(b, Rational::one())
    }

    pub fn term(b: Bv, q: Rational) -> Self {
        let mut x = Self::zero();
        x.add_term(b, &q);
        x
    }

    /// `Θ = s + f`.
    pub fn theta() -> Self {
        Self::basis(Bv::S).add(&Self::basis(Bv::F))
    }

    pub fn coeff(&self, b: Bv) -> Rational {
        self.0.get(&b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Bv, &Rational)> {
        self.0.iter().map(|(b, q)| (*b, q))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, b: Bv, q: &Rational) {
        let v = self.coeff(b) + q;
        if v.is_zero() {
            self.0.remove(&b);
        } else {
            self.0.insert(b, v);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut x = self.clone();
        for (b, q) in o.terms() {
            x.add_term(b, q);
        }
        x
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut x = Self::zero();
        for (b, v) in self.terms() {
            x.add_term(b, &(v * q));
        }
        x
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut x = Self::zero();
        for (a, p) in self.terms() {
            for (b, q) in o.terms() {
                let pq = p * q;
                for (c, r) in basis_mul(a, b).terms() {
                    x.add_term(c, &(&pq * r));
                }
            }
        }
        x
    }

    pub fn fourier(&self) -> Self {
        self.map(fourier_basis)
    }

    pub fn fourier_inv(&self) -> Self {
        self.map(fourier_inv_basis)
    }

    fn map(&self, f: fn(Bv) -> BvClass) -> Self {
        self.terms().fold(Self::zero(), |acc, (b, q)| acc.add(&f(b).scale(q)))
    }
}

fn lin(terms: &[(Bv, i64)]) -> BvClass {
    terms.iter().fold(BvClass::zero(), |acc, (b, q)| acc.add(&BvClass::term(*b, int(*q))))
}

/// `s² = −2c`, `sf = c`, `f² = 0`, `c·(positive codimension) = 0`.
pub fn basis_mul(a: Bv, b: Bv) -> BvClass {
    use Bv::*;
    match (a, b) {
        (One, x) | (x, One) => BvClass::basis(x),
        (S, S) => lin(&[(C, -2)]),
        (S, F) | (F, S) => BvClass::basis(C),
        _ => BvClass::zero(),
    }
}

/// `[S] ↦ −Θ + c`, `s ↦ [S] − f + c`, `f ↦ −c`, `c ↦ f`.
fn fourier_basis(b: Bv) -> BvClass {
    use Bv::*;
    match b {
        One => lin(&[(S, -1), (F, -1), (C, 1)]),
        S => lin(&[(One, 1), (F, -1), (C, 1)]),
        F => lin(&[(C, -1)]),
        C => lin(&[(F, 1)]),
    }
}

/// `[S] ↦ Θ + c`, `s ↦ −[S] − f − c`, `f ↦ c`, `c ↦ −f`.
fn fourier_inv_basis(b: Bv) -> BvClass {
    use Bv::*;
    match b {
        One => lin(&[(S, 1), (F, 1), (C, 1)]),
        S => lin(&[(One, -1), (F, -1), (C, -1)]),
        F => lin(&[(C, 1)]),
        C => lin(&[(F, -1)]),
    }
}

/// Base pushforward: coefficient of the base unit and of the point.
pub fn push_to_base(x: &BvClass) -> (Rational, Rational) {
    (x.coeff(Bv::S), x.coeff(Bv::C))
}

impl fmt::Display for BvClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms().map(|(b, q)| (b.name().to_string(), q)))
    }
}

/// Shared `2s - 1/2c` style printer.
pub(crate) fn write_sum<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (name, q) in terms {
        let neg = q < &Rational::zero();
        let mag = if neg { -q.clone() } else { q.clone() };
        let sep = match (first, neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        if mag.is_one() {
            write!(f, "{sep}{name}")?;
        } else {
            write!(f, "{sep}{}*{name}", fmt_rational(&mag))?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
