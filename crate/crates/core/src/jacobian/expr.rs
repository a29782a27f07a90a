//! Tautological expressions on the compactified Jacobian, its boundary
//! Jacobian `J_{g−1,2}`, and the corresponding moduli loci.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, rat, Poly, QPoly, Rational, Ring, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Locus {
    /// `J̄_g^{≤1}`.
    Total,
    /// `J_{g−1,2}`.
    Boundary,
    /// `M̄_g^{≤1}`.
    Base,
    /// `M_{g−1,2}`.
    BaseBoundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Theta,
    Xi2,
    Psi1,
    Psi2,
    Kappa1,
    Delta,
}

impl Gen {
    pub fn name(self) -> &'static str {
        match self {
            Gen::Theta => "theta",
            Gen::Xi2 => "xi2",
            Gen::Psi1 => "psi1",
            Gen::Psi2 => "psi2",
            Gen::Kappa1 => "kappa1",
            Gen::Delta => "delta",
        }
    }

    pub fn weight(self) -> u32 {
        match self {
            Gen::Theta => 2,
            Gen::Xi2 => 1,
            _ => 0,
        }
    }

    fn allowed_on(self, locus: Locus) -> bool {
        use Gen::*;
        match locus {
            Locus::Total => matches!(self, Theta | Kappa1 | Delta),
            Locus::Boundary => matches!(self, Theta | Xi2 | Psi1 | Psi2),
            Locus::Base => matches!(self, Kappa1 | Delta),
            Locus::BaseBoundary => matches!(self, Psi1 | Psi2),
        }
    }
}

/// Exponent vector; `opaque` marks an unnamed class of the given weight.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub theta: u32,
    pub xi2: u32,
    pub psi1: u32,
    pub psi2: u32,
    pub kappa1: u32,
    pub delta: u32,
    pub opaque: Option<u32>,
}

impl Mono {
    pub const ONE: Mono = Mono { theta: 0, xi2: 0, psi1: 0, psi2: 0, kappa1: 0, delta: 0, opaque: None };

    pub fn gen(g: Gen) -> Self {
        let mut m = Self::ONE;
        *m.exp_mut(g) = 1;
        m
    }

    pub fn exp(&self, g: Gen) -> u32 {
        match g {
            Gen::Theta => self.theta,
            Gen::Xi2 => self.xi2,
            Gen::Psi1 => self.psi1,
            Gen::Psi2 => self.psi2,
            Gen::Kappa1 => self.kappa1,
            Gen::Delta => self.delta,
        }
    }

    fn exp_mut(&mut self, g: Gen) -> &mut u32 {
        match g {
            Gen::Theta => &mut self.theta,
            Gen::Xi2 => &mut self.xi2,
            Gen::Psi1 => &mut self.psi1,
            Gen::Psi2 => &mut self.psi2,
            Gen::Kappa1 => &mut self.kappa1,
            Gen::Delta => &mut self.delta,
        }
    }

    /// `[N]*`-weight.
    pub fn weight(&self) -> u32 {
        2 * self.theta + self.xi2 + self.opaque.unwrap_or(0)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let opaque = match (self.opaque, o.opaque) {
            (Some(_), Some(_)) => return Err(Error::Unsupported("product of two opaque classes".into())),
            (a, b) => a.or(b),
        };
        Ok(Mono {
            theta: self.theta + o.theta,
            xi2: self.xi2 + o.xi2,
            psi1: self.psi1 + o.psi1,
            psi2: self.psi2 + o.psi2,
            kappa1: self.kappa1 + o.kappa1,
            delta: self.delta + o.delta,
            opaque,
        })
    }

    pub fn gens(&self) -> impl Iterator<Item = (Gen, u32)> + '_ {
        [Gen::Theta, Gen::Xi2, Gen::Psi1, Gen::Psi2, Gen::Kappa1, Gen::Delta]
            .into_iter()
            .map(|g| (g, self.exp(g)))
            .filter(|(_, e)| *e > 0)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    fn text(&self) -> String {
        let mut parts: Vec<String> =
            self.gens().map(|(g, e)| if e == 1 { g.name().to_string() } else { format!("{}^{e}", g.name()) }).collect();
        if let Some(w) = self.opaque {
            parts.push(format!("alpha_w{w}"));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// A term is a plain monomial or, on `Total`/`Base`, the boundary
/// pushforward of a monomial from `Boundary`/`BaseBoundary`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub pushed: bool,
    pub mono: Mono,
}

/// Formal sum of monomials with coefficients polynomial in `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct TautExpr {
    locus: Locus,
    genus: u32,
    terms: BTreeMap<Term, QPoly>,
}

pub fn qp(r: Rational) -> QPoly {
    QPoly::constant(Var::B, r)
}

pub fn b_var() -> QPoly {
    QPoly::x(Var::B)
}

fn boundary_of(locus: Locus) -> Option<Locus> {
    match locus {
        Locus::Total => Some(Locus::Boundary),
        Locus::Base => Some(Locus::BaseBoundary),
        _ => None,
    }
}

impl TautExpr {
    pub fn zero(locus: Locus, genus: u32) -> Self {
        Self { locus, genus, terms: BTreeMap::new() }
    }

    pub fn one(locus: Locus, genus: u32) -> Self {
        Self::scalar(locus, genus, QPoly::one())
    }

    pub fn scalar(locus: Locus, genus: u32, c: QPoly) -> Self {
        let mut x = Self::zero(locus, genus);
        x.add_term(Term { pushed: false, mono: Mono::ONE }, c);
        x
    }

    pub fn gen(locus: Locus, genus: u32, g: Gen) -> Result<Self> {
        if !g.allowed_on(locus) {
            return Err(Error::OutsideModel(format!("{} does not live on {locus:?}", g.name())));
        }
        let mut x = Self::zero(locus, genus);
        x.add_term(Term { pushed: false, mono: Mono::gen(g) }, QPoly::one());
        Ok(x)
    }

    /// An unnamed class of weight `w` on `Boundary`.
    pub fn opaque(genus: u32, w: u32) -> Self {
        let mut x = Self::zero(Locus::Boundary, genus);
        x.add_term(Term { pushed: false, mono: Mono { opaque: Some(w), ..Mono::ONE } }, QPoly::one());
        x
    }

    pub fn locus(&self) -> Locus {
        self.locus
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &QPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &Term) -> QPoly {
        self.terms.get(t).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, t: Term, c: QPoly) {
        let v = self.terms.remove(&t).unwrap_or_else(QPoly::zero) + c;
        if !v.is_zero() {
            self.terms.insert(t, v);
        }
    }

    fn same_place(&self, o: &Self) -> Result<()> {
        if self.locus != o.locus || self.genus != o.genus {
            return Err(Error::OutsideModel(format!(
                "cannot combine classes on {:?} (g={}) and {:?} (g={})",
                self.locus, self.genus, o.locus, o.genus
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_place(o)?;
        let mut x = self.clone();
        for (t, c) in o.terms() {
            x.add_term(*t, c.clone());
        }
        Ok(x)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&qp(-Rational::one()))
    }

    pub fn scale(&self, c: &QPoly) -> Self {
        let mut x = Self::zero(self.locus, self.genus);
        for (t, v) in self.terms() {
            x.add_term(*t, v.mul_ref(c));
        }
        x
    }

    pub fn scale_q(&self, q: Rational) -> Self {
        self.scale(&qp(q))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_place(o)?;
        let mut x = Self::zero(self.locus, self.genus);
        for (a, p) in self.terms() {
            for (b, q) in o.terms() {
                let pq = p.mul_ref(q);
                for (t, c) in self.term_mul(a, b)?.terms() {
                    x.add_term(*t, c.mul_ref(&pq));
                }
            }
        }
        Ok(x)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut out = Self::one(self.locus, self.genus);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    fn term_mul(&self, a: &Term, b: &Term) -> Result<Self> {
        let mut out = Self::zero(self.locus, self.genus);
        match (a.pushed, b.pushed) {
            (false, false) => out.add_term(Term { pushed: false, mono: a.mono.mul(&b.mono)? }, QPoly::one()),
            (true, true) => return Err(Error::OutsideModel("product of two boundary pushforwards".into())),
            (false, true) | (true, false) => {
                let (plain, pushed) = if a.pushed { (b, a) } else { (a, b) };
                let inner = boundary_of(self.locus).expect("pushed terms only on Total/Base");
                let pulled = pull_mono(&plain.mono, self.locus, self.genus)?;
                let mut carried = Self::zero(inner, self.genus);
                carried.add_term(Term { pushed: false, mono: pushed.mono }, QPoly::one());
                for (t, c) in pulled.mul(&carried)?.terms() {
                    out.add_term(Term { pushed: true, mono: t.mono }, c.clone());
                }
            }
        }
        Ok(out)
    }

    /// The boundary pushforward `ι_*ε_*t_*` (from `Boundary`) or `ι_*`
    /// (from `BaseBoundary`).
    pub fn push_boundary(&self) -> Result<Self> {
        let outer = match self.locus {
            Locus::Boundary => Locus::Total,
            Locus::BaseBoundary => Locus::Base,
            _ => return Err(Error::OutsideModel("not a boundary locus".into())),
        };
        let mut x = Self::zero(outer, self.genus);
        for (t, c) in self.terms() {
            x.add_term(Term { pushed: true, mono: t.mono }, c.clone());
        }
        Ok(x)
    }

    /// Terms of `[N]*`-weight exactly `w`.
    pub fn weight_part(&self, w: u32) -> Self {
        let mut x = Self::zero(self.locus, self.genus);
        for (t, c) in self.terms().filter(|(t, _)| t.mono.weight() == w) {
            x.add_term(*t, c.clone());
        }
        x
    }

    /// `[N]*x`: every monomial scaled by `N^weight`.
    pub fn n_weight(&self) -> BTreeMap<Term, Poly<QPoly>> {
        self.terms()
            .map(|(t, c)| (*t, Poly::monomial(Var::N, c.clone(), t.mono.weight())))
            .collect()
    }
}

/// Pullback of a plain monomial to the boundary locus:
/// `θ ↦ θ + ½(ψ₁+ψ₂)`, `δ ↦ −(ψ₁+ψ₂)`.
pub fn pull_mono(m: &Mono, locus: Locus, genus: u32) -> Result<TautExpr> {
    let inner = boundary_of(locus).ok_or_else(|| Error::OutsideModel("no boundary to pull back to".into()))?;
    if m.kappa1 > 0 {
        return Err(Error::Unsupported("pullback of kappa1 to the boundary is not modeled".into()));
    }
    let psi = TautExpr::gen(inner, genus, Gen::Psi1)?.add(&TautExpr::gen(inner, genus, Gen::Psi2)?)?;
    let mut out = TautExpr::one(inner, genus);
    if m.theta > 0 {
        let th = TautExpr::gen(inner, genus, Gen::Theta)?.add(&psi.scale_q(rat(1, 2)))?;
        out = out.mul(&th.pow(m.theta)?)?;
    }
    if m.delta > 0 {
        out = out.mul(&psi.neg().pow(m.delta)?)?;
    }
    Ok(out)
}

impl fmt::Display for TautExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let push = match self.locus {
            Locus::Total => "iet_*",
            _ => "i_*",
        };
        for (k, (t, c)) in self.terms.iter().enumerate() {
            let body = if t.pushed { format!("{push}({})", t.mono.text()) } else { t.mono.text() };
            let (neg, mag) = match c.is_constant() {
                true if c.coeff(0).is_negative() => (true, qp(-c.coeff(0))),
                _ => (false, c.clone()),
            };
            let coeff = if mag.is_constant() { fmt_rational(&mag.coeff(0)) } else { format!("({mag})") };
            let text = match (coeff.as_str(), body.as_str()) {
                (_, "1") => coeff.clone(),
                ("1", _) => body,
                _ => format!("{coeff}*{body}"),
            };
            match (k, neg) {
                (0, true) => write!(f, "-{text}")?,
                (0, false) => write!(f, "{text}")?,
                (_, true) => write!(f, " - {text}")?,
                (_, false) => write!(f, " + {text}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn weights_are_additive() {
        let a = Mono { theta: 2, xi2: 1, ..Mono::ONE };
        let b = Mono { theta: 1, psi1: 3, ..Mono::ONE };
        assert_eq!(a.mul(&b).unwrap().weight(), a.weight() + b.weight());
    }

    #[test]
    fn n_weight_examples() {
        let th = TautExpr::gen(Locus::Boundary, 3, Gen::Theta).unwrap();
        let xi = TautExpr::gen(Locus::Boundary, 3, Gen::Xi2).unwrap();
        let psi = TautExpr::gen(Locus::Boundary, 3, Gen::Psi1).unwrap();
        let powers: Vec<u32> = [th, xi, psi]
            .iter()
            .map(|x| x.n_weight().values().next().unwrap().degree().unwrap())
            .collect();
        assert_eq!(powers, vec![2, 1, 0]);
    }

    #[test]
    fn locus_tags() {
        assert!(TautExpr::gen(Locus::Total, 3, Gen::Xi2).is_err());
        let a = TautExpr::gen(Locus::Total, 3, Gen::Theta).unwrap();
        let b = TautExpr::gen(Locus::Boundary, 3, Gen::Theta).unwrap();
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn projection_formula_on_total() {
        // θ·ι_*(1) = ι_*(θ + ½ψ₁ + ½ψ₂)
        let th = TautExpr::gen(Locus::Total, 3, Gen::Theta).unwrap();
        let unit = TautExpr::one(Locus::Boundary, 3).push_boundary().unwrap();
        let got = th.mul(&unit).unwrap();
        let mut want = TautExpr::zero(Locus::Total, 3);
        want.add_term(Term { pushed: true, mono: Mono::gen(Gen::Theta) }, QPoly::one());
        want.add_term(Term { pushed: true, mono: Mono::gen(Gen::Psi1) }, qp(rat(1, 2)));
        want.add_term(Term { pushed: true, mono: Mono::gen(Gen::Psi2) }, qp(rat(1, 2)));
        assert_eq!(got, want);
        assert!(unit.mul(&unit).is_err());
        let d = TautExpr::gen(Locus::Total, 3, Gen::Delta).unwrap();
        let got = d.mul(&unit).unwrap();
        assert_eq!(got.coeff(&Term { pushed: true, mono: Mono::gen(Gen::Psi1) }), qp(int(-1)));
    }

    #[test]
    fn display() {
        let th = TautExpr::gen(Locus::Boundary, 3, Gen::Theta).unwrap();
        let x = th.pow(2).unwrap().scale(&b_var());
        assert_eq!(x.to_string(), "(b)*theta^2");
        let y = th.scale_q(rat(-3, 2)).add(&TautExpr::one(Locus::Boundary, 3)).unwrap();
        assert_eq!(y.to_string(), "1 - 3/2*theta");
    }
}
