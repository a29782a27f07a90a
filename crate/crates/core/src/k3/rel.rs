//! Tautological cycles on `S ×_B S` and relative correspondences.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::bv::{push_to_base, write_sum, Bv, BvClass};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Monomial basis of the tautological part of `CH(S ×_B S)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelBasis {
    /// `[S ×_B S]`
    One,
    S1,
    S2,
    /// Common pullback of `f`.
    F,
    Diag,
    S1S2,
    C1,
    C2,
    /// The fiber-supported degree-one point class.
    Z,
}

impl RelBasis {
    pub const ALL: [RelBasis; 9] = [
        RelBasis::One,
        RelBasis::S1,
        RelBasis::S2,
        RelBasis::F,
        RelBasis::Diag,
        RelBasis::S1S2,
        RelBasis::C1,
        RelBasis::C2,
        RelBasis::Z,
    ];

    pub fn dim(self) -> u32 {
        use RelBasis::*;
        match self {
            One => 3,
            S1 | S2 | F | Diag => 2,
            S1S2 | C1 | C2 => 1,
            Z => 0,
        }
    }

    pub fn name(self) -> &'static str {
        use RelBasis::*;
        match self {
            One => "[SxS]",
            S1 => "p1*s",
            S2 => "p2*s",
            F => "F",
            Diag => "[Delta]",
            S1S2 => "p1*s.p2*s",
            C1 => "p1*c",
            C2 => "p2*c",
            Z => "z",
        }
    }

    /// Every way of writing the element as `p1*x · p2*y`.
    pub fn pair_reps(self) -> &'static [(Bv, Bv)] {
        use Bv::{One as I, C, F as Fb, S};
        match self {
            RelBasis::One => &[(I, I)],
            RelBasis::S1 => &[(S, I)],
            RelBasis::S2 => &[(I, S)],
            RelBasis::F => &[(Fb, I), (I, Fb)],
            RelBasis::Diag => &[],
            RelBasis::S1S2 => &[(S, S)],
            RelBasis::C1 => &[(C, I), (S, Fb)],
            RelBasis::C2 => &[(I, C), (Fb, S)],
            RelBasis::Z => &[(S, C), (C, S)],
        }
    }

    pub fn pair_rep(self) -> Option<(Bv, Bv)> {
        self.pair_reps().first().copied()
    }
}

/// `p1*x · p2*y` on basis classes.
fn pair_basis(x: Bv, y: Bv) -> Option<RelBasis> {
    use Bv::{One as I, C, F as Fb, S};
    use RelBasis::*;
    match (x, y) {
        (I, I) => Some(One),
        (S, I) => Some(S1),
        (I, S) => Some(S2),
        (Fb, I) | (I, Fb) => Some(F),
        (S, S) => Some(S1S2),
        (C, I) | (S, Fb) => Some(C1),
        (I, C) | (Fb, S) => Some(C2),
        (S, C) | (C, S) => Some(Z),
        _ => None,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelCycle(BTreeMap<RelBasis, Rational>);

impl RelCycle {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: RelBasis) -> Self {
        let mut x = Self::zero();
        x.add_term(b, &Rational::one());
        x
    }

    pub fn coeff(&self, b: RelBasis) -> Rational {
        self.0.get(&b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (RelBasis, &Rational)> {
        self.0.iter().map(|(b, q)| (*b, q))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, b: RelBasis, q: &Rational) {
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

    pub fn mul(&self, o: &Self) -> Result<Self> {
        rel_mul(self, o)
    }

    /// `p1*x`.
    pub fn p1(x: &BvClass) -> Self {
        pair(x, &BvClass::basis(Bv::One))
    }

    /// `p2*x`.
    pub fn p2(x: &BvClass) -> Self {
        pair(&BvClass::basis(Bv::One), x)
    }
}

impl fmt::Display for RelCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms().map(|(b, q)| (b.name().to_string(), q)))
    }
}

/// `p1*x · p2*y`.
pub fn pair(x: &BvClass, y: &BvClass) -> RelCycle {
    let mut out = RelCycle::zero();
    for (a, p) in x.terms() {
        for (b, q) in y.terms() {
            if let Some(r) = pair_basis(a, b) {
                out.add_term(r, &(p * q));
            }
        }
    }
    out
}

/// `Δ_*z`. Supported on `1, s, f` and their combinations.
pub fn diag_push(z: &BvClass) -> Result<RelCycle> {
    if !z.coeff(Bv::C).is_zero() {
        return Err(Error::OutsideModel("diag_push of c is not a primitive of the model".into()));
    }
    diag_push_inner(z)
}

/// Inside products the point class on the diagonal is `z`.
fn diag_push_inner(z: &BvClass) -> Result<RelCycle> {
    let mut out = RelCycle::zero();
    for (b, q) in z.terms() {
        let img = match b {
            Bv::One => RelCycle::basis(RelBasis::Diag),
            Bv::S => RelCycle::basis(RelBasis::S1S2),
            Bv::F => RelCycle::basis(RelBasis::C1).add(&RelCycle::basis(RelBasis::C2)),
            Bv::C => RelCycle::basis(RelBasis::Z),
        };
        out = out.add(&img.scale(q));
    }
    Ok(out)
}

fn rep_class(b: RelBasis) -> (BvClass, BvClass) {
    let (x, y) = b.pair_rep().expect("non-diagonal basis element");
    (BvClass::basis(x), BvClass::basis(y))
}

pub fn rel_mul_basis(a: RelBasis, b: RelBasis) -> Result<RelCycle> {
    use RelBasis::Diag;
    match (a, b) {
        (Diag, Diag) => Err(Error::OutsideModel("[Delta]·[Delta] needs excess intersection".into())),
        (Diag, o) | (o, Diag) => {
            let (x, y) = rep_class(o);
            diag_push_inner(&x.mul(&y))
        }
        _ => {
            let (x, y) = rep_class(a);
            let (u, v) = rep_class(b);
            Ok(pair(&x.mul(&u), &y.mul(&v)))
        }
    }
}

pub fn rel_mul(u: &RelCycle, v: &RelCycle) -> Result<RelCycle> {
    let mut out = RelCycle::zero();
    for (a, p) in u.terms() {
        for (b, q) in v.terms() {
            out = out.add(&rel_mul_basis(a, b)?.scale(&(p * q)));
        }
    }
    Ok(out)
}

/// A basis element of the correspondence calculus: a cycle, `𝔉`, or `𝔉⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CorrBasis {
    Cycle(RelBasis),
    Fourier,
    FourierInv,
}

impl CorrBasis {
    pub fn all() -> Vec<CorrBasis> {
        RelBasis::ALL
            .iter()
            .map(|b| CorrBasis::Cycle(*b))
            .chain([CorrBasis::Fourier, CorrBasis::FourierInv])
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            CorrBasis::Cycle(b) => b.name(),
            CorrBasis::Fourier => "Four",
            CorrBasis::FourierInv => "Four^-1",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corr(BTreeMap<CorrBasis, Rational>);

impl Corr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: CorrBasis) -> Self {
        let mut x = Self::zero();
        x.add_term(b, &Rational::one());
        x
    }

    pub fn fourier() -> Self {
        Self::basis(CorrBasis::Fourier)
    }

    pub fn fourier_inv() -> Self {
        Self::basis(CorrBasis::FourierInv)
    }

    pub fn diag() -> Self {
        Self::basis(CorrBasis::Cycle(RelBasis::Diag))
    }

    pub fn coeff(&self, b: CorrBasis) -> Rational {
        self.0.get(&b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (CorrBasis, &Rational)> {
        self.0.iter().map(|(b, q)| (*b, q))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, b: CorrBasis, q: &Rational) {
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

    /// The cycle part, if no `𝔉` symbol survives.
    pub fn as_cycle(&self) -> Option<RelCycle> {
        let mut out = RelCycle::zero();
        for (b, q) in self.terms() {
            match b {
                CorrBasis::Cycle(r) => out.add_term(r, q),
                _ => return None,
            }
        }
        Some(out)
    }

    pub fn compose(&self, o: &Self) -> Result<Self> {
        rel_compose(self, o)
    }

    /// `a∘b − b∘a`.
    pub fn bracket(&self, o: &Self) -> Result<Self> {
        Ok(self.compose(o)?.sub(&o.compose(self)?))
    }
}

impl From<RelCycle> for Corr {
    fn from(u: RelCycle) -> Self {
        let mut x = Corr::zero();
        for (b, q) in u.terms() {
            x.add_term(CorrBasis::Cycle(b), q);
        }
        x
    }
}

impl fmt::Display for Corr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms().map(|(b, q)| (b.name().to_string(), q)))
    }
}

/// `(p1*a'·p2*b') ∘ (p1*a·p2*b) = p1*a · p2*b' · π*π_*(b·a')`.
pub fn compose_pairs(left: (&BvClass, &BvClass), right: (&BvClass, &BvClass)) -> RelCycle {
    let (a2, b2) = left;
    let (a, b) = right;
    let (unit, point) = push_to_base(&b.mul(a2));
    let base = pair(a, b2).scale(&unit);
    let fiber = pair(&a.mul(&BvClass::basis(Bv::F)), b2).scale(&point);
    base.add(&fiber)
}

pub fn compose_basis(l: CorrBasis, r: CorrBasis) -> Result<Corr> {
    use CorrBasis::*;
    let diag = Cycle(RelBasis::Diag);
    Ok(match (l, r) {
        (x, y) if x == diag => Corr::basis(y),
        (x, y) if y == diag => Corr::basis(x),
        (Fourier, FourierInv) | (FourierInv, Fourier) => Corr::diag(),
        (Fourier, Fourier) | (FourierInv, FourierInv) => {
            return Err(Error::OutsideModel("no rule for composing two Fourier symbols of the same direction".into()))
        }
        (Cycle(p), Fourier) => {
            let (a, b) = rep_class(p);
            pair(&a.fourier(), &b).into()
        }
        (Cycle(p), FourierInv) => {
            let (a, b) = rep_class(p);
            pair(&a.fourier_inv(), &b).into()
        }
        (Fourier, Cycle(p)) => {
            let (a, b) = rep_class(p);
            pair(&a, &b.fourier()).into()
        }
        (FourierInv, Cycle(p)) => {
            let (a, b) = rep_class(p);
            pair(&a, &b.fourier_inv()).into()
        }
        (Cycle(p), Cycle(q)) => {
            let (a2, b2) = rep_class(p);
            let (a, b) = rep_class(q);
            compose_pairs((&a2, &b2), (&a, &b)).into()
        }
    })
}

/// `u ∘ v`: apply `v` first.
pub fn rel_compose(u: &Corr, v: &Corr) -> Result<Corr> {
    let mut out = Corr::zero();
    for (a, p) in u.terms() {
        for (b, q) in v.terms() {
            out = out.add(&compose_basis(a, b)?.scale(&(p * q)));
        }
    }
    Ok(out)
}

/// `p1*Θ`, `[Δ] − p1*Θ − p2*Θ`, `p2*Θ`.
pub fn build_projectors() -> [Corr; 3] {
    let p0: Corr = RelCycle::p1(&BvClass::theta()).into();
    let p2: Corr = RelCycle::p2(&BvClass::theta()).into();
    let p1 = Corr::diag().sub(&p0).sub(&p2);
    [p0, p1, p2]
}

/// `e₀ = Δ_*Θ`, `f₀ = [S ×_B S]`, `h₀ = [e₀, f₀]`.
pub fn build_motivic_sl2() -> Result<(Corr, Corr, Corr)> {
    let e0: Corr = diag_push(&BvClass::theta())?.into();
    let f0 = Corr::basis(CorrBasis::Cycle(RelBasis::One));
    let h0 = e0.bracket(&f0)?;
    Ok((e0, h0, f0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn th() -> BvClass {
        BvClass::theta()
    }

    #[test]
    fn rel_mul_table() {
        use RelBasis::*;
        let b = RelCycle::basis;
        assert_eq!(rel_mul_basis(S1, S1).unwrap(), b(C1).scale(&int(-2)));
        assert_eq!(rel_mul_basis(F, F).unwrap(), RelCycle::zero());
        assert_eq!(rel_mul_basis(F, Diag).unwrap(), b(C1).add(&b(C2)));
        assert_eq!(rel_mul_basis(Diag, S1S2).unwrap(), b(Z).scale(&int(-2)));
        assert_eq!(rel_mul_basis(C1, C2).unwrap(), RelCycle::zero());
        assert!(rel_mul_basis(Diag, Diag).is_err());
        let pf = RelCycle::p1(&BvClass::basis(Bv::F));
        let qf = RelCycle::p2(&BvClass::basis(Bv::F));
        assert!(pf.mul(&qf).unwrap().is_zero());
    }

    #[test]
    fn degree_zero_chain_vanishes() {
        let c = BvClass::basis(Bv::C);
        let x = pair(&th(), &c).neg().add(&pair(&c, &th()));
        assert!(x.is_zero());
    }

    #[test]
    fn diag_push_examples() {
        assert_eq!(diag_push(&th()).unwrap(), pair(&th(), &th()));
        let s = BvClass::basis(Bv::S);
        let f = BvClass::basis(Bv::F);
        assert_eq!(diag_push(&f).unwrap(), pair(&s, &f).add(&pair(&f, &s)));
        assert_eq!(diag_push(&s).unwrap(), pair(&s, &s));
        assert!(diag_push(&BvClass::basis(Bv::C)).is_err());
    }

    #[test]
    fn diag_mul_is_diag_push() {
        for x in [Bv::One, Bv::S, Bv::F] {
            let d = RelCycle::basis(RelBasis::Diag);
            let lhs = d.mul(&RelCycle::p1(&BvClass::basis(x))).unwrap();
            assert_eq!(lhs, diag_push(&BvClass::basis(x)).unwrap());
            assert_eq!(d.mul(&RelCycle::p2(&BvClass::basis(x))).unwrap(), lhs);
        }
    }

    #[test]
    fn pair_representatives_agree() {
        // Every representative of a basis element must give the same
        // products and compositions.
        for b in RelBasis::ALL {
            for &(x, y) in b.pair_reps() {
                assert_eq!(pair(&BvClass::basis(x), &BvClass::basis(y)), RelCycle::basis(b));
                for o in RelBasis::ALL.iter().filter(|o| **o != RelBasis::Diag) {
                    let (u, v) = rep_class(*o);
                    let (bx, by) = (BvClass::basis(x), BvClass::basis(y));
                    assert_eq!(pair(&bx.mul(&u), &by.mul(&v)), rel_mul_basis(b, *o).unwrap());
                    let l: Corr = compose_pairs((&bx, &by), (&u, &v)).into();
                    assert_eq!(l, compose_basis(CorrBasis::Cycle(b), CorrBasis::Cycle(*o)).unwrap(), "{b:?}∘{o:?}");
                    let r: Corr = compose_pairs((&u, &v), (&bx, &by)).into();
                    assert_eq!(r, compose_basis(CorrBasis::Cycle(*o), CorrBasis::Cycle(b)).unwrap());
                }
                let f: Corr = pair(&BvClass::basis(x).fourier(), &BvClass::basis(y)).into();
                assert_eq!(f, compose_basis(CorrBasis::Cycle(b), CorrBasis::Fourier).unwrap());
                let g: Corr = pair(&BvClass::basis(x), &BvClass::basis(y).fourier_inv()).into();
                assert_eq!(g, compose_basis(CorrBasis::FourierInv, CorrBasis::Cycle(b)).unwrap());
            }
        }
    }

    #[test]
    fn base_push_pull_brute_force() {
        // π_* is forced by degree: only codim 1 (s has degree 1 on fibers)
        // and codim 2 (c is a point) survive, and f is a fiber.
        for b in Bv::ALL {
            let (u, p) = push_to_base(&BvClass::basis(b));
            let expected = match b {
                Bv::S => (int(1), int(0)),
                Bv::C => (int(0), int(1)),
                _ => (int(0), int(0)),
            };
            assert_eq!((u, p), expected);
        }
        // Projection formula: π_*(x·π*pt) = π_*(x·f) = deg on fiber.
        assert_eq!(push_to_base(&BvClass::basis(Bv::S).mul(&BvClass::basis(Bv::F))).1, int(1));
    }

    #[test]
    fn diag_is_two_sided_identity() {
        for b in CorrBasis::all() {
            let x = Corr::basis(b);
            assert_eq!(Corr::diag().compose(&x).unwrap(), x);
            assert_eq!(x.compose(&Corr::diag()).unwrap(), x);
        }
    }

    #[test]
    fn conjugated_e0_intermediate() {
        let e0: Corr = pair(&th(), &th()).into();
        let lhs = Corr::fourier_inv().compose(&e0).unwrap().compose(&Corr::fourier()).unwrap();
        assert_eq!(lhs, pair(&th().fourier(), &th().fourier_inv()).into());
    }

    #[test]
    fn h0_value() {
        let (_, h0, _) = build_motivic_sl2().unwrap();
        let expected: Corr = RelCycle::p2(&th()).sub(&RelCycle::p1(&th())).into();
        assert_eq!(h0, expected);
    }

    #[test]
    fn compose_and_mul_associative() {
        let all = CorrBasis::all();
        let mut checked = 0;
        for a in &all {
            for b in &all {
                for c in &all {
                    let (x, y, z) = (Corr::basis(*a), Corr::basis(*b), Corr::basis(*c));
                    let l = x.compose(&y).and_then(|xy| xy.compose(&z));
                    let r = y.compose(&z).and_then(|yz| x.compose(&yz));
                    if let (Ok(l), Ok(r)) = (l, r) {
                        assert_eq!(l, r, "{a:?} {b:?} {c:?}");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 1000);
        for a in RelBasis::ALL {
            for b in RelBasis::ALL {
                assert_eq!(rel_mul_basis(a, b).ok(), rel_mul_basis(b, a).ok());
                for c in RelBasis::ALL {
                    let (x, y, z) = (RelCycle::basis(a), RelCycle::basis(b), RelCycle::basis(c));
                    if let (Ok(l), Ok(r)) = (x.mul(&y).and_then(|p| p.mul(&z)), y.mul(&z).and_then(|p| x.mul(&p))) {
                        assert_eq!(l, r, "{a:?} {b:?} {c:?}");
                    }
                }
            }
        }
    }
}
