//! Pushforwards along the abelian fibrations and the boundary rewrite of
//! `θ^{g+1}` on the total space.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::dr::DrExtraction;
use super::expr::{qp, Gen, Locus, Mono, TautExpr, Term};
use crate::error::{Error, Result};
use crate::exact::{int, QPoly, Rational};

pub fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * int(k as i64))
}

fn psi_sum(locus: Locus, genus: u32) -> Result<TautExpr> {
    TautExpr::gen(locus, genus, Gen::Psi1)?.add(&TautExpr::gen(locus, genus, Gen::Psi2)?)
}

fn from_mono(locus: Locus, genus: u32, m: Mono) -> TautExpr {
    let mut x = TautExpr::zero(locus, genus);
    x.add_term(Term { pushed: false, mono: m }, QPoly::one());
    x
}

/// `t*ε*ι*` on plain classes of the total space.
pub fn boundary_pull(x: &TautExpr) -> Result<TautExpr> {
    if x.locus() != Locus::Total {
        return Err(Error::OutsideModel("boundary_pull expects a class on the total space".into()));
    }
    let mut out = TautExpr::zero(Locus::Boundary, x.genus());
    for (t, c) in x.terms() {
        if t.pushed {
            return Err(Error::Unsupported("pullback of a boundary pushforward".into()));
        }
        out = out.add(&super::expr::pull_mono(&t.mono, Locus::Total, x.genus())?.scale(c))?;
    }
    Ok(out)
}

/// Pushforward `J_{g−1,2} → M_{g−1,2}` (relative dimension `n = g − 1`).
pub fn abelian_push(x: &TautExpr) -> Result<TautExpr> {
    if x.locus() != Locus::Boundary {
        return Err(Error::OutsideModel("abelian_push expects a class on the boundary Jacobian".into()));
    }
    let g = x.genus();
    let n = g - 1;
    let mut out = TautExpr::zero(Locus::BaseBoundary, g);
    for (t, c) in x.terms() {
        let m = t.mono;
        if m.weight() != 2 * n {
            continue;
        }
        if m.opaque.is_some() {
            return Err(Error::OutsideModel(format!("unnamed class of top weight {} cannot be pushed", 2 * n)));
        }
        let base = from_mono(Locus::BaseBoundary, g, Mono { theta: 0, xi2: 0, ..m });
        let pushed = match (m.theta, m.xi2) {
            (th, 0) if th == n => base.scale_q(factorial(n)),
            // 2θξ₂² = −θ²(ψ₁+ψ₂) on J_{2,2}
            (1, 2) if n == 2 => base.mul(&psi_sum(Locus::BaseBoundary, g)?)?.neg(),
            _ => {
                return Err(Error::OutsideModel(format!(
                    "no pushforward rule for theta^{} xi2^{} in relative dimension {n}",
                    m.theta, m.xi2
                )))
            }
        };
        out = out.add(&pushed.scale(c))?;
    }
    Ok(out)
}

/// Boundary expression of `θ^{g+1}` on the total space:
/// `(g+1)!·ι_*ε_*t_*(c·(θ+½ψ)^{g−1}/(g−1)! + Σ α_w)`.
#[derive(Clone, Debug)]
pub struct ThetaTop {
    genus: u32,
    coeff: Rational,
    alpha: BTreeMap<u32, TautExpr>,
}

impl ThetaTop {
    /// Every lower weight `w < 2g − 2` starts as an unnamed class.
    pub fn new(genus: u32, coeff: Rational) -> Self {
        let alpha = (0..2 * genus - 2).map(|w| (w, TautExpr::opaque(genus, w))).collect();
        Self { genus, coeff, alpha }
    }

    pub fn from_extraction(ex: &DrExtraction) -> Self {
        Self::new(ex.genus, ex.boundary_coeff.clone())
    }

    pub fn with_alpha(mut self, w: u32, class: TautExpr) -> Result<Self> {
        if class.locus() != Locus::Boundary || class.genus() != self.genus {
            return Err(Error::OutsideModel("alpha must live on the boundary Jacobian".into()));
        }
        if w >= 2 * self.genus - 2 {
            return Err(Error::Invalid(format!("alpha weight {w} is not below {}", 2 * self.genus - 2)));
        }
        if class.terms().any(|(t, _)| t.mono.weight() != w) {
            return Err(Error::Invalid(format!("alpha_{w} is not of pure weight {w}")));
        }
        self.alpha.insert(w, class);
        Ok(self)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn alpha(&self, w: u32) -> Option<&TautExpr> {
        self.alpha.get(&w)
    }

    /// The boundary class inside `ι_*ε_*t_*`, before the `(g+1)!`.
    pub fn inner(&self) -> Result<TautExpr> {
        let g = self.genus;
        let th = TautExpr::gen(Locus::Total, g, Gen::Theta)?;
        let lead = boundary_pull(&th.pow(g - 1)?)?.scale_q(self.coeff.clone() / factorial(g - 1));
        self.alpha.values().try_fold(lead, |acc, a| acc.add(a))
    }

    pub fn expression(&self) -> Result<TautExpr> {
        Ok(self.inner()?.push_boundary()?.scale_q(factorial(self.genus + 1)))
    }
}

/// `π_*` from the total space to the base, through the rewrite of `θ^{g+1}`.
pub fn total_push(x: &TautExpr, top: &ThetaTop) -> Result<TautExpr> {
    if x.locus() != Locus::Total {
        return Err(Error::OutsideModel("total_push expects a class on the total space".into()));
    }
    let g = x.genus();
    if top.genus() != g {
        return Err(Error::Invalid("theta rewrite for a different genus".into()));
    }
    let mut out = TautExpr::zero(Locus::Base, g);
    for (t, c) in x.terms() {
        let part = if t.pushed {
            abelian_push(&from_mono(Locus::Boundary, g, t.mono))?.push_boundary()?
        } else {
            let a = t.mono.theta;
            let base = from_mono(Locus::Base, g, Mono { theta: 0, ..t.mono });
            if a < g {
                continue;
            } else if a == g {
                base.scale_q(factorial(g))
            } else {
                let rest = TautExpr::gen(Locus::Total, g, Gen::Theta)?.pow(a - g - 1)?;
                let rewritten = rest.mul(&top.expression()?)?;
                total_push(&rewritten, top)?.mul(&base)?
            }
        };
        out = out.add(&part.scale(c))?;
    }
    Ok(out)
}

/// Rewrites `δ^k` on `M̄_g^{≤1}` as `ι_*((−ψ₁−ψ₂)^{k−1})`; with
/// `delta_cube_zero` the powers `k ≥ 3` are dropped instead.
pub fn expand_delta(x: &TautExpr, delta_cube_zero: bool) -> Result<TautExpr> {
    if x.locus() != Locus::Base {
        return Err(Error::OutsideModel("expand_delta expects a class on the base".into()));
    }
    let g = x.genus();
    let mut out = TautExpr::zero(Locus::Base, g);
    for (t, c) in x.terms() {
        let k = t.mono.delta;
        if t.pushed || k == 0 {
            out.add_term(*t, c.clone());
            continue;
        }
        if t.mono.kappa1 > 0 {
            return Err(Error::Unsupported("kappa1 times delta".into()));
        }
        if k >= 3 && delta_cube_zero {
            continue;
        }
        let inner = psi_sum(Locus::BaseBoundary, g)?.neg().pow(k - 1)?;
        out = out.add(&inner.push_boundary()?.scale(c))?;
    }
    Ok(out)
}

/// On the genus-2 integral locus: coefficient of `r_*[M₀,₄∖D]`, with
/// `δ² = −(1/6)r_*` and `ι_*ψᵢ = (1/24)r_*`.
pub fn to_r_multiple(x: &TautExpr) -> Result<QPoly> {
    if x.locus() != Locus::Base || x.genus() != 2 {
        return Err(Error::OutsideModel("r_* reduction lives on the genus-2 base".into()));
    }
    let mut out = QPoly::zero();
    for (t, c) in x.terms() {
        let m = t.mono;
        let factor = if !t.pushed && m == Mono::gen(Gen::Delta).mul(&Mono::gen(Gen::Delta))? {
            crate::exact::rat(-1, 6)
        } else if t.pushed && (m == Mono::gen(Gen::Psi1) || m == Mono::gen(Gen::Psi2)) {
            crate::exact::rat(1, 24)
        } else {
            return Err(Error::OutsideModel(format!("no r_* rule for {}", from_mono(Locus::Base, 2, m))));
        };
        out = out + c.clone() * qp(factor);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn total(g: u32, gen: Gen) -> TautExpr {
        TautExpr::gen(Locus::Total, g, gen).unwrap()
    }

    #[test]
    fn pull_of_theta_divisor() {
        let b = super::super::expr::b_var();
        let big = total(3, Gen::Theta).add(&total(3, Gen::Delta).scale(&b)).unwrap();
        let got = boundary_pull(&big).unwrap();
        let th = TautExpr::gen(Locus::Boundary, 3, Gen::Theta).unwrap();
        let want = th.add(&psi_sum(Locus::Boundary, 3).unwrap().scale(&(qp(rat(1, 2)) - b))).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn unit_on_j22() {
        let th = TautExpr::gen(Locus::Boundary, 3, Gen::Theta).unwrap();
        let got = abelian_push(&th.pow(2).unwrap().scale_q(rat(1, 2))).unwrap();
        assert_eq!(got, TautExpr::one(Locus::BaseBoundary, 3));
        assert!(abelian_push(&th).unwrap().is_zero());
        assert!(abelian_push(&TautExpr::opaque(3, 4)).is_err());
        assert!(abelian_push(&TautExpr::opaque(3, 2)).unwrap().is_zero());
    }

    #[test]
    fn projection_formula_for_base_classes() {
        // π_*(θ^g·δ) = π_*(θ^g)·δ
        let g = 4;
        let x = total(g, Gen::Theta).pow(g).unwrap().mul(&total(g, Gen::Delta)).unwrap();
        let top = ThetaTop::new(g, rat(1, 48));
        let got = total_push(&x, &top).unwrap();
        let want = TautExpr::gen(Locus::Base, g, Gen::Delta).unwrap().scale_q(factorial(g));
        assert_eq!(got, want);
    }

    #[test]
    fn delta_expansion() {
        let d = TautExpr::gen(Locus::Base, 3, Gen::Delta).unwrap();
        let e = expand_delta(&d.pow(2).unwrap(), true).unwrap();
        let want = psi_sum(Locus::BaseBoundary, 3).unwrap().neg().push_boundary().unwrap();
        assert_eq!(e, want);
        assert!(expand_delta(&d.pow(3).unwrap(), true).unwrap().is_zero());
        // δ·ι_*(1) = ι_*(−ψ) agrees with the expansion of δ²
        let unit = TautExpr::one(Locus::BaseBoundary, 3).push_boundary().unwrap();
        assert_eq!(d.mul(&unit).unwrap(), want);
    }
}
