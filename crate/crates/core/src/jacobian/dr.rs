//! Shape of the universal double ramification relation in top degree and
//! extraction of its `N^{2g+2}` coefficient under `[N]*`.

use num_traits::{One, Zero};

use super::expr::{Gen, TautExpr};
use super::Locus;
use crate::error::{Error, Result};
use crate::exact::{int, rat, Poly, QPoly, Rational, Var};

/// Coefficient polynomial `f_{k,ℓ,m}(d)` of a boundary term.
#[derive(Clone, Debug, PartialEq)]
pub enum FCoeff {
    Known(QPoly),
    /// Only the degree bound is known.
    Opaque { degree_bound: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryTerm {
    pub k: u32,
    pub l: u32,
    pub m: u32,
    pub f: FCoeff,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DrRelationShape {
    pub genus: u32,
    /// `(a, b)` with `a + b = g`: `cst·θ^a i_*((ψ_h+ψ_h')^b)`.
    pub theta_family: Vec<(u32, u32)>,
    pub boundary_family: Vec<BoundaryTerm>,
}

/// `f_{g−1,0,0}(d) = −d⁴/48 + d²/24 − 1/240`.
pub fn leading_f() -> QPoly {
    Poly::from_terms(Var::D, [(0, rat(-1, 240)), (2, rat(1, 24)), (4, rat(-1, 48))])
}

impl DrRelationShape {
    pub fn standard(genus: u32) -> Result<Self> {
        if genus < 2 {
            return Err(Error::Invalid(format!("genus {genus} < 2")));
        }
        let theta_family = (0..=genus).map(|a| (a, genus - a)).collect();
        let mut boundary_family = Vec::new();
        for k in 0..genus {
            for l in 0..genus - k {
                let m = genus - 1 - k - l;
                let f = if k == genus - 1 {
                    FCoeff::Known(leading_f())
                } else {
                    FCoeff::Opaque { degree_bound: 2 * (l + m + 2) }
                };
                boundary_family.push(BoundaryTerm { k, l, m, f });
            }
        }
        Ok(Self { genus, theta_family, boundary_family })
    }

    pub fn validate(&self) -> Result<()> {
        let g = self.genus;
        if let Some((a, b)) = self.theta_family.iter().find(|(a, b)| a + b != g) {
            return Err(Error::Invalid(format!("theta-family term ({a}, {b}) does not sum to {g}")));
        }
        for t in &self.boundary_family {
            if t.k + t.l + t.m + 1 != g {
                return Err(Error::Invalid(format!("boundary term ({}, {}, {}) does not sum to {}", t.k, t.l, t.m, g - 1)));
            }
            let bound = 2 * (t.l + t.m + 2);
            let deg = match &t.f {
                FCoeff::Known(p) => p.degree().unwrap_or(0),
                FCoeff::Opaque { degree_bound } => *degree_bound,
            };
            if deg > bound {
                return Err(Error::Invalid(format!("f_{{{},{},{}}} has degree {deg} > {bound}", t.k, t.l, t.m)));
            }
        }
        Ok(())
    }
}

/// A boundary term whose top coefficient is an unknown multiple of
/// `θ^k ψ^{ℓ+m}`, landing in the lower-weight part.
#[derive(Clone, Debug, PartialEq)]
pub struct LowerTerm {
    pub k: u32,
    pub l: u32,
    pub m: u32,
    pub weight: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DrExtraction {
    pub genus: u32,
    /// Coefficient of `θ^{g+1}/(g+1)!` in the `N^{2g+2}` part.
    pub lead: Rational,
    /// Total contribution of the `a + b = g` family.
    pub theta_family: Rational,
    /// `[N^4] f_{g−1,0,0}(Nd)` as a polynomial in `d`.
    pub leading_top: QPoly,
    /// Coefficient `c` in `θ^{g+1}/(g+1)! = c·push(θ^{g−1}/(g−1)!) + push(α)`.
    pub boundary_coeff: Rational,
    pub lower: Vec<LowerTerm>,
}

/// `[N^p] f(Nd)`, a polynomial in `d`.
fn top_part(f: &QPoly, p: u32) -> QPoly {
    f.scale_variable(Var::N).coeff(p)
}

pub fn extract_dr_coefficient(shape: &DrRelationShape) -> Result<DrExtraction> {
    shape.validate()?;
    let g = shape.genus;
    let target = 2 * g + 2;
    let mut theta_family = Rational::zero();
    for (a, _) in &shape.theta_family {
        // weight 2a ≤ 2g never reaches the target
        if 2 * a == target {
            theta_family += Rational::one();
        }
    }
    let mut leading_top = None;
    let mut lower = Vec::new();
    for t in &shape.boundary_family {
        let need = target - 2 * t.k;
        match &t.f {
            FCoeff::Known(f) => {
                if t.k != g - 1 {
                    return Err(Error::Invalid("only f_{g-1,0,0} carries a closed form".into()));
                }
                leading_top = Some(top_part(f, need));
            }
            FCoeff::Opaque { degree_bound } => {
                if need <= *degree_bound {
                    lower.push(LowerTerm { k: t.k, l: t.l, m: t.m, weight: 2 * t.k + t.l + t.m });
                }
            }
        }
    }
    let leading_top = leading_top.ok_or_else(|| Error::Invalid("missing f_{g-1,0,0}".into()))?;
    // d = ±1, each graph counted once for the pair (d, −d)
    let summed = leading_top.eval(&int(1)) + leading_top.eval(&int(-1));
    let boundary_coeff = -(summed * rat(1, 2));
    Ok(DrExtraction { genus: g, lead: Rational::one(), theta_family, leading_top, boundary_coeff, lower })
}

/// `(ψ_{h'₁}, ψ_{h'₂})` on `J_{g−1,2}`, via `ψ_{h'₂} = −ψ_{h'₁} = ξ_{h'₁} − ξ_{h'₂}`
/// with `ξ_{h'₁} = 0` and `ξ_{h'₂} = ξ₂`.
pub fn psi_bridge(genus: u32) -> Result<(TautExpr, TautExpr)> {
    let xi = TautExpr::gen(Locus::Boundary, genus, Gen::Xi2)?;
    let xi_h1 = TautExpr::zero(Locus::Boundary, genus);
    let psi_h2 = xi_h1.sub(&xi)?;
    Ok((psi_h2.neg(), psi_h2))
}
