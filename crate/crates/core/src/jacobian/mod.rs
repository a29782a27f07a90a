//! Tautological calculus on compactified Jacobians over `M̄_g^{≤1}` and
//! the non-existence computations for a theta divisor `Θ = θ + bδ` with
//! `Θ^{g+1} = 0`.

mod dr;
mod expr;
mod push;

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

pub use dr::{extract_dr_coefficient, leading_f, psi_bridge, BoundaryTerm, DrExtraction, DrRelationShape, FCoeff, LowerTerm};
pub use expr::{b_var, pull_mono, qp, Gen, Locus, Mono, TautExpr, Term};
pub use push::{abelian_push, boundary_pull, expand_delta, factorial, to_r_multiple, total_push, ThetaTop};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::exact::rational::is_perfect_square;
use crate::exact::{discriminant, int, rat, rational_roots, Poly, QPoly, Rational, Var};

pub const DELTA_CUBE: &str = "delta^3 = 0 on M_3";
pub const DELTA_SQUARE_INT: &str = "delta^2 = -(1/6) r_*[M_{0,4} - D] on the genus-2 integral locus";
pub const PSI_TO_R: &str = "i_*(psi1+psi2) = (1/12) r_*[M_{0,4} - D] on the genus-2 integral locus (derived)";
pub const PSI_SQUARE_NONZERO: &str = "(psi1+psi2)^2 != 0 on M_{g-1,2} for g >= 4";
pub const PSI_NONZERO_M22: &str = "psi1+psi2 != 0 on M_{2,2}";
pub const H3_M3: &str = "H^3(M_3) = 0";
pub const H2_SPAN: &str = "H^2(J_g) is spanned by theta and kappa1";
pub const BOUNDARY_IRREDUCIBLE: &str = "the boundary of M_g^{<=1} is irreducible";
pub const SELF_INTERSECTION: &str = "delta * i_*(y) = i_*(-(psi1+psi2) y) on M_g^{<=1}";
pub const XI_RELATION: &str = "2 theta xi2^2 = -theta^2 (psi1+psi2) on J_{2,2}";
pub const ALPHA_GIVEN: &str = "lower-weight boundary classes alpha_(w) as given";

/// `α₍₂₎` in genus 3.
pub fn alpha2_genus3() -> Result<TautExpr> {
    let g = 3;
    let th = TautExpr::gen(Locus::Boundary, g, Gen::Theta)?;
    let xi = TautExpr::gen(Locus::Boundary, g, Gen::Xi2)?;
    let psi = TautExpr::gen(Locus::Boundary, g, Gen::Psi1)?.add(&TautExpr::gen(Locus::Boundary, g, Gen::Psi2)?)?;
    th.mul(&psi)?.scale_q(rat(1, 480)).sub(&xi.pow(2)?.scale_q(rat(1, 8960)))
}

/// `α₍₀₎` in genus 2.
pub fn alpha0_genus2() -> Result<TautExpr> {
    let g = 2;
    let psi = TautExpr::gen(Locus::Boundary, g, Gen::Psi1)?.add(&TautExpr::gen(Locus::Boundary, g, Gen::Psi2)?)?;
    Ok(psi.scale_q(rat(1, 480)))
}

pub fn theta_top(genus: u32) -> Result<ThetaTop> {
    let ex = extract_dr_coefficient(&DrRelationShape::standard(genus)?)?;
    let top = ThetaTop::from_extraction(&ex);
    match genus {
        2 => top.with_alpha(0, alpha0_genus2()?),
        3 => top.with_alpha(2, alpha2_genus3()?),
        _ => Ok(top),
    }
}

/// `θ + bδ` on the total space.
pub fn theta_divisor(genus: u32) -> Result<TautExpr> {
    let th = TautExpr::gen(Locus::Total, genus, Gen::Theta)?;
    th.add(&TautExpr::gen(Locus::Total, genus, Gen::Delta)?.scale(&b_var()))
}

fn pushed(m: Mono) -> Term {
    Term { pushed: true, mono: m }
}

/// Reads `c·ι_*(ψ₁+ψ₂)` off a class on the base.
fn psi_sum_multiple(x: &TautExpr) -> Result<QPoly> {
    let c = x.coeff(&pushed(Mono::gen(Gen::Psi1)));
    let sym = x.coeff(&pushed(Mono::gen(Gen::Psi2)));
    if c != sym || x.terms().count() > 2 {
        return Err(Error::OutsideModel(format!("{x} is not a multiple of i_*(psi1+psi2)")));
    }
    Ok(c)
}

/// Reads `c·δ = c·ι_*(1)` off a class on the base.
fn delta_multiple(x: &TautExpr) -> Result<QPoly> {
    let c = x.coeff(&pushed(Mono::ONE));
    if x.terms().count() > usize::from(!c.is_zero()) {
        return Err(Error::OutsideModel(format!("{x} is not a multiple of delta")));
    }
    Ok(c)
}

/// A quadratic in `b` together with its root certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct Obstruction {
    pub genus: u32,
    pub polynomial: QPoly,
    /// The class the polynomial multiplies.
    pub class: &'static str,
    pub discriminant: Option<Rational>,
    pub roots: BTreeSet<Rational>,
    pub assumptions: Vec<&'static str>,
}

/// `Δ = p/q` is a rational square iff `p·q` is an integer square.
pub fn is_rational_square(r: &Rational) -> bool {
    !r.is_negative() && is_perfect_square(&(r.numer() * r.denom()))
}

fn certify(genus: u32, polynomial: QPoly, class: &'static str, assumptions: Vec<&'static str>) -> Result<Obstruction> {
    let discriminant = if polynomial.degree() == Some(2) { Some(discriminant(&polynomial)?) } else { None };
    let roots = rational_roots(&polynomial)?;
    Ok(Obstruction { genus, polynomial, class, discriminant, roots, assumptions })
}

/// `π_*(θΘ⁴)` in genus 3 as a multiple of `ι_*(ψ₁+ψ₂)`.
pub fn genus3_obstruction() -> Result<Obstruction> {
    let g = 3;
    let big = theta_divisor(g)?;
    let x = TautExpr::gen(Locus::Total, g, Gen::Theta)?.mul(&big.pow(4)?)?;
    let base = expand_delta(&total_push(&x, &theta_top(g)?)?, true)?;
    certify(
        g,
        psi_sum_multiple(&base)?,
        "i_*(psi1+psi2)",
        vec![ALPHA_GIVEN, XI_RELATION, SELF_INTERSECTION, DELTA_CUBE, H3_M3, PSI_NONZERO_M22],
    )
}

/// `π_*(θΘ³)` on the genus-2 integral locus as a multiple of `r_*[M₀,₄∖D]`.
pub fn genus2_obstruction() -> Result<Obstruction> {
    let g = 2;
    let big = theta_divisor(g)?;
    let x = TautExpr::gen(Locus::Total, g, Gen::Theta)?.mul(&big.pow(3)?)?;
    let base = total_push(&x, &theta_top(g)?)?;
    let kept = TautExpr::zero(Locus::Base, g);
    // δ³ terms are dropped; δ² stays symbolic for the r_* rule
    let mut trimmed = kept;
    for (t, c) in base.terms() {
        if t.pushed || t.mono.delta < 3 {
            trimmed.add_term(*t, c.clone());
        }
    }
    certify(g, to_r_multiple(&trimmed)?, "r_*[M_{0,4} - D]", vec![ALPHA_GIVEN, DELTA_CUBE, DELTA_SQUARE_INT, PSI_TO_R])
}

/// `π_*Θ³` on `M̄_2^{≤1}`; its vanishing pins down `b`.
pub fn genus2_le1() -> Result<Obstruction> {
    let g = 2;
    let base = expand_delta(&total_push(&theta_divisor(g)?.pow(3)?, &theta_top(g)?)?, false)?;
    certify(g, delta_multiple(&base)?, "delta", vec![SELF_INTERSECTION])
}

fn poly_check(name: &str, got: &QPoly, want: &QPoly) -> Check {
    Check::from_bool(name, got == want, || format!("got {got}, expected {want}")).with_detail(got.to_string())
}

fn quad(c0: Rational, c1: Rational, c2: Rational) -> QPoly {
    Poly::from_terms(Var::B, [(0, c0), (1, c1), (2, c2)])
}

fn no_root_check(name: &str, o: &Obstruction) -> Check {
    let ok = o.roots.is_empty() && o.discriminant.as_ref().is_some_and(|d| !is_rational_square(d));
    let detail = match &o.discriminant {
        Some(d) => format!("discriminant {d}, numerator*denominator {} is not a square", d.numer() * d.denom()),
        None => "not a quadratic".into(),
    };
    Check::from_bool(name, ok, || format!("rational roots {:?}", o.roots)).with_detail(detail)
}

pub fn genus3_check() -> Result<Vec<Check>> {
    let o = genus3_obstruction()?;
    let want = quad(rat(191, 224), int(-2), int(-36));
    Ok(vec![
        poly_check("jac.g3.obstruction", &o.polynomial, &want).with_assumptions(o.assumptions.clone()),
        no_root_check("jac.g3.no_rational_root", &o).with_assumptions(o.assumptions.clone()),
    ])
}

pub fn genus2_check() -> Result<Vec<Check>> {
    let o = genus2_obstruction()?;
    let want = quad(rat(11, 960), rat(-1, 32), int(-1));
    let le1 = genus2_le1()?;
    let le1_ok = le1.roots == BTreeSet::from([rat(-1, 48)]);
    Ok(vec![
        poly_check("jac.g2.obstruction", &o.polynomial, &want).with_assumptions(o.assumptions.clone()),
        no_root_check("jac.g2.no_rational_root", &o).with_assumptions(o.assumptions.clone()),
        poly_check("jac.g2.le1_push", &le1.polynomial, &Poly::from_terms(Var::B, [(0, rat(1, 8)), (1, int(6))]))
            .with_assumptions(le1.assumptions.clone()),
        Check::from_bool("jac.g2.le1_theta", le1_ok, || format!("roots {:?}", le1.roots))
            .with_detail("Theta = theta - 1/48*delta")
            .with_assumptions(le1.assumptions),
    ])
}

/// The two incompatible values of `b` for `g ≥ 4`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenusGe4 {
    pub genus: u32,
    /// Coefficient of `θ^{g−1}(ψ₁+ψ₂)²` in the weight-`(2g−2)` part.
    pub weight_coeff: QPoly,
    /// Coefficient of `(ψ₁+ψ₂)²` after pushing that part.
    pub pushed_coeff: QPoly,
    /// Coefficient of `δ` in `π_*(Θ^{g+1}/(g+1)!)`.
    pub delta_coeff: QPoly,
    pub from_weight: BTreeSet<Rational>,
    pub from_push: BTreeSet<Rational>,
}

impl GenusGe4 {
    pub fn contradiction(&self) -> bool {
        self.from_weight.is_disjoint(&self.from_push)
    }
}

pub fn genus_ge4(g: u32) -> Result<GenusGe4> {
    if g < 4 {
        return Err(Error::Invalid(format!("genus {g} < 4")));
    }
    let big = theta_divisor(g)?;
    let pulled = boundary_pull(&big)?.pow(g + 1)?;
    let part = pulled.weight_part(2 * g - 2);
    let sq = Mono { theta: g - 1, psi1: 1, psi2: 1, ..Mono::ONE };
    let weight_coeff = part.coeff(&Term { pushed: false, mono: sq }).scale(&rat(1, 2));
    // must be exactly weight_coeff·θ^{g−1}(ψ₁+ψ₂)²
    let psi = TautExpr::gen(Locus::Boundary, g, Gen::Psi1)?.add(&TautExpr::gen(Locus::Boundary, g, Gen::Psi2)?)?;
    let shape = TautExpr::gen(Locus::Boundary, g, Gen::Theta)?.pow(g - 1)?.mul(&psi.pow(2)?)?;
    if part != shape.scale(&weight_coeff) {
        return Err(Error::OutsideModel(format!("weight part {part} is not a multiple of theta^(g-1)(psi1+psi2)^2")));
    }
    let pushed_part = abelian_push(&part)?;
    let pushed_coeff = pushed_part.coeff(&Term { pushed: false, mono: Mono::gen(Gen::Psi1).mul(&Mono::gen(Gen::Psi1))? });
    let norm = theta_divisor(g)?.pow(g + 1)?.scale_q(factorial(g + 1).recip());
    let base = expand_delta(&total_push(&norm, &theta_top(g)?)?, false)?;
    let delta_coeff = delta_multiple(&base)?;
    Ok(GenusGe4 {
        genus: g,
        from_weight: rational_roots(&pushed_coeff)?,
        from_push: rational_roots(&delta_coeff)?,
        weight_coeff,
        pushed_coeff,
        delta_coeff,
    })
}

pub fn genus_ge4_check(g: u32) -> Result<Vec<Check>> {
    let r = genus_ge4(g)?;
    let half_minus_b = Poly::from_terms(Var::B, [(0, rat(1, 2)), (1, int(-1))]);
    let binom = rat(((g + 1) * g / 2) as i64, 1);
    let want_weight = half_minus_b.pow(2).scale(&binom);
    let want_delta = Poly::from_terms(Var::B, [(0, rat(1, 48)), (1, int(1))]);
    let name = |s: &str| format!("jac.g{g}.{s}");
    let fmt_set = |s: &BTreeSet<Rational>| s.iter().map(|r| format!("b = {r}")).collect::<Vec<_>>().join(", ");
    Ok(vec![
        poly_check(&name("weight_part"), &r.weight_coeff, &want_weight),
        poly_check(&name("weight_push"), &r.pushed_coeff, &want_weight.scale(&factorial(g - 1)))
            .with_assumptions([PSI_SQUARE_NONZERO]),
        poly_check(&name("delta_push"), &r.delta_coeff, &want_delta).with_assumptions([SELF_INTERSECTION]),
        Check::from_bool(&name("contradiction"), r.contradiction(), || "the two constraints are compatible".into())
            .with_detail(format!("{} vs {}", fmt_set(&r.from_weight), fmt_set(&r.from_push)))
            .with_assumptions([PSI_SQUARE_NONZERO, SELF_INTERSECTION]),
    ])
}

/// Replays the restriction of `(θ + aκ₁)^{g+1}` to `J_g`: returns the
/// weight-`2g` part and its pushforward.
pub fn kappa_term(g: u32, a: &Rational) -> Result<(TautExpr, TautExpr)> {
    let th = TautExpr::gen(Locus::Total, g, Gen::Theta)?;
    let k = TautExpr::gen(Locus::Total, g, Gen::Kappa1)?;
    let big = th.add(&k.scale_q(a.clone()))?;
    let part = big.pow(g + 1)?.weight_part(2 * g);
    let push = total_push(&part, &ThetaTop::new(g, Rational::zero()))?;
    Ok((part, push))
}

pub fn kappa_term_check(g: u32, samples: &[Rational]) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for a in samples {
        let (part, push) = kappa_term(g, a)?;
        let th = TautExpr::gen(Locus::Total, g, Gen::Theta)?;
        let k = TautExpr::gen(Locus::Total, g, Gen::Kappa1)?;
        let want_part = th.pow(g)?.mul(&k)?.scale_q(a * int((g + 1) as i64));
        let want_push = TautExpr::gen(Locus::Base, g, Gen::Kappa1)?.scale_q(a * factorial(g + 1));
        out.push(
            Check::from_bool(format!("jac.g{g}.kappa_term[a={a}]"), part == want_part && push == want_push, || {
                format!("weight part {part}, push {push}")
            })
            .with_detail(push.to_string())
            .with_assumptions([H2_SPAN, BOUNDARY_IRREDUCIBLE]),
        );
    }
    Ok(out)
}

/// `π_*(θ^{g+1}/(g+1)!)` on `M̄_g^{≤1}` as a multiple of `δ`.
pub fn theta_top_push(g: u32) -> Result<Rational> {
    let x = TautExpr::gen(Locus::Total, g, Gen::Theta)?.pow(g + 1)?.scale_q(factorial(g + 1).recip());
    let top = ThetaTop::from_extraction(&extract_dr_coefficient(&DrRelationShape::standard(g)?)?);
    let c = delta_multiple(&expand_delta(&total_push(&x, &top)?, false)?)?;
    if !c.is_constant() {
        return Err(Error::OutsideModel("unexpected b-dependence".into()));
    }
    Ok(c.coeff(0))
}

pub fn theta_top_push_check(genera: impl IntoIterator<Item = u32>) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    // the N^{2g+2} coefficient of f(Nd)·N^{2g−2} is [N⁴]f(Nd) whatever g is
    let generic = leading_f().scale_variable(Var::N).coeff(4);
    let fold = -(generic.eval(&int(1)) + generic.eval(&int(-1))) * rat(1, 2);
    out.push(
        Check::from_bool("jac.theta_top_push.symbolic", fold == rat(1, 48), || format!("coefficient {fold}"))
            .with_detail(format!("[N^4] f(Nd) = {generic}")),
    );
    for g in genera {
        let ex = extract_dr_coefficient(&DrRelationShape::standard(g)?)?;
        let c = theta_top_push(g)?;
        let ok = c == rat(1, 48) && ex.leading_top == generic && ex.theta_family.is_zero();
        out.push(Check::from_bool(format!("jac.theta_top_push.g{g}"), ok, || format!("pi_* = {c}*delta")).with_detail(format!("{c}*delta")));
    }
    Ok(out)
}

/// All checks for one genus.
pub fn verify_theta_obstruction(g: u32) -> Result<Vec<Check>> {
    let mut out = match g {
        0 | 1 => return Err(Error::Invalid(format!("genus {g} < 2"))),
        2 => genus2_check()?,
        3 => genus3_check()?,
        _ => genus_ge4_check(g)?,
    };
    out.extend(kappa_term_check(g, &[Rational::zero(), Rational::one(), rat(-3, 7)])?);
    out.extend(theta_top_push_check([g])?);
    Ok(out)
}
