//! The primed operators, the operator-level Fourier map, and the triple
//! `(Ẽ₀, H̃₀, F̃₀)` in the `σ`-model with `cst` kept symbolic.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{br, family, op_e, times, Generators, Op};
use crate::check::{mat_eq, Check};
use crate::error::{Error, Result};
use crate::exact::linalg::{solve, Dense};
use crate::exact::{int, CstPoly, Rational, Ring, Var, GQ};
use crate::mukai::{self, check_sign, fourier_matrix, is_isometry, LatticeClass, MukaiSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Primed {
    EAlpha,
    FAlpha,
    EBeta,
    FBeta,
    ETheta,
    FTheta,
    EHyp,
    FHyp,
}

impl Primed {
    pub const ALL: [Primed; 8] = [
        Primed::EAlpha,
        Primed::FAlpha,
        Primed::EBeta,
        Primed::FBeta,
        Primed::ETheta,
        Primed::FTheta,
        Primed::EHyp,
        Primed::FHyp,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Primed::EAlpha => "E'alpha",
            Primed::FAlpha => "F'alpha",
            Primed::EBeta => "E'beta",
            Primed::FBeta => "F'beta",
            Primed::ETheta => "E'Thetabar",
            Primed::FTheta => "F'Thetabar",
            Primed::EHyp => "E'Hyp",
            Primed::FHyp => "F'Hyp",
        }
    }

    pub fn is_raising(self) -> bool {
        matches!(self, Primed::EAlpha | Primed::EBeta | Primed::ETheta | Primed::EHyp)
    }
}

impl fmt::Display for Primed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Formal linear combination of primed operators.
pub type LinComb = BTreeMap<Primed, CstPoly>;

/// Formal linear combination of brackets `[X, Y]` of primed operators.
pub type BracketSum = BTreeMap<(Primed, Primed), CstPoly>;

fn cpoly(n: i64) -> CstPoly {
    CstPoly::constant(Var::Cst, GQ::from_int(n))
}

fn push<K: Ord>(m: &mut BTreeMap<K, CstPoly>, k: K, c: CstPoly) {
    let v = m.remove(&k).unwrap_or_else(CstPoly::zero) + c;
    if !v.is_zero() {
        m.insert(k, v);
    }
}

pub fn single(p: Primed) -> LinComb {
    BTreeMap::from([(p, CstPoly::one())])
}

pub fn bracket_of(x: Primed, y: Primed, c: i64) -> BracketSum {
    let mut m = BracketSum::new();
    push(&mut m, (x, y), cpoly(c));
    m
}

pub struct OperatorDictionary {
    c0: i64,
    ops: BTreeMap<Primed, Op<CstPoly>>,
}

impl OperatorDictionary {
    pub fn c0(&self) -> i64 {
        self.c0
    }

    pub fn get(&self, p: Primed) -> &Op<CstPoly> {
        &self.ops[&p]
    }

    pub fn eval(&self, lc: &LinComb) -> Op<CstPoly> {
        let n = self.ops[&Primed::EAlpha].rows();
        lc.iter().fold(Op::zeros(n, n), |acc, (p, c)| acc.add(&self.get(*p).scale(c)).expect("same shape"))
    }

    pub fn eval_brackets(&self, bs: &BracketSum) -> Op<CstPoly> {
        let n = self.ops[&Primed::EAlpha].rows();
        bs.iter().fold(Op::zeros(n, n), |acc, ((x, y), c)| {
            acc.add(&br(self.get(*x), self.get(*y)).scale(c)).expect("same shape")
        })
    }
}

/// `E'α = e_σ₁₂`, `F'α = f_σ₁₂`, `E'β = −e_σ̄₁₂`, `F'β = −f_σ̄₁₂`,
/// `E'Θ̄ = e_σ₃₄`, `F'Θ̄ = f_σ₃₄`, `E'𝖧 = −c₀e_σ̄₃₄`, `F'𝖧 = −c₀f_σ̄₃₄`.
pub fn build_primed_dictionary(g: &Generators<CstPoly>, c0: i64) -> Result<OperatorDictionary> {
    check_sign(c0)?;
    let neg = cpoly(-1);
    let neg_c0 = cpoly(-c0);
    let ops = BTreeMap::from([
        (Primed::EAlpha, g.e_sigma(1, 2)),
        (Primed::FAlpha, g.f_sigma(1, 2)),
        (Primed::EBeta, g.e_sigbar(1, 2).scale(&neg)),
        (Primed::FBeta, g.f_sigbar(1, 2).scale(&neg)),
        (Primed::ETheta, g.e_sigma(3, 4)),
        (Primed::FTheta, g.f_sigma(3, 4)),
        (Primed::EHyp, g.e_sigbar(3, 4).scale(&neg_c0)),
        (Primed::FHyp, g.f_sigbar(3, 4).scale(&neg_c0)),
    ]);
    Ok(OperatorDictionary { c0, ops })
}

/// The operator-level Fourier map on the span of the primed operators.
#[derive(Clone, Debug)]
pub struct FourierOpMap {
    c0: i64,
    c1: i64,
}

impl FourierOpMap {
    pub fn new(c0: i64, c1: i64) -> Result<Self> {
        check_sign(c0)?;
        check_sign(c1)?;
        Ok(Self { c0, c1 })
    }

    pub fn signs(&self) -> (i64, i64) {
        (self.c0, self.c1)
    }

    pub fn image(&self, p: Primed) -> LinComb {
        let (c0, c1) = (self.c0, self.c1);
        let cst = CstPoly::x(Var::Cst);
        let mut m = LinComb::new();
        match p {
            Primed::EAlpha => push(&mut m, Primed::ETheta, cpoly(c1)),
            Primed::FAlpha => push(&mut m, Primed::FTheta, cpoly(c1)),
            Primed::ETheta => {
                push(&mut m, Primed::EAlpha, cpoly(-c1));
                push(&mut m, Primed::EHyp, cst.scale(&GQ::from_int(c1)));
            }
            Primed::FTheta => {
                push(&mut m, Primed::FAlpha, cpoly(-c1));
                push(&mut m, Primed::FHyp, cst);
            }
            Primed::EBeta => push(&mut m, Primed::EHyp, cpoly(c1 * c0)),
            Primed::FBeta => push(&mut m, Primed::FHyp, cpoly(c1 * c0)),
            Primed::EHyp => push(&mut m, Primed::EBeta, cpoly(-c1 * c0)),
            Primed::FHyp => push(&mut m, Primed::FBeta, cpoly(-c1 * c0)),
        }
        m
    }

    pub fn apply(&self, lc: &LinComb) -> LinComb {
        let mut out = LinComb::new();
        for (p, c) in lc {
            for (q, d) in self.image(*p) {
                push(&mut out, q, c.mul_ref(&d));
            }
        }
        out
    }

    /// Extends bracket-wise: `[X, Y] ↦ [map X, map Y]`.
    pub fn apply_brackets(&self, bs: &BracketSum) -> BracketSum {
        let mut out = BracketSum::new();
        for ((x, y), c) in bs {
            for (xp, a) in self.image(*x) {
                for (yp, b) in self.image(*y) {
                    push(&mut out, (xp, yp), c.mul_ref(&a).mul_ref(&b));
                }
            }
        }
        out
    }
}

/// `Ẽ₀ = c₀[F'α, E'Θ̄]`, `F̃₀ = −map(Ẽ₀)`, `H̃₀ = [Ẽ₀, F̃₀]`, with their
/// formal bracket expansions.
pub struct Triple {
    pub genus: u32,
    pub c0: i64,
    pub c1: i64,
    pub e0: Op<CstPoly>,
    pub f0: Op<CstPoly>,
    pub h0: Op<CstPoly>,
    pub e0_formal: BracketSum,
    pub f0_formal: BracketSum,
}

pub fn build_triple(genus: u32, dict: &OperatorDictionary, map: &FourierOpMap) -> Result<Triple> {
    let (c0, c1) = map.signs();
    if dict.c0() != c0 {
        return Err(Error::Invalid("dictionary and map disagree on c0".into()));
    }
    let e0_formal = bracket_of(Primed::FAlpha, Primed::ETheta, c0);
    let f0_formal: BracketSum =
        map.apply_brackets(&e0_formal).into_iter().map(|(k, v)| (k, -v)).collect();
    let e0 = dict.eval_brackets(&e0_formal);
    let f0 = dict.eval_brackets(&f0_formal);
    let h0 = br(&e0, &f0);
    Ok(Triple { genus, c0, c1, e0, f0, h0, e0_formal, f0_formal })
}

/// Postconditions of the construction: the simplified form of `F̃₀`, the
/// vanishing brackets that kill the `cst` terms, the `sl2` relations, the
/// degree of `F̃₀` under `D = 𝔦K₁₂`, and the identification with `(Λ, L, H)`.
pub fn verify_triple(t: &Triple, g: &Generators<CstPoly>, dict: &OperatorDictionary) -> Vec<Check> {
    let c0 = cpoly(t.c0);
    let p = |x| dict.get(x);
    let lt = super::lambda_triple(g);
    let d = g.grading_d();
    let alpha_h = br(p(Primed::EAlpha), p(Primed::FAlpha));
    let zero = Op::zeros(t.e0.rows(), t.e0.cols());
    vec![
        mat_eq("triple.f0_simplified", &t.f0, &br(p(Primed::FTheta), p(Primed::EAlpha)).scale(&c0)),
        mat_eq("dict.[F'alpha,E'beta]=0", &br(p(Primed::FAlpha), p(Primed::EBeta)), &zero),
        mat_eq("dict.[F'Thetabar,E'Hyp]=0", &br(p(Primed::FTheta), p(Primed::EHyp)), &zero),
        family(
            "dict.alpha_triple",
            vec![
                mat_eq("[h',E'alpha]", &br(&alpha_h, p(Primed::EAlpha)), &times(p(Primed::EAlpha), 2)),
                mat_eq("[h',F'alpha]", &br(&alpha_h, p(Primed::FAlpha)), &times(p(Primed::FAlpha), -2)),
            ],
        ),
        mat_eq("triple.[h0,e0]=2e0", &br(&t.h0, &t.e0), &times(&t.e0, 2)),
        mat_eq("triple.[h0,f0]=-2f0", &br(&t.h0, &t.f0), &times(&t.f0, -2)),
        mat_eq("triple.[D,f0]=-2f0", &br(&d, &t.f0), &times(&t.f0, -2)),
        mat_eq("triple.[D,e0]=2e0", &br(&d, &t.e0), &times(&t.e0, 2)),
        mat_eq("triple.e0=-c0*Lambda", &t.e0, &lt.lambda.scale(&-c0.clone())),
        mat_eq("triple.f0=-c0*L", &t.f0, &lt.l.scale(&-c0)),
        mat_eq("triple.h0=-H", &t.h0, &lt.h.neg()),
    ]
}

/// `map(e₀) = −f₀`, `map(f₀) = −e₀`, `map(h₀) = −h₀`, with `map` applied
/// to the single-bracket forms `e₀ = c₀[F'α, E'Θ̄]`, `f₀ = c₀[F'Θ̄, E'α]`.
pub fn verify_fourier_conjugacy(t: &Triple, dict: &OperatorDictionary, map: &FourierOpMap) -> Vec<Check> {
    let f0_canon = bracket_of(Primed::FTheta, Primed::EAlpha, t.c0);
    let map_e0 = dict.eval_brackets(&map.apply_brackets(&t.e0_formal));
    let map_f0 = dict.eval_brackets(&map.apply_brackets(&f0_canon));
    let map_h0 = br(&map_e0, &map_f0);
    vec![
        mat_eq("conjugacy.map(e0)=-f0", &map_e0, &t.f0.neg()),
        mat_eq("conjugacy.map(f0)=-e0", &map_f0, &t.e0.neg()),
        mat_eq("conjugacy.map(h0)=-h0", &map_h0, &t.h0.neg()),
    ]
}

/// `map(F̃₀) + Ẽ₀` when `map` is pushed through the unsimplified expansion
/// of `F̃₀`, including the bracket `[F'Θ̄, E'𝖧]` that vanishes in the model.
/// Returns the residual; it carries a `cst²·[F'𝖧, E'β]` term.
pub fn naive_nested_residual(t: &Triple, dict: &OperatorDictionary, map: &FourierOpMap) -> Op<CstPoly> {
    let nested = dict.eval_brackets(&map.apply_brackets(&t.f0_formal));
    nested.add(&t.e0).expect("same shape")
}

/// Class-level checks for one genus and sign pair: the Fourier matrix is a
/// gram isometry, `map(E'ₓ) = c₁·E'_{𝔉(x)}` with `cst = g + 1`, and the
/// dictionary matches `op_e` of the class dictionary.
pub fn class_compatibility(
    genus: u32,
    c0: i64,
    c1: i64,
    dict: &OperatorDictionary,
    g: &Generators<CstPoly>,
) -> Result<Vec<Check>> {
    let map = FourierOpMap::new(c0, c1)?;
    let mut out = Vec::new();
    let iso_checks = (0..=2)
        .map(|extra| {
            let space = MukaiSpace::theta_model(genus, extra)?;
            let f = fourier_matrix(&space, c0, c1)?;
            Ok(Check::from_bool(format!("extra={extra}"), is_isometry(&space, &f), || "MᵀGM ≠ G".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    out.push(family("fourier.isometry", iso_checks));

    let space = MukaiSpace::theta_model(genus, 0)?;
    let f = fourier_matrix(&space, c0, c1)?;
    let alpha = space.class(mukai::ALPHA)?;
    let beta = space.class(mukai::BETA)?;
    let hyp = space.class(mukai::HYP)?;
    let theta_bar = mukai::apply(&f, &alpha);
    let basis = [
        (Primed::EAlpha, alpha),
        (Primed::EBeta, beta),
        (Primed::ETheta, theta_bar),
        (Primed::EHyp, hyp),
    ];
    let cols: Dense<Rational> = (0..space.dim())
        .map(|r| basis.iter().map(|(_, c)| c.coeffs[r].re.clone()).collect())
        .collect();
    let cst_value = GQ::from_int(genus as i64 + 1);
    let mut compat = Vec::new();
    for (p, x) in &basis {
        let image = mukai::apply(&f, x);
        let rhs: Vec<Rational> = image.coeffs.iter().map(|c| c.re.clone()).collect();
        let coords = solve(&cols, &rhs)?;
        let expected: BTreeMap<Primed, GQ> = basis
            .iter()
            .zip(&coords)
            .filter(|(_, a)| !a.is_zero())
            .map(|((q, _), a)| (*q, GQ::real(a * int(c1))))
            .collect();
        let got: BTreeMap<Primed, GQ> = map
            .image(*p)
            .into_iter()
            .map(|(q, c)| (q, c.eval(&cst_value)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        compat.push(Check::from_bool(format!("{p}"), got == expected, || format!("map gives {got:?}, class gives {expected:?}")));
    }
    out.push(family("fourier.class_compatibility", compat));

    let model = g.model();
    let signed = |c: &LatticeClass, s: i64| c.scale(&GQ::from_int(s));
    let classes = [
        (Primed::EAlpha, model.sigma(1, 2)),
        (Primed::EBeta, signed(&model.sigbar(1, 2), -1)),
        (Primed::ETheta, model.sigma(3, 4)),
        (Primed::EHyp, signed(&model.sigbar(3, 4), -c0)),
    ];
    let mut dict_checks = Vec::new();
    for (p, c) in classes {
        dict_checks.push(mat_eq(p.symbol(), &op_e::<CstPoly>(model.space(), &c)?, dict.get(p)));
    }
    out.push(family("dict.class_consistency", dict_checks));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::FourClassModel;
    use super::*;
    use crate::check::all_passed;

    fn setup(genus: u32, c0: i64, c1: i64) -> (Generators<CstPoly>, OperatorDictionary, FourierOpMap) {
        let model = FourClassModel::standard(genus, &int(1), 0).unwrap();
        let g = Generators::new(&model).unwrap();
        let d = build_primed_dictionary(&g, c0).unwrap();
        (g, d, FourierOpMap::new(c0, c1).unwrap())
    }

    #[test]
    fn map_images_of_f_side() {
        let m = FourierOpMap::new(1, -1).unwrap();
        assert_eq!(m.image(Primed::FAlpha), BTreeMap::from([(Primed::FTheta, cpoly(-1))]));
        let img = m.image(Primed::FTheta);
        assert_eq!(img[&Primed::FAlpha], cpoly(1));
        assert_eq!(img[&Primed::FHyp], CstPoly::x(Var::Cst));
        assert!(FourierOpMap::new(2, 1).is_err());
    }

    #[test]
    fn triple_and_conjugacy_all_signs() {
        for (c0, c1) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let (g, d, m) = setup(3, c0, c1);
            let t = build_triple(3, &d, &m).unwrap();
            let checks = verify_triple(&t, &g, &d);
            assert!(all_passed(&checks), "{checks:?}");
            let conj = verify_fourier_conjugacy(&t, &d, &m);
            assert!(all_passed(&conj), "{conj:?}");
            let compat = class_compatibility(3, c0, c1, &d, &g).unwrap();
            assert!(all_passed(&compat), "{compat:?}");
        }
    }

    #[test]
    fn f0_formal_has_cst_cross_term() {
        let (_, d, m) = setup(2, 1, 1);
        let t = build_triple(2, &d, &m).unwrap();
        let cross = &t.f0_formal[&(Primed::FTheta, Primed::EHyp)];
        assert_eq!(cross.degree(), Some(1));
    }

    #[test]
    fn naive_nested_map_leaves_cst_squared() {
        let (_, d, m) = setup(2, 1, 1);
        let t = build_triple(2, &d, &m).unwrap();
        let r = naive_nested_residual(&t, &d, &m);
        assert!(!r.is_zero());
        let fh_eb = br(d.get(Primed::FHyp), d.get(Primed::EBeta));
        assert!(!fh_eb.is_zero());
        assert_eq!(r, fh_eb.scale(&CstPoly::x(Var::Cst).pow(2)));
    }

    #[test]
    fn weights_of_h0() {
        let (_, d, m) = setup(4, -1, 1);
        let t = build_triple(4, &d, &m).unwrap();
        let h = t.h0.map(|c| c.coeff(0));
        let w = super::super::weight_decompose(&h).unwrap();
        assert_eq!(w, vec![(-1, 2), (0, 2), (1, 2)]);
    }
}
