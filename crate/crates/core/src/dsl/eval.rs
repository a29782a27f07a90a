//! Evaluation of parsed expressions in one of three contexts.

use std::fmt;

use num_traits::{One, Zero};

use super::ast::Ast;
use crate::error::{Error, Result};
use crate::exact::poly::CoeffDisplay;
use crate::exact::{fmt_rational, CstPoly, Rational, Var, GQ};
use crate::jacobian::{abelian_push, b_var, qp, theta_top, total_push, Gen, Locus, TautExpr};
use crate::k3::{diag_push, Bv, BvClass, Corr, RelBasis, RelCycle};
use crate::llv::{FourClassModel, Generators, Op};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Context {
    Llv,
    K3,
    Taut,
}

impl std::str::FromStr for Context {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "llv" => Ok(Context::Llv),
            "k3" => Ok(Context::K3),
            "taut" => Ok(Context::Taut),
            _ => Err(Error::Invalid(format!("unknown context '{s}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EvalParams {
    pub genus: u32,
    /// Dimension of the Mukai model in the llv context.
    pub hdim: usize,
    pub t: Rational,
    /// Forces the taut locus; otherwise boundary iff ψ or ξ₂ occurs.
    pub locus: Option<Locus>,
    /// Push taut results down to the base.
    pub push: bool,
}

impl Default for EvalParams {
    fn default() -> Self {
        Self { genus: 3, hdim: 6, t: Rational::one(), locus: None, push: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    LlvScalar(CstPoly),
    LlvOp(Op<CstPoly>),
    K3Scalar(Rational),
    Bv(BvClass),
    Corr(Corr),
    Taut(TautExpr),
}

impl Value {
    pub fn is_zero(&self) -> bool {
        match self {
            Value::LlvScalar(c) => c.is_zero(),
            Value::LlvOp(m) => m.is_zero(),
            Value::K3Scalar(q) => q.is_zero(),
            Value::Bv(x) => x.is_zero(),
            Value::Corr(x) => x.is_zero(),
            Value::Taut(x) => x.is_zero(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::LlvScalar(c) => write!(f, "{c}"),
            Value::LlvOp(m) if m.is_zero() => write!(f, "0"),
            Value::LlvOp(m) => {
                let parts: Vec<String> =
                    m.entries().map(|((r, c), v)| format!("[{r},{c}] {}", v.coeff_text())).collect();
                write!(f, "{}x{} operator: {}", m.rows(), m.cols(), parts.join(", "))
            }
            Value::K3Scalar(q) => write!(f, "{}", fmt_rational(q)),
            Value::Bv(x) => write!(f, "{x}"),
            Value::Corr(x) => write!(f, "{x}"),
            Value::Taut(x) => write!(f, "{x}"),
        }
    }
}

pub fn eval(ast: &Ast, ctx: Context, params: &EvalParams) -> Result<Value> {
    match ctx {
        Context::Llv => {
            let model = FourClassModel::standard(params.genus, &params.t, extra_for(params.hdim)?)?;
            let g = Generators::<CstPoly>::new(&model)?;
            Llv { g: &g }.eval(ast)
        }
        Context::K3 => K3.eval(ast),
        Context::Taut => {
            let boundary = ast.symbols().iter().any(|s| matches!(*s, "psi1" | "psi2" | "xi2"));
            let locus = params.locus.unwrap_or(if boundary { Locus::Boundary } else { Locus::Total });
            let x = Taut { locus, genus: params.genus }.eval(ast)?;
            let x = if !params.push {
                x
            } else {
                match locus {
                    Locus::Total => total_push(&x, &theta_top(params.genus)?)?,
                    Locus::Boundary => abelian_push(&x)?,
                    _ => return Err(Error::Unsupported(format!("no pushforward from {locus:?}"))),
                }
            };
            Ok(Value::Taut(x))
        }
    }
}

fn extra_for(hdim: usize) -> Result<usize> {
    if hdim < 6 {
        return Err(Error::Invalid(format!("model dimension {hdim} < 6")));
    }
    Ok(hdim - 6)
}

fn index(a: &Ast) -> Result<usize> {
    match a {
        Ast::Lit(q) if q.is_integer() => {
            usize::try_from(q.numer()).map_err(|_| Error::Invalid(format!("index {a} out of range")))
        }
        _ => Err(Error::Invalid(format!("expected an integer index, got {a}"))),
    }
}

fn arity(name: &str, args: &[Ast], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(Error::Invalid(format!("{name} takes {n} argument(s), got {}", args.len())));
    }
    Ok(())
}

fn unknown(name: &str, ctx: &str) -> Error {
    Error::Invalid(format!("unknown symbol '{name}' in {ctx} context"))
}

struct Llv<'a> {
    g: &'a Generators<CstPoly>,
}

enum L {
    S(CstPoly),
    O(Op<CstPoly>),
}

impl Llv<'_> {
    fn eval(&self, a: &Ast) -> Result<Value> {
        Ok(match self.go(a)? {
            L::S(c) => Value::LlvScalar(c),
            L::O(m) => Value::LlvOp(m),
        })
    }

    fn dim(&self) -> usize {
        self.g.h().rows()
    }

    fn as_op(&self, x: L) -> Op<CstPoly> {
        match x {
            L::S(c) => Op::identity(self.dim()).scale(&c),
            L::O(m) => m,
        }
    }

    fn index1(&self, a: &Ast) -> Result<usize> {
        let i = index(a)?;
        if !(1..=4).contains(&i) {
            return Err(Error::Invalid(format!("index {i} outside 1..4")));
        }
        Ok(i)
    }

    fn pair(&self, args: &[Ast]) -> Result<(usize, usize)> {
        let (i, j) = (self.index1(&args[0])?, self.index1(&args[1])?);
        if i == j {
            return Err(Error::Invalid("pair indices must differ".into()));
        }
        Ok((i, j))
    }

    fn raising(&self, lower: bool, arg: &Ast) -> Result<Op<CstPoly>> {
        if let Ast::Sym { name, args } = arg {
            arity(name, args, 2)?;
            let (i, j) = self.pair(args)?;
            return match (name.as_str(), lower) {
                ("sigma", false) => Ok(self.g.e_sigma(i, j)),
                ("sigbar", false) => Ok(self.g.e_sigbar(i, j)),
                ("sigma", true) => Ok(self.g.f_sigma(i, j)),
                ("sigbar", true) => Ok(self.g.f_sigbar(i, j)),
                _ => Err(unknown(name, "llv")),
            };
        }
        let i = self.index1(arg)?;
        Ok(if lower { self.g.f(i).clone() } else { self.g.e(i).clone() })
    }

    fn go(&self, a: &Ast) -> Result<L> {
        let gq = |c: GQ| CstPoly::constant(Var::Cst, c);
        Ok(match a {
            Ast::Lit(q) => L::S(gq(GQ::real(q.clone()))),
            Ast::Imag => L::S(gq(GQ::i())),
            Ast::Sym { name, args } => match name.as_str() {
                "cst" => {
                    arity(name, args, 0)?;
                    L::S(CstPoly::x(Var::Cst))
                }
                "h" => {
                    arity(name, args, 0)?;
                    L::O(self.g.h().clone())
                }
                "D" => {
                    arity(name, args, 0)?;
                    L::O(self.g.grading_d())
                }
                "e" | "f" => {
                    arity(name, args, 1)?;
                    L::O(self.raising(name == "f", &args[0])?)
                }
                "K" => {
                    arity(name, args, 2)?;
                    let (i, j) = self.pair(args)?;
                    L::O(self.g.k(i, j)?.clone())
                }
                _ => return Err(unknown(name, "llv")),
            },
            Ast::Neg(x) => match self.go(x)? {
                L::S(c) => L::S(-c),
                L::O(m) => L::O(m.neg()),
            },
            Ast::Add(x, y) | Ast::Sub(x, y) => {
                let (x, y) = (self.go(x)?, self.go(y)?);
                let sub = matches!(a, Ast::Sub(..));
                match (x, y) {
                    (L::S(p), L::S(q)) => L::S(if sub { p - q } else { p + q }),
                    (x, y) => {
                        let (x, y) = (self.as_op(x), self.as_op(y));
                        L::O(if sub { x.sub(&y)? } else { x.add(&y)? })
                    }
                }
            }
            Ast::Mul(x, y) | Ast::Compose(x, y) => self.mul(self.go(x)?, self.go(y)?)?,
            Ast::Pow(x, e) => {
                let base = self.go(x)?;
                match base {
                    L::S(c) => L::S(c.pow(*e)),
                    L::O(m) => L::O(m.pow(*e)?),
                }
            }
            Ast::Bracket(x, y) => match (self.go(x)?, self.go(y)?) {
                (L::O(p), L::O(q)) => L::O(p.bracket(&q)?),
                (L::S(_), L::S(_)) => L::S(CstPoly::zero()),
                _ => L::O(Op::zeros(self.dim(), self.dim())),
            },
        })
    }

    fn mul(&self, x: L, y: L) -> Result<L> {
        Ok(match (x, y) {
            (L::S(p), L::S(q)) => L::S(p * q),
            (L::S(c), L::O(m)) | (L::O(m), L::S(c)) => L::O(m.scale(&c)),
            (L::O(p), L::O(q)) => L::O(p.mul(&q)?),
        })
    }
}

struct K3;

enum Kv {
    S(Rational),
    B(BvClass),
    C(Corr),
}

fn cycle(x: &Corr) -> Result<RelCycle> {
    x.as_cycle()
        .ok_or_else(|| Error::Unsupported("intersection product with a Fourier correspondence; use 'o'".into()))
}

impl K3 {
    fn eval(&self, a: &Ast) -> Result<Value> {
        Ok(match self.go(a)? {
            Kv::S(q) => Value::K3Scalar(q),
            Kv::B(x) => Value::Bv(x),
            Kv::C(x) => Value::Corr(x),
        })
    }

    fn bv_arg(&self, name: &str, args: &[Ast]) -> Result<BvClass> {
        arity(name, args, 1)?;
        match self.go(&args[0])? {
            Kv::B(x) => Ok(x),
            Kv::S(q) => Ok(BvClass::term(Bv::One, q)),
            Kv::C(_) => Err(Error::Invalid(format!("{name} expects a class on the surface"))),
        }
    }

    fn go(&self, a: &Ast) -> Result<Kv> {
        Ok(match a {
            Ast::Lit(q) => Kv::S(q.clone()),
            Ast::Imag => return Err(Error::Unsupported("the imaginary unit has no meaning in the k3 context".into())),
            Ast::Sym { name, args } => {
                let plain = |v: Kv| -> Result<Kv> {
                    arity(name, args, 0)?;
                    Ok(v)
                };
                match name.as_str() {
                    "S" => plain(Kv::B(BvClass::basis(Bv::One)))?,
                    "s" => plain(Kv::B(BvClass::basis(Bv::S)))?,
                    "f" => plain(Kv::B(BvClass::basis(Bv::F)))?,
                    "c" => plain(Kv::B(BvClass::basis(Bv::C)))?,
                    "Theta" => plain(Kv::B(BvClass::theta()))?,
                    "F" => plain(Kv::C(Corr::fourier()))?,
                    "Finv" => plain(Kv::C(Corr::fourier_inv()))?,
                    "Delta" if args.is_empty() => Kv::C(Corr::diag()),
                    "Delta" => Kv::C(diag_push(&self.bv_arg(name, args)?)?.into()),
                    "p1" => Kv::C(RelCycle::p1(&self.bv_arg(name, args)?).into()),
                    "p2" => Kv::C(RelCycle::p2(&self.bv_arg(name, args)?).into()),
                    _ => return Err(unknown(name, "k3")),
                }
            }
            Ast::Neg(x) => self.scale(&-Rational::one(), self.go(x)?),
            Ast::Add(x, y) => self.add(self.go(x)?, self.go(y)?)?,
            Ast::Sub(x, y) => {
                let y = self.scale(&-Rational::one(), self.go(y)?);
                self.add(self.go(x)?, y)?
            }
            Ast::Mul(x, y) => self.mul(self.go(x)?, self.go(y)?)?,
            Ast::Compose(x, y) => match (self.go(x)?, self.go(y)?) {
                (Kv::C(p), Kv::C(q)) => Kv::C(p.compose(&q)?),
                (Kv::S(q), v) | (v, Kv::S(q)) => self.scale(&q, v),
                _ => return Err(Error::Invalid("composition needs correspondences".into())),
            },
            Ast::Pow(x, e) => {
                let base = self.go(x)?;
                let one = match &base {
                    Kv::S(_) => Kv::S(Rational::one()),
                    Kv::B(_) => Kv::B(BvClass::basis(Bv::One)),
                    Kv::C(_) => Kv::C(RelCycle::basis(RelBasis::One).into()),
                };
                let mut acc = one;
                for _ in 0..*e {
                    acc = self.mul(acc, self.go(x)?)?;
                }
                acc
            }
            Ast::Bracket(x, y) => match (self.go(x)?, self.go(y)?) {
                (Kv::C(p), Kv::C(q)) => Kv::C(p.bracket(&q)?),
                (Kv::S(_), _) | (_, Kv::S(_)) => Kv::S(Rational::zero()),
                _ => return Err(Error::Invalid("bracket needs correspondences".into())),
            },
        })
    }

    fn scale(&self, q: &Rational, v: Kv) -> Kv {
        match v {
            Kv::S(p) => Kv::S(p * q),
            Kv::B(x) => Kv::B(x.scale(q)),
            Kv::C(x) => Kv::C(x.scale(q)),
        }
    }

    fn add(&self, x: Kv, y: Kv) -> Result<Kv> {
        Ok(match (x, y) {
            (Kv::S(p), Kv::S(q)) => Kv::S(p + q),
            (Kv::B(a), Kv::B(b)) => Kv::B(a.add(&b)),
            (Kv::C(a), Kv::C(b)) => Kv::C(a.add(&b)),
            (Kv::S(q), Kv::B(b)) | (Kv::B(b), Kv::S(q)) => Kv::B(b.add(&BvClass::term(Bv::One, q))),
            (Kv::S(q), Kv::C(b)) | (Kv::C(b), Kv::S(q)) => Kv::C(b.add(&Corr::diag().scale(&q))),
            _ => return Err(Error::Invalid("cannot add a surface class to a correspondence".into())),
        })
    }

    fn mul(&self, x: Kv, y: Kv) -> Result<Kv> {
        Ok(match (x, y) {
            (Kv::S(q), v) | (v, Kv::S(q)) => self.scale(&q, v),
            (Kv::B(a), Kv::B(b)) => Kv::B(a.mul(&b)),
            (Kv::C(a), Kv::C(b)) => Kv::C(cycle(&a)?.mul(&cycle(&b)?)?.into()),
            _ => return Err(Error::Invalid("cannot multiply a surface class with a correspondence".into())),
        })
    }
}

struct Taut {
    locus: Locus,
    genus: u32,
}

impl Taut {
    fn eval(&self, a: &Ast) -> Result<TautExpr> {
        let (l, g) = (self.locus, self.genus);
        match a {
            Ast::Lit(q) => Ok(TautExpr::scalar(l, g, qp(q.clone()))),
            Ast::Imag => Err(Error::Unsupported("the imaginary unit has no meaning in the taut context".into())),
            Ast::Sym { name, args } => {
                arity(name, args, 0)?;
                let gen = match name.as_str() {
                    "b" => return Ok(TautExpr::scalar(l, g, b_var())),
                    "theta" => Gen::Theta,
                    "psi1" => Gen::Psi1,
                    "psi2" => Gen::Psi2,
                    "xi2" => Gen::Xi2,
                    "kappa1" => Gen::Kappa1,
                    "delta" => Gen::Delta,
                    _ => return Err(unknown(name, "taut")),
                };
                TautExpr::gen(l, g, gen)
            }
            Ast::Neg(x) => Ok(self.eval(x)?.neg()),
            Ast::Add(x, y) => self.eval(x)?.add(&self.eval(y)?),
            Ast::Sub(x, y) => self.eval(x)?.sub(&self.eval(y)?),
            Ast::Mul(x, y) => self.eval(x)?.mul(&self.eval(y)?),
            Ast::Compose(..) => Err(Error::Unsupported("composition has no meaning in the taut context".into())),
            Ast::Pow(x, e) => self.eval(x)?.pow(*e),
            Ast::Bracket(x, y) => {
                self.eval(x)?;
                self.eval(y)?;
                Ok(TautExpr::zero(l, g))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::ast::parse;
    use super::*;
    use crate::exact::rat;

    fn run(src: &str, ctx: Context) -> Value {
        eval(&parse(src).unwrap(), ctx, &EvalParams::default()).unwrap()
    }

    #[test]
    fn verbitsky_chain_in_llv() {
        assert!(run("[K(1,2),K(2,3)] - 2*K(1,3)", Context::Llv).is_zero());
        assert!(!run("K(1,2)", Context::Llv).is_zero());
        assert!(run("[h, e(1)] - 2*e(1)", Context::Llv).is_zero());
        assert!(run("[e(sigma(1,2)), f(sigbar(1,2))]", Context::Llv).is_zero());
        assert!(run("D - i*K(1,2)", Context::Llv).is_zero());
        assert!(run("cst*h - h o cst", Context::Llv).is_zero());
    }

    #[test]
    fn diagonal_of_theta() {
        assert!(run("Delta(Theta) - p1(Theta)*p2(Theta)", Context::K3).is_zero());
        assert!(run("F o Finv - Delta", Context::K3).is_zero());
        assert!(eval(&parse("F*F").unwrap(), Context::K3, &EvalParams::default()).is_err());
        assert!(eval(&parse("Delta(c)").unwrap(), Context::K3, &EvalParams::default()).is_err());
    }

    #[test]
    fn unit_relation_in_taut() {
        let params = EvalParams { genus: 3, locus: Some(Locus::Boundary), push: true, ..EvalParams::default() };
        let v = eval(&parse("1/2*theta^2").unwrap(), Context::Taut, &params).unwrap();
        assert_eq!(v, Value::Taut(TautExpr::one(Locus::BaseBoundary, 3)));
    }

    #[test]
    fn taut_push_from_total() {
        let params = EvalParams { genus: 4, push: true, ..EvalParams::default() };
        let v = eval(&parse("theta^5").unwrap(), Context::Taut, &params).unwrap();
        let want = TautExpr::one(Locus::BaseBoundary, 4).push_boundary().unwrap().scale_q(rat(120, 48));
        assert_eq!(v, Value::Taut(want));
        assert!(eval(&parse("xi2*theta o theta").unwrap(), Context::Taut, &params).is_err());
    }

    #[test]
    fn unknown_symbols() {
        let p = EvalParams::default();
        for (src, ctx) in [("q", Context::Llv), ("theta", Context::K3), ("e(1)", Context::Taut), ("e(5)", Context::Llv)] {
            assert!(eval(&parse(src).unwrap(), ctx, &p).is_err(), "{src}");
        }
    }
}
