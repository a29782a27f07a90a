//! The LLV algebra `so(H̃)` acting on a Mukai space in its standard
//! representation.
//!
//! With `(α, β) = −1`:
//! `e_η : α ↦ η, μ ↦ (η, μ)β, β ↦ 0` and
//! `f_η : β ↦ (2/q(η))η, μ ↦ (2(η, μ)/q(η))α, α ↦ 0`,
//! so that `h = [e_η, f_η]` acts by `−2` on `α`, `0` on `H²`, `2` on `β`.

mod triple;
mod weights;

pub use triple::{
    bracket_of, build_primed_dictionary, build_triple, class_compatibility, naive_nested_residual, single,
    verify_fourier_conjugacy, verify_triple, BracketSum, FourierOpMap, LinComb, OperatorDictionary, Primed, Triple,
};
pub use weights::{char_poly, weight_decompose};

use num_traits::Zero;
use rand::Rng;

use crate::check::{mat_eq, Check};
use crate::error::{Error, Result};
use crate::exact::linalg::{inverse, mat_mul, transpose, Dense};
use crate::exact::poly::CoeffDisplay;
use crate::exact::{int, rat, GaussianAlgebra, Rational, Ring, SparseMat, GQ};
use crate::mukai::{LatticeClass, MukaiSpace};

pub type Op<S> = SparseMat<S>;

/// Four pairwise orthogonal classes of equal nonzero square `t` inside a
/// Mukai space.
#[derive(Clone, Debug)]
pub struct FourClassModel {
    space: MukaiSpace,
    eta: Vec<LatticeClass>,
    t: Rational,
}

impl FourClassModel {
    pub fn new(space: MukaiSpace, eta: Vec<LatticeClass>) -> Result<Self> {
        if eta.len() != 4 {
            return Err(Error::Invalid("need exactly four classes".into()));
        }
        let t = space.q(&eta[0])?;
        if t.is_zero() || !t.is_real() {
            return Err(Error::Invalid("common square must be a nonzero rational".into()));
        }
        for i in 0..4 {
            check_middle(&space, &eta[i])?;
            for j in 0..4 {
                let p = space.pairing(&eta[i], &eta[j])?;
                let want = if i == j { t.clone() } else { GQ::from_int(0) };
                if p != want {
                    return Err(Error::Invalid(format!("(eta{}, eta{}) = {p}, expected {want}", i + 1, j + 1)));
                }
            }
        }
        Ok(Self { space, eta, t: t.re })
    }

    /// Basis vectors `eta1..eta4` of `MukaiSpace::four_class`.
    pub fn standard(genus: u32, t: &Rational, extra: usize) -> Result<Self> {
        let space = MukaiSpace::four_class(genus, t, extra)?;
        let eta = (1..=4).map(|i| space.class(&format!("eta{i}"))).collect::<Result<Vec<_>>>()?;
        Self::new(space, eta)
    }

    /// The standard quadruple moved by a random rational isometry of the
    /// middle part (Cayley transform of a random skew form).
    pub fn random(genus: u32, t: &Rational, extra: usize, rng: &mut impl Rng) -> Result<Self> {
        let base = Self::standard(genus, t, extra)?;
        let space = base.space.clone();
        let mid = space.middle_indices();
        let k = mid.len();
        let m: Dense<Rational> = mid.iter().map(|&i| mid.iter().map(|&j| space.gram()[i][j].clone()).collect()).collect();
        let m_inv = inverse(&m)?;
        let q = loop {
            let mut s = vec![vec![Rational::zero(); k]; k];
            for i in 0..k {
                for j in i + 1..k {
                    let v = int(rng.gen_range(-3..=3));
                    s[i][j] = v.clone();
                    s[j][i] = -v;
                }
            }
            let a = mat_mul(&m_inv, &s);
            let id = crate::exact::linalg::identity::<Rational>(k);
            let minus: Dense<Rational> =
                id.iter().zip(&a).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect();
            let plus: Dense<Rational> =
                id.iter().zip(&a).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect();
            if let Ok(inv) = inverse(&minus) {
                break mat_mul(&inv, &plus);
            }
        };
        debug_assert_eq!(mat_mul(&mat_mul(&transpose(&q), &m), &q), m);
        let eta = (0..4)
            .map(|col| {
                let mut c = LatticeClass::zero(space.dim());
                for (r, &target) in mid.iter().enumerate() {
                    c.coeffs[target] = GQ::real(q[r][col].clone());
                }
                c
            })
            .collect();
        Self::new(space, eta)
    }

    pub fn space(&self) -> &MukaiSpace {
        &self.space
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    /// `ηᵢ`, 1-based.
    pub fn eta(&self, i: usize) -> &LatticeClass {
        &self.eta[i - 1]
    }

    /// `σᵢⱼ = ½(ηᵢ + 𝔦ηⱼ)`.
    pub fn sigma(&self, i: usize, j: usize) -> LatticeClass {
        self.eta(i).add(&self.eta(j).scale(&GQ::i())).scale(&GQ::real(rat(1, 2)))
    }

    /// `σ̄ᵢⱼ = ½(ηᵢ − 𝔦ηⱼ)`.
    pub fn sigbar(&self, i: usize, j: usize) -> LatticeClass {
        self.sigma(i, j).conj()
    }
}

fn check_middle(space: &MukaiSpace, eta: &LatticeClass) -> Result<()> {
    if eta.dim() != space.dim() {
        return Err(Error::Dimension("class from a different space".into()));
    }
    if !eta.coeffs[space.alpha_index()].is_zero() || !eta.coeffs[space.beta_index()].is_zero() {
        return Err(Error::Invalid("class has an alpha or beta component".into()));
    }
    Ok(())
}

fn lift<S: GaussianAlgebra>(g: &GQ) -> S {
    S::from_gaussian(g)
}

fn lift_q<S: GaussianAlgebra>(q: &Rational) -> S {
    S::from_gaussian(&GQ::real(q.clone()))
}

/// `(η, ·)` on the basis, as a row of ℚ(i) values.
fn pair_row(space: &MukaiSpace, eta: &LatticeClass) -> Vec<GQ> {
    let g = space.gram();
    (0..space.dim())
        .map(|mu| {
            eta.coeffs
                .iter()
                .enumerate()
                .filter(|(i, c)| !c.is_zero() && !g[*i][mu].is_zero())
                .fold(GQ::from_int(0), |acc, (i, c)| acc + c.scale(&g[i][mu]))
        })
        .collect()
}

/// Raising operator `e_η`; linear in `η`.
pub fn op_e<S: GaussianAlgebra>(space: &MukaiSpace, eta: &LatticeClass) -> Result<Op<S>> {
    check_middle(space, eta)?;
    let (a, b) = (space.alpha_index(), space.beta_index());
    let n = space.dim();
    let mut m = SparseMat::zeros(n, n);
    for (i, c) in eta.coeffs.iter().enumerate() {
        m.add_entry(i, a, &lift::<S>(c));
    }
    for (mu, p) in pair_row(space, eta).iter().enumerate() {
        if mu != a && mu != b {
            m.add_entry(b, mu, &lift::<S>(p));
        }
    }
    Ok(m)
}

/// Lowering operator `f_η` completing `(e_η, h, f_η)`; needs `q(η) ≠ 0`.
pub fn op_f<S: GaussianAlgebra>(space: &MukaiSpace, eta: &LatticeClass) -> Result<Op<S>> {
    check_middle(space, eta)?;
    let q = space.q(eta)?;
    if q.is_zero() {
        return Err(Error::Invalid("f of an isotropic class is undefined".into()));
    }
    let two_over_q = GQ::from_int(2).checked_div(&q)?;
    let (a, b) = (space.alpha_index(), space.beta_index());
    let n = space.dim();
    let mut m = SparseMat::zeros(n, n);
    for (i, c) in eta.coeffs.iter().enumerate() {
        m.add_entry(i, b, &lift::<S>(&(c * &two_over_q)));
    }
    for (mu, p) in pair_row(space, eta).iter().enumerate() {
        if mu != a && mu != b {
            m.add_entry(a, mu, &lift::<S>(&(p * &two_over_q)));
        }
    }
    Ok(m)
}

/// The grading `h`: `−2` on `α`, `2` on `β`.
pub fn op_h<S: GaussianAlgebra>(space: &MukaiSpace) -> Op<S> {
    let n = space.dim();
    let mut m = SparseMat::zeros(n, n);
    m.add_entry(space.alpha_index(), space.alpha_index(), &lift_q::<S>(&int(-2)));
    m.add_entry(space.beta_index(), space.beta_index(), &lift_q::<S>(&int(2)));
    m
}

/// Membership in `so(H̃)`: `(Xu, v) + (u, Xv) = 0`, i.e. `GX + (GX)ᵀ = 0`.
pub fn is_skew<S: GaussianAlgebra>(space: &MukaiSpace, x: &Op<S>) -> bool {
    let gram = space.gram();
    let n = space.dim();
    let g: Op<S> = SparseMat::from_entries(
        n,
        n,
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| ((i, j), lift_q::<S>(&gram[i][j]))),
    )
    .expect("square gram");
    let gx = g.mul(x).expect("same dimension");
    gx.add(&gx.transpose()).expect("same dimension").is_zero()
}

/// Cached generators of the model over a scalar ring `S`.
pub struct Generators<S> {
    model: FourClassModel,
    e: Vec<Op<S>>,
    f: Vec<Op<S>>,
    h: Op<S>,
    k: Vec<Vec<Option<Op<S>>>>,
}

impl<S: GaussianAlgebra + CoeffDisplay> Generators<S> {
    pub fn new(model: &FourClassModel) -> Result<Self> {
        let space = model.space();
        let e = (1..=4).map(|i| op_e(space, model.eta(i))).collect::<Result<Vec<_>>>()?;
        let f = (1..=4).map(|i| op_f(space, model.eta(i))).collect::<Result<Vec<_>>>()?;
        let h = op_h(space);
        let mut k = vec![vec![None; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    k[i][j] = Some(e[i].bracket(&f[j])?);
                }
            }
        }
        Ok(Self { model: model.clone(), e, f, h, k })
    }

    pub fn model(&self) -> &FourClassModel {
        &self.model
    }

    pub fn e(&self, i: usize) -> &Op<S> {
        &self.e[i - 1]
    }

    pub fn f(&self, i: usize) -> &Op<S> {
        &self.f[i - 1]
    }

    pub fn h(&self) -> &Op<S> {
        &self.h
    }

    /// `K_ij = [e_{ηi}, f_{ηj}]`.
    pub fn k(&self, i: usize, j: usize) -> Result<&Op<S>> {
        if i == j || !(1..=4).contains(&i) || !(1..=4).contains(&j) {
            return Err(Error::Invalid(format!("K({i},{j}) needs distinct indices in 1..4")));
        }
        Ok(self.k[i - 1][j - 1].as_ref().expect("filled for i != j"))
    }

    fn s(g: GQ) -> S {
        S::from_gaussian(&g)
    }

    fn half() -> S {
        Self::s(GQ::real(rat(1, 2)))
    }

    fn i_unit() -> S {
        Self::s(GQ::i())
    }

    /// `e_{σij} = ½(e_i + 𝔦e_j)`.
    pub fn e_sigma(&self, i: usize, j: usize) -> Op<S> {
        self.e(i).add(&self.e(j).scale(&Self::i_unit())).expect("same shape").scale(&Self::half())
    }

    /// `e_{σ̄ij} = ½(e_i − 𝔦e_j)`.
    pub fn e_sigbar(&self, i: usize, j: usize) -> Op<S> {
        self.e(i).sub(&self.e(j).scale(&Self::i_unit())).expect("same shape").scale(&Self::half())
    }

    /// `f_{σij} = ½(f_i − 𝔦f_j)`.
    pub fn f_sigma(&self, i: usize, j: usize) -> Op<S> {
        self.f(i).sub(&self.f(j).scale(&Self::i_unit())).expect("same shape").scale(&Self::half())
    }

    /// `f_{σ̄ij} = ½(f_i + 𝔦f_j)`.
    pub fn f_sigbar(&self, i: usize, j: usize) -> Op<S> {
        self.f(i).add(&self.f(j).scale(&Self::i_unit())).expect("same shape").scale(&Self::half())
    }

    /// The grading element `D = 𝔦K₁₂`.
    pub fn grading_d(&self) -> Op<S> {
        self.k(1, 2).expect("valid").scale(&Self::i_unit())
    }
}

fn times<S: Ring>(x: &Op<S>, n: i64) -> Op<S> {
    let mut c = S::zero();
    let one = S::one();
    for _ in 0..n.unsigned_abs() {
        c = c.add_ref(&one);
    }
    if n < 0 {
        c = -c;
    }
    x.scale(&c)
}

fn br<S: Ring>(a: &Op<S>, b: &Op<S>) -> Op<S> {
    a.bracket(b).expect("operators share the model dimension")
}

fn plus<S: Ring>(a: &Op<S>, b: &Op<S>) -> Op<S> {
    a.add(b).expect("same shape")
}

fn minus<S: Ring>(a: &Op<S>, b: &Op<S>) -> Op<S> {
    a.sub(b).expect("same shape")
}

/// Folds per-instance checks into one record named after the family.
fn family(name: &str, parts: Vec<Check>) -> Check {
    match parts.into_iter().find(|c| !c.passed) {
        None => Check::pass(name),
        Some(bad) => Check::fail(name, format!("{}: {}", bad.name, bad.witness.unwrap_or_default())),
    }
}

const PAIRS: [(usize, usize); 12] =
    [(1, 2), (1, 3), (1, 4), (2, 1), (2, 3), (2, 4), (3, 1), (3, 2), (3, 4), (4, 1), (4, 2), (4, 3)];

/// All relation families among the `K_ij`, plus membership in `so(H̃)`
/// and closure of the `(e_η, h, f_η)` triples.
pub fn verify_verbitsky<S: GaussianAlgebra + CoeffDisplay>(g: &Generators<S>) -> Vec<Check> {
    let space = g.model().space();
    let mut out = Vec::new();

    let mut skew = Vec::new();
    for i in 1..=4 {
        skew.push(Check::from_bool(format!("e{i}"), is_skew(space, g.e(i)), || "not skew".into()));
        skew.push(Check::from_bool(format!("f{i}"), is_skew(space, g.f(i)), || "not skew".into()));
    }
    skew.push(Check::from_bool("h", is_skew(space, g.h()), || "not skew".into()));
    out.push(family("so.skew", skew));

    let mut sl2 = Vec::new();
    for i in 1..=4 {
        sl2.push(mat_eq(format!("[e{i},f{i}]=h"), &br(g.e(i), g.f(i)), g.h()));
        sl2.push(mat_eq(format!("[h,e{i}]=2e{i}"), &br(g.h(), g.e(i)), &times(g.e(i), 2)));
        sl2.push(mat_eq(format!("[h,f{i}]=-2f{i}"), &br(g.h(), g.f(i)), &times(g.f(i), -2)));
    }
    out.push(family("verbitsky.sl2", sl2));

    let k = |i, j| g.k(i, j).expect("distinct");
    let mut anti = Vec::new();
    let mut commute_h = Vec::new();
    let mut raise = Vec::new();
    let mut lower = Vec::new();
    let mut kill = Vec::new();
    let mut chain = Vec::new();
    for (i, j) in PAIRS {
        anti.push(mat_eq(format!("K{i}{j}+K{j}{i}"), &plus(k(i, j), k(j, i)), &SparseMat::zeros(space.dim(), space.dim())));
        commute_h.push(mat_eq(format!("[K{i}{j},h]"), &br(k(i, j), g.h()), &SparseMat::zeros(space.dim(), space.dim())));
        raise.push(mat_eq(format!("[K{i}{j},e{j}]=2e{i}"), &br(k(i, j), g.e(j)), &times(g.e(i), 2)));
        lower.push(mat_eq(format!("[K{i}{j},f{j}]=2f{i}"), &br(k(i, j), g.f(j)), &times(g.f(i), 2)));
        for m in (1..=4).filter(|&m| m != i && m != j) {
            let zero = SparseMat::zeros(space.dim(), space.dim());
            kill.push(mat_eq(format!("[K{i}{j},e{m}]"), &br(k(i, j), g.e(m)), &zero));
            kill.push(mat_eq(format!("[K{i}{j},f{m}]"), &br(k(i, j), g.f(m)), &zero));
            chain.push(mat_eq(format!("[K{i}{j},K{j}{m}]=2K{i}{m}"), &br(k(i, j), k(j, m)), &times(k(i, m), 2)));
        }
    }
    out.push(family("verbitsky.antisymmetry", anti));
    out.push(family("verbitsky.chain", chain));
    out.push(family("verbitsky.commutes_with_h", commute_h));
    out.push(family("verbitsky.raising", raise));
    out.push(family("verbitsky.lowering", lower));
    out.push(family("verbitsky.orthogonal_kill", kill));
    out
}

/// `σ`-triples, their conjugates, and the vanishing mixed brackets, for
/// every pair `i < j`.
pub fn verify_sigma_triples<S: GaussianAlgebra + CoeffDisplay>(g: &Generators<S>) -> Vec<Check> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut c = Vec::new();
    let mut hdiff = Vec::new();
    let i_unit = Generators::<S>::i_unit();
    let half = Generators::<S>::half();
    for i in 1..=4 {
        for j in i + 1..=4 {
            let (es, fs, eb, fb) = (g.e_sigma(i, j), g.f_sigma(i, j), g.e_sigbar(i, j), g.f_sigbar(i, j));
            let hs = br(&es, &fs);
            let hb = br(&eb, &fb);
            let kij = g.k(i, j).expect("distinct");
            a.push(mat_eq(format!("[h_s{i}{j},e_s]=2e_s"), &br(&hs, &es), &times(&es, 2)));
            a.push(mat_eq(format!("[h_s{i}{j},f_s]=-2f_s"), &br(&hs, &fs), &times(&fs, -2)));
            a.push(mat_eq(
                format!("h_s{i}{j}=(h-iK{i}{j})/2"),
                &hs,
                &minus(g.h(), &kij.scale(&i_unit)).scale(&half),
            ));
            b.push(mat_eq(format!("[h_sb{i}{j},e_sb]=2e_sb"), &br(&hb, &eb), &times(&eb, 2)));
            b.push(mat_eq(format!("[h_sb{i}{j},f_sb]=-2f_sb"), &br(&hb, &fb), &times(&fb, -2)));
            let zero = SparseMat::zeros(es.rows(), es.cols());
            c.push(mat_eq(format!("[e_s{i}{j},f_sb]"), &br(&es, &fb), &zero));
            c.push(mat_eq(format!("[e_sb{i}{j},f_s]"), &br(&eb, &fs), &zero));
            hdiff.push(mat_eq(format!("h_sb{i}{j}-h_s{i}{j}=iK{i}{j}"), &minus(&hb, &hs), &kij.scale(&i_unit)));
        }
    }
    vec![
        family("sigma.sigma_sl2", a),
        family("sigma.sigbar_sl2", b),
        family("sigma.mixed_vanish", c),
        family("sigma.grading_difference", hdiff),
    ]
}

/// The operators `L`, `Λ`, `H` built from `σ₁₂`, `σ₃₄`.
pub struct LambdaTriple<S> {
    pub l: Op<S>,
    pub lambda: Op<S>,
    pub h: Op<S>,
}

pub fn lambda_triple<S: GaussianAlgebra + CoeffDisplay>(g: &Generators<S>) -> LambdaTriple<S> {
    let l = br(&g.e_sigma(1, 2), &g.f_sigma(3, 4));
    let lambda = br(&g.e_sigma(3, 4), &g.f_sigma(1, 2));
    let h = br(&l, &lambda);
    LambdaTriple { l, lambda, h }
}

pub fn verify_lambda_triple<S: GaussianAlgebra + CoeffDisplay>(g: &Generators<S>) -> Vec<Check> {
    let LambdaTriple { l, lambda, h } = lambda_triple(g);
    let k = |i, j| g.k(i, j).expect("distinct").clone();
    let i_unit = Generators::<S>::i_unit();
    let quarter = Generators::<S>::s(GQ::real(rat(1, 4)));
    let neg_half_i = Generators::<S>::s(GQ::new(int(0), rat(-1, 2)));
    let k12_34 = minus(&k(1, 2), &k(3, 4));
    let p = plus(&k(1, 3), &k(2, 4));
    let m = minus(&k(1, 4), &k(2, 3));
    vec![
        mat_eq("lambda.[H,L]=2L", &br(&h, &l), &times(&l, 2)),
        mat_eq("lambda.[H,Lambda]=-2Lambda", &br(&h, &lambda), &times(&lambda, -2)),
        mat_eq("lambda.H=-(i/2)(K12-K34)", &h, &k12_34.scale(&neg_half_i)),
        mat_eq("lambda.L", &l, &minus(&p, &m.scale(&i_unit)).scale(&quarter)),
        mat_eq("lambda.Lambda", &lambda, &minus(&p.neg(), &m.scale(&i_unit)).scale(&quarter)),
        mat_eq("lambda.[K12-K34,K13+K24]", &br(&k12_34, &p), &times(&m, 4)),
        mat_eq("lambda.[K12-K34,K14-K23]", &br(&k12_34, &m), &times(&p, -4)),
    ]
}

/// `e_η = [e_σ, [f_σ, e_η]]` with `σ = σ₂₃`, for `η` orthogonal to `η₂, η₃`.
pub fn verify_sigma_conjugation<S: GaussianAlgebra + CoeffDisplay>(g: &Generators<S>, eta: &LatticeClass) -> Result<Vec<Check>> {
    let model = g.model();
    let space = model.space();
    for j in [2, 3] {
        if !space.pairing(eta, model.eta(j))?.is_zero() {
            return Err(Error::Invalid(format!("eta must be orthogonal to eta{j}")));
        }
    }
    let e_eta: Op<S> = op_e(space, eta)?;
    let inner = br(&g.f_sigma(2, 3), &e_eta);
    let mut out = vec![mat_eq("sigma_conjugation", &br(&g.e_sigma(2, 3), &inner), &e_eta)];
    if eta == model.eta(1) {
        let half = Generators::<S>::half();
        let expected = plus(&g.k(1, 2)?.neg(), &g.k(1, 3)?.scale(&Generators::<S>::i_unit())).scale(&half);
        out.push(mat_eq("sigma_conjugation.inner_bracket", &inner, &expected));
    }
    Ok(out)
}
