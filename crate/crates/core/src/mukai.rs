//! The extended Mukai space `ℚα ⊕ H² ⊕ ℚβ`, its pairing, the isotropic
//! correction `λ` of a theta class, and the cohomological Fourier matrix.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::linalg::{mat_mul, transpose, Dense};
use crate::exact::{fmt_rational, int, rat, Rational, Ring, GQ};

pub const ALPHA: &str = "alpha";
pub const BETA: &str = "beta";
pub const THETA: &str = "Theta";
pub const HYP: &str = "Hyp";

/// A based quadratic space with distinguished isotropic `α`, `β`.
#[derive(Clone, Debug, PartialEq)]
pub struct MukaiSpace {
    labels: Vec<String>,
    gram: Dense<Rational>,
    genus: u32,
}

/// A vector in a `MukaiSpace`, coordinates over ℚ(i).
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeClass {
    pub coeffs: Vec<GQ>,
}

impl LatticeClass {
    pub fn zero(dim: usize) -> Self {
        Self { coeffs: vec![GQ::from_int(0); dim] }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &GQ) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }

    pub fn conj(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(GQ::conj).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

#[derive(Serialize)]
struct SpaceDoc<'a> {
    genus: u32,
    basis: &'a [String],
    gram: Vec<Vec<String>>,
}

impl MukaiSpace {
    /// Validates labels and gram against the Mukai-space invariants.
    pub fn new(labels: Vec<String>, gram: Dense<Rational>, genus: u32) -> Result<Self> {
        let n = labels.len();
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("gram must be {n}x{n}")));
        }
        if genus == 0 {
            return Err(Error::Invalid("genus must be positive".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Invalid(format!("gram not symmetric at ({i}, {j})")));
                }
            }
        }
        let space = Self { labels, gram, genus };
        let a = space.index(ALPHA).ok_or_else(|| Error::Invalid("missing alpha".into()))?;
        let b = space.index(BETA).ok_or_else(|| Error::Invalid("missing beta".into()))?;
        let g = &space.gram;
        if !g[a][a].is_zero() || !g[b][b].is_zero() || g[a][b] != int(-1) {
            return Err(Error::Invalid("need q(alpha) = q(beta) = 0 and (alpha, beta) = -1".into()));
        }
        for m in (0..n).filter(|&m| m != a && m != b) {
            if !g[a][m].is_zero() || !g[b][m].is_zero() {
                return Err(Error::Invalid(format!("{} not orthogonal to alpha, beta", space.labels[m])));
            }
        }
        match (space.index(THETA), space.index(HYP)) {
            (Some(t), Some(h)) => {
                if !g[t][t].is_zero() || !g[h][h].is_zero() || !g[t][h].is_one() {
                    return Err(Error::Invalid("need q(Theta) = q(Hyp) = 0 and (Theta, Hyp) = 1".into()));
                }
            }
            (None, None) => {}
            _ => return Err(Error::Invalid("Theta and Hyp must appear together".into())),
        }
        Ok(space)
    }

    /// Lays out `alpha, middle…, beta` with the given middle gram.
    pub fn from_middle(genus: u32, middle: &[(&str, Vec<Rational>)]) -> Result<Self> {
        let k = middle.len();
        let n = k + 2;
        let mut labels = vec![ALPHA.to_string()];
        labels.extend(middle.iter().map(|(l, _)| l.to_string()));
        labels.push(BETA.to_string());
        let mut gram = vec![vec![Rational::zero(); n]; n];
        gram[0][n - 1] = int(-1);
        gram[n - 1][0] = int(-1);
        for (i, (_, row)) in middle.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Dimension("middle gram row length".into()));
            }
            for (j, v) in row.iter().enumerate() {
                gram[i + 1][j + 1] = v.clone();
            }
        }
        Self::new(labels, gram, genus)
    }

    /// `η₁..η₄` with `q(ηᵢ) = t`, pairwise orthogonal, plus `extra` more
    /// orthogonal directions: a hyperbolic `Theta, Hyp` pair when `extra ≥ 2`
    /// and anisotropic `x1, x2, …` otherwise.
    pub fn four_class(genus: u32, t: &Rational, extra: usize) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::Invalid("t must be nonzero".into()));
        }
        let mut names: Vec<String> = (1..=4).map(|i| format!("eta{i}")).collect();
        let extras: Vec<String> = if extra >= 2 {
            [THETA.to_string(), HYP.to_string()]
                .into_iter()
                .chain((1..=extra - 2).map(|i| format!("x{i}")))
                .collect()
        } else {
            (1..=extra).map(|i| format!("x{i}")).collect()
        };
        names.extend(extras);
        let k = names.len();
        let squares = [int(-2), int(3), rat(5, 2), int(7)];
        let mut rows = vec![vec![Rational::zero(); k]; k];
        let mut next_square = 0;
        for (i, name) in names.iter().enumerate() {
            if i < 4 {
                rows[i][i] = t.clone();
            } else if name == THETA {
                rows[i][i + 1] = int(1);
                rows[i + 1][i] = int(1);
            } else if name != HYP {
                rows[i][i] = squares[next_square % squares.len()].clone();
                next_square += 1;
            }
        }
        let middle: Vec<(&str, Vec<Rational>)> = names.iter().map(|s| s.as_str()).zip(rows).collect();
        Self::from_middle(genus, &middle)
    }

    /// `alpha, Theta, Hyp, x1.., beta`: the classes the Fourier matrix moves.
    pub fn theta_model(genus: u32, extra: usize) -> Result<Self> {
        let k = 2 + extra;
        let squares = [int(-2), int(3), rat(5, 2), int(7)];
        let mut names = vec![THETA.to_string(), HYP.to_string()];
        names.extend((1..=extra).map(|i| format!("x{i}")));
        let mut rows = vec![vec![Rational::zero(); k]; k];
        rows[0][1] = int(1);
        rows[1][0] = int(1);
        for i in 0..extra {
            rows[2 + i][2 + i] = squares[i % squares.len()].clone();
        }
        let middle: Vec<(&str, Vec<Rational>)> = names.iter().map(|s| s.as_str()).zip(rows).collect();
        Self::from_middle(genus, &middle)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &Dense<Rational> {
        &self.gram
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn alpha_index(&self) -> usize {
        self.index(ALPHA).expect("validated")
    }

    pub fn beta_index(&self) -> usize {
        self.index(BETA).expect("validated")
    }

    /// Indices other than `α`, `β`.
    pub fn middle_indices(&self) -> Vec<usize> {
        let (a, b) = (self.alpha_index(), self.beta_index());
        (0..self.dim()).filter(|&i| i != a && i != b).collect()
    }

    pub fn basis_class(&self, i: usize) -> LatticeClass {
        let mut c = LatticeClass::zero(self.dim());
        c.coeffs[i] = GQ::from_int(1);
        c
    }

    pub fn class(&self, label: &str) -> Result<LatticeClass> {
        let i = self.index(label).ok_or_else(|| Error::Invalid(format!("no class {label}")))?;
        Ok(self.basis_class(i))
    }

    pub fn class_from(&self, coeffs: Vec<GQ>) -> Result<LatticeClass> {
        if coeffs.len() != self.dim() {
            return Err(Error::Dimension(format!("{} coordinates for dimension {}", coeffs.len(), self.dim())));
        }
        Ok(LatticeClass { coeffs })
    }

    /// The bilinear form, extended ℚ(i)-bilinearly (not sesquilinearly).
    pub fn pairing(&self, x: &LatticeClass, y: &LatticeClass) -> Result<GQ> {
        if x.dim() != self.dim() || y.dim() != self.dim() {
            return Err(Error::Dimension("class from a different space".into()));
        }
        let mut acc = GQ::from_int(0);
        for (i, xi) in x.coeffs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coeffs.iter().enumerate() {
                if yj.is_zero() || self.gram[i][j].is_zero() {
                    continue;
                }
                acc += &(xi * yj).scale(&self.gram[i][j]);
            }
        }
        Ok(acc)
    }

    pub fn q(&self, x: &LatticeClass) -> Result<GQ> {
        self.pairing(x, x)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = SpaceDoc {
            genus: self.genus,
            basis: &self.labels,
            gram: self.gram.iter().map(|r| r.iter().map(fmt_rational).collect()).collect(),
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }
}

/// `λ` with `q(A + λH) = 0`, i.e. `λ = −q(A) / 2(A, H)` for isotropic `H`.
pub fn solve_lambda(space: &MukaiSpace, a: &LatticeClass, h: &LatticeClass) -> Result<Rational> {
    if !space.q(h)?.is_zero() {
        return Err(Error::Invalid("H must be isotropic".into()));
    }
    let ah = space.pairing(a, h)?;
    let qa = space.q(a)?;
    if !ah.is_real() || !qa.is_real() {
        return Err(Error::Invalid("real classes expected".into()));
    }
    if ah.is_zero() {
        return Err(Error::NoSolution("(A, H) = 0".into()));
    }
    let lambda = -qa.re / (int(2) * ah.re);
    let shifted = a.add(&h.scale(&GQ::real(lambda.clone())));
    debug_assert!(space.q(&shifted)?.is_zero());
    Ok(lambda)
}

pub fn check_sign(c: i64) -> Result<Rational> {
    match c {
        1 | -1 => Ok(int(c)),
        _ => Err(Error::Invalid(format!("sign must be ±1, got {c}"))),
    }
}

/// The Fourier isometry on `H̃` as a dense matrix whose column `j` is the
/// image of basis vector `j`.
///
/// On `α, β, Θ, 𝖧` it follows the closed formulas with `k = (g+1)/2`:
/// `α ↦ −c₀(Θ − kβ)`, `β ↦ c₀𝖧`, `Θ ↦ c₀(α − k𝖧)`, `𝖧 ↦ −c₀β`;
/// every other basis vector (required orthogonal to `Θ, 𝖧`) is scaled by `c₁`.
pub fn fourier_matrix(space: &MukaiSpace, c0: i64, c1: i64) -> Result<Dense<Rational>> {
    let (c0, c1) = (check_sign(c0)?, check_sign(c1)?);
    let a = space.alpha_index();
    let b = space.beta_index();
    let t = space.index(THETA).ok_or_else(|| Error::Invalid("missing Theta".into()))?;
    let h = space.index(HYP).ok_or_else(|| Error::Invalid("missing Hyp".into()))?;
    if space.genus() < 2 {
        return Err(Error::Invalid("genus must be at least 2".into()));
    }
    let n = space.dim();
    let k = rat(space.genus() as i64 + 1, 2);
    let gram = space.gram();
    for m in (0..n).filter(|&m| ![a, b, t, h].contains(&m)) {
        if !gram[m][t].is_zero() || !gram[m][h].is_zero() {
            return Err(Error::Invalid(format!("{} not orthogonal to Theta, Hyp", space.labels()[m])));
        }
    }
    let mut f = vec![vec![Rational::zero(); n]; n];
    f[t][a] = -c0.clone();
    f[b][a] = &c0 * &k;
    f[h][b] = c0.clone();
    f[a][t] = c0.clone();
    f[h][t] = -(&c0 * &k);
    f[b][h] = -c0.clone();
    for m in (0..n).filter(|&m| ![a, b, t, h].contains(&m)) {
        f[m][m] = c1.clone();
    }
    Ok(f)
}

/// `Mᵀ G M = G`.
pub fn is_isometry(space: &MukaiSpace, m: &Dense<Rational>) -> bool {
    let g = space.gram();
    mat_mul(&mat_mul(&transpose(m), g), m) == *g
}

/// Applies a dense real matrix to a class.
pub fn apply(m: &Dense<Rational>, x: &LatticeClass) -> LatticeClass {
    let coeffs = m
        .iter()
        .map(|row| row.iter().zip(&x.coeffs).fold(GQ::from_int(0), |acc, (a, v)| acc.add_ref(&v.scale(a))))
        .collect();
    LatticeClass { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space() -> MukaiSpace {
        MukaiSpace::theta_model(3, 1).unwrap()
    }

    #[test]
    fn distinguished_pairings() {
        let s = space();
        let (a, b) = (s.class(ALPHA).unwrap(), s.class(BETA).unwrap());
        let (t, h) = (s.class(THETA).unwrap(), s.class(HYP).unwrap());
        assert_eq!(s.pairing(&a, &b).unwrap(), GQ::from_int(-1));
        assert_eq!(s.pairing(&t, &h).unwrap(), GQ::from_int(1));
        assert!(s.q(&a).unwrap().is_zero());
        assert!(s.q(&b).unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_gram() {
        let mut gram = space().gram().clone();
        gram[0][1] = int(1);
        gram[1][0] = int(1);
        assert!(MukaiSpace::new(space().labels().to_vec(), gram, 3).is_err());
    }

    #[test]
    fn lambda_examples() {
        // middle: A with q(A) = 2, isotropic H with (A, H) = 1
        let s = MukaiSpace::from_middle(2, &[("A", vec![int(2), int(1)]), ("H", vec![int(1), int(0)])]).unwrap();
        let (a, h) = (s.class("A").unwrap(), s.class("H").unwrap());
        assert_eq!(solve_lambda(&s, &a, &h).unwrap(), int(-1));
        let t = s.class("H").unwrap();
        assert_eq!(solve_lambda(&s, &t.scale(&GQ::from_int(3)), &h), Err(Error::NoSolution("(A, H) = 0".into())));
        let th = space();
        let (theta, hyp) = (th.class(THETA).unwrap(), th.class(HYP).unwrap());
        assert_eq!(solve_lambda(&th, &theta, &hyp).unwrap(), int(0));
    }

    #[test]
    fn fourier_examples() {
        for c0 in [1, -1] {
            let s = MukaiSpace::theta_model(5, 2).unwrap();
            let f = fourier_matrix(&s, c0, 1).unwrap();
            let c = GQ::from_int(c0);
            let (a, b) = (s.class(ALPHA).unwrap(), s.class(BETA).unwrap());
            let (t, h) = (s.class(THETA).unwrap(), s.class(HYP).unwrap());
            assert_eq!(apply(&f, &b), h.scale(&c));
            let expected = t.sub(&b.scale(&GQ::from_int(3))).scale(&-c.clone());
            assert_eq!(apply(&f, &a), expected);
            assert_eq!(apply(&f, &apply(&f, &b)), b.scale(&GQ::from_int(-1)));
            assert!(is_isometry(&s, &f));
        }
    }

    #[test]
    fn fourier_needs_theta() {
        let s = MukaiSpace::four_class(3, &int(1), 0).unwrap();
        assert!(fourier_matrix(&s, 1, 1).is_err());
        assert!(fourier_matrix(&space(), 2, 1).is_err());
    }

    #[test]
    fn json_shape() {
        let j = space().to_json();
        assert_eq!(j["genus"], 3);
        assert_eq!(j["basis"][0], ALPHA);
        assert_eq!(j["gram"][0][4], "-1");
    }
}
