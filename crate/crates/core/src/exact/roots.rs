//! Rational roots of polynomials of degree at most two.

use std::collections::BTreeSet;

use super::poly::QPoly;
use super::rational::{int, rational_sqrt, Rational};
use crate::error::{Error, Result};

/// All rational roots of a nonzero polynomial of degree ≤ 2.
///
/// The quadratic case decides rationality with the discriminant: `Δ = p/q`
/// in lowest terms is a rational square iff the integer `p·q` is a square.
pub fn rational_roots(p: &QPoly) -> Result<BTreeSet<Rational>> {
    let deg = match p.degree() {
        None => return Err(Error::Invalid("zero polynomial has every root".into())),
        Some(d) => d,
    };
    let mut roots = BTreeSet::new();
    match deg {
        0 => {}
        1 => {
            roots.insert(-p.coeff(0) / p.coeff(1));
        }
        2 => {
            let (a, b) = (p.coeff(2), p.coeff(1));
            let disc = discriminant(p)?;
            if let Some(r) = rational_sqrt(&disc) {
                let two_a = int(2) * &a;
                roots.insert((-&b + &r) / &two_a);
                roots.insert((-&b - &r) / &two_a);
            }
        }
        _ => return Err(Error::Unsupported(format!("degree {deg} > 2"))),
    }
    Ok(roots)
}

/// `b² − 4ac` of a quadratic.
pub fn discriminant(p: &QPoly) -> Result<Rational> {
    if p.degree() != Some(2) {
        return Err(Error::Invalid("discriminant needs a quadratic".into()));
    }
    let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
    Ok(&b * &b - int(4) * a * c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::{Poly, Var};
    use crate::exact::rational::rat;

    fn quad(c: Rational, b: Rational, a: Rational) -> QPoly {
        Poly::from_terms(Var::B, [(0, c), (1, b), (2, a)])
    }

    #[test]
    fn difference_of_squares() {
        let r = rational_roots(&quad(int(-1), int(0), int(1))).unwrap();
        assert_eq!(r.into_iter().collect::<Vec<_>>(), vec![int(-1), int(1)]);
    }

    #[test]
    fn genus_three_quadratic_has_no_rational_root() {
        let p = quad(rat(191, 224), int(-2), int(-36));
        assert_eq!(discriminant(&p).unwrap(), rat(1775, 14));
        assert!(rational_roots(&p).unwrap().is_empty());
    }

    #[test]
    fn genus_two_quadratic_has_no_rational_root() {
        let p = quad(rat(11, 960), rat(-1, 32), int(-1));
        assert_eq!(discriminant(&p).unwrap(), rat(719, 15360));
        assert!(rational_roots(&p).unwrap().is_empty());
    }

    #[test]
    fn double_root_and_linear() {
        // (1/2 - b)^2
        let p = quad(rat(1, 4), int(-1), int(1));
        assert_eq!(rational_roots(&p).unwrap().into_iter().collect::<Vec<_>>(), vec![rat(1, 2)]);
        let l = Poly::from_terms(Var::B, [(0, rat(1, 48)), (1, int(1))]);
        assert_eq!(rational_roots(&l).unwrap().into_iter().collect::<Vec<_>>(), vec![rat(-1, 48)]);
    }

    #[test]
    fn errors() {
        assert!(rational_roots(&QPoly::zero_in(Var::B)).is_err());
        let cubic = Poly::monomial(Var::B, int(1), 3);
        assert!(matches!(rational_roots(&cubic), Err(Error::Unsupported(_))));
    }
}
