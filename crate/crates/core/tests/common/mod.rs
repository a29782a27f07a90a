#![allow(dead_code)]

use beauville_core::exact::{int, GQ};
use beauville_core::k3::{rel_compose, rel_mul, Corr, CorrBasis, RelBasis, RelCycle};
use beauville_core::SparseMat;
use rand::Rng;

/// Expressions from all three contexts, in printer-normal form.
pub const CORPUS: [&str; 50] = [
    "[e(1), f(2)]",
    "[K(1, 2), K(2, 3)] - 2*K(1, 3)",
    "[h, e(1)] - 2*e(1)",
    "[h, f(3)] + 2*f(3)",
    "[e(1), f(1)] - h",
    "K(1, 2) + K(2, 1)",
    "[K(1, 2), e(3)]",
    "[K(1, 2), e(2)] - 2*e(1)",
    "[e(sigma(1, 2)), f(sigma(1, 2))]",
    "[e(sigbar(3, 4)), f(sigbar(3, 4))]",
    "[e(sigma(1, 2)), f(sigbar(1, 2))]",
    "1/2*(h - i*K(1, 2))",
    "-1/2*i",
    "D - i*K(1, 2)",
    "cst*h - h o cst",
    "e(1)^2",
    "(e(1) + f(1))^3",
    "[[e(1), f(2)], [e(2), f(1)]]",
    "-h + 3/4*K(3, 4)",
    "e(1) o f(1) - f(1) o e(1) - h",
    "2*i*K(1, 3) - (K(1, 3) - K(2, 4))",
    "h^0",
    "[e(sigma(1, 2)), [f(sigma(3, 4)), e(1)]]",
    "-[h, h]",
    "cst^2*e(4)",
    "p1(Theta)*p2(Theta)",
    "Delta(Theta)",
    "Delta(Theta) - p1(Theta)*p2(Theta)",
    "F o Finv",
    "Finv o F - Delta",
    "[F, Finv]",
    "p1(s)*p2(f)",
    "p2(c) - p1(f)*p2(s)",
    "Delta(s + f)",
    "Delta",
    "s*f - c",
    "Theta^2 - 2*c",
    "F o p1(s) o Finv",
    "1/24*(Delta - p1(S))",
    "(p1(s) + p2(s))^2",
    "theta^2",
    "theta*(theta + b*delta)^4",
    "(theta + b*delta)^3",
    "theta*xi2^2 + 1/2*theta^2*(psi1 + psi2)",
    "1/480*theta*(psi1 + psi2) - 1/8960*xi2^2",
    "kappa1*theta^3",
    "-delta^2",
    "(theta + (1/2 - b)*(psi1 + psi2))^5",
    "1/2*theta^2",
    "theta - 1/48*delta",
];

pub fn random_gq(rng: &mut impl Rng) -> GQ {
    GQ::new(int(rng.gen_range(-3..=3)), int(rng.gen_range(-2..=2)))
}

pub fn random_op(rng: &mut impl Rng, n: usize) -> SparseMat<GQ> {
    let mut m = SparseMat::zeros(n, n);
    for _ in 0..rng.gen_range(1..=2 * n) {
        m.add_entry(rng.gen_range(0..n), rng.gen_range(0..n), &random_gq(rng));
    }
    m
}

/// `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]`.
pub fn jacobiator(a: &SparseMat<GQ>, b: &SparseMat<GQ>, c: &SparseMat<GQ>) -> SparseMat<GQ> {
    let t1 = a.bracket(&b.bracket(c).unwrap()).unwrap();
    let t2 = b.bracket(&c.bracket(a).unwrap()).unwrap();
    let t3 = c.bracket(&a.bracket(b).unwrap()).unwrap();
    t1.add(&t2).unwrap().add(&t3).unwrap()
}

/// `(supported, failures)` for `rel_mul` over all basis triples.
pub fn rel_mul_associativity() -> (usize, Vec<String>) {
    let mut supported = 0;
    let mut bad = Vec::new();
    for a in RelBasis::ALL {
        for b in RelBasis::ALL {
            for c in RelBasis::ALL {
                let (x, y, z) = (RelCycle::basis(a), RelCycle::basis(b), RelCycle::basis(c));
                let left = rel_mul(&x, &y).and_then(|xy| rel_mul(&xy, &z));
                let right = rel_mul(&y, &z).and_then(|yz| rel_mul(&x, &yz));
                if let (Ok(l), Ok(r)) = (left, right) {
                    supported += 1;
                    if l != r {
                        bad.push(format!("{a:?}.{b:?}.{c:?}"));
                    }
                }
            }
        }
    }
    (supported, bad)
}

/// `(supported, failures)` for `rel_compose` over all basis triples.
pub fn compose_associativity() -> (usize, Vec<String>) {
    let mut supported = 0;
    let mut bad = Vec::new();
    let all = CorrBasis::all();
    for a in &all {
        for b in &all {
            for c in &all {
                let (x, y, z) = (Corr::basis(*a), Corr::basis(*b), Corr::basis(*c));
                let left = rel_compose(&x, &y).and_then(|xy| rel_compose(&xy, &z));
                let right = rel_compose(&y, &z).and_then(|yz| rel_compose(&x, &yz));
                if let (Ok(l), Ok(r)) = (left, right) {
                    supported += 1;
                    if l != r {
                        bad.push(format!("{}.{}.{}", a.name(), b.name(), c.name()));
                    }
                }
            }
        }
    }
    (supported, bad)
}
