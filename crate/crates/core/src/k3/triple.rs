//! Cycles on the triple fiber product `S ×_B S ×_B S` and their
//! pushforward to `S × S × S`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::bv::{basis_mul, write_sum, Bv, BvClass};
use super::rel::{RelBasis, RelCycle};
use crate::error::{Error, Result};
use crate::exact::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TDiag {
    None,
    /// `q_ij*[Δ]`, `i < j`, 0-based slots.
    Pair(usize, usize),
    /// `[Δ^sm]`.
    Small,
}

/// `∏ q_i*s^{sᵢ} · F^f · diag`, where `F` is the common pullback of `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TMono {
    pub s: [bool; 3],
    pub f: bool,
    pub diag: TDiag,
}

impl TMono {
    pub const UNIT: TMono = TMono { s: [false; 3], f: false, diag: TDiag::None };

    fn name(&self) -> String {
        let mut parts = Vec::new();
        for (i, &on) in self.s.iter().enumerate() {
            if on {
                parts.push(format!("q{}*s", i + 1));
            }
        }
        if self.f {
            parts.push("F".into());
        }
        match self.diag {
            TDiag::None => {}
            TDiag::Pair(i, j) => parts.push(format!("q{}{}*[Delta]", i + 1, j + 1)),
            TDiag::Small => parts.push("[Delta_sm]".into()),
        }
        if parts.is_empty() {
            "[SxSxS]".into()
        } else {
            parts.join(".")
        }
    }
}

fn pair_slots(i: usize, j: usize) -> TDiag {
    TDiag::Pair(i.min(j), i.max(j))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TripleCycle(BTreeMap<TMono, Rational>);

impl TripleCycle {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn mono(m: TMono) -> Self {
        let mut x = Self::zero();
        x.add_term(m, &Rational::one());
        x
    }

    pub fn unit() -> Self {
        Self::mono(TMono::UNIT)
    }

    pub fn small_diagonal() -> Self {
        Self::mono(TMono { diag: TDiag::Small, ..TMono::UNIT })
    }

    pub fn coeff(&self, m: &TMono) -> Rational {
        self.0.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TMono, &Rational)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, m: TMono, q: &Rational) {
        let v = self.coeff(&m) + q;
        if v.is_zero() {
            self.0.remove(&m);
        } else {
            self.0.insert(m, v);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut x = self.clone();
        for (m, q) in o.terms() {
            x.add_term(*m, q);
        }
        x
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut x = Self::zero();
        for (m, v) in self.terms() {
            x.add_term(*m, &(v * q));
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
        let mut out = Self::zero();
        for (a, p) in self.terms() {
            for (b, q) in o.terms() {
                out = out.add(&mono_mul(a, b)?.scale(&(p * q)));
            }
        }
        Ok(out)
    }

    /// `q_i*x`, 0-based slot.
    pub fn q(i: usize, x: &BvClass) -> Self {
        x.terms().fold(Self::zero(), |acc, (b, c)| acc.add(&bv_slot(i, b).scale(c)))
    }

    /// `q_ij*u` for a relative cycle `u`; the first factor of `u` goes to
    /// slot `i`.
    pub fn q2(i: usize, j: usize, u: &RelCycle) -> Result<Self> {
        let mut out = Self::zero();
        for (b, c) in u.terms() {
            let term = match b.pair_rep() {
                None => Self::mono(TMono { diag: pair_slots(i, j), ..TMono::UNIT }),
                Some((x, y)) => bv_slot(i, x).mul(&bv_slot(j, y))?,
            };
            out = out.add(&term.scale(c));
        }
        Ok(out)
    }
}

impl fmt::Display for TripleCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms().map(|(m, q)| (m.name(), q)))
    }
}

fn bv_slot(i: usize, b: Bv) -> TripleCycle {
    let mut m = TMono::UNIT;
    match b {
        Bv::One => {}
        Bv::S => m.s[i] = true,
        Bv::F => m.f = true,
        Bv::C => {
            m.s[i] = true;
            m.f = true;
        }
    }
    TripleCycle::mono(m)
}

fn mono_mul(a: &TMono, b: &TMono) -> Result<TripleCycle> {
    let diag = match (a.diag, b.diag) {
        (TDiag::None, d) | (d, TDiag::None) => d,
        (TDiag::Pair(i, j), TDiag::Pair(k, l)) if (i, j) != (k, l) => TDiag::Small,
        _ => return Err(Error::OutsideModel("excess intersection of diagonals".into())),
    };
    let mut coeff = int(1);
    let mut f = a.f as u8 + b.f as u8;
    let mut s = [false; 3];
    for i in 0..3 {
        match (a.s[i], b.s[i]) {
            (true, true) => {
                // s² = −2c = −2·s·F
                coeff *= int(-2);
                f += 1;
                s[i] = true;
            }
            (x, y) => s[i] = x || y,
        }
    }
    if f > 1 {
        return Ok(TripleCycle::zero());
    }
    let raw = TMono { s, f: f == 1, diag };
    Ok(reduce(raw)?.scale(&coeff))
}

/// Removes relative-diagonal factors whose restriction is known:
/// `F·q_jk*Δ = q_j*c + q_k*c` and `q_j*s·q_jk*Δ = q_j*s·q_k*s`.
fn reduce(m: TMono) -> Result<TripleCycle> {
    let TDiag::Pair(j, k) = m.diag else {
        if m.diag == TDiag::Small && (m.f || m.s.iter().any(|&x| x)) {
            return Err(Error::OutsideModel("products with the small diagonal are not modeled".into()));
        }
        return Ok(TripleCycle::mono(m));
    };
    let rest = |mut m: TMono| {
        m.diag = TDiag::None;
        m
    };
    if m.f {
        let others = TripleCycle::mono(TMono { f: false, ..rest(m) });
        let cj = bv_slot(j, Bv::C).add(&bv_slot(k, Bv::C));
        return others.mul(&cj);
    }
    for (a, b) in [(j, k), (k, j)] {
        if m.s[a] {
            let mut others = rest(m);
            others.s[a] = false;
            let ss = TripleCycle::mono(TMono { s: slot_pair(a, b), ..TMono::UNIT });
            return TripleCycle::mono(others).mul(&ss);
        }
    }
    Ok(TripleCycle::mono(m))
}

fn slot_pair(a: usize, b: usize) -> [bool; 3] {
    let mut s = [false; 3];
    s[a] = true;
    s[b] = true;
    s
}

/// Left-hand side of the relative Beauville–Voisin relation:
/// `[Δ^sm] − Σ q_i*s·q_jk*[Δ] + Σ q_j*s·q_k*s`.
pub fn rel_bv_lhs() -> TripleCycle {
    let mut out = TripleCycle::small_diagonal();
    for (i, j, k) in [(0, 1, 2), (1, 0, 2), (2, 0, 1)] {
        let mut m = TMono { diag: TDiag::Pair(j, k), ..TMono::UNIT };
        m.s[i] = true;
        out.add_term(m, &int(-1));
        out.add_term(TMono { s: slot_pair(j, k), ..TMono::UNIT }, &int(1));
    }
    out
}

/// `[Δ^sm] ∘ (u × v)`; one factor must be `[Δ]`.
pub fn small_after_product(u: &RelCycle, v: &RelCycle) -> Result<TripleCycle> {
    let d = RelBasis::Diag;
    let mut out = TripleCycle::zero();
    for (a, p) in u.terms() {
        for (b, q) in v.terms() {
            let pq = p * q;
            let term = if b == d {
                TripleCycle::q2(0, 2, &RelCycle::basis(a))?.mul(&TripleCycle::q2(1, 2, &RelCycle::basis(d))?)?
            } else if a == d {
                TripleCycle::q2(1, 2, &RelCycle::basis(b))?.mul(&TripleCycle::q2(0, 2, &RelCycle::basis(d))?)?
            } else {
                return Err(Error::OutsideModel("[Delta_sm] ∘ (u × v) needs a diagonal factor".into()));
            };
            out = out.add(&term.scale(&pq));
        }
    }
    Ok(out)
}

/// `u ∘ [Δ^sm] = q12*[Δ] · q13*u`.
pub fn after_small(u: &RelCycle) -> Result<TripleCycle> {
    TripleCycle::q2(0, 1, &RelCycle::basis(RelBasis::Diag))?.mul(&TripleCycle::q2(0, 2, u)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ADiag {
    None,
    /// `q'_jk*[Δ_S]`, `j < k`; the two slots carry `1`.
    Pair(usize, usize),
    Small,
}

/// Monomial on the absolute product `S × S × S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AMono {
    pub slots: [Bv; 3],
    pub diag: ADiag,
}

impl AMono {
    fn name(&self) -> String {
        let mut parts: Vec<String> = self
            .slots
            .iter()
            .enumerate()
            .filter(|(_, b)| **b != Bv::One)
            .map(|(i, b)| format!("q{}'*{}", i + 1, b.name()))
            .collect();
        match self.diag {
            ADiag::None => {}
            ADiag::Pair(j, k) => parts.push(format!("q{}{}'*[Delta_S]", j + 1, k + 1)),
            ADiag::Small => parts.push("[Delta_S_sm]".into()),
        }
        if parts.is_empty() {
            "[SxSxS]".into()
        } else {
            parts.join(".")
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AbsCycle(BTreeMap<AMono, Rational>);

impl AbsCycle {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn mono(m: AMono) -> Self {
        let mut x = Self::zero();
        x.add_term(m, &Rational::one());
        x
    }

    pub fn product(slots: [Bv; 3]) -> Self {
        Self::mono(AMono { slots, diag: ADiag::None })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AMono, &Rational)> {
        self.0.iter()
    }

    pub fn add_term(&mut self, m: AMono, q: &Rational) {
        let v = self.0.get(&m).cloned().unwrap_or_else(Rational::zero) + q;
        if v.is_zero() {
            self.0.remove(&m);
        } else {
            self.0.insert(m, v);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut x = self.clone();
        for (m, q) in o.terms() {
            x.add_term(*m, q);
        }
        x
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut x = Self::zero();
        for (m, v) in self.terms() {
            x.add_term(*m, &(v * q));
        }
        x
    }

    /// Multiplies slot `i` by `x` in every monomial without a diagonal on
    /// that slot.
    fn times_slot(&self, i: usize, x: Bv) -> Result<Self> {
        let mut out = Self::zero();
        for (m, q) in self.terms() {
            match m.diag {
                ADiag::Small => return Err(Error::OutsideModel("small diagonal times a class".into())),
                ADiag::Pair(j, k) if i == j || i == k => {
                    return Err(Error::OutsideModel("class on a diagonal slot".into()))
                }
                _ => {}
            }
            for (b, c) in basis_mul(m.slots[i], x).terms() {
                let mut n = *m;
                n.slots[i] = b;
                out.add_term(n, &(q * c));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for AbsCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms().map(|(m, q)| (m.name(), q)))
    }
}

/// Pushforward of `S ×_B S` cycles to `S × S`, as `p1'*x·p2'*y` pairs or
/// the absolute diagonal.
pub fn absolute_push_rel(u: &RelCycle) -> BTreeMap<Option<(Bv, Bv)>, Rational> {
    let mut out: BTreeMap<Option<(Bv, Bv)>, Rational> = BTreeMap::new();
    let mut put = |k: Option<(Bv, Bv)>, q: Rational| {
        let v = out.remove(&k).unwrap_or_else(Rational::zero) + q;
        if !v.is_zero() {
            out.insert(k, v);
        }
    };
    for (b, q) in u.terms() {
        match b.pair_rep() {
            None => put(None, q.clone()),
            Some((x, y)) => {
                // [S ×_B S] = p1'*f + p2'*f
                for (a, c) in basis_mul(x, Bv::F).terms() {
                    put(Some((a, y)), q * c);
                }
                for (a, c) in basis_mul(y, Bv::F).terms() {
                    put(Some((x, a)), q * c);
                }
            }
        }
    }
    out
}

/// Pushforward to `S × S × S` via `[S ×_B S ×_B S] = Σ q'_j*f·q'_k*f` and
/// `q_jk*[Δ] ↦ q'_jk*[Δ_S]·(q'_i*f + q'_j*f)`.
pub fn absolute_push(u: &TripleCycle) -> Result<AbsCycle> {
    let mut out = AbsCycle::zero();
    for (m, q) in u.terms() {
        let mut slots = [Bv::One; 3];
        for i in 0..3 {
            if m.s[i] {
                slots[i] = Bv::S;
            }
        }
        let term = match m.diag {
            TDiag::Small => AbsCycle::mono(AMono { slots: [Bv::One; 3], diag: ADiag::Small }),
            TDiag::None => {
                let mut base = AbsCycle::product(slots);
                if m.f {
                    base = base.times_slot(0, Bv::F)?;
                }
                let mut t = AbsCycle::zero();
                for (j, k) in [(1, 2), (0, 2), (0, 1)] {
                    t = t.add(&base.times_slot(j, Bv::F)?.times_slot(k, Bv::F)?);
                }
                t
            }
            TDiag::Pair(j, k) => {
                let i = 3 - j - k;
                if m.f || m.s[j] || m.s[k] {
                    return Err(Error::OutsideModel("unreduced relative diagonal".into()));
                }
                let onpair = AbsCycle::mono(AMono { slots, diag: ADiag::Pair(j, k) });
                let a = onpair.times_slot(i, Bv::F)?;
                // q'_jk*[Δ_S] · q'_j*f = q'_jk*Δ_{S*}f = q'_j*c q'_k*f + q'_j*f q'_k*c
                let mut b = AbsCycle::zero();
                for (x, y) in [(Bv::C, Bv::F), (Bv::F, Bv::C)] {
                    let mut s2 = slots;
                    s2[j] = x;
                    s2[k] = y;
                    b.add_term(AMono { slots: s2, diag: ADiag::None }, &int(1));
                }
                a.add(&b)
            }
        };
        out = out.add(&term.scale(q));
    }
    Ok(out)
}

/// `[Δ_S^sm] − Σ q'_i*c·q'_jk*[Δ_S] + Σ q'_j*c·q'_k*c`.
pub fn absolute_bv_expression() -> AbsCycle {
    let mut out = AbsCycle::mono(AMono { slots: [Bv::One; 3], diag: ADiag::Small });
    for (i, j, k) in [(0, 1, 2), (1, 0, 2), (2, 0, 1)] {
        let mut slots = [Bv::One; 3];
        slots[i] = Bv::C;
        out.add_term(AMono { slots, diag: ADiag::Pair(j, k) }, &int(-1));
        let mut cc = [Bv::One; 3];
        cc[j] = Bv::C;
        cc[k] = Bv::C;
        out.add_term(AMono { slots: cc, diag: ADiag::None }, &int(1));
    }
    out
}
