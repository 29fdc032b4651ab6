//! Normal-ordered symbol algebra for the deformed phase-space algebra with
//! generators `x`, `g = e^{-x/G}` (invertible) and `p`, subject to
//!
//! ```text
//! [p, g] = iA (1 - g) g,      [p, x] = iAG (g - 1),      [x, g] = 0,
//! ```
//!
//! where `A = ħ/G`.  Elements are kept in the canonical normal order
//! `x^k g^r p^n` (`x`, `g` to the left, `p` to the right).
//!
//! The same module houses the commutative coordinate algebra obtained at
//! `A = 0`, its binomial coalgebra, the explicit product cocycle `χ` with
//! its inverse, and the cotwisted (bullet) product.  The bullet product is
//! compared with the noncommutative product through the word-basis
//! conversion [`to_word_basis`]/[`from_word_basis`], which realises the
//! algebra isomorphism between the cotwisted coordinate ring and the
//! normal-ordered algebra.

use crate::scalar::{GaussQ, ParamScalar, ScalarError};
use num::complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanckError {
    /// The cocycle and twisted antipode are defined on the `g, p`
    /// subalgebra only; `x`-monomials are rejected rather than silently
    /// extended.
    #[error("operation is not defined on x-monomials")]
    UnsupportedGenerator,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Exponents of one normal-ordered monomial `x^k g^r p^n`.
pub type MonoKey = (u32, i32, u32);

/// Finite sum of normal-ordered monomials over [`ParamScalar`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PlanckElem {
    terms: BTreeMap<MonoKey, ParamScalar>,
}

impl PlanckElem {
    pub fn zero() -> Self {
        PlanckElem { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        PlanckElem::monomial(ParamScalar::one(), 0, 0, 0)
    }

    pub fn monomial(c: ParamScalar, k: u32, r: i32, n: u32) -> Self {
        let mut e = PlanckElem::zero();
        e.add_term((k, r, n), c);
        e
    }

    pub fn x() -> Self {
        PlanckElem::monomial(ParamScalar::one(), 1, 0, 0)
    }

    pub fn g(r: i32) -> Self {
        PlanckElem::monomial(ParamScalar::one(), 0, r, 0)
    }

    pub fn p() -> Self {
        PlanckElem::monomial(ParamScalar::one(), 0, 0, 1)
    }

    pub fn scalar(c: ParamScalar) -> Self {
        PlanckElem::monomial(c, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonoKey, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|(k, _, _)| *k).max().unwrap_or(0)
    }

    pub fn p_degree(&self) -> u32 {
        self.terms.keys().map(|(_, _, n)| *n).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, key: MonoKey, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &PlanckElem) -> PlanckElem {
        let mut out = self.clone();
        for (k, c) in rhs.terms.iter() {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &PlanckElem) -> PlanckElem {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> PlanckElem {
        PlanckElem {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> PlanckElem {
        if c.is_zero() {
            return PlanckElem::zero();
        }
        PlanckElem {
            terms: self.terms.iter().map(|(k, v)| (*k, v.mul(c))).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> PlanckElem {
        self.scale(&ParamScalar::from_int(n))
    }

    /// Exact `A = 0` specialization, term by term.
    pub fn at_a_zero(&self) -> PlanckElem {
        let mut out = PlanckElem::zero();
        for (k, c) in self.terms.iter() {
            out.add_term(*k, c.at_a_zero());
        }
        out
    }

    /// Exact division of every coefficient by `iA`.
    pub fn div_by_i_a(&self) -> Result<PlanckElem, ScalarError> {
        let mut out = PlanckElem::zero();
        for (k, c) in self.terms.iter() {
            out.add_term(*k, c.div_by_i_a()?);
        }
        Ok(out)
    }

    /// Exact division of every coefficient by `iħ = iAG`.
    pub fn div_by_i_hbar(&self) -> Result<PlanckElem, ScalarError> {
        let mut out = PlanckElem::zero();
        for (k, c) in self.terms.iter() {
            out.add_term(*k, c.div_by_i_hbar()?);
        }
        Ok(out)
    }

    /// Numeric evaluation of the symbol at a phase-space point, reading
    /// `g` as `e^{-x/G}`.
    pub fn eval(
        &self,
        x: Complex64,
        p: Complex64,
        a_val: Complex64,
        g_val: Complex64,
    ) -> Result<Complex64, ScalarError> {
        let g_coord = (-x / g_val).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        for ((k, r, n), c) in self.terms.iter() {
            acc += c.substitute(a_val, g_val)?
                * x.powi(*k as i32)
                * g_coord.powi(*r)
                * p.powi(*n as i32);
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// Products
// ---------------------------------------------------------------------------

/// Commutative product (the coordinate ring of the undeformed group):
/// exponents simply add.
pub fn comm_mul(a: &PlanckElem, b: &PlanckElem) -> PlanckElem {
    let mut out = PlanckElem::zero();
    for ((k1, r1, n1), c1) in a.terms() {
        for ((k2, r2, n2), c2) in b.terms() {
            out.add_term((k1 + k2, r1 + r2, n1 + n2), c1.mul(c2));
        }
    }
    out
}

/// Left multiplication by the generator `p`, reduced to normal order.
///
/// On a monomial:
/// `p · x^k g^r p^n = x^k g^r p^{n+1} + iA r x^k (g^r - g^{r+1}) p^n
///                    + iAG k x^{k-1} (g^{r+1} - g^r) p^n`.
fn left_mul_p(e: &PlanckElem) -> PlanckElem {
    let ia = ParamScalar::i_a();
    let iag = ParamScalar::i_a().mul(&ParamScalar::g_pow(1));
    let mut out = PlanckElem::zero();
    for ((k, r, n), c) in e.terms() {
        out.add_term((*k, *r, n + 1), c.clone());
        if *r != 0 {
            let cr = c.mul(&ia).scale_int(*r as i64);
            out.add_term((*k, *r, *n), cr.clone());
            out.add_term((*k, r + 1, *n), cr.neg());
        }
        if *k > 0 {
            let ck = c.mul(&iag).scale_int(*k as i64);
            out.add_term((k - 1, r + 1, *n), ck.clone());
            out.add_term((k - 1, *r, *n), ck.neg());
        }
    }
    out
}

/// Product in the deformed algebra, reduced to canonical normal order.
pub fn normal_mul(a: &PlanckElem, b: &PlanckElem) -> PlanckElem {
    let mut out = PlanckElem::zero();
    for ((k1, r1, n1), c1) in a.terms() {
        // p^{n1} moved through b, then the x^{k1} g^{r1} prefix attached.
        let mut acc = b.clone();
        for _ in 0..*n1 {
            acc = left_mul_p(&acc);
        }
        for ((k2, r2, n2), c2) in acc.terms() {
            out.add_term((k1 + k2, r1 + r2, *n2), c1.mul(c2));
        }
    }
    out
}

/// Commutator `[a, b] = ab - ba` in the deformed algebra.
pub fn commutator(a: &PlanckElem, b: &PlanckElem) -> PlanckElem {
    normal_mul(a, b).sub(&normal_mul(b, a))
}

/// Substitute `p -> p + c` (a constant shift) in the symbol, expanding
/// binomially on the `p`-powers.
pub fn shift_p(e: &PlanckElem, c: &ParamScalar) -> PlanckElem {
    let mut out = PlanckElem::zero();
    for ((k, r, n), coeff) in e.terms() {
        // (p + c)^n = sum_j C(n,j) c^{n-j} p^j
        let mut cpow = ParamScalar::one();
        let mut pows: Vec<ParamScalar> = Vec::with_capacity(*n as usize + 1);
        for _ in 0..=*n {
            pows.push(cpow.clone());
            cpow = cpow.mul(c);
        }
        for j in 0..=*n {
            let bin = binomial(*n, j);
            out.add_term((*k, *r, j), coeff.mul(&pows[(*n - j) as usize]).scale_int(bin));
        }
    }
    out
}

pub(crate) fn binomial(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    let mut num: i64 = 1;
    for j in 0..k.min(n - k) {
        num = num * (n - j) as i64 / (j + 1) as i64;
    }
    num
}

// ---------------------------------------------------------------------------
// Coalgebra (shared by the commutative and deformed algebras)
// ---------------------------------------------------------------------------

/// Finite sum of coefficient × (monomial ⊗ monomial).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorElem {
    terms: BTreeMap<(MonoKey, MonoKey), ParamScalar>,
}

impl TensorElem {
    pub fn zero() -> Self {
        TensorElem { terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, left: MonoKey, right: MonoKey, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((left, right)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MonoKey, MonoKey), &ParamScalar)> {
        self.terms.iter()
    }

    pub fn add(&self, rhs: &TensorElem) -> TensorElem {
        let mut out = self.clone();
        for ((l, r), c) in rhs.terms.iter() {
            out.add_term(*l, *r, c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Coproduct of one monomial in the binomial coalgebra:
/// `Δx = x⊗1 + 1⊗x`, `Δg = g⊗g`, `Δp = p⊗g + 1⊗p`, extended as an algebra
/// map of the commutative product.
pub fn coproduct_mono(key: MonoKey) -> TensorElem {
    let (k, r, n) = key;
    let mut out = TensorElem::zero();
    for a in 0..=k {
        for b in 0..=n {
            let c = binomial(k, a) * binomial(n, b);
            out.add_term(
                (a, r, b),
                (k - a, r + b as i32, n - b),
                ParamScalar::from_int(c),
            );
        }
    }
    out
}

pub fn coproduct(e: &PlanckElem) -> TensorElem {
    let mut out = TensorElem::zero();
    for (key, c) in e.terms() {
        for ((l, r), bc) in coproduct_mono(*key).terms() {
            out.add_term(*l, *r, bc.mul(c));
        }
    }
    out
}

/// Product on two-leg tensors with both legs multiplied in the deformed
/// algebra.
pub fn tensor_normal_mul(a: &TensorElem, b: &TensorElem) -> TensorElem {
    let mut out = TensorElem::zero();
    for ((l1, r1), c1) in a.terms() {
        for ((l2, r2), c2) in b.terms() {
            let left = normal_mul(
                &PlanckElem::monomial(ParamScalar::one(), l1.0, l1.1, l1.2),
                &PlanckElem::monomial(ParamScalar::one(), l2.0, l2.1, l2.2),
            );
            let right = normal_mul(
                &PlanckElem::monomial(ParamScalar::one(), r1.0, r1.1, r1.2),
                &PlanckElem::monomial(ParamScalar::one(), r2.0, r2.1, r2.2),
            );
            let c = c1.mul(c2);
            for (kl, cl) in left.terms() {
                for (kr, cr) in right.terms() {
                    out.add_term(*kl, *kr, c.mul(cl).mul(cr));
                }
            }
        }
    }
    out
}

/// Coproduct of the deformed algebra itself: the same generator coproducts,
/// but extended as an algebra map of [`normal_mul`] (the legs no longer
/// commute, so this differs from the binomial expansion from `p`-degree 2).
pub fn coproduct_deformed(e: &PlanckElem) -> TensorElem {
    let mut dp_power: Vec<TensorElem> = Vec::new();
    let mut unit = TensorElem::zero();
    unit.add_term((0, 0, 0), (0, 0, 0), ParamScalar::one());
    dp_power.push(unit);
    let mut delta_p = TensorElem::zero();
    delta_p.add_term((0, 0, 1), (0, 1, 0), ParamScalar::one());
    delta_p.add_term((0, 0, 0), (0, 0, 1), ParamScalar::one());
    let maxn = e.p_degree();
    for n in 1..=maxn {
        let next = tensor_normal_mul(&dp_power[(n - 1) as usize], &delta_p);
        dp_power.push(next);
    }
    let mut out = TensorElem::zero();
    for ((k, r, n), c) in e.terms() {
        // Δ(x^k) Δ(g^r): legs commute with each other
        for a in 0..=*k {
            let bc = ParamScalar::from_int(binomial(*k, a)).mul(c);
            for ((l, rr), pc) in dp_power[*n as usize].terms() {
                out.add_term(
                    (a + l.0, r + l.1, l.2),
                    (k - a + rr.0, r + rr.1, rr.2),
                    bc.mul(pc),
                );
            }
        }
    }
    out
}

/// Counit: `x -> 0`, `p -> 0`, `g -> 1`.
pub fn counit(e: &PlanckElem) -> ParamScalar {
    let mut out = ParamScalar::zero();
    for ((k, _r, n), c) in e.terms() {
        if *k == 0 && *n == 0 {
            out = out.add(c);
        }
    }
    out
}

/// Antipode of the commutative Hopf algebra: `Sg = g^{-1}`, `Sp = -p g^{-1}`,
/// `Sx = -x`; an algebra map since the product is commutative.
pub fn antipode_classical(e: &PlanckElem) -> PlanckElem {
    let mut out = PlanckElem::zero();
    for ((k, r, n), c) in e.terms() {
        let sign = if (k + n) % 2 == 0 { 1 } else { -1 };
        out.add_term((*k, -r - *n as i32, *n), c.scale_int(sign));
    }
    out
}

/// Iterated coproduct legs of a monomial: the list of
/// (leg_1, ..., leg_m, coefficient) for `Δ^{(m-1)}`.
fn iterated_legs(key: MonoKey, legs: usize) -> Vec<(Vec<MonoKey>, ParamScalar)> {
    assert!(legs >= 1);
    if legs == 1 {
        return vec![(vec![key], ParamScalar::one())];
    }
    let mut acc: Vec<(Vec<MonoKey>, ParamScalar)> =
        vec![(vec![key], ParamScalar::one())];
    for _ in 1..legs {
        let mut next = Vec::new();
        for (seq, c) in acc.iter() {
            // expand the last leg
            let last = *seq.last().unwrap();
            for ((l, r), bc) in coproduct_mono(last).terms() {
                let mut s = seq.clone();
                s.pop();
                s.push(*l);
                s.push(*r);
                next.push((s, c.mul(bc)));
            }
        }
        acc = next;
    }
    acc
}

// ---------------------------------------------------------------------------
// The cocycle χ and the cotwisted (bullet) product
// ---------------------------------------------------------------------------

fn check_gp_only(e: &PlanckElem) -> Result<(), PlanckError> {
    if e.terms().any(|((k, _, _), _)| *k > 0) {
        Err(PlanckError::UnsupportedGenerator)
    } else {
        Ok(())
    }
}

/// χ on basis monomials:
/// `χ(p^n g^r ⊗ p^m g^s) = δ_{m,0} (iA)^n ∏_{k=0}^{n-1}(-s-k)`;
/// the inverse replaces the product by `∏ (s-k)`.
fn chi_mono(left: MonoKey, right: MonoKey, inverse: bool) -> ParamScalar {
    let (kl, _rl, n) = left;
    let (kr, s, m) = right;
    if kl != 0 || kr != 0 || m != 0 {
        return ParamScalar::zero();
    }
    let mut prod: i64 = 1;
    for k in 0..n as i64 {
        let factor = if inverse { s as i64 - k } else { -(s as i64) - k };
        prod *= factor;
        if prod == 0 {
            return ParamScalar::zero();
        }
    }
    let mut out = ParamScalar::from_int(prod);
    for _ in 0..n {
        out = out.mul(&ParamScalar::i_a());
    }
    out
}

/// Bilinear extension of the cocycle (or its convolution inverse) to
/// `g, p`-symbols.
pub fn chi_eval(a: &PlanckElem, b: &PlanckElem, inverse: bool) -> Result<ParamScalar, PlanckError> {
    check_gp_only(a)?;
    check_gp_only(b)?;
    let mut out = ParamScalar::zero();
    for (ka, ca) in a.terms() {
        for (kb, cb) in b.terms() {
            let v = chi_mono(*ka, *kb, inverse);
            if !v.is_zero() {
                out = out.add(&ca.mul(cb).mul(&v));
            }
        }
    }
    Ok(out)
}

/// The raw cotwisted product on the commutative coordinate ring:
/// `h • g = χ(h₁⊗g₁) h₂ g₂ χ⁻¹(h₃⊗g₃)` with the commutative product and the
/// binomial coproduct.  Symbols are classical basis elements here; see
/// [`bullet_product`] for the comparison with [`normal_mul`].
pub fn bullet_raw(a: &PlanckElem, b: &PlanckElem) -> Result<PlanckElem, PlanckError> {
    check_gp_only(a)?;
    check_gp_only(b)?;
    let mut out = PlanckElem::zero();
    for (ka, ca) in a.terms() {
        for (kb, cb) in b.terms() {
            let legs_a = iterated_legs(*ka, 3);
            let legs_b = iterated_legs(*kb, 3);
            for (sa, caa) in legs_a.iter() {
                for (sb, cbb) in legs_b.iter() {
                    let f1 = chi_mono(sa[0], sb[0], false);
                    if f1.is_zero() {
                        continue;
                    }
                    let f3 = chi_mono(sa[2], sb[2], true);
                    if f3.is_zero() {
                        continue;
                    }
                    let (k1, r1, n1) = sa[1];
                    let (k2, r2, n2) = sb[1];
                    let coeff = ca
                        .mul(cb)
                        .mul(caa)
                        .mul(cbb)
                        .mul(&f1)
                        .mul(&f3);
                    out.add_term((k1 + k2, r1 + r2, n1 + n2), coeff);
                }
            }
        }
    }
    Ok(out)
}

/// Image of the normal-ordered monomial basis in the word basis of the
/// cotwisted ring: `g^r p^n  ↦  g^r • p • ... • p` (n bullet factors).
///
/// This is the algebra isomorphism between the normal-ordered algebra and
/// the cotwisted commutative ring; it is the identity on `p`-degree ≤ 1 and
/// unitriangular in the `p`-degree filtration.
pub fn to_word_basis(e: &PlanckElem) -> Result<PlanckElem, PlanckError> {
    check_gp_only(e)?;
    // bullet powers of p, built once up to the needed degree
    let maxn = e.p_degree();
    let mut ppow: Vec<PlanckElem> = vec![PlanckElem::one()];
    for n in 1..=maxn {
        let prev = ppow[(n - 1) as usize].clone();
        ppow.push(bullet_raw(&PlanckElem::p(), &prev)?);
    }
    let mut out = PlanckElem::zero();
    for ((_k, r, n), c) in e.terms() {
        let word = bullet_raw(&PlanckElem::g(*r), &ppow[*n as usize])?;
        out = out.add(&word.scale(c));
    }
    Ok(out)
}

/// Inverse of [`to_word_basis`], by descending `p`-degree elimination.
pub fn from_word_basis(e: &PlanckElem) -> Result<PlanckElem, PlanckError> {
    check_gp_only(e)?;
    let mut remainder = e.clone();
    let mut out = PlanckElem::zero();
    while !remainder.is_zero() {
        let top = remainder.p_degree();
        let mut head = PlanckElem::zero();
        for ((k, r, n), c) in remainder.terms() {
            if *n == top {
                head.add_term((*k, *r, *n), c.clone());
            }
        }
        out = out.add(&head);
        remainder = remainder.sub(&to_word_basis(&head)?);
        if !remainder.is_zero() && remainder.p_degree() >= top && top > 0 {
            // to_word_basis is unitriangular, so the degree must drop
            unreachable!("word-basis elimination failed to reduce degree");
        }
        if top == 0 {
            break;
        }
    }
    Ok(out)
}

/// The cotwisted product transported to the normal-ordered basis.  By the
/// twisting theorem this agrees exactly with [`normal_mul`]; the two sides
/// go through entirely independent code paths (rewrite rules vs. cocycle
/// convolutions).
pub fn bullet_product(a: &PlanckElem, b: &PlanckElem) -> Result<PlanckElem, PlanckError> {
    let wa = to_word_basis(a)?;
    let wb = to_word_basis(b)?;
    from_word_basis(&bullet_raw(&wa, &wb)?)
}

/// `U(h) = χ(h₁ ⊗ S h₂)` entering the cotwisted antipode.
pub fn u_functional(e: &PlanckElem, inverse: bool) -> Result<ParamScalar, PlanckError> {
    check_gp_only(e)?;
    let mut out = ParamScalar::zero();
    for (key, c) in e.terms() {
        for (legs, lc) in iterated_legs(*key, 2) {
            let v = if inverse {
                // U^{-1}(h) = χ^{-1}(S h₁ ⊗ h₂)
                let sh = antipode_classical(&PlanckElem::monomial(ParamScalar::one(), legs[0].0, legs[0].1, legs[0].2));
                chi_eval(&sh, &PlanckElem::monomial(ParamScalar::one(), legs[1].0, legs[1].1, legs[1].2), true)?
            } else {
                let sh = antipode_classical(&PlanckElem::monomial(ParamScalar::one(), legs[1].0, legs[1].1, legs[1].2));
                chi_eval(&PlanckElem::monomial(ParamScalar::one(), legs[0].0, legs[0].1, legs[0].2), &sh, false)?
            };
            out = out.add(&c.mul(&lc).mul(&v));
        }
    }
    Ok(out)
}

/// Cotwisted antipode `S^χ h = U(h₁) S(h₂) U^{-1}(h₃)` on `g, p`-symbols.
pub fn antipode_twisted(e: &PlanckElem) -> Result<PlanckElem, PlanckError> {
    check_gp_only(e)?;
    let mut out = PlanckElem::zero();
    for (key, c) in e.terms() {
        for (legs, lc) in iterated_legs(*key, 3) {
            let u = u_functional(&PlanckElem::monomial(ParamScalar::one(), legs[0].0, legs[0].1, legs[0].2), false)?;
            if u.is_zero() {
                continue;
            }
            let uinv = u_functional(&PlanckElem::monomial(ParamScalar::one(), legs[2].0, legs[2].1, legs[2].2), true)?;
            if uinv.is_zero() {
                continue;
            }
            let mid = antipode_classical(&PlanckElem::monomial(ParamScalar::one(), legs[1].0, legs[1].1, legs[1].2));
            out = out.add(&mid.scale(&c.mul(&lc).mul(&u).mul(&uinv)));
        }
    }
    Ok(out)
}

/// Exhaustive exact check of the cocycle identity
/// `χ(g₁⊗f₁) χ(h ⊗ g₂f₂) = χ(h₁⊗g₁) χ(h₂g₂ ⊗ f)`, convolution
/// invertibility in both orders, and unitality, on all basis triples
/// `p^n g^r` with `n,m,l ≤ maxdeg` and `|r|,|s|,|t| ≤ g_range`.
pub fn cocycle_condition_check(maxdeg: u32, g_range: i32) -> bool {
    let monos: Vec<MonoKey> = (0..=maxdeg)
        .flat_map(|n| (-g_range..=g_range).map(move |r| (0u32, r, n)))
        .collect();

    // unitality: χ(1 ⊗ h) = ε(h) = χ(h ⊗ 1)
    for m in monos.iter() {
        let e = PlanckElem::monomial(ParamScalar::one(), m.0, m.1, m.2);
        let eps = counit(&e);
        for inv in [false, true] {
            if chi_mono((0, 0, 0), *m, inv) != eps || chi_mono(*m, (0, 0, 0), inv) != eps {
                return false;
            }
        }
    }

    // convolution inverse in both orders
    for a in monos.iter() {
        for b in monos.iter() {
            let legs_a = iterated_legs(*a, 2);
            let legs_b = iterated_legs(*b, 2);
            let mut fwd = ParamScalar::zero();
            let mut bwd = ParamScalar::zero();
            for (sa, ca) in legs_a.iter() {
                for (sb, cb) in legs_b.iter() {
                    let c = ca.mul(cb);
                    fwd = fwd.add(
                        &c.mul(&chi_mono(sa[0], sb[0], false))
                            .mul(&chi_mono(sa[1], sb[1], true)),
                    );
                    bwd = bwd.add(
                        &c.mul(&chi_mono(sa[0], sb[0], true))
                            .mul(&chi_mono(sa[1], sb[1], false)),
                    );
                }
            }
            let ea = counit(&PlanckElem::monomial(ParamScalar::one(), a.0, a.1, a.2));
            let eb = counit(&PlanckElem::monomial(ParamScalar::one(), b.0, b.1, b.2));
            let target = ea.mul(&eb);
            if fwd != target || bwd != target {
                return false;
            }
        }
    }

    // 3-slot cocycle identity
    for h in monos.iter() {
        for g in monos.iter() {
            for f in monos.iter() {
                if !cocycle_identity_holds(*h, *g, *f) {
                    return false;
                }
            }
        }
    }
    true
}

pub(crate) fn cocycle_identity_holds(h: MonoKey, g: MonoKey, f: MonoKey) -> bool {
    // LHS: sum over Δg, Δf of χ(g₁⊗f₁) χ(h ⊗ g₂f₂)
    let mut lhs = ParamScalar::zero();
    for (sg, cg) in iterated_legs(g, 2) {
        for (sf, cf) in iterated_legs(f, 2) {
            let v1 = chi_mono(sg[0], sf[0], false);
            if v1.is_zero() {
                continue;
            }
            let prod = (
                sg[1].0 + sf[1].0,
                sg[1].1 + sf[1].1,
                sg[1].2 + sf[1].2,
            );
            lhs = lhs.add(&cg.mul(&cf).mul(&v1).mul(&chi_mono(h, prod, false)));
        }
    }
    // RHS: sum over Δh, Δg of χ(h₁⊗g₁) χ(h₂g₂ ⊗ f)
    let mut rhs = ParamScalar::zero();
    for (sh, ch) in iterated_legs(h, 2) {
        for (sg, cg) in iterated_legs(g, 2) {
            let v1 = chi_mono(sh[0], sg[0], false);
            if v1.is_zero() {
                continue;
            }
            let prod = (
                sh[1].0 + sg[1].0,
                sh[1].1 + sg[1].1,
                sh[1].2 + sg[1].2,
            );
            rhs = rhs.add(&ch.mul(&cg).mul(&v1).mul(&chi_mono(prod, f, false)));
        }
    }
    lhs == rhs
}

/// Seeded random symbols for property suites.
pub mod sampling {
    use super::*;
    use rand::Rng;

    /// A random element with up to `max_terms` monomials, exponents bounded
    /// by the given limits, and small Gaussian-integer `iA`-decorated
    /// coefficients.
    pub fn random_elem<R: Rng>(
        rng: &mut R,
        max_terms: u32,
        max_k: u32,
        max_r: i32,
        max_n: u32,
    ) -> PlanckElem {
        let mut out = PlanckElem::zero();
        let terms = rng.gen_range(1..=max_terms.max(1));
        for _ in 0..terms {
            let k = rng.gen_range(0..=max_k);
            let r = rng.gen_range(-max_r..=max_r);
            let n = rng.gen_range(0..=max_n);
            let re = rng.gen_range(-3i64..=3);
            let im = rng.gen_range(-2i64..=2);
            let a_pow = rng.gen_range(0..=1u32);
            let c = ParamScalar::monomial(
                GaussQ::new(
                    num::BigRational::from_integer(re.into()),
                    num::BigRational::from_integer(im.into()),
                ),
                a_pow,
                0,
            );
            out.add_term((k, r, n), c);
        }
        out
    }

    /// A random x-free element (for cocycle-restricted operations).
    pub fn random_gp_elem<R: Rng>(rng: &mut R, max_terms: u32, max_r: i32, max_n: u32) -> PlanckElem {
        random_elem(rng, max_terms, 0, max_r, max_n)
    }
}

// ---------------------------------------------------------------------------
// Rendering and parsing
// ---------------------------------------------------------------------------

impl fmt::Display for PlanckElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((k, r, n), c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            let coeff = c.to_string();
            let is_unit_coeff = coeff == "1" && (*k > 0 || *r != 0 || *n > 0);
            if !is_unit_coeff {
                if c.num_terms() > 1 {
                    parts.push(format!("({})", coeff));
                } else {
                    parts.push(coeff);
                }
            }
            if *k > 0 {
                parts.push(if *k == 1 { "x".into() } else { format!("x^{}", k) });
            }
            if *r != 0 {
                parts.push(if *r == 1 { "g".into() } else { format!("g^{}", r) });
            }
            if *n > 0 {
                parts.push(if *n == 1 { "p".into() } else { format!("p^{}", n) });
            }
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PlanckElem {
    type Err = PlanckError;

    /// Parses sums of `c * x^k g^r p^n` terms; the coefficient part follows
    /// the scalar grammar and may be omitted.
    fn from_str(s: &str) -> Result<Self, PlanckError> {
        fn parse_term(lx: &mut crate::scalar::ScalarLexer<'_>) -> Result<PlanckElem, PlanckError> {
            let mut coeff = ParamScalar::one();
            let mut k: u32 = 0;
            let mut r: i32 = 0;
            let mut n: u32 = 0;
            let mut saw = false;
            while lx.peek() == Some('-') {
                lx.bump();
                coeff = coeff.neg();
            }
            loop {
                match lx.peek() {
                    Some('x') => {
                        lx.bump();
                        let e = if lx.eat('^') {
                            lx.integer()
                                .map_err(PlanckError::Scalar)?
                                .to_string()
                                .parse::<u32>()
                                .map_err(|_| PlanckError::Parse("x power must be >= 0".into()))?
                        } else {
                            1
                        };
                        k += e;
                        saw = true;
                    }
                    Some('g') => {
                        lx.bump();
                        let e = if lx.eat('^') {
                            lx.integer()
                                .map_err(PlanckError::Scalar)?
                                .to_string()
                                .parse::<i32>()
                                .map_err(|_| PlanckError::Parse("g power out of range".into()))?
                        } else {
                            1
                        };
                        r += e;
                        saw = true;
                    }
                    Some('p') => {
                        lx.bump();
                        let e = if lx.eat('^') {
                            lx.integer()
                                .map_err(PlanckError::Scalar)?
                                .to_string()
                                .parse::<u32>()
                                .map_err(|_| PlanckError::Parse("p power must be >= 0".into()))?
                        } else {
                            1
                        };
                        n += e;
                        saw = true;
                    }
                    Some('*') => {
                        lx.bump();
                    }
                    Some(c2)
                        if c2 == '(' || c2 == 'A' || c2 == 'G' || c2 == 'i'
                            || c2.is_ascii_digit() =>
                    {
                        let s = crate::scalar::parse_scalar_factors(lx)
                            .map_err(PlanckError::Scalar)?;
                        coeff = coeff.mul(&s);
                        saw = true;
                    }
                    _ => break,
                }
            }
            if !saw {
                return Err(PlanckError::Parse("expected term".into()));
            }
            Ok(PlanckElem::monomial(coeff, k, r, n))
        }

        let mut lx = crate::scalar::ScalarLexer::new(s);
        let mut acc = parse_term(&mut lx)?;
        loop {
            match lx.peek() {
                Some('+') => {
                    lx.bump();
                    acc = acc.add(&parse_term(&mut lx)?);
                }
                Some('-') => {
                    lx.bump();
                    acc = acc.sub(&parse_term(&mut lx)?);
                }
                None => break,
                Some(c) => return Err(PlanckError::Parse(format!("unexpected '{}'", c))),
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ia() -> ParamScalar {
        ParamScalar::i_a()
    }

    #[test]
    fn generator_relation_pg() {
        // p·g - g·p = iA(g - g²)
        let lhs = commutator(&PlanckElem::p(), &PlanckElem::g(1));
        let mut expected = PlanckElem::monomial(ia(), 0, 1, 0);
        expected.add_term((0, 2, 0), ia().neg());
        assert_eq!(lhs, expected);
    }

    #[test]
    fn p_times_g_squared() {
        // p·g² = g²p + 2iA(g² - g³)
        let lhs = normal_mul(&PlanckElem::p(), &PlanckElem::g(2));
        let mut expected = PlanckElem::monomial(ParamScalar::one(), 0, 2, 1);
        expected.add_term((0, 2, 0), ia().scale_int(2));
        expected.add_term((0, 3, 0), ia().scale_int(-2));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn classical_limit_commutes() {
        let lhs = commutator(&PlanckElem::p(), &PlanckElem::g(1)).at_a_zero();
        assert!(lhs.is_zero());
    }

    #[test]
    fn closed_rewrite_rule_matches_single_steps() {
        // p·g^r closed rule against r-fold application of the one-step
        // relations, including negative powers.
        for r in -3i32..=3 {
            let direct = normal_mul(&PlanckElem::p(), &PlanckElem::g(r));
            // build by stepping one g (or g^{-1}) at a time from p
            let step = if r >= 0 { 1 } else { -1 };
            let mut acc = PlanckElem::p();
            for _ in 0..r.abs() {
                acc = normal_mul(&acc, &PlanckElem::g(step));
            }
            assert_eq!(direct, acc, "r = {}", r);
        }
    }

    #[test]
    fn px_relation() {
        // [p, x] = iAG(g - 1)
        let lhs = commutator(&PlanckElem::p(), &PlanckElem::x());
        let iag = ia().mul(&ParamScalar::g_pow(1));
        let mut expected = PlanckElem::monomial(iag.clone(), 0, 1, 0);
        expected.add_term((0, 0, 0), iag.neg());
        assert_eq!(lhs, expected);
    }

    #[test]
    fn coproduct_of_p_squared() {
        // Δ(p²) = p²⊗g² + 2 p⊗gp + 1⊗p²
        let cp = coproduct(&PlanckElem::monomial(ParamScalar::one(), 0, 0, 2));
        let mut expected = TensorElem::zero();
        expected.add_term((0, 0, 2), (0, 2, 0), ParamScalar::one());
        expected.add_term((0, 0, 1), (0, 1, 1), ParamScalar::from_int(2));
        expected.add_term((0, 0, 0), (0, 0, 2), ParamScalar::one());
        assert_eq!(cp, expected);
    }

    #[test]
    fn counit_examples() {
        assert!(counit(&PlanckElem::monomial(ParamScalar::one(), 0, -2, 3)).is_zero());
        assert_eq!(counit(&PlanckElem::g(5)), ParamScalar::one());
    }

    #[test]
    fn chi_values() {
        // χ(p ⊗ g) = -iA
        let v = chi_eval(&PlanckElem::p(), &PlanckElem::g(1), false).unwrap();
        assert_eq!(v, ia().neg());
        // χ(p² ⊗ g²) = (iA)²(-2)(-3) = 6(iA)² = -6A²
        let p2 = PlanckElem::monomial(ParamScalar::one(), 0, 0, 2);
        let v = chi_eval(&p2, &PlanckElem::g(2), false).unwrap();
        assert_eq!(v, ia().mul(&ia()).scale_int(6));
        // unitality against a nontrivial monomial
        let m = PlanckElem::monomial(ParamScalar::one(), 0, -3, 5);
        let v = chi_eval(&PlanckElem::one(), &m, false).unwrap();
        assert_eq!(v, counit(&m));
    }

    #[test]
    fn chi_rejects_x() {
        let e = PlanckElem::x();
        assert_eq!(
            chi_eval(&e, &PlanckElem::g(1), false),
            Err(PlanckError::UnsupportedGenerator)
        );
    }

    #[test]
    fn bullet_generators() {
        // p•g - g•p = iA(1-g)g on the raw classical symbols
        let pg = bullet_raw(&PlanckElem::p(), &PlanckElem::g(1)).unwrap();
        let gp = bullet_raw(&PlanckElem::g(1), &PlanckElem::p()).unwrap();
        let comm = pg.sub(&gp);
        let mut expected = PlanckElem::monomial(ia(), 0, 1, 0);
        expected.add_term((0, 2, 0), ia().neg());
        assert_eq!(comm, expected);
        // g•p = gp with no correction
        assert_eq!(gp, PlanckElem::monomial(ParamScalar::one(), 0, 1, 1));
    }

    #[test]
    fn bullet_equals_normal_mul_through_word_basis() {
        let p2 = PlanckElem::monomial(ParamScalar::one(), 0, 0, 2);
        let g = PlanckElem::g(1);
        let lhs = bullet_product(&p2, &g).unwrap();
        let rhs = normal_mul(&p2, &g);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn raw_bullet_differs_from_normal_mul_without_conversion() {
        // The literal cotwist formula on classical basis monomials differs
        // from the rewrite-rule product at p-degree 2 by (iA)² g (1-g);
        // the word-basis conversion is what removes the discrepancy.
        let p2 = PlanckElem::monomial(ParamScalar::one(), 0, 0, 2);
        let g = PlanckElem::g(1);
        let raw = bullet_raw(&p2, &g).unwrap();
        let nm = normal_mul(&p2, &g);
        let diff = nm.sub(&raw);
        let ia2 = ia().mul(&ia());
        let mut expected = PlanckElem::monomial(ia2.clone(), 0, 1, 0);
        expected.add_term((0, 2, 0), ia2.neg());
        assert_eq!(diff, expected);
    }

    #[test]
    fn cocycle_check_small() {
        assert!(cocycle_condition_check(2, 2));
    }

    #[test]
    fn perturbed_chi_fails_identity() {
        // replacing χ(p⊗g) by the wrong sign breaks the triple (p, p, g):
        // recompute the identity by hand with a sign flip on one factor.
        let h = (0u32, 0i32, 1u32);
        let g = (0u32, 0, 1);
        let f = (0u32, 1, 0);
        assert!(cocycle_identity_holds(h, g, f));
        // direct recomputation with χ(p⊗g) negated on the LHS only
        let mut lhs = ParamScalar::zero();
        for (sg, cg) in super::iterated_legs(g, 2) {
            for (sf, cf) in super::iterated_legs(f, 2) {
                let mut v1 = super::chi_mono(sg[0], sf[0], false);
                if sg[0] == (0, 0, 1) && sf[0] == (0, 1, 0) {
                    v1 = v1.neg();
                }
                if v1.is_zero() {
                    continue;
                }
                let prod = (sg[1].0 + sf[1].0, sg[1].1 + sf[1].1, sg[1].2 + sf[1].2);
                lhs = lhs.add(&cg.mul(&cf).mul(&v1).mul(&super::chi_mono(h, prod, false)));
            }
        }
        let mut rhs = ParamScalar::zero();
        for (sh, ch) in super::iterated_legs(h, 2) {
            for (sg, cg) in super::iterated_legs(g, 2) {
                let v1 = super::chi_mono(sh[0], sg[0], false);
                if v1.is_zero() {
                    continue;
                }
                let prod = (sh[1].0 + sg[1].0, sh[1].1 + sg[1].1, sh[1].2 + sg[1].2);
                rhs = rhs.add(&ch.mul(&cg).mul(&v1).mul(&super::chi_mono(prod, f, false)));
            }
        }
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn twisted_antipode_on_generators() {
        // S^χ(g) = g^{-1}; S^χ(p) = U(p)S(g)·1 + S(p) + U^{-1}(p)
        //        = iA g^{-1} - p g^{-1} - iA
        let sg = antipode_twisted(&PlanckElem::g(1)).unwrap();
        assert_eq!(sg, PlanckElem::g(-1));
        let sp = antipode_twisted(&PlanckElem::p()).unwrap();
        let mut expected = PlanckElem::monomial(ParamScalar::one().neg(), 0, -1, 1);
        expected.add_term((0, -1, 0), ia());
        expected.add_term((0, 0, 0), ia().neg());
        assert_eq!(sp, expected);
    }

    #[test]
    fn deformed_coproduct_is_algebra_map() {
        let a: PlanckElem = "g p".parse().unwrap();
        let b: PlanckElem = "p^2".parse().unwrap();
        let lhs = coproduct_deformed(&normal_mul(&a, &b));
        let rhs = tensor_normal_mul(&coproduct_deformed(&a), &coproduct_deformed(&b));
        assert_eq!(lhs, rhs);
        // differs from the binomial expansion at p-degree 2
        assert_ne!(coproduct_deformed(&b), coproduct(&b));
    }

    #[test]
    fn word_basis_intertwines_coalgebras() {
        // ω is a coalgebra map: Δ_binomial(ω(m)) = (ω⊗ω)(Δ_deformed(m))
        for s in ["p^2", "g^-1 p^3", "g^2 p"] {
            let m: PlanckElem = s.parse().unwrap();
            let lhs = coproduct(&to_word_basis(&m).unwrap());
            let mut rhs = TensorElem::zero();
            for ((l, r), c) in coproduct_deformed(&m).terms() {
                let wl = to_word_basis(&PlanckElem::monomial(c.clone(), l.0, l.1, l.2)).unwrap();
                let wr = to_word_basis(&PlanckElem::monomial(ParamScalar::one(), r.0, r.1, r.2))
                    .unwrap();
                for (kl, cl) in wl.terms() {
                    for (kr, cr) in wr.terms() {
                        rhs.add_term(*kl, *kr, cl.mul(cr));
                    }
                }
            }
            assert_eq!(lhs, rhs, "coalgebra intertwining failed on {}", s);
        }
    }

    #[test]
    fn parse_and_render() {
        let e: PlanckElem = "2 x^2 g^-1 p + iA p - g".parse().unwrap();
        let text = e.to_string();
        let back: PlanckElem = text.parse().unwrap();
        assert_eq!(back, e);
    }
}
