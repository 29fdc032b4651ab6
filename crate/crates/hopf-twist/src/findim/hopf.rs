//! Finite-dimensional Hopf algebras as structure tensors, with every
//! axiom checkable by exact arithmetic.

use super::linalg::*;
use super::FindimError;
use crate::scalar::GaussQ;
use std::sync::Arc;

/// Structure tensors of a finite-dimensional Hopf algebra over the
/// Gaussian rationals.
///
/// `mul[i*dim + j]` is the product `e_i e_j`, `comul[i]` the coproduct
/// `Δe_i` over the `dim²` tensor basis (`(a,b) → a·dim + b`), `counit`
/// and `unit` sparse (co)vectors, and `antipode[i] = S e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinHopf {
    pub dim: usize,
    pub mul: Vec<QVec>,
    pub unit: QVec,
    pub comul: Vec<QVec>,
    pub counit: QVec,
    pub antipode: Vec<QVec>,
    pub antipode_inv: Vec<QVec>,
}

impl FinHopf {
    pub fn new(
        dim: usize,
        mul: Vec<QVec>,
        unit: QVec,
        comul: Vec<QVec>,
        counit: QVec,
        antipode: Vec<QVec>,
        antipode_inv: Vec<QVec>,
    ) -> Result<Arc<Self>, FindimError> {
        if mul.len() != dim * dim || comul.len() != dim || antipode.len() != dim
            || antipode_inv.len() != dim
        {
            return Err(FindimError::DimensionMismatch(format!(
                "structure tensor sizes inconsistent with dim {}",
                dim
            )));
        }
        let in_range = |v: &QVec, bound: usize| v.keys().all(|k| *k < bound);
        if !mul.iter().all(|v| in_range(v, dim))
            || !comul.iter().all(|v| in_range(v, dim * dim))
            || !antipode.iter().all(|v| in_range(v, dim))
            || !antipode_inv.iter().all(|v| in_range(v, dim))
            || !in_range(&unit, dim)
            || !in_range(&counit, dim)
        {
            return Err(FindimError::DimensionMismatch("index out of range".into()));
        }
        Ok(Arc::new(FinHopf { dim, mul, unit, comul, counit, antipode, antipode_inv }))
    }

    /// Derive the antipode inverse by matrix inversion.
    pub fn solve_antipode_inv(dim: usize, antipode: &[QVec]) -> Result<Vec<QVec>, FindimError> {
        let m = QMat { rows: dim, cols: antipode.to_vec() };
        let inv = m
            .inverse()
            .ok_or_else(|| FindimError::Singular("antipode is not invertible".into()))?;
        Ok(inv.cols)
    }

    pub fn mul_elem(&self, a: &QVec, b: &QVec) -> QVec {
        let mut out = QVec::new();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                vec_add_scaled(&mut out, &self.mul[i * self.dim + j], &ca.mul(cb));
            }
        }
        out
    }

    pub fn comul_elem(&self, a: &QVec) -> QVec {
        let mut out = QVec::new();
        for (i, c) in a.iter() {
            vec_add_scaled(&mut out, &self.comul[*i], c);
        }
        out
    }

    pub fn counit_elem(&self, a: &QVec) -> GaussQ {
        vec_dot(&self.counit, a)
    }

    pub fn antipode_elem(&self, a: &QVec) -> QVec {
        let mut out = QVec::new();
        for (i, c) in a.iter() {
            vec_add_scaled(&mut out, &self.antipode[*i], c);
        }
        out
    }

    pub fn antipode_inv_elem(&self, a: &QVec) -> QVec {
        let mut out = QVec::new();
        for (i, c) in a.iter() {
            vec_add_scaled(&mut out, &self.antipode_inv[*i], c);
        }
        out
    }

    /// Multiplication in `H⊗H` (componentwise).
    pub fn mul2_elem(&self, a: &QVec, b: &QVec) -> QVec {
        let d = self.dim;
        let mut out = QVec::new();
        for (ij, ca) in a.iter() {
            let (i1, i2) = (ij / d, ij % d);
            for (kl, cb) in b.iter() {
                let (k1, k2) = (kl / d, kl % d);
                let p1 = &self.mul[i1 * d + k1];
                let p2 = &self.mul[i2 * d + k2];
                let c = ca.mul(cb);
                for (m1, c1) in p1.iter() {
                    for (m2, c2) in p2.iter() {
                        let key = m1 * d + m2;
                        let entry = out.entry(key).or_insert_with(GaussQ::zero);
                        *entry = entry.add(&c.mul(c1).mul(c2));
                        if entry.is_zero() {
                            out.remove(&key);
                        }
                    }
                }
            }
        }
        out
    }

    /// Multiplication in `H^{⊗3}` (componentwise).
    pub fn mul3_elem(&self, a: &QVec, b: &QVec) -> QVec {
        let d = self.dim;
        let d2 = d * d;
        let mut out = QVec::new();
        for (idx_a, ca) in a.iter() {
            let (a1, a2, a3) = (idx_a / d2, (idx_a / d) % d, idx_a % d);
            for (idx_b, cb) in b.iter() {
                let (b1, b2, b3) = (idx_b / d2, (idx_b / d) % d, idx_b % d);
                let c = ca.mul(cb);
                for (m1, c1) in self.mul[a1 * d + b1].iter() {
                    for (m2, c2) in self.mul[a2 * d + b2].iter() {
                        for (m3, c3) in self.mul[a3 * d + b3].iter() {
                            let key = (m1 * d + m2) * d + m3;
                            let entry = out.entry(key).or_insert_with(GaussQ::zero);
                            *entry = entry.add(&c.mul(c1).mul(c2).mul(c3));
                            if entry.is_zero() {
                                out.remove(&key);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Legs of the iterated coproduct of a basis element: pairs of
    /// (leg indices, coefficient) for `Δ^{(legs-1)} e_i`.
    pub fn iter_comul_basis(&self, i: usize, legs: usize) -> Vec<(Vec<usize>, GaussQ)> {
        assert!(legs >= 1);
        let d = self.dim;
        let mut acc: Vec<(Vec<usize>, GaussQ)> = vec![(vec![i], GaussQ::one())];
        for _ in 1..legs {
            let mut next = Vec::new();
            for (seq, c) in acc.iter() {
                let last = *seq.last().unwrap();
                for (ab, cc) in self.comul[last].iter() {
                    let mut s = seq.clone();
                    s.pop();
                    s.push(ab / d);
                    s.push(ab % d);
                    next.push((s, c.mul(cc)));
                }
            }
            acc = next;
        }
        acc
    }

    /// Product table of the dual algebra: `dual_mul(a, b)[m] = Δe_m` at
    /// `(a, b)` — the convolution product `φ^a ∗ φ^b` of dual basis
    /// functionals.
    pub fn dual_mul_basis(&self, a: usize, b: usize) -> QVec {
        let d = self.dim;
        let key = a * d + b;
        let mut out = QVec::new();
        for (m, cp) in self.comul.iter().enumerate() {
            if let Some(c) = cp.get(&key) {
                out.insert(m, c.clone());
            }
        }
        out
    }

    /// Convolution product of two functionals (elements of `H*` as dense
    /// coefficient vectors over the dual basis).
    pub fn dual_mul_elem(&self, a: &QVec, b: &QVec) -> QVec {
        let d = self.dim;
        let mut out = QVec::new();
        for (m, cp) in self.comul.iter().enumerate() {
            let mut acc = GaussQ::zero();
            for (xy, c) in cp.iter() {
                let (x, y) = (xy / d, xy % d);
                if let (Some(ca), Some(cb)) = (a.get(&x), b.get(&y)) {
                    acc = acc.add(&c.mul(ca).mul(cb));
                }
            }
            if !acc.is_zero() {
                out.insert(m, acc);
            }
        }
        out
    }

    /// `S* φ` for a functional: `⟨S*φ, e_c⟩ = ⟨φ, S e_c⟩`.
    pub fn dual_antipode_elem(&self, phi: &QVec) -> QVec {
        let mut out = QVec::new();
        for c in 0..self.dim {
            let v = vec_dot(phi, &self.antipode[c]);
            if !v.is_zero() {
                out.insert(c, v);
            }
        }
        out
    }
}

/// One named axiom check with the first failing basis tuple, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: String,
    pub pass: bool,
    pub first_failure: Option<Vec<usize>>,
}

/// Result of [`check_hopf`]: one entry per axiom family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl std::fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{:<24} {}{}",
                c.name,
                if c.pass { "pass" } else { "FAIL" },
                c.first_failure
                    .as_ref()
                    .map(|ix| format!(" at {:?}", ix))
                    .unwrap_or_default()
            )?;
        }
        Ok(())
    }
}

/// Exact verification of every Hopf axiom; each failed family records the
/// first failing basis index tuple.
pub fn check_hopf(h: &FinHopf) -> AxiomReport {
    let d = h.dim;
    let mut checks = Vec::new();
    let mut push = |name: &str, failure: Option<Vec<usize>>| {
        checks.push(AxiomCheck { name: name.to_string(), pass: failure.is_none(), first_failure: failure });
    };

    // associativity
    let mut fail = None;
    'assoc: for i in 0..d {
        for j in 0..d {
            let ij = h.mul[i * d + j].clone();
            for k in 0..d {
                let lhs = h.mul_elem(&ij, &vec_basis(k));
                let rhs = h.mul_elem(&vec_basis(i), &h.mul[j * d + k]);
                if lhs != rhs {
                    fail = Some(vec![i, j, k]);
                    break 'assoc;
                }
            }
        }
    }
    push("associativity", fail);

    // unit
    let mut fail = None;
    for i in 0..d {
        let e = vec_basis(i);
        if h.mul_elem(&h.unit, &e) != e || h.mul_elem(&e, &h.unit) != e {
            fail = Some(vec![i]);
            break;
        }
    }
    push("unit", fail);

    // coassociativity: (Δ⊗id)Δ = (id⊗Δ)Δ
    let mut fail = None;
    for i in 0..d {
        let mut lhs = QVec::new();
        let mut rhs = QVec::new();
        for (ab, c) in h.comul[i].iter() {
            let (a, b) = (ab / d, ab % d);
            for (xy, c2) in h.comul[a].iter() {
                let key = xy * d + b;
                let entry = lhs.entry(key).or_insert_with(GaussQ::zero);
                *entry = entry.add(&c.mul(c2));
                if entry.is_zero() {
                    lhs.remove(&key);
                }
            }
            for (xy, c2) in h.comul[b].iter() {
                let key = a * d * d + xy;
                let entry = rhs.entry(key).or_insert_with(GaussQ::zero);
                *entry = entry.add(&c.mul(c2));
                if entry.is_zero() {
                    rhs.remove(&key);
                }
            }
        }
        if lhs != rhs {
            fail = Some(vec![i]);
            break;
        }
    }
    push("coassociativity", fail);

    // counit
    let mut fail = None;
    for i in 0..d {
        let mut left = QVec::new();
        let mut right = QVec::new();
        for (ab, c) in h.comul[i].iter() {
            let (a, b) = (ab / d, ab % d);
            if let Some(e) = h.counit.get(&a) {
                let entry = left.entry(b).or_insert_with(GaussQ::zero);
                *entry = entry.add(&c.mul(e));
                if entry.is_zero() {
                    left.remove(&b);
                }
            }
            if let Some(e) = h.counit.get(&b) {
                let entry = right.entry(a).or_insert_with(GaussQ::zero);
                *entry = entry.add(&c.mul(e));
                if entry.is_zero() {
                    right.remove(&a);
                }
            }
        }
        if left != vec_basis(i) || right != vec_basis(i) {
            fail = Some(vec![i]);
            break;
        }
    }
    push("counit", fail);

    // bialgebra: Δ(e_i e_j) = Δe_i Δe_j, ε multiplicative, Δ(1) = 1⊗1
    let mut fail = None;
    'bialg: for i in 0..d {
        for j in 0..d {
            let lhs = h.comul_elem(&h.mul[i * d + j]);
            let rhs = h.mul2_elem(&h.comul[i], &h.comul[j]);
            if lhs != rhs {
                fail = Some(vec![i, j]);
                break 'bialg;
            }
            let el = h.counit_elem(&h.mul[i * d + j]);
            let er = h
                .counit
                .get(&i)
                .cloned()
                .unwrap_or_else(GaussQ::zero)
                .mul(&h.counit.get(&j).cloned().unwrap_or_else(GaussQ::zero));
            if el != er {
                fail = Some(vec![i, j]);
                break 'bialg;
            }
        }
    }
    if fail.is_none() {
        let du = h.comul_elem(&h.unit);
        let uu = vec_tensor(&h.unit, &h.unit, d);
        if du != uu || h.counit_elem(&h.unit) != GaussQ::one() {
            fail = Some(vec![]);
        }
    }
    push("bialgebra", fail);

    // antipode: S(h₁)h₂ = ε(h)1 = h₁S(h₂)
    let mut fail = None;
    for i in 0..d {
        let mut left = QVec::new();
        let mut right = QVec::new();
        for (ab, c) in h.comul[i].iter() {
            let (a, b) = (ab / d, ab % d);
            vec_add_scaled(&mut left, &h.mul_elem(&h.antipode[a], &vec_basis(b)), c);
            vec_add_scaled(&mut right, &h.mul_elem(&vec_basis(a), &h.antipode[b]), c);
        }
        let target = vec_scale(&h.unit, &h.counit.get(&i).cloned().unwrap_or_else(GaussQ::zero));
        if left != target || right != target {
            fail = Some(vec![i]);
            break;
        }
    }
    push("antipode", fail);

    // antipode inverse
    let mut fail = None;
    for i in 0..d {
        if h.antipode_inv_elem(&h.antipode[i]) != vec_basis(i)
            || h.antipode_elem(&h.antipode_inv[i]) != vec_basis(i)
        {
            fail = Some(vec![i]);
            break;
        }
    }
    push("antipode-inverse", fail);

    AxiomReport { checks }
}

/// The dual Hopf algebra on transposed structure tensors.
pub fn dual(h: &FinHopf) -> Result<Arc<FinHopf>, FindimError> {
    let d = h.dim;
    let mut mul = vec![QVec::new(); d * d];
    for (i, j) in (0..d).flat_map(|i| (0..d).map(move |j| (i, j))) {
        mul[i * d + j] = h.dual_mul_basis(i, j);
    }
    let mut comul = vec![QVec::new(); d];
    for (k, col) in h.mul.iter().enumerate() {
        for (m, c) in col.iter() {
            comul[*m].insert(k, c.clone());
        }
    }
    let unit = h.counit.clone();
    let counit = h.unit.clone();
    let transpose_table = |t: &[QVec]| -> Vec<QVec> {
        let mut out = vec![QVec::new(); d];
        for (j, col) in t.iter().enumerate() {
            for (i, c) in col.iter() {
                out[*i].insert(j, c.clone());
            }
        }
        out
    };
    FinHopf::new(
        d,
        mul,
        unit,
        comul,
        counit,
        transpose_table(&h.antipode),
        transpose_table(&h.antipode_inv),
    )
}

/// The opposite-algebra Hopf algebra `H^op` (antipode inverts).
pub fn opposite(h: &FinHopf) -> Result<Arc<FinHopf>, FindimError> {
    let d = h.dim;
    let mut mul = vec![QVec::new(); d * d];
    for i in 0..d {
        for j in 0..d {
            mul[i * d + j] = h.mul[j * d + i].clone();
        }
    }
    FinHopf::new(
        d,
        mul,
        h.unit.clone(),
        h.comul.clone(),
        h.counit.clone(),
        h.antipode_inv.clone(),
        h.antipode.clone(),
    )
}

/// Tensor product Hopf algebra `H1 ⊗ H2`.
pub fn tensor_product(h1: &FinHopf, h2: &FinHopf) -> Result<Arc<FinHopf>, FindimError> {
    let (d1, d2) = (h1.dim, h2.dim);
    let d = d1 * d2;
    let idx = |a: usize, b: usize| a * d2 + b;
    let mut mul = vec![QVec::new(); d * d];
    for a1 in 0..d1 {
        for a2 in 0..d2 {
            for b1 in 0..d1 {
                for b2 in 0..d2 {
                    mul[idx(a1, a2) * d + idx(b1, b2)] =
                        vec_tensor(&h1.mul[a1 * d1 + b1], &h2.mul[a2 * d2 + b2], d2);
                }
            }
        }
    }
    let mut comul = vec![QVec::new(); d];
    for a1 in 0..d1 {
        for a2 in 0..d2 {
            let mut out = QVec::new();
            for (xy1, c1) in h1.comul[a1].iter() {
                let (x1, y1) = (xy1 / d1, xy1 % d1);
                for (xy2, c2) in h2.comul[a2].iter() {
                    let (x2, y2) = (xy2 / d2, xy2 % d2);
                    out.insert(idx(x1, x2) * d + idx(y1, y2), c1.mul(c2));
                }
            }
            comul[idx(a1, a2)] = out;
        }
    }
    let unit = vec_tensor(&h1.unit, &h2.unit, d2);
    let counit = vec_tensor(&h1.counit, &h2.counit, d2);
    let anti = |t1: &[QVec], t2: &[QVec]| -> Vec<QVec> {
        let mut out = vec![QVec::new(); d];
        for a1 in 0..d1 {
            for a2 in 0..d2 {
                out[idx(a1, a2)] = vec_tensor(&t1[a1], &t2[a2], d2);
            }
        }
        out
    };
    FinHopf::new(
        d,
        mul,
        unit,
        comul,
        counit,
        anti(&h1.antipode, &h2.antipode),
        anti(&h1.antipode_inv, &h2.antipode_inv),
    )
}
