//! Two-cocycles on a finite-dimensional Hopf algebra, on either side:
//! functionals `χ: H⊗H → k` (twisting the product) or elements
//! `χ ∈ H⊗H` (twisting the coproduct).

use super::hopf::FinHopf;
use super::linalg::*;
use super::FindimError;
use crate::scalar::GaussQ;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CocycleSide {
    /// `χ: H⊗H → k`, convolution invertible.
    Dual,
    /// `χ ∈ H⊗H`, invertible in the tensor-square algebra.
    Algebra,
}

/// Cocycle data: a dense `dim×dim` coefficient matrix and its inverse
/// (convolution inverse on the dual side, algebra inverse on the algebra
/// side).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    pub side: CocycleSide,
    pub data: Vec<Vec<GaussQ>>,
    pub inverse: Vec<Vec<GaussQ>>,
}

impl Cocycle {
    pub fn dual_side(data: Vec<Vec<GaussQ>>, inverse: Vec<Vec<GaussQ>>) -> Self {
        Cocycle { side: CocycleSide::Dual, data, inverse }
    }

    pub fn algebra_side(data: Vec<Vec<GaussQ>>, inverse: Vec<Vec<GaussQ>>) -> Self {
        Cocycle { side: CocycleSide::Algebra, data, inverse }
    }

    /// The trivial cocycle `ε⊗ε` (dual side) or `1⊗1` (algebra side).
    pub fn trivial(h: &FinHopf, side: CocycleSide) -> Self {
        let d = h.dim;
        let mut data = vec![vec![GaussQ::zero(); d]; d];
        match side {
            CocycleSide::Dual => {
                for i in 0..d {
                    for j in 0..d {
                        data[i][j] = h
                            .counit
                            .get(&i)
                            .cloned()
                            .unwrap_or_else(GaussQ::zero)
                            .mul(&h.counit.get(&j).cloned().unwrap_or_else(GaussQ::zero));
                    }
                }
            }
            CocycleSide::Algebra => {
                for (i, ci) in h.unit.iter() {
                    for (j, cj) in h.unit.iter() {
                        data[*i][*j] = ci.mul(cj);
                    }
                }
            }
        }
        Cocycle { side, data: data.clone(), inverse: data }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    /// Evaluate the (dual-side) functional on a pair of sparse elements.
    pub fn eval(&self, a: &QVec, b: &QVec, inverse: bool) -> GaussQ {
        let m = if inverse { &self.inverse } else { &self.data };
        let mut acc = GaussQ::zero();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                if !m[*i][*j].is_zero() {
                    acc = acc.add(&ca.mul(cb).mul(&m[*i][*j]));
                }
            }
        }
        acc
    }

    /// The cocycle with its inverse swapped (twisting by it undoes the
    /// original twist).
    pub fn inverted(&self) -> Cocycle {
        Cocycle { side: self.side, data: self.inverse.clone(), inverse: self.data.clone() }
    }

    /// As a sparse element of `H⊗H` (algebra side view).
    pub fn as_tensor(&self, inverse: bool) -> QVec {
        let d = self.dim();
        let m = if inverse { &self.inverse } else { &self.data };
        let mut out = QVec::new();
        for (i, row) in m.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.insert(i * d + j, c.clone());
                }
            }
        }
        out
    }
}

/// Solve the convolution inverse of dual-side cocycle data:
/// `Σ χ(a₁⊗b₁) X(a₂⊗b₂) = ε(a)ε(b)` for all basis pairs.
pub fn solve_dual_inverse(h: &FinHopf, data: &[Vec<GaussQ>]) -> Result<Vec<Vec<GaussQ>>, FindimError> {
    let d = h.dim;
    let n = d * d;
    let mut mat = vec![vec![GaussQ::zero(); n]; n];
    let mut rhs = vec![GaussQ::zero(); n];
    for a in 0..d {
        for b in 0..d {
            let row = a * d + b;
            for (xy, ca) in h.comul[a].iter() {
                let (a1, a2) = (xy / d, xy % d);
                for (zw, cb) in h.comul[b].iter() {
                    let (b1, b2) = (zw / d, zw % d);
                    let coeff = ca.mul(cb).mul(&data[a1][b1]);
                    if !coeff.is_zero() {
                        let col = a2 * d + b2;
                        mat[row][col] = mat[row][col].add(&coeff);
                    }
                }
            }
            rhs[row] = h
                .counit
                .get(&a)
                .cloned()
                .unwrap_or_else(GaussQ::zero)
                .mul(&h.counit.get(&b).cloned().unwrap_or_else(GaussQ::zero));
        }
    }
    let x = solve_dense(&mat, &rhs)
        .ok_or_else(|| FindimError::InvalidCocycle("cocycle is not convolution invertible".into()))?;
    let mut inv = vec![vec![GaussQ::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            inv[i][j] = x[i * d + j].clone();
        }
    }
    Ok(inv)
}

/// Solve the algebra inverse in `H⊗H` of algebra-side cocycle data.
pub fn solve_algebra_inverse(
    h: &FinHopf,
    data: &[Vec<GaussQ>],
) -> Result<Vec<Vec<GaussQ>>, FindimError> {
    let d = h.dim;
    let n = d * d;
    // left-multiplication matrix of χ in H⊗H
    let mut chi = QVec::new();
    for (i, row) in data.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                chi.insert(i * d + j, c.clone());
            }
        }
    }
    let mut mat = vec![vec![GaussQ::zero(); n]; n];
    for col in 0..n {
        let image = h.mul2_elem(&chi, &vec_basis(col));
        for (i, c) in image.iter() {
            mat[*i][col] = c.clone();
        }
    }
    let unit2 = vec_tensor(&h.unit, &h.unit, d);
    let rhs = vec_to_dense(&unit2, n);
    let x = solve_dense(&mat, &rhs)
        .ok_or_else(|| FindimError::InvalidCocycle("cocycle is not invertible in H⊗H".into()))?;
    let xv = dense_to_vec(&x);
    // require a two-sided inverse
    if h.mul2_elem(&xv, &chi) != unit2 {
        return Err(FindimError::InvalidCocycle("one-sided inverse only".into()));
    }
    let mut inv = vec![vec![GaussQ::zero(); d]; d];
    for (ij, c) in xv.iter() {
        inv[ij / d][ij % d] = c.clone();
    }
    Ok(inv)
}

/// Dual-side coboundary `∂u(a⊗b) = u(a₁)u(b₁)u⁻¹(a₂b₂)` of a
/// convolution-invertible functional with `u(1) = 1`.
pub fn coboundary_dual_side(
    h: &FinHopf,
    u: &[GaussQ],
    u_inv: &[GaussQ],
) -> Result<Cocycle, FindimError> {
    let d = h.dim;
    let mut data = vec![vec![GaussQ::zero(); d]; d];
    let mut inverse = vec![vec![GaussQ::zero(); d]; d];
    for a in 0..d {
        for b in 0..d {
            let mut acc = GaussQ::zero();
            let mut acc_inv = GaussQ::zero();
            for (xy, ca) in h.comul[a].iter() {
                let (a1, a2) = (xy / d, xy % d);
                for (zw, cb) in h.comul[b].iter() {
                    let (b1, b2) = (zw / d, zw % d);
                    let prod = &h.mul[a2 * d + b2];
                    let u_inv_val: GaussQ = prod
                        .iter()
                        .fold(GaussQ::zero(), |s, (m, c)| s.add(&c.mul(&u_inv[*m])));
                    acc = acc.add(&ca.mul(cb).mul(&u[a1]).mul(&u[b1]).mul(&u_inv_val));
                    // inverse coboundary: u(a₁b₁) u⁻¹(a₂) u⁻¹(b₂)
                    let prod1 = &h.mul[a1 * d + b1];
                    let u_val: GaussQ = prod1
                        .iter()
                        .fold(GaussQ::zero(), |s, (m, c)| s.add(&c.mul(&u[*m])));
                    acc_inv = acc_inv.add(&ca.mul(cb).mul(&u_val).mul(&u_inv[a2]).mul(&u_inv[b2]));
                }
            }
            data[a][b] = acc;
            inverse[a][b] = acc_inv;
        }
    }
    Ok(Cocycle::dual_side(data, inverse))
}

/// Algebra-side coboundary `(v⊗v)Δ(v⁻¹)` of an invertible `v` with
/// `ε(v) = 1`; inverse `Δ(v)(v⁻¹⊗v⁻¹)`.
pub fn coboundary_algebra_side(
    h: &FinHopf,
    v: &QVec,
    v_inv: &QVec,
) -> Result<Cocycle, FindimError> {
    let d = h.dim;
    let vv = vec_tensor(v, v, d);
    let vivi = vec_tensor(v_inv, v_inv, d);
    let chi = h.mul2_elem(&vv, &h.comul_elem(v_inv));
    let chi_inv = h.mul2_elem(&h.comul_elem(v), &vivi);
    let to_mat = |t: &QVec| -> Vec<Vec<GaussQ>> {
        let mut m = vec![vec![GaussQ::zero(); d]; d];
        for (ij, c) in t.iter() {
            m[ij / d][ij % d] = c.clone();
        }
        m
    };
    Ok(Cocycle::algebra_side(to_mat(&chi), to_mat(&chi_inv)))
}

/// Exact cocycle validation: the 3-slot identity, convolution (or tensor)
/// invertibility in both orders, and unitality.
pub fn check_cocycle(h: &FinHopf, chi: &Cocycle) -> bool {
    if chi.dim() != h.dim {
        return false;
    }
    match chi.side {
        CocycleSide::Dual => check_dual_cocycle(h, chi),
        CocycleSide::Algebra => check_algebra_cocycle(h, chi),
    }
}

fn check_dual_cocycle(h: &FinHopf, chi: &Cocycle) -> bool {
    let d = h.dim;
    // unitality both sides
    for j in 0..d {
        let e = vec_basis(j);
        let eps = h.counit_elem(&e);
        if chi.eval(&h.unit, &e, false) != eps || chi.eval(&e, &h.unit, false) != eps {
            return false;
        }
    }
    // convolution inverse in both orders
    for a in 0..d {
        for b in 0..d {
            let mut fwd = GaussQ::zero();
            let mut bwd = GaussQ::zero();
            for (xy, ca) in h.comul[a].iter() {
                let (a1, a2) = (xy / d, xy % d);
                for (zw, cb) in h.comul[b].iter() {
                    let (b1, b2) = (zw / d, zw % d);
                    let c = ca.mul(cb);
                    fwd = fwd.add(&c.mul(&chi.data[a1][b1]).mul(&chi.inverse[a2][b2]));
                    bwd = bwd.add(&c.mul(&chi.inverse[a1][b1]).mul(&chi.data[a2][b2]));
                }
            }
            let eps = h
                .counit
                .get(&a)
                .cloned()
                .unwrap_or_else(GaussQ::zero)
                .mul(&h.counit.get(&b).cloned().unwrap_or_else(GaussQ::zero));
            if fwd != eps || bwd != eps {
                return false;
            }
        }
    }
    // χ(g₁⊗f₁) χ(h ⊗ g₂f₂) = χ(h₁⊗g₁) χ(h₂g₂ ⊗ f) on all basis triples
    for hh in 0..d {
        for g in 0..d {
            for f in 0..d {
                let mut lhs = GaussQ::zero();
                for (g_legs, cg) in h.comul[g].iter() {
                    let (g1, g2) = (g_legs / d, g_legs % d);
                    for (f_legs, cf) in h.comul[f].iter() {
                        let (f1, f2) = (f_legs / d, f_legs % d);
                        if chi.data[g1][f1].is_zero() {
                            continue;
                        }
                        let prod = &h.mul[g2 * d + f2];
                        let inner = chi.eval(&vec_basis(hh), prod, false);
                        lhs = lhs.add(&cg.mul(cf).mul(&chi.data[g1][f1]).mul(&inner));
                    }
                }
                let mut rhs = GaussQ::zero();
                for (h_legs, ch) in h.comul[hh].iter() {
                    let (h1, h2) = (h_legs / d, h_legs % d);
                    for (g_legs, cg) in h.comul[g].iter() {
                        let (g1, g2) = (g_legs / d, g_legs % d);
                        if chi.data[h1][g1].is_zero() {
                            continue;
                        }
                        let prod = &h.mul[h2 * d + g2];
                        let inner = chi.eval(prod, &vec_basis(f), false);
                        rhs = rhs.add(&ch.mul(cg).mul(&chi.data[h1][g1]).mul(&inner));
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

fn check_algebra_cocycle(h: &FinHopf, chi: &Cocycle) -> bool {
    let d = h.dim;
    let t = chi.as_tensor(false);
    let t_inv = chi.as_tensor(true);
    // invertibility both ways
    let unit2 = vec_tensor(&h.unit, &h.unit, d);
    if h.mul2_elem(&t, &t_inv) != unit2 || h.mul2_elem(&t_inv, &t) != unit2 {
        return false;
    }
    // counital: (ε⊗id)χ = 1
    let mut eps_id = QVec::new();
    for (ij, c) in t.iter() {
        let (i, j) = (ij / d, ij % d);
        if let Some(e) = h.counit.get(&i) {
            let entry = eps_id.entry(j).or_insert_with(GaussQ::zero);
            *entry = entry.add(&c.mul(e));
            if entry.is_zero() {
                eps_id.remove(&j);
            }
        }
    }
    if eps_id != h.unit {
        return false;
    }
    // χ₂₃ (id⊗Δ)χ = χ₁₂ (Δ⊗id)χ in H⊗H⊗H
    let acc = |m: &mut QVec, key: usize, v: GaussQ| {
        let entry = m.entry(key).or_insert_with(GaussQ::zero);
        *entry = entry.add(&v);
        if entry.is_zero() {
            m.remove(&key);
        }
    };
    let mut id_delta = QVec::new();
    let mut delta_id = QVec::new();
    for (ij, c) in t.iter() {
        let (i, j) = (ij / d, ij % d);
        for (xy, c2) in h.comul[j].iter() {
            acc(&mut id_delta, i * d * d + xy, c.mul(c2));
        }
        for (xy, c2) in h.comul[i].iter() {
            acc(&mut delta_id, xy * d + j, c.mul(c2));
        }
    }
    let mut chi23 = QVec::new();
    let mut chi12 = QVec::new();
    for (kl, c) in t.iter() {
        for (u, cu) in h.unit.iter() {
            acc(&mut chi23, u * d * d + kl, c.mul(cu));
            acc(&mut chi12, kl * d + u, c.mul(cu));
        }
    }
    h.mul3_elem(&chi23, &id_delta) == h.mul3_elem(&chi12, &delta_id)
}

#[cfg(test)]
mod tests {
    use super::super::corpus::*;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bicharacter_is_a_cocycle() {
        let h = klein_group_hopf().unwrap();
        let chi = klein_bicharacter_cocycle();
        assert!(check_cocycle(&h, &chi));
        // the solved convolution inverse agrees with the pointwise one
        let solved = solve_dual_inverse(&h, &chi.data).unwrap();
        assert_eq!(solved, chi.inverse);
    }

    #[test]
    fn coboundary_is_a_cocycle_on_s3_functions() {
        let h = function_algebra(&s3_table()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let chi = seeded_dual_coboundary(&h, &mut rng).unwrap();
        assert!(check_cocycle(&h, &chi));
        // inverse data really is the convolution inverse
        let solved = solve_dual_inverse(&h, &chi.data).unwrap();
        assert_eq!(solved, chi.inverse);
    }

    #[test]
    fn perturbed_cocycle_fails() {
        let h = klein_group_hopf().unwrap();
        let mut chi = klein_bicharacter_cocycle();
        chi.data[1][2] = chi.data[1][2].add(&GaussQ::one());
        assert!(!check_cocycle(&h, &chi));
    }

    #[test]
    fn algebra_coboundary_is_a_cocycle_on_group_algebra_s3() {
        let h = group_algebra(&s3_table()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let chi = seeded_algebra_coboundary(&h, &mut rng).unwrap();
        assert!(check_cocycle(&h, &chi));
        let solved = solve_algebra_inverse(&h, &chi.data).unwrap();
        assert_eq!(solved, chi.inverse);
    }

    #[test]
    fn trivial_cocycles_check() {
        let h = group_algebra(&cyclic_table(4)).unwrap();
        assert!(check_cocycle(&h, &Cocycle::trivial(&h, CocycleSide::Dual)));
        assert!(check_cocycle(&h, &Cocycle::trivial(&h, CocycleSide::Algebra)));
    }
}
