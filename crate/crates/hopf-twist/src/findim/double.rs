//! The Drinfeld quantum double `D(H) = H^{*op} ⋈ H` and the isomorphism
//! `θ: D(H^χ) ≅ D(H)_χ̃` induced by a dual-side cocycle.

use super::cocycle::{check_cocycle, Cocycle, CocycleSide};
use super::hopf::FinHopf;
use super::linalg::*;
use super::twist::twist;
use super::FindimError;
use crate::scalar::GaussQ;
use std::sync::Arc;

/// Index of the basis element `φ^a ⊗ e_i` of `D(H)`.
#[inline]
fn didx(a: usize, i: usize, d: usize) -> usize {
    a * d + i
}

/// Build the quantum double on `H* ⊗ H` with the cross relations
/// `h φ = φ₂ h₂ ⟨S h₁, φ₁⟩ ⟨h₃, φ₃⟩` and `H`, `H^{*op}` as sub-Hopf
/// algebras.
pub fn quantum_double(h: &Arc<FinHopf>) -> Result<Arc<FinHopf>, FindimError> {
    let d = h.dim;
    let dd = d * d;

    // legs of Δ²_{H*} φ^b: triples (c, d, e) with coefficient
    // ⟨φ^b, (e_c e_d) e_e⟩
    let mut dual_legs: Vec<Vec<(usize, usize, usize, GaussQ)>> = vec![Vec::new(); d];
    for c in 0..d {
        for dm in 0..d {
            let w = &h.mul[c * d + dm];
            for e in 0..d {
                let prod = h.mul_elem(w, &vec_basis(e));
                for (b, coeff) in prod.iter() {
                    dual_legs[*b].push((c, dm, e, coeff.clone()));
                }
            }
        }
    }

    // core[(b,i)]: coefficients of the cross relation aggregated over the
    // Sweedler legs, keyed by the surviving (φ-factor dm, H-factor v)
    let mut core: Vec<std::collections::BTreeMap<(usize, usize), GaussQ>> =
        vec![Default::default(); d * d];
    for i in 0..d {
        for (hl, ch) in h.iter_comul_basis(i, 3) {
            let (u, v, w) = (hl[0], hl[1], hl[2]);
            for b in 0..d {
                for (c, dm, e, cphi) in dual_legs[b].iter() {
                    if *e != w {
                        continue;
                    }
                    let s_val = h.antipode[u].get(c).cloned().unwrap_or_else(GaussQ::zero);
                    if s_val.is_zero() {
                        continue;
                    }
                    let coeff = ch.mul(cphi).mul(&s_val);
                    let slot = core[b * d + i].entry((*dm, v)).or_insert_with(GaussQ::zero);
                    *slot = slot.add(&coeff);
                    if slot.is_zero() {
                        core[b * d + i].remove(&(*dm, v));
                    }
                }
            }
        }
    }
    // pairwise dual products φ^dm ∗ φ^a, hoisted
    let mut dualmul: Vec<QVec> = Vec::with_capacity(d * d);
    for dm in 0..d {
        for a in 0..d {
            dualmul.push(h.dual_mul_basis(dm, a));
        }
    }
    let mut mul = vec![QVec::new(); dd * dd];
    for a in 0..d {
        for i in 0..d {
            for b in 0..d {
                for j in 0..d {
                    let mut out = QVec::new();
                    for ((dm, v), coeff) in core[b * d + i].iter() {
                        // φ^a ∗op φ^dm = φ^dm ∗ φ^a in H*
                        let head = &dualmul[dm * d + a];
                        let tail = &h.mul[v * d + j];
                        for (m, cm) in head.iter() {
                            for (k, ck) in tail.iter() {
                                let key = didx(*m, *k, d);
                                let entry = out.entry(key).or_insert_with(GaussQ::zero);
                                *entry = entry.add(&coeff.mul(cm).mul(ck));
                                if entry.is_zero() {
                                    out.remove(&key);
                                }
                            }
                        }
                    }
                    mul[didx(a, i, d) * dd + didx(b, j, d)] = out;
                }
            }
        }
    }

    // tensor coalgebra: Δ_{H*} φ^a = Σ ⟨φ^a, e_c e_d⟩ φ^c ⊗ φ^d
    let mut comul = vec![QVec::new(); dd];
    for a in 0..d {
        let mut phi_legs = QVec::new();
        for c in 0..d {
            for dm in 0..d {
                if let Some(v) = h.mul[c * d + dm].get(&a) {
                    phi_legs.insert(c * d + dm, v.clone());
                }
            }
        }
        for i in 0..d {
            let mut out = QVec::new();
            for (cd, cphi) in phi_legs.iter() {
                let (c, dm) = (cd / d, cd % d);
                for (xy, ch) in h.comul[i].iter() {
                    let (x, y) = (xy / d, xy % d);
                    let key = didx(c, x, d) * dd + didx(dm, y, d);
                    out.insert(key, cphi.mul(ch));
                }
            }
            comul[didx(a, i, d)] = out;
        }
    }

    let mut unit = QVec::new();
    for (a, ca) in h.counit.iter() {
        for (i, ci) in h.unit.iter() {
            unit.insert(didx(*a, *i, d), ca.mul(ci));
        }
    }
    let mut counit = QVec::new();
    for a in 0..d {
        let va = h.unit.get(&a).cloned().unwrap_or_else(GaussQ::zero);
        if va.is_zero() {
            continue;
        }
        for (i, ci) in h.counit.iter() {
            counit.insert(didx(a, *i, d), va.mul(ci));
        }
    }

    // S(φ^a ⊗ e_i) = (1 ⊗ S e_i)·((S*)⁻¹ φ^a ⊗ 1) via the built product
    let mul_d = |x: &QVec, y: &QVec| -> QVec {
        let mut out = QVec::new();
        for (p, cp) in x.iter() {
            for (q, cq) in y.iter() {
                vec_add_scaled(&mut out, &mul[p * dd + q], &cp.mul(cq));
            }
        }
        out
    };
    let one_dual = h.counit.clone();
    let one_h = h.unit.clone();
    let embed_h = |v: &QVec| -> QVec {
        let mut out = QVec::new();
        for (a, ca) in one_dual.iter() {
            for (i, ci) in v.iter() {
                out.insert(didx(*a, *i, d), ca.mul(ci));
            }
        }
        out
    };
    let embed_phi = |phi: &QVec| -> QVec {
        let mut out = QVec::new();
        for (c, cc) in phi.iter() {
            for (u, cu) in one_h.iter() {
                out.insert(didx(*c, *u, d), cc.mul(cu));
            }
        }
        out
    };
    let mut antipode = vec![QVec::new(); dd];
    let mut antipode_inv = vec![QVec::new(); dd];
    for a in 0..d {
        // (S*)⁻¹ φ^a = Σ_c ⟨φ^a, S⁻¹ e_c⟩ φ^c;  S* φ^a = Σ_c ⟨φ^a, S e_c⟩ φ^c
        let mut sinv_phi = QVec::new();
        let mut s_phi = QVec::new();
        for c in 0..d {
            if let Some(v) = h.antipode_inv[c].get(&a) {
                sinv_phi.insert(c, v.clone());
            }
            if let Some(v) = h.antipode[c].get(&a) {
                s_phi.insert(c, v.clone());
            }
        }
        for i in 0..d {
            antipode[didx(a, i, d)] =
                mul_d(&embed_h(&h.antipode[i]), &embed_phi(&sinv_phi));
            antipode_inv[didx(a, i, d)] =
                mul_d(&embed_h(&h.antipode_inv[i]), &embed_phi(&s_phi));
        }
    }

    FinHopf::new(dd, mul, unit, comul, counit, antipode, antipode_inv)
}

/// Result of [`theta_iso`]: the verified isomorphism together with the two
/// doubles it connects.
pub struct ThetaIso {
    pub theta: QMat,
    pub double_h: Arc<FinHopf>,
    pub double_h_chi: Arc<FinHopf>,
}

/// The Hopf algebra isomorphism `θ: D(H^χ) → D(H)_χ̃` for a dual-side
/// cocycle, with `χ̃ = χ⁻¹` embedded in `D(H)⊗D(H)`.
///
/// `θ(φ⊗h) = (χ⁽²⁾₍₂₎ ∗ χ⁻⁽¹⁾ ∗ φ) ⊗ h₂ ·
///            ⟨h₁, χ⁽¹⁾ S*(χ⁽²⁾₍₁₎)⟩ ⟨h₃, χ⁽²⁾₍₃₎ ∗ χ⁻⁽²⁾⟩`
/// (products in `H*`).  Verified exactly: θ is bijective, an algebra map
/// `D(H^χ) → D(H)`, and `(θ⊗θ)∘Δ_{D(H^χ)} = χ̃ (Δ_{D(H)} θ(·)) χ̃⁻¹`.
pub fn theta_iso(h: &Arc<FinHopf>, chi: &Cocycle) -> Result<ThetaIso, FindimError> {
    if chi.side != CocycleSide::Dual {
        return Err(FindimError::InvalidCocycle("θ requires a dual-side cocycle".into()));
    }
    if !check_cocycle(h, chi) {
        return Err(FindimError::InvalidCocycle("cocycle validation failed".into()));
    }
    let d = h.dim;
    let dd = d * d;

    let mut dual_legs: Vec<Vec<(usize, usize, usize, GaussQ)>> = vec![Vec::new(); d];
    for c in 0..d {
        for dm in 0..d {
            let w = &h.mul[c * d + dm];
            for e in 0..d {
                let prod = h.mul_elem(w, &vec_basis(e));
                for (b, coeff) in prod.iter() {
                    dual_legs[*b].push((c, dm, e, coeff.clone()));
                }
            }
        }
    }
    // M1[u](s, t1) = ⟨φ^s ∗ S*(φ^{t1}), e_u⟩
    let mut m1: Vec<std::collections::BTreeMap<(usize, usize), GaussQ>> =
        vec![Default::default(); d];
    for u in 0..d {
        for (xy, c) in h.comul[u].iter() {
            let (x, y) = (xy / d, xy % d);
            for (t1, sv) in h.antipode[y].iter() {
                let key = (x, *t1);
                let entry = m1[u].entry(key).or_insert_with(GaussQ::zero);
                *entry = entry.add(&c.mul(sv));
                if entry.is_zero() {
                    m1[u].remove(&key);
                }
            }
        }
    }

    // triple products φ^{t2} ∗ φ^{sp} ∗ φ^a in H*, hoisted out of the loop
    let mut triple: Vec<QVec> = Vec::with_capacity(d * d * d);
    for t2 in 0..d {
        for sp in 0..d {
            let pair = h.dual_mul_basis(t2, sp);
            for a in 0..d {
                triple.push(h.dual_mul_elem(&pair, &vec_basis(a)));
            }
        }
    }
    let mut theta = QMat::zero(dd, dd);
    for a in 0..d {
        for i in 0..d {
            let mut col = QVec::new();
            for (hl, ch) in h.iter_comul_basis(i, 3) {
                let (u, v, w) = (hl[0], hl[1], hl[2]);
                for (s, row) in chi.data.iter().enumerate() {
                    for (t, chi_st) in row.iter().enumerate() {
                        if chi_st.is_zero() {
                            continue;
                        }
                        for (t1, t2, t3, c2) in dual_legs[t].iter() {
                            let f1 = match m1[u].get(&(s, *t1)) {
                                Some(x) => x.clone(),
                                None => continue,
                            };
                            for (tp, invrow_f2) in (0..d).filter_map(|tp| {
                                h.comul[w].get(&(t3 * d + tp)).map(|f2| (tp, f2))
                            }) {
                                for (sp, invrow) in chi.inverse.iter().enumerate() {
                                    let inv_val = &invrow[tp];
                                    if inv_val.is_zero() {
                                        continue;
                                    }
                                    let head = &triple[(t2 * d + sp) * d + a];
                                    let coeff = ch
                                        .mul(chi_st)
                                        .mul(c2)
                                        .mul(inv_val)
                                        .mul(&f1)
                                        .mul(invrow_f2);
                                    for (m, cm) in head.iter() {
                                        let key = didx(*m, v, d);
                                        let entry =
                                            col.entry(key).or_insert_with(GaussQ::zero);
                                        *entry = entry.add(&coeff.mul(cm));
                                        if entry.is_zero() {
                                            col.remove(&key);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            theta.cols[didx(a, i, d)] = col;
        }
    }

    // exact verification
    let double_h = quantum_double(h)?;
    let h_chi = twist(h, chi)?;
    let double_h_chi = quantum_double(&h_chi)?;

    if theta.rank() != dd {
        return Err(FindimError::NotIso("θ is not bijective".into()));
    }
    for p in 0..dd {
        for q in 0..dd {
            let lhs = theta.apply(&double_h_chi.mul[p * dd + q]);
            let rhs = double_h.mul_elem(&theta.cols[p], &theta.cols[q]);
            if lhs != rhs {
                return Err(FindimError::NotIso(format!(
                    "θ is not an algebra map at pair ({p},{q})"
                )));
            }
        }
    }
    // χ̃ = Σ χ⁻¹[a][b] (φ^a⊗1) ⊗ (φ^b⊗1)
    let embed_pair = |m: &Vec<Vec<GaussQ>>| -> QVec {
        let mut out = QVec::new();
        for (aa, row) in m.iter().enumerate() {
            for (bb, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (u1, cu1) in h.unit.iter() {
                    for (u2, cu2) in h.unit.iter() {
                        let key = didx(aa, *u1, d) * dd + didx(bb, *u2, d);
                        let entry = out.entry(key).or_insert_with(GaussQ::zero);
                        *entry = entry.add(&c.mul(cu1).mul(cu2));
                        if entry.is_zero() {
                            out.remove(&key);
                        }
                    }
                }
            }
        }
        out
    };
    let chi_tilde = embed_pair(&chi.inverse);
    let chi_tilde_inv = embed_pair(&chi.data);
    let unit2 = vec_tensor(&double_h.unit, &double_h.unit, dd);
    if double_h.mul2_elem(&chi_tilde, &chi_tilde_inv) != unit2 {
        return Err(FindimError::NotIso("χ̃ is not invertible in D(H)⊗D(H)".into()));
    }
    for p in 0..dd {
        let mut lhs = QVec::new();
        for (xy, c) in double_h_chi.comul[p].iter() {
            let (x, y) = (xy / dd, xy % dd);
            for (x2, cx) in theta.cols[x].iter() {
                for (y2, cy) in theta.cols[y].iter() {
                    let key = x2 * dd + y2;
                    let entry = lhs.entry(key).or_insert_with(GaussQ::zero);
                    *entry = entry.add(&c.mul(cx).mul(cy));
                    if entry.is_zero() {
                        lhs.remove(&key);
                    }
                }
            }
        }
        let inner = double_h.comul_elem(&theta.cols[p]);
        let rhs = double_h.mul2_elem(&double_h.mul2_elem(&chi_tilde, &inner), &chi_tilde_inv);
        if lhs != rhs {
            return Err(FindimError::NotIso(format!(
                "θ fails the coalgebra intertwining at basis {p}"
            )));
        }
    }
    Ok(ThetaIso { theta, double_h, double_h_chi })
}

#[cfg(test)]
mod tests {
    use super::super::cocycle::solve_dual_inverse;
    use super::super::corpus::*;
    use super::super::hopf::{check_hopf, dual, opposite, tensor_product};
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn double_of_z2_functions() {
        let h = function_algebra(&cyclic_table(2)).unwrap();
        let dh = quantum_double(&h).unwrap();
        assert_eq!(dh.dim, 4);
        assert!(check_hopf(&dh).all_pass());
    }

    #[test]
    fn double_of_z3_group_algebra_is_commutative() {
        let h = group_algebra(&cyclic_table(3)).unwrap();
        let dh = quantum_double(&h).unwrap();
        assert_eq!(dh.dim, 9);
        assert!(check_hopf(&dh).all_pass());
        for p in 0..9 {
            for q in 0..9 {
                assert_eq!(dh.mul[p * 9 + q], dh.mul[q * 9 + p], "abelian double must commute");
            }
        }
    }

    #[test]
    fn double_of_s3_functions() {
        let h = function_algebra(&s3_table()).unwrap();
        let dh = quantum_double(&h).unwrap();
        assert_eq!(dh.dim, 36);
        assert!(check_hopf(&dh).all_pass());
    }

    #[test]
    fn sub_hopf_embeddings() {
        let h = function_algebra(&s3_table()).unwrap();
        let d = h.dim;
        let dh = quantum_double(&h).unwrap();
        let one_dual = h.counit.clone();
        let embed_h = |i: usize| -> QVec {
            one_dual.iter().map(|(a, c)| (a * d + i, c.clone())).collect()
        };
        for i in 0..d {
            for j in 0..d {
                let lhs = dh.mul_elem(&embed_h(i), &embed_h(j));
                let mut rhs = QVec::new();
                for (k, c) in h.mul[i * d + j].iter() {
                    vec_add_scaled(&mut rhs, &embed_h(*k), c);
                }
                assert_eq!(lhs, rhs, "H-embedding fails at ({i},{j})");
            }
        }
        let embed_phi = |a: usize| -> QVec {
            h.unit.iter().map(|(i, c)| (a * d + *i, c.clone())).collect()
        };
        for a in 0..d {
            for b in 0..d {
                let lhs = dh.mul_elem(&embed_phi(a), &embed_phi(b));
                let mut rhs = QVec::new();
                for (m, c) in h.dual_mul_basis(b, a).iter() {
                    vec_add_scaled(&mut rhs, &embed_phi(*m), c);
                }
                assert_eq!(lhs, rhs, "H*op-embedding fails at ({a},{b})");
            }
        }
    }

    #[test]
    fn double_is_cotwist_of_tensor_product() {
        // D(H) arises by twisting H ⊗ H^{*op} with
        // χ((h⊗φ)⊗(g⊗ψ)) = ε(h)⟨φ, S g⟩ε(ψ); the map
        // φ^a⊗e_i ↦ φ̂^a • ĥ_i is a Hopf isomorphism from the H*⊗H
        // presentation onto the twisted tensor product.
        for h in [
            function_algebra(&cyclic_table(2)).unwrap(),
            group_algebra(&cyclic_table(3)).unwrap(),
        ] {
            let d = h.dim;
            let hdual_op = opposite(&dual(&h).unwrap()).unwrap();
            let t = tensor_product(&h, &hdual_op).unwrap();
            let td = t.dim;
            let mut data = vec![vec![GaussQ::zero(); td]; td];
            for i in 0..d {
                for a in 0..d {
                    for j in 0..d {
                        for b in 0..d {
                            let v = h
                                .counit
                                .get(&i)
                                .cloned()
                                .unwrap_or_else(GaussQ::zero)
                                .mul(&h.antipode[j].get(&a).cloned().unwrap_or_else(GaussQ::zero))
                                .mul(&h.unit.get(&b).cloned().unwrap_or_else(GaussQ::zero));
                            data[i * d + a][j * d + b] = v;
                        }
                    }
                }
            }
            let inverse = solve_dual_inverse(&t, &data).unwrap();
            let chi = Cocycle::dual_side(data, inverse);
            assert!(check_cocycle(&t, &chi));
            let tw = twist(&t, &chi).unwrap();
            assert!(check_hopf(&tw).all_pass());

            let dh = quantum_double(&h).unwrap();
            let embed_h = |i: usize| -> QVec {
                h.counit.iter().map(|(a, c)| (i * d + a, c.clone())).collect()
            };
            let embed_phi = |a: usize| -> QVec {
                h.unit.iter().map(|(i, c)| (*i * d + a, c.clone())).collect()
            };
            let mut phi_map = QMat::zero(td, td);
            for a in 0..d {
                for i in 0..d {
                    phi_map.cols[a * d + i] = tw.mul_elem(&embed_phi(a), &embed_h(i));
                }
            }
            assert_eq!(phi_map.rank(), td, "Φ must be bijective");
            for p in 0..td {
                for q in 0..td {
                    let lhs = phi_map.apply(&dh.mul[p * td + q]);
                    let rhs = tw.mul_elem(&phi_map.cols[p], &phi_map.cols[q]);
                    assert_eq!(lhs, rhs, "Φ product mismatch at ({p},{q})");
                }
            }
            for p in 0..td {
                let mut lhs = QVec::new();
                for (xy, c) in dh.comul[p].iter() {
                    let (x, y) = (xy / td, xy % td);
                    for (x2, cx) in phi_map.cols[x].iter() {
                        for (y2, cy) in phi_map.cols[y].iter() {
                            let key = x2 * td + y2;
                            let entry = lhs.entry(key).or_insert_with(GaussQ::zero);
                            *entry = entry.add(&c.mul(cx).mul(cy));
                            if entry.is_zero() {
                                lhs.remove(&key);
                            }
                        }
                    }
                }
                let rhs = tw.comul_elem(&phi_map.cols[p]);
                assert_eq!(lhs, rhs, "Φ coproduct mismatch at {p}");
            }
        }
    }

    #[test]
    fn theta_trivial_cocycle_is_identity() {
        let h = function_algebra(&cyclic_table(2)).unwrap();
        let chi = Cocycle::trivial(&h, CocycleSide::Dual);
        let iso = theta_iso(&h, &chi).unwrap();
        assert_eq!(iso.theta, QMat::identity(h.dim * h.dim));
    }

    #[test]
    fn theta_klein_bicharacter() {
        let h = klein_group_hopf().unwrap();
        let chi = klein_bicharacter_cocycle();
        theta_iso(&h, &chi).unwrap();
    }

    #[test]
    fn theta_s3_coboundary() {
        let h = function_algebra(&s3_table()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let chi = seeded_dual_coboundary(&h, &mut rng).unwrap();
        theta_iso(&h, &chi).unwrap();
    }
}
