//! Crossed modules (simultaneous modules and comodules with the
//! compatibility condition), their braiding, and the twisting functors on
//! both sides, together with the projection isomorphism α.

use super::cocycle::{check_cocycle, Cocycle, CocycleSide};
use super::hopf::FinHopf;
use super::linalg::*;
use super::twist::twist;
use super::FindimError;
use crate::scalar::GaussQ;
use std::sync::Arc;

/// A crossed module: an `H`-module and `H`-comodule satisfying the
/// compatibility condition.  `action[h·vdim + v]` is `e_h ▷ f_v` (sparse
/// over `V`), `coaction[v]` is `β(f_v)` (sparse over `H⊗V`,
/// index `m·vdim + w`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    pub hopf: Arc<FinHopf>,
    pub vdim: usize,
    pub action: Vec<QVec>,
    pub coaction: Vec<QVec>,
}

impl CrossedModule {
    pub fn act_basis(&self, h: usize, v: usize) -> &QVec {
        &self.action[h * self.vdim + v]
    }

    pub fn act_elem(&self, h: &QVec, v: &QVec) -> QVec {
        let mut out = QVec::new();
        for (i, ch) in h.iter() {
            for (k, cv) in v.iter() {
                vec_add_scaled(&mut out, self.act_basis(*i, *k), &ch.mul(cv));
            }
        }
        out
    }

    pub fn coact_elem(&self, v: &QVec) -> QVec {
        let mut out = QVec::new();
        for (k, c) in v.iter() {
            vec_add_scaled(&mut out, &self.coaction[*k], c);
        }
        out
    }

    /// `H` over itself by left multiplication and the adjoint coaction
    /// `β(h) = h₁ S h₃ ⊗ h₂` (the structure underlying differential
    /// calculi).
    pub fn self_left_adjoint(hopf: Arc<FinHopf>) -> Self {
        let d = hopf.dim;
        let action = hopf.mul.clone();
        let mut coaction = vec![QVec::new(); d];
        for (v, slot) in coaction.iter_mut().enumerate() {
            let mut out = QVec::new();
            for (legs, c) in hopf.iter_comul_basis(v, 3) {
                let head = hopf.mul_elem(&vec_basis(legs[0]), &hopf.antipode[legs[2]]);
                for (m, cm) in head.iter() {
                    let key = m * d + legs[1];
                    let entry = out.entry(key).or_insert_with(GaussQ::zero);
                    *entry = entry.add(&c.mul(cm));
                    if entry.is_zero() {
                        out.remove(&key);
                    }
                }
            }
            *slot = out;
        }
        CrossedModule { hopf, vdim: d, action, coaction }
    }

    /// `H` over itself by the adjoint action `h ▷ g = h₁ g S h₂` and the
    /// regular coaction `Δ` (the structure twisted on the algebra side).
    pub fn self_adjoint_regular(hopf: Arc<FinHopf>) -> Self {
        let d = hopf.dim;
        let mut action = vec![QVec::new(); d * d];
        for h in 0..d {
            for v in 0..d {
                let mut out = QVec::new();
                for (xy, c) in hopf.comul[h].iter() {
                    let (h1, h2) = (xy / d, xy % d);
                    let prod = hopf.mul_elem(
                        &hopf.mul_elem(&vec_basis(h1), &vec_basis(v)),
                        &hopf.antipode[h2],
                    );
                    vec_add_scaled(&mut out, &prod, c);
                }
                action[h * d + v] = out;
            }
        }
        let coaction = hopf.comul.clone();
        CrossedModule { hopf, vdim: d, action, coaction }
    }

    /// The 1-dimensional trivial crossed module (counit action, unit
    /// coaction).
    pub fn trivial(hopf: Arc<FinHopf>) -> Self {
        let d = hopf.dim;
        let mut action = vec![QVec::new(); d];
        for (h, slot) in action.iter_mut().enumerate() {
            let eps = hopf.counit.get(&h).cloned().unwrap_or_else(GaussQ::zero);
            if !eps.is_zero() {
                slot.insert(0, eps);
            }
        }
        let coaction = vec![hopf.unit.iter().map(|(m, c)| (*m, c.clone())).collect()];
        CrossedModule { hopf, vdim: 1, action, coaction }
    }
}

/// Validate the module, comodule and compatibility axioms; on failure the
/// offending basis pair is reported.
pub fn validate_crossed(v: &CrossedModule) -> Result<(), FindimError> {
    let h = &v.hopf;
    let d = h.dim;
    let n = v.vdim;
    for k in 0..n {
        if v.act_elem(&h.unit, &vec_basis(k)) != vec_basis(k) {
            return Err(FindimError::NotCrossed {
                context: "unit action".into(),
                basis_pair: Some((0, k)),
            });
        }
    }
    for i in 0..d {
        for j in 0..d {
            for k in 0..n {
                let lhs = v.act_elem(&h.mul[i * d + j], &vec_basis(k));
                let rhs = v.act_elem(&vec_basis(i), v.act_basis(j, k));
                if lhs != rhs {
                    return Err(FindimError::NotCrossed {
                        context: format!("action multiplicativity at h-pair ({i},{j})"),
                        basis_pair: Some((i, k)),
                    });
                }
            }
        }
    }
    for k in 0..n {
        // (ε⊗id)β = id
        let mut contracted = QVec::new();
        for (mw, c) in v.coaction[k].iter() {
            let (m, w) = (mw / n, mw % n);
            if let Some(e) = h.counit.get(&m) {
                let entry = contracted.entry(w).or_insert_with(GaussQ::zero);
                *entry = entry.add(&c.mul(e));
                if entry.is_zero() {
                    contracted.remove(&w);
                }
            }
        }
        if contracted != vec_basis(k) {
            return Err(FindimError::NotCrossed {
                context: "comodule counit".into(),
                basis_pair: Some((0, k)),
            });
        }
        // (Δ⊗id)β = (id⊗β)β over H⊗H⊗V
        let mut lhs = QVec::new();
        let mut rhs = QVec::new();
        for (mw, c) in v.coaction[k].iter() {
            let (m, w) = (mw / n, mw % n);
            for (xy, c2) in h.comul[m].iter() {
                let key = xy * n + w;
                let entry = lhs.entry(key).or_insert_with(GaussQ::zero);
                *entry = entry.add(&c.mul(c2));
                if entry.is_zero() {
                    lhs.remove(&key);
                }
            }
            for (m2w2, c2) in v.coaction[w].iter() {
                let key = (m * d + m2w2 / n) * n + m2w2 % n;
                let entry = rhs.entry(key).or_insert_with(GaussQ::zero);
                *entry = entry.add(&c.mul(c2));
                if entry.is_zero() {
                    rhs.remove(&key);
                }
            }
        }
        if lhs != rhs {
            return Err(FindimError::NotCrossed {
                context: "comodule coassociativity".into(),
                basis_pair: Some((0, k)),
            });
        }
    }
    // compatibility: h₁ v₍₁₎ ⊗ h₂ ▷ v₍∞₎ = (h₁▷v)₍₁₎ h₂ ⊗ (h₁▷v)₍∞₎
    for i in 0..d {
        for k in 0..n {
            let mut lhs = QVec::new();
            let mut rhs = QVec::new();
            for (xy, c) in h.comul[i].iter() {
                let (h1, h2) = (xy / d, xy % d);
                for (mw, c2) in v.coaction[k].iter() {
                    let (m, w) = (mw / n, mw % n);
                    let head = &h.mul[h1 * d + m];
                    let tail = v.act_basis(h2, w);
                    for (a, ca) in head.iter() {
                        for (b, cb) in tail.iter() {
                            let key = a * n + b;
                            let entry = lhs.entry(key).or_insert_with(GaussQ::zero);
                            *entry = entry.add(&c.mul(c2).mul(ca).mul(cb));
                            if entry.is_zero() {
                                lhs.remove(&key);
                            }
                        }
                    }
                }
                let acted = v.act_basis(h1, k);
                for (w0, cw) in acted.iter() {
                    for (mw, c2) in v.coaction[*w0].iter() {
                        let (m, w) = (mw / n, mw % n);
                        let head = &h.mul[m * d + h2];
                        for (a, ca) in head.iter() {
                            let key = a * n + w;
                            let entry = rhs.entry(key).or_insert_with(GaussQ::zero);
                            *entry = entry.add(&c.mul(cw).mul(c2).mul(ca));
                            if entry.is_zero() {
                                rhs.remove(&key);
                            }
                        }
                    }
                }
            }
            if lhs != rhs {
                return Err(FindimError::NotCrossed {
                    context: "compatibility".into(),
                    basis_pair: Some((i, k)),
                });
            }
        }
    }
    Ok(())
}

/// Braiding `Ψ_{V,W}(v⊗w) = v₍₁₎ ▷ w ⊗ v₍∞₎` as a matrix
/// `V⊗W → W⊗V` (input `k·wdim + l`, output `w'·vdim + k'`).
pub fn braiding(v: &CrossedModule, w: &CrossedModule) -> QMat {
    let (nv, nw) = (v.vdim, w.vdim);
    let mut out = QMat::zero(nw * nv, nv * nw);
    for k in 0..nv {
        for l in 0..nw {
            let mut col = QVec::new();
            for (mw, c) in v.coaction[k].iter() {
                let (m, kp) = (mw / nv, mw % nv);
                let acted = w.act_basis(m, l);
                for (wp, cw) in acted.iter() {
                    let key = wp * nv + kp;
                    let entry = col.entry(key).or_insert_with(GaussQ::zero);
                    *entry = entry.add(&c.mul(cw));
                    if entry.is_zero() {
                        col.remove(&key);
                    }
                }
            }
            out.cols[k * nw + l] = col;
        }
    }
    out
}

/// Validate two crossed modules over the same Hopf algebra and return
/// their braiding, which is checked to be invertible.
pub fn crossed_check(v: &CrossedModule, w: &CrossedModule) -> Result<QMat, FindimError> {
    if !Arc::ptr_eq(&v.hopf, &w.hopf) && *v.hopf != *w.hopf {
        return Err(FindimError::DimensionMismatch(
            "crossed modules over different Hopf algebras".into(),
        ));
    }
    validate_crossed(v)?;
    validate_crossed(w)?;
    let psi = braiding(v, w);
    if psi.rank() != v.vdim * w.vdim {
        return Err(FindimError::NotCrossed {
            context: "braiding not invertible".into(),
            basis_pair: None,
        });
    }
    Ok(psi)
}

/// The twisting functor on crossed modules.
///
/// Dual side (`χ: H⊗H → k`): coaction unchanged, action transformed to
/// `h ▷^χ v = χ(h₁⊗v₍₁₎) (h₂▷v₍∞₎)₍∞₎ χ⁻¹((h₂▷v₍∞₎)₍₁₎ ⊗ h₃)`.
/// Algebra side (`χ ∈ H⊗H`): action unchanged, coaction transformed to
/// `β_χ(v) = χ⁽¹⁾(χ⁻⁽¹⁾▷v)₍₁₎χ⁻⁽²⁾ ⊗ χ⁽²⁾▷(χ⁻⁽¹⁾▷v)₍∞₎`.
pub fn functor_f(v: &CrossedModule, chi: &Cocycle) -> Result<CrossedModule, FindimError> {
    if !check_cocycle(&v.hopf, chi) {
        return Err(FindimError::InvalidCocycle("cocycle validation failed".into()));
    }
    validate_crossed(v)?;
    let twisted_hopf = twist(&v.hopf, chi)?;
    let h = &v.hopf;
    let d = h.dim;
    let n = v.vdim;
    match chi.side {
        CocycleSide::Dual => {
            let mut action = vec![QVec::new(); d * n];
            for i in 0..d {
                let legs = h.iter_comul_basis(i, 3);
                for k in 0..n {
                    let mut out = QVec::new();
                    for (hl, c) in legs.iter() {
                        for (mw, c2) in v.coaction[k].iter() {
                            let (m, w) = (mw / n, mw % n);
                            let f1 = &chi.data[hl[0]][m];
                            if f1.is_zero() {
                                continue;
                            }
                            let mid = v.act_basis(hl[1], w);
                            for (w2, cw) in mid.iter() {
                                for (m2w3, c3) in v.coaction[*w2].iter() {
                                    let (m2, w3) = (m2w3 / n, m2w3 % n);
                                    let f2 = &chi.inverse[m2][hl[2]];
                                    if f2.is_zero() {
                                        continue;
                                    }
                                    let coeff = c.mul(c2).mul(cw).mul(c3).mul(f1).mul(f2);
                                    let entry = out.entry(w3).or_insert_with(GaussQ::zero);
                                    *entry = entry.add(&coeff);
                                    if entry.is_zero() {
                                        out.remove(&w3);
                                    }
                                }
                            }
                        }
                    }
                    action[i * n + k] = out;
                }
            }
            Ok(CrossedModule { hopf: twisted_hopf, vdim: n, action, coaction: v.coaction.clone() })
        }
        CocycleSide::Algebra => {
            let t = chi.as_tensor(false);
            let t_inv = chi.as_tensor(true);
            let mut coaction = vec![QVec::new(); n];
            for (k, slot) in coaction.iter_mut().enumerate() {
                let mut out = QVec::new();
                for (ab, cab) in t_inv.iter() {
                    let (a1, a2) = (ab / d, ab % d);
                    let w = v.act_basis(a1, k);
                    for (w1, cw) in w.iter() {
                        for (mw2, c2) in v.coaction[*w1].iter() {
                            let (m, w2) = (mw2 / n, mw2 % n);
                            for (st, cst) in t.iter() {
                                let (s, tt) = (st / d, st % d);
                                let head = h.mul_elem(
                                    &h.mul_elem(&vec_basis(s), &vec_basis(m)),
                                    &vec_basis(a2),
                                );
                                let tail = v.act_basis(tt, w2);
                                for (hm, chm) in head.iter() {
                                    for (wf, cwf) in tail.iter() {
                                        let key = hm * n + wf;
                                        let coeff =
                                            cab.mul(cw).mul(c2).mul(cst).mul(chm).mul(cwf);
                                        let entry = out.entry(key).or_insert_with(GaussQ::zero);
                                        *entry = entry.add(&coeff);
                                        if entry.is_zero() {
                                            out.remove(&key);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                *slot = out;
            }
            Ok(CrossedModule { hopf: twisted_hopf, vdim: n, action: v.action.clone(), coaction })
        }
    }
}

/// The monoidal natural map `c: F(V)⊗F(W) → F(V⊗W)` as a matrix on
/// `V⊗W` (dual side: `v⊗w ↦ χ(v₍₁₎⊗w₍₁₎) v₍∞₎⊗w₍∞₎`; algebra side:
/// `v⊗w ↦ χ⁻⁽¹⁾▷v ⊗ χ⁻⁽²⁾▷w`).
pub fn monoidal_c(v: &CrossedModule, w: &CrossedModule, chi: &Cocycle) -> QMat {
    let (nv, nw) = (v.vdim, w.vdim);
    let d = v.hopf.dim;
    let mut out = QMat::zero(nv * nw, nv * nw);
    match chi.side {
        CocycleSide::Dual => {
            for k in 0..nv {
                for l in 0..nw {
                    let mut col = QVec::new();
                    for (mv, c1) in v.coaction[k].iter() {
                        let (m1, k2) = (mv / nv, mv % nv);
                        for (mw, c2) in w.coaction[l].iter() {
                            let (m2, l2) = (mw / nw, mw % nw);
                            let f = &chi.data[m1][m2];
                            if f.is_zero() {
                                continue;
                            }
                            let key = k2 * nw + l2;
                            let entry = col.entry(key).or_insert_with(GaussQ::zero);
                            *entry = entry.add(&c1.mul(c2).mul(f));
                            if entry.is_zero() {
                                col.remove(&key);
                            }
                        }
                    }
                    out.cols[k * nw + l] = col;
                }
            }
        }
        CocycleSide::Algebra => {
            let t_inv = chi.as_tensor(true);
            for k in 0..nv {
                for l in 0..nw {
                    let mut col = QVec::new();
                    for (ab, c) in t_inv.iter() {
                        let (a, b) = (ab / d, ab % d);
                        let va = v.act_basis(a, k);
                        let wb = w.act_basis(b, l);
                        for (k2, cv) in va.iter() {
                            for (l2, cw) in wb.iter() {
                                let key = k2 * nw + l2;
                                let entry = col.entry(key).or_insert_with(GaussQ::zero);
                                *entry = entry.add(&c.mul(cv).mul(cw));
                                if entry.is_zero() {
                                    col.remove(&key);
                                }
                            }
                        }
                    }
                    out.cols[k * nw + l] = col;
                }
            }
        }
    }
    out
}

/// Check that the monoidal map intertwines the braidings:
/// `c_{W,V} ∘ Ψ^χ_{F(V),F(W)} = Ψ_{V,W} ∘ c_{V,W}`.
pub fn braiding_intertwined(
    v: &CrossedModule,
    w: &CrossedModule,
    chi: &Cocycle,
) -> Result<bool, FindimError> {
    let fv = functor_f(v, chi)?;
    let fw = functor_f(w, chi)?;
    let psi_twisted = braiding(&fv, &fw);
    let psi = braiding(v, w);
    let c_vw = monoidal_c(v, w, chi);
    let c_wv = monoidal_c(w, v, chi);
    Ok(c_wv.compose(&psi_twisted) == psi.compose(&c_vw))
}

/// The projection isomorphism `α: F(H) → H-twisted` of crossed modules,
/// with its inverse; every defining identity is verified exactly.
///
/// Dual side: `α(h) = χ⁻¹(h₁ ⊗ S h₅) χ(h₃ ⊗ S h₄) h₂` and
/// `α⁻¹(h) = χ⁻¹(h₁ S h₃ ⊗ h₄) h₂`.  Algebra side:
/// `α(h) = (χ⁻⁽¹⁾ ▷ h) χ⁻⁽²⁾` with the adjoint action.
pub fn alpha_map(h: &Arc<FinHopf>, chi: &Cocycle) -> Result<(QMat, QMat), FindimError> {
    if !check_cocycle(h, chi) {
        return Err(FindimError::InvalidCocycle("cocycle validation failed".into()));
    }
    let d = h.dim;
    let (alpha, alpha_inv) = match chi.side {
        CocycleSide::Dual => {
            let mut alpha = QMat::zero(d, d);
            for m in 0..d {
                let mut col = QVec::new();
                for (legs, c) in h.iter_comul_basis(m, 5) {
                    let f1 = chi.eval(&vec_basis(legs[0]), &h.antipode[legs[4]], true);
                    if f1.is_zero() {
                        continue;
                    }
                    let f2 = chi.eval(&vec_basis(legs[2]), &h.antipode[legs[3]], false);
                    if f2.is_zero() {
                        continue;
                    }
                    let entry = col.entry(legs[1]).or_insert_with(GaussQ::zero);
                    *entry = entry.add(&c.mul(&f1).mul(&f2));
                    if entry.is_zero() {
                        col.remove(&legs[1]);
                    }
                }
                alpha.cols[m] = col;
            }
            let mut alpha_inv = QMat::zero(d, d);
            for m in 0..d {
                let mut col = QVec::new();
                for (legs, c) in h.iter_comul_basis(m, 4) {
                    let head = h.mul_elem(&vec_basis(legs[0]), &h.antipode[legs[2]]);
                    let f = chi.eval(&head, &vec_basis(legs[3]), true);
                    if f.is_zero() {
                        continue;
                    }
                    let entry = col.entry(legs[1]).or_insert_with(GaussQ::zero);
                    *entry = entry.add(&c.mul(&f));
                    if entry.is_zero() {
                        col.remove(&legs[1]);
                    }
                }
                alpha_inv.cols[m] = col;
            }
            (alpha, alpha_inv)
        }
        CocycleSide::Algebra => {
            let adjoint = CrossedModule::self_adjoint_regular(h.clone());
            let t_inv = chi.as_tensor(true);
            let mut alpha = QMat::zero(d, d);
            for m in 0..d {
                let mut col = QVec::new();
                for (ab, c) in t_inv.iter() {
                    let (a, b) = (ab / d, ab % d);
                    let acted = adjoint.act_basis(a, m);
                    let prod = h.mul_elem(&acted, &vec_basis(b));
                    vec_add_scaled(&mut col, &prod, c);
                }
                alpha.cols[m] = col;
            }
            let alpha_inv = alpha
                .inverse()
                .ok_or_else(|| FindimError::NotIso("α is not invertible".into()))?;
            (alpha, alpha_inv)
        }
    };
    // exact verification
    let id = QMat::identity(d);
    if alpha.compose(&alpha_inv) != id || alpha_inv.compose(&alpha) != id {
        return Err(FindimError::NotIso("α ∘ α⁻¹ ≠ id".into()));
    }
    if alpha.apply(&h.unit) != h.unit {
        return Err(FindimError::NotIso("α(1) ≠ 1".into()));
    }
    for m in 0..d {
        let eps_of_alpha = h.counit_elem(&alpha.cols[m]);
        let eps = h.counit.get(&m).cloned().unwrap_or_else(GaussQ::zero);
        if eps_of_alpha != eps {
            return Err(FindimError::NotIso("α does not preserve ker ε".into()));
        }
    }
    // crossed-module intertwining
    let (source, target) = match chi.side {
        CocycleSide::Dual => {
            let src = functor_f(&CrossedModule::self_left_adjoint(h.clone()), chi)?;
            let tgt = CrossedModule::self_left_adjoint(src.hopf.clone());
            (src, tgt)
        }
        CocycleSide::Algebra => {
            let src = functor_f(&CrossedModule::self_adjoint_regular(h.clone()), chi)?;
            let tgt = CrossedModule::self_adjoint_regular(src.hopf.clone());
            (src, tgt)
        }
    };
    for i in 0..d {
        for k in 0..d {
            let lhs = alpha.apply(source.act_basis(i, k));
            let rhs = target.act_elem(&vec_basis(i), &alpha.cols[k]);
            if lhs != rhs {
                return Err(FindimError::NotIso(format!(
                    "α fails to intertwine the actions at ({i},{k})"
                )));
            }
        }
    }
    for k in 0..d {
        // (id⊗α) β_src(f_k) = β_tgt(α f_k)
        let mut lhs = QVec::new();
        for (mw, c) in source.coaction[k].iter() {
            let (m, w) = (mw / d, mw % d);
            for (w2, c2) in alpha.cols[w].iter() {
                let key = m * d + w2;
                let entry = lhs.entry(key).or_insert_with(GaussQ::zero);
                *entry = entry.add(&c.mul(c2));
                if entry.is_zero() {
                    lhs.remove(&key);
                }
            }
        }
        let rhs = target.coact_elem(&alpha.cols[k]);
        if lhs != rhs {
            return Err(FindimError::NotIso(format!(
                "α fails to intertwine the coactions at {k}"
            )));
        }
    }
    Ok((alpha, alpha_inv))
}

#[cfg(test)]
mod tests {
    use super::super::corpus::*;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn self_crossed_modules_are_valid() {
        for h in [
            function_algebra(&klein_table()).unwrap(),
            group_algebra(&s3_table()).unwrap(),
            function_algebra(&s3_table()).unwrap(),
        ] {
            let v = CrossedModule::self_left_adjoint(h.clone());
            validate_crossed(&v).unwrap();
            let w = CrossedModule::self_adjoint_regular(h.clone());
            validate_crossed(&w).unwrap();
            let psi = crossed_check(&v, &v).unwrap();
            assert_eq!(psi.rank(), h.dim * h.dim);
        }
    }

    #[test]
    fn trivial_action_fails_on_noncommutative() {
        // On a group algebra the adjoint coaction is trivial (group-likes
        // give u u⁻¹ ⊗ u), so the probe keeps the nontrivial regular
        // coaction and trivializes the action: compatibility then demands
        // hv = vh and fails on kS₃.
        let h = group_algebra(&s3_table()).unwrap();
        let good = CrossedModule::self_adjoint_regular(h.clone());
        let mut bad = good.clone();
        for i in 0..h.dim {
            for k in 0..h.dim {
                let eps = h.counit.get(&i).cloned().unwrap_or_else(GaussQ::zero);
                bad.action[i * h.dim + k] = vec_scale(&vec_basis(k), &eps);
            }
        }
        let err = validate_crossed(&bad).unwrap_err();
        assert!(matches!(
            err,
            FindimError::NotCrossed { basis_pair: Some(_), .. }
        ));
        // the trivialized action is still a perfectly good module, so the
        // failure is precisely the compatibility condition
        let commutative = function_algebra(&s3_table()).unwrap();
        let triv = CrossedModule::trivial(commutative);
        validate_crossed(&triv).unwrap();
    }

    #[test]
    fn ker_eps_is_a_subcrossed_module() {
        let h = function_algebra(&s3_table()).unwrap();
        let v = CrossedModule::self_left_adjoint(h.clone());
        let d = h.dim;
        let mut sub = Subspace::new(d);
        let mut kere: Vec<QVec> = Vec::new();
        for k in 0..d {
            let eps = h.counit.get(&k).cloned().unwrap_or_else(GaussQ::zero);
            let mut vv = vec_basis(k);
            vec_add_scaled(&mut vv, &h.unit, &eps.neg());
            if !vec_is_zero(&vv) && sub.insert(&vv) {
                kere.push(vv);
            }
        }
        assert_eq!(sub.dim(), d - 1);
        for x in kere.iter() {
            for i in 0..d {
                assert!(sub.contains(&v.act_elem(&vec_basis(i), x)));
            }
            let co = v.coact_elem(x);
            let mut by_m: std::collections::BTreeMap<usize, QVec> = Default::default();
            for (mw, c) in co.iter() {
                by_m.entry(mw / d).or_default().insert(mw % d, c.clone());
            }
            for (_, leg) in by_m {
                assert!(sub.contains(&leg));
            }
        }
    }

    #[test]
    fn functor_trivial_cocycle_is_identity() {
        let h = klein_group_hopf().unwrap();
        let v = CrossedModule::self_left_adjoint(h.clone());
        let chi = Cocycle::trivial(&h, CocycleSide::Dual);
        let fv = functor_f(&v, &chi).unwrap();
        assert_eq!(fv.action, v.action);
        assert_eq!(fv.coaction, v.coaction);
        let c = monoidal_c(&v, &v, &chi);
        assert_eq!(c, QMat::identity(h.dim * h.dim));
    }

    #[test]
    fn functor_involutive_and_braided_dual_side() {
        let h = klein_group_hopf().unwrap();
        let chi = klein_bicharacter_cocycle();
        let v = CrossedModule::self_left_adjoint(h.clone());
        let fv = functor_f(&v, &chi).unwrap();
        validate_crossed(&fv).unwrap();
        let back = functor_f(&fv, &chi.inverted()).unwrap();
        assert_eq!(back.action, v.action);
        assert_eq!(back.coaction, v.coaction);
        assert!(braiding_intertwined(&v, &v, &chi).unwrap());
    }

    #[test]
    fn functor_involutive_and_braided_s3_dual() {
        let h = function_algebra(&s3_table()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let chi = seeded_dual_coboundary(&h, &mut rng).unwrap();
        let v = CrossedModule::self_left_adjoint(h.clone());
        let fv = functor_f(&v, &chi).unwrap();
        validate_crossed(&fv).unwrap();
        let back = functor_f(&fv, &chi.inverted()).unwrap();
        assert_eq!(back.action, v.action);
        assert!(braiding_intertwined(&v, &v, &chi).unwrap());
    }

    #[test]
    fn functor_involutive_and_braided_algebra_side() {
        let h = group_algebra(&s3_table()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let chi = seeded_algebra_coboundary(&h, &mut rng).unwrap();
        let v = CrossedModule::self_adjoint_regular(h.clone());
        let fv = functor_f(&v, &chi).unwrap();
        validate_crossed(&fv).unwrap();
        let back = functor_f(&fv, &chi.inverted()).unwrap();
        assert_eq!(back.coaction, v.coaction);
        assert!(braiding_intertwined(&v, &v, &chi).unwrap());
    }

    #[test]
    fn alpha_trivial_is_identity() {
        let h = klein_group_hopf().unwrap();
        let chi = Cocycle::trivial(&h, CocycleSide::Dual);
        let (alpha, _) = alpha_map(&h, &chi).unwrap();
        assert_eq!(alpha, QMat::identity(h.dim));
    }

    #[test]
    fn alpha_bicharacter_exact() {
        let h = klein_group_hopf().unwrap();
        let chi = klein_bicharacter_cocycle();
        alpha_map(&h, &chi).unwrap();
    }

    #[test]
    fn alpha_s3_coboundary_exact_both_sides() {
        let hf = function_algebra(&s3_table()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let chi = seeded_dual_coboundary(&hf, &mut rng).unwrap();
        alpha_map(&hf, &chi).unwrap();

        let hg = group_algebra(&s3_table()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let chi = seeded_algebra_coboundary(&hg, &mut rng).unwrap();
        alpha_map(&hg, &chi).unwrap();
    }
}
