//! Bicovariant bimodules `Ω = V ⊗ H` built from crossed modules, their
//! axioms, and twisting on both sides.

use super::cocycle::{check_cocycle, Cocycle, CocycleSide};
use super::crossed::{validate_crossed, CrossedModule};
use super::hopf::FinHopf;
use super::linalg::*;
use super::twist::twist;
use super::FindimError;
use crate::scalar::GaussQ;
use std::sync::Arc;

/// A bicovariant bimodule: an `H`-bimodule and bicomodule whose coactions
/// are bimodule maps and commute.  Basis index of `Ω`: `v·dim + k` for
/// `f_v ⊗ e_k` in the canonical form `V ⊗ H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicovBimodule {
    pub hopf: Arc<FinHopf>,
    pub odim: usize,
    /// `left_action[h·odim + w] = e_h · ω_w`
    pub left_action: Vec<QVec>,
    /// `right_action[w·dim + h] = ω_w · e_h`
    pub right_action: Vec<QVec>,
    /// `left_coaction[w] ∈ H⊗Ω` (index `m·odim + w'`)
    pub left_coaction: Vec<QVec>,
    /// `right_coaction[w] ∈ Ω⊗H` (index `w'·dim + m`)
    pub right_coaction: Vec<QVec>,
}

impl BicovBimodule {
    pub fn left_act(&self, h: &QVec, w: &QVec) -> QVec {
        let mut out = QVec::new();
        for (i, ch) in h.iter() {
            for (k, cw) in w.iter() {
                vec_add_scaled(&mut out, &self.left_action[i * self.odim + k], &ch.mul(cw));
            }
        }
        out
    }

    pub fn right_act(&self, w: &QVec, h: &QVec) -> QVec {
        let mut out = QVec::new();
        for (k, cw) in w.iter() {
            for (i, ch) in h.iter() {
                vec_add_scaled(&mut out, &self.right_action[k * self.hopf.dim + i], &cw.mul(ch));
            }
        }
        out
    }

    /// Both coactions applied: `ω ↦ ω₍₁₎ ⊗ ω₍2̲₎ ⊗ ω₍₃₎ ∈ H⊗Ω⊗H`
    /// (index `(m1·odim + w)·dim + m2`).
    pub fn both_coactions(&self, w: usize) -> QVec {
        let d = self.hopf.dim;
        let n = self.odim;
        let mut out = QVec::new();
        for (mw, c) in self.left_coaction[w].iter() {
            let (m1, w1) = (mw / n, mw % n);
            for (wm, c2) in self.right_coaction[w1].iter() {
                let (w2, m2) = (wm / d, wm % d);
                let key = (m1 * n + w2) * d + m2;
                let entry = out.entry(key).or_insert_with(GaussQ::zero);
                *entry = entry.add(&c.mul(c2));
                if entry.is_zero() {
                    out.remove(&key);
                }
            }
        }
        out
    }
}

/// The canonical bicovariant bimodule `Ω = V ⊗ H` of a crossed module:
/// `h·(v⊗g) = h₁▷v ⊗ h₂g`, `(v⊗g)·h = v ⊗ gh`, coactions induced from
/// the coaction on `V` and the coproduct of `H`.
pub fn bicov(v: &CrossedModule) -> Result<BicovBimodule, FindimError> {
    validate_crossed(v)?;
    let h = v.hopf.clone();
    let d = h.dim;
    let n = v.vdim;
    let odim = n * d;
    let widx = |vv: usize, k: usize| vv * d + k;

    let mut left_action = vec![QVec::new(); d * odim];
    for i in 0..d {
        for vv in 0..n {
            for k in 0..d {
                let mut out = QVec::new();
                for (xy, c) in h.comul[i].iter() {
                    let (h1, h2) = (xy / d, xy % d);
                    let acted = v.act_basis(h1, vv);
                    let prod = &h.mul[h2 * d + k];
                    for (v2, cv) in acted.iter() {
                        for (k2, ck) in prod.iter() {
                            let key = widx(*v2, *k2);
                            let entry = out.entry(key).or_insert_with(GaussQ::zero);
                            *entry = entry.add(&c.mul(cv).mul(ck));
                            if entry.is_zero() {
                                out.remove(&key);
                            }
                        }
                    }
                }
                left_action[i * odim + widx(vv, k)] = out;
            }
        }
    }
    let mut right_action = vec![QVec::new(); odim * d];
    for vv in 0..n {
        for k in 0..d {
            for i in 0..d {
                let mut out = QVec::new();
                for (k2, ck) in h.mul[k * d + i].iter() {
                    out.insert(widx(vv, *k2), ck.clone());
                }
                right_action[widx(vv, k) * d + i] = out;
            }
        }
    }
    let mut left_coaction = vec![QVec::new(); odim];
    for vv in 0..n {
        for k in 0..d {
            let mut out = QVec::new();
            for (mw, c) in v.coaction[vv].iter() {
                let (m, v2) = (mw / n, mw % n);
                for (xy, c2) in h.comul[k].iter() {
                    let (k1, k2) = (xy / d, xy % d);
                    let head = &h.mul[m * d + k1];
                    for (m2, cm) in head.iter() {
                        let key = m2 * odim + widx(v2, k2);
                        let entry = out.entry(key).or_insert_with(GaussQ::zero);
                        *entry = entry.add(&c.mul(c2).mul(cm));
                        if entry.is_zero() {
                            out.remove(&key);
                        }
                    }
                }
            }
            left_coaction[widx(vv, k)] = out;
        }
    }
    let mut right_coaction = vec![QVec::new(); odim];
    for vv in 0..n {
        for k in 0..d {
            let mut out = QVec::new();
            for (xy, c) in h.comul[k].iter() {
                let (k1, k2) = (xy / d, xy % d);
                out.insert(widx(vv, k1) * d + k2, c.clone());
            }
            right_coaction[widx(vv, k)] = out;
        }
    }
    Ok(BicovBimodule { hopf: h, odim, left_action, right_action, left_coaction, right_coaction })
}

/// Exact verification of all bicovariance axioms.
pub fn check_bicov(o: &BicovBimodule) -> Result<(), FindimError> {
    let h = &o.hopf;
    let d = h.dim;
    let n = o.odim;
    let fail = |ctx: &str| {
        Err(FindimError::NotCrossed { context: format!("bicovariance: {ctx}"), basis_pair: None })
    };
    for w in 0..n {
        if o.left_act(&h.unit, &vec_basis(w)) != vec_basis(w)
            || o.right_act(&vec_basis(w), &h.unit) != vec_basis(w)
        {
            return fail("unit");
        }
    }
    for i in 0..d {
        for j in 0..d {
            for w in 0..n {
                let lhs = o.left_act(&h.mul[i * d + j], &vec_basis(w));
                let rhs = o.left_act(&vec_basis(i), &o.left_action[j * n + w]);
                if lhs != rhs {
                    return fail("left associativity");
                }
                let lhs = o.right_act(&vec_basis(w), &h.mul[i * d + j]);
                let rhs = o.right_act(&o.right_action[w * d + i], &vec_basis(j));
                if lhs != rhs {
                    return fail("right associativity");
                }
                let lhs = o.right_act(&o.left_action[i * n + w], &vec_basis(j));
                let rhs = o.left_act(&vec_basis(i), &o.right_action[w * d + j]);
                if lhs != rhs {
                    return fail("bimodule compatibility");
                }
            }
        }
    }
    for w in 0..n {
        let mut left_count = QVec::new();
        for (mw, c) in o.left_coaction[w].iter() {
            let (m, w2) = (mw / n, mw % n);
            if let Some(e) = h.counit.get(&m) {
                let entry = left_count.entry(w2).or_insert_with(GaussQ::zero);
                *entry = entry.add(&c.mul(e));
                if entry.is_zero() {
                    left_count.remove(&w2);
                }
            }
        }
        if left_count != vec_basis(w) {
            return fail("left coaction counit");
        }
        let mut right_count = QVec::new();
        for (wm, c) in o.right_coaction[w].iter() {
            let (w2, m) = (wm / d, wm % d);
            if let Some(e) = h.counit.get(&m) {
                let entry = right_count.entry(w2).or_insert_with(GaussQ::zero);
                *entry = entry.add(&c.mul(e));
                if entry.is_zero() {
                    right_count.remove(&w2);
                }
            }
        }
        if right_count != vec_basis(w) {
            return fail("right coaction counit");
        }
        // (Δ⊗id)β_L = (id⊗β_L)β_L
        let mut lhs = QVec::new();
        let mut rhs = QVec::new();
        for (mw, c) in o.left_coaction[w].iter() {
            let (m, w2) = (mw / n, mw % n);
            for (xy, c2) in h.comul[m].iter() {
                let key = xy * n + w2;
                let entry = lhs.entry(key).or_insert_with(GaussQ::zero);
                *entry = entry.add(&c.mul(c2));
                if entry.is_zero() {
                    lhs.remove(&key);
                }
            }
            for (mw2, c2) in o.left_coaction[w2].iter() {
                let key = (m * d + mw2 / n) * n + mw2 % n;
                let entry = rhs.entry(key).or_insert_with(GaussQ::zero);
                *entry = entry.add(&c.mul(c2));
                if entry.is_zero() {
                    rhs.remove(&key);
                }
            }
        }
        if lhs != rhs {
            return fail("left coaction coassociativity");
        }
        // (β_R⊗id)β_R = (id⊗Δ)β_R
        let mut lhs = QVec::new();
        let mut rhs = QVec::new();
        for (wm, c) in o.right_coaction[w].iter() {
            let (w2, m) = (wm / d, wm % d);
            for (wm2, c2) in o.right_coaction[w2].iter() {
                let key = wm2 * d + m;
                let entry = lhs.entry(key).or_insert_with(GaussQ::zero);
                *entry = entry.add(&c.mul(c2));
                if entry.is_zero() {
                    lhs.remove(&key);
                }
            }
            for (xy, c2) in h.comul[m].iter() {
                let key = (w2 * d + xy / d) * d + xy % d;
                let entry = rhs.entry(key).or_insert_with(GaussQ::zero);
                *entry = entry.add(&c.mul(c2));
                if entry.is_zero() {
                    rhs.remove(&key);
                }
            }
        }
        if lhs != rhs {
            return fail("right coaction coassociativity");
        }
        // coactions commute
        let commuted = {
            let mut out = QVec::new();
            for (wm, c) in o.right_coaction[w].iter() {
                let (w2, m2) = (wm / d, wm % d);
                for (mw, c2) in o.left_coaction[w2].iter() {
                    let key = mw * d + m2;
                    let entry = out.entry(key).or_insert_with(GaussQ::zero);
                    *entry = entry.add(&c.mul(c2));
                    if entry.is_zero() {
                        out.remove(&key);
                    }
                }
            }
            out
        };
        if o.both_coactions(w) != commuted {
            return fail("coactions do not commute");
        }
    }
    // coactions are bimodule maps
    for i in 0..d {
        for w in 0..n {
            // β_L(h·ω) = Δh · β_L(ω)
            let mut lhs = QVec::new();
            for (w2, c) in o.left_action[i * n + w].iter() {
                vec_add_scaled(&mut lhs, &o.left_coaction[*w2], c);
            }
            let mut rhs = QVec::new();
            for (xy, c) in h.comul[i].iter() {
                let (h1, h2) = (xy / d, xy % d);
                for (mw, c2) in o.left_coaction[w].iter() {
                    let (m, w2) = (mw / n, mw % n);
                    let head = &h.mul[h1 * d + m];
                    let tail = &o.left_action[h2 * n + w2];
                    for (m2, cm) in head.iter() {
                        for (w3, cw) in tail.iter() {
                            let key = m2 * n + w3;
                            let entry = rhs.entry(key).or_insert_with(GaussQ::zero);
                            *entry = entry.add(&c.mul(c2).mul(cm).mul(cw));
                            if entry.is_zero() {
                                rhs.remove(&key);
                            }
                        }
                    }
                }
            }
            if lhs != rhs {
                return fail("left coaction is not a left-module map");
            }
            // β_R(ω·h) = β_R(ω) · Δh
            let mut lhs = QVec::new();
            for (w2, c) in o.right_action[w * d + i].iter() {
                vec_add_scaled(&mut lhs, &o.right_coaction[*w2], c);
            }
            let mut rhs = QVec::new();
            for (xy, c) in h.comul[i].iter() {
                let (h1, h2) = (xy / d, xy % d);
                for (wm, c2) in o.right_coaction[w].iter() {
                    let (w2, m) = (wm / d, wm % d);
                    let head = &o.right_action[w2 * d + h1];
                    let tail = &h.mul[m * d + h2];
                    for (w3, cw) in head.iter() {
                        for (m2, cm) in tail.iter() {
                            let key = w3 * d + m2;
                            let entry = rhs.entry(key).or_insert_with(GaussQ::zero);
                            *entry = entry.add(&c.mul(c2).mul(cw).mul(cm));
                            if entry.is_zero() {
                                rhs.remove(&key);
                            }
                        }
                    }
                }
            }
            if lhs != rhs {
                return fail("right coaction is not a right-module map");
            }
            // β_L(ω·h) = β_L(ω) · Δh
            let mut lhs = QVec::new();
            for (w2, c) in o.right_action[w * d + i].iter() {
                vec_add_scaled(&mut lhs, &o.left_coaction[*w2], c);
            }
            let mut rhs = QVec::new();
            for (xy, c) in h.comul[i].iter() {
                let (h1, h2) = (xy / d, xy % d);
                for (mw, c2) in o.left_coaction[w].iter() {
                    let (m, w2) = (mw / n, mw % n);
                    let head = &h.mul[m * d + h1];
                    let tail = &o.right_action[w2 * d + h2];
                    for (m2, cm) in head.iter() {
                        for (w3, cw) in tail.iter() {
                            let key = m2 * n + w3;
                            let entry = rhs.entry(key).or_insert_with(GaussQ::zero);
                            *entry = entry.add(&c.mul(c2).mul(cm).mul(cw));
                            if entry.is_zero() {
                                rhs.remove(&key);
                            }
                        }
                    }
                }
            }
            if lhs != rhs {
                return fail("left coaction is not a right-module map");
            }
        }
    }
    Ok(())
}

/// Twist a bicovariant bimodule.
///
/// Dual side: coactions kept, actions transformed to
/// `h • ω = χ(h₁ ⊗ ω₍₁₎) h₂·ω₍2̲₎ χ⁻¹(ω₍₃₎ ⊗ h₃)`-mirrored per side;
/// algebra side: actions kept, coactions conjugated by `χ`.
pub fn twist_bicov(o: &BicovBimodule, chi: &Cocycle) -> Result<BicovBimodule, FindimError> {
    if !check_cocycle(&o.hopf, chi) {
        return Err(FindimError::InvalidCocycle("cocycle validation failed".into()));
    }
    let h = &o.hopf;
    let d = h.dim;
    let n = o.odim;
    let twisted_hopf = twist(h, chi)?;
    match chi.side {
        CocycleSide::Dual => {
            let both: Vec<QVec> = (0..n).map(|w| o.both_coactions(w)).collect();
            let mut left_action = vec![QVec::new(); d * n];
            for i in 0..d {
                let legs = h.iter_comul_basis(i, 3);
                for w in 0..n {
                    let mut out = QVec::new();
                    for (hl, ch) in legs.iter() {
                        for (key, c) in both[w].iter() {
                            let m2 = key % d;
                            let w1 = (key / d) % n;
                            let m1 = key / (d * n);
                            let f1 = &chi.data[hl[0]][m1];
                            if f1.is_zero() {
                                continue;
                            }
                            let f2 = &chi.inverse[hl[2]][m2];
                            if f2.is_zero() {
                                continue;
                            }
                            let mid = &o.left_action[hl[1] * n + w1];
                            let coeff = ch.mul(c).mul(f1).mul(f2);
                            vec_add_scaled(&mut out, mid, &coeff);
                        }
                    }
                    left_action[i * n + w] = out;
                }
            }
            let mut right_action = vec![QVec::new(); n * d];
            for w in 0..n {
                for i in 0..d {
                    let mut out = QVec::new();
                    for (hl, ch) in h.iter_comul_basis(i, 3) {
                        for (key, c) in both[w].iter() {
                            let m2 = key % d;
                            let w1 = (key / d) % n;
                            let m1 = key / (d * n);
                            let f1 = &chi.data[m1][hl[0]];
                            if f1.is_zero() {
                                continue;
                            }
                            let f2 = &chi.inverse[m2][hl[2]];
                            if f2.is_zero() {
                                continue;
                            }
                            let mid = &o.right_action[w1 * d + hl[1]];
                            let coeff = ch.mul(c).mul(f1).mul(f2);
                            vec_add_scaled(&mut out, mid, &coeff);
                        }
                    }
                    right_action[w * d + i] = out;
                }
            }
            Ok(BicovBimodule {
                hopf: twisted_hopf,
                odim: n,
                left_action,
                right_action,
                left_coaction: o.left_coaction.clone(),
                right_coaction: o.right_coaction.clone(),
            })
        }
        CocycleSide::Algebra => {
            let t = chi.as_tensor(false);
            let t_inv = chi.as_tensor(true);
            let conj_left = |beta: &QVec| -> QVec {
                let mut mid = QVec::new();
                for (ab, cab) in t.iter() {
                    let (a, b) = (ab / d, ab % d);
                    for (mw, c) in beta.iter() {
                        let (m, w) = (mw / n, mw % n);
                        let head = &h.mul[a * d + m];
                        let tail = &o.left_action[b * n + w];
                        for (m2, cm) in head.iter() {
                            for (w2, cw) in tail.iter() {
                                let key = m2 * n + w2;
                                let entry = mid.entry(key).or_insert_with(GaussQ::zero);
                                *entry = entry.add(&cab.mul(c).mul(cm).mul(cw));
                                if entry.is_zero() {
                                    mid.remove(&key);
                                }
                            }
                        }
                    }
                }
                let mut out = QVec::new();
                for (ab, cab) in t_inv.iter() {
                    let (a, b) = (ab / d, ab % d);
                    for (mw, c) in mid.iter() {
                        let (m, w) = (mw / n, mw % n);
                        let head = &h.mul[m * d + a];
                        let tail = &o.right_action[w * d + b];
                        for (m2, cm) in head.iter() {
                            for (w2, cw) in tail.iter() {
                                let key = m2 * n + w2;
                                let entry = out.entry(key).or_insert_with(GaussQ::zero);
                                *entry = entry.add(&cab.mul(c).mul(cm).mul(cw));
                                if entry.is_zero() {
                                    out.remove(&key);
                                }
                            }
                        }
                    }
                }
                out
            };
            let conj_right = |beta: &QVec| -> QVec {
                let mut mid = QVec::new();
                for (ab, cab) in t.iter() {
                    let (a, b) = (ab / d, ab % d);
                    for (wm, c) in beta.iter() {
                        let (w, m) = (wm / d, wm % d);
                        let head = &o.left_action[a * n + w];
                        let tail = &h.mul[b * d + m];
                        for (w2, cw) in head.iter() {
                            for (m2, cm) in tail.iter() {
                                let key = w2 * d + m2;
                                let entry = mid.entry(key).or_insert_with(GaussQ::zero);
                                *entry = entry.add(&cab.mul(c).mul(cw).mul(cm));
                                if entry.is_zero() {
                                    mid.remove(&key);
                                }
                            }
                        }
                    }
                }
                let mut out = QVec::new();
                for (ab, cab) in t_inv.iter() {
                    let (a, b) = (ab / d, ab % d);
                    for (wm, c) in mid.iter() {
                        let (w, m) = (wm / d, wm % d);
                        let head = &o.right_action[w * d + a];
                        let tail = &h.mul[m * d + b];
                        for (w2, cw) in head.iter() {
                            for (m2, cm) in tail.iter() {
                                let key = w2 * d + m2;
                                let entry = out.entry(key).or_insert_with(GaussQ::zero);
                                *entry = entry.add(&cab.mul(c).mul(cw).mul(cm));
                                if entry.is_zero() {
                                    out.remove(&key);
                                }
                            }
                        }
                    }
                }
                out
            };
            Ok(BicovBimodule {
                hopf: twisted_hopf,
                odim: n,
                left_action: o.left_action.clone(),
                right_action: o.right_action.clone(),
                left_coaction: o.left_coaction.iter().map(conj_left).collect(),
                right_coaction: o.right_coaction.iter().map(conj_right).collect(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::corpus::*;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bicov_of_trivial_module_is_h_as_bimodule() {
        let h = function_algebra(&s3_table()).unwrap();
        let v = CrossedModule::trivial(h.clone());
        let o = bicov(&v).unwrap();
        check_bicov(&o).unwrap();
        assert_eq!(o.odim, h.dim);
        for i in 0..h.dim {
            for k in 0..h.dim {
                assert_eq!(o.left_action[i * h.dim + k], h.mul[i * h.dim + k]);
                assert_eq!(o.right_action[k * h.dim + i], h.mul[k * h.dim + i]);
            }
        }
    }

    #[test]
    fn bicov_of_self_crossed_passes_axioms() {
        for h in [
            function_algebra(&cyclic_table(3)).unwrap(),
            group_algebra(&s3_table()).unwrap(),
        ] {
            let v = CrossedModule::self_left_adjoint(h.clone());
            let o = bicov(&v).unwrap();
            check_bicov(&o).unwrap();
        }
    }

    #[test]
    fn right_invariant_part_recovers_action_as_sandwich() {
        // h ▷ v = h₁ · (v⊗1) · S h₂ on the right-invariant subspace
        let h = function_algebra(&s3_table()).unwrap();
        let d = h.dim;
        let v = CrossedModule::self_left_adjoint(h.clone());
        let o = bicov(&v).unwrap();
        let unit_embed = |vv: usize| -> QVec {
            h.unit.iter().map(|(k, c)| (vv * d + k, c.clone())).collect()
        };
        for i in 0..d {
            for vv in 0..d {
                let mut got = QVec::new();
                for (xy, c) in h.comul[i].iter() {
                    let (h1, h2) = (xy / d, xy % d);
                    let mid = o.left_act(&vec_basis(h1), &unit_embed(vv));
                    let res = o.right_act(&mid, &h.antipode[h2]);
                    vec_add_scaled(&mut got, &res, c);
                }
                let mut expected = QVec::new();
                for (v2, c) in v.act_basis(i, vv).iter() {
                    for (k, ck) in h.unit.iter() {
                        expected.insert(v2 * d + k, c.mul(ck));
                    }
                }
                assert_eq!(got, expected, "sandwich recovery failed at ({i},{vv})");
            }
        }
    }

    #[test]
    fn twist_bicov_involutive_dual_side() {
        let h = klein_group_hopf().unwrap();
        let chi = klein_bicharacter_cocycle();
        let v = CrossedModule::self_left_adjoint(h.clone());
        let o = bicov(&v).unwrap();
        let t = twist_bicov(&o, &chi).unwrap();
        check_bicov(&t).unwrap();
        let back = twist_bicov(&t, &chi.inverted()).unwrap();
        assert_eq!(back.left_action, o.left_action);
        assert_eq!(back.right_action, o.right_action);
        assert_eq!(back.left_coaction, o.left_coaction);
        assert_eq!(back.right_coaction, o.right_coaction);
    }

    #[test]
    fn twist_bicov_involutive_algebra_side() {
        let h = group_algebra(&s3_table()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let chi = seeded_algebra_coboundary(&h, &mut rng).unwrap();
        let v = CrossedModule::self_adjoint_regular(h.clone());
        let o = bicov(&v).unwrap();
        let t = twist_bicov(&o, &chi).unwrap();
        check_bicov(&t).unwrap();
        let back = twist_bicov(&t, &chi.inverted()).unwrap();
        assert_eq!(back.left_coaction, o.left_coaction);
        assert_eq!(back.right_coaction, o.right_coaction);
    }
}
