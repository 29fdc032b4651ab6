//! Twisting a Hopf algebra by a two-cocycle: the bullet product and
//! cotwisted antipode on the dual side, the conjugated coproduct on the
//! algebra side.

use super::cocycle::{check_cocycle, Cocycle, CocycleSide};
use super::hopf::FinHopf;
use super::linalg::*;
use super::FindimError;
use crate::scalar::GaussQ;
use std::sync::Arc;

/// `U(h) = χ(h₁ ⊗ S h₂)` as a functional (dense values per basis index).
pub fn u_functional(h: &FinHopf, chi: &Cocycle) -> Vec<GaussQ> {
    let d = h.dim;
    (0..d)
        .map(|i| {
            let mut acc = GaussQ::zero();
            for (ab, c) in h.comul[i].iter() {
                let (a, b) = (ab / d, ab % d);
                acc = acc.add(&c.mul(&chi.eval(&vec_basis(a), &h.antipode[b], false)));
            }
            acc
        })
        .collect()
}

/// Convolution inverse of a functional, by exact linear solve.
pub fn convolution_inverse(h: &FinHopf, u: &[GaussQ]) -> Result<Vec<GaussQ>, FindimError> {
    let d = h.dim;
    let mut mat = vec![vec![GaussQ::zero(); d]; d];
    let mut rhs = vec![GaussQ::zero(); d];
    for m in 0..d {
        for (xy, c) in h.comul[m].iter() {
            let (x, y) = (xy / d, xy % d);
            mat[m][y] = mat[m][y].add(&c.mul(&u[x]));
        }
        rhs[m] = h.counit.get(&m).cloned().unwrap_or_else(GaussQ::zero);
    }
    solve_dense(&mat, &rhs)
        .ok_or_else(|| FindimError::Singular("functional is not convolution invertible".into()))
}

/// Twist `H` by a validated cocycle.
///
/// Dual side: same coalgebra, bullet product
/// `h • g = χ(h₁⊗g₁) h₂g₂ χ⁻¹(h₃⊗g₃)` and antipode
/// `S^χ h = U(h₁) S(h₂) U⁻¹(h₃)`.  Algebra side: same algebra, conjugated
/// coproduct `Δ_χ = χ Δ(·) χ⁻¹` and `S_χ = U S(·) U⁻¹` with
/// `U = χ⁽¹⁾ S χ⁽²⁾ ∈ H`.
pub fn twist(h: &FinHopf, chi: &Cocycle) -> Result<Arc<FinHopf>, FindimError> {
    if !check_cocycle(h, chi) {
        return Err(FindimError::InvalidCocycle("cocycle validation failed".into()));
    }
    match chi.side {
        CocycleSide::Dual => twist_dual(h, chi),
        CocycleSide::Algebra => twist_algebra(h, chi),
    }
}

fn twist_dual(h: &FinHopf, chi: &Cocycle) -> Result<Arc<FinHopf>, FindimError> {
    let d = h.dim;
    let mut mul = vec![QVec::new(); d * d];
    for i in 0..d {
        let legs_i = h.iter_comul_basis(i, 3);
        for j in 0..d {
            let legs_j = h.iter_comul_basis(j, 3);
            let mut out = QVec::new();
            for (si, ci) in legs_i.iter() {
                for (sj, cj) in legs_j.iter() {
                    let f1 = &chi.data[si[0]][sj[0]];
                    if f1.is_zero() {
                        continue;
                    }
                    let f3 = &chi.inverse[si[2]][sj[2]];
                    if f3.is_zero() {
                        continue;
                    }
                    let c = ci.mul(cj).mul(f1).mul(f3);
                    vec_add_scaled(&mut out, &h.mul[si[1] * d + sj[1]], &c);
                }
            }
            mul[i * d + j] = out;
        }
    }
    let u = u_functional(h, chi);
    let u_inv = convolution_inverse(h, &u)?;
    let mut antipode = vec![QVec::new(); d];
    for i in 0..d {
        let mut out = QVec::new();
        for (legs, c) in h.iter_comul_basis(i, 3) {
            let coeff = c.mul(&u[legs[0]]).mul(&u_inv[legs[2]]);
            vec_add_scaled(&mut out, &h.antipode[legs[1]], &coeff);
        }
        antipode[i] = out;
    }
    let antipode_inv = FinHopf::solve_antipode_inv(d, &antipode)?;
    FinHopf::new(
        d,
        mul,
        h.unit.clone(),
        h.comul.clone(),
        h.counit.clone(),
        antipode,
        antipode_inv,
    )
}

fn twist_algebra(h: &FinHopf, chi: &Cocycle) -> Result<Arc<FinHopf>, FindimError> {
    let d = h.dim;
    let t = chi.as_tensor(false);
    let t_inv = chi.as_tensor(true);
    let mut comul = vec![QVec::new(); d];
    for i in 0..d {
        comul[i] = h.mul2_elem(&h.mul2_elem(&t, &h.comul[i]), &t_inv);
    }
    // U = χ⁽¹⁾ S(χ⁽²⁾)
    let mut u = QVec::new();
    for (ij, c) in t.iter() {
        let (i, j) = (ij / d, ij % d);
        vec_add_scaled(&mut u, &h.mul_elem(&vec_basis(i), &h.antipode[j]), c);
    }
    // U⁻¹ in H by linear solve (left inverse verified two-sided)
    let mut mat = vec![vec![GaussQ::zero(); d]; d];
    for j in 0..d {
        let col = h.mul_elem(&u, &vec_basis(j));
        for (i, c) in col.iter() {
            mat[*i][j] = c.clone();
        }
    }
    let rhs = vec_to_dense(&h.unit, d);
    let u_inv = dense_to_vec(
        &solve_dense(&mat, &rhs)
            .ok_or_else(|| FindimError::Singular("U is not invertible".into()))?,
    );
    if h.mul_elem(&u_inv, &u) != h.unit {
        return Err(FindimError::Singular("U has no two-sided inverse".into()));
    }
    let mut antipode = vec![QVec::new(); d];
    for i in 0..d {
        antipode[i] = h.mul_elem(&h.mul_elem(&u, &h.antipode[i]), &u_inv);
    }
    let antipode_inv = FinHopf::solve_antipode_inv(d, &antipode)?;
    FinHopf::new(
        d,
        h.mul.clone(),
        h.unit.clone(),
        comul,
        h.counit.clone(),
        antipode,
        antipode_inv,
    )
}

#[cfg(test)]
mod tests {
    use super::super::corpus::*;
    use super::super::hopf::check_hopf;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_twist_is_identity() {
        let h = function_algebra(&klein_table()).unwrap();
        let chi = Cocycle::trivial(&h, CocycleSide::Dual);
        let t = twist(&h, &chi).unwrap();
        assert_eq!(*t, *h);
        let hg = group_algebra(&cyclic_table(3)).unwrap();
        let chi = Cocycle::trivial(&hg, CocycleSide::Algebra);
        let t = twist(&hg, &chi).unwrap();
        assert_eq!(*t, *hg);
    }

    #[test]
    fn bicharacter_twist_passes_axioms_and_involutivity() {
        let h = klein_group_hopf().unwrap();
        let chi = klein_bicharacter_cocycle();
        let t = twist(&h, &chi).unwrap();
        assert!(check_hopf(&t).all_pass());
        let back = twist(&t, &chi.inverted()).unwrap();
        assert_eq!(*back, *h);
    }

    #[test]
    fn s3_coboundary_twist_dual_side() {
        let h = function_algebra(&s3_table()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let chi = seeded_dual_coboundary(&h, &mut rng).unwrap();
        let t = twist(&h, &chi).unwrap();
        assert!(check_hopf(&t).all_pass());
        let back = twist(&t, &chi.inverted()).unwrap();
        assert_eq!(*back, *h);
    }

    #[test]
    fn s3_coboundary_twist_algebra_side() {
        let h = group_algebra(&s3_table()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let chi = seeded_algebra_coboundary(&h, &mut rng).unwrap();
        let t = twist(&h, &chi).unwrap();
        assert!(check_hopf(&t).all_pass());
        let back = twist(&t, &chi.inverted()).unwrap();
        assert_eq!(*back, *h);
    }

    #[test]
    fn unvalidated_cocycle_is_refused() {
        let h = klein_group_hopf().unwrap();
        let mut chi = klein_bicharacter_cocycle();
        chi.data[0][0] = GaussQ::from_int(2);
        assert!(matches!(twist(&h, &chi), Err(FindimError::InvalidCocycle(_))));
    }
}
