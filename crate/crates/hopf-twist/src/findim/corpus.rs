//! The fixed test corpus: group algebras and function algebras of small
//! groups, plus seeded cocycles on them.

use super::cocycle::{coboundary_algebra_side, coboundary_dual_side, Cocycle};
use super::hopf::FinHopf;
use super::linalg::*;
use super::FindimError;
use crate::scalar::GaussQ;
use num::{BigRational, Zero};
use rand::Rng;
use std::sync::Arc;

/// Multiplication table of the cyclic group Z_n (indices mod n).
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

/// Multiplication table of Z₂ × Z₂ with index (a,b) → 2a + b.
pub fn klein_table() -> Vec<Vec<usize>> {
    (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    let (a1, b1) = (i / 2, i % 2);
                    let (a2, b2) = (j / 2, j % 2);
                    2 * ((a1 + a2) % 2) + (b1 + b2) % 2
                })
                .collect()
        })
        .collect()
}

/// Multiplication table of the symmetric group S₃ on permutations of
/// {0,1,2}, indexed in a fixed enumeration.
pub fn s3_table() -> Vec<Vec<usize>> {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [1, 2, 0],
        [2, 0, 1],
        [0, 2, 1],
        [2, 1, 0],
        [1, 0, 2],
    ];
    let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] {
        // (p∘q)(x) = p(q(x))
        [p[q[0]], p[q[1]], p[q[2]]]
    };
    let index = |r: &[usize; 3]| perms.iter().position(|p| p == r).unwrap();
    (0..6)
        .map(|i| (0..6).map(|j| index(&compose(&perms[i], &perms[j]))).collect())
        .collect()
}

fn inverse_of(table: &[Vec<usize>], g: usize) -> usize {
    let e = identity_of(table);
    (0..table.len()).find(|h| table[g][*h] == e).unwrap()
}

fn identity_of(table: &[Vec<usize>]) -> usize {
    (0..table.len()).find(|e| (0..table.len()).all(|g| table[*e][g] == g)).unwrap()
}

/// Group algebra `kG`: basis the group elements, group-like coproduct.
pub fn group_algebra(table: &[Vec<usize>]) -> Result<Arc<FinHopf>, FindimError> {
    let d = table.len();
    let e = identity_of(table);
    let mut mul = vec![QVec::new(); d * d];
    for i in 0..d {
        for j in 0..d {
            mul[i * d + j] = vec_basis(table[i][j]);
        }
    }
    let comul = (0..d).map(|i| vec_basis(i * d + i)).collect();
    let counit = (0..d).map(|i| (i, GaussQ::one())).collect();
    let antipode: Vec<QVec> = (0..d).map(|i| vec_basis(inverse_of(table, i))).collect();
    FinHopf::new(d, mul, vec_basis(e), comul, counit, antipode.clone(), antipode)
}

/// Function algebra `k(G)`: δ-basis, pointwise product, convolution
/// coproduct.
pub fn function_algebra(table: &[Vec<usize>]) -> Result<Arc<FinHopf>, FindimError> {
    let d = table.len();
    let e = identity_of(table);
    let mut mul = vec![QVec::new(); d * d];
    for i in 0..d {
        mul[i * d + i] = vec_basis(i);
    }
    let mut comul = vec![QVec::new(); d];
    for a in 0..d {
        for b in 0..d {
            let g = table[a][b];
            comul[g].insert(a * d + b, GaussQ::one());
        }
    }
    let unit: QVec = (0..d).map(|i| (i, GaussQ::one())).collect();
    let counit = vec_basis(e);
    let antipode: Vec<QVec> = (0..d).map(|i| vec_basis(inverse_of(table, i))).collect();
    FinHopf::new(d, mul, unit, comul, counit, antipode.clone(), antipode)
}

/// The bicharacter cocycle `χ(u ⊗ v) = β(u,v)`, `β((a,b),(c,d)) = (-1)^{bc}`,
/// on the Hopf algebra of Z₂×Z₂ presented with a group-like basis (the
/// self-dual presentation of `k(Z₂×Z₂)`: the character table identifies
/// the δ-basis function algebra with the group algebra).  On group-likes
/// the convolution is pointwise, so the inverse is the pointwise one.
pub fn klein_bicharacter_cocycle() -> Cocycle {
    let beta = |u: usize, v: usize| -> GaussQ {
        let b = u % 2;
        let c = v / 2;
        if b * c % 2 == 1 {
            GaussQ::from_int(-1)
        } else {
            GaussQ::one()
        }
    };
    let data: Vec<Vec<GaussQ>> = (0..4).map(|u| (0..4).map(|v| beta(u, v)).collect()).collect();
    Cocycle::dual_side(data.clone(), data)
}

/// The Hopf algebra carrying [`klein_bicharacter_cocycle`]: Z₂×Z₂ with a
/// group-like basis.
pub fn klein_group_hopf() -> Result<Arc<FinHopf>, FindimError> {
    group_algebra(&klein_table())
}

/// A seeded convolution-invertible functional on `k(G)` normalized to
/// `u(1) = 1`, together with its convolution inverse.
pub fn random_invertible_functional<R: Rng>(
    h: &FinHopf,
    rng: &mut R,
) -> Result<(Vec<GaussQ>, Vec<GaussQ>), FindimError> {
    let d = h.dim;
    for _ in 0..64 {
        let mut u: Vec<GaussQ> = (0..d)
            .map(|_| {
                let num = rng.gen_range(-3i64..=3);
                let den = rng.gen_range(1i64..=2);
                GaussQ::new(BigRational::new(num.into(), den.into()), BigRational::zero())
            })
            .collect();
        // normalize u(1_H) = 1
        let u_at_one: GaussQ = h
            .unit
            .iter()
            .fold(GaussQ::zero(), |acc, (i, c)| acc.add(&c.mul(&u[*i])));
        if u_at_one.is_zero() {
            continue;
        }
        let scale = u_at_one.inv();
        for c in u.iter_mut() {
            *c = c.mul(&scale);
        }
        // convolution inverse: Σ u(m₁) v(m₂) = ε(m) for all basis m
        let mut mat = vec![vec![GaussQ::zero(); d]; d];
        let mut rhs = vec![GaussQ::zero(); d];
        for m in 0..d {
            for (xy, c) in h.comul[m].iter() {
                let (x, y) = (xy / d, xy % d);
                mat[m][y] = mat[m][y].add(&c.mul(&u[x]));
            }
            rhs[m] = h.counit.get(&m).cloned().unwrap_or_else(GaussQ::zero);
        }
        if let Some(v) = solve_dense(&mat, &rhs) {
            return Ok((u, v));
        }
    }
    Err(FindimError::Singular("no invertible functional found".into()))
}

/// A seeded invertible element `v` of `H` with `ε(v) = 1`, plus `v⁻¹`.
pub fn random_invertible_element<R: Rng>(
    h: &FinHopf,
    rng: &mut R,
) -> Result<(QVec, QVec), FindimError> {
    let d = h.dim;
    for _ in 0..64 {
        let mut v = QVec::new();
        for i in 0..d {
            let num = rng.gen_range(-2i64..=2);
            if num != 0 {
                v.insert(i, GaussQ::from_int(num));
            }
        }
        let eps = h.counit_elem(&v);
        if eps.is_zero() {
            continue;
        }
        let scale = eps.inv();
        let v = vec_scale(&v, &scale);
        // left-multiplication matrix and solve v · x = 1
        let mut mat = vec![vec![GaussQ::zero(); d]; d];
        for j in 0..d {
            let col = h.mul_elem(&v, &vec_basis(j));
            for (i, c) in col.iter() {
                mat[*i][j] = c.clone();
            }
        }
        let rhs = vec_to_dense(&h.unit, d);
        if let Some(x) = solve_dense(&mat, &rhs) {
            let xv = dense_to_vec(&x);
            // require a two-sided inverse
            if h.mul_elem(&xv, &v) == h.unit {
                return Ok((v, xv));
            }
        }
    }
    Err(FindimError::Singular("no invertible element found".into()))
}

/// Dual-side coboundary cocycle on `H` from a seeded functional.
pub fn seeded_dual_coboundary<R: Rng>(h: &FinHopf, rng: &mut R) -> Result<Cocycle, FindimError> {
    let (u, uinv) = random_invertible_functional(h, rng)?;
    coboundary_dual_side(h, &u, &uinv)
}

/// Algebra-side coboundary cocycle `(v⊗v)Δ(v⁻¹)` from a seeded element.
pub fn seeded_algebra_coboundary<R: Rng>(h: &FinHopf, rng: &mut R) -> Result<Cocycle, FindimError> {
    let (v, vinv) = random_invertible_element(h, rng)?;
    coboundary_algebra_side(h, &v, &vinv)
}
