//! Exact sparse/dense linear algebra over the Gaussian rationals, sized
//! for structure-tensor computations on small Hopf algebras.

use crate::scalar::GaussQ;
use std::collections::BTreeMap;

/// Sparse vector: index → nonzero coefficient.
pub type QVec = BTreeMap<usize, GaussQ>;

pub fn vec_zero() -> QVec {
    BTreeMap::new()
}

pub fn vec_basis(i: usize) -> QVec {
    let mut v = QVec::new();
    v.insert(i, GaussQ::one());
    v
}

pub fn vec_add_scaled(acc: &mut QVec, v: &QVec, c: &GaussQ) {
    if c.is_zero() {
        return;
    }
    for (i, a) in v.iter() {
        let entry = acc.entry(*i).or_insert_with(GaussQ::zero);
        *entry = entry.add(&a.mul(c));
        if entry.is_zero() {
            acc.remove(i);
        }
    }
}

pub fn vec_add(a: &QVec, b: &QVec) -> QVec {
    let mut out = a.clone();
    vec_add_scaled(&mut out, b, &GaussQ::one());
    out
}

pub fn vec_sub(a: &QVec, b: &QVec) -> QVec {
    let mut out = a.clone();
    vec_add_scaled(&mut out, b, &GaussQ::from_int(-1));
    out
}

pub fn vec_scale(v: &QVec, c: &GaussQ) -> QVec {
    if c.is_zero() {
        return QVec::new();
    }
    v.iter().map(|(i, a)| (*i, a.mul(c))).collect()
}

pub fn vec_eq(a: &QVec, b: &QVec) -> bool {
    a == b
}

pub fn vec_is_zero(v: &QVec) -> bool {
    v.is_empty()
}

/// Tensor product of sparse vectors; the second index is the fast one.
pub fn vec_tensor(a: &QVec, b: &QVec, dim_b: usize) -> QVec {
    let mut out = QVec::new();
    for (i, ca) in a.iter() {
        for (j, cb) in b.iter() {
            out.insert(i * dim_b + j, ca.mul(cb));
        }
    }
    out
}

pub fn vec_dot(a: &QVec, b: &QVec) -> GaussQ {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut acc = GaussQ::zero();
    for (i, c) in small.iter() {
        if let Some(d) = large.get(i) {
            acc = acc.add(&c.mul(d));
        }
    }
    acc
}

pub fn vec_to_dense(v: &QVec, dim: usize) -> Vec<GaussQ> {
    let mut out = vec![GaussQ::zero(); dim];
    for (i, c) in v.iter() {
        out[*i] = c.clone();
    }
    out
}

pub fn dense_to_vec(d: &[GaussQ]) -> QVec {
    d.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Column-major sparse matrix: `cols[j]` holds the image of basis vector j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: Vec<QVec>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols: vec![QVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for j in 0..n {
            m.cols[j] = vec_basis(j);
        }
        m
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn set(&mut self, i: usize, j: usize, c: GaussQ) {
        if c.is_zero() {
            self.cols[j].remove(&i);
        } else {
            self.cols[j].insert(i, c);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> GaussQ {
        self.cols[j].get(&i).cloned().unwrap_or_else(GaussQ::zero)
    }

    pub fn apply(&self, v: &QVec) -> QVec {
        let mut out = QVec::new();
        for (j, c) in v.iter() {
            vec_add_scaled(&mut out, &self.cols[*j], c);
        }
        out
    }

    /// Matrix composition `self ∘ rhs`.
    pub fn compose(&self, rhs: &QMat) -> QMat {
        assert_eq!(self.ncols(), rhs.rows, "composition shape mismatch");
        QMat {
            rows: self.rows,
            cols: rhs.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, rhs: &QMat) -> QMat {
        assert_eq!(self.rows, rhs.rows);
        assert_eq!(self.ncols(), rhs.ncols());
        QMat {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .zip(rhs.cols.iter())
                .map(|(a, b)| vec_add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &QMat) -> QMat {
        assert_eq!(self.rows, rhs.rows);
        assert_eq!(self.ncols(), rhs.ncols());
        QMat {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .zip(rhs.cols.iter())
                .map(|(a, b)| vec_sub(a, b))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// Kronecker product: indices `(i1,i2) → i1·rows2 + i2`.
    pub fn kron(&self, rhs: &QMat) -> QMat {
        let rows = self.rows * rhs.rows;
        let mut cols = Vec::with_capacity(self.ncols() * rhs.ncols());
        for c1 in self.cols.iter() {
            for c2 in rhs.cols.iter() {
                cols.push(vec_tensor(c1, c2, rhs.rows));
            }
        }
        QMat { rows, cols }
    }

    pub fn transpose(&self) -> QMat {
        let mut out = QMat::zero(self.ncols(), self.rows);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col.iter() {
                out.cols[*i].insert(j, c.clone());
            }
        }
        out
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<GaussQ>> {
        let mut rows = vec![vec![GaussQ::zero(); self.ncols()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col.iter() {
                rows[*i][j] = c.clone();
            }
        }
        rows
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_dense_rows();
        rref_in_place(&mut rows).len()
    }

    /// Exact inverse of a square matrix, if invertible.
    pub fn inverse(&self) -> Option<QMat> {
        let n = self.rows;
        assert_eq!(n, self.ncols());
        let mut aug = self.to_dense_rows();
        for (i, row) in aug.iter_mut().enumerate() {
            row.extend((0..n).map(|j| {
                if i == j {
                    GaussQ::one()
                } else {
                    GaussQ::zero()
                }
            }));
        }
        let pivots = rref_in_place(&mut aug);
        if pivots.len() < n || pivots.iter().any(|p| *p >= n) {
            return None;
        }
        let mut out = QMat::zero(n, n);
        for (r, _p) in pivots.iter().enumerate() {
            for j in 0..n {
                let c = aug[r][n + j].clone();
                if !c.is_zero() {
                    out.cols[j].insert(r, c);
                }
            }
        }
        Some(out)
    }
}

/// Row reduce in place; returns the pivot column of each nonzero row.
pub fn rref_in_place(rows: &mut Vec<Vec<GaussQ>>) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= nrows {
            break;
        }
        let mut piv = None;
        for i in r..nrows {
            if !rows[i][c].is_zero() {
                piv = Some(i);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        rows.swap(r, piv);
        let inv = rows[r][c].inv();
        for j in c..ncols {
            rows[r][j] = rows[r][j].mul(&inv);
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let v = rows[i][j].sub(&rows[r][j].mul(&f));
                    rows[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(pivots.len());
    pivots
}

/// Solve `M x = b` for square invertible `M` given as dense rows.
pub fn solve_dense(m: &[Vec<GaussQ>], b: &[GaussQ]) -> Option<Vec<GaussQ>> {
    let n = m.len();
    let mut aug: Vec<Vec<GaussQ>> = m
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref_in_place(&mut aug);
    if pivots.len() < n || pivots.iter().any(|p| *p >= n) {
        return None;
    }
    let mut x = vec![GaussQ::zero(); n];
    for (r, p) in pivots.iter().enumerate() {
        x[*p] = aug[r][n].clone();
    }
    Some(x)
}

/// Kernel basis of a matrix (as sparse vectors in the column space).
pub fn kernel_basis(m: &QMat) -> Vec<QVec> {
    let ncols = m.ncols();
    let mut rows = m.to_dense_rows();
    let pivots = rref_in_place(&mut rows);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().cloned().collect();
    let mut out = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = QVec::new();
        v.insert(free, GaussQ::one());
        for (r, p) in pivots.iter().enumerate() {
            let c = rows[r][free].clone();
            if !c.is_zero() {
                v.insert(*p, c.neg());
            }
        }
        out.push(v);
    }
    out
}

/// An exact subspace maintained in row-echelon form, supporting growth and
/// membership tests.
#[derive(Debug, Clone)]
pub struct Subspace {
    pub ambient: usize,
    rows: Vec<Vec<GaussQ>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<GaussQ>] {
        &self.rows
    }

    fn reduce(&self, v: &QVec) -> Vec<GaussQ> {
        let mut dense = vec_to_dense(v, self.ambient);
        for (row, p) in self.rows.iter().zip(self.pivots.iter()) {
            if !dense[*p].is_zero() {
                let f = dense[*p].clone();
                for j in 0..self.ambient {
                    if !row[j].is_zero() {
                        dense[j] = dense[j].sub(&row[j].mul(&f));
                    }
                }
            }
        }
        dense
    }

    pub fn contains(&self, v: &QVec) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    /// Insert a vector; returns true when the dimension grew.
    pub fn insert(&mut self, v: &QVec) -> bool {
        let mut red = self.reduce(v);
        let pivot = red.iter().position(|c| !c.is_zero());
        let Some(p) = pivot else { return false };
        let inv = red[p].inv();
        for c in red.iter_mut() {
            *c = c.mul(&inv);
        }
        // back-substitute into existing rows
        for (row, _) in self.rows.iter_mut().zip(self.pivots.iter()) {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for j in 0..self.ambient {
                    if !red[j].is_zero() {
                        row[j] = row[j].sub(&red[j].mul(&f));
                    }
                }
            }
        }
        // keep rows sorted by pivot
        let pos = self.pivots.iter().position(|q| *q > p).unwrap_or(self.rows.len());
        self.rows.insert(pos, red);
        self.pivots.insert(pos, p);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GaussQ {
        GaussQ::from_int(n)
    }

    #[test]
    fn rref_and_kernel() {
        // columns (1,1), (2,2), (0,1): rank 2, kernel spanned by (2,-1,0)
        let mut m = QMat::zero(2, 3);
        m.set(0, 0, q(1));
        m.set(1, 0, q(1));
        m.set(0, 1, q(2));
        m.set(1, 1, q(2));
        m.set(1, 2, q(1));
        assert_eq!(m.rank(), 2);
        let ker = kernel_basis(&m);
        assert_eq!(ker.len(), 1);
        assert!(vec_is_zero(&m.apply(&ker[0])));
    }

    #[test]
    fn inverse_round_trip() {
        let mut m = QMat::zero(3, 3);
        m.set(0, 0, q(2));
        m.set(1, 0, q(1));
        m.set(1, 1, q(1));
        m.set(2, 2, q(-3));
        m.set(0, 2, q(5));
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv), QMat::identity(3));
        assert_eq!(inv.compose(&m), QMat::identity(3));
    }

    #[test]
    fn subspace_membership() {
        let mut s = Subspace::new(3);
        assert!(s.insert(&dense_to_vec(&[q(1), q(2), q(0)])));
        assert!(s.insert(&dense_to_vec(&[q(0), q(1), q(1)])));
        assert!(!s.insert(&dense_to_vec(&[q(1), q(3), q(1)])));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&dense_to_vec(&[q(2), q(5), q(1)])));
        assert!(!s.contains(&dense_to_vec(&[q(0), q(0), q(1)])));
    }

    #[test]
    fn kron_shape() {
        let a = QMat::identity(2);
        let mut b = QMat::zero(3, 3);
        b.set(0, 1, q(4));
        let k = a.kron(&b);
        assert_eq!(k.rows, 6);
        assert_eq!(k.ncols(), 6);
        assert_eq!(k.get(0, 1), q(4));
        assert_eq!(k.get(3, 4), q(4));
    }
}
