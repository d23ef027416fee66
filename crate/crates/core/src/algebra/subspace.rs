use serde::Serialize;

use super::{Algebra, AlgebraId};
use crate::linalg::{max_abs_vec, unit_vector, CMatrix, CVector, Echelon};

/// Complex subspace of an algebra, stored by its reduced echelon basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: CMatrix,
    echelon: Echelon,
    algebra: AlgebraId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubspaceFlags {
    pub is_subalgebra: bool,
    pub is_left_ideal: bool,
    pub is_right_ideal: bool,
}

impl Subspace {
    /// Span of the given vectors; dependent vectors are dropped.
    pub fn from_vectors(alg: &Algebra, vectors: &[CVector]) -> Self {
        let n = alg.dim();
        let mut cols = CMatrix::zeros(n, vectors.len());
        for (k, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), n, "vector length differs from algebra dimension");
            cols.set_column(k, v);
        }
        Self::from_columns(alg, &cols)
    }

    pub fn from_columns(alg: &Algebra, cols: &CMatrix) -> Self {
        Self::from_columns_in(alg.id(), alg.dim(), cols, alg.tol().rank)
    }

    pub(crate) fn from_columns_in(algebra: AlgebraId, dim: usize, cols: &CMatrix, rank_tol: f64) -> Self {
        let echelon = if cols.ncols() == 0 {
            Echelon::of_rows(&CMatrix::zeros(0, dim), rank_tol)
        } else {
            Echelon::canonical_of_columns(cols, rank_tol)
        };
        let basis = echelon.rows().transpose();
        Subspace {
            basis,
            echelon,
            algebra,
        }
    }

    pub fn zero(alg: &Algebra) -> Self {
        Self::from_columns(alg, &CMatrix::zeros(alg.dim(), 0))
    }

    pub fn whole(alg: &Algebra) -> Self {
        Self::from_columns(alg, &CMatrix::identity(alg.dim(), alg.dim()))
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    /// Echelon basis as columns (`ambient_dim × dim`).
    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        self.echelon.pivots()
    }

    /// Component of `v` outside the subspace; zero iff `v` is a member.
    pub fn residual(&self, v: &CVector) -> CVector {
        self.echelon.reduce(v)
    }

    pub fn contains(&self, v: &CVector, eps: f64) -> bool {
        max_abs_vec(&self.residual(v)) <= eps
    }

    /// Coordinates of a member in the echelon basis.
    pub fn coords(&self, v: &CVector) -> CVector {
        self.echelon.coords(v)
    }

    pub fn embed(&self, coords: &CVector) -> CVector {
        &self.basis * coords
    }

    /// Matrix taking ambient coordinates to echelon coordinates (pivot rows).
    pub fn coordinate_matrix(&self) -> CMatrix {
        let n = self.ambient_dim();
        CMatrix::from_fn(self.dim(), n, |r, c| {
            if self.pivots()[r] == c {
                crate::linalg::ONE
            } else {
                crate::linalg::ZERO
            }
        })
    }

    pub fn same_as(&self, other: &Subspace, eps: f64) -> bool {
        self.dim() == other.dim() && (0..other.dim()).all(|c| self.contains(&other.basis.column(c).into_owned(), eps))
    }

    /// Dimension of `self + other`.
    pub fn sum_dim(&self, other: &Subspace, rank_tol: f64) -> usize {
        let n = self.ambient_dim();
        let mut cols = CMatrix::zeros(n, self.dim() + other.dim());
        cols.view_mut((0, 0), (n, self.dim())).copy_from(&self.basis);
        cols.view_mut((0, self.dim()), (n, other.dim())).copy_from(&other.basis);
        crate::linalg::rank(&cols.transpose(), rank_tol)
    }

    /// Labels for the echelon basis: the ambient label when a basis vector is
    /// a single ambient basis vector, otherwise `v{index}`.
    pub(crate) fn labels(&self, alg: &Algebra) -> Vec<String> {
        (0..self.dim())
            .map(|c| {
                let col = self.basis.column(c);
                let support: Vec<usize> = (0..col.len()).filter(|&i| col[i].norm() > 0.0).collect();
                if support.len() == 1 && (col[support[0]] - crate::linalg::ONE).norm() == 0.0 {
                    alg.labels()[support[0]].clone()
                } else {
                    format!("v{c}")
                }
            })
            .collect()
    }

    pub(crate) fn flags(&self, alg: &Algebra) -> SubspaceFlags {
        let eps = alg.tol().eps;
        let k = self.dim();
        let n = alg.dim();
        let col = |c: usize| self.basis.column(c).into_owned();
        let is_subalgebra = (0..k).all(|a| (0..k).all(|b| self.contains(&alg.mul_coords(&col(a), &col(b)), eps)));
        let is_left_ideal =
            (0..n).all(|i| (0..k).all(|a| self.contains(&alg.mul_coords(&unit_vector(n, i), &col(a)), eps)));
        let is_right_ideal =
            (0..n).all(|i| (0..k).all(|a| self.contains(&alg.mul_coords(&col(a), &unit_vector(n, i)), eps)));
        SubspaceFlags {
            is_subalgebra,
            is_left_ideal,
            is_right_ideal,
        }
    }
}
