//! Dense complex linear algebra used throughout the crate: reduced row echelon
//! forms, null spaces, consistent solves and a small nonsymmetric eigen-solver.
//!
//! All routines work on `nalgebra` dynamic matrices of `Complex64` and are
//! tuned for the desk-scale sizes this crate targets (dimension up to a few
//! dozen).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Pivot acceptance ratio for canonical echelon bases; entries of the
/// resulting basis stay below roughly its inverse.
const CANONICAL_THRESHOLD: f64 = 0.07;

/// Absolute tolerances shared by every certification in the crate.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerance {
    /// Entrywise equality tolerance.
    pub eps: f64,
    /// Pivot threshold for rank decisions.
    pub rank: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps: 1e-9, rank: 1e-8 }
    }
}

/// Largest absolute entry.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_vec(v: &CVector) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in residual");
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn max_abs_diff_vec(a: &CVector, b: &CVector) -> f64 {
    assert_eq!(a.len(), b.len(), "length mismatch in residual");
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn conj_matrix(m: &CMatrix) -> CMatrix {
    m.map(|z| z.conj())
}

pub fn conj_vector(v: &CVector) -> CVector {
    v.map(|z| z.conj())
}

pub fn unit_vector(n: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(n);
    v[i] = ONE;
    v
}

/// Reduced row echelon form of a matrix, with the pivot column of each row.
///
/// Every stored row has a unit entry in its pivot column and zeros in the
/// pivot columns of all other rows, so a vector in the row space is recovered
/// from its pivot entries alone.
#[derive(Debug, Clone, PartialEq)]
pub struct Echelon {
    rows: CMatrix,
    pivots: Vec<usize>,
}

impl Echelon {
    /// Gauss-Jordan elimination with complete pivoting: each step takes the
    /// largest remaining entry, which keeps the reduced basis well scaled
    /// (column-by-column pivoting can accept a pivot barely above
    /// `pivot_tol` and blow the other entries up). Elimination stops once
    /// every remaining entry is at most `pivot_tol`. Rows are returned
    /// ordered by pivot column.
    pub fn of_rows(m: &CMatrix, pivot_tol: f64) -> Self {
        Self::eliminate(m, pivot_tol, m.ncols()).0
    }

    /// Elimination with pivots restricted to the first `pivot_cols` columns.
    /// Also returns the largest entry left in the non-pivot rows.
    fn eliminate(m: &CMatrix, pivot_tol: f64, pivot_cols: usize) -> (Self, f64) {
        let (nrows, ncols) = m.shape();
        let mut a = m.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        while r < nrows {
            let mut best = (r, 0, -1.0);
            for i in r..nrows {
                for j in 0..pivot_cols {
                    let mag = a[(i, j)].norm();
                    if mag > best.2 && !pivots.contains(&j) {
                        best = (i, j, mag);
                    }
                }
            }
            let (row, col, mag) = best;
            if mag <= pivot_tol {
                break;
            }
            a.swap_rows(r, row);
            let inv = ONE / a[(r, col)];
            for j in 0..ncols {
                a[(r, j)] *= inv;
            }
            a[(r, col)] = ONE;
            for i in 0..nrows {
                if i == r {
                    continue;
                }
                let factor = a[(i, col)];
                if factor == ZERO {
                    continue;
                }
                for j in 0..ncols {
                    let delta = factor * a[(r, j)];
                    a[(i, j)] -= delta;
                }
                a[(i, col)] = ZERO;
            }
            pivots.push(col);
            r += 1;
        }
        let leftover = (r..nrows)
            .flat_map(|i| (0..ncols).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm())
            .fold(0.0, f64::max);
        (Self::sorted(&a, pivots), leftover)
    }

    /// The first `pivots.len()` rows of `a`, reordered by pivot column, with
    /// exact zeros and ones in the pivot columns.
    fn sorted(a: &CMatrix, pivots: Vec<usize>) -> Self {
        let r = pivots.len();
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_by_key(|&k| pivots[k]);
        let mut rows = CMatrix::zeros(r, a.ncols());
        for (dst, &src) in order.iter().enumerate() {
            rows.set_row(dst, &a.row(src));
        }
        let pivots: Vec<usize> = order.iter().map(|&k| pivots[k]).collect();
        for (k, &p) in pivots.iter().enumerate() {
            for i in 0..r {
                rows[(i, p)] = if i == k { ONE } else { ZERO };
            }
        }
        Echelon { rows, pivots }
    }

    /// Reduced echelon basis of the span of `cols` that depends only on the
    /// span: elimination runs on the orthogonal projector onto it, taking in
    /// column order the first column whose best entry is within
    /// `CANONICAL_THRESHOLD` of the largest remaining entry.
    pub fn canonical_of_columns(cols: &CMatrix, pivot_tol: f64) -> Self {
        let n = cols.nrows();
        let k = Self::of_columns(cols, pivot_tol).rank();
        if k == 0 || k == n {
            return Self::of_rows(&CMatrix::identity(n, n).rows(0, k).into_owned(), pivot_tol);
        }
        let spanning = Self::of_columns(cols, pivot_tol).rows().transpose();
        let q = spanning.clone().qr().q();
        // rows of the transposed projector span the subspace itself
        let mut a = (&q * q.adjoint()).transpose();
        let mut pivots: Vec<usize> = Vec::new();
        let mut r = 0;
        while r < k {
            let largest = (r..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)].norm())
                .fold(0.0, f64::max);
            let column_best = |col: usize| {
                (r..n)
                    .map(|i| (i, a[(i, col)].norm()))
                    .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc })
            };
            let Some((col, (best, _))) = (0..n)
                .filter(|c| !pivots.contains(c))
                .map(|c| (c, column_best(c)))
                .find(|(_, (_, mag))| *mag >= CANONICAL_THRESHOLD * largest && *mag > 0.0)
            else {
                break;
            };
            a.swap_rows(r, best);
            let inv = ONE / a[(r, col)];
            for j in 0..n {
                a[(r, j)] *= inv;
            }
            for i in 0..n {
                if i == r {
                    continue;
                }
                let factor = a[(i, col)];
                for j in 0..n {
                    let delta = factor * a[(r, j)];
                    a[(i, j)] -= delta;
                }
            }
            pivots.push(col);
            r += 1;
        }
        // the pivot set is all the projector is for; the rows themselves come
        // from the spanning rows, which keeps exact inputs exact
        if r < k {
            return Self::of_columns(cols, pivot_tol);
        }
        pivots.sort_unstable();
        let spanning_rows = spanning.transpose();
        let square = CMatrix::from_fn(r, r, |a, b| spanning_rows[(a, pivots[b])]);
        let Some(rows) = square.lu().solve(&spanning_rows) else {
            return Self::of_columns(cols, pivot_tol);
        };
        let mut out = Echelon { rows, pivots };
        let pivots = out.pivots.clone();
        for (row, &p) in pivots.iter().enumerate() {
            for i in 0..r {
                out.rows[(i, p)] = if i == row { ONE } else { ZERO };
            }
        }
        out
    }

    /// Echelon form of the row space spanned by the given column vectors.
    pub fn of_columns(cols: &CMatrix, pivot_tol: f64) -> Self {
        Self::of_rows(&cols.transpose(), pivot_tol)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.ncols()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &CMatrix {
        &self.rows
    }

    /// Coordinates of `v` along the echelon rows, read off the pivot entries.
    pub fn coords(&self, v: &CVector) -> CVector {
        CVector::from_iterator(self.rank(), self.pivots.iter().map(|&p| v[p]))
    }

    /// What remains of `v` after subtracting its projection along the rows;
    /// zero exactly when `v` lies in the row space.
    pub fn reduce(&self, v: &CVector) -> CVector {
        let mut out = v.clone();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = v[p];
            if c == ZERO {
                continue;
            }
            for j in 0..out.len() {
                out[j] -= c * self.rows[(r, j)];
            }
        }
        out
    }

    /// Basis (as columns) of the null space `{x : rows · x = 0}`.
    pub fn null_space(&self) -> CMatrix {
        let n = self.ncols();
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        let mut basis = CMatrix::zeros(n, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = ONE;
            for (r, &p) in self.pivots.iter().enumerate() {
                basis[(p, k)] = -self.rows[(r, f)];
            }
        }
        basis
    }
}

/// Null space of `m` as a column basis.
pub fn null_space(m: &CMatrix, pivot_tol: f64) -> CMatrix {
    Echelon::of_rows(m, pivot_tol).null_space()
}

pub fn rank(m: &CMatrix, pivot_tol: f64) -> usize {
    Echelon::of_rows(m, pivot_tol).rank()
}

/// Solution set of `m · x = b`.
#[derive(Debug, Clone)]
pub struct AffineSolution {
    pub particular: CVector,
    /// Columns span the homogeneous solutions.
    pub homogeneous: CMatrix,
}

/// Solves `m · x = b` by elimination on the augmented matrix. Returns `None`
/// when the system is inconsistent at the given pivot threshold.
pub fn solve(m: &CMatrix, b: &CVector, pivot_tol: f64) -> Option<AffineSolution> {
    let (nrows, ncols) = m.shape();
    assert_eq!(nrows, b.len());
    let mut aug = CMatrix::zeros(nrows, ncols + 1);
    aug.view_mut((0, 0), (nrows, ncols)).copy_from(m);
    aug.set_column(ncols, b);
    let (ech, leftover) = Echelon::eliminate(&aug, pivot_tol, ncols);
    if leftover > pivot_tol {
        return None;
    }
    let mut particular = CVector::zeros(ncols);
    for (r, &p) in ech.pivots().iter().enumerate() {
        particular[p] = ech.rows()[(r, ncols)];
    }
    let coef = Echelon {
        rows: ech.rows().columns(0, ncols).into_owned(),
        pivots: ech.pivots().to_vec(),
    };
    Some(AffineSolution {
        particular,
        homogeneous: coef.null_space(),
    })
}

/// Realification of the conjugate-linear map `z ↦ m · conj(z)` acting on
/// `(Re z, Im z)`.
pub fn realify_conjugating(m: &CMatrix) -> CMatrix {
    let n = m.ncols();
    let r = m.nrows();
    let mut out = CMatrix::zeros(2 * r, 2 * n);
    for i in 0..r {
        for j in 0..n {
            let z = m[(i, j)];
            out[(i, j)] = C64::new(z.re, 0.0);
            out[(i, j + n)] = C64::new(z.im, 0.0);
            out[(i + r, j)] = C64::new(z.im, 0.0);
            out[(i + r, j + n)] = C64::new(-z.re, 0.0);
        }
    }
    out
}

/// Realification of the linear map `z ↦ m · z`.
pub fn realify_linear(m: &CMatrix) -> CMatrix {
    let n = m.ncols();
    let r = m.nrows();
    let mut out = CMatrix::zeros(2 * r, 2 * n);
    for i in 0..r {
        for j in 0..n {
            let z = m[(i, j)];
            out[(i, j)] = C64::new(z.re, 0.0);
            out[(i, j + n)] = C64::new(-z.im, 0.0);
            out[(i + r, j)] = C64::new(z.im, 0.0);
            out[(i + r, j + n)] = C64::new(z.re, 0.0);
        }
    }
    out
}

/// Inverse real-to-complex packing: `(u, v) ↦ u + i v`.
pub fn complexify(v: &CVector) -> CVector {
    let n = v.len() / 2;
    CVector::from_iterator(n, (0..n).map(|k| C64::new(v[k].re, v[k + n].re)))
}

/// Eigenvalues of a square complex matrix, computed by Householder reduction
/// to Hessenberg form followed by single-shift QR iterations with Wilkinson
/// shifts. Returned in the order they deflate.
pub fn eigenvalues(m: &CMatrix) -> Vec<C64> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "eigenvalues of a non-square matrix");
    if n == 0 {
        return Vec::new();
    }
    let mut h = m.clone();
    reduce_to_hessenberg(&mut h);
    let scale = max_abs(&h).max(f64::MIN_POSITIVE);
    let mut out = vec![ZERO; n];
    let mut hi = n;
    let mut stalled = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        if hi == 1 {
            out[0] = h[(0, 0)];
            break;
        }
        let mut lo = hi - 1;
        while lo > 0 {
            let mut s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if s == 0.0 {
                s = scale;
            }
            if h[(lo, lo - 1)].norm() <= f64::EPSILON * s {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            out[hi - 1] = h[(hi - 1, hi - 1)];
            hi -= 1;
            stalled = 0;
            continue;
        }
        stalled += 1;
        total += 1;
        assert!(total < 1000 * n, "QR iteration failed to converge");
        let shift = if stalled % 11 == 10 {
            // exceptional shift to break cycles
            h[(hi - 1, hi - 1)] + C64::new(h[(hi - 1, hi - 2)].norm(), 0.0) * 0.75
        } else {
            wilkinson_shift(
                h[(hi - 2, hi - 2)],
                h[(hi - 2, hi - 1)],
                h[(hi - 1, hi - 2)],
                h[(hi - 1, hi - 1)],
            )
        };
        qr_step(&mut h, lo, hi, shift);
    }
    out
}

fn reduce_to_hessenberg(h: &mut CMatrix) {
    let n = h.nrows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let len = n - k - 1;
        let mut v = CVector::from_iterator(len, (0..len).map(|i| h[(k + 1 + i, k)]));
        let alpha_mag = v.norm();
        if alpha_mag == 0.0 {
            continue;
        }
        let x0 = v[0];
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        v[0] += phase * alpha_mag;
        let vnorm = v.norm();
        if vnorm == 0.0 {
            continue;
        }
        v /= C64::new(vnorm, 0.0);
        // H <- (I - 2 v v^H) H (I - 2 v v^H) on the trailing block
        for j in 0..n {
            let mut dot = ZERO;
            for i in 0..len {
                dot += v[i].conj() * h[(k + 1 + i, j)];
            }
            for i in 0..len {
                h[(k + 1 + i, j)] -= v[i] * dot * 2.0;
            }
        }
        for i in 0..n {
            let mut dot = ZERO;
            for j in 0..len {
                dot += h[(i, k + 1 + j)] * v[j];
            }
            for j in 0..len {
                h[(i, k + 1 + j)] -= dot * v[j].conj() * 2.0;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * c;
    let root = disc.sqrt();
    let l1 = half_tr + root;
    let l2 = half_tr - root;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// One explicit shifted QR sweep on the active block `[lo, hi)` using Givens
/// rotations.
fn qr_step(h: &mut CMatrix, lo: usize, hi: usize, shift: C64) {
    for i in lo..hi {
        h[(i, i)] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo - 1);
    for i in lo..hi - 1 {
        let a = h[(i, i)];
        let b = h[(i + 1, i)];
        let (c, s) = givens(a, b);
        for j in i..hi {
            let x = h[(i, j)];
            let y = h[(i + 1, j)];
            h[(i, j)] = x * c + s * y;
            h[(i + 1, j)] = -s.conj() * x + y * c;
        }
        rotations.push((c, s));
    }
    for (k, &(c, s)) in rotations.iter().enumerate() {
        let i = lo + k;
        let top = (i + 2).min(hi);
        for r in lo..top {
            let x = h[(r, i)];
            let y = h[(r, i + 1)];
            h[(r, i)] = x * c + s.conj() * y;
            h[(r, i + 1)] = -s * x + y * c;
        }
    }
    for i in lo..hi {
        h[(i, i)] += shift;
    }
}

/// Rotation `[[c, s], [-conj(s), c]]` with real `c` mapping `(a, b)` to `(r, 0)`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let na = a.norm();
    let nb = b.norm();
    if nb == 0.0 {
        return (1.0, ZERO);
    }
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    let r = na.hypot(nb);
    (na / r, (a / na) * b.conj() / r)
}

/// Matches every value in `needles` to some value in `haystack` within `tol`.
/// Returns the largest nearest-neighbour distance.
pub fn set_inclusion_distance(needles: &[C64], haystack: &[C64]) -> f64 {
    needles
        .iter()
        .map(|z| haystack.iter().map(|w| (z - w).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Greedy nearest-neighbour multiset matching; returns the worst matched
/// distance, or infinity if `needles` is longer than `haystack`.
pub fn multiset_match_distance(needles: &[C64], haystack: &[C64]) -> f64 {
    if needles.len() > haystack.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; haystack.len()];
    let mut worst: f64 = 0.0;
    for z in needles {
        let mut best = None;
        for (k, w) in haystack.iter().enumerate() {
            if used[k] {
                continue;
            }
            let d = (z - w).norm();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((k, d));
            }
        }
        let (k, d) = best.expect("haystack exhausted");
        used[k] = true;
        worst = worst.max(d);
    }
    worst
}

/// Orthonormal basis (columns) of the numerical null space, from a singular
/// value decomposition. Singular values below `rel_tol · max(1, σ_max)` count
/// as zero.
pub fn svd_null_space(m: &CMatrix, rel_tol: f64) -> CMatrix {
    let (r, c) = m.shape();
    if c == 0 {
        return CMatrix::zeros(0, 0);
    }
    // thin SVD drops null directions of wide matrices, so pad to square
    let padded = if r < c {
        let mut p = CMatrix::zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let smax = svd.singular_values.iter().fold(0.0f64, |a, &b| a.max(b));
    let cut = rel_tol * smax.max(1.0);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] <= cut)
        .collect();
    let mut out = CMatrix::zeros(c, keep.len());
    for (j, &k) in keep.iter().enumerate() {
        out.set_column(j, &v_t.row(k).adjoint());
    }
    out
}

/// Least-squares solution of `m · x = b` through the pseudo-inverse.
pub fn lstsq(m: &CMatrix, b: &CVector, rel_tol: f64) -> CVector {
    let svd = m.clone().svd(true, true);
    let smax = svd.singular_values.iter().fold(0.0f64, |a, &b| a.max(b));
    svd.solve(b, rel_tol * smax.max(f64::MIN_POSITIVE))
        .expect("both singular vector sets were computed")
}

/// Sorts complex numbers by real part, then imaginary part.
pub fn sort_complex(values: &mut [C64]) {
    values.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, m: usize) -> CMatrix {
        CMatrix::from_fn(n, m, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    #[test]
    fn svd_null_space_of_wide_matrix() {
        let m = CMatrix::from_row_slice(1, 3, &[c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0)]);
        let n = svd_null_space(&m, 1e-10);
        assert_eq!(n.ncols(), 2);
        assert!(max_abs(&(&m * &n)) < 1e-12);
        assert!(max_abs_diff(&(n.adjoint() * &n), &CMatrix::identity(2, 2)) < 1e-12);
    }

    #[test]
    fn lstsq_solves_consistent_square_system() {
        let m = CMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(1.0, 1.0), c(0.0, 0.0), c(3.0, 0.0)]);
        let x = CVector::from_vec(vec![c(1.0, -1.0), c(0.5, 2.0)]);
        let b = &m * &x;
        assert!(max_abs_diff_vec(&lstsq(&m, &b, 1e-14), &x) < 1e-13);
    }
    #[test]
    fn echelon_rank_and_null_space() {
        let m = CMatrix::from_row_slice(
            3,
            3,
            &[
                c(1., 0.),
                c(2., 0.),
                c(3., 0.),
                c(2., 0.),
                c(4., 0.),
                c(6., 0.),
                c(0., 1.),
                c(0., 0.),
                c(1., 0.),
            ],
        );
        let ech = Echelon::of_rows(&m, 1e-10);
        assert_eq!(ech.rank(), 2);
        let ns = ech.null_space();
        assert_eq!(ns.ncols(), 1);
        assert!(max_abs(&(&m * &ns)) < 1e-12);
    }

    #[test]
    fn reduce_detects_membership() {
        let cols = CMatrix::from_column_slice(3, 2, &[ONE, ONE, ZERO, ZERO, ONE, I]);
        let ech = Echelon::of_columns(&cols, 1e-10);
        let inside = cols.column(0) * c(2.0, -1.0) + cols.column(1) * c(0.5, 3.0);
        assert!(max_abs_vec(&ech.reduce(&inside)) < 1e-12);
        let outside = unit_vector(3, 2);
        assert!(max_abs_vec(&ech.reduce(&outside)) > 0.1);
    }

    #[test]
    fn solve_reports_inconsistency() {
        let m = CMatrix::from_row_slice(2, 2, &[ONE, ONE, ONE, ONE]);
        let b = CVector::from_vec(vec![ONE, ZERO]);
        assert!(solve(&m, &b, 1e-10).is_none());
        let b = CVector::from_vec(vec![ONE, ONE]);
        let sol = solve(&m, &b, 1e-10).unwrap();
        assert_eq!(sol.homogeneous.ncols(), 1);
        assert!(max_abs_vec(&(&m * &sol.particular - &b)) < 1e-12);
    }

    // Oracle: a similarity transform of an upper-triangular matrix has the
    // triangular diagonal as its spectrum.
    #[test]
    fn eigenvalues_match_known_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=12 {
            let mut t = random_matrix(&mut rng, n, n);
            let mut expected = Vec::new();
            for i in 0..n {
                for j in 0..i {
                    t[(i, j)] = ZERO;
                }
                expected.push(t[(i, i)]);
            }
            let s = random_matrix(&mut rng, n, n) + CMatrix::identity(n, n) * c(2.0, 0.0);
            let s_inv = s.clone().try_inverse().unwrap();
            let m = &s * &t * &s_inv;
            let got = eigenvalues(&m);
            assert!(multiset_match_distance(&expected, &got) < 1e-8, "n={n}");
        }
    }

    #[test]
    fn eigenvalues_of_permutation_and_nilpotent() {
        // cyclic shift of order 3: cube roots of unity
        let mut p = CMatrix::zeros(3, 3);
        p[(1, 0)] = ONE;
        p[(2, 1)] = ONE;
        p[(0, 2)] = ONE;
        let got = eigenvalues(&p);
        let w = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!(multiset_match_distance(&[ONE, w, w * w], &got) < 1e-12);

        let mut nil = CMatrix::zeros(4, 4);
        nil[(0, 1)] = ONE;
        nil[(2, 3)] = ONE;
        let got = eigenvalues(&nil);
        assert!(got.iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn trace_and_determinant_agree_with_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [2, 5, 9, 16] {
            let m = random_matrix(&mut rng, n, n);
            let ev = eigenvalues(&m);
            let tr: C64 = (0..n).map(|i| m[(i, i)]).sum();
            let sum: C64 = ev.iter().sum();
            assert!((tr - sum).norm() < 1e-9);
            let det = m.clone().determinant();
            let prod: C64 = ev.iter().product();
            assert!((det - prod).norm() < 1e-8 * det.norm().max(1.0));
        }
    }

    #[test]
    fn realification_matches_complex_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_matrix(&mut rng, 3, 3);
        let z = CVector::from_fn(3, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let packed = CVector::from_iterator(6, z.iter().map(|w| c(w.re, 0.0)).chain(z.iter().map(|w| c(w.im, 0.0))));
        let conj_img = complexify(&(realify_conjugating(&m) * &packed));
        assert!(max_abs_diff_vec(&conj_img, &(&m * conj_vector(&z))) < 1e-12);
        let lin_img = complexify(&(realify_linear(&m) * &packed));
        assert!(max_abs_diff_vec(&lin_img, &(&m * &z)) < 1e-12);
    }
}
