use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, svd_null_space, unit_vector, CMatrix, CVector, C64};
use crate::starmap::DualVector;

/// A nonzero multiplicative functional.
#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    functional: DualVector,
    pub residual: f64,
}

impl Character {
    pub fn functional(&self) -> &DualVector {
        &self.functional
    }

    /// Values `φ(b_i)` on the basis.
    pub fn values(&self) -> &CVector {
        self.functional.coords()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacterSet {
    pub characters: Vec<Character>,
    /// Fewer characters than the dimension: the algebra is not semisimple,
    /// so characters do not separate points.
    pub possibly_incomplete: bool,
}

/// Multiplicativity on basis pairs and non-vanishing.
pub fn verify_character(a: &Algebra, f: &DualVector) -> Result<Character> {
    if f.algebra() != a.id() {
        return Err(Error::AlgebraMismatch);
    }
    let n = a.dim();
    let v = f.coords();
    let mut residual: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let prod = a.mul_coords(&unit_vector(n, i), &unit_vector(n, j));
            residual = residual.max((f.pair_coords(&prod) - v[i] * v[j]).norm());
        }
    }
    let eps = a.tol().eps;
    if residual > eps {
        return Err(Error::certification("φ(xy) = φ(x)φ(y)", residual));
    }
    if v.iter().all(|z| z.norm() <= eps) {
        return Err(Error::certification("φ ≠ 0", 0.0));
    }
    Ok(Character {
        functional: f.clone(),
        residual,
    })
}

const CLUSTER: f64 = 1e-6;
const NULL_TOL: f64 = 1e-7;

/// Characters of a commutative algebra as the common eigenvectors `f` of
/// the transposed left-regular matrices: `L_{b_i}ᵀ f = φ(b_i) f`. The space
/// is split successively by the eigenspaces of each (commuting) operator;
/// on every leaf all operators act as scalars, and those scalars are the
/// character's values.
pub fn find_characters(a: &Algebra) -> Result<CharacterSet> {
    if !a.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let n = a.dim();
    let ops: Vec<CMatrix> = (0..n).map(|i| a.left_basis(i).transpose()).collect();
    let mut leaves = vec![CMatrix::identity(n, n)];
    for op in &ops {
        let mut next = Vec::new();
        for q in leaves {
            next.extend(split(op, &q));
        }
        leaves = next;
    }
    let mut characters: Vec<Character> = Vec::new();
    for q in leaves {
        let d = q.ncols() as f64;
        let values = CVector::from_iterator(
            n,
            ops.iter().map(|op| (q.adjoint() * op * &q).trace() / C64::new(d, 0.0)),
        );
        let f = DualVector::raw(values, a.id());
        if let Ok(ch) = verify_character(a, &f) {
            if !characters
                .iter()
                .any(|c| crate::linalg::max_abs_diff_vec(c.values(), ch.values()) <= 1e-6)
            {
                characters.push(ch);
            }
        }
    }
    characters.sort_by(|x, y| cmp_vectors(x.values(), y.values()));
    let possibly_incomplete = characters.len() < n;
    Ok(CharacterSet {
        characters,
        possibly_incomplete,
    })
}

/// Eigenspaces of `op` restricted to the invariant subspace spanned by the
/// orthonormal columns of `q`.
fn split(op: &CMatrix, q: &CMatrix) -> Vec<CMatrix> {
    let d = q.ncols();
    let restricted = q.adjoint() * op * q;
    let mut eig = eigenvalues(&restricted);
    crate::linalg::sort_complex(&mut eig);
    let mut centers: Vec<C64> = Vec::new();
    for z in eig {
        if !centers.iter().any(|c| (c - z).norm() <= CLUSTER * c.norm().max(1.0)) {
            centers.push(z);
        }
    }
    centers
        .into_iter()
        .filter_map(|mu| {
            let shifted = &restricted - CMatrix::identity(d, d) * mu;
            let null = svd_null_space(&shifted, NULL_TOL);
            (null.ncols() > 0).then(|| q * null)
        })
        .collect()
}

fn cmp_vectors(x: &CVector, y: &CVector) -> std::cmp::Ordering {
    for (a, b) in x.iter().zip(y.iter()) {
        let o = round(a.re)
            .total_cmp(&round(b.re))
            .then(round(a.im).total_cmp(&round(b.im)));
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

fn round(x: f64) -> f64 {
    (x * 1e8).round() / 1e8
}
