//! Finite-dimensional complex associative algebras given by structure
//! constants `b_i · b_j = Σ_k c[i][j][k] b_k`.

mod standard;
mod subspace;

pub use standard::{
    construct_standard, cyclic_group_table, direct_product_table, function_algebra, group_algebra, matrix_algebra,
    normal_subgroups, product, symmetric_group_3_table, GroupTable, StandardKind,
};
pub use subspace::{Subspace, SubspaceFlags};

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, max_abs_diff_vec, solve, unit_vector, CMatrix, CVector, Tolerance, C64, ONE, ZERO};

/// Content fingerprint of an algebra's structure tensor. Two algebras with
/// bit-identical structure constants share an id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId(u64);

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    /// ℓ¹ norm of the coordinates in the canonical basis.
    #[default]
    Ell1,
    /// ℓ¹ operator norm of left multiplication.
    #[serde(rename = "opnorm", alias = "left_regular_operator")]
    LeftRegularOperator,
}

#[derive(Debug, Clone)]
pub struct Algebra {
    id: AlgebraId,
    dim: usize,
    labels: Vec<String>,
    structure: Vec<C64>,
    left: Vec<CMatrix>,
    right: Vec<CMatrix>,
    identity: Option<CVector>,
    norm: NormKind,
    tol: Tolerance,
}

/// Staged construction of an [`Algebra`].
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    dim: usize,
    structure: Vec<C64>,
    labels: Option<Vec<String>>,
    identity: Option<Vec<C64>>,
    norm: NormKind,
    tol: Tolerance,
    allow_empty: bool,
}

impl AlgebraBuilder {
    pub fn labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn identity(mut self, identity: Vec<C64>) -> Self {
        self.identity = Some(identity);
        self
    }

    pub fn norm(mut self, norm: NormKind) -> Self {
        self.norm = norm;
        self
    }

    pub fn tolerance(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }

    pub(crate) fn allow_empty(mut self) -> Self {
        self.allow_empty = true;
        self
    }

    pub fn build(self) -> Result<Algebra> {
        let n = self.dim;
        if n == 0 && !self.allow_empty {
            return Err(Error::Input("algebra dimension must be positive".into()));
        }
        if self.structure.len() != n * n * n {
            return Err(Error::Input(format!(
                "structure tensor has {} entries, expected {}",
                self.structure.len(),
                n * n * n
            )));
        }
        let labels = match self.labels {
            Some(l) if l.len() == n => l,
            Some(l) => return Err(Error::Input(format!("{} labels supplied for dimension {n}", l.len()))),
            None => (0..n).map(|i| format!("b{i}")).collect(),
        };
        let mut alg = Algebra::assemble(n, labels, self.structure, self.norm, self.tol);
        if let Some((i, j, k, l, residual)) = alg.worst_associativity() {
            if residual > alg.tol.eps * alg.associativity_scale() {
                return Err(Error::AssociativityViolation { i, j, k, l, residual });
            }
        }
        match self.identity {
            Some(e) => {
                if e.len() != n {
                    return Err(Error::Input("identity has wrong length".into()));
                }
                let e = CVector::from_vec(e);
                let residual = alg.identity_residual(&e);
                if residual > alg.tol.eps {
                    return Err(Error::IdentityMismatch { residual });
                }
                alg.identity = Some(e);
            }
            None => alg.identity = alg.find_identity(),
        }
        Ok(alg)
    }
}

/// Builds an algebra from a flat structure tensor indexed `[i][j][k]`,
/// verifying associativity and detecting (or checking) the identity.
pub fn make_algebra(
    dim: usize,
    structure: Vec<C64>,
    labels: Vec<String>,
    declared_identity: Option<Vec<C64>>,
) -> Result<Algebra> {
    let mut b = Algebra::builder(dim, structure).labels(labels);
    if let Some(e) = declared_identity {
        b = b.identity(e);
    }
    b.build()
}

impl Algebra {
    pub fn builder(dim: usize, structure: Vec<C64>) -> AlgebraBuilder {
        AlgebraBuilder {
            dim,
            structure,
            labels: None,
            identity: None,
            norm: NormKind::default(),
            tol: Tolerance::default(),
            allow_empty: false,
        }
    }

    fn assemble(dim: usize, labels: Vec<String>, structure: Vec<C64>, norm: NormKind, tol: Tolerance) -> Algebra {
        let mut hasher = DefaultHasher::new();
        dim.hash(&mut hasher);
        for z in &structure {
            z.re.to_bits().hash(&mut hasher);
            z.im.to_bits().hash(&mut hasher);
        }
        let id = AlgebraId(hasher.finish());
        let idx = |i: usize, j: usize, k: usize| (i * dim + j) * dim + k;
        let left = (0..dim)
            .map(|i| CMatrix::from_fn(dim, dim, |k, j| structure[idx(i, j, k)]))
            .collect();
        let right = (0..dim)
            .map(|i| CMatrix::from_fn(dim, dim, |k, j| structure[idx(j, i, k)]))
            .collect();
        Algebra {
            id,
            dim,
            labels,
            structure,
            left,
            right,
            identity: None,
            norm,
            tol,
        }
    }

    /// Rebuilds with a different norm convention; structure is unchanged.
    pub fn with_norm(mut self, norm: NormKind) -> Self {
        self.norm = norm;
        self
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn norm_kind(&self) -> NormKind {
        self.norm
    }

    pub fn tol(&self) -> Tolerance {
        self.tol
    }

    /// Flat structure tensor, indexed `[i][j][k]`.
    pub fn structure(&self) -> &[C64] {
        &self.structure
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> C64 {
        self.structure[(i * self.dim + j) * self.dim + k]
    }

    /// Matrix of `y ↦ b_i · y`.
    pub fn left_basis(&self, i: usize) -> &CMatrix {
        &self.left[i]
    }

    /// Matrix of `y ↦ y · b_i`.
    pub fn right_basis(&self, i: usize) -> &CMatrix {
        &self.right[i]
    }

    pub fn left_regular(&self, x: &CVector) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (i, &xi) in x.iter().enumerate() {
            if xi != ZERO {
                out += &self.left[i] * xi;
            }
        }
        out
    }

    pub fn right_regular(&self, x: &CVector) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (i, &xi) in x.iter().enumerate() {
            if xi != ZERO {
                out += &self.right[i] * xi;
            }
        }
        out
    }

    /// Product of coordinate vectors.
    pub fn mul_coords(&self, x: &CVector, y: &CVector) -> CVector {
        let n = self.dim;
        let mut out = CVector::zeros(n);
        for (i, &xi) in x.iter().enumerate() {
            if xi == ZERO {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == ZERO {
                    continue;
                }
                let w = xi * yj;
                let base = (i * n + j) * n;
                for k in 0..n {
                    out[k] += w * self.structure[base + k];
                }
            }
        }
        out
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(Element::raw(self.mul_coords(&x.coords, &y.coords), self.id))
    }

    pub fn element(&self, coords: Vec<C64>) -> Result<Element> {
        if coords.len() != self.dim {
            return Err(Error::ShapeMismatch {
                expected: (self.dim, 1),
                found: (coords.len(), 1),
            });
        }
        Ok(Element::raw(CVector::from_vec(coords), self.id))
    }

    pub fn element_from(&self, coords: CVector) -> Element {
        assert_eq!(coords.len(), self.dim);
        Element::raw(coords, self.id)
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::raw(unit_vector(self.dim, i), self.id)
    }

    pub fn zero(&self) -> Element {
        Element::raw(CVector::zeros(self.dim), self.id)
    }

    pub fn identity(&self) -> Option<Element> {
        self.identity.as_ref().map(|e| Element::raw(e.clone(), self.id))
    }

    pub fn identity_coords(&self) -> Option<&CVector> {
        self.identity.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.identity.is_some()
    }

    pub(crate) fn check(&self, x: &Element) -> Result<()> {
        if x.algebra != self.id || x.coords.len() != self.dim {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| (self.c(i, j, k) - self.c(j, i, k)).norm() <= self.tol.eps)))
    }

    /// Norm of a coordinate vector under the algebra's norm convention.
    pub fn norm_of(&self, x: &CVector) -> f64 {
        match self.norm {
            NormKind::Ell1 => x.iter().map(|z| z.norm()).sum(),
            NormKind::LeftRegularOperator => {
                let l = self.left_regular(x);
                (0..self.dim)
                    .map(|j| l.column(j).iter().map(|z| z.norm()).sum::<f64>())
                    .fold(0.0, f64::max)
            }
        }
    }

    /// Worst associativity defect as `(i, j, k, l, residual)`.
    pub fn worst_associativity(&self) -> Option<(usize, usize, usize, usize, f64)> {
        let n = self.dim;
        let mut worst: Option<(usize, usize, usize, usize, f64)> = None;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut lhs = ZERO;
                        let mut rhs = ZERO;
                        for m in 0..n {
                            lhs += self.c(i, j, m) * self.c(m, k, l);
                            rhs += self.c(j, k, m) * self.c(i, m, l);
                        }
                        let r = (lhs - rhs).norm();
                        if worst.is_none_or(|w| r > w.4) {
                            worst = Some((i, j, k, l, r));
                        }
                    }
                }
            }
        }
        worst
    }

    /// Size of a typical term of `(b_i b_j) b_k`: `max(1, n·max|c|²)`. Derived
    /// algebras (subalgebras, rebased copies) carry rounding proportional to
    /// it, so associativity is judged against `eps` times this scale.
    pub fn associativity_scale(&self) -> f64 {
        let cmax = self.structure.iter().map(|z| z.norm()).fold(0.0, f64::max);
        (self.dim as f64 * cmax * cmax).max(1.0)
    }

    pub fn associativity_residual(&self) -> f64 {
        self.worst_associativity().map_or(0.0, |w| w.4)
    }

    /// `max_i max(‖e·b_i − b_i‖∞, ‖b_i·e − b_i‖∞)`.
    pub fn identity_residual(&self, e: &CVector) -> f64 {
        (0..self.dim)
            .map(|i| {
                let b = unit_vector(self.dim, i);
                let l = max_abs_diff_vec(&self.mul_coords(e, &b), &b);
                let r = max_abs_diff_vec(&self.mul_coords(&b, e), &b);
                l.max(r)
            })
            .fold(0.0, f64::max)
    }

    /// Solves the overdetermined system `e·b_i = b_i = b_i·e`.
    fn find_identity(&self) -> Option<CVector> {
        let n = self.dim;
        if n == 0 {
            return None;
        }
        let mut m = CMatrix::zeros(2 * n * n, n);
        let mut rhs = CVector::zeros(2 * n * n);
        for j in 0..n {
            for k in 0..n {
                let row = j * n + k;
                for i in 0..n {
                    m[(row, i)] = self.c(i, j, k);
                    m[(n * n + row, i)] = self.c(j, i, k);
                }
                if j == k {
                    rhs[row] = ONE;
                    rhs[n * n + row] = ONE;
                }
            }
        }
        let sol = solve(&m, &rhs, self.tol.rank)?;
        let e = sol.particular;
        (self.identity_residual(&e) <= self.tol.eps).then_some(e)
    }

    /// Opposite algebra: `c_op[i][j][k] = c[j][i][k]`.
    pub fn opposite(&self) -> Algebra {
        let n = self.dim;
        let mut s = vec![ZERO; n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    s[(i * n + j) * n + k] = self.c(j, i, k);
                }
            }
        }
        let mut alg = Algebra::assemble(n, self.labels.clone(), s, self.norm, self.tol);
        alg.identity = self.identity.clone();
        alg
    }

    /// Flags for a subspace: subalgebra, left ideal, right ideal.
    pub fn analyze_subspace(&self, s: &Subspace) -> SubspaceFlags {
        s.flags(self)
    }

    /// The subalgebra spanned by `s`, with structure constants in the echelon
    /// basis of `s`. Dimension zero is allowed.
    pub fn subalgebra(&self, s: &Subspace) -> Result<Algebra> {
        if s.algebra() != self.id {
            return Err(Error::AlgebraMismatch);
        }
        let k = s.dim();
        let mut structure = vec![ZERO; k * k * k];
        let mut worst: f64 = 0.0;
        let mut size: f64 = 1.0;
        for a in 0..k {
            for b in 0..k {
                let prod = self.mul_coords(&s.basis().column(a).into_owned(), &s.basis().column(b).into_owned());
                size = size.max(linalg::max_abs_vec(&prod));
                worst = worst.max(linalg::max_abs_vec(&s.residual(&prod)));
                let coords = s.coords(&prod);
                for c in 0..k {
                    structure[(a * k + b) * k + c] = coords[c];
                }
            }
        }
        // s itself is usually computed, so closure is judged relative to
        // the size of the products
        if worst > self.tol.eps * size {
            return Err(Error::NotASubalgebra { residual: worst });
        }
        let labels = s.labels(self);
        Algebra::builder(k, structure)
            .labels(labels)
            .norm(self.norm)
            .tolerance(self.tol)
            .allow_empty()
            .build()
    }

    /// Smallest subalgebra containing the generators.
    pub fn subalgebra_closure(&self, generators: &[Element]) -> Result<Subspace> {
        for g in generators {
            self.check(g)?;
        }
        let mut vecs: Vec<CVector> = generators.iter().map(|g| g.coords.clone()).collect();
        let mut current = Subspace::from_vectors(self, &vecs);
        loop {
            let basis = current.basis().clone();
            let k = basis.ncols();
            for a in 0..k {
                for b in 0..k {
                    vecs.push(self.mul_coords(&basis.column(a).into_owned(), &basis.column(b).into_owned()));
                }
            }
            let next = Subspace::from_vectors(self, &vecs);
            if next.dim() == current.dim() {
                return Ok(next);
            }
            vecs = (0..next.dim()).map(|c| next.basis().column(c).into_owned()).collect();
            current = next;
        }
    }

    /// Quotient by a two-sided ideal. The complement is spanned by the
    /// non-pivot coordinates of the ideal's echelon form; the returned map is
    /// the quotient homomorphism, certified on all basis pairs.
    pub fn quotient(&self, s: &Subspace) -> Result<(Algebra, crate::starmap::AlgMap)> {
        if s.algebra() != self.id {
            return Err(Error::AlgebraMismatch);
        }
        let n = self.dim;
        for i in 0..n {
            for c in 0..s.dim() {
                let v = s.basis().column(c).into_owned();
                let bi = unit_vector(n, i);
                for (prod, left, right) in [(self.mul_coords(&bi, &v), i, c), (self.mul_coords(&v, &bi), c, i)] {
                    let r = linalg::max_abs_vec(&s.residual(&prod));
                    if r > self.tol.eps {
                        return Err(Error::NotAnIdeal {
                            left,
                            right,
                            residual: r,
                        });
                    }
                }
            }
        }
        let keep: Vec<usize> = (0..n).filter(|c| !s.pivots().contains(c)).collect();
        let m = keep.len();
        let mut q = CMatrix::zeros(m, n);
        for j in 0..n {
            let r = s.residual(&unit_vector(n, j));
            for (a, &kc) in keep.iter().enumerate() {
                q[(a, j)] = r[kc];
            }
        }
        let mut structure = vec![ZERO; m * m * m];
        for (a, &ka) in keep.iter().enumerate() {
            for (b, &kb) in keep.iter().enumerate() {
                let prod = self.mul_coords(&unit_vector(n, ka), &unit_vector(n, kb));
                let img = &q * prod;
                for c in 0..m {
                    structure[(a * m + b) * m + c] = img[c];
                }
            }
        }
        let labels = keep.iter().map(|&k| self.labels[k].clone()).collect();
        let quotient = Algebra::builder(m, structure)
            .labels(labels)
            .norm(self.norm)
            .tolerance(self.tol)
            .allow_empty()
            .build()?;
        let map = crate::starmap::AlgMap::new(q, false, self, &quotient)?;
        let mult = map.classify_multiplicativity(self, &quotient)?;
        if !mult.homomorphism {
            return Err(Error::certification(
                "quotient map is multiplicative",
                mult.hom_residual,
            ));
        }
        Ok((quotient, map))
    }
}

/// Coordinate vector of an element, tagged with its owning algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    coords: CVector,
    algebra: AlgebraId,
}

impl Element {
    pub(crate) fn raw(coords: CVector, algebra: AlgebraId) -> Self {
        Element { coords, algebra }
    }

    pub fn coords(&self) -> &CVector {
        &self.coords
    }

    pub fn into_coords(self) -> CVector {
        self.coords
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs_vec(&self.coords)
    }

    pub fn distance(&self, other: &Element) -> f64 {
        assert_eq!(self.algebra, other.algebra, "elements of different algebras");
        max_abs_diff_vec(&self.coords, &other.coords)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.algebra, rhs.algebra, "elements of different algebras");
        Element::raw(&self.coords + &rhs.coords, self.algebra)
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.algebra, rhs.algebra, "elements of different algebras");
        Element::raw(&self.coords - &rhs.coords, self.algebra)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::raw(-&self.coords, self.algebra)
    }
}

impl Mul<C64> for &Element {
    type Output = Element;
    fn mul(self, rhs: C64) -> Element {
        Element::raw(&self.coords * rhs, self.algebra)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::I;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pointwise(n: usize) -> Vec<C64> {
        let mut s = vec![ZERO; n * n * n];
        for i in 0..n {
            s[(i * n + i) * n + i] = ONE;
        }
        s
    }

    #[test]
    fn pointwise_c2_has_identity() {
        let a = make_algebra(2, pointwise(2), vec!["d0".into(), "d1".into()], None).unwrap();
        let e = a.identity().unwrap();
        assert!(max_abs_diff_vec(e.coords(), &CVector::from_vec(vec![ONE, ONE])) < 1e-12);
    }

    #[test]
    fn group_z2_identity_is_e() {
        // b0 = e, b1 = g, g² = e
        let mut s = vec![ZERO; 8];
        s[0] = ONE; // e e = e
        s[3] = ONE; // e g = g
        s[5] = ONE; // g e = g
        s[6] = ONE; // g g = e
        let a = make_algebra(2, s, vec!["e".into(), "g".into()], None).unwrap();
        assert!(a.identity().unwrap().distance(&a.basis_element(0)) < 1e-12);
    }

    // Brute force over all quadruples: the defect of c[0][0][0]=1,
    // c[0][1][0]=1, c[1][0][0]=2 is nonzero at (0,1,0) among others.
    #[test]
    fn associativity_violation_reported() {
        let mut s = vec![ZERO; 8];
        s[0] = ONE;
        s[2] = ONE; // c[0][1][0]
        s[4] = c(2.0, 0.0); // c[1][0][0]
        let mut oracle_worst: f64 = 0.0;
        let cc = |i: usize, j: usize, k: usize| s[(i * 2 + j) * 2 + k];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let lhs: C64 = (0..2).map(|m| cc(i, j, m) * cc(m, k, l)).sum();
                        let rhs: C64 = (0..2).map(|m| cc(j, k, m) * cc(i, m, l)).sum();
                        oracle_worst = oracle_worst.max((lhs - rhs).norm());
                    }
                }
            }
        }
        assert!(oracle_worst > 0.5);
        let err = make_algebra(2, s, vec!["x".into(), "y".into()], None).unwrap_err();
        match err {
            Error::AssociativityViolation { residual, .. } => {
                assert!((residual - oracle_worst).abs() < 1e-12)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn declared_identity_is_checked() {
        let err = make_algebra(2, pointwise(2), vec!["a".into(), "b".into()], Some(vec![ONE, ZERO])).unwrap_err();
        assert!(matches!(err, Error::IdentityMismatch { .. }));
    }

    #[test]
    fn multiply_pointwise_and_mismatch() {
        let a = function_algebra(2);
        let x = a.element(vec![ONE, c(2.0, 0.0)]).unwrap();
        let y = a.element(vec![c(3.0, 0.0), c(4.0, 0.0)]).unwrap();
        let p = a.multiply(&x, &y).unwrap();
        assert!(max_abs_diff_vec(p.coords(), &CVector::from_vec(vec![c(3.0, 0.0), c(8.0, 0.0)])) < 1e-12);
        let other = function_algebra(3);
        let z = other.basis_element(0);
        assert_eq!(a.multiply(&x, &z).unwrap_err(), Error::AlgebraMismatch);
    }

    #[test]
    fn z2_zero_divisor() {
        let a = group_algebra(&cyclic_group_table(2), None).unwrap();
        let e = a.basis_element(0);
        let g = a.basis_element(1);
        let p = a.multiply(&(&e + &g), &(&e - &g)).unwrap();
        assert!(p.max_abs() < 1e-12);
    }

    #[test]
    fn matrix_units_multiply() {
        let m2 = matrix_algebra(2);
        // E11 = 0, E12 = 1, E21 = 2, E22 = 3
        let p = m2.multiply(&m2.basis_element(0), &m2.basis_element(1)).unwrap();
        assert!(p.distance(&m2.basis_element(1)) < 1e-12);
        let op = m2.opposite();
        let p = op.multiply(&op.basis_element(0), &op.basis_element(1)).unwrap();
        assert!(p.max_abs() < 1e-12);
    }

    #[test]
    fn opposite_twice_is_bit_identical() {
        let a = group_algebra(&symmetric_group_3_table(), None).unwrap();
        let back = a.opposite().opposite();
        assert_eq!(a.structure(), back.structure());
        assert_eq!(a.id(), back.id());
    }

    #[test]
    fn quotient_examples() {
        let c3 = function_algebra(3);
        let s = Subspace::from_vectors(&c3, &[unit_vector(3, 2)]);
        let (q, map) = c3.quotient(&s).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.structure(), function_algebra(2).structure());
        assert_eq!(map.matrix().shape(), (2, 3));

        let z2 = group_algebra(&cyclic_group_table(2), None).unwrap();
        let s = Subspace::from_vectors(&z2, &[CVector::from_vec(vec![ONE, -ONE])]);
        let (q, _) = z2.quotient(&s).unwrap();
        assert_eq!(q.dim(), 1);
        assert!((q.c(0, 0, 0) - ONE).norm() < 1e-12);

        let c2 = function_algebra(2);
        let s = Subspace::from_vectors(&c2, &[CVector::from_vec(vec![ONE, ONE])]);
        assert!(matches!(c2.quotient(&s), Err(Error::NotAnIdeal { .. })));
    }

    #[test]
    fn analyze_subspace_examples() {
        let c2 = function_algebra(2);
        let s = Subspace::from_vectors(&c2, &[unit_vector(2, 0)]);
        let f = c2.analyze_subspace(&s);
        assert!(f.is_subalgebra && f.is_left_ideal && f.is_right_ideal);

        let m2 = matrix_algebra(2);
        let s = Subspace::from_vectors(&m2, &[unit_vector(4, 0), unit_vector(4, 2)]);
        let f = m2.analyze_subspace(&s);
        assert!(f.is_subalgebra && f.is_left_ideal && !f.is_right_ideal);

        let z2 = group_algebra(&cyclic_group_table(2), None).unwrap();
        let s = Subspace::from_vectors(&z2, &[CVector::from_vec(vec![ONE, ONE])]);
        let f = z2.analyze_subspace(&s);
        assert!(f.is_subalgebra && f.is_left_ideal && f.is_right_ideal);
    }

    #[test]
    fn closure_examples() {
        let c3 = function_algebra(3);
        let g = c3.element(vec![ONE, ONE, ZERO]).unwrap();
        assert_eq!(c3.subalgebra_closure(&[g]).unwrap().dim(), 1);

        let z3 = group_algebra(&cyclic_group_table(3), None).unwrap();
        let s = z3.subalgebra_closure(&[z3.basis_element(1)]).unwrap();
        assert_eq!(s.dim(), 3);

        let m2 = matrix_algebra(2);
        let s = m2.subalgebra_closure(&[m2.basis_element(1)]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(m2.analyze_subspace(&s).is_subalgebra);
    }

    #[test]
    fn norms() {
        let c2 = function_algebra(2);
        let x = CVector::from_vec(vec![c(3.0, 4.0), -ONE]);
        assert!((c2.norm_of(&x) - 6.0).abs() < 1e-12);
        let op = c2.clone().with_norm(NormKind::LeftRegularOperator);
        assert!((op.norm_of(&x) - 5.0).abs() < 1e-12);
        assert!(c2.is_commutative());
        assert!(!matrix_algebra(2).is_commutative());
        let y = CVector::from_vec(vec![I, ZERO]);
        assert!((c2.norm_of(&y) - 1.0).abs() < 1e-12);
    }
}
