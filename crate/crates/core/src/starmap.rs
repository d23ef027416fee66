//! Linear and conjugate-linear maps between algebras, stored as a complex
//! matrix plus a conjugation flag.
//!
//! The action contract is `f(x) = M·x` for linear maps and `f(x) = M·conj(x)`
//! for conjugating ones. Composition multiplies matrices with the right
//! operand conjugated whenever the left map conjugates, and XORs the flags.

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraId, Element, Subspace};
use crate::error::{Error, Result};
use crate::linalg::{
    conj_matrix, conj_vector, max_abs, max_abs_diff, max_abs_diff_vec, unit_vector, CMatrix, CVector, Echelon,
};

#[derive(Debug, Clone, PartialEq)]
pub struct AlgMap {
    matrix: CMatrix,
    conjugating: bool,
    source: AlgebraId,
    target: AlgebraId,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Multiplicativity {
    pub homomorphism: bool,
    pub anti_homomorphism: bool,
    pub hom_residual: f64,
    pub anti_residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdjointMode {
    Linear,
    ConjugateLinear,
}

/// Functional on an algebra in the dual basis: `⟨f, x⟩ = Σ f_i x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualVector {
    coords: CVector,
    algebra: AlgebraId,
}

impl DualVector {
    pub fn new(alg: &Algebra, coords: CVector) -> Result<Self> {
        if coords.len() != alg.dim() {
            return Err(Error::ShapeMismatch {
                expected: (alg.dim(), 1),
                found: (coords.len(), 1),
            });
        }
        Ok(DualVector {
            coords,
            algebra: alg.id(),
        })
    }

    pub(crate) fn raw(coords: CVector, algebra: AlgebraId) -> Self {
        DualVector { coords, algebra }
    }

    pub fn coords(&self) -> &CVector {
        &self.coords
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn pair(&self, x: &Element) -> Result<crate::linalg::C64> {
        if x.algebra() != self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.pair_coords(x.coords()))
    }

    pub fn pair_coords(&self, x: &CVector) -> crate::linalg::C64 {
        self.coords.iter().zip(x.iter()).map(|(a, b)| a * b).sum()
    }
}

impl AlgMap {
    /// `make_map`: shape must be `(dim target, dim source)`.
    pub fn new(matrix: CMatrix, conjugating: bool, source: &Algebra, target: &Algebra) -> Result<Self> {
        let expected = (target.dim(), source.dim());
        if matrix.shape() != expected {
            return Err(Error::ShapeMismatch {
                expected,
                found: matrix.shape(),
            });
        }
        Ok(AlgMap {
            matrix,
            conjugating,
            source: source.id(),
            target: target.id(),
        })
    }

    pub(crate) fn raw(matrix: CMatrix, conjugating: bool, source: AlgebraId, target: AlgebraId) -> Self {
        AlgMap {
            matrix,
            conjugating,
            source,
            target,
        }
    }

    pub fn identity(alg: &Algebra) -> Self {
        Self::raw(CMatrix::identity(alg.dim(), alg.dim()), false, alg.id(), alg.id())
    }

    /// Entrywise conjugation of coordinates.
    pub fn conjugation(alg: &Algebra) -> Self {
        Self::raw(CMatrix::identity(alg.dim(), alg.dim()), true, alg.id(), alg.id())
    }

    pub fn zero(source: &Algebra, target: &Algebra, conjugating: bool) -> Self {
        Self::raw(
            CMatrix::zeros(target.dim(), source.dim()),
            conjugating,
            source.id(),
            target.id(),
        )
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn is_conjugating(&self) -> bool {
        self.conjugating
    }

    pub fn source(&self) -> AlgebraId {
        self.source
    }

    pub fn target(&self) -> AlgebraId {
        self.target
    }

    pub fn is_endomorphism_of(&self, alg: &Algebra) -> bool {
        self.source == alg.id() && self.target == alg.id()
    }

    pub fn apply_coords(&self, x: &CVector) -> CVector {
        if self.conjugating {
            &self.matrix * conj_vector(x)
        } else {
            &self.matrix * x
        }
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.algebra() != self.source || x.dim() != self.matrix.ncols() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Element::raw(self.apply_coords(x.coords()), self.target))
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &AlgMap) -> Result<AlgMap> {
        if self.source != g.target || self.matrix.ncols() != g.matrix.nrows() {
            return Err(Error::AlgebraMismatch);
        }
        let rhs = if self.conjugating {
            conj_matrix(&g.matrix)
        } else {
            g.matrix.clone()
        };
        Ok(AlgMap::raw(
            &self.matrix * rhs,
            self.conjugating ^ g.conjugating,
            g.source,
            self.target,
        ))
    }

    /// Maps with equal flags and endpoints compare by matrix residual; maps
    /// with different flags are infinitely far apart unless both are zero.
    pub fn distance(&self, other: &AlgMap) -> f64 {
        if self.matrix.shape() != other.matrix.shape() {
            return f64::INFINITY;
        }
        if self.conjugating != other.conjugating {
            let worst = max_abs(&self.matrix).max(max_abs(&other.matrix));
            return if worst == 0.0 { 0.0 } else { f64::INFINITY };
        }
        max_abs_diff(&self.matrix, &other.matrix)
    }

    /// Checks `f(b_i b_j) = f(b_i) f(b_j)` and `f(b_i b_j) = f(b_j) f(b_i)` on
    /// all basis pairs, which suffices by (conjugate-)bilinearity.
    pub fn classify_multiplicativity(&self, source: &Algebra, target: &Algebra) -> Result<Multiplicativity> {
        if self.source != source.id() || self.target != target.id() {
            return Err(Error::AlgebraMismatch);
        }
        let n = source.dim();
        let images: Vec<CVector> = (0..n).map(|i| self.apply_coords(&unit_vector(n, i))).collect();
        let mut hom: f64 = 0.0;
        let mut anti: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let prod = source.mul_coords(&unit_vector(n, i), &unit_vector(n, j));
                let lhs = self.apply_coords(&prod);
                hom = hom.max(max_abs_diff_vec(&lhs, &target.mul_coords(&images[i], &images[j])));
                anti = anti.max(max_abs_diff_vec(&lhs, &target.mul_coords(&images[j], &images[i])));
            }
        }
        let eps = source.tol().eps;
        Ok(Multiplicativity {
            homomorphism: hom <= eps,
            anti_homomorphism: anti <= eps,
            hom_residual: hom,
            anti_residual: anti,
        })
    }

    /// Adjoint acting on dual coordinates, from the target's dual to the
    /// source's dual. Linear mode: `⟨f*(φ), a⟩ = ⟨φ, f(a)⟩`, defined for linear
    /// maps. Conjugate-linear mode: `⟨f*(φ), a⟩ = conj⟨φ, f(a)⟩`, defined for
    /// conjugating maps.
    pub fn adjoint(&self, mode: AdjointMode) -> Result<AlgMap> {
        match (mode, self.conjugating) {
            (AdjointMode::Linear, false) => Ok(AlgMap::raw(self.matrix.transpose(), false, self.target, self.source)),
            (AdjointMode::ConjugateLinear, true) => {
                Ok(AlgMap::raw(self.matrix.adjoint(), true, self.target, self.source))
            }
            _ => Err(Error::ModeUnsupported),
        }
    }

    /// The adjoint matching this map's linearity.
    pub fn natural_adjoint(&self) -> AlgMap {
        let mode = if self.conjugating {
            AdjointMode::ConjugateLinear
        } else {
            AdjointMode::Linear
        };
        self.adjoint(mode).expect("mode matches flag")
    }

    pub fn apply_dual(&self, f: &DualVector) -> Result<DualVector> {
        if f.algebra != self.source || f.coords.len() != self.matrix.ncols() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(DualVector::raw(self.apply_coords(&f.coords), self.target))
    }

    /// Kernel and image of an endomorphism. For conjugating maps the kernel
    /// is `conj(null(M))`, still a complex subspace.
    pub fn kernel_image(&self, alg: &Algebra) -> Result<(Subspace, Subspace)> {
        if !self.is_endomorphism_of(alg) {
            return Err(Error::AlgebraMismatch);
        }
        let ech = Echelon::of_rows(&self.matrix, alg.tol().rank);
        let mut null = ech.null_space();
        if self.conjugating {
            null = conj_matrix(&null);
        }
        let kernel = Subspace::from_columns(alg, &null);
        let image = Subspace::from_columns(alg, &self.matrix);
        Ok((kernel, image))
    }

    pub fn rank(&self, rank_tol: f64) -> usize {
        crate::linalg::rank(&self.matrix, rank_tol)
    }

    /// Operator norm with respect to the algebras' norms. Exact (maximum
    /// column sum) when both carry the ℓ¹ norm; otherwise the largest ratio
    /// over basis vectors and the image columns, which is a lower bound.
    pub fn norm(&self, source: &Algebra, target: &Algebra) -> f64 {
        use crate::algebra::NormKind;
        let n = source.dim();
        if source.norm_kind() == NormKind::Ell1 && target.norm_kind() == NormKind::Ell1 {
            return (0..n)
                .map(|j| self.matrix.column(j).iter().map(|z| z.norm()).sum::<f64>())
                .fold(0.0, f64::max);
        }
        (0..n)
            .filter_map(|j| {
                let x = unit_vector(n, j);
                let d = source.norm_of(&x);
                (d > 0.0).then(|| target.norm_of(&self.apply_coords(&x)) / d)
            })
            .fold(0.0, f64::max)
    }

    /// Restriction to subspaces, expressed in their echelon coordinates.
    /// Fails if the image of `from` is not inside `to`. For a conjugating map
    /// `f(Σ c_a v_a) = Σ conj(c_a) f(v_a)`, so the columns are `f(v_a)` either way.
    pub fn restrict(
        &self,
        from: &Subspace,
        from_alg: &Algebra,
        to: &Subspace,
        to_alg: &Algebra,
        eps: f64,
    ) -> Result<AlgMap> {
        if from.algebra() != self.source || to.algebra() != self.target {
            return Err(Error::AlgebraMismatch);
        }
        let k = from.dim();
        let mut m = CMatrix::zeros(to.dim(), k);
        for a in 0..k {
            let img = self.apply_coords(&from.basis().column(a).into_owned());
            let r = crate::linalg::max_abs_vec(&to.residual(&img));
            if r > eps {
                return Err(Error::certification("restricted image stays in the target subspace", r));
            }
            m.set_column(a, &to.coords(&img));
        }
        Ok(AlgMap::raw(m, self.conjugating, from_alg.id(), to_alg.id()))
    }

    /// The same matrix and flag, rebound to new endpoints of equal shape.
    pub fn rebind(&self, source: &Algebra, target: &Algebra) -> Result<AlgMap> {
        AlgMap::new(self.matrix.clone(), self.conjugating, source, target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_group_table, function_algebra, group_algebra, matrix_algebra};
    use crate::linalg::{C64, I, ONE, ZERO};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// τ(z₁, z₂) = (conj z₁, 0) on ℂ².
    fn half_conj(a: &Algebra) -> AlgMap {
        AlgMap::new(CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]), true, a, a).unwrap()
    }

    /// X ↦ X* on M₂ (E11, E12, E21, E22).
    fn conj_transpose(m2: &Algebra) -> AlgMap {
        let mut m = CMatrix::zeros(4, 4);
        m[(0, 0)] = ONE;
        m[(2, 1)] = ONE;
        m[(1, 2)] = ONE;
        m[(3, 3)] = ONE;
        AlgMap::new(m, true, m2, m2).unwrap()
    }

    #[test]
    fn make_map_shapes() {
        let c2 = function_algebra(2);
        let c3 = function_algebra(3);
        assert!(AlgMap::new(CMatrix::zeros(2, 3), false, &c3, &c2).is_ok());
        assert!(matches!(
            AlgMap::new(CMatrix::zeros(3, 3), false, &c3, &c2),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn apply_examples() {
        let c2 = function_algebra(2);
        let tau = half_conj(&c2);
        let x = c2.element(vec![I, c(7.0, 0.0)]).unwrap();
        let y = tau.apply(&x).unwrap();
        assert!(max_abs_diff_vec(y.coords(), &CVector::from_vec(vec![-I, ZERO])) < 1e-15);

        let z2 = group_algebra(&cyclic_group_table(2), None).unwrap();
        let conj = AlgMap::conjugation(&z2);
        let y = conj.apply(&z2.element(vec![c(1.0, 1.0), ZERO]).unwrap()).unwrap();
        assert!(max_abs_diff_vec(y.coords(), &CVector::from_vec(vec![c(1.0, -1.0), ZERO])) < 1e-15);

        let zero = AlgMap::zero(&c2, &c2, false);
        assert!(zero.apply(&x).unwrap().max_abs() == 0.0);
        assert_eq!(tau.apply(&z2.basis_element(0)).unwrap_err(), Error::AlgebraMismatch);
    }

    #[test]
    fn compose_examples() {
        let c2 = function_algebra(2);
        let tau = half_conj(&c2);
        let p = tau.compose(&tau).unwrap();
        assert!(!p.is_conjugating());
        assert_eq!(p.matrix(), &CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]));
        let cube = tau.compose(&p).unwrap();
        assert_eq!(cube.distance(&tau), 0.0);
        let conj = AlgMap::conjugation(&c2);
        assert_eq!(conj.compose(&conj).unwrap().distance(&AlgMap::identity(&c2)), 0.0);
    }

    #[test]
    fn compose_rule_conjugates_right_factor() {
        let c2 = function_algebra(2);
        let f = AlgMap::new(
            CMatrix::from_row_slice(2, 2, &[I, ONE, ZERO, c(2.0, -1.0)]),
            true,
            &c2,
            &c2,
        )
        .unwrap();
        let g = AlgMap::new(
            CMatrix::from_row_slice(2, 2, &[c(0.5, 1.0), ZERO, I, ONE]),
            false,
            &c2,
            &c2,
        )
        .unwrap();
        let x = CVector::from_vec(vec![c(0.3, -0.7), c(1.1, 0.2)]);
        let fg = f.compose(&g).unwrap();
        assert!(fg.is_conjugating());
        let direct = f.apply_coords(&g.apply_coords(&x));
        assert!(max_abs_diff_vec(&fg.apply_coords(&x), &direct) < 1e-14);
    }

    #[test]
    fn multiplicativity_examples() {
        let c2 = function_algebra(2);
        let m = half_conj(&c2).classify_multiplicativity(&c2, &c2).unwrap();
        assert!(m.homomorphism && m.anti_homomorphism);

        let m2 = matrix_algebra(2);
        let m = conj_transpose(&m2).classify_multiplicativity(&m2, &m2).unwrap();
        assert!(!m.homomorphism && m.anti_homomorphism);

        let mut t = CMatrix::zeros(4, 4);
        t[(0, 0)] = ONE;
        t[(2, 1)] = ONE;
        t[(1, 2)] = ONE;
        t[(3, 3)] = ONE;
        let transpose = AlgMap::new(t, false, &m2, &m2).unwrap();
        let m = transpose.classify_multiplicativity(&m2, &m2).unwrap();
        assert!(!m.homomorphism && m.anti_homomorphism);
    }

    #[test]
    fn adjoint_examples() {
        let c2 = function_algebra(2);
        let tau = half_conj(&c2);
        let adj = tau.adjoint(AdjointMode::ConjugateLinear).unwrap();
        let f = DualVector::new(&c2, CVector::from_vec(vec![ONE, ONE])).unwrap();
        let g = adj.apply_dual(&f).unwrap();
        assert!(max_abs_diff_vec(g.coords(), &CVector::from_vec(vec![ONE, ZERO])) < 1e-15);
        assert_eq!(tau.adjoint(AdjointMode::Linear).unwrap_err(), Error::ModeUnsupported);

        let id = AlgMap::identity(&c2);
        assert_eq!(id.adjoint(AdjointMode::Linear).unwrap(), id);

        let back = adj.adjoint(AdjointMode::ConjugateLinear).unwrap();
        assert_eq!(back.distance(&tau), 0.0);
    }

    // Pairing identity checked independently on random functionals/elements.
    #[test]
    fn adjoint_pairing_identity() {
        let m2 = matrix_algebra(2);
        let f = conj_transpose(&m2);
        let mut g = f.matrix().clone();
        g[(1, 1)] = c(0.5, 0.25);
        let f = AlgMap::new(g, true, &m2, &m2).unwrap();
        let adj = f.natural_adjoint();
        let phi = CVector::from_vec(vec![c(1.0, 2.0), c(-0.5, 0.1), c(0.0, 1.0), c(3.0, -1.0)]);
        let a = CVector::from_vec(vec![c(0.2, 0.0), c(1.0, -1.0), c(0.7, 0.3), c(-2.0, 0.5)]);
        let lhs: C64 = adj.apply_coords(&phi).iter().zip(a.iter()).map(|(x, y)| x * y).sum();
        let inner: C64 = phi.iter().zip(f.apply_coords(&a).iter()).map(|(x, y)| x * y).sum();
        assert!((lhs - inner.conj()).norm() < 1e-14);
    }

    #[test]
    fn kernel_image_examples() {
        let c2 = function_algebra(2);
        let (k, im) = half_conj(&c2).kernel_image(&c2).unwrap();
        assert_eq!((k.dim(), im.dim()), (1, 1));
        assert!(k.contains(&unit_vector(2, 1), 1e-12));
        assert!(im.contains(&unit_vector(2, 0), 1e-12));

        let (k, im) = AlgMap::conjugation(&c2).kernel_image(&c2).unwrap();
        assert_eq!((k.dim(), im.dim()), (0, 2));
        let (k, im) = AlgMap::zero(&c2, &c2, true).kernel_image(&c2).unwrap();
        assert_eq!((k.dim(), im.dim()), (2, 0));
    }

    #[test]
    fn conjugating_kernel_is_conjugated_null_space() {
        let c2 = function_algebra(2);
        // τ(z) = (conj(z1) + i conj(z2)) (1, 0): kernel is conj of {z1 + i z2 = 0}
        let m = CMatrix::from_row_slice(2, 2, &[ONE, I, ZERO, ZERO]);
        let f = AlgMap::new(m, true, &c2, &c2).unwrap();
        let (k, _) = f.kernel_image(&c2).unwrap();
        let v = k.basis().column(0).into_owned();
        assert!(crate::linalg::max_abs_vec(&f.apply_coords(&v)) < 1e-14);
        let v2 = &v * c(0.3, 2.0);
        assert!(crate::linalg::max_abs_vec(&f.apply_coords(&v2)) < 1e-14);
    }

    #[test]
    fn l1_norm_of_map() {
        let c2 = function_algebra(2);
        let f = AlgMap::new(
            CMatrix::from_row_slice(2, 2, &[ONE, c(0.0, 2.0), ONE, ZERO]),
            false,
            &c2,
            &c2,
        )
        .unwrap();
        assert!((f.norm(&c2, &c2) - 2.0).abs() < 1e-15);
    }
}
