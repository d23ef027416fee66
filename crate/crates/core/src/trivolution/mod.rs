//! Star-map classification and the canonical decomposition `A = I ⊕ B`,
//! `τ = ρ∘p` of a trivolution.

mod elements;
mod factor;

pub use elements::{
    check_positive, check_positive_z, element_classes, f_tau, hermitian_basis, hermitian_decomposition,
    hermitian_functional_check, positive_classes, ElementFlags, HermitianFunctionalReport,
};
pub use factor::{
    check_trivolutive_hom, factor_through_involution, right_identity_trivolution, FactorResiduals, Factorization,
    HomBlocks,
};

use serde::Serialize;

use crate::algebra::{Algebra, Subspace};
use crate::error::{Error, Result};
use crate::linalg::{max_abs, max_abs_diff, CMatrix};
use crate::starmap::AlgMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StarKind {
    NotStar,
    Involution,
    TrivolutionProper,
}

impl StarKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StarKind::NotStar => "not_star",
            StarKind::Involution => "involution",
            StarKind::TrivolutionProper => "trivolution_proper",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StarClass {
    pub kind: StarKind,
    pub is_conjugate_linear: bool,
    pub is_anti_hom: bool,
    pub cubes_to_self: bool,
    pub is_injective: bool,
    pub is_nonzero: bool,
    pub rank: usize,
    pub norm_of_map: f64,
    pub anti_residual: f64,
    pub cube_residual: f64,
}

impl StarClass {
    pub fn is_star(&self) -> bool {
        self.kind != StarKind::NotStar
    }

    /// Human-readable list of failed axioms.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.is_conjugate_linear {
            out.push("map is not conjugate-linear");
        }
        if !self.is_anti_hom {
            out.push("anti-multiplicativity τ(xy) = τ(y)τ(x)");
        }
        if !self.cubes_to_self {
            out.push("cube law τ³ = τ");
        }
        if !self.is_nonzero {
            out.push("map is zero");
        }
        out
    }
}

pub fn classify_star_map(a: &Algebra, f: &AlgMap) -> Result<StarClass> {
    if !f.is_endomorphism_of(a) {
        return Err(Error::AlgebraMismatch);
    }
    let eps = a.tol().eps;
    let mult = f.classify_multiplicativity(a, a)?;
    let cube = f.compose(&f.compose(f)?)?;
    let cube_residual = max_abs_diff(cube.matrix(), f.matrix());
    let rank = f.rank(a.tol().rank);
    let is_nonzero = max_abs(f.matrix()) > eps;
    let is_conjugate_linear = f.is_conjugating();
    let cubes_to_self = cube_residual <= eps;
    let is_injective = rank == a.dim();
    let star = is_conjugate_linear && mult.anti_homomorphism && cubes_to_self && is_nonzero;
    let kind = match (star, is_injective) {
        (false, _) => StarKind::NotStar,
        (true, true) => StarKind::Involution,
        (true, false) => StarKind::TrivolutionProper,
    };
    Ok(StarClass {
        kind,
        is_conjugate_linear,
        is_anti_hom: mult.anti_homomorphism,
        cubes_to_self,
        is_injective,
        is_nonzero,
        rank,
        norm_of_map: f.norm(a, a),
        anti_residual: mult.anti_residual,
        cube_residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecompositionResiduals {
    pub reconstruction: f64,
    pub projection_idempotent: f64,
    pub projection_hom: f64,
    pub rho_involutive: f64,
    pub rho_anti: f64,
}

impl DecompositionResiduals {
    pub fn max(&self) -> f64 {
        [
            self.reconstruction,
            self.projection_idempotent,
            self.projection_hom,
            self.rho_involutive,
            self.rho_anti,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// `A = I ⊕ B` with `p = τ²` and `ρ = τ|_B` in the echelon coordinates of `B`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub ideal_i: Subspace,
    pub subalg_b: Subspace,
    pub i_algebra: Algebra,
    pub b_algebra: Algebra,
    pub projection_p: AlgMap,
    pub involution_rho: AlgMap,
    pub residuals: DecompositionResiduals,
}

impl Decomposition {
    /// `B → A`, the inclusion in echelon coordinates.
    pub fn b_embedding(&self, a: &Algebra) -> AlgMap {
        AlgMap::raw(self.subalg_b.basis().clone(), false, self.b_algebra.id(), a.id())
    }

    pub fn i_embedding(&self, a: &Algebra) -> AlgMap {
        AlgMap::raw(self.ideal_i.basis().clone(), false, self.i_algebra.id(), a.id())
    }

    /// `A → B`, `x ↦ coordinates of p(x)`. A surjective homomorphism.
    pub fn b_projection(&self, a: &Algebra) -> AlgMap {
        AlgMap::raw(
            self.subalg_b.coordinate_matrix() * self.projection_p.matrix(),
            false,
            a.id(),
            self.b_algebra.id(),
        )
    }

    /// `A → I`, `x ↦ coordinates of x − p(x)`.
    pub fn i_projection(&self, a: &Algebra) -> AlgMap {
        let n = a.dim();
        let q = CMatrix::identity(n, n) - self.projection_p.matrix();
        AlgMap::raw(self.ideal_i.coordinate_matrix() * q, false, a.id(), self.i_algebra.id())
    }
}

pub fn canonical_decomposition(a: &Algebra, tau: &AlgMap) -> Result<Decomposition> {
    let class = classify_star_map(a, tau)?;
    if !class.is_star() {
        return Err(Error::NotATrivolution(class.failures().join("; ")));
    }
    let tol = a.tol();
    let p = tau.compose(tau)?;
    let (ideal_i, subalg_b) = tau.kernel_image(a)?;
    if ideal_i.dim() + subalg_b.dim() != a.dim() || ideal_i.sum_dim(&subalg_b, tol.rank) != a.dim() {
        return Err(Error::certification("A = ker τ ⊕ τ(A)", f64::NAN));
    }
    let i_algebra = a.subalgebra(&ideal_i)?;
    let b_algebra = a.subalgebra(&subalg_b)?;
    let rho = tau.restrict(&subalg_b, &b_algebra, &subalg_b, &b_algebra, tol.eps)?;
    let (_, p_image) = p.kernel_image(a)?;
    if !p_image.same_as(&subalg_b, tol.eps) {
        return Err(Error::certification("image of τ² equals τ(A)", f64::NAN));
    }
    let rebuilt = make_trivolution(a, &p, &rho)?;
    let residuals = DecompositionResiduals {
        reconstruction: max_abs_diff(rebuilt.matrix(), tau.matrix()),
        projection_idempotent: max_abs_diff(p.compose(&p)?.matrix(), p.matrix()),
        projection_hom: p.classify_multiplicativity(a, a)?.hom_residual,
        rho_involutive: max_abs_diff(
            rho.compose(&rho)?.matrix(),
            &CMatrix::identity(subalg_b.dim(), subalg_b.dim()),
        ),
        rho_anti: rho.classify_multiplicativity(&b_algebra, &b_algebra)?.anti_residual,
    };
    if residuals.reconstruction > tol.eps {
        return Err(Error::certification("τ = ρ∘p", residuals.reconstruction));
    }
    Ok(Decomposition {
        ideal_i,
        subalg_b,
        i_algebra,
        b_algebra,
        projection_p: p,
        involution_rho: rho,
        residuals,
    })
}

/// `τ = ρ∘p` from a homomorphic projection `p` of `A` onto `B` and an
/// involution `ρ` given in the echelon coordinates of `B = p(A)`.
pub fn make_trivolution(a: &Algebra, p: &AlgMap, rho: &AlgMap) -> Result<AlgMap> {
    let eps = a.tol().eps;
    if !p.is_endomorphism_of(a) || p.is_conjugating() {
        return Err(Error::NotAProjection {
            residual: f64::INFINITY,
        });
    }
    let idem = max_abs_diff(p.compose(p)?.matrix(), p.matrix());
    if idem > eps {
        return Err(Error::NotAProjection { residual: idem });
    }
    let mult = p.classify_multiplicativity(a, a)?;
    if !mult.homomorphism {
        return Err(Error::NotAHomomorphism {
            residual: mult.hom_residual,
        });
    }
    let (_, b) = p.kernel_image(a)?;
    let b_alg = a.subalgebra(&b)?;
    let k = b.dim();
    if rho.matrix().shape() != (k, k) {
        return Err(Error::NotAnInvolution {
            reason: format!(
                "expected a {k}×{k} matrix on the range of p, found {:?}",
                rho.matrix().shape()
            ),
        });
    }
    if !rho.is_conjugating() {
        return Err(Error::NotAnInvolution {
            reason: "ρ is not conjugate-linear".into(),
        });
    }
    let rho = rho.rebind(&b_alg, &b_alg)?;
    let square = max_abs_diff(rho.compose(&rho)?.matrix(), &CMatrix::identity(k, k));
    if square > eps {
        return Err(Error::NotAnInvolution {
            reason: format!("ρ² = id fails with residual {square:.3e}"),
        });
    }
    let m = rho.classify_multiplicativity(&b_alg, &b_alg)?;
    if !m.anti_homomorphism {
        return Err(Error::NotAnInvolution {
            reason: format!("ρ is not anti-multiplicative (residual {:.3e})", m.anti_residual),
        });
    }
    let embed = AlgMap::raw(b.basis().clone(), false, b_alg.id(), a.id());
    let onto = AlgMap::raw(b.coordinate_matrix() * p.matrix(), false, a.id(), b_alg.id());
    embed.compose(&rho)?.compose(&onto)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_group_table, function_algebra, group_algebra, matrix_algebra, product};
    use crate::linalg::{max_abs_vec, unit_vector, ONE, ZERO};

    pub(crate) fn half_conj(a: &Algebra) -> AlgMap {
        AlgMap::new(CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]), true, a, a).unwrap()
    }

    pub(crate) fn conj_transpose(m2: &Algebra) -> AlgMap {
        let mut m = CMatrix::zeros(4, 4);
        m[(0, 0)] = ONE;
        m[(2, 1)] = ONE;
        m[(1, 2)] = ONE;
        m[(3, 3)] = ONE;
        AlgMap::new(m, true, m2, m2).unwrap()
    }

    /// `χ_K · conj` on ℂⁿ.
    pub(crate) fn indicator_conj(a: &Algebra, k: &[usize]) -> AlgMap {
        let n = a.dim();
        let m = CMatrix::from_fn(n, n, |r, c| if r == c && k.contains(&r) { ONE } else { ZERO });
        AlgMap::new(m, true, a, a).unwrap()
    }

    #[test]
    fn classify_examples() {
        let m2 = matrix_algebra(2);
        assert_eq!(
            classify_star_map(&m2, &conj_transpose(&m2)).unwrap().kind,
            StarKind::Involution
        );
        let c2 = function_algebra(2);
        let c = classify_star_map(&c2, &half_conj(&c2)).unwrap();
        assert_eq!(c.kind, StarKind::TrivolutionProper);
        assert!(!c.is_injective && c.cubes_to_self);
        let c3 = function_algebra(3);
        assert_eq!(
            classify_star_map(&c3, &indicator_conj(&c3, &[0, 1])).unwrap().kind,
            StarKind::TrivolutionProper
        );
    }

    #[test]
    fn zero_and_linear_maps_are_not_star() {
        let c2 = function_algebra(2);
        let z = classify_star_map(&c2, &AlgMap::zero(&c2, &c2, true)).unwrap();
        assert_eq!(z.kind, StarKind::NotStar);
        assert!(z.cubes_to_self && !z.is_nonzero);
        let id = classify_star_map(&c2, &AlgMap::identity(&c2)).unwrap();
        assert_eq!(id.kind, StarKind::NotStar);
        assert!(!id.is_conjugate_linear);
    }

    #[test]
    fn decomposition_of_half_conjugation() {
        let c2 = function_algebra(2);
        let d = canonical_decomposition(&c2, &half_conj(&c2)).unwrap();
        assert_eq!((d.ideal_i.dim(), d.subalg_b.dim()), (1, 1));
        assert!(d.ideal_i.contains(&unit_vector(2, 1), 1e-12));
        assert!(d.subalg_b.contains(&unit_vector(2, 0), 1e-12));
        assert_eq!(
            d.projection_p.matrix(),
            &CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO])
        );
        assert!(d.involution_rho.is_conjugating());
        assert_eq!(d.involution_rho.matrix(), &CMatrix::from_element(1, 1, ONE));
        assert!(d.residuals.max() < 1e-12);
    }

    #[test]
    fn decomposition_of_involution_and_indicator() {
        let m2 = matrix_algebra(2);
        let d = canonical_decomposition(&m2, &conj_transpose(&m2)).unwrap();
        assert_eq!((d.ideal_i.dim(), d.subalg_b.dim()), (0, 4));
        assert!(max_abs_diff(d.projection_p.matrix(), &CMatrix::identity(4, 4)) < 1e-15);

        let c3 = function_algebra(3);
        let d = canonical_decomposition(&c3, &indicator_conj(&c3, &[0, 1])).unwrap();
        assert_eq!((d.ideal_i.dim(), d.subalg_b.dim()), (1, 2));
        assert!(d.ideal_i.contains(&unit_vector(3, 2), 1e-12));
    }

    #[test]
    fn decomposition_rejects_non_star() {
        let c2 = function_algebra(2);
        assert!(matches!(
            canonical_decomposition(&c2, &AlgMap::identity(&c2)),
            Err(Error::NotATrivolution(_))
        ));
    }

    #[test]
    fn make_trivolution_examples() {
        let c2 = function_algebra(2);
        let p = AlgMap::new(CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]), false, &c2, &c2).unwrap();
        let b = a_range(&c2, &p);
        let rho = AlgMap::conjugation(&b);
        let tau = make_trivolution(&c2, &p, &rho).unwrap();
        assert_eq!(tau.distance(&half_conj(&c2)), 0.0);

        // M₂ × M₂ with p the first projection, ρ the conjugate transpose.
        let m2 = matrix_algebra(2);
        let a = product(&m2, &m2);
        let pm = CMatrix::from_fn(8, 8, |r, c| if r == c && r < 4 { ONE } else { ZERO });
        let p = AlgMap::new(pm, false, &a, &a).unwrap();
        let b = a_range(&a, &p);
        let rho = conj_transpose(&m2).rebind(&b, &b).unwrap();
        let tau = make_trivolution(&a, &p, &rho).unwrap();
        let class = classify_star_map(&a, &tau).unwrap();
        assert_eq!(class.kind, StarKind::TrivolutionProper);
        let (k, _) = tau.kernel_image(&a).unwrap();
        assert_eq!(k.dim(), 4);
        assert!((4..8).all(|i| k.contains(&unit_vector(8, i), 1e-12)));

        let z2 = group_algebra(&cyclic_group_table(2), None).unwrap();
        let tau = make_trivolution(&z2, &AlgMap::identity(&z2), &AlgMap::conjugation(&z2)).unwrap();
        assert_eq!(classify_star_map(&z2, &tau).unwrap().kind, StarKind::Involution);
    }

    fn a_range(a: &Algebra, p: &AlgMap) -> Algebra {
        a.subalgebra(&p.kernel_image(a).unwrap().1).unwrap()
    }

    #[test]
    fn make_trivolution_errors() {
        let c2 = function_algebra(2);
        let not_proj = AlgMap::new(
            CMatrix::from_row_slice(2, 2, &[ONE, ONE, ZERO, ZERO]).scale(2.0),
            false,
            &c2,
            &c2,
        )
        .unwrap();
        assert!(matches!(
            make_trivolution(&c2, &not_proj, &AlgMap::conjugation(&c2)),
            Err(Error::NotAProjection { .. })
        ));
        // (z₁, z₂) ↦ (z₁ + z₂, 0) is idempotent but not multiplicative.
        let not_hom = AlgMap::new(CMatrix::from_row_slice(2, 2, &[ONE, ONE, ZERO, ZERO]), false, &c2, &c2).unwrap();
        assert!(matches!(
            make_trivolution(&c2, &not_hom, &AlgMap::conjugation(&c2)),
            Err(Error::NotAHomomorphism { .. })
        ));
        let b = c2.subalgebra(&Subspace::whole(&c2)).unwrap();
        let swap_lin = AlgMap::new(CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]), false, &b, &b).unwrap();
        assert!(matches!(
            make_trivolution(&c2, &AlgMap::identity(&c2), &swap_lin),
            Err(Error::NotAnInvolution { .. })
        ));
        let twice = AlgMap::new(CMatrix::identity(2, 2).scale(2.0), true, &b, &b).unwrap();
        assert!(matches!(
            make_trivolution(&c2, &AlgMap::identity(&c2), &twice),
            Err(Error::NotAnInvolution { .. })
        ));
    }

    #[test]
    fn rho_squares_to_identity_on_range() {
        let c3 = function_algebra(3);
        // swap of the first two coordinates, conjugated, killed on the third
        let m = CMatrix::from_row_slice(3, 3, &[ZERO, ONE, ZERO, ONE, ZERO, ZERO, ZERO, ZERO, ZERO]);
        let tau = AlgMap::new(m, true, &c3, &c3).unwrap();
        let d = canonical_decomposition(&c3, &tau).unwrap();
        let sq = d.involution_rho.compose(&d.involution_rho).unwrap();
        assert!(max_abs_diff(sq.matrix(), &CMatrix::identity(2, 2)) < 1e-12);
        let x = unit_vector(3, 2);
        assert!(max_abs_vec(&tau.apply_coords(&x)) < 1e-15);
    }
}
