//! Factorization through an involutive algebra, block structure of
//! intertwining homomorphisms, and trivolutions induced by right identities.

use serde::Serialize;

use super::{canonical_decomposition, classify_star_map, Decomposition};
use crate::algebra::{product, Algebra, Element, Subspace};
use crate::error::{Error, Result};
use crate::linalg::{max_abs, max_abs_diff, max_abs_diff_vec, unit_vector, CMatrix};
use crate::starmap::AlgMap;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorResiduals {
    pub sigma_involutive: f64,
    pub sigma_anti: f64,
    pub lambda_hom: f64,
    pub mu_hom: f64,
    pub reconstruction: f64,
}

impl FactorResiduals {
    pub fn max(&self) -> f64 {
        [
            self.sigma_involutive,
            self.sigma_anti,
            self.lambda_hom,
            self.mu_hom,
            self.reconstruction,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// `τ = μ∘σ∘λ` with `σ` an involution on `C = 𝒜 × 𝒜`, `𝒜 = I × B`.
///
/// Coordinates on `C` are `(y, z, y′, z′)` with `y, y′ ∈ I`, `z, z′ ∈ B` in
/// echelon coordinates.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub c_algebra: Algebra,
    pub lambda: AlgMap,
    pub sigma: AlgMap,
    pub mu: AlgMap,
    pub residuals: FactorResiduals,
}

/// `σ((y,z),(y′,z′)) = ((J y′, ρ z), (J y, ρ z′))`; `λ(x) = ((0, p x), 0)`;
/// `μ((y,z),(y′,z′)) = z`. `J` is an involution on the kernel ideal, given
/// in its echelon coordinates.
pub fn factor_through_involution(a: &Algebra, tau: &AlgMap, j: &AlgMap) -> Result<Factorization> {
    let eps = a.tol().eps;
    let d = canonical_decomposition(a, tau)?;
    let (ki, kb) = (d.ideal_i.dim(), d.subalg_b.dim());
    if ki == 0 {
        return Err(Error::KernelTrivial);
    }
    if j.matrix().shape() != (ki, ki) {
        return Err(Error::JNotInvolution {
            reason: format!("expected a {ki}×{ki} matrix, found {:?}", j.matrix().shape()),
        });
    }
    if !j.is_conjugating() {
        return Err(Error::JNotInvolution {
            reason: "J is not conjugate-linear".into(),
        });
    }
    let j = j.rebind(&d.i_algebra, &d.i_algebra)?;
    let sq = max_abs_diff(j.compose(&j)?.matrix(), &CMatrix::identity(ki, ki));
    if sq > eps {
        return Err(Error::JNotInvolution {
            reason: format!("J² = id fails with residual {sq:.3e}"),
        });
    }
    let m = j.classify_multiplicativity(&d.i_algebra, &d.i_algebra)?;
    if !m.anti_homomorphism {
        return Err(Error::JNotInvolution {
            reason: format!("J is not anti-multiplicative (residual {:.3e})", m.anti_residual),
        });
    }

    let script_a = product(&d.i_algebra, &d.b_algebra);
    let c = product(&script_a, &script_a);
    let n = a.dim();
    let h = ki + kb;

    let mut lam = CMatrix::zeros(2 * h, n);
    lam.view_mut((ki, 0), (kb, n)).copy_from(d.b_projection(a).matrix());
    let lambda = AlgMap::new(lam, false, a, &c)?;

    let mut mu_m = CMatrix::zeros(n, 2 * h);
    mu_m.view_mut((0, ki), (n, kb)).copy_from(d.subalg_b.basis());
    let mu = AlgMap::new(mu_m, false, &c, a)?;

    let rho = d.involution_rho.matrix();
    let jm = j.matrix();
    let mut s = CMatrix::zeros(2 * h, 2 * h);
    s.view_mut((0, h), (ki, ki)).copy_from(jm);
    s.view_mut((ki, ki), (kb, kb)).copy_from(rho);
    s.view_mut((h, 0), (ki, ki)).copy_from(jm);
    s.view_mut((h + ki, h + ki), (kb, kb)).copy_from(rho);
    let sigma = AlgMap::new(s, true, &c, &c)?;

    let residuals = FactorResiduals {
        sigma_involutive: max_abs_diff(sigma.compose(&sigma)?.matrix(), &CMatrix::identity(2 * h, 2 * h)),
        sigma_anti: sigma.classify_multiplicativity(&c, &c)?.anti_residual,
        lambda_hom: lambda.classify_multiplicativity(a, &c)?.hom_residual,
        mu_hom: mu.classify_multiplicativity(&c, a)?.hom_residual,
        reconstruction: max_abs_diff(mu.compose(&sigma)?.compose(&lambda)?.matrix(), tau.matrix()),
    };
    for (law, r) in [
        ("σ² = id", residuals.sigma_involutive),
        ("σ is anti-multiplicative", residuals.sigma_anti),
        ("λ is multiplicative", residuals.lambda_hom),
        ("μ is multiplicative", residuals.mu_hom),
        ("μ∘σ∘λ = τ", residuals.reconstruction),
    ] {
        if r > eps {
            return Err(Error::certification(law, r));
        }
    }
    Ok(Factorization {
        c_algebra: c,
        lambda,
        sigma,
        mu,
        residuals,
    })
}

/// Blocks of an intertwining homomorphism with respect to `A₁ = I₁ ⊕ B₁`
/// and `A₂ = I₂ ⊕ B₂`.
#[derive(Debug, Clone)]
pub struct HomBlocks {
    pub pi11: AlgMap,
    pub pi22: AlgMap,
    pub pi12: CMatrix,
    pub pi21: CMatrix,
    pub intertwine_residual: f64,
    pub offdiag_residual: f64,
    pub rho_residual: f64,
}

fn split_basis(d: &Decomposition) -> CMatrix {
    let n = d.ideal_i.ambient_dim();
    let ki = d.ideal_i.dim();
    let mut t = CMatrix::zeros(n, n);
    t.view_mut((0, 0), (n, ki)).copy_from(d.ideal_i.basis());
    t.view_mut((0, ki), (n, n - ki)).copy_from(d.subalg_b.basis());
    t
}

/// Intertwining is tested first so that a non-intertwining map is always
/// reported as such, whatever its multiplicativity.
pub fn check_trivolutive_hom(
    a1: &Algebra,
    tau1: &AlgMap,
    a2: &Algebra,
    tau2: &AlgMap,
    pi: &AlgMap,
) -> Result<HomBlocks> {
    let eps = a1.tol().eps;
    if pi.source() != a1.id() || pi.target() != a2.id() || pi.is_conjugating() {
        return Err(Error::AlgebraMismatch);
    }
    let intertwine_residual = max_abs_diff(pi.compose(tau1)?.matrix(), tau2.compose(pi)?.matrix());
    if intertwine_residual > eps {
        return Err(Error::NotIntertwining {
            residual: intertwine_residual,
        });
    }
    let mult = pi.classify_multiplicativity(a1, a2)?;
    if !mult.homomorphism {
        return Err(Error::NotAHomomorphism {
            residual: mult.hom_residual,
        });
    }
    let d1 = canonical_decomposition(a1, tau1)?;
    let d2 = canonical_decomposition(a2, tau2)?;
    let t1 = split_basis(&d1);
    let t2_inv = split_basis(&d2)
        .try_inverse()
        .ok_or_else(|| Error::certification("A₂ = I₂ ⊕ B₂ is a direct sum", f64::NAN))?;
    let blocks = t2_inv * pi.matrix() * t1;
    let (i1, b1) = (d1.ideal_i.dim(), d1.subalg_b.dim());
    let (i2, b2) = (d2.ideal_i.dim(), d2.subalg_b.dim());
    let pi11 = blocks.view((0, 0), (i2, i1)).into_owned();
    let pi12 = blocks.view((0, i1), (i2, b1)).into_owned();
    let pi21 = blocks.view((i2, 0), (b2, i1)).into_owned();
    let pi22 = blocks.view((i2, i1), (b2, b1)).into_owned();
    let offdiag_residual = max_abs(&pi12).max(max_abs(&pi21));
    if offdiag_residual > eps {
        return Err(Error::certification(
            "off-diagonal blocks π₁₂, π₂₁ vanish",
            offdiag_residual,
        ));
    }
    let pi11 = AlgMap::new(pi11, false, &d1.i_algebra, &d2.i_algebra)?;
    let pi22 = AlgMap::new(pi22, false, &d1.b_algebra, &d2.b_algebra)?;
    for (name, map, s, t) in [
        ("π₁₁ is multiplicative", &pi11, &d1.i_algebra, &d2.i_algebra),
        ("π₂₂ is multiplicative", &pi22, &d1.b_algebra, &d2.b_algebra),
    ] {
        let m = map.classify_multiplicativity(s, t)?;
        if !m.homomorphism {
            return Err(Error::certification(name, m.hom_residual));
        }
    }
    let rho_residual = max_abs_diff(
        pi22.compose(&d1.involution_rho)?.matrix(),
        d2.involution_rho.compose(&pi22)?.matrix(),
    );
    if rho_residual > eps {
        return Err(Error::certification("π₂₂∘ρ₁ = ρ₂∘π₂₂", rho_residual));
    }
    Ok(HomBlocks {
        pi11,
        pi22,
        pi12,
        pi21,
        intertwine_residual,
        offdiag_residual,
        rho_residual,
    })
}

/// `τ₁ = τ∘ℓ_e` on `C`, for a right identity `e` of `C` and a trivolution
/// `τ` on `eC`, given in the echelon coordinates of `a_sub`.
pub fn right_identity_trivolution(c: &Algebra, e: &Element, a_sub: &Subspace, tau_on_a: &AlgMap) -> Result<AlgMap> {
    let tol = c.tol();
    if e.algebra() != c.id() || a_sub.algebra() != c.id() {
        return Err(Error::AlgebraMismatch);
    }
    let n = c.dim();
    let residual = (0..n)
        .map(|i| {
            let b = unit_vector(n, i);
            max_abs_diff_vec(&c.mul_coords(&b, e.coords()), &b)
        })
        .fold(0.0, f64::max);
    if residual > tol.eps {
        return Err(Error::NotRightIdentity { residual });
    }
    let l_e = c.left_regular(e.coords());
    let ec = Subspace::from_columns(c, &l_e);
    if !ec.same_as(a_sub, tol.eps) {
        return Err(Error::SubalgebraMismatch);
    }
    let a_alg = c.subalgebra(a_sub)?;
    let k = a_sub.dim();
    if tau_on_a.matrix().shape() != (k, k) {
        return Err(Error::ShapeMismatch {
            expected: (k, k),
            found: tau_on_a.matrix().shape(),
        });
    }
    let tau_a = tau_on_a.rebind(&a_alg, &a_alg)?;
    let class = classify_star_map(&a_alg, &tau_a)?;
    if !class.is_star() {
        return Err(Error::NotATrivolution(class.failures().join("; ")));
    }
    let embed = AlgMap::raw(a_sub.basis().clone(), false, a_alg.id(), c.id());
    let onto = AlgMap::raw(a_sub.coordinate_matrix() * &l_e, false, c.id(), a_alg.id());
    let tau1 = embed.compose(&tau_a)?.compose(&onto)?;

    let class1 = classify_star_map(c, &tau1)?;
    if !class1.is_star() {
        return Err(Error::NotATrivolution(format!(
            "τ∘ℓ_e fails: {}",
            class1.failures().join("; ")
        )));
    }
    let (_, img1) = tau1.kernel_image(c)?;
    let (_, img_a) = tau_a.kernel_image(&a_alg)?;
    let img_a_ambient = Subspace::from_columns(c, &(a_sub.basis() * img_a.basis()));
    if !img1.same_as(&img_a_ambient, tol.eps) {
        return Err(Error::certification("τ∘ℓ_e has the same range as τ", f64::NAN));
    }
    Ok(tau1)
}
