//! Module actions of an algebra on its dual, introverted subspaces, the two
//! Arens products on `X*`, and extension of involutions to `X*`.
//!
//! A subspace `X ⊆ A*` is stored as a [`Subspace`] of dual coordinate
//! vectors. `X*` is coordinatized by values on the echelon basis `x_1..x_k`
//! of `X`: `ψ ↦ (ψ(x_1), …, ψ(x_k))`. The canonical map `A → X*` is then
//! `a ↦ Xᵀa`, and every `ψ` lifts to an element of `A ≅ A**` supported on
//! the pivot coordinates of `X`.

mod characters;
mod tim;

pub use characters::{find_characters, verify_character, Character, CharacterSet};
pub use tim::{tim_obstruction_check, tim_set, TimReport, TimSet};

use serde::Serialize;

use crate::algebra::{Algebra, Element, Subspace};
use crate::error::{Error, Result};
use crate::linalg::{max_abs_vec, unit_vector, CMatrix, CVector, ZERO};
use crate::starmap::{AdjointMode, AlgMap, DualVector};

/// `Right` is `λ·a` (`⟨λ·a, b⟩ = ⟨λ, ab⟩`); `Left` is `a·λ`
/// (`⟨a·λ, b⟩ = ⟨λ, ba⟩`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

pub fn dual_action(a: &Algebra, lambda: &DualVector, x: &Element, side: Side) -> Result<DualVector> {
    if lambda.algebra() != a.id() || x.algebra() != a.id() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(DualVector::raw(act(a, lambda.coords(), x.coords(), side), a.id()))
}

pub(crate) fn act(a: &Algebra, lambda: &CVector, x: &CVector, side: Side) -> CVector {
    match side {
        Side::Right => a.left_regular(x).transpose() * lambda,
        Side::Left => a.right_regular(x).transpose() * lambda,
    }
}

/// Basis-vector form of [`act`].
fn act_basis(a: &Algebra, lambda: &CVector, i: usize, side: Side) -> CVector {
    match side {
        Side::Right => a.left_basis(i).transpose() * lambda,
        Side::Left => a.right_basis(i).transpose() * lambda,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntrovertedSpace {
    pub x: Subspace,
    pub submodule: bool,
    pub left_introverted: bool,
    pub right_introverted: bool,
    pub faithful: bool,
    pub diagnostic: Option<String>,
}

impl IntrovertedSpace {
    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    /// `a ↦ Xᵀa`, the canonical map `A → X*`.
    pub fn canonical_matrix(&self) -> CMatrix {
        self.x.basis().transpose()
    }

    /// Lift of `ψ ∈ X*` to `A ≅ A**`, supported on the pivots of `X`.
    pub fn lift(&self, psi: &CVector) -> CVector {
        let mut out = CVector::zeros(self.x.ambient_dim());
        for (j, &p) in self.x.pivots().iter().enumerate() {
            out[p] = psi[j];
        }
        out
    }
}

/// Whole dual `A*`.
pub fn whole_dual(a: &Algebra) -> Result<IntrovertedSpace> {
    check_introverted(a, &CMatrix::identity(a.dim(), a.dim()))
}

/// `Φ·λ` (`⟨Φ·λ, a⟩ = ⟨Φ, λ·a⟩`) for `Φ ∈ A**`, given as a vector of `A`.
fn phi_dot_lambda(a: &Algebra, phi: &CVector, lambda: &CVector) -> CVector {
    let n = a.dim();
    CVector::from_iterator(
        n,
        (0..n).map(|m| {
            let la = act_basis(a, lambda, m, Side::Right);
            phi.iter().zip(la.iter()).map(|(p, l)| p * l).sum()
        }),
    )
}

/// `λ·Φ` (`⟨λ·Φ, a⟩ = ⟨Φ, a·λ⟩`).
fn lambda_dot_phi(a: &Algebra, phi: &CVector, lambda: &CVector) -> CVector {
    let n = a.dim();
    CVector::from_iterator(
        n,
        (0..n).map(|m| {
            let al = act_basis(a, lambda, m, Side::Left);
            phi.iter().zip(al.iter()).map(|(p, l)| p * l).sum()
        }),
    )
}

/// Submodule, introversion and faithfulness checks. `x_basis` holds dual
/// coordinate vectors as columns.
pub fn check_introverted(a: &Algebra, x_basis: &CMatrix) -> Result<IntrovertedSpace> {
    let n = a.dim();
    if x_basis.nrows() != n {
        return Err(Error::ShapeMismatch {
            expected: (n, x_basis.ncols()),
            found: x_basis.shape(),
        });
    }
    let eps = a.tol().eps;
    let x = Subspace::from_columns(a, x_basis);
    let k = x.dim();
    let col = |j: usize| x.basis().column(j).into_owned();
    let outside = |v: &CVector| max_abs_vec(&x.residual(v));

    let mut worst_module: f64 = 0.0;
    for j in 0..k {
        for i in 0..n {
            for side in [Side::Left, Side::Right] {
                worst_module = worst_module.max(outside(&act_basis(a, &col(j), i, side)));
            }
        }
    }
    let submodule = worst_module <= eps;
    let faithful = k == n;
    if !submodule {
        return Ok(IntrovertedSpace {
            x,
            submodule,
            left_introverted: false,
            right_introverted: false,
            faithful,
            diagnostic: Some(format!(
                "X is not an A-submodule: a module product leaves X with residual {worst_module:.3e}"
            )),
        });
    }
    let mut worst_left: f64 = 0.0;
    let mut worst_right: f64 = 0.0;
    for i in 0..n {
        let phi = unit_vector(n, i);
        for j in 0..k {
            worst_left = worst_left.max(outside(&phi_dot_lambda(a, &phi, &col(j))));
            worst_right = worst_right.max(outside(&lambda_dot_phi(a, &phi, &col(j))));
        }
    }
    Ok(IntrovertedSpace {
        x,
        submodule,
        left_introverted: worst_left <= eps,
        right_introverted: worst_right <= eps,
        faithful,
        diagnostic: None,
    })
}

/// Structure tensors of `(X*, □)` and `(X*, ◇)` in the dual basis of `X`'s
/// echelon basis, indexed `[p][q][r]` like algebra structure constants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArensStructure {
    pub dim: usize,
    #[serde(skip)]
    pub box_tensor: Vec<crate::linalg::C64>,
    #[serde(skip)]
    pub diamond_tensor: Vec<crate::linalg::C64>,
    pub regular: bool,
    pub residual: f64,
}

impl ArensStructure {
    /// `(X*, □)` as an algebra.
    pub fn box_algebra(&self, a: &Algebra) -> Result<Algebra> {
        let labels = (0..self.dim).map(|j| format!("x{}*", j + 1)).collect();
        Algebra::builder(self.dim, self.box_tensor.clone())
            .labels(labels)
            .tolerance(a.tol())
            .allow_empty()
            .build()
    }
}

/// `⟨Φ□Ψ, λ⟩ = ⟨Φ, Ψ·λ⟩`, `⟨Ψ·λ, a⟩ = ⟨Ψ, λ·a⟩`, and
/// `⟨Φ◇Ψ, λ⟩ = ⟨Ψ, λ·Φ⟩`, `⟨λ·Φ, a⟩ = ⟨Φ, a·λ⟩`, evaluated literally on dual
/// bases.
pub fn arens_products(a: &Algebra, x: &IntrovertedSpace) -> Result<ArensStructure> {
    if !x.submodule || !x.left_introverted || !x.right_introverted {
        return Err(Error::NotIntroverted(
            x.diagnostic
                .clone()
                .unwrap_or_else(|| "introversion fails on at least one side".into()),
        ));
    }
    let n = a.dim();
    let k = x.dim();
    let xs = &x.x;
    let xcol = |r: usize| xs.basis().column(r).into_owned();
    // X-coordinates of λ·b_m and b_m·λ for λ = x_r.
    let right: Vec<Vec<CVector>> = (0..k)
        .map(|r| {
            (0..n)
                .map(|m| xs.coords(&act_basis(a, &xcol(r), m, Side::Right)))
                .collect()
        })
        .collect();
    let left: Vec<Vec<CVector>> = (0..k)
        .map(|r| {
            (0..n)
                .map(|m| xs.coords(&act_basis(a, &xcol(r), m, Side::Left)))
                .collect()
        })
        .collect();

    let mut box_tensor = vec![ZERO; k * k * k];
    let mut diamond_tensor = vec![ZERO; k * k * k];
    for q in 0..k {
        for r in 0..k {
            // δ_q·x_r as a functional on A: b_m ↦ ⟨δ_q, x_r·b_m⟩
            let psi_lambda = CVector::from_iterator(n, (0..n).map(|m| right[r][m][q]));
            let psi_lambda_x = xs.coords(&psi_lambda);
            // x_r·δ_q: b_m ↦ ⟨δ_q, b_m·x_r⟩
            let lambda_phi = CVector::from_iterator(n, (0..n).map(|m| left[r][m][q]));
            let lambda_phi_x = xs.coords(&lambda_phi);
            for p in 0..k {
                box_tensor[(p * k + q) * k + r] = psi_lambda_x[p];
                // ⟨δ_q ◇ δ_p, x_r⟩ = ⟨δ_p, x_r·δ_q⟩
                diamond_tensor[(q * k + p) * k + r] = lambda_phi_x[p];
            }
        }
    }
    let residual = box_tensor
        .iter()
        .zip(&diamond_tensor)
        .map(|(u, v)| (u - v).norm())
        .fold(0.0, f64::max);
    Ok(ArensStructure {
        dim: k,
        box_tensor,
        diamond_tensor,
        regular: residual <= a.tol().eps,
        residual,
    })
}

#[derive(Debug, Clone)]
pub struct ExtendedInvolution {
    /// `(X*, □)`.
    pub x_star: Algebra,
    /// `Θ = (θ*|_X)*` on `X*`.
    pub theta: AlgMap,
    pub involutive_residual: f64,
    pub anti_residual: f64,
    /// `‖Θ∘ι − ι∘θ‖` for the canonical `ι: A → X*`; present when `X` is
    /// faithful.
    pub extends_residual: Option<f64>,
}

/// `Θ = (θ*|_X)*`, an involution on `(X*, □)` extending `θ`.
pub fn extend_involution(a: &Algebra, theta: &AlgMap, x: &IntrovertedSpace) -> Result<ExtendedInvolution> {
    if !theta.is_endomorphism_of(a) || !theta.is_conjugating() {
        return Err(Error::AlgebraMismatch);
    }
    let eps = a.tol().eps;
    let k = x.dim();
    let theta_star = theta.adjoint(AdjointMode::ConjugateLinear)?;
    let mut t = CMatrix::zeros(k, k);
    let mut outside: f64 = 0.0;
    for j in 0..k {
        let img = theta_star.apply_coords(&x.x.basis().column(j).into_owned());
        outside = outside.max(max_abs_vec(&x.x.residual(&img)));
        t.set_column(j, &x.x.coords(&img));
    }
    if outside > eps {
        return Err(Error::NotInvariant { residual: outside });
    }
    let arens = arens_products(a, x)?;
    if !arens.regular {
        return Err(Error::NotArensRegular {
            residual: arens.residual,
        });
    }
    let x_star = arens.box_algebra(a)?;
    let restricted = AlgMap::raw(t, true, x_star.id(), x_star.id());
    let big_theta = restricted.adjoint(AdjointMode::ConjugateLinear)?;
    let involutive_residual =
        crate::linalg::max_abs_diff(big_theta.compose(&big_theta)?.matrix(), &CMatrix::identity(k, k));
    let anti_residual = big_theta.classify_multiplicativity(&x_star, &x_star)?.anti_residual;
    let extends_residual = x.faithful.then(|| {
        let iota = x.canonical_matrix();
        // Θ(ιa) = Θ_m conj(ι a); ι(θ a) = ι M conj(a)
        let lhs = big_theta.matrix() * crate::linalg::conj_matrix(&iota);
        let rhs = &iota * theta.matrix();
        crate::linalg::max_abs_diff(&lhs, &rhs)
    });
    for (law, r) in [
        ("Θ² = id on X*", involutive_residual),
        ("Θ is anti-multiplicative for □", anti_residual),
        ("Θ extends θ", extends_residual.unwrap_or(0.0)),
    ] {
        if r > eps {
            return Err(Error::certification(law, r));
        }
    }
    Ok(ExtendedInvolution {
        x_star,
        theta: big_theta,
        involutive_residual,
        anti_residual,
        extends_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_group_table, function_algebra, group_algebra, matrix_algebra};
    use crate::linalg::{max_abs_diff, max_abs_diff_vec, C64, ONE};

    fn structure_distance(u: &[C64], v: &[C64]) -> f64 {
        u.iter().zip(v).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn dual_action_examples() {
        let z2 = group_algebra(&cyclic_group_table(2), None).unwrap();
        let e_dual = DualVector::new(&z2, unit_vector(2, 0)).unwrap();
        let r = dual_action(&z2, &e_dual, &z2.basis_element(1), Side::Right).unwrap();
        assert_eq!(r.coords(), &unit_vector(2, 1));

        let f = DualVector::new(&z2, CVector::from_vec(vec![C64::new(0.3, 1.0), ONE])).unwrap();
        let r = dual_action(&z2, &f, &z2.identity().unwrap(), Side::Right).unwrap();
        assert_eq!(r.coords(), f.coords());

        let c2 = function_algebra(2);
        let l = DualVector::new(&c2, unit_vector(2, 0)).unwrap();
        let r = dual_action(&c2, &l, &c2.basis_element(1), Side::Right).unwrap();
        assert!(max_abs_vec(r.coords()) == 0.0);
    }

    #[test]
    fn module_law_on_basis_triples() {
        let m2 = matrix_algebra(2);
        let lam = CVector::from_vec(vec![C64::new(1.0, 2.0), ONE, C64::new(0.0, -1.0), C64::new(3.0, 0.5)]);
        for a in 0..4 {
            for b in 0..4 {
                let lhs = act_basis(&m2, &act_basis(&m2, &lam, a, Side::Right), b, Side::Right);
                let ab = m2.mul_coords(&unit_vector(4, a), &unit_vector(4, b));
                let rhs = act(&m2, &lam, &ab, Side::Right);
                assert!(max_abs_diff_vec(&lhs, &rhs) < 1e-14);
            }
        }
    }

    #[test]
    fn introverted_examples() {
        let c2 = function_algebra(2);
        let whole = whole_dual(&c2).unwrap();
        assert!(whole.submodule && whole.left_introverted && whole.right_introverted && whole.faithful);

        let line = check_introverted(&c2, &CMatrix::from_column_slice(2, 1, &[ONE, ZERO])).unwrap();
        assert!(line.submodule && line.left_introverted && line.right_introverted && !line.faithful);

        let z2 = group_algebra(&cyclic_group_table(2), None).unwrap();
        let aug = check_introverted(&z2, &CMatrix::from_column_slice(2, 1, &[ONE, ONE])).unwrap();
        assert!(aug.submodule && aug.left_introverted && !aug.faithful);

        let bad = check_introverted(&c2, &CMatrix::from_column_slice(2, 1, &[ONE, ONE])).unwrap();
        assert!(!bad.submodule && !bad.left_introverted && bad.diagnostic.is_some());
    }

    #[test]
    fn arens_oracle_group_and_matrix() {
        for a in [group_algebra(&cyclic_group_table(2), None).unwrap(), matrix_algebra(2)] {
            let s = arens_products(&a, &whole_dual(&a).unwrap()).unwrap();
            assert!(s.regular);
            assert!(structure_distance(&s.box_tensor, a.structure()) < 1e-14);
            assert!(structure_distance(&s.diamond_tensor, a.structure()) < 1e-14);
        }
    }

    #[test]
    fn arens_on_augmentation_line() {
        let z2 = group_algebra(&cyclic_group_table(2), None).unwrap();
        let aug = check_introverted(&z2, &CMatrix::from_column_slice(2, 1, &[ONE, ONE])).unwrap();
        let s = arens_products(&z2, &aug).unwrap();
        assert_eq!(s.dim, 1);
        assert!((s.box_tensor[0] - ONE).norm() < 1e-15);
        assert!(s.regular);
    }

    #[test]
    fn extend_involution_examples() {
        let z2 = group_algebra(&cyclic_group_table(2), None).unwrap();
        // θ(f)(s) = conj f(s⁻¹) is plain conjugation on ℤ₂
        let theta = AlgMap::conjugation(&z2);
        let ext = extend_involution(&z2, &theta, &whole_dual(&z2).unwrap()).unwrap();
        assert!(max_abs_diff(ext.theta.matrix(), theta.matrix()) < 1e-15);
        assert!(ext.extends_residual.unwrap() < 1e-15);

        let m2 = matrix_algebra(2);
        let mut ct = CMatrix::zeros(4, 4);
        ct[(0, 0)] = ONE;
        ct[(2, 1)] = ONE;
        ct[(1, 2)] = ONE;
        ct[(3, 3)] = ONE;
        let theta = AlgMap::new(ct.clone(), true, &m2, &m2).unwrap();
        let ext = extend_involution(&m2, &theta, &whole_dual(&m2).unwrap()).unwrap();
        assert!(max_abs_diff(ext.theta.matrix(), &ct) < 1e-15);
    }

    #[test]
    fn extend_involution_not_invariant() {
        let c2 = function_algebra(2);
        let swap = AlgMap::new(CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]), true, &c2, &c2).unwrap();
        let line = check_introverted(&c2, &CMatrix::from_column_slice(2, 1, &[ONE, ZERO])).unwrap();
        assert!(matches!(
            extend_involution(&c2, &swap, &line),
            Err(Error::NotInvariant { .. })
        ));
    }
}
