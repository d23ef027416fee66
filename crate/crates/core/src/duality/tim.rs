//! Topologically invariant means for a character, and the identity chain
//! that forces uniqueness when `X*` carries a compatible involution.

use serde::Serialize;

use super::{act_basis, arens_products, Character, IntrovertedSpace, Side};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{max_abs_diff, max_abs_diff_vec, max_abs_vec, solve, CMatrix, CVector, C64};
use crate::starmap::AlgMap;

/// `{m ∈ X* : ⟨m, φ⟩ = 1, a·m = m·a = φ(a)m}` as particular solution plus
/// homogeneous basis, in `X*` coordinates. `particular` is absent when the
/// set is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct TimSet {
    pub particular: Option<CVector>,
    pub homogeneous: CMatrix,
}

impl TimSet {
    pub fn affine_dim(&self) -> Option<usize> {
        self.particular.as_ref().map(|_| self.homogeneous.ncols())
    }

    /// The particular solution and its translates by each homogeneous basis
    /// vector.
    pub fn members(&self) -> Vec<CVector> {
        match &self.particular {
            None => Vec::new(),
            Some(m) => std::iter::once(m.clone())
                .chain((0..self.homogeneous.ncols()).map(|c| m + self.homogeneous.column(c)))
                .collect(),
        }
    }
}

/// Matrices of `m ↦ b_i·m` and `m ↦ m·b_i` on `X*`, where
/// `⟨a·m, λ⟩ = ⟨m, λ·a⟩` and `⟨m·a, λ⟩ = ⟨m, a·λ⟩`.
fn module_matrices(a: &Algebra, x: &IntrovertedSpace) -> (Vec<CMatrix>, Vec<CMatrix>) {
    let k = x.dim();
    let xs = &x.x;
    let build = |i: usize, side: Side| {
        let mut p = CMatrix::zeros(k, k);
        for r in 0..k {
            let moved = xs.coords(&act_basis(a, &xs.basis().column(r).into_owned(), i, side));
            for j in 0..k {
                p[(r, j)] = moved[j];
            }
        }
        p
    };
    let n = a.dim();
    (
        (0..n).map(|i| build(i, Side::Right)).collect(),
        (0..n).map(|i| build(i, Side::Left)).collect(),
    )
}

fn phi_in_x(a: &Algebra, x: &IntrovertedSpace, phi: &Character) -> Result<CVector> {
    if phi.functional().algebra() != a.id() {
        return Err(Error::AlgebraMismatch);
    }
    let residual = max_abs_vec(&x.x.residual(phi.values()));
    if residual > a.tol().eps {
        return Err(Error::CharacterNotInX { residual });
    }
    Ok(x.x.coords(phi.values()))
}

pub fn tim_set(a: &Algebra, x: &IntrovertedSpace, phi: &Character) -> Result<TimSet> {
    let phi_x = phi_in_x(a, x, phi)?;
    if !x.submodule {
        return Err(Error::NotIntroverted(
            x.diagnostic.clone().unwrap_or_else(|| "X is not a submodule".into()),
        ));
    }
    let k = x.dim();
    let n = a.dim();
    let (act_l, act_r) = module_matrices(a, x);
    let mut sys = CMatrix::zeros(2 * n * k + 1, k);
    let mut rhs = CVector::zeros(2 * n * k + 1);
    let id = CMatrix::identity(k, k);
    for i in 0..n {
        let phi_i = phi.values()[i];
        sys.view_mut((2 * i * k, 0), (k, k))
            .copy_from(&(&act_l[i] - &id * phi_i));
        sys.view_mut(((2 * i + 1) * k, 0), (k, k))
            .copy_from(&(&act_r[i] - &id * phi_i));
    }
    for j in 0..k {
        sys[(2 * n * k, j)] = phi_x[j];
    }
    rhs[2 * n * k] = C64::new(1.0, 0.0);
    Ok(match solve(&sys, &rhs, a.tol().rank) {
        Some(s) => TimSet {
            particular: Some(s.particular),
            homogeneous: s.homogeneous,
        },
        None => TimSet {
            particular: None,
            homogeneous: CMatrix::zeros(k, 0),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimReport {
    pub tims_checked: usize,
    pub affine_dim: Option<usize>,
    pub compat_residual: f64,
    /// `a·m* = m*·a = φ(a)m*`.
    pub module_residual: f64,
    /// `n□m* = ⟨n, φ⟩m*`.
    pub left_absorb_residual: f64,
    /// `m = (m*)* = (m□m*)* = m□m* = ⟨m, φ⟩m* = m*`.
    pub chain_residual: f64,
    pub unique: bool,
}

/// Certifies the identity chain for every TIM and then that there is at
/// most one. `star` is an involution on `(X*, □)` in `X*` coordinates.
pub fn tim_obstruction_check(a: &Algebra, x: &IntrovertedSpace, phi: &Character, star: &AlgMap) -> Result<TimReport> {
    let eps = a.tol().eps;
    let k = x.dim();
    let phi_x = phi_in_x(a, x, phi)?;
    if star.matrix().shape() != (k, k) || !star.is_conjugating() {
        return Err(Error::NotCompatibleInvolution {
            reason: format!("expected a conjugate-linear {k}×{k} map on X*"),
        });
    }
    let x_star = arens_products(a, x)?.box_algebra(a)?;
    let star = star.rebind(&x_star, &x_star)?;
    let sq = max_abs_diff(star.compose(&star)?.matrix(), &CMatrix::identity(k, k));
    let anti = star.classify_multiplicativity(&x_star, &x_star)?.anti_residual;
    if sq > eps || anti > eps {
        return Err(Error::NotCompatibleInvolution {
            reason: format!("not an involution on (X*, □): residuals {sq:.3e}, {anti:.3e}"),
        });
    }
    let pair = |m: &CVector| -> C64 { m.iter().zip(phi_x.iter()).map(|(u, v)| u * v).sum() };
    let compat_residual = (0..k)
        .map(|j| {
            let col = star.matrix().column(j).into_owned();
            (pair(&col) - phi_x[j].conj()).norm()
        })
        .fold(0.0, f64::max);
    if compat_residual > eps {
        return Err(Error::NotCompatibleInvolution {
            reason: format!("⟨φ, a*⟩ = conj⟨φ, a⟩ fails with residual {compat_residual:.3e}"),
        });
    }

    let tims = tim_set(a, x, phi)?;
    let (act_l, act_r) = module_matrices(a, x);
    let box_mul = |u: &CVector, v: &CVector| x_star.mul_coords(u, v);
    let mut module_residual: f64 = 0.0;
    let mut left_absorb_residual: f64 = 0.0;
    let mut chain_residual: f64 = 0.0;
    let members = tims.members();
    for m in &members {
        let ms = star.apply_coords(m);
        for i in 0..a.dim() {
            let phi_i = phi.values()[i];
            module_residual = module_residual
                .max(max_abs_diff_vec(&(&act_l[i] * &ms), &(&ms * phi_i)))
                .max(max_abs_diff_vec(&(&act_r[i] * &ms), &(&ms * phi_i)));
        }
        for j in 0..k {
            let nj = crate::linalg::unit_vector(k, j);
            left_absorb_residual = left_absorb_residual.max(max_abs_diff_vec(&box_mul(&nj, &ms), &(&ms * phi_x[j])));
        }
        let m_ms = box_mul(m, &ms);
        let star_m_ms = star.apply_coords(&m_ms);
        let steps = [
            max_abs_diff_vec(&star.apply_coords(&ms), m),
            max_abs_diff_vec(&star_m_ms, m),
            max_abs_diff_vec(&star_m_ms, &box_mul(&star.apply_coords(&ms), &ms)),
            max_abs_diff_vec(&m_ms, &(&ms * pair(m))),
            max_abs_diff_vec(m, &ms),
        ];
        chain_residual = steps.into_iter().fold(chain_residual, f64::max);
    }
    for (law, r) in [
        ("a·m* = m*·a = φ(a)m*", module_residual),
        ("n□m* = ⟨n, φ⟩m*", left_absorb_residual),
        ("m = (m*)* = (m□m*)* = m□m* = ⟨m, φ⟩m* = m*", chain_residual),
    ] {
        if r > eps {
            return Err(Error::certification(law, r));
        }
    }
    let affine_dim = tims.affine_dim();
    let unique = affine_dim.is_none_or(|d| d == 0);
    if !unique {
        return Err(Error::certification(
            "at most one φ-TIM under a compatible involution",
            affine_dim.unwrap_or(0) as f64,
        ));
    }
    Ok(TimReport {
        tims_checked: members.len(),
        affine_dim,
        compat_residual,
        module_residual,
        left_absorb_residual,
        chain_residual,
        unique,
    })
}
