//! Hermitian, normal, projection, unitary and positive elements; hermitian
//! decomposition and hermitian functionals.

use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::{
    complexify, max_abs_diff_vec, max_abs_vec, null_space, realify_conjugating, realify_linear, solve, CMatrix,
    CVector, C64, I,
};
use crate::starmap::{AdjointMode, AlgMap, DualVector};

#[derive(Debug, Clone, PartialEq)]
pub struct ElementFlags {
    pub hermitian: bool,
    pub normal: bool,
    pub projection: bool,
    pub unitary: bool,
    pub positive_witness: Option<Element>,
}

fn check_pair(a: &Algebra, tau: &AlgMap, x: &Element) -> Result<()> {
    if !tau.is_endomorphism_of(a) || x.algebra() != a.id() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

pub fn element_classes(a: &Algebra, tau: &AlgMap, x: &Element) -> Result<ElementFlags> {
    check_pair(a, tau, x)?;
    let eps = a.tol().eps;
    let x = x.coords();
    let tx = tau.apply_coords(x);
    let ttx = tau.apply_coords(&tx);
    let close = |u: &CVector, v: &CVector| max_abs_diff_vec(u, v) <= eps;
    let hermitian = close(&tx, x);
    let x_tx = a.mul_coords(x, &tx);
    let tx_x = a.mul_coords(&tx, x);
    let normal = close(&x_tx, &tx_x) && close(&a.mul_coords(x, &ttx), &a.mul_coords(&ttx, x));
    let projection = hermitian && close(&a.mul_coords(x, x), x);
    let unitary = a.identity_coords().is_some_and(|e| close(&x_tx, e) && close(&tx_x, e));
    Ok(ElementFlags {
        hermitian,
        normal,
        projection,
        unitary,
        positive_witness: None,
    })
}

/// `x` hermitian and `x = τ(y)·y`.
pub fn check_positive(a: &Algebra, tau: &AlgMap, x: &Element, y: &Element) -> Result<bool> {
    check_pair(a, tau, x)?;
    check_pair(a, tau, y)?;
    let ty = tau.apply_coords(y.coords());
    Ok(positive_with(a, tau, x, &a.mul_coords(&ty, y.coords())))
}

/// `x` hermitian and `x = z·τ(z)`.
pub fn check_positive_z(a: &Algebra, tau: &AlgMap, x: &Element, z: &Element) -> Result<bool> {
    check_pair(a, tau, x)?;
    check_pair(a, tau, z)?;
    let tz = tau.apply_coords(z.coords());
    Ok(positive_with(a, tau, x, &a.mul_coords(z.coords(), &tz)))
}

fn positive_with(a: &Algebra, tau: &AlgMap, x: &Element, square: &CVector) -> bool {
    let eps = a.tol().eps;
    max_abs_diff_vec(&tau.apply_coords(x.coords()), x.coords()) <= eps && max_abs_diff_vec(x.coords(), square) <= eps
}

/// Element classes with `positive_witness` set to `y` when `x = τ(y)y`.
pub fn positive_classes(a: &Algebra, tau: &AlgMap, x: &Element, y: &Element) -> Result<ElementFlags> {
    let mut flags = element_classes(a, tau, x)?;
    if check_positive(a, tau, x, y)? {
        flags.positive_witness = Some(y.clone());
    }
    Ok(flags)
}

/// Basis of the real space `A_h = {h : τ(h) = h}` (real span of the returned
/// vectors).
pub fn hermitian_basis(a: &Algebra, tau: &AlgMap) -> Result<Vec<CVector>> {
    if !tau.is_endomorphism_of(a) || !tau.is_conjugating() {
        return Err(Error::AlgebraMismatch);
    }
    let n = a.dim();
    let r = realify_conjugating(tau.matrix()) - CMatrix::identity(2 * n, 2 * n);
    let null = null_space(&r, a.tol().rank);
    Ok((0..null.ncols())
        .map(|c| complexify(&null.column(c).into_owned()))
        .collect())
}

/// `x = x₁ + i x₂` with `x₁, x₂` hermitian; possible exactly when `x ∈ τ(A)`.
/// Uniqueness is certified by solving the real linear system for all
/// hermitian pairs summing to `x`.
pub fn hermitian_decomposition(a: &Algebra, tau: &AlgMap, x: &Element) -> Result<(Element, Element)> {
    check_pair(a, tau, x)?;
    let tol = a.tol();
    let n = a.dim();
    let (_, range) = tau.kernel_image(a)?;
    let off = max_abs_vec(&range.residual(x.coords()));
    if off > tol.eps {
        return Err(Error::NotInRange { residual: off });
    }
    let xc = x.coords();
    let rx = tau.apply_coords(xc);
    let half = C64::new(0.5, 0.0);
    let x1 = (xc + &rx) * half;
    let x2 = (xc - &rx) * (half / I);

    // Unknowns (Re h₁, Im h₁, Re h₂, Im h₂).
    let d = 2 * n;
    let fix = realify_conjugating(tau.matrix()) - CMatrix::identity(d, d);
    let mul_i = realify_linear(&CMatrix::identity(n, n).map(|z| z * I));
    let mut sys = CMatrix::zeros(3 * d, 2 * d);
    sys.view_mut((0, 0), (d, d)).copy_from(&fix);
    sys.view_mut((d, d), (d, d)).copy_from(&fix);
    sys.view_mut((2 * d, 0), (d, d)).copy_from(&CMatrix::identity(d, d));
    sys.view_mut((2 * d, d), (d, d)).copy_from(&mul_i);
    let mut rhs = CVector::zeros(3 * d);
    for k in 0..n {
        rhs[2 * d + k] = C64::new(xc[k].re, 0.0);
        rhs[2 * d + n + k] = C64::new(xc[k].im, 0.0);
    }
    let sol = solve(&sys, &rhs, tol.rank).ok_or_else(|| Error::certification("a hermitian pair sums to x", off))?;
    if sol.homogeneous.ncols() != 0 {
        return Err(Error::certification(
            "hermitian decomposition is unique",
            sol.homogeneous.ncols() as f64,
        ));
    }
    let h1 = complexify(&sol.particular.rows(0, d).into_owned());
    let h2 = complexify(&sol.particular.rows(d, d).into_owned());
    let gap = max_abs_diff_vec(&h1, &x1).max(max_abs_diff_vec(&h2, &x2));
    if gap > tol.eps.max(1e3 * f64::EPSILON * max_abs_vec(xc)) {
        return Err(Error::certification("hermitian decomposition is unique", gap));
    }
    Ok((a.element_from(x1), a.element_from(x2)))
}

/// `f^τ`, defined by `⟨f^τ, a⟩ = conj⟨f, τ(a)⟩`.
pub fn f_tau(tau: &AlgMap, f: &DualVector) -> Result<DualVector> {
    tau.adjoint(AdjointMode::ConjugateLinear)?.apply_dual(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HermitianFunctionalReport {
    pub hermitian: bool,
    /// `‖f^τ − f‖∞`.
    pub adjoint_residual: f64,
    /// Largest imaginary part of `f` on a basis of `A_h`.
    pub imaginary_on_hermitian: f64,
    /// Largest value of `|f|` on a basis of `ker τ`.
    pub on_kernel: f64,
}

/// Decides `f^τ = f` and cross-checks it against "real on `A_h`, zero on
/// `ker τ`". Disagreement is reported as a certification failure.
pub fn hermitian_functional_check(a: &Algebra, tau: &AlgMap, f: &DualVector) -> Result<HermitianFunctionalReport> {
    if f.algebra() != a.id() || !tau.is_endomorphism_of(a) {
        return Err(Error::AlgebraMismatch);
    }
    let eps = a.tol().eps;
    let ft = f_tau(tau, f)?;
    let adjoint_residual = max_abs_diff_vec(ft.coords(), f.coords());
    let imaginary_on_hermitian = hermitian_basis(a, tau)?
        .iter()
        .map(|h| f.pair_coords(h).im.abs())
        .fold(0.0, f64::max);
    let (kernel, _) = tau.kernel_image(a)?;
    let on_kernel = (0..kernel.dim())
        .map(|c| f.pair_coords(&kernel.basis().column(c).into_owned()).norm())
        .fold(0.0, f64::max);
    let by_adjoint = adjoint_residual <= eps;
    let by_criterion = imaginary_on_hermitian <= eps && on_kernel <= eps;
    if by_adjoint != by_criterion {
        return Err(Error::certification(
            "f^τ = f agrees with: real on A_h and zero on ker τ",
            adjoint_residual.max(imaginary_on_hermitian).max(on_kernel),
        ));
    }
    Ok(HermitianFunctionalReport {
        hermitian: by_adjoint,
        adjoint_residual,
        imaginary_on_hermitian,
        on_kernel,
    })
}
