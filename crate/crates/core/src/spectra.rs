//! Spectra through the left regular representation.

use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, max_abs_diff_vec, set_inclusion_distance, solve, sort_complex, C64};
use crate::starmap::AlgMap;
use crate::unitization::{sharp_map, unitize};

/// Matching tolerance for spectral inclusion.
pub const SPECTRAL_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComputedIn {
    Algebra,
    Unitization,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    /// Eigenvalues of `L_x` with multiplicity, sorted.
    pub values: Vec<C64>,
    pub computed_in: ComputedIn,
}

/// For a non-unital `A` the spectrum is taken in `A♯`, where `x` sits as
/// `(0, x)` and `0` always belongs to it.
pub fn spectrum(a: &Algebra, x: &Element) -> Result<Spectrum> {
    if x.algebra() != a.id() {
        return Err(Error::AlgebraMismatch);
    }
    let (values, computed_in) = if a.is_unital() {
        (eigenvalues(&a.left_regular(x.coords())), ComputedIn::Algebra)
    } else {
        let s = unitize(a);
        let mut c = crate::linalg::CVector::zeros(a.dim() + 1);
        c.rows_mut(1, a.dim()).copy_from(x.coords());
        (eigenvalues(&s.left_regular(&c)), ComputedIn::Unitization)
    };
    let mut values = values;
    sort_complex(&mut values);
    Ok(Spectrum { values, computed_in })
}

/// Two-sided inverse, or `None` when `L_x` is singular.
pub fn inverse_element(a: &Algebra, x: &Element) -> Result<Option<Element>> {
    if x.algebra() != a.id() {
        return Err(Error::AlgebraMismatch);
    }
    let e = a.identity_coords().ok_or(Error::NotUnital)?;
    let tol = a.tol();
    let Some(sol) = solve(&a.left_regular(x.coords()), e, tol.rank) else {
        return Ok(None);
    };
    if sol.homogeneous.ncols() > 0 {
        return Ok(None);
    }
    let y = sol.particular;
    let scale = 1.0 + crate::linalg::max_abs_vec(&y);
    let right = max_abs_diff_vec(&a.mul_coords(&y, x.coords()), e);
    if right > tol.eps * scale {
        return Ok(None);
    }
    Ok(Some(a.element_from(y)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InclusionReport {
    pub spec_a: Vec<C64>,
    pub spec_b: Vec<C64>,
    /// Largest distance from a point of `spec_B(τ(x))` to `conj spec_A(x)`.
    pub inclusion_distance: f64,
    pub included: bool,
    pub invertible: bool,
    /// `max(‖τ(x)τ(x⁻¹) − e_B‖, ‖τ(x⁻¹)τ(x) − e_B‖)` when `x` is invertible.
    pub inverse_residual: Option<f64>,
    /// Whether `τ(x)`, when invertible in `A`, is also invertible in `B`.
    pub invertible_in_b_consistent: Option<bool>,
    /// `A` was non-unital and the check ran in `A♯` with the canonical
    /// extension of `τ`.
    pub via_unitization: bool,
}

impl InclusionReport {
    pub fn holds(&self, eps: f64) -> bool {
        self.included
            && self.inverse_residual.is_none_or(|r| r <= eps)
            && self.invertible_in_b_consistent != Some(false)
    }
}

pub fn verify_spectral_inclusion(a: &Algebra, tau: &AlgMap, x: &Element) -> Result<InclusionReport> {
    if x.algebra() != a.id() || !tau.is_endomorphism_of(a) {
        return Err(Error::AlgebraMismatch);
    }
    if a.is_unital() {
        return inclusion_unital(a, tau, x, false);
    }
    let s = unitize(a);
    let t = sharp_map(a, &s, tau, crate::linalg::ONE, &crate::linalg::CVector::zeros(a.dim()))?;
    let mut c = crate::linalg::CVector::zeros(a.dim() + 1);
    c.rows_mut(1, a.dim()).copy_from(x.coords());
    inclusion_unital(&s, &t, &s.element_from(c), true)
}

fn inclusion_unital(a: &Algebra, tau: &AlgMap, x: &Element, via_unitization: bool) -> Result<InclusionReport> {
    let (_, range) = tau.kernel_image(a)?;
    let b = a.subalgebra(&range)?;
    let e_b = b.identity_coords().cloned().ok_or(Error::BNotUnital)?;

    let spec_a = spectrum(a, x)?.values;
    let tx = tau.apply_coords(x.coords());
    let tx_b = b.element_from(range.coords(&tx));
    let spec_b = spectrum(&b, &tx_b)?.values;
    let conj_a: Vec<C64> = spec_a.iter().map(|z| z.conj()).collect();
    let inclusion_distance = set_inclusion_distance(&spec_b, &conj_a);

    let inverse = inverse_element(a, x)?;
    let inverse_residual = inverse.as_ref().map(|y| {
        let ty = range.coords(&tau.apply_coords(y.coords()));
        let l = max_abs_diff_vec(&b.mul_coords(tx_b.coords(), &ty), &e_b);
        let r = max_abs_diff_vec(&b.mul_coords(&ty, tx_b.coords()), &e_b);
        l.max(r)
    });
    let invertible_in_b_consistent = match inverse_element(a, &a.element_from(tx))? {
        Some(_) => Some(inverse_element(&b, &tx_b)?.is_some()),
        None => None,
    };
    Ok(InclusionReport {
        spec_a,
        spec_b,
        inclusion_distance,
        included: inclusion_distance <= SPECTRAL_TOL,
        invertible: inverse.is_some(),
        inverse_residual,
        invertible_in_b_consistent,
        via_unitization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_group_table, function_algebra, group_algebra, matrix_algebra};
    use crate::linalg::{CMatrix, CVector, ONE, ZERO};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(xs: &[C64], ys: &[C64]) -> bool {
        xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| (x - y).norm() < 1e-9)
    }

    #[test]
    fn spectrum_examples() {
        let c2 = function_algebra(2);
        let s = spectrum(&c2, &c2.element(vec![c(2.0, 1.0), c(5.0, 0.0)]).unwrap()).unwrap();
        assert!(close(&s.values, &[c(2.0, 1.0), c(5.0, 0.0)]));
        assert_eq!(s.computed_in, ComputedIn::Algebra);

        let m2 = matrix_algebra(2);
        let s = spectrum(&m2, &m2.basis_element(1)).unwrap();
        assert!(s.values.iter().all(|z| z.norm() < 1e-9) && s.values.len() == 4);

        let z2 = group_algebra(&cyclic_group_table(2), None).unwrap();
        let s = spectrum(&z2, &z2.element(vec![ONE, ONE]).unwrap()).unwrap();
        assert!(close(&s.values, &[ZERO, c(2.0, 0.0)]));
    }

    #[test]
    fn nonunital_uses_unitization() {
        let a = Algebra::builder(1, vec![ZERO]).build().unwrap();
        let s = spectrum(&a, &a.basis_element(0)).unwrap();
        assert_eq!(s.computed_in, ComputedIn::Unitization);
        assert_eq!(s.values.len(), 2);
    }

    #[test]
    fn inverse_examples() {
        let c2 = function_algebra(2);
        let y = inverse_element(&c2, &c2.element(vec![c(2.0, 0.0), c(5.0, 0.0)]).unwrap())
            .unwrap()
            .unwrap();
        assert!(max_abs_diff_vec(y.coords(), &CVector::from_vec(vec![c(0.5, 0.0), c(0.2, 0.0)])) < 1e-12);
        assert!(inverse_element(&c2, &c2.element(vec![ONE, ZERO]).unwrap())
            .unwrap()
            .is_none());
        let z2 = group_algebra(&cyclic_group_table(2), None).unwrap();
        assert!(inverse_element(&z2, &z2.element(vec![ONE, ONE]).unwrap())
            .unwrap()
            .is_none());
        let a = Algebra::builder(1, vec![ZERO]).build().unwrap();
        assert_eq!(inverse_element(&a, &a.basis_element(0)).unwrap_err(), Error::NotUnital);
    }

    #[test]
    fn inclusion_half_conjugation() {
        let c2 = function_algebra(2);
        let tau = AlgMap::new(CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]), true, &c2, &c2).unwrap();
        let x = c2.element(vec![c(2.0, 1.0), c(5.0, 0.0)]).unwrap();
        let r = verify_spectral_inclusion(&c2, &tau, &x).unwrap();
        assert!(close(&r.spec_b, &[c(2.0, -1.0)]));
        assert!(r.included && r.invertible && r.holds(1e-9));

        let e = c2.element(vec![ONE, ONE]).unwrap();
        let r = verify_spectral_inclusion(&c2, &tau, &e).unwrap();
        assert!(close(&r.spec_b, &[ONE]) && r.included);
    }

    #[test]
    fn inclusion_matrix_involution() {
        let m2 = matrix_algebra(2);
        // X ↦ X*: in basis E11, E12, E21, E22 the conjugate transpose swaps E12, E21
        let p = CMatrix::from_fn(4, 4, |r, c| {
            let t = [0, 2, 1, 3];
            if t[c] == r {
                ONE
            } else {
                ZERO
            }
        });
        let tau = AlgMap::new(p, true, &m2, &m2).unwrap();
        let x = m2.element(vec![ONE, ZERO, ZERO, c(2.0, 0.0)]).unwrap();
        let r = verify_spectral_inclusion(&m2, &tau, &x).unwrap();
        assert!(r.included && r.holds(1e-9));
        let mut conj: Vec<C64> = r.spec_a.iter().map(|z| z.conj()).collect();
        sort_complex(&mut conj);
        assert!(close(&r.spec_b, &conj));
    }

    #[test]
    fn range_without_identity() {
        // τ with nilpotent range inside a unital algebra: ℂ ⊕ span{n}, n² = 0,
        // τ(λ + μn) = conj(μ) n is not anti-multiplicative, but B = ℂn has no
        // identity, which is what this check reports.
        let mut s = vec![ZERO; 8];
        s[0] = ONE; // 1·1 = 1
        s[3] = ONE; // 1·n = n
        s[5] = ONE; // n·1 = n
        let a = Algebra::builder(2, s).build().unwrap();
        let tau = AlgMap::new(CMatrix::from_row_slice(2, 2, &[ZERO, ZERO, ZERO, ONE]), true, &a, &a).unwrap();
        let err = verify_spectral_inclusion(&a, &tau, &a.basis_element(0)).unwrap_err();
        assert_eq!(err, Error::BNotUnital);
    }
}
