//! Trivolution extensions to the unitization `A♯ = ℂ × A`.
//!
//! Every extension has the form `τ♯(λ, x) = (conj λ·λ₀, conj λ·x₀ + τ(x))`
//! and is a trivolution exactly when either `λ₀ = 1`, `x₀² = −x₀`,
//! `x₀τ(A) = τ(A)x₀ = 0`, `τ(x₀) = 0` (type I), or `λ₀ = 0` and `x₀` is the
//! identity of `τ(A)` (type II).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, Element, Subspace};
use crate::duality::find_characters;
use crate::error::{Error, Result};
use crate::linalg::{
    conj_matrix, lstsq, max_abs_diff_vec, max_abs_vec, solve, unit_vector, CMatrix, CVector, C64, ONE, ZERO,
};
use crate::starmap::AlgMap;
use crate::trivolution::{classify_star_map, StarKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    TypeI,
    TypeII,
    Invalid,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::TypeI => "type_I",
            Family::TypeII => "type_II",
            Family::Invalid => "invalid",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtensionResiduals {
    /// `|λ₀ − 1|` (type I) or `|λ₀|` (type II); the smaller of the two fits.
    pub lambda0: f64,
    /// `‖x₀² + x₀‖` for type I, `‖x₀² − x₀‖` for type II.
    pub idempotent: f64,
    /// Type I: `‖x₀τ(b)‖, ‖τ(b)x₀‖, ‖τ(x₀)‖`; type II: identity defect on `τ(A)`
    /// and distance of `x₀` from `τ(A)`.
    pub conditions: f64,
    /// `‖τ♯(0, x) − (0, τ(x))‖` over basis `x`.
    pub restriction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionSpec {
    pub lambda0: C64,
    pub x0: Element,
    pub family: Family,
    /// `‖τ♯‖ ≤ 1` under `‖(λ, x)‖ = |λ| + ‖x‖`.
    pub contractive: bool,
    pub norm_of_extension: f64,
    /// Verdict of the direct classification of `τ♯` on `A♯`.
    pub classified_trivolution: bool,
    /// Whether the family conditions and the classification agree.
    pub agree: bool,
    pub best_effort: bool,
    pub residuals: ExtensionResiduals,
}

/// `A♯ = ℂ × A`, with index 0 the adjoined unit and `(λ,x)(μ,y) =
/// (λμ, λy + μx + xy)`.
pub fn unitize(a: &Algebra) -> Algebra {
    let n = a.dim();
    let d = n + 1;
    let mut s = vec![ZERO; d * d * d];
    s[0] = ONE;
    for i in 0..n {
        s[(i + 1) * d + i + 1] = ONE; // 1·b_i
        s[((i + 1) * d) * d + i + 1] = ONE; // b_i·1
        for j in 0..n {
            for k in 0..n {
                s[((i + 1) * d + j + 1) * d + k + 1] = a.c(i, j, k);
            }
        }
    }
    let labels = std::iter::once("1".to_string())
        .chain(a.labels().iter().cloned())
        .collect();
    let mut identity = vec![ZERO; d];
    identity[0] = ONE;
    Algebra::builder(d, s)
        .labels(labels)
        .identity(identity)
        .tolerance(a.tol())
        .build()
        .expect("unitization of an associative algebra is associative")
}

/// Generic `τ♯` with matrix `[[λ₀, 0], [x₀, M]]`, conjugating.
pub fn sharp_map(a: &Algebra, a_sharp: &Algebra, tau: &AlgMap, lambda0: C64, x0: &CVector) -> Result<AlgMap> {
    let n = a.dim();
    if !tau.is_endomorphism_of(a) || x0.len() != n || a_sharp.dim() != n + 1 {
        return Err(Error::AlgebraMismatch);
    }
    let mut m = CMatrix::zeros(n + 1, n + 1);
    m[(0, 0)] = lambda0;
    for k in 0..n {
        m[(k + 1, 0)] = x0[k];
    }
    m.view_mut((1, 1), (n, n)).copy_from(tau.matrix());
    AlgMap::new(m, true, a_sharp, a_sharp)
}

/// `‖τ♯‖` for `‖(λ, x)‖ = |λ| + ‖x‖`: the largest ratio over the extreme
/// points `(1, 0)` and `(0, b_i/‖b_i‖)`, exact for the ℓ¹ norm on `A`.
pub fn sharp_norm(a: &Algebra, tau_sharp: &AlgMap) -> f64 {
    let n = a.dim();
    let m = tau_sharp.matrix();
    let norm = |col: usize| {
        let v = m.column(col);
        v[0].norm() + a.norm_of(&v.rows(1, n).into_owned())
    };
    (0..=n)
        .filter_map(|j| {
            let src = if j == 0 { 1.0 } else { a.norm_of(&unit_vector(n, j - 1)) };
            (src > 0.0).then(|| norm(j) / src)
        })
        .fold(0.0, f64::max)
}

fn family_conditions(a: &Algebra, tau: &AlgMap, lambda0: C64, x0: &CVector) -> (Family, ExtensionResiduals) {
    let eps = a.tol().eps;
    let n = a.dim();
    let sq = a.mul_coords(x0, x0);
    let images: Vec<CVector> = (0..n).map(|i| tau.apply_coords(&unit_vector(n, i))).collect();

    let type1_lambda = (lambda0 - ONE).norm();
    let type1_idem = max_abs_vec(&(&sq + x0));
    let type1_cond = images
        .iter()
        .map(|t| max_abs_vec(&a.mul_coords(x0, t)).max(max_abs_vec(&a.mul_coords(t, x0))))
        .fold(max_abs_vec(&tau.apply_coords(x0)), f64::max);

    let (_, range) = tau.kernel_image(a).expect("endomorphism checked by caller");
    let type2_lambda = lambda0.norm();
    let type2_idem = max_abs_diff_vec(&sq, x0);
    let type2_cond = (0..range.dim())
        .map(|c| {
            let b = range.basis().column(c).into_owned();
            max_abs_diff_vec(&a.mul_coords(x0, &b), &b).max(max_abs_diff_vec(&a.mul_coords(&b, x0), &b))
        })
        .fold(max_abs_vec(&range.residual(x0)), f64::max);

    let t1 = type1_lambda <= eps && type1_idem <= eps && type1_cond <= eps;
    let t2 = type2_lambda <= eps && type2_idem <= eps && type2_cond <= eps;
    let pick1 = t1 || (!t2 && type1_lambda <= type2_lambda);
    let family = if t1 {
        Family::TypeI
    } else if t2 {
        Family::TypeII
    } else {
        Family::Invalid
    };
    let residuals = if pick1 {
        ExtensionResiduals {
            lambda0: type1_lambda,
            idempotent: type1_idem,
            conditions: type1_cond,
            restriction: 0.0,
        }
    } else {
        ExtensionResiduals {
            lambda0: type2_lambda,
            idempotent: type2_idem,
            conditions: type2_cond,
            restriction: 0.0,
        }
    };
    (family, residuals)
}

/// Classifies the generic `τ♯` directly and checks the family conditions
/// independently; `agree` records whether the two verdicts coincide.
pub fn verify_extension(a: &Algebra, tau: &AlgMap, lambda0: C64, x0: &Element) -> Result<ExtensionSpec> {
    let a_sharp = unitize(a);
    verify_extension_in(a, &a_sharp, tau, lambda0, x0)
}

pub(crate) fn verify_extension_in(
    a: &Algebra,
    a_sharp: &Algebra,
    tau: &AlgMap,
    lambda0: C64,
    x0: &Element,
) -> Result<ExtensionSpec> {
    if x0.algebra() != a.id() {
        return Err(Error::AlgebraMismatch);
    }
    let n = a.dim();
    let t = sharp_map(a, a_sharp, tau, lambda0, x0.coords())?;
    let class = classify_star_map(a_sharp, &t)?;
    let classified_trivolution = class.is_star();
    let (family, mut residuals) = family_conditions(a, tau, lambda0, x0.coords());
    residuals.restriction = (0..n)
        .map(|i| {
            let img = t.apply_coords(&unit_vector(n + 1, i + 1));
            let expect = tau.apply_coords(&unit_vector(n, i));
            img[0]
                .norm()
                .max(max_abs_diff_vec(&img.rows(1, n).into_owned(), &expect))
        })
        .fold(0.0, f64::max);
    let norm = sharp_norm(a, &t);
    Ok(ExtensionSpec {
        lambda0,
        x0: x0.clone(),
        family,
        contractive: norm <= 1.0 + a.tol().eps,
        norm_of_extension: norm,
        classified_trivolution,
        agree: classified_trivolution == (family != Family::Invalid),
        best_effort: false,
        residuals,
    })
}

pub fn unitize_with_trivolution(a: &Algebra, tau: &AlgMap, ext: &ExtensionSpec) -> Result<(Algebra, AlgMap)> {
    let a_sharp = unitize(a);
    let spec = verify_extension_in(a, &a_sharp, tau, ext.lambda0, &ext.x0)?;
    if spec.family == Family::Invalid {
        return Err(Error::InvalidExtension);
    }
    let t = sharp_map(a, &a_sharp, tau, ext.lambda0, ext.x0.coords())?;
    let class = classify_star_map(&a_sharp, &t)?;
    if !class.is_star() {
        return Err(Error::certification(
            "τ♯ is a trivolution on A♯",
            class.anti_residual.max(class.cube_residual),
        ));
    }
    if spec.residuals.restriction > a.tol().eps {
        return Err(Error::certification("τ♯(0, x) = (0, τ(x))", spec.residuals.restriction));
    }
    Ok((a_sharp, t))
}

pub fn canonical_extension(a: &Algebra) -> (C64, Element) {
    (ONE, a.zero())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Type1Solutions {
    /// Each solution `x₀`; `0` comes first.
    pub solutions: Vec<Element>,
    /// `N = ker τ ∩ {x : xτ(A) = τ(A)x = 0}`.
    pub annihilator: Subspace,
    /// Set when the Newton fallback was used.
    pub best_effort: bool,
}

const NEWTON_SEEDS_PER_DIM: usize = 50;
const NEWTON_DAMPING: f64 = 0.5;
const NEWTON_ITERATIONS: usize = 100;
const DEDUP: f64 = 1e-6;

/// All `x₀` with `x₀² = −x₀` inside `N`, found as `x₀ = −y` for idempotents
/// `y ∈ N`. Exact when `N` is commutative and semisimple (idempotents are
/// 0/1 combinations of characters); otherwise multi-start damped Newton.
pub fn find_type1_solutions(a: &Algebra, tau: &AlgMap, seed: u64) -> Result<Type1Solutions> {
    if !tau.is_endomorphism_of(a) {
        return Err(Error::AlgebraMismatch);
    }
    let tol = a.tol();
    let n = a.dim();
    let (_, range) = tau.kernel_image(a)?;
    let kb = range.dim();
    let mut stack = CMatrix::zeros(n * (1 + 2 * kb), n);
    // τ(x) = M conj(x) = 0  ⟺  conj(M) x = 0
    stack.view_mut((0, 0), (n, n)).copy_from(&conj_matrix(tau.matrix()));
    for c in 0..kb {
        let b = range.basis().column(c).into_owned();
        stack
            .view_mut((n * (1 + 2 * c), 0), (n, n))
            .copy_from(&a.right_regular(&b));
        stack
            .view_mut((n * (2 + 2 * c), 0), (n, n))
            .copy_from(&a.left_regular(&b));
    }
    let null = crate::linalg::null_space(&stack, tol.rank);
    let annihilator = Subspace::from_columns(a, &null);
    let n_alg = a.subalgebra(&annihilator)?;
    let k = n_alg.dim();

    let mut idempotents: Vec<CVector> = Vec::new();
    let mut best_effort = false;
    let exact = if k == 0 {
        Some(vec![CVector::zeros(0)])
    } else if n_alg.is_commutative() {
        semisimple_idempotents(&n_alg)?
    } else {
        None
    };
    match exact {
        Some(ys) => idempotents.extend(ys),
        None => {
            best_effort = true;
            idempotents.extend(newton_idempotents(&n_alg, seed));
        }
    }

    let mut solutions: Vec<Element> = Vec::new();
    for y in idempotents {
        let x0 = -annihilator.embed(&y);
        let x0 = a.element_from(x0);
        let spec = verify_extension(a, tau, ONE, &x0)?;
        if spec.family != Family::TypeI {
            continue;
        }
        if !solutions.iter().any(|s| s.distance(&x0) <= DEDUP) {
            solutions.push(x0);
        }
    }
    if !solutions.iter().any(|s| s.max_abs() <= tol.eps) {
        solutions.insert(0, a.zero());
    }
    Ok(Type1Solutions {
        solutions,
        annihilator,
        best_effort,
    })
}

/// Idempotents of a commutative algebra whose characters span its dual:
/// for each 0/1 pattern `v`, the unique `y` with `φ_j(y) = v_j`. `None` when
/// the algebra is not semisimple.
fn semisimple_idempotents(n_alg: &Algebra) -> Result<Option<Vec<CVector>>> {
    let k = n_alg.dim();
    let chars = find_characters(n_alg)?;
    if chars.characters.len() != k || k > 20 {
        return Ok(None);
    }
    let gamma = CMatrix::from_fn(k, k, |r, c| chars.characters[r].values()[c]);
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u32..(1u32 << k) {
        let v = CVector::from_iterator(k, (0..k).map(|j| if mask & (1 << j) != 0 { ONE } else { ZERO }));
        match solve(&gamma, &v, n_alg.tol().rank) {
            Some(s) if s.homogeneous.ncols() == 0 => out.push(s.particular),
            _ => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Damped Newton on `y² − y = 0` from seeded random starts; solutions are
/// kept in discovery order after de-duplication.
fn newton_idempotents(n_alg: &Algebra, seed: u64) -> Vec<CVector> {
    let k = n_alg.dim();
    let eps = n_alg.tol().eps;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<CVector> = vec![CVector::zeros(k)];
    let id = CMatrix::identity(k, k);
    for _ in 0..NEWTON_SEEDS_PER_DIM * k {
        let mut y = CVector::from_iterator(
            k,
            (0..k).map(|_| C64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5))),
        );
        for _ in 0..NEWTON_ITERATIONS {
            let f = n_alg.mul_coords(&y, &y) - &y;
            if max_abs_vec(&f) <= eps * 1e-3 {
                break;
            }
            let jac = n_alg.left_regular(&y) + n_alg.right_regular(&y) - &id;
            let step = lstsq(&jac, &(-f), 1e-12);
            y += step * C64::new(NEWTON_DAMPING, 0.0);
        }
        let f = n_alg.mul_coords(&y, &y) - &y;
        if max_abs_vec(&f) <= eps && !found.iter().any(|z| max_abs_diff_vec(z, &y) <= DEDUP) {
            found.push(y);
        }
    }
    found
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContractiveExtensions {
    pub included: Vec<ExtensionSpec>,
    /// Valid extensions certified to have `‖τ♯‖ > 1`.
    pub excluded: Vec<ExtensionSpec>,
}

/// The canonical extension, plus the type-II extension when `τ(A)` has an
/// identity of norm one. Type-I extensions with `x₀ ≠ 0` are certified
/// non-contractive and listed separately.
pub fn contractive_extensions(a: &Algebra, tau: &AlgMap, seed: u64) -> Result<ContractiveExtensions> {
    let eps = a.tol().eps;
    let norm = tau.norm(a, a);
    if norm > 1.0 + eps {
        return Err(Error::NotContractive { norm });
    }
    let a_sharp = unitize(a);
    let mut included = Vec::new();
    let mut excluded = Vec::new();
    let (l0, x0) = canonical_extension(a);
    let canonical = verify_extension_in(a, &a_sharp, tau, l0, &x0)?;
    certify_contractive(&canonical)?;
    included.push(canonical);

    if let Some(e_b) = range_identity(a, tau)? {
        let spec = verify_extension_in(a, &a_sharp, tau, ZERO, &a.element_from(e_b.clone()))?;
        if (a.norm_of(&e_b) - 1.0).abs() <= eps {
            certify_contractive(&spec)?;
            included.push(spec);
        } else if !spec.contractive {
            excluded.push(spec);
        }
    }

    let sols = find_type1_solutions(a, tau, seed)?;
    for x0 in sols.solutions.iter().filter(|s| s.max_abs() > eps) {
        let mut spec = verify_extension_in(a, &a_sharp, tau, ONE, x0)?;
        spec.best_effort = sols.best_effort;
        if spec.contractive {
            return Err(Error::certification(
                "type-I extensions with x₀ ≠ 0 have norm > 1",
                spec.norm_of_extension,
            ));
        }
        excluded.push(spec);
    }
    Ok(ContractiveExtensions { included, excluded })
}

fn certify_contractive(spec: &ExtensionSpec) -> Result<()> {
    if !spec.contractive || spec.family == Family::Invalid {
        return Err(Error::certification("‖τ♯‖ ≤ 1", spec.norm_of_extension));
    }
    Ok(())
}

/// Identity of `τ(A)` in ambient coordinates, if it has one.
pub fn range_identity(a: &Algebra, tau: &AlgMap) -> Result<Option<CVector>> {
    let (_, range) = tau.kernel_image(a)?;
    if range.dim() == 0 {
        return Ok(None);
    }
    let b = a.subalgebra(&range)?;
    Ok(b.identity_coords().map(|e| range.embed(e)))
}

/// Grid-free helper for completeness scans: every `(λ₀, x₀)` is classified
/// twice and disagreements counted.
pub fn count_disagreements(a: &Algebra, tau: &AlgMap, candidates: &[(C64, CVector)]) -> Result<(usize, usize)> {
    let a_sharp = unitize(a);
    let mut valid = 0;
    let mut disagreements = 0;
    for (l0, x0) in candidates {
        let spec = verify_extension_in(a, &a_sharp, tau, *l0, &a.element_from(x0.clone()))?;
        if spec.family != Family::Invalid {
            valid += 1;
        }
        if !spec.agree {
            disagreements += 1;
        }
    }
    Ok((valid, disagreements))
}

/// Whether `τ` is an involution (type-I solutions must then all vanish).
pub fn is_involution(a: &Algebra, tau: &AlgMap) -> Result<bool> {
    Ok(classify_star_map(a, tau)?.kind == StarKind::Involution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::function_algebra;

    fn half_conj(a: &Algebra) -> AlgMap {
        AlgMap::new(CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]), true, a, a).unwrap()
    }

    fn chi12(a: &Algebra) -> AlgMap {
        let m = CMatrix::from_fn(4, 4, |r, c| if r == c && r < 2 { ONE } else { ZERO });
        AlgMap::new(m, true, a, a).unwrap()
    }

    #[test]
    fn unitize_structure() {
        let c2 = function_algebra(2);
        let s = unitize(&c2);
        assert_eq!(s.dim(), 3);
        assert!(s.is_unital());
        let x = CVector::from_vec(vec![C64::new(2.0, 0.0), ONE, C64::new(3.0, 0.0)]);
        let y = CVector::from_vec(vec![ONE, C64::new(5.0, 0.0), ZERO]);
        // (2,(1,3))(1,(5,0)) = (2, 2(5,0) + (1,3) + (5,0)) = (2, (16, 3))
        let p = s.mul_coords(&x, &y);
        assert!(
            max_abs_diff_vec(
                &p,
                &CVector::from_vec(vec![C64::new(2.0, 0.0), C64::new(16.0, 0.0), C64::new(3.0, 0.0)])
            ) < 1e-15
        );
    }

    #[test]
    fn extension_examples() {
        let c2 = function_algebra(2);
        let tau = half_conj(&c2);
        let s = verify_extension(&c2, &tau, ONE, &c2.zero()).unwrap();
        assert_eq!(s.family, Family::TypeI);
        assert!(s.agree && s.classified_trivolution);

        let x0 = c2.element(vec![ZERO, -ONE]).unwrap();
        let s = verify_extension(&c2, &tau, ONE, &x0).unwrap();
        assert_eq!(s.family, Family::TypeI);
        assert!(s.agree);
        let (a_sharp, t) = unitize_with_trivolution(&c2, &tau, &s).unwrap();
        assert!(classify_star_map(&a_sharp, &t).unwrap().is_star());

        let x0 = c2.element(vec![ONE, ZERO]).unwrap();
        let s = verify_extension(&c2, &tau, ZERO, &x0).unwrap();
        assert_eq!(s.family, Family::TypeII);
        let (_, t) = unitize_with_trivolution(&c2, &tau, &s).unwrap();
        let img = t.apply_coords(&unit_vector(3, 0));
        assert!(max_abs_diff_vec(&img, &CVector::from_vec(vec![ZERO, ONE, ZERO])) < 1e-15);

        let bad = c2.element(vec![ZERO, ONE]).unwrap();
        let s = verify_extension(&c2, &tau, ONE, &bad).unwrap();
        assert_eq!(s.family, Family::Invalid);
        assert!(s.agree && !s.classified_trivolution);
        assert_eq!(
            unitize_with_trivolution(&c2, &tau, &s).unwrap_err(),
            Error::InvalidExtension
        );
    }

    #[test]
    fn type1_half_conjugation() {
        let c2 = function_algebra(2);
        let sols = find_type1_solutions(&c2, &half_conj(&c2), 0).unwrap();
        assert_eq!(sols.solutions.len(), 2);
        assert!(!sols.best_effort);
        assert!(sols.solutions[0].max_abs() == 0.0);
        assert!(max_abs_diff_vec(sols.solutions[1].coords(), &CVector::from_vec(vec![ZERO, -ONE])) < 1e-12);
    }

    #[test]
    fn type1_c4_example_is_closed_under_products() {
        let c4 = function_algebra(4);
        let sols = find_type1_solutions(&c4, &chi12(&c4), 0).unwrap();
        assert_eq!(sols.solutions.len(), 4);
        let ys: Vec<CVector> = sols.solutions.iter().map(|s| -s.coords()).collect();
        for y in &ys {
            for z in &ys {
                let p = c4.mul_coords(y, z);
                assert!(ys.iter().any(|w| max_abs_diff_vec(w, &p) < 1e-9));
            }
        }
    }

    #[test]
    fn involution_has_only_zero() {
        let c2 = function_algebra(2);
        let sols = find_type1_solutions(&c2, &AlgMap::conjugation(&c2), 0).unwrap();
        assert_eq!(sols.solutions.len(), 1);
        assert!(is_involution(&c2, &AlgMap::conjugation(&c2)).unwrap());
    }

    #[test]
    fn newton_finds_matrix_idempotents() {
        // M₂ is noncommutative: the fallback must find 0, 1 and rank-one
        // idempotents.
        let m2 = crate::algebra::matrix_algebra(2);
        let ys = newton_idempotents(&m2, 3);
        assert!(ys.len() > 3);
        for y in &ys {
            assert!(max_abs_diff_vec(&m2.mul_coords(y, y), y) < 1e-9);
        }
    }

    #[test]
    fn contractive_half_conjugation() {
        let c2 = function_algebra(2);
        let r = contractive_extensions(&c2, &half_conj(&c2), 0).unwrap();
        assert_eq!(r.included.len(), 2);
        assert_eq!(r.included[1].family, Family::TypeII);
        assert_eq!(r.excluded.len(), 1);
        assert!((r.excluded[0].norm_of_extension - 2.0).abs() < 1e-9);
    }

    #[test]
    fn contractive_involution_on_c() {
        let c1 = function_algebra(1);
        let r = contractive_extensions(&c1, &AlgMap::conjugation(&c1), 0).unwrap();
        assert_eq!(r.included.len(), 2);
        assert!(r.excluded.is_empty());
    }

    #[test]
    fn non_contractive_rejected() {
        let c2 = function_algebra(2);
        let t = AlgMap::new(CMatrix::identity(2, 2).scale(2.0), true, &c2, &c2).unwrap();
        assert!(matches!(
            contractive_extensions(&c2, &t, 0),
            Err(Error::NotContractive { .. })
        ));
    }

    #[test]
    fn nonunital_range_gives_canonical_only() {
        // A = span{x}, x² = 0, τ(x) = x conj: range is nilpotent, no identity
        let a = Algebra::builder(1, vec![ZERO]).build().unwrap();
        let tau = AlgMap::conjugation(&a);
        let r = contractive_extensions(&a, &tau, 0).unwrap();
        assert_eq!(r.included.len(), 1);
        assert!(range_identity(&a, &tau).unwrap().is_none());
    }
}
