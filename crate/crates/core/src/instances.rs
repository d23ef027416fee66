//! Seeded generators of algebras carrying a trivolution, used by the
//! property suite, the acceptance tests and the benches.
//!
//! Every instance also carries an ambient involution `θ` that maps `ker τ`
//! into itself, so `θ` restricted to the kernel is a valid `J` for the
//! factorization through an involutive algebra.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{
    cyclic_group_table, direct_product_table, function_algebra, group_algebra, matrix_algebra, normal_subgroups,
    product, symmetric_group_3_table, Algebra, GroupTable,
};
use crate::error::Result;
use crate::linalg::{CMatrix, CVector, C64, ONE, ZERO};
use crate::search::{group_involution, involutive_permutations};
use crate::starmap::AlgMap;

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub algebra: Algebra,
    pub tau: AlgMap,
    pub theta: AlgMap,
    pub group: Option<GroupTable>,
}

impl Instance {
    fn new(name: impl Into<String>, algebra: Algebra, tau: CMatrix, theta: CMatrix) -> Instance {
        let tau = AlgMap::new(tau, true, &algebra, &algebra).expect("generator shapes agree");
        let theta = AlgMap::new(theta, true, &algebra, &algebra).expect("generator shapes agree");
        Instance {
            name: name.into(),
            algebra,
            tau,
            theta,
            group: None,
        }
    }

    /// `θ` restricted to `ker τ`, in the echelon coordinates of the kernel.
    pub fn kernel_involution(&self) -> Result<AlgMap> {
        let (ker, _) = self.tau.kernel_image(&self.algebra)?;
        let i_alg = self.algebra.subalgebra(&ker)?;
        self.theta.restrict(&ker, &i_alg, &ker, &i_alg, self.algebra.tol().eps)
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

pub fn random_complex<R: Rng>(rng: &mut R, scale: f64) -> C64 {
    C64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize, scale: f64) -> CVector {
    CVector::from_iterator(n, (0..n).map(|_| random_complex(rng, scale)))
}

pub fn random_matrix<R: Rng>(rng: &mut R, r: usize, c: usize, scale: f64) -> CMatrix {
    CMatrix::from_fn(r, c, |_, _| random_complex(rng, scale))
}

pub fn block_diag(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (r1, c1) = a.shape();
    let (r2, c2) = b.shape();
    let mut m = CMatrix::zeros(r1 + r2, c1 + c2);
    m.view_mut((0, 0), (r1, c1)).copy_from(a);
    m.view_mut((r1, c1), (r2, c2)).copy_from(b);
    m
}

/// The smallest proper trivolution: `τ(z₁, z₂) = (conj z₁, 0)` on ℂ².
pub fn c2_projection_instance() -> Instance {
    indicator_instance(2, &[0], &[0])
}

/// `τ(f)(k) = conj f(π(k))` on `K`, zero elsewhere; `θ` is coordinate
/// conjugation. `perm` is an involutive permutation of positions in `k`.
pub fn indicator_instance(n: usize, k: &[usize], perm: &[usize]) -> Instance {
    let a = function_algebra(n);
    let mut m = CMatrix::zeros(n, n);
    for (j, &kj) in k.iter().enumerate() {
        m[(kj, k[perm[j]])] = ONE;
    }
    let name = format!("C^{n} chi{k:?} perm{perm:?}");
    Instance::new(name, a, m, CMatrix::identity(n, n))
}

/// `θ∘ℓ_{e_N}` on ℂ[G] with `θ` the natural involution.
pub fn group_instance(name: &str, g: &GroupTable, normal: &[usize]) -> Instance {
    let a = group_algebra(g, None).expect("valid table");
    let theta = group_involution(&a, g).expect("shape");
    let w = C64::new(1.0 / normal.len() as f64, 0.0);
    let e_n = CVector::from_fn(g.order(), |h, _| if normal.contains(&h) { w } else { ZERO });
    let ell = AlgMap::new(a.left_regular(&e_n), false, &a, &a).expect("shape");
    let tau = theta.compose(&ell).expect("endomorphisms");
    let mut inst = Instance::new(
        format!("C[{name}] N={normal:?}"),
        a,
        tau.matrix().clone(),
        theta.matrix().clone(),
    );
    inst.group = Some(g.clone());
    inst
}

/// `X ↦ S X* S⁻¹` on Mₙ for hermitian invertible `S`.
pub fn matrix_involution(n: usize, s: &CMatrix) -> CMatrix {
    let s_inv = s.clone().try_inverse().expect("S invertible");
    let d = n * n;
    let mut m = CMatrix::zeros(d, d);
    for i in 0..n {
        for j in 0..n {
            let mut e = CMatrix::zeros(n, n);
            e[(j, i)] = ONE; // E_ij*
            let img = s * e * &s_inv;
            for r in 0..n {
                for c in 0..n {
                    m[(r * n + c, i * n + j)] = img[(r, c)];
                }
            }
        }
    }
    m
}

/// Upper triangular 2×2 matrices on `E11, E12, E22` with the flip
/// `X ↦ J X* J`, `J` the anti-diagonal unit.
pub fn upper_triangular_instance() -> Instance {
    // E11E11=E11, E11E12=E12, E12E22=E12, E22E22=E22
    let mut s = vec![ZERO; 27];
    for (i, j, k) in [(0, 0, 0), (0, 1, 1), (1, 2, 1), (2, 2, 2)] {
        s[(i * 3 + j) * 3 + k] = ONE;
    }
    let a = Algebra::builder(3, s)
        .labels(vec!["E11".into(), "E12".into(), "E22".into()])
        .build()
        .expect("triangular matrices are associative");
    // J E11* J = E22, J E12* J = E12, J E22* J = E11
    let flip = CMatrix::from_row_slice(3, 3, &[ZERO, ZERO, ONE, ZERO, ONE, ZERO, ONE, ZERO, ZERO]);
    Instance::new("T2 flip", a, flip.clone(), flip)
}

/// `τ₁ ⊕ τ₂` (either side may be replaced by zero) on `A₁ × A₂`.
pub fn product_instance(x: &Instance, y: &Instance, keep: (bool, bool)) -> Instance {
    let a = product(&x.algebra, &y.algebra);
    let pick = |inst: &Instance, k: bool| {
        if k {
            inst.tau.matrix().clone()
        } else {
            CMatrix::zeros(inst.dim(), inst.dim())
        }
    };
    let tau = block_diag(&pick(x, keep.0), &pick(y, keep.1));
    let theta = block_diag(x.theta.matrix(), y.theta.matrix());
    let tag = |k: bool| if k { "" } else { "0·" };
    let name = format!("({}{}) x ({}{})", tag(keep.0), x.name, tag(keep.1), y.name);
    Instance::new(name, a, tau, theta)
}

/// The same instance in the basis `b′_i = Σ_k T_ki b_k`.
pub fn change_basis(inst: &Instance, t: &CMatrix) -> Option<Instance> {
    let t_inv = t.clone().try_inverse()?;
    let a = &inst.algebra;
    let n = a.dim();
    let mut s = vec![ZERO; n * n * n];
    for i in 0..n {
        for j in 0..n {
            let p = &t_inv * a.mul_coords(&t.column(i).into_owned(), &t.column(j).into_owned());
            for k in 0..n {
                s[(i * n + j) * n + k] = p[k];
            }
        }
    }
    let alg = Algebra::builder(n, s)
        .labels(a.labels().iter().map(|l| format!("{l}'")).collect())
        .norm(a.norm_kind())
        .tolerance(a.tol())
        .build()
        .ok()?;
    // conjugating M: x = T x′ ↦ T⁻¹ M conj(T) conj(x′)
    let conj_t = crate::linalg::conj_matrix(t);
    let tau = &t_inv * inst.tau.matrix() * &conj_t;
    let theta = &t_inv * inst.theta.matrix() * &conj_t;
    let mut out = Instance::new(format!("{} [rebased]", inst.name), alg, tau, theta);
    out.group = None;
    Some(out)
}

/// Groups of order at most 6, with display names.
pub fn small_groups() -> Vec<(&'static str, GroupTable)> {
    let z2 = cyclic_group_table(2);
    let z3 = cyclic_group_table(3);
    vec![
        ("Z1", cyclic_group_table(1)),
        ("Z2", z2.clone()),
        ("Z3", z3.clone()),
        ("Z4", cyclic_group_table(4)),
        ("Z5", cyclic_group_table(5)),
        ("Z6", cyclic_group_table(6)),
        ("Z2xZ2", direct_product_table(&z2, &z2)),
        ("Z2xZ3", direct_product_table(&z2, &z3)),
        ("S3", symmetric_group_3_table()),
    ]
}

fn random_subset<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    loop {
        let k: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if !k.is_empty() {
            return k;
        }
    }
}

pub fn random_function_instance<R: Rng>(rng: &mut R, max_n: usize) -> Instance {
    let n = rng.gen_range(1..=max_n);
    let k = random_subset(rng, n);
    let perms = involutive_permutations(k.len());
    let perm = perms.choose(rng).expect("identity always present").clone();
    indicator_instance(n, &k, &perm)
}

pub fn random_group_instance<R: Rng>(rng: &mut R) -> Instance {
    let groups = small_groups();
    let (name, g) = groups.choose(rng).expect("nonempty");
    let normals = normal_subgroups(g);
    let nsub = normals.choose(rng).expect("trivial subgroup always normal");
    group_instance(name, g, nsub)
}

fn random_hermitian_positive<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    let h = random_matrix(rng, n, n, 0.15);
    CMatrix::identity(n, n) * C64::new(1.0, 0.0) + (&h + h.adjoint()) * C64::new(0.5, 0.0)
}

/// `θ_S` on Mₙ (n ≤ 3), or a product `Mₙ × Mₘ` with `τ = θ_S ⊕ 0`.
pub fn random_matrix_instance<R: Rng>(rng: &mut R) -> Instance {
    let n = rng.gen_range(1..=3);
    let s = random_hermitian_positive(rng, n);
    let theta = matrix_involution(n, &s);
    let base = Instance::new(format!("M{n} S-adjoint"), matrix_algebra(n), theta.clone(), theta);
    if rng.gen_bool(0.5) {
        return base;
    }
    let m = rng.gen_range(1..=2);
    let ct = matrix_involution(m, &CMatrix::identity(m, m));
    let other = Instance::new(format!("M{m} adjoint"), matrix_algebra(m), ct.clone(), ct);
    if rng.gen_bool(0.5) {
        product_instance(&base, &other, (true, false))
    } else {
        product_instance(&other, &base, (false, true))
    }
}

/// A trivolution from one of the families above, possibly a product of
/// two and possibly in a random basis; dimension at most 16.
pub fn random_instance<R: Rng>(rng: &mut R) -> Instance {
    let base = |rng: &mut R| match rng.gen_range(0..4) {
        0 => random_function_instance(rng, 8),
        1 => random_group_instance(rng),
        2 => random_matrix_instance(rng),
        _ => upper_triangular_instance(),
    };
    let mut inst = base(rng);
    if rng.gen_bool(0.3) {
        let other = base(rng);
        if inst.dim() + other.dim() <= 16 {
            let keep = *[(true, true), (true, false), (false, true)]
                .choose(rng)
                .expect("nonempty");
            inst = product_instance(&inst, &other, keep);
        }
    }
    if rng.gen_bool(0.3) {
        let n = inst.dim();
        let t = CMatrix::identity(n, n) + random_matrix(rng, n, n, 0.3 / n as f64);
        if let Some(rebased) = change_basis(&inst, &t) {
            inst = rebased;
        }
    }
    inst
}

/// Fixed instances covering every family, in a stable order.
pub fn named_instances() -> Vec<Instance> {
    let m2 = matrix_algebra(2);
    let ct2 = matrix_involution(2, &CMatrix::identity(2, 2));
    let m2_inst = Instance::new("M2 adjoint", m2, ct2.clone(), ct2);
    let groups = small_groups();
    let z2 = &groups[1].1;
    let z3 = &groups[2].1;
    let s3 = &groups[8].1;
    vec![
        c2_projection_instance(),
        indicator_instance(3, &[0, 1], &[0, 1]),
        indicator_instance(3, &[0, 1, 2], &[2, 1, 0]),
        indicator_instance(4, &[0, 1], &[0, 1]),
        m2_inst.clone(),
        product_instance(&m2_inst, &m2_inst, (true, false)),
        group_instance("Z2", z2, &[0]),
        group_instance("Z2", z2, &[0, 1]),
        group_instance("Z3", z3, &[0, 1, 2]),
        group_instance("S3", s3, &normal_subgroups(s3)[1]),
        upper_triangular_instance(),
        product_instance(
            &upper_triangular_instance(),
            &indicator_instance(1, &[0], &[0]),
            (true, false),
        ),
    ]
}

/// An intertwining homomorphism out of `inst`, built from its structure:
/// returns `(A₂, τ₂, π)`.
pub fn random_intertwining_hom<R: Rng>(rng: &mut R, inst: &Instance) -> (Algebra, AlgMap, AlgMap) {
    let a = &inst.algebra;
    let n = a.dim();
    let p = inst.tau.compose(&inst.tau).expect("endomorphism");
    let id = CMatrix::identity(n, n);
    let zero = CMatrix::zeros(n, n);
    let stack = |top: &CMatrix, bottom: &CMatrix| {
        let mut m = CMatrix::zeros(2 * n, n);
        m.view_mut((0, 0), (n, n)).copy_from(top);
        m.view_mut((n, 0), (n, n)).copy_from(bottom);
        m
    };
    match rng.gen_range(0..6) {
        0 => (a.clone(), inst.tau.clone(), AlgMap::identity(a)),
        1 => (a.clone(), inst.tau.clone(), p.rebind(a, a).expect("shape")),
        2..=4 => {
            let doubled = product_instance(inst, inst, (true, true));
            let m = match rng.gen_range(0..4) {
                0 => stack(&id, &id),
                1 => stack(&id, p.matrix()),
                2 => stack(p.matrix(), &id),
                _ => stack(&id, &zero),
            };
            let pi = AlgMap::new(m, false, a, &doubled.algebra).expect("shape");
            (doubled.algebra, doubled.tau, pi)
        }
        _ => {
            let t = id.clone() + random_matrix(rng, n, n, 0.3 / n as f64);
            match change_basis(inst, &t) {
                Some(other) => {
                    let pi = AlgMap::new(t.try_inverse().expect("checked"), false, a, &other.algebra).expect("shape");
                    (other.algebra, other.tau, pi)
                }
                None => (a.clone(), inst.tau.clone(), AlgMap::identity(a)),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trivolution::{classify_star_map, StarKind};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn named_instances_are_star_maps() {
        for inst in named_instances() {
            let c = classify_star_map(&inst.algebra, &inst.tau).unwrap();
            assert!(c.is_star(), "{}", inst.name);
            let t = classify_star_map(&inst.algebra, &inst.theta).unwrap();
            assert_eq!(t.kind, StarKind::Involution, "{}", inst.name);
            inst.kernel_involution().unwrap();
        }
    }

    #[test]
    fn random_instances_are_star_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let inst = random_instance(&mut rng);
            assert!(inst.dim() <= 16);
            assert!(
                classify_star_map(&inst.algebra, &inst.tau).unwrap().is_star(),
                "{}",
                inst.name
            );
            assert_eq!(
                classify_star_map(&inst.algebra, &inst.theta).unwrap().kind,
                StarKind::Involution,
                "{}",
                inst.name
            );
        }
    }

    #[test]
    fn s_adjoint_is_an_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = random_hermitian_positive(&mut rng, 3);
        let a = matrix_algebra(3);
        let t = AlgMap::new(matrix_involution(3, &s), true, &a, &a).unwrap();
        assert_eq!(classify_star_map(&a, &t).unwrap().kind, StarKind::Involution);
    }
}
