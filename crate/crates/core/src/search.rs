//! Structured searches for trivolutions. Every trivolution is `ρ∘p`, so
//! enumerating `(p, ρ)` pairs from a declared family is exhaustive within it.

use crate::algebra::{function_algebra, group_algebra, normal_subgroups, Algebra, GroupTable};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64, ONE, ZERO};
use crate::starmap::AlgMap;
use crate::trivolution::{classify_star_map, make_trivolution};

#[derive(Debug, Clone)]
pub enum FamilySpec {
    /// On ℂⁿ: `τ(f)(k) = conj f(π(k))` for `k ∈ K`, zero off `K`, over all
    /// nonempty `K` and all involutive permutations `π` of `K` (only the
    /// identity when `permutations` is false).
    Indicator { permutations: bool },
    /// On ℂ[G]: `θ∘ℓ_{e_N}` with `θ(Σ a_g g) = Σ conj(a_g) g⁻¹` and `e_N` the
    /// averaging idempotent of a normal subgroup `N`. `None` means every
    /// normal subgroup.
    GroupQuotients {
        group: GroupTable,
        normal: Option<Vec<Vec<usize>>>,
    },
    /// Explicit `(p, ρ)` pairs, `ρ` in the echelon coordinates of `p(A)`.
    UserPairs(Vec<(AlgMap, AlgMap)>),
}

impl FamilySpec {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Indicator { .. } => "indicator",
            FamilySpec::GroupQuotients { .. } => "group",
            FamilySpec::UserPairs(_) => "pairs",
        }
    }

    /// Parses the data-free family tags.
    pub fn from_tag(tag: &str) -> Result<FamilySpec> {
        match tag {
            "indicator" => Ok(FamilySpec::Indicator { permutations: true }),
            "indicator-identity" => Ok(FamilySpec::Indicator { permutations: false }),
            _ => Err(Error::UnsupportedFamily(tag.to_string())),
        }
    }
}

pub fn search_trivolutions(a: &Algebra, family: &FamilySpec) -> Result<Vec<AlgMap>> {
    let candidates = match family {
        FamilySpec::Indicator { permutations } => {
            let n = a.dim();
            if n == 0 || n > 16 || a.id() != function_algebra(n).id() {
                return Err(Error::UnsupportedFamily(
                    "indicator family needs a pointwise function algebra".into(),
                ));
            }
            indicator_candidates(a, *permutations)?
        }
        FamilySpec::GroupQuotients { group, normal } => {
            if a.id() != group_algebra(group, None)?.id() {
                return Err(Error::UnsupportedFamily(
                    "group family needs the group algebra of the supplied table".into(),
                ));
            }
            let subgroups = match normal {
                Some(list) => list.clone(),
                None => normal_subgroups(group),
            };
            let theta = group_involution(a, group)?;
            let mut out = Vec::new();
            for nsub in &subgroups {
                if !group.is_normal_subgroup(nsub) {
                    return Err(Error::NotAGroup(format!("{nsub:?} is not a normal subgroup")));
                }
                let e_n = averaging_idempotent(group.order(), nsub);
                let ell = AlgMap::new(a.left_regular(&e_n), false, a, a)?;
                out.push(theta.compose(&ell)?);
            }
            out
        }
        FamilySpec::UserPairs(pairs) => pairs
            .iter()
            .map(|(p, rho)| make_trivolution(a, p, rho))
            .collect::<Result<Vec<_>>>()?,
    };
    let mut out = Vec::new();
    for t in candidates {
        if classify_star_map(a, &t)?.is_star() {
            out.push(t);
        }
    }
    Ok(out)
}

/// `θ(Σ a_g g) = Σ conj(a_g) g⁻¹`.
pub fn group_involution(a: &Algebra, group: &GroupTable) -> Result<AlgMap> {
    let n = group.order();
    let m = CMatrix::from_fn(n, n, |r, c| if group.inverse(c) == r { ONE } else { ZERO });
    AlgMap::new(m, true, a, a)
}

fn averaging_idempotent(order: usize, subgroup: &[usize]) -> crate::linalg::CVector {
    let w = C64::new(1.0 / subgroup.len() as f64, 0.0);
    crate::linalg::CVector::from_fn(order, |g, _| if subgroup.contains(&g) { w } else { ZERO })
}

fn indicator_candidates(a: &Algebra, permutations: bool) -> Result<Vec<AlgMap>> {
    let n = a.dim();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let k: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let perms = if permutations {
            involutive_permutations(k.len())
        } else {
            vec![(0..k.len()).collect()]
        };
        for perm in perms {
            // τ(f)(k_j) = conj f(k_{π(j)})
            let mut m = CMatrix::zeros(n, n);
            for (j, &kj) in k.iter().enumerate() {
                m[(kj, k[perm[j]])] = ONE;
            }
            out.push(AlgMap::new(m, true, a, a)?);
        }
    }
    Ok(out)
}

/// All permutations `π` of `0..m` with `π² = id`, lexicographic order.
pub fn involutive_permutations(m: usize) -> Vec<Vec<usize>> {
    fn extend(perm: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = perm.iter().position(|p| p.is_none()) else {
            out.push(perm.iter().map(|p| p.unwrap()).collect());
            return;
        };
        perm[i] = Some(i);
        extend(perm, out);
        for j in i + 1..perm.len() {
            if perm[j].is_none() {
                perm[i] = Some(j);
                perm[j] = Some(i);
                extend(perm, out);
                perm[j] = None;
            }
        }
        perm[i] = None;
    }
    let mut out = Vec::new();
    extend(&mut vec![None; m], &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_group_table, matrix_algebra, symmetric_group_3_table};
    use crate::trivolution::StarKind;

    #[test]
    fn involutive_permutation_counts() {
        // telephone numbers
        let counts: Vec<usize> = (0..7).map(|m| involutive_permutations(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 10, 26, 76]);
    }

    #[test]
    fn indicator_family_on_c3() {
        let c3 = function_algebra(3);
        let maps = search_trivolutions(&c3, &FamilySpec::Indicator { permutations: true }).unwrap();
        // nonempty K ⊆ {1,2,3} weighted by the involutive permutations of K
        assert_eq!(maps.len(), 3 + 3 * 2 + 4);
        let only_id = search_trivolutions(&c3, &FamilySpec::Indicator { permutations: false }).unwrap();
        assert_eq!(only_id.len(), 7);
        let involutions = maps
            .iter()
            .filter(|t| classify_star_map(&c3, t).unwrap().kind == StarKind::Involution)
            .count();
        assert_eq!(involutions, 4);
    }

    #[test]
    fn group_family() {
        let g = symmetric_group_3_table();
        let a = group_algebra(&g, None).unwrap();
        let maps = search_trivolutions(&a, &FamilySpec::GroupQuotients { group: g, normal: None }).unwrap();
        // {e}, A₃, S₃
        assert_eq!(maps.len(), 3);
        let kinds: Vec<StarKind> = maps.iter().map(|t| classify_star_map(&a, t).unwrap().kind).collect();
        assert_eq!(kinds[0], StarKind::Involution);
        assert!(kinds[1..].iter().all(|k| *k == StarKind::TrivolutionProper));
    }

    #[test]
    fn user_pairs_on_z2() {
        let g = cyclic_group_table(2);
        let a = group_algebra(&g, None).unwrap();
        let theta = group_involution(&a, &g).unwrap();
        let maps = search_trivolutions(&a, &FamilySpec::UserPairs(vec![(AlgMap::identity(&a), theta)])).unwrap();
        assert_eq!(maps.len(), 1);
        assert_eq!(classify_star_map(&a, &maps[0]).unwrap().kind, StarKind::Involution);
    }

    #[test]
    fn unsupported() {
        assert!(matches!(
            FamilySpec::from_tag("matrix-blocks"),
            Err(Error::UnsupportedFamily(_))
        ));
        let m2 = matrix_algebra(2);
        assert!(matches!(
            search_trivolutions(&m2, &FamilySpec::Indicator { permutations: true }),
            Err(Error::UnsupportedFamily(_))
        ));
    }
}
