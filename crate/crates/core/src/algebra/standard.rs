use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{ONE, ZERO};

/// ℂⁿ with the pointwise product.
pub fn function_algebra(n: usize) -> Algebra {
    assert!(n > 0);
    let mut s = vec![ZERO; n * n * n];
    for i in 0..n {
        s[(i * n + i) * n + i] = ONE;
    }
    let labels = (0..n).map(|i| format!("d{}", i + 1)).collect();
    Algebra::builder(n, s)
        .labels(labels)
        .build()
        .expect("pointwise product is associative")
}

/// Mₙ(ℂ) in the matrix-unit basis `E_ij ↦ index i·n + j` (row-major).
pub fn matrix_algebra(n: usize) -> Algebra {
    assert!(n > 0);
    let d = n * n;
    let mut s = vec![ZERO; d * d * d];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // E_ij E_jl = E_il
                let a = i * n + j;
                let b = j * n + l;
                let c = i * n + l;
                s[(a * d + b) * d + c] = ONE;
            }
        }
    }
    let labels = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1)))
        .collect();
    Algebra::builder(d, s)
        .labels(labels)
        .build()
        .expect("matrix units are associative")
}

/// Verified multiplication table of a finite group: `table[i][j]` is the
/// index of `g_i g_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl GroupTable {
    /// Checks closure, associativity, identity and inverses.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {i} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::NotAGroup(format!("entry {bad} in row {i} is out of range")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let inverses = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == identity && table[h][g] == identity)
                    .ok_or_else(|| Error::NotAGroup(format!("element {g} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupTable {
            table,
            identity,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Whether `subset` is a normal subgroup.
    pub fn is_normal_subgroup(&self, subset: &[usize]) -> bool {
        let n = self.order();
        let mut member = vec![false; n];
        for &s in subset {
            if s >= n {
                return false;
            }
            member[s] = true;
        }
        if !member[self.identity] {
            return false;
        }
        let closed = subset
            .iter()
            .all(|&a| member[self.inverse(a)] && subset.iter().all(|&b| member[self.mul(a, b)]));
        closed
            && (0..n).all(|g| {
                subset
                    .iter()
                    .all(|&h| member[self.mul(self.mul(g, h), self.inverse(g))])
            })
    }
}

/// Cyclic group ℤₙ with `g_i g_j = g_{(i+j) mod n}`; index 0 is the identity.
pub fn cyclic_group_table(n: usize) -> GroupTable {
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    GroupTable::new(table).expect("cyclic table is a group")
}

/// S₃ acting on three points, elements indexed in lexicographic order of
/// their images.
pub fn symmetric_group_3_table() -> GroupTable {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let table = perms
        .iter()
        .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect();
    GroupTable::new(table).expect("S3 table is a group")
}

/// Direct product G × H with `(g, h) ↦ g·|H| + h`.
pub fn direct_product_table(g: &GroupTable, h: &GroupTable) -> GroupTable {
    let (m, k) = (g.order(), h.order());
    let table = (0..m * k)
        .map(|a| {
            (0..m * k)
                .map(|b| g.mul(a / k, b / k) * k + h.mul(a % k, b % k))
                .collect()
        })
        .collect();
    GroupTable::new(table).expect("product of groups is a group")
}

/// All normal subgroups, found by brute force over subsets (orders up to 16).
pub fn normal_subgroups(g: &GroupTable) -> Vec<Vec<usize>> {
    let n = g.order();
    assert!(n <= 16, "subset enumeration limited to order 16");
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if g.is_normal_subgroup(&subset) {
            out.push(subset);
        }
    }
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

/// Group algebra ℂ[G] on the basis of group elements.
pub fn group_algebra(g: &GroupTable, labels: Option<Vec<String>>) -> Result<Algebra> {
    let n = g.order();
    let mut s = vec![ZERO; n * n * n];
    for a in 0..n {
        for b in 0..n {
            s[(a * n + b) * n + g.mul(a, b)] = ONE;
        }
    }
    let labels = labels.unwrap_or_else(|| {
        (0..n)
            .map(|i| {
                if i == g.identity() {
                    "e".to_string()
                } else {
                    format!("g{i}")
                }
            })
            .collect()
    });
    let mut identity = vec![ZERO; n];
    identity[g.identity()] = ONE;
    Algebra::builder(n, s).labels(labels).identity(identity).build()
}

/// Direct product A × B with coordinatewise multiplication.
pub fn product(a: &Algebra, b: &Algebra) -> Algebra {
    let (m, k) = (a.dim(), b.dim());
    let d = m + k;
    let mut s = vec![ZERO; d * d * d];
    for i in 0..m {
        for j in 0..m {
            for l in 0..m {
                s[(i * d + j) * d + l] = a.c(i, j, l);
            }
        }
    }
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                s[((m + i) * d + m + j) * d + m + l] = b.c(i, j, l);
            }
        }
    }
    let labels = a
        .labels()
        .iter()
        .map(|l| format!("1:{l}"))
        .chain(b.labels().iter().map(|l| format!("2:{l}")))
        .collect();
    Algebra::builder(d, s)
        .labels(labels)
        .norm(a.norm_kind())
        .tolerance(a.tol())
        .allow_empty()
        .build()
        .expect("product of associative algebras is associative")
}

/// Named constructions accepted by [`construct_standard`].
#[derive(Debug, Clone)]
pub enum StandardKind<'a> {
    Function(usize),
    Matrix(usize),
    Group(Vec<Vec<usize>>),
    Product(&'a Algebra, &'a Algebra),
    Opposite(&'a Algebra),
}

pub fn construct_standard(kind: StandardKind<'_>) -> Result<Algebra> {
    match kind {
        StandardKind::Function(n) if n > 0 => Ok(function_algebra(n)),
        StandardKind::Matrix(n) if n > 0 => Ok(matrix_algebra(n)),
        StandardKind::Function(_) | StandardKind::Matrix(_) => Err(Error::Input("size must be positive".into())),
        StandardKind::Group(table) => group_algebra(&GroupTable::new(table)?, None),
        StandardKind::Product(a, b) => Ok(product(a, b)),
        StandardKind::Opposite(a) => Ok(a.opposite()),
    }
}
