//! Finite groups given by a Cayley table and a complete list of unitary
//! irreducible representations.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vn_model::{CMatrix, C64};

const TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Irrep {
    pub dim: usize,
    /// `matrices[g]` is `π(g)`.
    pub matrices: Vec<CMatrix>,
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    irreps: Vec<Irrep>,
    generators: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct IrrepRepr {
    dim: usize,
    matrices: Vec<Vec<[f64; 2]>>,
}

/// On-disk shape of a group table.
#[derive(Serialize, Deserialize)]
pub struct GroupTable {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    order: usize,
    table: Vec<Vec<usize>>,
    irreps: Vec<IrrepRepr>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table (group axioms) and the representations
    /// (unitarity, homomorphism, orthonormal characters, `Σ d_π² = |G|`).
    pub fn new(name: &str, table: Vec<Vec<usize>>, irreps: Vec<Irrep>, generators: Vec<usize>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidGroup(m));
        let n = table.len();
        if n == 0 {
            return bad("empty table".into());
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&e| e >= n)) {
            return bad("table must be square with entries below the order".into());
        }
        let identity = match (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g)) {
            Some(e) => e,
            None => return bad("no identity element".into()),
        };
        let mut inverses = vec![0; n];
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity) {
                Some(h) => inverses[g] = h,
                None => return bad(format!("element {g} has no inverse")),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("associativity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        if generators.iter().any(|&g| g >= n) {
            return bad("generator out of range".into());
        }

        let dim_sum: usize = irreps.iter().map(|r| r.dim * r.dim).sum();
        if dim_sum != n {
            return bad(format!("representation list incomplete: Σ d² = {dim_sum} ≠ |G| = {n}"));
        }
        for (idx, r) in irreps.iter().enumerate() {
            if r.matrices.len() != n || r.matrices.iter().any(|m| m.nrows() != r.dim || m.ncols() != r.dim) {
                return bad(format!("irrep {idx} needs {n} matrices of size {}", r.dim));
            }
            let id = CMatrix::identity(r.dim, r.dim);
            for m in &r.matrices {
                if max_abs(&(m.adjoint() * m - &id)) > TOL {
                    return bad(format!("irrep {idx} is not unitary"));
                }
            }
            for (a, ma) in r.matrices.iter().enumerate() {
                for (b, mb) in r.matrices.iter().enumerate() {
                    if max_abs(&(ma * mb - &r.matrices[table[a][b]])) > TOL {
                        return bad(format!("irrep {idx} is not a homomorphism at ({a}, {b})"));
                    }
                }
            }
        }
        let chars: Vec<Vec<C64>> = irreps.iter().map(|r| r.matrices.iter().map(|m| m.trace()).collect()).collect();
        for (i, ci) in chars.iter().enumerate() {
            for (j, cj) in chars.iter().enumerate() {
                let ip: C64 = ci.iter().zip(cj).map(|(a, b)| a * b.conj()).sum::<C64>() / n as f64;
                let expected = if i == j { 1.0 } else { 0.0 };
                if (ip - C64::new(expected, 0.0)).norm() > TOL {
                    return bad(format!("characters {i} and {j} are not orthonormal"));
                }
            }
        }
        Ok(FiniteGroup { name: name.to_string(), table, identity, inverses, irreps, generators })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let t: GroupTable = serde_json::from_str(text)?;
        if t.order != t.table.len() {
            return Err(Error::InvalidGroup(format!("order {} but table has {} rows", t.order, t.table.len())));
        }
        let mut irreps = Vec::with_capacity(t.irreps.len());
        for r in t.irreps {
            let mut matrices = Vec::with_capacity(r.matrices.len());
            for flat in r.matrices {
                if flat.len() != r.dim * r.dim {
                    return Err(Error::InvalidGroup("matrix size does not match irrep dimension".into()));
                }
                matrices.push(CMatrix::from_fn(r.dim, r.dim, |i, j| {
                    let [re, im] = flat[i * r.dim + j];
                    C64::new(re, im)
                }));
            }
            irreps.push(Irrep { dim: r.dim, matrices });
        }
        let name = t.name.unwrap_or_else(|| format!("G{}", t.order));
        FiniteGroup::new(&name, t.table, irreps, t.generators)
    }

    pub fn to_json(&self) -> Result<String> {
        let irreps = self
            .irreps
            .iter()
            .map(|r| IrrepRepr {
                dim: r.dim,
                matrices: r
                    .matrices
                    .iter()
                    .map(|m| {
                        let mut flat = Vec::with_capacity(m.len());
                        for i in 0..m.nrows() {
                            for j in 0..m.ncols() {
                                flat.push([m[(i, j)].re, m[(i, j)].im]);
                            }
                        }
                        flat
                    })
                    .collect(),
            })
            .collect();
        let t = GroupTable {
            name: Some(self.name.clone()),
            order: self.order(),
            table: self.table.clone(),
            irreps,
            generators: self.generators.clone(),
        };
        Ok(serde_json::to_string(&t)?)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    /// Generating set closed under inverses; all non-identity elements when
    /// the table came without generators.
    pub fn symmetric_generators(&self) -> Vec<usize> {
        let mut s: Vec<usize> = if self.generators.is_empty() {
            (0..self.order()).filter(|&g| g != self.identity).collect()
        } else {
            self.generators.iter().flat_map(|&g| [g, self.inverses[g]]).collect()
        };
        s.sort_unstable();
        s.dedup();
        s.retain(|&g| g != self.identity);
        s
    }

    /// Word length of every element with respect to the symmetric generators.
    pub fn word_lengths(&self) -> Vec<usize> {
        let gens = self.symmetric_generators();
        let mut dist = vec![usize::MAX; self.order()];
        dist[self.identity] = 0;
        let mut frontier = vec![self.identity];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &g in &frontier {
                for &s in &gens {
                    let h = self.table[g][s];
                    if dist[h] == usize::MAX {
                        dist[h] = dist[g] + 1;
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    /// `ℤ_n` with characters `π_k(g) = e^{2πi gk/n}`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("order must be positive".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let irreps = (0..n)
            .map(|k| Irrep {
                dim: 1,
                matrices: (0..n).map(|g| CMatrix::from_element(1, 1, root_of_unity(g * k, n))).collect(),
            })
            .collect();
        let generators = if n > 1 { vec![1] } else { Vec::new() };
        FiniteGroup::new(&format!("Z{n}"), table, irreps, generators)
    }

    /// Direct product with tensor-product irreducibles; element `(a, b)` has
    /// index `a·|B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let (na, nb) = (a.order(), b.order());
        let idx = |x: usize, y: usize| x * nb + y;
        let table = (0..na * nb)
            .map(|g| (0..na * nb).map(|h| idx(a.mul(g / nb, h / nb), b.mul(g % nb, h % nb))).collect())
            .collect();
        let mut irreps = Vec::new();
        for ra in &a.irreps {
            for rb in &b.irreps {
                let matrices = (0..na * nb).map(|g| ra.matrices[g / nb].kronecker(&rb.matrices[g % nb])).collect();
                irreps.push(Irrep { dim: ra.dim * rb.dim, matrices });
            }
        }
        let mut generators: Vec<usize> = a.generators.iter().map(|&g| idx(g, b.identity)).collect();
        generators.extend(b.generators.iter().map(|&g| idx(a.identity, g)));
        FiniteGroup::new(&format!("{}x{}", a.name, b.name), table, irreps, generators)
    }

    pub fn klein_four() -> Result<Self> {
        let z2 = FiniteGroup::cyclic(2)?;
        FiniteGroup::direct_product(&z2, &z2)
    }

    /// `S_3` or `S_4`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if !(n == 3 || n == 4) {
            return Err(Error::InvalidGroup(format!("only S3 and S4 are bundled, asked for S{n}")));
        }
        let perms = permutations(n);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|s| perms.iter().map(|t| index(&compose(s, t))).collect())
            .collect();
        let sign = |p: &[usize]| if parity(p) { -1.0 } else { 1.0 };

        let mut irreps = vec![
            scalar_irrep(perms.iter().map(|_| 1.0)),
            scalar_irrep(perms.iter().map(|p| sign(p))),
        ];
        let standard: Vec<CMatrix> = perms.iter().map(|p| standard_rep(p)).collect();
        if n == 4 {
            // S4 → S3 through its action on the three pairings {0k | rest}
            let pairing_of = |p: &[usize], k: usize| -> usize {
                let (a, b) = (p[0], p[k]);
                let partner = if a == 0 { b } else if b == 0 { a } else { 6 - a - b };
                partner - 1
            };
            let two_dim: Vec<CMatrix> = perms
                .iter()
                .map(|p| {
                    let image: Vec<usize> = (1..4).map(|k| pairing_of(p, k)).collect();
                    standard_rep(&image)
                })
                .collect();
            irreps.push(Irrep { dim: 2, matrices: two_dim });
            let twisted = perms.iter().zip(&standard).map(|(p, m)| m * C64::new(sign(p), 0.0)).collect();
            irreps.push(Irrep { dim: 3, matrices: standard });
            irreps.push(Irrep { dim: 3, matrices: twisted });
        } else {
            irreps.push(Irrep { dim: 2, matrices: standard });
        }
        let generators = (0..n - 1)
            .map(|i| {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(i, i + 1);
                index(&p)
            })
            .collect();
        FiniteGroup::new(&format!("S{n}"), table, irreps, generators)
    }

    /// Dihedral group of the square, `r^a s^b ↦ a + 4b`.
    pub fn dihedral4() -> Result<Self> {
        let elem = |g: usize| (g % 4, g / 4);
        let index = |a: usize, b: usize| a % 4 + 4 * (b % 2);
        let table = (0..8)
            .map(|g| {
                (0..8)
                    .map(|h| {
                        let ((a, b), (c, d)) = (elem(g), elem(h));
                        let rot = if b == 0 { a + c } else { a + 4 - c };
                        index(rot, b + d)
                    })
                    .collect()
            })
            .collect();
        let mut irreps = Vec::new();
        for e1 in [1.0, -1.0] {
            for e2 in [1.0, -1.0] {
                irreps.push(scalar_irrep((0..8).map(|g| {
                    let (a, b) = elem(g);
                    f64::powi(e1, a as i32) * f64::powi(e2, b as i32)
                })));
            }
        }
        let r = real_matrix(2, &[0.0, -1.0, 1.0, 0.0]);
        let s = real_matrix(2, &[1.0, 0.0, 0.0, -1.0]);
        let two_dim = (0..8)
            .map(|g| {
                let (a, b) = elem(g);
                let mut m = CMatrix::identity(2, 2);
                for _ in 0..a {
                    m = &m * &r;
                }
                if b == 1 {
                    m = &m * &s;
                }
                m
            })
            .collect();
        irreps.push(Irrep { dim: 2, matrices: two_dim });
        FiniteGroup::new("D4", table, irreps, vec![1, 4])
    }

    /// Quaternion group, elements ordered `1, −1, i, −i, j, −j, k, −k`.
    pub fn quaternion() -> Result<Self> {
        let i = C64::new(0.0, 1.0);
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        let base = [
            CMatrix::from_row_slice(2, 2, &[l, o, o, l]),
            CMatrix::from_row_slice(2, 2, &[i, o, o, -i]),
            CMatrix::from_row_slice(2, 2, &[o, l, -l, o]),
            CMatrix::from_row_slice(2, 2, &[o, i, i, o]),
        ];
        let mats: Vec<CMatrix> = base.iter().flat_map(|m| [m.clone(), -m.clone()]).collect();
        let lookup = |m: &CMatrix| mats.iter().position(|q| max_abs(&(q - m)) < 1e-12).unwrap();
        let table = mats.iter().map(|a| mats.iter().map(|b| lookup(&(a * b))).collect()).collect();
        let mut irreps = Vec::new();
        for a in [1.0, -1.0] {
            for b in [1.0, -1.0] {
                // Q8/{±1} ≅ ℤ2 × ℤ2: χ(±i) = a, χ(±j) = b, χ(±k) = ab
                let unit = [1.0, a, b, a * b];
                irreps.push(scalar_irrep((0..8).map(|g| unit[g / 2])));
            }
        }
        irreps.push(Irrep { dim: 2, matrices: mats.clone() });
        FiniteGroup::new("Q8", table, irreps, vec![2, 4])
    }

    /// Bundled groups: `Z<N>`, `Z2xZ2`, `S3`, `S4`, `D4`, `Q8`.
    pub fn bundled(name: &str) -> Result<Self> {
        match name {
            "S3" => FiniteGroup::symmetric(3),
            "S4" => FiniteGroup::symmetric(4),
            "D4" => FiniteGroup::dihedral4(),
            "Q8" => FiniteGroup::quaternion(),
            "Z2xZ2" | "V4" => FiniteGroup::klein_four(),
            _ => match name.strip_prefix('Z').and_then(|s| s.parse::<usize>().ok()) {
                Some(n) => FiniteGroup::cyclic(n),
                None => Err(Error::InvalidGroup(format!("unknown bundled group {name}"))),
            },
        }
    }
}

pub(crate) fn root_of_unity(m: usize, n: usize) -> C64 {
    let angle = 2.0 * PI * ((m % n) as f64) / n as f64;
    C64::new(angle.cos(), angle.sin())
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn scalar_irrep(values: impl Iterator<Item = f64>) -> Irrep {
    Irrep { dim: 1, matrices: values.map(|v| CMatrix::from_element(1, 1, C64::new(v, 0.0))).collect() }
}

fn real_matrix(n: usize, entries: &[f64]) -> CMatrix {
    CMatrix::from_fn(n, n, |i, j| C64::new(entries[i * n + j], 0.0))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n {
            if !prefix.contains(&v) {
                prefix.push(v);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

/// `(s ∘ t)(i) = s(t(i))`.
fn compose(s: &[usize], t: &[usize]) -> Vec<usize> {
    t.iter().map(|&i| s[i]).collect()
}

/// True for odd permutations.
fn parity(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Permutation matrix `e_i ↦ e_{p(i)}` restricted to the sum-zero subspace,
/// in the Helmert orthonormal basis.
fn standard_rep(p: &[usize]) -> CMatrix {
    let n = p.len();
    let basis = nalgebra::DMatrix::<f64>::from_fn(n, n - 1, |i, j| {
        let j = j + 1;
        let norm = ((j * (j + 1)) as f64).sqrt();
        if i < j {
            1.0 / norm
        } else if i == j {
            -(j as f64) / norm
        } else {
            0.0
        }
    });
    let perm = nalgebra::DMatrix::<f64>::from_fn(n, n, |i, j| if p[j] == i { 1.0 } else { 0.0 });
    let m = basis.transpose() * perm * basis;
    m.map(|v| C64::new(v, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_groups_validate() {
        for (name, order, dims) in [
            ("S3", 6, vec![1, 1, 2]),
            ("S4", 24, vec![1, 1, 2, 3, 3]),
            ("D4", 8, vec![1, 1, 1, 1, 2]),
            ("Q8", 8, vec![1, 1, 1, 1, 2]),
            ("Z2xZ2", 4, vec![1, 1, 1, 1]),
            ("Z5", 5, vec![1; 5]),
        ] {
            let g = FiniteGroup::bundled(name).unwrap();
            assert_eq!(g.order(), order, "{name}");
            let d: Vec<usize> = g.irreps().iter().map(|r| r.dim).collect();
            assert_eq!(d, dims, "{name}");
        }
    }

    #[test]
    fn incomplete_irreps_rejected() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let partial = g.irreps()[..2].to_vec();
        let err = FiniteGroup::new("S3", g.table.clone(), partial, vec![]).unwrap_err();
        assert!(err.to_string().contains("incomplete"));
    }

    #[test]
    fn non_group_rejected() {
        // a Latin square with identity 0 that is not associative
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::new("L5", table, vec![], vec![]).unwrap_err();
        assert!(err.to_string().contains("associativity"));
    }

    #[test]
    fn json_roundtrip_and_word_lengths() {
        let g = FiniteGroup::dihedral4().unwrap();
        let h = FiniteGroup::from_json(&g.to_json().unwrap()).unwrap();
        assert_eq!(h.order(), 8);
        assert_eq!(h.word_lengths(), g.word_lengths());
        assert_eq!(g.word_lengths().iter().max(), Some(&3));
        let s4 = FiniteGroup::symmetric(4).unwrap();
        // adjacent transpositions: the longest permutation has 6 inversions
        assert_eq!(s4.word_lengths().iter().max(), Some(&6));
    }
}
