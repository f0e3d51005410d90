//! Finite-dimensional Lie algebras over `F_p` given by structure constants.
//!
//! The role of `c_X` is played by `ad: L → Der(L)`. Derivations are the
//! nullspace of the linear system `D[x,y] = [Dx,y] + [x,Dy]` in `d²`
//! unknowns, and a derivation's coordinates are its entries at the free
//! columns of the reduced system.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// A `rows × cols` matrix over `F_p`, row-major. Acts on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearMap {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u32>,
}

impl LinearMap {
    pub fn zero(rows: usize, cols: usize) -> LinearMap {
        LinearMap {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.cols + c] = v;
    }

    fn compose(&self, other: &LinearMap, p: u32) -> LinearMap {
        let mut out = LinearMap::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s = (0..self.cols).fold(0u64, |acc, k| acc + (self.get(i, k) as u64) * (other.get(k, j) as u64));
                out.set(i, j, (s % p as u64) as u32);
            }
        }
        out
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2)
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<u32>], cols: usize, p: u32) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(k) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, k);
        let inv = inv_mod(m[row][col], p);
        for v in m[row].iter_mut() {
            *v = (*v as u64 * inv as u64 % p as u64) as u32;
        }
        let pivot = m[row].clone();
        for (r, line) in m.iter_mut().enumerate() {
            if r != row && line[col] != 0 {
                let f = line[col] as u64;
                for (v, &q) in line.iter_mut().zip(&pivot) {
                    let sub = f * q as u64 % p as u64;
                    *v = ((*v as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Basis of `{v : Mv = 0}` for an equation list over `cols` unknowns,
/// with the free column of each basis vector.
fn nullspace(mut eqs: Vec<Vec<u32>>, cols: usize, p: u32) -> (Vec<Vec<u32>>, Vec<usize>) {
    let pivots = rref(&mut eqs, cols, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u32; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - eqs[r][f]) % p;
            }
            v
        })
        .collect();
    (basis, free)
}

fn rank(rows: Vec<Vec<u32>>, cols: usize, p: u32) -> usize {
    let mut rows = rows;
    rref(&mut rows, cols, p).len()
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    p: u32,
    dim: usize,
    /// `c[i][j][k]` flattened: `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
    sc: Vec<u32>,
    name: String,
}

impl LieAlgebra {
    pub fn new(p: u32, dim: usize, sc: Vec<u32>, name: impl Into<String>) -> Result<LieAlgebra> {
        let name = name.into();
        if !is_prime(p) || p >= 1 << 16 {
            return Err(Error::LieInvalid(format!("{name}: {p} is not a prime below 65536")));
        }
        if sc.len() != dim * dim * dim || sc.iter().any(|&c| c >= p) {
            return Err(Error::LieInvalid(format!(
                "{name}: structure constants have the wrong shape"
            )));
        }
        let l = LieAlgebra { p, dim, sc, name };
        l.validate()?;
        Ok(l)
    }

    /// Sparse constructor: each `(i, j, k, c)` sets `[e_i, e_j]` to have
    /// coefficient `c` on `e_k`, and `[e_j, e_i]` the negative.
    pub fn from_brackets(
        p: u32,
        dim: usize,
        brackets: &[(usize, usize, usize, i64)],
        name: impl Into<String>,
    ) -> Result<LieAlgebra> {
        let name = name.into();
        if p == 0 {
            return Err(Error::LieInvalid(format!("{name}: 0 is not prime")));
        }
        let mut sc = vec![0u32; dim * dim * dim];
        for &(i, j, k, c) in brackets {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::LieInvalid(format!("{name}: basis index out of range")));
            }
            let c = c.rem_euclid(p as i64) as u32;
            sc[(i * dim + j) * dim + k] = c;
            sc[(j * dim + i) * dim + k] = (p - c) % p;
        }
        LieAlgebra::new(p, dim, sc, name)
    }

    pub fn abelian(p: u32, dim: usize) -> Result<LieAlgebra> {
        LieAlgebra::new(p, dim, vec![0; dim * dim * dim], format!("ab{dim}(F{p})"))
    }

    /// Basis `e, h, f` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn sl2(p: u32) -> Result<LieAlgebra> {
        LieAlgebra::from_brackets(p, 3, &[(1, 0, 0, 2), (1, 2, 2, -2), (0, 2, 1, 1)], format!("sl2(F{p})"))
    }

    /// `[e_1, e_2] = e_2`.
    pub fn affine_line(p: u32) -> Result<LieAlgebra> {
        LieAlgebra::from_brackets(p, 2, &[(0, 1, 1, 1)], format!("aff1(F{p})"))
    }

    /// Strictly upper triangular 3×3 matrices: `[x, y] = z`.
    pub fn heisenberg(p: u32) -> Result<LieAlgebra> {
        LieAlgebra::from_brackets(p, 3, &[(0, 1, 2, 1)], format!("heis(F{p})"))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> LieAlgebra {
        self.name = name.into();
        self
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> u32 {
        self.sc[(i * self.dim + j) * self.dim + k]
    }

    pub fn bracket(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let (d, p) = (self.dim, self.p as u64);
        let mut out = vec![0u64; d];
        for (i, &xi) in x.iter().enumerate().take(d) {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate().take(d) {
                if yj == 0 {
                    continue;
                }
                let f = xi as u64 * yj as u64 % p;
                for (k, o) in out.iter_mut().enumerate() {
                    *o = (*o + f * self.c(i, j, k) as u64) % p;
                }
            }
        }
        out.into_iter().map(|v| v as u32).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let (d, p) = (self.dim, self.p);
        for i in 0..d {
            for k in 0..d {
                if self.c(i, i, k) != 0 {
                    return Err(Error::LieInvalid(format!("{}: [e{i}, e{i}] is not zero", self.name)));
                }
                for j in 0..d {
                    if !(self.c(i, j, k) + self.c(j, i, k)).is_multiple_of(p) {
                        return Err(Error::LieInvalid(format!(
                            "{}: bracket not antisymmetric at ({i}, {j})",
                            self.name
                        )));
                    }
                }
            }
        }
        let e = |i: usize| -> Vec<u32> { (0..d).map(|k| (k == i) as u32).collect() };
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let a = self.bracket(&e(i), &self.bracket(&e(j), &e(k)));
                    let b = self.bracket(&e(j), &self.bracket(&e(k), &e(i)));
                    let c = self.bracket(&e(k), &self.bracket(&e(i), &e(j)));
                    if (0..d).any(|t| !(a[t] + b[t] + c[t]).is_multiple_of(p)) {
                        return Err(Error::LieInvalid(format!(
                            "{}: Jacobi fails for ({i}, {j}, {k})",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `ad_x` as a matrix: column `b` is `[x, e_b]`.
    pub fn ad(&self, x: &[u32]) -> LinearMap {
        let d = self.dim;
        let mut m = LinearMap::zero(d, d);
        for b in 0..d {
            let e: Vec<u32> = (0..d).map(|k| (k == b) as u32).collect();
            for (a, v) in self.bracket(x, &e).into_iter().enumerate() {
                m.set(a, b, v);
            }
        }
        m
    }

    /// Kernel of `ad` by linear algebra.
    pub fn center_basis(&self) -> Vec<Vec<u32>> {
        let d = self.dim;
        // x ∈ Z iff Σ_i x_i c[i][b][a] = 0 for all (a, b)
        let eqs = (0..d)
            .flat_map(|a| (0..d).map(move |b| (a, b)))
            .map(|(a, b)| (0..d).map(|i| self.c(i, b, a)).collect())
            .collect();
        nullspace(eqs, d, self.p).0
    }

    /// True iff the brackets `[e_i, e_j]` span `L`.
    pub fn is_perfect(&self) -> bool {
        let d = self.dim;
        let rows = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| (0..d).map(|k| self.c(i, j, k)).collect())
            .collect();
        rank(rows, d, self.p) == d
    }
}

#[derive(Debug, Clone)]
pub struct Derivations {
    /// Basis of `Der(L)` as `d × d` matrices.
    pub basis: Vec<LinearMap>,
    /// `Der(L)` with `[D, D'] = DD' − D'D` in this basis.
    pub algebra: LieAlgebra,
    /// Coordinates of `ad_{e_i}` in the basis, one row per `i`.
    pub ad: Vec<Vec<u32>>,
    free: Vec<usize>,
}

impl Derivations {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a derivation, read off at the free unknowns.
    pub fn coordinates(&self, m: &LinearMap) -> Vec<u32> {
        self.free.iter().map(|&f| m.entries[f]).collect()
    }
}

pub fn lie_derivations(l: &LieAlgebra) -> Result<Derivations> {
    let (d, p) = (l.dim, l.p);
    let var = |r: usize, s: usize| r * d + s;
    let mut eqs = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            for a in 0..d {
                let mut eq = vec![0u32; d * d];
                for k in 0..d {
                    let v = &mut eq[var(a, k)];
                    *v = (*v + l.c(i, j, k)) % p;
                }
                for b in 0..d {
                    let v = &mut eq[var(b, i)];
                    *v = (*v + p - l.c(b, j, a)) % p;
                    let v = &mut eq[var(b, j)];
                    *v = (*v + p - l.c(i, b, a)) % p;
                }
                eq.iter_mut().for_each(|v| *v %= p);
                eqs.push(eq);
            }
        }
    }
    let (vecs, free) = nullspace(eqs, d * d, p);
    let basis: Vec<LinearMap> = vecs
        .into_iter()
        .map(|entries| LinearMap {
            rows: d,
            cols: d,
            entries,
        })
        .collect();
    let n = basis.len();
    let coords = |m: &LinearMap| -> Vec<u32> { free.iter().map(|&f| m.entries[f]).collect() };
    let mut sc = vec![0u32; n * n * n];
    for a in 0..n {
        for b in 0..n {
            let ab = basis[a].compose(&basis[b], p);
            let ba = basis[b].compose(&basis[a], p);
            let comm = LinearMap {
                rows: d,
                cols: d,
                entries: ab
                    .entries
                    .iter()
                    .zip(&ba.entries)
                    .map(|(&x, &y)| (x + p - y) % p)
                    .collect(),
            };
            for (k, c) in coords(&comm).into_iter().enumerate() {
                sc[(a * n + b) * n + k] = c;
            }
        }
    }
    let algebra = LieAlgebra::new(p, n, sc, format!("Der({})", l.name))?;
    let ad = (0..d)
        .map(|i| {
            let e: Vec<u32> = (0..d).map(|k| (k == i) as u32).collect();
            coords(&l.ad(&e))
        })
        .collect();
    Ok(Derivations {
        basis,
        algebra,
        ad,
        free,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieReport {
    pub object: String,
    pub p: u32,
    pub dim: usize,
    pub der_dim: usize,
    pub center_dim: usize,
    pub perfect: bool,
    pub ad_rank: usize,
    pub proto_complete: bool,
    /// A section `Der(L) → L` of `ad`, one image vector per basis derivation.
    pub section: Option<Vec<Vec<u32>>>,
    pub strong_complete: bool,
    /// Set when `L` is perfect and centerless: `Der(L)` is strong-complete.
    pub derivations_strong_complete: Option<bool>,
}

/// Largest parameters for which the section search runs.
pub const SECTION_SEARCH_DIM: usize = 4;
pub const SECTION_SEARCH_PRIME: u32 = 7;

pub fn lie_classify(l: &LieAlgebra, limits: &Limits) -> Result<LieReport> {
    let der = lie_derivations(l)?;
    let (d, p, n) = (l.dim, l.p, der.dim());
    let ad_rank = rank(der.ad.clone(), n, p);
    let center = l.center_basis();
    let strong = ad_rank == d && ad_rank == n;
    let section = if ad_rank == n {
        find_section(l, &der, &center, limits)?
    } else {
        None
    };
    let mut derivations_strong_complete = None;
    if l.is_perfect() && center.is_empty() && d > 0 {
        let dd = lie_derivations(&der.algebra)?;
        let r = rank(dd.ad.clone(), dd.dim(), p);
        let ok = r == n && r == dd.dim();
        if !ok {
            return Err(Error::Violation(format!("{}: Der is not strong-complete", l.name)));
        }
        derivations_strong_complete = Some(ok);
    }
    Ok(LieReport {
        object: l.name.clone(),
        p,
        dim: d,
        der_dim: n,
        center_dim: center.len(),
        perfect: l.is_perfect(),
        ad_rank,
        proto_complete: section.is_some(),
        section,
        strong_complete: strong,
        derivations_strong_complete,
    })
}

/// A linear `s: Der(L) → L` with `ad ∘ s = id` preserving brackets.
/// Every linear section is `s₀ + t` with `t: Der(L) → Z(L)`.
fn find_section(
    l: &LieAlgebra,
    der: &Derivations,
    center: &[Vec<u32>],
    limits: &Limits,
) -> Result<Option<Vec<Vec<u32>>>> {
    let (d, p, n) = (l.dim, l.p, der.dim());
    // solve Σ_i x_i ad_i = D_t for each basis derivation t
    let mut s0 = Vec::with_capacity(n);
    for t in 0..n {
        let mut aug: Vec<Vec<u32>> = (0..n)
            .map(|k| {
                let mut row: Vec<u32> = (0..d).map(|i| der.ad[i][k]).collect();
                row.push((k == t) as u32);
                row
            })
            .collect();
        let pivots = rref(&mut aug, d + 1, p);
        if pivots.contains(&d) {
            return Ok(None);
        }
        let mut x = vec![0u32; d];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[r][d];
        }
        s0.push(x);
    }
    let brackets_ok = |s: &[Vec<u32>]| {
        (0..n).all(|a| {
            (0..n).all(|b| {
                let lhs = (0..n).fold(vec![0u32; d], |acc, k| {
                    let c = der.algebra.c(a, b, k);
                    acc.iter().zip(&s[k]).map(|(&u, &v)| (u + c * v) % p).collect()
                });
                lhs == l.bracket(&s[a], &s[b])
            })
        })
    };
    let z = center.len();
    if z == 0 {
        return Ok(brackets_ok(&s0).then_some(s0));
    }
    if d > SECTION_SEARCH_DIM || p > SECTION_SEARCH_PRIME {
        return Err(Error::LieInvalid(format!(
            "{}: section search is limited to dimension {SECTION_SEARCH_DIM} over primes up to {SECTION_SEARCH_PRIME}",
            l.name
        )));
    }
    // coefficients of t: n·z digits base p
    let digits = n * z;
    let total = (p as u64).checked_pow(digits as u32).unwrap_or(u64::MAX);
    if total > limits.search_budget {
        return Err(Error::SearchBudgetExceeded {
            budget: limits.search_budget,
        });
    }
    let mut coeff = vec![0u32; digits];
    for _ in 0..total {
        let s: Vec<Vec<u32>> = (0..n)
            .map(|t| {
                let mut x = s0[t].clone();
                for (j, zb) in center.iter().enumerate() {
                    let c = coeff[t * z + j];
                    for (xi, &zi) in x.iter_mut().zip(zb) {
                        *xi = (*xi + c * zi) % p;
                    }
                }
                x
            })
            .collect();
        if brackets_ok(&s) {
            return Ok(Some(s));
        }
        for c in coeff.iter_mut() {
            *c += 1;
            if *c < p {
                break;
            }
            *c = 0;
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieFile {
    pub name: Option<String>,
    pub p: u32,
    pub dim: usize,
    /// Entries `[i, j, k, c]`: coefficient `c` of `e_k` in `[e_i, e_j]`.
    #[serde(default)]
    pub brackets: Vec<(usize, usize, usize, i64)>,
}

impl LieFile {
    pub fn load(&self) -> Result<LieAlgebra> {
        let name = self
            .name
            .clone()
            .unwrap_or_else(|| format!("L{}(F{})", self.dim, self.p));
        LieAlgebra::from_brackets(self.p, self.dim, &self.brackets, name)
    }
}
