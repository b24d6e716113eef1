//! Finite crystallographic root systems in Bourbaki numbering.
//!
//! Roots are integer vectors in the simple-root basis. Weights are rational
//! vectors of pairings `coords[i] = <λ, α_i^∨>`, so `ρ` is the all-ones vector
//! and a simple root `α_j` has weight coordinates given by column `j` of the
//! Cartan matrix, `cartan[i][j] = <α_j, α_i^∨>`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Q = Rational64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    series: Series,
    rank: usize,
}

impl LieType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(LieType { series, rank })
        } else {
            Err(Error::InvalidType(format!("{series:?}{rank}")))
        }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Half the squared length of each simple root, normalized so short roots have 1.
    fn simple_root_norms(&self) -> Vec<i64> {
        let n = self.rank;
        match self.series {
            Series::A | Series::D | Series::E => vec![1; n],
            Series::B => (0..n).map(|i| if i + 1 < n { 2 } else { 1 }).collect(),
            Series::C => (0..n).map(|i| if i + 1 < n { 1 } else { 2 }).collect(),
            Series::F => vec![2, 2, 1, 1],
            Series::G => vec![1, 3],
        }
    }

    fn dynkin_edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.series {
            Series::A | Series::B | Series::C | Series::F | Series::G => {
                (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
            }
            Series::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Series::E => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// Cartan matrix with `cartan[i][j] = <α_j, α_i^∨>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let d = self.simple_root_norms();
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in self.dynkin_edges() {
            let ip = -d[i].max(d[j]);
            a[i][j] = ip / d[i];
            a[j][i] = ip / d[j];
        }
        a
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1) / 2,
            Series::B | Series::C => n * n,
            Series::D => n * (n - 1),
            Series::E => [36, 63, 120][n - 6],
            Series::F => 24,
            Series::G => 6,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidType(s.to_string());
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        LieType::new(series, rank).map_err(|_| bad())
    }
}

/// A weight, stored as its pairings with the simple coroots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Q>);

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Weight(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| Q::from_integer(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![Q::zero(); rank])
    }

    pub fn rho(rank: usize) -> Self {
        Weight(vec![Q::one(); rank])
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: Q) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    /// Parses comma-separated rationals, e.g. `-1,1/2`.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let w: Weight = s.parse()?;
        if w.rank() != rank {
            return Err(Error::RankMismatch { got: w.rank(), rank });
        }
        Ok(w)
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|part| {
                let part = part.trim();
                let q: Q = part
                    .parse()
                    .map_err(|_| Error::MalformedWeight(s.to_string(), format!("bad rational `{part}`")))?;
                Ok(q)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight(coords))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Positive roots, coroots and the Cartan data of a finite root system.
#[derive(Debug, Clone)]
pub struct RootSystem {
    lie_type: LieType,
    cartan: Vec<Vec<i64>>,
    norms: Vec<i64>,
    positive: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    cartan_inv: Vec<Vec<Q>>,
}

impl RootSystem {
    pub fn new(lie_type: LieType) -> Self {
        let cartan = lie_type.cartan_matrix();
        let norms = lie_type.simple_root_norms();
        let n = lie_type.rank();

        // reflection closure of the simple roots
        let mut all: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
        while let Some(r) = queue.pop() {
            if all.contains_key(&r) {
                continue;
            }
            for i in 0..n {
                let p: i64 = (0..n).map(|j| cartan[i][j] * r[j]).sum();
                let mut s = r.clone();
                s[i] -= p;
                if !all.contains_key(&s) {
                    queue.push(s);
                }
            }
            all.insert(r, ());
        }
        let mut positive: Vec<Vec<i64>> =
            all.into_keys().filter(|r| r.iter().all(|&c| c >= 0)).collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        let sym = |a: &[i64], b: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..n {
                for j in 0..n {
                    s += a[i] * b[j] * norms[i] * cartan[i][j];
                }
            }
            s
        };
        let coroots = positive
            .iter()
            .map(|r| {
                let half_norm = sym(r, r) / 2;
                (0..n).map(|i| r[i] * norms[i] / half_norm).collect()
            })
            .collect();
        let index = positive
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();
        let cartan_inv = invert(&cartan);
        RootSystem { lie_type, cartan, norms, positive, coroots, index, cartan_inv }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Simple-root coordinates of the positive roots, sorted by height then
    /// reverse-lexicographically (so the simple roots come first, in order).
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn coroot(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        let neg: Vec<i64> = v.iter().map(|c| -c).collect();
        self.index.contains_key(v) || self.index.contains_key(&neg)
    }

    pub fn height(root: &[i64]) -> i64 {
        root.iter().sum()
    }

    /// Symmetrized invariant form on the root lattice, short roots of squared length 2.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a[i] * b[j] * self.norms[i] * self.cartan[i][j];
            }
        }
        s
    }

    /// Half squared length of each simple root.
    pub fn simple_norms(&self) -> &[i64] {
        &self.norms
    }

    /// `<λ, α^∨>` for the positive root with index `k`.
    pub fn pairing_index(&self, weight: &Weight, k: usize) -> Q {
        self.coroots[k]
            .iter()
            .zip(weight.coords())
            .map(|(&c, &l)| l * c)
            .sum()
    }

    /// `<λ, α^∨>` for any root `α` (positive or negative).
    pub fn pairing(&self, weight: &Weight, root: &[i64]) -> Result<Q> {
        if let Some(k) = self.root_index(root) {
            return Ok(self.pairing_index(weight, k));
        }
        let neg: Vec<i64> = root.iter().map(|c| -c).collect();
        match self.root_index(&neg) {
            Some(k) => Ok(-self.pairing_index(weight, k)),
            None => Err(Error::NotARoot(root.to_vec())),
        }
    }

    /// Weight coordinates of a root-lattice vector.
    pub fn lattice_to_weight(&self, v: &[i64]) -> Weight {
        let n = self.rank();
        Weight::new(
            (0..n)
                .map(|i| Q::from_integer((0..n).map(|j| self.cartan[i][j] * v[j]).sum()))
                .collect(),
        )
    }

    /// Simple-root coordinates of a weight (rational in general).
    pub fn weight_to_lattice(&self, w: &Weight) -> Vec<Q> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.cartan_inv[i][j] * w.coords()[j]).sum())
            .collect()
    }

    /// Integer simple-root coordinates if the weight lies in the root lattice.
    pub fn root_lattice_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        self.weight_to_lattice(w)
            .into_iter()
            .map(|q| q.is_integer().then(|| q.to_integer()))
            .collect()
    }

    /// `s_α ν = ν − <ν, α^∨> α`.
    pub fn reflect(&self, weight: &Weight, root: &[i64]) -> Result<Weight> {
        let p = self.pairing(weight, root)?;
        Ok(weight.sub(&self.lattice_to_weight(root).scale(p)))
    }

    /// True iff `<ν, α^∨>` is never a positive integer for `α > 0`.
    pub fn is_antidominant(&self, weight: &Weight) -> bool {
        (0..self.positive.len()).all(|k| {
            let p = self.pairing_index(weight, k);
            !(p.is_integer() && p.is_positive())
        })
    }

    /// Number of ways to write `beta` as a multiset sum of positive roots.
    pub fn kostant_partition(&self, beta: &[i64]) -> Result<u64> {
        partition_count(&self.positive, beta)
    }

    /// Integer matrix of the reflection `s_α` acting on weight coordinates.
    pub fn reflection_matrix(&self, k: usize) -> Vec<Vec<i64>> {
        let n = self.rank();
        let root = &self.positive[k];
        let alpha: Vec<i64> = (0..n)
            .map(|i| (0..n).map(|j| self.cartan[i][j] * root[j]).sum())
            .collect();
        let cor = &self.coroots[k];
        // (s λ)_i = λ_i − alpha_i Σ_j cor_j λ_j
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| i64::from(i == j) - alpha[i] * cor[j])
                    .collect()
            })
            .collect()
    }
}

/// Number of multisets drawn from `roots` summing to `beta`, by unbounded
/// knapsack over the box `0 ≤ γ ≤ β`.
pub fn partition_count(roots: &[Vec<i64>], beta: &[i64]) -> Result<u64> {
    if beta.iter().any(|&c| c < 0) {
        return Err(Error::NegativeCoordinate(beta.to_vec()));
    }
    let n = beta.len();
    let dims: Vec<usize> = beta.iter().map(|&c| c as usize + 1).collect();
    let size: usize = dims.iter().product();
    let mut strides = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let mut table = vec![0u64; size];
    table[0] = 1;
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut out = vec![0; n];
        for i in 0..n {
            out[i] = idx / strides[i];
            idx %= strides[i];
        }
        out
    };
    for root in roots {
        if root.iter().zip(beta).any(|(&r, &b)| r > b) || root.iter().all(|&r| r == 0) {
            continue;
        }
        let shift: usize = root.iter().zip(&strides).map(|(&r, &s)| r as usize * s).sum();
        // increasing index order keeps each root reusable
        for idx in 0..size {
            let pos = decode(idx);
            if pos.iter().zip(root).all(|(&p, &r)| p as i64 >= r) {
                table[idx] += table[idx - shift];
            }
        }
    }
    Ok(table[size - 1])
}

/// All `β ∈ Z_{≥0}^rank` with `ht(β) ≤ max_height`, by height then lexicographically.
pub fn nonneg_vectors(rank: usize, max_height: usize) -> Vec<Vec<i64>> {
    let mut out = vec![];
    for h in 0..=max_height as i64 {
        let mut level = vec![vec![]];
        for i in 0..rank {
            let mut next = vec![];
            for v in level {
                let used: i64 = v.iter().sum();
                let range = if i + 1 == rank { (h - used)..=(h - used) } else { 0..=(h - used) };
                for c in range {
                    let mut v2: Vec<i64> = v.clone();
                    v2.push(c);
                    next.push(v2);
                }
            }
            level = next;
        }
        level.sort();
        out.extend(level);
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn invert(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|&x| Q::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("Cartan matrix is invertible");
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..2 * n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}
