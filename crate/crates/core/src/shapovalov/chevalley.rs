use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::roots::{RootSystem, Q};

/// Sparse Lie algebra element over the Chevalley basis.
pub type LieVec = Vec<(usize, i64)>;

/// A Chevalley basis. Basis indices: `p` is `E_{β_p}`, `P + p` is `E_{−β_p}`
/// and `2P + i` is `H_i`, where `P = |Φ^+|` and `β_p` runs over the positive
/// roots in root order. Signs follow the extraspecial-pair convention with
/// `N_{−r,−s} = −N_{r,s}`.
#[derive(Debug, Clone)]
pub struct ChevalleyBasis {
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    norms: Vec<i64>,
    /// `N_{r,s}` for positive `r, s` with `r + s` a root.
    positive: HashMap<(usize, usize), i64>,
    index: HashMap<Vec<i64>, usize>,
}

impl ChevalleyBasis {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let roots = rs.positive_roots().to_vec();
        let p = roots.len();
        let index: HashMap<Vec<i64>, usize> = roots.iter().cloned().zip(0..).collect();
        let mut cb = ChevalleyBasis {
            rank: rs.rank(),
            coroots: (0..p).map(|k| rs.coroot(k).to_vec()).collect(),
            cartan: rs.cartan().to_vec(),
            norms: rs.simple_norms().to_vec(),
            roots,
            positive: HashMap::new(),
            index,
        };
        let norm = |v: &[i64]| Q::from_integer(rs.inner(v, v));

        for xi in 0..p {
            let pairs: Vec<(usize, usize)> = (0..p)
                .filter_map(|r| {
                    let d = cb.sub(&cb.roots[xi], &cb.roots[r]);
                    cb.index.get(&d).filter(|&&s| r < s).map(|&s| (r, s))
                })
                .collect();
            let Some(&(a, b)) = pairs.first() else { continue };
            // p = largest k with β − kα a root
            let mut pk = 0;
            let mut cur = cb.roots[b].clone();
            loop {
                cur = cb.sub(&cur, &cb.roots[a]);
                if !rs.is_root(&cur) {
                    break;
                }
                pk += 1;
            }
            let nab = pk + 1;
            cb.positive.insert((a, b), nab);
            cb.positive.insert((b, a), -nab);
            let xi_norm = norm(&cb.roots[xi]);
            for &(r, s) in &pairs[1..] {
                let (rv, sv) = (cb.roots[r].clone(), cb.roots[s].clone());
                let av = cb.roots[a].clone();
                let mut acc = Q::zero();
                let s_a = cb.sub(&sv, &av);
                // s − α = β − r and r − α = β − s
                if rs.is_root(&s_a) {
                    acc += Q::from_integer(cb.mixed(s, a)? * cb.mixed(r, b)?) / norm(&s_a);
                }
                let r_a = cb.sub(&rv, &av);
                if rs.is_root(&r_a) {
                    acc += Q::from_integer(-cb.mixed(r, a)? * cb.mixed(s, b)?) / norm(&r_a);
                }
                let n = xi_norm / Q::from_integer(nab) * acc;
                if !n.is_integer() || n.is_zero() {
                    return Err(Error::StructureDefect(format!("N for roots {rv:?}, {sv:?} is {n}")));
                }
                cb.positive.insert((r, s), n.to_integer());
                cb.positive.insert((s, r), -n.to_integer());
            }
        }
        cb.check_jacobi()?;
        cb.check_sigma()?;
        Ok(cb)
    }

    fn sub(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    /// `N_{a,−b}` for positive `a ≠ b` with `a − b` a root, from pairs with
    /// positive entries of smaller sum.
    fn mixed(&self, a: usize, b: usize) -> Result<i64> {
        let d = self.sub(&self.roots[a], &self.roots[b]);
        let len = |v: &[i64]| self.norm(v);
        let n = if let Some(&g) = self.index.get(&d) {
            // a − b − γ = 0
            -Q::from_integer(len(&d) * self.pos(b, g)?) / Q::from_integer(len(&self.roots[a]))
        } else {
            let neg: Vec<i64> = d.iter().map(|c| -c).collect();
            let &dl = self
                .index
                .get(&neg)
                .ok_or_else(|| Error::StructureDefect(format!("{d:?} is not a root")))?;
            // a − b + δ = 0
            Q::from_integer(len(&neg) * self.pos(dl, a)?) / Q::from_integer(len(&self.roots[b]))
        };
        if !n.is_integer() {
            return Err(Error::StructureDefect(format!("non-integral mixed constant {n}")));
        }
        Ok(n.to_integer())
    }

    fn norm(&self, v: &[i64]) -> i64 {
        let n = self.rank;
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += v[i] * v[j] * self.norms[i] * self.cartan[i][j];
            }
        }
        s
    }

    fn pos(&self, r: usize, s: usize) -> Result<i64> {
        self.positive
            .get(&(r, s))
            .copied()
            .ok_or_else(|| Error::StructureDefect(format!("missing N for {r}, {s}")))
    }

    pub fn positive_count(&self) -> usize {
        self.roots.len()
    }

    pub fn dim(&self) -> usize {
        2 * self.roots.len() + self.rank
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroot(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn e(&self, k: usize) -> usize {
        k
    }

    pub fn f(&self, k: usize) -> usize {
        self.roots.len() + k
    }

    pub fn h(&self, i: usize) -> usize {
        2 * self.roots.len() + i
    }

    /// Root of a root-vector basis element, `None` for `H_i`.
    fn root_of(&self, x: usize) -> Option<Vec<i64>> {
        let p = self.roots.len();
        if x < p {
            Some(self.roots[x].clone())
        } else if x < 2 * p {
            Some(self.roots[x - p].iter().map(|c| -c).collect())
        } else {
            None
        }
    }

    fn basis_of_root(&self, r: &[i64]) -> Option<usize> {
        if let Some(&k) = self.index.get(r) {
            return Some(k);
        }
        let neg: Vec<i64> = r.iter().map(|c| -c).collect();
        self.index.get(&neg).map(|&k| self.roots.len() + k)
    }

    /// `N_{r,s}` for arbitrary roots with `r + s` a root.
    pub fn structure_constant(&self, r: &[i64], s: &[i64]) -> Result<i64> {
        let pos = |v: &[i64]| self.index.get(v).copied();
        let neg = |v: &[i64]| pos(&v.iter().map(|c| -c).collect::<Vec<_>>());
        match (pos(r), pos(s), neg(r), neg(s)) {
            (Some(a), Some(b), _, _) => self.pos(a, b),
            (_, _, Some(a), Some(b)) => Ok(-self.pos(a, b)?),
            (Some(a), None, _, Some(b)) => self.mixed(a, b),
            (None, Some(b), Some(a), _) => Ok(-self.mixed(b, a)?),
            _ => Err(Error::NotARoot(r.to_vec())),
        }
    }

    /// `[x, y]` for basis elements.
    pub fn bracket(&self, x: usize, y: usize) -> Result<LieVec> {
        let p = self.roots.len();
        let pairing = |r: &[i64], i: usize| -> i64 { (0..self.rank).map(|j| self.cartan[i][j] * r[j]).sum() };
        match (self.root_of(x), self.root_of(y)) {
            (None, None) => Ok(vec![]),
            (None, Some(r)) => {
                let c = pairing(&r, x - 2 * p);
                Ok(if c == 0 { vec![] } else { vec![(y, c)] })
            }
            (Some(r), None) => {
                let c = -pairing(&r, y - 2 * p);
                Ok(if c == 0 { vec![] } else { vec![(x, c)] })
            }
            (Some(r), Some(s)) => {
                let sum: Vec<i64> = r.iter().zip(&s).map(|(a, b)| a + b).collect();
                if sum.iter().all(|&c| c == 0) {
                    // [E_r, E_{−r}] = H_r
                    let (k, sign) = if x < p { (x, 1) } else { (x - p, -1) };
                    return Ok(self.coroots[k]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (2 * p + i, sign * c))
                        .collect());
                }
                match self.basis_of_root(&sum) {
                    Some(z) => Ok(vec![(z, self.structure_constant(&r, &s)?)]),
                    None => Ok(vec![]),
                }
            }
        }
    }

    fn bracket_vec(&self, a: &LieVec, b: &LieVec) -> Result<HashMap<usize, i64>> {
        let mut out: HashMap<usize, i64> = HashMap::new();
        for &(x, cx) in a {
            for &(y, cy) in b {
                for (z, c) in self.bracket(x, y)? {
                    *out.entry(z).or_default() += cx * cy * c;
                }
            }
        }
        out.retain(|_, c| *c != 0);
        Ok(out)
    }

    /// `σ` swaps `E_β ↔ E_{−β}` and fixes `h`.
    pub fn sigma(&self, x: usize) -> usize {
        let p = self.roots.len();
        if x < p {
            x + p
        } else if x < 2 * p {
            x - p
        } else {
            x
        }
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        for x in 0..n {
            for y in 0..n {
                let xy = self.bracket(x, y)?;
                for z in 0..n {
                    let mut total: HashMap<usize, i64> = HashMap::new();
                    let yz = self.bracket(y, z)?;
                    let zx = self.bracket(z, x)?;
                    for (a, inner) in [(x, &yz), (y, &zx), (z, &xy)] {
                        for (k, c) in self.bracket_vec(&vec![(a, 1)], inner)? {
                            *total.entry(k).or_default() += c;
                        }
                    }
                    if total.values().any(|&c| c != 0) {
                        return Err(Error::StructureDefect(format!("Jacobi fails on basis triple ({x}, {y}, {z})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_sigma(&self) -> Result<()> {
        let n = self.dim();
        for x in 0..n {
            for y in 0..n {
                let lhs: Vec<(usize, i64)> = self.bracket(x, y)?.into_iter().map(|(z, c)| (self.sigma(z), c)).collect();
                let rhs = self.bracket(self.sigma(y), self.sigma(x))?;
                let mut l = lhs;
                let mut r = rhs;
                l.sort_unstable();
                r.sort_unstable();
                if l != r {
                    return Err(Error::StructureDefect(format!("σ is not an anti-automorphism on ({x}, {y})")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cb(t: &str) -> ChevalleyBasis {
        ChevalleyBasis::new(&RootSystem::new(t.parse().unwrap())).unwrap()
    }

    #[test]
    fn sl2_relations() {
        let b = cb("A1");
        assert_eq!(b.bracket(b.e(0), b.f(0)).unwrap(), vec![(b.h(0), 1)]);
        assert_eq!(b.bracket(b.h(0), b.e(0)).unwrap(), vec![(b.e(0), 2)]);
        assert_eq!(b.bracket(b.h(0), b.f(0)).unwrap(), vec![(b.f(0), -2)]);
    }

    #[test]
    fn a2_constants() {
        let b = cb("A2");
        assert_eq!(b.structure_constant(&[1, 0], &[0, 1]).unwrap(), 1);
        assert_eq!(b.structure_constant(&[0, 1], &[1, 0]).unwrap(), -1);
        assert_eq!(b.structure_constant(&[-1, 0], &[0, -1]).unwrap(), -1);
    }

    #[test]
    fn sigma_is_an_involution() {
        let b = cb("B2");
        for x in 0..b.dim() {
            assert_eq!(b.sigma(b.sigma(x)), x);
        }
    }

    #[test]
    fn all_supported_and_larger_types_build() {
        for t in ["A1", "A2", "B2", "C2", "G2", "A3", "B3", "C3"] {
            let b = cb(t);
            // |N_{r,s}| = p + 1
            for r in b.roots().to_vec() {
                for s in b.roots().to_vec() {
                    let sum: Vec<i64> = r.iter().zip(&s).map(|(a, c)| a + c).collect();
                    if b.basis_of_root(&sum).is_some() {
                        let n = b.structure_constant(&r, &s).unwrap();
                        assert!((1..=3).contains(&n.abs()), "{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn coroot_brackets() {
        let b = cb("G2");
        for k in 0..b.positive_count() {
            let h = b.bracket(b.e(k), b.f(k)).unwrap();
            let expect: Vec<(usize, i64)> = b
                .coroot(k)
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (b.h(i), c))
                .collect();
            assert_eq!(h, expect);
        }
    }
}
