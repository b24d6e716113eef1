//! Integral Weyl groups of weights and normalization `ν = wμ`.

use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::roots::{RootSystem, Weight, Q};
use crate::weyl::{CoxeterGroup, ElemId, Mat};

/// Integral root data of an antidominant weight `μ`.
#[derive(Debug, Clone)]
pub struct Block {
    rs: Arc<RootSystem>,
    mu: Weight,
    integral_positive: Vec<usize>,
    simples: Vec<usize>,
    singular: Vec<usize>,
    group: Arc<CoxeterGroup>,
    reps: Vec<ElemId>,
}

fn integral_roots(rs: &RootSystem, nu: &Weight) -> Vec<usize> {
    (0..rs.positive_roots().len())
        .filter(|&k| rs.pairing_index(nu, k).is_integer())
        .collect()
}

/// Indecomposable elements of a positive system, in root order.
fn indecomposable(rs: &RootSystem, positive: &[usize]) -> Vec<usize> {
    let roots = rs.positive_roots();
    positive
        .iter()
        .copied()
        .filter(|&k| {
            !positive.iter().any(|&a| {
                positive.iter().any(|&b| {
                    roots[a].iter().zip(&roots[b]).map(|(x, y)| x + y).eq(roots[k].iter().copied())
                })
            })
        })
        .collect()
}

fn rank_of(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| r.iter().map(|&c| Q::from_integer(c)).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c] / m[rank][c];
                let pivot = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Checks that `simples` is a base of the subsystem `positive`.
fn check_base(rs: &RootSystem, positive: &[usize], simples: &[usize]) -> Result<()> {
    let roots = rs.positive_roots();
    let basis: Vec<Vec<i64>> = simples.iter().map(|&k| roots[k].clone()).collect();
    if rank_of(&basis) != basis.len() {
        return Err(Error::RootSystemDefect("integral simple roots are dependent".into()));
    }
    // every positive integral root is a nonnegative integer combination:
    // peel off simples while staying inside the positive subsystem
    for &k in positive {
        let mut cur = roots[k].clone();
        while !simples.contains(&rs.root_index(&cur).unwrap_or(usize::MAX)) {
            let next = simples.iter().find_map(|&s| {
                let d: Vec<i64> = cur.iter().zip(&roots[s]).map(|(a, b)| a - b).collect();
                rs.root_index(&d).filter(|j| positive.contains(j)).map(|_| d)
            });
            match next {
                Some(d) => cur = d,
                None => {
                    return Err(Error::RootSystemDefect(format!(
                        "root {:?} is not a positive combination of the integral simples",
                        roots[k]
                    )))
                }
            }
        }
    }
    // closure of the subsystem under its simple reflections
    for &s in simples {
        for &k in positive {
            let alpha = rs.lattice_to_weight(&roots[k]);
            let img = rs
                .root_lattice_coords(&rs.reflect(&alpha, &roots[s])?)
                .expect("reflection preserves the root lattice");
            let neg: Vec<i64> = img.iter().map(|c| -c).collect();
            let idx = rs.root_index(&img).or_else(|| rs.root_index(&neg));
            if !idx.is_some_and(|j| positive.contains(&j)) {
                return Err(Error::RootSystemDefect(format!(
                    "integral roots not closed under reflection in {:?}",
                    roots[s]
                )));
            }
        }
    }
    Ok(())
}

/// The integral block of an antidominant weight.
pub fn integral_block(rs: Arc<RootSystem>, mu: &Weight) -> Result<Block> {
    if mu.rank() != rs.rank() {
        return Err(Error::RankMismatch { got: mu.rank(), rank: rs.rank() });
    }
    if !rs.is_antidominant(mu) {
        return Err(Error::NotAntidominant(mu.to_string()));
    }
    let integral_positive = integral_roots(&rs, mu);
    let simples = indecomposable(&rs, &integral_positive);
    check_base(&rs, &integral_positive, &simples)?;
    let gens = simples.iter().map(|&k| Mat::from_rows(&rs.reflection_matrix(k))).collect();
    let group = CoxeterGroup::from_generators(gens, rs.rank())?;
    let singular: Vec<usize> = simples
        .iter()
        .enumerate()
        .filter(|(_, &k)| rs.pairing_index(mu, k).is_zero())
        .map(|(i, _)| i)
        .collect();
    let reps = group.min_coset_reps(&singular).reps;
    Ok(Block {
        rs,
        mu: mu.clone(),
        integral_positive,
        simples,
        singular,
        group: Arc::new(group),
        reps,
    })
}

/// Writes `ν = wμ` with `μ` antidominant and `w` a minimal coset representative.
pub fn normalize(rs: Arc<RootSystem>, nu: &Weight) -> Result<(Block, ElemId)> {
    if nu.rank() != rs.rank() {
        return Err(Error::RankMismatch { got: nu.rank(), rank: rs.rank() });
    }
    let simples = indecomposable(&rs, &integral_roots(&rs, nu));
    let mut cur = nu.clone();
    let mut applied = vec![];
    while let Some(i) = simples.iter().position(|&k| {
        let p = rs.pairing_index(&cur, k);
        p.is_integer() && p.is_positive()
    }) {
        cur = rs.reflect(&cur, &rs.positive_roots()[simples[i]])?;
        applied.push(i);
    }
    let block = integral_block(rs, &cur)?;
    debug_assert_eq!(block.simples, simples);
    let w = block.group.from_word(&applied)?;
    let (y, _) = block.group.decompose_yx(w, &block.singular);
    debug_assert_eq!(&block.act(y), nu);
    Ok((block, y))
}

/// `|Φ_ν^+|`: positive roots with positive integral pairing.
pub fn phi_plus_count(rs: &RootSystem, nu: &Weight) -> usize {
    (0..rs.positive_roots().len())
        .filter(|&k| {
            let p = rs.pairing_index(nu, k);
            p.is_integer() && p.is_positive()
        })
        .count()
}

impl Block {
    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn mu(&self) -> &Weight {
        &self.mu
    }

    /// Indices into `Φ^+` of the positive integral roots.
    pub fn integral_positive_roots(&self) -> &[usize] {
        &self.integral_positive
    }

    /// Indices into `Φ^+` of `Δ_[μ]`, in generator order.
    pub fn integral_simples(&self) -> &[usize] {
        &self.simples
    }

    /// Generator indices of the singular set `J`.
    pub fn singular_set(&self) -> &[usize] {
        &self.singular
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        self.group.coxeter_matrix()
    }

    /// `W_[μ]^J` in enumeration order.
    pub fn reps(&self) -> &[ElemId] {
        &self.reps
    }

    pub fn is_rep(&self, w: ElemId) -> bool {
        self.group.is_min_rep(w, &self.singular)
    }

    /// Action of `w` on weight coordinates.
    pub fn embed(&self, w: ElemId) -> &Mat {
        self.group.matrix(w)
    }

    /// `wμ`.
    pub fn act(&self, w: ElemId) -> Weight {
        Weight::new(self.embed(w).apply_q(self.mu.coords()))
    }

    /// `wμ − zμ` in simple-root coordinates.
    pub fn weight_gap(&self, w: ElemId, z: ElemId) -> Vec<i64> {
        self.rs
            .root_lattice_coords(&self.act(w).sub(&self.act(z)))
            .expect("block orbit stays in one root-lattice coset")
    }

    /// `#{α ∈ Φ_[μ]^+ : w^{-1}α < 0}`, counted with the embedded matrix.
    pub fn integral_inversions(&self, w: ElemId) -> usize {
        let winv = self.embed(self.group.inverse(w));
        self.integral_positive
            .iter()
            .filter(|&&k| {
                let alpha = self.rs.lattice_to_weight(&self.rs.positive_roots()[k]);
                let img = Weight::new(winv.apply_q(alpha.coords()));
                let coords = self.rs.root_lattice_coords(&img).expect("root image");
                coords.iter().any(|&c| c < 0)
            })
            .count()
    }

    /// Minimal representative in `W^J` of the element whose matrix is `m`.
    pub fn rep_of_matrix(&self, m: &Mat) -> Option<ElemId> {
        let w = self.group.find(m)?;
        Some(self.group.decompose_yx(w, &self.singular).0)
    }

    /// Words of `Δ_[μ]` elements as simple-root coordinate vectors.
    pub fn integral_simple_roots(&self) -> Vec<Vec<i64>> {
        self.simples.iter().map(|&k| self.rs.positive_roots()[k].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::LieType;

    fn rs(t: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::new(t.parse::<LieType>().unwrap()))
    }

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn integral_weight_gives_full_system() {
        let b = integral_block(rs("B3"), &w("-1,-1,-1")).unwrap();
        assert_eq!(b.integral_positive_roots().len(), 9);
        assert_eq!(b.integral_simples(), &[0, 1, 2]);
        assert_eq!(b.group().order(), 48);
        assert!(b.singular_set().is_empty());
    }

    #[test]
    fn thirds_in_a2_give_trivial_group() {
        let b = integral_block(rs("A2"), &w("-1/3,-1/3")).unwrap();
        assert!(b.integral_positive_roots().is_empty());
        assert_eq!(b.group().order(), 1);
        assert_eq!(b.reps(), &[ElemId::IDENTITY]);
    }

    #[test]
    fn half_weights_in_a2() {
        let b = integral_block(rs("A2"), &w("1/2,-1/2")).unwrap();
        assert_eq!(b.integral_simple_roots(), vec![vec![1, 1]]);
        assert_eq!(b.singular_set(), &[0]);
        assert_eq!(b.reps().len(), 1);
    }

    #[test]
    fn non_antidominant_is_rejected() {
        let e = integral_block(rs("A1"), &w("1")).unwrap_err();
        assert!(matches!(e, Error::NotAntidominant(_)));
        assert!(e.to_string().contains("normalize"));
    }

    #[test]
    fn normalize_examples() {
        let (b, x) = normalize(rs("A1"), &w("1")).unwrap();
        assert_eq!(b.mu(), &w("-1"));
        assert_eq!(b.group().word(x), &[0]);

        let (b, x) = normalize(rs("A2"), &w("1,-1/2")).unwrap();
        assert_eq!(b.mu(), &w("-1,1/2"));
        assert_eq!(b.integral_simple_roots(), vec![vec![1, 0]]);
        assert_eq!(b.group().word(x), &[0]);

        let (b, x) = normalize(rs("A2"), &w("-1,-1")).unwrap();
        assert_eq!(b.mu(), &w("-1,-1"));
        assert_eq!(x, ElemId::IDENTITY);
    }

    #[test]
    fn normalize_singular_reduces_mod_j() {
        // ν = (0, 1): μ = (−1, 0)·stuff; result must be a W^J rep sending μ to ν
        let (b, x) = normalize(rs("A2"), &w("0,1")).unwrap();
        assert!(b.is_rep(x));
        assert_eq!(b.act(x), w("0,1"));
        assert!(!b.singular_set().is_empty());
    }

    #[test]
    fn phi_plus_examples() {
        let a2 = rs("A2");
        assert_eq!(phi_plus_count(&a2, &w("-1,-1")), 0);
        assert_eq!(phi_plus_count(&a2, &w("1,1")), 3);
        let b = integral_block(a2.clone(), &w("-1,-1")).unwrap();
        let s1s2 = b.group().from_word(&[0, 1]).unwrap();
        assert_eq!(phi_plus_count(&a2, &b.act(s1s2)), 2);
        assert_eq!(phi_plus_count(&rs("G2"), &w("1,1")), 6);
    }

    #[test]
    fn b2_half_weight_has_a1_squared() {
        // <μ,α^∨> for α1, α2, α1+α2, α1+2α2 = a, b, 2a+b, a+b
        let b = integral_block(rs("B2"), &w("-1/2,-1")).unwrap();
        assert_eq!(b.integral_simple_roots(), vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(b.coxeter_matrix(), &[vec![1, 2], vec![2, 1]]);
    }

    #[test]
    fn g2_third_weight_has_short_a2() {
        let r = rs("G2");
        // the short roots α1, α1+α2, 2α1+α2 pair integrally
        let b = integral_block(r.clone(), &w("-1,-1/3")).unwrap();
        assert_eq!(b.integral_simple_roots(), vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(b.coxeter_matrix()[0][1], 3);
    }

    #[test]
    fn lengths_match_integral_inversions() {
        for (t, mu) in [("B2", "-1/2,-1"), ("G2", "-1,-1/3"), ("A3", "-1,0,-1"), ("C3", "-1/2,-1,-1")] {
            let b = integral_block(rs(t), &w(mu)).unwrap();
            for x in b.group().elements() {
                assert_eq!(b.group().length(x), b.integral_inversions(x), "{t} {mu}");
            }
            for &x in b.reps() {
                assert_eq!(phi_plus_count(b.root_system(), &b.act(x)), b.group().length(x));
            }
        }
    }

    #[test]
    fn normalize_is_orbit_invariant() {
        let r = rs("B2");
        let b = integral_block(r.clone(), &w("-1/2,-1")).unwrap();
        for x in b.group().elements() {
            let (b2, y) = normalize(r.clone(), &b.act(x)).unwrap();
            assert_eq!(b2.mu(), b.mu());
            assert_eq!(b2.act(y), b.act(x));
        }
    }
}
