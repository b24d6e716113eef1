//! Layers of parabolic Verma modules `M_I(w_I wμ)`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::blocks::Block;
use crate::error::{Error, Result};
use crate::filtration::{layers_json, regular_layers, spread, verma_multiplicity, Layer, LayerTable};
use crate::kl::KlTable;
use crate::poly::IntPoly;
use crate::roots::{nonneg_vectors, partition_count, RootSystem, Weight, Q};
use crate::weyl::{display_word, CoxeterGroup, ElemId};

/// A block together with `I ⊆ Δ ∩ Δ_[μ]` and the parameter set `{}^I W^J`.
#[derive(Debug, Clone)]
pub struct ParabolicBlock {
    base: Block,
    i_roots: Vec<usize>,
    i_gens: Vec<usize>,
    w_i: ElemId,
    w_i_group: Vec<ElemId>,
    reps: Vec<ElemId>,
}

/// `I` is given as 0-based simple-root indices of the ambient root system.
pub fn enumerate_iwj(base: &Block, i: &[usize]) -> Result<ParabolicBlock> {
    let mut i_roots = i.to_vec();
    i_roots.sort_unstable();
    i_roots.dedup();
    let i_gens = i_roots
        .iter()
        .map(|&r| {
            // simple roots occupy the first positions of the root order
            base.integral_simples()
                .iter()
                .position(|&k| k == r && r < base.root_system().rank())
                .ok_or(Error::ParabolicNotIntegral(r + 1))
        })
        .collect::<Result<Vec<_>>>()?;
    let g = base.group();
    let reps = base
        .reps()
        .iter()
        .copied()
        .filter(|&w| g.upper_coset_membership(w, &i_gens, base.singular_set()))
        .collect();
    Ok(ParabolicBlock {
        w_i: g.longest_element(&i_gens),
        w_i_group: g.parabolic_subgroup(&i_gens),
        base: base.clone(),
        i_roots,
        i_gens,
        reps,
    })
}

impl ParabolicBlock {
    pub fn base(&self) -> &Block {
        &self.base
    }

    pub fn i_roots(&self) -> &[usize] {
        &self.i_roots
    }

    pub fn i_generators(&self) -> &[usize] {
        &self.i_gens
    }

    pub fn w_i(&self) -> ElemId {
        self.w_i
    }

    pub fn reps(&self) -> &[ElemId] {
        &self.reps
    }

    /// The same data with `J` ignored: the regular parameter set `{}^I W`.
    pub fn regular_reps(&self) -> Vec<ElemId> {
        let g = self.base.group();
        g.elements().filter(|&w| g.upper_coset_membership(w, &self.i_gens, &[])).collect()
    }

    /// `λ = w_I wμ`.
    pub fn highest_weight(&self, w: ElemId) -> Weight {
        self.base.act(self.base.group().mul(self.w_i, w))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicLayerTable {
    pub table: LayerTable,
    /// `n_{z,w}(q)` for each column.
    pub graded: Vec<IntPoly>,
}

/// `n_{z,w}(q) = Σ_{u∈W_I} (−1)^{ℓ(u)} [M(u w_I wμ) : L(w_I zμ)]_q`, the graded
/// multiplicities of [`verma_multiplicity`] alternated over `W_I`.
pub fn graded_multiplicity(pb: &ParabolicBlock, kl: &KlTable, z: ElemId, w: ElemId) -> IntPoly {
    let g = pb.base.group();
    let x = g.mul(pb.w_i, z);
    let top = g.mul(pb.w_i, w);
    pb.w_i_group.iter().fold(IntPoly::zero(), |acc, &u| {
        let p = verma_multiplicity(g, kl, x, g.mul(u, top));
        if g.length(u) % 2 == 0 {
            &acc + p
        } else {
            &acc - p
        }
    })
}

fn regular_columns(g: &CoxeterGroup, pb: &ParabolicBlock, w: ElemId) -> Vec<ElemId> {
    g.bruhat_interval(w)
        .filter(|&z| g.upper_coset_membership(z, &pb.i_gens, &[]))
        .collect()
}

/// Regular layers over columns `z ∈ {}^I W`, `z ≤ w`, ignoring `J`.
pub fn regular_parabolic_layers(pb: &ParabolicBlock, kl: &KlTable, w: ElemId) -> Result<ParabolicLayerTable> {
    let g = pb.base.group();
    if !g.upper_coset_membership(w, &pb.i_gens, &[]) {
        return Err(Error::NotParabolicRep(g.word_string(w)));
    }
    let lw = g.length(w);
    let columns = regular_columns(g, pb, w);
    let mut m = vec![vec![0u64; columns.len()]; lw + 1];
    let mut graded = Vec::with_capacity(columns.len());
    for (c, &z) in columns.iter().enumerate() {
        let n = graded_multiplicity(pb, kl, z, w);
        spread(&n, lw, g.length(z), &mut m, c).map_err(|e| match e {
            Error::ConventionDefect(msg) => Error::ConventionDefect(format!(
                "parabolic layer formula unsupported at z = {}, w = {}: {msg}",
                display_word(g.word(z)),
                display_word(g.word(w))
            )),
            other => other,
        })?;
        graded.push(n);
    }
    Ok(ParabolicLayerTable { table: LayerTable { w, length: lw, columns, m }, graded })
}

/// Layers of `M_I(w_I wμ)`: regular columns restricted to `{}^I W^J`.
pub fn parabolic_layers(pb: &ParabolicBlock, kl: &KlTable, w: ElemId) -> Result<ParabolicLayerTable> {
    if !pb.reps.contains(&w) {
        return Err(Error::NotParabolicRep(pb.base.group().word_string(w)));
    }
    let full = regular_parabolic_layers(pb, kl, w)?;
    let keep: Vec<bool> = full.table.columns.iter().map(|z| pb.reps.contains(z)).collect();
    let table = full.table.restrict(|z| pb.reps.contains(&z));
    let graded = full.graded.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
    Ok(ParabolicLayerTable { table, graded })
}

/// The same table as an alternating sum of ordinary regular layer tables,
/// `m[j][z] = Σ_u (−1)^{ℓ(u)} m_{u w_I w}[j − ℓ(u)][w_I z]`.
pub fn parabolic_layers_via_vermas(pb: &ParabolicBlock, kl: &KlTable, w: ElemId) -> Result<Vec<Vec<i64>>> {
    let g = pb.base.group();
    let columns = regular_columns(g, pb, w);
    let lw = g.length(w);
    let top = g.mul(pb.w_i, w);
    let mut m = vec![vec![0i64; columns.len()]; lw + 1];
    for &u in &pb.w_i_group {
        let lu = g.length(u);
        let sign = if lu % 2 == 0 { 1 } else { -1 };
        let t = regular_layers(g, kl, g.mul(u, top))?;
        for (c, &z) in columns.iter().enumerate() {
            let x = g.mul(pb.w_i, z);
            for (j, row) in m.iter_mut().enumerate() {
                if j >= lu {
                    row[c] += sign * t.get(j - lu, x) as i64;
                }
            }
        }
    }
    Ok(m)
}

fn form(rs: &RootSystem, a: &[Q], b: &[Q]) -> Q {
    let n = rs.rank();
    let mut s = Q::zero();
    for i in 0..n {
        for j in 0..n {
            s += a[i] * b[j] * Q::from_integer(rs.simple_norms()[i] * rs.cartan()[i][j]);
        }
    }
    s
}

/// Weight multiplicities of the simple Levi module of highest weight `hw`
/// at `hw − γ` for `γ ∈ Q_I^+` of height `≤ depth`, by Freudenthal's formula.
pub fn levi_weight_dims(rs: &RootSystem, i_roots: &[usize], hw: &Weight, depth: usize) -> Result<BTreeMap<Vec<i64>, i64>> {
    let n = rs.rank();
    let in_levi = |v: &[i64]| (0..n).all(|k| v[k] == 0 || i_roots.contains(&k));
    let levi_pos: Vec<Vec<i64>> = rs.positive_roots().iter().filter(|r| in_levi(r)).cloned().collect();
    let rho_i: Vec<Q> = (0..n)
        .map(|k| Q::new(levi_pos.iter().map(|r| r[k]).sum(), 2))
        .collect();
    let top: Vec<Q> = rs.weight_to_lattice(hw).iter().zip(&rho_i).map(|(a, b)| a + b).collect();
    let top_norm = form(rs, &top, &top);
    let mut dims: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for gamma in nonneg_vectors(n, depth).into_iter().filter(|g| in_levi(g)) {
        if gamma.iter().all(|&c| c == 0) {
            dims.insert(gamma, 1);
            continue;
        }
        let shifted: Vec<Q> = top.iter().zip(&gamma).map(|(t, &g)| t - Q::from_integer(g)).collect();
        let denom = top_norm - form(rs, &shifted, &shifted);
        let mut num = Q::zero();
        for alpha in &levi_pos {
            let alpha_q: Vec<Q> = alpha.iter().map(|&c| Q::from_integer(c)).collect();
            for k in 1.. {
                let higher: Vec<i64> = gamma.iter().zip(alpha).map(|(g, a)| g - k * a).collect();
                if higher.iter().any(|&c| c < 0) {
                    break;
                }
                let mult = dims.get(&higher).copied().unwrap_or(0);
                if mult == 0 {
                    continue;
                }
                // weight hw − γ + kα, shifted coordinates drop ρ_I
                let wt: Vec<Q> = top
                    .iter()
                    .zip(&rho_i)
                    .zip(&higher)
                    .map(|((t, r), &h)| t - r - Q::from_integer(h))
                    .collect();
                num += Q::from_integer(2 * mult) * form(rs, &wt, &alpha_q);
            }
        }
        let m = if denom.is_zero() {
            if !num.is_zero() {
                return Err(Error::ConventionDefect(format!("Freudenthal recursion breaks at {gamma:?}")));
            }
            Q::zero()
        } else {
            num / denom
        };
        if !m.is_integer() || m.is_negative() {
            return Err(Error::ConventionDefect(format!("non-integral Levi multiplicity at {gamma:?}")));
        }
        dims.insert(gamma, m.to_integer());
    }
    Ok(dims)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterMismatch {
    pub gamma: Vec<i64>,
    pub induced: i64,
    pub alternating: i64,
}

/// Compares `ch M_I(λ)` computed by induction from the Levi with the
/// alternating sum `Σ_{u∈W_I} (−1)^{ℓ(u)} ch M(uλ)` on all weight spaces down
/// to `depth`. Returns the mismatches.
pub fn parabolic_character_check(pb: &ParabolicBlock, w: ElemId, depth: usize) -> Result<Vec<CharacterMismatch>> {
    let base = &pb.base;
    let rs = base.root_system();
    let g = base.group();
    let n = rs.rank();
    let lam_elem = g.mul(pb.w_i, w);
    let lambda = base.act(lam_elem);
    let hw = lambda.sub(&Weight::rho(n));
    let levi = levi_weight_dims(rs, &pb.i_roots, &hw, depth)?;
    let in_levi = |v: &[i64]| (0..n).all(|k| v[k] == 0 || pb.i_roots.contains(&k));
    let complement: Vec<Vec<i64>> = rs.positive_roots().iter().filter(|r| !in_levi(r)).cloned().collect();
    let shifts: Vec<(Vec<i64>, i64)> = pb
        .w_i_group
        .iter()
        .map(|&u| {
            let gap = base.weight_gap(lam_elem, g.mul(u, lam_elem));
            (gap, if g.length(u) % 2 == 0 { 1 } else { -1 })
        })
        .collect();
    let mut out = vec![];
    for gamma in nonneg_vectors(n, depth) {
        let mut induced = 0i64;
        for (g1, &d) in &levi {
            let g2: Vec<i64> = gamma.iter().zip(g1).map(|(a, b)| a - b).collect();
            if d != 0 && g2.iter().all(|&c| c >= 0) {
                induced += d * partition_count(&complement, &g2)? as i64;
            }
        }
        let mut alternating = 0i64;
        for (gap, sign) in &shifts {
            let g2: Vec<i64> = gamma.iter().zip(gap).map(|(a, b)| a - b).collect();
            if g2.iter().all(|&c| c >= 0) {
                alternating += sign * partition_count(rs.positive_roots(), &g2)? as i64;
            }
        }
        if induced != alternating {
            out.push(CharacterMismatch { gamma, induced, alternating });
        }
    }
    Ok(out)
}

/// Serializable parabolic filtration report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParabolicReport {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub weight: String,
    pub mu: String,
    pub w_word: String,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "wI_word")]
    pub w_i_word: String,
    pub loewy_length: usize,
    pub layers: Vec<Layer>,
    pub character_check: String,
    pub details: ParabolicDetails,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParabolicDetails {
    pub integral_simples: Vec<Vec<i64>>,
    pub reps: Vec<String>,
    pub graded: Vec<GradedColumn>,
    pub character_mismatches: Vec<CharacterMismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedColumn {
    pub z_word: String,
    pub n: Vec<i64>,
}

impl ParabolicReport {
    pub fn new(pb: &ParabolicBlock, kl: &KlTable, w: ElemId, depth: usize) -> Result<Self> {
        let base = &pb.base;
        let g = base.group();
        let t = parabolic_layers(pb, kl, w)?;
        let mismatches = parabolic_character_check(pb, w, depth)?;
        Ok(ParabolicReport {
            lie_type: base.root_system().lie_type().to_string(),
            weight: pb.highest_weight(w).to_string(),
            mu: base.mu().to_string(),
            w_word: display_word(g.word(w)),
            j: base.singular_set().iter().map(|s| s + 1).collect(),
            i: pb.i_roots.iter().map(|s| s + 1).collect(),
            w_i_word: display_word(g.word(pb.w_i)),
            loewy_length: t.table.nonzero_layers(),
            layers: layers_json(g, &t.table),
            character_check: if mismatches.is_empty() { "pass" } else { "fail" }.to_string(),
            details: ParabolicDetails {
                integral_simples: base.integral_simple_roots(),
                reps: pb.reps.iter().map(|&r| display_word(g.word(r))).collect(),
                graded: t
                    .table
                    .columns
                    .iter()
                    .zip(&t.graded)
                    .map(|(&z, p)| GradedColumn { z_word: display_word(g.word(z)), n: p.coeffs().to_vec() })
                    .collect(),
                character_mismatches: mismatches,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::integral_block;
    use crate::filtration::layers;
    use crate::kl::KlStore;
    use std::sync::Arc;

    fn setup(t: &str, mu: &str) -> (Block, Arc<KlTable>) {
        let rs = Arc::new(RootSystem::new(t.parse().unwrap()));
        let b = integral_block(rs, &mu.parse().unwrap()).unwrap();
        let kl = KlStore::in_memory().table(b.group()).unwrap();
        (b, kl)
    }

    fn words(pb: &ParabolicBlock) -> Vec<String> {
        pb.reps().iter().map(|&r| display_word(pb.base().group().word(r))).collect()
    }

    #[test]
    fn empty_i_is_ordinary_verma() {
        let (b, kl) = setup("A2", "0,-1");
        let pb = enumerate_iwj(&b, &[]).unwrap();
        assert_eq!(pb.reps(), b.reps());
        for &w in b.reps() {
            assert_eq!(parabolic_layers(&pb, &kl, w).unwrap().table, layers(&b, &kl, w).unwrap());
            assert!(parabolic_character_check(&pb, w, 4).unwrap().is_empty());
        }
    }

    #[test]
    fn a2_regular_i1_reps() {
        let (b, _) = setup("A2", "-1,-1");
        let pb = enumerate_iwj(&b, &[0]).unwrap();
        assert_eq!(words(&pb), vec!["e", "2", "2 1"]);
    }

    #[test]
    fn overlapping_i_and_j() {
        let (b, _) = setup("A1", "0");
        assert!(enumerate_iwj(&b, &[0]).unwrap().reps().is_empty());
        let (b, _) = setup("A2", "0,-1");
        assert_eq!(words(&enumerate_iwj(&b, &[0]).unwrap()), vec!["2"]);
    }

    #[test]
    fn i_outside_integral_simples_is_rejected() {
        let (b, _) = setup("A2", "1/2,-1/2");
        assert_eq!(enumerate_iwj(&b, &[0]).unwrap_err(), Error::ParabolicNotIntegral(1));
    }

    #[test]
    fn finite_dimensional_case_has_one_layer() {
        let (b, kl) = setup("B2", "-1,-1");
        let pb = enumerate_iwj(&b, &[0, 1]).unwrap();
        assert_eq!(pb.reps(), &[ElemId::IDENTITY]);
        let t = parabolic_layers(&pb, &kl, ElemId::IDENTITY).unwrap();
        assert_eq!(t.table.m, vec![vec![1]]);
        assert!(parabolic_character_check(&pb, ElemId::IDENTITY, 4).unwrap().is_empty());
    }

    #[test]
    fn a1_finite_dimensional_characters() {
        let (b, _) = setup("A1", "-3");
        let pb = enumerate_iwj(&b, &[0]).unwrap();
        // λ = (3): dims 1, 1, 1, 0, ...
        let levi = levi_weight_dims(b.root_system(), &[0], &"2".parse().unwrap(), 5).unwrap();
        assert_eq!(levi.values().copied().collect::<Vec<_>>(), vec![1, 1, 1, 0, 0, 0]);
        assert!(parabolic_character_check(&pb, ElemId::IDENTITY, 6).unwrap().is_empty());
    }

    #[test]
    fn a2_dual_path() {
        let (b, kl) = setup("A2", "-1,-1");
        let pb = enumerate_iwj(&b, &[0]).unwrap();
        for &w in pb.reps() {
            let direct = parabolic_layers(&pb, &kl, w).unwrap().table;
            let via = parabolic_layers_via_vermas(&pb, &kl, w).unwrap();
            let as_i64: Vec<Vec<i64>> = direct.m.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect();
            assert_eq!(as_i64, via);
            assert!(parabolic_character_check(&pb, w, 4).unwrap().is_empty());
        }
        let s2 = b.group().from_word(&[1]).unwrap();
        let t = parabolic_layers(&pb, &kl, s2).unwrap().table;
        assert_eq!(t.m, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn highest_weights_are_i_dominant() {
        for (t, mu) in [("B3", "-1,0,-1"), ("C3", "-1,-1,-1"), ("G2", "-1,-1/3")] {
            let (b, _) = setup(t, mu);
            let rs = b.root_system().clone();
            let simple_in_block: Vec<usize> =
                b.integral_simples().iter().copied().filter(|&k| k < rs.rank()).collect();
            let pb = enumerate_iwj(&b, &simple_in_block).unwrap();
            for &w in pb.reps() {
                let lam = pb.highest_weight(w);
                for &i in pb.i_roots() {
                    let p = rs.pairing_index(&lam, i);
                    assert!(p.is_integer() && p.is_positive(), "{t} {mu}");
                }
            }
        }
    }
}
