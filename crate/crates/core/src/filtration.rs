//! Radical layers of Verma modules, the sum-formula check and the
//! layer domination check.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Signed;
use serde::Serialize;

use crate::blocks::{normalize, Block};
use crate::error::{Error, Result};
use crate::kl::{KlStore, KlTable};
use crate::poly::IntPoly;
use crate::roots::{nonneg_vectors, partition_count, RootSystem, Weight};
use crate::weyl::{display_word, CoxeterGroup, ElemId, Mat};

/// `m[j][c] = [Rad_j M(wμ) : L(z_c μ)]` for the columns `z_c ≤ w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerTable {
    pub w: ElemId,
    pub length: usize,
    pub columns: Vec<ElemId>,
    pub m: Vec<Vec<u64>>,
}

impl LayerTable {
    pub fn column_index(&self, z: ElemId) -> Option<usize> {
        self.columns.iter().position(|&c| c == z)
    }

    /// Zero outside the table.
    pub fn get(&self, j: usize, z: ElemId) -> u64 {
        match (self.m.get(j), self.column_index(z)) {
            (Some(row), Some(c)) => row[c],
            _ => 0,
        }
    }

    pub fn column_total(&self, z: ElemId) -> u64 {
        self.m.iter().map(|row| self.column_index(z).map_or(0, |c| row[c])).sum()
    }

    /// Number of rows with a nonzero entry.
    pub fn nonzero_layers(&self) -> usize {
        self.m.iter().filter(|row| row.iter().any(|&v| v != 0)).count()
    }

    /// Keeps only the listed columns (in their existing order).
    pub fn restrict(&self, keep: impl Fn(ElemId) -> bool) -> LayerTable {
        let idx: Vec<usize> = (0..self.columns.len()).filter(|&c| keep(self.columns[c])).collect();
        LayerTable {
            w: self.w,
            length: self.length,
            columns: idx.iter().map(|&c| self.columns[c]).collect(),
            m: self.m.iter().map(|row| idx.iter().map(|&c| row[c]).collect()).collect(),
        }
    }

    /// Multiplicities in `M^i = Σ_{j≥i} Rad_j`, one vector per level `i ≥ 0`.
    pub fn levels(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0; self.columns.len()]; self.m.len()];
        let mut acc = vec![0; self.columns.len()];
        for j in (0..self.m.len()).rev() {
            for (a, v) in acc.iter_mut().zip(&self.m[j]) {
                *a += v;
            }
            out[j] = acc.clone();
        }
        out
    }
}

/// Places the coefficient of `q^k` of `p` in row `ℓ(w) − ℓ(z) − 2k`.
pub(crate) fn spread(p: &IntPoly, lw: usize, lz: usize, rows: &mut [Vec<u64>], col: usize) -> Result<()> {
    for (k, &c) in p.coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let j = (lw - lz).checked_sub(2 * k).ok_or_else(|| {
            Error::ConventionDefect(format!("degree of {p} exceeds the length gap {}", lw - lz))
        })?;
        if c < 0 {
            return Err(Error::ConventionDefect(format!("negative coefficient in {p}")));
        }
        rows[j][col] += c as u64;
    }
    Ok(())
}

/// `Σ_k [Rad_{ℓ(w)−ℓ(z)−2k} M(wμ) : L(zμ)] q^k`. With `μ` antidominant this is
/// `P_{w0 w, w0 z}`; the polynomial `P_{z,w}` belongs to the inverse matrix.
pub fn verma_multiplicity<'a>(g: &CoxeterGroup, kl: &'a KlTable, z: ElemId, w: ElemId) -> &'a IntPoly {
    let w0 = g.w0();
    kl.get(g.mul(w0, w), g.mul(w0, z))
}

/// Layers in the regular system: all columns `z ≤ w`.
pub fn regular_layers(g: &CoxeterGroup, kl: &KlTable, w: ElemId) -> Result<LayerTable> {
    let lw = g.length(w);
    let columns: Vec<ElemId> = g.bruhat_interval(w).collect();
    let mut m = vec![vec![0u64; columns.len()]; lw + 1];
    for (c, &z) in columns.iter().enumerate() {
        spread(verma_multiplicity(g, kl, z, w), lw, g.length(z), &mut m, c)?;
    }
    Ok(LayerTable { w, length: lw, columns, m })
}

fn require_rep(block: &Block, w: ElemId) -> Result<()> {
    if block.is_rep(w) {
        Ok(())
    } else {
        Err(Error::NotMinimalRep(block.group().word_string(w)))
    }
}

/// Layers of `M(wμ)` for `w ∈ W^J`: regular columns restricted to `W^J`.
pub fn layers(block: &Block, kl: &KlTable, w: ElemId) -> Result<LayerTable> {
    require_rep(block, w)?;
    let t = regular_layers(block.group(), kl, w)?;
    Ok(t.restrict(|z| block.is_rep(z)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumColumn {
    pub z_word: String,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumFormulaResult {
    pub pass: bool,
    /// `v_α` for each `α ∈ Φ_ν^+`.
    pub reflected: Vec<ElemId>,
    pub columns: Vec<SumColumn>,
}

/// Minimal representatives `v_α` with `s_α wμ = v_α μ`, for `α ∈ Φ_{wμ}^+`.
pub fn reflected_reps(block: &Block, w: ElemId) -> Vec<ElemId> {
    let rs = block.root_system();
    let nu = block.act(w);
    (0..rs.positive_roots().len())
        .filter(|&k| {
            let p = rs.pairing_index(&nu, k);
            p.is_integer() && p.is_positive()
        })
        .map(|k| {
            let m = Mat::from_rows(&rs.reflection_matrix(k)).mul(block.embed(w));
            block.rep_of_matrix(&m).expect("integral reflection lies in the integral group")
        })
        .collect()
}

/// `Σ_j j·m[j][z] = Σ_{α∈Φ_ν^+} [M(v_α μ) : L(zμ)]` for every `z ∈ W^J`.
pub fn sum_formula_check(block: &Block, kl: &KlTable, w: ElemId) -> Result<SumFormulaResult> {
    let t = layers(block, kl, w)?;
    let reflected = reflected_reps(block, w);
    let g = block.group();
    let columns: Vec<SumColumn> = block
        .reps()
        .iter()
        .map(|&z| {
            let lhs = (0..t.m.len()).map(|j| j as u64 * t.get(j, z)).sum();
            let rhs = reflected.iter().map(|&v| verma_multiplicity(g, kl, z, v).eval_one() as u64).sum();
            SumColumn { z_word: display_word(g.word(z)), lhs, rhs }
        })
        .collect();
    let pass = columns.iter().all(|c| c.lhs == c.rhs);
    Ok(SumFormulaResult { pass, reflected, columns })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub j: usize,
    pub z: ElemId,
    pub inner: u64,
    pub outer: u64,
}

/// Checks `m_x[j][z] ≤ m_w[j+r][z]` with `r = ℓ(w) − ℓ(x)`; returns violations.
pub fn domination_check(block: &Block, kl: &KlTable, x: ElemId, w: ElemId) -> Result<Vec<Violation>> {
    let g = block.group();
    if !g.bruhat_leq(x, w) {
        return Err(Error::NotBruhatBelow { x: g.word_string(x), w: g.word_string(w) });
    }
    let tx = layers(block, kl, x)?;
    let tw = layers(block, kl, w)?;
    let r = g.length(w) - g.length(x);
    let mut out = vec![];
    for (j, row) in tx.m.iter().enumerate() {
        for (c, &inner) in row.iter().enumerate() {
            let z = tx.columns[c];
            let outer = tw.get(j + r, z);
            if inner > outer {
                out.push(Violation { j, z, inner, outer });
            }
        }
    }
    Ok(out)
}

/// `b_{y,z}` with `ch L(zμ) = Σ_y b_{y,z} ch M(yμ)`, over `y ∈ W^J`, `y ≤ z`.
pub fn inverse_multiplicities(block: &Block, kl: &KlTable, z: ElemId) -> Vec<(ElemId, i64)> {
    let g = block.group();
    let mut ys: Vec<ElemId> = g.bruhat_interval(z).filter(|&y| block.is_rep(y)).collect();
    ys.sort_by_key(|&y| std::cmp::Reverse(g.length(y)));
    let mut b: BTreeMap<ElemId, i64> = BTreeMap::new();
    for &y in &ys {
        let v = if y == z {
            1
        } else {
            -b.iter()
                .filter(|&(&u, _)| u != y)
                .map(|(&u, &bu)| verma_multiplicity(g, kl, y, u).eval_one() * bu)
                .sum::<i64>()
        };
        b.insert(y, v);
    }
    b.into_iter().filter(|&(_, v)| v != 0).collect()
}

/// Weight-space dimensions of `L(zμ)` at `zμ − ρ − β` for `ht(β) ≤ depth`.
pub fn simple_weight_dims(block: &Block, kl: &KlTable, z: ElemId, depth: usize) -> Result<BTreeMap<Vec<i64>, u64>> {
    require_rep(block, z)?;
    let rs = block.root_system();
    let terms: Vec<(Vec<i64>, i64)> = inverse_multiplicities(block, kl, z)
        .into_iter()
        .map(|(y, b)| (block.weight_gap(z, y), b))
        .collect();
    let mut out = BTreeMap::new();
    for beta in nonneg_vectors(rs.rank(), depth) {
        let mut total: i64 = 0;
        for (gap, b) in &terms {
            let gamma: Vec<i64> = beta.iter().zip(gap).map(|(x, y)| x - y).collect();
            if gamma.iter().all(|&c| c >= 0) {
                total += b * partition_count(rs.positive_roots(), &gamma)? as i64;
            }
        }
        if total < 0 {
            return Err(Error::ConventionDefect(format!("negative simple weight multiplicity at {beta:?}")));
        }
        out.insert(beta, total as u64);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Simple {
    pub z_word: String,
    pub mult: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Layer {
    pub j: usize,
    pub simples: Vec<Simple>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Level {
    pub i: usize,
    pub simples: Vec<Simple>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportDetails {
    pub integral_simples: Vec<Vec<i64>>,
    pub coxeter_matrix: Vec<Vec<u32>>,
    pub levels: Vec<Level>,
    pub sum_formula_columns: Vec<SumColumn>,
}

/// Serializable summary of the filtration of one Verma module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub weight: String,
    pub mu: String,
    pub w_word: String,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub loewy_length: usize,
    pub layers: Vec<Layer>,
    pub sum_formula: String,
    pub details: ReportDetails,
}

pub(crate) fn simples_of(g: &CoxeterGroup, columns: &[ElemId], row: &[u64]) -> Vec<Simple> {
    columns
        .iter()
        .zip(row)
        .filter(|(_, &m)| m != 0)
        .map(|(&z, &mult)| Simple { z_word: display_word(g.word(z)), mult })
        .collect()
}

pub(crate) fn layers_json(g: &CoxeterGroup, t: &LayerTable) -> Vec<Layer> {
    t.m.iter()
        .enumerate()
        .map(|(j, row)| Layer { j, simples: simples_of(g, &t.columns, row) })
        .collect()
}

impl FiltrationReport {
    pub fn new(block: &Block, kl: &KlTable, nu: &Weight, w: ElemId) -> Result<Self> {
        let g = block.group();
        let t = layers(block, kl, w)?;
        let sum = sum_formula_check(block, kl, w)?;
        let levels = t
            .levels()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, row)| Level { i, simples: simples_of(g, &t.columns, row) })
            .collect();
        Ok(FiltrationReport {
            lie_type: block.root_system().lie_type().to_string(),
            weight: nu.to_string(),
            mu: block.mu().to_string(),
            w_word: display_word(g.word(w)),
            j: block.singular_set().iter().map(|s| s + 1).collect(),
            loewy_length: t.nonzero_layers(),
            layers: layers_json(g, &t),
            sum_formula: if sum.pass { "pass" } else { "fail" }.to_string(),
            details: ReportDetails {
                integral_simples: block.integral_simple_roots(),
                coxeter_matrix: block.coxeter_matrix().to_vec(),
                levels,
                sum_formula_columns: sum.columns,
            },
        })
    }
}

/// Normalizes `ν` and reports the filtration of `M(ν)`.
pub fn jantzen_filtration(rs: Arc<RootSystem>, store: &KlStore, nu: &Weight) -> Result<FiltrationReport> {
    let (block, w) = normalize(rs, nu)?;
    let kl = store.table(block.group())?;
    FiltrationReport::new(&block, &kl, nu, w)
}
