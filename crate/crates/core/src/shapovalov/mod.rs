//! Independent check of the layer multiplicities: the Jantzen filtration of a
//! small Verma module computed directly from the deformed contravariant form.

mod chevalley;
mod pbw;
mod snf;

use std::sync::Arc;

use serde::Serialize;

pub use chevalley::{ChevalleyBasis, LieVec};
pub use pbw::{DeformedVerma, GramMatrix, Monomial, Vector};
pub use snf::{invariant_factors, rank_at_zero};

use crate::blocks::normalize;
use crate::error::{Error, Result};
use crate::filtration::{layers, simple_weight_dims};
use crate::kl::KlStore;
use crate::roots::{nonneg_vectors, RootSystem, Weight};
use crate::weyl::display_word;

/// Largest supported height of `β` per type.
pub fn depth_cap(rs: &RootSystem) -> Option<usize> {
    match rs.lie_type().to_string().as_str() {
        "A1" => Some(8),
        "A2" => Some(5),
        "B2" | "C2" | "G2" => Some(4),
        _ => None,
    }
}

/// Valuations of the invariant factors of a Gram matrix and the dimensions
/// `dim M^i_β` for `i ≥ 1` read off from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JantzenDims {
    pub valuations: Vec<usize>,
    pub dims: Vec<u64>,
    pub det_valuation: usize,
}

pub fn jantzen_dims_from_gram(g: &GramMatrix) -> Result<JantzenDims> {
    let mut valuations = Vec::with_capacity(g.basis.len());
    for f in invariant_factors(&g.entries) {
        valuations.push(f.valuation().ok_or_else(|| Error::DegenerateForm(g.beta.clone()))?);
    }
    let top = valuations.iter().copied().max().unwrap_or(0);
    let dims = (1..=top).map(|i| valuations.iter().filter(|&&v| v >= i).count() as u64).collect();
    let det_valuation = valuations.iter().sum();
    Ok(JantzenDims { valuations, dims, det_valuation })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleRow {
    pub beta: Vec<i64>,
    pub size: usize,
    pub valuations: Vec<usize>,
    pub dims: Vec<u64>,
    pub predicted: Vec<u64>,
    pub det_valuation: usize,
    pub predicted_det_valuation: u64,
    pub rank_at_zero: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub weight: String,
    pub mu: String,
    pub w_word: String,
    pub depth: usize,
    pub pass: bool,
    pub rows: Vec<OracleRow>,
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Compares `dim M^i_β` from the Gram matrices against the prediction from
/// the layer table for every `β` of height at most `depth`.
pub fn oracle_compare(rs: Arc<RootSystem>, store: &KlStore, nu: &Weight, depth: usize) -> Result<OracleReport> {
    let cap = depth_cap(&rs).ok_or_else(|| Error::UnsupportedOracleType(rs.lie_type().to_string()))?;
    if depth > cap {
        return Err(Error::DepthCapExceeded { depth, cap });
    }
    if nu.rank() != rs.rank() {
        return Err(Error::RankMismatch { got: nu.rank(), rank: rs.rank() });
    }
    let (block, w) = normalize(rs.clone(), nu)?;
    let kl = store.table(block.group())?;
    let table = layers(&block, &kl, w)?;
    let simples = table
        .columns
        .iter()
        .map(|&z| Ok((block.weight_gap(w, z), simple_weight_dims(&block, &kl, z, depth)?)))
        .collect::<Result<Vec<_>>>()?;

    let integral_hits: Vec<(usize, i64)> = (0..rs.positive_roots().len())
        .filter_map(|k| {
            let p = rs.pairing_index(nu, k);
            (p.is_integer() && *p.numer() > 0).then(|| (k, *p.numer()))
        })
        .collect();

    let cb = ChevalleyBasis::new(&rs)?;
    let verma = DeformedVerma::new(&cb, nu);
    let mut rows = vec![];
    for beta in nonneg_vectors(rs.rank(), depth) {
        let gram = verma.gram(&beta)?;
        let found = jantzen_dims_from_gram(&gram)?;

        let mut predicted = vec![0u64; table.m.len()];
        for (c, (gap, dims)) in simples.iter().enumerate() {
            let gamma: Vec<i64> = beta.iter().zip(gap).map(|(b, g)| b - g).collect();
            if gamma.iter().any(|&x| x < 0) {
                continue;
            }
            let d = dims.get(&gamma).copied().unwrap_or(0);
            for (j, row) in table.m.iter().enumerate() {
                for p in predicted.iter_mut().take(j + 1) {
                    *p += row[c] * d;
                }
            }
        }
        let size = gram.basis.len();
        let total = predicted.first().copied().unwrap_or(0);
        let predicted: Vec<u64> = trim(predicted.into_iter().skip(1).collect());

        let mut predicted_det_valuation = 0;
        for &(k, n) in &integral_hits {
            let rest: Vec<i64> = beta.iter().zip(&rs.positive_roots()[k]).map(|(b, a)| b - n * a).collect();
            if rest.iter().all(|&x| x >= 0) {
                predicted_det_valuation += rs.kostant_partition(&rest)?;
            }
        }
        let rank0 = rank_at_zero(&gram.entries);
        let dims = trim(found.dims);
        let m1 = dims.first().copied().unwrap_or(0);
        let pass = dims == predicted
            && total == size as u64
            && found.det_valuation as u64 == predicted_det_valuation
            && rank0 as u64 == size as u64 - m1;
        rows.push(OracleRow {
            beta,
            size,
            valuations: found.valuations,
            dims,
            predicted,
            det_valuation: found.det_valuation,
            predicted_det_valuation,
            rank_at_zero: rank0,
            pass,
        });
    }
    Ok(OracleReport {
        lie_type: rs.lie_type().to_string(),
        weight: nu.to_string(),
        mu: block.mu().to_string(),
        w_word: display_word(block.group().word(w)),
        depth,
        pass: rows.iter().all(|r| r.pass),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(t: &str, nu: &str, depth: usize) -> OracleReport {
        let rs = Arc::new(RootSystem::new(t.parse().unwrap()));
        oracle_compare(rs, &KlStore::in_memory(), &nu.parse().unwrap(), depth).unwrap()
    }

    #[test]
    fn sl2_rows() {
        let r = run("A1", "1", 3);
        assert!(r.pass);
        assert_eq!(r.rows[1].dims, vec![1]);
        assert_eq!(r.rows[1].det_valuation, 1);
        let r = run("A1", "-1/2", 3);
        assert!(r.pass);
        assert!(r.rows.iter().all(|x| x.dims.is_empty()));
    }

    #[test]
    fn a2_dominant_regular() {
        let r = run("A2", "1,1", 3);
        assert!(r.pass, "{:?}", r.rows.iter().filter(|x| !x.pass).collect::<Vec<_>>());
    }

    #[test]
    fn caps_and_types() {
        let rs = Arc::new(RootSystem::new("A3".parse().unwrap()));
        let nu = "1,1,1".parse().unwrap();
        assert!(matches!(oracle_compare(rs, &KlStore::in_memory(), &nu, 1), Err(Error::UnsupportedOracleType(_))));
        let rs = Arc::new(RootSystem::new("A2".parse().unwrap()));
        let nu = "1,1".parse().unwrap();
        assert!(matches!(oracle_compare(rs, &KlStore::in_memory(), &nu, 6), Err(Error::DepthCapExceeded { .. })));
    }

    #[test]
    fn degenerate_gram_is_reported() {
        let g = GramMatrix {
            beta: vec![1],
            basis: vec![vec![0]],
            entries: vec![vec![crate::poly::RatPoly::zero()]],
        };
        assert_eq!(jantzen_dims_from_gram(&g), Err(Error::DegenerateForm(vec![1])));
    }
}

