//! Kazhdan–Lusztig polynomials of an enumerated Coxeter group, with an
//! in-memory memo keyed by Coxeter matrix and an optional on-disk cache.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::weyl::{format_word, parse_word, CoxeterGroup, ElemId};

const CACHE_VERSION: &str = "v1";

/// All `P_{x,w}`, stored densely by `w` then `x`; zero means `x ≰ w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KlTable {
    coxeter: Vec<Vec<u32>>,
    rows: Vec<Vec<IntPoly>>,
}

/// `(z, μ(z, w))` for `z < w` with nonzero leading coefficient.
type MuList = Vec<(ElemId, i64)>;

fn mu_list(g: &CoxeterGroup, row: &[IntPoly], w: ElemId) -> MuList {
    let lw = g.length(w);
    g.bruhat_interval(w)
        .filter_map(|z| {
            let d = lw - g.length(z);
            if d % 2 == 0 {
                return None;
            }
            let m = row[z.index()].coeff((d - 1) / 2);
            (m != 0).then_some((z, m))
        })
        .collect()
}

fn compute_row(g: &CoxeterGroup, rows: &[Vec<IntPoly>], mus: &[MuList], w: ElemId) -> Vec<IntPoly> {
    let mut row = vec![IntPoly::zero(); g.order()];
    if w == ElemId::IDENTITY {
        row[0] = IntPoly::one();
        return row;
    }
    let s = (0..g.rank()).find(|&s| g.is_left_descent(s, w)).expect("w ≠ e");
    let v = g.lmul(s, w);
    let lw = g.length(w);
    let correction: Vec<(ElemId, i64)> = mus[v.index()]
        .iter()
        .copied()
        .filter(|&(z, _)| g.is_left_descent(s, z))
        .collect();
    let pv = &rows[v.index()];
    for x in g.bruhat_interval(w) {
        let sx = g.lmul(s, x);
        let (a, b) = (&pv[sx.index()], &pv[x.index()]);
        let mut p = if g.length(sx) < g.length(x) { a + &b.shift(1) } else { &a.shift(1) + b };
        for &(z, m) in &correction {
            let pz = &rows[z.index()][x.index()];
            if !pz.is_zero() {
                p = &p - &pz.scale(m).shift((lw - g.length(z)) / 2);
            }
        }
        row[x.index()] = p;
    }
    row
}

impl KlTable {
    /// Builds every `P_{x,w}` by the standard recursion on a left descent,
    /// one length stratum at a time.
    pub fn build(g: &CoxeterGroup) -> KlTable {
        let n = g.order();
        let mut rows: Vec<Vec<IntPoly>> = Vec::with_capacity(n);
        let mut mus: Vec<MuList> = Vec::with_capacity(n);
        let mut start = 0;
        while start < n {
            let len = g.length(ElemId::from_index(start));
            let end = (start..n)
                .find(|&i| g.length(ElemId::from_index(i)) != len)
                .unwrap_or(n);
            let stratum: Vec<(Vec<IntPoly>, MuList)> = (start..end)
                .into_par_iter()
                .map(|i| {
                    let w = ElemId::from_index(i);
                    let row = compute_row(g, &rows, &mus, w);
                    let m = mu_list(g, &row, w);
                    (row, m)
                })
                .collect();
            for (row, m) in stratum {
                rows.push(row);
                mus.push(m);
            }
            start = end;
        }
        KlTable { coxeter: g.coxeter_matrix().to_vec(), rows }
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter
    }

    /// `P_{x,w}`, or zero when `x ≰ w`.
    pub fn get(&self, x: ElemId, w: ElemId) -> &IntPoly {
        &self.rows[w.index()][x.index()]
    }

    pub fn kl_polynomial(&self, x: ElemId, w: ElemId) -> Result<&IntPoly> {
        let p = self.get(x, w);
        if p.is_zero() {
            return Err(Error::NotBruhatBelow { x: x.to_string(), w: w.to_string() });
        }
        Ok(p)
    }

    /// Nonzero entries `(x, w, P_{x,w})`, ordered by `w` then `x`.
    pub fn entries(&self) -> impl Iterator<Item = (ElemId, ElemId, &IntPoly)> + '_ {
        self.rows.iter().enumerate().flat_map(|(w, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(move |(x, p)| (ElemId::from_index(x), ElemId::from_index(w), p))
        })
    }

    pub fn to_cache_string(&self, g: &CoxeterGroup) -> String {
        let mut out = format!("KLCACHE {CACHE_VERSION} {}\n", coxeter_hash(&self.coxeter));
        for (x, w, p) in self.entries() {
            out.push_str(&format!(
                "{};{};{}\n",
                format_word(g.word(x)),
                format_word(g.word(w)),
                p.to_csv()
            ));
        }
        out
    }

    /// Parses a cache file; `None` if it is corrupt, stale or for another system.
    pub fn from_cache_str(g: &CoxeterGroup, s: &str) -> Option<KlTable> {
        let mut lines = s.lines();
        let header = lines.next()?;
        if header != format!("KLCACHE {CACHE_VERSION} {}", coxeter_hash(g.coxeter_matrix())) {
            return None;
        }
        let n = g.order();
        let mut rows = vec![vec![IntPoly::zero(); n]; n];
        for line in lines {
            let mut parts = line.split(';');
            let (xs, ws, cs) = (parts.next()?, parts.next()?, parts.next()?);
            if parts.next().is_some() {
                return None;
            }
            let x = g.from_word(&parse_word(xs, g.rank()).ok()?).ok()?;
            let w = g.from_word(&parse_word(ws, g.rank()).ok()?).ok()?;
            rows[w.index()][x.index()] = IntPoly::from_csv(cs)?;
        }
        for w in g.elements() {
            for x in g.elements() {
                let p = &rows[w.index()][x.index()];
                let ok = if g.bruhat_leq(x, w) {
                    p.coeff(0) == 1 && (x == w || 2 * p.degree()? < g.length(w) - g.length(x))
                } else {
                    p.is_zero()
                };
                if !ok {
                    return None;
                }
            }
        }
        let table = KlTable { coxeter: g.coxeter_matrix().to_vec(), rows };
        // anything that does not reproduce the file byte for byte is rejected
        (table.to_cache_string(g) == s).then_some(table)
    }
}

/// Hex SHA-256 of the canonical text form of a Coxeter matrix.
pub fn coxeter_hash(coxeter: &[Vec<u32>]) -> String {
    let text = coxeter
        .iter()
        .map(|r| r.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";");
    hex::encode(Sha256::digest(format!("coxeter:{}:{text}", coxeter.len()).as_bytes()))
}

/// Default cache directory: `$JANTZEN_CACHE`, else the user cache directory.
pub fn default_cache_dir() -> Option<PathBuf> {
    if let Some(p) = std::env::var_os("JANTZEN_CACHE") {
        return Some(PathBuf::from(p));
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("jantzen"))
}

/// Memoized tables, optionally backed by a cache directory.
#[derive(Debug, Default)]
pub struct KlStore {
    dir: Option<PathBuf>,
    memo: Mutex<HashMap<Vec<Vec<u32>>, Arc<KlTable>>>,
}

impl KlStore {
    pub fn in_memory() -> Self {
        KlStore::default()
    }

    pub fn with_cache_dir(dir: impl Into<PathBuf>) -> Self {
        KlStore { dir: Some(dir.into()), memo: Mutex::default() }
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn cache_path(&self, g: &CoxeterGroup) -> Option<PathBuf> {
        let hash = coxeter_hash(g.coxeter_matrix());
        self.dir.as_ref().map(|d| d.join(format!("kl-{hash}.txt")))
    }

    /// The table for `g`. The element enumeration of a [`CoxeterGroup`] depends
    /// only on its Coxeter matrix, so tables are shared between blocks.
    pub fn table(&self, g: &CoxeterGroup) -> Result<Arc<KlTable>> {
        let key = g.coxeter_matrix().to_vec();
        if let Some(t) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(t.clone());
        }
        let path = self.cache_path(g);
        let cached = path
            .as_ref()
            .and_then(|p| fs::read_to_string(p).ok())
            .and_then(|s| KlTable::from_cache_str(g, &s));
        let table = match cached {
            Some(t) => t,
            None => {
                let t = KlTable::build(g);
                if let Some(p) = &path {
                    write_atomic(p, &t.to_cache_string(g))?;
                }
                t
            }
        };
        let table = Arc::new(table);
        self.memo.lock().expect("memo lock").insert(key, table.clone());
        Ok(table)
    }
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let err = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(err)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, contents).map_err(err)?;
    fs::rename(&tmp, path).map_err(err)
}
