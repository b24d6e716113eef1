//! Report types that exist only at the command line, and the aligned-text
//! rendering of every report. Text is derived from the same data as the JSON.

use std::fmt::Write;

use serde::Serialize;

use jantzen_core::blocks::Block;
use jantzen_core::filtration::{FiltrationReport, Layer, SumColumn};
use jantzen_core::parabolic::ParabolicReport;
use jantzen_core::roots::Weight;
use jantzen_core::shapovalov::OracleReport;
use jantzen_core::suite::Family;
use jantzen_core::weyl::{display_word, ElemId};

pub fn pass_str(pass: bool) -> String {
    if pass { "pass" } else { "fail" }.to_string()
}

fn vec_str<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn set_str(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

#[derive(Serialize)]
pub struct BlockReport {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub weight: String,
    pub mu: String,
    pub w_word: String,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub integral_positive_roots: Vec<Vec<i64>>,
    pub integral_simples: Vec<Vec<i64>>,
    pub coxeter_matrix: Vec<Vec<u32>>,
    pub order: usize,
    pub reps: Vec<String>,
}

impl BlockReport {
    pub fn new(block: &Block, nu: &Weight, w: ElemId) -> Self {
        let rs = block.root_system();
        let g = block.group();
        BlockReport {
            lie_type: rs.lie_type().to_string(),
            weight: nu.to_string(),
            mu: block.mu().to_string(),
            w_word: display_word(g.word(w)),
            j: block.singular_set().iter().map(|s| s + 1).collect(),
            integral_positive_roots: block
                .integral_positive_roots()
                .iter()
                .map(|&k| rs.positive_roots()[k].clone())
                .collect(),
            integral_simples: block.integral_simple_roots(),
            coxeter_matrix: block.coxeter_matrix().to_vec(),
            order: g.order(),
            reps: block.reps().iter().map(|&r| display_word(g.word(r))).collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "type      {}", self.lie_type);
        let _ = writeln!(s, "weight    {} = {} · {}", self.weight, self.w_word, self.mu);
        let simples: Vec<String> = self.integral_simples.iter().map(|r| vec_str(r)).collect();
        let _ = writeln!(s, "simples   {}", simples.join(" "));
        let _ = writeln!(s, "|Φ+|      {}", self.integral_positive_roots.len());
        let _ = writeln!(s, "|W|       {}", self.order);
        let _ = writeln!(s, "J         {}", set_str(&self.j));
        let _ = writeln!(s, "W^J       {} elements", self.reps.len());
        for row in &self.coxeter_matrix {
            let cells: Vec<String> = row.iter().map(|m| format!("{m:>2}")).collect();
            let _ = writeln!(s, "  {}", cells.join(" "));
        }
        s
    }
}

#[derive(Serialize)]
pub struct KlReport {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub coxeter_matrix: Vec<Vec<u32>>,
    pub x_word: String,
    pub w_word: String,
    pub polynomial: String,
    pub coeffs: Vec<i64>,
}

impl KlReport {
    pub fn text(&self) -> String {
        format!("P[{}, {}] = {}\n", self.x_word, self.w_word, self.polynomial)
    }
}

#[derive(Serialize)]
pub struct SumcheckReport {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub weight: String,
    pub mu: String,
    pub w_word: String,
    pub reflected: Vec<String>,
    pub sum_formula: String,
    pub columns: Vec<SumColumn>,
}

impl SumcheckReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} = {} · {}", self.lie_type, self.weight, self.w_word, self.mu);
        let _ = writeln!(s, "reflections: {}", self.reflected.join(" | "));
        let width = self.columns.iter().map(|c| c.z_word.len()).max().unwrap_or(1).max(1);
        for c in &self.columns {
            let _ = writeln!(s, "  {:<width$}  {:>3} {:>3}", c.z_word, c.lhs, c.rhs);
        }
        let _ = writeln!(s, "sum formula: {}", self.sum_formula);
        s
    }
}

#[derive(Serialize)]
pub struct SuiteEntry {
    pub family: Family,
    pub label: String,
    pub mu: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

#[derive(Serialize)]
pub struct SuiteReport {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub seed: u64,
    pub pass: String,
    pub weights: Vec<SuiteEntry>,
}

impl SuiteReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let lw = self.weights.iter().map(|e| e.label.len()).max().unwrap_or(0);
        let mw = self.weights.iter().map(|e| e.mu.len()).max().unwrap_or(0);
        for e in &self.weights {
            let status = if e.failures.is_empty() { "ok".to_string() } else { format!("FAIL {}", e.failures.join(" | ")) };
            let _ = writeln!(s, "{} {:<lw$}  {:<mw$}  {:>4} reps  {}", self.lie_type, e.label, e.mu, e.checked, status);
        }
        let _ = writeln!(s, "sum formula over suite: {}", self.pass);
        s
    }
}

#[derive(Serialize)]
pub struct ConjectureViolation {
    pub x_word: String,
    pub j: usize,
    pub z_word: String,
    pub inner: u64,
    pub outer: u64,
}

#[derive(Serialize)]
pub struct ConjectureReport {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub weight: String,
    pub mu: String,
    pub w_word: String,
    pub loewy_length: usize,
    pub pairs_checked: usize,
    pub domination: String,
    pub violations: Vec<ConjectureViolation>,
}

impl ConjectureReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} = {} · {}", self.lie_type, self.weight, self.w_word, self.mu);
        let _ = writeln!(s, "pairs x ≤ w checked: {}", self.pairs_checked);
        for v in &self.violations {
            let _ = writeln!(s, "  x={} j={} z={}: {} > {}", v.x_word, v.j, v.z_word, v.inner, v.outer);
        }
        let _ = writeln!(s, "domination: {}", self.domination);
        s
    }
}

fn layers_text(s: &mut String, layers: &[Layer]) {
    for l in layers {
        let simples: Vec<String> = l
            .simples
            .iter()
            .map(|x| if x.mult == 1 { format!("L({})", x.z_word) } else { format!("{}·L({})", x.mult, x.z_word) })
            .collect();
        let _ = writeln!(s, "  {:>2}  {}", l.j, simples.join(" + "));
    }
}

pub fn filtration_text(r: &FiltrationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {} = {} · {}", r.lie_type, r.weight, r.w_word, r.mu);
    let _ = writeln!(s, "J = {}, Loewy length {}", set_str(&r.j), r.loewy_length);
    layers_text(&mut s, &r.layers);
    let _ = writeln!(s, "sum formula: {}", r.sum_formula);
    s
}

pub fn parabolic_text(r: &ParabolicReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} λ = {} = {} · {} · {}", r.lie_type, r.weight, r.w_i_word, r.w_word, r.mu);
    let _ = writeln!(s, "I = {}, J = {}, Loewy length {}", set_str(&r.i), set_str(&r.j), r.loewy_length);
    layers_text(&mut s, &r.layers);
    let _ = writeln!(s, "character check: {}", r.character_check);
    s
}

pub fn oracle_text(r: &OracleReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {} = {} · {}, depth {}", r.lie_type, r.weight, r.w_word, r.mu, r.depth);
    let bw = r.rows.iter().map(|x| vec_str(&x.beta).len()).max().unwrap_or(0);
    let _ = writeln!(s, "  {:<bw$}  {:>4}  {:<16} {:<16} {:>3} {:>3}", "β", "dim", "dim M^i", "predicted", "v", "Σ");
    for row in &r.rows {
        let _ = writeln!(
            s,
            "  {:<bw$}  {:>4}  {:<16} {:<16} {:>3} {:>3}{}",
            vec_str(&row.beta),
            row.size,
            vec_str(&row.dims),
            vec_str(&row.predicted),
            row.det_valuation,
            row.predicted_det_valuation,
            if row.pass { "" } else { "  MISMATCH" }
        );
    }
    let _ = writeln!(s, "oracle: {}", pass_str(r.pass));
    s
}
