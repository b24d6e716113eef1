use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use jantzen_core::blocks::{normalize, Block};
use jantzen_core::filtration::{domination_check, layers, sum_formula_check, FiltrationReport};
use jantzen_core::kl::{default_cache_dir, KlStore};
use jantzen_core::parabolic::{enumerate_iwj, ParabolicReport};
use jantzen_core::roots::{LieType, RootSystem, Weight};
use jantzen_core::shapovalov::oracle_compare;
use jantzen_core::suite::{SuiteSpec, DEFAULT_SEED};
use jantzen_core::weyl::{display_word, parse_word, CoxeterGroup, ElemId};

mod render;

use render::*;

/// Layer multiplicities of Verma modules in category O.
#[derive(Parser)]
#[command(name = "jantzen", version)]
struct Cli {
    /// Emit JSON instead of aligned text.
    #[arg(long, global = true)]
    json: bool,
    /// Directory for the Kazhdan-Lusztig table cache.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<std::path::PathBuf>,
    /// Keep Kazhdan-Lusztig tables in memory only.
    #[arg(long, global = true, conflicts_with = "cache")]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Target {
    /// Lie type such as A2, B3 or G2.
    #[arg(long = "type", value_name = "T")]
    lie_type: String,
    /// Comma-separated rationals in Bourbaki order, e.g. -1,1/2.
    #[arg(long, value_name = "W", allow_hyphen_values = true)]
    weight: String,
}

#[derive(Subcommand)]
enum Command {
    /// Integral root system, Weyl group and singular set of a weight.
    Block(Target),
    /// A single Kazhdan-Lusztig polynomial.
    Kl {
        #[arg(long = "type", value_name = "T")]
        lie_type: String,
        /// Use the integral Weyl group of this weight instead of W.
        #[arg(long, value_name = "W", allow_hyphen_values = true)]
        block_of: Option<String>,
        #[arg(long, value_name = "WORD")]
        x: String,
        #[arg(long, value_name = "WORD")]
        w: String,
    },
    /// Radical layers of M(weight).
    Layers(Target),
    /// Verify the sum formula for one weight or a generated suite.
    Sumcheck {
        #[arg(long = "type", value_name = "T")]
        lie_type: String,
        #[arg(long, value_name = "W", allow_hyphen_values = true, required_unless_present = "suite", conflicts_with = "suite")]
        weight: Option<String>,
        #[arg(long)]
        suite: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Layer domination for every x ≤ w below M(weight).
    Conjecture(Target),
    /// Layers of a parabolic Verma module.
    Parabolic {
        #[arg(long = "type", value_name = "T")]
        lie_type: String,
        /// Comma-separated 1-based simple roots; may be empty.
        #[arg(long = "I", value_name = "LIST", default_value = "")]
        i: String,
        /// The highest weight λ, or the antidominant μ when --w is given.
        #[arg(long, value_name = "W", allow_hyphen_values = true)]
        weight: String,
        #[arg(long, value_name = "WORD")]
        w: Option<String>,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Compare layers with the Jantzen filtration of the contravariant form.
    Oracle {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        depth: usize,
    },
}

/// A finished command: the report and whether its checks passed.
struct Outcome {
    json: String,
    text: String,
    pass: bool,
}

fn outcome<T: Serialize>(report: &T, text: String, pass: bool) -> anyhow::Result<Outcome> {
    Ok(Outcome { json: serde_json::to_string_pretty(report)?, text, pass })
}

fn root_system(t: &str) -> anyhow::Result<Arc<RootSystem>> {
    let lt: LieType = t.parse()?;
    Ok(Arc::new(RootSystem::new(lt)))
}

fn weight(s: &str) -> anyhow::Result<Weight> {
    Ok(s.parse()?)
}

fn element(g: &CoxeterGroup, s: &str) -> anyhow::Result<ElemId> {
    let word = parse_word(s, g.rank())?;
    Ok(g.from_word(&word)?)
}

fn store(cli: &Cli) -> KlStore {
    if cli.no_cache {
        return KlStore::in_memory();
    }
    match cli.cache.clone().or_else(default_cache_dir) {
        Some(dir) => KlStore::with_cache_dir(dir),
        None => KlStore::in_memory(),
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let store = store(cli);
    match &cli.command {
        Command::Block(t) => {
            let (block, w) = normalize(root_system(&t.lie_type)?, &weight(&t.weight)?)?;
            let r = BlockReport::new(&block, &weight(&t.weight)?, w);
            let text = r.text();
            outcome(&r, text, true)
        }
        Command::Kl { lie_type, block_of, x, w } => {
            let rs = root_system(lie_type)?;
            let g = match block_of {
                Some(b) => normalize(rs, &weight(b)?)?.0.group().clone(),
                None => Arc::new(CoxeterGroup::weyl(&rs)?),
            };
            let (xe, we) = (element(&g, x)?, element(&g, w)?);
            let kl = store.table(&g)?;
            let p = kl.kl_polynomial(xe, we)?;
            let r = KlReport {
                lie_type: lie_type.clone(),
                coxeter_matrix: g.coxeter_matrix().to_vec(),
                x_word: display_word(g.word(xe)),
                w_word: display_word(g.word(we)),
                polynomial: p.to_string(),
                coeffs: p.coeffs().to_vec(),
            };
            let text = r.text();
            outcome(&r, text, true)
        }
        Command::Layers(t) => {
            let rs = root_system(&t.lie_type)?;
            let nu = weight(&t.weight)?;
            let (block, w) = normalize(rs, &nu)?;
            let kl = store.table(block.group())?;
            let r = FiltrationReport::new(&block, &kl, &nu, w)?;
            let text = filtration_text(&r);
            let pass = r.sum_formula == "pass";
            outcome(&r, text, pass)
        }
        Command::Sumcheck { lie_type, weight: Some(wt), .. } => {
            let rs = root_system(lie_type)?;
            let nu = weight(wt)?;
            let (block, w) = normalize(rs, &nu)?;
            let kl = store.table(block.group())?;
            let res = sum_formula_check(&block, &kl, w)?;
            let g = block.group();
            let r = SumcheckReport {
                lie_type: lie_type.clone(),
                weight: nu.to_string(),
                mu: block.mu().to_string(),
                w_word: display_word(g.word(w)),
                reflected: res.reflected.iter().map(|&v| display_word(g.word(v))).collect(),
                sum_formula: pass_str(res.pass),
                columns: res.columns,
            };
            let text = r.text();
            outcome(&r, text, res.pass)
        }
        Command::Sumcheck { lie_type, seed, .. } => {
            let rs = root_system(lie_type)?;
            let spec = SuiteSpec { seed: *seed, ..SuiteSpec::new(rs.lie_type()) };
            let mut weights = vec![];
            for sw in spec.generate() {
                let block = jantzen_core::blocks::integral_block(rs.clone(), &sw.mu)?;
                let kl = store.table(block.group())?;
                let g = block.group();
                let mut failures = vec![];
                for &w in block.reps() {
                    if !sum_formula_check(&block, &kl, w)?.pass {
                        failures.push(display_word(g.word(w)));
                    }
                }
                weights.push(SuiteEntry {
                    family: sw.family,
                    label: sw.label,
                    mu: sw.mu.to_string(),
                    checked: block.reps().len(),
                    failures,
                });
            }
            let pass = weights.iter().all(|e| e.failures.is_empty());
            let r = SuiteReport { lie_type: lie_type.clone(), seed: *seed, pass: pass_str(pass), weights };
            let text = r.text();
            outcome(&r, text, pass)
        }
        Command::Conjecture(t) => {
            let rs = root_system(&t.lie_type)?;
            let nu = weight(&t.weight)?;
            let (block, w) = normalize(rs, &nu)?;
            let kl = store.table(block.group())?;
            let r = conjecture_report(&block, &kl, &nu, w)?;
            let text = r.text();
            let pass = r.violations.is_empty();
            outcome(&r, text, pass)
        }
        Command::Parabolic { lie_type, i, weight: wt, w, depth } => {
            let rs = root_system(lie_type)?;
            let given = weight(wt)?;
            let i_roots = parse_list(i)?;
            if let Some(&bad) = i_roots.iter().find(|&&r| r == 0 || r > rs.rank()) {
                return Err(anyhow!("simple root {bad} out of range 1..={}", rs.rank()));
            }
            let i_roots: Vec<usize> = i_roots.iter().map(|r| r - 1).collect();
            let (pb, we) = match w {
                Some(word) => {
                    let block = jantzen_core::blocks::integral_block(rs, &given)?;
                    let pb = enumerate_iwj(&block, &i_roots)?;
                    let we = element(block.group(), word)?;
                    (pb, we)
                }
                None => {
                    let (block, _) = normalize(rs, &given)?;
                    let pb = enumerate_iwj(&block, &i_roots)?;
                    let we = pb
                        .reps()
                        .iter()
                        .copied()
                        .find(|&r| pb.highest_weight(r) == given)
                        .ok_or_else(|| anyhow!("{given} is not w_I wμ for any w in the parabolic parameter set"))?;
                    (pb, we)
                }
            };
            let kl = store.table(pb.base().group())?;
            let r = ParabolicReport::new(&pb, &kl, we, *depth)?;
            let text = parabolic_text(&r);
            let pass = r.character_check == "pass";
            outcome(&r, text, pass)
        }
        Command::Oracle { target, depth } => {
            let rs = root_system(&target.lie_type)?;
            let r = oracle_compare(rs, &store, &weight(&target.weight)?, *depth)?;
            let text = oracle_text(&r);
            let pass = r.pass;
            outcome(&r, text, pass)
        }
    }
}

fn parse_list(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().with_context(|| format!("malformed simple root index {p:?}")))
        .collect()
}

fn conjecture_report(
    block: &Block,
    kl: &jantzen_core::kl::KlTable,
    nu: &Weight,
    w: ElemId,
) -> anyhow::Result<ConjectureReport> {
    let g = block.group();
    let mut pairs = 0;
    let mut violations = vec![];
    for &x in block.reps() {
        if !g.bruhat_leq(x, w) {
            continue;
        }
        pairs += 1;
        for v in domination_check(block, kl, x, w)? {
            violations.push(ConjectureViolation {
                x_word: display_word(g.word(x)),
                j: v.j,
                z_word: display_word(g.word(v.z)),
                inner: v.inner,
                outer: v.outer,
            });
        }
    }
    let loewy_length = layers(block, kl, w)?.nonzero_layers();
    Ok(ConjectureReport {
        lie_type: block.root_system().lie_type().to_string(),
        weight: nu.to_string(),
        mu: block.mu().to_string(),
        w_word: display_word(g.word(w)),
        loewy_length,
        pairs_checked: pairs,
        domination: pass_str(violations.is_empty()),
        violations,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
