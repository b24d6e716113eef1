//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
//! Run with `cargo test -p jantzen-core --test acceptance`.

use std::sync::Arc;
use std::time::{Duration, Instant};

use jantzen_core::blocks::{integral_block, phi_plus_count, Block};
use jantzen_core::filtration::{domination_check, layers, sum_formula_check};
use jantzen_core::kl::{KlStore, KlTable};
use jantzen_core::parabolic::{enumerate_iwj, parabolic_character_check, parabolic_layers, parabolic_layers_via_vermas};
use jantzen_core::roots::RootSystem;
use jantzen_core::shapovalov::oracle_compare;
use jantzen_core::suite::{SuiteSpec, SUITE_TYPES};
use jantzen_core::weyl::{CoxeterGroup, ElemId};

const SUM_FORMULA_BUDGET: Duration = Duration::from_secs(300);
const ORACLE_BUDGET: Duration = Duration::from_secs(600);
const KL_SANITY_MAX_ORDER: usize = 48;
const CHARACTER_DEPTH: usize = 4;

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, detail: detail.into() }
}

/// Every suite block with its KL table, built once from a cold store.
struct Fixture {
    blocks: Vec<(String, Block, Arc<KlTable>)>,
}

impl Fixture {
    fn new(store: &KlStore) -> Self {
        let mut blocks = vec![];
        for t in SUITE_TYPES {
            let rs = Arc::new(RootSystem::new(t.parse().unwrap()));
            for sw in SuiteSpec::new(rs.lie_type()).generate() {
                let b = integral_block(rs.clone(), &sw.mu).expect("suite weights are antidominant");
                let kl = store.table(b.group()).expect("in-memory store");
                blocks.push((format!("{t} {}", sw.mu), b, kl));
            }
        }
        Fixture { blocks }
    }

    fn pairs(&self) -> usize {
        self.blocks.iter().map(|(_, b, _)| b.reps().len()).sum()
    }
}

fn sum_formula(fx: &Fixture, started: Instant) -> Outcome {
    let mut bad = vec![];
    for (name, b, kl) in &fx.blocks {
        for &w in b.reps() {
            match sum_formula_check(b, kl, w) {
                Ok(r) if r.pass => {}
                Ok(_) => bad.push(format!("{name} w={}", b.group().word_string(w))),
                Err(e) => bad.push(format!("{name}: {e}")),
            }
        }
    }
    let elapsed = started.elapsed();
    if !bad.is_empty() {
        return fail(format!("{} failures, first {}", bad.len(), bad[0]));
    }
    if elapsed > SUM_FORMULA_BUDGET {
        return fail(format!("exact but took {elapsed:.1?} > {SUM_FORMULA_BUDGET:?}"));
    }
    ok(format!("{} (μ, w) pairs over {} types exact in {elapsed:.1?}", fx.pairs(), SUITE_TYPES.len()))
}

fn oracle() -> Outcome {
    let started = Instant::now();
    let cases: [(&str, &str, usize); 6] = [
        ("A1", "-1", 8),
        ("A1", "0", 8),
        ("A1", "-1/2", 8),
        ("A2", "-1,-1", 5),
        ("A2", "0,-1", 5),
        ("B2", "-1,-1", 4),
    ];
    let store = KlStore::in_memory();
    let mut runs = 0;
    for (t, mu, depth) in cases {
        let rs = Arc::new(RootSystem::new(t.parse().unwrap()));
        let b = integral_block(rs.clone(), &mu.parse().unwrap()).unwrap();
        for &w in b.reps() {
            let nu = b.act(w);
            runs += 1;
            match oracle_compare(rs.clone(), &store, &nu, depth) {
                Ok(r) if r.pass => {}
                Ok(r) => {
                    let row = r.rows.iter().find(|x| !x.pass).unwrap();
                    return fail(format!("{t} ν={nu} β={:?}: {:?} vs {:?}", row.beta, row.dims, row.predicted));
                }
                Err(e) => return fail(format!("{t} ν={nu}: {e}")),
            }
        }
    }
    let elapsed = started.elapsed();
    if elapsed > ORACLE_BUDGET {
        return fail(format!("agreement but took {elapsed:.1?}"));
    }
    ok(format!("{runs} Verma modules agree in every weight space in {elapsed:.1?}"))
}

fn domination(fx: &Fixture) -> Outcome {
    let mut checked = 0;
    for (name, b, kl) in &fx.blocks {
        let g = b.group();
        for &w in b.reps() {
            for &x in b.reps().iter().filter(|&&x| g.bruhat_leq(x, w)) {
                checked += 1;
                match domination_check(b, kl, x, w) {
                    Ok(v) if v.is_empty() => {}
                    Ok(v) => return fail(format!("{name} x={x} w={w}: {} violations", v.len())),
                    Err(e) => return fail(format!("{name}: {e}")),
                }
            }
        }
    }
    ok(format!("{checked} Bruhat pairs, zero violations"))
}

fn rigidity(fx: &Fixture) -> Outcome {
    for (name, b, kl) in &fx.blocks {
        let g = b.group();
        for &w in b.reps() {
            let t = match layers(b, kl, w) {
                Ok(t) => t,
                Err(e) => return fail(format!("{name}: {e}")),
            };
            let l = g.length(w);
            let only = |j: usize, z: ElemId| {
                t.m[j].iter().zip(&t.columns).all(|(&m, &c)| m == u64::from(c == z))
            };
            if t.nonzero_layers() != l + 1 || !only(0, w) || !only(l, ElemId::IDENTITY) {
                return fail(format!("{name} w={}", g.word_string(w)));
            }
        }
    }
    ok(format!("{} layer tables rigid with Loewy length ℓ(w)+1", fx.pairs()))
}

fn kl_sanity() -> Outcome {
    let store = KlStore::in_memory();
    let mut entries = 0;
    for t in ["A1", "A2", "B2", "G2", "A3", "B3", "C3"] {
        let rs = RootSystem::new(t.parse().unwrap());
        let g = CoxeterGroup::weyl(&rs).unwrap();
        if g.order() > KL_SANITY_MAX_ORDER {
            continue;
        }
        let kl = store.table(&g).unwrap();
        for w in g.elements() {
            for x in g.bruhat_interval(w) {
                entries += 1;
                let p = kl.get(x, w);
                let gap = g.length(w) - g.length(x);
                let c = p.coeffs();
                let bound_ok = x == w && c == [1] || x != w && p.degree().unwrap_or(0) * 2 < gap;
                if c.first() != Some(&1) || c.iter().any(|&a| a < 0) || !bound_ok {
                    return fail(format!("{t} P[{x},{w}] = {p}"));
                }
                if rs.rank() == 2 && c != [1] {
                    return fail(format!("dihedral {t} P[{x},{w}] = {p}"));
                }
            }
        }
    }
    let rs = RootSystem::new("A3".parse().unwrap());
    let g = CoxeterGroup::weyl(&rs).unwrap();
    let kl = store.table(&g).unwrap();
    let x = g.from_word(&[1]).unwrap();
    let w = g.from_word(&[1, 0, 2, 1]).unwrap();
    if kl.get(x, w).coeffs() != [1, 1] {
        return fail(format!("A3 P[s2, s2s1s3s2] = {}", kl.get(x, w)));
    }
    ok(format!("{entries} entries; dihedral all 1; A3 P[s2, s2s1s3s2] = 1 + q"))
}

fn length_identity(fx: &Fixture) -> Outcome {
    for (name, b, _) in &fx.blocks {
        let g = b.group();
        for &w in b.reps() {
            let counted = phi_plus_count(b.root_system(), &b.act(w));
            if counted != g.length(w) || b.integral_inversions(w) != g.length(w) {
                return fail(format!("{name} w={}: {counted} vs {}", g.word_string(w), g.length(w)));
            }
        }
    }
    ok(format!("{} (μ, w) pairs", fx.pairs()))
}

fn parabolic(fx: &Fixture) -> Outcome {
    let (mut cases, mut unsupported) = (0, vec![]);
    for (name, b, kl) in &fx.blocks {
        let rank = b.root_system().rank();
        let candidates: Vec<usize> = b.integral_simples().iter().copied().filter(|&k| k < rank).collect();
        for mask in 0u32..1 << candidates.len() {
            let i: Vec<usize> = (0..candidates.len()).filter(|k| mask >> k & 1 == 1).map(|k| candidates[k]).collect();
            let pb = match enumerate_iwj(b, &i) {
                Ok(pb) => pb,
                Err(e) => return fail(format!("{name} I={i:?}: {e}")),
            };
            for &w in pb.reps() {
                cases += 1;
                let t = match parabolic_layers(&pb, kl, w) {
                    Ok(t) => t,
                    Err(e) => {
                        unsupported.push(format!("{name} I={i:?} w={w}: {e}"));
                        continue;
                    }
                };
                let alt = parabolic_layers_via_vermas(&pb, kl, w).unwrap();
                let regular_cols = pb.base().group().bruhat_interval(w).filter(|&z| {
                    pb.base().group().upper_coset_membership(z, pb.i_generators(), &[])
                });
                let regular_cols: Vec<ElemId> = regular_cols.collect();
                for (c, &z) in t.table.columns.iter().enumerate() {
                    let rc = regular_cols.iter().position(|&r| r == z).unwrap();
                    for (j, row) in t.table.m.iter().enumerate() {
                        if row[c] as i64 != alt[j][rc] {
                            return fail(format!("{name} I={i:?} w={w} z={z} j={j}: singular table differs"));
                        }
                    }
                }
                match parabolic_character_check(&pb, w, CHARACTER_DEPTH) {
                    Ok(m) if m.is_empty() => {}
                    Ok(m) => return fail(format!("{name} I={i:?} w={w}: character mismatch at {:?}", m[0].gamma)),
                    Err(e) => return fail(format!("{name} I={i:?}: {e}")),
                }
            }
        }
    }
    if let Some(first) = unsupported.first() {
        return fail(format!("{} formula-unsupported blocks, first {first}", unsupported.len()));
    }
    ok(format!("{cases} (μ, I, w) cases nonnegative, restricted and character-exact to depth {CHARACTER_DEPTH}"))
}

fn main() {
    let started = Instant::now();
    let store = KlStore::in_memory();
    let fx = Fixture::new(&store);
    let criteria: Vec<(&str, Outcome)> = vec![
        ("1 sum formula", sum_formula(&fx, started)),
        ("2 contravariant form oracle", oracle()),
        ("3 layer domination", domination(&fx)),
        ("4 rigidity and Loewy length", rigidity(&fx)),
        ("5 KL engine sanity", kl_sanity()),
        ("6 |Φ_wμ^+| = ℓ(w)", length_identity(&fx)),
        ("7 parabolic consistency", parabolic(&fx)),
    ];
    let mut failed = 0;
    for (name, o) in &criteria {
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
