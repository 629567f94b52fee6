//! Acceptance run: one PASS/FAIL line per criterion over the built-in catalog.

use std::fs;
use std::process::Command;

use matroid_exchange::catalog::{builtin_catalog, CatalogEntry, Tag};
use matroid_exchange::exchange::{sym_set, BasisPair};
use matroid_exchange::laws::{
    decide_binary_by_xor, has_u24_minor, law_binary_xor, law_conn_parity, law_greene_parity, replay_witness,
    run_suite, Instance, LawConfig, LawId, LawReport,
};
use matroid_exchange::{ElementSet, Matroid, MatroidSpec};
use serde_json::json;

type Check<'a> = Box<dyn Fn() -> Result<String, String> + 'a>;

struct Run {
    entries: Vec<CatalogEntry>,
    reports: Vec<LawReport>,
}

impl Run {
    fn entry(&self, name: &str) -> &CatalogEntry {
        self.entries.iter().find(|e| e.name == name).expect("entry exists")
    }

    fn reports(&self, law: LawId) -> impl Iterator<Item = &LawReport> {
        self.reports.iter().filter(move |r| r.law == law)
    }

    /// Every report of `law` passes; returns the failures as text.
    fn all_pass(&self, law: LawId) -> Result<usize, String> {
        let mut checked = 0;
        for r in self.reports(law) {
            if !r.passed() {
                return Err(format!("{} fails {}: {:?}", r.matroid, law, r.witness));
            }
            checked += r.instances_checked;
        }
        Ok(checked)
    }
}

fn u24() -> Matroid {
    Matroid::new(MatroidSpec::Uniform { r: 2, n: 4 }).unwrap()
}

/// Within the n <= 12 cap and with two elements outside a basis.
fn has_exchange_instances(e: &CatalogEntry) -> bool {
    let m = e.matroid().unwrap();
    m.n() <= 12 && m.n() - m.rank() >= 2
}

fn c1_circuit_interval(run: &Run) -> Result<String, String> {
    let n = run.all_pass(LawId::CircuitInterval)?;
    for r in run.reports(LawId::CircuitInterval).filter(|r| r.vacuous) {
        if has_exchange_instances(run.entry(&r.matroid)) {
            return Err(format!("{} unchecked", r.matroid));
        }
    }
    Ok(format!("{n} instances"))
}

fn c2_formulas(run: &Run) -> Result<String, String> {
    let n = run.all_pass(LawId::SymConnFormulas)?;
    let blocks = run.entries.iter().filter(|e| e.has(Tag::Block)).count();
    Ok(format!("{n} instances over {blocks} block entries"))
}

fn c3_conn_cardinality(run: &Run) -> Result<String, String> {
    run.all_pass(LawId::ConnCardinality).map(|n| format!("{n} instances"))
}

fn c4_sym_evolution(run: &Run) -> Result<String, String> {
    let n = run.all_pass(LawId::SymEvolution)?;
    let mut equality = 0;
    for r in run.reports(LawId::SymEvolution).filter(|r| !r.vacuous) {
        if run.entry(&r.matroid).has(Tag::Binary) {
            if r.details.get("binary_equality_checked") != Some(&json!(true)) {
                return Err(format!("{}: equality not checked on a binary entry", r.matroid));
            }
            equality += 1;
        }
    }
    if equality == 0 {
        return Err("no binary entry had equality checked".into());
    }
    Ok(format!("{n} instances, equality on {equality} binary entries"))
}

fn c5_three_exchanges(run: &Run) -> Result<String, String> {
    let n = run.all_pass(LawId::ThreeExchanges)?;
    let applicable = run
        .reports(LawId::ThreeExchanges)
        .filter(|r| run.entry(&r.matroid).matroid().unwrap().rank() >= 3 && !r.vacuous)
        .count();
    Ok(format!("{n} pairs over {applicable} entries"))
}

fn c6_rank4(run: &Run) -> Result<String, String> {
    let n = run.all_pass(LawId::Rank4Full4)?;
    if n == 0 {
        return Err("no rank-4 pairs".into());
    }
    Ok(format!("{n} pairs"))
}

fn c7_rank5(run: &Run) -> Result<String, String> {
    let n = run.all_pass(LawId::Rank5Full6)?;
    let random_gf2 = run
        .reports(LawId::Rank5Full6)
        .filter(|r| !r.vacuous)
        .filter(|r| {
            let e = run.entry(&r.matroid);
            let m = e.matroid().unwrap();
            m.field() == Some(2) && m.rank() == 5 && m.n() == 10 && e.name.starts_with("gf2")
        })
        .count();
    if random_gf2 < 5 {
        return Err(format!("only {random_gf2} random GF(2) rank-5 entries checked"));
    }
    Ok(format!("{n} pairs, {random_gf2} random GF(2) rank-5 entries"))
}

fn c8_binary_xor(run: &Run) -> Result<String, String> {
    let mut n = 0;
    for r in run.reports(LawId::BinaryXor) {
        let binary = run.entry(&r.matroid).has(Tag::Binary);
        if binary && !r.passed() {
            return Err(format!("{} binary entry: {:?}", r.matroid, r.witness));
        }
        if binary && r.vacuous && has_exchange_instances(run.entry(&r.matroid)) {
            return Err(format!("{} binary entry unchecked", r.matroid));
        }
        n += r.instances_checked;
    }
    let m = u24();
    let report = law_binary_xor(&m, &LawConfig::default());
    let w = report.witness.as_ref().ok_or("U(2,4) has no XOR witness")?;
    let expected = Instance::BasisExchange {
        basis: ElementSet::from([0, 1]),
        x: 2,
        y: 3,
        b: 0,
    };
    if w.instance != expected {
        return Err(format!("unexpected U(2,4) witness {:?}", w.instance));
    }
    if !replay_witness(LawId::BinaryXor, &m, w) {
        return Err("U(2,4) witness does not replay".into());
    }
    if replay_witness(LawId::CircuitInterval, &m, w) {
        return Err("U(2,4) witness violates the inclusions".into());
    }
    Ok(format!("{n} instances; U(2,4) witness breaks equality only"))
}

fn c9_characterization(run: &Run) -> Result<String, String> {
    let cfg = LawConfig::default();
    let mut n = 0;
    for e in &run.entries {
        let m = e.matroid().unwrap();
        if m.n() > 8 {
            continue;
        }
        let by_xor = decide_binary_by_xor(&m, &cfg).map_err(|e| e.to_string())?;
        let by_minor = !has_u24_minor(&m).map_err(|e| e.to_string())?;
        if by_xor != by_minor {
            return Err(format!("{}: xor {by_xor}, minor {by_minor}", e.name));
        }
        n += 1;
    }
    Ok(format!("{n} matroids agree"))
}

fn c10_greene(run: &Run) -> Result<String, String> {
    let n = run.all_pass(LawId::GreeneParity)?;
    let m = u24();
    let pair = BasisPair::new(&m, ElementSet::from([0, 1]), ElementSet::from([2, 3])).unwrap();
    let sym = sym_set(&pair, 0).map_err(|e| e.to_string())?;
    if sym.len() != 2 {
        return Err(format!("|Sym(0)| = {} on U(2,4)", sym.len()));
    }
    let report = law_greene_parity(&m, &LawConfig::default());
    if !report.details.contains_key("even_sym") {
        return Err("U(2,4) report carries no even |Sym| witness".into());
    }
    Ok(format!("{n} instances; U(2,4) |Sym(0,{{0,1}},{{2,3}})| = 2"))
}

fn c11_conn_parity(run: &Run) -> Result<String, String> {
    let n = run.all_pass(LawId::ConnParity)?;
    let report = law_conn_parity(&u24(), &LawConfig::default());
    if report.details.get("all_conn_even") != Some(&json!(true)) || report.details.get("binary") != Some(&json!(false)) {
        return Err(format!("U(2,4) details {:?}", report.details));
    }
    Ok(format!("{n} instances; U(2,4) all even and not binary"))
}

fn c12_determinism() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for run in ["r1", "r2"] {
        let out = dir.path().join(run);
        let status = Command::new(env!("CARGO_BIN_EXE_matroid-exchange"))
            .args(["verify", "--catalog", "builtin", "--laws", "all", "--seed", "1", "--out"])
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(format!("verify exited {:?}", status.status.code()));
        }
        let jsonl = fs::read(out.join("reports.jsonl")).map_err(|e| e.to_string())?;
        let csv = fs::read(out.join("summary.csv")).map_err(|e| e.to_string())?;
        outputs.push((jsonl, csv));
    }
    if outputs[0] != outputs[1] {
        return Err("reports differ between runs".into());
    }
    Ok(format!("{} bytes identical", outputs[0].0.len() + outputs[0].1.len()))
}

#[test]
fn acceptance() {
    let entries = builtin_catalog();
    let reports = run_suite(&entries, &LawId::ALL, &LawConfig::default()).expect("suite runs");
    let run = Run { entries, reports };

    let criteria: Vec<(&str, Check<'_>)> = vec![
        ("circuit sandwich on every instance", Box::new(|| c1_circuit_interval(&run))),
        ("Sym/Conn formulas match definitions", Box::new(|| c2_formulas(&run))),
        ("|Conn| is never 1", Box::new(|| c3_conn_cardinality(&run))),
        ("Sym evolution bounds, equality when binary", Box::new(|| c4_sym_evolution(&run))),
        ("three serial exchanges at rank >= 3", Box::new(|| c5_three_exchanges(&run))),
        ("rank-4 full exchange of length 4", Box::new(|| c6_rank4(&run))),
        ("rank-5 full exchange of length <= 6", Box::new(|| c7_rank5(&run))),
        ("XOR equality on binary entries", Box::new(|| c8_binary_xor(&run))),
        ("XOR test agrees with U(2,4)-minor test", Box::new(|| c9_characterization(&run))),
        ("Greene parity", Box::new(|| c10_greene(&run))),
        ("Conn parity", Box::new(|| c11_conn_parity(&run))),
        ("byte-identical verify runs", Box::new(c12_determinism)),
    ];

    let mut failed = Vec::new();
    for (i, (desc, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(info) => println!("PASS {} {desc} ({info})", i + 1),
            Err(why) => {
                println!("FAIL {} {desc}: {why}", i + 1);
                failed.push(format!("{} {desc}", i + 1));
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
