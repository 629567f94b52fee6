//! Executable checks of basis-exchange identities.
//!
//! Each law sweeps every applicable instance of one matroid in a fixed
//! order and stops at the first violation. A failing report carries the
//! violating [`Instance`], which [`replay_witness`] re-checks on its own.

mod binary;
mod circuits;
mod pairs;
mod search;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::catalog::{CatalogEntry, Tag};
use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::{Matroid, EXHAUSTIVE_CAP};

pub use binary::{binary_truth, decide_binary_by_xor, has_u24_minor, U24_MINOR_CAP};
pub use circuits::{law_binary_xor, law_circuit_elimination, law_circuit_interval, ELIMINATION_CAP};
pub use pairs::{
    law_block_cocircuit, law_conn_cardinality, law_conn_parity, law_greene_parity,
    law_sym_conn_formulas, law_sym_conn_identity, law_sym_evolution, EvolutionCase,
};
pub use search::{
    law_rank4_full4, law_rank5_full6, law_three_exchanges, law_two_exchanges,
    law_xor_characterization,
};

/// Ground-set cap for [`law_xor_characterization`].
pub const XOR_CHARACTERIZATION_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LawId {
    CircuitInterval,
    CircuitElimination,
    BlockCocircuit,
    SymConnIdentity,
    SymConnFormulas,
    ConnCardinality,
    SymEvolution,
    TwoExchanges,
    ThreeExchanges,
    Rank4Full4,
    Rank5Full6,
    BinaryXor,
    XorCharacterization,
    GreeneParity,
    ConnParity,
}

impl LawId {
    pub const ALL: [LawId; 15] = [
        LawId::CircuitInterval,
        LawId::CircuitElimination,
        LawId::BlockCocircuit,
        LawId::SymConnIdentity,
        LawId::SymConnFormulas,
        LawId::ConnCardinality,
        LawId::SymEvolution,
        LawId::TwoExchanges,
        LawId::ThreeExchanges,
        LawId::Rank4Full4,
        LawId::Rank5Full6,
        LawId::BinaryXor,
        LawId::XorCharacterization,
        LawId::GreeneParity,
        LawId::ConnParity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LawId::CircuitInterval => "circuit_interval",
            LawId::CircuitElimination => "circuit_elimination",
            LawId::BlockCocircuit => "block_cocircuit",
            LawId::SymConnIdentity => "sym_conn_identity",
            LawId::SymConnFormulas => "sym_conn_formulas",
            LawId::ConnCardinality => "conn_cardinality",
            LawId::SymEvolution => "sym_evolution",
            LawId::TwoExchanges => "two_exchanges",
            LawId::ThreeExchanges => "three_exchanges",
            LawId::Rank4Full4 => "rank4_full4",
            LawId::Rank5Full6 => "rank5_full6",
            LawId::BinaryXor => "binary_xor",
            LawId::XorCharacterization => "xor_characterization",
            LawId::GreeneParity => "greene_parity",
            LawId::ConnParity => "conn_parity",
        }
    }

    /// Parses `all` or a comma-separated list of law ids.
    pub fn parse_list(s: &str) -> Result<Vec<LawId>> {
        if s.trim() == "all" {
            return Ok(LawId::ALL.to_vec());
        }
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LawId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LawId::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::UnknownLaw(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawConfig {
    /// Matroids with a larger ground set are skipped (vacuous pass).
    pub max_ground: usize,
    /// Sample at most this many disjoint pairs per matroid.
    pub pair_cap: Option<usize>,
    pub seed: u64,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            max_ground: 12,
            pair_cap: None,
            seed: 1,
        }
    }
}

impl LawConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_ground > EXHAUSTIVE_CAP {
            return Err(Error::GroundSetTooLarge {
                n: self.max_ground,
                cap: EXHAUSTIVE_CAP,
            });
        }
        Ok(())
    }
}

/// One checked instance of a law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Instance {
    /// A basis `B`, distinct `x, y ∉ B` and `b ∈ C(x, B) ∩ B`.
    BasisExchange {
        basis: ElementSet,
        x: usize,
        y: usize,
        b: usize,
    },
    Circuits {
        c1: ElementSet,
        c2: ElementSet,
        x: usize,
        y: usize,
    },
    Pair {
        #[serde(rename = "A")]
        a_set: ElementSet,
        #[serde(rename = "B")]
        b_set: ElementSet,
    },
    PairElement {
        #[serde(rename = "A")]
        a_set: ElementSet,
        #[serde(rename = "B")]
        b_set: ElementSet,
        a: usize,
    },
    PairElements {
        #[serde(rename = "A")]
        a_set: ElementSet,
        #[serde(rename = "B")]
        b_set: ElementSet,
        a: usize,
        a2: usize,
    },
    /// Exchange `a <-> b`, then look at `a2`.
    Evolution {
        #[serde(rename = "A")]
        a_set: ElementSet,
        #[serde(rename = "B")]
        b_set: ElementSet,
        a: usize,
        b: usize,
        a2: usize,
    },
    Matroid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub instance: Instance,
    /// Expected versus computed sets, in words.
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: LawId,
    pub matroid: String,
    pub instances_checked: usize,
    pub verdict: Verdict,
    /// No instance applied; the pass verifies nothing.
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub(crate) fn vacuous(law: LawId, m: &Matroid, note: impl Into<String>) -> Self {
        LawReport {
            law,
            matroid: m.name().to_string(),
            instances_checked: 0,
            verdict: Verdict::Pass,
            vacuous: true,
            note: Some(note.into()),
            witness: None,
            details: BTreeMap::new(),
        }
    }
}

/// Per-run facts a check may need.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Context {
    /// `Some(true)` when known binary, `Some(false)` when known not to be.
    pub binary: Option<bool>,
}

impl Context {
    pub fn for_matroid(m: &Matroid) -> Self {
        Context {
            binary: binary_truth(m),
        }
    }
}

/// Accumulates one law sweep.
pub(crate) struct Sweep {
    report: LawReport,
}

impl Sweep {
    pub fn new(law: LawId, m: &Matroid) -> Self {
        Sweep {
            report: LawReport {
                law,
                matroid: m.name().to_string(),
                instances_checked: 0,
                verdict: Verdict::Pass,
                vacuous: false,
                note: None,
                witness: None,
                details: BTreeMap::new(),
            },
        }
    }

    /// Records one checked instance; false once a violation has been seen.
    pub fn record(&mut self, instance: impl FnOnce() -> Instance, outcome: Result<(), String>) -> bool {
        self.report.instances_checked += 1;
        match outcome {
            Ok(()) => true,
            Err(detail) => {
                self.report.verdict = Verdict::Fail;
                self.report.witness = Some(Witness {
                    instance: instance(),
                    detail,
                });
                false
            }
        }
    }

    pub fn failed(&self) -> bool {
        self.report.verdict == Verdict::Fail
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.report.details.insert(key.to_string(), value.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.report.note = Some(note.into());
    }

    /// Finishes the sweep; zero instances means a vacuous pass.
    pub fn finish(mut self, empty_note: &str) -> LawReport {
        if self.report.instances_checked == 0 {
            self.report.vacuous = true;
            self.report.note.get_or_insert_with(|| empty_note.to_string());
        }
        self.report
    }
}

pub(crate) fn internal(e: Error) -> String {
    format!("internal error: {e}")
}

/// Runs one law on one matroid.
pub fn run_law(law: LawId, m: &Matroid, cfg: &LawConfig) -> LawReport {
    if m.n() > cfg.max_ground {
        return LawReport::vacuous(
            law,
            m,
            format!("ground set {} exceeds max_ground {}", m.n(), cfg.max_ground),
        );
    }
    match law {
        LawId::CircuitInterval => law_circuit_interval(m, cfg),
        LawId::CircuitElimination => law_circuit_elimination(m, cfg),
        LawId::BlockCocircuit => law_block_cocircuit(m, cfg),
        LawId::SymConnIdentity => law_sym_conn_identity(m, cfg),
        LawId::SymConnFormulas => law_sym_conn_formulas(m, cfg),
        LawId::ConnCardinality => law_conn_cardinality(m, cfg),
        LawId::SymEvolution => law_sym_evolution(m, cfg),
        LawId::TwoExchanges => law_two_exchanges(m, cfg),
        LawId::ThreeExchanges => law_three_exchanges(m, cfg),
        LawId::Rank4Full4 => law_rank4_full4(m, cfg),
        LawId::Rank5Full6 => law_rank5_full6(m, cfg),
        LawId::BinaryXor => law_binary_xor(m, cfg),
        LawId::XorCharacterization => law_xor_characterization(m, cfg),
        LawId::GreeneParity => law_greene_parity(m, cfg),
        LawId::ConnParity => law_conn_parity(m, cfg),
    }
}

/// Re-checks a witness in isolation; true when it still fails.
pub fn replay_witness(law: LawId, m: &Matroid, witness: &Witness) -> bool {
    let ctx = Context::for_matroid(m);
    let outcome = match law {
        LawId::CircuitInterval => circuits::check_interval(m, &witness.instance),
        LawId::CircuitElimination => circuits::check_elimination_instance(m, &witness.instance),
        LawId::BinaryXor => circuits::check_xor(m, &witness.instance),
        LawId::BlockCocircuit => pairs::check_block_cocircuit(m, &witness.instance),
        LawId::SymConnIdentity => pairs::check_sym_conn_identity(m, &witness.instance),
        LawId::SymConnFormulas => pairs::check_formulas(m, &witness.instance),
        LawId::ConnCardinality => pairs::check_conn_cardinality(m, &witness.instance),
        LawId::SymEvolution => pairs::check_evolution(m, &witness.instance, ctx),
        LawId::GreeneParity => pairs::check_greene(m, &witness.instance, ctx),
        LawId::ConnParity => pairs::check_conn_parity(m, &witness.instance, ctx),
        LawId::TwoExchanges => search::check_serial(m, &witness.instance, 2),
        LawId::ThreeExchanges => search::check_serial(m, &witness.instance, 3),
        LawId::Rank4Full4 => search::check_full(m, &witness.instance, 4).map(|_| ()),
        LawId::Rank5Full6 => search::check_rank5(m, &witness.instance).map(|_| ()),
        LawId::XorCharacterization => {
            search::check_xor_characterization(m, &LawConfig::default()).map(|_| ())
        }
    };
    outcome.is_err()
}

/// Reason a law does not apply to a catalog entry, checked before running it.
fn inapplicable(law: LawId, entry: &CatalogEntry) -> Option<String> {
    match law {
        LawId::BinaryXor if !entry.has(Tag::Binary) => {
            Some("entry is not tagged binary".to_string())
        }
        _ => None,
    }
}

/// Runs every law on every entry. Reports come back matroid-major in the
/// given order, whatever order the workers finish in.
pub fn run_suite(entries: &[CatalogEntry], laws: &[LawId], cfg: &LawConfig) -> Result<Vec<LawReport>> {
    cfg.validate()?;
    let matroids: Vec<Matroid> = entries
        .iter()
        .map(CatalogEntry::matroid)
        .collect::<Result<_>>()?;
    let units: Vec<(usize, LawId)> = (0..entries.len())
        .flat_map(|i| laws.iter().map(move |&l| (i, l)))
        .collect();
    Ok(units
        .par_iter()
        .map(|&(i, law)| match inapplicable(law, &entries[i]) {
            Some(reason) => LawReport::vacuous(law, &matroids[i], reason),
            None => run_law(law, &matroids[i], cfg),
        })
        .collect())
}
