//! Laws settled by exchange search, and the XOR characterization of binary
//! matroids.
//!
//! Searches are orientation-free: a sequence for `(A, B)` read with each step
//! reversed is one for `(B, A)`, so each unordered pair is searched once.

use std::collections::BTreeMap;

use serde_json::json;

use super::{
    decide_binary_by_xor, has_u24_minor, internal, Instance, LawConfig, LawId, LawReport, Sweep,
    XOR_CHARACTERIZATION_CAP,
};
use crate::catalog::disjoint_basis_pairs;
use crate::exchange::{
    correcting_exchanges, find_full_exchange, find_serial_exchange, BasisPair, ExchangeSequence,
};
use crate::matroid::Matroid;

fn pair_instance(pair: &BasisPair<'_>) -> Instance {
    Instance::Pair {
        a_set: pair.a(),
        b_set: pair.b(),
    }
}

fn pair_of<'m>(m: &'m Matroid, inst: &Instance) -> Result<BasisPair<'m>, String> {
    let Instance::Pair { a_set, b_set } = *inst else {
        return Err(format!("expected a pair instance, got {inst:?}"));
    };
    let pair = BasisPair::new(m, a_set, b_set).map_err(|e| e.to_string())?;
    if !pair.is_disjoint() {
        return Err(format!("{a_set} and {b_set} are not disjoint"));
    }
    Ok(pair)
}

pub(crate) fn check_serial(m: &Matroid, inst: &Instance, k: usize) -> Result<(), String> {
    let pair = pair_of(m, inst)?;
    match find_serial_exchange(&pair, k) {
        Some(_) => Ok(()),
        None => Err(format!("no {k} serial symmetric exchanges")),
    }
}

/// Shortest full exchange of length at most `max_len`.
pub(crate) fn check_full(m: &Matroid, inst: &Instance, max_len: usize) -> Result<ExchangeSequence, String> {
    let pair = pair_of(m, inst)?;
    find_full_exchange(&pair, max_len)
        .ok_or_else(|| format!("no full serial symmetric exchange of length <= {max_len}"))
}

pub(crate) fn check_rank5(m: &Matroid, inst: &Instance) -> Result<ExchangeSequence, String> {
    check_full(m, inst, 6)
}

fn rank_gate(law: LawId, m: &Matroid, ok: bool, need: &str) -> Option<LawReport> {
    (!ok).then(|| LawReport::vacuous(law, m, format!("requires {need}, rank is {}", m.rank())))
}

/// Runs `check` on every disjoint pair, once per unordered pair.
fn sweep_pairs<T>(
    law: LawId,
    m: &Matroid,
    cfg: &LawConfig,
    mut check: impl FnMut(&BasisPair<'_>, &Instance) -> Result<T, String>,
    mut on_ok: impl FnMut(&BasisPair<'_>, T),
) -> LawReport {
    let pairs = match disjoint_basis_pairs(m, cfg.pair_cap, cfg.seed) {
        Ok(p) => p,
        Err(e) => return LawReport::vacuous(law, m, e.to_string()),
    };
    let mut sweep = Sweep::new(law, m);
    for pair in &pairs {
        let inst = pair_instance(pair);
        let outcome = check(pair, &inst).map(|t| on_ok(pair, t));
        if !sweep.record(|| inst, outcome) {
            break;
        }
    }
    sweep.finish("no disjoint basis pairs")
}

fn serial_law(law: LawId, m: &Matroid, cfg: &LawConfig, k: usize) -> LawReport {
    if let Some(r) = rank_gate(law, m, m.rank() >= k, &format!("rank >= {k}")) {
        return r;
    }
    sweep_pairs(law, m, cfg, |_, inst| check_serial(m, inst, k), |_, ()| {})
}

/// Any two elements can be serially and symmetrically exchanged.
pub fn law_two_exchanges(m: &Matroid, cfg: &LawConfig) -> LawReport {
    serial_law(LawId::TwoExchanges, m, cfg, 2)
}

/// Three serial symmetric exchanges exist between any two disjoint bases.
pub fn law_three_exchanges(m: &Matroid, cfg: &LawConfig) -> LawReport {
    serial_law(LawId::ThreeExchanges, m, cfg, 3)
}

fn histogram(lengths: &BTreeMap<usize, usize>) -> serde_json::Value {
    lengths
        .iter()
        .map(|(len, count)| (len.to_string(), json!(count)))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

/// Rank-4 disjoint pairs admit a full exchange of length 4.
pub fn law_rank4_full4(m: &Matroid, cfg: &LawConfig) -> LawReport {
    let law = LawId::Rank4Full4;
    if let Some(r) = rank_gate(law, m, m.rank() == 4, "rank 4") {
        return r;
    }
    sweep_pairs(law, m, cfg, |_, inst| check_full(m, inst, 4), |_, _| {})
}

/// Rank-5 disjoint pairs admit a full exchange of length at most 6.
///
/// Records the histogram of shortest lengths. For pairs that need 6 steps
/// it also looks at the state where the first-found maximal run of fresh
/// exchanges gets stuck and counts whether a correcting exchange exists
/// there.
pub fn law_rank5_full6(m: &Matroid, cfg: &LawConfig) -> LawReport {
    let law = LawId::Rank5Full6;
    if let Some(r) = rank_gate(law, m, m.rank() == 5, "rank 5") {
        return r;
    }
    let mut lengths: BTreeMap<usize, usize> = BTreeMap::new();
    let mut stuck = 0usize;
    let mut stuck_correctable = 0usize;
    let mut report = sweep_pairs(
        law,
        m,
        cfg,
        |_, inst| check_rank5(m, inst),
        |pair, seq| {
            *lengths.entry(seq.len()).or_default() += 1;
            if seq.len() > m.rank() {
                if let Some(state) = stuck_state(pair) {
                    stuck += 1;
                    if !correcting_exchanges(pair, &state).is_empty() {
                        stuck_correctable += 1;
                    }
                }
            }
        },
    );
    if !report.vacuous {
        report.details.insert("min_length_histogram".into(), histogram(&lengths));
        report.details.insert("stuck_states".into(), json!(stuck));
        report.details.insert("stuck_with_correcting_exchange".into(), json!(stuck_correctable));
    }
    report
}

/// End of the first-found longest run of fresh exchanges, when that run
/// stops short of a full exchange.
fn stuck_state<'m>(pair: &BasisPair<'m>) -> Option<BasisPair<'m>> {
    let r = pair.a().difference(pair.b()).len();
    let seq = (1..=r).rev().find_map(|k| find_serial_exchange(pair, k))?;
    if seq.len() == r {
        return None;
    }
    let (a, b) = seq.end();
    BasisPair::new(pair.matroid(), a, b).ok()
}

/// The XOR decision agrees with the absence of a U(2,4) minor.
pub(crate) fn check_xor_characterization(m: &Matroid, cfg: &LawConfig) -> Result<bool, String> {
    let by_xor = decide_binary_by_xor(m, cfg).map_err(internal)?;
    let by_minor = !has_u24_minor(m).map_err(internal)?;
    if by_xor == by_minor {
        Ok(by_xor)
    } else {
        Err(format!("XOR test says binary = {by_xor}, U(2,4)-minor test says {by_minor}"))
    }
}

pub fn law_xor_characterization(m: &Matroid, cfg: &LawConfig) -> LawReport {
    let law = LawId::XorCharacterization;
    if m.n() > XOR_CHARACTERIZATION_CAP {
        return LawReport::vacuous(
            law,
            m,
            format!("ground set {} exceeds cap {XOR_CHARACTERIZATION_CAP}", m.n()),
        );
    }
    let mut sweep = Sweep::new(law, m);
    let outcome = check_xor_characterization(m, cfg);
    if let Ok(binary) = outcome {
        sweep.detail("binary", binary);
    }
    sweep.record(|| Instance::Matroid, outcome.map(|_| ()));
    sweep.finish("")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::MatroidSpec;

    fn uniform(r: usize, n: usize) -> Matroid {
        Matroid::new(MatroidSpec::Uniform { r, n }).unwrap()
    }

    #[test]
    fn uniform_search_laws() {
        let cfg = LawConfig::default();
        assert!(law_three_exchanges(&uniform(3, 6), &cfg).passed());
        assert!(law_rank4_full4(&uniform(4, 8), &cfg).passed());
        let r5 = law_rank5_full6(&uniform(5, 10), &cfg);
        assert!(r5.passed() && r5.instances_checked == 126);
        assert_eq!(r5.details["min_length_histogram"], json!({"5": 126}));
        assert_eq!(r5.details["stuck_states"], json!(0));
    }

    #[test]
    fn rank_gates() {
        let cfg = LawConfig::default();
        assert!(law_three_exchanges(&uniform(2, 4), &cfg).vacuous);
        assert!(law_rank4_full4(&uniform(3, 6), &cfg).vacuous);
        assert!(law_rank5_full6(&uniform(4, 8), &cfg).vacuous);
        assert!(!law_two_exchanges(&uniform(2, 4), &cfg).vacuous);
    }

    #[test]
    fn xor_characterization() {
        let cfg = LawConfig::default();
        let r = law_xor_characterization(&uniform(2, 4), &cfg);
        assert!(r.passed() && !r.vacuous);
        assert_eq!(r.details["binary"], json!(false));
        assert!(law_xor_characterization(&uniform(4, 9), &cfg).vacuous);
    }
}
