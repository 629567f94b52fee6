//! Laws over pairs of disjoint bases: Sym/Conn identities, their evolution
//! under one exchange, and parity.
//!
//! Every disjoint pair is visited in both orientations, `(A, B)` and `(B, A)`.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{internal, Context, Instance, LawConfig, LawId, LawReport, Sweep};
use crate::catalog::disjoint_basis_pairs;
use crate::element_set::ElementSet;
use crate::error::Result;
use crate::exchange::{apply_exchange, conn_set, conn_set_by_circuits, sym_set, sym_set_by_circuits};
use crate::exchange::{BasisPair, ExchangeStep};
use crate::matroid::Matroid;

/// Which membership tests hold for `b` and `a'` before exchanging `a ↔ b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvolutionCase {
    /// `b ∉ C(a', B)` and `a' ∉ C(b, A)`: Sym(a') is unchanged.
    Neither,
    /// `b ∈ C(a', B)` only.
    CircuitOnly,
    /// `a' ∈ C(b, A)` only.
    CocircuitOnly,
    Both,
}

impl EvolutionCase {
    fn key(self) -> &'static str {
        match self {
            EvolutionCase::Neither => "case_i",
            EvolutionCase::CircuitOnly => "case_ii",
            EvolutionCase::CocircuitOnly => "case_iii",
            EvolutionCase::Both => "case_iv",
        }
    }
}

fn oriented_pairs<'m>(m: &'m Matroid, cfg: &LawConfig) -> Result<Vec<BasisPair<'m>>> {
    let mut out = Vec::new();
    for p in disjoint_basis_pairs(m, cfg.pair_cap, cfg.seed)? {
        let q = p.swapped();
        out.push(p);
        out.push(q);
    }
    Ok(out)
}

/// Pairs for a pair law, or the vacuous report explaining why there are none.
fn pairs_or_vacuous<'m>(law: LawId, m: &'m Matroid, cfg: &LawConfig) -> Result<Vec<BasisPair<'m>>, Box<LawReport>> {
    match oriented_pairs(m, cfg) {
        Ok(p) if p.is_empty() => Err(Box::new(LawReport::vacuous(law, m, "no disjoint basis pairs"))),
        Ok(p) => Ok(p),
        Err(e) => Err(Box::new(LawReport::vacuous(law, m, e.to_string()))),
    }
}

fn pair_from<'m>(m: &'m Matroid, a_set: ElementSet, b_set: ElementSet, disjoint: bool) -> Result<BasisPair<'m>, String> {
    let pair = BasisPair::new(m, a_set, b_set).map_err(|e| e.to_string())?;
    if disjoint && !pair.is_disjoint() {
        return Err(format!("{a_set} and {b_set} are not disjoint"));
    }
    Ok(pair)
}

fn distinct_in_a(pair: &BasisPair<'_>, a: usize, a2: usize) -> Result<(), String> {
    if a == a2 || !pair.a().contains(a) || !pair.a().contains(a2) {
        return Err(format!("need distinct {a}, {a2} in A = {}", pair.a()));
    }
    Ok(())
}

fn pair_element(pair: &BasisPair<'_>, a: usize) -> Instance {
    Instance::PairElement {
        a_set: pair.a(),
        b_set: pair.b(),
        a,
    }
}

fn pair_elements(pair: &BasisPair<'_>, a: usize, a2: usize) -> Instance {
    Instance::PairElements {
        a_set: pair.a(),
        b_set: pair.b(),
        a,
        a2,
    }
}

/// Calls `f(a, a2)` for every ordered pair of distinct elements of `A`;
/// stops when `f` returns false.
fn for_ordered(pair: &BasisPair<'_>, mut f: impl FnMut(usize, usize) -> bool) {
    for a in pair.a() {
        for a2 in pair.a() {
            if a != a2 && !f(a, a2) {
                return;
            }
        }
    }
}

// ---- block cocircuit ----

pub(crate) fn check_block_cocircuit(m: &Matroid, inst: &Instance) -> Result<(), String> {
    let Instance::PairElement { a_set, b_set, a } = *inst else {
        return Err(format!("expected a pair-element instance, got {inst:?}"));
    };
    let pair = pair_from(m, a_set, b_set, true)?;
    let by_dual = pair.cocircuit(a).map_err(internal)?;
    let by_identity = pair.cocircuit_by_block_identity(a).map_err(internal)?;
    if by_dual == by_identity {
        Ok(())
    } else {
        Err(format!(
            "C*(a,B) = {by_dual} from the dual but {by_identity} from {{b in B : a in C(b,A)}} + a"
        ))
    }
}

/// `C*(a, B) = {b ∈ B : a ∈ C(b, A)} + a` on `M | (A ∪ B)`.
pub fn law_block_cocircuit(m: &Matroid, cfg: &LawConfig) -> LawReport {
    let law = LawId::BlockCocircuit;
    let pairs = match pairs_or_vacuous(law, m, cfg) {
        Ok(p) => p,
        Err(r) => return *r,
    };
    let mut sweep = Sweep::new(law, m);
    'outer: for pair in &pairs {
        for a in pair.a() {
            let inst = pair_element(pair, a);
            if !sweep.record(|| inst.clone(), check_block_cocircuit(m, &inst)) {
                break 'outer;
            }
        }
    }
    sweep.finish("no disjoint basis pairs")
}

// ---- Sym ∩ Sym = Conn ∩ Conn ----

pub(crate) fn check_sym_conn_identity(m: &Matroid, inst: &Instance) -> Result<(), String> {
    let Instance::PairElements { a_set, b_set, a, a2 } = *inst else {
        return Err(format!("expected a pair-elements instance, got {inst:?}"));
    };
    let pair = pair_from(m, a_set, b_set, true)?;
    distinct_in_a(&pair, a, a2)?;
    let syms = sym_set(&pair, a)
        .map_err(internal)?
        .intersection(sym_set(&pair, a2).map_err(internal)?);
    let conns = conn_set(&pair, a, a2)
        .map_err(internal)?
        .intersection(conn_set(&pair, a2, a).map_err(internal)?);
    if syms == conns {
        Ok(())
    } else {
        Err(format!("Sym(a) ∩ Sym(a') = {syms} but Conn(a,a') ∩ Conn(a',a) = {conns}"))
    }
}

pub fn law_sym_conn_identity(m: &Matroid, cfg: &LawConfig) -> LawReport {
    let law = LawId::SymConnIdentity;
    let pairs = match pairs_or_vacuous(law, m, cfg) {
        Ok(p) => p,
        Err(r) => return *r,
    };
    let mut sweep = Sweep::new(law, m);
    for pair in &pairs {
        for_ordered(pair, |a, a2| {
            if a > a2 {
                return true;
            }
            let inst = pair_elements(pair, a, a2);
            let outcome = check_sym_conn_identity(m, &inst);
            sweep.record(|| inst, outcome)
        });
        if sweep.failed() {
            break;
        }
    }
    sweep.finish("no disjoint basis pairs")
}

// ---- circuit formulas for Sym and Conn ----

pub(crate) fn check_formulas(m: &Matroid, inst: &Instance) -> Result<(), String> {
    match *inst {
        Instance::PairElement { a_set, b_set, a } => {
            let pair = pair_from(m, a_set, b_set, true)?;
            let direct: ElementSet = pair.b().iter().filter(|&b| pair.exchangeable(a, b)).collect();
            let formula = sym_set_by_circuits(&pair, a).map_err(internal)?;
            if direct == formula {
                Ok(())
            } else {
                Err(format!("Sym(a) = {direct} directly but (C(a,B) ∩ C*(a,B)) - a = {formula}"))
            }
        }
        Instance::PairElements { a_set, b_set, a, a2 } => {
            let pair = pair_from(m, a_set, b_set, true)?;
            distinct_in_a(&pair, a, a2)?;
            let direct: ElementSet = pair
                .b()
                .iter()
                .filter(|&b| {
                    m.is_basis(pair.a().without(a2).with(b)) && m.is_basis(pair.b().without(b).with(a))
                })
                .collect();
            let formula = conn_set_by_circuits(&pair, a, a2).map_err(internal)?;
            if direct == formula {
                Ok(())
            } else {
                Err(format!("Conn(a,a') = {direct} directly but C(a,B) ∩ C*(a',B) = {formula}"))
            }
        }
        ref other => Err(format!("expected a pair instance, got {other:?}")),
    }
}

/// Sym and Conn by definition agree with their circuit/cocircuit formulas.
pub fn law_sym_conn_formulas(m: &Matroid, cfg: &LawConfig) -> LawReport {
    let law = LawId::SymConnFormulas;
    let pairs = match pairs_or_vacuous(law, m, cfg) {
        Ok(p) => p,
        Err(r) => return *r,
    };
    let mut sweep = Sweep::new(law, m);
    'outer: for pair in &pairs {
        for a in pair.a() {
            let inst = pair_element(pair, a);
            if !sweep.record(|| inst.clone(), check_formulas(m, &inst)) {
                break 'outer;
            }
        }
        for_ordered(pair, |a, a2| {
            let inst = pair_elements(pair, a, a2);
            let outcome = check_formulas(m, &inst);
            sweep.record(|| inst, outcome)
        });
        if sweep.failed() {
            break;
        }
    }
    sweep.finish("no disjoint basis pairs")
}

// ---- |Conn| ≠ 1 ----

fn conn_of(m: &Matroid, inst: &Instance) -> Result<ElementSet, String> {
    let Instance::PairElements { a_set, b_set, a, a2 } = *inst else {
        return Err(format!("expected a pair-elements instance, got {inst:?}"));
    };
    let pair = pair_from(m, a_set, b_set, true)?;
    distinct_in_a(&pair, a, a2)?;
    conn_set(&pair, a, a2).map_err(internal)
}

pub(crate) fn check_conn_cardinality(m: &Matroid, inst: &Instance) -> Result<(), String> {
    let conn = conn_of(m, inst)?;
    if conn.len() == 1 {
        Err(format!("Conn(a,a') = {conn} has exactly one element"))
    } else {
        Ok(())
    }
}

pub fn law_conn_cardinality(m: &Matroid, cfg: &LawConfig) -> LawReport {
    let law = LawId::ConnCardinality;
    let pairs = match pairs_or_vacuous(law, m, cfg) {
        Ok(p) => p,
        Err(r) => return *r,
    };
    let mut sweep = Sweep::new(law, m);
    let mut empty = 0usize;
    for pair in &pairs {
        for_ordered(pair, |a, a2| {
            let inst = pair_elements(pair, a, a2);
            if conn_set(pair, a, a2).is_ok_and(|c| c.is_empty()) {
                empty += 1;
            }
            let outcome = check_conn_cardinality(m, &inst);
            sweep.record(|| inst, outcome)
        });
        if sweep.failed() {
            break;
        }
    }
    sweep.detail("empty_conn", empty);
    sweep.finish("no disjoint basis pairs")
}

// ---- Sym evolution under one exchange ----

/// Checks the bounds on `Sym(a', A - a + b, B - b + a)`; on known-binary
/// matroids the lower bound must be attained.
pub(crate) fn evolution(m: &Matroid, inst: &Instance, ctx: Context) -> Result<EvolutionCase, String> {
    let Instance::Evolution { a_set, b_set, a, b, a2 } = *inst else {
        return Err(format!("expected an evolution instance, got {inst:?}"));
    };
    let pair = pair_from(m, a_set, b_set, true)?;
    distinct_in_a(&pair, a, a2)?;
    let s = sym_set(&pair, a).map_err(internal)?;
    if !s.contains(b) {
        return Err(format!("{b} is not in Sym({a}) = {s}"));
    }
    let s2 = sym_set(&pair, a2).map_err(internal)?;
    let k1 = conn_set(&pair, a, a2).map_err(internal)?;
    let k2 = conn_set(&pair, a2, a).map_err(internal)?;
    let circuit = pair.circuit_in_b(a2).map_err(internal)?.contains(b);
    let cocircuit = pair.circuit_in_a(b).map_err(internal)?.contains(a2);
    let next = apply_exchange(&pair, ExchangeStep::new(a, b)).map_err(internal)?;
    let new = sym_set(&next, a2).map_err(internal)?;

    let (case, lower, upper) = match (circuit, cocircuit) {
        (false, false) => (EvolutionCase::Neither, s2, s2),
        (true, false) => (EvolutionCase::CircuitOnly, s2.symmetric_difference(k1), s2.union(k1)),
        (false, true) => (EvolutionCase::CocircuitOnly, s2.symmetric_difference(k2), s2.union(k2)),
        (true, true) => (
            EvolutionCase::Both,
            s2.symmetric_difference(s)
                .symmetric_difference(k2)
                .symmetric_difference(k1)
                .with(a),
            s2.union(s).union(k2).union(k1).with(a),
        ),
    };
    if !lower.is_subset(new) || !new.is_subset(upper) {
        return Err(format!(
            "{}: new Sym(a') = {new} outside [{lower}, {upper}]",
            case.key()
        ));
    }
    if ctx.binary == Some(true) && new != lower {
        return Err(format!(
            "{}: binary matroid but new Sym(a') = {new} exceeds the lower bound {lower}",
            case.key()
        ));
    }
    Ok(case)
}

pub(crate) fn check_evolution(m: &Matroid, inst: &Instance, ctx: Context) -> Result<(), String> {
    evolution(m, inst, ctx).map(|_| ())
}

pub fn law_sym_evolution(m: &Matroid, cfg: &LawConfig) -> LawReport {
    let law = LawId::SymEvolution;
    let pairs = match pairs_or_vacuous(law, m, cfg) {
        Ok(p) => p,
        Err(r) => return *r,
    };
    let ctx = Context::for_matroid(m);
    let mut sweep = Sweep::new(law, m);
    let mut counts = [0usize; 4];
    'outer: for pair in &pairs {
        for a in pair.a() {
            let Ok(s) = sym_set(pair, a) else { continue };
            for b in s {
                for a2 in pair.a().without(a) {
                    let inst = Instance::Evolution {
                        a_set: pair.a(),
                        b_set: pair.b(),
                        a,
                        b,
                        a2,
                    };
                    let outcome = evolution(m, &inst, ctx);
                    if let Ok(case) = outcome {
                        counts[case as usize] += 1;
                    }
                    if !sweep.record(|| inst, outcome.map(|_| ())) {
                        break 'outer;
                    }
                }
            }
        }
    }
    for case in [
        EvolutionCase::Neither,
        EvolutionCase::CircuitOnly,
        EvolutionCase::CocircuitOnly,
        EvolutionCase::Both,
    ] {
        sweep.detail(case.key(), counts[case as usize]);
    }
    sweep.detail("binary_equality_checked", ctx.binary == Some(true));
    sweep.finish("no disjoint basis pairs")
}

// ---- parity ----

fn sym_of(m: &Matroid, inst: &Instance, disjoint: bool) -> Result<ElementSet, String> {
    let Instance::PairElement { a_set, b_set, a } = *inst else {
        return Err(format!("expected a pair-element instance, got {inst:?}"));
    };
    let pair = pair_from(m, a_set, b_set, disjoint)?;
    if !pair.a().difference(pair.b()).contains(a) {
        return Err(format!("{a} is not in A \\ B"));
    }
    sym_set(&pair, a).map_err(internal)
}

/// First `(A, B, a)` with `|Sym(a, A, B)|` even: disjoint pairs first, then
/// any two bases with `a ∈ A \ B`. The flag tells which route found it.
fn find_even_sym(m: &Matroid, cfg: &LawConfig) -> Result<Option<(Instance, bool)>> {
    for pair in oriented_pairs(m, cfg)? {
        for a in pair.a() {
            if sym_set(&pair, a)?.len() % 2 == 0 {
                return Ok(Some((pair_element(&pair, a), false)));
            }
        }
    }
    let bases: Vec<ElementSet> = m.bases()?.collect();
    for &x in &bases {
        for &y in &bases {
            if x == y || x.is_disjoint(y) {
                continue;
            }
            let pair = BasisPair::new(m, x, y)?;
            for a in x.difference(y) {
                if sym_set(&pair, a)?.len() % 2 == 0 {
                    return Ok(Some((pair_element(&pair, a), true)));
                }
            }
        }
    }
    Ok(None)
}

pub(crate) fn check_greene(m: &Matroid, inst: &Instance, ctx: Context) -> Result<(), String> {
    match (inst, ctx.binary) {
        (Instance::Matroid, Some(false)) => match find_even_sym(m, &LawConfig::default()) {
            Ok(Some(_)) => Ok(()),
            Ok(None) => Err("non-binary, yet every |Sym| is odd".to_string()),
            Err(e) => Err(internal(e)),
        },
        (Instance::PairElement { .. }, Some(true)) => {
            let sym = sym_of(m, inst, true)?;
            if sym.len() % 2 == 1 {
                Ok(())
            } else {
                Err(format!("binary matroid with |Sym(a)| = |{sym}| even"))
            }
        }
        _ => Err(format!("instance {inst:?} does not fit binary status {:?}", ctx.binary)),
    }
}

/// Binary matroids have every `|Sym|` odd; other matroids show an even one.
pub fn law_greene_parity(m: &Matroid, cfg: &LawConfig) -> LawReport {
    let law = LawId::GreeneParity;
    let ctx = Context::for_matroid(m);
    let Some(binary) = ctx.binary else {
        return LawReport::vacuous(law, m, "binary status undecided at this size");
    };
    let pairs = match pairs_or_vacuous(law, m, cfg) {
        Ok(p) => p,
        Err(r) => return *r,
    };
    let mut sweep = Sweep::new(law, m);
    if binary {
        'outer: for pair in &pairs {
            for a in pair.a() {
                let inst = pair_element(pair, a);
                if !sweep.record(|| inst.clone(), check_greene(m, &inst, ctx)) {
                    break 'outer;
                }
            }
        }
        return sweep.finish("no disjoint basis pairs");
    }
    match find_even_sym(m, cfg) {
        Ok(Some((inst, general))) => {
            sweep.record(|| Instance::Matroid, Ok(()));
            sweep.detail("even_sym", serde_json::to_value(&inst).expect("instances serialize"));
            sweep.detail("route", if general { "non_disjoint" } else { "disjoint" });
        }
        Ok(None) => {
            sweep.record(|| Instance::Matroid, Err("non-binary, yet every |Sym| is odd".into()));
        }
        Err(e) => return LawReport::vacuous(law, m, e.to_string()),
    }
    sweep.finish("no disjoint basis pairs")
}

pub(crate) fn check_conn_parity(m: &Matroid, inst: &Instance, ctx: Context) -> Result<(), String> {
    let conn = conn_of(m, inst)?;
    if ctx.binary == Some(true) && conn.len() % 2 == 1 {
        Err(format!("binary matroid with |Conn(a,a')| = |{conn}| odd"))
    } else {
        Ok(())
    }
}

/// Binary matroids have every `|Conn|` even. On other matroids the sweep
/// only records whether all `|Conn|` happen to be even anyway.
pub fn law_conn_parity(m: &Matroid, cfg: &LawConfig) -> LawReport {
    let law = LawId::ConnParity;
    let ctx = Context::for_matroid(m);
    let Some(binary) = ctx.binary else {
        return LawReport::vacuous(law, m, "binary status undecided at this size");
    };
    let pairs = match pairs_or_vacuous(law, m, cfg) {
        Ok(p) => p,
        Err(r) => return *r,
    };
    let mut sweep = Sweep::new(law, m);
    let mut odd: Option<Instance> = None;
    for pair in &pairs {
        for_ordered(pair, |a, a2| {
            let inst = pair_elements(pair, a, a2);
            if odd.is_none() && conn_set(pair, a, a2).is_ok_and(|c| c.len() % 2 == 1) {
                odd = Some(inst.clone());
            }
            let outcome = check_conn_parity(m, &inst, ctx);
            sweep.record(|| inst, outcome)
        });
        if sweep.failed() {
            break;
        }
    }
    sweep.detail("binary", binary);
    sweep.detail("all_conn_even", odd.is_none());
    if let Some(inst) = odd {
        sweep.detail("odd_conn", json!(inst));
    } else if !binary {
        sweep.note("every |Conn| is even although the matroid is not binary");
    }
    sweep.finish("no disjoint basis pairs")
}
