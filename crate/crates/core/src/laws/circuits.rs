//! Laws about fundamental circuits under a single basis exchange.

use super::{internal, Instance, LawConfig, LawId, LawReport, Sweep};
use crate::element_set::ElementSet;
use crate::error::Result;
use crate::matroid::Matroid;

/// Circuit elimination is swept on ground sets up to this size.
pub const ELIMINATION_CAP: usize = 10;

/// `(B, x, y, b)` with `x ≠ y` outside `B` and `b ∈ C(x, B) ∩ B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ExchangeInstance {
    pub basis: ElementSet,
    pub x: usize,
    pub y: usize,
    pub b: usize,
}

impl ExchangeInstance {
    fn instance(self) -> Instance {
        Instance::BasisExchange {
            basis: self.basis,
            x: self.x,
            y: self.y,
            b: self.b,
        }
    }
}

/// All `(B, x, y, b)`: bases by bitmask, then `x`, `y`, `b` ascending.
/// With `both` set, `b` must also lie in `C(y, B)`.
fn exchange_instances(m: &Matroid, both: bool) -> Result<Vec<ExchangeInstance>> {
    let mut out = Vec::new();
    for basis in m.bases()? {
        let outside = m.ground().difference(basis);
        let circuits: Vec<(usize, ElementSet)> = outside
            .iter()
            .map(|x| m.fundamental_circuit(basis, x).map(|c| (x, c)))
            .collect::<Result<_>>()?;
        for &(x, cx) in &circuits {
            for &(y, cy) in &circuits {
                if x == y {
                    continue;
                }
                let mut bs = cx.intersection(basis);
                if both {
                    bs = bs.intersection(cy);
                }
                out.extend(bs.iter().map(|b| ExchangeInstance { basis, x, y, b }));
            }
        }
    }
    Ok(out)
}

/// Instances of the XOR equality: `b ∈ C(x, B) ∩ C(y, B) ∩ B`.
pub(crate) fn xor_instances(m: &Matroid) -> Result<Vec<ExchangeInstance>> {
    exchange_instances(m, true)
}

fn as_exchange(inst: &Instance) -> Result<ExchangeInstance, String> {
    match *inst {
        Instance::BasisExchange { basis, x, y, b } => Ok(ExchangeInstance { basis, x, y, b }),
        ref other => Err(format!("expected a basis-exchange instance, got {other:?}")),
    }
}

/// `(C(x, B), C(y, B), C(y, B - b + x))`
fn three_circuits(m: &Matroid, e: ExchangeInstance) -> Result<(ElementSet, ElementSet, ElementSet), String> {
    if !m.is_basis(e.basis) {
        return Err(format!("{} is not a basis", e.basis));
    }
    let cx = m.fundamental_circuit(e.basis, e.x).map_err(internal)?;
    let cy = m.fundamental_circuit(e.basis, e.y).map_err(internal)?;
    if !cx.contains(e.b) || e.x == e.y || e.basis.contains(e.y) {
        return Err(format!("malformed instance {e:?}"));
    }
    let after = m
        .fundamental_circuit(e.basis.without(e.b).with(e.x), e.y)
        .map_err(internal)?;
    Ok((cx, cy, after))
}

/// The sandwich `C(x,B) △ C(y,B) ⊆ C(y, B_bx) ⊆ C(x,B) ∪ C(y,B)` when
/// `b ∈ C(y, B)`, and `C(y, B_bx) = C(y, B)` otherwise.
pub(crate) fn check_interval(m: &Matroid, inst: &Instance) -> Result<(), String> {
    let e = as_exchange(inst)?;
    let (cx, cy, after) = three_circuits(m, e)?;
    if !cy.contains(e.b) {
        return if after == cy {
            Ok(())
        } else {
            Err(format!("b not in C(y,B) but C(y,B_bx) = {after} differs from C(y,B) = {cy}"))
        };
    }
    let lower = cx.symmetric_difference(cy);
    let upper = cx.union(cy);
    if !lower.is_subset(after) {
        return Err(format!("lower bound {lower} not contained in C(y,B_bx) = {after}"));
    }
    if !after.is_subset(upper) {
        return Err(format!("C(y,B_bx) = {after} not contained in upper bound {upper}"));
    }
    Ok(())
}

/// `C(y, B_bx) = C(x, B) △ C(y, B)`.
pub(crate) fn check_xor(m: &Matroid, inst: &Instance) -> Result<(), String> {
    let e = as_exchange(inst)?;
    let (cx, cy, after) = three_circuits(m, e)?;
    if !cy.contains(e.b) {
        return Err(format!("b = {} is not in C(y,B) = {cy}", e.b));
    }
    let xor = cx.symmetric_difference(cy);
    if after == xor {
        Ok(())
    } else {
        Err(format!(
            "C(y,B_bx) = {after} but C(x,B) △ C(y,B) = {xor} (C(x,B) = {cx}, C(y,B) = {cy})"
        ))
    }
}

fn sweep_exchanges(
    law: LawId,
    m: &Matroid,
    both: bool,
    check: fn(&Matroid, &Instance) -> Result<(), String>,
) -> LawReport {
    let mut sweep = Sweep::new(law, m);
    let instances = match exchange_instances(m, both) {
        Ok(v) => v,
        Err(e) => return LawReport::vacuous(law, m, e.to_string()),
    };
    for e in instances {
        let inst = e.instance();
        if !sweep.record(|| inst.clone(), check(m, &inst)) {
            break;
        }
    }
    sweep.finish("no basis has two elements outside it")
}

pub fn law_circuit_interval(m: &Matroid, _cfg: &LawConfig) -> LawReport {
    sweep_exchanges(LawId::CircuitInterval, m, false, check_interval)
}

pub fn law_binary_xor(m: &Matroid, _cfg: &LawConfig) -> LawReport {
    sweep_exchanges(LawId::BinaryXor, m, true, check_xor)
}

/// Some circuit inside `C1 ∪ C2` avoids `x` and contains `y`.
fn eliminates(circuits: &[ElementSet], c1: ElementSet, c2: ElementSet, x: usize, y: usize) -> bool {
    let union = c1.union(c2);
    circuits
        .iter()
        .any(|c| c.is_subset(union) && c.contains(y) && !c.contains(x))
}

pub(crate) fn check_elimination_instance(m: &Matroid, inst: &Instance) -> Result<(), String> {
    let Instance::Circuits { c1, c2, x, y } = *inst else {
        return Err(format!("expected a circuit-pair instance, got {inst:?}"));
    };
    let circuits = m.circuits().map_err(internal)?;
    if !circuits.contains(&c1) || !circuits.contains(&c2) {
        return Err("instance sets are not circuits".to_string());
    }
    if eliminates(&circuits, c1, c2, x, y) {
        Ok(())
    } else {
        Err(format!("no circuit inside {} contains {y} and avoids {x}", c1.union(c2)))
    }
}

/// For circuits `C1 ≠ C2`, `x ∈ C1 ∩ C2`, `y ∈ C1 △ C2`, some circuit of
/// `C1 ∪ C2` contains `y` but not `x`.
pub fn law_circuit_elimination(m: &Matroid, _cfg: &LawConfig) -> LawReport {
    let law = LawId::CircuitElimination;
    if m.n() > ELIMINATION_CAP {
        return LawReport::vacuous(
            law,
            m,
            format!("ground set {} exceeds elimination cap {ELIMINATION_CAP}", m.n()),
        );
    }
    let circuits = match m.circuits() {
        Ok(c) => c,
        Err(e) => return LawReport::vacuous(law, m, e.to_string()),
    };
    let mut sweep = Sweep::new(law, m);
    'outer: for (i, &c1) in circuits.iter().enumerate() {
        for &c2 in &circuits[i + 1..] {
            let common = c1.intersection(c2);
            if common.is_empty() {
                continue;
            }
            let union = c1.union(c2);
            let inside: Vec<ElementSet> = circuits.iter().copied().filter(|c| c.is_subset(union)).collect();
            for x in common {
                for y in c1.symmetric_difference(c2) {
                    let ok = eliminates(&inside, c1, c2, x, y);
                    let outcome = if ok {
                        Ok(())
                    } else {
                        Err(format!("no circuit inside {union} contains {y} and avoids {x}"))
                    };
                    if !sweep.record(|| Instance::Circuits { c1, c2, x, y }, outcome) {
                        break 'outer;
                    }
                }
            }
        }
    }
    sweep.finish("no two circuits meet")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::{replay_witness, Verdict};
    use crate::matroid::MatroidSpec;

    fn uniform(r: usize, n: usize) -> Matroid {
        Matroid::new(MatroidSpec::Uniform { r, n }).unwrap().with_name(format!("U{r}{n}"))
    }

    fn k4() -> Matroid {
        Matroid::new(MatroidSpec::Graphic {
            vertices: 4,
            edges: vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
        })
        .unwrap()
    }

    #[test]
    fn u24_interval_example() {
        let m = uniform(2, 4);
        let inst = Instance::BasisExchange {
            basis: ElementSet::from([0, 1]),
            x: 2,
            y: 3,
            b: 0,
        };
        assert_eq!(check_interval(&m, &inst), Ok(()));
        let err = check_xor(&m, &inst).unwrap_err();
        assert!(err.contains("{1,2,3}"), "{err}");
    }

    #[test]
    fn u24_xor_first_witness() {
        let m = uniform(2, 4);
        let r = law_binary_xor(&m, &LawConfig::default());
        assert_eq!(r.verdict, Verdict::Fail);
        let w = r.witness.as_ref().unwrap();
        assert_eq!(
            w.instance,
            Instance::BasisExchange {
                basis: ElementSet::from([0, 1]),
                x: 2,
                y: 3,
                b: 0
            }
        );
        assert_eq!(r.instances_checked, 1);
        assert!(replay_witness(LawId::BinaryXor, &m, w));
    }

    #[test]
    fn interval_and_xor_on_k4() {
        let cfg = LawConfig::default();
        let k = k4();
        let r = law_circuit_interval(&k, &cfg);
        assert!(r.passed() && r.instances_checked > 0);
        let x = law_binary_xor(&k, &cfg);
        assert!(x.passed() && x.instances_checked > 0);
        assert!(law_circuit_interval(&uniform(3, 6), &cfg).passed());
    }

    #[test]
    fn companion_clause_is_counted() {
        // in K4 with B = {e0,e3,e5}, x = e1, y = e4: C(e1,B) = {e0,e1,e3}, C(e4,B) = {e3,e4,e5}
        let k = k4();
        let inst = Instance::BasisExchange {
            basis: ElementSet::from([0, 3, 5]),
            x: 1,
            y: 4,
            b: 0,
        };
        assert_eq!(check_interval(&k, &inst), Ok(()));
    }

    #[test]
    fn elimination() {
        let cfg = LawConfig::default();
        for m in [uniform(2, 4), uniform(3, 6), k4()] {
            let r = law_circuit_elimination(&m, &cfg);
            assert!(r.passed() && !r.vacuous);
        }
        assert!(law_circuit_elimination(&uniform(5, 11), &cfg).vacuous);
    }

    #[test]
    fn no_instances_is_vacuous() {
        let r = law_circuit_interval(&uniform(2, 2), &LawConfig::default());
        assert!(r.vacuous && r.passed());
    }
}
