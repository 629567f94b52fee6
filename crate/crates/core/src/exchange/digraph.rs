use std::fmt::Write as _;

use super::BasisPair;
use crate::element_set::ElementSet;

/// Directed bipartite exchange graph of a pair `(A, B)`.
///
/// `a -> b` means `B - b + a` is a basis (equivalently `b ∈ C(a, B)`);
/// `b -> a` means `A - a + b` is a basis (equivalently `a ∈ C(b, A)`).
/// Common elements of `A` and `B` are left out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeDigraph {
    pub a_part: ElementSet,
    pub b_part: ElementSet,
    /// `(a, b)` with `a -> b`
    pub a_to_b: Vec<(usize, usize)>,
    /// `(b, a)` with `b -> a`
    pub b_to_a: Vec<(usize, usize)>,
}

pub fn exchange_digraph(pair: &BasisPair<'_>) -> ExchangeDigraph {
    let m = pair.matroid();
    let a_part = pair.a().difference(pair.b());
    let b_part = pair.b().difference(pair.a());
    let mut a_to_b = Vec::new();
    let mut b_to_a = Vec::new();
    for a in a_part {
        for b in b_part {
            if m.is_basis(pair.b().without(b).with(a)) {
                a_to_b.push((a, b));
            }
        }
    }
    for b in b_part {
        for a in a_part {
            if m.is_basis(pair.a().without(a).with(b)) {
                b_to_a.push((b, a));
            }
        }
    }
    ExchangeDigraph {
        a_part,
        b_part,
        a_to_b,
        b_to_a,
    }
}

impl ExchangeDigraph {
    pub fn has_a_to_b(&self, a: usize, b: usize) -> bool {
        self.a_to_b.binary_search(&(a, b)).is_ok()
    }

    pub fn has_b_to_a(&self, b: usize, a: usize) -> bool {
        self.b_to_a.binary_search(&(b, a)).is_ok()
    }

    /// Pairs `(a, b)` joined in both directions, i.e. `b ∈ Sym(a, A, B)`.
    pub fn two_sided(&self) -> Vec<(usize, usize)> {
        self.a_to_b
            .iter()
            .copied()
            .filter(|&(a, b)| self.has_b_to_a(b, a))
            .collect()
    }

    /// Graphviz rendering: `A` on the top rank, `B` below, two-sided edges
    /// drawn once with `dir=both`.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", quote(name));
        out.push_str("  rankdir=TB;\n  node [shape=circle];\n");
        out.push_str("  { rank=same;");
        for a in self.a_part {
            let _ = write!(out, " a{a} [label=\"{a}\"];");
        }
        out.push_str(" }\n  { rank=same;");
        for b in self.b_part {
            let _ = write!(out, " b{b} [label=\"{b}\", shape=box];");
        }
        out.push_str(" }\n");
        for a in self.a_part {
            for b in self.b_part {
                match (self.has_a_to_b(a, b), self.has_b_to_a(b, a)) {
                    (true, true) => {
                        let _ = writeln!(out, "  a{a} -> b{b} [dir=both];");
                    }
                    (true, false) => {
                        let _ = writeln!(out, "  a{a} -> b{b};");
                    }
                    (false, true) => {
                        let _ = writeln!(out, "  b{b} -> a{a};");
                    }
                    (false, false) => {}
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::tests::{k4, uniform};
    use crate::exchange::{sym_set, BasisPair};

    fn set<const N: usize>(ids: [usize; N]) -> ElementSet {
        ElementSet::from(ids)
    }

    #[test]
    fn u24_is_complete_and_two_sided() {
        let u = uniform(2, 4);
        let p = BasisPair::new(&u, set([0, 1]), set([2, 3])).unwrap();
        let g = exchange_digraph(&p);
        assert_eq!(g.two_sided(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        let dot = g.to_dot("U24");
        assert_eq!(dot.matches("dir=both").count(), 4);
    }

    #[test]
    fn k4_edges_follow_circuits() {
        let k = k4();
        let p = BasisPair::new(&k, set([0, 3, 5]), set([1, 2, 4])).unwrap();
        let g = exchange_digraph(&p);
        for a in p.a() {
            let circuit = p.circuit_in_b(a).unwrap();
            for b in p.b() {
                assert_eq!(g.has_a_to_b(a, b), circuit.contains(b));
                assert_eq!(g.has_b_to_a(b, a), p.circuit_in_a(b).unwrap().contains(a));
            }
            let sym: Vec<_> = g.two_sided().into_iter().filter(|e| e.0 == a).map(|e| e.1).collect();
            assert_eq!(ElementSet::from(sym.as_slice()), sym_set(&p, a).unwrap());
            assert!(!sym.is_empty());
        }
        assert!(g.two_sided().contains(&(0, 2)));
        // e4 ∈ C(e0, B) but e0 ∉ C(e4, A)
        assert!(g.has_a_to_b(0, 4) && !g.has_b_to_a(4, 0));
        assert!(g.to_dot("K4").contains("a0 -> b2 [dir=both];"));
        assert!(g.to_dot("K4").contains("a0 -> b4;\n"));
    }

    #[test]
    fn identical_bases_give_empty_graph() {
        let u = uniform(2, 4);
        let p = BasisPair::new(&u, set([0, 1]), set([0, 1])).unwrap();
        let g = exchange_digraph(&p);
        assert!(g.a_part.is_empty() && g.a_to_b.is_empty() && g.b_to_a.is_empty());
    }
}
