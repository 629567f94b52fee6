//! Symmetric exchanges between two bases: Sym and Conn sets, the exchange
//! digraph, and searches for serial exchange sequences.

mod digraph;
mod search;
mod sequence;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

pub use digraph::{exchange_digraph, ExchangeDigraph};
pub use search::{correcting_exchanges, find_full_exchange, find_serial_exchange};
pub use sequence::{ExchangeSequence, SequenceRecord};

/// An ordered pair `(A, B)` of bases of one matroid.
///
/// Elements of `A ∩ B` are fixed: every exchange moves an element of
/// `A \ B` against an element of `B \ A`.
#[derive(Clone)]
pub struct BasisPair<'m> {
    matroid: &'m Matroid,
    a: ElementSet,
    b: ElementSet,
    block: OnceLock<Block>,
}

/// `M | (A ∪ B)` and its dual, used for cocircuits relative to `B`.
#[derive(Clone)]
struct Block {
    restriction: Matroid,
    dual: Matroid,
}

impl<'m> BasisPair<'m> {
    pub fn new(matroid: &'m Matroid, a: ElementSet, b: ElementSet) -> Result<Self> {
        if !matroid.is_basis(a) {
            return Err(Error::NotBasis { which: "A", set: a });
        }
        if !matroid.is_basis(b) {
            return Err(Error::NotBasis { which: "B", set: b });
        }
        Ok(Self::new_unchecked(matroid, a, b))
    }

    pub(crate) fn new_unchecked(matroid: &'m Matroid, a: ElementSet, b: ElementSet) -> Self {
        BasisPair {
            matroid,
            a,
            b,
            block: OnceLock::new(),
        }
    }

    pub fn matroid(&self) -> &'m Matroid {
        self.matroid
    }

    pub fn a(&self) -> ElementSet {
        self.a
    }

    pub fn b(&self) -> ElementSet {
        self.b
    }

    pub fn is_disjoint(&self) -> bool {
        self.a.is_disjoint(self.b)
    }

    /// Elements that may take part in an exchange: `A △ B`.
    pub fn movable(&self) -> ElementSet {
        self.a.symmetric_difference(self.b)
    }

    /// `(B, A)`
    pub fn swapped(&self) -> BasisPair<'m> {
        Self::new_unchecked(self.matroid, self.b, self.a)
    }

    fn check_in_a(&self, a: usize) -> Result<()> {
        if self.a.contains(a) {
            Ok(())
        } else {
            Err(Error::NotInBasis {
                which: "A",
                element: a,
            })
        }
    }

    fn require_disjoint(&self) -> Result<()> {
        if self.is_disjoint() {
            Ok(())
        } else {
            Err(Error::NotDisjoint)
        }
    }

    fn block(&self) -> &Block {
        self.block.get_or_init(|| {
            let restriction = self.matroid.restrict_to(self.a.union(self.b));
            let dual = restriction.dual();
            Block { restriction, dual }
        })
    }

    fn both_bases(&self, a_side: ElementSet, b_side: ElementSet) -> bool {
        self.matroid.is_basis(a_side) && self.matroid.is_basis(b_side)
    }

    /// True when `a ↔ b` is a symmetric exchange at this pair.
    pub fn exchangeable(&self, a: usize, b: usize) -> bool {
        self.a.contains(a)
            && self.b.contains(b)
            && !self.b.contains(a)
            && !self.a.contains(b)
            && self.both_bases(self.a.without(a).with(b), self.b.without(b).with(a))
    }

    /// C(x, B) for `x ∉ B`.
    pub fn circuit_in_b(&self, x: usize) -> Result<ElementSet> {
        self.matroid.fundamental_circuit(self.b, x)
    }

    /// C(x, A) for `x ∉ A`.
    pub fn circuit_in_a(&self, x: usize) -> Result<ElementSet> {
        self.matroid.fundamental_circuit(self.a, x)
    }

    /// C*(a, B) in the block matroid `M | (A ∪ B)`, where `B` is a cobase.
    /// Computed through the dual of the restriction.
    pub fn cocircuit(&self, a: usize) -> Result<ElementSet> {
        self.require_disjoint()?;
        self.check_in_a(a)?;
        let block = self.block();
        let local_b = block.restriction.from_parent(self.b);
        let local_a = block.restriction.from_parent(ElementSet::singleton(a));
        let a_local = local_a.min().expect("a lies in A ∪ B");
        let cocircuit = block.dual.fundamental_circuit(local_b, a_local)?;
        Ok(block.restriction.to_parent(cocircuit))
    }

    /// `{b ∈ B : a ∈ C(b, A)} + a`, the block-matroid identity for C*(a, B).
    pub fn cocircuit_by_block_identity(&self, a: usize) -> Result<ElementSet> {
        self.require_disjoint()?;
        self.check_in_a(a)?;
        let mut out = ElementSet::singleton(a);
        for b in self.b {
            if self.circuit_in_a(b)?.contains(a) {
                out = out.with(b);
            }
        }
        Ok(out)
    }
}

impl PartialEq for BasisPair<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.matroid, other.matroid) && self.a == other.a && self.b == other.b
    }
}

impl Eq for BasisPair<'_> {}

impl fmt::Debug for BasisPair<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// `a ↔ b`: `a` leaves the first basis, `b` leaves the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExchangeStep {
    pub a: usize,
    pub b: usize,
}

impl ExchangeStep {
    pub fn new(a: usize, b: usize) -> Self {
        ExchangeStep { a, b }
    }

    /// The step that undoes this one.
    pub fn reversed(self) -> Self {
        ExchangeStep {
            a: self.b,
            b: self.a,
        }
    }
}

impl fmt::Display for ExchangeStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<->{}", self.a, self.b)
    }
}

/// Sym(a, A, B): elements `b ∈ B` with `A - a + b` and `B - b + a` both bases.
pub fn sym_set(pair: &BasisPair<'_>, a: usize) -> Result<ElementSet> {
    pair.check_in_a(a)?;
    let sym = pair
        .b
        .iter()
        .filter(|&b| pair.exchangeable(a, b))
        .collect();
    #[cfg(test)]
    if pair.is_disjoint() {
        assert_eq!(sym, sym_set_by_circuits(pair, a)?, "Sym routes disagree at {pair:?}, a={a}");
    }
    Ok(sym)
}

/// Sym(a, A, B) as `(C(a, B) ∩ C*(a, B)) - a`, for disjoint pairs.
pub fn sym_set_by_circuits(pair: &BasisPair<'_>, a: usize) -> Result<ElementSet> {
    pair.require_disjoint()?;
    pair.check_in_a(a)?;
    let circuit = pair.circuit_in_b(a)?;
    let cocircuit = pair.cocircuit(a)?;
    Ok(circuit.intersection(cocircuit).without(a))
}

/// Conn(a, a', A, B): elements `b ∈ B` with `A - a' + b` and `B - b + a` both bases.
pub fn conn_set(pair: &BasisPair<'_>, a: usize, a2: usize) -> Result<ElementSet> {
    pair.check_in_a(a)?;
    pair.check_in_a(a2)?;
    if a == a2 {
        return Err(Error::SameElement(a));
    }
    let conn = pair
        .b
        .difference(pair.a)
        .iter()
        .filter(|&b| {
            !pair.b.contains(a)
                && !pair.b.contains(a2)
                && pair.both_bases(pair.a.without(a2).with(b), pair.b.without(b).with(a))
        })
        .collect();
    #[cfg(test)]
    if pair.is_disjoint() {
        assert_eq!(
            conn,
            conn_set_by_circuits(pair, a, a2)?,
            "Conn routes disagree at {pair:?}, a={a}, a'={a2}"
        );
    }
    Ok(conn)
}

/// Conn(a, a', A, B) as `C(a, B) ∩ C*(a', B)`, for disjoint pairs.
pub fn conn_set_by_circuits(pair: &BasisPair<'_>, a: usize, a2: usize) -> Result<ElementSet> {
    pair.require_disjoint()?;
    pair.check_in_a(a)?;
    pair.check_in_a(a2)?;
    if a == a2 {
        return Err(Error::SameElement(a));
    }
    Ok(pair.circuit_in_b(a)?.intersection(pair.cocircuit(a2)?))
}

/// Performs `a ↔ b`, returning `(A - a + b, B - b + a)`.
pub fn apply_exchange<'m>(pair: &BasisPair<'m>, step: ExchangeStep) -> Result<BasisPair<'m>> {
    pair.check_in_a(step.a)?;
    if !pair.b.contains(step.b) {
        return Err(Error::NotInBasis {
            which: "B",
            element: step.b,
        });
    }
    if !pair.exchangeable(step.a, step.b) {
        return Err(Error::NotExchangeable {
            a: step.a,
            b: step.b,
        });
    }
    Ok(BasisPair::new_unchecked(
        pair.matroid,
        pair.a.without(step.a).with(step.b),
        pair.b.without(step.b).with(step.a),
    ))
}

/// d((A, B), (A', B')) = |A \ A'|.
pub fn pair_distance(origin: &BasisPair<'_>, current: &BasisPair<'_>) -> usize {
    origin.a.difference(current.a).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::MatroidSpec;

    pub(crate) fn uniform(r: usize, n: usize) -> Matroid {
        Matroid::new(MatroidSpec::Uniform { r, n }).unwrap()
    }

    pub(crate) fn k4() -> Matroid {
        Matroid::new(MatroidSpec::Graphic {
            vertices: 4,
            edges: vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
        })
        .unwrap()
    }

    fn set<const N: usize>(ids: [usize; N]) -> ElementSet {
        ElementSet::from(ids)
    }

    #[test]
    fn sym_examples() {
        let u = uniform(2, 4);
        let p = BasisPair::new(&u, set([0, 1]), set([2, 3])).unwrap();
        assert_eq!(sym_set(&p, 0).unwrap(), set([2, 3]));

        let k = k4();
        let p = BasisPair::new(&k, set([0, 3, 5]), set([1, 2, 4])).unwrap();
        assert_eq!(p.circuit_in_b(0).unwrap(), set([0, 2, 4]));
        assert_eq!(p.cocircuit(0).unwrap(), set([0, 1, 2]));
        assert_eq!(sym_set(&p, 0).unwrap(), set([2]));
        assert_eq!(sym_set_by_circuits(&p, 0).unwrap(), set([2]));
        assert!(matches!(sym_set(&p, 1), Err(Error::NotInBasis { .. })));
    }

    #[test]
    fn conn_examples() {
        let u = uniform(2, 4);
        let p = BasisPair::new(&u, set([0, 1]), set([2, 3])).unwrap();
        assert_eq!(conn_set(&p, 0, 1).unwrap(), set([2, 3]));
        assert!(matches!(conn_set(&p, 0, 0), Err(Error::SameElement(0))));

        let k = k4();
        let p = BasisPair::new(&k, set([0, 3, 5]), set([1, 2, 4])).unwrap();
        let expected = p.circuit_in_b(0).unwrap().intersection(p.cocircuit(3).unwrap());
        assert_eq!(conn_set(&p, 0, 3).unwrap(), expected);
    }

    #[test]
    fn block_identity_matches_dual_route_on_k4() {
        let k = k4();
        let p = BasisPair::new(&k, set([0, 3, 5]), set([1, 2, 4])).unwrap();
        for a in p.a() {
            assert_eq!(p.cocircuit(a).unwrap(), p.cocircuit_by_block_identity(a).unwrap());
        }
    }

    #[test]
    fn apply_examples() {
        let u = uniform(2, 4);
        let p = BasisPair::new(&u, set([0, 1]), set([2, 3])).unwrap();
        let q = apply_exchange(&p, ExchangeStep::new(0, 2)).unwrap();
        assert_eq!((q.a(), q.b()), (set([1, 2]), set([0, 3])));
        assert_eq!(pair_distance(&p, &q), 1);
        let back = apply_exchange(&q, ExchangeStep::new(0, 2).reversed()).unwrap();
        assert_eq!(back, p);
        assert_eq!(pair_distance(&p, &back), 0);
        assert_eq!(pair_distance(&p, &p), 0);

        let k = k4();
        let p = BasisPair::new(&k, set([0, 3, 5]), set([1, 2, 4])).unwrap();
        let q = apply_exchange(&p, ExchangeStep::new(0, 2)).unwrap();
        assert_eq!((q.a(), q.b()), (set([2, 3, 5]), set([0, 1, 4])));
        assert!(matches!(
            apply_exchange(&p, ExchangeStep::new(0, 4)),
            Err(Error::NotExchangeable { a: 0, b: 4 })
        ));
        assert!(matches!(
            apply_exchange(&p, ExchangeStep::new(1, 4)),
            Err(Error::NotInBasis { which: "A", .. })
        ));
    }

    #[test]
    fn pair_rejects_non_bases() {
        let u = uniform(2, 4);
        assert!(matches!(
            BasisPair::new(&u, set([0]), set([2, 3])),
            Err(Error::NotBasis { which: "A", .. })
        ));
        assert!(matches!(
            BasisPair::new(&u, set([0, 1]), set([1, 2, 3])),
            Err(Error::NotBasis { which: "B", .. })
        ));
    }

    #[test]
    fn circuit_routes_need_disjoint_pairs() {
        let u = uniform(2, 4);
        let p = BasisPair::new(&u, set([0, 1]), set([0, 2])).unwrap();
        assert!(matches!(sym_set_by_circuits(&p, 1), Err(Error::NotDisjoint)));
        // common elements never exchange
        assert_eq!(sym_set(&p, 0).unwrap(), ElementSet::EMPTY);
        assert_eq!(sym_set(&p, 1).unwrap(), set([2]));
    }
}
