//! Fixed-width bitmask sets of ground-set elements.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest ground set an [`ElementSet`] can describe.
pub const MAX_ELEMENTS: usize = 64;

/// A set of element ids in `[0, 64)`, stored as a single machine word.
///
/// The ground-set size is a property of the matroid a set is used with, not
/// of the set itself; [`ElementSet::full`] and [`ElementSet::complement`] take
/// it explicitly.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "ground set of {n} elements exceeds {MAX_ELEMENTS}");
        if n == MAX_ELEMENTS {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(x: usize) -> Self {
        ElementSet::EMPTY.with(x)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, x: usize) -> bool {
        x < MAX_ELEMENTS && self.0 & (1u64 << x) != 0
    }

    /// `self + x`
    pub fn with(self, x: usize) -> Self {
        assert!(x < MAX_ELEMENTS, "element {x} out of range");
        ElementSet(self.0 | (1u64 << x))
    }

    /// `self - x`
    pub fn without(self, x: usize) -> Self {
        if x >= MAX_ELEMENTS {
            return self;
        }
        ElementSet(self.0 & !(1u64 << x))
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: Self) -> Self {
        ElementSet(self.0 ^ other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        ElementSet::full(n).difference(self)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// True when every member is below `n`.
    pub fn within(self, n: usize) -> bool {
        self.is_subset(ElementSet::full(n))
    }

    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the sorted member lists.
    pub fn lex_cmp(self, other: Self) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// Image of the set under an id translation table (`map[old] = new`).
    pub fn map(self, map: &[usize]) -> Self {
        self.iter().map(|x| map[x]).collect()
    }
}

/// Iterator over the members of an [`ElementSet`] in ascending order.
#[derive(Clone, Debug)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(ElementSet::EMPTY, ElementSet::with)
    }
}

impl<const N: usize> From<[usize; N]> for ElementSet {
    fn from(items: [usize; N]) -> Self {
        items.into_iter().collect()
    }
}

impl From<&[usize]> for ElementSet {
    fn from(items: &[usize]) -> Self {
        items.iter().copied().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ElementSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let ids = Vec::<usize>::deserialize(deserializer)?;
        if let Some(bad) = ids.iter().find(|&&x| x >= MAX_ELEMENTS) {
            return Err(serde::de::Error::custom(format!(
                "element id {bad} exceeds the {MAX_ELEMENTS}-element cap"
            )));
        }
        Ok(ids.into_iter().collect())
    }
}

/// All `k`-subsets of `{0..n}` in increasing bitmask order (Gosper's hack).
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = ElementSet> {
    assert!(n < MAX_ELEMENTS, "k_subsets requires n < {MAX_ELEMENTS}");
    let limit = 1u64 << n;
    let mut next = if k > n {
        None
    } else if k == 0 {
        Some(0u64)
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < limit).then_some(nxt)
        };
        Some(ElementSet(cur))
    })
}

/// Every subset of `set`, starting from the empty set.
pub fn subsets_of(set: ElementSet) -> impl Iterator<Item = ElementSet> {
    let full = set.0;
    let mut cur = Some(0u64);
    std::iter::from_fn(move || {
        let s = cur?;
        cur = if s == full { None } else { Some((s.wrapping_sub(full)) & full) };
        Some(ElementSet(s))
    })
}
