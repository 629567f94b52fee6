//! Built-in matroid zoo, seeded random families, matroid files and
//! disjoint-basis-pair enumeration.

mod builtin;
mod files;
mod random;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::element_set::{k_subsets, ElementSet};
use crate::error::Result;
use crate::exchange::BasisPair;
use crate::laws::has_u24_minor;
use crate::matroid::{Matroid, MatroidSpec, EXHAUSTIVE_CAP};

pub use builtin::builtin_catalog;
pub use files::{load_catalog, load_matroid, save_catalog, save_matroid, MatroidFile};
pub use random::{generate_random, FamilyKind, RandomFamily};

/// Largest ground set on which the `binary` tag is decided by a U(2,4)-minor search.
pub const BINARY_TAG_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Tag {
    Binary,
    Graphic,
    Uniform,
    Block,
    Rank(usize),
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Binary => f.write_str("binary"),
            Tag::Graphic => f.write_str("graphic"),
            Tag::Uniform => f.write_str("uniform"),
            Tag::Block => f.write_str("block"),
            Tag::Rank(k) => write!(f, "rank-{k}"),
        }
    }
}

impl FromStr for Tag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "binary" => Ok(Tag::Binary),
            "graphic" => Ok(Tag::Graphic),
            "uniform" => Ok(Tag::Uniform),
            "block" => Ok(Tag::Block),
            _ => s
                .strip_prefix("rank-")
                .and_then(|k| k.parse().ok())
                .map(Tag::Rank)
                .ok_or_else(|| format!("unknown tag `{s}`")),
        }
    }
}

impl From<Tag> for String {
    fn from(t: Tag) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for Tag {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

/// A named matroid with descriptive tags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: MatroidSpec,
    pub tags: BTreeSet<Tag>,
}

impl CatalogEntry {
    /// Builds the matroid and derives its tags.
    pub fn new(name: impl Into<String>, spec: MatroidSpec) -> Result<Self> {
        let name = name.into();
        let matroid = Matroid::new(spec.clone())?;
        let tags = derive_tags(&matroid);
        Ok(CatalogEntry { name, spec, tags })
    }

    pub fn matroid(&self) -> Result<Matroid> {
        Ok(Matroid::new(self.spec.clone())?.with_name(self.name.clone()))
    }

    pub fn has(&self, tag: Tag) -> bool {
        self.tags.contains(&tag)
    }

    pub fn tag_list(&self) -> String {
        self.tags
            .iter()
            .map(Tag::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Tags implied by a matroid's construction and structure.
///
/// `binary` follows the U(2,4)-minor test up to [`BINARY_TAG_CAP`] elements;
/// beyond that only graphic and GF(2) constructions are tagged.
pub fn derive_tags(m: &Matroid) -> BTreeSet<Tag> {
    let mut tags = BTreeSet::new();
    tags.insert(Tag::Rank(m.rank()));
    let spec = m.spec();
    let graphic = matches!(spec, Some(MatroidSpec::Graphic { .. }));
    let gf2 = matches!(spec, Some(MatroidSpec::Linear { p: 2, .. }));
    if graphic {
        tags.insert(Tag::Graphic);
    }
    if let Some(MatroidSpec::Uniform { .. }) = spec {
        tags.insert(Tag::Uniform);
    }
    let binary = graphic
        || gf2
        || (m.n() <= BINARY_TAG_CAP && !has_u24_minor(m).unwrap_or(true));
    if binary {
        tags.insert(Tag::Binary);
    }
    if is_block(m) {
        tags.insert(Tag::Block);
    }
    tags
}

/// The ground set is the disjoint union of two bases.
pub fn is_block(m: &Matroid) -> bool {
    if m.n() != 2 * m.rank() || m.n() > EXHAUSTIVE_CAP {
        return false;
    }
    let ground = m.ground();
    k_subsets(m.n(), m.rank()).any(|a| m.is_basis(a) && m.is_basis(ground.difference(a)))
}

/// Every unordered pair of disjoint bases once, as `(A, B)` with `A`
/// lexicographically before `B`. With `cap` set and more pairs than that, a
/// seeded uniform sample of `cap` pairs is kept in enumeration order.
pub fn disjoint_basis_pairs(
    m: &Matroid,
    cap: Option<usize>,
    seed: u64,
) -> Result<Vec<BasisPair<'_>>> {
    let bases: Vec<ElementSet> = m.bases()?.collect();
    let mut pairs = Vec::new();
    for (i, &x) in bases.iter().enumerate() {
        for &y in &bases[i + 1..] {
            if x.is_disjoint(y) {
                let (a, b) = if x.lex_cmp(y).is_le() { (x, y) } else { (y, x) };
                pairs.push((a, b));
            }
        }
    }
    if let Some(cap) = cap {
        if pairs.len() > cap {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut keep = sample(&mut rng, pairs.len(), cap).into_vec();
            keep.sort_unstable();
            pairs = keep.into_iter().map(|i| pairs[i]).collect();
        }
    }
    Ok(pairs
        .into_iter()
        .map(|(a, b)| BasisPair::new(m, a, b).expect("enumerated bases"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set<const N: usize>(ids: [usize; N]) -> ElementSet {
        ElementSet::from(ids)
    }

    fn sets(pairs: &[BasisPair<'_>]) -> Vec<(ElementSet, ElementSet)> {
        pairs.iter().map(|p| (p.a(), p.b())).collect()
    }

    #[test]
    fn u24_pairs_in_order() {
        let m = Matroid::new(MatroidSpec::Uniform { r: 2, n: 4 }).unwrap();
        let pairs = disjoint_basis_pairs(&m, None, 0).unwrap();
        assert_eq!(
            sets(&pairs),
            vec![
                (set([0, 1]), set([2, 3])),
                (set([0, 2]), set([1, 3])),
                (set([0, 3]), set([1, 2])),
            ]
        );
    }

    #[test]
    fn u23_has_no_pairs() {
        let m = Matroid::new(MatroidSpec::Uniform { r: 2, n: 3 }).unwrap();
        assert!(disjoint_basis_pairs(&m, None, 0).unwrap().is_empty());
        assert!(!is_block(&m));
    }

    #[test]
    fn sampling_is_seeded_and_ordered() {
        let m = Matroid::new(MatroidSpec::Uniform { r: 3, n: 6 }).unwrap();
        let all = sets(&disjoint_basis_pairs(&m, None, 0).unwrap());
        assert_eq!(all.len(), 10);
        let s1 = sets(&disjoint_basis_pairs(&m, Some(4), 9).unwrap());
        let s2 = sets(&disjoint_basis_pairs(&m, Some(4), 9).unwrap());
        assert_eq!(s1, s2);
        assert_eq!(s1.len(), 4);
        let positions: Vec<_> = s1.iter().map(|p| all.iter().position(|q| q == p).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn tags_round_trip() {
        for t in [Tag::Binary, Tag::Graphic, Tag::Uniform, Tag::Block, Tag::Rank(5)] {
            assert_eq!(t.to_string().parse::<Tag>().unwrap(), t);
        }
        assert!("rank-x".parse::<Tag>().is_err());
    }

    #[test]
    fn derived_tags() {
        let u24 = CatalogEntry::new("U24", MatroidSpec::Uniform { r: 2, n: 4 }).unwrap();
        assert_eq!(u24.tag_list(), "uniform block rank-2");
        let u23 = CatalogEntry::new("U23", MatroidSpec::Uniform { r: 2, n: 3 }).unwrap();
        assert!(u23.has(Tag::Binary));
    }
}
