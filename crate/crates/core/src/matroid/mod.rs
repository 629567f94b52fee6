//! Matroids behind a uniform independence oracle, with rank, closure,
//! circuits, duality and minors.

mod forest;
pub mod gfp;
mod spec;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

pub use spec::MatroidSpec;

use crate::element_set::{k_subsets, subsets_of, ElementSet, MAX_ELEMENTS};
use crate::error::{Error, Result};
use forest::UnionFind;

/// Default ground-set cap for anything that enumerates subsets or bases.
pub const EXHAUSTIVE_CAP: usize = 14;

/// Ground-set cap for circuit enumeration.
pub const CIRCUIT_CAP: usize = 12;

/// Independence of every subset is tabulated at build time up to this size.
const TABLE_CAP: usize = 14;

/// A matroid on the ground set `{0, ..., n-1}`.
///
/// Values are immutable once built and cheap to clone; derived matroids
/// (duals, minors) share their parent.
#[derive(Clone)]
pub struct Matroid {
    name: String,
    n: usize,
    rank: usize,
    oracle: Oracle,
    table: Option<Arc<[u64]>>,
    spec: Option<MatroidSpec>,
}

#[derive(Clone)]
enum Oracle {
    Uniform {
        r: usize,
    },
    Graphic {
        vertices: usize,
        edges: Arc<[[usize; 2]]>,
    },
    Linear {
        p: u32,
        columns: Arc<[Vec<u8>]>,
    },
    Bases {
        bases: Arc<[ElementSet]>,
    },
    Dual(Arc<Matroid>),
    Minor {
        parent: Arc<Matroid>,
        /// `ground[local] = parent id`
        ground: Arc<[usize]>,
        contracted: ElementSet,
        contracted_rank: usize,
    },
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("name", &self.name)
            .field("kind", &self.kind())
            .field("n", &self.n)
            .field("rank", &self.rank)
            .finish()
    }
}

/// Builds a matroid from its representation, validating the spec.
pub fn build_matroid(spec: MatroidSpec) -> Result<Matroid> {
    Matroid::new(spec)
}

impl Matroid {
    pub fn new(spec: MatroidSpec) -> Result<Matroid> {
        let n = spec.ground_size();
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge {
                n,
                cap: MAX_ELEMENTS,
            });
        }
        let (oracle, rank) = match &spec {
            MatroidSpec::Uniform { r, n } => {
                if r > n {
                    return Err(Error::InvalidSpec(format!(
                        "uniform rank {r} exceeds ground size {n}"
                    )));
                }
                (Oracle::Uniform { r: *r }, *r)
            }
            MatroidSpec::Graphic { vertices, edges } => build_graphic(*vertices, edges)?,
            MatroidSpec::Linear { p, matrix } => build_linear(*p, matrix)?,
            MatroidSpec::ExplicitBases { n, bases } => build_bases(*n, bases)?,
        };
        let mut m = Matroid {
            name: String::new(),
            n,
            rank,
            oracle,
            table: None,
            spec: Some(spec),
        };
        m.tabulate();
        Ok(m)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Ground-set size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank of the whole ground set.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    /// The representation this matroid was built from; `None` for duals and minors.
    pub fn spec(&self) -> Option<&MatroidSpec> {
        self.spec.as_ref()
    }

    /// The build spec, or an explicit basis list for derived matroids.
    pub fn to_spec(&self) -> Result<MatroidSpec> {
        if let Some(spec) = &self.spec {
            return Ok(spec.clone());
        }
        Ok(MatroidSpec::ExplicitBases {
            n: self.n,
            bases: self.bases()?.map(ElementSet::to_vec).collect(),
        })
    }

    pub fn kind(&self) -> &'static str {
        match &self.oracle {
            Oracle::Uniform { .. } => "uniform",
            Oracle::Graphic { .. } => "graphic",
            Oracle::Linear { .. } => "linear",
            Oracle::Bases { .. } => "bases",
            Oracle::Dual(_) => "dual",
            Oracle::Minor { .. } => "minor",
        }
    }

    /// Field characteristic for linear matroids.
    pub fn field(&self) -> Option<u32> {
        match &self.oracle {
            Oracle::Linear { p, .. } => Some(*p),
            _ => None,
        }
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        if !s.within(self.n) {
            return false;
        }
        match &self.table {
            Some(table) => {
                let i = s.bits() as usize;
                table[i >> 6] >> (i & 63) & 1 == 1
            }
            None => self.oracle_independent(s),
        }
    }

    fn oracle_independent(&self, s: ElementSet) -> bool {
        match &self.oracle {
            Oracle::Uniform { r } => s.len() <= *r,
            Oracle::Graphic { vertices, edges } => {
                let mut uf = UnionFind::new(*vertices);
                s.iter().all(|e| uf.union(edges[e][0], edges[e][1]))
            }
            Oracle::Linear { p, columns } => {
                gfp::rank(s.iter().map(|c| columns[c].as_slice()), *p) == s.len()
            }
            Oracle::Bases { bases } => bases.iter().any(|&b| s.is_subset(b)),
            Oracle::Dual(primal) => {
                primal.rank_of(s.complement(primal.n)) == primal.rank
            }
            Oracle::Minor {
                parent,
                ground,
                contracted,
                contracted_rank,
            } => {
                let lifted = s.map(ground).union(*contracted);
                parent.rank_of(lifted) - contracted_rank == s.len()
            }
        }
    }

    fn tabulate(&mut self) {
        if self.n > TABLE_CAP {
            return;
        }
        let size = 1usize << self.n;
        let mut table = vec![0u64; size.div_ceil(64)];
        let set = |t: &mut [u64], i: usize| t[i >> 6] |= 1 << (i & 63);
        let get = |t: &[u64], i: usize| t[i >> 6] >> (i & 63) & 1 == 1;
        if let Oracle::Bases { bases } = &self.oracle {
            for &b in bases.iter() {
                for s in subsets_of(b) {
                    set(&mut table, s.bits() as usize);
                }
            }
        } else {
            set(&mut table, 0);
            for i in 1..size {
                // Heredity prefilter: dropping the lowest element must stay independent.
                if get(&table, i & (i - 1)) && self.oracle_independent(ElementSet::from_bits(i as u64))
                {
                    set(&mut table, i);
                }
            }
        }
        self.table = Some(table.into());
    }

    /// Size of a maximal independent subset of `s`, found greedily.
    pub fn rank_of(&self, s: ElementSet) -> usize {
        let mut indep = ElementSet::EMPTY;
        for x in s.intersection(self.ground()) {
            let grown = indep.with(x);
            if self.is_independent(grown) {
                indep = grown;
            }
        }
        indep.len()
    }

    /// A maximal independent subset of `s` (greedy in ascending id order).
    pub fn basis_of(&self, s: ElementSet) -> ElementSet {
        s.intersection(self.ground())
            .iter()
            .fold(ElementSet::EMPTY, |acc, x| {
                let grown = acc.with(x);
                if self.is_independent(grown) {
                    grown
                } else {
                    acc
                }
            })
    }

    pub fn closure(&self, s: ElementSet) -> ElementSet {
        let base = self.basis_of(s);
        self.ground()
            .iter()
            .filter(|&x| s.contains(x) || !self.is_independent(base.with(x)))
            .collect()
    }

    pub fn is_basis(&self, s: ElementSet) -> bool {
        s.len() == self.rank && self.is_independent(s)
    }

    /// Every basis in increasing bitmask order. Fails above [`EXHAUSTIVE_CAP`].
    pub fn bases(&self) -> Result<impl Iterator<Item = ElementSet> + '_> {
        self.bases_capped(EXHAUSTIVE_CAP)
    }

    pub fn bases_capped(&self, cap: usize) -> Result<impl Iterator<Item = ElementSet> + '_> {
        self.check_cap(cap)?;
        Ok(k_subsets(self.n, self.rank).filter(move |&s| self.is_independent(s)))
    }

    pub(crate) fn check_cap(&self, cap: usize) -> Result<()> {
        if self.n > cap || self.n >= MAX_ELEMENTS {
            Err(Error::GroundSetTooLarge { n: self.n, cap })
        } else {
            Ok(())
        }
    }

    fn check_element(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element: x,
                n: self.n,
            })
        }
    }

    /// C(x, I): the unique circuit inside `I + x` for independent `I`.
    pub fn fundamental_circuit(&self, indep: ElementSet, x: usize) -> Result<ElementSet> {
        self.check_element(x)?;
        if indep.contains(x) {
            return Err(Error::ElementInSet {
                set: indep,
                element: x,
            });
        }
        if !self.is_independent(indep) {
            return Err(Error::NotIndependent(indep));
        }
        if self.is_independent(indep.with(x)) {
            return Err(Error::NotDependent {
                set: indep,
                element: x,
            });
        }
        Ok(indep
            .iter()
            .filter(|&b| self.is_independent(indep.without(b).with(x)))
            .collect::<ElementSet>()
            .with(x))
    }

    /// The dual matroid: bases are complements of bases.
    pub fn dual(&self) -> Matroid {
        let name = if self.name.is_empty() {
            String::new()
        } else {
            format!("{}*", self.name)
        };
        Matroid {
            name,
            n: self.n,
            rank: self.n - self.rank,
            oracle: Oracle::Dual(Arc::new(self.clone())),
            table: None,
            spec: None,
        }
    }

    /// C*(a, B): the fundamental circuit of `a` in the dual, with `B` a cobase.
    pub fn fundamental_cocircuit(&self, cobase: ElementSet, a: usize) -> Result<ElementSet> {
        if !cobase.within(self.n) || !self.is_basis(cobase.complement(self.n)) {
            return Err(Error::NotCobase(cobase));
        }
        self.dual().fundamental_circuit(cobase, a)
    }

    /// Restriction to `s`, relabelled `0..|s|` in ascending id order.
    pub fn restrict_to(&self, s: ElementSet) -> Matroid {
        self.minor(self.ground().difference(s), ElementSet::EMPTY)
            .expect("deletion alone cannot overlap")
    }

    /// `M / contracted \ deleted`, relabelled `0..` over the surviving elements.
    pub fn minor(&self, deleted: ElementSet, contracted: ElementSet) -> Result<Matroid> {
        let overlap = deleted.intersection(contracted);
        if !overlap.is_empty() {
            return Err(Error::OverlappingMinor(overlap));
        }
        let deleted = deleted.intersection(self.ground());
        let contracted = contracted.intersection(self.ground());
        let ground: Vec<usize> = self
            .ground()
            .difference(deleted.union(contracted))
            .to_vec();
        let contracted_rank = self.rank_of(contracted);
        let kept = ElementSet::from(ground.as_slice());
        let rank = self.rank_of(kept.union(contracted)) - contracted_rank;
        Ok(Matroid {
            name: String::new(),
            n: ground.len(),
            rank,
            oracle: Oracle::Minor {
                parent: Arc::new(self.clone()),
                ground: ground.into(),
                contracted,
                contracted_rank,
            },
            table: None,
            spec: None,
        })
    }

    /// Local-to-parent id table for minors and restrictions.
    pub fn parent_ids(&self) -> Option<&[usize]> {
        match &self.oracle {
            Oracle::Minor { ground, .. } => Some(ground),
            _ => None,
        }
    }

    /// Translates a local set to parent ids (identity for non-minors).
    pub fn to_parent(&self, s: ElementSet) -> ElementSet {
        match self.parent_ids() {
            Some(ground) => s.map(ground),
            None => s,
        }
    }

    /// Translates parent ids to local ids, dropping elements not in this minor.
    pub fn from_parent(&self, s: ElementSet) -> ElementSet {
        match self.parent_ids() {
            Some(ground) => ground
                .iter()
                .enumerate()
                .filter(|&(_, &g)| s.contains(g))
                .map(|(i, _)| i)
                .collect(),
            None => s,
        }
    }

    /// Every circuit, by increasing size then bitmask. Fails above [`CIRCUIT_CAP`].
    pub fn circuits(&self) -> Result<Vec<ElementSet>> {
        self.check_cap(CIRCUIT_CAP)?;
        let mut found: Vec<ElementSet> = Vec::new();
        for k in 1..=(self.rank + 1).min(self.n) {
            let before = found.len();
            for s in k_subsets(self.n, k) {
                if self.is_independent(s) || found[..before].iter().any(|c| c.is_subset(s)) {
                    continue;
                }
                if s.iter().all(|x| self.is_independent(s.without(x))) {
                    found.push(s);
                }
            }
        }
        Ok(found)
    }

    /// Elements in no basis.
    pub fn loops(&self) -> ElementSet {
        self.ground()
            .iter()
            .filter(|&x| !self.is_independent(ElementSet::singleton(x)))
            .collect()
    }

    /// Checks heredity and augmentation over independent sets, visiting at
    /// most `cap` ordered pairs for augmentation. Returns a description of
    /// the first violation.
    pub fn axiom_violation(&self, cap: usize) -> Result<Option<String>> {
        self.check_cap(EXHAUSTIVE_CAP)?;
        let indep: Vec<ElementSet> = subsets_of(self.ground())
            .filter(|&s| self.is_independent(s))
            .collect();
        if !self.is_independent(ElementSet::EMPTY) {
            return Ok(Some("empty set is dependent".into()));
        }
        for &s in &indep {
            if let Some(x) = s.iter().find(|&x| !self.is_independent(s.without(x))) {
                return Ok(Some(format!("heredity: {s} independent but {} is not", s.without(x))));
            }
        }
        let total = indep.len() * indep.len();
        let stride = if cap == 0 { 1 } else { total.div_ceil(cap).max(1) };
        for idx in (0..total).step_by(stride) {
            let (a, b) = (indep[idx / indep.len()], indep[idx % indep.len()]);
            if b.len() > a.len() && !b.difference(a).iter().any(|x| self.is_independent(a.with(x)))
            {
                return Ok(Some(format!("augmentation: {a} cannot grow from {b}")));
            }
        }
        if let Some(b) = subsets_of(self.ground())
            .filter(|&s| self.is_independent(s))
            .find(|&s| s.len() != self.rank && self.closure(s) == self.ground())
        {
            return Ok(Some(format!("maximal independent set {b} has size != rank {}", self.rank)));
        }
        Ok(None)
    }
}

fn build_graphic(vertices: usize, edges: &[[usize; 2]]) -> Result<(Oracle, usize)> {
    for (i, &[u, v]) in edges.iter().enumerate() {
        if u >= vertices || v >= vertices {
            return Err(Error::InvalidSpec(format!(
                "edge {i} = [{u},{v}] has an endpoint outside 0..{vertices}"
            )));
        }
        if u == v {
            return Err(Error::InvalidSpec(format!(
                "edge {i} is a self-loop at vertex {u}; loops are not supported"
            )));
        }
    }
    let mut uf = UnionFind::new(vertices);
    let rank = edges.iter().filter(|&&[u, v]| uf.union(u, v)).count();
    Ok((
        Oracle::Graphic {
            vertices,
            edges: edges.into(),
        },
        rank,
    ))
}

fn build_linear(p: u32, matrix: &[Vec<u32>]) -> Result<(Oracle, usize)> {
    if !gfp::SUPPORTED_PRIMES.contains(&p) {
        return Err(Error::InvalidSpec(format!(
            "field size {p} is not one of {:?}",
            gfp::SUPPORTED_PRIMES
        )));
    }
    let width = matrix.first().map_or(0, Vec::len);
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != width {
            return Err(Error::InvalidSpec(format!(
                "matrix row {i} has {} entries, expected {width}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= p) {
            return Err(Error::InvalidSpec(format!(
                "matrix row {i} has entry {bad} outside GF({p})"
            )));
        }
    }
    let columns: Vec<Vec<u8>> = (0..width)
        .map(|c| matrix.iter().map(|row| row[c] as u8).collect())
        .collect();
    let rank = gfp::rank(columns.iter().map(Vec::as_slice), p);
    Ok((
        Oracle::Linear {
            p,
            columns: columns.into(),
        },
        rank,
    ))
}

fn build_bases(n: usize, bases: &[Vec<usize>]) -> Result<(Oracle, usize)> {
    if bases.is_empty() {
        return Err(Error::InvalidSpec("basis list is empty".into()));
    }
    let mut sets = Vec::with_capacity(bases.len());
    for ids in bases {
        if let Some(&bad) = ids.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidSpec(format!(
                "basis {ids:?} mentions element {bad} outside 0..{n}"
            )));
        }
        let set = ElementSet::from(ids.as_slice());
        if set.len() != ids.len() {
            return Err(Error::InvalidSpec(format!("basis {ids:?} repeats an element")));
        }
        sets.push(set);
    }
    let rank = sets[0].len();
    if let Some(b) = sets.iter().find(|b| b.len() != rank) {
        return Err(Error::InvalidSpec(format!(
            "basis {b} has size {} but {} has size {rank}",
            b.len(),
            sets[0]
        )));
    }
    sets.sort_by_key(|s| s.bits());
    sets.dedup();
    let lookup: HashSet<ElementSet> = sets.iter().copied().collect();
    for &b1 in &sets {
        for &b2 in &sets {
            for x in b1.difference(b2) {
                let ok = b2
                    .difference(b1)
                    .iter()
                    .any(|y| lookup.contains(&b1.without(x).with(y)));
                if !ok {
                    return Err(Error::InvalidSpec(format!(
                        "basis exchange fails: no y in {b2} \\ {b1} with {b1} - {x} + y a basis"
                    )));
                }
            }
        }
    }
    Ok((Oracle::Bases { bases: sets.into() }, rank))
}
