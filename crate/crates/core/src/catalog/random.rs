use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::CatalogEntry;
use crate::element_set::MAX_ELEMENTS;
use crate::error::{Error, Result};
use crate::matroid::{gfp, Matroid, MatroidSpec, EXHAUSTIVE_CAP};

const MAX_ATTEMPTS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyKind {
    /// Rank-`rank` GF(2) column matroids on `cols` columns with a disjoint basis pair.
    Gf2Block { rank: usize, cols: usize },
    /// Full-rank `rank x cols` matrices over GF(`p`).
    GfpMatrix { p: u32, rank: usize, cols: usize },
    /// Loopless multigraphs with `edges` edges on `vertices` vertices.
    RandomGraph { vertices: usize, edges: usize },
}

/// A seeded batch of random matroids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomFamily {
    #[serde(flatten)]
    pub kind: FamilyKind,
    pub seed: u64,
    pub count: usize,
}

impl RandomFamily {
    pub fn new(kind: FamilyKind, seed: u64, count: usize) -> Self {
        RandomFamily { kind, seed, count }
    }

    fn label(&self) -> String {
        match self.kind {
            FamilyKind::Gf2Block { rank, cols } => format!("gf2-block-r{rank}-c{cols}"),
            FamilyKind::GfpMatrix { p, rank, cols } => format!("gf{p}-r{rank}-c{cols}"),
            FamilyKind::RandomGraph { vertices, edges } => format!("graph-v{vertices}-e{edges}"),
        }
    }

    fn ground_size(&self) -> usize {
        match self.kind {
            FamilyKind::Gf2Block { cols, .. } | FamilyKind::GfpMatrix { cols, .. } => cols,
            FamilyKind::RandomGraph { edges, .. } => edges,
        }
    }
}

/// Generates `family.count` entries named `<family>-s<seed>-<index>`.
/// Deterministic in the seed.
pub fn generate_random(family: &RandomFamily) -> Result<Vec<CatalogEntry>> {
    let n = family.ground_size();
    if n > EXHAUSTIVE_CAP || n >= MAX_ELEMENTS {
        return Err(Error::GroundSetTooLarge {
            n,
            cap: EXHAUSTIVE_CAP,
        });
    }
    if let FamilyKind::GfpMatrix { p, .. } = family.kind {
        if !gfp::SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::InvalidSpec(format!("unsupported field size {p}")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(family.seed);
    let label = family.label();
    (0..family.count)
        .map(|i| {
            let name = format!("{label}-s{}-{i}", family.seed);
            let spec = (0..MAX_ATTEMPTS)
                .find_map(|_| attempt(&family.kind, &mut rng))
                .ok_or_else(|| Error::GenerationExhausted {
                    family: label.clone(),
                    attempts: MAX_ATTEMPTS,
                })?;
            CatalogEntry::new(name, spec)
        })
        .collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, p: u32, rows: usize, cols: usize) -> Vec<Vec<u32>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(0..p)).collect())
        .collect()
}

fn attempt(kind: &FamilyKind, rng: &mut ChaCha8Rng) -> Option<MatroidSpec> {
    match *kind {
        FamilyKind::Gf2Block { rank, cols } => {
            let spec = MatroidSpec::Linear {
                p: 2,
                matrix: random_matrix(rng, 2, rank, cols),
            };
            let m = Matroid::new(spec.clone()).ok()?;
            (m.rank() == rank && has_disjoint_pair(&m)).then_some(spec)
        }
        FamilyKind::GfpMatrix { p, rank, cols } => {
            let spec = MatroidSpec::Linear {
                p,
                matrix: random_matrix(rng, p, rank, cols),
            };
            let m = Matroid::new(spec.clone()).ok()?;
            (m.rank() == rank).then_some(spec)
        }
        FamilyKind::RandomGraph { vertices, edges } => {
            if vertices < 2 {
                return None;
            }
            let edges = (0..edges)
                .map(|_| {
                    let u = rng.gen_range(0..vertices);
                    let mut v = rng.gen_range(0..vertices - 1);
                    if v >= u {
                        v += 1;
                    }
                    [u.min(v), u.max(v)]
                })
                .collect();
            Some(MatroidSpec::Graphic { vertices, edges })
        }
    }
}

fn has_disjoint_pair(m: &Matroid) -> bool {
    let Ok(bases) = m.bases() else {
        return false;
    };
    let bases: Vec<_> = bases.collect();
    bases
        .iter()
        .enumerate()
        .any(|(i, a)| bases[i + 1..].iter().any(|b| a.is_disjoint(*b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{disjoint_basis_pairs, Tag};

    #[test]
    fn gf2_block_family() {
        let fam = RandomFamily::new(FamilyKind::Gf2Block { rank: 5, cols: 10 }, 42, 5);
        let entries = generate_random(&fam).unwrap();
        assert_eq!(entries.len(), 5);
        for e in &entries {
            let m = e.matroid().unwrap();
            assert_eq!((m.rank(), m.n()), (5, 10));
            assert!(e.has(Tag::Binary) && e.has(Tag::Block));
            assert!(!disjoint_basis_pairs(&m, None, 0).unwrap().is_empty());
        }
        assert_eq!(entries, generate_random(&fam).unwrap());
        assert_eq!(entries[0].name, "gf2-block-r5-c10-s42-0");
    }

    #[test]
    fn graph_family_blocks_have_two_disjoint_trees() {
        let fam = RandomFamily::new(
            FamilyKind::RandomGraph {
                vertices: 6,
                edges: 10,
            },
            7,
            6,
        );
        for e in generate_random(&fam).unwrap() {
            assert!(e.has(Tag::Graphic) && e.has(Tag::Binary));
            let m = e.matroid().unwrap();
            if e.has(Tag::Block) {
                let pairs = disjoint_basis_pairs(&m, None, 0).unwrap();
                assert!(pairs.iter().any(|p| p.a().union(p.b()) == m.ground()));
            }
        }
    }

    #[test]
    fn seeds_matter() {
        let a = RandomFamily::new(FamilyKind::GfpMatrix { p: 3, rank: 3, cols: 6 }, 1, 2);
        let b = RandomFamily { seed: 2, ..a };
        assert_ne!(
            generate_random(&a).unwrap()[0].spec,
            generate_random(&b).unwrap()[0].spec
        );
    }

    #[test]
    fn impossible_family_exhausts() {
        // rank 4 cannot fit a disjoint pair into 7 columns
        let fam = RandomFamily::new(FamilyKind::Gf2Block { rank: 4, cols: 7 }, 0, 1);
        assert!(matches!(
            generate_random(&fam),
            Err(Error::GenerationExhausted { .. })
        ));
        let big = RandomFamily::new(FamilyKind::Gf2Block { rank: 8, cols: 16 }, 0, 1);
        assert!(matches!(
            generate_random(&big),
            Err(Error::GroundSetTooLarge { .. })
        ));
    }
}
