use super::random::{generate_random, FamilyKind, RandomFamily};
use super::CatalogEntry;
use crate::matroid::MatroidSpec;

const FANO_COLUMNS: [[u32; 3]; 7] = [
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [1, 1, 0],
    [1, 0, 1],
    [0, 1, 1],
    [1, 1, 1],
];

fn matrix_from_columns<const R: usize>(columns: &[[u32; R]]) -> Vec<Vec<u32>> {
    (0..R).map(|r| columns.iter().map(|c| c[r]).collect()).collect()
}

fn uniform(r: usize, n: usize) -> MatroidSpec {
    MatroidSpec::Uniform { r, n }
}

fn graph(vertices: usize, edges: &[[usize; 2]]) -> MatroidSpec {
    MatroidSpec::Graphic {
        vertices,
        edges: edges.to_vec(),
    }
}

/// Wheel with `spokes` spokes: hub 0, rim 1..=spokes. Spokes first, then rim.
fn wheel(spokes: usize) -> MatroidSpec {
    let mut edges: Vec<[usize; 2]> = (1..=spokes).map(|v| [0, v]).collect();
    edges.extend((1..=spokes).map(|v| [v, v % spokes + 1]));
    MatroidSpec::Graphic {
        vertices: spokes + 1,
        edges,
    }
}

fn complete_graph(v: usize) -> MatroidSpec {
    let mut edges = Vec::new();
    for i in 0..v {
        for j in i + 1..v {
            edges.push([i, j]);
        }
    }
    MatroidSpec::Graphic { vertices: v, edges }
}

/// The random families bundled with the built-in catalog.
pub fn builtin_families() -> Vec<RandomFamily> {
    vec![
        RandomFamily::new(FamilyKind::Gf2Block { rank: 5, cols: 10 }, 42, 5),
        RandomFamily::new(FamilyKind::Gf2Block { rank: 4, cols: 8 }, 43, 3),
        RandomFamily::new(FamilyKind::Gf2Block { rank: 3, cols: 6 }, 44, 2),
        RandomFamily::new(
            FamilyKind::GfpMatrix {
                p: 3,
                rank: 5,
                cols: 10,
            },
            45,
            2,
        ),
        RandomFamily::new(
            FamilyKind::GfpMatrix {
                p: 3,
                rank: 4,
                cols: 8,
            },
            46,
            2,
        ),
        RandomFamily::new(
            FamilyKind::RandomGraph {
                vertices: 6,
                edges: 10,
            },
            7,
            3,
        ),
    ]
}

/// The fixed zoo plus the seeded random families, in a stable order.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    let fano = matrix_from_columns(&FANO_COLUMNS);
    let fano_minus = matrix_from_columns(&FANO_COLUMNS[..6]);
    let affine: Vec<[u32; 4]> = (0..8u32)
        .map(|x| [1, x & 1, (x >> 1) & 1, (x >> 2) & 1])
        .collect();
    let fixed: Vec<(&str, MatroidSpec)> = vec![
        ("U23", uniform(2, 3)),
        ("U24", uniform(2, 4)),
        ("U25", uniform(2, 5)),
        ("U36", uniform(3, 6)),
        ("U48", uniform(4, 8)),
        ("U510", uniform(5, 10)),
        ("F7", MatroidSpec::Linear { p: 2, matrix: fano.clone() }),
        ("F7-minus", MatroidSpec::Linear { p: 2, matrix: fano_minus }),
        ("NonFano", MatroidSpec::Linear { p: 3, matrix: fano }),
        ("AG32", MatroidSpec::Linear { p: 2, matrix: matrix_from_columns(&affine) }),
        (
            "K4",
            graph(4, &[[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]),
        ),
        ("W3", wheel(3)),
        ("W4", wheel(4)),
        ("K5", complete_graph(5)),
        (
            // two edge-disjoint Hamiltonian paths on six vertices
            "R5-graph",
            graph(
                6,
                &[[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [0, 2], [2, 4], [4, 1], [1, 3], [3, 5]],
            ),
        ),
        (
            // a path plus a star sharing the parallel edge 0-1
            "R5-multigraph",
            graph(
                6,
                &[[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [0, 1], [0, 2], [0, 3], [0, 4], [0, 5]],
            ),
        ),
    ];
    let mut entries: Vec<CatalogEntry> = fixed
        .into_iter()
        .map(|(name, spec)| CatalogEntry::new(name, spec).expect("built-in specs are valid"))
        .collect();
    for family in builtin_families() {
        entries.extend(generate_random(&family).expect("built-in families generate"));
    }
    entries
}
