use serde::{Deserialize, Serialize};

/// Concrete representation a [`Matroid`](super::Matroid) is built from.
///
/// Serialized with a `"type"` tag; together with a `"name"` field this is
/// the on-disk matroid file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MatroidSpec {
    /// U(r, n): every set of at most `r` elements is independent.
    Uniform { r: usize, n: usize },
    /// Cycle matroid of a multigraph; element `i` is `edges[i]`.
    Graphic {
        vertices: usize,
        edges: Vec<[usize; 2]>,
    },
    /// Column matroid of a matrix over GF(`p`); element `i` is column `i`.
    Linear { p: u32, matrix: Vec<Vec<u32>> },
    /// Matroid given by its list of bases.
    #[serde(rename = "bases")]
    ExplicitBases { n: usize, bases: Vec<Vec<usize>> },
}

impl MatroidSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            MatroidSpec::Uniform { .. } => "uniform",
            MatroidSpec::Graphic { .. } => "graphic",
            MatroidSpec::Linear { .. } => "linear",
            MatroidSpec::ExplicitBases { .. } => "bases",
        }
    }

    pub fn ground_size(&self) -> usize {
        match self {
            MatroidSpec::Uniform { n, .. } | MatroidSpec::ExplicitBases { n, .. } => *n,
            MatroidSpec::Graphic { edges, .. } => edges.len(),
            MatroidSpec::Linear { matrix, .. } => matrix.first().map_or(0, Vec::len),
        }
    }
}
