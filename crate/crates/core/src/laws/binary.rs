use crate::element_set::{k_subsets, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{Matroid, MatroidSpec};

use super::circuits::xor_instances;
use super::LawConfig;

/// Ground-set cap for the U(2,4)-minor search.
pub const U24_MINOR_CAP: usize = 10;

/// Whether some minor of `m` is isomorphic to U(2,4).
///
/// A U(2,4) minor contracts an independent set of size `r - 2`; the search
/// contracts every such set and counts the parallel classes of non-loops in
/// the resulting rank-2 matroid. Four classes give a U(2,4) restriction.
pub fn has_u24_minor(m: &Matroid) -> Result<bool> {
    m.check_cap(U24_MINOR_CAP)?;
    if m.rank() < 2 {
        return Ok(false);
    }
    for contracted in k_subsets(m.n(), m.rank() - 2) {
        if !m.is_independent(contracted) {
            continue;
        }
        let minor = m.minor(ElementSet::EMPTY, contracted)?;
        let mut classes: Vec<usize> = Vec::new();
        for x in minor.ground() {
            if !minor.is_independent(ElementSet::singleton(x)) {
                continue;
            }
            let parallel = classes
                .iter()
                .any(|&rep| !minor.is_independent(ElementSet::from([rep, x])));
            if !parallel {
                classes.push(x);
                if classes.len() >= 4 {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Binary status when it can be settled: graphic and GF(2) constructions
/// are binary; otherwise the U(2,4)-minor test decides up to
/// [`U24_MINOR_CAP`] elements.
pub fn binary_truth(m: &Matroid) -> Option<bool> {
    match m.spec() {
        Some(MatroidSpec::Graphic { .. }) | Some(MatroidSpec::Linear { p: 2, .. }) => Some(true),
        _ => has_u24_minor(m).ok().map(|minor| !minor),
    }
}

/// Checks, literally, that `C(y, B - b + x) = C(x, B) △ C(y, B)` whenever
/// `b ∈ C(x, B) ∩ C(y, B) ∩ B` for distinct `x, y ∉ B`.
pub fn decide_binary_by_xor(m: &Matroid, cfg: &LawConfig) -> Result<bool> {
    if m.n() > cfg.max_ground {
        return Err(Error::GroundSetTooLarge {
            n: m.n(),
            cap: cfg.max_ground,
        });
    }
    for inst in xor_instances(m)? {
        let basis = inst.basis;
        let cx = m.fundamental_circuit(basis, inst.x)?;
        let cy = m.fundamental_circuit(basis, inst.y)?;
        let after = m.fundamental_circuit(basis.without(inst.b).with(inst.x), inst.y)?;
        if after != cx.symmetric_difference(cy) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::MatroidSpec;

    fn uniform(r: usize, n: usize) -> Matroid {
        Matroid::new(MatroidSpec::Uniform { r, n }).unwrap()
    }

    #[test]
    fn u24_minor_examples() {
        assert!(has_u24_minor(&uniform(2, 4)).unwrap());
        assert!(has_u24_minor(&uniform(3, 6)).unwrap());
        assert!(!has_u24_minor(&uniform(2, 3)).unwrap());
        assert!(!has_u24_minor(&uniform(1, 5)).unwrap());
        assert!(!has_u24_minor(&uniform(4, 5)).unwrap());
        let k4 = Matroid::new(MatroidSpec::Graphic {
            vertices: 4,
            edges: vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
        })
        .unwrap();
        assert!(!has_u24_minor(&k4).unwrap());
        assert!(matches!(
            has_u24_minor(&uniform(2, 11)),
            Err(Error::GroundSetTooLarge { .. })
        ));
    }

    #[test]
    fn parallel_points_do_not_count_twice() {
        // rank 2 over GF(3): four columns but two are parallel, so only three points
        let m = Matroid::new(MatroidSpec::Linear {
            p: 3,
            matrix: vec![vec![1, 0, 1, 2], vec![0, 1, 1, 0]],
        })
        .unwrap();
        assert!(!has_u24_minor(&m).unwrap());
    }

    #[test]
    fn xor_decision() {
        let cfg = LawConfig::default();
        assert!(!decide_binary_by_xor(&uniform(2, 4), &cfg).unwrap());
        assert!(decide_binary_by_xor(&uniform(2, 3), &cfg).unwrap());
        let small = LawConfig {
            max_ground: 3,
            ..LawConfig::default()
        };
        assert!(decide_binary_by_xor(&uniform(2, 4), &small).is_err());
    }
}
