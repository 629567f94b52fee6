//! Shortest full serial exchanges over every disjoint pair of a catalog.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::catalog::{disjoint_basis_pairs, CatalogEntry};
use crate::error::{Error, Result};
use crate::exchange::find_full_exchange;
use crate::laws::LawConfig;

/// Length budget for a full exchange, possibly in terms of the rank `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxLen {
    Fixed(usize),
    /// `r + k`
    RankPlus(usize),
    /// `k * r`
    RankTimes(usize),
}

impl MaxLen {
    pub fn for_rank(self, r: usize) -> usize {
        match self {
            MaxLen::Fixed(l) => l,
            MaxLen::RankPlus(k) => r + k,
            MaxLen::RankTimes(k) => k * r,
        }
    }
}

impl Default for MaxLen {
    fn default() -> Self {
        MaxLen::RankPlus(1)
    }
}

impl FromStr for MaxLen {
    type Err = Error;

    /// `6`, `r`, `r+2`, `2r`
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidSpec(format!("bad length budget `{s}` (use N, r, r+K or Kr)"));
        if let Ok(l) = t.parse() {
            return Ok(MaxLen::Fixed(l));
        }
        if t == "r" {
            return Ok(MaxLen::RankPlus(0));
        }
        if let Some(k) = t.strip_prefix("r+") {
            return k.parse().map(MaxLen::RankPlus).map_err(|_| bad());
        }
        if let Some(k) = t.strip_suffix('r') {
            return k.parse().map(MaxLen::RankTimes).map_err(|_| bad());
        }
        Err(bad())
    }
}

impl fmt::Display for MaxLen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxLen::Fixed(l) => write!(f, "{l}"),
            MaxLen::RankPlus(0) => f.write_str("r"),
            MaxLen::RankPlus(k) => write!(f, "r+{k}"),
            MaxLen::RankTimes(k) => write!(f, "{k}r"),
        }
    }
}

/// One disjoint pair and the shortest full exchange found for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub matroid: String,
    pub rank: usize,
    pub pair: String,
    pub budget: usize,
    /// `None` when no full exchange fits the budget.
    pub min_length: Option<usize>,
    pub steps: String,
}

impl SweepRow {
    pub fn found(&self) -> bool {
        self.min_length.is_some()
    }
}

/// Sweeps every entry within `cfg.max_ground`, one row per disjoint pair, in
/// catalog and pair order.
pub fn sweep_catalog(entries: &[CatalogEntry], max_len: MaxLen, cfg: &LawConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for entry in entries {
        let m = entry.matroid()?;
        if m.n() > cfg.max_ground {
            continue;
        }
        let budget = max_len.for_rank(m.rank());
        let pairs = disjoint_basis_pairs(&m, cfg.pair_cap, cfg.seed)?;
        let found: Vec<SweepRow> = pairs
            .par_iter()
            .map(|pair| {
                let seq = find_full_exchange(pair, budget);
                SweepRow {
                    matroid: entry.name.clone(),
                    rank: m.rank(),
                    pair: format!("{}|{}", pair.a(), pair.b()),
                    budget,
                    min_length: seq.as_ref().map(|s| s.len()),
                    steps: match &seq {
                        Some(s) => s.steps().iter().map(|st| st.to_string()).collect::<Vec<_>>().join(" "),
                        None => format!("not found <= {budget}"),
                    },
                }
            })
            .collect();
        rows.extend(found);
    }
    Ok(rows)
}

/// Per rank: (pairs, largest minimal length, pairs not found).
pub fn rank_summary(rows: &[SweepRow]) -> BTreeMap<usize, (usize, usize, usize)> {
    let mut out: BTreeMap<usize, (usize, usize, usize)> = BTreeMap::new();
    for row in rows {
        let e = out.entry(row.rank).or_default();
        e.0 += 1;
        match row.min_length {
            Some(l) => e.1 = e.1.max(l),
            None => e.2 += 1,
        }
    }
    out
}

pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["matroid", "rank", "pair", "budget", "min_length", "steps"])
        .expect("in-memory csv");
    for r in rows {
        let min = r.min_length.map(|l| l.to_string()).unwrap_or_default();
        w.write_record([
            r.matroid.as_str(),
            &r.rank.to_string(),
            &r.pair,
            &r.budget.to_string(),
            &min,
            &r.steps,
        ])
        .expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 fields")
}

pub fn summary_to_csv(summary: &BTreeMap<usize, (usize, usize, usize)>) -> String {
    let mut out = String::from("rank,pairs,max_min_length,not_found\n");
    for (rank, (pairs, max, missing)) in summary {
        out.push_str(&format!("{rank},{pairs},{max},{missing}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::MatroidSpec;

    #[test]
    fn parse_budgets() {
        assert_eq!("6".parse::<MaxLen>().unwrap(), MaxLen::Fixed(6));
        assert_eq!("r".parse::<MaxLen>().unwrap(), MaxLen::RankPlus(0));
        assert_eq!("r+1".parse::<MaxLen>().unwrap(), MaxLen::RankPlus(1));
        assert_eq!("2r".parse::<MaxLen>().unwrap(), MaxLen::RankTimes(2));
        assert!("r-1".parse::<MaxLen>().is_err());
        assert_eq!(MaxLen::RankPlus(1).for_rank(5), 6);
        assert_eq!(MaxLen::RankTimes(2).to_string(), "2r");
    }

    #[test]
    fn uniform_sweep() {
        let entry = CatalogEntry::new("U24", MatroidSpec::Uniform { r: 2, n: 4 }).unwrap();
        let rows = sweep_catalog(std::slice::from_ref(&entry), MaxLen::default(), &LawConfig::default()).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.min_length == Some(2)));
        assert_eq!(rows[0].pair, "{0,1}|{2,3}");
        assert_eq!(rows[0].steps, "0<->2 1<->3");
        assert_eq!(rank_summary(&rows)[&2], (3, 2, 0));

        let short = sweep_catalog(&[entry], MaxLen::Fixed(1), &LawConfig::default()).unwrap();
        assert!(short.iter().all(|r| !r.found() && r.steps == "not found <= 1"));
        assert!(rows_to_csv(&short).contains("U24,2,\"{0,1}|{2,3}\",1,,not found <= 1"));
    }
}
