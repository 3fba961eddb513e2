use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::PrimePower;
use crate::counting::{csv_err, distribution, distribution_via_sylow, ratio, Budget};
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::words::Word;

use super::verify_canonicalization;

/// A group in the census, under the name it is reported by.
pub struct CensusGroup {
    pub spec: String,
    pub group: FiniteGroup,
    /// Overrides `p^m = exp(G)` for the canonicalization check.
    pub modulus: Option<PrimePower>,
}

impl CensusGroup {
    pub fn new(spec: impl Into<String>, group: FiniteGroup) -> Self {
        Self {
            spec: spec.into(),
            group,
            modulus: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CensusConfig {
    pub budget: Budget,
    /// Record the wall time of every row. Off by default so that two runs
    /// give identical reports.
    pub timings: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusRow {
    pub group: String,
    pub word: String,
    pub rank: usize,
    pub order: usize,
    /// `N(G, w = 1)`.
    pub count: Option<u128>,
    /// `|G|^n`.
    pub total: Option<u128>,
    pub probability: Option<String>,
    pub bound: String,
    /// `P(G, w = 1) >= 1/|G|`.
    pub pass: Option<bool>,
    /// Canonical form equivalent and its bound certified; empty when the
    /// group is outside class 2 or trivial.
    pub canonical: Option<bool>,
    /// Sylow route reproduced the direct distribution; empty for
    /// `p`-groups and non-nilpotent groups.
    pub sylow: Option<bool>,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

impl CensusRow {
    /// The pass flag recomputed from `count`, `total` and `order`.
    pub fn recompute_pass(&self) -> Option<bool> {
        Some(self.count? * self.order as u128 >= self.total?)
    }

    pub fn is_violation(&self) -> bool {
        [self.pass, self.canonical, self.sylow].contains(&Some(false))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub rows: usize,
    pub violations: usize,
    pub errors: usize,
    pub canonical_checked: usize,
    pub sylow_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusReport {
    pub summary: CensusSummary,
    pub rows: Vec<CensusRow>,
}

impl CensusReport {
    fn new(rows: Vec<CensusRow>) -> Self {
        let summary = CensusSummary {
            rows: rows.len(),
            violations: rows.iter().filter(|r| r.is_violation()).count(),
            errors: rows.iter().filter(|r| r.error.is_some()).count(),
            canonical_checked: rows.iter().filter(|r| r.canonical.is_some()).count(),
            sylow_checked: rows.iter().filter(|r| r.sylow.is_some()).count(),
        };
        Self { summary, rows }
    }

    pub fn violations(&self) -> impl Iterator<Item = &CensusRow> {
        self.rows.iter().filter(|r| r.is_violation())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).map_err(csv_err)?;
        }
        String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?)
            .map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let flag = |b: Option<bool>| match b {
            Some(true) => "ok",
            Some(false) => "FAIL",
            None => "-",
        };
        let mut out = String::new();
        for r in &self.rows {
            let _ = write!(out, "{:<20} {:<32} ", r.group, r.word);
            match &r.error {
                Some(e) => {
                    let _ = writeln!(out, "error: {e}");
                }
                None => {
                    let _ = writeln!(
                        out,
                        "N={} P={} bound={} {} canonical={} sylow={}",
                        r.count.unwrap_or(0),
                        r.probability.as_deref().unwrap_or("?"),
                        r.bound,
                        flag(r.pass),
                        flag(r.canonical),
                        flag(r.sylow),
                    );
                }
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} rows, {} violations, {} errors",
            s.rows, s.violations, s.errors
        );
        out
    }
}

/// Every word against every group. Rows run in parallel and come back in
/// input order, groups outermost.
pub fn run_census(groups: &[CensusGroup], words: &[Word], config: CensusConfig) -> CensusReport {
    let jobs: Vec<(&CensusGroup, &Word)> = groups
        .iter()
        .flat_map(|g| words.iter().map(move |w| (g, w)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(g, w)| {
            let start = Instant::now();
            let mut row = census_row(g, w, config.budget);
            if config.timings {
                row.runtime_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            row
        })
        .collect();
    CensusReport::new(rows)
}

fn census_row(cg: &CensusGroup, w: &Word, budget: Budget) -> CensusRow {
    let g = &cg.group;
    let mut row = CensusRow {
        group: cg.spec.clone(),
        word: w.to_string(),
        rank: w.rank(),
        order: g.order(),
        count: None,
        total: None,
        probability: None,
        bound: format!("1/{}", g.order()),
        pass: None,
        canonical: None,
        sylow: None,
        error: None,
        runtime_ms: None,
    };
    if let Err(e) = fill_row(&mut row, cg, w, budget) {
        row.error = Some(e.to_string());
    }
    row
}

fn fill_row(row: &mut CensusRow, cg: &CensusGroup, w: &Word, budget: Budget) -> Result<()> {
    let g = &cg.group;
    let d = distribution(g, w, budget)?;
    let (count, total) = (d.at(0), d.total());
    row.count = Some(count);
    row.total = Some(total);
    row.probability = Some(ratio(count, total).to_string());
    row.pass = row.recompute_pass();

    let Some(class) = g.nilpotency_class() else {
        return Ok(());
    };
    let prime_power = crate::arith::prime_power_base(g.order() as u64);
    if g.order() > 1 && prime_power.is_none() {
        row.sylow = Some(distribution_via_sylow(g, w, budget)? == d);
    }
    if class > 2 || g.order() == 1 {
        return Ok(());
    }
    let canonical = if prime_power.is_some() || cg.modulus.is_some() {
        let q = match cg.modulus {
            Some(q) => q,
            None => modulus_of(g)?,
        };
        verify_canonicalization(g, w, q, budget)?.passed
    } else {
        let mut all = true;
        for f in g.sylow_decomposition()? {
            all &= verify_canonicalization(&f.group, w, modulus_of(&f.group)?, budget)?.passed;
        }
        all
    };
    row.canonical = Some(canonical);
    Ok(())
}

fn modulus_of(g: &FiniteGroup) -> Result<PrimePower> {
    PrimePower::from_exponent(g.exponent())
        .ok_or_else(|| Error::Precondition(format!("exponent {} is not a prime power", g.exponent())))
}
