//! Census pipeline: classify every graph of a graph6 corpus against a set of
//! predicates, in parallel, with input order preserved and byte-identical
//! reports regardless of the worker count.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::Graph;
use crate::graph6::parse_graph6;
use crate::hom::{is_2_permutable, is_sub_2_permutable, HomError};
use crate::solver::{chi_i, chi_ip, exists_adjustable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Predicate {
    TwoPermutable,
    Sub2Permutable,
    TwoAdjustable,
    ChiI,
    ChiI1,
}

impl FromStr for Predicate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "2-permutable" => Ok(Predicate::TwoPermutable),
            "sub-2-permutable" => Ok(Predicate::Sub2Permutable),
            "2-adjustable" => Ok(Predicate::TwoAdjustable),
            "chi-i" => Ok(Predicate::ChiI),
            "chi-i1" => Ok(Predicate::ChiI1),
            other => Err(format!(
                "unknown predicate {other:?} (expected 2-permutable, sub-2-permutable, 2-adjustable, chi-i, or chi-i1)"
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub predicates: Vec<Predicate>,
    /// Worker threads; 0 picks the rayon default.
    pub jobs: usize,
}

/// Three-valued answer for sub-permutability: graphs of odd maximum degree
/// have no complete-minus-matching target at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sub2Answer {
    Yes,
    No,
    NoTarget,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusRecord {
    pub index: usize,
    pub graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_permutable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sub_2_permutable: Option<Sub2Answer>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_adjustable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_i1: Option<usize>,
    /// Wall-clock time spent on this record. Kept out of the serialized form
    /// so reports are byte-identical run to run and across worker counts.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Serialize, Default)]
#[serde(rename_all = "camelCase")]
pub struct CensusSummary {
    pub total: usize,
    pub malformed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_permutable: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sub_2_permutable: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_adjustable: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_i_counts: Option<BTreeMap<usize, usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_i1_counts: Option<BTreeMap<usize, usize>>,
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub records: Vec<CensusRecord>,
    pub summary: CensusSummary,
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    summary: &'a CensusSummary,
}

impl CensusReport {
    /// One JSON object per record, in input order, then one summary line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out.push_str(
            &serde_json::to_string(&SummaryLine {
                summary: &self.summary,
            })
            .expect("summary serializes"),
        );
        out.push('\n');
        out
    }

    pub fn total_elapsed(&self) -> Duration {
        self.records.iter().map(|r| r.elapsed).sum()
    }
}

fn classify(index: usize, line: &str, predicates: &[Predicate]) -> CensusRecord {
    let start = Instant::now();
    let mut rec = CensusRecord {
        index,
        graph6: line.to_string(),
        error: None,
        n: None,
        m: None,
        regular: None,
        two_permutable: None,
        sub_2_permutable: None,
        two_adjustable: None,
        chi_i: None,
        chi_i1: None,
        elapsed: Duration::ZERO,
    };
    let g: Graph = match parse_graph6(line) {
        Ok(g) => g,
        Err(e) => {
            rec.error = Some(e.to_string());
            rec.elapsed = start.elapsed();
            return rec;
        }
    };
    rec.n = Some(g.n());
    rec.m = Some(g.m());
    rec.regular = Some(g.regular_degree().is_some());
    for &p in predicates {
        match p {
            Predicate::TwoPermutable => {
                // Ineligible graphs (irregular, odd-regular, disconnected)
                // are simply not 2-permutable.
                rec.two_permutable = Some(matches!(is_2_permutable(&g), Ok(Some(_))));
            }
            Predicate::Sub2Permutable => {
                rec.sub_2_permutable = Some(match is_sub_2_permutable(&g) {
                    Ok(Some(_)) => Sub2Answer::Yes,
                    Ok(None) => Sub2Answer::No,
                    Err(HomError::NoTarget { .. }) => Sub2Answer::NoTarget,
                    Err(e) => {
                        rec.error = Some(format!("sub-2-permutable: {e}"));
                        Sub2Answer::No
                    }
                });
            }
            Predicate::TwoAdjustable => {
                rec.two_adjustable = Some(exists_adjustable(&g).is_some());
            }
            Predicate::ChiI => match chi_i(&g, None) {
                Ok(r) => rec.chi_i = Some(r.optimum),
                Err(e) => rec.error = Some(format!("chi-i: {e}")),
            },
            Predicate::ChiI1 => match chi_ip(&g, 1, None) {
                Ok(r) => rec.chi_i1 = Some(r.optimum),
                Err(e) => rec.error = Some(format!("chi-i1: {e}")),
            },
        }
    }
    rec.elapsed = start.elapsed();
    rec
}

/// Run the census over a graph6 stream, one graph per line. Blank lines are
/// skipped; malformed lines become error records and do not abort the run.
/// Records come back in input order whatever the parallelism.
pub fn census(input: &str, options: &CensusOptions) -> CensusReport {
    let lines: Vec<(usize, &str)> = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .expect("thread pool construction");
    let records: Vec<CensusRecord> = pool.install(|| {
        lines
            .par_iter()
            .map(|&(index, line)| classify(index, line, &options.predicates))
            .collect()
    });

    let mut summary = CensusSummary {
        total: records.len(),
        malformed: records.iter().filter(|r| r.n.is_none()).count(),
        ..CensusSummary::default()
    };
    for &p in &options.predicates {
        match p {
            Predicate::TwoPermutable => {
                summary.two_permutable = Some(
                    records
                        .iter()
                        .filter(|r| r.two_permutable == Some(true))
                        .count(),
                );
            }
            Predicate::Sub2Permutable => {
                summary.sub_2_permutable = Some(
                    records
                        .iter()
                        .filter(|r| r.sub_2_permutable == Some(Sub2Answer::Yes))
                        .count(),
                );
            }
            Predicate::TwoAdjustable => {
                summary.two_adjustable = Some(
                    records
                        .iter()
                        .filter(|r| r.two_adjustable == Some(true))
                        .count(),
                );
            }
            Predicate::ChiI => {
                let mut counts = BTreeMap::new();
                for r in &records {
                    if let Some(v) = r.chi_i {
                        *counts.entry(v).or_insert(0) += 1;
                    }
                }
                summary.chi_i_counts = Some(counts);
            }
            Predicate::ChiI1 => {
                let mut counts = BTreeMap::new();
                for r in &records {
                    if let Some(v) = r.chi_i1 {
                        *counts.entry(v).or_insert(0) += 1;
                    }
                }
                summary.chi_i1_counts = Some(counts);
            }
        }
    }
    CensusReport { records, summary }
}
