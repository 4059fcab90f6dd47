//! Both sides of `χ(KG(G, rK2)) = |E(G)| - ex(G, rK2)` for one graph, catalog
//! scans, and the JSON report format.

use std::collections::BTreeMap;
use std::fmt;
use std::io;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{greedy_ex_coloring, k_colorable, kneser_chromatic_number, ColoringError};
use crate::edge_coloring::is_snark;
use crate::extremal::{ex_exact, ExtremalCertificate};
use crate::graph::Graph;
use crate::graph6::{parse_graph6, write_graph6, Graph6Error};
use crate::kneser::build_matching_kneser;
use crate::matchings::matchings_pairwise_intersect;
use crate::EdgeIndexSet;

/// Environment variable capping scan concurrency.
pub const THREADS_VAR: &str = "MKG_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Counterexample,
    NotConnected,
    ROutOfScope,
    /// The coloring search ran out of budget before closing the gap.
    Undecided,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Counterexample => "counterexample",
            Verdict::NotConnected => "not-connected",
            Verdict::ROutOfScope => "r-out-of-scope",
            Verdict::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificates {
    /// Endpoints of the edges of the extremal set `F`.
    pub extremal_edges: Vec<(usize, usize)>,
    /// Color of each KG vertex, in matching enumeration order.
    pub coloring: Vec<usize>,
    /// Present only when KG is edgeless with at least one vertex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairwise_intersecting: Option<bool>,
}

/// `chromatic_number`, `ex_value` and `rhs` are `None` only when they were
/// not computed: budget exhaustion for the first, a half-order scan of an
/// odd-order graph for all three (reported with `r = 0`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub num_r_matchings: usize,
    pub kneser_vertices: usize,
    pub kneser_edges: usize,
    pub chromatic_number: Option<usize>,
    /// `[lower, upper]` when the search stopped undecided.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chromatic_bounds: Option<(usize, usize)>,
    pub ex_value: Option<usize>,
    pub rhs: Option<usize>,
    pub verdict: Verdict,
    pub is_snark: bool,
    pub certificates: Certificates,
}

impl ConjectureReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("matching size r must be at least 1")]
    ZeroR,
    #[error("graph has {0} edges; edge masks hold at most 128")]
    TooManyEdges(usize),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
}

/// How `r` is chosen per graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RPolicy {
    Fixed(usize),
    /// `r = n / 2`; graphs of odd order are reported out of scope.
    HalfOrder,
}

impl FromStr for RPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "half-order" {
            return Ok(RPolicy::HalfOrder);
        }
        s.parse()
            .map(RPolicy::Fixed)
            .map_err(|_| format!("expected a positive integer or `half-order`, got `{s}`"))
    }
}

impl fmt::Display for RPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RPolicy::Fixed(r) => write!(f, "{r}"),
            RPolicy::HalfOrder => f.write_str("half-order"),
        }
    }
}

fn endpoints(g: &Graph, set: EdgeIndexSet) -> Vec<(usize, usize)> {
    set.iter().map(|e| g.edge(e)).collect()
}

/// Computes both sides exactly and certifies them.
///
/// Verdicts are decided in this order: `not-connected`, `r-out-of-scope`
/// (r = 1), `undecided`, then `holds` or `counterexample`. Both sides are
/// still computed for the out-of-scope verdicts.
pub fn verify_conjecture(
    g: &Graph,
    r: usize,
    budget: u64,
) -> Result<ConjectureReport, VerifyError> {
    if r == 0 {
        return Err(VerifyError::ZeroR);
    }
    if !g.fits_edge_mask() {
        return Err(VerifyError::TooManyEdges(g.m()));
    }
    let graph6 = write_graph6(g)?;
    let kg = build_matching_kneser(g, r).expect("r and m checked");
    let ex = ex_exact(g, r).expect("r and m checked");
    let hint = greedy_ex_coloring(&kg, &ex).expect("exact certificate is valid");
    let rhs = g.m() - ex.value;

    let (chromatic_number, chromatic_bounds, coloring) =
        match kneser_chromatic_number(&kg, budget, Some(&hint)) {
            Ok(res) => (Some(res.chromatic_number), None, res.coloring),
            Err(ColoringError::BudgetExhausted {
                lower, upper, best, ..
            }) => (None, Some((lower, upper)), best),
            Err(other) => unreachable!("coloring a built KG: {other}"),
        };

    let verdict = if !g.is_connected() {
        Verdict::NotConnected
    } else if r < 2 {
        Verdict::ROutOfScope
    } else {
        match chromatic_number {
            None => Verdict::Undecided,
            Some(chi) if chi == rhs => Verdict::Holds,
            Some(_) => Verdict::Counterexample,
        }
    };
    let pairwise_intersecting = (kg.vertex_count() > 0 && kg.edge_count() == 0)
        .then(|| matchings_pairwise_intersect(kg.vertices()));

    Ok(ConjectureReport {
        graph6,
        n: g.n(),
        m: g.m(),
        r,
        num_r_matchings: kg.vertex_count(),
        kneser_vertices: kg.vertex_count(),
        kneser_edges: kg.edge_count(),
        chromatic_number,
        chromatic_bounds,
        ex_value: Some(ex.value),
        rhs: Some(rhs),
        verdict,
        is_snark: is_snark(g).is_snark,
        certificates: Certificates {
            extremal_edges: endpoints(g, ex.edges),
            coloring: coloring.colors().to_vec(),
            pairwise_intersecting,
        },
    })
}

/// [`verify_conjecture`] with `r` taken from `policy`.
pub fn verify_with_policy(
    g: &Graph,
    policy: RPolicy,
    budget: u64,
) -> Result<ConjectureReport, VerifyError> {
    match policy {
        RPolicy::Fixed(r) => verify_conjecture(g, r, budget),
        RPolicy::HalfOrder if g.n().is_multiple_of(2) && g.n() > 0 => {
            verify_conjecture(g, g.n() / 2, budget)
        }
        RPolicy::HalfOrder => Ok(ConjectureReport {
            graph6: write_graph6(g)?,
            n: g.n(),
            m: g.m(),
            r: 0,
            num_r_matchings: 0,
            kneser_vertices: 0,
            kneser_edges: 0,
            chromatic_number: None,
            chromatic_bounds: None,
            ex_value: None,
            rhs: None,
            verdict: Verdict::ROutOfScope,
            is_snark: g.fits_edge_mask() && is_snark(g).is_snark,
            certificates: Certificates::default(),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RevalidationError {
    #[error("graph6 field does not parse: {0}")]
    Graph6(#[from] Graph6Error),
    #[error("{0}")]
    Mismatch(String),
    #[error("exhaustive recoloring ran out of budget")]
    Budget,
}

fn mismatch(what: impl Into<String>) -> RevalidationError {
    RevalidationError::Mismatch(what.into())
}

/// Re-checks a report from its own fields, without the search code that
/// produced it: the KG is rebuilt, the extremal set is checked with blossom
/// matching, the coloring for properness, and the claimed chromatic number
/// by exhaustive plain backtracking with one color fewer.
pub fn revalidate(report: &ConjectureReport, budget: u64) -> Result<(), RevalidationError> {
    let g = parse_graph6(&report.graph6)?;
    if (g.n(), g.m()) != (report.n, report.m) {
        return Err(mismatch("order or size differs from graph6"));
    }
    if report.r == 0 {
        return if report.verdict == Verdict::ROutOfScope {
            Ok(())
        } else {
            Err(mismatch("r = 0 outside a skipped report"))
        };
    }
    let kg = build_matching_kneser(&g, report.r).map_err(|e| mismatch(e.to_string()))?;
    if (kg.vertex_count(), kg.edge_count()) != (report.kneser_vertices, report.kneser_edges)
        || report.num_r_matchings != kg.vertex_count()
    {
        return Err(mismatch("KG order or size differs"));
    }

    let mut f = EdgeIndexSet::EMPTY;
    for &(u, v) in &report.certificates.extremal_edges {
        let e = g
            .edge_index(u.min(v), u.max(v))
            .ok_or_else(|| mismatch(format!("extremal edge {u}-{v} is not an edge")))?;
        f.insert(e);
    }
    let cert = ExtremalCertificate {
        edges: f,
        value: report.certificates.extremal_edges.len(),
        r: report.r,
    };
    if !cert.validate(&g) || Some(cert.value) != report.ex_value {
        return Err(mismatch("extremal certificate fails"));
    }
    if report.rhs != Some(g.m() - cert.value) {
        return Err(mismatch("rhs is not m - ex_value"));
    }

    let colors = &report.certificates.coloring;
    let proper = colors.len() == kg.vertex_count()
        && kg
            .graph()
            .edges()
            .iter()
            .all(|&(a, b)| colors[a] != colors[b]);
    if !proper {
        return Err(mismatch("coloring is not proper"));
    }
    let mut distinct = colors.clone();
    distinct.sort_unstable();
    distinct.dedup();
    match (report.chromatic_number, report.chromatic_bounds) {
        (Some(chi), _) => {
            if distinct.len() != chi {
                return Err(mismatch("coloring does not use chromatic_number colors"));
            }
            if chi > 0 {
                match k_colorable(kg.graph(), chi - 1, budget) {
                    Some(None) => {}
                    Some(Some(_)) => return Err(mismatch("fewer colors suffice")),
                    None => return Err(RevalidationError::Budget),
                }
            }
        }
        (None, Some((_, upper))) => {
            if distinct.len() != upper {
                return Err(mismatch("coloring does not match the upper bound"));
            }
        }
        (None, None) => return Err(mismatch("chromatic number neither given nor bounded")),
    }

    let expected = if !g.is_connected() {
        Verdict::NotConnected
    } else if report.r < 2 {
        Verdict::ROutOfScope
    } else {
        match report.chromatic_number {
            None => Verdict::Undecided,
            Some(chi) if Some(chi) == report.rhs => Verdict::Holds,
            Some(_) => Verdict::Counterexample,
        }
    };
    if expected != report.verdict {
        return Err(mismatch(format!("verdict should be {expected}")));
    }
    let flag = (kg.vertex_count() > 0 && kg.edge_count() == 0)
        .then(|| matchings_pairwise_intersect(kg.vertices()));
    if flag != report.certificates.pairwise_intersecting {
        return Err(mismatch("pairwise-intersection flag differs"));
    }
    if report.is_snark != is_snark(&g).is_snark {
        return Err(mismatch("snark status differs"));
    }
    Ok(())
}

/// One line of scan output: a report, or the reason a line was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScanRecord {
    Report(Box<ConjectureReport>),
    /// `line` is 1-based.
    Error {
        line: usize,
        error: String,
    },
}

impl ScanRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub reports: usize,
    pub errors: usize,
    pub counterexamples: usize,
    pub undecided: usize,
}

/// `MKG_THREADS` if set to a positive integer, else the available
/// parallelism.
pub fn scan_threads() -> usize {
    std::env::var(THREADS_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&t: &usize| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn evaluate_line(line_no: usize, text: &str, policy: RPolicy, budget: u64) -> ScanRecord {
    let outcome = parse_graph6(text)
        .map_err(|e| e.to_string())
        .and_then(|g| verify_with_policy(&g, policy, budget).map_err(|e| e.to_string()));
    match outcome {
        Ok(report) => ScanRecord::Report(Box::new(report)),
        Err(error) => ScanRecord::Error {
            line: line_no,
            error,
        },
    }
}

/// Evaluates every non-blank line of a graph6 catalog on up to `threads`
/// workers and hands records to `sink` in input order.
pub fn scan_catalog<I, F>(
    lines: I,
    policy: RPolicy,
    budget: u64,
    threads: usize,
    mut sink: F,
) -> io::Result<ScanSummary>
where
    I: IntoIterator<Item = io::Result<String>>,
    I::IntoIter: Send,
    F: FnMut(&ScanRecord) -> io::Result<()>,
{
    let threads = threads.max(1);
    let (job_tx, job_rx) = crossbeam_channel::bounded::<(usize, usize, String)>(threads * 4);
    let (done_tx, done_rx) = crossbeam_channel::unbounded::<(usize, ScanRecord)>();
    let lines = lines.into_iter();

    std::thread::scope(|scope| {
        for _ in 0..threads {
            let jobs = job_rx.clone();
            let done = done_tx.clone();
            scope.spawn(move || {
                for (seq, line_no, text) in jobs {
                    let record = evaluate_line(line_no, &text, policy, budget);
                    if done.send((seq, record)).is_err() {
                        break;
                    }
                }
            });
        }
        drop(job_rx);
        drop(done_tx);

        let feeder = scope.spawn(move || -> io::Result<()> {
            let mut seq = 0;
            for (i, line) in lines.enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                if job_tx.send((seq, i + 1, line)).is_err() {
                    break;
                }
                seq += 1;
            }
            Ok(())
        });

        let mut summary = ScanSummary::default();
        let mut pending = BTreeMap::new();
        let mut next = 0;
        let mut sink_result = Ok(());
        'recv: for (seq, record) in done_rx.iter() {
            pending.insert(seq, record);
            while let Some(record) = pending.remove(&next) {
                match &record {
                    ScanRecord::Report(r) => {
                        summary.reports += 1;
                        match r.verdict {
                            Verdict::Counterexample => summary.counterexamples += 1,
                            Verdict::Undecided => summary.undecided += 1,
                            _ => {}
                        }
                    }
                    ScanRecord::Error { .. } => summary.errors += 1,
                }
                if let Err(e) = sink(&record) {
                    sink_result = Err(e);
                    break 'recv;
                }
                next += 1;
            }
        }
        drop(done_rx);
        feeder.join().expect("feeder thread panicked")?;
        sink_result.map(|()| summary)
    })
}
