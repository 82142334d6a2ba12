//! End-to-end compression: thin, plan, solve per segment, merge, report.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{scale_route, Polyline};
use crate::graph::{build_candidate_graph, is_valid_edge, plan_segments_with, DivisionKind, PlanOptions};
use crate::hobo::build_hobo;
use crate::qaoa::{QaoaConfig, QaoaOutcome};
use crate::rdp::{rdp_compression_stats, RdpStats};
use crate::solver::{solve, SolveMethod};

pub const SCHEMA_VERSION: u32 = 1;

/// Mean adjacent spacing that `--normalize` rescales routes to.
pub const DEFAULT_NORMALIZE_MEAN: f64 = 0.000653;

#[derive(Debug, Clone, PartialEq)]
pub struct CompressOptions {
    pub epsilon: f64,
    /// `None` solves every theoretical segment whole.
    pub qubit_budget: Option<usize>,
    pub split_theoretical: bool,
    /// Longest chord `j - i` considered while thinning.
    pub max_offset: Option<usize>,
    pub method: SolveMethod,
    /// Base configuration; segment `k` runs with `seed + k`.
    pub qaoa: QaoaConfig,
}

impl CompressOptions {
    pub fn new(epsilon: f64) -> Self {
        CompressOptions {
            epsilon,
            qubit_budget: Some(12),
            split_theoretical: true,
            max_offset: None,
            method: SolveMethod::Exact,
            qaoa: QaoaConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CategoryCounts {
    pub normal: usize,
    pub theoretical_div: usize,
    pub computational_div: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentReport {
    pub first: usize,
    pub last: usize,
    pub method: SolveMethod,
    pub variable_count: usize,
    pub fallback: bool,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressionReport {
    pub total_points: usize,
    pub selected_points: usize,
    pub dropped_points: usize,
    #[serde(flatten)]
    pub categories: CategoryCounts,
    pub ratio: f64,
    pub segments: Vec<SegmentReport>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Compression {
    pub kept_indices: Vec<usize>,
    pub report: CompressionReport,
    /// QAOA run of each segment, `None` where no simulation happened.
    pub qaoa_runs: Vec<Option<QaoaOutcome>>,
}

/// Runs the full proposed method on `route`.
pub fn compress_route(route: &Polyline<f64>, opts: &CompressOptions) -> Result<Compression> {
    let g = build_candidate_graph(route, opts.epsilon, opts.max_offset)?;
    let plan = plan_segments_with(
        &g,
        PlanOptions { qubit_budget: opts.qubit_budget, split_theoretical: opts.split_theoretical },
    )?;

    let mut kept = vec![0];
    let mut segments = Vec::new();
    let mut qaoa_runs = Vec::new();
    for (k, (first, last)) in plan.segments().into_iter().enumerate() {
        let sub = g.subgraph(first, last)?;
        let model = build_hobo::<f64>(&sub);
        let cfg = QaoaConfig { seed: opts.qaoa.seed.wrapping_add(k as u64), ..opts.qaoa.clone() };
        let result = solve(&model, opts.method, &cfg)?;
        kept.extend(result.selected_edges.iter().map(|e| e.to + first));
        segments.push(SegmentReport {
            first,
            last,
            method: result.method,
            variable_count: result.num_vars,
            fallback: result.fallback,
            cost: result.best_cost,
        });
        qaoa_runs.push(result.qaoa);
    }
    debug_assert!(kept.windows(2).all(|w| g.edge(w[0], w[1]).is_some()));
    debug_assert!(fidelity_holds(route, &kept, opts.epsilon));

    let mut categories = CategoryCounts::default();
    for &v in &kept {
        match plan.kind_of(v) {
            Some(DivisionKind::Theoretical) => categories.theoretical_div += 1,
            Some(DivisionKind::Computational) => categories.computational_div += 1,
            None => categories.normal += 1,
        }
    }
    let total = route.len();
    let selected = kept.len();
    Ok(Compression {
        kept_indices: kept,
        report: CompressionReport {
            total_points: total,
            selected_points: selected,
            dropped_points: total - selected,
            categories,
            ratio: selected as f64 / total as f64,
            segments,
        },
        qaoa_runs,
    })
}

/// True when `kept` runs from the first to the last point and every dropped
/// point lies within `epsilon` of the kept chord spanning it.
pub fn fidelity_holds(route: &Polyline<f64>, kept: &[usize], epsilon: f64) -> bool {
    let n = route.len();
    kept.first() == Some(&0)
        && kept.last() == Some(&(n - 1))
        && kept
            .windows(2)
            .all(|w| w[0] < w[1] && is_valid_edge(route, w[0], w[1], epsilon).unwrap_or(false))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub epsilon: f64,
    pub rdp: RdpStats,
    pub proposed: CompressionReport,
    /// Proposed selected count over RDP selected count.
    pub ratio: f64,
}

impl Comparison {
    /// Plain-text table with a column per method.
    pub fn to_table(&self) -> String {
        let total = self.rdp.total;
        let pct = |count: usize| format!("{} ({:.2}%)", count, 100.0 * count as f64 / total as f64);
        let c = &self.proposed.categories;
        let rows = [
            ("Total", total.to_string(), self.proposed.total_points.to_string()),
            ("Selected", pct(self.rdp.selected), pct(self.proposed.selected_points)),
            ("  Normal", "-".to_string(), pct(c.normal)),
            ("  Theor. Div.", "-".to_string(), pct(c.theoretical_div)),
            ("  Comp. Div.", "-".to_string(), pct(c.computational_div)),
            ("Dropped", pct(self.rdp.dropped), pct(self.proposed.dropped_points)),
        ];
        let mut out = String::new();
        let _ = writeln!(out, "epsilon = {}", self.epsilon);
        let _ = writeln!(out, "{:<14}  {:>18}  {:>18}", "", "RDP", "Proposed");
        for (label, rdp, proposed) in rows {
            let _ = writeln!(out, "{:<14}  {:>18}  {:>18}", label, rdp, proposed);
        }
        let _ = writeln!(out, "{:<14}  {:>18}  {:>18.4}", "Ratio", "", self.ratio);
        out
    }
}

pub fn compare_methods(route: &Polyline<f64>, opts: &CompressOptions) -> Result<Comparison> {
    let rdp = rdp_compression_stats(route, opts.epsilon)?;
    let proposed = compress_route(route, opts)?.report;
    Ok(Comparison {
        epsilon: opts.epsilon,
        ratio: proposed.selected_points as f64 / rdp.selected as f64,
        rdp,
        proposed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub epsilon: f64,
    pub rdp_selected: usize,
    pub proposed_selected: usize,
    /// `proposed_selected / rdp_selected`
    pub ratio: f64,
}

/// Compares both methods at every epsilon, ascending. `opts.epsilon` is
/// ignored. With `normalize_mean` set, the route is first rescaled so its
/// mean adjacent spacing equals that value.
pub fn epsilon_sweep(
    route: &Polyline<f64>,
    epsilons: &[f64],
    normalize_mean: Option<f64>,
    opts: &CompressOptions,
) -> Result<Vec<SweepRow>> {
    if epsilons.is_empty() {
        return Err(Error::EmptySweep);
    }
    let scaled;
    let route = match normalize_mean {
        Some(target) => {
            scaled = scale_route(route, target)?;
            &scaled
        }
        None => route,
    };
    let mut sorted = epsilons.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted
        .into_iter()
        .map(|epsilon| {
            let c = compare_methods(route, &CompressOptions { epsilon, ..opts.clone() })?;
            Ok(SweepRow {
                epsilon,
                rdp_selected: c.rdp.selected,
                proposed_selected: c.proposed.selected_points,
                ratio: c.ratio,
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("epsilon,rdp_selected,proposed_selected,ratio\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{:.6}", r.epsilon, r.rdp_selected, r.proposed_selected, r.ratio);
    }
    out
}
