//! Minimisers for [`HoboModel`]s: exhaustive enumeration and QAOA sampling.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::hobo::{Decoded, HoboModel};
use crate::ising::lower_to_ising;
use crate::poly::mask_to_bits;
use crate::qaoa::{run_qaoa, QaoaConfig, QaoaOutcome};
use crate::scalar::Coefficient;

/// Largest model the exhaustive solver accepts.
pub const EXACT_MAX_VARS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    Exact,
    Qaoa,
}

impl std::fmt::Display for SolveMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolveMethod::Exact => f.write_str("exact"),
            SolveMethod::Qaoa => f.write_str("qaoa"),
        }
    }
}

impl std::str::FromStr for SolveMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SolveMethod::Exact),
            "qaoa" => Ok(SolveMethod::Qaoa),
            other => Err(Error::Parse(format!("unknown method '{other}' (expected exact or qaoa)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub method: SolveMethod,
    pub num_vars: usize,
    pub best_assignment: Vec<bool>,
    /// Sum of the weights of `selected_edges`.
    pub best_cost: f64,
    pub selected_edges: Vec<Edge>,
    /// Every minimiser of the full objective, as masks (bit `i` = `x_i`),
    /// ascending in assignment order. Empty for QAOA solves.
    pub optimal_masks: Vec<u64>,
    /// QAOA produced no decodable sample and the exact solver stood in.
    pub fallback: bool,
    pub qaoa: Option<QaoaOutcome>,
}

impl SolveResult {
    pub fn optimal_assignments(&self) -> impl Iterator<Item = Vec<bool>> + '_ {
        self.optimal_masks.iter().map(|&m| mask_to_bits(m, self.num_vars))
    }

    /// Vertices visited by the selected path, in order.
    pub fn path_vertices(&self) -> Vec<usize> {
        let mut v = vec![0];
        v.extend(self.selected_edges.iter().map(|e| e.to));
        v
    }
}

/// Key that orders masks like their assignment vectors `(x0, x1, ...)`.
fn lexicographic_key(mask: u64, n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        mask.reverse_bits() >> (64 - n)
    }
}

fn path_cost(path: &[Edge]) -> f64 {
    path.iter().map(|e| e.weight).sum()
}

/// Enumerates every assignment and returns the lexicographically smallest
/// decodable minimiser of `objective + W * penalty`.
pub fn solve_exact<T: Coefficient>(m: &HoboModel<T>) -> Result<SolveResult> {
    let n = m.num_vars();
    if n > EXACT_MAX_VARS {
        return Err(Error::ExactBudgetExceeded { vars: n, limit: EXACT_MAX_VARS });
    }
    let table = m.full_objective().value_table()?;
    let min = table
        .iter()
        .copied()
        .reduce(|a, b| if b < a { b } else { a })
        .expect("table has at least one entry");
    let mut optimal: Vec<u64> = table
        .iter()
        .enumerate()
        .filter(|(_, &v)| T::near(v, min))
        .map(|(mask, _)| mask as u64)
        .collect();
    optimal.sort_by_key(|&mask| lexicographic_key(mask, n));

    let (best_mask, path) = optimal
        .iter()
        .find_map(|&mask| match m.decode_mask(mask) {
            Decoded::Path(p) => Some((mask, p)),
            Decoded::Invalid { .. } => None,
        })
        .ok_or(Error::InvalidConfig("penalty weight too small: no optimum decodes to a path"))?;

    Ok(SolveResult {
        method: SolveMethod::Exact,
        num_vars: n,
        best_assignment: mask_to_bits(best_mask, n),
        best_cost: path_cost(&path),
        selected_edges: path,
        optimal_masks: optimal,
        fallback: false,
        qaoa: None,
    })
}

/// Runs QAOA on the lowered model and keeps the cheapest decodable sample.
/// Falls back to [`solve_exact`] when no sample decodes.
pub fn solve_qaoa(m: &HoboModel<f64>, cfg: &QaoaConfig) -> Result<SolveResult> {
    let n = m.num_vars();
    if n == 0 {
        return solve_exact(m);
    }
    if n > cfg.max_qubits {
        return Err(Error::ProblemTooLarge { qubits: n, limit: cfg.max_qubits });
    }
    let h = lower_to_ising(&m.full_objective());
    let outcome = run_qaoa(&h, cfg)?;

    let best = outcome
        .samples
        .keys()
        .filter_map(|&mask| match m.decode_mask(mask) {
            Decoded::Path(p) => Some((path_cost(&p), lexicographic_key(mask, n), mask, p)),
            Decoded::Invalid { .. } => None,
        })
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    match best {
        Some((cost, _, mask, path)) => Ok(SolveResult {
            method: SolveMethod::Qaoa,
            num_vars: n,
            best_assignment: mask_to_bits(mask, n),
            best_cost: cost,
            selected_edges: path,
            optimal_masks: Vec::new(),
            fallback: false,
            qaoa: Some(outcome),
        }),
        None => {
            let mut exact = solve_exact(m)?;
            exact.method = SolveMethod::Qaoa;
            exact.fallback = true;
            exact.qaoa = Some(outcome);
            Ok(exact)
        }
    }
}

pub fn solve(m: &HoboModel<f64>, method: SolveMethod, cfg: &QaoaConfig) -> Result<SolveResult> {
    match method {
        SolveMethod::Exact => solve_exact(m),
        SolveMethod::Qaoa => solve_qaoa(m, cfg),
    }
}
