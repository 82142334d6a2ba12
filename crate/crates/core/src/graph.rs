//! Candidate-edge DAG over route vertices.
//!
//! Every forward chord `(i, j)` whose interior points all lie within
//! `epsilon` of the chord survives thinning. Edges leaving a vertex are
//! numbered by ascending target, and that number is the vertex's edge code.

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{perpendicular_distance, Polyline, Segment};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
}

impl Edge {
    pub fn unit(from: usize, to: usize) -> Self {
        Edge { from, to, weight: 1.0 }
    }
}

/// `ceil(log2(count))`, zero for `count <= 1`.
pub fn code_width(count: usize) -> u32 {
    if count <= 1 {
        0
    } else {
        usize::BITS - (count - 1).leading_zeros()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateGraph {
    n: usize,
    /// `forward[i]` sorted by target.
    forward: Vec<Vec<Edge>>,
    bits: Vec<u32>,
}

impl CandidateGraph {
    /// Builds a graph from an explicit edge set.
    ///
    /// Edges must point forward, carry positive finite weights, and every
    /// vertex except the last needs at least one outgoing edge.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if n < 2 {
            return Err(Error::RouteTooShort(n));
        }
        let mut forward = vec![Vec::new(); n];
        for e in edges {
            if e.from >= n || e.to >= n {
                return Err(Error::IndexOutOfRange { from: e.from, to: e.to, n });
            }
            if e.from >= e.to {
                return Err(Error::InvalidEdge { from: e.from, to: e.to, reason: "not forward" });
            }
            if !(e.weight > 0.0 && e.weight.is_finite()) {
                return Err(Error::InvalidEdge {
                    from: e.from,
                    to: e.to,
                    reason: "weight must be positive",
                });
            }
            forward[e.from].push(e);
        }
        for (i, out) in forward.iter_mut().enumerate() {
            out.sort_by_key(|e| e.to);
            if out.windows(2).any(|w| w[0].to == w[1].to) {
                return Err(Error::InvalidEdge { from: i, to: out[0].to, reason: "duplicate" });
            }
            if out.is_empty() && i + 1 < n {
                return Err(Error::Disconnected(i));
            }
        }
        let bits = forward.iter().map(|out| code_width(out.len())).collect();
        Ok(CandidateGraph { n, forward, bits })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn forward(&self, i: usize) -> &[Edge] {
        &self.forward[i]
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.forward[i].len()
    }

    pub fn bits(&self, i: usize) -> u32 {
        self.bits[i]
    }

    pub fn bit_widths(&self) -> &[u32] {
        &self.bits
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.forward.iter().flatten()
    }

    pub fn num_edges(&self) -> usize {
        self.forward.iter().map(Vec::len).sum()
    }

    /// Code of edge `(i, j)` within `forward[i]`.
    pub fn code(&self, i: usize, j: usize) -> Option<usize> {
        self.forward.get(i)?.binary_search_by_key(&j, |e| e.to).ok()
    }

    pub fn edge(&self, i: usize, j: usize) -> Option<&Edge> {
        self.code(i, j).map(|c| &self.forward[i][c])
    }

    /// Edges with both ends in `first..=last`, relabelled to start at zero.
    pub fn subgraph(&self, first: usize, last: usize) -> Result<CandidateGraph> {
        if first >= last || last >= self.n {
            return Err(Error::IndexOutOfRange { from: first, to: last, n: self.n });
        }
        let edges = (first..last).flat_map(|i| {
            self.forward[i]
                .iter()
                .filter(move |e| e.to <= last)
                .map(move |e| Edge { from: e.from - first, to: e.to - first, weight: e.weight })
        });
        CandidateGraph::from_edges(last - first + 1, edges)
    }

    /// Number of distinct start-to-end paths, saturating at `u128::MAX`.
    pub fn count_paths(&self) -> u128 {
        let mut ways = vec![0u128; self.n];
        ways[0] = 1;
        for i in 0..self.n {
            let w = ways[i];
            for e in &self.forward[i] {
                ways[e.to] = ways[e.to].saturating_add(w);
            }
        }
        ways[self.n - 1]
    }
}

/// True iff every point strictly between `i` and `j` lies within `epsilon`
/// of the chord `(points[i], points[j])`.
pub fn is_valid_edge<T: Float>(route: &Polyline<T>, i: usize, j: usize, epsilon: T) -> Result<bool> {
    let n = route.len();
    if i >= j || j >= n {
        return Err(Error::IndexOutOfRange { from: i, to: j, n });
    }
    let chord = Segment::new(route.points[i], route.points[j]);
    Ok(route.points[i + 1..j]
        .iter()
        .all(|p| perpendicular_distance(p, &chord) <= epsilon))
}

/// Thins the complete forward DAG of `route` down to valid chords.
///
/// `max_offset` caps `j - i`; adjacent edges are always present.
pub fn build_candidate_graph<T: Float>(
    route: &Polyline<T>,
    epsilon: T,
    max_offset: Option<usize>,
) -> Result<CandidateGraph> {
    let n = route.len();
    if n < 2 {
        return Err(Error::RouteTooShort(n));
    }
    if epsilon < T::zero() || epsilon.is_nan() {
        return Err(Error::NegativeThreshold(epsilon.to_f64().unwrap_or(f64::NAN)));
    }
    route.check_finite()?;
    let cap = max_offset.unwrap_or(usize::MAX).max(1);
    let mut edges = Vec::new();
    for i in 0..n - 1 {
        let reach = (n - 1).min(i.saturating_add(cap));
        for j in i + 1..=reach {
            if j == i + 1 || is_valid_edge(route, i, j, epsilon)? {
                edges.push(Edge::unit(i, j));
            }
        }
    }
    CandidateGraph::from_edges(n, edges)
}

/// Binary variables needed by the dense edge-code encoding.
pub fn hobo_variable_count(g: &CandidateGraph) -> usize {
    g.bits.iter().map(|&b| b as usize).sum()
}

/// Binary variables needed by the one-variable-per-edge encoding.
pub fn qubo_variable_count(g: &CandidateGraph) -> usize {
    g.num_edges()
}

/// Interior vertices that no edge jumps over; every path passes them.
pub fn find_theoretical_division_points(g: &CandidateGraph) -> Vec<usize> {
    let mut reach = 0usize;
    let mut points = Vec::new();
    for v in 0..g.n {
        if v > 0 && v + 1 < g.n && reach <= v {
            points.push(v);
        }
        if let Some(last) = g.forward[v].last() {
            reach = reach.max(last.to);
        }
    }
    points
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisionKind {
    Theoretical,
    Computational,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SegmentPlan {
    /// Interior cut vertices, strictly increasing.
    pub boundaries: Vec<usize>,
    pub kinds: Vec<DivisionKind>,
    /// Vertex count of the planned graph; `0` and `n - 1` are implicit ends.
    pub n: usize,
}

impl SegmentPlan {
    /// Inclusive `(first, last)` vertex ranges of the segments.
    pub fn segments(&self) -> Vec<(usize, usize)> {
        let mut ends = Vec::with_capacity(self.boundaries.len() + 2);
        ends.push(0);
        ends.extend(&self.boundaries);
        ends.push(self.n - 1);
        ends.windows(2).map(|w| (w[0], w[1])).collect()
    }

    pub fn kind_of(&self, v: usize) -> Option<DivisionKind> {
        self.boundaries.binary_search(&v).ok().map(|k| self.kinds[k])
    }
}

/// Variables the segment `first..=last` needs once edges leaving it are cut.
pub fn segment_variable_count(g: &CandidateGraph, first: usize, last: usize) -> usize {
    (first..last)
        .map(|i| {
            let inside = g.forward[i].partition_point(|e| e.to <= last);
            code_width(inside) as usize
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanOptions {
    /// Maximum variables per segment; `None` disables computational cuts.
    pub qubit_budget: Option<usize>,
    /// Cut at theoretical division points.
    pub split_theoretical: bool,
}

impl Default for PlanOptions {
    fn default() -> Self {
        PlanOptions { qubit_budget: Some(12), split_theoretical: true }
    }
}

/// Cuts at every theoretical division point, then greedily adds
/// computational cuts at the farthest vertex that keeps each piece within
/// `qubit_budget` variables.
pub fn plan_segments(g: &CandidateGraph, qubit_budget: usize) -> Result<SegmentPlan> {
    plan_segments_with(g, PlanOptions { qubit_budget: Some(qubit_budget), split_theoretical: true })
}

pub fn plan_segments_with(g: &CandidateGraph, opts: PlanOptions) -> Result<SegmentPlan> {
    if let Some(budget) = opts.qubit_budget {
        if budget == 0 {
            return Err(Error::ZeroBudget);
        }
        if let Some((vertex, &bits)) = g.bits.iter().enumerate().find(|(_, &b)| b as usize > budget) {
            return Err(Error::BudgetTooSmall { vertex, bits, budget });
        }
    }

    let theoretical = if opts.split_theoretical {
        find_theoretical_division_points(g)
    } else {
        Vec::new()
    };
    let mut coarse = vec![0];
    coarse.extend(&theoretical);
    coarse.push(g.n - 1);

    let mut plan = SegmentPlan { n: g.n, ..Default::default() };
    for (k, w) in coarse.windows(2).enumerate() {
        if k > 0 {
            plan.boundaries.push(w[0]);
            plan.kinds.push(DivisionKind::Theoretical);
        }
        let Some(budget) = opts.qubit_budget else { continue };
        let (mut start, end) = (w[0], w[1]);
        while segment_variable_count(g, start, end) > budget {
            // count(start, start + 1) == 0, so the scan always advances.
            let mut cut = start + 1;
            while cut + 1 < end && segment_variable_count(g, start, cut + 1) <= budget {
                cut += 1;
            }
            plan.boundaries.push(cut);
            plan.kinds.push(DivisionKind::Computational);
            start = cut;
        }
    }
    Ok(plan)
}
