//! HOBO and QUBO objectives for minimum-weight route selection.
//!
//! The HOBO encoding gives vertex `i` a block of `ceil(log2 e_i)` variables
//! holding, least significant bit first, the code of the edge it leaves by.
//! An edge's cost term `h(i, j)` is the reachability of `i` times the code
//! indicator of `(i, j)`:
//!
//! ```text
//! h(0, j) = [code_0 == code(0, j)]
//! h(i, j) = (sum over (k, i) of h(k, i)) * [code_i == code(i, j)]
//! ```
//!
//! Codes with no matching edge are penalised by their indicator, weighted by
//! a constant larger than any feasible path cost.

use crate::error::{Error, Result};
use crate::graph::{qubo_variable_count, CandidateGraph, Edge};
use crate::poly::{mask_to_bits, BinaryPolynomial};
use crate::scalar::Coefficient;

/// Global index of the first variable of each vertex.
fn variable_offsets(g: &CandidateGraph) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(g.num_vertices() + 1);
    let mut acc = 0;
    for &b in g.bit_widths() {
        offsets.push(acc);
        acc += b as usize;
    }
    offsets.push(acc);
    offsets
}

fn indicator<T: Coefficient>(num_vars: usize, first_var: usize, bits: u32, code: usize) -> BinaryPolynomial<T> {
    let mut p = BinaryPolynomial::constant(num_vars, T::one());
    for b in 0..bits as usize {
        let factor = if code >> b & 1 == 1 {
            BinaryPolynomial::variable(num_vars, first_var + b)
        } else {
            BinaryPolynomial::complement(num_vars, first_var + b)
        };
        p = p.mul(&factor);
    }
    p
}

/// Polynomial that is 1 exactly when vertex `i`'s bits spell `code`.
pub fn code_indicator<T: Coefficient>(g: &CandidateGraph, i: usize, code: usize) -> Result<BinaryPolynomial<T>> {
    let n = g.num_vertices();
    if i >= n {
        return Err(Error::IndexOutOfRange { from: i, to: i, n });
    }
    let bits = g.bits(i);
    if code >= 1usize << bits {
        return Err(Error::CodeOutOfRange { vertex: i, code, bits });
    }
    let offsets = variable_offsets(g);
    Ok(indicator(offsets[n], offsets[i], bits, code))
}

/// `2 * (sum of edge weights) + 1`, above any feasible path cost.
pub fn default_penalty_weight(g: &CandidateGraph) -> f64 {
    2.0 * g.edges().map(|e| e.weight).sum::<f64>() + 1.0
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decoded {
    Path(Vec<Edge>),
    /// Vertex `vertex` on the walk holds `code`, which names no edge.
    Invalid { vertex: usize, code: usize },
}

impl Decoded {
    pub fn path(&self) -> Option<&[Edge]> {
        match self {
            Decoded::Path(p) => Some(p),
            Decoded::Invalid { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HoboModel<T> {
    pub objective: BinaryPolynomial<T>,
    /// Sum of unused-code indicators over all vertices.
    pub penalty: BinaryPolynomial<T>,
    pub penalty_weight: T,
    graph: CandidateGraph,
    offsets: Vec<usize>,
}

impl<T: Coefficient> HoboModel<T> {
    pub fn graph(&self) -> &CandidateGraph {
        &self.graph
    }

    pub fn num_vars(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Global variable index of bit `bit` of vertex `i`.
    pub fn var_of(&self, i: usize, bit: u32) -> Option<usize> {
        (bit < self.graph.bits(i)).then(|| self.offsets[i] + bit as usize)
    }

    /// `objective + W * penalty`, the function actually minimised.
    pub fn full_objective(&self) -> BinaryPolynomial<T> {
        let mut full = self.objective.clone();
        full.add_scaled(&self.penalty, self.penalty_weight);
        full
    }

    fn code_at(&self, i: usize, bit_of: impl Fn(usize) -> bool) -> usize {
        (0..self.graph.bits(i) as usize).fold(0, |c, b| c | (bit_of(self.offsets[i] + b) as usize) << b)
    }

    /// Walks from vertex 0 following each visited vertex's code.
    /// Bits of vertices off the walk are ignored.
    pub fn decode_assignment(&self, assignment: &[bool]) -> Result<Decoded> {
        if assignment.len() != self.num_vars() {
            return Err(Error::LengthMismatch { expected: self.num_vars(), actual: assignment.len() });
        }
        Ok(self.decode_with(|v| assignment[v]))
    }

    /// As [`decode_assignment`](Self::decode_assignment) with bit `v` of `mask` as `x_v`.
    pub fn decode_mask(&self, mask: u64) -> Decoded {
        self.decode_with(|v| mask >> v & 1 == 1)
    }

    fn decode_with(&self, bit_of: impl Fn(usize) -> bool) -> Decoded {
        let last = self.graph.num_vertices() - 1;
        let mut path = Vec::new();
        let mut v = 0;
        while v != last {
            let code = self.code_at(v, &bit_of);
            match self.graph.forward(v).get(code) {
                Some(e) => {
                    path.push(*e);
                    v = e.to;
                }
                None => return Decoded::Invalid { vertex: v, code },
            }
        }
        Decoded::Path(path)
    }

    /// Assignment selecting exactly `path` with every off-path vertex at code 0.
    pub fn encode_path(&self, path: &[Edge]) -> Option<Vec<bool>> {
        let mut bits = vec![false; self.num_vars()];
        for e in path {
            let code = self.graph.code(e.from, e.to)?;
            for b in 0..self.graph.bits(e.from) as usize {
                bits[self.offsets[e.from] + b] = code >> b & 1 == 1;
            }
        }
        Some(bits)
    }

    pub fn evaluate_full(&self, assignment: &[bool]) -> Result<T> {
        let obj = self.objective.evaluate(assignment)?;
        let pen = self.penalty.evaluate(assignment)?;
        Ok(obj + self.penalty_weight * pen)
    }

    pub fn evaluate_mask(&self, mask: u64) -> T {
        let bits = mask_to_bits(mask, self.num_vars());
        self.evaluate_full(&bits).expect("mask width matches model")
    }
}

pub fn build_hobo<T: Coefficient>(g: &CandidateGraph) -> HoboModel<T> {
    build_hobo_weighted(g, T::from_weight(default_penalty_weight(g)))
}

pub fn build_hobo_weighted<T: Coefficient>(g: &CandidateGraph, penalty_weight: T) -> HoboModel<T> {
    let n = g.num_vertices();
    let offsets = variable_offsets(g);
    let num_vars = offsets[n];

    // reach[v] accumulates sum of h(k, v) over incoming edges.
    let mut reach: Vec<BinaryPolynomial<T>> = vec![BinaryPolynomial::zero(num_vars); n];
    reach[0] = BinaryPolynomial::constant(num_vars, T::one());
    let mut objective = BinaryPolynomial::zero(num_vars);
    let mut penalty = BinaryPolynomial::zero(num_vars);

    for i in 0..n {
        let bits = g.bits(i);
        let out = g.forward(i);
        if out.is_empty() {
            continue;
        }
        for code in out.len()..(1usize << bits) {
            penalty.add_assign(&indicator(num_vars, offsets[i], bits, code));
        }
        let here = std::mem::replace(&mut reach[i], BinaryPolynomial::zero(num_vars));
        for (code, e) in out.iter().enumerate() {
            let h = here.mul(&indicator(num_vars, offsets[i], bits, code));
            objective.add_scaled(&h, T::from_weight(e.weight));
            reach[e.to].add_assign(&h);
        }
    }

    HoboModel { objective, penalty, penalty_weight, graph: g.clone(), offsets }
}

/// Default soft-constraint multiplier for [`build_qubo`]: `2 |E|`.
pub fn default_qubo_lambda(g: &CandidateGraph) -> f64 {
    2.0 * qubo_variable_count(g) as f64
}

/// One-hot-per-edge objective. Variable `k` is the `k`-th edge of
/// [`CandidateGraph::edges`] (ordered by source, then target).
///
/// ```text
/// sum y + l1 * sum_{interior j} (in(j) - out(j))^2
///       + l2 * ((out(0) - 1)^2 + (in(n-1) - 1)^2)
/// ```
pub fn build_qubo<T: Coefficient>(g: &CandidateGraph, lambda1: T, lambda2: T) -> BinaryPolynomial<T> {
    let m = g.num_edges();
    let n = g.num_vertices();
    let mut p = BinaryPolynomial::zero(m);
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, e) in g.edges().enumerate() {
        p.add_term(vec![k], T::from_weight(e.weight));
        incoming[e.to].push(k);
        outgoing[e.from].push(k);
    }

    let linear = |plus: &[usize], minus: &[usize], c: T| {
        let mut l = BinaryPolynomial::constant(m, c);
        for &k in plus {
            l.add_term(vec![k], T::one());
        }
        for &k in minus {
            l.add_term(vec![k], T::zero() - T::one());
        }
        l
    };

    for j in 1..n - 1 {
        let flow = linear(&incoming[j], &outgoing[j], T::zero());
        p.add_scaled(&flow.mul(&flow), lambda1);
    }
    let start = linear(&outgoing[0], &[], T::zero() - T::one());
    let end = linear(&incoming[n - 1], &[], T::zero() - T::one());
    p.add_scaled(&start.mul(&start), lambda2);
    p.add_scaled(&end.mul(&end), lambda2);
    p
}
