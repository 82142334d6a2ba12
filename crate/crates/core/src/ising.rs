//! Diagonal Ising Hamiltonians obtained by `x_i -> (1 - Z_i) / 2`.
//!
//! Spin convention: bit 0 is the `Z = +1` eigenstate, bit 1 is `Z = -1`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poly::{union_sorted, BinaryPolynomial, Monomial, MAX_TABLE_VARS};
use crate::scalar::Coefficient;

#[derive(Debug, Clone, PartialEq)]
pub struct PauliZTerm<T> {
    /// Sorted qubit indices; empty for the identity.
    pub qubits: Vec<usize>,
    pub coefficient: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsingHamiltonian<T> {
    terms: BTreeMap<Monomial, T>,
    num_qubits: usize,
}

impl<T: Coefficient> IsingHamiltonian<T> {
    pub fn new(num_qubits: usize) -> Self {
        IsingHamiltonian { terms: BTreeMap::new(), num_qubits }
    }

    pub fn from_terms(num_qubits: usize, terms: impl IntoIterator<Item = PauliZTerm<T>>) -> Self {
        let mut h = Self::new(num_qubits);
        for t in terms {
            h.add_term(t.qubits, t.coefficient);
        }
        h
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = PauliZTerm<T>> + '_ {
        self.terms.iter().map(|(q, &c)| PauliZTerm { qubits: q.clone(), coefficient: c })
    }

    pub fn coefficient(&self, qubits: &[usize]) -> T {
        self.terms.get(qubits).copied().unwrap_or_else(T::zero)
    }

    pub fn add_term(&mut self, mut qubits: Vec<usize>, c: T) {
        qubits.sort_unstable();
        qubits.dedup();
        if let Some(&top) = qubits.last() {
            self.num_qubits = self.num_qubits.max(top + 1);
        }
        let entry = self.terms.entry(qubits).or_insert_with(T::zero);
        *entry = *entry + c;
    }

    /// Drops cancellation residue.
    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_negligible());
    }

    /// Term-wise sum.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.num_qubits = out.num_qubits.max(other.num_qubits);
        for (q, &c) in &other.terms {
            out.add_term(q.clone(), c);
        }
        out.prune();
        out
    }

    /// `sum_T c_T * prod_{q in T} z_q` with `z_q = +1` for bit 0, `-1` for bit 1.
    pub fn energy(&self, basis_state: &[bool]) -> Result<T> {
        if basis_state.len() != self.num_qubits {
            return Err(Error::LengthMismatch { expected: self.num_qubits, actual: basis_state.len() });
        }
        Ok(self.terms.iter().fold(T::zero(), |acc, (q, &c)| {
            let odd = q.iter().filter(|&&i| basis_state[i]).count() % 2 == 1;
            if odd {
                acc - c
            } else {
                acc + c
            }
        }))
    }

    /// Terms grouped by the number of qubits they act on.
    pub fn term_count_by_degree(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for q in self.terms.keys() {
            *counts.entry(q.len()).or_insert(0) += 1;
        }
        counts
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Same layout as [`BinaryPolynomial::to_text`], with qubit sets.
    pub fn to_text(&self) -> String {
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut out = String::new();
        for q in keys {
            let idx = if q.is_empty() {
                "-".to_string()
            } else {
                q.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            };
            let _ = writeln!(out, "{}\t{}\t{:.11e}", q.len(), idx, self.terms[q].as_f64());
        }
        out
    }

    /// Energy of every basis state, indexed by mask (bit `q` = qubit `q`).
    ///
    /// Uses a fast Walsh–Hadamard transform of the coefficient vector.
    pub fn diagonal(&self) -> Result<Vec<f64>> {
        let n = self.num_qubits;
        if n > MAX_TABLE_VARS {
            return Err(Error::ProblemTooLarge { qubits: n, limit: MAX_TABLE_VARS });
        }
        let mut a = vec![0.0f64; 1usize << n];
        for (q, c) in &self.terms {
            let mask: usize = q.iter().map(|&i| 1usize << i).sum();
            a[mask] += c.as_f64();
        }
        let mut h = 1;
        while h < a.len() {
            for block in (0..a.len()).step_by(2 * h) {
                for k in block..block + h {
                    let (u, v) = (a[k], a[k + h]);
                    a[k] = u + v;
                    a[k + h] = u - v;
                }
            }
            h *= 2;
        }
        Ok(a)
    }
}

/// Substitutes `x_i = (1 - Z_i) / 2` and expands.
///
/// A monomial over `S` becomes `2^-|S| * sum_{T subset S} (-1)^|T| Z_T`.
pub fn lower_to_ising<T: Coefficient>(p: &BinaryPolynomial<T>) -> IsingHamiltonian<T> {
    let mut h = IsingHamiltonian::new(p.num_vars());
    let half = T::half();
    for (m, &c) in p.terms() {
        let scale = (0..m.len()).fold(c, |acc, _| acc * half);
        let d = m.len();
        assert!(d < 64, "monomial degree {d} too large to expand");
        for subset in 0u64..(1u64 << d) {
            let qubits: Vec<usize> = (0..d).filter(|&k| subset >> k & 1 == 1).map(|k| m[k]).collect();
            let coeff = if qubits.len() % 2 == 1 { T::zero() - scale } else { scale };
            h.add_term(qubits, coeff);
        }
    }
    h.prune();
    h
}

/// Product of two Hamiltonians built from commuting Z strings.
pub fn multiply<T: Coefficient>(a: &IsingHamiltonian<T>, b: &IsingHamiltonian<T>) -> IsingHamiltonian<T> {
    let mut out = IsingHamiltonian::new(a.num_qubits.max(b.num_qubits));
    for (qa, &ca) in &a.terms {
        for (qb, &cb) in &b.terms {
            // Z_q Z_q = I, so the product acts on the symmetric difference.
            let union = union_sorted(qa, qb);
            let sym: Vec<usize> = union
                .into_iter()
                .filter(|q| qa.binary_search(q).is_ok() != qb.binary_search(q).is_ok())
                .collect();
            out.add_term(sym, ca * cb);
        }
    }
    out.prune();
    out
}

/// Start-to-`i` path count on a chain where each vertex reaches the next
/// two: `C_0 = C_1 = 1`, `C_i = C_{i-1} + C_{i-2}`.
pub fn fibonacci_path_count(i: usize) -> u128 {
    let (mut prev, mut cur) = (1u128, 1u128);
    for _ in 1..=i {
        let next = prev.saturating_add(cur);
        prev = cur;
        cur = next;
    }
    prev
}

/// Binet's closed form for [`fibonacci_path_count`].
pub fn fibonacci_closed_form(i: usize) -> f64 {
    let sqrt5 = 5f64.sqrt();
    let phi = (1.0 + sqrt5) / 2.0;
    let psi = (1.0 - sqrt5) / 2.0;
    let k = i as i32 + 1;
    (phi.powi(k) - psi.powi(k)) / sqrt5
}
