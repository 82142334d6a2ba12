//! Multilinear polynomials over binary variables.
//!
//! Monomials are sorted, duplicate-free index sets; `x * x` collapses to `x`
//! since variables take values in {0, 1}.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// Sorted variable indices of a product term. The empty set is the constant.
pub type Monomial = Vec<usize>;

/// Largest variable count for which dense value tables are built.
pub const MAX_TABLE_VARS: usize = 26;

#[derive(Debug, Clone, PartialEq)]
pub struct BinaryPolynomial<T> {
    terms: BTreeMap<Monomial, T>,
    num_vars: usize,
}

impl<T: Coefficient> BinaryPolynomial<T> {
    pub fn zero(num_vars: usize) -> Self {
        BinaryPolynomial { terms: BTreeMap::new(), num_vars }
    }

    pub fn constant(num_vars: usize, c: T) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(Vec::new(), c);
        p
    }

    /// `x_i`
    pub fn variable(num_vars: usize, i: usize) -> Self {
        let mut p = Self::zero(num_vars.max(i + 1));
        p.add_term(vec![i], T::one());
        p
    }

    /// `prod(vars)` with unit coefficient.
    pub fn from_monomial(num_vars: usize, vars: Monomial) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(vars, T::one());
        p
    }

    /// `1 - x_i`
    pub fn complement(num_vars: usize, i: usize) -> Self {
        let mut p = Self::constant(num_vars.max(i + 1), T::one());
        p.add_term(vec![i], T::zero() - T::one());
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &[usize]) -> T {
        self.terms.get(monomial).copied().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Adds `c * prod(vars)`. Indices are sorted and deduplicated.
    pub fn add_term(&mut self, mut vars: Monomial, c: T) {
        vars.sort_unstable();
        vars.dedup();
        if let Some(&top) = vars.last() {
            self.num_vars = self.num_vars.max(top + 1);
        }
        self.accumulate(vars, c);
    }

    fn accumulate(&mut self, vars: Monomial, c: T) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(vars) {
            Entry::Vacant(slot) => {
                if !c.is_negligible() {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                let sum = *slot.get() + c;
                if sum.is_negligible() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.num_vars = self.num_vars.max(other.num_vars);
        for (m, &c) in &other.terms {
            self.accumulate(m.clone(), c);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: T) {
        self.num_vars = self.num_vars.max(other.num_vars);
        for (m, &c) in &other.terms {
            self.accumulate(m.clone(), c * factor);
        }
    }

    pub fn scaled(&self, factor: T) -> Self {
        let mut out = Self::zero(self.num_vars);
        out.add_scaled(self, factor);
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.num_vars.max(other.num_vars));
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                out.accumulate(union_sorted(ma, mb), ca * cb);
            }
        }
        out
    }

    /// Sum of the coefficients of monomials whose variables are all 1.
    pub fn evaluate(&self, assignment: &[bool]) -> Result<T> {
        if assignment.len() != self.num_vars {
            return Err(Error::LengthMismatch { expected: self.num_vars, actual: assignment.len() });
        }
        Ok(self
            .terms
            .iter()
            .filter(|(m, _)| m.iter().all(|&v| assignment[v]))
            .fold(T::zero(), |acc, (_, &c)| acc + c))
    }

    /// Value at every assignment, indexed by mask (bit `i` = `x_i`).
    ///
    /// Computed with a subset-sum (zeta) transform in `O(n 2^n)`.
    pub fn value_table(&self) -> Result<Vec<T>> {
        let n = self.num_vars;
        if n > MAX_TABLE_VARS {
            return Err(Error::ExactBudgetExceeded { vars: n, limit: MAX_TABLE_VARS });
        }
        let mut table = vec![T::zero(); 1usize << n];
        for (m, &c) in &self.terms {
            let mask: usize = m.iter().map(|&v| 1usize << v).sum();
            table[mask] = table[mask] + c;
        }
        for bit in 0..n {
            let step = 1usize << bit;
            for mask in 0..table.len() {
                if mask & step != 0 {
                    table[mask] = table[mask] + table[mask ^ step];
                }
            }
        }
        Ok(table)
    }

    /// One line per term, ordered by degree then indices:
    /// `degree<TAB>i,j,k<TAB>coefficient` with 12 significant digits.
    /// The constant term lists its indices as `-`.
    pub fn to_text(&self) -> String {
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut out = String::new();
        for m in keys {
            let idx = if m.is_empty() {
                "-".to_string()
            } else {
                m.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            };
            let _ = writeln!(out, "{}\t{}\t{:.11e}", m.len(), idx, self.terms[m].as_f64());
        }
        out
    }
}

pub(crate) fn union_sorted(a: &[usize], b: &[usize]) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Bits of `mask` as an assignment vector of length `n`.
pub fn mask_to_bits(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

pub fn bits_to_mask(bits: &[bool]) -> u64 {
    bits.iter().enumerate().fold(0, |m, (i, &b)| m | (b as u64) << i)
}

/// Renders an assignment as `x0 x1 x2 ...` characters.
pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
