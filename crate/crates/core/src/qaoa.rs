//! Statevector QAOA with a diagonal cost layer and a transverse-field mixer.
//!
//! Basis index bit `q` holds qubit `q`, which is binary variable `x_q`.
//!
//! Randomness comes from `ChaCha8Rng` (`rand_chacha` 0.3) seeded with
//! `seed_from_u64`, so sample histograms are reproducible across platforms.
//! Optimizer restarts draw from an independent stream seeded with
//! `seed ^ RESTART_STREAM`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ising::IsingHamiltonian;
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::poly::{bits_to_string, mask_to_bits};

pub const DEFAULT_MAX_QUBITS: usize = 22;
const RESTART_STREAM: u64 = 0x9e37_79b9_7f4a_7c15;
const GRID_POINTS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    amplitudes: Vec<Complex64>,
    n: usize,
}

impl Statevector {
    /// `|0...0>`
    pub fn zero(n: usize) -> Result<Self> {
        Self::check_size(n, DEFAULT_MAX_QUBITS)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1usize << n];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Statevector { amplitudes, n })
    }

    /// Hadamard on every qubit of `|0...0>`.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::uniform_with_limit(n, DEFAULT_MAX_QUBITS)
    }

    fn uniform_with_limit(n: usize, max_qubits: usize) -> Result<Self> {
        Self::check_size(n, max_qubits)?;
        let dim = 1usize << n;
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Statevector { amplitudes: vec![a; dim], n })
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if !dim.is_power_of_two() {
            return Err(Error::LengthMismatch { expected: dim.next_power_of_two(), actual: dim });
        }
        Ok(Statevector { n: dim.trailing_zeros() as usize, amplitudes })
    }

    fn check_size(n: usize, max_qubits: usize) -> Result<()> {
        if n > max_qubits {
            return Err(Error::ProblemTooLarge { qubits: n, limit: max_qubits });
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Multiplies amplitude `b` by `exp(-i * gamma * energies[b])`.
    pub fn apply_phase(&mut self, energies: &[f64], gamma: f64) -> Result<()> {
        if energies.len() != self.amplitudes.len() {
            return Err(Error::LengthMismatch { expected: self.amplitudes.len(), actual: energies.len() });
        }
        for (a, &e) in self.amplitudes.iter_mut().zip(energies) {
            *a *= Complex64::from_polar(1.0, -gamma * e);
        }
        Ok(())
    }

    /// `exp(-i * beta * X)` on every qubit.
    pub fn apply_mixer(&mut self, beta: f64) {
        let (s, c) = beta.sin_cos();
        let minus_i_sin = Complex64::new(0.0, -s);
        for q in 0..self.n {
            let bit = 1usize << q;
            for i in 0..self.amplitudes.len() {
                if i & bit == 0 {
                    let a0 = self.amplitudes[i];
                    let a1 = self.amplitudes[i | bit];
                    self.amplitudes[i] = a0 * c + a1 * minus_i_sin;
                    self.amplitudes[i | bit] = a0 * minus_i_sin + a1 * c;
                }
            }
        }
    }

    pub fn expectation_diag(&self, energies: &[f64]) -> Result<f64> {
        if energies.len() != self.amplitudes.len() {
            return Err(Error::LengthMismatch { expected: self.amplitudes.len(), actual: energies.len() });
        }
        Ok(self.amplitudes.iter().zip(energies).map(|(a, e)| a.norm_sqr() * e).sum())
    }
}

fn check_qubits(sv: &Statevector, h: &IsingHamiltonian<f64>) -> Result<()> {
    if h.num_qubits() != sv.n {
        return Err(Error::LengthMismatch { expected: sv.n, actual: h.num_qubits() });
    }
    Ok(())
}

pub fn apply_cost_layer(sv: &mut Statevector, h: &IsingHamiltonian<f64>, gamma: f64) -> Result<()> {
    check_qubits(sv, h)?;
    sv.apply_phase(&h.diagonal()?, gamma)
}

pub fn apply_mixer_layer(sv: &mut Statevector, beta: f64) {
    sv.apply_mixer(beta);
}

pub fn expectation(sv: &Statevector, h: &IsingHamiltonian<f64>) -> Result<f64> {
    check_qubits(sv, h)?;
    sv.expectation_diag(&h.diagonal()?)
}

/// Draws `shots` basis states from `|amp|^2`. Keys are basis masks.
pub fn sample_distribution(sv: &Statevector, shots: usize, seed: u64) -> BTreeMap<u64, usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cumulative = Vec::with_capacity(sv.amplitudes.len());
    let mut total = 0.0;
    for a in &sv.amplitudes {
        total += a.norm_sqr();
        cumulative.push(total);
    }
    let last_nonzero = sv.amplitudes.iter().rposition(|a| a.norm_sqr() > 0.0).unwrap_or(0);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        let u = rng.gen::<f64>() * total;
        let idx = cumulative.partition_point(|&c| c <= u).min(last_nonzero);
        *counts.entry(idx as u64).or_insert(0) += 1;
    }
    counts
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QaoaConfig {
    /// Number of cost/mixer layer pairs.
    pub reps: usize,
    pub shots: usize,
    pub seed: u64,
    /// Evaluation budget per local search.
    pub optimizer_max_iters: usize,
    /// Extra local searches from perturbed incumbents.
    pub optimizer_restarts: usize,
    /// `[gamma_1..gamma_p, beta_1..beta_p]`; a coarse grid is used when absent.
    pub initial_params: Option<Vec<f64>>,
    pub max_qubits: usize,
}

impl Default for QaoaConfig {
    fn default() -> Self {
        QaoaConfig {
            reps: 2,
            shots: 4096,
            seed: 0,
            optimizer_max_iters: 200,
            optimizer_restarts: 2,
            initial_params: None,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

impl QaoaConfig {
    fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::InvalidConfig("reps must be at least 1"));
        }
        if self.shots == 0 {
            return Err(Error::InvalidConfig("shots must be at least 1"));
        }
        if let Some(p) = &self.initial_params {
            if p.len() != 2 * self.reps {
                return Err(Error::InvalidConfig("initial_params must hold 2 * reps values"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QaoaOutcome {
    pub num_qubits: usize,
    /// `[gamma_1..gamma_p, beta_1..beta_p]`
    pub best_params: Vec<f64>,
    pub best_expectation: f64,
    /// Best expectation seen so far, one entry per objective evaluation.
    pub expectation_trace: Vec<f64>,
    /// Basis mask to shot count.
    pub samples: BTreeMap<u64, usize>,
}

impl QaoaOutcome {
    /// `iteration,value` rows.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("iteration,value\n");
        for (i, v) in self.expectation_trace.iter().enumerate() {
            let _ = writeln!(out, "{},{}", i, v);
        }
        out
    }

    /// `bitstring,count` rows; the bitstring lists `x0 x1 ...` left to right.
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("bitstring,count\n");
        for (&mask, &count) in &self.samples {
            let _ = writeln!(out, "{},{}", bits_to_string(&mask_to_bits(mask, self.num_qubits)), count);
        }
        out
    }
}

/// Prepares the QAOA state for `params` against precomputed energies.
pub fn qaoa_state(energies: &[f64], n: usize, params: &[f64], max_qubits: usize) -> Result<Statevector> {
    let p = params.len() / 2;
    let mut sv = Statevector::uniform_with_limit(n, max_qubits)?;
    for layer in 0..p {
        sv.apply_phase(energies, params[layer])?;
        sv.apply_mixer(params[p + layer]);
    }
    Ok(sv)
}

pub fn run_qaoa(h: &IsingHamiltonian<f64>, cfg: &QaoaConfig) -> Result<QaoaOutcome> {
    cfg.validate()?;
    let n = h.num_qubits();
    if n > cfg.max_qubits {
        return Err(Error::ProblemTooLarge { qubits: n, limit: cfg.max_qubits });
    }
    let energies = h.diagonal()?;
    let p = cfg.reps;

    let mut trace = Vec::new();
    let mut incumbent = f64::INFINITY;
    let mut objective = |params: &[f64]| -> f64 {
        let value = qaoa_state(&energies, n, params, cfg.max_qubits)
            .and_then(|sv| sv.expectation_diag(&energies))
            .unwrap_or(f64::INFINITY);
        incumbent = incumbent.min(value);
        trace.push(incumbent);
        value
    };

    let mut best_params = match &cfg.initial_params {
        Some(init) => init.clone(),
        None => {
            let mut best = (f64::INFINITY, Vec::new());
            for a in 0..GRID_POINTS {
                for b in 0..GRID_POINTS {
                    let gamma = PI * (a as f64 + 0.5) / GRID_POINTS as f64;
                    let beta = PI * (b as f64 + 0.5) / GRID_POINTS as f64;
                    let mut params = vec![gamma; p];
                    params.extend(std::iter::repeat(beta).take(p));
                    let v = objective(&params);
                    if v < best.0 {
                        best = (v, params);
                    }
                }
            }
            best.1
        }
    };

    let opts = NelderMeadOptions { max_evals: cfg.optimizer_max_iters.max(1), ..Default::default() };
    let mut best = nelder_mead(&mut objective, &best_params, opts);
    best_params = best.x.clone();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ RESTART_STREAM);
    for _ in 0..cfg.optimizer_restarts {
        let start: Vec<f64> = best_params.iter().map(|x| x + rng.gen_range(-0.5..0.5)).collect();
        let m = nelder_mead(&mut objective, &start, opts);
        if m.value < best.value {
            best_params = m.x.clone();
            best = m;
        }
    }

    let state = qaoa_state(&energies, n, &best_params, cfg.max_qubits)?;
    let samples = sample_distribution(&state, cfg.shots, cfg.seed);
    Ok(QaoaOutcome {
        num_qubits: n,
        best_params,
        best_expectation: best.value,
        expectation_trace: trace,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ising::PauliZTerm;

    fn z0() -> IsingHamiltonian<f64> {
        IsingHamiltonian::from_terms(1, [PauliZTerm { qubits: vec![0], coefficient: 1.0 }])
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn zero_angles_are_identity() {
        let mut sv = Statevector::uniform(3).unwrap();
        let before = sv.clone();
        let mut h = IsingHamiltonian::new(3);
        h.add_term(vec![0, 2], 1.0);
        apply_cost_layer(&mut sv, &h, 0.0).unwrap();
        apply_mixer_layer(&mut sv, 0.0);
        assert_eq!(sv, before);
    }

    #[test]
    fn cost_phase_on_ground_state() {
        let mut sv = Statevector::zero(1).unwrap();
        apply_cost_layer(&mut sv, &z0(), PI).unwrap();
        assert!(close(sv.amplitudes()[0], Complex64::from_polar(1.0, -PI)));
    }

    #[test]
    fn mixer_quarter_turn_flips() {
        let mut sv = Statevector::zero(1).unwrap();
        apply_mixer_layer(&mut sv, PI / 2.0);
        assert!(close(sv.amplitudes()[0], Complex64::new(0.0, 0.0)));
        assert!(close(sv.amplitudes()[1], Complex64::new(0.0, -1.0)));
    }

    #[test]
    fn mixer_half_turn_keeps_probabilities() {
        let amps = vec![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let mut sv = Statevector::from_amplitudes(amps.clone()).unwrap();
        apply_mixer_layer(&mut sv, PI);
        // (-1) per qubit on two qubits.
        for (a, b) in sv.amplitudes().iter().zip(&amps) {
            assert!(close(*a, *b));
        }
    }

    #[test]
    fn expectation_examples() {
        let sv = Statevector::uniform(1).unwrap();
        assert!(expectation(&sv, &z0()).unwrap().abs() < 1e-15);
        let mut h = IsingHamiltonian::new(2);
        h.add_term(vec![], 2.0);
        h.add_term(vec![1], -3.0);
        let ground = Statevector::zero(2).unwrap();
        assert_eq!(expectation(&ground, &h).unwrap(), h.energy(&[false, false]).unwrap());
        assert!(expectation(&ground, &z0()).is_err());
    }

    #[test]
    fn sampling_basics() {
        let sv = Statevector::zero(3).unwrap();
        assert_eq!(sample_distribution(&sv, 100, 9), BTreeMap::from([(0, 100)]));
        let u = Statevector::uniform(4).unwrap();
        assert_eq!(sample_distribution(&u, 500, 42), sample_distribution(&u, 500, 42));
        assert_eq!(sample_distribution(&u, 500, 42).values().sum::<usize>(), 500);
    }

    #[test]
    fn uniform_two_qubit_sampling_is_balanced() {
        let sv = Statevector::uniform(2).unwrap();
        let shots = 1_000_000usize;
        let counts = sample_distribution(&sv, shots, 2024);
        let mean = shots as f64 / 4.0;
        let sigma = (shots as f64 * 0.25 * 0.75).sqrt();
        for k in 0..4u64 {
            let c = counts[&k] as f64;
            assert!((c - mean).abs() <= 4.0 * sigma, "outcome {k}: {c}");
        }
    }

    #[test]
    fn single_z_reaches_ground_energy() {
        let cfg = QaoaConfig { reps: 1, shots: 64, ..Default::default() };
        let out = run_qaoa(&z0(), &cfg).unwrap();
        assert!(out.best_expectation <= -0.99, "{}", out.best_expectation);
        assert_eq!(out.samples.values().sum::<usize>(), 64);
    }

    #[test]
    fn grid_search_confirms_z_optimum() {
        let energies = z0().diagonal().unwrap();
        let mut best = f64::INFINITY;
        for a in 0..=64 {
            for b in 0..=64 {
                let params = [PI * a as f64 / 64.0, PI * b as f64 / 64.0];
                let sv = qaoa_state(&energies, 1, &params, 1).unwrap();
                best = best.min(sv.expectation_diag(&energies).unwrap());
            }
        }
        assert!(best <= -0.999, "{best}");
    }

    #[test]
    fn one_shot_gives_one_sample() {
        let cfg = QaoaConfig { shots: 1, optimizer_max_iters: 10, optimizer_restarts: 0, ..Default::default() };
        let out = run_qaoa(&z0(), &cfg).unwrap();
        assert_eq!(out.samples.values().sum::<usize>(), 1);
    }

    #[test]
    fn trace_is_monotone_and_run_is_reproducible() {
        let mut h = IsingHamiltonian::new(3);
        h.add_term(vec![0, 1], 1.0);
        h.add_term(vec![1, 2], -0.5);
        h.add_term(vec![2], 0.3);
        let cfg = QaoaConfig { seed: 77, ..Default::default() };
        let a = run_qaoa(&h, &cfg).unwrap();
        let b = run_qaoa(&h, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.expectation_trace.windows(2).all(|w| w[1] <= w[0]));
        assert!(a.trace_csv().starts_with("iteration,value\n0,"));
        assert_eq!(a.histogram_csv().lines().count(), a.samples.len() + 1);
    }

    #[test]
    fn rejects_oversized_and_bad_configs() {
        let mut h = IsingHamiltonian::new(5);
        h.add_term(vec![4], 1.0);
        let cfg = QaoaConfig { max_qubits: 4, ..Default::default() };
        assert_eq!(run_qaoa(&h, &cfg), Err(Error::ProblemTooLarge { qubits: 5, limit: 4 }));
        assert!(run_qaoa(&h, &QaoaConfig { reps: 0, ..Default::default() }).is_err());
        assert!(run_qaoa(&h, &QaoaConfig { shots: 0, ..Default::default() }).is_err());
        assert!(Statevector::uniform(23).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn hamiltonian() -> impl Strategy<Value = IsingHamiltonian<f64>> {
            prop::collection::vec((prop::collection::vec(0usize..4, 0..4), -3.0f64..3.0), 1..8).prop_map(
                |terms| {
                    let mut h = IsingHamiltonian::new(4);
                    for (q, c) in terms {
                        h.add_term(q, c);
                    }
                    h
                },
            )
        }

        proptest! {
            #[test]
            fn layers_preserve_norm_and_bounds(
                h in hamiltonian(),
                angles in prop::collection::vec(-4.0f64..4.0, 2..8)
            ) {
                let mut sv = Statevector::uniform(4).unwrap();
                for pair in angles.chunks(2) {
                    apply_cost_layer(&mut sv, &h, pair[0]).unwrap();
                    if pair.len() > 1 {
                        apply_mixer_layer(&mut sv, pair[1]);
                    }
                }
                prop_assert!((sv.norm_sqr() - 1.0).abs() <= 1e-9);
                let diag = h.diagonal().unwrap();
                let lo = diag.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let e = expectation(&sv, &h).unwrap();
                prop_assert!(e >= lo - 1e-9 && e <= hi + 1e-9);
            }

            #[test]
            fn cost_layers_compose(h in hamiltonian(), g1 in -3.0f64..3.0, g2 in -3.0f64..3.0, beta in 0.0f64..3.0) {
                let mut start = Statevector::uniform(4).unwrap();
                start.apply_mixer(beta);
                let mut twice = start.clone();
                apply_cost_layer(&mut twice, &h, g1).unwrap();
                apply_cost_layer(&mut twice, &h, g2).unwrap();
                let mut once = start;
                apply_cost_layer(&mut once, &h, g1 + g2).unwrap();
                for (a, b) in twice.amplitudes().iter().zip(once.amplitudes()) {
                    prop_assert!((a - b).norm() <= 1e-9);
                }
            }
        }
    }
}
