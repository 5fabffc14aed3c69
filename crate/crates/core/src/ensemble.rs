//! Random-Clifford ensembles.
//!
//! Trial `t` draws everything from `ChaCha8Rng` seeded with `seed` on
//! stream `t`, so results do not depend on the number of workers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hp::{HpInstance, Partition};
use crate::local::{run_local_protocol, InjectedError};
use crate::tableau::CliffordTableau;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnsembleConfig {
    pub n: usize,
    pub n_a: usize,
    pub n_d: usize,
    pub trials: usize,
    pub seed: u64,
    /// Simulate the local protocol with one random Pauli error on `D`.
    pub inject_error: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRow {
    pub trial: usize,
    pub kernel_dim_bell: usize,
    pub kernel_dim_local: usize,
    pub fidelity_bell: f64,
    pub fidelity_local: f64,
    pub detected_error: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnsembleReport {
    pub config: EnsembleConfig,
    pub recoverable_fraction_bell: f64,
    pub recoverable_fraction_local: f64,
    pub mean_fidelity: f64,
    pub mean_fidelity_local: f64,
    pub detection_rate: Option<f64>,
    #[serde(skip)]
    pub rows: Vec<TrialRow>,
}

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn run_trial(config: &EnsembleConfig, part: Partition, trial: usize) -> Result<TrialRow> {
    let mut rng = trial_rng(config.seed, trial);
    let inst = HpInstance::build(CliffordTableau::random(config.n, &mut rng), part)?;
    let detected_error = if config.inject_error && config.n_d > 0 {
        let e = InjectedError::random(config.n_d, &mut rng);
        run_local_protocol(&inst, Some(e), &mut rng)?.detected_error
    } else {
        false
    };
    let k_bell = inst.kernel_dim_bell();
    let k_local = inst.kernel_dim_local();
    Ok(TrialRow {
        trial,
        kernel_dim_bell: k_bell,
        kernel_dim_local: k_local,
        fidelity_bell: (-(k_bell as f64)).exp2(),
        fidelity_local: (-(k_local as f64)).exp2(),
        detected_error,
    })
}

/// Runs `config.trials` trials on a pool of `workers` threads.
pub fn run_ensemble(config: &EnsembleConfig, workers: usize) -> Result<EnsembleReport> {
    if config.trials == 0 {
        return Err(Error::InvalidPartition("trials must be positive".into()));
    }
    let part = Partition::from_sizes(config.n, config.n_a, config.n_d)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::WorkerPool(e.to_string()))?;
    let rows = pool.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|t| run_trial(config, part, t))
            .collect::<Result<Vec<_>>>()
    })?;
    let count = rows.len() as f64;
    let frac = |f: &dyn Fn(&TrialRow) -> bool| rows.iter().filter(|r| f(r)).count() as f64 / count;
    let mean = |f: &dyn Fn(&TrialRow) -> f64| rows.iter().map(f).sum::<f64>() / count;
    Ok(EnsembleReport {
        config: config.clone(),
        recoverable_fraction_bell: frac(&|r| r.kernel_dim_bell == 0),
        recoverable_fraction_local: frac(&|r| r.kernel_dim_local == 0),
        mean_fidelity: mean(&|r| r.fidelity_bell),
        mean_fidelity_local: mean(&|r| r.fidelity_local),
        detection_rate: config.inject_error.then(|| frac(&|r| r.detected_error)),
        rows,
    })
}

impl EnsembleReport {
    /// Per-trial rows with columns `trial, kernel_dim_bell, kernel_dim_local,
    /// fidelity_bell, fidelity_local, detected_error`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    /// Summary plus rows as JSON.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Full<'a> {
            #[serde(flatten)]
            report: &'a EnsembleReport,
            rows: &'a [TrialRow],
        }
        serde_json::to_string_pretty(&Full {
            report: self,
            rows: &self.rows,
        })
        .expect("serialisable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(trials: usize) -> EnsembleConfig {
        EnsembleConfig {
            n: 6,
            n_a: 1,
            n_d: 3,
            trials,
            seed: 7,
            inject_error: true,
        }
    }

    #[test]
    fn csv_header_and_row_count() {
        let report = run_ensemble(&config(5), 2).unwrap();
        let csv = report.to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "trial,kernel_dim_bell,kernel_dim_local,fidelity_bell,fidelity_local,detected_error"
        );
        assert_eq!(lines.count(), 5);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let a = run_ensemble(&config(40), 1).unwrap();
        let b = run_ensemble(&config(40), 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn mean_fidelity_is_mean_of_rows() {
        let r = run_ensemble(&config(30), 3).unwrap();
        let direct: f64 = r.rows.iter().map(|row| row.fidelity_bell).sum::<f64>() / 30.0;
        assert!((r.mean_fidelity - direct).abs() < 1e-15);
        assert!((0.0..=1.0).contains(&r.recoverable_fraction_bell));
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(run_ensemble(&config(0), 1).is_err());
    }
}
