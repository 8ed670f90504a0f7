//! Reconstruction from noisy Bargmann coefficients, d² frame versus 2d² frame.

use num_complex::Complex64 as C64;
use rand::distr::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::frames::{bargmann, build_frame, reconstruct, validate_fiducial, BargmannTable, CoherentFrame, FrameKind};
use crate::operators::{normalized, Ket};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseKind {
    /// ε uniform on `[−E, E]`.
    RealUniform,
    /// Independent uniform real and imaginary parts on `[−E, E]`.
    ComplexUniform,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct NoiseConfig {
    pub amplitude: f64,
    pub trials: usize,
    pub seed: u64,
    pub kind: NoiseKind,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self {
            amplitude: 0.1,
            trials: 10_000,
            seed: 0,
            kind: NoiseKind::RealUniform,
        }
    }
}

/// One noisy reconstruction.
#[derive(Clone, Debug)]
pub struct NoisyTrial {
    pub state: Ket,
    /// `|⟨f_noisy|f⟩ − 1|` from the reconstructed state.
    pub error: f64,
    /// `|w Σ ε* F|` from the coefficients alone.
    pub error_closed_form: f64,
}

fn stream(kind: FrameKind, trial: u64) -> u64 {
    2 * trial + (kind == FrameKind::Hwp) as u64
}

/// The noise table for one trial; depends only on `(seed, frame kind, trial)`.
pub fn noise_table(cfg: &NoiseConfig, kind: FrameKind, len: usize, trial: u64) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream(kind, trial));
    let e = cfg.amplitude.abs();
    let u = Uniform::new_inclusive(-e, e).expect("finite amplitude");
    (0..len)
        .map(|_| match cfg.kind {
            NoiseKind::RealUniform => C64::new(u.sample(&mut rng), 0.0),
            NoiseKind::ComplexUniform => C64::new(u.sample(&mut rng), u.sample(&mut rng)),
        })
        .collect()
}

fn trial_with(
    frame: &CoherentFrame,
    f: &Ket,
    table: &BargmannTable,
    cfg: &NoiseConfig,
    trial: u64,
) -> Result<NoisyTrial> {
    let eps = noise_table(cfg, frame.kind(), table.values.len(), trial);
    let mut noisy = table.clone();
    for (v, e) in noisy.values.iter_mut().zip(&eps) {
        *v += e;
    }
    let state = reconstruct(frame, &noisy)?;
    let error = (state.dotc(f) - 1.0).norm();
    let w = frame.kind().weight(frame.dim());
    let closed: C64 = eps.iter().zip(&table.values).map(|(e, v)| e.conj() * v).sum();
    Ok(NoisyTrial {
        state,
        error,
        error_closed_form: (closed * w).norm(),
    })
}

/// Adds noise to the coefficients of `f` and reconstructs. `f` is normalized first.
pub fn noisy_reconstruct(frame: &CoherentFrame, f: &Ket, cfg: &NoiseConfig, trial: u64) -> Result<NoisyTrial> {
    let f = normalized(f)?;
    let table = bargmann(frame, &f);
    trial_with(frame, &f, &table, cfg, trial)
}

#[derive(Clone, Debug, Serialize)]
pub struct NoiseReport {
    pub kind: FrameKind,
    pub d: u32,
    pub errors: Vec<f64>,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

impl NoiseReport {
    fn from_errors(kind: FrameKind, d: u32, errors: Vec<f64>) -> Self {
        let n = errors.len().max(1) as f64;
        let mean = pairwise_sum(&errors) / n;
        let sq: Vec<f64> = errors.iter().map(|e| (e - mean) * (e - mean)).collect();
        let std = (pairwise_sum(&sq) / n).sqrt();
        let min = errors.iter().copied().fold(f64::INFINITY, f64::min);
        let max = errors.iter().copied().fold(0.0, f64::max);
        Self {
            kind,
            d,
            errors,
            mean,
            std,
            min,
            max,
        }
    }
}

/// Pairwise summation; the result does not depend on how trials were scheduled.
pub fn pairwise_sum(x: &[f64]) -> f64 {
    if x.len() <= 8 {
        x.iter().sum()
    } else {
        let (a, b) = x.split_at(x.len() / 2);
        pairwise_sum(a) + pairwise_sum(b)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub config: NoiseConfig,
    pub hw: NoiseReport,
    pub hwp: NoiseReport,
    /// Largest per-trial gap between the two error evaluations.
    pub max_closed_form_gap: f64,
}

impl ExperimentReport {
    pub fn e2_lt_e1(&self) -> bool {
        self.hwp.mean < self.hw.mean
    }
}

/// Runs `cfg.trials` trials on both frames, in parallel over trials.
pub fn run_experiment(f: &Ket, s: &Ket, cfg: &NoiseConfig) -> Result<ExperimentReport> {
    let fid = validate_fiducial(s)?;
    let f = normalized(f)?;
    let d = fid.dim().get();
    let run = |kind: FrameKind| -> Result<(NoiseReport, f64)> {
        let frame = build_frame(kind, &fid);
        let table = bargmann(&frame, &f);
        let trials: Vec<NoisyTrial> = (0..cfg.trials as u64)
            .into_par_iter()
            .map(|t| trial_with(&frame, &f, &table, cfg, t))
            .collect::<Result<_>>()?;
        let gap = trials
            .iter()
            .map(|t| (t.error - t.error_closed_form).abs())
            .fold(0.0, f64::max);
        let errors = trials.into_iter().map(|t| t.error).collect();
        Ok((NoiseReport::from_errors(kind, d, errors), gap))
    };
    let (hw, g1) = run(FrameKind::Hw)?;
    let (hwp, g2) = run(FrameKind::Hwp)?;
    Ok(ExperimentReport {
        config: *cfg,
        hw,
        hwp,
        max_closed_form_gap: g1.max(g2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::ket_from;

    fn vectors() -> (Ket, Ket) {
        (
            ket_from(&[(0.0, 0.7), (0.3, 0.0), (0.64, 0.0)]),
            ket_from(&[(0.5, 0.0), (0.0, 0.4), (0.77, 0.0)]),
        )
    }

    #[test]
    fn zero_noise_gives_zero_error() {
        let (f, s) = vectors();
        let frame = build_frame(FrameKind::Hwp, &validate_fiducial(&s).unwrap());
        let cfg = NoiseConfig {
            amplitude: 0.0,
            ..Default::default()
        };
        let t = noisy_reconstruct(&frame, &f, &cfg, 0).unwrap();
        assert!(t.error < 1e-14);
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let cfg = NoiseConfig::default();
        let a = noise_table(&cfg, FrameKind::Hw, 9, 3);
        assert_eq!(a, noise_table(&cfg, FrameKind::Hw, 9, 3));
        assert_ne!(a, noise_table(&cfg, FrameKind::Hw, 9, 4));
        assert_ne!(a, noise_table(&cfg, FrameKind::Hwp, 9, 3));
        assert!(a.iter().all(|z| z.re.abs() <= 0.1 && z.im == 0.0));
    }

    #[test]
    fn pairwise_sum_matches_naive() {
        let x: Vec<f64> = (0..1000).map(|i| i as f64 * 0.5).collect();
        assert_eq!(pairwise_sum(&x), x.iter().sum::<f64>());
    }
}
