use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::polynomial::check_modulus;
use super::{image_size, DensePolynomial, ValueSetError};
use crate::numtheory::{derangement_proportion, ExactRational, Variant};
use crate::proof::VerificationReport;

/// Default `K` in the band `|deviation| <= K q^(-1/2)`. The asymptotic
/// estimate has no explicit constant, so this is a chosen tolerance.
///
/// The estimate only covers general polynomials, which sampling does not
/// check. Shifted powers such as `(T + s)^3 + c` turn up about once per
/// `q` draws and sit far outside the band: at `q ≡ 1 (mod 3)` their image
/// has `(q + 2)/3` elements.
pub const DEFAULT_BAND_CONSTANT: u64 = 3;

/// `1 - D_n/n!`, the limiting proportion of `F_q` hit by a general
/// degree-`n` polynomial.
pub fn bsd_reference(n: u64) -> Result<ExactRational, ValueSetError> {
    if n == 0 {
        return Err(ValueSetError::ZeroDegree);
    }
    let d = derangement_proportion(n, Variant::Symmetric).expect("n >= 1");
    Ok(ExactRational::one() - d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageStats {
    pub q: u64,
    pub n: u64,
    pub image_size: u64,
    pub proportion: ExactRational,
    pub bsd_reference: ExactRational,
    /// `proportion - bsd_reference`, signed.
    pub deviation: ExactRational,
}

impl ImageStats {
    /// Measures `f`, which must have degree exactly `n >= 1`.
    pub fn measure(f: &DensePolynomial, n: u64) -> Result<Self, ValueSetError> {
        let expected = n as usize;
        if f.degree() != Some(expected) {
            return Err(ValueSetError::DegreeMismatch { expected, found: f.degree() });
        }
        let q = f.modulus();
        let image_size = image_size(f);
        let proportion = ExactRational::new(image_size, q).expect("q is prime");
        let bsd_reference = bsd_reference(n)?;
        let deviation = &proportion - &bsd_reference;
        Ok(Self { q, n, image_size, proportion, bsd_reference, deviation })
    }

    pub fn missed_proportion(&self) -> ExactRational {
        ExactRational::one() - &self.proportion
    }

    /// `|deviation| <= k / sqrt(q)`, decided exactly as `deviation^2 q <= k^2`.
    pub fn within_band(&self, k: &ExactRational) -> bool {
        let q = ExactRational::from(self.q);
        &self.deviation * &self.deviation * q <= k * k
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Experiment {
    pub q: u64,
    pub n: u64,
    pub seed: u64,
    pub polynomials: Vec<DensePolynomial>,
    pub samples: Vec<ImageStats>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentSummary {
    pub trials: usize,
    pub band_constant: ExactRational,
    pub mean_deviation: Option<ExactRational>,
    pub max_abs_deviation: Option<ExactRational>,
    pub within_band: usize,
    pub within_band_fraction: Option<ExactRational>,
}

impl Experiment {
    pub fn summary(&self, k: &ExactRational) -> ExperimentSummary {
        let trials = self.samples.len();
        let within_band = self.samples.iter().filter(|s| s.within_band(k)).count();
        let (mean_deviation, within_band_fraction) = if trials == 0 {
            (None, None)
        } else {
            let total = self.samples.iter().fold(ExactRational::zero(), |acc, s| acc + &s.deviation);
            let count = ExactRational::from(trials as u64);
            (Some(total / &count), Some(ExactRational::from(within_band as u64) / count))
        };
        ExperimentSummary {
            trials,
            band_constant: k.clone(),
            mean_deviation,
            max_abs_deviation: self.samples.iter().map(|s| s.deviation.abs()).max(),
            within_band,
            within_band_fraction,
        }
    }

    /// Sample with the largest `|deviation|`, earliest on ties.
    pub fn worst(&self) -> Option<(&DensePolynomial, &ImageStats)> {
        self.polynomials.iter().zip(&self.samples).fold(None, |best: Option<(&DensePolynomial, &ImageStats)>, cur| {
            match best {
                Some(b) if b.1.deviation.abs() >= cur.1.deviation.abs() => Some(b),
                _ => Some(cur),
            }
        })
    }
}

/// Samples `trials` monic degree-`n` polynomials over `F_q` with uniform
/// lower coefficients and measures each value set.
///
/// Trial `i` draws from ChaCha8 seeded with `seed` on stream `i`, so the
/// output does not depend on how trials are scheduled across threads.
pub fn run_experiment(q: u64, n: u64, trials: usize, seed: u64) -> Result<Experiment, ValueSetError> {
    check_modulus(q)?;
    if n == 0 {
        return Err(ValueSetError::ZeroDegree);
    }
    let mut warnings = Vec::new();
    if q <= n {
        warnings.push(format!(
            "q = {q} <= n = {n}: T^q - T vanishes on F_q, so degree-{n} maps behave like lower-degree ones"
        ));
    }
    let measured: Vec<(DensePolynomial, ImageStats)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let lower: Vec<u64> = (0..n).map(|_| rng.gen_range(0..q)).collect();
            let f = DensePolynomial::monic(q, &lower)?;
            let stats = ImageStats::measure(&f, n)?;
            Ok((f, stats))
        })
        .collect::<Result<_, ValueSetError>>()?;
    let (polynomials, samples) = measured.into_iter().unzip();
    Ok(Experiment { q, n, seed, polynomials, samples, warnings })
}

/// Runs an experiment and checks every sample against the band
/// `|deviation| <= k / sqrt(q)`.
pub fn valueset_report(
    q: u64,
    n: u64,
    trials: usize,
    seed: u64,
    k: &ExactRational,
) -> Result<VerificationReport, ValueSetError> {
    if !k.is_positive() {
        return Err(ValueSetError::NonPositiveBand);
    }
    let experiment = run_experiment(q, n, trials, seed)?;
    let summary = experiment.summary(k);
    let mut report = VerificationReport::new("ffield")
        .param("q", q)
        .param("n", n)
        .param("trials", trials)
        .param("seed", seed)
        .param("band_constant", k);
    report.witness(serde_json::json!({ "summary": &summary, "warnings": &experiment.warnings }));
    for (f, stats) in experiment.polynomials.iter().zip(&experiment.samples) {
        report.witness(serde_json::json!({ "polynomial": f.to_string(), "stats": stats }));
    }
    if summary.within_band < summary.trials {
        let (f, stats) = experiment.worst().expect("at least one sample");
        report.refute(serde_json::json!({ "polynomial": f.to_string(), "stats": stats }));
    }
    Ok(report)
}
