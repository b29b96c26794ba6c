//! Irregular Hodge jumps of confluent hypergeometric equations.
//!
//! [`irregular_hodge_spectrum`] evaluates the closed formula
//! `ρ(k) = μα_k - k + #{i : β_i < α_k}`. [`oracle_spectrum`] reaches the same
//! spectrum independently by composing the nearby-cycle steps of the
//! [`spectra`](crate::spectra) module, and [`verify`] compares the two.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::params::{
    bar_beta, check_strong, strengthen, strengthen_with, HypergeomParams, ParamsError, StrengthenResult,
};
use crate::rational::Rational;
use crate::spectra::{
    fedorov_nu, kummer_pullback, normalize, relabel_infinity, stationary_phase_reindex, HodgeSpectrum,
    NearbyCycleSpectrum, PointLabel, SpectraError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("index k = {k} is outside 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("n = {n} < m = {m}; swap α and β first")]
    WrongOrientation { n: usize, m: usize },
    #[error("parameters are not strongly non-resonant")]
    NotStrong,
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

fn check_index(params: &HypergeomParams, k: usize) -> Result<(), TheoremError> {
    if k == 0 || k > params.n() {
        return Err(TheoremError::IndexOutOfRange { k, n: params.n() });
    }
    Ok(())
}

/// `μα_k - k + #{i : β_i < α_k}` for `k` in `1..=n`.
pub fn rho(params: &HypergeomParams, k: usize) -> Result<Rational, TheoremError> {
    if params.n() < params.m() {
        return Err(TheoremError::WrongOrientation {
            n: params.n(),
            m: params.m(),
        });
    }
    check_index(params, k)?;
    Ok(rho_unchecked(params, k))
}

fn rho_unchecked(params: &HypergeomParams, k: usize) -> Rational {
    let alpha = &params.alpha()[k - 1];
    let below = params.beta().count_below(alpha) as i64;
    &(&Rational::from_int(params.mu()) * alpha) + &Rational::from_int(below - k as i64)
}

/// The jumps `ρ(1), …, ρ(max(n, m))` before normalization; for `n < m` they
/// are computed on the pair `(β, α)`.
pub fn raw_spectrum(params: &HypergeomParams) -> HodgeSpectrum {
    let oriented = if params.n() >= params.m() {
        params.clone()
    } else {
        params.swapped()
    };
    HodgeSpectrum::from_jumps((1..=oriented.n()).map(|k| rho_unchecked(&oriented, k)))
}

/// Normalized irregular Hodge spectrum, minimum jump at 0.
pub fn irregular_hodge_spectrum(params: &HypergeomParams) -> HodgeSpectrum {
    normalize(&raw_spectrum(params)).expect("validated params are never empty")
}

/// `⌊μα_k⌋ + #{i : β_i < α_k} - k`, so that `ρ(k) = frac(μα_k) + p_index(k)`.
pub fn p_index(params: &HypergeomParams, k: usize) -> Result<i64, TheoremError> {
    if !check_strong(params)? {
        return Err(TheoremError::NotStrong);
    }
    check_index(params, k)?;
    let alpha = &params.alpha()[k - 1];
    let floor = (&Rational::from_int(params.mu()) * alpha).floor_i64();
    Ok(floor + params.beta().count_below(alpha) as i64 - k as i64)
}

/// Every stage of the nearby-cycle computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleRun {
    pub strengthened: StrengthenResult,
    /// Hodge numbers of the non-confluent partner at 0.
    pub fedorov: NearbyCycleSpectrum,
    /// After pullback and relabeling: the Hodge numbers of the Fourier partner at infinity.
    pub at_infinity: NearbyCycleSpectrum,
    /// Irregular jumps before normalization.
    pub raw: HodgeSpectrum,
    pub spectrum: HodgeSpectrum,
}

fn run_pipeline(strengthened: StrengthenResult) -> Result<OracleRun, TheoremError> {
    let params = &strengthened.params;
    let mu = params.mu() as u32;
    let fedorov = fedorov_nu(params.alpha(), &bar_beta(params)?)?;
    let at_infinity = relabel_infinity(&kummer_pullback(&fedorov, mu))?;
    let raw = stationary_phase_reindex(&at_infinity)?;
    let spectrum = normalize(&raw)?;
    Ok(OracleRun {
        strengthened,
        fedorov,
        at_infinity,
        raw,
        spectrum,
    })
}

/// Runs the nearby-cycle pipeline, choosing `γ` by the search schedule.
pub fn oracle_run(params: &HypergeomParams) -> Result<OracleRun, TheoremError> {
    run_pipeline(strengthen(params)?)
}

/// Same, with a caller-supplied shift `γ`.
pub fn oracle_run_with_gamma(params: &HypergeomParams, gamma: &Rational) -> Result<OracleRun, TheoremError> {
    run_pipeline(strengthen_with(params, gamma)?)
}

/// Normalized oracle spectrum and the Hodge numbers at infinity it came from.
pub fn oracle_spectrum(params: &HypergeomParams) -> Result<(HodgeSpectrum, NearbyCycleSpectrum), TheoremError> {
    let run = oracle_run(params)?;
    Ok((run.spectrum, run.at_infinity))
}

/// The Hodge numbers at infinity predicted directly from `ρ` on strongly
/// non-resonant params: `#{j : ρ(j) = ρ(k)}` at `(frac(μα_k), #{i : β̄_i < α_k} - k)`.
pub fn predicted_at_infinity(params: &HypergeomParams) -> Result<NearbyCycleSpectrum, TheoremError> {
    if !check_strong(params)? {
        return Err(TheoremError::NotStrong);
    }
    let bar = bar_beta(params)?;
    let mu = Rational::from_int(params.mu());
    let rhos: Vec<Rational> = (1..=params.n()).map(|k| rho_unchecked(params, k)).collect();
    let entries = params.alpha().iter().enumerate().map(|(idx, alpha)| {
        let hodge_index = bar.count_below(alpha) as i64 - (idx as i64 + 1);
        let count = rhos.iter().filter(|r| **r == rhos[idx]).count() as u64;
        (((&mu * alpha).fract(), hodge_index), count)
    });
    // each colliding key is listed once per member, so keep one copy
    let mut seen = std::collections::BTreeMap::new();
    for (key, count) in entries {
        seen.insert(key, count);
    }
    Ok(NearbyCycleSpectrum::from_entries(PointLabel::Infinity, seen)?)
}

/// Outcome of comparing the closed formula with the nearby-cycle pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub params: HypergeomParams,
    pub gamma_used: Rational,
    pub theorem_spectrum: HodgeSpectrum,
    pub oracle_spectrum: HodgeSpectrum,
    pub intermediate: NearbyCycleSpectrum,
    pub agrees: bool,
    /// `c` with `oracle_raw = theorem_raw + c`, when such a constant exists.
    pub raw_shift: Option<Rational>,
}

pub fn verify(params: &HypergeomParams) -> Result<VerificationReport, TheoremError> {
    report(params, oracle_run(params)?)
}

pub fn verify_with_gamma(params: &HypergeomParams, gamma: &Rational) -> Result<VerificationReport, TheoremError> {
    report(params, oracle_run_with_gamma(params, gamma)?)
}

fn report(params: &HypergeomParams, run: OracleRun) -> Result<VerificationReport, TheoremError> {
    if !params.is_confluent() {
        return Err(ParamsError::NotConfluent { mu: params.mu() }.into());
    }
    let theorem_raw = raw_spectrum(params);
    let theorem_spectrum = normalize(&theorem_raw)?;
    let agrees = theorem_spectrum == run.spectrum;
    Ok(VerificationReport {
        params: params.clone(),
        gamma_used: run.strengthened.gamma,
        raw_shift: theorem_raw.offset_to(&run.raw),
        theorem_spectrum,
        oracle_spectrum: run.spectrum,
        intermediate: run.at_infinity,
        agrees,
    })
}

/// `{"alpha", "beta", "mu", "gamma", "spectrum", "oracle", "agrees", "raw_shift"}`.
impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(8))?;
        map.serialize_entry("alpha", self.params.alpha().as_slice())?;
        map.serialize_entry("beta", self.params.beta().as_slice())?;
        map.serialize_entry("mu", &self.params.mu())?;
        map.serialize_entry("gamma", &self.gamma_used)?;
        map.serialize_entry("spectrum", &self.theorem_spectrum)?;
        map.serialize_entry("oracle", &self.oracle_spectrum)?;
        map.serialize_entry("agrees", &self.agrees)?;
        map.serialize_entry("raw_shift", &self.raw_shift)?;
        map.end()
    }
}
