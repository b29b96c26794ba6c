//! Hypergeometric parameter data: validation, the merged sequence `β̄`, and
//! the shift that moves a pair into strongly non-resonant position.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

pub use crate::rational::{ParseRationalError, Rational};

/// Which of the two parameter sequences an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Alpha,
    Beta,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Alpha => "α",
            Side::Beta => "β",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    /// `index` is 1-based and points at the first entry that fails to exceed its predecessor.
    #[error("{side} is not strictly increasing: {side}_{index} = {value} does not exceed {side}_{prev_index}", prev_index = index - 1)]
    NotIncreasing { side: Side, index: usize, value: Rational },
    #[error("{side}_{index} = {value} lies outside [0,1)")]
    OutOfRange { side: Side, index: usize, value: Rational },
    #[error("non-resonance violated: resonant pair α_{alpha_index}=β_{beta_index} (= {value})")]
    Resonant {
        alpha_index: usize,
        beta_index: usize,
        value: Rational,
    },
    #[error("α and β are both empty; at least one parameter is required")]
    Empty,
    #[error("operation needs a confluent pair with n > m, got n - m = {mu}")]
    NotConfluent { mu: i64 },
    #[error("strong non-resonance not satisfied: {0}")]
    NotStrong(String),
    #[error("no admissible shift found in the search schedule")]
    SearchExhausted,
}

/// A strictly increasing sequence of rationals in `[0,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamSeq(Vec<Rational>);

impl ParamSeq {
    pub fn new(side: Side, entries: Vec<Rational>) -> Result<Self, ParamsError> {
        for (i, value) in entries.iter().enumerate() {
            if !value.in_unit_interval() {
                return Err(ParamsError::OutOfRange {
                    side,
                    index: i + 1,
                    value: value.clone(),
                });
            }
            if i > 0 && entries[i - 1] >= *value {
                return Err(ParamsError::NotIncreasing {
                    side,
                    index: i + 1,
                    value: value.clone(),
                });
            }
        }
        Ok(ParamSeq(entries))
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    /// Number of entries strictly below `x`.
    pub fn count_below(&self, x: &Rational) -> usize {
        self.0.partition_point(|e| e < x)
    }
}

impl std::ops::Index<usize> for ParamSeq {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

/// A validated non-resonant pair `(α, β)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HypergeomParams {
    alpha: ParamSeq,
    beta: ParamSeq,
}

impl HypergeomParams {
    pub fn alpha(&self) -> &ParamSeq {
        &self.alpha
    }

    pub fn beta(&self) -> &ParamSeq {
        &self.beta
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn m(&self) -> usize {
        self.beta.len()
    }

    /// `n - m`; may be zero or negative.
    pub fn mu(&self) -> i64 {
        self.n() as i64 - self.m() as i64
    }

    pub fn is_confluent(&self) -> bool {
        self.mu() > 0
    }

    /// The pair `(β, α)`.
    pub fn swapped(&self) -> HypergeomParams {
        HypergeomParams {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    /// Adds `gamma` to every entry of both sequences and revalidates.
    pub fn shifted(&self, gamma: &Rational) -> Result<HypergeomParams, ParamsError> {
        let shift = |s: &ParamSeq| s.iter().map(|x| x + gamma).collect::<Vec<_>>();
        validate(shift(&self.alpha), shift(&self.beta))
    }

    fn confluent_mu(&self) -> Result<usize, ParamsError> {
        match self.mu() {
            mu if mu > 0 => Ok(mu as usize),
            mu => Err(ParamsError::NotConfluent { mu }),
        }
    }
}

impl fmt::Display for HypergeomParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "α=[{}], β=[{}]", join(&self.alpha), join(&self.beta))
    }
}

fn join(seq: &ParamSeq) -> String {
    seq.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn validate(alpha: Vec<Rational>, beta: Vec<Rational>) -> Result<HypergeomParams, ParamsError> {
    let alpha = ParamSeq::new(Side::Alpha, alpha)?;
    let beta = ParamSeq::new(Side::Beta, beta)?;
    if alpha.is_empty() && beta.is_empty() {
        return Err(ParamsError::Empty);
    }
    // Both sequences are sorted, so a merge walk finds any coincidence.
    let (mut i, mut j) = (0, 0);
    while i < alpha.len() && j < beta.len() {
        match alpha[i].cmp(&beta[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                return Err(ParamsError::Resonant {
                    alpha_index: i + 1,
                    beta_index: j + 1,
                    value: alpha[i].clone(),
                })
            }
        }
    }
    Ok(HypergeomParams { alpha, beta })
}

/// The weakly increasing merge of `β` with `0, 1/μ, …, (μ-1)/μ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BarBeta(Vec<Rational>);

impl BarBeta {
    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn count_below(&self, x: &Rational) -> usize {
        self.0.partition_point(|e| e < x)
    }

    /// Wraps an arbitrary weakly increasing sequence in `[0,1)`; returns `None` otherwise.
    pub fn from_sorted(entries: Vec<Rational>) -> Option<BarBeta> {
        let ok = entries.iter().all(Rational::in_unit_interval) && entries.windows(2).all(|w| w[0] <= w[1]);
        ok.then_some(BarBeta(entries))
    }
}

pub fn bar_beta(params: &HypergeomParams) -> Result<BarBeta, ParamsError> {
    let mu = params.confluent_mu()?;
    let mut out = Vec::with_capacity(params.n());
    let roots = (0..mu).map(|l| Rational::new(l as i64, mu as i64));
    let mut beta = params.beta.iter().peekable();
    for root in roots {
        while let Some(b) = beta.next_if(|b| **b < root) {
            out.push(b.clone());
        }
        out.push(root);
    }
    out.extend(beta.cloned());
    debug_assert_eq!(out.len(), params.n());
    Ok(BarBeta(out))
}

/// Whether every entry lies in `(0,1)` and `α` avoids `β̄` entirely.
pub fn check_strong(params: &HypergeomParams) -> Result<bool, ParamsError> {
    let bar = bar_beta(params)?;
    Ok(strong_with_bar(params, &bar))
}

fn strong_with_bar(params: &HypergeomParams, bar: &BarBeta) -> bool {
    let interior = params
        .alpha
        .iter()
        .chain(params.beta.iter())
        .all(Rational::in_open_unit_interval);
    interior && params.alpha.iter().all(|a| bar.0.binary_search(a).is_err())
}

fn strong_violation(params: &HypergeomParams) -> Option<String> {
    let bar = bar_beta(params).ok()?;
    for (side, seq) in [(Side::Alpha, &params.alpha), (Side::Beta, &params.beta)] {
        if let Some((i, x)) = seq.iter().enumerate().find(|(_, x)| x.is_zero()) {
            return Some(format!("{side}_{} = {x} is not in (0,1)", i + 1));
        }
    }
    params.alpha.iter().enumerate().find_map(|(i, a)| {
        bar.0
            .binary_search(a)
            .ok()
            .map(|j| format!("α_{} = β̄_{} = {a}", i + 1, j + 1))
    })
}

/// A pair satisfying strong non-resonance together with the shift that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrengthenResult {
    pub params: HypergeomParams,
    pub gamma: Rational,
}

/// Largest exponent `s` tried in the schedule `γ = 1/(2^s · D)`.
pub const GAMMA_SEARCH_DEPTH: u32 = 40;

/// Base denominator `D` of the shift schedule: `μ` times the lcm of every
/// denominator among `α`, `β` and `ℓ/μ`.
pub fn gamma_base_denominator(params: &HypergeomParams) -> Result<BigInt, ParamsError> {
    let mu = params.confluent_mu()?;
    let mu_big = BigInt::from(mu);
    let lcm = params
        .alpha
        .iter()
        .chain(params.beta.iter())
        .map(Rational::denom)
        .fold(mu_big.clone(), |acc, d| acc.lcm(&d));
    Ok(lcm * mu_big)
}

pub fn strengthen(params: &HypergeomParams) -> Result<StrengthenResult, ParamsError> {
    if check_strong(params)? {
        return Ok(StrengthenResult {
            params: params.clone(),
            gamma: Rational::ZERO,
        });
    }
    let base = gamma_base_denominator(params)?;
    for s in 1..=GAMMA_SEARCH_DEPTH {
        let den = (BigInt::one() << s) * &base;
        let gamma = Rational::from_big(num_rational::BigRational::new(BigInt::one(), den));
        if let Ok(shifted) = params.shifted(&gamma) {
            if check_strong(&shifted)? {
                return Ok(StrengthenResult { params: shifted, gamma });
            }
        }
    }
    Err(ParamsError::SearchExhausted)
}

/// Applies a caller-chosen shift, failing unless the result is strongly non-resonant.
pub fn strengthen_with(params: &HypergeomParams, gamma: &Rational) -> Result<StrengthenResult, ParamsError> {
    params.confluent_mu()?;
    if gamma.is_negative() {
        return Err(ParamsError::NotStrong(format!("shift γ = {gamma} is negative")));
    }
    let shifted = params.shifted(gamma)?;
    match strong_violation(&shifted) {
        None => Ok(StrengthenResult {
            params: shifted,
            gamma: gamma.clone(),
        }),
        Some(why) => Err(ParamsError::NotStrong(format!("after shifting by γ = {gamma}: {why}"))),
    }
}

/// `μ·α_k` has nonzero fractional part for every `k`; implied by strong non-resonance.
pub fn mu_alpha_nonintegral(params: &HypergeomParams) -> bool {
    let mu = Rational::from_int(params.mu());
    params.alpha.iter().all(|a| !(&mu * a).is_integer())
}

/// Parses a comma-separated list of rationals; the empty string is the empty list.
pub fn parse_list(text: &str) -> Result<Vec<Rational>, ParseRationalError> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(str::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn p(alpha: &[Rational], beta: &[Rational]) -> HypergeomParams {
        validate(alpha.to_vec(), beta.to_vec()).unwrap()
    }

    #[test]
    fn validate_examples() {
        let hp = p(&[q(1, 3), q(2, 3)], &[]);
        assert_eq!((hp.n(), hp.m(), hp.mu()), (2, 0, 2));

        let err = validate(vec![q(1, 2)], vec![q(1, 2)]).unwrap_err();
        assert_eq!(
            err,
            ParamsError::Resonant {
                alpha_index: 1,
                beta_index: 1,
                value: q(1, 2)
            }
        );
        assert!(err.to_string().contains("resonant pair α_1=β_1"));

        let hp = p(&[q(1, 4), q(3, 4)], &[q(0, 1), q(1, 2)]);
        assert_eq!(hp.mu(), 0);
        // exhaustive pairwise oracle
        for a in hp.alpha().iter() {
            for b in hp.beta().iter() {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn validate_errors() {
        assert_eq!(validate(vec![], vec![]), Err(ParamsError::Empty));
        assert!(matches!(
            validate(vec![q(1, 2), q(1, 3)], vec![]),
            Err(ParamsError::NotIncreasing {
                side: Side::Alpha,
                index: 2,
                ..
            })
        ));
        assert!(matches!(
            validate(vec![q(1, 2), q(1, 2)], vec![]),
            Err(ParamsError::NotIncreasing { .. })
        ));
        assert!(matches!(
            validate(vec![], vec![q(1, 1)]),
            Err(ParamsError::OutOfRange {
                side: Side::Beta,
                index: 1,
                ..
            })
        ));
        assert!(matches!(
            validate(vec![q(-1, 5)], vec![]),
            Err(ParamsError::OutOfRange { .. })
        ));
        // 0 is allowed in either sequence at this level
        assert!(validate(vec![Rational::ZERO], vec![q(1, 2)]).is_ok());
    }

    #[test]
    fn resonance_reports_later_indices() {
        let err = validate(vec![q(1, 5), q(1, 2)], vec![q(1, 3), q(1, 2)]).unwrap_err();
        assert_eq!(err.to_string(), "non-resonance violated: resonant pair α_2=β_2 (= 1/2)");
    }

    #[test]
    fn bar_beta_examples() {
        let hp = p(&[q(1, 10), q(2, 10), q(3, 10)], &[q(1, 3)]);
        assert_eq!(bar_beta(&hp).unwrap().as_slice(), &[q(0, 1), q(1, 3), q(1, 2)]);
        let hp = p(&[q(1, 3), q(2, 3)], &[]);
        assert_eq!(bar_beta(&hp).unwrap().as_slice(), &[q(0, 1), q(1, 2)]);
        let hp = p(&[q(1, 2)], &[]);
        assert_eq!(bar_beta(&hp).unwrap().as_slice(), &[q(0, 1)]);
        let hp = p(&[q(1, 4), q(3, 4)], &[q(0, 1), q(1, 2)]);
        assert_eq!(bar_beta(&hp), Err(ParamsError::NotConfluent { mu: 0 }));
    }

    #[test]
    fn bar_beta_keeps_repeats() {
        // β contains 0 and 1/2 which coincide with the roots for μ = 2
        let hp = p(&[q(1, 5), q(2, 5), q(3, 5), q(4, 5)], &[Rational::ZERO, q(1, 2)]);
        assert_eq!(bar_beta(&hp).unwrap().as_slice(), &[q(0, 1), q(0, 1), q(1, 2), q(1, 2)]);
    }

    #[test]
    fn check_strong_examples() {
        assert!(check_strong(&p(&[q(1, 3), q(2, 3)], &[])).unwrap());
        assert!(!check_strong(&p(&[q(1, 4), q(1, 2)], &[])).unwrap());
        assert!(!check_strong(&p(&[Rational::ZERO, q(1, 3)], &[])).unwrap());
        assert!(check_strong(&p(&[q(1, 4)], &[q(1, 2), q(3, 4)])).is_err());
    }

    #[test]
    fn strengthen_examples() {
        let hp = p(&[q(1, 3), q(2, 3)], &[]);
        let r = strengthen(&hp).unwrap();
        assert_eq!(r.gamma, Rational::ZERO);
        assert_eq!(r.params, hp);

        let r = strengthen(&p(&[q(1, 4), q(1, 2)], &[])).unwrap();
        assert_eq!(r.gamma, q(1, 16));
        assert_eq!(r.params.alpha().as_slice(), &[q(5, 16), q(9, 16)]);
        assert!(check_strong(&r.params).unwrap());

        let r = strengthen(&p(&[Rational::ZERO, q(1, 3)], &[])).unwrap();
        assert!(r.gamma > Rational::ZERO);
        assert!(r.params.alpha().iter().all(Rational::in_open_unit_interval));
        assert!(check_strong(&r.params).unwrap());
    }

    #[test]
    fn strengthen_with_rejects_bad_gamma() {
        let hp = p(&[q(1, 4), q(1, 2)], &[]);
        assert!(strengthen_with(&hp, &q(1, 16)).is_ok());
        // 1/4 moves α_1 onto 1/2
        assert!(matches!(strengthen_with(&hp, &q(1, 4)), Err(ParamsError::NotStrong(_))));
        assert!(matches!(
            strengthen_with(&hp, &q(1, 2)),
            Err(ParamsError::OutOfRange { .. })
        ));
        assert!(matches!(
            strengthen_with(&hp, &q(-1, 100)),
            Err(ParamsError::NotStrong(_))
        ));
    }

    #[test]
    fn parse_list_handles_empty() {
        assert_eq!(parse_list("").unwrap(), vec![]);
        assert_eq!(parse_list("1/3,2/3").unwrap(), vec![q(1, 3), q(2, 3)]);
        assert!(parse_list("1/3,,2/3").is_err());
    }

    use crate::testing::confluent_params;

    proptest! {
        #[test]
        fn bar_beta_shape(hp in confluent_params()) {
            let bar = bar_beta(&hp).unwrap();
            prop_assert_eq!(bar.len(), hp.n());
            prop_assert!(bar.as_slice().windows(2).all(|w| w[0] <= w[1]));
            let mu = hp.mu();
            let mut rest: Vec<Rational> = bar.as_slice().to_vec();
            for l in 0..mu {
                let root = q(l, mu);
                let pos = rest.iter().position(|x| *x == root);
                prop_assert!(pos.is_some());
                rest.remove(pos.unwrap());
            }
            prop_assert_eq!(rest, hp.beta().as_slice().to_vec());
        }

        #[test]
        fn strengthen_is_idempotent(hp in confluent_params()) {
            let r = strengthen(&hp).unwrap();
            prop_assert!(check_strong(&r.params).unwrap());
            prop_assert_eq!(strengthen(&r.params).unwrap().gamma, Rational::ZERO);
            for (a, b) in r.params.alpha().iter().zip(hp.alpha().iter()) {
                prop_assert_eq!(a - b, r.gamma.clone());
            }
            for (a, b) in r.params.beta().iter().zip(hp.beta().iter()) {
                prop_assert_eq!(a - b, r.gamma.clone());
            }
        }

        #[test]
        fn strong_implies_nonintegral_mu_alpha(hp in confluent_params()) {
            if check_strong(&hp).unwrap() {
                prop_assert!(mu_alpha_nonintegral(&hp));
            }
        }
    }
}
