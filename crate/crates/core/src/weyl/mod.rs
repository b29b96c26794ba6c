//! Exact differential-operator algebra for the hypergeometric operator and
//! the sequence of transformations relating the confluent operator to a
//! non-confluent one: Kummer pullback, Fourier transform, inversion of the
//! variable, and reduction of exponents modulo ℤ.
//!
//! Two presentations are used. [`ThetaOperator`] is the localized form
//! `Σ t^a p_a(θ)` with `θ = t∂`, where pullbacks and inversions are simple
//! substitutions. [`WeylElement`] is the polynomial form `Σ c t^i ∂^j`, where
//! the Fourier transform is an algebra automorphism.

mod element;
mod poly;
mod roots;
mod theta;

use thiserror::Error;

pub use element::{fourier, weyl_multiply, WeylElement};
pub use poly::Poly;
pub use roots::{rational_roots, RootError};
pub use theta::{multiply, ThetaOperator};

use crate::params::{bar_beta, HypergeomParams, ParamsError};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("t^{t_exponent}·∂^{order} term has a negative power of t; operator is not polynomial")]
    NotPolynomial { t_exponent: i64, order: usize },
    #[error("coefficient of t^{exponent} does not split over ℚ (irreducible factor of degree {residual_degree})")]
    NotSplitting { exponent: i64, residual_degree: usize },
    #[error("coefficient of t^{exponent} is too large to factor")]
    TooLarge { exponent: i64 },
    #[error("no t^{exponent} term")]
    MissingCoefficient { exponent: i64 },
    #[error("t-exponent {exponent} is not divisible by {mu}; operator is not a Kummer pullback")]
    NotPullback { exponent: i64, mu: u32 },
    #[error(transparent)]
    Params(#[from] ParamsError),
}

/// The generator shift used by [`invert_variable`] in the Katz chain: the
/// module generator `τ'^{-1}` conjugates the inverted operator by `t^1`.
pub const GENERATOR_GAUGE: i64 = 1;

/// `∏(θ - α_i) - t·∏(θ - β_j)`.
pub fn build_hypergeom(params: &HypergeomParams) -> ThetaOperator {
    let lhs = ThetaOperator::from_poly(Poly::from_roots(params.alpha().iter()));
    let rhs = ThetaOperator::monomial(1, Poly::from_roots(params.beta().iter()));
    &lhs - &rhs
}

/// Pullback along `v ↦ t = v^μ`: `t^a p(θ_t) ↦ v^{μa} p(θ_v/μ)`.
pub fn kummer_pull(op: &ThetaOperator, mu: u32) -> ThetaOperator {
    assert!(mu > 0, "covering degree must be positive");
    if mu == 1 {
        return op.clone();
    }
    let inv = Rational::new(1, mu as i64);
    op.map_terms(|a, p| (a * mu as i64, p.compose_linear(&inv, &Rational::ZERO)))
}

/// Inverse of [`kummer_pull`]; fails if some exponent is not a multiple of `μ`.
pub fn kummer_descend(op: &ThetaOperator, mu: u32) -> Result<ThetaOperator, WeylError> {
    assert!(mu > 0, "covering degree must be positive");
    if let Some(exponent) = op.support().into_iter().find(|a| a % mu as i64 != 0) {
        return Err(WeylError::NotPullback { exponent, mu });
    }
    let scale = Rational::from_int(mu as i64);
    Ok(op.map_terms(|a, p| (a / mu as i64, p.compose_linear(&scale, &Rational::ZERO))))
}

/// Rewrites `θ = t∂` and expands each coefficient in the basis
/// `θ(θ-1)⋯(θ-j+1) = t^j ∂^j`.
pub fn theta_to_weyl(op: &ThetaOperator) -> Result<WeylElement, WeylError> {
    let mut out = WeylElement::zero();
    for (a, p) in op.terms() {
        for (j, c) in p.to_falling_basis().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = a + j as i64;
            if power < 0 {
                return Err(WeylError::NotPolynomial {
                    t_exponent: a,
                    order: j,
                });
            }
            out.add_term(power as u32, j as u32, &c);
        }
    }
    Ok(out)
}

/// `t^i ∂^j = t^{i-j} θ(θ-1)⋯(θ-j+1)`.
pub fn weyl_to_theta(op: &WeylElement) -> ThetaOperator {
    ThetaOperator::from_terms(
        op.terms()
            .map(|((i, j), c)| (i as i64 - j as i64, Poly::falling(j as usize).scale(c))),
    )
}

/// `t ↦ t^{-1}`, `θ ↦ -θ`, then conjugation `P ↦ t^{-gauge} P t^{gauge}`.
pub fn invert_variable(op: &ThetaOperator, gauge: i64) -> ThetaOperator {
    let minus_one = Rational::from_int(-1);
    let offset = Rational::from_int(-gauge);
    op.map_terms(|a, p| (-a, p.compose_linear(&minus_one, &offset)))
}

/// `∏(θ - α_i) - μ^μ·t·∏(θ - β̄_i)`.
pub fn reduce_exponents(params: &HypergeomParams) -> Result<ThetaOperator, WeylError> {
    let bar = bar_beta(params)?;
    let mu = params.mu();
    let lhs = ThetaOperator::from_poly(Poly::from_roots(params.alpha().iter()));
    let constant = Rational::from_int(mu).pow(mu as u32);
    let rhs = ThetaOperator::monomial(1, Poly::from_roots(bar.iter()).scale(&constant));
    Ok(&lhs - &rhs)
}

/// Roots of the `t^exponent` coefficient reduced into `[0,1)`, ascending, with multiplicity.
pub fn exponents_of(op: &ThetaOperator, exponent: i64) -> Result<Vec<Rational>, WeylError> {
    let p = op.coefficient(exponent);
    if p.is_zero() {
        return Err(WeylError::MissingCoefficient { exponent });
    }
    let roots = rational_roots(&p).map_err(|e| match e {
        RootError::NotSplitting { residual_degree } => WeylError::NotSplitting {
            exponent,
            residual_degree,
        },
        RootError::TooLarge => WeylError::TooLarge { exponent },
    })?;
    let mut reduced: Vec<Rational> = roots.iter().map(Rational::fract).collect();
    reduced.sort();
    Ok(reduced)
}

/// Indicial exponents at `t = 0`, i.e. roots of the `t^0` coefficient mod ℤ.
pub fn indicial_exponents(op: &ThetaOperator) -> Result<Vec<Rational>, WeylError> {
    exponents_of(op, 0)
}

/// Every operator produced on the way from `𝓗(α,β)` to the reduced operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KatzChain {
    pub mu: u32,
    /// `𝓗` in the variable `t`.
    pub hypergeom: ThetaOperator,
    /// Pullback to `v` with `t = v^μ`.
    pub pulled: ThetaOperator,
    /// Fourier transform in the variable `τ`, polynomial form.
    pub fourier: WeylElement,
    /// Same, in θ-form.
    pub fourier_theta: ThetaOperator,
    /// After `τ' = 1/τ` and the generator change.
    pub inverted: ThetaOperator,
    /// Descent of `inverted` by `x = τ'^μ`.
    pub descended: ThetaOperator,
    /// `𝓗''`: descended operator with exponents reduced mod ℤ.
    pub reduced: ThetaOperator,
}

pub fn katz_chain(params: &HypergeomParams) -> Result<KatzChain, WeylError> {
    let mu = params.mu();
    if mu <= 0 {
        return Err(ParamsError::NotConfluent { mu }.into());
    }
    let mu = mu as u32;
    let hypergeom = build_hypergeom(params);
    let pulled = kummer_pull(&hypergeom, mu);
    let fourier = fourier(&theta_to_weyl(&pulled)?);
    let fourier_theta = weyl_to_theta(&fourier);
    let inverted = invert_variable(&fourier_theta, GENERATOR_GAUGE);
    let descended = kummer_descend(&inverted, mu)?;
    let reduced = reduce_exponents(params)?;
    Ok(KatzChain {
        mu,
        hypergeom,
        pulled,
        fourier,
        fourier_theta,
        inverted,
        descended,
        reduced,
    })
}

/// Whether `descended` and `reduced` agree up to a unit and a reduction of
/// exponents mod ℤ: same support, same exponent multisets mod ℤ in every
/// coefficient, and the same ratio of leading coefficients.
pub fn reduction_matches(descended: &ThetaOperator, reduced: &ThetaOperator) -> Result<bool, WeylError> {
    let support = descended.support();
    if support != reduced.support() || support.is_empty() {
        return Ok(false);
    }
    for &a in &support {
        if exponents_of(descended, a)? != exponents_of(reduced, a)? {
            return Ok(false);
        }
    }
    let ratio = |op: &ThetaOperator| -> Vec<Rational> {
        let base = op.coefficient(support[0]).leading().cloned().expect("nonzero");
        support
            .iter()
            .map(|a| op.coefficient(*a).leading().expect("nonzero") / &base)
            .collect()
    };
    Ok(ratio(descended) == ratio(reduced))
}

impl KatzChain {
    pub fn reduction_matches(&self) -> Result<bool, WeylError> {
        reduction_matches(&self.descended, &self.reduced)
    }

    /// `(label, operator)` in chain order, for display.
    pub fn displayed(&self) -> Vec<(&'static str, &ThetaOperator)> {
        vec![
            ("H", &self.hypergeom),
            ("H_mu", &self.pulled),
            ("H_hat_mu", &self.fourier_theta),
            ("H_prime_mu", &self.inverted),
            ("H_double_prime", &self.reduced),
        ]
    }
}
