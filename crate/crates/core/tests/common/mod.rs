//! Operators written out directly from their closed forms, independent of the chain.

#![allow(dead_code)]

use hodge_core::weyl::{Poly, ThetaOperator, WeylElement};
use hodge_core::{q, validate, HypergeomParams, Rational};

pub fn params(alpha: &[(i64, i64)], beta: &[(i64, i64)]) -> HypergeomParams {
    let r = |v: &[(i64, i64)]| v.iter().map(|&(n, d)| q(n, d)).collect::<Vec<_>>();
    validate(r(alpha), r(beta)).unwrap()
}

fn mu_of(p: &HypergeomParams) -> Rational {
    Rational::from_int(p.mu())
}

/// `∏ (θ/μ - c)` over `cs`.
fn scaled_product<'a>(mu: &Rational, cs: impl IntoIterator<Item = &'a Rational>) -> Poly {
    let inv = mu.recip();
    cs.into_iter()
        .fold(Poly::one(), |acc, c| &acc * &Poly::linear(inv.clone(), -c))
}

/// `∏((1/μ)vδ_v - α_i) - v^μ ∏((1/μ)vδ_v - β_j)`.
pub fn h_mu(p: &HypergeomParams) -> ThetaOperator {
    let mu = mu_of(p);
    ThetaOperator::from_terms([
        (0, scaled_product(&mu, p.alpha().iter())),
        (p.mu(), -&scaled_product(&mu, p.beta().iter())),
    ])
}

/// `∏((1/μ)τ∂_τ + α_i + 1/μ) - ∂_τ^μ ∏((1/μ)τ∂_τ + β_j + 1/μ)` in the Weyl algebra.
pub fn h_hat_mu(p: &HypergeomParams) -> WeylElement {
    let inv = mu_of(p).recip();
    let factor = |c: &Rational| WeylElement::from_terms([((1, 1), inv.clone()), ((0, 0), c + &inv)]);
    let one = WeylElement::monomial(Rational::ONE, 0, 0);
    let alpha = p.alpha().iter().fold(one.clone(), |acc, a| &acc * &factor(a));
    let beta = p.beta().iter().fold(one.clone(), |acc, b| &acc * &factor(b));
    let d_mu = (0..p.mu()).fold(one, |acc, _| &acc * &WeylElement::d());
    &alpha - &(&d_mu * &beta)
}

/// `∏((1/μ)τ'δ - α_i) - μ^μ τ'^μ ∏_{ℓ=1}^{μ}((1/μ)τ'δ + ℓ/μ) ∏((1/μ)τ'δ - β_j)`.
pub fn h_prime_mu(p: &HypergeomParams) -> ThetaOperator {
    let mu = mu_of(p);
    let minus_ell: Vec<Rational> = (1..=p.mu()).map(|l| q(-l, p.mu())).collect();
    let rest = &scaled_product(&mu, minus_ell.iter()) * &scaled_product(&mu, p.beta().iter());
    ThetaOperator::from_terms([
        (0, scaled_product(&mu, p.alpha().iter())),
        (p.mu(), -&rest.scale(&mu.pow(p.mu() as u32))),
    ])
}

/// `∏(xδ_x - α_i) - μ^μ x ∏(xδ_x - β̄_i)` with β̄ the merge of β and `ℓ/μ`.
pub fn h_double_prime(p: &HypergeomParams) -> ThetaOperator {
    let mu = mu_of(p);
    let mut bar: Vec<Rational> = p
        .beta()
        .iter()
        .cloned()
        .chain((0..p.mu()).map(|l| q(l, p.mu())))
        .collect();
    bar.sort();
    ThetaOperator::from_terms([
        (0, Poly::from_roots(p.alpha().iter())),
        (1, -&Poly::from_roots(bar.iter()).scale(&mu.pow(p.mu() as u32))),
    ])
}
