//! Rational roots of rational polynomials, via the rational root theorem.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::poly::Poly;
use crate::rational::Rational;

/// Cofactors above this bound are not factored by trial division.
const TRIAL_DIVISION_LIMIT: u128 = 1 << 48;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootError {
    /// The polynomial has an irreducible factor of this degree (at least 2), or is zero.
    NotSplitting { residual_degree: usize },
    /// Coefficients too large for divisor enumeration.
    TooLarge,
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, RootError> {
    let n = n
        .abs()
        .to_u128()
        .filter(|v| *v <= TRIAL_DIVISION_LIMIT)
        .ok_or(RootError::TooLarge)?;
    let mut factors: Vec<(u128, u32)> = Vec::new();
    let mut rest = n;
    let mut p: u128 = 2;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    let mut out = vec![1u128];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = 1u128;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        out = next;
    }
    out.sort_unstable();
    Ok(out.into_iter().map(BigInt::from).collect())
}

/// All roots with multiplicity, ascending; fails unless the polynomial splits over ℚ.
pub fn rational_roots(p: &Poly) -> Result<Vec<Rational>, RootError> {
    if p.is_zero() {
        return Err(RootError::NotSplitting { residual_degree: 0 });
    }
    let mut roots = Vec::new();
    let zero_roots = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    roots.extend(std::iter::repeat_n(Rational::ZERO, zero_roots));
    let mut rest = Poly::from_coeffs(p.coeffs()[zero_roots..].to_vec());

    if rest.degree().unwrap_or(0) > 0 {
        // clear denominators to get an integer polynomial with the same roots
        let lcm = rest.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()));
        let ints: Vec<BigInt> = rest
            .coeffs()
            .iter()
            .map(|c| (c * &Rational::from(lcm.clone())).numer())
            .collect();
        let constant = &ints[0];
        let leading = ints.last().expect("nonzero polynomial");
        let numerators = divisors(constant)?;
        let denominators = divisors(leading)?;
        let mut candidates: Vec<Rational> = Vec::new();
        for num in &numerators {
            for den in &denominators {
                if num.gcd(den).is_one() {
                    let r = Rational::from_big(num_rational::BigRational::new(num.clone(), den.clone()));
                    candidates.push(-&r);
                    candidates.push(r);
                }
            }
        }
        candidates.sort();
        for c in candidates {
            loop {
                if rest.degree().unwrap_or(0) == 0 {
                    break;
                }
                let (quot, rem) = rest.div_linear(&c);
                if !rem.is_zero() {
                    break;
                }
                roots.push(c.clone());
                rest = quot;
            }
        }
    }
    match rest.degree() {
        Some(0) => {
            roots.sort();
            Ok(roots)
        }
        Some(d) => Err(RootError::NotSplitting { residual_degree: d }),
        None => unreachable!("deflation never produces zero"),
    }
}
