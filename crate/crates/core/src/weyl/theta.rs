//! Operators `Σ_a t^a·p_a(θ)` in the localized algebra generated by `t^{±1}`
//! and `θ = t∂_t`, normal-ordered with all powers of `t` on the left.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Poly;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ThetaOperator {
    terms: BTreeMap<i64, Poly>,
}

impl ThetaOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Poly::one())
    }

    /// `t^a · p(θ)`.
    pub fn monomial(a: i64, p: Poly) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(a, p);
        }
        ThetaOperator { terms }
    }

    /// `p(θ)` with no power of `t`.
    pub fn from_poly(p: Poly) -> Self {
        Self::monomial(0, p)
    }

    pub fn theta() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn t_pow(a: i64) -> Self {
        Self::monomial(a, Poly::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// Builds from `(exponent, coefficient)` pairs, merging repeated exponents.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Poly)>) -> Self {
        let mut out = ThetaOperator::zero();
        for (a, p) in terms {
            out.add_term(a, &p);
        }
        out
    }

    fn add_term(&mut self, a: i64, p: &Poly) {
        if p.is_zero() {
            return;
        }
        let slot = self.terms.entry(a).or_default();
        slot.add_assign_ref(p);
        if slot.is_zero() {
            self.terms.remove(&a);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Poly)> {
        self.terms.iter().map(|(a, p)| (*a, p))
    }

    /// Coefficient polynomial of `t^a`; zero when absent.
    pub fn coefficient(&self, a: i64) -> Poly {
        self.terms.get(&a).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ThetaOperator {
            terms: self.terms.iter().map(|(a, p)| (*a, p.scale(c))).collect(),
        }
    }

    /// Left multiplication by the unit `c·t^s`.
    pub fn left_unit(&self, c: &Rational, s: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ThetaOperator {
            terms: self.terms.iter().map(|(a, p)| (a + s, p.scale(c))).collect(),
        }
    }

    /// Applies `f` to every `(exponent, coefficient)` pair.
    pub fn map_terms(&self, mut f: impl FnMut(i64, &Poly) -> (i64, Poly)) -> Self {
        Self::from_terms(self.terms.iter().map(|(a, p)| f(*a, p)))
    }

    /// Finds `(c, s)` with `self = c·t^s·other`, if such a unit exists.
    pub fn unit_ratio(&self, other: &ThetaOperator) -> Option<(Rational, i64)> {
        if self.is_zero() || other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let s = self.min_exponent()? - other.min_exponent()?;
        let (_, first) = self.terms.iter().next()?;
        let (_, other_first) = other.terms.iter().next()?;
        let c = first.leading()? / other_first.leading()?;
        (self == &other.left_unit(&c, s)).then_some((c, s))
    }

    pub fn equal_up_to_unit(&self, other: &ThetaOperator) -> bool {
        self.unit_ratio(other).is_some()
    }
}

/// Normal-ordered product, using `(t^a f(θ))(t^c g(θ)) = t^{a+c} f(θ+c) g(θ)`.
pub fn multiply(lhs: &ThetaOperator, rhs: &ThetaOperator) -> ThetaOperator {
    let mut out = ThetaOperator::zero();
    for (a, f) in &lhs.terms {
        for (c, g) in &rhs.terms {
            let shifted = f.shift(&Rational::from_int(*c));
            out.add_term(a + c, &(&shifted * g));
        }
    }
    out
}

impl Add for &ThetaOperator {
    type Output = ThetaOperator;
    fn add(self, rhs: &ThetaOperator) -> ThetaOperator {
        let mut out = self.clone();
        for (a, p) in &rhs.terms {
            out.add_term(*a, p);
        }
        out
    }
}

impl Neg for &ThetaOperator {
    type Output = ThetaOperator;
    fn neg(self) -> ThetaOperator {
        ThetaOperator {
            terms: self.terms.iter().map(|(a, p)| (*a, -p)).collect(),
        }
    }
}

impl Sub for &ThetaOperator {
    type Output = ThetaOperator;
    fn sub(self, rhs: &ThetaOperator) -> ThetaOperator {
        self + &(-rhs)
    }
}

impl Mul for &ThetaOperator {
    type Output = ThetaOperator;
    fn mul(self, rhs: &ThetaOperator) -> ThetaOperator {
        multiply(self, rhs)
    }
}

/// Terms by ascending exponent, each as `t^a*(c_d*th^d + … + c_0)`, joined by ` + `.
impl fmt::Display for ThetaOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (a, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "t^{a}*({})", p.display_with("th"))?;
        }
        Ok(())
    }
}
