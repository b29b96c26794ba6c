//! The polynomial Weyl algebra `ℚ[t]⟨∂⟩`, elements stored as `Σ c_{ij} t^i ∂^j`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WeylElement {
    terms: BTreeMap<(u32, u32), Rational>,
}

fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = Rational::ONE;
    for i in 0..k {
        acc = &(&acc * &Rational::from_int((n - i) as i64)) / &Rational::from_int((i + 1) as i64);
    }
    acc
}

fn falling_value(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::ZERO;
    }
    (0..k).fold(Rational::ONE, |acc, i| &acc * &Rational::from_int((n - i) as i64))
}

impl WeylElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · t^i ∂^j`.
    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut out = Self::zero();
        out.add_term(i, j, &c);
        out
    }

    pub fn t() -> Self {
        Self::monomial(Rational::ONE, 1, 0)
    }

    pub fn d() -> Self {
        Self::monomial(Rational::ONE, 0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in terms {
            out.add_term(i, j, &c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, i: u32, j: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert(Rational::ZERO);
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coefficient(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or(Rational::ZERO)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        WeylElement {
            terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    /// `Some(c)` with `self = c·other` for a nonzero scalar `c`.
    pub fn scalar_ratio(&self, other: &WeylElement) -> Option<Rational> {
        let (key, lead) = self.terms.iter().next()?;
        let c = lead / other.terms.get(key)?;
        (self == &other.scale(&c)).then_some(c)
    }
}

/// `∂^b t^c = Σ_k C(b,k) c^{(k)} t^{c-k} ∂^{b-k}` (Leibniz), `c^{(k)}` the falling power.
fn reorder(b: u32, c: u32) -> impl Iterator<Item = (u32, u32, Rational)> {
    (0..=b.min(c)).map(move |k| (c - k, b - k, &binomial(b, k) * &falling_value(c, k)))
}

pub fn weyl_multiply(lhs: &WeylElement, rhs: &WeylElement) -> WeylElement {
    let mut out = WeylElement::zero();
    for (&(a, b), x) in &lhs.terms {
        for (&(c, d), y) in &rhs.terms {
            let xy = x * y;
            for (ti, dj, coeff) in reorder(b, c) {
                out.add_term(a + ti, dj + d, &(&xy * &coeff));
            }
        }
    }
    out
}

/// Image under the automorphism `t ↦ -∂`, `∂ ↦ t`, normal-ordered.
pub fn fourier(op: &WeylElement) -> WeylElement {
    let mut out = WeylElement::zero();
    for (&(i, j), c) in &op.terms {
        // c·t^i ∂^j ↦ c·(-1)^i ∂^i t^j
        let signed = if i % 2 == 1 { -c } else { c.clone() };
        for (ti, dj, coeff) in reorder(i, j) {
            out.add_term(ti, dj, &(&signed * &coeff));
        }
    }
    out
}

impl Add for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c);
        }
        out
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(&Rational::from_int(-1))
    }
}

impl Sub for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        self + &(-rhs)
    }
}

impl Mul for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        weyl_multiply(self, rhs)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, ((i, j), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*t^{i}*d^{j}")?;
        }
        Ok(())
    }
}
