//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;

/// Coefficients in ascending degree; never has trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::ONE)
    }

    /// The indeterminate.
    pub fn x() -> Poly {
        Poly(vec![Rational::ZERO, Rational::ONE])
    }

    /// `scale·x + offset`.
    pub fn linear(scale: Rational, offset: Rational) -> Poly {
        Poly::from_coeffs(vec![offset, scale])
    }

    /// `x - root`.
    pub fn monic_linear(root: &Rational) -> Poly {
        Poly::linear(Rational::ONE, -root)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Poly {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    /// `∏ (x - r)` over `roots`.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Poly {
        roots
            .into_iter()
            .fold(Poly::one(), |acc, r| &acc * &Poly::monic_linear(r))
    }

    /// Falling factorial `x(x-1)⋯(x-k+1)`.
    pub fn falling(k: usize) -> Poly {
        (0..k).fold(Poly::one(), |acc, j| {
            &acc * &Poly::monic_linear(&Rational::from_int(j as i64))
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or(Rational::ZERO)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.0.last()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::ZERO, |acc, c| &(&acc * x) + c)
    }

    /// `p(a·x + b)` by Horner's scheme.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Poly {
        let lin = Poly::linear(a.clone(), b.clone());
        self.0
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * &lin) + &Poly::constant(c.clone()))
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return self.clone();
        }
        self.compose_linear(&Rational::ONE, c)
    }

    /// Division by `x - r`, returning quotient and remainder.
    pub fn div_linear(&self, r: &Rational) -> (Poly, Rational) {
        let Some(deg) = self.degree() else {
            return (Poly::zero(), Rational::ZERO);
        };
        let mut quotient = vec![Rational::ZERO; deg];
        let mut carry = Rational::ZERO;
        for k in (0..=deg).rev() {
            let value = &self.0[k] + &(&carry * r);
            if k == 0 {
                return (Poly::from_coeffs(quotient), value);
            }
            quotient[k - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// Coefficients in the falling-factorial basis: `p = Σ c_j · x(x-1)⋯(x-j+1)`.
    pub fn to_falling_basis(&self) -> Vec<Rational> {
        // Newton forward differences at 0: c_j = Δ^j p(0) / j!
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        let mut values: Vec<Rational> = (0..=deg).map(|k| self.eval(&Rational::from_int(k as i64))).collect();
        let mut out = Vec::with_capacity(deg + 1);
        let mut factorial = Rational::ONE;
        for j in 0..=deg {
            if j > 0 {
                factorial = &factorial * &Rational::from_int(j as i64);
            }
            out.push(&values[0] / &factorial);
            for k in 0..values.len() - 1 {
                values[k] = &values[k + 1] - &values[k];
            }
            values.pop();
        }
        out
    }

    pub fn add_assign_ref(&mut self, rhs: &Poly) {
        if self.0.len() < rhs.0.len() {
            self.0.resize(rhs.0.len(), Rational::ZERO);
        }
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a = &*a + b;
        }
        while self.0.last().is_some_and(Rational::is_zero) {
            self.0.pop();
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::ZERO; self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Poly {
    /// Renders as `c_d*th^d + … + c_0` with variable name `var`, skipping zero coefficients.
    pub fn display_with<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Poly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let mut first = true;
                for (k, c) in self.0 .0.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        f.write_str(" + ")?;
                    }
                    first = false;
                    match k {
                        0 => write!(f, "{c}")?,
                        1 => write!(f, "{c}*{}", self.1)?,
                        _ => write!(f, "{c}*{}^{k}", self.1)?,
                    }
                }
                if first {
                    f.write_str("0")?;
                }
                Ok(())
            }
        }
        D(self, var)
    }
}
