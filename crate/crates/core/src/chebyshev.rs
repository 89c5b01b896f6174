//! Dense univariate polynomials with exact rational coefficients, and the
//! Chebyshev families `T_n`, `U_n`.
//!
//! Coefficients are stored in ascending degree. The representation is
//! canonical: the zero polynomial has no coefficients and otherwise the last
//! stored coefficient is nonzero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rational::{int, to_f64, Rational};

/// Tolerance used by [`ExactPolynomial::is_numerical_root`], relative to the
/// largest absolute coefficient.
pub const ROOT_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactPolynomial {
    coeffs: Vec<Rational>,
}

impl ExactPolynomial {
    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn x() -> Self {
        Self::from_coeffs(vec![int(0), int(1)])
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * X^deg`.
    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(coeffs)
    }

    /// Trailing zeros are stripped.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Coefficient of `X^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in double precision.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// Exact evaluation at the dyadic rational `x`, rounded once. Avoids the
    /// cancellation Horner suffers for high-degree Chebyshev polynomials
    /// near `|x| = 1`.
    pub fn eval_f64_exact(&self, x: f64) -> f64 {
        match Rational::from_float(x) {
            Some(q) => to_f64(&self.eval(&q)),
            None => f64::NAN,
        }
    }

    pub fn to_float(&self) -> FloatPolynomial {
        FloatPolynomial::new(self.coeffs.iter().map(to_f64).collect())
    }

    /// Largest absolute coefficient, as a float.
    pub fn coefficient_scale(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| to_f64(&c.abs()))
            .fold(0.0, f64::max)
    }

    /// Whether `x` is a root to within [`ROOT_TOLERANCE`] relative to the
    /// coefficient magnitude.
    pub fn is_numerical_root(&self, x: f64) -> bool {
        self.eval_f64(x).abs() <= ROOT_TOLERANCE * self.coefficient_scale().max(1.0)
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let unit = a == int(1);
            match (i, unit) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{a}X")?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "{a}X^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn add(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn sub(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn mul(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ExactPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPolynomial::from_coeffs(out)
    }
}

impl Neg for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn neg(self) -> ExactPolynomial {
        ExactPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactPolynomial {
            type Output = ExactPolynomial;
            fn $m(self, rhs: ExactPolynomial) -> ExactPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Three-term recurrence `P_{n+1} = 2X P_n - P_{n-1}` from the given seeds.
fn recurrence(n: usize, p0: ExactPolynomial, p1: ExactPolynomial) -> ExactPolynomial {
    if n == 0 {
        return p0;
    }
    let two_x = ExactPolynomial::from_i64(&[0, 2]);
    let (mut prev, mut cur) = (p0, p1);
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Chebyshev polynomial of the first kind, `T_n(cos θ) = cos nθ`.
pub fn chebyshev_t(n: usize) -> ExactPolynomial {
    recurrence(n, ExactPolynomial::one(), ExactPolynomial::x())
}

/// Chebyshev polynomial of the second kind, `U_n(cos θ) sin θ = sin (n+1)θ`.
pub fn chebyshev_u(n: usize) -> ExactPolynomial {
    recurrence(n, ExactPolynomial::one(), ExactPolynomial::from_i64(&[0, 2]))
}

/// Critical points of `T_{k+2}`: `X_j = cos(jπ/(k+2))` for `j = 1..=k+1`,
/// strictly decreasing in `j`.
pub fn critical_nodes(k: usize) -> Vec<f64> {
    let h = (k + 2) as f64;
    (1..=k + 1)
        .map(|j| (j as f64 * std::f64::consts::PI / h).cos())
        .collect()
}

/// `U_n(cos θ)` through its trigonometric form; used as an oracle
/// independent of the polynomial coefficients.
pub fn chebyshev_u_trig(n: u64, theta: f64) -> f64 {
    ((n as f64 + 1.0) * theta).sin() / theta.sin()
}

/// Polynomial with double-precision coefficients (ascending degree). Only
/// used where the coefficients are irrational, e.g. interpolation at nodes.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct FloatPolynomial {
    coeffs: Vec<f64>,
}

impl FloatPolynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn mul(&self, rhs: &FloatPolynomial) -> FloatPolynomial {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return FloatPolynomial::default();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        FloatPolynomial::new(out)
    }
}
