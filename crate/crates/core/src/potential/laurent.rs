//! Laurent polynomials in two formal variables z, λ with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{int, parse_rational, to_pq, Rational};

/// A single monomial c·z^a·λ^b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTerm {
    pub z: i64,
    pub lambda: i64,
    pub coeff: Rational,
}

/// Finite map (z-exponent, λ-exponent) -> coefficient, zero coefficients never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<(i64, i64), Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(int(1), 0, 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(coeff: Rational, z: i64, lambda: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(z, lambda, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = LaurentTerm>) -> Self {
        let mut p = Self::zero();
        for t in terms {
            p.add_term(t.z, t.lambda, t.coeff);
        }
        p
    }

    fn add_term(&mut self, z: i64, lambda: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((z, lambda)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(z, lambda));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, z: i64, lambda: i64) -> Rational {
        self.terms.get(&(z, lambda)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = LaurentTerm> + '_ {
        self.terms.iter().map(|(&(z, lambda), c)| LaurentTerm {
            z,
            lambda,
            coeff: c.clone(),
        })
    }

    /// The single term, if there is exactly one.
    pub fn as_monomial(&self) -> Option<LaurentTerm> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// Inverse in the Laurent ring; exists only for monomials.
    pub fn inverse(&self) -> Option<Self> {
        let t = self.as_monomial()?;
        Some(Self::monomial(t.coeff.recip(), -t.z, -t.lambda))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// d/dz, term by term.
    pub fn derivative_z(&self) -> Self {
        let mut out = Self::zero();
        for (&(z, lambda), c) in &self.terms {
            out.add_term(z - 1, lambda, c * int(z));
        }
        out
    }

    /// Numerical evaluation at complex z, λ.
    pub fn eval(&self, z: num_complex::Complex64, lambda: num_complex::Complex64) -> num_complex::Complex64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| z.powi(a as i32) * lambda.powi(b as i32) * crate::rational::to_f64(c))
            .sum()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&(z, l), c) in &rhs.terms {
            out.add_term(z, l, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&(z, l), c) in &rhs.terms {
            out.add_term(z, l, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(z1, l1), c1) in &self.terms {
            for (&(z2, l2), c2) in &rhs.terms {
                out.add_term(z1 + z2, l1 + l2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

fn fmt_var(f: &mut fmt::Formatter<'_>, name: &str, e: i64) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "{name}"),
        _ => write!(f, "{name}^{e}"),
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in decreasing z-exponent order, e.g. `z^2 λ^-1 - 3/2 λ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(z, l), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let bare = z == 0 && l == 0;
            if !mag.is_one() || bare {
                write!(f, "{mag}")?;
                if !bare {
                    write!(f, " ")?;
                }
            }
            fmt_var(f, "z", z)?;
            if z != 0 && l != 0 {
                write!(f, " ")?;
            }
            fmt_var(f, "λ", l)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    z: i64,
    lambda: i64,
    coeff: String,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(&(z, lambda), c)| RawTerm {
            z,
            lambda,
            coeff: to_pq(c),
        }))
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<RawTerm>::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for t in raw {
            let c = parse_rational(&t.coeff).map_err(serde::de::Error::custom)?;
            p.add_term(t.z, t.lambda, c);
        }
        Ok(p)
    }
}
