//! The level-`k` fusion ring `R_k = C[X]/(dT_{k+2}/dX)`.
//!
//! Elements are stored canonically as coordinate vectors over the classes
//! `[U_0], ..., [U_k]` of Chebyshev polynomials of the second kind. Every ring
//! operation reduces to `O(k)` coordinate manipulations:
//!
//! * `U_a U_b = Σ_{i=0}^{min(a,b)} U_{a+b-2i}` followed by [`reduce_u`],
//! * multiplication by `T_{k+2}` reverses the coordinates with a sign flip,
//! * the residue pairing is anti-diagonal with entries `1/(2(k+2))`.
//!
//! Node values `X_j = cos(jπ/(k+2))` are irrational, so everything touching
//! them (the residue node sum, the point basis) lives in double precision and
//! serves as a cross-check of the exact layer.

use std::f64::consts::PI;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chebyshev::{chebyshev_t, chebyshev_u, critical_nodes, ExactPolynomial, FloatPolynomial};
use crate::error::{Error, Result};
use crate::rational::{frac, int, is_one, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFusionElement")]
pub struct FusionElement {
    k: usize,
    #[serde(with = "crate::rational::pq_vec")]
    coords: Vec<Rational>,
}

#[derive(Deserialize)]
struct RawFusionElement {
    k: usize,
    #[serde(with = "crate::rational::pq_vec")]
    coords: Vec<Rational>,
}

impl TryFrom<RawFusionElement> for FusionElement {
    type Error = Error;
    fn try_from(raw: RawFusionElement) -> Result<Self> {
        FusionElement::new(raw.k, raw.coords)
    }
}

impl FusionElement {
    pub fn new(k: usize, coords: Vec<Rational>) -> Result<Self> {
        check_level(k)?;
        if coords.len() != k + 1 {
            return Err(Error::LengthMismatch {
                expected: k + 1,
                found: coords.len(),
            });
        }
        Ok(Self { k, coords })
    }

    pub fn zero(k: usize) -> Self {
        Self {
            k,
            coords: vec![Rational::zero(); k + 1],
        }
    }

    /// The class `[U_i]`, `i <= k`.
    pub fn basis(k: usize, i: usize) -> Self {
        assert!(i <= k, "basis index {i} exceeds level {k}");
        let mut e = Self::zero(k);
        e.coords[i] = int(1);
        e
    }

    pub fn level(&self) -> usize {
        self.k
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_level(self, other)?;
        Ok(Self {
            k: self.k,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            k: self.k,
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += b * c;
        }
    }

    /// Values of a representative at the nodes `X_1..X_{k+1}`, computed from
    /// the trigonometric form of `U_i`.
    pub fn node_values(&self) -> Vec<f64> {
        let h = (self.k + 2) as f64;
        (1..=self.k + 1)
            .map(|j| {
                let theta = j as f64 * PI / h;
                self.coords
                    .iter()
                    .enumerate()
                    .map(|(i, c)| crate::rational::to_f64(c) * crate::chebyshev::chebyshev_u_trig(i as u64, theta))
                    .sum()
            })
            .collect()
    }
}

impl fmt::Display for FusionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let a = c.abs();
            if is_one(&a) {
                write!(f, "[U_{i}]")?;
            } else {
                write!(f, "{a}[U_{i}]")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn check_level(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidLevel(k))
    } else {
        Ok(())
    }
}

fn same_level(a: &FusionElement, b: &FusionElement) -> Result<()> {
    if a.k == b.k {
        Ok(())
    } else {
        Err(Error::LevelMismatch(a.k, b.k))
    }
}

/// Class of `U_n` in `R_k`, before it is turned into coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UClass {
    /// `n ≡ k+1 (mod k+2)`: the class vanishes.
    Null,
    /// `sign · [U_index]`.
    Line { index: usize, sign: i8 },
}

/// Writes `n = α(k+2) + β` with `0 <= β <= k+1` and returns `0` if
/// `β = k+1`, `[U_β]` if `α` is even and `-[U_{k-β}]` if `α` is odd.
pub fn u_class(k: usize, n: u64) -> UClass {
    let period = (k + 2) as u64;
    let alpha = n / period;
    let beta = (n % period) as usize;
    if beta == k + 1 {
        UClass::Null
    } else if alpha % 2 == 0 {
        UClass::Line { index: beta, sign: 1 }
    } else {
        UClass::Line {
            index: k - beta,
            sign: -1,
        }
    }
}

pub fn reduce_u(k: usize, n: u64) -> FusionElement {
    let mut e = FusionElement::zero(k);
    if let UClass::Line { index, sign } = u_class(k, n) {
        e.coords[index] = int(sign as i64);
    }
    e
}

/// Exact expansion of `p` over the (infinite) basis `U_0, U_1, ...`.
///
/// The monomial-to-Chebyshev matrix is triangular with diagonal `2^n`, so the
/// expansion peels off the leading term one degree at a time.
pub fn u_expansion(p: &ExactPolynomial) -> Vec<Rational> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    let mut rest = p.clone();
    let mut out = vec![Rational::zero(); deg + 1];
    for n in (0..=deg).rev() {
        let lead = rest.coeff(n);
        if lead.is_zero() {
            continue;
        }
        let u = chebyshev_u(n);
        let c = lead / u.leading_coefficient().expect("U_n is nonzero");
        rest = &rest - &u.scale(&c);
        out[n] = c;
    }
    debug_assert!(rest.is_zero());
    out
}

pub fn from_polynomial(k: usize, p: &ExactPolynomial) -> FusionElement {
    let mut e = FusionElement::zero(k);
    for (n, c) in u_expansion(p).iter().enumerate() {
        if !c.is_zero() {
            e.add_scaled(&reduce_u(k, n as u64), c);
        }
    }
    e
}

pub fn fusion_product(a: &FusionElement, b: &FusionElement) -> Result<FusionElement> {
    same_level(a, b)?;
    let k = a.k;
    // Accumulate over unreduced U_n first; degrees never exceed 2k.
    let mut unreduced = vec![Rational::zero(); 2 * k + 1];
    for (i, x) in a.coords.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coords.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let xy = x * y;
            for t in 0..=i.min(j) {
                unreduced[i + j - 2 * t] += &xy;
            }
        }
    }
    let mut out = FusionElement::zero(k);
    for (n, c) in unreduced.iter().enumerate() {
        if !c.is_zero() {
            out.add_scaled(&reduce_u(k, n as u64), c);
        }
    }
    Ok(out)
}

/// Multiplication by `T_{k+2}`: `(a_0, ..., a_k) ↦ (-a_k, ..., -a_0)`.
pub fn apply_c(a: &FusionElement) -> FusionElement {
    FusionElement {
        k: a.k,
        coords: a.coords.iter().rev().map(|c| -c).collect(),
    }
}

/// Grothendieck residue pairing, `Σ_j a_j b_{k-j} / (2(k+2))`.
pub fn pairing(a: &FusionElement, b: &FusionElement) -> Result<Rational> {
    same_level(a, b)?;
    let k = a.k;
    let sum = (0..=k).fold(Rational::zero(), |acc, j| acc + &a.coords[j] * &b.coords[k - j]);
    Ok(sum * frac(1, 2 * (k as i64 + 2)))
}

/// Node-sum form of the residue pairing,
/// `Σ_j a(X_j) b(X_j) / T''_{k+2}(X_j)`, in double precision.
pub fn pairing_by_residue(k: usize, a: &ExactPolynomial, b: &ExactPolynomial) -> f64 {
    let second = chebyshev_t(k + 2).derivative().derivative();
    critical_nodes(k)
        .into_iter()
        .map(|x| a.eval_f64(x) * b.eval_f64(x) / second.eval_f64(x))
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    U,
    Monomial,
    Point,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MatrixEntries {
    Exact(Vec<Vec<Rational>>),
    Float(Vec<Vec<f64>>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairingMatrix {
    pub k: usize,
    pub basis: Basis,
    pub entries: MatrixEntries,
}

impl PairingMatrix {
    /// The pairing of the normalized frame `√(2(k+2)) [U_j]`, i.e. the
    /// residue Gram matrix times `2(k+2)`. In this normalization the
    /// `U`-basis Gram matrix is the exchange matrix.
    pub fn frame_normalized(&self) -> PairingMatrix {
        let s = 2.0 * (self.k as f64 + 2.0);
        let entries = match &self.entries {
            MatrixEntries::Exact(m) => {
                let f = int(2 * (self.k as i64 + 2));
                MatrixEntries::Exact(m.iter().map(|r| r.iter().map(|x| x * &f).collect()).collect())
            }
            MatrixEntries::Float(m) => {
                MatrixEntries::Float(m.iter().map(|r| r.iter().map(|x| x * s).collect()).collect())
            }
        };
        PairingMatrix {
            k: self.k,
            basis: self.basis,
            entries,
        }
    }

    pub fn exact(&self) -> Option<&Vec<Vec<Rational>>> {
        match &self.entries {
            MatrixEntries::Exact(m) => Some(m),
            MatrixEntries::Float(_) => None,
        }
    }

    pub fn float(&self) -> Vec<Vec<f64>> {
        match &self.entries {
            MatrixEntries::Exact(m) => m
                .iter()
                .map(|r| r.iter().map(crate::rational::to_f64).collect())
                .collect(),
            MatrixEntries::Float(m) => m.clone(),
        }
    }
}

/// Residue Gram matrix of `R_k` in the requested basis.
pub fn gram_matrix(k: usize, basis: Basis) -> Result<PairingMatrix> {
    check_level(k)?;
    let entries = match basis {
        Basis::U => {
            let e: Vec<_> = (0..=k).map(|i| FusionElement::basis(k, i)).collect();
            MatrixEntries::Exact(exact_gram(&e)?)
        }
        Basis::Monomial => {
            let e: Vec<_> = (0..=k)
                .map(|i| from_polynomial(k, &ExactPolynomial::monomial(int(1), i)))
                .collect();
            MatrixEntries::Exact(exact_gram(&e)?)
        }
        Basis::Point => {
            let coords: Vec<Vec<f64>> = point_basis(k).iter().map(float_u_coordinates(k)).collect();
            let s = 1.0 / (2.0 * (k as f64 + 2.0));
            MatrixEntries::Float(
                coords
                    .iter()
                    .map(|a| {
                        coords
                            .iter()
                            .map(|b| (0..=k).map(|j| a[j] * b[k - j]).sum::<f64>() * s)
                            .collect()
                    })
                    .collect(),
            )
        }
    };
    Ok(PairingMatrix { k, basis, entries })
}

fn exact_gram(elems: &[FusionElement]) -> Result<Vec<Vec<Rational>>> {
    elems
        .iter()
        .map(|a| elems.iter().map(|b| pairing(a, b)).collect())
        .collect()
}

/// Lagrange interpolation polynomials `L_1..L_{k+1}` at the nodes,
/// `L_j(X_l) = δ_{jl}`.
pub fn point_basis(k: usize) -> Vec<FloatPolynomial> {
    let nodes = critical_nodes(k);
    (0..nodes.len())
        .map(|j| {
            let mut p = FloatPolynomial::new(vec![1.0]);
            for (l, &x) in nodes.iter().enumerate() {
                if l != j {
                    let d = nodes[j] - x;
                    p = p.mul(&FloatPolynomial::new(vec![-x / d, 1.0 / d]));
                }
            }
            p
        })
        .collect()
}

/// Float analogue of [`from_polynomial`]: `U`-coordinates of the class of a
/// polynomial of degree `<= k` (higher degrees are reduced through
/// [`reduce_u`]).
pub fn float_u_coordinates(k: usize) -> impl Fn(&FloatPolynomial) -> Vec<f64> {
    move |p: &FloatPolynomial| {
        let mut rest = p.coeffs().to_vec();
        let mut out = vec![0.0; k + 1];
        for n in (0..rest.len()).rev() {
            if rest[n] == 0.0 {
                continue;
            }
            let u = chebyshev_u(n).to_float();
            let c = rest[n] / u.coeffs()[n];
            for (r, uc) in rest.iter_mut().zip(u.coeffs()) {
                *r -= c * uc;
            }
            rest[n] = 0.0;
            if let UClass::Line { index, sign } = u_class(k, n as u64) {
                out[index] += sign as f64 * c;
            }
        }
        out
    }
}

/// Matrix of `C` on the point basis: column `j` holds the node values of
/// `C[L_j]`, with `C` applied through the `U`-coordinate route.
pub fn point_c_matrix(k: usize) -> Vec<Vec<f64>> {
    let to_u = float_u_coordinates(k);
    let h = (k + 2) as f64;
    let columns: Vec<Vec<f64>> = point_basis(k)
        .iter()
        .map(|l| {
            let u: Vec<f64> = to_u(l);
            let cu: Vec<f64> = u.iter().rev().map(|c| -c).collect();
            (1..=k + 1)
                .map(|node| {
                    let theta = node as f64 * PI / h;
                    cu.iter()
                        .enumerate()
                        .map(|(i, c)| c * crate::chebyshev::chebyshev_u_trig(i as u64, theta))
                        .sum()
                })
                .collect()
        })
        .collect();
    (0..=k)
        .map(|row| (0..=k).map(|col| columns[col][row]).collect())
        .collect()
}

/// `[U_i][U_j]` for all `0 <= i, j <= k`.
pub fn multiplication_table(k: usize) -> Result<Vec<Vec<FusionElement>>> {
    check_level(k)?;
    (0..=k)
        .map(|i| {
            (0..=k)
                .map(|j| fusion_product(&FusionElement::basis(k, i), &FusionElement::basis(k, j)))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords(k: usize, v: &[(i64, i64)]) -> FusionElement {
        FusionElement::new(k, v.iter().map(|&(p, q)| frac(p, q)).collect()).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_u(3, 2), FusionElement::basis(3, 2));
        assert!(reduce_u(1, 2).is_zero());
        assert_eq!(reduce_u(2, 5), coords(2, &[(0, 1), (-1, 1), (0, 1)]));
    }

    #[test]
    fn from_polynomial_examples() {
        assert_eq!(from_polynomial(2, &ExactPolynomial::one()), FusionElement::basis(2, 0));
        let x2 = ExactPolynomial::monomial(int(1), 2);
        assert_eq!(from_polynomial(2, &x2), coords(2, &[(1, 4), (0, 1), (1, 4)]));
        let gen = chebyshev_t(4).derivative();
        assert!(from_polynomial(2, &gen).is_zero());
    }

    #[test]
    fn product_examples() {
        let b = coords(3, &[(1, 2), (-3, 1), (0, 1), (7, 5)]);
        assert_eq!(fusion_product(&FusionElement::basis(3, 0), &b).unwrap(), b);
        let u1 = FusionElement::basis(1, 1);
        assert_eq!(fusion_product(&u1, &u1).unwrap(), FusionElement::basis(1, 0));
        let p = fusion_product(&FusionElement::basis(2, 1), &FusionElement::basis(2, 2)).unwrap();
        assert_eq!(p, FusionElement::basis(2, 1));
    }

    #[test]
    fn product_matches_node_values() {
        // [a] = [b] iff they agree at every node.
        for k in 1..=6 {
            for i in 0..=k {
                for j in 0..=k {
                    let a = FusionElement::basis(k, i);
                    let b = FusionElement::basis(k, j);
                    let p = fusion_product(&a, &b).unwrap();
                    let (va, vb, vp) = (a.node_values(), b.node_values(), p.node_values());
                    for n in 0..=k {
                        assert!((va[n] * vb[n] - vp[n]).abs() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn level_mismatch_is_an_error() {
        let a = FusionElement::basis(1, 0);
        let b = FusionElement::basis(2, 0);
        assert_eq!(fusion_product(&a, &b), Err(Error::LevelMismatch(1, 2)));
        assert_eq!(pairing(&a, &b), Err(Error::LevelMismatch(1, 2)));
        assert!(FusionElement::new(2, vec![int(1)]).is_err());
        assert!(FusionElement::new(0, vec![int(1)]).is_err());
    }

    #[test]
    fn c_examples() {
        let e0 = FusionElement::basis(2, 0);
        assert_eq!(apply_c(&e0), FusionElement::basis(2, 2).scale(&int(-1)));
        let e1 = FusionElement::basis(2, 1);
        assert_eq!(apply_c(&e1), e1.scale(&int(-1)));
        let a = coords(3, &[(1, 2), (-3, 1), (0, 1), (7, 5)]);
        assert_eq!(apply_c(&apply_c(&a)), a);
    }

    #[test]
    fn c_agrees_with_multiplication_by_t() {
        for k in 1..=8 {
            let t = from_polynomial(k, &chebyshev_t(k + 2));
            for i in 0..=k {
                let e = FusionElement::basis(k, i);
                assert_eq!(fusion_product(&t, &e).unwrap(), apply_c(&e));
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let p = |k, i, j| pairing(&FusionElement::basis(k, i), &FusionElement::basis(k, j)).unwrap();
        assert_eq!(p(2, 0, 2), frac(1, 8));
        assert_eq!(p(2, 0, 0), frac(0, 1));
        assert_eq!(p(3, 1, 2), frac(1, 10));
    }

    #[test]
    fn residue_examples() {
        let x = ExactPolynomial::x();
        let exact = pairing(&from_polynomial(2, &x), &from_polynomial(2, &x)).unwrap();
        assert_eq!(exact, frac(1, 32));
        assert!((pairing_by_residue(2, &x, &x) - 1.0 / 32.0).abs() < 1e-12);

        let gen = chebyshev_t(5).derivative();
        let b = ExactPolynomial::from_i64(&[3, -1, 2]);
        assert!(pairing_by_residue(3, &gen, &b).abs() < 1e-12);
    }

    #[test]
    fn monomial_gram_at_level_two() {
        let g = gram_matrix(2, Basis::Monomial).unwrap();
        let residue = g.exact().unwrap().clone();
        let expect_residue: Vec<Vec<Rational>> = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(|(j, _)| match (i, j) {
                        (0, 2) | (2, 0) | (1, 1) => frac(1, 32),
                        (2, 2) => frac(1, 64),
                        _ => frac(0, 1),
                    })
                    .collect()
            })
            .collect();
        assert_eq!(residue, expect_residue);
        // residue route agrees
        for i in 0..3 {
            for j in 0..3 {
                let xi = ExactPolynomial::monomial(int(1), i);
                let xj = ExactPolynomial::monomial(int(1), j);
                let v = pairing_by_residue(2, &xi, &xj);
                assert!((v - crate::rational::to_f64(&residue[i][j])).abs() < 1e-12);
            }
        }
        let framed = g.frame_normalized();
        let two_eighths = frac(2, 8);
        let m = framed.exact().unwrap();
        assert_eq!(m[0][2], two_eighths);
        assert_eq!(m[1][1], two_eighths);
        assert_eq!(m[2][2], frac(1, 8));
    }

    #[test]
    fn point_basis_examples() {
        let l = point_basis(1);
        assert!((l[0].eval(0.5) - 1.0).abs() < 1e-15);
        assert!(l[0].eval(-0.5).abs() < 1e-15);

        let c = point_c_matrix(2);
        let expect = [-1.0, 1.0, -1.0];
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { expect[i] } else { 0.0 };
                assert!((c[i][j] - e).abs() < 1e-10, "{i},{j}: {}", c[i][j]);
            }
        }
        let g = gram_matrix(2, Basis::Point).unwrap().float();
        assert!((g[0][0] - 1.0 / 32.0).abs() < 1e-12);
    }

    #[test]
    fn point_gram_formula() {
        for k in 1..=8 {
            let g = gram_matrix(k, Basis::Point).unwrap().float();
            let h = (k + 2) as f64;
            for j in 1..=k + 1 {
                for l in 1..=k + 1 {
                    let expect = if j == l {
                        let sign = if (j + 1) % 2 == 0 { 1.0 } else { -1.0 };
                        sign * (j as f64 * PI / h).sin() * (l as f64 * PI / h).sin() / (h * h)
                    } else {
                        0.0
                    };
                    assert!((g[j - 1][l - 1] - expect).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let e = coords(2, &[(1, 4), (0, 1), (-1, 4)]);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"k":2,"coords":["1/4","0/1","-1/4"]}"#);
        let back: FusionElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<FusionElement>(r#"{"k":2,"coords":["1/4"]}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(reduce_u(2, 5).to_string(), "-[U_1]");
        assert_eq!(FusionElement::basis(1, 0).to_string(), "[U_0]");
        assert_eq!(FusionElement::zero(2).to_string(), "0");
        assert_eq!(coords(2, &[(1, 4), (0, 1), (-1, 4)]).to_string(), "1/4[U_0] - 1/4[U_2]");
    }
}
