//! Square matrices over the Laurent ring Q[z, z⁻¹, λ, λ⁻¹].

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopMatrix {
    size: usize,
    entries: Vec<LaurentPoly>,
    /// When set, the matrix is the dz-coefficient of a 1-form.
    #[serde(default)]
    one_form: bool,
}

impl LoopMatrix {
    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            entries: vec![LaurentPoly::zero(); size * size],
            one_form: false,
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for r in rows {
            if r.len() != size {
                return Err(Error::DimensionMismatch(size, r.len()));
            }
            entries.extend(r);
        }
        Ok(Self {
            size,
            entries,
            one_form: false,
        })
    }

    /// Constant matrix from rational entries.
    pub fn constant(rows: &[Vec<Rational>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().cloned().map(LaurentPoly::constant).collect())
                .collect(),
        )
    }

    pub fn as_one_form(mut self) -> Self {
        self.one_form = true;
        self
    }

    pub fn is_one_form(&self) -> bool {
        self.one_form
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.size + j] = v;
    }

    fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self {
            size: self.size,
            entries: self.entries.iter().map(f).collect(),
            one_form: self.one_form,
        }
    }

    pub fn derivative_z(&self) -> Self {
        self.map(LaurentPoly::derivative_z)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_size(rhs)?;
        Ok(Self {
            size: self.size,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
            one_form: self.one_form || rhs.one_form,
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_size(rhs)?;
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(l, j);
                    if !b.is_zero() {
                        let idx = i * n + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        out.one_form = self.one_form || rhs.one_form;
        Ok(out)
    }

    fn check_size(&self, rhs: &Self) -> Result<()> {
        if self.size != rhs.size {
            return Err(Error::DimensionMismatch(self.size, rhs.size));
        }
        Ok(())
    }

    /// Determinant of the submatrix on the given rows and columns.
    ///
    /// Dynamic programming over column subsets; rows are consumed in order.
    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> LaurentPoly {
        let n = rows.len();
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut dp = vec![LaurentPoly::zero(); 1 << n];
        dp[0] = LaurentPoly::one();
        for mask in 0usize..(1 << n) {
            if dp[mask].is_zero() || mask.count_ones() as usize == n {
                continue;
            }
            let row = rows[mask.count_ones() as usize];
            for c in 0..n {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let e = self.get(row, cols[c]);
                if e.is_zero() {
                    continue;
                }
                // inversions gained: already-used columns to the right of c
                let above = (mask >> (c + 1)).count_ones();
                let term = &dp[mask] * e;
                let next = mask | (1 << c);
                dp[next] = if above % 2 == 0 {
                    &dp[next] + &term
                } else {
                    &dp[next] - &term
                };
            }
        }
        dp.pop().unwrap()
    }

    pub fn determinant(&self) -> LaurentPoly {
        let all: Vec<usize> = (0..self.size).collect();
        self.minor_det(&all, &all)
    }

    /// Inverse via the adjugate; requires the determinant to be a unit monomial.
    pub fn inverse(&self) -> Result<Self> {
        if let Some(inv) = self.monomial_inverse() {
            return Ok(inv);
        }
        let det = self.determinant();
        let inv_det = det
            .inverse()
            .ok_or_else(|| Error::NotInvertible(det.to_string()))?;
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let mut cof = self.minor_det(&rows, &cols);
                if (i + j) % 2 == 1 {
                    cof = -&cof;
                }
                out.set(i, j, &cof * &inv_det);
            }
        }
        Ok(out)
    }

    /// Direct inverse when each row and column holds exactly one monomial.
    fn monomial_inverse(&self) -> Option<Self> {
        let n = self.size;
        let mut out = Self::zeros(n);
        let mut col_used = vec![false; n];
        for i in 0..n {
            let mut hit = None;
            for j in 0..n {
                if !self.get(i, j).is_zero() {
                    if hit.is_some() || col_used[j] {
                        return None;
                    }
                    hit = Some(j);
                }
            }
            let j = hit?;
            col_used[j] = true;
            out.set(j, i, self.get(i, j).inverse()?);
        }
        Some(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn transpose(&self) -> Self {
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(j, i).clone());
            }
        }
        out.one_form = self.one_form;
        out
    }

    /// Entries as rows, for inspection.
    pub fn rows(&self) -> Vec<Vec<LaurentPoly>> {
        self.entries.chunks(self.size).map(|c| c.to_vec()).collect()
    }

    /// Equality of entries, ignoring the 1-form flag.
    pub fn same_entries(&self, other: &Self) -> bool {
        self.size == other.size && self.entries == other.entries
    }
}

impl Mul for &LoopMatrix {
    type Output = LoopMatrix;
    fn mul(self, rhs: &LoopMatrix) -> LoopMatrix {
        LoopMatrix::mul(self, rhs).expect("size mismatch in loop-matrix product")
    }
}

impl fmt::Display for LoopMatrix {
    /// Monomial grid with padded columns; 1-forms get a trailing `dz`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let n = self.size;
        let widths: Vec<usize> = (0..n)
            .map(|j| (0..n).map(|i| cells[i * n + j].chars().count()).max().unwrap_or(1))
            .collect();
        for i in 0..n {
            write!(f, "[ ")?;
            for j in 0..n {
                let c = &cells[i * n + j];
                let pad = widths[j] - c.chars().count();
                write!(f, "{c}{}", " ".repeat(pad))?;
                if j + 1 < n {
                    write!(f, " | ")?;
                }
            }
            write!(f, " ]")?;
            if self.one_form && i + 1 == n {
                write!(f, " dz")?;
            }
            if i + 1 < n {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}
