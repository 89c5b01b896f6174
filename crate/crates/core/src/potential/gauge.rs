//! Smyth potentials, the gauge action and explicit ladders of C± factors.

use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use super::matrix::LoopMatrix;
use crate::error::{Error, Result};
use crate::rational::int;
use crate::rep::equivalence_branch;

/// Anti-diagonal potential (1/λ)·antidiag(z^{e_0}, …, z^{e_{s-1}}) dz.
///
/// Row `i` carries `z^{e_i}/λ` in column `s-1-i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmythPotential {
    pub k: usize,
    pub exponents: Vec<i64>,
}

impl SmythPotential {
    /// The 2×2 potential ξ_j with exponents (j, k−j).
    pub fn pair(k: usize, j: i64) -> Self {
        Self {
            k,
            exponents: vec![j, k as i64 - j],
        }
    }

    /// The full (k+1)×(k+1) potential with exponents l_0..l_k.
    pub fn full(k: usize, l: Vec<i64>) -> Result<Self> {
        if l.len() != k + 1 {
            return Err(Error::LengthMismatch {
                expected: k + 1,
                found: l.len(),
            });
        }
        Ok(Self { k, exponents: l })
    }

    pub fn size(&self) -> usize {
        self.exponents.len()
    }

    pub fn to_matrix(&self) -> LoopMatrix {
        let s = self.size();
        let mut m = LoopMatrix::zeros(s);
        for (i, &e) in self.exponents.iter().enumerate() {
            m.set(i, s - 1 - i, LaurentPoly::monomial(int(1), e, -1));
        }
        m.as_one_form()
    }

    /// Recognize a 1-form as a Smyth potential: anti-diagonal unit monomials
    /// with λ-exponent −1 and nothing else.
    pub fn from_matrix(k: usize, m: &LoopMatrix) -> Option<Self> {
        let s = m.size();
        let mut exponents = Vec::with_capacity(s);
        for i in 0..s {
            for j in 0..s {
                let e = m.get(i, j);
                if i + j + 1 == s {
                    let t = e.as_monomial()?;
                    if t.lambda != -1 || !crate::rational::is_one(&t.coeff) {
                        return None;
                    }
                    exponents.push(t.z);
                } else if !e.is_zero() {
                    return None;
                }
            }
        }
        Some(Self { k, exponents })
    }
}

/// Right action ξ·C = C⁻¹ξC + C⁻¹ dC/dz on the dz-coefficient.
pub fn gauge(xi: &LoopMatrix, c: &LoopMatrix) -> Result<LoopMatrix> {
    let inv = c.inverse()?;
    let conj = inv.mul(xi)?.mul(c)?;
    let deriv = inv.mul(&c.derivative_z())?;
    Ok(conj.add(&deriv)?.as_one_form())
}

/// Arithmetic test for ξ_j ~ ξ_l; same logic as irreducible-weight equivalence.
pub fn smyth_equivalent(k: usize, j: i64, l: i64) -> bool {
    equivalence_branch(k, j, l).is_some()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LadderStep {
    /// C₋, sending ξ_j to ξ_{−j−2}.
    Minus,
    /// C₊, sending ξ_j to ξ_{2k+2−j}.
    Plus,
}

impl LadderStep {
    pub fn apply(self, k: usize, j: i64) -> i64 {
        match self {
            LadderStep::Minus => -j - 2,
            LadderStep::Plus => 2 * k as i64 + 2 - j,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            LadderStep::Minus => "C-",
            LadderStep::Plus => "C+",
        }
    }
}

/// C₋(j) = [[z^{j+1}, 0], [−(j+1)λ, z^{−j−1}]].
pub fn c_minus(j: i64) -> LoopMatrix {
    LoopMatrix::from_rows(vec![
        vec![LaurentPoly::monomial(int(1), j + 1, 0), LaurentPoly::zero()],
        vec![
            LaurentPoly::monomial(int(-(j + 1)), 0, 1),
            LaurentPoly::monomial(int(1), -j - 1, 0),
        ],
    ])
    .expect("2x2")
}

/// C₊(j) = [[z^{j−k−1}, (j−k−1)λ], [0, z^{k+1−j}]].
///
/// The off-diagonal sign is the one for which the derivative term cancels.
pub fn c_plus(k: usize, j: i64) -> LoopMatrix {
    c_plus_signed(k, j, 1)
}

/// C₊ with the opposite off-diagonal sign. Kept as a negative control: it
/// leaves a diagonal residue and does not produce a Smyth potential.
pub fn c_plus_opposite_sign(k: usize, j: i64) -> LoopMatrix {
    c_plus_signed(k, j, -1)
}

fn c_plus_signed(k: usize, j: i64, sign: i64) -> LoopMatrix {
    let e = j - k as i64 - 1;
    LoopMatrix::from_rows(vec![
        vec![
            LaurentPoly::monomial(int(1), e, 0),
            LaurentPoly::monomial(int(sign * e), 0, 1),
        ],
        vec![LaurentPoly::zero(), LaurentPoly::monomial(int(1), -e, 0)],
    ])
    .expect("2x2")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderFactor {
    pub step: LadderStep,
    /// Exponent of the potential this factor acts on.
    pub at: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeLadder {
    pub k: usize,
    pub start: i64,
    pub target: i64,
    pub factors: Vec<LadderFactor>,
    pub product: LoopMatrix,
}

impl GaugeLadder {
    /// `C- C+ …` in application order.
    pub fn word(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|f| f.step.symbol())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Multiply out a step sequence from ξ_start, recomputing each factor's
/// exponent from the current potential. Returns the product and end exponent.
pub fn ladder_product(k: usize, start: i64, steps: &[LadderStep]) -> (Vec<LadderFactor>, LoopMatrix, i64) {
    let mut j = start;
    let mut product = LoopMatrix::identity(2);
    let mut factors = Vec::with_capacity(steps.len());
    for &step in steps {
        let c = match step {
            LadderStep::Minus => c_minus(j),
            LadderStep::Plus => c_plus(k, j),
        };
        product = &product * &c;
        factors.push(LadderFactor { step, at: j });
        j = step.apply(k, j);
    }
    (factors, product, j)
}

fn repeat(pair: [LadderStep; 2], m: usize) -> Vec<LadderStep> {
    pair.iter().copied().cycle().take(2 * m).collect()
}

/// Step sequence realizing ξ_start ~ ξ_target, if the arithmetic allows it.
pub fn ladder_steps(k: usize, start: i64, target: i64) -> Result<Vec<LadderStep>> {
    use LadderStep::{Minus, Plus};
    let p = k as i64 + 2;
    let d = target - start;
    if d.rem_euclid(2 * p) == 0 {
        let m = d / (2 * p);
        return Ok(if m >= 0 {
            repeat([Minus, Plus], m as usize)
        } else {
            repeat([Plus, Minus], (-m) as usize)
        });
    }
    let s = start + target - k as i64;
    if s.rem_euclid(p) == 0 && (s / p).rem_euclid(2) == 1 {
        let q = s / p;
        return Ok(if q > 0 {
            let mut v = repeat([Plus, Minus], ((q - 1) / 2) as usize);
            v.push(Plus);
            v
        } else {
            let mut v = repeat([Minus, Plus], ((-q - 1) / 2) as usize);
            v.push(Minus);
            v
        });
    }
    Err(Error::NotReachable { k, start, target })
}

/// Build and symbolically verify a product of C± factors with
/// gauge(ξ_start, product) = ξ_target.
pub fn build_gauge_ladder(k: usize, start: i64, target: i64) -> Result<GaugeLadder> {
    let steps = ladder_steps(k, start, target)?;
    let (factors, product, end) = ladder_product(k, start, &steps);
    let gauged = gauge(&SmythPotential::pair(k, start).to_matrix(), &product)?;
    if end != target || !gauged.same_entries(&SmythPotential::pair(k, target).to_matrix()) {
        return Err(Error::LadderVerification { start, target });
    }
    Ok(GaugeLadder {
        k,
        start,
        target,
        factors,
        product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn xi(k: usize, j: i64) -> LoopMatrix {
        SmythPotential::pair(k, j).to_matrix()
    }

    #[test]
    fn identity_gauge_is_trivial() {
        let x = xi(3, 1);
        assert_eq!(gauge(&x, &LoopMatrix::identity(2)).unwrap(), x);
    }

    #[test]
    fn constant_diagonal_conjugates() {
        let c = LoopMatrix::constant(&[vec![frac(2, 1), int(0)], vec![int(0), frac(1, 2)]]).unwrap();
        let g = gauge(&xi(2, 0), &c).unwrap();
        // C⁻¹ξC scales (0,1) by c⁻², (1,0) by c²
        assert_eq!(g.get(0, 1), &LaurentPoly::monomial(frac(1, 4), 0, -1));
        assert_eq!(g.get(1, 0), &LaurentPoly::monomial(int(4), 2, -1));
        assert!(g.get(0, 0).is_zero() && g.get(1, 1).is_zero());
    }

    #[test]
    fn single_factors_move_exponents() {
        for k in 1..5usize {
            for j in -6..12i64 {
                let g = gauge(&xi(k, j), &c_minus(j)).unwrap();
                assert!(g.same_entries(&xi(k, -j - 2)), "C- k={k} j={j}");
                let g = gauge(&xi(k, j), &c_plus(k, j)).unwrap();
                assert!(g.same_entries(&xi(k, 2 * k as i64 + 2 - j)), "C+ k={k} j={j}");
            }
        }
    }

    #[test]
    fn unit_determinants() {
        for j in -3..6 {
            assert_eq!(c_minus(j).determinant(), LaurentPoly::one());
            assert_eq!(c_plus(2, j).determinant(), LaurentPoly::one());
            assert_eq!(c_plus_opposite_sign(2, j).determinant(), LaurentPoly::one());
        }
    }

    #[test]
    fn opposite_sign_leaves_diagonal_term() {
        // j = k+1 makes the off-diagonal vanish, so skip it
        for j in [0i64, 1, 2, 5] {
            let g = gauge(&xi(2, j), &c_plus_opposite_sign(2, j)).unwrap();
            assert!(SmythPotential::from_matrix(2, &g).is_none(), "j={j}");
            assert!(!g.get(0, 0).is_zero());
        }
    }

    #[test]
    fn ladder_examples() {
        let l = build_gauge_ladder(1, 0, 0).unwrap();
        assert!(l.factors.is_empty());
        assert_eq!(l.product, LoopMatrix::identity(2));

        let l = build_gauge_ladder(1, 0, 6).unwrap();
        assert_eq!(l.factors.len(), 2);
        assert_eq!(l.word(), "C- C+");

        let l = build_gauge_ladder(2, 1, -3).unwrap();
        assert_eq!(l.word(), "C-");
    }

    #[test]
    fn unreachable() {
        assert!(!smyth_equivalent(1, 0, 3));
        assert!(smyth_equivalent(1, 0, 6));
        assert!(matches!(
            build_gauge_ladder(1, 0, 3),
            Err(Error::NotReachable { .. })
        ));
    }

    #[test]
    fn recognizes_potentials() {
        let x = SmythPotential::full(3, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(SmythPotential::from_matrix(3, &x.to_matrix()), Some(x));
    }
}
