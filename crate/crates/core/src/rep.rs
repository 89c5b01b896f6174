//! SU(2) representations as multiplicity data, and their passage to
//! holomorphic exponents, asymptotic data and the fusion ring.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::{reduce_u, u_class, FusionElement, UClass};
use crate::rational::int;

/// Finite direct sum `⊕ π_j^{mult(j)}` of irreducibles, `π_j = S^j(C^2)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRepresentation")]
pub struct Representation {
    #[serde(serialize_with = "serialize_mult")]
    mult: BTreeMap<u64, u64>,
}

#[derive(Deserialize)]
struct RawRepresentation {
    mult: BTreeMap<String, u64>,
}

impl TryFrom<RawRepresentation> for Representation {
    type Error = Error;
    fn try_from(raw: RawRepresentation) -> Result<Self> {
        let mut rep = Representation::zero();
        for (j, m) in raw.mult {
            let j: u64 = j
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("highest weight {j:?}")))?;
            rep.add_irrep(j, m);
        }
        Ok(rep)
    }
}

fn serialize_mult<S: serde::Serializer>(m: &BTreeMap<u64, u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(j, n)| (j.to_string(), n)))
}

impl Representation {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn irrep(j: u64) -> Self {
        let mut r = Self::zero();
        r.add_irrep(j, 1);
        r
    }

    /// Build from a list of highest weights; repeats add multiplicity.
    pub fn from_weights(weights: &[u64]) -> Self {
        let mut r = Self::zero();
        for &w in weights {
            r.add_irrep(w, 1);
        }
        r
    }

    pub fn add_irrep(&mut self, j: u64, count: u64) {
        if count > 0 {
            *self.mult.entry(j).or_insert(0) += count;
        }
    }

    pub fn multiplicity(&self, j: u64) -> u64 {
        self.mult.get(&j).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &BTreeMap<u64, u64> {
        &self.mult
    }

    pub fn highest_weight(&self) -> Option<u64> {
        self.mult.keys().next_back().copied()
    }

    pub fn dimension(&self) -> u64 {
        self.mult.iter().map(|(j, m)| (j + 1) * m).sum()
    }

    /// Clebsch-Gordan: `π_a ⊗ π_b = ⊕_{i=0}^{min(a,b)} π_{a+b-2i}`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&a, &ma) in &self.mult {
            for (&b, &mb) in &other.mult {
                for i in 0..=a.min(b) {
                    out.add_irrep(a + b - 2 * i, ma * mb);
                }
            }
        }
        out
    }
}

/// Holomorphic exponents `(l_0, ..., l_k)` of an anti-diagonal potential.
///
/// JSON form is `{"k": .., "l": [..], "n": ..}` where `n` is the common value
/// of `l_j + l_{k-j}` (or `null` when the exponents are not paired).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "HolomorphicDataJson", try_from = "HolomorphicDataJson")]
pub struct HolomorphicData {
    pub k: usize,
    pub l: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct HolomorphicDataJson {
    k: usize,
    l: Vec<f64>,
    #[serde(default)]
    n: Option<f64>,
}

impl From<HolomorphicData> for HolomorphicDataJson {
    fn from(d: HolomorphicData) -> Self {
        let n = d.normalization().ok();
        Self { k: d.k, l: d.l, n }
    }
}

impl TryFrom<HolomorphicDataJson> for HolomorphicData {
    type Error = Error;
    fn try_from(raw: HolomorphicDataJson) -> Result<Self> {
        let d = HolomorphicData::new(raw.k, raw.l)?;
        if let Some(n) = raw.n {
            let found = d.normalization()?;
            if (found - n).abs() > 1e-12 * (1.0 + n.abs()) {
                return Err(Error::PairingCondition { j: 0, mirror: d.k, sum: found, n });
            }
        }
        Ok(d)
    }
}

impl HolomorphicData {
    pub fn new(k: usize, l: Vec<f64>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidLevel(k));
        }
        if l.len() != k + 1 {
            return Err(Error::LengthMismatch {
                expected: k + 1,
                found: l.len(),
            });
        }
        Ok(Self { k, l })
    }

    pub fn from_integers(k: usize, l: &[i64]) -> Result<Self> {
        Self::new(k, l.iter().map(|&x| x as f64).collect())
    }

    /// Exponents `l_j = j`.
    pub fn special(k: usize) -> Self {
        Self {
            k,
            l: (0..=k).map(|j| j as f64).collect(),
        }
    }

    /// The common value `n = l_j + l_{k-j}` if the pairing condition holds.
    pub fn normalization(&self) -> Result<f64> {
        let n = self.l[0] + self.l[self.k];
        for j in 0..=self.k {
            let sum = self.l[j] + self.l[self.k - j];
            if (sum - n).abs() > 1e-12 * (1.0 + n.abs()) {
                return Err(Error::PairingCondition {
                    j,
                    mirror: self.k - j,
                    sum,
                    n,
                });
            }
        }
        Ok(n)
    }

    pub fn integer_exponents(&self) -> Result<Vec<u64>> {
        self.l
            .iter()
            .enumerate()
            .map(|(index, &value)| {
                if value >= 0.0 && value.fract() == 0.0 && value <= u64::MAX as f64 {
                    Ok(value as u64)
                } else {
                    Err(Error::NonIntegralExponent { index, value })
                }
            })
            .collect()
    }
}

/// Asymptotic data `(m_0, ..., m_k)`, `w_j ~ m_j log|t|` as `t → 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticData {
    pub m: Vec<f64>,
}

impl AsymptoticData {
    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|&m| m == 0.0)
    }
}

/// `dim V(j) = Σ_{h >= |j|, h ≡ j (mod 2)} mult(h)`.
pub fn weight_dimension(rep: &Representation, j: i64) -> u64 {
    let a = j.unsigned_abs();
    rep.mult
        .range(a..)
        .filter(|(h, _)| (*h - a) % 2 == 0)
        .map(|(_, m)| m)
        .sum()
}

/// `l_j = dim V(j) - dim V(j+2)` for `0 <= j <= k`.
pub fn rep_to_data(rep: &Representation, k: usize) -> Result<HolomorphicData> {
    if k == 0 {
        return Err(Error::InvalidLevel(k));
    }
    if let Some(w) = rep.highest_weight() {
        if w > k as u64 {
            return Err(Error::WeightAboveLevel { weight: w, k });
        }
    }
    let l = (0..=k as i64)
        .map(|j| (weight_dimension(rep, j) - weight_dimension(rep, j + 2)) as f64)
        .collect();
    HolomorphicData::new(k, l)
}

pub fn data_to_rep(d: &HolomorphicData) -> Result<Representation> {
    let l = d.integer_exponents()?;
    let mut rep = Representation::zero();
    for (j, &count) in l.iter().enumerate() {
        rep.add_irrep(j as u64, count);
    }
    Ok(rep)
}

/// `m_j = (2 l_j - n) / (n + 2)`.
pub fn asymptotic_data(d: &HolomorphicData, n: f64) -> Result<AsymptoticData> {
    if n <= -2.0 {
        return Err(Error::InvalidNormalization(n));
    }
    let found = d.normalization()?;
    if (found - n).abs() > 1e-12 * (1.0 + n.abs()) {
        return Err(Error::PairingCondition {
            j: 0,
            mirror: d.k,
            sum: found,
            n,
        });
    }
    for (index, &value) in d.l.iter().enumerate() {
        if value < -1.0 {
            return Err(Error::ExponentBelowMinusOne { index, value });
        }
    }
    let m: Vec<f64> = (0..=d.k)
        .map(|j| (d.l[j] - d.l[d.k - j]) / (n + 2.0))
        .collect();
    for (index, &value) in m.iter().enumerate() {
        if !(-1.0..=1.0).contains(&value) {
            return Err(Error::AsymptoticOutOfRange { index, value });
        }
    }
    Ok(AsymptoticData { m })
}

/// Image in `R_k = R(SU_2)/I_k`: `Σ_j mult(j) [U_j]`, reduced.
pub fn project_to_fusion(rep: &Representation, k: usize) -> FusionElement {
    rep.mult.iter().fold(FusionElement::zero(k), |acc, (&j, &m)| {
        acc.add(&reduce_u(k, j).scale(&int(m as i64)))
            .expect("same level")
    })
}

/// Which arithmetic branch makes two highest weights equivalent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivalenceBranch {
    /// `(a - b)/(k+2) ∈ 2Z`.
    Even,
    /// `(a + b - k)/(k+2) ∈ 2Z + 1`.
    Odd,
}

pub fn equivalence_branch(k: usize, a: i64, b: i64) -> Option<EquivalenceBranch> {
    let p = k as i64 + 2;
    if (a - b).rem_euclid(2 * p) == 0 {
        return Some(EquivalenceBranch::Even);
    }
    let s = a + b - k as i64;
    if s.rem_euclid(p) == 0 && (s / p).rem_euclid(2) == 1 {
        return Some(EquivalenceBranch::Odd);
    }
    None
}

pub fn irreps_equivalent(k: usize, a: u64, b: u64) -> bool {
    equivalence_branch(k, a as i64, b as i64).is_some()
}

/// Coordinate-level form of equality of the metric values of two irreps
/// under the data `l_j = j`: the projections are nonzero and span the same
/// basis line. `None` when either projects to the null class.
pub fn projections_equivalent(k: usize, a: u64, b: u64) -> Option<bool> {
    match (u_class(k, a), u_class(k, b)) {
        (UClass::Line { index: i, .. }, UClass::Line { index: j, .. }) => Some(i == j),
        (UClass::Null, UClass::Null) => None,
        _ => Some(false),
    }
}
