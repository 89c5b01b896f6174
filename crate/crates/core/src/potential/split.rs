//! Conjugation of a full Smyth potential into 2×2 blocks by a permutation.

use serde::{Deserialize, Serialize};

use super::gauge::{gauge, SmythPotential};
use super::matrix::LoopMatrix;
use crate::error::Result;
use crate::rational::int;

/// Row σ(a) of ξ becomes row a of DξD⁻¹: σ(2m) = m, σ(2m+1) = k−m.
pub fn permutation_indices(k: usize) -> Vec<usize> {
    (0..=k)
        .map(|a| if a % 2 == 0 { a / 2 } else { k - a / 2 })
        .collect()
}

/// The permutation matrix D with d_{a,σ(a)} = 1.
pub fn permutation_matrix(k: usize) -> LoopMatrix {
    let sigma = permutation_indices(k);
    let rows: Vec<Vec<_>> = (0..=k)
        .map(|a| (0..=k).map(|b| int(i64::from(sigma[a] == b))).collect())
        .collect();
    LoopMatrix::constant(&rows).expect("square")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSplit {
    pub k: usize,
    /// Exponent pairs (l_m, l_{k−m}) for m < k−m.
    pub blocks: Vec<(i64, i64)>,
    /// l_{k/2} when k is even.
    pub singleton: Option<i64>,
    #[serde(skip)]
    pub conjugated: Option<LoopMatrix>,
}

/// Compute ξ·D⁻¹ = DξD⁻¹ exactly and read off its diagonal blocks.
pub fn permutation_block_split(xi: &SmythPotential) -> Result<BlockSplit> {
    let k = xi.k;
    let d = permutation_matrix(k);
    let conj = gauge(&xi.to_matrix(), &d.inverse()?)?;
    let n = k + 1;
    let z_exp = |i: usize, j: usize| {
        conj.get(i, j)
            .as_monomial()
            .map(|t| t.z)
            .expect("permutation keeps each entry a monomial")
    };
    let blocks = (0..n / 2).map(|m| (z_exp(2 * m, 2 * m + 1), z_exp(2 * m + 1, 2 * m))).collect();
    let singleton = (n % 2 == 1).then(|| z_exp(n - 1, n - 1));
    debug_assert!(is_block_diagonal(&conj));
    Ok(BlockSplit {
        k,
        blocks,
        singleton,
        conjugated: Some(conj),
    })
}

/// Every nonzero entry lies in a diagonal block of rows {2m, 2m+1}.
pub fn is_block_diagonal(m: &LoopMatrix) -> bool {
    let n = m.size();
    (0..n).all(|i| (0..n).all(|j| i / 2 == j / 2 || m.get(i, j).is_zero()))
}
