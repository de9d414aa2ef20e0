//! Degreewise dimensions of Nichols algebras through quantum symmetrizers, and
//! symbolic finiteness verdicts for the diagonal braidings met along the way.

mod roots;
mod symmetrizer;
mod verdict;

pub use roots::{cartan_matrix, positive_roots, root_label};
pub use symmetrizer::{
    lift_along_word, matsumoto_lift, quantum_symmetrizer, reduced_word, reduced_word_last_descent,
    symmetrizer_dim_cap, symmetrizer_rank, tensor_power_dim, word_to_permutation,
    DEFAULT_SYMMETRIZER_DIM_CAP, MAX_SYMMETRIZER_DEGREE,
};
pub use verdict::{
    constant_q_verdict, diagonal_verdict, hv_exclusion, hv_rule, rank_one_verdict, type_c_verdict,
    Assumption, Axis, HvOutcome, Verdict, ALLOWED_NONTRIVIAL_PAIRS,
};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ydmod::BraidedVectorSpace;

/// `dims[n] = dim B^n(V)` for `n ≤ max_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimProfile {
    pub dim: usize,
    pub dims: Vec<u64>,
    pub max_degree: usize,
    /// First computed degree with `dims[n] = 0`.
    pub vanishing_degree: Option<usize>,
    /// Top degree predicted by a recognized pattern, when one applies.
    pub predicted_top_degree: Option<u64>,
    /// `Σ dims`, set only when a computed zero lies above the predicted top degree.
    pub certified_total: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braiding: Option<String>,
}

impl DimProfile {
    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }
}

/// Computes `dims[0..=max_degree]`; certification needs the braiding to be diagonal
/// with a recognized finite pattern.
pub fn dim_profile(c: &BraidedVectorSpace, max_degree: usize) -> Result<DimProfile> {
    for n in 0..=max_degree {
        tensor_power_dim(c.dim(), n)?;
    }
    let dims = (0..=max_degree)
        .map(|n| symmetrizer_rank(c, n).map(|r| r as u64))
        .collect::<Result<Vec<u64>>>()?;
    let vanishing_degree = dims.iter().position(|&x| x == 0);
    let predicted_top_degree = c.diagonal().and_then(|q| diagonal_verdict(&q).top_degree);
    let certified_total = match (vanishing_degree, predicted_top_degree) {
        (Some(z), Some(t)) if (z as u64) > t => Some(dims.iter().sum()),
        _ => None,
    };
    Ok(DimProfile {
        dim: c.dim(),
        dims,
        max_degree,
        vanishing_degree,
        predicted_top_degree,
        certified_total,
        braiding: c.provenance().map(str::to_string),
    })
}
