//! Finite-dimensional Nichols algebras over nilpotent groups of odd order: the
//! per-class tests, compatibility of summands, and the classification driver.

mod central;
mod report;

pub use central::{central_support_check, CentralSummand, CentralSupportReport, ConditionCheck};
pub use report::{
    classify_odd_nilpotent, AbelianPair, CentralPair, ClassScan, ClassificationReport, Family,
    Realization, FAMILY_CAP, REALIZATION_CAP,
};

use serde::{Deserialize, Serialize};

use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};
use crate::grp::{Character, FiniteGroup};
use crate::ydmod::DiagonalBraiding;

fn check_pair(g: &FiniteGroup, x: usize, chi: &Character) -> Result<()> {
    if !chi.domain().contains(x) || chi.domain() != &g.centralizer(x) {
        return Err(Error::DomainMismatch(format!(
            "character is not defined on the centralizer of {}",
            g.label(x)
        )));
    }
    Ok(())
}

fn check_abelian_class(g: &FiniteGroup, members: &[usize]) -> Result<()> {
    for &a in members {
        for &b in members {
            if g.mul(a, b) != g.mul(b, a) {
                return Err(Error::Precondition(format!(
                    "class of {} is not an abelian rack",
                    g.label(members[0])
                )));
            }
        }
    }
    Ok(())
}

/// The first `h ∉ G^x` with `χ((h^{-1} ▷ x)(h ▷ x)) ≠ 1`, or `None` when the braiding of
/// `M(O_x, χ)` is diagonal with `q_ij q_ji = 1` off the diagonal.
pub fn totally_disconnected_violation(g: &FiniteGroup, x: usize, chi: &Character) -> Result<Option<usize>> {
    check_pair(g, x, chi)?;
    check_abelian_class(g, &g.class_of(x))?;
    for h in 0..g.order() {
        let y = g.conj(h, x);
        if y == x {
            continue;
        }
        let w = g.conj(g.inv(h), x);
        if !chi.at(g.mul(w, y)).is_one() {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum YzCase {
    /// `ζ = 1`: the orbit braids trivially.
    NoObstruction,
    /// The orbit spans a braided subspace of infinite GK-dimension.
    InfiniteGk,
    /// Orbit of length 2 with `ζ = q^{-1}`, or `ζ` of order 12 and `q = -ζ²`.
    RankTwoSpecial,
    /// Orbit of length 3 with `q = -1` and `ζ` of order 3.
    ThreeCycleSpecial,
}

/// The braided subspace spanned by the `⟨h⟩`-orbit `z_i = h^i ▷ x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YzReport {
    pub orbit: Vec<usize>,
    pub q: RootOfUnity,
    /// `χ(z_{-1} z_1)`.
    pub zeta: RootOfUnity,
    pub case: YzCase,
    /// `q_ij = χ(z_{i-j})`.
    pub diagram: DiagonalBraiding,
}

pub fn yz_analysis(g: &FiniteGroup, x: usize, chi: &Character, h: usize) -> Result<YzReport> {
    check_pair(g, x, chi)?;
    check_abelian_class(g, &g.class_of(x))?;
    if g.conj(h, x) == x {
        return Err(Error::Precondition(format!(
            "{} centralizes {}",
            g.label(h),
            g.label(x)
        )));
    }
    let mut orbit = vec![x];
    loop {
        let next = g.conj(h, *orbit.last().expect("nonempty"));
        if next == x {
            break;
        }
        orbit.push(next);
    }
    let n = orbit.len();
    let q = chi.at(x);
    let zeta = chi.at(g.mul(orbit[n - 1], orbit[1]));
    let q_matrix = (0..n)
        .map(|i| (0..n).map(|j| chi.at(orbit[(i + n - j) % n])).collect())
        .collect();
    let diagram = DiagonalBraiding::new(q_matrix)?;
    let case = if zeta.is_one() {
        YzCase::NoObstruction
    } else if q.is_one() {
        YzCase::InfiniteGk
    } else {
        match n {
            2 if zeta == q.inv() || (zeta.order() == 12 && q == zeta.pow(2).mul(&RootOfUnity::minus_one())) => {
                YzCase::RankTwoSpecial
            }
            3 if q == RootOfUnity::minus_one() && zeta.order() == 3 => YzCase::ThreeCycleSpecial,
            _ => YzCase::InfiniteGk,
        }
    };
    Ok(YzReport {
        orbit,
        q,
        zeta,
        case,
        diagram,
    })
}

/// `g_y` with `g_y ▷ x = y` for every `y` in the class of `x`, the smallest index first.
fn transversal(g: &FiniteGroup, x: usize) -> std::collections::BTreeMap<usize, usize> {
    let mut t = std::collections::BTreeMap::new();
    for h in 0..g.order() {
        t.entry(g.conj(h, x)).or_insert(h);
    }
    t
}

/// Whether `c² = id` on `M(O_x, χ) ⊗ M(O_{x'}, χ')` for one-dimensional fibers: the
/// classes commute elementwise and `χ'(g_z^{-1} ▷ y)·χ(g_y^{-1} ▷ z) = 1` for all
/// `y ∈ O_x`, `z ∈ O_{x'}`.
pub fn pair_compatibility(
    g: &FiniteGroup,
    (x, chi): (usize, &Character),
    (x2, chi2): (usize, &Character),
) -> Result<bool> {
    check_pair(g, x, chi)?;
    check_pair(g, x2, chi2)?;
    let t1 = transversal(g, x);
    let t2 = transversal(g, x2);
    for &y in t1.keys() {
        for &z in t2.keys() {
            if g.mul(y, z) != g.mul(z, y) {
                return Ok(false);
            }
        }
    }
    for (&y, &gy) in &t1 {
        for (&z, &gz) in &t2 {
            let a = chi2.at(g.conj(g.inv(gz), y));
            let b = chi.at(g.conj(g.inv(gy), z));
            if !a.mul(&b).is_one() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
