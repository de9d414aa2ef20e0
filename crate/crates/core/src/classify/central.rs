use serde::{Deserialize, Serialize};

use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};
use crate::grp::FiniteGroup;
use crate::nichols::{constant_q_verdict, diagonal_verdict, Assumption, Axis, Verdict};
use crate::ydmod::{DiagonalBraiding, Representation};

/// `g ⊗ W` with `g` central and `W` a representation of the whole group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralSummand {
    pub element: usize,
    pub rep: Representation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub condition: String,
    /// `None` when the check cannot decide.
    pub holds: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralSupportReport {
    /// Summands of dimension one.
    pub points: Vec<usize>,
    /// Summands of dimension at least two.
    pub blocks: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point_braiding: Option<DiagonalBraiding>,
    pub checks: Vec<ConditionCheck>,
    pub verdict: Verdict,
}

/// `η_i(h)`, the scalar by which a central `h` acts on summand `i`.
fn eta(g: &FiniteGroup, s: &CentralSummand, h: usize) -> Result<RootOfUnity> {
    match &s.rep {
        Representation::Character(c) => Ok(c.at(h)),
        Representation::Monomial(m) => m.matrix(h).as_scalar().ok_or_else(|| {
            Error::Precondition(format!("{} does not act by a scalar", g.label(h)))
        }),
    }
}

fn check(condition: &str, holds: Option<bool>, detail: impl Into<String>) -> ConditionCheck {
    ConditionCheck {
        condition: condition.into(),
        holds,
        detail: detail.into(),
    }
}

/// Decides the GK-dimension of `B(⊕ g_i ⊗ W_i)` for central `g_i`, one condition at a
/// time: the point sector, the blocks on their own, and the cross terms between them.
pub fn central_support_check(g: &FiniteGroup, summands: &[CentralSummand]) -> Result<CentralSupportReport> {
    let whole = crate::grp::Subgroup::whole(g);
    for s in summands {
        if !g.center().contains(s.element) {
            return Err(Error::NotCentral);
        }
        if s.rep.as_monomial().domain() != &whole {
            return Err(Error::DomainMismatch("summand is not a representation of the group".into()));
        }
    }
    let n = summands.len();
    let mut e = vec![vec![RootOfUnity::one(); n]; n];
    for (i, s) in summands.iter().enumerate() {
        for (j, t) in summands.iter().enumerate() {
            e[i][j] = eta(g, s, t.element)?;
        }
    }
    // cross[i][j] = η_i(g_j) η_j(g_i)
    let cross = |i: usize, j: usize| e[i][j].mul(&e[j][i]);
    let (points, blocks): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| summands[i].rep.dim() == 1);
    let mut checks = Vec::new();

    let point_braiding = (!points.is_empty()).then(|| {
        let q = points
            .iter()
            .map(|&i| points.iter().map(|&j| e[j][i]).collect())
            .collect();
        DiagonalBraiding::new(q).expect("square")
    });
    let point_verdict = point_braiding.as_ref().map(diagonal_verdict);
    if let Some(v) = &point_verdict {
        let holds = match v.gk {
            Axis::Finite(_) => Some(true),
            Axis::Infinite => Some(false),
            Axis::Unknown => None,
        };
        checks.push(check("point_sector", holds, v.to_string()));
    }

    let mut block_verdicts = Vec::new();
    for &i in &blocks {
        let v = constant_q_verdict(e[i][i], summands[i].rep.dim());
        let order = e[i][i].order();
        let holds = order <= 3 && v.gk.is_finite();
        checks.push(check(
            "block_scalar",
            Some(holds),
            format!("summand {i}: η = {}, dim {}: {v}", e[i][i], summands[i].rep.dim()),
        ));
        block_verdicts.push(v);
    }

    let mut exception_used = false;
    let mut cross_trivial = true;
    for (a, &i) in blocks.iter().enumerate() {
        for &j in &blocks[a + 1..] {
            let c = cross(i, j);
            cross_trivial &= c.is_one();
            let trivial_involved = e[i][i].is_one() || e[j][j].is_one();
            let name = if trivial_involved { "trivial_block_cross" } else { "block_pair" };
            checks.push(check(name, Some(c.is_one()), format!("summands {i}, {j}: {c}")));
        }
        for &k in &points {
            let c = cross(i, k);
            cross_trivial &= c.is_one();
            let ei = e[i][i];
            let detail = format!("summands {i}, {k}: {c}");
            if ei.is_one() {
                checks.push(check("trivial_block_cross", Some(c.is_one()), detail));
            } else if ei.order() == 3 {
                let isolated_sign = e[k][k] == RootOfUnity::minus_one()
                    && points.iter().all(|&l| l == k || cross(k, l).is_one());
                let holds = c.is_one() || (isolated_sign && c == ei.pow(2));
                exception_used |= !c.is_one() && holds;
                checks.push(check("cube_root_block_points", Some(holds), detail));
            } else if ei == RootOfUnity::minus_one() {
                let holds = if c.is_one() {
                    Some(true)
                } else if matches!(summands[i].rep.dim(), 2 | 3) {
                    None
                } else {
                    Some(false)
                };
                checks.push(check("sign_block_points", holds, detail));
            }
        }
    }

    let verdict = if checks.iter().any(|c| c.holds == Some(false)) {
        Verdict::infinite_gk("central support: a braided subspace has infinite GK-dimension")
    } else if checks.iter().any(|c| c.holds.is_none()) {
        Verdict::unknown("central support: a case outside the encoded conditions")
    } else {
        let parts: Vec<&Verdict> = point_verdict.iter().chain(&block_verdicts).collect();
        let gk = parts.iter().try_fold(0u64, |acc, v| match v.gk {
            Axis::Finite(Some(x)) => Some(acc + x),
            _ => None,
        });
        let all_dim_finite = parts.iter().all(|v| v.dim.is_finite());
        let dim = parts.iter().try_fold(1u64, |acc, v| match v.dim {
            Axis::Finite(Some(x)) => acc.checked_mul(x),
            _ => None,
        });
        let mut v = if all_dim_finite && cross_trivial && !exception_used {
            Verdict::finite_dim(dim, None, "central support: braided-commuting components")
        } else {
            let mut v = Verdict::finite_gk(
                if exception_used { None } else { gk },
                "central support: every condition holds",
            );
            if all_dim_finite {
                v.dim = Axis::Unknown;
            }
            v
        };
        if !v.dim.is_finite() || !parts.iter().all(|p| p.assumptions.is_empty()) {
            v = v.assuming(Assumption::FiniteRootSystem);
        }
        v
    };
    Ok(CentralSupportReport {
        points,
        blocks,
        point_braiding,
        checks,
        verdict,
    })
}
