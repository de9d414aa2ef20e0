use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{pair_compatibility, totally_disconnected_violation};
use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};
use crate::grp::{characters, Character, FiniteGroup, Subgroup};
use crate::nichols::{diagonal_verdict, type_c_verdict, Axis, Verdict};
use crate::rack::{type_c_search, Rack, TypeCOutcome, DEFAULT_BUDGET};
use crate::ydmod::DiagonalBraiding;

/// Most realizations of the central sector kept in a report.
pub const REALIZATION_CAP: usize = 256;
/// Most families listed in a report.
pub const FAMILY_CAP: usize = 1_000;
/// Most candidate tuples examined per rank in the central sector.
const TUPLE_CAP: usize = 200_000;

/// `(g, χ)` with `g` central and `χ` a character of the whole group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralPair {
    pub element: usize,
    pub label: String,
    pub character_index: usize,
    pub q: RootOfUnity,
}

/// A connected diagonal braiding on central pairs with finite-dimensional Nichols algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub members: Vec<CentralPair>,
    pub braiding: DiagonalBraiding,
    pub verdict: Verdict,
}

/// `M(O_x, χ)` on an abelian non-central class with totally disconnected braiding and
/// `χ(x) ≠ 1`; its Nichols algebra has dimension `order^class_size`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianPair {
    pub basepoint: usize,
    pub label: String,
    pub class_size: usize,
    pub character_index: usize,
    pub q: RootOfUnity,
    pub order: u32,
    pub dim: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassScan {
    pub representative: usize,
    pub label: String,
    pub size: usize,
    pub abelian: bool,
    pub characters_scanned: usize,
    pub admissible: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type_c: Option<TypeCOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

/// A maximal set of pairwise braided-commuting summands; every subset is admissible too.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub realizations: Vec<usize>,
    pub abelian_pairs: Vec<usize>,
    pub total_dim: Option<u64>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub group: String,
    pub order: usize,
    /// `|Z(G)| · |Ĝ|`.
    pub central_pairs: usize,
    /// Central pairs with `χ(g) ≠ 1`.
    pub central_nontrivial: usize,
    pub realizations: Vec<Realization>,
    pub realizations_truncated: bool,
    pub classes: Vec<ClassScan>,
    pub abelian_pairs: Vec<AbelianPair>,
    /// Edges of the compatibility graph on realizations followed by abelian pairs.
    pub compat_edges: Vec<(usize, usize)>,
    pub families: Vec<Family>,
    pub families_truncated: bool,
}

struct Node {
    /// `(g, χ)` as `(element, character)`; central members have the whole group as domain.
    pairs: Vec<(usize, Character)>,
    dim: Option<u64>,
}

/// Members as `(central element, character index)`, with the braiding and verdict.
type RawRealization = (Vec<(usize, usize)>, DiagonalBraiding, Verdict);

fn central_realizations(center: &Subgroup, chars: &[Character]) -> (usize, Vec<RawRealization>, bool) {
    let mut pairs = Vec::new();
    for &z in center.members() {
        for (k, chi) in chars.iter().enumerate() {
            if !chi.at(z).is_one() {
                pairs.push((z, k));
            }
        }
    }
    let braiding = |idx: &[usize]| {
        let q = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| chars[pairs[j].1].at(pairs[i].0)).collect())
            .collect();
        DiagonalBraiding::new(q).expect("square")
    };
    let p = pairs.len();
    let mut out = Vec::new();
    let mut truncated = false;
    let push = |idx: Vec<usize>, out: &mut Vec<_>, truncated: &mut bool| {
        let q: DiagonalBraiding = braiding(&idx);
        if q.dynkin().components.len() != 1 {
            return;
        }
        let v = diagonal_verdict(&q);
        if v.dim.is_finite() {
            if out.len() == REALIZATION_CAP {
                *truncated = true;
                return;
            }
            out.push((idx.iter().map(|&i| pairs[i]).collect(), q, v));
        }
    };
    for i in 0..p {
        push(vec![i], &mut out, &mut truncated);
    }
    if p * (p + 1) / 2 <= TUPLE_CAP {
        for i in 0..p {
            for j in i..p {
                push(vec![i, j], &mut out, &mut truncated);
            }
        }
    } else if p > 0 {
        truncated = true;
    }
    if p * (p + 1) * (p + 2) / 6 <= TUPLE_CAP {
        for i in 0..p {
            for j in i..p {
                for k in j..p {
                    push(vec![i, j, k], &mut out, &mut truncated);
                }
            }
        }
    } else if p > 0 {
        truncated = true;
    }
    (p, out, truncated)
}

/// Maximal cliques by Bron–Kerbosch with pivoting, stopping after `cap` cliques.
fn maximal_cliques(adj: &[Vec<bool>], cap: usize) -> (Vec<Vec<usize>>, bool) {
    fn go(
        adj: &[Vec<bool>],
        r: &mut Vec<usize>,
        p: Vec<usize>,
        mut x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> bool {
        if p.is_empty() && x.is_empty() {
            if out.len() == cap {
                return false;
            }
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return true;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| adj[u][v]).count())
            .expect("nonempty");
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
        let mut p = p;
        for v in candidates {
            r.push(v);
            let np = p.iter().copied().filter(|&w| adj[v][w]).collect();
            let nx = x.iter().copied().filter(|&w| adj[v][w]).collect();
            let ok = go(adj, r, np, nx, out, cap);
            r.pop();
            if !ok {
                return false;
            }
            p.retain(|&w| w != v);
            x.push(v);
        }
        true
    }
    let mut out = Vec::new();
    let ok = go(adj, &mut Vec::new(), (0..adj.len()).collect(), Vec::new(), &mut out, cap);
    out.sort();
    (out, !ok)
}

/// Lists the finite-dimensional Nichols algebras over a nilpotent group of odd order, as
/// families of pairwise braided-commuting summands drawn from the central sector and from
/// the abelian non-central classes. Non-abelian classes get their type C verdict.
pub fn classify_odd_nilpotent(g: Arc<FiniteGroup>) -> Result<ClassificationReport> {
    if g.order().is_multiple_of(2) {
        return Err(Error::Precondition(format!("group order {} is even", g.order())));
    }
    if !g.is_nilpotent() {
        return Err(Error::Precondition("group is not nilpotent".into()));
    }
    let whole = Subgroup::whole(&g);
    let center = g.center();
    let chars = characters(&g, &whole);
    let (central_nontrivial, raw_realizations, realizations_truncated) =
        central_realizations(&center, &chars);

    let mut nodes = Vec::new();
    let mut realizations = Vec::new();
    for (members, braiding, verdict) in raw_realizations {
        nodes.push(Node {
            pairs: members.iter().map(|&(z, k)| (z, chars[k].clone())).collect(),
            dim: match verdict.dim {
                Axis::Finite(v) => v,
                _ => None,
            },
        });
        realizations.push(Realization {
            members: members
                .iter()
                .map(|&(z, k)| CentralPair {
                    element: z,
                    label: g.label(z),
                    character_index: k,
                    q: chars[k].at(z),
                })
                .collect(),
            braiding,
            verdict,
        });
    }

    let mut classes = Vec::new();
    let mut abelian_pairs = Vec::new();
    for class in g.conjugacy_classes() {
        if class.is_central() {
            continue;
        }
        let x = class.representative;
        let rack = Rack::conjugation(g.clone(), &class);
        let mut scan = ClassScan {
            representative: x,
            label: g.label(x),
            size: class.len(),
            abelian: rack.is_abelian(),
            characters_scanned: 0,
            admissible: 0,
            type_c: None,
            verdict: None,
        };
        if scan.abelian {
            let local = characters(&g, &class.centralizer);
            scan.characters_scanned = local.len();
            for (k, chi) in local.into_iter().enumerate() {
                let q = chi.at(x);
                if q.is_one() || totally_disconnected_violation(&g, x, &chi)?.is_some() {
                    continue;
                }
                debug_assert!(q.order() % 2 == 1, "odd order forces odd root orders");
                scan.admissible += 1;
                let dim = (q.order() as u64).checked_pow(class.len() as u32);
                abelian_pairs.push(AbelianPair {
                    basepoint: x,
                    label: g.label(x),
                    class_size: class.len(),
                    character_index: k,
                    q,
                    order: q.order(),
                    dim,
                });
                nodes.push(Node {
                    pairs: vec![(x, chi)],
                    dim,
                });
            }
        } else {
            let outcome = type_c_search(&rack, Some(DEFAULT_BUDGET))?;
            scan.verdict = match outcome.witness() {
                Some(w) => Some(type_c_verdict(&g, w, false)?),
                None => Some(Verdict::unknown("no type C witness found within budget")),
            };
            scan.type_c = Some(outcome);
        }
        classes.push(scan);
    }

    let n = nodes.len();
    let mut adj = vec![vec![false; n]; n];
    let mut compat_edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut ok = true;
            'outer: for (x, chi) in &nodes[a].pairs {
                for (y, psi) in &nodes[b].pairs {
                    if !pair_compatibility(&g, (*x, chi), (*y, psi))? {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            if ok {
                adj[a][b] = true;
                adj[b][a] = true;
                compat_edges.push((a, b));
            }
        }
    }
    let (cliques, families_truncated) = if n == 0 {
        (Vec::new(), false)
    } else {
        maximal_cliques(&adj, FAMILY_CAP)
    };
    let r = realizations.len();
    let families = cliques
        .into_iter()
        .map(|c| {
            let total_dim = c
                .iter()
                .try_fold(1u64, |acc, &i| nodes[i].dim.and_then(|d| acc.checked_mul(d)));
            Family {
                realizations: c.iter().copied().filter(|&i| i < r).collect(),
                abelian_pairs: c.iter().filter(|&&i| i >= r).map(|&i| i - r).collect(),
                total_dim,
                verdict: Verdict::finite_dim(total_dim, None, "pairwise braided-commuting summands"),
            }
        })
        .collect();
    Ok(ClassificationReport {
        group: g.name().to_string(),
        order: g.order(),
        central_pairs: center.order() * chars.len(),
        central_nontrivial,
        realizations,
        realizations_truncated,
        classes,
        abelian_pairs,
        compat_edges,
        families,
        families_truncated,
    })
}

impl ClassificationReport {
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "group {} (order {})", self.group, self.order);
        let _ = writeln!(
            s,
            "central sector: {} pairs, {} with q ≠ 1, {} realizations{}",
            self.central_pairs,
            self.central_nontrivial,
            self.realizations.len(),
            if self.realizations_truncated { " (truncated)" } else { "" }
        );
        for (i, r) in self.realizations.iter().enumerate() {
            let members: Vec<String> = r
                .members
                .iter()
                .map(|p| format!("({}, χ{}) q={}", p.label, p.character_index, p.q))
                .collect();
            let _ = writeln!(s, "  R{i}: {} -> {}", members.join(" + "), r.verdict);
        }
        let _ = writeln!(s, "non-central classes:");
        for c in &self.classes {
            if c.abelian {
                let _ = writeln!(
                    s,
                    "  {} size {}: abelian, {}/{} characters admissible",
                    c.label, c.size, c.admissible, c.characters_scanned
                );
            } else {
                let v = c.verdict.as_ref().map(|v| v.to_string()).unwrap_or_default();
                let _ = writeln!(s, "  {} size {}: non-abelian, {v}", c.label, c.size);
            }
        }
        let _ = writeln!(s, "abelian pairs: {}", self.abelian_pairs.len());
        for (i, p) in self.abelian_pairs.iter().enumerate() {
            let dim = p.dim.map(|d| d.to_string()).unwrap_or_else(|| "?".into());
            let _ = writeln!(
                s,
                "  A{i}: class of {} (size {}), χ{} q={} dim {dim}",
                p.label, p.class_size, p.character_index, p.q
            );
        }
        let _ = writeln!(s, "compatibility edges: {}", self.compat_edges.len());
        let _ = writeln!(
            s,
            "families: {}{}",
            self.families.len(),
            if self.families_truncated { " (truncated)" } else { "" }
        );
        for f in &self.families {
            let names: Vec<String> = f
                .realizations
                .iter()
                .map(|i| format!("R{i}"))
                .chain(f.abelian_pairs.iter().map(|i| format!("A{i}")))
                .collect();
            let dim = f.total_dim.map(|d| d.to_string()).unwrap_or_else(|| "?".into());
            let _ = writeln!(s, "  {{{}}} dim {dim}", names.join(", "));
        }
        s
    }
}
