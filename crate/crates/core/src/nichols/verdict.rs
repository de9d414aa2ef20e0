use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::roots::{cartan_matrix, positive_roots, root_label};
use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};
use crate::grp::FiniteGroup;
use crate::rack::TypeCWitness;
use crate::ydmod::{c_squared_is_identity, DiagonalBraiding, DynkinDiagram, YDModule};

/// One axis of a verdict. `Finite(None)` means finite with no stated value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Finite(Option<u64>),
    Infinite,
    Unknown,
}

impl Axis {
    pub fn is_finite(&self) -> bool {
        matches!(self, Axis::Finite(_))
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Finite(Some(v)) => write!(f, "finite ({v})"),
            Axis::Finite(None) => write!(f, "finite"),
            Axis::Infinite => write!(f, "infinite"),
            Axis::Unknown => write!(f, "unknown"),
        }
    }
}

/// Unproved statements a verdict relies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Assumption {
    /// The root system of a diagonal Nichols algebra of finite GK-dimension is finite.
    FiniteRootSystem,
    /// Type C racks give infinite GK-dimension for every faithful cocycle.
    TypeCInfiniteGk,
}

/// Symbolic finiteness statement about `B(V)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub dim: Axis,
    pub gk: Axis,
    pub assumptions: BTreeSet<Assumption>,
    pub provenance: String,
    /// Highest nonzero degree, when the rule knows it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_degree: Option<u64>,
}

impl Verdict {
    pub fn finite_dim(value: Option<u64>, top_degree: Option<u64>, provenance: impl Into<String>) -> Self {
        Verdict {
            dim: Axis::Finite(value),
            gk: Axis::Finite(Some(0)),
            assumptions: BTreeSet::new(),
            provenance: provenance.into(),
            top_degree,
        }
    }

    pub fn finite_gk(value: Option<u64>, provenance: impl Into<String>) -> Self {
        Verdict {
            dim: Axis::Infinite,
            gk: Axis::Finite(value),
            assumptions: BTreeSet::new(),
            provenance: provenance.into(),
            top_degree: None,
        }
    }

    pub fn infinite_gk(provenance: impl Into<String>) -> Self {
        Verdict {
            dim: Axis::Infinite,
            gk: Axis::Infinite,
            assumptions: BTreeSet::new(),
            provenance: provenance.into(),
            top_degree: None,
        }
    }

    pub fn unknown(provenance: impl Into<String>) -> Self {
        Verdict {
            dim: Axis::Unknown,
            gk: Axis::Unknown,
            assumptions: BTreeSet::new(),
            provenance: provenance.into(),
            top_degree: None,
        }
    }

    pub fn assuming(mut self, a: Assumption) -> Self {
        self.assumptions.insert(a);
        self
    }

    /// `dim` finite forces `gk = 0`.
    pub fn is_consistent(&self) -> bool {
        !self.dim.is_finite() || self.gk == Axis::Finite(Some(0))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim {}, GK-dim {} [{}]", self.dim, self.gk, self.provenance)?;
        if !self.assumptions.is_empty() {
            let a: Vec<String> = self
                .assumptions
                .iter()
                .map(|a| serde_json::to_string(a).unwrap().trim_matches('"').to_string())
                .collect();
            write!(f, " assuming {}", a.join(", "))?;
        }
        Ok(())
    }
}

/// Rank one: `k[x]` when `q = 1`, otherwise `k[x]/(x^N)` with `N = ord(q)`.
pub fn rank_one_verdict(q: RootOfUnity) -> Verdict {
    if q.is_one() {
        Verdict::finite_gk(Some(1), "rank one, polynomial algebra")
    } else {
        let n = q.order() as u64;
        Verdict::finite_dim(Some(n), Some(n - 1), "rank one, truncated polynomial algebra")
    }
}

/// `q_ij = q` for all `i, j` in rank `d`.
pub fn constant_q_verdict(q: RootOfUnity, d: usize) -> Verdict {
    if d <= 1 {
        return rank_one_verdict(q);
    }
    if q.is_one() {
        Verdict::finite_gk(Some(d as u64), "constant braiding 1, symmetric algebra")
    } else if q == RootOfUnity::minus_one() {
        Verdict::finite_dim(Some(1 << d), Some(d as u64), "constant braiding -1, exterior algebra")
    } else if q.order() == 3 && d == 2 {
        Verdict::finite_dim(Some(27), Some(8), "constant braiding of order 3 in rank 2, Cartan type A2")
    } else {
        Verdict::infinite_gk("constant braiding outside the finite cases")
    }
}

/// Verdict for a diagonal braiding, combining its connected components.
pub fn diagonal_verdict(q: &DiagonalBraiding) -> Verdict {
    let diagram = q.dynkin();
    let parts: Vec<Verdict> = diagram
        .components
        .iter()
        .map(|comp| component_verdict(&q.restrict(comp), &diagram.induced(comp)))
        .collect();
    combine(parts)
}

fn combine(parts: Vec<Verdict>) -> Verdict {
    if parts.len() == 1 {
        return parts.into_iter().next().unwrap();
    }
    let assumptions: BTreeSet<Assumption> = parts.iter().flat_map(|p| p.assumptions.iter().copied()).collect();
    let provenance = {
        let mut rules: Vec<&str> = parts.iter().map(|p| p.provenance.as_str()).collect();
        rules.dedup();
        format!("product over components: {}", rules.join("; "))
    };
    let mut v = if parts.iter().any(|p| p.gk == Axis::Infinite) {
        Verdict::infinite_gk(provenance)
    } else if parts.iter().all(|p| p.dim.is_finite()) {
        let value = parts
            .iter()
            .map(|p| match p.dim {
                Axis::Finite(v) => v,
                _ => None,
            })
            .try_fold(1u64, |acc, v| v.and_then(|v| acc.checked_mul(v)));
        let top = parts.iter().map(|p| p.top_degree).try_fold(0u64, |acc, t| t.map(|t| acc + t));
        Verdict::finite_dim(value, top, provenance)
    } else if parts.iter().all(|p| p.gk.is_finite()) {
        let value = parts
            .iter()
            .map(|p| match p.gk {
                Axis::Finite(v) => v,
                _ => None,
            })
            .try_fold(0u64, |acc, v| v.map(|v| acc + v));
        Verdict::finite_gk(value, provenance)
    } else {
        let mut u = Verdict::unknown(provenance);
        if parts.iter().any(|p| p.dim == Axis::Infinite) {
            u.dim = Axis::Infinite;
        }
        u
    };
    v.assumptions = assumptions;
    v
}

fn minus_one() -> RootOfUnity {
    RootOfUnity::minus_one()
}

/// Vertices of a biconnected block with at least four vertices, if any.
fn long_cycle(d: &DynkinDiagram) -> Option<Vec<usize>> {
    // a 2-connected graph on ≥ 4 vertices contains a cycle of length ≥ 4
    biconnected_blocks(d).into_iter().find(|b| b.len() >= 4)
}

fn biconnected_blocks(d: &DynkinDiagram) -> Vec<Vec<usize>> {
    struct State<'a> {
        d: &'a DynkinDiagram,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        blocks: Vec<Vec<usize>>,
    }
    fn dfs(s: &mut State, u: usize, parent: Option<usize>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for v in s.d.neighbours(u) {
            if s.disc[v] == 0 {
                s.stack.push((u, v));
                dfs(s, v, Some(u));
                s.low[u] = s.low[u].min(s.low[v]);
                if s.low[v] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some((a, b)) = s.stack.pop() {
                        block.push(a);
                        block.push(b);
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    s.blocks.push(block);
                }
            } else if Some(v) != parent && s.disc[v] < s.disc[u] {
                s.stack.push((u, v));
                s.low[u] = s.low[u].min(s.disc[v]);
            }
        }
    }
    let n = d.rank();
    let mut s = State {
        d,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for u in 0..n {
        if s.disc[u] == 0 {
            dfs(&mut s, u, None);
        }
    }
    s.blocks
}

fn triangles(d: &DynkinDiagram) -> Vec<[usize; 3]> {
    let n = d.rank();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if d.edge(a, b).is_some() && d.edge(b, c).is_some() && d.edge(a, c).is_some() {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

fn component_verdict(q: &DiagonalBraiding, d: &DynkinDiagram) -> Verdict {
    let n = d.rank();
    if n == 1 {
        return rank_one_verdict(d.vertices[0]);
    }
    if d.vertices.iter().any(|v| v.is_one()) {
        return Verdict::infinite_gk("vertex labelled 1 joined by an edge");
    }
    let q0 = d.vertices[0];
    let complete_constant = d.vertices.iter().all(|v| *v == q0)
        && (0..n).all(|i| (i + 1..n).all(|j| d.edge(i, j) == Some(q0.pow(2))));
    if complete_constant {
        return constant_q_verdict(q0, n);
    }
    if long_cycle(d).is_some() {
        return Verdict::infinite_gk("cycle of length at least 4").assuming(Assumption::FiniteRootSystem);
    }
    if triangles(d)
        .iter()
        .any(|t| t.iter().all(|&v| d.vertices[v] != minus_one()))
    {
        return Verdict::infinite_gk("3-cycle with no vertex labelled -1").assuming(Assumption::FiniteRootSystem);
    }
    if let Some(v) = cartan_verdict(q) {
        return v;
    }
    if n == 2 {
        if let Some(v) = rank_two_patterns(d) {
            return v;
        }
        if d.vertices[0] == d.vertices[1] {
            return Verdict::infinite_gk("rank two with equal vertices outside the finite list");
        }
    }
    if n == 3 {
        if let Some(v) = super_type_triangle(d).or_else(|| br3_chain(d)) {
            return v;
        }
    }
    Verdict::unknown("no recognized pattern")
}

/// Finite Cartan type: dimension `Π N_β` over positive roots, `N_β = ord(q_ββ)`.
fn cartan_verdict(q: &DiagonalBraiding) -> Option<Verdict> {
    let a = cartan_matrix(q)?;
    let roots = positive_roots(&a)?;
    let labels: Vec<RootOfUnity> = roots.iter().map(|b| root_label(q, b)).collect();
    let name = format!("finite Cartan type with {} positive roots", roots.len());
    let unbounded = labels.iter().filter(|r| r.is_one()).count() as u64;
    if unbounded > 0 {
        return Some(Verdict::finite_gk(Some(unbounded), name));
    }
    let mut dim = 1u64;
    let mut top = 0u64;
    for (b, r) in roots.iter().zip(&labels) {
        let nb = r.order() as u64;
        dim = dim.checked_mul(nb)?;
        top += (nb - 1) * b.iter().sum::<i64>() as u64;
    }
    Some(Verdict::finite_dim(Some(dim), Some(top), name))
}

fn rank_two_patterns(d: &DynkinDiagram) -> Option<Verdict> {
    let (u, v) = (d.vertices[0], d.vertices[1]);
    let e = d.edge(0, 1)?;
    if u == v && e.order() == 12 && u == minus_one().mul(&e.pow(2)) {
        return Some(Verdict::finite_dim(None, None, "rank two, both vertices -ζ² with edge ζ of order 12"));
    }
    for (w, x) in [(u, v), (v, u)] {
        if w.order() == 3 && e == x.inv() && (x.order() > 3 || w.mul(&x.inv()).order() > 3) {
            return Some(Verdict::finite_dim(
                None,
                None,
                "rank two, vertex of order 3 joined to x by x⁻¹ (standard br(2) family)",
            ));
        }
    }
    None
}

/// Three vertices labelled -1 pairwise joined by edges `a, b, c ≠ 1` with `abc = 1`.
fn super_type_triangle(d: &DynkinDiagram) -> Option<Verdict> {
    if triangles(d).len() != 1 || d.vertices.iter().any(|v| *v != minus_one()) {
        return None;
    }
    let (a, b, c) = (d.edge(0, 1)?, d.edge(1, 2)?, d.edge(0, 2)?);
    if !a.mul(&b).mul(&c).is_one() {
        return None;
    }
    if a == b && b == c && a.order() == 3 {
        // 2^4 · 3^3
        return Some(Verdict::finite_dim(Some(432), None, "triangle of -1 vertices, edges all of order 3"));
    }
    Some(Verdict::finite_dim(None, None, "triangle of -1 vertices with edge product 1"))
}

/// The two rank-three chains over `ζ` of order 9.
fn br3_chain(d: &DynkinDiagram) -> Option<Verdict> {
    let mid = (0..3).find(|&v| d.neighbours(v).len() == 2)?;
    if triangles(d).len() == 1 {
        return None;
    }
    let ends: Vec<usize> = d.neighbours(mid);
    for (a, c) in [(ends[0], ends[1]), (ends[1], ends[0])] {
        let z = d.vertices[a];
        if z.order() != 9 {
            continue;
        }
        let label = [d.vertices[a], d.edge(a, mid)?, d.vertices[mid], d.edge(mid, c)?, d.vertices[c]];
        let first = [z, z.inv(), z, z.inv(), z.pow(-3)];
        let second = [z, z.inv(), z.pow(-4), z.pow(4), z.pow(-3)];
        if label == first || label == second {
            return Some(Verdict::finite_dim(None, None, "rank-three chain over a root of order 9 (br(3) family)"));
        }
    }
    None
}

/// Verdict for `B(O, q)` when the rack contains a type C witness.
pub fn type_c_verdict(g: &FiniteGroup, witness: &TypeCWitness, assume_infinite_gk: bool) -> Result<Verdict> {
    witness.revalidate(g)?;
    let mut v = Verdict::unknown("rack of type C collapses");
    v.dim = Axis::Infinite;
    if assume_infinite_gk {
        v.gk = Axis::Infinite;
        v = v.assuming(Assumption::TypeCInfiniteGk);
    }
    Ok(v)
}

/// Dimension pairs `(dim V, dim W)`, sorted, for which two simple modules with
/// non-commuting supports may still have a finite-dimensional Nichols algebra.
pub const ALLOWED_NONTRIVIAL_PAIRS: [(usize, usize); 5] = [(1, 3), (1, 4), (2, 2), (2, 3), (2, 4)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", content = "reason", rename_all = "snake_case")]
pub enum HvOutcome {
    Pass,
    Excluded(String),
}

/// The decision rule on its own: `c²` trivial, the sorted dimensions, and whether
/// the three-dimensional summand (if any) is of diagonal type.
pub fn hv_rule(c_squared_identity: bool, dims: (usize, usize), three_dim_diagonal: bool) -> HvOutcome {
    if c_squared_identity {
        return HvOutcome::Pass;
    }
    let pair = (dims.0.min(dims.1), dims.0.max(dims.1));
    if !ALLOWED_NONTRIVIAL_PAIRS.contains(&pair) {
        return HvOutcome::Excluded(format!(
            "c² ≠ id and dimensions {pair:?} are not among {ALLOWED_NONTRIVIAL_PAIRS:?}"
        ));
    }
    if pair.1 == 3 && three_dim_diagonal {
        return HvOutcome::Excluded("c² ≠ id and the 3-dimensional summand is of diagonal type".into());
    }
    HvOutcome::Pass
}

/// Necessary condition on a pair of simple modules whose joint support generates a
/// non-abelian group for `B(M₁ ⊕ M₂)` to be finite-dimensional.
pub fn hv_exclusion(m1: &YDModule, m2: &YDModule) -> Result<HvOutcome> {
    let g = m1.group();
    if g != m2.group() {
        return Err(Error::DomainMismatch("modules over different groups".into()));
    }
    for m in [m1, m2] {
        if !crate::grp::rep_character_norm(m.monomial()).eq(&num_rational::BigRational::from_integer(1.into())) {
            return Err(Error::Reducible);
        }
    }
    let support: Vec<usize> = m1.class().members.iter().chain(&m2.class().members).copied().collect();
    if crate::grp::Subgroup::generated(g, &support).is_abelian(g) {
        return Err(Error::Precondition("joint support generates an abelian group".into()));
    }
    let c2 = c_squared_is_identity(m1, m2)?;
    let three_dim_diagonal = [m1, m2].iter().any(|m| m.dim() == 3 && m.diagonal_form().is_ok());
    Ok(hv_rule(c2, (m1.dim(), m2.dim()), three_dim_diagonal))
}
