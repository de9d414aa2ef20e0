use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};

/// A braiding matrix `q = (q_ij)` with `c(x_i ⊗ x_j) = q_ij x_j ⊗ x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalBraiding {
    q: Vec<Vec<RootOfUnity>>,
}

/// Exchange form `{rank, q: [[root]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalExport {
    pub rank: usize,
    pub q: Vec<Vec<RootOfUnity>>,
}

impl Serialize for DiagonalBraiding {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.export().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagonalBraiding {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DiagonalExport::deserialize(d)?;
        if raw.q.len() != raw.rank {
            return Err(serde::de::Error::custom("rank disagrees with the matrix"));
        }
        DiagonalBraiding::new(raw.q).map_err(serde::de::Error::custom)
    }
}

impl DiagonalBraiding {
    pub fn new(q: Vec<Vec<RootOfUnity>>) -> Result<Self> {
        let n = q.len();
        if q.iter().any(|row| row.len() != n) {
            return Err(Error::Parse("diagonal braiding matrix must be square".into()));
        }
        Ok(DiagonalBraiding { q })
    }

    /// `q_ij = q` for all `i, j`.
    pub fn constant(q: RootOfUnity, rank: usize) -> Self {
        DiagonalBraiding {
            q: vec![vec![q; rank]; rank],
        }
    }

    /// The symmetric matrix with the given vertex labels and `q_ij = q_ji` a square
    /// root of each edge label, choosing `q_ij = edge`, `q_ji = 1` for `i < j`.
    pub fn from_diagram(vertices: &[RootOfUnity], edges: &[(usize, usize, RootOfUnity)]) -> Self {
        let n = vertices.len();
        let mut q = vec![vec![RootOfUnity::one(); n]; n];
        for (i, &v) in vertices.iter().enumerate() {
            q[i][i] = v;
        }
        for &(i, j, e) in edges {
            let (a, b) = (i.min(j), i.max(j));
            q[a][b] = q[a][b].mul(&e);
        }
        DiagonalBraiding { q }
    }

    pub fn rank(&self) -> usize {
        self.q.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> RootOfUnity {
        self.q[i][j]
    }

    pub fn rows(&self) -> &[Vec<RootOfUnity>] {
        &self.q
    }

    pub fn export(&self) -> DiagonalExport {
        DiagonalExport {
            rank: self.rank(),
            q: self.q.clone(),
        }
    }

    pub fn dynkin(&self) -> DynkinDiagram {
        let n = self.rank();
        let vertices: Vec<RootOfUnity> = (0..n).map(|i| self.q[i][i]).collect();
        let mut edges = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let e = self.q[i][j].mul(&self.q[j][i]);
                if !e.is_one() {
                    edges.insert((i, j), e);
                }
            }
        }
        DynkinDiagram::new(vertices, edges)
    }

    /// Same vertex labels and same products `q_ij q_ji`.
    pub fn twist_equivalent(&self, other: &DiagonalBraiding) -> Result<bool> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(self.dynkin() == other.dynkin())
    }

    /// Restriction to a subset of indices, in the given order.
    pub fn restrict(&self, idx: &[usize]) -> DiagonalBraiding {
        DiagonalBraiding {
            q: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.q[i][j]).collect())
                .collect(),
        }
    }

    /// Least common multiple of the entry orders.
    pub fn conductor(&self) -> u32 {
        use num_integer::Integer;
        self.q.iter().flatten().fold(1u32, |acc, r| acc.lcm(&r.order()))
    }
}

/// Parses `[[w,w],[w,w]]`, entries as accepted by [`RootOfUnity`].
impl FromStr for DiagonalBraiding {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Ok(doc) = serde_json::from_str::<DiagonalExport>(&t) {
            return DiagonalBraiding::new(doc.q);
        }
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [[...],...], got '{s}'")))?;
        let mut rows = Vec::new();
        for chunk in inner.split("],") {
            let row = chunk.trim_start_matches('[').trim_end_matches(']');
            let entries = row
                .split(',')
                .map(str::parse::<RootOfUnity>)
                .collect::<Result<Vec<_>>>()?;
            rows.push(entries);
        }
        DiagonalBraiding::new(rows)
    }
}

impl fmt::Display for DiagonalBraiding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .q
            .iter()
            .map(|r| {
                let e: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", e.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Vertex labels `q_ii`, edges labelled `q̃_ij = q_ij q_ji ≠ 1`, and components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DynkinDiagram {
    pub vertices: Vec<RootOfUnity>,
    #[serde(with = "edge_list")]
    pub edges: BTreeMap<(usize, usize), RootOfUnity>,
    pub components: Vec<Vec<usize>>,
}

mod edge_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Edge {
        i: usize,
        j: usize,
        label: RootOfUnity,
    }

    pub fn serialize<S: Serializer>(
        edges: &BTreeMap<(usize, usize), RootOfUnity>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Edge> = edges
            .iter()
            .map(|(&(i, j), &label)| Edge { i, j, label })
            .collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<(usize, usize), RootOfUnity>, D::Error> {
        let v = Vec::<Edge>::deserialize(d)?;
        Ok(v.into_iter().map(|e| ((e.i, e.j), e.label)).collect())
    }
}

impl DynkinDiagram {
    pub fn new(vertices: Vec<RootOfUnity>, edges: BTreeMap<(usize, usize), RootOfUnity>) -> Self {
        let n = vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut components = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                for w in 0..n {
                    if comp[w] == usize::MAX && edges.contains_key(&(v.min(w), v.max(w))) {
                        comp[w] = id;
                        members.push(w);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            components.push(members);
        }
        DynkinDiagram {
            vertices,
            edges,
            components,
        }
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_totally_disconnected(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge(&self, i: usize, j: usize) -> Option<RootOfUnity> {
        self.edges.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        (0..self.rank())
            .filter(|&w| w != v && self.edge(v, w).is_some())
            .collect()
    }

    /// The sub-diagram on the given vertices, reindexed in order.
    pub fn induced(&self, idx: &[usize]) -> DynkinDiagram {
        let vertices = idx.iter().map(|&i| self.vertices[i]).collect();
        let mut edges = BTreeMap::new();
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate().skip(a + 1) {
                if let Some(e) = self.edge(i, j) {
                    edges.insert((a, b), e);
                }
            }
        }
        DynkinDiagram::new(vertices, edges)
    }

    /// Adjacency-list rendering with labels written `a/n`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let nb: Vec<String> = self
                .neighbours(i)
                .iter()
                .map(|&j| format!("{j}[{}]", self.edge(i, j).unwrap()))
                .collect();
            out.push_str(&format!("  v{i} ({v}): {}\n", if nb.is_empty() { "-".into() } else { nb.join(" ") }));
        }
        out
    }
}
