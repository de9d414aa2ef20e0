use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::error::{Error, Result};

/// A subgroup as a sorted member list of the parent group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<usize>,
    normal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub centralizer: Subgroup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Nilpotency {
    Class(usize),
    NotNilpotent,
}

impl Subgroup {
    /// Validates closure and records normality.
    pub fn new(g: &FiniteGroup, members: Vec<usize>) -> Result<Self> {
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        let mut inside = vec![false; g.order()];
        for &m in &members {
            if m >= g.order() {
                return Err(Error::InvalidTable(format!("element {m} out of range")));
            }
            inside[m] = true;
        }
        if !inside[g.identity()] {
            return Err(Error::InvalidTable("subgroup lacks the identity".into()));
        }
        for &a in &members {
            if !inside[g.inv(a)] || members.iter().any(|&b| !inside[g.mul(a, b)]) {
                return Err(Error::InvalidTable("subset is not closed".into()));
            }
        }
        Ok(Self::trusted(g, members))
    }

    /// The subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        Self::trusted(g, g.closure(gens))
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            parent_order: g.order(),
            members: (0..g.order()).collect(),
            normal: true,
        }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup {
            parent_order: g.order(),
            members: vec![g.identity()],
            normal: true,
        }
    }

    pub(crate) fn trusted(g: &FiniteGroup, members: Vec<usize>) -> Self {
        let normal = is_normal(g, &members);
        Subgroup {
            parent_order: g.order(),
            members,
            normal,
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn membership(&self) -> Vec<bool> {
        let mut v = vec![false; self.parent_order];
        for &m in &self.members {
            v[m] = true;
        }
        v
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.members
            .iter()
            .all(|&a| self.members.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// The subgroup as a standalone group, with element `i` the `i`-th member.
    pub fn as_group(&self, g: &FiniteGroup) -> Result<FiniteGroup> {
        let mut pos = vec![usize::MAX; g.order()];
        for (i, &m) in self.members.iter().enumerate() {
            pos[m] = i;
        }
        let labels = self.members.iter().map(|&m| g.label(m)).collect();
        FiniteGroup::from_fn(
            format!("subgroup of {}", g.name()),
            self.order(),
            |a, b| pos[g.mul(self.members[a], self.members[b])],
            vec![],
            Some(labels),
        )
    }
}

fn is_normal(g: &FiniteGroup, members: &[usize]) -> bool {
    let mut inside = vec![false; g.order()];
    for &m in members {
        inside[m] = true;
    }
    g.generators()
        .iter()
        .all(|&s| members.iter().all(|&m| inside[g.conj(s, m)]))
}

impl FiniteGroup {
    pub fn centralizer(&self, x: usize) -> Subgroup {
        let members = (0..self.order())
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect();
        Subgroup::trusted(self, members)
    }

    pub fn center(&self) -> Subgroup {
        let members = (0..self.order())
            .filter(|&z| {
                self.generators()
                    .iter()
                    .all(|&g| self.mul(z, g) == self.mul(g, z))
            })
            .collect();
        Subgroup {
            parent_order: self.order(),
            members,
            normal: true,
        }
    }

    pub fn is_central(&self, z: usize) -> bool {
        self.generators()
            .iter()
            .all(|&g| self.mul(z, g) == self.mul(g, z))
    }

    /// The subgroup generated by all commutators, which is automatically normal.
    pub fn commutator_subgroup(&self) -> Subgroup {
        self.commutator_subgroup_of(&Subgroup::whole(self))
    }

    /// `[H, H]` for a subgroup `H`.
    pub fn commutator_subgroup_of(&self, h: &Subgroup) -> Subgroup {
        let mut seen = vec![false; self.order()];
        let mut gens = Vec::new();
        for &a in h.members() {
            for &b in h.members() {
                let c = self.comm(a, b);
                if !seen[c] {
                    seen[c] = true;
                    gens.push(c);
                }
            }
        }
        Subgroup::generated(self, &gens)
    }

    /// `Z_0 = e`, `Z_{k+1} = {x : [x, G] ⊆ Z_k}` until the chain stabilizes.
    pub fn upper_central_series(&self) -> (Vec<Subgroup>, Nilpotency) {
        let mut series = vec![Subgroup::trivial(self)];
        loop {
            let cur = series.last().unwrap().membership();
            let members: Vec<usize> = (0..self.order())
                .filter(|&x| self.generators().iter().all(|&g| cur[self.comm(x, g)]))
                .collect();
            if members.len() == series.last().unwrap().order() {
                break;
            }
            series.push(Subgroup {
                parent_order: self.order(),
                members,
                normal: true,
            });
        }
        let nilpotency = if series.last().unwrap().order() == self.order() {
            Nilpotency::Class(series.len() - 1)
        } else {
            Nilpotency::NotNilpotent
        };
        (series, nilpotency)
    }

    pub fn is_nilpotent(&self) -> bool {
        matches!(self.upper_central_series().1, Nilpotency::Class(_))
    }

    pub fn class_of(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            let y = self.conj(g, x);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        out.sort_unstable();
        out
    }

    /// All classes ordered by minimal representative index.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let mut assigned = vec![false; self.order()];
        let mut out = Vec::new();
        for x in 0..self.order() {
            if assigned[x] {
                continue;
            }
            let members = self.class_of(x);
            for &m in &members {
                assigned[m] = true;
            }
            out.push(ConjugacyClass {
                representative: x,
                members,
                centralizer: self.centralizer(x),
            });
        }
        out
    }

    /// The class containing `x`, with `x` as representative.
    pub fn conjugacy_class(&self, x: usize) -> ConjugacyClass {
        ConjugacyClass {
            representative: x,
            members: self.class_of(x),
            centralizer: self.centralizer(x),
        }
    }

    /// `G / N` with cosets ordered by minimal element.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
        if !n.is_normal() {
            return Err(Error::Precondition("quotient by a non-normal subgroup".into()));
        }
        let mut coset = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &k in n.members() {
                coset[self.mul(g, k)] = id;
            }
        }
        let gens = self.generators().iter().map(|&g| coset[g]).collect();
        let labels = reps.iter().map(|&r| format!("{}N", self.label(r))).collect();
        let q = FiniteGroup::from_fn(
            format!("{} / N", self.name()),
            reps.len(),
            |a, b| coset[self.mul(reps[a], reps[b])],
            gens,
            Some(labels),
        )?;
        Ok((q, coset))
    }
}

impl ConjugacyClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_central(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}
