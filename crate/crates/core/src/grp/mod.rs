//! Finite groups stored as complete multiplication tables.

mod catalog;
mod character;
mod subgroup;

pub use catalog::GroupSpec;
pub use character::{
    characters, characters_of_abelian, induce_character, rep_character_norm, Character,
    MonomialMatrix, MonomialRep,
};
pub use subgroup::{ConjugacyClass, Nilpotency, Subgroup};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order that will be materialized as a table.
pub const ORDER_CAP: usize = 20_000;

/// Orders up to this size are checked for associativity triple by triple; larger
/// tables use Light's test over the generators.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u16>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// The exchange format `{order, mul_table, generators, labels?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub order: usize,
    pub mul_table: Vec<usize>,
    pub generators: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table and validates it.
    /// An empty generator list is replaced by a greedy generating set.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        mul_table: &[usize],
        generators: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("empty group".into()));
        }
        if order > ORDER_CAP {
            return Err(Error::OrderCap {
                order: order as u64,
                cap: ORDER_CAP as u64,
            });
        }
        if mul_table.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "table has {} entries, expected {}",
                mul_table.len(),
                order * order
            )));
        }
        if let Some(&bad) = mul_table.iter().find(|&&v| v >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(Error::InvalidTable("label count differs from order".into()));
            }
        }
        if let Some(&bad) = generators.iter().find(|&&g| g >= order) {
            return Err(Error::InvalidTable(format!("generator {bad} out of range")));
        }
        let table: Vec<u16> = mul_table.iter().map(|&v| v as u16).collect();
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e * order + g] as usize == g && table[g * order + e] as usize == g))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;
        let mut inverses = vec![usize::MAX; order];
        for g in 0..order {
            let row = &table[g * order..(g + 1) * order];
            let h = row
                .iter()
                .position(|&v| v as usize == identity)
                .ok_or_else(|| Error::InvalidTable(format!("element {g} has no inverse")))?;
            if table[h * order + g] as usize != identity {
                return Err(Error::InvalidTable(format!("element {g} has no two-sided inverse")));
            }
            inverses[g] = h;
        }
        let mut group = FiniteGroup {
            name: name.into(),
            order,
            table,
            identity,
            inverses,
            generators,
            labels,
        };
        if group.generators.is_empty() {
            group.generators = group.greedy_generators();
        }
        if group.closure(&group.generators).len() != order {
            return Err(Error::InvalidTable("generators do not generate the group".into()));
        }
        group.check_associative()?;
        Ok(group)
    }

    /// Builds a group from an element count and a multiplication closure.
    pub fn from_fn(
        name: impl Into<String>,
        order: usize,
        mul: impl Fn(usize, usize) -> usize,
        generators: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if order > ORDER_CAP {
            return Err(Error::OrderCap {
                order: order as u64,
                cap: ORDER_CAP as u64,
            });
        }
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(mul(a, b));
            }
        }
        Self::from_table(name, order, &table, generators, labels)
    }

    /// Builds the group generated by permutations of `0..degree`.
    pub fn from_permutations(name: impl Into<String>, gens: &[Vec<usize>]) -> Result<Self> {
        let degree = gens.first().map_or(0, |g| g.len());
        let id: Vec<usize> = (0..degree).collect();
        let mut elements = vec![id];
        let mut index = std::collections::HashMap::new();
        index.insert(elements[0].clone(), 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                // compose: apply elements[i] first, then g
                let p: Vec<usize> = elements[i].iter().map(|&k| g[k]).collect();
                if !index.contains_key(&p) {
                    if elements.len() >= ORDER_CAP {
                        return Err(Error::OrderCap {
                            order: elements.len() as u64 + 1,
                            cap: ORDER_CAP as u64,
                        });
                    }
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let n = elements.len();
        let gen_idx: Vec<usize> = gens.iter().map(|g| index[g]).collect();
        let labels = elements.iter().map(|p| format!("{p:?}")).collect();
        Self::from_fn(
            name,
            n,
            |a, b| {
                // a·b means apply b then a
                let p: Vec<usize> = elements[b].iter().map(|&k| elements[a][k]).collect();
                index[&p]
            },
            gen_idx,
            Some(labels),
        )
    }

    pub fn from_document(name: impl Into<String>, doc: &GroupDocument) -> Result<Self> {
        Self::from_table(name, doc.order, &doc.mul_table, doc.generators.clone(), doc.labels.clone())
    }

    pub fn to_document(&self) -> GroupDocument {
        GroupDocument {
            order: self.order,
            mul_table: self.table.iter().map(|&v| v as usize).collect(),
            generators: self.generators.clone(),
            labels: self.labels.clone(),
        }
    }

    /// The same group with element `i` renamed to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order;
        if perm.len() != n {
            return Err(Error::InvalidTable("relabeling has wrong length".into()));
        }
        let mut inv = vec![usize::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || inv[p] != usize::MAX {
                return Err(Error::InvalidTable("relabeling is not a permutation".into()));
            }
            inv[p] = i;
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| (0..n).map(|i| l[inv[i]].clone()).collect());
        Self::from_fn(
            self.name.clone(),
            n,
            |a, b| perm[self.mul(inv[a], inv[b])],
            self.generators.iter().map(|&g| perm[g]).collect(),
            labels,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `x ▷ y = x y x^{-1}`.
    #[inline]
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.inverses[x])
    }

    /// `[x, y] = x y x^{-1} y^{-1}`.
    #[inline]
    pub fn comm(&self, x: usize, y: usize) -> usize {
        self.mul(self.conj(x, y), self.inverses[y])
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inverses[x] } else { x };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Finds an element by its label, or by its index written in decimal.
    pub fn find(&self, label: &str) -> Option<usize> {
        let t = label.trim();
        let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(l) = &self.labels {
            if let Some(i) = l
                .iter()
                .position(|s| s.chars().filter(|c| !c.is_whitespace()).collect::<String>() == compact)
            {
                return Some(i);
            }
        }
        t.parse::<usize>().ok().filter(|&i| i < self.order)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Members of the subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        for g in 0..self.order {
            if !inside[g] {
                gens.push(g);
                for h in self.closure(&gens) {
                    inside[h] = true;
                }
            }
        }
        gens
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let witnesses: Vec<usize> = if n <= EXHAUSTIVE_ASSOC_LIMIT {
            (0..n).collect()
        } else {
            self.generators.clone()
        };
        for &g in &witnesses {
            for x in 0..n {
                let xg = self.mul(x, g);
                for y in 0..n {
                    if self.mul(xg, y) != self.mul(x, self.mul(g, y)) {
                        return Err(Error::InvalidTable(format!(
                            "not associative at ({x}, {g}, {y})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether the whole table is associative, checked triple by triple.
    pub fn is_associative_exhaustive(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    /// Direct product with elements `(a, b)` at index `a·|B| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        let (n, m) = (self.order, other.order);
        if n * m > ORDER_CAP {
            return Err(Error::OrderCap {
                order: (n * m) as u64,
                cap: ORDER_CAP as u64,
            });
        }
        let mut gens: Vec<usize> = self.generators.iter().map(|&g| g * m + other.identity).collect();
        gens.extend(other.generators.iter().map(|&h| self.identity * m + h));
        let labels = (0..n * m)
            .map(|i| format!("({};{})", self.label(i / m), other.label(i % m)))
            .collect();
        Self::from_fn(
            format!("{} x {}", self.name, other.name),
            n * m,
            |x, y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m),
            gens,
            Some(labels),
        )
    }
}
