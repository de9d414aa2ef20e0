//! Racks, in particular conjugacy classes under conjugation.

mod typec;

pub use typec::{
    audit_type_c_dichotomy, type_c_search, AuditEntry, AuditReport, TypeCOutcome, TypeCWitness,
    WitnessConditions, DEFAULT_BUDGET,
};

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grp::{ConjugacyClass, FiniteGroup};

/// Largest inner group that will be enumerated.
pub const INNER_GROUP_CAP: usize = 10_000;

/// Racks at most this large have their axioms checked on every triple.
const EXHAUSTIVE_AXIOM_LIMIT: usize = 200;

#[derive(Clone, Debug)]
pub struct Rack {
    /// Parent-group indices for conjugation racks, `0..n` for abstract ones.
    elements: Vec<usize>,
    /// `table[i * n + j]` is the position of `elements[i] ▷ elements[j]`.
    table: Vec<u32>,
    parent: Option<Arc<FiniteGroup>>,
}

impl PartialEq for Rack {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.table == other.table
    }
}

impl Eq for Rack {}

impl Rack {
    /// An abstract rack on `0..n` from a row-major table of `x ▷ y`.
    pub fn from_table(n: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != n * n || table.iter().any(|&v| v >= n) {
            return Err(Error::InvalidRack("table has the wrong shape".into()));
        }
        let rack = Rack {
            elements: (0..n).collect(),
            table: table.into_iter().map(|v| v as u32).collect(),
            parent: None,
        };
        rack.check_axioms()?;
        Ok(rack)
    }

    /// The class under `x ▷ y = x y x^{-1}`.
    pub fn conjugation(group: Arc<FiniteGroup>, class: &ConjugacyClass) -> Self {
        let elements = class.members.clone();
        let pos: HashMap<usize, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i as u32))
            .collect();
        let mut table = Vec::with_capacity(elements.len() * elements.len());
        for &x in &elements {
            for &y in &elements {
                table.push(pos[&group.conj(x, y)]);
            }
        }
        Rack {
            elements,
            table,
            parent: Some(group),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn parent(&self) -> Option<&Arc<FiniteGroup>> {
        self.parent.as_ref()
    }

    /// Position of `x ▷ y` for positions `x`, `y`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.elements.len() + y] as usize
    }

    pub fn position(&self, element: usize) -> Option<usize> {
        self.elements.iter().position(|&e| e == element)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| self.op(x, y) == y))
    }

    /// Self-distributivity and bijectivity of every left translation.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            let mut hit = vec![false; n];
            for y in 0..n {
                hit[self.op(x, y)] = true;
            }
            if hit.iter().any(|h| !h) {
                return Err(Error::InvalidRack(format!("φ_{x} is not bijective")));
            }
        }
        let step = if n <= EXHAUSTIVE_AXIOM_LIMIT { 1 } else { n / EXHAUSTIVE_AXIOM_LIMIT + 1 };
        for x in (0..n).step_by(step) {
            for y in 0..n {
                for z in 0..n {
                    if self.op(x, self.op(y, z)) != self.op(self.op(x, y), self.op(x, z)) {
                        return Err(Error::InvalidRack(format!(
                            "not self-distributive at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The permutation `φ_x` on positions.
    pub fn translation(&self, x: usize) -> Vec<usize> {
        (0..self.len()).map(|y| self.op(x, y)).collect()
    }

    /// The subgroup of `Sym(X)` generated by all left translations.
    pub fn inner_group(&self) -> Result<FiniteGroup> {
        let gens: Vec<Vec<usize>> = (0..self.len()).map(|x| self.translation(x)).collect();
        let perms = permutation_closure(&gens, INNER_GROUP_CAP)?;
        if self.is_empty() {
            return FiniteGroup::from_table("Inn", 1, &[0], vec![], None);
        }
        FiniteGroup::from_permutations("Inn", &dedup(gens)).inspect(|g| {
            debug_assert_eq!(g.order(), perms.len());
        })
    }

    /// Orbit of position `x` under the translations by `by`.
    pub fn orbit(&self, x: usize, by: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[x] = true;
        let mut out = vec![x];
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for &b in by {
                let z = self.op(b, y);
                if !seen[z] {
                    seen[z] = true;
                    out.push(z);
                    queue.push_back(z);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The product rack `X × Y` with `(x, y) ▷ (x', y') = (x ▷ x', y ▷ y')`.
    pub fn product(&self, other: &Rack) -> Rack {
        let (n, m) = (self.len(), other.len());
        let mut table = Vec::with_capacity(n * m * n * m);
        for a in 0..n * m {
            for b in 0..n * m {
                let x = self.op(a / m, b / m);
                let y = other.op(a % m, b % m);
                table.push((x * m + y) as u32);
            }
        }
        Rack {
            elements: (0..n * m).collect(),
            table,
            parent: None,
        }
    }
}

fn dedup(mut v: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut seen = std::collections::HashSet::new();
    v.retain(|p| seen.insert(p.clone()));
    v
}

fn permutation_closure(gens: &[Vec<usize>], cap: usize) -> Result<Vec<Vec<usize>>> {
    let degree = gens.first().map_or(0, |g| g.len());
    let id: Vec<usize> = (0..degree).collect();
    let mut seen = std::collections::HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&k| g[k]).collect();
            if seen.insert(q.clone()) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "inner group order".into(),
                        cap: cap as u64,
                    });
                }
                out.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    Ok(out)
}

/// How the inner groups of a class and of its image under a quotient map relate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InnExtension {
    pub source_class_size: usize,
    pub target_class_size: usize,
    pub rack_map_surjective: bool,
    pub inn_source_order: usize,
    pub inn_target_order: usize,
    /// `φ_x ↦ φ_{π(x)}` extends to a well-defined homomorphism.
    pub well_defined: bool,
    pub surjective: bool,
}

/// Checks that a rack morphism `O → π(O)` coming from a group map `π` induces a
/// surjective homomorphism `Inn(O) → Inn(π(O))`.
pub fn inn_extension_check(
    g: &FiniteGroup,
    q: &FiniteGroup,
    projection: &[usize],
    class: &ConjugacyClass,
) -> Result<InnExtension> {
    let src = Rack::conjugation(Arc::new(g.clone()), class);
    let image = q.conjugacy_class(projection[class.representative]);
    let tgt = Rack::conjugation(Arc::new(q.clone()), &image);
    let map: Vec<usize> = src
        .elements()
        .iter()
        .map(|&x| {
            tgt.position(projection[x])
                .ok_or_else(|| Error::Precondition("projection does not map the class into its image".into()))
        })
        .collect::<Result<_>>()?;
    let mut covered = vec![false; tgt.len()];
    for &m in &map {
        covered[m] = true;
    }
    // the graph of the would-be homomorphism, generated by pairs (φ_x, φ_{π(x)})
    let pair_gens: Vec<Vec<usize>> = (0..src.len())
        .map(|x| {
            let mut p = src.translation(x);
            p.extend(tgt.translation(map[x]).iter().map(|v| v + src.len()));
            p
        })
        .collect();
    let graph = permutation_closure(&pair_gens, INNER_GROUP_CAP)?;
    let source: std::collections::HashSet<&[usize]> =
        graph.iter().map(|p| &p[..src.len()]).collect();
    let target: std::collections::HashSet<&[usize]> =
        graph.iter().map(|p| &p[src.len()..]).collect();
    let tgt_gens: Vec<Vec<usize>> = (0..tgt.len()).map(|y| tgt.translation(y)).collect();
    let inn_target = permutation_closure(&tgt_gens, INNER_GROUP_CAP)?;
    Ok(InnExtension {
        source_class_size: src.len(),
        target_class_size: tgt.len(),
        rack_map_surjective: covered.iter().all(|&c| c),
        inn_source_order: source.len(),
        inn_target_order: inn_target.len(),
        well_defined: graph.len() == source.len(),
        surjective: target.len() == inn_target.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{GroupSpec, Subgroup};

    fn build(s: &str) -> Arc<FiniteGroup> {
        Arc::new(s.parse::<GroupSpec>().unwrap().build().unwrap())
    }

    #[test]
    fn singleton_and_swap() {
        let r = Rack::from_table(1, vec![0]).unwrap();
        assert!(r.is_abelian());
        assert_eq!(r.inner_group().unwrap().order(), 1);
        // φ_x swaps both points for every x
        let swap = Rack::from_table(2, vec![1, 0, 1, 0]).unwrap();
        assert!(!swap.is_abelian());
        assert_eq!(swap.inner_group().unwrap().order(), 2);
        assert!(Rack::from_table(2, vec![0, 0, 1, 1]).is_err());
    }

    #[test]
    fn heisenberg_classes_are_abelian() {
        let g = build("heisenberg:n=1,m=3");
        for c in g.conjugacy_classes() {
            let r = Rack::conjugation(g.clone(), &c);
            r.check_axioms().unwrap();
            assert!(r.is_abelian());
            assert_eq!(r.inner_group().unwrap().order(), 1);
        }
    }

    #[test]
    fn unitriangular_class_is_not_abelian() {
        let g = build("unitriangular4:m=3");
        let r = g.find("(1,1,1,0,0,0)").unwrap();
        let class = g.conjugacy_class(r);
        assert_eq!(class.len(), 27);
        let rack = Rack::conjugation(g.clone(), &class);
        rack.check_axioms().unwrap();
        assert!(!rack.is_abelian());
        let inn = rack.inner_group().unwrap();
        let mut n = inn.order();
        while n.is_multiple_of(3) {
            n /= 3;
        }
        assert_eq!(n, 1, "inner group should be a 3-group");
    }

    #[test]
    fn inn_extends_along_quotient() {
        let g = build("heisenberg:n=1,m=6");
        let c3 = g.find("(0,0,2)").unwrap();
        let n = Subgroup::generated(&g, &[c3]);
        let (q, proj) = g.quotient(&n).unwrap();
        for class in g.conjugacy_classes() {
            let ext = inn_extension_check(&g, &q, &proj, &class).unwrap();
            assert!(ext.rack_map_surjective && ext.well_defined && ext.surjective);
        }
    }
}
