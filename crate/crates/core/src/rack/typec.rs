use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::Rack;
use crate::error::{Error, Result};
use crate::grp::{FiniteGroup, Nilpotency, Subgroup};

/// Default number of interacting pairs examined before giving up.
pub const DEFAULT_BUDGET: u64 = 100_000;

/// Which defining conditions of a type C subrack hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessConditions {
    /// `r ▷ s ≠ s`.
    pub interacting: bool,
    /// `R` and `S` are the `Inn(Y)`-orbits of `r` and `s`, and they are disjoint.
    pub orbits: bool,
    /// `min(|R|, |S|) > 2` or `max(|R|, |S|) > 4`.
    pub size_bound: bool,
}

impl WitnessConditions {
    pub fn all(&self) -> bool {
        self.interacting && self.orbits && self.size_bound
    }
}

/// A decomposable subrack `Y = R ∐ S` certifying type C.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCWitness {
    pub r: usize,
    pub s: usize,
    pub r_label: String,
    pub s_label: String,
    /// Order of `H = ⟨r, s⟩`.
    pub h_order: usize,
    pub r_members: Vec<usize>,
    pub s_members: Vec<usize>,
    pub sizes: (usize, usize),
    pub conditions: WitnessConditions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum TypeCOutcome {
    TypeC { witness: TypeCWitness },
    /// Only returned for abelian racks.
    NotTypeC,
    /// No two-generator witness among the examined pairs; `exhausted` means every
    /// interacting pair was tried. Larger decomposable subracks are not searched.
    Undetermined { examined: u64, exhausted: bool },
}

impl TypeCOutcome {
    pub fn witness(&self) -> Option<&TypeCWitness> {
        match self {
            TypeCOutcome::TypeC { witness } => Some(witness),
            _ => None,
        }
    }
}

fn size_bound(a: usize, b: usize) -> bool {
    a.min(b) > 2 || a.max(b) > 4
}

/// Orbit of `x` under conjugation by the elements of `by`, inside `universe`.
fn conj_orbit(g: &FiniteGroup, x: usize, by: &[usize]) -> Vec<usize> {
    let mut out = vec![x];
    let mut i = 0;
    while i < out.len() {
        let y = out[i];
        for &b in by {
            let z = g.conj(b, y);
            if !out.contains(&z) {
                out.push(z);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

impl TypeCWitness {
    /// Rechecks every condition from the raw fields using only the group law.
    pub fn revalidate(&self, g: &FiniteGroup) -> Result<WitnessConditions> {
        let fail = |m: &str| Err(Error::InvalidWitness(m.to_string()));
        if !self.r_members.contains(&self.r) || !self.s_members.contains(&self.s) {
            return fail("r or s missing from its part");
        }
        let mut y: Vec<usize> = self.r_members.iter().chain(&self.s_members).copied().collect();
        y.sort_unstable();
        let n = y.len();
        y.dedup();
        let disjoint = y.len() == n;
        // Y must be a subrack
        for &a in &y {
            for &b in &y {
                if y.binary_search(&g.conj(a, b)).is_err() {
                    return fail("R ∐ S is not closed under conjugation");
                }
            }
        }
        let interacting = g.conj(self.r, self.s) != self.s;
        let orbit_r = conj_orbit(g, self.r, &y);
        let orbit_s = conj_orbit(g, self.s, &y);
        let mut rm = self.r_members.clone();
        let mut sm = self.s_members.clone();
        rm.sort_unstable();
        sm.sort_unstable();
        let conditions = WitnessConditions {
            interacting,
            orbits: disjoint && orbit_r == rm && orbit_s == sm,
            size_bound: size_bound(rm.len(), sm.len()),
        };
        if (rm.len(), sm.len()) != self.sizes {
            return fail("recorded sizes disagree with the parts");
        }
        if conditions != self.conditions {
            return fail("recorded conditions disagree with a fresh check");
        }
        if !conditions.all() {
            return fail("not all conditions hold");
        }
        Ok(conditions)
    }
}

/// Looks for a type C witness among two-generator subracks `O_r^H ∐ O_s^H` with
/// `H = ⟨r, s⟩`, scanning pairs in lexicographic element order.
pub fn type_c_search(rack: &Rack, budget: Option<u64>) -> Result<TypeCOutcome> {
    let g: &Arc<FiniteGroup> = rack.parent().ok_or(Error::MissingParent)?;
    if rack.is_abelian() {
        return Ok(TypeCOutcome::NotTypeC);
    }
    let n = rack.len();
    let mut examined = 0u64;
    for r in 0..n {
        for s in 0..n {
            if rack.op(r, s) == s {
                continue;
            }
            if budget.is_some_and(|b| examined >= b) {
                return Ok(TypeCOutcome::Undetermined {
                    examined,
                    exhausted: false,
                });
            }
            examined += 1;
            let orbit_r = rack.orbit(r, &[r, s]);
            if orbit_r.binary_search(&s).is_ok() {
                continue;
            }
            let orbit_s = rack.orbit(s, &[r, s]);
            if !size_bound(orbit_r.len(), orbit_s.len()) {
                continue;
            }
            // orbits of r and s under Inn(Y) restricted to Y
            let y: Vec<usize> = orbit_r.iter().chain(&orbit_s).copied().collect();
            if rack.orbit(r, &y) != orbit_r || rack.orbit(s, &y) != orbit_s {
                continue;
            }
            let (re, se) = (rack.elements()[r], rack.elements()[s]);
            let witness = TypeCWitness {
                r: re,
                s: se,
                r_label: g.label(re),
                s_label: g.label(se),
                h_order: Subgroup::generated(g, &[re, se]).order(),
                r_members: orbit_r.iter().map(|&i| rack.elements()[i]).collect(),
                s_members: orbit_s.iter().map(|&i| rack.elements()[i]).collect(),
                sizes: (orbit_r.len(), orbit_s.len()),
                conditions: WitnessConditions {
                    interacting: true,
                    orbits: true,
                    size_bound: true,
                },
            };
            witness.revalidate(g)?;
            return Ok(TypeCOutcome::TypeC { witness });
        }
    }
    Ok(TypeCOutcome::Undetermined {
        examined,
        exhausted: true,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AuditEntry {
    Abelian,
    TypeC { witness: TypeCWitness },
    /// A non-abelian class with no two-generator witness even after a full search.
    Violation { examined: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditClass {
    pub representative: usize,
    pub label: String,
    pub size: usize,
    pub entry: AuditEntry,
    pub escalated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub group: String,
    pub order: usize,
    pub classes: Vec<AuditClass>,
    pub violations: usize,
}

/// Checks that every conjugacy class of a nilpotent group of odd order is either an
/// abelian rack or of type C. Searches that run out of budget are retried without one.
pub fn audit_type_c_dichotomy(g: Arc<FiniteGroup>, budget: u64) -> Result<AuditReport> {
    if g.order().is_multiple_of(2) {
        return Err(Error::Precondition(format!("group order {} is even", g.order())));
    }
    if g.upper_central_series().1 == Nilpotency::NotNilpotent {
        return Err(Error::Precondition("group is not nilpotent".into()));
    }
    let mut classes = Vec::new();
    for class in g.conjugacy_classes() {
        let rack = Rack::conjugation(g.clone(), &class);
        let mut escalated = false;
        let entry = if rack.is_abelian() {
            AuditEntry::Abelian
        } else {
            let mut outcome = type_c_search(&rack, Some(budget))?;
            if let TypeCOutcome::Undetermined { exhausted: false, .. } = outcome {
                escalated = true;
                outcome = type_c_search(&rack, None)?;
            }
            match outcome {
                TypeCOutcome::TypeC { witness } => AuditEntry::TypeC { witness },
                TypeCOutcome::Undetermined { examined, .. } => AuditEntry::Violation { examined },
                TypeCOutcome::NotTypeC => unreachable!("non-abelian rack"),
            }
        };
        classes.push(AuditClass {
            representative: class.representative,
            label: g.label(class.representative),
            size: class.len(),
            entry,
            escalated,
        });
    }
    let violations = classes
        .iter()
        .filter(|c| matches!(c.entry, AuditEntry::Violation { .. }))
        .count();
    Ok(AuditReport {
        group: g.name().to_string(),
        order: g.order(),
        classes,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::GroupSpec;

    fn build(s: &str) -> Arc<FiniteGroup> {
        Arc::new(s.parse::<GroupSpec>().unwrap().build().unwrap())
    }

    #[test]
    fn abelian_rack_is_not_type_c() {
        let g = build("heisenberg:n=1,m=3");
        let class = g.conjugacy_class(g.find("(1,0,0)").unwrap());
        let rack = Rack::conjugation(g, &class);
        assert_eq!(type_c_search(&rack, None).unwrap(), TypeCOutcome::NotTypeC);
    }

    #[test]
    fn abstract_rack_needs_parent() {
        let r = Rack::from_table(2, vec![1, 0, 1, 0]).unwrap();
        assert_eq!(type_c_search(&r, None), Err(Error::MissingParent));
    }

    #[test]
    fn unitriangular_witness() {
        let g = build("unitriangular4:m=3");
        let class = g.conjugacy_class(g.find("(1,1,1,0,0,0)").unwrap());
        let rack = Rack::conjugation(g.clone(), &class);
        let out = type_c_search(&rack, Some(DEFAULT_BUDGET)).unwrap();
        let w = out.witness().expect("type C");
        assert_eq!(w.h_order, 27);
        assert!(w.revalidate(&g).unwrap().all());
        let mut forged = w.clone();
        forged.s_members = forged.r_members.clone();
        assert!(forged.revalidate(&g).is_err());
    }

    #[test]
    fn dihedral_semidirect_has_no_two_generator_witness() {
        let g = build("d4_semidirect_z4");
        let class = g.conjugacy_class(g.find("xs0").unwrap());
        assert_eq!(class.len(), 4);
        let rack = Rack::conjugation(g, &class);
        assert!(!rack.is_abelian());
        assert!(matches!(
            type_c_search(&rack, None).unwrap(),
            TypeCOutcome::Undetermined { exhausted: true, .. }
        ));
    }

    #[test]
    fn audit_rejects_even_order() {
        assert!(matches!(
            audit_type_c_dichotomy(build("dihedral4"), DEFAULT_BUDGET),
            Err(Error::Precondition(_))
        ));
    }
}
