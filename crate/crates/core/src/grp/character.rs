use num_integer::Integer;
use num_rational::BigRational;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{FiniteGroup, Subgroup};
use crate::cyclo::{CycloNumber, RootOfUnity};
use crate::error::{Error, Result};

/// A one-dimensional character of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCharacter", into = "RawCharacter")]
pub struct Character {
    domain: Subgroup,
    values: Vec<Option<RootOfUnity>>,
}

#[derive(Serialize, Deserialize)]
struct RawCharacter {
    domain: Subgroup,
    values: Vec<(usize, RootOfUnity)>,
}

impl From<Character> for RawCharacter {
    fn from(c: Character) -> Self {
        let values = c
            .domain
            .members()
            .iter()
            .map(|&m| (m, c.values[m].expect("defined on domain")))
            .collect();
        RawCharacter {
            domain: c.domain,
            values,
        }
    }
}

impl TryFrom<RawCharacter> for Character {
    type Error = Error;
    fn try_from(raw: RawCharacter) -> Result<Self> {
        let mut values = vec![None; raw.domain.parent_order()];
        for (m, r) in raw.values {
            if !raw.domain.contains(m) {
                return Err(Error::DomainMismatch(format!("value at {m} outside the domain")));
            }
            values[m] = Some(r);
        }
        if raw.domain.members().iter().any(|&m| values[m].is_none()) {
            return Err(Error::DomainMismatch("character undefined on part of its domain".into()));
        }
        Ok(Character {
            domain: raw.domain,
            values,
        })
    }
}

impl Character {
    pub fn trivial(g: &FiniteGroup, domain: &Subgroup) -> Self {
        let mut values = vec![None; g.order()];
        for &m in domain.members() {
            values[m] = Some(RootOfUnity::one());
        }
        Character {
            domain: domain.clone(),
            values,
        }
    }

    /// Builds a character from explicit values, checking multiplicativity.
    pub fn from_values(
        g: &FiniteGroup,
        domain: &Subgroup,
        values: impl IntoIterator<Item = (usize, RootOfUnity)>,
    ) -> Result<Self> {
        let raw = RawCharacter {
            domain: domain.clone(),
            values: values.into_iter().collect(),
        };
        let c = Character::try_from(raw)?;
        c.validate(g)?;
        Ok(c)
    }

    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        for &a in self.domain.members() {
            let va = self.at(a);
            if !va.divides_order(g.element_order(a) as u32) {
                return Err(Error::DomainMismatch(format!("value order at {a} does not divide |{a}|")));
            }
            for &b in self.domain.members() {
                if self.at(g.mul(a, b)) != va.mul(&self.at(b)) {
                    return Err(Error::DomainMismatch(format!("not multiplicative at ({a}, {b})")));
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn value(&self, x: usize) -> Option<RootOfUnity> {
        self.values.get(x).copied().flatten()
    }

    /// The value at `x`; panics outside the domain.
    pub fn at(&self, x: usize) -> RootOfUnity {
        self.values[x].expect("element outside the character's domain")
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().flatten().all(|r| r.is_one())
    }

    pub fn mul(&self, other: &Character) -> Result<Character> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch("characters on different subgroups".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.zip(*b).map(|(x, y)| x.mul(&y)))
            .collect();
        Ok(Character {
            domain: self.domain.clone(),
            values,
        })
    }

    /// Least common multiple of the value orders.
    pub fn conductor(&self) -> u32 {
        self.values
            .iter()
            .flatten()
            .fold(1u32, |acc, r| acc.lcm(&r.order()))
    }

    pub fn restrict(&self, sub: &Subgroup) -> Result<Character> {
        if !sub.members().iter().all(|&m| self.domain.contains(m)) {
            return Err(Error::DomainMismatch("restriction to a non-subgroup".into()));
        }
        let mut values = vec![None; self.values.len()];
        for &m in sub.members() {
            values[m] = self.values[m];
        }
        Ok(Character {
            domain: sub.clone(),
            values,
        })
    }
}

/// A cyclic decomposition of `H / K` as `(basis element, order)` pairs together with
/// the coordinates of every member of `H`.
struct AbelianBasis {
    basis: Vec<(usize, u32)>,
    coords: Vec<Option<Vec<u32>>>,
}

fn order_mod(g: &FiniteGroup, x: usize, in_k: &[bool]) -> u32 {
    let mut y = x;
    let mut k = 1;
    while !in_k[y] {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

/// Repeatedly extracts an element of maximal order in the quotient by the span so far,
/// lifted to an element of the same order modulo `K` (minimal index among such lifts).
fn abelian_basis(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> AbelianBasis {
    let mut span = k.membership();
    let mut span_members: Vec<usize> = k.members().to_vec();
    let in_k = k.membership();
    let mut basis = Vec::new();
    let mut coords: Vec<Option<Vec<u32>>> = vec![None; g.order()];
    for &m in k.members() {
        coords[m] = Some(Vec::new());
    }
    while span_members.len() < h.order() {
        // order of each element modulo the current span
        let (best, m) = h
            .members()
            .iter()
            .map(|&x| (x, order_mod(g, x, &span)))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .unwrap();
        // lift: minimal-index element of the coset best·span whose m-th power lies in K
        let lift = h
            .members()
            .iter()
            .copied()
            .filter(|&y| span[g.mul(g.inv(best), y)])
            .find(|&y| in_k[g.pow(y, m as i64)])
            .expect("a maximal-order coset always has a lift of the same order");
        basis.push((lift, m));
        // extend the span and the coordinates
        let old: Vec<Vec<u32>> = span_members
            .iter()
            .map(|&s| coords[s].clone().expect("span coordinates known"))
            .collect();
        let mut new_members = Vec::with_capacity(span_members.len() * m as usize);
        let mut power = g.identity();
        for e in 0..m {
            for (&s, c) in span_members.iter().zip(&old) {
                let y = g.mul(power, s);
                let mut c = c.clone();
                c.push(e);
                coords[y] = Some(c);
                new_members.push(y);
            }
            power = g.mul(power, lift);
        }
        for &y in &new_members {
            span[y] = true;
        }
        span_members = new_members;
    }
    AbelianBasis { basis, coords }
}

fn enumerate_characters(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Vec<Character> {
    let ab = abelian_basis(g, h, k);
    let orders: Vec<u32> = ab.basis.iter().map(|&(_, m)| m).collect();
    let total: usize = orders.iter().map(|&m| m as usize).product();
    let mut out = Vec::with_capacity(total);
    let mut exps = vec![0u32; orders.len()];
    for _ in 0..total {
        let mut values = vec![None; g.order()];
        for &x in h.members() {
            let c = ab.coords[x].as_ref().expect("coordinates for every member");
            let v = c
                .iter()
                .zip(&exps)
                .zip(&orders)
                .fold(RootOfUnity::one(), |acc, ((&ci, &ei), &m)| {
                    acc.mul(&RootOfUnity::new((ci as i64) * (ei as i64), m))
                });
            values[x] = Some(v);
        }
        out.push(Character {
            domain: h.clone(),
            values,
        });
        // odometer over exponent vectors, first coordinate slowest
        for i in (0..exps.len()).rev() {
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
        }
    }
    out
}

/// All characters of an abelian subgroup, trivial character first.
pub fn characters_of_abelian(g: &FiniteGroup, a: &Subgroup) -> Result<Vec<Character>> {
    if !a.is_abelian(g) {
        return Err(Error::NotAbelian);
    }
    Ok(enumerate_characters(g, a, &Subgroup::trivial(g)))
}

/// All characters of a subgroup `H`, i.e. the characters of `H / [H, H]`.
pub fn characters(g: &FiniteGroup, h: &Subgroup) -> Vec<Character> {
    let k = g.commutator_subgroup_of(h);
    enumerate_characters(g, h, &k)
}

/// A monomial matrix: `M e_k = diag[k] · e_{perm[k]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialMatrix {
    pub perm: Vec<usize>,
    pub diag: Vec<RootOfUnity>,
}

impl MonomialMatrix {
    pub fn identity(d: usize) -> Self {
        MonomialMatrix {
            perm: (0..d).collect(),
            diag: vec![RootOfUnity::one(); d],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn compose(&self, other: &MonomialMatrix) -> MonomialMatrix {
        let d = self.dim();
        let mut perm = vec![0; d];
        let mut diag = vec![RootOfUnity::one(); d];
        for k in 0..d {
            let j = other.perm[k];
            perm[k] = self.perm[j];
            diag[k] = other.diag[k].mul(&self.diag[j]);
        }
        MonomialMatrix { perm, diag }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.diag.iter().all(|r| r.is_one())
    }

    /// `Some(λ)` when the matrix is `λ·id`.
    pub fn as_scalar(&self) -> Option<RootOfUnity> {
        let first = *self.diag.first()?;
        let diagonal = self.perm.iter().enumerate().all(|(i, &p)| i == p);
        (diagonal && self.diag.iter().all(|&r| r == first)).then_some(first)
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Trace as a group-ring element over `Z/conductor`.
    fn trace_counts(&self, conductor: u32, counts: &mut [i64]) {
        for (i, &p) in self.perm.iter().enumerate() {
            if p == i {
                let e = self.diag[i].exponent_at(conductor).expect("conductor covers diagonal");
                counts[e as usize] += 1;
            }
        }
    }
}

/// A representation by monomial matrices of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialRep {
    domain: Subgroup,
    dim: usize,
    matrices: Vec<Option<MonomialMatrix>>,
}

impl MonomialRep {
    pub fn from_character(chi: &Character) -> Self {
        let matrices = chi
            .values
            .iter()
            .map(|v| {
                v.map(|r| MonomialMatrix {
                    perm: vec![0],
                    diag: vec![r],
                })
            })
            .collect();
        MonomialRep {
            domain: chi.domain.clone(),
            dim: 1,
            matrices,
        }
    }

    /// Builds a representation from explicit matrices on every domain member.
    pub fn from_matrices(
        g: &FiniteGroup,
        domain: &Subgroup,
        dim: usize,
        mats: impl IntoIterator<Item = (usize, MonomialMatrix)>,
    ) -> Result<Self> {
        let mut matrices = vec![None; g.order()];
        for (x, m) in mats {
            if !domain.contains(x) || m.dim() != dim {
                return Err(Error::DomainMismatch(format!("bad matrix for element {x}")));
            }
            matrices[x] = Some(m);
        }
        let rep = MonomialRep {
            domain: domain.clone(),
            dim,
            matrices,
        };
        rep.validate(g)?;
        Ok(rep)
    }

    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        if self.domain.members().iter().any(|&m| self.matrices[m].is_none()) {
            return Err(Error::DomainMismatch("representation undefined on part of its domain".into()));
        }
        if !self.matrix(g.identity()).is_identity() {
            return Err(Error::DomainMismatch("identity does not act trivially".into()));
        }
        for &a in self.domain.members() {
            for &b in self.domain.members() {
                if *self.matrix(g.mul(a, b)) != self.matrix(a).compose(self.matrix(b)) {
                    return Err(Error::DomainMismatch(format!("not multiplicative at ({a}, {b})")));
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, x: usize) -> &MonomialMatrix {
        self.matrices[x]
            .as_ref()
            .expect("element outside the representation's domain")
    }

    pub fn get(&self, x: usize) -> Option<&MonomialMatrix> {
        self.matrices.get(x).and_then(|m| m.as_ref())
    }

    pub fn conductor(&self) -> u32 {
        self.matrices
            .iter()
            .flatten()
            .flat_map(|m| m.diag.iter())
            .fold(1u32, |acc, r| acc.lcm(&r.order()))
    }

    pub fn trace(&self, x: usize) -> CycloNumber {
        let n = self.conductor();
        let mut counts = vec![0i64; n as usize];
        self.matrix(x).trace_counts(n, &mut counts);
        CycloNumber::from_group_ring(&counts, n)
    }

    /// Restriction to a subgroup of the domain.
    pub fn restrict(&self, sub: &Subgroup) -> Result<MonomialRep> {
        if !sub.members().iter().all(|&m| self.domain.contains(m)) {
            return Err(Error::DomainMismatch("restriction to a non-subgroup".into()));
        }
        let mut matrices = vec![None; self.matrices.len()];
        for &m in sub.members() {
            matrices[m] = self.matrices[m].clone();
        }
        Ok(MonomialRep {
            domain: sub.clone(),
            dim: self.dim,
            matrices,
        })
    }

    /// Direct sum, block diagonal with `self` first.
    pub fn direct_sum(&self, other: &MonomialRep) -> Result<MonomialRep> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch("direct sum over different subgroups".into()));
        }
        let d = self.dim;
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                a.as_ref().zip(b.as_ref()).map(|(a, b)| {
                    let mut perm = a.perm.clone();
                    perm.extend(b.perm.iter().map(|p| p + d));
                    let mut diag = a.diag.clone();
                    diag.extend(b.diag.iter().copied());
                    MonomialMatrix { perm, diag }
                })
            })
            .collect();
        Ok(MonomialRep {
            domain: self.domain.clone(),
            dim: d + other.dim,
            matrices,
        })
    }
}

/// `Ind_H^G χ` on the left-coset transversal of minimal-index representatives.
pub fn induce_character(g: &FiniteGroup, h: &Subgroup, chi: &Character) -> Result<MonomialRep> {
    if chi.domain() != h {
        return Err(Error::DomainMismatch("character is not defined on the given subgroup".into()));
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut transversal = Vec::new();
    for t in 0..g.order() {
        if coset[t] != usize::MAX {
            continue;
        }
        let j = transversal.len();
        transversal.push(t);
        for &x in h.members() {
            coset[g.mul(t, x)] = j;
        }
    }
    let k = transversal.len();
    let mut matrices = vec![None; g.order()];
    for (x, slot) in matrices.iter_mut().enumerate() {
        let mut perm = vec![0; k];
        let mut diag = vec![RootOfUnity::one(); k];
        for (i, &ti) in transversal.iter().enumerate() {
            let y = g.mul(x, ti);
            let j = coset[y];
            perm[i] = j;
            diag[i] = chi.at(g.mul(g.inv(transversal[j]), y));
        }
        *slot = Some(MonomialMatrix { perm, diag });
    }
    Ok(MonomialRep {
        domain: Subgroup::whole(g),
        dim: k,
        matrices,
    })
}

/// `(1/|H|) Σ_h |tr ρ(h)|²`, which is 1 exactly for irreducible representations.
pub fn rep_character_norm(rho: &MonomialRep) -> BigRational {
    let n = rho.conductor();
    let mut counts = vec![0i64; n as usize];
    let mut fixed = vec![0i64; n as usize];
    for &x in rho.domain.members() {
        fixed.iter_mut().for_each(|c| *c = 0);
        rho.matrix(x).trace_counts(n, &mut fixed);
        // |Σ ζ^a|² = Σ_{a,b} ζ^{a-b}
        for (a, &ca) in fixed.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (b, &cb) in fixed.iter().enumerate() {
                if cb != 0 {
                    counts[(a + n as usize - b) % n as usize] += ca * cb;
                }
            }
        }
    }
    let total = CycloNumber::from_group_ring(&counts, n)
        .as_rational()
        .expect("a sum of squared moduli is rational");
    total / BigRational::from_integer(BigInt::from(rho.domain.order()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::GroupSpec;
    use num_traits::One;

    fn build(s: &str) -> FiniteGroup {
        s.parse::<GroupSpec>().unwrap().build().unwrap()
    }

    #[test]
    fn cyclic_characters() {
        let g = build("cyclic:m=3");
        let chars = characters_of_abelian(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(chars.len(), 3);
        assert!(chars[0].is_trivial());
        for c in &chars {
            c.validate(&g).unwrap();
            assert!(c.at(1).divides_order(3));
        }
    }

    #[test]
    fn trivial_group_has_trivial_character() {
        let g = build("cyclic:m=1");
        let chars = characters(&g, &Subgroup::whole(&g));
        assert_eq!(chars.len(), 1);
        assert!(chars[0].is_trivial());
    }

    #[test]
    fn non_abelian_rejected() {
        let g = build("dihedral4");
        assert_eq!(
            characters_of_abelian(&g, &Subgroup::whole(&g)),
            Err(Error::NotAbelian)
        );
        assert_eq!(characters(&g, &Subgroup::whole(&g)).len(), 4);
    }

    #[test]
    fn mixed_order_decomposition() {
        let g = build("abelian:m=2x4x3");
        let chars = characters_of_abelian(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(chars.len(), 24);
        for (i, a) in chars.iter().enumerate() {
            a.validate(&g).unwrap();
            for b in &chars[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn induced_from_trivial_subgroup() {
        let g = build("cyclic:m=2");
        let t = Subgroup::trivial(&g);
        let chi = Character::trivial(&g, &t);
        let rho = induce_character(&g, &t, &chi).unwrap();
        assert_eq!(rho.dim(), 2);
        rho.validate(&g).unwrap();
        assert_eq!(rep_character_norm(&rho), BigRational::from_integer(2.into()));
    }

    #[test]
    fn character_as_rep_has_norm_one() {
        let g = build("abelian:m=3x3");
        for c in characters_of_abelian(&g, &Subgroup::whole(&g)).unwrap() {
            assert!(rep_character_norm(&MonomialRep::from_character(&c)).is_one());
        }
    }
}
