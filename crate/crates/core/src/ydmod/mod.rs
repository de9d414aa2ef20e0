//! Yetter–Drinfeld modules `M(O, ρ)` over group algebras and their braidings.

mod braided;
mod diagonal;

pub use braided::{BraidedVectorSpace, BraidingEntry, BraidingExport};
pub use diagonal::{DiagonalBraiding, DiagonalExport, DynkinDiagram};

use std::collections::VecDeque;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};
use crate::grp::{Character, ConjugacyClass, FiniteGroup, MonomialRep};

/// A representation of the centralizer of the basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    Character(Character),
    Monomial(MonomialRep),
}

impl Representation {
    pub fn as_monomial(&self) -> MonomialRep {
        match self {
            Representation::Character(c) => MonomialRep::from_character(c),
            Representation::Monomial(m) => m.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Representation::Character(_) => 1,
            Representation::Monomial(m) => m.dim(),
        }
    }
}

impl From<Character> for Representation {
    fn from(c: Character) -> Self {
        Representation::Character(c)
    }
}

impl From<MonomialRep> for Representation {
    fn from(m: MonomialRep) -> Self {
        Representation::Monomial(m)
    }
}

/// `M(O, ρ) = Ind_{G^x}^G W` with basis `g_y ⊗ w_k` at index `pos(y)·d + k`.
#[derive(Clone, Debug)]
pub struct YDModule {
    group: Arc<FiniteGroup>,
    class: ConjugacyClass,
    basepoint: usize,
    rep: Representation,
    mono: MonomialRep,
    /// `transversal[i] = g_y` for `y = class.members[i]`.
    transversal: Vec<usize>,
}

/// The action of the basepoint on the fiber over it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CentralFiber {
    Scalar(RootOfUnity),
    NotScalar,
}

impl YDModule {
    /// Builds `M(O_x, ρ)` with the transversal found by breadth-first search from `x`
    /// over the group generators in index order.
    pub fn new(group: Arc<FiniteGroup>, basepoint: usize, rep: impl Into<Representation>) -> Result<Self> {
        let mut gens = group.generators().to_vec();
        gens.sort_unstable();
        Self::with_generator_order(group, basepoint, rep, &gens)
    }

    /// Like [`YDModule::new`] but searching over `gens` in the given order.
    pub fn with_generator_order(
        group: Arc<FiniteGroup>,
        basepoint: usize,
        rep: impl Into<Representation>,
        gens: &[usize],
    ) -> Result<Self> {
        let class = group.conjugacy_class(basepoint);
        let mut transversal = vec![usize::MAX; class.len()];
        let pos = |y: usize| class.members.binary_search(&y).expect("class member");
        transversal[pos(basepoint)] = group.identity();
        let mut queue = VecDeque::from([basepoint]);
        while let Some(y) = queue.pop_front() {
            let gy = transversal[pos(y)];
            for &s in gens {
                let z = group.conj(s, y);
                let pz = pos(z);
                if transversal[pz] == usize::MAX {
                    transversal[pz] = group.mul(s, gy);
                    queue.push_back(z);
                }
            }
        }
        if transversal.contains(&usize::MAX) {
            return Err(Error::Precondition("generators do not reach the whole class".into()));
        }
        Self::with_transversal(group, basepoint, rep, transversal)
    }

    /// Uses an explicit transversal, listed in class-member order.
    pub fn with_transversal(
        group: Arc<FiniteGroup>,
        basepoint: usize,
        rep: impl Into<Representation>,
        transversal: Vec<usize>,
    ) -> Result<Self> {
        let rep = rep.into();
        let class = group.conjugacy_class(basepoint);
        let mono = rep.as_monomial();
        if mono.domain() != &class.centralizer {
            return Err(Error::DomainMismatch(
                "representation is not defined on the centralizer of the basepoint".into(),
            ));
        }
        if transversal.len() != class.len() {
            return Err(Error::Precondition("transversal has the wrong length".into()));
        }
        for (i, &g) in transversal.iter().enumerate() {
            if group.conj(g, basepoint) != class.members[i] {
                return Err(Error::Precondition(format!(
                    "transversal element for member {i} does not conjugate the basepoint to it"
                )));
            }
        }
        let m = YDModule {
            group,
            class,
            basepoint,
            rep,
            mono,
            transversal,
        };
        m.check_t_invariance()?;
        Ok(m)
    }

    fn check_t_invariance(&self) -> Result<()> {
        let g = &self.group;
        for &h in g.generators() {
            for i in 0..self.class.len() {
                let t = self.t(h, i);
                if !self.class.centralizer.contains(t) {
                    return Err(Error::Precondition("t_{h,y} left the centralizer".into()));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn class(&self) -> &ConjugacyClass {
        &self.class
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn monomial(&self) -> &MonomialRep {
        &self.mono
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    pub fn fiber_dim(&self) -> usize {
        self.mono.dim()
    }

    pub fn dim(&self) -> usize {
        self.class.len() * self.fiber_dim()
    }

    fn pos(&self, y: usize) -> usize {
        self.class.members.binary_search(&y).expect("class member")
    }

    /// `t_{h,y} = g_{h▷y}^{-1} h g_y` for `y` at class position `i`.
    pub fn t(&self, h: usize, i: usize) -> usize {
        let g = &self.group;
        let y = self.class.members[i];
        let j = self.pos(g.conj(h, y));
        g.mul(g.mul(g.inv(self.transversal[j]), h), self.transversal[i])
    }

    /// Degree of a basis vector.
    pub fn degree(&self, basis: usize) -> usize {
        self.class.members[basis / self.fiber_dim()]
    }

    /// `h · b = λ b'` for a basis vector `b`.
    pub fn act(&self, h: usize, basis: usize) -> (usize, RootOfUnity) {
        let d = self.fiber_dim();
        let (i, k) = (basis / d, basis % d);
        let y = self.class.members[i];
        let j = self.pos(self.group.conj(h, y));
        let m = self.mono.matrix(self.t(h, i));
        (j * d + m.perm[k], m.diag[k])
    }

    /// The braiding `c(a ⊗ b) = deg(a)·b ⊗ a`.
    pub fn braiding(&self) -> BraidedVectorSpace {
        let dim = self.dim();
        let mut perm = vec![0; dim * dim];
        let mut diag = vec![RootOfUnity::one(); dim * dim];
        for a in 0..dim {
            let z = self.degree(a);
            for b in 0..dim {
                let (b2, lambda) = self.act(z, b);
                perm[a * dim + b] = b2 * dim + a;
                diag[a * dim + b] = lambda;
            }
        }
        BraidedVectorSpace::monomial(dim, crate::grp::MonomialMatrix { perm, diag })
            .with_provenance(format!(
                "Yetter-Drinfeld module over {} on the class of {}",
                self.group.name(),
                self.group.label(self.basepoint)
            ))
    }

    /// The diagonal matrix of the braiding, when the class is an abelian rack and every
    /// `t_{z,y}` acts diagonally.
    pub fn diagonal_form(&self) -> std::result::Result<DiagonalBraiding, String> {
        let g = &self.group;
        for &z in &self.class.members {
            for &y in &self.class.members {
                if g.conj(z, y) != y {
                    return Err(format!(
                        "class is not an abelian rack: {} ▷ {} ≠ {}",
                        g.label(z),
                        g.label(y),
                        g.label(y)
                    ));
                }
            }
        }
        let dim = self.dim();
        let mut q = vec![vec![RootOfUnity::one(); dim]; dim];
        for (a, row) in q.iter_mut().enumerate() {
            let z = self.degree(a);
            for (b, entry) in row.iter_mut().enumerate() {
                let (b2, lambda) = self.act(z, b);
                if b2 != b {
                    return Err(format!(
                        "t acts non-diagonally on the fiber (basis pair {a}, {b})"
                    ));
                }
                *entry = lambda;
            }
        }
        Ok(DiagonalBraiding::new(q).expect("square"))
    }

    /// The action of the basepoint on its fiber and the fiber dimension.
    pub fn central_fiber(&self) -> (CentralFiber, usize) {
        let m = self.mono.matrix(self.basepoint);
        let f = match m.as_scalar() {
            Some(r) => CentralFiber::Scalar(r),
            None => CentralFiber::NotScalar,
        };
        (f, self.fiber_dim())
    }
}

/// Whether `c_{N,M} c_{M,N} = id` on `M ⊗ N`.
pub fn c_squared_is_identity(m: &YDModule, n: &YDModule) -> Result<bool> {
    if m.group() != n.group() {
        return Err(Error::DomainMismatch("modules over different groups".into()));
    }
    for a in 0..m.dim() {
        let z = m.degree(a);
        for b in 0..n.dim() {
            let (b2, lambda) = n.act(z, b);
            let (a2, mu) = m.act(n.degree(b2), a);
            if a2 != a || b2 != b || !lambda.mul(&mu).is_one() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
