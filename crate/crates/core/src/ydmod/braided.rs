use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::DiagonalBraiding;
use crate::cyclo::{CycloMatrix, CycloNumber, RootOfUnity, Scalar};
use crate::error::{Error, Result};
use crate::grp::MonomialMatrix;

/// Tensor cubes at most this large have the braid equation checked on every basis word.
const BRAID_CHECK_EXHAUSTIVE: usize = 1 << 20;

/// A braiding `c` on `V ⊗ V`, on the basis `e_i ⊗ e_j` at index `i·D + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedVectorSpace {
    dim: usize,
    /// `c(e_p) = diag[p] · e_{perm[p]}` when every basis tensor goes to a multiple of one.
    monomial: Option<MonomialMatrix>,
    matrix: CycloMatrix,
    provenance: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidingEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub coeff: Scalar,
}

/// `c(e_i ⊗ e_j)` has coefficient `coeff` on `e_k ⊗ e_l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidingExport {
    pub dim: usize,
    pub conductor: u32,
    pub entries: Vec<BraidingEntry>,
}

fn monomial_conductor(m: &MonomialMatrix) -> u32 {
    m.diag.iter().fold(1u32, |acc, r| acc.lcm(&r.order()))
}

impl BraidedVectorSpace {
    pub fn monomial(dim: usize, m: MonomialMatrix) -> Self {
        assert_eq!(m.dim(), dim * dim, "braiding acts on the tensor square");
        let n = monomial_conductor(&m);
        let mut matrix = CycloMatrix::zeros(dim * dim, dim * dim, n);
        for (p, (&t, r)) in m.perm.iter().zip(&m.diag).enumerate() {
            matrix.set(t, p, CycloNumber::from_root(r, n).expect("conductor covers entries"));
        }
        BraidedVectorSpace {
            dim,
            monomial: Some(m),
            matrix,
            provenance: None,
        }
    }

    /// Any operator on the tensor square; the monomial form is detected when present.
    pub fn from_matrix(dim: usize, matrix: CycloMatrix) -> Result<Self> {
        if matrix.rows() != dim * dim || matrix.cols() != dim * dim {
            return Err(Error::Precondition("braiding must be D²×D²".into()));
        }
        let mut cols: Vec<Vec<(usize, &CycloNumber)>> = vec![Vec::new(); dim * dim];
        for (&(r, c), v) in matrix.entries() {
            cols[c].push((r, v));
        }
        let monomial = cols
            .iter()
            .map(|col| match col.as_slice() {
                [(r, v)] => v.as_root_of_unity().map(|root| (*r, root)),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(|pairs| MonomialMatrix {
                perm: pairs.iter().map(|p| p.0).collect(),
                diag: pairs.iter().map(|p| p.1).collect(),
            });
        Ok(BraidedVectorSpace {
            dim,
            monomial,
            matrix,
            provenance: None,
        })
    }

    pub fn from_diagonal(q: &DiagonalBraiding) -> Self {
        let d = q.rank();
        let mut perm = vec![0; d * d];
        let mut diag = vec![RootOfUnity::one(); d * d];
        for i in 0..d {
            for j in 0..d {
                perm[i * d + j] = j * d + i;
                diag[i * d + j] = q.entry(i, j);
            }
        }
        Self::monomial(d, MonomialMatrix { perm, diag }).with_provenance("diagonal braiding".into())
    }

    pub fn with_provenance(mut self, p: String) -> Self {
        self.provenance = Some(p);
        self
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CycloMatrix {
        &self.matrix
    }

    pub fn as_monomial(&self) -> Option<&MonomialMatrix> {
        self.monomial.as_ref()
    }

    pub fn conductor(&self) -> u32 {
        self.matrix.conductor()
    }

    pub fn is_invertible(&self) -> bool {
        match &self.monomial {
            Some(m) => {
                let mut hit = vec![false; m.dim()];
                m.perm.iter().for_each(|&p| hit[p] = true);
                hit.iter().all(|&h| h)
            }
            None => self.matrix.rank() == self.dim * self.dim,
        }
    }

    /// The diagonal matrix when `c(e_i ⊗ e_j) = q_ij e_j ⊗ e_i`.
    pub fn diagonal(&self) -> Option<DiagonalBraiding> {
        let m = self.monomial.as_ref()?;
        let d = self.dim;
        let mut q = vec![vec![RootOfUnity::one(); d]; d];
        for i in 0..d {
            for j in 0..d {
                if m.perm[i * d + j] != j * d + i {
                    return None;
                }
                q[i][j] = m.diag[i * d + j];
            }
        }
        DiagonalBraiding::new(q).ok()
    }

    /// `c` on strands `pos, pos+1` of a basis word of length `n`, monomial case.
    #[inline]
    pub fn apply_monomial(&self, m: &MonomialMatrix, pos: usize, n: usize, word: usize) -> (usize, RootOfUnity) {
        let d = self.dim;
        let stride = d.pow((n - 2 - pos) as u32);
        let p = (word / stride) % (d * d);
        let t = m.perm[p];
        (word + t * stride - p * stride, m.diag[p])
    }

    /// `c` on strands `pos, pos+1` applied to a sparse vector in `V^{⊗n}`.
    pub fn apply_at(
        &self,
        pos: usize,
        n: usize,
        v: &BTreeMap<usize, CycloNumber>,
    ) -> BTreeMap<usize, CycloNumber> {
        let d = self.dim;
        let stride = d.pow((n - 2 - pos) as u32);
        let mut cols: BTreeMap<usize, Vec<(usize, &CycloNumber)>> = BTreeMap::new();
        for (&(r, c), x) in self.matrix.entries() {
            cols.entry(c).or_default().push((r, x));
        }
        let mut out: BTreeMap<usize, CycloNumber> = BTreeMap::new();
        for (&w, x) in v {
            let p = (w / stride) % (d * d);
            if let Some(col) = cols.get(&p) {
                for &(t, a) in col {
                    let target = w + t * stride - p * stride;
                    let y = a * x;
                    out.entry(target)
                        .and_modify(|z| *z = &*z + &y)
                        .or_insert(y);
                }
            }
        }
        out.retain(|_, z| !z.is_zero());
        out
    }

    /// `(c⊗id)(id⊗c)(c⊗id) = (id⊗c)(c⊗id)(id⊗c)` on `V^{⊗3}`, checked exactly.
    pub fn satisfies_braid_equation(&self) -> bool {
        let d = self.dim;
        let total = d * d * d;
        let step = if total <= BRAID_CHECK_EXHAUSTIVE { 1 } else { total / BRAID_CHECK_EXHAUSTIVE + 1 };
        match &self.monomial {
            Some(m) => (0..total).step_by(step).all(|w| {
                let run = |order: [usize; 3]| {
                    order.iter().fold((w, RootOfUnity::one()), |(x, r), &pos| {
                        let (y, s) = self.apply_monomial(m, pos, 3, x);
                        (y, r.mul(&s))
                    })
                };
                run([0, 1, 0]) == run([1, 0, 1])
            }),
            None => (0..total).step_by(step).all(|w| {
                let n = self.conductor();
                let start = BTreeMap::from([(w, CycloNumber::one(n))]);
                let lhs = [0, 1, 0].iter().fold(start.clone(), |v, &p| self.apply_at(p, 3, &v));
                let rhs = [1, 0, 1].iter().fold(start, |v, &p| self.apply_at(p, 3, &v));
                lhs == rhs
            }),
        }
    }

    pub fn export(&self) -> BraidingExport {
        let d = self.dim;
        let mut entries: Vec<BraidingEntry> = self
            .matrix
            .entries()
            .map(|(&(r, c), v)| BraidingEntry {
                i: c / d,
                j: c % d,
                k: r / d,
                l: r % d,
                coeff: Scalar::from_number(v),
            })
            .collect();
        entries.sort_by_key(|e| (e.i, e.j, e.k, e.l));
        BraidingExport {
            dim: d,
            conductor: self.conductor(),
            entries,
        }
    }

    pub fn import(doc: &BraidingExport) -> Result<Self> {
        let d = doc.dim;
        let n = doc
            .entries
            .iter()
            .fold(doc.conductor.max(1), |acc, e| acc.lcm(&e.coeff.conductor()));
        crate::cyclo::check_conductor(n)?;
        let mut m = CycloMatrix::zeros(d * d, d * d, n);
        for e in &doc.entries {
            if e.i.max(e.j).max(e.k).max(e.l) >= d {
                return Err(Error::Parse(format!("braiding entry index out of range: {e:?}")));
            }
            m.add_to(e.k * d + e.l, e.i * d + e.j, &e.coeff.to_number(n)?);
        }
        let mut b = Self::from_matrix(d, m)?;
        b.provenance = Some("imported".into());
        Ok(b)
    }
}
