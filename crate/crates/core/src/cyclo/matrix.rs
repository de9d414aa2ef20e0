use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use super::CycloNumber;

/// A sparse matrix over `Q(ζ_N)` for a single shared conductor `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloMatrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    entries: BTreeMap<(usize, usize), CycloNumber>,
}

impl CycloMatrix {
    pub fn zeros(rows: usize, cols: usize, conductor: u32) -> Self {
        CycloMatrix {
            rows,
            cols,
            conductor,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        let mut m = Self::zeros(n, n, conductor);
        for i in 0..n {
            m.entries.insert((i, i), CycloNumber::one(conductor));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &CycloNumber)> {
        self.entries.iter()
    }

    pub fn get(&self, row: usize, col: usize) -> CycloNumber {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(|| CycloNumber::zero(self.conductor))
    }

    /// Re-expresses every entry at a conductor divisible by the current one.
    pub fn lift_conductor(&mut self, target: u32) {
        if target == self.conductor {
            return;
        }
        let n = self.conductor.lcm(&target);
        for v in self.entries.values_mut() {
            *v = v.lift_conductor(n).expect("lcm is a multiple");
        }
        self.conductor = n;
    }

    /// Stores `value`, widening the shared conductor if needed. Zero removes the entry.
    pub fn set(&mut self, row: usize, col: usize, value: CycloNumber) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        if value.is_zero() {
            self.entries.remove(&(row, col));
            return;
        }
        if !self.conductor.is_multiple_of(value.conductor()) {
            self.lift_conductor(value.conductor());
        }
        let v = value.lift_conductor(self.conductor).expect("divides");
        self.entries.insert((row, col), v);
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &CycloNumber) {
        let cur = self.get(row, col);
        self.set(row, col, &cur + value);
    }

    pub fn transpose(&self) -> CycloMatrix {
        CycloMatrix {
            rows: self.cols,
            cols: self.rows,
            conductor: self.conductor,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &CycloMatrix) -> CycloMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let n = self.conductor.lcm(&other.conductor);
        let mut by_row: BTreeMap<usize, Vec<(usize, &CycloNumber)>> = BTreeMap::new();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = CycloMatrix::zeros(self.rows, other.cols, n);
        let mut acc: BTreeMap<(usize, usize), CycloNumber> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    let p = a * b;
                    acc.entry((i, j))
                        .and_modify(|x| *x = &*x + &p)
                        .or_insert(p);
                }
            }
        }
        for ((i, j), v) in acc {
            out.set(i, j, v);
        }
        out
    }

    pub fn add(&self, other: &CycloMatrix) -> CycloMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        out.lift_conductor(other.conductor);
        for (&(i, j), v) in &other.entries {
            out.add_to(i, j, v);
        }
        out
    }

    /// Exact rank. The matrix is split into blocks connected through shared rows or
    /// columns, and each block is brought to echelon form with the sparsest rows first.
    pub fn rank(&self) -> usize {
        let mut dsu = Dsu::new(self.rows + self.cols);
        for &(r, c) in self.entries.keys() {
            dsu.union(r, self.rows + c);
        }
        let mut blocks: BTreeMap<usize, BTreeMap<usize, BTreeMap<usize, CycloNumber>>> =
            BTreeMap::new();
        for (&(r, c), v) in &self.entries {
            let root = dsu.find(r);
            blocks
                .entry(root)
                .or_default()
                .entry(r)
                .or_default()
                .insert(c, v.clone());
        }
        blocks.into_values().map(|rows| block_rank(rows.into_values().collect())).sum()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Applies the matrix to a sparse column vector.
    pub fn apply(&self, v: &BTreeMap<usize, CycloNumber>) -> BTreeMap<usize, CycloNumber> {
        let mut out: BTreeMap<usize, CycloNumber> = BTreeMap::new();
        for (&(r, c), a) in &self.entries {
            if let Some(x) = v.get(&c) {
                let p = a * x;
                out.entry(r).and_modify(|y| *y = &*y + &p).or_insert(p);
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }
}

type SparseRow = BTreeMap<usize, CycloNumber>;

fn block_rank(mut rows: Vec<SparseRow>) -> usize {
    rows.sort_by_key(|r| r.values().map(|x| x.weight()).sum::<usize>());
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut row in rows {
        while let Some((&lead, coeff)) = row.iter().next() {
            match pivots.get(&lead) {
                Some(p) => {
                    let f = coeff.clone();
                    for (&c, v) in p {
                        let d = &f * v;
                        let cur = row
                            .remove(&c)
                            .unwrap_or_else(|| CycloNumber::zero(d.conductor()));
                        let nv = &cur - &d;
                        if !nv.is_zero() {
                            row.insert(c, nv);
                        }
                    }
                }
                None => {
                    let inv = coeff.inverse().expect("nonzero leading entry");
                    let normalized: SparseRow = row
                        .iter()
                        .map(|(&c, v)| (c, if c == lead { CycloNumber::one(v.conductor()) } else { v * &inv }))
                        .collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl CycloMatrix {
    /// Dense rows of rational-free integer entries, for tests and small fixtures.
    pub fn from_int_rows(rows: &[Vec<i64>], conductor: u32) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = CycloMatrix::zeros(r, c, conductor);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, CycloNumber::from_int(v, conductor));
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::RootOfUnity;

    #[test]
    fn identity_and_zero() {
        for k in 0..6 {
            assert_eq!(CycloMatrix::identity(k, 3).rank(), k);
        }
        assert_eq!(CycloMatrix::zeros(4, 5, 1).rank(), 0);
    }

    #[test]
    fn sign_swap_symmetrizer() {
        // c(e_i⊗e_j) = -e_j⊗e_i on k², so id + c has rank 1
        let mut m = CycloMatrix::identity(4, 2);
        for i in 0..2 {
            for j in 0..2 {
                m.add_to(j * 2 + i, i * 2 + j, &CycloNumber::from_int(-1, 2));
            }
        }
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn cyclotomic_dependence() {
        // rows (1, ω) and (ω², 1) are proportional
        let w = CycloNumber::from_root(&RootOfUnity::new(1, 3), 3).unwrap();
        let w2 = &w * &w;
        let mut m = CycloMatrix::zeros(2, 2, 3);
        m.set(0, 0, CycloNumber::one(3));
        m.set(0, 1, w.clone());
        m.set(1, 0, w2);
        m.set(1, 1, CycloNumber::one(3));
        assert_eq!(m.rank(), 1);
        m.set(1, 1, w);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn mixed_conductors_widen() {
        let mut m = CycloMatrix::zeros(1, 2, 1);
        m.set(0, 0, CycloNumber::from_root(&RootOfUnity::new(1, 4), 4).unwrap());
        m.set(0, 1, CycloNumber::from_root(&RootOfUnity::new(1, 3), 3).unwrap());
        assert_eq!(m.conductor(), 12);
        assert_eq!(m.rank(), 1);
    }
}
