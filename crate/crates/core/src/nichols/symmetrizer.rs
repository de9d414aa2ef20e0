use std::collections::BTreeMap;

use num_integer::Integer;

use crate::cyclo::{CycloMatrix, CycloNumber};
use crate::error::{Error, Result};
use crate::grp::MonomialMatrix;
use crate::ydmod::BraidedVectorSpace;

pub const DEFAULT_SYMMETRIZER_DIM_CAP: usize = 20_000;
pub const MAX_SYMMETRIZER_DEGREE: usize = 10;

/// Largest tensor power `D^n`, overridable through `SYMMETRIZER_DIM_CAP`.
pub fn symmetrizer_dim_cap() -> usize {
    std::env::var("SYMMETRIZER_DIM_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_SYMMETRIZER_DIM_CAP)
}

/// `D^n` after checking both caps.
pub fn tensor_power_dim(d: usize, n: usize) -> Result<usize> {
    if n > MAX_SYMMETRIZER_DEGREE {
        return Err(Error::CapExceeded {
            what: format!("degree {n}"),
            cap: MAX_SYMMETRIZER_DEGREE as u64,
        });
    }
    let cap = symmetrizer_dim_cap();
    let total = (d as u128).pow(n as u32);
    if total > cap as u128 {
        return Err(Error::CapExceeded {
            what: format!("tensor power {d}^{n}"),
            cap: cap as u64,
        });
    }
    Ok(total as usize)
}

/// A reduced word for `perm` (given by its images), found by repeatedly removing the
/// first descent. Letter `i` stands for the transposition of positions `i, i+1`, and
/// `perm = s_{w[0]} s_{w[1]} ⋯`.
pub fn reduced_word(perm: &[usize]) -> Vec<usize> {
    descent_word(perm, false)
}

/// Like [`reduced_word`] but removing the last descent each time.
pub fn reduced_word_last_descent(perm: &[usize]) -> Vec<usize> {
    descent_word(perm, true)
}

fn descent_word(perm: &[usize], last: bool) -> Vec<usize> {
    let mut p = perm.to_vec();
    let mut rec = Vec::new();
    loop {
        let mut descents = (0..p.len().saturating_sub(1)).filter(|&i| p[i] > p[i + 1]);
        let found = if last { descents.next_back() } else { descents.next() };
        match found {
            Some(i) => {
                p.swap(i, i + 1);
                rec.push(i);
            }
            None => break,
        }
    }
    rec.reverse();
    rec
}

/// The permutation `s_{w[0]} s_{w[1]} ⋯` on `n` points.
pub fn word_to_permutation(word: &[usize], n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for &i in word {
        p.swap(i, i + 1);
    }
    p
}

/// Columns of `c`: for each basis tensor, its image as (target, coefficient) pairs.
fn braiding_columns(c: &BraidedVectorSpace) -> Vec<Vec<(usize, CycloNumber)>> {
    let mut cols = vec![Vec::new(); c.dim() * c.dim()];
    for (&(r, col), v) in c.matrix().entries() {
        cols[col].push((r, v.clone()));
    }
    cols
}

fn apply_columns(
    cols: &[Vec<(usize, CycloNumber)>],
    d: usize,
    pos: usize,
    n: usize,
    v: &BTreeMap<usize, CycloNumber>,
) -> BTreeMap<usize, CycloNumber> {
    let stride = d.pow((n - 2 - pos) as u32);
    let mut out: BTreeMap<usize, CycloNumber> = BTreeMap::new();
    for (&w, x) in v {
        let p = (w / stride) % (d * d);
        for (t, a) in &cols[p] {
            let y = a * x;
            let target = w + t * stride - p * stride;
            match out.get_mut(&target) {
                Some(z) => *z = &*z + &y,
                None => {
                    out.insert(target, y);
                }
            }
        }
    }
    out.retain(|_, z| !z.is_zero());
    out
}

/// `T_σ = c_{w[0]} ∘ c_{w[1]} ∘ ⋯` on `V^{⊗n}` for a word in the braid generators.
pub fn lift_along_word(c: &BraidedVectorSpace, word: &[usize], n: usize) -> Result<CycloMatrix> {
    let d = c.dim();
    let total = tensor_power_dim(d, n)?;
    if word.iter().any(|&i| i + 1 >= n) {
        return Err(Error::Precondition(format!("word letter out of range for degree {n}")));
    }
    let cols = braiding_columns(c);
    let cond = c.conductor();
    let mut m = CycloMatrix::zeros(total, total, cond);
    for w in 0..total {
        let mut v = BTreeMap::from([(w, CycloNumber::one(cond))]);
        for &i in word.iter().rev() {
            v = apply_columns(&cols, d, i, n, &v);
        }
        for (t, x) in v {
            m.set(t, w, x);
        }
    }
    Ok(m)
}

/// The Matsumoto lift `T_σ` along the first-descent reduced word of `σ`.
pub fn matsumoto_lift(c: &BraidedVectorSpace, perm: &[usize]) -> Result<CycloMatrix> {
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted.iter().enumerate().any(|(i, &p)| i != p) {
        return Err(Error::Precondition("not a permutation".into()));
    }
    lift_along_word(c, &reduced_word(perm), perm.len())
}

/// `Σ_{σ ∈ S_n} T_σ` as a `D^n × D^n` matrix.
pub fn quantum_symmetrizer(c: &BraidedVectorSpace, n: usize) -> Result<CycloMatrix> {
    let d = c.dim();
    let total = tensor_power_dim(d, n)?;
    match c.as_monomial() {
        Some(m) => monomial_symmetrizer(c, m, n, total),
        None => general_symmetrizer(c, n, total),
    }
}

/// Rank of the degree-`n` symmetrizer, i.e. `dim B^n(V)`.
pub fn symmetrizer_rank(c: &BraidedVectorSpace, n: usize) -> Result<usize> {
    Ok(quantum_symmetrizer(c, n)?.rank())
}

// Column by column through 𝔖_m = (𝔖_{m-1} ⊗ id)·(1 + c_{m-1}(1 + c_{m-2}(⋯(1 + c_1)))),
// the decomposition of S_m into minimal right coset representatives of S_{m-1}.

type GroupRingVec = BTreeMap<usize, Vec<i64>>;

fn monomial_symmetrizer(
    c: &BraidedVectorSpace,
    m: &MonomialMatrix,
    n: usize,
    total: usize,
) -> Result<CycloMatrix> {
    let l = m.diag.iter().fold(1u32, |acc, r| acc.lcm(&r.order()));
    crate::cyclo::check_conductor(l)?;
    let exps: Vec<usize> = m
        .diag
        .iter()
        .map(|r| r.exponent_at(l).expect("conductor covers entries") as usize)
        .collect();
    let lu = l as usize;
    let apply = |pos: usize, v: &GroupRingVec| -> GroupRingVec {
        let mut out = GroupRingVec::new();
        for (&w, counts) in v {
            let (t, _) = c.apply_monomial(m, pos, n, w);
            let stride = c.dim().pow((n - 2 - pos) as u32);
            let e = exps[(w / stride) % (c.dim() * c.dim())];
            let slot = out.entry(t).or_insert_with(|| vec![0; lu]);
            for (k, &x) in counts.iter().enumerate() {
                slot[(k + e) % lu] += x;
            }
        }
        out
    };
    let add = |a: &mut GroupRingVec, b: &GroupRingVec| {
        for (&w, counts) in b {
            let slot = a.entry(w).or_insert_with(|| vec![0; lu]);
            for (s, x) in slot.iter_mut().zip(counts) {
                *s += x;
            }
        }
    };
    let mut out = CycloMatrix::zeros(total, total, l);
    for w in 0..total {
        let mut unit = vec![0; lu];
        unit[0] = 1;
        let mut v = GroupRingVec::from([(w, unit)]);
        for k in (2..=n).rev() {
            let mut u = v.clone();
            for pos in 0..k - 1 {
                let mut next = apply(pos, &u);
                add(&mut next, &v);
                u = next;
            }
            v = u;
        }
        for (t, counts) in v {
            let x = CycloNumber::from_group_ring(&counts, l);
            if !x.is_zero() {
                out.set(t, w, x);
            }
        }
    }
    Ok(out)
}

fn general_symmetrizer(c: &BraidedVectorSpace, n: usize, total: usize) -> Result<CycloMatrix> {
    let d = c.dim();
    let cols = braiding_columns(c);
    let cond = c.conductor();
    let add = |a: &mut BTreeMap<usize, CycloNumber>, b: &BTreeMap<usize, CycloNumber>| {
        for (&w, x) in b {
            match a.get_mut(&w) {
                Some(z) => *z = &*z + x,
                None => {
                    a.insert(w, x.clone());
                }
            }
        }
        a.retain(|_, z| !z.is_zero());
    };
    let mut out = CycloMatrix::zeros(total, total, cond);
    for w in 0..total {
        let mut v = BTreeMap::from([(w, CycloNumber::one(cond))]);
        for k in (2..=n).rev() {
            let mut u = v.clone();
            for pos in 0..k - 1 {
                let mut next = apply_columns(&cols, d, pos, n, &u);
                add(&mut next, &v);
                u = next;
            }
            v = u;
        }
        for (t, x) in v {
            out.set(t, w, x);
        }
    }
    Ok(out)
}
