use crate::cyclo::RootOfUnity;
use crate::ydmod::DiagonalBraiding;

/// Stop generating roots past this many, or once a coefficient exceeds
/// `COEFFICIENT_CAP`; finite types stay far below both.
const ROOT_CAP: usize = 2_000;
const COEFFICIENT_CAP: i64 = 64;

/// The generalized Cartan matrix `a_ij` with `q_ij q_ji = q_ii^{a_ij}` and
/// `0 ≤ -a_ij < ord(q_ii)`, when every entry exists and no vertex is 1.
pub fn cartan_matrix(q: &DiagonalBraiding) -> Option<Vec<Vec<i64>>> {
    let n = q.rank();
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        let qi = q.entry(i, i);
        if qi.is_one() {
            return None;
        }
        a[i][i] = 2;
        for j in 0..n {
            if i == j {
                continue;
            }
            let e = q.entry(i, j).mul(&q.entry(j, i));
            let m = (0..qi.order() as i64).find(|&m| qi.pow(-m) == e)?;
            a[i][j] = -m;
        }
    }
    Some(a)
}

/// Positive roots of the Weyl group orbit of the simple roots, as coefficient vectors,
/// or `None` when the orbit is too large to be of finite type.
pub fn positive_roots(a: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = a.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut k = 0;
    while k < roots.len() {
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| roots[k][j] * a[i][j]).sum();
            let mut b = roots[k].clone();
            b[i] -= pairing;
            if b[i] > COEFFICIENT_CAP {
                return None;
            }
            if b.iter().all(|&x| x >= 0) && b.iter().any(|&x| x > 0) && !roots.contains(&b) {
                roots.push(b);
                if roots.len() > ROOT_CAP {
                    return None;
                }
            }
        }
        k += 1;
    }
    roots.sort_by_key(|b| (b.iter().sum::<i64>(), std::cmp::Reverse(b.clone())));
    Some(roots)
}

/// `q_ββ = Π_{i,j} q_ij^{b_i b_j}`.
pub fn root_label(q: &DiagonalBraiding, b: &[i64]) -> RootOfUnity {
    let n = q.rank();
    let mut r = RootOfUnity::one();
    for i in 0..n {
        for j in 0..n {
            r = r.mul(&q.entry(i, j).pow(b[i] * b[j]));
        }
    }
    r
}
