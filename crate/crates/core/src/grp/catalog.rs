use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, ORDER_CAP};
use crate::error::{Error, Result};

/// Named group families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic { m: u32 },
    Abelian { moduli: Vec<u32> },
    /// `Heis(2n+1, Z/m)`: triples `(a, b, c)` with `a, b ∈ (Z/m)^n`.
    Heisenberg { n: u32, m: u32 },
    /// `Heis(2n+1, Z/m)` modulo the central subgroup `0 × 0 × N·(Z/m)`.
    HeisenbergQuotient { n: u32, m: u32, big_n: u32 },
    /// Upper unitriangular 4×4 matrices over `Z/m`.
    Unitriangular4 { m: u32 },
    /// `⟨x, y | x² = y⁴ = e, xyx = y³⟩`.
    Dihedral4,
    /// `D4 ⋊ Z/4` for the automorphism `x ↦ xy`, `y ↦ y`.
    D4SemidirectZ4,
    DirectProduct { factors: Vec<GroupSpec> },
}

fn check_modulus(m: u32) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    Ok(())
}

fn checked_order(base: u32, exp: u32, extra: u32) -> Result<usize> {
    let order = (base as u64)
        .checked_pow(exp)
        .and_then(|v| v.checked_mul(extra as u64))
        .unwrap_or(u64::MAX);
    if order > ORDER_CAP as u64 {
        return Err(Error::OrderCap {
            order,
            cap: ORDER_CAP as u64,
        });
    }
    Ok(order as usize)
}

/// Mixed-radix digits of `i`, least significant first.
fn digits(mut i: usize, radices: &[usize]) -> Vec<usize> {
    radices
        .iter()
        .map(|&r| {
            let d = i % r;
            i /= r;
            d
        })
        .collect()
}

fn undigits(ds: &[usize], radices: &[usize]) -> usize {
    ds.iter().zip(radices).rev().fold(0, |acc, (&d, &r)| acc * r + d)
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        let name = self.to_string();
        match self {
            GroupSpec::Cyclic { m } => {
                if *m == 0 {
                    return Err(Error::InvalidModulus(0));
                }
                let m = *m as usize;
                checked_order(m as u32, 1, 1)?;
                let gens = if m == 1 { vec![] } else { vec![1] };
                let labels = (0..m).map(|i| i.to_string()).collect();
                FiniteGroup::from_fn(name, m, |a, b| (a + b) % m, gens, Some(labels))
            }
            GroupSpec::Abelian { moduli } => {
                if moduli.is_empty() {
                    return Err(Error::Parse("abelian group needs at least one modulus".into()));
                }
                for &m in moduli {
                    check_modulus(m)?;
                }
                let radices: Vec<usize> = moduli.iter().map(|&m| m as usize).collect();
                let order = radices.iter().try_fold(1usize, |acc, &r| {
                    acc.checked_mul(r).filter(|&v| v <= ORDER_CAP)
                });
                let order = order.ok_or(Error::OrderCap {
                    order: u64::MAX,
                    cap: ORDER_CAP as u64,
                })?;
                let gens = (0..radices.len())
                    .map(|k| {
                        let mut d = vec![0; radices.len()];
                        d[k] = 1;
                        undigits(&d, &radices)
                    })
                    .collect();
                let labels = (0..order)
                    .map(|i| tuple_label(&digits(i, &radices)))
                    .collect();
                FiniteGroup::from_fn(
                    name,
                    order,
                    |a, b| {
                        let (da, db) = (digits(a, &radices), digits(b, &radices));
                        let s: Vec<usize> = da
                            .iter()
                            .zip(&db)
                            .zip(&radices)
                            .map(|((x, y), r)| (x + y) % r)
                            .collect();
                        undigits(&s, &radices)
                    },
                    gens,
                    Some(labels),
                )
            }
            GroupSpec::Heisenberg { n, m } => {
                check_modulus(*m)?;
                heisenberg(name, *n, *m, *m)
            }
            GroupSpec::HeisenbergQuotient { n, m, big_n } => {
                check_modulus(*m)?;
                if *big_n == 0 || m % big_n != 0 {
                    return Err(Error::NotDividing {
                        divisor: *big_n,
                        modulus: *m,
                    });
                }
                heisenberg(name, *n, *m, *big_n)
            }
            GroupSpec::Unitriangular4 { m } => {
                check_modulus(*m)?;
                unitriangular4(name, *m)
            }
            GroupSpec::Dihedral4 => {
                // x^i y^j at index 4i + j; y^j x = x y^{-j}
                let labels = (0..8).map(|k| dihedral_label(k / 4, k % 4)).collect();
                FiniteGroup::from_fn(name, 8, dihedral_mul, vec![4, 1], Some(labels))
            }
            GroupSpec::D4SemidirectZ4 => {
                // (d, k)(d', k') = (d σ^k(d'), k + k') at index 4d + k
                let sigma = |k: usize, d: usize| -> usize {
                    let (i, j) = (d / 4, d % 4);
                    // σ^k(x^i y^j) = (x y^k)^i y^j
                    if i == 0 {
                        d
                    } else {
                        dihedral_mul(4 + k % 4, j)
                    }
                };
                let labels = (0..32)
                    .map(|e| {
                        let d = e / 4;
                        format!("{}s{}", dihedral_label(d / 4, d % 4), e % 4)
                    })
                    .collect();
                FiniteGroup::from_fn(
                    name,
                    32,
                    |a, b| {
                        let (d, k) = (a / 4, a % 4);
                        let (d2, k2) = (b / 4, b % 4);
                        dihedral_mul(d, sigma(k, d2)) * 4 + (k + k2) % 4
                    },
                    vec![16, 4, 1],
                    Some(labels),
                )
            }
            GroupSpec::DirectProduct { factors } => {
                let mut it = factors.iter();
                let first = it
                    .next()
                    .ok_or_else(|| Error::Parse("empty product".into()))?
                    .build()?;
                let mut g = first;
                for f in it {
                    g = g.direct_product(&f.build()?)?;
                }
                g.name = name;
                Ok(g)
            }
        }
    }

    /// Whether the family is nilpotent for these parameters.
    pub fn is_nilpotent_family(&self) -> bool {
        match self {
            GroupSpec::DirectProduct { factors } => factors.iter().all(|f| f.is_nilpotent_family()),
            _ => true,
        }
    }
}

fn dihedral_label(i: usize, j: usize) -> String {
    match (i, j) {
        (0, 0) => "e".into(),
        (0, 1) => "y".into(),
        (0, j) => format!("y{j}"),
        (_, 0) => "x".into(),
        (_, 1) => "xy".into(),
        (_, j) => format!("xy{j}"),
    }
}

fn dihedral_mul(a: usize, b: usize) -> usize {
    let (i, j) = (a / 4, a % 4);
    let (k, l) = (b / 4, b % 4);
    let j2 = if k == 1 { (4 - j) % 4 } else { j };
    ((i + k) % 2) * 4 + (j2 + l) % 4
}

fn tuple_label(ds: &[usize]) -> String {
    let parts: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(","))
}

fn heisenberg(name: String, n: u32, m: u32, c_mod: u32) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Parse("heisenberg needs n >= 1".into()));
    }
    let order = checked_order(m, 2 * n, c_mod)?;
    let n = n as usize;
    let (m, c_mod) = (m as usize, c_mod as usize);
    // coordinates a_1..a_n, b_1..b_n, c
    let mut radices = vec![m; 2 * n];
    radices.push(c_mod);
    let gens = (0..2 * n)
        .map(|k| {
            let mut d = vec![0; 2 * n + 1];
            d[k] = 1;
            undigits(&d, &radices)
        })
        .collect();
    let labels = (0..order)
        .map(|i| tuple_label(&digits(i, &radices)))
        .collect();
    FiniteGroup::from_fn(
        name,
        order,
        |x, y| {
            let (dx, dy) = (digits(x, &radices), digits(y, &radices));
            let mut out = vec![0; 2 * n + 1];
            for k in 0..2 * n {
                out[k] = (dx[k] + dy[k]) % m;
            }
            let dot: usize = (0..n).map(|k| dx[k] * dy[n + k]).sum();
            out[2 * n] = (dx[2 * n] + dy[2 * n] + dot) % c_mod;
            undigits(&out, &radices)
        },
        gens,
        Some(labels),
    )
}

fn unitriangular4(name: String, m: u32) -> Result<FiniteGroup> {
    let order = checked_order(m, 6, 1)?;
    let m = m as usize;
    // coordinates a12, a23, a34, a13, a24, a14
    let radices = vec![m; 6];
    let gens = (0..3)
        .map(|k| {
            let mut d = vec![0; 6];
            d[k] = 1;
            undigits(&d, &radices)
        })
        .collect();
    let labels = (0..order)
        .map(|i| tuple_label(&digits(i, &radices)))
        .collect();
    FiniteGroup::from_fn(
        name,
        order,
        |x, y| {
            let a = digits(x, &radices);
            let b = digits(y, &radices);
            let c = [
                a[0] + b[0],
                a[1] + b[1],
                a[2] + b[2],
                a[3] + b[3] + a[0] * b[1],
                a[4] + b[4] + a[1] * b[2],
                a[5] + b[5] + a[0] * b[4] + a[3] * b[2],
            ];
            let c: Vec<usize> = c.iter().map(|v| v % m).collect();
            undigits(&c, &radices)
        },
        gens,
        Some(labels),
    )
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic { m } => write!(f, "cyclic:m={m}"),
            GroupSpec::Abelian { moduli } => {
                let parts: Vec<String> = moduli.iter().map(|m| m.to_string()).collect();
                write!(f, "abelian:m={}", parts.join("x"))
            }
            GroupSpec::Heisenberg { n, m } => write!(f, "heisenberg:n={n},m={m}"),
            GroupSpec::HeisenbergQuotient { n, m, big_n } => {
                write!(f, "heisenberg_quotient:n={n},m={m},N={big_n}")
            }
            GroupSpec::Unitriangular4 { m } => write!(f, "unitriangular4:m={m}"),
            GroupSpec::Dihedral4 => write!(f, "dihedral4"),
            GroupSpec::D4SemidirectZ4 => write!(f, "d4_semidirect_z4"),
            GroupSpec::DirectProduct { factors } => {
                let parts: Vec<String> = factors.iter().map(|s| s.to_string()).collect();
                write!(f, "product({})", parts.join(";"))
            }
        }
    }
}

fn parse_params(body: &str) -> Result<Vec<(String, String)>> {
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got '{kv}'")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn param(params: &[(String, String)], key: &str) -> Result<u32> {
    let (_, v) = params
        .iter()
        .find(|(k, _)| k == key)
        .ok_or_else(|| Error::Parse(format!("missing parameter '{key}'")))?;
    v.parse()
        .map_err(|_| Error::Parse(format!("parameter '{key}' is not a number: '{v}'")))
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ';' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Parses `family[:key=value,...]`, e.g. `heisenberg:n=1,m=3`, `abelian:m=3x9`,
/// `heisenberg_quotient:n=1,m=6,N=2` or `product(cyclic:m=3;dihedral4)`.
impl FromStr for GroupSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        for prefix in ["product(", "direct_product("] {
            if let Some(inner) = s.strip_prefix(prefix) {
                let inner = inner
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in '{s}'")))?;
                let factors = split_top_level(inner)
                    .into_iter()
                    .map(str::parse)
                    .collect::<Result<Vec<_>>>()?;
                return Ok(GroupSpec::DirectProduct { factors });
            }
        }
        let (family, body) = s.split_once(':').unwrap_or((s, ""));
        let params = parse_params(body)?;
        match family.trim() {
            "cyclic" => Ok(GroupSpec::Cyclic { m: param(&params, "m")? }),
            "abelian" => {
                let raw = params
                    .iter()
                    .find(|(k, _)| k == "m")
                    .map(|(_, v)| v.as_str())
                    .ok_or_else(|| Error::Parse("abelian needs m=AxBx...".into()))?;
                let moduli = raw
                    .split('x')
                    .map(|t| {
                        t.trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad modulus '{t}'")))
                    })
                    .collect::<Result<Vec<u32>>>()?;
                Ok(GroupSpec::Abelian { moduli })
            }
            "heisenberg" => Ok(GroupSpec::Heisenberg {
                n: param(&params, "n")?,
                m: param(&params, "m")?,
            }),
            "heisenberg_quotient" => Ok(GroupSpec::HeisenbergQuotient {
                n: param(&params, "n")?,
                m: param(&params, "m")?,
                big_n: param(&params, "N")?,
            }),
            "unitriangular4" => Ok(GroupSpec::Unitriangular4 { m: param(&params, "m")? }),
            "dihedral4" => Ok(GroupSpec::Dihedral4),
            "d4_semidirect_z4" => Ok(GroupSpec::D4SemidirectZ4),
            other => Err(Error::Parse(format!("unknown group family '{other}'"))),
        }
    }
}
