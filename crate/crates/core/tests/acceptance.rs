//! One pass/fail line per acceptance criterion. Runs without the libtest harness so
//! the lines always reach the test output.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use itertools::Itertools;

use nichols_core::classify::{classify_odd_nilpotent, pair_compatibility};
use nichols_core::cyclo::{CycloMatrix, RootOfUnity};
use nichols_core::grp::{characters, Character, FiniteGroup, GroupSpec, Subgroup};
use nichols_core::nichols::{
    diagonal_verdict, dim_profile, lift_along_word, reduced_word, reduced_word_last_descent,
    symmetrizer_rank, Axis,
};
use nichols_core::rack::{audit_type_c_dichotomy, type_c_search, AuditEntry, Rack, DEFAULT_BUDGET};
use nichols_core::ydmod::{c_squared_is_identity, BraidedVectorSpace, DiagonalBraiding, YDModule};

type Check = Result<String, String>;

/// Name, time limit and check.
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn build(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(spec.parse::<GroupSpec>().unwrap().build().unwrap())
}

fn root(a: i64, n: u32) -> RootOfUnity {
    RootOfUnity::new(a, n)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn profile(q: &DiagonalBraiding, max_degree: usize) -> Vec<u64> {
    dim_profile(&BraidedVectorSpace::from_diagonal(q), max_degree).unwrap().dims
}

fn class_structure() -> Check {
    let g = build("heisenberg:n=1,m=3");
    let classes = g.conjugacy_classes();
    // brute force: x ~ y iff some h has h x h⁻¹ = y
    let n = g.order();
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let orbit: Vec<usize> = (0..n).map(|h| g.conj(h, x)).sorted().dedup().collect();
        for &y in &orbit {
            seen[y] = true;
        }
        sizes.push(orbit.len());
    }
    let mut got: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    got.sort_unstable();
    sizes.sort_unstable();
    ensure(got == sizes, "class sizes differ from enumeration")?;
    ensure(classes.len() == 11, format!("{} classes", classes.len()))?;
    ensure(sizes.iter().filter(|&&s| s == 1).count() == 3, "central classes")?;
    ensure(sizes.iter().filter(|&&s| s == 3).count() == 8, "classes of size 3")?;
    let center: Vec<usize> = (0..n).filter(|&z| (0..n).all(|h| g.mul(h, z) == g.mul(z, h))).collect();
    let comm = g.closure(&(0..n).cartesian_product(0..n).map(|(a, b)| g.comm(a, b)).collect_vec());
    ensure(g.center().members() == center.as_slice(), "center differs")?;
    let mut comm = comm;
    comm.sort_unstable();
    ensure(g.commutator_subgroup().members() == comm.as_slice(), "commutator differs")?;
    ensure(center == comm && center.len() == 3, "center and commutator are not the same group of order 3")?;
    Ok("11 classes (3 central, 8 of size 3); Z = [G,G] of order 3".into())
}

fn audit() -> Check {
    let mut out = Vec::new();
    for spec in ["heisenberg:n=1,m=3", "heisenberg:n=1,m=5", "unitriangular4:m=3"] {
        let g = build(spec);
        let report = audit_type_c_dichotomy(g.clone(), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(report.violations == 0, format!("{spec}: {} violations", report.violations))?;
        for class in &report.classes {
            match &class.entry {
                AuditEntry::Abelian => {
                    let rack = Rack::conjugation(g.clone(), &g.conjugacy_class(class.representative));
                    ensure(rack.is_abelian(), "abelian entry is not abelian")?;
                }
                AuditEntry::TypeC { witness } => {
                    witness.revalidate(&g).map_err(|e| format!("{spec} {}: {e}", class.label))?;
                }
                AuditEntry::Violation { .. } => return Err(format!("{spec} {}", class.label)),
            }
        }
        out.push(format!("{spec}: {} classes", report.classes.len()));
    }
    Ok(format!("zero violations ({})", out.join(", ")))
}

fn unitriangular_witness() -> Check {
    let g = build("unitriangular4:m=3");
    let x = g.find("(1,1,1,0,0,0)").ok_or("no element (1,1,1,0,0,0)")?;
    let rack = Rack::conjugation(g.clone(), &g.conjugacy_class(x));
    let outcome = type_c_search(&rack, Some(DEFAULT_BUDGET)).map_err(|e| e.to_string())?;
    let w = outcome.witness().ok_or("no type C witness")?;
    w.revalidate(&g).map_err(|e| e.to_string())?;
    let h = Subgroup::generated(&g, &[w.r, w.s]);
    ensure(h.order() == 27 && w.h_order == 27, format!("|H| = {}", h.order()))?;
    // Heisenberg: non-abelian of order 27 and exponent 3
    let hg = h.as_group(&g).map_err(|e| e.to_string())?;
    ensure(!hg.is_abelian(), "H is abelian")?;
    let exponent = (0..hg.order()).map(|a| hg.element_order(a)).max().unwrap_or(1);
    ensure(
        exponent == 3,
        format!(
            "witness valid with |H| = 27, but H has exponent {exponent}: r = {} has order {} in the whole group, \
             so no two-generator witness from this class is Heisenberg",
            w.r_label,
            g.element_order(w.r)
        ),
    )?;
    Ok(format!("witness r={} s={}, |H|=27, sizes {:?}", w.r_label, w.s_label, w.sizes))
}

fn heisenberg_sector_empty() -> Check {
    for p in [3, 5] {
        let g = build(&format!("heisenberg:n=1,m={p}"));
        let report = classify_odd_nilpotent(g).map_err(|e| e.to_string())?;
        ensure(report.abelian_pairs.is_empty(), format!("p={p}: admissible pairs found"))?;
        let scanned: usize = report.classes.iter().filter(|c| c.abelian).map(|c| c.characters_scanned).sum();
        ensure(scanned > 0, format!("p={p}: nothing scanned"))?;
    }
    Ok("no admissible abelian pairs for p = 3, 5".into())
}

fn profiles() -> Check {
    let one = root(0, 1);
    let minus = root(1, 2);
    for d in 1..=3 {
        let sym = profile(&DiagonalBraiding::constant(one, d), 6);
        let expect: Vec<u64> = (0..=6).map(|n| binomial(n + d as u64 - 1, d as u64 - 1)).collect();
        ensure(sym == expect, format!("S(V), D={d}: {sym:?}"))?;
        let ext = profile(&DiagonalBraiding::constant(minus, d), d + 1);
        let expect: Vec<u64> = (0..=d as u64 + 1).map(|n| binomial(d as u64, n)).collect();
        ensure(ext == expect, format!("Λ(V), D={d}: {ext:?}"))?;
    }
    for n in 2..=6u32 {
        let line = profile(&DiagonalBraiding::constant(root(1, n), 1), 7);
        let expect: Vec<u64> = (0..=7).map(|k| u64::from(k < n)).collect();
        ensure(line == expect, format!("order {n}: {line:?}"))?;
    }
    let a2 = DiagonalBraiding::constant(root(1, 3), 2);
    let p = dim_profile(&BraidedVectorSpace::from_diagonal(&a2), 10).unwrap();
    ensure(p.total() == 27 && p.dims[9] == 0 && p.dims[10] == 0, format!("A2 at ω: {:?}", p.dims))?;
    ensure(p.certified_total == Some(27), "A2 total not certified")?;
    Ok(format!("binomials, exterior, truncated lines; A2 at ω {:?}", p.dims))
}

fn quotient_example() -> Check {
    let g = build("heisenberg_quotient:n=1,m=6,N=2");
    let x = g.find("(1,0,0)").ok_or("no element (1,0,0)")?;
    let class = g.conjugacy_class(x);
    ensure(class.len() == 2, format!("class size {}", class.len()))?;
    let chi = characters(&g, &class.centralizer)
        .into_iter()
        .find(|c| c.at(x).order() == 3)
        .ok_or("no character with q of order 3")?;
    let m = YDModule::new(g.clone(), x, chi).map_err(|e| e.to_string())?;
    let q = m.diagonal_form()?;
    let target = DiagonalBraiding::constant(root(1, 3), 2);
    let omega_bar = DiagonalBraiding::constant(root(2, 3), 2);
    let twisted = q.twist_equivalent(&target).unwrap() || q.twist_equivalent(&omega_bar).unwrap();
    ensure(twisted, "not twist-equivalent to constant ω")?;
    let p = dim_profile(&m.braiding(), 9).map_err(|e| e.to_string())?;
    ensure(p.total() == 27 && p.dims[9] == 0, format!("{:?}", p.dims))?;
    Ok(format!("q = {}, profile {:?}", q.entry(0, 0), p.dims))
}

/// Every structural property on one braiding.
fn check_braiding(c: &BraidedVectorSpace, name: &str) -> Result<(), String> {
    ensure(c.satisfies_braid_equation(), format!("{name}: braid equation"))?;
    let d = c.dim();
    let nullity = c.matrix().add(&CycloMatrix::identity(d * d, c.conductor())).nullity();
    let r2 = symmetrizer_rank(c, 2).map_err(|e| e.to_string())?;
    ensure(r2 == d * d - nullity, format!("{name}: degree two"))?;
    let n = if d <= 3 { 4 } else { 3 };
    for perm in (0..n).permutations(n) {
        let a = lift_along_word(c, &reduced_word(&perm), n).map_err(|e| e.to_string())?;
        let b = lift_along_word(c, &reduced_word_last_descent(&perm), n).map_err(|e| e.to_string())?;
        ensure(a == b, format!("{name}: reduced words disagree for {perm:?}"))?;
    }
    if let Some(q) = c.diagonal() {
        for (i, j) in (0..q.rank()).tuple_combinations() {
            let mut rows = q.rows().to_vec();
            let t = root(1, 4);
            rows[i][j] = rows[i][j].mul(&t);
            rows[j][i] = rows[j][i].mul(&t.inv());
            let p = DiagonalBraiding::new(rows).unwrap();
            ensure(q.twist_equivalent(&p).unwrap(), format!("{name}: twist"))?;
            let max = if q.rank() <= 2 { 5 } else { 3 };
            ensure(profile(&q, max) == profile(&p, max), format!("{name}: twisted profile"))?;
        }
    }
    Ok(())
}

fn catalog_pairs(g: &Arc<FiniteGroup>) -> Vec<(usize, Character)> {
    let mut out = Vec::new();
    for class in g.conjugacy_classes() {
        if !Rack::conjugation(g.clone(), &class).is_abelian() {
            continue;
        }
        for chi in characters(g, &class.centralizer) {
            out.push((class.representative, chi));
        }
    }
    out
}

fn properties() -> Check {
    let mut braidings: Vec<(String, BraidedVectorSpace)> = Vec::new();
    let w = root(1, 3);
    let z = root(1, 12);
    for (name, q) in [
        ("A2 at ω", DiagonalBraiding::constant(w, 2)),
        ("exterior rank 3", DiagonalBraiding::constant(root(1, 2), 3)),
        ("ufo pattern", DiagonalBraiding::from_diagram(&[z.pow(8); 2], &[(0, 1, z)])),
        ("3-cycle at ω", DiagonalBraiding::from_diagram(&[root(1, 2); 3], &[(0, 1, w), (1, 2, w), (0, 2, w)])),
        ("q and 1", DiagonalBraiding::from_diagram(&[root(1, 5), root(0, 1)], &[(0, 1, root(2, 5))])),
    ] {
        braidings.push((name.to_string(), BraidedVectorSpace::from_diagonal(&q)));
    }
    let mut pairs_checked = 0;
    for spec in ["heisenberg:n=1,m=3", "heisenberg_quotient:n=1,m=6,N=2", "unitriangular4:m=3"] {
        let g = build(spec);
        for class in g.conjugacy_classes().iter().filter(|c| !c.is_central()) {
            let chars = characters(&g, &class.centralizer);
            for chi in chars.iter().step_by(chars.len().div_ceil(3)) {
                let m = YDModule::new(g.clone(), class.representative, chi.clone()).map_err(|e| e.to_string())?;
                if m.dim() <= 9 {
                    braidings.push((format!("{spec} {}", g.label(class.representative)), m.braiding()));
                }
            }
        }
        if spec == "unitriangular4:m=3" {
            continue;
        }
        let pairs = catalog_pairs(&g);
        let modules: Vec<YDModule> = pairs
            .iter()
            .map(|(x, chi)| YDModule::new(g.clone(), *x, chi.clone()).unwrap())
            .collect();
        for (a, b) in (0..pairs.len()).tuple_combinations() {
            let fast = pair_compatibility(&g, (pairs[a].0, &pairs[a].1), (pairs[b].0, &pairs[b].1))
                .map_err(|e| e.to_string())?;
            let (m1, m2) = (&modules[a], &modules[b]);
            let commute = m1
                .class()
                .members
                .iter()
                .all(|&y| m2.class().members.iter().all(|&z| g.mul(y, z) == g.mul(z, y)));
            let slow = commute && c_squared_is_identity(m1, m2).map_err(|e| e.to_string())?;
            ensure(fast == slow, format!("{spec}: compatibility of {} and {}", g.label(pairs[a].0), g.label(pairs[b].0)))?;
            pairs_checked += 1;
        }
    }
    for (name, c) in &braidings {
        check_braiding(c, name)?;
    }
    Ok(format!("{} braidings, {pairs_checked} catalog pairs", braidings.len()))
}

fn recognizers() -> Check {
    for k in [1, 5, 7, 11] {
        let z = root(k, 12);
        let q = root(1, 2).mul(&z.pow(2));
        let v = diagonal_verdict(&DiagonalBraiding::from_diagram(&[q, q], &[(0, 1, z)]));
        ensure(v.dim.is_finite(), format!("ufo pattern at ζ = {z}: {}", v.dim))?;
    }
    for q in [root(1, 3), root(1, 2), root(2, 5)] {
        let v = diagonal_verdict(&DiagonalBraiding::from_diagram(&[q, root(0, 1)], &[(0, 1, root(1, 3))]));
        ensure(v.gk == Axis::Infinite, format!("q = {q} and 1 with an edge: gk {}", v.gk))?;
    }
    let m = root(1, 2);
    let w = root(1, 3);
    let cycle = DiagonalBraiding::from_diagram(&[m, m, m], &[(0, 1, w), (1, 2, w), (0, 2, w)]);
    let v = diagonal_verdict(&cycle);
    ensure(v.dim == Axis::Finite(Some(432)), format!("3-cycle at ω: {}", v.dim))?;
    Ok("ufo pattern finite; q-and-1 edge infinite; 3-cycle at ω 432 (recognizer only)".into())
}

/// Criteria that cannot hold as stated, with the reason. They still print FAIL but do
/// not fail the run; a pass here is reported so the entry can be removed.
const KNOWN_FAILURES: &[(usize, &str)] = &[(3, "the unit superdiagonal class consists of elements of order 9")];

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("class structure", Duration::from_secs(1), class_structure),
        ("abelian or type C audit", Duration::from_secs(60), audit),
        ("unitriangular type C witness", Duration::from_secs(30), unitriangular_witness),
        ("heisenberg abelian sector", Duration::from_secs(30), heisenberg_sector_empty),
        ("nichols profiles", Duration::from_secs(300), profiles),
        ("quotient rank two example", Duration::from_secs(300), quotient_example),
        ("property suites", Duration::from_secs(600), properties),
        ("recognizer spot checks", Duration::from_secs(5), recognizers),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == i + 1).map(|(_, why)| *why);
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = match result {
            Ok(_) if took > *limit => Err(format!("took {took:.1?}, limit {limit:?}")),
            r => r,
        };
        match (result, known) {
            (Ok(detail), None) => println!("criterion {}: PASS {name} [{took:.2?}] {detail}", i + 1),
            (Ok(detail), Some(_)) => {
                failed += 1;
                println!("criterion {}: PASS {name} [{took:.2?}] {detail} (listed as a known failure)", i + 1);
            }
            (Err(e), Some(why)) => println!("criterion {}: FAIL {name} [{took:.2?}] {e} (known: {why})", i + 1),
            (Err(e), None) => {
                failed += 1;
                println!("criterion {}: FAIL {name} [{took:.2?}] {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
