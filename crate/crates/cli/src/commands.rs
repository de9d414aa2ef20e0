use std::fmt::Write as _;
use std::sync::Arc;

use nichols_core::classify::{classify_odd_nilpotent, yz_analysis};
use nichols_core::cyclo::RootOfUnity;
use nichols_core::grp::{characters, Character, FiniteGroup, GroupDocument, GroupSpec};
use nichols_core::nichols::{diagonal_verdict, dim_profile, type_c_verdict, Axis};
use nichols_core::rack::{audit_type_c_dichotomy, type_c_search, AuditEntry, Rack, TypeCOutcome};
use nichols_core::ydmod::{BraidedVectorSpace, BraidingExport, DiagonalBraiding, YDModule};
use nichols_core::{Error, Result};
use serde_json::{json, Value};

use crate::{Format, GroupArg, ModuleArg, Verb};

pub struct Output {
    pub text: String,
    pub violation: bool,
}

fn load_group(arg: &GroupArg) -> Result<Arc<FiniteGroup>> {
    let g = match (&arg.group, &arg.group_file) {
        (Some(spec), _) => spec.parse::<GroupSpec>()?.build()?,
        (None, Some(path)) => {
            let doc: GroupDocument = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            FiniteGroup::from_document(name, &doc)?
        }
        (None, None) => return Err(Error::Parse("either --group or --group-file is required".into())),
    };
    Ok(Arc::new(g))
}

fn element(g: &FiniteGroup, s: &str) -> Result<usize> {
    g.find(s)
        .or_else(|| s.parse::<usize>().ok().filter(|&i| i < g.order()))
        .ok_or_else(|| Error::Parse(format!("no element '{s}' in {}", g.name())))
}

fn load_module(arg: &ModuleArg) -> Result<(Arc<FiniteGroup>, usize, usize, Character)> {
    let g = load_group(&arg.group)?;
    let x = element(&g, &arg.class_rep)?;
    let chars = characters(&g, &g.centralizer(x));
    let k = match (&arg.character, &arg.q) {
        (Some(k), _) => *k,
        (None, Some(q)) => {
            let q: RootOfUnity = q.parse()?;
            chars
                .iter()
                .position(|c| c.at(x) == q)
                .ok_or_else(|| Error::Precondition(format!("no character takes the value {q} at {}", g.label(x))))?
        }
        (None, None) => 0,
    };
    let chi = chars
        .get(k)
        .cloned()
        .ok_or_else(|| Error::Precondition(format!("character index {k} out of range ({})", chars.len())))?;
    Ok((g, x, k, chi))
}

/// Pretty JSON with keys sorted at every level.
fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn emit(format: Format, value: Value, text: impl FnOnce() -> String) -> Output {
    Output {
        text: match format {
            Format::Json => render_json(&value),
            Format::Text => text(),
        },
        violation: false,
    }
}

pub fn run(verb: Verb, format: Format) -> Result<Output> {
    match verb {
        Verb::GroupInfo(arg) => group_info(&arg, format),
        Verb::Classes(arg) => classes(&arg, format),
        Verb::Typec {
            group,
            class_rep,
            budget,
        } => typec(&group, &class_rep, budget, format),
        Verb::Audit21 { group, budget } => audit(&group, budget, format),
        Verb::YdBuild(arg) => yd_build(&arg, format),
        Verb::BraidingExport { module, out } => braiding_export(&module, out.as_deref(), format),
        Verb::NicholsDim {
            diagonal,
            braiding_file,
            max_degree,
        } => nichols_dim(diagonal.as_deref(), braiding_file.as_deref(), max_degree, format),
        Verb::DiagonalVerdict { diagonal } => verdict(&diagonal, format),
        Verb::Algorithm38(arg) => algorithm38(&arg, format),
        Verb::Yz { module, h } => yz(&module, &h, format),
    }
}

fn group_info(arg: &GroupArg, format: Format) -> Result<Output> {
    let g = load_group(arg)?;
    let center = g.center();
    let derived = g.commutator_subgroup();
    let (_, nilpotency) = g.upper_central_series();
    let classes = g.conjugacy_classes();
    let value = json!({
        "name": g.name(),
        "order": g.order(),
        "generators": g.generators().iter().map(|&x| g.label(x)).collect::<Vec<_>>(),
        "abelian": g.is_abelian(),
        "center_order": center.order(),
        "commutator_order": derived.order(),
        "nilpotency": to_value(&nilpotency),
        "class_count": classes.len(),
    });
    Ok(emit(format, value, || {
        let mut s = String::new();
        let _ = writeln!(s, "group {} of order {}", g.name(), g.order());
        let gens: Vec<String> = g.generators().iter().map(|&x| g.label(x)).collect();
        let _ = writeln!(s, "generators: {}", gens.join(" "));
        let _ = writeln!(s, "abelian: {}", g.is_abelian());
        let _ = writeln!(s, "center order: {}", center.order());
        let _ = writeln!(s, "commutator subgroup order: {}", derived.order());
        let _ = writeln!(s, "nilpotency: {nilpotency:?}");
        let _ = writeln!(s, "conjugacy classes: {}", classes.len());
        s
    }))
}

fn classes(arg: &GroupArg, format: Format) -> Result<Output> {
    let g = load_group(arg)?;
    let rows: Vec<(String, usize, usize, bool)> = g
        .conjugacy_classes()
        .iter()
        .map(|c| {
            let rack = Rack::conjugation(g.clone(), c);
            (g.label(c.representative), c.len(), c.centralizer.order(), rack.is_abelian())
        })
        .collect();
    let value = Value::Array(
        rows.iter()
            .map(|(l, n, z, a)| json!({"representative": l, "size": n, "centralizer_order": z, "abelian_rack": a}))
            .collect(),
    );
    Ok(emit(format, value, || {
        let mut s = format!("{} classes in {}\n", rows.len(), g.name());
        for (l, n, z, a) in &rows {
            let kind = if *a { "abelian" } else { "non-abelian" };
            let _ = writeln!(s, "  {l:<16} size {n:<4} centralizer {z:<5} {kind}");
        }
        s
    }))
}

fn typec(arg: &GroupArg, rep: &str, budget: Option<u64>, format: Format) -> Result<Output> {
    let g = load_group(arg)?;
    let x = element(&g, rep)?;
    let rack = Rack::conjugation(g.clone(), &g.conjugacy_class(x));
    let outcome = type_c_search(&rack, budget)?;
    let verdict = match outcome.witness() {
        Some(w) => Some(type_c_verdict(&g, w, false)?),
        None => None,
    };
    let value = json!({
        "class_rep": g.label(x),
        "class_size": rack.len(),
        "outcome": to_value(&outcome),
        "verdict": verdict.as_ref().map(to_value),
    });
    Ok(emit(format, value, || {
        let mut s = format!("class of {} (size {})\n", g.label(x), rack.len());
        match &outcome {
            TypeCOutcome::TypeC { witness } => {
                let _ = writeln!(
                    s,
                    "type C: r = {}, s = {}, |R| = {}, |S| = {}, |H| = {}",
                    g.label(witness.r),
                    g.label(witness.s),
                    witness.sizes.0,
                    witness.sizes.1,
                    witness.h_order
                );
            }
            TypeCOutcome::NotTypeC => s.push_str("abelian rack: not of type C\n"),
            TypeCOutcome::Undetermined { examined, exhausted } => {
                let _ = writeln!(s, "undetermined after {examined} pairs (exhausted: {exhausted})");
            }
        }
        if let Some(v) = &verdict {
            let _ = writeln!(s, "verdict: {v}");
        }
        s
    }))
}

fn audit(arg: &GroupArg, budget: u64, format: Format) -> Result<Output> {
    let g = load_group(arg)?;
    let report = audit_type_c_dichotomy(g, budget)?;
    let mut out = emit(format, to_value(&report), || {
        let mut s = format!("{} (order {})\n", report.group, report.order);
        for c in &report.classes {
            let status = match &c.entry {
                AuditEntry::Abelian => "abelian".to_string(),
                AuditEntry::TypeC { witness } => format!("type C (|H| = {})", witness.h_order),
                AuditEntry::Violation { examined } => format!("VIOLATION after {examined} pairs"),
            };
            let _ = writeln!(s, "  {:<16} size {:<4} {status}", c.label, c.size);
        }
        let _ = writeln!(s, "violations: {}", report.violations);
        s
    });
    out.violation = report.violations > 0;
    Ok(out)
}

fn build_module(arg: &ModuleArg) -> Result<(Arc<FiniteGroup>, usize, usize, YDModule)> {
    let (g, x, k, chi) = load_module(arg)?;
    let m = YDModule::new(g.clone(), x, chi)?;
    Ok((g, x, k, m))
}

fn yd_build(arg: &ModuleArg, format: Format) -> Result<Output> {
    let (g, x, k, m) = build_module(arg)?;
    let c = m.braiding();
    let diagonal = m.diagonal_form();
    let value = json!({
        "basepoint": g.label(x),
        "character_index": k,
        "class": m.class().members.iter().map(|&y| g.label(y)).collect::<Vec<_>>(),
        "dim": m.dim(),
        "q": m.monomial().matrix(x).diag[0].to_string(),
        "braid_equation": c.satisfies_braid_equation(),
        "diagonal": match &diagonal {
            Ok(q) => json!({"matrix": to_value(q), "dynkin": to_value(&q.dynkin())}),
            Err(reason) => json!({"not_diagonal": reason}),
        },
    });
    Ok(emit(format, value, || {
        let mut s = format!(
            "M(O, χ{k}) over {} at {}: dim {}\n",
            g.name(),
            g.label(x),
            m.dim()
        );
        let _ = writeln!(s, "braid equation: {}", c.satisfies_braid_equation());
        match &diagonal {
            Ok(q) => {
                let _ = writeln!(s, "diagonal: {q}");
                s.push_str(&q.dynkin().render());
            }
            Err(reason) => {
                let _ = writeln!(s, "not diagonal: {reason}");
            }
        }
        s
    }))
}

fn braiding_export(arg: &ModuleArg, out: Option<&std::path::Path>, format: Format) -> Result<Output> {
    let (_, _, _, m) = build_module(arg)?;
    let doc = render_json(&to_value(&m.braiding().export()));
    match out {
        Some(path) => {
            std::fs::write(path, &doc)?;
            Ok(emit(format, json!({"written": path.display().to_string()}), || {
                format!("wrote {}\n", path.display())
            }))
        }
        None => Ok(Output {
            text: doc,
            violation: false,
        }),
    }
}

fn nichols_dim(
    diagonal: Option<&str>,
    file: Option<&std::path::Path>,
    max_degree: usize,
    format: Format,
) -> Result<Output> {
    let c = match (diagonal, file) {
        (Some(d), _) => {
            let q: DiagonalBraiding = d.parse()?;
            BraidedVectorSpace::from_diagonal(&q).with_provenance(format!("diagonal {q}"))
        }
        (None, Some(path)) => {
            let doc: BraidingExport = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            BraidedVectorSpace::import(&doc)?
        }
        (None, None) => return Err(Error::Parse("either --diagonal or --braiding-file is required".into())),
    };
    let profile = dim_profile(&c, max_degree)?;
    Ok(emit(format, to_value(&profile), || {
        let mut s = String::new();
        let dims: Vec<String> = profile.dims.iter().map(u64::to_string).collect();
        let _ = writeln!(s, "dims: {}", dims.join(" "));
        let _ = writeln!(s, "sum through degree {}: {}", profile.max_degree, profile.total());
        if let Some(z) = profile.vanishing_degree {
            let _ = writeln!(s, "first zero at degree {z}");
        }
        if let Some(t) = profile.predicted_top_degree {
            let _ = writeln!(s, "predicted top degree: {t}");
        }
        match profile.certified_total {
            Some(t) => {
                let _ = writeln!(s, "certified dimension: {t}");
            }
            None => s.push_str("dimension not certified\n"),
        }
        s
    }))
}

fn verdict(diagonal: &str, format: Format) -> Result<Output> {
    let q: DiagonalBraiding = diagonal.parse()?;
    let v = diagonal_verdict(&q);
    let d = q.dynkin();
    let value = json!({"braiding": to_value(&q), "dynkin": to_value(&d), "verdict": to_value(&v)});
    Ok(emit(format, value, || {
        let mut s = format!("braiding {q}\n");
        s.push_str(&d.render());
        let _ = writeln!(s, "{v}");
        if let (Axis::Finite(_), Some(t)) = (v.dim, v.top_degree) {
            let _ = writeln!(s, "top degree {t}");
        }
        s
    }))
}

fn algorithm38(arg: &GroupArg, format: Format) -> Result<Output> {
    let g = load_group(arg)?;
    let report = classify_odd_nilpotent(g)?;
    Ok(emit(format, to_value(&report), || report.render_text()))
}

fn yz(arg: &ModuleArg, h: &str, format: Format) -> Result<Output> {
    let (g, x, _, chi) = load_module(arg)?;
    let h = element(&g, h)?;
    let r = yz_analysis(&g, x, &chi, h)?;
    Ok(emit(format, to_value(&r), || {
        let orbit: Vec<String> = r.orbit.iter().map(|&y| g.label(y)).collect();
        let mut s = format!("orbit of {} under ⟨{}⟩: {}\n", g.label(x), g.label(h), orbit.join(" "));
        let _ = writeln!(s, "q = {}, ζ = {}", r.q, r.zeta);
        let _ = writeln!(s, "case: {}", to_value(&r.case).as_str().unwrap_or_default());
        s.push_str(&r.diagram.dynkin().render());
        s
    }))
}
