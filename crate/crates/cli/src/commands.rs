//! The three subcommands. Each returns the report and the human-readable summary.

use std::collections::BTreeMap;

use serde_json::Value;

use freefield_core::bounds::{bound_report, OddField};
use freefield_core::realizations::{Family, RealizationParams, Role, Variant};
use freefield_core::report::{CheckReport, Report, ResidualEntry};
use freefield_core::scalar::{display_rational, int};
use freefield_core::superalg::{discrete_series, AlgebraKind};
use freefield_core::verify::{
    borcherds_consistency, check_lowest_weight, check_relations, check_weak_symmetry, oracle_compare, param_echo,
    single_mode_symmetry, symmetric_pairs,
};
use freefield_core::walgebra::catalog::{identity_check, lookup, IDENTITY_NAMES};
use freefield_core::walgebra::lie::BUNDLED;
use freefield_core::walgebra::{central_charge, dual_coxeter, g_natural, load_named, minimal_gradation};
use freefield_core::HalfInt;

use crate::config::{self, BoundsArgs, CheckArgs, Controls, OpKind, RunConfig, SeriesArg, TablesArgs, Usage, UsageError};

pub struct Outcome {
    pub report: Report,
    pub summary: Vec<String>,
}

fn echo_value(p: &RealizationParams) -> BTreeMap<String, Value> {
    param_echo(p).into_iter().map(|(k, v)| (k, Value::String(v))).collect()
}

fn summarize(report: &Report) -> Vec<String> {
    report
        .checks
        .iter()
        .map(|c| {
            let tag = if c.control { " (control)" } else { "" };
            format!("{}{tag}: {}", c.name, c.status.as_str())
        })
        .collect()
}

pub fn check(args: &CheckArgs, cfg: &RunConfig) -> Usage<Outcome> {
    let p = config::params(&args.params, cfg)?;
    let window = args.window.or(cfg.window).unwrap_or(2);
    if window == 0 {
        return Err(UsageError("--window must be at least 1".into()));
    }
    let cutoff = config::cutoff(args.cutoff.as_ref().or(cfg.cutoff.as_ref()).map_or("3", String::as_str))?;
    let default_level = if p.family == Family::Ns { "3/2" } else { "1" };
    let level = config::half_int("level", args.level.as_ref().or(cfg.level.as_ref()).map_or(default_level, String::as_str))?;
    let controls = args.controls.or(cfg.controls).unwrap_or(Controls::Off);

    let mut params = echo_value(&p);
    params.insert("window".into(), Value::String(window.to_string()));
    params.insert("cutoff".into(), Value::String(cutoff.to_string()));
    params.insert("level".into(), Value::String(level.to_string()));
    params.insert("controls".into(), Value::String(format!("{controls:?}").to_ascii_lowercase()));
    let mut report = Report::new("check", params);

    report.push(check_relations(&p, window, cutoff)?);
    report.push(check_lowest_weight(&p)?);
    if p.variant != Variant::Tilde {
        report.push(oracle_compare(&p, level)?);
    }
    if p.variant == Variant::Bs {
        let odd: &[Role] = if p.family == Family::Ns { &[Role::G] } else { &[Role::G1, Role::G2] };
        for &role in std::iter::once(&Role::L).chain(odd) {
            report.push(check_weak_symmetry(&p, role, &symmetric_pairs(role, 2), cutoff)?);
        }
        if controls == Controls::Strict {
            report.push(single_mode_symmetry(&p, Role::L, HalfInt::from_int(1), cutoff)?);
        }
    }
    if p.family == Family::Ns && p.is_vacuum() {
        let h = HalfInt::from_twice;
        for (m, n) in [(h(3), h(-3)), (h(1), h(1)), (h(1), h(-1))] {
            report.push(borcherds_consistency(&p, m, n, cutoff)?);
        }
    }
    let summary = summarize(&report);
    Ok(Outcome { report, summary })
}

fn series_table(kind: AlgebraKind, p_max: i64) -> Usage<(CheckReport, Vec<String>)> {
    let g_name = match kind {
        AlgebraKind::Vir => "sl2",
        AlgebraKind::Ns => "spo_2_1",
        AlgebraKind::N2 => "spo_2_2",
    };
    let g = load_named(g_name)?;
    let mut lines = vec![format!("series {kind}"), "p\tc".to_string()];
    let mut entries = Vec::new();
    let mut check_values = Vec::new();
    for p in 3..=p_max {
        let c = discrete_series(kind, p)?;
        // the same value at level k = 1/p − 1 of the minimal W-algebra
        let via_k = central_charge(&g, &(int(1) / int(p) - int(1)))?;
        let d = &c - &via_k;
        entries.push(ResidualEntry::new(format!("p={p}"), &d * &d));
        lines.push(format!("{p}\t{}", display_rational(&c)));
        check_values.push((format!("p={p}"), display_rational(&c)));
    }
    let mut params = BTreeMap::new();
    params.insert("series".into(), kind.to_string());
    params.insert("p_max".into(), p_max.to_string());
    let mut check = CheckReport::exact(format!("series_{kind}"), params, entries);
    for (k, v) in check_values {
        check = check.with_value(k, v);
    }
    Ok((check, lines))
}

fn walgebra_table(name: &str) -> Usage<(CheckReport, Vec<String>)> {
    let entry = lookup(name)?;
    let mut lines = vec![format!("walgebra {}", entry.name)];
    let mut entries = Vec::new();
    let mut values = vec![
        ("h_dual".to_string(), display_rational(&entry.h_dual)),
        ("sdim".to_string(), display_rational(&entry.sdim)),
        ("range".to_string(), entry.range.to_string()),
    ];
    if BUNDLED.contains(&entry.name.as_str()) {
        let g = load_named(&entry.name)?;
        let hd = dual_coxeter(&g)?;
        let d = int(g.sdim());
        let dh = &hd - &entry.h_dual;
        let dd = &d - &entry.sdim;
        entries.push(ResidualEntry::new("h∨ structure constants vs table", &dh * &dh));
        entries.push(ResidualEntry::new("sdim structure constants vs table", &dd * &dd));
        let grading = minimal_gradation(&g)?;
        let natural = g_natural(&g, &grading)?;
        values.push(("gradation_dims".into(), format!("{:?}", grading.dims())));
        values.push(("dim_g_natural".into(), natural.dim().to_string()));
        lines.push(format!("gradation dims (−1, −1/2, 0, 1/2, 1) = {:?}", grading.dims()));
        lines.push(format!("dim g♮ = {}", natural.dim()));
    }
    lines.push(format!("h∨ = {}", display_rational(&entry.h_dual)));
    lines.push(format!("d = {}", display_rational(&entry.sdim)));
    lines.push(format!("range = {}", entry.range));
    for (i, col) in entry.collapsing.iter().enumerate() {
        let k = display_rational(&col.k);
        match entry.central_charge(&col.k) {
            Some(c) => {
                let want = col.target.central_charge();
                let d = &c - &want;
                entries.push(ResidualEntry::new(format!("c({k}) vs c({})", col.target), &d * &d));
                lines.push(format!("collapse k = {k} → {}, c({k}) = {}", col.target, display_rational(&c)));
                values.push((format!("collapse_{i}"), format!("k={k} {} c={}", col.target, display_rational(&c))));
            }
            None => {
                lines.push(format!("collapse k = {k} → {} (critical level)", col.target));
                values.push((format!("collapse_{i}"), format!("k={k} {} critical", col.target)));
            }
        }
    }
    let mut params = BTreeMap::new();
    params.insert("walgebra".into(), entry.name.clone());
    let mut check = CheckReport::exact(format!("walgebra_{}", entry.name), params, entries);
    for (k, v) in values {
        check = check.with_value(k, v);
    }
    Ok((check, lines))
}

fn identity_table(name: &str) -> Usage<(CheckReport, Vec<String>)> {
    let c = identity_check(name)?;
    let mut params = BTreeMap::new();
    params.insert("identity".into(), c.name.clone());
    let entry = ResidualEntry::new(c.label.clone(), if c.verified() { int(0) } else { int(1) });
    let check = CheckReport::exact(format!("identity_{}", c.name), params, vec![entry])
        .with_value("lhs", c.lhs.to_string())
        .with_value("rhs", c.rhs.to_string());
    Ok((check, vec![c.line()]))
}

pub fn tables(args: &TablesArgs, cfg: &RunConfig) -> Usage<Outcome> {
    let series = args.series.or(cfg.series);
    let p_max = args.p_max.or(cfg.p_max).unwrap_or(5);
    if p_max < 3 {
        return Err(UsageError(format!("--p-max must be at least 3, got {p_max}")));
    }
    let walgebra = args.walgebra.clone().or_else(|| cfg.walgebra.clone());
    let identity = args.identity.clone().or_else(|| cfg.identity.clone());
    let everything = series.is_none() && walgebra.is_none() && identity.is_none();

    let mut params = BTreeMap::new();
    params.insert("p_max".into(), Value::String(p_max.to_string()));
    if let Some(s) = series {
        params.insert("series".into(), Value::String(format!("{s:?}").to_ascii_lowercase()));
    }
    if let Some(w) = &walgebra {
        params.insert("walgebra".into(), Value::String(w.clone()));
    }
    if let Some(i) = &identity {
        params.insert("identity".into(), Value::String(i.clone()));
    }
    let mut report = Report::new("tables", params);
    let mut summary = Vec::new();
    let mut add = |(check, lines): (CheckReport, Vec<String>)| {
        report.push(check);
        summary.extend(lines);
    };

    let kinds: Vec<AlgebraKind> = match (series, everything) {
        (Some(SeriesArg::Vir), _) => vec![AlgebraKind::Vir],
        (Some(SeriesArg::Ns), _) => vec![AlgebraKind::Ns],
        (Some(SeriesArg::N2), _) => vec![AlgebraKind::N2],
        (None, true) => vec![AlgebraKind::Vir, AlgebraKind::Ns, AlgebraKind::N2],
        (None, false) => vec![],
    };
    for kind in kinds {
        add(series_table(kind, p_max)?);
    }
    let names: Vec<String> = match (&walgebra, everything) {
        (Some(w), _) => vec![w.clone()],
        (None, true) => BUNDLED.iter().map(|s| s.to_string()).collect(),
        (None, false) => vec![],
    };
    for n in names {
        add(walgebra_table(&n)?);
    }
    let ids: Vec<String> = match (&identity, everything) {
        (Some(i), _) if i == "all" => IDENTITY_NAMES.iter().map(|s| s.to_string()).collect(),
        (Some(i), _) => vec![i.clone()],
        (None, true) => IDENTITY_NAMES.iter().map(|s| s.to_string()).collect(),
        (None, false) => vec![],
    };
    for i in ids {
        add(identity_table(&i)?);
    }
    Ok(Outcome { report, summary })
}

pub fn bounds(args: &BoundsArgs, cfg: &RunConfig) -> Usage<Outcome> {
    let mut p = config::params(&args.params, cfg)?;
    if args.params.variant.is_none() && cfg.variant.is_none() {
        p.variant = Variant::Unitary;
    }
    let cutoff = config::cutoff(args.cutoff.as_ref().or(cfg.cutoff.as_ref()).map_or("4", String::as_str))?;
    let n = config::half_int("n", args.n.as_ref().or(cfg.n.as_ref()).map_or("1/2", String::as_str))?;
    let op = args.op.or(cfg.op).unwrap_or(OpKind::Generator);
    let field = match op {
        OpKind::Fermion => OddField::Fermion(args.species.or(cfg.species).unwrap_or(0)),
        OpKind::Generator => {
            let default = if p.family == Family::Ns { "G" } else { "G1" };
            OddField::Generator(config::role(args.role.as_ref().or(cfg.role.as_ref()).map_or(default, String::as_str))?)
        }
    };
    let br = bound_report(&p, field, n, cutoff)?;
    let mut params = echo_value(&p);
    params.insert("field".into(), Value::String(field.to_string()));
    params.insert("n".into(), Value::String(n.to_string()));
    params.insert("cutoff".into(), Value::String(cutoff.to_string()));
    let mut report = Report::new("bounds", params);
    report.push(br.to_check(&p, field, cutoff));
    let mut summary = vec![format!("field {field}, n = {n}, cutoff {cutoff}")];
    if let Some(r) = &br.identity_residual {
        summary.push(format!("identity residual {}", display_rational(r)));
    }
    summary.push(format!("max ratio {}", display_rational(&br.max_ratio)));
    summary.push(format!("norm estimate {:.12}", br.norm_estimate));
    Ok(Outcome { report, summary })
}
