//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any failure.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use freefield_core::bounds::{anticommutator_identity, norm_estimate};
use freefield_core::fermion_mode;
use freefield_core::realizations::{Family, Realization, RealizationParams, Role, Variant};
use freefield_core::report::{CheckReport, Report, ResidualEntry};
use freefield_core::scalar::{display_rational, int, rat};
use freefield_core::superalg::{abstract_gram, discrete_series, psd_check, AlgebraKind, LowestWeightData, Presentation};
use freefield_core::verify::{
    borcherds_consistency, check_lowest_weight, check_relations, check_weak_symmetry, gram_freefield,
    measure_central_charge, oracle_compare, sample_grid, single_mode_symmetry, symmetric_pairs,
};
use freefield_core::walgebra::catalog::{identity_check, IDENTITY_NAMES};
use freefield_core::walgebra::{central_charge, dual_coxeter, load_named};
use freefield_core::{FieldContent, GaussianRational, HalfInt, Rational};

const RELATION_BUDGET: Duration = Duration::from_secs(120);
const WALGEBRA_BUDGET: Duration = Duration::from_secs(5);
const NORM_TOLERANCE: f64 = 1e-9;

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn no_params() -> BTreeMap<String, String> {
    BTreeMap::new()
}

/// Residual `|a − b|²` for exact scalars.
fn diff_entry(label: impl Into<String>, got: &Rational, want: &Rational) -> ResidualEntry {
    let d = got - want;
    ResidualEntry::new(label, &d * &d)
}

struct Outcome {
    pass: bool,
    detail: String,
    checks: Vec<CheckReport>,
}

impl Outcome {
    fn from_checks(checks: Vec<CheckReport>, extra_ok: bool, detail: String) -> Self {
        let pass = extra_ok && checks.iter().all(CheckReport::healthy);
        Outcome { pass, detail, checks }
    }
}

fn failure(e: freefield_core::Error) -> Outcome {
    Outcome { pass: false, detail: format!("error: {e}"), checks: Vec::new() }
}

fn relation_suites() -> Outcome {
    let start = Instant::now();
    let mut checks = Vec::new();
    for p in sample_grid() {
        match check_relations(&p, 2, h(6)) {
            Ok(c) => checks.push(c),
            Err(e) => return failure(e),
        }
    }
    for variant in [Variant::Tilde, Variant::Bs, Variant::Unitary] {
        match check_relations(&RealizationParams::ns(variant, rat(1, 2)), 3, h(10)) {
            Ok(c) => checks.push(c),
            Err(e) => return failure(e),
        }
    }
    let elapsed = start.elapsed();
    let bad = checks.iter().filter(|c| !c.passed()).count();
    let detail = format!("{} suites, {bad} with nonzero residual, {:.1}s", checks.len(), elapsed.as_secs_f64());
    Outcome::from_checks(checks, elapsed < RELATION_BUDGET, detail)
}

fn central_charges() -> Outcome {
    let mut entries = Vec::new();
    for p in sample_grid() {
        let k2 = &p.kappa * &p.kappa;
        let want = match p.family {
            Family::Ns => rat(3, 2) + int(12) * &k2,
            Family::N2 => int(3) + int(12) * &k2,
        };
        match measure_central_charge(&p) {
            Ok(c) => entries.push(diff_entry(format!("{} {} κ={}", p.family, p.variant, display_rational(&p.kappa)), &c, &want)),
            Err(e) => return failure(e),
        }
    }
    let n = entries.len();
    let check = CheckReport::exact("central_charge", no_params(), entries);
    Outcome::from_checks(vec![check], true, format!("{n} parameter sets"))
}

fn lowest_weights() -> Outcome {
    let mut checks = Vec::new();
    for p in sample_grid().into_iter().filter(|p| p.variant != Variant::Tilde) {
        let run = || -> freefield_core::Result<CheckReport> {
            let mut r = Realization::new(p.clone())?;
            let om = r.vacuum();
            let sq = |x: &Rational| x * x;
            let (want_h, want_q) = match (p.variant, p.family) {
                (Variant::Unitary, Family::Ns) => ((sq(&p.kappa) + sq(&p.eta)) / int(2), int(0)),
                (Variant::Unitary, Family::N2) => {
                    ((sq(&p.kappa) + sq(&p.eta) + sq(&p.omega)) / int(2), int(2) * &p.kappa * &p.omega)
                }
                _ => (int(0), int(0)),
            };
            let mut entries = Vec::new();
            let eig = |r: &mut Realization, role: Role, want: &Rational| -> freefield_core::Result<ResidualEntry> {
                let v = r.apply(role, HalfInt::ZERO, &om)?;
                let d = v.sub(&om.scaled(&GaussianRational::real(want.clone())));
                Ok(ResidualEntry::new(format!("{role}_0Ω = {}Ω", display_rational(want)), d.norm_sq()))
            };
            entries.push(eig(&mut r, Role::L, &want_h)?);
            if p.family == Family::N2 {
                entries.push(eig(&mut r, Role::J, &want_q)?);
            }
            if p.variant == Variant::Bs {
                let odd: &[Role] = if p.family == Family::Ns { &[Role::G] } else { &[Role::G1, Role::G2] };
                let v = r.apply(Role::L, h(-2), &om)?;
                entries.push(ResidualEntry::new("L_{-1}Ω", v.norm_sq()));
                for &role in odd {
                    let v = r.apply(role, h(-1), &om)?;
                    entries.push(ResidualEntry::new(format!("{role}_{{-1/2}}Ω"), v.norm_sq()));
                }
            }
            let mut echo = freefield_core::verify::param_echo(&p);
            echo.insert("expected_h".into(), display_rational(&want_h));
            Ok(CheckReport::exact("lowest_weight_direct", echo, entries))
        };
        match run().and_then(|c| Ok((c, check_lowest_weight(&p)?))) {
            Ok((a, b)) => {
                checks.push(a);
                checks.push(b);
            }
            Err(e) => return failure(e),
        }
    }
    let detail = format!("{} parameter sets", checks.len() / 2);
    Outcome::from_checks(checks, true, detail)
}

fn unitarity() -> Outcome {
    let mut checks = Vec::new();
    let mut psd_ok = true;
    let mut grams = 0;
    for p in sample_grid().into_iter().filter(|p| p.variant != Variant::Tilde) {
        let max_twice = if p.family == Family::Ns { 6 } else { 4 };
        match oracle_compare(&p, h(max_twice)) {
            Ok(c) => checks.push(c),
            Err(e) => return failure(e),
        }
        for tw in 0..=max_twice {
            match gram_freefield(&p, h(tw)).and_then(|g| psd_check(&g)) {
                Ok(r) => {
                    grams += 1;
                    psd_ok &= r.psd;
                }
                Err(e) => return failure(e),
            }
        }
    }
    let vacua: [(AlgebraKind, Vec<Rational>, i64); 2] =
        [(AlgebraKind::Ns, vec![rat(3, 2), int(2), rat(9, 2)], 8), (AlgebraKind::N2, vec![int(3), int(6)], 6)];
    let mut entries = Vec::new();
    for (kind, cs, max_twice) in vacua {
        for c in cs {
            let pres = Presentation::new(kind, c.clone());
            let lw = LowestWeightData::vacuum(c.clone());
            for tw in 0..=max_twice {
                let g = abstract_gram(&pres, &lw, h(tw));
                match psd_check(&g) {
                    Ok(r) => {
                        grams += 1;
                        let label = format!("{kind} c={} level {}", display_rational(&c), h(tw));
                        entries.push(ResidualEntry::new(label, if r.psd { int(0) } else { int(1) }));
                    }
                    Err(e) => return failure(e),
                }
            }
        }
    }
    checks.push(CheckReport::exact("vacuum_gram_psd", no_params(), entries));
    let detail = format!("{} oracle comparisons, {grams} Gram matrices", checks.len() - 1);
    Outcome::from_checks(checks, psd_ok, detail)
}

fn weak_symmetry() -> Outcome {
    let mut checks = Vec::new();
    let cutoff = h(6);
    let bs = [
        (RealizationParams::ns(Variant::Bs, rat(1, 2)), vec![Role::L, Role::G]),
        (RealizationParams::ns(Variant::Bs, rat(1, 3)), vec![Role::L, Role::G]),
        (RealizationParams::n2(Variant::Bs, rat(1, 2)), vec![Role::L, Role::G1, Role::G2]),
    ];
    for (p, roles) in &bs {
        for &role in roles {
            match check_weak_symmetry(p, role, &symmetric_pairs(role, 2), cutoff) {
                Ok(c) => checks.push(c),
                Err(e) => return failure(e),
            }
        }
    }
    let control = match single_mode_symmetry(&bs[0].0, Role::L, h(2), cutoff) {
        Ok(c) => c,
        Err(e) => return failure(e),
    };
    let exhibited = !control.passed() && control.offenders().any(|e| e.witness.is_some());
    checks.push(control);
    let detail = format!("{} paired identities, control fails with witness: {exhibited}", checks.len() - 1);
    Outcome::from_checks(checks, exhibited, detail)
}

fn walgebra_identities() -> Outcome {
    let start = Instant::now();
    let mut checks = Vec::new();
    let mut entries = Vec::new();
    for name in IDENTITY_NAMES {
        match identity_check(name) {
            Ok(c) => entries.push(ResidualEntry::new(c.label.clone(), if c.verified() { int(0) } else { int(1) })),
            Err(e) => return failure(e),
        }
    }
    checks.push(CheckReport::exact("central_charge_identities", no_params(), entries));
    let spots = [("sl2", rat(-2, 3), rat(1, 2)), ("spo_2_3", rat(-3, 4), int(1)), ("psl_2_2", int(-2), int(6))];
    let table = [("sl2", int(2)), ("spo_2_1", rat(3, 2)), ("spo_2_2", int(1)), ("spo_2_3", rat(1, 2)), ("psl_2_2", int(0))];
    let mut entries = Vec::new();
    for (name, k, want) in spots {
        match load_named(name).and_then(|g| central_charge(&g, &k)) {
            Ok(c) => entries.push(diff_entry(format!("c({name}, {})", display_rational(&k)), &c, &want)),
            Err(e) => return failure(e),
        }
    }
    for (name, want) in table {
        match load_named(name).and_then(|g| dual_coxeter(&g)) {
            Ok(hd) => entries.push(diff_entry(format!("h∨({name})"), &hd, &want)),
            Err(e) => return failure(e),
        }
    }
    checks.push(CheckReport::exact("walgebra_values", no_params(), entries));
    let elapsed = start.elapsed();
    Outcome::from_checks(checks, elapsed < WALGEBRA_BUDGET, format!("{:.2}s", elapsed.as_secs_f64()))
}

fn borcherds() -> Outcome {
    let mut checks = Vec::new();
    let params = [
        RealizationParams::ns(Variant::Bs, int(0)),
        RealizationParams::ns(Variant::Bs, rat(1, 2)),
        RealizationParams::ns(Variant::Unitary, int(0)),
    ];
    for p in &params {
        for (m, n) in [(h(3), h(-3)), (h(1), h(1)), (h(1), h(-1))] {
            match borcherds_consistency(p, m, n, h(6)) {
                Ok(c) => checks.push(c),
                Err(e) => return failure(e),
            }
        }
    }
    let detail = format!("{} commutators", checks.len());
    Outcome::from_checks(checks, true, detail)
}

fn energy_bounds() -> Outcome {
    let mut checks = Vec::new();
    let families = [
        (RealizationParams::ns(Variant::Unitary, rat(1, 2)).with_eta(int(1)), vec![Role::G]),
        (RealizationParams::n2(Variant::Unitary, rat(1, 2)).with_eta(int(1)).with_omega(int(1)), vec![Role::G1, Role::G2]),
    ];
    for (p, roles) in &families {
        for &role in roles {
            for n in [h(1), h(3), h(5)] {
                match anticommutator_identity(p, role, n, h(8)) {
                    Ok(c) => checks.push(c),
                    Err(e) => return failure(e),
                }
            }
        }
    }
    let mut worst: f64 = 0.0;
    let mut entries = Vec::new();
    for (content, species) in [(FieldContent::NS, 1), (FieldContent::N2, 2)] {
        for s in 0..species {
            for n in [h(1), h(-1), h(3)] {
                for cutoff in 2..=5 {
                    let est = match fermion_mode(content, s, n).and_then(|op| norm_estimate(&op, HalfInt::from_int(cutoff))) {
                        Ok(x) => x,
                        Err(e) => return failure(e),
                    };
                    let dev = (est - 1.0).abs();
                    worst = worst.max(dev);
                    let ok = dev <= NORM_TOLERANCE;
                    entries.push(ResidualEntry::new(format!("‖Φ{s}_{{{n}}}‖ at cutoff {cutoff}"), if ok { int(0) } else { int(1) }));
                }
            }
        }
    }
    checks.push(CheckReport::exact("fermion_norm", no_params(), entries));
    let detail = format!("{} identities, worst fermion-norm deviation {worst:.1e}", checks.len() - 1);
    Outcome::from_checks(checks, true, detail)
}

fn discrete_series_tables() -> Outcome {
    let stated: [(AlgebraKind, &str, [Rational; 3]); 3] = [
        (AlgebraKind::Vir, "sl2", [rat(1, 2), rat(7, 10), rat(4, 5)]),
        (AlgebraKind::Ns, "spo_2_1", [rat(7, 10), int(1), rat(81, 70)]),
        (AlgebraKind::N2, "spo_2_2", [int(1), rat(3, 2), rat(9, 5)]),
    ];
    let mut entries = Vec::new();
    for (kind, g_name, values) in stated {
        let g = match load_named(g_name) {
            Ok(g) => g,
            Err(e) => return failure(e),
        };
        for (p, want) in (3..=5).zip(values.iter()) {
            let pr = int(p);
            let formula = match kind {
                AlgebraKind::Vir => int(1) - int(6) / (&pr * (&pr + int(1))),
                AlgebraKind::Ns => rat(3, 2) * (int(1) - int(8) / (&pr * (&pr + int(2)))),
                AlgebraKind::N2 => int(3) * (int(1) - int(2) / &pr),
            };
            let level = int(1) / &pr - int(1);
            let (table, via_level) = match (discrete_series(kind, p), central_charge(&g, &level)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return failure(e),
            };
            entries.push(diff_entry(format!("{kind} p={p} table"), &table, &formula));
            entries.push(diff_entry(format!("{kind} p={p} c(1/p − 1)"), &via_level, &formula));
            entries.push(diff_entry(format!("{kind} p={p} stated"), &formula, want));
        }
    }
    let check = CheckReport::exact("discrete_series", no_params(), entries);
    Outcome::from_checks(vec![check], true, "VIR, NS, N2 at p = 3, 4, 5".into())
}

type Criterion = (&'static str, fn() -> Outcome);

const CRITERIA: [Criterion; 9] = [
    ("relation suites", relation_suites),
    ("central charges", central_charges),
    ("lowest weights", lowest_weights),
    ("unitarity", unitarity),
    ("weak symmetry", weak_symmetry),
    ("W-algebra identities", walgebra_identities),
    ("Borcherds consistency", borcherds),
    ("energy-bound identity", energy_bounds),
    ("discrete series", discrete_series_tables),
];

fn build_report(outcomes: &[Outcome]) -> Report {
    let mut report = Report::new("acceptance", BTreeMap::new());
    for o in outcomes {
        for c in &o.checks {
            report.push(c.clone());
        }
    }
    report
}

fn main() -> ExitCode {
    let mut all = true;
    let mut outcomes = Vec::new();
    for (i, (name, run)) in CRITERIA.iter().enumerate() {
        let o = run();
        println!("criterion {:>2} {name}: {} ({})", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        all &= o.pass;
        outcomes.push(o);
    }
    let first = build_report(&outcomes).render();
    let second = build_report(&CRITERIA.iter().map(|(_, run)| run()).collect::<Vec<_>>()).render();
    let same = first == second;
    println!("criterion 10 determinism: {} ({} report bytes)", if same { "PASS" } else { "FAIL" }, first.len());
    all &= same;
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
