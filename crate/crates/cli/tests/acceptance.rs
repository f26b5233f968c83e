//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use pulseforge::analysis::{fwhm, q_sensitivity, reproduce_table, table_columns, TableCell, Q_SENSITIVITY_STEP};
use pulseforge::composite::{closed_form_populations, compose, compose_prefixes, populations_from_1, single_pulse_ck};
use pulseforge::majorana::{lift, populations_from_ck};
use pulseforge::propagate::propagate_numeric_three_level;
use pulseforge::{
    cayley_klein_of, make_case1, make_case2, propagate_numeric, Assignment, Case1Kind, Case2Kind, ComplexMat,
    ErrorModel, IntegratorConfig, OrderPolicy, PhasePolicy, SequenceSpec,
};
use pulseforge_cli::validate::{numeric_flat_pi, CASE1_KINDS, STIRAP_KINDS};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Criterion<'a> = (u8, &'static str, Box<dyn FnOnce() -> Verdict + 'a>);

struct Verdict {
    passed: bool,
    detail: String,
}

fn cfg() -> IntegratorConfig<f64> {
    IntegratorConfig::default()
}

fn identity_distance(u: &ComplexMat<f64>) -> f64 {
    u.dist_max(&ComplexMat::identity(u.dim()))
}

fn cell_summary(cells: &[&TableCell]) -> String {
    cells
        .iter()
        .map(|c| match c.computed() {
            Some(w) => format!("{} N={} {w:.4} vs {}", c.scheme, c.n, c.reference),
            None => format!("{} N={} {} vs {}", c.scheme, c.n, c.fwhm, c.reference),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn table_verdict(cells: &[TableCell], schemes: &[&str], elapsed: Duration, budget: Option<Duration>) -> Verdict {
    let chosen: Vec<&TableCell> = cells.iter().filter(|c| schemes.contains(&c.scheme)).collect();
    let failing: Vec<&TableCell> = chosen.iter().copied().filter(|c| !c.passes()).collect();
    let in_time = budget.is_none_or(|b| elapsed <= b);
    let mut detail = format!("{}/{} cells within tolerance", chosen.len() - failing.len(), chosen.len());
    if !failing.is_empty() {
        detail.push_str(&format!("; out of band: {}", cell_summary(&failing)));
    }
    if let Some(b) = budget {
        detail.push_str(&format!("; {:.2}s (budget {}s)", elapsed.as_secs_f64(), b.as_secs()));
    }
    Verdict { passed: failing.is_empty() && !chosen.is_empty() && in_time, detail }
}

fn criterion_1() -> Verdict {
    let col = &table_columns(1).unwrap()[0];
    let started = Instant::now();
    let cells: Vec<TableCell> = (0..3)
        .map(|k| TableCell {
            scheme: col.scheme,
            n: col.ns[k],
            fwhm: fwhm(&col.sweep_config(col.ns[k]).unwrap()).unwrap(),
            reference: col.reference[k],
            tolerance: col.tolerance,
        })
        .collect();
    let elapsed = started.elapsed();
    let mut v = table_verdict(&cells, &["pi-S"], elapsed, Some(Duration::from_secs(1)));
    v.detail = format!("{} [{}]", v.detail, cell_summary(&cells.iter().collect::<Vec<_>>()));
    v
}

fn criterion_2(table1: &[TableCell], elapsed: Duration) -> Verdict {
    table_verdict(table1, &["Gaussian-S", "AE-S", "STA-S"], elapsed, Some(Duration::from_secs(60)))
}

fn criterion_3() -> Verdict {
    let cells = reproduce_table(2, &cfg()).unwrap();
    table_verdict(&cells, &["Flat-pi-A", "Flat-pi-S", "Gaussian-A", "Gaussian-S"], Duration::ZERO, None)
}

fn criterion_4() -> Verdict {
    let cells = reproduce_table(3, &cfg()).unwrap();
    let schemes = ["CDS-SF", "CDS-AA", "CDS-SA", "Gaussian-AA", "sech-AA", "sin-AA", "sin2-AA"];
    table_verdict(&cells, &schemes, Duration::ZERO, None)
}

fn criterion_5() -> Verdict {
    let started = Instant::now();
    let p = make_case1::<f64>(Case1Kind::Sta { n: 0.5 }).unwrap();
    let q = q_sensitivity(&p, Q_SENSITIVITY_STEP, &cfg());
    let elapsed = started.elapsed();
    match q {
        Ok(q) => Verdict {
            passed: (q - 1.91).abs() <= 0.05 && elapsed <= Duration::from_secs(5),
            detail: format!("q_s(n=0.5) = {q:.4} (1.91 +/- 0.05); {:.2}s (budget 5s)", elapsed.as_secs_f64()),
        },
        Err(e) => Verdict { passed: false, detail: e.to_string() },
    }
}

fn criterion_6() -> Verdict {
    let lambdas: Vec<f64> = (0..=10).map(|k| -0.5 + 0.1 * k as f64).collect();
    let mut case1 = 0.0f64;
    for kind in CASE1_KINDS {
        let p = make_case1::<f64>(kind).unwrap();
        for &lambda in &lambdas {
            let totals =
                compose_prefixes(&p, &SequenceSpec::alternating(8).unwrap(), &ErrorModel::RabiGlobal(lambda), &cfg())
                    .unwrap();
            for n in [2, 4, 6, 8] {
                case1 = case1.max(identity_distance(&totals[n - 1]));
            }
        }
    }
    let cds = make_case2::<f64>(Case2Kind::Cds).unwrap();
    let mut cds_dev = 0.0f64;
    for assignment in [Assignment::FixedP, Assignment::FixedS] {
        for &eta in &lambdas {
            let e = ErrorModel::RabiArm { eta, assignment };
            let r = compose(&cds, &SequenceSpec::alternating(2).unwrap(), &e, &cfg()).unwrap();
            cds_dev = cds_dev.max(identity_distance(&r.total));
        }
    }
    let spec = SequenceSpec::new(2, PhasePolicy::Alternating, OrderPolicy::AlternateTimeReversal).unwrap();
    let mut stirap = 0.0f64;
    for kind in STIRAP_KINDS {
        let r = compose(&make_case2::<f64>(kind).unwrap(), &spec, &ErrorModel::none(), &cfg()).unwrap();
        stirap = stirap.max(identity_distance(&r.total));
    }
    let tol = 1e-7;
    Verdict {
        passed: case1 <= tol && cds_dev <= tol && stirap <= tol,
        detail: format!(
            "max |U - I|: (a) case1 alternating even N {case1:.2e}, (b) CDS fixed arm {cds_dev:.2e}, (c) STIRAP pair {stirap:.2e} (limit {tol:.0e})"
        ),
    }
}

fn criterion_7() -> Verdict {
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    // same envelope, integrated numerically on one side and in closed form on the other
    let numeric = numeric_flat_pi();
    let closed = make_case1::<f64>(Case1Kind::FlatPi).unwrap();
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let n = rng.gen_range(1..=9usize);
        let phase = if rng.gen_bool(0.5) { PhasePolicy::Same } else { PhasePolicy::Alternating };
        let e = if rng.gen_bool(0.5) {
            ErrorModel::DetuningStatic(rng.gen_range(-3.0..3.0))
        } else {
            ErrorModel::RabiGlobal(rng.gen_range(-0.5..0.5))
        };
        let spec = SequenceSpec::new(n, phase, OrderPolicy::Fixed).unwrap();
        let num = compose(&numeric, &spec, &e, &cfg()).unwrap().populations_from_1;
        let ck = single_pulse_ck(&closed, &e, &cfg()).unwrap();
        let cf = closed_form_populations(&ck, n, phase);
        for k in 0..3 {
            worst = worst.max((num[k] - cf[k]).abs());
        }
    }
    Verdict { passed: worst <= 1e-6, detail: format!("200 samples, max population deviation {worst:.2e} (limit 1e-6)") }
}

fn criterion_8() -> Verdict {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let mut worst = 0.0f64;
    let mut lift_worst = 0.0f64;
    for kind in CASE1_KINDS {
        let p = make_case1::<f64>(kind).unwrap();
        for _ in 0..20 {
            let e = if rng.gen_bool(0.5) {
                ErrorModel::RabiGlobal(rng.gen_range(-0.5..0.5))
            } else {
                ErrorModel::DetuningStatic(rng.gen_range(-1.0..1.0))
            };
            let ck = cayley_klein_of(&propagate_numeric(&p, Some(&e), &cfg()).unwrap()).unwrap();
            let full = propagate_numeric_three_level(&p, Some(&e), &cfg()).unwrap();
            let three = full.column_populations(0);
            let lifted = populations_from_ck(&ck);
            for k in 0..3 {
                worst = worst.max((three[k] - lifted[k]).abs());
            }
            lift_worst = lift_worst.max(lift(&ck).unwrap().dist_max(&full));
        }
    }
    Verdict {
        passed: worst <= 1e-7,
        detail: format!(
            "6 kinds x 20 settings, max population deviation {worst:.2e} (limit 1e-7); max element deviation {lift_worst:.2e}"
        ),
    }
}

fn criterion_9() -> Verdict {
    let p = make_case1::<f64>(Case1Kind::FlatPi).unwrap();
    let mut worst = 0.0f64;
    for k in -10..=10 {
        let delta = 0.005 * k as f64;
        let e = ErrorModel::DetuningStatic(delta);
        let a_i = single_pulse_ck(&p, &e, &cfg()).unwrap().a_i();
        let totals = compose_prefixes(&p, &SequenceSpec::alternating(9).unwrap(), &e, &cfg()).unwrap();
        for n in 1..=9usize {
            let pops = populations_from_1(&totals[n - 1]);
            let population = if n % 2 == 1 { pops[2] } else { pops[0] };
            let approx = 1.0 - 2.0 * (n * n) as f64 * a_i * a_i;
            worst = worst.max((population - approx).abs());
        }
    }
    Verdict {
        passed: worst <= 5e-3,
        detail: format!("|delta| <= 0.05, N <= 9: max deviation {worst:.2e} (limit 5e-3)"),
    }
}

fn criterion_10() -> Verdict {
    let exe = env!("CARGO_BIN_EXE_pulseforge");
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut csvs = Vec::new();
    for d in &dirs {
        let status = Command::new(exe)
            .args(["table", "--id", "2", "--out-dir"])
            .arg(d.path())
            .env_remove("PULSEFORGE_STEPS")
            .output()
            .expect("run pulseforge");
        if !status.status.success() {
            return Verdict { passed: false, detail: format!("table --id 2 exited with {}", status.status) };
        }
        csvs.push(fs::read(d.path().join("table2.csv")).unwrap());
    }
    Verdict {
        passed: csvs[0] == csvs[1] && !csvs[0].is_empty(),
        detail: format!("two runs of `table --id 2`: {} bytes each, identical = {}", csvs[0].len(), csvs[0] == csvs[1]),
    }
}

fn main() {
    let started = Instant::now();
    let t1 = Instant::now();
    let table1 = reproduce_table(1, &cfg()).unwrap();
    let table1_elapsed = t1.elapsed();

    let criteria: Vec<Criterion> = vec![
        (1, "Table 1 pi-S FWHM", Box::new(criterion_1)),
        (2, "Table 1 Gaussian-S / AE-S / STA-S FWHM", Box::new(|| criterion_2(&table1, table1_elapsed))),
        (3, "Table 2 FWHM", Box::new(criterion_3)),
        (4, "Table 3 FWHM", Box::new(criterion_4)),
        (5, "STA sensitivity q_s", Box::new(criterion_5)),
        (6, "identity properties", Box::new(criterion_6)),
        (7, "closed-form vs numeric composition", Box::new(criterion_7)),
        (8, "Majorana consistency", Box::new(criterion_8)),
        (9, "perturbative expansion", Box::new(criterion_9)),
        (10, "table determinism", Box::new(criterion_10)),
    ];
    let mut failed = Vec::new();
    for (id, name, run) in criteria {
        let v = run();
        println!("{} criterion {id:>2} ({name}): {}", if v.passed { "PASS" } else { "FAIL" }, v.detail);
        if !v.passed {
            failed.push(id);
        }
    }
    println!(
        "acceptance: {}/10 criteria pass in {:.1}s{}",
        10 - failed.len(),
        started.elapsed().as_secs_f64(),
        if failed.is_empty() { String::new() } else { format!("; failing: {failed:?}") }
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
