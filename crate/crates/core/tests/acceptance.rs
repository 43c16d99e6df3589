//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs the shipped preset configs from `configs/`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use dmsec::beamformers::flops_mrt_nsp_pa;
use dmsec::experiment::{emit_csv, run_sweep, ExperimentConfig, SweepResult};
use dmsec::oracle::suite::run_property_suite;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn preset(name: &str) -> ExperimentConfig {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(format!("{name}.toml"));
    ExperimentConfig::load(&path).unwrap_or_else(|e| panic!("{e}"))
}

fn sweep(cfg: &ExperimentConfig) -> Result<SweepResult, String> {
    run_sweep(cfg).map_err(|e| e.to_string())
}

fn series(result: &SweepResult, method: &str) -> Vec<(f64, f64)> {
    result.rows_for(method).map(|r| (r.axis_value, r.mean_sr)).collect()
}

fn at(result: &SweepResult, method: &str, x: f64) -> f64 {
    result.rows_for(method).find(|r| r.axis_value == x).map(|r| r.mean_sr).expect("row present")
}

fn check(ok: bool, msg: String) -> Verdict {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn method_ordering() -> Verdict {
    let mut cfg = preset("fig2");
    cfg.sweep.values = Some(vec![16.0, 64.0, 256.0, 1024.0]);
    cfg.trials = 100;
    let r = sweep(&cfg)?;
    let mut problems = Vec::new();
    for ns in [16.0, 64.0, 256.0, 1024.0] {
        let [max_sr, mrt, random, off] = ["max-sr-slnr", "mrt-nsp-pa", "random-phase", "no-irs"].map(|m| at(&r, m, ns));
        if !(max_sr >= mrt && mrt >= random && mrt >= off) {
            problems.push(format!("ns={ns}: {max_sr:.4} {mrt:.4} {random:.4} {off:.4}"));
        }
    }
    let gap = |ns| at(&r, "max-sr-slnr", ns) - at(&r, "mrt-nsp-pa", ns);
    let (g64, g1024) = (gap(64.0), gap(1024.0));
    if g1024 >= g64 || g1024.is_nan() {
        problems.push(format!("gap did not shrink: {g64:.4} at 64, {g1024:.4} at 1024"));
    }
    check(problems.is_empty(), format!("gap {g64:.4} at ns=64 -> {g1024:.4} at ns=1024; violations: {problems:?}"))
}

fn snr_monotonicity() -> Verdict {
    let r = sweep(&preset("fig3"))?;
    let mut problems = Vec::new();
    for m in ["max-sr-slnr", "mrt-nsp-pa", "random-phase", "no-irs"] {
        let s = series(&r, m);
        if s.windows(2).any(|w| w[1].1 <= w[0].1 || w[1].1.is_nan()) {
            problems.push(format!("{m} not strictly increasing"));
        }
    }
    let base = at(&r, "no-irs", 10.0);
    let gains = ["max-sr-slnr", "mrt-nsp-pa"].map(|m| at(&r, m, 10.0) / base - 1.0);
    for (m, g) in ["max-sr-slnr", "mrt-nsp-pa"].iter().zip(gains) {
        if g < 0.2 || g.is_nan() {
            problems.push(format!("{m} gain {:.1}% < 20%", 100.0 * g));
        }
    }
    check(
        problems.is_empty(),
        format!(
            "gain over no-irs at 10 dB: max-sr-slnr {:.0}%, mrt-nsp-pa {:.0}%; violations: {problems:?}",
            100.0 * gains[0],
            100.0 * gains[1]
        ),
    )
}

fn distance_decay() -> Verdict {
    let r = sweep(&preset("fig4"))?;
    let bad: Vec<&str> = ["max-sr-slnr", "mrt-nsp-pa", "random-phase", "no-irs"]
        .into_iter()
        .filter(|m| series(&r, m).windows(2).any(|w| w[1].1 > w[0].1))
        .collect();
    check(bad.is_empty(), format!("non-increasing over d_ab in [60, 120] m; violations: {bad:?}"))
}

fn theta_cm_migration() -> Verdict {
    let cfg = preset("fig5_7");
    let r = sweep(&cfg)?;
    let argmax = |ns: usize| {
        series(&r, &format!("mrt-nsp-pa@ns={ns}")).into_iter().fold((f64::NAN, f64::MIN), |best, p| {
            if p.1 > best.1 {
                p
            } else {
                best
            }
        })
    };
    let (ab, ai) = (cfg.geometry.theta_ab.to_degrees(), cfg.geometry.theta_ai.to_degrees());
    let (a16, a1024) = (argmax(16).0, argmax(1024).0);
    check(
        (a16 - ab).abs() <= 5.0 && (a1024 - ai).abs() <= 5.0,
        format!("argmax {a16} deg at ns=16 (theta_ab {ab:.1}), {a1024} deg at ns=1024 (theta_ai {ai:.1})"),
    )
}

fn mrt_crossover() -> Verdict {
    let r = sweep(&preset("fig8"))?;
    let variants = ["mrt-nsp-pa-ab", "mrt-nsp-pa-sum", "mrt-nsp-pa-ai"];
    let best =
        |ns: f64| variants.into_iter().max_by(|a, b| at(&r, a, ns).total_cmp(&at(&r, b, ns))).expect("three variants");
    let sum_wins: Vec<f64> =
        [64.0, 128.0, 256.0, 512.0].into_iter().filter(|&ns| best(ns) == "mrt-nsp-pa-sum").collect();
    check(
        best(16.0) == "mrt-nsp-pa-ab" && best(1024.0) == "mrt-nsp-pa-ai" && !sum_wins.is_empty(),
        format!("best at 16: {}, at 1024: {}, sum best at ns {sum_wins:?}", best(16.0), best(1024.0)),
    )
}

fn flop_curves() -> Verdict {
    let reference = flops_mrt_nsp_pa(16, 100).total();
    let r = sweep(&preset("fig9"))?;
    let mut ratios = Vec::new();
    for row in r.rows_for("max-sr-slnr").filter(|row| row.axis_value >= 64.0) {
        let mrt = r.rows_for("mrt-nsp-pa").find(|m| m.axis_value == row.axis_value).expect("paired row").flops;
        if row.mean_iters < 1.0 {
            return Err(format!("mean iterations {} < 1 at ns={}", row.mean_iters, row.axis_value));
        }
        ratios.push(row.flops as f64 / mrt as f64);
    }
    let growing = ratios.windows(2).all(|w| w[1] > w[0]);
    check(
        reference == 23_574 && ratios.iter().all(|&x| x >= 10.0) && growing,
        format!(
            "flops_mrt_nsp_pa(16, 100) = {reference}; ratios for ns >= 64: {:?}",
            ratios.iter().map(|x| x.round()).collect::<Vec<_>>()
        ),
    )
}

fn property_suite() -> Verdict {
    let outcomes = run_property_suite();
    for o in &outcomes {
        println!("    {o}");
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name).collect();
    check(failed.is_empty(), format!("{} checks, failed: {failed:?}", outcomes.len()))
}

fn determinism() -> Verdict {
    let dir = std::env::temp_dir().join(format!("dmsec-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let cfg = preset("fig2");
    let mut paths: Vec<PathBuf> = Vec::new();
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())?;
        let result = pool.install(|| sweep(&cfg))?;
        let path = dir.join(format!("run{threads}.csv"));
        emit_csv(&result, &path).map_err(|e| e.to_string())?;
        paths.push(path);
    }
    let bytes: Vec<Vec<u8>> = paths.iter().map(|p| std::fs::read(p).expect("written")).collect();
    let _ = std::fs::remove_dir_all(&dir);
    check(
        bytes[0] == bytes[1],
        format!("fig2 preset on 1 and 3 threads: {} bytes each, identical = {}", bytes[0].len(), bytes[0] == bytes[1]),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("method ordering over ns", method_ordering),
        ("snr monotonicity and gain", snr_monotonicity),
        ("distance decay", distance_decay),
        ("theta_cm argmax migration", theta_cm_migration),
        ("mrt variant crossover", mrt_crossover),
        ("flop curves", flop_curves),
        ("property suite", property_suite),
        ("csv determinism", determinism),
    ];
    let mut failures = 0;
    for (name, criterion) in criteria {
        let start = Instant::now();
        let verdict = criterion();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(msg) => println!("PASS  {name} ({secs:.1}s): {msg}"),
            Err(msg) => {
                failures += 1;
                println!("FAIL  {name} ({secs:.1}s): {msg}");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
