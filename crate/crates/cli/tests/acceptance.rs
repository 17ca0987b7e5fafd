//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when
//! any criterion fails.

use std::time::{Duration, Instant};

use dofregion::polytope::Halfspace;
use dofregion::rational::q;
use dofregion::regions::*;
use dofregion::{Point2, Rational};
use dofregion_cli::run;
use serde_json::Value;

struct Verdict {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Verdict {
    Verdict {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Verdict {
    Verdict {
        ok: false,
        detail: detail.into(),
    }
}

fn check(ok: bool, good: String, bad: String) -> Verdict {
    if ok {
        pass(good)
    } else {
        fail(bad)
    }
}

fn quads(max: u32) -> impl Iterator<Item = (u32, u32, u32, u32)> {
    (1..=max).flat_map(move |a| {
        (1..=max)
            .flat_map(move |b| (1..=max).flat_map(move |c| (1..=max).map(move |d| (a, b, c, d))))
    })
}

/// Run the CLI in-process; returns (stdout, exit code).
fn cli(args: &[&str]) -> (String, i32) {
    let out = run(std::iter::once("dofregion").chain(args.iter().copied()));
    (out.stdout, out.code)
}

fn parsed(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or(Value::Null)
}

fn ac1() -> Verdict {
    let ic_pattern = |m1: u32, n1: u32, m2: u32, n2: u32| {
        (m2 >= n2 && n2 > n1 && n1 > m1)
            || (m1 >= n1 && n1 > n2 && n2 > m2)
            || (n1 > m1 && m1 > n2 && n2 > m2)
            || (n2 > m2 && m2 > n1 && n1 > m1)
    };
    let crc_pattern = |m1: u32, n1: u32, m2: u32, n2: u32| {
        (m1 >= n1 && n1 > n2 && n2 > m2) || (n1 > m1 && n2 > m2 && n2 < n1.min(m1 + m2))
    };
    let (mut ic_bad, mut crc_bad, mut ic_outer_only, mut crc_outer_only, mut n) =
        (vec![], vec![], 0, 0, 0);
    for (m1, n1, m2, n2) in quads(8) {
        n += 1;
        let ic = !ic_classify(m1, n1, m2, n2).exact;
        let crc = !crc_classify(m1, n1, m2, n2).exact;
        ic_outer_only += ic as u32;
        crc_outer_only += crc as u32;
        if ic != ic_pattern(m1, n1, m2, n2) {
            ic_bad.push((m1, n1, m2, n2));
        }
        if crc != crc_pattern(m1, n1, m2, n2) {
            crc_bad.push((m1, n1, m2, n2));
        }
    }
    check(
        ic_bad.is_empty() && crc_bad.is_empty() && n == 4096,
        format!("{n} configs; IC outer-only {ic_outer_only}, CRC outer-only {crc_outer_only}, all matching the listed patterns"),
        format!("IC mismatches {ic_bad:?}; CRC mismatches {crc_bad:?}"),
    )
}

fn ac2() -> Verdict {
    let mut bad = vec![];
    for (m1, n1, m2, n2) in quads(8) {
        if !ic_inner(m1, n1, m2, n2).is_subset(&ic_outer(m1, n1, m2, n2)) {
            bad.push(format!("ic {m1} {n1} {m2} {n2}"));
        }
        if !crc_inner(m1, n1, m2, n2).is_subset(&crc_outer(m1, n1, m2, n2)) {
            bad.push(format!("crc {m1} {n1} {m2} {n2}"));
        }
    }
    let mut equal = 0;
    for (m, n1, n2, _) in quads(8).filter(|t| t.3 == 1) {
        let (no, full) = (bc2_no_csit(m, n1, n2), bc2_csit(m, n1, n2));
        if !no.is_subset(&full) {
            bad.push(format!("bc {m} {n1} {n2} not within perfect CSIT"));
        }
        let eq = no == full;
        equal += eq as u32;
        if eq != (m <= n1.min(n2)) {
            bad.push(format!("bc {m} {n1} {n2} equality mismatch"));
        }
    }
    check(
        bad.is_empty(),
        format!("8192 two-pair and 512 BC inclusions hold; {equal} BC configs with equal regions, all with M <= min(N1,N2)"),
        format!("violations: {bad:?}"),
    )
}

fn ac3() -> Verdict {
    let inner = ic_inner(2, 3, 4, 4);
    let outer = ic_outer(2, 3, 4, 4);
    let target = Halfspace::new(3, 2, 8).unwrap();
    let gap = Point2::new(2, q(4, 3));
    let has_hs = inner.halfspaces().contains(&target);
    let has_vertex = outer.vertices().contains(&gap);
    let excluded = !inner.contains(gap);
    check(
        has_hs && has_vertex && excluded,
        format!(
            "inner {inner}, outer vertex ({}, {}) outside inner",
            gap.d1, gap.d2
        ),
        format!(
            "halfspace present {has_hs}, vertex present {has_vertex}, vertex excluded {excluded}"
        ),
    )
}

const ORACLE_SWEEPS: [(&str, u64); 3] = [("ic", 625), ("crc", 625), ("bc2", 125)];

fn oracle_sweeps() -> Vec<(String, i32)> {
    ORACLE_SWEEPS
        .iter()
        .map(|(class, _)| {
            cli(&[
                "sweep",
                "--max-antennas",
                "5",
                "--class",
                class,
                "--oracle",
                "--trials",
                "200",
                "--seed",
                "1",
            ])
        })
        .collect()
}

fn ac4(sweeps: &[(String, i32)]) -> Verdict {
    let mut notes = vec![];
    let mut ok = true;
    for ((class, expected), (out, code)) in ORACLE_SWEEPS.iter().zip(sweeps) {
        let v = parsed(out);
        let o = &v["oracle"];
        let hull_violations: Vec<&Value> = v["violations"]
            .as_array()
            .map(|a| {
                a.iter()
                    .filter(|x| {
                        !x["invariant"]
                            .as_str()
                            .unwrap_or("")
                            .contains("vertex is certified")
                    })
                    .collect()
            })
            .unwrap_or_default();
        let good = *code == 0
            && o["configs_checked"].as_u64() == Some(*expected)
            && o["ambiguous_allocations"].as_u64() == Some(0)
            && o["min_singular_ratio"].as_f64().is_some_and(|r| r > 1e-6)
            && hull_violations.is_empty();
        ok &= good;
        notes.push(format!(
            "{class}: {} configs, {} allocations, min singular ratio {:.2e}{}",
            o["configs_checked"],
            o["allocations_tested"],
            o["min_singular_ratio"].as_f64().unwrap_or(f64::NAN),
            if good {
                String::new()
            } else {
                format!(", exit {code}, violations {hull_violations:?}")
            }
        ));
    }
    check(ok, notes.join("; "), notes.join("; "))
}

fn ac5(sweeps: &[(String, i32)]) -> Verdict {
    let mut certified = 0;
    let mut missing = vec![];
    for (out, _) in sweeps {
        let v = parsed(out);
        certified += v["oracle"]["vertices_certified"].as_u64().unwrap_or(0);
        for x in v["violations"].as_array().into_iter().flatten() {
            if x["invariant"]
                .as_str()
                .unwrap_or("")
                .contains("vertex is certified")
            {
                missing.push(x.clone());
            }
        }
    }
    let (out, code) = cli(&[
        "verify", "ic", "2", "3", "4", "4", "--point", "2", "4/3", "--trials", "200", "--seed", "1",
    ]);
    let verdict = parsed(&out)["certification"]["verdict"]
        .as_str()
        .map(String::from);
    let gap_fails = code == 1 && verdict.as_deref() == Some("search-failed");
    check(
        missing.is_empty() && certified > 0 && gap_fails,
        format!(
            "{certified} inner-bound vertices certified; (2,4/3) on IC 2 3 4 4 has no certificate"
        ),
        format!("uncertified {missing:?}; gap point verdict {verdict:?} exit {code}"),
    )
}

fn slope_runs() -> Vec<(String, i32)> {
    let mut runs: Vec<(String, i32)> = [("1", "1"), ("2", "3"), ("3", "1"), ("4", "4")]
        .iter()
        .map(|(m, n)| {
            cli(&[
                "slope", "p2p", m, n, "--snr", "30:5:60", "--trials", "50", "--seed", "1",
            ])
        })
        .collect();
    runs.push(cli(&[
        "slope", "ic", "2", "3", "4", "4", "--point", "2", "1", "--snr", "30:5:60", "--trials",
        "50", "--seed", "1",
    ]));
    runs
}

fn ac6(runs: &[(String, i32)]) -> Verdict {
    let mut ok = true;
    let mut notes = vec![];
    for (out, code) in runs {
        let v = parsed(out);
        let expected: Vec<f64> = v["expected_slopes"]
            .as_array()
            .into_iter()
            .flatten()
            .filter_map(Value::as_f64)
            .collect();
        let got: Vec<f64> = v["estimate"]["slopes"]
            .as_array()
            .into_iter()
            .flatten()
            .filter_map(Value::as_f64)
            .collect();
        let good = *code == 0
            && !got.is_empty()
            && got.len() == expected.len()
            && got
                .iter()
                .zip(&expected)
                .all(|(g, e)| (g - e).abs() <= 0.05 * e);
        ok &= good;
        let what = match v["mode"].as_str() {
            Some("p2p") => format!("p2p ({},{})", v["m"], v["n"]),
            _ => "IC 2 3 4 4 at (2,1)".into(),
        };
        let got: Vec<String> = got.iter().map(|g| format!("{g:.4}")).collect();
        notes.push(format!("{what} -> [{}]", got.join(", ")));
    }
    check(ok, notes.join("; "), notes.join("; "))
}

fn ac7() -> Verdict {
    let mut bad = vec![];
    for k in 2..=4 {
        let s = ick_region(&vec![1; k], &vec![1; k]).ok().flatten();
        match s {
            Some(s)
                if s.max_sum() == Rational::ONE
                    && s.weights().iter().all(|&w| w == Rational::ONE) => {}
            other => bad.push(format!("K={k}: {other:?}")),
        }
    }
    for m in 1..=4u32 {
        for k in 2..=5 {
            let s = ick_region(&vec![m; k], &vec![m; k]).ok().flatten();
            match s {
                Some(s)
                    if s.intercepts().iter().all(|&c| c == Rational::from(m))
                        && s.max_sum() == Rational::from(m) => {}
                other => bad.push(format!("M={m} K={k}: {other:?}")),
            }
        }
    }
    check(
        bad.is_empty(),
        "unit-antenna K-user IC has sum DoF 1 for K=2..4; equal-antenna IC intercepts equal M"
            .into(),
        format!("{bad:?}"),
    )
}

fn main() {
    let mut all_ok = true;
    let mut report = |name: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let mut v = f();
        let took = start.elapsed();
        if let Some(limit) = limit {
            if took > limit {
                v = fail(format!("{} (took {took:.1?}, limit {limit:?})", v.detail));
            }
        }
        all_ok &= v.ok;
        println!(
            "{} {name} [{took:.2?}]: {}",
            if v.ok { "PASS" } else { "FAIL" },
            v.detail
        );
    };

    report(
        "AC1 exhaustive exactness table",
        Some(Duration::from_secs(5)),
        &mut ac1,
    );
    report(
        "AC2 inclusion suite",
        Some(Duration::from_secs(5)),
        &mut ac2,
    );
    report("AC3 gap-point golden values", None, &mut ac3);

    let mut sweeps = vec![];
    report(
        "AC4 oracle hull equals inner bound",
        Some(Duration::from_secs(300)),
        &mut || {
            sweeps = oracle_sweeps();
            ac4(&sweeps)
        },
    );
    report("AC5 corner certification", None, &mut || ac5(&sweeps));
    let mut slopes = vec![];
    report(
        "AC6 pre-log regression",
        Some(Duration::from_secs(60)),
        &mut || {
            slopes = slope_runs();
            ac6(&slopes)
        },
    );
    report("AC7 K-user checks", None, &mut ac7);
    report("AC8 determinism", None, &mut || {
        let again_sweeps = oracle_sweeps();
        let again_slopes = slope_runs();
        let again_gap = cli(&[
            "verify", "ic", "2", "3", "4", "4", "--point", "2", "4/3", "--trials", "200", "--seed",
            "1",
        ]);
        let first_gap = cli(&[
            "verify", "ic", "2", "3", "4", "4", "--point", "2", "4/3", "--trials", "200", "--seed",
            "1",
        ]);
        let same = again_sweeps == sweeps && again_slopes == slopes && again_gap == first_gap;
        let bytes: usize = sweeps.iter().chain(&slopes).map(|(s, _)| s.len()).sum();
        check(
            same,
            format!("{bytes} bytes of JSON reproduced byte for byte"),
            "reruns differ".into(),
        )
    });

    if !all_ok {
        std::process::exit(1);
    }
}
