//! Command-line front end. [`run`] takes the argument list and returns what
//! would be printed plus the exit code, so the binary is a thin wrapper and
//! tests can drive every command in-process.
//!
//! Exit codes: 0 success, 1 a check failed (sweep violation, verify or
//! slope search failure), 2 usage error.

pub mod json;
pub mod presets;
pub mod sweep;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dofregion::achievability::{inner_bound_grid_check, FeasibleSet};
use dofregion::ratesim::{estimate_slope, p2p_rate, scheme_rate, SnrGrid};
use dofregion::regions::report;
use dofregion::{AntennaConfig, ChannelClass, Point2, Polytope2D, Rational, Region, RegionReport};
use serde_json::{json, Value};

use json::{
    points, CertificateJson, ConfigJson, Exact, FeasibilityJson, GridJson, LabelJson, PointJson,
    RegionJson, SlopeJson, SCHEMA_VERSION,
};
use sweep::{OracleOptions, SweepClass};

#[derive(Parser, Debug)]
#[command(
    name = "dofregion",
    version,
    about = "Degrees-of-freedom regions of MIMO BC/IC/CRC without CSIT"
)]
pub struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Add wall-clock timing to JSON reports. Timed reports are not
    /// byte-reproducible.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct ChannelArgs {
    /// bc, bck, ic, crc, ick or crck
    class: Option<String>,
    /// M N1 N2 for bc; M1 N1 M2 N2 for ic and crc
    counts: Vec<u32>,
    /// Transmit antenna counts for K-user classes (comma separated)
    #[arg(long, value_delimiter = ',')]
    tx: Vec<u32>,
    /// Receive antenna counts for K-user classes (comma separated)
    #[arg(long, value_delimiter = ',')]
    rx: Vec<u32>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Which {
    Inner,
    Outer,
    Csit,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inner, outer and perfect-CSIT regions of one configuration.
    Region {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Use the configuration(s) of a built-in example preset (fig2a..fig7).
        #[arg(long, conflicts_with_all = ["class", "counts", "tx", "rx"])]
        preset: Option<String>,
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Also emit outer ∩ perfect-CSIT, a valid but tool-derived outer bound.
        #[arg(long)]
        outer_with_csit: bool,
    },
    /// Position in the case tree and whether the region is fully known.
    Classify {
        #[command(flatten)]
        channel: ChannelArgs,
    },
    /// Inclusion, equality and gap between two regions. A selector is
    /// CLASS:COUNTS:WHICH, e.g. `ic:2,3,4,4:outer` or `ick:1,1/1,1:inner`
    /// (K-user counts are TX/RX lists); WHICH is inner, outer, csit or
    /// outer-csit.
    Compare { a: String, b: String },
    /// Zero-forcing certificate for a DoF point, or a full grid check.
    Verify {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Target point, e.g. `--point 2 4/3`.
        #[arg(long, num_args = 2, value_names = ["D1", "D2"])]
        point: Option<Vec<String>>,
        /// Compare the oracle's hull with the closed-form inner bound.
        #[arg(long)]
        grid: bool,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, env = "DOFREGION_SEED", default_value_t = 1)]
        seed: u64,
    },
    /// Pre-log slope of simulated rates. `slope p2p M N` for a single link,
    /// or a channel with `--point` for a certified time-sharing scheme.
    Slope {
        #[command(flatten)]
        channel: ChannelArgs,
        /// DoF point to certify and simulate, e.g. `--point 2 1`
        #[arg(long, num_args = 2, value_names = ["D1", "D2"])]
        point: Option<Vec<String>>,
        /// SNR grid in dB as lo:step:hi.
        #[arg(long, default_value = "30:5:60")]
        snr: String,
        /// Channel draws per SNR point.
        #[arg(long, default_value_t = 50)]
        trials: u64,
        /// Oracle trials per allocation when certifying the point.
        #[arg(long, default_value_t = 200)]
        oracle_trials: u64,
        #[arg(long, env = "DOFREGION_SEED", default_value_t = 1)]
        seed: u64,
    },
    /// Check every region invariant over all configurations up to a size.
    Sweep {
        /// Largest antenna count per node, at most 12
        #[arg(long)]
        max_antennas: u32,
        /// ic, crc or bc2
        #[arg(long)]
        class: String,
        /// Also run the zero-forcing grid check on every configuration.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, env = "DOFREGION_SEED", default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

/// What a command produced: a JSON body or raw text, and its exit code.
enum Body {
    Json(Value),
    Text(String),
}

type CmdResult = Result<(Body, i32), Usage>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let start = Instant::now();
    let (name, result) = dispatch(&cli.command);
    let (body, code) = match result {
        Ok(r) => r,
        Err(Usage(msg)) => {
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    };
    let text = match body {
        Body::Text(t) => t,
        Body::Json(mut v) => {
            let obj = v.as_object_mut().expect("reports are objects");
            obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
            obj.insert("command".into(), json!({ "name": name, "args": echo }));
            if cli.timing {
                obj.insert(
                    "timing".into(),
                    json!({ "elapsed_ms": start.elapsed().as_secs_f64() * 1e3 }),
                );
            }
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
    };
    match &cli.output {
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => Outcome {
                code,
                ..Default::default()
            },
            Err(e) => Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {}: {e}\n", path.display()),
            },
        },
        None => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
    }
}

fn dispatch(cmd: &Command) -> (&'static str, CmdResult) {
    match cmd {
        Command::Region {
            channel,
            preset,
            which,
            format,
            outer_with_csit,
        } => (
            "region",
            cmd_region(
                channel,
                preset.as_deref(),
                *which,
                *format,
                *outer_with_csit,
            ),
        ),
        Command::Classify { channel } => ("classify", cmd_classify(channel)),
        Command::Compare { a, b } => ("compare", cmd_compare(a, b)),
        Command::Verify {
            channel,
            point,
            grid,
            trials,
            seed,
        } => (
            "verify",
            cmd_verify(channel, point.as_deref(), *grid, *trials, *seed),
        ),
        Command::Slope {
            channel,
            point,
            snr,
            trials,
            oracle_trials,
            seed,
        } => (
            "slope",
            cmd_slope(
                channel,
                point.as_deref(),
                snr,
                *trials,
                *oracle_trials,
                *seed,
            ),
        ),
        Command::Sweep {
            max_antennas,
            class,
            oracle,
            trials,
            seed,
        } => (
            "sweep",
            cmd_sweep(*max_antennas, class, *oracle, *trials, *seed),
        ),
    }
}

fn parse_class(s: &str) -> Result<ChannelClass, Usage> {
    ChannelClass::parse(s).ok_or_else(|| {
        Usage(format!(
            "unknown channel class {s:?} (bc, bck, ic, crc, ick, crck)"
        ))
    })
}

fn build_config(
    class: ChannelClass,
    counts: &[u32],
    tx: &[u32],
    rx: &[u32],
) -> Result<AntennaConfig, Usage> {
    if class.is_two_user() {
        if !tx.is_empty() || !rx.is_empty() {
            return Err(Usage(format!(
                "{class} takes positional counts, not --tx/--rx"
            )));
        }
        return Ok(AntennaConfig::from_flat(class, counts)?);
    }
    if !counts.is_empty() {
        return Err(Usage(format!(
            "{class} takes --tx and --rx lists, not positional counts"
        )));
    }
    Ok(AntennaConfig::new(class, tx.to_vec(), rx.to_vec())?)
}

impl ChannelArgs {
    fn config(&self) -> Result<AntennaConfig, Usage> {
        let class = self
            .class
            .as_deref()
            .ok_or_else(|| Usage("missing channel class".into()))?;
        build_config(parse_class(class)?, &self.counts, &self.tx, &self.rx)
    }
}

fn parse_point(p: &[String]) -> Result<Point2, Usage> {
    let d1 = Rational::from_str(&p[0])?;
    let d2 = Rational::from_str(&p[1])?;
    let pt = Point2 { d1, d2 };
    if !pt.is_nonnegative() {
        return Err(Usage("DoF points must be nonnegative".into()));
    }
    Ok(pt)
}

fn region_entries(
    rep: &RegionReport,
    which: Which,
    outer_with_csit: bool,
) -> Vec<(&'static str, Region)> {
    let mut out = vec![];
    let mut push = |name, r: &Option<Region>| {
        if let Some(r) = r {
            out.push((name, r.clone()));
        }
    };
    if matches!(which, Which::Inner | Which::All) {
        push("inner", &rep.inner);
    }
    if matches!(which, Which::Outer | Which::All) {
        push("outer", &rep.outer);
    }
    if matches!(which, Which::Csit | Which::All) {
        push("csit", &rep.csit);
    }
    if outer_with_csit {
        push(
            "outer_with_csit",
            &rep.outer_with_csit().map(Region::Planar),
        );
    }
    out
}

fn report_json(rep: &RegionReport, which: Which, outer_with_csit: bool) -> Value {
    let regions: serde_json::Map<String, Value> = region_entries(rep, which, outer_with_csit)
        .into_iter()
        .map(|(k, r)| {
            (
                k.to_string(),
                serde_json::to_value(RegionJson::from_region(&r)).expect("serializable"),
            )
        })
        .collect();
    json!({
        "config": ConfigJson::from(&rep.config),
        "label": LabelJson::from(&rep.label),
        "regions": regions,
        "corner_points": rep.corner_points.map(|(a, b)| vec![PointJson::from(a), PointJson::from(b)]),
        "gap": points(&rep.gap),
        "flags": rep.flags,
    })
}

fn planar_of(r: &Region) -> Option<Polytope2D> {
    match r {
        Region::Planar(p) => Some(p.clone()),
        Region::Simplex(s) => s.to_polytope().ok(),
    }
}

/// `region,vertex,d1_exact,d2_exact,d1,d2`, one closed CCW polygon per region.
fn csv_rows(out: &mut String, name: &str, region: &Region) -> Result<(), Usage> {
    let p = planar_of(region)
        .ok_or_else(|| Usage(format!("{name}: CSV output needs a two-user region")))?;
    let v = p.vertices();
    for (i, pt) in v.iter().chain(v.first()).enumerate() {
        let _ = writeln!(
            out,
            "{name},{i},{},{},{},{}",
            pt.d1.to_fraction_string(),
            pt.d2.to_fraction_string(),
            pt.d1.to_f64(),
            pt.d2.to_f64()
        );
    }
    Ok(())
}

fn cmd_region(
    channel: &ChannelArgs,
    preset: Option<&str>,
    which: Which,
    format: Format,
    owc: bool,
) -> CmdResult {
    let (configs, preset_json) = match preset {
        Some(name) => {
            let p = presets::find(name).ok_or_else(|| {
                let names: Vec<_> = presets::PRESETS.iter().map(|p| p.name).collect();
                Usage(format!(
                    "unknown preset {name:?} (one of {})",
                    names.join(", ")
                ))
            })?;
            (
                p.build(),
                Some(json!({ "name": p.name, "description": p.description })),
            )
        }
        None => (vec![channel.config()?], None),
    };
    let reports: Vec<RegionReport> = configs.iter().map(report).collect();
    match format {
        Format::Json => {
            let body = json!({
                "preset": preset_json,
                "reports": reports.iter().map(|r| report_json(r, which, owc)).collect::<Vec<_>>(),
            });
            Ok((Body::Json(body), 0))
        }
        Format::Csv => {
            let mut out = String::from("region,vertex,d1_exact,d2_exact,d1,d2\n");
            for rep in &reports {
                for (name, r) in region_entries(rep, which, owc) {
                    let name = if reports.len() > 1 {
                        format!("{}_{name}", rep.config.class())
                    } else {
                        name.into()
                    };
                    csv_rows(&mut out, &name, &r)?;
                }
            }
            Ok((Body::Text(out), 0))
        }
    }
}

fn cmd_classify(channel: &ChannelArgs) -> CmdResult {
    let rep = report(&channel.config()?);
    let body = json!({
        "config": ConfigJson::from(&rep.config),
        "label": LabelJson::from(&rep.label),
        "flags": rep.flags,
    });
    Ok((Body::Json(body), 0))
}

struct Selector {
    config: AntennaConfig,
    which: String,
    region: Region,
}

fn parse_list(s: &str) -> Result<Vec<u32>, Usage> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|e| Usage(format!("count {x:?}: {e}")))
        })
        .collect()
}

fn parse_selector(s: &str) -> Result<Selector, Usage> {
    let parts: Vec<&str> = s.split(':').collect();
    let &[class, counts, which] = parts.as_slice() else {
        return Err(Usage(format!(
            "selector {s:?}: expected CLASS:COUNTS:WHICH"
        )));
    };
    let class = parse_class(class)?;
    let config = if class.is_two_user() {
        build_config(class, &parse_list(counts)?, &[], &[])?
    } else {
        let (tx, rx) = counts
            .split_once('/')
            .ok_or_else(|| Usage(format!("selector {s:?}: K-user counts are TX/RX")))?;
        build_config(class, &[], &parse_list(tx)?, &parse_list(rx)?)?
    };
    let rep = report(&config);
    let region = match which {
        "inner" => rep.inner.clone(),
        "outer" => rep.outer.clone(),
        "csit" => rep.csit.clone(),
        "outer-csit" => rep.outer_with_csit().map(Region::Planar),
        _ => {
            return Err(Usage(format!(
                "selector {s:?}: WHICH is inner, outer, csit or outer-csit"
            )))
        }
    }
    .ok_or_else(|| {
        Usage(format!(
            "selector {s:?}: no such region is known for {config}"
        ))
    })?;
    Ok(Selector {
        config,
        which: which.to_string(),
        region,
    })
}

fn cmd_compare(a: &str, b: &str) -> CmdResult {
    let (a, b) = (parse_selector(a)?, parse_selector(b)?);
    let a_in_b = a.region.is_subset(&b.region)?;
    let b_in_a = b.region.is_subset(&a.region)?;
    let gaps = match (planar_of(&a.region), planar_of(&b.region)) {
        (Some(pa), Some(pb)) => {
            Some((points(&pa.gap_vertices(&pb)), points(&pb.gap_vertices(&pa))))
        }
        _ => None,
    };
    let side = |s: &Selector| {
        json!({
            "config": ConfigJson::from(&s.config),
            "which": s.which,
            "region": RegionJson::from_region(&s.region),
        })
    };
    let body = json!({
        "a": side(&a),
        "b": side(&b),
        "a_subset_b": a_in_b,
        "b_subset_a": b_in_a,
        "equal": a_in_b && b_in_a,
        "a_outside_b": gaps.as_ref().map(|g| &g.0),
        "b_outside_a": gaps.as_ref().map(|g| &g.1),
    });
    Ok((Body::Json(body), 0))
}

fn require_two_user(config: &AntennaConfig) -> Result<(), Usage> {
    if config.class().is_two_user() {
        Ok(())
    } else {
        Err(Usage(format!(
            "{} is not a two-user channel",
            config.class()
        )))
    }
}

fn certification_json(set: &FeasibleSet, target: Point2) -> (Value, bool) {
    let cert = set.certify(target);
    let phase_reports: Vec<FeasibilityJson> = cert
        .iter()
        .flat_map(|c| &c.phases)
        .filter_map(|p| set.reports.iter().find(|r| r.allocation == p.allocation))
        .map(FeasibilityJson::from)
        .collect();
    let ok = cert.is_some();
    let v = json!({
        "target": PointJson::from(target),
        "verdict": if ok { "certified" } else { "search-failed" },
        "certificate": cert.as_ref().map(CertificateJson::from),
        "phase_reports": phase_reports,
    });
    (v, ok)
}

fn cmd_verify(
    channel: &ChannelArgs,
    point: Option<&[String]>,
    grid: bool,
    trials: u64,
    seed: u64,
) -> CmdResult {
    let config = channel.config()?;
    require_two_user(&config)?;
    if point.is_none() && !grid {
        return Err(Usage("verify needs --point D1 D2 and/or --grid".into()));
    }
    if trials == 0 {
        return Err(Usage("--trials must be at least 1".into()));
    }
    let target = point.map(parse_point).transpose()?;
    let mut ok = true;
    let mut body = json!({
        "config": ConfigJson::from(&config),
        "trials": trials,
        "seed": seed,
    });
    let set = if grid {
        let g = inner_bound_grid_check(&config, trials, seed)?;
        ok &= g.passed();
        body["grid_check"] = json!({
            "passed": g.passed(),
            "expected": RegionJson::planar(&g.expected),
            "oracle_hull": RegionJson::planar(&g.hull),
            "missing": points(&g.missing),
            "extra": points(&g.extra),
            "uncertified": points(&g.uncertified),
            "ambiguous": g.ambiguous.iter().map(FeasibilityJson::from).collect::<Vec<_>>(),
        });
        g.feasible_set
    } else {
        FeasibleSet::explore(&config, trials, seed)?
    };
    body["search"] = json!({
        "max_streams_per_user": set.bound,
        "allocations_tested": set.reports.len(),
        "feasible_allocations": set.feasible().map(|r| r.allocation.0.clone()).collect::<Vec<_>>(),
    });
    if let Some(t) = target {
        let (v, certified) = certification_json(&set, t);
        ok &= certified;
        body["certification"] = v;
    }
    Ok((Body::Json(body), if ok { 0 } else { 1 }))
}

fn cmd_slope(
    channel: &ChannelArgs,
    point: Option<&[String]>,
    snr: &str,
    trials: u64,
    oracle_trials: u64,
    seed: u64,
) -> CmdResult {
    let grid = SnrGrid::parse(snr, trials)?;
    if channel
        .class
        .as_deref()
        .map(str::to_ascii_lowercase)
        .as_deref()
        == Some("p2p")
    {
        let &[m, n] = channel.counts.as_slice() else {
            return Err(Usage("p2p expects two counts: M N".into()));
        };
        if point.is_some() {
            return Err(Usage("p2p takes no --point".into()));
        }
        let rates: Vec<Vec<f64>> = p2p_rate(m, n, &grid, seed)?
            .into_iter()
            .map(|r| vec![r])
            .collect();
        let est = estimate_slope(&grid, &rates)?;
        let body = json!({
            "mode": "p2p",
            "m": m,
            "n": n,
            "grid": GridJson::from(&grid),
            "seed": seed,
            "expected_slopes": [m.min(n) as f64],
            "rates": rates,
            "estimate": SlopeJson::from(&est),
        });
        return Ok((Body::Json(body), 0));
    }
    let config = channel.config()?;
    require_two_user(&config)?;
    let target = parse_point(
        point.ok_or_else(|| Usage("slope needs --point D1 D2 (or use p2p M N)".into()))?,
    )?;
    let set = FeasibleSet::explore(&config, oracle_trials, seed)?;
    let (cert_json, certified) = certification_json(&set, target);
    let mut body = json!({
        "mode": "scheme",
        "config": ConfigJson::from(&config),
        "grid": GridJson::from(&grid),
        "seed": seed,
        "expected_slopes": [target.d1.to_f64(), target.d2.to_f64()],
        "certification": cert_json,
    });
    let Some(cert) = set.certify(target).filter(|_| certified) else {
        return Ok((Body::Json(body), 1));
    };
    let rates = scheme_rate(&config, &cert, &grid, seed)?;
    let est = estimate_slope(&grid, &rates)?;
    body["rates"] = json!(rates);
    body["estimate"] = json!(SlopeJson::from(&est));
    Ok((Body::Json(body), 0))
}

fn cmd_sweep(max_antennas: u32, class: &str, oracle: bool, trials: u64, seed: u64) -> CmdResult {
    let class = SweepClass::parse(class)
        .ok_or_else(|| Usage(format!("sweep class {class:?}: use ic, crc or bc2")))?;
    if !(1..=sweep::MAX_ANTENNAS).contains(&max_antennas) {
        return Err(Usage(format!(
            "--max-antennas must be between 1 and {}",
            sweep::MAX_ANTENNAS
        )));
    }
    if oracle && trials == 0 {
        return Err(Usage("--trials must be at least 1".into()));
    }
    let rep = sweep::sweep(
        class,
        max_antennas,
        oracle.then_some(OracleOptions { trials, seed }),
    );
    let code = if rep.violations.is_empty() { 0 } else { 1 };
    Ok((Body::Json(serde_json::to_value(&rep)?), code))
}

/// Parse a region back out of a `region` report, for round-trip checks.
pub fn region_from_report(v: &Value, index: usize, which: &str) -> Option<Region> {
    let r: RegionJson =
        serde_json::from_value(v["reports"][index]["regions"][which].clone()).ok()?;
    r.to_region().ok()
}

/// Exact rationals from a JSON string field.
pub fn exact_of(v: &Value) -> Option<Rational> {
    serde_json::from_value::<Exact>(v.clone()).ok().map(|e| e.0)
}
