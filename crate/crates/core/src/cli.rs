//! The `ratio-lab` command line.
//!
//! Exit status 0 on success, 1 when a verification fails (the report still
//! goes to the output), 2 on usage or parameter errors. Errors are written to
//! stderr as one JSON line `{"error": kind, "reason": message}`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::{bounds, check_claim1, classify_f1_f2, f_map_check, BoundsReport, Claim1Violation};
use crate::constructions::{
    halving_family, match_regular_params, multi_plane_family, plane_family, prime_pick, star_family, thm1ii_family,
    MultiPlaneParams,
};
use crate::degree::degree_profile;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::numeric::{is_prime, ratio_string, rational};
use crate::projective::build_plane;
use crate::search::enumerate_maximal_families;
use crate::search::extremal_over;
use crate::vertex_set::MAX_VERTEX;

#[derive(Parser, Debug)]
#[command(name = "ratio-lab", version, about = "Maximal intersecting families and their degree ratios")]
pub struct RunConfig {
    /// Worker threads for scans and searches.
    #[arg(long, global = true, env = "RATIO_LAB_JOBS")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Build one of the explicit families as Family JSON.
    Construct(ConstructArgs),
    /// Check intersecting, maximal and covering for a Family JSON file.
    Verify { file: PathBuf },
    /// Degree profile and optional structural reports for a Family JSON file.
    Analyze {
        file: PathBuf,
        /// Covering number.
        #[arg(long)]
        tau: bool,
        /// Removable-element partition and the recursive count check.
        #[arg(long)]
        partition: bool,
        /// Fibre sizes of the removal mapping.
        #[arg(long)]
        fmap: bool,
    },
    /// Lower and upper bounds on the extremal ratios.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Enumerate every maximal intersecting family and report exact extremes.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Keep families that leave a vertex uncovered.
        #[arg(long)]
        no_cover: bool,
        /// Write every enumerated family, one Family JSON per line.
        #[arg(long)]
        emit_families: Option<PathBuf>,
    },
    /// Exhaustively check that small blocking sets of PG(2, p) contain a line.
    Blokhuis {
        #[arg(long)]
        p: u64,
    },
    /// Smallest prime in the open window (2r/3, 4r/5).
    Primes {
        #[arg(long)]
        r: u64,
    },
    /// Closest union-of-planes parameters to (n, r).
    Match {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Search beyond the 128-vertex universe (report only).
        #[arg(long)]
        uncapped: bool,
    },
    /// Tabulate bounds and construction ratios over an (n, r) grid.
    Sweep(SweepArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Star,
    Thm1ii,
    Plane,
    Multiplane,
    Halving,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 7)]
    pub n_min: usize,
    #[arg(long, default_value_t = 20)]
    pub n_max: usize,
    #[arg(long, default_value_t = 2)]
    pub r_min: usize,
    #[arg(long, default_value_t = 6)]
    pub r_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Result of a verb: the artifact text and whether a verification failed.
struct Outcome {
    text: String,
    failed: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, failed: false }
    }
}

/// Parses `args` (including the program name) and runs the verb, writing the
/// artifact to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let reason = e.to_string().lines().next().unwrap_or_default().to_string();
            let _ = writeln!(err, "{}", json!({"error": "Usage", "reason": reason}));
            return 2;
        }
    };
    match execute(&config) {
        Ok(outcome) => {
            if !outcome.text.is_empty() {
                let _ = writeln!(out, "{}", outcome.text);
            }
            i32::from(outcome.failed)
        }
        Err(e) => {
            let _ = writeln!(err, "{}", json!({"error": e.kind(), "reason": e.to_string()}));
            2
        }
    }
}

fn execute(config: &RunConfig) -> Result<Outcome> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = config.jobs {
        if jobs == 0 {
            return Err(Error::BadParameters("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(jobs);
    }
    let pool = builder.build().map_err(|e| Error::BadParameters(e.to_string()))?;
    pool.install(|| dispatch(&config.verb))
}

fn dispatch(verb: &Verb) -> Result<Outcome> {
    match verb {
        Verb::Construct(args) => construct(args),
        Verb::Verify { file } => verify(&read_family(file)?),
        Verb::Analyze { file, tau, partition, fmap } => analyze(&read_family(file)?, *tau, *partition, *fmap),
        Verb::Bounds { n, r } => Ok(Outcome::ok(bounds_json(&bounds(*n, *r)?).to_string())),
        Verb::Search { n, r, no_cover, emit_families } => search(*n, *r, !*no_cover, emit_families.as_ref()),
        Verb::Blokhuis { p } => Ok(Outcome::ok(build_plane(*p, 1)?.verify_blokhuis()?.to_json())),
        Verb::Primes { r } => {
            let p = prime_pick(*r)?;
            let window = [ratio_string(&rational(2 * r, 3u64)), ratio_string(&rational(4 * r, 5u64))];
            Ok(Outcome::ok(json!({"r": r, "p": p, "window": window}).to_string()))
        }
        Verb::Match { n, r, uncapped } => {
            let cap = (!uncapped).then_some(MAX_VERTEX);
            let m = match_regular_params(*n, *r, cap)?;
            Ok(Outcome::ok(
                json!({
                    "n": n, "r": r, "k": m.k, "p": m.p, "s": m.s,
                    "n_prime": m.n_prime, "r_prime": m.r_prime,
                    "deviation": ratio_string(&m.deviation),
                })
                .to_string(),
            ))
        }
        Verb::Sweep(args) => sweep(args),
    }
}

fn read_family(path: &PathBuf) -> Result<Family> {
    Family::from_json(&fs::read_to_string(path)?)
}

fn require<T: Copy>(value: Option<T>, flag: &str, kind: FamilyKind) -> Result<T> {
    value.ok_or_else(|| Error::BadParameters(format!("--{flag} is required for {kind:?}")))
}

fn check_derived(given: Option<usize>, derived: usize, flag: &str) -> Result<()> {
    match given {
        Some(v) if v != derived => Err(Error::BadParameters(format!("--{flag} {v} disagrees with derived value {derived}"))),
        _ => Ok(()),
    }
}

pub fn build_family(args: &ConstructArgs) -> Result<Family> {
    let kind = args.family;
    match kind {
        FamilyKind::Star => star_family(require(args.n, "n", kind)?, require(args.r, "r", kind)?),
        FamilyKind::Thm1ii => thm1ii_family(require(args.n, "n", kind)?, require(args.r, "r", kind)?),
        FamilyKind::Plane => {
            plane_family(require(args.n, "n", kind)?, require(args.r, "r", kind)?, require(args.p, "p", kind)?)
        }
        FamilyKind::Multiplane => {
            let params = MultiPlaneParams::new(
                require(args.k, "k", kind)?,
                require(args.p, "p", kind)?,
                require(args.s, "s", kind)?,
            )?;
            check_derived(args.n, params.n(), "n")?;
            check_derived(args.r, params.r(), "r")?;
            multi_plane_family(params)
        }
        FamilyKind::Halving => {
            let r = require(args.r, "r", kind)?;
            check_derived(args.n, 2 * r, "n")?;
            halving_family(r)
        }
    }
}

fn construct(args: &ConstructArgs) -> Result<Outcome> {
    let family = build_family(args)?;
    match &args.out {
        Some(path) => {
            fs::write(path, family.to_json() + "\n")?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(family.to_json())),
    }
}

fn verify(family: &Family) -> Result<Outcome> {
    let mut report = serde_json::Map::new();
    let pair = family.disjoint_pair();
    report.insert("intersecting".into(), json!(pair.is_none()));
    let maximal = match pair {
        Some((a, b)) => {
            report.insert("disjoint_pair".into(), json!([a.to_vec(), b.to_vec()]));
            false
        }
        None => {
            let addable = family.addable_set()?;
            if let Some(g) = addable {
                report.insert("addable".into(), json!(g.to_vec()));
            }
            addable.is_none()
        }
    };
    report.insert("maximal".into(), json!(maximal));
    let covers = family.covers_universe();
    report.insert("covers".into(), json!(covers));
    if !covers {
        report.insert("uncovered".into(), json!(family.uncovered()));
    }
    let failed = pair.is_some() || !maximal || !covers;
    Ok(Outcome { text: Value::Object(report).to_string(), failed })
}

fn error_json(e: &Error) -> Value {
    json!({"error": e.kind(), "reason": e.to_string()})
}

/// Degree profile plus the requested sections, as a JSON object.
pub fn analysis_json(family: &Family, tau: bool, partition: bool, fmap: bool) -> (Value, bool) {
    let profile = degree_profile(family);
    let mut failed = false;
    let mut report = serde_json::Map::new();
    report.insert("n".into(), json!(family.n()));
    report.insert("r".into(), json!(family.r()));
    report.insert("size".into(), json!(family.len()));
    report.insert("degrees".into(), json!(profile.degrees));
    report.insert("delta_max".into(), json!(profile.delta_max));
    report.insert("delta_min".into(), json!(profile.delta_min));
    report.insert("ratio".into(), json!(profile.ratio.as_ref().map(ratio_string)));
    if tau {
        report.insert("tau".into(), json!(family.covering_number()));
    }
    if partition {
        let section = match classify_f1_f2(family) {
            Ok(p) => {
                let claim = check_claim1(&p, family.r());
                let violation = claim.as_ref().err().map(|v| match v {
                    Claim1Violation::TotalExceedsPower => "f2_exceeds_r_pow_r".to_string(),
                    Claim1Violation::TotalExceedsFirstLayer => "f2_exceeds_r_d1".to_string(),
                    Claim1Violation::Layer(j) => format!("d{j}_exceeds_r_d{}", j + 1),
                });
                json!({
                    "f1_size": p.f1.len(),
                    "f2_size": p.f2.len(),
                    "f2": p.f2.sets().iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
                    "removable": p.removable.iter().map(|(s, g)| json!([s.to_vec(), g])).collect::<Vec<_>>(),
                    "dj": p.dj,
                    "claim1": claim.is_ok(),
                    "claim1_violation": violation,
                })
            }
            Err(e) => {
                failed = true;
                error_json(&e)
            }
        };
        report.insert("partition".into(), section);
    }
    if fmap {
        let section = match f_map_check(family) {
            Ok(m) => json!({
                "pivot": m.pivot,
                "images_in_family": m.images_in_family,
                "max_preimage": m.max_preimage,
                "bound": m.bound,
                "ok": m.ok,
            }),
            Err(e @ Error::TauEqualsR(_)) => error_json(&e),
            Err(e) => {
                failed = true;
                error_json(&e)
            }
        };
        report.insert("fmap".into(), section);
    }
    (Value::Object(report), failed)
}

fn analyze(family: &Family, tau: bool, partition: bool, fmap: bool) -> Result<Outcome> {
    let (report, failed) = analysis_json(family, tau, partition, fmap);
    Ok(Outcome { text: report.to_string(), failed })
}

fn bounds_json(b: &BoundsReport) -> Value {
    json!({
        "n": b.n,
        "r": b.r,
        "m_lower": ratio_string(&b.m_lower),
        "M_upper": b.max_upper.to_string(),
        "M_lower_thm1ii": b.max_lower.as_ref().map(ratio_string),
    })
}

fn search(n: usize, r: usize, require_cover: bool, emit: Option<&PathBuf>) -> Result<Outcome> {
    let families = enumerate_maximal_families(n, r, require_cover)?;
    if let Some(path) = emit {
        let lines: String = families.iter().map(|f| f.to_json() + "\n").collect();
        fs::write(path, lines)?;
    }
    Ok(Outcome::ok(extremal_over(n, r, require_cover, &families)?.to_json()))
}

/// One row of the sweep table.
struct SweepRow {
    n: usize,
    r: usize,
    construction: String,
    size: usize,
    delta_max: u64,
    delta_min: u64,
    ratio: String,
    bounds: BoundsReport,
}

fn sweep_constructions(n: usize, r: usize) -> Vec<(String, Result<Family>)> {
    let mut out = Vec::new();
    if 2 * r <= n {
        out.push(("star".to_string(), star_family(n, r)));
    }
    if r >= 3 && 2 * r + 2 < n {
        out.push(("thm1ii".to_string(), thm1ii_family(n, r)));
    }
    for p in (2u64..).take_while(|p| (p * p + p + 1) as usize <= n).filter(|&p| is_prime(p)) {
        if crate::constructions::check_plane_window(n, r, p).is_ok() {
            out.push((format!("plane:p={p}"), plane_family(n, r, p)));
        }
        let size = (p * p + p + 1) as usize;
        if n.is_multiple_of(size) {
            let k = n / size;
            let base = k.div_ceil(2) * (p as usize + 1);
            if k % 2 == 1 && r >= base {
                if let Ok(params) = MultiPlaneParams::new(k, p, r - base) {
                    out.push((format!("multiplane:k={k};p={p};s={}", r - base), multi_plane_family(params)));
                }
            }
        }
    }
    if n == 2 * r && r >= 3 {
        out.push(("halving".to_string(), halving_family(r)));
    }
    out
}

fn sweep_rows(args: &SweepArgs) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for n in args.n_min..=args.n_max.min(MAX_VERTEX) {
        for r in args.r_min.max(1)..=args.r_max.min(n) {
            let b = bounds(n, r)?;
            for (name, family) in sweep_constructions(n, r) {
                let family = match family {
                    Ok(f) => f,
                    Err(Error::TooManyMembers(_) | Error::UncoveredUniverse(_)) => continue,
                    Err(e) => return Err(e),
                };
                let d = degree_profile(&family);
                rows.push(SweepRow {
                    n,
                    r,
                    construction: name,
                    size: family.len(),
                    delta_max: d.delta_max,
                    delta_min: d.delta_min,
                    ratio: d.ratio.as_ref().map(ratio_string).unwrap_or_default(),
                    bounds: b.clone(),
                });
            }
        }
    }
    Ok(rows)
}

pub const SWEEP_COLUMNS: [&str; 10] =
    ["n", "r", "construction", "|F|", "delta_max", "delta_min", "ratio", "m_lower", "M_lower_thm1ii", "M_upper"];

fn sweep(args: &SweepArgs) -> Result<Outcome> {
    let rows = sweep_rows(args)?;
    let text = match args.format {
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
            writer.write_record(SWEEP_COLUMNS).map_err(io)?;
            for row in &rows {
                writer
                    .write_record([
                        row.n.to_string(),
                        row.r.to_string(),
                        row.construction.clone(),
                        row.size.to_string(),
                        row.delta_max.to_string(),
                        row.delta_min.to_string(),
                        row.ratio.clone(),
                        ratio_string(&row.bounds.m_lower),
                        row.bounds.max_lower.as_ref().map(ratio_string).unwrap_or_default(),
                        row.bounds.max_upper.to_string(),
                    ])
                    .map_err(io)?;
            }
            let bytes = writer.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
            String::from_utf8(bytes).expect("csv output is utf-8").trim_end().to_string()
        }
        Format::Json => Value::Array(
            rows.iter()
                .map(|row| {
                    json!({
                        "n": row.n, "r": row.r, "construction": row.construction, "|F|": row.size,
                        "delta_max": row.delta_max, "delta_min": row.delta_min, "ratio": row.ratio,
                        "m_lower": ratio_string(&row.bounds.m_lower),
                        "M_lower_thm1ii": row.bounds.max_lower.as_ref().map(ratio_string),
                        "M_upper": row.bounds.max_upper.to_string(),
                    })
                })
                .collect(),
        )
        .to_string(),
    };
    match &args.out {
        Some(path) => {
            fs::write(path, text + "\n")?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}
