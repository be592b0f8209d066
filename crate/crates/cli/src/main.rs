//! Command-line surface: construction info, hulls, knitting verification,
//! enumeration on both sides, transport, the counting battery, and rendering.
//!
//! Exit codes: 0 success, 1 verification failure (or any runtime error),
//! 2 usage error. No command consumes randomness; identical invocations
//! produce identical bytes.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use orthoquiver::counting::expected_counts;
use orthoquiver::knitting::{hull_minus_checked, hull_plus, verify_knit_identities, Hull};
use orthoquiver::orthogonal::{enumerate_maximal_orthogonal, expected_count};
use orthoquiver::polygon::{enumerate_dissections, transport_with, verify_crossing_duality, Chord};
use orthoquiver::quiver::{DiagramSpec, Family, QuotientSpec};
use orthoquiver::render::{render_polygon, render_quiver, MarkStyle, RenderConfig, RenderFormat};
use orthoquiver::results::{read_results, write_results, ResultsPayload};

#[derive(Parser)]
#[command(
    name = "orthoquiver",
    version,
    about = "Translation-quiver orthogonal subsets and polygon dissections"
)]
struct Cli {
    /// Optional key=value config file mirroring long flags; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for enumeration commands.
    #[arg(long, global = true, env = "ORTHOQUIVER_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct DiagramArgs {
    /// Diagram family: A, B, C or D.
    #[arg(long)]
    family: Option<String>,
    /// Rank parameter m (the diagram is A_m, B_m, C_m or D_{m+1}).
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print diagram constants and expected counts.
    Info(DiagramArgs),
    /// Print a Hom-support hull of a vertex.
    Hull {
        #[command(flatten)]
        diagram: DiagramArgs,
        /// Vertex such as "(0,4)" or "(1,5)+".
        #[arg(long)]
        vertex: String,
        #[arg(long, value_enum, default_value_t = SideArg::Minus)]
        side: SideArg,
        /// Write the hull as a JSON list of vertex strings.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the knitting identities over a column window.
    KnitVerify {
        #[command(flatten)]
        diagram: DiagramArgs,
        /// Column window "lo:hi"; defaults to width 3l centered at 0.
        #[arg(long)]
        window: Option<String>,
    },
    /// Enumerate maximal n-orthogonal subsets of the quotient quiver.
    Enumerate {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate maximal 1-orthogonal chord dissections of the polygon.
    Dissections {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the quiver-to-polygon transport and fiber sizes.
    Transport {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full counting battery over a rank range.
    VerifyCounts {
        #[arg(long)]
        max_m: Option<u32>,
        /// Comma-separated families (default A,B,C,D).
        #[arg(long)]
        families: Option<String>,
    },
    /// Render quiver windows or polygon dissections.
    Render {
        #[command(subcommand)]
        what: RenderWhat,
    },
}

#[derive(Subcommand)]
enum RenderWhat {
    Quiver {
        #[command(flatten)]
        diagram: DiagramArgs,
        /// Column window "lo:hi".
        #[arg(long)]
        window: Option<String>,
        /// Results file providing marked subsets.
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
        /// Subset index inside the results file.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long)]
        cell: Option<u32>,
        #[arg(long, value_enum)]
        mark: Option<MarkArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Polygon {
        #[command(flatten)]
        diagram: DiagramArgs,
        /// Polygon size; defaults to the diagram's l.
        #[arg(long)]
        l: Option<u32>,
        /// Chords as "0-4,1-5".
        #[arg(long)]
        chords: Option<String>,
        /// Results file providing dissections.
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long)]
        cell: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Minus,
    Plus,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum MarkArg {
    Circle,
    Fill,
}

/// key=value pairs loaded from --config; consulted when a flag is absent.
#[derive(Default)]
struct FileConfig(std::collections::BTreeMap<String, String>);

impl FileConfig {
    fn load(path: Option<&Path>) -> Result<FileConfig, CliError> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut map = std::collections::BTreeMap::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "config line {}: expected key=value, got {line:?}",
                    ln + 1
                )));
            };
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(FileConfig(map))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("config value {key}={raw} is invalid"))),
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Run(orthoquiver::Error),
    /// A verification ran and reported failures (already printed).
    Failed,
}

impl From<orthoquiver::Error> for CliError {
    fn from(e: orthoquiver::Error) -> Self {
        CliError::Run(e)
    }
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes, like any other CLI filter.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            eprintln!("hint: run `orthoquiver --help` for the flag reference");
            ExitCode::from(2)
        }
        Err(CliError::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Failed) => ExitCode::from(1),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = FileConfig::load(cli.config.as_deref())?;
    let jobs = match cli.jobs {
        Some(j) => Some(j),
        None => cfg.get::<usize>("jobs")?,
    };
    if let Some(jobs) = jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match cli.cmd {
        Cmd::Info(d) => info(&resolve_spec(&d, &cfg)?),
        Cmd::Hull {
            diagram,
            vertex,
            side,
            out,
        } => hull(
            &resolve_spec(&diagram, &cfg)?,
            &vertex,
            side,
            out.as_deref(),
        ),
        Cmd::KnitVerify { diagram, window } => {
            knit_verify(&resolve_spec(&diagram, &cfg)?, window, &cfg)
        }
        Cmd::Enumerate { diagram, n, out } => {
            let n = match n {
                Some(n) => n,
                None => cfg.get::<u32>("n")?.unwrap_or(1),
            };
            if n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            enumerate(&resolve_spec(&diagram, &cfg)?, n, out.as_deref())
        }
        Cmd::Dissections { diagram, out } => {
            dissections(&resolve_spec(&diagram, &cfg)?, out.as_deref())
        }
        Cmd::Transport { diagram, out } => {
            transport(&resolve_spec(&diagram, &cfg)?, out.as_deref())
        }
        Cmd::VerifyCounts { max_m, families } => {
            let max_m = match max_m {
                Some(v) => v,
                None => cfg.get::<u32>("max-m")?.unwrap_or(4),
            };
            let families = match families {
                Some(f) => Some(f),
                None => cfg.get::<String>("families")?,
            };
            verify_counts(max_m, families.as_deref())
        }
        Cmd::Render { what } => render(what, &cfg),
    }
}

fn resolve_spec(d: &DiagramArgs, cfg: &FileConfig) -> Result<DiagramSpec, CliError> {
    let family = match &d.family {
        Some(f) => f.clone(),
        None => cfg
            .get::<String>("family")?
            .ok_or_else(|| CliError::Usage("--family is required".into()))?,
    };
    let m = match d.m {
        Some(m) => m,
        None => cfg
            .get::<u32>("m")?
            .ok_or_else(|| CliError::Usage("--m is required".into()))?,
    };
    let family: Family = family
        .parse()
        .map_err(|_| CliError::Usage(format!("unknown family {family:?}")))?;
    DiagramSpec::new(family, m).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_window(spec: &DiagramSpec, window: Option<&str>) -> Result<(i64, i64), CliError> {
    match window {
        None => Ok(spec.default_window()),
        Some(w) => {
            let err = || CliError::Usage(format!("window {w:?} must be lo:hi"));
            let (lo, hi) = w.split_once(':').ok_or_else(err)?;
            let lo: i64 = lo.trim().parse().map_err(|_| err())?;
            let hi: i64 = hi.trim().parse().map_err(|_| err())?;
            if lo > hi {
                return Err(err());
            }
            Ok((lo, hi))
        }
    }
}

fn info(spec: &DiagramSpec) -> Result<(), CliError> {
    let counts = expected_counts(spec);
    let q = QuotientSpec::for_level(*spec, 1);
    println!("diagram          {}", spec.name());
    println!("family           {}", spec.family());
    println!("m                {}", spec.m());
    println!("l                {}", spec.l());
    println!("row range        2..={}", spec.row_max());
    println!("slots per column {}", spec.slots_per_column());
    println!("quotient period  {} (n = 1)", q.period());
    println!("quiver count     {}", counts.quiver);
    println!("dissection count {}", counts.dissection);
    Ok(())
}

fn print_hull(h: &Hull) {
    let members: Vec<String> = h.members.iter().map(|v| v.to_string()).collect();
    println!("{{{}}}", members.join(", "));
    println!("size: {}", members.len());
}

fn hull(
    spec: &DiagramSpec,
    vertex: &str,
    side: SideArg,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let v = spec
        .parse_vertex(vertex)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let h = match side {
        SideArg::Minus => hull_minus_checked(spec, v)?,
        SideArg::Plus => hull_plus(spec, v),
    };
    print_hull(&h);
    if let Some(path) = out {
        let members: Vec<String> = h.members.iter().map(|v| v.to_string()).collect();
        let mut doc = serde_json::to_string_pretty(&members).expect("strings serialize");
        doc.push('\n');
        std::fs::write(path, doc).map_err(orthoquiver::Error::from)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn knit_verify(
    spec: &DiagramSpec,
    window: Option<String>,
    cfg: &FileConfig,
) -> Result<(), CliError> {
    let window = match window {
        Some(w) => Some(w),
        None => cfg.get::<String>("window")?,
    };
    let w = parse_window(spec, window.as_deref())?;
    let report = verify_knit_identities(spec, w)?;
    println!(
        "{}: knitting identities hold on [{}, {}] ({} vertices, max coefficient {})",
        spec.name(),
        w.0,
        w.1,
        report.vertices_checked,
        report.max_coefficient
    );
    Ok(())
}

fn enumerate(spec: &DiagramSpec, n: u32, out: Option<&Path>) -> Result<(), CliError> {
    let subsets = enumerate_maximal_orthogonal(spec, n)?;
    let mut line = format!(
        "family={} m={} n={} count={}",
        spec.family(),
        spec.m(),
        n,
        subsets.len()
    );
    if n == 1 {
        let want = expected_count(spec);
        write!(line, " expected={want}").unwrap();
        if subsets.len() as u64 != want {
            println!("{line} status=FAIL");
            return Err(CliError::Failed);
        }
        write!(line, " status=ok").unwrap();
    }
    println!("{line}");
    if let Some(path) = out {
        let payload = ResultsPayload::from_subsets(spec, n, &subsets);
        write_results(path, &payload)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn dissections(spec: &DiagramSpec, out: Option<&Path>) -> Result<(), CliError> {
    let ds = enumerate_dissections(spec);
    let want = expected_counts(spec).dissection;
    let status = if ds.len() as u64 == want {
        "ok"
    } else {
        "FAIL"
    };
    println!(
        "family={} m={} l={} dissections={} expected={want} status={status}",
        spec.family(),
        spec.m(),
        spec.l(),
        ds.len()
    );
    if status == "FAIL" {
        return Err(CliError::Failed);
    }
    if let Some(path) = out {
        let payload = ResultsPayload::from_dissections(spec, &ds);
        write_results(path, &payload)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn transport(spec: &DiagramSpec, out: Option<&Path>) -> Result<(), CliError> {
    let subsets = enumerate_maximal_orthogonal(spec, 1)?;
    let ds = enumerate_dissections(spec);
    let report = transport_with(spec, &subsets, &ds)?;
    println!(
        "family={} m={} quiver={} dissections={} fiber1={} fiber2={} bijective={}",
        spec.family(),
        spec.m(),
        report.quiver_count,
        report.dissection_count,
        report.fiber_one,
        report.fiber_two,
        report.bijective
    );
    if let Some(path) = out {
        let payload = ResultsPayload::from_transport(spec, &subsets, &ds, &report);
        write_results(path, &payload)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn verify_counts(max_m: u32, families: Option<&str>) -> Result<(), CliError> {
    let families: Vec<Family> = match families {
        None => Family::ALL.to_vec(),
        Some(list) => list
            .split(',')
            .map(|f| {
                f.parse::<Family>()
                    .map_err(|_| CliError::Usage(format!("unknown family {f:?}")))
            })
            .collect::<Result<_, _>>()?,
    };
    println!(
        "{:<8} {:>7} {:>7} {:>9} {:>9} {:>9} {:>8}  status",
        "diagram", "quiver", "closed", "polygon", "closed", "fiber1", "duality"
    );
    let mut failures = 0;
    for &family in &families {
        let lo = if family == Family::D { 2 } else { 1 };
        for m in lo..=max_m {
            let Ok(spec) = DiagramSpec::new(family, m) else {
                continue;
            };
            let counts = expected_counts(&spec);
            let row = (|| -> orthoquiver::Result<(usize, usize, usize, usize)> {
                let subsets = enumerate_maximal_orthogonal(&spec, 1)?;
                let ds = enumerate_dissections(&spec);
                let report = transport_with(&spec, &subsets, &ds)?;
                let pairs = verify_crossing_duality(&spec)?;
                Ok((subsets.len(), ds.len(), report.fiber_one, pairs))
            })();
            match row {
                Ok((quiver, polygon, fiber_one, pairs)) => {
                    let ok = quiver as u64 == counts.quiver && polygon as u64 == counts.dissection;
                    if !ok {
                        failures += 1;
                    }
                    println!(
                        "{:<8} {:>7} {:>7} {:>9} {:>9} {:>9} {:>8}  {}",
                        spec.name(),
                        quiver,
                        counts.quiver,
                        polygon,
                        counts.dissection,
                        fiber_one,
                        pairs,
                        if ok { "pass" } else { "FAIL" }
                    );
                }
                Err(e) => {
                    failures += 1;
                    println!("{:<8} verification error: {e}", spec.name());
                }
            }
        }
    }
    if failures > 0 {
        println!("{failures} case(s) FAILED");
        return Err(CliError::Failed);
    }
    println!("all cases pass");
    Ok(())
}

fn render(what: RenderWhat, cfg: &FileConfig) -> Result<(), CliError> {
    match what {
        RenderWhat::Quiver {
            diagram,
            window,
            input,
            index,
            format,
            cell,
            mark,
            out,
        } => {
            let spec = resolve_spec(&diagram, cfg)?;
            let marked: BTreeSet<_> = match input {
                None => BTreeSet::new(),
                Some(path) => {
                    let payload = read_results(&path)?;
                    if payload.spec()? != spec {
                        return Err(CliError::Usage(format!(
                            "results file is for {}, not {}",
                            payload.spec()?.name(),
                            spec.name()
                        )));
                    }
                    let row = payload.subsets.get(index).ok_or_else(|| {
                        CliError::Usage(format!(
                            "subset index {index} out of range (file has {})",
                            payload.subsets.len()
                        ))
                    })?;
                    row.iter()
                        .map(|s| spec.parse_vertex(s))
                        .collect::<orthoquiver::Result<_>>()?
                }
            };
            let window = match window {
                Some(w) => parse_window(&spec, Some(&w))?,
                None => match cfg.get::<String>("window")? {
                    Some(w) => parse_window(&spec, Some(&w))?,
                    None if marked.is_empty() => spec.default_window(),
                    None => {
                        let lo = marked.iter().map(|v| v.i()).min().unwrap() - 1;
                        let hi = marked.iter().map(|v| v.i()).max().unwrap() + 1;
                        (lo, hi)
                    }
                },
            };
            let rc = render_config(format, cell, mark, cfg)?;
            let doc = render_quiver(&spec, window, &marked, &rc)?;
            emit(doc, out.as_deref())
        }
        RenderWhat::Polygon {
            diagram,
            l,
            chords,
            input,
            index,
            format,
            cell,
            out,
        } => {
            let l = match l {
                Some(l) => l,
                None => resolve_spec(&diagram, cfg)?.l(),
            };
            if l < 4 {
                return Err(CliError::Usage("--l must be at least 4".into()));
            }
            let chords: Vec<Chord> = match (chords, input) {
                (Some(_), Some(_)) => {
                    return Err(CliError::Usage(
                        "--chords and --input are mutually exclusive".into(),
                    ))
                }
                (Some(list), None) => parse_chords(l, &list)?,
                (None, Some(path)) => {
                    let payload = read_results(&path)?;
                    let row = payload.dissections.get(index).ok_or_else(|| {
                        CliError::Usage(format!(
                            "dissection index {index} out of range (file has {})",
                            payload.dissections.len()
                        ))
                    })?;
                    row.iter()
                        .map(|&[p, q]| Chord::new(l, p, q))
                        .collect::<orthoquiver::Result<_>>()?
                }
                (None, None) => Vec::new(),
            };
            let rc = render_config(format, cell, None, cfg)?;
            let doc = render_polygon(l, &chords, &rc);
            emit(doc, out.as_deref())
        }
    }
}

fn parse_chords(l: u32, list: &str) -> Result<Vec<Chord>, CliError> {
    list.split(',')
        .map(|pair| {
            let err = || CliError::Usage(format!("chord {pair:?} must be p-q"));
            let (p, q) = pair.trim().split_once('-').ok_or_else(err)?;
            let p: u32 = p.trim().parse().map_err(|_| err())?;
            let q: u32 = q.trim().parse().map_err(|_| err())?;
            Chord::new(l, p, q).map_err(|e| CliError::Usage(e.to_string()))
        })
        .collect()
}

fn render_config(
    format: Option<FormatArg>,
    cell: Option<u32>,
    mark: Option<MarkArg>,
    cfg: &FileConfig,
) -> Result<RenderConfig, CliError> {
    let format = match format {
        Some(FormatArg::Ascii) => RenderFormat::Ascii,
        Some(FormatArg::Svg) => RenderFormat::Svg,
        None => match cfg.get::<String>("format")?.as_deref() {
            Some("svg") => RenderFormat::Svg,
            Some("ascii") | None => RenderFormat::Ascii,
            Some(other) => {
                return Err(CliError::Usage(format!("unknown format {other:?}")));
            }
        },
    };
    let cell = match cell {
        Some(c) => c,
        None => cfg.get::<u32>("cell")?.unwrap_or(24),
    };
    let mark = match mark {
        Some(MarkArg::Circle) => MarkStyle::Circle,
        Some(MarkArg::Fill) => MarkStyle::Fill,
        None => match cfg.get::<String>("mark")?.as_deref() {
            Some("fill") => MarkStyle::Fill,
            _ => MarkStyle::Circle,
        },
    };
    Ok(RenderConfig { format, cell, mark })
}

fn emit(doc: String, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        None => {
            print!("{doc}");
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, doc).map_err(orthoquiver::Error::from)?;
            println!("wrote {}", path.display());
            Ok(())
        }
    }
}
