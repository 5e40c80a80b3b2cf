use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use streamdraw::adversary::{Adversary, GreedyBaseline};
use streamdraw::bench::bench;
use streamdraw::run::{run, RunParams};
use streamdraw::stream::{format_stream, parse_stream, Mode, Stream};
use streamdraw::svg::emit_svg;
use streamdraw::workloads::{random_outerplanar_stream, random_tree_stream, Workload};
use streamdraw::Strategy;

#[derive(Parser)]
#[command(name = "streamdraw", version, about = "Streamed planar drawings with few vertex moves")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum WorkloadArg {
    Random,
    Sequential,
    Hotspot,
}

impl From<WorkloadArg> for Workload {
    fn from(w: WorkloadArg) -> Self {
        match w {
            WorkloadArg::Random => Workload::Random,
            WorkloadArg::Sequential => Workload::Sequential,
            WorkloadArg::Hotspot => Workload::HotSpot,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Tree,
    Treemap,
    Outerplanar,
}

#[derive(clap::Args)]
struct Common {
    /// Labeling strategy: oracle, tag, packed, sqrt, twolevel or bulkpacked.
    #[arg(long, default_value = "packed")]
    strategy: Strategy,
    /// Exponent of the tag labeler's polynomial label space.
    #[arg(long, default_value_t = 2)]
    poly_exponent: u32,
}

#[derive(Subcommand)]
enum Cmd {
    /// Replay a stream and write the JSON report.
    Run {
        stream: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Audit after every event.
        #[arg(long)]
        audit: bool,
        /// Report path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the final drawing as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Replay a stream and write the final drawing as SVG.
    Draw {
        stream: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        audit: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Amortized move counts for n = 2^lo .. 2^hi.
    Bench {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "hotspot")]
        workload: WorkloadArg,
        #[arg(long, default_value_t = 10)]
        lo: u32,
        #[arg(long, default_value_t = 16)]
        hi: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play the wedge adversary against the greedy no-move baseline.
    Adversary {
        /// Cut-halving rounds before switching to lattice halving.
        #[arg(long, default_value_t = 20)]
        rounds: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the adversary's edges as a tree stream.
        #[arg(long)]
        stream_out: Option<PathBuf>,
    },
    /// Write a random stream.
    Gen {
        #[arg(value_enum)]
        mode: ModeArg,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<Stream> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_stream(&text).with_context(|| format!("parsing {}", path.display()))
}

fn json<T: serde::Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let started = Instant::now();
    match cli.cmd {
        Cmd::Run { stream, common, audit, out, svg } => {
            let s = load(&stream)?;
            let params = RunParams { strategy: common.strategy, exponent: common.poly_exponent, audit_each: audit };
            let (report, drawing) = run(&s, params)?;
            emit(out.as_deref(), &report.to_json())?;
            if let Some(p) = svg {
                fs::write(&p, emit_svg(&drawing)).with_context(|| format!("writing {}", p.display()))?;
            }
            eprintln!(
                "{} events, {} singles, {} bulks, area {}, audit {} ({:.2?})",
                report.per_event.len(),
                report.totals.singles,
                report.totals.bulks,
                report.totals.area,
                if report.audit.passed { "passed" } else { "FAILED" },
                started.elapsed()
            );
            if !report.audit.passed {
                bail!("{} audit violations", report.audit.violations.len());
            }
        }
        Cmd::Draw { stream, common, audit, out } => {
            let s = load(&stream)?;
            let params = RunParams { strategy: common.strategy, exponent: common.poly_exponent, audit_each: audit };
            let (report, drawing) = run(&s, params)?;
            fs::write(&out, emit_svg(&drawing)).with_context(|| format!("writing {}", out.display()))?;
            if !report.audit.passed {
                bail!("audit failed: {}", report.audit.violations.join("; "));
            }
        }
        Cmd::Bench { common, workload, lo, hi, seed, out } => {
            if lo > hi || hi > 24 {
                bail!("need lo <= hi <= 24");
            }
            let r = bench(common.strategy, workload.into(), lo, hi, seed, common.poly_exponent)?;
            emit(out.as_deref(), &json(&r)?)?;
            for p in &r.points {
                eprintln!(
                    "n={:>8} singles/ins={:.3} bulks/ins={:.3} max_bulk={} max_label/n={:.2}",
                    p.n,
                    p.singles_per_insert,
                    p.bulks_per_insert,
                    p.max_bulk,
                    p.max_label as f64 / p.n as f64
                );
            }
            eprintln!("done in {:.2?}", started.elapsed());
        }
        Cmd::Adversary { rounds, out, stream_out } => {
            if !(1..=40).contains(&rounds) {
                bail!("rounds must be in 1..=40");
            }
            let r = Adversary::run(&mut GreedyBaseline, rounds);
            emit(out.as_deref(), &json(&r)?)?;
            if let Some(p) = stream_out {
                fs::write(&p, format_stream(&Adversary::stream(&r)))?;
            }
            eprintln!(
                "s = {}, phase-2 rounds {}, log2(area) slope {:.2}, final area {} ({:.2?})",
                r.final_s,
                r.phase2_rounds,
                r.phase2_log2_slope,
                r.rounds.last().map_or(0, |x| x.area),
                started.elapsed()
            );
        }
        Cmd::Gen { mode, n, seed, out } => {
            let s = match mode {
                ModeArg::Tree => random_tree_stream(Mode::Tree, n, seed),
                ModeArg::Treemap => random_tree_stream(Mode::TreeMap, n, seed),
                ModeArg::Outerplanar => {
                    if n < 3 {
                        bail!("outerplanar streams need n >= 3");
                    }
                    random_outerplanar_stream(n, seed)
                }
            };
            emit(out.as_deref(), &format_stream(&s))?;
        }
    }
    Ok(())
}
