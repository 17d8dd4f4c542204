//! Command-line front end: fixture generation, analysis runs, report
//! emission, end-cut queries, and SVG rendering.

mod svg;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use dsets::accessibility::{accessible_set, find_end_cut, synthesize_end_cut, EndCut};
use dsets::classifier::{classify, sample_points, ClassifyConfig};
use dsets::error::Error as DsetsError;
use dsets::lc_topology::ScaleLadder;
use dsets::raster::{complement_components, rasterize_with, RasterRule};
use dsets::set_model::{make_fixture, FixtureSpec};
use dsets::{CurveComplex, Point};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dsets",
    about = "Analyze two-sided compact plane sets: complement decomposition, \
             accessibility, and simple-closed-curve classification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Find,
    Synthesize,
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainArg {
    Bounded,
    Unbounded,
}

#[derive(clap::Args, Clone)]
struct ScaleArgs {
    /// Grid spacing of the rasterization
    #[arg(long, default_value_t = 0.005)]
    h: f64,
    /// Sampling step for analytic fixture arcs (default: h/2)
    #[arg(long)]
    step: Option<f64>,
    /// Coarsest inspection scale (default: max(0.4, 4 * eps_min))
    #[arg(long)]
    eps_max: Option<f64>,
    /// Finest inspection scale (default: max(0.05, 5h))
    #[arg(long)]
    eps_min: Option<f64>,
    /// Geometric ratio between consecutive scales
    #[arg(long, default_value_t = 2.0)]
    eps_ratio: f64,
    /// Escape depth for accessibility (default: 10h)
    #[arg(long)]
    probe_radius: Option<f64>,
    /// Arc-length spacing of boundary samples (default: eps_min / 2)
    #[arg(long)]
    sample_spacing: Option<f64>,
    /// Recorded in the report; all runs are deterministic in it
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a fixture and write its curve-complex JSON
    Fixture {
        /// Fixture spec, e.g. circle:1.0, posc:8, comb_arc:4
        spec: String,
        #[arg(long, default_value_t = 0.0025)]
        step: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify a set and write the report JSON
    Analyze {
        /// Fixture spec to generate
        #[arg(long, conflicts_with = "input")]
        fixture: Option<String>,
        /// Curve-complex JSON file to load
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        scales: ScaleArgs,
        /// Also write an SVG rendering
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Find or synthesize an end-cut at a point of the set
    Endcut {
        #[arg(long, conflicts_with = "input")]
        fixture: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        scales: ScaleArgs,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
        #[arg(long, value_enum)]
        domain: DomainArg,
        #[arg(long, value_enum, default_value = "find")]
        mode: Mode,
        #[arg(long)]
        out: PathBuf,
    },
}

fn load_complex(
    fixture: &Option<String>,
    input: &Option<PathBuf>,
    step: Option<f64>,
    h: f64,
) -> Result<(CurveComplex, String)> {
    match (fixture, input) {
        (Some(spec_str), None) => {
            let spec: FixtureSpec = spec_str.parse()?;
            let complex = match make_fixture(spec, step.unwrap_or(h / 2.0)) {
                // A defaulted step that misses a fixture's finest feature is
                // tightened to it; an explicit --step stays authoritative.
                Err(DsetsError::UnresolvableScale { feature, .. }) if step.is_none() => {
                    make_fixture(spec, feature)?
                }
                r => r?,
            };
            Ok((complex, spec.to_string()))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let complex = CurveComplex::from_json(&text)?;
            Ok((complex, format!("file:{}", path.display())))
        }
        _ => bail!("exactly one of --fixture or --input is required"),
    }
}

fn build_config(scales: &ScaleArgs) -> Result<ClassifyConfig> {
    let eps_min = scales.eps_min.unwrap_or_else(|| 0.05f64.max(5.0 * scales.h));
    let eps_max = scales.eps_max.unwrap_or_else(|| 0.4f64.max(4.0 * eps_min));
    let ladder = ScaleLadder::geometric(eps_max, eps_min, scales.eps_ratio)?;
    Ok(ClassifyConfig {
        h: scales.h,
        probe_radius: scales.probe_radius.unwrap_or(10.0 * scales.h),
        sample_spacing: scales.sample_spacing.unwrap_or(eps_min / 2.0),
        seed: scales.seed,
        raster_rule: RasterRule::CenterWithin,
        ladder,
    })
}

fn write_svg(path: &Path, complex: &CurveComplex, config: &ClassifyConfig) -> Result<()> {
    let grid = rasterize_with(complex, config.h, config.raster_rule)?;
    let decomp = complement_components(&grid);
    let samples = sample_points(complex, config.sample_spacing);
    let mut a1 = Vec::new();
    let mut a2 = Vec::new();
    let mut cuts: Vec<EndCut> = Vec::new();
    for (k, dom) in decomp.domains.iter().enumerate() {
        let records = accessible_set(
            complex,
            &grid,
            &decomp,
            dom.id,
            &samples,
            config.probe_radius,
        )?;
        let acc: Vec<Point> = records
            .iter()
            .filter(|r| r.accessible_from(dom.id))
            .map(|r| r.point)
            .collect();
        // A few witness end-cuts per domain, evenly spread.
        let stride = (acc.len() / 3).max(1);
        for &p in acc.iter().step_by(stride).take(3) {
            if let Some(ec) = find_end_cut(complex, &grid, &decomp, p, dom.id, config.probe_radius)?
            {
                cuts.push(ec);
            }
        }
        if k == 0 {
            a1 = acc;
        } else {
            a2.extend(acc);
        }
    }
    let layers = svg::SvgLayers {
        a1_samples: &a1,
        a2_samples: &a2,
        cuts: &cuts,
    };
    std::fs::write(path, svg::render(&grid, &decomp, &layers))
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn verdict_str(v: dsets::classifier::Verdict) -> &'static str {
    match v {
        dsets::classifier::Verdict::True => "true",
        dsets::classifier::Verdict::False => "false",
        dsets::classifier::Verdict::NotApplicable => "n/a",
    }
}

#[derive(serde::Serialize)]
struct EndCutFile {
    target: [f64; 2],
    domain_id: u32,
    scale: f64,
    vertices: Vec<[f64; 2]>,
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Fixture { spec, step, out } => {
            let spec: FixtureSpec = spec.parse()?;
            let complex = make_fixture(spec, step)?;
            std::fs::write(&out, complex.to_json())
                .with_context(|| format!("writing {}", out.display()))?;
            Ok(0)
        }
        Cmd::Analyze {
            fixture,
            input,
            scales,
            svg,
            out,
        } => {
            let config = build_config(&scales)?;
            let (complex, id) = load_complex(&fixture, &input, scales.step, scales.h)?;
            let mut report = match classify(&complex, &id, &config) {
                Ok(r) => r,
                Err(DsetsError::ScaleError(msg)) => {
                    eprintln!("scale error: {msg}");
                    return Ok(3);
                }
                Err(e) => return Err(e.into()),
            };
            if id.starts_with("circle_with_dots") {
                report.diagnostics.push(
                    "isolated points are modeled as ticks of extent = sampling step".to_string(),
                );
            }
            std::fs::write(&out, report.to_json())
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "{id}: domains={} d_set={} simple_set={} jordan={} -> {}",
                report.domain_count,
                verdict_str(report.d_set),
                verdict_str(report.simple_set),
                verdict_str(report.jordan),
                out.display()
            );
            if let Some(svg_path) = svg {
                write_svg(&svg_path, &complex, &config)?;
            }
            Ok(report.exit_code())
        }
        Cmd::Endcut {
            fixture,
            input,
            scales,
            x,
            y,
            domain,
            mode,
            out,
        } => {
            let config = build_config(&scales)?;
            let (complex, _) = load_complex(&fixture, &input, scales.step, scales.h)?;
            let grid = rasterize_with(&complex, config.h, config.raster_rule)?;
            let decomp = complement_components(&grid);
            let domain_id = match domain {
                DomainArg::Unbounded => decomp.unbounded_id(),
                DomainArg::Bounded => match decomp.bounded_id() {
                    Some(id) => id,
                    None => {
                        eprintln!("no bounded domain ({} domains)", decomp.domain_count());
                        return Ok(2);
                    }
                },
            };
            let p = Point::new(x, y);
            let found = match mode {
                Mode::Find => {
                    match find_end_cut(&complex, &grid, &decomp, p, domain_id, config.probe_radius)
                    {
                        Ok(Some(ec)) => ec,
                        Ok(None) => {
                            eprintln!(
                                "point ({x}, {y}) is not accessible from domain {domain_id} at h={}",
                                config.h
                            );
                            return Ok(1);
                        }
                        Err(e) => {
                            eprintln!("{e}");
                            return Ok(1);
                        }
                    }
                }
                Mode::Synthesize => {
                    match synthesize_end_cut(
                        &complex,
                        &grid,
                        &decomp,
                        p,
                        domain_id,
                        &config.ladder,
                        config.probe_radius,
                    ) {
                        Ok(ec) => ec,
                        Err(e) => {
                            eprintln!("{e}");
                            return Ok(1);
                        }
                    }
                }
            };
            let file = EndCutFile {
                target: [found.target.x, found.target.y],
                domain_id: found.domain_id,
                scale: found.scale,
                vertices: found.path.vertices().iter().map(|v| [v.x, v.y]).collect(),
            };
            std::fs::write(&out, serde_json::to_string_pretty(&file)?)
                .with_context(|| format!("writing {}", out.display()))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
