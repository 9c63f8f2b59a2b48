use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pwc_relu::analysis::{lp_error_exact2d, lp_error_grid, lp_error_mc, to_csv_string};
use pwc_relu::geometry::AxisBox;
use pwc_relu::io::{
    breakline_geometry, field_from_str, load_network, read_json, render_breaklines, render_field, save_network,
    write_json, BreaklineDoc, ConstructionKind, GeometryDoc,
};
use pwc_relu::network::Line2;
use pwc_relu::sampling::DEFAULT_SEED;
use pwc_relu::scenarios::{run_scenario, HShapeMethod, RunOptions, Scenario, ScenarioReport};
use pwc_relu::Error;

#[derive(Parser)]
#[command(name = "pwc-relu", version, about = "Closed-form ReLU networks for piecewise constant functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a network from a geometry file.
    Build {
        geometry: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long, value_enum)]
        construction: Option<Construction>,
        /// Network file to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a network at the points of a text file, one point per line.
    Eval {
        network: PathBuf,
        points: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lp error between a network and the complement indicator of a region.
    Error {
        network: PathBuf,
        geometry: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Mc)]
        method: MethodArg,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        resolution: usize,
        /// Recorded in the report row.
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Break-line geometry of a planar network.
    Breaklines {
        network: PathBuf,
        #[command(flatten)]
        bx: BoxArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a scenario preset and write its artifacts.
    Example(ExampleArgs),
    /// Render a field dump or break-line file to SVG.
    Render {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BoxArgs {
    /// Lower corner, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.0, 0.0])]
    lo: Vec<f64>,
    /// Upper corner, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [1.0, 1.0])]
    hi: Vec<f64>,
}

#[derive(Args)]
struct ExampleArgs {
    #[arg(value_enum)]
    name: ExampleName,
    /// Facet count for circle and sphere.
    #[arg(long)]
    n: Option<usize>,
    /// Dimension for the hypercube.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, value_enum)]
    method: Option<HShapeArg>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 512)]
    resolution: usize,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Convex,
    Hull,
    Decomposition,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum MethodArg {
    Mc,
    Grid,
    Exact2d,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    Circle,
    Sphere,
    Hypercube,
    Hshape,
    /// Every preset.
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum HShapeArg {
    Hull,
    Decomposition,
}

fn emit(out: Option<&Path>, text: &str) -> pwc_relu::Result<()> {
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, text)?;
        }
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn parse_points(text: &str) -> pwc_relu::Result<Vec<Vec<f64>>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            l.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<f64>().map_err(|e| Error::Format(format!("line {}: '{t}': {e}", i + 1))))
                .collect()
        })
        .collect()
}

fn interface_lines(g: &GeometryDoc) -> pwc_relu::Result<Vec<Line2>> {
    Ok(match g {
        GeometryDoc::Halfspaces { planes, .. } => planes.to_planes()?.iter().map(|h| (h.normal2(), h.offset())).collect(),
        GeometryDoc::Polygon { vertices, .. } => {
            let n = vertices.len();
            (0..n)
                .map(|k| {
                    let (a, b) = (vertices[k], vertices[(k + 1) % n]);
                    let nrm = [b[1] - a[1], a[0] - b[0]];
                    (nrm, nrm[0] * a[0] + nrm[1] * a[1])
                })
                .collect()
        }
    })
}

fn example_scenarios(a: &ExampleArgs) -> pwc_relu::Result<Vec<Scenario>> {
    let presets = Scenario::presets();
    let pick = |f: fn(&Scenario) -> bool| *presets.iter().find(|s| f(s)).expect("preset exists");
    let s = match a.name {
        ExampleName::All => return Ok(presets),
        ExampleName::Circle => {
            let Scenario::Circle { n, eps } = pick(|s| matches!(s, Scenario::Circle { .. })) else { unreachable!() };
            Scenario::Circle { n: a.n.unwrap_or(n), eps: a.eps.unwrap_or(eps) }
        }
        ExampleName::Sphere => {
            let Scenario::Sphere { n, eps } = pick(|s| matches!(s, Scenario::Sphere { .. })) else { unreachable!() };
            Scenario::Sphere { n: a.n.unwrap_or(n), eps: a.eps.unwrap_or(eps) }
        }
        ExampleName::Hypercube => {
            let Scenario::Hypercube { d, eps } = pick(|s| matches!(s, Scenario::Hypercube { .. })) else { unreachable!() };
            Scenario::Hypercube { d: a.d.unwrap_or(d), eps: a.eps.unwrap_or(eps) }
        }
        ExampleName::Hshape => {
            let Scenario::HShape { method, eps } = pick(|s| matches!(s, Scenario::HShape { .. })) else { unreachable!() };
            let method = match a.method {
                Some(HShapeArg::Hull) => HShapeMethod::Hull,
                Some(HShapeArg::Decomposition) => HShapeMethod::Decomposition,
                None => method,
            };
            Scenario::HShape { method, eps: a.eps.unwrap_or(eps) }
        }
    };
    Ok(vec![s])
}

fn print_summary(r: &ScenarioReport) {
    println!("{}/{}  shape {}  eps {}", r.name, r.preset, r.shape, r.eps);
    for e in &r.errors {
        let verdict = match e.pass {
            Some(true) => "pass",
            Some(false) => "FAIL",
            None => "-",
        };
        println!("  {:<28} p={} {:<7} {:.6e} ± {:.1e}  {}", e.scenario, e.p, e.method.as_str(), e.estimate, e.half_width_95, verdict);
    }
    for w in &r.warnings {
        println!("  warning: {w}");
    }
    let total: f64 = r.timings.iter().map(|t| t.seconds).sum();
    eprintln!("  {:.2}s ({})", total, r.timings.iter().map(|t| format!("{} {:.2}s", t.stage, t.seconds)).collect::<Vec<_>>().join(", "));
}

fn run(cli: Cli) -> pwc_relu::Result<bool> {
    match cli.command {
        Command::Build { geometry, eps, construction, out } => {
            let g: GeometryDoc = read_json(&geometry)?;
            let kind = match construction {
                Some(Construction::Convex) => ConstructionKind::Convex,
                Some(Construction::Hull) => ConstructionKind::Hull,
                Some(Construction::Decomposition) => ConstructionKind::Decomposition,
                None => g.default_construction(),
            };
            let report = g.construct(kind, eps)?;
            save_network(&out, &report.network)?;
            println!("{}", report.shape);
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
        }
        Command::Eval { network, points, out } => {
            let net = load_network(&network)?;
            let pts = parse_points(&fs::read_to_string(&points)?)?;
            let values = net.eval_batch(&pts)?;
            let text: String = values.iter().map(|v| format!("{v:.16e}\n")).collect();
            emit(out.as_deref(), &text)?;
        }
        Command::Error { network, geometry, p, method, samples, seed, resolution, eps, out } => {
            let net = load_network(&network)?;
            let g: GeometryDoc = read_json(&geometry)?;
            let bx = g.ambient()?;
            let region = g.region()?;
            let chi_hat = region.complement();
            let mut report = match method {
                MethodArg::Mc => lp_error_mc(|x| chi_hat.indicator(x), |x| net.eval_point(x), p, &bx, samples, seed)?,
                MethodArg::Grid => lp_error_grid(|x| chi_hat.indicator(x), |x| net.eval_point(x), p, &bx, resolution)?,
                MethodArg::Exact2d => {
                    if p.fract() != 0.0 || p < 1.0 {
                        return Err(Error::InvalidArgument(format!("exact2d needs an integer p >= 1, got {p}")));
                    }
                    lp_error_exact2d(&net, &chi_hat, &interface_lines(&g)?, p as u32, &bx)?
                }
            };
            report = report.with_scenario(geometry.display().to_string());
            if let Some(e) = eps {
                report = report.with_eps(e);
            }
            emit(out.as_deref(), &to_csv_string(&[report])?)?;
        }
        Command::Breaklines { network, bx, out } => {
            let net = load_network(&network)?;
            let bx = AxisBox::new(bx.lo, bx.hi)?;
            let doc = breakline_geometry(&net, &bx)?;
            match out {
                Some(p) => write_json(&p, &doc)?,
                None => emit(None, &(pwc_relu::io::to_json_string(&doc)? + "\n"))?,
            }
        }
        Command::Example(args) => {
            let opts = RunOptions {
                samples: args.samples,
                strip_samples: None,
                resolution: args.resolution,
                seed: args.seed,
                out_dir: Some(args.out.clone()),
            };
            let mut ok = true;
            for s in example_scenarios(&args)? {
                let r = run_scenario(&s, &opts)?;
                print_summary(&r);
                ok &= r.all_pass();
            }
            return Ok(ok);
        }
        Command::Render { input, out } => {
            let text = fs::read_to_string(&input)?;
            let svg = match serde_json::from_str::<BreaklineDoc>(&text) {
                Ok(doc) => render_breaklines(&doc)?,
                Err(_) => render_field(&field_from_str(&text)?)?,
            };
            emit(out.as_deref(), &svg)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: a bound check failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 2 } else { 1 })
        }
    }
}
