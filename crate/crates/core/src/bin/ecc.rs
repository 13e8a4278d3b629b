//! Command-line front end: solve, verify, profile, generate.
//!
//! Exit codes: 0 success, 2 input/parse problems, 3 verification rejected,
//! 4 certificate fingerprint mismatch.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ecc_core::analysis::{profile, GraphProfile};
use ecc_core::certificates::{verify_bundle, CertificateBundle};
use ecc_core::chordal;
use ecc_core::error::Error;
use ecc_core::generators;
use ecc_core::graph::{open_input, parse_dimacs_gr, parse_edge_list, write_edge_list, Graph, Ranking};
use ecc_core::solvers::{self, DiameterVariant, Frac};
use ecc_core::traversal::QueryCounter;

const EXIT_PARSE: u8 = 2;
const EXIT_REJECTED: u8 = 3;
const EXIT_FINGERPRINT: u8 = 4;

#[derive(Parser)]
#[command(name = "ecc", about = "Exact graph radius, diameter and eccentricities with verifiable certificates", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Input graph path ('-' for stdin; '.gz' is decompressed).
    #[arg(long)]
    input: String,
    /// Input format: auto | edgelist | dimacs.
    #[arg(long, default_value = "auto")]
    format: String,
    /// Node ranking: 'id' or 'random:<seed>'.
    #[arg(long, default_value = "id")]
    ranking: String,
}

#[derive(Args, Clone)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Write the certificate bundle as JSON.
    #[arg(long)]
    cert_out: Option<PathBuf>,
    /// Skip re-verifying the returned certificate.
    #[arg(long)]
    no_self_check: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the radius, a center and a radius certificate.
    Radius {
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Compute the diameter, a diametral node and a diameter certificate.
    Diameter {
        #[command(flatten)]
        solve: SolveArgs,
        /// basic | center_init | delegate | center_init_delegate | doubling
        #[arg(long, default_value = "center_init_delegate")]
        variant: String,
        /// Ball shrink factor for the doubling variant (e.g. 1/2).
        #[arg(long, default_value = "1/2")]
        alpha: String,
        /// Use the chordal center-ball procedure (requires a chordal graph).
        #[arg(long)]
        chordal: bool,
    },
    /// Compute all eccentricities with tight certificates.
    EccAll {
        #[command(flatten)]
        solve: SolveArgs,
        /// Use the chordal center-ball procedure (requires a chordal graph).
        #[arg(long)]
        chordal: bool,
    },
    /// Audit a certificate bundle against a graph.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Certificate bundle JSON produced by --cert-out.
        #[arg(long)]
        cert: PathBuf,
    },
    /// Measure certificate sizes and the structure behind them; one CSV row.
    Profile {
        #[command(flatten)]
        input: InputArgs,
        /// Also count antipodes and furthest nodes (one sweep per node).
        #[arg(long)]
        full: bool,
        /// Append the CSV row (with header if new) to this file.
        #[arg(long)]
        csv_out: Option<PathBuf>,
        /// Row label, first CSV column.
        #[arg(long, default_value = "user")]
        kind: String,
        /// Row name, second CSV column (defaults to the input file name).
        #[arg(long)]
        name: Option<String>,
    },
    /// Write a synthetic graph in edge-list format.
    Generate {
        /// path | cycle | star | grid | wgrid | bowtie | powerlaw | udg |
        /// ktree | interval
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Node count (powerlaw, udg, ktree, interval).
        #[arg(long)]
        n: Option<usize>,
        /// Side length (grid, wgrid) or node count (path, cycle, star).
        #[arg(long)]
        k: Option<usize>,
        /// Bow-tie lobe size.
        #[arg(long)]
        p: Option<usize>,
        /// Bow-tie arm scale.
        #[arg(long)]
        q: Option<usize>,
        /// Edge deletion fraction (grid).
        #[arg(long, default_value_t = 0.0)]
        deletion: f64,
        /// Degree exponent (powerlaw) or target average degree (udg).
        #[arg(long)]
        param: Option<f64>,
        /// Clique size (ktree).
        #[arg(long, default_value_t = 2)]
        cliques: usize,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(classify(&err))
        }
    }
}

fn classify(err: &Error) -> u8 {
    match err {
        Error::Parse { .. }
        | Error::NegativeWeight { .. }
        | Error::NodeOutOfRange { .. }
        | Error::MissingHeader
        | Error::EmptyGraph
        | Error::Io(_)
        | Error::Json(_)
        | Error::BadGenParams(_)
        | Error::InvalidAlpha
        | Error::BadRanking => EXIT_PARSE,
        Error::FingerprintMismatch(_) => EXIT_FINGERPRINT,
        _ => 1,
    }
}

fn load_graph(args: &InputArgs) -> ecc_core::Result<(Graph, String)> {
    let reader = open_input(&args.input)?;
    let dimacs = match args.format.as_str() {
        "dimacs" => true,
        "edgelist" => false,
        "auto" => args.input.ends_with(".gr") || args.input.ends_with(".gr.gz"),
        other => {
            return Err(Error::Parse {
                line: 0,
                msg: format!("unknown format '{other}'"),
            })
        }
    };
    let g = if dimacs {
        parse_dimacs_gr(reader)?
    } else {
        parse_edge_list(reader)?
    };
    let name = PathBuf::from(&args.input)
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "stdin".to_string());
    Ok((g, name))
}

/// Restricts to the core and reports what was dropped.
fn core_graph(g: Graph) -> ecc_core::Result<Graph> {
    let n = g.n();
    let core = g.restrict_to_core()?;
    if core.dropped > 0 {
        eprintln!(
            "core: kept {} of {} nodes ({:.1}% dropped)",
            core.graph.n(),
            n,
            100.0 * core.dropped as f64 / n as f64
        );
    }
    Ok(core.graph)
}

fn make_ranking(spec: &str, n: usize) -> ecc_core::Result<Ranking> {
    if spec == "id" {
        return Ok(Ranking::id(n));
    }
    if let Some(seed) = spec.strip_prefix("random:") {
        let seed: u64 = seed.parse().map_err(|_| Error::Parse {
            line: 0,
            msg: format!("bad ranking seed '{seed}'"),
        })?;
        return Ok(Ranking::random(n, seed));
    }
    Err(Error::Parse {
        line: 0,
        msg: format!("unknown ranking '{spec}' (expected 'id' or 'random:<seed>')"),
    })
}

fn emit_bundle(bundle: &CertificateBundle, path: &Option<PathBuf>) -> ecc_core::Result<()> {
    if let Some(path) = path {
        let mut file = std::fs::File::create(path)?;
        file.write_all(bundle.to_json()?.as_bytes())?;
        file.write_all(b"\n")?;
    }
    Ok(())
}

fn self_check(g: &Graph, ranking: &Ranking, bundle: &CertificateBundle) -> ecc_core::Result<bool> {
    let mut counter = QueryCounter::new();
    let verdict = verify_bundle(g, ranking, bundle, &mut counter)?;
    if !verdict.accepted {
        eprintln!(
            "self-check rejected the certificate: {}",
            verdict.reason.unwrap_or_default()
        );
    }
    Ok(verdict.accepted)
}

fn threads_from_env() -> usize {
    std::env::var("ECC_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1)
        })
}

fn run(cli: Cli) -> ecc_core::Result<ExitCode> {
    match cli.command {
        Command::Radius { solve } => {
            let (raw, _) = load_graph(&solve.input)?;
            let g = core_graph(raw)?;
            let ranking = make_ranking(&solve.input.ranking, g.n())?;
            let r = solvers::radius(&g, &ranking)?;
            println!(
                "radius={} center={} sweeps={} |L|={}",
                r.radius,
                r.center,
                r.report.sweeps,
                r.lower.len()
            );
            emit_bundle(&r.bundle, &solve.cert_out)?;
            if !solve.no_self_check && !self_check(&g, &ranking, &r.bundle)? {
                return Ok(ExitCode::from(EXIT_REJECTED));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Diameter {
            solve,
            variant,
            alpha,
            chordal,
        } => {
            let (raw, _) = load_graph(&solve.input)?;
            let g = core_graph(raw)?;
            let ranking = make_ranking(&solve.input.ranking, g.n())?;
            let d = if chordal {
                chordal::chordal_diameter(&g, &ranking)?
            } else if variant == "doubling" {
                solvers::diameter_doubling(&g, &ranking, Frac::parse(&alpha)?)?
            } else {
                let variant: DiameterVariant = variant
                    .parse()
                    .map_err(|msg: String| Error::Parse { line: 0, msg })?;
                solvers::diameter(&g, &ranking, variant)?
            };
            println!(
                "diameter={} witness={} sweeps={} |U|={}",
                d.diameter,
                d.witness,
                d.report.sweeps,
                d.upper.len()
            );
            emit_bundle(&d.bundle, &solve.cert_out)?;
            if !solve.no_self_check && !self_check(&g, &ranking, &d.bundle)? {
                return Ok(ExitCode::from(EXIT_REJECTED));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::EccAll { solve, chordal } => {
            let (raw, _) = load_graph(&solve.input)?;
            let g = core_graph(raw)?;
            let ranking = make_ranking(&solve.input.ranking, g.n())?;
            let a = if chordal {
                chordal::chordal_all_ecc(&g, &ranking)?
            } else {
                solvers::all_eccentricities(&g, &ranking)?
            };
            let min = a.ecc.iter().min().unwrap();
            let max = a.ecc.iter().max().unwrap();
            println!(
                "ecc-all n={} |L|={} |U|={} sweeps={} min={} max={}",
                g.n(),
                a.lower.len(),
                a.upper.len(),
                a.report.sweeps,
                min,
                max
            );
            if let Some(bundle) = &a.bundle {
                emit_bundle(bundle, &solve.cert_out)?;
                if !solve.no_self_check && !self_check(&g, &ranking, bundle)? {
                    return Ok(ExitCode::from(EXIT_REJECTED));
                }
            } else if solve.cert_out.is_some() {
                eprintln!("the chordal route yields no verifiable all-eccentricity bundle");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input, cert } => {
            let (raw, _) = load_graph(&input)?;
            let g = core_graph(raw)?;
            let ranking = make_ranking(&input.ranking, g.n())?;
            let text = std::fs::read_to_string(&cert)?;
            let bundle = CertificateBundle::from_json(&text)?;
            let mut counter = QueryCounter::new();
            let verdict = verify_bundle(&g, &ranking, &bundle, &mut counter)?;
            let kind = match bundle.kind {
                ecc_core::certificates::CertKind::Radius => "radius",
                ecc_core::certificates::CertKind::Diameter => "diameter",
                ecc_core::certificates::CertKind::AllEcc => "all-ecc",
            };
            if verdict.accepted {
                println!("verdict=accepted kind={kind} sweeps={}", verdict.sweeps);
                Ok(ExitCode::SUCCESS)
            } else {
                println!(
                    "verdict=rejected kind={kind} sweeps={} reason={}",
                    verdict.sweeps,
                    verdict.reason.unwrap_or_default()
                );
                Ok(ExitCode::from(EXIT_REJECTED))
            }
        }
        Command::Profile {
            input,
            full,
            csv_out,
            kind,
            name,
        } => {
            let (raw, default_name) = load_graph(&input)?;
            let g = core_graph(raw)?;
            let ranking = make_ranking(&input.ranking, g.n())?;
            let p = profile(&g, &ranking, full, threads_from_env())?;
            let row = p.csv_row(&kind, &name.unwrap_or(default_name));
            println!("{}", GraphProfile::csv_header());
            println!("{row}");
            if let Some(path) = csv_out {
                let fresh = !path.exists() || std::fs::metadata(&path)?.len() == 0;
                let mut file = std::fs::OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(&path)?;
                let mut buf = String::new();
                if fresh {
                    buf.push_str(GraphProfile::csv_header());
                    buf.push('\n');
                }
                buf.push_str(&row);
                buf.push('\n');
                file.write_all(buf.as_bytes())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Generate {
            family,
            seed,
            n,
            k,
            p,
            q,
            deletion,
            param,
            cliques,
            out,
        } => {
            let need = |o: Option<usize>, what: &str| {
                o.ok_or_else(|| Error::BadGenParams(format!("{family} needs --{what}")))
            };
            let g = match family.as_str() {
                "path" => generators::gen_path(need(k, "k")?)?,
                "cycle" => generators::gen_cycle(need(k, "k")?)?,
                "star" => generators::gen_star(need(k, "k")?)?,
                "grid" => generators::gen_grid(need(k, "k")?, deletion, seed)?,
                "wgrid" => generators::gen_weighted_directed_grid(need(k, "k")?, seed)?,
                "bowtie" => generators::gen_bowtie(need(p, "p")?, need(q, "q")?)?,
                "powerlaw" => generators::gen_powerlaw(need(n, "n")?, param.unwrap_or(2.5), seed)?,
                "udg" => generators::gen_udg(need(n, "n")?, param.unwrap_or(10.0), seed)?,
                "ktree" => generators::gen_chordal(
                    generators::ChordalKind::KTree,
                    need(n, "n")?,
                    cliques,
                    seed,
                )?,
                "interval" => generators::gen_chordal(
                    generators::ChordalKind::Interval,
                    need(n, "n")?,
                    0,
                    seed,
                )?,
                other => {
                    return Err(Error::BadGenParams(format!("unknown family '{other}'")));
                }
            };
            let comment = format!(
                "generate family={family} seed={seed} n={} arcs={}",
                g.n(),
                g.arc_count()
            );
            match out {
                Some(path) => {
                    let file = std::fs::File::create(&path)?;
                    let mut w = std::io::BufWriter::new(file);
                    write_edge_list(&g, &mut w, Some(&comment))?;
                    w.flush()?;
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut w = std::io::BufWriter::new(stdout.lock());
                    write_edge_list(&g, &mut w, Some(&comment))?;
                    w.flush()?;
                }
            }
            eprintln!(
                "generated family={family} n={} arcs={}",
                g.n(),
                g.arc_count()
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}
