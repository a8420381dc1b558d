use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use workbench::acceptance::{run_all, run_criterion, AcceptanceConfig, CRITERIA};
use workbench::perm::parse_group_spec;
use workbench::quillen::{build_quillen_diagram, limit_dims, DiagramCaps, DiagramMode};
use workbench::series::{series_a4x, series_quadratic, sylow_alternating_series, sylow_symmetric_series, PowerSeries};
use workbench::unstable::{
    cohomology_elementary_abelian, gysin_dims, polynomial_p, sylow_symmetric_module, trivial_module, UnstableModule,
};
use workbench::Error;

const DEFAULT_MAX_DEGREE: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "workbench", version, about = "Mod-2 cohomology of Sylow 2-subgroups: groups, Quillen limits, modules, series")]
struct Cli {
    /// Highest degree computed [default: 12]
    #[arg(long, global = true, env = "WORKBENCH_MAX_DEGREE")]
    max_degree: Option<usize>,

    /// Largest group order that may be built
    #[arg(long, global = true, env = "WORKBENCH_MAX_ORDER", default_value_t = 32768)]
    max_order: u128,

    /// Largest elementary abelian rank allowed in a Quillen diagram
    #[arg(long, global = true, env = "WORKBENCH_MAX_RANK", default_value_t = 6)]
    max_rank: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Ascii,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Skeleton,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Dims,
    Dump,
    Checks,
    Gysin,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, degree and generators of a group
    Group {
        /// sym:N, alt:N, sylow-sym:N, sylow-alt:N, dihedral:2N, h4-sylow, gens:PATH, cyclic:N, elem:K, q8, trivial
        spec: String,
    },
    /// Dimensions of the limit of H*(E) over the Quillen category
    Limit {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = Mode::Skeleton)]
        mode: Mode,
    },
    /// Poincaré series
    Series {
        #[command(subcommand)]
        which: SeriesCommand,
    },
    /// Module models: sylow-sym:N, ea:D, poly, trivial
    Module {
        spec: String,
        #[arg(long, value_enum, default_value_t = Emit::Dims)]
        emit: Emit,
    },
    /// Run the acceptance suite: `all` or a criterion number
    Verify {
        #[arg(default_value = "all")]
        which: String,
    },
}

#[derive(Subcommand, Debug)]
enum SeriesCommand {
    /// H*S_n for the Sylow subgroup of the symmetric group
    Sym { n: usize, truncation: usize },
    /// H*A_n for the Sylow subgroup of the alternating group
    Alt { n: usize, truncation: usize },
    /// H*(A4 ⋉ X^4) from the series of X (sym:N, poly:D or coefficients "1,2,3")
    A4x { source: String, truncation: usize },
    /// The quadratic construction on the series of X
    Quad { source: String, truncation: usize },
}

enum Failure {
    Verification(String),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Library(e)
    }
}

type Outcome = Result<String, Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceCap { .. } => 3,
        Error::Invariant(_) | Error::Arithmetic(_) => 1,
        Error::Parse(_) | Error::Unsupported(_) | Error::DimensionMismatch(_) | Error::Io(_) => 2,
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output") + "\n"
}

fn caps(cli: &Cli) -> DiagramCaps {
    DiagramCaps {
        max_rank: cli.max_rank,
        ..DiagramCaps::default()
    }
}

fn cmd_group(cli: &Cli, spec: &str) -> Outcome {
    let g = parse_group_spec(spec, cli.max_order)?;
    let gens: Vec<Vec<usize>> = g.generators().iter().map(|p| p.images_one_based()).collect();
    Ok(match cli.format {
        Format::Json => json(&serde_json::json!({
            "group": g.label(),
            "order": u64::try_from(g.order()).map_or_else(|_| serde_json::json!(g.order().to_string()), |o| serde_json::json!(o)),
            "degree": g.degree(),
            "generators": gens,
        })),
        Format::Csv => format!("group,order,degree,generators\n{},{},{},{}\n", g.label(), g.order(), g.degree(), gens.len()),
        Format::Ascii => {
            let mut out = format!("{}: order {}, degree {}, {} generators\n", g.label(), g.order(), g.degree(), gens.len());
            for p in g.generators() {
                out.push_str(&format!("  {p}\n"));
            }
            out
        }
    })
}

fn cmd_limit(cli: &Cli, spec: &str, mode: Mode) -> Outcome {
    let g = parse_group_spec(spec, cli.max_order)?;
    let mode = match mode {
        Mode::Skeleton => DiagramMode::Skeleton,
        Mode::Full => DiagramMode::Full,
    };
    let diagram = build_quillen_diagram(&g, mode, caps(cli))?;
    let table = limit_dims(&diagram, cli.max_degree.unwrap_or(DEFAULT_MAX_DEGREE));
    Ok(match cli.format {
        Format::Json => json(&table.to_json()),
        Format::Csv => table.to_csv(),
        Format::Ascii => table.to_ascii(),
    })
}

fn source_series(source: &str, truncation: usize) -> Result<PowerSeries, Error> {
    match source.split_once(':') {
        Some(("sym", n)) => {
            let n = n.parse().map_err(|_| Error::Parse(format!("bad source {source:?}")))?;
            sylow_symmetric_series(n, truncation)
        }
        Some(("poly", d)) => {
            let d = d.parse().map_err(|_| Error::Parse(format!("bad source {source:?}")))?;
            Ok(PowerSeries::inverse_one_minus_t_pow(d, truncation))
        }
        Some(_) => Err(Error::Parse(format!("unknown series source {source:?}"))),
        None => PowerSeries::parse(source, truncation),
    }
}

fn emit_series(cli: &Cli, label: String, s: &PowerSeries) -> String {
    match cli.format {
        Format::Json => json(&s.to_json(label)),
        Format::Csv => {
            let mut out = String::from("degree,coefficient\n");
            for (d, c) in s.coefficients().iter().enumerate() {
                out.push_str(&format!("{d},{c}\n"));
            }
            out
        }
        Format::Ascii => format!("{label}: {s}\n"),
    }
}

fn cmd_series(cli: &Cli, which: &SeriesCommand) -> Outcome {
    let (label, s) = match which {
        SeriesCommand::Sym { n, truncation } => (format!("sym:{n}"), sylow_symmetric_series(*n, *truncation)?),
        SeriesCommand::Alt { n, truncation } => (format!("alt:{n}"), sylow_alternating_series(*n, *truncation)?),
        SeriesCommand::A4x { source, truncation } => {
            (format!("a4x:{source}"), series_a4x(&source_series(source, *truncation)?)?)
        }
        SeriesCommand::Quad { source, truncation } => {
            (format!("quad:{source}"), series_quadratic(&source_series(source, *truncation)?)?)
        }
    };
    Ok(emit_series(cli, label, &s))
}

fn module_from_spec(spec: &str, max_degree: usize) -> Result<UnstableModule, Error> {
    let number = |a: &str| a.parse::<usize>().map_err(|_| Error::Parse(format!("bad module spec {spec:?}")));
    match spec.split_once(':').unwrap_or((spec, "")) {
        ("sylow-sym", n) => sylow_symmetric_module(number(n)?, max_degree),
        ("ea", d) => cohomology_elementary_abelian(number(d)?, max_degree),
        ("poly", "") => polynomial_p(max_degree),
        ("trivial", "") => trivial_module(max_degree),
        _ => Err(Error::Parse(format!("unknown module spec {spec:?}"))),
    }
}

fn emit_dims(cli: &Cli, spec: &str, what: &str, dims: &[usize]) -> String {
    match cli.format {
        Format::Json => json(&serde_json::json!({ "module": spec, what: dims })),
        Format::Csv => {
            let mut out = format!("degree,{what}\n");
            for (d, n) in dims.iter().enumerate() {
                out.push_str(&format!("{d},{n}\n"));
            }
            out
        }
        Format::Ascii => {
            let parts: Vec<String> = dims.iter().map(ToString::to_string).collect();
            format!("{spec} {what}: {}\n", parts.join(","))
        }
    }
}

fn cmd_module(cli: &Cli, spec: &str, emit: Emit) -> Outcome {
    let max_degree = cli.max_degree.unwrap_or(DEFAULT_MAX_DEGREE);
    let m = module_from_spec(spec, max_degree)?;
    match emit {
        Emit::Dims => Ok(emit_dims(cli, spec, "dims", m.dims())),
        Emit::Gysin => Ok(emit_dims(cli, spec, "gysin_dims", &gysin_dims(&m)?)),
        Emit::Dump => Ok(json(&m.to_dump())),
        Emit::Checks => {
            let through = max_degree / 2;
            let reduced = m.check_reduced(through)?;
            let checks = [
                ("instability", m.check_instability()),
                ("adem", m.check_adem()),
                ("u_compatibility", m.check_u_compatibility()),
            ];
            let all_pass = reduced && checks.iter().all(|(_, v)| v.is_empty());
            let out = match cli.format {
                Format::Json => {
                    let mut obj = serde_json::Map::new();
                    obj.insert("module".into(), spec.into());
                    obj.insert("max_degree".into(), max_degree.into());
                    for (name, v) in &checks {
                        obj.insert((*name).into(), serde_json::json!({ "pass": v.is_empty(), "violations": v }));
                    }
                    obj.insert("reduced".into(), serde_json::json!({ "pass": reduced, "through": through }));
                    json(&obj)
                }
                Format::Csv | Format::Ascii => {
                    let mut out = String::new();
                    for (name, v) in &checks {
                        out.push_str(&format!("{} {name} ({} violations)\n", pass_word(v.is_empty()), v.len()));
                    }
                    out.push_str(&format!("{} reduced through degree {through}\n", pass_word(reduced)));
                    out
                }
            };
            if all_pass {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
    }
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_verify(cli: &Cli, which: &str) -> Outcome {
    let config = AcceptanceConfig {
        max_degree: cli.max_degree,
    };
    let results = if which == "all" {
        run_all(config)
    } else {
        let id: u8 = which
            .parse()
            .map_err(|_| Error::Parse(format!("criterion must be `all` or 1..={}", CRITERIA.len())))?;
        vec![run_criterion(id, config).ok_or_else(|| Error::Parse(format!("no criterion {id}")))?]
    };
    let mut out = String::new();
    for r in &results {
        out.push_str(&r.line());
        out.push('\n');
    }
    if results.iter().all(|r| r.passed) {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Group { spec } => cmd_group(&cli, spec),
        Command::Limit { group, mode } => cmd_limit(&cli, group, *mode),
        Command::Series { which } => cmd_series(&cli, which),
        Command::Module { spec, emit } => cmd_module(&cli, spec, *emit),
        Command::Verify { which } => cmd_verify(&cli, which),
    };
    match outcome {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
