//! `nullcert`: encode graph problems as polynomial systems, search for and
//! verify Nullstellensatz certificates, and compare them against brute-force
//! enumeration.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use nullcert::encoders::{self, CoverForm, PolySystem, Problem};
use nullcert::enumcert;
use nullcert::graphs::{self, Graph};
use nullcert::io;
use nullcert::nulla::{self, NullaOptions, NullaOutcome};
use nullcert::oracles::{self, StructureFamily, StructureKind, SubsetClosure};
use nullcert::{Error, OracleLimits};

/// Exit status 2: bad input. 3: a size guard or column cap refused the run.
#[derive(Debug)]
enum Failure {
    Input(anyhow::Error),
    Resource(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::GuardExceeded { .. } | Error::ColumnCap { .. }) => Failure::Resource(e),
            _ => Failure::Input(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

type CliResult<T> = Result<T, Failure>;

#[derive(Parser, Debug)]
#[command(
    name = "nullcert",
    version,
    about = "Nullstellensatz certificates for graph problems"
)]
struct Cli {
    /// Largest vertex count the brute-force enumerators accept.
    #[arg(
        long,
        global = true,
        env = "NULLCERT_MAX_VERTICES",
        default_value_t = 20
    )]
    max_vertices: usize,

    /// Largest edge count the brute-force enumerators accept.
    #[arg(long, global = true, env = "NULLCERT_MAX_EDGES", default_value_t = 20)]
    max_edges: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the polynomial system of a graph problem as JSON.
    Encode {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Output file; standard output when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Search for a certificate by ascending degree.
    Solve {
        /// A system written by `encode`; otherwise the problem flags are used.
        #[arg(long, conflicts_with = "graph")]
        system: Option<PathBuf>,
        #[command(flatten)]
        problem: OptionalProblemArgs,
        /// Highest degree to try; defaults to a bound derived from the
        /// structure family.
        #[arg(long)]
        degree_bound: Option<u32>,
        /// Refuse degrees whose linear system has more columns.
        #[arg(long, default_value_t = 500_000)]
        column_cap: usize,
        /// Certificate output file; standard output when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Print the per-degree matrix dimensions as CSV on standard output.
        #[arg(long)]
        benchmark: bool,
    },
    /// Check a certificate against a system exactly.
    Verify {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// List the structures of a graph by brute force.
    Enumerate {
        #[command(flatten)]
        graph: GraphArgs,
        /// Problem or structure name: indset, matching, kcolor, edge-colorable,
        /// hom, regular, kregular, vertex-cover, edge-cover, cagefree, or any
        /// problem accepted by `encode`.
        #[arg(long)]
        problem: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        target_graph: Option<PathBuf>,
        /// Cover form, which picks the family of a cover problem.
        #[arg(long, value_enum, default_value_t = FormArg::Subset)]
        form: FormArg,
    },
    /// Compare the enumerative certificate with the oracle family and the
    /// degree search.
    Analyze {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value_t = 500_000)]
        column_cap: usize,
    },
}

#[derive(Args, Debug, Clone)]
struct GraphArgs {
    /// Graph file.
    #[arg(long)]
    graph: PathBuf,
    /// Graph file format.
    #[arg(long, value_enum, default_value_t = GraphFormat::Auto)]
    format: GraphFormat,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    /// DIMACS when the file has a `p` line, edge list otherwise.
    Auto,
    Edgelist,
    Dimacs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FormArg {
    Subset,
    Original,
}

impl From<FormArg> for CoverForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Subset => CoverForm::Subset,
            FormArg::Original => CoverForm::Original,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct ProblemArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// indset, kcolor, edge-chromatic, hom, regular, kregular, vertex-cover,
    /// edge-cover, matching-v1 or matching-v2.
    #[arg(long)]
    problem: String,
    /// Structure size (not used by the matching systems).
    #[arg(long)]
    m: Option<usize>,
    /// Colors for kcolor, degree for kregular.
    #[arg(long)]
    k: Option<usize>,
    /// Target graph for hom.
    #[arg(long)]
    target_graph: Option<PathBuf>,
    /// Cover encoding for vertex-cover and edge-cover.
    #[arg(long, value_enum, default_value_t = FormArg::Subset)]
    form: FormArg,
    /// For regular: equate every pair of degrees instead of consecutive ones.
    #[arg(long)]
    all_pairs: bool,
}

#[derive(Args, Debug, Clone)]
struct OptionalProblemArgs {
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = GraphFormat::Auto)]
    format: GraphFormat,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    target_graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormArg::Subset)]
    form: FormArg,
    #[arg(long)]
    all_pairs: bool,
}

impl OptionalProblemArgs {
    fn required(&self) -> anyhow::Result<ProblemArgs> {
        Ok(ProblemArgs {
            graph: GraphArgs {
                graph: self
                    .graph
                    .clone()
                    .ok_or_else(|| anyhow!("either --system or --graph is required"))?,
                format: self.format,
            },
            problem: self
                .problem
                .clone()
                .ok_or_else(|| anyhow!("--problem is required with --graph"))?,
            m: self.m,
            k: self.k,
            target_graph: self.target_graph.clone(),
            form: self.form,
            all_pairs: self.all_pairs,
        })
    }
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path, format: GraphFormat) -> anyhow::Result<Graph> {
    let text = read_text(path)?;
    let dimacs = match format {
        GraphFormat::Dimacs => true,
        GraphFormat::Edgelist => false,
        GraphFormat::Auto => text.lines().any(|l| l.trim_start().starts_with("p ")),
    };
    let g = if dimacs {
        graphs::parse_dimacs(&text)
    } else {
        graphs::parse_edge_list(&text)
    };
    g.with_context(|| format!("parsing {}", path.display()))
}

fn need<T>(v: Option<T>, flag: &str, problem: &str) -> anyhow::Result<T> {
    v.ok_or_else(|| anyhow!("--{flag} is required for {problem}"))
}

fn parse_problem(a: &ProblemArgs) -> anyhow::Result<Problem> {
    let name = a.problem.as_str();
    Ok(match name {
        "indset" | "independent-set" => Problem::IndependentSet,
        "kcolor" => Problem::KColorable {
            k: need(a.k, "k", name)?,
        },
        "edge-chromatic" => Problem::EdgeChromatic,
        "hom" => {
            let path = need(a.target_graph.as_ref(), "target-graph", name)?;
            Problem::Homomorphism {
                target: load_graph(path, GraphFormat::Auto)?,
            }
        }
        "regular" => Problem::RegularSpanning {
            all_pairs: a.all_pairs,
        },
        "kregular" => Problem::KRegular {
            k: need(a.k, "k", name)?,
        },
        "vertex-cover" => Problem::VertexCover {
            form: a.form.into(),
        },
        "edge-cover" => Problem::EdgeCover {
            form: a.form.into(),
        },
        "matching-v1" => Problem::PerfectMatchingV1,
        "matching-v2" => Problem::PerfectMatchingV2,
        other => return Err(anyhow!("unknown problem {other:?}")),
    })
}

fn build_system(a: &ProblemArgs) -> CliResult<PolySystem> {
    let g = load_graph(&a.graph.graph, a.graph.format)?;
    let problem = parse_problem(a)?;
    let m = if problem.takes_m() {
        need(a.m, "m", &a.problem)?
    } else {
        0
    };
    Ok(encoders::encode(&problem, &g, m)?)
}

fn write_out(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn limits(cli: &Cli) -> OracleLimits {
    OracleLimits {
        max_vertices: cli.max_vertices,
        max_edges: cli.max_edges,
    }
}

fn cmd_encode(problem: &ProblemArgs, output: Option<&Path>) -> CliResult<ExitCode> {
    let s = build_system(problem)?;
    write_out(output, &io::write_system(&s))?;
    eprintln!("{} variables, {} polynomials", s.num_vars(), s.len());
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    cli: &Cli,
    system: Option<&Path>,
    problem: &OptionalProblemArgs,
    degree_bound: Option<u32>,
    column_cap: usize,
    output: Option<&Path>,
    benchmark: bool,
) -> CliResult<ExitCode> {
    let s = match system {
        Some(p) => io::read_system(&read_text(p)?)?,
        None => build_system(&problem.required()?)?,
    };
    let bound = degree_bound.unwrap_or_else(|| nulla::default_degree_bound(&s, &limits(cli)));
    let run = nulla::nulla_solve_with(&s, bound, &NullaOptions { column_cap })?;
    if benchmark {
        print!("{}", run.report.to_csv());
    }
    eprintln!("degree   rows   cols   nonzeros   status   time");
    for r in &run.report.records {
        eprintln!(
            "{:>6} {:>6} {:>6} {:>10}   {:<10} {:?}",
            r.degree,
            r.rows,
            r.cols,
            r.nonzeros,
            format!("{:?}", r.status).to_lowercase(),
            r.elapsed
        );
    }
    match &run.outcome {
        NullaOutcome::Certified(c) => {
            let text = io::write_certificate(c, &s, Some(&run.report));
            // with --benchmark and no file, standard output stays CSV only
            if !benchmark || output.is_some() {
                write_out(output, &text)?;
            }
            eprintln!("certificate of degree {}", c.degree);
            Ok(ExitCode::SUCCESS)
        }
        NullaOutcome::NoCertificateUpToBound { bound } => {
            eprintln!("no certificate up to bound {bound}");
            Ok(ExitCode::from(1))
        }
        NullaOutcome::Refused {
            degree,
            columns,
            cap,
        } => Err(Failure::Resource(anyhow!(
            "degree {degree} needs {columns} columns, above the cap of {cap}"
        ))),
    }
}

fn cmd_verify(system: &Path, certificate: &Path) -> CliResult<ExitCode> {
    let s = io::read_system(&read_text(system)?)
        .with_context(|| format!("reading system {}", system.display()))?;
    let file = io::read_certificate(&read_text(certificate)?, &s)
        .with_context(|| format!("reading certificate {}", certificate.display()))?;
    if let Some(h) = &file.system_hash {
        if *h != io::system_hash(&s) {
            eprintln!(
                "warning: certificate was produced for a different system hash; verifying anyway"
            );
        }
    }
    let v = nulla::verify_certificate(&s, &file.certificate)?;
    if v.ok {
        println!(
            "verified: certificate of degree {}",
            file.certificate.degree
        );
        Ok(ExitCode::SUCCESS)
    } else {
        println!(
            "not verified; residual Σ beta_i f_i - 1 = {}",
            v.residual.display(&s.table)
        );
        Ok(ExitCode::from(1))
    }
}

fn structure_kind(
    name: &str,
    k: Option<usize>,
    target: Option<&Path>,
    form: FormArg,
    g: &Graph,
) -> anyhow::Result<StructureKind> {
    Ok(match name {
        "indset" | "independent-set" => StructureKind::IndependentSet,
        "matching" | "matching-v1" | "matching-v2" => StructureKind::Matching,
        "kcolor" => StructureKind::KColorableSubgraph {
            k: need(k, "k", name)?,
        },
        "edge-colorable" => StructureKind::EdgeColorableSubgraph {
            k: need(k, "k", name)?,
        },
        "edge-chromatic" => StructureKind::EdgeColorableSubgraph { k: g.max_degree() },
        "hom" => StructureKind::HomomorphicSubgraph {
            target: load_graph(need(target, "target-graph", name)?, GraphFormat::Auto)?,
        },
        "regular" => StructureKind::RegularSpanningSubgraph,
        "kregular" => StructureKind::KRegularSubgraph {
            k: need(k, "k", name)?,
        },
        "vertex-cover" => match form {
            FormArg::Subset => StructureKind::IndependentSet,
            FormArg::Original => StructureKind::VertexCover,
        },
        "edge-cover" => match form {
            FormArg::Subset => StructureKind::CageFreeSubgraph,
            FormArg::Original => StructureKind::EdgeCover,
        },
        "cagefree" => StructureKind::CageFreeSubgraph,
        other => return Err(anyhow!("unknown structure {other:?}")),
    })
}

fn cmd_enumerate(
    cli: &Cli,
    graph: &GraphArgs,
    problem: &str,
    k: Option<usize>,
    target: Option<&Path>,
    form: FormArg,
) -> CliResult<ExitCode> {
    let g = load_graph(&graph.graph, graph.format)?;
    let kind = structure_kind(problem, k, target, form, &g)?;
    let family = oracles::enumerate(&kind, &g, &limits(cli))?;
    let names: Vec<String> = if kind.over_edges() {
        g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect()
    } else {
        g.vertices().map(|v| v.to_string()).collect()
    };
    for m in family.members_canonical() {
        println!("{}", StructureFamily::format_member(m, &names));
    }
    println!("count: {}", family.len());
    match oracles::max_structure_size(&family) {
        Ok(s) => println!("max size: {s}"),
        Err(_) => println!("max size: none"),
    }
    match oracles::is_subset_closed(&family) {
        SubsetClosure::Closed => println!("subset closed: true"),
        SubsetClosure::MissingEmpty => println!("subset closed: false (the empty set is missing)"),
        SubsetClosure::NotClosed { member, missing } => println!(
            "subset closed: false ({} is present, {} is not)",
            StructureFamily::format_member(member, &names),
            StructureFamily::format_member(missing, &names)
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_analyze(cli: &Cli, problem: &ProblemArgs, column_cap: usize) -> CliResult<ExitCode> {
    let s = build_system(problem)?;
    let a = enumcert::analyze(&s, &limits(cli), &NullaOptions { column_cap })?;
    print!("{a}");
    if a.claims.iter().all(|(_, ok)| *ok) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn run(cli: &Cli) -> CliResult<ExitCode> {
    match &cli.command {
        Command::Encode { problem, output } => cmd_encode(problem, output.as_deref()),
        Command::Solve {
            system,
            problem,
            degree_bound,
            column_cap,
            output,
            benchmark,
        } => cmd_solve(
            cli,
            system.as_deref(),
            problem,
            *degree_bound,
            *column_cap,
            output.as_deref(),
            *benchmark,
        ),
        Command::Verify {
            system,
            certificate,
        } => cmd_verify(system, certificate),
        Command::Enumerate {
            graph,
            problem,
            k,
            target_graph,
            form,
        } => cmd_enumerate(cli, graph, problem, *k, target_graph.as_deref(), *form),
        Command::Analyze {
            problem,
            column_cap,
        } => cmd_analyze(cli, problem, *column_cap),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(e)) => {
            eprintln!("refused: {e:#}");
            ExitCode::from(3)
        }
    }
}
