mod report;

use std::io::{Read as _, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use neumaier::construction::Assertions;
use neumaier::generators::{circulant, named_graph, powers_of_two, REGISTRY};
use neumaier::iso::classify;
use neumaier::recipe::Recipe;
use neumaier::regularity::classify_regularity;
use neumaier::reproduce::{
    build_context, expected_table, reproduce, Artifact, Options, RowSelector, RunOutcome,
};
use neumaier::spectral::{char_poly, coefficient_strings, factored_char_poly, spectrum_report};
use neumaier::switching::switch_construction;
use neumaier::{certificate::certify_neumaier, graph6, Error, Graph};

use report::{InputDigest, Outputs, RunReport};

/// Neumaier graphs from edge-regular graphs partitioned into perfect 1-codes.
///
/// Exit status: 0 ok, 1 mismatch or failed certification, 2 usage,
/// 3 internal-consistency failure.
#[derive(Parser)]
#[command(name = "neumaier", version)]
struct Cli {
    /// Also write report.json and graphs.g6 into this directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// What to print on stdout: the JSON report or one graph6 line per output graph.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cap on the number of code sublattices a lattice search examines.
    #[arg(long, global = true)]
    limit: Option<usize>,
    /// Batch mode: skip construction postcondition checks and exit 0 on mismatches.
    #[arg(long, global = true)]
    no_assert: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named graph, or `circulant --n N (--log2-powers | --connection a,b,..)`.
    Generate {
        name: Option<String>,
        /// List the available generators.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        n: Option<usize>,
        /// Connection set ±2^i mod n.
        #[arg(long)]
        log2_powers: bool,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        connection: Vec<i64>,
    },
    /// Run the construction described by a recipe file and certify the result.
    Construct { recipe: PathBuf },
    /// Switch a recipe's construction on (I, i, j) and check the result.
    Switch {
        recipe: PathBuf,
        /// The index set I (must contain 1).
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<usize>,
        #[arg(short, long)]
        i: usize,
        #[arg(short, long)]
        j: usize,
    },
    /// Certify a graph6 graph as Neumaier, optionally with a given regular clique.
    Certify {
        graph6: String,
        #[arg(long, value_delimiter = ',')]
        clique: Vec<usize>,
    },
    /// Exact characteristic polynomial and spectrum of a graph6 graph.
    Spectrum { graph6: String },
    /// Group the graph6 lines of a file (`-` for stdin) into isomorphism classes.
    Classify { file: PathBuf },
    /// Re-run a worked example (4.1 .. 4.5, 5-tables, 5-product, or all) against the expected values.
    Reproduce {
        section: String,
        /// Table rows: n=N, family=F,n=N, or all. Default: the gated rows.
        #[arg(long)]
        row: Option<RowSelector>,
    },
}

/// Why a command did not succeed, mapped to the exit status.
enum Failure {
    Mismatch(String),
    Usage(anyhow::Error),
    Internal(anyhow::Error),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::InternalConsistency(_)) => Failure::Internal(e),
            Some(Error::InvalidArgument(_) | Error::Graph6(_)) => Failure::Usage(e),
            Some(_) => Failure::Other(e),
            None if e.downcast_ref::<std::io::Error>().is_some() => Failure::Usage(e),
            None => Failure::Other(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

struct Session {
    inputs: Vec<InputDigest>,
    outputs: Outputs,
    mismatches: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut session = Session {
        inputs: Vec::new(),
        outputs: Outputs::default(),
        mismatches: Vec::new(),
    };
    let result = run(&cli, &mut session)
        .map_err(Failure::from)
        .and_then(|()| {
            let report = RunReport {
                command: std::iter::once("neumaier".to_string())
                    .chain(std::env::args().skip(1))
                    .collect(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                inputs: std::mem::take(&mut session.inputs),
                outputs: std::mem::take(&mut session.outputs),
                wall_clock_ms: start.elapsed().as_millis(),
            };
            if let Some(dir) = &cli.out {
                report.write_to(dir).map_err(Failure::Usage)?;
            }
            // a closed pipe downstream is not a failure of the run
            let mut stdout = std::io::stdout().lock();
            let _ = match cli.format {
                Format::Json => writeln!(stdout, "{}", report.to_json()),
                Format::Graph6 => report
                    .outputs
                    .graph6_lines()
                    .iter()
                    .try_for_each(|l| writeln!(stdout, "{l}")),
            };
            match session.mismatches.is_empty() || cli.no_assert {
                true => Ok(()),
                false => Err(Failure::Mismatch(session.mismatches.join("; "))),
            }
        });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(m)) => {
            eprintln!("mismatch: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("usage error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal consistency failure: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli, s: &mut Session) -> anyhow::Result<()> {
    match &cli.command {
        Command::Generate {
            name,
            list,
            n,
            log2_powers,
            connection,
        } => generate(s, name.as_deref(), *list, *n, *log2_powers, connection),
        Command::Construct { recipe } => construct(cli, s, recipe),
        Command::Switch { recipe, keep, i, j } => switch(s, recipe, keep, *i, *j),
        Command::Certify { graph6, clique } => {
            let g = graph_arg(s, graph6)?;
            let clique = (!clique.is_empty()).then_some(clique.as_slice());
            let certificate = certify_neumaier(&g, clique)?;
            certificate.verify(&g)?;
            s.outputs.artifacts.push(Artifact {
                label: "certified".into(),
                graph6: graph6::encode(&g),
                partition: None,
                certificate: Some(certificate),
                spectrum: None,
            });
            Ok(())
        }
        Command::Spectrum { graph6 } => {
            let g = graph_arg(s, graph6)?;
            let cp = char_poly(&g);
            s.outputs.measure("char_poly", cp.to_string());
            s.outputs.measure("coefficients", coefficient_strings(&cp));
            s.outputs.measure("factored", factored_char_poly(&g));
            s.outputs.artifacts.push(Artifact {
                label: "spectrum".into(),
                graph6: graph6::encode(&g),
                partition: None,
                certificate: None,
                spectrum: Some(spectrum_report(&g)),
            });
            Ok(())
        }
        Command::Classify { file } => classify_file(s, file),
        Command::Reproduce { section, row } => {
            let opts = Options {
                rows: row.unwrap_or_default(),
                limit: cli.limit,
            };
            reproduce_cmd(s, section, &opts)
        }
    }
}

fn graph_arg(s: &mut Session, text: &str) -> anyhow::Result<Graph> {
    s.inputs.push(InputDigest::of("graph6", text.as_bytes()));
    Ok(graph6::decode(text.trim())?)
}

fn regularity_string(g: &Graph) -> String {
    match classify_regularity(g).edge_regular() {
        Some(p) => format!("edge-regular {p}"),
        None => "not edge-regular".into(),
    }
}

fn generate(
    s: &mut Session,
    name: Option<&str>,
    list: bool,
    n: Option<usize>,
    log2_powers: bool,
    connection: &[i64],
) -> anyhow::Result<()> {
    if list {
        let mut entries: Vec<_> = REGISTRY
            .iter()
            .map(|(name, about)| json!({"name": name, "about": about}))
            .collect();
        entries.push(json!({
            "name": "circulant",
            "about": "Cay(Z_n, C) with --n N and either --log2-powers or --connection a,b,..",
        }));
        s.outputs.measure("generators", entries);
        return Ok(());
    }
    let Some(name) = name else {
        return Err(
            Error::InvalidArgument("generate needs a generator name or --list".into()).into(),
        );
    };
    let (label, graph, partition) = if name == "circulant" {
        let n = n.ok_or_else(|| Error::InvalidArgument("circulant needs --n".into()))?;
        let conn = match (log2_powers, connection.is_empty()) {
            (true, true) => powers_of_two(n as u64),
            (false, false) => connection.to_vec(),
            _ => {
                return Err(Error::InvalidArgument(
                    "circulant needs exactly one of --log2-powers, --connection".into(),
                )
                .into())
            }
        };
        s.outputs.measure("connection", &conn);
        (format!("circulant n={n}"), circulant(n, &conn)?, None)
    } else {
        let g = named_graph(name)?;
        (g.name, g.graph, g.partition)
    };
    s.outputs.measure("regularity", regularity_string(&graph));
    s.outputs.artifacts.push(Artifact {
        label,
        graph6: graph6::encode(&graph),
        partition,
        certificate: None,
        spectrum: None,
    });
    Ok(())
}

fn read_recipe(s: &mut Session, path: &PathBuf) -> anyhow::Result<Recipe> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    s.inputs
        .push(InputDigest::of(path.display().to_string(), text.as_bytes()));
    Ok(Recipe::from_json(&text)?)
}

fn construct(cli: &Cli, s: &mut Session, path: &PathBuf) -> anyhow::Result<()> {
    let recipe = read_recipe(s, path)?;
    let assertions = if cli.no_assert {
        Assertions::Off
    } else {
        Assertions::On
    };
    let built = build_context(recipe.context()?, assertions)?;
    s.outputs
        .measure("params", built.certificate.params.to_string());
    s.outputs.measure("strictness", &built.verdict);
    s.outputs.measure(
        "round_trip",
        neumaier::construction::recovers_inputs(&built.ctx, &built.out)?,
    );
    s.outputs.artifacts.push(Artifact {
        label: "construction".into(),
        graph6: graph6::encode(&built.out.graph),
        partition: None,
        certificate: Some(built.certificate),
        spectrum: None,
    });
    Ok(())
}

fn switch(
    s: &mut Session,
    path: &PathBuf,
    keep: &[usize],
    i: usize,
    j: usize,
) -> anyhow::Result<()> {
    let recipe = read_recipe(s, path)?;
    let ctx = recipe.context()?;
    let sw = switch_construction(&ctx, keep, i, j)?;
    let cospectral = char_poly(&sw.before) == char_poly(&sw.after);
    if !cospectral {
        bail!(Error::InternalConsistency(
            "switched graph is not cospectral with the original".into()
        ));
    }
    s.outputs.measure("keep", keep);
    s.outputs.measure("i", i);
    s.outputs.measure("j", j);
    s.outputs.measure("pi_before", ctx.pi());
    s.outputs.measure("pi_after", &sw.pi);
    s.outputs.measure("cospectral", cospectral);
    s.outputs.measure(
        "recipe_after",
        Recipe::from_context(&ctx.with_pi(sw.pi.clone())?),
    );
    for (label, g) in [("before", &sw.before), ("after", &sw.after)] {
        s.outputs.artifacts.push(Artifact {
            label: label.into(),
            graph6: graph6::encode(g),
            partition: None,
            certificate: None,
            spectrum: None,
        });
    }
    Ok(())
}

fn classify_file(s: &mut Session, path: &PathBuf) -> anyhow::Result<()> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    }
    s.inputs
        .push(InputDigest::of(path.display().to_string(), text.as_bytes()));
    let graphs: Vec<Graph> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(graph6::decode)
        .collect::<Result<_, _>>()?;
    s.outputs.measure("graphs", graphs.len());
    s.outputs.classes = classify(&graphs);
    for c in &s.outputs.classes {
        s.outputs.artifacts.push(Artifact {
            label: format!("class of {}", c.count),
            graph6: c.canonical_graph6.clone(),
            partition: None,
            certificate: None,
            spectrum: None,
        });
    }
    Ok(())
}

fn reproduce_cmd(s: &mut Session, section: &str, opts: &Options) -> anyhow::Result<()> {
    let table = expected_table();
    s.inputs.push(InputDigest::of(
        "expected.json",
        neumaier::reproduce::EXPECTED_JSON.as_bytes(),
    ));
    let names: Vec<String> = match section {
        "all" => table.runs.iter().map(|r| r.id.clone()).collect(),
        _ if table.run(section).is_some() => vec![section.to_string()],
        _ => {
            let known: Vec<_> = table
                .runs
                .iter()
                .map(|r| format!("{} ({})", r.alias, r.id))
                .collect();
            bail!(Error::InvalidArgument(format!(
                "unknown section {section:?}; known: {}",
                known.join(", ")
            )));
        }
    };
    // independent runs in parallel, assembled in table order
    let results: Vec<neumaier::Result<RunOutcome>> = std::thread::scope(|scope| {
        let handles: Vec<_> = names
            .iter()
            .map(|n| scope.spawn(move || reproduce(n, opts)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("reproduce thread panicked"))
            .collect()
    });
    for r in results {
        let outcome = r?;
        for c in &outcome.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            eprintln!(
                "{verdict} {} {}: {} (measured {})",
                outcome.alias, c.key, c.claim, c.measured
            );
            if !c.pass {
                s.mismatches.push(format!(
                    "{} {}: measured {}",
                    outcome.alias, c.key, c.measured
                ));
            }
        }
        s.outputs.runs.push(outcome);
    }
    Ok(())
}
