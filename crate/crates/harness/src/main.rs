use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use koptlab_core::favaron::{
    alpha_k, gamma_k, k_optimal_exhaustive, k_optimal_local, phi_k, phi_k_max, EXHAUSTIVE_VERTEX_CAP,
};
use koptlab_core::kernel::{decomposition_to_saturating, search_good_decomposition, SearchBudget};
use koptlab_core::saturation::{chordal_full_degree, saturate_chordal_auto, ListAssignment};
use koptlab_core::tuza::{alpha_k_prime, nu_exact, tau_exact};
use koptlab_core::Graph;
use koptlab_harness::error::io_error;
use koptlab_harness::property::parse_set;
use koptlab_harness::{
    read_reports, replay, run_property, GraphSource, HarnessError, JsonlSink, Outcome, Property, Result,
    Settings, SourceItem,
};

#[derive(Parser)]
#[command(name = "koptlab", version, about = "k-optimal sets, Tuza joins and saturating colorings on small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one invariant per graph (and per k).
    Compute {
        what: Quantity,
        #[command(flatten)]
        source: SourceArgs,
        #[arg(short = 'k', value_delimiter = ',', default_value = "1")]
        k: Vec<usize>,
        /// Evaluate φ_k at this set instead of maximizing, e.g. `a,c`.
        #[arg(long)]
        set: Option<String>,
        /// Print witnesses as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run a property campaign.
    Verify {
        property: Property,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Counterexample search for one of the open statements.
    Search {
        target: SearchTarget,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Constructive saturating colorings.
    Decompose {
        what: Construction,
        #[command(flatten)]
        source: SourceArgs,
        #[arg(short = 'k', value_delimiter = ',', default_value = "1")]
        k: Vec<usize>,
        /// List assignment, one `v: c1 c2 ...` line per vertex.
        #[arg(long)]
        lists: Option<PathBuf>,
    },
    /// Re-decide every record of a report file and say whether it reproduces.
    Replay { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    Phi,
    Nu,
    Tau,
    AlphaKPrime,
    GammaK,
    AlphaK,
    KOptimal,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchTarget {
    TuzaSpecial,
    Sec1deg,
    Decomp,
}

impl SearchTarget {
    fn property(self) -> Property {
        match self {
            SearchTarget::TuzaSpecial => Property::ConjTuzaSpecial,
            SearchTarget::Sec1deg => Property::ConjSec1deg,
            SearchTarget::Decomp => Property::ConjDecomp,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    ChordalSaturate,
    Galvin,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Edge list, or a graph6 list when the name ends in .g6.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    #[arg(long, value_name = "STRING", num_args = 1..)]
    graph6: Option<Vec<String>>,
    /// Every labeled graph on N ≤ 8 vertices.
    #[arg(long, value_name = "N")]
    exhaustive: Option<usize>,
    #[arg(long, num_args = 4, value_names = ["N", "P", "SEED", "COUNT"])]
    random: Option<Vec<String>>,
    #[arg(long, num_args = 3, value_names = ["N", "SEED", "COUNT"])]
    random_chordal: Option<Vec<String>>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// With --exhaustive: one graph per isomorphism class.
    #[arg(long)]
    iso: bool,
    #[arg(short = 'k', value_delimiter = ',', default_value = "1")]
    k: Vec<usize>,
    /// JSON-lines report; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Violated records, created on the first violation.
    #[arg(long, default_value = "counterexamples.jsonl")]
    counterexamples: PathBuf,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Run instances above the per-property ceilings.
    #[arg(long)]
    cap_override: bool,
    /// Random list assignments per instance.
    #[arg(long, default_value_t = 10)]
    list_samples: usize,
}

fn parse_num<T: std::str::FromStr>(what: &str, text: &str) -> Result<T> {
    text.parse()
        .map_err(|_| HarnessError::Usage(format!("{what}: cannot parse `{text}`")))
}

impl SourceArgs {
    fn source(&self, iso: bool) -> Result<GraphSource> {
        if let Some(path) = &self.graph {
            return Ok(GraphSource::from_file(path.clone()));
        }
        if let Some(lines) = &self.graph6 {
            return Ok(GraphSource::Graph6(lines.clone()));
        }
        if let Some(n) = self.exhaustive {
            return Ok(GraphSource::Exhaustive { n, iso });
        }
        if let Some(a) = &self.random {
            return Ok(GraphSource::Random {
                n: parse_num("N", &a[0])?,
                p: parse_num("P", &a[1])?,
                seed: parse_num("SEED", &a[2])?,
                count: parse_num("COUNT", &a[3])?,
            });
        }
        if let Some(a) = &self.random_chordal {
            return Ok(GraphSource::RandomChordal {
                n: parse_num("N", &a[0])?,
                seed: parse_num("SEED", &a[1])?,
                count: parse_num("COUNT", &a[2])?,
            });
        }
        Err(HarnessError::Usage("no graph source given".into()))
    }

    /// All graphs, failing on the first unreadable one.
    fn graphs(&self) -> Result<Vec<(String, Graph)>> {
        self.source(false)?
            .items()?
            .map(|SourceItem { label, graph }| {
                graph
                    .map(|g| (label.clone(), g))
                    .map_err(|e| HarnessError::Usage(format!("{label}: {e}")))
            })
            .collect()
    }
}

/// Opens the counterexample file on first use.
struct LazyFile {
    path: PathBuf,
    file: Option<File>,
}

impl Write for LazyFile {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        if self.file.is_none() {
            self.file = Some(File::create(&self.path)?);
        }
        self.file.as_mut().expect("just opened").write(buf)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.file.as_mut().map_or(Ok(()), Write::flush)
    }
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(io_error(path.display()))
}

fn campaign(property: Property, run: &RunArgs) -> Result<i32> {
    let items = run.source.source(run.iso)?.items()?;
    let settings = Settings {
        cap_override: run.cap_override,
        list_samples: run.list_samples,
        ..Settings::from_env()
    };
    let reports: Box<dyn Write> = match &run.out {
        Some(path) => Box::new(BufWriter::new(create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = JsonlSink {
        reports,
        counterexamples: LazyFile { path: run.counterexamples.clone(), file: None },
    };
    let summary = run_property(property, items, &run.k, run.jobs, &settings, &mut sink)?;
    sink.reports.flush().map_err(io_error("report output"))?;
    eprintln!(
        "{}: {} holds, {} violated, {} skipped",
        property.id(),
        summary.holds,
        summary.violated,
        summary.skipped
    );
    if summary.violated > 0 {
        eprintln!("counterexamples written to {}", run.counterexamples.display());
    }
    Ok(summary.exit_code())
}

fn compute(what: Quantity, source: &SourceArgs, ks: &[usize], set: Option<&str>, as_json: bool) -> Result<()> {
    let graphs = source.graphs()?;
    let per_k = !matches!(what, Quantity::Nu | Quantity::Tau);
    let ks: &[usize] = if per_k { ks } else { &[0] };
    let bare = graphs.len() == 1 && ks.len() == 1;
    for (label, g) in &graphs {
        for &k in ks {
            let (value, witness) = match what {
                Quantity::Phi => match set {
                    Some(text) => {
                        let d = parse_set(text, g.n())
                            .ok_or_else(|| HarnessError::Usage(format!("bad vertex set `{text}`")))?;
                        (phi_k(g, k, d).to_string(), json!({ "set": d }))
                    }
                    None => (phi_k_max(g, k)?.to_string(), json!(null)),
                },
                Quantity::Nu => {
                    let p = nu_exact(g)?;
                    (p.len().to_string(), json!(p))
                }
                Quantity::Tau => {
                    let c = tau_exact(g)?;
                    (c.len().to_string(), json!(c))
                }
                Quantity::AlphaKPrime => {
                    let m = alpha_k_prime(g, k)?;
                    (m.len().to_string(), json!(m))
                }
                Quantity::GammaK => (gamma_k(g, k)?.to_string(), json!(null)),
                Quantity::AlphaK => (alpha_k(g, k)?.to_string(), json!(null)),
                Quantity::KOptimal => {
                    let r = if g.n() <= EXHAUSTIVE_VERTEX_CAP {
                        k_optimal_exhaustive(g, k)?
                    } else {
                        k_optimal_local(g, k)?
                    };
                    (json!(r).to_string(), json!(r))
                }
            };
            if as_json {
                let k = per_k.then_some(k);
                println!("{}", json!({ "graph6": label, "k": k, "value": value, "witness": witness }));
            } else if bare {
                println!("{value}");
            } else if per_k {
                println!("{label}\t{k}\t{value}");
            } else {
                println!("{label}\t{value}");
            }
        }
    }
    Ok(())
}

fn read_lists(path: &Path, n: usize) -> Result<ListAssignment> {
    let text = std::fs::read_to_string(path).map_err(io_error(path.display()))?;
    Ok(ListAssignment::parse(&text, n)?)
}

fn decompose(what: Construction, source: &SourceArgs, ks: &[usize], lists: Option<&Path>) -> Result<()> {
    for (label, g) in source.graphs()? {
        let l = lists.map(|p| read_lists(p, g.n())).transpose()?;
        match what {
            Construction::ChordalSaturate => match &l {
                Some(l) => {
                    let psi = saturate_chordal_auto(&g, l)?;
                    println!("{}", json!({ "graph6": label, "lists": l, "coloring": psi }));
                }
                None => {
                    for &k in ks {
                        let d = k_optimal_exhaustive(&g, k)?.d;
                        let m = chordal_full_degree(&g, k, d)?;
                        println!("{}", json!({ "graph6": label, "k": k, "d": d, "subgraph": m }));
                    }
                }
            },
            Construction::Galvin => {
                let found = search_good_decomposition(&g, &SearchBudget::default())?;
                let Some(cert) = found.certificate() else {
                    return Err(HarnessError::Usage(format!("{label}: no good decomposition found")));
                };
                // default lists: {1..d⁺(v)}
                let l = match l {
                    Some(l) => l,
                    None => ListAssignment::new(
                        (0..g.n()).map(|v| (1..=cert.base().out_degree(v)).collect()).collect(),
                    )?,
                };
                let xi = decomposition_to_saturating(&g, cert, &l)?;
                println!(
                    "{}",
                    json!({ "graph6": label, "certificate": cert, "lists": l, "coloring": xi })
                );
            }
        }
    }
    Ok(())
}

fn replay_file(path: &Path) -> Result<i32> {
    let file = File::open(path).map_err(io_error(path.display()))?;
    let settings = Settings::from_env();
    let mut reproduced = 0;
    let mut total = 0;
    for r in read_reports(BufReader::new(file))? {
        let fresh = replay(&r, &settings)?;
        let same = fresh.outcome == r.outcome;
        total += 1;
        reproduced += usize::from(same);
        println!(
            "{}\t{}\t{}\t{:?} -> {:?}",
            r.property,
            r.graph6,
            r.k,
            r.outcome,
            fresh.outcome
        );
        if r.outcome == Outcome::Violated && same {
            eprintln!("violation reproduced: {} on {} (k = {})", r.property, r.graph6, r.k);
        }
    }
    eprintln!("{reproduced} of {total} records reproduced");
    Ok(i32::from(reproduced < total))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute { what, source, k, set, json } => compute(*what, source, k, set.as_deref(), *json).map(|_| 0),
        Command::Verify { property, run } => campaign(*property, run),
        Command::Search { target, run } => campaign(target.property(), run),
        Command::Decompose { what, source, k, lists } => decompose(*what, source, k, lists.as_deref()).map(|_| 0),
        Command::Replay { file } => replay_file(file),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
