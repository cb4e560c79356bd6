use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ctrlnet::alteration::{self, Transition};
use ctrlnet::generators::{generate, GenSpec};
use ctrlnet::input_graph::Phase;
use ctrlnet::matching::{exchange, input_nodes, is_maximum, maximum_matching};
use ctrlnet::oracle::{classify_exhaustive, enumerate_maximum_matchings, OracleGuard};
use ctrlnet::{Analysis, ComponentKind, DirectedNetwork, Error};
use ctrlnet_cli::*;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "ctrlnet", version, about = "Input-graph analysis of structural controllability in directed networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed for the matching scan order (or the generator).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output format; the default depends on the command.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Input {
    /// Edge list: one `src dst` pair per line, `#` comments.
    path: PathBuf,
    /// Include member lists even above 10^4 nodes.
    #[arg(long)]
    members: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Er,
    Sf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Smc,
    Ic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Single,
    Full,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Number of nodes.
    #[arg(short = 'n', long)]
    nodes: usize,
    /// Exponent for both degree tails (SF).
    #[arg(long, default_value_t = 3.0)]
    gamma: f64,
    #[arg(long)]
    gamma_in: Option<f64>,
    #[arg(long)]
    gamma_out: Option<f64>,
}

impl GenArgs {
    fn spec(&self, avg_degree: f64, seed: u64) -> GenSpec {
        match self.model {
            ModelArg::Er => GenSpec::er(self.nodes, avg_degree, seed),
            ModelArg::Sf => GenSpec {
                gamma_in: self.gamma_in.unwrap_or(self.gamma),
                gamma_out: self.gamma_out.unwrap_or(self.gamma),
                ..GenSpec::sf(self.nodes, avg_degree, self.gamma, seed)
            },
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic network as an edge list.
    Generate {
        #[command(flatten)]
        gen: GenArgs,
        /// Average degree 2L/N.
        #[arg(short = 'k', long)]
        avg_degree: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Full report: matching, classes and control components (default json).
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
    /// Node classes: critical, possible or redundant (default tsv).
    Classify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
    /// Control-adjacency edges `from to witness phase` (default tsv).
    Inputgraph {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
    /// Control components `id size kind members` (default tsv).
    Components {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
    /// Add edges that change the kind of one control component.
    Alter {
        #[command(flatten)]
        input: Input,
        /// Component id, or largest, largest-ic, largest-mc, largest-umc, largest-smc.
        #[arg(long, default_value = "largest")]
        component: Selector,
        #[arg(long, value_enum)]
        to: Target,
        /// SMC to IC: one link, or a greedy cover of the whole component.
        #[arg(long, value_enum, default_value = "single")]
        mode: Mode,
        /// Write the added edges as TSV.
        #[arg(long)]
        edges: Option<PathBuf>,
        /// Write the augmented network as an edge list.
        #[arg(long)]
        network: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Swap an input node with a neighbour through one of its in-edges.
    Exchange {
        #[command(flatten)]
        input: Input,
        /// Input node to exchange.
        #[arg(long)]
        node: String,
        /// Source of the in-edge (witness, node).
        #[arg(long)]
        witness: String,
        #[command(flatten)]
        common: Common,
    },
    /// Compare node classes with exhaustive enumeration (small networks).
    OracleCheck {
        #[command(flatten)]
        input: Input,
        /// Largest network the enumeration accepts.
        #[arg(long, default_value_t = 16)]
        max_nodes: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Generate and analyse networks over a degree grid; CSV rows.
    Sweep {
        #[command(flatten)]
        gen: GenArgs,
        /// Comma-separated average degrees.
        #[arg(short = 'k', long, value_delimiter = ',', required = true)]
        degrees: Vec<f64>,
        /// Number of replicate seeds.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        /// First replicate seed.
        #[arg(long, default_value_t = 0)]
        seed_start: u64,
        /// Write CSV here instead of stdout.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug)]
enum Selector {
    Id(usize),
    Largest,
    LargestIc,
    LargestMc,
    LargestUmc,
    LargestSmc,
}

impl FromStr for Selector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "largest" => Selector::Largest,
            "largest-ic" => Selector::LargestIc,
            "largest-mc" => Selector::LargestMc,
            "largest-umc" => Selector::LargestUmc,
            "largest-smc" => Selector::LargestSmc,
            _ => Selector::Id(s.parse().map_err(|_| format!("not a component id or selector: {s}"))?),
        })
    }
}

impl Selector {
    fn resolve(self, a: &Analysis) -> Result<usize, Failure> {
        let pick = |pred: &dyn Fn(ComponentKind) -> bool, what: &str| {
            a.largest_where(pred).map(|c| c.id).ok_or_else(|| Failure::infeasible(format!("network has no {what}")))
        };
        match self {
            Selector::Id(id) => a.component(id).map(|c| c.id).map_err(Failure::from),
            Selector::Largest => Ok(a.report.cc_max_id),
            Selector::LargestIc => pick(&|k| k == ComponentKind::Ic, "IC"),
            Selector::LargestMc => pick(&|k| k.is_matched(), "matched component"),
            Selector::LargestUmc => pick(&|k| k == ComponentKind::Umc, "UMC"),
            Selector::LargestSmc => pick(&|k| k == ComponentKind::Smc, "SMC"),
        }
    }
}

/// A message and the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

const USAGE: u8 = 1;
const INPUT: u8 = 2;
const INFEASIBLE: u8 = 3;
const ORACLE_GUARD: u8 = 4;

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    fn infeasible(message: impl Into<String>) -> Self {
        Failure::new(INFEASIBLE, message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::WrongKind { .. }
            | Error::NoInputNode
            | Error::NoFeasibleAddition
            | Error::InsufficientInputNodes { .. } => INFEASIBLE,
            Error::OracleInfeasible(_) => ORACLE_GUARD,
            Error::InvariantViolation(_) | Error::NotMaximum | Error::InvalidMatching(_) => USAGE,
            _ => INPUT,
        };
        Failure::new(code, e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn load(path: &Path) -> Result<DirectedNetwork, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(INPUT, format!("{}: {e}", path.display())))?;
    DirectedNetwork::load_edge_list(&text).map_err(|e| Failure::new(INPUT, format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::new(INPUT, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render<T: Serialize>(record: &T, format: Format) -> String {
    match format {
        Format::Json => to_json(record),
        Format::Tsv => to_tsv(record),
    }
}

fn analyse(net: &DirectedNetwork, seed: u64) -> Result<Analysis, Failure> {
    let start = Instant::now();
    let a = Analysis::run(net, seed)?;
    eprintln!("analysed {} nodes, {} edges in {:.3}s", net.node_count(), net.edge_count(), start.elapsed().as_secs_f64());
    Ok(a)
}

#[derive(Serialize)]
struct EdgeRecord {
    from: String,
    to: String,
    witness: String,
    phase: &'static str,
}

#[derive(Serialize)]
struct ExchangeRecord {
    node: String,
    witness: String,
    replaced: String,
    is_maximum: bool,
    mis_before: Vec<String>,
    mis_after: Vec<String>,
}

#[derive(Serialize)]
struct ClassDiff {
    node: String,
    pipeline: &'static str,
    oracle: &'static str,
}

#[derive(Serialize)]
struct OracleRecord {
    agree: bool,
    nodes: usize,
    matching_size: usize,
    matching_count: u64,
    mis_count: usize,
    diff: Vec<ClassDiff>,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Generate { gen, avg_degree, common } => {
            let spec = gen.spec(avg_degree, common.seed);
            let net = generate(&spec)?;
            write_out(common.output.as_deref(), &(spec.header() + &net.write_edge_list()))
        }
        Command::Analyze { input, common } => {
            let net = load(&input.path)?;
            let a = analyse(&net, common.seed)?;
            let record = AnalysisRecord::new(&net, &a, common.seed, show_members(&net, input.members));
            write_out(common.output.as_deref(), &render(&record, common.format.unwrap_or(Format::Json)))
        }
        Command::Classify { input, common } => {
            let net = load(&input.path)?;
            let a = analyse(&net, common.seed)?;
            let text = match common.format.unwrap_or(Format::Tsv) {
                Format::Json => to_json(&class_map(&net, &a)),
                Format::Tsv => net.nodes().map(|v| format!("{}\t{}\n", net.label(v), a.classes[v.index()].name())).collect(),
            };
            write_out(common.output.as_deref(), &text)
        }
        Command::Inputgraph { input, common } => {
            let net = load(&input.path)?;
            let a = analyse(&net, common.seed)?;
            let edges: Vec<EdgeRecord> = a
                .input_graph
                .edges()
                .map(|(phase, e)| EdgeRecord {
                    from: net.label(e.from).to_owned(),
                    to: net.label(e.to).to_owned(),
                    witness: net.label(e.witness).to_owned(),
                    phase: match phase {
                        Phase::Di => "Di",
                        Phase::Dr => "Dr",
                    },
                })
                .collect();
            let text = match common.format.unwrap_or(Format::Tsv) {
                Format::Json => to_json(&edges),
                Format::Tsv => {
                    let mut s = String::from("# from\tto\twitness\tphase\n");
                    for e in &edges {
                        s.push_str(&format!("{}\t{}\t{}\t{}\n", e.from, e.to, e.witness, e.phase));
                    }
                    s
                }
            };
            write_out(common.output.as_deref(), &text)
        }
        Command::Components { input, common } => {
            let net = load(&input.path)?;
            let a = analyse(&net, common.seed)?;
            let members = show_members(&net, input.members);
            let comps = component_records(&net, &a, members);
            let text = match common.format.unwrap_or(Format::Tsv) {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Report<'a> {
                        summary: AnalysisRecord,
                        components: &'a [ComponentRecord],
                    }
                    to_json(&Report { summary: AnalysisRecord::new(&net, &a, common.seed, false), components: &comps })
                }
                Format::Tsv => {
                    let mut s = String::from("# id\tsize\tkind\tmembers\n");
                    for c in &comps {
                        s.push_str(&format!("{}\t{}\t{}", c.id, c.size, c.kind));
                        if let Some(m) = &c.members {
                            s.push('\t');
                            s.push_str(&m.join(","));
                        }
                        s.push('\n');
                    }
                    s
                }
            };
            write_out(common.output.as_deref(), &text)
        }
        Command::Alter { input, component, to, mode, edges, network, common } => {
            let net = load(&input.path)?;
            let before = analyse(&net, common.seed)?;
            let id = component.resolve(&before)?;
            let kind = before.component(id)?.kind.expect("classified");
            let transition = match (to, kind, mode) {
                (Target::Smc, ComponentKind::Ic, _) => Transition::IcToSmc,
                (Target::Smc, ComponentKind::Umc, _) => Transition::UmcToSmc,
                (Target::Ic, _, Mode::Single) => Transition::SmcToIcSingle,
                (Target::Ic, _, Mode::Full) => Transition::SmcToIcFull,
                (Target::Smc, ComponentKind::Smc, _) => {
                    return Err(Failure::infeasible(format!("component {id} is already an SMC")));
                }
            };
            let done = alteration::alter(&net, &before, id, transition)?;
            let members = show_members(&net, input.members);
            let record = AlterRecord::new(
                &net,
                &done.plan,
                AnalysisRecord::new(&net, &before, common.seed, members),
                AnalysisRecord::new(&done.network, &done.after, common.seed, members),
            );
            if let Some(p) = edges {
                write_out(Some(&p), &additions_tsv(&net, &done.plan))?;
            }
            if let Some(p) = network {
                write_out(Some(&p), &done.network.write_edge_list())?;
            }
            write_out(common.output.as_deref(), &render(&record, common.format.unwrap_or(Format::Json)))
        }
        Command::Exchange { input, node, witness, common } => {
            let net = load(&input.path)?;
            let find = |l: &str| net.node_by_label(l).ok_or_else(|| Failure::new(INPUT, format!("no node labelled {l:?}")));
            let (n, c) = (find(&node)?, find(&witness)?);
            let m = maximum_matching(&net, common.seed);
            let ex = exchange(&net, &m, n, c).map_err(|e| match e {
                Error::NotInputNode(_) => Failure::new(INPUT, format!("{node} is not an input node of the matching")),
                Error::NotUnmatchedInEdge { .. } => {
                    Failure::new(INPUT, format!("({witness}, {node}) is not an unmatched in-edge of {node}"))
                }
                other => other.into(),
            })?;
            let names = |v: Vec<ctrlnet::NodeId>| v.into_iter().map(|x| net.label(x).to_owned()).collect::<Vec<_>>();
            let record = ExchangeRecord {
                node,
                witness,
                replaced: net.label(ex.replaced).to_owned(),
                is_maximum: is_maximum(&net, &ex.matching),
                mis_before: names(input_nodes(&net, &m).nodes),
                mis_after: names(input_nodes(&net, &ex.matching).nodes),
            };
            write_out(common.output.as_deref(), &render(&record, common.format.unwrap_or(Format::Json)))
        }
        Command::OracleCheck { input, max_nodes, common } => {
            let net = load(&input.path)?;
            let guard = OracleGuard { max_nodes, ..OracleGuard::default() };
            let a = analyse(&net, common.seed)?;
            let exhaustive = classify_exhaustive(&net, guard)?;
            let e = enumerate_maximum_matchings(&net, guard)?;
            let diff: Vec<ClassDiff> = net
                .nodes()
                .filter(|v| a.classes[v.index()] != exhaustive[v.index()])
                .map(|v| ClassDiff {
                    node: net.label(v).to_owned(),
                    pipeline: a.classes[v.index()].name(),
                    oracle: exhaustive[v.index()].name(),
                })
                .collect();
            let record = OracleRecord {
                agree: diff.is_empty(),
                nodes: net.node_count(),
                matching_size: e.matching_size,
                matching_count: e.matching_count,
                mis_count: e.mis_list.len(),
                diff,
            };
            write_out(common.output.as_deref(), &render(&record, common.format.unwrap_or(Format::Json)))?;
            if record.agree {
                Ok(())
            } else {
                Err(Failure::new(USAGE, "pipeline and oracle disagree"))
            }
        }
        Command::Sweep { gen, degrees, seeds, seed_start, output } => {
            let seeds: Vec<u64> = (seed_start..seed_start + seeds).collect();
            let start = Instant::now();
            let rows = sweep(gen.spec(0.0, 0), &degrees, &seeds)?;
            eprintln!("{} rows in {:.2}s", rows.len(), start.elapsed().as_secs_f64());
            let mut text = String::from(SWEEP_HEADER);
            text.push('\n');
            for r in &rows {
                text.push_str(&r.csv());
                text.push('\n');
            }
            write_out(output.as_deref(), &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
