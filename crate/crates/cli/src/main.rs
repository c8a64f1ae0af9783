//! Command-line driver for universal edge labelings.
//!
//! JSON on stdout by default (`--pretty` indents it); catalog reports are
//! CSV. Exit codes: 0 for success and positive verdicts, 1 for negative
//! verdicts where one was demanded (a labeling that fails verification, a
//! construction that proves infeasibility), 2 for usage and input-format
//! errors, 3 when a budget or cap ran out before an answer was reached.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ulg::coloring::{exact_chromatic_index, ChromaticIndex, DEFAULT_COLORING_BUDGET};
use ulg::construct::{
    admissible_vertex_sets, cubic_labeling, lower_bound, min_universal_number,
    power_of_two_labeling, quartic_labeling, star_labeling, tree_labeling, RegularLabeling,
    SearchResult, SetFilters, DEFAULT_SEARCH_BUDGET,
};
use ulg::game::{
    game_number, play, solve_game, transcript_json, FpStrategy, GameNumberResult, SolveResult,
    SpStrategy, DEFAULT_GAME_BUDGET,
};
use ulg::graph::{
    catalog_small, generate, parse_graph, parse_labeling, render_labeling, EdgeLabeling, Graph,
};
use ulg::random::{aeul_labeling, estimate_conflict_probability, kn_random_labeling};
use ulg::verify::{
    verify_brute_capped, verify_local_capped, VerifyError, DEFAULT_BRUTE_EDGE_CAP,
    DEFAULT_LOCAL_DEGREE_CAP,
};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNRESOLVED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ulg",
    version,
    about = "Universal edge labelings: verify, construct, optimize, and play"
)]
struct Cli {
    /// Indent JSON output for reading
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

/// Exactly one way to obtain the input graph.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Edge-list file: optional "n <count>" header, one "u v" pair per line
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Generator descriptor: path:N, cycle:N, star:N, complete:N,
    /// complete_bipartite:A,B, petersen, random_tree:N:MAXDEG:SEED,
    /// gnp:N:P:SEED
    #[arg(long)]
    generate: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Local,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructionArg {
    Power2,
    Star,
    Tree,
    Cubic,
    Quartic,
}

#[derive(Clone, Copy, ValueEnum)]
enum FpArg {
    #[value(name = "two_label")]
    TwoLabel,
    Greedy,
    Tree,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpArg {
    #[value(name = "odd_cycle")]
    OddCycle,
    #[value(name = "high_degree")]
    HighDegree,
    Exhaustive,
    Random,
}

impl From<FpArg> for FpStrategy {
    fn from(a: FpArg) -> Self {
        match a {
            FpArg::TwoLabel => FpStrategy::TwoLabel,
            FpArg::Greedy => FpStrategy::Greedy,
            FpArg::Tree => FpStrategy::Tree,
        }
    }
}

impl From<SpArg> for SpStrategy {
    fn from(a: SpArg) -> Self {
        match a {
            SpArg::OddCycle => SpStrategy::OddCycle,
            SpArg::HighDegree => SpStrategy::HighDegree,
            SpArg::Exhaustive => SpStrategy::Exhaustive,
            SpArg::Random => SpStrategy::Random,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a labeling is universal
    Verify {
        #[command(flatten)]
        source: GraphSource,
        /// Labeling file: one "u v label" line per edge
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, value_enum, default_value = "local")]
        method: MethodArg,
        /// Orientation-enumeration cap for --method brute
        #[arg(long, default_value_t = DEFAULT_BRUTE_EDGE_CAP)]
        max_edges_brute: usize,
        /// Degree cap for --method local
        #[arg(long, default_value_t = DEFAULT_LOCAL_DEGREE_CAP)]
        max_degree_local: usize,
    },
    /// Produce a labeling by a named construction
    Label {
        #[arg(long, value_enum)]
        construction: ConstructionArg,
        #[command(flatten)]
        source: GraphSource,
        /// Root vertex (tree construction only)
        #[arg(long)]
        root: Option<usize>,
        /// Write the labeling to this file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Node budget for the exact edge-coloring step (cubic/quartic)
        #[arg(long, default_value_t = DEFAULT_COLORING_BUDGET)]
        budget: u64,
    },
    /// Exact minimum palette size admitting a universal labeling
    Number {
        #[command(flatten)]
        source: GraphSource,
        /// Largest palette size to try (default: the proven upper bound)
        #[arg(long)]
        kmax: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Degree-based lower and upper bounds
    Bounds {
        #[command(flatten)]
        source: GraphSource,
    },
    /// Admissible per-vertex label sets: sum-free d-subsets of 1..=k
    Sets {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        d: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// Keep only sets containing this element
        #[arg(long)]
        require: Option<u64>,
        /// Drop sets with distinct a,b,c besides M satisfying a+b = c+M
        #[arg(long)]
        pairmax: Option<u64>,
    },
    /// The two-player labeling game
    Game {
        #[command(subcommand)]
        action: GameAction,
    },
    /// Randomized two-layer labelings and conflict estimation
    Aeul {
        #[command(subcommand)]
        action: AeulAction,
    },
    /// Uniform random labeling of a complete graph, with conflict estimate
    Kn {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n: u64,
        /// Labels drawn uniformly from 1..=f
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        f: u64,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Summary CSV over the built-in small-graph catalog
    Catalog {
        /// Also write the CSV to this file
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_GAME_BUDGET)]
        game_budget: u64,
    },
}

#[derive(Subcommand)]
enum GameAction {
    /// Winner under optimal play with palette 1..=k
    Solve {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = DEFAULT_GAME_BUDGET)]
        budget: u64,
    },
    /// Run one game between named strategies
    Play {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value = "greedy")]
        fp: FpArg,
        #[arg(long, value_enum, default_value = "exhaustive")]
        sp: SpArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Smallest palette size the first player wins with (tries 1..=k)
    Number {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = DEFAULT_GAME_BUDGET)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum AeulAction {
    /// Draw the two-layer labeling for this graph
    Sample {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the labeling to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a labeling, then Monte-Carlo its conflict probability
    Estimate {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn unresolved(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_UNRESOLVED,
        message: message.into(),
    }
}

enum Payload {
    Json(Value),
    Text(String),
}

fn load_graph(source: &GraphSource) -> Result<Graph, Failure> {
    if let Some(path) = &source.graph {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        parse_graph(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
    } else {
        let descriptor = source.generate.as_deref().expect("group enforces one");
        generate(descriptor).map_err(|e| usage(e.to_string()))
    }
}

fn labels_json(g: &Graph, l: &EdgeLabeling) -> Value {
    Value::Array(
        g.edges()
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| json!([u, v, l.get(e).expect("labeling is total")]))
            .collect(),
    )
}

fn write_labeling(path: &PathBuf, g: &Graph, l: &EdgeLabeling) -> Result<(), Failure> {
    fs::write(path, render_labeling(g, l))
        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

/// Verdict of the produced labeling under whichever verifier fits the
/// graph within the default caps.
fn verify_fitting(g: &Graph, l: &EdgeLabeling) -> Result<bool, Failure> {
    if g.max_degree() <= DEFAULT_LOCAL_DEGREE_CAP {
        return Ok(verify_local_capped(g, l, DEFAULT_LOCAL_DEGREE_CAP)
            .expect("caps checked")
            .universal);
    }
    if g.edge_count() <= DEFAULT_BRUTE_EDGE_CAP {
        return Ok(verify_brute_capped(g, l, DEFAULT_BRUTE_EDGE_CAP)
            .expect("caps checked")
            .universal);
    }
    Err(unresolved(
        "graph exceeds both verifier caps; cannot confirm the labeling",
    ))
}

fn is_star(g: &Graph) -> bool {
    g.edge_count() >= 1
        && g.vertex_count() == g.edge_count() + 1
        && g.is_connected()
        && g.max_degree() == g.edge_count()
}

fn run(command: &Command) -> Result<(Payload, u8), Failure> {
    match command {
        Command::Verify {
            source,
            labels,
            method,
            max_edges_brute,
            max_degree_local,
        } => {
            let g = load_graph(source)?;
            let text = fs::read_to_string(labels)
                .map_err(|e| usage(format!("cannot read {}: {e}", labels.display())))?;
            let l = parse_labeling(&g, &text)
                .map_err(|e| usage(format!("{}: {e}", labels.display())))?;
            let report = match method {
                MethodArg::Brute => verify_brute_capped(&g, &l, *max_edges_brute),
                MethodArg::Local => verify_local_capped(&g, &l, *max_degree_local),
            }
            .map_err(|e| match e {
                VerifyError::PartialLabeling { .. } => usage(e.to_string()),
                VerifyError::TooManyEdges { .. } | VerifyError::DegreeTooHigh { .. } => {
                    unresolved(e.to_string())
                }
            })?;
            let code = if report.universal { 0 } else { EXIT_NEGATIVE };
            Ok((Payload::Json(report.to_json(&g)), code))
        }

        Command::Label {
            construction,
            source,
            root,
            out,
            budget,
        } => {
            let g = load_graph(source)?;
            if root.is_some() && !matches!(construction, ConstructionArg::Tree) {
                return Err(usage("--root applies only to --construction tree"));
            }
            let (name, labeling, exact_number) = match construction {
                ConstructionArg::Power2 => ("power2", power_of_two_labeling(&g), None),
                ConstructionArg::Star => {
                    if !is_star(&g) {
                        return Err(usage("--construction star requires a star graph"));
                    }
                    let m = g.edge_count() as u64;
                    let exact = if m == 1 { 1 } else { 2 * m - 2 };
                    (
                        "star",
                        star_labeling(g.edge_count()).map_err(|e| usage(e.to_string()))?,
                        Some(exact),
                    )
                }
                ConstructionArg::Tree => {
                    let (labeling, _plan) =
                        tree_labeling(&g, *root).map_err(|e| usage(e.to_string()))?;
                    ("tree", labeling, None)
                }
                ConstructionArg::Cubic | ConstructionArg::Quartic => {
                    let (name, result) = match construction {
                        ConstructionArg::Cubic => ("cubic", cubic_labeling(&g, *budget)),
                        _ => ("quartic", quartic_labeling(&g, *budget)),
                    };
                    match result.map_err(|e| usage(e.to_string()))? {
                        RegularLabeling::Labeled {
                            labeling,
                            exact_number,
                        } => (name, labeling, Some(exact_number)),
                        RegularLabeling::Class2 { exceeds } => {
                            // infeasibility is an answer, flagged by exit 1
                            let payload = json!({
                                "construction": name,
                                "class1": false,
                                "exceeds": exceeds,
                            });
                            return Ok((Payload::Json(payload), EXIT_NEGATIVE));
                        }
                        RegularLabeling::Unknown => {
                            return Err(unresolved(
                                "edge-coloring budget exhausted before classification",
                            ))
                        }
                    }
                }
            };
            let verified = verify_fitting(&g, &labeling)?;
            if let Some(path) = out {
                write_labeling(path, &g, &labeling)?;
            }
            let payload = json!({
                "construction": name,
                "palette_max": labeling.max_label(),
                "verified": verified,
                "exact_number": exact_number,
                "labels": labels_json(&g, &labeling),
            });
            Ok((Payload::Json(payload), 0))
        }

        Command::Number {
            source,
            kmax,
            budget,
        } => {
            let g = load_graph(source)?;
            let bounds = lower_bound(&g).map_err(|e| usage(e.to_string()))?;
            let k_max = kmax.unwrap_or(bounds.upper);
            let result =
                min_universal_number(&g, k_max, *budget).map_err(|e| usage(e.to_string()))?;
            match result {
                SearchResult::Exact { number, witness } => {
                    let payload = json!({
                        "exact_number": number,
                        "lower": bounds.lower,
                        "upper": bounds.upper,
                        "labels": labels_json(&g, &witness),
                    });
                    Ok((Payload::Json(payload), 0))
                }
                SearchResult::Unknown { lower, upper } => {
                    let payload = json!({
                        "exact_number": Value::Null,
                        "lower": lower,
                        "upper": upper,
                    });
                    Ok((Payload::Json(payload), EXIT_UNRESOLVED))
                }
            }
        }

        Command::Bounds { source } => {
            let g = load_graph(source)?;
            let bounds = lower_bound(&g).map_err(|e| usage(e.to_string()))?;
            let payload = json!({
                "lower": bounds.lower,
                "upper": bounds.upper,
                "reasons": bounds.reasons,
            });
            Ok((Payload::Json(payload), 0))
        }

        Command::Sets {
            d,
            k,
            require,
            pairmax,
        } => {
            let filters = SetFilters {
                require_element: *require,
                pair_filter_max: *pairmax,
            };
            let sets = admissible_vertex_sets(*d as usize, *k, &filters);
            let payload = json!({
                "d": d,
                "k": k,
                "count": sets.len(),
                "sets": sets,
            });
            Ok((Payload::Json(payload), 0))
        }

        Command::Game { action } => run_game(action),
        Command::Aeul { action } => run_aeul(action),

        Command::Kn {
            n,
            f,
            trials,
            seed,
        } => {
            let (g, l) = kn_random_labeling(*n as usize, *f, *seed);
            let est = estimate_conflict_probability(&g, &l, *trials, *seed)
                .expect("labeling is total");
            let payload = json!({
                "n": n,
                "f": f,
                "bound": 5.0 * (*n as f64) * (*n as f64) / (*f as f64),
                "result": serde_json::to_value(&est).expect("estimate serializes"),
            });
            Ok((Payload::Json(payload), 0))
        }

        Command::Catalog {
            out,
            budget,
            game_budget,
        } => {
            let csv = catalog_csv(*budget, *game_budget);
            if let Some(path) = out {
                fs::write(path, &csv)
                    .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok((Payload::Text(csv), 0))
        }
    }
}

fn run_game(action: &GameAction) -> Result<(Payload, u8), Failure> {
    match action {
        GameAction::Solve { source, k, budget } => {
            let g = load_graph(source)?;
            match solve_game(&g, *k, *budget) {
                SolveResult::FirstWins => {
                    Ok((Payload::Json(json!({"winner": "first", "k": k})), 0))
                }
                SolveResult::SecondWins => {
                    Ok((Payload::Json(json!({"winner": "second", "k": k})), 0))
                }
                SolveResult::Unknown => Ok((
                    Payload::Json(json!({"winner": Value::Null, "k": k})),
                    EXIT_UNRESOLVED,
                )),
            }
        }
        GameAction::Play {
            source,
            k,
            fp,
            sp,
            seed,
        } => {
            let g = load_graph(source)?;
            let outcome = play(&g, *k, (*fp).into(), (*sp).into(), *seed);
            let mut items = transcript_json(&g, &outcome);
            if let Some(f) = &outcome.forfeit {
                let arr = items.as_array_mut().expect("transcript is an array");
                let winner = arr.pop().expect("winner entry present");
                arr.push(json!({"forfeit": {
                    "player": f.player.as_str(),
                    "round": f.round,
                    "reason": f.reason,
                }}));
                arr.push(winner);
            }
            Ok((Payload::Json(items), 0))
        }
        GameAction::Number { source, k, budget } => {
            let g = load_graph(source)?;
            match game_number(&g, *k, *budget) {
                GameNumberResult::Exact { number } => {
                    Ok((Payload::Json(json!({"game_number": number})), 0))
                }
                GameNumberResult::Unknown { lower } => Ok((
                    Payload::Json(json!({"game_number": Value::Null, "lower": lower})),
                    EXIT_UNRESOLVED,
                )),
            }
        }
    }
}

fn run_aeul(action: &AeulAction) -> Result<(Payload, u8), Failure> {
    match action {
        AeulAction::Sample {
            source,
            epsilon,
            seed,
            out,
        } => {
            let g = load_graph(source)?;
            let sample = aeul_labeling(&g, *epsilon, *seed).map_err(|e| usage(e.to_string()))?;
            if let Some(path) = out {
                write_labeling(path, &g, &sample.labeling)?;
            }
            let mut payload = sample.sidecar_json(&g);
            let map = payload.as_object_mut().expect("sidecar is an object");
            map.insert("labels".into(), labels_json(&g, &sample.labeling));
            map.insert("k_count".into(), json!(sample.k_count));
            Ok((Payload::Json(payload), 0))
        }
        AeulAction::Estimate {
            source,
            epsilon,
            trials,
            seed,
        } => {
            let g = load_graph(source)?;
            let sample = aeul_labeling(&g, *epsilon, *seed).map_err(|e| usage(e.to_string()))?;
            let est = estimate_conflict_probability(&g, &sample.labeling, *trials, *seed)
                .expect("labeling is total");
            let payload = serde_json::to_value(&est).expect("estimate serializes");
            Ok((Payload::Json(payload), 0))
        }
    }
}

/// One CSV row per catalog graph: structure, the degree bounds, the exact
/// labeling number, the game number, and edge-colorability class. Interval
/// cells use "lo..hi" ("lo.." when open above).
fn catalog_csv(budget: u64, game_budget: u64) -> String {
    let mut csv = String::from("name,n,m,max_degree,lower_bound,exact_number,game_number,class1\n");
    for (name, g) in catalog_small() {
        let bounds = lower_bound(&g).expect("catalog graphs have edges");
        let exact = match min_universal_number(&g, bounds.upper, budget)
            .expect("catalog graphs have edges")
        {
            SearchResult::Exact { number, .. } => number.to_string(),
            SearchResult::Unknown { lower, upper } => match upper {
                Some(hi) => format!("{lower}..{hi}"),
                None => format!("{lower}.."),
            },
        };
        let game = match game_number(&g, bounds.upper, game_budget) {
            GameNumberResult::Exact { number } => number.to_string(),
            GameNumberResult::Unknown { lower } => format!("{lower}.."),
        };
        let class1 = match exact_chromatic_index(&g, DEFAULT_COLORING_BUDGET) {
            ChromaticIndex::Class1(_) => "yes",
            ChromaticIndex::Class2 => "no",
            ChromaticIndex::Unknown => "unknown",
        };
        let (n, m, delta) = (g.vertex_count(), g.edge_count(), g.max_degree());
        csv.push_str(&format!(
            "{name},{n},{m},{delta},{},{exact},{game},{class1}\n",
            bounds.lower
        ));
    }
    csv
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((payload, code)) => {
            match payload {
                Payload::Json(value) => {
                    let rendered = if cli.pretty {
                        serde_json::to_string_pretty(&value)
                    } else {
                        serde_json::to_string(&value)
                    }
                    .expect("JSON value renders");
                    println!("{rendered}");
                }
                Payload::Text(text) => print!("{text}"),
            }
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
