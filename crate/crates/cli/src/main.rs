use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use unbent::collections::{
    collection_from_forests, counterexample_conditions, schnyder_collection, two_forest_partition, Counterexample,
    UnbentCollection,
};
use unbent::{approx, cubic, format, generators, oracle, ortho, Error, PlaneGraph};

#[derive(Parser)]
#[command(name = "unbent", version, about = "Unbent collections of orthogonal drawings for plane 4-graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed of a generated input graph, used when no graph file is given.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Vertex count of a generated input graph.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Print nothing on success.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a graph file.
    Validate { graph: Option<String> },
    /// Re-validate a collection manifest against its graph.
    Check { manifest: PathBuf, graph: Option<String> },
    /// Build an unbent collection with one strategy.
    Collection {
        graph: Option<String>,
        #[arg(long, value_enum)]
        strategy: Strategy,
        /// Directory for the drawings, manifest and report.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest collection the oracle strategy considers.
        #[arg(long = "k-max", default_value_t = 3)]
        k_max: usize,
    },
    /// Counts, face degrees, density and, for cubic inputs, the lower bound.
    Stats { graph: Option<String> },
    /// Exact unbent number and total bend number by exhaustive search.
    Oracle {
        graph: Option<String>,
        #[arg(long = "k-max", default_value_t = 3)]
        k_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Optimal two-drawing collection of a triconnected cubic graph.
    Cubic {
        graph: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Schnyder,
    Forests,
    Approx3,
    Cubic,
    Oracle,
}

impl Strategy {
    fn name(self) -> &'static str {
        match self {
            Strategy::Schnyder => "schnyder",
            Strategy::Forests => "forests",
            Strategy::Approx3 => "approx3",
            Strategy::Cubic => "cubic",
            Strategy::Oracle => "oracle",
        }
    }
}

enum Failure {
    Validation(String),
    Inapplicable(String),
    Guard(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Inapplicable(_) => 2,
            Failure::Guard(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Inapplicable(m) | Failure::Guard(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge(_) => Failure::Guard(e.to_string()),
            Error::NotCubic | Error::NotTriconnected | Error::DensityTooHigh { .. } => Failure::Inapplicable(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

type Run = Result<String, Failure>;

struct Input {
    id: String,
    graph: PlaneGraph,
}

fn load(cli: &Cli, path: &Option<String>, cubic_input: bool) -> Result<Input, Failure> {
    if let Some(path) = path {
        if let Some(name) = path.strip_prefix("fixture:") {
            let graph = generators::fixtures()
                .into_iter()
                .find(|(n, _)| n == name)
                .map(|(_, g)| g)
                .ok_or_else(|| Failure::Validation(format!("unknown fixture `{name}`")))?;
            return Ok(Input { id: name.to_string(), graph });
        }
        let text = fs::read_to_string(path).map_err(|e| Failure::Validation(format!("{path}: {e}")))?;
        let graph = format::parse(&text).map_err(|e| Failure::Validation(format!("{path}: {e}")))?;
        let id = Path::new(path).file_stem().map_or(path.clone(), |s| s.to_string_lossy().into_owned());
        return Ok(Input { id, graph });
    }
    let (Some(seed), Some(n)) = (cli.seed, cli.n) else {
        return Err(Failure::Validation("no input: give a graph file, fixture:<name>, or --seed and --n".into()));
    };
    if cubic_input {
        if n < 4 || n % 2 == 1 {
            return Err(Failure::Validation(format!("a cubic graph needs an even vertex count >= 4, got {n}")));
        }
        let graph = generators::random_triconnected_cubic(seed, (n + 4) / 2)?;
        Ok(Input { id: format!("cubic-{seed}-{n}"), graph })
    } else {
        let graph = generators::random_plane_4graph(seed, n)?;
        Ok(Input { id: format!("random-{seed}-{n}"), graph })
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

/// Writes one SVG per drawing and the manifest; returns the paths written.
fn write_collection(out: &Path, prefix: &str, c: &UnbentCollection) -> Result<Vec<PathBuf>, Failure> {
    fs::create_dir_all(out).map_err(|e| Failure::Validation(format!("{}: {e}", out.display())))?;
    let mut paths = Vec::new();
    for (i, d) in c.drawings.iter().enumerate() {
        let path = out.join(format!("{prefix}-{i}.svg"));
        write_file(&path, &ortho::render_svg(&d.drawing, &d.straight))?;
        paths.push(path);
    }
    let path = out.join("manifest.txt");
    write_file(&path, &c.manifest())?;
    paths.push(path);
    Ok(paths)
}

/// Report lines recomputed from the collection itself.
fn report(id: &str, strategy: &str, g: &PlaneGraph, c: &UnbentCollection, files: &[PathBuf]) -> String {
    let mut r = String::new();
    let per: Vec<String> = c.per_drawing_bends().iter().map(|b| b.to_string()).collect();
    let covered = (0..g.edge_count()).filter(|&e| c.drawings.get(c.coverage[e]).is_some_and(|d| d.representation.is_straight(e))).count();
    writeln!(r, "graph {id}").unwrap();
    writeln!(r, "strategy {strategy}").unwrap();
    writeln!(r, "size {}", c.size()).unwrap();
    writeln!(r, "total_bends {}", c.total_bends()).unwrap();
    writeln!(r, "per_drawing_bends {}", per.join(" ")).unwrap();
    writeln!(r, "covered {covered}/{}", g.edge_count()).unwrap();
    for f in files {
        writeln!(r, "file {}", f.display()).unwrap();
    }
    r
}

fn validate(cli: &Cli, graph: &Option<String>) -> Run {
    let input = load(cli, graph, false)?;
    let g = &input.graph;
    Ok(format!("ok {} vertices {} edges {} faces {}\n", input.id, g.vertex_count(), g.edge_count(), g.face_count()))
}

fn check(cli: &Cli, manifest: &Path, graph: &Option<String>) -> Run {
    let input = load(cli, graph, false)?;
    let text = fs::read_to_string(manifest).map_err(|e| Failure::Validation(format!("{}: {e}", manifest.display())))?;
    let c = UnbentCollection::parse_manifest(&input.graph, &text)?;
    c.verify(&input.graph).map_err(Failure::Validation)?;
    Ok(format!("ok {} size {} total_bends {}\n", input.id, c.size(), c.total_bends()))
}

fn collection(cli: &Cli, graph: &Option<String>, strategy: Strategy, out: &Option<PathBuf>, k_max: usize) -> Run {
    let input = load(cli, graph, strategy == Strategy::Cubic)?;
    let g = &input.graph;
    let start = Instant::now();
    let c = match strategy {
        Strategy::Schnyder => schnyder_collection(g),
        Strategy::Forests => {
            let forests = two_forest_partition(g).ok_or_else(|| {
                Failure::Inapplicable(format!(
                    "no partition into two forests ({} edges, 2n-2 = {})",
                    g.edge_count(),
                    (2 * g.vertex_count()).saturating_sub(2)
                ))
            })?;
            collection_from_forests(g, &forests)?
        }
        Strategy::Approx3 => approx::approx3_collection(g)?,
        Strategy::Cubic => {
            cubic::check_cubic_triconnected(g)?;
            cubic::cubic_collection(g)?
        }
        Strategy::Oracle => oracle::exact_tbn(g, k_max)?.collection.expect("the oracle returns its witness"),
    };
    let elapsed = start.elapsed();
    c.verify(g).map_err(|m| Failure::Validation(format!("collection failed verification: {m}")))?;
    let files = match out {
        Some(dir) => write_collection(dir, "drawing", &c)?,
        None => Vec::new(),
    };
    let r = report(&input.id, strategy.name(), g, &c, &files);
    if let Some(dir) = out {
        write_file(&dir.join("report.txt"), &r)?;
    }
    if !cli.quiet {
        eprintln!("time_ms {}", elapsed.as_millis());
    }
    Ok(r)
}

fn stats(cli: &Cli, graph: &Option<String>) -> Run {
    let input = load(cli, graph, false)?;
    let g = &input.graph;
    let (n, m) = (g.vertex_count(), g.edge_count());
    let mut r = String::new();
    writeln!(r, "graph {}", input.id).unwrap();
    writeln!(r, "vertices {n}").unwrap();
    writeln!(r, "edges {m}").unwrap();
    writeln!(r, "faces {}", g.face_count()).unwrap();
    let degrees: Vec<String> = g.faces().iter().map(|f| f.degree().to_string()).collect();
    writeln!(r, "face_degrees {}", degrees.join(" ")).unwrap();
    writeln!(r, "external_face {} degree {}", g.external_face(), g.face(g.external_face()).degree()).unwrap();
    writeln!(r, "m_at_most_2n-2 {}", m + 2 <= 2 * n).unwrap();
    writeln!(r, "m_equals_2n-1 {}", m + 1 == 2 * n).unwrap();
    writeln!(r, "m_equals_2n {}", m == 2 * n).unwrap();
    match counterexample_conditions(g) {
        Some(Counterexample::AllInnerTriangles) => writeln!(r, "condition (i) holds, un = 3").unwrap(),
        Some(Counterexample::OneLargeInnerFace) => writeln!(r, "condition (ii) holds, un = 3").unwrap(),
        None => writeln!(r, "no condition holds").unwrap(),
    }
    if cubic::check_cubic_triconnected(g).is_ok() {
        r.push_str(&cubic::analyze(g)?.accounting());
    }
    Ok(r)
}

fn run_oracle(cli: &Cli, graph: &Option<String>, k_max: usize, out: &Option<PathBuf>) -> Run {
    let input = load(cli, graph, false)?;
    let g = &input.graph;
    let mut r = String::new();
    writeln!(r, "graph {}", input.id).unwrap();
    writeln!(r, "k_max {k_max}").unwrap();
    let un = oracle::exact_un(g, k_max)?;
    match un.value {
        Some(k) => writeln!(r, "un {k}").unwrap(),
        None => writeln!(r, "un more_than_{k_max}").unwrap(),
    }
    writeln!(r, "un_search_space {}", un.search_space).unwrap();
    if !cli.quiet {
        eprintln!("un_time_ms {}", un.elapsed.as_millis());
    }
    let tbn = match oracle::exact_tbn(g, k_max) {
        Ok(t) => t,
        Err(e) => {
            // the unbent number is still worth showing
            if !cli.quiet {
                print!("{r}");
            }
            return Err(e.into());
        }
    };
    writeln!(r, "tbn {}", tbn.value).unwrap();
    writeln!(r, "tbn_search_space {}", tbn.search_space).unwrap();
    if !cli.quiet {
        eprintln!("tbn_time_ms {}", tbn.elapsed.as_millis());
    }
    match (out, &tbn.collection) {
        (Some(dir), Some(c)) => {
            for f in write_collection(dir, "witness", c)? {
                writeln!(r, "witness {}", f.display()).unwrap();
            }
        }
        _ => writeln!(r, "witness none").unwrap(),
    }
    Ok(r)
}

fn run_cubic(cli: &Cli, graph: &Option<String>, out: &Option<PathBuf>) -> Run {
    let input = load(cli, graph, true)?;
    let g = &input.graph;
    cubic::check_cubic_triconnected(g)?;
    let analysis = cubic::analyze(g)?;
    let placement = cubic::place_dummies(g)?;
    let c = cubic::draw_placement(g, &placement)?;
    c.verify(g).map_err(|m| Failure::Validation(format!("collection failed verification: {m}")))?;
    let mut r = String::new();
    writeln!(r, "graph {}", input.id).unwrap();
    r.push_str(&analysis.accounting());
    writeln!(r, "method {:?}", placement.method).unwrap();
    writeln!(r, "dummies {}", placement.total()).unwrap();
    writeln!(r, "total_bends {}", c.total_bends()).unwrap();
    r.push_str(&placement.to_text());
    if let Some(dir) = out {
        for f in write_collection(dir, "copy", &c)? {
            writeln!(r, "file {}", f.display()).unwrap();
        }
        let path = dir.join("placement.txt");
        write_file(&path, &placement.to_text())?;
        writeln!(r, "file {}", path.display()).unwrap();
    }
    Ok(r)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Validate { graph } => validate(&cli, graph),
        Command::Check { manifest, graph } => check(&cli, manifest, graph),
        Command::Collection { graph, strategy, out, k_max } => collection(&cli, graph, *strategy, out, *k_max),
        Command::Stats { graph } => stats(&cli, graph),
        Command::Oracle { graph, k_max, out } => run_oracle(&cli, graph, *k_max, out),
        Command::Cubic { graph, out } => run_cubic(&cli, graph, out),
    };
    match result {
        Ok(text) => {
            if !cli.quiet {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
