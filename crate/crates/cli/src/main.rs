use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ddiagram::critical::{enumerate_critical_pairs, local_confluence_report, DEFAULT_JOIN_BOUND};
use ddiagram::diagrams::{complete_peak, complete_zigzag, export_dot, natural_ed, StandardEds, DEFAULT_FUEL};
use ddiagram::document::SystemDocument;
use ddiagram::hecke::{
    default_resolver, enumerate_monoid, hecke_system, verify_suite, words_up_to, HeckeVariant, VerifyOptions,
    DEFAULT_COHERENCE_BOUND, DEFAULT_MONOID_CAP,
};
use ddiagram::order::{check_monomial_sample, is_decreasing_ed};
use ddiagram::report::{Report, Status};
use ddiagram::seminormal::{attractor, words_equal};
use ddiagram::srs::{Direction, Path, Step, Zigzag};
use ddiagram::SrsSystem;

// Printing that ignores a closed stdout, e.g. when piped into `head`.
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout().lock(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "ddiagram", version, about = "String rewriting with decreasing elementary diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for independent checks (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct SpecArg {
    /// JSON system description.
    spec: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a system description is well formed.
    Validate(SpecArg),
    /// List every redex of a word.
    Redexes {
        #[command(flatten)]
        spec: SpecArg,
        word: String,
    },
    /// List the words reachable from a word.
    Reach {
        #[command(flatten)]
        spec: SpecArg,
        word: String,
        /// Stop after this many steps.
        #[arg(long)]
        max: Option<usize>,
    },
    /// Print the attractor canonical form of a word.
    NormalForm {
        #[command(flatten)]
        spec: SpecArg,
        word: String,
    },
    /// Decide whether two words are equal in the presented monoid.
    Equal {
        #[command(flatten)]
        spec: SpecArg,
        w1: String,
        w2: String,
    },
    /// List the ordered critical pairs.
    CriticalPairs(SpecArg),
    /// Check that every critical pair is joinable.
    Confluence {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = DEFAULT_JOIN_BOUND)]
        bound: usize,
    },
    /// Check that the natural and critical e.d.s are decreasing.
    CheckDecreasing {
        #[command(flatten)]
        spec: SpecArg,
        /// Longest middle word of the natural e.d.s checked.
        #[arg(long, default_value_t = 2)]
        contexts: usize,
    },
    /// Tile the peak of two steps into a complete diagram.
    CompletePeak {
        #[command(flatten)]
        spec: SpecArg,
        /// LEFT:RULE:RIGHT, `-` for an empty context.
        #[arg(long, allow_hyphen_values = true)]
        top: String,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
    },
    /// Complete a zigzag to a common reduct of its ends.
    CompleteZigzag {
        #[command(flatten)]
        spec: SpecArg,
        /// Semicolon-separated legs, each `>STEP` or `<STEP`.
        #[arg(long, allow_hyphen_values = true)]
        zigzag: String,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
    },
    /// The 0-Hecke presentations.
    #[command(subcommand)]
    Hecke(HeckeCommand),
}

#[derive(Subcommand)]
enum HeckeCommand {
    /// Write the presentation of rank N as a system description.
    Gen {
        n: usize,
        #[arg(long, default_value = "rfull")]
        variant: HeckeVariant,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Print the elements of the 0-Hecke monoid of rank N.
    Enumerate {
        n: usize,
        #[arg(long, default_value = "rfull")]
        variant: HeckeVariant,
        #[arg(long, default_value_t = DEFAULT_MONOID_CAP)]
        cap: usize,
    },
    /// Run the checks of the decreasing-diagram proof for rank N.
    Verify {
        n: usize,
        #[arg(long, default_value_t = DEFAULT_COHERENCE_BOUND)]
        coherence_bound: usize,
    },
}

/// How a command ended: `Fail` exits 1, `Usage` exits 2.
enum Outcome {
    Ok,
    Fail,
}

enum CliError {
    Usage(String),
    Fail(String),
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult = Result<Outcome, CliError>;

fn load(spec: &SpecArg) -> Result<SrsSystem, CliError> {
    let text = fs::read_to_string(&spec.spec)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", spec.spec.display())))?;
    Ok(SystemDocument::from_json(&text)?.build()?)
}

fn parse_step(sys: &SrsSystem, s: &str) -> Result<Step, CliError> {
    Ok(Step::new(sys.parse_instance(s)?))
}

fn parse_zigzag(sys: &SrsSystem, s: &str) -> Result<Zigzag, CliError> {
    let mut legs = Vec::new();
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (dir, rest) = match part.split_at(1) {
            (">", r) => (Direction::Forward, r),
            ("<", r) => (Direction::Backward, r),
            _ => return Err(CliError::Usage(format!("zigzag leg {part:?} must start with > or <"))),
        };
        legs.push((dir, parse_step(sys, rest)?));
    }
    let start = match legs.first() {
        Some((Direction::Forward, s)) => s.source.clone(),
        Some((Direction::Backward, s)) => s.target.clone(),
        None => return Err(CliError::Usage("empty zigzag".into())),
    };
    Ok(Zigzag::new(start, legs)?)
}

fn emit(report: &Report, json: bool) -> Outcome {
    if json {
        outln!("{}", report.to_json());
    } else {
        out!("{}", report.render_text());
    }
    if report.passed() {
        Outcome::Ok
    } else {
        Outcome::Fail
    }
}

fn write_dot(path: &Option<PathBuf>, dot: String) -> Result<(), CliError> {
    if let Some(p) = path {
        fs::write(p, dot).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn check_decreasing(sys: &SrsSystem, contexts: usize, seed: u64) -> Report {
    let ord = sys.instance_order();
    let mut report = Report::new(format!("check-decreasing ({} order)", ord.name()));
    let monomial = check_monomial_sample(ord.as_ref(), sys, 1000, seed);
    report.push(
        "order is monomial (sampled)",
        Status::from_bool(monomial.passed()),
        format!("{} random instance pairs, seed {seed}", monomial.trials),
        monomial.counterexamples.first().cloned(),
    );
    let mut checked = 0;
    let mut bad = None;
    for w in words_up_to(sys.n(), contexts) {
        for r1 in sys.rules() {
            for r2 in sys.rules() {
                let ed = natural_ed(r1, &w, r2);
                checked += 1;
                if bad.is_none() && !(is_decreasing_ed(ord.as_ref(), &ed).0 && is_decreasing_ed(ord.as_ref(), &ed.transpose()).0) {
                    bad = Some(ed.render(sys.n()));
                }
            }
        }
    }
    report.push(
        "natural e.d.s decreasing",
        Status::from_bool(bad.is_none()),
        format!("{checked} squares, middle word up to length {contexts}"),
        bad,
    );
    let resolver = default_resolver(sys, DEFAULT_JOIN_BOUND);
    let fam = StandardEds::new(sys, resolver.as_ref());
    report.push(
        "critical pairs resolved",
        Status::from_bool(fam.unresolved().is_empty()),
        format!("{} unresolved", fam.unresolved().len()),
        fam.unresolved().first().map(|p| p.render(sys.n())),
    );
    let cells: Vec<_> = fam.critical_cells().collect();
    let bad = cells.iter().find(|ed| !is_decreasing_ed(ord.as_ref(), ed).0);
    report.push(
        "critical e.d.s decreasing",
        Status::from_bool(bad.is_none()),
        format!("{} critical e.d.s", cells.len()),
        bad.map(|ed| ed.render(sys.n())),
    );
    report
}

fn run(cli: Cli) -> CliResult {
    let json = cli.json;
    match cli.command {
        Command::Validate(spec) => {
            let sys = load(&spec)?;
            outln!("ok: n={}, {} rules, order {}", sys.n(), sys.rules().len(), sys.instance_order().name());
        }
        Command::Redexes { spec, word } => {
            let sys = load(&spec)?;
            let w = sys.parse_word(&word)?;
            for r in sys.find_redexes(&w) {
                outln!("{}", r.render(sys.n()));
            }
        }
        Command::Reach { spec, word, max } => {
            let sys = load(&spec)?;
            let w = sys.parse_word(&word)?;
            let reach = sys.reach(&w, max);
            for v in &reach.words {
                outln!("{}", sys.render(v));
            }
            if !reach.exact {
                eprintln!("reachability truncated");
            }
        }
        Command::NormalForm { spec, word } => {
            let sys = load(&spec)?;
            let w = sys.parse_word(&word)?;
            let a = attractor(&w, &sys).map_err(|e| CliError::Fail(e.to_string()))?;
            outln!("{}", sys.render(&a.canon));
        }
        Command::Equal { spec, w1, w2 } => {
            let sys = load(&spec)?;
            let (a, b) = (sys.parse_word(&w1)?, sys.parse_word(&w2)?);
            if words_equal(&a, &b, &sys).map_err(|e| CliError::Fail(e.to_string()))? {
                outln!("equal");
            } else {
                outln!("not equal");
                return Ok(Outcome::Fail);
            }
        }
        Command::CriticalPairs(spec) => {
            let sys = load(&spec)?;
            let pairs = enumerate_critical_pairs(&sys);
            if json {
                let rows: Vec<_> = pairs
                    .iter()
                    .map(|p| {
                        serde_json::json!({
                            "peak": sys.render(&p.peak),
                            "first": p.first.render(sys.n()),
                            "second": p.second.render(sys.n()),
                            "kind": format!("{:?}", p.kind).to_lowercase(),
                        })
                    })
                    .collect();
                outln!("{}", serde_json::to_string_pretty(&rows)?);
            } else {
                for p in &pairs {
                    outln!("{}", p.render(sys.n()));
                }
                outln!("{} ordered critical pairs", pairs.len());
            }
        }
        Command::Confluence { spec, bound } => {
            let sys = load(&spec)?;
            let c = local_confluence_report(&sys, bound);
            let mut report = Report::new("confluence");
            report.push(
                "local confluence",
                Status::from_bool(c.passed()),
                format!("{} ordered critical pairs, join bound {bound}", c.pairs),
                c.failures.first().map(|p| p.render(sys.n())),
            );
            return Ok(emit(&report, json));
        }
        Command::CheckDecreasing { spec, contexts } => {
            let sys = load(&spec)?;
            return Ok(emit(&check_decreasing(&sys, contexts, cli.seed), json));
        }
        Command::CompletePeak {
            spec,
            top,
            left,
            dot,
            fuel,
        } => {
            let sys = load(&spec)?;
            let (t, l) = (parse_step(&sys, &top)?, parse_step(&sys, &left)?);
            if t.source != l.source {
                return Err(CliError::Usage(format!("steps leave different words {} and {}", t.source, l.source)));
            }
            let resolver = default_resolver(&sys, DEFAULT_JOIN_BOUND);
            let fam = StandardEds::new(&sys, resolver.as_ref());
            let tiling = complete_peak(&fam, &Path::single(t), &Path::single(l), fuel)
                .map_err(|e| CliError::Fail(e.to_string()))?;
            let b = tiling.boundary()?;
            outln!("right:  {}", b.right.render(sys.n()));
            outln!("bottom: {}", b.bottom.render(sys.n()));
            outln!("common: {}", sys.render(b.right.end()));
            outln!("cells: {} ({} proper)", tiling.cells.len(), tiling.proper_cells());
            write_dot(&dot, export_dot(&tiling, sys.n()))?;
        }
        Command::CompleteZigzag { spec, zigzag, dot, fuel } => {
            let sys = load(&spec)?;
            let z = parse_zigzag(&sys, &zigzag)?;
            let resolver = default_resolver(&sys, DEFAULT_JOIN_BOUND);
            let fam = StandardEds::new(&sys, resolver.as_ref());
            let done = complete_zigzag(&fam, &z, fuel).map_err(|e| CliError::Fail(e.to_string()))?;
            outln!("from start: {}", done.from_start.render(sys.n()));
            outln!("from end:   {}", done.from_end.render(sys.n()));
            outln!("common: {}", sys.render(&done.common));
            outln!("cells: {} ({} proper), sweeps {:?}", done.tiling.cells.len(), done.tiling.proper_cells(), done.sweeps);
            write_dot(&dot, export_dot(&done.tiling, sys.n()))?;
        }
        Command::Hecke(HeckeCommand::Gen { n, variant, output }) => {
            let sys = hecke_system(n, variant)?;
            let text = serde_json::to_string_pretty(&SystemDocument::from_system(&sys))? + "\n";
            match output {
                Some(p) => fs::write(&p, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display())))?,
                None => out!("{text}"),
            }
        }
        Command::Hecke(HeckeCommand::Enumerate { n, variant, cap }) => {
            let words = enumerate_monoid(n, variant, cap)?;
            outln!("{}", words.len());
            for w in &words {
                outln!("{}", w.render(n));
            }
        }
        Command::Hecke(HeckeCommand::Verify { n, coherence_bound }) => {
            let opts = VerifyOptions {
                coherence_bound,
                seed: cli.seed,
                ..VerifyOptions::default()
            };
            let report = verify_suite(n, &opts)?;
            return Ok(emit(&report, json));
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(CliError::Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
