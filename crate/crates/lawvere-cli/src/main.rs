//! The `lawvere` binary: parse theory presentations, rewrite terms,
//! generate bounded rewrite graphs, read them at four semantic levels,
//! translate along the builtin morphisms, verify the finite-base
//! arithmetic, and print the product-preservation demonstrations.
//!
//! Exit codes: `0` success, `1` usage, `2` parse error, `3` validation
//! failure, `4` fuel or bounds exhausted under `--strict`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lawvere::arities::{verify_lemma_nn, BaseTag};
use lawvere::calculi::{apply_morphism, morphism_f_r, morphism_u_r, TheoryMorphism};
use lawvere::parse::{parse_term, parse_theory, ParseError};
use lawvere::rewrite::{
    find_redexes, normalize, Bounds, Mode, NormalizeOutcome, RewriteError, RewriteGraph, Strategy,
};
use lawvere::semantics::{
    components, counterexample_reports, free_category_rgph, free_poset, to_reflexive_graph,
    CatError, Partition, PathCategory,
};
use lawvere::{Term, TheoryPresentation};
use lawvere_cli::emit;
use lawvere_cli::parallel::generate_graph_threaded;

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_EXHAUSTED: u8 = 4;

/// Fuel for path enumeration when the semantics pipeline builds a
/// category: plenty for desk-scale graphs, bounded for cyclic ones.
const CATEGORY_FUEL: usize = 16;

#[derive(Parser)]
#[command(
    name = "lawvere",
    version,
    about = "Rewrite graphs of algebraic theory presentations, read at four semantic levels"
)]
struct Cli {
    /// Worker threads for graph generation (1 = sequential; any count
    /// produces byte-identical output).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Exit 4 when fuel or bounds were exhausted (truncated graph,
    /// normalization timeout, incomplete morphism table).
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a theory file.
    Check {
        /// Theory file.
        file: PathBuf,
    },
    /// Normalize a term, printing the whole trace.
    Rewrite {
        /// Theory file.
        file: PathBuf,
        /// Term, in the theory's syntax.
        term: String,
        /// Redex choice per step.
        #[arg(long, value_enum, default_value_t = StrategyArg::Full)]
        strategy: StrategyArg,
        /// Maximum number of steps.
        #[arg(long, default_value_t = 100)]
        fuel: usize,
    },
    /// Generate the bounded rewrite graph of a term.
    Graph {
        /// Theory file.
        file: PathBuf,
        /// Seed term.
        term: String,
        /// One redex per edge, or maximal simultaneous steps as well.
        #[arg(long, value_enum, default_value_t = ModeArg::Single)]
        mode: ModeArg,
        /// Maximum BFS depth from the seed.
        #[arg(long, default_value_t = 64)]
        depth: usize,
        /// Maximum number of distinct terms (vertices).
        #[arg(long = "max-terms", default_value_t = 10_000)]
        max_terms: usize,
        /// Output format.
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Generate a term's rewrite graph and read it at one semantic level.
    Semantics {
        /// Theory file.
        file: PathBuf,
        /// Seed term.
        term: String,
        /// small = rewrite graph, big = free category, full = reachability
        /// poset, denote = connected components.
        #[arg(long, value_enum)]
        level: Level,
        /// Output format; the default is a one-line text summary.
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Translate a term along a builtin theory morphism.
    Translate {
        /// f_r marks every application; u_r erases the marker.
        #[arg(long, value_enum)]
        morphism: MorphismArg,
        /// Term, in the morphism's source theory.
        term: String,
    },
    /// Brute-force the arithmetic of arities over one finite base.
    Laws {
        /// Enriching base category.
        #[arg(long, value_enum)]
        base: BaseArg,
        /// Check all arities m, n up to this bound.
        #[arg(long)]
        max: usize,
    },
    /// Built-in demonstrations.
    Demo {
        /// Which demonstration to run.
        #[arg(value_enum)]
        what: DemoArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    /// Fire every redex of the current term at once.
    Full,
    /// Leftmost-outermost (lazy).
    Lo,
    /// Leftmost-innermost (eager).
    Li,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// One redex per edge.
    Single,
    /// Also one edge per maximal set of disjoint redexes.
    Parallel,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    /// Graphviz DOT.
    Dot,
    /// The documented JSON schema.
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    /// One-line human summary.
    Text,
    /// Graphviz DOT.
    Dot,
    /// The documented JSON schema.
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    /// The rewrite graph itself.
    Small,
    /// The free category on the graph.
    Big,
    /// The reachability poset.
    Full,
    /// Connected components.
    Denote,
}

#[derive(Clone, Copy, ValueEnum)]
enum MorphismArg {
    /// The marking morphism into the marked calculus.
    #[value(name = "f_r")]
    FR,
    /// The unmarking morphism back.
    #[value(name = "u_r")]
    UR,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    /// Finite sets.
    Set,
    /// Finite posets.
    Pos,
    /// Finite reflexive graphs.
    Rgph,
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoArg {
    /// The product-preservation counterexample table.
    Counterexample,
    /// The diamond rewrite graph, as DOT.
    Diamond,
}

/// A classified failure: what to print and which code to exit with.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into() }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Failure {
        let code = match &e {
            ParseError::Syntax { .. } => EXIT_PARSE,
            ParseError::Invalid { .. } => EXIT_VALIDATION,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<RewriteError> for Failure {
    fn from(e: RewriteError) -> Failure {
        let code = match &e {
            RewriteError::InvalidBounds(_) => EXIT_USAGE,
            RewriteError::Canon(_) => EXIT_EXHAUSTED,
            _ => EXIT_VALIDATION,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<CatError> for Failure {
    fn from(e: CatError) -> Failure {
        Failure::new(EXIT_VALIDATION, e.to_string())
    }
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`lawvere … | head`), like any Unix
    // filter, instead of panicking on EPIPE.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here too; they are not failures.
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Check { file } => check(file),
        Command::Rewrite { file, term, strategy, fuel } => {
            rewrite(cli, file, term, *strategy, *fuel)
        }
        Command::Graph { file, term, mode, depth, max_terms, format } => {
            graph(cli, file, term, *mode, *depth, *max_terms, *format)
        }
        Command::Semantics { file, term, level, format } => {
            semantics(cli, file, term, *level, *format)
        }
        Command::Translate { morphism, term } => translate(*morphism, term),
        Command::Laws { base, max } => laws(*base, *max),
        Command::Demo { what } => demo(*what),
    }
}

fn load_theory(file: &PathBuf) -> Result<TheoryPresentation, Failure> {
    let source = std::fs::read_to_string(file)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot read {}: {e}", file.display())))?;
    Ok(parse_theory(&source)?)
}

fn load_term(theory: &TheoryPresentation, source: &str) -> Result<Term, Failure> {
    Ok(parse_term(theory, source)?)
}

fn check(file: &PathBuf) -> Result<u8, Failure> {
    let theory = load_theory(file)?;
    let eqs = match theory.equations.len() {
        0 => String::new(),
        n => format!("{n} eqs, "),
    };
    println!("ok: {} ops, {eqs}{} rules", theory.operations.len(), theory.rules.len());
    Ok(0)
}

fn rewrite(
    cli: &Cli,
    file: &PathBuf,
    term: &str,
    strategy: StrategyArg,
    fuel: usize,
) -> Result<u8, Failure> {
    let theory = load_theory(file)?;
    let term = load_term(&theory, term)?;
    let strategy = match strategy {
        StrategyArg::Full => Strategy::Full,
        StrategyArg::Lo => Strategy::LeftmostOutermost,
        StrategyArg::Li => Strategy::LeftmostInnermost,
    };
    let run = normalize(&theory, &term, strategy, fuel)?;
    for (i, step) in run.steps.iter().enumerate() {
        println!("{}: {} ⇒ {}", i + 1, step.redex, step.term);
    }
    match &run.outcome {
        NormalizeOutcome::NormalForm(t) => {
            println!("normal form: {t}");
            Ok(0)
        }
        NormalizeOutcome::Timeout(t) => {
            println!("timeout after {} steps: {t}", run.steps.len());
            Ok(if cli.strict { EXIT_EXHAUSTED } else { 0 })
        }
    }
}

fn build_graph(
    cli: &Cli,
    theory: &TheoryPresentation,
    seed: &Term,
    mode: Mode,
    depth: usize,
    max_terms: usize,
) -> Result<RewriteGraph, Failure> {
    let bounds = Bounds { max_depth: depth, max_vertices: max_terms, ..Bounds::default() };
    Ok(generate_graph_threaded(theory, core::slice::from_ref(seed), bounds, mode, cli.threads)?)
}

fn graph(
    cli: &Cli,
    file: &PathBuf,
    term: &str,
    mode: ModeArg,
    depth: usize,
    max_terms: usize,
    format: GraphFormat,
) -> Result<u8, Failure> {
    let theory = load_theory(file)?;
    let seed = load_term(&theory, term)?;
    let mode = match mode {
        ModeArg::Single => Mode::Single,
        ModeArg::Parallel => Mode::Parallel,
    };
    let g = build_graph(cli, &theory, &seed, mode, depth, max_terms)?;
    match format {
        GraphFormat::Dot => print!("{}", emit::graph_dot(&g)),
        GraphFormat::Json => print!("{}", emit::to_json_string(&emit::graph_json(&g))),
    }
    Ok(if cli.strict && g.truncated { EXIT_EXHAUSTED } else { 0 })
}

/// The semantics pipeline's category leg: rewrite graph → reflexive graph
/// → free category.
fn pipeline_category(g: &RewriteGraph) -> Result<PathCategory, Failure> {
    Ok(free_category_rgph(&to_reflexive_graph(g), CATEGORY_FUEL)?)
}

/// The representative of one partition class: its unique redex-free term
/// if there is exactly one, otherwise its least member.
fn class_representative<'p>(
    theory: &TheoryPresentation,
    partition: &'p Partition,
    class: &[usize],
) -> &'p str {
    let mut normal_forms = class.iter().filter_map(|&i| {
        let name = &partition.carrier[i];
        match parse_term(theory, name) {
            Ok(t) if find_redexes(theory, &t).is_empty() => Some(name.as_str()),
            _ => None,
        }
    });
    match (normal_forms.next(), normal_forms.next()) {
        (Some(unique), None) => unique,
        _ => partition.carrier[class[0]].as_str(),
    }
}

fn semantics(
    cli: &Cli,
    file: &PathBuf,
    term: &str,
    level: Level,
    format: FormatArg,
) -> Result<u8, Failure> {
    let theory = load_theory(file)?;
    let seed = load_term(&theory, term)?;
    let g = build_graph(cli, &theory, &seed, Mode::Single, 64, 10_000)?;
    let mut exhausted = g.truncated;

    match level {
        Level::Small => match format {
            FormatArg::Text => println!(
                "{} vertices, {} edges, truncated: {}",
                g.vertices.len(),
                g.edges.len(),
                g.truncated
            ),
            FormatArg::Dot => print!("{}", emit::graph_dot(&g)),
            FormatArg::Json => print!("{}", emit::to_json_string(&emit::graph_json(&g))),
        },
        Level::Big => {
            let cat = pipeline_category(&g)?;
            exhausted = exhausted || !cat.complete;
            match format {
                FormatArg::Text => println!(
                    "{} objects, {} generators, {} relations, {} morphisms, complete: {}",
                    cat.objects.len(),
                    cat.generators.len(),
                    cat.relations.len(),
                    cat.morphisms.len(),
                    cat.complete
                ),
                FormatArg::Dot => print!("{}", emit::category_dot(&cat)),
                FormatArg::Json => print!("{}", emit::to_json_string(&emit::category_json(&cat))),
            }
        }
        Level::Full => {
            let poset = free_poset(&pipeline_category(&g)?);
            match format {
                FormatArg::Text => {
                    let bottom = match poset.bottom() {
                        Some(b) => poset.elements[b].clone(),
                        None => "none".to_string(),
                    };
                    println!("{} elements, bottom: {bottom}", poset.elements.len());
                }
                FormatArg::Dot => print!("{}", emit::poset_dot(&poset)),
                FormatArg::Json => print!("{}", emit::to_json_string(&emit::poset_json(&poset))),
            }
        }
        Level::Denote => {
            let poset = free_poset(&pipeline_category(&g)?);
            let partition = components(&poset);
            match format {
                FormatArg::Text => print_partition(&theory, &partition),
                FormatArg::Dot => print!("{}", emit::partition_dot(&partition)),
                FormatArg::Json => {
                    print!("{}", emit::to_json_string(&emit::partition_json(&partition)))
                }
            }
        }
    }
    Ok(if cli.strict && exhausted { EXIT_EXHAUSTED } else { 0 })
}

fn print_partition(theory: &TheoryPresentation, partition: &Partition) {
    if partition.classes.len() == 1 {
        let rep = class_representative(theory, partition, &partition.classes[0]);
        println!("one component, representative {rep}");
        return;
    }
    println!("{} components", partition.classes.len());
    for class in &partition.classes {
        let rep = class_representative(theory, partition, class);
        println!("- representative {rep} ({} terms)", class.len());
    }
}

fn translate(morphism: MorphismArg, term: &str) -> Result<u8, Failure> {
    let m: TheoryMorphism = match morphism {
        MorphismArg::FR => morphism_f_r(),
        MorphismArg::UR => morphism_u_r(),
    };
    let term = load_term(&m.source, term)?;
    let image = apply_morphism(&m, &term)
        .map_err(|e| Failure::new(EXIT_VALIDATION, e.to_string()))?;
    println!("{image}");
    Ok(0)
}

fn laws(base: BaseArg, max: usize) -> Result<u8, Failure> {
    let base = match base {
        BaseArg::Set => BaseTag::Set,
        BaseArg::Pos => BaseTag::Pos,
        BaseArg::Rgph => BaseTag::RGph,
    };
    let report = verify_lemma_nn(base, max, max);
    for check in &report.checks {
        let verdict = if check.passed { "ok" } else { "FAIL" };
        println!(
            "{} m={} n={}: {verdict} — {}",
            check.family, check.m, check.n, check.detail
        );
    }
    let failures = report.failures().len();
    let total = report.checks.len();
    println!("passed {}/{total} checks over {base}", total - failures);
    Ok(if failures == 0 { 0 } else { EXIT_VALIDATION })
}

fn demo(what: DemoArg) -> Result<u8, Failure> {
    match what {
        DemoArg::Counterexample => {
            let reports = counterexample_reports(8)?;
            println!("{:<36} {:>5} {:>6}  preserved", "functor", "left", "right");
            for r in &reports {
                let preserved = if r.preserved { "yes" } else { "no" };
                println!("{:<36} {:>5} {:>6}  {preserved}", r.functor, r.left, r.right);
            }
            Ok(0)
        }
        DemoArg::Diamond => {
            let theory = lawvere::calculi::th_ski();
            let seed = parse_term(&theory, "((K S) (((S K) I) (I K)))")?;
            let bounds = Bounds { max_depth: 6, ..Bounds::default() };
            let g = lawvere::rewrite::generate_graph(&theory, &[seed], bounds, Mode::Single)?;
            print!("{}", emit::graph_dot(&g));
            Ok(0)
        }
    }
}
