mod render;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use insdel_core::bounds::{self, BoundName, BoundResult};
use insdel_core::codes::{self, LinearCode, Permutation};
use insdel_core::galois::{Field, Symbol};
use insdel_core::io::{parse_code, parse_permutation, write_code, write_permutation};
use insdel_core::metrics;
use insdel_core::ordering::{self, Goal, Objective, SearchConfig, SearchMode};
use insdel_core::report::{analyze, AnalysisOptions};
use insdel_core::reproduce::{self, Case};
use insdel_core::{Error, Guards};

const GUARD_ENV: &str = "INSDEL_LAB_GUARD";

#[derive(Parser)]
#[command(name = "insdel-lab", version, about = "Insertion-deletion distances and bounds for linear codes")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Largest q^k enumerated by exact oracles [default: 65536]
    #[arg(long, global = true)]
    max_codewords: Option<u64>,
    /// Largest number of subspaces visited by GHW enumeration [default: 1000000]
    #[arg(long, global = true)]
    max_subspaces: Option<u64>,
    /// Worker threads (default: all cores); results do not depend on it
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit JSON, to stdout or to `--json=PATH`
    #[arg(long, global = true, num_args = 0..=1, require_equals = true, default_missing_value = "-")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write it in the code file format
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
        /// Output file (stdout when omitted)
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Exact distance, GHW profile and bounds for a code file
    Analyze {
        code: PathBuf,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        ghw: bool,
        #[arg(long)]
        bounds: bool,
        /// Shorthand for --exact --ghw --bounds
        #[arg(long)]
        all: bool,
        /// Permutation file applied before analysis
        #[arg(long)]
        perm: Option<PathBuf>,
    },
    /// All twelve upper bounds
    Bounds {
        code: PathBuf,
        #[arg(long)]
        perm: Option<PathBuf>,
    },
    /// Exact insdel distance over all codeword pairs
    Exact {
        code: PathBuf,
        #[arg(long)]
        perm: Option<PathBuf>,
        /// Examine every pair instead of stopping at distance 2
        #[arg(long)]
        exhaustive: bool,
    },
    /// Generalized Hamming weights d_1..d_k
    Ghw { code: PathBuf },
    /// Constructive witness pairs, verified by an LCS computation
    Witness {
        code: PathBuf,
        /// Restrict to one bound
        #[arg(long, value_enum)]
        bound: Option<WitnessBound>,
        /// Explicit codeword x for the window construction (comma separated)
        #[arg(long, value_delimiter = ',', requires_all = ["set", "t"])]
        x: Option<Vec<Symbol>>,
        /// 1-based information-free positions, increasing (comma separated)
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<usize>>,
        #[arg(long)]
        t: Option<usize>,
    },
    /// Search coordinate orderings for small or large insdel values
    SearchOrdering {
        code: PathBuf,
        #[arg(long, value_enum, default_value = "exact-insdel")]
        objective: ObjectiveArg,
        #[arg(long, value_enum, default_value = "local-search")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "minimize")]
        goal: GoalArg,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        /// Write the best permutation as a permutation file
        #[arg(long)]
        perm_out: Option<PathBuf>,
    },
    /// Recompute the pinned reference values
    Reproduce {
        #[arg(value_enum, default_value = "all")]
        case: CaseArg,
    },
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Reed-Solomon code: evaluations of polynomials of degree < k
    Rs {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        /// Evaluation points (default: all field elements in order)
        #[arg(long, value_delimiter = ',')]
        points: Option<Vec<Symbol>>,
    },
    /// Binary Reed-Muller code RM(u, m)
    Rm {
        #[arg(long)]
        u: usize,
        #[arg(long)]
        m: usize,
        /// Point ordering: identity, block-last (for the rank formula) or split:<var>
        #[arg(long, default_value = "identity")]
        ordering: String,
    },
    /// Cyclic code from a monic generator polynomial dividing x^n - 1
    Cyclic {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        /// Generator coefficients, constant term first
        #[arg(long, value_delimiter = ',')]
        g: Vec<Symbol>,
    },
    /// The [8,3] Hermitian-curve example over F_4
    Hermitian {
        #[arg(long, default_value_t = 1)]
        ordering: u8,
    },
    /// Insert the coordinate f.c at a 1-based position of every codeword
    Agfc {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        f: Vec<Symbol>,
        #[arg(long)]
        pos: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessBound {
    #[value(name = "t21_search")]
    T21Search,
    C21,
    C22,
    C23,
    #[value(name = "half_singleton")]
    HalfSingleton,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    ExactInsdel,
    T21,
    C21,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    LocalSearch,
}

#[derive(Clone, Copy, ValueEnum)]
enum GoalArg {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Hermitian,
    Rm,
    Halfsingleton,
    All,
}

/// Failures carry their exit code: 2 input, 3 guard or budget, 4 soundness
/// or internal.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::GuardExceeded { .. } | Error::BudgetExceeded { .. } => 3,
            Error::SoundnessViolation(_) | Error::Internal(_) => 4,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn guards(g: &Global) -> CliResult<Guards> {
    let mut guards = Guards::default();
    if let Ok(v) = std::env::var(GUARD_ENV) {
        let mut parts = v.split(',').map(str::trim);
        let parse = |s: &str| s.parse::<u64>().map_err(|_| input_error(format!("{GUARD_ENV}: expected N or N,M, got `{v}`")));
        if let Some(c) = parts.next().filter(|s| !s.is_empty()) {
            guards.max_codewords = parse(c)?;
        }
        if let Some(s) = parts.next() {
            guards.max_subspaces = parse(s)?;
        }
    }
    if let Some(c) = g.max_codewords {
        guards.max_codewords = c;
    }
    if let Some(s) = g.max_subspaces {
        guards.max_subspaces = s;
    }
    Ok(guards)
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_code(path: &Path) -> CliResult<LinearCode> {
    let code = parse_code(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    if code.label().is_empty() {
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        return Ok(code.with_label(stem));
    }
    Ok(code)
}

fn load_perm(path: &Path) -> CliResult<Permutation> {
    parse_permutation(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_permuted(code: &Path, perm: Option<&PathBuf>) -> CliResult<LinearCode> {
    let c = load_code(code)?;
    match perm {
        Some(p) => Ok(c.permute(&load_perm(p)?)?),
        None => Ok(c),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::write(p, text).map_err(|e| Failure { code: 2, msg: format!("{}: {e}", p.display()) })
        }
        _ => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Failure { code: 4, msg: e.to_string() })
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Failure { code: 4, msg: e.to_string() })?;
    s.push('\n');
    Ok(s)
}

/// Prints JSON when `--json` was given, the human rendering otherwise.
fn emit<T: serde::Serialize>(g: &Global, value: &T, human: impl FnOnce() -> String) -> CliResult<()> {
    match &g.json {
        Some(p) => write_out(Some(p), &to_json(value)?),
        None => write_out(None, &human()),
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let g = &cli.global;
    if let Some(t) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure { code: 4, msg: e.to_string() })?;
    }
    let guards = guards(g)?;
    match cli.command {
        Command::Construct { kind, out } => {
            let code = construct(kind)?;
            write_out(out.as_deref(), &write_code(&code))?;
        }
        Command::Analyze { code, exact, ghw, bounds, all, perm } => {
            let c = load_code(&code)?;
            let opts = AnalysisOptions { exact: exact || all, ghw: ghw || all, bounds: bounds || all, guards, seed: g.seed };
            let report = match perm {
                Some(p) => ordering::apply_and_report(&c, &load_perm(&p)?, &opts)?,
                None => analyze(&c, &opts)?,
            };
            match &g.json {
                Some(p) => {
                    let mut s = report.to_json()?;
                    s.push('\n');
                    write_out(Some(p), &s)?;
                }
                None => write_out(None, &render::report(&report))?,
            }
        }
        Command::Bounds { code, perm } => {
            let c = load_permuted(&code, perm.as_ref())?;
            let list = bounds::all_bounds(&c, &guards);
            emit(g, &list, || render::bounds(&c, &list))?;
        }
        Command::Exact { code, perm, exhaustive } => {
            let c = load_permuted(&code, perm.as_ref())?;
            let r = if exhaustive {
                metrics::insdel_code_exhaustive(&c, guards.max_codewords)?
            } else {
                metrics::insdel_code_exact(&c, guards.max_codewords)?
            };
            emit(g, &r, || render::exact(&c, &r))?;
        }
        Command::Ghw { code } => {
            let c = load_code(&code)?;
            let p = metrics::ghw_profile(&c, guards.max_subspaces)?;
            let plotkin: Vec<Option<u64>> =
                (1..=c.k()).map(|r| metrics::plotkin_ghw(c.n(), c.k(), c.field().q() as u64, r)).collect();
            let value = serde_json::json!({ "ghw": p.values, "plotkin": plotkin });
            emit(g, &value, || render::ghw(&c, &p.values, &plotkin))?;
        }
        Command::Witness { code, bound, x, set, t } => {
            let c = load_code(&code)?;
            let results = witnesses(&c, bound, x, set, t, &guards)?;
            emit(g, &results, || render::witnesses(&c, &results))?;
        }
        Command::SearchOrdering { code, objective, mode, goal, budget, perm_out } => {
            let c = load_code(&code)?;
            let cfg = SearchConfig {
                objective: match objective {
                    ObjectiveArg::ExactInsdel => Objective::ExactInsdel,
                    ObjectiveArg::T21 => Objective::T21,
                    ObjectiveArg::C21 => Objective::C21,
                },
                goal: match goal {
                    GoalArg::Minimize => Goal::Minimize,
                    GoalArg::Maximize => Goal::Maximize,
                },
                mode: match mode {
                    ModeArg::Exhaustive => SearchMode::Exhaustive,
                    ModeArg::LocalSearch => SearchMode::LocalSearch,
                },
                budget,
                seed: g.seed,
                guards,
            };
            let r = ordering::search_ordering(&c, &cfg)?;
            if let Some(p) = perm_out {
                write_out(Some(&p), &write_permutation(&r.best_permutation))?;
            }
            write_out(g.json.as_deref(), &to_json(&r)?)?;
        }
        Command::Reproduce { case } => {
            let case = match case {
                CaseArg::Hermitian => Case::Hermitian,
                CaseArg::Rm => Case::Rm,
                CaseArg::Halfsingleton => Case::Halfsingleton,
                CaseArg::All => Case::All,
            };
            let checks = reproduce::run(case, &guards)?;
            emit(g, &checks, || render::checks(&checks))?;
            if !reproduce::all_passed(&checks) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn construct(kind: ConstructKind) -> CliResult<LinearCode> {
    Ok(match kind {
        ConstructKind::Rs { q, k, points } => {
            let f = Field::with_order(q)?;
            let points = points.unwrap_or_else(|| f.elements().collect());
            let n = points.len();
            codes::reed_solomon(&f, &points, k)?.with_label(format!("rs-{n}-{k}-q{q}"))
        }
        ConstructKind::Rm { u, m, ordering: o } => {
            let perm = match o.as_str() {
                "identity" | "hyperplane" => None,
                "block-last" => Some(ordering::rm_t31_ordering(u, m)?),
                s => match s.strip_prefix("split:").map(str::parse::<usize>) {
                    Some(Ok(var)) => Some(ordering::rm_split_ordering(m, var)?),
                    _ => return Err(input_error(format!("unknown RM ordering `{s}`"))),
                },
            };
            codes::reed_muller(u, m, perm.as_ref())?.with_label(format!("rm-{u}-{m}-{o}"))
        }
        ConstructKind::Cyclic { q, n, g } => {
            let f = Field::with_order(q)?;
            codes::cyclic_code(&f, n, &g)?.with_label(format!("cyclic-{n}-q{q}"))
        }
        ConstructKind::Hermitian { ordering } => codes::hermitian_example(ordering)?,
        ConstructKind::Agfc { input, f, pos } => {
            let base = load_code(&input)?;
            let label = format!("{}-agfc-{pos}", base.label());
            codes::agfc_insert(&base, &f, pos)?.with_label(label)
        }
    })
}

#[derive(serde::Serialize)]
struct WitnessReport {
    bound: String,
    value: Option<u64>,
    applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    first: Option<Vec<Symbol>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    second: Option<Vec<Symbol>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    insdel: Option<usize>,
    verified: bool,
}

fn witness_report(c: &LinearCode, b: &BoundResult) -> CliResult<WitnessReport> {
    let (first, second, insdel, verified) = match &b.witness {
        Some(w) => {
            let d = metrics::insdel_distance(&w.first, &w.second)?;
            let ok = c.contains(&w.first) && c.contains(&w.second) && w.first != w.second && b.value.is_some_and(|v| d as u64 <= v);
            if !ok {
                return Err(Failure { code: 4, msg: format!("{} witness failed verification", b.name) });
            }
            (Some(w.first.clone()), Some(w.second.clone()), Some(d), true)
        }
        None => (None, None, None, false),
    };
    Ok(WitnessReport {
        bound: b.name.to_string(),
        value: b.value,
        applicable: b.applicable,
        reason: b.reason.clone(),
        first,
        second,
        insdel,
        verified,
    })
}

fn witnesses(
    c: &LinearCode,
    only: Option<WitnessBound>,
    x: Option<Vec<Symbol>>,
    set: Option<Vec<usize>>,
    t: Option<usize>,
    guards: &Guards,
) -> CliResult<Vec<WitnessReport>> {
    if let (Some(x), Some(set), Some(t)) = (x, set, t) {
        if set.contains(&0) {
            return Err(input_error("--set positions are 1-based"));
        }
        let s: Vec<usize> = set.iter().map(|i| i - 1).collect();
        if !c.contains(&x) {
            return Err(Error::NotACodeword.into());
        }
        let pair = bounds::t21_witness(c, &x, &s, t)?;
        let d = metrics::insdel_distance(&pair.first, &pair.second)?;
        let value = 2 * (t as u64 + 1);
        return Ok(vec![WitnessReport {
            bound: "t21_witness".into(),
            value: Some(value),
            applicable: true,
            reason: None,
            insdel: Some(d),
            verified: d as u64 <= value,
            first: Some(pair.first),
            second: Some(pair.second),
        }]);
    }
    let all = match only {
        Some(WitnessBound::T21Search) => vec![bounds::t21_bound_search(c, guards)],
        Some(WitnessBound::C21) => vec![bounds::c21_bound(c, guards)],
        Some(WitnessBound::C22) => vec![bounds::c22_bound(c, guards)],
        Some(WitnessBound::C23) => vec![bounds::c23_bound(c, guards)],
        Some(WitnessBound::HalfSingleton) => vec![bounds::half_singleton_bound(c)],
        None => bounds::all_bounds(c, guards)
            .into_iter()
            .filter(|b| {
                matches!(b.name, BoundName::T21Search | BoundName::C21 | BoundName::C22 | BoundName::C23 | BoundName::HalfSingleton)
            })
            .collect(),
    };
    all.iter().map(|b| witness_report(c, b)).collect()
}
