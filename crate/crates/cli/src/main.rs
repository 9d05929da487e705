use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use hazard_trees::constructions::{
    hazard_free_from_boolean, k_hazard_free_from_boolean, mux_trees, smalldepth_tree,
};
use hazard_trees::kernel::pow3;
use hazard_trees::measures::{
    block_sensitivity_u, certificate_complexity_u, reconstruct_from_ball, sensitivity_u,
    stability_sensitivity, stable_sensitivity, BallOracle, MAX_EXACT_MEASURE_VARS,
};
use hazard_trees::optimal::{optimal, Objective};
use hazard_trees::verify::{
    enumerate_functions, run_checks, sample_functions, select_checks, Filter, MeasureReport, Status,
};
use hazard_trees::{
    hazard_free_extension, BooleanFunction, DecisionTree, FunctionLiteral, Mode, Ternary,
    TernaryWord,
};

#[derive(Parser)]
#[command(
    name = "hazard-trees",
    version,
    about = "Hazard-free decision trees over three-valued logic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every measure of a function as one TSV row.
    Analyze {
        #[arg(long)]
        function: FunctionLiteral,
        /// Print "skipped(limit)" for fields above their limit instead of failing.
        #[arg(long)]
        skip_infeasible: bool,
    },
    /// Exact optimum of a tree measure, optionally writing a witness tree.
    Optimal {
        #[arg(long, value_enum)]
        measure: Measure,
        #[arg(long)]
        function: FunctionLiteral,
        /// Number of unstable inputs for depth_k and size_k.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        emit_tree: Option<PathBuf>,
    },
    /// Build a hazard-free tree and write it as an S-expression.
    Construct {
        #[arg(long, value_enum)]
        from: Source,
        /// Build a tree correct on inputs with at most K unstable digits.
        #[arg(long)]
        k: Option<usize>,
        /// Family parameter for mux and smalldepth; variable count for boolean-tree.
        #[arg(long)]
        n: Option<usize>,
        /// Boolean input tree for boolean-tree.
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sensitivity, block sensitivity and certificate measures.
    Measures {
        #[arg(long)]
        function: FunctionLiteral,
        /// Report the pointwise measures at one ternary word instead.
        #[arg(long)]
        at: Option<TernaryWord>,
    },
    /// Rebuild a hazard-free extension from its values on a ball.
    Reconstruct {
        #[arg(long)]
        function: FunctionLiteral,
        #[arg(long)]
        center: TernaryWord,
        #[arg(long)]
        radius: usize,
        /// Sensitivity bound handed to the reconstruction.
        #[arg(long)]
        s: usize,
    },
    /// Run registered checks over enumerated or sampled functions.
    Verify {
        #[arg(long)]
        n: usize,
        /// all, nondegenerate or npn.
        #[arg(long, default_value = "all")]
        filter: Filter,
        /// Comma-separated check ids, or "all".
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long)]
        out: PathBuf,
        /// Sample this many functions instead of enumerating.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Measure {
    Depth,
    Size,
    DepthU,
    SizeU,
    DepthK,
    SizeK,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    BooleanTree,
    Mux,
    Smalldepth,
}

/// Command failed because a check did not hold, as opposed to bad input.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

/// `println!` into the command's output buffer.
macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {{
        use std::fmt::Write as _;
        writeln!($out, $($arg)*).expect("writing to a String");
    }};
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn analyze(stdout: &mut String, function: &FunctionLiteral, skip_infeasible: bool) -> Result<()> {
    let report = MeasureReport::compute(&function.function, function.to_string())?;
    if report.is_partial() && !skip_infeasible {
        bail!(
            "{function} has {} variables, above the limit of some measures; pass --skip-infeasible",
            function.function.n()
        );
    }
    outln!(stdout, "{}", MeasureReport::tsv_header());
    outln!(stdout, "{}", report.tsv_row());
    Ok(())
}

fn run_optimal(
    stdout: &mut String,
    measure: Measure,
    function: &FunctionLiteral,
    k: Option<usize>,
    emit: Option<&Path>,
) -> Result<()> {
    let needs_k = matches!(measure, Measure::DepthK | Measure::SizeK);
    let k = match (needs_k, k) {
        (true, None) => bail!("--k is required for depth_k and size_k"),
        (false, Some(_)) => bail!("--k only applies to depth_k and size_k"),
        (_, k) => k.unwrap_or(0),
    };
    let (mode, objective, name) = match measure {
        Measure::Depth => (Mode::Boolean, Objective::Depth, "depth"),
        Measure::Size => (Mode::Boolean, Objective::Size, "size"),
        Measure::DepthU => (Mode::HazardFree, Objective::Depth, "depth_u"),
        Measure::SizeU => (Mode::HazardFree, Objective::Size, "size_u"),
        Measure::DepthK => (Mode::KBit(k), Objective::Depth, "depth_k"),
        Measure::SizeK => (Mode::KBit(k), Objective::Size, "size_k"),
    };
    let result = optimal(&function.function, mode, objective)?;
    if let Some(path) = emit {
        write_file(path, &format!("{}\n", result.witness))?;
    }
    outln!(stdout, "function\tmeasure\tk\tvalue");
    let k_cell = if needs_k { k.to_string() } else { "-".into() };
    outln!(stdout, "{function}\t{name}\t{k_cell}\t{}", result.value);
    Ok(())
}

/// The Boolean function a binary tree computes on `n` variables.
fn tree_function(t: &DecisionTree, n: usize) -> Result<BooleanFunction> {
    let mut failure = None;
    let f = BooleanFunction::from_fn(n, |bits| match t.evaluate(&TernaryWord::from_bools(bits)) {
        Ok(v) => v == Ternary::One,
        Err(e) => {
            failure.get_or_insert(e);
            false
        }
    })?;
    match failure {
        Some(e) => Err(e.into()),
        None => Ok(f),
    }
}

fn construct(
    stdout: &mut String,
    from: Source,
    k: Option<usize>,
    n: Option<usize>,
    tree: Option<&Path>,
    out: &Path,
) -> Result<()> {
    let built = match from {
        Source::BooleanTree => {
            let path = tree.context("--tree is required for boolean-tree")?;
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let t = DecisionTree::parse_with_arity(&text, hazard_trees::Arity::Binary)
                .with_context(|| format!("{} is not a binary tree", path.display()))?;
            let vars = n.unwrap_or_else(|| t.min_vars());
            if vars < t.min_vars() {
                bail!(
                    "--n {vars} is below the {} variables the tree queries",
                    t.min_vars()
                );
            }
            let f = tree_function(&t, vars)?;
            match k {
                Some(k) => k_hazard_free_from_boolean(&t, &f, k)?,
                None => hazard_free_from_boolean(&t, &f)?,
            }
        }
        Source::Mux | Source::Smalldepth => {
            if tree.is_some() || k.is_some() {
                bail!("--tree and --k only apply to boolean-tree");
            }
            let n = n.context("--n is required for mux and smalldepth")?;
            match from {
                Source::Mux => mux_trees(n)?.1,
                _ => smalldepth_tree(n)?,
            }
        }
    };
    write_file(out, &format!("{built}\n"))?;
    outln!(stdout, "size\tdepth");
    outln!(stdout, "{}\t{}", built.size(), built.depth());
    Ok(())
}

fn measures_at(stdout: &mut String, function: &FunctionLiteral, at: &TernaryWord) -> Result<()> {
    let f = &function.function;
    if at.len() != f.n() {
        bail!(
            "--at has {} digits but {function} has {} variables",
            at.len(),
            f.n()
        );
    }
    if f.n() > MAX_EXACT_MEASURE_VARS {
        bail!("pointwise measures support at most {MAX_EXACT_MEASURE_VARS} variables");
    }
    let g = hazard_free_extension(f)?;
    let value = g.eval(at)?;
    let (stabs, slys) = if value.is_stable() {
        (
            stable_sensitivity(&g, at)?.to_string(),
            stability_sensitivity(&g, at)?.to_string(),
        )
    } else {
        ("-".into(), stability_sensitivity(&g, at)?.to_string())
    };
    outln!(
        stdout,
        "function\tword\tvalue\ts_u\tbs_u\tcc_u\tstabs\tslys"
    );
    outln!(
        stdout,
        "{function}\t{at}\t{value}\t{}\t{}\t{}\t{stabs}\t{slys}",
        sensitivity_u(&g, at)?,
        block_sensitivity_u(&g, at)?,
        certificate_complexity_u(&g, at)?,
    );
    Ok(())
}

fn reconstruct(
    stdout: &mut String,
    function: &FunctionLiteral,
    center: &TernaryWord,
    radius: usize,
    s: usize,
) -> Result<()> {
    let g = hazard_free_extension(&function.function)?;
    let oracle = BallOracle::from_function(&g, center, radius)?;
    let rebuilt = reconstruct_from_ball(&oracle, s)?;
    let n = g.n();
    outln!(stdout, "word\tvalue");
    for idx in 0..pow3(n) {
        let x = TernaryWord::from_index(n, idx);
        outln!(stdout, "{x}\t{}", rebuilt.eval(&x)?);
    }
    if rebuilt != g {
        return Err(CheckFailed(format!(
            "reconstruction of {function} differs from its extension"
        ))
        .into());
    }
    Ok(())
}

fn verify(
    stdout: &mut String,
    n: usize,
    filter: Filter,
    checks: &str,
    out: &Path,
    samples: Option<usize>,
    seed: u64,
) -> Result<()> {
    let checks = select_checks(checks)?;
    let fs = match samples {
        Some(count) => {
            if filter != Filter::All {
                bail!("--filter cannot be combined with --samples");
            }
            sample_functions(n, count, seed)?
        }
        None => enumerate_functions(n, filter)?,
    };
    let report = run_checks(&fs, &checks);
    write_file(out, &report.to_tsv())?;
    outln!(stdout, "status\tcount");
    for status in [Status::Pass, Status::Fail, Status::Skip] {
        outln!(stdout, "{status}\t{}", report.count(status));
    }
    if !report.is_clean() {
        let first = report.failures().next().expect("a failure");
        return Err(CheckFailed(format!(
            "{} check(s) failed, first: {} {}: {}",
            report.count(Status::Fail),
            first.function,
            first.check,
            first.detail
        ))
        .into());
    }
    Ok(())
}

fn run(cli: Cli, stdout: &mut String) -> Result<()> {
    match cli.command {
        Command::Analyze {
            function,
            skip_infeasible,
        } => analyze(stdout, &function, skip_infeasible),
        Command::Optimal {
            measure,
            function,
            k,
            emit_tree,
        } => run_optimal(stdout, measure, &function, k, emit_tree.as_deref()),
        Command::Construct {
            from,
            k,
            n,
            tree,
            out,
        } => construct(stdout, from, k, n, tree.as_deref(), &out),
        Command::Measures {
            function,
            at: Some(at),
        } => measures_at(stdout, &function, &at),
        Command::Measures { function, at: None } => analyze(stdout, &function, true),
        Command::Reconstruct {
            function,
            center,
            radius,
            s,
        } => reconstruct(stdout, &function, &center, radius, s),
        Command::Verify {
            n,
            filter,
            checks,
            out,
            samples,
            seed,
        } => verify(stdout, n, filter, &checks, &out, samples, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = String::new();
    let result = run(cli, &mut stdout);
    // a closed pipe downstream is not an error of ours
    if let Err(e) = io::stdout().write_all(stdout.as_bytes()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write output: {e}");
            return ExitCode::from(2);
        }
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<CheckFailed>() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
