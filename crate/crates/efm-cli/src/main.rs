//! Command-line front end: builds and verifies the Hecke modules, emits
//! shape/tableau/graph data as JSON or DOT, and runs the weight-recovery
//! pipeline. All numeric input is exact; floats are rejected.

use std::io::{BufRead, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::Rational64;
use serde::Serialize;
use serde_json::json;

use efm_core::half::Weight;
use efm_core::oracle::{compare_with_seminormal, OracleBudget, TensorSpace};
use efm_core::recovery::{minimalize, recover, roundtrip_check};
use efm_core::seminormal::{
    build_efm_module, is_irreducible, verify_relations, weight_graph, SeminormalModule,
};
use efm_core::shapes::{admissible_outer_shapes, okada_expand, shape_family, ParamsFromMu};
use efm_core::symfunc::{dim_invariant_space, lr_product_brute};
use efm_core::tableaux::{tab_family, weight_of};
use efm_core::{EfmError, EfmParameters, Partition};

#[derive(Parser)]
#[command(name = "efm", about = "Type-Cn degenerate affine Hecke modules from GL_N data", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Okada shapes, admissible outer shapes, and the module dimension.
    Decompose(ParamArgs),
    /// The family of skew shapes reachable by gamma moves.
    Shapes(ParamArgs),
    /// The standard tableaux indexing the module basis, with weights.
    Tableaux(ParamArgs),
    /// Generator matrices, the relation report, and irreducibility.
    Build(BuildArgs),
    /// The defining-relation report only.
    Verify(BuildArgs),
    /// The weight graph (DOT by default).
    Graph(GraphArgs),
    /// Recover GL_N data from a minimal weight.
    Recover(RecoverArgs),
    /// Tensor-space oracle comparison against the tableau model.
    Oracle(OracleArgs),
    /// The dimension by tableau count and by the Okada/SYT formula.
    Dim(ParamArgs),
    /// Schur expansion of a product of two Schur polynomials.
    Symfunc(SymfuncArgs),
    /// Batch mode: one JSON parameter set per input line, one report per
    /// output line.
    Sweep(SweepArgs),
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Number of tensor factors.
    #[arg(long)]
    n: usize,
    /// Rows of the first block (p <= q).
    #[arg(long)]
    p: usize,
    /// Rows of the second block.
    #[arg(long)]
    q: usize,
    /// Width of the det-power on the p-block.
    #[arg(long)]
    a: Option<usize>,
    /// Width of the det-power on the q-block.
    #[arg(long)]
    b: Option<usize>,
    /// Exact rational mu such as 1/7 or -2 (alternative to --a/--b).
    #[arg(long, conflicts_with_all = ["a", "b"], allow_hyphen_values = true)]
    mu: Option<String>,
    /// Highest weight as comma-separated parts, e.g. 2,1.
    #[arg(long, default_value = "")]
    xi: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Test hook: add 1 to entry (i, j) of gamma before verifying.
    #[arg(long, hide = true, value_name = "I,J")]
    mutate: Option<String>,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Output format: dot or json.
    #[arg(long, default_value = "dot")]
    format: String,
}

#[derive(Args)]
struct RecoverArgs {
    /// The Hecke parameter kappa2 (an integer).
    #[arg(long, allow_hyphen_values = true)]
    kappa2: i64,
    /// The weight, e.g. "[0,-1,-2,1,-5,-6,-4]" or "[1/2,-5/2,-7/2]".
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
    /// Normalize to a minimal weight first.
    #[arg(long)]
    minimalize: bool,
    /// Rebuild the module and check the weight reappears.
    #[arg(long)]
    roundtrip: bool,
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// Highest weight, comma-separated.
    #[arg(long, default_value = "")]
    xi: String,
    /// The GL rank N.
    #[arg(long = "N", value_name = "N")]
    big_n: usize,
    #[arg(long)]
    p: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long, conflicts_with_all = ["a", "b"])]
    mu: Option<String>,
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct SymfuncArgs {
    /// Left factor, comma-separated parts.
    #[arg(long, default_value = "")]
    left: String,
    /// Right factor, comma-separated parts.
    #[arg(long, default_value = "")]
    right: String,
    /// Number of variables.
    #[arg(long)]
    vars: usize,
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// JSONL file of parameter sets; stdin when omitted.
    #[arg(long)]
    file: Option<std::path::PathBuf>,
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

const EXIT_PROPERTY: u8 = 4;

fn exit_code_for(err: &EfmError) -> u8 {
    match err {
        EfmError::InvalidParameters(_)
        | EfmError::InvalidRectangles { .. }
        | EfmError::TooManyRows(..)
        | EfmError::InsufficientVariables { .. }
        | EfmError::NotACorner(..)
        | EfmError::MoveNotApplicable(_)
        | EfmError::ParamMismatch(_)
        | EfmError::InconsistentParameters(_) => 2,
        EfmError::DegenerateWeight | EfmError::OutOfBudget(_) => 3,
        EfmError::PropertyViolation(_)
        | EfmError::NotMinimal(_)
        | EfmError::NotMinimalizable(_)
        | EfmError::NotReconstructible(_)
        | EfmError::CaseValidationFailed(_)
        | EfmError::RoundTripFailed(_)
        | EfmError::MismatchReport(_) => 4,
        EfmError::InvalidResult(_) | EfmError::RestrictionLeak => 5,
    }
}

fn parse_rational(s: &str) -> Result<Rational64, EfmError> {
    let s = s.trim();
    if s.contains('.') {
        return Err(EfmError::InvalidParameters(format!(
            "floats are not accepted, got `{s}`; use an exact fraction"
        )));
    }
    let parse_int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| EfmError::InvalidParameters(format!("cannot parse integer `{t}`")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d == 0 {
                return Err(EfmError::InvalidParameters("zero denominator".into()));
            }
            Ok(Rational64::new(parse_int(num)?, d))
        }
        None => Ok(Rational64::from_integer(parse_int(s)?)),
    }
}

enum Resolved {
    Params(EfmParameters),
    /// mu forced non-integral a or b: the module is zero.
    Zero { reason: String },
}

impl ParamArgs {
    fn resolve(&self) -> Result<Resolved, EfmError> {
        let xi = Partition::parse(&self.xi)?;
        match (&self.a, &self.b, &self.mu) {
            (Some(a), Some(b), None) => Ok(Resolved::Params(EfmParameters::new(
                self.n, self.p, self.q, *a, *b, xi,
            )?)),
            (None, None, Some(mu)) => {
                let mu = parse_rational(mu)?;
                match EfmParameters::from_mu(self.n, self.p, self.q, mu, xi)? {
                    ParamsFromMu::Params(p) => Ok(Resolved::Params(p)),
                    ParamsFromMu::Zero => Ok(Resolved::Zero {
                        reason: format!("mu = {mu} gives non-integral or negative a or b"),
                    }),
                }
            }
            _ => Err(EfmError::InvalidParameters(
                "give either --a and --b, or --mu".into(),
            )),
        }
    }
}

fn must_params(r: Resolved) -> Result<EfmParameters, EfmError> {
    match r {
        Resolved::Params(p) => Ok(p),
        Resolved::Zero { reason } => Err(EfmError::InvalidParameters(format!(
            "zero module: {reason}"
        ))),
    }
}

fn io_err(e: std::io::Error) -> EfmError {
    EfmError::InvalidParameters(format!("io error: {e}"))
}

fn emit(output: &Option<std::path::PathBuf>, text: &str) -> Result<(), EfmError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(io_err),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(io_err)?;
            if !text.ends_with('\n') {
                out.write_all(b"\n").map_err(io_err)?;
            }
            Ok(())
        }
    }
}

fn decompose_report(params: &EfmParameters) -> Result<serde_json::Value, EfmError> {
    let okada = okada_expand(params.a, params.p, params.b, params.q)?;
    let admissible = admissible_outer_shapes(params)?;
    let dimension = dim_invariant_space(params)?;
    Ok(json!({
        "params": params,
        "kappa2": params.kappa2(),
        "mu": params.mu().to_string(),
        "okada": okada,
        "admissible": admissible,
        "dimension": dimension,
    }))
}

fn zero_report(args: &ParamArgs, reason: &str) -> serde_json::Value {
    json!({
        "params": {
            "n": args.n, "p": args.p, "q": args.q,
            "mu": args.mu, "xi": args.xi,
        },
        "dimension": 0,
        "reason": reason,
    })
}

#[derive(Serialize)]
struct ModuleReport<'a> {
    params: &'a EfmParameters,
    kappa2: i64,
    dimension: usize,
    basis: &'a [efm_core::StandardTableau],
    weights: &'a [Weight],
    y: &'a [efm_core::matrix::Mat],
    s: &'a [efm_core::matrix::Mat],
    gamma: Option<&'a efm_core::matrix::Mat>,
    relations: efm_core::seminormal::RelationReport,
    irreducible: bool,
}

fn run_build(args: &BuildArgs, matrices: bool) -> Result<(String, bool), EfmError> {
    let params = must_params(args.params.resolve()?)?;
    let mut module: SeminormalModule = build_efm_module(&params)?;
    if let Some(spec) = &args.mutate {
        let (i, j) = spec
            .split_once(',')
            .ok_or_else(|| EfmError::InvalidParameters("mutate wants I,J".into()))?;
        let i: usize = i
            .trim()
            .parse()
            .map_err(|_| EfmError::InvalidParameters("mutate wants integer indices".into()))?;
        let j: usize = j
            .trim()
            .parse()
            .map_err(|_| EfmError::InvalidParameters("mutate wants integer indices".into()))?;
        if let Some(g) = module.mat_gamma.as_mut() {
            g.add_entry(i, j, efm_core::matrix::rat_int(1));
        }
    }
    let relations = verify_relations(&module);
    let all_pass = relations.all_pass();
    let irreducible = is_irreducible(&params, 12)?;
    let text = if matrices {
        let report = ModuleReport {
            params: &params,
            kappa2: module.params.kappa2,
            dimension: module.dim(),
            basis: &module.basis,
            weights: &module.weights,
            y: &module.mat_y,
            s: &module.mat_s,
            gamma: module.mat_gamma.as_ref(),
            relations,
            irreducible: irreducible.irreducible,
        };
        serde_json::to_string_pretty(&report).expect("report serializes")
    } else {
        serde_json::to_string_pretty(&json!({
            "params": &params,
            "kappa2": module.params.kappa2,
            "dimension": module.dim(),
            "relations": relations,
            "all_pass": all_pass,
        }))
        .expect("report serializes")
    };
    Ok((text, all_pass))
}

fn oracle_budget_from_env() -> OracleBudget {
    let mut budget = OracleBudget::default();
    if let Ok(cap) = std::env::var("EFM_ORACLE_BUDGET") {
        if let Ok(v) = cap.trim().parse::<usize>() {
            eprintln!("warning: overriding oracle tensor budget to {v}");
            budget.max_tensor_dim = v;
            budget.max_factors = budget.max_factors.max(8);
        }
    }
    budget
}

fn run() -> Result<ExitCode, EfmError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Decompose(args) => {
            let text = match args.resolve()? {
                Resolved::Params(params) => {
                    serde_json::to_string_pretty(&decompose_report(&params)?)
                        .expect("report serializes")
                }
                Resolved::Zero { reason } => {
                    serde_json::to_string_pretty(&zero_report(&args, &reason))
                        .expect("report serializes")
                }
            };
            emit(&args.output, &text)?;
        }
        Command::Shapes(args) => {
            let params = must_params(args.resolve()?)?;
            let family = shape_family(&params)?;
            let text = serde_json::to_string_pretty(&json!({
                "params": &params,
                "minimal": params.minimal_shape()?,
                "family": family,
            }))
            .expect("report serializes");
            emit(&args.output, &text)?;
        }
        Command::Tableaux(args) => {
            let params = must_params(args.resolve()?)?;
            let fam = tab_family(&params)?;
            let entries: Vec<serde_json::Value> = fam
                .iter()
                .map(|t| {
                    json!({
                        "tableau": t,
                        "weight": weight_of(t, &params),
                    })
                })
                .collect();
            let text = serde_json::to_string_pretty(&json!({
                "params": &params,
                "dimension": fam.len(),
                "tableaux": entries,
            }))
            .expect("report serializes");
            emit(&args.output, &text)?;
        }
        Command::Build(args) => {
            let (text, all_pass) = run_build(&args, true)?;
            emit(&args.params.output, &text)?;
            if !all_pass {
                return Ok(ExitCode::from(EXIT_PROPERTY));
            }
        }
        Command::Verify(args) => {
            let (text, all_pass) = run_build(&args, false)?;
            emit(&args.params.output, &text)?;
            if !all_pass {
                return Ok(ExitCode::from(EXIT_PROPERTY));
            }
        }
        Command::Graph(args) => {
            let params = must_params(args.params.resolve()?)?;
            let graph = weight_graph(&params)?;
            let text = match args.format.as_str() {
                "dot" => graph.to_dot(),
                "json" => serde_json::to_string_pretty(&graph).expect("graph serializes"),
                other => {
                    return Err(EfmError::InvalidParameters(format!(
                        "unknown format `{other}`; use dot or json"
                    )))
                }
            };
            emit(&args.params.output, &text)?;
        }
        Command::Recover(args) => {
            let input = Weight::parse(&args.weight)?;
            let (zeta, word) = if args.minimalize {
                let (z, w) = minimalize(&input, args.kappa2)?;
                (z, Some(w))
            } else {
                (input.clone(), None)
            };
            let rec = recover(&zeta, args.kappa2)?;
            let roundtrip = if args.roundtrip {
                let module = roundtrip_check(&zeta, args.kappa2)?;
                Some(json!({
                    "dimension": module.dim(),
                    "kappa2": module.params.kappa2,
                }))
            } else {
                None
            };
            let word_str: Option<Vec<String>> =
                word.map(|w| w.iter().map(|g| g.to_string()).collect());
            let text = serde_json::to_string_pretty(&json!({
                "input": input,
                "minimal_weight": zeta,
                "word": word_str,
                "recovered": rec,
                "roundtrip": roundtrip,
            }))
            .expect("report serializes");
            emit(&args.output, &text)?;
        }
        Command::Oracle(args) => {
            let budget = oracle_budget_from_env();
            let q = args
                .big_n
                .checked_sub(args.p)
                .filter(|&q| q >= args.p && q >= 1)
                .ok_or_else(|| EfmError::InvalidParameters("need 1 <= p <= N - p".into()))?;
            let xi = Partition::parse(&args.xi)?;
            let (a, b) = match (&args.a, &args.b, &args.mu) {
                (Some(a), Some(b), None) => (*a, *b),
                (None, None, Some(mu)) => {
                    let mu = parse_rational(mu)?;
                    match EfmParameters::from_mu(args.n, args.p, q, mu, xi.clone())? {
                        ParamsFromMu::Params(p) => (p.a, p.b),
                        ParamsFromMu::Zero => {
                            let text = serde_json::to_string_pretty(&json!({
                                "dimension": 0,
                                "reason": "mu gives non-integral or negative a or b",
                            }))
                            .expect("report serializes");
                            emit(&args.output, &text)?;
                            return Ok(ExitCode::SUCCESS);
                        }
                    }
                }
                _ => {
                    return Err(EfmError::InvalidParameters(
                        "give either --a and --b, or --mu".into(),
                    ))
                }
            };
            let params = EfmParameters::new(args.n, args.p, q, a, b, xi)?;
            let comparison = compare_with_seminormal(&params, &budget)?;
            let space = TensorSpace::from_params(&params, &budget)?;
            let verdict = comparison.pass();
            let text = serde_json::to_string_pretty(&json!({
                "params": &params,
                "dimension": space.dim_invariant(),
                "comparison": comparison,
                "match": verdict,
            }))
            .expect("report serializes");
            emit(&args.output, &text)?;
            if !verdict {
                return Ok(ExitCode::from(EXIT_PROPERTY));
            }
        }
        Command::Dim(args) => {
            let text = match args.resolve()? {
                Resolved::Params(params) => {
                    let by_tableaux = tab_family(&params)?.len();
                    let by_formula = dim_invariant_space(&params)?;
                    serde_json::to_string_pretty(&json!({
                        "params": &params,
                        "by_tableaux": by_tableaux,
                        "by_formula": by_formula,
                        "agree": by_tableaux == by_formula,
                    }))
                    .expect("report serializes")
                }
                Resolved::Zero { reason } => {
                    serde_json::to_string_pretty(&zero_report(&args, &reason))
                        .expect("report serializes")
                }
            };
            emit(&args.output, &text)?;
        }
        Command::Symfunc(args) => {
            let left = Partition::parse(&args.left)?;
            let right = Partition::parse(&args.right)?;
            let expansion = lr_product_brute(&left, &right, args.vars)?;
            let terms: Vec<serde_json::Value> = expansion
                .iter()
                .map(|(nu, c)| json!({"partition": nu, "coefficient": c}))
                .collect();
            let text = serde_json::to_string_pretty(&json!({
                "left": left,
                "right": right,
                "vars": args.vars,
                "terms": terms,
            }))
            .expect("report serializes");
            emit(&args.output, &text)?;
        }
        Command::Sweep(args) => {
            let reader: Box<dyn BufRead> = match &args.file {
                Some(path) => Box::new(std::io::BufReader::new(
                    std::fs::File::open(path).map_err(io_err)?,
                )),
                None => Box::new(std::io::BufReader::new(std::io::stdin())),
            };
            let mut lines_out = Vec::new();
            for line in reader.lines() {
                let line = line.map_err(io_err)?;
                if line.trim().is_empty() {
                    continue;
                }
                let params: EfmParameters = serde_json::from_str(&line).map_err(|e| {
                    EfmError::InvalidParameters(format!("bad parameter line: {e}"))
                })?;
                let report = decompose_report(&params)?;
                lines_out.push(serde_json::to_string(&report).expect("report serializes"));
            }
            let text = lines_out.join("\n");
            emit(&args.output, &text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
