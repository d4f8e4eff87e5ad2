use std::path::PathBuf;

use clap::{Args, Subcommand};
use densikit::gv::{
    all_partial_checks, build_fibration, build_sp_fibration_reduced, fiber_reduce, gv_variety_sl, gv_variety_sp,
    smoothness_check, FibrationPresentation, GroebnerVerdict, GroupKind, GvVariety,
};
use serde::Serialize;

use crate::catalog::parse_rationals;
use crate::{write_output, CliError, CliResult, EXIT_BUDGET};

#[derive(Subcommand, Debug)]
pub enum GvCommand {
    /// Print the components and the variable table of a fibration.
    Build(BuildArgs),
    /// Check the derivative identity for every legal index tuple.
    PartialCheck(GroupArgs),
    /// Solve the last factor of a fiber and print the residual.
    Reduce(ReduceArgs),
    /// Compare the smoothness classification with the Jacobian criterion.
    Smooth(SmoothArgs),
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long = "K")]
    pub k: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Symplectic only: keep just the last row of the first factor.
    #[arg(long)]
    pub reduced: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Fiber value `y`, comma separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
}

#[derive(Args, Debug)]
pub struct SmoothArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Component index (special linear only).
    #[arg(long)]
    pub i: Option<usize>,
    /// Target value(s), comma separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
}

fn kind(g: &GroupArgs) -> Result<GroupKind, CliError> {
    GroupKind::parse(&g.group).ok_or_else(|| CliError::Input(format!("unknown group `{}` (sl or sp)", g.group)))
}

#[derive(Serialize)]
struct BuildJson<'a> {
    group: &'a str,
    n: usize,
    #[serde(rename = "K")]
    k: usize,
    reduced: bool,
    components: Vec<String>,
    variables: Vec<VarJson>,
}

#[derive(Serialize)]
struct VarJson {
    name: String,
    factor: usize,
    k: usize,
    l: usize,
    column: usize,
}

pub fn render_build(fib: &FibrationPresentation, reduced: bool) -> String {
    let mut out = format!("# {} n={} K={}{}\n", fib.kind.name(), fib.n, fib.k, if reduced { " reduced" } else { "" });
    out.push_str(&fib.render());
    out.push_str("# variables\n");
    out.push_str(&fib.render_table());
    out
}

fn build(args: &BuildArgs) -> CliResult {
    let g = &args.group;
    let kind = kind(g)?;
    let fib = match (kind, args.reduced) {
        (GroupKind::Sp, true) => build_sp_fibration_reduced(g.n, g.k)?,
        (GroupKind::Sl, true) => return Err(CliError::Input("--reduced applies to the symplectic group".into())),
        (_, false) => build_fibration(kind, g.n, g.k)?,
    };
    let text = if g.json {
        let j = BuildJson {
            group: kind.name(),
            n: g.n,
            k: g.k,
            reduced: args.reduced,
            components: fib.components().iter().map(|p| p.render()).collect(),
            variables: fib
                .table()
                .iter()
                .map(|v| VarJson { name: v.name.clone(), factor: v.factor, k: v.k, l: v.l, column: v.column })
                .collect(),
        };
        serde_json::to_string_pretty(&j).expect("fibration serializes") + "\n"
    } else {
        render_build(&fib, args.reduced)
    };
    write_output(args.out.as_deref(), &text)?;
    Ok(0)
}

fn partial_check(g: &GroupArgs, seed: u64) -> CliResult {
    if kind(g)? != GroupKind::Sl {
        return Err(CliError::Input("the derivative identity is checked for the special linear group".into()));
    }
    let fib = build_fibration(GroupKind::Sl, g.n, g.k)?;
    let checks = all_partial_checks(&fib, seed)?;
    let all = checks.iter().all(|c| c.passed());
    if g.json {
        outln!("{}", serde_json::to_string(&checks).expect("checks serialize"));
    } else {
        for c in &checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            let mut line = format!("{tag} L={} k={} l={} i={} identity={}", c.factor, c.k, c.l, c.i, c.identity);
            if let Some(v) = &c.vanishing {
                if v.expected_nonzero {
                    line.push_str(&format!(
                        " nonzero: {}/{} samples{}",
                        v.nonzero_samples,
                        v.samples,
                        if v.identically_zero { " (identically zero)" } else { "" }
                    ));
                } else {
                    line.push_str(&format!(" zero: identically_zero={}", v.identically_zero));
                }
            }
            outln!("{line}");
        }
        outln!("{} of {} index tuples pass", checks.iter().filter(|c| c.passed()).count(), checks.len());
    }
    Ok(if all { 0 } else { 1 })
}

fn reduce(args: &ReduceArgs) -> CliResult {
    let g = &args.group;
    let red = fiber_reduce(kind(g)?, g.n, g.k, &parse_rationals(&args.a)?)?;
    let ok = red.round_trip()?;
    if g.json {
        #[derive(Serialize)]
        struct ReduceJson {
            substitutions: Vec<(String, String)>,
            residual: Vec<String>,
            free: Vec<String>,
            round_trip: bool,
        }
        let j = ReduceJson {
            substitutions: red.substitutions.iter().map(|(n, v)| (n.clone(), v.render())).collect(),
            residual: red.residual.generators().iter().map(|p| p.render()).collect(),
            free: red.free.clone(),
            round_trip: ok,
        };
        outln!("{}", serde_json::to_string_pretty(&j).expect("reduction serializes"));
    } else {
        crate::emit(&red.render());
        outln!("round trip: {}", if ok { "exact" } else { "FAILED" });
    }
    Ok(if ok { 0 } else { 1 })
}

fn variety(args: &SmoothArgs) -> Result<GvVariety, CliError> {
    let g = &args.group;
    let a = parse_rationals(&args.a)?;
    Ok(match kind(g)? {
        GroupKind::Sl => {
            let i = args.i.ok_or_else(|| CliError::Input("--i is required for sl".into()))?;
            if a.len() != 1 {
                return Err(CliError::Input("--a takes one value for sl".into()));
            }
            gv_variety_sl(g.n, g.k, i, a[0].clone())?
        }
        GroupKind::Sp => gv_variety_sp(g.n, g.k, &a)?,
    })
}

fn smooth(args: &SmoothArgs) -> CliResult {
    let v = variety(args)?;
    let s = smoothness_check(&v)?;
    if args.group.json {
        outln!("{}", serde_json::to_string(&s).expect("verdict serializes"));
    } else {
        outln!("{}", v.describe());
        outln!("classifier: {}", s.classifier);
        outln!("groebner: {}", s.groebner);
        let agree = match s.agree {
            Some(true) => "yes",
            Some(false) => "NO",
            None => "undecided",
        };
        outln!("agree: {agree}");
    }
    Ok(match (s.groebner, s.agree) {
        (GroebnerVerdict::BudgetExceeded, _) => EXIT_BUDGET,
        (_, Some(false)) => 1,
        _ => 0,
    })
}

pub fn run(cmd: &GvCommand, seed: u64) -> CliResult {
    match cmd {
        GvCommand::Build(a) => build(a),
        GvCommand::PartialCheck(a) => partial_check(a, seed),
        GvCommand::Reduce(a) => reduce(a),
        GvCommand::Smooth(a) => smooth(a),
    }
}
