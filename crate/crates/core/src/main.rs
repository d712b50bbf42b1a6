//! Command-line front end: construct pairs, enumerate abelian
//! subspaces, run the verification suite, print spectra.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on
//! usage/parse errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::{One, Signed, Zero};
use serde_json::json;

use casimir::abelian::{abelian_json, enumerate_abelian_bstable};
use casimir::affine::build_affine_roots;
use casimir::ext::{finite_ext_basis, finite_k_action, finite_side_casimir, ExtComplex};
use casimir::homology::{
    decompose_module, describe_json, run_suite, spectrum_json, suite_json, Verification,
    SUITE_NAMES,
};
use casimir::pair::{build_pair, PairSpec, SymmetricPair};
use casimir::rat::{fmt_rat, parse_rat, rat, rat_int, zero_vec, Rat};
use casimir::SparseRatMatrix;

#[derive(Parser)]
#[command(
    name = "casimir",
    about = "Exact verification of Casimir/Laplacian identities on symmetric pairs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the construction data of a pair
    Describe(CommonArgs),
    /// Enumerate abelian Borel-stable subspaces of p
    Abelian(CommonArgs),
    /// Run the exact verification suite
    Verify(VerifyArgs),
    /// Casimir spectrum on each exterior power of p
    Spectrum(CommonArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Pair spec, e.g. "A2:switch" or "B2:signs=+-"
    #[arg(long)]
    pair: String,
    /// Largest exterior degree
    #[arg(long, default_value_t = 4)]
    pmax: usize,
    /// Largest energy s, a rational in half-integer steps (e.g. 3, 5/2)
    #[arg(long, default_value = "3")]
    smax: String,
    /// d-value bound for stored affine roots
    #[arg(long, default_value = "3")]
    dbound: String,
    /// Output format: table or json
    #[arg(long, default_value = "table")]
    format: String,
    /// Write the report to this path instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of parallel verification tasks
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Perturb one structure constant before verifying (sensitivity
    /// check: the suite must then fail)
    #[arg(long, hide = true, default_value_t = false)]
    negative_control: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Which checks to run: garland | eigen | w | gl | finito | all
    #[arg(long, default_value = "all")]
    which: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Describe(args) => {
            let sp = build(&args)?;
            let (text, value) = describe(&sp, &args)?;
            emit(&args, text, value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Abelian(args) => {
            let sp = build(&args)?;
            let (text, value) = abelian(&sp, &args)?;
            emit(&args, text, value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Spectrum(args) => {
            let sp = build(&args)?;
            let (text, value) = spectrum(&sp, &args)?;
            emit(&args, text, value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(vargs) => {
            let sp = build(&vargs.common)?;
            let (pass, text, value) = verify(&sp, &vargs)?;
            emit(&vargs.common, text, value)?;
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn build(args: &CommonArgs) -> Result<SymmetricPair, String> {
    let spec = PairSpec::parse(&args.pair).map_err(|e| e.to_string())?;
    let mut sp = build_pair(&spec).map_err(|e| e.to_string())?;
    if args.negative_control {
        sp.corrupt_structure_constant();
    }
    Ok(sp)
}

fn parse_half_integer(s: &str, what: &str) -> Result<i64, String> {
    let r = parse_rat(s).ok_or_else(|| format!("bad rational for {what}: {s:?}"))?;
    let twice = &r * rat_int(2);
    if !twice.denom().is_one() || twice.is_negative() {
        return Err(format!(
            "{what} must be a nonnegative half-integer, got {s}"
        ));
    }
    (twice.numer())
        .try_into()
        .map_err(|_| format!("{what} too large"))
}

fn emit(args: &CommonArgs, text: String, value: serde_json::Value) -> Result<(), String> {
    let payload = if args.format.eq_ignore_ascii_case("json") {
        let mut s = serde_json::to_string_pretty(&value).map_err(|e| e.to_string())?;
        s.push('\n');
        s
    } else if args.format.eq_ignore_ascii_case("table") {
        text
    } else {
        return Err(format!("unknown format {:?}", args.format));
    };
    match &args.out {
        None => {
            print!("{payload}");
            Ok(())
        }
        Some(path) => std::fs::write(path, payload).map_err(|e| e.to_string()),
    }
}

fn fmt_weight(w: &[Rat]) -> String {
    let parts: Vec<String> = w.iter().map(fmt_rat).collect();
    format!("({})", parts.join(", "))
}

fn describe(sp: &SymmetricPair, args: &CommonArgs) -> Result<(String, serde_json::Value), String> {
    let twice_dbound = parse_half_integer(&args.dbound, "--dbound")?.max(2);
    let ar = build_affine_roots(sp, twice_dbound);
    let mut text = String::new();
    text += &format!("pair {}\n", sp.name());
    text += &format!(
        "dim g = {}, dim k = {}, dim p = {}, rank k = {}\n",
        sp.dim_g(),
        sp.dim_k(),
        sp.dim_p(),
        sp.rank_k()
    );
    text += &format!("Delta0+ ({} roots):\n", sp.delta0_pos.len());
    for &i in &sp.delta0_pos {
        text += &format!("  {}\n", fmt_weight(&sp.k_weights[i]));
    }
    let zero_mult = sp
        .p_weights
        .iter()
        .filter(|w| w.iter().all(|x| x.is_zero()))
        .count();
    text += &format!(
        "Delta_p: {} nonzero weights, zero weight multiplicity {}\n",
        sp.dim_p() - zero_mult,
        zero_mult
    );
    text += &format!("simple affine roots ({}):\n", ar.simple.len());
    let rho = ar.rho();
    for alpha in &ar.simple {
        text += &format!(
            "  s = {}, finite = {}, rho(coroot) = {}\n",
            fmt_rat(&alpha.delta),
            fmt_weight(&alpha.finite),
            fmt_rat(&ar.coroot_pairing(&rho, alpha))
        );
    }
    text += &format!("rho0 = {}\n", fmt_weight(&sp.rho0));
    Ok((text, describe_json(sp, &ar)))
}

fn abelian(sp: &SymmetricPair, args: &CommonArgs) -> Result<(String, serde_json::Value), String> {
    let twice_dbound = parse_half_integer(&args.dbound, "--dbound")?.max(2);
    let ar = build_affine_roots(sp, twice_dbound.max(6));
    let list = enumerate_abelian_bstable(sp);
    let mut text = String::new();
    text += &format!("abelian b0-stable subspaces of p for {}\n", sp.name());
    for a in &list {
        let word = ar
            .find_w_for_subspace(a)
            .map_err(|e| format!("no Weyl word for {:?}: {e}", a.p_indices))?;
        let weights: Vec<String> = a.weights(sp).iter().map(|w| fmt_weight(w)).collect();
        text += &format!(
            "  dim {}: weights [{}], word {:?}, mu = {}\n",
            a.dim(),
            weights.join(", "),
            word.0,
            fmt_weight(&a.mu(sp))
        );
    }
    text += &format!("total: {}\n", list.len());
    let mut value = json!({
        "pair": sp.name(),
        "count": list.len(),
        "subspaces": abelian_json(sp, &list),
    });
    if matches!(sp.spec.involution, casimir::pair::Involution::Switch) {
        let rank = sp.spec.base.rank();
        let expected = 1usize << rank;
        let verdict = list.len() == expected;
        text += &format!(
            "Peterson count: {} {} 2^{}\n",
            list.len(),
            if verdict { "=" } else { "!=" },
            rank
        );
        value["peterson"] = json!({ "expected": expected, "match": verdict });
    }
    Ok((text, value))
}

fn spectrum(sp: &SymmetricPair, args: &CommonArgs) -> Result<(String, serde_json::Value), String> {
    let pmax = args.pmax.min(sp.dim_p());
    let ideals = enumerate_abelian_bstable(sp);
    let mut text = String::new();
    text += &format!(
        "Casimir spectrum on exterior powers of p for {}\n",
        sp.name()
    );
    for p in 0..=pmax {
        let fx = finite_ext_basis(sp, p);
        let omega = finite_side_casimir(sp, p);
        let raisings: Vec<SparseRatMatrix> = sp
            .delta0_simple
            .iter()
            .map(|&b| {
                let mut coeffs = zero_vec(sp.dim_k());
                coeffs[b] = Rat::one();
                finite_k_action(sp, &fx, &coeffs)
            })
            .collect();
        let comps = decompose_module(sp, &fx.weights, &raisings, &omega);
        let max_scalar = comps
            .iter()
            .map(|c| c.casimir_scalar.clone())
            .max()
            .unwrap_or_else(Rat::zero);
        let witnesses: Vec<String> = ideals
            .iter()
            .filter(|a| a.dim() == p)
            .map(|a| {
                let ws: Vec<String> = a.weights(sp).iter().map(|w| fmt_weight(w)).collect();
                format!("{{{}}}", ws.join(", "))
            })
            .collect();
        text += &format!(
            "p = {p}: dim = {}, max scalar = {}, bound p/2 = {}, witnesses: {}\n",
            fx.dim(),
            fmt_rat(&max_scalar),
            fmt_rat(&rat(p as i64, 2)),
            if witnesses.is_empty() {
                "none".to_string()
            } else {
                witnesses.join(" ")
            }
        );
        for c in &comps {
            text += &format!(
                "    hw {} x{}, dim {}, casimir {}\n",
                fmt_weight(&c.highest_weight),
                c.multiplicity,
                c.dimension,
                fmt_rat(&c.casimir_scalar)
            );
        }
    }
    Ok((text, spectrum_json(sp, pmax)))
}

fn verify(
    sp: &SymmetricPair,
    vargs: &VerifyArgs,
) -> Result<(bool, String, serde_json::Value), String> {
    let args = &vargs.common;
    let which = vargs.which.to_ascii_lowercase();
    if !SUITE_NAMES.contains(&which.as_str()) {
        return Err(format!("unknown --which {:?}", vargs.which));
    }
    let twice_smax = parse_half_integer(&args.smax, "--smax")?;
    let twice_dbound = parse_half_integer(&args.dbound, "--dbound")?.max(2);
    if twice_smax < args.pmax as i64 {
        eprintln!(
            "note: --smax {} < pmax/2; bidegrees above the energy bound are skipped",
            args.smax
        );
    }

    let checks: Vec<Verification> = if args.jobs > 1 && (which == "all" || which == "garland") {
        // fan the Garland sweep out over a pool; everything else runs in
        // the canonical sequential order, and results merge by task order
        // so the output is schedule-independent
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs)
            .build()
            .map_err(|e| e.to_string())?;
        let tasks: Vec<(usize, i64)> = (0..=args.pmax)
            .flat_map(|p| (0..=twice_smax).map(move |ts| (p, ts)))
            .collect();
        let mut checks: Vec<Verification> = pool.install(|| {
            tasks
                .par_iter()
                .map(|&(p, ts)| {
                    let mut cx = ExtComplex::new(sp);
                    let (ok, residual) = cx.verify_garland(p, ts);
                    let mut v = Verification {
                        name: format!("garland p={p} s={}", fmt_rat(&rat(ts, 2))),
                        pass: ok,
                        failures: Vec::new(),
                    };
                    if !ok {
                        v.failures
                            .push(format!("residual has {} nonzero entries", residual.nnz()));
                    }
                    v
                })
                .collect()
        });
        if which == "all" {
            for rest in ["eigen", "w", "gl", "finito"] {
                checks.extend(run_suite(sp, rest, args.pmax, twice_smax, twice_dbound));
            }
        }
        checks
    } else {
        run_suite(sp, &which, args.pmax, twice_smax, twice_dbound)
    };

    let pass = checks.iter().all(|c| c.pass);
    let mut text = format!("verification of {} (--which {which})\n", sp.name());
    for c in &checks {
        text += &format!("  [{}] {}\n", if c.pass { "pass" } else { "FAIL" }, c.name);
        for f in &c.failures {
            text += &format!("      {f}\n");
        }
    }
    text += &format!("overall: {}\n", if pass { "pass" } else { "FAIL" });
    let value = suite_json(sp, &which, &checks, Some(args.pmax));
    Ok((pass, text, value))
}
