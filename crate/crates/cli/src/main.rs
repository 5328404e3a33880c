//! Command-line front end. Every subcommand reads one JSON instance and
//! prints a JSON result on stdout; diagnostics go to stderr.
//!
//! Exit codes: 0 success or a true verdict, 1 a false verdict, 2 bad input,
//! 3 a resource limit.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use multimat::instance::{InstanceDocument, NetworkDoc, Which};
use multimat::norm::EqnOptions;
use multimat::svg::{render_ball, render_network, SvgStyle};
use multimat::{
    build_ball, check_axioms, energy, grid_oracle, label_layout, lift, mass, project, solve_grid, solve_mmtp,
    verify_calibration, verify_eqn_main, Error, LabelPermutation, Network, NormBall,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "multimat", version, about = "Discrete multi-material branched transport")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Tolerance for verdicts.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Largest number of Steiner points in a candidate tree.
    #[arg(long, global = true)]
    max_steiner: Option<usize>,
    /// Above this many label permutations, a sample of this size is used.
    #[arg(long, global = true)]
    max_perms: Option<u64>,
    /// Seed for sampled permutation searches.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the cost axioms on the cost's box.
    CheckCost { file: PathBuf },
    /// Build the norm for the boundary's label layout and verify it.
    BuildNorm { file: PathBuf },
    /// Energy of the (material) network.
    Energy { file: PathBuf },
    /// Mass of the labeled network.
    Mass { file: PathBuf },
    /// Lift the material network to a labeled one.
    Lift { file: PathBuf },
    /// Project the labeled network to a material one.
    Project { file: PathBuf },
    /// Check the calibration against the labeled network.
    VerifyCalibration { file: PathBuf },
    /// Search trees with few Steiner points for a minimiser.
    Solve { file: PathBuf },
    /// Exhaustive minimisation over grid paths.
    Oracle { file: PathBuf },
    /// Draw the network, or the unit ball when there is none.
    Render { file: PathBuf },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Resource(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, verdict)) => {
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&value).unwrap_or_default());
            if verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("multimat: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<InstanceDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    InstanceDocument::parse(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Outcome {
    let c = &cli.common;
    match &cli.command {
        Command::CheckCost { file } => check_cost(&read(file)?),
        Command::BuildNorm { file } => build_norm(&read(file)?, c),
        Command::Energy { file } => {
            let doc = read(file)?;
            let net = doc.material_network(Which::Network)?;
            Ok((json!({ "energy": energy(&net, &doc.cost()?)? }), true))
        }
        Command::Mass { file } => {
            let doc = read(file)?;
            let layout = label_layout(&doc.boundary()?)?;
            let lnet = doc.labeled_network(Which::Network, layout.total())?;
            let ball = ball_for(&doc)?;
            Ok((json!({ "mass": mass(&lnet, &ball)? }), true))
        }
        Command::Lift { file } => lift_cmd(read(file)?, c),
        Command::Project { file } => project_cmd(read(file)?, c),
        Command::VerifyCalibration { file } => verify(&read(file)?, c),
        Command::Solve { file } => solve(read(file)?, c),
        Command::Oracle { file } => oracle(&read(file)?),
        Command::Render { file } => render(&read(file)?, c),
    }
}

fn ball_for(doc: &InstanceDocument) -> Result<NormBall, Failure> {
    if let Some(ball) = doc.explicit_ball()? {
        return Ok(ball);
    }
    let layout = label_layout(&doc.boundary()?)?;
    Ok(build_ball(&doc.cost()?, &layout)?)
}

fn sigma_json(sigma: &LabelPermutation) -> Value {
    json!(sigma.per_material)
}

fn check_cost(doc: &InstanceDocument) -> Outcome {
    let cost = doc.cost()?;
    let report = check_axioms(&cost)?;
    let ok = report.admissible();
    let mut value = serde_json::to_value(&report).map_err(|e| input(e.to_string()))?;
    value["admissible"] = json!(ok);
    Ok((value, ok))
}

fn build_norm(doc: &InstanceDocument, c: &Common) -> Outcome {
    let cost = doc.cost()?;
    let layout = label_layout(&doc.boundary()?)?;
    let ball = build_ball(&cost, &layout)?;
    let mut opts = EqnOptions {
        tol: c.tol,
        ..EqnOptions::default()
    };
    if let Some(v) = c.max_perms {
        opts.max_perms = v as usize;
    }
    if let Some(v) = c.seed {
        opts.seed = v;
    }
    let report = verify_eqn_main(&cost, &ball, &layout, &opts)?;
    let export = ball.export();
    if let Some(path) = &c.output {
        let text = serde_json::to_string_pretty(&export).map_err(|e| input(e.to_string()))?;
        write_output(path, &(text + "\n"))?;
    }
    let value = json!({
        "labels": layout.total(),
        "counts": layout.counts(),
        "construction": export.construction,
        "extreme_points": ball.extreme_points()?,
        "eqn_main": report,
        "export": export,
    });
    Ok((value, report.holds))
}

fn lift_cmd(mut doc: InstanceDocument, c: &Common) -> Outcome {
    let net = doc.material_network(Which::Network)?;
    let layout = label_layout(&doc.boundary()?)?;
    let (lnet, sigma) = lift(&net, &layout)?;
    doc.network = Some(NetworkDoc::from_network(lnet.as_network(), true));
    emit_document(&doc, c, json!({ "sigma": sigma_json(&sigma), "labels": lnet.labels() }))
}

fn project_cmd(mut doc: InstanceDocument, c: &Common) -> Outcome {
    let layout = label_layout(&doc.boundary()?)?;
    let lnet = doc.labeled_network(Which::Network, layout.total())?;
    let net = project(&lnet, &layout)?;
    doc.network = Some(NetworkDoc::from_network(&net, false));
    emit_document(&doc, c, json!({}))
}

/// Writes the document to `-o` if given and reports it together with
/// `extra` on stdout.
fn emit_document(doc: &InstanceDocument, c: &Common, mut extra: Value) -> Outcome {
    let text = doc.to_canonical_string()?;
    if let Some(path) = &c.output {
        write_output(path, &text)?;
    }
    extra["document"] = serde_json::from_str(&text).map_err(|e| input(e.to_string()))?;
    Ok((extra, true))
}

fn verify(doc: &InstanceDocument, c: &Common) -> Outcome {
    let layout = label_layout(&doc.boundary()?)?;
    let lnet = doc.labeled_network(Which::Network, layout.total())?;
    let ball = ball_for(doc)?;
    let report = verify_calibration(&doc.form()?, &lnet, &ball, c.tol)?;
    if !report.verdict {
        if let Some(w) = &report.edge_witness {
            eprintln!(
                "condition (i) fails on edge {}: |<omega; {:?}, {:?}>| = {:.12}, gauge {:.12}",
                w.edge,
                w.tangent,
                w.multiplicity,
                w.pairing.abs(),
                w.gauge
            );
        }
    }
    let ok = report.verdict;
    Ok((serde_json::to_value(&report).map_err(|e| input(e.to_string()))?, ok))
}

fn solve(mut doc: InstanceDocument, c: &Common) -> Outcome {
    let boundary = doc.boundary()?;
    let cost = doc.cost()?;
    let mut opts = doc.solve_options();
    opts.tol = c.tol;
    if let Some(v) = c.max_steiner {
        opts.max_steiner = v;
    }
    if let Some(v) = c.max_perms {
        opts.max_perms = v as u128;
    }
    if let Some(v) = c.seed {
        opts.seed = v;
    }
    let r = solve_mmtp(&boundary, &cost, &opts)?;
    doc.network = Some(NetworkDoc::from_network(&r.network, false));
    let extra = json!({
        "energy": r.energy,
        "mass": r.mass,
        "sigma": sigma_json(&r.sigma),
        "steiner_points": r.steiner_points,
        "note": "best within the enumerated class of trees",
        "stats": {
            "permutations": r.stats.permutations,
            "sampled": r.stats.sampled,
            "topologies": r.stats.topologies,
            "candidates": r.stats.candidates,
        },
        "trace": {
            "total_iterations": r.trace.total_iterations,
            "nonconverged": r.trace.nonconverged,
            "best_iterations": r.trace.best_iterations,
            "best_converged": r.trace.best_converged,
        },
        "labeled": NetworkDoc::from_network(r.labeled.as_network(), true),
    });
    emit_document(&doc, c, extra)
}

fn oracle(doc: &InstanceDocument) -> Outcome {
    let boundary = doc.boundary()?;
    let cost = doc.cost()?;
    let grid = doc.grid.clone().ok_or_else(|| input("oracle needs a \"grid\" section"))?;
    let exact = grid_oracle(&boundary, &cost, &grid)?;
    let bb = solve_grid(&boundary, &cost, &grid)?;
    let value = json!({
        "oracle": exact.value,
        "grid_solver": bb.value,
        "sigma": sigma_json(&exact.sigma),
        "explored": exact.explored,
        "network": NetworkDoc::from_network(&exact.network, false),
    });
    Ok((value, true))
}

fn render(doc: &InstanceDocument, c: &Common) -> Outcome {
    let path = c.output.as_ref().ok_or_else(|| input("render needs -o <file>"))?;
    let style = SvgStyle::default();
    let (svg, what) = match &doc.network {
        Some(n) if n.labeled => {
            let layout = label_layout(&doc.boundary()?)?;
            let lnet = doc.labeled_network(Which::Network, layout.total())?;
            (render_network(lnet.as_network(), &style)?, "labeled network")
        }
        Some(_) => {
            let net: Network = doc.material_network(Which::Network)?;
            (render_network(&net, &style)?, "network")
        }
        None => (render_ball(&ball_for(doc)?, &style)?, "ball"),
    };
    write_output(path, &svg)?;
    Ok((json!({ "rendered": what, "output": path.display().to_string() }), true))
}
