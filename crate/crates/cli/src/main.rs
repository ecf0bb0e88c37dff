//! `nonsplit`: build, inspect and verify the non-split extension reports.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 hypothesis not
//! satisfied, 3 internal consistency violation, 4 failed certificate check.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nonsplit_core::build::{build_nonsplit_sequence, determinant_identity_demo, quadratic_example, run_pipeline};
use nonsplit_core::coh::{SplitVerdict, H1};
use nonsplit_core::job::module_from_recipe;
use nonsplit_core::report::{vec_json, Report};
use nonsplit_core::verify::verify_report_str;
use nonsplit_core::{Error, GroupRecipe, JobSpec, Result};
use serde_json::json;

#[derive(Parser)]
#[command(name = "nonsplit", version, about = "Non-split module extensions over finite matrix groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the extension, witness and obstruction module and write a report
    Construct {
        #[command(flatten)]
        job: JobArgs,
        /// report path (written atomically); stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check every certificate in a report
    Verify { report: PathBuf },
    /// Print dim Z¹, dim B¹ and dim H¹ of a module
    H1 {
        #[command(flatten)]
        job: JobArgs,
        /// e.g. `sym:2`, `dual(U)`, `tensor(natural,frob)`
        #[arg(long)]
        module: String,
        /// also print the Z¹ basis and the H¹ complement (generator coordinates)
        #[arg(long)]
        basis: bool,
    },
    /// Run the quadratic example ⟨x²,y²⟩ ⊂ ⟨x²,y²,xy⟩ (p = n = 2)
    Quadratic {
        #[command(flatten)]
        job: JobArgs,
    },
    /// Evaluate the 3×3 determinant identity on random triples
    Detcheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct JobArgs {
    /// JSON job file; replaces all other job flags
    #[arg(long, conflicts_with_all = ["p", "k", "modulus", "n", "group", "order_cap", "seed"])]
    job: Option<PathBuf>,
    /// characteristic
    #[arg(long, required_unless_present = "job")]
    p: Option<u32>,
    /// extension degree
    #[arg(long)]
    k: Option<u32>,
    /// modulus coefficients, lowest degree first, comma separated
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    /// matrix size for family-a
    #[arg(long)]
    n: Option<usize>,
    /// family-a, zpxzp or file:<path>
    #[arg(long)]
    group: Option<String>,
    /// abort group enumeration beyond this many elements
    #[arg(long)]
    order_cap: Option<usize>,
    /// seed for randomized intertwiner search
    #[arg(long)]
    seed: Option<u64>,
}

impl JobArgs {
    fn to_job(&self) -> Result<JobSpec> {
        if let Some(path) = &self.job {
            let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            return serde_json::from_str(&text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())));
        }
        let mut job = JobSpec::new(self.p.expect("required by clap"), self.k.unwrap_or(1), self.n.unwrap_or(2));
        job.modulus = self.modulus.clone();
        if let Some(g) = &self.group {
            job.group = g.parse::<GroupRecipe>()?;
        }
        if let Some(cap) = self.order_cap {
            job.order_cap = cap;
        }
        job.seed = self.seed.unwrap_or(0);
        Ok(job)
    }
}

/// Writes next to the destination, then renames over it.
fn write_atomically(path: &Path, contents: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    let name = path.file_name().ok_or_else(|| Error::Usage(format!("{} is not a file path", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let mut file = fs::File::create(&tmp).map_err(io)?;
    file.write_all(contents.as_bytes()).map_err(io)?;
    file.sync_all().map_err(io)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io(e)
    })
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Io(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("value serializes");
    text.push('\n');
    emit(&text)
}

fn construct(job: &JobSpec, out: Option<&Path>) -> Result<()> {
    let group = job.build_group()?;
    let pipeline = run_pipeline(&group, job.seed)?;
    let report = Report::from_pipeline(job, &pipeline)?;
    let text = report.to_json_string();
    match out {
        Some(path) => write_atomically(path, &text)?,
        None => emit(&text)?,
    }
    eprintln!(
        "group order {}, dims (V, W, U, Ũ) = ({}, {}, {}, {}), non-split, dim X = {}",
        group.order(),
        report.construction.dims.v,
        report.construction.dims.w,
        report.construction.dims.u,
        report.construction.dims.u_tilde,
        report.obstruction.dim
    );
    Ok(())
}

fn verify(path: &Path) -> Result<()> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let v = verify_report_str(&text)?;
    let mut text: String = v.checks.iter().map(|c| format!("ok  {c}\n")).collect();
    text.push_str(&format!("verified {} checks\n", v.checks.len()));
    emit(&text)
}

fn h1(job: &JobSpec, recipe: &str, basis: bool) -> Result<()> {
    let group = job.build_group()?;
    let module = module_from_recipe(&group, recipe)?;
    let h = H1::compute(&module)?;
    let f = group.field();
    let mut out = json!({
        "module": recipe,
        "group_order": group.order(),
        "dim": module.dim(),
        "dim_z1": h.dim_z1(),
        "dim_b1": h.dim_b1(),
        "dim_h1": h.dim(),
    });
    if basis {
        out["z1_basis"] = json!(h.z1_basis().iter().map(|v| vec_json(f, v)).collect::<Vec<_>>());
        out["h1_complement"] = json!(h.complement_basis().iter().map(|v| vec_json(f, v)).collect::<Vec<_>>());
    }
    print_json(&out)
}

fn quadratic(job: &JobSpec) -> Result<()> {
    let group = job.build_group()?;
    let construction = if group.nonsplit_hypothesis().satisfied { Some(build_nonsplit_sequence(&group)?) } else { None };
    let q = quadratic_example(&group, construction.as_ref(), job.seed)?;
    let f = group.field();
    let verdict = match &q.verdict {
        SplitVerdict::Split { u, .. } => json!({"verdict": "split", "u": vec_json(f, u)}),
        SplitVerdict::NonSplit(c) => json!({"verdict": "non_split", "y": vec_json(f, &c.y)}),
    };
    let comparison = match (&q.comparison, &construction) {
        (Some(cmp), Some(c)) => json!({
            "intertwiner_space_dim": cmp.space_dim,
            "modules_isomorphic": cmp.modules_isomorphic(),
            "classes_match": cmp.classes_match(),
            "lambda": cmp.lambda.map(|l| f.coeffs(l)),
            "rechecked": q.comparison_holds(c),
        }),
        _ => json!(null),
    };
    print_json(&json!({
        "group_order": group.order(),
        "hypothesis_satisfied": q.hypothesis.satisfied,
        "hypothesis": q.hypothesis.detail,
        "sequence": verdict,
        "comparison": comparison,
    }))
}

fn detcheck(seed: u64) -> Result<()> {
    let cases = determinant_identity_demo(seed)?;
    let all = cases.iter().all(|c| c.all_zero);
    print_json(&json!({"cases": cases, "all_zero": all}))?;
    if all {
        Ok(())
    } else {
        Err(Error::TheoremViolation("determinant identity evaluated to a nonzero polynomial".into()))
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Construct { job, out } => construct(&job.to_job()?, out.as_deref()),
        Command::Verify { report } => verify(&report),
        Command::H1 { job, module, basis } => h1(&job.to_job()?, &module, basis),
        Command::Quadratic { job } => quadratic(&job.to_job()?),
        Command::Detcheck { seed } => detcheck(seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
