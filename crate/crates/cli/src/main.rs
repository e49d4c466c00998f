use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use tangal::csep::{self, FrobeniusJson, FrobeniusMonoid};
use tangal::gset::{self, GSet, GSetJson};
use tangal::hopf::{self, HopfJson};
use tangal::suite::{self, SuiteOptions};
use tangal::{Algebra, Error, Field, FiniteGroup, HopfAlgebra};

/// Exact computations with separable algebras, finite Hopf algebras and
/// finite G-sets. Reports are JSON.
#[derive(Parser, Debug)]
#[command(name = "tangal", version)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = suite::DEFAULT_SEED)]
    seed: u64,
    /// Search budget (candidate count) for enumerations.
    #[arg(long, global = true, default_value_t = hopf::DEFAULT_BUDGET)]
    budget: u128,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Emit JSON (the only format).
    #[arg(long, global = true, default_value_t = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate an algebra or Hopf algebra and report separability, nilradical and π₀.
    Algcheck { file: PathBuf },
    /// Round trips through linearization and spectrum for a G-set or a separable monoid.
    Roundtrip {
        file: PathBuf,
        /// Group the G-set must be over.
        #[arg(long)]
        group: Option<PathBuf>,
        /// Prime field used to linearize a G-set.
        #[arg(long, default_value_t = 7)]
        field: u32,
    },
    /// Compare the three groups of the end-to-end pipeline.
    Gamma {
        /// Group table JSON, or a catalog name such as S3.
        group: String,
        #[arg(long, default_value_t = 7)]
        field: u32,
    },
    /// Run the acceptance criteria.
    Suite {
        /// Criterion id, module name, or part of a criterion name.
        #[arg(long)]
        filter: Option<String>,
        /// Include wall-clock timings (breaks byte-identical output).
        #[arg(long)]
        timings: bool,
    },
}

enum Failure {
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::SearchBudgetExceeded { .. } => Failure::Budget(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::Input(format!(
            "{}: malformed JSON at line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path, v: Value) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn prime_field(p: u32) -> Result<Field, Failure> {
    Ok(Field::new(p, 1)?)
}

fn algebra_summary(a: &Algebra, seed: u64) -> Result<Value, Failure> {
    let (ext, prim) = a.primitive_idempotents(true, seed)?;
    let ranks: Vec<usize> = (0..a.dim())
        .map(|i| a.mult_operator(&tangal::matrix::vec::unit(a.dim(), i)).map(|m| m.rank()))
        .collect::<Result<_, _>>()?;
    Ok(json!({
        "dim": a.dim(),
        "separable": a.is_separable(),
        "trace_form_rank": a.trace_form().rank(),
        "basis_operator_ranks": ranks,
        "nilradical_dim": a.nilradical().len(),
        "pi0_dim": a.pi0().dim(),
        "components": a.component_count(),
        "splitting_degree": ext.n(),
        "absolutely_primitive_idempotents": prim.len(),
        "points": a.points().len(),
    }))
}

fn algcheck(file: &Path, seed: u64) -> Result<Value, Failure> {
    let v = read_json(file)?;
    if v.get("comult").is_some() {
        let h = HopfAlgebra::from_json(&parse::<HopfJson>(file, v)?)?;
        let mut out = algebra_summary(h.algebra(), seed)?;
        let (p0, _) = hopf::pi0_hopf(&h)?;
        let (conn, _) = hopf::identity_component(&h)?;
        let pts = hopf::points_group(&h)?;
        let obj = out.as_object_mut().expect("object");
        obj.insert("kind".into(), json!("hopf"));
        obj.insert("cocommutative".into(), json!(h.is_cocommutative()));
        obj.insert("points_group_order".into(), json!(pts.group.order()));
        obj.insert("pi0_hopf_dim".into(), json!(p0.dim()));
        obj.insert("identity_component_dim".into(), json!(conn.dim()));
        Ok(out)
    } else {
        let a = Algebra::from_json(&parse(file, v)?)?;
        let mut out = algebra_summary(&a, seed)?;
        out.as_object_mut().expect("object").insert("kind".into(), json!("algebra"));
        Ok(out)
    }
}

fn load_group(spec: &str) -> Result<FiniteGroup, Failure> {
    let path = Path::new(spec);
    if !path.exists() {
        if let Some(g) = FiniteGroup::by_name(spec) {
            return Ok(g);
        }
    }
    Ok(FiniteGroup::from_json(&parse(path, read_json(path)?)?)?)
}

fn roundtrip(file: &Path, group: Option<&Path>, p: u32, seed: u64, budget: u128) -> Result<Value, Failure> {
    let v = read_json(file)?;
    let f = prime_field(p)?;
    if v.get("mu").is_some() {
        let m = FrobeniusMonoid::from_json(&parse::<FrobeniusJson>(file, v)?)?;
        return match csep::roundtrip_monoid(&m, seed) {
            Ok((s, iso)) => Ok(json!({
                "kind": "monoid",
                "roundtrip": "iso",
                "size": s.gset.size(),
                "orbits": gset::orbits(&s.gset).parts.len(),
                "matrix": iso.matrix.to_rows(),
            })),
            Err(Error::NeedsExtension(m)) => Ok(json!({ "kind": "monoid", "needs_extension": m })),
            Err(e) => Err(e.into()),
        };
    }
    let x = GSet::from_json(&parse::<GSetJson>(file, v)?)?;
    if let Some(gp) = group {
        let g = load_group(&gp.to_string_lossy())?;
        if &g != x.group() {
            return Err(Failure::Input("G-set is over a different group".into()));
        }
    }
    let m = csep::linearize(&x, &f)?;
    let report = m.report();
    let iso = match csep::roundtrip_gset(&x, &f, seed) {
        Ok(iso) => iso,
        Err(Error::NeedsExtension(m)) => return Ok(json!({ "kind": "gset", "needs_extension": m })),
        Err(e) => return Err(e.into()),
    };
    let (_, back) = csep::roundtrip_monoid(&m, seed)?;
    let endo = csep::comonoid_homs(&m, &m, budget, seed)?.len();
    Ok(json!({
        "kind": "gset",
        "roundtrip": if iso.map.len() == x.size() { "iso" } else { "fail" },
        "size": x.size(),
        "fiber": gset::fiber(&x).len(),
        "orbits": gset::orbits(&x).parts.len(),
        "csep_passed": report.passed(),
        "bijection": iso.map,
        "monoid_roundtrip_identity": back.matrix.is_identity(),
        "comonoid_endomorphisms": endo,
        "equivariant_endomorphisms": gset::homs(&x, &x, budget)?.len(),
    }))
}

fn gamma(group: &str, p: u32, seed: u64, budget: u128) -> Result<Value, Failure> {
    let g = load_group(group)?;
    let r = csep::gamma_report(&g, &prime_field(p)?, budget, seed)?;
    serde_json::to_value(r).map_err(|e| Failure::Input(e.to_string()))
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    match &cli.command {
        Command::Algcheck { file } => algcheck(file, cli.seed),
        Command::Roundtrip { file, group, field } => roundtrip(file, group.as_deref(), *field, cli.seed, cli.budget),
        Command::Gamma { group, field } => gamma(group, *field, cli.seed, cli.budget),
        Command::Suite { filter, timings } => {
            let r = suite::run_suite(&SuiteOptions {
                seed: cli.seed,
                filter: filter.clone(),
                timings: *timings,
            });
            serde_json::to_value(r).map_err(|e| Failure::Input(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = cli.json;
    match run(&cli) {
        Ok(v) => {
            let text = serde_json::to_string_pretty(&v).expect("serializable") + "\n";
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
