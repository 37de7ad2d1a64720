use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ckit::algebra::{format_salamon, LieAlgebra};
use ckit::catalog::{build, check, list, EntryReport, Params};
use ckit::error::{Error, Result};
use ckit::lattices::{verify_certificate, LatticeCertificate};
use ckit::pipeline::{
    load_algebra, load_structure, load_triple, parse_period, run_pipeline, PipelineInput, PipelineReport,
};
use ckit::scalar::Rational;

const PASS: u8 = 0;
const NEGATIVE: u8 = 1;
const INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "ckit", version, about = "Exact checks for invariant complex structures on solvable Lie algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Default)]
struct ParamArgs {
    /// Parameter binding `name=value`; repeatable.
    #[arg(long = "param", alias = "params", value_name = "NAME=VALUE")]
    param: Vec<String>,
}

impl ParamArgs {
    fn params(&self) -> Result<Params> {
        let mut p = Params::new();
        for kv in &self.param {
            p.insert_pair(kv)?;
        }
        Ok(p)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse an algebra (shorthand tuple or JSON) and print it.
    Parse {
        file: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run every diagnostic on an algebra.
    Check {
        file: PathBuf,
        /// Complex structure file; repeatable.
        #[arg(long = "j")]
        j: Vec<PathBuf>,
        /// Hypercomplex triple file.
        #[arg(long)]
        triple: Option<PathBuf>,
        /// Lattice certificate file.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Period such as `2pi`, `pi/2` or `3`; repeatable.
        #[arg(long)]
        period: Vec<String>,
        #[command(flatten)]
        params: ParamArgs,
        /// Print the full JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Build the canonical section for one structure.
    Section {
        file: PathBuf,
        #[arg(long = "j")]
        j: PathBuf,
        #[arg(long)]
        period: Vec<String>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Verify a lattice certificate.
    LatticeVerify {
        cert: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Built-in examples.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Names, parameters and defaults.
    List,
    /// Print an entry as JSON.
    Show {
        name: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Rebuild entries and recheck every expected value.
    Run {
        name: Option<String>,
        /// Unit index, `5` or a range `3..10`.
        #[arg(long)]
        m: Option<String>,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        json: bool,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn algebra(path: &Path, params: &Params) -> Result<LieAlgebra<Rational>> {
    load_algebra(&read(path)?, &|k| params.scalar(k))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn exit_for(rep: &PipelineReport) -> u8 {
    if !rep.errors.is_empty() {
        INPUT
    } else if rep.negative_verdict || rep.not_invariant || rep.lattice_failed {
        NEGATIVE
    } else {
        PASS
    }
}

fn cmd_parse(file: &Path, params: &ParamArgs) -> Result<u8> {
    let alg = algebra(file, &params.params()?)?;
    print_json(&json!({
        "schema": ckit::pipeline::SCHEMA,
        "shorthand": format_salamon(&alg),
        "algebra": alg.to_json(),
    }));
    Ok(PASS)
}

fn text_summary(rep: &Value) {
    let s = &rep["structure"];
    println!(
        "dim {}  solvable {}  nilpotent {}  unimodular {}",
        s["dim"], s["solvable"], s["nilpotent"], s["unimodular"]
    );
    for c in rep["complex"].as_array().into_iter().flatten() {
        let label = c["label"].as_str().unwrap_or("?");
        let cx = &c["complex"];
        if let Some(e) = cx.get("error") {
            println!("{label}: error: {}", e["message"].as_str().unwrap_or(""));
            continue;
        }
        if cx["integrable"] == json!(false) {
            println!("{label}: not integrable");
            continue;
        }
        print!("{label}: {}", cx["verdict"].as_str().unwrap_or("?"));
        if let Some(o) = cx["obstruction"].as_str() {
            print!(", {o}");
        }
        if let Some(l) = c["section"]["lambda"].as_str() {
            print!(", lambda {l}");
        }
        println!();
        for p in c["invariance"].as_array().into_iter().flatten() {
            println!("  period {}: {}", p["period"].as_str().unwrap_or("?"), p["result"]);
        }
    }
    if let Some(l) = rep.get("lattice") {
        match l.get("passed") {
            Some(p) => println!("lattice: {}", if p == &json!(true) { "verified" } else { "FAILED" }),
            None => println!("lattice: error: {}", l["error"]["message"].as_str().unwrap_or("")),
        }
    }
    if let Some(h) = rep.get("hypercomplex") {
        println!("hypercomplex triple: {}", h["triple"]);
        for s in h["structures"].as_array().into_iter().flatten() {
            println!("  {}: {} {}", s["label"].as_str().unwrap_or("?"), s["verdict"], s["obstruction"]);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_check(
    file: &Path,
    js: &[PathBuf],
    triple: Option<&Path>,
    cert: Option<&Path>,
    periods: &[String],
    params: &ParamArgs,
    as_json: bool,
) -> Result<u8> {
    let params = params.params()?;
    let alg = algebra(file, &params)?;
    let mut input = PipelineInput::new(alg);
    for p in js {
        let j = load_structure(&read(p)?, &input.algebra)?;
        let label = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "J".into());
        input.structures.push((label, j));
    }
    if let Some(t) = triple {
        input.triple = Some(load_triple(&read(t)?)?);
    }
    if let Some(c) = cert {
        input.certificate = Some(serde_json::from_str::<LatticeCertificate>(&read(c)?)?);
    }
    input.periods = periods.iter().map(|p| parse_period(p)).collect::<Result<_>>()?;
    let rep = run_pipeline(&input);
    if as_json {
        print_json(&rep.json);
    } else {
        text_summary(&rep.json);
    }
    Ok(exit_for(&rep))
}

fn cmd_section(file: &Path, j: &Path, periods: &[String], params: &ParamArgs) -> Result<u8> {
    let alg = algebra(file, &params.params()?)?;
    let mut input = PipelineInput::new(alg);
    let j = load_structure(&read(j)?, &input.algebra)?;
    input.structures.push(("J".into(), j));
    input.periods = periods.iter().map(|p| parse_period(p)).collect::<Result<_>>()?;
    let rep = run_pipeline(&input);
    let c = &rep.json["complex"][0];
    print_json(&json!({
        "schema": ckit::pipeline::SCHEMA,
        "complex": c["complex"],
        "section": c["section"],
        "invariance": c["invariance"],
    }));
    Ok(exit_for(&rep))
}

fn cmd_lattice(path: &Path, as_json: bool) -> Result<u8> {
    let cert: LatticeCertificate = serde_json::from_str(&read(path)?)?;
    let rep = verify_certificate(&cert)?;
    if as_json {
        print_json(&json!(rep));
    } else {
        for c in &rep.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            match &c.witness {
                Some(w) => println!("{mark} {}: {w}", c.check),
                None => println!("{mark} {}", c.check),
            }
        }
        println!("{}: {}", cert.name, if rep.passed { "verified" } else { "FAILED" });
    }
    Ok(if rep.passed { PASS } else { NEGATIVE })
}

fn m_values(spec: &str) -> Result<Vec<i64>> {
    let bad = || Error::Input(format!("--m expects N or A..B, got `{spec}`"));
    let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| bad());
    match spec.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![parse(spec)?]),
    }
}

fn cmd_catalog_run(name: Option<&str>, m: Option<&str>, params: &ParamArgs, as_json: bool) -> Result<u8> {
    let base = params.params()?;
    let entries = list();
    let chosen: Vec<_> = match name {
        Some(n) => {
            let e: Vec<_> = entries.into_iter().filter(|e| e.name == n).collect();
            if e.is_empty() {
                return Err(Error::UnknownEntry(n.into()));
            }
            e
        }
        None => entries,
    };
    let ms = m.map(m_values).transpose()?;
    let mut jobs = Vec::new();
    for info in &chosen {
        match (&ms, info.has_param("m")) {
            (Some(ms), true) => {
                for v in ms {
                    jobs.push((info.name, base.clone().with("m", v)));
                }
            }
            _ => jobs.push((info.name, base.clone())),
        }
    }
    // entries are independent; build and check them side by side
    let results: Vec<Result<EntryReport>> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|(n, p)| s.spawn(move || build(n, p).map(|inst| check(&inst))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("catalog worker panicked")).collect()
    });
    let mut code = PASS;
    let mut out = Vec::new();
    for ((n, p), r) in jobs.iter().zip(results) {
        let tag = p.get("m").map(|m| format!("{n} m={m}")).unwrap_or_else(|| n.to_string());
        match r {
            Err(e) => {
                code = INPUT;
                eprintln!("{tag}: {e}");
                out.push(json!({ "entry": tag, "error": e.to_string() }));
            }
            Ok(rep) => {
                if !rep.passed {
                    code = code.max(NEGATIVE);
                }
                if !as_json {
                    match rep.first_failure() {
                        None => println!("PASS {tag} ({} checks)", rep.checks.len()),
                        Some(f) => println!("FAIL {tag}: {}: {}", f.check, f.witness.as_deref().unwrap_or("")),
                    }
                }
                out.push(json!({ "entry": tag, "report": rep }));
            }
        }
    }
    if as_json {
        print_json(&json!({ "schema": ckit::pipeline::SCHEMA, "runs": out }));
    }
    Ok(code)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Parse { file, params } => cmd_parse(&file, &params),
        Cmd::Check { file, j, triple, cert, period, params, json } => {
            cmd_check(&file, &j, triple.as_deref(), cert.as_deref(), &period, &params, json)
        }
        Cmd::Section { file, j, period, params } => cmd_section(&file, &j, &period, &params),
        Cmd::LatticeVerify { cert, json } => cmd_lattice(&cert, json),
        Cmd::Catalog { cmd } => match cmd {
            CatalogCmd::List => {
                for e in list() {
                    let ps: Vec<String> = e.params.iter().map(|p| format!("{}={}", p.name, p.default)).collect();
                    println!("{:<24} {:<32} {}", e.name, ps.join(" "), e.summary);
                }
                Ok(PASS)
            }
            CatalogCmd::Show { name, params } => {
                let inst = build(&name, &params.params()?)?;
                print_json(&inst.to_json());
                Ok(PASS)
            }
            CatalogCmd::Run { name, m, params, json } => cmd_catalog_run(name.as_deref(), m.as_deref(), &params, json),
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT)
        }
    }
}
