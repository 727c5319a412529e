use std::fmt::Write as _;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use k3smooth::cohomology::CohomologyTable;
use k3smooth::groebner::{hilbert_data, saturate_irrelevant};
use k3smooth::moduli::{self, ModuliInvariants};
use k3smooth::pipeline::SCHEMA_VERSION;
use k3smooth::resolution::{free_resolution, verify_exactness};
use k3smooth::{analyze_quartic_with, parse_polynomial, Error, GradedIdeal, RingContext, Verdict, DEFAULT_TWISTS};

mod input;

use input::{parse_range, split_generators};

#[derive(Parser, Debug)]
#[command(name = "k3smooth", version, about = "Exact smoothability checks for quartic surfaces in P^3")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Print per-item timings to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Resolution,
    Restriction,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full pipeline on a quartic in x, y, z, t.
    CheckQuartic {
        /// The quartic, e.g. "x*y^3 + y*z^3 + t^4".
        #[arg(required_unless_present = "file", conflicts_with = "file")]
        poly: Option<String>,
        /// Batch mode: one quartic per line; blank lines and `#` comments are skipped.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Twist range lo:hi of the cohomology table; must contain 4.
        #[arg(long, env = "K3SMOOTH_TWIST_RANGE", value_parser = parse_range, allow_hyphen_values = true)]
        twists: Option<RangeInclusive<i64>>,
    },
    /// Minimal free resolution of a homogeneous ideal, with an exactness check.
    Resolve {
        /// Generators, separated by commas or given as separate arguments.
        #[arg(required = true)]
        gens: Vec<String>,
        /// Degree range lo:hi for the exactness check.
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        probe: Option<RangeInclusive<i64>>,
        /// Also print the differentials.
        #[arg(long)]
        matrices: bool,
    },
    /// Cohomology table of the ideal sheaf of a saturated ideal.
    Cohomology {
        #[arg(required = true)]
        gens: Vec<String>,
        #[arg(long, env = "K3SMOOTH_TWIST_RANGE", value_parser = parse_range, allow_hyphen_values = true)]
        twists: Option<RangeInclusive<i64>>,
        #[arg(long, value_enum, default_value_t = MethodArg::Resolution)]
        method: MethodArg,
    },
    /// Saturation with respect to the irrelevant ideal.
    Saturate {
        #[arg(required = true)]
        gens: Vec<String>,
    },
    /// Dimension of the moduli of simple sheaves with invariants (r, L^2, c2).
    ModuliDim {
        #[command(flatten)]
        inv: InvariantArgs,
    },
    /// Invariants of the syzygy bundle of an evaluation map with dim W = w.
    SyzygyInvariants {
        #[command(flatten)]
        inv: InvariantArgs,
        #[arg(long, allow_negative_numbers = true)]
        w: i64,
    },
    /// Invariants of an extension by V ⊗ O with dim V = v.
    ExtensionInvariants {
        #[command(flatten)]
        inv: InvariantArgs,
        #[arg(long, allow_negative_numbers = true)]
        v: i64,
    },
    /// Exact dimension identities for the syzygy and extension constructions.
    LagrangianIdentities {
        #[command(flatten)]
        inv: InvariantArgs,
        #[arg(long, allow_negative_numbers = true)]
        w: i64,
        #[arg(long, allow_negative_numbers = true)]
        v: i64,
    },
}

#[derive(clap::Args, Debug)]
struct InvariantArgs {
    #[arg(long, allow_negative_numbers = true)]
    r: i64,
    #[arg(long, allow_negative_numbers = true)]
    lsq: i64,
    #[arg(long, allow_negative_numbers = true)]
    c2: i64,
}

impl InvariantArgs {
    fn build(&self) -> Result<ModuliInvariants, Failure> {
        Ok(ModuliInvariants::new(self.r, self.lsq, self.c2)?)
    }
}

/// Exit statuses.
const EXIT_INTERNAL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NOT_APPLICABLE: u8 = 3;

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PositiveDimensional(_) => EXIT_NOT_APPLICABLE,
            ref e if e.is_input_error() => EXIT_INPUT,
            _ => EXIT_INTERNAL,
        };
        Failure { code, message: e.to_string() }
    }
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

/// Rendered output of one command: the JSON value, its text rendering and
/// the exit status.
struct Output {
    json: Value,
    text: String,
    code: u8,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = run(&cli);
    if cli.verbose {
        eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    }
    let mut stdout = io::stdout().lock();
    let code = match result {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => pretty(&out.json),
                Format::Text => out.text,
            };
            let _ = stdout.write_all(body.as_bytes());
            out.code
        }
        Err(f) => {
            if cli.format == Format::Json {
                let v = json!({"schema_version": SCHEMA_VERSION, "error": f.message, "exit_code": f.code});
                let _ = stdout.write_all(pretty(&v).as_bytes());
            }
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    let _ = stdout.flush();
    ExitCode::from(code)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::CheckQuartic { poly, file, twists } => {
            let twists = twists.clone().unwrap_or(DEFAULT_TWISTS);
            if !twists.contains(&4) {
                return Err(Failure::input(format!(
                    "twist range {}:{} must contain 4",
                    twists.start(),
                    twists.end()
                )));
            }
            match (poly, file) {
                (Some(p), None) => check_quartic(p, &twists),
                (None, Some(path)) => check_batch(path, &twists, cli.verbose),
                _ => Err(Failure::input("give exactly one of POLY and --file")),
            }
        }
        Command::Resolve { gens, probe, matrices } => resolve(gens, probe.clone(), *matrices),
        Command::Cohomology { gens, twists, method } => {
            cohomology(gens, twists.clone().unwrap_or(DEFAULT_TWISTS), *method)
        }
        Command::Saturate { gens } => saturate(gens),
        Command::ModuliDim { inv } => moduli_dim(&inv.build()?),
        Command::SyzygyInvariants { inv, w } => {
            let m = inv.build()?;
            bundle("syzygy", &m, "w", *w, moduli::syzygy_invariants(&m, *w)?)
        }
        Command::ExtensionInvariants { inv, v } => {
            let m = inv.build()?;
            bundle("extension", &m, "v", *v, moduli::extension_invariants(&m, *v)?)
        }
        Command::LagrangianIdentities { inv, w, v } => lagrangian(&inv.build()?, *w, *v),
    }
}

fn exit_for(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::NotApplicablePositiveDim => EXIT_NOT_APPLICABLE,
        _ => 0,
    }
}

fn check_quartic(text: &str, twists: &RangeInclusive<i64>) -> Result<Output, Failure> {
    let ring = RingContext::p3();
    let f = parse_polynomial(text, &ring)?;
    let report = analyze_quartic_with(&f, twists.clone())?;
    Ok(Output { json: report.to_json(), text: report.to_string(), code: exit_for(report.verdict) })
}

fn check_batch(path: &PathBuf, twists: &RangeInclusive<i64>, verbose: bool) -> Result<Output, Failure> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let items: Vec<(usize, &str)> = content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let results: Vec<(usize, &str, Result<Output, Failure>)> = items
        .par_iter()
        .map(|&(line, poly)| {
            let t = Instant::now();
            let r = check_quartic(poly, twists);
            if verbose {
                eprintln!("line {line}: {:.3}s", t.elapsed().as_secs_f64());
            }
            (line, poly, r)
        })
        .collect();

    let mut json_items = Vec::with_capacity(results.len());
    let mut text = String::new();
    let mut codes = Vec::new();
    for (line, poly, r) in results {
        if !text.is_empty() {
            text.push('\n');
        }
        writeln!(text, "# line {line}").unwrap();
        match r {
            Ok(out) => {
                let mut v = out.json;
                v.as_object_mut().expect("report object").insert("line".into(), json!(line));
                json_items.push(v);
                text.push_str(&out.text);
                codes.push(out.code);
            }
            Err(f) => {
                json_items.push(json!({
                    "schema_version": SCHEMA_VERSION,
                    "line": line,
                    "input": poly,
                    "error": f.message,
                    "exit_code": f.code,
                }));
                writeln!(text, "input:           {poly}").unwrap();
                writeln!(text, "error:           {}", f.message).unwrap();
                writeln!(text, "exit code:       {}", f.code).unwrap();
                codes.push(f.code);
            }
        }
    }
    Ok(Output { json: Value::Array(json_items), text, code: batch_code(&codes) })
}

/// Most severe status among batch items: internal, then input, then not applicable.
fn batch_code(codes: &[u8]) -> u8 {
    [EXIT_INTERNAL, EXIT_INPUT, EXIT_NOT_APPLICABLE]
        .into_iter()
        .find(|c| codes.contains(c))
        .unwrap_or(0)
}

fn parse_ideal(args: &[String]) -> Result<GradedIdeal, Failure> {
    let ring = RingContext::p3();
    let gens = split_generators(args).map_err(Failure::input)?;
    let polys = gens
        .iter()
        .map(|g| parse_polynomial(g, &ring))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GradedIdeal::new(&ring, polys)?)
}

fn range_json(r: &RangeInclusive<i64>) -> Value {
    json!([r.start(), r.end()])
}

fn resolve(gens: &[String], probe: Option<RangeInclusive<i64>>, matrices: bool) -> Result<Output, Failure> {
    let ideal = parse_ideal(gens)?;
    let res = free_resolution(&ideal)?;
    let cert = verify_exactness(&res, probe.map(|r| (*r.start(), *r.end())))?;
    let betti = res.betti_table();
    let (lo, hi) = cert.degrees;
    let mut json = json!({
        "schema_version": SCHEMA_VERSION,
        "ideal": ideal,
        "betti": betti,
        "length": res.length(),
        "regularity": res.regularity(),
        "minimal": res.is_minimal(),
        "exactness": {"degrees": [lo, hi], "checks": cert.ledger.len()},
    });
    let mut text = String::new();
    writeln!(text, "ideal:      {ideal}").unwrap();
    writeln!(text, "betti table:").unwrap();
    for line in betti.to_string().lines() {
        writeln!(text, "  {line}").unwrap();
    }
    writeln!(text, "length:     {}", res.length()).unwrap();
    writeln!(text, "regularity: {}", res.regularity()).unwrap();
    writeln!(text, "minimal:    {}", res.is_minimal()).unwrap();
    writeln!(text, "exactness:  verified in degrees {lo}..{hi} ({} checks)", cert.ledger.len()).unwrap();
    if matrices {
        let ms: Vec<Value> = res
            .maps()
            .iter()
            .map(|m| {
                let rows: Vec<Vec<String>> =
                    m.matrix().iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
                json!({"source": m.source().twists(), "target": m.target().twists(), "matrix": rows})
            })
            .collect();
        json.as_object_mut().unwrap().insert("matrices".into(), Value::Array(ms));
        for (i, m) in res.maps().iter().enumerate() {
            writeln!(text, "d{}: {m}", i + 1).unwrap();
        }
    }
    Ok(Output::ok(json, text))
}

fn cohomology(gens: &[String], twists: RangeInclusive<i64>, method: MethodArg) -> Result<Output, Failure> {
    let ideal = parse_ideal(gens)?;
    let by_resolution = || -> Result<CohomologyTable, Failure> {
        let res = free_resolution(&ideal)?;
        Ok(CohomologyTable::via_resolution(&res, twists.clone())?)
    };
    let by_restriction = || -> Result<CohomologyTable, Failure> {
        Ok(CohomologyTable::via_restriction(&ideal, twists.clone())?)
    };
    let (name, table) = match method {
        MethodArg::Resolution => ("resolution", by_resolution()?),
        MethodArg::Restriction => ("restriction", by_restriction()?),
        MethodArg::Both => {
            let a = by_resolution()?;
            let b = by_restriction()?;
            if !a.same_values(&b) {
                return Err(Failure {
                    code: EXIT_INTERNAL,
                    message: "resolution and restriction cohomology disagree".into(),
                });
            }
            ("both", a)
        }
    };
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "ideal": ideal,
        "method": name,
        "twists": range_json(&twists),
        "cohomology": table,
    });
    let mut text = String::new();
    writeln!(text, "ideal:  {ideal}").unwrap();
    writeln!(text, "method: {name}").unwrap();
    writeln!(text, "twists: {}..{}", twists.start(), twists.end()).unwrap();
    text.push_str(&table.to_string());
    Ok(Output::ok(json, text))
}

fn saturate(gens: &[String]) -> Result<Output, Failure> {
    let ideal = parse_ideal(gens)?;
    let sat = saturate_irrelevant(&ideal)?;
    let h = hilbert_data(&sat, None);
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "ideal": ideal,
        "saturation": sat,
        "saturated": sat.ideal_eq(&ideal),
        "scheme": {"empty": h.is_empty(), "dimension": h.dimension, "degree": h.degree},
    });
    let mut text = String::new();
    writeln!(text, "ideal:      {ideal}").unwrap();
    writeln!(text, "saturation: {sat}").unwrap();
    writeln!(text, "saturated:  {}", sat.ideal_eq(&ideal)).unwrap();
    match h.dimension {
        None => writeln!(text, "scheme:     empty").unwrap(),
        Some(d) => writeln!(text, "scheme:     dimension {d}, degree {}", h.degree).unwrap(),
    }
    Ok(Output::ok(json, text))
}

fn moduli_dim(m: &ModuliInvariants) -> Result<Output, Failure> {
    let (d, chi, chi_ff) = (moduli::pspl_dimension(m), moduli::chi_sheaf(m), moduli::chi_ff(m));
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "invariants": m,
        "pspl_dimension": d,
        "chi_sheaf": chi,
        "chi_FF": chi_ff,
    });
    let text = format!(
        "invariants: r = {}, Lsq = {}, c2 = {}\npspl_dimension: {d}\nchi_sheaf: {chi}\nchi_FF: {chi_ff}\n",
        m.r, m.lsq, m.c2
    );
    Ok(Output::ok(json, text))
}

fn bundle(kind: &str, m: &ModuliInvariants, pname: &str, p: i64, out: ModuliInvariants) -> Result<Output, Failure> {
    let (d0, d1) = (moduli::pspl_dimension(m), moduli::pspl_dimension(&out));
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "invariants": m,
        pname: p,
        kind: out,
        "pspl_dimension": d0,
        format!("{kind}_pspl_dimension"): d1,
    });
    let text = format!(
        "invariants: r = {}, Lsq = {}, c2 = {}\n{pname}: {p}\n{kind}: r = {}, Lsq = {}, c2 = {}\npspl_dimension: {d0}\n{kind}_pspl_dimension: {d1}\n",
        m.r, m.lsq, m.c2, out.r, out.lsq, out.c2
    );
    Ok(Output::ok(json, text))
}

fn lagrangian(m: &ModuliInvariants, w: i64, v: i64) -> Result<Output, Failure> {
    let rep = moduli::lagrangian_dimension_identities(m, w, v)?;
    let mut json = to_value(&rep);
    json.as_object_mut().unwrap().insert("schema_version".into(), json!(SCHEMA_VERSION));
    json.as_object_mut().unwrap().insert("all_hold".into(), json!(rep.all_hold()));
    let mut text = String::new();
    let (s, e) = (&rep.syzygy, &rep.extension);
    writeln!(text, "invariants: r = {}, Lsq = {}, c2 = {}", m.r, m.lsq, m.c2).unwrap();
    writeln!(text, "w: {w}\nv: {v}\nh0: {}\nu: {}", rep.h0, rep.u).unwrap();
    writeln!(text, "pspl_dimension: {}", rep.pspl_dimension).unwrap();
    writeln!(text, "syzygy: r = {}, Lsq = {}, c2 = {}", s.r, s.lsq, s.c2).unwrap();
    writeln!(text, "syzygy_pspl_dimension: {}", rep.syzygy_pspl_dimension).unwrap();
    writeln!(text, "extension: r = {}, Lsq = {}, c2 = {}", e.r, e.lsq, e.c2).unwrap();
    writeln!(text, "extension_pspl_dimension: {}", rep.extension_pspl_dimension).unwrap();
    writeln!(text, "identities:").unwrap();
    for c in &rep.identities {
        let mark = if c.holds { "ok" } else { "FAILED" };
        writeln!(text, "  [{mark}] {}: {} = {}", c.name, c.lhs, c.rhs).unwrap();
    }
    writeln!(text, "all_hold: {}", rep.all_hold()).unwrap();
    writeln!(text, "note: {}", rep.note).unwrap();
    let code = if rep.all_hold() { 0 } else { EXIT_INTERNAL };
    Ok(Output { json, text, code })
}
