use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use milnor_core::aomoto::{beta1_full, Beta1Result};
use milnor_core::arrangement::{decone, is_essential, ProjArrangement};
use milnor_core::degeneration::{directional, total, verify_homomorphism, DegenerationKind, DegenerationMap};
use milnor_core::linalg::is_prime;
use milnor_core::os_algebra::build;
use milnor_core::report::{mu_table, report, Verdict, VanishingReport};
use milnor_core::{catalog, io, Error};
use serde_json::{json, Value};

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_NOT_PRIME: u8 = 4;
const EXIT_INCONSISTENT: u8 = 5;

const VERIFY_TRIALS: usize = 32;

#[derive(Parser)]
#[command(name = "milnor", version, about = "Orlik-Solomon algebras, Aomoto cohomology and Milnor fiber eigenspace bounds for line arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Arrangement file: three integers per line, `#` comments.
    file: Option<PathBuf>,
    /// Built-in arrangement (braid-a3, pencil, near-pencil, generic, fermat, fig3).
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
    /// Size parameter for parameterized built-ins.
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Intersection points, multiplicities and the μ table.
    Lattice {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// First Aomoto cohomology rank β₁(A, ν) over F_p.
    Beta1 {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        prime: u64,
        /// Index of the line sent to infinity.
        #[arg(long, default_value_t = 0, conflicts_with = "all_deconings")]
        infinity: usize,
        /// Compute β₁ for every choice of line at infinity.
        #[arg(long)]
        all_deconings: bool,
        #[arg(long)]
        json: bool,
    },
    /// Total and directional degeneration matrices with verification.
    Degenerate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        infinity: usize,
        /// Only the directional degeneration for this parallel class.
        #[arg(long)]
        class: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Monodromy eigenspace vanishing report.
    Report {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::UnknownBuiltin(_) => EXIT_PARSE,
            Error::ZeroLine
            | Error::DuplicateLine { .. }
            | Error::TooFewLines(_)
            | Error::Unrealizable { .. }
            | Error::BadSize(_) => EXIT_INVALID,
            Error::NotPrime(_) | Error::ModulusTooLarge(_) => EXIT_NOT_PRIME,
            _ => EXIT_FAILURE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn load(input: &Input) -> Result<ProjArrangement, Failure> {
    match (&input.file, &input.builtin) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| Failure {
                code: EXIT_PARSE,
                message: format!("{}: {e}", path.display()),
            })?;
            Ok(io::parse_arrangement(&text)?)
        }
        (None, Some(name)) => Ok(catalog::lookup(name, input.m)?),
        _ => Err(Failure { code: EXIT_PARSE, message: "give an arrangement file or --builtin NAME".into() }),
    }
}

fn check_prime(p: u64) -> Result<(), Failure> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p).into())
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_lattice(arr: &ProjArrangement, as_json: bool) {
    let lat = arr.lattice();
    let table = mu_table(arr);
    if as_json {
        let points: Vec<Value> = lat
            .points()
            .iter()
            .map(|p| json!({ "point": p.point.to_string(), "multiplicity": p.multiplicity(), "lines": p.incident }))
            .collect();
        let histogram: serde_json::Map<String, Value> =
            lat.histogram().into_iter().map(|(m, c)| (m.to_string(), json!(c))).collect();
        print_json(&json!({
            "lines": arr.len(),
            "essential": is_essential(arr),
            "points": points,
            "histogram": histogram,
            "mu_table": table,
        }));
        return;
    }
    println!("{} lines, {} intersection points", arr.len(), lat.len());
    for p in lat.points() {
        println!("  {:<16} multiplicity {}  lines {:?}", p.point.to_string(), p.multiplicity(), p.incident);
    }
    let hist: Vec<String> = lat.histogram().iter().map(|(m, c)| format!("{m}:{c}")).collect();
    println!("multiplicity histogram {{{}}}", hist.join(", "));
    println!("essential: {}", is_essential(arr));
    print_mu_table(&table);
}

fn print_mu_table(table: &milnor_core::report::MuTable) {
    let header: Vec<String> = table.ks.iter().map(|k| format!("k={k:<3}")).collect();
    println!("mu table     {}", header.join(" "));
    for (i, row) in table.rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|m| format!("{m:<5}")).collect();
        println!("  line {i:<4}  {}", cells.join(" "));
    }
}

fn beta1_at(arr: &ProjArrangement, infinity: usize, p: u64) -> Result<Beta1Result, Failure> {
    let alg = build(&decone(arr, infinity)?, p)?;
    Ok(beta1_full(&alg, &alg.nu())?)
}

fn cmd_beta1(arr: &ProjArrangement, p: u64, infinity: usize, all: bool, as_json: bool) -> Result<(), Failure> {
    check_prime(p)?;
    if !all {
        let r = beta1_at(arr, infinity, p)?;
        if as_json {
            print_json(&json!({ "prime": p, "infinity": infinity, "beta1": r.value, "result": r }));
        } else {
            let c = r.certificate;
            println!("beta1 = {}", r.value);
            println!(
                "  method full, infinity line {infinity}, p = {p}: dim A1 = {}, dim A2 = {}, rank d0 = {}, rank d1 = {}, H0 = {}, H2 = {}",
                c.dim_a1, c.dim_a2, c.rank_d0, c.rank_d1, c.h0, c.h2
            );
        }
        return Ok(());
    }
    let values: Vec<usize> =
        (0..arr.len()).map(|i| beta1_at(arr, i, p).map(|r| r.value)).collect::<Result<_, _>>()?;
    let divides = (arr.len() as u64).is_multiple_of(p);
    let invariant = values.iter().all(|&v| v == values[0]);
    if as_json {
        print_json(&json!({ "prime": p, "beta1_by_infinity": values, "p_divides_degree": divides, "invariant": invariant }));
    } else {
        for (i, v) in values.iter().enumerate() {
            println!("infinity {i}: beta1 = {v}");
        }
        println!("invariant across deconings: {invariant}");
    }
    if divides && !invariant {
        return Err(Failure {
            code: EXIT_INCONSISTENT,
            message: format!("beta1 depends on the line at infinity although {p} divides {}", arr.len()),
        });
    }
    Ok(())
}

fn map_json(map: &DegenerationMap, verified: bool) -> Value {
    let kind = match map.kind {
        DegenerationKind::Total => json!({ "kind": "total" }),
        DegenerationKind::Directional { class } => json!({ "kind": "directional", "class": class }),
    };
    let rows = |m: &milnor_core::linalg::FpMatrix| -> Vec<Vec<u64>> { (0..m.rows()).map(|r| m.row(r).to_vec()).collect() };
    json!({
        "map": kind,
        "target_lines": map.target.n(),
        "images": map.images,
        "deg1_matrix": rows(&map.deg1_matrix),
        "deg2_matrix": rows(&map.deg2_matrix),
        "homomorphism": verified,
    })
}

fn print_map(map: &DegenerationMap, verified: bool) {
    match map.kind {
        DegenerationKind::Total => println!("total degeneration onto C_{}", map.target.n()),
        DegenerationKind::Directional { class } => {
            println!("directional degeneration onto P_{} along class {class}", map.target.n() - 1)
        }
    }
    let images: Vec<String> =
        map.images.iter().enumerate().map(|(i, t)| format!("e{} -> ~e{}", i + 1, t + 1)).collect();
    println!("  {}", images.join(", "));
    println!("  degree 1 ({} x {}):", map.deg1_matrix.rows(), map.deg1_matrix.cols());
    for line in map.deg1_matrix.to_string().lines() {
        println!("    {line}");
    }
    println!("  degree 2 ({} x {}):", map.deg2_matrix.rows(), map.deg2_matrix.cols());
    for line in map.deg2_matrix.to_string().lines() {
        println!("    {line}");
    }
    println!("  homomorphism verified: {verified}");
}

fn cmd_degenerate(
    arr: &ProjArrangement,
    p: u64,
    infinity: usize,
    class: Option<usize>,
    as_json: bool,
) -> Result<(), Failure> {
    check_prime(p)?;
    let aff = decone(arr, infinity)?;
    let alg = build(&aff, p)?;
    let mut maps = Vec::new();
    let mut skipped = Vec::new();
    let classes: Vec<usize> = match class {
        Some(c) => vec![c],
        None => {
            match total(&alg) {
                Ok(m) => maps.push(m),
                Err(e) => skipped.push(format!("total: {e}")),
            }
            (0..alg.classes().len()).collect()
        }
    };
    for c in classes {
        match directional(&alg, c) {
            Ok(m) => maps.push(m),
            Err(e @ Error::BadClass { .. }) => return Err(e.into()),
            Err(e) => skipped.push(format!("class {c}: {e}")),
        }
    }
    let verified: Vec<bool> = maps.iter().map(|m| verify_homomorphism(m, VERIFY_TRIALS)).collect();
    if as_json {
        let list: Vec<Value> = maps.iter().zip(&verified).map(|(m, &v)| map_json(m, v)).collect();
        print_json(&json!({
            "prime": p,
            "infinity": infinity,
            "classes": alg.classes(),
            "maps": list,
            "skipped": skipped,
        }));
    } else {
        let classes: Vec<String> = alg
            .classes()
            .iter()
            .map(|c| format!("{{{}}}", c.iter().map(|i| format!("L{}", i + 1)).collect::<Vec<_>>().join(",")))
            .collect();
        println!("parallel classes: {}", classes.join(" "));
        for (m, &v) in maps.iter().zip(&verified) {
            print_map(m, v);
        }
        for s in &skipped {
            println!("skipped {s}");
        }
    }
    if verified.iter().all(|&v| v) {
        Ok(())
    } else {
        Err(Failure { code: EXIT_INCONSISTENT, message: "a degeneration map failed verification".into() })
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::VanishesByLibgober { line } => format!("VANISHES_BY_LIBGOBER (line {line})"),
        Verdict::VanishesByThm13 { line } => format!("VANISHES_BY_THM13 (line {line})"),
        Verdict::BoundedByPs { bound } => format!("BOUNDED_BY_PS({bound})"),
        Verdict::Unknown => "UNKNOWN".into(),
    }
}

fn print_report(r: &VanishingReport) {
    println!("degree n+1 = {}, essential: {}", r.degree, r.essential);
    println!("trivial eigenspace dimension: {}", r.trivial_eigenspace_dim);
    print_mu_table(&r.mu_table);
    for p in &r.primes {
        println!(
            "prime {}: min mu = {} (line {}), beta1 = {}, by infinity {:?}, modular vanishing applicable: {}",
            p.prime, p.min_mu, p.witness_line, p.beta1, p.beta1_by_infinity, p.modular_vanishing_applicable
        );
    }
    for o in &r.orders {
        let verdicts: Vec<String> = o.verdicts.iter().map(verdict_text).collect();
        println!("order {}: {}", o.k, verdicts.join(", "));
    }
}

fn cmd_report(arr: &ProjArrangement, as_json: bool) -> Result<(), Failure> {
    let r = report(arr)?;
    if as_json {
        print_json(&serde_json::to_value(&r).expect("serializable"));
    } else {
        print_report(&r);
    }
    let violations = r.violations();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure { code: EXIT_INCONSISTENT, message: format!("consistency violations: {violations:?}") })
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Lattice { input, json } => {
            cmd_lattice(&load(&input)?, json);
            Ok(())
        }
        Command::Beta1 { input, prime, infinity, all_deconings, json } => {
            cmd_beta1(&load(&input)?, prime, infinity, all_deconings, json)
        }
        Command::Degenerate { input, prime, infinity, class, json } => {
            cmd_degenerate(&load(&input)?, prime, infinity, class, json)
        }
        Command::Report { input, json } => cmd_report(&load(&input)?, json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_exit_codes() {
        let code = |e: Error| Failure::from(e).code;
        assert_eq!(code(Error::UnknownBuiltin("x".into())), EXIT_PARSE);
        assert_eq!(code(Error::ZeroLine), EXIT_INVALID);
        assert_eq!(code(Error::TooFewLines(2)), EXIT_INVALID);
        assert_eq!(code(Error::NotPrime(9)), EXIT_NOT_PRIME);
        assert_eq!(code(Error::NotInSpan), EXIT_FAILURE);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
