use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use xdeg::degrees::{
    commutativity_degree, commutativity_degree_by_pairs, degree_report_with, exterior_degree_of,
    DegreeMode, TheoremRecord,
};
use xdeg::io::{load_group, InputError};
use xdeg::suite::{verify_corpus, SuiteOptions};
use xdeg::tensor::{
    exterior_square, exterior_square_with, tensor_square, ExteriorOptions, ExteriorSquare, Route,
};
use xdeg::tower::{
    build_tower_with_cap, check_limit, default_max_level_order, tower_degree_sequence, DegreeKind,
    TowerFamily,
};
use xdeg::{Error, Rational};

const EXIT_VIOLATED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "xdeg",
    version,
    about = "Exact commutativity and exterior degrees of finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct Output {
    /// Shorthand for `--format json`.
    #[arg(long)]
    json: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

impl Output {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Nu,
    Hopf,
    Auto,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Route {
        match r {
            RouteArg::Nu => Route::Nu,
            RouteArg::Hopf => Route::Hopf,
            RouteArg::Auto => Route::Auto,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Commutativity degree, and with --exterior the exterior degree and theorem records.
    Degree {
        /// Group file (JSON) or family spec such as `family:dihedral:8`.
        #[arg(long)]
        group: String,
        #[arg(long)]
        exterior: bool,
        /// Recompute every degree by direct pair counting and compare.
        #[arg(long)]
        brute_force_check: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Tensor square, exterior square and Schur multiplier.
    Tensor {
        #[arg(long)]
        group: String,
        /// `nu` builds the full tensor square; `hopf` only the exterior square.
        #[arg(long, value_enum, default_value = "nu")]
        route: RouteArg,
        #[command(flatten)]
        output: Output,
    },
    /// Run the theorem suite over the built-in corpus.
    Verify {
        #[arg(long, default_value = "default")]
        corpus: String,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Degree sequence along a tower of p-groups.
    Tower {
        /// `Dsemi:r=1`, `Ct:p=3,t=1` or `Zp:p=2`.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value = "exterior")]
        kind: String,
        #[arg(long)]
        claimed: Option<String>,
        #[arg(long, default_value = "0")]
        tol: String,
        /// Largest level order (default 512 for p = 2, 243 for p = 3).
        #[arg(long)]
        max_order: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
}

/// A failure mapped to an exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_resource_cap() {
                EXIT_CAP
            } else {
                EXIT_INPUT
            },
            message: e.to_string(),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure {
            code: if e.error.is_resource_cap() {
                EXIT_CAP
            } else {
                EXIT_INPUT
            },
            message: e.to_string(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: format!("{e:#}"),
        }
    }
}

fn rational_arg(name: &str, s: &str) -> Result<Rational, Failure> {
    s.parse::<Rational>()
        .with_context(|| format!("--{name} {s:?}"))
        .map_err(Failure::from)
}

fn decimal(r: &Rational) -> String {
    r.to_decimal(12)
}

fn record_json(r: &TheoremRecord) -> Value {
    let mut v = serde_json::to_value(r).expect("record serializes");
    v["lhs_decimal"] = json!(decimal(&r.lhs));
    v["rhs_decimal"] = json!(decimal(&r.rhs));
    v
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn print_json<T: Serialize>(v: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("report serializes")
    );
}

fn print_records_csv<'a>(rows: impl Iterator<Item = (&'a str, &'a TheoremRecord)>) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "group,record,lhs,rhs,holds");
    for (g, r) in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            csv_field(g),
            csv_field(&r.name),
            r.lhs,
            r.rhs,
            r.holds
        );
    }
}

fn print_records_text<'a>(rows: impl Iterator<Item = (&'a str, &'a TheoremRecord)>) {
    for (g, r) in rows {
        let mark = if r.holds {
            "ok"
        } else if r.is_violation() {
            "VIOLATED"
        } else {
            "n/a"
        };
        println!(
            "{g:28} {:40} {:>12} {:?} {:<12} {mark}",
            r.name,
            r.lhs.to_string(),
            r.relation,
            r.rhs.to_string()
        );
    }
}

fn run_degree(group: &str, exterior: bool, brute: bool, format: Format) -> Result<u8, Failure> {
    let g = load_group(group)?;
    let d = commutativity_degree(&g);
    let mut doc = json!({
        "group": g.label(),
        "order": g.order(),
        "d": d.to_string(),
        "d_decimal": decimal(&d),
    });
    let mut code = 0;
    let mut records = Vec::new();
    let mut brute_doc = serde_json::Map::new();
    if brute {
        let pairs = commutativity_degree_by_pairs(&g);
        brute_doc.insert("d".into(), json!(pairs.to_string()));
        if pairs != d {
            code = EXIT_VIOLATED;
        }
    }
    if exterior {
        let sq = exterior_square(&g)?;
        let dw = exterior_degree_of(&g, &sq, DegreeMode::ClassSum)?;
        doc["d_wedge"] = json!(dw.to_string());
        doc["d_wedge_decimal"] = json!(decimal(&dw));
        if brute {
            let pairs = exterior_degree_of(&g, &sq, DegreeMode::BruteForce)?;
            brute_doc.insert("d_wedge".into(), json!(pairs.to_string()));
            if pairs != dw {
                code = EXIT_VIOLATED;
            }
        }
        if g.order() > 1 {
            let report = degree_report_with(&g, &sq)?;
            doc["z_order"] = json!(report.z_order);
            doc["z_wedge_order"] = json!(report.z_wedge_order);
            doc["multiplier"] =
                serde_json::to_value(&report.multiplier).expect("invariants serialize");
            doc["exterior_order"] = json!(report.exterior_order);
            doc["pair_set_is_subgroup"] = json!(report.pair_set_is_subgroup);
            if !report.all_hold() {
                code = EXIT_VIOLATED;
            }
            records = report.records;
        }
        doc["records"] = Value::Array(records.iter().map(record_json).collect());
    }
    if brute {
        brute_doc.insert("agree".into(), json!(code == 0));
        doc["brute_force"] = Value::Object(brute_doc);
    }
    match format {
        Format::Json => print_json(&doc),
        Format::Csv => print_records_csv(records.iter().map(|r| (g.label(), r))),
        Format::Text => {
            println!("{}: |G| = {}", g.label(), g.order());
            println!("d        = {} ({})", d, decimal(&d));
            if let Some(dw) = doc.get("d_wedge").and_then(Value::as_str) {
                println!(
                    "d_wedge  = {dw} ({})",
                    doc["d_wedge_decimal"].as_str().unwrap_or("")
                );
            }
            if let Some(b) = doc.get("brute_force") {
                println!("brute force: {b}");
            }
            print_records_text(records.iter().map(|r| (g.label(), r)));
        }
    }
    Ok(code)
}

fn run_tensor(group: &str, route: RouteArg, format: Format) -> Result<u8, Failure> {
    let g = load_group(group)?;
    let (tensor_order, nabla_order, sq): (Option<usize>, Option<usize>, ExteriorSquare) =
        match route {
            RouteArg::Nu => {
                let t = tensor_square(&g)?;
                let (to, no) = (t.t.order(), t.nabla.order());
                (Some(to), Some(no), ExteriorSquare::from_tensor(&g, t)?)
            }
            r => {
                let opts = ExteriorOptions {
                    route: r.into(),
                    ..Default::default()
                };
                let sq = exterior_square_with(&g, &opts)?;
                let tn = sq
                    .tensor
                    .as_ref()
                    .map(|(t, _)| (t.t.order(), t.nabla.order()));
                (tn.map(|x| x.0), tn.map(|x| x.1), sq)
            }
        };
    let doc = json!({
        "group": g.label(),
        "tensor_order": tensor_order,
        "exterior_order": sq.w.order(),
        "multiplier": sq.multiplier_invariants,
        "nabla_order": nabla_order,
    });
    match format {
        Format::Json => print_json(&doc),
        Format::Csv => {
            println!("group,tensor_order,exterior_order,multiplier,nabla_order");
            let opt = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());
            println!(
                "{},{},{},{},{}",
                csv_field(g.label()),
                opt(tensor_order),
                sq.w.order(),
                csv_field(&sq.multiplier_invariants.to_string()),
                opt(nabla_order)
            );
        }
        Format::Text => {
            println!("{}: |G| = {}", g.label(), g.order());
            if let Some(t) = tensor_order {
                println!("|G ⊗ G| = {t}");
            }
            println!("|G ∧ G| = {}", sq.w.order());
            println!("M(G)    = {}", sq.multiplier_invariants);
            if let Some(n) = nabla_order {
                println!("|∇(G)|  = {n}");
            }
        }
    }
    Ok(0)
}

fn run_verify(corpus: &str, samples: u64, seed: u64, format: Format) -> Result<u8, Failure> {
    if corpus != "default" {
        return Err(Failure {
            code: EXIT_INPUT,
            message: format!("unknown corpus {corpus:?} (only \"default\" is built in)"),
        });
    }
    let v = verify_corpus(&SuiteOptions { samples, seed })?;
    let pass = v.all_hold();
    match format {
        Format::Json => {
            let groups: Vec<Value> = v
                .groups
                .iter()
                .map(|g| {
                    json!({
                        "group": g.label(),
                        "order": g.report.order,
                        "d": g.report.d.to_string(),
                        "d_wedge": g.report.d_wedge.to_string(),
                        "z_order": g.report.z_order,
                        "z_wedge_order": g.report.z_wedge_order,
                        "multiplier": g.report.multiplier,
                        "pair_set_is_subgroup": g.report.pair_set_is_subgroup,
                        "records": g.records.iter().map(record_json).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let products: Vec<Value> = v
                .products
                .iter()
                .map(|p| json!({"group": p.label, "records": p.records.iter().map(record_json).collect::<Vec<_>>()}))
                .collect();
            print_json(
                &json!({"corpus": corpus, "groups": groups, "products": products, "pass": pass}),
            );
        }
        Format::Csv => print_records_csv(v.rows()),
        Format::Text => {
            print_records_text(v.rows());
            let violations = v.rows().filter(|(_, r)| r.is_violation()).count();
            println!(
                "{} groups, {} products, {} records, {violations} violated",
                v.groups.len(),
                v.products.len(),
                v.rows().count()
            );
        }
    }
    Ok(if pass { 0 } else { EXIT_VIOLATED })
}

#[allow(clippy::too_many_arguments)]
fn run_tower(
    family: &str,
    depth: usize,
    kind: &str,
    claimed: Option<&str>,
    tol: &str,
    max_order: Option<usize>,
    format: Format,
) -> Result<u8, Failure> {
    let family: TowerFamily = family.parse()?;
    let kind: DegreeKind = kind.parse()?;
    let tol = rational_arg("tol", tol)?;
    let claimed = claimed.map(|c| rational_arg("claimed", c)).transpose()?;
    let cap = max_order.unwrap_or_else(|| default_max_level_order(family.prime().unwrap_or(2)));
    let tower = build_tower_with_cap(&family, depth, cap)?;
    let (estimate, check) = match &claimed {
        Some(c) => {
            let check = check_limit(&tower, kind, c, &tol)?;
            (check.estimate.clone(), Some(check))
        }
        None => (tower_degree_sequence(&tower, kind)?, None),
    };
    let mut doc = json!({
        "family": family.to_string(),
        "kind": kind,
        "orders": estimate.orders,
        "sequence": estimate.sequence.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "extrapolated": estimate.extrapolated.as_ref().map(|x| x.to_string()),
        "extrapolated_decimal": estimate.extrapolated.as_ref().map(decimal),
        "monotone": estimate.monotone,
        "claimed": claimed.as_ref().map(|x| x.to_string()),
    });
    if let Some(t) = &estimate.truncated {
        doc["truncated"] = json!(t);
    }
    if let Some(c) = &check {
        doc["tol"] = json!(c.tol.to_string());
        doc["gap"] = json!(c.gap.to_string());
        doc["level_gaps"] = json!(c
            .level_gaps
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>());
        doc["pass"] = json!(c.pass);
        doc["verdict"] = json!(c.verdict());
    }
    match format {
        Format::Json => print_json(&doc),
        Format::Csv => {
            println!("order,value,decimal");
            for (o, x) in estimate.orders.iter().zip(&estimate.sequence) {
                println!("{o},{x},{}", decimal(x));
            }
        }
        Format::Text => {
            println!("{} ({kind:?})", family);
            for (o, x) in estimate.orders.iter().zip(&estimate.sequence) {
                println!("  |G| = {o:6}  {x:>12}  {}", decimal(x));
            }
            if let Some(x) = &estimate.extrapolated {
                println!("extrapolated {x} ({})", decimal(x));
            }
            println!("monotone: {}", estimate.monotone);
            if let Some(c) = &check {
                println!("{}", c.verdict());
            }
        }
    }
    let failed = check.is_some_and(|c| !c.pass) || !estimate.monotone;
    Ok(if failed { EXIT_VIOLATED } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Degree {
            group,
            exterior,
            brute_force_check,
            output,
        } => run_degree(group, *exterior, *brute_force_check, output.format()),
        Command::Tensor {
            group,
            route,
            output,
        } => run_tensor(group, *route, output.format()),
        Command::Verify {
            corpus,
            samples,
            seed,
            output,
        } => run_verify(corpus, *samples, *seed, output.format()),
        Command::Tower {
            family,
            depth,
            kind,
            claimed,
            tol,
            max_order,
            output,
        } => run_tower(
            family,
            *depth,
            kind,
            claimed.as_deref(),
            tol,
            *max_order,
            output.format(),
        ),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
