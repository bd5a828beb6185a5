//! Command-line surface for the plane-partition library.
//!
//! Subcommands: `exact` (integer coefficients), `asym` (5-digit leading
//! asymptotics), `table` (side-by-side comparison), `constants`, `meinardus`
//! (theorem constants per instance) and `scan-iv` (decay-bound
//! certification).  Every command takes `--format {text,csv,json}`.
//!
//! Exit codes: 0 success, 1 usage or parameter error, 2 internal consistency
//! failure (independent computation routes disagree), 3 certification scan
//! violation.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use planepart::condition_iv::{scan_condition_iv, GridSpec, ScanReport};
use planepart::constants;
use planepart::meinardus::{
    self, asymptotic_log10, exact_leading_parts, meinardus_constants, render_exact,
    wright_leading, AsymptoticValue, MeinardusParams, WrightGamma0,
};
use planepart::series::{
    coeffs_by_product, enumerate_plane_partitions, plane_partition_table, ENUMERATION_LIMIT,
};
use planepart::sieve::ExponentSpec;
use planepart::Error;
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "planepart", version, about = "Exact and asymptotic plane-partition counting")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Recurrence,
    Product,
    Brute,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Method::Recurrence => "recurrence",
            Method::Product => "product",
            Method::Brute => "brute",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Gamma {
    /// gamma_0 = 1 (the originally published constant).
    One,
    /// gamma_0 = 3^{-1/2} (the corrected constant).
    Corrected,
}

impl Gamma {
    fn to_lib(self) -> WrightGamma0 {
        match self {
            Gamma::One => WrightGamma0::ClaimedOne,
            Gamma::Corrected => WrightGamma0::CorrectedInvSqrt3,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Instance {
    Plane,
    Ordinary,
}

impl Instance {
    fn as_str(self) -> &'static str {
        match self {
            Instance::Plane => "plane",
            Instance::Ordinary => "ordinary",
        }
    }

    fn params(self, prec: u32) -> planepart::Result<MeinardusParams> {
        match self {
            Instance::Plane => meinardus::plane_partition_params(prec),
            Instance::Ordinary => meinardus::ordinary_partition_params(prec),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact coefficient q(n), or the whole table up to a bound.
    Exact {
        /// Index n.
        #[arg(conflicts_with = "upto", required_unless_present = "upto")]
        n: Option<u64>,
        /// Print every q(0)..q(N) instead of a single value.
        #[arg(long, value_name = "N")]
        upto: Option<u64>,
        /// Computation method.
        #[arg(long, value_enum, default_value_t = Method::Recurrence)]
        method: Method,
        /// Cross-check against the independent methods (exit 2 on mismatch).
        #[arg(long)]
        verify: bool,
    },
    /// Leading asymptotic approximation of q(n), 5 significant digits.
    Asym {
        /// Index n >= 1.
        n: u64,
        /// Choice of the constant prefactor gamma_0.
        #[arg(long, value_enum, default_value_t = Gamma::Corrected)]
        gamma0: Gamma,
        /// Working precision in bits.
        #[arg(long, default_value_t = 256)]
        prec: u32,
    },
    /// Comparison table: exact q(n) next to both asymptotic variants.
    Table {
        /// Comma-separated row indices.
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000,10000")]
        rows: Vec<u64>,
        /// Working precision in bits for the asymptotic columns.
        #[arg(long, default_value_t = 256)]
        prec: u32,
        /// Largest admissible row index.
        #[arg(long, default_value_t = 10_000)]
        max_n: u64,
    },
    /// The analytic constants c, zeta(3), zeta'(-1) and D(0).
    Constants {
        /// Working precision in bits.
        #[arg(long, default_value_t = 128)]
        prec: u32,
    },
    /// Asymptotic-theorem constants C, K, K1 for a built-in instance.
    Meinardus {
        /// Optional index n: also print log10 of the main term at n.
        n: Option<u64>,
        /// Which generating function to analyze.
        #[arg(long, value_enum, default_value_t = Instance::Plane)]
        instance: Instance,
        /// Working precision in bits.
        #[arg(long, default_value_t = 128)]
        prec: u32,
    },
    /// Certify the off-axis decay bound over a log-spaced grid (exit 3 on violation).
    ScanIv {
        /// Smallest y of the grid.
        #[arg(long, default_value_t = 1e-3)]
        ymin: f64,
        /// Largest y of the grid.
        #[arg(long, default_value_t = 1e-1)]
        ymax: f64,
        /// Number of log-spaced y values.
        #[arg(long, default_value_t = 30)]
        steps: usize,
        /// Number of angles sampled per y value.
        #[arg(long, default_value_t = 63)]
        wsteps: usize,
        /// Decay exponent epsilon in (0, 2].
        #[arg(long, default_value_t = 2.0)]
        eps: f64,
        /// Decay constant C2 > 0.
        #[arg(long, default_value_t = 1.0)]
        c2: f64,
    },
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`planepart ... | head`) instead of
    // panicking in println!; Rust spawns with SIGPIPE ignored.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::RouteDisagreement(_) | Error::DivisibilityFailure { .. } => 2,
                _ => 1,
            })
        }
    }
}

fn run(cli: Cli) -> planepart::Result<ExitCode> {
    let fmt = cli.format;
    match cli.command {
        Cmd::Exact { n, upto, method, verify } => cmd_exact(fmt, n, upto, method, verify),
        Cmd::Asym { n, gamma0, prec } => cmd_asym(fmt, n, gamma0, prec),
        Cmd::Table { rows, prec, max_n } => cmd_table(fmt, &rows, prec, max_n),
        Cmd::Constants { prec } => cmd_constants(fmt, prec),
        Cmd::Meinardus { n, instance, prec } => cmd_meinardus(fmt, instance, n, prec),
        Cmd::ScanIv { ymin, ymax, steps, wsteps, eps, c2 } => {
            cmd_scan_iv(fmt, ymin, ymax, steps, wsteps, eps, c2)
        }
    }
}

/// Prints a `serde_json::Value`; objects print with sorted keys, so parsing
/// and reprinting the output is byte-identical.
fn emit_json(v: &Value) {
    println!("{v}");
}

/// Fractional decimal digits that `prec` bits safely support.
fn decimal_digits(prec: u32) -> usize {
    (prec as usize) * 3 / 16
}

fn coefficients(method: Method, limit: u64) -> planepart::Result<Vec<BigUint>> {
    if limit == 0 {
        // q(0) = 1 is the constant seed of every method.
        return Ok(vec![BigUint::from(1u32)]);
    }
    match method {
        Method::Recurrence => Ok(plane_partition_table(limit)?.coeffs().to_vec()),
        Method::Product => Ok(coeffs_by_product(&ExponentSpec::Linear, limit)?.coeffs().to_vec()),
        Method::Brute => (0..=limit).map(enumerate_plane_partitions).collect(),
    }
}

fn cmd_exact(
    fmt: Format,
    n: Option<u64>,
    upto: Option<u64>,
    method: Method,
    verify: bool,
) -> planepart::Result<ExitCode> {
    let limit = n.or(upto).expect("clap enforces n or --upto");
    let coeffs = coefficients(method, limit)?;

    if verify {
        for other in [Method::Recurrence, Method::Product, Method::Brute] {
            if other == method {
                continue;
            }
            // Brute force only reaches a small prefix; verify what it can.
            let cap = if other == Method::Brute { limit.min(ENUMERATION_LIMIT) } else { limit };
            let reference = coefficients(other, cap)?;
            for (i, want) in reference.iter().enumerate() {
                if &coeffs[i] != want {
                    return Err(Error::RouteDisagreement(format!(
                        "{} and {} disagree at n = {i}: {} vs {want}",
                        method.as_str(),
                        other.as_str(),
                        coeffs[i]
                    )));
                }
            }
        }
    }

    match (n, fmt) {
        (Some(n), Format::Text) => println!("{}", coeffs[n as usize]),
        (Some(n), Format::Csv) => {
            println!("n,value");
            println!("{n},{}", coeffs[n as usize]);
        }
        (Some(n), Format::Json) => emit_json(&json!({
            "method": method.as_str(),
            "n": n,
            "q": coeffs[n as usize].to_string(),
            "verified": verify,
        })),
        (None, Format::Text) => {
            for (i, q) in coeffs.iter().enumerate() {
                println!("{i} {q}");
            }
        }
        (None, Format::Csv) => {
            println!("n,value");
            for (i, q) in coeffs.iter().enumerate() {
                println!("{i},{q}");
            }
        }
        (None, Format::Json) => {
            let rows: Vec<Value> = coeffs
                .iter()
                .enumerate()
                .map(|(i, q)| json!({"n": i, "q": q.to_string()}))
                .collect();
            emit_json(&json!({
                "method": method.as_str(),
                "rows": rows,
                "verified": verify,
            }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn asym_json(n: u64, gamma0: Gamma, prec: u32, av: &AsymptoticValue) -> Value {
    json!({
        "exponent": av.exponent(),
        "gamma0": gamma0.to_lib().as_str(),
        "log10": av.log10_value().to_decimal(decimal_digits(prec)),
        "mantissa": av.mantissa(),
        "n": n,
        "prec": prec,
        "rendered": av.render(),
    })
}

fn cmd_asym(fmt: Format, n: u64, gamma0: Gamma, prec: u32) -> planepart::Result<ExitCode> {
    let av = wright_leading(n, gamma0.to_lib(), prec)?;
    match fmt {
        Format::Text => println!("{}", av.render()),
        Format::Csv => {
            println!("n,value");
            println!("{n},{}", av.render());
        }
        Format::Json => emit_json(&asym_json(n, gamma0, prec, &av)),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(fmt: Format, rows: &[u64], prec: u32, max_n: u64) -> planepart::Result<ExitCode> {
    if rows.is_empty() {
        return Err(Error::InvalidParams("--rows needs at least one index".into()));
    }
    let largest = *rows.iter().max().expect("nonempty");
    if largest > max_n {
        return Err(Error::ResourceLimit(format!(
            "row {largest} exceeds the limit {max_n}; raise --max-n to allow it"
        )));
    }
    let table = plane_partition_table(largest)?;

    struct Row {
        n: u64,
        exact: BigUint,
        exact_cell: String,
        one_cell: String,
        corr_cell: String,
    }
    let mut built = Vec::with_capacity(rows.len());
    for &n in rows {
        let exact = table.get(n).clone();
        let (one_cell, corr_cell) = if n == 0 {
            // No asymptotic value at n = 0; the columns stay present.
            ("-".to_string(), "-".to_string())
        } else {
            let one = wright_leading(n, WrightGamma0::ClaimedOne, prec)?;
            let corr = wright_leading(n, WrightGamma0::CorrectedInvSqrt3, prec)?;
            let (_, anchor) = exact_leading_parts(&exact);
            if anchor > 0 {
                // Align both approximations with the exact column's power.
                (one.render_for_exponent(anchor)?, corr.render_for_exponent(anchor)?)
            } else {
                (one.render(), corr.render())
            }
        };
        built.push(Row {
            n,
            exact_cell: render_exact(&exact),
            exact,
            one_cell,
            corr_cell,
        });
    }

    match fmt {
        Format::Text => {
            let headers = ["n", "exact", "gamma0 = 1", "gamma0 = 3^(-1/2)"];
            let cells: Vec<[String; 4]> = built
                .iter()
                .map(|r| {
                    [r.n.to_string(), r.exact_cell.clone(), r.one_cell.clone(), r.corr_cell.clone()]
                })
                .collect();
            let mut width = headers.map(str::len);
            for row in &cells {
                for (w, cell) in width.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let print_row = |row: [&str; 4]| {
                let mut line = String::new();
                for (i, (cell, w)) in row.iter().zip(width).enumerate() {
                    if i > 0 {
                        line.push_str("  ");
                    }
                    line.push_str(cell);
                    if i + 1 < row.len() {
                        line.push_str(&" ".repeat(w - cell.chars().count()));
                    }
                }
                println!("{line}");
            };
            print_row(headers);
            for row in &cells {
                print_row([&row[0], &row[1], &row[2], &row[3]]);
            }
        }
        Format::Csv => {
            println!("n,exact,gamma0_one,gamma0_corrected");
            for r in &built {
                println!("{},{},{},{}", r.n, r.exact, r.one_cell, r.corr_cell);
            }
        }
        Format::Json => {
            let rows: Vec<Value> = built
                .iter()
                .map(|r| {
                    json!({
                        "asym_corrected": r.corr_cell,
                        "asym_one": r.one_cell,
                        "exact": r.exact.to_string(),
                        "exact_rendered": r.exact_cell,
                        "n": r.n,
                    })
                })
                .collect();
            emit_json(&json!({"prec": prec, "rows": rows}));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_constants(fmt: Format, prec: u32) -> planepart::Result<ExitCode> {
    // constant_c cross-checks the series route against quadrature and fails
    // with a route disagreement (exit 2) if the two drift apart.
    let c = constants::constant_c(prec)?;
    let z3 = constants::zeta3(prec)?;
    let zp1 = constants::zeta_prime_minus1(prec)?;
    let d0 = constants::d_zero();
    let digits = decimal_digits(prec);

    match fmt {
        Format::Text => {
            println!("prec = {prec} bits");
            println!("c = {}", c.to_decimal(digits));
            println!("zeta(3) = {}", z3.to_decimal(digits));
            println!("zeta'(-1) = {}", zp1.to_decimal(digits));
            println!("D(0) = {d0}");
        }
        Format::Csv => {
            println!("name,value");
            println!("c,{}", c.to_decimal(digits));
            println!("zeta3,{}", z3.to_decimal(digits));
            println!("zeta_prime_minus1,{}", zp1.to_decimal(digits));
            println!("d0,{d0}");
        }
        Format::Json => emit_json(&json!({
            "c": c.to_decimal(digits),
            "d0": d0.to_string(),
            "prec": prec,
            "zeta3": z3.to_decimal(digits),
            "zeta_prime_minus1": zp1.to_decimal(digits),
        })),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_meinardus(
    fmt: Format,
    instance: Instance,
    n: Option<u64>,
    prec: u32,
) -> planepart::Result<ExitCode> {
    let params = instance.params(prec)?;
    let mc = meinardus_constants(&params, prec)?;
    let digits = decimal_digits(prec);
    let log10_main = n.map(|n| asymptotic_log10(&params, n, prec)).transpose()?;

    match fmt {
        Format::Text => {
            println!("instance = {}", instance.as_str());
            println!("C = {}", mc.c.to_decimal(digits));
            println!("K = {}", mc.k);
            println!("K1 = {}", mc.k1);
            if let (Some(n), Some(l)) = (n, &log10_main) {
                println!("log10 main term (n = {n}) = {}", l.to_decimal(digits));
            }
        }
        Format::Csv => {
            println!("name,value");
            println!("instance,{}", instance.as_str());
            println!("c,{}", mc.c.to_decimal(digits));
            println!("k,{}", mc.k);
            println!("k1,{}", mc.k1);
            if let (Some(n), Some(l)) = (n, &log10_main) {
                println!("n,{n}");
                println!("log10_main,{}", l.to_decimal(digits));
            }
        }
        Format::Json => {
            let mut v = json!({
                "c": mc.c.to_decimal(digits),
                "instance": instance.as_str(),
                "k": mc.k.to_string(),
                "k1": mc.k1.to_string(),
                "prec": prec,
            });
            if let (Some(n), Some(l)) = (n, &log10_main) {
                v["log10_main"] = Value::String(l.to_decimal(digits));
                v["n"] = json!(n);
            }
            emit_json(&v);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_scan_iv(
    fmt: Format,
    ymin: f64,
    ymax: f64,
    steps: usize,
    wsteps: usize,
    eps: f64,
    c2: f64,
) -> planepart::Result<ExitCode> {
    let grid = GridSpec::log_grid(ymin, ymax, steps, wsteps, eps, c2)?;
    let report = scan_condition_iv(&grid);
    print_scan_report(fmt, &report);
    if report.pass {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}

fn print_scan_report(fmt: Format, report: &ScanReport) {
    match fmt {
        Format::Text => {
            println!("points = {}", report.points_checked);
            println!("epsilon = {}", report.epsilon);
            println!("C2 = {}", report.c2);
            println!("certified C2 = {}", report.certified_c2);
            println!(
                "worst: y = {}, w = {}, margin = {}, excess = {}",
                report.worst.y, report.worst.w, report.worst.margin, report.worst.excess
            );
            println!("result = {}", if report.pass { "PASS" } else { "FAIL" });
        }
        Format::Csv => {
            println!("name,value");
            println!("points,{}", report.points_checked);
            println!("epsilon,{}", report.epsilon);
            println!("c2,{}", report.c2);
            println!("certified_c2,{}", report.certified_c2);
            println!("worst_y,{}", report.worst.y);
            println!("worst_w,{}", report.worst.w);
            println!("worst_margin,{}", report.worst.margin);
            println!("worst_excess,{}", report.worst.excess);
            println!("pass,{}", report.pass);
        }
        Format::Json => {
            let v = serde_json::to_value(report).expect("report serializes");
            emit_json(&v);
        }
    }
}
