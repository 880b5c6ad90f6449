//! The `frobscan` command line.
//!
//! Every subcommand produces one [`Table`]. CSV output starts with a `#` line holding
//! the canonical invocation, then a header row; JSON output is an array of objects
//! with the same columns.

use crate::arith::is_prime;
use crate::census::{
    eligibility, level_formula, level_formula_unweighted, Census, LevelStructure, CENSUS_LIMIT,
};
use crate::classnum::{class_number_h, field_size, kronecker_class_number, schoof_n, Discriminant};
use crate::ellcurve::hasse_bound;
use crate::error::{Error, Result};
use crate::gf::{make_field, TABLE_LIMIT};
use crate::surface::{parse_family, Angle, BoundCheck, Family, ScanReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::{Map, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_COMPUTATION: u8 = 2;
pub const EXIT_VERIFICATION: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "frobscan",
    version,
    about = "Frobenius trace censuses of elliptic curves over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the table here instead of standard output.
    #[arg(short = 'o', long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for census and scan.
    #[arg(long, global = true, env = "FROBSCAN_JOBS")]
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Class numbers h(D) and H(D).
    Classnum(ClassnumArgs),
    /// Schoof's N(t) with the case used.
    Ntrace(NtraceArgs),
    /// Isomorphism class census against N(t) or a level formula.
    Census(CensusArgs),
    /// Same as `census`, with the level required.
    LevelCensus(LevelCensusArgs),
    /// Fiber scan of a one-parameter family.
    Scan(ScanArgs),
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct ClassnumArgs {
    /// A single discriminant.
    #[arg(short = 'd', long = "disc", conflicts_with_all = ["from", "to"], required_unless_present = "from")]
    pub disc: Option<i64>,
    #[arg(long, requires = "to")]
    pub from: Option<i64>,
    #[arg(long, requires = "from")]
    pub to: Option<i64>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
#[command(group(clap::ArgGroup::new("traces").required(true).args(["t", "all_t", "from"])))]
pub struct NtraceArgs {
    #[arg(short = 'p')]
    pub p: u64,
    #[arg(short = 'e', default_value_t = 1)]
    pub e: u32,
    #[arg(short = 'k', default_value_t = 1)]
    pub k: u32,
    #[arg(short = 't')]
    pub t: Option<i64>,
    /// Every t in the Hasse interval, followed by a sum row.
    #[arg(long)]
    pub all_t: bool,
    #[arg(long, requires = "to")]
    pub from: Option<i64>,
    #[arg(long, requires = "from")]
    pub to: Option<i64>,
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    #[arg(short = 'p')]
    pub p: u64,
    #[arg(short = 'e', default_value_t = 1)]
    pub e: u32,
    #[arg(short = 'k', default_value_t = 1)]
    pub k: u32,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// igusa:n, gamma:N or gamma1:l
    #[arg(long, value_parser = parse_level)]
    pub level: Option<LevelStructure>,
}

#[derive(Args, Debug)]
pub struct LevelCensusArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, value_parser = parse_level)]
    pub level: LevelStructure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    Legendre,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["builtin", "file"])))]
#[command(group(clap::ArgGroup::new("mode").args(["t", "angles", "hist", "fibers", "bounds"])))]
pub struct ScanArgs {
    #[arg(long, value_enum, requires = "p")]
    pub builtin: Option<Builtin>,
    /// Family file with `key = value` lines.
    #[arg(short = 'f', long)]
    pub file: Option<PathBuf>,
    #[arg(short = 'p', conflicts_with = "file")]
    pub p: Option<u64>,
    /// Largest closed-point degree.
    #[arg(short = 'B')]
    pub b: u32,
    /// pi(B,t) against its bound.
    #[arg(short = 't')]
    pub t: Option<i64>,
    /// pi(B,alpha,beta) against its bound.
    #[arg(long, num_args = 2, value_names = ["ALPHA", "BETA"], value_parser = parse_angle)]
    pub angles: Option<Vec<Angle>>,
    /// Angle histogram with this many bins.
    #[arg(long)]
    pub hist: Option<usize>,
    /// Fiber type counts per degree.
    #[arg(long)]
    pub fibers: bool,
    /// pi(B,t) and its bound for every t.
    #[arg(long)]
    pub bounds: bool,
}

fn parse_level(s: &str) -> std::result::Result<LevelStructure, String> {
    LevelStructure::parse(s).map_err(|e| e.to_string())
}

fn parse_angle(s: &str) -> std::result::Result<Angle, String> {
    Angle::parse(s).map_err(|e| e.to_string())
}

/// A rendered result with its canonical invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub invocation: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    fn new(invocation: String, columns: &[&'static str]) -> Table {
        Table {
            invocation,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// True when some row is flagged MISMATCH or BOUND-VIOLATED.
    pub fn has_failures(&self) -> bool {
        let Some(i) = self.columns.iter().position(|&c| c == "status") else {
            return false;
        };
        self.rows
            .iter()
            .any(|r| matches!(r[i].as_str(), Some("MISMATCH" | "BOUND-VIOLATED")))
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(cell_text))
                .expect("in-memory write");
        }
        let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
        format!("# frobscan {}\n{body}", self.invocation)
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .map(|c| c.to_string())
                    .zip(row.iter().cloned())
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("json");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Rounds to 12 significant digits.
pub fn float_value(x: f64) -> Value {
    let rounded: f64 = format!("{x:.11e}").parse().expect("float");
    serde_json::Number::from_f64(rounded)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn ratio_value(r: Ratio<i64>) -> Value {
    if r.is_integer() {
        Value::from(r.to_integer())
    } else {
        Value::from(format!("{}/{}", r.numer(), r.denom()))
    }
}

fn flag(ok: bool) -> Value {
    Value::from(if ok { "MATCH" } else { "MISMATCH" })
}

fn bound_flag(check: &BoundCheck) -> Value {
    Value::from(if check.holds() {
        "BOUND-OK"
    } else {
        "BOUND-VIOLATED"
    })
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p <= 3 {
        return Err(Error::SmallCharacteristic(p));
    }
    Ok(())
}

fn check_degrees(e: u32, k: u32) -> Result<()> {
    if e == 0 || k == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(())
}

pub fn cmd_classnum(args: &ClassnumArgs) -> Result<Table> {
    let (lo, hi, invocation) = match (args.disc, args.from, args.to) {
        (Some(d), _, _) => (d, d, format!("classnum -d {d}")),
        (None, Some(a), Some(b)) => (a, b, format!("classnum --from {a} --to {b}")),
        _ => return Err(Error::InvalidArgument("give -d or --from/--to".into())),
    };
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty range {lo}..{hi}")));
    }
    let mut table = Table::new(invocation, &["D", "h", "H", "error"]);
    for d in lo..=hi {
        match Discriminant::new(d) {
            Ok(disc) => table.push(vec![
                Value::from(d),
                Value::from(class_number_h(disc)),
                Value::from(kronecker_class_number(disc)),
                Value::Null,
            ]),
            Err(e) => table.push(vec![
                Value::from(d),
                Value::Null,
                Value::Null,
                Value::from(e.to_string()),
            ]),
        }
    }
    Ok(table)
}

pub fn cmd_ntrace(args: &NtraceArgs) -> Result<Table> {
    check_prime(args.p)?;
    check_degrees(args.e, args.k)?;
    let q = field_size(args.p, args.e, args.k)?;
    let base = format!("ntrace -p {} -e {} -k {}", args.p, args.e, args.k);
    let (traces, invocation): (Vec<i64>, String) = match (args.t, args.all_t, args.from, args.to) {
        (Some(t), _, _, _) => (vec![t], format!("{base} -t {t}")),
        (None, true, _, _) => {
            let h = hasse_bound(q);
            ((-h..=h).collect(), format!("{base} --all-t"))
        }
        (None, false, Some(a), Some(b)) if a <= b => {
            ((a..=b).collect(), format!("{base} --from {a} --to {b}"))
        }
        _ => {
            return Err(Error::InvalidArgument(
                "give -t, --all-t or a nonempty --from/--to".into(),
            ))
        }
    };
    let mut table = Table::new(invocation, &["t", "N", "case"]);
    let mut total = 0u64;
    for t in traces {
        let n = schoof_n(t, args.p, args.e, args.k)?;
        total += n.value;
        table.push(vec![
            Value::from(t),
            Value::from(n.value),
            Value::from(n.case.label()),
        ]);
    }
    if args.all_t {
        table.push(vec![Value::from("sum"), Value::from(total), Value::Null]);
    }
    Ok(table)
}

pub fn cmd_census(field: &FieldArgs, level: Option<LevelStructure>, name: &str) -> Result<Table> {
    let FieldArgs { p, e, k } = *field;
    check_prime(p)?;
    check_degrees(e, k)?;
    if let Some(level) = level {
        level.validate(p)?;
    }
    let q = field_size(p, e, k)?;
    if q > CENSUS_LIMIT {
        return Err(Error::FieldTooLarge {
            q,
            limit: CENSUS_LIMIT,
            what: "isomorphism class census",
        });
    }
    let mut invocation = format!("{name} -p {p} -e {e} -k {k}");
    if let Some(level) = level {
        invocation.push_str(&format!(" --level {level}"));
    }
    let census = Census::run(Arc::new(make_field(p, e * k)?))?;

    let Some(level) = level else {
        let mut table = Table::new(invocation, &["t", "empirical", "formula", "status"]);
        for t in census.trace_range() {
            let empirical = census.empirical_n(t);
            let formula = schoof_n(t, p, e, k)?.value;
            table.push(vec![
                Value::from(t),
                Value::from(empirical),
                Value::from(formula),
                flag(empirical == formula),
            ]);
        }
        return Ok(table);
    };

    let mut table = Table::new(
        invocation,
        &[
            "t",
            "eligible",
            "empirical",
            "formula",
            "formula_unweighted",
            "status",
            "note",
        ],
    );
    for t in census.trace_range() {
        let el = eligibility(level, p, e, k, t)?;
        let mass = census.level_mass(level, t)?;
        let (formula, unweighted, status, note) = if el.eligible {
            match (
                level_formula(level, p, e, k, t),
                level_formula_unweighted(level, p, e, k, t),
            ) {
                (Ok(w), Ok(u)) => (ratio_value(w), ratio_value(u), flag(w == mass), Value::Null),
                (Err(Error::FormulaUndefined(why)), _) | (_, Err(Error::FormulaUndefined(why))) => {
                    (
                        Value::Null,
                        Value::Null,
                        Value::from("UNDEFINED"),
                        Value::from(why),
                    )
                }
                (Err(err), _) | (_, Err(err)) => return Err(err),
            }
        } else {
            (
                Value::from(0),
                Value::from(0),
                flag(mass == Ratio::from_integer(0)),
                Value::from(el.reason),
            )
        };
        table.push(vec![
            Value::from(t),
            Value::from(el.eligible),
            ratio_value(mass),
            formula,
            unweighted,
            status,
            note,
        ]);
    }
    Ok(table)
}

fn load_family(args: &ScanArgs) -> Result<(Family, String)> {
    match (&args.builtin, &args.file) {
        (Some(Builtin::Legendre), _) => {
            let p = args
                .p
                .ok_or_else(|| Error::InvalidArgument("--builtin needs -p".into()))?;
            Ok((Family::legendre(p)?, format!("--builtin legendre -p {p}")))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
            })?;
            Ok((parse_family(&text)?, format!("-f {}", path.display())))
        }
        (None, None) => Err(Error::InvalidArgument("give --builtin or -f".into())),
    }
}

pub fn cmd_scan(args: &ScanArgs) -> Result<Table> {
    let (family, source) = load_family(args)?;
    if args.b == 0 {
        return Err(Error::InvalidArgument("B must be at least 1".into()));
    }
    if args.hist == Some(0) {
        return Err(Error::InvalidArgument(
            "histogram needs at least one bin".into(),
        ));
    }
    let angles = match args.angles.as_deref() {
        Some(&[alpha, beta]) if alpha.radians() > beta.radians() => {
            return Err(Error::InvalidAngle(format!(
                "interval start {alpha} exceeds end {beta}"
            )))
        }
        Some(&[alpha, beta]) => Some((alpha, beta)),
        _ => None,
    };
    let base = format!("scan {source} -B {}", args.b);
    let report = ScanReport::run(&family, args.b)?;

    if let Some(t) = args.t {
        let check = report.pi_b_t(t)?;
        let mut table = Table::new(
            format!("{base} -t {t}"),
            &["B", "t", "count", "bound", "status"],
        );
        table.push(vec![
            Value::from(args.b),
            Value::from(t),
            Value::from(check.count),
            Value::from(check.bound),
            bound_flag(&check),
        ]);
        return Ok(table);
    }
    if let Some((alpha, beta)) = angles {
        let check = report.pi_b_angle(alpha, beta)?;
        let mut table = Table::new(
            format!("{base} --angles {alpha} {beta}"),
            &["B", "alpha", "beta", "count", "bound", "status"],
        );
        table.push(vec![
            Value::from(args.b),
            Value::from(alpha.to_string()),
            Value::from(beta.to_string()),
            Value::from(check.count),
            Value::from(check.bound),
            bound_flag(&check),
        ]);
        return Ok(table);
    }
    if let Some(nbins) = args.hist {
        let hist = report.histogram(nbins)?;
        let mut table = Table::new(
            format!("{base} --hist {nbins}"),
            &[
                "bin",
                "lo",
                "hi",
                "count",
                "frequency",
                "density",
                "reference_mass",
                "reference_density",
            ],
        );
        for (i, bin) in hist.bins.iter().enumerate() {
            table.push(vec![
                Value::from(i),
                float_value(bin.lo),
                float_value(bin.hi),
                Value::from(bin.count),
                float_value(bin.frequency),
                float_value(bin.density),
                float_value(bin.reference_mass),
                float_value(bin.reference_density),
            ]);
        }
        return Ok(table);
    }
    if args.fibers {
        let mut table = Table::new(
            format!("{base} --fibers"),
            &[
                "k",
                "ordinary",
                "supersingular",
                "bad",
                "good",
                "j_degree",
                "j_separable_degree",
            ],
        );
        for lv in &report.levels {
            table.push(vec![
                Value::from(lv.k),
                Value::from(lv.counts.ordinary),
                Value::from(lv.counts.supersingular),
                Value::from(lv.counts.bad),
                Value::from(lv.counts.good()),
                Value::from(report.j_degree),
                Value::from(report.j_separable_degree),
            ]);
        }
        return Ok(table);
    }
    if args.bounds {
        let mut table = Table::new(
            format!("{base} --bounds"),
            &["B", "t", "count", "bound", "status"],
        );
        for t in report.trace_range() {
            let check = report.pi_b_t(t)?;
            table.push(vec![
                Value::from(args.b),
                Value::from(t),
                Value::from(check.count),
                Value::from(check.bound),
                bound_flag(&check),
            ]);
        }
        return Ok(table);
    }

    let mut table = Table::new(
        base,
        &["k", "t", "pi_doubleprime", "pi_prime", "bound", "status"],
    );
    for row in report.pointwise_bounds()? {
        let lv = report.level(row.k).expect("scanned level");
        table.push(vec![
            Value::from(row.k),
            Value::from(row.t),
            Value::from(row.check.count),
            Value::from(lv.prime.get(&row.t).copied().unwrap_or(0)),
            Value::from(row.check.bound),
            bound_flag(&row.check),
        ]);
    }
    Ok(table)
}

fn check_census_field(field: &FieldArgs, level: Option<LevelStructure>) -> Result<()> {
    check_prime(field.p)?;
    check_degrees(field.e, field.k)?;
    if let Some(level) = level {
        level.validate(field.p)?;
    }
    let q = field_size(field.p, field.e, field.k)?;
    if q > CENSUS_LIMIT {
        return Err(Error::FieldTooLarge {
            q,
            limit: CENSUS_LIMIT,
            what: "isomorphism class census",
        });
    }
    Ok(())
}

/// Checks the parameters of a parsed command line without computing anything.
pub fn validate(cli: &Cli) -> Result<()> {
    if cli.jobs == Some(0) {
        return Err(Error::InvalidArgument("--jobs must be at least 1".into()));
    }
    match &cli.command {
        Command::Classnum(a) => match (a.from, a.to) {
            (Some(lo), Some(hi)) if lo > hi => {
                Err(Error::InvalidArgument(format!("empty range {lo}..{hi}")))
            }
            _ => Ok(()),
        },
        Command::Ntrace(a) => {
            check_prime(a.p)?;
            check_degrees(a.e, a.k)?;
            field_size(a.p, a.e, a.k)?;
            match (a.from, a.to) {
                (Some(lo), Some(hi)) if lo > hi => {
                    Err(Error::InvalidArgument(format!("empty range {lo}..{hi}")))
                }
                _ => Ok(()),
            }
        }
        Command::Census(a) => check_census_field(&a.field, a.level),
        Command::LevelCensus(a) => check_census_field(&a.field, Some(a.level)),
        Command::Scan(a) => {
            let (family, _) = load_family(a)?;
            if a.b == 0 {
                return Err(Error::InvalidArgument("B must be at least 1".into()));
            }
            let q = field_size(family.p(), 1, a.b)?;
            if q > TABLE_LIMIT {
                return Err(Error::FieldTooLarge {
                    q,
                    limit: TABLE_LIMIT,
                    what: "fiber scan",
                });
            }
            if a.hist == Some(0) {
                return Err(Error::InvalidArgument(
                    "histogram needs at least one bin".into(),
                ));
            }
            if let Some(&[alpha, beta]) = a.angles.as_deref() {
                if alpha.radians() > beta.radians() {
                    return Err(Error::InvalidAngle(format!(
                        "interval start {alpha} exceeds end {beta}"
                    )));
                }
            }
            Ok(())
        }
    }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Table> {
    let work = || match &cli.command {
        Command::Classnum(a) => cmd_classnum(a),
        Command::Ntrace(a) => cmd_ntrace(a),
        Command::Census(a) => cmd_census(&a.field, a.level, "census"),
        Command::LevelCensus(a) => cmd_census(&a.field, Some(a.level), "level-census"),
        Command::Scan(a) => cmd_scan(a),
    };
    match cli.jobs {
        Some(0) => Err(Error::InvalidArgument("--jobs must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    }
}

/// Parses `args` (program name first), runs, and writes the table. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return if err.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    if let Err(err) = validate(&cli) {
        let _ = writeln!(stderr, "error: {err}");
        return EXIT_USAGE;
    }
    let table = match execute(&cli) {
        Ok(table) => table,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            return EXIT_COMPUTATION;
        }
    };
    let text = table.render(cli.format);
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: cannot write output: {msg}");
        return EXIT_COMPUTATION;
    }
    if table.has_failures() {
        EXIT_VERIFICATION
    } else {
        EXIT_OK
    }
}

pub fn main() -> ExitCode {
    let code = run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code)
}
