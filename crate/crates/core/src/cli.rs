//! Command-line interface: `coeffs`, `approx`, `table` and `verify`.
//!
//! Exit codes: 0 ok or certified, 1 violated, 2 usage or domain error,
//! 3 precision error, 4 inconclusive.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    grid, probe_f1_shape, verify_ordering, verify_remainder, verify_sandwich, RateReport, TableReport, TABLE_FORMULAS,
    TABLE_XS,
};
use crate::approximations::{eval_formula, FormulaId};
use crate::coefficients::{CoefficientFamily, FamilyKind};
use crate::error::{Error, Result};
use crate::numerics::{decimal_digits, Certainty, Interval, Rational, Real, Round, DEFAULT_PRECISION};
use crate::report::{render, OutputFormat, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

/// Largest `n_max` accepted by `coeffs`.
pub const MAX_COEFF_INDEX: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "windschitl", version, about = "Windschitl-type gamma approximations with rigorous enclosures")]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION, value_parser = clap::value_parser!(u32).range(64..=4096))]
    pub precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    /// Significant digits in scientific output (default: what the precision supports).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=2000))]
    pub digits: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    A,
    Astar,
    B,
    C,
    Stirling,
    Lu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    Ordering,
    Sandwich,
    Remainder,
    Rate,
    F1shape,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print exact expansion coefficients as "n,p/q".
    Coeffs {
        #[arg(value_enum)]
        family: FamilyArg,
        n_max: usize,
    },
    /// Enclose one formula at one point.
    Approx {
        /// w0, w1, w01, w01star, wc1 or wl1
        formula: String,
        /// Decimal argument, x > 0.
        x: String,
    },
    /// Relative errors |W(x) - Γ(x+1)| / Γ(x+1), 4 significant digits.
    Table {
        /// Comma-separated arguments.
        #[arg(long, value_delimiter = ',')]
        xs: Option<Vec<String>>,
        /// Comma-separated formula names.
        #[arg(long, value_delimiter = ',')]
        formulas: Option<Vec<String>>,
    },
    /// Certify an inequality or bound; exit 0 certified, 1 violated, 4 inconclusive.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub check: Option<CheckArg>,
    /// Same as the positional check name.
    #[arg(long = "check", value_enum, conflicts_with = "check")]
    pub check_flag: Option<CheckArg>,
    /// Grid "start:stop:step", endpoints inclusive (ordering, sandwich, f1shape).
    #[arg(long)]
    pub grid: Option<String>,
    /// Comma-separated arguments (remainder, rate).
    #[arg(long, value_delimiter = ',')]
    pub xs: Option<Vec<String>>,
    /// Probe argument(s) for rate; comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub x: Option<Vec<String>>,
    /// Truncation indices for remainder: "4:8" or "4,5,6".
    #[arg(long)]
    pub n: Option<String>,
    /// Formula for rate.
    #[arg(long)]
    pub formula: Option<String>,
    /// Comma-separated formulas for rate.
    #[arg(long, value_delimiter = ',')]
    pub formulas: Option<Vec<String>>,
}

fn parse_x(s: &str, precision: u32) -> Result<Real> {
    let x = Real::from_decimal_str(s.trim(), precision)?;
    if !x.is_positive() {
        return Err(Error::Domain(format!("x must be positive, got {s}")));
    }
    Ok(x)
}

fn parse_xs(list: &[String], precision: u32) -> Result<Vec<Real>> {
    list.iter().map(|s| parse_x(s, precision)).collect()
}

fn parse_formulas(list: &[String]) -> Result<Vec<FormulaId>> {
    list.iter().map(|s| s.parse()).collect()
}

/// Parses `"start:stop:step"` into an inclusive grid.
pub fn parse_grid(spec: &str, precision: u32) -> Result<Vec<Real>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("grid must be start:stop:step, got '{spec}'")));
    }
    let r = |s: &str| Rational::from_decimal_str(s.trim());
    grid(&r(parts[0])?, &r(parts[1])?, &r(parts[2])?, precision)
}

/// Parses `"4:8"` (inclusive) or `"4,5,6"`.
pub fn parse_indices(spec: &str) -> Result<Vec<usize>> {
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index '{s}'")));
    if let Some((a, b)) = spec.split_once(':') {
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(Error::Parse(format!("empty index range '{spec}'")));
        }
        return Ok((a..=b).collect());
    }
    spec.split(',').map(num).collect()
}

fn family_kinds(f: FamilyArg) -> Vec<FamilyKind> {
    match f {
        FamilyArg::A => vec![FamilyKind::A],
        FamilyArg::Astar => vec![FamilyKind::AStar],
        FamilyArg::B => vec![FamilyKind::B],
        FamilyArg::C => vec![FamilyKind::C],
        FamilyArg::Stirling => vec![FamilyKind::StirlingPrime, FamilyKind::StirlingDoublePrime],
        FamilyArg::Lu => vec![FamilyKind::Lu],
    }
}

/// Coefficient listing; `stirling` has two value columns.
pub struct CoeffsReport {
    pub families: Vec<CoefficientFamily>,
}

impl Report for CoeffsReport {
    fn command(&self) -> &'static str {
        "coeffs"
    }
    fn precision_bits(&self) -> u32 {
        0
    }
    fn columns(&self) -> Vec<String> {
        if self.families.len() == 2 {
            vec!["n".into(), "prime".into(), "double_prime".into()]
        } else {
            vec!["n".into(), "value".into()]
        }
    }
    fn records(&self) -> Vec<Vec<String>> {
        let first = &self.families[0];
        (0..first.values.len())
            .map(|i| {
                std::iter::once(first.values[i].0.to_string())
                    .chain(self.families.iter().map(|f| f.values[i].1.to_string()))
                    .collect()
            })
            .collect()
    }
    fn json_rows(&self) -> serde_json::Value {
        let cols = self.columns();
        self.records()
            .into_iter()
            .map(|r| {
                let mut m = serde_json::Map::new();
                m.insert("n".into(), r[0].parse::<u64>().unwrap_or_default().into());
                for (c, v) in cols.iter().zip(r).skip(1) {
                    m.insert(c.clone(), v.into());
                }
                serde_json::Value::Object(m)
            })
            .collect()
    }
}

/// One enclosure of a formula value.
pub struct ApproxReport {
    pub precision_bits: u32,
    pub formula: FormulaId,
    pub x: Real,
    pub value: Interval,
    pub digits: usize,
}

impl Report for ApproxReport {
    fn command(&self) -> &'static str {
        "approx"
    }
    fn precision_bits(&self) -> u32 {
        self.precision_bits
    }
    fn columns(&self) -> Vec<String> {
        ["formula", "x", "lo", "hi", "mid"].map(String::from).to_vec()
    }
    fn records(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.formula.to_string(),
            self.x.to_plain_string(20),
            self.value.lo().to_scientific_rounded(self.digits, Round::Down),
            self.value.hi().to_scientific_rounded(self.digits, Round::Up),
            self.value.mid().to_scientific(self.digits),
        ]]
    }
    fn json_rows(&self) -> serde_json::Value {
        let r = &self.records()[0];
        serde_json::json!([{"formula": r[0], "x": r[1], "lo": r[2], "hi": r[3], "mid": r[4]}])
    }
}

fn exit_for(status: Certainty) -> i32 {
    match status {
        Certainty::Certified => EXIT_OK,
        Certainty::Violated => EXIT_VIOLATED,
        Certainty::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn exit_for_error(e: &Error) -> i32 {
    match e {
        Error::Precision { .. } => EXIT_PRECISION,
        _ => EXIT_USAGE,
    }
}

fn emit(report: &dyn Report, format: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    let text = render(report, format)?;
    out.write_all(text.as_bytes()).map_err(|e| Error::Parse(format!("write failed: {e}")))?;
    Ok(exit_for(report.status()))
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let p = cli.config.precision;
    let format: OutputFormat = cli.config.format.into();
    let digits = cli.config.digits.map(|d| d as usize);
    let sci_digits = digits.unwrap_or_else(|| decimal_digits(p));
    match cli.command {
        Command::Coeffs { family, n_max } => {
            if n_max > MAX_COEFF_INDEX {
                return Err(Error::Domain(format!("n_max must be at most {MAX_COEFF_INDEX}, got {n_max}")));
            }
            let families = family_kinds(family).into_iter().map(|k| CoefficientFamily::generate(k, n_max)).collect();
            let report = CoeffsReport { families };
            if format == OutputFormat::Text {
                // plain "n,value" lines
                for r in report.records() {
                    writeln!(out, "{}", r.join(",")).map_err(|e| Error::Parse(e.to_string()))?;
                }
                return Ok(EXIT_OK);
            }
            emit(&report, format, out)
        }
        Command::Approx { formula, x } => {
            let formula: FormulaId = formula.parse()?;
            let x = parse_x(&x, p)?;
            let value = eval_formula(formula, &x, p)?;
            emit(&ApproxReport { precision_bits: p, formula, x, value, digits: sci_digits }, format, out)
        }
        Command::Table { xs, formulas } => {
            let xs = match xs {
                Some(list) => parse_xs(&list, p)?,
                None => TABLE_XS.iter().map(|&x| Real::from_int(x, p)).collect(),
            };
            let formulas = match formulas {
                Some(list) => parse_formulas(&list)?,
                None => TABLE_FORMULAS.to_vec(),
            };
            let mut report = TableReport::new(&xs, &formulas, p)?;
            if let Some(d) = digits {
                report.digits = d;
            }
            emit(&report, format, out)
        }
        Command::Verify(args) => {
            let check = args
                .check
                .or(args.check_flag)
                .ok_or_else(|| Error::Parse("verify needs a check: ordering, sandwich, remainder, rate or f1shape".into()))?;
            let grid_or = |default: &str| parse_grid(args.grid.as_deref().unwrap_or(default), p);
            match check {
                CheckArg::Ordering => emit(&verify_ordering(&grid_or("1:100:0.25")?, p)?, format, out),
                CheckArg::Sandwich => {
                    let mut r = verify_sandwich(&grid_or("1:100:0.25")?, p)?;
                    r.digits = sci_digits;
                    emit(&r, format, out)
                }
                CheckArg::F1shape => {
                    let mut r = probe_f1_shape(&grid_or("1:10:0.5")?, p)?;
                    r.digits = sci_digits;
                    emit(&r, format, out)
                }
                CheckArg::Remainder => {
                    let ns = parse_indices(args.n.as_deref().unwrap_or("4:8"))?;
                    let xs = match &args.xs {
                        Some(list) => parse_xs(list, p)?,
                        None => parse_xs(&["1", "2", "5", "10"].map(String::from), p)?,
                    };
                    let mut r = verify_remainder(&ns, &xs, p)?;
                    r.digits = sci_digits;
                    emit(&r, format, out)
                }
                CheckArg::Rate => {
                    let formulas = match (&args.formula, &args.formulas) {
                        (Some(f), _) => vec![f.parse()?],
                        (None, Some(list)) => parse_formulas(list)?,
                        (None, None) => vec![
                            FormulaId::W1,
                            FormulaId::Wc1,
                            FormulaId::W01,
                            FormulaId::W01Star,
                            FormulaId::Wl1,
                        ],
                    };
                    let xs = match args.x.as_ref().or(args.xs.as_ref()) {
                        Some(list) => parse_xs(list, p)?,
                        None => vec![Real::from_int(1000, p)],
                    };
                    let mut r = RateReport::new(&formulas, &xs, p)?;
                    r.digits = sci_digits;
                    emit(&r, format, out)
                }
            }
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_for_error(&e)
        }
    }
}
