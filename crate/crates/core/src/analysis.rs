//! Accuracy comparisons, leading-order rate constants, and certified checks of
//! the inequalities between the formulas and `Γ(x+1)`.
//!
//! Every check compares enclosures and reports one of three outcomes:
//! certified (intervals disjoint in the claimed direction), violated
//! (disjoint the other way), or inconclusive (overlap at this precision).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::approximations::{log_expansion, log_formula, log_formulas, remainder_bound, ExpansionFamily, ExpansionSpec, FormulaId};
use crate::error::{Error, Result};
use crate::numerics::{
    check_precision, decimal_digits, e, interval_exp, interval_sinh, interval_sqrt, pi, Certainty, Interval,
    Rational, Real, Round,
};
use crate::reference::{gamma_enclosure, GammaEnclosure};
use crate::report::{certainty_name, combine, Report};

/// Largest number of points a grid may expand to.
pub const MAX_GRID_POINTS: usize = 100_000;

/// The columns of the published comparison table.
pub const TABLE_FORMULAS: [FormulaId; 4] = [FormulaId::W1, FormulaId::Wc1, FormulaId::W01, FormulaId::Wl1];
pub const TABLE_XS: [i64; 7] = [1, 2, 5, 10, 20, 50, 100];

fn fmt_x(x: &Real) -> String {
    x.to_plain_string(20)
}

fn require_positive(x: &Real) -> Result<()> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    Ok(())
}

fn require_at_least_one(grid: &[Real]) -> Result<()> {
    if let Some(x) = grid.iter().find(|x| x.to_rational() < Rational::one()) {
        return Err(Error::Domain(format!("grid points must be >= 1, got {x}")));
    }
    Ok(())
}

/// Relative width requested from the oracle by the verification checks:
/// `max(2^(-precision/2), ~1e-60)`.
pub fn oracle_width(precision_bits: u32) -> Real {
    let k = (precision_bits / 2).min(199);
    Real::one(64).mul_pow2(-(k as i64))
}

fn oracle(x: &Real, precision_bits: u32) -> Result<GammaEnclosure> {
    gamma_enclosure(x, &oracle_width(precision_bits), precision_bits)
}

/// Inclusive arithmetic progression `start, start + step, ... <= stop`.
pub fn grid(start: &Rational, stop: &Rational, step: &Rational, precision_bits: u32) -> Result<Vec<Real>> {
    if !(step > &Rational::zero()) {
        return Err(Error::Domain(format!("grid step must be positive, got {step}")));
    }
    if stop < start {
        return Err(Error::Domain(format!("grid stop {stop} is below start {start}")));
    }
    let mut out = Vec::new();
    let mut k = 0i64;
    loop {
        let x = start + &(step * &Rational::from_integer(k));
        if &x > stop {
            break;
        }
        if out.len() == MAX_GRID_POINTS {
            return Err(Error::Domain(format!("grid has more than {MAX_GRID_POINTS} points")));
        }
        out.push(Real::from_rational(&x, precision_bits, Round::Nearest));
        k += 1;
    }
    Ok(out)
}

// ---------------------------------------------------------------- table

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub x: Real,
    /// Upper bounds of `|W(x) - Γ(x+1)| / Γ(x+1)`.
    pub errors: BTreeMap<FormulaId, Real>,
    /// Matching lower bounds.
    pub lower_errors: BTreeMap<FormulaId, Real>,
    /// Set when some lower bound is more than 0.1% below its upper bound.
    pub precision_starved: bool,
}

/// Encloses `|exp(log_w - log_g) - 1|`.
fn relative_error(log_w: &Interval, log_g: &Interval, precision_bits: u32) -> Result<Interval> {
    let w = precision_bits + 16;
    let d = log_w - log_g;
    Ok((&interval_exp(&d, w)? - &Interval::from_int(1, w)).abs().with_precision(precision_bits))
}

fn starved(err: &Interval) -> bool {
    // lo < 0.999 hi
    let hi = err.hi();
    let threshold = hi.mul(&Real::from_rational(&Rational::new(999, 1000), 64, Round::Down), 64, Round::Down);
    err.hi().is_zero() || err.lo() < &threshold
}

/// Oracle width for a table row: a millionth of the expected error `~1e-4 x^-7`.
fn table_oracle_width(x: &Real, precision_bits: u32) -> Real {
    let xf = x.to_f64().max(1.0);
    let wanted = 1e-10 * xf.powi(-7);
    let floor = Real::one(64).mul_pow2(16 - precision_bits as i64);
    match Real::from_f64(wanted, 64) {
        Ok(r) if r > floor => r,
        _ => floor,
    }
}

fn comparison_row(x: &Real, formulas: &[FormulaId], precision_bits: u32) -> Result<ComparisonRow> {
    require_positive(x)?;
    let g = gamma_enclosure(x, &table_oracle_width(x, precision_bits), precision_bits)?;
    let logs = log_formulas(formulas, x, precision_bits)?;
    let mut errors = BTreeMap::new();
    let mut lower_errors = BTreeMap::new();
    let mut precision_starved = false;
    for (&id, log_w) in formulas.iter().zip(&logs) {
        let err = relative_error(log_w, &g.log_value, precision_bits)?;
        precision_starved |= starved(&err);
        errors.insert(id, err.hi().clone());
        lower_errors.insert(id, err.lo().clone());
    }
    Ok(ComparisonRow { x: x.clone(), errors, lower_errors, precision_starved })
}

/// One row per `x`, in input order; rows are computed in parallel.
pub fn comparison_table(xs: &[Real], formulas: &[FormulaId], precision_bits: u32) -> Result<Vec<ComparisonRow>> {
    check_precision(precision_bits)?;
    xs.par_iter().map(|x| comparison_row(x, formulas, precision_bits)).collect()
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub precision_bits: u32,
    pub formulas: Vec<FormulaId>,
    pub rows: Vec<ComparisonRow>,
    /// Significant digits per cell.
    pub digits: usize,
}

impl TableReport {
    pub fn new(xs: &[Real], formulas: &[FormulaId], precision_bits: u32) -> Result<TableReport> {
        let rows = comparison_table(xs, formulas, precision_bits)?;
        Ok(TableReport { precision_bits, formulas: formulas.to_vec(), rows, digits: 4 })
    }

    /// The published table: `x = 1, 2, 5, 10, 20, 50, 100` against `w1, wc1, w01, wl1`.
    pub fn standard(precision_bits: u32) -> Result<TableReport> {
        let xs: Vec<Real> = TABLE_XS.iter().map(|&x| Real::from_int(x, precision_bits)).collect();
        TableReport::new(&xs, &TABLE_FORMULAS, precision_bits)
    }

    /// The formatted cell for `(row, formula)`.
    pub fn cell(&self, row: usize, id: FormulaId) -> Option<String> {
        self.rows.get(row)?.errors.get(&id).map(|e| e.to_scientific(self.digits))
    }
}

impl Report for TableReport {
    fn command(&self) -> &'static str {
        "table"
    }
    fn precision_bits(&self) -> u32 {
        self.precision_bits
    }
    fn columns(&self) -> Vec<String> {
        std::iter::once("x".to_string()).chain(self.formulas.iter().map(|f| f.to_string())).collect()
    }
    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                std::iter::once(fmt_x(&r.x)).chain(self.formulas.iter().map(|f| r.errors[f].to_scientific(self.digits))).collect()
            })
            .collect()
    }
    fn json_rows(&self) -> serde_json::Value {
        self.rows
            .iter()
            .map(|r| {
                let mut m = serde_json::Map::new();
                m.insert("x".into(), fmt_x(&r.x).into());
                for f in &self.formulas {
                    m.insert(f.to_string(), r.errors[f].to_scientific(self.digits).into());
                }
                m.insert("precision_starved".into(), r.precision_starved.into());
                serde_json::Value::Object(m)
            })
            .collect()
    }
    fn status(&self) -> Certainty {
        if self.rows.iter().any(|r| r.precision_starved) {
            Certainty::Inconclusive
        } else {
            Certainty::Certified
        }
    }
    fn notes(&self) -> Vec<String> {
        self.rows
            .iter()
            .filter(|r| r.precision_starved)
            .map(|r| format!("warning: row x = {} is precision-starved; raise --precision", fmt_x(&r.x)))
            .collect()
    }
}

// ---------------------------------------------------------------- rates

/// `lim x^7 (ln Γ(x+1) - ln W(x))`; `None` for `w0`, whose error decays like `x^-5`.
pub fn rate_target(formula: FormulaId) -> Option<Rational> {
    let k = match formula {
        FormulaId::W0 => return None,
        FormulaId::W1 => -163,
        FormulaId::Wc1 => -191,
        FormulaId::W01 | FormulaId::W01Star => -198,
        FormulaId::Wl1 => -268,
    };
    Some(Rational::new(k, 340200))
}

/// Relative slack allowed between a probe at `x` and its limit; the next
/// term of every expansion is `O(x^-2)` relative.
pub fn rate_margin(x: &Real) -> f64 {
    let xf = x.to_f64();
    5000.0 / (xf * xf)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateEstimate {
    pub formula: FormulaId,
    pub x_probe: Real,
    /// Encloses `x^7 (ln Γ(x+1) - ln W(x))` at `x_probe`.
    pub estimate: Interval,
    pub target: Rational,
}

impl RateEstimate {
    /// Certified when the whole estimate lies within `target · (1 ± margin)`,
    /// violated when it lies entirely outside.
    pub fn check(&self, margin: f64) -> Certainty {
        let p = self.estimate.precision();
        let slack = Real::from_rational(&self.target.abs(), p, Round::Up)
            .mul(&Real::from_f64(margin, 64).unwrap_or_else(|_| Real::zero(64)), p, Round::Up);
        let band = Interval::from_rational(&self.target, p).inflate(&slack);
        if band.contains_interval(&self.estimate) {
            Certainty::Certified
        } else if !band.overlaps(&self.estimate) {
            Certainty::Violated
        } else {
            Certainty::Inconclusive
        }
    }

    /// Relative deviation of the estimate's midpoint from the target.
    pub fn relative_deviation(&self) -> f64 {
        let mid = self.estimate.mid().to_rational();
        ((mid - self.target.clone()) / self.target.clone()).abs().to_f64()
    }
}

pub fn rate_constant(formula: FormulaId, x_probe: &Real, precision_bits: u32) -> Result<RateEstimate> {
    check_precision(precision_bits)?;
    let target = rate_target(formula)
        .ok_or_else(|| Error::Contract(format!("{formula} has no x^-7 rate constant (its error is of order x^-5)")))?;
    if x_probe.to_rational() < Rational::from_integer(10) {
        return Err(Error::Domain(format!("rate probes need x >= 10, got {x_probe}")));
    }
    let g = oracle(x_probe, precision_bits)?;
    let log_w = log_formula(formula, x_probe, precision_bits)?;
    let x = Interval::point(x_probe.clone());
    let estimate = (&(&g.log_value - &log_w) * &x.powi(7)).with_precision(precision_bits);
    Ok(RateEstimate { formula, x_probe: x_probe.clone(), estimate, target })
}

#[derive(Clone, Debug, Serialize)]
pub struct RateRow {
    #[serde(flatten)]
    pub rate: RateEstimate,
    pub margin: f64,
    pub status: Certainty,
}

#[derive(Clone, Debug)]
pub struct RateReport {
    pub precision_bits: u32,
    pub rows: Vec<RateRow>,
    pub digits: usize,
}

impl RateReport {
    /// Every `(formula, x)` pair, checked with [`rate_margin`].
    pub fn new(formulas: &[FormulaId], xs: &[Real], precision_bits: u32) -> Result<RateReport> {
        let pairs: Vec<(FormulaId, &Real)> = formulas.iter().flat_map(|&f| xs.iter().map(move |x| (f, x))).collect();
        let rows = pairs
            .par_iter()
            .map(|&(f, x)| {
                let rate = rate_constant(f, x, precision_bits)?;
                let margin = rate_margin(x);
                let status = rate.check(margin);
                Ok(RateRow { rate, margin, status })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RateReport { precision_bits, rows, digits: decimal_digits(precision_bits) })
    }
}

impl Report for RateReport {
    fn command(&self) -> &'static str {
        "verify rate"
    }
    fn precision_bits(&self) -> u32 {
        self.precision_bits
    }
    fn columns(&self) -> Vec<String> {
        ["formula", "x", "estimate_lo", "estimate_hi", "scaled", "target", "margin", "status"].map(String::from).to_vec()
    }
    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                let e = &r.rate.estimate;
                let scaled = e.mid().mul(&Real::from_int(340200, 64), self.precision_bits, Round::Nearest);
                vec![
                    r.rate.formula.to_string(),
                    fmt_x(&r.rate.x_probe),
                    e.lo().to_scientific_rounded(self.digits, Round::Down),
                    e.hi().to_scientific_rounded(self.digits, Round::Up),
                    format!("{}/340200", scaled.to_scientific(12)),
                    r.rate.target.to_string(),
                    format!("{:e}", r.margin),
                    certainty_name(r.status).into(),
                ]
            })
            .collect()
    }
    fn json_rows(&self) -> serde_json::Value {
        serde_json::to_value(&self.rows).unwrap_or_default()
    }
    fn status(&self) -> Certainty {
        combine(self.rows.iter().map(|r| r.status))
    }
}

// ---------------------------------------------------------------- ordering

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinkCheck {
    pub left: String,
    pub right: String,
    pub status: Certainty,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderingPoint {
    pub x: Real,
    pub links: Vec<LinkCheck>,
}

impl OrderingPoint {
    pub fn status(&self) -> Certainty {
        combine(self.links.iter().map(|l| l.status))
    }
}

/// The ordered chain `Γ(x+1) < W1 < Wc1 < W01* < W01 < Wl1`.
pub const ORDERING_CHAIN: [FormulaId; 5] =
    [FormulaId::W1, FormulaId::Wc1, FormulaId::W01Star, FormulaId::W01, FormulaId::Wl1];

fn ordering_point(x: &Real, precision_bits: u32) -> Result<OrderingPoint> {
    let g = oracle(x, precision_bits)?;
    let logs = log_formulas(&ORDERING_CHAIN, x, precision_bits)?;
    let mut links = vec![LinkCheck { left: "gamma".into(), right: "w1".into(), status: g.log_value.certify_lt(&logs[0]) }];
    for i in 0..ORDERING_CHAIN.len() - 1 {
        links.push(LinkCheck {
            left: ORDERING_CHAIN[i].to_string(),
            right: ORDERING_CHAIN[i + 1].to_string(),
            status: logs[i].certify_lt(&logs[i + 1]),
        });
    }
    Ok(OrderingPoint { x: x.clone(), links })
}

#[derive(Clone, Debug)]
pub struct OrderingReport {
    pub precision_bits: u32,
    pub points: Vec<OrderingPoint>,
}

impl OrderingReport {
    pub fn status(&self) -> Certainty {
        combine(self.points.iter().map(|p| p.status()))
    }

    pub fn inconclusive_points(&self) -> Vec<&Real> {
        self.points.iter().filter(|p| p.status() == Certainty::Inconclusive).map(|p| &p.x).collect()
    }

    pub fn violations(&self) -> usize {
        self.points.iter().flat_map(|p| &p.links).filter(|l| l.status == Certainty::Violated).count()
    }
}

/// Certifies the chain at every grid point (all `>= 1`), comparing logarithms.
pub fn verify_ordering(x_grid: &[Real], precision_bits: u32) -> Result<OrderingReport> {
    check_precision(precision_bits)?;
    require_at_least_one(x_grid)?;
    let points = x_grid.par_iter().map(|x| ordering_point(x, precision_bits)).collect::<Result<Vec<_>>>()?;
    Ok(OrderingReport { precision_bits, points })
}

fn link_columns(points: &[OrderingPoint]) -> Vec<String> {
    let mut cols = vec!["x".to_string()];
    if let Some(p) = points.first() {
        cols.extend(p.links.iter().map(|l| format!("{} < {}", l.left, l.right)));
    }
    cols
}

impl Report for OrderingReport {
    fn command(&self) -> &'static str {
        "verify ordering"
    }
    fn precision_bits(&self) -> u32 {
        self.precision_bits
    }
    fn columns(&self) -> Vec<String> {
        link_columns(&self.points)
    }
    fn records(&self) -> Vec<Vec<String>> {
        self.points
            .iter()
            .map(|p| std::iter::once(fmt_x(&p.x)).chain(p.links.iter().map(|l| certainty_name(l.status).to_string())).collect())
            .collect()
    }
    fn json_rows(&self) -> serde_json::Value {
        serde_json::to_value(&self.points).unwrap_or_default()
    }
    fn status(&self) -> Certainty {
        OrderingReport::status(self)
    }
    fn notes(&self) -> Vec<String> {
        vec![format!(
            "{} points, {} violations, {} inconclusive",
            self.points.len(),
            self.violations(),
            self.inconclusive_points().len()
        )]
    }
}

// ---------------------------------------------------------------- sandwich

/// `e / √(2π sinh 1 + π/405)`, the best constant with `β₀ W1(x) < Γ(x+1)` on `x >= 1`.
pub fn beta0(precision_bits: u32) -> Result<Interval> {
    check_precision(precision_bits)?;
    let w = precision_bits + 16;
    let p = pi(w);
    let sinh1 = interval_sinh(&Interval::from_int(1, w), w)?;
    let inner = &(&p.mul_int(2) * &sinh1) + &p.div_int(405);
    Ok(e(w).div_ref(&interval_sqrt(&inner, w)?).with_precision(precision_bits))
}

/// `f1(x) = ln Γ(x+1) - ln W1(x)`.
pub fn f1(x: &Real, precision_bits: u32) -> Result<Interval> {
    require_positive(x)?;
    let g = oracle(x, precision_bits)?;
    Ok(&g.log_value - &log_formula(FormulaId::W1, x, precision_bits)?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SandwichPoint {
    pub x: Real,
    /// `β₀ W1(x) < Γ(x+1)`
    pub lower: Certainty,
    /// `Γ(x+1) < W1(x)`
    pub upper: Certainty,
    /// `Γ(x+1)/W1(x) - β₀`
    pub gap: Interval,
}

#[derive(Clone, Debug)]
pub struct SandwichReport {
    pub precision_bits: u32,
    pub beta0: Interval,
    pub points: Vec<SandwichPoint>,
    pub digits: usize,
}

impl SandwichReport {
    pub fn status(&self) -> Certainty {
        combine(self.points.iter().flat_map(|p| [p.lower, p.upper]))
    }
}

pub fn verify_sandwich(x_grid: &[Real], precision_bits: u32) -> Result<SandwichReport> {
    check_precision(precision_bits)?;
    require_at_least_one(x_grid)?;
    let b = beta0(precision_bits)?;
    let w = precision_bits + 16;
    let ln_b = crate::numerics::interval_ln(&b.with_precision(w), w)?;
    let points = x_grid
        .par_iter()
        .map(|x| {
            let g = oracle(x, precision_bits)?;
            let ln_w1 = log_formula(FormulaId::W1, x, precision_bits)?;
            let lower = (&ln_b + &ln_w1).certify_lt(&g.log_value);
            let upper = g.log_value.certify_lt(&ln_w1);
            let ratio = interval_exp(&(&g.log_value - &ln_w1), w)?;
            let gap = (&ratio - &b).with_precision(precision_bits);
            Ok(SandwichPoint { x: x.clone(), lower, upper, gap })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SandwichReport { precision_bits, beta0: b, points, digits: decimal_digits(precision_bits) })
}

impl Report for SandwichReport {
    fn command(&self) -> &'static str {
        "verify sandwich"
    }
    fn precision_bits(&self) -> u32 {
        self.precision_bits
    }
    fn columns(&self) -> Vec<String> {
        ["x", "beta0*w1 < gamma", "gamma < w1", "gap_lo", "gap_hi"].map(String::from).to_vec()
    }
    fn records(&self) -> Vec<Vec<String>> {
        self.points
            .iter()
            .map(|p| {
                vec![
                    fmt_x(&p.x),
                    certainty_name(p.lower).into(),
                    certainty_name(p.upper).into(),
                    p.gap.lo().to_scientific_rounded(self.digits, Round::Down),
                    p.gap.hi().to_scientific_rounded(self.digits, Round::Up),
                ]
            })
            .collect()
    }
    fn json_rows(&self) -> serde_json::Value {
        serde_json::to_value(&self.points).unwrap_or_default()
    }
    fn status(&self) -> Certainty {
        SandwichReport::status(self)
    }
    fn notes(&self) -> Vec<String> {
        vec![format!("beta0 = {}", self.beta0.mid().to_scientific(self.digits))]
    }
}

// ---------------------------------------------------------------- f1 shape

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShapeCheck {
    pub from: Real,
    pub to: Real,
    pub value: Interval,
    pub status: Certainty,
}

#[derive(Clone, Debug)]
pub struct F1ShapeReport {
    pub precision_bits: u32,
    pub values: Vec<(Real, Interval)>,
    /// Divided differences `(f(b) - f(a)) / (b - a)`, which must be positive.
    pub slopes: Vec<ShapeCheck>,
    /// Second divided differences over consecutive triples, which must be negative.
    pub curvatures: Vec<ShapeCheck>,
    pub digits: usize,
}

impl F1ShapeReport {
    pub fn status(&self) -> Certainty {
        combine(self.slopes.iter().chain(&self.curvatures).map(|c| c.status))
    }
}

fn positive(i: &Interval) -> Certainty {
    if i.lo().is_positive() {
        Certainty::Certified
    } else if !i.hi().is_positive() {
        Certainty::Violated
    } else {
        Certainty::Inconclusive
    }
}

/// Checks that `f1` is increasing and concave on a strictly increasing grid of
/// at least three points, all `>= 1`.
pub fn probe_f1_shape(x_grid: &[Real], precision_bits: u32) -> Result<F1ShapeReport> {
    check_precision(precision_bits)?;
    require_at_least_one(x_grid)?;
    if x_grid.len() < 3 {
        return Err(Error::Domain("the shape probe needs at least three grid points".into()));
    }
    if x_grid.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::Domain("the shape probe needs a strictly increasing grid".into()));
    }
    let values = x_grid.par_iter().map(|x| f1(x, precision_bits)).collect::<Result<Vec<_>>>()?;
    let w = precision_bits + 16;
    let xs: Vec<Interval> = x_grid.iter().map(|x| Interval::point(x.clone()).with_precision(w)).collect();
    let slope_values: Vec<Interval> = (0..xs.len() - 1)
        .map(|i| (&values[i + 1] - &values[i]).try_div(&(&xs[i + 1] - &xs[i])))
        .collect::<Result<_>>()?;
    let slopes = slope_values
        .iter()
        .enumerate()
        .map(|(i, s)| ShapeCheck {
            from: x_grid[i].clone(),
            to: x_grid[i + 1].clone(),
            value: s.with_precision(precision_bits),
            status: positive(s),
        })
        .collect();
    let curvatures = (0..xs.len() - 2)
        .map(|i| {
            let c = (&slope_values[i + 1] - &slope_values[i]).try_div(&(&xs[i + 2] - &xs[i]))?;
            Ok(ShapeCheck {
                from: x_grid[i].clone(),
                to: x_grid[i + 2].clone(),
                value: c.with_precision(precision_bits),
                status: positive(&-&c),
            })
        })
        .collect::<Result<_>>()?;
    let values = x_grid.iter().cloned().zip(values.into_iter().map(|v| v.with_precision(precision_bits))).collect();
    Ok(F1ShapeReport { precision_bits, values, slopes, curvatures, digits: decimal_digits(precision_bits) })
}

impl Report for F1ShapeReport {
    fn command(&self) -> &'static str {
        "verify f1shape"
    }
    fn precision_bits(&self) -> u32 {
        self.precision_bits
    }
    fn columns(&self) -> Vec<String> {
        ["kind", "from", "to", "lo", "hi", "status"].map(String::from).to_vec()
    }
    fn records(&self) -> Vec<Vec<String>> {
        let row = |kind: &str, c: &ShapeCheck| {
            vec![
                kind.to_string(),
                fmt_x(&c.from),
                fmt_x(&c.to),
                c.value.lo().to_scientific_rounded(self.digits, Round::Down),
                c.value.hi().to_scientific_rounded(self.digits, Round::Up),
                certainty_name(c.status).to_string(),
            ]
        };
        self.slopes.iter().map(|c| row("slope", c)).chain(self.curvatures.iter().map(|c| row("curvature", c))).collect()
    }
    fn json_rows(&self) -> serde_json::Value {
        serde_json::json!({
            "values": self.values.iter().map(|(x, v)| serde_json::json!({"x": fmt_x(x), "f1": v})).collect::<Vec<_>>(),
            "slopes": self.slopes,
            "curvatures": self.curvatures,
        })
    }
    fn status(&self) -> Certainty {
        F1ShapeReport::status(self)
    }
}

// ---------------------------------------------------------------- remainder

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RemainderCell {
    pub n: usize,
    pub x: Real,
    /// Encloses `R_n(x) = ln Γ(x+1) - ln(W0(x)) - Σ_{k=3}^{n-1} a_k x^-(2k-1)`.
    pub remainder: Interval,
    pub bound: Real,
    /// `|R_n(x)| <= bound`
    pub status: Certainty,
}

#[derive(Clone, Debug)]
pub struct RemainderReport {
    pub precision_bits: u32,
    pub cells: Vec<RemainderCell>,
    pub digits: usize,
}

impl RemainderReport {
    pub fn status(&self) -> Certainty {
        combine(self.cells.iter().map(|c| c.status))
    }
}

/// Encloses the tail of the exp-series after `n - 1` terms.
pub fn remainder(n: usize, x: &Real, precision_bits: u32) -> Result<Interval> {
    if n < 4 {
        return Err(Error::Contract(format!("the remainder is defined here for n >= 4, got n = {n}")));
    }
    let g = oracle(x, precision_bits)?;
    let spec = ExpansionSpec::new(ExpansionFamily::ExpSeries, n - 1)?;
    Ok(&g.log_value - &log_expansion(spec, x, precision_bits)?)
}

pub fn verify_remainder(ns: &[usize], xs: &[Real], precision_bits: u32) -> Result<RemainderReport> {
    check_precision(precision_bits)?;
    let pairs: Vec<(usize, &Real)> = ns.iter().flat_map(|&n| xs.iter().map(move |x| (n, x))).collect();
    let cells = pairs
        .par_iter()
        .map(|&(n, x)| {
            require_positive(x)?;
            let r = remainder(n, x, precision_bits)?;
            let bound = remainder_bound(n, x)?;
            let status = if r.mag() <= bound {
                Certainty::Certified
            } else if r.mag_lower() > bound {
                Certainty::Violated
            } else {
                Certainty::Inconclusive
            };
            Ok(RemainderCell { n, x: x.clone(), remainder: r, bound, status })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RemainderReport { precision_bits, cells, digits: decimal_digits(precision_bits) })
}

impl Report for RemainderReport {
    fn command(&self) -> &'static str {
        "verify remainder"
    }
    fn precision_bits(&self) -> u32 {
        self.precision_bits
    }
    fn columns(&self) -> Vec<String> {
        ["n", "x", "remainder_lo", "remainder_hi", "bound", "status"].map(String::from).to_vec()
    }
    fn records(&self) -> Vec<Vec<String>> {
        self.cells
            .iter()
            .map(|c| {
                vec![
                    c.n.to_string(),
                    fmt_x(&c.x),
                    c.remainder.lo().to_scientific_rounded(self.digits, Round::Down),
                    c.remainder.hi().to_scientific_rounded(self.digits, Round::Up),
                    c.bound.to_scientific_rounded(self.digits, Round::Up),
                    certainty_name(c.status).into(),
                ]
            })
            .collect()
    }
    fn json_rows(&self) -> serde_json::Value {
        serde_json::to_value(&self.cells).unwrap_or_default()
    }
    fn status(&self) -> Certainty {
        RemainderReport::status(self)
    }
}
