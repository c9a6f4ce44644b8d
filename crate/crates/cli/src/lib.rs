//! Commands behind the `permlab` binary. Each one returns rendered text or a
//! [`Report`]; the binary only parses flags, prints and picks the exit code.

use std::fmt::Write as _;
use std::time::Instant;

use permlab::bijection::map_f;
use permlab::perm::{first_letter_distribution_capped, pair, PatternPair, Permutation};
use permlab::recurrence::{gtree_table, tables_for_pair, th1_first_letter, JointPair};
use permlab::schroeder::triangle;
use permlab::series::{build_closed_form, PolyAux};
use permlab::{Error, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

mod report;
mod suites;

pub use report::{Check, Report, SCHEMA};
pub use suites::{
    bijection_checks, cmd_verify, conjecture_checks, conjecture_pairs, gtree_specialization_checks, identity_checks,
    inversion_checks, recurrence_checks, series_checks, system_checks, triangle_series, Suite,
};

/// Largest triangle `triangle` will print.
pub const TRIANGLE_MAX: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Brute,
    Recurrence,
    Series,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Recurrence => "recurrence",
            Method::Series => "series",
        }
    }
}

/// Enumeration cap: 9 by default, 11 with `--big`, or an explicit override.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub cap: usize,
    pub big: bool,
}

impl Limits {
    pub fn new(big: bool, max_n: Option<usize>) -> Limits {
        Limits { cap: max_n.unwrap_or(if big { 11 } else { 9 }), big }
    }
}

impl Default for Limits {
    fn default() -> Limits {
        Limits::new(false, None)
    }
}

pub fn cmd_triangle(n_max: usize, format: Format) -> Result<String> {
    if n_max == 0 {
        return Err(Error::IndexOutOfRange("triangle needs n_max >= 1".into()));
    }
    if n_max > TRIANGLE_MAX {
        return Err(Error::CapExceeded { n: n_max, cap: TRIANGLE_MAX });
    }
    let t = triangle(n_max);
    Ok(match format {
        Format::Tsv => t.to_tsv(),
        Format::Json => {
            let rows: Vec<Value> =
                t.rows().iter().map(|r| r.iter().map(|v| big_number(&v.to_string())).collect()).collect();
            let sums: Vec<Value> = (1..=n_max).map(|n| big_number(&t.row_sum(n).to_string())).collect();
            json_text(&json!({ "schema": SCHEMA, "n_max": n_max, "rows": rows, "row_sums": sums }))
        }
    })
}

fn big_number(digits: &str) -> Value {
    Value::Number(digits.parse().expect("decimal integer"))
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes") + "\n"
}

/// Methods that can produce the first-letter distribution for `p`.
pub fn applicable_methods(p: &PatternPair) -> Vec<Method> {
    let mut out = vec![Method::Brute];
    if has_recurrence(p) {
        out.push(Method::Recurrence);
    }
    if JointPair::from_pair(p).is_some() {
        out.push(Method::Series);
    }
    out
}

fn has_recurrence(p: &PatternPair) -> bool {
    let th1 = permlab::recurrence::th1_pairs();
    let gtree = permlab::perm::generating_tree_pairs();
    th1.iter().chain(gtree.iter()).any(|q| q.same_set(p)) || JointPair::from_pair(p).is_some()
}

/// Name of the closed form giving the first-letter distribution of `p`.
pub fn corollary_name(p: &PatternPair) -> Option<String> {
    JointPair::from_pair(p).map(|j| {
        let q = j.pattern_pair();
        let [a, b] = q.patterns();
        format!("corollary_{a}_{b}")
    })
}

/// `(a_{n,1}, ..., a_{n,n})` by the requested method.
pub fn distribution(p: &PatternPair, n: usize, method: Method, limits: Limits) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::IndexOutOfRange("distribution needs n >= 1".into()));
    }
    match method {
        Method::Brute => first_letter_distribution_capped(n, p, limits.cap),
        Method::Recurrence => {
            if permlab::recurrence::th1_pairs().iter().any(|q| q.same_set(p)) {
                th1_first_letter(n, p)
            } else if let Ok(t) = gtree_table(n, p) {
                Ok(t.first_letter_marginal())
            } else {
                let tables = tables_for_pair(p, n)?;
                Ok(tables[n].first_letter_marginal())
            }
        }
        Method::Series => {
            let name = corollary_name(p)
                .ok_or_else(|| Error::UnsupportedPair { pair: p.to_string(), operation: "series method" })?;
            let s = build_closed_form(&name)?.expand(n)?;
            aux_row(s.coeff(n), n).map_err(Error::FormData)
        }
    }
}

/// Reads `sum_i c_i v^i` as `(c_1, ..., c_n)`; every coefficient must be a
/// non-negative integer and no other monomial may appear.
pub fn aux_row(p: &PolyAux, n: usize) -> std::result::Result<Vec<u64>, String> {
    let mut row = vec![0u64; n];
    for (a, b, c) in p.terms() {
        if b != 0 || a == 0 || a as usize > n {
            return Err(format!("unexpected monomial v^{a} w^{b} with coefficient {c}"));
        }
        if !c.is_integer() {
            return Err(format!("coefficient {c} of v^{a} is not an integer"));
        }
        row[a as usize - 1] = u64::try_from(&c.to_integer()).map_err(|_| format!("coefficient {c} of v^{a}"))?;
    }
    Ok(row)
}

#[derive(Clone, Debug)]
pub struct DistributionOutput {
    pub pair: PatternPair,
    pub n: usize,
    pub method: Method,
    pub values: Vec<u64>,
    /// Every applicable method and its answer, filled in by `--check`.
    pub checked: Vec<(Method, Vec<u64>)>,
}

impl DistributionOutput {
    pub fn agree(&self) -> bool {
        self.checked.iter().all(|(_, v)| v == &self.values)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => {
                let mut out = format!("# pair {} n={} method={}\n", self.pair, self.n, self.method.name());
                writeln!(out, "{}", join(&self.values)).unwrap();
                for (m, v) in &self.checked {
                    let tag = if v == &self.values { "agree" } else { "DIFFER" };
                    writeln!(out, "# {}\t{}\t{tag}", m.name(), join(v)).unwrap();
                }
                out
            }
            Format::Json => {
                let checked: Vec<Value> =
                    self.checked.iter().map(|(m, v)| json!({ "method": m.name(), "values": v })).collect();
                json_text(&json!({
                    "schema": SCHEMA,
                    "pair": self.pair.to_string(),
                    "n": self.n,
                    "method": self.method.name(),
                    "values": self.values,
                    "checked": checked,
                    "agree": self.agree(),
                }))
            }
        }
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

pub fn cmd_distribution(
    p: &PatternPair,
    n: usize,
    method: Method,
    check: bool,
    limits: Limits,
) -> Result<DistributionOutput> {
    if !applicable_methods(p).contains(&method) {
        return Err(Error::UnsupportedPair { pair: p.to_string(), operation: method.name() });
    }
    let values = distribution(p, n, method, limits)?;
    let mut checked = Vec::new();
    if check {
        for m in applicable_methods(p) {
            checked.push((m, distribution(p, n, m, limits)?));
        }
    }
    Ok(DistributionOutput { pair: p.clone(), n, method, values, checked })
}

/// One row of the embedded first-letter table at `n = 8`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub pair: PatternPair,
    pub style: RowStyle,
    pub values: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStyle {
    Plain,
    Bold,
    Italic,
}

const TABLE2: &str = include_str!("../data/table2.tsv");

pub fn golden_table2() -> Vec<GoldenRow> {
    TABLE2
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let cols: Vec<&str> = l.split('\t').collect();
            let style = match cols[1] {
                "bold" => RowStyle::Bold,
                "italic" => RowStyle::Italic,
                _ => RowStyle::Plain,
            };
            let values = cols[2].split(',').map(|v| v.parse().expect("golden count")).collect();
            GoldenRow { pair: pair(cols[0]), style, values }
        })
        .collect()
}

/// Recomputes every golden row at `n = 8` and audits the bold and italic
/// markings.
pub fn cmd_table2() -> Report {
    let started = Instant::now();
    let golden = golden_table2();
    let mut checks: Vec<Check> = golden
        .par_iter()
        .map(|row| {
            let name = format!("row {}", row.pair);
            match first_letter_distribution_capped(8, &row.pair, 8) {
                Ok(v) if v == row.values => Check::pass(name),
                Ok(v) => Check::fail(name, format!("computed {} against {}", join(&v), join(&row.values))),
                Err(e) => Check::fail(name, e.to_string()),
            }
        })
        .collect();

    let tri8 = triangle(8).row_u64(8);
    let matching: Vec<&GoldenRow> = golden.iter().filter(|r| r.values == tri8).collect();
    let bold: Vec<&GoldenRow> = golden.iter().filter(|r| r.style == RowStyle::Bold).collect();
    checks.push(Check::from_result(
        "exactly the nine bold rows equal triangle row 8",
        if matching.len() == 9 && matching.iter().all(|r| r.style == RowStyle::Bold) && bold.len() == 9 {
            Ok(())
        } else {
            Err(format!("{} rows equal triangle row 8, {} rows are bold", matching.len(), bold.len()))
        },
    ));

    let mut reversed = tri8.clone();
    reversed.reverse();
    let italic: Vec<&GoldenRow> = golden.iter().filter(|r| r.style == RowStyle::Italic).collect();
    let bad =
        italic.iter().find(|r| r.values != reversed || !bold.iter().any(|b| b.pair.complemented().same_set(&r.pair)));
    checks.push(Check::from_result(
        "italic rows are the complements of the bold rows",
        match (italic.len(), bad) {
            (9, None) => Ok(()),
            (k, None) => Err(format!("{k} italic rows")),
            (_, Some(r)) => Err(format!("row {}", r.pair)),
        },
    ));
    Report::new("table2", checks, started)
}

pub fn cmd_bijection(text: &str, format: Format) -> Result<String> {
    let perm: Permutation = text.parse()?;
    let (img, trace) = map_f(&perm)?;
    Ok(match format {
        Format::Tsv => {
            let minima: Vec<String> = trace.minima.iter().map(|(p, v)| format!("{v}@{p}")).collect();
            format!("# left-right minima {}\n{trace}f = {img}\n", minima.join(" "))
        }
        Format::Json => {
            let stages: Vec<&[u8]> = trace.stages.iter().map(Permutation::letters).collect();
            json_text(&json!({
                "schema": SCHEMA,
                "input": perm.letters(),
                "output": img.letters(),
                "minima": trace.minima,
                "stages": stages,
            }))
        }
    })
}

/// Coefficients of a closed form through `x^order`, one monomial per line.
pub fn cmd_series(name: &str, order: usize, format: Format) -> Result<String> {
    let cf = build_closed_form(name)?;
    let s = cf.expand(order)?;
    Ok(match format {
        Format::Tsv => {
            let (a, b) = s.binding().names();
            format!("# {name} through x^{order}\n# n\t{a}\t{b}\tcoefficient\n{}", s.dump_tsv())
        }
        Format::Json => {
            let terms: Vec<Value> = s
                .coeffs()
                .iter()
                .enumerate()
                .flat_map(|(m, c)| c.terms().map(move |(a, b, v)| json!([m, a, b, v.to_string()])))
                .collect();
            json_text(&json!({
                "schema": SCHEMA,
                "form": name,
                "binding": s.binding().to_string(),
                "order": order,
                "terms": terms,
            }))
        }
    })
}

pub fn cmd_forms() -> String {
    let mut out = String::new();
    for name in permlab::series::closed_form_names() {
        let cf = build_closed_form(&name).expect("listed form builds");
        writeln!(out, "{name}\t{}\t{}", cf.binding(), cf.about()).unwrap();
    }
    out
}
