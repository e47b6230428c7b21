//! Parameter sweeps over a family template with per-row checks, written as CSV.

use std::time::Instant;

use diamwidth::constructions::{path_label, Family, FamilySpec};
use diamwidth::containment::{contains, vtype_or_etype_free, Freeness, Mode, Outcome};
use diamwidth::graph::{diameter, Distance, Graph};
use diamwidth::width::{solve, Param};
use diamwidth::{Error, Result};
use serde::{Deserialize, Serialize};

/// Version of the CSV column layout; first column of every row.
pub const CSV_SCHEMA: u32 = 1;

/// Default node budget for each containment check.
pub const CHECK_BUDGET: u64 = 50_000_000;

/// A sweep: `family` with every `{n}` replaced by each of `values`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentPlan {
    pub name: String,
    pub family: String,
    pub values: Vec<u64>,
    #[serde(default)]
    pub checks: Checks,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

/// A number, or `"n"` for the sweep value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Expect {
    Value(u64),
    Var(String),
}

impl Expect {
    fn eval(&self, n: u64) -> Result<u64> {
        match self {
            Expect::Value(v) => Ok(*v),
            Expect::Var(s) if s == "n" => Ok(n),
            Expect::Var(s) => Err(Error::Plan(format!("unknown variable `{s}`"))),
        }
    }

    fn text(&self) -> String {
        match self {
            Expect::Value(v) => v.to_string(),
            Expect::Var(s) => s.clone(),
        }
    }
}

/// Asserted properties. Every field is optional; unset checks produce no column.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Checks {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diameter: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_diameter: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_degree: Option<Expect>,
    /// Subgraph-free patterns (family specs). `cv:` and `ce:` patterns use the bouquet checker.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub free: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub induced_free: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub minor_free: Vec<String>,
    /// The vertices labelled `path:0, path:1, ...` induce a path.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub labeled_induced_path: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<Param>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width_limit: Option<usize>,
    /// Width lower bound strictly increases along the sweep.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub width_increasing: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl ExperimentPlan {
    pub fn parse(text: &str) -> Result<Self> {
        let plan: ExperimentPlan = toml::from_str(text).map_err(|e| Error::Plan(e.to_string()))?;
        plan.validate()?;
        Ok(plan)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("plans serialize")
    }

    /// Every instantiated family and pattern parses, and the checks are computable.
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::Plan("values must be nonempty".into()));
        }
        for &v in &self.values {
            self.instance(v)?;
            if let Some(e) = &self.checks.min_degree {
                e.eval(v)?;
            }
        }
        for p in self.checks.patterns() {
            p.1.parse::<FamilySpec>()?;
        }
        if self.checks.width == Some(Param::Cw) {
            return Err(Error::Plan("clique-width is not computed".into()));
        }
        if self.checks.width_increasing && self.checks.width.is_none() {
            return Err(Error::Plan(
                "width_increasing needs a width parameter".into(),
            ));
        }
        Ok(())
    }

    pub fn instance(&self, v: u64) -> Result<FamilySpec> {
        self.family.replace("{n}", &v.to_string()).parse()
    }
}

impl Checks {
    fn patterns(&self) -> impl Iterator<Item = (Mode, &String)> {
        self.free
            .iter()
            .map(|p| (Mode::Subgraph, p))
            .chain(self.induced_free.iter().map(|p| (Mode::Induced, p)))
            .chain(self.minor_free.iter().map(|p| (Mode::Minor, p)))
    }

    /// Check column names in output order.
    pub fn columns(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(d) = self.diameter {
            out.push(format!("diameter=={d}"));
        }
        if let Some(d) = self.max_diameter {
            out.push(format!("diameter<={d}"));
        }
        if let Some(e) = &self.min_degree {
            out.push(format!("min_degree=={}", e.text()));
        }
        for (mode, p) in self.patterns() {
            out.push(format!("{}{p}", mode_tag(mode)));
        }
        if self.labeled_induced_path {
            out.push("labeled_induced_path".into());
        }
        if self.width_increasing {
            out.push("width_increasing".into());
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Budget,
    Error,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn rank(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Budget => 1,
            Status::Fail => 2,
            Status::Error => 3,
        }
    }

    /// Error beats fail beats budget beats pass.
    pub fn worse(self, other: Status) -> Status {
        if other.rank() > self.rank() {
            other
        } else {
            self
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Budget => "budget",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub column: String,
    pub status: Status,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Row {
    pub value: u64,
    pub family: String,
    pub vertices: Option<usize>,
    pub edges: Option<usize>,
    pub min_degree: Option<usize>,
    pub max_degree: Option<usize>,
    pub diameter: Option<Distance>,
    pub checks: Vec<CheckResult>,
    pub width: Option<WidthCell>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WidthCell {
    pub param: Param,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub plan: String,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

impl ExperimentReport {
    /// Worst status over all checks and rows.
    pub fn status(&self) -> Status {
        self.rows
            .iter()
            .flat_map(|r| {
                let err = r.error.as_ref().map(|_| Status::Error);
                r.checks.iter().map(|c| c.status).chain(err)
            })
            .fold(Status::Pass, Status::worse)
    }

    /// CSV with a header row. Runtimes are left out so output is reproducible.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = [
            "schema",
            "plan",
            "value",
            "family",
            "vertices",
            "edges",
            "min_degree",
            "max_degree",
            "diameter",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        header.extend(self.columns.iter().cloned());
        header.extend(
            [
                "width_param",
                "width_lower",
                "width_upper",
                "width_exact",
                "error",
            ]
            .map(String::from),
        );
        w.write_record(&header).map_err(csv_err)?;
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.rows {
            let mut rec = vec![
                CSV_SCHEMA.to_string(),
                self.plan.clone(),
                r.value.to_string(),
                r.family.clone(),
                opt(r.vertices),
                opt(r.edges),
                opt(r.min_degree),
                opt(r.max_degree),
                r.diameter.map(|d| d.to_string()).unwrap_or_default(),
            ];
            for col in &self.columns {
                let s = r
                    .checks
                    .iter()
                    .find(|c| &c.column == col)
                    .map(|c| c.status.as_str());
                rec.push(s.unwrap_or("").to_string());
            }
            match &r.width {
                Some(c) => rec.extend([
                    c.param.to_string(),
                    c.lower.to_string(),
                    c.upper.to_string(),
                    c.exact.to_string(),
                ]),
                None => rec.extend(std::iter::repeat_n(String::new(), 4)),
            }
            rec.push(r.error.clone().unwrap_or_default());
            w.write_record(&rec).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Plan(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Plan(format!("csv: {e}"))
}

pub fn run_experiment(plan: &ExperimentPlan) -> Result<ExperimentReport> {
    plan.validate()?;
    let mut rows: Vec<Row> = plan.values.iter().map(|&v| run_row(plan, v)).collect();
    if plan.checks.width_increasing {
        let mut prev: Option<usize> = None;
        for r in &mut rows {
            let lower = r.width.as_ref().map(|c| c.lower);
            let ok = match (prev, lower) {
                (Some(p), Some(l)) => l > p,
                (None, Some(_)) => true,
                _ => false,
            };
            r.checks.push(CheckResult {
                column: "width_increasing".into(),
                status: Status::of(ok),
                millis: 0,
            });
            prev = lower;
        }
    }
    Ok(ExperimentReport {
        plan: plan.name.clone(),
        columns: plan.checks.columns(),
        rows,
    })
}

fn run_row(plan: &ExperimentPlan, v: u64) -> Row {
    let spec = plan.instance(v).expect("validated");
    let mut row = Row {
        value: v,
        family: spec.to_string(),
        vertices: None,
        edges: None,
        min_degree: None,
        max_degree: None,
        diameter: None,
        checks: Vec::new(),
        width: None,
        error: None,
    };
    let g = match spec.build() {
        Ok(g) => g,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    if let Err(e) = fill_row(plan, v, &g, &mut row) {
        row.error = Some(e.to_string());
    }
    row
}

fn fill_row(plan: &ExperimentPlan, v: u64, g: &Graph, row: &mut Row) -> Result<()> {
    let c = &plan.checks;
    let budget = c.budget.unwrap_or(CHECK_BUDGET);
    row.vertices = Some(g.n());
    row.edges = Some(g.edge_count());
    if g.n() > 0 {
        row.min_degree = Some(g.min_degree());
        row.max_degree = Some(g.max_degree());
    }
    let t = Instant::now();
    let diam = diameter(g)?;
    let diam_ms = t.elapsed().as_millis();
    row.diameter = Some(diam);
    let mut push = |column: String, status: Status, millis: u128| {
        row.checks.push(CheckResult {
            column,
            status,
            millis,
        });
    };
    if let Some(d) = c.diameter {
        push(
            format!("diameter=={d}"),
            Status::of(diam == Distance::Finite(d)),
            diam_ms,
        );
    }
    if let Some(d) = c.max_diameter {
        push(
            format!("diameter<={d}"),
            Status::of(diam.at_most(d)),
            diam_ms,
        );
    }
    if let Some(e) = &c.min_degree {
        let want = e.eval(v)? as usize;
        push(
            format!("min_degree=={}", e.text()),
            Status::of(g.n() > 0 && g.min_degree() == want),
            0,
        );
    }
    for (mode, p) in c.patterns() {
        let t = Instant::now();
        let status = free_status(g, &p.parse()?, mode, budget)?;
        push(
            format!("{}{p}", mode_tag(mode)),
            status,
            t.elapsed().as_millis(),
        );
    }
    if c.labeled_induced_path {
        push(
            "labeled_induced_path".into(),
            Status::of(labeled_path_is_induced(g)),
            0,
        );
    }
    if let Some(p) = c.width {
        let r = solve(g, p, c.width_limit)?;
        row.width = Some(WidthCell {
            param: p,
            lower: r.lower,
            upper: r.upper,
            exact: r.is_exact(),
        });
    }
    Ok(())
}

fn mode_tag(mode: Mode) -> &'static str {
    match mode {
        Mode::Subgraph => "free:",
        Mode::Induced => "induced_free:",
        Mode::Minor => "minor_free:",
    }
}

/// Pass when `g` avoids the pattern; bouquet subgraph patterns go through the packing checker.
pub fn free_status(g: &Graph, pattern: &FamilySpec, mode: Mode, budget: u64) -> Result<Status> {
    if mode == Mode::Subgraph && pattern.terms.len() == 1 && pattern.terms[0].len() == 1 {
        if let Family::Bouquet { lengths, mode: bm } = &pattern.terms[0][0] {
            return Ok(match vtype_or_etype_free(g, lengths, *bm, budget) {
                Freeness::Free => Status::Pass,
                Freeness::Contains(_) => Status::Fail,
                Freeness::Budget => Status::Budget,
            });
        }
    }
    Ok(match contains(g, &pattern.build()?, mode, budget) {
        Outcome::Absent => Status::Pass,
        Outcome::Found(_) => Status::Fail,
        Outcome::Budget => Status::Budget,
    })
}

/// The vertices labelled `path:0, path:1, ...` (at least two) form an induced path in order.
pub fn labeled_path_is_induced(g: &Graph) -> bool {
    let ids: Vec<usize> = (0..).map_while(|i| g.find_label(&path_label(i))).collect();
    if ids.len() < 2 {
        return false;
    }
    ids.iter().enumerate().all(|(a, &u)| {
        ids.iter()
            .enumerate()
            .skip(a + 1)
            .all(|(b, &w)| g.has_edge(u, w) == (b == a + 1))
    })
}
