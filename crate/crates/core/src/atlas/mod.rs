//! Classification oracle: given forbidden `F`, a containment relation, a width parameter and
//! a diameter bound, decide whether the class of `F`-free graphs has bounded width.
//!
//! Decisions come from a versioned rule table ([`registry`]) evaluated in full at the query
//! point, then closed under the three monotonicities (diameter, parameter, relation).

mod profile;

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

pub use profile::{
    apex, contains_bouquet, count_cycles, etype_parse, is_linear_forest, profile,
    subgraph_of_uniform_vbouquet, vtype_parse, StructureProfile,
};

use crate::constructions::{BouquetMode, FamilySpec};
use crate::containment::{has_subgraph, Outcome};
use crate::error::{Error, Result};
use crate::graph::{canonical_code, Graph};
use crate::width::Param;

/// Default node budget for the containment checks behind supergraph predicates.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Induced,
    Subgraph,
    Minor,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Induced => "induced",
            Relation::Subgraph => "subgraph",
            Relation::Minor => "minor",
        })
    }
}

impl FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "induced" => Ok(Relation::Induced),
            "subgraph" => Ok(Relation::Subgraph),
            "minor" => Ok(Relation::Minor),
            _ => Err(Error::Query(format!("unknown relation `{s}`"))),
        }
    }
}

/// Diameter bound; `Infinite` is the unrestricted class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Diameter {
    At(u32),
    Infinite,
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::At(d) => write!(f, "{d}"),
            Diameter::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Diameter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinite" | "∞" => Ok(Diameter::Infinite),
            _ => match s.parse::<u32>() {
                Ok(d) if d >= 1 => Ok(Diameter::At(d)),
                _ => Err(Error::Query(format!(
                    "diameter must be >= 1 or `inf`, got `{s}`"
                ))),
            },
        }
    }
}

impl Serialize for Diameter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Diameter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Diameter::from_str(&n.to_string()),
            Raw::S(s) => Diameter::from_str(&s),
        }
        .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Bounded,
    Unbounded,
    Open,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Bounded => "bounded",
            Answer::Unbounded => "unbounded",
            Answer::Open => "open",
        })
    }
}

/// Diameter range of a rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DRange {
    Finite { lo: u32, hi: Option<u32> },
    Infinite,
}

impl DRange {
    pub fn contains(&self, d: Diameter) -> bool {
        match (self, d) {
            (DRange::Infinite, Diameter::Infinite) => true,
            (DRange::Finite { lo, hi }, Diameter::At(d)) => d >= *lo && hi.is_none_or(|h| d <= h),
            _ => false,
        }
    }
}

impl FromStr for DRange {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Query(format!("bad diameter range `{s}`"));
        if s == "inf" {
            return Ok(DRange::Infinite);
        }
        if let Some(lo) = s.strip_suffix('+') {
            return Ok(DRange::Finite {
                lo: lo.parse().map_err(|_| bad())?,
                hi: None,
            });
        }
        let (lo, hi) = s.split_once('-').unwrap_or((s, s));
        Ok(DRange::Finite {
            lo: lo.parse().map_err(|_| bad())?,
            hi: Some(hi.parse().map_err(|_| bad())?),
        })
    }
}

#[derive(Clone, Debug, Deserialize)]
struct RawRule {
    id: String,
    cite: String,
    relation: Relation,
    params: Vec<Param>,
    d: String,
    when: Vec<String>,
    verdict: Answer,
    #[serde(default)]
    derived: bool,
    note: Option<String>,
}

#[derive(Deserialize)]
struct RawRegistry {
    version: u32,
    rule: Vec<RawRule>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Rule {
    pub id: String,
    pub cite: String,
    pub relation: Relation,
    pub params: Vec<Param>,
    #[serde(skip)]
    pub d: DRange,
    pub d_text: String,
    pub when: Vec<String>,
    pub verdict: Answer,
    pub derived: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Registry {
    pub version: u32,
    pub rules: Vec<Rule>,
}

const RULES_TOML: &str = include_str!("rules.toml");

impl Registry {
    pub fn parse(text: &str) -> Result<Registry> {
        let raw: RawRegistry =
            toml::from_str(text).map_err(|e| Error::Query(format!("rule table: {e}")))?;
        let mut rules = Vec::with_capacity(raw.rule.len());
        for r in raw.rule {
            for w in &r.when {
                check_predicate(w.trim_start_matches('!'))?;
            }
            rules.push(Rule {
                d: r.d.parse()?,
                d_text: r.d,
                id: r.id,
                cite: r.cite,
                relation: r.relation,
                params: r.params,
                when: r.when,
                verdict: r.verdict,
                derived: r.derived,
                note: r.note,
            });
        }
        Ok(Registry {
            version: raw.version,
            rules,
        })
    }
}

/// The built-in rule table.
pub fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| Registry::parse(RULES_TOML).expect("built-in rule table parses"))
}

pub const REGISTRY_VERSION: u32 = 1;

/// Where a rule fired; `inferred` rules fired at another point and were transferred.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub rule: String,
    pub cite: String,
    pub answer: Answer,
    pub relation: Relation,
    pub parameter: Param,
    pub d: Diameter,
    pub inferred: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Answer,
    /// Citation of the deciding rule (for Open: of the nearest annotation, if any).
    pub cite: Option<String>,
    pub note: Option<String>,
    pub registry_version: u32,
    /// Every rule that fired, directly or by monotonicity.
    pub trace: Vec<TraceEntry>,
    /// Notes from preprocessing and undecided predicates.
    pub remarks: Vec<String>,
}

/// One reviewed query with its expected verdict (the regression catalog format).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub forbidden: Vec<FamilySpec>,
    pub relation: Relation,
    pub parameter: Param,
    pub d: Diameter,
    pub verdict: Answer,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cite: Option<String>,
}

impl CatalogEntry {
    pub fn query(&self) -> Result<Query> {
        Ok(Query {
            forbidden: self
                .forbidden
                .iter()
                .map(|f| f.build())
                .collect::<Result<_>>()?,
            relation: self.relation,
            parameter: self.parameter,
            d: self.d,
        })
    }
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    #[derive(Deserialize)]
    struct File {
        query: Vec<CatalogEntry>,
    }
    let f: File = toml::from_str(text).map_err(|e| Error::Query(format!("catalog: {e}")))?;
    Ok(f.query)
}

#[derive(Clone, Debug)]
pub struct Query {
    pub forbidden: Vec<Graph>,
    pub relation: Relation,
    pub parameter: Param,
    pub d: Diameter,
}

impl Query {
    pub fn new(f: Graph, relation: Relation, parameter: Param, d: Diameter) -> Query {
        Query {
            forbidden: vec![f],
            relation,
            parameter,
            d,
        }
    }
}

/// The deciding component for subgraph treedepth: the unique non-path component, else the
/// longest path component. With two or more non-path components `F` is returned unchanged.
pub fn reduce_components(f: &Graph) -> Graph {
    let comps = f.components();
    if comps.len() <= 1 {
        return f.clone();
    }
    let is_path = |c: &Vec<usize>| {
        let g = f.induced_subgraph(c);
        is_linear_forest(&g)
    };
    let non_path: Vec<&Vec<usize>> = comps.iter().filter(|c| !is_path(c)).collect();
    match non_path.len() {
        0 => {
            let longest = comps
                .iter()
                .max_by_key(|c| (c.len(), std::cmp::Reverse(c[0])))
                .unwrap();
            f.induced_subgraph(longest)
        }
        1 => f.induced_subgraph(non_path[0]),
        _ => f.clone(),
    }
}

fn check_predicate(p: &str) -> Result<()> {
    let (head, arg) = p.split_once(':').unwrap_or((p, ""));
    let ok = match head {
        "clique" | "ind_p2" | "ind_p4" | "planar" | "apex_planar" | "forest" | "apex_forest"
        | "linear_forest" | "apex_linear_forest" | "script_s" | "sbar" | "h2" | "bipartite"
        | "c4" | "unicyclic" | "acyclic" | "sup_cv_12x6_12x8" | "sup_ce_gadget" | "sup_samecyc" => {
            arg.is_empty()
        }
        "cycle" | "cv2_even" | "ce2_even" | "sub_cv_uniform" | "cycles_min" => {
            arg.parse::<usize>().is_ok()
        }
        "even_cycle" | "odd_cycle" => parse_range(arg).is_some(),
        "sup" | "sub" | "iso" => arg.parse::<FamilySpec>().is_ok(),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Query(format!("unknown predicate `{p}`")))
    }
}

/// `a-b`, `a-` (unbounded above) or `a`.
fn parse_range(s: &str) -> Option<(usize, Option<usize>)> {
    match s.split_once('-') {
        Some((a, "")) => Some((a.parse().ok()?, None)),
        Some((a, b)) => Some((a.parse().ok()?, Some(b.parse().ok()?))),
        None => {
            let a = s.parse().ok()?;
            Some((a, Some(a)))
        }
    }
}

/// A forbidden graph with memoised predicate values; `None` means undecided within budget.
struct Subject {
    g: Graph,
    prof: StructureProfile,
    budget: u64,
    cache: RefCell<HashMap<String, Option<bool>>>,
}

impl Subject {
    fn new(g: Graph, budget: u64) -> Subject {
        let g = g.without_labels();
        Subject {
            prof: profile(&g),
            g,
            budget,
            cache: RefCell::new(HashMap::new()),
        }
    }

    fn eval(&self, pred: &str) -> Option<bool> {
        if let Some(neg) = pred.strip_prefix('!') {
            return self.eval(neg).map(|b| !b);
        }
        if let Some(v) = self.cache.borrow().get(pred) {
            return *v;
        }
        let v = self.compute(pred);
        self.cache.borrow_mut().insert(pred.to_string(), v);
        v
    }

    fn cycle_length(&self) -> Option<usize> {
        let p = &self.prof;
        (p.is_connected && p.n >= 3 && p.m == p.n && p.vtype.as_ref().is_some_and(|v| v.len() == 1))
            .then_some(p.n)
    }

    fn outcome(o: Outcome<impl Sized>) -> Option<bool> {
        match o {
            Outcome::Found(_) => Some(true),
            Outcome::Absent => Some(false),
            Outcome::Budget => None,
        }
    }

    fn compute(&self, pred: &str) -> Option<bool> {
        let p = &self.prof;
        let (head, arg) = pred.split_once(':').unwrap_or((pred, ""));
        let num = || arg.parse::<usize>().expect("checked at load");
        Some(match head {
            "clique" => p.is_clique,
            "ind_p2" => p.induced_subgraph_of_p2,
            "ind_p4" => p.induced_subgraph_of_p4,
            "planar" => p.is_planar,
            "apex_planar" => p.is_apex_planar,
            "forest" => p.is_forest,
            "apex_forest" => p.is_apex_forest,
            "linear_forest" => p.is_linear_forest,
            "apex_linear_forest" => p.is_apex_linear_forest,
            "script_s" => p.in_script_s,
            "sbar" => p.subgraph_of_subdivided_star,
            "h2" => p.min_h2_ell.is_some(),
            "bipartite" => p.is_bipartite,
            "c4" => p.contains_c4,
            "unicyclic" => p.unicyclic,
            "acyclic" => p.is_forest,
            "cycles_min" => p.cycle_rank >= num(),
            "cycle" => self.cycle_length() == Some(num()),
            "even_cycle" | "odd_cycle" => {
                let (lo, hi) = parse_range(arg).expect("checked at load");
                let parity = if head == "even_cycle" { 0 } else { 1 };
                match self.cycle_length() {
                    Some(l) if l % 2 == parity => {
                        let r = l / 2;
                        r >= lo && hi.is_none_or(|h| r <= h)
                    }
                    _ => false,
                }
            }
            "cv2_even" | "ce2_even" => {
                let parse = if head == "cv2_even" {
                    &p.vtype
                } else {
                    &p.etype
                };
                parse
                    .as_ref()
                    .is_some_and(|ls| ls.len() == 2 && ls.iter().all(|&l| l % 2 == 0 && l >= num()))
            }
            "sub_cv_uniform" => subgraph_of_uniform_vbouquet(&self.g, num()),
            "sup" | "sub" | "iso" => {
                let pat = arg.parse::<FamilySpec>().ok()?.build().ok()?;
                match head {
                    "sup" => return Self::outcome(has_subgraph(&self.g, &pat, self.budget)),
                    "sub" => {
                        if self.g.n() > pat.n() {
                            false
                        } else {
                            return Self::outcome(has_subgraph(&pat, &self.g, self.budget));
                        }
                    }
                    _ => {
                        pat.n() == self.g.n()
                            && pat.edge_count() == self.g.edge_count()
                            && canonical_code(&pat).ok()? == canonical_code(&self.g).ok()?
                    }
                }
            }
            "sup_cv_12x6_12x8" => {
                let mut ls = vec![6; 12];
                ls.extend([8; 12]);
                return Self::outcome(contains_bouquet(
                    &self.g,
                    &ls,
                    BouquetMode::Vertex,
                    self.budget,
                ));
            }
            "sup_ce_gadget" => {
                // C^E_{k x [2l]} with k = 2(2l - 3) has 2 + k(2l - 2) vertices
                let mut undecided = false;
                for l in 3.. {
                    let k = 2 * (2 * l - 3);
                    if 2 + k * (2 * l - 2) > self.g.n() {
                        break;
                    }
                    match contains_bouquet(&self.g, &vec![2 * l; k], BouquetMode::Edge, self.budget)
                    {
                        Outcome::Found(_) => return Some(true),
                        Outcome::Budget => undecided = true,
                        Outcome::Absent => {}
                    }
                }
                return if undecided { None } else { Some(false) };
            }
            "sup_samecyc" => return self.sup_samecyc(),
            _ => unreachable!("predicate `{pred}` passed the load check"),
        })
    }

    /// Contains a two-cycle V- or E-type graph with lengths `4a, 4b` (`a, b >= 2`) or `2l, 2l`
    /// (`l >= 4`).
    fn sup_samecyc(&self) -> Option<bool> {
        if self.prof.cycle_rank < 2 {
            return Some(false);
        }
        let n = self.g.n();
        let mut undecided = false;
        for a in (8..=n).step_by(2) {
            for b in (a..=n).step_by(2) {
                if !((a % 4 == 0 && b % 4 == 0) || a == b) {
                    continue;
                }
                for (mode, shared) in [(BouquetMode::Vertex, 1), (BouquetMode::Edge, 2)] {
                    if a + b - shared > n {
                        continue;
                    }
                    match contains_bouquet(&self.g, &[a, b], mode, self.budget) {
                        Outcome::Found(_) => return Some(true),
                        Outcome::Budget => undecided = true,
                        Outcome::Absent => {}
                    }
                }
            }
        }
        if undecided {
            None
        } else {
            Some(false)
        }
    }
}

/// Predicate values for one query: the full forbidden set, plus the reduced graph used for
/// subgraph treedepth.
struct Subjects {
    full: Vec<Subject>,
    reduced: Option<Subject>,
}

struct Fired<'a> {
    rule: &'a Rule,
}

impl Subjects {
    fn subjects(&self, rel: Relation, p: Param) -> Vec<&Subject> {
        match (&self.reduced, rel, p) {
            (Some(r), Relation::Subgraph, Param::Td) => vec![r],
            _ => self.full.iter().collect(),
        }
    }

    /// Rules firing at one point; `undecided` collects rules blocked by a budget.
    fn fire(
        &self,
        rel: Relation,
        p: Param,
        d: Diameter,
        undecided: &mut Vec<String>,
    ) -> Vec<Fired<'static>> {
        let subs = self.subjects(rel, p);
        let mut out = Vec::new();
        for rule in &registry().rules {
            if rule.relation != rel || !rule.params.contains(&p) || !rule.d.contains(d) {
                continue;
            }
            let holds = |s: &Subject| -> Option<bool> {
                let mut all = Some(true);
                for w in &rule.when {
                    match s.eval(w) {
                        Some(false) => return Some(false),
                        None => all = None,
                        Some(true) => {}
                    }
                }
                all
            };
            let vals: Vec<Option<bool>> = subs.iter().map(|s| holds(s)).collect();
            // bounded / open: some member; unbounded: every member
            let fires = match rule.verdict {
                Answer::Unbounded => {
                    if vals.contains(&Some(false)) {
                        Some(false)
                    } else if vals.iter().all(|v| *v == Some(true)) {
                        Some(true)
                    } else {
                        None
                    }
                }
                _ => {
                    if vals.contains(&Some(true)) {
                        Some(true)
                    } else if vals.iter().all(|v| *v == Some(false)) {
                        Some(false)
                    } else {
                        None
                    }
                }
            };
            match fires {
                Some(true) => out.push(Fired { rule }),
                Some(false) => {}
                None => undecided.push(format!(
                    "rule {} undecided within the containment budget",
                    rule.id
                )),
            }
        }
        out
    }
}

const RELATIONS: [Relation; 3] = [Relation::Induced, Relation::Subgraph, Relation::Minor];
const PARAMS: [Param; 4] = [Param::Td, Param::Pw, Param::Tw, Param::Cw];

fn param_rank(p: Param) -> u8 {
    match p {
        Param::Td => 0,
        Param::Pw => 1,
        Param::Tw => 2,
        Param::Cw => 3,
    }
}

/// Diameters probed for inference; every rule range is constant beyond 5.
fn probe_diameters() -> Vec<Diameter> {
    (1..=6)
        .map(Diameter::At)
        .chain([Diameter::Infinite])
        .collect()
}

/// `Bounded` at `from` implies `Bounded` at `to`: `to` is a larger-or-equal parameter, a smaller
/// (or equal) diameter and a relation forbidding at least as much.
fn bounded_transfers(from: (Relation, Param, Diameter), to: (Relation, Param, Diameter)) -> bool {
    from.0 <= to.0 && param_rank(from.1) <= param_rank(to.1) && to.2 <= from.2
}

pub fn classify(q: &Query) -> Result<Verdict> {
    classify_with_budget(q, DEFAULT_BUDGET)
}

pub fn classify_with_budget(q: &Query, budget: u64) -> Result<Verdict> {
    if q.forbidden.is_empty() {
        return Err(Error::Query("no forbidden graph given".into()));
    }
    if q.forbidden.len() > 1 && q.relation != Relation::Minor {
        return Err(Error::Query(format!(
            "a set of forbidden graphs is only supported for the minor relation, not {}",
            q.relation
        )));
    }
    if q.forbidden.iter().any(|f| f.n() == 0) {
        return Err(Error::Query("forbidden graph has no vertices".into()));
    }
    let single = q.forbidden.len() == 1;
    let mut remarks = Vec::new();
    let reduced = if single {
        let f = &q.forbidden[0];
        let r = reduce_components(f);
        if r.n() != f.n() {
            remarks.push(format!(
                "subgraph treedepth decided by one component of F ({} of {} vertices)",
                r.n(),
                f.n()
            ));
        } else if !f.is_connected() {
            remarks.push("F has several non-path components and is kept whole".into());
        }
        Some(Subject::new(r, budget))
    } else {
        None
    };
    let subjects = Subjects {
        full: q
            .forbidden
            .iter()
            .map(|f| Subject::new(f.clone(), budget))
            .collect(),
        reduced,
    };

    let target = (q.relation, q.parameter, q.d);
    let mut trace = Vec::new();
    let mut undecided = Vec::new();
    let entry = |f: &Fired, at: (Relation, Param, Diameter), inferred: bool| TraceEntry {
        rule: f.rule.id.clone(),
        cite: f.rule.cite.clone(),
        answer: f.rule.verdict,
        relation: at.0,
        parameter: at.1,
        d: at.2,
        inferred,
        note: f.rule.note.clone(),
    };
    for f in subjects.fire(q.relation, q.parameter, q.d, &mut undecided) {
        trace.push(entry(&f, target, false));
    }
    let relations: Vec<Relation> = if single {
        RELATIONS.to_vec()
    } else {
        vec![q.relation]
    };
    for &rel in &relations {
        for p in PARAMS {
            for d in probe_diameters() {
                let at = (rel, p, d);
                if at == target {
                    continue;
                }
                let mut ignored = Vec::new();
                for f in subjects.fire(rel, p, d, &mut ignored) {
                    let applies = match f.rule.verdict {
                        Answer::Bounded => bounded_transfers(at, target),
                        Answer::Unbounded => bounded_transfers(target, at),
                        Answer::Open => false,
                    };
                    if applies {
                        trace.push(entry(&f, at, true));
                    }
                }
            }
        }
    }

    let has = |a: Answer| trace.iter().any(|t| t.answer == a);
    if has(Answer::Bounded) && has(Answer::Unbounded) {
        let ids: Vec<String> = trace
            .iter()
            .filter(|t| t.answer != Answer::Open)
            .map(|t| {
                format!(
                    "{}@{}/{}/{}={}",
                    t.rule, t.relation, t.parameter, t.d, t.answer
                )
            })
            .collect();
        return Err(Error::Contradiction(ids.join(", ")));
    }
    let answer = if has(Answer::Bounded) {
        Answer::Bounded
    } else if has(Answer::Unbounded) {
        Answer::Unbounded
    } else {
        Answer::Open
    };
    // direct rules first, then inferred; registry order within each
    let deciding = trace
        .iter()
        .filter(|t| t.answer == answer)
        .min_by_key(|t| t.inferred);
    let (cite, note) = match deciding {
        Some(t) => (Some(t.cite.clone()), t.note.clone()),
        None => (None, None),
    };
    if answer == Answer::Open {
        remarks.extend(undecided);
    }
    Ok(Verdict {
        answer,
        cite,
        note,
        registry_version: registry().version,
        trace,
        remarks,
    })
}
