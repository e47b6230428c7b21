//! Text form of a family member, e.g. `path:5`, `apex-path:8:1001`, `cv:12x6,12x8`,
//! `samecyc:40:B:4`, `path:9 * complete:1` (join), `cycle:6 + path:3` (disjoint union).
//!
//! `+` binds looser than `*`. [`FamilySpec`]'s `Display` is canonical and parses back to
//! an equal value.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::*;
use crate::error::Error;
use crate::graph::{disjoint_union, join};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Biclique(usize, usize),
    Edgeless(usize),
    Spider(Vec<usize>),
    H {
        i: usize,
        l: usize,
    },
    Bouquet {
        lengths: Vec<usize>,
        mode: BouquetMode,
    },
    Wall {
        h: usize,
        k: usize,
    },
    ApexPath {
        n: usize,
        pattern: String,
    },
    IsCwGadget(usize),
    CvGadget(usize),
    CeGadget {
        n: usize,
        l: usize,
    },
    Samecyc {
        n: usize,
        variant: SamecycVariant,
        l: usize,
    },
    Witness {
        kind: WitnessKind,
        n: usize,
    },
    ErPolarity(u64),
}

impl Family {
    pub fn build(&self) -> Result<Graph> {
        match self {
            Family::Path(n) => path(*n),
            Family::Cycle(n) => cycle(*n),
            Family::Complete(n) => complete(*n),
            Family::Biclique(r, s) => complete_bipartite(*r, *s),
            Family::Edgeless(n) => edgeless(*n),
            Family::Spider(ls) => spider(ls),
            Family::H { i, l } => h_graph(*i, *l),
            Family::Bouquet { lengths, mode } => cycle_bouquet(lengths, *mode),
            Family::Wall { h, k } => wall(*h, *k),
            Family::ApexPath { n, pattern } => patterned_apex_path(*n, pattern),
            Family::IsCwGadget(h) => gadget_is_cw(*h),
            Family::CvGadget(n) => gadget_cv_unbounded(*n),
            Family::CeGadget { n, l } => gadget_ce_unbounded(*n, *l),
            Family::Samecyc { n, variant, l } => gadget_samecyc(*n, *variant, *l),
            Family::Witness { kind, n } => subdivided_witness(*kind, *n),
            Family::ErPolarity(q) => crate::geometry::er_polarity_graph(*q),
        }
    }
}

fn write_lengths(f: &mut fmt::Formatter<'_>, ls: &[usize]) -> fmt::Result {
    let mut i = 0;
    let mut first = true;
    while i < ls.len() {
        let mut j = i;
        while j < ls.len() && ls[j] == ls[i] {
            j += 1;
        }
        if !first {
            f.write_str(",")?;
        }
        first = false;
        if j - i > 1 {
            write!(f, "{}x{}", j - i, ls[i])?;
        } else {
            write!(f, "{}", ls[i])?;
        }
        i = j;
    }
    Ok(())
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Biclique(r, s) => write!(f, "biclique:{r}:{s}"),
            Family::Edgeless(n) => write!(f, "edgeless:{n}"),
            Family::Spider(ls) => {
                f.write_str("spider:")?;
                write_lengths(f, ls)
            }
            Family::H { i, l } => write!(f, "h:{i}:{l}"),
            Family::Bouquet { lengths, mode } => {
                f.write_str(match mode {
                    BouquetMode::Vertex => "cv:",
                    BouquetMode::Edge => "ce:",
                })?;
                write_lengths(f, lengths)
            }
            Family::Wall { h, k } => write!(f, "wall:{h}:{k}"),
            Family::ApexPath { n, pattern } => write!(f, "apex-path:{n}:{pattern}"),
            Family::IsCwGadget(h) => write!(f, "is-cw:{h}"),
            Family::CvGadget(n) => write!(f, "cv-gadget:{n}"),
            Family::CeGadget { n, l } => write!(f, "ce-gadget:{n}:{l}"),
            Family::Samecyc { n, variant, l } => match variant {
                SamecycVariant::A => write!(f, "samecyc:{n}:A"),
                SamecycVariant::B => write!(f, "samecyc:{n}:B:{l}"),
            },
            Family::Witness { kind, n } => match kind {
                WitnessKind::Biclique1Sub => write!(f, "biclique-1-sub:{n}"),
                WitnessKind::Clique2Sub => write!(f, "clique-2-sub:{n}"),
            },
            Family::ErPolarity(q) => write!(f, "er-polarity:{q}"),
        }
    }
}

fn bad(s: &str, why: impl fmt::Display) -> Error {
    Error::Domain(format!("bad family `{s}`: {why}"))
}

fn num<T: FromStr>(whole: &str, t: &str) -> Result<T> {
    t.parse()
        .map_err(|_| bad(whole, format!("`{t}` is not a nonnegative integer")))
}

fn lengths(whole: &str, t: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in t.split(',') {
        match part.split_once('x') {
            Some((k, l)) => {
                let (k, l): (usize, usize) = (num(whole, k)?, num(whole, l)?);
                if k == 0 {
                    return Err(bad(whole, "zero repetition count"));
                }
                out.extend(std::iter::repeat_n(l, k));
            }
            None => out.push(num(whole, part)?),
        }
    }
    Ok(out)
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parts: Vec<&str> = s.split(':').collect();
        let arity = |k: usize| -> Result<()> {
            if parts.len() == k + 1 {
                Ok(())
            } else {
                Err(bad(s, format!("expected {k} parameter(s)")))
            }
        };
        let p = |i: usize| -> Result<usize> { num(s, parts[i]) };
        Ok(match parts[0] {
            "path" => {
                arity(1)?;
                Family::Path(p(1)?)
            }
            "cycle" => {
                arity(1)?;
                Family::Cycle(p(1)?)
            }
            "complete" => {
                arity(1)?;
                Family::Complete(p(1)?)
            }
            "biclique" => {
                arity(2)?;
                Family::Biclique(p(1)?, p(2)?)
            }
            "edgeless" => {
                arity(1)?;
                Family::Edgeless(p(1)?)
            }
            "spider" => {
                arity(1)?;
                Family::Spider(lengths(s, parts[1])?)
            }
            "h" => {
                arity(2)?;
                Family::H { i: p(1)?, l: p(2)? }
            }
            "cv" | "ce" => {
                arity(1)?;
                Family::Bouquet {
                    lengths: lengths(s, parts[1])?,
                    mode: if parts[0] == "cv" {
                        BouquetMode::Vertex
                    } else {
                        BouquetMode::Edge
                    },
                }
            }
            "wall" => {
                arity(2)?;
                Family::Wall { h: p(1)?, k: p(2)? }
            }
            "apex-path" => {
                arity(2)?;
                if parts[2].is_empty() || parts[2].chars().any(|c| c != '0' && c != '1') {
                    return Err(bad(s, "pattern must be a nonempty bit string"));
                }
                Family::ApexPath {
                    n: p(1)?,
                    pattern: parts[2].to_string(),
                }
            }
            "is-cw" => {
                arity(1)?;
                Family::IsCwGadget(p(1)?)
            }
            "cv-gadget" => {
                arity(1)?;
                Family::CvGadget(p(1)?)
            }
            "ce-gadget" => {
                arity(2)?;
                Family::CeGadget { n: p(1)?, l: p(2)? }
            }
            "samecyc" => match parts.get(2) {
                Some(&"A") => {
                    arity(2)?;
                    Family::Samecyc {
                        n: p(1)?,
                        variant: SamecycVariant::A,
                        l: 0,
                    }
                }
                Some(&"B") => {
                    arity(3)?;
                    Family::Samecyc {
                        n: p(1)?,
                        variant: SamecycVariant::B,
                        l: p(3)?,
                    }
                }
                _ => return Err(bad(s, "variant must be A or B")),
            },
            "biclique-1-sub" | "clique-2-sub" => {
                arity(1)?;
                Family::Witness {
                    kind: if parts[0] == "biclique-1-sub" {
                        WitnessKind::Biclique1Sub
                    } else {
                        WitnessKind::Clique2Sub
                    },
                    n: p(1)?,
                }
            }
            "er-polarity" => {
                arity(1)?;
                Family::ErPolarity(num(s, parts[1])?)
            }
            other => return Err(bad(s, format!("unknown family `{other}`"))),
        })
    }
}

/// Disjoint union of joins of [`Family`] members.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub terms: Vec<Vec<Family>>,
}

impl FamilySpec {
    pub fn single(f: Family) -> Self {
        FamilySpec {
            terms: vec![vec![f]],
        }
    }

    pub fn build(&self) -> Result<Graph> {
        let mut out: Option<Graph> = None;
        for term in &self.terms {
            let mut j: Option<Graph> = None;
            for f in term {
                let g = f.build()?;
                j = Some(match j {
                    None => g,
                    Some(acc) => join(&acc, &g),
                });
            }
            let j = j.ok_or_else(|| Error::Domain("empty join term".into()))?;
            out = Some(match out {
                None => j,
                Some(acc) => disjoint_union(&acc, &j),
            });
        }
        out.ok_or_else(|| Error::Domain("empty family spec".into()))
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            for (k, fam) in term.iter().enumerate() {
                if k > 0 {
                    f.write_str(" * ")?;
                }
                write!(f, "{fam}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let terms = s
            .split('+')
            .map(|t| {
                t.split('*')
                    .map(str::parse)
                    .collect::<Result<Vec<Family>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FamilySpec { terms })
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilySpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
