//! Reading and writing graphs in the supported file formats.

use std::path::Path;
use std::str::FromStr;

use diamwidth::graph::io::{from_edge_list, from_graph6, to_edge_list, to_graph6};
use diamwidth::{Error, Graph, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    Edges,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edges" | "edgelist" => Ok(Format::Edges),
            _ => Err(Error::Query(format!("unknown graph format `{s}`"))),
        }
    }
}

impl Format {
    /// `.g6` and `.graph6` are graph6; anything else is an edge list.
    pub fn from_path(p: &Path) -> Format {
        match p.extension().and_then(|e| e.to_str()) {
            Some("g6" | "graph6") => Format::Graph6,
            _ => Format::Edges,
        }
    }
}

pub fn parse_graph(text: &str, fmt: Format) -> Result<Graph> {
    Ok(match fmt {
        Format::Graph6 => from_graph6(text)?,
        Format::Edges => from_edge_list(text)?,
    })
}

pub fn render_graph(g: &Graph, fmt: Format) -> String {
    match fmt {
        Format::Graph6 => format!("{}\n", to_graph6(g)),
        Format::Edges => to_edge_list(g),
    }
}
