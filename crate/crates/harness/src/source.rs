//! Where campaign graphs come from.

use std::collections::BTreeSet;
use std::path::PathBuf;

use koptlab_core::generate::{all_labeled_graphs, canonical_code, gnp, random_chordal, rng};
use koptlab_core::io::{parse_edge_list, parse_graph6, to_graph6};
use koptlab_core::Graph;

use crate::error::{io_error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum GraphSource {
    /// Inline graph6 strings.
    Graph6(Vec<String>),
    /// One graph6 string per line; blank lines and `#` comments are skipped.
    Graph6File(PathBuf),
    /// A single graph as an edge list.
    EdgeListFile(PathBuf),
    /// Every labeled graph on `n ≤ 8` vertices, or one per isomorphism
    /// class when `iso` is set.
    Exhaustive { n: usize, iso: bool },
    Random { n: usize, p: f64, seed: u64, count: usize },
    RandomChordal { n: usize, seed: u64, count: usize },
}

/// A graph, or the reason it could not be read. Bad lines in a file do not
/// stop a campaign; they turn into skipped reports.
#[derive(Clone, Debug)]
pub struct SourceItem {
    pub label: String,
    pub graph: std::result::Result<Graph, String>,
}

impl SourceItem {
    pub fn ok(g: Graph) -> Self {
        SourceItem {
            label: to_graph6(&g).unwrap_or_else(|_| format!("<{} vertices>", g.n())),
            graph: Ok(g),
        }
    }
}

pub type Items = Box<dyn Iterator<Item = SourceItem> + Send>;

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(io_error(path.display()))
}

impl GraphSource {
    /// Chooses the file kind by extension: `.g6` and `.graph6` are graph6
    /// lists, anything else is an edge list.
    pub fn from_file(path: PathBuf) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6" | "graph6") => GraphSource::Graph6File(path),
            _ => GraphSource::EdgeListFile(path),
        }
    }

    pub fn items(&self) -> Result<Items> {
        Ok(match self {
            GraphSource::Graph6(lines) => Box::new(graph6_items(lines.clone())),
            GraphSource::Graph6File(path) => {
                let lines = read(path)?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(String::from)
                    .collect();
                Box::new(graph6_items(lines))
            }
            GraphSource::EdgeListFile(path) => {
                let text = read(path)?;
                let item = match parse_edge_list(&text) {
                    Ok(g) => SourceItem::ok(g),
                    Err(e) => SourceItem {
                        label: path.display().to_string(),
                        graph: Err(e.to_string()),
                    },
                };
                Box::new(std::iter::once(item))
            }
            &GraphSource::Exhaustive { n, iso } => {
                let all = all_labeled_graphs(n)?;
                if iso {
                    let mut seen = BTreeSet::new();
                    Box::new(all.filter(move |g| seen.insert(canonical_code(g))).map(SourceItem::ok))
                } else {
                    Box::new(all.map(SourceItem::ok))
                }
            }
            &GraphSource::Random { n, p, seed, count } => {
                let mut r = rng(seed);
                Box::new((0..count).map(move |_| SourceItem::ok(gnp(n, p, &mut r))))
            }
            &GraphSource::RandomChordal { n, seed, count } => {
                let mut r = rng(seed);
                Box::new((0..count).map(move |_| SourceItem::ok(random_chordal(n, &mut r))))
            }
        })
    }
}

fn graph6_items(lines: Vec<String>) -> impl Iterator<Item = SourceItem> + Send {
    lines.into_iter().map(|line| SourceItem {
        graph: parse_graph6(&line).map_err(|e| e.to_string()),
        label: line,
    })
}
