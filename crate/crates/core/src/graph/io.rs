//! SNAP-style edge-list ingestion.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use super::{Graph, GraphError, NodeId};

/// Loads a whitespace-delimited `src dst` edge list. `#` lines are comments
/// and columns past the second are ignored.
///
/// Labels are compacted to `0..n` in order of first appearance. Undirected
/// input expands every line into both directions.
pub fn load_edge_list(path: impl AsRef<Path>, directed: bool) -> Result<Graph, GraphError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| GraphError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_edge_list(BufReader::new(file), directed).map_err(|e| match e {
        GraphError::Io { source, .. } => GraphError::Io {
            path: path.to_path_buf(),
            source,
        },
        other => other,
    })
}

/// [`load_edge_list`] over any buffered reader.
pub fn parse_edge_list(reader: impl BufRead, directed: bool) -> Result<Graph, GraphError> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, NodeId> = HashMap::new();
    let mut edges = Vec::new();

    let mut intern = |label: &str| -> NodeId {
        if let Some(&id) = index.get(label) {
            return id;
        }
        let id = labels.len() as NodeId;
        labels.push(label.to_owned());
        index.insert(label.to_owned(), id);
        id
    };

    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|source| GraphError::Io {
            path: Default::default(),
            source,
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut cols = trimmed.split_whitespace();
        let (Some(a), Some(b)) = (cols.next(), cols.next()) else {
            return Err(GraphError::Parse {
                line: lineno,
                msg: format!("expected two node identifiers, got {trimmed:?}"),
            });
        };
        let u = intern(a);
        let v = intern(b);
        edges.push((u, v));
        if !directed {
            edges.push((v, u));
        }
    }

    let g = Graph::build(labels, edges);
    if g.node_count() == 0 || g.edge_count() == 0 {
        return Err(GraphError::Empty);
    }
    Ok(g)
}
