//! Motif file format: `τ benefit v1 v2 ... vk` per line, original node labels.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{BenefitMode, Motif, MotifError, MotifSet};
use crate::graph::Graph;

pub fn load_motifs(
    path: impl AsRef<Path>,
    g: &Graph,
    mode: BenefitMode,
) -> Result<MotifSet, MotifError> {
    let path = path.as_ref();
    let io_err = |source| MotifError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::open(path).map_err(io_err)?;
    let mut text = Vec::new();
    for line in BufReader::new(file).lines() {
        text.push(line.map_err(io_err)?);
    }
    parse_motifs(text.iter().map(String::as_str), g, mode)
}

pub fn parse_motifs<'l>(
    lines: impl IntoIterator<Item = &'l str>,
    g: &Graph,
    mode: BenefitMode,
) -> Result<MotifSet, MotifError> {
    let mut motifs = Vec::new();
    for (i, line) in lines.into_iter().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |msg: String| MotifError::Parse { line: lineno, msg };
        let mut cols = line.split_whitespace();
        let tau: usize = cols
            .next()
            .unwrap()
            .parse()
            .map_err(|e| parse_err(format!("bad threshold: {e}")))?;
        let benefit: f64 = cols
            .next()
            .ok_or_else(|| parse_err("missing benefit".into()))?
            .parse()
            .map_err(|e| parse_err(format!("bad benefit: {e}")))?;
        let vertices = cols
            .map(|label| {
                g.node_by_label(label)
                    .ok_or_else(|| MotifError::UnknownLabel {
                        line: lineno,
                        label: label.to_owned(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let motif = Motif::new(motifs.len(), vertices, tau, benefit, g)
            .map_err(|e| parse_err(e.to_string()))?;
        motifs.push(motif);
    }
    Ok(MotifSet::new(motifs, mode, g.node_count()))
}

/// Writes motifs in the format [`load_motifs`] reads.
pub fn write_motifs(set: &MotifSet, g: &Graph, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "# threshold benefit vertices...")?;
    for m in set.motifs() {
        write!(out, "{} {}", m.threshold, m.benefit)?;
        for &v in &m.vertices {
            write!(out, " {}", g.label(v))?;
        }
        writeln!(out)?;
    }
    Ok(())
}
