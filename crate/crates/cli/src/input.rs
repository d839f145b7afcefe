//! Graph and file loading with format autodetection.

use std::io::Read;

use clap::ValueEnum;

use nac_core::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Auto,
    Graph6,
    Edgelist,
}

pub fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn detect(path: &str, text: &str) -> FormatArg {
    let lower = path.to_ascii_lowercase();
    if lower.ends_with(".g6") || lower.ends_with(".graph6") {
        return FormatArg::Graph6;
    }
    if lower.ends_with(".txt") || lower.ends_with(".edges") || lower.ends_with(".edgelist") {
        return FormatArg::Edgelist;
    }
    // an edge list line has at least two whitespace-separated integers
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if first.split_whitespace().count() >= 2
        && first.split_whitespace().all(|t| t.parse::<u32>().is_ok())
    {
        FormatArg::Edgelist
    } else {
        FormatArg::Graph6
    }
}

pub fn parse_graph(text: &str, format: FormatArg, name: &str) -> Result<Graph, String> {
    let format = if format == FormatArg::Auto {
        detect(name, text)
    } else {
        format
    };
    match format {
        FormatArg::Graph6 => {
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or_else(|| format!("{name}: empty input"))?;
            nac_core::graph6::parse_graph6(line).map_err(|e| format!("{name}: {e}"))
        }
        FormatArg::Edgelist => {
            nac_core::graph::parse_edge_list(text).map_err(|e| format!("{name}: {e}"))
        }
        FormatArg::Auto => unreachable!(),
    }
}

/// Loads the first graph from a file (multi-line graph6 files hold one
/// graph per line; the batch commands read them all).
pub fn load_first_graph(path: &str, format: FormatArg) -> Result<Graph, String> {
    let text = read_input(path)?;
    parse_graph(&text, format, path)
}

/// Loads every graph in a file, labelled `stem#index` when there are many.
pub fn load_all_graphs(path: &str, format: FormatArg) -> Result<Vec<(String, Graph)>, String> {
    let text = read_input(path)?;
    let stem = std::path::Path::new(path)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string());
    let format = if format == FormatArg::Auto {
        detect(path, &text)
    } else {
        format
    };
    match format {
        FormatArg::Edgelist => Ok(vec![(stem, parse_graph(&text, format, path)?)]),
        _ => {
            let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
            let mut out = Vec::new();
            for (i, line) in lines.iter().enumerate() {
                let g =
                    nac_core::graph6::parse_graph6(line).map_err(|e| format!("{path}:{}: {e}", i + 1))?;
                let id = if lines.len() == 1 {
                    stem.clone()
                } else {
                    format!("{stem}#{i}")
                };
                out.push((id, g));
            }
            Ok(out)
        }
    }
}
