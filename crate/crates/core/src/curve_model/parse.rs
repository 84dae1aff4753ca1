use thiserror::Error;

use super::{is_valid_id, CurveComponent, DualGraph, GraphError, Hyperelliptic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

/// Parses the curve file format:
///
/// ```text
/// # comment
/// component <id> genus=<int> [hyperelliptic=<true|false|unknown>] [label=<token>]
/// node <id1> <id2>
/// ```
pub fn parse_dual_graph(text: &str) -> Result<DualGraph, ParseError> {
    let mut components = Vec::new();
    let mut nodes = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(&(col, keyword)) = toks.first() else {
            continue;
        };
        match keyword {
            "component" => components.push(parse_component(lineno, &toks)?),
            "node" => {
                if toks.len() != 3 {
                    let c = toks.get(3).map_or(line.chars().count() + 1, |t| t.0);
                    return Err(syntax(lineno, c, "expected `node <id1> <id2>`"));
                }
                for &(c, id) in &toks[1..] {
                    if !is_valid_id(id) {
                        return Err(syntax(lineno, c, format!("invalid component id {id:?}")));
                    }
                }
                nodes.push((toks[1].1.to_string(), toks[2].1.to_string()));
            }
            other => {
                return Err(syntax(
                    lineno,
                    col,
                    format!("unknown directive {other:?}; expected `component` or `node`"),
                ))
            }
        }
    }
    Ok(DualGraph::new(components, nodes)?)
}

fn parse_component(line: usize, toks: &[(usize, &str)]) -> Result<CurveComponent, ParseError> {
    let Some(&(col, id)) = toks.get(1) else {
        return Err(syntax(
            line,
            toks[0].0 + toks[0].1.len(),
            "missing component id",
        ));
    };
    if !is_valid_id(id) {
        return Err(syntax(line, col, format!("invalid component id {id:?}")));
    }
    let mut genus = None;
    let mut hyperelliptic = None;
    let mut label = None;
    for &(col, tok) in &toks[2..] {
        let Some((key, value)) = tok.split_once('=') else {
            return Err(syntax(
                line,
                col,
                format!("expected key=value, found {tok:?}"),
            ));
        };
        let vcol = col + key.chars().count() + 1;
        match key {
            "genus" if genus.is_none() => {
                genus = Some(value.parse::<u32>().map_err(|_| {
                    syntax(
                        line,
                        vcol,
                        format!("genus must be a non-negative integer, found {value:?}"),
                    )
                })?);
            }
            "hyperelliptic" if hyperelliptic.is_none() => {
                hyperelliptic = Some(match value {
                    "true" | "yes" => Hyperelliptic::Yes,
                    "false" | "no" => Hyperelliptic::No,
                    "unknown" => Hyperelliptic::Unknown,
                    _ => {
                        return Err(syntax(
                            line,
                            vcol,
                            format!(
                                "hyperelliptic must be true, false or unknown, found {value:?}"
                            ),
                        ))
                    }
                });
            }
            "label" if label.is_none() => {
                if !is_valid_id(value) {
                    return Err(syntax(line, vcol, format!("invalid label {value:?}")));
                }
                label = Some(value.to_string());
            }
            "genus" | "hyperelliptic" | "label" => {
                return Err(syntax(line, col, format!("duplicate key {key:?}")))
            }
            _ => return Err(syntax(line, col, format!("unknown key {key:?}"))),
        }
    }
    let genus =
        genus.ok_or_else(|| syntax(line, col, format!("component {id} is missing genus=")))?;
    let mut component =
        CurveComponent::new(id, genus, hyperelliptic.unwrap_or(Hyperelliptic::Unknown));
    if let Some(label) = label {
        component = component.with_label(label);
    }
    Ok(component)
}
