//! Plain-text input and output.
//!
//! Two formats are understood. A *facet list* starts with a header line
//! `n m` (vertex count, facet count) followed by m lines of
//! whitespace-separated vertex labels, one facet per line. An *edge list*
//! has no header: every line is `u v`. In both, `#` starts a comment and
//! blank lines are skipped. Labels are 0-based.
//!
//! Auto-detection treats input as a facet list when the first data line
//! has exactly two numbers `n m`, exactly m data lines follow, and every
//! label on them is below n; otherwise it falls back to an edge list. A
//! two-column file that happens to satisfy the header rule therefore
//! parses as a facet list — pass an explicit format when that matters.

use crate::complex::{Complex, Vertex};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Result of auto-detection.
#[derive(Debug, Clone)]
pub enum ParsedInput {
    Complex(Complex),
    Graph(Graph),
}

/// Data lines with their 1-based line numbers, comments and blanks removed.
fn data_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                None
            } else {
                Some((i + 1, line))
            }
        })
        .collect()
}

fn parse_labels(line: &str, lineno: usize) -> Result<Vec<Vertex>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<Vertex>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("bad vertex label `{t}`"),
            })
        })
        .collect()
}

/// Parse a facet list. `strict` is passed through to complex validation
/// and rejects facets contained in other facets instead of dropping them.
pub fn parse_complex(text: &str, strict: bool) -> Result<Complex> {
    let lines = data_lines(text);
    let Some(&(header_no, header)) = lines.first() else {
        return Err(Error::Parse { line: 1, message: String::from("empty input") });
    };
    let header_nums = parse_labels(header, header_no)?;
    if header_nums.len() != 2 {
        return Err(Error::Parse {
            line: header_no,
            message: String::from("expected header `n m`"),
        });
    }
    let (n, m) = (header_nums[0] as usize, header_nums[1] as usize);
    let body = &lines[1..];
    if body.len() != m {
        return Err(Error::Parse {
            line: body.last().map_or(header_no, |&(l, _)| l),
            message: format!("header promises {m} facets, found {}", body.len()),
        });
    }
    let mut facets = Vec::with_capacity(m);
    for &(lineno, line) in body {
        let labels = parse_labels(line, lineno)?;
        if labels.is_empty() {
            return Err(Error::Parse { line: lineno, message: String::from("empty facet") });
        }
        facets.push(labels);
    }
    Complex::from_facets(n, &facets, strict)
}

/// Write a facet list; inverse of `parse_complex` up to comments.
pub fn write_complex(x: &Complex) -> String {
    let mut out = format!("{} {}\n", x.vertex_count(), x.facets().len());
    for f in x.facets() {
        let words: Vec<String> = f.iter().map(|v| v.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

/// Parse a headerless edge list; the vertex count is the largest label
/// plus one. Repeated edges collapse; self-loops are rejected.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let lines = data_lines(text);
    if lines.is_empty() {
        return Err(Error::Parse { line: 1, message: String::from("empty input") });
    }
    let mut edges: Vec<(usize, Vertex, Vertex)> = Vec::with_capacity(lines.len());
    let mut max_label: Vertex = 0;
    for &(lineno, line) in &lines {
        let labels = parse_labels(line, lineno)?;
        if labels.len() != 2 {
            return Err(Error::Parse {
                line: lineno,
                message: String::from("expected `u v`"),
            });
        }
        let (u, v) = (labels[0], labels[1]);
        if u == v {
            return Err(Error::Parse {
                line: lineno,
                message: format!("self-loop at vertex {u}"),
            });
        }
        max_label = max_label.max(u).max(v);
        edges.push((lineno, u, v));
    }
    let mut g = Graph::new(max_label as usize + 1)?;
    for (lineno, u, v) in edges {
        g.add_edge(u, v).map_err(|e| Error::Parse { line: lineno, message: e.to_string() })?;
    }
    Ok(g)
}

/// Auto-detect the format (see the module notes for the rule).
pub fn parse_auto(text: &str, strict: bool) -> Result<ParsedInput> {
    let lines = data_lines(text);
    if let Some(&(header_no, header)) = lines.first() {
        if let Ok(nums) = parse_labels(header, header_no) {
            if nums.len() == 2 {
                let (n, m) = (nums[0] as usize, nums[1] as usize);
                let body = &lines[1..];
                let looks_like_facets = body.len() == m
                    && body.iter().all(|&(no, line)| {
                        parse_labels(line, no)
                            .map(|ls| !ls.is_empty() && ls.iter().all(|&v| (v as usize) < n))
                            .unwrap_or(false)
                    });
                if looks_like_facets {
                    return parse_complex(text, strict).map(ParsedInput::Complex);
                }
            }
        }
    }
    parse_edge_list(text).map(ParsedInput::Graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::octahedron;

    #[test]
    fn complex_roundtrip() {
        let o = octahedron();
        let text = write_complex(&o);
        assert!(text.starts_with("6 8\n"));
        let back = parse_complex(&text, true).unwrap();
        assert_eq!(back, o);
    }

    #[test]
    fn comments_and_unsorted_labels() {
        let text = "# a tetrahedron boundary\n4 4  # header\n\n2 1 0\n0 1 3\n0 3 2\n3 1 2\n";
        let x = parse_complex(text, true).unwrap();
        assert_eq!(x, Complex::boundary_tetrahedron());
    }

    #[test]
    fn header_and_count_errors() {
        assert!(matches!(
            parse_complex("", true),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_complex("4\n0 1 2\n", true),
            Err(Error::Parse { line: 1, .. })
        ));
        let short = parse_complex("4 4\n0 1 2\n0 1 3\n", true).unwrap_err();
        assert!(matches!(short, Error::Parse { .. }));
        assert!(matches!(
            parse_complex("4 1\n0 1 x\n", true),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn strictness_passthrough() {
        let text = "4 2\n0 1 2\n0 1\n";
        assert!(matches!(
            parse_complex(text, true),
            Err(Error::NonMaximalFacet { .. })
        ));
        // Lenient parse drops the contained face but then vertex 3 is unused.
        assert!(matches!(
            parse_complex(text, false),
            Err(Error::UnusedLabel { label: 3 })
        ));
    }

    #[test]
    fn edge_list_parsing() {
        let g = parse_edge_list("0 1\n1 2 # path\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert!(matches!(
            parse_edge_list("0 1\n2 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("0 1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn auto_detection() {
        match parse_auto(&write_complex(&octahedron()), true).unwrap() {
            ParsedInput::Complex(c) => assert_eq!(c, octahedron()),
            _ => panic!("octahedron file should detect as a complex"),
        }
        // Three edges, first line not a plausible header (5 > 3 lines follow).
        match parse_auto("5 4\n0 1\n1 2\n", true).unwrap() {
            ParsedInput::Graph(g) => assert_eq!(g.n(), 6),
            _ => panic!("should fall back to edge list"),
        }
        // Labels exceeding the claimed n also veto the header reading.
        match parse_auto("2 1\n0 7\n", true).unwrap() {
            ParsedInput::Graph(g) => assert_eq!(g.n(), 8),
            _ => panic!("label 7 rules out n = 2"),
        }
    }
}
