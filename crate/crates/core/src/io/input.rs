//! The line-oriented input document.
//!
//! ```text
//! # comment
//! field Q                 # or: field GF 5
//! vertices 3
//! simplex 0 1             # explicit simplex; every face must be listed too
//! facet 0 1 2             # a simplex together with all of its faces
//! values 0 1/2 0.75       # one value per vertex; repeat for more functions
//! manifold 2              # optional: closed manifold of this dimension
//! orientable yes          # optional: yes | no
//! ```

use std::collections::BTreeSet;

use super::InputError;
use crate::complex::{Simplex, SimplicialComplex, VertexFunction};
use crate::linalg::FieldSpec;
use crate::value::{format_value, parse_value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDocument {
    pub field: FieldSpec,
    pub complex: SimplicialComplex,
    pub functions: Vec<VertexFunction>,
    /// Dimension of the closed manifold the complex triangulates, if declared.
    pub manifold_dim: Option<usize>,
    pub orientable: Option<bool>,
}

impl InputDocument {
    pub fn n_vertices(&self) -> usize {
        self.complex.n_vertices()
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> InputError {
    InputError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn parse_usize(line: usize, tok: &str, what: &str) -> Result<usize, InputError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("{what}: expected a nonnegative integer, got {tok:?}")))
}

fn parse_field(line: usize, args: &[&str]) -> Result<FieldSpec, InputError> {
    let joined = args.join(" ");
    let norm = joined.replace(['(', ')'], " ");
    let parts: Vec<&str> = norm.split_whitespace().collect();
    match parts.as_slice() {
        ["Q"] | ["q"] | ["QQ"] => Ok(FieldSpec::Rationals),
        ["GF", p] | ["gf", p] | ["F", p] | ["Z", p] => {
            let p: u64 = p
                .parse()
                .map_err(|_| syntax(line, format!("field: bad characteristic {p:?}")))?;
            FieldSpec::prime(p).map_err(|_| InputError::NotPrime { line, p })
        }
        _ => Err(syntax(line, format!("field: expected `Q` or `GF <p>`, got {joined:?}"))),
    }
}

pub fn parse_input(text: &str) -> Result<InputDocument, InputError> {
    let mut field = None;
    let mut n_vertices: Option<usize> = None;
    let mut explicit: Vec<(usize, Simplex)> = Vec::new();
    let mut facets: Vec<(usize, Simplex)> = Vec::new();
    let mut values_lines = Vec::new();
    let mut manifold_dim = None;
    let mut orientable = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let keyword = toks.next().unwrap();
        let args: Vec<&str> = toks.collect();
        match keyword {
            "field" => field = Some(parse_field(line, &args)?),
            "vertices" => {
                let [n] = args.as_slice() else {
                    return Err(syntax(line, "vertices: expected one count"));
                };
                n_vertices = Some(parse_usize(line, n, "vertices")?);
            }
            "simplex" | "facet" => {
                if args.is_empty() {
                    return Err(syntax(line, format!("{keyword}: no vertices")));
                }
                let s = args
                    .iter()
                    .map(|t| parse_usize(line, t, keyword))
                    .collect::<Result<Simplex, _>>()?;
                if keyword == "simplex" {
                    explicit.push((line, s));
                } else {
                    facets.push((line, s));
                }
            }
            "values" => {
                let vals = args
                    .iter()
                    .map(|t| parse_value(t).map_err(|e| syntax(line, e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                values_lines.push((line, vals));
            }
            "manifold" => {
                let [n] = args.as_slice() else {
                    return Err(syntax(line, "manifold: expected one dimension"));
                };
                manifold_dim = Some(parse_usize(line, n, "manifold")?);
            }
            "orientable" => {
                orientable = Some(match args.as_slice() {
                    ["yes"] | ["true"] => true,
                    ["no"] | ["false"] => false,
                    _ => return Err(syntax(line, "orientable: expected yes or no")),
                })
            }
            other => return Err(syntax(line, format!("unknown keyword {other:?}"))),
        }
    }

    let field = field.unwrap_or(FieldSpec::Rationals);
    let n = n_vertices.ok_or(InputError::MissingVertices)?;
    for (line, s) in explicit.iter().chain(&facets) {
        if let Some(&v) = s.iter().find(|&&v| v >= n) {
            return Err(InputError::VertexIndex {
                line: *line,
                vertex: v,
                n_vertices: n,
            });
        }
    }

    let complex = if facets.is_empty() {
        SimplicialComplex::new(n, explicit.into_iter().map(|(_, s)| s).collect())?
    } else {
        // facets contribute their closure; explicit simplices are added as given
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        let closure = SimplicialComplex::from_facets(n, &facets.into_iter().map(|(_, s)| s).collect::<Vec<_>>())?;
        all.extend(closure.all_simplices().cloned());
        for (_, s) in explicit {
            all.insert(s);
        }
        SimplicialComplex::new(n, all.into_iter().collect())?
    };

    if values_lines.is_empty() {
        return Err(InputError::NoFunction);
    }
    let functions = values_lines
        .into_iter()
        .map(|(line, vals)| {
            VertexFunction::new(&complex, vals).map_err(|e| syntax(line, e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(InputDocument {
        field,
        complex,
        functions,
        manifold_dim,
        orientable,
    })
}

/// Serializes a document so that [`parse_input`] reads it back unchanged.
/// Simplices are written explicitly, lowest dimension first.
pub fn write_input(doc: &InputDocument) -> String {
    let mut out = String::new();
    let field = match doc.field {
        FieldSpec::Rationals => "Q".to_string(),
        FieldSpec::Prime(p) => format!("GF {p}"),
    };
    out.push_str(&format!("field {field}\nvertices {}\n", doc.n_vertices()));
    if let Some(n) = doc.manifold_dim {
        out.push_str(&format!("manifold {n}\n"));
    }
    if let Some(o) = doc.orientable {
        out.push_str(if o { "orientable yes\n" } else { "orientable no\n" });
    }
    for s in doc.complex.all_simplices() {
        let vs: Vec<String> = s.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("simplex {}\n", vs.join(" ")));
    }
    for f in &doc.functions {
        let vs: Vec<String> = f.values().iter().map(format_value).collect();
        out.push_str(&format!("values {}\n", vs.join(" ")));
    }
    out
}
