//! Configuration and polynomial documents.
//!
//! A configuration document lists, per degree, the support points in
//! lexicographic order:
//!
//! ```text
//! field Q
//! degree 0 mass 1
//! point 0 2 1             # a b multiplicity
//! rep 0 2 1               # optional representative vector at (0, 2)
//! ortho 0 2 1             # optional orthogonal basis vector at (0, 2)
//! degree 1 mass 1
//! point 2 0 1
//! ```

use std::collections::BTreeMap;
use std::fmt::{Display, Write};

use super::InputError;
use crate::config::{to_polynomial, Configuration, PlanePoint};
use crate::linalg::FieldSpec;
use crate::persistence::{OrthoConfiguration, VectorConfiguration};
use crate::value::{format_value, parse_value, Value};

/// One degree's worth of output.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DegreeSection {
    pub degree: usize,
    pub delta: Configuration,
    /// Representative vectors per support point, already rendered.
    pub reps: BTreeMap<PlanePoint, Vec<Vec<String>>>,
    pub ortho: BTreeMap<PlanePoint, Vec<Vec<String>>>,
}

fn render<E: Display>(vs: &[Vec<E>]) -> Vec<Vec<String>> {
    vs.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect()
}

impl DegreeSection {
    pub fn new(degree: usize, delta: Configuration) -> Self {
        DegreeSection {
            degree,
            delta,
            ..Default::default()
        }
    }

    pub fn with_reps<E: Display + Clone>(mut self, reps: &VectorConfiguration<E>) -> Self {
        self.reps = reps.entries.iter().map(|(p, vs)| (p.clone(), render(vs))).collect();
        self
    }

    pub fn with_ortho(mut self, ortho: &OrthoConfiguration) -> Self {
        self.ortho = ortho
            .entries
            .iter()
            .map(|(p, s)| (p.clone(), render(&s.vectors())))
            .collect();
        self
    }
}

fn point_coords(p: &PlanePoint) -> String {
    format!("{} {}", format_value(&p.a), format_value(&p.b))
}

pub fn write_config_document(field: &FieldSpec, sections: &[DegreeSection]) -> String {
    let mut out = String::new();
    writeln!(out, "field {}", field_token(field)).unwrap();
    for s in sections {
        writeln!(out, "degree {} mass {}", s.degree, s.delta.total_mass()).unwrap();
        for (p, m) in s.delta.iter() {
            writeln!(out, "point {} {}", point_coords(p), m).unwrap();
            for (tag, map) in [("rep", &s.reps), ("ortho", &s.ortho)] {
                for v in map.get(p).into_iter().flatten() {
                    writeln!(out, "{tag} {} {}", point_coords(p), v.join(" ")).unwrap();
                }
            }
        }
    }
    out
}

fn field_token(field: &FieldSpec) -> String {
    match field {
        FieldSpec::Rationals => "Q".to_string(),
        FieldSpec::Prime(p) => format!("GF {p}"),
    }
}

/// Parsed configuration document. Representative lines are checked for
/// syntax and otherwise ignored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigDocument {
    pub field: Option<FieldSpec>,
    pub degrees: BTreeMap<usize, Configuration>,
}

pub fn parse_config_document(text: &str) -> Result<ConfigDocument, InputError> {
    let syntax = |line: usize, msg: String| InputError::Syntax { line, msg };
    let mut doc = ConfigDocument::default();
    let mut current: Option<(usize, usize, usize)> = None; // degree, declared mass, line
    let close = |doc: &ConfigDocument, cur: Option<(usize, usize, usize)>| -> Result<(), InputError> {
        if let Some((r, mass, line)) = cur {
            let got = doc.degrees.get(&r).map_or(0, |c| c.total_mass());
            if got != mass {
                return Err(syntax(line, format!("degree {r} declares mass {mass} but its points sum to {got}")));
            }
        }
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let value = |t: &str| parse_value(t).map_err(|e| syntax(line, e.to_string()));
        let count = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| syntax(line, format!("expected a nonnegative integer, got {t:?}")))
        };
        match toks.as_slice() {
            ["field", "Q"] => doc.field = Some(FieldSpec::Rationals),
            ["field", "GF", p] => {
                let p: u64 = p.parse().map_err(|_| syntax(line, format!("bad characteristic {p:?}")))?;
                doc.field = Some(FieldSpec::prime(p).map_err(|_| InputError::NotPrime { line, p })?);
            }
            ["degree", r, "mass", m] => {
                close(&doc, current)?;
                let r = count(r)?;
                if doc.degrees.contains_key(&r) {
                    return Err(syntax(line, format!("degree {r} appears twice")));
                }
                doc.degrees.insert(r, Configuration::new());
                current = Some((r, count(m)?, line));
            }
            ["point", a, b, m] => {
                let (r, _, _) = current.ok_or_else(|| syntax(line, "point before any degree line".into()))?;
                let p = PlanePoint::new(value(a)?, value(b)?);
                doc.degrees.get_mut(&r).unwrap().add(p, count(m)?);
            }
            ["rep" | "ortho", a, b, rest @ ..] => {
                value(a)?;
                value(b)?;
                for t in rest {
                    value(t)?;
                }
            }
            _ => return Err(syntax(line, format!("unrecognized line {content:?}"))),
        }
    }
    close(&doc, current)?;
    Ok(doc)
}

/// `coeff k re im` lines, constant term first, for each degree's monic
/// polynomial with roots `a + i b`.
pub fn write_polynomial_document(field: &FieldSpec, sections: &[(usize, &Configuration)]) -> String {
    let mut out = String::new();
    writeln!(out, "field {}", field_token(field)).unwrap();
    for (r, c) in sections {
        let poly = to_polynomial(c);
        writeln!(out, "degree {r} poly_degree {}", poly.degree()).unwrap();
        for (k, z) in poly.coefficients().iter().enumerate() {
            writeln!(out, "coeff {k} {} {}", format_value(&z.re), format_value(&z.im)).unwrap();
        }
    }
    out
}

/// Reads `(degree, [(re, im)])` back out of a polynomial document.
pub fn parse_polynomial_document(text: &str) -> Result<BTreeMap<usize, Vec<(Value, Value)>>, InputError> {
    let mut out: BTreeMap<usize, Vec<(Value, Value)>> = BTreeMap::new();
    let mut current = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let syntax = |msg: String| InputError::Syntax { line, msg };
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.as_slice() {
            [] | ["field", ..] => {}
            ["degree", r, "poly_degree", _] => {
                let r: usize = r.parse().map_err(|_| syntax(format!("bad degree {r:?}")))?;
                out.insert(r, Vec::new());
                current = Some(r);
            }
            ["coeff", _, re, im] => {
                let r = current.ok_or_else(|| syntax("coefficient before any degree".into()))?;
                let re = parse_value(re).map_err(|e| syntax(e.to_string()))?;
                let im = parse_value(im).map_err(|e| syntax(e.to_string()))?;
                out.get_mut(&r).unwrap().push((re, im));
            }
            _ => return Err(syntax(format!("unrecognized line {raw:?}"))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{int, ratio};

    fn circle_sections() -> Vec<DegreeSection> {
        let c0: Configuration = [(PlanePoint::new(int(0), int(2)), 1)].into_iter().collect();
        let c1: Configuration = [(PlanePoint::new(int(2), int(0)), 1)].into_iter().collect();
        vec![DegreeSection::new(0, c0), DegreeSection::new(1, c1)]
    }

    #[test]
    fn circle_document() {
        let text = write_config_document(&FieldSpec::Rationals, &circle_sections());
        assert_eq!(
            text,
            "field Q\ndegree 0 mass 1\npoint 0 2 1\ndegree 1 mass 1\npoint 2 0 1\n"
        );
        let doc = parse_config_document(&text).unwrap();
        assert_eq!(doc.field, Some(FieldSpec::Rationals));
        assert_eq!(doc.degrees[&0], circle_sections()[0].delta);
        assert_eq!(doc.degrees[&1], circle_sections()[1].delta);
    }

    #[test]
    fn rational_round_trip_with_reps() {
        let p = PlanePoint::new(ratio(1, 3), ratio(-5, 2));
        let c: Configuration = [(p.clone(), 2)].into_iter().collect();
        let mut s = DegreeSection::new(1, c.clone());
        s.reps.insert(p, vec![vec!["1".into(), "-1/2".into()], vec!["0".into(), "1".into()]]);
        let text = write_config_document(&FieldSpec::Prime(5), &[s]);
        assert!(text.contains("point 1/3 -5/2 2\nrep 1/3 -5/2 1 -1/2\n"));
        let doc = parse_config_document(&text).unwrap();
        assert_eq!(doc.field, Some(FieldSpec::Prime(5)));
        assert_eq!(doc.degrees[&1], c);
    }

    #[test]
    fn bad_documents() {
        assert!(matches!(
            parse_config_document("point 0 1 1\n"),
            Err(InputError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_config_document("degree 0 mass 2\npoint 0 1 1\n"),
            Err(InputError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_config_document("field GF 6\n"),
            Err(InputError::NotPrime { line: 1, p: 6 })
        ));
    }

    #[test]
    fn polynomial_document() {
        let sections = circle_sections();
        let text = write_polynomial_document(
            &FieldSpec::Rationals,
            &[(0, &sections[0].delta), (1, &sections[1].delta)],
        );
        // z - 2i and z - 2
        assert_eq!(
            text,
            "field Q\ndegree 0 poly_degree 1\ncoeff 0 0 -2\ncoeff 1 1 0\n\
             degree 1 poly_degree 1\ncoeff 0 -2 0\ncoeff 1 1 0\n"
        );
        let back = parse_polynomial_document(&text).unwrap();
        assert_eq!(back[&1], vec![(int(-2), int(0)), (int(1), int(0))]);
    }
}
