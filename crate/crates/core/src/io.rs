//! The `.lat` text format, DOT export of Hasse diagrams and CSV export of
//! operation tables.
//!
//! A `.lat` file holds one directive per line; `#` starts a comment:
//!
//! ```text
//! lattice M3
//! elements 0 p a q 1
//! bottom 0
//! top 1
//! zero a
//! cover 0 p
//! cover 0 a
//! ```
//!
//! `cover x y` states that `x` is covered by `y`. `zero` is optional.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::axioms::OpTable;
use crate::constructions::PartialOpTable;
use crate::lattice::{CoverSpec, ElementId, Lattice};

/// Cell text for an undetermined skeleton cell. No label may equal it.
pub const UNDETERMINED: &str = "?";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate element `{label}`")]
    DuplicateElement { line: usize, label: String },
    #[error("line {line}: unknown label `{label}`")]
    UnknownLabel { line: usize, label: String },
    #[error("missing `{0}` directive")]
    MissingDirective(&'static str),
}

/// A parsed `.lat` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeDocument {
    pub name: String,
    pub spec: CoverSpec,
    pub zero: Option<String>,
}

impl LatticeDocument {
    /// Document describing `lattice` by its transitive reduction.
    pub fn from_lattice(name: &str, lattice: &Lattice, zero: Option<ElementId>) -> Self {
        LatticeDocument {
            name: name.to_string(),
            spec: lattice.to_cover_spec(),
            zero: zero.map(|z| lattice.label(z).to_string()),
        }
    }
}

fn valid_label(label: &str) -> bool {
    label != UNDETERMINED && !label.contains([',', '"', '#'])
}

pub fn parse_lattice_file(text: &str) -> Result<LatticeDocument, ParseError> {
    let mut name: Option<String> = None;
    let mut elements: Option<(usize, Vec<String>)> = None;
    let mut bottom: Option<(usize, String)> = None;
    let mut top: Option<(usize, String)> = None;
    let mut zero: Option<(usize, String)> = None;
    let mut covers: Vec<(usize, String, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let directive = tokens.next().unwrap();
        let args: Vec<&str> = tokens.collect();
        let syntax = |message: String| ParseError::Syntax { line, message };
        let single = |args: &[&str]| match args {
            [one] => Ok(one.to_string()),
            _ => Err(syntax(format!("`{directive}` takes exactly one argument"))),
        };
        let once = |seen: bool| {
            if seen {
                Err(syntax(format!("repeated `{directive}` directive")))
            } else {
                Ok(())
            }
        };
        match directive {
            "lattice" => {
                once(name.is_some())?;
                name = Some(single(&args)?);
            }
            "elements" => {
                once(elements.is_some())?;
                if args.is_empty() {
                    return Err(syntax("`elements` needs at least one label".into()));
                }
                let mut seen = HashSet::new();
                for &label in &args {
                    if !valid_label(label) {
                        return Err(syntax(format!("invalid element label `{label}`")));
                    }
                    if !seen.insert(label) {
                        return Err(ParseError::DuplicateElement {
                            line,
                            label: label.to_string(),
                        });
                    }
                }
                elements = Some((line, args.iter().map(|s| s.to_string()).collect()));
            }
            "bottom" => {
                once(bottom.is_some())?;
                bottom = Some((line, single(&args)?));
            }
            "top" => {
                once(top.is_some())?;
                top = Some((line, single(&args)?));
            }
            "zero" => {
                once(zero.is_some())?;
                zero = Some((line, single(&args)?));
            }
            "cover" => match args[..] {
                [lo, hi] if lo == hi => return Err(syntax(format!("self-cover `{lo} < {hi}`"))),
                [lo, hi] => covers.push((line, lo.to_string(), hi.to_string())),
                _ => return Err(syntax("`cover` takes exactly two labels".into())),
            },
            other => return Err(syntax(format!("unknown directive `{other}`"))),
        }
    }

    let name = name.ok_or(ParseError::MissingDirective("lattice"))?;
    let (_, names) = elements.ok_or(ParseError::MissingDirective("elements"))?;
    let (bottom_line, bottom) = bottom.ok_or(ParseError::MissingDirective("bottom"))?;
    let (top_line, top) = top.ok_or(ParseError::MissingDirective("top"))?;

    let known: HashSet<&str> = names.iter().map(String::as_str).collect();
    let check = |line: usize, label: &str| {
        if known.contains(label) {
            Ok(())
        } else {
            Err(ParseError::UnknownLabel {
                line,
                label: label.to_string(),
            })
        }
    };
    check(bottom_line, &bottom)?;
    check(top_line, &top)?;
    if let Some((line, z)) = &zero {
        check(*line, z)?;
        if *z == bottom || *z == top {
            return Err(ParseError::Syntax {
                line: *line,
                message: format!("zero element `{z}` must differ from bottom and top"),
            });
        }
    }
    for (line, lo, hi) in &covers {
        check(*line, lo)?;
        check(*line, hi)?;
    }

    Ok(LatticeDocument {
        name,
        spec: CoverSpec {
            names,
            covers: covers.into_iter().map(|(_, lo, hi)| (lo, hi)).collect(),
            bottom,
            top,
        },
        zero: zero.map(|(_, z)| z),
    })
}

/// Canonical text of a document; parsing it gives the document back.
pub fn emit_lattice_file(doc: &LatticeDocument) -> String {
    let mut out = String::new();
    writeln!(out, "lattice {}", doc.name).unwrap();
    writeln!(out, "elements {}", doc.spec.names.join(" ")).unwrap();
    writeln!(out, "bottom {}", doc.spec.bottom).unwrap();
    writeln!(out, "top {}", doc.spec.top).unwrap();
    if let Some(z) = &doc.zero {
        writeln!(out, "zero {z}").unwrap();
    }
    for (lo, hi) in &doc.spec.covers {
        writeln!(out, "cover {lo} {hi}").unwrap();
    }
    out
}

/// Hasse diagram as a DOT digraph, edges pointing from lower to upper
/// element, nodes and edges in id order.
pub fn emit_dot(lattice: &Lattice, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for x in lattice.elements() {
        writeln!(out, "  \"{}\";", lattice.label(x)).unwrap();
    }
    for (lo, hi) in lattice.covers() {
        writeln!(out, "  \"{}\" -> \"{}\";", lattice.label(lo), lattice.label(hi)).unwrap();
    }
    out.push_str("}\n");
    out
}

fn write_grid(lattice: &Lattice, cell: impl Fn(ElementId, ElementId) -> String) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let mut header = vec!["V".to_string()];
    header.extend(lattice.names().iter().cloned());
    w.write_record(&header).unwrap();
    for x in lattice.elements() {
        let mut row = vec![lattice.label(x).to_string()];
        row.extend(lattice.elements().map(|y| cell(x, y)));
        w.write_record(&row).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// Operation table as CSV: header row and first column carry element
/// labels, cell `(x, y)` holds the label of `V(x, y)`.
pub fn emit_op_table_csv(table: &OpTable<'_>) -> String {
    let l = table.lattice();
    write_grid(l, |x, y| l.label(table.get(x, y)).to_string())
}

/// Like [`emit_op_table_csv`], with open cells written as `?`.
pub fn emit_partial_table_csv(table: &PartialOpTable<'_>) -> String {
    let l = table.lattice();
    write_grid(l, |x, y| {
        table
            .get(x, y)
            .map_or(UNDETERMINED.to_string(), |v| l.label(v).to_string())
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableCsvError {
    #[error("malformed CSV: {0}")]
    Malformed(String),
    #[error("label `{0}` is not an element of the lattice")]
    UnknownLabel(String),
    #[error("header must list every element exactly once")]
    BadHeader,
    #[error("row for `{0}` is missing or repeated")]
    BadRows(String),
    #[error("cell ({row}, {col}) is undetermined")]
    Undetermined { row: String, col: String },
}

/// Reads a table written by [`emit_op_table_csv`]. Rows and columns may come
/// in any order but must cover every element exactly once.
pub fn parse_op_table_csv<'l>(text: &str, lattice: &'l Lattice) -> Result<OpTable<'l>, TableCsvError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    for r in reader.records() {
        records.push(r.map_err(|e| TableCsvError::Malformed(e.to_string()))?);
    }
    let (header, rows) = records
        .split_first()
        .ok_or_else(|| TableCsvError::Malformed("empty input".into()))?;
    let id = |label: &str| {
        lattice
            .id(label)
            .ok_or_else(|| TableCsvError::UnknownLabel(label.to_string()))
    };
    let columns: Vec<ElementId> = header.iter().skip(1).map(id).collect::<Result<_, _>>()?;
    let distinct: HashSet<_> = columns.iter().collect();
    if columns.len() != lattice.len() || distinct.len() != lattice.len() {
        return Err(TableCsvError::BadHeader);
    }

    let mut by_row: HashMap<ElementId, Vec<ElementId>> = HashMap::new();
    for record in rows {
        if record.len() != columns.len() + 1 {
            return Err(TableCsvError::Malformed(format!(
                "row has {} fields, expected {}",
                record.len(),
                columns.len() + 1
            )));
        }
        let row_label = &record[0];
        let x = id(row_label)?;
        let mut cells = vec![ElementId::new(0); lattice.len()];
        for (col, value) in columns.iter().zip(record.iter().skip(1)) {
            if value == UNDETERMINED {
                return Err(TableCsvError::Undetermined {
                    row: row_label.to_string(),
                    col: lattice.label(*col).to_string(),
                });
            }
            cells[col.index()] = id(value)?;
        }
        if by_row.insert(x, cells).is_some() {
            return Err(TableCsvError::BadRows(row_label.to_string()));
        }
    }
    let mut flat = Vec::with_capacity(lattice.len() * lattice.len());
    for x in lattice.elements() {
        let row = by_row
            .remove(&x)
            .ok_or_else(|| TableCsvError::BadRows(lattice.label(x).to_string()))?;
        flat.extend(row);
    }
    Ok(OpTable::from_cells(lattice, flat).expect("cells validated against the lattice"))
}
