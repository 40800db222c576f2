//! The datum document format: a JSON object with explicit integer arrays.
//!
//! ```text
//! {
//!   "rank": 2,
//!   "roots": [
//!     [-2, 1],
//!     ...
//!   ],
//!   "coroots": [...],
//!   "pairing": [...],          optional, row-major, default identity
//!   "base": [...],             optional, simple roots as vectors
//!   "char_is_two": false,      optional
//!   "actions": [
//!     {
//!       "name": "flip",
//!       "role": "gamma",       or "galois"
//!       "group": "cyclic:2",   or "closure", or {"elements": [...], "table": [...]}
//!       "generators": [
//!         {"element": "g", "matrix": [[0, 1], [1, 0]]}
//!       ]
//!     }
//!   ]
//! }
//! ```

use std::fmt::{self, Write as _};

use serde::Deserialize;

use crate::action::{make_action, ActionGroup, DatumAction, FiniteGroup, Generator};
use crate::error::Error;
use crate::mat::Mat;
use crate::rootdatum::{BasedRootDatum, RootDatum};

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumDocument {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    #[serde(default)]
    pub pairing: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub base: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub char_is_two: Option<bool>,
    #[serde(default)]
    pub actions: Vec<ActionBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionBlock {
    pub name: String,
    pub role: Role,
    pub group: GroupSpec,
    pub generators: Vec<GeneratorBlock>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Gamma,
    Galois,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Gamma => "gamma",
            Role::Galois => "galois",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    /// `"cyclic:n"` or `"closure"`.
    Named(String),
    Table {
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorBlock {
    pub element: String,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocumentErrorKind {
    /// Malformed text or schema.
    Syntax,
    /// Well-formed, but an object fails its invariants.
    Invariant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocumentError {
    pub kind: DocumentErrorKind,
    pub line: Option<usize>,
    pub field: String,
    pub message: String,
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        write!(f, "field `{}`: {}", self.field, self.message)
    }
}

impl std::error::Error for DocumentError {}

/// An action block after validation.
#[derive(Clone, Debug)]
pub struct NamedAction {
    pub name: String,
    pub role: Role,
    pub action: DatumAction,
}

/// A parsed document with every object constructed and validated.
#[derive(Clone, Debug)]
pub struct LoadedDocument {
    pub document: DatumDocument,
    pub datum: RootDatum,
    pub based: Option<BasedRootDatum>,
    pub actions: Vec<NamedAction>,
}

impl LoadedDocument {
    pub fn action(&self, role: Role) -> Option<&NamedAction> {
        self.actions.iter().find(|a| a.role == role)
    }

    pub fn base(&self) -> Option<&[usize]> {
        self.based.as_ref().map(BasedRootDatum::base)
    }
}

/// Line of the `nth` occurrence of `"key"`, 1-based.
fn line_of(text: &str, key: &str, nth: usize) -> Option<usize> {
    let needle = format!("\"{key}\"");
    text.lines()
        .enumerate()
        .flat_map(|(i, l)| std::iter::repeat_n(i + 1, l.matches(&needle).count()))
        .nth(nth)
}

pub fn parse_datum(text: &str) -> Result<LoadedDocument, DocumentError> {
    let document: DatumDocument = serde_json::from_str(text).map_err(|e| DocumentError {
        kind: DocumentErrorKind::Syntax,
        line: Some(e.line()),
        field: "(document)".into(),
        message: e.to_string(),
    })?;
    let invariant = |key: &str, nth: usize, field: String, message: String| DocumentError {
        kind: DocumentErrorKind::Invariant,
        line: line_of(text, key, nth),
        field,
        message,
    };
    let syntax = |key: &str, nth: usize, field: String, message: String| DocumentError {
        kind: DocumentErrorKind::Syntax,
        line: line_of(text, key, nth),
        field,
        message,
    };
    let n = document.rank;

    let pairing = match &document.pairing {
        None => None,
        Some(rows) => Some(
            Mat::from_rows(rows, n)
                .filter(|m| m.rows() == n)
                .ok_or_else(|| syntax("pairing", 0, "pairing".into(), format!("expected a {n}×{n} matrix")))?,
        ),
    };
    let datum = RootDatum::with_pairing(n, document.roots.clone(), document.coroots.clone(), pairing)
        .map_err(|e| syntax("roots", 0, "roots".into(), e.to_string()))?;
    let report = datum.verify_axioms();
    if let Some(v) = report.violations.first() {
        return Err(invariant("roots", 0, "roots".into(), v.to_string()));
    }

    let based = match &document.base {
        None => None,
        Some(vectors) => {
            let idx: Vec<usize> = vectors
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    datum
                        .find_root(v)
                        .ok_or_else(|| invariant("base", 0, format!("base[{k}]"), format!("{v:?} is not a root")))
                })
                .collect::<Result<_, _>>()?;
            Some(
                BasedRootDatum::new(datum.clone(), idx)
                    .map_err(|e| invariant("base", 0, "base".into(), e.to_string()))?,
            )
        }
    };

    let mut actions = Vec::new();
    for (k, block) in document.actions.iter().enumerate() {
        let field = |sub: &str| format!("actions[{k}]{sub}");
        if document.actions[..k].iter().any(|b| b.role == block.role) {
            return Err(syntax("role", k, field(".role"), format!("more than one {} action", block.role)));
        }
        let group = match &block.group {
            GroupSpec::Named(s) if s == "closure" => ActionGroup::Closure,
            GroupSpec::Named(s) => {
                let order = s
                    .strip_prefix("cyclic:")
                    .and_then(|m| m.parse::<usize>().ok())
                    .filter(|&m| m >= 1)
                    .ok_or_else(|| {
                        syntax("group", k, field(".group"), format!("expected \"cyclic:n\" or \"closure\", got {s:?}"))
                    })?;
                ActionGroup::Given(FiniteGroup::cyclic(order))
            }
            GroupSpec::Table { elements, table } => ActionGroup::Given(
                FiniteGroup::from_table(elements.clone(), table.clone())
                    .map_err(|e| invariant("group", k, field(".group"), e.to_string()))?,
            ),
        };
        let mut generators = Vec::new();
        for (j, g) in block.generators.iter().enumerate() {
            let m = Mat::from_rows(&g.matrix, n).filter(|m| m.rows() == n).ok_or_else(|| {
                syntax("generators", k, field(&format!(".generators[{j}].matrix")), format!("expected a {n}×{n} matrix"))
            })?;
            generators.push(Generator::new(m, g.element.clone()));
        }
        let base = match block.role {
            Role::Gamma => Some(based.as_ref().map(BasedRootDatum::base).ok_or_else(|| {
                invariant("role", k, field(".role"), "a gamma action requires a base".into())
            })?),
            Role::Galois => None,
        };
        let action = make_action(&datum, base, &generators, group).map_err(|e| {
            let message = match e {
                Error::NotAnAutomorphism => "generator does not permute the roots and coroots".to_string(),
                other => other.to_string(),
            };
            invariant("name", k, field(""), format!("action `{}`: {message}", block.name))
        })?;
        actions.push(NamedAction {
            name: block.name.clone(),
            role: block.role,
            action,
        });
    }
    Ok(LoadedDocument {
        document,
        datum,
        based,
        actions,
    })
}

fn vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn matrix_inline(rows: &[Vec<i64>]) -> String {
    let parts: Vec<String> = rows.iter().map(|r| vector(r)).collect();
    format!("[{}]", parts.join(", "))
}

fn vector_list(out: &mut String, indent: &str, vs: &[Vec<i64>]) {
    if vs.is_empty() {
        out.push_str("[]");
        return;
    }
    out.push_str("[\n");
    for (i, v) in vs.iter().enumerate() {
        let sep = if i + 1 < vs.len() { "," } else { "" };
        let _ = writeln!(out, "{indent}  {}{sep}", vector(v));
    }
    let _ = write!(out, "{indent}]");
}

fn string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// The canonical text of a document. `parse_datum(emit(d))` yields `d`.
pub fn emit(doc: &DatumDocument) -> String {
    let mut fields: Vec<String> = Vec::new();
    fields.push(format!("  \"rank\": {}", doc.rank));
    for (key, vs) in [("roots", &doc.roots), ("coroots", &doc.coroots)] {
        let mut s = format!("  \"{key}\": ");
        vector_list(&mut s, "  ", vs);
        fields.push(s);
    }
    for (key, vs) in [("pairing", &doc.pairing), ("base", &doc.base)] {
        if let Some(vs) = vs {
            let mut s = format!("  \"{key}\": ");
            vector_list(&mut s, "  ", vs);
            fields.push(s);
        }
    }
    if let Some(b) = doc.char_is_two {
        fields.push(format!("  \"char_is_two\": {b}"));
    }
    if !doc.actions.is_empty() {
        let blocks: Vec<String> = doc.actions.iter().map(emit_action).collect();
        fields.push(format!("  \"actions\": [\n{}\n  ]", blocks.join(",\n")));
    }
    format!("{{\n{}\n}}\n", fields.join(",\n"))
}

fn emit_action(a: &ActionBlock) -> String {
    let group = match &a.group {
        GroupSpec::Named(s) => string(s),
        GroupSpec::Table { elements, table } => {
            let names: Vec<String> = elements.iter().map(|e| string(e)).collect();
            let rows: Vec<Vec<i64>> = table.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
            let mut t = String::new();
            vector_list(&mut t, "        ", &rows);
            format!("{{\n        \"elements\": [{}],\n        \"table\": {t}\n      }}", names.join(", "))
        }
    };
    let gens: Vec<String> = a
        .generators
        .iter()
        .map(|g| {
            format!(
                "        {{\"element\": {}, \"matrix\": {}}}",
                string(&g.element),
                matrix_inline(&g.matrix)
            )
        })
        .collect();
    let gens = if gens.is_empty() {
        "[]".to_string()
    } else {
        format!("[\n{}\n      ]", gens.join(",\n"))
    };
    format!(
        "    {{\n      \"name\": {},\n      \"role\": \"{}\",\n      \"group\": {group},\n      \"generators\": {gens}\n    }}",
        string(&a.name),
        a.role
    )
}

/// A document for a datum, with an optional base given by root indices.
pub fn document_for(datum: &RootDatum, base: Option<&[usize]>) -> DatumDocument {
    DatumDocument {
        rank: datum.rank(),
        roots: datum.roots().to_vec(),
        coroots: datum.coroots().to_vec(),
        pairing: datum.pairing_matrix().map(Mat::to_rows),
        base: base.map(|b| b.iter().map(|&i| datum.root(i).to_vec()).collect()),
        char_is_two: None,
        actions: Vec::new(),
    }
}
