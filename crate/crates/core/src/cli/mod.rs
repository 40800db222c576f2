//! Command-line front end.

pub mod document;
mod selftest;

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::action::DatumAction;
use crate::error::Error;
use crate::folding::{positive_system_correspondence, restrict, weyl_descent_iso, RestrictedDatum};
use crate::mat::Mat;
use crate::rootdatum::{classify, weyl_order_of, DatumAutomorphism, MatrixGroup, RootDatum};
use crate::twist::{aut_gamma, equivariant_isomorphic, h1_classes, star_action, z1_enumerate, CohomologyClassSet, Z1_BOUND};

pub use document::{
    document_for, emit, matrix_inline, parse_datum, ActionBlock, DatumDocument, DocumentError, DocumentErrorKind,
    GeneratorBlock, GroupSpec, LoadedDocument, NamedAction, Role,
};
pub use selftest::selftest_report;

#[derive(Debug, Parser)]
#[command(name = "rootfold", version, about = "Folding, restriction and twisting of root data")]
pub struct Cli {
    /// Run the built-in folding-table and H¹ suites.
    #[arg(long)]
    pub selftest: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the datum, base and actions of a document.
    Verify { file: PathBuf },
    /// Restrict along the gamma action and report the restricted datum.
    Fold {
        file: PathBuf,
        /// Keep nonmultipliable rather than nondivisible restricted roots.
        #[arg(long = "char-two")]
        char_two: bool,
        /// Write the restricted datum as a document.
        #[arg(long = "emit-restricted", value_name = "FILE")]
        emit_restricted: Option<PathBuf>,
    },
    /// Identify the irreducible components.
    Classify { file: PathBuf },
    /// Weyl group order, and the order of W^Γ for a gamma action.
    Weyl { file: PathBuf },
    /// The star action and cocycle of the galois action.
    Star { file: PathBuf },
    /// Nonabelian H¹ of the galois action.
    H1 {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "weyl-fixed")]
        module: H1Module,
        /// Cobound by Aut_Γ, giving the image of H¹(G, W^Γ) in H¹(G, Aut_Γ).
        #[arg(long)]
        image: bool,
    },
    /// Search for an equivariant isomorphism between two documents.
    Isoclass { a: PathBuf, b: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum H1Module {
    WeylFixed,
    AutGamma,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Document(DocumentError),
    Computation(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Document(e) => e.fmt(f),
            CliError::Computation(e) => e.fmt(f),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Computation(e)
    }
}

impl CliError {
    /// 1 for failed verification, 2 for anything the user must fix first.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Document(e) if e.kind == DocumentErrorKind::Invariant => 1,
            CliError::Computation(_) => 1,
            _ => 2,
        }
    }
}

/// A finished command: its report and whether everything checked passed.
pub struct Outcome {
    pub report: String,
    pub passed: bool,
}

/// Parses arguments and runs, writing the report to `out` and errors to
/// `err`. Returns the exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match run(&cli) {
        Ok(o) => {
            let _ = out.write_all(o.report.as_bytes());
            i32::from(!o.passed)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match (&cli.command, cli.selftest) {
        (None, true) => {
            let (report, passed) = selftest_report();
            Ok(Outcome { report, passed })
        }
        (Some(_), true) => Err(CliError::Usage("--selftest takes no command".into())),
        (None, false) => Err(CliError::Usage("a command is required; see --help".into())),
        (Some(cmd), false) => match cmd {
            Command::Verify { file } => verify(file),
            Command::Fold {
                file,
                char_two,
                emit_restricted,
            } => fold(file, *char_two, emit_restricted.as_deref()),
            Command::Classify { file } => {
                let doc = load(file)?;
                Ok(pass(format!("type: {}\n", type_label(&doc.datum)?)))
            }
            Command::Weyl { file } => weyl(file),
            Command::Star { file } => star(file),
            Command::H1 { file, module, image } => h1(file, *module, *image),
            Command::Isoclass { a, b } => isoclass(a, b),
        },
    }
}

fn pass(report: String) -> Outcome {
    Outcome { report, passed: true }
}

pub fn load(path: &Path) -> Result<LoadedDocument, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_datum(&text).map_err(CliError::Document)
}

/// Components joined by `" x "`, e.g. `"A1 x A1"`; `"torus"` without roots.
pub fn type_label(datum: &RootDatum) -> Result<String, Error> {
    let parts: Vec<String> = classify(datum)?
        .into_iter()
        .flat_map(|(l, m)| std::iter::repeat_n(l, m))
        .collect();
    Ok(if parts.is_empty() {
        "torus".into()
    } else {
        parts.join(" x ")
    })
}

fn mat_text(m: &Mat) -> String {
    matrix_inline(&m.to_rows())
}

fn require_base(doc: &LoadedDocument) -> Result<&[usize], CliError> {
    doc.base()
        .ok_or_else(|| CliError::Usage("this command needs a document with a base".into()))
}

fn gamma_action(doc: &LoadedDocument) -> Result<DatumAction, CliError> {
    let base = require_base(doc)?;
    Ok(doc
        .action(Role::Gamma)
        .map_or_else(|| DatumAction::trivial(&doc.datum, Some(base)), |a| a.action.clone()))
}

fn galois_action(doc: &LoadedDocument) -> Result<&NamedAction, CliError> {
    doc.action(Role::Galois)
        .ok_or_else(|| CliError::Usage("this command needs a galois action".into()))
}

fn verify(file: &Path) -> Result<Outcome, CliError> {
    let doc = load(file)?;
    let mut r = String::new();
    let _ = writeln!(r, "datum: pass (rank {}, {} roots)", doc.datum.rank(), doc.datum.num_roots());
    if let Some(b) = &doc.based {
        let _ = writeln!(r, "base: pass ({} simple roots)", b.base().len());
    }
    for a in &doc.actions {
        let _ = writeln!(
            r,
            "action {} ({}, order {}): pass",
            a.name,
            a.role,
            a.action.group().order()
        );
    }
    r.push_str("status: pass\n");
    Ok(pass(r))
}

/// The headline numbers of a fold.
pub struct FoldSummary {
    pub source_type: String,
    pub restricted_type: String,
    pub rank: usize,
    pub num_roots: usize,
    pub reduced: bool,
    pub restricted_weyl: usize,
    pub fixed_weyl: usize,
    pub invariant_systems: Option<usize>,
}

pub fn summarize_fold(r: &RestrictedDatum, positive_systems: bool) -> Result<FoldSummary, Error> {
    let descent = weyl_descent_iso(r)?;
    let invariant_systems = if positive_systems {
        Some(positive_system_correspondence(r)?.invariant_systems.len())
    } else {
        None
    };
    Ok(FoldSummary {
        source_type: type_label(r.source().datum())?,
        restricted_type: type_label(r.datum())?,
        rank: r.datum().rank(),
        num_roots: r.datum().num_roots(),
        reduced: r.datum().is_reduced(),
        restricted_weyl: descent.restricted_weyl.order(),
        fixed_weyl: descent.fixed_weyl.order(),
        invariant_systems,
    })
}

fn fold(file: &Path, char_two: bool, emit_restricted: Option<&Path>) -> Result<Outcome, CliError> {
    let doc = load(file)?;
    let gamma = gamma_action(&doc)?;
    let galois = doc.action(Role::Galois);
    let commuting: Vec<DatumAction> = galois.iter().map(|a| a.action.clone()).collect();
    let r = restrict(&gamma, &commuting)?;
    let s = summarize_fold(&r, true)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Φ̄ type {}, |Φ̄| = {}, reduced = {}, |W̄| = |W^Γ| = {}",
        s.restricted_type, s.num_roots, s.reduced, s.restricted_weyl
    );
    let _ = writeln!(out, "source type: {}", s.source_type);
    let _ = writeln!(out, "restricted rank: {}", s.rank);
    let based = r.based();
    let base: Vec<Vec<i64>> = based.base().iter().map(|&i| r.datum().root(i).to_vec()).collect();
    let _ = writeln!(out, "restricted base: {}", matrix_inline(&base));
    let _ = writeln!(out, "restricted pairing: {}", mat_text(&r.coinvariants().pairing_small()));
    let _ = writeln!(out, "Weyl descent isomorphism: verified");
    if let Some(n) = s.invariant_systems {
        let _ = writeln!(out, "positive systems: {n} Γ-invariant ↔ {n} restricted");
    }
    let char_is_two = if char_two { Some(true) } else { doc.document.char_is_two };
    match char_is_two {
        Some(c) => {
            let sub = r.reduced_subdatum(c);
            let which = if c { "nonmultipliable" } else { "nondivisible" };
            let _ = writeln!(
                out,
                "reduced subdatum ({which}): {}, {} roots",
                type_label(&sub)?,
                sub.num_roots()
            );
        }
        None => out.push_str("reduced subdatum: characteristic not specified\n"),
    }
    if let Some(path) = emit_restricted {
        let mut rd = document_for(r.datum(), Some(based.base()));
        rd.char_is_two = doc.document.char_is_two;
        if let (Some(g), Some(induced)) = (galois, r.induced_actions().first()) {
            let block = doc
                .document
                .actions
                .iter()
                .find(|b| b.role == Role::Galois)
                .expect("galois block present");
            let generators = block
                .generators
                .iter()
                .map(|gb| {
                    let e = g.action.group().find(&gb.element).expect("validated label");
                    GeneratorBlock {
                        element: gb.element.clone(),
                        matrix: induced.image(e).chars.to_rows(),
                    }
                })
                .collect();
            let group = match &block.group {
                GroupSpec::Named(n) if n == "closure" => GroupSpec::Table {
                    elements: g.action.group().names().to_vec(),
                    table: g.action.group().table().to_vec(),
                },
                other => other.clone(),
            };
            rd.actions.push(ActionBlock {
                name: block.name.clone(),
                role: Role::Galois,
                group,
                generators,
            });
        }
        std::fs::write(path, emit(&rd)).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        let _ = writeln!(out, "restricted datum written to {}", path.display());
    }
    out.push_str("status: pass\n");
    Ok(pass(out))
}

fn weyl(file: &Path) -> Result<Outcome, CliError> {
    let doc = load(file)?;
    let mut out = String::new();
    match weyl_order_of(&doc.datum) {
        Some(o) => {
            let _ = writeln!(out, "|W| = {o}");
        }
        None => {
            let _ = writeln!(out, "|W| = {}", doc.datum.weyl_group()?.order());
        }
    }
    if let Some(g) = doc.action(Role::Gamma) {
        let fixed = g.action.fixed_weyl()?;
        let _ = writeln!(out, "|W^Γ| = {} (action {})", fixed.order(), g.name);
    }
    Ok(pass(out))
}

fn star(file: &Path) -> Result<Outcome, CliError> {
    let doc = load(file)?;
    let base = require_base(&doc)?;
    let galois = galois_action(&doc)?;
    let (starred, c) = star_action(&galois.action, base)?;
    let group = starred.group();
    let mut out = String::new();
    let _ = writeln!(out, "action {}: order {}", galois.name, group.order());
    for s in 0..group.order() {
        let _ = writeln!(
            out,
            "{}: c = {}, star = {}",
            group.name(s),
            mat_text(&c.value(s).chars),
            mat_text(&starred.image(s).chars)
        );
    }
    let _ = writeln!(out, "cocycle law: verified on {} pairs", group.order() * group.order());
    let _ = writeln!(out, "cocycle trivial: {}", c.is_trivial());
    Ok(pass(out))
}

fn describe_classes(out: &mut String, group_names: &[String], set: &CohomologyClassSet) {
    let _ = writeln!(out, "cocycles: {}", set.cocycles.len());
    let _ = writeln!(out, "classes: {}", set.num_classes());
    for (k, members) in set.classes().iter().enumerate() {
        let rep = &set.cocycles[set.representatives[k]];
        let values: Vec<String> = group_names
            .iter()
            .zip(&rep.values)
            .map(|(n, v)| format!("{n} ↦ {}", mat_text(&v.chars)))
            .collect();
        let _ = writeln!(
            out,
            "class {}: {} cocycle(s); representative {}",
            k + 1,
            members.len(),
            values.join(", ")
        );
    }
}

fn h1(file: &Path, module: H1Module, image: bool) -> Result<Outcome, CliError> {
    let doc = load(file)?;
    let base = require_base(&doc)?;
    let gamma = gamma_action(&doc)?;
    let galois = galois_action(&doc)?;
    if !galois.action.commutes_with(&gamma) {
        return Err(Error::CommutationViolated.into());
    }
    let (starred, _) = star_action(&galois.action, base)?;
    let fixed = gamma.fixed_weyl()?;
    let aut = aut_gamma(&gamma)?;
    let (coefficients, coeff_name): (&MatrixGroup, &str) = match module {
        H1Module::WeylFixed => (&fixed, "W^Γ"),
        H1Module::AutGamma => (&aut, "Aut_Γ"),
    };
    let (cobounding, cobound_name) = if image { (&aut, "Aut_Γ") } else { (coefficients, coeff_name) };
    let z1 = z1_enumerate(starred.group(), starred.images(), coefficients, Z1_BOUND)?;
    let classes = h1_classes(&z1, cobounding)?;
    let mut out = String::new();
    let _ = writeln!(out, "galois action {}: order {}", galois.name, starred.group().order());
    let _ = writeln!(out, "coefficients: {coeff_name} (order {})", coefficients.order());
    let _ = writeln!(out, "cobounding: {cobound_name} (order {})", cobounding.order());
    describe_classes(&mut out, starred.group().names(), &classes);
    Ok(pass(out))
}

fn isoclass(a: &Path, b: &Path) -> Result<Outcome, CliError> {
    let da = load(a)?;
    let db = load(b)?;
    let mut sa: Vec<&DatumAction> = Vec::new();
    let mut sb: Vec<&DatumAction> = Vec::new();
    for role in [Role::Gamma, Role::Galois] {
        match (da.action(role), db.action(role)) {
            (Some(x), Some(y)) => {
                sa.push(&x.action);
                sb.push(&y.action);
            }
            (None, None) => {}
            _ => return Err(CliError::Usage(format!("only one document has a {role} action"))),
        }
    }
    let found: Option<DatumAutomorphism> = equivariant_isomorphic(&da.datum, &sa, &db.datum, &sb)?;
    Ok(pass(match found {
        Some(f) => format!("equivariantly isomorphic: yes\nmap: {}\n", mat_text(&f.chars)),
        None => "equivariantly isomorphic: no\n".to_string(),
    }))
}
