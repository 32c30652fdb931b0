//! `latnull`: command-line front end for the lattice nullnorm toolkit.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use latnull_core::{
    applicable_variants, axiom_reports, classify_uniqueness, construct_variant, decide_existence,
    emit_dot, emit_lattice_file, emit_op_table_csv, enumerate_idempotent_nullnorms_with,
    load_document, parse_op_table_csv, random_bounded_lattice, CharacterizationError,
    ConstructionError, ElementId, Execution, Lattice, LatticeDocument, LatticeError, LoadError,
    SearchSpace, Variant, ZeroPoint,
};

/// Fuzzing gives up after this many generated lattices.
const FUZZ_SEED_BUDGET: u64 = 1_000_000;

#[derive(Parser)]
#[command(name = "latnull", version, about = "Idempotent nullnorms on finite bounded lattices")]
struct Cli {
    /// Output file, or output directory for `enumerate`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Candidate space for the enumeration oracle.
    #[arg(long, global = true, default_value = "lemma")]
    search_space: SearchSpace,
    /// Zero element label, overriding the `zero` directive of the file.
    #[arg(long, global = true)]
    zero: Option<String>,
    /// Split the enumeration over threads.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file describes a bounded lattice.
    Validate { file: PathBuf },
    /// Summarize the lattice, the zero element and the existence conditions.
    Analyze { file: PathBuf },
    /// Decide whether an idempotent nullnorm with the given zero exists.
    Decide { file: PathBuf },
    /// Classify how many idempotent nullnorms exist.
    Classify { file: PathBuf },
    /// Build one of the six constructions as a CSV table.
    Construct {
        file: PathBuf,
        #[arg(long)]
        variant: Variant,
    },
    /// Run the five axiom checks on a CSV table.
    Verify {
        table: PathBuf,
        #[arg(long)]
        lattice: PathBuf,
    },
    /// List every idempotent nullnorm by exhaustive search.
    Enumerate { file: PathBuf },
    /// Write the Hasse diagram as DOT.
    ExportDot { file: PathBuf },
    /// Write a random bounded lattice file.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        size: usize,
    },
    /// Compare the existence decision against the oracle on random lattices.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 9)]
        max_size: usize,
    },
}

/// Exit status 1: the answer is a definite no.
const NEGATIVE: u8 = 1;
/// Exit status 2: bad usage or unreadable input.
const INPUT: u8 = 2;

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: INPUT, message: message.into() }
    }

    fn negative(message: impl Into<String>) -> Self {
        Failure { code: NEGATIVE, message: message.into() }
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        let code = match e {
            LatticeError::Cycle(_) | LatticeError::BadBounds { .. } | LatticeError::NotALattice { .. } => {
                NEGATIVE
            }
            _ => INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Parse(p) => Failure::input(p.to_string()),
            LoadError::Lattice(l) => l.into(),
        }
    }
}

impl From<CharacterizationError> for Failure {
    fn from(e: CharacterizationError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::PreconditionFailed { .. } => Failure::negative(e.to_string()),
            ConstructionError::WrongIaSize(_) => Failure::input(e.to_string()),
        }
    }
}

/// Standard output text plus exit status of a successful run.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

struct Loaded {
    doc: LatticeDocument,
    lattice: Lattice,
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let text = read(path)?;
    let (doc, lattice) = load_document(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })?;
    Ok(Loaded { doc, lattice })
}

impl Loaded {
    fn zero(&self, cli: &Cli) -> Result<ZeroPoint, Failure> {
        let label = cli
            .zero
            .as_deref()
            .or(self.doc.zero.as_deref())
            .ok_or_else(|| Failure::input("no zero element: add a `zero` directive or pass --zero"))?;
        Ok(ZeroPoint::from_label(&self.lattice, label)?)
    }

    fn labels(&self, ids: &[ElementId]) -> String {
        let names: Vec<&str> = ids.iter().map(|&x| self.lattice.label(x)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// Sends `text` to `--out` when given, otherwise into the report.
fn emit(cli: &Cli, text: String, what: &str) -> Result<String, Failure> {
    match &cli.out {
        Some(path) => {
            write(path, &text)?;
            Ok(format!("wrote {what} to {}\n", path.display()))
        }
        None => Ok(text),
    }
}

fn execution(cli: &Cli) -> Execution {
    if cli.parallel {
        Execution::Parallel
    } else {
        Execution::Serial
    }
}

fn validate(file: &Path) -> Result<Outcome, Failure> {
    let f = load(file)?;
    let l = &f.lattice;
    let mut out = String::new();
    writeln!(out, "lattice {}: {} elements, {} covers", f.doc.name, l.len(), l.covers().len()).unwrap();
    writeln!(out, "bottom {}, top {}", l.label(l.bottom()), l.label(l.top())).unwrap();
    writeln!(out, "distributive: {}", l.is_distributive()).unwrap();
    Ok(Outcome::ok(out))
}

fn verdict_lines(out: &mut String, f: &Loaded, a: ZeroPoint) -> Result<bool, Failure> {
    let v = decide_existence(&f.lattice, a)?;
    writeln!(out, "p = {}, q = {}", v.p_label, v.q_label).unwrap();
    for (name, c) in ["i", "ii", "iii", "iv"].iter().zip(&v.conditions) {
        let mark = if c.holds { "holds" } else { "fails" };
        writeln!(out, "  ({name}) {mark}: {}", c.detail).unwrap();
    }
    if v.exists {
        let via: Vec<String> = v.holding().iter().map(|n| format!("({n})")).collect();
        writeln!(out, "EXISTS via {}", via.join(",")).unwrap();
    } else {
        writeln!(out, "NOT EXISTS").unwrap();
    }
    Ok(v.exists)
}

fn analyze(cli: &Cli, file: &Path) -> Result<Outcome, Failure> {
    let f = load(file)?;
    let l = &f.lattice;
    let a = f.zero(cli)?;
    let ia = l.incomparables(a);
    let mut out = String::new();
    writeln!(out, "lattice {}", f.doc.name).unwrap();
    writeln!(out, "n = {}", l.len()).unwrap();
    writeln!(out, "bottom = {}, top = {}", l.label(l.bottom()), l.label(l.top())).unwrap();
    writeln!(out, "a = {}", l.label(a.id())).unwrap();
    writeln!(out, "I_a = {}", f.labels(&ia)).unwrap();
    if ia.len() == 2 {
        verdict_lines(&mut out, &f, a)?;
        let vs: Vec<String> = applicable_variants(l, a)?.iter().map(Variant::to_string).collect();
        writeln!(out, "applicable variants: {}", if vs.is_empty() { "none".into() } else { vs.join(", ") })
            .unwrap();
    } else {
        writeln!(out, "conditions need |I_a| = 2, found {}", ia.len()).unwrap();
    }
    Ok(Outcome::ok(out))
}

fn decide(cli: &Cli, file: &Path) -> Result<Outcome, Failure> {
    let f = load(file)?;
    let a = f.zero(cli)?;
    let mut text = String::new();
    let exists = verdict_lines(&mut text, &f, a)?;
    Ok(Outcome { text, code: if exists { 0 } else { NEGATIVE } })
}

fn classify(cli: &Cli, file: &Path) -> Result<Outcome, Failure> {
    let f = load(file)?;
    let c = classify_uniqueness(&f.lattice, f.zero(cli)?)?;
    let count = c.certified_count.map_or("not certified".to_string(), |k| k.to_string());
    Ok(Outcome::ok(format!("{}\ncount: {count}\n", c.kind)))
}

fn construct(cli: &Cli, file: &Path, variant: Variant) -> Result<Outcome, Failure> {
    let f = load(file)?;
    let t = construct_variant(&f.lattice, f.zero(cli)?, variant)?;
    Ok(Outcome::ok(emit(cli, emit_op_table_csv(&t), &format!("{variant} table"))?))
}

fn verify(cli: &Cli, table: &Path, lattice: &Path) -> Result<Outcome, Failure> {
    let f = load(lattice)?;
    let a = f.zero(cli)?;
    let t = parse_op_table_csv(&read(table)?, &f.lattice)
        .map_err(|e| Failure::input(format!("{}: {e}", table.display())))?;
    let mut out = String::new();
    let mut all = true;
    for r in axiom_reports(&t, a) {
        match &r.witness {
            None => writeln!(out, "PASS {}", r.axiom).unwrap(),
            Some(w) => {
                all = false;
                let labels = r.witness_labels(&f.lattice).unwrap_or_default().join(",");
                writeln!(out, "FAIL {} at ({labels}): {}", r.axiom, w.describe(&t)).unwrap();
            }
        }
    }
    writeln!(out, "{}", if all { "idempotent nullnorm" } else { "not an idempotent nullnorm" }).unwrap();
    Ok(Outcome { text: out, code: if all { 0 } else { NEGATIVE } })
}

fn enumerate(cli: &Cli, file: &Path) -> Result<Outcome, Failure> {
    let f = load(file)?;
    let tables = enumerate_idempotent_nullnorms_with(&f.lattice, f.zero(cli)?, cli.search_space, execution(cli))?;
    let mut out = String::new();
    match &cli.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
            for (k, t) in tables.iter().enumerate() {
                let path = dir.join(format!("{}_{}.csv", f.doc.name, k + 1));
                write(&path, &emit_op_table_csv(t))?;
                writeln!(out, "wrote {}", path.display()).unwrap();
            }
        }
        None => {
            for (k, t) in tables.iter().enumerate() {
                writeln!(out, "# table {}", k + 1).unwrap();
                out.push_str(&emit_op_table_csv(t));
            }
        }
    }
    writeln!(out, "{} idempotent nullnorms ({} search)", tables.len(), cli.search_space).unwrap();
    Ok(Outcome { text: out, code: if tables.is_empty() { NEGATIVE } else { 0 } })
}

fn export_dot(cli: &Cli, file: &Path) -> Result<Outcome, Failure> {
    let f = load(file)?;
    Ok(Outcome::ok(emit(cli, emit_dot(&f.lattice, &f.doc.name), "DOT graph")?))
}

/// First element (in id order) with exactly two incomparables, else the
/// first element that may serve as a zero at all.
fn pick_zero(l: &Lattice) -> Option<ElementId> {
    let zeros: Vec<ZeroPoint> = l.elements().filter_map(|x| ZeroPoint::new(l, x).ok()).collect();
    zeros
        .iter()
        .find(|&&a| l.incomparables(a).len() == 2)
        .or(zeros.first())
        .map(|a| a.id())
}

fn gen(cli: &Cli, seed: u64, size: usize) -> Result<Outcome, Failure> {
    let l = random_bounded_lattice(seed, size)?;
    let doc = LatticeDocument::from_lattice(&format!("R{seed}_{size}"), &l, pick_zero(&l));
    Ok(Outcome::ok(emit(cli, emit_lattice_file(&doc), "lattice")?))
}

fn fuzz(cli: &Cli, seed: u64, count: usize, max_size: usize) -> Result<Outcome, Failure> {
    if max_size < 5 {
        return Err(Failure::input("--max-size must be at least 5 for |I_a| = 2 to occur"));
    }
    let (mut checked, mut negatives) = (0usize, 0usize);
    let mut s = seed;
    while checked < count {
        if s - seed >= FUZZ_SEED_BUDGET {
            return Err(Failure::input(format!("only {checked} instances found in {FUZZ_SEED_BUDGET} lattices")));
        }
        let n = 5 + (s % (max_size as u64 - 4)) as usize;
        let l = random_bounded_lattice(s, n)?;
        for x in l.elements() {
            let Ok(a) = ZeroPoint::new(&l, x) else { continue };
            if checked == count || l.incomparables(a).len() != 2 {
                continue;
            }
            checked += 1;
            let exists = decide_existence(&l, a)?.exists;
            let tables = enumerate_idempotent_nullnorms_with(&l, a, cli.search_space, execution(cli))?;
            if !exists {
                negatives += 1;
            }
            if exists == tables.is_empty() {
                let mut out = String::new();
                writeln!(
                    out,
                    "DISCREPANCY at seed {s}, size {n}, zero {}: decision says {}, oracle found {} tables",
                    l.label(x),
                    if exists { "EXISTS" } else { "NOT EXISTS" },
                    tables.len()
                )
                .unwrap();
                let doc = LatticeDocument::from_lattice(&format!("R{s}_{n}"), &l, Some(x));
                out.push_str(&emit_lattice_file(&doc));
                for (k, t) in tables.iter().enumerate() {
                    writeln!(out, "# table {}", k + 1).unwrap();
                    out.push_str(&emit_op_table_csv(t));
                }
                return Ok(Outcome { text: out, code: NEGATIVE });
            }
        }
        s += 1;
    }
    Ok(Outcome::ok(format!(
        "checked {checked} instances from seeds {seed}..{s}: {} exist, {negatives} do not, 0 discrepancies\n",
        checked - negatives
    )))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Analyze { file } => analyze(cli, file),
        Command::Decide { file } => decide(cli, file),
        Command::Classify { file } => classify(cli, file),
        Command::Construct { file, variant } => construct(cli, file, *variant),
        Command::Verify { table, lattice } => verify(cli, table, lattice),
        Command::Enumerate { file } => enumerate(cli, file),
        Command::ExportDot { file } => export_dot(cli, file),
        Command::Gen { seed, size } => gen(cli, *seed, *size),
        Command::Fuzz { seed, count, max_size } => fuzz(cli, *seed, *count, *max_size),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            print!("{}", o.text);
            ExitCode::from(o.code)
        }
        Err(f) => {
            eprintln!("latnull: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
