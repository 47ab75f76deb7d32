//! The `dgcat` command line: document schema, reports and subcommands.
//!
//! Exit codes: 0 pass, 1 verified failure, 2 input error.

mod report;
pub mod schema;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::dgcore::{tensor, validate, DgCategory, ObjId};
use crate::exactlin::Field;
use crate::functors::{check_quasi_equiv, validate_functor, verify_serre, Verdict};
use crate::pretr::{
    cone, hom_complex, is_ho_iso, karoubi_hom, reduce, search_ho_iso, KaroubiObject, SearchConfig, SearchOutcome,
};
use crate::ptring::{
    ClassExpr, EqOutcome, Ledger, ProductMode, Provenance, RingError, TensorValue, DEFAULT_DEGREE_BOUND,
};
use crate::sodgen::{check_sod, ext_table, verify_generation};

pub use report::{graded_dims, OutputFormat, Report, Table, VerdictLine};
pub use schema::{Document, Kind, SchemaError};

#[derive(Parser, Debug)]
#[command(name = "dgcat", version, about = "Exact checks for finite DG categories, SOD claims and the ring of pretriangulated categories")]
pub struct Cli {
    /// Required field of every input document ("Q" or "Fp:<p>"); also the field of new ledgers.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Worker threads for verification obligations (default: available cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Degree bound for ring queries.
    #[arg(long, global = true)]
    pub degree_bound: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "md")]
    pub output: OutputFormat,
    /// Seed for randomized isomorphism search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the validator for the document's kind.
    Validate { path: PathBuf },
    /// Graded Ext table H^• Hom(a, b) of a category.
    Ext {
        path: PathBuf,
        /// Comma-separated object labels (default: all objects).
        #[arg(long, value_delimiter = ',')]
        objects: Option<Vec<String>>,
    },
    /// Check an SOD claim and print the audit trail.
    CheckSod { path: PathBuf },
    /// Query or extend a ledger.
    Ring {
        ledger: PathBuf,
        #[command(subcommand)]
        op: RingOp,
    },
    /// Tensor product of two categories.
    Tensor {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cone of a closed degree-0 twisted morphism.
    Cone {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gaussian elimination of a twisted complex.
    Reduce {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graded Hom between two Karoubi objects.
    Karoubi { left: PathBuf, right: PathBuf },
    /// Search for a homotopy equivalence between two twisted complexes over the same base.
    Iso { left: PathBuf, right: PathBuf },
    /// Check a quasi-equivalence certificate.
    CheckQe { path: PathBuf },
    /// Check Serre functor data.
    Serre { path: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum RingOp {
    /// Create an empty ledger.
    Init {
        /// Only geometric generators are allowed (the ring Γ).
        #[arg(long)]
        gamma: bool,
    },
    /// Register a generator, optionally with its category.
    Register {
        label: String,
        #[arg(long)]
        geometric: bool,
        #[arg(long)]
        category: Option<PathBuf>,
    },
    /// Add a relation `expr = 0` backed by a citation, or `[ambient] = Σ blocks` from an SOD claim
    /// whose blocks are all equivalent to the point.
    Relate {
        expr: Option<String>,
        #[arg(long)]
        cite: Option<String>,
        #[arg(long, requires = "ambient")]
        sod: Option<PathBuf>,
        #[arg(long)]
        ambient: Option<String>,
    },
    /// Add a product fact `[a]*[b] = value`.
    Fact {
        left: String,
        right: String,
        value: String,
        #[arg(long)]
        cite: Option<String>,
        /// The tensor category is the category of this generator.
        #[arg(long)]
        tensor_generator: Option<String>,
        /// An SOD claim on the tensor category whose blocks are all equivalent to the point.
        #[arg(long)]
        tensor_sod: Option<PathBuf>,
    },
    /// Decide `lhs = rhs` up to the degree bound and print the rows that prove it
    Eq { lhs: String, rhs: String },
    /// Check that `[line] - [pt]` acts as the identity on every generator.
    Measure {
        #[arg(long, default_value = "P1")]
        line: String,
    },
    /// Rank and torsion of the additive group up to the degree bound
    Invariants,
}

/// An input problem: unreadable file, malformed document, unknown label.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<Outcome, InputError>;

/// A report and possibly an output document.
pub struct Outcome {
    pub report: Report,
    pub document: Option<(Document, Option<PathBuf>)>,
}

impl Outcome {
    fn report(report: Report) -> Outcome {
        Outcome { report, document: None }
    }
}

struct Ctx {
    field: Option<Field>,
    degree_bound: Option<usize>,
    seed: u64,
}

impl Ctx {
    fn load(&self, path: &Path) -> Result<Document, InputError> {
        let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        let doc = Document::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        if let Some(f) = self.field {
            if doc.field()? != f {
                return Err(InputError(format!("{}: field {} but --field {f}", path.display(), doc.field)));
            }
        }
        Ok(doc)
    }
}

/// Runs the command line, writing reports and documents to `out` and errors to `err`.
pub fn run_with(args: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let args: Vec<String> = args.into_iter().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    let field = match cli.field.as_deref().map(str::parse::<Field>).transpose() {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let ctx = Ctx { field, degree_bound: cli.degree_bound, seed: cli.seed };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let start = Instant::now();
    let result = pool.install(|| dispatch(&ctx, &cli.command));
    match result {
        Ok(Outcome { mut report, document }) => {
            report.command = args.iter().skip(1).cloned().collect();
            report.timing_ms = start.elapsed().as_millis() as u64;
            let rendered = report.render(cli.output);
            match document {
                Some((doc, Some(path))) => {
                    if let Err(e) = write_atomic(&path, &doc.to_text()) {
                        let _ = writeln!(err, "error: {e}");
                        return 2;
                    }
                    let _ = write!(out, "{rendered}");
                }
                Some((doc, None)) => {
                    let _ = write!(out, "{}", doc.to_text());
                    let _ = write!(err, "{rendered}");
                }
                None => {
                    let _ = write!(out, "{rendered}");
                }
            }
            report.exit_code()
        }
        Err(InputError(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn main() -> i32 {
    run_with(std::env::args(), &mut std::io::stdout(), &mut std::io::stderr())
}

/// Writes to a temporary file in the same directory, then renames it over `path`.
pub fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

fn dispatch(ctx: &Ctx, cmd: &Command) -> CmdResult {
    match cmd {
        Command::Validate { path } => cmd_validate(&ctx.load(path)?),
        Command::Ext { path, objects } => cmd_ext(&ctx.load(path)?, objects.as_deref()),
        Command::CheckSod { path } => cmd_check_sod(&ctx.load(path)?),
        Command::Ring { ledger, op } => cmd_ring(ctx, ledger, op),
        Command::Tensor { left, right, out } => {
            let (c, d) = (schema::category_from(&ctx.load(left)?)?, schema::category_from(&ctx.load(right)?)?);
            let t = tensor(&c, &d)?;
            let mut report = Report::new(vec![]);
            let v = validate(&t);
            report.verdict("tensor category validates", v.is_valid(), v.violations.first().map(|x| x.to_string()).unwrap_or_default());
            report.note(format!("{} objects", t.num_objects()));
            Ok(Outcome { report, document: Some((schema::category_document(&t), out.clone())) })
        }
        Command::Cone { path, out } => {
            let f = schema::morphism_from(&ctx.load(path)?)?;
            let x = cone(&f)?;
            let mut report = Report::new(vec![]);
            report.verdict("cone is a twisted complex", x.maurer_cartan_defect().is_empty(), "");
            report.note(format!("{} terms", x.len()));
            Ok(Outcome { report, document: Some((schema::complex_document(&x), out.clone())) })
        }
        Command::Reduce { path, out } => {
            let x = schema::complex_from(&ctx.load(path)?)?;
            let (y, f) = reduce(&x)?;
            let mut report = Report::new(vec![]);
            report.verdict("reduction map is a homotopy equivalence", is_ho_iso(&f)?, "");
            report.note(format!("{} terms reduced to {}", x.len(), y.len()));
            Ok(Outcome { report, document: Some((schema::complex_document(&y), out.clone())) })
        }
        Command::Karoubi { left, right } => {
            let a = karoubi_input(&ctx.load(left)?)?;
            let b = karoubi_input(&ctx.load(right)?)?;
            let mut report = Report::new(vec![]);
            let (a, b) = match (a, b) {
                (Ok(a), Ok(b)) => (a, b),
                (a, b) => {
                    for (name, k) in [("left", a), ("right", b)] {
                        report.verdict(format!("{name} idempotent verifies"), k.is_ok(), k.err().unwrap_or_default());
                    }
                    return Ok(Outcome::report(report));
                }
            };
            let support: Vec<i64> = hom_complex(a.carrier(), b.carrier())?.support().collect();
            let mut cells = Vec::new();
            for &n in &support {
                cells.push(karoubi_hom(&a, &b, n)?.to_string());
            }
            report.tables.push(Table {
                title: "H^n Hom((X,e),(Y,f))".into(),
                rows: vec!["dim".into()],
                columns: support.iter().map(|n| n.to_string()).collect(),
                cells: vec![cells],
            });
            Ok(Outcome::report(report))
        }
        Command::Iso { left, right } => {
            let x = schema::complex_from(&ctx.load(left)?)?;
            let y = schema::complex_from(&ctx.load(right)?)?;
            let y = y.rebase(x.base().clone());
            let cfg = SearchConfig { seed: ctx.seed, ..SearchConfig::default() };
            let mut report = Report::new(vec![]);
            match search_ho_iso(&x, &y, &cfg)? {
                SearchOutcome::Found(f) => {
                    report.verdict("homotopy equivalence found", true, "");
                    Ok(Outcome { report, document: Some((schema::morphism_document(&f), None)) })
                }
                SearchOutcome::NotFound { tried, exhaustive } => {
                    let how = if exhaustive { "exhaustive" } else { "sampled; not a proof of non-equivalence" };
                    report.verdict("homotopy equivalence found", false, format!("{tried} candidates, {how}"));
                    Ok(Outcome::report(report))
                }
            }
        }
        Command::CheckQe { path } => {
            let cert = schema::equiv_from(&ctx.load(path)?)?;
            let mut report = Report::new(vec![]);
            push_verdict(&mut report, "quasi-equivalence", &check_quasi_equiv(&cert)?);
            Ok(Outcome::report(report))
        }
        Command::Serre { path } => {
            let data = schema::serre_from(&ctx.load(path)?)?;
            let mut report = Report::new(vec![]);
            push_verdict(&mut report, "Serre duality", &verify_serre(&data)?);
            Ok(Outcome::report(report))
        }
    }
}

fn push_verdict(report: &mut Report, name: &str, v: &Verdict) {
    match v {
        Verdict::Pass => report.verdict(name, true, ""),
        Verdict::Fail(why) => report.verdict(name, false, why.clone()),
    }
}

/// A Karoubi object, or the reason its idempotent does not verify.
fn karoubi_input(doc: &Document) -> Result<Result<KaroubiObject, String>, InputError> {
    let (carrier, idem, witness) = schema::karoubi_parts(doc)?;
    Ok(KaroubiObject::new(carrier, idem, witness).map_err(|e| e.to_string()))
}

fn cmd_validate(doc: &Document) -> CmdResult {
    let mut report = Report::new(vec![]);
    report.note(format!("kind: {}", doc.kind.name()));
    match doc.kind {
        Kind::Category => {
            let c = schema::category_from(doc)?;
            let v = validate(&c);
            report.verdict("DG category axioms", v.is_valid(), format!("{} violations", v.violations.len()));
            report.notes.extend(v.violations.iter().map(|x| x.to_string()));
        }
        Kind::Functor => {
            let f = schema::functor_from(doc)?;
            let v = validate_functor(&f);
            report.verdict("DG functor axioms", v.is_empty(), format!("{} violations", v.len()));
            report.notes.extend(v.iter().map(|x| x.to_string()));
        }
        Kind::TwistedComplex => {
            let x = schema::complex_from(doc)?;
            let defect = x.maurer_cartan_defect();
            let detail = defect.iter().map(|(i, j)| format!("({i},{j})")).collect::<Vec<_>>().join(" ");
            report.verdict("dq + q^2 = 0", defect.is_empty(), detail);
        }
        Kind::TwistedMorphism => {
            let f = schema::morphism_from(doc)?;
            report.verdict("source is a twisted complex", f.src().maurer_cartan_defect().is_empty(), "");
            report.verdict("target is a twisted complex", f.dst().maurer_cartan_defect().is_empty(), "");
            report.note(format!("degree {}, closed: {}", f.degree(), f.is_closed()));
        }
        Kind::KaroubiObject => {
            let k = karoubi_input(doc)?;
            report.verdict("homotopy idempotent", k.is_ok(), k.err().unwrap_or_default());
        }
        Kind::GenCertificate => {
            let g = schema::certificate_from(doc)?;
            let r = verify_generation(&g)?;
            let detail = match &r.failure {
                Some((k, why)) => format!("step {k}: {why}"),
                None => format!("{} layers", r.layers),
            };
            report.verdict("generation certificate", r.ok, detail);
        }
        Kind::SodClaim => return cmd_check_sod(doc),
        Kind::EquivCertificate => {
            let cert = schema::equiv_from(doc)?;
            push_verdict(&mut report, "quasi-equivalence", &check_quasi_equiv(&cert)?);
        }
        Kind::SerreData => {
            let data = schema::serre_from(doc)?;
            push_verdict(&mut report, "Serre duality", &verify_serre(&data)?);
        }
        Kind::Ledger => {
            let l = schema::ledger_from(doc)?;
            match l {
                Ok(l) => {
                    report.verdict("ledger provenance re-verified", true, format!("version {}", l.version()));
                    report.provenance.extend(provenance_lines(&l));
                }
                Err(e) => report.verdict("ledger provenance re-verified", false, e.to_string()),
            }
        }
    }
    Ok(Outcome::report(report))
}

fn labels_or_all(c: &DgCategory, objects: Option<&[String]>) -> Result<Vec<ObjId>, InputError> {
    match objects {
        Some(ls) => ls.iter().map(|l| c.obj(l).map_err(InputError::from)).collect(),
        None => Ok(c.objects().collect()),
    }
}

fn cmd_ext(doc: &Document, objects: Option<&[String]>) -> CmdResult {
    let c = schema::category_from(doc)?;
    let objs = labels_or_all(&c, objects)?;
    let table = ext_table(&c, &objs);
    let labels: Vec<String> = objs.iter().map(|o| c.label(*o).to_string()).collect();
    let mut report = Report::new(vec![]);
    report.tables.push(Table {
        title: "H^• Hom(row, column)".into(),
        rows: labels.clone(),
        columns: labels,
        cells: table.iter().map(|r| r.iter().map(graded_dims).collect()).collect(),
    });
    Ok(Outcome::report(report))
}

fn cmd_check_sod(doc: &Document) -> CmdResult {
    let claim = schema::claim_from(doc)?;
    let trail = check_sod(&claim)?;
    let mut report = Report::new(vec![]);
    for o in &trail.obligations {
        report.verdict(o.name.clone(), o.passed, o.detail.clone());
    }
    report.notes.extend(trail.notes.iter().cloned());
    Ok(Outcome::report(report))
}

fn provenance_lines(l: &Ledger) -> Vec<String> {
    let mut out: Vec<String> = l.relations().iter().map(|r| format!("{} = 0 [{}]", r.expr, r.provenance.tag())).collect();
    out.extend(l.facts().map(|f| format!("[{}]*[{}] = {} [{}]", f.left, f.right, f.value, f.provenance.tag())));
    out
}

fn parse_expr(s: &str) -> Result<ClassExpr, InputError> {
    Ok(ClassExpr::parse(s)?)
}

/// Provenance failures are verified failures; anything else is an input error.
fn mutation(report: &mut Report, name: &str, r: Result<Ledger, RingError>) -> Result<Option<Ledger>, InputError> {
    match r {
        Ok(l) => {
            report.verdict(name, true, format!("version {}", l.version()));
            Ok(Some(l))
        }
        Err(e @ (RingError::Provenance(_) | RingError::Conflict(_) | RingError::NotGeometric(_))) => {
            report.verdict(name, false, e.to_string());
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_ring(ctx: &Ctx, path: &Path, op: &RingOp) -> CmdResult {
    let mut report = Report::new(vec![]);
    if let RingOp::Init { gamma } = op {
        let d = ctx.degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND);
        let l = if *gamma { Ledger::gamma(d) } else { Ledger::new(d) };
        report.verdict("ledger created", true, format!("degree bound {d}"));
        let doc = schema::ledger_document(&l, ctx.field.unwrap_or(Field::Rational));
        return Ok(Outcome { report, document: Some((doc, Some(path.to_path_buf()))) });
    }
    let doc = ctx.load(path)?;
    let field = doc.field()?;
    let ledger = match schema::ledger_from(&doc)? {
        Ok(l) => l,
        Err(e) => {
            report.verdict("ledger provenance re-verified", false, e.to_string());
            return Ok(Outcome::report(report));
        }
    };
    let query = match ctx.degree_bound {
        Some(d) => ledger.with_degree_bound(d),
        None => ledger.clone(),
    };
    let write = |l: Ledger, report: Report| Outcome { report, document: Some((schema::ledger_document(&l, field), Some(path.to_path_buf()))) };
    match op {
        RingOp::Init { .. } => unreachable!(),
        RingOp::Register { label, geometric, category } => {
            let c = match category {
                Some(p) => Some(Arc::new(schema::category_from(&ctx.load(p)?)?)),
                None => None,
            };
            match mutation(&mut report, &format!("register [{label}]"), ledger.register(label, *geometric, c))? {
                Some(l) => {
                    if l.aliases().contains(label.as_str()) {
                        report.note(format!("[{label}] is equivalent to the point and is identified with [pt]"));
                    }
                    Ok(write(l, report))
                }
                None => Ok(Outcome::report(report)),
            }
        }
        RingOp::Relate { expr, cite, sod, ambient } => {
            let r = match (sod, ambient) {
                (Some(p), Some(amb)) => {
                    let claim = schema::claim_from(&ctx.load(p)?)?;
                    Ledger::point_blocks(claim).and_then(|ev| ledger.add_sod_relation(amb, ev))
                }
                _ => {
                    let expr = parse_expr(expr.as_deref().ok_or_else(|| InputError("relate needs an expression or --sod".into()))?)?;
                    let cite = cite.as_ref().ok_or_else(|| InputError("relate needs --cite or --sod".into()))?;
                    ledger.add_relation(expr, Provenance::Paper(cite.clone()))
                }
            };
            match mutation(&mut report, "relation added", r)? {
                Some(l) => Ok(write(l, report)),
                None => Ok(Outcome::report(report)),
            }
        }
        RingOp::Fact { left, right, value, cite, tensor_generator, tensor_sod } => {
            let value = parse_expr(value)?;
            let tensor_prov = |v: TensorValue| Provenance::VerifiedTensor {
                left: left.clone(),
                right: right.clone(),
                mode: ProductMode::Bullet,
                value: v,
            };
            let r = match (cite, tensor_generator, tensor_sod) {
                (Some(c), None, None) => ledger.add_product_fact(left, right, value, Provenance::Paper(c.clone())),
                (None, Some(g), None) => ledger.add_product_fact(left, right, value, tensor_prov(TensorValue::Generator(g.clone()))),
                (None, None, Some(p)) => {
                    let claim = schema::claim_from(&ctx.load(p)?)?;
                    Ledger::point_blocks(claim)
                        .and_then(|ev| ledger.add_product_fact(left, right, value, tensor_prov(TensorValue::Decomposed(ev))))
                }
                _ => return Err(InputError("fact needs exactly one of --cite, --tensor-generator, --tensor-sod".into())),
            };
            match mutation(&mut report, "product fact added", r)? {
                Some(l) => Ok(write(l, report)),
                None => Ok(Outcome::report(report)),
            }
        }
        RingOp::Eq { lhs, rhs } => {
            let o = query.eq(&parse_expr(lhs)?, &parse_expr(rhs)?)?;
            report.verdict(format!("{lhs} = {rhs}"), matches!(o, EqOutcome::Equal { .. }), o.to_string());
            if let EqOutcome::Equal { used } = &o {
                report.provenance.extend(used.iter().cloned());
            }
            report.note(format!("degree bound {}", query.degree_bound()));
            Ok(Outcome::report(report))
        }
        RingOp::Measure { line } => {
            let m = query.measure_check(line)?;
            for (x, o) in &m.lines {
                report.verdict(format!("L*[{x}] = [{x}]"), matches!(o, EqOutcome::Equal { .. }), o.to_string());
                if let EqOutcome::Equal { used } = o {
                    report.provenance.extend(used.iter().cloned());
                }
            }
            report.provenance.sort();
            report.provenance.dedup();
            report.note(format!("L = {}", m.l));
            report.note(if m.passed() { "pass: μ(L)=1".to_string() } else { "fail".to_string() });
            Ok(Outcome::report(report))
        }
        RingOp::Invariants => {
            let g = query.group_invariants()?;
            report.note(format!("rank {}", g.free_rank));
            report.note(format!("group: {g}"));
            report.note(format!("degree bound {}", query.degree_bound()));
            Ok(Outcome::report(report))
        }
    }
}
