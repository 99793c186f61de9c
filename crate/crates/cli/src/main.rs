mod human;
mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use kite_core::algebra::{
    classify_wm_object, equiv23_sweep, find_witness_kite, maltsev_solve, maltsev_table, reflexive_relations,
    relation_properties, OpAlgebra, Variety,
};
use kite_core::finmap::{ismember, ismember_pullback};
use kite_core::internal::{
    kite_from_cat, kite_from_rg, kite_from_rg_morphism, kite_from_span, kite_from_umg, kpc, kpc_swapped,
    DirectedKite, MultiplicativeGraph, ReflexiveGraph, RgMorphism, Span,
};
use kite_core::kite_condition::{check_hypotheses, solve_m, wm_object_check_finset, KiteDiagram};
use kite_core::limits::{
    check_local_product_intrinsic, local_coproduct_compare, local_product, LocalProductDiagram, SplitCospan,
};
use kite_core::report::{first_failure, Detail, Outcome, Report, Verdict};
use kite_core::{FinMap, Structure, DEFAULT_CAP};

use input::{load, Failure};

#[derive(Parser)]
#[command(name = "kite", version, about = "Local products, kites and Mal'tsev-type checks on finite structures")]
struct Cli {
    /// Render the report as text instead of JSON.
    #[arg(long, global = true)]
    human: bool,

    /// Print the JSON schema of a file format and exit.
    #[arg(long, value_enum, value_name = "NAME")]
    schema: Option<SchemaName>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemaName {
    Finmap,
    Span,
    SplitCospan,
    LocalProductDiagram,
    DirectedKite,
    KiteDiagram,
    Structure,
    Algebra,
    VarietyKite,
    Report,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom of a structure bundle.
    Validate { file: PathBuf },
    /// Local product of a split cospan.
    Lp { file: PathBuf },
    /// Decide whether a diagram A <-> E <-> C is a local product.
    LpCheck { file: PathBuf },
    /// Compare the pushout of the sections with the local product.
    PushoutCompare { file: PathBuf },
    /// Kernel pair construction of a span.
    Kpc {
        file: PathBuf,
        /// Build from the span with its legs exchanged.
        #[arg(long)]
        swapped: bool,
    },
    /// Build, check and solve kites.
    #[command(subcommand)]
    Kite(KiteCommand),
    /// Whether a finite set of the given size is a weakly Mal'tsev object.
    WmObject {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Classify an algebra as a weakly Mal'tsev object of its variety.
    Classify {
        file: PathBuf,
        #[arg(long)]
        variety: Option<Variety>,
        /// Also search for a kite with two admissibility morphisms.
        #[arg(long)]
        search: bool,
        /// Number of kites the search may examine.
        #[arg(long, default_value_t = 100_000)]
        bound: usize,
    },
    /// Solve x b = a c for x, or print the whole certified table.
    MaltsevOp {
        file: PathBuf,
        #[arg(required_unless_present = "table", num_args = 3, value_names = ["A", "B", "C"])]
        args: Vec<usize>,
        #[arg(long)]
        table: bool,
    },
    /// Compatible binary relations of an algebra.
    Relations {
        file: PathBuf,
        /// Only reflexive relations (the only mode implemented).
        #[arg(long, default_value_t = true)]
        reflexive: bool,
        /// Maximum number of relations to enumerate.
        #[arg(long, default_value_t = 10_000)]
        bound: usize,
    },
    /// Compare cancellation with unique solvability on every commutative magma of a size.
    Equiv23 {
        #[arg(long)]
        size: usize,
    },
    /// Membership of each entry of F in U, with the least position.
    Ismember {
        /// JSON array, e.g. "[3,1,2]".
        f: String,
        u: String,
        /// Entries and positions counted from 1; missing positions print as 0.
        #[arg(long)]
        one_based: bool,
        /// Also read the result as the pullback of F along the injective U.
        #[arg(long)]
        pullback: bool,
    },
}

#[derive(Subcommand)]
enum KiteCommand {
    /// Build the directed kite of a structure.
    Build {
        #[arg(long, value_enum)]
        from: KiteSource,
        file: PathBuf,
    },
    /// Check the hypotheses of the kite condition.
    Check { file: PathBuf },
    /// Enumerate the multiplications of a kite.
    Solve {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KiteSource {
    Rg,
    Umg,
    Cat,
    Span,
    RgMorphism,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(name) = cli.schema {
        emit(&format!("{}\n", serde_json::to_string_pretty(&schema(name)).expect("schemas serialise")));
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: a subcommand or --schema is required (see --help)");
        return ExitCode::from(2);
    };
    let (report, code) = match run(command) {
        Ok((r, code)) => (r, code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Negative(r)) => (*r, 1),
        Err(Failure::Inconclusive(r)) => (*r, 3),
    };
    if cli.human {
        emit(&human::render(&report));
    } else {
        emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("reports serialise")));
    }
    ExitCode::from(code)
}

// a closed pipe downstream is not an error of ours
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn schema(name: SchemaName) -> schemars::Schema {
    use schemars::schema_for;
    match name {
        SchemaName::Finmap => schema_for!(FinMap),
        SchemaName::Span => schema_for!(Span),
        SchemaName::SplitCospan => schema_for!(SplitCospan),
        SchemaName::LocalProductDiagram => schema_for!(LocalProductDiagram),
        SchemaName::DirectedKite => schema_for!(DirectedKite),
        SchemaName::KiteDiagram => schema_for!(KiteDiagram),
        SchemaName::Structure => schema_for!(Structure),
        SchemaName::Algebra => schema_for!(OpAlgebra),
        SchemaName::VarietyKite => schema_for!(kite_core::algebra::VarietyKite),
        SchemaName::Report => schema_for!(Report),
    }
}

/// Exit code of a report: 0 holds, 1 fails, 3 inconclusive; counts are decided
/// by the caller.
fn code_of(r: &Report) -> u8 {
    match r.verdict {
        Outcome::Holds => 0,
        Outcome::Fails => 1,
        Outcome::Inconclusive => 3,
        Outcome::Count(c) => u8::from(!c.is_unique()),
    }
}

fn done(r: Report) -> Result<(Report, u8), Failure> {
    let code = code_of(&r);
    Ok((r, code))
}

fn run(command: Command) -> Result<(Report, u8), Failure> {
    match command {
        Command::Validate { file } => {
            let s: Structure = load(&file)?;
            let mut r = kite_core::format::validate_structure(&s).map_err(|e| Failure::from_error("validate", e))?;
            r.notes.push(format!("kind: {}", s.kind()));
            done(r)
        }
        Command::Lp { file } => {
            let sc: SplitCospan = load(&file)?;
            let lp = local_product(&sc).map_err(|e| Failure::from_error("lp", e))?;
            let diagram = LocalProductDiagram::from(&lp);
            let mut r = Report::new("lp", Outcome::Holds).with_labels(lp.labels());
            r.structure = serde_json::to_value(Structure::LocalProductDiagram(diagram)).ok();
            done(r)
        }
        Command::LpCheck { file } => {
            let d: LocalProductDiagram = load(&file)?;
            let check = check_local_product_intrinsic(&d).map_err(|e| Failure::from_error("lp-check", e))?;
            let mut r = Report::from_details("lp-check", check.details);
            if let Some(rec) = check.reconstruction {
                r = r.with_labels(&rec.b_labels);
                r.structure = serde_json::to_value(Structure::SplitCospan(rec.cospan)).ok();
            }
            done(r)
        }
        Command::PushoutCompare { file } => {
            let sc: SplitCospan = load(&file)?;
            let lp = local_product(&sc).map_err(|e| Failure::from_error("pushout-compare", e))?;
            let cmp = local_coproduct_compare(&lp).map_err(|e| Failure::from_error("pushout-compare", e))?;
            let collision = (0..cmp.comparison.dom())
                .flat_map(|i| (i + 1..cmp.comparison.dom()).map(move |j| (i, j)))
                .find(|&(i, j)| cmp.comparison.apply(i) == cmp.comparison.apply(j));
            let missed = cmp.comparison.image_mask().iter().position(|&hit| !hit);
            let details = vec![
                Detail::new("comparison injective", Verdict::from_witness("injective", collision.map(|(i, j)| [i, j]))),
                Detail::new(
                    "comparison surjective",
                    Verdict::from_witness("surjective", missed.map(|x| lp.labels()[x])),
                ),
            ];
            let mut r = Report::from_details("pushout-compare", details).with_labels(&cmp.pushout.classes);
            r.structure = Some(json!({ "comparison": cmp.comparison }));
            done(r)
        }
        Command::Kpc { file, swapped } => {
            let span: Span = load(&file)?;
            let span = Span::new(span.d, span.c).map_err(|e| Failure::from_error("kpc", e))?;
            let k = if swapped { kpc_swapped(&span) } else { kpc(&span) };
            let mut r = Report::from_details("kpc", k.check_formulas()).with_labels(&k.labels);
            r.structure = serde_json::to_value(Structure::ReflexiveGraph(k.graph())).ok();
            done(r)
        }
        Command::Kite(k) => run_kite(k),
        Command::WmObject { size, cap } => {
            let w = wm_object_check_finset(size, cap).map_err(|e| Failure::from_error("wm-object", e))?;
            let mut r = if w.weakly_maltsev {
                Report::new("wm-object", Outcome::Holds)
            } else {
                let mut r = Report::new("wm-object", Outcome::Fails);
                r.witness = Some(json!({
                    "kite": w.witness,
                    "count": w.count.map(|c| c.to_string()),
                }));
                r
            };
            r = r.with_structure(&w);
            done(r)
        }
        Command::Classify { file, variety, search, bound } => {
            let mut a: OpAlgebra = load(&file)?;
            if let Some(v) = variety {
                a = a.with_variety(v).map_err(|e| Failure::from_error("classify", e))?;
            }
            let c = classify_wm_object(&a).map_err(|e| Failure::from_error("classify", e))?;
            let mut r = Report::new("classify", if c.weakly_maltsev { Outcome::Holds } else { Outcome::Fails });
            if let Some(v) = c.details.first().and_then(|d| first_failure(std::slice::from_ref(d))) {
                r.witness = Some(json!({ "condition": v.condition, "element": v.witness }));
            }
            r.details = c.details.clone();
            r.notes.push(format!("criterion: {}", c.criterion));
            if search {
                let s = find_witness_kite(&a, bound).map_err(|e| Failure::from_error("classify", e))?;
                r.notes.push(match (&s.witness, s.exhausted) {
                    (Some(_), _) => format!("witness kite found after {} kites", s.examined),
                    (None, true) => format!("no witness kite in the searched family ({} kites)", s.examined),
                    (None, false) => format!("witness search inconclusive after {} kites", s.examined),
                });
                if let Some(k) = s.witness {
                    r.structure = serde_json::to_value(Structure::VarietyKite(k)).ok();
                    r.count = s.count.map(|c| c.to_string());
                }
            }
            done(r)
        }
        Command::MaltsevOp { file, args, table } => {
            let a: OpAlgebra = load(&file)?;
            if table {
                let t = maltsev_table(&a).map_err(|e| Failure::from_error("maltsev-op", e))?;
                let mut r = Report::from_details("maltsev-op", t.certificate.clone());
                r.structure = Some(json!({ "size": t.size, "table": t.table }));
                return done(r);
            }
            let (x, y, z) = (args[0], args[1], args[2]);
            let p = maltsev_solve(&a, x, y, z).map_err(|e| Failure::from_error("maltsev-op", e))?;
            let r = Report::new("maltsev-op", Outcome::Holds).with_structure(json!({ "a": x, "b": y, "c": z, "p": p }));
            done(r)
        }
        Command::Relations { file, reflexive, bound } => {
            if !reflexive {
                return Err(Failure::Usage("only --reflexive enumeration is supported".into()));
            }
            let a: OpAlgebra = load(&file)?;
            let e = reflexive_relations(&a, bound);
            let rows: Vec<_> = e
                .relations
                .iter()
                .map(|rel| json!({ "pairs": rel, "properties": relation_properties(rel) }))
                .collect();
            let mut r = Report::new("relations", if e.complete { Outcome::Holds } else { Outcome::Inconclusive });
            r.count = Some(e.relations.len().to_string());
            r.structure = Some(json!(rows));
            if !e.complete {
                r.notes.push(format!("budget of {bound} relations exhausted; the list is partial"));
            }
            done(r)
        }
        Command::Equiv23 { size } => {
            let s = equiv23_sweep(size).map_err(|e| Failure::from_error("equiv23", e))?;
            let mut r = Report::new("equiv23", if s.agreeing == s.total { Outcome::Holds } else { Outcome::Fails });
            if let Some(t) = &s.first_disagreement {
                r.witness = Some(json!({ "table": t }));
            }
            done(r.with_structure(&s))
        }
        Command::Ismember { f, u, one_based, pullback } => {
            let parse = |name: &str, s: &str| -> Result<Vec<usize>, Failure> {
                let v: Vec<usize> =
                    serde_json::from_str(s).map_err(|e| Failure::Usage(format!("{name}: expected a JSON array: {e}")))?;
                if one_based {
                    v.iter()
                        .enumerate()
                        .map(|(i, &x)| x.checked_sub(1).ok_or_else(|| Failure::Usage(format!("{name}[{i}] = 0 with --one-based"))))
                        .collect()
                } else {
                    Ok(v)
                }
            };
            let (f, u) = (parse("f", &f)?, parse("u", &u)?);
            let res = ismember(&f, &u);
            let shift = usize::from(one_based);
            let positions: Vec<serde_json::Value> = res
                .positions
                .iter()
                .map(|p| match p {
                    Some(j) => json!(j + shift),
                    None if one_based => json!(0),
                    None => serde_json::Value::Null,
                })
                .collect();
            let mut r = Report::new("ismember", Outcome::Holds);
            let mut out = json!({ "flags": res.flags, "positions": positions });
            if pullback {
                let cod = f.iter().chain(&u).max().map_or(0, |m| m + 1);
                let fm = FinMap::new(cod, f.clone()).map_err(|e| Failure::Usage(e.to_string()))?;
                let um = FinMap::new(cod, u.clone()).map_err(|e| Failure::Usage(e.to_string()))?;
                let (p1, p2) = ismember_pullback(&fm, &um).map_err(|e| Failure::Usage(e.to_string()))?;
                let shifted = |m: &FinMap| m.table().iter().map(|x| x + shift).collect::<Vec<_>>();
                out["pullback"] = json!({ "p1": shifted(&p1), "p2": shifted(&p2) });
            }
            r.structure = Some(out);
            done(r)
        }
    }
}

/// Labels of the local product, when the file gave them.
type Labels = Option<Vec<(usize, usize)>>;

/// A kite file holds either a kite diagram or a directed kite.
fn load_kite(file: &Path) -> Result<(KiteDiagram, Labels), Failure> {
    let v: serde_json::Value = load(file)?;
    let is_directed = v.get("kind").and_then(|k| k.as_str()) == Some("directed_kite") || v.get("f").is_some();
    if is_directed {
        let dk: DirectedKite = input::from_value(file, v)?;
        dk.check_typing().map_err(|e| Failure::from_error("kite", e))?;
        let lp = dk.local_product().map_err(|e| Failure::from_error("kite", e))?;
        let k = KiteDiagram::from_directed(&dk).map_err(|e| Failure::from_error("kite", e))?;
        Ok((k, Some(lp.labels().to_vec())))
    } else {
        Ok((input::from_value(file, v)?, None))
    }
}

fn run_kite(command: KiteCommand) -> Result<(Report, u8), Failure> {
    match command {
        KiteCommand::Build { from, file } => {
            let err = |e| Failure::from_error("kite build", e);
            let dk = match from {
                KiteSource::Rg => {
                    let g: ReflexiveGraph = load(&file)?;
                    kite_from_rg(&ReflexiveGraph::new(g.d, g.c, g.e).map_err(err)?).map_err(err)?
                }
                KiteSource::Umg | KiteSource::Cat => {
                    let b: input::GraphWithM = load(&file)?;
                    let g = ReflexiveGraph::new(b.graph.d, b.graph.c, b.graph.e).map_err(err)?;
                    let mg = MultiplicativeGraph::new(g, b.m).map_err(err)?;
                    if matches!(from, KiteSource::Umg) {
                        kite_from_umg(&mg).map_err(err)?
                    } else {
                        kite_from_cat(&mg).map_err(err)?
                    }
                }
                KiteSource::Span => {
                    let s: Span = load(&file)?;
                    kite_from_span(&Span::new(s.d, s.c).map_err(err)?).map_err(err)?
                }
                KiteSource::RgMorphism => {
                    let h: RgMorphism = load(&file)?;
                    kite_from_rg_morphism(&h).map_err(err)?
                }
            };
            let mut r = Report::from_details("kite build", dk.check());
            let lp = dk.local_product().map_err(err)?;
            r = r.with_labels(lp.labels());
            r.structure = serde_json::to_value(Structure::DirectedKite(dk)).ok();
            done(r)
        }
        KiteCommand::Check { file } => {
            let (k, labels) = load_kite(&file)?;
            let details = check_hypotheses(&k).map_err(|e| Failure::from_error("kite check", e))?;
            let mut r = Report::from_details("kite check", details);
            if let Some(l) = labels {
                r = r.with_labels(l);
            }
            done(r)
        }
        KiteCommand::Solve { file, cap } => {
            let (k, labels) = load_kite(&file)?;
            let sols = solve_m(&k, cap).map_err(|e| Failure::from_error("kite solve", e))?;
            let mut r = Report::from_solutions("kite solve", &sols);
            if let Some(l) = labels {
                r = r.with_labels(l);
            }
            if sols.truncated() {
                r.notes.push(format!("more than {cap} solutions; listing the two lexicographically least"));
            }
            done(r)
        }
    }
}
