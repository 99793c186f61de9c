//! JSON file forms and the tagged structure bundle read by `validate`.

use std::borrow::Cow;

use schemars::{JsonSchema, Schema, SchemaGenerator};
use serde::{Deserialize, Serialize};

use crate::algebra::{OpAlgebra, Operation, Variety, VarietyKite};
use crate::error::{Error, Result};
use crate::finmap::FinMap;
use crate::internal::{
    validate_category, validate_groupoid, validate_multiplicative_graph, validate_pregroupoid,
    validate_reflexive_graph, validate_unital_multiplicative_graph, DirectedKite, KiteMorphism, MultiplicativeGraph,
    Pregroupoid, ReflexiveGraph, RgMorphism, Span,
};
use crate::kite_condition::{check_hypotheses_report, AdmissibilityKite, KiteDiagram};
use crate::limits::{check_local_product_intrinsic, LocalProductDiagram, SplitCospan};
use crate::report::{Detail, Outcome, Report, Verdict};

/// `{"dom": n, "cod": m, "table": [...]}`, 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[schemars(rename = "FinMap")]
pub struct FinMapFile {
    pub dom: usize,
    pub cod: usize,
    pub table: Vec<usize>,
}

impl TryFrom<FinMapFile> for FinMap {
    type Error = Error;

    fn try_from(f: FinMapFile) -> Result<FinMap> {
        FinMap::with_dom(f.dom, f.cod, f.table)
    }
}

impl From<FinMap> for FinMapFile {
    fn from(m: FinMap) -> Self {
        FinMapFile { dom: m.dom(), cod: m.cod(), table: m.into_table() }
    }
}

impl JsonSchema for FinMap {
    fn schema_name() -> Cow<'static, str> {
        FinMapFile::schema_name()
    }

    fn json_schema(generator: &mut SchemaGenerator) -> Schema {
        FinMapFile::json_schema(generator)
    }
}

/// `{"size": n, "variety": "...", "ops": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[schemars(rename = "OpAlgebra")]
pub struct AlgebraFile {
    pub size: usize,
    #[serde(default = "custom")]
    pub variety: Variety,
    #[serde(default)]
    pub ops: Vec<Operation>,
}

fn custom() -> Variety {
    Variety::Custom
}

impl TryFrom<AlgebraFile> for OpAlgebra {
    type Error = Error;

    fn try_from(f: AlgebraFile) -> Result<OpAlgebra> {
        OpAlgebra::new(f.size, f.variety, f.ops)
    }
}

impl From<OpAlgebra> for AlgebraFile {
    fn from(a: OpAlgebra) -> Self {
        AlgebraFile { size: a.size(), variety: a.variety(), ops: a.ops().to_vec() }
    }
}

impl JsonSchema for OpAlgebra {
    fn schema_name() -> Cow<'static, str> {
        AlgebraFile::schema_name()
    }

    fn json_schema(generator: &mut SchemaGenerator) -> Schema {
        AlgebraFile::json_schema(generator)
    }
}

/// Any structure the tool reads, tagged by `"kind"`.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Structure {
    FinMap {
        map: FinMap,
    },
    Span(Span),
    SplitCospan(SplitCospan),
    LocalProductDiagram(LocalProductDiagram),
    ReflexiveGraph(ReflexiveGraph),
    /// `m` is indexed by the composable pairs `(x, y)` with `d x = c y`, in
    /// lexicographic order.
    MultiplicativeGraph {
        graph: ReflexiveGraph,
        m: FinMap,
    },
    /// `m` must also be associative.
    Category {
        graph: ReflexiveGraph,
        m: FinMap,
    },
    Groupoid {
        graph: ReflexiveGraph,
        m: FinMap,
    },
    /// `p` is indexed by the triples `(x, y, z)` with `d x = d y`, `c y = c z`,
    /// in lexicographic order.
    Pregroupoid {
        span: Span,
        p: FinMap,
    },
    DirectedKite(DirectedKite),
    KiteDiagram(KiteDiagram),
    AdmissibilityKite(AdmissibilityKite),
    RgMorphism(RgMorphism),
    KiteMorphism(KiteMorphism),
    Algebra(OpAlgebra),
    VarietyKite(VarietyKite),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::FinMap { .. } => "fin_map",
            Structure::Span(_) => "span",
            Structure::SplitCospan(_) => "split_cospan",
            Structure::LocalProductDiagram(_) => "local_product_diagram",
            Structure::ReflexiveGraph(_) => "reflexive_graph",
            Structure::MultiplicativeGraph { .. } => "multiplicative_graph",
            Structure::Category { .. } => "category",
            Structure::Groupoid { .. } => "groupoid",
            Structure::Pregroupoid { .. } => "pregroupoid",
            Structure::DirectedKite(_) => "directed_kite",
            Structure::KiteDiagram(_) => "kite_diagram",
            Structure::AdmissibilityKite(_) => "admissibility_kite",
            Structure::RgMorphism(_) => "rg_morphism",
            Structure::KiteMorphism(_) => "kite_morphism",
            Structure::Algebra(_) => "algebra",
            Structure::VarietyKite(_) => "variety_kite",
        }
    }
}

/// Turns a violated precondition into a `fails` report; other errors pass through.
fn negative(command: &str, condition: &str, r: Result<()>) -> Result<Report> {
    match r {
        Ok(()) => Ok(Report::from_details(command, vec![Detail::new(condition, Verdict::Holds)])),
        Err(e @ (Error::InvalidSplitting { .. }
        | Error::NonCommutingSquare { .. }
        | Error::NotAHomomorphism(_)
        | Error::HypothesisViolation(_)
        | Error::CompatibilityViolation(_))) => {
            Ok(Report::from_details(command, vec![Detail::new(condition, Verdict::fails(condition, e.to_string()))]))
        }
        Err(e) => Err(e),
    }
}

/// Checks every axiom of the structure; typing errors are `Err`.
pub fn validate_structure(s: &Structure) -> Result<Report> {
    let cmd = "validate";
    let mult = |graph: &ReflexiveGraph, m: &FinMap| MultiplicativeGraph::new(graph.clone(), m.clone());
    let report = match s {
        Structure::FinMap { .. } => Report::new(cmd, Outcome::Holds),
        Structure::Span(sp) => {
            Span::new(sp.d.clone(), sp.c.clone())?;
            Report::new(cmd, Outcome::Holds)
        }
        Structure::SplitCospan(sc) => negative(cmd, "f r = 1_B and g s = 1_B", sc.validate())?,
        Structure::LocalProductDiagram(d) => {
            let check = check_local_product_intrinsic(d)?;
            Report::from_details(cmd, check.details)
        }
        Structure::ReflexiveGraph(g) => {
            ReflexiveGraph::new(g.d.clone(), g.c.clone(), g.e.clone())?;
            validate_reflexive_graph(g)
        }
        Structure::MultiplicativeGraph { graph, m } => {
            let g = mult(graph, m)?;
            let mut r = validate_multiplicative_graph(&g);
            if r.verdict == Outcome::Holds {
                r = validate_unital_multiplicative_graph(&g);
            }
            r
        }
        Structure::Category { graph, m } => validate_category(&mult(graph, m)?),
        Structure::Groupoid { graph, m } => validate_groupoid(&mult(graph, m)?),
        Structure::Pregroupoid { span, p } => validate_pregroupoid(&Pregroupoid::new(span.clone(), p.clone())?),
        Structure::DirectedKite(k) => {
            k.check_typing()?;
            Report::from_details(cmd, k.check())
        }
        Structure::KiteDiagram(k) => check_hypotheses_report(k)?,
        Structure::AdmissibilityKite(k) => Report::from_details(cmd, k.check()?),
        Structure::RgMorphism(h) => negative(cmd, "f0 d = d' f1, f0 c = c' f1, f1 e = e' f0", h.validate())?,
        Structure::KiteMorphism(h) => negative(cmd, "the nine squares commute", h.validate())?,
        Structure::Algebra(a) => Report::from_details(cmd, vec![Detail::new(format!("{} axioms", a.variety()), Verdict::Holds)]),
        Structure::VarietyKite(k) => negative(cmd, "homomorphisms and kite equations", k.validate())?,
    };
    Ok(Report { command: cmd.to_string(), ..report })
}
