//! The standard library: constructors and deconstructors for implications and
//! conjunctions, and-simp, single-wff schemas, shipped proof scripts and fixtures.

use crate::algebra::wff_type;
use crate::encoding::{canonicalize, encode, Construction};
use crate::kernel::builder::ProofBuilder;
use crate::kernel::script::{check_script, parse_script, parse_theory};
use crate::kernel::{check_proof, KernelError, Theory};
use crate::syntax::signature::{pair_const, SignatureError};
use crate::syntax::{sugar, Type, Wff};

/// The standard library theory file.
pub const STDLIB: &str = include_str!("../../../stdlib.quqe");

/// Substitution fixtures: double substitution and cleansing.
pub const DOUBLE_SUBST_FIXTURE: &str = include_str!("../../../fixtures/double_subst.json");

/// and-simp over all pairs of five formula quotations.
pub const AND_SIMP_FIXTURE: &str = include_str!("../../../fixtures/and_simp.json");

/// A proof script shipped with the library.
#[derive(Clone, Copy, Debug)]
pub struct ShippedScript {
    pub name: &'static str,
    pub text: &'static str,
    /// Expected number of script lines.
    pub lines: usize,
    /// Whether every expanded line is evaluation-free.
    pub evaluation_free: bool,
}

pub const SCRIPTS: &[ShippedScript] = &[
    ShippedScript {
        name: "t_true",
        text: include_str!("../../../proofs/t_true.qpf"),
        lines: 1,
        evaluation_free: true,
    },
    ShippedScript {
        name: "lem",
        text: include_str!("../../../proofs/lem.qpf"),
        lines: 6,
        evaluation_free: false,
    },
    ShippedScript {
        name: "implies_eq",
        text: include_str!("../../../proofs/implies_eq.qpf"),
        lines: 3,
        evaluation_free: true,
    },
    ShippedScript {
        name: "sub_app",
        text: include_str!("../../../proofs/sub_app.qpf"),
        lines: 1,
        evaluation_free: true,
    },
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StdlibError {
    #[error("name `{0}` is already defined")]
    RedefinedName(String),
    #[error("script `{name}` fails at line {line}: {error}")]
    ScriptFailed { name: String, line: usize, error: String },
    #[error("argument is not the quotation of a formula")]
    NotFormulaLiteral,
    #[error("{0}")]
    Invalid(String),
}

/// The standard library as a theory over the empty signature.
pub fn stdlib_theory() -> Theory {
    parse_theory(STDLIB).expect("the shipped library parses")
}

/// Installs the library definitions in `theory` and re-checks every shipped script.
pub fn load_stdlib(mut theory: Theory) -> Result<Theory, StdlibError> {
    for d in stdlib_theory().sig.definitions() {
        theory.sig.define(&d.name, d.ty.clone(), d.body.clone()).map_err(|e| match e {
            SignatureError::RedefinedName(n) | SignatureError::ShadowsLogical(n) => StdlibError::RedefinedName(n),
            other => StdlibError::Invalid(other.to_string()),
        })?;
    }
    for s in SCRIPTS {
        check_shipped(&theory, s)?;
    }
    Ok(theory)
}

/// Checks one shipped script against its recorded line count and evaluation-free flag.
pub fn check_shipped(theory: &Theory, s: &ShippedScript) -> Result<(), StdlibError> {
    let failed = |line: usize, error: String| StdlibError::ScriptFailed { name: s.name.to_string(), line, error };
    let script = parse_script(s.text, &theory.sig).map_err(|e| failed(0, e.to_string()))?;
    let report = check_script(theory, &script);
    if let Some((line, e)) = report.diagnostics.first() {
        return Err(failed(*line, e.to_string()));
    }
    if report.lines != s.lines {
        return Err(failed(0, format!("{} lines, expected {}", report.lines, s.lines)));
    }
    if report.evaluation_free != s.evaluation_free {
        return Err(failed(0, format!("evaluation-free is {}", report.evaluation_free)));
    }
    Ok(())
}

fn formula_literal(w: &Wff) -> Result<Construction, StdlibError> {
    let c = Construction::from_literal(&canonicalize(w)).ok_or(StdlibError::NotFormulaLiteral)?;
    if wff_type(&c) != Some(Type::O) {
        return Err(StdlibError::NotFormulaLiteral);
    }
    Ok(c)
}

/// and-simp on two formula quotations, computed directly from its four clauses.
pub fn and_simp(a: &Wff, b: &Wff) -> Result<Wff, StdlibError> {
    let (a, b) = (formula_literal(a)?, formula_literal(b)?);
    let (t, f) = (sugar::t(), sugar::f());
    let out = if a.decoded == t {
        b.literal
    } else if b.decoded == t {
        a.literal
    } else if a.decoded == f || b.decoded == f {
        encode(&f)
    } else {
        encode(&sugar::and(a.decoded, b.decoded))
    };
    Ok(canonicalize(&out))
}

/// Outcome of [`check_schemas`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaReport {
    /// The excluded-middle script validates.
    pub lem: bool,
    /// Universal instantiation of the four-variable beta schema is refused.
    pub ungrouped_refused: bool,
    /// Lines of a checked derivation of an instance of the grouped beta schema, if one was found.
    pub grouped_instance: Result<usize, String>,
}

/// The grouped-variable argument `<<a, x>, <b, c>>` built from four quotations.
pub fn grouped_argument(a: &Wff, x: &Wff, b: &Wff, c: &Wff) -> Wff {
    let pair = |p: Wff, q: Wff| {
        let (tp, tq) = (p.ty(), q.ty());
        Wff::app(Wff::app(pair_const(tp, tq), p), q)
    };
    pair(pair(encode(a), encode(x)), pair(encode(b), encode(c)))
}

/// Checks the single-wff schemas of the library. Schema instances are taken as
/// hypotheses, so only the instantiation steps are checked.
pub fn check_schemas() -> Result<SchemaReport, StdlibError> {
    let base = stdlib_theory();
    let lem = SCRIPTS.iter().find(|s| s.name == "lem").expect("lem is shipped");
    check_shipped(&base, lem)?;
    let def = |n: &str| base.sig.definition(n).expect("defined in the library").body.clone();

    let mut theory = base.clone();
    theory.hyps.push(canonicalize(&def("beta-oo")));
    let mut b = ProofBuilder::new(&theory);
    let h = b.hyp(1).map_err(|e| StdlibError::Invalid(e.to_string()))?;
    let ungrouped_refused = matches!(b.ui(h, &encode(&sugar::t())), Err(KernelError::Unsupported(_)));

    let mut theory = base.clone();
    theory.hyps.push(canonicalize(&def("beta-grouped-oo")));
    let x = Wff::var("x", Type::O);
    let arg = grouped_argument(&sugar::t(), &x, &x, &sugar::t());
    let mut b = ProofBuilder::new(&theory);
    let grouped_instance = b
        .hyp(1)
        .and_then(|h| b.ui(h, &arg))
        .map_err(|e| e.to_string())
        .and_then(|_| {
            let report = check_proof(&theory, &b.into_proof());
            if report.ok {
                Ok(report.lines.len())
            } else {
                Err("instance derivation does not re-check".to_string())
            }
        });
    Ok(SchemaReport { lem: true, ungrouped_refused, grouped_instance })
}
