//! The proof system: axiom schemas, Rules 1 and 2, theories and proof checking.

pub mod builder;
pub mod schema;
pub mod script;

use crate::algebra::{syn_closed_expr, TriState};
use crate::encoding::canonicalize;
use crate::syntax::sugar;
use crate::syntax::typecheck::type_of_open;
use crate::syntax::{display, type_of, Path, Signature, Type, Wff};

pub use builder::ProofBuilder;
pub use schema::{instantiate, schema_ids};

/// How hypotheses are admitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Hypotheses are evaluation-free and have no free variables.
    EvaluationFree,
    /// Hypotheses are syntactically closed.
    General,
}

/// A signature with a set of admitted hypotheses. Hypotheses are stored canonicalized.
#[derive(Clone, Debug)]
pub struct Theory {
    pub sig: Signature,
    pub hyps: Vec<Wff>,
    pub mode: Mode,
}

impl Theory {
    pub fn new(sig: Signature, mode: Mode) -> Theory {
        Theory { sig, hyps: Vec::new(), mode }
    }

    /// Admits a hypothesis after checking its type and the mode's closure condition.
    pub fn add_hyp(&mut self, h: Wff) -> Result<(), KernelError> {
        let ty = type_of(&h, &self.sig).map_err(|e| KernelError::HypNotAdmissible(e.to_string()))?;
        if ty != Type::O {
            return Err(KernelError::HypNotAdmissible(format!("hypothesis has type {}", ty)));
        }
        let admitted = match self.mode {
            Mode::EvaluationFree => {
                h.is_evaluation_free() && h.free_vars_ef().map(|s| s.is_empty()).unwrap_or(false)
            }
            Mode::General => syn_closed_expr(&Wff::quote(h.clone())).ok() == Some(TriState::True),
        };
        if !admitted {
            let why = match self.mode {
                Mode::EvaluationFree => "not an evaluation-free sentence",
                Mode::General => "not syntactically closed",
            };
            return Err(KernelError::HypNotAdmissible(format!("{}: {}", display(&h), why)));
        }
        self.hyps.push(canonicalize(&h));
        Ok(())
    }
}

/// A schema parameter: a wff for a metavariable or a type for a type variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Wff(Wff),
    Type(Type),
}

/// Named schema parameters.
pub type Params = Vec<(String, Param)>;

/// How a line follows. Line references are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Hyp(usize),
    Axiom { id: String, params: Params },
    /// Rewrites `target` at `path` with the equation on line `eq`.
    Rule1 { eq: usize, target: usize, path: Path },
    /// Modus ponens from the implication on line `imp` and its antecedent on line `ante`.
    Rule2 { imp: usize, ante: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub wff: Wff,
    pub just: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Proof {
    pub lines: Vec<Line>,
}

/// Reasons a line fails to check.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("unknown schema `{0}`")]
    UnknownSchema(String),
    #[error("missing parameter `{0}`")]
    MissingParam(String),
    #[error("ill-typed parameters: {0}")]
    IllTypedParams(String),
    #[error("side condition violated: {0}")]
    SideConditionViolated(String),
    #[error("line {line} refers to line {reference}, which is not an earlier line")]
    BadLineRef { line: usize, reference: usize },
    #[error("line {line} depends on line {reference}, which does not check")]
    DependsOnInvalid { line: usize, reference: usize },
    #[error("hypothesis {0} is not in the theory")]
    HypOutOfRange(usize),
    #[error("hypothesis not admissible: {0}")]
    HypNotAdmissible(String),
    #[error("Rule 1 path {0} enters a quotation, a binder or an evaluation type")]
    IllegalPath(Path),
    #[error("the subterm at {0} is neither side of the equation")]
    MismatchAtPath(Path),
    #[error("line is not an equation or quasi-equation")]
    NotAnEquation,
    #[error("antecedent does not match the implication")]
    NotModusPonens,
    #[error("stated wff differs from the derived wff {derived}")]
    LineMismatch { derived: String },
    #[error("line is not a formula")]
    NotFormula,
    #[error("precondition not discharged: {0}")]
    PreconditionNotDischarged(String),
    #[error("substitution is undefined")]
    SubstUndefined,
    #[error("substitution is not decided")]
    SubstUnknown,
    #[error("unsupported by this derived rule: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Parse(String),
}

impl KernelError {
    /// The diagnostic class name.
    pub fn class(&self) -> &'static str {
        match self {
            KernelError::UnknownSchema(_) => "UnknownSchema",
            KernelError::MissingParam(_) => "MissingParam",
            KernelError::IllTypedParams(_) => "IllTypedParams",
            KernelError::SideConditionViolated(_) => "SideConditionViolated",
            KernelError::BadLineRef { .. } => "BadLineRef",
            KernelError::DependsOnInvalid { .. } => "DependsOnInvalid",
            KernelError::HypOutOfRange(_) => "HypOutOfRange",
            KernelError::HypNotAdmissible(_) => "HypNotAdmissible",
            KernelError::IllegalPath(_) => "IllegalPath",
            KernelError::MismatchAtPath(_) => "MismatchAtPath",
            KernelError::NotAnEquation => "NotAnEquation",
            KernelError::NotModusPonens => "NotModusPonens",
            KernelError::LineMismatch { .. } => "LineMismatch",
            KernelError::NotFormula => "NotFormula",
            KernelError::PreconditionNotDischarged(_) => "PreconditionNotDischarged",
            KernelError::SubstUndefined => "SubstUndefined",
            KernelError::SubstUnknown => "SubstUnknown",
            KernelError::Unsupported(_) => "Unsupported",
            KernelError::Parse(_) => "Parse",
        }
    }
}

/// The two sides of an equation `A = B` or quasi-equation `A ~~ B`.
pub fn equation_sides(w: &Wff) -> Option<(&Wff, &Wff)> {
    sugar::as_qeq(w).or_else(|| sugar::as_eq(w))
}

/// Rule 1: replaces the occurrence of one side of `eq` at `path` in `target` by the other.
pub fn apply_rule1(eq: &Wff, target: &Wff, path: &Path) -> Result<Wff, KernelError> {
    let (a, b) = equation_sides(eq).ok_or(KernelError::NotAnEquation)?;
    if !path.is_rule1_legal() {
        return Err(KernelError::IllegalPath(path.clone()));
    }
    let sub = target.at(path).ok_or_else(|| KernelError::MismatchAtPath(path.clone()))?;
    let new = if sub == a {
        b.clone()
    } else if sub == b {
        a.clone()
    } else {
        return Err(KernelError::MismatchAtPath(path.clone()));
    };
    Ok(target.replace_at(&path.0, new).expect("path addresses a wff"))
}

/// Rule 2: from `A => B` and `A`, infer `B`.
pub fn apply_rule2(imp: &Wff, ante: &Wff) -> Result<Wff, KernelError> {
    match sugar::as_implies(imp) {
        Some((a, b)) if a == ante => Ok(b.clone()),
        _ => Err(KernelError::NotModusPonens),
    }
}

/// The canonical wff derived by `just` at 1-based line `line`, given earlier lines
/// (`None` for lines that failed).
pub fn derive(
    theory: &Theory,
    earlier: &[Option<Wff>],
    line: usize,
    just: &Justification,
) -> Result<Wff, KernelError> {
    let get = |r: usize| -> Result<&Wff, KernelError> {
        if r == 0 || r >= line || r > earlier.len() {
            return Err(KernelError::BadLineRef { line, reference: r });
        }
        earlier[r - 1].as_ref().ok_or(KernelError::DependsOnInvalid { line, reference: r })
    };
    let w = match just {
        Justification::Hyp(k) => {
            if *k == 0 || *k > theory.hyps.len() {
                return Err(KernelError::HypOutOfRange(*k));
            }
            theory.hyps[*k - 1].clone()
        }
        Justification::Axiom { id, params } => instantiate(id, params, &theory.sig)?,
        Justification::Rule1 { eq, target, path } => {
            let (e, t) = (get(*eq)?, get(*target)?);
            apply_rule1(e, t, path)?
        }
        Justification::Rule2 { imp, ante } => {
            let (i, a) = (get(*imp)?, get(*ante)?);
            apply_rule2(i, a)?
        }
    };
    Ok(w)
}

/// Per-line outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineReport {
    pub line: usize,
    pub error: Option<KernelError>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub ok: bool,
    /// Every line is evaluation-free.
    pub evaluation_free: bool,
    pub lines: Vec<LineReport>,
}

impl Report {
    pub fn errors(&self) -> impl Iterator<Item = (usize, &KernelError)> {
        self.lines.iter().filter_map(|l| l.error.as_ref().map(|e| (l.line, e)))
    }
}

/// Checks every line of `proof` in `theory`.
pub fn check_proof(theory: &Theory, proof: &Proof) -> Report {
    let mut proved: Vec<Option<Wff>> = Vec::with_capacity(proof.lines.len());
    let mut lines = Vec::with_capacity(proof.lines.len());
    let mut evaluation_free = true;
    for (i, l) in proof.lines.iter().enumerate() {
        let n = i + 1;
        let stated = canonicalize(&l.wff);
        let result = check_line(theory, &proved, n, &stated, &l.just);
        evaluation_free &= stated.is_evaluation_free();
        proved.push(result.as_ref().ok().map(|_| stated));
        lines.push(LineReport { line: n, error: result.err() });
    }
    Report { ok: lines.iter().all(|l| l.error.is_none()), evaluation_free, lines }
}

fn check_line(
    theory: &Theory,
    proved: &[Option<Wff>],
    n: usize,
    stated: &Wff,
    just: &Justification,
) -> Result<(), KernelError> {
    if type_of_open(stated).ok() != Some(Type::O) {
        return Err(KernelError::NotFormula);
    }
    let derived = derive(theory, proved, n, just)?;
    if derived != *stated {
        return Err(KernelError::LineMismatch { derived: display(&derived) });
    }
    Ok(())
}
