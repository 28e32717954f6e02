//! The seven kinds of wffs, structural metrics and occurrence paths.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::types::Type;

/// Identifier of a variable or constant.
pub type Name = Arc<str>;

/// A typed variable `name:ty`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var {
    pub name: Name,
    pub ty: Type,
}

impl Var {
    pub fn new(name: &str, ty: Type) -> Var {
        Var { name: Arc::from(name), ty }
    }
}

/// A primitive constant `#name:ty`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Const {
    pub name: Name,
    pub ty: Type,
}

impl Const {
    pub fn new(name: &str, ty: Type) -> Const {
        Const { name: Arc::from(name), ty }
    }
}

/// A wff. Equality is structural, including bound variable names.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Wff {
    Var(Var),
    Const(Const),
    App(Arc<Wff>, Arc<Wff>),
    Abs(Var, Arc<Wff>),
    Cond(Arc<Wff>, Arc<Wff>, Arc<Wff>),
    Quote(Arc<Wff>),
    /// Evaluation carrying its designated result type.
    Eval(Arc<Wff>, Type),
}

impl Wff {
    pub fn var(name: &str, ty: Type) -> Wff {
        Wff::Var(Var::new(name, ty))
    }

    pub fn constant(name: &str, ty: Type) -> Wff {
        Wff::Const(Const::new(name, ty))
    }

    pub fn app(f: Wff, a: Wff) -> Wff {
        Wff::App(Arc::new(f), Arc::new(a))
    }

    /// `((f a) b)`.
    pub fn app2(f: Wff, a: Wff, b: Wff) -> Wff {
        Wff::app(Wff::app(f, a), b)
    }

    /// `(((f a) b) c)`.
    pub fn app3(f: Wff, a: Wff, b: Wff, c: Wff) -> Wff {
        Wff::app(Wff::app2(f, a, b), c)
    }

    pub fn abs(x: Var, body: Wff) -> Wff {
        Wff::Abs(x, Arc::new(body))
    }

    pub fn cond(t: Wff, a: Wff, b: Wff) -> Wff {
        Wff::Cond(Arc::new(t), Arc::new(a), Arc::new(b))
    }

    pub fn quote(a: Wff) -> Wff {
        Wff::Quote(Arc::new(a))
    }

    pub fn eval(a: Wff, ty: Type) -> Wff {
        Wff::Eval(Arc::new(a), ty)
    }

    /// Type of a wff assumed well-typed. Ill-typed applications report the
    /// function's own type.
    pub fn ty(&self) -> Type {
        match self {
            Wff::Var(v) => v.ty.clone(),
            Wff::Const(c) => c.ty.clone(),
            Wff::App(f, _) => {
                let ft = f.ty();
                match ft.as_fun() {
                    Some((r, _)) => r.clone(),
                    None => ft,
                }
            }
            Wff::Abs(x, b) => Type::fun(b.ty(), x.ty.clone()),
            Wff::Cond(_, a, _) => a.ty(),
            Wff::Quote(_) => Type::Eps,
            Wff::Eval(_, t) => t.clone(),
        }
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Wff::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_const(&self) -> Option<&Const> {
        match self {
            Wff::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_app(&self) -> Option<(&Wff, &Wff)> {
        match self {
            Wff::App(f, a) => Some((f, a)),
            _ => None,
        }
    }

    pub fn as_app2(&self) -> Option<(&Wff, &Wff, &Wff)> {
        let (fa, b) = self.as_app()?;
        let (f, a) = fa.as_app()?;
        Some((f, a, b))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Wff::Var(_) | Wff::Const(_))
    }

    /// Head and arguments of an application spine.
    pub fn spine(&self) -> (&Wff, Vec<&Wff>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Wff::App(f, a) = cur {
            args.push(&**a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    /// Number of variable and constant occurrences, quotation bodies included.
    pub fn size(&self) -> usize {
        match self {
            Wff::Var(_) | Wff::Const(_) => 1,
            Wff::App(f, a) => f.size() + a.size(),
            Wff::Abs(_, b) => 1 + b.size(),
            Wff::Cond(t, a, b) => t.size() + a.size() + b.size(),
            Wff::Quote(a) => a.size(),
            Wff::Eval(a, _) => a.size(),
        }
    }

    /// `(m, n)`: evaluations outside quotations, and size.
    pub fn complexity(&self) -> (usize, usize) {
        (self.unquoted_evals(), self.size())
    }

    fn unquoted_evals(&self) -> usize {
        match self {
            Wff::Var(_) | Wff::Const(_) | Wff::Quote(_) => 0,
            Wff::App(f, a) => f.unquoted_evals() + a.unquoted_evals(),
            Wff::Abs(_, b) => b.unquoted_evals(),
            Wff::Cond(t, a, b) => t.unquoted_evals() + a.unquoted_evals() + b.unquoted_evals(),
            Wff::Eval(a, _) => 1 + a.unquoted_evals(),
        }
    }

    /// True iff every evaluation lies inside a quotation.
    pub fn is_evaluation_free(&self) -> bool {
        self.unquoted_evals() == 0
    }

    /// Free variables of an evaluation-free wff. Quotation bodies contribute none.
    pub fn free_vars_ef(&self) -> Result<BTreeSet<Var>, NotEvaluationFree> {
        if !self.is_evaluation_free() {
            return Err(NotEvaluationFree);
        }
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        Ok(out)
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        match self {
            Wff::Var(v) => {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
            Wff::Const(_) | Wff::Quote(_) => {}
            Wff::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            Wff::Abs(x, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            Wff::Cond(t, a, b) => {
                t.collect_free(bound, out);
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Wff::Eval(a, _) => a.collect_free(bound, out),
        }
    }

    /// Every variable occurring anywhere, binders and quotation bodies included.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_all(&mut out);
        out
    }

    fn collect_all(&self, out: &mut BTreeSet<Var>) {
        match self {
            Wff::Var(v) => {
                out.insert(v.clone());
            }
            Wff::Const(_) => {}
            Wff::App(f, a) => {
                f.collect_all(out);
                a.collect_all(out);
            }
            Wff::Abs(x, b) => {
                out.insert(x.clone());
                b.collect_all(out);
            }
            Wff::Cond(t, a, b) => {
                t.collect_all(out);
                a.collect_all(out);
                b.collect_all(out);
            }
            Wff::Quote(a) | Wff::Eval(a, _) => a.collect_all(out),
        }
    }

    /// True iff `x` occurs anywhere in the wff.
    pub fn mentions(&self, x: &Var) -> bool {
        match self {
            Wff::Var(v) => v == x,
            Wff::Const(_) => false,
            Wff::App(f, a) => f.mentions(x) || a.mentions(x),
            Wff::Abs(y, b) => y == x || b.mentions(x),
            Wff::Cond(t, a, b) => t.mentions(x) || a.mentions(x) || b.mentions(x),
            Wff::Quote(a) | Wff::Eval(a, _) => a.mentions(x),
        }
    }

    /// Subterm at `path`, if the path addresses a wff.
    pub fn at(&self, path: &Path) -> Option<&Wff> {
        let mut cur = self;
        for step in &path.0 {
            cur = match (step, cur) {
                (Step::Fn, Wff::App(f, _)) => f,
                (Step::Arg, Wff::App(_, a)) => a,
                (Step::Body, Wff::Abs(_, b)) => b,
                (Step::Test, Wff::Cond(t, _, _)) => t,
                (Step::Then, Wff::Cond(_, a, _)) => a,
                (Step::Else, Wff::Cond(_, _, b)) => b,
                (Step::Quote, Wff::Quote(a)) => a,
                (Step::EvalArg, Wff::Eval(a, _)) => a,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Replaces the subterm at `path`. `None` when the path does not address a wff.
    pub fn replace_at(&self, path: &[Step], new: Wff) -> Option<Wff> {
        let Some((step, rest)) = path.split_first() else {
            return Some(new);
        };
        Some(match (step, self) {
            (Step::Fn, Wff::App(f, a)) => Wff::App(Arc::new(f.replace_at(rest, new)?), a.clone()),
            (Step::Arg, Wff::App(f, a)) => Wff::App(f.clone(), Arc::new(a.replace_at(rest, new)?)),
            (Step::Body, Wff::Abs(x, b)) => Wff::Abs(x.clone(), Arc::new(b.replace_at(rest, new)?)),
            (Step::Test, Wff::Cond(t, a, b)) => {
                Wff::Cond(Arc::new(t.replace_at(rest, new)?), a.clone(), b.clone())
            }
            (Step::Then, Wff::Cond(t, a, b)) => {
                Wff::Cond(t.clone(), Arc::new(a.replace_at(rest, new)?), b.clone())
            }
            (Step::Else, Wff::Cond(t, a, b)) => {
                Wff::Cond(t.clone(), a.clone(), Arc::new(b.replace_at(rest, new)?))
            }
            (Step::Quote, Wff::Quote(a)) => Wff::Quote(Arc::new(a.replace_at(rest, new)?)),
            (Step::EvalArg, Wff::Eval(a, t)) => Wff::Eval(Arc::new(a.replace_at(rest, new)?), t.clone()),
            _ => return None,
        })
    }

    /// Paths of every occurrence of `target` that Rule 1 may rewrite.
    pub fn legal_occurrences(&self, target: &Wff) -> Vec<Path> {
        let mut out = Vec::new();
        self.find_legal(target, &mut Vec::new(), &mut out);
        out
    }

    fn find_legal(&self, target: &Wff, here: &mut Vec<Step>, out: &mut Vec<Path>) {
        if self == target {
            out.push(Path(here.clone()));
        }
        let mut go = |w: &Wff, s: Step, here: &mut Vec<Step>| {
            here.push(s);
            w.find_legal(target, here, out);
            here.pop();
        };
        match self {
            Wff::Var(_) | Wff::Const(_) | Wff::Quote(_) => {}
            Wff::App(f, a) => {
                go(f, Step::Fn, here);
                go(a, Step::Arg, here);
            }
            Wff::Abs(_, b) => go(b, Step::Body, here),
            Wff::Cond(t, a, b) => {
                go(t, Step::Test, here);
                go(a, Step::Then, here);
                go(b, Step::Else, here);
            }
            Wff::Eval(a, _) => go(a, Step::EvalArg, here),
        }
    }
}

/// Raised by operations that require an evaluation-free argument.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("wff is not evaluation-free")]
pub struct NotEvaluationFree;

/// One child selector of an occurrence path.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Step {
    Fn,
    Arg,
    Binder,
    Body,
    Test,
    Then,
    Else,
    Quote,
    EvalArg,
    EvalType,
}

impl Step {
    pub fn name(self) -> &'static str {
        match self {
            Step::Fn => "fn",
            Step::Arg => "arg",
            Step::Binder => "binder",
            Step::Body => "body",
            Step::Test => "test",
            Step::Then => "then",
            Step::Else => "els",
            Step::Quote => "quote",
            Step::EvalArg => "eval-arg",
            Step::EvalType => "eval-type",
        }
    }

    pub fn from_name(s: &str) -> Option<Step> {
        Some(match s {
            "fn" => Step::Fn,
            "arg" => Step::Arg,
            "binder" => Step::Binder,
            "body" => Step::Body,
            "test" => Step::Test,
            "then" => Step::Then,
            "els" => Step::Else,
            "quote" => Step::Quote,
            "eval-arg" => Step::EvalArg,
            "eval-type" => Step::EvalType,
            _ => return None,
        })
    }
}

/// A sequence of child selectors from the root. The empty path prints as `root`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Path(pub Vec<Step>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    /// True iff the path avoids quotation bodies, binders and evaluation type slots.
    pub fn is_rule1_legal(&self) -> bool {
        !self
            .0
            .iter()
            .any(|s| matches!(s, Step::Quote | Step::Binder | Step::EvalType))
    }

    pub fn child(&self, s: Step) -> Path {
        let mut v = self.0.clone();
        v.push(s);
        Path(v)
    }

    pub fn join(&self, other: &Path) -> Path {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Path(v)
    }

    /// Parses `root` or a dot-separated list of selectors.
    pub fn parse(s: &str) -> Option<Path> {
        let s = s.trim();
        if s == "root" || s.is_empty() {
            return Some(Path::root());
        }
        s.split('.').map(Step::from_name).collect::<Option<Vec<_>>>().map(Path)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "root");
        }
        let parts: Vec<&str> = self.0.iter().map(|s| s.name()).collect();
        write!(f, "{}", parts.join("."))
    }
}
