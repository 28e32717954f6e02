//! Type checking against the formation rules.

use super::signature::{logical_family, Family, Signature};
use super::types::Type;
use super::wff::{Path, Step, Wff};

/// Errors from type checking.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("unknown constant `{name}` of type {ty}")]
    UnknownConstant { name: String, ty: Type },
    #[error("type mismatch at {path}: expected {expected}, found {found}")]
    TypeMismatch { path: Path, expected: Type, found: Type },
    #[error("not a function at {path}: found {found}")]
    NotAFunction { path: Path, found: Type },
    #[error("evaluation argument at {path} has type {found}, expected eps")]
    EvalArgNotEpsilon { path: Path, found: Type },
    #[error("illegal type parameter: {0}")]
    IllegalTypeParameter(String),
}

/// Type of `w` under `sig`, checking every formation rule.
pub fn type_of(w: &Wff, sig: &Signature) -> Result<Type, TypeError> {
    check(w, sig, &mut Vec::new())
}

/// Checks formation rules only; constants are accepted when their family
/// admits the type or, for nonlogical names, unconditionally.
pub fn type_of_open(w: &Wff) -> Result<Type, TypeError> {
    check_with(w, &|_| true, &mut Vec::new())
}

fn check(w: &Wff, sig: &Signature, path: &mut Vec<Step>) -> Result<Type, TypeError> {
    check_with(w, &|c| sig.const_type(&c.name) == Some(&c.ty), path)
}

fn check_with(
    w: &Wff,
    nonlogical: &dyn Fn(&super::wff::Const) -> bool,
    path: &mut Vec<Step>,
) -> Result<Type, TypeError> {
    let sub = |w: &Wff, s: Step, path: &mut Vec<Step>| {
        path.push(s);
        let r = check_with(w, nonlogical, path);
        path.pop();
        r
    };
    match w {
        Wff::Var(v) => Ok(v.ty.clone()),
        Wff::Const(c) => {
            let ok = match Family::of_name(&c.name) {
                Some(_) => logical_family(c).is_some(),
                None => nonlogical(c),
            };
            if ok {
                Ok(c.ty.clone())
            } else {
                Err(TypeError::UnknownConstant { name: c.name.to_string(), ty: c.ty.clone() })
            }
        }
        Wff::App(f, a) => {
            let ft = sub(f, Step::Fn, path)?;
            let at = sub(a, Step::Arg, path)?;
            match ft.as_fun() {
                Some((r, expected)) if *expected == at => Ok(r.clone()),
                Some((_, expected)) => {
                    path.push(Step::Arg);
                    let e = TypeError::TypeMismatch {
                        path: Path(path.clone()),
                        expected: expected.clone(),
                        found: at,
                    };
                    path.pop();
                    Err(e)
                }
                None => {
                    path.push(Step::Fn);
                    let e = TypeError::NotAFunction { path: Path(path.clone()), found: ft };
                    path.pop();
                    Err(e)
                }
            }
        }
        Wff::Abs(x, b) => {
            let bt = sub(b, Step::Body, path)?;
            Ok(Type::fun(bt, x.ty.clone()))
        }
        Wff::Cond(t, a, b) => {
            let tt = sub(t, Step::Test, path)?;
            if tt != Type::O {
                path.push(Step::Test);
                let e = TypeError::TypeMismatch { path: Path(path.clone()), expected: Type::O, found: tt };
                path.pop();
                return Err(e);
            }
            let at = sub(a, Step::Then, path)?;
            let bt = sub(b, Step::Else, path)?;
            if at != bt {
                path.push(Step::Else);
                let e = TypeError::TypeMismatch { path: Path(path.clone()), expected: at, found: bt };
                path.pop();
                return Err(e);
            }
            Ok(at)
        }
        Wff::Quote(a) => {
            sub(a, Step::Quote, path)?;
            Ok(Type::Eps)
        }
        Wff::Eval(a, t) => {
            let at = sub(a, Step::EvalArg, path)?;
            if at != Type::Eps {
                path.push(Step::EvalArg);
                let e = TypeError::EvalArgNotEpsilon { path: Path(path.clone()), found: at };
                path.pop();
                return Err(e);
            }
            Ok(t.clone())
        }
    }
}
