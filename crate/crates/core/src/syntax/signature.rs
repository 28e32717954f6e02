//! Logical constant families, declared nonlogical constants and named definitions.

use std::collections::BTreeMap;

use super::types::Type;
use super::wff::{Const, Wff};

/// A family of logical constants. Families other than `Q`, `Iota`, `Pair` and
/// `Wff` have a single member.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Family {
    Q,
    Iota,
    Pair,
    Var,
    Con,
    App,
    Abs,
    Cond,
    Quot,
    Eval,
    EvalFree,
    NotFreeIn,
    Cleanse,
    Sub,
    /// `wff^alpha`, parameterized by the type it recognizes.
    Wff(Type),
}

const SIMPLE: &[(&str, Family)] = &[
    ("Q", Family::Q),
    ("iota", Family::Iota),
    ("pair", Family::Pair),
    ("var", Family::Var),
    ("con", Family::Con),
    ("app", Family::App),
    ("abs", Family::Abs),
    ("cond", Family::Cond),
    ("quot", Family::Quot),
    ("eval", Family::Eval),
    ("eval-free", Family::EvalFree),
    ("not-free-in", Family::NotFreeIn),
    ("cleanse", Family::Cleanse),
    ("sub", Family::Sub),
];

/// Prefix of the constant names of the `wff^alpha` family.
pub const WFF_PREFIX: &str = "wff^";

impl Family {
    /// Family named by a constant name, if it is logical.
    pub fn of_name(name: &str) -> Option<Family> {
        if let Some(rest) = name.strip_prefix(WFF_PREFIX) {
            return super::parse::parse_type(rest).ok().map(Family::Wff);
        }
        SIMPLE.iter().find(|(n, _)| *n == name).map(|(_, f)| f.clone())
    }

    /// True iff `name` is reserved for a logical family.
    pub fn is_reserved(name: &str) -> bool {
        name.starts_with(WFF_PREFIX) || SIMPLE.iter().any(|(n, _)| *n == name)
    }

    /// Constant name of this family.
    pub fn name(&self) -> String {
        match self {
            Family::Wff(t) => format!("{}{}", WFF_PREFIX, t),
            other => SIMPLE
                .iter()
                .find(|(_, f)| f == other)
                .map(|(n, _)| n.to_string())
                .unwrap_or_default(),
        }
    }

    /// True iff `ty` is a legal type for a member of this family.
    pub fn admits(&self, ty: &Type) -> bool {
        let e = || Type::Eps;
        match self {
            Family::Q => match ty.as_fun() {
                Some((r, a)) => *r == Type::pred(a.clone()),
                None => false,
            },
            Family::Iota => match ty.as_fun() {
                Some((a, p)) => *a != Type::O && *p == Type::pred(a.clone()),
                None => false,
            },
            Family::Pair => match ty.as_fun() {
                Some((r, a)) => match r.as_fun() {
                    Some((p, b)) => *p == Type::pair(a.clone(), b.clone()),
                    None => false,
                },
                None => false,
            },
            Family::Var | Family::Con | Family::EvalFree | Family::Wff(_) => *ty == Type::pred(e()),
            Family::App | Family::Abs | Family::Eval => *ty == Type::curried(e(), &[e(), e()]),
            Family::Cond | Family::Sub => *ty == Type::curried(e(), &[e(), e(), e()]),
            Family::Quot | Family::Cleanse => *ty == Type::fun(e(), e()),
            Family::NotFreeIn => *ty == Type::curried(Type::O, &[e(), e()]),
        }
    }

    /// The unique member type of a single-member family.
    pub fn fixed_type(&self) -> Option<Type> {
        let e = || Type::Eps;
        Some(match self {
            Family::Var | Family::Con | Family::EvalFree | Family::Wff(_) => Type::pred(e()),
            Family::App | Family::Abs | Family::Eval => Type::curried(e(), &[e(), e()]),
            Family::Cond | Family::Sub => Type::curried(e(), &[e(), e(), e()]),
            Family::Quot | Family::Cleanse => Type::fun(e(), e()),
            Family::NotFreeIn => Type::curried(Type::O, &[e(), e()]),
            Family::Q | Family::Iota | Family::Pair => return None,
        })
    }
}

/// The family of a constant, provided its type is legal for that family.
pub fn logical_family(c: &Const) -> Option<Family> {
    Family::of_name(&c.name).filter(|f| f.admits(&c.ty))
}

/// True iff `c` is a logical constant with a legal type.
pub fn is_logical(c: &Const) -> bool {
    logical_family(c).is_some()
}

/// Member of a single-member family.
pub fn logical(f: Family) -> Wff {
    let ty = f.fixed_type().expect("single-member family");
    Wff::constant(&f.name(), ty)
}

/// `Q_{o alpha alpha}`.
pub fn q(alpha: Type) -> Wff {
    Wff::constant("Q", Type::curried(Type::O, &[alpha.clone(), alpha]))
}

/// `iota_{alpha (o alpha)}`; callers guarantee `alpha != o`.
pub fn iota(alpha: Type) -> Wff {
    Wff::constant("iota", Type::fun(alpha.clone(), Type::pred(alpha)))
}

/// `pair_{<alpha beta> beta alpha}`.
pub fn pair_const(alpha: Type, beta: Type) -> Wff {
    Wff::constant(
        "pair",
        Type::curried(Type::pair(alpha.clone(), beta.clone()), &[alpha, beta]),
    )
}

/// `wff^alpha`.
pub fn wff_pred(alpha: Type) -> Wff {
    logical(Family::Wff(alpha))
}

/// Errors raised while extending a signature.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("name `{0}` is already defined")]
    RedefinedName(String),
    #[error("name `{0}` is reserved for a logical constant")]
    ShadowsLogical(String),
    #[error("definition `{0}` is not closed")]
    OpenDefinition(String),
    #[error("definition `{name}` has type {found}, declared {declared}")]
    DefinitionType { name: String, declared: Type, found: Type },
}

/// A named abbreviation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub ty: Type,
    pub body: Wff,
}

/// Nonlogical constants and named definitions. Logical families are always present.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    consts: BTreeMap<String, Type>,
    defs: Vec<Definition>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    fn check_fresh(&self, name: &str) -> Result<(), SignatureError> {
        if Family::is_reserved(name) {
            return Err(SignatureError::ShadowsLogical(name.to_string()));
        }
        if self.consts.contains_key(name) || self.definition(name).is_some() {
            return Err(SignatureError::RedefinedName(name.to_string()));
        }
        Ok(())
    }

    /// Declares a nonlogical constant.
    pub fn declare(&mut self, name: &str, ty: Type) -> Result<(), SignatureError> {
        self.check_fresh(name)?;
        self.consts.insert(name.to_string(), ty);
        Ok(())
    }

    /// Installs a closed, well-typed definition.
    pub fn define(&mut self, name: &str, ty: Type, body: Wff) -> Result<(), SignatureError> {
        self.check_fresh(name)?;
        let found = super::typecheck::type_of(&body, self)
            .map_err(|_| SignatureError::DefinitionType {
                name: name.to_string(),
                declared: ty.clone(),
                found: body.ty(),
            })?;
        if found != ty {
            return Err(SignatureError::DefinitionType { name: name.to_string(), declared: ty, found });
        }
        if body.is_evaluation_free() && !body.free_vars_ef().map(|s| s.is_empty()).unwrap_or(false) {
            return Err(SignatureError::OpenDefinition(name.to_string()));
        }
        self.defs.push(Definition { name: name.to_string(), ty, body });
        Ok(())
    }

    /// Declared type of a nonlogical constant.
    pub fn const_type(&self, name: &str) -> Option<&Type> {
        self.consts.get(name)
    }

    pub fn definition(&self, name: &str) -> Option<&Definition> {
        self.defs.iter().find(|d| d.name == name)
    }

    pub fn definitions(&self) -> &[Definition] {
        &self.defs
    }

    pub fn constants(&self) -> impl Iterator<Item = (&String, &Type)> {
        self.consts.iter()
    }

    /// True iff `c` is a primitive constant of this signature.
    pub fn is_primitive(&self, c: &Const) -> bool {
        is_logical(c) || self.consts.get(&*c.name) == Some(&c.ty)
    }
}
