//! Type symbols: `i`, `o`, `eps`, function types written result-first, and pair types.

use std::fmt;
use std::sync::Arc;

/// A type symbol.
///
/// `Fun(result, arg)` is the type of functions from `arg` to `result` and
/// prints as `(result arg)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Type {
    /// Individuals.
    I,
    /// Truth values.
    O,
    /// Constructions.
    Eps,
    /// Functions, result first.
    Fun(Arc<Type>, Arc<Type>),
    /// Ordered pairs.
    Pair(Arc<Type>, Arc<Type>),
}

impl Type {
    /// `(result arg)`.
    pub fn fun(result: Type, arg: Type) -> Type {
        Type::Fun(Arc::new(result), Arc::new(arg))
    }

    /// `<first, second>`.
    pub fn pair(first: Type, second: Type) -> Type {
        Type::Pair(Arc::new(first), Arc::new(second))
    }

    /// Curried function type taking `args` in order and returning `result`.
    pub fn curried(result: Type, args: &[Type]) -> Type {
        args.iter()
            .rev()
            .fold(result, |acc, a| Type::fun(acc, a.clone()))
    }

    /// `(o alpha)`, the type of predicates on `alpha`.
    pub fn pred(alpha: Type) -> Type {
        Type::fun(Type::O, alpha)
    }

    /// Splits a function type into `(result, arg)`.
    pub fn as_fun(&self) -> Option<(&Type, &Type)> {
        match self {
            Type::Fun(r, a) => Some((r, a)),
            _ => None,
        }
    }

    /// Splits a pair type into its components.
    pub fn as_pair(&self) -> Option<(&Type, &Type)> {
        match self {
            Type::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::I => write!(f, "i"),
            Type::O => write!(f, "o"),
            Type::Eps => write!(f, "eps"),
            Type::Fun(r, a) => write!(f, "({} {})", r, a),
            Type::Pair(a, b) => write!(f, "<{}, {}>", a, b),
        }
    }
}
