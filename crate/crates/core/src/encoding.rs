//! The encoding of wffs as constructions, its inverse, and quasiquotation.

use crate::syntax::signature::{logical, Family};
use crate::syntax::{Type, Var, Wff};

/// Name of the variable that carries the designated type of an encoded evaluation.
pub const TYPE_CARRIER: &str = "_ty";

fn ctor(f: Family) -> Wff {
    logical(f)
}

/// The construction representing `a`.
pub fn encode(a: &Wff) -> Wff {
    match a {
        Wff::Var(_) | Wff::Const(_) => Wff::quote(a.clone()),
        Wff::App(f, x) => Wff::app2(ctor(Family::App), encode(f), encode(x)),
        Wff::Abs(x, b) => Wff::app2(ctor(Family::Abs), Wff::quote(Wff::Var(x.clone())), encode(b)),
        Wff::Cond(t, x, y) => Wff::app3(ctor(Family::Cond), encode(t), encode(x), encode(y)),
        Wff::Quote(b) => Wff::app(ctor(Family::Quot), encode(b)),
        Wff::Eval(b, t) => Wff::app2(
            ctor(Family::Eval),
            encode(b),
            Wff::quote(Wff::var(TYPE_CARRIER, t.clone())),
        ),
    }
}

fn is_ctor(w: &Wff, f: Family) -> bool {
    *w == ctor(f)
}

/// The wff whose encoding is `w`, if any. Decoding requires the represented
/// wff to be well typed.
pub fn decode(w: &Wff) -> Option<Wff> {
    if let Wff::Quote(a) = w {
        return if a.is_atom() { Some((**a).clone()) } else { None };
    }
    let (head, args) = w.spine();
    match args.as_slice() {
        [b] if is_ctor(head, Family::Quot) => Some(Wff::quote(decode(b)?)),
        [f, x] if is_ctor(head, Family::App) => {
            let (f, x) = (decode(f)?, decode(x)?);
            match f.ty().as_fun() {
                Some((_, arg)) if *arg == x.ty() => Some(Wff::app(f, x)),
                _ => None,
            }
        }
        [x, b] if is_ctor(head, Family::Abs) => match x {
            Wff::Quote(v) => Some(Wff::abs(v.as_var()?.clone(), decode(b)?)),
            _ => None,
        },
        [b, t] if is_ctor(head, Family::Eval) => {
            let b = decode(b)?;
            let Wff::Quote(v) = t else { return None };
            let v = v.as_var()?;
            if &*v.name != TYPE_CARRIER || b.ty() != Type::Eps {
                return None;
            }
            Some(Wff::eval(b, v.ty.clone()))
        }
        [t, x, y] if is_ctor(head, Family::Cond) => {
            let (t, x, y) = (decode(t)?, decode(x)?, decode(y)?);
            if t.ty() != Type::O || x.ty() != y.ty() {
                return None;
            }
            Some(Wff::cond(t, x, y))
        }
        _ => None,
    }
}

/// True iff `w` is a construction literal, i.e. in the image of the encoding.
pub fn is_literal(w: &Wff) -> bool {
    decode(w).is_some()
}

/// Replaces every quotation outside quotation bodies by the encoding of its body.
pub fn canonicalize(w: &Wff) -> Wff {
    match w {
        Wff::Var(_) | Wff::Const(_) => w.clone(),
        Wff::Quote(a) => encode(a),
        Wff::App(f, a) => Wff::app(canonicalize(f), canonicalize(a)),
        Wff::Abs(x, b) => Wff::abs(x.clone(), canonicalize(b)),
        Wff::Cond(t, a, b) => Wff::cond(canonicalize(t), canonicalize(a), canonicalize(b)),
        Wff::Eval(a, t) => Wff::eval(canonicalize(a), t.clone()),
    }
}

/// A construction literal paired with the wff it represents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Construction {
    pub literal: Wff,
    pub decoded: Wff,
}

impl Construction {
    pub fn of(a: &Wff) -> Construction {
        Construction { literal: encode(a), decoded: a.clone() }
    }

    pub fn from_literal(w: &Wff) -> Option<Construction> {
        decode(w).map(|decoded| Construction { literal: w.clone(), decoded })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EncodingError {
    #[error("hole `{name}` has payload of type {found}, expected eps")]
    HoleTypeMismatch { name: String, found: Type },
}

/// Encodes `template`, splicing each hole's payload where the hole variable occurs.
pub fn quasiquote(template: &Wff, holes: &[(Var, Wff)]) -> Result<Wff, EncodingError> {
    for (v, p) in holes {
        if p.ty() != Type::Eps {
            return Err(EncodingError::HoleTypeMismatch { name: v.name.to_string(), found: p.ty() });
        }
    }
    Ok(splice(template, holes))
}

fn splice(a: &Wff, holes: &[(Var, Wff)]) -> Wff {
    if let Wff::Var(v) = a {
        if let Some((_, p)) = holes.iter().find(|(h, _)| h == v) {
            return p.clone();
        }
    }
    match a {
        Wff::Var(_) | Wff::Const(_) => Wff::quote(a.clone()),
        Wff::App(f, x) => Wff::app2(ctor(Family::App), splice(f, holes), splice(x, holes)),
        Wff::Abs(x, b) => Wff::app2(ctor(Family::Abs), Wff::quote(Wff::Var(x.clone())), splice(b, holes)),
        Wff::Cond(t, x, y) => {
            Wff::app3(ctor(Family::Cond), splice(t, holes), splice(x, holes), splice(y, holes))
        }
        Wff::Quote(b) => Wff::app(ctor(Family::Quot), splice(b, holes)),
        Wff::Eval(b, t) => Wff::app2(
            ctor(Family::Eval),
            splice(b, holes),
            Wff::quote(Wff::var(TYPE_CARRIER, t.clone())),
        ),
    }
}
