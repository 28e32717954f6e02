//! Computable, tri-valued versions of the syntax predicates and operators
//! `var`, `con`, `wff^a`, `eval-free`, `not-free-in`, `syn-closed`, `cleanse`
//! and `sub`, plus evaluation of ground construction expressions.
//!
//! The engine works on decoded wffs: a construction is handled through the wff
//! it represents.

use std::collections::BTreeSet;

use crate::encoding::{decode, encode, Construction, TYPE_CARRIER};
use crate::syntax::signature::{logical_family, Family};
use crate::syntax::sugar;
use crate::syntax::{type_of_open, Type, Var, Wff};

/// Default recursion-depth guard.
pub const MAX_DEPTH: usize = 10_000;

/// A three-valued verdict.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum TriState {
    True,
    False,
    Unknown,
}

impl TriState {
    pub fn from_bool(b: bool) -> TriState {
        if b {
            TriState::True
        } else {
            TriState::False
        }
    }

    pub fn and(self, other: TriState) -> TriState {
        use TriState::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (True, True) => True,
            _ => Unknown,
        }
    }

    pub fn or(self, other: TriState) -> TriState {
        self.not().and(other.not()).not()
    }

    pub fn not(self) -> TriState {
        match self {
            TriState::True => TriState::False,
            TriState::False => TriState::True,
            TriState::Unknown => TriState::Unknown,
        }
    }

    pub fn implies(self, other: TriState) -> TriState {
        self.not().or(other)
    }

    pub fn iff(self, other: TriState) -> TriState {
        match (self, other) {
            (TriState::Unknown, _) | (_, TriState::Unknown) => TriState::Unknown,
            (a, b) => TriState::from_bool(a == b),
        }
    }
}

impl std::fmt::Display for TriState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TriState::True => "true",
            TriState::False => "false",
            TriState::Unknown => "unknown",
        })
    }
}

/// Result of a partial operator on constructions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PartialResult {
    Defined(Construction),
    Undefined,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("recursion depth limit {0} exceeded")]
    DepthExceeded(usize),
}

type R<T> = Result<T, AlgebraError>;

/// Value of a type-eps expression, as the wff its construction represents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum Val {
    Def(Wff),
    Undef,
    Unknown,
}

impl Val {
    fn into_result(self) -> PartialResult {
        match self {
            Val::Def(d) => PartialResult::Defined(Construction { literal: encode(&d), decoded: d }),
            Val::Undef => PartialResult::Undefined,
            Val::Unknown => PartialResult::Unknown,
        }
    }
}

/// Combines strict arguments: undefined dominates unknown.
fn strict(vals: Vec<Val>) -> Result<Vec<Wff>, Val> {
    let mut out = Vec::with_capacity(vals.len());
    let mut unknown = false;
    for v in vals {
        match v {
            Val::Def(d) => out.push(d),
            Val::Undef => return Err(Val::Undef),
            Val::Unknown => unknown = true,
        }
    }
    if unknown {
        Err(Val::Unknown)
    } else {
        Ok(out)
    }
}

fn depth_check(d: usize) -> R<()> {
    if d > MAX_DEPTH {
        Err(AlgebraError::DepthExceeded(MAX_DEPTH))
    } else {
        Ok(())
    }
}

/// True iff `c` is a primitive constant: logical with a legal type, or nonlogical.
fn is_primitive(c: &crate::syntax::Const) -> bool {
    match Family::of_name(&c.name) {
        Some(_) => logical_family(c).is_some(),
        None => true,
    }
}

/// Type of a decoded wff, if it is a wff.
fn wff_ty(d: &Wff) -> Option<Type> {
    type_of_open(d).ok()
}

// Decoded-wff predicates.

pub(crate) fn is_var(d: &Wff) -> bool {
    matches!(d, Wff::Var(_))
}

pub(crate) fn is_con(d: &Wff) -> bool {
    matches!(d, Wff::Const(c) if is_primitive(c))
}

/// `not-free-in` on decoded wffs.
pub(crate) fn nfi(v: &Var, c: &Wff, d: usize) -> R<TriState> {
    depth_check(d)?;
    Ok(match c {
        Wff::Var(u) => TriState::from_bool(u != v),
        Wff::Const(_) | Wff::Quote(_) => TriState::True,
        Wff::App(f, a) => {
            let l = nfi(v, f, d + 1)?;
            if l == TriState::False {
                return Ok(l);
            }
            l.and(nfi(v, a, d + 1)?)
        }
        Wff::Abs(x, b) => {
            if x == v {
                TriState::True
            } else {
                nfi(v, b, d + 1)?
            }
        }
        Wff::Cond(t, a, b) => {
            let mut acc = TriState::True;
            for part in [t, a, b] {
                acc = acc.and(nfi(v, part, d + 1)?);
                if acc == TriState::False {
                    break;
                }
            }
            acc
        }
        Wff::Eval(b, alpha) => {
            if syn_closed(b, d + 1)? == TriState::False || !b.is_evaluation_free() {
                return Ok(TriState::False);
            }
            match eval_eps(b, d + 1)? {
                Val::Undef => TriState::False,
                Val::Unknown => TriState::Unknown,
                Val::Def(e) => {
                    if e.is_evaluation_free() && wff_ty(&e).as_ref() == Some(alpha) {
                        nfi(v, &e, d + 1)?
                    } else {
                        TriState::False
                    }
                }
            }
        }
    })
}

/// `syn-closed` on decoded wffs.
pub(crate) fn syn_closed(c: &Wff, d: usize) -> R<TriState> {
    depth_check(d)?;
    if let Ok(fv) = c.free_vars_ef() {
        return Ok(TriState::from_bool(fv.is_empty()));
    }
    let mut vars: BTreeSet<Var> = c.all_vars();
    vars.insert(fresh_var(&vars));
    let mut acc = TriState::True;
    for v in &vars {
        acc = acc.and(nfi(v, c, d + 1)?);
        if acc == TriState::False {
            break;
        }
    }
    Ok(acc)
}

fn fresh_var(avoid: &BTreeSet<Var>) -> Var {
    (0..)
        .map(|i| Var::new(&format!("%fresh{}", i), Type::Eps))
        .find(|v| !avoid.contains(v))
        .expect("unbounded supply")
}

/// `cleanse` on decoded wffs.
pub(crate) fn cleanse_d(c: &Wff, d: usize) -> R<Val> {
    depth_check(d)?;
    Ok(match c {
        Wff::Var(_) | Wff::Const(_) | Wff::Quote(_) => Val::Def(c.clone()),
        Wff::App(f, a) => match strict(vec![cleanse_d(f, d + 1)?, cleanse_d(a, d + 1)?]) {
            Ok(v) => mk_app(&v[0], &v[1]),
            Err(e) => e,
        },
        Wff::Abs(x, b) => match cleanse_d(b, d + 1)? {
            Val::Def(b) => Val::Def(Wff::abs(x.clone(), b)),
            other => other,
        },
        Wff::Cond(t, a, b) => match strict(vec![
            cleanse_d(t, d + 1)?,
            cleanse_d(a, d + 1)?,
            cleanse_d(b, d + 1)?,
        ]) {
            Ok(v) => mk_cond(&v[0], &v[1], &v[2]),
            Err(e) => e,
        },
        Wff::Eval(a, alpha) => {
            let e = match cleanse_d(a, d + 1)? {
                Val::Def(e) => e,
                other => return Ok(other),
            };
            disquote_checked(&e, alpha, d + 1)?
        }
    })
}

/// `if [syn-closed E /\ eval-free^alpha [[E]]] [[E]] bot`, with `E` the construction of `e`.
fn disquote_checked(e: &Wff, alpha: &Type, d: usize) -> R<Val> {
    match syn_closed(e, d)? {
        TriState::False => return Ok(Val::Undef),
        TriState::Unknown => {
            return Ok(match eval_eps(e, d)? {
                Val::Undef => Val::Undef,
                _ => Val::Unknown,
            })
        }
        TriState::True => {}
    }
    Ok(match eval_eps(e, d)? {
        Val::Def(v) => {
            if v.is_evaluation_free() && wff_ty(&v).as_ref() == Some(alpha) {
                Val::Def(v)
            } else {
                Val::Undef
            }
        }
        other => other,
    })
}

fn mk_app(f: &Wff, a: &Wff) -> Val {
    match f.ty().as_fun() {
        Some((_, arg)) if *arg == a.ty() => Val::Def(Wff::app(f.clone(), a.clone())),
        _ => Val::Undef,
    }
}

fn mk_cond(t: &Wff, a: &Wff, b: &Wff) -> Val {
    if t.ty() == Type::O && a.ty() == b.ty() {
        Val::Def(Wff::cond(t.clone(), a.clone(), b.clone()))
    } else {
        Val::Undef
    }
}

/// `sub` on decoded wffs: substitute `a` for `x` in `c`.
pub(crate) fn subst_d(a: &Wff, x: &Var, c: &Wff, d: usize) -> R<Val> {
    depth_check(d)?;
    if wff_ty(a).as_ref() != Some(&x.ty) {
        return Ok(Val::Undef);
    }
    Ok(match c {
        Wff::Var(v) if v == x => cleanse_d(a, d + 1)?,
        Wff::Var(_) | Wff::Const(_) | Wff::Quote(_) => Val::Def(c.clone()),
        Wff::App(f, b) => match strict(vec![subst_d(a, x, f, d + 1)?, subst_d(a, x, b, d + 1)?]) {
            Ok(v) => mk_app(&v[0], &v[1]),
            Err(e) => e,
        },
        Wff::Abs(y, e) if y == x => match cleanse_d(e, d + 1)? {
            Val::Def(e) => Val::Def(Wff::abs(y.clone(), e)),
            other => other,
        },
        Wff::Abs(y, e) => {
            let test = nfi(x, e, d + 1)?;
            let test = if test == TriState::True { test } else { test.or(nfi(y, a, d + 1)?) };
            let body = subst_d(a, x, e, d + 1)?;
            match (test, body) {
                (TriState::False, _) => Val::Undef,
                (_, Val::Undef) => Val::Undef,
                (TriState::True, Val::Def(b)) => Val::Def(Wff::abs(y.clone(), b)),
                _ => Val::Unknown,
            }
        }
        Wff::Cond(t, p, q) => match strict(vec![
            subst_d(a, x, t, d + 1)?,
            subst_d(a, x, p, d + 1)?,
            subst_d(a, x, q, d + 1)?,
        ]) {
            Ok(v) => mk_cond(&v[0], &v[1], &v[2]),
            Err(e) => e,
        },
        Wff::Eval(b, beta) => {
            let e1 = match subst_d(a, x, b, d + 1)? {
                Val::Def(e1) => e1,
                other => return Ok(other),
            };
            match disquote_checked(&e1, beta, d + 1)? {
                Val::Def(v) => subst_d(a, x, &v, d + 1)?,
                other => other,
            }
        }
    })
}

/// Value of a type-eps expression.
pub(crate) fn eval_eps(w: &Wff, d: usize) -> R<Val> {
    depth_check(d)?;
    if let Some(lit) = decode(w) {
        return Ok(Val::Def(lit));
    }
    match w {
        Wff::Quote(a) => return Ok(Val::Def((**a).clone())),
        Wff::Var(_) | Wff::Const(_) | Wff::Abs(..) => return Ok(Val::Unknown),
        Wff::Cond(t, a, b) => {
            return match decide_d(t, d + 1)? {
                TriState::True => eval_eps(a, d + 1),
                TriState::False => eval_eps(b, d + 1),
                TriState::Unknown => Ok(Val::Unknown),
            }
        }
        Wff::Eval(a, _) => {
            return Ok(match eval_eps(a, d + 1)? {
                Val::Def(e) => {
                    if e.is_evaluation_free() && wff_ty(&e) == Some(Type::Eps) {
                        eval_eps(&e, d + 1)?
                    } else {
                        Val::Undef
                    }
                }
                other => other,
            })
        }
        Wff::App(..) => {}
    }
    if sugar::as_bottom(w).is_some() {
        return Ok(Val::Undef);
    }
    if let Some(p) = sugar::as_fst(w) {
        return pair_component(p, true, d);
    }
    if let Some(p) = sugar::as_snd(w) {
        return pair_component(p, false, d);
    }
    if sugar::as_desc(w).is_some() {
        return Ok(Val::Unknown);
    }
    let (head, args) = w.spine();
    if let Wff::Abs(x, body) = head {
        if args.len() == 1 && x.ty == Type::Eps && body.is_evaluation_free() {
            return Ok(match eval_eps(args[0], d + 1)? {
                Val::Def(v) => eval_eps(&replace_free(body, x, &encode(&v)), d + 1)?,
                _ => Val::Unknown,
            });
        }
        return Ok(Val::Unknown);
    }
    let family = match head {
        Wff::Const(c) => match logical_family(c) {
            Some(f) => f,
            None => return Ok(Val::Unknown),
        },
        _ => return Ok(Val::Unknown),
    };
    let n = args.len();
    let expected = match family {
        Family::Quot | Family::Cleanse => 1,
        Family::App | Family::Abs | Family::Eval => 2,
        Family::Cond | Family::Sub => 3,
        _ => return Ok(Val::Unknown),
    };
    if n != expected {
        return Ok(Val::Unknown);
    }
    let mut vals = Vec::with_capacity(n);
    for a in &args {
        vals.push(eval_eps(a, d + 1)?);
    }
    let v = match strict(vals) {
        Ok(v) => v,
        Err(e) => return Ok(e),
    };
    Ok(match family {
        Family::Quot => Val::Def(Wff::quote(v[0].clone())),
        Family::App => mk_app(&v[0], &v[1]),
        Family::Abs => match &v[0] {
            Wff::Var(x) => Val::Def(Wff::abs(x.clone(), v[1].clone())),
            _ => Val::Undef,
        },
        Family::Cond => mk_cond(&v[0], &v[1], &v[2]),
        Family::Eval => match &v[1] {
            Wff::Var(t) if v[0].ty() == Type::Eps => {
                if &*t.name == TYPE_CARRIER {
                    Val::Def(Wff::eval(v[0].clone(), t.ty.clone()))
                } else {
                    Val::Unknown
                }
            }
            _ => Val::Undef,
        },
        Family::Cleanse => cleanse_d(&v[0], d + 1)?,
        Family::Sub => match &v[1] {
            Wff::Var(x) => subst_d(&v[0], x, &v[2], d + 1)?,
            _ => Val::Undef,
        },
        _ => Val::Unknown,
    })
}

fn pair_component(p: &Wff, first: bool, d: usize) -> R<Val> {
    let Some((a, b)) = sugar::as_pair(p) else { return Ok(Val::Unknown) };
    if a.ty() != Type::Eps || b.ty() != Type::Eps {
        return Ok(Val::Unknown);
    }
    let (va, vb) = (eval_eps(a, d + 1)?, eval_eps(b, d + 1)?);
    Ok(match strict(vec![va, vb]) {
        Ok(v) => Val::Def(if first { v[0].clone() } else { v[1].clone() }),
        Err(e) => e,
    })
}

/// Replaces free occurrences of `x` in an evaluation-free `w` by the closed `r`.
fn replace_free(w: &Wff, x: &Var, r: &Wff) -> Wff {
    match w {
        Wff::Var(v) if v == x => r.clone(),
        Wff::Var(_) | Wff::Const(_) | Wff::Quote(_) => w.clone(),
        Wff::App(f, a) => Wff::app(replace_free(f, x, r), replace_free(a, x, r)),
        Wff::Abs(y, _) if y == x => w.clone(),
        Wff::Abs(y, b) => Wff::abs(y.clone(), replace_free(b, x, r)),
        Wff::Cond(t, a, b) => {
            Wff::cond(replace_free(t, x, r), replace_free(a, x, r), replace_free(b, x, r))
        }
        Wff::Eval(a, t) => Wff::eval(replace_free(a, x, r), t.clone()),
    }
}

/// Truth value of a type-o expression over constructions.
pub(crate) fn decide_d(f: &Wff, d: usize) -> R<TriState> {
    depth_check(d)?;
    let d1 = d + 1;
    if sugar::is_t(f) {
        return Ok(TriState::True);
    }
    if sugar::is_f(f) {
        return Ok(TriState::False);
    }
    if let Some(a) = sugar::as_not(f) {
        return Ok(decide_d(a, d1)?.not());
    }
    if let Some((a, b)) = sugar::as_or(f) {
        return Ok(decide_d(a, d1)?.or(decide_d(b, d1)?));
    }
    if let Some((a, b)) = sugar::as_implies(f) {
        return Ok(decide_d(a, d1)?.implies(decide_d(b, d1)?));
    }
    if let Some((a, b)) = sugar::as_and(f) {
        return Ok(decide_d(a, d1)?.and(decide_d(b, d1)?));
    }
    if let Some((k, alpha, a)) = sugar::as_base_pred(f) {
        return Ok(match eval_eps(a, d1)? {
            Val::Def(e) => {
                let base = match k {
                    sugar::BaseKind::Var => is_var(&e),
                    sugar::BaseKind::Con => is_con(&e),
                    sugar::BaseKind::EvalFree => e.is_evaluation_free(),
                };
                TriState::from_bool(base && wff_ty(&e) == Some(alpha))
            }
            Val::Undef => TriState::False,
            Val::Unknown => TriState::Unknown,
        });
    }
    if let Some(a) = sugar::as_syn_closed(f) {
        return Ok(match eval_eps(a, d1)? {
            Val::Def(e) => syn_closed(&e, d1)?,
            Val::Undef => TriState::False,
            Val::Unknown => TriState::Unknown,
        });
    }
    if let Some((a, b)) = sugar::as_eq(f) {
        let ty = a.ty();
        if ty == Type::O {
            return Ok(decide_d(a, d1)?.iff(decide_d(b, d1)?));
        }
        if ty == Type::Eps {
            return Ok(match (eval_eps(a, d1)?, eval_eps(b, d1)?) {
                (Val::Undef, _) | (_, Val::Undef) => TriState::False,
                (Val::Def(x), Val::Def(y)) => TriState::from_bool(x == y),
                _ => TriState::Unknown,
            });
        }
        return Ok(TriState::Unknown);
    }
    match f {
        Wff::Cond(t, a, b) => {
            return match decide_d(t, d1)? {
                TriState::True => decide_d(a, d1),
                TriState::False => decide_d(b, d1),
                TriState::Unknown => Ok(TriState::Unknown),
            }
        }
        Wff::Eval(a, _) => {
            return Ok(match eval_eps(a, d1)? {
                Val::Def(e) => {
                    if e.is_evaluation_free() && wff_ty(&e) == Some(Type::O) {
                        decide_d(&e, d1)?
                    } else {
                        TriState::False
                    }
                }
                Val::Undef => TriState::False,
                Val::Unknown => TriState::Unknown,
            })
        }
        _ => {}
    }
    let (head, args) = f.spine();
    let Wff::Const(c) = head else { return Ok(TriState::Unknown) };
    let Some(family) = logical_family(c) else { return Ok(TriState::Unknown) };
    let arity = match family {
        Family::Var | Family::Con | Family::EvalFree | Family::Wff(_) => 1,
        Family::NotFreeIn => 2,
        _ => return Ok(TriState::Unknown),
    };
    if args.len() != arity {
        return Ok(TriState::Unknown);
    }
    let mut vals = Vec::with_capacity(arity);
    for a in &args {
        vals.push(eval_eps(a, d1)?);
    }
    let v = match strict(vals) {
        Ok(v) => v,
        Err(Val::Undef) => return Ok(TriState::False),
        Err(_) => return Ok(TriState::Unknown),
    };
    Ok(match family {
        Family::Var => TriState::from_bool(is_var(&v[0])),
        Family::Con => TriState::from_bool(is_con(&v[0])),
        Family::EvalFree => TriState::from_bool(v[0].is_evaluation_free()),
        Family::Wff(alpha) => TriState::from_bool(wff_ty(&v[0]) == Some(alpha)),
        Family::NotFreeIn => match &v[0] {
            Wff::Var(x) => nfi(x, &v[1], d1)?,
            _ => TriState::True,
        },
        _ => TriState::Unknown,
    })
}

// Construction-level API.

/// `var` on a construction: the represented wff is a variable.
pub fn syn_var_p(c: &Construction) -> bool {
    is_var(&c.decoded)
}

/// `con` on a construction: the represented wff is a primitive constant.
pub fn syn_con_p(c: &Construction) -> bool {
    is_con(&c.decoded)
}

/// The unique type `alpha` with `wff^alpha` true of `c`.
pub fn wff_type(c: &Construction) -> Option<Type> {
    wff_ty(&c.decoded)
}

/// `eval-free` on a construction.
pub fn eval_free_p(c: &Construction) -> bool {
    c.decoded.is_evaluation_free()
}

/// `not-free-in v c`; true when `v` does not represent a variable.
pub fn not_free_in(v: &Construction, c: &Construction) -> R<TriState> {
    match &v.decoded {
        Wff::Var(x) => nfi(x, &c.decoded, 0),
        _ => Ok(TriState::True),
    }
}

/// `syn-closed c`.
pub fn syn_closed_p(c: &Construction) -> R<TriState> {
    syn_closed(&c.decoded, 0)
}

/// `cleanse c`.
pub fn cleanse(c: &Construction) -> R<PartialResult> {
    Ok(cleanse_d(&c.decoded, 0)?.into_result())
}

/// `sub a x c`: substitute the wff represented by `a` for the variable
/// represented by `x` in the wff represented by `c`.
pub fn subst(a: &Construction, x: &Construction, c: &Construction) -> R<PartialResult> {
    match &x.decoded {
        Wff::Var(v) => Ok(subst_d(&a.decoded, v, &c.decoded, 0)?.into_result()),
        _ => Ok(PartialResult::Undefined),
    }
}

// Expression-level API.

/// Value of a type-eps expression built from literals, constructor constants,
/// conditionals, `cleanse` and `sub`.
pub fn epsilon_eval(w: &Wff) -> R<PartialResult> {
    Ok(eval_eps(w, 0)?.into_result())
}

/// Truth value of a type-o expression over constructions, in Kleene logic.
pub fn decide(f: &Wff) -> R<TriState> {
    decide_d(f, 0)
}

/// `syn-closed` of the value of a type-eps expression.
pub fn syn_closed_expr(w: &Wff) -> R<TriState> {
    Ok(match eval_eps(w, 0)? {
        Val::Def(e) => syn_closed(&e, 1)?,
        Val::Undef => TriState::False,
        Val::Unknown => TriState::Unknown,
    })
}
