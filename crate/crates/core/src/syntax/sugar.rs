//! Constructors and recognizers for the defined constants and abbreviations.
//!
//! Every constructor produces the exact expansion; every recognizer is its
//! partial inverse. Closed combinators bind reserved names `%0`, `%1`, `%2`.

use std::sync::OnceLock;

use super::signature::{iota, logical, pair_const, q, wff_pred, Family};
use super::typecheck::TypeError;
use super::types::Type;
use super::wff::{Var, Wff};

fn rv(i: usize, ty: Type) -> Var {
    Var::new(&format!("%{}", i), ty)
}

fn ooo() -> Type {
    Type::curried(Type::O, &[Type::O, Type::O])
}

/// `Q_{o alpha alpha} a b`.
pub fn eq(a: Wff, b: Wff) -> Wff {
    let t = a.ty();
    Wff::app2(q(t), a, b)
}

/// `a == b` at type o.
pub fn equiv(a: Wff, b: Wff) -> Wff {
    eq(a, b)
}

/// `T_o`: `Q_ooo = Q_ooo`.
pub fn t() -> Wff {
    static C: OnceLock<Wff> = OnceLock::new();
    C.get_or_init(|| eq(q(Type::O), q(Type::O))).clone()
}

/// `F_o`: `[lambda x_o T] = [lambda x_o x_o]`.
pub fn f() -> Wff {
    static C: OnceLock<Wff> = OnceLock::new();
    C.get_or_init(|| {
        let x = rv(0, Type::O);
        eq(Wff::abs(x.clone(), t()), Wff::abs(x.clone(), Wff::Var(x)))
    })
    .clone()
}

/// `forall x A`: `[lambda x T] = [lambda x A]`.
pub fn forall(x: Var, a: Wff) -> Wff {
    eq(Wff::abs(x.clone(), t()), Wff::abs(x, a))
}

fn and_comb() -> &'static Wff {
    static C: OnceLock<Wff> = OnceLock::new();
    C.get_or_init(|| {
        let x = rv(0, Type::O);
        let y = rv(1, Type::O);
        let g = rv(2, ooo());
        let lhs = Wff::abs(g.clone(), Wff::app2(Wff::Var(g.clone()), t(), t()));
        let rhs = Wff::abs(g.clone(), Wff::app2(Wff::Var(g), Wff::Var(x.clone()), Wff::Var(y.clone())));
        Wff::abs(x, Wff::abs(y, eq(lhs, rhs)))
    })
}

/// `a & b`.
pub fn and(a: Wff, b: Wff) -> Wff {
    Wff::app2(and_comb().clone(), a, b)
}

fn imp_comb() -> &'static Wff {
    static C: OnceLock<Wff> = OnceLock::new();
    C.get_or_init(|| {
        let x = rv(0, Type::O);
        let y = rv(1, Type::O);
        let body = eq(Wff::Var(x.clone()), and(Wff::Var(x.clone()), Wff::Var(y.clone())));
        Wff::abs(x, Wff::abs(y, body))
    })
}

/// `a => b`.
pub fn implies(a: Wff, b: Wff) -> Wff {
    Wff::app2(imp_comb().clone(), a, b)
}

fn not_comb() -> &'static Wff {
    static C: OnceLock<Wff> = OnceLock::new();
    C.get_or_init(|| Wff::app(q(Type::O), f()))
}

/// `~ a`.
pub fn not(a: Wff) -> Wff {
    Wff::app(not_comb().clone(), a)
}

fn or_comb() -> &'static Wff {
    static C: OnceLock<Wff> = OnceLock::new();
    C.get_or_init(|| {
        let x = rv(0, Type::O);
        let y = rv(1, Type::O);
        let body = not(and(not(Wff::Var(x.clone())), not(Wff::Var(y.clone()))));
        Wff::abs(x, Wff::abs(y, body))
    })
}

/// `a | b`.
pub fn or(a: Wff, b: Wff) -> Wff {
    Wff::app2(or_comb().clone(), a, b)
}

/// `exists x A`: `~ forall x ~A`.
pub fn exists(x: Var, a: Wff) -> Wff {
    not(forall(x, not(a)))
}

/// `exists1 x A`: `exists x [[lambda x A] = Q x]`.
pub fn exists1(x: Var, a: Wff) -> Wff {
    let lam = Wff::abs(x.clone(), a);
    let qx = Wff::app(q(x.ty.clone()), Wff::Var(x.clone()));
    exists(x, eq(lam, qx))
}

/// `a != b`.
pub fn neq(a: Wff, b: Wff) -> Wff {
    not(eq(a, b))
}

/// `a !`: `a = a`.
pub fn defined(a: Wff) -> Wff {
    eq(a.clone(), a)
}

/// `a ?`: `~ a!`.
pub fn undefined(a: Wff) -> Wff {
    not(defined(a))
}

/// `a ~~ b`: `[a! | b!] => a = b`.
pub fn qeq(a: Wff, b: Wff) -> Wff {
    implies(or(defined(a.clone()), defined(b.clone())), eq(a, b))
}

/// `desc x A`: `iota [lambda x A]`, only for `x` not of type o.
pub fn desc(x: Var, a: Wff) -> Result<Wff, TypeError> {
    if x.ty == Type::O {
        return Err(TypeError::IllegalTypeParameter("description at type o".into()));
    }
    let alpha = x.ty.clone();
    Ok(Wff::app(iota(alpha), Wff::abs(x, a)))
}

/// `bot:alpha`: `F_o` at type o, else `desc x [x != x]`.
pub fn bottom(alpha: Type) -> Wff {
    if alpha == Type::O {
        return f();
    }
    let x = rv(0, alpha);
    desc(x.clone(), neq(Wff::Var(x.clone()), Wff::Var(x))).expect("non-o type")
}

/// `pair a b`.
pub fn pair(a: Wff, b: Wff) -> Wff {
    Wff::app2(pair_const(a.ty(), b.ty()), a, b)
}

/// `lambda z desc x exists y [z = pair x y]`; the first component type must not be o.
pub fn fst_comb(alpha: Type, beta: Type) -> Result<Wff, TypeError> {
    let z = rv(0, Type::pair(alpha.clone(), beta.clone()));
    let x = rv(1, alpha);
    let y = rv(2, beta);
    proj_comb(z, x.clone(), y.clone(), x, y)
}

/// `lambda z desc y exists x [z = pair x y]`; the second component type must not be o.
pub fn snd_comb(alpha: Type, beta: Type) -> Result<Wff, TypeError> {
    let z = rv(0, Type::pair(alpha.clone(), beta.clone()));
    let x = rv(1, alpha);
    let y = rv(2, beta);
    proj_comb(z, y.clone(), x.clone(), x, y)
}

fn proj_comb(z: Var, picked: Var, other: Var, x: Var, y: Var) -> Result<Wff, TypeError> {
    let inner = exists(other, eq(Wff::Var(z.clone()), pair(Wff::Var(x), Wff::Var(y))));
    Ok(Wff::abs(z, desc(picked, inner)?))
}

/// `fst a` for `a` of pair type.
pub fn fst(a: Wff) -> Result<Wff, TypeError> {
    let ty = a.ty();
    let (x, y) = ty
        .as_pair()
        .ok_or_else(|| TypeError::IllegalTypeParameter(format!("fst of non-pair type {}", ty)))?;
    Ok(Wff::app(fst_comb(x.clone(), y.clone())?, a))
}

/// `snd a` for `a` of pair type.
pub fn snd(a: Wff) -> Result<Wff, TypeError> {
    let ty = a.ty();
    let (x, y) = ty
        .as_pair()
        .ok_or_else(|| TypeError::IllegalTypeParameter(format!("snd of non-pair type {}", ty)))?;
    Ok(Wff::app(snd_comb(x.clone(), y.clone())?, a))
}

fn base_comb(base: Family, alpha: Type) -> Wff {
    let x = rv(0, Type::Eps);
    let body = and(
        Wff::app(logical(base), Wff::Var(x.clone())),
        Wff::app(wff_pred(alpha), Wff::Var(x.clone())),
    );
    Wff::abs(x, body)
}

/// The combinator `var^alpha`.
pub fn var_a_comb(alpha: Type) -> Wff {
    base_comb(Family::Var, alpha)
}

/// The combinator `con^alpha`.
pub fn con_a_comb(alpha: Type) -> Wff {
    base_comb(Family::Con, alpha)
}

/// The combinator `eval-free^alpha`.
pub fn eval_free_a_comb(alpha: Type) -> Wff {
    base_comb(Family::EvalFree, alpha)
}

/// `var^alpha a`.
pub fn var_a(alpha: Type, a: Wff) -> Wff {
    Wff::app(var_a_comb(alpha), a)
}

/// `con^alpha a`.
pub fn con_a(alpha: Type, a: Wff) -> Wff {
    Wff::app(con_a_comb(alpha), a)
}

/// `eval-free^alpha a`.
pub fn eval_free_a(alpha: Type, a: Wff) -> Wff {
    Wff::app(eval_free_a_comb(alpha), a)
}

/// The combinator `syn-closed`.
pub fn syn_closed_comb() -> &'static Wff {
    static C: OnceLock<Wff> = OnceLock::new();
    C.get_or_init(|| {
        let x = rv(0, Type::Eps);
        let y = rv(1, Type::Eps);
        let body = forall(
            y.clone(),
            implies(
                Wff::app(logical(Family::Var), Wff::Var(y.clone())),
                Wff::app2(logical(Family::NotFreeIn), Wff::Var(y), Wff::Var(x.clone())),
            ),
        );
        Wff::abs(x, body)
    })
}

/// `syn-closed a`.
pub fn syn_closed(a: Wff) -> Wff {
    Wff::app(syn_closed_comb().clone(), a)
}

// ---------------------------------------------------------------------------
// Recognizers

fn is_q(w: &Wff) -> bool {
    matches!(w, Wff::Const(c) if &*c.name == "Q")
}

/// `(a, b)` when `w` is `Q a b` at any type.
pub fn as_eq(w: &Wff) -> Option<(&Wff, &Wff)> {
    let (h, a, b) = w.as_app2()?;
    if is_q(h) {
        Some((a, b))
    } else {
        None
    }
}

/// `(a, b)` when `w` is an equality at type o.
pub fn as_equiv(w: &Wff) -> Option<(&Wff, &Wff)> {
    let (h, a, b) = w.as_app2()?;
    match h {
        Wff::Const(c) if &*c.name == "Q" && c.ty == Type::curried(Type::O, &[Type::O, Type::O]) => {
            Some((a, b))
        }
        _ => None,
    }
}

pub fn is_t(w: &Wff) -> bool {
    *w == t()
}

pub fn is_f(w: &Wff) -> bool {
    *w == f()
}

/// `(x, a)` when `w` is `forall x a`.
pub fn as_forall(w: &Wff) -> Option<(&Var, &Wff)> {
    let (l, r) = as_eq(w)?;
    match (l, r) {
        (Wff::Abs(x, tb), Wff::Abs(y, a)) if x == y && is_t(tb) => Some((y, a)),
        _ => None,
    }
}

fn as_binary<'a>(w: &'a Wff, comb: &Wff) -> Option<(&'a Wff, &'a Wff)> {
    let (h, a, b) = w.as_app2()?;
    if h == comb {
        Some((a, b))
    } else {
        None
    }
}

pub fn as_and(w: &Wff) -> Option<(&Wff, &Wff)> {
    as_binary(w, and_comb())
}

pub fn as_or(w: &Wff) -> Option<(&Wff, &Wff)> {
    as_binary(w, or_comb())
}

pub fn as_implies(w: &Wff) -> Option<(&Wff, &Wff)> {
    as_binary(w, imp_comb())
}

pub fn as_not(w: &Wff) -> Option<&Wff> {
    let (h, a) = w.as_app()?;
    if h == not_comb() {
        Some(a)
    } else {
        None
    }
}

/// `(x, a)` when `w` is `exists x a`.
pub fn as_exists(w: &Wff) -> Option<(&Var, &Wff)> {
    let (x, na) = as_forall(as_not(w)?)?;
    Some((x, as_not(na)?))
}

/// `(x, a)` when `w` is `exists1 x a`.
pub fn as_exists1(w: &Wff) -> Option<(&Var, &Wff)> {
    let (x, body) = as_exists(w)?;
    let (lam, qx) = as_eq(body)?;
    match (lam, qx) {
        (Wff::Abs(y, a), Wff::App(qc, xv)) if y == x && is_q(qc) && **xv == Wff::Var(x.clone()) => {
            Some((x, a))
        }
        _ => None,
    }
}

/// `a` when `w` is `a !`.
pub fn as_defined(w: &Wff) -> Option<&Wff> {
    let (a, b) = as_eq(w)?;
    if a == b {
        Some(a)
    } else {
        None
    }
}

/// `a` when `w` is `a ?`.
pub fn as_undefined(w: &Wff) -> Option<&Wff> {
    as_defined(as_not(w)?)
}

/// `(a, b)` when `w` is `a ~~ b`.
pub fn as_qeq(w: &Wff) -> Option<(&Wff, &Wff)> {
    let (ante, succ) = as_implies(w)?;
    let (da, db) = as_or(ante)?;
    let a = as_defined(da)?;
    let b = as_defined(db)?;
    let (l, r) = as_eq(succ)?;
    if l == a && r == b {
        Some((a, b))
    } else {
        None
    }
}

/// `(x, a)` when `w` is `desc x a`.
pub fn as_desc(w: &Wff) -> Option<(&Var, &Wff)> {
    let (h, lam) = w.as_app()?;
    match (h, lam) {
        (Wff::Const(c), Wff::Abs(x, a)) if &*c.name == "iota" => Some((x, a)),
        _ => None,
    }
}

/// The type of `w` when it is `bot:alpha` with `alpha != o`.
pub fn as_bottom(w: &Wff) -> Option<Type> {
    let (x, _) = as_desc(w)?;
    let b = bottom(x.ty.clone());
    if *w == b {
        Some(x.ty.clone())
    } else {
        None
    }
}

/// `(a, b)` when `w` is `pair a b`.
pub fn as_pair(w: &Wff) -> Option<(&Wff, &Wff)> {
    let (h, a, b) = w.as_app2()?;
    match h {
        Wff::Const(c) if &*c.name == "pair" => Some((a, b)),
        _ => None,
    }
}

fn as_comb_app<'a>(w: &'a Wff, build: impl Fn(&Type) -> Option<Wff>) -> Option<&'a Wff> {
    let (h, a) = w.as_app()?;
    let Wff::Abs(..) = h else { return None };
    let built = build(&a.ty())?;
    if *h == built {
        Some(a)
    } else {
        None
    }
}

/// `a` when `w` is `fst a`.
pub fn as_fst(w: &Wff) -> Option<&Wff> {
    as_comb_app(w, |t| t.as_pair().and_then(|(x, y)| fst_comb(x.clone(), y.clone()).ok()))
}

/// `a` when `w` is `snd a`.
pub fn as_snd(w: &Wff) -> Option<&Wff> {
    as_comb_app(w, |t| t.as_pair().and_then(|(x, y)| snd_comb(x.clone(), y.clone()).ok()))
}

/// Which of `var^alpha`, `con^alpha`, `eval-free^alpha` a combinator application is.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BaseKind {
    Var,
    Con,
    EvalFree,
}

impl BaseKind {
    pub fn keyword(self) -> &'static str {
        match self {
            BaseKind::Var => "var",
            BaseKind::Con => "con",
            BaseKind::EvalFree => "eval-free",
        }
    }

    pub fn comb(self, alpha: Type) -> Wff {
        match self {
            BaseKind::Var => var_a_comb(alpha),
            BaseKind::Con => con_a_comb(alpha),
            BaseKind::EvalFree => eval_free_a_comb(alpha),
        }
    }
}

/// `(kind, alpha, a)` when `w` is `var^alpha a`, `con^alpha a` or `eval-free^alpha a`.
pub fn as_base_pred(w: &Wff) -> Option<(BaseKind, Type, &Wff)> {
    let (h, a) = w.as_app()?;
    let Wff::Abs(x, body) = h else { return None };
    if x.ty != Type::Eps {
        return None;
    }
    let (l, r) = as_and(body)?;
    let (lh, _) = l.as_app()?;
    let (rh, _) = r.as_app()?;
    let kind = match lh.as_const().map(|c| &*c.name) {
        Some("var") => BaseKind::Var,
        Some("con") => BaseKind::Con,
        Some("eval-free") => BaseKind::EvalFree,
        _ => return None,
    };
    let alpha = match Family::of_name(&rh.as_const()?.name)? {
        Family::Wff(t) => t,
        _ => return None,
    };
    if *h == kind.comb(alpha.clone()) {
        Some((kind, alpha, a))
    } else {
        None
    }
}

/// `a` when `w` is `syn-closed a`.
pub fn as_syn_closed(w: &Wff) -> Option<&Wff> {
    let (h, a) = w.as_app()?;
    if h == syn_closed_comb() {
        Some(a)
    } else {
        None
    }
}

/// Left-nested conjunction of `parts`; `T` when empty.
pub fn conj(parts: Vec<Wff>) -> Wff {
    let mut it = parts.into_iter();
    match it.next() {
        None => t(),
        Some(first) => it.fold(first, and),
    }
}
