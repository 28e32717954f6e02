//! Directed rewriting with the computational content of the beta, conditional
//! and evaluation axioms, quotation canonicalization and the syntax
//! predicates; definedness analysis; the tautology check.

use std::collections::HashMap;

use crate::algebra::{self, AlgebraError, PartialResult, TriState};
use crate::encoding::{decode, encode, Construction};
use crate::syntax::signature::{logical_family, Family};
use crate::syntax::sugar::{self, BaseKind};
use crate::syntax::{type_of_open, Type, TypeError, Var, Wff};

/// Default rewrite budget.
pub const DEFAULT_FUEL: u64 = 100_000;

/// Outcome classification of a normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Status {
    Value,
    Bottom(Type),
    Stuck,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalForm {
    pub wff: Wff,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormError {
    #[error("fuel exhausted after {0} rewrites")]
    FuelExhausted(u64),
    #[error(transparent)]
    IllTyped(#[from] TypeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TautError {
    #[error("not a formula: type {0}")]
    NotFormula(Type),
    #[error("too many propositional atoms ({0})")]
    TooManyAtoms(usize),
}

type R<T> = Result<T, NormError>;

/// Forms whose Table-2 expansion is kept intact and handled as a unit.
enum View<'a> {
    Value,
    And(&'a Wff, &'a Wff),
    Or(&'a Wff, &'a Wff),
    Implies(&'a Wff, &'a Wff),
    Fst(&'a Wff),
    Snd(&'a Wff),
    BasePred(BaseKind, Type, &'a Wff),
    SynClosed(&'a Wff),
    Plain,
}

fn view(w: &Wff) -> View<'_> {
    if !matches!(w, Wff::App(..)) {
        return View::Plain;
    }
    if sugar::is_t(w) || sugar::is_f(w) || sugar::as_bottom(w).is_some() {
        return View::Value;
    }
    if let Some((a, b)) = sugar::as_or(w) {
        return View::Or(a, b);
    }
    if let Some((a, b)) = sugar::as_implies(w) {
        return View::Implies(a, b);
    }
    if let Some((a, b)) = sugar::as_and(w) {
        return View::And(a, b);
    }
    if let Some(p) = sugar::as_fst(w) {
        return View::Fst(p);
    }
    if let Some(p) = sugar::as_snd(w) {
        return View::Snd(p);
    }
    if let Some((k, t, a)) = sugar::as_base_pred(w) {
        return View::BasePred(k, t, a);
    }
    if let Some(a) = sugar::as_syn_closed(w) {
        return View::SynClosed(a);
    }
    View::Plain
}

fn is_bottom(w: &Wff) -> bool {
    sugar::as_bottom(w).is_some()
}

fn truth(w: &Wff) -> Option<bool> {
    if sugar::is_t(w) {
        Some(true)
    } else if sugar::is_f(w) {
        Some(false)
    } else {
        None
    }
}

fn bool_wff(b: bool) -> Wff {
    if b {
        sugar::t()
    } else {
        sugar::f()
    }
}

fn tri_wff(t: TriState) -> Option<Wff> {
    match t {
        TriState::True => Some(sugar::t()),
        TriState::False => Some(sugar::f()),
        TriState::Unknown => None,
    }
}

/// Syntactic definedness: variables, primitive constants, type-o wffs,
/// abstractions, quotations and literals are defined; `bot` is not.
pub fn defined_syntactic(w: &Wff) -> TriState {
    if w.ty() == Type::O {
        return TriState::True;
    }
    if is_bottom(w) {
        return TriState::False;
    }
    match w {
        Wff::Var(_) | Wff::Abs(..) | Wff::Quote(_) => TriState::True,
        Wff::Const(_) => TriState::True,
        _ if decode(w).is_some() => TriState::True,
        _ => match sugar::as_pair(w) {
            Some((a, b)) => defined_syntactic(a).and(defined_syntactic(b)),
            None => TriState::Unknown,
        },
    }
}

struct Normalizer {
    fuel: u64,
    used: u64,
}

impl Normalizer {
    fn tick(&mut self) -> R<()> {
        if self.used >= self.fuel {
            return Err(NormError::FuelExhausted(self.used));
        }
        self.used += 1;
        Ok(())
    }

    fn norm(&mut self, w: Wff) -> R<Wff> {
        let mut w = w;
        loop {
            if let Some(n) = self.root(&w)? {
                self.tick()?;
                w = n;
                continue;
            }
            let n = self.children(&w)?;
            if n == w {
                return Ok(w);
            }
            match self.root(&n)? {
                Some(m) => {
                    self.tick()?;
                    w = m;
                }
                None => return Ok(n),
            }
        }
    }

    fn children(&mut self, w: &Wff) -> R<Wff> {
        Ok(match view(w) {
            View::Value => w.clone(),
            View::And(a, b) => sugar::and(self.norm(a.clone())?, self.norm(b.clone())?),
            View::Or(a, b) => sugar::or(self.norm(a.clone())?, self.norm(b.clone())?),
            View::Implies(a, b) => sugar::implies(self.norm(a.clone())?, self.norm(b.clone())?),
            View::Fst(p) => sugar::fst(self.norm(p.clone())?)?,
            View::Snd(p) => sugar::snd(self.norm(p.clone())?)?,
            View::BasePred(k, t, a) => Wff::app(k.comb(t), self.norm(a.clone())?),
            View::SynClosed(a) => sugar::syn_closed(self.norm(a.clone())?),
            View::Plain => match w {
                Wff::Var(_) | Wff::Const(_) | Wff::Quote(_) => w.clone(),
                Wff::App(f, a) => Wff::app(self.norm((**f).clone())?, self.norm((**a).clone())?),
                Wff::Abs(x, b) => Wff::abs(x.clone(), self.norm((**b).clone())?),
                Wff::Cond(t, a, b) => {
                    let t2 = self.norm((**t).clone())?;
                    if truth(&t2).is_some() {
                        Wff::cond(t2, (**a).clone(), (**b).clone())
                    } else {
                        Wff::cond(t2, self.norm((**a).clone())?, self.norm((**b).clone())?)
                    }
                }
                Wff::Eval(a, t) => Wff::eval(self.norm((**a).clone())?, t.clone()),
            },
        })
    }

    /// One rewrite at the root, if a rule applies.
    fn root(&mut self, w: &Wff) -> R<Option<Wff>> {
        match view(w) {
            View::Value => return Ok(None),
            View::And(a, b) => {
                return Ok(match (truth(a), truth(b)) {
                    (Some(false), _) | (_, Some(false)) => Some(sugar::f()),
                    (Some(true), _) => Some(b.clone()),
                    (_, Some(true)) => Some(a.clone()),
                    _ => None,
                })
            }
            View::Or(a, b) => {
                return Ok(match (truth(a), truth(b)) {
                    (Some(true), _) | (_, Some(true)) => Some(sugar::t()),
                    (Some(false), _) => Some(b.clone()),
                    (_, Some(false)) => Some(a.clone()),
                    _ => None,
                })
            }
            View::Implies(a, b) => {
                return Ok(match (truth(a), truth(b)) {
                    (Some(false), _) | (_, Some(true)) => Some(sugar::t()),
                    (Some(true), _) => Some(b.clone()),
                    (_, Some(false)) => Some(sugar::not(a.clone())),
                    _ => None,
                })
            }
            View::Fst(p) | View::Snd(p) => {
                let first = matches!(view(w), View::Fst(_));
                if is_bottom(p) {
                    return Ok(Some(sugar::bottom(w.ty())));
                }
                let Some((a, b)) = sugar::as_pair(p) else { return Ok(None) };
                if is_bottom(a) || is_bottom(b) {
                    return Ok(Some(sugar::bottom(w.ty())));
                }
                let both = defined_syntactic(a).and(defined_syntactic(b));
                return Ok(if both == TriState::True {
                    Some(if first { a.clone() } else { b.clone() })
                } else {
                    None
                });
            }
            View::BasePred(..) | View::SynClosed(_) => {
                let (_, a) = w.as_app().expect("application");
                if is_bottom(a) {
                    return Ok(Some(sugar::f()));
                }
                if decode(a).is_none() {
                    return Ok(None);
                }
                return Ok(tri_wff(algebra::decide(w)?));
            }
            View::Plain => {}
        }
        match w {
            Wff::Var(_) | Wff::Const(_) | Wff::Abs(..) => Ok(None),
            Wff::Quote(a) => Ok(if a.is_atom() { None } else { Some(encode(a)) }),
            Wff::Cond(t, a, b) => Ok(match truth(t) {
                Some(true) => Some((**a).clone()),
                Some(false) => Some((**b).clone()),
                None => None,
            }),
            Wff::Eval(a, alpha) => Ok(self.eval_rule(a, alpha)),
            Wff::App(f, a) => match pattern_rule(w) {
                Some(n) => Ok(Some(n)),
                None => self.app_rule(w, f, a),
            },
        }
    }

    fn eval_rule(&self, a: &Wff, alpha: &Type) -> Option<Wff> {
        if let Some(d) = decode(a) {
            let ok = d.is_evaluation_free() && type_of_open(&d).ok().as_ref() == Some(alpha);
            return Some(if ok { d } else { sugar::bottom(alpha.clone()) });
        }
        if is_bottom(a) {
            return Some(sugar::bottom(alpha.clone()));
        }
        if let Wff::Cond(t, b, c) = a {
            return Some(Wff::cond(
                (**t).clone(),
                Wff::eval((**b).clone(), alpha.clone()),
                Wff::eval((**c).clone(), alpha.clone()),
            ));
        }
        None
    }

    fn app_rule(&mut self, w: &Wff, f: &Wff, a: &Wff) -> R<Option<Wff>> {
        if decode(w).is_some() {
            return Ok(None);
        }
        if is_bottom(f) || is_bottom(a) {
            return Ok(Some(sugar::bottom(w.ty())));
        }
        if let Wff::Abs(x, body) = f {
            return self.beta(x, body, a);
        }
        if let Some((l, r)) = sugar::as_eq(w) {
            return self.eq_rule(l, r);
        }
        let (head, args) = w.spine();
        let Wff::Const(c) = head else { return Ok(None) };
        let Some(family) = logical_family(c) else { return Ok(None) };
        let Some(arity) = arity(&family) else { return Ok(None) };
        if args.len() != arity || !args.iter().all(|x| decode(x).is_some()) {
            return Ok(None);
        }
        if w.ty() == Type::O {
            return Ok(tri_wff(algebra::decide(w)?));
        }
        Ok(match algebra::epsilon_eval(w)? {
            PartialResult::Defined(c) => Some(c.literal),
            PartialResult::Undefined => Some(sugar::bottom(Type::Eps)),
            PartialResult::Unknown => None,
        })
    }

    fn eq_rule(&mut self, l: &Wff, r: &Wff) -> R<Option<Wff>> {
        let ty = l.ty();
        if ty == Type::O {
            return Ok(match (truth(l), truth(r)) {
                (Some(x), Some(y)) => Some(bool_wff(x == y)),
                _ if l == r => Some(sugar::t()),
                (Some(true), _) => Some(r.clone()),
                (_, Some(true)) => Some(l.clone()),
                _ => None,
            });
        }
        if is_bottom(l) || is_bottom(r) {
            return Ok(Some(sugar::f()));
        }
        if let (Some(x), Some(y)) = (decode(l), decode(r)) {
            return Ok(Some(bool_wff(x == y)));
        }
        if l == r && defined_syntactic(l) == TriState::True {
            return Ok(Some(sugar::t()));
        }
        Ok(None)
    }

    fn beta(&mut self, x: &Var, body: &Wff, a: &Wff) -> R<Option<Wff>> {
        let redex = |b: &Wff| Wff::app(Wff::abs(x.clone(), b.clone()), a.clone());
        if *body == Wff::Var(x.clone()) {
            return Ok(Some(a.clone()));
        }
        if *a == Wff::Var(x.clone()) {
            return Ok(Some(body.clone()));
        }
        let def = defined_syntactic(a);
        if def == TriState::True {
            match body {
                Wff::Var(_) | Wff::Const(_) | Wff::Quote(_) => return Ok(Some(body.clone())),
                Wff::Abs(y, _) if y == x => return Ok(Some(body.clone())),
                Wff::Abs(y, d) => {
                    let side = algebra::nfi(x, d, 0)?.or(algebra::nfi(y, a, 0)?);
                    if side == TriState::True {
                        return Ok(Some(Wff::abs(y.clone(), redex(d))));
                    }
                }
                _ => {}
            }
            let (ca, cx, cb) = (Construction::of(a), Construction::of(&Wff::Var(x.clone())), Construction::of(body));
            if let PartialResult::Defined(c) = algebra::subst(&ca, &cx, &cb)? {
                return Ok(Some(c.decoded));
            }
        }
        Ok(match body {
            Wff::App(f, c) => Some(Wff::app(redex(f), redex(c))),
            Wff::Cond(t, p, q) => Some(Wff::cond(redex(t), redex(p), redex(q))),
            _ => None,
        })
    }
}

/// Solves `desc x. exists ys. [L = P]` and `exists ys. [L = P]` when `L` is a
/// literal and `P` is built from syntax constructors over the bound type-eps
/// variables, using that constructions are equal iff they are built alike.
fn pattern_rule(w: &Wff) -> Option<Wff> {
    let (desc, mut body) = match (sugar::as_desc(w), sugar::as_exists(w)) {
        (Some((x, b)), _) => (Some(x), b),
        (_, Some(_)) => (None, w),
        _ => return None,
    };
    if let Some(x) = desc {
        if *body == sugar::f() {
            return Some(sugar::bottom(x.ty.clone()));
        }
    }
    let mut vars: Vec<Var> = desc.into_iter().cloned().collect();
    while let Some((y, b)) = sugar::as_exists(body) {
        vars.push(y.clone());
        body = b;
    }
    if vars.iter().any(|v| v.ty != Type::Eps) {
        return None;
    }
    let (l, r) = sugar::as_eq(body)?;
    let (lit, pat) = if decode(l).is_some() { (l, r) } else { (r, l) };
    decode(lit)?;
    let mut env = HashMap::new();
    let matched = match_pattern(lit, pat, &vars, &mut env)?;
    Some(match desc {
        None => bool_wff(matched),
        Some(x) => match env.get(x) {
            Some(v) if matched => v.clone(),
            _ => sugar::bottom(Type::Eps),
        },
    })
}

/// `Some(true)` if the literal matches the pattern (extending `env`), `Some(false)`
/// if it cannot match, `None` if the pattern is not in constructor form.
fn match_pattern(lit: &Wff, pat: &Wff, vars: &[Var], env: &mut HashMap<Var, Wff>) -> Option<bool> {
    if let Wff::Var(v) = pat {
        if vars.contains(v) {
            if let Some(b) = env.get(v) {
                return Some(b == lit);
            }
            env.insert(v.clone(), lit.clone());
            return Some(true);
        }
    }
    if decode(pat).is_some() {
        return Some(pat == lit);
    }
    let constructor = |w: &Wff| -> Option<(Family, Vec<Wff>)> {
        let (head, args) = w.spine();
        let fam = logical_family(head.as_const()?)?;
        let n = match fam {
            Family::Quot => 1,
            Family::App | Family::Abs | Family::Eval => 2,
            Family::Cond => 3,
            _ => return None,
        };
        (args.len() == n).then(|| (fam, args.into_iter().cloned().collect()))
    };
    let (pf, pargs) = constructor(pat)?;
    let Some((lf, largs)) = constructor(lit) else { return Some(false) };
    if pf != lf {
        return Some(false);
    }
    let mut unknown = false;
    for (l, p) in largs.iter().zip(&pargs) {
        match match_pattern(l, p, vars, env) {
            Some(false) => return Some(false),
            None => unknown = true,
            Some(true) => {}
        }
    }
    if unknown {
        None
    } else {
        Some(true)
    }
}

/// Number of arguments at which a syntax-algebra constant computes.
fn arity(f: &Family) -> Option<usize> {
    Some(match f {
        Family::Var | Family::Con | Family::EvalFree | Family::Wff(_) | Family::Quot | Family::Cleanse => 1,
        Family::NotFreeIn | Family::App | Family::Abs | Family::Eval => 2,
        Family::Cond | Family::Sub => 3,
        Family::Q | Family::Iota | Family::Pair => return None,
    })
}

/// True iff some subterm is a redex shape the normalizer could not resolve.
fn blocked(w: &Wff) -> bool {
    match view(w) {
        View::Value => return false,
        View::And(a, b) | View::Or(a, b) | View::Implies(a, b) => return blocked(a) || blocked(b),
        View::Fst(_) | View::Snd(_) | View::BasePred(..) | View::SynClosed(_) => return true,
        View::Plain => {}
    }
    match w {
        Wff::Var(_) | Wff::Const(_) | Wff::Quote(_) => false,
        Wff::Abs(_, b) => blocked(b),
        Wff::Cond(t, a, b) => blocked(t) || blocked(a) || blocked(b),
        Wff::Eval(..) => true,
        Wff::App(f, a) => {
            if decode(w).is_some() {
                return false;
            }
            if matches!(**f, Wff::Abs(..)) {
                return true;
            }
            let (head, args) = w.spine();
            if let Some(n) = head.as_const().and_then(logical_family).as_ref().and_then(arity) {
                if args.len() == n {
                    return true;
                }
            }
            blocked(f) || blocked(a)
        }
    }
}

/// Normalizes a well-typed wff.
pub fn normalize(w: &Wff, fuel: u64) -> R<NormalForm> {
    type_of_open(w)?;
    let mut n = Normalizer { fuel, used: 0 };
    let out = n.norm(w.clone())?;
    let status = if let Some(t) = sugar::as_bottom(&out) {
        Status::Bottom(t)
    } else if blocked(&out) {
        Status::Stuck
    } else {
        Status::Value
    };
    Ok(NormalForm { wff: out, status })
}

/// Definedness of a well-typed wff.
pub fn is_defined(w: &Wff) -> TriState {
    match defined_syntactic(w) {
        TriState::Unknown => {}
        known => return known,
    }
    match normalize(w, DEFAULT_FUEL) {
        Ok(nf) => match nf.status {
            Status::Bottom(_) => TriState::False,
            _ => defined_syntactic(&nf.wff),
        },
        Err(_) => TriState::Unknown,
    }
}

/// Structural equality of the wffs two literals represent.
pub fn literal_equal(a: &Wff, b: &Wff) -> bool {
    let ca = crate::encoding::canonicalize(a);
    let cb = crate::encoding::canonicalize(b);
    match (decode(&ca), decode(&cb)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

/// Maximum number of distinct propositional atoms `taut_check` enumerates.
pub const MAX_ATOMS: usize = 20;

enum Skel {
    Const(bool),
    Atom(usize),
    Not(Box<Skel>),
    And(Box<Skel>, Box<Skel>),
    Or(Box<Skel>, Box<Skel>),
    Implies(Box<Skel>, Box<Skel>),
    Iff(Box<Skel>, Box<Skel>),
}

fn skeleton(w: &Wff, atoms: &mut HashMap<Wff, usize>) -> Skel {
    let bx = |s: Skel| Box::new(s);
    if let Some(b) = truth(w) {
        return Skel::Const(b);
    }
    if let Some(a) = sugar::as_not(w) {
        return Skel::Not(bx(skeleton(a, atoms)));
    }
    if let Some((a, b)) = sugar::as_or(w) {
        return Skel::Or(bx(skeleton(a, atoms)), bx(skeleton(b, atoms)));
    }
    if let Some((a, b)) = sugar::as_implies(w) {
        return Skel::Implies(bx(skeleton(a, atoms)), bx(skeleton(b, atoms)));
    }
    if let Some((a, b)) = sugar::as_and(w) {
        return Skel::And(bx(skeleton(a, atoms)), bx(skeleton(b, atoms)));
    }
    if let Some((a, b)) = sugar::as_equiv(w) {
        return Skel::Iff(bx(skeleton(a, atoms)), bx(skeleton(b, atoms)));
    }
    let n = atoms.len();
    Skel::Atom(*atoms.entry(w.clone()).or_insert(n))
}

fn eval_skel(s: &Skel, bits: u64) -> bool {
    match s {
        Skel::Const(b) => *b,
        Skel::Atom(i) => bits >> i & 1 == 1,
        Skel::Not(a) => !eval_skel(a, bits),
        Skel::And(a, b) => eval_skel(a, bits) && eval_skel(b, bits),
        Skel::Or(a, b) => eval_skel(a, bits) || eval_skel(b, bits),
        Skel::Implies(a, b) => !eval_skel(a, bits) || eval_skel(b, bits),
        Skel::Iff(a, b) => eval_skel(a, bits) == eval_skel(b, bits),
    }
}

/// True iff `w` is a propositional tautology over its maximal non-connective subformulas.
pub fn taut_check(w: &Wff) -> Result<bool, TautError> {
    let ty = w.ty();
    if ty != Type::O {
        return Err(TautError::NotFormula(ty));
    }
    let mut atoms = HashMap::new();
    let s = skeleton(w, &mut atoms);
    if atoms.len() > MAX_ATOMS {
        return Err(TautError::TooManyAtoms(atoms.len()));
    }
    Ok((0..1u64 << atoms.len()).all(|bits| eval_skel(&s, bits)))
}
