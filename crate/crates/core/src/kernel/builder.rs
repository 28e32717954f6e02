//! Incremental proof construction and derived rules that elaborate into primitive lines.
//!
//! Every line is produced by [`derive`], so a builder can only hold lines that
//! check; the elaborations are never trusted.

use std::collections::HashMap;

use crate::algebra::{self, PartialResult, TriState};
use crate::encoding::{canonicalize, decode, encode, Construction};
use crate::syntax::signature::{logical, q, Family};
use crate::syntax::{sugar, Path, Step, Type, Var, Wff};

use super::{derive, equation_sides, Justification, KernelError, Line, Param, Params, Proof, Theory};

type R<T> = Result<T, KernelError>;

fn pw(name: &str, w: Wff) -> (String, Param) {
    (name.to_string(), Param::Wff(w))
}

fn pt(name: &str, t: Type) -> (String, Param) {
    (name.to_string(), Param::Type(t))
}

fn qv(v: &Var) -> Wff {
    Wff::quote(Wff::Var(v.clone()))
}

fn nfi(a: Wff, b: Wff) -> Wff {
    Wff::app2(logical(Family::NotFreeIn), a, b)
}

/// Which side of an equation a rewrite addresses.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Lhs,
    Rhs,
}

/// Paths of every occurrence of the `side` of the equation `w`.
fn side_paths(w: &Wff, side: Side) -> R<Vec<Path>> {
    let (l, r) = equation_sides(w).ok_or(KernelError::NotAnEquation)?;
    let hl = Wff::var("%lhs", l.ty());
    let hr = Wff::var("%rhs", r.ty());
    let skeleton = if sugar::as_qeq(w).is_some() { sugar::qeq(hl.clone(), hr.clone()) } else { sugar::eq(hl.clone(), hr.clone()) };
    Ok(skeleton.legal_occurrences(if side == Side::Lhs { &hl } else { &hr }))
}

/// Builds a proof line by line.
pub struct ProofBuilder<'t> {
    theory: &'t Theory,
    lines: Vec<Line>,
    proved: Vec<Option<Wff>>,
    index: HashMap<Wff, usize>,
    beta_cache: HashMap<Wff, usize>,
}

impl<'t> ProofBuilder<'t> {
    pub fn new(theory: &'t Theory) -> ProofBuilder<'t> {
        ProofBuilder { theory, lines: Vec::new(), proved: Vec::new(), index: HashMap::new(), beta_cache: HashMap::new() }
    }

    pub fn theory(&self) -> &Theory {
        self.theory
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// The wff of 1-based line `n`.
    pub fn wff(&self, n: usize) -> &Wff {
        &self.lines[n - 1].wff
    }

    /// The line proving `w`, if any.
    pub fn find(&self, w: &Wff) -> Option<usize> {
        self.index.get(&canonicalize(w)).copied()
    }

    pub fn into_proof(self) -> Proof {
        Proof { lines: self.lines }
    }

    /// Appends the line derived by `just`, or returns an existing line with the same wff.
    pub fn push(&mut self, just: Justification) -> R<usize> {
        let n = self.lines.len() + 1;
        let w = derive(self.theory, &self.proved, n, &just)?;
        if let Some(&k) = self.index.get(&w) {
            return Ok(k);
        }
        self.index.insert(w.clone(), n);
        self.proved.push(Some(w.clone()));
        self.lines.push(Line { wff: w, just });
        Ok(n)
    }

    pub fn hyp(&mut self, k: usize) -> R<usize> {
        self.push(Justification::Hyp(k))
    }

    pub fn axiom(&mut self, id: &str, params: Params) -> R<usize> {
        self.push(Justification::Axiom { id: id.to_string(), params })
    }

    pub fn rule1(&mut self, eq: usize, target: usize, path: Path) -> R<usize> {
        self.push(Justification::Rule1 { eq, target, path })
    }

    pub fn rule2(&mut self, imp: usize, ante: usize) -> R<usize> {
        self.push(Justification::Rule2 { imp, ante })
    }

    /// Proves `goal` from `premises` when `P1 => (... => goal)` is a tautology.
    pub fn taut(&mut self, premises: &[usize], goal: Wff) -> R<usize> {
        let goal = canonicalize(&goal);
        if let Some(&k) = self.index.get(&goal) {
            return Ok(k);
        }
        let chain = premises.iter().rev().fold(goal, |acc, &p| sugar::implies(self.wff(p).clone(), acc));
        let mut cur = self.axiom("5", vec![pw("A", chain)])?;
        for &p in premises {
            cur = self.rule2(cur, p)?;
        }
        Ok(cur)
    }

    /// The line `T`.
    pub fn truth(&mut self) -> R<usize> {
        self.axiom("6.2", vec![pw("c", q(Type::O))])
    }

    /// Rewrites with the equation on line `eq` at every occurrence of one side of
    /// the equation on line `target`, extended by `suffix`.
    fn rewrite(&mut self, eq: usize, target: usize, side: Side, suffix: &[Step]) -> R<usize> {
        let mut cur = target;
        for p in side_paths(self.wff(target), side)? {
            let mut steps = p.0.clone();
            steps.extend_from_slice(suffix);
            cur = self.rule1(eq, cur, Path(steps))?;
        }
        Ok(cur)
    }

    /// The right side of the equation on line `n`.
    fn rhs(&self, n: usize) -> Wff {
        equation_sides(self.wff(n)).expect("equation line").1.clone()
    }

    /// Proves `A!` for the wff `a` from the definedness axioms.
    pub fn defined(&mut self, a: &Wff) -> R<usize> {
        let a = canonicalize(a);
        let goal = sugar::defined(a.clone());
        if let Some(&k) = self.index.get(&goal) {
            return Ok(k);
        }
        match &a {
            Wff::Var(x) => return self.axiom("6.1", vec![pw("x", Wff::Var(x.clone()))]),
            Wff::Const(_) => return self.axiom("6.2", vec![pw("c", a.clone())]),
            _ => {}
        }
        if let Some(d) = decode(&a) {
            return self.axiom("6.7", vec![pw("A", d)]);
        }
        match &a {
            Wff::App(f, x) if a.ty() == Type::O => {
                self.axiom("6.3", vec![pw("A", (**f).clone()), pw("B", (**x).clone())])
            }
            Wff::Cond(t, x, y) if a.ty() == Type::O => self.axiom(
                "6.6",
                vec![pw("A", (**t).clone()), pw("B", (**x).clone()), pw("C", (**y).clone())],
            ),
            Wff::Eval(b, Type::O) => self.axiom("6.8", vec![pw("A", (**b).clone())]),
            Wff::Abs(x, b) => self.axiom("6.5", vec![pw("x", Wff::Var(x.clone())), pw("B", (**b).clone())]),
            Wff::Eval(b, Type::Eps) => match decode(b).as_ref().and_then(decode) {
                Some(inner) => self.axiom("6.9", vec![pw("A", inner)]),
                None => Err(KernelError::PreconditionNotDischarged(format!(
                    "definedness of {}",
                    crate::syntax::display(&a)
                ))),
            },
            _ => Err(KernelError::PreconditionNotDischarged(format!(
                "definedness of {}",
                crate::syntax::display(&a)
            ))),
        }
    }

    /// Proves `[\x. B] A ~~ C` (or `=`) for a beta-redex, by structural recursion on `B`.
    pub fn beta(&mut self, redex: &Wff) -> R<usize> {
        let redex = canonicalize(redex);
        if let Some(&k) = self.beta_cache.get(&redex) {
            return Ok(k);
        }
        let n = self.beta_uncached(&redex)?;
        self.beta_cache.insert(redex, n);
        Ok(n)
    }

    fn beta_uncached(&mut self, redex: &Wff) -> R<usize> {
        let not_redex = || KernelError::PreconditionNotDischarged("a beta-redex".to_string());
        let (f, a) = redex.as_app().ok_or_else(not_redex)?;
        let Wff::Abs(x, b) = f else { return Err(not_redex()) };
        let (xv, a) = (Wff::Var(x.clone()), a.clone());
        let redex_of = |body: &Wff| Wff::app(Wff::abs(x.clone(), body.clone()), a.clone());
        if **b == xv {
            return self.axiom("4.2", vec![pw("x", xv), pw("A", a)]);
        }
        if a == xv {
            return self.axiom("4.10", vec![pw("x", xv), pw("B", (**b).clone())]);
        }
        if let Some(d) = decode(b) {
            let def = self.defined(&a)?;
            let ax = self.axiom("4.9", vec![pw("x", xv), pw("B", d), pw("A", a)])?;
            return self.rule2(ax, def);
        }
        match &**b {
            Wff::Var(y) => {
                let def = self.defined(&a)?;
                let ax = self.axiom("4.3", vec![pw("x", xv), pw("y", Wff::Var(y.clone())), pw("A", a)])?;
                self.rule2(ax, def)
            }
            Wff::Const(_) => {
                let def = self.defined(&a)?;
                let ax = self.axiom("4.4", vec![pw("x", xv), pw("c", (**b).clone()), pw("A", a)])?;
                self.rule2(ax, def)
            }
            Wff::App(p, c) => {
                let l0 = self.axiom(
                    "4.5",
                    vec![pw("x", xv), pw("B", (**p).clone()), pw("C", (**c).clone()), pw("A", a.clone())],
                )?;
                let r1 = self.beta(&redex_of(p))?;
                let l1 = self.rewrite(r1, l0, Side::Rhs, &[Step::Fn])?;
                let r2 = self.beta(&redex_of(c))?;
                self.rewrite(r2, l1, Side::Rhs, &[Step::Arg])
            }
            Wff::Cond(t, p, c) => {
                let l0 = self.axiom(
                    "4.8",
                    vec![
                        pw("x", xv),
                        pw("B", (**t).clone()),
                        pw("C", (**p).clone()),
                        pw("D", (**c).clone()),
                        pw("A", a.clone()),
                    ],
                )?;
                let mut cur = l0;
                for (part, step) in [(t, Step::Test), (p, Step::Then), (c, Step::Else)] {
                    let r = self.beta(&redex_of(part))?;
                    cur = self.rewrite(r, cur, Side::Rhs, &[step])?;
                }
                Ok(cur)
            }
            Wff::Abs(y, body) if y == x => {
                let def = self.defined(&a)?;
                let ax = self.axiom("4.6", vec![pw("x", xv), pw("B", (**body).clone()), pw("A", a)])?;
                self.rule2(ax, def)
            }
            Wff::Abs(y, body) => {
                let yv = Wff::Var(y.clone());
                let def = self.defined(&a)?;
                let n = if self.decides_nfi(x, body) {
                    self.not_free_in(x, body)?
                } else if self.decides_nfi(y, &a) {
                    self.not_free_in(y, &a)?
                } else {
                    return Err(KernelError::PreconditionNotDischarged(format!(
                        "{} not free in the body or {} not free in the argument",
                        x.name, y.name
                    )));
                };
                let side = sugar::and(
                    sugar::defined(a.clone()),
                    sugar::or(nfi(qv(x), Wff::quote((**body).clone())), nfi(qv(y), Wff::quote(a.clone()))),
                );
                let conj = self.taut(&[def, n], side)?;
                let ax = self.axiom(
                    "4.7",
                    vec![pw("x", xv), pw("y", yv), pw("B", (**body).clone()), pw("A", a.clone())],
                )?;
                let l0 = self.rule2(ax, conj)?;
                let r = self.beta(&redex_of(body))?;
                self.rewrite(r, l0, Side::Rhs, &[Step::Body])
            }
            _ => Err(KernelError::Unsupported("beta-reduction into an evaluation".to_string())),
        }
    }

    fn decides_nfi(&self, v: &Var, c: &Wff) -> bool {
        c.is_evaluation_free() && algebra::nfi(v, c, 0).ok() == Some(TriState::True)
    }

    /// The line `var ⌜x⌝`.
    fn var_line(&mut self, x: &Var) -> R<usize> {
        self.axiom("12.2.1", vec![pw("x", Wff::Var(x.clone()))])
    }

    /// The line `~(⌜x⌝ = ⌜y⌝)` for distinct variables.
    fn distinct(&mut self, x: &Var, y: &Var) -> R<usize> {
        self.axiom("12.4.22", vec![pw("x", Wff::Var(x.clone())), pw("y", Wff::Var(y.clone()))])
    }

    /// Proves `not-free-in ⌜v⌝ ⌜c⌝` for an evaluation-free `c` in which `v` is not free.
    pub fn not_free_in(&mut self, v: &Var, c: &Wff) -> R<usize> {
        let av = qv(v);
        let goal = canonicalize(&nfi(av.clone(), Wff::quote(c.clone())));
        if let Some(&k) = self.index.get(&goal) {
            return Ok(k);
        }
        let var = self.var_line(v)?;
        match c {
            Wff::Var(u) if u == v => {
                Err(KernelError::PreconditionNotDischarged(format!("{} is free in the construction", v.name)))
            }
            Wff::Var(u) => {
                let vu = self.var_line(u)?;
                let ne = self.distinct(v, u)?;
                let ax = self.axiom("12.7.2", vec![pw("A", av), pw("B", qv(u))])?;
                self.taut(&[var, vu, ne, ax], goal)
            }
            Wff::Const(_) => {
                let con = self.axiom("12.3.1", vec![pw("c", c.clone())])?;
                let ax = self.axiom("12.7.3", vec![pw("A", av), pw("B", Wff::quote(c.clone()))])?;
                self.taut(&[var, con, ax], goal)
            }
            Wff::App(f, a) => {
                let def = self.defined(&Wff::quote(c.clone()))?;
                let n1 = self.not_free_in(v, f)?;
                let n2 = self.not_free_in(v, a)?;
                let ax = self.axiom("12.7.4", vec![pw("A", av), pw("B", encode(f)), pw("C", encode(a))])?;
                self.taut(&[var, def, n1, n2, ax], goal)
            }
            Wff::Abs(y, b) if y == v => {
                let def = self.defined(&Wff::quote(c.clone()))?;
                let ax = self.axiom("12.7.5", vec![pw("A", av), pw("B", encode(b))])?;
                self.taut(&[var, def, ax], goal)
            }
            Wff::Abs(y, b) => {
                let vy = self.var_line(y)?;
                let ne = self.distinct(v, y)?;
                let def = self.defined(&Wff::quote(c.clone()))?;
                let n = self.not_free_in(v, b)?;
                let ax = self.axiom("12.7.6", vec![pw("A", av), pw("B", qv(y)), pw("C", encode(b))])?;
                self.taut(&[var, vy, ne, def, n, ax], goal)
            }
            Wff::Cond(t, a, b) => {
                let def = self.defined(&Wff::quote(c.clone()))?;
                let n1 = self.not_free_in(v, t)?;
                let n2 = self.not_free_in(v, a)?;
                let n3 = self.not_free_in(v, b)?;
                let ax = self.axiom(
                    "12.7.7",
                    vec![pw("A", av), pw("D", encode(t)), pw("E", encode(a)), pw("F", encode(b))],
                )?;
                self.taut(&[var, def, n1, n2, n3, ax], goal)
            }
            Wff::Quote(d) => {
                let def = self.defined(&Wff::quote((**d).clone()))?;
                let ax = self.axiom("12.7.8", vec![pw("A", av), pw("B", encode(d))])?;
                self.taut(&[var, def, ax], goal)
            }
            Wff::Eval(..) => Err(KernelError::Unsupported("not-free-in for an evaluation".to_string())),
        }
    }

    /// Proves `var^a ⌜x⌝` where `a` is the type of `x`.
    pub fn var_alpha(&mut self, x: &Var) -> R<usize> {
        let goal = canonicalize(&sugar::var_a(x.ty.clone(), qv(x)));
        if let Some(&k) = self.index.get(&goal) {
            return Ok(k);
        }
        let red = self.beta(&goal)?;
        let var = self.var_line(x)?;
        let wff = self.axiom("12.6.1", vec![pw("x", Wff::Var(x.clone()))])?;
        let body = self.rhs(red);
        let conj = self.taut(&[var, wff], body)?;
        self.rule1(red, conj, Path::root())
    }

    /// Proves `wff^a ⌜c⌝` where `a` is the type of `c`.
    pub fn wff_of(&mut self, c: &Wff) -> R<usize> {
        let goal = canonicalize(&Wff::app(crate::syntax::signature::wff_pred(c.ty()), Wff::quote(c.clone())));
        if let Some(&k) = self.index.get(&goal) {
            return Ok(k);
        }
        match c {
            Wff::Var(x) => self.axiom("12.6.1", vec![pw("x", Wff::Var(x.clone()))]),
            Wff::Const(_) => self.axiom("12.6.2", vec![pw("c", c.clone())]),
            Wff::App(f, a) => {
                let w1 = self.wff_of(f)?;
                let w2 = self.wff_of(a)?;
                let ax = self.axiom(
                    "12.6.3",
                    vec![pt("a", c.ty()), pt("b", a.ty()), pw("A", encode(f)), pw("B", encode(a))],
                )?;
                self.taut(&[w1, w2, ax], goal)
            }
            Wff::Abs(x, b) => {
                let v = self.var_alpha(x)?;
                let w = self.wff_of(b)?;
                let ax = self.axiom(
                    "12.6.6",
                    vec![pt("a", x.ty.clone()), pt("b", b.ty()), pw("A", qv(x)), pw("B", encode(b))],
                )?;
                self.taut(&[v, w, ax], goal)
            }
            Wff::Cond(t, a, b) => {
                let w1 = self.wff_of(t)?;
                let w2 = self.wff_of(a)?;
                let w3 = self.wff_of(b)?;
                let ax = self.axiom(
                    "12.6.8",
                    vec![pt("a", c.ty()), pw("A", encode(t)), pw("B", encode(a)), pw("C", encode(b))],
                )?;
                self.taut(&[w1, w2, w3, ax], goal)
            }
            Wff::Quote(d) => {
                let def = self.defined(&Wff::quote((**d).clone()))?;
                let ax = self.axiom("12.6.10", vec![pw("A", encode(d))])?;
                self.taut(&[def, ax], goal)
            }
            Wff::Eval(b, t) => {
                let carrier = Var::new(crate::encoding::TYPE_CARRIER, t.clone());
                let w = self.wff_of(b)?;
                let v = self.var_alpha(&carrier)?;
                let ax = self.axiom("12.6.11", vec![pt("a", t.clone()), pw("A", encode(b)), pw("B", qv(&carrier))])?;
                self.taut(&[w, v, ax], goal)
            }
        }
    }

    /// Proves `cleanse ⌜c⌝ ~~ ⌜c⌝` (or `=`) for an evaluation-free `c`.
    pub fn cleanse(&mut self, c: &Wff) -> R<usize> {
        let lit = encode(c);
        let cl = Wff::app(logical(Family::Cleanse), lit.clone());
        for goal in [sugar::qeq(cl.clone(), lit.clone()), sugar::eq(cl.clone(), lit.clone())] {
            if let Some(&k) = self.index.get(&goal) {
                return Ok(k);
            }
        }
        match c {
            Wff::Var(_) => {
                let var = self.defined_var_or_con(c)?;
                let ax = self.axiom("12.8.1", vec![pw("A", lit)])?;
                self.rule2(ax, var)
            }
            Wff::Const(_) => {
                let con = self.defined_var_or_con(c)?;
                let ax = self.axiom("12.8.2", vec![pw("A", lit)])?;
                self.rule2(ax, con)
            }
            Wff::App(f, a) => {
                let def = self.defined(&lit)?;
                let ax = self.axiom("12.8.3", vec![pw("A", encode(f)), pw("B", encode(a))])?;
                let l0 = self.rule2(ax, def)?;
                let r1 = self.cleanse(f)?;
                let l1 = self.rewrite(r1, l0, Side::Rhs, &[Step::Fn, Step::Arg])?;
                let r2 = self.cleanse(a)?;
                self.rewrite(r2, l1, Side::Rhs, &[Step::Arg])
            }
            Wff::Abs(x, b) => {
                let def = self.defined(&lit)?;
                let ax = self.axiom("12.8.4", vec![pw("A", qv(x)), pw("B", encode(b))])?;
                let l0 = self.rule2(ax, def)?;
                let r = self.cleanse(b)?;
                self.rewrite(r, l0, Side::Rhs, &[Step::Arg])
            }
            Wff::Cond(t, a, b) => {
                let def = self.defined(&lit)?;
                let ax = self.axiom("12.8.5", vec![pw("A", encode(t)), pw("B", encode(a)), pw("C", encode(b))])?;
                let mut cur = self.rule2(ax, def)?;
                for (part, path) in [(t, &[Step::Fn, Step::Fn, Step::Arg][..]), (a, &[Step::Fn, Step::Arg][..]), (b, &[Step::Arg][..])] {
                    let r = self.cleanse(part)?;
                    cur = self.rewrite(r, cur, Side::Rhs, path)?;
                }
                Ok(cur)
            }
            Wff::Quote(d) => self.axiom("12.8.6", vec![pw("A", encode(d))]),
            Wff::Eval(..) => Err(KernelError::Unsupported("cleansing an evaluation".to_string())),
        }
    }

    /// `var ⌜x⌝` for a variable, `con ⌜c⌝` for a constant.
    fn defined_var_or_con(&mut self, c: &Wff) -> R<usize> {
        match c {
            Wff::Var(x) => self.var_line(x),
            _ => self.axiom("12.3.1", vec![pw("c", c.clone())]),
        }
    }

    /// Proves `sub ⌜a⌝ ⌜x⌝ ⌜b⌝ = ⌜c⌝` where `c` is the result of the substitution.
    pub fn sub_equation(&mut self, a: &Wff, x: &Var, b: &Wff) -> R<usize> {
        let c = match algebra::subst(&Construction::of(a), &Construction::of(&Wff::Var(x.clone())), &Construction::of(b)) {
            Ok(PartialResult::Defined(c)) => c.decoded,
            Ok(PartialResult::Undefined) => return Err(KernelError::SubstUndefined),
            Ok(PartialResult::Unknown) | Err(_) => return Err(KernelError::SubstUnknown),
        };
        let w = self.wff_of(a)?;
        let v = self.var_alpha(x)?;
        let l = self.sub_rec(a, x, b, w, v)?;
        let target = encode(&c);
        let (lhs, rhs) = equation_sides(self.wff(l)).map(|(p, q)| (p.clone(), q.clone())).expect("equation line");
        if rhs != target {
            return Err(KernelError::Unsupported(format!(
                "substitution elaborated to {} instead of {}",
                crate::syntax::display(&rhs),
                crate::syntax::display(&target)
            )));
        }
        let def = self.defined(&target)?;
        self.taut(&[l, def], sugar::eq(lhs, target))
    }

    fn sub_rec(&mut self, a: &Wff, x: &Var, b: &Wff, w: usize, v: usize) -> R<usize> {
        let (ea, ex) = (encode(a), qv(x));
        let common = || vec![pt("a", x.ty.clone()), pw("A", ea.clone()), pw("B", ex.clone())];
        let with = |extra: Vec<(String, Param)>| {
            let mut p = common();
            p.extend(extra);
            p
        };
        let consequent =
            |s: &Self, ax: usize| -> Wff { sugar::as_implies(s.wff(ax)).expect("conditional clause").1.clone() };
        match b {
            Wff::Var(u) if u == x => {
                let ax = self.axiom("12.9.1", common())?;
                let goal = consequent(self, ax);
                let l0 = self.taut(&[w, v, ax], goal)?;
                let cl = self.cleanse(a)?;
                self.rewrite(cl, l0, Side::Rhs, &[])
            }
            Wff::Var(u) => {
                let vu = self.var_line(u)?;
                let ne = self.distinct(x, u)?;
                let ax = self.axiom("12.9.2", with(vec![pw("C", qv(u))]))?;
                let goal = consequent(self, ax);
                self.taut(&[w, v, vu, ne, ax], goal)
            }
            Wff::Const(_) => {
                let con = self.axiom("12.3.1", vec![pw("c", b.clone())])?;
                let ax = self.axiom("12.9.3", with(vec![pw("C", encode(b))]))?;
                let goal = consequent(self, ax);
                self.taut(&[w, v, con, ax], goal)
            }
            Wff::App(f, g) => {
                let def = self.defined(&encode(b))?;
                let ax = self.axiom("12.9.4", with(vec![pw("D", encode(f)), pw("E", encode(g))]))?;
                let goal = consequent(self, ax);
                let l0 = self.taut(&[w, v, def, ax], goal)?;
                let r1 = self.sub_rec(a, x, f, w, v)?;
                let l1 = self.rewrite(r1, l0, Side::Rhs, &[Step::Fn, Step::Arg])?;
                let r2 = self.sub_rec(a, x, g, w, v)?;
                self.rewrite(r2, l1, Side::Rhs, &[Step::Arg])
            }
            Wff::Abs(y, e) if y == x => {
                let def = self.defined(&encode(b))?;
                let ax = self.axiom("12.9.5", with(vec![pw("E", encode(e))]))?;
                let goal = consequent(self, ax);
                let l0 = self.taut(&[w, v, def, ax], goal)?;
                let cl = self.cleanse(e)?;
                self.rewrite(cl, l0, Side::Rhs, &[Step::Arg])
            }
            Wff::Abs(y, e) => {
                let vy = self.var_line(y)?;
                let ne = self.distinct(x, y)?;
                let def = self.defined(&encode(b))?;
                let ax = self.axiom("12.9.6", with(vec![pw("D", qv(y)), pw("E", encode(e))]))?;
                let goal = consequent(self, ax);
                let l0 = self.taut(&[w, v, vy, ne, def, ax], goal)?;
                let n = if self.decides_nfi(x, e) {
                    self.not_free_in(x, e)?
                } else if self.decides_nfi(y, a) {
                    self.not_free_in(y, a)?
                } else {
                    return Err(KernelError::SubstUndefined);
                };
                let Wff::Cond(test, then, els) = &self.rhs(l0) else { unreachable!("12.9.6 shape") };
                let (test, then, els) = ((**test).clone(), (**then).clone(), (**els).clone());
                let disj = self.taut(&[n], test.clone())?;
                let is_t = self.taut(&[disj], sugar::eq(test, sugar::t()))?;
                let l1 = self.rewrite(is_t, l0, Side::Rhs, &[Step::Test])?;
                let sel = self.axiom("10.1", vec![pw("B", then), pw("C", els)])?;
                let l2 = self.rewrite(sel, l1, Side::Rhs, &[])?;
                let r = self.sub_rec(a, x, e, w, v)?;
                self.rewrite(r, l2, Side::Rhs, &[Step::Arg])
            }
            Wff::Cond(t, p, c) => {
                let def = self.defined(&encode(b))?;
                let ax = self.axiom(
                    "12.9.7",
                    with(vec![pw("D", encode(t)), pw("E", encode(p)), pw("F", encode(c))]),
                )?;
                let goal = consequent(self, ax);
                let mut cur = self.taut(&[w, v, def, ax], goal)?;
                for (part, path) in [(t, &[Step::Fn, Step::Fn, Step::Arg][..]), (p, &[Step::Fn, Step::Arg][..]), (c, &[Step::Arg][..])] {
                    let r = self.sub_rec(a, x, part, w, v)?;
                    cur = self.rewrite(r, cur, Side::Rhs, path)?;
                }
                Ok(cur)
            }
            Wff::Quote(d) => {
                let def = self.defined(&Wff::quote((**d).clone()))?;
                let ax = self.axiom("12.9.8", with(vec![pw("C", encode(d))]))?;
                let goal = consequent(self, ax);
                self.taut(&[w, v, def, ax], goal)
            }
            Wff::Eval(..) => Err(KernelError::Unsupported("substitution into an evaluation".to_string())),
        }
    }

    /// Proves `w ~~ w'` where `w'` results from contracting head redexes of `w`
    /// until none is left.
    pub fn reduce(&mut self, w: &Wff) -> R<usize> {
        let w = canonicalize(w);
        self.head(&w)?
            .ok_or_else(|| KernelError::PreconditionNotDischarged("a wff with a head redex".to_string()))
    }

    fn head(&mut self, w: &Wff) -> R<Option<usize>> {
        let mut cur = match w {
            Wff::App(f, _) if matches!(**f, Wff::Abs(..)) => self.beta(w)?,
            Wff::App(f, _) => match self.head(f)? {
                Some(lf) => {
                    let refl = self.axiom("7", vec![pw("A", w.clone())])?;
                    self.rewrite(lf, refl, Side::Rhs, &[Step::Fn])?
                }
                None => return Ok(None),
            },
            _ => return Ok(None),
        };
        while let Some(next) = self.head(&self.rhs(cur))? {
            cur = self.rewrite(next, cur, Side::Rhs, &[])?;
        }
        Ok(Some(cur))
    }

    /// Universal generalization: from `A` on line `n`, proves `forall x. A`.
    pub fn ug(&mut self, n: usize, x: &Var) -> R<usize> {
        let a = self.wff(n).clone();
        let t_eq = self.taut(&[n], sugar::eq(sugar::t(), a))?;
        let d = self.axiom("6.5", vec![pw("x", Wff::Var(x.clone())), pw("B", sugar::t())])?;
        self.rule1(t_eq, d, Path(vec![Step::Arg, Step::Body]))
    }

    /// Universal instantiation: from `forall x. B` on line `n`, proves the
    /// beta-reduct of `[\x. B] a`. Requires `a` to be provably defined.
    pub fn ui(&mut self, n: usize, a: &Wff) -> R<usize> {
        let a = canonicalize(a);
        let (x, b) = match sugar::as_forall(self.wff(n)) {
            Some((x, b)) => (x.clone(), b.clone()),
            None => return Err(KernelError::PreconditionNotDischarged("a universal statement".to_string())),
        };
        let r0 = Wff::app(Wff::abs(x.clone(), sugar::t()), a.clone());
        let refl = self.axiom("7", vec![pw("A", r0.clone())])?;
        let l1 = self.rewrite(n, refl, Side::Rhs, &[Step::Fn])?;
        let rb = self.beta(&Wff::app(Wff::abs(x, b), a))?;
        let l2 = self.rewrite(rb, l1, Side::Rhs, &[])?;
        let rt = self.beta(&r0)?;
        let l3 = self.rewrite(rt, l2, Side::Lhs, &[])?;
        let t = self.truth()?;
        self.rule1(l3, t, Path::root())
    }
}
