//! Seeded random wff generation and an independent substitution oracle.
#![allow(dead_code)]

use quqe_core::syntax::signature::q;
use quqe_core::syntax::sugar;
use quqe_core::syntax::{Type, Var, Wff};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct GenCfg {
    pub max_depth: u32,
    /// Evaluations appear only inside quotations.
    pub eval_free: bool,
    /// No free variables outside quotations.
    pub closed: bool,
}

impl GenCfg {
    pub fn any(max_depth: u32) -> GenCfg {
        GenCfg { max_depth, eval_free: false, closed: false }
    }

    pub fn eval_free(max_depth: u32) -> GenCfg {
        GenCfg { max_depth, eval_free: true, closed: false }
    }

    pub fn closed_ef(max_depth: u32) -> GenCfg {
        GenCfg { max_depth, eval_free: true, closed: true }
    }
}

const VAR_NAMES: &[&str] = &["x", "y", "z", "w"];
const CONST_NAMES: &[&str] = &["c", "d", "g"];

pub fn gen_type<R: Rng>(r: &mut R, depth: u32) -> Type {
    let k = if depth == 0 { r.gen_range(0..3) } else { r.gen_range(0..6) };
    match k {
        0 => Type::I,
        1 => Type::O,
        2 => Type::Eps,
        3 | 4 => Type::fun(gen_type(r, depth - 1), gen_type(r, depth - 1)),
        _ => Type::pair(gen_type(r, depth - 1), gen_type(r, depth - 1)),
    }
}

pub fn gen_var<R: Rng>(r: &mut R, ty: Type) -> Var {
    Var::new(VAR_NAMES.choose(r).unwrap(), ty)
}

pub fn gen_const<R: Rng>(r: &mut R, ty: Type) -> Wff {
    Wff::constant(CONST_NAMES.choose(r).unwrap(), ty)
}

/// A random well-typed wff of type `ty`.
pub fn gen_wff<R: Rng>(r: &mut R, cfg: GenCfg, ty: &Type) -> Wff {
    go(r, cfg, ty, cfg.max_depth, &mut Vec::new(), false)
}

fn leaf<R: Rng>(r: &mut R, cfg: GenCfg, ty: &Type, bound: &[Var], quoted: bool) -> Wff {
    let candidates: Vec<&Var> = bound.iter().filter(|v| v.ty == *ty).collect();
    match r.gen_range(0..4) {
        0 | 1 if !candidates.is_empty() => Wff::Var((*candidates.choose(r).unwrap()).clone()),
        2 if !cfg.closed || quoted => Wff::Var(gen_var(r, ty.clone())),
        _ if *ty == Type::O && r.gen_bool(0.3) => {
            if r.gen_bool(0.5) {
                sugar::t()
            } else {
                sugar::f()
            }
        }
        _ => gen_const(r, ty.clone()),
    }
}

fn go<R: Rng>(r: &mut R, cfg: GenCfg, ty: &Type, depth: u32, bound: &mut Vec<Var>, quoted: bool) -> Wff {
    if depth == 0 {
        return leaf(r, cfg, ty, bound, quoted);
    }
    let d = depth - 1;
    loop {
        match r.gen_range(0..9) {
            0 | 1 => return leaf(r, cfg, ty, bound, quoted),
            2 | 3 => {
                let beta = gen_type(r, 1);
                let f = go(r, cfg, &Type::fun(ty.clone(), beta.clone()), d, bound, quoted);
                let a = go(r, cfg, &beta, d, bound, quoted);
                return Wff::app(f, a);
            }
            4 => {
                if let Some((res, arg)) = ty.as_fun() {
                    let x = gen_var(r, arg.clone());
                    bound.push(x.clone());
                    let b = go(r, cfg, res, d, bound, quoted);
                    bound.pop();
                    return Wff::abs(x, b);
                }
            }
            5 => {
                let t = go(r, cfg, &Type::O, d, bound, quoted);
                let a = go(r, cfg, ty, d, bound, quoted);
                let b = go(r, cfg, ty, d, bound, quoted);
                return Wff::cond(t, a, b);
            }
            6 => {
                if *ty == Type::Eps {
                    let inner = gen_type(r, 1);
                    // Quotation bodies may be open: they are closed by construction.
                    let icfg = GenCfg { closed: false, ..cfg };
                    return Wff::quote(go(r, icfg, &inner, d, bound, true));
                }
            }
            7 => {
                if !cfg.eval_free || quoted {
                    let a = go(r, cfg, &Type::Eps, d, bound, quoted);
                    return Wff::eval(a, ty.clone());
                }
            }
            _ => {
                if *ty == Type::O {
                    let alpha = gen_type(r, 1);
                    let a = go(r, cfg, &alpha, d, bound, quoted);
                    let b = go(r, cfg, &alpha, d, bound, quoted);
                    return Wff::app2(q(alpha), a, b);
                }
            }
        }
    }
}

/// True iff `v` occurs free in the evaluation-free `w`.
pub fn occurs_free(v: &Var, w: &Wff) -> bool {
    match w {
        Wff::Var(u) => u == v,
        Wff::Const(_) | Wff::Quote(_) => false,
        Wff::App(f, a) => occurs_free(v, f) || occurs_free(v, a),
        Wff::Abs(x, b) => x != v && occurs_free(v, b),
        Wff::Cond(t, a, b) => occurs_free(v, t) || occurs_free(v, a) || occurs_free(v, b),
        Wff::Eval(a, _) => occurs_free(v, a),
    }
}

/// Textbook substitution of `a` for free `x` in evaluation-free `b`, without
/// renaming: `None` when a free variable of `a` would be captured.
pub fn oracle_subst(a: &Wff, x: &Var, b: &Wff) -> Option<Wff> {
    Some(match b {
        Wff::Var(v) if v == x => a.clone(),
        Wff::Var(_) | Wff::Const(_) | Wff::Quote(_) => b.clone(),
        Wff::App(f, c) => Wff::app(oracle_subst(a, x, f)?, oracle_subst(a, x, c)?),
        Wff::Abs(y, e) => {
            if y == x || !occurs_free(x, e) {
                b.clone()
            } else if occurs_free(y, a) {
                return None;
            } else {
                Wff::abs(y.clone(), oracle_subst(a, x, e)?)
            }
        }
        Wff::Cond(t, p, q) => Wff::cond(
            oracle_subst(a, x, t)?,
            oracle_subst(a, x, p)?,
            oracle_subst(a, x, q)?,
        ),
        Wff::Eval(..) => panic!("oracle requires evaluation-free input"),
    })
}

/// True iff `w` has no free variables (evaluation-free input).
pub fn is_closed(w: &Wff) -> bool {
    fn go(w: &Wff, bound: &mut Vec<Var>) -> bool {
        match w {
            Wff::Var(v) => bound.contains(v),
            Wff::Const(_) | Wff::Quote(_) => true,
            Wff::App(f, a) => go(f, bound) && go(a, bound),
            Wff::Abs(x, b) => {
                bound.push(x.clone());
                let r = go(b, bound);
                bound.pop();
                r
            }
            Wff::Cond(t, a, b) => go(t, bound) && go(a, bound) && go(b, bound),
            Wff::Eval(a, _) => go(a, bound),
        }
    }
    go(w, &mut Vec::new())
}

/// Count of each of the seven node kinds.
pub fn kind_counts(w: &Wff, out: &mut [usize; 7]) {
    match w {
        Wff::Var(_) => out[0] += 1,
        Wff::Const(_) => out[1] += 1,
        Wff::App(f, a) => {
            out[2] += 1;
            kind_counts(f, out);
            kind_counts(a, out);
        }
        Wff::Abs(_, b) => {
            out[3] += 1;
            kind_counts(b, out);
        }
        Wff::Cond(t, a, b) => {
            out[4] += 1;
            kind_counts(t, out);
            kind_counts(a, out);
            kind_counts(b, out);
        }
        Wff::Quote(a) => {
            out[5] += 1;
            kind_counts(a, out);
        }
        Wff::Eval(a, _) => {
            out[6] += 1;
            kind_counts(a, out);
        }
    }
}
