//! Acceptance suite: one pass/fail line per criterion. Exits non-zero if any fails.

mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use common::{gen_type, gen_var, gen_wff, kind_counts, occurs_free, oracle_subst, rng, GenCfg};
use quqe_core::algebra::{
    cleanse, not_free_in, subst, syn_closed_expr, syn_closed_p, PartialResult, TriState,
};
use quqe_core::encoding::{canonicalize, decode, encode, Construction};
use quqe_core::kernel::script::{check_script, parse_script, parse_theory};
use quqe_core::normalizer::{is_defined, normalize, DEFAULT_FUEL};
use quqe_core::stdlib::{and_simp, DOUBLE_SUBST_FIXTURE, SCRIPTS, STDLIB};
use quqe_core::syntax::signature::{logical, Family};
use quqe_core::syntax::{parse, parse_wff, sugar, type_of_open, Signature, Type, Var, Wff};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn within(start: Instant, limit: Duration, summary: String) -> Outcome {
    let t = start.elapsed();
    if t < limit {
        Ok(format!("{} in {:.2?} (limit {:?})", summary, t, limit))
    } else {
        Err(format!("{} but took {:.2?} (limit {:?})", summary, t, limit))
    }
}

fn c(w: &Wff) -> Construction {
    Construction::of(w)
}

fn p(text: &str) -> Wff {
    parse(text).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let mut seen: HashMap<Wff, Wff> = HashMap::new();
    let mut kinds = [0usize; 7];
    for i in 0..10_000 {
        let ty = gen_type(&mut r, 2);
        let w = gen_wff(&mut r, GenCfg::any(8), &ty);
        kind_counts(&w, &mut kinds);
        let e = encode(&w);
        if decode(&e).as_ref() != Some(&w) {
            return Err(format!("case {}: decode(encode(w)) != w", i));
        }
        if let Some(prev) = seen.insert(e, w.clone()) {
            if prev != w {
                return Err(format!("case {}: two wffs share an encoding", i));
            }
        }
    }
    if kinds.iter().any(|&k| k == 0) {
        return Err(format!("corpus misses a constructor: {:?}", kinds));
    }
    within(start, Duration::from_secs(30), format!("10000 roundtrips, {} distinct encodings", seen.len()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut r = rng(2);
    for i in 0..2_000 {
        let ty = gen_type(&mut r, 1);
        let d = gen_wff(&mut r, GenCfg::closed_ef(4), &ty);
        let lhs = normalize(&Wff::eval(Wff::quote(d.clone()), ty), DEFAULT_FUEL);
        let rhs = normalize(&d, DEFAULT_FUEL);
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a.wff == b.wff => {}
            (a, b) => return Err(format!("case {}: {:?} vs {:?}", i, a.map(|n| n.wff), b.map(|n| n.wff))),
        }
    }
    within(start, Duration::from_secs(60), "2000 disquotations, zero failures".to_string())
}

/// `[\y. body]` with `x` free in `body` and `y` free in the returned argument.
fn capturing_triple(r: &mut impl Rng) -> (Wff, Var, Wff) {
    let tau = gen_type(r, 1);
    let sigma = gen_type(r, 1);
    let x = Var::new("x", tau.clone());
    let y = Var::new("y", sigma.clone());
    let filler = gen_wff(r, GenCfg::eval_free(2), &tau);
    let a = Wff::cond(sugar::eq(Wff::Var(y.clone()), Wff::Var(y.clone())), filler.clone(), filler);
    let noise = gen_wff(r, GenCfg::eval_free(3), &Type::O);
    let hit = sugar::eq(Wff::Var(x.clone()), gen_wff(r, GenCfg::eval_free(2), &tau));
    let body = if r.gen_bool(0.5) { sugar::and(noise, hit) } else { sugar::or(hit, noise) };
    let lam = Wff::abs(y, body);
    let b = match r.gen_range(0..3) {
        0 => lam,
        1 => sugar::eq(lam.clone(), lam),
        _ => Wff::cond(gen_wff(r, GenCfg::eval_free(2), &Type::O), lam.clone(), lam),
    };
    (a, x, b)
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut r = rng(3);
    let mut defined = 0;
    for i in 0..5_000 {
        let ty = gen_type(&mut r, 1);
        let a = gen_wff(&mut r, GenCfg::closed_ef(3), &ty);
        let x = gen_var(&mut r, ty);
        let bty = gen_type(&mut r, 1);
        let b = gen_wff(&mut r, GenCfg::eval_free(5), &bty);
        let expected = match oracle_subst(&a, &x, &b) {
            Some(e) => PartialResult::Defined(c(&e)),
            None => return Err(format!("case {}: oracle captured a closed argument", i)),
        };
        let got = subst(&c(&a), &c(&Wff::Var(x)), &c(&b)).map_err(|e| e.to_string())?;
        if got != expected {
            return Err(format!("case {}: engine {:?}, oracle {:?}", i, got, expected));
        }
        defined += 1;
    }
    for i in 0..500 {
        let (a, x, b) = capturing_triple(&mut r);
        if oracle_subst(&a, &x, &b).is_some() {
            return Err(format!("capturing case {} does not capture", i));
        }
        let got = subst(&c(&a), &c(&Wff::Var(x)), &c(&b)).map_err(|e| e.to_string())?;
        if got != PartialResult::Undefined {
            return Err(format!("capturing case {}: {:?}", i, got));
        }
    }
    within(start, Duration::from_secs(60), format!("{} oracle agreements, 500 captures undefined", defined))
}

fn criterion_4() -> Outcome {
    let v: serde_json::Value = serde_json::from_str(DOUBLE_SUBST_FIXTURE).map_err(|e| e.to_string())?;
    let sig = Signature::new();
    let w = |s: &serde_json::Value| parse_wff(s.as_str().unwrap_or(""), &sig).map_err(|e| e.to_string());
    let mut n = 0;
    for case in v["cases"].as_array().ok_or("no cases")? {
        let name = case["name"].as_str().unwrap_or("?");
        let got = if case["op"] == "sub" {
            let b = Construction::from_literal(&canonicalize(&w(&case["b"])?)).ok_or("b is not a literal")?;
            subst(&c(&w(&case["a"])?), &c(&w(&case["x"])?), &b)
        } else {
            let l = Construction::from_literal(&canonicalize(&w(&case["c"])?)).ok_or("c is not a literal")?;
            cleanse(&l)
        }
        .map_err(|e| e.to_string())?;
        let ok = match (&got, case["expected"].as_str()) {
            (PartialResult::Undefined, Some("undefined")) => true,
            (PartialResult::Defined(r), Some(_)) => r.literal == canonicalize(&w(&case["expected"])?),
            _ => false,
        };
        if !ok {
            return Err(format!("{}: got {:?}", name, got));
        }
        n += 1;
    }
    let second = "(quote ((quote (x:eps == x:eps)) == (quote (x:eps == x:eps))))";
    let x = c(&p("x:eps"));
    let b = Construction::from_literal(&canonicalize(&p("(quote (eval x:eps : o))"))).ok_or("literal")?;
    match subst(&c(&p("(quote (x:eps == x:eps))")), &x, &b) {
        Ok(PartialResult::Defined(r)) if r.literal == canonicalize(&p(second)) => {}
        other => return Err(format!("second example: {:?}", other)),
    }
    Ok(format!("{} fixture cases reproduce exactly", n))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let items: Vec<Wff> = ["T", "F", "p:o", "q:o", "(p:o & q:o)"].iter().map(|s| encode(&p(s))).collect();
    let (qt, qf) = (canonicalize(&encode(&sugar::t())), canonicalize(&encode(&sugar::f())));
    for x in &items {
        for y in &items {
            let r = and_simp(x, y).map_err(|e| e.to_string())?;
            let (x, y) = (canonicalize(x), canonicalize(y));
            let and = canonicalize(&encode(&sugar::and(decode(&x).unwrap(), decode(&y).unwrap())));
            let clauses = [
                x != qt || r == y,
                y != qt || r == x,
                !(x == qf || y == qf) || r == qf,
                x == qt || y == qt || x == qf || y == qf || r == and,
            ];
            if let Some(k) = clauses.iter().position(|ok| !ok) {
                return Err(format!("clause {} fails at ({:?}, {:?})", k + 1, decode(&x), decode(&y)));
            }
        }
    }
    within(start, Duration::from_secs(1), "25 pairs satisfy all four clauses".to_string())
}

/// Corrupted scripts with the diagnostic class each must produce.
fn mutations() -> Vec<(&'static str, String)> {
    let script = |name: &str| SCRIPTS.iter().find(|s| s.name == name).unwrap().text;
    let implies_eq = script("implies_eq");
    let last = implies_eq.lines().find(|l| l.starts_with("line 3:")).unwrap().to_string();
    let line3 = last.split(" ; ").next().unwrap().replacen("line 3:", "line 4:", 1);
    let t = "line 1: T ; axiom 6.2 {c=#Q:((o o) o)}\n";
    vec![
        ("BadLineRef", format!("{}line 2: T ; rule2 2 1\n", t)),
        ("BadLineRef", format!("{}line 2: T ; rule1 0 1 at root\n", t)),
        ("BadLineRef", script("lem").replace("macro taut(4)", "macro taut(9)")),
        ("BadLineRef", script("lem").replace("macro ui(2,", "macro ui(4,")),
        ("IllegalPath", format!("{}{} ; rule1 1 3 at arg.quote\n", implies_eq, line3)),
        ("IllegalPath", format!("{}{} ; rule1 1 3 at fn.arg.fn.arg.quote\n", implies_eq, line3)),
        ("IllegalPath", format!("{}{} ; rule1 3 1 at arg.fn.arg.quote\n", implies_eq, line3)),
        ("SideConditionViolated", "line 1: T ; axiom 4.3 {x=x:i, y=x:i, A=z:i}\n".to_string()),
        ("SideConditionViolated", "line 1: (p:o => q:o) ; axiom 5 {A=(p:o => q:o)}\n".to_string()),
        (
            "SideConditionViolated",
            "line 1: (#converse:(eps eps) == #converse:(eps eps)) ; axiom 6.2 {c=#converse:(eps eps)}\n"
                .to_string(),
        ),
    ]
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let theory = parse_theory(STDLIB).map_err(|e| e.to_string())?;
    let mut total = 0;
    for s in SCRIPTS {
        let script = parse_script(s.text, &theory.sig).map_err(|e| format!("{}: {}", s.name, e))?;
        let report = check_script(&theory, &script);
        if !report.ok {
            return Err(format!("{} fails: {:?}", s.name, report.diagnostics));
        }
        if report.evaluation_free != s.evaluation_free || report.lines != s.lines {
            return Err(format!("{}: {} lines, evaluation-free {}", s.name, report.lines, report.evaluation_free));
        }
        total += report.primitive_lines;
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(5) {
        return Err(format!("corpus took {:.2?} (limit 5s)", elapsed));
    }
    let muts = mutations();
    for (i, (class, text)) in muts.iter().enumerate() {
        let got = match parse_script(text, &theory.sig) {
            Ok(script) => check_script(&theory, &script).diagnostics.first().map(|(_, e)| e.class()),
            Err(e) => Some(e.class()),
        };
        if got != Some(class) {
            return Err(format!("mutation {}: expected {}, got {:?}", i + 1, class, got));
        }
    }
    Ok(format!(
        "{} scripts ({} primitive lines) in {:.2?} (limit 5s); {}/{} mutations rejected with expected class",
        SCRIPTS.len(),
        total,
        elapsed,
        muts.len(),
        muts.len()
    ))
}

fn renamed(lam: &Wff, fresh: &str) -> Option<Wff> {
    match lam {
        Wff::Abs(x, b) => {
            let y = Var::new(fresh, x.ty.clone());
            Some(Wff::abs(y.clone(), oracle_subst(&Wff::Var(y), x, b)?))
        }
        _ => None,
    }
}

fn criterion_7() -> Outcome {
    let norm = |w: &Wff| normalize(w, DEFAULT_FUEL).map(|n| n.wff).map_err(|e| e.to_string());
    for ty in ["o", "eps", "(eps eps)"] {
        let a = norm(&p(&format!("(\\x:eps. (eval x:eps : {}))", ty)))?;
        let b = norm(&p(&format!("(\\y:eps. (eval y:eps : {}))", ty)))?;
        if a == b {
            return Err(format!("evaluation bodies at {} were identified", ty));
        }
    }
    let mut r = rng(7);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 200 {
        attempts += 1;
        if attempts > 100_000 {
            return Err(format!("only {} renamed pairs generated", checked));
        }
        let alpha = gen_type(&mut r, 1);
        let beta = gen_type(&mut r, 1);
        let x = Var::new("x", alpha.clone());
        let body = gen_wff(&mut r, GenCfg::closed_ef(4), &beta);
        let body = Wff::cond(sugar::eq(Wff::Var(x.clone()), Wff::Var(x.clone())), body.clone(), body);
        let lam = Wff::abs(x, body);
        let Some(lam2) = renamed(&lam, "v9") else { continue };
        let arg = gen_wff(&mut r, GenCfg::closed_ef(2), &alpha);
        if is_defined(&arg) != TriState::True {
            continue;
        }
        let (l, rr) = (norm(&Wff::app(lam.clone(), arg.clone()))?, norm(&Wff::app(lam2, arg.clone()))?);
        if l != rr {
            return Err(format!("renamed pair differs on {:?}", arg));
        }
        checked += 1;
    }
    Ok("bound evaluations stay distinct; 200 renamed closed pairs agree".to_string())
}

/// An eps-expression whose value depends on the free eps-variable under a top-level evaluation.
fn open_eval_expr(r: &mut ChaCha8Rng, depth: u32) -> Wff {
    let app = || logical(Family::App);
    let abs = || logical(Family::Abs);
    let x = Var::new(["x", "y", "z"].choose(r).unwrap(), Type::Eps);
    if depth == 0 {
        return Wff::eval(Wff::Var(x), Type::Eps);
    }
    let inner = open_eval_expr(r, depth - 1);
    fn lit(r: &mut ChaCha8Rng) -> Wff {
        let ty = gen_type(r, 1);
        encode(&gen_wff(r, GenCfg::closed_ef(2), &ty))
    }
    match r.gen_range(0..4) {
        0 => Wff::app2(app(), lit(r), inner),
        1 => Wff::app2(app(), inner, lit(r)),
        2 => {
            let ty = gen_type(r, 1);
            let v = gen_var(r, ty);
            Wff::app2(abs(), encode(&Wff::Var(v)), inner)
        }
        _ => inner,
    }
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut r = rng(8);
    for i in 0..5_000 {
        let ty = gen_type(&mut r, 1);
        let a = gen_wff(&mut r, GenCfg::eval_free(3), &ty);
        let x = gen_var(&mut r, ty);
        let bty = gen_type(&mut r, 1);
        let b = gen_wff(&mut r, GenCfg::eval_free(5), &bty);
        let (ca, cx, cb) = (c(&a), c(&Wff::Var(x.clone())), c(&b));
        let e = |e: quqe_core::algebra::AlgebraError| e.to_string();
        let nfi = not_free_in(&cx, &cb).map_err(e)?;
        let closed = syn_closed_p(&cb).map_err(e)?;
        let unknown = nfi == TriState::Unknown
            || closed == TriState::Unknown
            || cleanse(&cb).map_err(e)? == PartialResult::Unknown
            || subst(&ca, &cx, &cb).map_err(e)? == PartialResult::Unknown
            || syn_closed_expr(&encode(&b)).map_err(e)? == TriState::Unknown;
        if unknown {
            return Err(format!("case {}: Unknown on an evaluation-free construction", i));
        }
        if (nfi == TriState::True) == occurs_free(&x, &b) {
            return Err(format!("case {}: not-free-in disagrees with occurrence", i));
        }
    }
    for i in 0..500 {
        let depth = r.gen_range(0..4);
        let w = open_eval_expr(&mut r, depth);
        if type_of_open(&w).ok() != Some(Type::Eps) {
            return Err(format!("case {} is ill-typed", i));
        }
        let got = syn_closed_expr(&w).map_err(|e| e.to_string())?;
        if got != TriState::Unknown {
            return Err(format!("open evaluation case {}: {:?}", i, got));
        }
    }
    // Hand-labeled: a definite verdict must equal the label.
    let labeled = [
        ("(quote (\\x:i. x:i))", TriState::True),
        ("(quote (\\x:i. y:i))", TriState::False),
        ("(quote (eval q:eps : o))", TriState::False),
        ("(quote (eval (quote T) : o))", TriState::True),
        ("(eval x:eps : eps)", TriState::Unknown),
        ("(#app:((eps eps) eps) (quote f:(i i)) (eval x:eps : eps))", TriState::False),
        ("(#abs:((eps eps) eps) (quote x:i) (eval x:eps : eps))", TriState::Unknown),
        ("(quote (quote y:i))", TriState::True),
    ];
    for (text, label) in labeled {
        let got = syn_closed_expr(&p(text)).map_err(|e| e.to_string())?;
        if got != TriState::Unknown && got != label {
            return Err(format!("{}: {:?}, labeled {:?}", text, got, label));
        }
    }
    within(start, Duration::from_secs(60), "5000 total verdicts, 500 Unknown, labels respected".to_string())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("encode/decode inverse and injectivity", criterion_1),
        ("disquotation", criterion_2),
        ("substitution oracle equivalence and capture", criterion_3),
        ("double substitution fixtures", criterion_4),
        ("and-simp behavior clauses", criterion_5),
        ("proof corpus and mutation suite", criterion_6),
        ("alpha-failure documentation", criterion_7),
        ("tri-valued totality", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (tag, msg) = match std::panic::catch_unwind(run) {
            Ok(Ok(m)) => ("PASS", m),
            Ok(Err(m)) => ("FAIL", m),
            Err(_) => ("FAIL", "panicked".to_string()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("[{}] {}. {}: {}", tag, i + 1, name, msg);
    }
    println!("{}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
