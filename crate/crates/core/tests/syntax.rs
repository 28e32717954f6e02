mod common;

use common::{gen_type, gen_wff, rng, GenCfg};
use proptest::prelude::*;
use quqe_core::syntax::signature::q;
use quqe_core::syntax::sugar;
use quqe_core::syntax::{parse, parse_type, print, type_of_open, Printer, Type, Var, Wff};

fn x_i() -> Wff {
    Wff::var("x", Type::I)
}

#[test]
fn type_of_examples() {
    assert_eq!(type_of_open(&x_i()).unwrap(), Type::I);
    let t = Wff::app2(q(Type::O), sugar::t(), sugar::t());
    assert_eq!(type_of_open(&t).unwrap(), Type::O);
    let e = Wff::eval(Wff::var("x", Type::O), Type::I);
    assert!(type_of_open(&e).is_err());
    let e = Wff::eval(Wff::var("q", Type::Eps), Type::I);
    assert_eq!(type_of_open(&e).unwrap(), Type::I);
}

#[test]
fn size_and_complexity_examples() {
    let f = Wff::constant("f", Type::fun(Type::O, Type::I));
    assert_eq!(Wff::var("x", Type::O).size(), 1);
    assert_eq!(Wff::quote(Wff::app(f, x_i())).size(), 2);
    assert_eq!(Wff::abs(Var::new("x", Type::I), x_i()).size(), 2);
    let ev = Wff::eval(Wff::quote(Wff::var("x", Type::O)), Type::O);
    assert_eq!(ev.complexity(), (1, 1));
    let qe = Wff::quote(Wff::eval(Wff::var("x", Type::Eps), Type::O));
    assert_eq!(qe.complexity(), (0, 1));
    assert!(qe.is_evaluation_free());
    assert!(!Wff::eval(Wff::quote(Wff::constant("c", Type::O)), Type::O).is_evaluation_free());
}

#[test]
fn free_vars_examples() {
    let x = Var::new("x", Type::I);
    assert!(Wff::abs(x.clone(), x_i()).free_vars_ef().unwrap().is_empty());
    assert!(Wff::quote(x_i()).free_vars_ef().unwrap().is_empty());
    let f = Wff::var("f", Type::fun(Type::O, Type::I));
    let fv = Wff::app(f, x_i()).free_vars_ef().unwrap();
    assert_eq!(fv.len(), 2);
    assert!(Wff::eval(Wff::var("q", Type::Eps), Type::O).free_vars_ef().is_err());
}

#[test]
fn parse_examples() {
    let w = parse("(\\x:o. x:o)").unwrap();
    assert_eq!(w, Wff::abs(Var::new("x", Type::O), Wff::var("x", Type::O)));
    let w = parse("(eval q:eps : i)").unwrap();
    assert_eq!(w, Wff::eval(Wff::var("q", Type::Eps), Type::I));
    let w = parse("(quote (#Q:((o o) o) T F))").unwrap();
    assert_eq!(w, Wff::quote(Wff::app2(q(Type::O), sugar::t(), sugar::f())));
    assert_eq!(parse_type("<(o i), eps>").unwrap(), Type::pair(Type::fun(Type::O, Type::I), Type::Eps));
}

#[test]
fn parse_errors_have_positions() {
    let err = parse("(\\x:o.\n  $)").unwrap_err().to_string();
    assert!(err.contains("2:3"), "{}", err);
    assert!(quqe_core::syntax::parse_wff("#nope:o", &Default::default()).is_err());
    assert!(parse("(x:o y:o)").is_err());
}

#[test]
fn sugar_expansions() {
    let a = Wff::var("a", Type::I);
    assert_eq!(sugar::defined(a.clone()), sugar::eq(a.clone(), a.clone()));
    assert_eq!(sugar::bottom(Type::O), sugar::f());
    assert!(sugar::desc(Var::new("p", Type::O), Wff::var("p", Type::O)).is_err());
    let x = Var::new("x", Type::O);
    let body = Wff::var("x", Type::O);
    let fa = sugar::forall(x.clone(), body.clone());
    assert_eq!(
        fa,
        sugar::eq(Wff::abs(x.clone(), sugar::t()), Wff::abs(x.clone(), body.clone()))
    );
    assert_eq!(sugar::as_forall(&fa), Some((&x, &body)));
}

#[test]
fn sugar_text_forms_round_trip() {
    for text in [
        "(p:o & q:o)",
        "(p:o | (~ q:o))",
        "(p:o => q:o)",
        "(p:o <=> q:o)",
        "(a:i == b:i)",
        "(a:i !)",
        "(a:i ?)",
        "(a:i ~~ b:i)",
        "(forall x:i. (x:i == a:i))",
        "(exists x:i. (x:i == a:i))",
        "(exists1 x:i. (x:i == a:i))",
        "(desc x:i. (x:i == a:i))",
        "bot:i",
        "(fst p:<i, eps>)",
        "(snd p:<eps, i>)",
        "(var^i e:eps)",
        "(con^o e:eps)",
        "(eval-free^o e:eps)",
        "(syn-closed e:eps)",
        "(#wff^(o i):(o eps) e:eps)",
    ] {
        let w = parse(text).unwrap();
        assert_eq!(print(&w), text, "print of {}", text);
        let expanded = Printer::expanded().print(&w);
        assert_eq!(parse(&expanded).unwrap(), w);
    }
}

proptest! {
    #[test]
    fn print_parse_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ty = gen_type(&mut r, 2);
        let w = gen_wff(&mut r, GenCfg::any(5), &ty);
        let text = print(&w);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &w);
        prop_assert_eq!(type_of_open(&back).unwrap(), ty);
        let expanded = Printer::expanded().print(&w);
        prop_assert_eq!(parse(&expanded).unwrap(), w);
    }

    #[test]
    fn quotations_have_no_free_vars(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ty = gen_type(&mut r, 2);
        let w = gen_wff(&mut r, GenCfg::any(4), &ty);
        prop_assert!(Wff::quote(w).free_vars_ef().unwrap().is_empty());
    }

    #[test]
    fn complexity_decreases_under_disquotation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ty = gen_type(&mut r, 2);
        let d = gen_wff(&mut r, GenCfg::eval_free(4), &ty);
        let e = Wff::eval(Wff::quote(d.clone()), ty);
        prop_assert!(d.complexity() < e.complexity());
    }

    #[test]
    fn no_alpha_identification(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ty = gen_type(&mut r, 1);
        let x = Var::new("x", ty.clone());
        let y = Var::new("y", ty);
        prop_assert_ne!(Wff::abs(x.clone(), Wff::Var(x)), Wff::abs(y.clone(), Wff::Var(y)));
    }
}
