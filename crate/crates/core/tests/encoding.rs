mod common;

use common::{gen_type, gen_wff, rng, GenCfg};
use proptest::prelude::*;
use quqe_core::encoding::{canonicalize, decode, encode, is_literal, quasiquote};
use quqe_core::syntax::signature::{logical, Family};
use quqe_core::syntax::{parse, sugar, Type, Var, Wff};

fn app_c() -> Wff {
    logical(Family::App)
}

#[test]
fn encode_examples() {
    let and = Wff::constant("and", Type::curried(Type::O, &[Type::O, Type::O]));
    let a = Wff::app2(and.clone(), sugar::f(), sugar::t());
    let expected = Wff::app2(
        app_c(),
        Wff::app2(app_c(), Wff::quote(and), encode(&sugar::f())),
        encode(&sugar::t()),
    );
    assert_eq!(encode(&a), expected);
    let x = Wff::var("x", Type::I);
    assert_eq!(encode(&x), Wff::quote(x.clone()));
    let c = Wff::constant("c", Type::O);
    assert_eq!(encode(&Wff::quote(c.clone())), Wff::app(logical(Family::Quot), Wff::quote(c)));
}

#[test]
fn decode_examples() {
    assert_eq!(decode(&Wff::var("x", Type::Eps)), None);
    let and = Wff::constant("and", Type::curried(Type::O, &[Type::O, Type::O]));
    let partial = Wff::app2(app_c(), Wff::quote(and), encode(&sugar::f()));
    assert_eq!(decode(&Wff::app(app_c(), partial.clone())), None);
    assert!(decode(&partial).is_some());
    let ill = Wff::app2(app_c(), encode(&sugar::t()), encode(&sugar::t()));
    assert_eq!(decode(&ill), None);
}

#[test]
fn literal_examples() {
    assert!(is_literal(&encode(&sugar::t())));
    assert!(!is_literal(&Wff::var("q", Type::Eps)));
    let lit = encode(&sugar::t());
    let sub = Wff::app3(logical(Family::Sub), lit.clone(), lit.clone(), lit);
    assert!(!is_literal(&sub));
}

#[test]
fn quasiquote_examples() {
    let b = Var::new("b", Type::O);
    let c = Var::new("c", Type::O);
    let d = Wff::constant("d", Type::O);
    let e = Wff::constant("e", Type::O);
    let template = sugar::and(Wff::Var(b.clone()), Wff::Var(c.clone()));
    let filled = quasiquote(&template, &[(b.clone(), encode(&d)), (c.clone(), encode(&e))]).unwrap();
    assert_eq!(filled, encode(&sugar::and(d, e)));
    assert_eq!(quasiquote(&template, &[]).unwrap(), encode(&template));
    assert!(quasiquote(&template, &[(b, sugar::t())]).is_err());
}

#[test]
fn canonicalize_rewrites_unquoted_quotations() {
    let w = parse("(quote (~ p:o))").unwrap();
    let c = canonicalize(&w);
    assert_eq!(c, encode(&sugar::not(Wff::var("p", Type::O))));
    assert_eq!(decode(&c), Some(sugar::not(Wff::var("p", Type::O))));
}

proptest! {
    #[test]
    fn decode_inverts_encode(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ty = gen_type(&mut r, 2);
        let w = gen_wff(&mut r, GenCfg::any(5), &ty);
        let e = encode(&w);
        prop_assert_eq!(decode(&e), Some(w));
        prop_assert!(e.is_evaluation_free());
        prop_assert!(e.free_vars_ef().unwrap().is_empty());
        prop_assert_eq!(e.ty(), Type::Eps);
    }

    #[test]
    fn encode_injective(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (mut r1, mut r2) = (rng(s1), rng(s2));
        let a = gen_wff(&mut r1, GenCfg::any(4), &Type::O);
        let b = gen_wff(&mut r2, GenCfg::any(4), &Type::O);
        prop_assert_eq!(a == b, encode(&a) == encode(&b));
    }

    #[test]
    fn quasiquote_with_literals_is_encode(seed in any::<u64>()) {
        let mut r = rng(seed);
        let h = Var::new("%hole", Type::I);
        let fill = gen_wff(&mut r, GenCfg::any(3), &Type::I);
        let f = Wff::constant("f", Type::fun(Type::O, Type::I));
        let body = gen_wff(&mut r, GenCfg::any(3), &Type::O);
        let template = sugar::and(Wff::app(f.clone(), Wff::Var(h.clone())), body.clone());
        let filled = quasiquote(&template, &[(h, encode(&fill))]).unwrap();
        prop_assert_eq!(filled, encode(&sugar::and(Wff::app(f, fill), body)));
    }
}
