mod common;

use common::{gen_type, gen_var, gen_wff, oracle_subst, rng, GenCfg};
use proptest::prelude::*;
use quqe_core::algebra::TriState;
use quqe_core::encoding::encode;
use quqe_core::normalizer::{
    is_defined, literal_equal, normalize, taut_check, NormError, Status, TautError, DEFAULT_FUEL,
};
use quqe_core::syntax::{parse, sugar, type_of_open, Type, Wff};
use rand::Rng;

fn p(text: &str) -> Wff {
    parse(text).unwrap()
}

fn norm(w: &Wff) -> Wff {
    normalize(w, DEFAULT_FUEL).unwrap().wff
}

#[test]
fn disquotes_variables() {
    let nf = normalize(&p("(eval (quote x:i) : i)"), DEFAULT_FUEL).unwrap();
    assert_eq!(nf.wff, p("x:i"));
    assert_eq!(nf.status, Status::Value);
}

#[test]
fn projects_pairs() {
    let a = p("#a:i");
    let w = sugar::fst(sugar::pair(a.clone(), p("#b:o"))).unwrap();
    assert_eq!(norm(&w), a);
    let w = sugar::snd(sugar::pair(p("#b:o"), a.clone())).unwrap();
    assert_eq!(norm(&w), a);
}

#[test]
fn identity_beta_on_bottom() {
    let w = Wff::app(p("(\\x:i. x:i)"), sugar::bottom(Type::I));
    let nf = normalize(&w, DEFAULT_FUEL).unwrap();
    assert_eq!(nf.wff, sugar::bottom(Type::I));
    assert_eq!(nf.status, Status::Bottom(Type::I));
}

#[test]
fn ill_typed_evaluation_is_bottom() {
    assert_eq!(norm(&p("(eval (quote x:i) : eps)")), sugar::bottom(Type::Eps));
    assert_eq!(norm(&p("(eval (quote x:i) : o)")), sugar::f());
    assert_eq!(norm(&p("(eval (quote (eval q:eps : i)) : i)")), sugar::bottom(Type::I));
}

#[test]
fn conditionals_select() {
    assert_eq!(norm(&p("(if T #a:i #b:i)")), p("#a:i"));
    assert_eq!(norm(&p("(if (T & F) #a:i #b:i)")), p("#b:i"));
    // An undefined branch that is not selected does not matter.
    let w = Wff::cond(sugar::t(), p("#a:i"), sugar::bottom(Type::I));
    assert_eq!(norm(&w), p("#a:i"));
}

#[test]
fn evaluation_distributes_over_conditionals() {
    let w = p("(eval (if p:o (quote #a:i) (quote #b:i)) : i)");
    assert_eq!(norm(&w), p("(if p:o #a:i #b:i)"));
}

#[test]
fn quotation_canonicalizes() {
    let w = p("(quote (f:(i i) x:i))");
    assert_eq!(norm(&w), encode(&p("(f:(i i) x:i)")));
    assert_eq!(norm(&p("(quote x:i)")), p("(quote x:i)"));
}

#[test]
fn predicates_on_literals() {
    assert_eq!(norm(&p("(var^i (quote x:i))")), sugar::t());
    assert_eq!(norm(&p("(con^i (quote x:i))")), sugar::f());
    assert_eq!(norm(&p("(eval-free^o (quote (eval q:eps : o)))")), sugar::f());
    assert_eq!(norm(&p("(syn-closed (quote (\\x:i. x:i)))")), sugar::t());
    assert_eq!(norm(&p("((quote x:i) == (quote y:i))")), sugar::f());
    assert_eq!(norm(&p("((quote x:i) == (quote x:i))")), sugar::t());
}

#[test]
fn substitution_constant_computes() {
    let w = p("(#sub:(((eps eps) eps) eps) (quote #a:i) (quote x:i) (quote (f:(i i) x:i)))");
    assert_eq!(norm(&w), encode(&p("(f:(i i) #a:i)")));
}

#[test]
fn beta_with_defined_argument() {
    assert_eq!(norm(&p("((\\x:i. (f:(i i) x:i)) #a:i)")), p("(f:(i i) #a:i)"));
    assert_eq!(norm(&p("((\\x:i. y:i) #a:i)")), p("y:i"));
    assert_eq!(norm(&p("((\\x:i. (\\x:i. x:i)) #a:i)")), p("(\\x:i. x:i)"));
    assert_eq!(norm(&p("((\\x:i. (quote x:i)) #a:i)")), p("(quote x:i)"));
}

#[test]
fn beta_with_unknown_argument_is_stuck() {
    let w = p("((\\x:i. y:i) (f:(i i) z:i))");
    let nf = normalize(&w, DEFAULT_FUEL).unwrap();
    assert_eq!(nf.status, Status::Stuck);
}

#[test]
fn strict_application() {
    let w = Wff::app(p("f:(i i)"), sugar::bottom(Type::I));
    assert_eq!(normalize(&w, DEFAULT_FUEL).unwrap().status, Status::Bottom(Type::I));
    let w = Wff::app(p("(\\x:i. #a:i)"), sugar::bottom(Type::I));
    assert_eq!(norm(&w), sugar::bottom(Type::I));
}

#[test]
fn fuel_is_enforced() {
    let w = p("(eval (quote x:i) : i)");
    assert!(matches!(normalize(&w, 0), Err(NormError::FuelExhausted(_))));
}

#[test]
fn ill_typed_input_is_rejected() {
    let w = Wff::app(p("f:(i i)"), p("x:o"));
    assert!(matches!(normalize(&w, DEFAULT_FUEL), Err(NormError::IllTyped(_))));
}

#[test]
fn definedness() {
    assert_eq!(is_defined(&p("(quote (eval q:eps : i))")), TriState::True);
    assert_eq!(is_defined(&sugar::bottom(Type::I)), TriState::False);
    assert_eq!(is_defined(&p("(f:(i i) x:i)")), TriState::Unknown);
    assert_eq!(is_defined(&p("x:i")), TriState::True);
    assert_eq!(is_defined(&p("#c:i")), TriState::True);
    assert_eq!(is_defined(&p("(\\x:i. (f:(i i) x:i))")), TriState::True);
    assert_eq!(is_defined(&p("(f:(o i) x:i)")), TriState::True);
    assert_eq!(is_defined(&p("(eval (quote x:i) : eps)")), TriState::False);
}

#[test]
fn tautologies() {
    assert!(taut_check(&p("(p:o | (~ p:o))")).unwrap());
    assert!(!taut_check(&p("(p:o => q:o)")).unwrap());
    assert!(!taut_check(&p("(a:i == a:i)")).unwrap());
    assert!(taut_check(&p("((p:o & q:o) => (q:o & p:o))")).unwrap());
    assert!(taut_check(&p("((p:o <=> q:o) => (q:o <=> p:o))")).unwrap());
    assert!(taut_check(&p("T")).unwrap());
    assert!(!taut_check(&p("F")).unwrap());
    assert!(matches!(taut_check(&p("x:i")), Err(TautError::NotFormula(_))));
}

#[test]
fn literal_equality() {
    let t = Wff::quote(sugar::t());
    assert!(literal_equal(&t, &t));
    assert!(!literal_equal(&p("(quote x:i)"), &p("(quote y:i)")));
    assert!(literal_equal(&t, &encode(&sugar::t())));
}

fn closed_ef(seed: u64, depth: u32) -> (Wff, Type) {
    let mut r = rng(seed);
    let ty = gen_type(&mut r, 1);
    (gen_wff(&mut r, GenCfg::closed_ef(depth), &ty), ty)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn disquotation(seed in any::<u64>()) {
        let (d, ty) = closed_ef(seed, 3);
        let lhs = normalize(&Wff::eval(Wff::quote(d.clone()), ty), DEFAULT_FUEL);
        let rhs = normalize(&d, DEFAULT_FUEL);
        prop_assert_eq!(lhs.map(|n| n.wff), rhs.map(|n| n.wff));
    }

    #[test]
    fn type_preservation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ty = gen_type(&mut r, 1);
        let w = gen_wff(&mut r, GenCfg::any(3), &ty);
        if let Ok(nf) = normalize(&w, DEFAULT_FUEL) {
            prop_assert_eq!(type_of_open(&nf.wff).unwrap(), ty);
        }
    }

    #[test]
    fn determinism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ty = gen_type(&mut r, 1);
        let w = gen_wff(&mut r, GenCfg::any(3), &ty);
        prop_assert_eq!(normalize(&w, DEFAULT_FUEL), normalize(&w, DEFAULT_FUEL));
    }

    #[test]
    fn normal_forms_are_fixed_points(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ty = gen_type(&mut r, 1);
        let w = gen_wff(&mut r, GenCfg::any(3), &ty);
        if let Ok(nf) = normalize(&w, DEFAULT_FUEL) {
            prop_assert_eq!(norm(&nf.wff), nf.wff);
        }
    }

    #[test]
    fn beta_agreement(seed in any::<u64>()) {
        let mut r = rng(seed);
        let alpha = gen_type(&mut r, 1);
        let beta = gen_type(&mut r, 1);
        let x = gen_var(&mut r, alpha.clone());
        let body = gen_wff(&mut r, GenCfg::eval_free(3), &beta);
        // Variables and constants are defined arguments.
        let arg = if r.gen_bool(0.5) {
            Wff::Var(gen_var(&mut r, alpha.clone()))
        } else {
            common::gen_const(&mut r, alpha.clone())
        };
        if let Some(expected) = oracle_subst(&arg, &x, &body) {
            let redex = Wff::app(Wff::abs(x, body), arg);
            prop_assert_eq!(norm(&redex), norm(&expected));
        }
    }

    #[test]
    fn conditional_is_not_strict(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ty = gen_type(&mut r, 1);
        let a = gen_wff(&mut r, GenCfg::closed_ef(2), &ty);
        let bot = sugar::bottom(ty.clone());
        prop_assert_eq!(norm(&Wff::cond(sugar::t(), a.clone(), bot.clone())), norm(&a));
        prop_assert_eq!(norm(&Wff::cond(sugar::f(), bot, a.clone())), norm(&a));
    }
}

#[test]
fn no_identification_of_bound_evaluations() {
    let a = norm(&p("(\\x:eps. (eval x:eps : (eps eps)))"));
    let b = norm(&p("(\\y:eps. (eval y:eps : (eps eps)))"));
    assert_ne!(a, b);
}
