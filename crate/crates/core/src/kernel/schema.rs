//! Axiom schemas as templates in the text grammar, and their instantiation.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::encoding::{canonicalize, encode};
use crate::normalizer::taut_check;
use crate::syntax::sugar;
use crate::syntax::typecheck::type_of_open;
use crate::syntax::{parse, Signature, Type, Var, Wff};

use super::{KernelError, Param};

/// A type pattern over the type variables `a`, `b` and `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
enum TyPat {
    Base(Type),
    TyVar(char),
    Fun(Box<TyPat>, Box<TyPat>),
    Pair(Box<TyPat>, Box<TyPat>),
}

impl TyPat {
    fn parse(s: &str) -> TyPat {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let p = TyPat::go(&chars, &mut pos);
        assert_eq!(pos, chars.len(), "type pattern `{}`", s);
        p
    }

    fn go(c: &[char], pos: &mut usize) -> TyPat {
        match c[*pos] {
            '(' => {
                *pos += 1;
                let r = TyPat::go(c, pos);
                let a = TyPat::go(c, pos);
                assert_eq!(c[*pos], ')');
                *pos += 1;
                TyPat::Fun(Box::new(r), Box::new(a))
            }
            '<' => {
                *pos += 1;
                let a = TyPat::go(c, pos);
                assert_eq!(c[*pos], ',');
                *pos += 1;
                let b = TyPat::go(c, pos);
                assert_eq!(c[*pos], '>');
                *pos += 1;
                TyPat::Pair(Box::new(a), Box::new(b))
            }
            _ => {
                let rest: String = c[*pos..].iter().collect();
                for (kw, t) in [("eps", Type::Eps), ("i", Type::I), ("o", Type::O)] {
                    if rest.starts_with(kw) {
                        *pos += kw.len();
                        return TyPat::Base(t);
                    }
                }
                let v = c[*pos];
                assert!("abg".contains(v), "type pattern variable `{}`", v);
                *pos += 1;
                TyPat::TyVar(v)
            }
        }
    }

    /// Template text, with type variables as `{a}` placeholders.
    fn template(&self) -> String {
        match self {
            TyPat::Base(t) => t.to_string(),
            TyPat::TyVar(v) => format!("{{{}}}", v),
            TyPat::Fun(r, a) => format!("({} {})", r.template(), a.template()),
            TyPat::Pair(a, b) => format!("<{}, {}>", a.template(), b.template()),
        }
    }

    fn matches(&self, ty: &Type, env: &mut BTreeMap<char, Type>) -> bool {
        match self {
            TyPat::Base(t) => t == ty,
            TyPat::TyVar(v) => match env.get(v) {
                Some(t) => t == ty,
                None => {
                    env.insert(*v, ty.clone());
                    true
                }
            },
            TyPat::Fun(r, a) => match ty.as_fun() {
                Some((tr, ta)) => r.matches(tr, env) && a.matches(ta, env),
                None => false,
            },
            TyPat::Pair(a, b) => match ty.as_pair() {
                Some((ta, tb)) => a.matches(ta, env) && b.matches(tb, env),
                None => false,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Wff,
    Var,
    Prim,
}

struct Decl {
    name: String,
    kind: Kind,
    ty: TyPat,
}

/// An axiom schema.
struct Schema {
    id: &'static str,
    decls: Vec<Decl>,
    /// Type variables that are not determined by any parameter.
    free_tyvars: Vec<char>,
    side: Vec<&'static str>,
    template: &'static str,
}

/// Parses `A:a x:(a b) c:b` style declarations. Names `x`, `y` are variables
/// and `c`, `d` primitive constants; all other names are wffs.
fn decls(spec: &str) -> Vec<Decl> {
    let mut out = Vec::new();
    let mut rest = spec.trim();
    while !rest.is_empty() {
        let colon = rest.find(':').expect("declaration");
        let name = rest[..colon].trim().to_string();
        let after = &rest[colon + 1..];
        // The type runs to the next balanced whitespace.
        let mut depth = 0i32;
        let mut end = after.len();
        for (i, ch) in after.char_indices() {
            match ch {
                '(' | '<' => depth += 1,
                ')' | '>' => depth -= 1,
                ' ' if depth == 0 => {
                    end = i;
                    break;
                }
                _ => {}
            }
        }
        let kind = match name.as_str() {
            "x" | "y" => Kind::Var,
            "c" | "d" => Kind::Prim,
            _ => Kind::Wff,
        };
        out.push(Decl { name, kind, ty: TyPat::parse(&after[..end]) });
        rest = after[end..].trim();
    }
    out
}

fn tyvars_of(p: &TyPat, out: &mut Vec<char>) {
    match p {
        TyPat::Base(_) => {}
        TyPat::TyVar(v) => {
            if !out.contains(v) {
                out.push(*v)
            }
        }
        TyPat::Fun(a, b) | TyPat::Pair(a, b) => {
            tyvars_of(a, out);
            tyvars_of(b, out);
        }
    }
}

fn schema(id: &'static str, params: &str, side: &[&'static str], template: &'static str) -> Schema {
    let decls = decls(params);
    let mut bound = Vec::new();
    for d in &decls {
        tyvars_of(&d.ty, &mut bound);
    }
    let mut free_tyvars = Vec::new();
    for v in ['a', 'b', 'g'] {
        if template.contains(&format!("{{{}}}", v)) && !bound.contains(&v) {
            free_tyvars.push(v);
        }
    }
    Schema { id, decls, free_tyvars, side: side.to_vec(), template }
}

const MACROS: &[(&str, &str)] = &[
    ("@VAR", "#var:(o eps)"),
    ("@COND", "#cond:(((eps eps) eps) eps)"),
    ("@CON", "#con:(o eps)"),
    ("@APP", "#app:((eps eps) eps)"),
    ("@ABS", "#abs:((eps eps) eps)"),
    ("@QUOT", "#quot:(eps eps)"),
    ("@EVAL", "#eval:((eps eps) eps)"),
    ("@EF", "#eval-free:(o eps)"),
    ("@NFI", "#not-free-in:((o eps) eps)"),
    ("@CL", "#cleanse:(eps eps)"),
    ("@SUB", "#sub:(((eps eps) eps) eps)"),
    ("@PAIR", "#pair:((<{a}, {b}> {b}) {a})"),
    ("@W[", "#wff^"),
    ("]", ":(o eps)"),
];

const SUB_PRE: &str = "((@W[{a}] $A) & (var^{a} $B))";

fn table() -> Vec<Schema> {
    let mut t = vec![
        schema("1", "G:(o o) x:o", &[], "(((G:(o o) T) & (G:(o o) F)) <=> (forall $x. (G:(o o) $x)))"),
        schema("2", "A:a B:a H:(o a)", &[], "(($A == $B) => (($H $A) <=> ($H $B)))"),
        schema(
            "3",
            "F:(a b) G:(a b) x:b",
            &[],
            "((($F !) & ($G !)) => (($F == $G) <=> (forall $x. (($F $x) ~~ ($G $x)))))",
        ),
        schema(
            "4.1",
            "A:a x:a B:b C:b",
            &[],
            "((($A !) & ((@SUB (quote $A) (quote $x) (quote $B)) == (quote $C))) => (((\\$x. $B) $A) ~~ $C))",
        ),
        schema("4.2", "x:a A:a", &[], "(((\\$x. $x) $A) ~~ $A)"),
        schema("4.3", "x:a y:b A:a", &["x!=y"], "(($A !) => (((\\$x. $y) $A) ~~ $y))"),
        schema("4.4", "x:a c:b A:a", &[], "(($A !) => (((\\$x. $c) $A) ~~ $c))"),
        schema(
            "4.5",
            "x:a B:(b g) C:g A:a",
            &[],
            "(((\\$x. ($B $C)) $A) ~~ (((\\$x. $B) $A) ((\\$x. $C) $A)))",
        ),
        schema("4.6", "x:a B:b A:a", &[], "(($A !) => (((\\$x. (\\$x. $B)) $A) == (\\$x. $B)))"),
        schema(
            "4.7",
            "x:a y:b B:g A:a",
            &["x!=y"],
            "((($A !) & ((@NFI (quote $x) (quote $B)) | (@NFI (quote $y) (quote $A)))) => (((\\$x. (\\$y. $B)) $A) == (\\$y. ((\\$x. $B) $A))))",
        ),
        schema(
            "4.8",
            "x:a B:o C:b D:b A:a",
            &[],
            "(((\\$x. (if $B $C $D)) $A) ~~ (if ((\\$x. $B) $A) ((\\$x. $C) $A) ((\\$x. $D) $A)))",
        ),
        schema("4.9", "x:a B:b A:a", &[], "(($A !) => (((\\$x. (quote $B)) $A) ~~ (quote $B)))"),
        schema("4.10", "x:a B:b", &[], "(((\\$x. $B) $x) ~~ $B)"),
        schema("5", "A:o", &["taut:A"], "$A"),
        schema("6.1", "x:a", &[], "($x !)"),
        schema("6.2", "c:a", &[], "($c !)"),
        schema("6.3", "A:(o b) B:b", &[], "(($A $B) !)"),
        schema("6.4", "A:(a b) B:b", &[], "((($A ?) | ($B ?)) => (($A $B) ~~ bot:{a}))"),
        schema("6.5", "x:a B:b", &[], "((\\$x. $B) !)"),
        schema("6.6", "A:o B:o C:o", &[], "((if $A $B $C) !)"),
        schema("6.7", "A:a", &[], "((quote $A) !)"),
        schema("6.8", "A:eps", &[], "((eval $A : o) !)"),
        schema("6.9", "A:a", &[], "((eval (quote (quote $A)) : eps) !)"),
        schema("6.10", "A:eps", &[], "((~ (eval-free^{a} $A)) => ((eval $A : {a}) ~~ bot:{a}))"),
        schema("6.11", "", &["a!=o"], "(bot:{a} ?)"),
        schema("7", "A:a", &[], "($A ~~ $A)"),
        schema("8.1", "x:a A:o", &["a!=o"], "((exists1 $x. $A) <=> ((desc $x. $A) !))"),
        schema(
            "8.2",
            "x:a A:o B:o",
            &["a!=o"],
            "(((exists1 $x. $A) & ((@SUB (quote (desc $x. $A)) (quote $x) (quote $A)) == (quote $B))) => $B)",
        ),
        schema(
            "9.1",
            "A:a B:b C:a D:b",
            &[],
            "(((@PAIR $A $B) == (@PAIR $C $D)) <=> (($A == $C) & ($B == $D)))",
        ),
        schema(
            "9.2",
            "A:<a,b> x:a y:b",
            &[],
            "(($A !) => (exists $x. (exists $y. ($A == (@PAIR $x $y)))))",
        ),
        schema("10.1", "B:a C:a", &[], "((if T $B $C) ~~ $B)"),
        schema("10.2", "B:a C:a", &[], "((if F $B $C) ~~ $C)"),
        schema(
            "10.3",
            "A:o B:eps C:eps",
            &[],
            "((eval (if $A $B $C) : {a}) ~~ (if $A (eval $B : {a}) (eval $C : {a})))",
        ),
        schema("11.1", "x:a", &[], "((eval (quote $x) : {a}) == $x)"),
        schema("11.2", "c:a", &[], "((eval (quote $c) : {a}) == $c)"),
        schema(
            "11.3",
            "A:eps B:eps",
            &[],
            "((@W[({a} {b})] $A) => ((eval (@APP $A $B) : {a}) ~~ ((eval $A : ({a} {b})) (eval $B : {b}))))",
        ),
        schema(
            "11.4",
            "x:a B:eps",
            &[],
            "((@NFI (quote $x) (quote $B)) => ((eval (@ABS (quote $x) $B) : ({b} {a})) ~~ (\\$x. (eval $B : {b}))))",
        ),
        schema(
            "11.5",
            "A:eps B:eps C:eps",
            &[],
            "((eval (@COND $A $B $C) : {a}) ~~ (if (eval $A : o) (eval $B : {a}) (eval $C : {a})))",
        ),
        schema(
            "11.6",
            "A:eps",
            &[],
            "(((eval (@QUOT $A) : eps) !) => ((eval (@QUOT $A) : eps) == $A))",
        ),
        // Axiom 12: syntax constants.
        schema("12.2.1", "x:a", &[], "(@VAR (quote $x))"),
        schema("12.2.2", "A:a", &["A:notvar"], "(~ (@VAR (quote $A)))"),
        schema("12.3.1", "c:a", &[], "(@CON (quote $c))"),
        schema("12.3.2", "A:a", &["A:notprim"], "(~ (@CON (quote $A)))"),
        schema("12.4.1", "A:eps", &[], "(~ ((@VAR $A) & (@CON $A)))"),
        schema("12.4.2", "A:eps D:eps E:eps", &[], "(~ ((@VAR $A) & ($A == (@APP $D $E))))"),
        schema("12.4.3", "A:eps D:eps E:eps", &[], "(~ ((@VAR $A) & ($A == (@ABS $D $E))))"),
        schema(
            "12.4.4",
            "A:eps D:eps E:eps F:eps",
            &[],
            "(~ ((@VAR $A) & ($A == (@COND $D $E $F))))",
        ),
        schema("12.4.5", "A:eps D:eps", &[], "(~ ((@VAR $A) & ($A == (@QUOT $D))))"),
        schema("12.4.6", "A:eps D:eps E:eps", &[], "(~ ((@VAR $A) & ($A == (@EVAL $D $E))))"),
        schema("12.4.7", "A:eps D:eps E:eps", &[], "(~ ((@CON $A) & ($A == (@APP $D $E))))"),
        schema("12.4.8", "A:eps D:eps E:eps", &[], "(~ ((@CON $A) & ($A == (@ABS $D $E))))"),
        schema(
            "12.4.9",
            "A:eps D:eps E:eps F:eps",
            &[],
            "(~ ((@CON $A) & ($A == (@COND $D $E $F))))",
        ),
        schema("12.4.10", "A:eps D:eps", &[], "(~ ((@CON $A) & ($A == (@QUOT $D))))"),
        schema("12.4.11", "A:eps D:eps E:eps", &[], "(~ ((@CON $A) & ($A == (@EVAL $D $E))))"),
        schema("12.4.12", "A:eps B:eps D:eps E:eps", &[], "(~ ((@APP $A $B) == (@ABS $D $E)))"),
        schema(
            "12.4.13",
            "A:eps B:eps D:eps E:eps F:eps",
            &[],
            "(~ ((@APP $A $B) == (@COND $D $E $F)))",
        ),
        schema("12.4.14", "A:eps B:eps D:eps", &[], "(~ ((@APP $A $B) == (@QUOT $D)))"),
        schema("12.4.15", "A:eps B:eps D:eps E:eps", &[], "(~ ((@APP $A $B) == (@EVAL $D $E)))"),
        schema(
            "12.4.16",
            "A:eps B:eps D:eps E:eps F:eps",
            &[],
            "(~ ((@ABS $A $B) == (@COND $D $E $F)))",
        ),
        schema("12.4.17", "A:eps B:eps D:eps", &[], "(~ ((@ABS $A $B) == (@QUOT $D)))"),
        schema("12.4.18", "A:eps B:eps D:eps E:eps", &[], "(~ ((@ABS $A $B) == (@EVAL $D $E)))"),
        schema(
            "12.4.19",
            "A:eps B:eps C:eps D:eps",
            &[],
            "(~ ((@COND $A $B $C) == (@QUOT $D)))",
        ),
        schema(
            "12.4.20",
            "A:eps B:eps C:eps D:eps E:eps",
            &[],
            "(~ ((@COND $A $B $C) == (@EVAL $D $E)))",
        ),
        schema("12.4.21", "A:eps D:eps E:eps", &[], "(~ ((@QUOT $A) == (@EVAL $D $E)))"),
        schema("12.4.22", "x:a y:b", &["x!=y"], "(~ ((quote $x) == (quote $y)))"),
        schema("12.4.23", "c:a d:b", &["c!=d"], "(~ ((quote $c) == (quote $d)))"),
        schema(
            "12.4.24",
            "A:eps B:eps D:eps E:eps",
            &[],
            "(((@APP $A $B) == (@APP $D $E)) => (($A == $D) & ($B == $E)))",
        ),
        schema(
            "12.4.25",
            "A:eps B:eps D:eps E:eps",
            &[],
            "(((@ABS $A $B) == (@ABS $D $E)) => (($A == $D) & ($B == $E)))",
        ),
        schema(
            "12.4.26",
            "A:eps B:eps C:eps D:eps E:eps F:eps",
            &[],
            "(((@COND $A $B $C) == (@COND $D $E $F)) => ((($A == $D) & ($B == $E)) & ($C == $F)))",
        ),
        schema("12.4.27", "A:eps D:eps", &[], "(((@QUOT $A) == (@QUOT $D)) => ($A == $D))"),
        schema(
            "12.4.28",
            "A:eps B:eps D:eps E:eps",
            &[],
            "(((@EVAL $A $B) == (@EVAL $D $E)) => (($A == $D) & ($B == $E)))",
        ),
        schema(
            "12.4.29",
            "",
            &[],
            "(((((((((forall x:eps. ((@VAR x:eps) => (p:(o eps) x:eps))) \
             & (forall x:eps. ((@CON x:eps) => (p:(o eps) x:eps)))) \
             & (forall x:eps. (forall y:eps. (((p:(o eps) x:eps) & (p:(o eps) y:eps)) => (p:(o eps) (@APP x:eps y:eps)))))) \
             & (forall x:eps. (forall y:eps. (((p:(o eps) x:eps) & (p:(o eps) y:eps)) => (p:(o eps) (@ABS x:eps y:eps)))))) \
             & (forall x:eps. (forall y:eps. (forall z:eps. ((((p:(o eps) x:eps) & (p:(o eps) y:eps)) & (p:(o eps) z:eps)) => (p:(o eps) (@COND x:eps y:eps z:eps))))))) \
             & (forall x:eps. ((p:(o eps) x:eps) => (p:(o eps) (@QUOT x:eps))))) \
             & (forall x:eps. (forall y:eps. (((p:(o eps) x:eps) & (p:(o eps) y:eps)) => (p:(o eps) (@EVAL x:eps y:eps))))))) \
             => (forall x:eps. (p:(o eps) x:eps)))",
        ),
        schema("12.5.1", "A:eps", &[], "((@VAR $A) => (@EF $A))"),
        schema("12.5.2", "A:eps", &[], "((@CON $A) => (@EF $A))"),
        schema(
            "12.5.3",
            "A:eps B:eps",
            &[],
            "(((@APP $A $B) !) => ((@EF (@APP $A $B)) <=> ((@EF $A) & (@EF $B))))",
        ),
        schema("12.5.4", "A:eps B:eps", &[], "(((@ABS $A $B) !) => ((@EF (@ABS $A $B)) <=> (@EF $B)))"),
        schema(
            "12.5.5",
            "A:eps B:eps C:eps",
            &[],
            "(((@COND $A $B $C) !) => ((@EF (@COND $A $B $C)) <=> (((@EF $A) & (@EF $B)) & (@EF $C))))",
        ),
        schema("12.5.6", "A:eps", &[], "(($A !) => (@EF (@QUOT $A)))"),
        schema("12.5.7", "A:eps B:eps", &[], "(~ (@EF (@EVAL $A $B)))"),
        schema("12.6.1", "x:a", &[], "(@W[{a}] (quote $x))"),
        schema("12.6.2", "c:a", &[], "(@W[{a}] (quote $c))"),
        schema(
            "12.6.3",
            "A:eps B:eps",
            &[],
            "(((@W[({a} {b})] $A) & (@W[{b}] $B)) => (@W[{a}] (@APP $A $B)))",
        ),
        schema(
            "12.6.4",
            "A:eps B:eps",
            &[],
            "(((((@W[i] $A) | (@W[o] $A)) | (@W[eps] $A)) | (@W[<{a}, {b}>] $A)) => ((@APP $A $B) ?))",
        ),
        schema(
            "12.6.5",
            "A:eps B:eps",
            &[],
            "(((@W[({a} {b})] $A) & (~ (@W[{b}] $B))) => ((@APP $A $B) ?))",
        ),
        schema(
            "12.6.6",
            "A:eps B:eps",
            &[],
            "(((var^{a} $A) & (@W[{b}] $B)) => (@W[({b} {a})] (@ABS $A $B)))",
        ),
        schema("12.6.7", "A:eps B:eps", &[], "((~ (@VAR $A)) => ((@ABS $A $B) ?))"),
        schema(
            "12.6.8",
            "A:eps B:eps C:eps",
            &[],
            "((((@W[o] $A) & (@W[{a}] $B)) & (@W[{a}] $C)) => (@W[{a}] (@COND $A $B $C)))",
        ),
        schema(
            "12.6.9",
            "A:eps B:eps C:eps",
            &["a!=b"],
            "(((~ (@W[o] $A)) | ((@W[{a}] $B) & (@W[{b}] $C))) => ((@COND $A $B $C) ?))",
        ),
        schema("12.6.10", "A:eps", &[], "(($A !) => (@W[eps] (@QUOT $A)))"),
        schema(
            "12.6.11",
            "A:eps B:eps",
            &[],
            "(((@W[eps] $A) & (var^{a} $B)) => (@W[{a}] (@EVAL $A $B)))",
        ),
        schema(
            "12.6.12",
            "A:eps B:eps",
            &[],
            "(((~ (@W[eps] $A)) | (~ (@VAR $B))) => ((@EVAL $A $B) ?))",
        ),
        schema("12.6.13", "A:eps", &["a!=b"], "(~ ((@W[{a}] $A) & (@W[{b}] $A)))"),
        schema("12.7.1", "A:eps", &[], "((@VAR $A) => (~ (@NFI $A $A)))"),
        schema(
            "12.7.2",
            "A:eps B:eps",
            &[],
            "((((@VAR $A) & (@VAR $B)) & (~ ($A == $B))) => (@NFI $A $B))",
        ),
        schema("12.7.3", "A:eps B:eps", &[], "(((@VAR $A) & (@CON $B)) => (@NFI $A $B))"),
        schema(
            "12.7.4",
            "A:eps B:eps C:eps",
            &[],
            "(((@VAR $A) & ((@APP $B $C) !)) => ((@NFI $A (@APP $B $C)) <=> ((@NFI $A $B) & (@NFI $A $C))))",
        ),
        schema(
            "12.7.5",
            "A:eps B:eps",
            &[],
            "(((@VAR $A) & ((@ABS $A $B) !)) => (@NFI $A (@ABS $A $B)))",
        ),
        schema(
            "12.7.6",
            "A:eps B:eps C:eps",
            &[],
            "(((((@VAR $A) & (@VAR $B)) & (~ ($A == $B))) & ((@ABS $B $C) !)) => ((@NFI $A (@ABS $B $C)) <=> (@NFI $A $C)))",
        ),
        schema(
            "12.7.7",
            "A:eps D:eps E:eps F:eps",
            &[],
            "(((@VAR $A) & ((@COND $D $E $F) !)) => ((@NFI $A (@COND $D $E $F)) <=> (((@NFI $A $D) & (@NFI $A $E)) & (@NFI $A $F))))",
        ),
        schema("12.7.8", "A:eps B:eps", &[], "(((@VAR $A) & ($B !)) => (@NFI $A (@QUOT $B)))"),
        schema(
            "12.7.9",
            "A:eps B:eps C:eps",
            &[],
            "((((@VAR $A) & (var^{a} $C)) & ((@EVAL $B $C) !)) => ((@NFI $A (@EVAL $B $C)) <=> ((((syn-closed $B) & (eval-free^eps $B)) & (eval-free^{a} (eval $B : eps))) & (@NFI $A (eval $B : eps)))))",
        ),
        schema("12.7.10", "A:eps B:eps", &[], "((~ (@VAR $A)) => (@NFI $A $B))"),
        schema("12.8.1", "A:eps", &[], "((@VAR $A) => ((@CL $A) == $A))"),
        schema("12.8.2", "A:eps", &[], "((@CON $A) => ((@CL $A) == $A))"),
        schema(
            "12.8.3",
            "A:eps B:eps",
            &[],
            "(((@APP $A $B) !) => ((@CL (@APP $A $B)) ~~ (@APP (@CL $A) (@CL $B))))",
        ),
        schema(
            "12.8.4",
            "A:eps B:eps",
            &[],
            "(((@ABS $A $B) !) => ((@CL (@ABS $A $B)) ~~ (@ABS $A (@CL $B))))",
        ),
        schema(
            "12.8.5",
            "A:eps B:eps C:eps",
            &[],
            "(((@COND $A $B $C) !) => ((@CL (@COND $A $B $C)) ~~ (@COND (@CL $A) (@CL $B) (@CL $C))))",
        ),
        schema("12.8.6", "A:eps", &[], "((@CL (@QUOT $A)) ~~ (@QUOT $A))"),
        schema(
            "12.8.7",
            "A:eps B:eps",
            &[],
            "(((var^{a} $B) & ((@EVAL $A $B) !)) => ((@CL (@EVAL $A $B)) ~~ (if ((syn-closed (@CL $A)) & (eval-free^{a} (eval (@CL $A) : eps))) (eval (@CL $A) : eps) bot:eps)))",
        ),
        schema("12.9.1", "A:eps B:eps", &[], "(%PRE => ((@SUB $A $B $B) == (@CL $A)))"),
        schema(
            "12.9.2",
            "A:eps B:eps C:eps",
            &[],
            "(((%PRE & (@VAR $C)) & (~ ($B == $C))) => ((@SUB $A $B $C) == $C))",
        ),
        schema("12.9.3", "A:eps B:eps C:eps", &[], "((%PRE & (@CON $C)) => ((@SUB $A $B $C) == $C))"),
        schema(
            "12.9.4",
            "A:eps B:eps D:eps E:eps",
            &[],
            "((%PRE & ((@APP $D $E) !)) => ((@SUB $A $B (@APP $D $E)) ~~ (@APP (@SUB $A $B $D) (@SUB $A $B $E))))",
        ),
        schema(
            "12.9.5",
            "A:eps B:eps E:eps",
            &[],
            "((%PRE & ((@ABS $B $E) !)) => ((@SUB $A $B (@ABS $B $E)) ~~ (@ABS $B (@CL $E))))",
        ),
        schema(
            "12.9.6",
            "A:eps B:eps D:eps E:eps",
            &[],
            "((((%PRE & (@VAR $D)) & (~ ($B == $D))) & ((@ABS $D $E) !)) => ((@SUB $A $B (@ABS $D $E)) ~~ (if ((@NFI $B $E) | (@NFI $D $A)) (@ABS $D (@SUB $A $B $E)) bot:eps)))",
        ),
        schema(
            "12.9.7",
            "A:eps B:eps D:eps E:eps F:eps",
            &[],
            "((%PRE & ((@COND $D $E $F) !)) => ((@SUB $A $B (@COND $D $E $F)) ~~ (@COND (@SUB $A $B $D) (@SUB $A $B $E) (@SUB $A $B $F))))",
        ),
        schema(
            "12.9.8",
            "A:eps B:eps C:eps",
            &[],
            "((%PRE & ($C !)) => ((@SUB $A $B (@QUOT $C)) == (@QUOT $C)))",
        ),
        schema(
            "12.9.9",
            "A:eps B:eps D:eps E:eps",
            &[],
            "(((%PRE & (var^{b} $E)) & ((@EVAL $D $E) !)) => ((@SUB $A $B (@EVAL $D $E)) ~~ (if ((syn-closed (@SUB $A $B $D)) & (eval-free^{b} (eval (@SUB $A $B $D) : eps))) (@SUB $A $B (eval (@SUB $A $B $D) : eps)) bot:eps)))",
        ),
        schema(
            "12.9.10",
            "A:eps B:eps C:eps",
            &[],
            "(((@W[{a}] $A) & (~ (var^{a} $B))) => ((@SUB $A $B $C) ?))",
        ),
    ];
    // Every Specification 9 clause is indexed by the type `a` of the substituted wff.
    for s in t.iter_mut().filter(|s| s.id.starts_with("12.9.") && s.id != "12.9.10") {
        if !s.free_tyvars.contains(&'a') {
            s.free_tyvars.insert(0, 'a');
        }
    }
    t
}

fn schemas() -> &'static [Schema] {
    static T: OnceLock<Vec<Schema>> = OnceLock::new();
    T.get_or_init(table)
}

fn find(id: &str) -> Option<&'static Schema> {
    let id = if id == "12.1.1" { "12.1" } else { id };
    schemas().iter().find(|s| s.id == id)
}

/// The wff parameters of schema `id` with their types, resolving type variables with `tyvar`.
/// `None` for unknown schemas and for the quotation schema, whose parameter is unconstrained.
pub fn param_types(id: &str, tyvar: &dyn Fn(char) -> Type) -> Option<Vec<(String, Type)>> {
    fn resolve(p: &TyPat, tyvar: &dyn Fn(char) -> Type) -> Type {
        match p {
            TyPat::Base(t) => t.clone(),
            TyPat::TyVar(v) => tyvar(*v),
            TyPat::Fun(r, a) => Type::fun(resolve(r, tyvar), resolve(a, tyvar)),
            TyPat::Pair(a, b) => Type::pair(resolve(a, tyvar), resolve(b, tyvar)),
        }
    }
    let s = find(id)?;
    Some(s.decls.iter().map(|d| (d.name.clone(), resolve(&d.ty, tyvar))).collect())
}

/// Identifiers of every schema, in table order.
pub fn schema_ids() -> Vec<&'static str> {
    let mut ids = vec!["12.1"];
    ids.extend(schemas().iter().map(|s| s.id));
    ids
}

fn side_fail(what: &str) -> KernelError {
    KernelError::SideConditionViolated(what.to_string())
}

fn get<'p>(params: &'p [(String, Param)], name: &str) -> Option<&'p Param> {
    params.iter().find(|(n, _)| n == name).map(|(_, p)| p)
}

fn param_wff<'p>(params: &'p [(String, Param)], name: &str) -> Result<&'p Wff, KernelError> {
    match get(params, name) {
        Some(Param::Wff(w)) => Ok(w),
        Some(Param::Type(_)) => Err(KernelError::IllTypedParams(format!("`{}` must be a wff", name))),
        None => Err(KernelError::MissingParam(name.to_string())),
    }
}

/// The wff asserted by the schema instance, canonicalized.
pub fn instantiate(id: &str, params: &[(String, Param)], sig: &Signature) -> Result<Wff, KernelError> {
    if id == "12.1" || id == "12.1.1" {
        let a = param_wff(params, "A")?;
        type_of_open(a).map_err(|e| KernelError::IllTypedParams(e.to_string()))?;
        return Ok(canonicalize(&sugar::eq(Wff::quote(a.clone()), encode(a))));
    }
    let s = find(id).ok_or_else(|| KernelError::UnknownSchema(id.to_string()))?;
    for (n, _) in params {
        let known = s.decls.iter().any(|d| d.name == *n) || (n.len() == 1 && "abg".contains(n.as_str()));
        if !known {
            return Err(KernelError::IllTypedParams(format!("unknown parameter `{}`", n)));
        }
    }
    let mut env: BTreeMap<char, Type> = BTreeMap::new();
    for v in ['a', 'b', 'g'] {
        match get(params, &v.to_string()) {
            Some(Param::Type(t)) => {
                env.insert(v, t.clone());
            }
            Some(Param::Wff(_)) => {
                return Err(KernelError::IllTypedParams(format!("`{}` must be a type", v)))
            }
            None => {}
        }
    }
    let mut values: BTreeMap<String, Wff> = BTreeMap::new();
    for d in &s.decls {
        let w = param_wff(params, &d.name)?;
        let ty = type_of_open(w).map_err(|e| KernelError::IllTypedParams(e.to_string()))?;
        if !d.ty.matches(&ty, &mut env) {
            return Err(KernelError::IllTypedParams(format!(
                "`{}` has type {}, which does not fit {}",
                d.name,
                ty,
                d.ty.template().replace(['{', '}'], "")
            )));
        }
        match d.kind {
            Kind::Var if w.as_var().is_none() => {
                return Err(KernelError::IllTypedParams(format!("`{}` must be a variable", d.name)))
            }
            Kind::Prim => match w.as_const() {
                Some(c) if sig.definition(&c.name).is_none() => {}
                _ => {
                    return Err(KernelError::SideConditionViolated(format!(
                        "{} is a primitive constant",
                        d.name
                    )))
                }
            },
            _ => {}
        }
        values.insert(d.name.clone(), w.clone());
    }
    for v in &s.free_tyvars {
        if !env.contains_key(v) {
            return Err(KernelError::MissingParam(v.to_string()));
        }
    }
    for cond in &s.side {
        check_side(cond, &values, &env)?;
    }
    let text = render(&s, &env);
    let template = parse(&text).unwrap_or_else(|e| panic!("schema {} template: {}", s.id, e));
    let mut map: BTreeMap<Var, Wff> = BTreeMap::new();
    for d in &s.decls {
        let ty = d.ty.template();
        let ty = subst_tyvars(&ty, &env);
        let ty = crate::syntax::parse_type(&ty).expect("rendered type");
        map.insert(Var::new(&d.name, ty), values[&d.name].clone());
    }
    let inst = canonicalize(&replace_metavars(&template, &map));
    match type_of_open(&inst) {
        Ok(Type::O) => Ok(inst),
        Ok(t) => Err(KernelError::IllTypedParams(format!("instance has type {}", t))),
        Err(e) => Err(KernelError::IllTypedParams(e.to_string())),
    }
}

fn check_side(cond: &str, values: &BTreeMap<String, Wff>, env: &BTreeMap<char, Type>) -> Result<(), KernelError> {
    if let Some(name) = cond.strip_prefix("taut:") {
        return match taut_check(&values[name]) {
            Ok(true) => Ok(()),
            Ok(false) => Err(side_fail(&format!("{} is a tautology", name))),
            Err(e) => Err(side_fail(&format!("{} is a tautology ({})", name, e))),
        };
    }
    if let Some(name) = cond.strip_suffix(":notvar") {
        return if values[name].as_var().is_some() { Err(side_fail(&format!("{} is not a variable", name))) } else { Ok(()) };
    }
    if let Some(name) = cond.strip_suffix(":notprim") {
        return if values[name].as_const().is_some() {
            Err(side_fail(&format!("{} is not a primitive constant", name)))
        } else {
            Ok(())
        };
    }
    let (l, r) = cond.split_once("!=").expect("side condition");
    let differ = if l.len() == 1 && "abg".contains(l) {
        let lt = &env[&l.chars().next().unwrap()];
        let rt = if r == "o" { Type::O } else { env[&r.chars().next().unwrap()].clone() };
        *lt != rt
    } else {
        values[l] != values[r]
    };
    if differ {
        Ok(())
    } else {
        Err(side_fail(&format!("{} != {}", l, r)))
    }
}

fn subst_tyvars(text: &str, env: &BTreeMap<char, Type>) -> String {
    let mut out = text.to_string();
    for (v, t) in env {
        out = out.replace(&format!("{{{}}}", v), &t.to_string());
    }
    out
}

fn render(s: &Schema, env: &BTreeMap<char, Type>) -> String {
    let mut text = s.template.replace("%PRE", SUB_PRE);
    let mut names: Vec<&Decl> = s.decls.iter().collect();
    names.sort_by_key(|d| std::cmp::Reverse(d.name.len()));
    for d in names {
        text = text.replace(&format!("${}", d.name), &format!("{}:{}", d.name, d.ty.template()));
    }
    for (k, v) in MACROS {
        text = text.replace(k, v);
    }
    subst_tyvars(&text, env)
}

/// Replaces metavariables everywhere, including binder positions and quotation
/// bodies. No renaming is performed.
fn replace_metavars(w: &Wff, map: &BTreeMap<Var, Wff>) -> Wff {
    match w {
        Wff::Var(v) => map.get(v).cloned().unwrap_or_else(|| w.clone()),
        Wff::Const(_) => w.clone(),
        Wff::App(f, a) => Wff::app(replace_metavars(f, map), replace_metavars(a, map)),
        Wff::Abs(x, b) => {
            let x = match map.get(x) {
                Some(Wff::Var(y)) => y.clone(),
                _ => x.clone(),
            };
            Wff::abs(x, replace_metavars(b, map))
        }
        Wff::Cond(t, a, b) => {
            Wff::cond(replace_metavars(t, map), replace_metavars(a, map), replace_metavars(b, map))
        }
        Wff::Quote(a) => Wff::quote(replace_metavars(a, map)),
        Wff::Eval(a, t) => Wff::eval(replace_metavars(a, map), t.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps(name: &str) -> (String, Param) {
        (name.to_string(), Param::Wff(Wff::var(&format!("{}0", name.to_lowercase()), Type::Eps)))
    }

    /// Every template parses and type-checks with all-`i` type variables.
    #[test]
    fn templates_are_well_formed() {
        let sig = Signature::new();
        for s in table() {
            let mut env = BTreeMap::new();
            for v in ['a', 'b', 'g'] {
                env.insert(v, if s.side.contains(&"a!=b") && v == 'b' { Type::O } else { Type::I });
            }
            let text = render(&s, &env);
            let w = parse(&text).unwrap_or_else(|e| panic!("{}: {} in {}", s.id, e, text));
            assert_eq!(type_of_open(&w).unwrap(), Type::O, "{}", s.id);
            if s.decls.iter().all(|d| d.ty == TyPat::Base(Type::Eps)) && s.side.is_empty() {
                let mut params: Vec<(String, Param)> = s.decls.iter().map(|d| eps(&d.name)).collect();
                for v in &s.free_tyvars {
                    params.push((v.to_string(), Param::Type(Type::I)));
                }
                instantiate(s.id, &params, &sig).unwrap_or_else(|e| panic!("{}: {}", s.id, e));
            }
        }
    }
}
