//! Text formats: `.quqe` theory files and `.qpf` proof scripts.
//!
//! A theory file has one entry per line; indented lines continue the previous entry.
//!
//! ```text
//! -- comment
//! mode ef
//! const c : i
//! def implies : ((eps eps) eps) := (\x:eps. ...)
//! hyp (forall x:i. (x:i == #c:i))
//! ```
//!
//! A proof script has one numbered line per entry:
//!
//! ```text
//! line 1: T ; axiom 6.2 {c=#Q:((o o) o)}
//! line 2: ... ; rule1 1 1 at arg.fn
//! line 3: ... ; macro ug(2, x:o)
//! ```

use crate::encoding::canonicalize;
use crate::syntax::parse::{Parser, Tok};
use crate::syntax::{parse_type, type_of, type_of_open, Path, Printer, Signature, Type, Var, Wff};

use super::builder::ProofBuilder;
use super::{check_proof, Justification, KernelError, Mode, Param, Params, Theory};

type R<T> = Result<T, KernelError>;

fn perr(line: usize, msg: impl std::fmt::Display) -> KernelError {
    KernelError::Parse(format!("line {}: {}", line, msg))
}

/// Joins indented continuation lines and drops blank and comment lines.
fn entries(text: &str) -> Vec<(usize, String)> {
    let mut out: Vec<(usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if t.is_empty() || t.starts_with("--") {
            continue;
        }
        if raw.starts_with(char::is_whitespace) {
            if let Some(last) = out.last_mut() {
                last.1.push(' ');
                last.1.push_str(t);
                continue;
            }
        }
        out.push((i + 1, t.to_string()));
    }
    out
}

/// Parses a wff against `sig`, or in open mode when `sig` declares nothing.
pub fn parse_wff_in(text: &str, sig: &Signature) -> Result<Wff, String> {
    let open = sig.constants().next().is_none() && sig.definitions().is_empty();
    let mut p = Parser::new(text, sig).map_err(|e| e.to_string())?;
    p.open = open;
    let w = p.wff().map_err(|e| e.to_string())?;
    if !p.at_end() {
        return Err("trailing input".to_string());
    }
    check_type(&w, sig, open)?;
    Ok(w)
}

fn check_type(w: &Wff, sig: &Signature, open: bool) -> Result<Type, String> {
    if open {
        type_of_open(w).map_err(|e| e.to_string())
    } else {
        type_of(w, sig).map_err(|e| e.to_string())
    }
}

/// Parses a `.quqe` theory file.
pub fn parse_theory(text: &str) -> R<Theory> {
    let mut sig = Signature::new();
    let mut mode = Mode::EvaluationFree;
    let mut hyps = Vec::new();
    for (ln, e) in entries(text) {
        let (kw, rest) = e.split_once(char::is_whitespace).unwrap_or((&e, ""));
        let rest = rest.trim();
        match kw {
            "mode" => {
                mode = match rest {
                    "ef" => Mode::EvaluationFree,
                    "general" => Mode::General,
                    _ => return Err(perr(ln, format!("unknown mode `{}`", rest))),
                }
            }
            "const" => {
                let (name, ty) = rest.split_once(':').ok_or_else(|| perr(ln, "expected `const name : type`"))?;
                let ty = parse_type(ty.trim()).map_err(|e| perr(ln, e))?;
                sig.declare(name.trim(), ty).map_err(|e| perr(ln, e))?;
            }
            "def" => {
                let (head, body) = rest.split_once(":=").ok_or_else(|| perr(ln, "expected `:=`"))?;
                let (name, ty) = head.split_once(':').ok_or_else(|| perr(ln, "expected `def name : type := wff`"))?;
                let ty = parse_type(ty.trim()).map_err(|e| perr(ln, e))?;
                let body = crate::syntax::parse_wff(body.trim(), &sig).map_err(|e| perr(ln, e))?;
                sig.define(name.trim(), ty, body).map_err(|e| perr(ln, e))?;
            }
            "hyp" => hyps.push((ln, rest.to_string())),
            _ => return Err(perr(ln, format!("unknown entry `{}`", kw))),
        }
    }
    let mut theory = Theory::new(sig, mode);
    for (ln, h) in hyps {
        let w = crate::syntax::parse_wff(&h, &theory.sig).map_err(|e| perr(ln, e))?;
        theory.add_hyp(w).map_err(|e| perr(ln, e))?;
    }
    Ok(theory)
}

/// A derived rule invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Macro {
    /// Tautological consequence of the listed lines.
    Taut(Vec<usize>),
    /// Universal generalization of a line over a variable.
    Ug(usize, Var),
    /// Universal instantiation of a line at a wff.
    Ui(usize, Wff),
    /// Beta-reduction of a redex.
    Beta(Wff),
    /// Repeated head beta-reduction.
    Reduce(Wff),
    /// `sub ⌜a⌝ ⌜x⌝ ⌜b⌝ = ⌜c⌝`.
    Sub(Wff, Var, Wff),
    /// `not-free-in ⌜x⌝ ⌜c⌝`.
    NotFreeIn(Var, Wff),
    /// `wff^a ⌜c⌝`.
    WffOf(Wff),
    /// `cleanse ⌜c⌝ ~~ ⌜c⌝`.
    Cleanse(Wff),
    /// `A!`.
    Defined(Wff),
}

/// How a script line follows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScriptJust {
    Prim(Justification),
    Macro(Macro),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptLine {
    pub wff: Wff,
    pub just: ScriptJust,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub lines: Vec<ScriptLine>,
}

/// Parses a `.qpf` proof script against the theory's signature.
pub fn parse_script(text: &str, sig: &Signature) -> R<Script> {
    let mut lines = Vec::new();
    for (ln, e) in entries(text) {
        let rest = e.strip_prefix("line").ok_or_else(|| perr(ln, "expected `line <n>:`"))?;
        let (num, rest) = rest.split_once(':').ok_or_else(|| perr(ln, "expected `:` after the line number"))?;
        let n: usize = num.trim().parse().map_err(|_| perr(ln, "bad line number"))?;
        if n != lines.len() + 1 {
            return Err(perr(ln, format!("expected line {}, found line {}", lines.len() + 1, n)));
        }
        let (wff, just) = rest.split_once(';').ok_or_else(|| perr(ln, "expected `; <justification>`"))?;
        let wff = parse_wff_in(wff.trim(), sig).map_err(|m| perr(ln, m))?;
        let just = parse_just(just.trim(), sig).map_err(|m| perr(ln, m))?;
        lines.push(ScriptLine { wff, just });
    }
    Ok(Script { lines })
}

fn num(s: &str) -> Result<usize, String> {
    s.parse().map_err(|_| format!("expected a line number, found `{}`", s))
}

fn parse_just(text: &str, sig: &Signature) -> Result<ScriptJust, String> {
    let (kw, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let rest = rest.trim();
    let words: Vec<&str> = rest.split_whitespace().collect();
    Ok(match kw {
        "hyp" => ScriptJust::Prim(Justification::Hyp(num(rest)?)),
        "rule2" if words.len() == 2 => {
            ScriptJust::Prim(Justification::Rule2 { imp: num(words[0])?, ante: num(words[1])? })
        }
        "rule1" if words.len() == 4 && words[2] == "at" => {
            let path = Path::parse(words[3]).ok_or_else(|| format!("bad path `{}`", words[3]))?;
            ScriptJust::Prim(Justification::Rule1 { eq: num(words[0])?, target: num(words[1])?, path })
        }
        "axiom" => {
            let (id, params) = match rest.find('{') {
                Some(i) => (rest[..i].trim(), parse_params(&rest[i..], sig)?),
                None => (rest, Vec::new()),
            };
            ScriptJust::Prim(Justification::Axiom { id: id.to_string(), params })
        }
        "macro" => ScriptJust::Macro(parse_macro(rest, sig)?),
        _ => return Err(format!("unknown justification `{}`", text)),
    })
}

fn is_type_param(name: &str) -> bool {
    matches!(name, "a" | "b" | "g")
}

fn open_parser<'a>(text: &str, sig: &'a Signature) -> Result<(Parser<'a>, bool), String> {
    let open = sig.constants().next().is_none() && sig.definitions().is_empty();
    let mut p = Parser::new(text, sig).map_err(|e| e.to_string())?;
    p.open = open;
    Ok((p, open))
}

/// Parses `{name=value, ...}`.
pub fn parse_params(text: &str, sig: &Signature) -> Result<Params, String> {
    let (mut p, open) = open_parser(text, sig)?;
    let e = |r: Result<(), crate::syntax::ParseError>| r.map_err(|e| e.to_string());
    e(p.expect(Tok::LBrace))?;
    let mut out = Vec::new();
    if p.peek() == Some(&Tok::RBrace) {
        p.next();
    } else {
        loop {
            let name = p.ident().map_err(|e| e.to_string())?;
            e(p.expect(Tok::Assign))?;
            let value = if is_type_param(&name) {
                Param::Type(p.ty().map_err(|e| e.to_string())?)
            } else {
                let w = p.wff().map_err(|e| e.to_string())?;
                check_type(&w, sig, open)?;
                Param::Wff(w)
            };
            out.push((name, value));
            match p.next() {
                Some(Tok::Comma) => continue,
                Some(Tok::RBrace) => break,
                _ => return Err("expected `,` or `}` in parameters".to_string()),
            }
        }
    }
    if !p.at_end() {
        return Err("trailing input after parameters".to_string());
    }
    Ok(out)
}

enum Arg {
    Line(usize),
    Wff(Wff),
}

fn parse_macro(text: &str, sig: &Signature) -> Result<Macro, String> {
    let open_at = text.find('(').ok_or("expected `name(args)`")?;
    let name = text[..open_at].trim();
    let (mut p, open) = open_parser(&text[open_at..], sig)?;
    p.expect(Tok::LParen).map_err(|e| e.to_string())?;
    let mut args = Vec::new();
    if p.peek() == Some(&Tok::RParen) {
        p.next();
    } else {
        loop {
            if let Some(Tok::Num(s)) = p.peek().cloned() {
                p.next();
                args.push(Arg::Line(num(&s)?));
            } else {
                let w = p.wff().map_err(|e| e.to_string())?;
                check_type(&w, sig, open)?;
                args.push(Arg::Wff(w));
            }
            match p.next() {
                Some(Tok::Comma) => continue,
                Some(Tok::RParen) => break,
                _ => return Err("expected `,` or `)` in macro arguments".to_string()),
            }
        }
    }
    if !p.at_end() {
        return Err("trailing input after macro".to_string());
    }
    let bad = || format!("bad arguments to macro `{}`", name);
    let var = |a: &Arg| match a {
        Arg::Wff(Wff::Var(v)) => Some(v.clone()),
        _ => None,
    };
    let wff = |a: &Arg| match a {
        Arg::Wff(w) => Some(w.clone()),
        _ => None,
    };
    let line = |a: &Arg| match a {
        Arg::Line(n) => Some(*n),
        _ => None,
    };
    Ok(match (name, args.as_slice()) {
        ("taut", xs) => Macro::Taut(xs.iter().map(line).collect::<Option<Vec<_>>>().ok_or_else(bad)?),
        ("ug", [n, x]) => Macro::Ug(line(n).ok_or_else(bad)?, var(x).ok_or_else(bad)?),
        ("ui", [n, a]) => Macro::Ui(line(n).ok_or_else(bad)?, wff(a).ok_or_else(bad)?),
        ("beta", [r]) => Macro::Beta(wff(r).ok_or_else(bad)?),
        ("reduce", [r]) => Macro::Reduce(wff(r).ok_or_else(bad)?),
        ("sub", [a, x, b]) => {
            Macro::Sub(wff(a).ok_or_else(bad)?, var(x).ok_or_else(bad)?, wff(b).ok_or_else(bad)?)
        }
        ("not-free-in", [x, c]) => Macro::NotFreeIn(var(x).ok_or_else(bad)?, wff(c).ok_or_else(bad)?),
        ("wff", [c]) => Macro::WffOf(wff(c).ok_or_else(bad)?),
        ("cleanse", [c]) => Macro::Cleanse(wff(c).ok_or_else(bad)?),
        ("defined", [c]) => Macro::Defined(wff(c).ok_or_else(bad)?),
        _ => return Err(bad()),
    })
}

/// Outcome of checking a script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptReport {
    pub ok: bool,
    /// Number of script lines.
    pub lines: usize,
    /// Number of primitive lines after expanding derived rules.
    pub primitive_lines: usize,
    /// Every primitive line is evaluation-free.
    pub evaluation_free: bool,
    /// Failing script lines.
    pub diagnostics: Vec<(usize, KernelError)>,
}

/// Expands and checks a script. Every primitive line produced by a derived rule
/// is checked again by [`check_proof`].
pub fn check_script(theory: &Theory, script: &Script) -> ScriptReport {
    let mut b = ProofBuilder::new(theory);
    let mut map: Vec<Option<usize>> = Vec::new();
    let mut diagnostics = Vec::new();
    for (i, l) in script.lines.iter().enumerate() {
        let n = i + 1;
        match run_line(&mut b, &map, n, l) {
            Ok(k) => map.push(Some(k)),
            Err(e) => {
                diagnostics.push((n, e));
                map.push(None);
            }
        }
    }
    let primitive_lines = b.len();
    let report = check_proof(theory, &b.into_proof());
    for (line, e) in report.errors() {
        diagnostics.push((0, KernelError::Parse(format!("expanded line {}: {}", line, e))));
    }
    ScriptReport {
        ok: diagnostics.is_empty(),
        lines: script.lines.len(),
        primitive_lines,
        evaluation_free: report.evaluation_free,
        diagnostics,
    }
}

fn run_line(b: &mut ProofBuilder, map: &[Option<usize>], n: usize, l: &ScriptLine) -> R<usize> {
    let r = |k: usize| -> R<usize> {
        if k == 0 || k >= n {
            return Err(KernelError::BadLineRef { line: n, reference: k });
        }
        map[k - 1].ok_or(KernelError::DependsOnInvalid { line: n, reference: k })
    };
    let k = match &l.just {
        ScriptJust::Prim(j) => {
            let j = match j {
                Justification::Rule1 { eq, target, path } => {
                    Justification::Rule1 { eq: r(*eq)?, target: r(*target)?, path: path.clone() }
                }
                Justification::Rule2 { imp, ante } => Justification::Rule2 { imp: r(*imp)?, ante: r(*ante)? },
                other => other.clone(),
            };
            b.push(j)?
        }
        ScriptJust::Macro(m) => match m {
            Macro::Taut(prem) => {
                let prem = prem.iter().map(|&k| r(k)).collect::<R<Vec<_>>>()?;
                b.taut(&prem, l.wff.clone())?
            }
            Macro::Ug(k, x) => b.ug(r(*k)?, x)?,
            Macro::Ui(k, a) => b.ui(r(*k)?, a)?,
            Macro::Beta(w) => b.beta(w)?,
            Macro::Reduce(w) => b.reduce(w)?,
            Macro::Sub(a, x, c) => b.sub_equation(a, x, c)?,
            Macro::NotFreeIn(x, c) => b.not_free_in(x, c)?,
            Macro::WffOf(c) => b.wff_of(c)?,
            Macro::Cleanse(c) => b.cleanse(c)?,
            Macro::Defined(c) => b.defined(c)?,
        },
    };
    let stated = canonicalize(&l.wff);
    if *b.wff(k) != stated {
        return Err(KernelError::LineMismatch { derived: crate::syntax::display(b.wff(k)) });
    }
    Ok(k)
}

/// Prints a script in the `.qpf` format. Wffs print in sugared form, with theory
/// definitions folded to their names.
pub fn print_script(script: &Script, sig: &Signature) -> String {
    let pr = Printer::exact().with_sig(sig);
    let mut out = String::new();
    for (i, l) in script.lines.iter().enumerate() {
        out.push_str(&format!("line {}: {} ; {}\n", i + 1, pr.print(&l.wff), print_just(&l.just, &pr)));
    }
    out
}

fn print_just(j: &ScriptJust, pr: &Printer) -> String {
    let var = |v: &Var| format!("{}:{}", v.name, v.ty);
    match j {
        ScriptJust::Prim(Justification::Hyp(k)) => format!("hyp {}", k),
        ScriptJust::Prim(Justification::Rule1 { eq, target, path }) => format!("rule1 {} {} at {}", eq, target, path),
        ScriptJust::Prim(Justification::Rule2 { imp, ante }) => format!("rule2 {} {}", imp, ante),
        ScriptJust::Prim(Justification::Axiom { id, params }) => {
            if params.is_empty() {
                return format!("axiom {}", id);
            }
            let ps: Vec<String> = params
                .iter()
                .map(|(n, p)| match p {
                    Param::Wff(w) => format!("{}={}", n, pr.print(w)),
                    Param::Type(t) => format!("{}={}", n, t),
                })
                .collect();
            format!("axiom {} {{{}}}", id, ps.join(", "))
        }
        ScriptJust::Macro(m) => match m {
            Macro::Taut(ls) => {
                format!("macro taut({})", ls.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(", "))
            }
            Macro::Ug(k, x) => format!("macro ug({}, {})", k, var(x)),
            Macro::Ui(k, a) => format!("macro ui({}, {})", k, pr.print(a)),
            Macro::Beta(w) => format!("macro beta({})", pr.print(w)),
            Macro::Reduce(w) => format!("macro reduce({})", pr.print(w)),
            Macro::Sub(a, x, b) => format!("macro sub({}, {}, {})", pr.print(a), var(x), pr.print(b)),
            Macro::NotFreeIn(x, c) => format!("macro not-free-in({}, {})", var(x), pr.print(c)),
            Macro::WffOf(c) => format!("macro wff({})", pr.print(c)),
            Macro::Cleanse(c) => format!("macro cleanse({})", pr.print(c)),
            Macro::Defined(c) => format!("macro defined({})", pr.print(c)),
        },
    }
}
