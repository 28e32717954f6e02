//! `quqe`: batch front end for parsing, normalization, substitution queries and proof checking.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quqe_core::algebra::{self, PartialResult, TriState};
use quqe_core::encoding::{canonicalize, encode, Construction};
use quqe_core::kernel::script::{check_script, parse_script, parse_theory, parse_wff_in};
use quqe_core::kernel::{Mode, Theory};
use quqe_core::normalizer::{normalize, taut_check, NormError, Status, TautError};
use quqe_core::stdlib;
use quqe_core::syntax::{parse_type, type_of_open, Printer, Signature, Type, Var, Wff};

#[derive(Parser, Debug)]
#[command(name = "quqe", version, about = "Type theory with quotation and evaluation")]
struct Cli {
    /// Theory file (`.quqe`) supplying constants, definitions and hypotheses.
    #[arg(long, global = true)]
    theory: Option<PathBuf>,
    /// Print machine-readable records.
    #[arg(long, global = true)]
    json: bool,
    /// Rewrite budget for normalization.
    #[arg(long, global = true, default_value_t = 100_000)]
    fuel: u64,
    /// Hypothesis discipline; overrides the theory file.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Print wffs without notational abbreviations.
    #[arg(long, global = true)]
    expand_sugar: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Ef,
    General,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and type-check a wff, printing it back.
    CheckWff { wff: String },
    /// Print the type of a wff.
    Typecheck { wff: String },
    /// Normalize a wff.
    Normalize { wff: String },
    /// Substitute the wff A for the variable x in the construction B.
    Sub {
        #[arg(long)]
        a: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        b: String,
    },
    /// Cleanse a construction.
    Cleanse {
        #[arg(long)]
        c: String,
    },
    /// Decide whether a variable is free in no evaluation-reachable position of a construction.
    NotFreeIn {
        #[arg(long)]
        v: String,
        #[arg(long)]
        c: String,
    },
    /// Print the construction literal of a wff.
    Quote { wff: String },
    /// Evaluate a construction at a type.
    Eval {
        wff: String,
        #[arg(long = "type")]
        ty: String,
    },
    /// Decide whether a formula is a tautology.
    Taut { wff: String },
    /// Check proof scripts.
    Prove {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Run the standard library demonstrations.
    Demo {
        #[arg(value_enum)]
        name: Option<Demo>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Demo {
    Implies,
    AndSimp,
    DoubleSubst,
    Proofs,
}

/// The module-level outcome of a command; it alone determines the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Verdict {
    Ok,
    True,
    False,
    Defined,
    Undefined,
    Unknown,
    Failed,
    Usage,
}

impl Verdict {
    fn code(self) -> u8 {
        match self {
            Verdict::Ok | Verdict::True | Verdict::Defined => 0,
            Verdict::False | Verdict::Undefined | Verdict::Failed => 1,
            Verdict::Unknown => 2,
            Verdict::Usage => 3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Verdict::Ok => "ok",
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Defined => "defined",
            Verdict::Undefined => "undefined",
            Verdict::Unknown => "unknown",
            Verdict::Failed => "failed",
            Verdict::Usage => "usage",
        }
    }

    fn of(t: TriState) -> Verdict {
        match t {
            TriState::True => Verdict::True,
            TriState::False => Verdict::False,
            TriState::Unknown => Verdict::Unknown,
        }
    }
}

/// A command result: a verdict, the human-readable text and the JSON record.
struct Outcome {
    verdict: Verdict,
    text: String,
    record: Value,
}

impl Outcome {
    fn new(verdict: Verdict, text: impl Into<String>, mut record: Value) -> Outcome {
        record["verdict"] = json!(verdict.name());
        Outcome { verdict, text: text.into(), record }
    }

    fn failed(msg: impl Into<String>) -> Outcome {
        let msg = msg.into();
        Outcome::new(Verdict::Failed, format!("error: {}", msg), json!({ "error": msg }))
    }

    fn usage(msg: impl Into<String>) -> Outcome {
        let msg = msg.into();
        Outcome::new(Verdict::Usage, format!("error: {}", msg), json!({ "error": msg }))
    }
}

struct Ctx {
    theory: Theory,
    fuel: u64,
    expand: bool,
}

impl Ctx {
    fn sig(&self) -> &Signature {
        &self.theory.sig
    }

    fn show(&self, w: &Wff) -> String {
        if self.expand {
            Printer::expanded().print(w)
        } else {
            Printer::display().with_sig(self.sig()).print(w)
        }
    }

    fn parse(&self, text: &str) -> Result<Wff, Outcome> {
        parse_wff_in(text, self.sig()).map_err(|e| Outcome::failed(format!("`{}`: {}", text, e)))
    }

    fn parse_at(&self, text: &str, ty: &Type) -> Result<Wff, Outcome> {
        let w = self.parse(text)?;
        match type_of_open(&w) {
            Ok(t) if t == *ty => Ok(w),
            Ok(t) => Err(Outcome::failed(format!("`{}` has type {}, expected {}", text, t, ty))),
            Err(e) => Err(Outcome::failed(e.to_string())),
        }
    }

    fn parse_var(&self, text: &str) -> Result<Var, Outcome> {
        match self.parse(text)? {
            Wff::Var(v) => Ok(v),
            _ => Err(Outcome::failed(format!("`{}` is not a variable", text))),
        }
    }

    /// An eps-expression reduced to a construction literal. `Err` carries the outcome
    /// when it denotes no construction or its value is not determined.
    fn construction(&self, text: &str) -> Result<Construction, Outcome> {
        let w = canonicalize(&self.parse_at(text, &Type::Eps)?);
        if let Some(c) = Construction::from_literal(&w) {
            return Ok(c);
        }
        let nf = normalize(&w, self.fuel).map_err(norm_outcome)?;
        if let Status::Bottom(_) = nf.status {
            return Err(Outcome::new(Verdict::Undefined, "undefined", json!({ "input": text })));
        }
        Construction::from_literal(&nf.wff).ok_or_else(|| {
            Outcome::new(
                Verdict::Unknown,
                format!("unknown: `{}` does not reduce to a construction", text),
                json!({ "input": text, "wff": self.show(&nf.wff) }),
            )
        })
    }

    fn partial(&self, r: Result<PartialResult, algebra::AlgebraError>) -> Outcome {
        match r {
            Ok(PartialResult::Defined(c)) => {
                let s = self.show(&c.literal);
                Outcome::new(Verdict::Defined, s.clone(), json!({ "wff": s }))
            }
            Ok(PartialResult::Undefined) => Outcome::new(Verdict::Undefined, "undefined", json!({})),
            Ok(PartialResult::Unknown) => Outcome::new(Verdict::Unknown, "unknown", json!({})),
            Err(e) => Outcome::new(Verdict::Unknown, format!("unknown: {}", e), json!({ "error": e.to_string() })),
        }
    }
}

fn norm_outcome(e: NormError) -> Outcome {
    match e {
        NormError::FuelExhausted(_) | NormError::Algebra(_) => {
            Outcome::new(Verdict::Unknown, format!("unknown: {}", e), json!({ "error": e.to_string() }))
        }
        NormError::IllTyped(e) => Outcome::failed(e.to_string()),
    }
}

fn load_theory(cli: &Cli) -> Result<Theory, Outcome> {
    let mut theory = match &cli.theory {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Outcome::usage(format!("{}: {}", path.display(), e)))?;
            parse_theory(&text).map_err(|e| Outcome::failed(format!("{}: {}", path.display(), e)))?
        }
        None => Theory::new(Signature::new(), Mode::EvaluationFree),
    };
    if let Some(m) = cli.mode {
        let mode = match m {
            ModeArg::Ef => Mode::EvaluationFree,
            ModeArg::General => Mode::General,
        };
        let hyps = std::mem::take(&mut theory.hyps);
        theory.mode = mode;
        for h in hyps {
            theory.add_hyp(h).map_err(|e| Outcome::failed(e.to_string()))?;
        }
    }
    Ok(theory)
}

fn run(cli: &Cli) -> Result<Outcome, Outcome> {
    let ctx = Ctx { theory: load_theory(cli)?, fuel: cli.fuel, expand: cli.expand_sugar };
    let out = match &cli.command {
        Command::CheckWff { wff } => {
            let w = ctx.parse(wff)?;
            let ty = type_of_open(&w).map_err(|e| Outcome::failed(e.to_string()))?;
            let s = ctx.show(&w);
            Outcome::new(Verdict::Ok, format!("{} : {}", s, ty), json!({ "wff": s, "type": ty.to_string() }))
        }
        Command::Typecheck { wff } => {
            let w = ctx.parse(wff)?;
            let ty = type_of_open(&w).map_err(|e| Outcome::failed(e.to_string()))?;
            Outcome::new(Verdict::Ok, ty.to_string(), json!({ "type": ty.to_string() }))
        }
        Command::Normalize { wff } => {
            let w = ctx.parse(wff)?;
            let nf = normalize(&w, ctx.fuel).map_err(norm_outcome)?;
            let (verdict, status) = match nf.status {
                Status::Value => (Verdict::Ok, "value"),
                Status::Stuck => (Verdict::Ok, "stuck"),
                Status::Bottom(_) => (Verdict::Undefined, "undefined"),
            };
            let s = ctx.show(&nf.wff);
            Outcome::new(verdict, s.clone(), json!({ "wff": s, "status": status }))
        }
        Command::Sub { a, x, b } => {
            let a = ctx.parse(a)?;
            let x = ctx.parse_var(x)?;
            let b = ctx.construction(b)?;
            ctx.partial(algebra::subst(&Construction::of(&a), &Construction::of(&Wff::Var(x)), &b))
        }
        Command::Cleanse { c } => {
            let c = ctx.construction(c)?;
            ctx.partial(algebra::cleanse(&c))
        }
        Command::NotFreeIn { v, c } => {
            let v = ctx.parse_var(v)?;
            let c = ctx.construction(c)?;
            match algebra::not_free_in(&Construction::of(&Wff::Var(v)), &c) {
                Ok(t) => {
                    let verdict = Verdict::of(t);
                    Outcome::new(verdict, verdict.name(), json!({}))
                }
                Err(e) => Outcome::new(Verdict::Unknown, format!("unknown: {}", e), json!({ "error": e.to_string() })),
            }
        }
        Command::Quote { wff } => {
            let w = ctx.parse(wff)?;
            let s = ctx.show(&canonicalize(&encode(&w)));
            Outcome::new(Verdict::Ok, s.clone(), json!({ "wff": s }))
        }
        Command::Eval { wff, ty } => {
            let ty = parse_type(ty).map_err(|e| Outcome::usage(format!("`{}`: {}", ty, e)))?;
            let c = ctx.parse_at(wff, &Type::Eps)?;
            let nf = normalize(&Wff::eval(c, ty), ctx.fuel).map_err(norm_outcome)?;
            let s = ctx.show(&nf.wff);
            match nf.status {
                Status::Value => Outcome::new(Verdict::Defined, s.clone(), json!({ "wff": s })),
                Status::Bottom(_) => Outcome::new(Verdict::Undefined, "undefined", json!({ "wff": s })),
                Status::Stuck => Outcome::new(Verdict::Unknown, s.clone(), json!({ "wff": s })),
            }
        }
        Command::Taut { wff } => {
            let w = ctx.parse(wff)?;
            match taut_check(&w) {
                Ok(b) => {
                    let v = if b { Verdict::True } else { Verdict::False };
                    Outcome::new(v, v.name(), json!({}))
                }
                Err(e @ TautError::NotFormula(_)) => Outcome::failed(e.to_string()),
                Err(e @ TautError::TooManyAtoms(_)) => {
                    Outcome::new(Verdict::Unknown, format!("unknown: {}", e), json!({ "error": e.to_string() }))
                }
            }
        }
        Command::Prove { files } => prove(&ctx, files),
        Command::Demo { name } => demo(*name),
    };
    Ok(out)
}

fn prove_one(theory: &Theory, path: &PathBuf) -> Outcome {
    let file = path.display().to_string();
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::usage(format!("{}: {}", file, e)),
    };
    let script = match parse_script(&text, &theory.sig) {
        Ok(s) => s,
        Err(e) => return Outcome::failed(format!("{}: {}", file, e)),
    };
    let report = check_script(theory, &script);
    if report.ok {
        return Outcome::new(
            Verdict::Ok,
            format!("ok ({} lines)", report.lines),
            json!({
                "file": file,
                "lines": report.lines,
                "primitive_lines": report.primitive_lines,
                "evaluation_free": report.evaluation_free,
            }),
        );
    }
    let diags: Vec<Value> = report
        .diagnostics
        .iter()
        .map(|(l, e)| json!({ "line": l, "class": e.class(), "message": e.to_string() }))
        .collect();
    let text = report
        .diagnostics
        .iter()
        .map(|(l, e)| format!("  line {}: {}: {}", l, e.class(), e))
        .collect::<Vec<_>>()
        .join("\n");
    Outcome::new(Verdict::Failed, format!("failed\n{}", text), json!({ "file": file, "diagnostics": diags }))
}

fn prove(ctx: &Ctx, files: &[PathBuf]) -> Outcome {
    let outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = files.iter().map(|f| s.spawn(|| prove_one(&ctx.theory, f))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Outcome::failed("checker panicked")))
            .collect()
    });
    if outcomes.len() == 1 {
        return outcomes.into_iter().next().expect("one outcome");
    }
    let verdict = outcomes.iter().map(|o| o.verdict).max_by_key(|v| v.code()).unwrap_or(Verdict::Ok);
    let text = files
        .iter()
        .zip(&outcomes)
        .map(|(f, o)| format!("{}: {}", f.display(), o.text))
        .collect::<Vec<_>>()
        .join("\n");
    let records: Vec<Value> = outcomes.into_iter().map(|o| o.record).collect();
    Outcome::new(verdict, text, json!({ "files": records }))
}

fn demo(name: Option<Demo>) -> Outcome {
    let theory = stdlib::stdlib_theory();
    let pr = Printer::display().with_sig(&theory.sig);
    let apply = |f: &str, args: &[Wff]| {
        let head = theory.sig.definition(f).expect("library definition").body.clone();
        args.iter().fold(head, |acc, a| Wff::app(acc, a.clone()))
    };
    let nf = |w: &Wff| normalize(w, quqe_core::normalizer::DEFAULT_FUEL).map(|n| n.wff);
    let p = |s: &str| parse_wff_in(s, &Signature::new()).expect("demo input parses");
    let mut lines = Vec::new();
    let mut ok = true;
    let want = |n: Demo| name.is_none() || name == Some(n);

    if want(Demo::Implies) {
        let (a, b) = (p("(p:o & q:o)"), p("r:o"));
        let imp = encode(&quqe_core::syntax::sugar::implies(a.clone(), b.clone()));
        for (f, args) in [
            ("implies", vec![encode(&a), encode(&b)]),
            ("is-implication", vec![imp.clone()]),
            ("antecedent", vec![imp.clone()]),
            ("succedent", vec![imp.clone()]),
            ("converse", vec![imp.clone()]),
        ] {
            let shown: Vec<String> = args.iter().map(|w| pr.print(&canonicalize(w))).collect();
            match nf(&apply(f, &args)) {
                Ok(r) => lines.push(format!("{} {} = {}", f, shown.join(" "), pr.print(&r))),
                Err(e) => {
                    ok = false;
                    lines.push(format!("{} {}: {}", f, shown.join(" "), e));
                }
            }
        }
    }
    if want(Demo::AndSimp) {
        let items = ["T", "F", "p:o", "q:o", "(p:o & q:o)"].map(|s| encode(&p(s)));
        for a in &items {
            for b in &items {
                let r = stdlib::and_simp(a, b).map(|r| pr.print(&r)).unwrap_or_else(|e| e.to_string());
                lines.push(format!("and-simp {} {} = {}", pr.print(&canonicalize(a)), pr.print(&canonicalize(b)), r));
            }
        }
    }
    if want(Demo::DoubleSubst) {
        let x = Construction::of(&p("x:eps"));
        let b = Construction::from_literal(&canonicalize(&p("(quote (eval x:eps : o))"))).expect("literal");
        for a in ["(quote (p:o => q:o))", "(quote (x:eps == x:eps))"] {
            let r = match algebra::subst(&Construction::of(&p(a)), &x, &b) {
                Ok(PartialResult::Defined(c)) => pr.print(&c.literal),
                other => format!("{:?}", other),
            };
            lines.push(format!("sub (quote {}) (quote x:eps) (quote (eval x:eps : o)) = {}", a, r));
        }
    }
    if want(Demo::Proofs) {
        for s in stdlib::SCRIPTS {
            match stdlib::check_shipped(&theory, s) {
                Ok(()) => lines.push(format!("{}: ok ({} lines)", s.name, s.lines)),
                Err(e) => {
                    ok = false;
                    lines.push(format!("{}: {}", s.name, e));
                }
            }
        }
    }
    let verdict = if ok { Verdict::Ok } else { Verdict::Failed };
    Outcome::new(verdict, lines.join("\n"), json!({ "lines": lines }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Verdict::Usage.code() } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = run(&cli).unwrap_or_else(|o| o);
    // Write errors (a closed pipe) are ignored: the exit code still carries the verdict.
    let _ = if cli.json {
        writeln!(std::io::stdout(), "{}", out.record)
    } else if out.verdict == Verdict::Usage {
        writeln!(std::io::stderr(), "{}", out.text)
    } else {
        writeln!(std::io::stdout(), "{}", out.text)
    };
    ExitCode::from(out.verdict.code())
}
