//! Printing in the text grammar, with optional re-sugaring and literal folding.

use super::signature::Signature;
use super::sugar;
use super::wff::Wff;

/// Printer options.
#[derive(Clone, Copy)]
pub struct Printer<'a> {
    /// Re-sugar Table-2 expansions.
    pub sugar: bool,
    /// Print decodable E-structure as `(quote W)`.
    pub fold_literals: bool,
    /// Fold definition bodies back to their names.
    pub sig: Option<&'a Signature>,
}

impl<'a> Printer<'a> {
    /// Sugared, literal-folding display form.
    pub fn display() -> Printer<'static> {
        Printer { sugar: true, fold_literals: true, sig: None }
    }

    /// Sugared form that preserves the exact tree: parse of the output is the input.
    pub fn exact() -> Printer<'static> {
        Printer { sugar: true, fold_literals: false, sig: None }
    }

    /// Fully expanded form.
    pub fn expanded() -> Printer<'static> {
        Printer { sugar: false, fold_literals: false, sig: None }
    }

    pub fn with_sig(self, sig: &'a Signature) -> Printer<'a> {
        Printer { sig: Some(sig), ..self }
    }

    pub fn print(&self, w: &Wff) -> String {
        let mut s = String::new();
        self.go(w, &mut s);
        s
    }

    fn go(&self, w: &Wff, out: &mut String) {
        if self.fold_literals && !matches!(w, Wff::Quote(_)) {
            if let Some(d) = crate::encoding::decode(w) {
                out.push_str("(quote ");
                self.go(&d, out);
                out.push(')');
                return;
            }
        }
        if self.sugar && self.sugared(w, out) {
            return;
        }
        match w {
            Wff::Var(v) => out.push_str(&format!("{}:{}", v.name, v.ty)),
            Wff::Const(c) => out.push_str(&format!("#{}:{}", c.name, c.ty)),
            Wff::App(f, a) => {
                out.push('(');
                self.go(f, out);
                out.push(' ');
                self.go(a, out);
                out.push(')');
            }
            Wff::Abs(x, b) => {
                out.push_str(&format!("(\\{}:{}. ", x.name, x.ty));
                self.go(b, out);
                out.push(')');
            }
            Wff::Cond(t, a, b) => {
                out.push_str("(if ");
                self.go(t, out);
                out.push(' ');
                self.go(a, out);
                out.push(' ');
                self.go(b, out);
                out.push(')');
            }
            Wff::Quote(a) => {
                out.push_str("(quote ");
                self.go(a, out);
                out.push(')');
            }
            Wff::Eval(a, t) => {
                out.push_str("(eval ");
                self.go(a, out);
                out.push_str(&format!(" : {})", t));
            }
        }
    }

    fn infix(&self, a: &Wff, op: &str, b: &Wff, out: &mut String) {
        out.push('(');
        self.go(a, out);
        out.push_str(&format!(" {} ", op));
        self.go(b, out);
        out.push(')');
    }

    fn prefix(&self, kw: &str, a: &Wff, out: &mut String) {
        out.push_str(&format!("({} ", kw));
        self.go(a, out);
        out.push(')');
    }

    fn binder(&self, kw: &str, x: &super::wff::Var, a: &Wff, out: &mut String) {
        out.push_str(&format!("({} {}:{}. ", kw, x.name, x.ty));
        self.go(a, out);
        out.push(')');
    }

    fn postfix(&self, a: &Wff, op: &str, out: &mut String) {
        out.push('(');
        self.go(a, out);
        out.push_str(&format!(" {})", op));
    }

    /// Writes the sugared form of `w` if one applies.
    fn sugared(&self, w: &Wff, out: &mut String) -> bool {
        if matches!(w, Wff::Var(_) | Wff::Const(_)) {
            return false;
        }
        if let Some(sig) = self.sig {
            if let Some(d) = sig.definitions().iter().find(|d| d.body == *w) {
                out.push_str(&format!("#{}:{}", d.name, d.ty));
                return true;
            }
        }
        if sugar::is_t(w) {
            out.push('T');
        } else if sugar::is_f(w) {
            out.push('F');
        } else if let Some(t) = sugar::as_bottom(w) {
            out.push_str(&format!("bot:{}", t));
        } else if let Some((a, b)) = sugar::as_qeq(w) {
            self.infix(a, "~~", b, out);
        } else if let Some((x, a)) = sugar::as_exists1(w) {
            self.binder("exists1", x, a, out);
        } else if let Some((x, a)) = sugar::as_exists(w) {
            self.binder("exists", x, a, out);
        } else if let Some(a) = sugar::as_undefined(w) {
            self.postfix(a, "?", out);
        } else if let Some((x, a)) = sugar::as_forall(w) {
            self.binder("forall", x, a, out);
        } else if let Some((a, b)) = sugar::as_or(w) {
            self.infix(a, "|", b, out);
        } else if let Some((a, b)) = sugar::as_implies(w) {
            self.infix(a, "=>", b, out);
        } else if let Some((a, b)) = sugar::as_and(w) {
            self.infix(a, "&", b, out);
        } else if let Some(a) = sugar::as_not(w) {
            self.prefix("~", a, out);
        } else if let Some(a) = sugar::as_defined(w) {
            self.postfix(a, "!", out);
        } else if let Some((a, b)) = sugar::as_eq(w) {
            let op = if a.ty() == crate::syntax::Type::O { "<=>" } else { "==" };
            self.infix(a, op, b, out);
        } else if let Some((x, a)) = sugar::as_desc(w) {
            self.binder("desc", x, a, out);
        } else if let Some(a) = sugar::as_fst(w) {
            self.prefix("fst", a, out);
        } else if let Some(a) = sugar::as_snd(w) {
            self.prefix("snd", a, out);
        } else if let Some((k, t, a)) = sugar::as_base_pred(w) {
            self.prefix(&format!("{}^{}", k.keyword(), t), a, out);
        } else if let Some(a) = sugar::as_syn_closed(w) {
            self.prefix("syn-closed", a, out);
        } else {
            return false;
        }
        true
    }
}

/// Exact sugared printing: `parse(print(w)) == w`.
pub fn print(w: &Wff) -> String {
    Printer::exact().print(w)
}

/// Display printing with literals folded to quotations.
pub fn display(w: &Wff) -> String {
    Printer::display().print(w)
}
