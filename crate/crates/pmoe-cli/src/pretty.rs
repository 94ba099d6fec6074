//! Pattern and expression pretty-printing, inverse to the parser: printing a
//! parsed pattern and reparsing it yields a structurally equal pattern.

use pmoe_core::pattern::{LetBinder, LoopEnd, Pat, Pattern};
use pmoe_core::value::{CmpOp, Expr, Value};

pub fn pattern_to_string(p: &Pat) -> String {
    print_pattern(p, Prec::Join)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Join, // loosest: a ++ b
    Cons, // a : b
    Atom,
}

fn print_pattern(p: &Pat, want: Prec) -> String {
    let (s, prec) = render_pattern(p);
    if prec < want {
        format!("({s})")
    } else {
        s
    }
}

fn render_pattern(p: &Pat) -> (String, Prec) {
    match &**p {
        Pattern::Wildcard => ("_".into(), Prec::Atom),
        Pattern::Var(name) => (format!("${name}"), Prec::Atom),
        Pattern::IndexedVar(name, idx) => (format!("${name}_{}", index_atom(idx)), Prec::Atom),
        Pattern::Value(e) => (format!("#{}", expr_atom(e)), Prec::Atom),
        Pattern::Pred(e) => (format!("?{}", expr_atom(e)), Prec::Atom),
        Pattern::And(ps) => (prefix_form("and", ps), Prec::Atom),
        Pattern::Or(ps) => (prefix_form("or", ps), Prec::Atom),
        Pattern::Not(q) => (format!("!{}", print_pattern(q, Prec::Atom)), Prec::Atom),
        Pattern::Tuple(ps) => {
            let parts: Vec<String> = ps.iter().map(|q| print_pattern(q, Prec::Join)).collect();
            (format!("({})", parts.join(", ")), Prec::Atom)
        }
        Pattern::Ctor(name, args) => match (name.as_ref(), args.len()) {
            ("nil", 0) => ("[]".into(), Prec::Atom),
            ("cons", 2) => (
                format!(
                    "{} : {}",
                    print_pattern(&args[0], Prec::Atom),
                    print_pattern(&args[1], Prec::Cons)
                ),
                Prec::Cons,
            ),
            ("join", 2) => (
                format!(
                    "{} ++ {}",
                    print_pattern(&args[0], Prec::Cons),
                    print_pattern(&args[1], Prec::Join)
                ),
                Prec::Join,
            ),
            _ => {
                if args.is_empty() {
                    (name.to_string(), Prec::Atom)
                } else {
                    let parts: Vec<String> =
                        args.iter().map(|a| print_pattern(a, Prec::Atom)).collect();
                    (format!("{name} {}", parts.join(" ")), Prec::Cons)
                }
            }
        },
        Pattern::Loop {
            index_var,
            start,
            end,
            repeat,
            finish,
        } => {
            let var = if &**index_var == "_" {
                "_".to_string()
            } else {
                format!("${index_var}")
            };
            let end_str = match end {
                LoopEnd::Fixed(e) => expr_to_string(e),
                LoopEnd::Pat(q) => print_pattern(q, Prec::Join),
            };
            (
                format!(
                    "loop {var} ({}, {end_str}) {} {}",
                    expr_to_string(start),
                    print_pattern(repeat, Prec::Atom),
                    print_pattern(finish, Prec::Atom)
                ),
                Prec::Cons,
            )
        }
        Pattern::Ellipsis => ("...".into(), Prec::Atom),
        Pattern::Seq(ps) => {
            let parts: Vec<String> = ps.iter().map(|q| print_pattern(q, Prec::Join)).collect();
            (format!("seq [{}]", parts.join(", ")), Prec::Cons)
        }
        Pattern::LaterVar => ("@".into(), Prec::Atom),
        Pattern::Let { binder, expr, body } => {
            let b = match binder {
                LetBinder::Scalar(name) => format!("${name}"),
                LetBinder::Indexed(name, idx) => format!("${name}_{}", index_atom(idx)),
            };
            (
                format!(
                    "let {b} = {} in {}",
                    expr_to_string(expr),
                    print_pattern(body, Prec::Join)
                ),
                Prec::Cons,
            )
        }
    }
}

fn prefix_form(kw: &str, ps: &[Pat]) -> String {
    // Arms are space-separated, so anything non-atomic needs parentheses to
    // keep its extent unambiguous.
    let parts: Vec<String> = ps.iter().map(|q| print_pattern(q, Prec::Atom)).collect();
    format!("({kw} {})", parts.join(" "))
}

fn index_atom(e: &Expr) -> String {
    match e {
        Expr::Lit(Value::Int(i)) if *i >= 0 => i.to_string(),
        Expr::Var(name) => name.to_string(),
        other => format!("({})", expr_to_string(other)),
    }
}

/// Prints an expression in value/predicate-pattern position: atoms stand
/// bare, anything else is parenthesized.
fn expr_atom(e: &Expr) -> String {
    match e {
        Expr::Lit(Value::Int(i)) if *i >= 0 => i.to_string(),
        Expr::Lit(Value::Str(s)) => format!("{:?}", s.as_ref()),
        Expr::Lit(Value::Bool(true)) => "True".into(),
        Expr::Lit(Value::Bool(false)) => "False".into(),
        Expr::Var(name) => name.to_string(),
        Expr::IndexedVar(name, idx) => format!("{name}_{}", index_atom(idx)),
        Expr::CollE(items) => {
            let parts: Vec<String> = items.iter().map(expr_to_string).collect();
            format!("[{}]", parts.join(", "))
        }
        Expr::TupleE(items) => {
            let parts: Vec<String> = items.iter().map(expr_to_string).collect();
            format!("({})", parts.join(", "))
        }
        other => format!("({})", expr_to_string(other)),
    }
}

pub fn expr_to_string(e: &Expr) -> String {
    match e {
        Expr::Add(a, b) => format!("{} + {}", expr_mul(a), expr_mul(b)),
        Expr::Sub(a, b) => format!("{} - {}", expr_mul(a), expr_mul(b)),
        Expr::Mul(a, b) => format!("{} * {}", expr_app(a), expr_app(b)),
        Expr::Cmp(op, a, b) => {
            let sym = match op {
                CmpOp::Eq => "==",
                CmpOp::Lt => "<",
                CmpOp::Le => "<=",
                CmpOp::Gt => ">",
                CmpOp::Ge => ">=",
            };
            format!("{} {sym} {}", expr_mul(a), expr_mul(b))
        }
        Expr::Lambda(param, body) => format!("\\{param} -> {}", expr_to_string(body)),
        other => expr_mul(other),
    }
}

fn expr_mul(e: &Expr) -> String {
    match e {
        Expr::Mul(a, b) => format!("{} * {}", expr_app(a), expr_app(b)),
        Expr::Add(..) | Expr::Sub(..) | Expr::Cmp(..) | Expr::Lambda(..) => {
            format!("({})", expr_to_string(e))
        }
        other => expr_app(other),
    }
}

fn expr_app(e: &Expr) -> String {
    match e {
        Expr::Neg(a) => match &**a {
            Expr::Lit(Value::Int(_)) | Expr::Var(_) => format!("negate {}", expr_atom(a)),
            _ => format!("negate ({})", expr_to_string(a)),
        },
        Expr::Abs(a) => match &**a {
            Expr::Lit(Value::Int(_)) | Expr::Var(_) => format!("abs {}", expr_atom(a)),
            _ => format!("abs ({})", expr_to_string(a)),
        },
        Expr::Apply(f, a) => format!("{} {}", expr_app(f), expr_atom(a)),
        other => expr_atom(other),
    }
}
