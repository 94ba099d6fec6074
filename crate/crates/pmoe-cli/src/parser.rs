//! Recursive-descent parsers for the textual pattern language, the expression
//! language, and matcher expressions.
//!
//! Pattern syntax mirrors the library's constructs: `_`, `$x`, `$x_i`, `#e`,
//! `?e`, `!p`, `(and p q)`, `(or p q)`, `p : p` (cons, right-associative,
//! binds tighter than `++`), `p ++ p` (join), `[]` (nil), `(p, q)` (tuple),
//! `Name p q` (constructors), `loop $i (start, end) repeat final`, `...`,
//! `seq [p, q]`, `@`, and `let $x = e in p`.

use std::sync::Arc;

use pmoe_core::matcher as m;
use pmoe_core::pattern::{self, LetBinder, LoopEnd, Pat};
use pmoe_core::value::{CmpOp, Expr};
use pmoe_core::Matcher;

use crate::lexer::{lex, ParseError, Pos, Tok, Token};

/// Words with grammatical roles; they never act as expression variables.
const RESERVED: &[&str] = &["in", "loop", "seq", "let", "and", "or"];

fn tok_starts_expr_atom(tok: Option<&Tok>) -> bool {
    match tok {
        Some(Tok::Ident(name)) => !RESERVED.contains(&name.as_str()),
        Some(Tok::Int(_) | Tok::Str(_) | Tok::LParen | Tok::LBracket | Tok::Backslash) => true,
        _ => false,
    }
}

pub struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    pub fn new(src: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            at: 0,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.at + 1).map(|t| &t.tok)
    }

    fn pos(&self) -> Pos {
        self.toks
            .get(self.at)
            .or_else(|| self.toks.last())
            .map(|t| t.pos)
            .unwrap_or(Pos { line: 1, col: 1 })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.tok.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == tok => {
                self.at += 1;
                Ok(())
            }
            Some(t) => {
                let t = t.clone();
                self.err(format!("expected `{tok}`, found `{t}`"))
            }
            None => self.err(format!("expected `{tok}`, found end of input")),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn at_end(&self) -> bool {
        self.at >= self.toks.len()
    }

    fn expect_ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.next() {
            Some(Tok::Ident(name)) => Ok(name),
            Some(t) => self.err(format!("expected {what}, found `{t}`")),
            None => self.err(format!("expected {what}, found end of input")),
        }
    }

    // --- patterns -----------------------------------------------------------

    pub fn pattern(&mut self) -> Result<Pat, ParseError> {
        let lhs = self.pattern_cons()?;
        if self.eat(&Tok::PlusPlus) {
            let rhs = self.pattern()?;
            Ok(pattern::join(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn pattern_cons(&mut self) -> Result<Pat, ParseError> {
        let lhs = self.pattern_app()?;
        if self.eat(&Tok::Colon) {
            let rhs = self.pattern_cons()?;
            Ok(pattern::cons(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn pattern_app(&mut self) -> Result<Pat, ParseError> {
        if let Some(Tok::UpperIdent(name)) = self.peek() {
            let name = name.clone();
            self.at += 1;
            let mut args = Vec::new();
            while self.starts_pattern_atom() {
                args.push(self.pattern_atom()?);
            }
            return Ok(pattern::ctor(name, args));
        }
        self.pattern_atom()
    }

    fn starts_pattern_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(
                Tok::Underscore
                    | Tok::Dollar
                    | Tok::Hash
                    | Tok::Question
                    | Tok::Bang
                    | Tok::At
                    | Tok::Ellipsis
                    | Tok::LParen
                    | Tok::LBracket
                    | Tok::UpperIdent(_)
            )
        )
    }

    fn pattern_atom(&mut self) -> Result<Pat, ParseError> {
        match self.peek() {
            Some(Tok::Underscore) => {
                self.at += 1;
                Ok(pattern::wildcard())
            }
            Some(Tok::Dollar) => {
                self.at += 1;
                let name = self.expect_ident("a variable name after `$`")?;
                if self.eat(&Tok::Underscore) {
                    let idx = self.index_atom()?;
                    Ok(pattern::ipvar(name, idx))
                } else {
                    Ok(pattern::pvar(name))
                }
            }
            Some(Tok::Hash) => {
                self.at += 1;
                Ok(pattern::vpat(self.expr_atom()?))
            }
            Some(Tok::Question) => {
                self.at += 1;
                Ok(pattern::ppat(self.expr_atom()?))
            }
            Some(Tok::Bang) => {
                self.at += 1;
                Ok(pattern::not_p(self.pattern_atom()?))
            }
            Some(Tok::At) => {
                self.at += 1;
                Ok(pattern::later())
            }
            Some(Tok::Ellipsis) => {
                self.at += 1;
                Ok(pattern::ellipsis())
            }
            Some(Tok::LBracket) => {
                self.at += 1;
                self.expect(Tok::RBracket)?;
                Ok(pattern::nil())
            }
            Some(Tok::UpperIdent(name)) => {
                let name = name.clone();
                self.at += 1;
                Ok(pattern::ctor(name, vec![]))
            }
            Some(Tok::Ident(kw)) => match kw.as_str() {
                "loop" => self.loop_pattern(),
                "seq" => self.seq_pattern(),
                "let" => self.let_pattern(),
                other => self.err(format!("unexpected `{other}` in pattern")),
            },
            Some(Tok::LParen) => {
                self.at += 1;
                // (and ...) / (or ...) / tuple / grouping
                if let Some(Tok::Ident(kw)) = self.peek() {
                    if kw == "and" || kw == "or" {
                        let is_and = kw == "and";
                        self.at += 1;
                        let mut arms = Vec::new();
                        while !self.eat(&Tok::RParen) {
                            if self.at_end() {
                                return self.err("unclosed `(and ...)`");
                            }
                            arms.push(self.pattern()?);
                        }
                        if arms.len() < 2 {
                            return self.err("`and`/`or` need at least two patterns");
                        }
                        return Ok(if is_and {
                            pattern::and_p(arms)
                        } else {
                            pattern::or_p(arms)
                        });
                    }
                }
                let first = self.pattern()?;
                if self.eat(&Tok::Comma) {
                    let mut parts = vec![first];
                    loop {
                        parts.push(self.pattern()?);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RParen)?;
                    Ok(pattern::tuple_p(parts))
                } else {
                    self.expect(Tok::RParen)?;
                    Ok(first)
                }
            }
            Some(t) => {
                let t = t.clone();
                self.err(format!("unexpected `{t}` in pattern"))
            }
            None => self.err("unexpected end of input in pattern"),
        }
    }

    fn loop_pattern(&mut self) -> Result<Pat, ParseError> {
        self.at += 1; // loop
        let index_var = if self.eat(&Tok::Underscore) {
            "_".to_string()
        } else {
            self.expect(Tok::Dollar)?;
            self.expect_ident("a loop index variable")?
        };
        self.expect(Tok::LParen)?;
        let start = self.expr()?;
        self.expect(Tok::Comma)?;
        // A pattern-shaped end ($n, _, #e, ...) is a stop pattern; anything
        // else is a fixed repetition count.
        let end = match self.peek() {
            Some(Tok::Dollar | Tok::Underscore | Tok::Hash | Tok::Bang) => {
                LoopEnd::Pat(self.pattern()?)
            }
            _ => LoopEnd::Fixed(Arc::new(self.expr()?)),
        };
        self.expect(Tok::RParen)?;
        let repeat = self.pattern_atom()?;
        let finish = self.pattern_atom()?;
        pattern::loop_p(index_var, start, end, repeat, finish).map_err(|e| ParseError {
            pos: self.pos(),
            msg: e.to_string(),
        })
    }

    fn seq_pattern(&mut self) -> Result<Pat, ParseError> {
        self.at += 1; // seq
        self.expect(Tok::LBracket)?;
        let mut stages = Vec::new();
        if !self.eat(&Tok::RBracket) {
            loop {
                stages.push(self.pattern()?);
                if self.eat(&Tok::RBracket) {
                    break;
                }
                self.expect(Tok::Comma)?;
            }
        }
        Ok(pattern::seq_p(stages))
    }

    fn let_pattern(&mut self) -> Result<Pat, ParseError> {
        self.at += 1; // let
        self.expect(Tok::Dollar)?;
        let name = self.expect_ident("a binder name after `$`")?;
        let binder = if self.eat(&Tok::Underscore) {
            LetBinder::Indexed(Arc::from(name.as_str()), Arc::new(self.index_atom()?))
        } else {
            LetBinder::Scalar(Arc::from(name.as_str()))
        };
        self.expect(Tok::Assign)?;
        let value = self.expr()?;
        match self.next() {
            Some(Tok::Ident(kw)) if kw == "in" => {}
            _ => return self.err("expected `in` after the let binding"),
        }
        let body = self.pattern()?;
        Ok(pattern::let_p(binder, value, body))
    }

    /// Index of `$x_i`: an integer, an identifier, or a parenthesized
    /// expression.
    fn index_atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Int(i)) => {
                let i = *i;
                self.at += 1;
                Ok(Expr::int(i))
            }
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                self.at += 1;
                Ok(Expr::var(name))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => self.err("expected an index after `_`"),
        }
    }

    // --- expressions ----------------------------------------------------------

    pub fn expr(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.expr_addsub()?;
        let op = match self.peek() {
            Some(Tok::EqEq) => Some(CmpOp::Eq),
            Some(Tok::Lt) => Some(CmpOp::Lt),
            Some(Tok::Le) => Some(CmpOp::Le),
            Some(Tok::Gt) => Some(CmpOp::Gt),
            Some(Tok::Ge) => Some(CmpOp::Ge),
            _ => None,
        };
        if let Some(op) = op {
            self.at += 1;
            let rhs = self.expr_addsub()?;
            Ok(Expr::cmp(op, lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn expr_addsub(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.expr_mul()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::add(lhs, self.expr_mul()?);
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::sub(lhs, self.expr_mul()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn expr_mul(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.expr_unary()?;
        while self.eat(&Tok::Star) {
            lhs = Expr::mul(lhs, self.expr_unary()?);
        }
        Ok(lhs)
    }

    fn expr_unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Tok::Minus) {
            Ok(Expr::neg(self.expr_unary()?))
        } else {
            self.expr_app()
        }
    }

    fn expr_app(&mut self) -> Result<Expr, ParseError> {
        // `negate e` and `abs e` are builtins; any other application chain
        // applies closures left-associatively.
        if let Some(Tok::Ident(name)) = self.peek() {
            if (name == "negate" || name == "abs") && self.peek2_starts_expr_atom() {
                let is_negate = name == "negate";
                self.at += 1;
                let arg = self.expr_app()?;
                return Ok(if is_negate {
                    Expr::neg(arg)
                } else {
                    Expr::abs(arg)
                });
            }
        }
        let mut f = self.expr_atom()?;
        while self.starts_expr_atom() {
            f = Expr::apply(f, self.expr_atom()?);
        }
        Ok(f)
    }

    fn starts_expr_atom(&self) -> bool {
        tok_starts_expr_atom(self.peek())
    }

    fn peek2_starts_expr_atom(&self) -> bool {
        tok_starts_expr_atom(self.peek2())
    }

    pub fn expr_atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Int(i)) => {
                let i = *i;
                self.at += 1;
                Ok(Expr::int(i))
            }
            Some(Tok::Str(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(Expr::str(s))
            }
            Some(Tok::Ident(name)) => {
                if RESERVED.contains(&name.as_str()) {
                    let name = name.clone();
                    return self.err(format!("`{name}` is reserved and cannot be a variable"));
                }
                let name = name.clone();
                self.at += 1;
                if self.eat(&Tok::Underscore) {
                    let idx = self.index_atom()?;
                    Ok(Expr::indexed(name, idx))
                } else {
                    Ok(Expr::var(name))
                }
            }
            Some(Tok::UpperIdent(name)) => match name.as_str() {
                "True" => {
                    self.at += 1;
                    Ok(Expr::Lit(pmoe_core::Value::Bool(true)))
                }
                "False" => {
                    self.at += 1;
                    Ok(Expr::Lit(pmoe_core::Value::Bool(false)))
                }
                other => self.err(format!("unexpected `{other}` in expression")),
            },
            Some(Tok::Backslash) => {
                self.at += 1;
                let param = self.expect_ident("a lambda parameter")?;
                self.expect(Tok::Arrow)?;
                let body = self.expr()?;
                Ok(Expr::lambda(param, body))
            }
            Some(Tok::LBracket) => {
                self.at += 1;
                let mut items = Vec::new();
                if !self.eat(&Tok::RBracket) {
                    loop {
                        items.push(self.expr()?);
                        if self.eat(&Tok::RBracket) {
                            break;
                        }
                        self.expect(Tok::Comma)?;
                    }
                }
                Ok(Expr::CollE(items))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let first = self.expr()?;
                if self.eat(&Tok::Comma) {
                    let mut parts = vec![first];
                    loop {
                        parts.push(self.expr()?);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RParen)?;
                    Ok(Expr::TupleE(parts))
                } else {
                    self.expect(Tok::RParen)?;
                    Ok(first)
                }
            }
            Some(t) => {
                let t = t.clone();
                self.err(format!("unexpected `{t}` in expression"))
            }
            None => self.err("unexpected end of input in expression"),
        }
    }

    // --- matcher expressions ----------------------------------------------------

    pub fn matcher(&mut self) -> Result<Matcher, ParseError> {
        match self.peek() {
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                self.at += 1;
                match name.as_str() {
                    "something" => Ok(m::something()),
                    "eq" => Ok(m::eq()),
                    "integer" => Ok(m::integer()),
                    "string" => Ok(m::string()),
                    "list" => Ok(m::list(self.matcher_atom()?)),
                    "multiset" => Ok(m::multiset(self.matcher_atom()?)),
                    "set" => Ok(m::set(self.matcher_atom()?)),
                    "sortedList" => Ok(m::sorted_list(self.matcher_atom()?)),
                    other => self.err(format!("unknown matcher `{other}`")),
                }
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let mut parts = vec![self.matcher()?];
                while self.eat(&Tok::Comma) {
                    parts.push(self.matcher()?);
                }
                self.expect(Tok::RParen)?;
                if parts.len() == 1 {
                    Ok(parts.pop().expect("nonempty"))
                } else {
                    Ok(m::tuple(parts))
                }
            }
            Some(t) => {
                let t = t.clone();
                self.err(format!("unexpected `{t}` in matcher expression"))
            }
            None => self.err("unexpected end of input in matcher expression"),
        }
    }

    fn matcher_atom(&mut self) -> Result<Matcher, ParseError> {
        match self.peek() {
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                match name.as_str() {
                    "something" | "eq" | "integer" | "string" => {
                        self.at += 1;
                        Ok(match name.as_str() {
                            "something" => m::something(),
                            "eq" => m::eq(),
                            "integer" => m::integer(),
                            _ => m::string(),
                        })
                    }
                    _ => self.err(format!(
                        "matcher argument must be atomic or parenthesized; found `{name}`"
                    )),
                }
            }
            Some(Tok::LParen) => self.matcher(),
            Some(t) => {
                let t = t.clone();
                self.err(format!("unexpected `{t}` in matcher expression"))
            }
            None => self.err("unexpected end of input in matcher expression"),
        }
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(ParseError {
                pos: self.pos(),
                msg: format!(
                    "unexpected `{}` after the end of the input",
                    self.toks[self.at].tok
                ),
            })
        }
    }
}

pub fn parse_pattern(src: &str) -> Result<Pat, ParseError> {
    let mut p = Parser::new(src)?;
    let pat = p.pattern()?;
    p.finish()?;
    Ok(pat)
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_matcher(src: &str) -> Result<Matcher, ParseError> {
    let mut p = Parser::new(src)?;
    let m = p.matcher()?;
    p.finish()?;
    Ok(m)
}
