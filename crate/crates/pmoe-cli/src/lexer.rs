//! Tokenizer for the textual pattern, expression, and matcher languages.
//! Identifiers never contain underscores: `_` is its own token, used for
//! wildcards and for the index separator of `$x_i`.

use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Underscore,
    Dollar,
    Hash,
    Question,
    Bang,
    At,
    Colon,
    PlusPlus,
    Ellipsis,
    Arrow,
    Backslash,
    Assign,
    EqEq,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
    Int(i64),
    Str(String),
    Ident(String),
    UpperIdent(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Underscore => "_",
            Tok::Dollar => "$",
            Tok::Hash => "#",
            Tok::Question => "?",
            Tok::Bang => "!",
            Tok::At => "@",
            Tok::Colon => ":",
            Tok::PlusPlus => "++",
            Tok::Ellipsis => "...",
            Tok::Arrow => "->",
            Tok::Backslash => "\\",
            Tok::Assign => "=",
            Tok::EqEq => "==",
            Tok::Lt => "<",
            Tok::Le => "<=",
            Tok::Gt => ">",
            Tok::Ge => ">=",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Int(i) => return write!(f, "{i}"),
            Tok::Str(s) => return write!(f, "{s:?}"),
            Tok::Ident(s) | Tok::UpperIdent(s) => return write!(f, "{s}"),
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.pos.line, self.pos.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

pub fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    let mut line: u32 = 1;
    let mut col: u32 = 1;

    macro_rules! push {
        ($tok:expr, $pos:expr) => {
            out.push(Token {
                tok: $tok,
                pos: $pos,
            })
        };
    }

    while let Some((_, c)) = chars.next() {
        let pos = Pos { line, col };
        let mut advance = |n: u32| col += n;
        match c {
            '\n' => {
                line += 1;
                col = 1;
                continue;
            }
            ' ' | '\t' | '\r' => {
                advance(1);
                continue;
            }
            '(' => push!(Tok::LParen, pos),
            ')' => push!(Tok::RParen, pos),
            '[' => push!(Tok::LBracket, pos),
            ']' => push!(Tok::RBracket, pos),
            ',' => push!(Tok::Comma, pos),
            '_' => push!(Tok::Underscore, pos),
            '$' => push!(Tok::Dollar, pos),
            '#' => push!(Tok::Hash, pos),
            '?' => push!(Tok::Question, pos),
            '!' => push!(Tok::Bang, pos),
            '@' => push!(Tok::At, pos),
            ':' => push!(Tok::Colon, pos),
            '\\' => push!(Tok::Backslash, pos),
            '*' => push!(Tok::Star, pos),
            '+' => {
                if chars.peek().map(|(_, c)| *c) == Some('+') {
                    chars.next();
                    advance(1);
                    push!(Tok::PlusPlus, pos);
                } else {
                    push!(Tok::Plus, pos);
                }
            }
            '-' => {
                if chars.peek().map(|(_, c)| *c) == Some('>') {
                    chars.next();
                    advance(1);
                    push!(Tok::Arrow, pos);
                } else {
                    push!(Tok::Minus, pos);
                }
            }
            '.' => {
                for _ in 0..2 {
                    match chars.next() {
                        Some((_, '.')) => advance(1),
                        _ => {
                            return Err(ParseError {
                                pos,
                                msg: "expected `...`".into(),
                            })
                        }
                    }
                }
                push!(Tok::Ellipsis, pos);
            }
            '=' => {
                if chars.peek().map(|(_, c)| *c) == Some('=') {
                    chars.next();
                    advance(1);
                    push!(Tok::EqEq, pos);
                } else {
                    push!(Tok::Assign, pos);
                }
            }
            '<' => {
                if chars.peek().map(|(_, c)| *c) == Some('=') {
                    chars.next();
                    advance(1);
                    push!(Tok::Le, pos);
                } else {
                    push!(Tok::Lt, pos);
                }
            }
            '>' => {
                if chars.peek().map(|(_, c)| *c) == Some('=') {
                    chars.next();
                    advance(1);
                    push!(Tok::Ge, pos);
                } else {
                    push!(Tok::Gt, pos);
                }
            }
            '"' => {
                let mut s = String::new();
                let mut closed = false;
                let mut extra = 0u32;
                while let Some((_, c)) = chars.next() {
                    extra += 1;
                    match c {
                        '"' => {
                            closed = true;
                            break;
                        }
                        '\\' => match chars.next() {
                            Some((_, e)) => {
                                extra += 1;
                                match e {
                                    '"' => s.push('"'),
                                    '\\' => s.push('\\'),
                                    'n' => s.push('\n'),
                                    other => {
                                        return Err(ParseError {
                                            pos,
                                            msg: format!("unknown escape `\\{other}`"),
                                        })
                                    }
                                }
                            }
                            None => break,
                        },
                        '\n' => {
                            return Err(ParseError {
                                pos,
                                msg: "unterminated string".into(),
                            })
                        }
                        other => s.push(other),
                    }
                }
                if !closed {
                    return Err(ParseError {
                        pos,
                        msg: "unterminated string".into(),
                    });
                }
                advance(extra);
                push!(Tok::Str(s), pos);
            }
            d if d.is_ascii_digit() => {
                let mut n = String::from(d);
                while let Some((_, c)) = chars.peek() {
                    if c.is_ascii_digit() {
                        n.push(*c);
                        chars.next();
                        advance(1);
                    } else {
                        break;
                    }
                }
                let value = n.parse::<i64>().map_err(|_| ParseError {
                    pos,
                    msg: format!("integer literal `{n}` out of range"),
                })?;
                push!(Tok::Int(value), pos);
            }
            a if a.is_ascii_alphabetic() => {
                let mut name = String::from(a);
                while let Some((_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() {
                        name.push(*c);
                        chars.next();
                        advance(1);
                    } else {
                        break;
                    }
                }
                if a.is_ascii_uppercase() {
                    push!(Tok::UpperIdent(name), pos);
                } else {
                    push!(Tok::Ident(name), pos);
                }
            }
            other => {
                return Err(ParseError {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
        col += 1;
    }
    Ok(out)
}
