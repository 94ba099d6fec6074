//! The pattern AST, construction-time validation, ellipsis substitution for
//! loop expansion, and primitive-pattern patterns used by matcher clauses to
//! dispatch on pattern shape.
//!
//! Collection patterns are ordinary constructor patterns: `nil` with no
//! arguments, `cons` and `join` with two. Matchers decide which constructor
//! names they understand, which keeps the AST closed while matchers stay open.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::value::Expr;

pub type Pat = Arc<Pattern>;

#[derive(Clone, Debug, PartialEq)]
pub enum Pattern {
    Wildcard,
    Var(Arc<str>),
    IndexedVar(Arc<str>, Arc<Expr>),
    /// `#e` — matches when the target equals the evaluated expression, under
    /// the matcher's notion of equality.
    Value(Arc<Expr>),
    /// `?e` — matches when the unary predicate holds of the target.
    Pred(Arc<Expr>),
    And(Vec<Pat>),
    Or(Vec<Pat>),
    Not(Pat),
    Tuple(Vec<Pat>),
    Ctor(Arc<str>, Vec<Pat>),
    Loop {
        index_var: Arc<str>,
        start: Arc<Expr>,
        end: LoopEnd,
        repeat: Pat,
        finish: Pat,
    },
    Ellipsis,
    Seq(Vec<Pat>),
    /// `@` — defers this sub-target (with its matcher) to the next stage of
    /// the enclosing sequential pattern.
    LaterVar,
    Let {
        binder: LetBinder,
        expr: Arc<Expr>,
        body: Pat,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum LoopEnd {
    /// Fixed repetition count; `start - 1` means zero repetitions.
    Fixed(Arc<Expr>),
    /// The loop may stop at any point; the stop count is matched against this
    /// pattern with integer equality.
    Pat(Pat),
}

#[derive(Clone, Debug, PartialEq)]
pub enum LetBinder {
    Scalar(Arc<str>),
    Indexed(Arc<str>, Arc<Expr>),
}

// --- constructors ----------------------------------------------------------

pub fn wildcard() -> Pat {
    Arc::new(Pattern::Wildcard)
}

pub fn pvar(name: impl AsRef<str>) -> Pat {
    Arc::new(Pattern::Var(Arc::from(name.as_ref())))
}

pub fn ipvar(name: impl AsRef<str>, index: Expr) -> Pat {
    Arc::new(Pattern::IndexedVar(
        Arc::from(name.as_ref()),
        Arc::new(index),
    ))
}

pub fn vpat(e: Expr) -> Pat {
    Arc::new(Pattern::Value(Arc::new(e)))
}

pub fn ppat(e: Expr) -> Pat {
    Arc::new(Pattern::Pred(Arc::new(e)))
}

pub fn and_p(ps: Vec<Pat>) -> Pat {
    Arc::new(Pattern::And(ps))
}

pub fn or_p(ps: Vec<Pat>) -> Pat {
    Arc::new(Pattern::Or(ps))
}

pub fn not_p(p: Pat) -> Pat {
    Arc::new(Pattern::Not(p))
}

pub fn tuple_p(ps: Vec<Pat>) -> Pat {
    Arc::new(Pattern::Tuple(ps))
}

pub fn ctor(name: impl AsRef<str>, args: Vec<Pat>) -> Pat {
    Arc::new(Pattern::Ctor(Arc::from(name.as_ref()), args))
}

pub fn nil() -> Pat {
    ctor("nil", vec![])
}

pub fn cons(head: Pat, tail: Pat) -> Pat {
    ctor("cons", vec![head, tail])
}

pub fn join(prefix: Pat, suffix: Pat) -> Pat {
    ctor("join", vec![prefix, suffix])
}

pub fn ellipsis() -> Pat {
    Arc::new(Pattern::Ellipsis)
}

pub fn later() -> Pat {
    Arc::new(Pattern::LaterVar)
}

pub fn seq_p(ps: Vec<Pat>) -> Pat {
    Arc::new(Pattern::Seq(ps))
}

pub fn let_p(binder: LetBinder, expr: Expr, body: Pat) -> Pat {
    Arc::new(Pattern::Let {
        binder,
        expr: Arc::new(expr),
        body,
    })
}

pub fn let_scalar(name: impl AsRef<str>, expr: Expr, body: Pat) -> Pat {
    let_p(LetBinder::Scalar(Arc::from(name.as_ref())), expr, body)
}

pub fn let_indexed(name: impl AsRef<str>, key: Expr, expr: Expr, body: Pat) -> Pat {
    let_p(
        LetBinder::Indexed(Arc::from(name.as_ref()), Arc::new(key)),
        expr,
        body,
    )
}

/// Builds a loop pattern, checking that the repeat pattern contains exactly
/// one ellipsis (not counting ellipses owned by nested loops).
pub fn loop_p(
    index_var: impl AsRef<str>,
    start: Expr,
    end: LoopEnd,
    repeat: Pat,
    finish: Pat,
) -> Result<Pat> {
    let n = count_ellipses(&repeat);
    if n != 1 {
        return Err(Error::InvalidPattern(format!(
            "loop repeat pattern must contain exactly one ellipsis, found {n}"
        )));
    }
    Ok(Arc::new(Pattern::Loop {
        index_var: Arc::from(index_var.as_ref()),
        start: Arc::new(start),
        end,
        repeat,
        finish,
    }))
}

// --- ellipsis handling -----------------------------------------------------

/// Counts the ellipses belonging to the enclosing loop. A nested loop's
/// repeat pattern owns its own ellipsis, so the walk skips it — but an
/// ellipsis inside a nested loop's finish pattern still belongs to the outer
/// loop (that is how chained loop patterns are written).
pub fn count_ellipses(p: &Pat) -> usize {
    match &**p {
        Pattern::Ellipsis => 1,
        Pattern::And(ps) | Pattern::Or(ps) | Pattern::Tuple(ps) | Pattern::Seq(ps) => {
            ps.iter().map(count_ellipses).sum()
        }
        Pattern::Ctor(_, args) => args.iter().map(count_ellipses).sum(),
        Pattern::Not(q) => count_ellipses(q),
        Pattern::Let { body, .. } => count_ellipses(body),
        Pattern::Loop { finish, end, .. } => {
            let end_count = match end {
                LoopEnd::Pat(q) => count_ellipses(q),
                LoopEnd::Fixed(_) => 0,
            };
            count_ellipses(finish) + end_count
        }
        _ => 0,
    }
}

/// Replaces the single ellipsis of a repeat pattern with `replacement`,
/// leaving every other node unchanged. Errors when the pattern holds zero or
/// several ellipses.
pub fn substitute_ellipsis(repeat: &Pat, replacement: &Pat) -> Result<Pat> {
    match count_ellipses(repeat) {
        1 => Ok(subst(repeat, replacement)),
        n => Err(Error::InvalidPattern(format!(
            "expected exactly one ellipsis, found {n}"
        ))),
    }
}

fn subst(p: &Pat, replacement: &Pat) -> Pat {
    match &**p {
        Pattern::Ellipsis => replacement.clone(),
        Pattern::And(ps) => Arc::new(Pattern::And(subst_all(ps, replacement))),
        Pattern::Or(ps) => Arc::new(Pattern::Or(subst_all(ps, replacement))),
        Pattern::Tuple(ps) => Arc::new(Pattern::Tuple(subst_all(ps, replacement))),
        Pattern::Seq(ps) => Arc::new(Pattern::Seq(subst_all(ps, replacement))),
        Pattern::Ctor(name, args) => {
            Arc::new(Pattern::Ctor(name.clone(), subst_all(args, replacement)))
        }
        Pattern::Not(q) => Arc::new(Pattern::Not(subst(q, replacement))),
        Pattern::Let { binder, expr, body } => Arc::new(Pattern::Let {
            binder: binder.clone(),
            expr: expr.clone(),
            body: subst(body, replacement),
        }),
        Pattern::Loop {
            index_var,
            start,
            end,
            repeat,
            finish,
        } => {
            if count_ellipses(p) == 0 {
                return p.clone();
            }
            // The ellipsis sits in this nested loop's finish (or end)
            // pattern; its repeat is untouched.
            let end = match end {
                LoopEnd::Pat(q) => LoopEnd::Pat(subst(q, replacement)),
                LoopEnd::Fixed(e) => LoopEnd::Fixed(e.clone()),
            };
            Arc::new(Pattern::Loop {
                index_var: index_var.clone(),
                start: start.clone(),
                end,
                repeat: repeat.clone(),
                finish: subst(finish, replacement),
            })
        }
        _ => p.clone(),
    }
}

fn subst_all(ps: &[Pat], replacement: &Pat) -> Vec<Pat> {
    ps.iter().map(|p| subst(p, replacement)).collect()
}

/// Validates ellipsis and later-variable placement before matching: an
/// ellipsis may appear only inside a loop's repeat pattern (exactly once per
/// loop), and `@` only inside a sequential pattern element.
pub fn validate_pattern(p: &Pat) -> Result<()> {
    validate(p, false, false)
}

fn validate(p: &Pat, in_repeat: bool, in_seq: bool) -> Result<()> {
    match &**p {
        Pattern::Ellipsis => {
            if in_repeat {
                Ok(())
            } else {
                Err(Error::InvalidPattern(
                    "ellipsis outside a loop repeat pattern".into(),
                ))
            }
        }
        Pattern::LaterVar => {
            if in_seq {
                Ok(())
            } else {
                Err(Error::InvalidPattern(
                    "later variable `@` outside a sequential pattern".into(),
                ))
            }
        }
        Pattern::And(ps) | Pattern::Or(ps) | Pattern::Tuple(ps) => {
            ps.iter().try_for_each(|q| validate(q, in_repeat, in_seq))
        }
        Pattern::Seq(ps) => ps.iter().try_for_each(|q| validate(q, in_repeat, true)),
        Pattern::Ctor(_, args) => args.iter().try_for_each(|q| validate(q, in_repeat, in_seq)),
        Pattern::Not(q) => validate(q, in_repeat, in_seq),
        Pattern::Let { body, .. } => validate(body, in_repeat, in_seq),
        Pattern::Loop {
            repeat,
            finish,
            end,
            ..
        } => {
            let n = count_ellipses(repeat);
            if n != 1 {
                return Err(Error::InvalidPattern(format!(
                    "loop repeat pattern must contain exactly one ellipsis, found {n}"
                )));
            }
            validate(repeat, true, in_seq)?;
            if let LoopEnd::Pat(q) = end {
                validate(q, in_repeat, in_seq)?;
            }
            validate(finish, in_repeat, in_seq)
        }
        _ => Ok(()),
    }
}

// ---------------------------------------------------------------------------
// Primitive-pattern patterns
// ---------------------------------------------------------------------------

/// A pattern over patterns: matcher clauses use these to dispatch on the
/// shape of the pattern being decomposed. Holes capture subpatterns; value
/// holes capture the expression inside a value pattern.
#[derive(Clone, Debug, PartialEq)]
pub enum PrimPatPat {
    Nil,
    Ctor(Arc<str>, Vec<PpSlot>),
    ValueHole(Arc<str>),
    Hole,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PpSlot {
    Hole,
    ValueHole(Arc<str>),
    Nested(PrimPatPat),
}

impl PrimPatPat {
    pub fn ctor(name: impl AsRef<str>, slots: Vec<PpSlot>) -> PrimPatPat {
        PrimPatPat::Ctor(Arc::from(name.as_ref()), slots)
    }

    pub fn value_hole(name: impl AsRef<str>) -> PrimPatPat {
        PrimPatPat::ValueHole(Arc::from(name.as_ref()))
    }
}

impl PpSlot {
    pub fn value_hole(name: impl AsRef<str>) -> PpSlot {
        PpSlot::ValueHole(Arc::from(name.as_ref()))
    }
}

/// Captures from a successful primitive-pattern pattern match: subpatterns at
/// holes, in left-to-right textual order, and value-pattern expressions by
/// hole name.
#[derive(Clone, Debug, Default)]
pub struct PppCaptures {
    pub holes: Vec<Pat>,
    pub values: BTreeMap<Arc<str>, Arc<Expr>>,
}

/// Matches a primitive-pattern pattern against a pattern. `None` is the
/// normal mismatch outcome.
pub fn ppp_match(ppp: &PrimPatPat, p: &Pat) -> Option<PppCaptures> {
    let mut caps = PppCaptures::default();
    if ppp_match_into(ppp, p, &mut caps) {
        Some(caps)
    } else {
        None
    }
}

fn ppp_match_into(ppp: &PrimPatPat, p: &Pat, caps: &mut PppCaptures) -> bool {
    match ppp {
        PrimPatPat::Hole => {
            caps.holes.push(p.clone());
            true
        }
        PrimPatPat::Nil => {
            matches!(&**p, Pattern::Ctor(name, args) if &**name == "nil" && args.is_empty())
        }
        PrimPatPat::ValueHole(name) => match &**p {
            Pattern::Value(e) => {
                caps.values.insert(name.clone(), e.clone());
                true
            }
            _ => false,
        },
        PrimPatPat::Ctor(name, slots) => match &**p {
            Pattern::Ctor(pname, args) if pname == name && args.len() == slots.len() => {
                for (slot, arg) in slots.iter().zip(args.iter()) {
                    let ok = match slot {
                        PpSlot::Hole => {
                            caps.holes.push(arg.clone());
                            true
                        }
                        PpSlot::ValueHole(n) => match &**arg {
                            Pattern::Value(e) => {
                                caps.values.insert(n.clone(), e.clone());
                                true
                            }
                            _ => false,
                        },
                        PpSlot::Nested(inner) => ppp_match_into(inner, arg, caps),
                    };
                    if !ok {
                        return false;
                    }
                }
                true
            }
            _ => false,
        },
    }
}
