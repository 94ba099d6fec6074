//! List processing written in the pattern-match-oriented style: every
//! function here is a single match enumeration, with no explicit recursion
//! outside the matchers.
//!
//! Functions that must preserve target order (`map`, `filter`, `concat`,
//! `unique_first`, `map_with_both_sides`) enumerate depth-first; order-
//! insensitive set-like functions use the default breadth-first traversal.

use std::sync::Arc;

use crate::engine::{clause, match_all, match_all_dfs, match_first, MatchClause};
use crate::error::Result;
use crate::matcher::{eq, list, multiset, something, tuple};
use crate::pattern::{
    and_p, cons, ipvar, join, later, loop_p, not_p, ppat, pvar, seq_p, tuple_p, vpat, wildcard,
    LoopEnd, Pat,
};
use crate::value::{Coll, Expr, Value};

fn lazy_coll(stream: crate::engine::ResultStream) -> Value {
    Value::Coll(Coll::from_fallible(stream))
}

fn native_pred(pred: impl Fn(&Value) -> Result<bool> + Send + Sync + 'static) -> Expr {
    Expr::Lit(Value::native(move |v| Ok(Value::Bool(pred(&v)?))))
}

/// `_ ++ $x : _` over a list: one result per element, in order.
pub fn pm_map(
    f: impl Fn(Value) -> Result<Value> + Send + Sync + 'static,
    xs: &Value,
) -> Result<Value> {
    let body = Expr::apply(Expr::Lit(Value::native(f)), Expr::var("x"));
    let stream = match_all_dfs(
        xs,
        &list(something()),
        vec![clause(join(wildcard(), cons(pvar("x"), wildcard())), body)],
    );
    Ok(lazy_coll(stream))
}

/// `$hs ++ $x : $ts`: applies `f` to every (prefix, element, suffix) triple,
/// in position order.
pub fn pm_map_with_both_sides(
    f: impl Fn(Value, Value, Value) -> Result<Value> + Send + Sync + 'static,
    xs: &Value,
) -> Result<Value> {
    let f = Arc::new(f);
    let body = Expr::host(move |env| {
        f(
            env.lookup_scalar("hs")?,
            env.lookup_scalar("x")?,
            env.lookup_scalar("ts")?,
        )
    });
    let stream = match_all_dfs(
        xs,
        &list(something()),
        vec![clause(join(pvar("hs"), cons(pvar("x"), pvar("ts"))), body)],
    );
    Ok(lazy_coll(stream))
}

/// `_ ++ (and ?pred $x) : _`: order-preserving subsequence satisfying `pred`.
pub fn pm_filter(
    pred: impl Fn(&Value) -> Result<bool> + Send + Sync + 'static,
    xs: &Value,
) -> Result<Value> {
    let stream = match_all_dfs(
        xs,
        &list(something()),
        vec![clause(
            join(
                wildcard(),
                cons(and_p(vec![ppat(native_pred(pred)), pvar("x")]), wildcard()),
            ),
            Expr::var("x"),
        )],
    );
    Ok(lazy_coll(stream))
}

/// Membership via a value pattern under `list eq`.
pub fn pm_elem(x: &Value, xs: &Value) -> Result<bool> {
    match_first(
        xs,
        &list(eq()),
        vec![
            clause(
                join(wildcard(), cons(vpat(Expr::Lit(x.clone())), wildcard())),
                Expr::Lit(Value::Bool(true)),
            ),
            clause(wildcard(), Expr::Lit(Value::Bool(false))),
        ],
    )?
    .as_bool()
}

/// Removes the first appearance of `x`; the fallthrough clause returns the
/// collection unchanged.
pub fn pm_delete(x: &Value, xs: &Value) -> Result<Value> {
    let body = Expr::host(|env| {
        let hs = env.lookup_scalar("hs")?;
        let ts = env.lookup_scalar("ts")?;
        Ok(Value::Coll(Coll::concat(
            hs.as_coll()?.clone(),
            ts.as_coll()?.clone(),
        )))
    });
    match_first(
        xs,
        &list(eq()),
        vec![
            clause(
                join(pvar("hs"), cons(vpat(Expr::Lit(x.clone())), pvar("ts"))),
                body,
            ),
            clause(wildcard(), Expr::Lit(xs.clone())),
        ],
    )
}

pub fn pm_any(
    pred: impl Fn(&Value) -> Result<bool> + Send + Sync + 'static,
    xs: &Value,
) -> Result<bool> {
    match_first(
        xs,
        &list(something()),
        vec![
            clause(
                join(wildcard(), cons(ppat(native_pred(pred)), wildcard())),
                Expr::Lit(Value::Bool(true)),
            ),
            clause(wildcard(), Expr::Lit(Value::Bool(false))),
        ],
    )?
    .as_bool()
}

/// `every` through a not-predicate pattern: a single counterexample decides.
pub fn pm_every(
    pred: impl Fn(&Value) -> Result<bool> + Send + Sync + 'static,
    xs: &Value,
) -> Result<bool> {
    match_first(
        xs,
        &list(something()),
        vec![
            clause(
                join(wildcard(), cons(not_p(ppat(native_pred(pred))), wildcard())),
                Expr::Lit(Value::Bool(false)),
            ),
            clause(wildcard(), Expr::Lit(Value::Bool(true))),
        ],
    )?
    .as_bool()
}

/// `_ ++ $x : !(_ ++ #x : _)`: keeps the last appearance of each element.
pub fn pm_unique_last(xs: &Value) -> Result<Value> {
    let stream = match_all(
        xs,
        &list(eq()),
        vec![clause(
            join(
                wildcard(),
                cons(
                    pvar("x"),
                    not_p(join(wildcard(), cons(vpat(Expr::var("x")), wildcard()))),
                ),
            ),
            Expr::var("x"),
        )],
    );
    Ok(lazy_coll(stream))
}

/// The sequential-pattern formulation of `unique`: keep an element when the
/// prefix before it holds no equal element. Exercises the later-variable
/// machinery.
pub fn pm_unique_first(xs: &Value) -> Result<Value> {
    let stream = match_all_dfs(
        xs,
        &list(eq()),
        vec![clause(
            seq_p(vec![
                join(later(), cons(pvar("x"), wildcard())),
                not_p(join(wildcard(), cons(vpat(Expr::var("x")), wildcard()))),
            ]),
            Expr::var("x"),
        )],
    );
    Ok(lazy_coll(stream))
}

/// `_ ++ (_ ++ $x : _) : _` over a list of lists, depth-first so the output
/// keeps input order.
pub fn pm_concat(xss: &Value) -> Result<Value> {
    let stream = match_all_dfs(
        xss,
        &list(list(something())),
        vec![clause(
            join(
                wildcard(),
                cons(join(wildcard(), cons(pvar("x"), wildcard())), wildcard()),
            ),
            Expr::var("x"),
        )],
    );
    Ok(lazy_coll(stream))
}

/// Association lookup: `(#k, $x) : _` over a multiset of pairs.
pub fn pm_lookup(k: &Value, assoc: &Value) -> Result<Value> {
    match_first(
        assoc,
        &multiset(tuple(vec![eq(), something()])),
        vec![clause(
            cons(
                tuple_p(vec![vpat(Expr::Lit(k.clone())), pvar("x")]),
                wildcard(),
            ),
            Expr::var("x"),
        )],
    )
}

/// `($x : _, #x : _)` over a pair of multisets.
pub fn pm_intersect(xs: &Value, ys: &Value) -> Result<Value> {
    let pair = Value::tuple(vec![xs.clone(), ys.clone()]);
    let m = tuple(vec![multiset(eq()), multiset(eq())]);
    let stream = match_all(
        &pair,
        &m,
        vec![clause(
            tuple_p(vec![
                cons(pvar("x"), wildcard()),
                cons(vpat(Expr::var("x")), wildcard()),
            ]),
            Expr::var("x"),
        )],
    );
    Ok(lazy_coll(stream))
}

/// `($x : _, !(#x : _))`: the not-pattern inside the tuple flips membership.
pub fn pm_difference(xs: &Value, ys: &Value) -> Result<Value> {
    let pair = Value::tuple(vec![xs.clone(), ys.clone()]);
    let m = tuple(vec![multiset(eq()), multiset(eq())]);
    let stream = match_all(
        &pair,
        &m,
        vec![clause(
            tuple_p(vec![
                cons(pvar("x"), wildcard()),
                not_p(cons(vpat(Expr::var("x")), wildcard())),
            ]),
            Expr::var("x"),
        )],
    );
    Ok(lazy_coll(stream))
}

/// True when exactly one common element exists: a sequential pattern first
/// extracts one common element, then checks the remainders share none.
pub fn pm_single_common_elem(xs: &Value, ys: &Value) -> Result<bool> {
    let pair = Value::tuple(vec![xs.clone(), ys.clone()]);
    let m = tuple(vec![multiset(eq()), multiset(eq())]);
    match_first(
        &pair,
        &m,
        vec![
            clause(
                seq_p(vec![
                    tuple_p(vec![
                        cons(pvar("x"), later()),
                        cons(vpat(Expr::var("x")), later()),
                    ]),
                    not_p(tuple_p(vec![
                        cons(pvar("y"), wildcard()),
                        cons(vpat(Expr::var("y")), wildcard()),
                    ])),
                ]),
                Expr::Lit(Value::Bool(true)),
            ),
            clause(wildcard(), Expr::Lit(Value::Bool(false))),
        ],
    )?
    .as_bool()
}

/// The maximal common prefix of two lists: a sequential loop pattern walks
/// both lists in lock-step, and the final guard requires the next elements to
/// differ (trivially true when either remainder is empty).
pub fn pm_common_prefix(xs: &Value, ys: &Value) -> Result<Value> {
    let pair = Value::tuple(vec![xs.clone(), ys.clone()]);
    let m = tuple(vec![list(eq()), list(eq())]);
    let step = tuple_p(vec![
        cons(ipvar("x", Expr::var("i")), later()),
        cons(vpat(Expr::indexed("x", Expr::var("i"))), later()),
    ]);
    let repeat = seq_p(vec![step, crate::pattern::ellipsis()]);
    let guard = not_p(tuple_p(vec![
        cons(pvar("y"), wildcard()),
        cons(vpat(Expr::var("y")), wildcard()),
    ]));
    let pattern = loop_p("i", Expr::int(1), LoopEnd::Pat(pvar("n")), repeat, guard)?;
    let body = Expr::host(|env| {
        let n = env.lookup_scalar("n")?.as_int()?;
        let mut out = Vec::new();
        for i in 1..=n {
            out.push(env.lookup_indexed("x", i)?);
        }
        Ok(Value::coll(out))
    });
    match_first(&pair, &m, vec![clause(pattern, body)])
}

/// All combinations of `n` elements by a loop of join-cons patterns.
pub fn pm_comb(n: i64, xs: &Value) -> Result<Value> {
    let repeat = join(
        wildcard(),
        cons(ipvar("x", Expr::var("i")), crate::pattern::ellipsis()),
    );
    let pattern = loop_p(
        "i",
        Expr::int(1),
        LoopEnd::Fixed(Arc::new(Expr::int(n))),
        repeat,
        wildcard(),
    )?;
    let body = Expr::host(move |env| {
        let mut out = Vec::new();
        for i in 1..=n {
            out.push(env.lookup_indexed("x", i)?);
        }
        Ok(Value::coll(out))
    });
    let stream = match_all(xs, &list(something()), vec![clause(pattern, body)]);
    Ok(lazy_coll(stream))
}

/// The clauses of `elem` as reusable match clauses (first match wins).
pub fn elem_clauses(x: &Value) -> Vec<MatchClause> {
    vec![
        clause(
            join(wildcard(), cons(vpat(Expr::Lit(x.clone())), wildcard())),
            Expr::Lit(Value::Bool(true)),
        ),
        clause(wildcard(), Expr::Lit(Value::Bool(false))),
    ]
}

/// All prefixes of a collection: a loop whose repeat count is itself a
/// pattern.
pub fn pm_prefixes(xs: &Value) -> Result<Value> {
    let repeat = cons(ipvar("x", Expr::var("i")), crate::pattern::ellipsis());
    let pattern = loop_p(
        "i",
        Expr::int(1),
        LoopEnd::Pat(pvar("n")),
        repeat,
        wildcard(),
    )?;
    let body = Expr::host(|env| {
        let n = env.lookup_scalar("n")?.as_int()?;
        let mut out = Vec::new();
        for i in 1..=n {
            out.push(env.lookup_indexed("x", i)?);
        }
        Ok(Value::coll(out))
    });
    let stream = match_all(xs, &list(something()), vec![clause(pattern, body)]);
    Ok(lazy_coll(stream))
}

/// Helper shared by tests and demos: the interleaving enumeration of nested
/// join-cons patterns under breadth-first search.
pub fn nested_elements_pattern() -> Pat {
    join(
        wildcard(),
        cons(join(wildcard(), cons(pvar("x"), wildcard())), wildcard()),
    )
}

/// Helper for the engine API: materialize a finite stdlib result.
pub fn force(v: &Value) -> Result<Vec<Value>> {
    v.as_coll()?.to_vec()
}
