//! A relational query over a social-network fixture: users the named account
//! follows who do not follow back. Tables are matched as sets; `ID`, `Name`,
//! `FromID`, and `ToID` are projection-style patterns defined by matcher
//! clauses over the record terms.

use crate::engine::{clause, match_all};
use crate::error::{Error, Result};
use crate::matcher::{clause_matcher, eq, set, thunk, tuple, Matcher, MatcherClause, TupleIter};
use crate::pattern::{and_p, cons, ctor, not_p, pvar, tuple_p, vpat, wildcard};
use crate::value::{Expr, Value};

pub fn user(id: i64, name: &str) -> Value {
    Value::term("User", vec![Value::Int(id), Value::str(name)])
}

pub fn follow(from: i64, to: i64) -> Value {
    Value::term("Follow", vec![Value::Int(from), Value::Int(to)])
}

fn field_of(term_name: &'static str, index: usize) -> impl Fn(&Value) -> Result<Value> {
    move |t: &Value| match t {
        Value::Term(name, args) if &**name == term_name && args.len() == 2 => {
            Ok(args[index].clone())
        }
        other => Err(Error::TypeMismatch {
            expected: term_name,
            got: other.kind().to_string(),
        }),
    }
}

fn projection_clause(
    ctor_name: &str,
    extract: impl Fn(&Value) -> Result<Value> + Send + Sync + 'static,
) -> MatcherClause {
    MatcherClause::new(
        crate::pattern::PrimPatPat::ctor(ctor_name, vec![crate::pattern::PpSlot::Hole]),
        vec![thunk(eq())],
        move |t, _| {
            let v = extract(t)?;
            let tuples: Vec<Result<Vec<Value>>> = vec![Ok(vec![v])];
            Ok(Box::new(tuples.into_iter()) as TupleIter)
        },
    )
}

/// Matches `User id name` records through `ID p` and `Name p` patterns.
pub fn user_matcher() -> Matcher {
    clause_matcher(
        vec![
            projection_clause("ID", field_of("User", 0)),
            projection_clause("Name", field_of("User", 1)),
        ],
        "user",
    )
}

/// Matches `Follow from to` records through `FromID p` and `ToID p` patterns.
pub fn follow_matcher() -> Matcher {
    clause_matcher(
        vec![
            projection_clause("FromID", field_of("Follow", 0)),
            projection_clause("ToID", field_of("Follow", 1)),
        ],
        "follow",
    )
}

pub fn users_fixture() -> Value {
    Value::coll(vec![
        user(1, "Egison_Lang"),
        user(2, "Haskell_Cafe"),
        user(3, "Rustaceans"),
    ])
}

pub fn follows_fixture() -> Value {
    Value::coll(vec![follow(1, 2), follow(1, 3), follow(3, 1)])
}

/// Followees of `name` who do not follow back, as `(id, name)` pairs.
pub fn unfollowed_followees(name: &str, users: &Value, follows: &Value) -> Result<Vec<Value>> {
    let target = Value::tuple(vec![users.clone(), follows.clone(), users.clone()]);
    let m = tuple(vec![
        set(user_matcher()),
        set(follow_matcher()),
        set(user_matcher()),
    ]);
    let source = cons(
        and_p(vec![
            ctor("Name", vec![vpat(Expr::str(name))]),
            ctor("ID", vec![pvar("uid")]),
        ]),
        wildcard(),
    );
    let link = cons(
        and_p(vec![
            ctor("FromID", vec![vpat(Expr::var("uid"))]),
            ctor("ToID", vec![pvar("fid")]),
        ]),
        not_p(cons(
            and_p(vec![
                ctor("FromID", vec![vpat(Expr::var("fid"))]),
                ctor("ToID", vec![vpat(Expr::var("uid"))]),
            ]),
            wildcard(),
        )),
    );
    let lookup = cons(
        and_p(vec![
            ctor("ID", vec![vpat(Expr::var("fid"))]),
            ctor("Name", vec![pvar("fname")]),
        ]),
        wildcard(),
    );
    let pattern = tuple_p(vec![source, link, lookup]);
    let body = Expr::TupleE(vec![Expr::var("fid"), Expr::var("fname")]);
    match_all(&target, &m, vec![clause(pattern, body)]).collect_values()
}

/// Convenience wrapper used by the CLI demo.
pub fn demo_query() -> Result<Vec<Value>> {
    unfollowed_followees("Egison_Lang", &users_fixture(), &follows_fixture())
}
