//! The n-queens solver as one match expression over a multiset of rows.
//!
//! Board positions are a rearrangement of `[1..n]` (one queen per column in a
//! distinct row), so the doubly nested loop pattern only has to rule out
//! shared diagonals: column i may not hold `a_j ± (i - j)` for any j < i.

use std::sync::Arc;

use crate::engine::{clause, match_all};
use crate::error::Result;
use crate::matcher::{integer, multiset};
use crate::pattern::{and_p, cons, ellipsis, ipvar, loop_p, nil, not_p, vpat, LoopEnd};
use crate::value::{Expr, Value};

pub fn n_queens(n: i64) -> Result<Vec<Value>> {
    let diag = |sign: bool| {
        // a_j - (i - j)  /  a_j + (i - j)
        let offset = Expr::sub(Expr::var("i"), Expr::var("j"));
        let base = Expr::indexed("a", Expr::var("j"));
        if sign {
            Expr::add(base, offset)
        } else {
            Expr::sub(base, offset)
        }
    };
    let inner = loop_p(
        "j",
        Expr::int(1),
        LoopEnd::Fixed(Arc::new(Expr::sub(Expr::var("i"), Expr::int(1)))),
        and_p(vec![
            not_p(vpat(diag(false))),
            not_p(vpat(diag(true))),
            ellipsis(),
        ]),
        ipvar("a", Expr::var("i")),
    )?;
    let outer = loop_p(
        "i",
        Expr::int(2),
        LoopEnd::Fixed(Arc::new(Expr::int(n))),
        cons(inner, ellipsis()),
        nil(),
    )?;
    let pattern = cons(ipvar("a", Expr::int(1)), outer);
    let body = Expr::host(move |env| {
        let mut row = Vec::new();
        for i in 1..=n {
            row.push(env.lookup_indexed("a", i)?);
        }
        Ok(Value::coll(row))
    });
    let board = Value::ints(1..=n);
    match_all(&board, &multiset(integer()), vec![clause(pattern, body)]).collect_values()
}
