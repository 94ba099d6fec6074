//! Prime streams and the prime-pair enumerations over them.

use std::sync::OnceLock;

use crate::engine::{clause, match_all, ResultStream};
use crate::matcher::{integer, list, sorted_list};
use crate::pattern::{and_p, cons, join, not_p, or_p, pvar, vpat, wildcard};
use crate::value::{Coll, Expr, Value};

/// The infinite stream of primes, memoized globally; every demo shares it.
pub fn primes_stream() -> Coll {
    static PRIMES: OnceLock<Coll> = OnceLock::new();
    PRIMES
        .get_or_init(|| {
            let mut known: Vec<i64> = Vec::new();
            let mut candidate: i64 = 1;
            Coll::from_iter_lazy(std::iter::from_fn(move || loop {
                candidate += 1;
                let is_prime = known
                    .iter()
                    .take_while(|p| *p * *p <= candidate)
                    .all(|p| candidate % p != 0);
                if is_prime {
                    known.push(candidate);
                    return Some(Value::Int(candidate));
                }
            }))
        })
        .clone()
}

fn primes_value() -> Value {
    Value::Coll(primes_stream())
}

/// `_ ++ $p : #(p + 2) : _` over the primes.
pub fn twin_primes() -> ResultStream {
    let p2 = vpat(Expr::add(Expr::var("p"), Expr::int(2)));
    match_all(
        &primes_value(),
        &list(integer()),
        vec![clause(
            join(wildcard(), cons(pvar("p"), cons(p2, wildcard()))),
            Expr::TupleE(vec![
                Expr::var("p"),
                Expr::add(Expr::var("p"), Expr::int(2)),
            ]),
        )],
    )
}

/// `(p, p+2, p+6)` or `(p, p+4, p+6)`: an or-pattern inside an as-style
/// and-pattern captures the middle prime.
pub fn prime_triples() -> ResultStream {
    let middle = and_p(vec![
        or_p(vec![
            vpat(Expr::add(Expr::var("p"), Expr::int(2))),
            vpat(Expr::add(Expr::var("p"), Expr::int(4))),
        ]),
        pvar("m"),
    ]);
    let p6 = vpat(Expr::add(Expr::var("p"), Expr::int(6)));
    match_all(
        &primes_value(),
        &list(integer()),
        vec![clause(
            join(
                wildcard(),
                cons(pvar("p"), cons(middle, cons(p6, wildcard()))),
            ),
            Expr::TupleE(vec![
                Expr::var("p"),
                Expr::var("m"),
                Expr::add(Expr::var("p"), Expr::int(6)),
            ]),
        )],
    )
}

/// Adjacent prime pairs that are not twins: `$p : (and !#(p + 2) $q) : _`.
pub fn non_twin_adjacent_pairs() -> ResultStream {
    let second = and_p(vec![
        not_p(vpat(Expr::add(Expr::var("p"), Expr::int(2)))),
        pvar("q"),
    ]);
    match_all(
        &primes_value(),
        &list(integer()),
        vec![clause(
            join(wildcard(), cons(pvar("p"), cons(second, wildcard()))),
            Expr::TupleE(vec![Expr::var("p"), Expr::var("q")]),
        )],
    )
}

/// `(p, p + 6)` pairs through the sorted-list matcher: the specialized
/// clause scans for `p + 6` instead of enumerating every split.
pub fn prime_gap6_pairs_sorted() -> ResultStream {
    prime_gap6_pairs_with(&sorted_list(integer()), &primes_value())
}

/// Same pattern under a chosen matcher and target; tests compare the plain
/// list matcher against the sorted-list matcher on step counts.
pub fn prime_gap6_pairs_with(m: &crate::matcher::Matcher, target: &Value) -> ResultStream {
    let p6 = vpat(Expr::add(Expr::var("p"), Expr::int(6)));
    match_all(
        target,
        m,
        vec![clause(
            join(
                wildcard(),
                cons(pvar("p"), join(wildcard(), cons(p6, wildcard()))),
            ),
            Expr::TupleE(vec![
                Expr::var("p"),
                Expr::add(Expr::var("p"), Expr::int(6)),
            ]),
        )],
    )
}

/// The first `n` primes as a finite collection.
pub fn first_primes(n: usize) -> crate::error::Result<Value> {
    Ok(Value::coll(primes_stream().take(n)?))
}
