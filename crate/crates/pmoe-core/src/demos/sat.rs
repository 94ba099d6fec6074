//! A Davis–Putnam SAT solver.
//!
//! Formulae are in conjunctive normal form: a multiset of clauses, each a
//! multiset of literals, where a positive integer p is the variable p and a
//! negative one its negation. All rule dispatch is a single match over
//! `(multiset integer, multiset (multiset integer))`; the only explicit
//! recursion is the top-level clause recursion, which narrows the search and
//! cannot be expressed by backtracking alone. Every helper is one match
//! enumeration.

use crate::engine::{clause, match_all, match_all_dfs, match_first};
use crate::error::{Error, Result};
use crate::matcher::{integer, multiset, tuple, Matcher};
use crate::pattern::{and_p, cons, join, later, nil, not_p, pvar, seq_p, tuple_p, vpat, wildcard};
use crate::stdlib::{pm_delete, pm_filter, pm_unique_first};
use crate::value::{Coll, Expr, Value};

pub fn cnf_value(clauses: &[&[i64]]) -> Value {
    Value::coll(
        clauses
            .iter()
            .map(|lits| Value::ints(lits.iter().copied()))
            .collect(),
    )
}

pub fn vars_value(vars: &[i64]) -> Value {
    Value::ints(vars.iter().copied())
}

fn cnf_matcher() -> Matcher {
    multiset(multiset(integer()))
}

fn literals_of(cnf: &Value) -> Result<Vec<i64>> {
    let mut lits = Vec::new();
    for c in cnf.as_coll()?.iter() {
        for l in c?.as_coll()?.iter() {
            lits.push(l?.as_int()?);
        }
    }
    Ok(lits)
}

/// Decides satisfiability. `vars` must be distinct positive integers covering
/// every variable occurring in `cnf`.
pub fn sat_solve(vars: &Value, cnf: &Value) -> Result<bool> {
    let var_list: Vec<i64> = vars
        .as_coll()?
        .iter()
        .map(|v| v?.as_int())
        .collect::<Result<_>>()?;
    for lit in literals_of(cnf)? {
        if lit == 0 {
            return Err(Error::TypeMismatch {
                expected: "nonzero literal",
                got: "0".into(),
            });
        }
        if !var_list.contains(&lit.abs()) {
            return Err(Error::UnboundVariable(format!(
                "SAT variable {}",
                lit.abs()
            )));
        }
    }
    // Resolution takes one occurrence of the pivot out of each clause, so a
    // duplicated literal or a tautological clause would smuggle an eliminated
    // variable back into the formula. Normalize both away up front; neither
    // changes satisfiability.
    let cnf = crate::stdlib::pm_map(|c| pm_unique_first(&c), cnf)?;
    let cnf = pm_filter(|c| Ok(!tautology(c)?), &cnf)?;
    sat_rec(vars, &cnf)
}

fn sat_rec(vars: &Value, cnf: &Value) -> Result<bool> {
    let pair = Value::tuple(vec![vars.clone(), cnf.clone()]);
    let m = tuple(vec![multiset(integer()), cnf_matcher()]);

    let vars0 = vars.clone();
    let cnf0 = cnf.clone();
    let one_literal = Expr::host(move |env| {
        let x = env.lookup_scalar("x")?.as_int()?;
        let vars = pm_delete(&Value::Int(x.abs()), &vars0)?;
        let cnf = assign_true(x, &cnf0)?;
        Ok(Value::Bool(sat_rec(&vars, &cnf)?))
    });

    let cnf1 = cnf.clone();
    let pure_positive = Expr::host(move |env| {
        let v = env.lookup_scalar("v")?.as_int()?;
        let vs = env.lookup_scalar("vs")?;
        let cnf = assign_true(v, &cnf1)?;
        Ok(Value::Bool(sat_rec(&vs, &cnf)?))
    });

    let cnf2 = cnf.clone();
    let pure_negative = Expr::host(move |env| {
        let v = env.lookup_scalar("v")?.as_int()?;
        let vs = env.lookup_scalar("vs")?;
        let cnf = assign_true(-v, &cnf2)?;
        Ok(Value::Bool(sat_rec(&vs, &cnf)?))
    });

    let cnf3 = cnf.clone();
    let resolve = Expr::host(move |env| {
        let v = env.lookup_scalar("v")?.as_int()?;
        let vs = env.lookup_scalar("vs")?;
        let kept = delete_clauses_with(&[v, -v], &cnf3)?;
        let resolved = resolve_on(v, &cnf3)?;
        let cnf = Value::Coll(Coll::concat(
            kept.as_coll()?.clone(),
            resolved.as_coll()?.clone(),
        ));
        Ok(Value::Bool(sat_rec(&vs, &cnf)?))
    });

    // The clause order is the algorithm: solved / contradiction / 1-literal
    // rule / pure literal rules / resolution.
    let clauses = vec![
        clause(
            tuple_p(vec![wildcard(), nil()]),
            Expr::Lit(Value::Bool(true)),
        ),
        clause(
            tuple_p(vec![wildcard(), cons(nil(), wildcard())]),
            Expr::Lit(Value::Bool(false)),
        ),
        clause(
            tuple_p(vec![wildcard(), cons(cons(pvar("x"), nil()), wildcard())]),
            one_literal,
        ),
        clause(
            tuple_p(vec![
                cons(pvar("v"), pvar("vs")),
                not_p(cons(
                    cons(vpat(Expr::neg(Expr::var("v"))), wildcard()),
                    wildcard(),
                )),
            ]),
            pure_positive,
        ),
        clause(
            tuple_p(vec![
                cons(pvar("v"), pvar("vs")),
                not_p(cons(cons(vpat(Expr::var("v")), wildcard()), wildcard())),
            ]),
            pure_negative,
        ),
        clause(
            tuple_p(vec![cons(pvar("v"), pvar("vs")), wildcard()]),
            resolve,
        ),
    ];
    match_first(&pair, &m, clauses)?.as_bool()
}

/// Sets `lit` true: dropped are the clauses containing `lit`; `-lit` is
/// removed from the rest.
pub fn assign_true(lit: i64, cnf: &Value) -> Result<Value> {
    let keep = and_p(vec![
        not_p(cons(vpat(Expr::int(lit)), wildcard())),
        pvar("c"),
    ]);
    let body = Expr::host(move |env| {
        let c = env.lookup_scalar("c")?;
        pm_filter(move |l| Ok(l.as_int()? != -lit), &c)
    });
    let stream = match_all_dfs(
        cnf,
        &crate::matcher::list(multiset(integer())),
        vec![clause(join(wildcard(), cons(keep, wildcard())), body)],
    );
    Ok(Value::coll(stream.collect::<Result<_>>()?))
}

/// Drops every clause containing any of `lits`.
pub fn delete_clauses_with(lits: &[i64], cnf: &Value) -> Result<Value> {
    let mut arms: Vec<crate::pattern::Pat> = lits
        .iter()
        .map(|l| not_p(cons(vpat(Expr::int(*l)), wildcard())))
        .collect();
    arms.push(pvar("c"));
    let stream = match_all_dfs(
        cnf,
        &crate::matcher::list(multiset(integer())),
        vec![clause(
            join(wildcard(), cons(and_p(arms), wildcard())),
            Expr::var("c"),
        )],
    );
    Ok(Value::coll(stream.collect::<Result<_>>()?))
}

/// All resolvents on variable `v`: pairs of clauses `v ∨ C` and `¬v ∨ D`
/// become `C ∨ D`. The sequential not-pattern discards tautological
/// resolvents — no complementary literal pair may span C and D — and each
/// resolvent is deduplicated.
pub fn resolve_on(v: i64, cnf: &Value) -> Result<Value> {
    let positive = cons(vpat(Expr::int(v)), and_p(vec![later(), pvar("xs")]));
    let negative = cons(vpat(Expr::int(-v)), and_p(vec![later(), pvar("ys")]));
    let stage1 = cons(positive, cons(negative, wildcard()));
    let stage2 = not_p(tuple_p(vec![
        cons(pvar("x"), wildcard()),
        cons(vpat(Expr::neg(Expr::var("x"))), wildcard()),
    ]));
    let body = Expr::host(|env| {
        let xs = env.lookup_scalar("xs")?;
        let ys = env.lookup_scalar("ys")?;
        pm_unique_first(&Value::Coll(Coll::concat(
            xs.as_coll()?.clone(),
            ys.as_coll()?.clone(),
        )))
    });
    let stream = match_all(
        cnf,
        &cnf_matcher(),
        vec![clause(seq_p(vec![stage1, stage2]), body)],
    );
    Ok(Value::coll(stream.collect::<Result<_>>()?))
}

/// Cross-check variant of `resolve_on`: enumerate resolvent pairs without the
/// sequential guard, then drop tautologies with a host-side filter.
pub fn resolve_on_by_predicate(v: i64, cnf: &Value) -> Result<Value> {
    let stage1 = cons(
        cons(vpat(Expr::int(v)), pvar("xs")),
        cons(cons(vpat(Expr::int(-v)), pvar("ys")), wildcard()),
    );
    let pairs = match_all(
        cnf,
        &cnf_matcher(),
        vec![clause(
            stage1,
            Expr::TupleE(vec![Expr::var("xs"), Expr::var("ys")]),
        )],
    )
    .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for pair in pairs {
        let parts = pair.as_tuple()?;
        let resolvent = Value::Coll(Coll::concat(
            parts[0].as_coll()?.clone(),
            parts[1].as_coll()?.clone(),
        ));
        if !tautology(&resolvent)? {
            out.push(pm_unique_first(&resolvent)?);
        }
    }
    Ok(Value::coll(out))
}

/// True when the clause contains a complementary literal pair.
pub fn tautology(clause_lits: &Value) -> Result<bool> {
    match_first(
        clause_lits,
        &multiset(integer()),
        vec![
            clause(
                cons(pvar("x"), cons(vpat(Expr::neg(Expr::var("x"))), wildcard())),
                Expr::Lit(Value::Bool(true)),
            ),
            clause(wildcard(), Expr::Lit(Value::Bool(false))),
        ],
    )?
    .as_bool()
}
