//! Matcher algebra: polymorphic cons/join decompositions, value-pattern
//! equality per matcher, the sorted-list specialized clause, tuple and
//! algebraic matchers, and clause precedence.

use std::sync::Arc;

use pmoe_core::engine::{clause, match_all, match_all_dfs, match_first};
use pmoe_core::matcher::{
    algebraic, clause_matcher, eq, integer, list, multiset, set, something, sorted_list, string,
    thunk, tuple, Matcher, MatcherClause, TupleIter,
};
use pmoe_core::pattern::{cons, ctor, join, nil, pvar, vpat, wildcard, PpSlot, PrimPatPat};
use pmoe_core::printer::print_value;
use pmoe_core::value::{Expr, Value};
use pmoe_core::Error;

fn printed(values: Vec<Value>) -> Vec<String> {
    values.iter().map(|v| print_value(v).unwrap()).collect()
}

fn cons_pairs(target: &Value, m: &Matcher) -> Vec<String> {
    let pattern = cons(pvar("x"), pvar("xs"));
    let body = Expr::TupleE(vec![Expr::var("x"), Expr::var("xs")]);
    printed(
        match_all(target, m, vec![clause(pattern, body)])
            .collect_values()
            .unwrap(),
    )
}

/// The same cons pattern under three matchers: head-only for lists, each
/// element with the rest for multisets, each element with the whole
/// collection for sets.
#[test]
fn cons_polymorphism_across_matchers() {
    let target = Value::ints([1, 2, 3]);
    assert_eq!(cons_pairs(&target, &list(integer())), ["(1, [2, 3])"]);
    assert_eq!(
        cons_pairs(&target, &multiset(integer())),
        ["(1, [2, 3])", "(2, [1, 3])", "(3, [1, 2])"]
    );
    assert_eq!(
        cons_pairs(&target, &set(integer())),
        ["(1, [1, 2, 3])", "(2, [1, 2, 3])", "(3, [1, 2, 3])"]
    );
}

#[test]
fn value_pattern_polymorphism() {
    let target = Value::ints([1, 2, 3]);
    let probe = |m: &Matcher| {
        match_all(
            &target,
            m,
            vec![clause(
                vpat(Expr::CollE(vec![Expr::int(2), Expr::int(1), Expr::int(3)])),
                Expr::str("Matched"),
            )],
        )
        .collect_values()
        .unwrap()
        .len()
    };
    assert_eq!(probe(&list(integer())), 0);
    assert_eq!(probe(&multiset(integer())), 1);
}

#[test]
fn join_enumerates_splits_shortest_prefix_first() {
    let target = Value::ints([1, 2]);
    let pattern = join(pvar("hs"), pvar("ts"));
    let body = Expr::TupleE(vec![Expr::var("hs"), Expr::var("ts")]);
    let got = printed(
        match_all_dfs(&target, &list(integer()), vec![clause(pattern, body)])
            .collect_values()
            .unwrap(),
    );
    assert_eq!(got, ["([], [1, 2])", "([1], [2])", "([1, 2], [])"]);
}

#[test]
fn nil_matches_only_empty() {
    let empty = Value::coll(vec![]);
    let nonempty = Value::ints([1]);
    let count = |t: &Value| {
        match_all(t, &list(integer()), vec![clause(nil(), Expr::int(0))])
            .collect_values()
            .unwrap()
            .len()
    };
    assert_eq!(count(&empty), 1);
    assert_eq!(count(&nonempty), 0);
}

#[test]
fn multiset_pairs_enumerate_permutations() {
    let target = Value::ints([1, 2, 3]);
    let pattern = cons(pvar("x"), cons(pvar("y"), wildcard()));
    let body = Expr::TupleE(vec![Expr::var("x"), Expr::var("y")]);
    let got = printed(
        match_all(&target, &multiset(integer()), vec![clause(pattern, body)])
            .collect_values()
            .unwrap(),
    );
    assert_eq!(
        got,
        ["(1, 2)", "(1, 3)", "(2, 1)", "(2, 3)", "(3, 1)", "(3, 2)"]
    );
}

#[test]
fn list_pairs_enumerate_combinations() {
    let target = Value::ints([1, 2, 3]);
    let pattern = join(
        wildcard(),
        cons(pvar("x"), join(wildcard(), cons(pvar("y"), wildcard()))),
    );
    let body = Expr::TupleE(vec![Expr::var("x"), Expr::var("y")]);
    let got = printed(
        match_all(&target, &list(integer()), vec![clause(pattern, body)])
            .collect_values()
            .unwrap(),
    );
    assert_eq!(got, ["(1, 2)", "(1, 3)", "(2, 3)"]);
}

// --- value-pattern equality ---------------------------------------------------

fn multiset_value_matches(val: &[i64], tgt: &[i64]) -> bool {
    let target = Value::ints(tgt.iter().copied());
    let value = Expr::CollE(val.iter().map(|i| Expr::int(*i)).collect());
    match_all(
        &target,
        &multiset(integer()),
        vec![clause(vpat(value), Expr::int(1))],
    )
    .collect_values()
    .unwrap()
    .len()
        == 1
}

#[test]
fn multiset_equality_ignores_order_not_multiplicity() {
    assert!(multiset_value_matches(&[2, 1, 3], &[1, 2, 3]));
    assert!(!multiset_value_matches(&[1, 2], &[1, 2, 3]));
    assert!(!multiset_value_matches(&[1, 1, 2], &[1, 2, 2]));
    assert!(multiset_value_matches(&[], &[]));
}

/// Exhaustive agreement with a sort-then-compare oracle over small integer
/// collections.
#[test]
fn multiset_equality_agrees_with_sort_oracle_exhaustively() {
    fn enumerate(domain: &[i64], max_len: usize) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = vec![vec![]];
        let mut frontier: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for base in &frontier {
                for d in domain {
                    let mut v = base.clone();
                    v.push(*d);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
    // Length <= 5 over {0,1}, plus length <= 3 over {0,1,2}; the acceptance
    // suite runs the larger length <= 6 sweep.
    let mut cases = 0usize;
    for (domain, max_len) in [(vec![0i64, 1], 5usize), (vec![0i64, 1, 2], 3usize)] {
        let all = enumerate(&domain, max_len);
        for a in &all {
            for b in &all {
                let mut sa = a.clone();
                let mut sb = b.clone();
                sa.sort_unstable();
                sb.sort_unstable();
                let expected = sa == sb;
                assert_eq!(
                    multiset_value_matches(a, b),
                    expected,
                    "multiset equality mismatch for {a:?} vs {b:?}"
                );
                cases += 1;
            }
        }
    }
    assert!(cases > 4_000, "exhaustive sweep ran {cases} cases");
}

#[test]
fn set_equality_is_mutual_membership() {
    let probe = |val: Vec<i64>, tgt: Vec<i64>| {
        let target = Value::ints(tgt);
        let value = Expr::CollE(val.iter().map(|i| Expr::int(*i)).collect());
        match_all(
            &target,
            &set(integer()),
            vec![clause(vpat(value), Expr::int(1))],
        )
        .collect_values()
        .unwrap()
        .len()
            == 1
    };
    // Sets ignore multiplicity in both directions.
    assert!(probe(vec![1, 1, 2], vec![2, 1]));
    assert!(probe(vec![2, 1], vec![1, 1, 2]));
    assert!(!probe(vec![1, 2, 3], vec![1, 2]));
    assert!(!probe(vec![1], vec![1, 2]));
}

#[test]
fn list_value_equality_is_order_sensitive_elementwise() {
    // Nested: equality of the elements uses the element matcher, so a list
    // of multisets compares element-wise as multisets.
    let target = Value::coll(vec![Value::ints([1, 2]), Value::ints([3])]);
    let val = Expr::CollE(vec![
        Expr::CollE(vec![Expr::int(2), Expr::int(1)]),
        Expr::CollE(vec![Expr::int(3)]),
    ]);
    let hits = match_all(
        &target,
        &list(multiset(integer())),
        vec![clause(vpat(val.clone()), Expr::int(1))],
    )
    .collect_values()
    .unwrap()
    .len();
    assert_eq!(hits, 1);
    let hits_as_lists = match_all(
        &target,
        &list(list(integer())),
        vec![clause(vpat(val), Expr::int(1))],
    )
    .collect_values()
    .unwrap()
    .len();
    assert_eq!(hits_as_lists, 0);
}

// --- sortedList ---------------------------------------------------------------

#[test]
fn sorted_list_specialized_clause_splits_once() {
    // px = 4 against [1,3,4,9]: exactly one branch ([1,3], [9]).
    let target = Value::ints([1, 3, 4, 9]);
    let pattern = join(pvar("hs"), cons(vpat(Expr::int(4)), pvar("ts")));
    let body = Expr::TupleE(vec![Expr::var("hs"), Expr::var("ts")]);
    let got = printed(
        match_all(
            &target,
            &sorted_list(integer()),
            vec![clause(pattern, body)],
        )
        .collect_values()
        .unwrap(),
    );
    assert_eq!(got, ["([1, 3], [9])"]);
}

#[test]
fn sorted_list_specialized_clause_stops_at_larger_element() {
    // px = 5 against [1,3,4,9]: the first element >= 5 is 9, so no branch.
    let target = Value::ints([1, 3, 4, 9]);
    let pattern = join(wildcard(), cons(vpat(Expr::int(5)), wildcard()));
    let got = match_all(
        &target,
        &sorted_list(integer()),
        vec![clause(pattern, Expr::int(1))],
    )
    .collect_values()
    .unwrap();
    assert!(got.is_empty());
    // The plain list matcher reaches the same conclusion by enumeration.
    let pattern = join(wildcard(), cons(vpat(Expr::int(5)), wildcard()));
    let got = match_all(
        &target,
        &list(integer()),
        vec![clause(pattern, Expr::int(1))],
    )
    .collect_values()
    .unwrap();
    assert!(got.is_empty());
}

#[test]
fn sorted_list_falls_back_to_list_clauses() {
    let target = Value::ints([1, 2, 3]);
    assert_eq!(
        cons_pairs(&target, &sorted_list(integer())),
        ["(1, [2, 3])"]
    );
}

/// Identical results, radically different step counts: the specialized
/// clause makes the pair enumeration linear in practice.
#[test]
fn sorted_list_matches_list_results_with_fewer_states() {
    let primes = pmoe_core::demos::primes::first_primes(100).unwrap();
    let mut sorted_stream =
        pmoe_core::demos::primes::prime_gap6_pairs_with(&sorted_list(integer()), &primes);
    let sorted_results = printed(sorted_stream.by_ref().collect::<Result<_, _>>().unwrap());
    let mut list_stream =
        pmoe_core::demos::primes::prime_gap6_pairs_with(&list(integer()), &primes);
    let list_results = printed(list_stream.by_ref().collect::<Result<_, _>>().unwrap());
    assert_eq!(sorted_results, list_results);
    assert!(
        sorted_stream.stats().states_expanded * 4 < list_stream.stats().states_expanded,
        "sorted {} vs list {}",
        sorted_stream.stats().states_expanded,
        list_stream.stats().states_expanded
    );
}

// --- tuple / algebraic -----------------------------------------------------------

#[test]
fn tuple_value_pattern_decomposes_componentwise() {
    let target = Value::tuple(vec![Value::ints([2, 1]), Value::Int(5)]);
    let m = tuple(vec![multiset(integer()), integer()]);
    let val = Expr::TupleE(vec![
        Expr::CollE(vec![Expr::int(1), Expr::int(2)]),
        Expr::int(5),
    ]);
    let got = match_all(&target, &m, vec![clause(vpat(val), Expr::int(1))])
        .collect_values()
        .unwrap();
    assert_eq!(got.len(), 1);
}

#[test]
fn algebraic_matcher_binds_fields() {
    let edge = pmoe_core::demos::graphs::edge_matcher();
    let target = Value::term("Edge", vec![Value::Int(1), Value::Int(2)]);
    let pattern = ctor("Edge", vec![vpat(Expr::int(1)), pvar("x")]);
    let got = match_all(&target, &edge, vec![clause(pattern, Expr::var("x"))])
        .collect_values()
        .unwrap();
    assert_eq!(printed(got), ["2"]);
}

#[test]
fn algebraic_constructor_mismatch_fails_without_error() {
    let suit = pmoe_core::demos::poker::suit_matcher();
    let target = Value::term("Clover", vec![]);
    let got = match_all(
        &target,
        &suit,
        vec![clause(ctor("Diamond", vec![]), Expr::int(1))],
    )
    .collect_values()
    .unwrap();
    assert!(got.is_empty());
}

#[test]
fn algebraic_unknown_constructor_is_an_error() {
    let suit = pmoe_core::demos::poker::suit_matcher();
    let target = Value::term("Clover", vec![]);
    let err = match_all(
        &target,
        &suit,
        vec![clause(ctor("Sword", vec![]), Expr::int(1))],
    )
    .collect_values()
    .unwrap_err();
    assert!(matches!(err, Error::UnknownConstructor(..)));
}

#[test]
fn algebraic_value_pattern_uses_field_matchers() {
    // A tree value pattern where node children compare as a multiset.
    use pmoe_core::demos::trees::{leaf, node, tree_matcher};
    let target = node("a", vec![leaf("x"), leaf("y")]);
    let swapped = node("a", vec![leaf("y"), leaf("x")]);
    let got = match_all(
        &target,
        &tree_matcher(),
        vec![clause(vpat(Expr::Lit(swapped)), Expr::int(1))],
    )
    .collect_values()
    .unwrap();
    assert_eq!(got.len(), 1);
}

#[test]
fn unknown_collection_constructor_is_unsupported() {
    let target = Value::ints([1, 2]);
    let err = match_all(
        &target,
        &multiset(integer()),
        vec![clause(
            ctor("Edge", vec![pvar("a"), pvar("b")]),
            Expr::int(1),
        )],
    )
    .collect_values()
    .unwrap_err();
    assert!(matches!(err, Error::PatternUnsupported { .. }));
}

#[test]
fn eq_matcher_value_patterns() {
    let hit = |value: Expr, target: Value| {
        match_all(&target, &eq(), vec![clause(vpat(value), Expr::int(1))])
            .collect_values()
            .unwrap()
            .len()
    };
    assert_eq!(hit(Expr::int(5), Value::Int(5)), 1);
    assert_eq!(hit(Expr::str("Egison_Lang"), Value::str("Egison")), 0);
    let env_hit = {
        let env = pmoe_core::Bindings::new()
            .bind_scalar("p", Value::Int(11))
            .unwrap();
        pmoe_core::engine::match_all_in(
            &Value::Int(13),
            &eq(),
            vec![clause(
                vpat(Expr::add(Expr::var("p"), Expr::int(2))),
                Expr::int(1),
            )],
            pmoe_core::SearchMode::Bfs,
            env,
            Default::default(),
        )
        .collect_values()
        .unwrap()
        .len()
    };
    assert_eq!(env_hit, 1);
}

#[test]
fn string_matcher_is_eq_with_a_name() {
    let target = Value::str("Egison");
    let got = match_all(
        &target,
        &string(),
        vec![clause(vpat(Expr::str("Egison")), Expr::int(1))],
    )
    .collect_values()
    .unwrap();
    assert_eq!(got.len(), 1);
    assert_eq!(string().name(), "string");
    assert_eq!(integer().name(), "integer");
}

#[test]
fn set_cons_shares_the_rest_with_the_original() {
    // Depth-k set patterns over an n-element target yield n^k results.
    let target = Value::ints([1, 2, 3]);
    let pattern = cons(pvar("x"), cons(pvar("y"), cons(pvar("z"), wildcard())));
    let got = match_all(
        &target,
        &set(integer()),
        vec![clause(pattern, Expr::int(0))],
    )
    .collect_values()
    .unwrap();
    assert_eq!(got.len(), 27);
}

/// When two clauses both match a pattern shape, the textually first wins.
#[test]
fn clause_precedence_is_textual_order() {
    let first = MatcherClause::new(
        PrimPatPat::ctor("cons", vec![PpSlot::Hole, PpSlot::Hole]),
        vec![thunk(integer()), thunk(something())],
        |_, _| {
            let tuples: Vec<pmoe_core::Result<Vec<Value>>> =
                vec![Ok(vec![Value::Int(111), Value::Int(0)])];
            Ok(Box::new(tuples.into_iter()) as TupleIter)
        },
    );
    let second = MatcherClause::new(
        PrimPatPat::ctor("cons", vec![PpSlot::Hole, PpSlot::Hole]),
        vec![thunk(integer()), thunk(something())],
        |_, _| {
            let tuples: Vec<pmoe_core::Result<Vec<Value>>> =
                vec![Ok(vec![Value::Int(222), Value::Int(0)])];
            Ok(Box::new(tuples.into_iter()) as TupleIter)
        },
    );
    let overlapping = clause_matcher(vec![first, second], "overlapping");
    let got = match_first(
        &Value::Int(0),
        &overlapping,
        vec![clause(cons(pvar("x"), wildcard()), Expr::var("x"))],
    )
    .unwrap();
    assert_eq!(print_value(&got).unwrap(), "111");
}

/// A matcher built from clauses can give record projections as patterns.
#[test]
fn projection_style_clause_matcher() {
    use pmoe_core::demos::social::{user, user_matcher};
    let target = user(7, "Ada");
    let got = match_first(
        &target,
        &user_matcher(),
        vec![clause(ctor("ID", vec![pvar("i")]), Expr::var("i"))],
    )
    .unwrap();
    assert_eq!(print_value(&got).unwrap(), "7");
    let got = match_first(
        &target,
        &user_matcher(),
        vec![clause(ctor("Name", vec![pvar("n")]), Expr::var("n"))],
    )
    .unwrap();
    assert_eq!(print_value(&got).unwrap(), "\"Ada\"");
}

#[test]
fn non_collection_target_is_a_type_error() {
    let err = match_all(
        &Value::Int(3),
        &list(integer()),
        vec![clause(cons(pvar("x"), wildcard()), Expr::var("x"))],
    )
    .collect_values()
    .unwrap_err();
    assert!(matches!(err, Error::TypeMismatch { .. }));
}

#[test]
fn matcher_names_compose_for_diagnostics() {
    let m = multiset(tuple(vec![
        string(),
        multiset(tuple(vec![string(), integer()])),
    ]));
    assert_eq!(m.name(), "multiset (string, multiset (string, integer))");
    assert_eq!(sorted_list(integer()).name(), "sortedList integer");
    assert_eq!(list(something()).name(), "list something");
}

#[test]
fn algebraic_matcher_accepts_thunked_recursion() {
    let m = algebraic(vec![("Wrap", vec![Arc::new(integer) as _])], "wrap");
    let target = Value::term("Wrap", vec![Value::Int(3)]);
    let got = match_first(
        &target,
        &m,
        vec![clause(ctor("Wrap", vec![pvar("x")]), Expr::var("x"))],
    )
    .unwrap();
    assert_eq!(print_value(&got).unwrap(), "3");
}

/// A set value pattern must walk the whole target, so an infinite target is
/// a fuel error rather than a hang.
#[test]
fn set_value_pattern_on_infinite_target_is_a_fuel_error() {
    let target = Value::Coll(pmoe_core::value::naturals(1));
    let err = match_all(
        &target,
        &set(integer()),
        vec![clause(
            vpat(Expr::CollE(vec![Expr::int(1), Expr::int(2)])),
            Expr::int(0),
        )],
    )
    .collect_values()
    .unwrap_err();
    assert!(matches!(err, Error::FuelExhausted(_)), "got {err:?}");
}

/// A collection matcher given a non-collection value pattern reports the
/// type mismatch instead of silently failing.
#[test]
fn non_collection_value_pattern_is_a_type_error() {
    let target = Value::ints([1, 2, 3]);
    let err = match_all(
        &target,
        &list(integer()),
        vec![clause(vpat(Expr::int(5)), Expr::int(0))],
    )
    .collect_values()
    .unwrap_err();
    assert!(matches!(err, Error::TypeMismatch { .. }), "got {err:?}");
}
