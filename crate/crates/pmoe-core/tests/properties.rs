//! Property tests for the core invariants: environment persistence,
//! structural-equality laws, collection memoization, and ellipsis
//! substitution round-trips.

use proptest::prelude::*;

use pmoe_core::engine::not_matches;
use pmoe_core::matcher::{eq, multiset, something, tuple};
use pmoe_core::pattern::{
    cons, ctor, ellipsis, ipvar, nil, pvar, substitute_ellipsis, tuple_p, vpat, wildcard, Pat,
    Pattern,
};
use pmoe_core::value::{eval_expr, naturals, value_equal, Bindings, Coll, Expr, Value};

fn int_list() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 0..6)
}

fn small_value() -> impl Strategy<Value = Value> {
    let leaf = prop_oneof![
        (-100i64..=100).prop_map(Value::Int),
        "[a-z]{0,4}".prop_map(Value::str),
        any::<bool>().prop_map(Value::Bool),
    ];
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..4).prop_map(Value::tuple),
            prop::collection::vec(inner.clone(), 0..4).prop_map(Value::coll),
            prop::collection::vec(inner, 0..3).prop_map(|args| Value::term("Node", args)),
        ]
    })
}

proptest! {
    /// Extending an environment never changes what the original evaluates to.
    #[test]
    fn bindings_are_persistent(before in -100i64..=100, after in -100i64..=100, key in 1i64..=5) {
        let env = Bindings::new().bind_scalar("x", Value::Int(before)).unwrap();
        let expr = Expr::add(Expr::var("x"), Expr::int(1));
        let v1 = eval_expr(&expr, &env).unwrap().as_int().unwrap();
        let _shadowed = env.bind_scalar("x", Value::Int(after)).unwrap();
        let _extended = env.bind_scalar("y", Value::Int(after)).unwrap();
        let _indexed = env.bind_indexed("z", key, Value::Int(after)).unwrap();
        let v2 = eval_expr(&expr, &env).unwrap().as_int().unwrap();
        prop_assert_eq!(v1, before + 1);
        prop_assert_eq!(v1, v2);
    }

    /// Structural equality is reflexive and symmetric on finite values.
    #[test]
    fn value_equality_laws(a in small_value(), b in small_value()) {
        prop_assert!(value_equal(&a, &a).unwrap());
        prop_assert_eq!(value_equal(&a, &b).unwrap(), value_equal(&b, &a).unwrap());
    }

    /// Reading a collection twice from the start yields pairwise-equal
    /// prefixes of any requested length.
    #[test]
    fn coll_memoization_is_stable(len in 0usize..40) {
        let c = naturals(1);
        let first = c.take(len).unwrap();
        let second = c.take(len).unwrap();
        for (a, b) in first.iter().zip(second.iter()) {
            prop_assert!(value_equal(a, b).unwrap());
        }
    }

    /// Lazy concatenation agrees with eager concatenation.
    #[test]
    fn coll_concat_matches_eager(xs in int_list(), ys in int_list()) {
        let lazy = Coll::concat(
            Value::ints(xs.iter().copied()).as_coll().unwrap().clone(),
            Value::ints(ys.iter().copied()).as_coll().unwrap().clone(),
        );
        let mut expected = xs.clone();
        expected.extend(&ys);
        let got: Vec<i64> = lazy
            .to_vec()
            .unwrap()
            .iter()
            .map(|v| v.as_int().unwrap())
            .collect();
        prop_assert_eq!(got, expected);
    }

    /// Replacing the ellipsis with a fresh marker and then mapping the marker
    /// back recovers the original repeat pattern.
    #[test]
    fn substitution_round_trip(shape in 0usize..4) {
        let repeat: Pat = match shape {
            0 => cons(ipvar("x", Expr::var("i")), ellipsis()),
            1 => ctor("Node", vec![pvar("c"), cons(ellipsis(), wildcard())]),
            2 => pmoe_core::pattern::and_p(vec![
                pmoe_core::pattern::not_p(vpat(Expr::var("a"))),
                ellipsis(),
            ]),
            _ => cons(wildcard(), cons(ellipsis(), nil())),
        };
        let marker = ctor("FreshMarker", vec![]);
        let replaced = substitute_ellipsis(&repeat, &marker).unwrap();
        let restored = restore(&replaced, &marker);
        prop_assert_eq!(restored, repeat);
    }

    /// The not-pattern decides membership negatively: it succeeds exactly
    /// when the plain pattern has no match.
    #[test]
    fn not_pattern_complements_matching(xs in int_list(), x in -5i64..=5) {
        let target = Value::ints(xs.iter().copied());
        let pattern = cons(vpat(Expr::int(x)), wildcard());
        let direct = xs.contains(&x);
        let negated = not_matches(&pattern, &target, &multiset(eq()), &Bindings::new()).unwrap();
        prop_assert_eq!(direct, !negated);
    }
}

fn restore(p: &Pat, marker: &Pat) -> Pat {
    if p == marker {
        return ellipsis();
    }
    match &**p {
        Pattern::Ctor(name, args) => std::sync::Arc::new(Pattern::Ctor(
            name.clone(),
            args.iter().map(|a| restore(a, marker)).collect(),
        )),
        Pattern::And(ps) => std::sync::Arc::new(Pattern::And(
            ps.iter().map(|a| restore(a, marker)).collect(),
        )),
        Pattern::Not(q) => std::sync::Arc::new(Pattern::Not(restore(q, marker))),
        _ => p.clone(),
    }
}

/// The documented examples of the public negative-matching operation.
#[test]
fn not_matches_documented_examples() {
    // A non-twin adjacent pair: 11 is not 7 + 2.
    let env = Bindings::new().bind_scalar("p", Value::Int(7)).unwrap();
    let p = vpat(Expr::add(Expr::var("p"), Expr::int(2)));
    assert!(pmoe_core::engine::match_all_in(
        &Value::Int(11),
        &eq(),
        vec![pmoe_core::clause(p.clone(), Expr::int(0))],
        pmoe_core::SearchMode::Bfs,
        env.clone(),
        Default::default(),
    )
    .collect_values()
    .unwrap()
    .is_empty());
    assert!(not_matches(&p, &Value::Int(11), &eq(), &env).unwrap());

    // No common element between [1,2] and [3,4].
    let pair = Value::tuple(vec![Value::ints([1, 2]), Value::ints([3, 4])]);
    let m = tuple(vec![multiset(eq()), multiset(eq())]);
    let common = tuple_p(vec![
        cons(pvar("x"), wildcard()),
        cons(vpat(Expr::var("x")), wildcard()),
    ]);
    assert!(not_matches(&common, &pair, &m, &Bindings::new()).unwrap());

    // The wildcard always matches, so its negation never does.
    assert!(!not_matches(&wildcard(), &Value::Int(5), &something(), &Bindings::new()).unwrap());
}
