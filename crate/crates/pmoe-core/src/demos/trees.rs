//! Category trees: nodes carry an arbitrary number of children whose order is
//! ignorable, so children are matched as a multiset. Loop patterns walk paths
//! of arbitrary depth; the ellipsis sits in a non-tail position of the repeat
//! pattern.

use crate::engine::{clause, match_all, match_all_dfs};
use crate::error::Result;
use crate::matcher::{algebraic, multiset, string, thunk, Matcher};
use crate::pattern::{cons, ctor, ellipsis, ipvar, loop_p, pvar, vpat, wildcard, LoopEnd};
use crate::value::{Expr, Value};

pub fn leaf(name: &str) -> Value {
    Value::term("Leaf", vec![Value::str(name)])
}

pub fn node(name: &str, children: Vec<Value>) -> Value {
    Value::term("Node", vec![Value::str(name), Value::coll(children)])
}

/// `Leaf string | Node string (multiset tree)` — a recursive algebraic
/// matcher with multiset children.
pub fn tree_matcher() -> Matcher {
    Matcher::lazy("tree string", || {
        algebraic(
            vec![
                ("Leaf", vec![thunk(string())]),
                (
                    "Node",
                    vec![
                        thunk(string()),
                        std::sync::Arc::new(|| multiset(tree_matcher())),
                    ],
                ),
            ],
            "tree string",
        )
    })
}

/// The programming-language category tree used by the tree queries.
pub fn tree_data() -> Value {
    node(
        "Programming language",
        vec![
            node("pattern-match-oriented", vec![leaf("Egison")]),
            node(
                "Functional language",
                vec![
                    node(
                        "Strictly typed",
                        vec![leaf("OCaml"), leaf("Haskell"), leaf("Curry"), leaf("Coq")],
                    ),
                    node(
                        "Dynamically typed",
                        vec![leaf("Egison"), leaf("Lisp"), leaf("Scheme"), leaf("Racket")],
                    ),
                ],
            ),
            node("Logic programming", vec![leaf("Prolog"), leaf("Curry")]),
            node(
                "Object oriented",
                vec![
                    leaf("C++"),
                    leaf("Java"),
                    leaf("Ruby"),
                    leaf("Python"),
                    leaf("OCaml"),
                ],
            ),
        ],
    )
}

/// Every category path from the root down to a `Leaf x`: the repeat pattern
/// descends one node per iteration, collecting the category names.
pub fn ancestors(x: &str, tree: &Value) -> Result<Vec<Value>> {
    let repeat = ctor(
        "Node",
        vec![ipvar("c", Expr::var("i")), cons(ellipsis(), wildcard())],
    );
    let finish = ctor("Leaf", vec![vpat(Expr::str(x))]);
    let pattern = loop_p("i", Expr::int(1), LoopEnd::Pat(pvar("n")), repeat, finish)?;
    let body = Expr::host(|env| {
        let n = env.lookup_scalar("n")?.as_int()?;
        let mut path = Vec::new();
        for i in 1..=n {
            path.push(env.lookup_indexed("c", i)?);
        }
        Ok(Value::coll(path))
    });
    match_all(tree, &tree_matcher(), vec![clause(pattern, body)]).collect_values()
}

/// Every language below the category `x`, in the order they appear in the
/// tree (depth-first enumeration keeps document order).
pub fn descendants(x: &str, tree: &Value) -> Result<Vec<Value>> {
    let descend = || ctor("Node", vec![wildcard(), cons(ellipsis(), wildcard())]);
    let inner = loop_p(
        "_",
        Expr::int(1),
        LoopEnd::Pat(wildcard()),
        descend(),
        ctor("Leaf", vec![pvar("y")]),
    )?;
    let outer = loop_p(
        "_",
        Expr::int(1),
        LoopEnd::Pat(wildcard()),
        descend(),
        ctor("Node", vec![vpat(Expr::str(x)), cons(inner, wildcard())]),
    )?;
    match_all_dfs(tree, &tree_matcher(), vec![clause(outer, Expr::var("y"))]).collect_values()
}
