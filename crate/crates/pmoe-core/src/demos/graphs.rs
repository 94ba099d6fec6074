//! Graph queries over two representations: a directed graph as a set of
//! `Edge from to` terms, and a weighted adjacency list for tour search.

use std::sync::Arc;

use crate::engine::{clause, match_all};
use crate::error::Result;
use crate::matcher::{algebraic, integer, multiset, set, string, thunk, tuple, Matcher};
use crate::pattern::{
    and_p, cons, ctor, ellipsis, ipvar, let_indexed, loop_p, nil, not_p, pvar, tuple_p, vpat,
    wildcard, LoopEnd,
};
use crate::value::{Expr, Value};

pub fn edge(from: i64, to: i64) -> Value {
    Value::term("Edge", vec![Value::Int(from), Value::Int(to)])
}

pub fn edge_matcher() -> Matcher {
    algebraic(
        vec![("Edge", vec![thunk(integer()), thunk(integer())])],
        "edge",
    )
}

/// A graph is a set of edges.
pub fn graph_matcher() -> Matcher {
    set(edge_matcher())
}

/// The directed demo graph: node 1 reaches 2, 3, 4; only 4 fails to link
/// back; 4–7 form a one-directional clique; 8 hangs off 7.
pub fn graph_data() -> Value {
    Value::coll(vec![
        edge(1, 2),
        edge(1, 3),
        edge(1, 4),
        edge(2, 1),
        edge(2, 3),
        edge(3, 1),
        edge(3, 4),
        edge(4, 5),
        edge(4, 6),
        edge(4, 7),
        edge(5, 6),
        edge(5, 7),
        edge(6, 7),
        edge(7, 8),
    ])
}

/// Nodes reachable from `s` by exactly two edges, as a sorted set of results.
pub fn two_hop_nodes(s: i64, graph: &Value) -> Result<Vec<i64>> {
    let pattern = cons(
        ctor(
            "Edge",
            vec![
                and_p(vec![vpat(Expr::int(s)), ipvar("x", Expr::int(1))]),
                ipvar("x", Expr::int(2)),
            ],
        ),
        cons(
            ctor(
                "Edge",
                vec![
                    vpat(Expr::indexed("x", Expr::int(2))),
                    ipvar("x", Expr::int(3)),
                ],
            ),
            wildcard(),
        ),
    );
    let results = match_all(
        graph,
        &graph_matcher(),
        vec![clause(pattern, Expr::indexed("x", Expr::int(3)))],
    )
    .collect_values()?;
    let mut nodes: Vec<i64> = results.iter().map(Value::as_int).collect::<Result<_>>()?;
    nodes.sort_unstable();
    nodes.dedup();
    Ok(nodes)
}

/// Nodes that `s` links to without a link back: `Edge #s $x : !(Edge #x #s : _)`.
pub fn unrequited_from(s: i64, graph: &Value) -> Result<Vec<Value>> {
    let pattern = cons(
        ctor("Edge", vec![vpat(Expr::int(s)), pvar("x")]),
        not_p(cons(
            ctor("Edge", vec![vpat(Expr::var("x")), vpat(Expr::int(s))]),
            wildcard(),
        )),
    );
    match_all(
        graph,
        &graph_matcher(),
        vec![clause(pattern, Expr::var("x"))],
    )
    .collect_values()
}

/// All simple-path routes from `s` to `e`; a let pattern seeds the loop with
/// the start node. The edges are matched as a multiset so every step consumes
/// one edge — over a cyclic graph, set semantics would walk cycles forever —
/// and edge-distinct walks that still revisit a node are filtered out.
pub fn routes(s: i64, e: i64, graph: &Value) -> Result<Vec<Value>> {
    let step = cons(
        ctor(
            "Edge",
            vec![
                vpat(Expr::indexed("x", Expr::sub(Expr::var("i"), Expr::int(1)))),
                ipvar("x", Expr::var("i")),
            ],
        ),
        ellipsis(),
    );
    // The stop count `m` binds before the finish pattern runs, so the finish
    // can consume the route's last edge itself: with edges matched as a
    // multiset, the repeat steps have used up edges 1..m and the final hop
    // `x_m -> e` is still available, binding `x_(m+1)`.
    let finish = cons(
        ctor(
            "Edge",
            vec![
                vpat(Expr::indexed("x", Expr::var("m"))),
                and_p(vec![
                    vpat(Expr::int(e)),
                    ipvar("x", Expr::add(Expr::var("m"), Expr::int(1))),
                ]),
            ],
        ),
        wildcard(),
    );
    let lp = loop_p("i", Expr::int(2), LoopEnd::Pat(pvar("m")), step, finish)?;
    let pattern = let_indexed("x", Expr::int(1), Expr::int(s), lp);
    let body = Expr::host(|env| {
        let n = env.lookup_scalar("m")?.as_int()? + 1;
        let mut route = Vec::new();
        for i in 1..=n {
            route.push(env.lookup_indexed("x", i)?);
        }
        Ok(Value::coll(route))
    });
    let walks = match_all(
        graph,
        &multiset(edge_matcher()),
        vec![clause(pattern, body)],
    )
    .collect_values()?;
    let mut simple = Vec::new();
    for walk in walks {
        let nodes: Vec<i64> = walk
            .as_coll()?
            .iter()
            .map(|v| v?.as_int())
            .collect::<Result<_>>()?;
        let mut seen = nodes.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() == nodes.len() {
            simple.push(walk);
        }
    }
    Ok(simple)
}

/// All cliques of size `n`, where a clique is witnessed by edges
/// `x_j -> x_i` for every j < i: a doubly nested loop pattern whose inner
/// finish chains back to the outer ellipsis.
pub fn cliques(n: i64, graph: &Value) -> Result<Vec<Value>> {
    let inner = loop_p(
        "j",
        Expr::int(2),
        LoopEnd::Fixed(Arc::new(Expr::sub(Expr::var("i"), Expr::int(1)))),
        cons(
            ctor(
                "Edge",
                vec![
                    vpat(Expr::indexed("x", Expr::var("j"))),
                    vpat(Expr::indexed("x", Expr::var("i"))),
                ],
            ),
            ellipsis(),
        ),
        ellipsis(), // continuation point of the outer loop
    )?;
    let outer = loop_p(
        "i",
        Expr::int(3),
        LoopEnd::Fixed(Arc::new(Expr::int(n))),
        cons(
            ctor(
                "Edge",
                vec![
                    vpat(Expr::indexed("x", Expr::int(1))),
                    ipvar("x", Expr::var("i")),
                ],
            ),
            inner,
        ),
        wildcard(),
    )?;
    let pattern = cons(
        ctor(
            "Edge",
            vec![ipvar("x", Expr::int(1)), ipvar("x", Expr::int(2))],
        ),
        outer,
    );
    let body = Expr::host(move |env| {
        let mut members = Vec::new();
        for i in 1..=n {
            members.push(env.lookup_indexed("x", i)?);
        }
        Ok(Value::coll(members))
    });
    match_all(graph, &graph_matcher(), vec![clause(pattern, body)]).collect_values()
}

// ---------------------------------------------------------------------------
// Adjacency graphs and tours
// ---------------------------------------------------------------------------

/// `multiset (string, multiset (string, integer))`.
pub fn adjacency_matcher() -> Matcher {
    multiset(tuple(vec![
        string(),
        multiset(tuple(vec![string(), integer()])),
    ]))
}

fn city(name: &str, neighbors: &[(&str, i64)]) -> Value {
    Value::tuple(vec![
        Value::str(name),
        Value::coll(
            neighbors
                .iter()
                .map(|(n, hours)| Value::tuple(vec![Value::str(n), Value::Int(*hours)]))
                .collect(),
        ),
    ])
}

/// An airline network as a weighted adjacency list; weights are hours.
pub fn airline_data() -> Value {
    Value::coll(vec![
        city(
            "Berlin",
            &[
                ("New York", 14),
                ("London", 2),
                ("Tokyo", 14),
                ("Vancouver", 13),
            ],
        ),
        city(
            "New York",
            &[
                ("Berlin", 14),
                ("London", 12),
                ("Tokyo", 18),
                ("Vancouver", 6),
            ],
        ),
        city(
            "London",
            &[
                ("Berlin", 2),
                ("New York", 12),
                ("Tokyo", 15),
                ("Vancouver", 10),
            ],
        ),
        city(
            "Tokyo",
            &[
                ("Berlin", 14),
                ("New York", 18),
                ("London", 15),
                ("Vancouver", 12),
            ],
        ),
        city(
            "Vancouver",
            &[
                ("Berlin", 13),
                ("New York", 6),
                ("London", 10),
                ("Tokyo", 12),
            ],
        ),
    ])
}

/// All tours that start at `home`, visit every city exactly once, and return
/// home. Each result is `(route, cost)`; the route lists the visited cities
/// ending back at `home`.
pub fn tsp_tours(graph: &Value, home: &str) -> Result<Vec<Value>> {
    let n = graph.as_coll()?.to_vec()?.len() as i64;
    let first_row = tuple_p(vec![
        vpat(Expr::str(home)),
        cons(
            tuple_p(vec![ipvar("s", Expr::int(1)), ipvar("p", Expr::int(1))]),
            wildcard(),
        ),
    ]);
    let step = cons(
        tuple_p(vec![
            vpat(Expr::indexed("s", Expr::sub(Expr::var("i"), Expr::int(1)))),
            cons(
                tuple_p(vec![ipvar("s", Expr::var("i")), ipvar("p", Expr::var("i"))]),
                wildcard(),
            ),
        ]),
        ellipsis(),
    );
    let last_row = cons(
        tuple_p(vec![
            vpat(Expr::indexed("s", Expr::sub(Expr::var("n"), Expr::int(1)))),
            cons(
                tuple_p(vec![
                    and_p(vec![vpat(Expr::str(home)), ipvar("s", Expr::var("n"))]),
                    ipvar("p", Expr::var("n")),
                ]),
                wildcard(),
            ),
        ]),
        nil(),
    );
    let lp = loop_p(
        "i",
        Expr::int(2),
        LoopEnd::Fixed(Arc::new(Expr::sub(Expr::var("n"), Expr::int(1)))),
        step,
        last_row,
    )?;
    let pattern = cons(first_row, lp);
    let body = Expr::host(move |env| {
        let mut route = Vec::new();
        let mut cost: i64 = 0;
        for i in 1..=n {
            route.push(env.lookup_indexed("s", i)?);
            cost += env.lookup_indexed("p", i)?.as_int()?;
        }
        Ok(Value::tuple(vec![Value::coll(route), Value::Int(cost)]))
    });
    let env = crate::value::Bindings::new().bind_scalar("n", Value::Int(n))?;
    crate::engine::match_all_in(
        graph,
        &adjacency_matcher(),
        vec![clause(pattern, body)],
        crate::engine::SearchMode::Bfs,
        env,
        crate::engine::EngineConfig::default(),
    )
    .collect_values()
}

/// The cheapest tour, by stable sort on cost.
pub fn tsp_best(graph: &Value, home: &str) -> Result<Value> {
    let mut tours = tsp_tours(graph, home)?;
    if tours.is_empty() {
        return Err(crate::error::Error::NoMatch);
    }
    tours.sort_by_key(|t| t.as_tuple().and_then(|p| p[1].as_int()).unwrap_or(i64::MAX));
    Ok(tours.remove(0))
}
