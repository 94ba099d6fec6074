//! Worked algorithms over the engine, each registered by name for the CLI.
//! A demo produces printed lines, one result per line, in the canonical
//! notation.

pub mod graphs;
pub mod poker;
pub mod primes;
pub mod queens;
pub mod sat;
pub mod social;
pub mod trees;

use crate::error::Result;
use crate::printer::print_value;
use crate::value::Value;

pub struct Demo {
    pub name: &'static str,
    pub about: &'static str,
    run: fn(Option<usize>) -> Result<Vec<String>>,
}

impl Demo {
    pub fn run(&self, take: Option<usize>) -> Result<Vec<String>> {
        (self.run)(take)
    }
}

fn print_all(values: &[Value], take: Option<usize>) -> Result<Vec<String>> {
    let limit = take.unwrap_or(values.len());
    values.iter().take(limit).map(print_value).collect()
}

fn print_stream(
    stream: crate::engine::ResultStream,
    take: Option<usize>,
    default_take: usize,
) -> Result<Vec<String>> {
    let n = take.unwrap_or(default_take);
    stream.take(n).map(|v| print_value(&v?)).collect()
}

fn demo_twin_primes(take: Option<usize>) -> Result<Vec<String>> {
    print_stream(primes::twin_primes(), take, 10)
}

fn demo_prime_triples(take: Option<usize>) -> Result<Vec<String>> {
    print_stream(primes::prime_triples(), take, 8)
}

fn demo_non_twin(take: Option<usize>) -> Result<Vec<String>> {
    print_stream(primes::non_twin_adjacent_pairs(), take, 10)
}

fn demo_sorted_prime_pairs(take: Option<usize>) -> Result<Vec<String>> {
    print_stream(primes::prime_gap6_pairs_sorted(), take, 10)
}

fn demo_nqueens(take: Option<usize>) -> Result<Vec<String>> {
    print_all(&queens::n_queens(4)?, take)
}

fn demo_sat(take: Option<usize>) -> Result<Vec<String>> {
    // (p or q) and (not p or r) and (not p or not r)
    let vars = sat::vars_value(&[1, 2, 3]);
    let cnf = sat::cnf_value(&[&[1, 2], &[-1, 3], &[-1, -3]]);
    let verdict = Value::Bool(sat::sat_solve(&vars, &cnf)?);
    print_all(&[verdict], take)
}

fn demo_poker(take: Option<usize>) -> Result<Vec<String>> {
    use poker::{card, Suit};
    let hands = vec![
        vec![
            card(Suit::Heart, 5),
            card(Suit::Heart, 6),
            card(Suit::Heart, 7),
            card(Suit::Heart, 8),
            card(Suit::Heart, 9),
        ],
        vec![
            card(Suit::Diamond, 7),
            card(Suit::Clover, 7),
            card(Suit::Heart, 7),
            card(Suit::Spade, 7),
            card(Suit::Diamond, 2),
        ],
        vec![
            card(Suit::Diamond, 2),
            card(Suit::Clover, 3),
            card(Suit::Heart, 5),
            card(Suit::Spade, 8),
            card(Suit::Diamond, 12),
        ],
    ];
    let results = hands
        .into_iter()
        .map(|h| Ok(Value::str(poker::poker_hand(&Value::coll(h))?)))
        .collect::<Result<Vec<_>>>()?;
    print_all(&results, take)
}

fn demo_ancestors(take: Option<usize>) -> Result<Vec<String>> {
    print_all(&trees::ancestors("Egison", &trees::tree_data())?, take)
}

fn demo_descendants(take: Option<usize>) -> Result<Vec<String>> {
    print_all(
        &trees::descendants("Functional language", &trees::tree_data())?,
        take,
    )
}

fn demo_two_hop(take: Option<usize>) -> Result<Vec<String>> {
    let nodes = graphs::two_hop_nodes(1, &graphs::graph_data())?;
    print_all(&[Value::ints(nodes)], take)
}

fn demo_unrequited(take: Option<usize>) -> Result<Vec<String>> {
    print_all(&graphs::unrequited_from(1, &graphs::graph_data())?, take)
}

fn demo_routes(take: Option<usize>) -> Result<Vec<String>> {
    print_all(&graphs::routes(1, 8, &graphs::graph_data())?, take)
}

fn demo_cliques(take: Option<usize>) -> Result<Vec<String>> {
    print_all(&graphs::cliques(4, &graphs::graph_data())?, take)
}

fn demo_tsp(take: Option<usize>) -> Result<Vec<String>> {
    let mut tours = graphs::tsp_tours(&graphs::airline_data(), "Berlin")?;
    tours.sort_by_key(|t| t.as_tuple().and_then(|p| p[1].as_int()).unwrap_or(i64::MAX));
    print_all(&tours, take)
}

fn demo_social(take: Option<usize>) -> Result<Vec<String>> {
    print_all(&social::demo_query()?, take)
}

pub fn registry() -> Vec<Demo> {
    vec![
        Demo {
            name: "twin-primes",
            about: "twin prime pairs from the infinite prime stream",
            run: demo_twin_primes,
        },
        Demo {
            name: "prime-triples",
            about: "prime triples (p, p+2|p+4, p+6) via and/or patterns",
            run: demo_prime_triples,
        },
        Demo {
            name: "non-twin-pairs",
            about: "adjacent prime pairs that are not twins (not-pattern)",
            run: demo_non_twin,
        },
        Demo {
            name: "sorted-prime-pairs",
            about: "(p, p+6) pairs through the sorted-list matcher",
            run: demo_sorted_prime_pairs,
        },
        Demo {
            name: "nqueens",
            about: "four-queens solutions via nested loop patterns",
            run: demo_nqueens,
        },
        Demo {
            name: "sat",
            about: "Davis-Putnam satisfiability of (p|q) & (!p|r) & (!p|!r)",
            run: demo_sat,
        },
        Demo {
            name: "poker",
            about: "poker hand classification over a multiset of cards",
            run: demo_poker,
        },
        Demo {
            name: "ancestors",
            about: "category paths to \"Egison\" in the language tree",
            run: demo_ancestors,
        },
        Demo {
            name: "descendants",
            about: "languages below \"Functional language\", document order",
            run: demo_descendants,
        },
        Demo {
            name: "two-hop",
            about: "nodes two edges away from node 1",
            run: demo_two_hop,
        },
        Demo {
            name: "unrequited",
            about: "nodes linked from 1 with no link back",
            run: demo_unrequited,
        },
        Demo {
            name: "routes",
            about: "simple paths from node 1 to node 8",
            run: demo_routes,
        },
        Demo {
            name: "cliques",
            about: "4-cliques of the demo graph",
            run: demo_cliques,
        },
        Demo {
            name: "tsp",
            about: "all round tours from Berlin, cheapest first",
            run: demo_tsp,
        },
        Demo {
            name: "social",
            about: "followees of Egison_Lang who do not follow back",
            run: demo_social,
        },
    ]
}

pub fn find(name: &str) -> Option<Demo> {
    registry().into_iter().find(|d| d.name == name)
}
