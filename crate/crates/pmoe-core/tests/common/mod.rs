//! Shared oracle implementations and test batteries, used by both the
//! per-module integration suites and the acceptance suite. Oracles are
//! written with plain recursion and explicit loops, independent of the
//! engine paths they check.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pmoe_core::engine::{clause, match_all};
use pmoe_core::error::Error;
use pmoe_core::matcher::{integer, multiset};
use pmoe_core::pattern::vpat;
use pmoe_core::printer::print_value;
use pmoe_core::stdlib::*;
use pmoe_core::value::{Expr, Value};

pub fn ints(v: &[i64]) -> Value {
    Value::ints(v.iter().copied())
}

pub fn to_ints(v: &Value) -> Vec<i64> {
    v.as_coll()
        .unwrap()
        .to_vec()
        .unwrap()
        .iter()
        .map(|x| x.as_int().unwrap())
        .collect()
}

pub fn to_nested(v: &Value) -> Vec<Vec<i64>> {
    v.as_coll()
        .unwrap()
        .to_vec()
        .unwrap()
        .iter()
        .map(to_ints)
        .collect()
}

pub fn random_list(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<i64> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..=4)).collect()
}

pub mod oracles {
    pub fn map(f: impl Fn(i64) -> i64, xs: &[i64]) -> Vec<i64> {
        match xs {
            [] => vec![],
            [x, rest @ ..] => {
                let mut out = vec![f(*x)];
                out.extend(map(f, rest));
                out
            }
        }
    }

    pub fn with_both_sides(xs: &[i64]) -> Vec<(Vec<i64>, i64, Vec<i64>)> {
        let mut out = Vec::new();
        for i in 0..xs.len() {
            out.push((xs[..i].to_vec(), xs[i], xs[i + 1..].to_vec()));
        }
        out
    }

    pub fn filter(pred: impl Fn(i64) -> bool, xs: &[i64]) -> Vec<i64> {
        match xs {
            [] => vec![],
            [x, rest @ ..] => {
                let mut out = if pred(*x) { vec![*x] } else { vec![] };
                out.extend(filter(pred, rest));
                out
            }
        }
    }

    pub fn elem(x: i64, xs: &[i64]) -> bool {
        match xs {
            [] => false,
            [y, rest @ ..] => *y == x || elem(x, rest),
        }
    }

    pub fn delete(x: i64, xs: &[i64]) -> Vec<i64> {
        match xs {
            [] => vec![],
            [y, rest @ ..] if *y == x => rest.to_vec(),
            [y, rest @ ..] => {
                let mut out = vec![*y];
                out.extend(delete(x, rest));
                out
            }
        }
    }

    pub fn unique_last(xs: &[i64]) -> Vec<i64> {
        let mut out = Vec::new();
        for (i, x) in xs.iter().enumerate() {
            if !xs[i + 1..].contains(x) {
                out.push(*x);
            }
        }
        out
    }

    pub fn unique_first(xs: &[i64]) -> Vec<i64> {
        let mut out: Vec<i64> = Vec::new();
        for x in xs {
            if !out.contains(x) {
                out.push(*x);
            }
        }
        out
    }

    pub fn concat(xss: &[Vec<i64>]) -> Vec<i64> {
        xss.iter().flatten().copied().collect()
    }

    /// One occurrence per matching (position in xs, position in ys) pair,
    /// compared as a multiset.
    pub fn intersect_pairs(xs: &[i64], ys: &[i64]) -> Vec<i64> {
        let mut out = Vec::new();
        for x in xs {
            for y in ys {
                if x == y {
                    out.push(*x);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn difference(xs: &[i64], ys: &[i64]) -> Vec<i64> {
        xs.iter().filter(|x| !ys.contains(x)).copied().collect()
    }

    /// True when some shared element can be removed from both sides leaving
    /// disjoint remainders.
    pub fn single_common(xs: &[i64], ys: &[i64]) -> bool {
        for i in 0..xs.len() {
            let x = xs[i];
            if let Some(j) = ys.iter().position(|y| *y == x) {
                let mut rest_x = xs.to_vec();
                rest_x.remove(i);
                let mut rest_y = ys.to_vec();
                rest_y.remove(j);
                if rest_x.iter().all(|a| !rest_y.contains(a)) {
                    return true;
                }
            }
        }
        false
    }

    pub fn common_prefix(xs: &[i64], ys: &[i64]) -> Vec<i64> {
        xs.iter()
            .zip(ys.iter())
            .take_while(|(a, b)| a == b)
            .map(|(a, _)| *a)
            .collect()
    }

    /// Combinations in breadth-first arrival order: the depth of a success
    /// is set by its last selected index, and same-depth ties resolve in
    /// left-to-right index order. Sort key: (last index, full index tuple).
    pub fn comb(n: usize, xs: &[i64]) -> Vec<Vec<i64>> {
        fn choose(start: usize, n: usize, len: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for i in start..len {
                for mut rest in choose(i + 1, n - 1, len) {
                    rest.insert(0, i);
                    out.push(rest);
                }
            }
            out
        }
        let mut idx = choose(0, n, xs.len());
        idx.sort_by_key(|c| (c.last().copied(), c.clone()));
        idx.into_iter()
            .map(|c| c.into_iter().map(|i| xs[i]).collect())
            .collect()
    }

    pub fn lookup_first(k: i64, assoc: &[(i64, i64)]) -> Option<i64> {
        assoc.iter().find(|(key, _)| *key == k).map(|(_, v)| *v)
    }

    pub fn prefixes(xs: &[i64]) -> Vec<Vec<i64>> {
        (0..=xs.len()).map(|k| xs[..k].to_vec()).collect()
    }
}

// --- stdlib batteries -----------------------------------------------------------

pub fn battery_map(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..cases {
        let xs = random_list(&mut rng, 8);
        let got = pm_map(|v| Ok(Value::Int(v.as_int()? * 2 + 1)), &ints(&xs)).unwrap();
        assert_eq!(to_ints(&got), oracles::map(|x| 2 * x + 1, &xs));
    }
}

pub fn battery_map_with_both_sides(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..cases {
        let xs = random_list(&mut rng, 8);
        let got = pm_map_with_both_sides(|hs, x, ts| Ok(Value::tuple(vec![hs, x, ts])), &ints(&xs))
            .unwrap();
        let got: Vec<String> = got
            .as_coll()
            .unwrap()
            .to_vec()
            .unwrap()
            .iter()
            .map(|v| print_value(v).unwrap())
            .collect();
        let expected: Vec<String> = oracles::with_both_sides(&xs)
            .into_iter()
            .map(|(hs, x, ts)| {
                print_value(&Value::tuple(vec![ints(&hs), Value::Int(x), ints(&ts)])).unwrap()
            })
            .collect();
        assert_eq!(got, expected);
    }
}

pub fn battery_filter(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..cases {
        let xs = random_list(&mut rng, 8);
        let got = pm_filter(|v| Ok(v.as_int()? % 2 == 1), &ints(&xs)).unwrap();
        assert_eq!(to_ints(&got), oracles::filter(|x| x % 2 == 1, &xs));
    }
}

pub fn battery_elem(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..cases {
        let xs = random_list(&mut rng, 8);
        let x = rng.gen_range(0..=4);
        assert_eq!(
            pm_elem(&Value::Int(x), &ints(&xs)).unwrap(),
            oracles::elem(x, &xs)
        );
    }
}

pub fn battery_delete(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..cases {
        let xs = random_list(&mut rng, 8);
        let x = rng.gen_range(0..=4);
        let got = pm_delete(&Value::Int(x), &ints(&xs)).unwrap();
        assert_eq!(to_ints(&got), oracles::delete(x, &xs));
    }
}

pub fn battery_any_every(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..cases {
        let xs = random_list(&mut rng, 8);
        let any_got = pm_any(|v| Ok(v.as_int()? % 2 == 1), &ints(&xs)).unwrap();
        let every_got = pm_every(|v| Ok(v.as_int()? % 2 == 1), &ints(&xs)).unwrap();
        assert_eq!(any_got, xs.iter().any(|x| x % 2 == 1));
        assert_eq!(every_got, xs.iter().all(|x| x % 2 == 1));
    }
}

pub fn battery_unique_last(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..cases {
        let xs = random_list(&mut rng, 8);
        let got = pm_unique_last(&ints(&xs)).unwrap();
        assert_eq!(to_ints(&got), oracles::unique_last(&xs), "input {xs:?}");
    }
}

pub fn battery_unique_first(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..cases {
        let xs = random_list(&mut rng, 8);
        let got = pm_unique_first(&ints(&xs)).unwrap();
        assert_eq!(to_ints(&got), oracles::unique_first(&xs), "input {xs:?}");
    }
}

pub fn battery_concat(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..cases {
        let count = rng.gen_range(0..=4);
        let xss: Vec<Vec<i64>> = (0..count).map(|_| random_list(&mut rng, 5)).collect();
        let nested = Value::coll(xss.iter().map(|v| ints(v)).collect());
        let got = pm_concat(&nested).unwrap();
        assert_eq!(to_ints(&got), oracles::concat(&xss));
    }
}

pub fn battery_lookup(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..cases {
        let len = rng.gen_range(0..=6);
        let assoc: Vec<(i64, i64)> = (0..len)
            .map(|_| (rng.gen_range(0..=3), rng.gen_range(0..=9)))
            .collect();
        let table = Value::coll(
            assoc
                .iter()
                .map(|(k, v)| Value::tuple(vec![Value::Int(*k), Value::Int(*v)]))
                .collect(),
        );
        let k = rng.gen_range(0..=3);
        match oracles::lookup_first(k, &assoc) {
            Some(v) => {
                assert_eq!(
                    pm_lookup(&Value::Int(k), &table).unwrap().as_int().unwrap(),
                    v
                );
            }
            None => {
                assert_eq!(
                    pm_lookup(&Value::Int(k), &table).unwrap_err(),
                    Error::NoMatch
                );
            }
        }
    }
}

pub fn battery_intersect(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..cases {
        let xs = random_list(&mut rng, 8);
        let ys = random_list(&mut rng, 8);
        let got = pm_intersect(&ints(&xs), &ints(&ys)).unwrap();
        let mut got = to_ints(&got);
        got.sort_unstable();
        assert_eq!(got, oracles::intersect_pairs(&xs, &ys), "{xs:?} ∩ {ys:?}");
    }
}

pub fn battery_difference(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..cases {
        let xs = random_list(&mut rng, 8);
        let ys = random_list(&mut rng, 8);
        let got = pm_difference(&ints(&xs), &ints(&ys)).unwrap();
        assert_eq!(
            to_ints(&got),
            oracles::difference(&xs, &ys),
            "{xs:?} \\ {ys:?}"
        );
    }
}

pub fn battery_single_common(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..cases {
        let xs = random_list(&mut rng, 6);
        let ys = random_list(&mut rng, 6);
        assert_eq!(
            pm_single_common_elem(&ints(&xs), &ints(&ys)).unwrap(),
            oracles::single_common(&xs, &ys),
            "{xs:?} vs {ys:?}"
        );
    }
}

pub fn battery_common_prefix(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..cases {
        let xs = random_list(&mut rng, 6);
        let ys = random_list(&mut rng, 6);
        let got = pm_common_prefix(&ints(&xs), &ints(&ys)).unwrap();
        assert_eq!(
            to_ints(&got),
            oracles::common_prefix(&xs, &ys),
            "{xs:?} vs {ys:?}"
        );
    }
}

pub fn battery_comb(cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..cases {
        let xs = random_list(&mut rng, 7);
        let n = rng.gen_range(0..=4usize);
        let got = pm_comb(n as i64, &ints(&xs)).unwrap();
        assert_eq!(to_nested(&got), oracles::comb(n, &xs), "comb {n} {xs:?}");
    }
}

/// Runs every stdlib battery at the given case count.
pub fn all_stdlib_batteries(cases: usize) {
    battery_map(cases);
    battery_map_with_both_sides(cases);
    battery_filter(cases);
    battery_elem(cases);
    battery_delete(cases);
    battery_any_every(cases);
    battery_unique_last(cases);
    battery_unique_first(cases);
    battery_concat(cases);
    battery_lookup(cases);
    battery_intersect(cases);
    battery_difference(cases);
    battery_single_common(cases);
    battery_common_prefix(cases);
    battery_comb(cases);
}

// --- multiset value-pattern equality -----------------------------------------------

pub fn multiset_value_matches(val: &[i64], tgt: &[i64]) -> bool {
    let target = ints(tgt);
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

pub fn enumerate_collections(domain: &[i64], max_len: usize) -> Vec<Vec<i64>> {
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

/// Exhaustive agreement of multiset value-pattern equality with a
/// sort-then-compare oracle over every pair from the enumerated space.
/// Returns the number of pairs checked.
pub fn multiset_equality_sweep(domains: &[(&[i64], usize)]) -> usize {
    let mut cases = 0usize;
    for (domain, max_len) in domains {
        let all = enumerate_collections(domain, *max_len);
        for a in &all {
            for b in &all {
                let mut sa = a.clone();
                let mut sb = b.clone();
                sa.sort_unstable();
                sb.sort_unstable();
                assert_eq!(
                    multiset_value_matches(a, b),
                    sa == sb,
                    "multiset equality mismatch for {a:?} vs {b:?}"
                );
                cases += 1;
            }
        }
    }
    cases
}

// --- SAT ---------------------------------------------------------------------------

pub fn truth_table_sat(n_vars: i64, cnf: &[Vec<i64>]) -> bool {
    for assignment in 0u32..(1 << n_vars) {
        let value = |lit: i64| {
            let bit = assignment >> (lit.abs() - 1) & 1 == 1;
            if lit > 0 {
                bit
            } else {
                !bit
            }
        };
        if cnf.iter().all(|c| c.iter().any(|l| value(*l))) {
            return true;
        }
    }
    false
}

pub fn run_sat(n_vars: i64, cnf: &[Vec<i64>]) -> bool {
    use pmoe_core::demos::sat;
    let vars = sat::vars_value(&(1..=n_vars).collect::<Vec<_>>());
    let clauses: Vec<&[i64]> = cnf.iter().map(|c| c.as_slice()).collect();
    sat::sat_solve(&vars, &sat::cnf_value(&clauses)).unwrap()
}

pub fn random_cnf(
    rng: &mut ChaCha8Rng,
    n_vars: i64,
    max_clauses: usize,
    lits: usize,
) -> Vec<Vec<i64>> {
    let n_clauses = rng.gen_range(0..=max_clauses);
    (0..n_clauses)
        .map(|_| {
            let mut vars: Vec<i64> = (1..=n_vars).collect();
            let mut clause = Vec::new();
            let k = lits.min(vars.len());
            for _ in 0..k {
                let idx = rng.gen_range(0..vars.len());
                let v = vars.remove(idx);
                clause.push(if rng.gen_bool(0.5) { v } else { -v });
            }
            clause
        })
        .collect()
}

/// Every CNF with at most 3 clauses from the full two-variable clause
/// universe (tautologies included) against the truth table. Returns the case
/// count.
pub fn sat_exhaustive_two_vars() -> usize {
    let lits = [1i64, -1, 2, -2];
    let mut universe: Vec<Vec<i64>> = Vec::new();
    for mask in 1u8..16 {
        let clause: Vec<i64> = lits
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, l)| *l)
            .collect();
        universe.push(clause);
    }
    let mut cases = 0usize;
    for a in 0..universe.len() {
        let cnf = vec![universe[a].clone()];
        assert_eq!(run_sat(2, &cnf), truth_table_sat(2, &cnf), "{cnf:?}");
        cases += 1;
        for b in a..universe.len() {
            let cnf = vec![universe[a].clone(), universe[b].clone()];
            assert_eq!(run_sat(2, &cnf), truth_table_sat(2, &cnf), "{cnf:?}");
            cases += 1;
            for c in b..universe.len() {
                let cnf = vec![
                    universe[a].clone(),
                    universe[b].clone(),
                    universe[c].clone(),
                ];
                assert_eq!(run_sat(2, &cnf), truth_table_sat(2, &cnf), "{cnf:?}");
                cases += 1;
            }
        }
    }
    cases
}

/// Random CNFs within the given bounds against the truth table.
pub fn sat_random_sweep(seed: u64, count: usize, max_vars: i64, max_clauses: usize, lits: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let n_vars = rng.gen_range(1..=max_vars);
        let cnf = random_cnf(&mut rng, n_vars, max_clauses, lits);
        assert_eq!(
            run_sat(n_vars, &cnf),
            truth_table_sat(n_vars, &cnf),
            "case {i}: {n_vars} vars, {cnf:?}"
        );
    }
}
