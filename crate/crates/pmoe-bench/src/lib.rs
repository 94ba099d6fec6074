//! Shared inputs for the engine benchmarks; see `benches/engine.rs`.

use pmoe_core::demos::sat;
use pmoe_core::value::Value;

/// A five-variable formula that exercises every Davis-Putnam rule.
pub fn bench_cnf() -> (Value, Value) {
    let vars = sat::vars_value(&[1, 2, 3, 4, 5]);
    let cnf = sat::cnf_value(&[
        &[1, 2, -3],
        &[-1, 3, 4],
        &[2, -4, 5],
        &[-2, -5, 1],
        &[3, -1, -5],
        &[-3, 4, 2],
    ]);
    (vars, cnf)
}
