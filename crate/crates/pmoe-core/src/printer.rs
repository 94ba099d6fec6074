//! Canonical result printing: tuples as `(a, b)`, collections as `[a, b]`,
//! terms as `Name a b`. Printing forces collections, so a budget bounds the
//! total number of printed atoms.

use crate::error::{Error, Result};
use crate::value::Value;

const DEFAULT_PRINT_BUDGET: usize = 100_000;

pub fn print_value(v: &Value) -> Result<String> {
    print_value_budget(v, DEFAULT_PRINT_BUDGET)
}

pub fn print_value_budget(v: &Value, budget: usize) -> Result<String> {
    let mut out = String::new();
    let mut fuel = budget;
    write_value(&mut out, v, false, &mut fuel)?;
    Ok(out)
}

fn spend(fuel: &mut usize) -> Result<()> {
    if *fuel == 0 {
        return Err(Error::FuelExhausted("printing"));
    }
    *fuel -= 1;
    Ok(())
}

fn write_value(out: &mut String, v: &Value, atom_pos: bool, fuel: &mut usize) -> Result<()> {
    spend(fuel)?;
    match v {
        Value::Int(i) => out.push_str(&i.to_string()),
        Value::Bool(true) => out.push_str("True"),
        Value::Bool(false) => out.push_str("False"),
        Value::Str(s) => {
            out.push('"');
            for c in s.chars() {
                match c {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    _ => out.push(c),
                }
            }
            out.push('"');
        }
        Value::Tuple(vs) => {
            out.push('(');
            for (i, x) in vs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(out, x, false, fuel)?;
            }
            out.push(')');
        }
        Value::Coll(c) => {
            out.push('[');
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(out, &x?, false, fuel)?;
            }
            out.push(']');
        }
        Value::Term(name, args) => {
            let need_parens = atom_pos && !args.is_empty();
            if need_parens {
                out.push('(');
            }
            out.push_str(name);
            for a in args.iter() {
                out.push(' ');
                write_value(out, a, true, fuel)?;
            }
            if need_parens {
                out.push(')');
            }
        }
        Value::Closure(_) => out.push_str("<closure>"),
        Value::Native(_) => out.push_str("<function>"),
    }
    Ok(())
}
