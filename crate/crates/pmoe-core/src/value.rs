//! Universal runtime values, persistent variable environments, and the small
//! expression language evaluated inside value patterns, predicate patterns,
//! loop ranges, and match-clause bodies.
//!
//! Collections are lazy and memoizing: a `Coll` may be infinite, and every
//! element is computed at most once no matter how many match branches re-scan
//! the same target.

use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};

/// Default element budget for structural equality (`value_equal`).
pub const DEFAULT_EQUALITY_FUEL: u64 = 1_000_000;

/// A host function embedded in an expression; computes a value from the
/// current environment.
pub type HostFn = Arc<dyn Fn(&Bindings) -> Result<Value> + Send + Sync>;

/// A host function usable as a first-class value (predicates, map bodies).
pub type NativeFn = Arc<dyn Fn(Value) -> Result<Value> + Send + Sync>;

// ---------------------------------------------------------------------------
// Value
// ---------------------------------------------------------------------------

/// A runtime value. `Coll` is lazy and possibly infinite; everything else is
/// finite. Closures appear only through predicate patterns and clause bodies,
/// never as match targets.
#[derive(Clone)]
pub enum Value {
    Int(i64),
    Str(Arc<str>),
    Bool(bool),
    Tuple(Arc<[Value]>),
    Coll(Coll),
    Term(Arc<str>, Arc<[Value]>),
    Closure(Closure),
    Native(NativeFn),
}

/// A lambda closed over its defining environment.
#[derive(Clone)]
pub struct Closure {
    pub param: Arc<str>,
    pub body: Arc<Expr>,
    pub env: Bindings,
}

impl Value {
    pub fn int(i: i64) -> Value {
        Value::Int(i)
    }

    pub fn str(s: impl AsRef<str>) -> Value {
        Value::Str(Arc::from(s.as_ref()))
    }

    pub fn tuple(vs: Vec<Value>) -> Value {
        Value::Tuple(vs.into())
    }

    pub fn unit() -> Value {
        Value::Tuple(Arc::from(Vec::new()))
    }

    pub fn term(name: impl AsRef<str>, args: Vec<Value>) -> Value {
        Value::Term(Arc::from(name.as_ref()), args.into())
    }

    pub fn coll(vs: Vec<Value>) -> Value {
        Value::Coll(Coll::from_values(vs))
    }

    pub fn ints(is: impl IntoIterator<Item = i64>) -> Value {
        Value::coll(is.into_iter().map(Value::Int).collect())
    }

    pub fn native(f: impl Fn(Value) -> Result<Value> + Send + Sync + 'static) -> Value {
        Value::Native(Arc::new(f))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Value::Int(_) => "integer",
            Value::Str(_) => "string",
            Value::Bool(_) => "boolean",
            Value::Tuple(_) => "tuple",
            Value::Coll(_) => "collection",
            Value::Term(..) => "term",
            Value::Closure(_) => "closure",
            Value::Native(_) => "function",
        }
    }

    pub fn as_int(&self) -> Result<i64> {
        match self {
            Value::Int(i) => Ok(*i),
            other => Err(Error::TypeMismatch {
                expected: "integer",
                got: other.kind().to_string(),
            }),
        }
    }

    pub fn as_bool(&self) -> Result<bool> {
        match self {
            Value::Bool(b) => Ok(*b),
            other => Err(Error::TypeMismatch {
                expected: "boolean",
                got: other.kind().to_string(),
            }),
        }
    }

    pub fn as_str(&self) -> Result<&str> {
        match self {
            Value::Str(s) => Ok(s),
            other => Err(Error::TypeMismatch {
                expected: "string",
                got: other.kind().to_string(),
            }),
        }
    }

    pub fn as_coll(&self) -> Result<&Coll> {
        match self {
            Value::Coll(c) => Ok(c),
            other => Err(Error::TypeMismatch {
                expected: "collection",
                got: other.kind().to_string(),
            }),
        }
    }

    pub fn as_tuple(&self) -> Result<&[Value]> {
        match self {
            Value::Tuple(vs) => Ok(vs),
            other => Err(Error::TypeMismatch {
                expected: "tuple",
                got: other.kind().to_string(),
            }),
        }
    }

    /// Applies a closure or native function to one argument.
    pub fn apply(&self, arg: Value) -> Result<Value> {
        match self {
            Value::Closure(c) => {
                let env = c.env.bind_scalar(&c.param, arg)?;
                eval_expr(&c.body, &env)
            }
            Value::Native(f) => f(arg),
            _ => Err(Error::NotAFunction),
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "Int({i})"),
            Value::Str(s) => write!(f, "Str({s:?})"),
            Value::Bool(b) => write!(f, "Bool({b})"),
            Value::Tuple(vs) => f.debug_tuple("Tuple").field(vs).finish(),
            Value::Coll(_) => write!(f, "Coll(..)"),
            Value::Term(n, args) => f.debug_tuple("Term").field(n).field(args).finish(),
            Value::Closure(_) => write!(f, "Closure(..)"),
            Value::Native(_) => write!(f, "Native(..)"),
        }
    }
}

// ---------------------------------------------------------------------------
// Coll: lazy, memoizing, possibly infinite sequences
// ---------------------------------------------------------------------------

/// A lazy collection value. Cloning is cheap; clones share the memo, so
/// re-reading from the start always yields the same elements in the same
/// order. `drop_front` is O(1) and shares storage with the parent.
#[derive(Clone)]
pub struct Coll {
    seq: Arc<LazySeq>,
    start: usize,
}

struct LazySeq {
    state: Mutex<SeqState>,
}

struct SeqState {
    items: Vec<Value>,
    source: Source,
}

enum Source {
    Done,
    Failed(Error),
    Gen(Box<dyn FnMut() -> Option<Result<Value>> + Send>),
}

impl Coll {
    pub fn from_values(vs: Vec<Value>) -> Coll {
        Coll {
            seq: Arc::new(LazySeq {
                state: Mutex::new(SeqState {
                    items: vs,
                    source: Source::Done,
                }),
            }),
            start: 0,
        }
    }

    pub fn from_iter_lazy<I>(it: I) -> Coll
    where
        I: Iterator<Item = Value> + Send + 'static,
    {
        Coll::from_fallible(it.map(Ok))
    }

    pub fn from_fallible<I>(mut it: I) -> Coll
    where
        I: Iterator<Item = Result<Value>> + Send + 'static,
    {
        Coll {
            seq: Arc::new(LazySeq {
                state: Mutex::new(SeqState {
                    items: Vec::new(),
                    source: Source::Gen(Box::new(move || it.next())),
                }),
            }),
            start: 0,
        }
    }

    pub fn empty() -> Coll {
        Coll::from_values(Vec::new())
    }

    /// Element at index `i` (relative to this view), or `None` past the end.
    pub fn get(&self, i: usize) -> Result<Option<Value>> {
        let mut st = self.seq.state.lock().unwrap();
        let want = self.start + i;
        while st.items.len() <= want {
            match &mut st.source {
                Source::Done => return Ok(None),
                Source::Failed(e) => return Err(e.clone()),
                Source::Gen(g) => match g() {
                    Some(Ok(v)) => st.items.push(v),
                    Some(Err(e)) => {
                        st.source = Source::Failed(e.clone());
                        return Err(e);
                    }
                    None => st.source = Source::Done,
                },
            }
        }
        Ok(Some(st.items[want].clone()))
    }

    pub fn first(&self) -> Result<Option<Value>> {
        self.get(0)
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.first()?.is_none())
    }

    /// O(1) view of this collection without its first `n` elements.
    pub fn drop_front(&self, n: usize) -> Coll {
        Coll {
            seq: Arc::clone(&self.seq),
            start: self.start + n,
        }
    }

    /// True when both views share storage and offset.
    pub fn same_view(&self, other: &Coll) -> bool {
        Arc::ptr_eq(&self.seq, &other.seq) && self.start == other.start
    }

    /// Lazy concatenation.
    pub fn concat(a: Coll, b: Coll) -> Coll {
        Coll::from_fallible(a.iter().chain(b.iter()))
    }

    pub fn iter(&self) -> CollIter {
        CollIter {
            coll: self.clone(),
            next: 0,
        }
    }

    /// Forces the whole collection. Diverges on infinite input; use only when
    /// finiteness is known or enforce a budget with `to_vec_budget`.
    pub fn to_vec(&self) -> Result<Vec<Value>> {
        self.iter().collect()
    }

    /// Forces up to `budget` elements, erroring if the collection is longer.
    pub fn to_vec_budget(&self, budget: usize, what: &'static str) -> Result<Vec<Value>> {
        let mut out = Vec::new();
        for (n, v) in self.iter().enumerate() {
            if n >= budget {
                return Err(Error::FuelExhausted(what));
            }
            out.push(v?);
        }
        Ok(out)
    }

    pub fn take(&self, n: usize) -> Result<Vec<Value>> {
        self.iter().take(n).collect()
    }
}

pub struct CollIter {
    coll: Coll,
    next: usize,
}

impl Iterator for CollIter {
    type Item = Result<Value>;

    fn next(&mut self) -> Option<Result<Value>> {
        match self.coll.get(self.next) {
            Ok(Some(v)) => {
                self.next += 1;
                Some(Ok(v))
            }
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        }
    }
}

/// The naturals `[from..]` as an infinite collection.
pub fn naturals(from: i64) -> Coll {
    Coll::from_iter_lazy((from..).map(Value::Int))
}

// ---------------------------------------------------------------------------
// Bindings: persistent variable environments
// ---------------------------------------------------------------------------

/// A persistent environment. Extension never mutates the original, so match
/// branches share ancestor environments safely. A name is bound either as a
/// scalar or as an integer-keyed map, never both.
#[derive(Clone, Default)]
pub struct Bindings {
    head: Option<Arc<BindNode>>,
}

struct BindNode {
    name: Arc<str>,
    entry: Entry,
    next: Option<Arc<BindNode>>,
}

enum Entry {
    Scalar(Value),
    Indexed(i64, Value),
}

impl Bindings {
    pub fn new() -> Bindings {
        Bindings::default()
    }

    fn push(&self, name: Arc<str>, entry: Entry) -> Bindings {
        Bindings {
            head: Some(Arc::new(BindNode {
                name,
                entry,
                next: self.head.clone(),
            })),
        }
    }

    /// The binding kind currently in effect for `name`, if any.
    fn kind_of(&self, name: &str) -> Option<&'static str> {
        let mut cur = self.head.as_deref();
        while let Some(node) = cur {
            if &*node.name == name {
                return Some(match node.entry {
                    Entry::Scalar(_) => "a scalar",
                    Entry::Indexed(..) => "an indexed map",
                });
            }
            cur = node.next.as_deref();
        }
        None
    }

    pub fn bind_scalar(&self, name: &str, v: Value) -> Result<Bindings> {
        if self.kind_of(name) == Some("an indexed map") {
            return Err(Error::MixedBinding(
                name.to_string(),
                "an indexed map",
                "a scalar",
            ));
        }
        Ok(self.push(Arc::from(name), Entry::Scalar(v)))
    }

    pub fn bind_indexed(&self, name: &str, key: i64, v: Value) -> Result<Bindings> {
        if self.kind_of(name) == Some("a scalar") {
            return Err(Error::MixedBinding(
                name.to_string(),
                "a scalar",
                "an indexed map",
            ));
        }
        Ok(self.push(Arc::from(name), Entry::Indexed(key, v)))
    }

    pub fn lookup_scalar(&self, name: &str) -> Result<Value> {
        let mut cur = self.head.as_deref();
        while let Some(node) = cur {
            if &*node.name == name {
                return match &node.entry {
                    Entry::Scalar(v) => Ok(v.clone()),
                    Entry::Indexed(..) => Err(Error::MixedBinding(
                        name.to_string(),
                        "an indexed map",
                        "a scalar",
                    )),
                };
            }
            cur = node.next.as_deref();
        }
        Err(Error::UnboundVariable(name.to_string()))
    }

    pub fn lookup_indexed(&self, name: &str, key: i64) -> Result<Value> {
        let mut cur = self.head.as_deref();
        let mut seen_name = false;
        while let Some(node) = cur {
            if &*node.name == name {
                match &node.entry {
                    Entry::Scalar(_) => {
                        return Err(Error::MixedBinding(
                            name.to_string(),
                            "a scalar",
                            "an indexed map",
                        ))
                    }
                    Entry::Indexed(k, v) => {
                        seen_name = true;
                        if *k == key {
                            return Ok(v.clone());
                        }
                    }
                }
            }
            cur = node.next.as_deref();
        }
        if seen_name {
            // The map exists but not this key: a soft miss, so a pattern
            // branch probing one key too far simply fails.
            Err(Error::MissingIndexedKey(format!("{name}_{key}")))
        } else {
            Err(Error::UnboundVariable(format!("{name}_{key}")))
        }
    }

    /// All live (key, value) pairs of an indexed name, newest binding per key,
    /// sorted by key.
    pub fn indexed_entries(&self, name: &str) -> Vec<(i64, Value)> {
        let mut out: Vec<(i64, Value)> = Vec::new();
        let mut cur = self.head.as_deref();
        while let Some(node) = cur {
            if &*node.name == name {
                if let Entry::Indexed(k, v) = &node.entry {
                    if !out.iter().any(|(k2, _)| k2 == k) {
                        out.push((*k, v.clone()));
                    }
                }
            }
            cur = node.next.as_deref();
        }
        out.sort_by_key(|(k, _)| *k);
        out
    }

    pub fn is_bound(&self, name: &str) -> bool {
        self.kind_of(name).is_some()
    }
}

impl fmt::Debug for Bindings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut dbg = f.debug_map();
        let mut cur = self.head.as_deref();
        while let Some(node) = cur {
            match &node.entry {
                Entry::Scalar(v) => dbg.entry(&node.name, v),
                Entry::Indexed(k, v) => dbg.entry(&format!("{}_{}", node.name, k), v),
            };
            cur = node.next.as_deref();
        }
        dbg.finish()
    }
}

// ---------------------------------------------------------------------------
// Expr
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Lt,
    Le,
    Gt,
    Ge,
}

/// The expression language of value patterns, predicate patterns, loop
/// ranges, let patterns, and clause bodies. Evaluation is pure.
#[derive(Clone)]
pub enum Expr {
    Lit(Value),
    Var(Arc<str>),
    IndexedVar(Arc<str>, Arc<Expr>),
    Add(Arc<Expr>, Arc<Expr>),
    Sub(Arc<Expr>, Arc<Expr>),
    Mul(Arc<Expr>, Arc<Expr>),
    Neg(Arc<Expr>),
    Abs(Arc<Expr>),
    Cmp(CmpOp, Arc<Expr>, Arc<Expr>),
    TupleE(Vec<Expr>),
    CollE(Vec<Expr>),
    Lambda(Arc<str>, Arc<Expr>),
    Apply(Arc<Expr>, Arc<Expr>),
    /// Opaque host computation; library-only, never produced by the parser.
    HostFn(HostFn),
}

// Constructor shorthands named for the operators they build; they are not
// the std ops traits.
#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn int(i: i64) -> Expr {
        Expr::Lit(Value::Int(i))
    }

    pub fn str(s: impl AsRef<str>) -> Expr {
        Expr::Lit(Value::str(s))
    }

    pub fn var(name: impl AsRef<str>) -> Expr {
        Expr::Var(Arc::from(name.as_ref()))
    }

    pub fn indexed(name: impl AsRef<str>, idx: Expr) -> Expr {
        Expr::IndexedVar(Arc::from(name.as_ref()), Arc::new(idx))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Arc::new(a), Arc::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Arc::new(a), Arc::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Arc::new(a), Arc::new(b))
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Arc::new(a))
    }

    pub fn abs(a: Expr) -> Expr {
        Expr::Abs(Arc::new(a))
    }

    pub fn cmp(op: CmpOp, a: Expr, b: Expr) -> Expr {
        Expr::Cmp(op, Arc::new(a), Arc::new(b))
    }

    pub fn lambda(param: impl AsRef<str>, body: Expr) -> Expr {
        Expr::Lambda(Arc::from(param.as_ref()), Arc::new(body))
    }

    pub fn apply(f: Expr, arg: Expr) -> Expr {
        Expr::Apply(Arc::new(f), Arc::new(arg))
    }

    pub fn host(f: impl Fn(&Bindings) -> Result<Value> + Send + Sync + 'static) -> Expr {
        Expr::HostFn(Arc::new(f))
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Lit(v) => write!(f, "Lit({v:?})"),
            Expr::Var(n) => write!(f, "Var({n})"),
            Expr::IndexedVar(n, i) => write!(f, "IndexedVar({n}, {i:?})"),
            Expr::Add(a, b) => write!(f, "Add({a:?}, {b:?})"),
            Expr::Sub(a, b) => write!(f, "Sub({a:?}, {b:?})"),
            Expr::Mul(a, b) => write!(f, "Mul({a:?}, {b:?})"),
            Expr::Neg(a) => write!(f, "Neg({a:?})"),
            Expr::Abs(a) => write!(f, "Abs({a:?})"),
            Expr::Cmp(op, a, b) => write!(f, "Cmp({op:?}, {a:?}, {b:?})"),
            Expr::TupleE(es) => f.debug_tuple("TupleE").field(es).finish(),
            Expr::CollE(es) => f.debug_tuple("CollE").field(es).finish(),
            Expr::Lambda(p, b) => write!(f, "Lambda({p}, {b:?})"),
            Expr::Apply(g, a) => write!(f, "Apply({g:?}, {a:?})"),
            Expr::HostFn(_) => write!(f, "HostFn(..)"),
        }
    }
}

/// Structural equality for expressions, used by parser round-trip tests.
/// Literals compare only when scalar; host functions never compare equal.
impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        match (self, other) {
            (Expr::Lit(a), Expr::Lit(b)) => match (a, b) {
                (Value::Int(x), Value::Int(y)) => x == y,
                (Value::Str(x), Value::Str(y)) => x == y,
                (Value::Bool(x), Value::Bool(y)) => x == y,
                _ => false,
            },
            (Expr::Var(a), Expr::Var(b)) => a == b,
            (Expr::IndexedVar(a, i), Expr::IndexedVar(b, j)) => a == b && i == j,
            (Expr::Add(a, b), Expr::Add(c, d))
            | (Expr::Sub(a, b), Expr::Sub(c, d))
            | (Expr::Mul(a, b), Expr::Mul(c, d)) => a == c && b == d,
            (Expr::Neg(a), Expr::Neg(b)) | (Expr::Abs(a), Expr::Abs(b)) => a == b,
            (Expr::Cmp(o, a, b), Expr::Cmp(p, c, d)) => o == p && a == c && b == d,
            (Expr::TupleE(a), Expr::TupleE(b)) | (Expr::CollE(a), Expr::CollE(b)) => a == b,
            (Expr::Lambda(p, a), Expr::Lambda(q, b)) => p == q && a == b,
            (Expr::Apply(f, a), Expr::Apply(g, b)) => f == g && a == b,
            _ => false,
        }
    }
}

fn int_of(e: &Expr, env: &Bindings) -> Result<i64> {
    eval_expr(e, env)?.as_int()
}

/// Evaluates an expression under an environment. Referencing a variable that
/// is not yet bound is an error naming the variable; this is how misuse of
/// right-to-left non-linearity surfaces.
pub fn eval_expr(e: &Expr, env: &Bindings) -> Result<Value> {
    match e {
        Expr::Lit(v) => Ok(v.clone()),
        Expr::Var(name) => env.lookup_scalar(name),
        Expr::IndexedVar(name, idx) => {
            let key = int_of(idx, env)?;
            env.lookup_indexed(name, key)
        }
        Expr::Add(a, b) => int_of(a, env)?
            .checked_add(int_of(b, env)?)
            .map(Value::Int)
            .ok_or(Error::Overflow("+")),
        Expr::Sub(a, b) => int_of(a, env)?
            .checked_sub(int_of(b, env)?)
            .map(Value::Int)
            .ok_or(Error::Overflow("-")),
        Expr::Mul(a, b) => int_of(a, env)?
            .checked_mul(int_of(b, env)?)
            .map(Value::Int)
            .ok_or(Error::Overflow("*")),
        Expr::Neg(a) => int_of(a, env)?
            .checked_neg()
            .map(Value::Int)
            .ok_or(Error::Overflow("negate")),
        Expr::Abs(a) => int_of(a, env)?
            .checked_abs()
            .map(Value::Int)
            .ok_or(Error::Overflow("abs")),
        Expr::Cmp(op, a, b) => {
            let va = eval_expr(a, env)?;
            let vb = eval_expr(b, env)?;
            let res = match op {
                CmpOp::Eq => value_equal(&va, &vb)?,
                CmpOp::Lt => va.as_int()? < vb.as_int()?,
                CmpOp::Le => va.as_int()? <= vb.as_int()?,
                CmpOp::Gt => va.as_int()? > vb.as_int()?,
                CmpOp::Ge => va.as_int()? >= vb.as_int()?,
            };
            Ok(Value::Bool(res))
        }
        Expr::TupleE(es) => Ok(Value::tuple(
            es.iter()
                .map(|e| eval_expr(e, env))
                .collect::<Result<_>>()?,
        )),
        Expr::CollE(es) => Ok(Value::coll(
            es.iter()
                .map(|e| eval_expr(e, env))
                .collect::<Result<_>>()?,
        )),
        Expr::Lambda(param, body) => Ok(Value::Closure(Closure {
            param: param.clone(),
            body: body.clone(),
            env: env.clone(),
        })),
        Expr::Apply(f, arg) => {
            let fv = eval_expr(f, env)?;
            let av = eval_expr(arg, env)?;
            fv.apply(av)
        }
        Expr::HostFn(f) => f(env),
    }
}

// ---------------------------------------------------------------------------
// Structural equality
// ---------------------------------------------------------------------------

/// Structural (list-style) equality with the default element budget.
/// Collections compare element-wise in order; the budget turns divergence on
/// infinite collections into a reportable error.
pub fn value_equal(a: &Value, b: &Value) -> Result<bool> {
    let mut fuel = DEFAULT_EQUALITY_FUEL;
    value_equal_fueled(a, b, &mut fuel)
}

pub fn value_equal_fueled(a: &Value, b: &Value, fuel: &mut u64) -> Result<bool> {
    if *fuel == 0 {
        return Err(Error::FuelExhausted("structural equality"));
    }
    *fuel -= 1;
    match (a, b) {
        (Value::Int(x), Value::Int(y)) => Ok(x == y),
        (Value::Str(x), Value::Str(y)) => Ok(x == y),
        (Value::Bool(x), Value::Bool(y)) => Ok(x == y),
        (Value::Tuple(xs), Value::Tuple(ys)) => {
            if xs.len() != ys.len() {
                return Ok(false);
            }
            for (x, y) in xs.iter().zip(ys.iter()) {
                if !value_equal_fueled(x, y, fuel)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (Value::Term(n, xs), Value::Term(m, ys)) => {
            if n != m || xs.len() != ys.len() {
                return Ok(false);
            }
            for (x, y) in xs.iter().zip(ys.iter()) {
                if !value_equal_fueled(x, y, fuel)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (Value::Coll(xs), Value::Coll(ys)) => {
            if xs.same_view(ys) {
                return Ok(true);
            }
            let mut i = 0;
            loop {
                if *fuel == 0 {
                    return Err(Error::FuelExhausted("structural equality"));
                }
                *fuel -= 1;
                match (xs.get(i)?, ys.get(i)?) {
                    (None, None) => return Ok(true),
                    (Some(x), Some(y)) => {
                        if !value_equal_fueled(&x, &y, fuel)? {
                            return Ok(false);
                        }
                    }
                    _ => return Ok(false),
                }
                i += 1;
            }
        }
        (Value::Closure(_) | Value::Native(_), _) | (_, Value::Closure(_) | Value::Native(_)) => {
            Err(Error::NotComparable)
        }
        _ => Ok(false),
    }
}
