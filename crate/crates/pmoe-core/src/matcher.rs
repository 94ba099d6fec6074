//! The matcher abstraction and the built-in matcher algebra.
//!
//! A matcher knows how to decompose a target for the value, constructor, and
//! tuple patterns it understands; the engine handles every other pattern kind
//! before a matcher is ever consulted. Decomposition returns a lazy list of
//! branches, each branch a finite list of next matching atoms; the branch
//! list itself may be infinite (join splits of an infinite collection).
//!
//! Collection matchers (`list`, `multiset`, `set`, `sortedList`) are built
//! from matcher clauses: a primitive-pattern pattern dispatching on pattern
//! shape, next matchers for the captured subpatterns, and a next-target
//! function producing the decompositions.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::pattern::{ppp_match, Pat, Pattern, PpSlot, PrimPatPat};
use crate::value::{value_equal, Bindings, Coll, Value, DEFAULT_EQUALITY_FUEL};

/// One unit of matching work: match `pattern` against `target` under
/// `matcher`.
#[derive(Clone)]
pub struct MatchingAtom {
    pub pattern: Pat,
    pub target: Value,
    pub matcher: Matcher,
}

impl MatchingAtom {
    pub fn new(pattern: Pat, target: Value, matcher: Matcher) -> MatchingAtom {
        MatchingAtom {
            pattern,
            target,
            matcher,
        }
    }
}

/// The next matching atoms of one decomposition, in left-to-right subpattern
/// order (the order preserves non-linearity semantics).
pub type Branch = Vec<MatchingAtom>;

pub type BranchIter = Box<dyn Iterator<Item = Result<Branch>> + Send>;

pub trait MatcherImpl: Send + Sync {
    fn name(&self) -> String;

    /// Decomposes `target` by `pattern`. Must be pure and reentrant: the same
    /// matcher participates in many concurrent enumerations.
    fn decompose(&self, pattern: &Pat, target: &Value, env: &Bindings) -> Result<BranchIter>;
}

#[derive(Clone)]
pub struct Matcher {
    imp: Arc<dyn MatcherImpl>,
}

impl Matcher {
    pub fn from_impl(imp: impl MatcherImpl + 'static) -> Matcher {
        Matcher { imp: Arc::new(imp) }
    }

    pub fn name(&self) -> String {
        self.imp.name()
    }

    pub fn decompose(&self, pattern: &Pat, target: &Value, env: &Bindings) -> Result<BranchIter> {
        self.imp.decompose(pattern, target, env)
    }

    /// A matcher built on first use; allows recursive matcher definitions
    /// such as trees whose fields mention the tree matcher itself.
    pub fn lazy(
        name: impl AsRef<str>,
        build: impl Fn() -> Matcher + Send + Sync + 'static,
    ) -> Matcher {
        Matcher::from_impl(LazyImpl {
            name: name.as_ref().to_string(),
            built: OnceLock::new(),
            build: Box::new(build),
        })
    }
}

impl std::fmt::Debug for Matcher {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Matcher({})", self.name())
    }
}

struct LazyImpl {
    name: String,
    built: OnceLock<Matcher>,
    build: Box<dyn Fn() -> Matcher + Send + Sync>,
}

impl LazyImpl {
    fn force(&self) -> &Matcher {
        self.built.get_or_init(|| (self.build)())
    }
}

impl MatcherImpl for LazyImpl {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn decompose(&self, pattern: &Pat, target: &Value, env: &Bindings) -> Result<BranchIter> {
        self.force().decompose(pattern, target, env)
    }
}

/// Short description of a pattern for diagnostics.
pub fn pattern_desc(p: &Pat) -> String {
    match &**p {
        Pattern::Wildcard => "wildcard".into(),
        Pattern::Var(n) => format!("pattern variable `${n}`"),
        Pattern::IndexedVar(n, _) => format!("indexed pattern variable `${n}_..`"),
        Pattern::Value(_) => "value pattern".into(),
        Pattern::Pred(_) => "predicate pattern".into(),
        Pattern::And(_) => "and-pattern".into(),
        Pattern::Or(_) => "or-pattern".into(),
        Pattern::Not(_) => "not-pattern".into(),
        Pattern::Tuple(_) => "tuple pattern".into(),
        Pattern::Ctor(name, _) => format!("constructor pattern `{name}`"),
        Pattern::Loop { .. } => "loop pattern".into(),
        Pattern::Ellipsis => "ellipsis".into(),
        Pattern::Seq(_) => "sequential pattern".into(),
        Pattern::LaterVar => "later pattern variable".into(),
        Pattern::Let { .. } => "let pattern".into(),
    }
}

fn unsupported(matcher: &str, p: &Pat) -> Error {
    Error::PatternUnsupported {
        matcher: matcher.to_string(),
        pattern: pattern_desc(p),
    }
}

fn wrap_name(name: &str) -> String {
    if name.contains(' ') && !name.starts_with('(') {
        format!("({name})")
    } else {
        name.to_string()
    }
}

// ---------------------------------------------------------------------------
// Clause-based matchers
// ---------------------------------------------------------------------------

/// Lazily produces a matcher; lets clause lists mention the matcher being
/// defined without recursing at construction time.
pub type MatcherThunk = Arc<dyn Fn() -> Matcher + Send + Sync>;

pub fn thunk(m: Matcher) -> MatcherThunk {
    Arc::new(move || m.clone())
}

pub type TupleIter = Box<dyn Iterator<Item = Result<Vec<Value>>> + Send>;

pub type NextTargetsFn =
    Arc<dyn Fn(&Value, &BTreeMap<Arc<str>, Value>) -> Result<TupleIter> + Send + Sync>;

/// One matcher clause: a primitive-pattern pattern, the next matchers for its
/// holes, and a next-target function from target (plus captured value-pattern
/// results) to decomposition tuples.
pub struct MatcherClause {
    pub ppp: PrimPatPat,
    pub next_matchers: Vec<MatcherThunk>,
    pub next_targets: NextTargetsFn,
}

impl MatcherClause {
    pub fn new(
        ppp: PrimPatPat,
        next_matchers: Vec<MatcherThunk>,
        next_targets: impl Fn(&Value, &BTreeMap<Arc<str>, Value>) -> Result<TupleIter>
            + Send
            + Sync
            + 'static,
    ) -> MatcherClause {
        MatcherClause {
            ppp,
            next_matchers,
            next_targets: Arc::new(next_targets),
        }
    }
}

struct ClauseMatcherImpl {
    name: String,
    clauses: Vec<MatcherClause>,
}

/// Builds a matcher from ordered clauses. Decomposition uses the textually
/// first clause whose primitive-pattern pattern matches; captured value-hole
/// expressions are evaluated under the current environment before the
/// next-target function runs.
pub fn clause_matcher(clauses: Vec<MatcherClause>, name: impl AsRef<str>) -> Matcher {
    Matcher::from_impl(ClauseMatcherImpl {
        name: name.as_ref().to_string(),
        clauses,
    })
}

impl MatcherImpl for ClauseMatcherImpl {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn decompose(&self, pattern: &Pat, target: &Value, env: &Bindings) -> Result<BranchIter> {
        for clause in &self.clauses {
            let Some(caps) = ppp_match(&clause.ppp, pattern) else {
                continue;
            };
            if caps.holes.len() != clause.next_matchers.len() {
                return Err(Error::ArityMismatch {
                    context: "matcher clause holes",
                    expected: clause.next_matchers.len(),
                    got: caps.holes.len(),
                });
            }
            let mut captured = BTreeMap::new();
            for (name, expr) in &caps.values {
                captured.insert(name.clone(), crate::value::eval_expr(expr, env)?);
            }
            let matchers: Vec<Matcher> = clause.next_matchers.iter().map(|t| t()).collect();
            let holes = caps.holes;
            let arity = holes.len();
            let tuples = (clause.next_targets)(target, &captured)?;
            return Ok(Box::new(tuples.map(move |tuple| {
                let tuple = tuple?;
                if tuple.len() != arity {
                    return Err(Error::ArityMismatch {
                        context: "matcher clause next targets",
                        expected: arity,
                        got: tuple.len(),
                    });
                }
                Ok(holes
                    .iter()
                    .zip(tuple)
                    .zip(matchers.iter())
                    .map(|((p, v), m)| MatchingAtom::new(p.clone(), v, m.clone()))
                    .collect())
            })));
        }
        Err(unsupported(&self.name, pattern))
    }
}

// ---------------------------------------------------------------------------
// something / eq
// ---------------------------------------------------------------------------

struct SomethingImpl;

impl MatcherImpl for SomethingImpl {
    fn name(&self) -> String {
        "something".into()
    }

    fn decompose(&self, pattern: &Pat, _target: &Value, _env: &Bindings) -> Result<BranchIter> {
        // The engine consumes variables and wildcards itself, so anything
        // delegated here is outside this matcher's vocabulary.
        Err(unsupported("something", pattern))
    }
}

pub fn something() -> Matcher {
    Matcher::from_impl(SomethingImpl)
}

struct EqImpl {
    name: &'static str,
}

impl MatcherImpl for EqImpl {
    fn name(&self) -> String {
        self.name.into()
    }

    fn decompose(&self, pattern: &Pat, target: &Value, env: &Bindings) -> Result<BranchIter> {
        match &**pattern {
            Pattern::Value(e) => {
                let v = crate::value::eval_expr(e, env)?;
                let branches: Vec<Result<Branch>> = if value_equal(&v, target)? {
                    vec![Ok(Vec::new())]
                } else {
                    Vec::new()
                };
                Ok(Box::new(branches.into_iter()))
            }
            _ => Err(unsupported(self.name, pattern)),
        }
    }
}

/// Equality matcher: a value pattern matches when the evaluated expression
/// structurally equals the target.
pub fn eq() -> Matcher {
    Matcher::from_impl(EqImpl { name: "eq" })
}

/// Same behavior as `eq`; the name aids diagnostics and matcher expressions.
pub fn integer() -> Matcher {
    Matcher::from_impl(EqImpl { name: "integer" })
}

/// Same behavior as `eq`; the name aids diagnostics and matcher expressions.
pub fn string() -> Matcher {
    Matcher::from_impl(EqImpl { name: "string" })
}

// ---------------------------------------------------------------------------
// Shared clause builders for collection matchers
// ---------------------------------------------------------------------------

fn coll_of(v: &Value) -> Result<Coll> {
    Ok(v.as_coll()?.clone())
}

fn nil_clause() -> MatcherClause {
    MatcherClause::new(PrimPatPat::Nil, vec![], |t, _| {
        let c = coll_of(t)?;
        let tuples: Vec<Result<Vec<Value>>> = if c.is_empty()? {
            vec![Ok(vec![])]
        } else {
            vec![]
        };
        Ok(Box::new(tuples.into_iter()))
    })
}

fn cons_ppp() -> PrimPatPat {
    PrimPatPat::ctor("cons", vec![PpSlot::Hole, PpSlot::Hole])
}

fn join_ppp() -> PrimPatPat {
    PrimPatPat::ctor("join", vec![PpSlot::Hole, PpSlot::Hole])
}

/// All splits of a collection into (prefix, suffix), shortest prefix first;
/// lazy, so infinite targets still stream their splits.
fn join_splits(c: Coll) -> TupleIter {
    let mut prefix: Vec<Value> = Vec::new();
    let mut k: usize = 0;
    let mut done = false;
    Box::new(std::iter::from_fn(move || {
        if done {
            return None;
        }
        if k == 0 {
            k = 1;
            return Some(Ok(vec![Value::Coll(Coll::empty()), Value::Coll(c.clone())]));
        }
        match c.get(k - 1) {
            Ok(Some(v)) => {
                prefix.push(v);
                let split = vec![Value::coll(prefix.clone()), Value::Coll(c.drop_front(k))];
                k += 1;
                Some(Ok(split))
            }
            Ok(None) => {
                done = true;
                None
            }
            Err(e) => {
                done = true;
                Some(Err(e))
            }
        }
    }))
}

/// Element-wise, order-sensitive equality where each element pair is compared
/// under the element matcher's value-pattern semantics.
fn list_value_eq(elem: &Matcher, val: &Value, tgt: &Value) -> Result<bool> {
    let vc = coll_of(val)?;
    let tc = coll_of(tgt)?;
    let mut i = 0usize;
    loop {
        if i as u64 >= DEFAULT_EQUALITY_FUEL {
            return Err(Error::FuelExhausted("collection value pattern"));
        }
        match (vc.get(i)?, tc.get(i)?) {
            (None, None) => return Ok(true),
            (Some(v), Some(t)) => {
                if !crate::engine::value_matches(elem, &v, &t)? {
                    return Ok(false);
                }
            }
            _ => return Ok(false),
        }
        i += 1;
    }
}

fn value_clause_from(
    check: impl Fn(&Value, &Value) -> Result<bool> + Send + Sync + 'static,
) -> MatcherClause {
    MatcherClause::new(PrimPatPat::value_hole("val"), vec![], move |t, captured| {
        let val = captured
            .get("val")
            .expect("value clause always captures `val`");
        let tuples: Vec<Result<Vec<Value>>> = if check(val, t)? {
            vec![Ok(vec![])]
        } else {
            vec![]
        };
        Ok(Box::new(tuples.into_iter()))
    })
}

// ---------------------------------------------------------------------------
// list
// ---------------------------------------------------------------------------

/// The list matcher: cons takes the head, join enumerates splits shortest
/// prefix first, and value patterns compare element-wise in order.
pub fn list(elem: Matcher) -> Matcher {
    let name = format!("list {}", wrap_name(&elem.name()));
    let self_thunk: MatcherThunk = {
        let elem = elem.clone();
        Arc::new(move || list(elem.clone()))
    };
    let cons_clause = MatcherClause::new(
        cons_ppp(),
        vec![thunk(elem.clone()), self_thunk.clone()],
        |t, _| {
            let c = coll_of(t)?;
            let tuples: Vec<Result<Vec<Value>>> = match c.first()? {
                Some(h) => vec![Ok(vec![h, Value::Coll(c.drop_front(1))])],
                None => vec![],
            };
            Ok(Box::new(tuples.into_iter()))
        },
    );
    let join_clause = MatcherClause::new(
        join_ppp(),
        vec![self_thunk.clone(), self_thunk.clone()],
        |t, _| Ok(join_splits(coll_of(t)?)),
    );
    let value_elem = elem.clone();
    let value_clause = value_clause_from(move |val, tgt| list_value_eq(&value_elem, val, tgt));
    clause_matcher(
        vec![nil_clause(), cons_clause, join_clause, value_clause],
        name,
    )
}

// ---------------------------------------------------------------------------
// multiset
// ---------------------------------------------------------------------------

thread_local! {
    static VALUE_EQ_DEPTH: Cell<usize> = const { Cell::new(0) };
}

const MAX_VALUE_EQ_DEPTH: usize = 2_000;

struct DepthGuard;

impl DepthGuard {
    fn enter() -> Result<DepthGuard> {
        VALUE_EQ_DEPTH.with(|d| {
            if d.get() >= MAX_VALUE_EQ_DEPTH {
                Err(Error::FuelExhausted("multiset value pattern recursion"))
            } else {
                d.set(d.get() + 1);
                Ok(DepthGuard)
            }
        })
    }
}

impl Drop for DepthGuard {
    fn drop(&mut self) {
        VALUE_EQ_DEPTH.with(|d| d.set(d.get() - 1));
    }
}

/// Multiset equality by the recursive decomposition: both empty succeeds;
/// otherwise take the head of the value side and require the target to
/// contain it, then compare the remainders as multisets.
fn multiset_value_eq(elem: &Matcher, val: &Value, tgt: &Value) -> Result<bool> {
    use crate::pattern::{cons, nil, pvar, tuple_p, vpat, wildcard};
    use crate::value::Expr;

    let _guard = DepthGuard::enter()?;
    coll_of(val)?;
    coll_of(tgt)?;
    let pair = Value::tuple(vec![val.clone(), tgt.clone()]);
    let m = tuple(vec![list(elem.clone()), multiset(elem.clone())]);
    let clauses = vec![
        crate::engine::clause(tuple_p(vec![nil(), nil()]), Expr::Lit(Value::Bool(true))),
        crate::engine::clause(
            tuple_p(vec![
                cons(pvar("x"), pvar("xs")),
                cons(vpat(Expr::var("x")), vpat(Expr::var("xs"))),
            ]),
            Expr::Lit(Value::Bool(true)),
        ),
        crate::engine::clause(
            tuple_p(vec![wildcard(), wildcard()]),
            Expr::Lit(Value::Bool(false)),
        ),
    ];
    crate::engine::match_first(&pair, &m, clauses)?.as_bool()
}

/// The multiset matcher: cons picks every element (in position order) with
/// the rest of the collection, ignoring order; value patterns are multiset
/// equality.
pub fn multiset(elem: Matcher) -> Matcher {
    let name = format!("multiset {}", wrap_name(&elem.name()));
    let self_thunk: MatcherThunk = {
        let elem = elem.clone();
        Arc::new(move || multiset(elem.clone()))
    };
    let cons_clause =
        MatcherClause::new(cons_ppp(), vec![thunk(elem.clone()), self_thunk], |t, _| {
            let c = coll_of(t)?;
            let mut prefix: Vec<Value> = Vec::new();
            let mut i = 0usize;
            let mut failed = false;
            Ok(Box::new(std::iter::from_fn(move || {
                if failed {
                    return None;
                }
                match c.get(i) {
                    Ok(Some(v)) => {
                        let rest =
                            Coll::concat(Coll::from_values(prefix.clone()), c.drop_front(i + 1));
                        prefix.push(v.clone());
                        i += 1;
                        Some(Ok(vec![v, Value::Coll(rest)]))
                    }
                    Ok(None) => None,
                    Err(e) => {
                        failed = true;
                        Some(Err(e))
                    }
                }
            })))
        });
    let value_elem = elem.clone();
    let value_clause = value_clause_from(move |val, tgt| multiset_value_eq(&value_elem, val, tgt));
    clause_matcher(vec![nil_clause(), cons_clause, value_clause], name)
}

// ---------------------------------------------------------------------------
// set
// ---------------------------------------------------------------------------

/// Mutual membership: every element of each side occurs somewhere in the
/// other, under the element matcher's equality. Finite targets only.
fn set_value_eq(elem: &Matcher, val: &Value, tgt: &Value) -> Result<bool> {
    let budget = DEFAULT_EQUALITY_FUEL as usize;
    let vs = coll_of(val)?.to_vec_budget(budget, "set value pattern")?;
    let ts = coll_of(tgt)?.to_vec_budget(budget, "set value pattern")?;
    for v in &vs {
        let mut found = false;
        for t in &ts {
            if crate::engine::value_matches(elem, v, t)? {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    for t in &ts {
        let mut found = false;
        for v in &vs {
            if crate::engine::value_matches(elem, v, t)? {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The set matcher: cons picks every element while keeping the whole
/// collection as the rest (a set behaves as if it held infinitely many
/// copies of each element).
pub fn set(elem: Matcher) -> Matcher {
    let name = format!("set {}", wrap_name(&elem.name()));
    let self_thunk: MatcherThunk = {
        let elem = elem.clone();
        Arc::new(move || set(elem.clone()))
    };
    let cons_clause =
        MatcherClause::new(cons_ppp(), vec![thunk(elem.clone()), self_thunk], |t, _| {
            let c = coll_of(t)?;
            let whole = t.clone();
            let mut i = 0usize;
            let mut failed = false;
            Ok(Box::new(std::iter::from_fn(move || {
                if failed {
                    return None;
                }
                match c.get(i) {
                    Ok(Some(v)) => {
                        i += 1;
                        Some(Ok(vec![v, whole.clone()]))
                    }
                    Ok(None) => None,
                    Err(e) => {
                        failed = true;
                        Some(Err(e))
                    }
                }
            })))
        });
    let value_elem = elem.clone();
    let value_clause = value_clause_from(move |val, tgt| set_value_eq(&value_elem, val, tgt));
    clause_matcher(vec![nil_clause(), cons_clause, value_clause], name)
}

// ---------------------------------------------------------------------------
// sortedList
// ---------------------------------------------------------------------------

/// The sorted-list matcher: the list matcher plus one specialized clause for
/// `_ ++ #px : _` shapes. The specialized clause scans for the value in one
/// pass instead of enumerating every split; sortedness of the target is a
/// caller obligation and is not checked.
pub fn sorted_list(elem: Matcher) -> Matcher {
    let name = format!("sortedList {}", wrap_name(&elem.name()));
    let self_thunk: MatcherThunk = {
        let elem = elem.clone();
        Arc::new(move || sorted_list(elem.clone()))
    };
    let specialized_ppp = PrimPatPat::ctor(
        "join",
        vec![
            PpSlot::Hole,
            PpSlot::Nested(PrimPatPat::ctor(
                "cons",
                vec![PpSlot::value_hole("px"), PpSlot::Hole],
            )),
        ],
    );
    let specialized = MatcherClause::new(
        specialized_ppp,
        vec![self_thunk.clone(), self_thunk.clone()],
        |t, captured| {
            let px = captured
                .get("px")
                .expect("specialized clause always captures `px`")
                .as_int()?;
            let c = coll_of(t)?;
            let mut prefix: Vec<Value> = Vec::new();
            let mut k = 0usize;
            let tuples: Vec<Result<Vec<Value>>> = loop {
                match c.get(k)? {
                    Some(v) => {
                        let n = v.as_int()?;
                        if n < px {
                            prefix.push(v);
                            k += 1;
                        } else if n == px {
                            break vec![Ok(vec![
                                Value::coll(prefix),
                                Value::Coll(c.drop_front(k + 1)),
                            ])];
                        } else {
                            break vec![];
                        }
                    }
                    None => break vec![],
                }
            };
            Ok(Box::new(tuples.into_iter()))
        },
    );
    let cons_clause = MatcherClause::new(
        cons_ppp(),
        vec![thunk(elem.clone()), self_thunk.clone()],
        |t, _| {
            let c = coll_of(t)?;
            let tuples: Vec<Result<Vec<Value>>> = match c.first()? {
                Some(h) => vec![Ok(vec![h, Value::Coll(c.drop_front(1))])],
                None => vec![],
            };
            Ok(Box::new(tuples.into_iter()))
        },
    );
    let join_clause = MatcherClause::new(
        join_ppp(),
        vec![self_thunk.clone(), self_thunk.clone()],
        |t, _| Ok(join_splits(coll_of(t)?)),
    );
    let value_elem = elem.clone();
    let value_clause = value_clause_from(move |val, tgt| list_value_eq(&value_elem, val, tgt));
    clause_matcher(
        vec![
            specialized,
            nil_clause(),
            cons_clause,
            join_clause,
            value_clause,
        ],
        name,
    )
}

// ---------------------------------------------------------------------------
// tuple
// ---------------------------------------------------------------------------

struct TupleImpl {
    matchers: Vec<Matcher>,
}

impl MatcherImpl for TupleImpl {
    fn name(&self) -> String {
        let parts: Vec<String> = self.matchers.iter().map(|m| m.name()).collect();
        format!("({})", parts.join(", "))
    }

    fn decompose(&self, pattern: &Pat, target: &Value, env: &Bindings) -> Result<BranchIter> {
        let ts = target.as_tuple()?;
        if ts.len() != self.matchers.len() {
            return Err(Error::ArityMismatch {
                context: "tuple target",
                expected: self.matchers.len(),
                got: ts.len(),
            });
        }
        match &**pattern {
            Pattern::Tuple(ps) => {
                if ps.len() != self.matchers.len() {
                    return Err(Error::ArityMismatch {
                        context: "tuple pattern",
                        expected: self.matchers.len(),
                        got: ps.len(),
                    });
                }
                let branch: Branch = ps
                    .iter()
                    .zip(ts.iter())
                    .zip(self.matchers.iter())
                    .map(|((p, t), m)| MatchingAtom::new(p.clone(), t.clone(), m.clone()))
                    .collect();
                Ok(Box::new(std::iter::once(Ok(branch))))
            }
            Pattern::Value(e) => {
                let v = crate::value::eval_expr(e, env)?;
                let vs = v.as_tuple()?;
                if vs.len() != self.matchers.len() {
                    return Err(Error::ArityMismatch {
                        context: "tuple value pattern",
                        expected: self.matchers.len(),
                        got: vs.len(),
                    });
                }
                let branch: Branch = vs
                    .iter()
                    .zip(ts.iter())
                    .zip(self.matchers.iter())
                    .map(|((v, t), m)| {
                        MatchingAtom::new(
                            crate::pattern::vpat(crate::value::Expr::Lit(v.clone())),
                            t.clone(),
                            m.clone(),
                        )
                    })
                    .collect();
                Ok(Box::new(std::iter::once(Ok(branch))))
            }
            _ => Err(unsupported(&self.name(), pattern)),
        }
    }
}

/// A matcher for tuples from a tuple of component matchers.
pub fn tuple(matchers: Vec<Matcher>) -> Matcher {
    Matcher::from_impl(TupleImpl { matchers })
}

// ---------------------------------------------------------------------------
// algebraic data matchers
// ---------------------------------------------------------------------------

struct AlgebraicImpl {
    name: String,
    ctors: Vec<(Arc<str>, Vec<MatcherThunk>)>,
}

impl AlgebraicImpl {
    fn fields_of(&self, ctor: &str) -> Option<&[MatcherThunk]> {
        self.ctors
            .iter()
            .find(|(n, _)| &**n == ctor)
            .map(|(_, fs)| fs.as_slice())
    }
}

impl MatcherImpl for AlgebraicImpl {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn decompose(&self, pattern: &Pat, target: &Value, env: &Bindings) -> Result<BranchIter> {
        match &**pattern {
            Pattern::Ctor(pname, args) => {
                let fields = self.fields_of(pname).ok_or_else(|| {
                    Error::UnknownConstructor(pname.to_string(), self.name.clone())
                })?;
                let (tname, targs) = match target {
                    Value::Term(n, a) => (n.clone(), a.clone()),
                    other => {
                        return Err(Error::TypeMismatch {
                            expected: "term",
                            got: other.kind().to_string(),
                        })
                    }
                };
                // Constructor or arity disagreement is a failed match.
                if &tname != pname || targs.len() != fields.len() || args.len() != fields.len() {
                    return Ok(Box::new(std::iter::empty()));
                }
                let branch: Branch = args
                    .iter()
                    .zip(targs.iter())
                    .zip(fields.iter())
                    .map(|((p, t), f)| MatchingAtom::new(p.clone(), t.clone(), f()))
                    .collect();
                Ok(Box::new(std::iter::once(Ok(branch))))
            }
            Pattern::Value(e) => {
                let v = crate::value::eval_expr(e, env)?;
                let (vname, vargs) = match &v {
                    Value::Term(n, a) => (n.clone(), a.clone()),
                    other => {
                        return Err(Error::TypeMismatch {
                            expected: "term",
                            got: other.kind().to_string(),
                        })
                    }
                };
                let fields = self.fields_of(&vname).ok_or_else(|| {
                    Error::UnknownConstructor(vname.to_string(), self.name.clone())
                })?;
                let (tname, targs) = match target {
                    Value::Term(n, a) => (n.clone(), a.clone()),
                    other => {
                        return Err(Error::TypeMismatch {
                            expected: "term",
                            got: other.kind().to_string(),
                        })
                    }
                };
                if tname != vname || targs.len() != fields.len() || vargs.len() != fields.len() {
                    return Ok(Box::new(std::iter::empty()));
                }
                let branch: Branch = vargs
                    .iter()
                    .zip(targs.iter())
                    .zip(fields.iter())
                    .map(|((v, t), f)| {
                        MatchingAtom::new(
                            crate::pattern::vpat(crate::value::Expr::Lit(v.clone())),
                            t.clone(),
                            f(),
                        )
                    })
                    .collect();
                Ok(Box::new(std::iter::once(Ok(branch))))
            }
            _ => Err(unsupported(&self.name, pattern)),
        }
    }
}

/// A matcher for an algebraic data type: each constructor name maps to the
/// matchers of its fields. Field matchers are thunks so the data type may be
/// recursive.
pub fn algebraic(ctors: Vec<(&str, Vec<MatcherThunk>)>, name: impl AsRef<str>) -> Matcher {
    Matcher::from_impl(AlgebraicImpl {
        name: name.as_ref().to_string(),
        ctors: ctors
            .into_iter()
            .map(|(n, fs)| (Arc::from(n), fs))
            .collect(),
    })
}
