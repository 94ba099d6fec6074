//! The reduction machine.
//!
//! A matching state is a stack of matching atoms plus an environment and the
//! pending stages of sequential patterns. One reduction step pops the top
//! atom and produces zero or more successor states; a state with nothing left
//! to do is a success whose environment is one pattern-matching result.
//!
//! Branch lists may be infinitely wide (join splits of an infinite
//! collection), so the search tree is traversed through right-nested binary
//! spines: every agenda node exposes at most a first child and the rest of
//! the spine. Breadth-first traversal over these nodes is fair — every
//! success at finite depth is reached after finitely many pulls — and its
//! emission order is the enumeration contract callers rely on.
//! Depth-first traversal explores each child fully before its siblings.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matcher::{self, Matcher, MatchingAtom};
use crate::pattern::{substitute_ellipsis, validate_pattern, LetBinder, LoopEnd, Pat, Pattern};
use crate::value::{eval_expr, Bindings, Expr, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Bfs,
    Dfs,
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    /// Bound on states expanded by one enumeration (including subsidiary
    /// not-pattern searches); `None` means unbounded.
    pub max_states: Option<u64>,
    /// Bound on states expanded by any single not-pattern sub-search; turns
    /// divergent sub-searches into a reportable error.
    pub not_fuel: u64,
}

impl Default for EngineConfig {
    fn default() -> EngineConfig {
        EngineConfig {
            max_states: None,
            not_fuel: 10_000_000,
        }
    }
}

/// Counters of one enumeration, monotone while it runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub states_expanded: u64,
    pub branches_created: u64,
}

#[derive(Default)]
struct StatsInner {
    states: AtomicU64,
    branches: AtomicU64,
}

impl StatsInner {
    fn snapshot(&self) -> EngineStats {
        EngineStats {
            states_expanded: self.states.load(Ordering::Relaxed),
            branches_created: self.branches.load(Ordering::Relaxed),
        }
    }
}

/// One match clause: a pattern and the body evaluated under each success
/// environment.
#[derive(Clone)]
pub struct MatchClause {
    pub pattern: Pat,
    pub body: Arc<Expr>,
}

pub fn clause(pattern: Pat, body: Expr) -> MatchClause {
    MatchClause {
        pattern,
        body: Arc::new(body),
    }
}

#[derive(Clone)]
struct SeqSegment {
    pending: Pat,
    collected: Vec<(Value, Matcher)>,
}

#[derive(Clone)]
pub struct MatchingState {
    stack: Vec<MatchingAtom>,
    env: Bindings,
    segments: VecDeque<SeqSegment>,
}

impl MatchingState {
    fn root(pattern: Pat, target: Value, matcher: Matcher, env: Bindings) -> MatchingState {
        MatchingState {
            stack: vec![MatchingAtom::new(pattern, target, matcher)],
            env,
            segments: VecDeque::new(),
        }
    }

    fn is_success(&self) -> bool {
        self.stack.is_empty() && self.segments.is_empty()
    }

    /// Pushes a branch's atoms so the leftmost atom is reduced first.
    fn push_atoms(&mut self, atoms: Vec<MatchingAtom>) {
        self.stack.extend(atoms.into_iter().rev());
    }
}

type ChildIter = Box<dyn Iterator<Item = Result<MatchingState>> + Send>;

fn one(state: MatchingState) -> ChildIter {
    Box::new(std::iter::once(Ok(state)))
}

fn none() -> ChildIter {
    Box::new(std::iter::empty())
}

/// One reduction step: pops the top atom (or, when the stack is empty, opens
/// the next sequential stage) and yields the successor states lazily. A
/// missing indexed-map key fails the branch rather than the enumeration.
fn reduce(
    state: MatchingState,
    config: &EngineConfig,
    stats: &Arc<StatsInner>,
) -> Result<ChildIter> {
    match reduce_inner(state, config, stats) {
        Err(Error::MissingIndexedKey(_)) => Ok(none()),
        other => other,
    }
}

fn reduce_inner(
    mut state: MatchingState,
    config: &EngineConfig,
    stats: &Arc<StatsInner>,
) -> Result<ChildIter> {
    let Some(atom) = state.stack.pop() else {
        return reduce_segment(state);
    };
    let MatchingAtom {
        pattern,
        target,
        matcher,
    } = atom;
    match &*pattern {
        Pattern::Wildcard => Ok(one(state)),
        Pattern::Var(name) => {
            state.env = state.env.bind_scalar(name, target)?;
            Ok(one(state))
        }
        Pattern::IndexedVar(name, idx) => {
            let key = eval_expr(idx, &state.env)?.as_int()?;
            state.env = state.env.bind_indexed(name, key, target)?;
            Ok(one(state))
        }
        Pattern::Pred(e) => {
            let pred = eval_expr(e, &state.env)?;
            // Only shape errors become "not a predicate"; errors raised while
            // the predicate body runs keep their own diagnostics.
            let verdict = match pred.apply(target) {
                Ok(v) => v.as_bool().map_err(|_| Error::NotAPredicate)?,
                Err(Error::NotAFunction) => return Err(Error::NotAPredicate),
                Err(e) => return Err(e),
            };
            if verdict {
                Ok(one(state))
            } else {
                Ok(none())
            }
        }
        Pattern::And(ps) => {
            let atoms: Vec<MatchingAtom> = ps
                .iter()
                .map(|p| MatchingAtom::new(p.clone(), target.clone(), matcher.clone()))
                .collect();
            state.push_atoms(atoms);
            Ok(one(state))
        }
        Pattern::Or(ps) => {
            let children: Vec<Result<MatchingState>> = ps
                .iter()
                .map(|p| {
                    let mut child = state.clone();
                    child.push_atoms(vec![MatchingAtom::new(
                        p.clone(),
                        target.clone(),
                        matcher.clone(),
                    )]);
                    Ok(child)
                })
                .collect();
            Ok(Box::new(children.into_iter()))
        }
        Pattern::Not(q) => {
            if not_matches_in(q, &target, &matcher, &state.env, config, stats)? {
                Ok(one(state))
            } else {
                Ok(none())
            }
        }
        Pattern::Loop {
            index_var,
            start,
            end,
            repeat,
            finish,
        } => expand_loop(
            state, index_var, start, end, repeat, finish, target, matcher,
        ),
        Pattern::Seq(ps) => match ps.split_first() {
            None => Ok(one(state)),
            Some((first, rest)) => {
                for p in rest {
                    state.segments.push_back(SeqSegment {
                        pending: p.clone(),
                        collected: Vec::new(),
                    });
                }
                state.push_atoms(vec![MatchingAtom::new(first.clone(), target, matcher)]);
                Ok(one(state))
            }
        },
        Pattern::LaterVar => match state.segments.front_mut() {
            Some(seg) => {
                seg.collected.push((target, matcher));
                Ok(one(state))
            }
            None => Err(Error::InvalidPattern(
                "later variable `@` with no pending sequential stage".into(),
            )),
        },
        Pattern::Let { binder, expr, body } => {
            let v = eval_expr(expr, &state.env)?;
            state.env = match binder {
                LetBinder::Scalar(name) => state.env.bind_scalar(name, v)?,
                LetBinder::Indexed(name, key) => {
                    let k = eval_expr(key, &state.env)?.as_int()?;
                    state.env.bind_indexed(name, k, v)?
                }
            };
            state.push_atoms(vec![MatchingAtom::new(body.clone(), target, matcher)]);
            Ok(one(state))
        }
        Pattern::Ellipsis => Err(Error::InvalidPattern(
            "ellipsis outside a loop repeat pattern".into(),
        )),
        Pattern::Value(_) | Pattern::Ctor(..) | Pattern::Tuple(_) => {
            let branches = matcher.decompose(&pattern, &target, &state.env)?;
            let base = state;
            Ok(Box::new(branches.map(move |branch| {
                let mut child = base.clone();
                child.push_atoms(branch?);
                Ok(child)
            })))
        }
    }
}

/// Opens the next sequential stage: the targets collected by later variables
/// are matched as a tuple (a single collection collapses to the bare pair, an
/// empty one to the empty tuple) against the stage's pattern.
fn reduce_segment(mut state: MatchingState) -> Result<ChildIter> {
    let Some(seg) = state.segments.pop_front() else {
        return Err(Error::InvalidPattern("reduction of a success state".into()));
    };
    let SeqSegment { pending, collected } = seg;
    let (target, matcher) = match collected.len() {
        0 => (Value::unit(), matcher::tuple(vec![])),
        1 => collected.into_iter().next().expect("len checked"),
        _ => {
            let (targets, matchers): (Vec<Value>, Vec<Matcher>) = collected.into_iter().unzip();
            (Value::tuple(targets), matcher::tuple(matchers))
        }
    };
    state.push_atoms(vec![MatchingAtom::new(pending, target, matcher)]);
    Ok(one(state))
}

#[allow(clippy::too_many_arguments)]
fn expand_loop(
    state: MatchingState,
    index_var: &Arc<str>,
    start: &Arc<Expr>,
    end: &LoopEnd,
    repeat: &Pat,
    finish: &Pat,
    target: Value,
    matcher: Matcher,
) -> Result<ChildIter> {
    let i = eval_expr(start, &state.env)?.as_int()?;
    let continuation = || -> Result<Pat> {
        let next_loop = Arc::new(Pattern::Loop {
            index_var: index_var.clone(),
            start: Arc::new(Expr::int(i + 1)),
            end: end.clone(),
            repeat: repeat.clone(),
            finish: finish.clone(),
        });
        substitute_ellipsis(repeat, &next_loop)
    };
    let bind_index = |env: &Bindings| -> Result<Bindings> {
        if &**index_var == "_" {
            Ok(env.clone())
        } else {
            env.bind_scalar(index_var, Value::Int(i))
        }
    };
    match end {
        LoopEnd::Fixed(e) => {
            let n = eval_expr(e, &state.env)?.as_int()?;
            if n < i - 1 {
                return Err(Error::InvalidPattern(format!(
                    "loop end {n} is below start {i} - 1"
                )));
            }
            let mut child = state;
            if i <= n {
                child.env = bind_index(&child.env)?;
                child.push_atoms(vec![MatchingAtom::new(continuation()?, target, matcher)]);
            } else {
                child.push_atoms(vec![MatchingAtom::new(finish.clone(), target, matcher)]);
            }
            Ok(one(child))
        }
        LoopEnd::Pat(count_pat) => {
            // Stop first, so shorter matches are enumerated before longer
            // ones under both traversals. The repeat count that was reached
            // is matched against the end pattern with integer equality.
            let mut stop = state.clone();
            stop.push_atoms(vec![
                MatchingAtom::new(count_pat.clone(), Value::Int(i - 1), matcher::integer()),
                MatchingAtom::new(finish.clone(), target.clone(), matcher.clone()),
            ]);
            let mut cont = state;
            cont.env = bind_index(&cont.env)?;
            cont.push_atoms(vec![MatchingAtom::new(continuation()?, target, matcher)]);
            Ok(Box::new([Ok(stop), Ok(cont)].into_iter()))
        }
    }
}

enum Node {
    State(MatchingState),
    Spine(ChildIter),
}

/// Existence check used for not-patterns: depth-first, because only a single
/// witness (or exhaustion) is needed. Returns `true` when the pattern has no
/// match. Sub-search work counts toward the enclosing enumeration's stats and
/// state bound, plus its own fuel.
fn not_matches_in(
    pattern: &Pat,
    target: &Value,
    matcher: &Matcher,
    env: &Bindings,
    config: &EngineConfig,
    stats: &Arc<StatsInner>,
) -> Result<bool> {
    let root = MatchingState::root(
        pattern.clone(),
        target.clone(),
        matcher.clone(),
        env.clone(),
    );
    let mut agenda: Vec<Node> = vec![Node::State(root)];
    let mut local: u64 = 0;
    while let Some(node) = agenda.pop() {
        match node {
            Node::State(s) => {
                if s.is_success() {
                    return Ok(false);
                }
                local += 1;
                if local > config.not_fuel {
                    return Err(Error::FuelExhausted("not-pattern sub-search"));
                }
                let total = stats.states.fetch_add(1, Ordering::Relaxed) + 1;
                if let Some(max) = config.max_states {
                    if total > max {
                        return Err(Error::FuelExhausted("search states"));
                    }
                }
                agenda.push(Node::Spine(reduce(s, config, stats)?));
            }
            Node::Spine(mut it) => {
                if let Some(next) = it.next() {
                    let child = next?;
                    stats.branches.fetch_add(1, Ordering::Relaxed);
                    agenda.push(Node::Spine(it));
                    agenda.push(Node::State(child));
                }
            }
        }
    }
    Ok(true)
}

/// True when `pattern` has no match against `target` under `matcher` and
/// `env`; the sub-search is bounded by the default not-pattern fuel.
pub fn not_matches(
    pattern: &Pat,
    target: &Value,
    matcher: &Matcher,
    env: &Bindings,
) -> Result<bool> {
    let config = EngineConfig::default();
    let stats = Arc::new(StatsInner::default());
    validate_pattern(pattern)?;
    not_matches_in(pattern, target, matcher, env, &config, &stats)
}

/// True when the value pattern `#value` matches `target` under `matcher`:
/// the matcher-parameterized notion of value equality.
pub fn value_matches(matcher: &Matcher, value: &Value, target: &Value) -> Result<bool> {
    let pat = crate::pattern::vpat(Expr::Lit(value.clone()));
    Ok(!not_matches_in(
        &pat,
        target,
        matcher,
        &Bindings::new(),
        &EngineConfig::default(),
        &Arc::new(StatsInner::default()),
    )?)
}

// ---------------------------------------------------------------------------
// Enumeration streams
// ---------------------------------------------------------------------------

/// A lazy, pull-based, single-consumer stream of pattern-matching results.
/// Clauses run in order: a later clause's results follow the exhaustion of
/// the earlier clause's stream. The stream fuses after yielding an error.
pub struct ResultStream {
    mode: SearchMode,
    config: EngineConfig,
    stats: Arc<StatsInner>,
    target: Value,
    matcher: Matcher,
    base_env: Bindings,
    clauses: std::vec::IntoIter<MatchClause>,
    agenda: VecDeque<Node>,
    body: Option<Arc<Expr>>,
    done: bool,
}

impl ResultStream {
    pub fn stats(&self) -> EngineStats {
        self.stats.snapshot()
    }

    /// Collects the first `n` results, failing on the first error.
    pub fn take_values(&mut self, n: usize) -> Result<Vec<Value>> {
        self.by_ref().take(n).collect()
    }

    /// Collects the whole stream; the search space must be finite.
    pub fn collect_values(self) -> Result<Vec<Value>> {
        self.collect()
    }

    fn emit(&mut self, env: &Bindings) -> Result<Value> {
        let body = self.body.as_ref().expect("body set while a clause runs");
        eval_expr(body, env)
    }

    fn step(&mut self) -> Option<Result<Value>> {
        loop {
            let Some(node) = (match self.mode {
                SearchMode::Bfs => self.agenda.pop_front(),
                SearchMode::Dfs => self.agenda.pop_back(),
            }) else {
                // Current clause exhausted; start the next one.
                let next = self.clauses.next()?;
                if let Err(e) = validate_pattern(&next.pattern) {
                    return Some(Err(e));
                }
                let root = MatchingState::root(
                    next.pattern.clone(),
                    self.target.clone(),
                    self.matcher.clone(),
                    self.base_env.clone(),
                );
                self.body = Some(next.body);
                self.agenda.push_back(Node::State(root));
                continue;
            };
            match node {
                Node::State(s) => {
                    if s.is_success() {
                        return Some(self.emit(&s.env));
                    }
                    let total = self.stats.states.fetch_add(1, Ordering::Relaxed) + 1;
                    if let Some(max) = self.config.max_states {
                        if total > max {
                            return Some(Err(Error::FuelExhausted("search states")));
                        }
                    }
                    match reduce(s, &self.config, &self.stats) {
                        Ok(children) => self.agenda.push_back(Node::Spine(children)),
                        Err(e) => return Some(Err(e)),
                    }
                }
                Node::Spine(mut it) => match it.next() {
                    None => {}
                    Some(Err(e)) => return Some(Err(e)),
                    Some(Ok(child)) => {
                        self.stats.branches.fetch_add(1, Ordering::Relaxed);
                        match self.mode {
                            SearchMode::Bfs => {
                                self.agenda.push_back(Node::State(child));
                                self.agenda.push_back(Node::Spine(it));
                            }
                            SearchMode::Dfs => {
                                self.agenda.push_back(Node::Spine(it));
                                self.agenda.push_back(Node::State(child));
                            }
                        }
                    }
                },
            }
        }
    }
}

impl Iterator for ResultStream {
    type Item = Result<Value>;

    fn next(&mut self) -> Option<Result<Value>> {
        if self.done {
            return None;
        }
        match self.step() {
            Some(Err(e)) => {
                self.done = true;
                Some(Err(e))
            }
            other => other,
        }
    }
}

/// Enumerates all results of the clauses against `target` under `matcher`,
/// with explicit traversal mode, base environment, and engine configuration.
pub fn match_all_in(
    target: &Value,
    matcher: &Matcher,
    clauses: Vec<MatchClause>,
    mode: SearchMode,
    env: Bindings,
    config: EngineConfig,
) -> ResultStream {
    ResultStream {
        mode,
        config,
        stats: Arc::new(StatsInner::default()),
        target: target.clone(),
        matcher: matcher.clone(),
        base_env: env,
        clauses: clauses.into_iter(),
        agenda: VecDeque::new(),
        body: None,
        done: false,
    }
}

/// Breadth-first enumeration of all results: fair on infinite reduction
/// trees, so every success at finite depth is eventually yielded.
pub fn match_all(target: &Value, matcher: &Matcher, clauses: Vec<MatchClause>) -> ResultStream {
    match_all_in(
        target,
        matcher,
        clauses,
        SearchMode::Bfs,
        Bindings::new(),
        EngineConfig::default(),
    )
}

/// Depth-first enumeration: pre-order, each child fully explored before its
/// siblings; the tool of choice when results must follow target order.
pub fn match_all_dfs(target: &Value, matcher: &Matcher, clauses: Vec<MatchClause>) -> ResultStream {
    match_all_in(
        target,
        matcher,
        clauses,
        SearchMode::Dfs,
        Bindings::new(),
        EngineConfig::default(),
    )
}

/// First result across the ordered clauses.
pub fn match_first(target: &Value, matcher: &Matcher, clauses: Vec<MatchClause>) -> Result<Value> {
    match_first_in(target, matcher, clauses, Bindings::new())
}

pub fn match_first_in(
    target: &Value,
    matcher: &Matcher,
    clauses: Vec<MatchClause>,
    env: Bindings,
) -> Result<Value> {
    match_all_in(
        target,
        matcher,
        clauses,
        SearchMode::Bfs,
        env,
        EngineConfig::default(),
    )
    .next()
    .unwrap_or(Err(Error::NoMatch))
}
