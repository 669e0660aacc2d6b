//! Bounded explicit-state reachability.
//!
//! Breadth-first exploration of the transition system, cut off by a state
//! budget and a per-species population cap. The search is level-synchronous:
//! each frontier is expanded (in parallel under [`ExecMode::Parallel`]) and
//! the successors merged back in frontier order, so discovery order, found
//! paths, and every reported artifact are identical in both execution modes.
//!
//! `NotReachableProven` is only ever reported when the explored set is
//! closed: the frontier drained with the budget untouched and no successor
//! clipped by the cap. Everything else that fails to reach the target is
//! `BudgetExhausted`.

use num_bigint::BigInt;
use std::collections::HashMap;
use std::fmt::Write as _;

use crate::model::{Drn, ModelError, Path, State};
use crate::{map_maybe_par, vecutil, ExecMode};

/// Exploration limits. `max_states` bounds how many distinct states are
/// stored; `species_cap` discards successors with any population above it.
/// The start state itself is exempt from the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_states: usize,
    pub species_cap: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_states: 100_000, species_cap: 64 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReachOutcome {
    /// A shortest path from source to target (ties broken by discovery
    /// order, which prefers earlier frontier states and smaller reaction
    /// indices).
    Reached(Path),
    /// The full reachable set was enumerated and the target is not in it.
    NotReachableProven,
    /// The search hit `max_states` or clipped at least one successor against
    /// `species_cap` before finding the target.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachResult {
    pub outcome: ReachOutcome,
    pub states_explored: usize,
    /// A bounded sample of the unexpanded frontier when the budget ran out.
    pub frontier_snapshot: Option<Vec<State>>,
}

/// How many frontier states a [`ReachResult::frontier_snapshot`] keeps.
const FRONTIER_SNAPSHOT_LIMIT: usize = 32;

/// The raw output of a breadth-first exploration: states in discovery order
/// with their BFS tree.
#[derive(Debug, Clone)]
pub struct Exploration {
    states: Vec<State>,
    /// `parents[i]` is `(parent index, reaction)` for every state but the
    /// start.
    parents: Vec<Option<(usize, usize)>>,
    closed: bool,
    clipped: bool,
    exhausted: bool,
    target_index: Option<usize>,
    frontier_start: usize,
}

impl Exploration {
    /// Discovered states in discovery order; index 0 is the start state.
    pub fn states(&self) -> &[State] {
        &self.states
    }

    /// True when the explored set is provably the whole reachable set.
    pub fn closed(&self) -> bool {
        self.closed
    }

    /// Index of the target state when the search discovered it.
    pub fn target(&self) -> Option<usize> {
        self.target_index
    }

    /// Replayable path from the start to the state at `index`.
    pub fn path_to(&self, index: usize) -> Path {
        let mut steps = Vec::new();
        let mut at = index;
        while let Some((parent, reaction)) = self.parents[at] {
            steps.push(reaction);
            at = parent;
        }
        steps.reverse();
        Path::new(steps)
    }

    fn result(&self) -> ReachResult {
        let outcome = match self.target_index {
            Some(idx) => ReachOutcome::Reached(self.path_to(idx)),
            None if self.closed => ReachOutcome::NotReachableProven,
            None => ReachOutcome::BudgetExhausted,
        };
        let frontier_snapshot = if matches!(outcome, ReachOutcome::BudgetExhausted) {
            Some(
                self.states[self.frontier_start..]
                    .iter()
                    .take(FRONTIER_SNAPSHOT_LIMIT)
                    .cloned()
                    .collect(),
            )
        } else {
            None
        };
        ReachResult { outcome, states_explored: self.states.len(), frontier_snapshot }
    }
}

fn over_cap(populations: &[BigInt], cap: u64) -> bool {
    let cap = BigInt::from(cap);
    populations.iter().any(|p| *p > cap)
}

/// Breadth-first exploration from `from`, stopping early if `target` is
/// discovered.
pub fn explore(
    drn: &Drn,
    from: &State,
    target: Option<&State>,
    budget: Budget,
    mode: ExecMode,
) -> Result<Exploration, ModelError> {
    if from.dim() != drn.dim() {
        return Err(ModelError::DimensionMismatch { expected: drn.dim(), found: from.dim() });
    }
    if let Some(t) = target {
        if t.dim() != drn.dim() {
            return Err(ModelError::DimensionMismatch { expected: drn.dim(), found: t.dim() });
        }
    }

    let mut exploration = Exploration {
        states: vec![from.clone()],
        parents: vec![None],
        closed: false,
        clipped: false,
        exhausted: false,
        target_index: if target == Some(from) { Some(0) } else { None },
        frontier_start: 0,
    };
    if exploration.target_index.is_some() {
        return Ok(exploration);
    }
    if budget.max_states <= 1 {
        exploration.exhausted = true;
        return Ok(exploration);
    }

    let mut index: HashMap<State, usize> = HashMap::new();
    index.insert(from.clone(), 0);

    let mut level_start = 0;
    while level_start < exploration.states.len() {
        let level_end = exploration.states.len();
        exploration.frontier_start = level_start;
        let frontier = &exploration.states[level_start..level_end];

        // Expand the whole frontier, then merge sequentially in frontier
        // order so discovery order is mode-independent.
        let expansions: Vec<Vec<(usize, State)>> = map_maybe_par(mode, frontier, |state| {
            let mut succs = Vec::new();
            for j in 0..drn.size() {
                if vecutil::dominates(state.populations(), drn.origin(j)) {
                    let next =
                        State::from_checked(vecutil::add(state.populations(), drn.drift(j)));
                    succs.push((j, next));
                }
            }
            succs
        });

        for (offset, succs) in expansions.into_iter().enumerate() {
            let parent = level_start + offset;
            for (reaction, next) in succs {
                if over_cap(next.populations(), budget.species_cap) {
                    exploration.clipped = true;
                    continue;
                }
                if index.contains_key(&next) {
                    continue;
                }
                if exploration.states.len() >= budget.max_states {
                    exploration.exhausted = true;
                    exploration.frontier_start = parent;
                    return Ok(exploration);
                }
                let id = exploration.states.len();
                index.insert(next.clone(), id);
                exploration.states.push(next);
                exploration.parents.push(Some((parent, reaction)));
                if target == Some(&exploration.states[id]) {
                    exploration.target_index = Some(id);
                    return Ok(exploration);
                }
            }
        }
        level_start = level_end;
    }

    exploration.closed = !exploration.clipped;
    exploration.frontier_start = exploration.states.len();
    Ok(exploration)
}

/// Is `to` reachable from `from`? Yes with a shortest path, proven no, or
/// budget exhausted.
pub fn reachable(drn: &Drn, from: &State, to: &State, budget: Budget) -> Result<ReachResult, ModelError> {
    reachable_with_mode(drn, from, to, budget, ExecMode::default())
}

pub fn reachable_with_mode(
    drn: &Drn,
    from: &State,
    to: &State,
    budget: Budget,
    mode: ExecMode,
) -> Result<ReachResult, ModelError> {
    Ok(explore(drn, from, Some(to), budget, mode)?.result())
}

/// The set of states reachable from `from` within the budget.
pub fn reachable_set(drn: &Drn, from: &State, budget: Budget) -> Result<Exploration, ModelError> {
    explore(drn, from, None, budget, ExecMode::default())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MutualReach {
    /// Paths both ways.
    Both { forward: Path, backward: Path },
    /// At least one direction is proven unreachable.
    ProvenNot,
    /// Budget ran out before either answer.
    Unknown,
}

/// Decides whether `a` and `b` reach each other, combining two bounded
/// searches.
pub fn mutual_reach(drn: &Drn, a: &State, b: &State, budget: Budget) -> Result<MutualReach, ModelError> {
    let forward = reachable(drn, a, b, budget)?;
    if matches!(forward.outcome, ReachOutcome::NotReachableProven) {
        return Ok(MutualReach::ProvenNot);
    }
    let backward = reachable(drn, b, a, budget)?;
    if matches!(backward.outcome, ReachOutcome::NotReachableProven) {
        return Ok(MutualReach::ProvenNot);
    }
    match (forward.outcome, backward.outcome) {
        (ReachOutcome::Reached(f), ReachOutcome::Reached(r)) => {
            Ok(MutualReach::Both { forward: f, backward: r })
        }
        _ => Ok(MutualReach::Unknown),
    }
}

/// Renders the explored transition system as one `source -> target
/// [reaction]` line per edge, states as comma-separated populations, edges in
/// discovery order of the source then by reaction index. Only edges between
/// explored states appear.
pub fn dump_graph(drn: &Drn, from: &State, budget: Budget) -> Result<String, ModelError> {
    let exploration = explore(drn, from, None, budget, ExecMode::default())?;
    let index: HashMap<&State, usize> =
        exploration.states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut out = String::new();
    for state in exploration.states() {
        for j in 0..drn.size() {
            if vecutil::dominates(state.populations(), drn.origin(j)) {
                let next = State::from_checked(vecutil::add(state.populations(), drn.drift(j)));
                if index.contains_key(&next) {
                    let _ = writeln!(
                        out,
                        "{} -> {} [r{}]",
                        vecutil::display(state.populations()),
                        vecutil::display(next.populations()),
                        j + 1
                    );
                }
            }
        }
    }
    Ok(out)
}
