//! Recurrence: every transition of the network can be undone.
//!
//! Recurrence is equivalent to each reaction individually being reversible
//! by a path, `O_j + V_j →* O_j`, which reduces the property to finitely
//! many reachability questions — each only semi-decidable, so the overall
//! verdict can be `Unknown`. Two shortcuts avoid the searches when they
//! apply: weak reversibility of the complex graph implies recurrence
//! outright, and when the searches stall, a strictly positive kernel
//! combination plus a round trip from the zero state through a strictly
//! positive state settles it.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::exactmath::{zero_in_pos_span, ZeroInPosSpan};
use crate::model::{Drn, Path, State};
use crate::reach::{explore, reachable, reachable_set, Budget, ReachOutcome};
use crate::vecutil;
use crate::ExecMode;

use super::{Verdict, VerdictValue};

/// Why the network is, is not, or may not be recurrent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecurrenceEvidence {
    /// Source and target complex of every reaction share a strongly
    /// connected component of the complex graph.
    WeaklyReversible,
    /// For each reaction, a replayable path undoing its effect.
    ReactionReversals(Vec<Path>),
    /// A strictly positive kernel combination plus a round trip from zero
    /// through a strictly positive state.
    SelfRecurrent { kernel: Vec<BigInt>, pivot: State, outbound: Path, inbound: Path },
    /// Recurrence follows from an irreducibility verdict.
    ImpliedByIrreducibility,
    /// The full (finite) reachable set from this reaction's endpoint was
    /// enumerated and does not contain the reaction's origin.
    NotRecurrent { reaction: usize, closed_set: Vec<State> },
    /// Reversal searches for these reactions ran out of budget.
    BudgetExhausted { unresolved: Vec<usize> },
}

/// Interns the complexes (reaction origins and endpoints) and checks that
/// every reaction stays inside one strongly connected component.
pub fn is_weakly_reversible(drn: &Drn) -> bool {
    let mut ids: HashMap<Vec<BigInt>, usize> = HashMap::new();
    let mut intern = |complex: Vec<BigInt>| -> usize {
        let next = ids.len();
        *ids.entry(complex).or_insert(next)
    };

    let edges: Vec<(usize, usize)> = (0..drn.size())
        .map(|j| {
            let src = intern(drn.origin(j).to_vec());
            let dst = intern(vecutil::add(drn.origin(j), drn.drift(j)));
            (src, dst)
        })
        .collect();

    let nodes = ids.len();
    let mut adj = vec![Vec::new(); nodes];
    let mut rev = vec![Vec::new(); nodes];
    for &(src, dst) in &edges {
        adj[src].push(dst);
        rev[dst].push(src);
    }
    let comp = scc_components(&adj, &rev);
    edges.iter().all(|&(src, dst)| comp[src] == comp[dst])
}

/// Kosaraju's two-pass component labelling.
fn scc_components(adj: &[Vec<usize>], rev: &[Vec<usize>]) -> Vec<usize> {
    fn post_order(v: usize, adj: &[Vec<usize>], seen: &mut [bool], order: &mut Vec<usize>) {
        seen[v] = true;
        for &w in &adj[v] {
            if !seen[w] {
                post_order(w, adj, seen, order);
            }
        }
        order.push(v);
    }
    fn assign(v: usize, label: usize, rev: &[Vec<usize>], comp: &mut [usize]) {
        comp[v] = label;
        for &w in &rev[v] {
            if comp[w] == usize::MAX {
                assign(w, label, rev, comp);
            }
        }
    }

    let n = adj.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for v in 0..n {
        if !seen[v] {
            post_order(v, adj, &mut seen, &mut order);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut label = 0;
    for &v in order.iter().rev() {
        if comp[v] == usize::MAX {
            assign(v, label, rev, &mut comp);
            label += 1;
        }
    }
    comp
}

/// Semi-decides recurrence under the exploration budget.
///
/// Routes, in order: weak reversibility; one reversal search per reaction
/// (a search that provably closes without the origin disproves recurrence);
/// and, when some searches stall, the kernel-plus-round-trip argument.
pub fn check_recurrence(drn: &Drn, budget: Budget) -> Verdict<RecurrenceEvidence> {
    if is_weakly_reversible(drn) {
        return Verdict {
            value: VerdictValue::True,
            evidence: RecurrenceEvidence::WeaklyReversible,
        };
    }

    let mut reversals = Vec::with_capacity(drn.size());
    let mut unresolved = Vec::new();
    for j in 0..drn.size() {
        let from = State::from_checked(vecutil::add(drn.origin(j), drn.drift(j)));
        let to = State::new(drn.origin(j).to_vec()).expect("origins are nonnegative");
        let exploration = explore(drn, &from, Some(&to), budget, ExecMode::default())
            .expect("endpoint states share the network's dimension");
        match exploration.target() {
            Some(index) => reversals.push(exploration.path_to(index)),
            None if exploration.closed() => {
                return Verdict {
                    value: VerdictValue::False,
                    evidence: RecurrenceEvidence::NotRecurrent {
                        reaction: j,
                        closed_set: exploration.states().to_vec(),
                    },
                };
            }
            None => unresolved.push(j),
        }
    }
    if unresolved.is_empty() {
        return Verdict {
            value: VerdictValue::True,
            evidence: RecurrenceEvidence::ReactionReversals(reversals),
        };
    }

    if let ZeroInPosSpan::Feasible(kernel) = zero_in_pos_span(drn.drifts(), drn.dim()) {
        let zero = State::zero(drn.dim());
        let from_zero = reachable_set(drn, &zero, budget)
            .expect("the zero state shares the network's dimension");
        for (index, state) in from_zero.states().iter().enumerate() {
            if !state.strictly_positive() {
                continue;
            }
            let back = reachable(drn, state, &zero, budget)
                .expect("discovered states share the network's dimension");
            if let ReachOutcome::Reached(inbound) = back.outcome {
                return Verdict {
                    value: VerdictValue::True,
                    evidence: RecurrenceEvidence::SelfRecurrent {
                        kernel,
                        pivot: state.clone(),
                        outbound: from_zero.path_to(index),
                        inbound,
                    },
                };
            }
        }
    }

    Verdict {
        value: VerdictValue::Unknown,
        evidence: RecurrenceEvidence::BudgetExhausted { unresolved },
    }
}
