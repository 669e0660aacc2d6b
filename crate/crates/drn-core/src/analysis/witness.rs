//! Replayable witnesses for LCN irreducibility.
//!
//! Above a threshold `M₀`, an LCN-irreducible network can move any single
//! coordinate by one in either direction. The witness makes this concrete:
//! for every signed axis direction it carries a reaction multiset whose
//! drifts sum to `±e_i`, together with an ordering that replays from `M₀`
//! without leaving the applicable region. Applicability is monotone in the
//! starting state, so a successful replay from `M₀` certifies the same moves
//! from every state dominating `M₀`; chaining moves then connects all states
//! above the threshold.
//!
//! Construction: a strictly positive kernel `κ` of the drift matrix (from
//! the positive-span check) plus an integer solution of `λ · V = ±e_i` (from
//! the lattice check) combine into `λ* = λ + βκ` with `β` just large enough
//! to clear negative entries. A floor high enough to dominate every origin
//! along the way always admits an ordering; the threshold is then read off
//! the lowest points of the orderings' traces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exactmath::solve_integer_system;
use crate::model::{find_ordering, trace_lowerpoint, Drn, Multiplicity, Path, State};
use crate::vecutil;

use super::{is_lcn_irreducible, VerdictValue};
use crate::exactmath::ZeroInPosSpan;

/// One signed unit move: a multiset of reactions summing to `±e_axis` and an
/// ordering of it that replays from the witness threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisMove {
    pub axis: usize,
    pub positive: bool,
    pub multiplicity: Multiplicity,
    pub ordering: Path,
}

/// Certificate that every pair of states dominating `threshold` is mutually
/// reachable: a strictly positive kernel plus one replayable unit move per
/// signed axis direction, in axis order with the positive direction first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcnWitness {
    pub kernel: Vec<BigInt>,
    pub axis_moves: Vec<AxisMove>,
    pub threshold: Vec<BigInt>,
}

impl LcnWitness {
    /// Re-checks the witness against the network: kernel positivity and
    /// cancellation, the canonical move order, multiset/ordering agreement,
    /// and a full replay of every move from the threshold.
    pub fn verify(&self, drn: &Drn) -> Result<(), String> {
        let n = drn.size();
        let d = drn.dim();

        if self.kernel.len() != n {
            return Err(format!("kernel has length {}, expected {n}", self.kernel.len()));
        }
        if self.kernel.iter().any(|k| k < &BigInt::from(1)) {
            return Err("kernel has an entry below one".into());
        }
        for c in 0..d {
            let sum: BigInt = (0..n).map(|j| &self.kernel[j] * &drn.drift(j)[c]).sum();
            if !sum.is_zero() {
                return Err(format!("kernel does not cancel the drifts at species {c}"));
            }
        }

        if self.threshold.len() != d {
            return Err(format!("threshold has length {}, expected {d}", self.threshold.len()));
        }
        if self.threshold.iter().any(Signed::is_negative) {
            return Err("threshold has a negative entry".into());
        }

        if self.axis_moves.len() != 2 * d {
            return Err(format!("expected {} axis moves, found {}", 2 * d, self.axis_moves.len()));
        }
        for axis in 0..d {
            for (slot, positive) in [(2 * axis, true), (2 * axis + 1, false)] {
                let mv = &self.axis_moves[slot];
                if mv.axis != axis || mv.positive != positive {
                    return Err(format!(
                        "axis move {slot} is for ({}, {}), expected ({axis}, {positive})",
                        mv.axis, mv.positive
                    ));
                }
                self.verify_move(drn, mv)?;
            }
        }
        Ok(())
    }

    fn verify_move(&self, drn: &Drn, mv: &AxisMove) -> Result<(), String> {
        let n = drn.size();
        let label = format!("move ({}, {})", mv.axis, if mv.positive { "+" } else { "-" });
        if mv.multiplicity.counts().len() != n {
            return Err(format!("{label}: multiset is over {} reactions", mv.multiplicity.counts().len()));
        }
        if mv.ordering.steps().iter().any(|&r| r >= n) {
            return Err(format!("{label}: ordering uses an out-of-range reaction"));
        }
        if mv.ordering.multiplicity(n) != mv.multiplicity {
            return Err(format!("{label}: ordering does not spell the multiset"));
        }

        let mut state = State::new(self.threshold.clone())
            .map_err(|e| format!("{label}: threshold is not a state: {e}"))?;
        for (step, &r) in mv.ordering.steps().iter().enumerate() {
            state = drn
                .apply(&state, r)
                .map_err(|e| format!("{label}: step {} is not applicable: {e}", step + 1))?;
        }
        let mut expected = self.threshold.clone();
        expected[mv.axis] += BigInt::from(if mv.positive { 1 } else { -1 });
        if state.populations() != expected.as_slice() {
            return Err(format!("{label}: replay ends at {state}, not at the unit move"));
        }
        Ok(())
    }
}

/// Builds the mutual-reachability witness for an LCN-irreducible network;
/// `None` when the network is not LCN irreducible. Deterministic: the same
/// network always yields the same witness.
pub fn lcn_irreducibility_witness(drn: &Drn) -> Option<LcnWitness> {
    let verdict = is_lcn_irreducible(drn);
    if verdict.value != VerdictValue::True {
        return None;
    }
    let kernel = match verdict.evidence.pos_span.kernel {
        ZeroInPosSpan::Feasible(k) => k,
        ZeroInPosSpan::Infeasible(_) => unreachable!("full positive span carries a kernel"),
    };

    let n = drn.size();
    let d = drn.dim();
    let max_origin: Vec<BigInt> =
        (0..d).map(|c| (0..n).map(|j| drn.origin(j)[c].clone()).max().unwrap()).collect();
    let max_drift: Vec<BigInt> =
        (0..d).map(|c| (0..n).map(|j| drn.drift(j)[c].abs()).max().unwrap()).collect();

    let mut axis_moves = Vec::with_capacity(2 * d);
    for axis in 0..d {
        for positive in [true, false] {
            let target = vecutil::signed_unit(d, axis, positive);
            let raw = solve_integer_system(drn.drifts(), &target)
                .expect("a full lattice solves every unit target");

            // Smallest kernel multiple lifting every entry to nonnegative.
            let mut beta = BigInt::zero();
            for j in 0..n {
                if raw[j].is_negative() {
                    beta = beta.max((-&raw[j]).div_ceil(&kernel[j]));
                }
            }
            let counts: Vec<BigInt> = (0..n).map(|j| &raw[j] + &beta * &kernel[j]).collect();
            let multiplicity =
                Multiplicity::new(counts).expect("kernel lift clears negative entries");

            // From a floor dominating every origin along any ordering, the
            // greedy first branch succeeds.
            let total = multiplicity.total();
            let floor: Vec<BigInt> =
                (0..d).map(|c| &max_origin[c] + &total * &max_drift[c]).collect();
            let ordering = find_ordering(drn, &multiplicity, &floor)
                .expect("a dominating floor admits an ordering");
            axis_moves.push(AxisMove { axis, positive, multiplicity, ordering });
        }
    }

    let lows: Vec<Vec<BigInt>> = axis_moves
        .iter()
        .map(|mv| trace_lowerpoint(drn, &vecutil::zeros(d), &mv.ordering))
        .collect();
    let threshold: Vec<BigInt> = (0..d)
        .map(|c| {
            lows.iter()
                .map(|low| &max_origin[c] - &low[c])
                .max()
                .unwrap()
                .max(BigInt::zero())
        })
        .collect();

    Some(LcnWitness { kernel, axis_moves, threshold })
}
