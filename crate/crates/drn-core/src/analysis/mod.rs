//! Decision procedures for the global dynamical properties of a network.
//!
//! Properties come in two flavors. The large-copy-number (LCN) properties
//! quantify over states above some threshold and are fully decidable through
//! exact linear algebra:
//!
//! - LCN irreducibility holds exactly when the drifts positively span all of
//!   `R^d` and integrally span all of `Z^d`.
//! - LCN recurrence holds exactly when zero is a strictly positive
//!   combination of the drifts.
//!
//! The unrestricted properties reduce partly to decidable questions
//! (irreducibility is LCN irreducibility plus the self-starting property and
//! its inverse) and partly to reachability, which is only semi-decided under
//! an exploration [`Budget`](crate::reach::Budget); those verdicts may be
//! `Unknown`.
//!
//! Every `True`/`False` verdict carries evidence: solver witnesses and
//! certificates, replayable paths, or a closed reachable set.

mod recurrence;
mod self_start;
mod witness;

pub use recurrence::{check_recurrence, is_weakly_reversible, RecurrenceEvidence};
pub use self_start::{is_self_starting, is_self_stopping, SelfStartEvidence, SelfStartWitness};
pub use witness::{lcn_irreducibility_witness, AxisMove, LcnWitness};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::exactmath::{hnf, pos_span_is_full, zero_in_pos_span, PosSpanReport, ZeroInPosSpan};
use crate::model::Drn;
use crate::reach::Budget;

/// Three-valued answer of a (semi-)decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictValue {
    True,
    False,
    Unknown,
}

/// A verdict together with whatever evidence justifies it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<E> {
    pub value: VerdictValue,
    pub evidence: E,
}

/// What the Hermite normal form of the drift matrix says about the integer
/// span of the drifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeEvidence {
    pub dimension: usize,
    pub rank: usize,
    pub pivots: Vec<BigInt>,
}

impl LatticeEvidence {
    /// Do the drifts integrally span `Z^d`?
    pub fn is_full(&self) -> bool {
        self.rank == self.dimension && self.pivots.iter().all(One::is_one)
    }

    /// Index of the drift lattice in `Z^d`, defined when the lattice has
    /// full rank: the product of the pivots.
    pub fn lattice_index(&self) -> Option<BigInt> {
        if self.rank == self.dimension {
            Some(self.pivots.iter().product())
        } else {
            None
        }
    }
}

/// Both halves of the LCN irreducibility criterion, always computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcnIrreducibilityEvidence {
    pub pos_span: PosSpanReport,
    pub lattice: LatticeEvidence,
}

/// Decides LCN irreducibility: the drifts must positively span `R^d` and
/// integrally span `Z^d`. Both checks always run so the evidence names every
/// failing side.
pub fn is_lcn_irreducible(drn: &Drn) -> Verdict<LcnIrreducibilityEvidence> {
    let d = drn.dim();
    let pos_span = pos_span_is_full(drn.drifts(), d);
    let h = hnf(drn.drifts());
    let lattice = LatticeEvidence { dimension: d, rank: h.rank, pivots: h.pivots() };
    let value = if pos_span.is_full() && lattice.is_full() {
        VerdictValue::True
    } else {
        VerdictValue::False
    };
    Verdict { value, evidence: LcnIrreducibilityEvidence { pos_span, lattice } }
}

/// Decides LCN recurrence: zero must be a strictly positive combination of
/// the drifts. The evidence is an integer kernel vector `λ ⪰ 1` or a Farkas
/// certificate that none exists.
pub fn is_lcn_recurrent(drn: &Drn) -> Verdict<ZeroInPosSpan> {
    let evidence = zero_in_pos_span(drn.drifts(), drn.dim());
    let value = if evidence.is_feasible() { VerdictValue::True } else { VerdictValue::False };
    Verdict { value, evidence }
}

/// The three conjuncts of unrestricted irreducibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IrreducibilityEvidence {
    pub lcn_irreducible: VerdictValue,
    pub self_starting: VerdictValue,
    pub self_stopping: VerdictValue,
}

fn combine_irreducibility(
    lcn: VerdictValue,
    starting: VerdictValue,
    stopping: VerdictValue,
) -> Verdict<IrreducibilityEvidence> {
    let all = [lcn, starting, stopping];
    let value = if all.iter().all(|v| *v == VerdictValue::True) {
        VerdictValue::True
    } else if all.iter().any(|v| *v == VerdictValue::False) {
        VerdictValue::False
    } else {
        VerdictValue::Unknown
    };
    Verdict {
        value,
        evidence: IrreducibilityEvidence {
            lcn_irreducible: lcn,
            self_starting: starting,
            self_stopping: stopping,
        },
    }
}

/// Decides unrestricted irreducibility: LCN irreducibility plus the
/// self-starting property of the network and of its inverse. All three
/// conjuncts are decidable, so the verdict is never `Unknown`.
pub fn is_irreducible(drn: &Drn) -> Verdict<IrreducibilityEvidence> {
    combine_irreducibility(
        is_lcn_irreducible(drn).value,
        is_self_starting(drn).value,
        is_self_stopping(drn).value,
    )
}

/// Everything [`analyze`] establishes about a network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub lcn_irreducible: Verdict<LcnIrreducibilityEvidence>,
    pub lcn_recurrent: Verdict<ZeroInPosSpan>,
    pub self_starting: Verdict<SelfStartEvidence>,
    pub self_stopping: Verdict<SelfStartEvidence>,
    pub irreducible: Verdict<IrreducibilityEvidence>,
    pub weakly_reversible: bool,
    pub recurrent: Verdict<RecurrenceEvidence>,
    /// Present exactly when `lcn_irreducible` is `True`.
    pub lcn_witness: Option<LcnWitness>,
}

/// The deciders contradicted a known implication; this is a bug in the
/// toolkit, never a property of the input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("internal inconsistency: {0}")]
pub struct InconsistencyError(pub String);

/// Runs every decision procedure on the network and cross-checks the
/// implication lattice:
///
/// - LCN irreducibility implies LCN recurrence (the kernel is part of the
///   positive-span witness), so disagreement is an internal error.
/// - Irreducibility implies recurrence: a `False` recurrence verdict next to
///   a `True` irreducibility verdict is an internal error, and an `Unknown`
///   one is upgraded to `True`.
pub fn analyze(drn: &Drn, budget: Budget) -> Result<AnalysisReport, InconsistencyError> {
    let lcn_irreducible = is_lcn_irreducible(drn);
    let lcn_recurrent = is_lcn_recurrent(drn);
    let self_starting = is_self_starting(drn);
    let self_stopping = is_self_stopping(drn);
    let irreducible = combine_irreducibility(
        lcn_irreducible.value,
        self_starting.value,
        self_stopping.value,
    );
    let weakly_reversible = is_weakly_reversible(drn);
    let mut recurrent = check_recurrence(drn, budget);

    let lcn_witness = if lcn_irreducible.value == VerdictValue::True {
        let witness = lcn_irreducibility_witness(drn)
            .ok_or_else(|| InconsistencyError("LCN irreducible but no witness constructed".into()))?;
        witness
            .verify(drn)
            .map_err(|e| InconsistencyError(format!("LCN witness failed verification: {e}")))?;
        Some(witness)
    } else {
        None
    };

    if lcn_irreducible.value == VerdictValue::True && lcn_recurrent.value != VerdictValue::True {
        return Err(InconsistencyError(
            "LCN irreducible network reported as not LCN recurrent".into(),
        ));
    }
    if irreducible.value == VerdictValue::True {
        match recurrent.value {
            VerdictValue::False => {
                return Err(InconsistencyError(
                    "irreducible network reported as not recurrent".into(),
                ));
            }
            VerdictValue::Unknown => {
                recurrent = Verdict {
                    value: VerdictValue::True,
                    evidence: RecurrenceEvidence::ImpliedByIrreducibility,
                };
            }
            VerdictValue::True => {}
        }
    }

    Ok(AnalysisReport {
        lcn_irreducible,
        lcn_recurrent,
        self_starting,
        self_stopping,
        irreducible,
        weakly_reversible,
        recurrent,
        lcn_witness,
    })
}
