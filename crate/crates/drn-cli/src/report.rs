//! JSON shapes for analysis reports and witnesses.
//!
//! The schema favors re-checkability over compactness: populations and
//! solver coefficients are decimal strings (`"42"`, `"5/2"`) so no consumer
//! ever rounds, reaction indices are 1-based to match the text output and
//! error messages, and axes are named by their species. Serialization is
//! deterministic: field order is fixed and every collection is ordered.

use drn_core::analysis::{
    AnalysisReport, LcnWitness, RecurrenceEvidence, SelfStartEvidence, Verdict, VerdictValue,
};
use drn_core::exactmath::{PosSpanReport, Rational, ZeroInPosSpan};
use drn_core::model::{Drn, Path, State};
use num_bigint::BigInt;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

fn value_str(value: VerdictValue) -> &'static str {
    match value {
        VerdictValue::True => "true",
        VerdictValue::False => "false",
        VerdictValue::Unknown => "unknown",
    }
}

fn bigs(xs: &[BigInt]) -> Vec<String> {
    xs.iter().map(BigInt::to_string).collect()
}

fn rats(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(Rational::to_string).collect()
}

fn state_dto(state: &State) -> Vec<String> {
    bigs(state.populations())
}

fn path_dto(path: &Path) -> Vec<usize> {
    path.steps().iter().map(|&r| r + 1).collect()
}

#[derive(Serialize)]
pub struct ReportDto {
    pub schema_version: u32,
    pub species: Vec<String>,
    pub reactions: usize,
    pub lcn_irreducible: LcnIrreducibleDto,
    pub lcn_recurrent: LcnRecurrentDto,
    pub self_starting: SelfStartDto,
    pub self_stopping: SelfStartDto,
    pub irreducible: IrreducibleDto,
    pub weakly_reversible: bool,
    pub recurrent: RecurrentDto,
    pub lcn_witness: Option<WitnessDto>,
}

#[derive(Serialize)]
pub struct LcnIrreducibleDto {
    pub value: &'static str,
    pub positive_span: PosSpanDto,
    pub lattice: LatticeDto,
}

#[derive(Serialize)]
pub struct PosSpanDto {
    pub full: bool,
    pub kernel: Option<Vec<String>>,
    pub kernel_farkas: Option<Vec<String>>,
    pub axis_solutions: Vec<AxisSolutionDto>,
    pub failing_axis: Option<FailedAxisDto>,
}

#[derive(Serialize)]
pub struct AxisSolutionDto {
    pub species: String,
    pub positive: bool,
    pub coefficients: Vec<String>,
}

#[derive(Serialize)]
pub struct FailedAxisDto {
    pub species: String,
    pub positive: bool,
    pub farkas: Vec<String>,
}

#[derive(Serialize)]
pub struct LatticeDto {
    pub dimension: usize,
    pub rank: usize,
    pub pivots: Vec<String>,
    pub full: bool,
    pub index: Option<String>,
}

#[derive(Serialize)]
pub struct LcnRecurrentDto {
    pub value: &'static str,
    pub kernel: Option<Vec<String>>,
    pub farkas: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct SelfStartDto {
    pub value: &'static str,
    pub witness: Option<SelfStartWitnessDto>,
    pub reason: Option<ReasonDto>,
}

#[derive(Serialize)]
pub struct SelfStartWitnessDto {
    pub sigma: Vec<usize>,
    pub cone_certificates: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct ReasonDto {
    pub kind: &'static str,
    pub species: Option<String>,
}

#[derive(Serialize)]
pub struct IrreducibleDto {
    pub value: &'static str,
    pub lcn_irreducible: &'static str,
    pub self_starting: &'static str,
    pub self_stopping: &'static str,
}

#[derive(Serialize)]
pub struct RecurrentDto {
    pub value: &'static str,
    pub route: &'static str,
    pub reversal_paths: Option<Vec<Vec<usize>>>,
    pub kernel: Option<Vec<String>>,
    pub pivot: Option<Vec<String>>,
    pub outbound: Option<Vec<usize>>,
    pub inbound: Option<Vec<usize>>,
    pub reaction: Option<usize>,
    pub closed_set: Option<Vec<Vec<String>>>,
    pub unresolved: Option<Vec<usize>>,
}

#[derive(Serialize)]
pub struct WitnessDto {
    pub kernel: Vec<String>,
    pub threshold: Vec<String>,
    pub axis_moves: Vec<AxisMoveDto>,
}

#[derive(Serialize)]
pub struct AxisMoveDto {
    pub species: String,
    pub positive: bool,
    pub multiplicity: Vec<String>,
    pub ordering: Vec<usize>,
}

#[derive(Serialize)]
pub struct WitnessFileDto {
    pub schema_version: u32,
    pub species: Vec<String>,
    pub lcn_witness: Option<WitnessDto>,
}

fn pos_span_dto(drn: &Drn, report: &PosSpanReport) -> PosSpanDto {
    let (kernel, kernel_farkas) = match &report.kernel {
        ZeroInPosSpan::Feasible(k) => (Some(bigs(k)), None),
        ZeroInPosSpan::Infeasible(y) => (None, Some(rats(y))),
    };
    PosSpanDto {
        full: report.is_full(),
        kernel,
        kernel_farkas,
        axis_solutions: report
            .axis_solutions
            .iter()
            .map(|s| AxisSolutionDto {
                species: drn.species()[s.axis].clone(),
                positive: s.positive,
                coefficients: rats(&s.coefficients),
            })
            .collect(),
        failing_axis: report.failing_axis.as_ref().map(|f| FailedAxisDto {
            species: drn.species()[f.axis].clone(),
            positive: f.positive,
            farkas: rats(&f.certificate),
        }),
    }
}

fn self_start_dto(drn: &Drn, verdict: &Verdict<SelfStartEvidence>) -> SelfStartDto {
    let (witness, reason) = match &verdict.evidence {
        SelfStartEvidence::Witness(w) => (
            Some(SelfStartWitnessDto {
                sigma: w.sigma.iter().map(|&j| j + 1).collect(),
                cone_certificates: w.cone_certificates.iter().map(|c| rats(c)).collect(),
            }),
            None,
        ),
        SelfStartEvidence::NoZeroOriginReaction => {
            (None, Some(ReasonDto { kind: "no-reaction-at-zero", species: None }))
        }
        SelfStartEvidence::UncoveredAxis { axis } => (
            None,
            Some(ReasonDto {
                kind: "species-never-produced",
                species: Some(drn.species()[*axis].clone()),
            }),
        ),
        SelfStartEvidence::SearchExhausted => {
            (None, Some(ReasonDto { kind: "search-exhausted", species: None }))
        }
    };
    SelfStartDto { value: value_str(verdict.value), witness, reason }
}

fn recurrent_dto(verdict: &Verdict<RecurrenceEvidence>) -> RecurrentDto {
    let mut dto = RecurrentDto {
        value: value_str(verdict.value),
        route: "",
        reversal_paths: None,
        kernel: None,
        pivot: None,
        outbound: None,
        inbound: None,
        reaction: None,
        closed_set: None,
        unresolved: None,
    };
    match &verdict.evidence {
        RecurrenceEvidence::WeaklyReversible => dto.route = "weakly-reversible",
        RecurrenceEvidence::ReactionReversals(paths) => {
            dto.route = "reaction-reversals";
            dto.reversal_paths = Some(paths.iter().map(path_dto).collect());
        }
        RecurrenceEvidence::SelfRecurrent { kernel, pivot, outbound, inbound } => {
            dto.route = "self-recurrent";
            dto.kernel = Some(bigs(kernel));
            dto.pivot = Some(state_dto(pivot));
            dto.outbound = Some(path_dto(outbound));
            dto.inbound = Some(path_dto(inbound));
        }
        RecurrenceEvidence::ImpliedByIrreducibility => dto.route = "implied-by-irreducibility",
        RecurrenceEvidence::NotRecurrent { reaction, closed_set } => {
            dto.route = "not-recurrent";
            dto.reaction = Some(reaction + 1);
            dto.closed_set = Some(closed_set.iter().map(state_dto).collect());
        }
        RecurrenceEvidence::BudgetExhausted { unresolved } => {
            dto.route = "budget-exhausted";
            dto.unresolved = Some(unresolved.iter().map(|&j| j + 1).collect());
        }
    }
    dto
}

pub fn witness_dto(drn: &Drn, witness: &LcnWitness) -> WitnessDto {
    WitnessDto {
        kernel: bigs(&witness.kernel),
        threshold: bigs(&witness.threshold),
        axis_moves: witness
            .axis_moves
            .iter()
            .map(|mv| AxisMoveDto {
                species: drn.species()[mv.axis].clone(),
                positive: mv.positive,
                multiplicity: bigs(mv.multiplicity.counts()),
                ordering: path_dto(&mv.ordering),
            })
            .collect(),
    }
}

pub fn report_dto(drn: &Drn, report: &AnalysisReport) -> ReportDto {
    ReportDto {
        schema_version: SCHEMA_VERSION,
        species: drn.species().to_vec(),
        reactions: drn.size(),
        lcn_irreducible: LcnIrreducibleDto {
            value: value_str(report.lcn_irreducible.value),
            positive_span: pos_span_dto(drn, &report.lcn_irreducible.evidence.pos_span),
            lattice: LatticeDto {
                dimension: report.lcn_irreducible.evidence.lattice.dimension,
                rank: report.lcn_irreducible.evidence.lattice.rank,
                pivots: bigs(&report.lcn_irreducible.evidence.lattice.pivots),
                full: report.lcn_irreducible.evidence.lattice.is_full(),
                index: report
                    .lcn_irreducible
                    .evidence
                    .lattice
                    .lattice_index()
                    .map(|i| i.to_string()),
            },
        },
        lcn_recurrent: match &report.lcn_recurrent.evidence {
            ZeroInPosSpan::Feasible(k) => LcnRecurrentDto {
                value: value_str(report.lcn_recurrent.value),
                kernel: Some(bigs(k)),
                farkas: None,
            },
            ZeroInPosSpan::Infeasible(y) => LcnRecurrentDto {
                value: value_str(report.lcn_recurrent.value),
                kernel: None,
                farkas: Some(rats(y)),
            },
        },
        self_starting: self_start_dto(drn, &report.self_starting),
        self_stopping: self_start_dto(drn, &report.self_stopping),
        irreducible: IrreducibleDto {
            value: value_str(report.irreducible.value),
            lcn_irreducible: value_str(report.irreducible.evidence.lcn_irreducible),
            self_starting: value_str(report.irreducible.evidence.self_starting),
            self_stopping: value_str(report.irreducible.evidence.self_stopping),
        },
        weakly_reversible: report.weakly_reversible,
        recurrent: recurrent_dto(&report.recurrent),
        lcn_witness: report.lcn_witness.as_ref().map(|w| witness_dto(drn, w)),
    }
}
