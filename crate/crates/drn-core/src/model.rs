//! Data model for discrete reaction networks: the network itself, population
//! states, reaction paths, reaction multiplicities, and the basic transition
//! semantics everything else builds on.
//!
//! Conventions: reactions and species are 0-based throughout the API;
//! human-facing messages (errors, path rendering) number reactions from 1 and
//! name species where a network is in scope.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::vecutil;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("species list is empty")]
    NoSpecies,
    #[error("species name at position {position} is empty")]
    EmptySpeciesName { position: usize },
    #[error("duplicate species name `{name}`")]
    DuplicateSpecies { name: String },
    #[error("drift matrix has {drift_rows} rows but origin matrix has {origin_rows}")]
    RowCountMismatch { drift_rows: usize, origin_rows: usize },
    #[error("reaction {reaction}: expected {expected} columns, found {found}")]
    RowWidthMismatch { reaction: usize, expected: usize, found: usize },
    #[error("reaction {reaction}: origin of species `{species}` is negative ({value})")]
    NegativeOrigin { reaction: usize, species: String, value: BigInt },
    #[error(
        "reaction {reaction} drives species `{species}` negative: \
         origin {origin} plus drift {drift} is below zero"
    )]
    NegativeReactionResult { reaction: usize, species: String, origin: BigInt, drift: BigInt },
    #[error("expected a vector of dimension {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("population at component {component} is negative ({value})")]
    NegativePopulation { component: usize, value: BigInt },
    #[error("reaction index {index} out of range for a network with {size} reactions")]
    ReactionOutOfRange { index: usize, size: usize },
    #[error("reaction {reaction} not applicable: species `{species}` has {have}, needs {need}")]
    NotApplicable { reaction: usize, species: String, have: BigInt, need: BigInt },
    #[error("multiplicity of reaction {reaction} is negative ({value})")]
    NegativeMultiplicity { reaction: usize, value: BigInt },
    #[error("lowerpoint of an empty point set")]
    EmptyPointSet,
}

/// A discrete reaction network over `d` named species.
///
/// Reaction `j` fires from any state `x ⪰ origins[j]` and moves it to
/// `x + drifts[j]`. Construction enforces `origins[j] ⪰ 0` and
/// `origins[j] + drifts[j] ⪰ 0`, so a fired reaction never produces a
/// negative population.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drn {
    species: Vec<String>,
    drifts: Vec<Vec<BigInt>>,
    origins: Vec<Vec<BigInt>>,
}

impl Drn {
    pub fn new(
        species: Vec<String>,
        drifts: Vec<Vec<BigInt>>,
        origins: Vec<Vec<BigInt>>,
    ) -> Result<Self, ModelError> {
        if species.is_empty() {
            return Err(ModelError::NoSpecies);
        }
        for (i, name) in species.iter().enumerate() {
            if name.is_empty() {
                return Err(ModelError::EmptySpeciesName { position: i });
            }
        }
        let mut seen = HashSet::new();
        for name in &species {
            if !seen.insert(name.clone()) {
                return Err(ModelError::DuplicateSpecies { name: name.clone() });
            }
        }
        if drifts.len() != origins.len() {
            return Err(ModelError::RowCountMismatch {
                drift_rows: drifts.len(),
                origin_rows: origins.len(),
            });
        }
        let d = species.len();
        for matrix in [&drifts, &origins] {
            for (j, row) in matrix.iter().enumerate() {
                if row.len() != d {
                    return Err(ModelError::RowWidthMismatch {
                        reaction: j + 1,
                        expected: d,
                        found: row.len(),
                    });
                }
            }
        }
        for j in 0..origins.len() {
            for c in 0..d {
                if origins[j][c].is_negative() {
                    return Err(ModelError::NegativeOrigin {
                        reaction: j + 1,
                        species: species[c].clone(),
                        value: origins[j][c].clone(),
                    });
                }
                if (&origins[j][c] + &drifts[j][c]).is_negative() {
                    return Err(ModelError::NegativeReactionResult {
                        reaction: j + 1,
                        species: species[c].clone(),
                        origin: origins[j][c].clone(),
                        drift: drifts[j][c].clone(),
                    });
                }
            }
        }
        Ok(Drn { species, drifts, origins })
    }

    /// Number of reactions.
    pub fn size(&self) -> usize {
        self.drifts.len()
    }

    /// Number of species.
    pub fn dim(&self) -> usize {
        self.species.len()
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    pub fn drifts(&self) -> &[Vec<BigInt>] {
        &self.drifts
    }

    pub fn origins(&self) -> &[Vec<BigInt>] {
        &self.origins
    }

    pub fn drift(&self, reaction: usize) -> &[BigInt] {
        &self.drifts[reaction]
    }

    pub fn origin(&self, reaction: usize) -> &[BigInt] {
        &self.origins[reaction]
    }

    /// The network whose reaction `j` undoes reaction `j` of `self`: drift
    /// `-drifts[j]`, origin `origins[j] + drifts[j]`. Applying it twice gives
    /// back the original network, and `y` is reachable from `x` in `self`
    /// exactly when `x` is reachable from `y` in the inverse.
    pub fn inverse(&self) -> Drn {
        let drifts: Vec<Vec<BigInt>> =
            self.drifts.iter().map(|row| row.iter().map(|v| -v).collect()).collect();
        let origins: Vec<Vec<BigInt>> = self
            .origins
            .iter()
            .zip(&self.drifts)
            .map(|(o, v)| vecutil::add(o, v))
            .collect();
        Drn { species: self.species.clone(), drifts, origins }
    }

    /// Indices of the reactions applicable at `x`, ascending.
    pub fn applicable(&self, x: &State) -> Result<Vec<usize>, ModelError> {
        self.check_dim(x)?;
        Ok((0..self.size())
            .filter(|&j| vecutil::dominates(x.populations(), &self.origins[j]))
            .collect())
    }

    /// Fires reaction `reaction` at `x`.
    pub fn apply(&self, x: &State, reaction: usize) -> Result<State, ModelError> {
        self.check_dim(x)?;
        if reaction >= self.size() {
            return Err(ModelError::ReactionOutOfRange { index: reaction, size: self.size() });
        }
        let pops = x.populations();
        for c in 0..self.dim() {
            if pops[c] < self.origins[reaction][c] {
                return Err(ModelError::NotApplicable {
                    reaction: reaction + 1,
                    species: self.species[c].clone(),
                    have: pops[c].clone(),
                    need: self.origins[reaction][c].clone(),
                });
            }
        }
        Ok(State(vecutil::add(pops, &self.drifts[reaction])))
    }

    fn check_dim(&self, x: &State) -> Result<(), ModelError> {
        if x.dim() != self.dim() {
            return Err(ModelError::DimensionMismatch { expected: self.dim(), found: x.dim() });
        }
        Ok(())
    }
}

/// A population vector: one nonnegative count per species.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(Vec<BigInt>);

impl State {
    pub fn new(populations: Vec<BigInt>) -> Result<Self, ModelError> {
        for (c, p) in populations.iter().enumerate() {
            if p.is_negative() {
                return Err(ModelError::NegativePopulation { component: c, value: p.clone() });
            }
        }
        Ok(State(populations))
    }

    pub fn zero(dim: usize) -> Self {
        State(vecutil::zeros(dim))
    }

    /// For callers that have already established nonnegativity (e.g. the
    /// result of firing an applicable reaction).
    pub(crate) fn from_checked(populations: Vec<BigInt>) -> Self {
        debug_assert!(populations.iter().all(|p| !p.is_negative()));
        State(populations)
    }

    pub fn populations(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `self ⪰ other` componentwise.
    pub fn dominates(&self, other: &State) -> bool {
        self.dim() == other.dim() && vecutil::dominates(&self.0, &other.0)
    }

    /// Every component at least 1.
    pub fn strictly_positive(&self) -> bool {
        self.0.iter().all(|p| p.is_positive())
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", vecutil::display(&self.0))
    }
}

/// A finite sequence of reaction indices, applied left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(steps: Vec<usize>) -> Self {
        Path(steps)
    }

    pub fn steps(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// How many times each of the `size` reactions occurs in the path.
    pub fn multiplicity(&self, size: usize) -> Multiplicity {
        let mut counts = vecutil::zeros(size);
        for &j in &self.0 {
            counts[j] += 1;
        }
        Multiplicity(counts)
    }
}

impl fmt::Display for Path {
    /// `r1,r3,r2` with 1-based reaction numbers; empty path renders as
    /// `(empty)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(empty)");
        }
        let parts: Vec<String> = self.0.iter().map(|j| format!("r{}", j + 1)).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A count per reaction: how many times each reaction is used, order
/// forgotten.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiplicity(Vec<BigInt>);

impl Multiplicity {
    pub fn new(counts: Vec<BigInt>) -> Result<Self, ModelError> {
        for (j, c) in counts.iter().enumerate() {
            if c.is_negative() {
                return Err(ModelError::NegativeMultiplicity { reaction: j + 1, value: c.clone() });
            }
        }
        Ok(Multiplicity(counts))
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.0
    }

    pub fn total(&self) -> BigInt {
        self.0.iter().sum()
    }
}

/// Componentwise minimum of a nonempty set of integer points.
pub fn lowerpoint(points: &[Vec<BigInt>]) -> Result<Vec<BigInt>, ModelError> {
    let first = points.first().ok_or(ModelError::EmptyPointSet)?;
    let d = first.len();
    let mut low = first.clone();
    for p in &points[1..] {
        if p.len() != d {
            return Err(ModelError::DimensionMismatch { expected: d, found: p.len() });
        }
        for c in 0..d {
            if p[c] < low[c] {
                low[c] = p[c].clone();
            }
        }
    }
    Ok(low)
}

/// The `len(path) + 1` partial-sum points visited when the drifts of `path`
/// are added to `start` in order, starting with `start` itself.
/// Applicability is not checked; points may be negative.
pub fn apply_path_trace(drn: &Drn, start: &[BigInt], path: &Path) -> Vec<Vec<BigInt>> {
    assert_eq!(start.len(), drn.dim(), "start point has wrong dimension");
    let mut points = Vec::with_capacity(path.len() + 1);
    let mut current = start.to_vec();
    points.push(current.clone());
    for &j in path.steps() {
        assert!(j < drn.size(), "path step out of range");
        vecutil::add_assign(&mut current, drn.drift(j));
        points.push(current.clone());
    }
    points
}

/// `lowerpoint` of the trace of `path` from `start`; equals
/// `start + trace_lowerpoint(drn, 0, path)` componentwise.
pub fn trace_lowerpoint(drn: &Drn, start: &[BigInt], path: &Path) -> Vec<BigInt> {
    lowerpoint(&apply_path_trace(drn, start, path)).expect("trace is never empty")
}

/// Searches for an order in which the reaction uses prescribed by `lambda`
/// can all be fired starting from the point `floor`: every prefix point of
/// the trace must dominate the origin of the next reaction fired.
///
/// The search is depth-first with reactions tried in ascending index order,
/// so the returned path is the lexicographically smallest valid one. Failed
/// residual multiplicities are memoized; the prefix point is a function of
/// the residual, so the residual alone is a sound key.
pub fn find_ordering(drn: &Drn, lambda: &Multiplicity, floor: &[BigInt]) -> Option<Path> {
    assert_eq!(lambda.counts().len(), drn.size(), "multiplicity has wrong length");
    assert_eq!(floor.len(), drn.dim(), "floor has wrong dimension");
    let total = lambda.total().to_usize().expect("multiplicity total exceeds addressable path length");

    let mut remaining = lambda.counts().to_vec();
    let mut current = floor.to_vec();
    let mut steps = Vec::with_capacity(total);
    let mut dead: HashSet<Vec<BigInt>> = HashSet::new();

    fn search(
        drn: &Drn,
        remaining: &mut Vec<BigInt>,
        current: &mut Vec<BigInt>,
        steps: &mut Vec<usize>,
        dead: &mut HashSet<Vec<BigInt>>,
    ) -> bool {
        if vecutil::is_zero(remaining) {
            return true;
        }
        if dead.contains(remaining.as_slice()) {
            return false;
        }
        for j in 0..drn.size() {
            if remaining[j].is_positive() && vecutil::dominates(current, drn.origin(j)) {
                remaining[j] -= 1;
                vecutil::add_assign(current, drn.drift(j));
                steps.push(j);
                if search(drn, remaining, current, steps, dead) {
                    return true;
                }
                steps.pop();
                vecutil::sub_assign(current, drn.drift(j));
                remaining[j] += 1;
            }
        }
        dead.insert(remaining.clone());
        false
    }

    if search(drn, &mut remaining, &mut current, &mut steps, &mut dead) {
        Some(Path::new(steps))
    } else {
        None
    }
}
