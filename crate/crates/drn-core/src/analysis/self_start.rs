//! The self-starting property: reactions can be switched on one species at a
//! time starting from nothing.
//!
//! A network self-starts when there is a sequence `σ(1), …, σ(d)` of
//! reactions such that `σ(1)` fires at the zero state, the origin of each
//! later `σ(k)` is a nonnegative combination of the drifts of its
//! predecessors, and every species is strictly produced by some reaction in
//! the sequence. Self-stopping is the same property of the inverse network.
//!
//! The search runs over sequences of *distinct* reactions: repeating a
//! reaction never grows the cone of available drifts nor the set of produced
//! species, so a valid sequence with repeats stays valid after dropping them,
//! and a short distinct sequence is padded back to length `d` by repeating
//! its last reaction (whose origin stays in the grown cone). On top of that
//! the search tries reactions producing the most still-missing species
//! first, memoizes failed reaction sets, skips reactions that neither
//! produce a missing species nor grow the cone, and abandons branches where
//! the remaining positions cannot cover the missing species even at the best
//! per-reaction rate.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::exactmath::{lp_feasible, row_combination_problem, LpOutcome, Rational};
use crate::model::Drn;
use crate::vecutil;

use super::{Verdict, VerdictValue};

/// Why a network does or does not self-start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelfStartEvidence {
    /// A full switching sequence with one cone certificate per position.
    Witness(SelfStartWitness),
    /// No reaction is applicable at the zero state.
    NoZeroOriginReaction,
    /// No reaction strictly produces this species, so no sequence can.
    UncoveredAxis { axis: usize },
    /// The exhaustive search over admissible sequences found none that
    /// produces every species; this disproves the property.
    SearchExhausted,
}

/// A switching sequence `σ` of length `d` over reaction indices, plus for
/// each position `k ≥ 2` nonnegative coefficients expressing the origin of
/// `σ(k)` over the drifts of `σ(1), …, σ(k−1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfStartWitness {
    pub sigma: Vec<usize>,
    pub cone_certificates: Vec<Vec<Rational>>,
}

impl SelfStartWitness {
    /// Re-checks the witness against the network by substitution.
    pub fn verify(&self, drn: &Drn) -> Result<(), String> {
        let d = drn.dim();
        let n = drn.size();
        if self.sigma.len() != d {
            return Err(format!("sequence has length {}, expected {d}", self.sigma.len()));
        }
        if let Some(&j) = self.sigma.iter().find(|&&j| j >= n) {
            return Err(format!("reaction index {j} out of range"));
        }
        if !vecutil::is_zero(drn.origin(self.sigma[0])) {
            return Err("first reaction does not fire at the zero state".into());
        }
        for axis in 0..d {
            if !self.sigma.iter().any(|&j| drn.drift(j)[axis].is_positive()) {
                return Err(format!("no reaction in the sequence produces species {axis}"));
            }
        }
        if self.cone_certificates.len() != d - 1 {
            return Err(format!(
                "expected {} cone certificates, found {}",
                d - 1,
                self.cone_certificates.len()
            ));
        }
        for k in 2..=d {
            let cert = &self.cone_certificates[k - 2];
            if cert.len() != k - 1 {
                return Err(format!("certificate for position {k} has length {}", cert.len()));
            }
            if cert.iter().any(|c| c.is_negative()) {
                return Err(format!("certificate for position {k} has a negative coefficient"));
            }
            let origin = drn.origin(self.sigma[k - 1]);
            for axis in 0..d {
                let combined: Rational = (0..k - 1)
                    .map(|t| &cert[t] * Rational::from_integer(drn.drift(self.sigma[t])[axis].clone()))
                    .sum();
                if combined != Rational::from_integer(origin[axis].clone()) {
                    return Err(format!(
                        "certificate for position {k} misses the origin at species {axis}"
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Is `target` a nonnegative combination of the drifts of `rows`?
fn in_cone(drn: &Drn, rows: &[usize], target: &[BigInt]) -> bool {
    let m: Vec<Vec<BigInt>> = rows.iter().map(|&j| drn.drift(j).to_vec()).collect();
    let problem = row_combination_problem(&m, drn.dim(), target, false);
    matches!(lp_feasible(&problem), LpOutcome::Feasible(_))
}

struct Search<'a> {
    drn: &'a Drn,
    /// Species strictly produced by each reaction.
    positive_axes: Vec<Vec<usize>>,
    chosen: Vec<usize>,
    in_use: Vec<bool>,
    /// Per species, how many chosen reactions produce it.
    cover_count: Vec<usize>,
    covered: usize,
    failed: HashSet<Vec<bool>>,
}

impl Search<'_> {
    fn run(&mut self) -> bool {
        let d = self.drn.dim();
        if self.covered == d {
            return true;
        }
        if self.chosen.len() == d || self.failed.contains(&self.in_use) {
            return false;
        }

        // Even covering the best cmax missing species per step, the
        // remaining positions cannot reach full coverage.
        let slots = d - self.chosen.len();
        let missing = d - self.covered;
        let cmax = (0..self.drn.size())
            .filter(|&j| !self.in_use[j])
            .map(|j| self.gains(j))
            .max()
            .unwrap_or(0);
        if missing > slots * cmax {
            self.failed.insert(self.in_use.clone());
            return false;
        }

        // Reactions producing the most missing species first, ties by
        // index; cone-growing but non-covering reactions come last. The
        // stable sort keeps candidate order deterministic.
        let mut candidates: Vec<(usize, usize)> = (0..self.drn.size())
            .filter(|&j| !self.in_use[j])
            .map(|j| (j, self.gains(j)))
            .collect();
        candidates.sort_by(|a, b| b.1.cmp(&a.1));

        for (j, gains) in candidates {
            if !self.admissible(j) {
                continue;
            }
            if gains == 0 && self.redundant_drift(j) {
                continue;
            }
            self.select(j);
            if self.run() {
                return true;
            }
            self.unselect(j);
        }
        self.failed.insert(self.in_use.clone());
        false
    }

    fn gains(&self, j: usize) -> usize {
        self.positive_axes[j].iter().filter(|&&axis| self.cover_count[axis] == 0).count()
    }

    fn admissible(&self, j: usize) -> bool {
        if self.chosen.is_empty() {
            vecutil::is_zero(self.drn.origin(j))
        } else {
            in_cone(self.drn, &self.chosen, self.drn.origin(j))
        }
    }

    /// Selecting `j` would neither produce a missing species nor grow the
    /// cone of drifts, so any sequence through `j` works without it.
    fn redundant_drift(&self, j: usize) -> bool {
        if self.chosen.is_empty() {
            vecutil::is_zero(self.drn.drift(j))
        } else {
            in_cone(self.drn, &self.chosen, self.drn.drift(j))
        }
    }

    fn select(&mut self, j: usize) {
        self.chosen.push(j);
        self.in_use[j] = true;
        for &axis in &self.positive_axes[j] {
            if self.cover_count[axis] == 0 {
                self.covered += 1;
            }
            self.cover_count[axis] += 1;
        }
    }

    fn unselect(&mut self, j: usize) {
        self.chosen.pop();
        self.in_use[j] = false;
        for &axis in &self.positive_axes[j] {
            self.cover_count[axis] -= 1;
            if self.cover_count[axis] == 0 {
                self.covered -= 1;
            }
        }
    }
}

fn certificates_for(drn: &Drn, sigma: &[usize]) -> Vec<Vec<Rational>> {
    let d = drn.dim();
    (2..=d)
        .map(|k| {
            let rows: Vec<Vec<BigInt>> =
                sigma[..k - 1].iter().map(|&j| drn.drift(j).to_vec()).collect();
            let problem = row_combination_problem(&rows, d, drn.origin(sigma[k - 1]), false);
            match lp_feasible(&problem) {
                LpOutcome::Feasible(x) => x,
                LpOutcome::Infeasible(_) => {
                    unreachable!("cone membership was established during the search")
                }
            }
        })
        .collect()
}

/// Decides whether the network self-starts. Always terminates; a `False`
/// verdict is a disproof, not a timeout.
pub fn is_self_starting(drn: &Drn) -> Verdict<SelfStartEvidence> {
    let n = drn.size();
    let d = drn.dim();

    if !(0..n).any(|j| vecutil::is_zero(drn.origin(j))) {
        return Verdict {
            value: VerdictValue::False,
            evidence: SelfStartEvidence::NoZeroOriginReaction,
        };
    }
    for axis in 0..d {
        if !(0..n).any(|j| drn.drift(j)[axis].is_positive()) {
            return Verdict {
                value: VerdictValue::False,
                evidence: SelfStartEvidence::UncoveredAxis { axis },
            };
        }
    }

    let positive_axes = (0..n)
        .map(|j| (0..d).filter(|&axis| drn.drift(j)[axis].is_positive()).collect())
        .collect();
    let mut search = Search {
        drn,
        positive_axes,
        chosen: Vec::new(),
        in_use: vec![false; n],
        cover_count: vec![0; d],
        covered: 0,
        failed: HashSet::new(),
    };
    if !search.run() {
        return Verdict { value: VerdictValue::False, evidence: SelfStartEvidence::SearchExhausted };
    }

    let mut sigma = search.chosen;
    let last = *sigma.last().expect("a covering sequence is nonempty");
    sigma.resize(d, last);
    let cone_certificates = certificates_for(drn, &sigma);
    let witness = SelfStartWitness { sigma, cone_certificates };
    debug_assert_eq!(witness.verify(drn), Ok(()));
    Verdict { value: VerdictValue::True, evidence: SelfStartEvidence::Witness(witness) }
}

/// Decides whether the network self-stops, i.e. whether the inverse network
/// self-starts. Witness indices refer to reactions of the inverse network,
/// which are numbered like the original ones.
pub fn is_self_stopping(drn: &Drn) -> Verdict<SelfStartEvidence> {
    is_self_starting(&drn.inverse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_network;
    use num_traits::{One, Zero};

    /// Brute-force oracle: try every sequence `[d] → [n]`, checking
    /// admissibility by LP and coverage directly.
    fn exists_by_enumeration(drn: &Drn) -> bool {
        let n = drn.size();
        let d = drn.dim();
        if n == 0 {
            return false;
        }
        let mut sigma = vec![0usize; d];
        loop {
            if valid_sequence(drn, &sigma) {
                return true;
            }
            // Odometer over [0; n-1]^d.
            let mut pos = 0;
            loop {
                if pos == d {
                    return false;
                }
                sigma[pos] += 1;
                if sigma[pos] < n {
                    break;
                }
                sigma[pos] = 0;
                pos += 1;
            }
        }
    }

    fn valid_sequence(drn: &Drn, sigma: &[usize]) -> bool {
        let d = drn.dim();
        if !vecutil::is_zero(drn.origin(sigma[0])) {
            return false;
        }
        for k in 2..=d {
            if !in_cone(drn, &sigma[..k - 1], drn.origin(sigma[k - 1])) {
                return false;
            }
        }
        (0..d).all(|axis| sigma.iter().any(|&j| drn.drift(j)[axis].is_positive()))
    }

    fn assert_matches_oracle(input: &str) -> Verdict<SelfStartEvidence> {
        let drn = parse_network(input).unwrap();
        let verdict = is_self_starting(&drn);
        assert_eq!(
            verdict.value == VerdictValue::True,
            exists_by_enumeration(&drn),
            "decision disagrees with enumeration on {input:?}"
        );
        if let SelfStartEvidence::Witness(w) = &verdict.evidence {
            assert_eq!(w.verify(&drn), Ok(()));
        }
        verdict
    }

    #[test]
    fn branching_network_starts_with_the_source_reaction() {
        let verdict = assert_matches_oracle("0 -> 2 A\nA + B -> 0\n5 A -> 4 A + 3 B\n");
        match verdict.evidence {
            SelfStartEvidence::Witness(w) => {
                assert_eq!(w.sigma, vec![0, 2]);
                assert_eq!(
                    w.cone_certificates,
                    vec![vec![Rational::new(BigInt::from(5), BigInt::from(2))]]
                );
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn no_reaction_fires_at_zero() {
        let verdict = assert_matches_oracle("A -> 2 A\n");
        assert_eq!(verdict.value, VerdictValue::False);
        assert_eq!(verdict.evidence, SelfStartEvidence::NoZeroOriginReaction);
    }

    #[test]
    fn species_nobody_produces() {
        let verdict = assert_matches_oracle("0 -> A\nA + B -> A\n");
        assert_eq!(verdict.value, VerdictValue::False);
        assert_eq!(verdict.evidence, SelfStartEvidence::UncoveredAxis { axis: 1 });
    }

    #[test]
    fn producer_that_can_never_be_switched_on() {
        // B is produced only by a reaction whose origin never enters the
        // cone of what fires before it.
        let verdict = assert_matches_oracle("0 -> A\nB -> 2 B\n");
        assert_eq!(verdict.value, VerdictValue::False);
        assert_eq!(verdict.evidence, SelfStartEvidence::SearchExhausted);
    }

    #[test]
    fn short_covering_sequences_are_padded() {
        let verdict = assert_matches_oracle("0 -> A + B + C\nA -> 2 A\n");
        match verdict.evidence {
            SelfStartEvidence::Witness(w) => {
                assert_eq!(w.sigma, vec![0, 0, 0]);
                assert_eq!(w.cone_certificates.len(), 2);
                assert!(w.cone_certificates.iter().all(|c| c.iter().all(Zero::is_zero)));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn self_stopping_goes_through_the_inverse() {
        let drn = parse_network("0 -> 2 A\nA + B -> 0\n5 A -> 4 A + 3 B\n").unwrap();
        let verdict = is_self_stopping(&drn);
        assert_eq!(verdict.value, VerdictValue::True);
        match verdict.evidence {
            SelfStartEvidence::Witness(w) => {
                // The inverse of A + B -> 0 fires at zero and refills both
                // species at once.
                assert_eq!(w.sigma, vec![1, 1]);
                assert_eq!(w.verify(&drn.inverse()), Ok(()));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn ordering_matters_between_producers() {
        // B's producer needs A first; enumeration confirms sequencing works.
        let verdict = assert_matches_oracle("0 -> A\nA -> A + B\n");
        match verdict.evidence {
            SelfStartEvidence::Witness(w) => assert_eq!(w.sigma, vec![0, 1]),
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn verify_rejects_tampering() {
        let drn = parse_network("0 -> A\nA -> A + B\n").unwrap();
        let verdict = is_self_starting(&drn);
        let witness = match verdict.evidence {
            SelfStartEvidence::Witness(w) => w,
            other => panic!("expected a witness, got {other:?}"),
        };

        let mut wrong = witness.clone();
        wrong.sigma = vec![1, 0];
        assert!(wrong.verify(&drn).is_err());

        let mut wrong = witness.clone();
        wrong.cone_certificates[0][0] += Rational::one();
        assert!(wrong.verify(&drn).is_err());

        let mut wrong = witness.clone();
        wrong.sigma.pop();
        assert!(wrong.verify(&drn).is_err());

        let mut wrong = witness;
        wrong.cone_certificates.clear();
        assert!(wrong.verify(&drn).is_err());
    }

    #[test]
    fn redundant_rows_are_skipped_not_lost() {
        // Row 1 duplicates row 0's drift; the sequence still only needs the
        // genuinely new producers.
        let verdict = assert_matches_oracle("0 -> A\n0 -> A\nA -> A + B\n");
        match verdict.evidence {
            SelfStartEvidence::Witness(w) => {
                assert_eq!(w.sigma, vec![0, 2]);
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }
}
