use serde::Serialize;

use super::{replay, CheckScope, Checker};
use crate::error::{Error, Result};
use crate::fusion::FusionOperator;
use crate::verdict::{PostulateId, Verdict, Witness};

/// Syntactic postulates paired with their semantic characterizations.
pub const EQUIVALENCES: [(PostulateId, PostulateId); 9] = [
    (PostulateId::ESF5, PostulateId::P1),
    (PostulateId::ESF6, PostulateId::P2),
    (PostulateId::ESF7, PostulateId::P3),
    (PostulateId::ESF8, PostulateId::P4),
    (PostulateId::ESF8W, PostulateId::P4W),
    (PostulateId::U, PostulateId::SemU),
    (PostulateId::P, PostulateId::SemP),
    (PostulateId::I, PostulateId::SemInd),
    (PostulateId::D, PostulateId::SemD),
];

/// Seed for the sampled table spot checks unless one is given.
pub const SAMPLE_SEED: u64 = 0x5eed_0f_7ab1e5;

#[derive(Debug, Clone, Serialize)]
pub struct CrossValidation {
    pub operator: String,
    pub syntactic: PostulateId,
    pub semantic: PostulateId,
    pub syntactic_verdict: Verdict,
    pub semantic_verdict: Verdict,
    /// Full and two-model forms at the verification scope, where a reduction exists.
    pub reduction: Option<(Verdict, Verdict)>,
    pub samples_checked: usize,
    pub defects: Vec<String>,
}

impl CrossValidation {
    pub fn agree(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn verdict(&self) -> Verdict {
        if self.agree() {
            Verdict::Satisfied {
                scope: format!(
                    "{} and {} agree ({}), {} sampled table entries confirmed",
                    self.syntactic,
                    self.semantic,
                    self.syntactic_verdict.status_str(),
                    self.samples_checked
                ),
            }
        } else {
            Verdict::violated(Witness::noted(self.defects.join("; ")))
        }
    }
}

fn same_status(a: &Verdict, b: &Verdict) -> bool {
    a.is_satisfied() == b.is_satisfied() && a.is_violated() == b.is_violated()
}

/// Runs a syntactic postulate and its semantic counterpart and reports any
/// disagreement, non-replaying witness or table inconsistency as a defect.
pub fn cross_validate(
    op: &FusionOperator,
    pair: (PostulateId, PostulateId),
    scope: &CheckScope,
    sample_budget: usize,
) -> Result<CrossValidation> {
    cross_validate_seeded(op, pair, scope, sample_budget, SAMPLE_SEED)
}

/// [`cross_validate`] with an explicit seed for the sampled spot checks.
pub fn cross_validate_seeded(
    op: &FusionOperator,
    pair: (PostulateId, PostulateId),
    scope: &CheckScope,
    sample_budget: usize,
    seed: u64,
) -> Result<CrossValidation> {
    if !EQUIVALENCES.contains(&pair) {
        return Err(Error::Invalid(format!("{} and {} are not a known equivalence", pair.0, pair.1)));
    }
    let checker = Checker::new(op, scope)?;
    let (syn, sem) = (checker.check(pair.0)?, checker.check(pair.1)?);
    let mut defects = Vec::new();
    if !same_status(&syn, &sem) {
        defects.push(format!("{} is {} but {} is {}", pair.0, syn.status_str(), pair.1, sem.status_str()));
    }
    for (id, v) in [(pair.0, &syn), (pair.1, &sem)] {
        if let Some(w) = v.witness() {
            if !replay(op, id, w)? {
                defects.push(format!("{id} witness does not replay"));
            }
        }
    }
    let reduction = if matches!(pair.0, PostulateId::U | PostulateId::P | PostulateId::I | PostulateId::D) {
        let (full, reduced) = Checker::new(op, &scope.verify_only())?.check_reduction(pair.0)?;
        if !same_status(&full, &reduced) {
            defects.push(format!(
                "{}: full form is {} but the two-model form is {}",
                pair.0,
                full.status_str(),
                reduced.status_str()
            ));
        }
        Some((full, reduced))
    } else {
        None
    };
    let samples_checked = match checker.spot_check_tables(sample_budget, seed) {
        Ok(n) => n,
        Err(e) => {
            defects.push(e.to_string());
            0
        }
    };
    Ok(CrossValidation {
        operator: op.name().to_string(),
        syntactic: pair.0,
        semantic: pair.1,
        syntactic_verdict: syn,
        semantic_verdict: sem,
        reduction,
        samples_checked,
        defects,
    })
}
