//! End-to-end orchestration: one config in, a fully verified system and a
//! deterministic JSON report out. The CLI is a thin wrapper around this.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Field, FieldError};
use crate::ktheory::{
    identity_order_with, k0_group_with, relation_matrix, verify_sum_identities, K0Group,
    RelationSet,
};
use crate::intlat::{ElementOrder, PivotStrategy};
use crate::plane::{PairingKind, PlaneError, PlaneModel};
use crate::presentation::{
    BasicSubset, Corner, PresentationError, TrianglePresentation, TypedPresentation,
};
use crate::report::VerificationReport;
use crate::subshift::{
    build_transition_matrices, calibrate_shift_rule, verify_h, verify_h3_bounded, verify_lemma2,
    BitMatrix, ShiftRule, SubshiftError,
};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Subshift(#[from] SubshiftError),
}

/// Splits q into (p, k) with q = p^k, or None when q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut v = q;
            let mut k = 0;
            while v % p == 0 {
                v /= p;
                k += 1;
            }
            return (v == 1).then_some((p, k));
        }
        p += 1;
    }
    Some((q, 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShiftRuleChoice {
    /// Calibrate against the q^2 regularity, H1, and Lemma 2 gates.
    Auto,
    /// The uncorrected rule: no rotation exclusions.
    Literal,
    BothExclusions,
}

impl Default for ShiftRuleChoice {
    fn default() -> Self {
        ShiftRuleChoice::Auto
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub p: u64,
    pub k: usize,
    /// Defining polynomial of F_{p^{3k}}, constant term first; None picks
    /// the deterministic default.
    pub modulus: Option<Vec<u64>>,
    pub pairing: PairingKind,
    pub shift_rule: ShiftRuleChoice,
    pub h3_bound: usize,
    pub relations: RelationSet,
}

impl RunConfig {
    pub fn for_q(q: u64) -> Result<RunConfig, PipelineError> {
        let (p, k) = prime_power(q).ok_or(PipelineError::NotAPrimePower(q))?;
        Ok(RunConfig {
            p,
            k,
            modulus: None,
            pairing: PairingKind::default(),
            shift_rule: ShiftRuleChoice::default(),
            h3_bound: 2,
            relations: RelationSet::default(),
        })
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.k as u32)
    }
}

/// Everything the verification and K-theory stages consume, built once.
pub struct BuiltSystem {
    pub config: RunConfig,
    pub field: Field,
    pub plane: PlaneModel,
    pub t1: TypedPresentation,
    pub basic: BasicSubset,
    pub rule: ShiftRule,
    pub m1: BitMatrix,
    pub m2: BitMatrix,
}

pub fn build_system(config: RunConfig) -> Result<BuiltSystem, PipelineError> {
    let field = Field::new(config.p, 3 * config.k, config.modulus.as_deref())?;
    let plane = PlaneModel::build(&field, config.pairing)?;
    let t0 = TrianglePresentation::build(&plane)?;
    let t1 = TypedPresentation::build(t0);
    let basic = BasicSubset::with_defaults(&t1)?;
    let rule = match config.shift_rule {
        ShiftRuleChoice::Auto => calibrate_shift_rule(&t1)?,
        ShiftRuleChoice::Literal => ShiftRule::LITERAL,
        ShiftRuleChoice::BothExclusions => ShiftRule::BOTH_EXCLUSIONS,
    };
    let (m1, m2) = build_transition_matrices(&t1, rule);
    Ok(BuiltSystem {
        config,
        field,
        plane,
        t1,
        basic,
        rule,
        m1,
        m2,
    })
}

/// One verdict per named check; serialized field order is fixed, so equal
/// configs yield byte-identical reports.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Checks {
    pub plane_axioms: bool,
    pub polygonal_axioms: bool,
    pub link_graphs: bool,
    pub lemma1: bool,
    pub h0: bool,
    pub h1a: bool,
    pub h1b: bool,
    pub h2: bool,
    pub h3_bound: bool,
    pub lemma2: bool,
    pub sum_identities: bool,
}

impl Checks {
    pub fn all_passed(&self) -> bool {
        self.plane_axioms
            && self.polygonal_axioms
            && self.link_graphs
            && self.lemma1
            && self.h0
            && self.h1a
            && self.h1b
            && self.h2
            && self.h3_bound
            && self.lemma2
            && self.sum_identities
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct K0Report {
    pub q: u64,
    pub p: u64,
    pub k: usize,
    pub modulus: Vec<u64>,
    pub pairing: PairingKind,
    pub shift_rule: String,
    pub h3_bound: usize,
    pub relation_set: RelationSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<K0Summary>,
    pub checks: Checks,
    /// One line per individual sub-check, with witnesses on failures.
    pub detail: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct K0Summary {
    pub invariant_factors: Vec<String>,
    pub free_rank: usize,
    pub identity_order: String,
}

impl BuiltSystem {
    /// Runs the complete verification suite.
    pub fn verify_all(&self) -> (Checks, Vec<VerificationReport>) {
        let mut reports = Vec::new();

        let plane_rep = self.plane.verify_axioms();
        let incidence_rep = self
            .plane
            .incidence_graph()
            .verify_generalized_mgon(3, self.plane.q());
        let poly_rep = self.t1.t0().verify_polygonal_axioms(&self.plane);
        let typed_rep = self.t1.verify_typed_invariants();

        let mut links_rep = VerificationReport::new("link graphs");
        for (corner, name) in [(Corner::Ab, "AB"), (Corner::Bc, "BC"), (Corner::Ca, "CA")] {
            let g = self.t1.link_graph(corner);
            let rep = g.verify_generalized_mgon(3, self.plane.q());
            links_rep.record(
                format!("corner {name} link is a generalized triangle"),
                rep.passed() && g.duplicate_edges().is_empty(),
                rep.first_failure()
                    .map(|c| c.name.clone())
                    .unwrap_or_else(|| "repeated edge".to_string()),
            );
        }

        let lemma1_rep = self.basic.verify_balanced(&self.t1);
        let h_rep = verify_h(&self.m1, &self.m2, self.plane.q());
        let h3_rep = verify_h3_bounded(&self.m1, &self.m2, self.config.h3_bound);
        let lemma2_rep = verify_lemma2(&self.t1, &self.basic, &self.m1);
        let sums_rep = verify_sum_identities(&self.t1, &self.basic, &self.m1, &self.m2);

        let find = |rep: &VerificationReport, needle: &str| {
            rep.checks
                .iter()
                .filter(|c| c.name.starts_with(needle))
                .all(|c| c.passed)
                && rep.checks.iter().any(|c| c.name.starts_with(needle))
        };
        let checks = Checks {
            plane_axioms: plane_rep.passed() && incidence_rep.passed(),
            polygonal_axioms: poly_rep.passed() && typed_rep.passed(),
            link_graphs: links_rep.passed(),
            lemma1: lemma1_rep.passed(),
            h0: find(&h_rep, "H0"),
            h1a: find(&h_rep, "H1a"),
            h1b: find(&h_rep, "H1b"),
            h2: find(&h_rep, "H2") && find(&h_rep, "interchange"),
            h3_bound: h3_rep.passed(),
            lemma2: lemma2_rep.passed(),
            sum_identities: sums_rep.passed(),
        };
        reports.extend([
            plane_rep,
            incidence_rep,
            poly_rep,
            typed_rep,
            links_rep,
            lemma1_rep,
            h_rep,
            h3_rep,
            lemma2_rep,
            sums_rep,
        ]);
        (checks, reports)
    }

    pub fn k0_summary(&self, strategy: PivotStrategy) -> K0Summary {
        let r = relation_matrix(&self.m1, &self.m2, self.config.relations);
        let group: K0Group = k0_group_with(&r, strategy);
        let order: ElementOrder =
            identity_order_with(&self.m1, &self.m2, self.config.relations, strategy)
                .expect("dimensions agree by construction");
        K0Summary {
            invariant_factors: group.invariant_factors,
            free_rank: group.free_rank,
            identity_order: order.to_string(),
        }
    }

    /// Full report: config echo, check verdicts, and (optionally) the
    /// group structure.
    pub fn report(&self, with_group: bool) -> K0Report {
        let (checks, reports) = self.verify_all();
        let mut detail = Vec::new();
        for rep in &reports {
            for line in rep.summary_lines() {
                detail.push(format!("[{}] {}", rep.title, line));
            }
        }
        K0Report {
            q: self.config.q(),
            p: self.config.p,
            k: self.config.k,
            modulus: self.field.modulus().to_vec(),
            pairing: self.config.pairing,
            shift_rule: self.rule.label(),
            h3_bound: self.config.h3_bound,
            relation_set: self.config.relations,
            group: with_group.then(|| self.k0_summary(PivotStrategy::MinAbs)),
            checks,
            detail,
        }
    }
}

pub fn report_to_json(report: &K0Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(5), Some((5, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(0), None);
    }

    #[test]
    fn full_pipeline_q2() {
        let sys = build_system(RunConfig::for_q(2).unwrap()).unwrap();
        assert_eq!(sys.t1.len(), 63);
        let (checks, _) = sys.verify_all();
        assert!(checks.all_passed(), "{checks:?}");
        let report = sys.report(true);
        let group = report.group.unwrap();
        assert_eq!(group.identity_order, "1");
    }

    #[test]
    fn report_is_deterministic() {
        let a = build_system(RunConfig::for_q(2).unwrap()).unwrap();
        let b = build_system(RunConfig::for_q(2).unwrap()).unwrap();
        assert_eq!(
            report_to_json(&a.report(false)),
            report_to_json(&b.report(false))
        );
    }

    #[test]
    fn non_prime_power_rejected() {
        assert!(matches!(
            RunConfig::for_q(6),
            Err(PipelineError::NotAPrimePower(6))
        ));
    }
}
