//! The K0-model group of a balanced presentation: relations
//! t = sum_s M(s,t) s over the typed tiles, its invariant factors, the
//! order of the class of the identity (the all-ones vector), and the
//! three summation identities that bound that order by q-1.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::intlat::{
    element_order_with, quotient_structure, quotient_structure_with, ElementOrder, IntMatrix,
    LatticeError, PivotStrategy,
};
use crate::presentation::{BasicSubset, Pattern, TypedPresentation};
use crate::report::VerificationReport;
use crate::subshift::BitMatrix;

/// Which transition matrices contribute relation rows. M1-only is the
/// headline configuration; the others are computed for cross-examination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationSet {
    M1Only,
    M2Only,
    Both,
}

impl Default for RelationSet {
    fn default() -> Self {
        RelationSet::M1Only
    }
}

/// One row per tile t per included matrix: row(t)[s] = delta_{t,s} - M(s,t),
/// i.e. I - M^T, stacked when both matrices are included.
pub fn relation_matrix(m1: &BitMatrix, m2: &BitMatrix, set: RelationSet) -> IntMatrix {
    let dim = m1.dim();
    let blocks: Vec<&BitMatrix> = match set {
        RelationSet::M1Only => vec![m1],
        RelationSet::M2Only => vec![m2],
        RelationSet::Both => vec![m1, m2],
    };
    let mut r = IntMatrix::zero(blocks.len() * dim, dim);
    for (b, m) in blocks.iter().enumerate() {
        for t in 0..dim {
            let row = b * dim + t;
            r.set(row, t, BigInt::one());
            // M(s,t) = 1 puts s among the successors of t.
            for &s in m.col(t) {
                let cur = r.get(row, s) - BigInt::one();
                r.set(row, s, cur);
            }
        }
    }
    r
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct K0Group {
    /// Invariant factors > 1, as decimal strings (they can exceed u64).
    pub invariant_factors: Vec<String>,
    pub free_rank: usize,
}

/// Structure of the abelian group presented by R, from its Smith form.
pub fn k0_group(r: &IntMatrix) -> K0Group {
    k0_group_with(r, PivotStrategy::MinAbs)
}

pub fn k0_group_with(r: &IntMatrix, strategy: PivotStrategy) -> K0Group {
    let qs = quotient_structure_with(r, &[], strategy).expect("no vectors, no mismatch");
    K0Group {
        invariant_factors: qs
            .invariant_factors()
            .iter()
            .map(BigUint::to_string)
            .collect(),
        free_rank: qs.free_rank,
    }
}

pub fn all_ones(dim: usize) -> Vec<BigInt> {
    vec![BigInt::one(); dim]
}

/// Order of the identity class: the class of the sum of all tiles in the
/// group presented by the selected relations.
pub fn identity_order(
    m1: &BitMatrix,
    m2: &BitMatrix,
    set: RelationSet,
) -> Result<ElementOrder, LatticeError> {
    identity_order_with(m1, m2, set, PivotStrategy::MinAbs)
}

pub fn identity_order_with(
    m1: &BitMatrix,
    m2: &BitMatrix,
    set: RelationSet,
    strategy: PivotStrategy,
) -> Result<ElementOrder, LatticeError> {
    let r = relation_matrix(m1, m2, set);
    element_order_with(&r, &all_ones(m1.dim()), strategy)
}

/// The three summation identities and their corollary: each difference
/// vector, and (q-1) * all-ones, must lie in the M1-relation lattice.
pub fn verify_sum_identities(
    t1: &TypedPresentation,
    s: &BasicSubset,
    m1: &BitMatrix,
    m2: &BitMatrix,
) -> VerificationReport {
    let mut rep = VerificationReport::new("summation identities");
    let dim = t1.len();
    let q = BigInt::from(t1.q());
    let r = relation_matrix(m1, m2, RelationSet::M1Only);

    let class_of = |pattern: Pattern| -> Vec<BigInt> {
        let mut v = vec![BigInt::from(0); dim];
        for t in t1.pattern_class(pattern) {
            v[t] = BigInt::one();
        }
        v
    };
    let subset_vec = |ids: &[usize]| -> Vec<BigInt> {
        let mut v = vec![BigInt::from(0); dim];
        for &id in ids {
            v[id] += BigInt::one();
        }
        v
    };

    // sum(S^r) - (q-1) sum(T1 class) - sum(S^{r+1}), cyclically.
    let names = [
        "sum S^a = (q-1) sum T1^b + sum S^b",
        "sum S^b = (q-1) sum T1^c + sum S^c",
        "sum S^c = (q-1) sum T1^a + sum S^a",
    ];
    let classes = [Pattern::Bca, Pattern::Cab, Pattern::Abc];
    let mut vectors: Vec<Vec<BigInt>> = Vec::with_capacity(4);
    for r_idx in 0..3 {
        let lhs = subset_vec(&s.rotated_ids(t1, r_idx));
        let class = class_of(classes[r_idx]);
        let next = subset_vec(&s.rotated_ids(t1, r_idx + 1));
        let diff: Vec<BigInt> = (0..dim)
            .map(|i| &lhs[i] - (&q - BigInt::one()) * &class[i] - &next[i])
            .collect();
        vectors.push(diff);
    }
    let scaled: Vec<BigInt> = all_ones(dim)
        .into_iter()
        .map(|x| x * (&q - BigInt::one()))
        .collect();
    vectors.push(scaled);

    // One elimination answers all four membership questions.
    let qs = quotient_structure(&r, &vectors).unwrap();
    let one = ElementOrder::Finite(BigUint::one());
    for (r_idx, name) in names.iter().enumerate() {
        rep.record(
            *name,
            qs.orders[r_idx] == one,
            "difference vector is not in the relation lattice".to_string(),
        );
    }
    rep.record(
        "(q-1) * sum of all tiles vanishes",
        qs.orders[3] == one,
        "(q-1) * all-ones is not in the relation lattice".to_string(),
    );
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::intlat::lattice_member;
    use crate::plane::{PairingKind, PlaneModel};
    use crate::presentation::TrianglePresentation;
    use crate::subshift::{build_transition_matrices, ShiftRule};

    fn system(q_p: u64) -> (TypedPresentation, BasicSubset, BitMatrix, BitMatrix) {
        let field = Field::new(q_p, 3, None).unwrap();
        let plane = PlaneModel::build(&field, PairingKind::TrXInvY).unwrap();
        let t1 = TypedPresentation::build(TrianglePresentation::build(&plane).unwrap());
        let s = BasicSubset::with_defaults(&t1).unwrap();
        let (m1, m2) = build_transition_matrices(&t1, ShiftRule::BOTH_EXCLUSIONS);
        (t1, s, m1, m2)
    }

    #[test]
    fn relation_matrix_shape_and_row_sums() {
        let (t1, _, m1, m2) = system(2);
        let r = relation_matrix(&m1, &m2, RelationSet::M1Only);
        assert_eq!((r.rows(), r.cols()), (63, 63));
        let q2 = (t1.q() * t1.q()) as i64;
        for i in 0..r.rows() {
            let sum: BigInt = (0..r.cols()).map(|j| r.get(i, j).clone()).sum();
            assert_eq!(sum, BigInt::from(1 - q2));
        }
        let both = relation_matrix(&m1, &m2, RelationSet::Both);
        assert_eq!((both.rows(), both.cols()), (126, 63));
    }

    #[test]
    fn toy_relation_matrix() {
        let m = BitMatrix::from_columns(1, vec![vec![0]]);
        let r = relation_matrix(&m, &m, RelationSet::M1Only);
        assert_eq!(*r.get(0, 0), BigInt::from(0));
    }

    #[test]
    fn toy_groups() {
        let r = IntMatrix::from_rows(vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        let g = k0_group(&r);
        assert_eq!(g.invariant_factors, vec!["2", "2", "2"]);
        assert_eq!(g.free_rank, 0);

        let r = IntMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]);
        let g = k0_group(&r);
        assert!(g.invariant_factors.is_empty());
        assert_eq!(g.free_rank, 1);
    }

    #[test]
    fn identity_order_q2_is_one() {
        let (_, _, m1, m2) = system(2);
        let order = identity_order(&m1, &m2, RelationSet::M1Only).unwrap();
        assert_eq!(order, ElementOrder::Finite(BigUint::one()));
    }

    #[test]
    fn identity_order_q3_is_two() {
        let (_, _, m1, m2) = system(3);
        let order = identity_order(&m1, &m2, RelationSet::M1Only).unwrap();
        assert_eq!(order, ElementOrder::Finite(BigUint::from(2u32)));
    }

    #[test]
    fn sum_identities_q2_q3() {
        for p in [2u64, 3] {
            let (t1, s, m1, m2) = system(p);
            let rep = verify_sum_identities(&t1, &s, &m1, &m2);
            assert!(rep.passed(), "q={p}: {:?}", rep.first_failure());
        }
    }

    #[test]
    fn scaled_identity_below_order_is_not_member() {
        // At q = 3 the identity class has order 2, so 1 * all-ones is not
        // a lattice member.
        let (t1, _, m1, m2) = system(3);
        let r = relation_matrix(&m1, &m2, RelationSet::M1Only);
        assert!(!lattice_member(&r, &all_ones(t1.len())).unwrap());
    }

    #[test]
    fn transpose_robustness_q2() {
        let (_, _, m1, m2) = system(2);
        let r = relation_matrix(&m1, &m2, RelationSet::M1Only);
        let a = k0_group(&r);
        let b = k0_group(&r.transpose());
        assert_eq!(a.invariant_factors, b.invariant_factors);
    }
}
