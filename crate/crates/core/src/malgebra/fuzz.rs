//! Randomized checks of the group axioms for both parameter operations.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::numcore::{circular_distance, seeded_sampler};

use super::{identity_param, inverse_param, m_exp, m_mul_param, oplus_pullback, PhaseParam};

/// Worst violations observed over a batch of random triples.
///
/// `m_mul_*` fields compare group elements; `pullback_*` fields compare
/// real parameters modulo 2π. `mismatch_*` is the element distance between
/// the two operations applied to the same pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub alpha: f64,
    pub samples: usize,
    pub seed: u64,
    pub m_mul_identity_max: f64,
    pub m_mul_inverse_max: f64,
    pub m_mul_associativity_max: f64,
    pub m_mul_commutativity_max: f64,
    pub pullback_identity_max: f64,
    pub pullback_associativity_max: f64,
    pub pullback_commutativity_max: f64,
    pub circle_law_max: f64,
    pub mismatch_max: f64,
    pub mismatch_mean: f64,
}

impl AxiomReport {
    /// Largest violation among the axioms of both operations.
    pub fn max_violation(&self) -> f64 {
        [
            self.m_mul_identity_max,
            self.m_mul_inverse_max,
            self.m_mul_associativity_max,
            self.m_mul_commutativity_max,
            self.pullback_identity_max,
            self.pullback_associativity_max,
            self.pullback_commutativity_max,
            self.circle_law_max,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn axiom_fuzz(alpha: f64, samples: usize, seed: u64) -> Result<AxiomReport> {
    let draws = seeded_sampler(seed, 0.0, TAU, 3 * samples)?;
    let unit = identity_param(alpha)?;
    let mut r = AxiomReport {
        alpha,
        samples,
        seed,
        m_mul_identity_max: 0.0,
        m_mul_inverse_max: 0.0,
        m_mul_associativity_max: 0.0,
        m_mul_commutativity_max: 0.0,
        pullback_identity_max: 0.0,
        pullback_associativity_max: 0.0,
        pullback_commutativity_max: 0.0,
        circle_law_max: 0.0,
        mismatch_max: 0.0,
        mismatch_mean: 0.0,
    };
    let mut mismatch_sum = 0.0;
    for t in draws.chunks_exact(3) {
        let (a, b, c) = (
            PhaseParam::real(t[0], alpha),
            PhaseParam::real(t[1], alpha),
            PhaseParam::real(t[2], alpha),
        );
        let ga = m_exp(&a)?.value;
        r.circle_law_max = r.circle_law_max.max(m_exp(&a)?.circle_defect(alpha).abs());

        let with_unit = m_exp(&m_mul_param(&a, &unit)?)?.value;
        r.m_mul_identity_max = r.m_mul_identity_max.max((with_unit - ga).norm());

        let with_inverse = m_exp(&m_mul_param(&a, &inverse_param(&a)?)?)?.value;
        r.m_mul_inverse_max = r.m_mul_inverse_max.max((with_inverse - 1.0).norm());

        let ab = m_mul_param(&a, &b)?;
        let left = m_exp(&m_mul_param(&ab, &c)?)?.value;
        let right = m_exp(&m_mul_param(&a, &m_mul_param(&b, &c)?)?)?.value;
        r.m_mul_associativity_max = r.m_mul_associativity_max.max((left - right).norm());

        let ba = m_mul_param(&b, &a)?;
        r.m_mul_commutativity_max = r
            .m_mul_commutativity_max
            .max((m_exp(&ab)?.value - m_exp(&ba)?.value).norm());

        let p0 = oplus_pullback(t[0], 0.0, alpha)?;
        r.pullback_identity_max = r.pullback_identity_max.max(circular_distance(p0, t[0]));
        let pab = oplus_pullback(t[0], t[1], alpha)?;
        let pba = oplus_pullback(t[1], t[0], alpha)?;
        r.pullback_commutativity_max = r.pullback_commutativity_max.max(circular_distance(pab, pba));
        let lhs = oplus_pullback(pab, t[2], alpha)?;
        let rhs = oplus_pullback(t[0], oplus_pullback(t[1], t[2], alpha)?, alpha)?;
        r.pullback_associativity_max = r.pullback_associativity_max.max(circular_distance(lhs, rhs));

        let mismatch = (m_exp(&ab)?.value - m_exp(&PhaseParam::real(pab, alpha))?.value).norm();
        r.mismatch_max = r.mismatch_max.max(mismatch);
        mismatch_sum += mismatch;
    }
    r.mismatch_mean = mismatch_sum / samples.max(1) as f64;
    Ok(r)
}
