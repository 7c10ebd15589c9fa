//! Degree reduction in `Ind_q(V)`.
//!
//! With `deg(v) = (i, j)`: if `j ≠ 0` apply `h_{b+k}` (`b` the smallest position of `j`),
//! which must leave degree `(i, j″)`; otherwise apply `d_{a+k+q}` (`a` the largest position
//! of `i`), which must leave degree `(i′, 0)`. Iterating lands in `1 ⊗ V`.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::Generator;
use crate::induced::{BasisKey, IndError, IndVector, InducedModule};
use crate::lq_module::VVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("the zero vector cannot be reduced")]
    ZeroVector,
    #[error("vector already lies in V")]
    AlreadyInV,
    #[error("reduction failed at step {step} after applying {applied}: {reason}")]
    ReductionFailed {
        step: usize,
        applied: Generator,
        reason: String,
    },
    #[error("{0} does not have positive index")]
    NonPositiveIndex(Generator),
    #[error("{generator} did not annihilate the vector within {limit} applications")]
    NotNilpotent { generator: Generator, limit: usize },
}

impl From<IndError> for ReduceError {
    fn from(e: IndError) -> Self {
        match e {
            IndError::ZeroVector => ReduceError::ZeroVector,
            other => ReduceError::ReductionFailed {
                step: 0,
                applied: Generator::C,
                reason: other.to_string(),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct StepOutcome {
    pub applied: Generator,
    pub result: IndVector,
    /// Degree the step is required to produce.
    pub expected_degree: BasisKey,
}

impl StepOutcome {
    pub fn contract_holds(&self) -> bool {
        matches!(self.result.degree(), Ok(d) if d == self.expected_degree)
    }

    fn violation(&self) -> Option<String> {
        match self.result.degree() {
            Err(_) => Some("result is zero".to_string()),
            Ok(d) if d != self.expected_degree => Some(format!(
                "degree {:?}, expected {:?}",
                d, self.expected_degree
            )),
            Ok(_) => None,
        }
    }
}

/// Chooses the reducing generator for `v` and applies it.
pub fn reduce_step(
    module: &InducedModule,
    v: &IndVector,
    k: u32,
) -> Result<StepOutcome, ReduceError> {
    let deg = v.degree()?;
    let k = i64::from(k);
    let (applied, expected_degree) = if let Some(b) = deg.d.min_position() {
        let expected = BasisKey::new(deg.h.clone(), deg.d.double_prime().expect("nonzero"));
        (Generator::H(b as i64 + k), expected)
    } else if let Some(a) = deg.h.max_position() {
        let expected = BasisKey::new(deg.h.prime().expect("nonzero"), deg.d.clone());
        (Generator::D(a as i64 + k + i64::from(module.q())), expected)
    } else {
        return Err(ReduceError::AlreadyInV);
    };
    Ok(StepOutcome {
        applied,
        result: module.act(applied, v),
        expected_degree,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Reduction {
    pub applied: Vec<Generator>,
    #[serde(skip)]
    pub result: VVector,
}

/// Iterates [`reduce_step`] down to a nonzero vector of `V`, checking every step's degree.
pub fn reduce_to_v(
    module: &InducedModule,
    v: &IndVector,
    k: u32,
) -> Result<Reduction, ReduceError> {
    if v.is_zero() {
        return Err(ReduceError::ZeroVector);
    }
    let mut current = v.clone();
    let mut applied = Vec::new();
    loop {
        if let Some(w) = current.as_v() {
            return Ok(Reduction { applied, result: w });
        }
        let step = reduce_step(module, &current, k)?;
        if let Some(reason) = step.violation() {
            return Err(ReduceError::ReductionFailed {
                step: applied.len(),
                applied: step.applied,
                reason,
            });
        }
        applied.push(step.applied);
        current = step.result;
    }
}

const NILPOTENCY_LIMIT: usize = 10_000;

/// Smallest `n` with `gⁿ · v = 0`, for `g` of positive index.
pub fn nilpotency_witness(
    module: &InducedModule,
    g: Generator,
    v: &IndVector,
) -> Result<usize, ReduceError> {
    match g.index() {
        Some(n) if n > 0 => {}
        _ => return Err(ReduceError::NonPositiveIndex(g)),
    }
    if v.is_zero() {
        return Err(ReduceError::ZeroVector);
    }
    let mut current = v.clone();
    for n in 1..=NILPOTENCY_LIMIT {
        current = module.act(g, &current);
        if current.is_zero() {
            return Ok(n);
        }
    }
    Err(ReduceError::NotNilpotent {
        generator: g,
        limit: NILPOTENCY_LIMIT,
    })
}
