//! Finite-dimensional modules over the subalgebra
//! `L_q = span{d_i, h_{i-q} : i >= 0} + C c`, given by action matrices on a
//! finite window of generators. Generators without a stored matrix act as zero.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{bracket_basis, Generator, LieElement};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("matrix for {0} is not {1}x{1}")]
    BadShape(Generator, usize),
    #[error("{0} lies outside the stored window (d-indices 0..={1}, h-indices {2}..={3})")]
    OutsideWindow(Generator, i64, i64, i64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("{0} does not belong to L_{1}")]
    OutsideSubalgebra(Generator, u32),
    #[error("vector has length {0}, module has dimension {1}")]
    DimensionMismatch(usize, usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("bracket incompatibility at ({x}, {y}): ρ(x)ρ(y) - ρ(y)ρ(x) ≠ ρ([x,y])")]
    BracketIncompat { x: Generator, y: Generator },
    #[error("no h_s with s >= 0 acts nonzero")]
    NoNonzeroH,
    #[error("declared k = {declared} but the largest s with h_s acting nonzero is {found}")]
    KMismatch { declared: u32, found: u32 },
}

/// A vector of `V`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VVector(pub Vec<Scalar>);

impl VVector {
    pub fn zero(dim: usize) -> Self {
        VVector(vec![Scalar::zero(); dim])
    }

    pub fn unit(dim: usize, r: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[r] = Scalar::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> VVector {
        VVector(self.0.iter().map(|x| x * s).collect())
    }

    pub fn add_assign_scaled(&mut self, other: &VVector, s: &Scalar) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += &(b * s);
            }
        }
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LqModuleSpec {
    q: u32,
    dim: usize,
    d_actions: BTreeMap<i64, Matrix>,
    h_actions: BTreeMap<i64, Matrix>,
    c_scalar: Scalar,
    declared_k: u32,
}

impl LqModuleSpec {
    /// Stored d-indices must lie in `0..=k+q` and h-indices in `-q..=k`; all-zero matrices are dropped.
    pub fn new(
        q: u32,
        dim: usize,
        d_actions: BTreeMap<i64, Matrix>,
        h_actions: BTreeMap<i64, Matrix>,
        c_scalar: Scalar,
        declared_k: u32,
    ) -> Result<Self, SpecError> {
        if dim == 0 {
            return Err(SpecError::ZeroDimension);
        }
        let (d_bound, h_low, h_bound) = (
            i64::from(declared_k) + i64::from(q),
            -i64::from(q),
            i64::from(declared_k),
        );
        for (&i, m) in &d_actions {
            let g = Generator::D(i);
            if !(0..=d_bound).contains(&i) {
                return Err(SpecError::OutsideWindow(g, d_bound, h_low, h_bound));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(SpecError::BadShape(g, dim));
            }
        }
        for (&j, m) in &h_actions {
            let g = Generator::H(j);
            if !(h_low..=h_bound).contains(&j) {
                return Err(SpecError::OutsideWindow(g, d_bound, h_low, h_bound));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(SpecError::BadShape(g, dim));
            }
        }
        let prune =
            |m: BTreeMap<i64, Matrix>| m.into_iter().filter(|(_, a)| !a.is_zero()).collect();
        Ok(LqModuleSpec {
            q,
            dim,
            d_actions: prune(d_actions),
            h_actions: prune(h_actions),
            c_scalar,
            declared_k,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn c_scalar(&self) -> &Scalar {
        &self.c_scalar
    }

    pub fn declared_k(&self) -> u32 {
        self.declared_k
    }

    pub fn d_bound(&self) -> i64 {
        i64::from(self.declared_k) + i64::from(self.q)
    }

    pub fn h_bound(&self) -> i64 {
        i64::from(self.declared_k)
    }

    pub fn d_actions(&self) -> &BTreeMap<i64, Matrix> {
        &self.d_actions
    }

    pub fn h_actions(&self) -> &BTreeMap<i64, Matrix> {
        &self.h_actions
    }

    pub fn contains(&self, g: Generator) -> bool {
        match g {
            Generator::D(i) => i >= 0,
            Generator::H(j) => j >= -i64::from(self.q),
            Generator::C => true,
        }
    }

    /// Matrix of `g`, or `None` when `g` acts as zero. `g` must lie in `L_q`.
    pub fn matrix(&self, g: Generator) -> Result<Option<Matrix>, ActionError> {
        if !self.contains(g) {
            return Err(ActionError::OutsideSubalgebra(g, self.q));
        }
        Ok(match g {
            Generator::D(i) => self.d_actions.get(&i).cloned(),
            Generator::H(j) => self.h_actions.get(&j).cloned(),
            Generator::C if self.c_scalar.is_zero() => None,
            Generator::C => Some(Matrix::scalar(self.dim, self.c_scalar.clone())),
        })
    }

    /// Matrix of a linear combination of generators of `L_q`.
    pub fn element_matrix(&self, x: &LieElement) -> Result<Matrix, ActionError> {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (g, s) in x.terms() {
            if let Some(m) = self.matrix(g)? {
                out = &out + &m.scale(s);
            }
        }
        Ok(out)
    }

    /// Generators whose bracket relations are checked: the stored window plus one index beyond it.
    pub fn check_window(&self) -> Vec<Generator> {
        let mut gens: Vec<Generator> = (0..=self.d_bound() + 1).map(Generator::D).collect();
        gens.extend((-i64::from(self.q)..=self.h_bound() + 1).map(Generator::H));
        gens.push(Generator::C);
        gens
    }

    /// First generator pair violating `ρ(x)ρ(y) - ρ(y)ρ(x) = ρ([x,y])`, if any.
    pub fn bracket_violation(&self) -> Option<(Generator, Generator)> {
        let gens = self.check_window();
        let zero = Matrix::zeros(self.dim, self.dim);
        let mats: Vec<Matrix> = gens
            .iter()
            .map(|&g| {
                self.matrix(g)
                    .expect("in L_q")
                    .unwrap_or_else(|| zero.clone())
            })
            .collect();
        for (a, &x) in gens.iter().enumerate() {
            for (b, &y) in gens.iter().enumerate().skip(a + 1) {
                let lhs = mats[a].commutator(&mats[b]);
                let rhs = self
                    .element_matrix(&bracket_basis(x, y))
                    .expect("L_q is a subalgebra");
                if lhs != rhs {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Largest `s >= 0` with `h_s` acting nonzero.
    pub fn top_h_index(&self) -> Option<u32> {
        self.h_actions
            .keys()
            .rev()
            .find(|&&j| j >= 0)
            .map(|&j| j as u32)
    }

    pub fn h_injective(&self, k: u32) -> bool {
        self.h_actions
            .get(&i64::from(k))
            .is_some_and(|m| m.rank() == self.dim)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationReport {
    pub q: u32,
    pub dim: usize,
    pub k: u32,
    pub h_k_injective: bool,
    pub pairs_checked: usize,
}

/// Checks bracket compatibility, recomputes `k` and reports whether `h_k` is injective.
///
/// Non-injective `h_k` is reported, not rejected: it only means the reduction
/// hypotheses fail for this module.
pub fn validate_lq_module(spec: &LqModuleSpec) -> Result<ValidationReport, ValidationError> {
    if let Some((x, y)) = spec.bracket_violation() {
        return Err(ValidationError::BracketIncompat { x, y });
    }
    let k = spec.top_h_index().ok_or(ValidationError::NoNonzeroH)?;
    if k != spec.declared_k {
        return Err(ValidationError::KMismatch {
            declared: spec.declared_k,
            found: k,
        });
    }
    let n = spec.check_window().len();
    Ok(ValidationReport {
        q: spec.q,
        dim: spec.dim,
        k,
        h_k_injective: spec.h_injective(k),
        pairs_checked: n * (n - 1) / 2,
    })
}

/// One-dimensional `L_0`-module: `c ↦ λ`, `h_0 ↦ μ`, `d_0 ↦ ν`, everything else zero.
pub fn make_onedim(lambda: Scalar, mu: Scalar, nu: Scalar) -> LqModuleSpec {
    let one = |s: Scalar| Matrix::from_rows(vec![vec![s]]).expect("1x1");
    LqModuleSpec::new(
        0,
        1,
        BTreeMap::from([(0, one(nu))]),
        BTreeMap::from([(0, one(mu))]),
        lambda,
        0,
    )
    .expect("window is valid")
}

pub fn act_v(g: Generator, w: &VVector, spec: &LqModuleSpec) -> Result<VVector, ActionError> {
    if w.dim() != spec.dim {
        return Err(ActionError::DimensionMismatch(w.dim(), spec.dim));
    }
    Ok(match spec.matrix(g)? {
        Some(m) => VVector(m.mul_vec(&w.0)),
        None => VVector::zero(spec.dim),
    })
}
