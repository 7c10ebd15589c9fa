//! Witt algebra computations: the bracket `[L_m, L_n] = (m-n) L_{m+n}`, the
//! anti-automorphism family `L_n ↦ ε λ^n L_{-εn}`, the `ad L_0` spectrum on a
//! truncation, and the coefficient obstruction that rules out a triangular
//! decomposition of the deformed algebra.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{bracket, Generator, LieElement};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct WittElement {
    terms: BTreeMap<i64, Scalar>,
}

impl WittElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(n: i64) -> Self {
        Self::from_terms([(n, Scalar::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Scalar)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (n, s) in terms {
            e.add_term(n, &s);
        }
        e
    }

    pub fn add_term(&mut self, n: i64, coef: &Scalar) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(n).or_insert_with(Scalar::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&n);
        }
    }

    pub fn add_scaled(&mut self, other: &WittElement, s: &Scalar) {
        for (n, c) in &other.terms {
            self.add_term(*n, &(c * s));
        }
    }

    pub fn scale(&self, s: &Scalar) -> WittElement {
        let mut out = WittElement::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, n: i64) -> Scalar {
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> + '_ {
        self.terms.iter().map(|(n, s)| (*n, s))
    }

    pub fn max_index(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_index(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }
}

impl std::fmt::Debug for WittElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

pub fn witt_bracket(x: &WittElement, y: &WittElement) -> WittElement {
    let mut out = WittElement::zero();
    for (m, s) in x.terms() {
        for (n, t) in y.terms() {
            out.add_term(m + n, &(Scalar::from_int(m - n) * (s * t)));
        }
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WittError {
    #[error("epsilon must be +1 or -1, got {0}")]
    BadEpsilon(i64),
    #[error("lambda must be nonzero")]
    ZeroLambda,
}

/// The linear map `L_n ↦ ε λ^n L_{-εn}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiMap {
    epsilon: i64,
    lambda: Scalar,
}

impl AntiMap {
    pub fn new(epsilon: i64, lambda: Scalar) -> Result<Self, WittError> {
        if epsilon != 1 && epsilon != -1 {
            return Err(WittError::BadEpsilon(epsilon));
        }
        if lambda.is_zero() {
            return Err(WittError::ZeroLambda);
        }
        Ok(AntiMap { epsilon, lambda })
    }

    pub fn epsilon(&self) -> i64 {
        self.epsilon
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn apply_basis(&self, n: i64) -> WittElement {
        let coef = Scalar::from_int(self.epsilon) * self.lambda.powi(n).expect("lambda nonzero");
        WittElement::from_terms([(-self.epsilon * n, coef)])
    }
}

/// Any linear map on the Witt algebra given by its values on basis vectors.
pub trait WittLinearMap {
    fn apply_basis(&self, n: i64) -> WittElement;

    fn apply(&self, x: &WittElement) -> WittElement {
        let mut out = WittElement::zero();
        for (n, s) in x.terms() {
            out.add_scaled(&self.apply_basis(n), s);
        }
        out
    }
}

impl WittLinearMap for AntiMap {
    fn apply_basis(&self, n: i64) -> WittElement {
        AntiMap::apply_basis(self, n)
    }
}

/// `L_n ↦ L_n`. A Lie homomorphism, so it fails the anti-homomorphism test.
pub struct IdentityMap;

impl WittLinearMap for IdentityMap {
    fn apply_basis(&self, n: i64) -> WittElement {
        WittElement::basis(n)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AntiFailure {
    pub m: i64,
    pub n: i64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AntiReport {
    pub window: i64,
    pub checked: usize,
    pub anti_automorphism: bool,
    pub involution: bool,
    pub failures: Vec<AntiFailure>,
    /// Indices `n` with `φ(φ(L_n)) ≠ L_n`.
    pub non_involutive: Vec<i64>,
}

/// Checks `φ([L_m, L_n]) = [φ(L_n), φ(L_m)]` for `|m|, |n| <= window`, and whether `φ∘φ` is the
/// identity on the window.
pub fn verify_anti_automorphism(map: &impl WittLinearMap, window: i64) -> AntiReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    for m in -window..=window {
        for n in -window..=window {
            checked += 1;
            let lhs = map.apply(&witt_bracket(
                &WittElement::basis(m),
                &WittElement::basis(n),
            ));
            let rhs = witt_bracket(&map.apply_basis(n), &map.apply_basis(m));
            if lhs != rhs {
                failures.push(AntiFailure {
                    m,
                    n,
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
        }
    }
    let non_involutive: Vec<i64> = (-window..=window)
        .filter(|&n| map.apply(&map.apply_basis(n)) != WittElement::basis(n))
        .collect();
    AntiReport {
        window,
        checked,
        anti_automorphism: failures.is_empty(),
        involution: non_involutive.is_empty(),
        failures,
        non_involutive,
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Eigenspace {
    pub eigenvalue: Scalar,
    pub basis: Vec<String>,
    /// Set when the eigenspace is one-dimensional and spanned by a single `L_n`.
    pub spanned_by: Option<i64>,
}

/// Orbit of `L_start` under `ad x` whose top index climbs strictly until it leaves the window.
/// A diagonalizable `ad x` would keep the orbit inside a finite-dimensional space.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NonDiagonalWitness {
    pub start: i64,
    pub extreme_indices: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpectrumReport {
    pub window: i64,
    pub eigenspaces: Vec<Eigenspace>,
    pub all_one_dimensional: bool,
    pub eigenvalues_match: bool,
    pub probe: Option<String>,
    pub probe_proportional_to_l0: Option<bool>,
    pub witness: Option<NonDiagonalWitness>,
}

impl SpectrumReport {
    pub fn passed(&self) -> bool {
        let probe_ok = !matches!(
            (self.probe_proportional_to_l0, &self.witness),
            (Some(false), None)
        );
        self.all_one_dimensional
            && self.eigenvalues_match
            && self.eigenspaces.len() as i64 == 2 * self.window + 1
            && probe_ok
    }
}

fn ad_l0_matrix(window: i64) -> Matrix {
    let size = (2 * window + 1) as usize;
    let mut m = Matrix::zeros(size, size);
    let l0 = WittElement::basis(0);
    for (col, n) in (-window..=window).enumerate() {
        for (k, s) in witt_bracket(&l0, &WittElement::basis(n)).terms() {
            if k.abs() <= window {
                m.set((k + window) as usize, col, s.clone());
            }
        }
    }
    m
}

/// Eigen-decomposition of `ad L_0` on `span{L_n : |n| <= window}`, plus an optional
/// non-diagonalizability witness for `ad x` when `x` is not a multiple of `L_0`.
pub fn ad_l0_spectrum(window: i64, probe: Option<&WittElement>) -> SpectrumReport {
    let m = ad_l0_matrix(window);
    let size = m.rows();
    // ad L_0 preserves every L_n, so the matrix is diagonal; candidate eigenvalues are its diagonal.
    let mut candidates: Vec<Scalar> = (0..size).map(|i| m.get(i, i).clone()).collect();
    candidates.sort();
    candidates.dedup();
    let mut eigenspaces = Vec::new();
    let mut all_one_dimensional = true;
    let mut eigenvalues_match = true;
    for ev in candidates.into_iter().rev() {
        let shifted = &m - &Matrix::scalar(size, ev.clone());
        let ker = shifted.nullspace();
        if ker.len() != 1 {
            all_one_dimensional = false;
        }
        let elements: Vec<WittElement> = ker
            .iter()
            .map(|v| WittElement::from_terms((-window..=window).zip(v.iter().cloned())))
            .collect();
        let spanned_by = match elements.as_slice() {
            [e] if e.terms().count() == 1 => e.max_index(),
            _ => None,
        };
        match spanned_by {
            Some(n) if Scalar::from_int(-n) == ev => {}
            _ => eigenvalues_match = false,
        }
        eigenspaces.push(Eigenspace {
            eigenvalue: ev,
            basis: elements.iter().map(ToString::to_string).collect(),
            spanned_by,
        });
    }
    let (probe_str, proportional, witness) = match probe {
        None => (None, None, None),
        Some(x) => {
            let prop = x.terms().all(|(n, _)| n == 0);
            let witness = if prop {
                None
            } else {
                non_diagonal_witness(x, window)
            };
            (Some(x.to_string()), Some(prop), witness)
        }
    };
    SpectrumReport {
        window,
        eigenspaces,
        all_one_dimensional,
        eigenvalues_match,
        probe: probe_str,
        probe_proportional_to_l0: proportional,
        witness,
    }
}

/// Searches `L_n`, `|n| <= window`, for one whose `ad x` orbit escapes the window with
/// strictly monotone extreme index.
pub fn non_diagonal_witness(x: &WittElement, window: i64) -> Option<NonDiagonalWitness> {
    let top = x.max_index()?;
    let bottom = x.min_index()?;
    // Follow the side of x that carries a nonzero index.
    let upward = top > 0;
    if !upward && bottom >= 0 {
        return None;
    }
    let extreme = |e: &WittElement| if upward { e.max_index() } else { e.min_index() };
    'start: for start in -window..=window {
        let mut current = WittElement::basis(start);
        let mut indices = vec![start];
        loop {
            let next = witt_bracket(x, &current);
            let Some(idx) = extreme(&next) else {
                continue 'start;
            };
            let last = *indices.last().unwrap();
            let climbed = if upward { idx > last } else { idx < last };
            if !climbed {
                continue 'start;
            }
            indices.push(idx);
            if idx.abs() > window {
                return Some(NonDiagonalWitness {
                    start,
                    extreme_indices: indices,
                });
            }
            current = next;
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Obstruction {
    pub coef_d: Scalar,
    pub coef_h: Scalar,
}

#[derive(Clone, Debug)]
pub struct ObstructionInput {
    pub q: i64,
    pub alpha: Scalar,
    pub beta: Scalar,
    pub zeta: Scalar,
    pub h_tail_x: BTreeMap<i64, Scalar>,
    pub h_tail_y: BTreeMap<i64, Scalar>,
    pub mu: Scalar,
    pub eta: Scalar,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("q must be nonzero")]
    ZeroQ,
    #[error("{0} must be nonzero")]
    ZeroParameter(&'static str),
}

/// Forms `x = α d_0 + Σ α_i h_i + μ c` and `y = β d_q + Σ β_j h_j + η c`, computes
/// `ζ y - [x, y]` and returns its `d_q` and `h_q` coefficients.
pub fn triangular_obstruction(input: &ObstructionInput) -> Result<Obstruction, ObstructionError> {
    if input.q == 0 {
        return Err(ObstructionError::ZeroQ);
    }
    for (name, v) in [
        ("alpha", &input.alpha),
        ("beta", &input.beta),
        ("zeta", &input.zeta),
    ] {
        if v.is_zero() {
            return Err(ObstructionError::ZeroParameter(name));
        }
    }
    let mut x = LieElement::term(Generator::D(0), input.alpha.clone());
    for (i, a) in &input.h_tail_x {
        x.add_term(Generator::H(*i), a);
    }
    x.add_term(Generator::C, &input.mu);
    let mut y = LieElement::term(Generator::D(input.q), input.beta.clone());
    for (j, b) in &input.h_tail_y {
        y.add_term(Generator::H(*j), b);
    }
    y.add_term(Generator::C, &input.eta);

    let residual = y.scale(&input.zeta).minus(&bracket(&x, &y));
    Ok(Obstruction {
        coef_d: residual.coeff(Generator::D(input.q)),
        coef_h: residual.coeff(Generator::H(input.q)),
    })
}

impl Obstruction {
    /// `(coefD, coefH) ≠ (0, 0)`, and `coefD = 0` forces `coefH = qαβ`.
    pub fn consistent_with(&self, input: &ObstructionInput) -> bool {
        let nonzero = !(self.coef_d.is_zero() && self.coef_h.is_zero());
        let forced = !self.coef_d.is_zero()
            || self.coef_h == Scalar::from_int(input.q) * &input.alpha * &input.beta;
        nonzero && forced
    }
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let num: i64 = rng.gen_range(-9..=9);
        if num != 0 {
            return Scalar::frac(num, rng.gen_range(1..=5));
        }
    }
}

/// Seeded admissible parameter tuples: `q ∈ [-5, 5] \ {0}`, nonzero rational `α, β, ζ`,
/// random h-tails. Half of the tuples take `ζ = -qα`, the case where `coefD` vanishes.
pub fn random_obstruction_inputs(count: usize, seed: u64) -> Vec<ObstructionInput> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let q = loop {
                let q: i64 = rng.gen_range(-5..=5);
                if q != 0 {
                    break q;
                }
            };
            let alpha = random_nonzero(&mut rng);
            let beta = random_nonzero(&mut rng);
            let zeta = if rng.gen_bool(0.5) {
                -(Scalar::from_int(q) * &alpha)
            } else {
                random_nonzero(&mut rng)
            };
            let tail = |rng: &mut ChaCha8Rng| -> BTreeMap<i64, Scalar> {
                let len = rng.gen_range(0..=4);
                (0..len)
                    .map(|_| (rng.gen_range(-8..=8), random_nonzero(rng)))
                    .collect()
            };
            let h_tail_x = tail(&mut rng);
            let h_tail_y = tail(&mut rng);
            ObstructionInput {
                q,
                alpha,
                beta,
                zeta,
                h_tail_x,
                h_tail_y,
                mu: random_nonzero(&mut rng),
                eta: random_nonzero(&mut rng),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn bracket_values() {
        let b = |m, n| witt_bracket(&WittElement::basis(m), &WittElement::basis(n));
        assert_eq!(b(1, -1), WittElement::basis(0).scale(&s(2)));
        assert!(b(0, 0).is_zero());
        assert_eq!(b(2, 3), WittElement::basis(5).scale(&s(-1)));
    }

    #[test]
    fn tau_is_anti_involution() {
        let rep = verify_anti_automorphism(&AntiMap::new(1, s(1)).unwrap(), 6);
        assert!(rep.anti_automorphism && rep.involution);
        let rep = verify_anti_automorphism(&AntiMap::new(1, s(2)).unwrap(), 6);
        assert!(rep.anti_automorphism && rep.involution);
    }

    #[test]
    fn negative_epsilon_squares_to_lambda_power() {
        let map = AntiMap::new(-1, s(2)).unwrap();
        let rep = verify_anti_automorphism(&map, 4);
        assert!(rep.anti_automorphism);
        assert!(!rep.involution);
        // φ(φ(L_1)) = 4 L_1
        assert_eq!(
            map.apply(&map.apply_basis(1)),
            WittElement::basis(1).scale(&s(4))
        );
    }

    #[test]
    fn identity_is_not_anti() {
        let rep = verify_anti_automorphism(&IdentityMap, 2);
        assert!(!rep.anti_automorphism);
        assert!(rep.failures.iter().any(|f| (f.m, f.n) == (1, 2)));
    }

    #[test]
    fn rejects_bad_maps() {
        assert_eq!(AntiMap::new(0, s(1)), Err(WittError::BadEpsilon(0)));
        assert_eq!(AntiMap::new(1, s(0)), Err(WittError::ZeroLambda));
    }

    #[test]
    fn spectrum() {
        let rep = ad_l0_spectrum(5, None);
        assert_eq!(rep.eigenspaces.len(), 11);
        assert!(rep.all_one_dimensional && rep.eigenvalues_match);
        let three = rep
            .eigenspaces
            .iter()
            .find(|e| e.eigenvalue == s(3))
            .unwrap();
        assert_eq!(three.spanned_by, Some(-3));
        assert!(rep.passed());
    }

    #[test]
    fn l1_plus_l2_not_an_eigenvector() {
        let x = WittElement::from_terms([(1, s(1)), (2, s(1))]);
        let image = witt_bracket(&WittElement::basis(0), &x);
        // eigenvalues -1 and -2 differ, so the image is not a multiple of x
        assert_eq!(image, WittElement::from_terms([(1, s(-1)), (2, s(-2))]));
    }

    #[test]
    fn witness_for_non_l0_probe() {
        let x = WittElement::from_terms([(0, s(1)), (1, s(3))]);
        let rep = ad_l0_spectrum(6, Some(&x));
        let w = rep.witness.as_ref().expect("witness");
        assert!(w.extreme_indices.windows(2).all(|p| p[1] > p[0]));
        assert!(rep.passed());
        let rep = ad_l0_spectrum(6, Some(&WittElement::basis(0).scale(&s(7))));
        assert_eq!(rep.probe_proportional_to_l0, Some(true));
        assert!(rep.witness.is_none());
        let neg = WittElement::basis(-2);
        assert!(non_diagonal_witness(&neg, 5).is_some());
    }

    fn input(q: i64, alpha: i64, beta: i64, zeta: i64) -> ObstructionInput {
        ObstructionInput {
            q,
            alpha: s(alpha),
            beta: s(beta),
            zeta: s(zeta),
            h_tail_x: BTreeMap::new(),
            h_tail_y: BTreeMap::new(),
            mu: s(0),
            eta: s(0),
        }
    }

    #[test]
    fn obstruction_examples() {
        let mut inp = input(1, 1, 1, -1);
        inp.h_tail_y.insert(1, s(5));
        let o = triangular_obstruction(&inp).unwrap();
        assert_eq!((o.coef_d, o.coef_h), (s(0), s(1)));
        let o = triangular_obstruction(&input(1, 1, 1, 2)).unwrap();
        assert_eq!(o.coef_d, s(3));
        assert_eq!(
            triangular_obstruction(&input(2, 0, 1, 1)),
            Err(ObstructionError::ZeroParameter("alpha"))
        );
        assert_eq!(
            triangular_obstruction(&input(0, 1, 1, 1)),
            Err(ObstructionError::ZeroQ)
        );
    }
}
