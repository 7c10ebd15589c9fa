//! The deformed Heisenberg-Virasoro algebra.
//!
//! Basis `{d_m, h_n, c | m, n ∈ ℤ}` with
//!
//! ```text
//! [d_m, d_n] = (m-n) d_{m+n} + (m-n) h_{m+n} + (m³-m)/12 δ_{m+n,0} c
//! [d_m, h_n] = -n h_{m+n}
//! [h_m, h_n] = 0,  c central
//! ```
//!
//! Infinite-rank properties (Lie axioms, center, the Witt quotient) are checked
//! exactly on a finite window of indices.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::linalg::Matrix;
use crate::parallel::Exec;
use crate::scalar::Scalar;
use crate::witt::{witt_bracket, WittElement};

/// A basis symbol of the algebra.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    D(i64),
    H(i64),
    C,
}

impl Generator {
    /// Degree in the ℤ-gradation; `c` sits in degree 0.
    pub fn degree(self) -> i64 {
        match self {
            Generator::D(n) | Generator::H(n) => n,
            Generator::C => 0,
        }
    }

    pub fn index(self) -> Option<i64> {
        match self {
            Generator::D(n) | Generator::H(n) => Some(n),
            Generator::C => None,
        }
    }

    /// All of `d_n, h_n` with `|n| <= window`, followed by `c`.
    pub fn window(window: i64) -> Vec<Generator> {
        let mut out: Vec<Generator> = (-window..=window).map(Generator::D).collect();
        out.extend((-window..=window).map(Generator::H));
        out.push(Generator::C);
        out
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::D(n) => write!(f, "d[{n}]"),
            Generator::H(n) => write!(f, "h[{n}]"),
            Generator::C => write!(f, "c"),
        }
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finite rational linear combination of basis symbols.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LieElement {
    terms: BTreeMap<Generator, Scalar>,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(g: Generator) -> Self {
        Self::term(g, Scalar::one())
    }

    pub fn term(g: Generator, coef: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(g, &coef);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Generator, Scalar)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (g, s) in terms {
            e.add_term(g, &s);
        }
        e
    }

    pub fn add_term(&mut self, g: Generator, coef: &Scalar) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(g).or_insert_with(Scalar::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add_scaled(&mut self, other: &LieElement, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (g, c) in &other.terms {
            self.add_term(*g, &(c * s));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: Generator) -> Scalar {
        self.terms.get(&g).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Generator, &Scalar)> + '_ {
        self.terms.iter().map(|(g, s)| (*g, s))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Scalar) -> LieElement {
        let mut out = LieElement::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn plus(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn minus(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Generator> for LieElement {
    fn from(g: Generator) -> Self {
        LieElement::basis(g)
    }
}

/// Bracket of two basis symbols.
pub fn bracket_basis(x: Generator, y: Generator) -> LieElement {
    use Generator::*;
    match (x, y) {
        (C, _) | (_, C) | (H(_), H(_)) => LieElement::zero(),
        (D(m), D(n)) => {
            let k = Scalar::from_int(m - n);
            let mut e = LieElement::term(D(m + n), k.clone());
            e.add_term(H(m + n), &k);
            if m + n == 0 {
                e.add_term(C, &Scalar::frac(m * m * m - m, 12));
            }
            e
        }
        (D(m), H(n)) => LieElement::term(H(m + n), Scalar::from_int(-n)),
        (H(n), D(m)) => LieElement::term(H(m + n), Scalar::from_int(n)),
    }
}

/// Bilinear extension of [`bracket_basis`].
pub fn bracket(x: &LieElement, y: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (a, s) in x.terms() {
        for (b, t) in y.terms() {
            out.add_scaled(&bracket_basis(a, b), &(s * t));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum AxiomFailure {
    Antisymmetry {
        x: Generator,
        y: Generator,
        residual: String,
    },
    Jacobi {
        x: Generator,
        y: Generator,
        z: Generator,
        residual: String,
    },
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AxiomReport {
    pub window: i64,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn jacobi_residual(x: &LieElement, y: &LieElement, z: &LieElement) -> LieElement {
    let mut r = bracket(x, &bracket(y, z));
    r.add_scaled(&bracket(y, &bracket(z, x)), &Scalar::one());
    r.add_scaled(&bracket(z, &bracket(x, y)), &Scalar::one());
    r
}

pub fn axiom_report(window: i64) -> AxiomReport {
    axiom_report_with(window, Exec::default())
}

/// Antisymmetry on all pairs and Jacobi on all ordered triples of basis symbols
/// with `|index| <= window`.
pub fn axiom_report_with(window: i64, exec: Exec) -> AxiomReport {
    let gens = Generator::window(window);
    let cache: HashMap<(Generator, Generator), LieElement> = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| ((a, b), bracket_basis(a, b))))
        .collect();
    let failures = exec.flat_map(&gens, |&x| {
        let mut out = Vec::new();
        for &y in &gens {
            let anti = cache[&(x, y)].plus(&cache[&(y, x)]);
            if !anti.is_zero() {
                out.push(AxiomFailure::Antisymmetry {
                    x,
                    y,
                    residual: anti.to_string(),
                });
            }
            for &z in &gens {
                let (xe, ye, ze) = (x.into(), y.into(), z.into());
                // Inner brackets come from the cache, the outer ones may leave the window.
                let mut r = bracket(&xe, &cache[&(y, z)]);
                r.add_scaled(&bracket(&ye, &cache[&(z, x)]), &Scalar::one());
                r.add_scaled(&bracket(&ze, &cache[&(x, y)]), &Scalar::one());
                if !r.is_zero() {
                    out.push(AxiomFailure::Jacobi {
                        x,
                        y,
                        z,
                        residual: r.to_string(),
                    });
                }
            }
        }
        out
    });
    let n = gens.len();
    AxiomReport {
        window,
        pairs_checked: n * n,
        triples_checked: n * n * n,
        failures,
    }
}

/// Basis of `{x supported on |index| <= window : [x, g] = 0 for all generators g in the window}`.
///
/// The basis comes out of an exact RREF, so when the solution space is `span{h_0, c}` the
/// returned vectors are literally `h_0` and `c`.
pub fn centralizer_window(window: i64) -> Vec<LieElement> {
    let unknowns = Generator::window(window);
    let mut row_of: BTreeMap<(Generator, Generator), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    for (col, &u) in unknowns.iter().enumerate() {
        for &g in &unknowns {
            for (sym, coef) in bracket_basis(u, g).terms() {
                let next = row_of.len();
                let row = *row_of.entry((g, sym)).or_insert(next);
                entries.push((row, col, coef.clone()));
            }
        }
    }
    let mut m = Matrix::zeros(row_of.len(), unknowns.len());
    for (r, c, v) in entries {
        m.set(r, c, v);
    }
    m.nullspace()
        .into_iter()
        .map(|v| LieElement::from_terms(unknowns.iter().copied().zip(v)))
        .collect()
}

/// Projection onto the Witt algebra: `d_n ↦ L_n`, `h_n, c ↦ 0`.
pub fn to_witt(x: &LieElement) -> WittElement {
    WittElement::from_terms(x.terms().filter_map(|(g, s)| match g {
        Generator::D(n) => Some((n, s.clone())),
        _ => None,
    }))
}

/// Bracket of the cosets `x + I` and `y + I`, read in the Witt algebra.
pub fn coset_bracket(x: &LieElement, y: &LieElement) -> WittElement {
    to_witt(&bracket(x, y))
}

pub fn in_ideal(x: &LieElement) -> bool {
    x.terms().all(|(g, _)| !matches!(g, Generator::D(_)))
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QuotientFailure {
    pub x: Generator,
    pub y: Generator,
    pub got: String,
    pub expected: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QuotientReport {
    pub window: i64,
    pub ideal_checks: usize,
    pub witt_checks: usize,
    pub ideal_failures: Vec<QuotientFailure>,
    pub witt_failures: Vec<QuotientFailure>,
}

impl QuotientReport {
    pub fn passed(&self) -> bool {
        self.ideal_failures.is_empty() && self.witt_failures.is_empty()
    }
}

/// Checks that `I = span{h_m, c}` is an ideal and that `d_m + I ↦ L_m` preserves brackets.
pub fn quotient_is_witt(window: i64) -> QuotientReport {
    let gens = Generator::window(window);
    let ideal: Vec<Generator> = gens
        .iter()
        .copied()
        .filter(|g| !matches!(g, Generator::D(_)))
        .collect();
    let mut ideal_failures = Vec::new();
    let mut ideal_checks = 0;
    for &g in &gens {
        for &i in &ideal {
            ideal_checks += 1;
            let b = bracket_basis(g, i);
            if !in_ideal(&b) {
                ideal_failures.push(QuotientFailure {
                    x: g,
                    y: i,
                    got: b.to_string(),
                    expected: "element of span{h, c}".into(),
                });
            }
        }
    }
    let mut witt_failures = Vec::new();
    let mut witt_checks = 0;
    for m in -window..=window {
        for n in -window..=window {
            witt_checks += 1;
            let got = coset_bracket(&Generator::D(m).into(), &Generator::D(n).into());
            let expected = witt_bracket(&WittElement::basis(m), &WittElement::basis(n));
            if got != expected {
                witt_failures.push(QuotientFailure {
                    x: Generator::D(m),
                    y: Generator::D(n),
                    got: got.to_string(),
                    expected: expected.to_string(),
                });
            }
        }
    }
    QuotientReport {
        window,
        ideal_checks,
        witt_checks,
        ideal_failures,
        witt_failures,
    }
}
